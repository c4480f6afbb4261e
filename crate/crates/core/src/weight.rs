//! Weight functions on Coxeter groups.
//!
//! A weight function is determined by its values on the generators. Those
//! values extend to the whole group exactly when generators joined by an odd
//! bond carry the same value; [`extends_by_brute_force`] checks the same
//! property directly on a finite piece of the group.

use std::collections::HashMap;

use serde::Serialize;

use crate::coxeter::{CoxeterPresentation, GroupElement, IntMatrix};
use crate::error::{Error, Result};
use crate::relative::{subgroup_embedding, RelativeGroup};

#[derive(Debug, Clone)]
pub struct WeightFunction {
    carrier: CoxeterPresentation,
    values: Vec<u64>,
}

/// Serializable summary of a weight function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightCertificate {
    pub values: Vec<u64>,
    /// Odd-bond classes of generators; each is constant.
    pub odd_classes: Vec<Vec<usize>>,
}

/// Classes of generators connected through odd bonds.
pub fn odd_classes(p: &CoxeterPresentation) -> Vec<Vec<usize>> {
    let n = p.rank();
    let mut class = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if class[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![];
        let mut stack = vec![s];
        class[s] = id;
        while let Some(i) = stack.pop() {
            members.push(i);
            for j in 0..n {
                if j != i && class[j] == usize::MAX && p.bond(i, j).is_odd() {
                    class[j] = id;
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

impl WeightFunction {
    pub fn validate(carrier: &CoxeterPresentation, values: Vec<u64>) -> Result<Self> {
        let n = carrier.rank();
        if values.len() != n {
            return Err(Error::WeightArity {
                expected: n,
                got: values.len(),
            });
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if carrier.bond(i, j).is_odd() && values[i] != values[j] {
                    return Err(Error::OddBondViolation(i, j, values[i], values[j]));
                }
            }
        }
        Ok(Self {
            carrier: carrier.clone(),
            values,
        })
    }

    /// The length function.
    pub fn constant(carrier: &CoxeterPresentation, c: u64) -> Self {
        Self {
            carrier: carrier.clone(),
            values: vec![c; carrier.rank()],
        }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn carrier(&self) -> &CoxeterPresentation {
        &self.carrier
    }

    pub fn certificate(&self) -> WeightCertificate {
        WeightCertificate {
            values: self.values.clone(),
            odd_classes: odd_classes(&self.carrier),
        }
    }

    /// Value on a word; the word is reduced first.
    pub fn evaluate_word(&self, word: &[usize]) -> Result<u64> {
        let w = self.carrier.from_word(word)?;
        self.evaluate(&w)
    }

    pub fn evaluate(&self, w: &GroupElement) -> Result<u64> {
        let word = self.carrier.reduced_word(w)?;
        Ok(word.iter().map(|&i| self.values[i]).sum())
    }

    /// Pulls the weights back along `align` (inner generator to carrier
    /// generator). The bonds among the aligned generators must match.
    pub fn restrict(&self, inner: &CoxeterPresentation, align: &[usize]) -> Result<WeightFunction> {
        if align.len() != inner.rank() || align.iter().any(|&i| i >= self.carrier.rank()) {
            return Err(Error::EmbeddingFailed);
        }
        for a in 0..align.len() {
            for b in 0..align.len() {
                if a != b && inner.bond(a, b) != self.carrier.bond(align[a], align[b]) {
                    return Err(Error::EmbeddingFailed);
                }
            }
        }
        WeightFunction::validate(inner, align.iter().map(|&i| self.values[i]).collect())
    }

    /// Value of the longest element of a finite carrier.
    pub fn total_flag_dimension(&self) -> Result<u64> {
        let all: Vec<usize> = (0..self.carrier.rank()).collect();
        if !self.carrier.is_finite_parabolic(&all) {
            return Err(Error::InfiniteGroup);
        }
        let w0 = self.carrier.longest_element(&all)?;
        self.evaluate(&w0)
    }
}

/// Restriction from a relative group to a subgroup embedded along
/// `node_map` (inner ambient node to outer ambient node).
pub fn restrict_relative(
    l: &WeightFunction,
    inner: &RelativeGroup,
    outer: &RelativeGroup,
    node_map: &[usize],
) -> Result<WeightFunction> {
    let align = subgroup_embedding(inner, outer, node_map)?.ok_or(Error::EmbeddingFailed)?;
    l.restrict(&inner.presentation()?, &align)
}

/// Half the difference of two centralizer dimensions.
pub fn flag_dimension(dim_zg: u64, dim_zl: u64) -> Result<u64> {
    if dim_zg < dim_zl {
        return Err(Error::NegativeDimension(dim_zg, dim_zl));
    }
    let d = dim_zg - dim_zl;
    if d % 2 != 0 {
        return Err(Error::OddDimensionDifference(dim_zg, dim_zl));
    }
    Ok(d / 2)
}

/// Whether `values` extend consistently to every element of length at most
/// `max_len`: each element must get the same value through every right
/// descent. By induction on length this is the same as every reduced word
/// giving the same sum.
pub fn extends_by_brute_force(p: &CoxeterPresentation, values: &[u64], max_len: usize) -> bool {
    let mut value: HashMap<IntMatrix, u64> = HashMap::new();
    for w in p.ball(max_len) {
        let mut v = None;
        for i in p.right_descents(&w) {
            let shorter = p.mul_gen_right(&w, i);
            let cand = value[shorter.matrix()] + values[i];
            match v {
                None => v = Some(cand),
                Some(x) if x != cand => return false,
                _ => {}
            }
        }
        value.insert(w.matrix().clone(), v.unwrap_or(0));
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::TypeDescriptor;
    use proptest::prelude::*;

    fn pres(s: &str) -> CoxeterPresentation {
        CoxeterPresentation::build(&s.parse::<TypeDescriptor>().unwrap()).unwrap()
    }

    /// Every reduced word of `w`.
    fn reduced_words(p: &CoxeterPresentation, w: &GroupElement) -> Vec<Vec<usize>> {
        let descents = p.right_descents(w);
        if descents.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in descents {
            for mut word in reduced_words(p, &p.mul_gen_right(w, i)) {
                word.push(i);
                out.push(word);
            }
        }
        out
    }

    #[test]
    fn validity() {
        let a2 = pres("A2");
        assert!(WeightFunction::validate(&a2, vec![1, 1]).is_ok());
        assert_eq!(
            WeightFunction::validate(&a2, vec![1, 2]).unwrap_err(),
            Error::OddBondViolation(0, 1, 1, 2)
        );
        assert!(matches!(
            WeightFunction::validate(&a2, vec![1]),
            Err(Error::WeightArity { .. })
        ));
        // G~2: nodes 1 (short), 2 (long), 0; bonds 1-2 of order 6, 2-0 of order 3.
        let g = pres("G~2");
        assert!(WeightFunction::validate(&g, vec![3, 1, 1]).is_ok());
        assert!(WeightFunction::validate(&g, vec![1, 3, 1]).is_err());
    }

    #[test]
    fn evaluation() {
        let c2 = pres("C2");
        let l = WeightFunction::validate(&c2, vec![1, 3]).unwrap();
        assert_eq!(l.evaluate(&c2.identity()).unwrap(), 0);
        assert_eq!(l.evaluate_word(&[1]).unwrap(), 3);
        assert_eq!(l.evaluate_word(&[1, 1, 0]).unwrap(), 1);
        assert_eq!(l.total_flag_dimension().unwrap(), 8);
        let g2 = pres("G2");
        let l = WeightFunction::validate(&g2, vec![1, 3]).unwrap();
        assert_eq!(l.total_flag_dimension().unwrap(), 12);
        assert_eq!(WeightFunction::constant(&pres("B2"), 1).total_flag_dimension().unwrap(), 4);
        let triv = CoxeterPresentation::build(&TypeDescriptor::trivial()).unwrap();
        assert_eq!(WeightFunction::constant(&triv, 1).total_flag_dimension().unwrap(), 0);
        let aff = WeightFunction::constant(&pres("A~1"), 1);
        assert_eq!(aff.total_flag_dimension(), Err(Error::InfiniteGroup));
    }

    #[test]
    fn flag_dimensions() {
        assert_eq!(flag_dimension(4, 4), Ok(0));
        assert_eq!(flag_dimension(10, 4), Ok(3));
        assert_eq!(flag_dimension(5, 4), Err(Error::OddDimensionDifference(5, 4)));
        assert_eq!(flag_dimension(4, 6), Err(Error::NegativeDimension(4, 6)));
    }

    #[test]
    fn restriction_along_alignment() {
        let g = pres("G~2");
        let l = WeightFunction::validate(&g, vec![3, 1, 1]).unwrap();
        let g2 = pres("G2");
        assert_eq!(l.restrict(&g2, &[0, 1]).unwrap().values(), &[3, 1]);
        assert_eq!(l.restrict(&g2, &[1, 2]).unwrap_err(), Error::EmbeddingFailed);
        let c = WeightFunction::constant(&g, 1);
        assert_eq!(c.restrict(&g2, &[0, 1]).unwrap().values(), &[1, 1]);
    }

    #[test]
    fn reduced_word_independence_up_to_length_six() {
        for (ty, vals) in [
            ("B3", vec![2, 2, 5]),
            ("G2", vec![1, 3]),
            ("C~2", vec![1, 2, 3]),
            ("G~2", vec![3, 1, 1]),
            ("A~2", vec![2, 2, 2]),
            ("F4", vec![1, 1, 2, 2]),
        ] {
            let p = pres(ty);
            let l = WeightFunction::validate(&p, vals.clone()).unwrap();
            for w in p.ball(6) {
                let target = l.evaluate(&w).unwrap();
                for word in reduced_words(&p, &w) {
                    let sum: u64 = word.iter().map(|&i| vals[i]).sum();
                    assert_eq!(sum, target, "{ty} {word:?}");
                }
            }
        }
    }

    fn carriers() -> Vec<CoxeterPresentation> {
        ["A2", "B2", "G2", "A3", "B3", "C3", "A1xA2", "C~2"]
            .iter()
            .map(|s| pres(s))
            .collect()
    }

    proptest! {
        #[test]
        fn validate_agrees_with_brute_force(idx in 0usize..8, raw in prop::collection::vec(1u64..4, 4)) {
            let p = &carriers()[idx];
            let values = raw[..p.rank()].to_vec();
            let ok = WeightFunction::validate(p, values.clone()).is_ok();
            prop_assert_eq!(ok, extends_by_brute_force(p, &values, 10));
        }

        #[test]
        fn additive_on_length_additive_pairs(idx in 0usize..8, a in 0usize..40, b in 0usize..40) {
            let p = &carriers()[idx];
            let vals: Vec<u64> = odd_classes(p)
                .iter()
                .enumerate()
                .fold(vec![0; p.rank()], |mut v, (c, cls)| {
                    for &i in cls { v[i] = c as u64 + 1; }
                    v
                });
            let l = WeightFunction::validate(p, vals).unwrap();
            let ball = p.ball(5);
            let (x, y) = (&ball[a % ball.len()], &ball[b % ball.len()]);
            let xy = p.multiply(x, y).unwrap();
            if p.length(&xy) == p.length(x) + p.length(y) {
                prop_assert_eq!(
                    l.evaluate(&xy).unwrap(),
                    l.evaluate(x).unwrap() + l.evaluate(y).unwrap()
                );
            }
        }
    }
}
