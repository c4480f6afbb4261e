//! Relative Weyl groups: the group generated by the involutions
//! `tau_k = w0(J' + k) w0(J')` attached to a parabolic `J'` and a diagram
//! automorphism `gamma`.

use std::collections::{HashSet, VecDeque};

use crate::coxeter::{CoxeterMatrix, CoxeterPresentation, GroupElement, IntMatrix, TypeDescriptor};
use crate::error::{Error, Result};

/// Ambient presentation, parabolic `J'` and automorphism `gamma`.
#[derive(Debug, Clone)]
pub struct RelativeDatum {
    pub ambient: CoxeterPresentation,
    pub jprime: Vec<usize>,
    pub gamma: Vec<usize>,
}

impl RelativeDatum {
    pub fn new(ambient: CoxeterPresentation, jprime: Vec<usize>, gamma: Vec<usize>) -> Result<Self> {
        let mut jprime = jprime;
        jprime.sort_unstable();
        jprime.dedup();
        let d = Self {
            ambient,
            jprime,
            gamma,
        };
        d.validate()?;
        Ok(d)
    }

    /// Datum with trivial `gamma`.
    pub fn untwisted(ambient: CoxeterPresentation, jprime: Vec<usize>) -> Result<Self> {
        let n = ambient.rank();
        Self::new(ambient, jprime, (0..n).collect())
    }

    pub fn gamma_is_identity(&self) -> bool {
        self.gamma.iter().enumerate().all(|(i, &g)| i == g)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.ambient.rank();
        if self.gamma.len() != n {
            return Err(Error::GammaNotAutomorphism);
        }
        let mut hit = vec![false; n];
        for &g in &self.gamma {
            if g >= n || std::mem::replace(&mut hit[g], true) {
                return Err(Error::GammaNotAutomorphism);
            }
        }
        // Permuting coordinates must preserve the Cartan matrix, so that
        // gamma acts on group elements by conjugating with a permutation.
        for i in 0..n {
            for j in 0..n {
                if self.ambient.cartan(self.gamma[i], self.gamma[j]) != self.ambient.cartan(i, j) {
                    return Err(Error::GammaNotAutomorphism);
                }
            }
        }
        if let Some(&bad) = self.jprime.iter().find(|&&j| j >= n) {
            return Err(Error::BadGenerator(bad));
        }
        if self.jprime.iter().any(|j| !self.jprime.contains(&self.gamma[*j])) {
            return Err(Error::GammaMovesJprime);
        }
        if !self.ambient.is_finite_parabolic(&self.jprime) {
            return Err(Error::JprimeInfinite);
        }
        Ok(())
    }

    fn union(&self, k: &[usize]) -> Vec<usize> {
        let mut u: Vec<usize> = self.jprime.iter().chain(k).copied().collect();
        u.sort_unstable();
        u
    }

    /// Image of an element under `gamma`.
    pub fn apply_gamma(&self, w: &GroupElement) -> GroupElement {
        w.permuted(&self.gamma)
    }
}

/// The `gamma`-orbits on nodes outside `J'` whose union with `J'` is of
/// finite type, ordered by least node.
pub fn gamma_orbit_generators(d: &RelativeDatum) -> Result<Vec<Vec<usize>>> {
    d.validate()?;
    let n = d.ambient.rank();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] || d.jprime.contains(&s) {
            continue;
        }
        let mut orbit = vec![s];
        seen[s] = true;
        let mut cur = d.gamma[s];
        while cur != s {
            seen[cur] = true;
            orbit.push(cur);
            cur = d.gamma[cur];
        }
        orbit.sort_unstable();
        if d.ambient.is_finite_parabolic(&d.union(&orbit)) {
            out.push(orbit);
        }
    }
    Ok(out)
}

/// `tau_k = w0(J' + k) w0(J')`, verified to be an involution that commutes
/// in the factorization, normalizes `W_J'` and is fixed by `gamma`.
pub fn tau(d: &RelativeDatum, k: &[usize]) -> Result<GroupElement> {
    let mut k = k.to_vec();
    k.sort_unstable();
    if !gamma_orbit_generators(d)?.contains(&k) {
        return Err(Error::OrbitNotInK(k));
    }
    let p = &d.ambient;
    let big = p.longest_element(&d.union(&k))?;
    let small = p.longest_element(&d.jprime)?;
    let t = p.multiply(&big, &small)?;
    if t != p.multiply(&small, &big)? {
        return Err(Error::CommutationFailure(k));
    }
    if !p.multiply(&t, &t)?.is_identity() {
        return Err(Error::TauNotInvolution(k));
    }
    for &j in &d.jprime {
        let sj = p.generator(j)?;
        let conj = p.multiply(&p.multiply(&t, &sj)?, &t)?;
        if !d.jprime.iter().any(|&i| p.generators()[i] == conj) {
            return Err(Error::TauNotNormalizing(k));
        }
    }
    if d.apply_gamma(&t) != t {
        return Err(Error::TauNotGammaFixed(k));
    }
    p.canonical(&t)
}

/// The relative Coxeter group generated by the `tau_k`.
#[derive(Debug, Clone)]
pub struct RelativeGroup {
    pub datum: RelativeDatum,
    pub orbits: Vec<Vec<usize>>,
    pub taus: Vec<GroupElement>,
    pub coxmatrix: CoxeterMatrix,
    pub rtype: TypeDescriptor,
}

pub fn relative_group(d: &RelativeDatum) -> Result<RelativeGroup> {
    let orbits = gamma_orbit_generators(d)?;
    let taus = orbits
        .iter()
        .map(|k| tau(d, k))
        .collect::<Result<Vec<_>>>()?;
    let m = taus.len();
    let mut coxmatrix = CoxeterMatrix::new(m);
    for i in 0..m {
        for j in (i + 1)..m {
            coxmatrix.set(i, j, d.ambient.pair_order(&taus[i], &taus[j])?);
        }
    }
    let rtype = coxmatrix.recognize()?;
    Ok(RelativeGroup {
        datum: d.clone(),
        orbits,
        taus,
        coxmatrix,
        rtype,
    })
}

impl RelativeGroup {
    pub fn rank(&self) -> usize {
        self.taus.len()
    }

    /// A standalone presentation with the same Coxeter matrix; generator `i`
    /// corresponds to orbit `i`.
    pub fn presentation(&self) -> Result<CoxeterPresentation> {
        CoxeterPresentation::from_coxeter_matrix(&self.coxmatrix)
    }

    /// Closure of the `tau_k` under multiplication, inside the ambient group.
    pub fn enumerate_generated(&self, cap: usize) -> Result<HashSet<IntMatrix>> {
        let p = &self.datum.ambient;
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        let id = p.identity();
        seen.insert(id.matrix().clone());
        queue.push_back(id);
        while let Some(e) = queue.pop_front() {
            for t in &self.taus {
                let next = p.multiply(&e, t)?;
                if seen.insert(next.matrix().clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded {
                            order: seen.len() as u128,
                            cap: cap as u128,
                        });
                    }
                    queue.push_back(next);
                }
            }
        }
        Ok(seen)
    }
}

/// Whether `w` lies in the standard parabolic `W_J`.
fn in_parabolic(p: &CoxeterPresentation, w: &GroupElement, j: &[usize]) -> Result<bool> {
    Ok(p.reduced_word(w)?.iter().all(|i| j.contains(i)))
}

/// Elements `w` with `w W_J' = W_J' w`, minimal in their coset and fixed by
/// `gamma`, found by filtering the whole ambient group.
pub fn brute_force_relative(d: &RelativeDatum, cap: u128) -> Result<HashSet<IntMatrix>> {
    d.validate()?;
    let p = &d.ambient;
    let mut out = HashSet::new();
    'elements: for w in p.enumerate(cap)? {
        if d.jprime.iter().any(|&j| p.is_right_descent(&w, j)) {
            continue;
        }
        if d.apply_gamma(&w) != w {
            continue;
        }
        let winv = p.invert(&w)?;
        for &j in &d.jprime {
            let conj = p.multiply(&p.multiply(&w, &p.generator(j)?)?, &winv)?;
            if !in_parabolic(p, &conj, &d.jprime)? {
                continue 'elements;
            }
        }
        out.insert(w.matrix().clone());
    }
    Ok(out)
}

/// Matches the orbits of `inner` with those of `outer` along `node_map`
/// (inner ambient node to outer ambient node). Returns, for each inner
/// generator, the index of the outer generator it equals, or `None` when
/// some generator or bond fails to match.
pub fn subgroup_embedding(
    inner: &RelativeGroup,
    outer: &RelativeGroup,
    node_map: &[usize],
) -> Result<Option<Vec<usize>>> {
    let (pi, po) = (&inner.datum.ambient, &outer.datum.ambient);
    if node_map.len() != pi.rank() || node_map.iter().any(|&i| i >= po.rank()) {
        return Err(Error::AmbientMismatch(format!(
            "node map of length {} for ambient ranks {} and {}",
            node_map.len(),
            pi.rank(),
            po.rank()
        )));
    }
    for a in 0..pi.rank() {
        for b in 0..pi.rank() {
            if pi.cartan(a, b) != po.cartan(node_map[a], node_map[b]) {
                return Err(Error::AmbientMismatch(format!(
                    "Cartan entry ({a},{b}) differs under the node map"
                )));
            }
        }
    }
    let mut align = Vec::with_capacity(inner.rank());
    for (k, t) in inner.orbits.iter().zip(&inner.taus) {
        let mut image: Vec<usize> = k.iter().map(|&i| node_map[i]).collect();
        image.sort_unstable();
        let Some(idx) = outer.orbits.iter().position(|o| *o == image) else {
            return Ok(None);
        };
        let word: Vec<usize> = pi.reduced_word(t)?.iter().map(|&i| node_map[i]).collect();
        if po.from_word(&word)? != outer.taus[idx] {
            return Ok(None);
        }
        align.push(idx);
    }
    for a in 0..align.len() {
        for b in 0..align.len() {
            if a != b && inner.coxmatrix.get(a, b) != outer.coxmatrix.get(align[a], align[b]) {
                return Ok(None);
            }
        }
    }
    Ok(Some(align))
}

pub fn subgroup_embedding_check(
    inner: &RelativeGroup,
    outer: &RelativeGroup,
    node_map: &[usize],
) -> Result<bool> {
    Ok(subgroup_embedding(inner, outer, node_map)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::TypeDescriptor;

    fn pres(s: &str) -> CoxeterPresentation {
        CoxeterPresentation::build(&s.parse::<TypeDescriptor>().unwrap()).unwrap()
    }

    fn ty(s: &str) -> TypeDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn orbits_trivial_gamma() {
        let d = RelativeDatum::untwisted(pres("A2"), vec![]).unwrap();
        assert_eq!(gamma_orbit_generators(&d).unwrap(), vec![vec![0], vec![1]]);
        let d = RelativeDatum::untwisted(pres("A~1"), vec![]).unwrap();
        assert_eq!(gamma_orbit_generators(&d).unwrap(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn tau_of_singletons_is_generator() {
        let p = pres("B3");
        let d = RelativeDatum::untwisted(p.clone(), vec![]).unwrap();
        for i in 0..3 {
            assert_eq!(tau(&d, &[i]).unwrap(), p.generator(i).unwrap());
        }
    }

    #[test]
    fn tau_failures_and_lengths() {
        let d = RelativeDatum::untwisted(pres("A2"), vec![0]).unwrap();
        assert_eq!(tau(&d, &[1]), Err(Error::CommutationFailure(vec![1])));
        let d = RelativeDatum::untwisted(pres("A3"), vec![0, 2]).unwrap();
        let t = tau(&d, &[1]).unwrap();
        assert_eq!(d.ambient.length(&t), 4);
        assert!(matches!(tau(&d, &[0]), Err(Error::OrbitNotInK(_))));
    }

    #[test]
    fn bad_gamma_rejected() {
        let p = pres("B2");
        assert_eq!(
            RelativeDatum::new(p, vec![], vec![1, 0]).unwrap_err(),
            Error::GammaNotAutomorphism
        );
        let p = pres("A3");
        assert_eq!(
            RelativeDatum::new(p, vec![0], vec![2, 1, 0]).unwrap_err(),
            Error::GammaMovesJprime
        );
        assert_eq!(
            RelativeDatum::untwisted(pres("A~2"), vec![0, 1, 2]).unwrap_err(),
            Error::JprimeInfinite
        );
    }

    #[test]
    fn exceptional_relative_types() {
        // E6 with J' = {1,3,5,6}.
        let d = RelativeDatum::untwisted(pres("E6"), vec![0, 2, 4, 5]).unwrap();
        let g = relative_group(&d).unwrap();
        assert!(g.rtype.same_coxeter_type(&ty("G2")));
        // E7 with J' = {2,5,7}.
        let d = RelativeDatum::untwisted(pres("E7"), vec![1, 4, 6]).unwrap();
        let g = relative_group(&d).unwrap();
        assert!(g.rtype.same_coxeter_type(&ty("F4")));
    }

    #[test]
    fn twisted_e6_affine_gives_f4_affine() {
        let p = pres("E~6");
        // Nodes 1..6 then 0 at index 6; the flip swaps 1<->6 and 3<->5.
        let gamma = vec![5, 1, 4, 3, 2, 0, 6];
        let d = RelativeDatum::new(p, vec![], gamma).unwrap();
        let k = gamma_orbit_generators(&d).unwrap();
        assert_eq!(k.len(), 5);
        assert_eq!(k.iter().filter(|o| o.len() == 2).count(), 2);
        let g = relative_group(&d).unwrap();
        assert!(g.rtype.same_coxeter_type(&ty("F~4")));
    }

    #[test]
    fn brute_force_matches_generated() {
        let d = RelativeDatum::untwisted(pres("A3"), vec![0, 2]).unwrap();
        let bf = brute_force_relative(&d, 100).unwrap();
        assert_eq!(bf.len(), 2);
        assert_eq!(relative_group(&d).unwrap().enumerate_generated(100).unwrap(), bf);
        let d = RelativeDatum::untwisted(pres("A2"), vec![0]).unwrap();
        assert_eq!(brute_force_relative(&d, 100).unwrap().len(), 1);
        let d = RelativeDatum::untwisted(pres("B3"), vec![]).unwrap();
        assert_eq!(brute_force_relative(&d, 100).unwrap().len(), 48);
        let d = RelativeDatum::untwisted(pres("E6"), vec![0, 2, 4, 5]).unwrap();
        let g = relative_group(&d).unwrap();
        let bf = brute_force_relative(&d, 100_000).unwrap();
        assert_eq!(bf.len(), 12);
        assert_eq!(g.enumerate_generated(100).unwrap(), bf);
    }

    #[test]
    fn type_stable_under_renumbering() {
        let p = pres("E6");
        let perm = [3, 5, 0, 1, 4, 2];
        let n = perm.len();
        let mut cartan = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                cartan[perm[i]][perm[j]] = p.cartan(i, j);
            }
        }
        let q = CoxeterPresentation::from_cartan(cartan, p.nodes().to_vec()).unwrap();
        let j: Vec<usize> = [0, 2, 4, 5].iter().map(|&i| perm[i]).collect();
        let g = relative_group(&RelativeDatum::untwisted(q, j).unwrap()).unwrap();
        assert!(g.rtype.same_coxeter_type(&ty("G2")));
    }

    #[test]
    fn embedding_checks() {
        let d = RelativeDatum::untwisted(pres("E6"), vec![0, 2, 4, 5]).unwrap();
        let inner = relative_group(&d).unwrap();
        let id: Vec<usize> = (0..6).collect();
        assert!(subgroup_embedding_check(&inner, &inner, &id).unwrap());
        let da = RelativeDatum::untwisted(pres("E~6"), vec![0, 2, 4, 5]).unwrap();
        let outer = relative_group(&da).unwrap();
        assert!(outer.rtype.same_coxeter_type(&ty("G~2")));
        assert_eq!(subgroup_embedding(&inner, &outer, &id).unwrap(), Some(vec![0, 1]));
        let swapped = relative_group(&RelativeDatum::untwisted(pres("A3"), vec![]).unwrap()).unwrap();
        let a3 = relative_group(&RelativeDatum::untwisted(pres("A3"), vec![]).unwrap()).unwrap();
        // Reversal is a diagram automorphism, but maps generator 0 to 2.
        assert_eq!(
            subgroup_embedding(&swapped, &a3, &[2, 1, 0]).unwrap(),
            Some(vec![2, 1, 0])
        );
        assert!(subgroup_embedding_check(&swapped, &a3, &[0, 1]).is_err());
        let a1 = relative_group(&RelativeDatum::untwisted(pres("A1"), vec![]).unwrap()).unwrap();
        let d = RelativeDatum::untwisted(pres("A3"), vec![0, 2]).unwrap();
        let folded = relative_group(&d).unwrap();
        assert!(!subgroup_embedding_check(&a1, &folded, &[1]).unwrap());
    }
}
