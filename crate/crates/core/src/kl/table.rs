use std::collections::HashMap;

use super::poly::LaurentPoly;
use crate::coxeter::{CoxeterPresentation, GroupElement, IntMatrix};
use crate::error::{Error, Result};

/// Largest group order for which a full KL table is built by default. The
/// table holds one polynomial per pair of elements.
pub const DEFAULT_KL_CAP: usize = 2_000;

/// A finite Coxeter group with all its elements indexed, multiplication by
/// generators tabulated, and the KL polynomials `P_{x,w}`.
#[derive(Debug, Clone)]
pub struct KlGroup {
    pres: CoxeterPresentation,
    elements: Vec<GroupElement>,
    index: HashMap<IntMatrix, usize>,
    len: Vec<usize>,
    /// `lmul[s * n + x]` is the index of `s x`.
    lmul: Vec<usize>,
    rmul: Vec<usize>,
    /// `p[w * n + x]`, zero unless `x <= w` in the Bruhat order.
    p: Vec<LaurentPoly>,
    /// For each `w`, the `z < w` with `mu(z, w) != 0`.
    mu_below: Vec<Vec<(usize, i64)>>,
}

impl KlGroup {
    pub fn new(pres: &CoxeterPresentation, cap: usize) -> Result<Self> {
        let elements = pres.enumerate(cap as u128)?;
        let mut g = Self::skeleton(pres, elements);
        g.fill_table();
        Ok(g)
    }

    /// Index structure without the polynomial table.
    pub(crate) fn skeleton(pres: &CoxeterPresentation, elements: Vec<GroupElement>) -> Self {
        let n = elements.len();
        let r = pres.rank();
        let index: HashMap<IntMatrix, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.matrix().clone(), i))
            .collect();
        let len = elements.iter().map(|e| pres.length(e)).collect();
        let mut lmul = vec![0; r * n];
        let mut rmul = vec![0; r * n];
        for (x, e) in elements.iter().enumerate() {
            for s in 0..r {
                lmul[s * n + x] = index[pres.mul_gen_left(s, e).matrix()];
                rmul[s * n + x] = index[pres.mul_gen_right(e, s).matrix()];
            }
        }
        Self {
            pres: pres.clone(),
            elements,
            index,
            len,
            lmul,
            rmul,
            p: Vec::new(),
            mu_below: Vec::new(),
        }
    }

    pub(crate) fn set_table(&mut self, p: Vec<LaurentPoly>) -> Result<()> {
        if p.len() != self.size() * self.size() {
            return Err(Error::Cache("table size does not match the group".into()));
        }
        self.p = p;
        self.mu_below = (0..self.size()).map(|w| self.compute_mu_below(w)).collect();
        Ok(())
    }

    pub(crate) fn raw_table(&self) -> &[LaurentPoly] {
        &self.p
    }

    fn compute_mu_below(&self, w: usize) -> Vec<(usize, i64)> {
        let n = self.size();
        let mut out = Vec::new();
        for z in 0..n {
            if self.len[z] >= self.len[w] {
                continue;
            }
            let d = self.len[w] - self.len[z];
            if d % 2 == 0 {
                continue;
            }
            let m = self.p[w * n + z].coeff(((d - 1) / 2) as i32);
            if m != 0 {
                out.push((z, m));
            }
        }
        out
    }

    /// The standard recursion along a left descent `s` of `w`, `v = s w`:
    /// `P_{x,w} = q^{1-c} P_{sx,v} + q^c P_{x,v} - sum mu(z,v) q^{(l(w)-l(z))/2} P_{x,z}`
    /// with `c = 1` when `sx < x`, summed over `z < v` with `sz < z`.
    fn fill_table(&mut self) {
        let n = self.size();
        self.p = vec![LaurentPoly::zero(); n * n];
        self.mu_below = vec![Vec::new(); n];
        self.p[0] = LaurentPoly::one();
        // Elements come in nondecreasing length, so `v` and every `z` are done.
        for w in 1..n {
            let s = (0..self.pres.rank())
                .find(|&s| self.len[self.lmul[s * n + w]] < self.len[w])
                .expect("nonidentity element has a left descent");
            let v = self.lmul[s * n + w];
            let terms: Vec<(usize, i64)> = self.mu_below[v]
                .iter()
                .copied()
                .filter(|&(z, _)| self.len[self.lmul[s * n + z]] < self.len[z])
                .collect();
            for x in 0..n {
                if self.len[x] > self.len[w] {
                    continue;
                }
                let sx = self.lmul[s * n + x];
                let c = i32::from(self.len[sx] < self.len[x]);
                let mut poly = LaurentPoly::zero();
                poly.add_scaled_shifted(&self.p[v * n + sx], 1, 1 - c);
                poly.add_scaled_shifted(&self.p[v * n + x], 1, c);
                for &(z, mu) in &terms {
                    let shift = ((self.len[w] - self.len[z]) / 2) as i32;
                    poly.add_scaled_shifted(&self.p[z * n + x], -mu, shift);
                }
                self.p[w * n + x] = poly;
            }
            self.mu_below[w] = self.compute_mu_below(w);
        }
    }

    pub fn presentation(&self) -> &CoxeterPresentation {
        &self.pres
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, w: &GroupElement) -> Option<usize> {
        self.index.get(w.matrix()).copied()
    }

    pub fn length(&self, i: usize) -> usize {
        self.len[i]
    }

    pub fn left_mul(&self, s: usize, x: usize) -> usize {
        self.lmul[s * self.size() + x]
    }

    pub fn right_mul(&self, x: usize, s: usize) -> usize {
        self.rmul[s * self.size() + x]
    }

    /// Product of two indexed elements, by walking the word of `y`.
    pub fn mul(&self, x: usize, y: usize) -> usize {
        let word = self.elements[y].cached_word().expect("enumerated elements carry words");
        word.iter().fold(x, |acc, &s| self.right_mul(acc, s))
    }

    pub fn inverse(&self, x: usize) -> usize {
        let word = self.elements[x].cached_word().expect("enumerated elements carry words");
        word.iter().rev().fold(0, |acc, &s| self.right_mul(acc, s))
    }

    pub fn left_descents(&self, x: usize) -> u64 {
        (0..self.pres.rank())
            .filter(|&s| self.len[self.left_mul(s, x)] < self.len[x])
            .fold(0, |m, s| m | (1 << s))
    }

    pub fn right_descents(&self, x: usize) -> u64 {
        (0..self.pres.rank())
            .filter(|&s| self.len[self.right_mul(x, s)] < self.len[x])
            .fold(0, |m, s| m | (1 << s))
    }

    /// `P_{x,w}` as a polynomial in `q`.
    pub fn kl_poly(&self, x: usize, w: usize) -> &LaurentPoly {
        &self.p[w * self.size() + x]
    }

    pub fn bruhat_le(&self, x: usize, w: usize) -> bool {
        !self.kl_poly(x, w).is_zero()
    }

    pub fn mu(&self, x: usize, w: usize) -> i64 {
        self.mu_below[w]
            .iter()
            .find(|&&(z, _)| z == x)
            .map_or(0, |&(_, m)| m)
    }

    pub fn mu_below(&self, w: usize) -> &[(usize, i64)] {
        &self.mu_below[w]
    }

    /// Index of the longest element (the last one enumerated).
    pub fn longest(&self) -> usize {
        self.size() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::TypeDescriptor;

    fn group(s: &str) -> KlGroup {
        let p = CoxeterPresentation::build(&s.parse::<TypeDescriptor>().unwrap()).unwrap();
        KlGroup::new(&p, DEFAULT_KL_CAP).unwrap()
    }

    #[test]
    fn rank_two_polys_are_trivial() {
        for ty in ["A1", "A2", "B2", "G2"] {
            let g = group(ty);
            for w in 0..g.size() {
                for x in 0..g.size() {
                    let p = g.kl_poly(x, w);
                    // Every element lies below w0; in rank two Bruhat order is
                    // by length except between equal lengths.
                    if g.bruhat_le(x, w) {
                        assert_eq!(*p, LaurentPoly::one(), "{ty} x={x} w={w}");
                    }
                }
                assert!(g.bruhat_le(0, w));
                assert!(g.bruhat_le(w, g.longest()));
            }
        }
    }

    #[test]
    fn a3_has_nontrivial_polys() {
        let g = group("A3");
        // s2 s1 s3 s2: P_{e,w} = 1 + q and P_{s2,w} = 1 + q.
        let w = g.index_of(&g.presentation().from_word(&[1, 0, 2, 1]).unwrap()).unwrap();
        assert_eq!(*g.kl_poly(0, w), LaurentPoly::from_terms(&[(0, 1), (1, 1)]));
        let s2 = g.index_of(&g.presentation().generator(1).unwrap()).unwrap();
        assert_eq!(*g.kl_poly(s2, w), LaurentPoly::from_terms(&[(0, 1), (1, 1)]));
    }

    #[test]
    fn degree_bound_and_positivity() {
        for ty in ["A3", "B3", "A1xA2", "D4"] {
            let g = group(ty);
            for w in 0..g.size() {
                assert_eq!(*g.kl_poly(w, w), LaurentPoly::one());
                for x in 0..g.size() {
                    let p = g.kl_poly(x, w);
                    if x != w && !p.is_zero() {
                        let d = p.degree().unwrap() as usize;
                        assert!(2 * d < g.length(w) - g.length(x), "{ty}");
                        assert_eq!(p.coeff(0), 1);
                        assert!(p.has_nonnegative_coefficients());
                    }
                }
            }
        }
    }

    #[test]
    fn multiplication_tables() {
        let g = group("B3");
        for x in 0..g.size() {
            assert_eq!(g.mul(x, g.inverse(x)), 0);
            assert_eq!(g.mul(0, x), x);
        }
        assert_eq!(g.length(g.longest()), 9);
        assert_eq!(g.size(), 48);
    }
}
