use std::collections::{HashSet, VecDeque};
use std::fmt;

use super::catalog::{component_data, Component, TypeDescriptor};
use super::element::{GroupElement, Side};
use super::matrix::IntMatrix;
use super::recognize::{Bond, CoxeterMatrix};
use crate::error::{Error, Result};

/// A generator of a presentation, identified by its catalog component and
/// its label inside that component (`"1"`, ..., `"0"` for the affine node).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeLabel {
    pub component: usize,
    pub label: String,
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.component, self.label)
    }
}

/// A crystallographic Coxeter presentation given by a generalized Cartan
/// matrix, realized on simple-root coordinates.
#[derive(Debug, Clone)]
pub struct CoxeterPresentation {
    nodes: Vec<NodeLabel>,
    cartan: Vec<Vec<i64>>,
    coxeter: CoxeterMatrix,
    descriptor: Option<TypeDescriptor>,
    generators: Vec<GroupElement>,
}

impl CoxeterPresentation {
    /// Instantiates a catalog type. Components appear in the given order;
    /// inside each, nodes follow the standard numbering with the affine node
    /// last.
    pub fn build(desc: &TypeDescriptor) -> Result<Self> {
        let mut blocks = Vec::new();
        for c in &desc.components {
            blocks.push(component_data(c)?);
        }
        let n: usize = blocks.iter().map(|b| b.labels.len()).sum();
        let mut cartan = vec![vec![0i64; n]; n];
        let mut nodes = Vec::with_capacity(n);
        let mut off = 0;
        for (ci, b) in blocks.iter().enumerate() {
            let k = b.labels.len();
            for i in 0..k {
                cartan[off + i][off..off + k].copy_from_slice(&b.cartan[i]);
                nodes.push(NodeLabel {
                    component: ci,
                    label: b.labels[i].clone(),
                });
            }
            off += k;
        }
        let mut p = Self::from_cartan(cartan, nodes)?;
        p.descriptor = Some(desc.clone());
        Ok(p)
    }

    pub fn from_cartan(cartan: Vec<Vec<i64>>, nodes: Vec<NodeLabel>) -> Result<Self> {
        let n = cartan.len();
        if nodes.len() != n {
            return Err(Error::DimensionMismatch(nodes.len(), n));
        }
        let mut coxeter = CoxeterMatrix::new(n);
        for i in 0..n {
            if cartan[i].len() != n {
                return Err(Error::DimensionMismatch(cartan[i].len(), n));
            }
            if cartan[i][i] != 2 {
                return Err(Error::UnmatchedGraph(format!("cartan[{i}][{i}] != 2")));
            }
            for j in (i + 1)..n {
                let (a, b) = (cartan[i][j], cartan[j][i]);
                if a > 0 || b > 0 || (a == 0) != (b == 0) {
                    return Err(Error::UnmatchedGraph(format!(
                        "inconsistent Cartan entries at ({i},{j})"
                    )));
                }
                coxeter.set(i, j, Bond::from_cartan_product(a * b)?);
            }
        }
        let generators = (0..n)
            .map(|i| {
                let mut m = IntMatrix::identity(n);
                // s_i(alpha_j) = alpha_j - a_ij alpha_i: row i of s_i.
                for j in 0..n {
                    m.set(i, j, m.get(i, j) - cartan[i][j]);
                }
                GroupElement {
                    matrix: m,
                    word: Some(vec![i]),
                }
            })
            .collect();
        Ok(Self {
            nodes,
            cartan,
            coxeter,
            descriptor: None,
            generators,
        })
    }

    /// Realizes a crystallographic Coxeter matrix by a Cartan matrix with
    /// the matching bond products; the Weyl group depends only on the bonds.
    pub fn from_coxeter_matrix(m: &CoxeterMatrix) -> Result<Self> {
        let n = m.len();
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            cartan[i][i] = 2;
            for j in (i + 1)..n {
                let (a, b) = match m.get(i, j) {
                    Bond::Order(2) => (0, 0),
                    Bond::Order(3) => (-1, -1),
                    Bond::Order(4) => (-1, -2),
                    Bond::Order(6) => (-1, -3),
                    Bond::Infinite => (-2, -2),
                    Bond::Order(k) => return Err(Error::NonCrystallographic(k as usize)),
                };
                cartan[i][j] = a;
                cartan[j][i] = b;
            }
        }
        let nodes = (0..n)
            .map(|i| NodeLabel {
                component: 0,
                label: i.to_string(),
            })
            .collect();
        Self::from_cartan(cartan, nodes)
    }

    pub fn rank(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[NodeLabel] {
        &self.nodes
    }

    pub fn descriptor(&self) -> Option<&TypeDescriptor> {
        self.descriptor.as_ref()
    }

    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn cartan_rows(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn bond(&self, i: usize, j: usize) -> Bond {
        self.coxeter.get(i, j)
    }

    pub fn coxeter_matrix(&self) -> &CoxeterMatrix {
        &self.coxeter
    }

    /// Global index of the node `label` in component `component`.
    pub fn node(&self, component: usize, label: &str) -> Option<usize> {
        self.nodes
            .iter()
            .position(|n| n.component == component && n.label == label)
    }

    /// Indices of the nodes of one component, in presentation order.
    pub fn component_nodes(&self, component: usize) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| self.nodes[i].component == component)
            .collect()
    }

    /// Whether node `i` is the extra node of an affine component.
    pub fn is_affine_node(&self, i: usize) -> bool {
        self.nodes[i].label.starts_with('0')
    }

    pub fn recognize(&self) -> Result<TypeDescriptor> {
        self.coxeter.recognize()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            matrix: IntMatrix::identity(self.rank()),
            word: Some(vec![]),
        }
    }

    pub fn generator(&self, i: usize) -> Result<GroupElement> {
        self.generators.get(i).cloned().ok_or(Error::BadGenerator(i))
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    fn check_dim(&self, a: &GroupElement) -> Result<()> {
        if a.dim() != self.rank() {
            Err(Error::DimensionMismatch(a.dim(), self.rank()))
        } else {
            Ok(())
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok(GroupElement {
            matrix: a.matrix.mul(&b.matrix),
            word: None,
        })
    }

    pub fn invert(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_dim(a)?;
        let word = match &a.word {
            Some(w) => w.clone(),
            None => self.right_reduction(a),
        };
        let rev: Vec<usize> = word.iter().rev().copied().collect();
        let mut out = self.from_word(&rev)?;
        out.word = Some(rev);
        Ok(out)
    }

    /// `a * s_i` by a column operation.
    pub fn mul_gen_right(&self, a: &GroupElement, i: usize) -> GroupElement {
        let n = self.rank();
        let mut m = a.matrix.clone();
        let col_i = a.matrix.column(i);
        for j in 0..n {
            let c = self.cartan[i][j];
            if c == 0 {
                continue;
            }
            for r in 0..n {
                m.set(r, j, m.get(r, j) - c * col_i[r]);
            }
        }
        GroupElement {
            matrix: m,
            word: None,
        }
    }

    /// `s_i * a` by a row operation.
    pub fn mul_gen_left(&self, i: usize, a: &GroupElement) -> GroupElement {
        let n = self.rank();
        let mut m = a.matrix.clone();
        for c in 0..n {
            let v: i64 = (0..n).map(|j| self.cartan[i][j] * a.matrix.get(j, c)).sum();
            m.set(i, c, a.matrix.get(i, c) - v);
        }
        GroupElement {
            matrix: m,
            word: None,
        }
    }

    pub fn from_word(&self, word: &[usize]) -> Result<GroupElement> {
        let mut e = self.identity();
        for &i in word {
            if i >= self.rank() {
                return Err(Error::BadGenerator(i));
            }
            e = self.mul_gen_right(&e, i);
        }
        e.word = None;
        Ok(e)
    }

    /// Sign of the root stored in column `i`: the coordinates of a real root
    /// are sign-coherent, so the first nonzero entry decides.
    fn column_negative(m: &IntMatrix, i: usize) -> bool {
        let n = m.dim();
        let mut sign = 0i64;
        for r in 0..n {
            let v = m.get(r, i);
            if v != 0 {
                if sign == 0 {
                    sign = v.signum();
                } else {
                    debug_assert_eq!(sign, v.signum(), "root image is not sign-coherent");
                }
            }
        }
        sign < 0
    }

    pub fn is_right_descent(&self, a: &GroupElement, i: usize) -> bool {
        Self::column_negative(&a.matrix, i)
    }

    pub fn is_descent(&self, a: &GroupElement, i: usize, side: Side) -> Result<bool> {
        if i >= self.rank() {
            return Err(Error::BadGenerator(i));
        }
        self.check_dim(a)?;
        Ok(match side {
            Side::Right => self.is_right_descent(a, i),
            Side::Left => {
                let inv = self.invert(a)?;
                self.is_right_descent(&inv, i)
            }
        })
    }

    pub fn right_descents(&self, a: &GroupElement) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| self.is_right_descent(a, i))
            .collect()
    }

    /// Some reduced word of `a`, found by peeling right descents.
    fn right_reduction(&self, a: &GroupElement) -> Vec<usize> {
        let mut cur = a.clone();
        let mut peeled = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| self.is_right_descent(&cur, i)) {
            cur = self.mul_gen_right(&cur, i);
            peeled.push(i);
        }
        peeled.reverse();
        peeled
    }

    pub fn length(&self, a: &GroupElement) -> usize {
        match &a.word {
            Some(w) => w.len(),
            None => self.right_reduction(a).len(),
        }
    }

    /// Lexicographically least reduced expression: repeatedly strip the
    /// smallest left descent.
    pub fn reduced_word(&self, a: &GroupElement) -> Result<Vec<usize>> {
        self.check_dim(a)?;
        let mut inv = self.invert(a)?;
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| self.is_right_descent(&inv, i)) {
            word.push(i);
            inv = self.mul_gen_right(&inv, i);
        }
        Ok(word)
    }

    /// Attaches the canonical reduced word.
    pub fn canonical(&self, a: &GroupElement) -> Result<GroupElement> {
        let word = self.reduced_word(a)?;
        Ok(GroupElement {
            matrix: a.matrix.clone(),
            word: Some(word),
        })
    }

    /// Whether `J` generates a finite parabolic subgroup.
    pub fn is_finite_parabolic(&self, j: &[usize]) -> bool {
        if j.iter().any(|&i| i >= self.rank()) {
            return false;
        }
        match self.coxeter.induced(j).recognize() {
            Ok(t) => t.is_finite(),
            Err(_) => false,
        }
    }

    /// Longest element of the finite parabolic `W_J`.
    pub fn longest_element(&self, j: &[usize]) -> Result<GroupElement> {
        if !self.is_finite_parabolic(j) {
            return Err(Error::InfiniteParabolic(j.to_vec()));
        }
        let mut w = self.identity();
        let mut word = Vec::new();
        while let Some(&i) = j.iter().find(|&&i| !self.is_right_descent(&w, i)) {
            w = self.mul_gen_right(&w, i);
            word.push(i);
        }
        w.word = Some(word);
        Ok(w)
    }

    /// Order parameter of the product of two involutions: the least
    /// `m <= 6` with `(ab)^m = 1`, else infinite.
    pub fn pair_order(&self, a: &GroupElement, b: &GroupElement) -> Result<Bond> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        for x in [a, b] {
            if !x.matrix.mul(&x.matrix).is_identity() || x.is_identity() {
                return Err(Error::NotInvolution);
            }
        }
        if a == b {
            return Err(Error::EqualGenerators);
        }
        let ab = a.matrix.mul(&b.matrix);
        let mut pow = ab.clone();
        for m in 1..=6u32 {
            if pow.is_identity() {
                return match m {
                    2 | 3 | 4 | 6 => Ok(Bond::Order(m)),
                    other => Err(Error::NonCrystallographic(other as usize)),
                };
            }
            pow = pow.mul(&ab);
        }
        Ok(Bond::Infinite)
    }

    /// Catalog order of the group, `None` when infinite.
    pub fn group_order(&self) -> Result<Option<u128>> {
        self.recognize()?.group_order()
    }

    /// All elements by breadth-first word length, with canonical words.
    pub fn enumerate(&self, cap: u128) -> Result<Vec<GroupElement>> {
        let order = self.group_order()?.ok_or(Error::InfiniteGroup)?;
        if order > cap {
            return Err(Error::CapExceeded { order, cap });
        }
        let mut seen: HashSet<IntMatrix> = HashSet::with_capacity(order as usize);
        let mut out = Vec::with_capacity(order as usize);
        let mut queue = VecDeque::new();
        let id = self.identity();
        seen.insert(id.matrix.clone());
        queue.push_back(id);
        while let Some(e) = queue.pop_front() {
            for i in 0..self.rank() {
                if self.is_right_descent(&e, i) {
                    continue;
                }
                let next = self.mul_gen_right(&e, i);
                if seen.insert(next.matrix.clone()) {
                    queue.push_back(next);
                }
            }
            out.push(e);
        }
        debug_assert_eq!(out.len() as u128, order);
        out.iter_mut()
            .map(|e| self.canonical(e))
            .collect::<Result<Vec<_>>>()
    }

    /// Elements of length at most `max_len`, breadth-first; works for
    /// infinite groups.
    pub fn ball(&self, max_len: usize) -> Vec<GroupElement> {
        let mut seen: HashSet<IntMatrix> = HashSet::new();
        let mut out = vec![self.identity()];
        seen.insert(out[0].matrix.clone());
        let mut frontier = 0;
        for _ in 0..max_len {
            let end = out.len();
            for idx in frontier..end {
                for i in 0..self.rank() {
                    if self.is_right_descent(&out[idx], i) {
                        continue;
                    }
                    let mut next = self.mul_gen_right(&out[idx], i);
                    if seen.insert(next.matrix.clone()) {
                        let mut w = out[idx].word.clone().unwrap_or_default();
                        w.push(i);
                        next.word = Some(w);
                        out.push(next);
                    }
                }
            }
            frontier = end;
        }
        out
    }

    /// The standard parabolic on `nodes` as a presentation in its own right.
    /// Node `k` of the result is node `nodes[k]` of `self`.
    pub fn sub_presentation(&self, nodes: &[usize]) -> Result<CoxeterPresentation> {
        let cartan: Vec<Vec<i64>> = nodes
            .iter()
            .map(|&i| nodes.iter().map(|&j| self.cartan[i][j]).collect())
            .collect();
        let labels = nodes.iter().map(|&i| self.nodes[i].clone()).collect();
        Self::from_cartan(cartan, labels)
    }
}

/// Type-level construction.
pub fn build_presentation(desc: &TypeDescriptor) -> Result<CoxeterPresentation> {
    CoxeterPresentation::build(desc)
}

impl From<Component> for TypeDescriptor {
    fn from(c: Component) -> Self {
        TypeDescriptor::single(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> CoxeterPresentation {
        build_presentation(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn catalog_shapes() {
        let a2 = p("A2");
        assert_eq!(a2.rank(), 2);
        assert_eq!(a2.bond(0, 1), Bond::Order(3));
        let g2 = p("G~2");
        assert_eq!(g2.rank(), 3);
        assert_eq!(g2.bond(0, 1), Bond::Order(6));
        assert_eq!(g2.bond(1, 2), Bond::Order(3));
        assert_eq!(g2.bond(0, 2), Bond::Order(2));
        let a0 = p("A0");
        assert_eq!(a0.rank(), 0);
        assert_eq!(a0.enumerate(10).unwrap().len(), 1);
    }

    #[test]
    fn every_catalog_entry_recognizes_as_itself() {
        let mut names = vec![];
        for r in 1..=8 {
            names.push(format!("A{r}"));
            names.push(format!("A~{r}"));
            names.push(format!("B{r}"));
            names.push(format!("C{r}"));
            names.push(format!("B~{r}"));
            names.push(format!("C~{r}"));
            names.push(format!("D{r}"));
            names.push(format!("D~{r}"));
        }
        for s in ["E6", "E7", "E8", "F4", "G2", "E~6", "E~7", "E~8", "F~4", "G~2"] {
            names.push(s.into());
        }
        for s in names {
            let t: TypeDescriptor = s.parse().unwrap();
            let got = p(&s).recognize().unwrap();
            assert!(got.same_coxeter_type(&t), "{s} recognized as {got}");
        }
    }

    #[test]
    fn small_products() {
        let a2 = p("A2");
        let s1 = a2.generator(0).unwrap();
        let s2 = a2.generator(1).unwrap();
        assert!(a2.multiply(&s1, &s1).unwrap().is_identity());
        let s12 = a2.multiply(&s1, &s2).unwrap();
        let s21 = a2.multiply(&s2, &s1).unwrap();
        assert!(a2.multiply(&s12, &s21).unwrap().is_identity());
        assert_eq!(a2.length(&s12), 2);
        let cube = a2.multiply(&a2.multiply(&s12, &s12).unwrap(), &s12).unwrap();
        assert!(cube.is_identity());
        assert_eq!(a2.right_descents(&s12), vec![1]);
        assert!(a2.multiply(&s1, &p("A3").generator(0).unwrap()).is_err());
    }

    #[test]
    fn descents_of_identity_and_generators() {
        let b3 = p("B3");
        let e = b3.identity();
        for i in 0..3 {
            assert!(!b3.is_descent(&e, i, Side::Left).unwrap());
            assert!(!b3.is_descent(&e, i, Side::Right).unwrap());
            let s = b3.generator(i).unwrap();
            assert!(b3.is_descent(&s, i, Side::Left).unwrap());
            assert!(b3.is_descent(&s, i, Side::Right).unwrap());
        }
        assert!(b3.is_descent(&e, 3, Side::Left).is_err());
    }

    #[test]
    fn longest_elements() {
        let b2 = p("B2");
        let w0 = b2.longest_element(&[0, 1]).unwrap();
        assert_eq!(b2.length(&w0), 4);
        assert_eq!(b2.invert(&w0).unwrap(), w0);
        assert!(b2.longest_element(&[]).unwrap().is_identity());
        assert_eq!(b2.longest_element(&[1]).unwrap(), b2.generator(1).unwrap());
        let a3 = p("A3");
        assert_eq!(a3.length(&a3.longest_element(&[0, 1, 2]).unwrap()), 6);
        let at1 = p("A~1");
        assert!(at1.longest_element(&[0, 1]).is_err());
    }

    #[test]
    fn finite_parabolics() {
        let at1 = p("A~1");
        assert!(at1.is_finite_parabolic(&[]));
        assert!(at1.is_finite_parabolic(&[0]));
        assert!(!at1.is_finite_parabolic(&[0, 1]));
        let bt3 = p("B~3");
        assert!(bt3.is_finite_parabolic(&[0, 1, 2]));
        assert!(!bt3.is_finite_parabolic(&[0, 1, 2, 3]));
    }

    #[test]
    fn pair_orders() {
        let g2 = p("G2");
        let a = g2.generator(0).unwrap();
        let b = g2.generator(1).unwrap();
        assert_eq!(g2.pair_order(&a, &b).unwrap(), Bond::Order(6));
        assert_eq!(g2.pair_order(&a, &a), Err(Error::EqualGenerators));
        let at1 = p("A~1");
        assert_eq!(
            at1.pair_order(&at1.generator(0).unwrap(), &at1.generator(1).unwrap())
                .unwrap(),
            Bond::Infinite
        );
        let a1a1 = p("A1xA1");
        assert_eq!(
            a1a1.pair_order(&a1a1.generator(0).unwrap(), &a1a1.generator(1).unwrap())
                .unwrap(),
            Bond::Order(2)
        );
        assert_eq!(
            g2.pair_order(&g2.identity(), &a),
            Err(Error::NotInvolution)
        );
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(p("A1").enumerate(100).unwrap().len(), 2);
        assert_eq!(p("B2").enumerate(100).unwrap().len(), 8);
        assert_eq!(p("B3").enumerate(100).unwrap().len(), 48);
        assert_eq!(p("G2").enumerate(100).unwrap().len(), 12);
        assert!(matches!(p("B3").enumerate(10), Err(Error::CapExceeded { .. })));
        assert_eq!(p("A~2").enumerate(100), Err(Error::InfiniteGroup));
        assert_eq!(p("A~1").ball(3).len(), 7);
        assert_eq!(p("A~2").ball(3).len(), 19);
        assert_eq!(p("B3").ball(20).len(), 48);
    }

    #[test]
    fn reduced_words_are_lex_least() {
        let a2 = p("A2");
        let w0 = a2.longest_element(&[0, 1]).unwrap();
        assert_eq!(a2.reduced_word(&w0).unwrap(), vec![0, 1, 0]);
        assert!(a2.reduced_word(&a2.identity()).unwrap().is_empty());
    }
}
