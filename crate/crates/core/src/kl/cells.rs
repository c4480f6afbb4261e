use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use super::poly::LaurentPoly;
use super::table::KlGroup;
use crate::error::{Error, Result};

/// Groups up to this order get their a-values from structure constants;
/// larger ones use the degree of `P_{e,z}`.
pub const STRUCTURE_CONSTANT_CAP: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AMethod {
    StructureConstants,
    /// `a = min Delta` over each cell, `Delta(z) = l(z) - 2 deg P_{e,z}`.
    Delta,
}

/// Left, right and two-sided cells of a finite Coxeter group, with the
/// a-value of each two-sided cell.
#[derive(Debug, Clone)]
pub struct CellPartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub two_sided: Vec<usize>,
    /// Members of each two-sided cell; cell ids are ordered by least member,
    /// so the identity is cell 0.
    pub cells: Vec<Vec<usize>>,
    pub a: Vec<u32>,
    pub method: AMethod,
}

impl CellPartition {
    pub fn a_of(&self, x: usize) -> u32 {
        self.a[self.two_sided[x]]
    }

    pub fn cell_of(&self, x: usize) -> usize {
        self.two_sided[x]
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.len()).collect()
    }
}

/// Pairs `z < w` joined by a nonzero `mu`.
fn mu_edges(g: &KlGroup) -> Vec<(usize, usize)> {
    (0..g.size())
        .flat_map(|w| g.mu_below(w).iter().map(move |&(z, _)| (z, w)))
        .collect()
}

/// Strongly connected components of the preorder spanned by the given
/// `x <= y` relations, labelled by least member.
fn components(n: usize, relations: &[(usize, usize)]) -> Vec<usize> {
    let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(n, relations.len());
    for _ in 0..n {
        graph.add_node(());
    }
    for &(x, y) in relations {
        graph.add_edge(NodeIndex::new(y), NodeIndex::new(x), ());
    }
    let mut sccs: Vec<Vec<usize>> = tarjan_scc(&graph)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|i| i.index()).collect();
            v.sort_unstable();
            v
        })
        .collect();
    sccs.sort_by_key(|c| c[0]);
    let mut label = vec![0; n];
    for (id, c) in sccs.iter().enumerate() {
        for &x in c {
            label[x] = id;
        }
    }
    label
}

/// Preorder relations from the W-graph: for joined `x, y`, `x <= y` when the
/// descent set of `x` is not contained in that of `y`.
fn preorder(g: &KlGroup, descents: impl Fn(usize) -> u64) -> Vec<(usize, usize)> {
    let mut rel = Vec::new();
    for (z, w) in mu_edges(g) {
        let (dz, dw) = (descents(z), descents(w));
        if dz & !dw != 0 {
            rel.push((z, w));
        }
        if dw & !dz != 0 {
            rel.push((w, z));
        }
    }
    rel
}

fn group_by_label(label: &[usize]) -> Vec<Vec<usize>> {
    let count = label.iter().max().map_or(0, |&m| m + 1);
    let mut out = vec![Vec::new(); count];
    for (x, &l) in label.iter().enumerate() {
        out[l].push(x);
    }
    out
}

/// `a(z)` for every element, as the largest degree in `v` of a structure
/// constant `h_{x,y,z}` of the KL basis `C'`.
pub fn a_by_structure_constants(g: &KlGroup) -> Vec<u32> {
    let n = g.size();
    let r = g.presentation().rank();
    let mut a = vec![0i32; n];
    let v_plus_inv = LaurentPoly::from_terms(&[(-1, 1), (1, 1)]);
    // C'_s acting on the left of a vector in the C' basis.
    let act = |s: usize, vec: &[LaurentPoly]| -> Vec<LaurentPoly> {
        let mut out = vec![LaurentPoly::zero(); n];
        for (w, f) in vec.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let sw = g.left_mul(s, w);
            if g.length(sw) < g.length(w) {
                out[w].add_scaled_shifted(&f.mul(&v_plus_inv), 1, 0);
            } else {
                out[sw].add_scaled_shifted(f, 1, 0);
                for &(z, mu) in g.mu_below(w) {
                    if g.length(g.left_mul(s, z)) < g.length(z) {
                        out[z].add_scaled_shifted(f, mu, 0);
                    }
                }
            }
        }
        out
    };
    let first_descent: Vec<usize> = (0..n)
        .map(|x| {
            (0..r)
                .find(|&s| g.length(g.left_mul(s, x)) < g.length(x))
                .unwrap_or(usize::MAX)
        })
        .collect();
    for y in 0..n {
        // prods[x] = C'_x C'_y, built along a left descent of x:
        // C'_x = C'_s C'_{sx} - sum mu(z, sx) C'_z over z < sx with sz < z.
        let mut prods: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n);
        let mut e = vec![LaurentPoly::zero(); n];
        e[y] = LaurentPoly::one();
        prods.push(e);
        for x in 1..n {
            let s = first_descent[x];
            let sx = g.left_mul(s, x);
            let mut v = act(s, &prods[sx]);
            for &(z, mu) in g.mu_below(sx) {
                if g.length(g.left_mul(s, z)) < g.length(z) {
                    for (t, f) in prods[z].iter().enumerate() {
                        if !f.is_zero() {
                            v[t].add_scaled_shifted(f, -mu, 0);
                        }
                    }
                }
            }
            prods.push(v);
        }
        for row in &prods {
            for (z, h) in row.iter().enumerate() {
                if let Some(d) = h.degree() {
                    a[z] = a[z].max(d);
                }
            }
        }
    }
    a.into_iter().map(|d| d.max(0) as u32).collect()
}

pub fn delta(g: &KlGroup, z: usize) -> u32 {
    let d = g.kl_poly(0, z).degree().unwrap_or(0) as usize;
    (g.length(z) - 2 * d) as u32
}

/// Cells and a-values. The a-value route is chosen by group order; see
/// [`STRUCTURE_CONSTANT_CAP`].
pub fn two_sided_cells(g: &KlGroup) -> Result<CellPartition> {
    let method = if g.size() <= STRUCTURE_CONSTANT_CAP {
        AMethod::StructureConstants
    } else {
        AMethod::Delta
    };
    two_sided_cells_with(g, method)
}

pub fn two_sided_cells_with(g: &KlGroup, method: AMethod) -> Result<CellPartition> {
    let n = g.size();
    let left_rel = preorder(g, |x| g.left_descents(x));
    let right_rel = preorder(g, |x| g.right_descents(x));
    let left = components(n, &left_rel);
    let right = components(n, &right_rel);
    let both: Vec<(usize, usize)> = left_rel.iter().chain(&right_rel).copied().collect();
    let two_sided = components(n, &both);
    let cells = group_by_label(&two_sided);
    let a = match method {
        AMethod::StructureConstants => {
            let per_element = a_by_structure_constants(g);
            let mut a = Vec::with_capacity(cells.len());
            for (id, c) in cells.iter().enumerate() {
                let v = per_element[c[0]];
                if c.iter().any(|&x| per_element[x] != v) {
                    return Err(Error::NonConstantA(format!("two-sided cell {id}")));
                }
                a.push(v);
            }
            a
        }
        AMethod::Delta => {
            let a: Vec<u32> = cells
                .iter()
                .map(|c| c.iter().map(|&z| delta(g, z)).min().unwrap())
                .collect();
            check_distinguished(g, &left, &two_sided, &a)?;
            a
        }
    };
    let out = CellPartition {
        left,
        right,
        two_sided,
        cells,
        a,
        method,
    };
    if out.a_of(0) != 0 || out.a_of(g.longest()) as usize != g.length(g.longest()) {
        return Err(Error::NonConstantA(
            "a-values at the identity or longest element are off".into(),
        ));
    }
    Ok(out)
}

/// Each left cell must contain exactly one element with `Delta = a`, and it
/// must be an involution.
fn check_distinguished(g: &KlGroup, left: &[usize], two_sided: &[usize], a: &[u32]) -> Result<()> {
    let mut found: Vec<Vec<usize>> = group_by_label(left).iter().map(|_| Vec::new()).collect();
    for z in 0..g.size() {
        if delta(g, z) == a[two_sided[z]] {
            found[left[z]].push(z);
        }
    }
    for (id, f) in found.iter().enumerate() {
        if f.len() != 1 || g.inverse(f[0]) != f[0] {
            return Err(Error::NonConstantA(format!(
                "left cell {id} has {} distinguished candidates",
                f.len()
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterPresentation, TypeDescriptor};
    use crate::kl::table::DEFAULT_KL_CAP;

    fn group(s: &str) -> KlGroup {
        let p = CoxeterPresentation::build(&s.parse::<TypeDescriptor>().unwrap()).unwrap();
        KlGroup::new(&p, DEFAULT_KL_CAP).unwrap()
    }

    fn summary(c: &CellPartition) -> Vec<(u32, usize)> {
        let mut v: Vec<(u32, usize)> = c.a.iter().copied().zip(c.cell_sizes()).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn small_cells() {
        let c = two_sided_cells(&group("A1")).unwrap();
        assert_eq!(summary(&c), vec![(0, 1), (1, 1)]);
        let c = two_sided_cells(&group("A2")).unwrap();
        assert_eq!(summary(&c), vec![(0, 1), (1, 4), (3, 1)]);
        let c = two_sided_cells(&group("B2")).unwrap();
        assert_eq!(summary(&c), vec![(0, 1), (1, 6), (4, 1)]);
        let c = two_sided_cells(&group("G2")).unwrap();
        assert_eq!(summary(&c), vec![(0, 1), (1, 10), (6, 1)]);
    }

    #[test]
    fn a3_cells_follow_partitions() {
        // Two-sided cells of S4 match partitions of 4; sizes are squared
        // dimensions 1, 9, 4, 9, 1 with a-values 0, 1, 2, 3, 6.
        let c = two_sided_cells(&group("A3")).unwrap();
        assert_eq!(summary(&c), vec![(0, 1), (1, 9), (2, 4), (3, 9), (6, 1)]);
    }

    #[test]
    fn both_routes_agree() {
        for ty in ["A3", "B3", "A1xB2", "G2", "A4", "D4"] {
            let g = group(ty);
            let sc = two_sided_cells_with(&g, AMethod::StructureConstants).unwrap();
            let dl = two_sided_cells_with(&g, AMethod::Delta).unwrap();
            assert_eq!(sc.a, dl.a, "{ty}");
        }
    }

    #[test]
    fn left_cells_have_constant_right_descents() {
        for ty in ["B3", "A4"] {
            let g = group(ty);
            let c = two_sided_cells(&g).unwrap();
            for x in 0..g.size() {
                for y in 0..g.size() {
                    if c.left[x] == c.left[y] {
                        assert_eq!(g.right_descents(x), g.right_descents(y));
                    }
                    if c.right[x] == c.right[y] {
                        assert_eq!(g.left_descents(x), g.left_descents(y));
                    }
                }
            }
        }
    }
}
