//! Coxeter matrices and recognition of crystallographic finite/affine types.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::catalog::{Component, Family, TypeDescriptor};
use crate::error::{Error, Result};

/// Order of the product of two distinct generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bond {
    Order(u32),
    Infinite,
}

impl Bond {
    pub fn is_odd(self) -> bool {
        matches!(self, Bond::Order(m) if m % 2 == 1)
    }

    /// Bond implied by the product `a_ij * a_ji` of Cartan entries.
    pub fn from_cartan_product(p: i64) -> Result<Bond> {
        Ok(match p {
            0 => Bond::Order(2),
            1 => Bond::Order(3),
            2 => Bond::Order(4),
            3 => Bond::Order(6),
            p if p >= 4 => Bond::Infinite,
            p => return Err(Error::UnmatchedGraph(format!("negative Cartan product {p}"))),
        })
    }
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bond::Order(m) => write!(f, "{m}"),
            Bond::Infinite => write!(f, "inf"),
        }
    }
}

/// Symmetric matrix of bonds; the diagonal is conventionally `Order(1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoxeterMatrix {
    bonds: Vec<Vec<Bond>>,
}

impl CoxeterMatrix {
    pub fn new(n: usize) -> Self {
        let mut bonds = vec![vec![Bond::Order(2); n]; n];
        for (i, row) in bonds.iter_mut().enumerate() {
            row[i] = Bond::Order(1);
        }
        Self { bonds }
    }

    pub fn from_rows(rows: Vec<Vec<Bond>>) -> Self {
        Self { bonds: rows }
    }

    pub fn len(&self) -> usize {
        self.bonds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bonds.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Bond {
        self.bonds[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, b: Bond) {
        self.bonds[i][j] = b;
        self.bonds[j][i] = b;
    }

    pub fn rows(&self) -> &[Vec<Bond>] {
        &self.bonds
    }

    fn joined(&self, i: usize, j: usize) -> bool {
        i != j && self.bonds[i][j] != Bond::Order(2)
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&j| self.joined(i, j))
    }

    /// Induced submatrix on `idx`, in the order given.
    pub fn induced(&self, idx: &[usize]) -> CoxeterMatrix {
        CoxeterMatrix {
            bonds: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.bonds[i][j]).collect())
                .collect(),
        }
    }

    /// Connected components of the Coxeter graph, each sorted, ordered by
    /// least member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(i) = stack.pop() {
                comp.push(i);
                for j in self.neighbors(i) {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Matches every connected component against the finite and affine
    /// catalogs; returns the canonical Coxeter class.
    pub fn recognize(&self) -> Result<TypeDescriptor> {
        let mut comps = Vec::new();
        for comp in self.components() {
            comps.push(recognize_connected(&self.induced(&comp))?);
        }
        comps.sort();
        Ok(TypeDescriptor { components: comps })
    }
}

fn unmatched(m: &CoxeterMatrix) -> Error {
    let mut desc = Vec::new();
    for i in 0..m.len() {
        for j in (i + 1)..m.len() {
            if m.joined(i, j) {
                desc.push(format!("{i}-{j}:{}", m.get(i, j)));
            }
        }
    }
    Error::UnmatchedGraph(format!("{} nodes, edges [{}]", m.len(), desc.join(" ")))
}

/// Walks a path graph from one end, returning the node sequence.
fn path_order(m: &CoxeterMatrix) -> Vec<usize> {
    let n = m.len();
    let start = (0..n).find(|&i| m.neighbors(i).count() <= 1).unwrap_or(0);
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < n {
        let next = m.neighbors(cur).find(|&j| j != prev).unwrap();
        prev = cur;
        cur = next;
        order.push(cur);
    }
    order
}

fn recognize_connected(m: &CoxeterMatrix) -> Result<Component> {
    use Family::*;
    let n = m.len();
    let fin = |f, r| Ok(Component::finite(f, r));
    let aff = |f, r| Ok(Component::affine(f, r));
    if n == 1 {
        return fin(A, 1);
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if m.joined(i, j) {
                edges.push((i, j, m.get(i, j)));
            }
        }
    }
    if edges
        .iter()
        .any(|e| matches!(e.2, Bond::Order(m) if ![3, 4, 6].contains(&m)))
    {
        return Err(unmatched(m));
    }
    if edges.iter().any(|e| e.2 == Bond::Infinite) {
        return if n == 2 { aff(A, 1) } else { Err(unmatched(m)) };
    }
    let degree: Vec<usize> = (0..n).map(|i| m.neighbors(i).count()).collect();
    let all3 = edges.iter().all(|e| e.2 == Bond::Order(3));
    if edges.len() == n {
        return if all3 && degree.iter().all(|&d| d == 2) {
            aff(A, n - 1)
        } else {
            Err(unmatched(m))
        };
    }
    if edges.len() != n - 1 {
        return Err(unmatched(m));
    }
    let max_deg = *degree.iter().max().unwrap();
    if max_deg <= 2 {
        let order = path_order(m);
        let seq: Vec<u32> = order
            .windows(2)
            .map(|w| match m.get(w[0], w[1]) {
                Bond::Order(k) => k,
                Bond::Infinite => 0,
            })
            .collect();
        let rev: Vec<u32> = seq.iter().rev().copied().collect();
        let count = |k: u32| seq.iter().filter(|&&x| x == k).count();
        let e = seq.len();
        return match (count(4), count(6)) {
            (0, 0) => fin(A, n),
            (0, 1) if n == 2 => fin(G, 2),
            (0, 1) if n == 3 && (seq == [3, 6] || seq == [6, 3]) => aff(G, 2),
            (1, 0) if seq[0] == 4 || seq[e - 1] == 4 => fin(B, n),
            (1, 0) if seq == [3, 4, 3] => fin(F, 4),
            (1, 0) if seq == [3, 3, 4, 3] || rev == [3, 3, 4, 3] => aff(F, 4),
            (2, 0) if seq[0] == 4 && seq[e - 1] == 4 => aff(C, n - 1),
            _ => Err(unmatched(m)),
        };
    }
    let branch: Vec<usize> = (0..n).filter(|&i| degree[i] >= 3).collect();
    if branch.len() == 1 && degree[branch[0]] == 4 {
        return if n == 5 && all3 { aff(D, 4) } else { Err(unmatched(m)) };
    }
    if branch.len() == 1 && degree[branch[0]] == 3 {
        let b = branch[0];
        // Arms: (length, bond on the terminal edge, any non-3 bond elsewhere).
        let mut arms = Vec::new();
        for start in m.neighbors(b) {
            let mut len = 1;
            let mut prev = b;
            let mut cur = start;
            let mut bonds = vec![m.get(b, start)];
            while let Some(next) = m.neighbors(cur).find(|&j| j != prev) {
                bonds.push(m.get(cur, next));
                prev = cur;
                cur = next;
                len += 1;
            }
            arms.push((len, bonds));
        }
        let non3: Vec<(usize, usize)> = arms
            .iter()
            .enumerate()
            .flat_map(|(ai, (_, bonds))| {
                bonds
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b != Bond::Order(3))
                    .map(move |(pos, _)| (ai, pos))
            })
            .collect();
        let mut lens: Vec<usize> = arms.iter().map(|a| a.0).collect();
        lens.sort_unstable();
        if non3.is_empty() {
            return match (lens[0], lens[1], lens[2]) {
                (1, 1, x) => fin(D, x + 3),
                (1, 2, 2) => fin(E, 6),
                (1, 2, 3) => fin(E, 7),
                (1, 2, 4) => fin(E, 8),
                (2, 2, 2) => aff(E, 6),
                (1, 3, 3) => aff(E, 7),
                (1, 2, 5) => aff(E, 8),
                _ => Err(unmatched(m)),
            };
        }
        if non3.len() == 1 {
            let (ai, pos) = non3[0];
            let (len, bonds) = &arms[ai];
            let others_short = arms
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != ai)
                .all(|(_, a)| a.0 == 1);
            if bonds[pos] == Bond::Order(4) && pos + 1 == *len && others_short {
                return aff(B, len + 2);
            }
        }
        return Err(unmatched(m));
    }
    if branch.len() == 2 && branch.iter().all(|&b| degree[b] == 3) && all3 {
        // D~r: each branch node carries two leaves.
        let leaves_ok = branch.iter().all(|&b| {
            m.neighbors(b).filter(|&j| degree[j] == 1).count() == 2
        });
        if leaves_ok {
            return aff(D, n - 1);
        }
    }
    Err(unmatched(m))
}

/// Searches for a bond-preserving bijection `phi` from the nodes of `a` to
/// the nodes of `b` with `label_a[i] == label_b[phi[i]]`.
pub fn labelled_isomorphism<L: PartialEq>(
    a: &CoxeterMatrix,
    label_a: &[L],
    b: &CoxeterMatrix,
    label_b: &[L],
) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() || label_a.len() != n || label_b.len() != n {
        return None;
    }
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go<L: PartialEq>(
        i: usize,
        a: &CoxeterMatrix,
        la: &[L],
        b: &CoxeterMatrix,
        lb: &[L],
        phi: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.len();
        if i == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || la[i] != lb[cand] {
                continue;
            }
            if a.neighbors(i).count() != b.neighbors(cand).count() {
                continue;
            }
            if (0..i).any(|j| a.get(i, j) != b.get(cand, phi[j])) {
                continue;
            }
            phi[i] = cand;
            used[cand] = true;
            if go(i + 1, a, la, b, lb, phi, used) {
                return true;
            }
            used[cand] = false;
        }
        false
    }
    if go(0, a, label_a, b, label_b, &mut phi, &mut used) {
        Some(phi)
    } else {
        None
    }
}
