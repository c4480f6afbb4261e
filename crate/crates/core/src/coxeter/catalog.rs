//! Catalog of crystallographic finite and affine Coxeter types.
//!
//! Node numbering follows Bourbaki for the finite part of each component
//! (labels `1..=r`). An affine component appends the extra node `0` last.
//! Degenerate ranks collapse to the trivial group: `A0`, `B0`, `C0`, `D0`,
//! `D1` and their affine versions have no nodes, `B1 = C1 = A1`, and the
//! affine `B~1`, `C~1` are the infinite dihedral group.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Result<Self> {
        Ok(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            other => return Err(Error::UnknownFamily(other.to_string())),
        })
    }

    /// Langlands dual family (swaps B and C).
    pub fn dual(self) -> Self {
        match self {
            Family::B => Family::C,
            Family::C => Family::B,
            f => f,
        }
    }
}

/// One irreducible (possibly degenerate) catalog entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Component {
    pub family: Family,
    pub rank: usize,
    pub affine: bool,
}

impl Component {
    pub fn finite(family: Family, rank: usize) -> Self {
        Self {
            family,
            rank,
            affine: false,
        }
    }

    pub fn affine(family: Family, rank: usize) -> Self {
        Self {
            family,
            rank,
            affine: true,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self.family {
            Family::E => (6..=8).contains(&self.rank),
            Family::F => self.rank == 4,
            Family::G => self.rank == 2,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedType(self.to_string()))
        }
    }

    /// The Coxeter-graph class of this component: a list of non-degenerate
    /// components whose Coxeter graphs are pairwise distinct catalog entries.
    pub fn coxeter_class(&self) -> Result<Vec<Component>> {
        self.validate()?;
        use Family::*;
        let (f, r, aff) = (self.family, self.rank, self.affine);
        let one = |family, rank| vec![Component { family, rank, affine: aff }];
        Ok(match (f, r) {
            (_, 0) => vec![],
            (A, r) => one(A, r),
            (B | C, 1) => one(A, 1),
            (B | C, 2) if aff => one(C, 2),
            (B | C, r) if !aff => one(B, r),
            (B | C, r) => one(f, r),
            (D, 1) => vec![],
            (D, 2) => vec![Component { family: A, rank: 1, affine: aff }; 2],
            (D, 3) => one(A, 3),
            (f, r) => one(f, r),
        })
    }

    /// Number of Coxeter generators of the realized presentation.
    pub fn node_count(&self) -> Result<usize> {
        Ok(self
            .coxeter_class()?
            .iter()
            .map(|c| c.rank + usize::from(c.affine))
            .sum())
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}",
            self.family.letter(),
            if self.affine { "~" } else { "" },
            self.rank
        )
    }
}

/// A product of catalog components.
///
/// Structural equality compares labels (so `B3 != C3`); use
/// [`TypeDescriptor::same_coxeter_type`] to compare Coxeter groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct TypeDescriptor {
    pub components: Vec<Component>,
}

impl TypeDescriptor {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn single(c: Component) -> Self {
        Self {
            components: vec![c],
        }
    }

    pub fn product(components: Vec<Component>) -> Self {
        Self { components }
    }

    pub fn times(mut self, other: &TypeDescriptor) -> Self {
        self.components.extend_from_slice(&other.components);
        self
    }

    /// Canonical Coxeter-graph class: degenerate parts dropped, rank-level
    /// coincidences merged, components sorted.
    pub fn coxeter_class(&self) -> Result<TypeDescriptor> {
        let mut comps = Vec::new();
        for c in &self.components {
            comps.extend(c.coxeter_class()?);
        }
        comps.sort();
        Ok(TypeDescriptor { components: comps })
    }

    pub fn same_coxeter_type(&self, other: &TypeDescriptor) -> bool {
        match (self.coxeter_class(), other.coxeter_class()) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.coxeter_class().map(|c| c.components.is_empty()).unwrap_or(false)
    }

    pub fn is_finite(&self) -> bool {
        self.coxeter_class()
            .map(|c| c.components.iter().all(|c| !c.affine))
            .unwrap_or(false)
    }

    /// Order of a finite group of this type; `None` when infinite.
    pub fn group_order(&self) -> Result<Option<u128>> {
        let class = self.coxeter_class()?;
        let mut order: u128 = 1;
        for c in &class.components {
            if c.affine {
                return Ok(None);
            }
            order *= finite_order(c.family, c.rank);
        }
        Ok(Some(order))
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn finite_order(f: Family, r: usize) -> u128 {
    match (f, r) {
        (Family::A, r) => factorial(r + 1),
        (Family::B | Family::C, r) => (1u128 << r) * factorial(r),
        (Family::D, r) => (1u128 << (r - 1)) * factorial(r),
        (Family::E, 6) => 51_840,
        (Family::E, 7) => 2_903_040,
        (Family::E, 8) => 696_729_600,
        (Family::F, 4) => 1_152,
        (Family::G, 2) => 12,
        _ => unreachable!("validated component"),
    }
}

impl fmt::Display for TypeDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "A0");
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for TypeDescriptor {
    type Err = Error;

    /// Parses strings like `A2`, `G~2`, `B~4xD~1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Self::trivial());
        }
        let mut components = Vec::new();
        for part in s.split(['x', '*']) {
            let part = part.trim();
            let mut chars = part.chars();
            let letter = chars.next().ok_or_else(|| Error::UnknownFamily(part.into()))?;
            let family = Family::from_letter(letter)?;
            let rest: String = chars.collect();
            let (affine, digits) = match rest.strip_prefix('~') {
                Some(d) => (true, d),
                None => (false, rest.as_str()),
            };
            let rank: i64 = digits
                .parse()
                .map_err(|_| Error::UnsupportedType(part.to_string()))?;
            if rank < 0 {
                return Err(Error::InvalidRank {
                    family: letter.to_string(),
                    rank,
                });
            }
            let c = Component {
                family,
                rank: rank as usize,
                affine,
            };
            c.validate()?;
            components.push(c);
        }
        Ok(Self { components })
    }
}

/// Node labels and generalized Cartan matrix of one component.
pub(crate) struct ComponentData {
    pub labels: Vec<String>,
    pub cartan: Vec<Vec<i64>>,
}

/// Finite Cartan matrix with `a[i][j] = <alpha_i^vee, alpha_j>`.
fn finite_cartan(f: Family, r: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; r]; r];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize, aij: i64, aji: i64| {
        a[i - 1][j - 1] = aij;
        a[j - 1][i - 1] = aji;
    };
    match f {
        Family::A => {
            for i in 1..r {
                link(&mut a, i, i + 1, -1, -1);
            }
        }
        Family::B | Family::C => {
            for i in 1..r.saturating_sub(1) {
                link(&mut a, i, i + 1, -1, -1);
            }
            if r >= 2 {
                // B: alpha_r short; C: alpha_r long.
                if f == Family::B {
                    link(&mut a, r - 1, r, -1, -2);
                } else {
                    link(&mut a, r - 1, r, -2, -1);
                }
            }
        }
        Family::D => {
            for i in 1..r.saturating_sub(2) {
                link(&mut a, i, i + 1, -1, -1);
            }
            if r >= 3 {
                link(&mut a, r - 2, r - 1, -1, -1);
                link(&mut a, r - 2, r, -1, -1);
            }
        }
        Family::E => {
            link(&mut a, 1, 3, -1, -1);
            link(&mut a, 2, 4, -1, -1);
            for i in 3..r {
                link(&mut a, i, i + 1, -1, -1);
            }
        }
        Family::F => {
            link(&mut a, 1, 2, -1, -1);
            link(&mut a, 2, 3, -1, -2);
            link(&mut a, 3, 4, -1, -1);
        }
        Family::G => {
            link(&mut a, 1, 2, -3, -1);
        }
    }
    a
}

/// Symmetrizer `d` with `d_i a_ij = d_j a_ji`, integral, minimal entry 1
/// on each connected component.
fn symmetrizer(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    // Rational d as (num, den), propagated along edges.
    let mut d: Vec<Option<(i64, i64)>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some((1, 1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let (p, q) = d[i].unwrap();
            for j in 0..n {
                if i != j && a[i][j] != 0 && d[j].is_none() {
                    // d_j = d_i a_ij / a_ji
                    let num = p * a[i][j];
                    let den = q * a[j][i];
                    d[j] = Some((num, den));
                    stack.push(j);
                }
            }
        }
    }
    let den_lcm = d
        .iter()
        .map(|x| x.unwrap().1.abs())
        .fold(1, |acc, v| acc / gcd(acc, v) * v);
    let vals: Vec<i64> = d
        .iter()
        .map(|x| {
            let (p, q) = x.unwrap();
            p * (den_lcm / q)
        })
        .collect();
    let g = vals.iter().fold(0, |acc, &v| gcd(acc, v.abs()));
    vals.iter().map(|v| v.abs() / g.max(1)).collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Highest root of an irreducible finite root system, in simple-root
/// coordinates, found by closing the simple roots under reflections.
pub(crate) fn highest_root(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    let mut seen: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
    let mut queue: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    for r in &queue {
        seen.insert(r.clone());
    }
    let mut best = queue[0].clone();
    while let Some(beta) = queue.pop() {
        if beta.iter().sum::<i64>() > best.iter().sum::<i64>() {
            best = beta.clone();
        }
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| a[i][j] * beta[j]).sum();
            let mut img = beta.clone();
            img[i] -= pairing;
            if img.iter().all(|&c| c >= 0) && !seen.contains(&img) {
                seen.insert(img.clone());
                queue.push(img);
            }
        }
    }
    best
}

/// Extends an irreducible finite Cartan matrix by the untwisted affine node.
fn affine_extension(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let d = symmetrizer(a);
    let theta = highest_root(a);
    let d_long = *d.iter().max().unwrap();
    // (theta, alpha_j) with (alpha_i, alpha_j) = d_i a_ij
    let pair: Vec<i64> = (0..n)
        .map(|j| (0..n).map(|i| theta[i] * d[i] * a[i][j]).sum())
        .collect();
    let mut out = vec![vec![0i64; n + 1]; n + 1];
    for i in 0..n {
        out[i][..n].copy_from_slice(&a[i]);
    }
    out[n][n] = 2;
    for j in 0..n {
        out[n][j] = -pair[j] / d_long;
        out[j][n] = -pair[j] / d[j];
    }
    out
}

pub(crate) fn component_data(c: &Component) -> Result<ComponentData> {
    c.validate()?;
    let r = c.rank;
    // Degenerate ranks.
    let effective = match (c.family, r) {
        (_, 0) | (Family::D, 1) => {
            return Ok(ComponentData {
                labels: vec![],
                cartan: vec![],
            })
        }
        (Family::B | Family::C, 1) => Family::A,
        (f, _) => f,
    };
    let fin = finite_cartan(effective, r);
    let mut labels: Vec<String> = (1..=r).map(|i| i.to_string()).collect();
    if !c.affine {
        return Ok(ComponentData {
            labels,
            cartan: fin,
        });
    }
    if effective == Family::D && r == 2 {
        // D~2 = A~1 x A~1, nodes [1, 2, 0, 0'].
        let mut a = vec![vec![0i64; 4]; 4];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        a[0][2] = -2;
        a[2][0] = -2;
        a[1][3] = -2;
        a[3][1] = -2;
        labels.push("0".into());
        labels.push("0'".into());
        return Ok(ComponentData { labels, cartan: a });
    }
    labels.push("0".into());
    Ok(ComponentData {
        labels,
        cartan: affine_extension(&fin),
    })
}
