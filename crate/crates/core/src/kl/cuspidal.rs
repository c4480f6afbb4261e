//! Selection of the cuspidal two-sided cell of a parabolic subgroup and the
//! weights `a(c tau_k) - a(c)`.

use serde::Serialize;

use super::cache::load_or_build;
use super::cells::two_sided_cells;
use crate::coxeter::{CoxeterPresentation, Family, GroupElement};
use crate::error::{Error, Result};

/// Cell tag of one irreducible component of the parabolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CuspidalComponent {
    pub family: Family,
    pub rank: usize,
    pub h: Option<u32>,
    /// Only meaningful for type D: split when `h` is even.
    pub split: Option<bool>,
}

impl CuspidalComponent {
    pub fn new(family: Family, rank: usize, h: Option<u32>) -> Self {
        let split = match (family, h) {
            (Family::D, Some(h)) => Some(h % 2 == 0),
            _ => None,
        };
        Self {
            family,
            rank,
            h,
            split,
        }
    }

    /// The rank constraint tying `h` to the component type.
    pub fn check_constraint(&self) -> Result<()> {
        let r = self.rank as u64;
        let ok = match (self.family, self.h.map(u64::from)) {
            (_, _) if r == 0 => true,
            (Family::A, Some(h)) => r + 1 == (h * h + h) / 2,
            (Family::B | Family::C, Some(h)) if r >= 2 => r == h * h + h,
            (Family::B | Family::C, None) => r == 1,
            (Family::D, Some(h)) if r >= 4 => r == h * h,
            (Family::D, None) => r <= 3,
            (Family::E, None) => r == 8,
            (Family::F, None) | (Family::G, None) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ParamsOutOfRange {
                family: self.family.letter(),
                detail: format!("cell tag h={:?} does not fit rank {r}", self.h),
            })
        }
    }
}

/// A two-sided cell of a parabolic, given by its elements in the ambient
/// group. Values can also be supplied directly for cells the selection rules
/// do not cover.
#[derive(Debug, Clone)]
pub struct CellChoice {
    pub elements: Vec<GroupElement>,
    pub a: u32,
}

/// Coxeter components of `nodes`, each sorted, ordered by least node.
pub fn parabolic_components(p: &CoxeterPresentation, nodes: &[usize]) -> Vec<Vec<usize>> {
    let mut sorted = nodes.to_vec();
    sorted.sort_unstable();
    p.coxeter_matrix()
        .induced(&sorted)
        .components()
        .into_iter()
        .map(|c| c.into_iter().map(|i| sorted[i]).collect())
        .collect()
}

fn lift(p: &CoxeterPresentation, nodes: &[usize], sub: &CoxeterPresentation, w: &GroupElement) -> Result<GroupElement> {
    let word: Vec<usize> = sub.reduced_word(w)?.iter().map(|&i| nodes[i]).collect();
    p.canonical(&p.from_word(&word)?)
}

/// The cell of one irreducible component.
fn component_cell(
    p: &CoxeterPresentation,
    nodes: &[usize],
    tag: &CuspidalComponent,
    cap: usize,
) -> Result<CellChoice> {
    tag.check_constraint()?;
    let sub = p.sub_presentation(nodes)?;
    let class = sub.recognize()?;
    let b2: crate::coxeter::TypeDescriptor = "B2".parse()?;
    if class.same_coxeter_type(&b2) && tag.h == Some(1) {
        let g = load_or_build(&sub, cap)?;
        let cells = two_sided_cells(&g)?;
        let ids: Vec<usize> = (0..cells.cells.len()).filter(|&c| cells.a[c] == 1).collect();
        let [id] = ids[..] else {
            return Err(Error::CellNotImplemented(format!("{class}: no unique a=1 cell")));
        };
        let elements = cells.cells[id]
            .iter()
            .map(|&x| lift(p, nodes, &sub, g.element(x)))
            .collect::<Result<Vec<_>>>()?;
        return Ok(CellChoice { elements, a: 1 });
    }
    Err(Error::CellNotImplemented(format!(
        "{class} with h={:?}",
        tag.h
    )))
}

/// Selects the cuspidal cell of `W_J'` component by component. `tags` pairs
/// with the nontrivial components of `J'` in order of least node.
pub fn cuspidal_cell(
    p: &CoxeterPresentation,
    jprime: &[usize],
    tags: &[CuspidalComponent],
    cap: usize,
) -> Result<CellChoice> {
    let comps = parabolic_components(p, jprime);
    if comps.len() != tags.len() {
        return Err(Error::CellNotImplemented(format!(
            "{} components of J' but {} cell tags",
            comps.len(),
            tags.len()
        )));
    }
    let mut out = CellChoice {
        elements: vec![p.identity()],
        a: 0,
    };
    for (nodes, tag) in comps.iter().zip(tags) {
        let c = component_cell(p, nodes, tag, cap)?;
        let mut elements = Vec::with_capacity(out.elements.len() * c.elements.len());
        for x in &out.elements {
            for y in &c.elements {
                elements.push(p.canonical(&p.multiply(x, y)?)?);
            }
        }
        out = CellChoice {
            elements,
            a: out.a + c.a,
        };
    }
    Ok(out)
}

/// `a(z tau) - a(z)` for `z` in the cell, computed in the finite parabolic
/// spanned by the components of `J' + k` that meet `k`. Components of `J'`
/// away from `k` contribute equally to both terms and are dropped. The value
/// must not depend on `z`.
pub fn ell_from_afunction(
    p: &CoxeterPresentation,
    jprime: &[usize],
    cell: &CellChoice,
    orbit: &[usize],
    tau: &GroupElement,
    cap: usize,
) -> Result<u64> {
    let mut union: Vec<usize> = jprime.iter().chain(orbit).copied().collect();
    union.sort_unstable();
    union.dedup();
    if !p.is_finite_parabolic(&union) {
        return Err(Error::InfiniteParabolic(union));
    }
    let mut m: Vec<usize> = parabolic_components(p, &union)
        .into_iter()
        .filter(|c| c.iter().any(|i| orbit.contains(i)))
        .flatten()
        .collect();
    m.sort_unstable();
    let sub = p.sub_presentation(&m)?;
    let restrict = |w: &GroupElement, strict: bool| -> Result<GroupElement> {
        let mut word = Vec::new();
        for i in p.reduced_word(w)? {
            match m.iter().position(|&x| x == i) {
                Some(j) => word.push(j),
                None if strict => return Err(Error::AmbientMismatch(format!(
                    "generator {i} of tau lies outside the parabolic"
                ))),
                None => {}
            }
        }
        sub.from_word(&word)
    };
    let t = restrict(tau, true)?;
    let g = load_or_build(&sub, cap)?;
    let cells = two_sided_cells(&g)?;
    let a_of = |w: &GroupElement| -> Result<u32> {
        let i = g
            .index_of(w)
            .ok_or_else(|| Error::AmbientMismatch("element outside the parabolic".into()))?;
        Ok(cells.a_of(i))
    };
    let mut value = None;
    for z in &cell.elements {
        let zm = restrict(z, false)?;
        let lhs = a_of(&sub.multiply(&zm, &t)?)?;
        let rhs = a_of(&zm)?;
        let diff = i64::from(lhs) - i64::from(rhs);
        match value {
            None => value = Some(diff),
            Some(v) if v != diff => {
                return Err(Error::NonConstantA(format!("cell times tau for orbit {orbit:?}")));
            }
            _ => {}
        }
    }
    let v = value.ok_or_else(|| Error::CellNotImplemented("empty cell".into()))?;
    u64::try_from(v).map_err(|_| Error::NonConstantA(format!("negative weight for orbit {orbit:?}")))
}
