//! The classification atlas: one parametric row per induction-datum family,
//! instantiated with explicit node subsets and diagram automorphisms.

mod rows;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::coxeter::{Component, Family, TypeDescriptor};
use crate::error::{Error, Result};
use crate::kl::CuspidalComponent;

pub use rows::row;
pub(crate) use rows::perm_order;

pub const SCHEMA_VERSION: &str = "springer-datum/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    Torus,
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
    K,
    L,
    M,
    N,
}

impl Tag {
    pub const LETTERED: [Tag; 14] = [
        Tag::A,
        Tag::B,
        Tag::C,
        Tag::D,
        Tag::E,
        Tag::F,
        Tag::G,
        Tag::H,
        Tag::I,
        Tag::J,
        Tag::K,
        Tag::L,
        Tag::M,
        Tag::N,
    ];

    pub fn letter(self) -> char {
        match self {
            Tag::Torus => 'T',
            Tag::A => 'a',
            Tag::B => 'b',
            Tag::C => 'c',
            Tag::D => 'd',
            Tag::E => 'e',
            Tag::F => 'f',
            Tag::G => 'g',
            Tag::H => 'h',
            Tag::I => 'i',
            Tag::J => 'j',
            Tag::K => 'k',
            Tag::L => 'l',
            Tag::M => 'm',
            Tag::N => 'n',
        }
    }

    pub fn parse(s: &str) -> Result<Tag> {
        let s = s.trim().trim_matches(|c| c == '(' || c == ')').to_ascii_lowercase();
        if s == "torus" {
            return Ok(Tag::Torus);
        }
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Tag::LETTERED
                .iter()
                .copied()
                .find(|t| t.letter() == c)
                .ok_or_else(|| Error::UnknownFamily(s.clone())),
            _ => Err(Error::UnknownFamily(s.clone())),
        }
    }

    /// Parameters the family uses, among `n`, `t`, `k`.
    pub fn uses(self) -> (bool, bool, bool) {
        match self {
            Tag::A => (true, false, true),
            Tag::B | Tag::C | Tag::D | Tag::E | Tag::F | Tag::G | Tag::H | Tag::I => {
                (false, true, true)
            }
            _ => (false, false, false),
        }
    }
}

/// A family tag with its parameter values. Unused parameters are zero; the
/// torus family carries the type of `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DatumFamily {
    pub tag: Tag,
    pub n: u32,
    pub t: u32,
    pub k: u32,
    #[serde(serialize_with = "ser_opt_display")]
    pub torus_type: Option<Component>,
}

impl DatumFamily {
    pub fn new(tag: Tag, n: u32, t: u32, k: u32) -> Self {
        let (un, ut, uk) = tag.uses();
        Self {
            tag,
            n: if un { n } else { 0 },
            t: if ut { t } else { 0 },
            k: if uk { k } else { 0 },
            torus_type: None,
        }
    }

    pub fn torus(g: Component) -> Self {
        Self {
            tag: Tag::Torus,
            n: 0,
            t: 0,
            k: 0,
            torus_type: Some(g),
        }
    }

    /// Checks the printed parameter ranges.
    pub fn check_range(&self) -> Result<()> {
        let bad = |detail: &str| {
            Err(Error::ParamsOutOfRange {
                family: self.tag.letter(),
                detail: detail.to_string(),
            })
        };
        match self.tag {
            Tag::A if self.n < 2 || self.k < 1 => bad("need n >= 2 and k >= 1"),
            Tag::B | Tag::D | Tag::E | Tag::G | Tag::H | Tag::I if self.t < 1 => bad("need t >= 1"),
            Tag::Torus => match self.torus_type {
                Some(c) if !c.affine && c.rank >= 1 => Ok(()),
                _ => bad("torus needs a finite type of rank >= 1"),
            },
            _ => Ok(()),
        }
    }

    /// Type of `G`.
    pub fn g_type(&self) -> Result<Component> {
        self.check_range()?;
        let (n, t, k) = (self.n as usize, self.t as usize, self.k as usize);
        use Family::*;
        let c = |f, r| Component::finite(f, r);
        Ok(match self.tag {
            Tag::Torus => self.torus_type.unwrap(),
            Tag::A => c(A, k * n - 1),
            Tag::B => c(C, 2 * t * t + t + k),
            Tag::C => c(C, 2 * t * t + 3 * t + k + 1),
            Tag::D => c(B, 2 * t * t + 2 * t + k),
            Tag::E => c(B, 4 * t * t + 3 * t + 2 * k),
            Tag::F => c(B, 4 * t * t + 5 * t + 2 * k + 1),
            Tag::G => c(D, 2 * t * t + k),
            Tag::H => c(D, 4 * t * t + t + 2 * k),
            Tag::I => c(D, 4 * t * t - t + 2 * k),
            Tag::J => c(E, 6),
            Tag::K => c(E, 7),
            Tag::L => c(E, 8),
            Tag::M => c(F, 4),
            Tag::N => c(G, 2),
        })
    }
}

impl fmt::Display for DatumFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(g) = self.torus_type {
            return write!(f, "torus {g}");
        }
        write!(f, "({})", self.tag.letter())?;
        let (un, ut, uk) = self.tag.uses();
        if un {
            write!(f, " n={}", self.n)?;
        }
        if ut {
            write!(f, " t={}", self.t)?;
        }
        if uk {
            write!(f, " k={}", self.k)?;
        }
        Ok(())
    }
}

fn ser_display<S: Serializer, T: fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn ser_opt_display<S: Serializer, T: fmt::Display>(
    v: &Option<T>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.collect_str(x),
        None => s.serialize_none(),
    }
}

/// The finite side: `(W, I)` and the relative Weyl group with its weights.
#[derive(Debug, Clone, Serialize)]
pub struct FiniteSide {
    #[serde(serialize_with = "ser_display")]
    pub w_type: TypeDescriptor,
    /// Weights on the catalog presentation of `w_type`, in node order.
    pub ell0: Vec<u64>,
    /// The list as printed.
    pub ell0_printed: Vec<u64>,
    /// `I` as node indices of the catalog presentation of `G`.
    pub i_nodes: Vec<usize>,
}

/// The affine side of `G`: `(W^, I)` with the same `I`.
#[derive(Debug, Clone, Serialize)]
pub struct AffineGSide {
    #[serde(serialize_with = "ser_display")]
    pub w_type: TypeDescriptor,
    pub i_nodes: Vec<usize>,
}

/// The dual side: `(W^a, J', gamma)`, the cell tags and the weighted
/// relative affine group.
#[derive(Debug, Clone, Serialize)]
pub struct DualSide {
    /// Factors of `W^a` in printed order; degenerate factors are kept.
    #[serde(serialize_with = "ser_display")]
    pub ambient: TypeDescriptor,
    #[serde(serialize_with = "ser_display")]
    pub parabolic: TypeDescriptor,
    pub jprime: Vec<usize>,
    pub gamma: Vec<usize>,
    pub gamma_order: u32,
    pub gamma_note: String,
    pub cell_tags: Vec<CuspidalComponent>,
    #[serde(serialize_with = "ser_display")]
    pub w_type: TypeDescriptor,
    /// Weights on the catalog presentation of `w_type`: finite nodes in
    /// order, then the affine node.
    pub ell: Vec<u64>,
    pub ell_printed: Vec<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DatumRow {
    pub family: DatumFamily,
    #[serde(serialize_with = "ser_display")]
    pub g_type: TypeDescriptor,
    #[serde(serialize_with = "ser_display")]
    pub l_type: TypeDescriptor,
    pub finite: FiniteSide,
    pub affine_g: AffineGSide,
    pub dual: DualSide,
    /// Places where the encoding goes beyond the printed data.
    pub flags: Vec<String>,
}

/// All families whose `G` has the given type, torus first.
pub fn enumerate_families(g: Component) -> Result<Vec<DatumFamily>> {
    if g.affine || g.rank == 0 {
        return Err(Error::InvalidRank {
            family: g.family.letter().to_string(),
            rank: g.rank as i64,
        });
    }
    Component::finite(g.family, g.rank).coxeter_class()?;
    let r = g.rank;
    let mut out = vec![DatumFamily::torus(g)];
    let tk = |tag: Tag, f: &dyn Fn(usize) -> Option<(usize, usize)>, tmin: usize| {
        // For each t, f(t) gives (fixed part, k multiplier).
        let mut v = Vec::new();
        for t in tmin..=r {
            if let Some((base, mult)) = f(t) {
                if base <= r && (r - base) % mult == 0 {
                    v.push(DatumFamily::new(tag, 0, t as u32, ((r - base) / mult) as u32));
                }
            }
        }
        v
    };
    match g.family {
        Family::A => {
            for n in 2..=r + 1 {
                if (r + 1) % n == 0 {
                    out.push(DatumFamily::new(Tag::A, n as u32, 0, ((r + 1) / n) as u32));
                }
            }
        }
        Family::C => {
            out.extend(tk(Tag::B, &|t| Some((2 * t * t + t, 1)), 1));
            out.extend(tk(Tag::C, &|t| Some((2 * t * t + 3 * t + 1, 1)), 0));
        }
        Family::B => {
            out.extend(tk(Tag::D, &|t| Some((2 * t * t + 2 * t, 1)), 1));
            out.extend(tk(Tag::E, &|t| Some((4 * t * t + 3 * t, 2)), 1));
            out.extend(tk(Tag::F, &|t| Some((4 * t * t + 5 * t + 1, 2)), 0));
        }
        Family::D => {
            out.extend(tk(Tag::G, &|t| Some((2 * t * t, 1)), 1));
            out.extend(tk(Tag::H, &|t| Some((4 * t * t + t, 2)), 1));
            out.extend(tk(Tag::I, &|t| Some((4 * t * t - t, 2)), 1));
        }
        Family::E => out.push(DatumFamily::new(
            match r {
                6 => Tag::J,
                7 => Tag::K,
                _ => Tag::L,
            },
            0,
            0,
            0,
        )),
        Family::F => out.push(DatumFamily::new(Tag::M, 0, 0, 0)),
        Family::G => out.push(DatumFamily::new(Tag::N, 0, 0, 0)),
    }
    Ok(out)
}

/// Every family instance with `rank(G) <= max_rank`, plus the exceptional
/// rows, in a deterministic order: lettered families by tag and
/// parameters, then one torus row per nondegenerate classical or
/// exceptional `G`.
pub fn sweep(max_rank: usize) -> Vec<DatumFamily> {
    let mut lettered = Vec::new();
    let mut tori = Vec::new();
    let mut push_g = |g: Component, torus: bool| {
        if let Ok(fams) = enumerate_families(g) {
            for f in fams {
                if f.tag == Tag::Torus {
                    if torus {
                        tori.push(f);
                    }
                } else {
                    lettered.push(f);
                }
            }
        }
    };
    for r in 1..=max_rank {
        push_g(Component::finite(Family::A, r), true);
        push_g(Component::finite(Family::B, r), r >= 2);
        push_g(Component::finite(Family::C, r), r >= 3);
        if r >= 2 {
            push_g(Component::finite(Family::D, r), r >= 4);
        }
    }
    for (f, r) in [(Family::E, 6), (Family::E, 7), (Family::E, 8), (Family::F, 4), (Family::G, 2)] {
        push_g(Component::finite(f, r), true);
    }
    lettered.sort();
    lettered.dedup();
    lettered.extend(tori);
    lettered
}

#[derive(Serialize)]
struct Export<'a> {
    schema: &'static str,
    rows: &'a [DatumRow],
}

/// JSON export of instantiated rows under [`SCHEMA_VERSION`].
pub fn export_json(rows: &[DatumRow]) -> String {
    serde_json::to_string_pretty(&Export {
        schema: SCHEMA_VERSION,
        rows,
    })
    .expect("rows serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list(f: Family, r: usize) -> Vec<String> {
        enumerate_families(Component::finite(f, r))
            .unwrap()
            .iter()
            .map(|d| d.to_string())
            .collect()
    }

    #[test]
    fn family_enumeration() {
        assert_eq!(list(Family::C, 4), ["torus C4", "(b) t=1 k=1", "(c) t=0 k=3"]);
        assert_eq!(list(Family::G, 2), ["torus G2", "(n)"]);
        assert_eq!(list(Family::A, 1), ["torus A1", "(a) n=2 k=1"]);
        assert_eq!(list(Family::A, 5), ["torus A5", "(a) n=2 k=3", "(a) n=3 k=2", "(a) n=6 k=1"]);
        assert!(enumerate_families(Component::finite(Family::A, 0)).is_err());
        assert!(enumerate_families(Component::finite(Family::E, 5)).is_err());
    }

    #[test]
    fn sweep_is_deterministic_and_in_range() {
        let s = sweep(8);
        assert_eq!(s, sweep(8));
        for f in &s {
            assert!(f.check_range().is_ok());
            let g = f.g_type().unwrap();
            assert!(g.rank <= 8);
        }
        assert!(s.contains(&DatumFamily::new(Tag::J, 0, 0, 0)));
        assert!(s.contains(&DatumFamily::new(Tag::G, 0, 2, 0)));
    }

    #[test]
    fn tags_parse() {
        assert_eq!(Tag::parse("(j)").unwrap(), Tag::J);
        assert_eq!(Tag::parse("torus").unwrap(), Tag::Torus);
        assert!(Tag::parse("z").is_err());
    }
}
