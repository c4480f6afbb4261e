//! Instantiation of one family row: node subsets of `G`, the dual ambient
//! group with `J'` and `gamma`, cell tags and weight lists.

use super::{AffineGSide, DatumFamily, DatumRow, DualSide, FiniteSide, Tag};
use crate::coxeter::{Component, CoxeterPresentation, Family, TypeDescriptor};
use crate::error::Result;
use crate::kl::CuspidalComponent;

use Family::{A, B, C, D, E, F, G};

fn fin(f: Family, r: usize) -> Component {
    Component::finite(f, r)
}

fn aff(f: Family, r: usize) -> Component {
    Component::affine(f, r)
}

fn ty(cs: &[Component]) -> TypeDescriptor {
    TypeDescriptor::product(cs.to_vec())
}

/// `len` copies of `fill` with the last entry replaced by `last`.
fn ending(len: usize, fill: u64, last: u64) -> Vec<u64> {
    let mut v = vec![fill; len];
    if let Some(x) = v.last_mut() {
        *x = last;
    }
    v
}

/// Order of the component group for `t`: 1 for even `t`, 2 for odd.
fn n_of(t: usize) -> u32 {
    if t % 2 == 0 {
        1
    } else {
        2
    }
}

fn node(p: &CoxeterPresentation, ci: usize, label: usize) -> usize {
    p.node(ci, &label.to_string())
        .unwrap_or_else(|| panic!("component {ci} has no node {label}"))
}

fn labels(p: &CoxeterPresentation, ci: usize, ls: impl IntoIterator<Item = usize>) -> Vec<usize> {
    ls.into_iter().map(|l| node(p, ci, l)).collect()
}

/// The last `s` nodes `m-s+1..=m` of a B, C or D chain of rank `m`. A D
/// segment of size at most one is empty.
fn end_segment(p: &CoxeterPresentation, ci: usize, f: Family, m: usize, s: usize) -> Vec<usize> {
    if s == 0 || (f == D && s <= 1) {
        return vec![];
    }
    labels(p, ci, m + 1 - s..=m)
}

fn finite_nodes(p: &CoxeterPresentation, ci: usize) -> Vec<usize> {
    p.component_nodes(ci)
        .into_iter()
        .filter(|&i| !p.is_affine_node(i))
        .collect()
}

/// Builds a node permutation from a list of moves `(from, to)`.
struct Perm(Vec<usize>);

impl Perm {
    fn id(n: usize) -> Self {
        Perm((0..n).collect())
    }

    fn set(&mut self, from: usize, to: usize) {
        self.0[from] = to;
    }

    /// Sends every node of component `a` to the equally labelled node of `b`,
    /// after relabelling through `relabel`.
    fn carry(&mut self, p: &CoxeterPresentation, a: usize, b: usize, relabel: &dyn Fn(&str) -> String) {
        for i in p.component_nodes(a) {
            let l = relabel(&p.nodes()[i].label);
            let j = p.node(b, &l).expect("factors of equal type");
            self.set(i, j);
        }
    }
}

/// Swap of the two leaves at the fork end of `D~m`. For `m = 2` the two
/// infinite dihedral factors are exchanged.
fn leaf_swap(m: usize) -> impl Fn(&str) -> String {
    move |l: &str| {
        let (a, b) = match m {
            0 | 1 => return l.to_string(),
            2 => match l {
                "0" => return "0'".into(),
                "0'" => return "0".into(),
                _ => ("1".to_string(), "2".to_string()),
            },
            _ => ((m - 1).to_string(), m.to_string()),
        };
        if l == a {
            b
        } else if l == b {
            a
        } else {
            l.to_string()
        }
    }
}

/// Reflection `i -> N+1-i` of `A~N`, fixing node 0.
fn a_reflection(p: &CoxeterPresentation, ci: usize, n: usize, perm: &mut Perm) {
    for i in 1..=n {
        perm.set(node(p, ci, i), node(p, ci, n + 1 - i));
    }
}

fn same(l: &str) -> String {
    l.to_string()
}

/// Permutation order.
pub(crate) fn perm_order(perm: &[usize]) -> u32 {
    let mut seen = vec![false; perm.len()];
    let mut order = 1u32;
    for start in 0..perm.len() {
        let mut len = 0u32;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 {
            order = order / gcd(order, len) * len;
        }
    }
    order
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Cell tag of a nontrivial parabolic factor, if the factor is nontrivial.
fn tag_for(c: Component) -> Result<Option<CuspidalComponent>> {
    if c.coxeter_class()?.is_empty() {
        return Ok(None);
    }
    let r = c.rank as u32;
    let solve = |f: &dyn Fn(u32) -> u32| (1..=r + 1).find(|&h| f(h) == r);
    let h = match c.family {
        A => solve(&|h| (h * h + h) / 2 - 1),
        B | C => solve(&|h| h * h + h),
        D => solve(&|h| h * h),
        _ => None,
    };
    let tag = CuspidalComponent::new(c.family, c.rank, h);
    tag.check_constraint()?;
    Ok(Some(tag))
}

struct Dual {
    ambient: Vec<Component>,
    parabolic: Vec<Component>,
    jprime: Vec<usize>,
    gamma: Vec<usize>,
    gamma_order: u32,
    gamma_note: &'static str,
    w_type: Component,
    ell: Vec<u64>,
    ell_printed: Vec<u64>,
}

/// Finite-side `I` in the catalog presentation of `G`, and the printed type
/// of `L`.
fn levi(f: &DatumFamily, g: Component) -> Result<(Vec<usize>, Vec<Component>)> {
    let r = g.rank;
    let (n, t, k) = (f.n as usize, f.t as usize, f.k as usize);
    let p = CoxeterPresentation::build(&TypeDescriptor::single(g))?;
    let seg = |s: usize| end_segment(&p, 0, g.family, r, s);
    let with_a1 = |s: usize| {
        let mut v = seg(s);
        v.extend(labels(&p, 0, (0..k).map(|i| 2 * i + 1)));
        v
    };
    let a1s = vec![fin(A, 1); k];
    let lt = |c: Component, extra: Vec<Component>| {
        let mut v = vec![c];
        v.extend(extra);
        v
    };
    let mut out = match f.tag {
        Tag::Torus => (vec![], vec![]),
        Tag::A => (
            labels(&p, 0, (1..=r).filter(|i| i % n != 0)),
            vec![fin(A, n - 1); k],
        ),
        Tag::B => (seg(2 * t * t + t), vec![fin(C, 2 * t * t + t)]),
        Tag::C => (seg(2 * t * t + 3 * t + 1), vec![fin(C, 2 * t * t + 3 * t + 1)]),
        Tag::D => (seg(2 * t * t + 2 * t), vec![fin(B, 2 * t * t + 2 * t)]),
        Tag::E => (with_a1(4 * t * t + 3 * t), lt(fin(B, 4 * t * t + 3 * t), a1s)),
        Tag::F => (with_a1(4 * t * t + 5 * t + 1), lt(fin(B, 4 * t * t + 5 * t + 1), a1s)),
        Tag::G => (seg(2 * t * t), vec![fin(D, 2 * t * t)]),
        Tag::H => (with_a1(4 * t * t + t), lt(fin(D, 4 * t * t + t), a1s)),
        Tag::I => (with_a1(4 * t * t - t), lt(fin(D, 4 * t * t - t), a1s)),
        Tag::J => (labels(&p, 0, [1, 3, 5, 6]), vec![fin(A, 2), fin(A, 2)]),
        Tag::K => (labels(&p, 0, [2, 5, 7]), vec![fin(A, 1); 3]),
        Tag::L | Tag::M | Tag::N => ((0..p.rank()).collect(), vec![g]),
    };
    out.0.sort_unstable();
    Ok(out)
}

/// Printed finite relative type, `l0` on its catalog nodes, the printed
/// `l0` list and the printed affine type on the side of `G`.
fn finite_tables(f: &DatumFamily, g: Component) -> (Component, Vec<u64>, Vec<u64>, Component) {
    let (n, t, k) = (f.n as u64, f.t as u64, f.k as usize);
    let ku = k;
    let bc = |fam: Family, l0: Vec<u64>| (fin(fam, ku), l0.clone(), l0, aff(fam, ku));
    match f.tag {
        Tag::Torus => {
            let l0 = vec![1; g.rank];
            (g, l0.clone(), l0, aff(g.family, g.rank))
        }
        Tag::A => {
            let l0 = vec![n; k.saturating_sub(1)];
            (fin(A, k - 1), l0.clone(), l0, aff(A, k - 1))
        }
        Tag::B => bc(C, ending(k, 1, 2 * t + 1)),
        Tag::C => bc(C, ending(k, 1, 2 * t + 2)),
        Tag::D => bc(B, ending(k, 1, 2 * t + 1)),
        Tag::E => bc(C, ending(k, 2, 4 * t + 2)),
        Tag::F => bc(C, ending(k, 2, 4 * t + 1)),
        Tag::G => bc(B, ending(k, 1, 2 * t)),
        Tag::H => bc(C, ending(k, 2, 4 * t - 1)),
        Tag::I => bc(C, ending(k, 2, 4 * t)),
        // Catalog G2 lists the short node first.
        Tag::J => (fin(G, 2), vec![3, 1], vec![1, 3], aff(G, 2)),
        Tag::K => (fin(F, 4), vec![1, 1, 2, 2], vec![1, 1, 2, 2], aff(F, 4)),
        Tag::L | Tag::M | Tag::N => (fin(A, 0), vec![], vec![], aff(A, 0)),
    }
}

fn dual(f: &DatumFamily, g: Component, ell0: &[u64]) -> Result<Dual> {
    let (n, t, k) = (f.n as usize, f.t as usize, f.k as usize);
    let tu = t as u64;
    let build = |cs: &[Component]| CoxeterPresentation::build(&ty(cs));
    // Stored list: l0 on the finite nodes, then the affine node.
    let stored = |extra: u64| -> Vec<u64> {
        if k == 0 {
            vec![]
        } else {
            let mut v = ell0.to_vec();
            v.push(extra);
            v
        }
    };
    let printed = |head: Vec<u64>| if k == 0 { vec![] } else { head };
    let d = match f.tag {
        Tag::Torus => {
            let c = aff(g.family.dual(), g.rank);
            let p = build(&[c])?;
            Dual {
                ambient: vec![c],
                parabolic: vec![],
                jprime: vec![],
                gamma: Perm::id(p.rank()).0,
                gamma_order: 1,
                gamma_note: "trivial",
                w_type: c,
                ell: vec![1; g.rank + 1],
                ell_printed: vec![1; g.rank + 1],
            }
        }
        Tag::A => {
            let ambient = vec![aff(A, k - 1); n];
            let p = build(&ambient)?;
            let mut perm = Perm::id(p.rank());
            for c in 0..n {
                perm.carry(&p, c, (c + 1) % n, &same);
            }
            let ell = if k >= 2 { vec![n as u64; k] } else { vec![] };
            Dual {
                ambient,
                parabolic: vec![fin(A, 0); n],
                jprime: vec![],
                gamma: perm.0,
                gamma_order: if k >= 2 { n as u32 } else { 1 },
                gamma_note: "cyclic shift of the factors",
                w_type: aff(A, k - 1),
                ell: ell.clone(),
                ell_printed: ell,
            }
        }
        Tag::B => {
            let (m, s, q) = (t * t + t + k, t * t + t, t * t);
            let ambient = vec![aff(B, m), aff(D, q)];
            let p = build(&ambient)?;
            let mut jp = end_segment(&p, 0, B, m, s);
            jp.extend(finite_nodes(&p, 1));
            let mut perm = Perm::id(p.rank());
            let twisted = t >= 2 && n_of(t) == 2;
            if twisted {
                perm.carry(&p, 1, 1, &leaf_swap(q));
            }
            Dual {
                ambient,
                parabolic: vec![fin(B, s), fin(D, q)],
                jprime: jp,
                gamma: perm.0,
                gamma_order: if t >= 2 { n_of(t) } else { 1 },
                gamma_note: "leaf swap on the D~ factor",
                w_type: aff(B, k),
                ell: stored(1),
                ell_printed: printed(ending(k + 1, 1, 2 * tu + 1)),
            }
        }
        Tag::C => {
            let (m, s, q) = (t * t + 2 * t + k + 1, (t + 1) * (t + 1), t * t + t);
            let ambient = vec![aff(D, m), aff(B, q)];
            let p = build(&ambient)?;
            let mut jp = end_segment(&p, 0, D, m, s);
            jp.extend(finite_nodes(&p, 1));
            let mut perm = Perm::id(p.rank());
            let on = (t, k) != (0, 0);
            if on && n_of(t + 1) == 2 {
                perm.carry(&p, 0, 0, &leaf_swap(m));
            }
            Dual {
                ambient,
                parabolic: vec![fin(D, s), fin(B, q)],
                jprime: jp,
                gamma: perm.0,
                gamma_order: if on { n_of(t + 1) } else { 1 },
                gamma_note: "leaf swap at the fork end of the D~ factor",
                w_type: aff(B, k),
                ell: stored(1),
                ell_printed: printed(ending(k + 1, 1, 2 * tu + 2)),
            }
        }
        Tag::D => {
            let (s, m) = (t * t + t, t * t + t + k);
            let ambient = vec![aff(C, s), aff(C, m)];
            let p = build(&ambient)?;
            let mut jp = finite_nodes(&p, 0);
            jp.extend(end_segment(&p, 1, C, m, s));
            Dual {
                ambient,
                parabolic: vec![fin(C, s), fin(C, s)],
                jprime: jp,
                gamma: Perm::id(p.rank()).0,
                gamma_order: 1,
                gamma_note: "trivial",
                w_type: aff(C, k),
                ell: stored(1),
                ell_printed: printed(ending(k + 1, 1, 2 * tu + 1)),
            }
        }
        Tag::E | Tag::F | Tag::H => {
            // C~ or D~ outer factors exchanged, a reflection on the middle A~.
            let (outer, s, big, a, printed_order, head) = match f.tag {
                Tag::E => (C, t * t + t, t * t + t + k, 2 * t * t + t - 1, 2, None),
                Tag::F => (
                    C,
                    t * t + t,
                    t * t + t,
                    2 * t * t + 3 * t,
                    if (t, k) != (0, 0) { 2 } else { 1 },
                    Some(4 * tu + 1),
                ),
                _ => (
                    D,
                    t * t,
                    t * t,
                    2 * t * t + t - 1,
                    if (t, k) != (1, 0) { 2 * n_of(t) } else { 2 },
                    Some(4 * tu - 1),
                ),
            };
            let nn = if f.tag == Tag::E { a } else { a + 2 * k };
            let ambient = vec![aff(outer, big), aff(A, nn), aff(outer, big)];
            let p = build(&ambient)?;
            let mut jp = Vec::new();
            if f.tag == Tag::E {
                jp.extend(end_segment(&p, 0, C, big, s));
                jp.extend(finite_nodes(&p, 1));
                jp.extend(end_segment(&p, 2, C, big, s));
            } else {
                jp.extend(finite_nodes(&p, 0));
                jp.extend(labels(&p, 1, k + 1..=k + a));
                jp.extend(finite_nodes(&p, 2));
            }
            let mut perm = Perm::id(p.rank());
            perm.carry(&p, 0, 2, &same);
            if outer == D && n_of(t) == 2 {
                perm.carry(&p, 2, 0, &leaf_swap(big));
            } else {
                perm.carry(&p, 2, 0, &same);
            }
            a_reflection(&p, 1, nn, &mut perm);
            let (ell, ell_printed) = match head {
                None => (stored(2), printed(ending(k + 1, 2, 4 * tu + 2))),
                Some(last) => {
                    let mut pr = vec![1];
                    pr.extend(ending(k, 2, last));
                    (stored(1), printed(pr))
                }
            };
            Dual {
                ambient,
                parabolic: vec![fin(outer, s), fin(A, a), fin(outer, s)],
                jprime: jp,
                gamma: perm.0,
                gamma_order: printed_order,
                gamma_note: "exchanges the outer factors, reflects the A~ factor",
                w_type: aff(C, k),
                ell,
                ell_printed,
            }
        }
        Tag::G => {
            let (q, m) = (t * t, t * t + k);
            let ambient = vec![aff(D, q), aff(D, m)];
            let p = build(&ambient)?;
            let mut jp = finite_nodes(&p, 0);
            jp.extend(end_segment(&p, 1, D, m, q));
            let on = (t, k) != (1, 0);
            let mut perm = Perm::id(p.rank());
            if on && n_of(t) == 2 {
                perm.carry(&p, 1, 1, &leaf_swap(m));
            }
            Dual {
                ambient,
                parabolic: vec![fin(D, q), fin(D, q)],
                jprime: jp,
                gamma: perm.0,
                gamma_order: if on { n_of(t) } else { 1 },
                gamma_note: "leaf swap at the fork end of the second D~ factor",
                w_type: aff(B, k),
                ell: stored(1),
                ell_printed: printed(ending(k + 1, 1, 2 * tu)),
            }
        }
        Tag::I => {
            let (q, m, a) = (t * t, t * t + k, 2 * t * t - t - 1);
            let ambient = vec![aff(D, m), aff(A, a), aff(D, m)];
            let p = build(&ambient)?;
            let mut jp = end_segment(&p, 0, D, m, q);
            jp.extend(finite_nodes(&p, 1));
            jp.extend(end_segment(&p, 2, D, m, q));
            let on = (t, k) != (1, 0);
            let mut perm = Perm::id(p.rank());
            perm.carry(&p, 0, 2, &same);
            if n_of(t) == 2 {
                perm.carry(&p, 2, 0, &leaf_swap(m));
            } else {
                perm.carry(&p, 2, 0, &same);
            }
            Dual {
                ambient,
                parabolic: vec![fin(D, q), fin(A, a), fin(D, q)],
                jprime: jp,
                gamma: perm.0,
                gamma_order: if on { 2 * n_of(t) } else { 1 },
                gamma_note: "exchanges the D~ factors, composed with a leaf swap",
                w_type: aff(B, k),
                ell: stored(2),
                ell_printed: printed(ending(k + 1, 2, 4 * tu)),
            }
        }
        Tag::J => {
            let ambient = vec![aff(D, 4)];
            let p = build(&ambient)?;
            let mut perm = Perm::id(p.rank());
            let (a, b, c) = (node(&p, 0, 1), node(&p, 0, 3), node(&p, 0, 4));
            perm.set(a, b);
            perm.set(b, c);
            perm.set(c, a);
            Dual {
                ambient,
                parabolic: vec![],
                jprime: vec![],
                gamma: perm.0,
                gamma_order: 3,
                gamma_note: "rotation of the three outer leaves",
                w_type: aff(G, 2),
                ell: vec![3, 1, 1],
                ell_printed: vec![1, 1, 3],
            }
        }
        Tag::K => {
            let ambient = vec![aff(E, 6)];
            let p = build(&ambient)?;
            let mut perm = Perm::id(p.rank());
            for (x, y) in [(1, 6), (3, 5)] {
                let (i, j) = (node(&p, 0, x), node(&p, 0, y));
                perm.set(i, j);
                perm.set(j, i);
            }
            Dual {
                ambient,
                parabolic: vec![],
                jprime: vec![],
                gamma: perm.0,
                gamma_order: 2,
                gamma_note: "diagram flip",
                w_type: aff(F, 4),
                ell: vec![1, 1, 2, 2, 1],
                ell_printed: vec![1, 1, 1, 2, 2],
            }
        }
        Tag::L | Tag::M | Tag::N => {
            let c = aff(g.family, g.rank);
            let p = build(&[c])?;
            Dual {
                ambient: vec![c],
                parabolic: vec![g],
                jprime: finite_nodes(&p, 0),
                gamma: Perm::id(p.rank()).0,
                gamma_order: 1,
                gamma_note: "trivial",
                w_type: aff(A, 0),
                ell: vec![],
                ell_printed: vec![],
            }
        }
    };
    Ok(d)
}

/// Instantiates the row of one family.
pub fn row(f: &DatumFamily) -> Result<DatumRow> {
    let g = f.g_type()?;
    let (i_nodes, l_parts) = levi(f, g)?;
    let (w_type, ell0, ell0_printed, aff_g) = finite_tables(f, g);
    let mut d = dual(f, g, &ell0)?;
    d.jprime.sort_unstable();
    let mut cell_tags = Vec::new();
    for c in &d.parabolic {
        if let Some(tag) = tag_for(*c)? {
            cell_tags.push(tag);
        }
    }
    let mut flags = Vec::new();
    if matches!(f.tag, Tag::F | Tag::H) && f.k > 0 {
        flags.push("weight 1 of the printed list placed on the orbit of the affine node".into());
    }
    if f.tag == Tag::I {
        flags.push("dual parabolic subscripts follow the printed row".into());
    }
    if matches!(f.tag, Tag::J) {
        flags.push("printed lists reordered to the catalog node order".into());
    }
    Ok(DatumRow {
        family: *f,
        g_type: TypeDescriptor::single(g),
        l_type: ty(&l_parts),
        finite: FiniteSide {
            w_type: TypeDescriptor::single(w_type),
            ell0,
            ell0_printed,
            i_nodes: i_nodes.clone(),
        },
        affine_g: AffineGSide {
            w_type: TypeDescriptor::single(aff_g),
            i_nodes,
        },
        dual: DualSide {
            ambient: ty(&d.ambient),
            parabolic: ty(&d.parabolic),
            jprime: d.jprime,
            gamma: d.gamma,
            gamma_order: d.gamma_order,
            gamma_note: d.gamma_note.into(),
            cell_tags,
            w_type: TypeDescriptor::single(d.w_type),
            ell: d.ell,
            ell_printed: d.ell_printed,
        },
        flags,
    })
}
