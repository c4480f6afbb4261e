//! Recomputation of one atlas row: relative groups on all three sides,
//! weight checks, and weights from the a-function where cells are available.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::coxeter::{labelled_isomorphism, CoxeterPresentation, TypeDescriptor};
use crate::data::DatumRow;
use crate::error::{Error, Result};
use crate::kl::{cuspidal_cell, ell_from_afunction, DEFAULT_KL_CAP};
use crate::relative::{relative_group, subgroup_embedding, RelativeDatum, RelativeGroup};
use crate::weight::WeightFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Finite,
    AffineG,
    Dual,
    Weights,
    Afunction,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Finite,
        Suite::AffineG,
        Suite::Dual,
        Suite::Weights,
        Suite::Afunction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Finite => "finite",
            Suite::AffineG => "affine-g",
            Suite::Dual => "dual",
            Suite::Weights => "weights",
            Suite::Afunction => "afunction",
        }
    }

    pub fn parse(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownFamily(format!("suite {s}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

/// Values recomputed from the encoded node data.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Computed {
    pub levi_type: Option<String>,
    pub finite_type: Option<String>,
    pub affine_type: Option<String>,
    pub dual_parabolic: Option<String>,
    pub dual_type: Option<String>,
    pub dual_orbits: Vec<Vec<usize>>,
    pub gamma_order: Option<u32>,
    /// `l0` evaluated on the longest element of the finite relative group.
    pub l0_longest: Option<u64>,
    /// Weights on the affine group of `G`, in catalog order, when they are
    /// pinned down by matching with the dual side.
    pub affine_ell_inferred: Option<Vec<u64>>,
    /// Weights from the a-function, one per dual orbit.
    pub ell_from_cells: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub row: DatumRow,
    pub computed: Computed,
    pub checks: Vec<Check>,
}

impl CaseReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub suites: BTreeSet<Suite>,
    /// Largest parabolic order for KL tables.
    pub kl_cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            suites: Suite::ALL.into_iter().collect(),
            kl_cap: DEFAULT_KL_CAP,
        }
    }
}

struct Collector {
    suites: BTreeSet<Suite>,
    checks: Vec<Check>,
}

impl Collector {
    fn on(&self, s: Suite) -> bool {
        self.suites.contains(&s)
    }

    fn push(&mut self, suite: Suite, name: &'static str, status: Status, detail: impl Into<String>) {
        if self.on(suite) {
            self.checks.push(Check {
                suite,
                name,
                status,
                detail: detail.into(),
            });
        }
    }

    fn expect(&mut self, suite: Suite, name: &'static str, ok: bool, detail: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(suite, name, status, detail);
    }

    fn error(&mut self, suite: Suite, name: &'static str, e: &Error) {
        self.push(suite, name, Status::Fail, e.to_string());
    }
}

fn build(t: &TypeDescriptor) -> Result<CoxeterPresentation> {
    CoxeterPresentation::build(t)
}

fn type_check(
    col: &mut Collector,
    suite: Suite,
    name: &'static str,
    got: &Result<TypeDescriptor>,
    want: &TypeDescriptor,
) -> Option<String> {
    match got {
        Ok(t) => {
            col.expect(
                suite,
                name,
                t.same_coxeter_type(want),
                format!("computed {t}, printed {want}"),
            );
            Some(t.to_string())
        }
        Err(e) => {
            col.error(suite, name, e);
            None
        }
    }
}

fn multiset(v: &[u64]) -> Vec<u64> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// Runs the requested suites on one row.
pub fn analyze(row: &DatumRow, opts: &Options) -> CaseReport {
    let mut col = Collector {
        suites: opts.suites.clone(),
        checks: Vec::new(),
    };
    let mut out = Computed::default();

    // Finite side.
    let g = build(&row.g_type);
    let finite_rel = g.clone().and_then(|p| {
        let levi = p.sub_presentation(&row.finite.i_nodes)?.recognize();
        out.levi_type = type_check(&mut col, Suite::Finite, "levi type", &levi, &row.l_type);
        relative_group(&RelativeDatum::untwisted(p, row.finite.i_nodes.clone())?)
    });
    let finite_type = finite_rel.as_ref().map(|r| r.rtype.clone()).map_err(Clone::clone);
    out.finite_type = type_check(&mut col, Suite::Finite, "relative type", &finite_type, &row.finite.w_type);

    // Affine side of G, with the finite side embedded along the finite nodes.
    let ghat = build(&TypeDescriptor::single(
        crate::coxeter::Component::affine(row.g_type.components[0].family, row.g_type.components[0].rank),
    ));
    let affine_rel = ghat.and_then(|p| relative_group(&RelativeDatum::untwisted(p, row.affine_g.i_nodes.clone())?));
    let affine_type = affine_rel.as_ref().map(|r| r.rtype.clone()).map_err(Clone::clone);
    out.affine_type = type_check(&mut col, Suite::AffineG, "relative type", &affine_type, &row.affine_g.w_type);
    if let (Ok(inner), Ok(outer)) = (&finite_rel, &affine_rel) {
        let map: Vec<usize> = (0..inner.datum.ambient.rank()).collect();
        match subgroup_embedding(inner, outer, &map) {
            Ok(e) => col.expect(
                Suite::AffineG,
                "finite relative group embeds",
                e.is_some(),
                format!("alignment {e:?}"),
            ),
            Err(e) => col.error(Suite::AffineG, "finite relative group embeds", &e),
        }
    }

    // Dual side.
    let dual_rel = dual_group(row, &mut col, &mut out);

    // Weights on the printed carriers.
    weight_checks(row, &mut col, &mut out);

    if col.on(Suite::Afunction) {
        match &dual_rel {
            Ok(rel) => afunction(row, rel, opts.kl_cap, &mut col, &mut out),
            Err(e) => col.error(Suite::Afunction, "weights from cells", e),
        }
    }

    CaseReport {
        case: row.family.to_string(),
        row: row.clone(),
        computed: out,
        checks: col.checks,
    }
}

fn dual_group(row: &DatumRow, col: &mut Collector, out: &mut Computed) -> Result<RelativeGroup> {
    let s = Suite::Dual;
    let p = match build(&row.dual.ambient) {
        Ok(p) => p,
        Err(e) => {
            col.error(s, "ambient", &e);
            return Err(e);
        }
    };
    let parabolic = p.sub_presentation(&row.dual.jprime).and_then(|q| q.recognize());
    out.dual_parabolic = type_check(col, s, "parabolic type", &parabolic, &row.dual.parabolic);
    let order = crate::data::perm_order(&row.dual.gamma);
    out.gamma_order = Some(order);
    col.expect(
        s,
        "gamma order",
        order == row.dual.gamma_order,
        format!("node permutation order {order}, printed {}", row.dual.gamma_order),
    );
    let rel = RelativeDatum::new(p, row.dual.jprime.clone(), row.dual.gamma.clone())
        .and_then(|d| relative_group(&d));
    match &rel {
        Ok(r) => {
            col.push(s, "gamma automorphism", Status::Pass, "preserves Cartan matrix and J'");
            out.dual_orbits = r.orbits.clone();
            out.dual_type = type_check(col, s, "relative type", &Ok(r.rtype.clone()), &row.dual.w_type);
        }
        Err(e) => col.error(s, "relative type", e),
    }
    rel
}

fn weight_checks(row: &DatumRow, col: &mut Collector, out: &mut Computed) {
    let s = Suite::Weights;
    let fin = build(&row.finite.w_type);
    let dual = build(&row.dual.w_type);
    let (fin, dual) = match (fin, dual) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            col.error(s, "carriers", &e);
            return;
        }
    };
    let l0 = WeightFunction::validate(&fin, row.finite.ell0.clone());
    col.expect(s, "l0 odd-bond valid", l0.is_ok(), format!("{:?} on {}", row.finite.ell0, row.finite.w_type));
    out.l0_longest = l0.as_ref().ok().and_then(|w| w.total_flag_dimension().ok());
    let l = WeightFunction::validate(&dual, row.dual.ell.clone());
    col.expect(s, "l odd-bond valid", l.is_ok(), format!("{:?} on {}", row.dual.ell, row.dual.w_type));
    if let Ok(l) = &l {
        let align: Vec<usize> = (0..fin.rank()).collect();
        match l.restrict(&fin, &align) {
            Ok(r) => col.expect(
                s,
                "l restricts to l0",
                r.values() == row.finite.ell0,
                format!("restriction {:?}, l0 {:?}", r.values(), row.finite.ell0),
            ),
            Err(e) => col.error(s, "l restricts to l0", &e),
        }
    }
    col.expect(
        s,
        "printed lists agree up to order",
        multiset(&row.finite.ell0) == multiset(&row.finite.ell0_printed)
            && multiset(&row.dual.ell) == multiset(&row.dual.ell_printed),
        format!("l printed {:?}", row.dual.ell_printed),
    );
    out.affine_ell_inferred = infer_affine_ell(row, &dual);
    if let Some(v) = &out.affine_ell_inferred {
        col.push(s, "affine weights inferred", Status::Pass, format!("{v:?}"));
    } else {
        col.push(
            s,
            "affine weights inferred",
            Status::Skip,
            format!("{} and {} are not matched", row.affine_g.w_type, row.dual.w_type),
        );
    }
}

/// Extends `l0` to the affine node of the `G`-side group when exactly one
/// value makes the weighted graph isomorphic to the dual one.
fn infer_affine_ell(row: &DatumRow, dual: &CoxeterPresentation) -> Option<Vec<u64>> {
    if row.affine_g.w_type.is_trivial() && row.dual.w_type.is_trivial() {
        return Some(vec![]);
    }
    if !row.affine_g.w_type.same_coxeter_type(&row.dual.w_type) {
        return None;
    }
    let carrier = build(&row.affine_g.w_type).ok()?;
    let candidates: BTreeSet<u64> = row.dual.ell.iter().copied().collect();
    let mut hits = Vec::new();
    for x in candidates {
        let mut v = row.finite.ell0.clone();
        v.push(x);
        if v.len() == carrier.rank()
            && labelled_isomorphism(carrier.coxeter_matrix(), &v, dual.coxeter_matrix(), &row.dual.ell).is_some()
        {
            hits.push(v);
        }
    }
    match hits.len() {
        1 => hits.pop(),
        _ => None,
    }
}

fn afunction(row: &DatumRow, rel: &RelativeGroup, cap: usize, col: &mut Collector, out: &mut Computed) {
    let s = Suite::Afunction;
    let name = "weights from cells";
    if rel.orbits.is_empty() {
        out.ell_from_cells = Some(vec![]);
        col.expect(s, name, row.dual.ell.is_empty(), "no relative generators");
        return;
    }
    let p = &rel.datum.ambient;
    let jp = &rel.datum.jprime;
    let cell = match cuspidal_cell(p, jp, &row.dual.cell_tags, cap) {
        Ok(c) => c,
        Err(e @ (Error::CellNotImplemented(_) | Error::CapExceeded { .. })) => {
            col.push(s, name, Status::Skip, e.to_string());
            return;
        }
        Err(e) => return col.error(s, name, &e),
    };
    let mut values = Vec::with_capacity(rel.rank());
    for (orbit, tau) in rel.orbits.iter().zip(&rel.taus) {
        match ell_from_afunction(p, jp, &cell, orbit, tau, cap) {
            Ok(v) => values.push(v),
            Err(e @ Error::CapExceeded { .. }) => {
                col.push(s, name, Status::Skip, e.to_string());
                return;
            }
            Err(e) => return col.error(s, name, &e),
        }
    }
    let carrier = match build(&row.dual.w_type) {
        Ok(c) => c,
        Err(e) => return col.error(s, name, &e),
    };
    let matched =
        labelled_isomorphism(&rel.coxmatrix, &values, carrier.coxeter_matrix(), &row.dual.ell).is_some();
    col.expect(
        s,
        name,
        matched,
        format!("computed {values:?} on orbits {:?}, printed {:?}", rel.orbits, row.dual.ell_printed),
    );
    out.ell_from_cells = Some(values);
}

pub const REPORT_SCHEMA: &str = "springer-report/1";

pub const HECKE_NOTE: &str = "The weights l on the dual relative group are the parameters of the \
endomorphism Hecke algebra attached to this datum.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Printed classification data.
    Table,
    /// Recomputed here.
    Computed,
    /// An encoding choice or value the printed data leaves open.
    Inferred,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sourced<T> {
    pub value: T,
    pub provenance: Provenance,
}

fn table<T>(value: T) -> Sourced<T> {
    Sourced {
        value,
        provenance: Provenance::Table,
    }
}

fn computed<T>(value: T) -> Sourced<T> {
    Sourced {
        value,
        provenance: Provenance::Computed,
    }
}

fn inferred<T>(value: T) -> Sourced<T> {
    Sourced {
        value,
        provenance: Provenance::Inferred,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FiniteSection {
    pub i_nodes: Sourced<Vec<usize>>,
    pub relative_type: Sourced<String>,
    pub relative_type_computed: Option<Sourced<String>>,
    pub ell0: Sourced<Vec<u64>>,
    pub ell0_printed: Sourced<Vec<u64>>,
    pub ell0_longest: Option<Sourced<u64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AffineSection {
    pub relative_type: Sourced<String>,
    pub relative_type_computed: Option<Sourced<String>>,
    pub ell: Option<Sourced<Vec<u64>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DualSection {
    pub ambient: Sourced<String>,
    pub parabolic: Sourced<String>,
    pub jprime: Sourced<Vec<usize>>,
    pub gamma: Sourced<Vec<usize>>,
    pub gamma_order: Sourced<u32>,
    pub gamma_order_computed: Option<Sourced<u32>>,
    pub gamma_note: String,
    pub cell_tags: Sourced<Vec<crate::kl::CuspidalComponent>>,
    pub relative_type: Sourced<String>,
    pub relative_type_computed: Option<Sourced<String>>,
    pub orbits: Sourced<Vec<Vec<usize>>>,
    pub ell: Sourced<Vec<u64>>,
    pub ell_printed: Sourced<Vec<u64>>,
    pub ell_from_cells: Option<Sourced<Vec<u64>>>,
}

/// The user-facing report of one case.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub case: String,
    pub g_type: Sourced<String>,
    pub l_type: Sourced<String>,
    pub finite: FiniteSection,
    pub affine_g: AffineSection,
    pub dual: DualSection,
    pub flags: Vec<String>,
    pub hecke_note: &'static str,
    pub checks: Vec<Check>,
}

impl From<&CaseReport> for Report {
    fn from(c: &CaseReport) -> Self {
        let (r, x) = (&c.row, &c.computed);
        Report {
            schema: REPORT_SCHEMA,
            case: c.case.clone(),
            g_type: table(r.g_type.to_string()),
            l_type: table(r.l_type.to_string()),
            finite: FiniteSection {
                i_nodes: inferred(r.finite.i_nodes.clone()),
                relative_type: table(r.finite.w_type.to_string()),
                relative_type_computed: x.finite_type.clone().map(computed),
                ell0: table(r.finite.ell0.clone()),
                ell0_printed: table(r.finite.ell0_printed.clone()),
                ell0_longest: x.l0_longest.map(computed),
            },
            affine_g: AffineSection {
                relative_type: table(r.affine_g.w_type.to_string()),
                relative_type_computed: x.affine_type.clone().map(computed),
                ell: x.affine_ell_inferred.clone().map(inferred),
            },
            dual: DualSection {
                ambient: table(r.dual.ambient.to_string()),
                parabolic: table(r.dual.parabolic.to_string()),
                jprime: inferred(r.dual.jprime.clone()),
                gamma: inferred(r.dual.gamma.clone()),
                gamma_order: table(r.dual.gamma_order),
                gamma_order_computed: x.gamma_order.map(computed),
                gamma_note: r.dual.gamma_note.clone(),
                cell_tags: table(r.dual.cell_tags.clone()),
                relative_type: table(r.dual.w_type.to_string()),
                relative_type_computed: x.dual_type.clone().map(computed),
                orbits: computed(x.dual_orbits.clone()),
                ell: table(r.dual.ell.clone()),
                ell_printed: table(r.dual.ell_printed.clone()),
                ell_from_cells: x.ell_from_cells.clone().map(computed),
            },
            flags: r.flags.clone(),
            hecke_note: HECKE_NOTE,
            checks: c.checks.clone(),
        }
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        fn opt<T: fmt::Debug>(v: &Option<Sourced<T>>) -> String {
            v.as_ref().map_or("-".into(), |s| format!("{:?}", s.value))
        }
        fn opt_s(v: &Option<Sourced<String>>) -> &str {
            v.as_ref().map_or("-", |s| s.value.as_str())
        }
        let mut s = String::new();
        let f = &self.finite;
        let a = &self.affine_g;
        let d = &self.dual;
        let _ = writeln!(s, "case {}", self.case);
        let _ = writeln!(s, "  G = {}, L = {}", self.g_type.value, self.l_type.value);
        let _ = writeln!(s, "finite");
        let _ = writeln!(s, "  I = {:?}", f.i_nodes.value);
        let _ = writeln!(s, "  W = {} (computed {})", f.relative_type.value, opt_s(&f.relative_type_computed));
        let _ = writeln!(
            s,
            "  l0 = {:?} (printed {:?}), l0(w0) = {}",
            f.ell0.value,
            f.ell0_printed.value,
            opt(&f.ell0_longest)
        );
        let _ = writeln!(s, "affine G");
        let _ = writeln!(s, "  W^ = {} (computed {})", a.relative_type.value, opt_s(&a.relative_type_computed));
        let _ = writeln!(s, "  l~ = {} [inferred]", opt(&a.ell));
        let _ = writeln!(s, "dual");
        let _ = writeln!(s, "  W^a = {}, W' = {}", d.ambient.value, d.parabolic.value);
        let _ = writeln!(s, "  J' = {:?}", d.jprime.value);
        let _ = writeln!(
            s,
            "  gamma = {:?}, order {} (computed {}), {}",
            d.gamma.value,
            d.gamma_order.value,
            opt(&d.gamma_order_computed),
            d.gamma_note
        );
        let tags: Vec<String> = d
            .cell_tags
            .value
            .iter()
            .map(|t| format!("{}{} h={:?}", t.family.letter(), t.rank, t.h))
            .collect();
        let _ = writeln!(s, "  cells = [{}]", tags.join(", "));
        let _ = writeln!(s, "  relative = {} (computed {})", d.relative_type.value, opt_s(&d.relative_type_computed));
        let _ = writeln!(s, "  orbits = {:?}", d.orbits.value);
        let _ = writeln!(s, "  l = {:?} (printed {:?}), from cells {}", d.ell.value, d.ell_printed.value, opt(&d.ell_from_cells));
        for flag in &self.flags {
            let _ = writeln!(s, "flag: {flag}");
        }
        let _ = writeln!(s, "note: {}", self.hecke_note);
        for c in &self.checks {
            let _ = writeln!(s, "{} {} {}: {}", c.status, c.suite.name(), c.name, c.detail);
        }
        s
    }
}
