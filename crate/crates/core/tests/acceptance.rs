//! One test per acceptance criterion; each prints a single verdict line.
//! Items that cannot be reproduced are split into ignored tests that fail
//! when run with `--ignored`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::Instant;

use springer_core::coxeter::{Component, CoxeterPresentation, IntMatrix, TypeDescriptor};
use springer_core::data::{row, sweep, DatumFamily, DatumRow, Tag};
use springer_core::kl::{two_sided_cells, two_sided_cells_with, AMethod, KlGroup, DEFAULT_KL_CAP};
use springer_core::relative::{brute_force_relative, relative_group, RelativeDatum};
use springer_core::report::{analyze, CaseReport, Options, Status, Suite};
use springer_core::weight::WeightFunction;
use springer_core::Error;

const MAX_RANK: usize = 8;

fn rows() -> Vec<DatumRow> {
    sweep(MAX_RANK).iter().map(|f| row(f).expect("row instantiates")).collect()
}

fn run(suite: Suite) -> Vec<CaseReport> {
    let opts = Options {
        suites: [suite].into(),
        kl_cap: DEFAULT_KL_CAP,
    };
    rows().iter().map(|r| analyze(r, &opts)).collect()
}

/// Failing checks as `(case, check, detail)`.
fn failures(reports: &[CaseReport]) -> Vec<(String, &'static str, String)> {
    reports
        .iter()
        .flat_map(|r| r.failures().map(|c| (r.case.clone(), c.name, c.detail.clone())))
        .collect()
}

fn count(reports: &[CaseReport], status: Status) -> usize {
    reports
        .iter()
        .flat_map(|r| &r.checks)
        .filter(|c| c.status == status)
        .count()
}

fn verdict(n: u32, what: &str, ok: bool, detail: String) {
    println!("criterion {n} ({what}): {} {detail}", if ok { "PASS" } else { "FAIL" });
}

fn type_suite(n: u32, what: &str, suite: Suite) {
    let t = Instant::now();
    let reps = run(suite);
    let bad = failures(&reps);
    verdict(
        n,
        what,
        bad.is_empty(),
        format!("{} cases, {} checks passed in {:.1?}", reps.len(), count(&reps, Status::Pass), t.elapsed()),
    );
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn criterion_1_finite_relative_types() {
    type_suite(1, "finite relative types", Suite::Finite);
}

#[test]
fn criterion_2_affine_relative_types() {
    type_suite(2, "affine relative types of G", Suite::AffineG);
}

/// The printed order 4 for (h) with t = 1 has no realization: both outer
/// factors are trivial and the middle factor has no automorphism of order 4
/// stabilizing the parabolic.
const GAMMA_CONFLICT: (&str, &str) = ("(h) t=1 k=1", "gamma order");

#[test]
fn criterion_3_dual_relative_types_and_gamma() {
    let t = Instant::now();
    let reps = run(Suite::Dual);
    let bad = failures(&reps);
    let (known, other): (Vec<_>, Vec<_>) = bad
        .into_iter()
        .partition(|(case, name, _)| (case.as_str(), *name) == GAMMA_CONFLICT);
    verdict(
        3,
        "dual relative types and gamma orders",
        known.is_empty() && other.is_empty(),
        format!(
            "{} cases in {:.1?}; {} unreproducible item(s) isolated in \
             criterion_3_conflict_gamma_order_h; other failures: {}",
            reps.len(),
            t.elapsed(),
            known.len(),
            other.len()
        ),
    );
    assert!(other.is_empty(), "{other:#?}");
}

#[test]
#[ignore = "printed gamma order 4 for (h) t=1 k=1 is not realizable; see decisions ledger"]
fn criterion_3_conflict_gamma_order_h() {
    let r = row(&DatumFamily::new(Tag::H, 0, 1, 1)).unwrap();
    let rep = analyze(&r, &Options::default());
    let order = rep.computed.gamma_order.unwrap();
    println!("criterion 3 conflict: gamma order computed {order}, printed {}", r.dual.gamma_order);
    assert_eq!(order, r.dual.gamma_order);
}

#[test]
fn criterion_4_weight_validity_and_restriction() {
    let reps = run(Suite::Weights);
    let bad = failures(&reps);
    let checked = reps
        .iter()
        .flat_map(|r| &r.checks)
        .filter(|c| c.name == "l restricts to l0" && c.status == Status::Pass)
        .count();
    verdict(
        4,
        "weight validity and restriction",
        bad.is_empty(),
        format!("{} cases, {checked} restrictions exact", reps.len()),
    );
    assert!(bad.is_empty(), "{bad:#?}");
}

/// Computed weights on the dual relative group, matched with the printed
/// list through a weighted graph isomorphism.
fn cells_case(f: DatumFamily) -> (Vec<u64>, Vec<u64>, bool) {
    let r = row(&f).unwrap();
    let opts = Options {
        suites: [Suite::Afunction].into(),
        kl_cap: DEFAULT_KL_CAP,
    };
    let rep = analyze(&r, &opts);
    let check = rep.checks.iter().find(|c| c.suite == Suite::Afunction).unwrap();
    (
        rep.computed.ell_from_cells.clone().unwrap_or_default(),
        r.dual.ell_printed.clone(),
        check.status == Status::Pass,
    )
}

#[test]
fn criterion_5_weights_from_a_function() {
    let t = Instant::now();
    let cases = [
        DatumFamily::new(Tag::J, 0, 0, 0),
        DatumFamily::new(Tag::K, 0, 0, 0),
        DatumFamily::new(Tag::B, 0, 1, 2),
        DatumFamily::new(Tag::D, 0, 1, 1),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for f in cases {
        let (got, printed, pass) = cells_case(f);
        ok &= pass;
        lines.push(format!("{f}: {got:?} vs {printed:?}"));
    }
    verdict(
        5,
        "weights from the a-function",
        false,
        format!(
            "{} in {:.1?}; (b) t=1 k=1 isolated in criterion_5_conflict_b_k1",
            lines.join("; "),
            t.elapsed()
        ),
    );
    assert!(ok, "{lines:#?}");
}

#[test]
#[ignore = "for (b) t=1 k=1 a diagram symmetry forces equal weights (3, 3); printed (1, 3)"]
fn criterion_5_conflict_b_k1() {
    let (got, printed, pass) = cells_case(DatumFamily::new(Tag::B, 0, 1, 1));
    println!("criterion 5 conflict: computed {got:?}, printed {printed:?}");
    assert!(pass);
}

#[test]
fn criterion_6_oracle_equivalence() {
    let t = Instant::now();
    let mut checked = 0;
    let mut seen = HashSet::new();
    for r in rows() {
        let order = r.g_type.group_order().unwrap().unwrap();
        if order > 100_000 || !seen.insert((r.g_type.clone(), r.finite.i_nodes.clone())) {
            continue;
        }
        let p = CoxeterPresentation::build(&r.g_type).unwrap();
        let d = RelativeDatum::untwisted(p, r.finite.i_nodes.clone()).unwrap();
        let g = relative_group(&d).unwrap();
        let generated = g.enumerate_generated(order as usize).unwrap();
        let brute: HashSet<IntMatrix> = brute_force_relative(&d, order).unwrap();
        assert_eq!(generated, brute, "{}", r.family);
        checked += 1;
    }
    verdict(6, "brute-force oracle", true, format!("{checked} ambients in {:.1?}", t.elapsed()));
}

#[test]
fn criterion_7_properties() {
    let t = Instant::now();
    // Every tau on all three sides is an involution normalizing W_J', or
    // relative_group reports the failure.
    let mut taus = 0;
    for r in rows() {
        let g = CoxeterPresentation::build(&r.g_type).unwrap();
        let c = &r.g_type.components[0];
        let ghat = CoxeterPresentation::build(&TypeDescriptor::single(Component::affine(c.family, c.rank))).unwrap();
        let dual = CoxeterPresentation::build(&r.dual.ambient).unwrap();
        for d in [
            RelativeDatum::untwisted(g, r.finite.i_nodes.clone()),
            RelativeDatum::untwisted(ghat, r.affine_g.i_nodes.clone()),
            RelativeDatum::new(dual, r.dual.jprime.clone(), r.dual.gamma.clone()),
        ] {
            let rel = relative_group(&d.unwrap()).unwrap_or_else(|e| panic!("{}: {e}", r.family));
            taus += rel.rank();
        }
    }

    // a is constant on two-sided cells, with the usual extremes.
    let groups = ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "D4", "F4", "G2", "A1xA2", "A1xB3", "A2xG2"];
    for ty in groups {
        let g = kl(ty);
        let cells = two_sided_cells(&g).unwrap();
        let top = g.length(g.longest()) as u32;
        assert!(cells.a.iter().all(|&a| a <= top));
        if g.size() <= 400 {
            let delta = two_sided_cells_with(&g, AMethod::Delta).unwrap();
            assert_eq!(cells.a, delta.a, "{ty}");
        }
    }

    // Parabolic invariance of a.
    let mut parabolics = 0;
    for ty in groups {
        parabolics += parabolic_invariance(ty);
    }

    // Weight evaluation does not depend on the reduced word.
    let mut carriers = 0;
    let mut seen = HashSet::new();
    for r in rows() {
        for (ty, vals) in [
            (&r.finite.w_type, &r.finite.ell0),
            (&r.dual.w_type, &r.dual.ell),
        ] {
            if !seen.insert((ty.to_string(), vals.clone())) {
                continue;
            }
            let p = CoxeterPresentation::build(ty).unwrap();
            word_independence(&p, vals, 6);
            carriers += 1;
        }
    }
    verdict(
        7,
        "property suites",
        true,
        format!(
            "{taus} taus, {} KL groups, {parabolics} parabolics, {carriers} weighted carriers in {:.1?}",
            groups.len(),
            t.elapsed()
        ),
    );
}

fn kl(ty: &str) -> KlGroup {
    let p = CoxeterPresentation::build(&ty.parse::<TypeDescriptor>().unwrap()).unwrap();
    KlGroup::new(&p, DEFAULT_KL_CAP).unwrap()
}

/// Compares a-values in every proper parabolic with those in the whole
/// group; returns the number of parabolics checked.
fn parabolic_invariance(ty: &str) -> usize {
    let g = kl(ty);
    let p = g.presentation().clone();
    let whole = two_sided_cells(&g).unwrap();
    let r = p.rank();
    let mut checked = 0;
    for mask in 1u32..(1 << r) - 1 {
        let nodes: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
        let sub = p.sub_presentation(&nodes).unwrap();
        let h = KlGroup::new(&sub, DEFAULT_KL_CAP).unwrap();
        let cells = two_sided_cells(&h).unwrap();
        for (x, e) in h.elements().iter().enumerate() {
            let word: Vec<usize> = sub.reduced_word(e).unwrap().iter().map(|&i| nodes[i]).collect();
            let w = g.index_of(&p.from_word(&word).unwrap()).unwrap();
            assert_eq!(cells.a_of(x), whole.a_of(w), "{ty} J={nodes:?}");
        }
        checked += 1;
    }
    checked
}

/// All reduced words up to `max_len`, grouped by element, must give one
/// weight per element.
fn word_independence(p: &CoxeterPresentation, vals: &[u64], max_len: usize) {
    let wf = WeightFunction::validate(p, vals.to_vec()).unwrap();
    let mut value: HashMap<IntMatrix, u64> = HashMap::new();
    let mut stack = vec![(p.identity(), 0u64, 0usize)];
    while let Some((w, sum, len)) = stack.pop() {
        match value.get(w.matrix()) {
            Some(&v) => assert_eq!(v, sum, "word-dependent weight on {:?}", p.descriptor()),
            None => {
                value.insert(w.matrix().clone(), sum);
            }
        }
        if len == max_len {
            continue;
        }
        for s in 0..p.rank() {
            if !p.is_right_descent(&w, s) {
                stack.push((p.mul_gen_right(&w, s), sum + wf.values()[s], len + 1));
            }
        }
    }
}

#[test]
fn criterion_8_negative_controls() {
    let a2 = CoxeterPresentation::build(&"A2".parse::<TypeDescriptor>().unwrap()).unwrap();
    let d = RelativeDatum::untwisted(a2.clone(), vec![0]).unwrap();
    let commutation = relative_group(&d).map(|_| ());
    let weights = WeightFunction::validate(&a2, vec![1, 2]).map(|_| ());
    let ok = matches!(commutation, Err(Error::CommutationFailure(_)))
        && matches!(weights, Err(Error::OddBondViolation(..)));
    verdict(8, "negative controls", ok, format!("{commutation:?}; {weights:?}"));
    assert!(ok);
}

#[test]
fn sweep_covers_every_family() {
    let tags: BTreeSet<Tag> = sweep(MAX_RANK).iter().map(|f| f.tag).collect();
    assert_eq!(tags.len(), 15);
}
