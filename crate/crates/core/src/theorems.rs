//! Named verification procedures, one per finite-group statement the
//! toolkit machine-checks, producing reports consumed by the CLI and the
//! acceptance suite.
//!
//! Corpora are constructor-generated, not exhaustive up to isomorphism, so
//! a `verified` verdict means "zero counterexamples over the constructible
//! corpus" — a sound falsification attempt, not a proof. Biconditional
//! statements are split into directional sub-checks so a vacuous direction
//! is visible instead of silently passing.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::caps::Caps;
use crate::corpus::{self, Corpus, CorpusEntry};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::families::{self, GroupDescriptor};
use crate::membership::{self, Verdict};
use crate::structure;
use crate::subgroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremId {
    CenterInNonabelian,
    ZInFrattini,
    Inverting,
    CriteriaEquivalence,
    MinnonabClassification,
    MetacyclicInA,
    OutsideFrattiniAbelianCentralizer,
    SmallOrder,
    Maxclass23,
    AbelianMaximalImpliesA,
    MaxclassP1,
    ExponentP,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::CenterInNonabelian,
        TheoremId::ZInFrattini,
        TheoremId::Inverting,
        TheoremId::CriteriaEquivalence,
        TheoremId::MinnonabClassification,
        TheoremId::MetacyclicInA,
        TheoremId::OutsideFrattiniAbelianCentralizer,
        TheoremId::SmallOrder,
        TheoremId::Maxclass23,
        TheoremId::AbelianMaximalImpliesA,
        TheoremId::MaxclassP1,
        TheoremId::ExponentP,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            TheoremId::CenterInNonabelian => "center-in-nonabelian",
            TheoremId::ZInFrattini => "z-in-frattini",
            TheoremId::Inverting => "inverting",
            TheoremId::CriteriaEquivalence => "criteria-equivalence",
            TheoremId::MinnonabClassification => "minnonab-classification",
            TheoremId::MetacyclicInA => "metacyclic-in-A",
            TheoremId::OutsideFrattiniAbelianCentralizer => "outside-frattini-abelian-centralizer",
            TheoremId::SmallOrder => "small-order",
            TheoremId::Maxclass23 => "maxclass-23",
            TheoremId::AbelianMaximalImpliesA => "abelian-maximal-implies-A",
            TheoremId::MaxclassP1 => "maxclass-p1",
            TheoremId::ExponentP => "exponent-p",
        }
    }
}

impl std::str::FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremVerdict {
    Verified,
    Refuted,
    Vacuous,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterExample {
    pub group: String,
    pub descriptor: GroupDescriptor,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Direction {
    pub name: String,
    pub tested: usize,
    pub counterexamples: Vec<CounterExample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub id: String,
    pub corpus: String,
    /// Distinct corpus groups that matched at least one hypothesis filter.
    pub tested: usize,
    pub verdict: TheoremVerdict,
    pub counterexamples: Vec<CounterExample>,
    pub millis: u64,
    pub directions: Vec<Direction>,
    /// Groups skipped because a cap excluded some required computation.
    pub skipped: Vec<String>,
    pub incomplete: bool,
}

/// Per-group outcome: which directions it was tested in, any
/// counterexamples found, or a skip reason.
#[derive(Default)]
struct Partial {
    tested_dirs: Vec<usize>,
    counterexamples: Vec<(usize, CounterExample)>,
    skip: Option<String>,
}

impl Partial {
    fn skip(reason: String) -> Self {
        Partial {
            skip: Some(reason),
            ..Default::default()
        }
    }

    fn cex(&mut self, dir: usize, e: &CorpusEntry, detail: String) {
        self.counterexamples.push((
            dir,
            CounterExample {
                group: corpus::entry_name(e),
                descriptor: e.descriptor.clone(),
                detail,
            },
        ));
    }
}

fn membership_or_skip(e: &CorpusEntry, caps: &Caps) -> std::result::Result<Verdict, String> {
    match membership::is_a(&e.table, caps) {
        Ok(r) => Ok(r.verdict),
        Err(err) => Err(format!("{}: {err}", corpus::entry_name(e))),
    }
}

/// Maps the per-group check over the corpus in parallel (order preserved),
/// then folds the partial outcomes into per-direction reports.
fn run_with(
    corpus_obj: &Corpus,
    dir_names: &[&str],
    per_group: impl Fn(&CorpusEntry) -> Partial + Sync,
) -> (Vec<Direction>, Vec<String>, usize) {
    let partials: Vec<Partial> = corpus_obj
        .entries
        .par_iter()
        .map(&per_group)
        .collect();
    let mut dirs: Vec<(BTreeSet<usize>, Vec<CounterExample>)> =
        dir_names.iter().map(|_| (BTreeSet::new(), Vec::new())).collect();
    let mut skipped = Vec::new();
    let mut tested_union = BTreeSet::new();
    for (gi, p) in partials.into_iter().enumerate() {
        if let Some(reason) = p.skip {
            skipped.push(reason);
            continue;
        }
        for d in p.tested_dirs {
            dirs[d].0.insert(gi);
            tested_union.insert(gi);
        }
        for (d, cex) in p.counterexamples {
            dirs[d].1.push(cex);
        }
    }
    let directions = dir_names
        .iter()
        .zip(dirs)
        .map(|(name, (tested, counterexamples))| Direction {
            name: name.to_string(),
            tested: tested.len(),
            counterexamples,
        })
        .collect();
    (directions, skipped, tested_union.len())
}

/// Runs one registered theorem over a corpus.
pub fn verify(id: TheoremId, corpus_obj: &Corpus, caps: &Caps) -> Result<TheoremReport> {
    let started = Instant::now();
    let (directions, skipped, tested) = match id {
        TheoremId::CenterInNonabelian => check_center_in_nonabelian(corpus_obj, caps),
        TheoremId::ZInFrattini => check_z_in_frattini(corpus_obj, caps),
        TheoremId::Inverting => check_inverting(corpus_obj, caps),
        TheoremId::CriteriaEquivalence => check_criteria_equivalence(corpus_obj, caps),
        TheoremId::MinnonabClassification => check_minnonab_classification(corpus_obj, caps),
        TheoremId::MetacyclicInA => check_metacyclic_in_a(corpus_obj, caps),
        TheoremId::OutsideFrattiniAbelianCentralizer => check_outside_frattini(corpus_obj, caps),
        TheoremId::SmallOrder => check_small_order(corpus_obj, caps),
        TheoremId::Maxclass23 => check_maxclass_23(corpus_obj, caps),
        TheoremId::AbelianMaximalImpliesA => check_abelian_maximal(corpus_obj, caps),
        TheoremId::MaxclassP1 => check_maxclass_p1(corpus_obj, caps),
        TheoremId::ExponentP => check_exponent_p(corpus_obj, caps),
    };
    let counterexamples: Vec<CounterExample> = directions
        .iter()
        .flat_map(|d| d.counterexamples.iter().cloned())
        .collect();
    let verdict = if !counterexamples.is_empty() {
        TheoremVerdict::Refuted
    } else if tested == 0 {
        TheoremVerdict::Vacuous
    } else {
        TheoremVerdict::Verified
    };
    Ok(TheoremReport {
        id: id.id().to_string(),
        corpus: corpus_obj.description.clone(),
        tested,
        verdict,
        counterexamples,
        millis: started.elapsed().as_millis() as u64,
        directions,
        incomplete: !skipped.is_empty(),
        skipped,
    })
}

/// For every group in the class: the center lies in every non-abelian
/// subgroup.
fn check_center_in_nonabelian(c: &Corpus, caps: &Caps) -> (Vec<Direction>, Vec<String>, usize) {
    run_with(c, &["center-in-every-nonabelian-subgroup"], |e| {
        let mut p = Partial::default();
        match membership_or_skip(e, caps) {
            Err(reason) => return Partial::skip(reason),
            Ok(Verdict::NotInA) => return p,
            Ok(Verdict::InA) => {}
        }
        let inv = match enumerate::all_subgroups(&e.table, caps) {
            Ok(inv) => inv,
            Err(err) => return Partial::skip(format!("{}: {err}", corpus::entry_name(e))),
        };
        p.tested_dirs.push(0);
        let z = subgroup::center(&e.table);
        for h in inv.iter() {
            if subgroup::is_abelian_subset(&e.table, h) {
                continue;
            }
            if !z.is_subset_of(h) {
                p.cex(
                    0,
                    e,
                    format!(
                        "Z(G) of order {} escapes non-abelian subgroup of order {}",
                        z.order(),
                        h.order()
                    ),
                );
                break;
            }
        }
        p
    })
}

/// Non-abelian groups in the class have central quotient trapped in the
/// Frattini subgroup.
fn check_z_in_frattini(c: &Corpus, caps: &Caps) -> (Vec<Direction>, Vec<String>, usize) {
    run_with(c, &["center-below-frattini"], |e| {
        let mut p = Partial::default();
        if e.table.is_abelian() {
            return p;
        }
        match membership_or_skip(e, caps) {
            Err(reason) => return Partial::skip(reason),
            Ok(Verdict::NotInA) => return p,
            Ok(Verdict::InA) => {}
        }
        let phi = match subgroup::frattini(&e.table, caps) {
            Ok(phi) => phi,
            Err(err) => return Partial::skip(format!("{}: {err}", corpus::entry_name(e))),
        };
        p.tested_dirs.push(0);
        let z = subgroup::center(&e.table);
        if !z.is_subset_of(&phi) {
            p.cex(
                0,
                e,
                format!("|Z| = {} not inside |Phi| = {}", z.order(), phi.order()),
            );
        }
        p
    })
}

/// If `a` has odd order > 1 and `a^x = a^{-1}` in a group of the class,
/// then the order of `x` is a power of 2 and `C_G(<a,x>) = <x^2>`.
fn check_inverting(c: &Corpus, caps: &Caps) -> (Vec<Direction>, Vec<String>, usize) {
    run_with(c, &["inverter-order-power-of-2", "pair-centralizer-is-x-squared"], |e| {
        let mut p = Partial::default();
        match membership_or_skip(e, caps) {
            Err(reason) => return Partial::skip(reason),
            Ok(Verdict::NotInA) => return p,
            Ok(Verdict::InA) => {}
        }
        let g = &e.table;
        let n = g.order() as u32;
        let mut any = false;
        'outer: for a in 1..n {
            let oa = g.element_order(a);
            if oa % 2 == 0 || oa == 1 {
                continue;
            }
            for x in 0..n {
                if g.conjugate(a, x) != g.inv(a) {
                    continue;
                }
                any = true;
                let ox = g.element_order(x);
                if ox & (ox - 1) != 0 {
                    p.cex(0, e, format!("a = {a}, x = {x}: |x| = {ox} is not a 2-power"));
                    break 'outer;
                }
                let cent = subgroup::centralizer_of_elements(g, &[a, x]);
                let xsq = subgroup::generated_subgroup(g, &[g.mul(x, x)]).unwrap();
                if cent != xsq {
                    p.cex(
                        1,
                        e,
                        format!(
                            "a = {a}, x = {x}: |C(<a,x>)| = {} but |<x^2>| = {}",
                            cent.order(),
                            xsq.order()
                        ),
                    );
                    break 'outer;
                }
            }
        }
        if any {
            p.tested_dirs.push(0);
            p.tested_dirs.push(1);
        }
        p
    })
}

/// All applicable membership methods agree on every corpus group.
fn check_criteria_equivalence(c: &Corpus, caps: &Caps) -> (Vec<Direction>, Vec<String>, usize) {
    run_with(c, &["method-agreement"], |e| {
        let mut p = Partial::default();
        match membership::cross_check(&e.table, caps) {
            Ok(cc) => {
                if cc.reports.len() >= 2 {
                    p.tested_dirs.push(0);
                }
            }
            Err(Error::CapExceeded { .. }) => {
                return Partial::skip(format!("{}: all methods capped", corpus::entry_name(e)))
            }
            Err(err) => {
                p.tested_dirs.push(0);
                p.cex(0, e, err.to_string());
            }
        }
        p
    })
}

/// Every minimal non-abelian p-subgroup classifies as K1/K2/K3 and carries
/// the classified invariants.
fn check_minnonab_classification(c: &Corpus, caps: &Caps) -> (Vec<Direction>, Vec<String>, usize) {
    run_with(c, &["classification-and-invariants"], |e| {
        let mut p = Partial::default();
        let g = &e.table;
        let minimal = match enumerate::minimal_nonabelian_subgroups(g, caps) {
            Ok(m) => m,
            Err(err) => return Partial::skip(format!("{}: {err}", corpus::entry_name(e))),
        };
        let mut any = false;
        for k in &minimal {
            let Some((q, _)) = structure::prime_power(k.order() as usize) else {
                continue; // classification only covers p-groups
            };
            any = true;
            match enumerate::classify_minimal_nonabelian(g, k, q, caps) {
                Ok(enumerate::MinNonab::NotPGroup) => {
                    p.cex(0, e, format!("order {} subgroup misclassified", k.order()));
                }
                Ok(_) => {}
                Err(err) => {
                    p.cex(0, e, format!("classification failed: {err}"));
                }
            }
            let derived = subgroup::derived_subgroup(g, k);
            if derived.order() != q {
                p.cex(0, e, format!("|K'| = {} instead of {q}", derived.order()));
            }
            let res = subgroup::restriction(g, k);
            let phi = subgroup::frattini_fast_pgroup(&res.table, q).unwrap();
            if res.table.order() as u32 / phi.order() != q * q {
                p.cex(0, e, "d(K) != 2".to_string());
            }
            let z = subgroup::center(&res.table);
            let omega = subgroup::omega1(&res.table, &z, q).unwrap();
            let rank = enumerate::log_base(q, omega.order() as u64).unwrap_or(99);
            if !(1..=3).contains(&rank) {
                p.cex(0, e, format!("Omega1(Z(K)) has rank {rank}"));
            }
            if !p.counterexamples.is_empty() {
                break;
            }
        }
        if any {
            p.tested_dirs.push(0);
        }
        p
    })
}

/// Reduced metacyclic presentations land in the class and match the
/// predicted center generators.
fn check_metacyclic_in_a(c: &Corpus, caps: &Caps) -> (Vec<Direction>, Vec<String>, usize) {
    run_with(c, &["king-in-A", "king-center-formula"], |e| {
        let mut p = Partial::default();
        let GroupDescriptor::King { p: kp, m, n, s, c: kc, eps } = e.descriptor else {
            return p;
        };
        let kg = match families::king_metacyclic(&families::KingParameters {
            p: kp,
            m,
            n,
            s,
            c: kc,
            eps,
        }) {
            Ok(kg) => kg,
            Err(err) => return Partial::skip(format!("{}: {err}", corpus::entry_name(e))),
        };
        match membership_or_skip(e, caps) {
            Err(reason) => return Partial::skip(reason),
            Ok(v) => {
                p.tested_dirs.push(0);
                if v == Verdict::NotInA {
                    p.cex(0, e, "metacyclic p-group reported outside the class".into());
                }
            }
        }
        p.tested_dirs.push(1);
        let z = subgroup::center(&kg.table);
        let predicted = subgroup::generated_subgroup(&kg.table, &kg.center_gens).unwrap();
        if z != predicted {
            p.cex(
                1,
                e,
                format!(
                    "center order {} != predicted <a^(p^{}), b^(p^{})> of order {}",
                    z.order(),
                    kg.u,
                    kg.v,
                    predicted.order()
                ),
            );
        }
        p
    })
}

/// In a p-group of the class, elements outside the Frattini subgroup have
/// abelian centralizers.
fn check_outside_frattini(c: &Corpus, caps: &Caps) -> (Vec<Direction>, Vec<String>, usize) {
    run_with(c, &["outside-frattini-abelian-centralizer"], |e| {
        let mut p = Partial::default();
        let g = &e.table;
        let Some((q, _)) = structure::prime_power(g.order()) else {
            return p;
        };
        match membership_or_skip(e, caps) {
            Err(reason) => return Partial::skip(reason),
            Ok(Verdict::NotInA) => return p,
            Ok(Verdict::InA) => {}
        }
        p.tested_dirs.push(0);
        if g.is_abelian() {
            return p; // all centralizers are G itself
        }
        let phi = subgroup::frattini_fast_pgroup(g, q).unwrap();
        for x in 0..g.order() as u32 {
            if phi.contains(x) {
                continue;
            }
            let cent = subgroup::centralizer_of_elements(g, &[x]);
            if !subgroup::is_abelian_subset(g, &cent) {
                p.cex(0, e, format!("C_G({x}) of order {} is non-abelian", cent.order()));
                break;
            }
        }
        p
    })
}

/// Orders p..p^3 lie in the class; order p^4 lies in the class iff abelian,
/// maximal class, or `Phi = Z`.
fn check_small_order(c: &Corpus, caps: &Caps) -> (Vec<Direction>, Vec<String>, usize) {
    run_with(
        c,
        &["orders-up-to-p3-in-A", "p4-sufficient", "p4-necessary"],
        |e| {
            let mut p = Partial::default();
            let g = &e.table;
            let Some((q, k)) = structure::prime_power(g.order()) else {
                return p;
            };
            let verdict = match membership_or_skip(e, caps) {
                Err(reason) => return Partial::skip(reason),
                Ok(v) => v,
            };
            if k <= 3 {
                p.tested_dirs.push(0);
                if verdict == Verdict::NotInA {
                    p.cex(0, e, format!("group of order {q}^{k} outside the class"));
                }
            } else if k == 4 {
                let condition = g.is_abelian()
                    || structure::is_maximal_class(g, q).unwrap()
                    || subgroup::frattini_fast_pgroup(g, q).unwrap() == subgroup::center(g);
                if condition {
                    p.tested_dirs.push(1);
                    if verdict == Verdict::NotInA {
                        p.cex(1, e, "abelian/maximal-class/Phi=Z group outside the class".into());
                    }
                }
                if verdict == Verdict::InA {
                    p.tested_dirs.push(2);
                    if !condition {
                        p.cex(
                            2,
                            e,
                            "in the class but neither abelian, maximal class, nor Phi=Z".into(),
                        );
                    }
                }
            }
            p
        },
    )
}

/// 2-groups and 3-groups of maximal class lie in the class.
fn check_maxclass_23(c: &Corpus, caps: &Caps) -> (Vec<Direction>, Vec<String>, usize) {
    run_with(c, &["maxclass-2-3-in-A"], |e| {
        let mut p = Partial::default();
        let g = &e.table;
        let Some((q, _)) = structure::prime_power(g.order()) else {
            return p;
        };
        if q != 2 && q != 3 {
            return p;
        }
        if !structure::is_maximal_class(g, q).unwrap() {
            return p;
        }
        match membership_or_skip(e, caps) {
            Err(reason) => return Partial::skip(reason),
            Ok(v) => {
                p.tested_dirs.push(0);
                if v == Verdict::NotInA {
                    p.cex(0, e, format!("maximal-class {q}-group outside the class"));
                }
            }
        }
        p
    })
}

/// A maximal-class p-group with an abelian maximal subgroup lies in the
/// class.
fn check_abelian_maximal(c: &Corpus, caps: &Caps) -> (Vec<Direction>, Vec<String>, usize) {
    run_with(c, &["abelian-maximal-implies-in-A"], |e| {
        let mut p = Partial::default();
        let g = &e.table;
        let Some((q, _)) = structure::prime_power(g.order()) else {
            return p;
        };
        if !structure::is_maximal_class(g, q).unwrap() {
            return p;
        }
        let maximal = match enumerate::maximal_subgroups_pgroup(g, q) {
            Ok(m) => m,
            Err(err) => return Partial::skip(format!("{}: {err}", corpus::entry_name(e))),
        };
        if !maximal.iter().any(|m| subgroup::is_abelian_subset(g, m)) {
            return p;
        }
        match membership_or_skip(e, caps) {
            Err(reason) => return Partial::skip(reason),
            Ok(v) => {
                p.tested_dirs.push(0);
                if v == Verdict::NotInA {
                    p.cex(0, e, "abelian maximal subgroup but outside the class".into());
                }
            }
        }
        p
    })
}

/// For `p >= 5` and order `p^n >= p^4` of maximal class: membership in the
/// class is equivalent to the 2-step centralizer being abelian.
fn check_maxclass_p1(c: &Corpus, caps: &Caps) -> (Vec<Direction>, Vec<String>, usize) {
    run_with(
        c,
        &["abelian-p1-implies-in-A", "nonabelian-p1-implies-not-in-A"],
        |e| {
            let mut p = Partial::default();
            let g = &e.table;
            let Some((q, k)) = structure::prime_power(g.order()) else {
                return p;
            };
            if q < 5 || k < 4 || !structure::is_maximal_class(g, q).unwrap() {
                return p;
            }
            let p1 = structure::two_step_centralizer(g).unwrap();
            let abelian_p1 = subgroup::is_abelian_subset(g, &p1);
            let verdict = match membership_or_skip(e, caps) {
                Err(reason) => return Partial::skip(reason),
                Ok(v) => v,
            };
            if abelian_p1 {
                p.tested_dirs.push(0);
                if verdict == Verdict::NotInA {
                    p.cex(0, e, "abelian P1 but outside the class".into());
                }
            } else {
                p.tested_dirs.push(1);
                if verdict == Verdict::InA {
                    p.cex(1, e, "non-abelian P1 but inside the class".into());
                }
            }
            p
        },
    )
}

/// Exponent-p groups in the class are elementary abelian, or have order at
/// most `p^p`, maximal class, and an elementary abelian maximal subgroup.
fn check_exponent_p(c: &Corpus, caps: &Caps) -> (Vec<Direction>, Vec<String>, usize) {
    run_with(c, &["exponent-p-trichotomy"], |e| {
        let mut p = Partial::default();
        let g = &e.table;
        let Some(q) = corpus::is_exponent_p(g) else {
            return p;
        };
        match membership_or_skip(e, caps) {
            Err(reason) => return Partial::skip(reason),
            Ok(Verdict::NotInA) => return p,
            Ok(Verdict::InA) => {}
        }
        p.tested_dirs.push(0);
        if structure::is_elementary_abelian(g, q) {
            return p;
        }
        let small_enough = (g.order() as u64) <= (q as u64).pow(q);
        let mc = structure::is_maximal_class(g, q).unwrap();
        let ea_max = structure::has_elementary_abelian_maximal(g, q).unwrap();
        if !(small_enough && mc && ea_max) {
            p.cex(
                0,
                e,
                format!(
                    "exponent-{q} group in the class violates the trichotomy \
                     (order <= p^p: {small_enough}, maximal class: {mc}, \
                     elementary abelian maximal: {ea_max})"
                ),
            );
        }
        p
    })
}

/// Scope flags carried from the CLI to the default corpus builder.
#[derive(Clone, Copy, Debug, Default)]
pub struct Scope {
    pub p: Option<u32>,
    pub n: Option<u32>,
    pub max_order: Option<u64>,
}

/// Builds the default corpus each theorem is verified over when the caller
/// does not pass one explicitly.
pub fn default_corpus(id: TheoremId, scope: &Scope, caps: &Caps) -> Result<Corpus> {
    let primes = |fallback: Vec<u32>| -> Vec<u32> {
        scope.p.map(|p| vec![p]).unwrap_or(fallback)
    };
    match id {
        TheoremId::CenterInNonabelian
        | TheoremId::ZInFrattini
        | TheoremId::CriteriaEquivalence => {
            corpus::standard_corpus(scope.max_order.unwrap_or(128), caps)
        }
        TheoremId::Inverting => corpus::mixed_corpus(caps),
        TheoremId::MinnonabClassification => {
            let max = scope.max_order.unwrap_or(256);
            let mut descriptors = corpus::k2_descriptors(&primes(vec![2, 3, 5]), max);
            descriptors.extend(corpus::k3_descriptors(&primes(vec![2, 3, 5]), max));
            descriptors.push(GroupDescriptor::Quaternion { k: 3 });
            descriptors.extend(corpus::product_descriptors(max.min(100)));
            Corpus::from_descriptors("minimal non-abelian assortment", descriptors, caps)
        }
        TheoremId::MetacyclicInA => {
            let max = scope.max_order.unwrap_or(625);
            let descriptors = corpus::king_descriptors(&primes(vec![2, 3, 5]), max);
            Corpus::from_descriptors(
                format!("king metacyclic grid, order <= {max}"),
                descriptors,
                caps,
            )
        }
        TheoremId::OutsideFrattiniAbelianCentralizer => {
            corpus::standard_corpus(scope.max_order.unwrap_or(128), caps)
        }
        TheoremId::SmallOrder => {
            let mut entries = Vec::new();
            if scope.p.is_none() || scope.p == Some(2) {
                entries.extend(corpus::order16_corpus(caps)?.entries);
            }
            if scope.p.is_none() || scope.p == Some(3) {
                entries.extend(corpus::order81_corpus(caps)?.entries);
            }
            let mut descriptors: Vec<GroupDescriptor> = Vec::new();
            for p in primes(vec![2, 3, 5]) {
                for k in 1..=3u32 {
                    descriptors.push(GroupDescriptor::ElementaryAbelian { p, k });
                    descriptors.push(GroupDescriptor::Cyclic { n: (p as u64).pow(k) });
                }
            }
            let mut corpus_obj =
                Corpus::from_descriptors("small p-power orders", descriptors, caps)?;
            corpus_obj.entries.extend(entries);
            Ok(corpus_obj)
        }
        TheoremId::Maxclass23 => corpus::maxclass_corpus(
            &primes(vec![2, 3]),
            scope.max_order.unwrap_or(128),
            caps,
        ),
        TheoremId::AbelianMaximalImpliesA => corpus::maxclass_corpus(
            &primes(vec![2, 3, 5]),
            scope.max_order.unwrap_or(625),
            caps,
        ),
        TheoremId::MaxclassP1 => {
            let max = match scope.n {
                Some(n) => (5u64).pow(n),
                None => scope.max_order.unwrap_or(3125),
            };
            corpus::maxclass_corpus(&primes(vec![5]), max, caps)
        }
        TheoremId::ExponentP => corpus::exponent_p_corpus(caps),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_matches_the_claim_list() {
        let ids: Vec<&str> = TheoremId::ALL.iter().map(|t| t.id()).collect();
        assert_eq!(
            ids,
            vec![
                "center-in-nonabelian",
                "z-in-frattini",
                "inverting",
                "criteria-equivalence",
                "minnonab-classification",
                "metacyclic-in-A",
                "outside-frattini-abelian-centralizer",
                "small-order",
                "maxclass-23",
                "abelian-maximal-implies-A",
                "maxclass-p1",
                "exponent-p",
            ]
        );
        assert!("bogus-theorem".parse::<TheoremId>().is_err());
        assert_eq!(
            "maxclass-p1".parse::<TheoremId>().unwrap(),
            TheoremId::MaxclassP1
        );
    }

    #[test]
    fn inverting_holds_on_the_mixed_corpus() {
        let caps = Caps::default();
        let corpus_obj = corpus::mixed_corpus(&caps).unwrap();
        let report = verify(TheoremId::Inverting, &corpus_obj, &caps).unwrap();
        assert_eq!(report.verdict, TheoremVerdict::Verified, "{report:?}");
        assert!(report.tested >= 2, "S3 and S4 must exercise the law");
    }

    #[test]
    fn z_in_frattini_holds_on_small_corpus() {
        let caps = Caps::default();
        let corpus_obj = corpus::standard_corpus(64, &caps).unwrap();
        let report = verify(TheoremId::ZInFrattini, &corpus_obj, &caps).unwrap();
        assert_eq!(report.verdict, TheoremVerdict::Verified, "{report:?}");
    }

    #[test]
    fn small_order_three_directions() {
        let caps = Caps::default();
        let corpus_obj = default_corpus(TheoremId::SmallOrder, &Scope::default(), &caps).unwrap();
        let report = verify(TheoremId::SmallOrder, &corpus_obj, &caps).unwrap();
        assert_eq!(report.verdict, TheoremVerdict::Verified, "{report:?}");
        assert_eq!(report.directions.len(), 3);
        for d in &report.directions {
            assert!(d.tested > 0, "direction {} is vacuous", d.name);
        }
    }

    #[test]
    fn maxclass_p1_is_vacuous_at_p3() {
        let caps = Caps::default();
        let corpus_obj = corpus::maxclass_corpus(&[3], 81, &caps).unwrap();
        let report = verify(TheoremId::MaxclassP1, &corpus_obj, &caps).unwrap();
        assert_eq!(report.verdict, TheoremVerdict::Vacuous);
        assert!(report.directions.iter().all(|d| d.tested == 0));
    }

    #[test]
    fn verified_report_reverifies_from_serialized_descriptors_alone() {
        let caps = Caps::default();
        let corpus_obj = corpus::maxclass_corpus(&[2], 64, &caps).unwrap();
        let first = verify(TheoremId::Maxclass23, &corpus_obj, &caps).unwrap();
        assert_eq!(first.verdict, TheoremVerdict::Verified);

        // round-trip the descriptors through JSON and rebuild everything
        let wire = serde_json::to_string(
            &corpus_obj.entries.iter().map(|e| &e.descriptor).collect::<Vec<_>>(),
        )
        .unwrap();
        let descriptors: Vec<GroupDescriptor> = serde_json::from_str(&wire).unwrap();
        let rebuilt = corpus::Corpus::from_descriptors("rebuilt", descriptors, &caps).unwrap();
        let second = verify(TheoremId::Maxclass23, &rebuilt, &caps).unwrap();
        assert_eq!(second.verdict, first.verdict);
        assert_eq!(second.tested, first.tested);
    }

    #[test]
    fn cap_exhaustion_yields_partial_report_flagged_incomplete() {
        let caps = Caps {
            pair_order: 8,
            ..Caps::default()
        };
        // D12 is non-abelian and not a p-group, so its membership test needs
        // the pair scan, which the cap blocks
        let descriptors = vec![GroupDescriptor::Direct {
            left: Box::new(GroupDescriptor::Cyclic { n: 2 }),
            right: Box::new(GroupDescriptor::Semidirect {
                normal: Box::new(GroupDescriptor::Cyclic { n: 3 }),
                acting: Box::new(GroupDescriptor::Cyclic { n: 2 }),
                action: crate::families::ActionDescriptor::Named("inversion".into()),
            }),
        }];
        let corpus_obj = corpus::Corpus::from_descriptors("capped", descriptors, &caps).unwrap();
        let report = verify(TheoremId::ZInFrattini, &corpus_obj, &caps).unwrap();
        assert!(report.incomplete);
        assert_eq!(report.skipped.len(), 1);
        assert_eq!(report.verdict, TheoremVerdict::Vacuous);
    }

    #[test]
    fn report_serialization_field_names() {
        let caps = Caps::default();
        let corpus_obj = corpus::maxclass_corpus(&[3], 81, &caps).unwrap();
        let report = verify(TheoremId::Maxclass23, &corpus_obj, &caps).unwrap();
        let v = serde_json::to_value(&report).unwrap();
        for field in ["id", "corpus", "tested", "verdict", "counterexamples", "millis"] {
            assert!(v.get(field).is_some(), "missing field {field}");
        }
        assert_eq!(v["verdict"], "verified");
    }
}
