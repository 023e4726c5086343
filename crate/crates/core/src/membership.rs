//! Four independent algorithms deciding whether a finite group lies in the
//! class 𝒜 (every non-abelian subgroup contains its centralizer), each
//! producing a witness on a negative verdict that is re-checkable from the
//! multiplication table alone, plus a cross-check mode asserting pairwise
//! agreement.
//!
//! The methods rest on different characterizations:
//!
//! * `bruteforce` — the definition, quantified over the full subgroup
//!   inventory;
//! * `pairs` — `G` is in 𝒜 iff `C_G(<x,y>) < <x,y>` for every
//!   non-commuting pair `x, y`;
//! * `minimal` — iff `C_G(K) < K` for every minimal non-abelian `K <= G`;
//! * `recursive` — a non-abelian `G` is in 𝒜 iff all its maximal subgroups
//!   are and `Z(G) <= Phi(G)`.
//!
//! These equivalences are theorems, so any disagreement is an
//! implementation bug and is reported as a fatal diagnostic.

use std::collections::HashMap;
use std::time::Instant;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::enumerate;
use crate::error::{Error, Result};
use crate::structure;
use crate::subgroup::{self, SubgroupSet};
use crate::table::GroupTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Bruteforce,
    Pairs,
    Minimal,
    Recursive,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Bruteforce,
        Method::Pairs,
        Method::Minimal,
        Method::Recursive,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Bruteforce => "bruteforce",
            Method::Pairs => "pairs",
            Method::Minimal => "minimal",
            Method::Recursive => "recursive",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bruteforce" => Ok(Method::Bruteforce),
            "pairs" => Ok(Method::Pairs),
            "minimal" => Ok(Method::Minimal),
            "recursive" => Ok(Method::Recursive),
            other => Err(Error::input(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    InA,
    NotInA,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::InA => "in-A",
            Verdict::NotInA => "not-in-A",
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// A non-abelian subgroup `H` together with an element `z` that centralizes
/// `H` without lying in it.
#[derive(Clone, Debug)]
pub struct Witness {
    pub subgroup: SubgroupSet,
    pub element: u32,
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Witness", 2)?;
        st.serialize_field("subgroup", &self.subgroup.elements())?;
        st.serialize_field("element", &self.element)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct MembershipStats {
    /// Subgroups or pairs examined, depending on the method.
    pub examined: u64,
    pub micros: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipReport {
    pub group: String,
    pub order: usize,
    pub verdict: Verdict,
    pub method: Method,
    pub witness: Option<Witness>,
    pub stats: MembershipStats,
}

impl MembershipReport {
    fn finish(
        g: &GroupTable,
        method: Method,
        verdict: Verdict,
        witness: Option<Witness>,
        examined: u64,
        started: Instant,
    ) -> Self {
        debug_assert_eq!(verdict == Verdict::NotInA, witness.is_some());
        MembershipReport {
            group: g.name().to_string(),
            order: g.order(),
            verdict,
            method,
            witness,
            stats: MembershipStats {
                examined,
                micros: started.elapsed().as_micros() as u64,
            },
        }
    }
}

/// Re-checks a witness from the table alone: the subgroup is non-abelian,
/// the element centralizes all of it, and the element lies outside.
pub fn validate_witness(g: &GroupTable, w: &Witness) -> std::result::Result<(), String> {
    let elems = w.subgroup.elements();
    if subgroup::is_abelian_subset(g, &w.subgroup) {
        return Err("witness subgroup is abelian".into());
    }
    if w.subgroup.contains(w.element) {
        return Err(format!("witness element {} lies in the subgroup", w.element));
    }
    for &h in &elems {
        if g.mul(w.element, h) != g.mul(h, w.element) {
            return Err(format!(
                "witness element {} does not commute with {h}",
                w.element
            ));
        }
    }
    // and it must actually be a subgroup
    for &a in &elems {
        for &b in &elems {
            if !w.subgroup.contains(g.mul(a, b)) {
                return Err(format!("witness set is not closed: {a}*{b} escapes"));
            }
        }
    }
    Ok(())
}

/// Definitional test over the full subgroup inventory (capped).
pub fn is_a_bruteforce(g: &GroupTable, caps: &Caps) -> Result<MembershipReport> {
    let started = Instant::now();
    let inventory = enumerate::all_subgroups(g, caps)?;
    let mut examined = 0u64;
    for h in inventory.iter() {
        examined += 1;
        if subgroup::is_abelian_subset(g, h) {
            continue;
        }
        let c = subgroup::centralizer(g, h);
        if let Some(z) = c.first_not_in(h) {
            let witness = Witness {
                subgroup: h.clone(),
                element: z,
            };
            return Ok(MembershipReport::finish(
                g,
                Method::Bruteforce,
                Verdict::NotInA,
                Some(witness),
                examined,
                started,
            ));
        }
    }
    Ok(MembershipReport::finish(
        g,
        Method::Bruteforce,
        Verdict::InA,
        None,
        examined,
        started,
    ))
}

/// Scan of non-commuting pairs `(x, y)` in lexicographic order, testing
/// `C_G(<x,y>) <= <x,y>`. Containment plus the subgroup being non-abelian
/// forces the strict inequality of the criterion; the non-abelian part is
/// asserted rather than assumed.
pub fn is_a_pairs(g: &GroupTable, caps: &Caps) -> Result<MembershipReport> {
    let started = Instant::now();
    let n = g.order();
    if n > caps.pair_order {
        return Err(Error::CapExceeded {
            what: "pair-criterion scan",
            cap: caps.pair_order,
            order: n,
        });
    }
    let mut examined = 0u64;
    for x in 1..n as u32 {
        for y in (x + 1)..n as u32 {
            if g.mul(x, y) == g.mul(y, x) {
                continue;
            }
            examined += 1;
            let h = subgroup::generated_arc(g, &[x, y]);
            assert!(
                !subgroup::is_abelian_subset(g, &h),
                "subgroup generated by a non-commuting pair cannot be abelian"
            );
            for z in 0..n as u32 {
                if g.mul(z, x) == g.mul(x, z) && g.mul(z, y) == g.mul(y, z) && !h.contains(z) {
                    let witness = Witness {
                        subgroup: (*h).clone(),
                        element: z,
                    };
                    return Ok(MembershipReport::finish(
                        g,
                        Method::Pairs,
                        Verdict::NotInA,
                        Some(witness),
                        examined,
                        started,
                    ));
                }
            }
        }
    }
    Ok(MembershipReport::finish(
        g,
        Method::Pairs,
        Verdict::InA,
        None,
        examined,
        started,
    ))
}

/// Scan restricted to minimal non-abelian subgroups.
pub fn is_a_minimal(g: &GroupTable, caps: &Caps) -> Result<MembershipReport> {
    let started = Instant::now();
    let minimal = enumerate::minimal_nonabelian_subgroups(g, caps)?;
    let mut examined = 0u64;
    for k in &minimal {
        examined += 1;
        let c = subgroup::centralizer(g, k);
        if let Some(z) = c.first_not_in(k) {
            let witness = Witness {
                subgroup: k.clone(),
                element: z,
            };
            return Ok(MembershipReport::finish(
                g,
                Method::Minimal,
                Verdict::NotInA,
                Some(witness),
                examined,
                started,
            ));
        }
    }
    Ok(MembershipReport::finish(
        g,
        Method::Minimal,
        Verdict::InA,
        None,
        examined,
        started,
    ))
}

type Outcome = (Verdict, Option<Witness>);

/// Recursive test: abelian groups are in 𝒜; otherwise all maximal
/// subgroups must be in 𝒜 and `Z(G) <= Phi(G)`. Verdicts are memoized on
/// the absolute element set within one top-level call.
pub fn is_a_recursive(g: &GroupTable, caps: &Caps) -> Result<MembershipReport> {
    let started = Instant::now();
    let mut memo: HashMap<BitSet, Outcome> = HashMap::new();
    let mut examined = 0u64;
    let abs: Vec<u32> = (0..g.order() as u32).collect();
    let (verdict, witness) = recursive_inner(g, &abs, g.order(), caps, &mut memo, &mut examined)?;
    Ok(MembershipReport::finish(
        g,
        Method::Recursive,
        verdict,
        witness,
        examined,
        started,
    ))
}

fn recursive_inner(
    local: &GroupTable,
    abs: &[u32],
    top_order: usize,
    caps: &Caps,
    memo: &mut HashMap<BitSet, Outcome>,
    examined: &mut u64,
) -> Result<Outcome> {
    let mut key = BitSet::new(top_order);
    for &a in abs {
        key.insert(a as usize);
    }
    if let Some(hit) = memo.get(&key) {
        return Ok(hit.clone());
    }
    *examined += 1;

    let outcome: Outcome = if local.is_abelian() {
        (Verdict::InA, None)
    } else {
        let maximal = enumerate::maximal_subgroups(local, caps)?;
        let mut failure: Option<Witness> = None;
        for m in &maximal {
            let res = subgroup::restriction(local, m);
            let sub_abs: Vec<u32> = res.to_parent.iter().map(|&i| abs[i as usize]).collect();
            let (verdict, witness) =
                recursive_inner(&res.table, &sub_abs, top_order, caps, memo, examined)?;
            if verdict == Verdict::NotInA {
                failure = witness;
                break;
            }
        }
        if let Some(w) = failure {
            (Verdict::NotInA, Some(w))
        } else {
            let z = subgroup::center(local);
            let phi = subgroup::frattini(local, caps)?;
            if z.is_subset_of(&phi) {
                (Verdict::InA, None)
            } else {
                // some maximal subgroup misses the center; it must be
                // non-abelian, else M Z(G) = G would make G abelian
                let maximal = enumerate::maximal_subgroups(local, caps)?;
                let m = maximal
                    .iter()
                    .find(|m| !z.is_subset_of(m))
                    .expect("Z not in Phi means Z escapes some maximal subgroup");
                assert!(
                    !subgroup::is_abelian_subset(local, m),
                    "a maximal subgroup missing the center must be non-abelian"
                );
                let zel = z.first_not_in(m).unwrap();
                let mut bits = BitSet::new(top_order);
                for i in m.iter() {
                    bits.insert(abs[i as usize] as usize);
                }
                let witness = Witness {
                    subgroup: SubgroupSet::from_bits(bits, top_order, None),
                    element: abs[zel as usize],
                };
                (Verdict::NotInA, Some(witness))
            }
        }
    };
    memo.insert(key, outcome.clone());
    Ok(outcome)
}

/// Parallel, early-exiting variant of the pair scan. Same verdict as
/// [`is_a_pairs`], but the witness may be any failing pair rather than the
/// lexicographically least, and the examined count is approximate. This is
/// the opt-in fast mode; the deterministic scan is the default.
pub fn is_a_pairs_fast(g: &GroupTable, caps: &Caps) -> Result<MembershipReport> {
    use rayon::prelude::*;
    use std::sync::atomic::{AtomicU64, Ordering};
    let started = Instant::now();
    let n = g.order();
    if n > caps.pair_order {
        return Err(Error::CapExceeded {
            what: "pair-criterion scan",
            cap: caps.pair_order,
            order: n,
        });
    }
    let examined = AtomicU64::new(0);
    let witness = (1..n as u32).into_par_iter().find_map_any(|x| {
        for y in (x + 1)..n as u32 {
            if g.mul(x, y) == g.mul(y, x) {
                continue;
            }
            examined.fetch_add(1, Ordering::Relaxed);
            let h = subgroup::generated_arc(g, &[x, y]);
            for z in 0..n as u32 {
                if g.mul(z, x) == g.mul(x, z) && g.mul(z, y) == g.mul(y, z) && !h.contains(z) {
                    return Some(Witness {
                        subgroup: (*h).clone(),
                        element: z,
                    });
                }
            }
        }
        None
    });
    let verdict = if witness.is_some() {
        Verdict::NotInA
    } else {
        Verdict::InA
    };
    Ok(MembershipReport::finish(
        g,
        Method::Pairs,
        verdict,
        witness,
        examined.load(Ordering::Relaxed),
        started,
    ))
}

/// Default method selection: maximal-subgroup recursion for p-groups, the
/// pair criterion otherwise.
pub fn is_a(g: &GroupTable, caps: &Caps) -> Result<MembershipReport> {
    if structure::prime_power(g.order()).is_some() || g.order() == 1 {
        is_a_recursive(g, caps)
    } else {
        is_a_pairs(g, caps)
    }
}

pub fn run_method(g: &GroupTable, method: Method, caps: &Caps) -> Result<MembershipReport> {
    match method {
        Method::Bruteforce => is_a_bruteforce(g, caps),
        Method::Pairs => is_a_pairs(g, caps),
        Method::Minimal => is_a_minimal(g, caps),
        Method::Recursive => is_a_recursive(g, caps),
    }
}

/// Result of running every applicable method on one group.
#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub group: String,
    pub order: usize,
    pub verdict: Verdict,
    pub reports: Vec<MembershipReport>,
    /// Methods skipped because a cap excluded them, with the reason.
    pub skipped: Vec<(Method, String)>,
}

/// Runs every method whose caps admit the group, asserts that all verdicts
/// coincide, and reports per-method timings. Every negative witness is
/// re-validated against the table. Disagreement is a fatal diagnostic.
pub fn cross_check(g: &GroupTable, caps: &Caps) -> Result<CrossCheck> {
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for method in Method::ALL {
        match run_method(g, method, caps) {
            Ok(report) => {
                if let Some(w) = &report.witness {
                    if let Err(msg) = validate_witness(g, w) {
                        return Err(Error::MethodDisagreement {
                            group: g.name().to_string(),
                            details: format!("method {} produced an invalid witness: {msg}", method.name()),
                        });
                    }
                }
                reports.push(report);
            }
            Err(Error::CapExceeded { what, cap, order }) => {
                skipped.push((method, format!("{what}: order {order} over cap {cap}")));
            }
            Err(other) => return Err(other),
        }
    }
    if reports.is_empty() {
        return Err(Error::CapExceeded {
            what: "cross-check (all methods capped out)",
            cap: caps.enum_order.max(caps.pair_order),
            order: g.order(),
        });
    }
    let verdict = reports[0].verdict;
    if reports.iter().any(|r| r.verdict != verdict) {
        let mut details = String::new();
        for r in &reports {
            details.push_str(&format!(
                "\n  method {} says {}",
                r.method.name(),
                r.verdict.as_str()
            ));
            if let Some(w) = &r.witness {
                details.push_str(&format!(
                    " with witness H = {:?}, z = {}",
                    w.subgroup.elements(),
                    w.element
                ));
            }
        }
        if g.order() <= 256 {
            details.push_str("\n  multiplication table:\n");
            let mut buf = Vec::new();
            g.write_tbl(&mut buf).ok();
            details.push_str(&String::from_utf8_lossy(&buf));
        } else {
            details.push_str("\n  (table omitted, order > 256)");
        }
        return Err(Error::MethodDisagreement {
            group: g.name().to_string(),
            details,
        });
    }
    Ok(CrossCheck {
        group: g.name().to_string(),
        order: g.order(),
        verdict,
        reports,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::product::direct_product;

    fn caps() -> Caps {
        Caps::default()
    }

    fn q8() -> GroupTable {
        families::generalized_quaternion(8).unwrap()
    }

    fn d12() -> GroupTable {
        let mut g =
            direct_product(&families::cyclic(2).unwrap(), &families::symmetric3()).unwrap();
        g.set_name("D12");
        g
    }

    #[test]
    fn abelian_groups_are_in_a_by_all_methods() {
        for g in [
            families::cyclic(1).unwrap(),
            families::cyclic(12).unwrap(),
            families::elementary_abelian(2, 3).unwrap(),
            families::abelian(&[9, 3]).unwrap(),
        ] {
            for method in Method::ALL {
                let r = run_method(&g, method, &caps()).unwrap();
                assert_eq!(r.verdict, Verdict::InA, "{} via {:?}", g.name(), method);
                assert!(r.witness.is_none());
            }
        }
    }

    #[test]
    fn q8_is_in_a_by_all_methods() {
        let g = q8();
        for method in Method::ALL {
            let r = run_method(&g, method, &caps()).unwrap();
            assert_eq!(r.verdict, Verdict::InA);
        }
    }

    #[test]
    fn d12_is_not_in_a_with_an_s3_witness() {
        let g = d12();
        let r = is_a_bruteforce(&g, &caps()).unwrap();
        assert_eq!(r.verdict, Verdict::NotInA);
        let w = r.witness.unwrap();
        assert_eq!(w.subgroup.order(), 6, "witness is an S3 copy");
        assert_eq!(g.element_order(w.element), 2, "z is the central involution");
        validate_witness(&g, &w).unwrap();

        for method in [Method::Pairs, Method::Minimal, Method::Recursive] {
            let r = run_method(&g, method, &caps()).unwrap();
            assert_eq!(r.verdict, Verdict::NotInA, "via {method:?}");
            validate_witness(&g, &r.witness.unwrap()).unwrap();
        }
    }

    #[test]
    fn k2_27_is_in_a_via_pairs() {
        let g = families::minimal_nonabelian_k2(3, 2, 1).unwrap();
        let r = is_a_pairs(&g, &caps()).unwrap();
        assert_eq!(r.verdict, Verdict::InA);
        assert!(r.stats.examined > 0);
    }

    #[test]
    fn king_groups_are_in_a_via_minimal() {
        let kg = families::king_metacyclic(&families::KingParameters {
            p: 3,
            m: 2,
            n: 2,
            s: 1,
            c: 1,
            eps: 1,
        })
        .unwrap();
        let r = is_a_minimal(&kg.table, &caps()).unwrap();
        assert_eq!(r.verdict, Verdict::InA);
    }

    #[test]
    fn c3_times_heisenberg_fails_with_valid_witness() {
        let h = families::minimal_nonabelian_k3(3, 1, 1).unwrap();
        let mut g = direct_product(&families::cyclic(3).unwrap(), &h).unwrap();
        g.set_name("C3xH27");

        let r = is_a_minimal(&g, &caps()).unwrap();
        assert_eq!(r.verdict, Verdict::NotInA);
        let w = r.witness.unwrap();
        assert_eq!(w.subgroup.order(), 27, "witness is a Heisenberg copy");
        validate_witness(&g, &w).unwrap();

        // recursive method sees Z(G) escaping Phi(G)
        let r = is_a_recursive(&g, &caps()).unwrap();
        assert_eq!(r.verdict, Verdict::NotInA);
        validate_witness(&g, &r.witness.unwrap()).unwrap();

        let z = subgroup::center(&g);
        let phi = subgroup::frattini(&g, &caps()).unwrap();
        assert_eq!(z.order(), 9);
        assert_eq!(phi.order(), 3);
        assert!(!z.is_subset_of(&phi));
    }

    #[test]
    fn d16_is_in_a_recursively() {
        let g = families::dihedral(16).unwrap();
        let r = is_a_recursive(&g, &caps()).unwrap();
        assert_eq!(r.verdict, Verdict::InA);
        assert!(r.stats.examined > 1);
    }

    #[test]
    fn cross_check_agreement() {
        let cc = cross_check(&q8(), &caps()).unwrap();
        assert_eq!(cc.verdict, Verdict::InA);
        assert_eq!(cc.reports.len(), 4, "all four methods ran");

        let cc = cross_check(&d12(), &caps()).unwrap();
        assert_eq!(cc.verdict, Verdict::NotInA);
        assert_eq!(cc.reports.len(), 4);
    }

    #[test]
    fn cross_check_random_abelian_groups() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20260810);
        for _ in 0..10 {
            let mut factors = Vec::new();
            let mut product = 1u64;
            loop {
                let f = rng.random_range(2u64..=8);
                if product * f > 64 {
                    break;
                }
                product *= f;
                factors.push(f);
                if factors.len() >= 4 {
                    break;
                }
            }
            if factors.is_empty() {
                factors.push(2);
            }
            let g = families::abelian(&factors).unwrap();
            let cc = cross_check(&g, &caps()).unwrap();
            assert_eq!(cc.verdict, Verdict::InA, "{factors:?}");
        }
    }

    #[test]
    fn deterministic_witnesses() {
        let g = d12();
        let a = is_a_pairs(&g, &caps()).unwrap();
        let b = is_a_pairs(&g, &caps()).unwrap();
        let (wa, wb) = (a.witness.unwrap(), b.witness.unwrap());
        assert_eq!(wa.subgroup, wb.subgroup);
        assert_eq!(wa.element, wb.element);
    }

    #[test]
    fn report_serializes_with_stable_field_names() {
        let g = d12();
        let r = is_a_pairs(&g, &caps()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["verdict"], "not-in-A");
        assert_eq!(v["method"], "pairs");
        assert!(v["witness"]["subgroup"].is_array());
        assert!(v["witness"]["element"].is_number());
        assert!(v["stats"]["examined"].is_number());
        assert!(v["stats"]["micros"].is_number());

        let g = q8();
        let r = is_a_recursive(&g, &caps()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["verdict"], "in-A");
        assert!(v["witness"].is_null());
    }

    #[test]
    fn pair_cap_is_enforced() {
        let caps = Caps { pair_order: 8, ..Caps::default() };
        let g = families::cyclic(12).unwrap();
        assert!(matches!(
            is_a_pairs(&g, &caps),
            Err(Error::CapExceeded { .. })
        ));
    }
}
