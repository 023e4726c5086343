//! Structural analysis of finite p-groups: nilpotency class, maximal class
//! detection, the 2-step centralizer, exponent, elementary-abelian tests,
//! and metacyclic detection.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::subgroup::{self, SubgroupSet};
use crate::table::GroupTable;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `n = p^k` with `p` prime and `k >= 1`, if such a decomposition exists.
pub fn prime_power(n: usize) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2usize;
    while p * p <= n {
        if n % p == 0 {
            let mut v = n;
            let mut k = 0;
            while v % p == 0 {
                v /= p;
                k += 1;
            }
            return if v == 1 { Some((p as u32, k)) } else { None };
        }
        p += 1;
    }
    Some((n as u32, 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Nilpotency {
    Class(u32),
    NotNilpotent,
}

/// Length of the lower central series to triviality, minus one;
/// `NotNilpotent` when the series stabilizes above the trivial subgroup.
pub fn nilpotency_class(g: &GroupTable) -> Nilpotency {
    let series = subgroup::lower_central_series(g);
    if series.last().unwrap().is_trivial() {
        Nilpotency::Class(series.len() as u32 - 1)
    } else {
        Nilpotency::NotNilpotent
    }
}

/// `|G| = p^n` has maximal class iff `n >= 2` and the class is `n - 1`.
pub fn is_maximal_class(g: &GroupTable, p: u32) -> Result<bool> {
    let (q, n) = prime_power(g.order())
        .filter(|&(q, _)| q == p)
        .ok_or_else(|| {
            Error::input(format!(
                "order {} is not a power of {p}",
                g.order()
            ))
        })?;
    let _ = q;
    if n < 2 {
        return Ok(false);
    }
    Ok(nilpotency_class(g) == Nilpotency::Class(n - 1))
}

/// The 2-step centralizer `P1 = C_G(P2/P4)` of a maximal-class p-group of
/// order at least `p^4`: elements `x` with `[x, s]` in `P4` for all `s` in
/// `P2`, where `P2` and `P4` are the lower-central terms (`P4` trivial when
/// the class is below 4). Always a subgroup of index `p` containing `P2`.
pub fn two_step_centralizer(g: &GroupTable) -> Result<SubgroupSet> {
    let (p, n) = prime_power(g.order())
        .ok_or_else(|| Error::input(format!("order {} is not a prime power", g.order())))?;
    if n < 4 {
        return Err(Error::input(format!(
            "2-step centralizer needs order >= {p}^4, got {p}^{n}"
        )));
    }
    if !is_maximal_class(g, p)? {
        return Err(Error::input(format!(
            "{} does not have maximal class",
            g.name()
        )));
    }
    let series = subgroup::lower_central_series(g);
    let p2 = series[1].clone();
    let p4 = if series.len() > 3 {
        series[3].clone()
    } else {
        SubgroupSet::trivial(g.order())
    };
    let gens = subgroup::subgroup_generators(g, &p2);
    let mut bits = crate::bitset::BitSet::new(g.order());
    for x in 0..g.order() as u32 {
        if gens.iter().all(|&s| p4.contains(g.commutator(x, s))) {
            bits.insert(x as usize);
        }
    }
    let p1 = SubgroupSet::from_bits(bits, g.order(), None);
    assert!(p2.is_subset_of(&p1), "P1 must contain P2");
    assert_eq!(
        p1.order() * p,
        g.order() as u32,
        "P1 must have index p in a maximal-class group"
    );
    Ok(p1)
}

/// Least common multiple of all element orders.
pub fn exponent(g: &GroupTable) -> u64 {
    let mut acc: u64 = 1;
    for x in 0..g.order() as u32 {
        let o = g.element_order(x) as u64;
        acc = acc / gcd(acc, o) * o;
    }
    acc
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Abelian of exponent `p` (the trivial group passes vacuously).
pub fn is_elementary_abelian(g: &GroupTable, p: u32) -> bool {
    g.is_abelian() && (1..g.order() as u32).all(|x| g.element_order(x) == p)
}

/// Whether some maximal subgroup (index-p hyperplane scan, p-group only) is
/// elementary abelian.
pub fn has_elementary_abelian_maximal(g: &GroupTable, p: u32) -> Result<bool> {
    prime_power(g.order())
        .filter(|&(q, _)| q == p)
        .ok_or_else(|| Error::input(format!("order {} is not a power of {p}", g.order())))?;
    let maximal = crate::enumerate::maximal_subgroups_pgroup(g, p)?;
    for m in &maximal {
        if subgroup::is_abelian_subset(g, m) && m.iter().all(|x| x == 0 || g.element_order(x) == p)
        {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Cyclic-by-cyclic test: a cyclic normal subgroup `N` and an element `x`
/// with `<N, x> = G`. Returns the witness on success. Normal subgroups are
/// scanned in decreasing order, `x` in index order, so the witness is
/// deterministic.
pub fn is_metacyclic(g: &GroupTable, caps: &Caps) -> Result<Option<(SubgroupSet, u32)>> {
    let n = g.order();
    if n > caps.enum_order {
        return Err(Error::CapExceeded {
            what: "metacyclic test",
            cap: caps.enum_order,
            order: n,
        });
    }
    // distinct cyclic subgroups, each kept with its least generator
    let mut seen = std::collections::HashSet::new();
    let mut cyclics: Vec<(SubgroupSet, u32)> = Vec::new();
    for x in 0..n as u32 {
        let s = subgroup::generated_subgroup(g, &[x])?;
        if seen.insert(s.bits().clone()) {
            cyclics.push((s, x));
        }
    }
    cyclics.sort_by(|a, b| b.0.cmp(&a.0));
    for (nsub, gen) in cyclics {
        if !subgroup::is_normal(g, &nsub) {
            continue;
        }
        for x in 0..n as u32 {
            let h = subgroup::generated_subgroup(g, &[gen, x])?;
            if h.order() as usize == n {
                return Ok(Some((nsub, x)));
            }
        }
    }
    Ok(None)
}

/// Structural profile of a p-group.
#[derive(Clone, Debug)]
pub struct PGroupProfile {
    pub p: u32,
    /// `|G| = p^n`.
    pub n: u32,
    pub class: u32,
    pub is_maximal_class: bool,
    pub exponent: u64,
    /// Lower central series `G = c1 > c2 > ... > 1`.
    pub lower_central: Vec<SubgroupSet>,
    /// The 2-step centralizer, when defined (maximal class, order >= p^4).
    pub p1: Option<SubgroupSet>,
}

impl Serialize for PGroupProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PGroupProfile", 7)?;
        s.serialize_field("p", &self.p)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("class", &self.class)?;
        s.serialize_field("maximal_class", &self.is_maximal_class)?;
        s.serialize_field("exponent", &self.exponent)?;
        let orders: Vec<u32> = self.lower_central.iter().map(|t| t.order()).collect();
        s.serialize_field("lower_central_orders", &orders)?;
        s.serialize_field("p1_order", &self.p1.as_ref().map(|t| t.order()))?;
        s.end()
    }
}

pub fn profile(g: &GroupTable) -> Result<PGroupProfile> {
    let (p, n) = prime_power(g.order())
        .ok_or_else(|| Error::input(format!("{} is not a p-group", g.name())))?;
    let series = subgroup::lower_central_series(g);
    assert!(series.last().unwrap().is_trivial(), "p-groups are nilpotent");
    let class = series.len() as u32 - 1;
    let maximal = n >= 2 && class == n - 1;
    let p1 = if maximal && n >= 4 {
        Some(two_step_centralizer(g)?)
    } else {
        None
    };
    Ok(PGroupProfile {
        p,
        n,
        class,
        is_maximal_class: maximal,
        exponent: exponent(g),
        lower_central: series,
        p1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::product::direct_product;

    #[test]
    fn primes_and_prime_powers() {
        assert!(is_prime(2) && is_prime(3) && is_prime(5) && is_prime(13));
        assert!(!is_prime(1) && !is_prime(4) && !is_prime(9));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(625), Some((5, 4)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(7), Some((7, 1)));
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(
            nilpotency_class(&families::cyclic(1).unwrap()),
            Nilpotency::Class(0)
        );
        assert_eq!(
            nilpotency_class(&families::cyclic(12).unwrap()),
            Nilpotency::Class(1)
        );
        assert_eq!(
            nilpotency_class(&families::generalized_quaternion(8).unwrap()),
            Nilpotency::Class(2)
        );
        assert_eq!(
            nilpotency_class(&families::symmetric3()),
            Nilpotency::NotNilpotent
        );
    }

    #[test]
    fn maximal_class_examples() {
        let d16 = families::dihedral(16).unwrap();
        assert!(is_maximal_class(&d16, 2).unwrap());

        let c4c4 = families::abelian(&[4, 4]).unwrap();
        assert!(!is_maximal_class(&c4c4, 2).unwrap());

        let h27 = families::minimal_nonabelian_k3(3, 1, 1).unwrap();
        assert!(is_maximal_class(&h27, 3).unwrap());

        // order p^2 is maximal class by convention, order p is not
        assert!(is_maximal_class(&families::cyclic(9).unwrap(), 3).unwrap());
        assert!(!is_maximal_class(&families::cyclic(3).unwrap(), 3).unwrap());

        assert!(is_maximal_class(&families::cyclic(12).unwrap(), 2).is_err());
    }

    #[test]
    fn two_step_centralizer_of_d16_is_the_cyclic_c8() {
        let d16 = families::dihedral(16).unwrap();
        let p1 = two_step_centralizer(&d16).unwrap();
        assert_eq!(p1.order(), 8);
        assert!(crate::subgroup::is_abelian_subset(&d16, &p1));
        // it is the cyclic maximal subgroup
        let r = (0..16u32).find(|&x| d16.element_order(x) == 8).unwrap();
        let c8 = crate::subgroup::generated_subgroup(&d16, &[r]).unwrap();
        assert_eq!(p1, c8);
    }

    #[test]
    fn two_step_centralizer_preconditions() {
        assert!(two_step_centralizer(&families::minimal_nonabelian_k3(3, 1, 1).unwrap()).is_err());
        assert!(two_step_centralizer(&families::abelian(&[4, 4]).unwrap()).is_err());
        assert!(two_step_centralizer(&families::symmetric3()).is_err());
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(exponent(&families::elementary_abelian(3, 4).unwrap()), 3);
        assert_eq!(exponent(&families::generalized_quaternion(8).unwrap()), 4);
        assert_eq!(exponent(&families::abelian(&[4, 2]).unwrap()), 4);
    }

    #[test]
    fn elementary_abelian_tests() {
        let ea = families::elementary_abelian(3, 4).unwrap();
        assert!(is_elementary_abelian(&ea, 3));
        assert!(!is_elementary_abelian(&families::cyclic(9).unwrap(), 3));

        // Heisenberg(5): exponent 5, not abelian, but an elementary abelian
        // maximal subgroup exists
        let h = families::minimal_nonabelian_k3(5, 1, 1).unwrap();
        assert_eq!(exponent(&h), 5);
        assert!(!h.is_abelian());
        assert!(has_elementary_abelian_maximal(&h, 5).unwrap());
    }

    #[test]
    fn metacyclic_examples() {
        let caps = Caps::default();
        let c12 = families::cyclic(12).unwrap();
        let w = is_metacyclic(&c12, &caps).unwrap().unwrap();
        assert_eq!(w.0.order(), 12, "cyclic group: N = G");

        let h27 = families::minimal_nonabelian_k3(3, 1, 1).unwrap();
        assert!(is_metacyclic(&h27, &caps).unwrap().is_none());

        let d16 = families::dihedral(16).unwrap();
        let w = is_metacyclic(&d16, &caps).unwrap();
        assert!(w.is_some());
        let (nsub, x) = w.unwrap();
        let mut gens = vec![x];
        gens.extend(nsub.iter());
        let h = crate::subgroup::generated_subgroup(&d16, &gens).unwrap();
        assert!(h.is_whole_group());
    }

    #[test]
    fn k2_grid_is_metacyclic_and_k3_grid_is_not() {
        let caps = Caps::default();
        for p in [2u32, 3, 5] {
            for m in 2..=4u32 {
                for n in 1..=2u32 {
                    if (p as u64).pow(m + n) > 128 {
                        continue;
                    }
                    let g = families::minimal_nonabelian_k2(p, m, n).unwrap();
                    assert!(
                        is_metacyclic(&g, &caps).unwrap().is_some(),
                        "K2({p},{m},{n})"
                    );
                }
            }
            for m in 1..=2u32 {
                for n in 1..=m {
                    if p == 2 && m + n <= 2 {
                        continue;
                    }
                    if (p as u64).pow(m + n + 1) > 128 {
                        continue;
                    }
                    let g = families::minimal_nonabelian_k3(p, m, n).unwrap();
                    assert!(
                        is_metacyclic(&g, &caps).unwrap().is_none(),
                        "K3({p},{m},{n})"
                    );
                }
            }
        }
    }

    #[test]
    fn profile_of_a_maximal_class_group() {
        let d32 = families::dihedral(32).unwrap();
        let prof = profile(&d32).unwrap();
        assert_eq!((prof.p, prof.n, prof.class), (2, 5, 4));
        assert!(prof.is_maximal_class);
        assert_eq!(prof.exponent, 16);
        assert!(prof.p1.is_some());
        let json = serde_json::to_value(&prof).unwrap();
        assert_eq!(json["p1_order"], 16);

        assert!(profile(&direct_product(
            &families::cyclic(2).unwrap(),
            &families::symmetric3()
        )
        .unwrap())
        .is_err());
    }
}
