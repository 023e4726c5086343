//! Subgroup enumeration: the full lattice, maximal subgroups, two-generated
//! subgroups, and minimal non-abelian subgroups with their K1/K2/K3
//! classification.

use std::collections::HashSet;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::structure;
use crate::subgroup::{self, SubgroupSet};
use crate::table::GroupTable;

/// Every subgroup of a parent group, deduplicated by element set.
#[derive(Clone, Debug)]
pub struct SubgroupInventory {
    pub parent_order: usize,
    /// Canonically sorted: by order, then by bit pattern.
    pub subgroups: Vec<SubgroupSet>,
    /// True when full enumeration finished under the cap.
    pub complete: bool,
}

impl SubgroupInventory {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SubgroupSet> {
        self.subgroups.iter()
    }
}

/// Exhaustive subgroup enumeration. Seeds with all cyclic subgroups, then
/// repeatedly extends each known subgroup by one outside generator until no
/// new subgroup appears. Capped at `caps.enum_order`.
pub fn all_subgroups(g: &GroupTable, caps: &Caps) -> Result<SubgroupInventory> {
    let n = g.order();
    if n > caps.enum_order {
        return Err(Error::CapExceeded {
            what: "subgroup enumeration",
            cap: caps.enum_order,
            order: n,
        });
    }
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut queue: Vec<SubgroupSet> = Vec::new();

    let trivial = SubgroupSet::trivial(n);
    seen.insert(trivial.bits().clone());
    queue.push(trivial);
    for x in 1..n as u32 {
        let s = subgroup::generated_subgroup(g, &[x])?;
        if seen.insert(s.bits().clone()) {
            queue.push(s);
        }
    }

    let whole = BitSet::full(n);
    let mut head = 0;
    while head < queue.len() {
        let current = queue[head].clone();
        head += 1;
        if current.is_whole_group() {
            continue;
        }
        // index 2 is always maximal: any extension is the whole group
        if current.order() as usize * 2 == n {
            if seen.insert(whole.clone()) {
                queue.push(SubgroupSet::whole(n));
            }
            continue;
        }
        let base_gens = current
            .generators()
            .map(<[u32]>::to_vec)
            .unwrap_or_else(|| subgroup::subgroup_generators(g, &current));
        // one extension attempt per coset of the current subgroup:
        // <S, g> = <S, g'> whenever g' lies in S g
        let mut covered = current.bits().clone();
        for x in 1..n as u32 {
            if covered.contains(x as usize) {
                continue;
            }
            for s in current.iter() {
                covered.insert(g.mul(s, x) as usize);
            }
            let bits = subgroup::extend_closure(g, &current, x);
            if seen.insert(bits.clone()) {
                let mut gens = base_gens.clone();
                gens.push(x);
                queue.push(SubgroupSet::from_bits(bits, n, Some(gens)));
            }
        }
    }

    queue.sort();
    Ok(SubgroupInventory {
        parent_order: n,
        subgroups: queue,
        complete: true,
    })
}

/// Maximal subgroups from the full inventory: proper subgroups maximal under
/// inclusion.
pub fn maximal_subgroups_generic(g: &GroupTable, caps: &Caps) -> Result<Vec<SubgroupSet>> {
    let inv = all_subgroups(g, caps)?;
    let n = g.order() as u32;
    let mut maximal = Vec::new();
    for s in inv.iter().filter(|s| s.order() < n) {
        let dominated = inv
            .iter()
            .any(|t| t.order() > s.order() && t.order() < n && s.is_subset_of(t));
        if !dominated {
            maximal.push(s.clone());
        }
    }
    maximal.sort();
    Ok(maximal)
}

/// Maximal subgroups of a p-group without touching the lattice: the
/// preimages of the hyperplanes of `G/Phi(G)`, i.e. the index-p subgroups
/// containing the Frattini subgroup.
pub fn maximal_subgroups_pgroup(g: &GroupTable, p: u32) -> Result<Vec<SubgroupSet>> {
    let n = g.order();
    structure::prime_power(n)
        .filter(|&(q, _)| q == p)
        .ok_or_else(|| Error::input(format!("order {n} is not a power of {p}")))?;
    let phi = subgroup::frattini_fast_pgroup(g, p)?;
    let phi_elems = phi.elements();

    // coset representatives giving a basis of G/Phi
    let mut reps: Vec<u32> = Vec::new();
    let mut span = phi.clone();
    while span.order() < n as u32 {
        let mut gens: Vec<u32> = phi_elems.clone();
        let x = SubgroupSet::whole(n).first_not_in(&span).unwrap();
        reps.push(x);
        gens.extend_from_slice(&reps);
        span = subgroup::generated_subgroup(g, &gens)?;
    }
    let d = reps.len();
    debug_assert_eq!((n as u32 / phi.order()), p.pow(d as u32));

    // coordinates of every element in G/Phi
    let mut coord: Vec<Vec<u8>> = vec![Vec::new(); n];
    let mut tuple = vec![0u8; d];
    loop {
        let mut rep_elem = 0u32;
        for (i, &c) in tuple.iter().enumerate() {
            rep_elem = g.mul(rep_elem, g.pow(reps[i], c as i64));
        }
        for &f in &phi_elems {
            let e = g.mul(rep_elem, f) as usize;
            debug_assert!(coord[e].is_empty() || tuple.iter().all(|&c| c == 0));
            coord[e] = tuple.clone();
        }
        // increment the mixed-radix tuple
        let mut i = d;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            tuple[i] += 1;
            if (tuple[i] as u32) < p {
                break;
            }
            tuple[i] = 0;
        }
        if tuple.iter().all(|&c| c == 0) {
            break;
        }
    }

    // hyperplane normal vectors up to scalar: first nonzero entry = 1
    let mut maximal = Vec::new();
    for w in hyperplane_normals(d, p) {
        let mut bits = BitSet::new(n);
        for (e, c) in coord.iter().enumerate() {
            let dot: u32 = c
                .iter()
                .zip(&w)
                .map(|(&ci, &wi)| ci as u32 * wi)
                .sum::<u32>()
                % p;
            if dot == 0 {
                bits.insert(e);
            }
        }
        maximal.push(SubgroupSet::from_bits(bits, n, None));
    }
    maximal.sort();
    Ok(maximal)
}

/// Vectors of F_p^d with first nonzero entry 1: one per hyperplane.
fn hyperplane_normals(d: usize, p: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for lead in 0..d {
        let free = d - lead - 1;
        let total = (p as u64).pow(free as u32);
        for mut t in 0..total {
            let mut w = vec![0u32; d];
            w[lead] = 1;
            for i in (0..free).rev() {
                w[lead + 1 + i] = (t % p as u64) as u32;
                t /= p as u64;
            }
            out.push(w);
        }
    }
    out
}

/// Maximal subgroups: hyperplane fast path for p-groups, lattice route
/// (capped) otherwise.
pub fn maximal_subgroups(g: &GroupTable, caps: &Caps) -> Result<Vec<SubgroupSet>> {
    match structure::prime_power(g.order()) {
        Some((p, _)) => maximal_subgroups_pgroup(g, p),
        None if g.order() == 1 => Ok(Vec::new()),
        None => maximal_subgroups_generic(g, caps),
    }
}

/// One entry per distinct subgroup `<x, y>` over all non-commuting pairs,
/// with the lexicographically least witness pair retained.
pub fn two_generated_subgroups(
    g: &GroupTable,
    caps: &Caps,
) -> Result<Vec<(SubgroupSet, (u32, u32))>> {
    let n = g.order();
    if n > caps.pair_order {
        return Err(Error::CapExceeded {
            what: "non-commuting pair scan",
            cap: caps.pair_order,
            order: n,
        });
    }
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut out = Vec::new();
    for x in 1..n as u32 {
        for y in (x + 1)..n as u32 {
            if g.mul(x, y) == g.mul(y, x) {
                continue;
            }
            let s = subgroup::generated_subgroup(g, &[x, y])?;
            if seen.insert(s.bits().clone()) {
                out.push((s, (x, y)));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Non-abelian with every maximal subgroup abelian (hence every proper
/// subgroup abelian).
pub fn is_minimal_nonabelian(g: &GroupTable, s: &SubgroupSet, caps: &Caps) -> Result<bool> {
    if subgroup::is_abelian_subset(g, s) {
        return Ok(false);
    }
    let res = subgroup::restriction(g, s);
    let maximal = maximal_subgroups(&res.table, caps)?;
    Ok(maximal
        .iter()
        .all(|m| subgroup::is_abelian_subset(&res.table, m)))
}

/// All minimal non-abelian subgroups. Every minimal non-abelian group is
/// generated by two of its elements, so the two-generated subgroups are a
/// complete candidate list.
pub fn minimal_nonabelian_subgroups(g: &GroupTable, caps: &Caps) -> Result<Vec<SubgroupSet>> {
    let mut out = Vec::new();
    for (s, _) in two_generated_subgroups(g, caps)? {
        if is_minimal_nonabelian(g, &s, caps)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// Classification tag for a minimal non-abelian subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum MinNonab {
    /// The quaternion group of order 8.
    K1,
    /// Metacyclic `<a, b | a^{p^m} = b^{p^n} = 1, a^b = a^{1+p^{m-1}}>`,
    /// order `p^{m+n}`, `m >= 2`, `n >= 1`.
    K2 { m: u32, n: u32 },
    /// Non-metacyclic `<a, b, c | a^{p^m} = b^{p^n} = c^p = 1, [a,b] = c,
    /// c central>`, order `p^{m+n+1}`, `m >= n >= 1`.
    K3 { m: u32, n: u32 },
    /// The subgroup's order is not a power of the reference prime.
    NotPGroup,
}

pub(crate) fn log_base(p: u32, mut v: u64) -> Option<u32> {
    let mut k = 0;
    while v % p as u64 == 0 {
        v /= p as u64;
        k += 1;
    }
    (v == 1).then_some(k)
}

/// Least `k >= 1` with `x^k` inside `s`.
fn order_mod(g: &GroupTable, x: u32, s: &SubgroupSet) -> u32 {
    let mut acc = x;
    let mut k = 1;
    while !s.contains(acc) {
        acc = g.mul(acc, x);
        k += 1;
    }
    k
}

/// Classifies a minimal non-abelian subgroup as K1, K2(m,n) or K3(m,n)
/// relative to the prime `p`, recovering the parameters from the order, the
/// exponent, and the exponent of the abelianization.
pub fn classify_minimal_nonabelian(
    g: &GroupTable,
    k: &SubgroupSet,
    p: u32,
    caps: &Caps,
) -> Result<MinNonab> {
    if !is_minimal_nonabelian(g, k, caps)? {
        return Err(Error::input(format!(
            "subgroup of order {} is not minimal non-abelian",
            k.order()
        )));
    }
    let Some(e) = log_base(p, k.order() as u64).filter(|&e| e > 0) else {
        return Ok(MinNonab::NotPGroup);
    };
    let res = subgroup::restriction(g, k);
    let rt = &res.table;

    if rt.order() == 8 && p == 2 {
        let involutions = (1..8u32).filter(|&x| rt.element_order(x) == 2).count();
        if involutions == 1 {
            return Ok(MinNonab::K1);
        }
    }

    let exp = structure::exponent(rt);
    let m_big = log_base(p, exp)
        .ok_or_else(|| Error::input("exponent of a p-group must be a p-power"))?;

    if structure::is_metacyclic(rt, caps)?.is_some() {
        // K2(m, n) has order p^{m+n} and exponent p^{max(m,n)}; when the two
        // candidate assignments differ, the abelianization K/K' (of type
        // C_{p^{m-1}} x C_{p^n}) tells them apart.
        let (m, n) = if 2 * m_big == e {
            (m_big, m_big)
        } else {
            let derived = subgroup::derived_subgroup(rt, &SubgroupSet::whole(rt.order()));
            let ab_exp = (0..rt.order() as u32)
                .map(|x| order_mod(rt, x, &derived))
                .max()
                .unwrap();
            let a_big = log_base(p, ab_exp as u64)
                .ok_or_else(|| Error::input("abelianization exponent must be a p-power"))?;
            if a_big == m_big {
                (e - m_big, m_big)
            } else {
                (m_big, e - m_big)
            }
        };
        if m < 2 || n < 1 || m + n != e {
            return Err(Error::input(format!(
                "metacyclic parameter recovery failed: got (m, n) = ({m}, {n}) for order {p}^{e}"
            )));
        }
        Ok(MinNonab::K2 { m, n })
    } else {
        // K3(m, n): order p^{m+n+1}, exponent p^{max(m,n)}, m >= n
        let m = m_big;
        let n = e
            .checked_sub(1 + m)
            .ok_or_else(|| Error::input("K3 parameter recovery failed"))?;
        if n < 1 || m < n {
            return Err(Error::input(format!(
                "K3 parameter recovery failed: got (m, n) = ({m}, {n}) for order {p}^{e}"
            )));
        }
        Ok(MinNonab::K3 { m, n })
    }
}
