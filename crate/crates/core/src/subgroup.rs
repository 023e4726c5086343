//! Subgroups as bit-vectors and the canonical subgroup-level operators:
//! closure, centralizer, center, derived and power subgroups, Frattini
//! subgroup, and the lower central series.

use std::sync::Arc;

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::table::{GroupTable, Verify};

/// A subgroup of a parent [`GroupTable`], stored as a bit-vector over the
/// parent's element indices with the population count cached.
#[derive(Clone, Debug)]
pub struct SubgroupSet {
    bits: BitSet,
    order: u32,
    parent_order: u32,
    generators: Option<Vec<u32>>,
}

impl PartialEq for SubgroupSet {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}
impl Eq for SubgroupSet {}

impl std::hash::Hash for SubgroupSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl PartialOrd for SubgroupSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by order first, then lexicographically on the bit words.
/// Gives every enumeration in the crate a deterministic output order.
impl Ord for SubgroupSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.bits.words().cmp(other.bits.words()))
    }
}

impl SubgroupSet {
    pub(crate) fn from_bits(bits: BitSet, parent_order: usize, generators: Option<Vec<u32>>) -> Self {
        let order = bits.count() as u32;
        assert!(bits.contains(0), "subgroup must contain the identity");
        assert!(
            parent_order as u32 % order == 0,
            "Lagrange violation: {order} does not divide {parent_order}"
        );
        SubgroupSet {
            bits,
            order,
            parent_order: parent_order as u32,
            generators,
        }
    }

    pub fn trivial(parent_order: usize) -> Self {
        let mut bits = BitSet::new(parent_order);
        bits.insert(0);
        SubgroupSet::from_bits(bits, parent_order, Some(vec![]))
    }

    pub fn whole(parent_order: usize) -> Self {
        SubgroupSet::from_bits(BitSet::full(parent_order), parent_order, None)
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    #[inline]
    pub fn parent_order(&self) -> u32 {
        self.parent_order
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.bits.contains(x as usize)
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn generators(&self) -> Option<&[u32]> {
        self.generators.as_deref()
    }

    pub fn is_whole_group(&self) -> bool {
        self.order == self.parent_order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.iter().map(|i| i as u32)
    }

    pub fn elements(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn is_subset_of(&self, other: &SubgroupSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Intersection of two subgroups (always a subgroup).
    pub fn intersect(&self, other: &SubgroupSet) -> SubgroupSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        SubgroupSet::from_bits(bits, self.parent_order as usize, None)
    }

    /// Least element of `self` outside `other`, if any.
    pub fn first_not_in(&self, other: &SubgroupSet) -> Option<u32> {
        self.bits.first_not_in(&other.bits).map(|i| i as u32)
    }
}

/// Orbit closure over a verified group table: the subgroup generated by
/// `gens` is exactly the set reachable from the identity by right
/// multiplication with generators (inverses are generator powers in a
/// finite group), so the cost is `O(|result| * |gens|)` table lookups.
fn close(g: &GroupTable, seed: impl IntoIterator<Item = u32>) -> (BitSet, Vec<u32>) {
    let n = g.order();
    let mut gens: Vec<u32> = seed.into_iter().filter(|&s| s != 0).collect();
    gens.sort_unstable();
    gens.dedup();
    let mut bits = BitSet::new(n);
    let mut elems: Vec<u32> = vec![0];
    bits.insert(0);
    let mut head = 0;
    while head < elems.len() {
        let t = elems[head];
        head += 1;
        for &h in &gens {
            let p = g.mul(t, h);
            if bits.insert(p as usize) {
                elems.push(p);
            }
        }
    }
    (bits, elems)
}

/// Least subgroup containing `gens`. Results are memoized on the parent
/// table keyed by the canonical (sorted, deduplicated) generator set.
pub fn generated_subgroup(g: &GroupTable, gens: &[u32]) -> Result<SubgroupSet> {
    for &x in gens {
        if x as usize >= g.order() {
            return Err(Error::input(format!(
                "generator index {x} out of range for order {}",
                g.order()
            )));
        }
    }
    Ok((*generated_arc(g, gens)).clone())
}

pub(crate) fn generated_arc(g: &GroupTable, gens: &[u32]) -> Arc<SubgroupSet> {
    let mut key: Vec<u32> = gens.to_vec();
    key.sort_unstable();
    key.dedup();
    if let Some(hit) = g.memo.get(key.as_slice()) {
        return hit.clone();
    }
    let (bits, _) = close(g, key.iter().copied());
    let sub = Arc::new(SubgroupSet::from_bits(bits, g.order(), Some(key.clone())));
    g.memo.insert(key.into_boxed_slice(), sub.clone());
    sub
}

/// Subgroup generated by an already-conjugation-closed seed set; plain
/// closure, no memo.
fn generated_from_set(g: &GroupTable, seed: &BitSet) -> SubgroupSet {
    let (bits, _) = close(g, seed.iter().map(|i| i as u32));
    SubgroupSet::from_bits(bits, g.order(), None)
}

/// Closure of `<gens(base), x>` via the orbit closure, reusing the base's
/// generating set.
pub(crate) fn extend_closure(g: &GroupTable, base: &SubgroupSet, x: u32) -> BitSet {
    let mut gens = subgroup_generators(g, base);
    gens.push(x);
    close(g, gens).0
}

/// Normal closure in `g` of the given seed elements: the least subgroup
/// containing them that is stable under conjugation by `g`.
pub fn normal_closure(g: &GroupTable, seed: &[u32]) -> SubgroupSet {
    let whole = SubgroupSet::whole(g.order());
    normal_closure_in(g, &whole, &g.greedy_generators(), seed)
}

/// Elements commuting with every element of `set`.
pub fn centralizer_of_elements(g: &GroupTable, set: &[u32]) -> SubgroupSet {
    let n = g.order();
    let mut bits = BitSet::new(n);
    for x in 0..n as u32 {
        if set.iter().all(|&s| g.mul(x, s) == g.mul(s, x)) {
            bits.insert(x as usize);
        }
    }
    SubgroupSet::from_bits(bits, n, None)
}

/// Centralizer of a subgroup. It suffices to test against generators when
/// the subgroup carries them.
pub fn centralizer(g: &GroupTable, s: &SubgroupSet) -> SubgroupSet {
    match s.generators() {
        Some(gens) if !gens.is_empty() => centralizer_of_elements(g, gens),
        Some(_) => SubgroupSet::whole(g.order()), // trivial subgroup
        None => centralizer_of_elements(g, &s.elements()),
    }
}

/// Center `Z(G)`: intersection of the centralizers of a generating set.
pub fn center(g: &GroupTable) -> SubgroupSet {
    centralizer_of_elements(g, &g.greedy_generators())
}

/// Whether a subset of elements commutes pairwise.
pub fn is_abelian_subset(g: &GroupTable, s: &SubgroupSet) -> bool {
    let elems = s.elements();
    for (i, &x) in elems.iter().enumerate() {
        for &y in &elems[i + 1..] {
            if g.mul(x, y) != g.mul(y, x) {
                return false;
            }
        }
    }
    true
}

/// Conjugation-stability of a subgroup under the whole parent group.
pub fn is_normal(g: &GroupTable, s: &SubgroupSet) -> bool {
    let gens = g.greedy_generators();
    s.iter()
        .all(|x| gens.iter().all(|&a| s.contains(g.conjugate(x, a))))
}

/// Derived subgroup of `s`: generated by all commutators of pairs in `s`.
///
/// Small subgroups take the literal all-pairs route. Larger ones use the
/// identity `S' = <<[x,y] : x,y in X>>_S` for a generating set `X` of `S`,
/// which avoids the quadratic commutator sweep.
pub fn derived_subgroup(g: &GroupTable, s: &SubgroupSet) -> SubgroupSet {
    const PAIRWISE_LIMIT: u32 = 768;
    if s.order() <= PAIRWISE_LIMIT {
        let elems = s.elements();
        let mut seed = BitSet::new(g.order());
        for &x in &elems {
            for &y in &elems {
                seed.insert(g.commutator(x, y) as usize);
            }
        }
        generated_from_set(g, &seed)
    } else {
        let gens = subgroup_generators(g, s);
        let mut seed: Vec<u32> = Vec::new();
        for &x in &gens {
            for &y in &gens {
                let c = g.commutator(x, y);
                if c != 0 {
                    seed.push(c);
                }
            }
        }
        normal_closure_in(g, s, &gens, &seed)
    }
}

/// `[a, G]` for a normal subgroup `a`: normal closure of the commutators of
/// `a`'s elements with a generating set of `G`.
fn commutator_with_group(g: &GroupTable, a: &SubgroupSet) -> SubgroupSet {
    let gens = g.greedy_generators();
    let mut seed = BitSet::new(g.order());
    for x in a.iter() {
        for &h in &gens {
            seed.insert(g.commutator(x, h) as usize);
        }
    }
    // the seed is already closed under conjugation only if a is normal and
    // gens is the whole group, so take the normal closure
    let whole = SubgroupSet::whole(g.order());
    normal_closure_in(g, &whole, &gens, &seed.iter().map(|i| i as u32).collect::<Vec<_>>())
}

/// Normal closure of `seed` inside the subgroup `ambient` generated by
/// `ambient_gens` (conjugation only by those generators). Two phases: close
/// the seeds under conjugation, then take the subgroup the conjugation
/// orbit generates — that subgroup is conjugation-stable, hence normal in
/// the ambient.
fn normal_closure_in(
    g: &GroupTable,
    ambient: &SubgroupSet,
    ambient_gens: &[u32],
    seed: &[u32],
) -> SubgroupSet {
    let n = g.order();
    let mut orbit_bits = BitSet::new(n);
    let mut orbit: Vec<u32> = Vec::new();
    for &s in seed {
        debug_assert!(ambient.contains(s));
        if orbit_bits.insert(s as usize) {
            orbit.push(s);
        }
    }
    let mut head = 0;
    while head < orbit.len() {
        let x = orbit[head];
        head += 1;
        for &a in ambient_gens {
            let c = g.conjugate(x, a);
            if orbit_bits.insert(c as usize) {
                orbit.push(c);
            }
        }
    }
    let (bits, _) = close(g, orbit);
    SubgroupSet::from_bits(bits, n, None)
}

/// Greedy generating set of a subgroup: repeatedly adjoin its least element
/// outside the closure so far.
pub fn subgroup_generators(g: &GroupTable, s: &SubgroupSet) -> Vec<u32> {
    if let Some(gens) = s.generators() {
        return gens.to_vec();
    }
    let mut gens: Vec<u32> = Vec::new();
    let mut closed = SubgroupSet::trivial(g.order());
    while closed.order() < s.order() {
        let x = s.first_not_in(&closed).expect("subgroup not exhausted");
        gens.push(x);
        closed = (*generated_arc(g, &gens)).clone();
    }
    gens
}

/// Subgroup generated by the p-th powers of the elements of `s`.
pub fn power_subgroup(g: &GroupTable, s: &SubgroupSet, p: u32) -> Result<SubgroupSet> {
    if !crate::structure::is_prime(p) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    let mut seed = BitSet::new(g.order());
    for x in s.iter() {
        seed.insert(g.pow(x, p as i64) as usize);
    }
    Ok(generated_from_set(g, &seed))
}

/// Subgroup generated by the elements of `s` of order exactly `p`.
pub fn omega1(g: &GroupTable, s: &SubgroupSet, p: u32) -> Result<SubgroupSet> {
    if !crate::structure::is_prime(p) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    let mut seed = BitSet::new(g.order());
    for x in s.iter() {
        if g.element_order(x) == p {
            seed.insert(x as usize);
        }
    }
    Ok(generated_from_set(g, &seed))
}

/// Frattini subgroup by the p-group identity `Phi(G) = G' G^p`.
pub fn frattini_fast_pgroup(g: &GroupTable, p: u32) -> Result<SubgroupSet> {
    let derived = derived_subgroup(g, &SubgroupSet::whole(g.order()));
    let mut seed = derived.bits().clone();
    for x in 0..g.order() as u32 {
        seed.insert(g.pow(x, p as i64) as usize);
    }
    let _ = p;
    Ok(generated_from_set(g, &seed))
}

/// Frattini subgroup as the intersection of all maximal subgroups, via full
/// lattice enumeration. Capped.
pub fn frattini_generic(g: &GroupTable, caps: &Caps) -> Result<SubgroupSet> {
    let maximal = crate::enumerate::maximal_subgroups_generic(g, caps)?;
    let mut acc = SubgroupSet::whole(g.order());
    for m in &maximal {
        acc = acc.intersect(m);
    }
    Ok(acc)
}

/// Frattini subgroup: p-group fast path when the order is a prime power,
/// otherwise the generic maximal-subgroup intersection (capped).
pub fn frattini(g: &GroupTable, caps: &Caps) -> Result<SubgroupSet> {
    if g.order() == 1 {
        return Ok(SubgroupSet::trivial(1));
    }
    match crate::structure::prime_power(g.order()) {
        Some((p, _)) => frattini_fast_pgroup(g, p),
        None => frattini_generic(g, caps),
    }
}

/// Lower central series `G = c1 >= c2 >= ...` with `c_{i+1} = [c_i, G]`,
/// listed until the first repeated term. Ends with the trivial subgroup
/// exactly when the group is nilpotent.
pub fn lower_central_series(g: &GroupTable) -> Vec<SubgroupSet> {
    let mut series = vec![SubgroupSet::whole(g.order())];
    loop {
        let next = commutator_with_group(g, series.last().unwrap());
        if next == *series.last().unwrap() {
            break;
        }
        series.push(next);
    }
    series
}

/// A subgroup re-indexed as a standalone group table, with the element map
/// back to the parent retained.
pub struct Restriction {
    pub table: GroupTable,
    /// `to_parent[i]` is the parent index of local element `i`.
    pub to_parent: Vec<u32>,
}

impl Restriction {
    pub fn local_of(&self, parent_index: u32) -> Option<u32> {
        self.to_parent
            .binary_search(&parent_index)
            .ok()
            .map(|i| i as u32)
    }

    /// Lifts a subgroup of the restricted table back into the parent.
    pub fn lift(&self, s: &SubgroupSet, parent_order: usize) -> SubgroupSet {
        let mut bits = BitSet::new(parent_order);
        for i in s.iter() {
            bits.insert(self.to_parent[i as usize] as usize);
        }
        let gens = s
            .generators()
            .map(|gs| gs.iter().map(|&i| self.to_parent[i as usize]).collect());
        SubgroupSet::from_bits(bits, parent_order, gens)
    }
}

/// Builds the multiplication table of a subgroup on its own index space.
/// Element 0 stays the identity because parent index 0 sorts first.
pub fn restriction(g: &GroupTable, s: &SubgroupSet) -> Restriction {
    let to_parent = s.elements();
    let mut local = vec![u32::MAX; g.order()];
    for (i, &p) in to_parent.iter().enumerate() {
        local[p as usize] = i as u32;
    }
    let k = to_parent.len();
    let mut table = Vec::with_capacity(k * k);
    for &x in &to_parent {
        for &y in &to_parent {
            let p = g.mul(x, y);
            let l = local[p as usize];
            assert!(l != u32::MAX, "set is not closed under multiplication");
            table.push(l);
        }
    }
    let name = format!("{}[{}]", g.name(), k);
    let table = GroupTable::from_flat(name, k, table, Verify::Trusted)
        .expect("restriction of a group is a group");
    Restriction { table, to_parent }
}
