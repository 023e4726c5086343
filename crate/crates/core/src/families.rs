//! Constructors for the finite families the toolkit works with: cyclic and
//! abelian groups, the maximal-class 2-groups, the minimal non-abelian
//! presentations K2/K3, reduced metacyclic presentations, and a maximal-class
//! catalog backed by power-commutator presentations.

use serde::{Deserialize, Serialize};

use crate::caps::{Caps, HARD_MAX_ORDER};
use crate::error::{Error, Result};
use crate::pc::{CommutatorRelation, PcPresentation};
use crate::product::{self, Action};
use crate::structure;
use crate::subgroup;
use crate::table::{GroupTable, Verify};

fn check_order(order: u64) -> Result<usize> {
    if order == 0 || order > HARD_MAX_ORDER as u64 {
        return Err(Error::input(format!(
            "group order {order} outside 1..={HARD_MAX_ORDER}"
        )));
    }
    Ok(order as usize)
}

/// Cyclic group of order `n`: `table[x][y] = x + y mod n`.
pub fn cyclic(n: u64) -> Result<GroupTable> {
    let n = check_order(n)?;
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            table[x * n + y] = ((x + y) % n) as u32;
        }
    }
    GroupTable::from_flat(format!("C{n}"), n, table, Verify::Full)
}

/// Direct product of cyclic groups of the given orders.
pub fn abelian(factors: &[u64]) -> Result<GroupTable> {
    let order: u64 = factors.iter().product();
    check_order(order)?;
    let mut g = cyclic(*factors.first().unwrap_or(&1))?;
    for &f in factors.iter().skip(1) {
        g = product::direct_product(&g, &cyclic(f)?)?;
    }
    Ok(g)
}

pub fn elementary_abelian(p: u32, k: u32) -> Result<GroupTable> {
    if !structure::is_prime(p) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    let mut g = abelian(&vec![p as u64; k as usize])?;
    g.set_name(format!("EA({p},{k})"));
    Ok(g)
}

fn two_power(order: u64, min_k: u32, what: &str) -> Result<(usize, usize)> {
    let n = check_order(order)?;
    match structure::prime_power(n) {
        Some((2, k)) if k >= min_k => Ok((n, n / 2)),
        _ => Err(Error::input(format!(
            "{what} needs order 2^k with k >= {min_k}, got {order}"
        ))),
    }
}

/// Dihedral group of order `2^k`, `k >= 3`. Elements are `a^i b^e` with
/// index `2i + e`.
pub fn dihedral(order: u64) -> Result<GroupTable> {
    let (n, m) = two_power(order, 3, "dihedral")?;
    let mut table = vec![0u32; n * n];
    for i in 0..m {
        for e in 0..2usize {
            let x = 2 * i + e;
            for j in 0..m {
                for d in 0..2usize {
                    let y = 2 * j + d;
                    let rot = if e == 0 { (i + j) % m } else { (i + m - j) % m };
                    table[x * n + y] = (2 * rot + (e ^ d)) as u32;
                }
            }
        }
    }
    GroupTable::from_flat(format!("D{n}"), n, table, Verify::Full)
}

/// Generalized quaternion group of order `2^k`, `k >= 3` (`Q8` for `k = 3`).
pub fn generalized_quaternion(order: u64) -> Result<GroupTable> {
    let (n, m) = two_power(order, 3, "generalized quaternion")?;
    let half = m / 2;
    let mut table = vec![0u32; n * n];
    for i in 0..m {
        for e in 0..2usize {
            let x = 2 * i + e;
            for j in 0..m {
                for d in 0..2usize {
                    let y = 2 * j + d;
                    let mut rot = if e == 0 { i + j } else { i + m - j };
                    if e == 1 && d == 1 {
                        rot += half;
                    }
                    table[x * n + y] = (2 * (rot % m) + (e ^ d)) as u32;
                }
            }
        }
    }
    GroupTable::from_flat(format!("Q{n}"), n, table, Verify::Full)
}

/// Semidihedral group of order `2^k`, `k >= 4`: `a^b = a^{2^{k-2} - 1}`.
pub fn semidihedral(order: u64) -> Result<GroupTable> {
    let (n, m) = two_power(order, 4, "semidihedral")?;
    let r = m / 2 - 1;
    let mut table = vec![0u32; n * n];
    for i in 0..m {
        for e in 0..2usize {
            let x = 2 * i + e;
            for j in 0..m {
                for d in 0..2usize {
                    let y = 2 * j + d;
                    let rot = if e == 0 { (i + j) % m } else { (i + r * j) % m };
                    table[x * n + y] = (2 * rot + (e ^ d)) as u32;
                }
            }
        }
    }
    GroupTable::from_flat(format!("SD{n}"), n, table, Verify::Full)
}

/// The symmetric group on three letters, as `C3` extended by the inverting
/// involution.
pub fn symmetric3() -> GroupTable {
    let mut g = product::semidirect_product(
        &cyclic(3).expect("C3"),
        &cyclic(2).expect("C2"),
        &Action::Inversion,
    )
    .expect("S3 construction");
    g.set_name("S3");
    g
}

/// Split or non-split metacyclic table on normal forms `a^i b^j`
/// (`0 <= i < am`, `0 <= j < bn`) with `a^b = a^r` and `b^{bn} = a^t`.
/// `a^t` must be central and `r` an automorphism compatible with the
/// extension; callers validate, the table check catches the rest.
fn metacyclic_table(
    name: String,
    am: u64,
    bn: u64,
    r: u64,
    t: u64,
) -> Result<GroupTable> {
    let n = check_order(am * bn)?;
    let am = am as usize;
    let bn = bn as usize;
    // powers of r modulo am
    let mut rpow = vec![1u64; bn];
    for j in 1..bn {
        rpow[j] = rpow[j - 1] * r % am as u64;
    }
    let mut table = vec![0u32; n * n];
    for i in 0..am {
        for j in 0..bn {
            let x = i * bn + j;
            for k in 0..am {
                let shifted = (i as u64 + k as u64 * rpow[j]) % am as u64;
                for l in 0..bn {
                    let y = k * bn + l;
                    let (jl, carry) = if j + l >= bn { (j + l - bn, 1) } else { (j + l, 0) };
                    let a_exp = (shifted + carry * t) % am as u64;
                    table[x * n + y] = (a_exp as usize * bn + jl) as u32;
                }
            }
        }
    }
    GroupTable::from_flat(name, n, table, Verify::Full)
}

/// Minimal non-abelian metacyclic group
/// `K2(p, m, n) = <a, b | a^{p^m} = b^{p^n} = 1, a^b = a^{1+p^{m-1}}>`
/// of order `p^{m+n}`, with `m >= 2`, `n >= 1`.
pub fn minimal_nonabelian_k2(p: u32, m: u32, n: u32) -> Result<GroupTable> {
    if !structure::is_prime(p) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    if m < 2 || n < 1 {
        return Err(Error::input(format!(
            "K2 needs m >= 2 and n >= 1, got ({m}, {n})"
        )));
    }
    let am = (p as u64).checked_pow(m).ok_or_else(|| Error::input("order overflow"))?;
    let bn = (p as u64).checked_pow(n).ok_or_else(|| Error::input("order overflow"))?;
    check_order(am * bn)?;
    let r = 1 + (p as u64).pow(m - 1);
    metacyclic_table(format!("K2({p},{m},{n})"), am, bn, r, 0)
}

/// Minimal non-abelian group
/// `K3(p, m, n) = <a, b, c | a^{p^m} = b^{p^n} = c^p = 1, [a,b] = c,
/// [c,a] = [c,b] = 1>` of order `p^{m+n+1}`, with `m + n > 2` when `p = 2`.
pub fn minimal_nonabelian_k3(p: u32, m: u32, n: u32) -> Result<GroupTable> {
    if !structure::is_prime(p) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    if m < 1 || n < 1 {
        return Err(Error::input(format!(
            "K3 needs m >= 1 and n >= 1, got ({m}, {n})"
        )));
    }
    if p == 2 && m + n <= 2 {
        // the order-8 candidate collapses onto the dihedral group D8, which
        // is already K2(2,2,1); see the classification
        return Err(Error::input(
            "K3 with p = 2 needs m + n > 2 (the (1,1) case is not a new group)",
        ));
    }
    let order = (p as u64)
        .checked_pow(m + n + 1)
        .ok_or_else(|| Error::input("order overflow"))?;
    check_order(order)?;
    let pres = PcPresentation {
        p,
        orders: vec![(p as u64).pow(m) as u32, (p as u64).pow(n) as u32, p],
        powers: vec![],
        commutators: vec![CommutatorRelation {
            i: 2,
            j: 1,
            word: vec![(3, 1)],
        }],
        name: Some(format!("K3({p},{m},{n})")),
    };
    crate::pc::from_pc_presentation(&pres, &Caps { max_order: HARD_MAX_ORDER, ..Caps::default() })
}

/// Parameters of a reduced metacyclic presentation
/// `<a, b | a^{p^m} = 1, b^{p^n} = a^{p^{m-s}}, a^b = a^{eps + p^{m-c}}>`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct KingParameters {
    pub p: u32,
    pub m: u32,
    pub n: u32,
    pub s: u32,
    pub c: u32,
    /// `+1`, or `-1` (only for `p = 2`).
    pub eps: i8,
}

impl KingParameters {
    /// The conjugation multiplier `eps + p^{m-c}` reduced modulo `p^m`.
    pub fn r(&self) -> u64 {
        let pm = (self.p as u64).pow(self.m);
        let raw = (self.p as i64).pow(self.m - self.c) + self.eps as i64;
        raw.rem_euclid(pm as i64) as u64
    }

    /// `t` with `b^{p^n} = a^t`, i.e. `p^{m-s}` reduced modulo `p^m`.
    pub fn t(&self) -> u64 {
        let pm = (self.p as u64).pow(self.m);
        (self.p as u64).pow(self.m - self.s) % pm
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.m + self.n)
    }

    /// Validates ranges and the two structural congruences: the conjugation
    /// map must be an automorphism of order dividing `p^n`, and the element
    /// `a^{p^{m-s}}` hit by `b^{p^n}` must be fixed by it.
    pub fn validate(&self) -> Result<()> {
        if !structure::is_prime(self.p) {
            return Err(Error::input(format!("{} is not prime", self.p)));
        }
        if self.m < 1 || self.n < 1 {
            return Err(Error::input("king presentation needs m >= 1 and n >= 1"));
        }
        if self.s > self.m || self.c > self.m {
            return Err(Error::input(format!(
                "king presentation needs 0 <= s, c <= m, got s={}, c={}, m={}",
                self.s, self.c, self.m
            )));
        }
        match self.eps {
            1 => {}
            -1 if self.p == 2 => {}
            -1 => return Err(Error::input("eps = -1 is only allowed for p = 2")),
            other => return Err(Error::input(format!("eps must be +1 or -1, got {other}"))),
        }
        // reduced form at p = 2: the multiplier eps + 2^{m-c} must really be
        // congruent to eps modulo 4, otherwise the same group has a
        // different canonical presentation and the center exponents (u, v)
        // refer to that one instead
        if self.p == 2 && self.eps == -1 && self.m - self.c < 2 {
            return Err(Error::input(format!(
                "eps = -1 needs m - c >= 2 (got m = {}, c = {}): the multiplier \
                 -1 + 2^(m-c) is not congruent to -1 mod 4",
                self.m, self.c
            )));
        }
        if self.p == 2 && self.eps == 1 && self.c > 0 && self.m - self.c < 2 {
            return Err(Error::input(format!(
                "eps = +1 with c > 0 needs m - c >= 2 (got m = {}, c = {}): the \
                 multiplier 1 + 2^(m-c) is not congruent to 1 mod 4",
                self.m, self.c
            )));
        }
        let pm = (self.p as u64).pow(self.m);
        let r = self.r();
        if modpow(r, (self.p as u64).pow(self.n), pm) != 1 % pm {
            return Err(Error::input(format!(
                "congruence r^(p^n) = 1 (mod p^m) fails: r = {r}, p^n = {}, p^m = {pm}",
                (self.p as u64).pow(self.n)
            )));
        }
        let t = self.t();
        if r * t % pm != t % pm {
            return Err(Error::input(format!(
                "congruence r * p^(m-s) = p^(m-s) (mod p^m) fails: r = {r}, p^(m-s) = {t}, p^m = {pm}"
            )));
        }
        Ok(())
    }

    /// The exponents `(u, v)` of the predicted center `<a^{p^u}, b^{p^v}>`.
    pub fn center_exponents(&self) -> (u32, u32) {
        if self.eps == 1 {
            (self.c, self.c)
        } else {
            (self.m - 1, self.c.max(1))
        }
    }
}

fn modpow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// A collected reduced metacyclic group together with its distinguished
/// generators and the predicted center.
#[derive(Debug)]
pub struct KingGroup {
    pub table: GroupTable,
    pub params: KingParameters,
    /// Element indices of the generators `a` and `b`.
    pub a: u32,
    pub b: u32,
    /// Predicted center exponents `(u, v)`.
    pub u: u32,
    pub v: u32,
    /// Element indices of the predicted center generators `a^{p^u}`, `b^{p^v}`.
    pub center_gens: [u32; 2],
}

/// Builds the reduced metacyclic presentation for validated parameters.
pub fn king_metacyclic(params: &KingParameters) -> Result<KingGroup> {
    params.validate()?;
    check_order(params.order())?;
    let am = (params.p as u64).pow(params.m);
    let bn = (params.p as u64).pow(params.n);
    let name = format!(
        "King({};{},{},{},{},{:+})",
        params.p, params.m, params.n, params.s, params.c, params.eps
    );
    let table = metacyclic_table(name, am, bn, params.r(), params.t())?;
    let a = bn as u32; // (1, 0)
    let b = 1u32; // (0, 1)
    let (u, v) = params.center_exponents();
    let pu = (params.p as u64).pow(u) as i64;
    let pv = (params.p as u64).pow(v) as i64;
    let center_gens = [table.pow(a, pu), table.pow(b, pv)];
    Ok(KingGroup {
        table,
        params: *params,
        a,
        b,
        u,
        v,
        center_gens,
    })
}

/// Power-commutator presentation of the split uniserial group of order
/// `p^n`: a single unipotent Jordan block acting on an elementary abelian
/// hyperplane. Generators: `g1` the acting element, `g2..gn` the base, with
/// `[g_j, g1] = g_{j+1}`. Consistent exactly when `n <= p + 1`; maximal
/// class with abelian 2-step centralizer, exponent `p` for `n <= p`.
pub fn chain_presentation(p: u32, n: u32) -> PcPresentation {
    let r = n as usize;
    let mut commutators = Vec::new();
    for j in 2..r as u32 {
        commutators.push(CommutatorRelation {
            i: j,
            j: 1,
            word: vec![(j + 1, 1)],
        });
    }
    PcPresentation {
        p,
        orders: vec![p; r],
        powers: vec![],
        commutators,
        name: Some(format!("Chain({p}^{n})")),
    }
}

/// One catalog entry: a named group with the descriptor that rebuilds it.
pub struct CatalogEntry {
    pub name: String,
    pub descriptor: GroupDescriptor,
    pub table: GroupTable,
}

/// Maximal-class groups of order `p^n` for `p` in `{2, 3, 5}`.
///
/// * `p = 2`: the classified dihedral / semidihedral / quaternion series.
/// * `p` odd, `n = 3`: `K2(p,2,1)` (the only metacyclic maximal-class order
///   for odd `p`) and the Heisenberg group `K3(p,1,1)`.
/// * `p` odd, `4 <= n <= p`: the exponent-p chain group, whose 2-step
///   centralizer is abelian.
/// * `p = 5, n = 5`: additionally one exponent-5 entry with non-abelian
///   2-step centralizer, found by a bounded deterministic search over the
///   free commutator structure constants.
pub fn maxclass_catalog(p: u32, n: u32, caps: &Caps) -> Result<Vec<CatalogEntry>> {
    let order = (p as u64).checked_pow(n).filter(|&o| o <= caps.max_order as u64);
    let Some(order) = order else {
        return Err(Error::CapExceeded {
            what: "maximal-class catalog",
            cap: caps.max_order,
            order: (p as u64).pow(n).min(u64::from(u32::MAX)) as usize,
        });
    };
    let mut entries = Vec::new();
    match (p, n) {
        (2, k) if k >= 3 => {
            entries.push(CatalogEntry {
                name: format!("D{order}"),
                descriptor: GroupDescriptor::Dihedral { k },
                table: dihedral(order)?,
            });
            if k >= 4 {
                entries.push(CatalogEntry {
                    name: format!("SD{order}"),
                    descriptor: GroupDescriptor::Semidihedral { k },
                    table: semidihedral(order)?,
                });
            }
            entries.push(CatalogEntry {
                name: format!("Q{order}"),
                descriptor: GroupDescriptor::Quaternion { k },
                table: generalized_quaternion(order)?,
            });
        }
        (3 | 5, 3) => {
            entries.push(CatalogEntry {
                name: format!("K2({p},2,1)"),
                descriptor: GroupDescriptor::K2 { p, m: 2, n: 1 },
                table: minimal_nonabelian_k2(p, 2, 1)?,
            });
            entries.push(CatalogEntry {
                name: format!("K3({p},1,1)"),
                descriptor: GroupDescriptor::K3 { p, m: 1, n: 1 },
                table: minimal_nonabelian_k3(p, 1, 1)?,
            });
        }
        (3, 4) | (5, 4) | (5, 5) => {
            let pres = chain_presentation(p, n);
            entries.push(CatalogEntry {
                name: pres.name.clone().unwrap(),
                descriptor: GroupDescriptor::Pc(pres.clone()),
                table: crate::pc::from_pc_presentation(&pres, caps)?,
            });
            if (p, n) == (5, 5) {
                if let Some(found) = search_nonabelian_p1(caps)? {
                    entries.push(found);
                }
            }
        }
        _ => {
            return Err(Error::input(format!(
                "unsupported maximal-class catalog request (p, n) = ({p}, {n})"
            )))
        }
    }
    for e in &entries {
        debug_assert!(structure::is_maximal_class(&e.table, p).unwrap());
    }
    Ok(entries)
}

/// Bounded search for an exponent-5, order 5^5, maximal-class group whose
/// 2-step centralizer is non-abelian. The free structure constants are
/// `[g3,g2] = g4^x g5^y` and `[g4,g2] = g5^z`; the grid is scanned in
/// lexicographic order and the first consistent hit is kept.
fn search_nonabelian_p1(caps: &Caps) -> Result<Option<CatalogEntry>> {
    let p = 5u32;
    let hit = (0u32..125)
        .filter_map(|idx| {
            let (x, y, z) = (idx / 25, idx / 5 % 5, idx % 5);
            if (x, y, z) == (0, 0, 0) {
                return None; // that is the chain group, abelian P1
            }
            let mut commutators = vec![
                CommutatorRelation { i: 2, j: 1, word: vec![(3, 1)] },
                CommutatorRelation { i: 3, j: 1, word: vec![(4, 1)] },
                CommutatorRelation { i: 4, j: 1, word: vec![(5, 1)] },
            ];
            let mut w32 = Vec::new();
            if x > 0 {
                w32.push((4u32, x));
            }
            if y > 0 {
                w32.push((5u32, y));
            }
            if !w32.is_empty() {
                commutators.push(CommutatorRelation { i: 3, j: 2, word: w32 });
            }
            if z > 0 {
                commutators.push(CommutatorRelation { i: 4, j: 2, word: vec![(5, z)] });
            }
            let pres = PcPresentation {
                p,
                orders: vec![5; 5],
                powers: vec![],
                commutators,
                name: Some(format!("MCx(5^5;{x},{y},{z})")),
            };
            let table = crate::pc::from_pc_presentation(&pres, caps).ok()?;
            if structure::exponent(&table) != 5 {
                return None;
            }
            if !structure::is_maximal_class(&table, p).ok()? {
                return None;
            }
            let p1 = structure::two_step_centralizer(&table).ok()?;
            if subgroup::is_abelian_subset(&table, &p1) {
                return None;
            }
            Some((idx, pres, table))
        })
        .next();
    Ok(hit.map(|(_, pres, table)| CatalogEntry {
        name: pres.name.clone().unwrap(),
        descriptor: GroupDescriptor::Pc(pres),
        table,
    }))
}

/// JSON-serializable recipe for building a group; the CLI descriptor
/// format.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GroupDescriptor {
    Cyclic { n: u64 },
    Abelian { factors: Vec<u64> },
    ElementaryAbelian { p: u32, k: u32 },
    /// Order `2^k`.
    Dihedral { k: u32 },
    Quaternion { k: u32 },
    Semidihedral { k: u32 },
    K2 { p: u32, m: u32, n: u32 },
    K3 { p: u32, m: u32, n: u32 },
    King { p: u32, m: u32, n: u32, s: u32, c: u32, eps: i8 },
    Pc(PcPresentation),
    Direct { left: Box<GroupDescriptor>, right: Box<GroupDescriptor> },
    Semidirect {
        normal: Box<GroupDescriptor>,
        acting: Box<GroupDescriptor>,
        action: ActionDescriptor,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ActionDescriptor {
    /// Currently only `"inversion"`.
    Named(String),
    Explicit { perms: Vec<Vec<u32>> },
}

impl ActionDescriptor {
    fn to_action(&self) -> Result<Action> {
        match self {
            ActionDescriptor::Named(s) if s == "inversion" => Ok(Action::Inversion),
            ActionDescriptor::Named(s) => {
                Err(Error::input(format!("unknown named action {s:?}")))
            }
            ActionDescriptor::Explicit { perms } => Ok(Action::Explicit(perms.clone())),
        }
    }
}

impl GroupDescriptor {
    /// Builds the table, enforcing `caps.max_order`.
    pub fn build(&self, caps: &Caps) -> Result<GroupTable> {
        let g = match self {
            GroupDescriptor::Cyclic { n } => cyclic(*n)?,
            GroupDescriptor::Abelian { factors } => abelian(factors)?,
            GroupDescriptor::ElementaryAbelian { p, k } => elementary_abelian(*p, *k)?,
            GroupDescriptor::Dihedral { k } => dihedral(1u64 << k)?,
            GroupDescriptor::Quaternion { k } => generalized_quaternion(1u64 << k)?,
            GroupDescriptor::Semidihedral { k } => semidihedral(1u64 << k)?,
            GroupDescriptor::K2 { p, m, n } => minimal_nonabelian_k2(*p, *m, *n)?,
            GroupDescriptor::K3 { p, m, n } => minimal_nonabelian_k3(*p, *m, *n)?,
            GroupDescriptor::King { p, m, n, s, c, eps } => {
                king_metacyclic(&KingParameters {
                    p: *p,
                    m: *m,
                    n: *n,
                    s: *s,
                    c: *c,
                    eps: *eps,
                })?
                .table
            }
            GroupDescriptor::Pc(pres) => crate::pc::from_pc_presentation(pres, caps)?,
            GroupDescriptor::Direct { left, right } => {
                product::direct_product(&left.build(caps)?, &right.build(caps)?)?
            }
            GroupDescriptor::Semidirect { normal, acting, action } => product::semidirect_product(
                &normal.build(caps)?,
                &acting.build(caps)?,
                &action.to_action()?,
            )?,
        };
        if g.order() > caps.max_order {
            return Err(Error::CapExceeded {
                what: "descriptor build",
                cap: caps.max_order,
                order: g.order(),
            });
        }
        Ok(g)
    }
}
