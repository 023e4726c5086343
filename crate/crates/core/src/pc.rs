//! Power-commutator presentations of finite p-groups and the collection
//! engine that turns them into multiplication tables.
//!
//! A presentation has generators `g1..gr` with relative orders that are
//! powers of `p`, a power relation `g_i^{o_i} = w` for each generator, and a
//! commutator relation `[g_i, g_j] = w` for each `i > j`. Relation words are
//! normal words over generators of strictly higher index than the relation's
//! lower generator (power relations: higher than `i`; commutators `[g_i,
//! g_j]`: higher than `j`).
//!
//! Collection from the left rewrites arbitrary products to normal form
//! `g1^{e1} ... gr^{er}`. Confluence is not proven; instead the finished
//! table is verified outright: latin-square property, full associativity via
//! a generator-based exact test, and every defining relation re-evaluated on
//! the table. An inconsistent presentation fails one of those checks and is
//! reported with the failing triple or relation.

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::table::{GroupTable, Verify};

/// One commutator relation `[g_i, g_j] = word` with `i > j` (1-based).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CommutatorRelation {
    pub i: u32,
    pub j: u32,
    /// Normal word as `(generator, exponent)` pairs, 1-based generators in
    /// strictly increasing order.
    pub word: Vec<(u32, u32)>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PcPresentation {
    pub p: u32,
    /// Relative order of each generator; each a power of `p`.
    pub orders: Vec<u32>,
    /// Power relation words, one per generator; empty list means all powers
    /// are trivial (`g_i^{o_i} = 1`).
    #[serde(default)]
    pub powers: Vec<Vec<(u32, u32)>>,
    #[serde(default)]
    pub commutators: Vec<CommutatorRelation>,
    #[serde(default)]
    pub name: Option<String>,
}

impl PcPresentation {
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn group_order(&self) -> u64 {
        self.orders.iter().map(|&o| o as u64).product()
    }

    fn word_ok(word: &[(u32, u32)], min_excl: u32, orders: &[u32]) -> std::result::Result<(), String> {
        let mut last = 0;
        for &(gen, exp) in word {
            if gen as usize > orders.len() || gen == 0 {
                return Err(format!("generator g{gen} out of range"));
            }
            if gen <= min_excl {
                return Err(format!(
                    "word uses g{gen}, but only generators above g{min_excl} are allowed here"
                ));
            }
            if gen <= last {
                return Err(format!("word is not normal: g{gen} after g{last}"));
            }
            if exp == 0 || exp >= orders[gen as usize - 1] {
                return Err(format!(
                    "exponent {exp} of g{gen} outside 1..{}",
                    orders[gen as usize - 1]
                ));
            }
            last = gen;
        }
        Ok(())
    }

    /// Checks the normal-form discipline; returns the full power-word table
    /// and commutator-word table indexed from 0.
    fn validate(&self) -> Result<(Vec<Vec<(u32, u32)>>, Vec<Vec<Vec<(u32, u32)>>>)> {
        let r = self.rank();
        if !crate::structure::is_prime(self.p) {
            return Err(Error::input(format!("{} is not prime", self.p)));
        }
        for (idx, &o) in self.orders.iter().enumerate() {
            let mut v = o;
            while v % self.p == 0 {
                v /= self.p;
            }
            if v != 1 || o < self.p {
                return Err(Error::input(format!(
                    "relative order {o} of g{} is not a positive power of {}",
                    idx + 1,
                    self.p
                )));
            }
        }
        let mut powers = vec![Vec::new(); r];
        if !self.powers.is_empty() {
            if self.powers.len() != r {
                return Err(Error::input(format!(
                    "{} power words for {r} generators",
                    self.powers.len()
                )));
            }
            for (i, w) in self.powers.iter().enumerate() {
                Self::word_ok(w, (i + 1) as u32, &self.orders)
                    .map_err(|e| Error::input(format!("power relation of g{}: {e}", i + 1)))?;
                powers[i] = w.clone();
            }
        }
        let mut comms = vec![vec![Vec::new(); r]; r];
        for rel in &self.commutators {
            if rel.j >= rel.i || rel.j == 0 || rel.i as usize > r {
                return Err(Error::input(format!(
                    "commutator relation needs r >= i > j >= 1, got [g{}, g{}]",
                    rel.i, rel.j
                )));
            }
            Self::word_ok(&rel.word, rel.j, &self.orders)
                .map_err(|e| Error::input(format!("[g{}, g{}]: {e}", rel.i, rel.j)))?;
            comms[rel.i as usize - 1][rel.j as usize - 1] = rel.word.clone();
        }
        Ok((powers, comms))
    }
}

struct Collector {
    orders: Vec<u32>,
    /// power_letters[i]: the power word of g_i as a flat letter list.
    power_letters: Vec<Vec<u32>>,
    /// comm_letters[i][j] (i > j): word for [g_i, g_j] as flat letters.
    comm_letters: Vec<Vec<Vec<u32>>>,
}

fn flatten(word: &[(u32, u32)]) -> Vec<u32> {
    let mut out = Vec::new();
    for &(gen, exp) in word {
        for _ in 0..exp {
            out.push(gen - 1);
        }
    }
    out
}

const COLLECTION_BUDGET: u64 = 50_000_000;

impl Collector {
    fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Normal form of a letter sequence, collected from the identity.
    fn collect_letters(&self, letters: &[u32]) -> Result<Vec<u32>> {
        let mut e = vec![0u32; self.rank()];
        for &l in letters {
            self.mul_gen(&mut e, l as usize)?;
        }
        Ok(e)
    }

    /// Right-multiplies the normal form `e` by another normal form.
    fn mul_normal(&self, e: &mut Vec<u32>, rhs: &[u32]) -> Result<()> {
        for (i, &exp) in rhs.iter().enumerate() {
            for _ in 0..exp {
                self.mul_gen(e, i)?;
            }
        }
        Ok(())
    }

    /// Word-level overlap checks: both collections of each ambiguous
    /// product must agree. Sound as a rejection test, because in a
    /// consistent presentation every rewrite preserves the represented
    /// element and normal forms are unique. Survivors are still verified on
    /// the finished table.
    fn overlap_check(&self) -> Result<()> {
        let r = self.rank();
        // ((g_k g_j) g_i) vs (g_k (g_j g_i)) for k > j > i
        for k in 0..r {
            for j in 0..k {
                for i in 0..j {
                    let lhs = self.collect_letters(&[k as u32, j as u32, i as u32])?;
                    let inner = self.collect_letters(&[j as u32, i as u32])?;
                    let mut rhs = self.collect_letters(&[k as u32])?;
                    self.mul_normal(&mut rhs, &inner)?;
                    if lhs != rhs {
                        return Err(Error::InconsistentPresentation(format!(
                            "overlap (g{} g{}) g{} != g{} (g{} g{})",
                            k + 1, j + 1, i + 1, k + 1, j + 1, i + 1
                        )));
                    }
                }
            }
        }
        // (g_j^{o_j}) g_i via the power word vs via the carry path, j > i
        for j in 0..r {
            for i in 0..j {
                let mut lhs = self.collect_letters(&self.power_letters[j])?;
                self.mul_gen(&mut lhs, i)?;
                let mut rhs = vec![0u32; r];
                rhs[j] = self.orders[j] - 1;
                self.mul_gen(&mut rhs, j)?;
                self.mul_gen(&mut rhs, i)?;
                if lhs != rhs {
                    return Err(Error::InconsistentPresentation(format!(
                        "overlap (g{}^o) g{} differs between power-word and carry paths",
                        j + 1, i + 1
                    )));
                }
            }
        }
        // g_i^{o_i + 1} both ways
        for i in 0..r {
            let mut lhs = self.collect_letters(&self.power_letters[i])?;
            self.mul_gen(&mut lhs, i)?;
            let mut rhs = vec![0u32; r];
            rhs[i] = 1;
            for _ in 0..self.orders[i] {
                self.mul_gen(&mut rhs, i)?;
            }
            if lhs != rhs {
                return Err(Error::InconsistentPresentation(format!(
                    "overlap g{}^(o+1) differs between power-word and carry paths",
                    i + 1
                )));
            }
        }
        Ok(())
    }
    /// Multiplies the normal form `e` by generator `k` in place, by bubbling
    /// the new letter leftwards through the tail and applying power
    /// relations on carry. Budgeted: a blow-up is reported as inconsistency.
    fn mul_gen(&self, e: &mut [u32], k: usize) -> Result<()> {
        let r = self.orders.len();
        let mut stack: Vec<u32> = vec![k as u32];
        let mut budget = COLLECTION_BUDGET;
        while let Some(t) = stack.pop() {
            if budget == 0 {
                return Err(Error::InconsistentPresentation(
                    "collection exceeded its step budget (diverging rewrite)".into(),
                ));
            }
            budget -= 1;
            let t = t as usize;
            // last tail letter beyond t, if any
            if let Some(s) = (t + 1..r).rev().find(|&s| e[s] > 0) {
                // g_s g_t = g_t g_s [g_s, g_t]
                e[s] -= 1;
                for &w in self.comm_letters[s][t].iter().rev() {
                    stack.push(w);
                }
                stack.push(s as u32);
                stack.push(t as u32);
            } else {
                e[t] += 1;
                if e[t] == self.orders[t] {
                    e[t] = 0;
                    for &w in self.power_letters[t].iter().rev() {
                        stack.push(w);
                    }
                }
            }
        }
        Ok(())
    }
}

/// Collects a presentation into a verified [`GroupTable`].
///
/// The element at index `x` is the normal form with mixed-radix digits of
/// `x` (generator 1 most significant), so the identity is index 0 and
/// generator `g_i` is the `i`-th radix unit.
pub fn from_pc_presentation(pres: &PcPresentation, caps: &Caps) -> Result<GroupTable> {
    let (powers, comms) = pres.validate()?;
    let order = pres.group_order();
    if order > caps.max_order as u64 {
        return Err(Error::CapExceeded {
            what: "pc collection",
            cap: caps.max_order,
            order: order as usize,
        });
    }
    let n = order as usize;
    let r = pres.rank();
    let collector = Collector {
        orders: pres.orders.clone(),
        power_letters: powers.iter().map(|w| flatten(w)).collect(),
        comm_letters: comms
            .iter()
            .map(|row| row.iter().map(|w| flatten(w)).collect())
            .collect(),
    };
    collector.overlap_check()?;

    // strides of the mixed-radix element indexing
    let mut stride = vec![1u64; r];
    for i in (0..r.saturating_sub(1)).rev() {
        stride[i] = stride[i + 1] * pres.orders[i + 1] as u64;
    }
    let digits = |mut x: u64| -> Vec<u32> {
        let mut e = vec![0u32; r];
        for i in 0..r {
            e[i] = (x / stride[i]) as u32;
            x %= stride[i];
        }
        e
    };
    let index = |e: &[u32]| -> u64 {
        e.iter()
            .zip(&stride)
            .map(|(&d, &s)| d as u64 * s)
            .sum::<u64>()
    };

    // right-multiplication column for each generator, by collection
    let mut gen_cols: Vec<Vec<u32>> = Vec::with_capacity(r);
    for k in 0..r {
        let mut col = vec![0u32; n];
        for (x, slot) in col.iter_mut().enumerate() {
            let mut e = digits(x as u64);
            collector.mul_gen(&mut e, k)?;
            *slot = index(&e) as u32;
        }
        gen_cols.push(col);
    }

    // every other column composes as col_{y' * g_k} = col_{g_k} o col_{y'}
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        table[x * n] = x as u32;
    }
    for y in 1..n {
        let e = digits(y as u64);
        let k = (0..r).rev().find(|&i| e[i] > 0).expect("nonzero index");
        let yprev = y as u64 - stride[k];
        let col_k = &gen_cols[k];
        for x in 0..n {
            let via = table[x * n + yprev as usize] as usize;
            table[x * n + y] = col_k[via];
        }
    }

    let name = pres
        .name
        .clone()
        .unwrap_or_else(|| format!("Pc({};r{})", pres.p, r));
    let g = GroupTable::from_flat(name, n, table, Verify::Full).map_err(|e| match e {
        Error::InvalidTable(msg) => Error::InconsistentPresentation(msg),
        other => other,
    })?;

    // re-evaluate the defining relations on the finished table
    let gen_elem = |i: usize| stride[i] as u32;
    let eval_word = |word: &[(u32, u32)]| -> u32 {
        let mut acc = 0u32;
        for &(gen, exp) in word {
            for _ in 0..exp {
                acc = g.mul(acc, gen_elem(gen as usize - 1));
            }
        }
        acc
    };
    for i in 0..r {
        let lhs = g.pow(gen_elem(i), pres.orders[i] as i64);
        let rhs = eval_word(&powers[i]);
        if lhs != rhs {
            return Err(Error::InconsistentPresentation(format!(
                "power relation of g{} does not hold on the collected table \
                 (g{}^{} = element {lhs}, word gives {rhs})",
                i + 1,
                i + 1,
                pres.orders[i]
            )));
        }
    }
    for i in 0..r {
        for j in 0..i {
            let lhs = g.commutator(gen_elem(i), gen_elem(j));
            let rhs = eval_word(&comms[i][j]);
            if lhs != rhs {
                return Err(Error::InconsistentPresentation(format!(
                    "commutator relation [g{}, g{}] does not hold on the collected table",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(g)
}
