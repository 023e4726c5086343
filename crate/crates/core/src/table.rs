//! Dense multiplication tables for finite groups.
//!
//! A [`GroupTable`] stores the full `n x n` product table over element
//! indices, with the identity pinned at index `0`, plus the inverse array.
//! Multiplication is a single lookup, which is what makes the set-algebra
//! hot loops elsewhere in the crate cheap.

use std::io::{BufRead, Write};
use std::sync::Arc;

use dashmap::DashMap;

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::subgroup::SubgroupSet;

pub(crate) type ClosureMemo = Arc<DashMap<Box<[u32]>, Arc<SubgroupSet>>>;

/// How much validation a freshly built table gets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verify {
    /// Identity laws, latin-square property, two-sided inverses, and full
    /// associativity. Required for tables from untrusted sources (files,
    /// collected presentations) and cheap enough for formula-built families.
    Full,
    /// Identity laws, latin-square property, inverses. For tables assembled
    /// from parts that are already verified groups (direct and semidirect
    /// products with a checked action, restrictions to subgroups), where
    /// associativity holds by construction.
    Trusted,
}

#[derive(Clone)]
pub struct GroupTable {
    name: String,
    n: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    /// Memoized subgroup closures keyed by canonical generator set. The
    /// membership scans request the same closures O(n^2) times.
    pub(crate) memo: ClosureMemo,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupTable({:?}, order {})", self.name, self.n)
    }
}

impl GroupTable {
    /// Builds a table from rows, running the requested level of validation.
    pub fn from_rows(name: impl Into<String>, rows: Vec<Vec<u32>>, verify: Verify) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row length {} != order {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v as usize >= n {
                    return Err(Error::InvalidTable(format!(
                        "entry {v} out of range for order {n}"
                    )));
                }
            }
            table.extend_from_slice(row);
        }
        Self::from_flat(name, n, table, verify)
    }

    pub(crate) fn from_flat(
        name: impl Into<String>,
        n: usize,
        table: Vec<u32>,
        verify: Verify,
    ) -> Result<Self> {
        debug_assert_eq!(table.len(), n * n);
        check_identity(&table, n)?;
        check_latin(&table, n)?;
        if verify == Verify::Full {
            let gens = greedy_generators_raw(&table, n);
            check_associative(&table, n, &gens)?;
        }
        let inverse = build_inverses(&table, n)?;
        Ok(GroupTable {
            name: name.into(),
            n,
            table,
            inverse,
            memo: Arc::new(DashMap::new()),
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    /// `x * y` by table lookup. Panics on out-of-range indices; use
    /// [`GroupTable::checked_mul`] at trust boundaries.
    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.table[x as usize * self.n + y as usize]
    }

    #[inline]
    pub fn inv(&self, x: u32) -> u32 {
        self.inverse[x as usize]
    }

    /// `x^k` for any integer exponent.
    pub fn pow(&self, x: u32, k: i64) -> u32 {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut e = k.unsigned_abs();
        let mut acc = 0u32;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// Commutator `[x, y] = x^-1 y^-1 x y`.
    #[inline]
    pub fn commutator(&self, x: u32, y: u32) -> u32 {
        let a = self.mul(self.inv(x), self.inv(y));
        let b = self.mul(x, y);
        self.mul(a, b)
    }

    /// Conjugate `x^y = y^-1 x y`.
    #[inline]
    pub fn conjugate(&self, x: u32, y: u32) -> u32 {
        self.mul(self.mul(self.inv(y), x), y)
    }

    /// Least `k >= 1` with `x^k = 1`.
    pub fn element_order(&self, x: u32) -> u32 {
        let mut k = 1;
        let mut acc = x;
        while acc != 0 {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    fn check_index(&self, x: u32) -> Result<()> {
        if (x as usize) < self.n {
            Ok(())
        } else {
            Err(Error::input(format!(
                "element index {x} out of range for group of order {}",
                self.n
            )))
        }
    }

    pub fn checked_mul(&self, x: u32, y: u32) -> Result<u32> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(self.mul(x, y))
    }

    pub fn checked_inv(&self, x: u32) -> Result<u32> {
        self.check_index(x)?;
        Ok(self.inv(x))
    }

    pub fn checked_pow(&self, x: u32, k: i64) -> Result<u32> {
        self.check_index(x)?;
        Ok(self.pow(x, k))
    }

    pub fn checked_commutator(&self, x: u32, y: u32) -> Result<u32> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(self.commutator(x, y))
    }

    pub fn checked_element_order(&self, x: u32) -> Result<u32> {
        self.check_index(x)?;
        Ok(self.element_order(x))
    }

    pub fn is_abelian(&self) -> bool {
        for x in 1..self.n as u32 {
            for y in (x + 1)..self.n as u32 {
                if self.mul(x, y) != self.mul(y, x) {
                    return false;
                }
            }
        }
        true
    }

    /// A small generating set found greedily: repeatedly adjoin the least
    /// element outside the current closure. At most log2(n) generators.
    pub fn greedy_generators(&self) -> Vec<u32> {
        greedy_generators_raw(&self.table, self.n)
    }

    /// Identical table contents (name and caches ignored).
    pub fn same_table(&self, other: &GroupTable) -> bool {
        self.n == other.n && self.table == other.table
    }

    /// Writes the `.tbl` text format: line 1 the order, then one row of
    /// space-separated 0-based indices per line.
    pub fn write_tbl<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "{}", self.n)?;
        let mut line = String::new();
        for x in 0..self.n {
            line.clear();
            for y in 0..self.n {
                if y > 0 {
                    line.push(' ');
                }
                line.push_str(&self.table[x * self.n + y].to_string());
            }
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    /// Reads and fully validates a `.tbl` file. Rejects non-associative
    /// tables, bad identities, and malformed input.
    pub fn read_tbl<R: BufRead>(name: impl Into<String>, r: R, caps: &Caps) -> Result<Self> {
        let mut lines = r.lines();
        let first = lines
            .next()
            .ok_or_else(|| Error::InvalidTable("empty file".into()))??;
        let n: usize = first
            .trim()
            .parse()
            .map_err(|_| Error::InvalidTable(format!("bad order line {first:?}")))?;
        if n == 0 {
            return Err(Error::InvalidTable("order 0".into()));
        }
        if n > caps.max_order {
            return Err(Error::CapExceeded {
                what: "table load",
                cap: caps.max_order,
                order: n,
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::InvalidTable(format!("missing row {i}")))??;
            let mut count = 0;
            for tok in line.split_whitespace() {
                let v: u32 = tok
                    .parse()
                    .map_err(|_| Error::InvalidTable(format!("bad entry {tok:?} in row {i}")))?;
                if v as usize >= n {
                    return Err(Error::InvalidTable(format!(
                        "entry {v} out of range in row {i}"
                    )));
                }
                table.push(v);
                count += 1;
            }
            if count != n {
                return Err(Error::InvalidTable(format!(
                    "row {i} has {count} entries, expected {n}"
                )));
            }
        }
        Self::from_flat(name, n, table, Verify::Full)
    }

    /// Convenience wrapper for elements as a full-group [`BitSet`].
    pub fn all_elements(&self) -> BitSet {
        BitSet::full(self.n)
    }
}

fn check_identity(table: &[u32], n: usize) -> Result<()> {
    for y in 0..n {
        if table[y] != y as u32 {
            return Err(Error::InvalidTable(format!(
                "index 0 is not a left identity: 0*{y} = {}",
                table[y]
            )));
        }
        if table[y * n] != y as u32 {
            return Err(Error::InvalidTable(format!(
                "index 0 is not a right identity: {y}*0 = {}",
                table[y * n]
            )));
        }
    }
    Ok(())
}

fn check_latin(table: &[u32], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for x in 0..n {
        seen.fill(false);
        for y in 0..n {
            let v = table[x * n + y] as usize;
            if seen[v] {
                return Err(Error::InvalidTable(format!("row {x} repeats entry {v}")));
            }
            seen[v] = true;
        }
    }
    for y in 0..n {
        seen.fill(false);
        for x in 0..n {
            let v = table[x * n + y] as usize;
            if seen[v] {
                return Err(Error::InvalidTable(format!("column {y} repeats entry {v}")));
            }
            seen[v] = true;
        }
    }
    Ok(())
}

fn build_inverses(table: &[u32], n: usize) -> Result<Vec<u32>> {
    let mut inverse = vec![0u32; n];
    for x in 0..n {
        let mut right = None;
        for y in 0..n {
            if table[x * n + y] == 0 {
                right = Some(y as u32);
                break;
            }
        }
        let y = right.ok_or_else(|| Error::InvalidTable(format!("{x} has no right inverse")))?;
        if table[y as usize * n + x] != 0 {
            return Err(Error::InvalidTable(format!(
                "right inverse {y} of {x} is not a left inverse"
            )));
        }
        inverse[x] = y;
    }
    Ok(inverse)
}

/// Closure of a set of generators under the raw table operation. Used both
/// before and after a table is known to be a group.
fn raw_closure(table: &[u32], n: usize, gens: &[u32]) -> BitSet {
    let mut bits = BitSet::new(n);
    let mut elems: Vec<u32> = vec![0];
    bits.insert(0);
    let mut queue: Vec<u32> = Vec::new();
    for &g in gens {
        if bits.insert(g as usize) {
            elems.push(g);
            queue.push(g);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let mut i = 0;
        while i < elems.len() {
            let y = elems[i];
            for p in [table[x as usize * n + y as usize], table[y as usize * n + x as usize]] {
                if bits.insert(p as usize) {
                    elems.push(p);
                    queue.push(p);
                }
            }
            i += 1;
        }
    }
    bits
}

fn greedy_generators_raw(table: &[u32], n: usize) -> Vec<u32> {
    let mut gens = Vec::new();
    let mut closed = raw_closure(table, n, &[]);
    while closed.count() < n {
        let g = (0..n).find(|&i| !closed.contains(i)).unwrap() as u32;
        gens.push(g);
        closed = raw_closure(table, n, &gens);
    }
    gens
}

/// Exact associativity verification via Light's test: with `gens` generating
/// the table under its own operation, `(x*g)*y = x*(g*y)` for all `x, y` and
/// all `g` in `gens` implies associativity of every triple.
fn check_associative(table: &[u32], n: usize, gens: &[u32]) -> Result<()> {
    let closure = raw_closure(table, n, gens);
    if closure.count() != n {
        return Err(Error::InvalidTable(
            "generating set does not close over the table".into(),
        ));
    }
    for &g in gens {
        let g = g as usize;
        for x in 0..n {
            let xg = table[x * n + g] as usize;
            for y in 0..n {
                let gy = table[g * n + y] as usize;
                if table[xg * n + y] != table[x * n + gy] {
                    return Err(Error::InvalidTable(format!(
                        "associativity fails on triple ({x}, {g}, {y}): \
                         ({x}*{g})*{y} = {} but {x}*({g}*{y}) = {}",
                        table[xg * n + y],
                        table[x * n + gy]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Brute-force check of all n^3 triples. Only sensible for small tables;
/// kept as the independent oracle for Light's test.
pub fn check_associative_all_triples(g: &GroupTable) -> bool {
    let n = g.order() as u32;
    for x in 0..n {
        for y in 0..n {
            let xy = g.mul(x, y);
            for z in 0..n {
                if g.mul(xy, z) != g.mul(x, g.mul(y, z)) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn cyclic_six_basics() {
        let g = families::cyclic(6).unwrap();
        assert_eq!(g.order(), 6);
        // order of a generator of C6 is 6
        assert_eq!(g.element_order(1), 6);
        assert_eq!(g.mul(4, 5), 3);
        assert_eq!(g.inv(2), 4);
        assert_eq!(g.pow(1, -1), 5);
        assert_eq!(g.pow(5, 7), g.pow(5, 1));
    }

    #[test]
    fn commutator_with_self_is_identity() {
        for g in [
            families::cyclic(8).unwrap(),
            families::generalized_quaternion(8).unwrap(),
            families::dihedral(16).unwrap(),
        ] {
            for x in 0..g.order() as u32 {
                assert_eq!(g.commutator(x, x), 0);
            }
        }
    }

    #[test]
    fn quaternion_commutator_is_central_involution() {
        let q8 = families::generalized_quaternion(8).unwrap();
        // brute force over the table: the unique element of order 2
        let involutions: Vec<u32> = (1..8).filter(|&x| q8.element_order(x) == 2).collect();
        assert_eq!(involutions.len(), 1);
        let z = involutions[0];
        // any two non-commuting elements have commutator z
        let (mut i, mut j) = (0, 0);
        'outer: for x in 1..8 {
            for y in 1..8 {
                if q8.mul(x, y) != q8.mul(y, x) {
                    (i, j) = (x, y);
                    break 'outer;
                }
            }
        }
        assert_eq!(q8.commutator(i, j), z);
        assert_eq!(q8.element_order(q8.commutator(i, j)), 2);
    }

    #[test]
    fn checked_ops_reject_out_of_range() {
        let g = families::cyclic(4).unwrap();
        assert!(g.checked_mul(0, 4).is_err());
        assert!(g.checked_inv(7).is_err());
        assert!(g.checked_pow(4, 2).is_err());
        assert!(g.checked_commutator(1, 9).is_err());
        assert!(g.checked_element_order(4).is_err());
        assert!(g.checked_mul(3, 3).is_ok());
    }

    #[test]
    fn tbl_round_trip() {
        let g = families::dihedral(8).unwrap();
        let mut buf = Vec::new();
        g.write_tbl(&mut buf).unwrap();
        let h = GroupTable::read_tbl("D8", buf.as_slice(), &Caps::default()).unwrap();
        assert!(g.same_table(&h));
    }

    #[test]
    fn tbl_rejects_truncation_and_garbage() {
        let g = families::cyclic(5).unwrap();
        let mut buf = Vec::new();
        g.write_tbl(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let truncated: String = text.lines().take(3).collect::<Vec<_>>().join("\n");
        assert!(GroupTable::read_tbl("t", truncated.as_bytes(), &Caps::default()).is_err());
        assert!(GroupTable::read_tbl("t", "not a number\n".as_bytes(), &Caps::default()).is_err());
        let out_of_range = "2\n0 1\n1 2\n";
        assert!(GroupTable::read_tbl("t", out_of_range.as_bytes(), &Caps::default()).is_err());
    }

    #[test]
    fn tbl_rejects_non_associative_latin_square() {
        // C6 table with an intercalate flipped: still latin with identity
        // row/column intact, but no longer associative.
        let g = families::cyclic(6).unwrap();
        let n = 6usize;
        let mut rows: Vec<Vec<u32>> = (0..n)
            .map(|x| (0..n).map(|y| g.mul(x as u32, y as u32)).collect())
            .collect();
        // cells (1,1)/(1,4)/(4,1)/(4,4) hold {2,5,5,2}; swap the pairs
        assert_eq!((rows[1][1], rows[1][4], rows[4][1], rows[4][4]), (2, 5, 5, 2));
        rows[1][1] = 5;
        rows[1][4] = 2;
        rows[4][1] = 2;
        rows[4][4] = 5;
        let mut text = format!("{n}\n");
        for row in &rows {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            text.push_str(&line.join(" "));
            text.push('\n');
        }
        let err = GroupTable::read_tbl("bad", text.as_bytes(), &Caps::default());
        assert!(err.is_err(), "mutated table must be rejected: {err:?}");
    }

    #[test]
    fn lights_test_agrees_with_all_triples() {
        // Light's test is the production check; cross-validate against the
        // cubic oracle on a mixed bag of small groups.
        for g in [
            families::cyclic(12).unwrap(),
            families::dihedral(16).unwrap(),
            families::generalized_quaternion(16).unwrap(),
            families::abelian(&[4, 2]).unwrap(),
        ] {
            assert!(check_associative_all_triples(&g));
            let gens = g.greedy_generators();
            let rows: Vec<Vec<u32>> = (0..g.order())
                .map(|x| (0..g.order()).map(|y| g.mul(x as u32, y as u32)).collect())
                .collect();
            assert!(GroupTable::from_rows("copy", rows, Verify::Full).is_ok());
            assert!(!gens.is_empty());
        }
    }
}
