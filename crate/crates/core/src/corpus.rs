//! Constructor-generated corpora of groups for the theorem harness, the
//! survey command, and the acceptance suite. Everything is deterministic:
//! the same spec always yields the same entries in the same order.

use crate::caps::Caps;
use crate::error::Result;
use crate::families::{self, ActionDescriptor, GroupDescriptor, KingParameters};
use crate::structure;
use crate::table::GroupTable;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub descriptor: GroupDescriptor,
    pub table: GroupTable,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub description: String,
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn from_descriptors(
        description: impl Into<String>,
        descriptors: Vec<GroupDescriptor>,
        caps: &Caps,
    ) -> Result<Corpus> {
        let mut entries = Vec::with_capacity(descriptors.len());
        for d in descriptors {
            let table = d.build(caps)?;
            entries.push(CorpusEntry {
                descriptor: d,
                table,
            });
        }
        Ok(Corpus {
            description: description.into(),
            entries,
        })
    }
}

/// Cyclic groups, a spread of abelian products, and bounded elementary
/// abelian groups. The elementary abelian ranks are kept small enough that
/// full lattice enumeration stays affordable.
pub fn abelian_descriptors(max_order: u64) -> Vec<GroupDescriptor> {
    let mut out = Vec::new();
    for n in 1..=max_order.min(64) {
        out.push(GroupDescriptor::Cyclic { n });
    }
    let products: &[&[u64]] = &[
        &[2, 2],
        &[4, 2],
        &[4, 4],
        &[8, 2],
        &[4, 2, 2],
        &[8, 4],
        &[8, 8],
        &[16, 2],
        &[16, 4],
        &[16, 16],
        &[32, 2],
        &[64, 2],
        &[9, 3],
        &[9, 9],
        &[27, 3],
        &[27, 9],
        &[81, 3],
        &[25, 5],
        &[6, 2],
        &[6, 6],
        &[10, 2],
        &[12, 2],
        &[12, 12],
        &[15, 3],
    ];
    for &fs in products {
        if fs.iter().product::<u64>() <= max_order {
            out.push(GroupDescriptor::Abelian {
                factors: fs.to_vec(),
            });
        }
    }
    for (p, kmax) in [(2u32, 6u32), (3, 4), (5, 3), (7, 2)] {
        for k in 2..=kmax {
            if (p as u64).pow(k) <= max_order {
                out.push(GroupDescriptor::ElementaryAbelian { p, k });
            }
        }
    }
    out
}

/// The maximal-class 2-groups in an order window.
pub fn maxclass2_descriptors(min_order: u64, max_order: u64) -> Vec<GroupDescriptor> {
    let mut out = Vec::new();
    let mut k = 3u32;
    while 1u64 << k <= max_order {
        if 1u64 << k >= min_order {
            out.push(GroupDescriptor::Dihedral { k });
            if k >= 4 {
                out.push(GroupDescriptor::Semidihedral { k });
            }
            out.push(GroupDescriptor::Quaternion { k });
        }
        k += 1;
    }
    out
}

pub fn k2_descriptors(ps: &[u32], max_order: u64) -> Vec<GroupDescriptor> {
    let mut out = Vec::new();
    for &p in ps {
        for m in 2..16u32 {
            for n in 1..16u32 {
                match (p as u64).checked_pow(m + n) {
                    Some(o) if o <= max_order => out.push(GroupDescriptor::K2 { p, m, n }),
                    _ => {}
                }
            }
        }
    }
    out
}

pub fn k3_descriptors(ps: &[u32], max_order: u64) -> Vec<GroupDescriptor> {
    let mut out = Vec::new();
    for &p in ps {
        for m in 1..16u32 {
            for n in 1..=m {
                if p == 2 && m + n <= 2 {
                    continue;
                }
                match (p as u64).checked_pow(m + n + 1) {
                    Some(o) if o <= max_order => out.push(GroupDescriptor::K3 { p, m, n }),
                    _ => {}
                }
            }
        }
    }
    out
}

/// Every valid reduced metacyclic parameter tuple with order within bounds.
pub fn king_descriptors(ps: &[u32], max_order: u64) -> Vec<GroupDescriptor> {
    let mut out = Vec::new();
    for &p in ps {
        for m in 1..16u32 {
            for n in 1..16u32 {
                let Some(order) = (p as u64).checked_pow(m + n) else {
                    continue;
                };
                if order > max_order {
                    continue;
                }
                for s in 0..=m {
                    for c in 0..=m {
                        for eps in if p == 2 { vec![1i8, -1] } else { vec![1i8] } {
                            let params = KingParameters { p, m, n, s, c, eps };
                            if params.validate().is_ok() {
                                out.push(GroupDescriptor::King { p, m, n, s, c, eps });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn s3_descriptor() -> GroupDescriptor {
    GroupDescriptor::Semidirect {
        normal: Box::new(GroupDescriptor::Cyclic { n: 3 }),
        acting: Box::new(GroupDescriptor::Cyclic { n: 2 }),
        action: ActionDescriptor::Named("inversion".into()),
    }
}

/// Extends generator images to a full action `H -> Sym(N)` by breadth-first
/// products; the semidirect constructor re-verifies everything afterwards.
fn extend_action(h: &GroupTable, gens: &[(u32, Vec<u32>)], n_size: usize) -> Vec<Vec<u32>> {
    let identity: Vec<u32> = (0..n_size as u32).collect();
    let mut perms: Vec<Option<Vec<u32>>> = vec![None; h.order()];
    perms[0] = Some(identity);
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (gen, sigma) in gens {
            let y = h.mul(x, *gen);
            if perms[y as usize].is_none() {
                // phi(x * g) = phi(x) o phi(g)
                let px = perms[x as usize].as_ref().unwrap();
                let composed: Vec<u32> =
                    (0..n_size).map(|i| px[sigma[i] as usize]).collect();
                perms[y as usize] = Some(composed);
                queue.push(y);
            }
        }
    }
    perms.into_iter().map(|p| p.expect("generators span H")).collect()
}

/// `S4` as the Klein four-group extended by `S3` permuting its involutions.
pub fn s4_descriptor() -> GroupDescriptor {
    let s3 = families::symmetric3();
    // V4 = EA(2,2): involutions are indices 1, 2, 3
    // rot (an order-3 element) acts as the 3-cycle 1 -> 2 -> 3 -> 1,
    // refl (an order-2 element) swaps 2 and 3
    let rot = (0..6u32).find(|&x| s3.element_order(x) == 3).unwrap();
    let refl = (0..6u32).find(|&x| s3.element_order(x) == 2).unwrap();
    let rot_perm = vec![0u32, 2, 3, 1];
    let refl_perm = vec![0u32, 1, 3, 2];
    let perms = extend_action(&s3, &[(rot, rot_perm), (refl, refl_perm)], 4);
    GroupDescriptor::Semidirect {
        normal: Box::new(GroupDescriptor::ElementaryAbelian { p: 2, k: 2 }),
        acting: Box::new(s3_descriptor()),
        action: ActionDescriptor::Explicit { perms },
    }
}

/// Small non-nilpotent groups and products mixing primes; includes the
/// negative examples for the self-centralizing property.
pub fn product_descriptors(max_order: u64) -> Vec<GroupDescriptor> {
    let direct = |l: GroupDescriptor, r: GroupDescriptor| GroupDescriptor::Direct {
        left: Box::new(l),
        right: Box::new(r),
    };
    let mut out = vec![s3_descriptor()];
    let mut push = |d: GroupDescriptor, order: u64| {
        if order <= max_order {
            out.push(d);
        }
    };
    push(direct(GroupDescriptor::Cyclic { n: 2 }, s3_descriptor()), 12);
    push(s4_descriptor(), 24);
    push(direct(GroupDescriptor::Cyclic { n: 2 }, s4_descriptor()), 48);
    push(direct(s3_descriptor(), s3_descriptor()), 36);
    push(direct(GroupDescriptor::Cyclic { n: 3 }, s3_descriptor()), 18);
    push(
        direct(GroupDescriptor::Cyclic { n: 2 }, GroupDescriptor::Quaternion { k: 3 }),
        16,
    );
    push(
        direct(GroupDescriptor::Cyclic { n: 2 }, GroupDescriptor::Dihedral { k: 3 }),
        16,
    );
    push(
        direct(GroupDescriptor::Cyclic { n: 3 }, GroupDescriptor::Quaternion { k: 3 }),
        24,
    );
    push(
        direct(GroupDescriptor::Cyclic { n: 3 }, GroupDescriptor::K3 { p: 3, m: 1, n: 1 }),
        81,
    );
    push(
        direct(GroupDescriptor::Cyclic { n: 3 }, GroupDescriptor::K2 { p: 3, m: 2, n: 1 }),
        81,
    );
    push(
        direct(GroupDescriptor::Cyclic { n: 5 }, GroupDescriptor::K3 { p: 5, m: 1, n: 1 }),
        625,
    );
    push(direct(GroupDescriptor::Cyclic { n: 5 }, s3_descriptor()), 30);
    out
}

/// The main mixed corpus: abelian assortment, maximal-class 2-groups, the
/// K2/K3 grids, the full King grid, and mixed-prime products, all within
/// `max_order`.
pub fn standard_corpus(max_order: u64, caps: &Caps) -> Result<Corpus> {
    let mut descriptors = Vec::new();
    descriptors.extend(abelian_descriptors(max_order));
    descriptors.extend(maxclass2_descriptors(8, max_order));
    descriptors.extend(k2_descriptors(&[2, 3, 5], max_order));
    descriptors.extend(k3_descriptors(&[2, 3, 5], max_order));
    descriptors.extend(king_descriptors(&[2, 3, 5], max_order));
    descriptors.extend(product_descriptors(max_order));
    Corpus::from_descriptors(
        format!("standard constructor corpus, order <= {max_order}"),
        descriptors,
        caps,
    )
}

/// All constructible groups of order 16 in the toolkit's families.
pub fn order16_corpus(caps: &Caps) -> Result<Corpus> {
    let mut descriptors = vec![
        GroupDescriptor::Cyclic { n: 16 },
        GroupDescriptor::Abelian { factors: vec![8, 2] },
        GroupDescriptor::Abelian { factors: vec![4, 4] },
        GroupDescriptor::Abelian { factors: vec![4, 2, 2] },
        GroupDescriptor::ElementaryAbelian { p: 2, k: 4 },
        GroupDescriptor::Dihedral { k: 4 },
        GroupDescriptor::Semidihedral { k: 4 },
        GroupDescriptor::Quaternion { k: 4 },
        GroupDescriptor::K2 { p: 2, m: 2, n: 2 },
        GroupDescriptor::K2 { p: 2, m: 3, n: 1 },
        GroupDescriptor::K3 { p: 2, m: 2, n: 1 },
        GroupDescriptor::Direct {
            left: Box::new(GroupDescriptor::Cyclic { n: 2 }),
            right: Box::new(GroupDescriptor::Dihedral { k: 3 }),
        },
        GroupDescriptor::Direct {
            left: Box::new(GroupDescriptor::Cyclic { n: 2 }),
            right: Box::new(GroupDescriptor::Quaternion { k: 3 }),
        },
    ];
    descriptors.extend(king_descriptors(&[2], 16).into_iter().filter(|d| {
        matches!(d, GroupDescriptor::King { m, n, .. } if m + n == 4)
    }));
    Corpus::from_descriptors("constructible groups of order 16", descriptors, caps)
}

/// All constructible groups of order 81 in the toolkit's families.
pub fn order81_corpus(caps: &Caps) -> Result<Corpus> {
    let mut descriptors = vec![
        GroupDescriptor::Cyclic { n: 81 },
        GroupDescriptor::Abelian { factors: vec![27, 3] },
        GroupDescriptor::Abelian { factors: vec![9, 9] },
        GroupDescriptor::Abelian { factors: vec![9, 3, 3] },
        GroupDescriptor::ElementaryAbelian { p: 3, k: 4 },
        GroupDescriptor::K2 { p: 3, m: 2, n: 2 },
        GroupDescriptor::K2 { p: 3, m: 3, n: 1 },
        GroupDescriptor::K3 { p: 3, m: 2, n: 1 },
        GroupDescriptor::Pc(families::chain_presentation(3, 4)),
        GroupDescriptor::Direct {
            left: Box::new(GroupDescriptor::Cyclic { n: 3 }),
            right: Box::new(GroupDescriptor::K3 { p: 3, m: 1, n: 1 }),
        },
        GroupDescriptor::Direct {
            left: Box::new(GroupDescriptor::Cyclic { n: 3 }),
            right: Box::new(GroupDescriptor::K2 { p: 3, m: 2, n: 1 }),
        },
    ];
    descriptors.extend(king_descriptors(&[3], 81).into_iter().filter(|d| {
        matches!(d, GroupDescriptor::King { m, n, .. } if m + n == 4)
    }));
    Corpus::from_descriptors("constructible groups of order 81", descriptors, caps)
}

/// Exponent-p groups plus the boundary cases of the exponent-p theorem.
pub fn exponent_p_corpus(caps: &Caps) -> Result<Corpus> {
    let descriptors = vec![
        GroupDescriptor::ElementaryAbelian { p: 2, k: 5 },
        GroupDescriptor::ElementaryAbelian { p: 3, k: 3 },
        GroupDescriptor::ElementaryAbelian { p: 5, k: 3 },
        GroupDescriptor::ElementaryAbelian { p: 7, k: 2 },
        GroupDescriptor::K3 { p: 3, m: 1, n: 1 },
        GroupDescriptor::K3 { p: 5, m: 1, n: 1 },
        GroupDescriptor::K3 { p: 7, m: 1, n: 1 },
        GroupDescriptor::Pc(families::chain_presentation(5, 4)),
        GroupDescriptor::Pc(families::chain_presentation(5, 5)),
        GroupDescriptor::Pc(families::chain_presentation(3, 4)),
        GroupDescriptor::Direct {
            left: Box::new(GroupDescriptor::Cyclic { n: 3 }),
            right: Box::new(GroupDescriptor::K3 { p: 3, m: 1, n: 1 }),
        },
        GroupDescriptor::Direct {
            left: Box::new(GroupDescriptor::Cyclic { n: 5 }),
            right: Box::new(GroupDescriptor::K3 { p: 5, m: 1, n: 1 }),
        },
    ];
    Corpus::from_descriptors("exponent-p assortment", descriptors, caps)
}

/// Catalog-backed maximal-class corpus for the given primes.
pub fn maxclass_corpus(ps: &[u32], max_order: u64, caps: &Caps) -> Result<Corpus> {
    let mut entries = Vec::new();
    for &p in ps {
        let n_range: Vec<u32> = match p {
            2 => (3..=12).collect(),
            3 => (3..=4).collect(),
            5 => (3..=5).collect(),
            _ => continue,
        };
        for n in n_range {
            if (p as u64).pow(n) > max_order {
                continue;
            }
            for e in families::maxclass_catalog(p, n, caps)? {
                entries.push(CorpusEntry {
                    descriptor: e.descriptor,
                    table: e.table,
                });
            }
        }
    }
    Ok(Corpus {
        description: format!("maximal-class catalog for p in {ps:?}, order <= {max_order}"),
        entries,
    })
}

/// Groups with both odd-order elements and 2-elements, for the inverting
/// element law.
pub fn mixed_corpus(caps: &Caps) -> Result<Corpus> {
    let mut descriptors = vec![s3_descriptor(), s4_descriptor()];
    descriptors.push(GroupDescriptor::Direct {
        left: Box::new(GroupDescriptor::Cyclic { n: 2 }),
        right: Box::new(s3_descriptor()),
    });
    descriptors.push(GroupDescriptor::Direct {
        left: Box::new(GroupDescriptor::Cyclic { n: 2 }),
        right: Box::new(s4_descriptor()),
    });
    descriptors.push(GroupDescriptor::Direct {
        left: Box::new(s3_descriptor()),
        right: Box::new(s3_descriptor()),
    });
    for n in [6u64, 10, 12, 20, 24, 30, 36, 48] {
        descriptors.push(GroupDescriptor::Cyclic { n });
    }
    descriptors.extend(maxclass2_descriptors(8, 64));
    Corpus::from_descriptors("mixed-prime assortment", descriptors, caps)
}

/// Short human-readable name for a corpus entry.
pub fn entry_name(e: &CorpusEntry) -> String {
    let name = e.table.name();
    if name.is_empty() {
        format!("order-{}", e.table.order())
    } else {
        name.to_string()
    }
}

/// Convenience: does the group have exponent p for its prime?
pub fn is_exponent_p(g: &GroupTable) -> Option<u32> {
    let (p, _) = structure::prime_power(g.order())?;
    (structure::exponent(g) == p as u64).then_some(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_corpus_is_large_and_bounded() {
        let caps = Caps::default();
        let corpus = standard_corpus(256, &caps).unwrap();
        assert!(
            corpus.len() >= 200,
            "need at least 200 groups, got {}",
            corpus.len()
        );
        assert!(corpus.entries.iter().all(|e| e.table.order() <= 256));
    }

    #[test]
    fn order16_and_81_corpora_sizes() {
        let caps = Caps::default();
        let c16 = order16_corpus(&caps).unwrap();
        assert!(c16.len() >= 8, "got {}", c16.len());
        assert!(c16.entries.iter().all(|e| e.table.order() == 16));
        let c81 = order81_corpus(&caps).unwrap();
        assert!(c81.len() >= 5, "got {}", c81.len());
        assert!(c81.entries.iter().all(|e| e.table.order() == 81));
    }

    #[test]
    fn s4_builds_correctly() {
        let caps = Caps::default();
        let g = s4_descriptor().build(&caps).unwrap();
        assert_eq!(g.order(), 24);
        assert!(!g.is_abelian());
        assert_eq!(structure::exponent(&g), 12, "S4 has elements of order 1,2,3,4");
        assert_eq!(crate::subgroup::center(&g).order(), 1);
    }

    #[test]
    fn king_grid_is_nonempty_for_all_three_primes() {
        for p in [2u32, 3, 5] {
            let ds = king_descriptors(&[p], 625);
            assert!(!ds.is_empty(), "no valid king tuples at p = {p}");
        }
        assert!(king_descriptors(&[2, 3, 5], 625).len() >= 30);
    }
}
