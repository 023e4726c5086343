//! Direct and semidirect products of group tables.
//!
//! Both constructions assemble a table from parts that are already verified
//! groups, so the result skips the associativity re-check; semidirect
//! actions are verified to be automorphisms forming a homomorphism before
//! any table is built.

use crate::error::{Error, Result};
use crate::table::{GroupTable, Verify};

/// Action of a group `H` on a group `N` for a semidirect product.
#[derive(Clone, Debug)]
pub enum Action {
    /// One permutation of `N`'s indices per element of `H`, in element
    /// order: `perms[h][x] = phi_h(x)`.
    Explicit(Vec<Vec<u32>>),
    /// Every non-identity element of `H` acts by inversion. Only valid for
    /// `|H| = 2` acting on an abelian `N`.
    Inversion,
}

/// Elements of the product are pairs `(a, b)` with index `a * |B| + b`, so
/// the identity `(0, 0)` stays at index 0.
pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable> {
    let (na, nb) = (a.order(), b.order());
    let n = na
        .checked_mul(nb)
        .filter(|&n| n <= crate::caps::HARD_MAX_ORDER)
        .ok_or_else(|| Error::input("direct product exceeds the hard order cap"))?;
    let mut table = vec![0u32; n * n];
    for x1 in 0..na as u32 {
        for x2 in 0..nb as u32 {
            let x = x1 as usize * nb + x2 as usize;
            for y1 in 0..na as u32 {
                let p1 = a.mul(x1, y1) as usize;
                for y2 in 0..nb as u32 {
                    let y = y1 as usize * nb + y2 as usize;
                    table[x * n + y] = (p1 * nb) as u32 + b.mul(x2, y2);
                }
            }
        }
    }
    GroupTable::from_flat(format!("{}x{}", a.name(), b.name()), n, table, Verify::Trusted)
}

fn resolve_action(n: &GroupTable, h: &GroupTable, action: &Action) -> Result<Vec<Vec<u32>>> {
    match action {
        Action::Explicit(perms) => Ok(perms.clone()),
        Action::Inversion => {
            if h.order() != 2 {
                return Err(Error::InvalidAction(format!(
                    "inversion action needs |H| = 2, got {}",
                    h.order()
                )));
            }
            if !n.is_abelian() {
                return Err(Error::InvalidAction(
                    "inversion is only an automorphism of an abelian group".into(),
                ));
            }
            let id: Vec<u32> = (0..n.order() as u32).collect();
            let inv: Vec<u32> = (0..n.order() as u32).map(|x| n.inv(x)).collect();
            Ok(vec![id, inv])
        }
    }
}

fn verify_automorphism(n: &GroupTable, perm: &[u32], who: usize) -> Result<()> {
    let nn = n.order();
    if perm.len() != nn {
        return Err(Error::InvalidAction(format!(
            "action[{who}] has length {}, expected {nn}",
            perm.len()
        )));
    }
    let mut seen = vec![false; nn];
    for &v in perm {
        if v as usize >= nn || seen[v as usize] {
            return Err(Error::InvalidAction(format!(
                "action[{who}] is not a permutation"
            )));
        }
        seen[v as usize] = true;
    }
    if perm[0] != 0 {
        return Err(Error::InvalidAction(format!(
            "action[{who}] does not fix the identity"
        )));
    }
    for x in 0..nn as u32 {
        for y in 0..nn as u32 {
            if perm[n.mul(x, y) as usize] != n.mul(perm[x as usize], perm[y as usize]) {
                return Err(Error::InvalidAction(format!(
                    "action[{who}] is not multiplicative at ({x}, {y})"
                )));
            }
        }
    }
    Ok(())
}

/// Semidirect product `N x| H` for a left action `phi: H -> Aut(N)`:
/// `(n1, h1)(n2, h2) = (n1 * phi_h1(n2), h1 h2)`. The action is verified to
/// consist of automorphisms and to be a homomorphism.
pub fn semidirect_product(n: &GroupTable, h: &GroupTable, action: &Action) -> Result<GroupTable> {
    let perms = resolve_action(n, h, action)?;
    if perms.len() != h.order() {
        return Err(Error::InvalidAction(format!(
            "action has {} permutations, expected |H| = {}",
            perms.len(),
            h.order()
        )));
    }
    for (i, perm) in perms.iter().enumerate() {
        verify_automorphism(n, perm, i)?;
    }
    // homomorphism: phi_{h1 h2} = phi_{h1} o phi_{h2}
    for h1 in 0..h.order() as u32 {
        for h2 in 0..h.order() as u32 {
            let prod = h.mul(h1, h2) as usize;
            for x in 0..n.order() as u32 {
                if perms[prod][x as usize] != perms[h1 as usize][perms[h2 as usize][x as usize] as usize]
                {
                    return Err(Error::InvalidAction(format!(
                        "action is not a homomorphism at (h1={h1}, h2={h2}, x={x})"
                    )));
                }
            }
        }
    }
    let (nn, nh) = (n.order(), h.order());
    let total = nn
        .checked_mul(nh)
        .filter(|&t| t <= crate::caps::HARD_MAX_ORDER)
        .ok_or_else(|| Error::input("semidirect product exceeds the hard order cap"))?;
    let mut table = vec![0u32; total * total];
    for v1 in 0..nn as u32 {
        for h1 in 0..nh as u32 {
            let x = v1 as usize * nh + h1 as usize;
            let phi = &perms[h1 as usize];
            for v2 in 0..nn as u32 {
                let tv = n.mul(v1, phi[v2 as usize]) as usize;
                for h2 in 0..nh as u32 {
                    let y = v2 as usize * nh + h2 as usize;
                    table[x * total + y] = (tv * nh) as u32 + h.mul(h1, h2);
                }
            }
        }
    }
    GroupTable::from_flat(
        format!("{}:{}", n.name(), h.name()),
        total,
        table,
        Verify::Trusted,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn c2_times_c3_is_c6() {
        let g = direct_product(
            &families::cyclic(2).unwrap(),
            &families::cyclic(3).unwrap(),
        )
        .unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_abelian());
        assert!((1..6u32).any(|x| g.element_order(x) == 6), "cyclic of order 6");
    }

    #[test]
    fn inversion_semidirect_gives_s3() {
        let s3 = semidirect_product(
            &families::cyclic(3).unwrap(),
            &families::cyclic(2).unwrap(),
            &Action::Inversion,
        )
        .unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
    }

    #[test]
    fn d12_as_product_of_c2_and_s3() {
        let g = direct_product(&families::cyclic(2).unwrap(), &families::symmetric3()).unwrap();
        assert_eq!(g.order(), 12);
        assert!(!g.is_abelian());
        assert!((0..12u32).any(|x| g.element_order(x) == 6));
    }

    #[test]
    fn inversion_rejected_for_nonabelian_or_wrong_order() {
        let s3 = families::symmetric3();
        let c2 = families::cyclic(2).unwrap();
        let c3 = families::cyclic(3).unwrap();
        assert!(matches!(
            semidirect_product(&s3, &c2, &Action::Inversion),
            Err(Error::InvalidAction(_))
        ));
        assert!(matches!(
            semidirect_product(&c3, &c3, &Action::Inversion),
            Err(Error::InvalidAction(_))
        ));
    }

    #[test]
    fn bogus_explicit_actions_rejected() {
        let c4 = families::cyclic(4).unwrap();
        let c2 = families::cyclic(2).unwrap();
        // not a permutation
        let bad = Action::Explicit(vec![vec![0, 1, 2, 3], vec![0, 1, 1, 3]]);
        assert!(semidirect_product(&c4, &c2, &bad).is_err());
        // permutation but not an automorphism (swaps identity away)
        let bad = Action::Explicit(vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2]]);
        assert!(semidirect_product(&c4, &c2, &bad).is_err());
        // automorphisms but not a homomorphism: phi_1 has order 2 needed,
        // x -> x^3 is fine; give phi_0 something non-identity instead
        let inv: Vec<u32> = (0..4u32).map(|x| c4.inv(x)).collect();
        let bad = Action::Explicit(vec![inv.clone(), inv]);
        assert!(semidirect_product(&c4, &c2, &bad).is_err());
    }
}
