//! Small catalogs of concrete groups built from the constructors.

use super::constructors::*;
use super::CayleyGroup;
use crate::arith::{is_prime, pow_mod};

/// A named group from a catalog.
#[derive(Debug, Clone)]
pub struct Entry {
    pub name: String,
    pub group: CayleyGroup,
}

fn entry(name: impl Into<String>, group: CayleyGroup) -> Entry {
    Entry { name: name.into(), group }
}

/// Partitions of `n` into non-increasing parts.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Invariant-factor-free description of every abelian group of order `n`:
/// one list of prime-power cyclic factors per isomorphism class.
pub fn abelian_types(n: u64) -> Vec<Vec<u64>> {
    let mut types: Vec<Vec<u64>> = vec![Vec::new()];
    let mut rest = n;
    let mut p = 2;
    while rest > 1 {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            let local: Vec<Vec<u64>> =
                partitions(e).into_iter().map(|parts| parts.iter().map(|&k| p.pow(k)).collect()).collect();
            types = types
                .iter()
                .flat_map(|t| local.iter().map(move |l| t.iter().chain(l).copied().collect()))
                .collect();
        }
        p += 1;
    }
    types
}

pub fn abelian_groups(n: u64) -> Vec<Entry> {
    abelian_types(n)
        .into_iter()
        .map(|moduli| {
            let name = if moduli.is_empty() {
                "C1".to_string()
            } else {
                moduli.iter().map(|m| format!("C{m}")).collect::<Vec<_>>().join("x")
            };
            entry(name, abelian(&moduli).expect("positive moduli"))
        })
        .collect()
}

/// Every `C_n x| C_m` with a faithful action `a -> a^t`, one `t` per order,
/// for the given sizes.
fn faithful_metacyclics(max_order: u64) -> Vec<Entry> {
    let mut out = Vec::new();
    for n in 3..=max_order {
        if !is_prime(n) {
            continue;
        }
        for m in 2..n {
            if (n - 1) % m != 0 || n * m > max_order {
                continue;
            }
            // least t of exact order m mod n
            let t = (2..n).find(|&t| (1..=m).find(|&k| pow_mod(t, k, n) == 1) == Some(m)).expect("cyclic unit group");
            out.push(entry(format!("C{n}:C{m}"), metacyclic(n, m, t).expect("valid action")));
        }
    }
    out
}

/// Groups of order at most 200 used to test the quotient bound: a mix of
/// abelian, dihedral, dicyclic, metacyclic, and classical groups and their
/// direct products.
pub fn quotient_catalog() -> Vec<Entry> {
    let mut out = vec![
        entry("Q8", quaternion()),
        entry("S3", symmetric(3)),
        entry("S4", symmetric(4)),
        entry("A4", alternating(4)),
        entry("SL(2,3)", special_linear_2_3()),
        entry("A5", alternating(5)),
        entry("C2^3", abelian(&[2, 2, 2]).expect("moduli")),
        entry("C4xC2", abelian(&[4, 2]).expect("moduli")),
        entry("C12", cyclic(12)),
    ];
    for n in [3, 4, 5, 6, 8, 9, 10, 12] {
        out.push(entry(format!("D{}", 2 * n), dihedral(n).expect("dihedral")));
    }
    for n in [3, 4, 5, 6] {
        out.push(entry(format!("Dic{}", 4 * n), dicyclic(n).expect("dicyclic")));
    }
    out.extend(faithful_metacyclics(60));
    let products = [
        ("D8xC2", dihedral(4).expect("d8"), cyclic(2)),
        ("D8xC3", dihedral(4).expect("d8"), cyclic(3)),
        ("Q8xC2", quaternion(), cyclic(2)),
        ("Q8xC3", quaternion(), cyclic(3)),
        ("S3xC4", symmetric(3), cyclic(4)),
        ("S3xS3", symmetric(3), symmetric(3)),
        ("D8xS3", dihedral(4).expect("d8"), symmetric(3)),
        ("A4xC2", alternating(4), cyclic(2)),
        ("S4xC2", symmetric(4), cyclic(2)),
        ("SL(2,3)xC2", special_linear_2_3(), cyclic(2)),
        ("Q8xQ8", quaternion(), quaternion()),
    ];
    for (name, g, h) in products {
        out.push(entry(name, direct_product(&g, &h).expect("product")));
    }
    out.push(entry("Dih(C4xC2)", dih(&abelian(&[4, 2]).expect("moduli")).expect("dih")));
    out.push(entry("Dih(C3xC3)", dih(&abelian(&[3, 3]).expect("moduli")).expect("dih")));
    out.retain(|e| e.group.order() <= 200);
    out
}

/// Groups of order at most 500 with at least three prime divisors, plus a
/// few insoluble ones that the pq-element check must classify as not applicable.
pub fn pq_catalog() -> Vec<Entry> {
    let mut out = Vec::new();
    for n in [30u64, 42, 60, 66, 70, 78, 84, 90, 102, 105, 110, 120, 126, 130, 150, 210, 330, 390, 420] {
        out.extend(abelian_groups(n));
    }
    let small: Vec<(String, CayleyGroup)> = vec![
        ("S3".into(), symmetric(3)),
        ("D10".into(), dihedral(5).expect("dihedral")),
        ("D14".into(), dihedral(7).expect("dihedral")),
        ("A4".into(), alternating(4)),
        ("S4".into(), symmetric(4)),
        ("SL(2,3)".into(), special_linear_2_3()),
        ("Q8".into(), quaternion()),
        ("C5:C4".into(), metacyclic(5, 4, 2).expect("action")),
        ("C7:C3".into(), metacyclic(7, 3, 2).expect("action")),
        ("C7:C6".into(), metacyclic(7, 6, 3).expect("action")),
        ("C11:C5".into(), metacyclic(11, 5, 3).expect("action")),
        ("C13:C4".into(), metacyclic(13, 4, 5).expect("action")),
    ];
    let cofactors: Vec<(String, CayleyGroup)> =
        vec![("C5".into(), cyclic(5)), ("C7".into(), cyclic(7)), ("C3".into(), cyclic(3)), ("C2".into(), cyclic(2)), ("S3".into(), symmetric(3))];
    for (gn, g) in &small {
        for (hn, h) in &cofactors {
            if g.order() * h.order() <= 500 {
                out.push(entry(format!("{gn}x{hn}"), direct_product(g, h).expect("product")));
            }
        }
    }
    for n in [15, 21, 33, 35, 39, 45, 105] {
        out.push(entry(format!("D{}", 2 * n), dihedral(n).expect("dihedral")));
    }
    for n in [15, 21, 30, 35] {
        out.push(entry(format!("Dic{}", 4 * n), dicyclic(n).expect("dicyclic")));
    }
    out.push(entry("A5", alternating(5)));
    out.push(entry("S5", symmetric(5)));
    out.retain(|e| e.group.order() <= 500);
    out
}
