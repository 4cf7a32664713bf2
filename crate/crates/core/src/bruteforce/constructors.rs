//! Concrete finite groups as Cayley tables.

use std::collections::HashMap;
use std::hash::Hash;

use super::CayleyGroup;
use crate::arith::{gcd, pow_mod};
use crate::error::{invalid, Result};

/// Largest group [`from_closure`] will enumerate.
const CLOSURE_LIMIT: usize = 20_000;

/// Enumerates the group generated by `gens` under `mul`, identity first, and
/// returns its table together with the element list.
pub fn from_closure<T, F>(identity: T, gens: &[T], mul: F) -> Result<(CayleyGroup, Vec<T>)>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
    let mut cursor = 0;
    while cursor < elements.len() {
        let a = elements[cursor].clone();
        for g in gens {
            let b = mul(&a, g);
            if !index.contains_key(&b) {
                if elements.len() == CLOSURE_LIMIT {
                    return invalid("closure exceeds the enumeration limit");
                }
                index.insert(b.clone(), elements.len());
                elements.push(b);
            }
        }
        cursor += 1;
    }
    let n = elements.len();
    let mut table = vec![0u32; n * n];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            match index.get(&mul(a, b)) {
                Some(&k) => table[i * n + j] = k as u32,
                None => return invalid("generated set is not closed under the operation"),
            }
        }
    }
    Ok((CayleyGroup::from_table(n, table)?, elements))
}

pub fn cyclic(n: usize) -> CayleyGroup {
    let n = n.max(1);
    let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
    CayleyGroup::from_table(n, table).expect("cyclic table is a group")
}

/// `C_{m1} x ... x C_{mk}` with mixed-radix indexing, first factor most significant.
pub fn abelian(moduli: &[u64]) -> Result<CayleyGroup> {
    moduli.iter().try_fold(cyclic(1), |acc, &m| {
        if m == 0 {
            return invalid("cyclic factor of order 0");
        }
        direct_product(&acc, &cyclic(m as usize))
    })
}

/// `G x H`, element `(g, h)` at index `g * |H| + h`.
pub fn direct_product(g: &CayleyGroup, h: &CayleyGroup) -> Result<CayleyGroup> {
    let (a, b) = (g.order(), h.order());
    let n = a * b;
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            let (gx, hx) = (x / b, x % b);
            let (gy, hy) = (y / b, y % b);
            table[x * n + y] = (g.mul(gx, gy) * b + h.mul(hx, hy)) as u32;
        }
    }
    CayleyGroup::from_table(n, table)
}

/// `Dih(A) = A x| C_2` with the involution acting by inversion. Element
/// `a t^s` sits at index `s * |A| + a`.
pub fn dih(a: &CayleyGroup) -> Result<CayleyGroup> {
    if !a.is_abelian() {
        return invalid("Dih(A) needs an abelian A");
    }
    let k = a.order();
    let n = 2 * k;
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            let (s, ax) = (x / k, x % k);
            let (t, ay) = (y / k, y % k);
            // (a t^s)(b t^t) = a b^((-1)^s) t^(s+t)
            let b = if s == 1 { a.inv(ay) } else { ay };
            table[x * n + y] = (((s + t) % 2) * k + a.mul(ax, b)) as u32;
        }
    }
    CayleyGroup::from_table(n, table)
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> Result<CayleyGroup> {
    dih(&cyclic(n))
}

/// `C_n x| C_m = <a, g | a^n, g^m, g^-1 a g = a^t>`; element `g^i a^d` at
/// index `i * n + d`. Needs `t^m = 1 (mod n)`.
pub fn metacyclic(n: u64, m: u64, t: u64) -> Result<CayleyGroup> {
    if n == 0 || m == 0 || gcd(t, n) != 1 || pow_mod(t, m, n) != 1 % n {
        return invalid(format!("t = {t} does not define an action of C_{m} on C_{n}"));
    }
    let size = (n * m) as usize;
    let mut table = vec![0u32; size * size];
    for x in 0..size as u64 {
        for y in 0..size as u64 {
            let (i, d) = (x / n, x % n);
            let (j, e) = (y / n, y % n);
            // g^i a^d g^j a^e = g^(i+j) a^(d t^j + e)
            let exp = (d * pow_mod(t, j, n) + e) % n;
            table[(x * size as u64 + y) as usize] = (((i + j) % m) * n + exp) as u32;
        }
    }
    CayleyGroup::from_table(size, table)
}

/// Dicyclic group of order `4n`: `<a, x | a^(2n), x^2 = a^n, x^-1 a x = a^-1>`.
/// `dicyclic(2)` is the quaternion group, `dicyclic(4)` the generalized
/// quaternion group of order 16.
pub fn dicyclic(n: usize) -> Result<CayleyGroup> {
    if n < 1 {
        return invalid("dicyclic groups need n >= 1");
    }
    let r = 2 * n;
    let size = 2 * r;
    let mut table = vec![0u32; size * size];
    for x in 0..size {
        for y in 0..size {
            let (s, k) = (x / r, x % r);
            let (t, l) = (y / r, y % r);
            // a^k x^s a^l x^t = a^(k + (-1)^s l) x^(s+t), with x^2 = a^n
            let mut exp = if s == 1 { (k + r - l) % r } else { (k + l) % r };
            let mut sx = s + t;
            if sx == 2 {
                exp = (exp + n) % r;
                sx = 0;
            }
            table[x * size + y] = (sx * r + exp) as u32;
        }
    }
    CayleyGroup::from_table(size, table)
}

/// Integer quaternions `(w, x, y, z)` under the Hamilton product.
type Quat = [i8; 4];

fn hamilton(a: &Quat, b: &Quat) -> Quat {
    let [a0, a1, a2, a3] = *a;
    let [b0, b1, b2, b3] = *b;
    [
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ]
}

/// The quaternion group, generated by `i` and `j` inside the Hamilton
/// quaternions. Labels are `1, i, j, ...` in enumeration order.
pub fn quaternion() -> CayleyGroup {
    let (g, elems) = from_closure([1, 0, 0, 0], &[[0, 1, 0, 0], [0, 0, 1, 0]], hamilton).expect("Q8 closes");
    let labels = elems
        .iter()
        .map(|q| {
            let pos = q.iter().position(|&c| c != 0).expect("unit quaternion");
            let sign = if q[pos] < 0 { "-" } else { "" };
            format!("{sign}{}", ["1", "i", "j", "k"][pos])
        })
        .collect();
    g.with_labels(labels).expect("eight labels")
}

fn compose(a: &[u8], b: &[u8]) -> Vec<u8> {
    // apply b first, then a
    b.iter().map(|&x| a[x as usize]).collect()
}

/// Permutation group on `0..degree` generated by `gens`.
pub fn permutation_group(degree: usize, gens: &[Vec<u8>]) -> Result<CayleyGroup> {
    if gens.iter().any(|g| g.len() != degree) {
        return invalid("generator has the wrong degree");
    }
    let identity: Vec<u8> = (0..degree as u8).collect();
    Ok(from_closure(identity, gens, |a, b| compose(a, b))?.0)
}

pub fn symmetric(n: usize) -> CayleyGroup {
    let transposition: Vec<u8> = (0..n as u8).map(|i| if i < 2 { 1 - i } else { i }).collect();
    let cycle: Vec<u8> = (0..n as u8).map(|i| (i + 1) % n as u8).collect();
    permutation_group(n, &[transposition, cycle]).expect("S_n generators")
}

pub fn alternating(n: usize) -> CayleyGroup {
    // 3-cycles (0 1 k) generate A_n
    let gens: Vec<Vec<u8>> = (2..n as u8)
        .map(|k| (0..n as u8).map(|i| if i == 0 { 1 } else if i == 1 { k } else if i == k { 0 } else { i }).collect())
        .collect();
    if gens.is_empty() {
        return cyclic(1);
    }
    permutation_group(n, &gens).expect("A_n generators")
}

/// `SL(2, 3)`, order 24, as 2x2 matrices over `Z/3`.
pub fn special_linear_2_3() -> CayleyGroup {
    let mul = |a: &[u8; 4], b: &[u8; 4]| {
        [
            (a[0] * b[0] + a[1] * b[2]) % 3,
            (a[0] * b[1] + a[1] * b[3]) % 3,
            (a[2] * b[0] + a[3] * b[2]) % 3,
            (a[2] * b[1] + a[3] * b[3]) % 3,
        ]
    };
    from_closure([1, 0, 0, 1], &[[1, 1, 0, 1], [1, 0, 1, 1]], mul).expect("SL(2,3) closes").0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_stats(g: &CayleyGroup) -> Vec<(usize, usize)> {
        g.fingerprint().order_statistics.into_iter().collect()
    }

    #[test]
    fn dih_examples() {
        let d8 = dih(&cyclic(4)).unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(order_stats(&d8), vec![(1, 1), (2, 5), (4, 2)]);
        assert_eq!(d8.fingerprint(), dihedral(4).unwrap().fingerprint());

        let e8 = dih(&abelian(&[2, 2]).unwrap()).unwrap();
        assert!(e8.is_abelian());
        assert_eq!(order_stats(&e8), vec![(1, 1), (2, 7)]);

        let s3 = dih(&cyclic(3)).unwrap();
        assert_eq!(s3.fingerprint(), symmetric(3).fingerprint());
        assert!(dih(&symmetric(3)).is_err());
    }

    #[test]
    fn classical_orders() {
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(4).order(), 12);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(special_linear_2_3().order(), 24);
        assert_eq!(dicyclic(4).unwrap().order(), 16);
        assert_eq!(dicyclic(2).unwrap().fingerprint(), quaternion().fingerprint());
        assert_eq!(metacyclic(5, 4, 2).unwrap().order(), 20);
        assert!(metacyclic(5, 3, 2).is_err());
    }

    #[test]
    fn quaternion_labels() {
        let q = quaternion();
        let labels = q.labels().unwrap();
        assert_eq!(labels[0], "1");
        let i = labels.iter().position(|l| l == "i").unwrap();
        let j = labels.iter().position(|l| l == "j").unwrap();
        let k = labels.iter().position(|l| l == "k").unwrap();
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.label(q.mul(j, i)), "-k");
        assert_eq!(q.label(q.mul(i, i)), "-1");
    }

    #[test]
    fn sl23_is_not_a4() {
        let sl = special_linear_2_3();
        assert_eq!(sl.center().len(), 2);
        assert_ne!(sl.fingerprint(), symmetric(4).fingerprint());
        assert_eq!(sl.derived_length(), Some(3));
    }
}
