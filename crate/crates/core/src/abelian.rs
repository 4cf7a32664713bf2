//! Abelian p-groups of finite rank, units of `Z/p^n`, and torsion p-adic units.
//!
//! A component `C_{p^e1} x ... x C_{p^er} x Z(p^inf)^q` is kept symbolically.
//! Quasicyclic summands never get materialized: [`AbelianPComponent::truncate`]
//! replaces each one by `C_{p^j}` at a chosen depth `j`. A unit `t` acts on an
//! element by `a -> t*a` (additively written), reduced modulo each summand.

use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow, gcd, is_prime, mul_mod, order_dividing, pow_mod, valuation_capped};
use crate::cardinal::Cardinal;
use crate::error::{invalid, Error, Result};

/// Largest exponent accepted for a single summand. Keeps `p^e` inside `u64`
/// with room for `u128` products.
const MAX_MODULUS: u64 = 1 << 62;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianPComponent {
    p: u64,
    cyclic_exponents: Vec<u32>,
    quasicyclic_count: u32,
}

impl AbelianPComponent {
    /// Exponents may be given in any order; they are stored non-increasing.
    pub fn new(p: u64, mut cyclic_exponents: Vec<u32>, quasicyclic_count: u32) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        if cyclic_exponents.contains(&0) {
            return invalid("cyclic exponents must be positive");
        }
        for &e in &cyclic_exponents {
            match checked_pow(p, e) {
                Some(q) if q <= MAX_MODULUS => {}
                _ => return invalid(format!("summand {p}^{e} is too large")),
            }
        }
        cyclic_exponents.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { p, cyclic_exponents, quasicyclic_count })
    }

    pub fn cyclic(p: u64, e: u32) -> Result<Self> {
        Self::new(p, vec![e], 0)
    }

    pub fn quasicyclic(p: u64) -> Result<Self> {
        Self::new(p, vec![], 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn cyclic_exponents(&self) -> &[u32] {
        &self.cyclic_exponents
    }

    pub fn quasicyclic_count(&self) -> u32 {
        self.quasicyclic_count
    }

    pub fn summand_count(&self) -> usize {
        self.cyclic_exponents.len() + self.quasicyclic_count as usize
    }

    pub fn rank(&self) -> u32 {
        self.summand_count() as u32
    }

    pub fn is_finite(&self) -> bool {
        self.quasicyclic_count == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.summand_count() == 0
    }

    /// Every summand has order `p`.
    pub fn is_elementary(&self) -> bool {
        self.quasicyclic_count == 0 && self.cyclic_exponents.iter().all(|&e| e == 1)
    }

    pub fn order(&self) -> Cardinal {
        if !self.is_finite() {
            return Cardinal::Infinite;
        }
        let total: u32 = self.cyclic_exponents.iter().sum();
        match (self.p as u128).checked_pow(total) {
            Some(n) => Cardinal::Finite(n),
            None => panic!("component order {}^{total} overflows u128", self.p),
        }
    }

    /// `log_p` of the exponent, `None` when the exponent is infinite.
    pub fn exponent_log(&self) -> Option<u32> {
        self.is_finite().then(|| self.cyclic_exponents.first().copied().unwrap_or(0))
    }

    pub fn exponent(&self) -> Cardinal {
        match self.exponent_log() {
            Some(e) => Cardinal::Finite((self.p as u128).pow(e)),
            None => Cardinal::Infinite,
        }
    }

    /// Exponents of the truncation at quasicyclic depth `depth`: the cyclic
    /// summands first, then one `depth` per quasicyclic summand.
    pub fn truncated_exponents(&self, depth: u32) -> Vec<u32> {
        let mut out = self.cyclic_exponents.clone();
        out.extend(std::iter::repeat_n(depth, self.quasicyclic_count as usize));
        out
    }

    pub fn truncate(&self, depth: u32) -> Result<FiniteAbelianPGroup> {
        if depth == 0 && self.quasicyclic_count > 0 {
            return invalid("quasicyclic depth must be at least 1");
        }
        FiniteAbelianPGroup::new(self.p, self.truncated_exponents(depth))
    }
}

/// A finite abelian p-group `C_{p^e1} x ... x C_{p^er}` with a fixed ordering of
/// summands. Elements are [`AbelianPVector`]s.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianPGroup {
    p: u64,
    exponents: Vec<u32>,
    moduli: Vec<u64>,
}

impl FiniteAbelianPGroup {
    pub fn new(p: u64, exponents: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        let mut moduli = Vec::with_capacity(exponents.len());
        for &e in &exponents {
            if e == 0 {
                return invalid("summand exponents must be positive");
            }
            match checked_pow(p, e) {
                Some(q) if q <= MAX_MODULUS => moduli.push(q),
                _ => return invalid(format!("summand {p}^{e} is too large")),
            }
        }
        Ok(Self { p, exponents, moduli })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> u32 {
        self.exponents.len() as u32
    }

    /// `log_p` of the exponent; 0 for the trivial group.
    pub fn exponent_log(&self) -> u32 {
        self.exponents.iter().copied().max().unwrap_or(0)
    }

    pub fn exponent(&self) -> u64 {
        self.p.pow(self.exponent_log())
    }

    pub fn order(&self) -> u128 {
        self.moduli.iter().map(|&q| q as u128).product()
    }

    pub fn zero(&self) -> AbelianPVector {
        AbelianPVector { coords: vec![0; self.moduli.len()] }
    }

    /// Validates and reduces raw coordinates.
    pub fn element(&self, coords: Vec<u64>) -> Result<AbelianPVector> {
        if coords.len() != self.moduli.len() {
            return invalid(format!(
                "expected {} coordinates, got {}",
                self.moduli.len(),
                coords.len()
            ));
        }
        let coords = coords.iter().zip(&self.moduli).map(|(&c, &q)| c % q).collect();
        Ok(AbelianPVector { coords })
    }

    pub fn add(&self, a: &AbelianPVector, b: &AbelianPVector) -> AbelianPVector {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.moduli)
            .map(|((&x, &y), &q)| ((x as u128 + y as u128) % q as u128) as u64)
            .collect();
        AbelianPVector { coords }
    }

    pub fn neg(&self, a: &AbelianPVector) -> AbelianPVector {
        let coords = a.coords.iter().zip(&self.moduli).map(|(&x, &q)| (q - x) % q).collect();
        AbelianPVector { coords }
    }

    /// `a -> s*a`; `s` is reduced modulo each summand.
    pub fn scale(&self, a: &AbelianPVector, s: u64) -> AbelianPVector {
        let coords = a.coords.iter().zip(&self.moduli).map(|(&x, &q)| mul_mod(x, s, q)).collect();
        AbelianPVector { coords }
    }

    pub fn element_order(&self, a: &AbelianPVector) -> u64 {
        a.coords
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &q)| q / gcd(x, q))
            .max()
            .unwrap_or(1)
    }

    /// Mixed-radix index, first coordinate most significant.
    pub fn index_of(&self, a: &AbelianPVector) -> u128 {
        a.coords.iter().zip(&self.moduli).fold(0u128, |acc, (&x, &q)| acc * q as u128 + x as u128)
    }

    pub fn from_index(&self, mut index: u128) -> AbelianPVector {
        let mut coords = vec![0; self.moduli.len()];
        for (slot, &q) in coords.iter_mut().zip(&self.moduli).rev() {
            *slot = (index % q as u128) as u64;
            index /= q as u128;
        }
        AbelianPVector { coords }
    }

    /// All elements in index order. Only sensible for small groups.
    pub fn elements(&self) -> impl Iterator<Item = AbelianPVector> + '_ {
        (0..self.order()).map(move |i| self.from_index(i))
    }

    /// Canonical embedding into a truncation with summand-wise larger or equal
    /// exponents: coordinate `c` of `C_{p^e}` maps to `c * p^(e' - e)`.
    pub fn embed_into(&self, a: &AbelianPVector, target: &FiniteAbelianPGroup) -> Result<AbelianPVector> {
        if target.p != self.p || target.exponents.len() != self.exponents.len() {
            return invalid("embedding target has a different shape");
        }
        let mut coords = Vec::with_capacity(a.coords.len());
        for ((&c, &e), &f) in a.coords.iter().zip(&self.exponents).zip(&target.exponents) {
            if f < e {
                return invalid("embedding target is shallower than the source");
            }
            coords.push(c * self.p.pow(f - e));
        }
        Ok(AbelianPVector { coords })
    }
}

/// An element of a [`FiniteAbelianPGroup`], written additively.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianPVector {
    coords: Vec<u64>,
}

impl AbelianPVector {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// A unit of `Z/p^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitResidue {
    p: u64,
    modulus_exponent: u32,
    value: u64,
}

impl UnitResidue {
    pub fn new(p: u64, modulus_exponent: u32, value: u64) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        if modulus_exponent == 0 {
            return invalid("modulus exponent must be at least 1");
        }
        let modulus = match checked_pow(p, modulus_exponent) {
            Some(q) if q <= MAX_MODULUS => q,
            _ => return invalid(format!("modulus {p}^{modulus_exponent} is too large")),
        };
        let value = value % modulus;
        if value.is_multiple_of(p) {
            return invalid(format!("{value} is not a unit modulo {p}^{modulus_exponent}"));
        }
        Ok(Self { p, modulus_exponent, value })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn modulus_exponent(&self) -> u32 {
        self.modulus_exponent
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.modulus_exponent)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn pow(&self, k: u64) -> UnitResidue {
        UnitResidue { value: pow_mod(self.value, k, self.modulus()), ..*self }
    }

    /// The image in `Z/p^n` for `n <= modulus_exponent`.
    pub fn reduce(&self, n: u32) -> Result<UnitResidue> {
        if n == 0 || n > self.modulus_exponent {
            return invalid(format!("cannot reduce a unit mod {}^{} to exponent {n}", self.p, self.modulus_exponent));
        }
        Ok(UnitResidue { p: self.p, modulus_exponent: n, value: self.value % self.p.pow(n) })
    }

    /// `|(Z/p^n)^x| = p^(n-1) (p-1)`.
    pub fn group_order(&self) -> u64 {
        self.p.pow(self.modulus_exponent - 1) * (self.p - 1)
    }

    pub fn order(&self) -> u64 {
        order_dividing(self.value, self.modulus(), self.group_order())
    }
}

/// Multiplicative order of `value` modulo `p^n`.
pub fn unit_order(value: u64, p: u64, n: u32) -> Result<u64> {
    Ok(UnitResidue::new(p, n, value)?.order())
}

/// The unique unit `u` mod `p^depth` of order prime to `p` with `u = t0 (mod p)`,
/// found by iterating the Frobenius `x -> x^p` until it stabilizes.
pub fn teichmuller_lift(t0: u64, p: u64, depth: u32) -> Result<UnitResidue> {
    if p == 2 {
        return Err(Error::Unsupported(
            "torsion of the 2-adic units is {1, -1}; use the identity or inversion label".into(),
        ));
    }
    let mut x = UnitResidue::new(p, depth, t0 % p)?;
    // t0^(p^k) mod p^n is constant once k >= n - 1.
    for _ in 0..depth {
        let next = x.pow(p);
        if next == x {
            return Ok(x);
        }
        x = next;
    }
    if x.pow(p) == x {
        Ok(x)
    } else {
        Err(Error::Internal(format!("Frobenius iteration did not stabilize for t0={t0}, p={p}")))
    }
}

/// Order of the fixed subgroup `{a in A : t^k a = a}`, which is
/// `prod_i gcd(t^k - 1, p^e_i)`.
///
/// `t` must be a unit modulo a power of `p` at least `exp(A)`; it acts through
/// its reduction.
pub fn fixed_subgroup_order(group: &FiniteAbelianPGroup, t: &UnitResidue, k: u64) -> Result<u128> {
    if t.p() != group.p() {
        return invalid(format!("unit is modulo a power of {}, group is a {}-group", t.p(), group.p()));
    }
    let e1 = group.exponent_log();
    if e1 == 0 {
        return Ok(1);
    }
    if t.modulus_exponent() < e1 {
        return invalid(format!(
            "unit modulo {}^{} cannot act on a group of exponent {}^{e1}",
            t.p(),
            t.modulus_exponent(),
            t.p()
        ));
    }
    let modulus = group.exponent();
    let s = t.reduce(e1)?.pow(k).value();
    let v = valuation_capped((s + modulus - 1) % modulus, group.p(), e1);
    Ok(group
        .exponents()
        .iter()
        .map(|&e| (group.p() as u128).pow(v.min(e)))
        .product())
}

/// `|Omega_1(A)| = p^rank`.
pub fn omega1_order(group: &FiniteAbelianPGroup) -> u128 {
    (group.p() as u128).pow(group.rank())
}

/// All units modulo `p^n`, in increasing order.
pub fn units(p: u64, n: u32) -> Result<Vec<UnitResidue>> {
    let modulus = checked_pow(p, n).ok_or_else(|| Error::InvalidArgument("modulus too large".into()))?;
    (1..modulus).filter(|v| v % p != 0).map(|v| UnitResidue::new(p, n, v)).collect()
}
