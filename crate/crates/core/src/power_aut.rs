//! Power automorphisms of periodic Dedekind groups, given prime by prime as
//! units, and the centralizer orders they produce.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::{fixed_subgroup_order, teichmuller_lift, AbelianPComponent, UnitResidue};
use crate::arith::{lcm, mul_mod, pow_mod};
use crate::cardinal::Cardinal;
use crate::dedekind::{DedekindElement, DedekindInstance, DedekindSpec, PartSource};
use crate::error::{invalid, Error, Result};

/// How `phi` acts on one Sylow subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnitLabel {
    /// `a -> a^t` with `t` read modulo the exponent of a finite component.
    Residue(u64),
    /// The torsion `p`-adic unit congruent to `t0` mod `p` (odd `p`).
    Teichmuller(u64),
    Identity,
    Inversion,
}

impl fmt::Display for UnitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitLabel::Residue(t) => write!(f, "{t}"),
            UnitLabel::Teichmuller(t0) => write!(f, "teichmuller:{t0}"),
            UnitLabel::Identity => f.write_str("identity"),
            UnitLabel::Inversion => f.write_str("inversion"),
        }
    }
}

impl UnitLabel {
    /// The unit this label denotes modulo `p^e`.
    pub fn resolve(self, p: u64, e: u32) -> Result<UnitResidue> {
        match self {
            UnitLabel::Residue(t) => UnitResidue::new(p, e, t),
            UnitLabel::Teichmuller(t0) => teichmuller_lift(t0, p, e),
            UnitLabel::Identity => UnitResidue::new(p, e, 1),
            UnitLabel::Inversion => UnitResidue::new(p, e, p.pow(e) - 1),
        }
    }

    /// Residue mod `p` of the torsion unit this label denotes on an infinite
    /// odd component.
    fn torsion_residue(self, p: u64) -> Option<u64> {
        match self {
            UnitLabel::Teichmuller(t0) => Some(t0 % p),
            UnitLabel::Identity => Some(1),
            UnitLabel::Inversion => Some(p - 1),
            UnitLabel::Residue(_) => None,
        }
    }
}

/// `phi = (phi_p)`. The quaternion factor is always fixed pointwise.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerAutSpec {
    pub per_prime: BTreeMap<u64, UnitLabel>,
    /// Tail primes act by the least positive integer of order exactly `m` mod `p`.
    pub tail_rule: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiViolation {
    MissingLabel(u64),
    UnknownPrime(u64),
    BadLabel { p: u64, label: UnitLabel, reason: &'static str },
    TailRuleMissing,
    TailRuleWithoutTail,
}

impl fmt::Display for PhiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiViolation::MissingLabel(p) => write!(f, "no unit given for prime {p}"),
            PhiViolation::UnknownPrime(p) => write!(f, "unit given for prime {p}, which is not in D"),
            PhiViolation::BadLabel { p, label, reason } => write!(f, "unit {label} at prime {p}: {reason}"),
            PhiViolation::TailRuleMissing => write!(f, "D has a tail but phi has no tail rule"),
            PhiViolation::TailRuleWithoutTail => write!(f, "phi has a tail rule but D has no tail"),
        }
    }
}

fn check_label(label: UnitLabel, p: u64, component: Option<&AbelianPComponent>) -> Option<&'static str> {
    let infinite = component.is_some_and(|c| !c.is_finite());
    match label {
        UnitLabel::Teichmuller(_) if p == 2 => Some("2-adic torsion units are only identity and inversion"),
        UnitLabel::Teichmuller(t0) if t0 % p == 0 => Some("not a unit mod p"),
        UnitLabel::Residue(_) if infinite => Some("infinite components need a teichmuller, identity or inversion label"),
        UnitLabel::Residue(t) if t % p == 0 => Some("not a unit mod p"),
        _ => None,
    }
}

/// Least positive integer of multiplicative order exactly `m` modulo the prime `p`.
pub fn tail_unit(p: u64, m: u64) -> Result<u64> {
    if m == 0 || !(p - 1).is_multiple_of(m) {
        return invalid(format!("no unit of order {m} modulo {p}"));
    }
    let exact = |t: u64| (1..=m).find(|&k| pow_mod(t, k, p) == 1) == Some(m);
    (1..p).find(|&t| exact(t)).ok_or_else(|| Error::Internal(format!("no unit of order {m} mod {p}")))
}

/// `o(phi_p)` on a single nontrivial component.
pub fn component_order(label: UnitLabel, component: &AbelianPComponent) -> Result<u64> {
    let p = component.p();
    if let Some(reason) = check_label(label, p, Some(component)) {
        return invalid(format!("unit {label} at prime {p}: {reason}"));
    }
    match (component.exponent_log(), label) {
        (Some(e), _) => Ok(label.resolve(p, e)?.order()),
        (None, UnitLabel::Identity) => Ok(1),
        (None, UnitLabel::Inversion) => Ok(2),
        (None, UnitLabel::Teichmuller(t0)) => Ok(UnitResidue::new(p, 1, t0)?.order()),
        (None, UnitLabel::Residue(_)) => unreachable!("rejected by check_label"),
    }
}

impl PowerAutSpec {
    pub fn new(per_prime: impl IntoIterator<Item = (u64, UnitLabel)>, tail_rule: bool) -> Self {
        Self { per_prime: per_prime.into_iter().collect(), tail_rule }
    }

    pub fn label(&self, p: u64) -> Option<UnitLabel> {
        self.per_prime.get(&p).copied()
    }

    pub fn validate(&self, d: &DedekindSpec) -> Vec<PhiViolation> {
        let mut out = Vec::new();
        let primes = d.explicit_primes();
        for &p in &primes {
            // the quaternion factor alone needs no label
            let q8_only = p == 2 && d.has_q8 && d.component(2).is_none();
            match self.label(p) {
                None if !q8_only => out.push(PhiViolation::MissingLabel(p)),
                None => {}
                Some(label) => {
                    if let Some(reason) = check_label(label, p, d.component(p)) {
                        out.push(PhiViolation::BadLabel { p, label, reason });
                    }
                }
            }
        }
        for &p in self.per_prime.keys() {
            if !primes.contains(&p) {
                out.push(PhiViolation::UnknownPrime(p));
            }
        }
        match (d.tail.is_some(), self.tail_rule) {
            (true, false) => out.push(PhiViolation::TailRuleMissing),
            (false, true) => out.push(PhiViolation::TailRuleWithoutTail),
            _ => {}
        }
        out
    }

    fn ensure_valid(&self, d: &DedekindSpec) -> Result<()> {
        let mut v: Vec<String> = d.validate().iter().map(|v| v.to_string()).collect();
        v.extend(self.validate(d).iter().map(|v| v.to_string()));
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSpec(v))
        }
    }

    /// `o(phi_p)` for an explicit prime of `D`; the quaternion factor counts as 1.
    pub fn prime_order(&self, d: &DedekindSpec, p: u64) -> Result<u64> {
        match (d.component(p), self.label(p)) {
            (Some(c), Some(label)) => component_order(label, c),
            (None, _) if p == 2 && d.has_q8 => Ok(1),
            (Some(_), None) => Err(Error::InvalidSpec(vec![PhiViolation::MissingLabel(p).to_string()])),
            (None, _) => invalid(format!("{p} is not an explicit prime of D")),
        }
    }
}

/// `m = o(phi)`: the lcm of the prime orders, together with the tail modulus.
pub fn phi_order(phi: &PowerAutSpec, d: &DedekindSpec) -> Result<u64> {
    phi.ensure_valid(d)?;
    let mut m = d.tail.map_or(1, |t| t.m);
    for p in d.explicit_primes() {
        m = lcm(m, phi.prime_order(d, p)?);
    }
    Ok(m)
}

/// `(pi_0, pi_1)` over the explicit primes. Tail primes have order `m` and
/// are `1 (mod m)`, so they never belong to either set.
pub fn pi0_pi1(phi: &PowerAutSpec, d: &DedekindSpec, m: u64) -> Result<(BTreeSet<u64>, BTreeSet<u64>)> {
    phi.ensure_valid(d)?;
    let (mut pi0, mut pi1) = (BTreeSet::new(), BTreeSet::new());
    for p in d.explicit_primes() {
        let o = phi.prime_order(d, p)?;
        if o < m {
            pi0.insert(p);
        } else if o == m && p > 2 && p % m != 1 {
            pi1.insert(p);
        }
    }
    Ok((pi0, pi1))
}

/// `C_D(phi^k)` is finite for every `k = 1, ..., m-1`: every Sylow subgroup
/// indexed by `pi_0` or `pi_1` must be finite. Needs `m >= 2`.
pub fn finiteness_check(phi: &PowerAutSpec, d: &DedekindSpec) -> Result<bool> {
    let m = phi_order(phi, d)?;
    if m < 2 {
        return invalid("phi is the identity");
    }
    let (pi0, pi1) = pi0_pi1(phi, d, m)?;
    Ok(pi0.union(&pi1).all(|&p| d.sylow_order(p).is_finite()))
}

/// `|D_2|` if finite, else `2^rank(D_2)`.
pub fn m_value(d: &DedekindSpec) -> Cardinal {
    match d.sylow_order(2) {
        Cardinal::Finite(n) => Cardinal::Finite(n),
        Cardinal::Infinite => Cardinal::Finite(1u128 << d.two_rank()),
    }
}

/// `|Omega_1(D_2)|`, the subgroup generated by involutions. In `Q8` it is the
/// centre of order 2.
pub fn omega1_two_part(d: &DedekindSpec) -> u128 {
    let abelian_rank = d.component(2).map_or(0, |c| c.rank());
    (1u128 << abelian_rank) * if d.has_q8 { 2 } else { 1 }
}

/// `M * prod_{p in pi_0 u pi_1} |D_p|`, or infinity when the finiteness check fails.
pub fn centralizer_bound(phi: &PowerAutSpec, d: &DedekindSpec) -> Result<Cardinal> {
    let m = phi_order(phi, d)?;
    let (pi0, pi1) = pi0_pi1(phi, d, m)?;
    let product: Cardinal = pi0.union(&pi1).map(|&p| d.sylow_order(p)).product();
    m_value(d).checked_mul(product).ok_or(Error::Overflow("centralizer bound"))
}

/// `|C_{D_p}(phi_p^k)|` for one explicit prime.
pub fn sylow_centralizer_order(phi: &PowerAutSpec, d: &DedekindSpec, p: u64, k: u64) -> Result<Cardinal> {
    let q8 = if p == 2 && d.has_q8 { Cardinal::Finite(8) } else { Cardinal::ONE };
    let Some(c) = d.component(p) else { return Ok(q8) };
    let label = phi.label(p).ok_or_else(|| Error::InvalidSpec(vec![PhiViolation::MissingLabel(p).to_string()]))?;
    let abelian = match c.exponent_log() {
        Some(e) => Cardinal::Finite(fixed_subgroup_order(&c.truncate(1)?, &label.resolve(p, e)?, k)?),
        None if p == 2 => match label {
            UnitLabel::Inversion if k % 2 == 1 => Cardinal::Finite(1u128 << c.rank()),
            UnitLabel::Inversion | UnitLabel::Identity => Cardinal::Infinite,
            _ => return invalid(format!("unit {label} cannot act on an infinite 2-component")),
        },
        None => {
            let t0 = label.torsion_residue(p).ok_or_else(|| Error::InvalidArgument(format!("unit {label} at {p}")))?;
            // the torsion lift has the same order as t0, and u^k - 1 is a unit otherwise
            if pow_mod(t0, k, p) == 1 {
                Cardinal::Infinite
            } else {
                Cardinal::ONE
            }
        }
    };
    Ok(q8 * abelian)
}

/// `|C_D(phi^k)|` for `1 <= k <= m-1`, as a product over all explicit
/// primes. Tail primes contribute 1 since `phi_p` has order exactly `m` there.
pub fn symbolic_centralizer_order(phi: &PowerAutSpec, d: &DedekindSpec, k: u64) -> Result<Cardinal> {
    let m = phi_order(phi, d)?;
    if k == 0 || k >= m {
        return invalid(format!("k = {k} outside 1..{}", m.saturating_sub(1)));
    }
    d.explicit_primes().into_iter().map(|p| sylow_centralizer_order(phi, d, p, k)).try_fold(Cardinal::ONE, |acc, c| {
        acc.checked_mul(c?).ok_or(Error::Overflow("centralizer order"))
    })
}

/// `phi` realized on a finite truncation: one unit per abelian part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerAutAction {
    units: Vec<UnitResidue>,
}

impl PowerAutAction {
    /// Units for every part of `instance`, which must be a truncation of `d`.
    /// Quasicyclic parts use the label at the truncation depth.
    pub fn new(phi: &PowerAutSpec, d: &DedekindSpec, instance: &DedekindInstance) -> Result<Self> {
        phi.ensure_valid(d)?;
        let units = instance
            .parts()
            .iter()
            .zip(instance.sources())
            .map(|(g, source)| {
                let (p, e) = (g.p(), g.exponent_log());
                match source {
                    PartSource::Tail => {
                        let m = d.tail.map(|t| t.m).ok_or_else(|| Error::Internal("tail part without a tail".into()))?;
                        UnitResidue::new(p, e, tail_unit(p, m)?)
                    }
                    PartSource::Explicit => phi
                        .label(p)
                        .ok_or_else(|| Error::InvalidSpec(vec![PhiViolation::MissingLabel(p).to_string()]))?
                        .resolve(p, e),
                }
            })
            .collect::<Result<_>>()?;
        Ok(Self { units })
    }

    pub fn units(&self) -> &[UnitResidue] {
        &self.units
    }

    /// Order of the truncated automorphism.
    pub fn order(&self) -> u64 {
        self.units.iter().fold(1, |acc, u| lcm(acc, u.order()))
    }

    pub fn apply(&self, instance: &DedekindInstance, x: &DedekindElement) -> DedekindElement {
        self.apply_pow(instance, x, 1)
    }

    /// `phi^k(x)`.
    pub fn apply_pow(&self, instance: &DedekindInstance, x: &DedekindElement, k: u64) -> DedekindElement {
        DedekindElement {
            q8: x.q8,
            parts: instance
                .parts()
                .iter()
                .zip(&x.parts)
                .zip(&self.units)
                .map(|((g, a), u)| g.scale(a, u.pow(k).value()))
                .collect(),
        }
    }

    /// `phi^k` as a map on dense element indices.
    pub fn permutation(&self, instance: &DedekindInstance, k: u64) -> Vec<u32> {
        (0..instance.order()).map(|i| instance.index_of(&self.apply_pow(instance, &instance.element_at(i), k)) as u32).collect()
    }

    /// Whether `phi^i` on the abelian part satisfies `(u^i - 1)^2 != 0` on some
    /// part for every `0 < i < m`. Then `[A, phi^i]` escapes `C_A(phi^i)`, so no
    /// element outside `D` generates a normal subgroup of the extension.
    pub fn separates_cosets(&self, m: u64) -> bool {
        (1..m).all(|i| {
            self.units.iter().any(|u| {
                let q = u.modulus();
                let s = (u.pow(i).value() + q - 1) % q;
                mul_mod(s, s, q) != 0
            })
        })
    }
}
