//! Cyclic extensions `G = <g, D>` with `g^-1 d g = phi(d)` and `g^m = n`,
//! their classification, and finite truncations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::checked_pow;
use crate::bruteforce::{empirical_bci, CayleyGroup, OrderCap, SubgroupHandle};
use crate::cardinal::Cardinal;
use crate::dedekind::{truncate, DedekindElement, DedekindInstance, DedekindSpec, Q8Element, TruncationParams};
use crate::error::{invalid, Error, Result};
use crate::power_aut::{
    centralizer_bound, finiteness_check, m_value, omega1_two_part, phi_order, pi0_pi1, PowerAutAction, PowerAutSpec,
    UnitLabel,
};

/// Coordinates of a fiber element at one prime. Each entry `(num, level)`
/// stands for `num / p^level` in the matching summand (cyclic summands first,
/// then quasicyclic ones), i.e. `num * p^(e - level)` in `C_{p^e}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCoords {
    pub p: u64,
    pub coords: Vec<(u64, u32)>,
}

/// An element of `D` with finite support, independent of truncation depth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberElement {
    pub q8: Q8Element,
    pub abelian: Vec<FiberCoords>,
}

impl Default for FiberElement {
    fn default() -> Self {
        Self { q8: Q8Element::ONE, abelian: Vec::new() }
    }
}

impl FiberElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn is_identity(&self) -> bool {
        self.q8 == Q8Element::ONE && self.abelian.iter().all(|c| c.coords.iter().all(|&(num, level)| level == 0 || num == 0))
    }

    /// Largest level used, i.e. the depth a truncation needs to contain it.
    pub fn depth(&self) -> u32 {
        self.abelian.iter().flat_map(|c| c.coords.iter().map(|&(_, l)| l)).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FciGroupSpec {
    pub dedekind: DedekindSpec,
    pub phi: PowerAutSpec,
    pub m: u64,
    pub n: FiberElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionViolation {
    Dedekind(String),
    Phi(String),
    ZeroOrder,
    OrderMismatch { declared: u64, actual: u64 },
    FiberShape(String),
    NotCentral,
    NotFixed(u64),
}

impl fmt::Display for ExtensionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionViolation::Dedekind(s) | ExtensionViolation::Phi(s) => f.write_str(s),
            ExtensionViolation::ZeroOrder => f.write_str("extension order m must be at least 1"),
            ExtensionViolation::OrderMismatch { declared, actual } => {
                write!(f, "declared m = {declared} but phi has order {actual}")
            }
            ExtensionViolation::FiberShape(s) => write!(f, "fiber element: {s}"),
            ExtensionViolation::NotCentral => f.write_str("n not central"),
            ExtensionViolation::NotFixed(p) => write!(f, "n not fixed by phi (prime {p})"),
        }
    }
}

fn fiber_shape(spec: &FciGroupSpec) -> Vec<ExtensionViolation> {
    let d = &spec.dedekind;
    let mut out = Vec::new();
    let mut bad = |s: String| out.push(ExtensionViolation::FiberShape(s));
    if !d.has_q8 && spec.n.q8 != Q8Element::ONE {
        bad("quaternion part given but D has no quaternion factor".into());
    }
    for (i, fc) in spec.n.abelian.iter().enumerate() {
        if spec.n.abelian[..i].iter().any(|o| o.p == fc.p) {
            bad(format!("prime {} listed twice", fc.p));
            continue;
        }
        let Some(c) = d.component(fc.p) else {
            bad(format!("prime {} is not an explicit component of D", fc.p));
            continue;
        };
        if fc.coords.len() != c.summand_count() {
            bad(format!("{} coordinates at prime {}, expected {}", fc.coords.len(), fc.p, c.summand_count()));
            continue;
        }
        for (slot, &(_, level)) in fc.coords.iter().enumerate() {
            if checked_pow(fc.p, level).is_none_or(|q| q > 1 << 62) {
                bad(format!("level {level} at prime {} is too large", fc.p));
            } else if let Some(&e) = c.cyclic_exponents().get(slot) {
                if level > e {
                    bad(format!("level {level} exceeds the summand C_{}^{e}", fc.p));
                }
            }
        }
    }
    out
}

/// Checks `n` central, `phi(n) = n` and `m = o(phi)`, each failure reported
/// separately.
pub fn validate_extension(spec: &FciGroupSpec) -> Vec<ExtensionViolation> {
    let d = &spec.dedekind;
    let mut out: Vec<ExtensionViolation> =
        d.validate().iter().map(|v| ExtensionViolation::Dedekind(v.to_string())).collect();
    out.extend(spec.phi.validate(d).iter().map(|v| ExtensionViolation::Phi(v.to_string())));
    if !out.is_empty() {
        return out;
    }
    if spec.m == 0 {
        out.push(ExtensionViolation::ZeroOrder);
    } else {
        match phi_order(&spec.phi, d) {
            Ok(actual) if actual != spec.m => {
                out.push(ExtensionViolation::OrderMismatch { declared: spec.m, actual })
            }
            Ok(_) => {}
            Err(e) => out.push(ExtensionViolation::Phi(e.to_string())),
        }
    }
    let shape = fiber_shape(spec);
    if !shape.is_empty() {
        out.extend(shape);
        return out;
    }
    if !spec.n.q8.is_central() {
        out.push(ExtensionViolation::NotCentral);
    }
    for fc in &spec.n.abelian {
        let c = d.component(fc.p).expect("shape checked");
        let label = spec.phi.label(fc.p).unwrap_or(UnitLabel::Identity);
        let depth = c.exponent_log().unwrap_or(0).max(fc.coords.iter().map(|&(_, l)| l).max().unwrap_or(0)).max(1);
        let fixed = label.resolve(fc.p, depth).is_ok_and(|u| {
            fc.coords.iter().all(|&(num, level)| {
                let q = fc.p.pow(level);
                level == 0 || (u.value() % q + q - 1) % q * (num % q) % q == 0
            })
        });
        if !fixed {
            out.push(ExtensionViolation::NotFixed(fc.p));
        }
    }
    out
}

fn ensure_valid(spec: &FciGroupSpec) -> Result<()> {
    let v = validate_extension(spec);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidSpec(v.iter().map(|v| v.to_string()).collect()))
    }
}

/// The data certifying an FCI (equivalently BCI) group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub m: u64,
    pub pi0: Vec<u64>,
    pub pi1: Vec<u64>,
    #[serde(rename = "M")]
    pub big_m: Cardinal,
    /// `m M prod_{p in pi_0 u pi_1} |D_p|`, bounding `|C_G(x)|` for `<x>` not normal.
    pub bound: Cardinal,
    /// The same without the factor `m`, bounding `|C_D(phi^k)|`.
    pub lemma_bound: Cardinal,
    /// `|Omega_1(D_2)|`, never larger than `M`.
    pub omega1_d2: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Dedekind,
    Fci(Certificate),
    NotFci { reason: String },
}

impl Classification {
    pub fn tag(&self) -> &'static str {
        match self {
            Classification::Dedekind => "dedekind",
            Classification::Fci(_) => "fci",
            Classification::NotFci { .. } => "not_fci",
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Classification::Fci(c) => Some(c),
            _ => None,
        }
    }
}

/// Decides whether the extension is an infinite locally finite FCI-group.
/// Finite `D` is rejected: every finite group is FCI and the classification
/// says nothing about it.
pub fn classify(spec: &FciGroupSpec) -> Result<Classification> {
    ensure_valid(spec)?;
    let d = &spec.dedekind;
    if !d.is_infinite() {
        return Err(Error::Unsupported("D is finite; the classification covers infinite groups only".into()));
    }
    if spec.m == 1 {
        return Ok(Classification::Dedekind);
    }
    if d.sylow_order(2) == Cardinal::Infinite
        && (spec.phi.label(2) != Some(UnitLabel::Inversion) || spec.m != 2)
    {
        return Ok(Classification::NotFci {
            reason: "infinite 2-part requires phi_2 to be the inversion and m = 2".into(),
        });
    }
    let (pi0, pi1) = pi0_pi1(&spec.phi, d, spec.m)?;
    if !finiteness_check(&spec.phi, d)? {
        let bad: Vec<String> =
            pi0.union(&pi1).filter(|&&p| !d.sylow_order(p).is_finite()).map(|p| p.to_string()).collect();
        return Ok(Classification::NotFci {
            reason: format!("infinite Sylow subgroup at prime {} in pi_0 u pi_1", bad.join(", ")),
        });
    }
    let lemma_bound = centralizer_bound(&spec.phi, d)?;
    let bound = lemma_bound.checked_mul(Cardinal::Finite(spec.m as u128)).ok_or(Error::Overflow("global bound"))?;
    Ok(Classification::Fci(Certificate {
        m: spec.m,
        pi0: pi0.into_iter().collect(),
        pi1: pi1.into_iter().collect(),
        big_m: m_value(d),
        bound,
        lemma_bound,
        omega1_d2: omega1_two_part(d),
    }))
}

/// `m M prod_{p in pi_0 u pi_1} |D_p|`; an error unless the spec is FCI.
pub fn global_bound(spec: &FciGroupSpec) -> Result<Cardinal> {
    match classify(spec)? {
        Classification::Fci(c) => Ok(c.bound),
        other => invalid(format!("spec classifies as {}, not fci", other.tag())),
    }
}

/// `g^i d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtensionElement {
    pub i: u64,
    pub d: DedekindElement,
}

/// A finite truncation `<g, D_trunc>` of an extension spec.
#[derive(Debug, Clone)]
pub struct TruncatedExtension {
    m: u64,
    instance: DedekindInstance,
    action: PowerAutAction,
    n: DedekindElement,
}

fn realize_fiber(fiber: &FiberElement, instance: &DedekindInstance) -> Result<DedekindElement> {
    let mut x = instance.identity();
    x.q8 = fiber.q8;
    for fc in &fiber.abelian {
        let i = instance.part_index(fc.p).ok_or_else(|| Error::InvalidArgument(format!("prime {} not truncated", fc.p)))?;
        let part = &instance.parts()[i];
        let mut coords = Vec::with_capacity(fc.coords.len());
        for (&(num, level), &e) in fc.coords.iter().zip(part.exponents()) {
            if level > e {
                return invalid(format!("fiber needs depth {level} at prime {}, truncation has {e}", fc.p));
            }
            coords.push(num % fc.p.pow(level) * fc.p.pow(e - level));
        }
        x.parts[i] = part.element(coords)?;
    }
    Ok(x)
}

impl TruncatedExtension {
    pub fn new(spec: &FciGroupSpec, params: TruncationParams, cap: OrderCap) -> Result<Self> {
        ensure_valid(spec)?;
        let instance = truncate(&spec.dedekind, params, cap)?;
        cap.check(instance.order() as u128 * spec.m as u128)?;
        let action = PowerAutAction::new(&spec.phi, &spec.dedekind, &instance)?;
        let n = realize_fiber(&spec.n, &instance)?;
        Ok(Self { m: spec.m, instance, action, n })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn instance(&self) -> &DedekindInstance {
        &self.instance
    }

    pub fn action(&self) -> &PowerAutAction {
        &self.action
    }

    pub fn fiber(&self) -> &DedekindElement {
        &self.n
    }

    pub fn order(&self) -> usize {
        self.m as usize * self.instance.order()
    }

    pub fn identity(&self) -> ExtensionElement {
        ExtensionElement { i: 0, d: self.instance.identity() }
    }

    /// `g`.
    pub fn generator(&self) -> ExtensionElement {
        ExtensionElement { i: 1 % self.m, d: if self.m == 1 { self.n.clone() } else { self.instance.identity() } }
    }

    /// `(i, d)(j, e) = (r, n^q phi^j(d) e)` where `i + j = q m + r`.
    pub fn multiply(&self, x: &ExtensionElement, y: &ExtensionElement) -> ExtensionElement {
        let (q, r) = ((x.i + y.i) / self.m, (x.i + y.i) % self.m);
        let mut d = self.action.apply_pow(&self.instance, &x.d, y.i);
        if q == 1 {
            d = self.instance.multiply(&self.n, &d);
        }
        ExtensionElement { i: r, d: self.instance.multiply(&d, &y.d) }
    }

    /// Solves `(i, d)(j, e) = (0, 1)`: `j = -i mod m` and `e = (n^q phi^j(d))^-1`.
    pub fn inverse(&self, x: &ExtensionElement) -> ExtensionElement {
        let j = (self.m - x.i) % self.m;
        let q = (x.i + j) / self.m;
        let mut d = self.action.apply_pow(&self.instance, &x.d, j);
        if q == 1 {
            d = self.instance.multiply(&self.n, &d);
        }
        ExtensionElement { i: j, d: self.instance.inverse(&d) }
    }

    /// `i |D| + index(d)`; the embedded `D` occupies `0..|D|`.
    pub fn index_of(&self, x: &ExtensionElement) -> usize {
        x.i as usize * self.instance.order() + self.instance.index_of(&x.d)
    }

    pub fn element_at(&self, index: usize) -> ExtensionElement {
        let n = self.instance.order();
        ExtensionElement { i: (index / n) as u64, d: self.instance.element_at(index % n) }
    }

    /// The truncated `phi` still has order `m`.
    pub fn phi_order_preserved(&self) -> bool {
        self.action.order() == self.m
    }

    /// `phi` keeps order `m` and every coset `g^i D` with `0 < i < m` is
    /// guaranteed to hold only elements generating non-normal subgroups.
    /// The kernel-set and quotient statements are asserted on these only.
    pub fn faithful(&self) -> bool {
        self.phi_order_preserved() && self.action.separates_cosets(self.m)
    }

    pub fn cayley_table(&self) -> Vec<u32> {
        let dn = self.instance.order();
        let n = self.order();
        let dt = self.instance.cayley_table();
        let perms: Vec<Vec<u32>> = (0..self.m).map(|j| self.action.permutation(&self.instance, j)).collect();
        let fiber = self.instance.index_of(&self.n);
        let m = self.m as usize;
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            let (i, d) = (x / dn, x % dn);
            for y in 0..n {
                let (j, e) = (y / dn, y % dn);
                let mut base = perms[j][d] as usize;
                if i + j >= m {
                    base = dt[fiber * dn + base] as usize;
                }
                table[x * n + y] = (((i + j) % m) * dn) as u32 + dt[base * dn + e];
            }
        }
        table
    }

    /// Builds and validates the Cayley table.
    pub fn to_cayley(&self) -> Result<CayleyGroup> {
        CayleyGroup::from_table(self.order(), self.cayley_table())
    }
}

/// Builds `truncate_group(spec, params)` as a validated [`CayleyGroup`].
pub fn truncate_group(spec: &FciGroupSpec, params: TruncationParams, cap: OrderCap) -> Result<CayleyGroup> {
    TruncatedExtension::new(spec, params, cap)?.to_cayley()
}

/// Brute-force findings on one truncation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncationReport {
    pub params: TruncationParams,
    pub group_order: usize,
    pub d_order: usize,
    pub phi_order_preserved: bool,
    pub faithful: bool,
    /// `g^m` equals the realized `n`, and whether that is nontrivial.
    pub generator_power_is_fiber: bool,
    pub fiber_nontrivial: bool,
    /// Every cyclic subgroup is normal.
    pub dedekind: bool,
    pub empirical_max_centralizer: usize,
    pub empirical_max_index: usize,
    /// Least element index attaining the maximal centralizer.
    pub witness: Option<usize>,
    pub kernel_set_is_d: bool,
    pub kernel_set_is_subgroup: bool,
    pub quotient_cyclic_of_order_m: bool,
    pub metabelian: bool,
    /// `None` unless the spec is FCI.
    pub within_bound: Option<bool>,
}

/// Truncates, validates the group axioms, and runs every brute-force scan.
pub fn survey_truncation(spec: &FciGroupSpec, params: TruncationParams, cap: OrderCap) -> Result<TruncationReport> {
    let ext = TruncatedExtension::new(spec, params, cap)?;
    let g = ext.to_cayley()?;
    let dn = ext.instance.order();
    let d_handle = SubgroupHandle::new(&g, (0..dn).collect())?;
    let bci = empirical_bci(&g);
    let kernel = g.kernel_set();
    let quotient = g.quotient(&d_handle)?;
    let gen = ext.index_of(&ext.generator());
    let bound = match spec.dedekind.is_infinite() {
        true => classify(spec)?.certificate().map(|c| c.bound),
        false => None,
    };
    Ok(TruncationReport {
        params,
        group_order: g.order(),
        d_order: dn,
        phi_order_preserved: ext.phi_order_preserved(),
        faithful: ext.faithful(),
        generator_power_is_fiber: g.power(gen, ext.m as usize) == ext.index_of(&ExtensionElement { i: 0, d: ext.n.clone() }),
        fiber_nontrivial: ext.n != ext.instance.identity(),
        dedekind: bci.dedekind,
        empirical_max_centralizer: bci.max_centralizer_order,
        empirical_max_index: bci.max_index,
        witness: bci.centralizer_witness,
        kernel_set_is_d: kernel.elements == d_handle.elements(),
        kernel_set_is_subgroup: kernel.is_subgroup,
        quotient_cyclic_of_order_m: quotient.group.order() as u64 == ext.m && quotient.group.is_cyclic(),
        metabelian: g.is_metabelian(),
        within_bound: bound.map(|b| b.finite().is_some_and(|b| bci.max_centralizer_order as u128 <= b)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianPComponent;
    use crate::dedekind::TailRule;
    use proptest::prelude::*;

    fn z_inf(p: u64) -> AbelianPComponent {
        AbelianPComponent::quasicyclic(p).unwrap()
    }

    fn spec(d: DedekindSpec, labels: Vec<(u64, UnitLabel)>, m: u64, n: FiberElement) -> FciGroupSpec {
        let tail = d.tail.is_some();
        FciGroupSpec { dedekind: d, phi: PowerAutSpec::new(labels, tail), m, n }
    }

    fn z5() -> FciGroupSpec {
        spec(DedekindSpec::abelian(vec![z_inf(5)]), vec![(5, UnitLabel::Teichmuller(2))], 4, FiberElement::identity())
    }

    fn z2(n: FiberElement) -> FciGroupSpec {
        spec(DedekindSpec::abelian(vec![z_inf(2)]), vec![(2, UnitLabel::Inversion)], 2, n)
    }

    fn involution() -> FiberElement {
        FiberElement { q8: Q8Element::ONE, abelian: vec![FiberCoords { p: 2, coords: vec![(1, 1)] }] }
    }

    fn q8_z3() -> FciGroupSpec {
        spec(DedekindSpec::new(true, vec![z_inf(3)], None), vec![(3, UnitLabel::Inversion)], 2, FiberElement::identity())
    }

    fn c3_z7() -> FciGroupSpec {
        spec(
            DedekindSpec::abelian(vec![AbelianPComponent::cyclic(3, 1).unwrap(), z_inf(7)]),
            vec![(3, UnitLabel::Identity), (7, UnitLabel::Teichmuller(2))],
            3,
            FiberElement::identity(),
        )
    }

    fn cap() -> OrderCap {
        OrderCap::default()
    }

    #[test]
    fn validation_examples() {
        assert!(validate_extension(&z5()).is_empty());
        let mut bad = q8_z3();
        bad.n.q8 = Q8Element::I;
        assert_eq!(validate_extension(&bad), vec![ExtensionViolation::NotCentral]);
        assert_eq!(bad_fiber_message(&bad), "n not central");

        let mut moved = z5();
        moved.n = FiberElement { q8: Q8Element::ONE, abelian: vec![FiberCoords { p: 5, coords: vec![(1, 1)] }] };
        assert_eq!(validate_extension(&moved), vec![ExtensionViolation::NotFixed(5)]);

        assert!(validate_extension(&z2(involution())).is_empty());
        let mut order4 = z2(FiberElement::identity());
        order4.n = FiberElement { q8: Q8Element::ONE, abelian: vec![FiberCoords { p: 2, coords: vec![(1, 2)] }] };
        assert_eq!(validate_extension(&order4), vec![ExtensionViolation::NotFixed(2)]);

        let mut mismatch = z5();
        mismatch.m = 2;
        assert_eq!(validate_extension(&mismatch), vec![ExtensionViolation::OrderMismatch { declared: 2, actual: 4 }]);
    }

    fn bad_fiber_message(s: &FciGroupSpec) -> String {
        validate_extension(s)[0].to_string()
    }

    #[test]
    fn classification_examples() {
        let c = classify(&z5()).unwrap();
        let cert = c.certificate().unwrap();
        assert_eq!((cert.m, cert.big_m, cert.bound), (4, Cardinal::ONE, Cardinal::Finite(4)));
        assert!(cert.pi0.is_empty() && cert.pi1.is_empty());

        let cert = classify(&z2(FiberElement::identity())).unwrap().certificate().cloned().unwrap();
        assert_eq!((cert.big_m, cert.bound, cert.omega1_d2), (Cardinal::Finite(2), Cardinal::Finite(4), 2));

        let ded = spec(DedekindSpec::abelian(vec![z_inf(2)]), vec![(2, UnitLabel::Identity)], 1, FiberElement::identity());
        assert_eq!(classify(&ded).unwrap(), Classification::Dedekind);

        assert_eq!(global_bound(&q8_z3()).unwrap(), Cardinal::Finite(128));
        assert_eq!(global_bound(&c3_z7()).unwrap(), Cardinal::Finite(9));

        let two_id = spec(
            DedekindSpec::abelian(vec![z_inf(2), AbelianPComponent::cyclic(3, 1).unwrap()]),
            vec![(2, UnitLabel::Identity), (3, UnitLabel::Inversion)],
            2,
            FiberElement::identity(),
        );
        assert!(matches!(classify(&two_id).unwrap(), Classification::NotFci { .. }));
        assert!(global_bound(&two_id).is_err());

        let finite = spec(
            DedekindSpec::abelian(vec![AbelianPComponent::cyclic(5, 1).unwrap()]),
            vec![(5, UnitLabel::Residue(2))],
            4,
            FiberElement::identity(),
        );
        assert!(matches!(classify(&finite), Err(Error::Unsupported(_))));
    }

    #[test]
    fn pi0_with_infinite_component_is_not_fci() {
        let s = spec(
            DedekindSpec::abelian(vec![z_inf(3), z_inf(5)]),
            vec![(3, UnitLabel::Inversion), (5, UnitLabel::Teichmuller(2))],
            4,
            FiberElement::identity(),
        );
        match classify(&s).unwrap() {
            Classification::NotFci { reason } => assert!(reason.contains('3'), "{reason}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn multiplication_law() {
        let t = TruncatedExtension::new(&z5(), TruncationParams::new(1, 0), cap()).unwrap();
        let inst = t.instance();
        let a = |d: u64| inst.element(Q8Element::ONE, &[(5, vec![d])]).unwrap();
        let el = |i, d| ExtensionElement { i, d: a(d) };
        // D embeds
        assert_eq!(t.multiply(&el(0, 2), &el(0, 4)), el(0, 1));
        // g a = g^1 a^1, while a g = g phi(a) = g a^2
        assert_eq!(t.multiply(&el(1, 0), &el(0, 1)), el(1, 1));
        assert_eq!(t.multiply(&el(0, 1), &el(1, 0)), el(1, 2));
        // g^(m-1) g = g^m = n
        assert_eq!(t.multiply(&el(3, 0), &el(1, 0)), t.identity());

        let nt = TruncatedExtension::new(&z2(involution()), TruncationParams::new(3, 0), cap()).unwrap();
        let g = nt.generator();
        assert_eq!(nt.multiply(&g, &g), ExtensionElement { i: 0, d: nt.fiber().clone() });
        assert_eq!(nt.fiber().parts[0].coords(), &[4]);
    }

    /// `C_5 x| C_4` inside the affine group of `Z/5`: `g^i a^d` is
    /// `x -> 3^i (x + d)`, composed as functions.
    #[test]
    fn affine_realization_is_a_faithful_homomorphism() {
        let t = TruncatedExtension::new(&z5(), TruncationParams::new(1, 0), cap()).unwrap();
        let affine = |x: &ExtensionElement| {
            let d = x.d.parts[0].coords()[0];
            let s = crate::arith::pow_mod(3, x.i, 5);
            (s, s * d % 5)
        };
        // (s, c)(s', c') = x -> s (s' x + c') + c
        let compose = |(s, c): (u64, u64), (s2, c2): (u64, u64)| (s * s2 % 5, (s * c2 + c) % 5);
        let elems: Vec<ExtensionElement> = (0..t.order()).map(|i| t.element_at(i)).collect();
        let images: std::collections::BTreeSet<(u64, u64)> = elems.iter().map(affine).collect();
        assert_eq!(images.len(), 20);
        for x in &elems {
            for y in &elems {
                assert_eq!(affine(&t.multiply(x, y)), compose(affine(x), affine(y)));
            }
        }
    }

    #[test]
    fn inverses_and_table() {
        for s in [z5(), z2(involution()), q8_z3(), c3_z7()] {
            let t = TruncatedExtension::new(&s, TruncationParams::new(2, 0), cap()).unwrap();
            let table = t.cayley_table();
            let n = t.order();
            for x in 0..n {
                let ex = t.element_at(x);
                assert_eq!(t.multiply(&ex, &t.inverse(&ex)), t.identity());
                assert_eq!(t.multiply(&t.inverse(&ex), &ex), t.identity());
                for y in (0..n).step_by(5) {
                    assert_eq!(table[x * n + y] as usize, t.index_of(&t.multiply(&ex, &t.element_at(y))));
                }
            }
            assert!(t.to_cayley().is_ok());
        }
    }

    #[test]
    fn truncation_orders() {
        assert_eq!(truncate_group(&z5(), TruncationParams::new(1, 0), cap()).unwrap().order(), 20);
        assert_eq!(truncate_group(&q8_z3(), TruncationParams::new(1, 0), cap()).unwrap().order(), 48);
        let ded = spec(DedekindSpec::abelian(vec![z_inf(3)]), vec![(3, UnitLabel::Identity)], 1, FiberElement::identity());
        let g = truncate_group(&ded, TruncationParams::new(2, 0), cap()).unwrap();
        assert_eq!(g.order(), 9);
        assert!(g.is_cyclic());
        assert!(matches!(
            truncate_group(&z5(), TruncationParams::new(5, 0), OrderCap::new(1000)),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn holomorph_profile() {
        let g = truncate_group(&z5(), TruncationParams::new(1, 0), cap()).unwrap();
        assert_eq!(empirical_bci(&g).max_centralizer_order, 4);
        let k = g.kernel_set();
        assert_eq!(k.elements, (0..5).collect::<Vec<_>>());
    }

    #[test]
    fn shallow_quaternion_collapse() {
        // At depth 2 the extension of C_4 by inversion with g^2 = the involution is Q8.
        let s = z2(involution());
        let r = survey_truncation(&s, TruncationParams::new(2, 0), cap()).unwrap();
        assert!(r.phi_order_preserved && !r.faithful);
        assert!(r.dedekind && !r.kernel_set_is_d);
        let r = survey_truncation(&s, TruncationParams::new(3, 0), cap()).unwrap();
        assert!(r.faithful && r.kernel_set_is_d && r.fiber_nontrivial && r.generator_power_is_fiber);
        assert_eq!(r.within_bound, Some(true));
    }

    #[test]
    fn surveys_of_small_specs() {
        for s in [z5(), z2(FiberElement::identity()), q8_z3(), c3_z7()] {
            let bound = global_bound(&s).unwrap().finite().unwrap();
            for j in 1..=2 {
                let r = survey_truncation(&s, TruncationParams::new(j, 0), cap()).unwrap();
                assert_eq!(r.group_order as u64, s.m * r.d_order as u64);
                assert!(r.metabelian);
                if r.faithful {
                    assert!(r.kernel_set_is_d && r.kernel_set_is_subgroup && r.quotient_cyclic_of_order_m);
                    assert!(r.empirical_max_centralizer as u128 <= bound);
                }
            }
        }
    }

    #[test]
    fn tail_spec_classifies() {
        let s = spec(
            DedekindSpec::new(false, vec![AbelianPComponent::cyclic(3, 1).unwrap()], Some(TailRule { m: 4, min_prime: 5 })),
            vec![(3, UnitLabel::Inversion)],
            4,
            FiberElement::identity(),
        );
        let cert = classify(&s).unwrap().certificate().cloned().unwrap();
        assert_eq!(cert.pi0, vec![3]);
        assert_eq!(cert.bound, Cardinal::Finite(12));
        let r = survey_truncation(&s, TruncationParams::new(1, 2), cap()).unwrap();
        assert_eq!(r.group_order, 4 * 3 * 5 * 13);
        assert!(r.faithful && r.within_bound == Some(true));
        assert!(!survey_truncation(&s, TruncationParams::new(1, 0), cap()).unwrap().phi_order_preserved);
    }

    proptest! {
        #[test]
        fn random_triples_associate(x in 0usize..500, y in 0usize..500, z in 0usize..500, j in 1u32..4) {
            let t = TruncatedExtension::new(&z5(), TruncationParams::new(j, 0), cap()).unwrap();
            let n = t.order();
            let (a, b, c) = (t.element_at(x % n), t.element_at(y % n), t.element_at(z % n));
            prop_assert_eq!(t.multiply(&t.multiply(&a, &b), &c), t.multiply(&a, &t.multiply(&b, &c)));
        }

        #[test]
        fn generator_acts_by_phi(x in 0usize..432) {
            let t = TruncatedExtension::new(&q8_z3(), TruncationParams::new(3, 0), cap()).unwrap();
            let d = t.instance().element_at(x % t.instance().order());
            let g = t.generator();
            let conj = t.multiply(&t.multiply(&t.inverse(&g), &ExtensionElement { i: 0, d: d.clone() }), &g);
            prop_assert_eq!(conj, ExtensionElement { i: 0, d: t.action().apply(t.instance(), &d) });
        }
    }
}
