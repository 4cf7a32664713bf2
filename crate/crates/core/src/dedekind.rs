//! Periodic Dedekind groups `D = Q x A` with `Q` trivial or quaternion.
//!
//! A [`DedekindSpec`] describes a possibly infinite group: finitely many
//! explicit Sylow components plus an optional [`TailRule`] adding `C_p` for
//! infinitely many primes. [`truncate`] turns it into a finite
//! [`DedekindInstance`] with concrete element arithmetic.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianPComponent, AbelianPVector, FiniteAbelianPGroup};
use crate::arith::next_prime;
use crate::bruteforce::{CayleyGroup, OrderCap};
use crate::cardinal::Cardinal;
use crate::error::{invalid, Error, Result};

/// Adds one summand `C_p` for every prime `p = 1 (mod m)` with `p >= min_prime`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TailRule {
    pub m: u64,
    pub min_prime: u64,
}

impl TailRule {
    pub fn contains(&self, p: u64) -> bool {
        self.m >= 2 && p >= self.min_prime && p % self.m == 1 && crate::arith::is_prime(p)
    }

    /// The first `count` primes of the tail, increasing.
    pub fn primes(&self, count: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(count);
        if self.m < 2 {
            return out;
        }
        let mut p = next_prime(self.min_prime);
        while out.len() < count {
            if p % self.m == 1 {
                out.push(p);
            }
            p = next_prime(p + 1);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DedekindSpec {
    pub has_q8: bool,
    pub components: Vec<AbelianPComponent>,
    pub tail: Option<TailRule>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecViolation {
    TwoPartNotElementary,
    DuplicatePrime(u64),
    TrivialComponent(u64),
    TailModulusTooSmall(u64),
    TailMeetsComponent(u64),
}

impl fmt::Display for SpecViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecViolation::TwoPartNotElementary => write!(f, "2-component not elementary abelian"),
            SpecViolation::DuplicatePrime(p) => write!(f, "prime {p} has more than one component"),
            SpecViolation::TrivialComponent(p) => write!(f, "component at prime {p} is trivial"),
            SpecViolation::TailModulusTooSmall(m) => write!(f, "tail modulus {m} must be at least 2"),
            SpecViolation::TailMeetsComponent(p) => {
                write!(f, "explicit prime {p} also belongs to the tail")
            }
        }
    }
}

impl DedekindSpec {
    pub fn new(has_q8: bool, components: Vec<AbelianPComponent>, tail: Option<TailRule>) -> Self {
        Self { has_q8, components, tail }
    }

    pub fn abelian(components: Vec<AbelianPComponent>) -> Self {
        Self::new(false, components, None)
    }

    pub fn component(&self, p: u64) -> Option<&AbelianPComponent> {
        self.components.iter().find(|c| c.p() == p)
    }

    /// Explicit primes of `pi(D)`: component primes, plus 2 when `Q8` is present.
    pub fn explicit_primes(&self) -> BTreeSet<u64> {
        let mut out: BTreeSet<u64> = self.components.iter().filter(|c| !c.is_trivial()).map(|c| c.p()).collect();
        if self.has_q8 {
            out.insert(2);
        }
        out
    }

    pub fn is_infinite(&self) -> bool {
        self.tail.is_some() || self.components.iter().any(|c| !c.is_finite())
    }

    /// `|D_p|`; the Sylow 2-subgroup includes the quaternion factor.
    pub fn sylow_order(&self, p: u64) -> Cardinal {
        let abelian = self.component(p).map_or(Cardinal::ONE, |c| c.order());
        if p == 2 && self.has_q8 {
            Cardinal::Finite(8) * abelian
        } else if self.tail.is_some_and(|t| t.contains(p)) && self.component(p).is_none() {
            Cardinal::Finite(p as u128)
        } else {
            abelian
        }
    }

    /// Rank of the Sylow 2-subgroup (the quaternion group has rank 2).
    pub fn two_rank(&self) -> u32 {
        self.component(2).map_or(0, |c| c.rank()) + if self.has_q8 { 2 } else { 0 }
    }

    pub fn validate(&self) -> Vec<SpecViolation> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for c in &self.components {
            if !seen.insert(c.p()) {
                out.push(SpecViolation::DuplicatePrime(c.p()));
            }
            if c.is_trivial() {
                out.push(SpecViolation::TrivialComponent(c.p()));
            }
        }
        if self.has_q8 && self.component(2).is_some_and(|c| !c.is_elementary()) {
            out.push(SpecViolation::TwoPartNotElementary);
        }
        if let Some(tail) = self.tail {
            if tail.m < 2 {
                out.push(SpecViolation::TailModulusTooSmall(tail.m));
            } else {
                for &p in &seen {
                    if tail.contains(p) {
                        out.push(SpecViolation::TailMeetsComponent(p));
                    }
                }
            }
        }
        out
    }
}

/// Constraint check for a Dedekind spec; an empty list means valid.
pub fn validate_spec(spec: &DedekindSpec) -> Vec<SpecViolation> {
    spec.validate()
}

/// An element of the quaternion group `{1, -1, i, -i, j, -j, k, -k}`, stored as
/// `2 * unit + sign` with units `1, i, j, k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Q8Element(u8);

const Q8_LABELS: [&str; 8] = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];

impl Q8Element {
    pub const ONE: Q8Element = Q8Element(0);
    pub const MINUS_ONE: Q8Element = Q8Element(1);
    pub const I: Q8Element = Q8Element(2);
    pub const J: Q8Element = Q8Element(4);
    pub const K: Q8Element = Q8Element(6);

    pub fn from_index(index: u8) -> Result<Self> {
        if index < 8 {
            Ok(Q8Element(index))
        } else {
            invalid(format!("quaternion index {index} out of range"))
        }
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = Q8Element> {
        (0..8).map(Q8Element)
    }

    pub fn parse(label: &str) -> Result<Self> {
        Q8_LABELS
            .iter()
            .position(|&l| l == label)
            .map(|i| Q8Element(i as u8))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown quaternion label {label:?}")))
    }

    pub fn label(self) -> &'static str {
        Q8_LABELS[self.0 as usize]
    }

    pub fn inverse(self) -> Q8Element {
        if self.0 < 2 {
            self
        } else {
            Q8Element(self.0 ^ 1)
        }
    }

    pub fn is_central(self) -> bool {
        self.0 < 2
    }
}

impl Mul for Q8Element {
    type Output = Q8Element;

    fn mul(self, other: Q8Element) -> Q8Element {
        // (unit, sign) for products of 1, i, j, k
        const BASIS: [[(u8, u8); 4]; 4] = [
            [(0, 0), (1, 0), (2, 0), (3, 0)],
            [(1, 0), (0, 1), (3, 0), (2, 1)],
            [(2, 0), (3, 1), (0, 1), (1, 0)],
            [(3, 0), (2, 0), (1, 1), (0, 1)],
        ];
        let (u, s) = (self.0 / 2, self.0 % 2);
        let (v, t) = (other.0 / 2, other.0 % 2);
        let (w, sign) = BASIS[u as usize][v as usize];
        Q8Element(2 * w + (s + t + sign) % 2)
    }
}

impl fmt::Display for Q8Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncationParams {
    pub quasicyclic_depth: u32,
    pub tail_count: usize,
}

impl TruncationParams {
    pub fn new(quasicyclic_depth: u32, tail_count: usize) -> Self {
        Self { quasicyclic_depth, tail_count }
    }
}

/// Where a part of a truncation came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartSource {
    Explicit,
    Tail,
}

/// A finite truncation of a [`DedekindSpec`]. Abelian parts are sorted by prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DedekindInstance {
    has_q8: bool,
    parts: Vec<FiniteAbelianPGroup>,
    sources: Vec<PartSource>,
    params: TruncationParams,
    abelian_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DedekindElement {
    pub q8: Q8Element,
    pub parts: Vec<AbelianPVector>,
}

/// Finite truncation: each `Z(p^inf)` becomes `C_{p^j}` and the first
/// `tail_count` tail primes contribute `C_p`.
pub fn truncate(spec: &DedekindSpec, params: TruncationParams, cap: OrderCap) -> Result<DedekindInstance> {
    let violations = spec.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidSpec(violations.iter().map(|v| v.to_string()).collect()));
    }
    if params.quasicyclic_depth == 0 {
        return invalid("quasicyclic depth must be at least 1");
    }
    let mut parts: Vec<(FiniteAbelianPGroup, PartSource)> = Vec::new();
    for c in &spec.components {
        parts.push((c.truncate(params.quasicyclic_depth)?, PartSource::Explicit));
    }
    if let Some(tail) = spec.tail {
        for p in tail.primes(params.tail_count) {
            parts.push((FiniteAbelianPGroup::new(p, vec![1])?, PartSource::Tail));
        }
    }
    parts.sort_by_key(|(g, _)| g.p());

    let mut order: u128 = if spec.has_q8 { 8 } else { 1 };
    for (g, _) in &parts {
        order = order.checked_mul(g.order()).ok_or(Error::ResourceLimit { order: u128::MAX, cap: cap.get() })?;
    }
    cap.check(order)?;
    let abelian_order = (order / if spec.has_q8 { 8 } else { 1 }) as usize;
    let (parts, sources) = parts.into_iter().unzip();
    Ok(DedekindInstance { has_q8: spec.has_q8, parts, sources, params, abelian_order })
}

impl DedekindInstance {
    pub fn has_q8(&self) -> bool {
        self.has_q8
    }

    pub fn parts(&self) -> &[FiniteAbelianPGroup] {
        &self.parts
    }

    pub fn sources(&self) -> &[PartSource] {
        &self.sources
    }

    pub fn params(&self) -> TruncationParams {
        self.params
    }

    pub fn part_index(&self, p: u64) -> Option<usize> {
        self.parts.iter().position(|g| g.p() == p)
    }

    pub fn order(&self) -> usize {
        self.abelian_order * if self.has_q8 { 8 } else { 1 }
    }

    pub fn abelian_order(&self) -> usize {
        self.abelian_order
    }

    pub fn identity(&self) -> DedekindElement {
        DedekindElement { q8: Q8Element::ONE, parts: self.parts.iter().map(|g| g.zero()).collect() }
    }

    pub fn multiply(&self, x: &DedekindElement, y: &DedekindElement) -> DedekindElement {
        DedekindElement {
            q8: x.q8 * y.q8,
            parts: self.parts.iter().zip(x.parts.iter().zip(&y.parts)).map(|(g, (a, b))| g.add(a, b)).collect(),
        }
    }

    pub fn inverse(&self, x: &DedekindElement) -> DedekindElement {
        DedekindElement {
            q8: x.q8.inverse(),
            parts: self.parts.iter().zip(&x.parts).map(|(g, a)| g.neg(a)).collect(),
        }
    }

    pub fn power(&self, x: &DedekindElement, k: u64) -> DedekindElement {
        let mut acc = self.identity();
        for _ in 0..(k % self.exponent()) {
            acc = self.multiply(&acc, x);
        }
        acc
    }

    /// Least common multiple of the summand exponents (and 4 for `Q8`).
    pub fn exponent(&self) -> u64 {
        let q = if self.has_q8 { 4 } else { 1 };
        self.parts.iter().fold(q, |acc, g| crate::arith::lcm(acc, g.exponent()))
    }

    pub fn element_order(&self, x: &DedekindElement) -> u64 {
        let q = match x.q8.index() {
            0 => 1,
            1 => 2,
            _ => 4,
        };
        self.parts.iter().zip(&x.parts).fold(q, |acc, (g, a)| crate::arith::lcm(acc, g.element_order(a)))
    }

    /// Dense index with the identity at 0: `q8 * |A| + abelian mixed radix`.
    pub fn index_of(&self, x: &DedekindElement) -> usize {
        let mut idx = 0u128;
        for (g, a) in self.parts.iter().zip(&x.parts) {
            idx = idx * g.order() + g.index_of(a);
        }
        x.q8.index() as usize * self.abelian_order + idx as usize
    }

    pub fn element_at(&self, index: usize) -> DedekindElement {
        let q8 = Q8Element((index / self.abelian_order) as u8);
        let mut rest = (index % self.abelian_order) as u128;
        let mut parts = vec![AbelianPVector::default(); self.parts.len()];
        for (slot, g) in parts.iter_mut().zip(&self.parts).rev() {
            *slot = g.from_index(rest % g.order());
            rest /= g.order();
        }
        DedekindElement { q8, parts }
    }

    pub fn elements(&self) -> impl Iterator<Item = DedekindElement> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    /// Builds an element from a quaternion part and per-prime coordinates;
    /// primes not listed are zero.
    pub fn element(&self, q8: Q8Element, coords: &[(u64, Vec<u64>)]) -> Result<DedekindElement> {
        let mut x = self.identity();
        if !self.has_q8 && q8 != Q8Element::ONE {
            return invalid("instance has no quaternion factor");
        }
        x.q8 = q8;
        for (p, c) in coords {
            let i = self.part_index(*p).ok_or_else(|| Error::InvalidArgument(format!("prime {p} not in the truncation")))?;
            x.parts[i] = self.parts[i].element(c.clone())?;
        }
        Ok(x)
    }

    /// The flat list of cyclic moduli over all parts, in index order.
    pub(crate) fn radices(&self) -> Vec<u64> {
        self.parts.iter().flat_map(|g| g.moduli().iter().copied()).collect()
    }

    /// Dense multiplication table, row `a` holding `a * b`.
    pub fn cayley_table(&self) -> Vec<u32> {
        let n = self.order();
        let ab = self.abelian_order;
        let radices = self.radices();
        // digits of every abelian index, most significant first
        let digits: Vec<Vec<u64>> = (0..ab)
            .map(|mut i| {
                let mut d = vec![0u64; radices.len()];
                for (slot, &r) in d.iter_mut().zip(&radices).rev() {
                    *slot = (i as u64) % r;
                    i /= r as usize;
                }
                d
            })
            .collect();
        let mut abelian_table = vec![0u32; ab * ab];
        for a in 0..ab {
            for b in 0..ab {
                let mut idx = 0u64;
                for ((&x, &y), &r) in digits[a].iter().zip(&digits[b]).zip(&radices) {
                    idx = idx * r + (x + y) % r;
                }
                abelian_table[a * ab + b] = idx as u32;
            }
        }
        let qn = if self.has_q8 { 8 } else { 1 };
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            let (qx, ax) = (x / ab, x % ab);
            for y in 0..n {
                let (qy, ay) = (y / ab, y % ab);
                let q = if qn == 8 { (Q8Element(qx as u8) * Q8Element(qy as u8)).index() as usize } else { 0 };
                table[x * n + y] = (q * ab) as u32 + abelian_table[ax * ab + ay];
            }
        }
        table
    }

    pub fn to_cayley(&self) -> Result<CayleyGroup> {
        CayleyGroup::from_table(self.order(), self.cayley_table())
    }

    /// Canonical embedding into a deeper truncation of the same spec.
    pub fn embed_into(&self, x: &DedekindElement, deeper: &DedekindInstance) -> Result<DedekindElement> {
        if deeper.has_q8 != self.has_q8 {
            return invalid("embedding target has a different quaternion factor");
        }
        let mut out = deeper.identity();
        out.q8 = x.q8;
        for (g, a) in self.parts.iter().zip(&x.parts) {
            let i = deeper
                .part_index(g.p())
                .ok_or_else(|| Error::InvalidArgument(format!("prime {} missing from the deeper truncation", g.p())))?;
            out.parts[i] = g.embed_into(a, &deeper.parts[i])?;
        }
        Ok(out)
    }
}

/// `Z(D) = Z(Q) x A`.
pub fn center_elements(instance: &DedekindInstance) -> Vec<DedekindElement> {
    instance.elements().filter(|x| x.q8.is_central()).collect()
}

/// True iff every cyclic subgroup of `group` is normal.
pub fn is_dedekind_bruteforce(group: &CayleyGroup) -> bool {
    group.is_dedekind()
}
