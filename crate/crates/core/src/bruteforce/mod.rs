//! Dense Cayley-table groups and exhaustive scans over them.
//!
//! Elements are indices `0..N` with `0` the identity; multiplication is a
//! row-major `N x N` table. Every scan is a plain loop over the table, so
//! results are exact and deterministic. Scans that run once per element are
//! spread over rayon with ordered collection.

mod checks;
pub mod catalog;
pub mod constructors;

pub use checks::{
    check_dihedral, check_pq_elements, check_quotient_bound, empirical_bci, q8_automorphisms, BciProfile, DihedralCheck,
    PqOutcome, QuotientBoundCheck, Q8AutReport,
};
pub use constructors::dih;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// Tables up to this order get a full associativity check.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 500;
/// Random triples tested above [`FULL_ASSOCIATIVITY_LIMIT`].
pub const SAMPLED_TRIPLES: usize = 100_000;
const SAMPLE_SEED: u64 = 0x5eed_0fca_11e7;

/// Upper bound on the order of groups that get materialized as tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderCap(usize);

impl OrderCap {
    pub const DEFAULT: usize = 5000;
    pub const ENV_VAR: &'static str = "FCI_ORDER_CAP";

    pub fn new(cap: usize) -> Self {
        OrderCap(cap)
    }

    /// Reads [`OrderCap::ENV_VAR`], falling back to the default.
    pub fn from_env() -> Result<Self> {
        match std::env::var(Self::ENV_VAR) {
            Ok(raw) => raw
                .trim()
                .parse()
                .map(OrderCap)
                .map_err(|_| Error::InvalidArgument(format!("{} must be a positive integer, got {raw:?}", Self::ENV_VAR))),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn check(self, order: u128) -> Result<()> {
        if order > self.0 as u128 {
            Err(Error::ResourceLimit { order, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for OrderCap {
    fn default() -> Self {
        OrderCap(Self::DEFAULT)
    }
}

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGroup {
    n: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    labels: Option<Vec<String>>,
}

/// A subgroup as a sorted list of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubgroupHandle {
    elements: Vec<usize>,
}

impl SubgroupHandle {
    /// Checks closure under multiplication and inverses.
    pub fn new(group: &CayleyGroup, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.iter().any(|&x| x >= group.order()) {
            return invalid("subgroup element out of range");
        }
        let member = group.indicator(&elements);
        if !member[0] {
            return invalid("subset does not contain the identity");
        }
        for &a in &elements {
            if !member[group.inv(a)] || elements.iter().any(|&b| !member[group.mul(a, b)]) {
                return invalid("subset is not closed");
            }
        }
        Ok(SubgroupHandle { elements })
    }

    fn from_sorted(elements: Vec<usize>) -> Self {
        SubgroupHandle { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

/// `{x : <x> normal}` and whether it is closed under multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelSet {
    pub elements: Vec<usize>,
    pub is_subgroup: bool,
}

#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: CayleyGroup,
    /// Coset index of every element of the parent group.
    pub projection: Vec<usize>,
    /// Least element index of each coset.
    pub representatives: Vec<usize>,
}

/// Cheap isomorphism invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub order_statistics: BTreeMap<usize, usize>,
    pub center_order: usize,
    pub derived_length: Option<usize>,
    pub is_abelian: bool,
}

impl CayleyGroup {
    /// Validates a row-major table: identity at 0, Latin square, inverses,
    /// associativity (full up to [`FULL_ASSOCIATIVITY_LIMIT`], sampled above).
    pub fn from_table(n: usize, table: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return invalid("a group has at least one element");
        }
        if n > u32::MAX as usize || table.len() != n * n {
            return invalid(format!("table of length {} does not match order {n}", table.len()));
        }
        if table.iter().any(|&x| x as usize >= n) {
            return invalid("table entry out of range");
        }
        for x in 0..n {
            if table[x] as usize != x || table[x * n] as usize != x {
                return invalid("element 0 is not the identity");
            }
        }
        let latin = (0..n).into_par_iter().all(|a| {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[table[a * n + b] as usize] = true;
                col[table[b * n + a] as usize] = true;
            }
            row.iter().all(|&s| s) && col.iter().all(|&s| s)
        });
        if !latin {
            return invalid("table is not a Latin square");
        }
        let mut inverses = vec![0u32; n];
        for a in 0..n {
            let b = (0..n).find(|&b| table[a * n + b] == 0).expect("Latin row contains the identity");
            if table[b * n + a] != 0 {
                return invalid(format!("element {a} has no two-sided inverse"));
            }
            inverses[a] = b as u32;
        }
        let group = CayleyGroup { n, table, inverses, labels: None };
        if let Some((a, b, c)) = group.associativity_failure() {
            return invalid(format!("associativity fails at ({a}, {b}, {c})"));
        }
        Ok(group)
    }

    fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        let holds = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            (0..n).into_par_iter().find_map_first(|a| {
                for b in 0..n {
                    for c in 0..n {
                        if !holds(a, b, c) {
                            return Some((a, b, c));
                        }
                    }
                }
                None
            })
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            (0..SAMPLED_TRIPLES)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
                .find(|&(a, b, c)| !holds(a, b, c))
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return invalid("label count does not match the group order");
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn power(&self, x: usize, k: usize) -> usize {
        let (mut acc, mut base, mut k) = (0usize, x, k);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let (mut y, mut k) = (x, 1);
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Powers of `x` in generation order, starting at the identity.
    pub fn powers(&self, x: usize) -> Vec<usize> {
        let mut out = vec![0];
        let mut y = x;
        while y != 0 {
            out.push(y);
            y = self.mul(y, x);
        }
        out
    }

    fn indicator(&self, elements: &[usize]) -> Vec<bool> {
        let mut out = vec![false; self.n];
        for &x in elements {
            out[x] = true;
        }
        out
    }

    pub fn cyclic_subgroup(&self, x: usize) -> SubgroupHandle {
        let mut e = self.powers(x);
        e.sort_unstable();
        SubgroupHandle::from_sorted(e)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn centralizer(&self, x: usize) -> SubgroupHandle {
        SubgroupHandle::from_sorted((0..self.n).filter(|&y| self.mul(x, y) == self.mul(y, x)).collect())
    }

    pub fn centralizer_order(&self, x: usize) -> usize {
        (0..self.n).filter(|&y| self.mul(x, y) == self.mul(y, x)).count()
    }

    pub fn center(&self) -> SubgroupHandle {
        let members: Vec<bool> = (0..self.n)
            .into_par_iter()
            .map(|x| (0..self.n).all(|y| self.mul(x, y) == self.mul(y, x)))
            .collect();
        SubgroupHandle::from_sorted((0..self.n).filter(|&x| members[x]).collect())
    }

    /// `g^-1 <x> g = <x>` for every `g`.
    pub fn is_normal_cyclic(&self, x: usize) -> bool {
        let member = self.indicator(&self.powers(x));
        (0..self.n).all(|g| member[self.conjugate(x, g)])
    }

    pub fn is_normal(&self, h: &SubgroupHandle) -> bool {
        let member = self.indicator(h.elements());
        (0..self.n).all(|g| h.elements().iter().all(|&x| member[self.conjugate(x, g)]))
    }

    pub fn is_dedekind(&self) -> bool {
        (0..self.n).into_par_iter().all(|x| self.is_normal_cyclic(x))
    }

    /// Subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> SubgroupHandle {
        let mut member = vec![false; self.n];
        member[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut out = vec![0usize];
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if !member[b] {
                    member[b] = true;
                    out.push(b);
                    queue.push_back(b);
                }
            }
        }
        out.sort_unstable();
        SubgroupHandle::from_sorted(out)
    }

    pub fn normal_closure(&self, gens: &[usize]) -> SubgroupHandle {
        let conjugates: BTreeSet<usize> = gens.iter().flat_map(|&x| (0..self.n).map(move |g| (x, g))).map(|(x, g)| self.conjugate(x, g)).collect();
        self.generated_subgroup(&conjugates.into_iter().collect::<Vec<_>>())
    }

    /// Every normal subgroup, sorted by (order, elements).
    pub fn normal_subgroups(&self) -> Vec<SubgroupHandle> {
        let mut found: BTreeSet<SubgroupHandle> = (0..self.n).map(|x| self.normal_closure(&[x])).collect();
        let mut frontier: Vec<SubgroupHandle> = found.iter().cloned().collect();
        let minimal: Vec<SubgroupHandle> = frontier.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for a in &frontier {
                for b in &minimal {
                    if b.elements().iter().all(|&x| a.contains(x)) {
                        continue;
                    }
                    let mut gens = a.elements().to_vec();
                    gens.extend_from_slice(b.elements());
                    let joined = self.generated_subgroup(&gens);
                    if found.insert(joined.clone()) {
                        next.push(joined);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<SubgroupHandle> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn kernel_set(&self) -> KernelSet {
        let normal: Vec<bool> = (0..self.n).into_par_iter().map(|x| self.is_normal_cyclic(x)).collect();
        let elements: Vec<usize> = (0..self.n).filter(|&x| normal[x]).collect();
        let is_subgroup = elements.iter().all(|&a| elements.iter().all(|&b| normal[self.mul(a, b)]));
        KernelSet { elements, is_subgroup }
    }

    /// `G / N` with cosets numbered by their least element.
    pub fn quotient(&self, normal: &SubgroupHandle) -> Result<Quotient> {
        if !self.is_normal(normal) {
            return invalid("quotient by a subgroup that is not normal");
        }
        let mut projection = vec![usize::MAX; self.n];
        let mut representatives = Vec::new();
        for x in 0..self.n {
            if projection[x] == usize::MAX {
                let id = representatives.len();
                representatives.push(x);
                for &h in normal.elements() {
                    projection[self.mul(x, h)] = id;
                }
            }
        }
        let m = representatives.len();
        let mut table = vec![0u32; m * m];
        for (i, &a) in representatives.iter().enumerate() {
            for (j, &b) in representatives.iter().enumerate() {
                table[i * m + j] = projection[self.mul(a, b)] as u32;
            }
        }
        let group = CayleyGroup::from_table(m, table)?;
        Ok(Quotient { group, projection, representatives })
    }

    pub fn derived_subgroup(&self) -> SubgroupHandle {
        self.derived_of(&SubgroupHandle::from_sorted((0..self.n).collect()))
    }

    /// `[H, H]` for a subgroup `H`.
    pub fn derived_of(&self, h: &SubgroupHandle) -> SubgroupHandle {
        let n = self.n;
        let member = h
            .elements()
            .par_iter()
            .fold(
                || vec![false; n],
                |mut acc, &a| {
                    for &b in h.elements() {
                        acc[self.commutator(a, b)] = true;
                    }
                    acc
                },
            )
            .reduce(|| vec![false; n], |a, b| a.iter().zip(&b).map(|(x, y)| *x || *y).collect());
        let gens: Vec<usize> = (0..self.n).filter(|&c| member[c]).collect();
        self.generated_subgroup(&gens)
    }

    /// Orders of `G >= G' >= G'' >= ...` until it stabilizes.
    pub fn derived_series(&self) -> Vec<SubgroupHandle> {
        let mut series = vec![SubgroupHandle::from_sorted((0..self.n).collect())];
        loop {
            let next = self.derived_of(series.last().expect("series is non-empty"));
            if next.len() == series.last().map_or(0, |h| h.len()) {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_soluble(&self) -> bool {
        self.derived_series().last().is_some_and(|h| h.is_trivial())
    }

    /// Number of steps to reach the trivial group, `None` if insoluble.
    pub fn derived_length(&self) -> Option<usize> {
        let series = self.derived_series();
        series.last().is_some_and(|h| h.is_trivial()).then(|| series.len() - 1)
    }

    pub fn is_metabelian(&self) -> bool {
        let derived = self.derived_subgroup();
        self.derived_of(&derived).is_trivial()
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.n).any(|x| self.element_order(x) == self.n)
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut order_statistics = BTreeMap::new();
        for x in 0..self.n {
            *order_statistics.entry(self.element_order(x)).or_insert(0) += 1;
        }
        Fingerprint {
            order: self.n,
            order_statistics,
            center_order: self.center().len(),
            derived_length: self.derived_length(),
            is_abelian: self.is_abelian(),
        }
    }

    /// Plain text: `N` on the first line, then `N` rows of `N` space-separated
    /// indices, row `i` holding the products `i * j`.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.n * self.n * 4 + 16);
        out.push_str(&self.n.to_string());
        out.push('\n');
        for row in self.table.chunks(self.n) {
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let n: usize = lines
            .next()
            .and_then(|l| l.trim().parse().ok())
            .ok_or_else(|| Error::InvalidArgument("first line must be the group order".into()))?;
        let mut table = Vec::with_capacity(n * n);
        for (i, line) in lines.by_ref().take(n).enumerate() {
            let row: Vec<u32> = line
                .split(' ')
                .map(|t| t.parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidArgument(format!("row {i} is not a list of indices")))?;
            if row.len() != n {
                return invalid(format!("row {i} has {} entries, expected {n}", row.len()));
            }
            table.extend(row);
        }
        if table.len() != n * n {
            return invalid("table has too few rows");
        }
        if lines.any(|l| !l.is_empty()) {
            return invalid("trailing data after the table");
        }
        Self::from_table(n, table)
    }
}

pub fn centralizer(group: &CayleyGroup, x: usize) -> SubgroupHandle {
    group.centralizer(x)
}

pub fn is_normal_cyclic(group: &CayleyGroup, x: usize) -> bool {
    group.is_normal_cyclic(x)
}

pub fn kernel_set(group: &CayleyGroup) -> KernelSet {
    group.kernel_set()
}

pub fn quotient(group: &CayleyGroup, normal: &SubgroupHandle) -> Result<Quotient> {
    group.quotient(normal)
}

pub fn derived_subgroup(group: &CayleyGroup) -> SubgroupHandle {
    group.derived_subgroup()
}

pub fn is_metabelian(group: &CayleyGroup) -> bool {
    group.is_metabelian()
}

pub fn is_cyclic(group: &CayleyGroup) -> bool {
    group.is_cyclic()
}

pub fn element_order(group: &CayleyGroup, x: usize) -> usize {
    group.element_order(x)
}

#[cfg(test)]
mod tests {
    use super::constructors::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_bad_tables() {
        assert!(CayleyGroup::from_table(2, vec![0, 1, 1, 1]).is_err());
        assert!(CayleyGroup::from_table(2, vec![1, 0, 0, 1]).is_err());
        assert!(CayleyGroup::from_table(2, vec![0, 1, 1]).is_err());
        // A Latin square with identity that is not associative (order 5 loop).
        let loop5 = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        let err = CayleyGroup::from_table(5, loop5).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }

    #[test]
    fn centralizer_examples() {
        let d8 = dihedral(4).unwrap();
        assert_eq!(centralizer(&d8, 0).len(), 8);
        let s = 4; // first reflection in dih layout
        assert_eq!(d8.element_order(s), 2);
        let c = centralizer(&d8, s);
        assert_eq!(c.len(), 4);
        let z = d8.center();
        assert_eq!(z.len(), 2);
        assert!(z.elements().iter().all(|&x| c.contains(x)));
        assert!(c.contains(d8.mul(s, z.elements()[1])));

        let q8 = quaternion();
        let i = (0..8).find(|&x| q8.element_order(x) == 4).unwrap();
        let ci = centralizer(&q8, i);
        assert_eq!(ci.len(), 4);
        assert_eq!(ci, q8.cyclic_subgroup(i));
    }

    #[test]
    fn normality_examples() {
        let c6 = cyclic(6);
        assert!((0..6).all(|x| is_normal_cyclic(&c6, x)));
        let d8 = dihedral(4).unwrap();
        assert!(!is_normal_cyclic(&d8, 4));
        let q8 = quaternion();
        assert!((0..8).all(|x| is_normal_cyclic(&q8, x)));
        assert!(q8.is_dedekind());
        assert!(!d8.is_dedekind());
        assert!(cyclic(12).is_dedekind());
    }

    #[test]
    fn kernel_set_examples() {
        let q8 = quaternion();
        assert_eq!(kernel_set(&q8).elements.len(), 8);
        let d8 = dihedral(4).unwrap();
        let ks = kernel_set(&d8);
        assert_eq!(ks.elements, vec![0, 1, 2, 3]);
        assert!(ks.is_subgroup);
        let hol = metacyclic(5, 4, 2).unwrap();
        let ks = kernel_set(&hol);
        assert_eq!(ks.elements.len(), 5);
        assert!(ks.is_subgroup);
        assert!(ks.elements.iter().all(|&x| hol.element_order(x) != 2 && hol.element_order(x) != 4));
    }

    #[test]
    fn quotient_examples() {
        let d8 = dihedral(4).unwrap();
        let trivial = SubgroupHandle::new(&d8, vec![0]).unwrap();
        assert_eq!(quotient(&d8, &trivial).unwrap().group.order(), 8);

        for g in [dihedral(4).unwrap(), quaternion()] {
            let q = quotient(&g, &g.center()).unwrap().group;
            assert_eq!(q.order(), 4);
            assert!(q.is_abelian());
            assert!((0..4).all(|x| q.mul(x, x) == 0));
        }
        let s = d8.cyclic_subgroup(4);
        assert!(quotient(&d8, &s).is_err());
    }

    #[test]
    fn projection_is_a_homomorphism() {
        let g = symmetric(4);
        for n in g.normal_subgroups() {
            let q = g.quotient(&n).unwrap();
            assert_eq!(q.group.order() * n.len(), g.order());
            for a in 0..g.order() {
                for b in 0..g.order() {
                    assert_eq!(q.projection[g.mul(a, b)], q.group.mul(q.projection[a], q.projection[b]));
                }
            }
        }
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let orders: Vec<usize> = symmetric(4).normal_subgroups().iter().map(|h| h.len()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        let d8: Vec<usize> = dihedral(4).unwrap().normal_subgroups().iter().map(|h| h.len()).collect();
        assert_eq!(d8, vec![1, 2, 4, 4, 4, 8]);
    }

    #[test]
    fn derived_examples() {
        assert!(is_metabelian(&dihedral(4).unwrap()));
        assert!(is_metabelian(&cyclic(2)));
        assert!(!is_cyclic(&abelian(&[2, 2]).unwrap()));
        assert!(is_cyclic(&abelian(&[2, 3]).unwrap()));
        assert_eq!(symmetric(4).derived_length(), Some(3));
        assert!(!is_metabelian(&symmetric(4)));
        assert_eq!(alternating(5).derived_length(), None);
        assert_eq!(derived_subgroup(&symmetric(3)).len(), 3);
    }

    #[test]
    fn subgroup_handle_checks_closure() {
        let c6 = cyclic(6);
        assert!(SubgroupHandle::new(&c6, vec![0, 2, 4]).is_ok());
        assert!(SubgroupHandle::new(&c6, vec![0, 1]).is_err());
        assert!(SubgroupHandle::new(&c6, vec![2, 4]).is_err());
    }

    #[test]
    fn text_roundtrip_is_bit_exact() {
        for g in [quaternion(), symmetric(3), metacyclic(7, 3, 2).unwrap()] {
            let text = g.to_text();
            let back = CayleyGroup::from_text(&text).unwrap();
            assert_eq!(back.to_text(), text);
            assert_eq!(back.table(), g.table());
        }
        assert!(CayleyGroup::from_text("2\n0 1\n1 0\nextra\n").is_err());
        assert!(CayleyGroup::from_text("2\n0 1\n").is_err());
        assert!(CayleyGroup::from_text("2\n0  1\n1 0\n").is_err());
    }

    #[test]
    fn sampled_validation_above_limit() {
        // loop of order 5 times C_120: a Latin square with identity whose
        // associativity failures are dense enough for sampling to find.
        let loop5: [u32; 25] = [0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0];
        let c = cyclic(120);
        let n = 600;
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let (la, ca) = (a / 120, a % 120);
                let (lb, cb) = (b / 120, b % 120);
                table[a * n + b] = loop5[la * 5 + lb] * 120 + c.mul(ca, cb) as u32;
            }
        }
        assert!(CayleyGroup::from_table(n, table).is_err());
        assert!(CayleyGroup::from_table(n, cyclic(600).table().to_vec()).is_ok());
    }

    #[test]
    fn order_cap_from_env_parses() {
        assert_eq!(OrderCap::default().get(), 5000);
        assert!(OrderCap::new(10).check(11).is_err());
        assert!(OrderCap::new(10).check(10).is_ok());
    }

    proptest! {
        #[test]
        fn centralizer_contains_cyclic_and_center(n in 3usize..12, x in 0usize..24) {
            let g = dihedral(n).unwrap();
            let x = x % g.order();
            let c = g.centralizer(x);
            prop_assert!(g.cyclic_subgroup(x).elements().iter().all(|&y| c.contains(y)));
            prop_assert!(g.center().elements().iter().all(|&y| c.contains(y)));
            prop_assert_eq!(g.order() % c.len(), 0);
        }

        #[test]
        fn abelian_products_are_abelian(moduli in prop::collection::vec(1u64..6, 1..4)) {
            let g = abelian(&moduli).unwrap();
            prop_assert_eq!(g.order() as u64, moduli.iter().product::<u64>());
            prop_assert!(g.is_abelian());
            prop_assert!(g.is_dedekind());
        }
    }
}
