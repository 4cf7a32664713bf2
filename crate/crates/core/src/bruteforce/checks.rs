//! Exhaustive property checks on Cayley-table groups.

use rayon::prelude::*;
use serde::Serialize;

use super::constructors::{dih, quaternion};
use super::{CayleyGroup, SubgroupHandle};
use crate::arith::prime_divisors;
use crate::error::{invalid, Result};

/// Centralizer statistics over elements generating non-normal cyclic subgroups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BciProfile {
    /// No element generates a non-normal cyclic subgroup.
    pub dedekind: bool,
    pub non_normal_count: usize,
    pub max_centralizer_order: usize,
    pub max_index: usize,
    /// Least element index attaining `max_centralizer_order`.
    pub centralizer_witness: Option<usize>,
    /// Least element index attaining `max_index`.
    pub index_witness: Option<usize>,
}

/// Max of `|C_G(x)|` and `|C_G(x) : <x>|` over all `x` with `<x>` not normal.
pub fn empirical_bci(group: &CayleyGroup) -> BciProfile {
    let rows: Vec<Option<(usize, usize)>> = (0..group.order())
        .into_par_iter()
        .map(|x| {
            if group.is_normal_cyclic(x) {
                None
            } else {
                let c = group.centralizer_order(x);
                Some((c, c / group.element_order(x)))
            }
        })
        .collect();
    let mut profile = BciProfile {
        dedekind: true,
        non_normal_count: 0,
        max_centralizer_order: 0,
        max_index: 0,
        centralizer_witness: None,
        index_witness: None,
    };
    for (x, row) in rows.into_iter().enumerate() {
        let Some((c, idx)) = row else { continue };
        profile.dedekind = false;
        profile.non_normal_count += 1;
        if c > profile.max_centralizer_order {
            profile.max_centralizer_order = c;
            profile.centralizer_witness = Some(x);
        }
        if idx > profile.max_index {
            profile.max_index = idx;
            profile.index_witness = Some(x);
        }
    }
    profile
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuotientBoundCheck {
    pub holds: bool,
    pub normal_order: usize,
    /// Elements `x` whose image generates a non-normal subgroup of `G/N`.
    pub checked: usize,
    /// Largest `|C(xN) : <xN>| / (|N| |C(x) : <x>|)` among the checked elements.
    pub worst_ratio: f64,
    /// The same inequality over every element of `G`, normal image or not.
    pub holds_for_all_elements: bool,
    /// First failing element, if any.
    pub counterexample: Option<usize>,
}

/// Compares centralizer indices in `G/N` with `|N|` times those in `G`.
///
/// The quantification runs over every `x` in `G` such that `<xN>` is not normal
/// in `G/N` (such an `x` never generates a normal subgroup of `G`), and the
/// bound is required for each of them.
pub fn check_quotient_bound(group: &CayleyGroup, normal: &SubgroupHandle) -> Result<QuotientBoundCheck> {
    let q = group.quotient(normal)?;
    let bar = &q.group;
    let bar_normal: Vec<bool> = (0..bar.order()).map(|y| bar.is_normal_cyclic(y)).collect();
    let bar_index: Vec<(usize, usize)> = (0..bar.order()).map(|y| (bar.centralizer_order(y), bar.element_order(y))).collect();
    let n = normal.len();

    let rows: Vec<(bool, bool, f64)> = (0..group.order())
        .into_par_iter()
        .map(|x| {
            let y = q.projection[x];
            let (cb, ob) = bar_index[y];
            let (c, o) = (group.centralizer_order(x), group.element_order(x));
            // cb / ob <= n * c / o, cross-multiplied
            let ok = cb * o <= n * c * ob;
            let ratio = (cb as f64 / ob as f64) / (n as f64 * c as f64 / o as f64);
            (!bar_normal[y], ok, ratio)
        })
        .collect();

    let mut report = QuotientBoundCheck {
        holds: true,
        normal_order: n,
        checked: 0,
        worst_ratio: 0.0,
        holds_for_all_elements: true,
        counterexample: None,
    };
    for (x, (quantified, ok, ratio)) in rows.into_iter().enumerate() {
        if !ok {
            report.holds_for_all_elements = false;
        }
        if quantified {
            report.checked += 1;
            report.worst_ratio = report.worst_ratio.max(ratio);
            if !ok {
                report.holds = false;
                report.counterexample.get_or_insert(x);
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DihedralCheck {
    pub order_a: usize,
    /// `A` elementary abelian, so `Dih(A)` is abelian and nothing is checked.
    pub skipped: bool,
    /// `|{a in A : a^2 = 1}|`.
    pub involution_count: usize,
    /// `<x>` is non-normal exactly for `x` outside `A`.
    pub normality_matches: bool,
    /// Every `x` outside `A` has `|C(x)| = 2 |{a : a^2 = 1}|`.
    pub centralizers_match: bool,
    pub counterexample: Option<usize>,
}

impl DihedralCheck {
    pub fn holds(&self) -> bool {
        self.skipped || (self.normality_matches && self.centralizers_match)
    }
}

/// Normality and centralizer orders in `Dih(A)`.
pub fn check_dihedral(a: &CayleyGroup) -> Result<DihedralCheck> {
    if !a.is_abelian() {
        return invalid("Dih(A) needs an abelian A");
    }
    let k = a.order();
    let involution_count = (0..k).filter(|&x| a.mul(x, x) == 0).count();
    let mut report = DihedralCheck {
        order_a: k,
        skipped: involution_count == k,
        involution_count,
        normality_matches: true,
        centralizers_match: true,
        counterexample: None,
    };
    if report.skipped {
        return Ok(report);
    }
    let g = dih(a)?;
    for x in 0..g.order() {
        let inside_a = x < k;
        if g.is_normal_cyclic(x) != inside_a {
            report.normality_matches = false;
            report.counterexample.get_or_insert(x);
        }
        if !inside_a && g.centralizer_order(x) != 2 * involution_count {
            report.centralizers_match = false;
            report.counterexample.get_or_insert(x);
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Q8AutReport {
    pub aut_count: usize,
    /// Automorphisms sending every element into its own cyclic subgroup,
    /// each as the image list of the element indices.
    pub power_automorphisms: Vec<Vec<usize>>,
    /// Distinct conjugation maps.
    pub inner_automorphisms: Vec<Vec<usize>>,
    pub power_equals_inner: bool,
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Scans all `8!` bijections of the quaternion group for automorphisms, then
/// sorts out the power and inner ones.
pub fn q8_automorphisms() -> Q8AutReport {
    let q = quaternion();
    let n = q.order();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut auts = Vec::new();
    loop {
        if (0..n).all(|a| (0..n).all(|b| perm[q.mul(a, b)] == q.mul(perm[a], perm[b]))) {
            auts.push(perm.clone());
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let mut power: Vec<Vec<usize>> = auts
        .iter()
        .filter(|s| (0..n).all(|x| q.cyclic_subgroup(x).contains(s[x])))
        .cloned()
        .collect();
    let mut inner: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|x| q.conjugate(x, g)).collect()).collect();
    power.sort();
    inner.sort();
    inner.dedup();
    Q8AutReport { aut_count: auts.len(), power_equals_inner: power == inner, power_automorphisms: power, inner_automorphisms: inner }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum PqOutcome {
    /// For every triple of prime divisors some element has order equal to
    /// the product of two of them. Witnesses are `(p, q, element)`.
    Holds { primes: Vec<u64>, witnesses: Vec<(u64, u64, usize)> },
    Fails { primes: Vec<u64>, triple: (u64, u64, u64) },
    NotApplicable { reason: String },
}

impl PqOutcome {
    pub fn is_applicable(&self) -> bool {
        !matches!(self, PqOutcome::NotApplicable { .. })
    }
}

/// For a finite soluble group with at least three prime divisors, looks for
/// an element of order `pq` inside every triple `{p, q, r}` of them.
pub fn check_pq_elements(group: &CayleyGroup) -> PqOutcome {
    let primes = prime_divisors(group.order() as u64);
    if primes.len() < 3 {
        return PqOutcome::NotApplicable { reason: format!("only {} prime divisors", primes.len()) };
    }
    if !group.is_soluble() {
        return PqOutcome::NotApplicable { reason: "group is not soluble".into() };
    }
    let orders: Vec<u64> = (0..group.order()).map(|x| group.element_order(x) as u64).collect();
    let find_pq = |p: u64, q: u64| orders.iter().position(|&o| o % (p * q) == 0).map(|x| group.power(x, (orders[x] / (p * q)) as usize));
    let mut witnesses = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        for (j, &q) in primes.iter().enumerate().skip(i + 1) {
            for &r in primes.iter().skip(j + 1) {
                let hit = [(p, q), (p, r), (q, r)].into_iter().find_map(|(a, b)| find_pq(a, b).map(|x| (a, b, x)));
                match hit {
                    Some(w) => witnesses.push(w),
                    None => return PqOutcome::Fails { primes, triple: (p, q, r) },
                }
            }
        }
    }
    witnesses.sort_unstable();
    witnesses.dedup();
    PqOutcome::Holds { primes, witnesses }
}

#[cfg(test)]
mod tests {
    use super::super::constructors::*;
    use super::*;

    #[test]
    fn bci_examples() {
        let d8 = dihedral(4).unwrap();
        let p = empirical_bci(&d8);
        assert_eq!((p.max_centralizer_order, p.max_index), (4, 2));
        assert_eq!(p.non_normal_count, 4);
        assert_eq!(p.centralizer_witness, Some(4));

        let q = empirical_bci(&quaternion());
        assert!(q.dedekind);
        assert_eq!(q.max_centralizer_order, 0);
        assert_eq!(q.centralizer_witness, None);

        let hol = empirical_bci(&metacyclic(5, 4, 2).unwrap());
        assert_eq!(hol.max_centralizer_order, 4);
    }

    #[test]
    fn quotient_bound_examples() {
        let d8 = dihedral(4).unwrap();
        let r = check_quotient_bound(&d8, &d8.center()).unwrap();
        assert!(r.holds && r.holds_for_all_elements);

        let hol = metacyclic(5, 4, 2).unwrap();
        let c5 = hol.generated_subgroup(&[1]);
        assert_eq!(c5.len(), 5);
        let r = check_quotient_bound(&hol, &c5).unwrap();
        assert!(r.holds);
        // G/N = C_4 is abelian: nothing is quantified.
        assert_eq!(r.checked, 0);

        let trivial = SubgroupHandle::new(&d8, vec![0]).unwrap();
        let r = check_quotient_bound(&d8, &trivial).unwrap();
        assert!(r.holds);
        assert_eq!(r.worst_ratio, 1.0);
        assert_eq!(r.checked, 4);
    }

    #[test]
    fn dihedral_cases() {
        let expect = [(vec![4u64], 4usize), (vec![9], 2), (vec![4, 2], 8)];
        for (moduli, c) in expect {
            let a = abelian(&moduli).unwrap();
            let r = check_dihedral(&a).unwrap();
            assert!(r.holds(), "{moduli:?}");
            assert_eq!(2 * r.involution_count, c);
        }
        assert!(check_dihedral(&abelian(&[2, 2]).unwrap()).unwrap().skipped);
    }

    #[test]
    fn q8_automorphism_counts() {
        let r = q8_automorphisms();
        assert_eq!(r.aut_count, 24);
        assert_eq!(r.power_automorphisms.len(), 4);
        assert_eq!(r.inner_automorphisms.len(), 4);
        assert!(r.power_equals_inner);
    }

    #[test]
    fn pq_element_examples() {
        assert!(matches!(check_pq_elements(&cyclic(30)), PqOutcome::Holds { .. }));
        let s3c5 = direct_product(&symmetric(3), &cyclic(5)).unwrap();
        match check_pq_elements(&s3c5) {
            PqOutcome::Holds { witnesses, .. } => {
                let (p, q, x) = witnesses[0];
                assert_eq!(s3c5.element_order(x) as u64, p * q);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(check_pq_elements(&alternating(5)), PqOutcome::NotApplicable { .. }));
        assert!(matches!(check_pq_elements(&cyclic(12)), PqOutcome::NotApplicable { .. }));
    }
}
