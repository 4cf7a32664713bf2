//! JSON spec documents and reports.

use serde::{Deserialize, Serialize};

use crate::abelian::AbelianPComponent;
use crate::dedekind::{DedekindSpec, Q8Element, TailRule};
use crate::error::{invalid, Error, Result};
use crate::extension::{classify, Certificate, Classification, FciGroupSpec, FiberCoords, FiberElement, TruncationReport};
use crate::power_aut::{PowerAutSpec, UnitLabel};

const TAIL_RULE: &str = "least_order_m";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dedekind: DedekindDoc,
    pub phi: PhiDoc,
    pub extension: ExtensionDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DedekindDoc {
    #[serde(default)]
    pub has_q8: bool,
    #[serde(default)]
    pub components: Vec<ComponentDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<TailRule>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    pub p: u64,
    #[serde(default)]
    pub cyclic: Vec<u32>,
    #[serde(default)]
    pub quasicyclic: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhiDoc {
    #[serde(default)]
    pub per_prime: Vec<UnitDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_rule: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitDoc {
    pub p: u64,
    pub unit: UnitValue,
}

/// An integer residue or one of `"teichmuller:t0"`, `"identity"`, `"inversion"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UnitValue {
    Residue(u64),
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionDoc {
    pub m: u64,
    #[serde(default = "FiberDoc::identity")]
    pub n: FiberDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FiberDoc {
    /// Only `"identity"` is accepted.
    Named(String),
    Element(FiberElementDoc),
}

impl FiberDoc {
    fn identity() -> Self {
        FiberDoc::Named("identity".into())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberElementDoc {
    #[serde(default = "one_label")]
    pub q8: String,
    #[serde(default)]
    pub abelian: Vec<FiberCoordsDoc>,
}

fn one_label() -> String {
    "1".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberCoordsDoc {
    pub p: u64,
    /// `[numerator, level]` per summand.
    pub coords: Vec<(u64, u32)>,
}

fn parse_unit(value: &UnitValue) -> Result<UnitLabel> {
    match value {
        UnitValue::Residue(t) => Ok(UnitLabel::Residue(*t)),
        UnitValue::Named(s) => match s.as_str() {
            "identity" => Ok(UnitLabel::Identity),
            "inversion" => Ok(UnitLabel::Inversion),
            other => match other.strip_prefix("teichmuller:").map(str::parse::<u64>) {
                Some(Ok(t0)) => Ok(UnitLabel::Teichmuller(t0)),
                _ => invalid(format!("unknown unit {other:?}")),
            },
        },
    }
}

fn unit_value(label: UnitLabel) -> UnitValue {
    match label {
        UnitLabel::Residue(t) => UnitValue::Residue(t),
        other => UnitValue::Named(other.to_string()),
    }
}

impl SpecDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("spec document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Schema-level conversion; cross-field constraints are left to the validators.
    pub fn to_spec(&self) -> Result<FciGroupSpec> {
        let components = self
            .dedekind
            .components
            .iter()
            .map(|c| AbelianPComponent::new(c.p, c.cyclic.clone(), c.quasicyclic))
            .collect::<Result<Vec<_>>>()?;
        let dedekind = DedekindSpec::new(self.dedekind.has_q8, components, self.dedekind.tail);

        let mut phi = PowerAutSpec::default();
        for u in &self.phi.per_prime {
            if phi.per_prime.insert(u.p, parse_unit(&u.unit)?).is_some() {
                return invalid(format!("prime {} has two units", u.p));
            }
        }
        phi.tail_rule = match self.phi.tail_rule.as_deref() {
            None => false,
            Some(TAIL_RULE) => true,
            Some(other) => return invalid(format!("unknown tail rule {other:?}")),
        };

        let n = match &self.extension.n {
            FiberDoc::Named(s) if s == "identity" => FiberElement::identity(),
            FiberDoc::Named(s) => return invalid(format!("unknown fiber element {s:?}")),
            FiberDoc::Element(e) => FiberElement {
                q8: Q8Element::parse(&e.q8)?,
                abelian: e.abelian.iter().map(|c| FiberCoords { p: c.p, coords: c.coords.clone() }).collect(),
            },
        };
        Ok(FciGroupSpec { dedekind, phi, m: self.extension.m, n })
    }

    pub fn from_spec(spec: &FciGroupSpec, name: Option<String>) -> Self {
        let d = &spec.dedekind;
        SpecDocument {
            name,
            dedekind: DedekindDoc {
                has_q8: d.has_q8,
                components: d
                    .components
                    .iter()
                    .map(|c| ComponentDoc { p: c.p(), cyclic: c.cyclic_exponents().to_vec(), quasicyclic: c.quasicyclic_count() })
                    .collect(),
                tail: d.tail,
            },
            phi: PhiDoc {
                per_prime: spec.phi.per_prime.iter().map(|(&p, &l)| UnitDoc { p, unit: unit_value(l) }).collect(),
                tail_rule: spec.phi.tail_rule.then(|| TAIL_RULE.to_string()),
            },
            extension: ExtensionDoc {
                m: spec.m,
                n: if spec.n.is_identity() {
                    FiberDoc::identity()
                } else {
                    FiberDoc::Element(FiberElementDoc {
                        q8: spec.n.q8.label().to_string(),
                        abelian: spec.n.abelian.iter().map(|c| FiberCoordsDoc { p: c.p, coords: c.coords.clone() }).collect(),
                    })
                },
            },
        }
    }
}

/// Machine-readable outcome of classifying (and optionally surveying) a spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub classification: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub truncations: Vec<TruncationReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
}

impl Report {
    pub fn from_classification(c: &Classification) -> Self {
        Report {
            classification: c.tag().to_string(),
            certificate: c.certificate().cloned(),
            reason: match c {
                Classification::NotFci { reason } => Some(reason.clone()),
                _ => None,
            },
            truncations: Vec::new(),
            violations: Vec::new(),
        }
    }

    pub fn invalid(violations: Vec<String>) -> Self {
        Report { classification: "invalid".into(), certificate: None, reason: None, truncations: Vec::new(), violations }
    }

    /// Classifies, turning constraint violations into an `invalid` report.
    /// Other errors (finite `D`, overflow) propagate.
    pub fn classify(spec: &FciGroupSpec) -> Result<Self> {
        match classify(spec) {
            Ok(c) => Ok(Self::from_classification(&c)),
            Err(Error::InvalidSpec(v)) => Ok(Self::invalid(v)),
            Err(e) => Err(e),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}
