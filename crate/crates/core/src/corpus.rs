//! Spec documents shipped with the crate.

use crate::document::SpecDocument;
use crate::error::{Error, Result};
use crate::extension::FciGroupSpec;

macro_rules! bundle {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../specs/", $name, ".json")))),*]
    };
}

/// `(name, json)` for every bundled spec, in a fixed order.
pub const BUNDLED: &[(&str, &str)] = bundle!(
    "z5_teichmuller2",
    "z5_teichmuller3",
    "z5_inversion",
    "z2_inversion",
    "z2_inversion_involution",
    "q8_z3_inversion",
    "c3_z7_order3",
    "c9_z7_order6",
    "tail_m4",
    "dedekind_z2",
    "not_fci_two_part",
    "not_fci_infinite_pi0",
    "finite_d",
    "invalid_q8_c4",
    "invalid_n_not_central",
    "invalid_n_not_fixed",
    "invalid_order_mismatch",
    "invalid_schema",
);

pub fn text(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn load(name: &str) -> Result<FciGroupSpec> {
    let t = text(name).ok_or_else(|| Error::InvalidArgument(format!("no bundled spec named {name:?}")))?;
    SpecDocument::parse(t)?.to_spec()
}

/// Bundled specs that parse and pass validation, in bundle order.
pub fn valid_specs() -> Vec<(&'static str, FciGroupSpec)> {
    BUNDLED
        .iter()
        .filter_map(|(name, _)| load(name).ok().map(|s| (*name, s)))
        .filter(|(_, s)| crate::extension::validate_extension(s).is_empty())
        .collect()
}

/// Valid bundled specs whose classification is FCI.
pub fn fci_specs() -> Vec<(&'static str, FciGroupSpec)> {
    valid_specs()
        .into_iter()
        .filter(|(_, s)| matches!(crate::extension::classify(s), Ok(crate::extension::Classification::Fci(_))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cardinal::Cardinal;
    use crate::extension::{classify, global_bound, validate_extension, Classification, ExtensionViolation};

    #[test]
    fn corpus_partitions_as_expected() {
        let fci: Vec<&str> = fci_specs().into_iter().map(|(n, _)| n).collect();
        assert_eq!(
            fci,
            vec![
                "z5_teichmuller2",
                "z5_teichmuller3",
                "z5_inversion",
                "z2_inversion",
                "z2_inversion_involution",
                "q8_z3_inversion",
                "c3_z7_order3",
                "c9_z7_order6",
                "tail_m4"
            ]
        );
        assert_eq!(classify(&load("dedekind_z2").unwrap()).unwrap(), Classification::Dedekind);
        for name in ["not_fci_two_part", "not_fci_infinite_pi0"] {
            assert!(matches!(classify(&load(name).unwrap()).unwrap(), Classification::NotFci { .. }), "{name}");
        }
        assert!(matches!(classify(&load("finite_d").unwrap()), Err(Error::Unsupported(_))));
        assert!(load("invalid_schema").is_err());
    }

    #[test]
    fn invalid_specs_name_their_violation() {
        let first = |name| validate_extension(&load(name).unwrap())[0].clone();
        assert_eq!(first("invalid_q8_c4").to_string(), "2-component not elementary abelian");
        assert_eq!(first("invalid_n_not_central"), ExtensionViolation::NotCentral);
        assert_eq!(first("invalid_n_not_fixed"), ExtensionViolation::NotFixed(5));
        assert!(matches!(first("invalid_order_mismatch"), ExtensionViolation::OrderMismatch { .. }));
    }

    #[test]
    fn bounds() {
        let expect = [
            ("z5_teichmuller2", 4),
            ("z5_inversion", 2),
            ("z2_inversion", 4),
            ("z2_inversion_involution", 4),
            ("q8_z3_inversion", 128),
            ("c3_z7_order3", 9),
            ("c9_z7_order6", 54),
            ("tail_m4", 12),
        ];
        for (name, b) in expect {
            assert_eq!(global_bound(&load(name).unwrap()).unwrap(), Cardinal::Finite(b), "{name}");
        }
    }
}
