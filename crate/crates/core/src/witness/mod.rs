//! Negativity witnesses: weighted targets with an exactly computed negative
//! homomorphism count, and the searches that find them.

mod matrix;
mod minimize;
mod paper;
mod parity;

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, WeightedGraph};
use crate::hom::{hom_count, restricted_hom_count, BlockConstraint};
use crate::structure::wl_partition;

pub use matrix::{enumerate_matrix_witness, DEFAULT_ENTRY_RANGE};
pub use minimize::{
    certify_candidate, full_polynomial_search, minimize_polynomial, restricted_witness_search,
    MinimizerConfig, CERTIFY_DENOMINATORS,
};
pub use paper::{build_paper_witness_h, check_g1, g1_hom_by_row_transfer, g1_report, paper_g1, G1Report};
pub use parity::{class_parity_certificate, degree_parity_certificate, odd_edge_certificate};

/// How a certificate was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessMethod {
    MatrixEnum,
    MinimizerFull,
    MinimizerRestricted,
    Manual,
    /// Closed-form ±1 target from a parity argument.
    Parity,
}

impl WitnessMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessMethod::MatrixEnum => "matrix-enum",
            WitnessMethod::MinimizerFull => "minimizer-full",
            WitnessMethod::MinimizerRestricted => "minimizer-restricted",
            WitnessMethod::Manual => "manual",
            WitnessMethod::Parity => "parity",
        }
    }
}

/// Exact proof that a graph is not positive.
///
/// With a restriction, only maps sending each vertex into its allowed set
/// are counted; the restriction must be a partition box constant on the
/// colour-refinement classes of the graph for the count to be evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub target: WeightedGraph,
    #[serde(with = "rational_string")]
    pub hom_value: BigRational,
    pub method: WitnessMethod,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restriction: Option<BlockConstraint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl WitnessCertificate {
    /// Builds a certificate by counting exactly; `None` unless negative.
    pub fn from_target(
        g: &SimpleGraph,
        target: WeightedGraph,
        restriction: Option<BlockConstraint>,
        method: WitnessMethod,
        seed: Option<u64>,
    ) -> Result<Option<Self>> {
        let hom_value = match &restriction {
            Some(b) => restricted_hom_count(g, &target, b)?,
            None => hom_count(g, &target)?,
        };
        if !hom_value.is_negative() {
            return Ok(None);
        }
        Ok(Some(WitnessCertificate {
            target,
            hom_value,
            method,
            restriction,
            seed,
        }))
    }

    /// Recounts from scratch and checks the stored value and its sign.
    pub fn verify(&self, g: &SimpleGraph) -> Result<()> {
        if !self.hom_value.is_negative() {
            return Err(Error::Verification(format!(
                "stored value {} is not negative",
                self.hom_value
            )));
        }
        let value = match &self.restriction {
            Some(b) => {
                b.check_against(g, self.target.m())?;
                if !b.is_partition_box() {
                    return Err(Error::Verification("restriction is not a partition box".into()));
                }
                if !b.is_constant_on(wl_partition(g).classes()) {
                    return Err(Error::Verification(
                        "restriction is not constant on colour-refinement classes".into(),
                    ));
                }
                restricted_hom_count(g, &self.target, b)?
            }
            None => hom_count(g, &self.target)?,
        };
        if value != self.hom_value {
            return Err(Error::Verification(format!(
                "recomputed value {value} differs from stored {}",
                self.hom_value
            )));
        }
        Ok(())
    }
}

pub(crate) mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        text.trim().parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn certificate_round_trip_and_tamper() {
        let k3 = SimpleGraph::complete(3).unwrap();
        let cert = WitnessCertificate::from_target(
            &k3,
            WeightedGraph::single_loop(q(-1)),
            None,
            WitnessMethod::Manual,
            None,
        )
        .unwrap()
        .unwrap();
        cert.verify(&k3).unwrap();
        let text = serde_json::to_string(&cert).unwrap();
        let back: WitnessCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
        let mut tampered = cert.clone();
        tampered.target.set(0, 0, q(-2));
        assert!(tampered.verify(&k3).is_err());
        let mut positive = cert;
        positive.hom_value = q(1);
        assert!(positive.verify(&k3).is_err());
    }

    #[test]
    fn positive_target_gives_no_certificate() {
        let c4 = SimpleGraph::cycle(4).unwrap();
        let none = WitnessCertificate::from_target(
            &c4,
            WeightedGraph::single_loop(q(-1)),
            None,
            WitnessMethod::Manual,
            None,
        )
        .unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn rejects_restrictions_that_split_classes() {
        // C4 is vertex-transitive; a box separating its vertices is not allowed
        let c4 = SimpleGraph::cycle(4).unwrap();
        let b = BlockConstraint::new(vec![vec![0], vec![1], vec![2], vec![2]]).unwrap();
        let mut h = WeightedGraph::ones(3, true);
        h.set(0, 1, q(-1));
        let cert = WitnessCertificate::from_target(&c4, h, Some(b), WitnessMethod::Parity, None)
            .unwrap()
            .expect("exactly one edge has weight -1");
        assert!(cert.verify(&c4).is_err());
    }
}
