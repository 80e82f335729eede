//! The JSON manifest format: the single machine-readable interchange
//! document of the CLI.
//!
//! Manifests round-trip bit-identically: struct field order is fixed,
//! coefficients print canonically (`a/b` in lowest terms, imaginary parts
//! as `c/d*i`), and optional fields are omitted rather than null.  Germ and
//! matrix payloads carry their ring; verdict payloads embed a ring per side
//! instead, so the top-level ring is omitted there.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use singeq_core::classify::{
    DecisionBudget, EquivalenceVerdict, EquivalenceWitness, Obstruction, Side,
};
use singeq_core::ring::{Poly, RingContext};
use singeq_core::singularity::{
    AdeFamily, AdeType, Germ, InvariantMismatch, SingularityInvariants, TyurinaAlgebra,
};
use singeq_core::mf::{MatrixFactorization, PolyMat, StableHomDimension};

use crate::parser::{parse_poly, ParseError};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct Manifest {
    pub schema_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingDesc>,
    pub payload: Payload,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct RingDesc {
    pub variables: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    Germ(String),
    Mf(MfDesc),
    Verdict(VerdictDesc),
    Invariants(InvariantsDesc),
    Tyurina(TyurinaDesc),
    Hom(HomDesc),
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct MfDesc {
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
    pub f: String,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct GermDesc {
    pub variables: Vec<String>,
    pub germ: String,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct VerdictDesc {
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub squares_added: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDesc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDesc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<usize>,
    pub left: GermDesc,
    pub right: GermDesc,
    pub degree_cap: u32,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
#[serde(rename_all = "snake_case")]
pub enum WitnessDesc {
    IdenticalAfterStabilization(bool),
    AdeMatch(AdeDesc),
    CoordinateChange { images: Vec<String>, jet_degree: u32 },
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct AdeDesc {
    pub family: String,
    pub index: u32,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
#[serde(rename_all = "snake_case")]
pub enum CertificateDesc {
    ParityObstruction { left_dim: usize, right_dim: usize },
    TyurinaInvariantMismatch { invariant: String, left: Vec<usize>, right: Vec<usize> },
    NotIsolated { side: String },
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct InvariantsDesc {
    pub mu: usize,
    pub tau: usize,
    pub corank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinacy: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ade: Option<AdeDesc>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct TyurinaDesc {
    pub tau: usize,
    pub hilbert: Vec<usize>,
    pub socle_dim: usize,
    pub m_power_dims: Vec<usize>,
    pub basis: Vec<String>,
    /// `mult_table[i][j]` lists the coordinates of `basis[i] * basis[j]`.
    pub mult_table: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct HomDesc {
    pub dimension: usize,
    pub stabilized: bool,
    pub degree_bound: u32,
}

impl Manifest {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("manifests always serialize")
    }

    pub fn from_json(text: &str) -> Result<Manifest, serde_json::Error> {
        serde_json::from_str(text)
    }
}

pub fn ade_desc(t: &AdeType) -> AdeDesc {
    AdeDesc { family: t.family().to_string(), index: t.index() }
}

pub fn ade_from_desc(d: &AdeDesc) -> Result<AdeType, String> {
    let family = match d.family.as_str() {
        "A" => AdeFamily::A,
        "D" => AdeFamily::D,
        "E" => AdeFamily::E,
        other => return Err(format!("unknown ADE family '{other}'")),
    };
    AdeType::new(family, d.index).map_err(|e| e.to_string())
}

pub fn germ_desc(germ: &Germ) -> GermDesc {
    GermDesc {
        variables: germ.ring().var_names().to_vec(),
        germ: germ.poly().to_string(),
    }
}

pub fn germ_from_desc(d: &GermDesc) -> Result<Germ, String> {
    let ring = RingContext::new(d.variables.clone()).map_err(|e| e.to_string())?;
    let poly = parse_poly(&d.germ, &ring).map_err(|e| e.to_string())?;
    Germ::new(poly).map_err(|e| e.to_string())
}

pub fn germ_manifest(germ: &Germ) -> Manifest {
    Manifest {
        schema_version: SCHEMA_VERSION.to_string(),
        ring: Some(RingDesc { variables: germ.ring().var_names().to_vec() }),
        payload: Payload::Germ(germ.poly().to_string()),
    }
}

pub fn mf_manifest(mf: &MatrixFactorization) -> Manifest {
    let matrix_strings = |m: &PolyMat| -> Vec<Vec<String>> {
        (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
            .collect()
    };
    Manifest {
        schema_version: SCHEMA_VERSION.to_string(),
        ring: Some(RingDesc { variables: mf.ring().var_names().to_vec() }),
        payload: Payload::Mf(MfDesc {
            a: matrix_strings(mf.matrix_a()),
            b: matrix_strings(mf.matrix_b()),
            f: mf.f().to_string(),
        }),
    }
}

pub fn invariants_manifest(germ: &Germ, inv: &SingularityInvariants) -> Manifest {
    Manifest {
        schema_version: SCHEMA_VERSION.to_string(),
        ring: Some(RingDesc { variables: germ.ring().var_names().to_vec() }),
        payload: Payload::Invariants(InvariantsDesc {
            mu: inv.mu,
            tau: inv.tau,
            corank: inv.corank,
            determinacy: inv.determinacy,
            ade: inv.ade.as_ref().map(ade_desc),
        }),
    }
}

pub fn tyurina_manifest(germ: &Germ, algebra: &TyurinaAlgebra) -> Manifest {
    let ring = germ.ring();
    let basis: Vec<String> = algebra
        .basis()
        .monomials()
        .iter()
        .map(|m| {
            Poly::term(ring, m.clone(), singeq_core::ring::GaussianRational::one()).to_string()
        })
        .collect();
    let mult_table: Vec<Vec<Vec<String>>> = algebra
        .mult_table()
        .iter()
        .map(|row| {
            row.iter()
                .map(|coords| coords.iter().map(|c| c.to_string()).collect())
                .collect()
        })
        .collect();
    Manifest {
        schema_version: SCHEMA_VERSION.to_string(),
        ring: Some(RingDesc { variables: ring.var_names().to_vec() }),
        payload: Payload::Tyurina(TyurinaDesc {
            tau: algebra.tau(),
            hilbert: algebra.hilbert_function().values().to_vec(),
            socle_dim: algebra.socle_dim(),
            m_power_dims: algebra.m_power_dims().to_vec(),
            basis,
            mult_table,
        }),
    }
}

pub fn hom_manifest(ring: &Arc<RingContext>, d: &StableHomDimension) -> Manifest {
    Manifest {
        schema_version: SCHEMA_VERSION.to_string(),
        ring: Some(RingDesc { variables: ring.var_names().to_vec() }),
        payload: Payload::Hom(HomDesc {
            dimension: d.dimension,
            stabilized: d.stabilized,
            degree_bound: d.degree_bound,
        }),
    }
}

fn mismatch_desc(m: &InvariantMismatch) -> CertificateDesc {
    let (invariant, left, right) = match m {
        InvariantMismatch::Tau { left, right } => ("tau", vec![*left], vec![*right]),
        InvariantMismatch::Hilbert { left, right } => ("hilbert", left.clone(), right.clone()),
        InvariantMismatch::SocleDim { left, right } => ("socle_dim", vec![*left], vec![*right]),
        InvariantMismatch::MSquareDim { left, right } => {
            ("m_square_dim", vec![*left], vec![*right])
        }
        InvariantMismatch::MPowerDims { left, right } => {
            ("m_power_dims", left.clone(), right.clone())
        }
    };
    CertificateDesc::TyurinaInvariantMismatch {
        invariant: invariant.to_string(),
        left,
        right,
    }
}

fn mismatch_from_desc(
    invariant: &str,
    left: &[usize],
    right: &[usize],
) -> Result<InvariantMismatch, String> {
    let scalar = |v: &[usize]| -> Result<usize, String> {
        if v.len() == 1 {
            Ok(v[0])
        } else {
            Err(format!("invariant '{invariant}' expects a single value"))
        }
    };
    Ok(match invariant {
        "tau" => InvariantMismatch::Tau { left: scalar(left)?, right: scalar(right)? },
        "hilbert" => InvariantMismatch::Hilbert { left: left.to_vec(), right: right.to_vec() },
        "socle_dim" => InvariantMismatch::SocleDim { left: scalar(left)?, right: scalar(right)? },
        "m_square_dim" => {
            InvariantMismatch::MSquareDim { left: scalar(left)?, right: scalar(right)? }
        }
        "m_power_dims" => {
            InvariantMismatch::MPowerDims { left: left.to_vec(), right: right.to_vec() }
        }
        other => return Err(format!("unknown invariant '{other}'")),
    })
}

pub fn verdict_manifest(
    left: &Germ,
    right: &Germ,
    verdict: &EquivalenceVerdict,
    budget: &DecisionBudget,
) -> Manifest {
    let desc = match verdict {
        EquivalenceVerdict::Equivalent { squares_added, witness } => VerdictDesc {
            outcome: "equivalent".into(),
            squares_added: Some(*squares_added),
            witness: Some(match witness {
                EquivalenceWitness::IdenticalAfterStabilization => {
                    WitnessDesc::IdenticalAfterStabilization(true)
                }
                EquivalenceWitness::AdeMatch(t) => WitnessDesc::AdeMatch(ade_desc(t)),
                EquivalenceWitness::CoordinateChange { images, jet_degree } => {
                    WitnessDesc::CoordinateChange {
                        images: images.iter().map(|p| p.to_string()).collect(),
                        jet_degree: *jet_degree,
                    }
                }
            }),
            certificate: None,
            tau: None,
            left: germ_desc(left),
            right: germ_desc(right),
            degree_cap: budget.degree_cap,
        },
        EquivalenceVerdict::NotEquivalent { certificate } => VerdictDesc {
            outcome: "not_equivalent".into(),
            squares_added: match certificate {
                Obstruction::TyurinaMismatch { squares_added, .. } => Some(*squares_added),
                _ => None,
            },
            witness: None,
            certificate: Some(match certificate {
                Obstruction::Parity { left_dim, right_dim } => {
                    CertificateDesc::ParityObstruction {
                        left_dim: *left_dim,
                        right_dim: *right_dim,
                    }
                }
                Obstruction::TyurinaMismatch { mismatch, .. } => mismatch_desc(mismatch),
                Obstruction::NotIsolated { side } => {
                    CertificateDesc::NotIsolated { side: side.to_string() }
                }
            }),
            tau: None,
            left: germ_desc(left),
            right: germ_desc(right),
            degree_cap: budget.degree_cap,
        },
        EquivalenceVerdict::Unknown { squares_added, tau } => VerdictDesc {
            outcome: "unknown".into(),
            squares_added: Some(*squares_added),
            witness: None,
            certificate: None,
            tau: Some(*tau),
            left: germ_desc(left),
            right: germ_desc(right),
            degree_cap: budget.degree_cap,
        },
    };
    Manifest {
        schema_version: SCHEMA_VERSION.to_string(),
        ring: None,
        payload: Payload::Verdict(desc),
    }
}

/// Reconstruct the germs and the verdict from a manifest, for replay.
pub fn verdict_from_manifest(
    manifest: &Manifest,
) -> Result<(Germ, Germ, EquivalenceVerdict, DecisionBudget), String> {
    let Payload::Verdict(desc) = &manifest.payload else {
        return Err("manifest payload is not a verdict".into());
    };
    let left = germ_from_desc(&desc.left)?;
    let right = germ_from_desc(&desc.right)?;
    let budget = DecisionBudget { degree_cap: desc.degree_cap, ..DecisionBudget::default() };
    let verdict = match desc.outcome.as_str() {
        "equivalent" => {
            let squares_added =
                desc.squares_added.ok_or("equivalent verdict without squares_added")?;
            let witness = match desc.witness.as_ref().ok_or("equivalent verdict without witness")? {
                WitnessDesc::IdenticalAfterStabilization(true) => {
                    EquivalenceWitness::IdenticalAfterStabilization
                }
                WitnessDesc::IdenticalAfterStabilization(false) => {
                    return Err("identical_after_stabilization must be true".into())
                }
                WitnessDesc::AdeMatch(d) => EquivalenceWitness::AdeMatch(ade_from_desc(d)?),
                WitnessDesc::CoordinateChange { images, jet_degree } => {
                    // images live in the stabilized comparison ring, which is
                    // recomputed deterministically
                    let squares = squares_added;
                    let stab = if left.var_count() <= right.var_count() {
                        singeq_core::classify::stabilize(&left, squares)
                    } else {
                        singeq_core::classify::stabilize(&left, 0)
                    }
                    .map_err(|e| e.to_string())?;
                    let parsed: Result<Vec<Poly>, ParseError> =
                        images.iter().map(|s| parse_poly(s, stab.ring())).collect();
                    EquivalenceWitness::CoordinateChange {
                        images: parsed.map_err(|e| e.to_string())?,
                        jet_degree: *jet_degree,
                    }
                }
            };
            EquivalenceVerdict::Equivalent { squares_added, witness }
        }
        "not_equivalent" => {
            let certificate = match desc
                .certificate
                .as_ref()
                .ok_or("not_equivalent verdict without certificate")?
            {
                CertificateDesc::ParityObstruction { left_dim, right_dim } => {
                    Obstruction::Parity { left_dim: *left_dim, right_dim: *right_dim }
                }
                CertificateDesc::TyurinaInvariantMismatch { invariant, left: l, right: r } => {
                    Obstruction::TyurinaMismatch {
                        squares_added: desc
                            .squares_added
                            .ok_or("mismatch certificate without squares_added")?,
                        mismatch: mismatch_from_desc(invariant, l, r)?,
                    }
                }
                CertificateDesc::NotIsolated { side } => Obstruction::NotIsolated {
                    side: match side.as_str() {
                        "left" => Side::Left,
                        "right" => Side::Right,
                        other => return Err(format!("unknown side '{other}'")),
                    },
                },
            };
            EquivalenceVerdict::NotEquivalent { certificate }
        }
        "unknown" => EquivalenceVerdict::Unknown {
            squares_added: desc.squares_added.ok_or("unknown verdict without squares_added")?,
            tau: desc.tau.ok_or("unknown verdict without tau")?,
        },
        other => return Err(format!("unknown outcome '{other}'")),
    };
    Ok((left, right, verdict, budget))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_roundtrip_is_bit_identical() {
        let text = r#"{"schema_version":"1","ring":{"variables":["z0","z1"]},"payload":{"germ":"z0^3 + z1^2"}}"#;
        let m = Manifest::from_json(text).unwrap();
        assert_eq!(m.to_json(), text);
        let again = Manifest::from_json(&m.to_json()).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn mf_manifest_roundtrip() {
        let text = r#"{"schema_version":"1","ring":{"variables":["z"]},"payload":{"mf":{"A":[["z"]],"B":[["z"]],"f":"z^2"}}}"#;
        let m = Manifest::from_json(text).unwrap();
        assert_eq!(m.to_json(), text);
    }

    #[test]
    fn verdict_conversion_roundtrip() {
        let r = RingContext::new(vec!["z0"]).unwrap();
        let left = Germ::new(parse_poly("z0^3", &r).unwrap()).unwrap();
        let right = Germ::new(parse_poly("z0^4", &r).unwrap()).unwrap();
        let verdict = EquivalenceVerdict::NotEquivalent {
            certificate: Obstruction::TyurinaMismatch {
                squares_added: 0,
                mismatch: InvariantMismatch::Tau { left: 2, right: 3 },
            },
        };
        let budget = DecisionBudget::default();
        let manifest = verdict_manifest(&left, &right, &verdict, &budget);
        let json = manifest.to_json();
        let back = Manifest::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);
        let (l2, r2, v2, _) = verdict_from_manifest(&back).unwrap();
        assert_eq!(l2, left);
        assert_eq!(r2, right);
        assert_eq!(v2, verdict);
    }
}
