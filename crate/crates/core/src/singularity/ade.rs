//! Recognition of the simple (ADE) singularity classes.
//!
//! After splitting off the quadratic part, the corank and Milnor number
//! pick the family: corank 0 is `A_1`, corank 1 is `A_mu`, and corank 2 is
//! settled by the multiplicity structure of the cubic part of the residual
//! (three distinct roots, a double root, or a triple root of the binary
//! cubic).  Anything else is returned as "not recognized" rather than
//! guessed.

use std::fmt;

use crate::error::Error;
use crate::ring::{GaussianRational, Monomial, Poly};
use crate::stdbasis::Dim;

use super::splitting::split_squares_unchecked;
use super::{corank, milnor_number, Germ};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AdeFamily {
    A,
    D,
    E,
}

impl fmt::Display for AdeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeFamily::A => write!(f, "A"),
            AdeFamily::D => write!(f, "D"),
            AdeFamily::E => write!(f, "E"),
        }
    }
}

/// One of the simple singularity classes: `A_k (k >= 1)`, `D_k (k >= 4)`,
/// `E_6`, `E_7`, `E_8`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AdeType {
    family: AdeFamily,
    index: u32,
}

impl AdeType {
    pub fn new(family: AdeFamily, index: u32) -> Result<Self, Error> {
        let ok = match family {
            AdeFamily::A => index >= 1,
            AdeFamily::D => index >= 4,
            AdeFamily::E => (6..=8).contains(&index),
        };
        if ok {
            Ok(AdeType { family, index })
        } else {
            Err(Error::InvalidRing { detail: format!("no class {family}{index}") })
        }
    }

    pub fn family(&self) -> AdeFamily {
        self.family
    }

    pub fn index(&self) -> u32 {
        self.index
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.index)
    }
}

/// Multiplicity structure of a nonzero binary cubic form over the complex
/// numbers, decided exactly in Q(i): the discriminant separates three
/// distinct roots, and a vanishing Hessian covariant detects a perfect cube.
enum CubicShape {
    ThreeDistinctRoots,
    DoubleRoot,
    TripleRoot,
}

fn binary_cubic_shape(cubic: &Poly) -> CubicShape {
    let coeff = |e0: u32, e1: u32| cubic.coefficient(&Monomial::from_exps(vec![e0, e1]));
    let (a, b, c, d) = (coeff(3, 0), coeff(2, 1), coeff(1, 2), coeff(0, 3));
    let int = GaussianRational::from_integer;
    let disc = &(&(&(&(&int(18) * &(&(&a * &b) * &(&c * &d)))
        - &(&int(4) * &(&(&b * &b) * &(&b * &d))))
        + &(&(&b * &b) * &(&c * &c)))
        - &(&int(4) * &(&a * &(&(&c * &c) * &c))))
        - &(&int(27) * &(&(&a * &a) * &(&d * &d)));
    if !disc.is_zero() {
        return CubicShape::ThreeDistinctRoots;
    }
    let fxx = cubic
        .partial_derivative(0)
        .and_then(|p| p.partial_derivative(0))
        .expect("two variables");
    let fyy = cubic
        .partial_derivative(1)
        .and_then(|p| p.partial_derivative(1))
        .expect("two variables");
    let fxy = cubic
        .partial_derivative(0)
        .and_then(|p| p.partial_derivative(1))
        .expect("two variables");
    let hessian = &(&fxx * &fyy) - &(&fxy * &fxy);
    if hessian.is_zero() {
        CubicShape::TripleRoot
    } else {
        CubicShape::DoubleRoot
    }
}

/// Try to recognize the germ as a simple singularity.  `Ok(None)` means
/// "outside the recognized classes" (corank >= 3, a degenerate corank-2
/// cubic, or an out-of-range Milnor number); it never misclassifies.
pub fn ade_recognize(germ: &Germ, degree_cap: u32) -> Result<Option<AdeType>, Error> {
    let mu = match milnor_number(germ, degree_cap)? {
        Dim::Finite(m) => m,
        Dim::Infinite => {
            return Err(Error::NotIsolated {
                detail: "cannot classify a non-isolated germ".into(),
            })
        }
    };
    if mu == 0 {
        return Ok(None); // smooth point
    }
    let jet_degree = mu as u32 + 2;
    let split = split_squares_unchecked(germ, jet_degree)?;
    debug_assert_eq!(split.residual_vars.len(), corank(germ));
    match split.residual_vars.len() {
        0 => Ok(if mu == 1 { Some(AdeType { family: AdeFamily::A, index: 1 }) } else { None }),
        1 => {
            let residual = split.residual.as_ref().expect("corank 1");
            // an isolated one-variable residual of order mu + 1 is A_mu
            if mu >= 2 && residual.poly().order() == Some(mu as u32 + 1) {
                Ok(Some(AdeType { family: AdeFamily::A, index: mu as u32 }))
            } else {
                Ok(None)
            }
        }
        2 => {
            let residual = split.residual.as_ref().expect("corank 2");
            let cubic = residual.poly().homogeneous_part(3);
            if cubic.is_zero() {
                return Ok(None);
            }
            Ok(match binary_cubic_shape(&cubic) {
                CubicShape::ThreeDistinctRoots if mu == 4 => {
                    Some(AdeType { family: AdeFamily::D, index: 4 })
                }
                CubicShape::DoubleRoot if mu >= 5 => {
                    Some(AdeType { family: AdeFamily::D, index: mu as u32 })
                }
                CubicShape::TripleRoot if (6..=8).contains(&mu) => {
                    Some(AdeType { family: AdeFamily::E, index: mu as u32 })
                }
                _ => None,
            })
        }
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::testutil::ipoly;
    use crate::ring::RingContext;
    use std::sync::Arc;

    fn germ(ring: &Arc<RingContext>, terms: &[(i64, &[u32])]) -> Germ {
        Germ::new(ipoly(ring, terms)).unwrap()
    }

    /// The ADE normal forms in two variables, as `(type, terms)`.
    pub(crate) fn normal_form_terms(family: AdeFamily, k: u32) -> Vec<(i64, Vec<u32>)> {
        match family {
            AdeFamily::A => vec![(1, vec![k + 1, 0]), (1, vec![0, 2])],
            AdeFamily::D => vec![(1, vec![2, 1]), (1, vec![0, k - 1])],
            AdeFamily::E => match k {
                6 => vec![(1, vec![3, 0]), (1, vec![0, 4])],
                7 => vec![(1, vec![3, 0]), (1, vec![1, 3])],
                8 => vec![(1, vec![3, 0]), (1, vec![0, 5])],
                _ => unreachable!(),
            },
        }
    }

    #[test]
    fn spec_examples() {
        let r = RingContext::new(vec!["z0", "z1"]).unwrap();
        // z0^3 + z1^2 -> A_2
        let a2 = ade_recognize(&germ(&r, &[(1, &[3, 0]), (1, &[0, 2])]), 32).unwrap();
        assert_eq!(a2, Some(AdeType::new(AdeFamily::A, 2).unwrap()));
        // z0^2 z1 + z1^3 -> D_4
        let d4 = ade_recognize(&germ(&r, &[(1, &[2, 1]), (1, &[0, 3])]), 32).unwrap();
        assert_eq!(d4, Some(AdeType::new(AdeFamily::D, 4).unwrap()));
        // z0^3 + z1^4 -> E_6
        let e6 = ade_recognize(&germ(&r, &[(1, &[3, 0]), (1, &[0, 4])]), 32).unwrap();
        assert_eq!(e6, Some(AdeType::new(AdeFamily::E, 6).unwrap()));
    }

    #[test]
    fn all_normal_forms_recognized() {
        let r = RingContext::new(vec!["z0", "z1"]).unwrap();
        let suite: Vec<(AdeFamily, u32)> = (1..=6)
            .map(|k| (AdeFamily::A, k))
            .chain((4..=6).map(|k| (AdeFamily::D, k)))
            .chain((6..=8).map(|k| (AdeFamily::E, k)))
            .collect();
        for (family, k) in suite {
            let terms = normal_form_terms(family, k);
            let tlist: Vec<(i64, &[u32])> =
                terms.iter().map(|(c, e)| (*c, e.as_slice())).collect();
            let g = germ(&r, &tlist);
            assert_eq!(
                ade_recognize(&g, 32).unwrap(),
                Some(AdeType::new(family, k).unwrap()),
                "{family}{k}"
            );

            // stability under adding squares in two extra variables
            let r4 = RingContext::new(vec!["z0", "z1", "u", "v"]).unwrap();
            let mut terms4: Vec<(i64, Vec<u32>)> = terms
                .iter()
                .map(|(c, e)| (*c, vec![e[0], e[1], 0, 0]))
                .collect();
            terms4.push((1, vec![0, 0, 2, 0]));
            terms4.push((1, vec![0, 0, 0, 2]));
            let tlist4: Vec<(i64, &[u32])> =
                terms4.iter().map(|(c, e)| (*c, e.as_slice())).collect();
            let g4 = germ(&r4, &tlist4);
            assert_eq!(
                ade_recognize(&g4, 32).unwrap(),
                Some(AdeType::new(family, k).unwrap()),
                "{family}{k} stabilized"
            );
        }
    }

    #[test]
    fn degenerate_cases_return_none() {
        let r = RingContext::new(vec!["z0", "z1"]).unwrap();
        // X_9: corank 2 with identically zero cubic part
        let x9 = germ(&r, &[(1, &[4, 0]), (1, &[0, 4])]);
        assert_eq!(ade_recognize(&x9, 32).unwrap(), None);
        // corank 3
        let r3 = RingContext::new(vec!["z0", "z1", "z2"]).unwrap();
        let g3 = germ(&r3, &[(1, &[3, 0, 0]), (1, &[0, 3, 0]), (1, &[0, 0, 3])]);
        assert_eq!(ade_recognize(&g3, 32).unwrap(), None);
        // non-isolated input is an error, not a verdict
        let bad = germ(&r, &[(1, &[2, 1])]);
        assert!(matches!(ade_recognize(&bad, 32), Err(Error::NotIsolated { .. })));
    }

    #[test]
    fn invalid_indices_rejected() {
        assert!(AdeType::new(AdeFamily::D, 3).is_err());
        assert!(AdeType::new(AdeFamily::E, 9).is_err());
        assert!(AdeType::new(AdeFamily::A, 0).is_err());
    }
}
