//! Algorithmic splitting lemma on jets.
//!
//! Iterated completion of squares brings a germ into the shape
//! `sum c_i z_i^2 + h(residual variables)` up to the requested jet degree.
//! Every substitution divides by unit constants only, so the computation is
//! exact over Q(i); square roots are never taken, which is why the quadratic
//! part is a diagonal form with arbitrary nonzero coefficients rather than a
//! literal sum of squares.  The classification only consumes the residual
//! part, which does not see the scaling.

use std::sync::Arc;

use crate::error::Error;
use crate::ring::{GaussianRational, Monomial, Poly, RingContext};
use crate::stdbasis::Dim;

use super::{milnor_number, Germ};

/// Result of splitting off the nondegenerate quadratic part.
#[derive(Clone, Debug)]
pub struct SplitOutcome {
    pub jet_degree: u32,
    /// `(variable index, coefficient)` pairs: the split part is
    /// `sum c_i z_i^2` in the original ring.
    pub quadratic: Vec<(usize, GaussianRational)>,
    /// Indices (in the original ring) of the variables the residual lives in.
    pub residual_vars: Vec<usize>,
    /// The residual germ in a ring of just the residual variables, with a
    /// zero quadratic part.  `None` when the corank is zero.
    pub residual: Option<Germ>,
    /// Recorded coordinate changes: applying these substitutions to the
    /// original germ in order reproduces `quadratic + residual` up to terms
    /// of degree > `jet_degree`.
    pub transform: Vec<Vec<Poly>>,
}

impl SplitOutcome {
    /// The residual polynomial re-embedded into the original ring.
    pub fn residual_in_ambient(&self, ring: &Arc<RingContext>) -> Result<Poly, Error> {
        match &self.residual {
            None => Ok(Poly::zero(ring)),
            Some(h) => {
                let map: Vec<usize> = self.residual_vars.clone();
                h.poly().mapped_to(ring, &map)
            }
        }
    }

    /// `sum c_i z_i^2` in the original ring.
    pub fn quadratic_in_ambient(&self, ring: &Arc<RingContext>) -> Poly {
        let n = ring.var_count();
        Poly::from_terms(
            ring,
            self.quadratic.iter().map(|(i, c)| {
                (Monomial::from_exps({
                    let mut e = vec![0u32; n];
                    e[*i] = 2;
                    e
                }), c.clone())
            }),
        )
    }
}

/// Replay a recorded substitution sequence in jet arithmetic.  Because the
/// recorded images all fix the origin, truncating after every step agrees
/// with the exact composition up to the jet degree, and it keeps the
/// intermediate degrees from compounding.
pub fn apply_transform(f: &Poly, steps: &[Vec<Poly>], jet_degree: u32) -> Result<Poly, Error> {
    let mut out = f.truncate_above(jet_degree);
    for images in steps {
        out = out.substitute_truncated(images, jet_degree)?;
    }
    Ok(out)
}

/// Split the germ into a diagonal quadratic form plus a residual in
/// corank-many variables, working exactly on the jet of degree `jet_degree`.
pub fn split_squares(
    germ: &Germ,
    jet_degree: u32,
    degree_cap: u32,
) -> Result<SplitOutcome, Error> {
    match milnor_number(germ, degree_cap)? {
        Dim::Finite(_) => {}
        Dim::Infinite => {
            return Err(Error::NotIsolated { detail: "cannot split a non-isolated germ".into() })
        }
    }
    split_squares_unchecked(germ, jet_degree)
}

/// The splitting iteration itself; assumes the caller has already verified
/// isolatedness.
pub(crate) fn split_squares_unchecked(germ: &Germ, jet_degree: u32) -> Result<SplitOutcome, Error> {
    let ring = germ.ring().clone();
    let n = ring.var_count();
    let identity: Vec<Poly> = (0..n).map(|i| Poly::variable(&ring, i).expect("in range")).collect();
    let mut f = germ.poly().truncate_above(jet_degree);
    let mut transform: Vec<Vec<Poly>> = Vec::new();
    let mut quadratic: Vec<(usize, GaussianRational)> = Vec::new();

    let apply = |f: &Poly, images: Vec<Poly>, transform: &mut Vec<Vec<Poly>>| -> Result<Poly, Error> {
        let out = f.substitute_truncated(&images, jet_degree)?;
        transform.push(images);
        Ok(out)
    };

    // Stage 1: diagonalize the degree-2 part, one pivot variable at a time.
    loop {
        let q2 = f.homogeneous_part(2);
        let split_set: Vec<usize> = quadratic.iter().map(|(i, _)| *i).collect();
        let square_coeff = |q2: &Poly, i: usize| {
            let mut e = vec![0u32; n];
            e[i] = 2;
            q2.coefficient(&Monomial::from_exps(e))
        };
        let pivot = (0..n)
            .filter(|i| !split_set.contains(i))
            .find(|&i| !square_coeff(&q2, i).is_zero());
        let pivot = match pivot {
            Some(i) => i,
            None => {
                // No usable square: look for a cross term among unsplit
                // variables and create one by a shear.
                let mut cross = None;
                'outer: for i in 0..n {
                    if split_set.contains(&i) {
                        continue;
                    }
                    for j in 0..n {
                        if j == i || split_set.contains(&j) {
                            continue;
                        }
                        let mut e = vec![0u32; n];
                        e[i] += 1;
                        e[j] += 1;
                        if !q2.coefficient(&Monomial::from_exps(e)).is_zero() {
                            cross = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let Some((i, j)) = cross else {
                    break; // degree-2 part of the unsplit variables is zero
                };
                // z_i -> z_i + z_j, flipping the sign if the squares cancel
                for sign in [1i64, -1] {
                    let mut images = identity.clone();
                    images[i] = &identity[i]
                        + &identity[j].scale(&GaussianRational::from_integer(sign));
                    let candidate = f.substitute_truncated(&images, jet_degree)?;
                    if !square_coeff(&candidate.homogeneous_part(2), j).is_zero() {
                        f = candidate;
                        transform.push(images);
                        break;
                    }
                }
                continue;
            }
        };
        let c = square_coeff(&q2, pivot);
        // kill the degree-2 cross terms of the pivot
        let mut cross_linear = Poly::zero(&ring);
        for j in 0..n {
            if j == pivot {
                continue;
            }
            let mut e = vec![0u32; n];
            e[pivot] += 1;
            e[j] += 1;
            let a = q2.coefficient(&Monomial::from_exps(e));
            if !a.is_zero() {
                cross_linear = &cross_linear + &identity[j].scale(&a);
            }
        }
        if !cross_linear.is_zero() {
            let half_inv = (&GaussianRational::from_integer(2) * &c)
                .inverse()
                .expect("pivot coefficient nonzero");
            let mut images = identity.clone();
            images[pivot] = &identity[pivot] - &cross_linear.scale(&half_inv);
            f = apply(&f, images, &mut transform)?;
        }
        quadratic.push((pivot, c));
    }

    // Stage 2: push every appearance of a split variable other than its pure
    // square above the jet degree.  Each step substitutes
    // z_i -> z_i - B/(2c) where z_i * B collects the offending terms, so the
    // offending order strictly increases; processing the lowest offending
    // order first makes the whole loop terminate.
    loop {
        let mut best: Option<(usize, u32, Poly)> = None;
        for (i, _) in &quadratic {
            let mut offending = Poly::zero(&ring);
            for (m, a) in f.terms() {
                if m.exp(*i) == 0 {
                    continue;
                }
                if m.pure_power() == Some((*i, 2)) {
                    continue;
                }
                let mut e = m.exps().to_vec();
                e[*i] -= 1;
                offending = &offending + &Poly::term(&ring, Monomial::from_exps(e), a.clone());
            }
            if offending.is_zero() {
                continue;
            }
            let ord = offending.order().unwrap() + 1;
            if best.as_ref().map_or(true, |(_, o, _)| ord < *o) {
                best = Some((*i, ord, offending));
            }
        }
        let Some((i, _, offending)) = best else {
            break;
        };
        let c = &quadratic.iter().find(|(v, _)| *v == i).expect("split var").1;
        let half_inv =
            (&GaussianRational::from_integer(2) * c).inverse().expect("nonzero");
        let b = offending.scale(&half_inv);
        debug_assert!(b.order().unwrap_or(2) >= 2, "correction must not disturb the linear part");
        let mut images = identity.clone();
        images[i] = &identity[i] - &b;
        f = apply(&f, images, &mut transform)?;
    }

    // Stage 3: read off the residual.
    quadratic.sort_by_key(|(i, _)| *i);
    let split_set: Vec<usize> = quadratic.iter().map(|(i, _)| *i).collect();
    let residual_vars: Vec<usize> = (0..n).filter(|i| !split_set.contains(i)).collect();
    let mut residual_ambient = f.clone();
    for (i, c) in &quadratic {
        let mut e = vec![0u32; n];
        e[*i] = 2;
        residual_ambient =
            &residual_ambient - &Poly::term(&ring, Monomial::from_exps(e), c.clone());
    }
    debug_assert!(
        residual_ambient
            .terms()
            .all(|(m, _)| split_set.iter().all(|&i| m.exp(i) == 0)),
        "residual must not involve split variables"
    );
    let residual = if residual_vars.is_empty() {
        None
    } else if residual_ambient.is_zero() {
        return Err(Error::NotIsolated {
            detail: "residual part vanishes to the jet degree".into(),
        });
    } else {
        let names: Vec<String> =
            residual_vars.iter().map(|&i| ring.var_name(i).to_string()).collect();
        let res_ring = RingContext::new(names)?;
        let mut map = vec![0usize; n];
        for (pos, &v) in residual_vars.iter().enumerate() {
            map[v] = pos;
        }
        Some(Germ::new(residual_ambient.mapped_to(&res_ring, &map)?)?)
    };

    Ok(SplitOutcome { jet_degree, quadratic, residual_vars, residual, transform })
}
