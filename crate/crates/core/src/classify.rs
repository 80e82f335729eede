//! The stable-equivalence decision procedure for isolated hypersurface
//! germs.
//!
//! Pipeline: validate and test isolatedness, check the parity of the Krull
//! dimensions, stabilize the lower-dimensional germ by squares in fresh
//! variables, compare the Tyurina-algebra invariant batteries, then look
//! for a positive witness (a shared ADE normal form, or a jet-level
//! coordinate change found by bounded search).  Every verdict carries a
//! machine-checkable certificate that [`verify_verdict`] replays through
//! the lower modules; when invariants match but no witness is found, the
//! procedure abstains with `Unknown` rather than guessing.

use crate::error::Error;
use crate::linalg::Matrix;
use crate::ring::{GaussianRational, Monomial, Poly};
use crate::singularity::{
    ade_recognize, compare_tyurina, determinacy_bound, tyurina_algebra, tyurina_number, AdeType,
    Germ, InvariantMismatch, TyurinaComparison,
};
use crate::stdbasis::Dim;

/// Resource limits for the decision procedure.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DecisionBudget {
    /// Degree cap handed to every standard-basis completion.
    pub degree_cap: u32,
    /// Number of linear coordinate-change candidates tried in the witness
    /// search.
    pub linear_candidates: usize,
}

impl Default for DecisionBudget {
    fn default() -> Self {
        DecisionBudget { degree_cap: 32, linear_candidates: 512 }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

/// A replayable positive witness.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EquivalenceWitness {
    /// After stabilization the two polynomials agree variable-by-variable.
    IdenticalAfterStabilization,
    /// Both stabilized germs recognize as the same ADE normal form.
    AdeMatch(AdeType),
    /// An explicit coordinate change: substituting `images` into the
    /// stabilized right germ reproduces the stabilized left germ up to the
    /// jet degree, which is at least both determinacy bounds.
    CoordinateChange { images: Vec<Poly>, jet_degree: u32 },
}

/// A sound negative certificate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Obstruction {
    /// The Krull dimensions differ by an odd number.
    Parity { left_dim: usize, right_dim: usize },
    /// An isomorphism invariant of the Tyurina algebras differs (after
    /// stabilizing the lower-dimensional side by `squares_added`).
    TyurinaMismatch { squares_added: usize, mismatch: InvariantMismatch },
    /// Part of the verdict vocabulary for manifests; the decision procedure
    /// itself rejects non-isolated inputs instead of emitting this.
    NotIsolated { side: Side },
}

/// Outcome of the decision procedure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EquivalenceVerdict {
    Equivalent { squares_added: usize, witness: EquivalenceWitness },
    NotEquivalent { certificate: Obstruction },
    /// Invariants match but no positive witness was found within the
    /// budget.  Sound abstention, never a misclassification.
    Unknown { squares_added: usize, tau: usize },
}

/// Krull dimension of the hypersurface ring: variable count minus one.
pub fn krull_dimension(germ: &Germ) -> usize {
    germ.var_count() - 1
}

/// Add squares of `squares` fresh variables (named `w1, w2, ...`, skipping
/// collisions) to the germ.
pub fn stabilize(germ: &Germ, squares: usize) -> Result<Germ, Error> {
    if squares == 0 {
        return Ok(germ.clone());
    }
    let names = germ.ring().fresh_names("w", squares);
    let ext = germ.ring().extended(&names)?;
    let mut f = germ.poly().lifted_to(&ext)?;
    for k in 0..squares {
        let v = Poly::variable(&ext, germ.var_count() + k)?;
        f = &f + &(&v * &v);
    }
    Germ::new(f)
}

/// The parity obstruction: equivalent dg singularity categories force the
/// Krull dimensions to agree mod 2.
pub fn parity_check(left_dim: usize, right_dim: usize) -> Option<Obstruction> {
    if left_dim.abs_diff(right_dim) % 2 == 1 {
        Some(Obstruction::Parity { left_dim, right_dim })
    } else {
        None
    }
}

fn require_isolated(germ: &Germ, side: Side, degree_cap: u32) -> Result<usize, Error> {
    match tyurina_number(germ, degree_cap)? {
        Dim::Finite(t) => Ok(t),
        Dim::Infinite => Err(Error::NotIsolated {
            detail: format!("{side} germ has an infinite Tyurina number"),
        }),
    }
}

/// Bring both germs to a common ring after stabilizing the
/// lower-dimensional one; the right germ is re-indexed positionally.
fn stabilized_pair(left: &Germ, right: &Germ, squares: usize) -> Result<(Germ, Germ), Error> {
    let (ls, rs) = if left.var_count() <= right.var_count() {
        (stabilize(left, squares)?, right.clone())
    } else {
        (left.clone(), stabilize(right, squares)?)
    };
    let map: Vec<usize> = (0..rs.var_count()).collect();
    let right_cmp = Germ::new(rs.poly().mapped_to(ls.ring(), &map)?)?;
    Ok((ls, right_cmp))
}

/// Decide whether the dg singularity categories of the two germs are
/// quasi-equivalent.  Both germs must have order at least two and be
/// isolated; violations are rejected as errors, never classified.
pub fn decide_dg_equivalence(
    left: &Germ,
    right: &Germ,
    budget: &DecisionBudget,
) -> Result<EquivalenceVerdict, Error> {
    left.require_order_two()?;
    right.require_order_two()?;
    require_isolated(left, Side::Left, budget.degree_cap)?;
    require_isolated(right, Side::Right, budget.degree_cap)?;

    let d = krull_dimension(left);
    let e = krull_dimension(right);
    if let Some(certificate) = parity_check(d, e) {
        return Ok(EquivalenceVerdict::NotEquivalent { certificate });
    }
    let squares = d.abs_diff(e);
    let (left_s, right_s) = stabilized_pair(left, right, squares)?;

    if left_s.poly() == right_s.poly() {
        return Ok(EquivalenceVerdict::Equivalent {
            squares_added: squares,
            witness: EquivalenceWitness::IdenticalAfterStabilization,
        });
    }

    let t_left = tyurina_algebra(&left_s, budget.degree_cap)?;
    let t_right = tyurina_algebra(&right_s, budget.degree_cap)?;
    if let TyurinaComparison::Distinct(mismatch) = compare_tyurina(&t_left, &t_right) {
        return Ok(EquivalenceVerdict::NotEquivalent {
            certificate: Obstruction::TyurinaMismatch { squares_added: squares, mismatch },
        });
    }

    let ade_left = ade_recognize(&left_s, budget.degree_cap)?;
    let ade_right = ade_recognize(&right_s, budget.degree_cap)?;
    match (ade_left, ade_right) {
        (Some(x), Some(y)) if x == y => {
            return Ok(EquivalenceVerdict::Equivalent {
                squares_added: squares,
                witness: EquivalenceWitness::AdeMatch(x),
            });
        }
        (Some(_), Some(_)) => {
            // matched invariants with different normal forms cannot happen;
            // abstain rather than trust either side
            return Ok(EquivalenceVerdict::Unknown { squares_added: squares, tau: t_left.tau() });
        }
        _ => {}
    }

    if let Some((images, jet_degree)) = jet_witness_search(&left_s, &right_s, budget)? {
        return Ok(EquivalenceVerdict::Equivalent {
            squares_added: squares,
            witness: EquivalenceWitness::CoordinateChange { images, jet_degree },
        });
    }

    Ok(EquivalenceVerdict::Unknown { squares_added: squares, tau: t_left.tau() })
}

/// Scalars used for the structured linear candidates of the witness search.
fn candidate_scalars() -> Vec<GaussianRational> {
    vec![
        GaussianRational::one(),
        GaussianRational::from_integer(-1),
        GaussianRational::i(),
        -GaussianRational::i(),
        GaussianRational::from_integer(2),
        GaussianRational::from_ratio(1, 2),
    ]
}

/// The `index`-th permutation of `0..n` in lexicographic order.
fn nth_permutation(n: usize, mut index: usize) -> Vec<usize> {
    let mut available: Vec<usize> = (0..n).collect();
    let mut factorial = vec![1usize; n + 1];
    for k in 1..=n {
        factorial[k] = factorial[k - 1].saturating_mul(k);
    }
    let mut out = Vec::with_capacity(n);
    for k in (1..=n).rev() {
        let f = factorial[k - 1];
        let pos = (index / f).min(available.len() - 1);
        index %= f;
        out.push(available.remove(pos));
    }
    out
}

/// Search for a coordinate change with `g(images) = f` up to the common
/// determinacy bound: scaled-permutation linear parts, then higher-order
/// corrections solved degree by degree.
fn jet_witness_search(
    f_germ: &Germ,
    g_germ: &Germ,
    budget: &DecisionBudget,
) -> Result<Option<(Vec<Poly>, u32)>, Error> {
    let Some(det_f) = determinacy_bound(f_germ, budget.degree_cap)? else {
        return Ok(None);
    };
    let Some(det_g) = determinacy_bound(g_germ, budget.degree_cap)? else {
        return Ok(None);
    };
    let jet = det_f.max(det_g);
    let ring = f_germ.ring();
    let n = ring.var_count();
    let scalars = candidate_scalars();
    let scalar_tuples = scalars.len().pow(n as u32);
    let mut factorial = 1usize;
    for k in 2..=n {
        factorial = factorial.saturating_mul(k);
    }
    let total = factorial.saturating_mul(scalar_tuples);
    let f = f_germ.poly().truncate_above(jet);
    for c in 0..budget.linear_candidates.min(total) {
        let perm = nth_permutation(n, c / scalar_tuples);
        let mut scalar_index = c % scalar_tuples;
        let mut images = Vec::with_capacity(n);
        for j in 0..n {
            let s = &scalars[scalar_index % scalars.len()];
            scalar_index /= scalars.len();
            images.push(Poly::variable(ring, perm[j])?.scale(s));
        }
        if let Some(witness) = lift_candidate(&f, g_germ.poly(), images, jet)? {
            return Ok(Some((witness, jet)));
        }
    }
    Ok(None)
}

/// Newton-style degree-by-degree lifting of a linear candidate.
fn lift_candidate(
    f: &Poly,
    g: &Poly,
    mut images: Vec<Poly>,
    jet: u32,
) -> Result<Option<Vec<Poly>>, Error> {
    let ring = f.ring();
    let n = ring.var_count();
    loop {
        let composed = g.substitute_truncated(&images, jet)?;
        let residual = &composed - f;
        let Some(delta) = residual.order() else {
            return Ok(Some(images)); // exact match on the jet
        };
        if delta > jet {
            return Ok(Some(images));
        }
        if delta <= 2 {
            return Ok(None); // the linear part already disagrees
        }
        // Solve sum_i (d_i g)(images) * psi_i = -residual_delta with psi_i
        // homogeneous of degree delta - ord_i, touching nothing below delta.
        let gradients: Vec<Poly> = (0..n)
            .map(|i| {
                g.partial_derivative(i)
                    .and_then(|d| d.substitute_truncated(&images, jet))
            })
            .collect::<Result<_, _>>()?;
        let target_monos: Vec<Monomial> = crate::oracle::monomials_below(n, delta + 1)
            .into_iter()
            .filter(|m| m.degree() == delta)
            .collect();
        let mut unknown_slots: Vec<(usize, Monomial)> = Vec::new();
        for (i, grad) in gradients.iter().enumerate() {
            let Some(ord) = grad.order() else { continue };
            if delta < ord + 2 {
                continue; // correction would touch the linear part
            }
            let psi_degree = delta - ord;
            for m in crate::oracle::monomials_below(n, psi_degree + 1) {
                if m.degree() == psi_degree {
                    unknown_slots.push((i, m));
                }
            }
        }
        if unknown_slots.is_empty() {
            return Ok(None);
        }
        let mut sys = Matrix::zeros(target_monos.len(), unknown_slots.len());
        for (col, (i, psi_mono)) in unknown_slots.iter().enumerate() {
            for (gm, gc) in gradients[*i].terms() {
                let prod = gm.mul(psi_mono);
                if prod.degree() == delta {
                    if let Ok(row) = target_monos.binary_search(&prod) {
                        sys.add_to(row, col, gc);
                    }
                }
            }
        }
        let rhs: Vec<GaussianRational> =
            target_monos.iter().map(|m| -&residual.coefficient(m)).collect();
        let Some(solution) = sys.solve(&rhs) else {
            return Ok(None);
        };
        for (col, (i, psi_mono)) in unknown_slots.iter().enumerate() {
            if !solution[col].is_zero() {
                let term = Poly::term(ring, psi_mono.clone(), solution[col].clone());
                images[*i] = &images[*i] + &term;
            }
        }
    }
}

/// Re-verify a verdict from scratch.  `Ok(())` means every part of the
/// certificate replays; `Err` describes the first discrepancy.
pub fn verify_verdict(
    left: &Germ,
    right: &Germ,
    verdict: &EquivalenceVerdict,
    budget: &DecisionBudget,
) -> Result<(), String> {
    let fail = |msg: String| -> Result<(), String> { Err(msg) };
    if left.require_order_two().is_err() || right.require_order_two().is_err() {
        return fail("verdict emitted for a germ of order < 2".into());
    }
    for (germ, side) in [(left, Side::Left), (right, Side::Right)] {
        if require_isolated(germ, side, budget.degree_cap).is_err() {
            return fail(format!("verdict emitted for a non-isolated {side} germ"));
        }
    }
    let d = krull_dimension(left);
    let e = krull_dimension(right);
    match verdict {
        EquivalenceVerdict::NotEquivalent {
            certificate: Obstruction::Parity { left_dim, right_dim },
        } => {
            if *left_dim != d || *right_dim != e {
                return fail(format!(
                    "parity certificate records dimensions ({left_dim}, {right_dim}), recomputed ({d}, {e})"
                ));
            }
            if d.abs_diff(e) % 2 != 1 {
                return fail("parity certificate for an even dimension gap".into());
            }
            Ok(())
        }
        EquivalenceVerdict::NotEquivalent {
            certificate: Obstruction::TyurinaMismatch { squares_added, mismatch },
        } => {
            if *squares_added != d.abs_diff(e) {
                return fail("recorded square count differs from the dimension gap".into());
            }
            let (ls, rs) = stabilized_pair(left, right, *squares_added)
                .map_err(|err| format!("stabilization replay failed: {err}"))?;
            let tl = tyurina_algebra(&ls, budget.degree_cap).map_err(|e| e.to_string())?;
            let tr = tyurina_algebra(&rs, budget.degree_cap).map_err(|e| e.to_string())?;
            match compare_tyurina(&tl, &tr) {
                TyurinaComparison::Distinct(found) if &found == mismatch => Ok(()),
                TyurinaComparison::Distinct(found) => fail(format!(
                    "recomputed mismatch {found} differs from recorded {mismatch}"
                )),
                TyurinaComparison::InvariantsMatch => {
                    fail("recorded mismatch but invariants agree on replay".into())
                }
            }
        }
        EquivalenceVerdict::NotEquivalent { certificate: Obstruction::NotIsolated { side } } => {
            fail(format!(
                "NotIsolated({side}) is never emitted by the decision procedure; nothing to replay"
            ))
        }
        EquivalenceVerdict::Equivalent { squares_added, witness } => {
            if *squares_added != d.abs_diff(e) {
                return fail("recorded square count differs from the dimension gap".into());
            }
            if d.abs_diff(e) % 2 != 0 {
                return fail("equivalence with an odd dimension gap".into());
            }
            let (ls, rs) = stabilized_pair(left, right, *squares_added)
                .map_err(|err| format!("stabilization replay failed: {err}"))?;
            match witness {
                EquivalenceWitness::IdenticalAfterStabilization => {
                    if ls.poly() == rs.poly() {
                        Ok(())
                    } else {
                        fail("stabilized germs are not identical".into())
                    }
                }
                EquivalenceWitness::AdeMatch(expected) => {
                    let al = ade_recognize(&ls, budget.degree_cap).map_err(|e| e.to_string())?;
                    let ar = ade_recognize(&rs, budget.degree_cap).map_err(|e| e.to_string())?;
                    if al == Some(*expected) && ar == Some(*expected) {
                        Ok(())
                    } else {
                        fail(format!(
                            "ADE replay gave ({al:?}, {ar:?}), certificate says {expected}"
                        ))
                    }
                }
                EquivalenceWitness::CoordinateChange { images, jet_degree } => {
                    for (det_side, germ) in [("left", &ls), ("right", &rs)] {
                        match determinacy_bound(germ, budget.degree_cap)
                            .map_err(|e| e.to_string())?
                        {
                            Some(k) if k <= *jet_degree => {}
                            Some(k) => {
                                return fail(format!(
                                    "jet degree {jet_degree} below {det_side} determinacy bound {k}"
                                ))
                            }
                            None => {
                                return fail(format!(
                                    "could not confirm the {det_side} determinacy bound"
                                ))
                            }
                        }
                    }
                    let n = ls.var_count();
                    if images.len() != n {
                        return fail("witness has the wrong number of images".into());
                    }
                    let mut linear = Matrix::zeros(n, n);
                    for (j, img) in images.iter().enumerate() {
                        if !img.constant_term().is_zero() {
                            return fail("witness image does not fix the origin".into());
                        }
                        for i in 0..n {
                            linear.set(i, j, img.coefficient(&Monomial::variable(i, n)));
                        }
                    }
                    if linear.rank() != n {
                        return fail("witness linear part is singular".into());
                    }
                    let composed = rs
                        .poly()
                        .substitute_truncated(images, *jet_degree)
                        .map_err(|e| e.to_string())?;
                    let defect = (&composed - &ls.poly().truncate_above(*jet_degree))
                        .truncate_above(*jet_degree);
                    if defect.is_zero() {
                        Ok(())
                    } else {
                        fail(format!("witness replay leaves the defect {defect}"))
                    }
                }
            }
        }
        EquivalenceVerdict::Unknown { squares_added, tau } => {
            if *squares_added != d.abs_diff(e) {
                return fail("recorded square count differs from the dimension gap".into());
            }
            let (ls, rs) = stabilized_pair(left, right, *squares_added)
                .map_err(|err| format!("stabilization replay failed: {err}"))?;
            let tl = tyurina_algebra(&ls, budget.degree_cap).map_err(|e| e.to_string())?;
            let tr = tyurina_algebra(&rs, budget.degree_cap).map_err(|e| e.to_string())?;
            if tl.tau() != *tau {
                return fail(format!("recorded tau {tau}, recomputed {}", tl.tau()));
            }
            match compare_tyurina(&tl, &tr) {
                TyurinaComparison::InvariantsMatch => Ok(()),
                TyurinaComparison::Distinct(m) => {
                    fail(format!("abstention despite the invariant mismatch {m}"))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::testutil::ipoly;
    use crate::ring::RingContext;
    use std::sync::Arc;

    fn germ(vars: Vec<&str>, terms: &[(i64, &[u32])]) -> Germ {
        let r: Arc<RingContext> = RingContext::new(vars).unwrap();
        Germ::new(ipoly(&r, terms)).unwrap()
    }

    fn budget() -> DecisionBudget {
        DecisionBudget::default()
    }

    #[test]
    fn krull_dimension_examples() {
        assert_eq!(krull_dimension(&germ(vec!["z0"], &[(1, &[3])])), 0);
        assert_eq!(
            krull_dimension(&germ(
                vec!["z0", "z1", "z2"],
                &[(1, &[3, 0, 0]), (1, &[0, 2, 0]), (1, &[0, 0, 2])]
            )),
            2
        );
    }

    #[test]
    fn stabilize_appends_fresh_squares() {
        let g = germ(vec!["z0"], &[(1, &[3])]);
        let s = stabilize(&g, 2).unwrap();
        assert_eq!(s.ring().var_names(), &["z0", "w1", "w2"]);
        assert_eq!(s.poly().to_string(), "z0^3 + w1^2 + w2^2");
        assert_eq!(stabilize(&g, 0).unwrap(), g);
        // tau is unchanged by adding squares
        assert_eq!(tyurina_number(&g, 32).unwrap(), tyurina_number(&s, 32).unwrap());
    }

    #[test]
    fn parity_examples() {
        assert!(parity_check(0, 2).is_none());
        assert!(matches!(parity_check(0, 1), Some(Obstruction::Parity { .. })));
        assert!(parity_check(3, 3).is_none());
    }

    #[test]
    fn knoerrer_pattern_is_equivalent() {
        let left = germ(vec!["z0"], &[(1, &[3])]);
        let right = germ(
            vec!["z0", "w1", "w2"],
            &[(1, &[3, 0, 0]), (1, &[0, 2, 0]), (1, &[0, 0, 2])],
        );
        let verdict = decide_dg_equivalence(&left, &right, &budget()).unwrap();
        match &verdict {
            EquivalenceVerdict::Equivalent { squares_added: 2, .. } => {}
            other => panic!("expected Equivalent with two squares, got {other:?}"),
        }
        verify_verdict(&left, &right, &verdict, &budget()).unwrap();
    }

    #[test]
    fn odd_gap_is_obstructed() {
        let left = germ(vec!["z0"], &[(1, &[3])]);
        let right = germ(vec!["z0", "w1"], &[(1, &[3, 0]), (1, &[0, 2])]);
        let verdict = decide_dg_equivalence(&left, &right, &budget()).unwrap();
        assert!(matches!(
            verdict,
            EquivalenceVerdict::NotEquivalent {
                certificate: Obstruction::Parity { left_dim: 0, right_dim: 1 }
            }
        ));
        verify_verdict(&left, &right, &verdict, &budget()).unwrap();
    }

    #[test]
    fn tyurina_mismatch_is_certified() {
        let left = germ(vec!["z0"], &[(1, &[3])]);
        let right = germ(vec!["z0"], &[(1, &[4])]);
        let verdict = decide_dg_equivalence(&left, &right, &budget()).unwrap();
        match &verdict {
            EquivalenceVerdict::NotEquivalent {
                certificate:
                    Obstruction::TyurinaMismatch {
                        mismatch: InvariantMismatch::Tau { left: 2, right: 3 },
                        ..
                    },
            } => {}
            other => panic!("expected a tau mismatch, got {other:?}"),
        }
        verify_verdict(&left, &right, &verdict, &budget()).unwrap();
    }

    #[test]
    fn morse_germs_match_by_normal_form() {
        let left = germ(vec!["z0", "z1"], &[(1, &[2, 0]), (1, &[0, 2])]);
        let right = germ(vec!["z0", "z1"], &[(1, &[1, 1])]);
        let verdict = decide_dg_equivalence(&left, &right, &budget()).unwrap();
        match &verdict {
            EquivalenceVerdict::Equivalent { squares_added: 0, witness } => {
                assert!(matches!(witness, EquivalenceWitness::AdeMatch(_)));
            }
            other => panic!("expected an ADE match, got {other:?}"),
        }
        verify_verdict(&left, &right, &verdict, &budget()).unwrap();
    }

    #[test]
    fn rejects_non_isolated_and_low_order() {
        let bad = germ(vec!["z0", "z1"], &[(1, &[2, 1])]);
        let good = germ(vec!["z0", "z1"], &[(1, &[3, 0]), (1, &[0, 2])]);
        assert!(matches!(
            decide_dg_equivalence(&bad, &good, &budget()),
            Err(Error::NotIsolated { .. })
        ));
        let linear = germ(vec!["z0"], &[(1, &[1])]);
        assert!(matches!(
            decide_dg_equivalence(&linear, &good, &budget()),
            Err(Error::OrderTooLow { .. })
        ));
    }

    #[test]
    fn reflexivity_and_stabilization_coherence() {
        let g = germ(vec!["z0", "z1"], &[(1, &[3, 0]), (1, &[0, 3])]);
        let self_verdict = decide_dg_equivalence(&g, &g, &budget()).unwrap();
        assert!(matches!(
            self_verdict,
            EquivalenceVerdict::Equivalent {
                squares_added: 0,
                witness: EquivalenceWitness::IdenticalAfterStabilization
            }
        ));
        let stab = stabilize(&g, 2).unwrap();
        let verdict = decide_dg_equivalence(&g, &stab, &budget()).unwrap();
        assert!(matches!(verdict, EquivalenceVerdict::Equivalent { squares_added: 2, .. }));
        let odd = stabilize(&g, 1).unwrap();
        assert!(matches!(
            decide_dg_equivalence(&g, &odd, &budget()).unwrap(),
            EquivalenceVerdict::NotEquivalent { certificate: Obstruction::Parity { .. } }
        ));
    }

    #[test]
    fn coordinate_change_witness_for_scaled_quartics() {
        // X_9 germs (corank 2, zero cubic part, so not ADE): z0^4 + z1^4 and
        // z0^4 + 16 z1^4 are related by scaling z1, found by the bounded
        // linear search.
        let left = germ(vec!["z0", "z1"], &[(1, &[4, 0]), (1, &[0, 4])]);
        let right = germ(vec!["z0", "z1"], &[(1, &[4, 0]), (16, &[0, 4])]);
        let verdict = decide_dg_equivalence(&left, &right, &budget()).unwrap();
        match &verdict {
            EquivalenceVerdict::Equivalent {
                squares_added: 0,
                witness: EquivalenceWitness::CoordinateChange { .. },
            } => {}
            other => panic!("expected a coordinate-change witness, got {other:?}"),
        }
        verify_verdict(&left, &right, &verdict, &budget()).unwrap();
    }

    #[test]
    fn abstains_rather_than_guessing() {
        // two X_9 family members with the same tau whose equivalence the
        // bounded search cannot settle
        let left = germ(vec!["z0", "z1"], &[(1, &[4, 0]), (1, &[0, 4])]);
        let right = germ(vec!["z0", "z1"], &[(1, &[4, 0]), (1, &[2, 2]), (1, &[0, 4])]);
        let verdict = decide_dg_equivalence(&left, &right, &budget()).unwrap();
        verify_verdict(&left, &right, &verdict, &budget()).unwrap();
        match verdict {
            EquivalenceVerdict::Unknown { .. } | EquivalenceVerdict::NotEquivalent { .. } => {}
            EquivalenceVerdict::Equivalent { witness, .. } => {
                // only acceptable with a replayable explicit witness
                assert!(matches!(witness, EquivalenceWitness::CoordinateChange { .. }));
            }
        }
    }

    #[test]
    fn symmetry_of_outcome_classes() {
        let pairs = [
            (germ(vec!["z0"], &[(1, &[3])]), germ(vec!["z0"], &[(1, &[4])])),
            (
                germ(vec!["z0"], &[(1, &[3])]),
                germ(vec!["z0", "w1"], &[(1, &[3, 0]), (1, &[0, 2])]),
            ),
            (
                germ(vec!["z0", "z1"], &[(1, &[2, 0]), (1, &[0, 2])]),
                germ(vec!["z0", "z1"], &[(1, &[1, 1])]),
            ),
        ];
        for (a, b) in pairs {
            let ab = decide_dg_equivalence(&a, &b, &budget()).unwrap();
            let ba = decide_dg_equivalence(&b, &a, &budget()).unwrap();
            let class = |v: &EquivalenceVerdict| match v {
                EquivalenceVerdict::Equivalent { .. } => 0,
                EquivalenceVerdict::NotEquivalent { .. } => 1,
                EquivalenceVerdict::Unknown { .. } => 2,
            };
            assert_eq!(class(&ab), class(&ba));
        }
    }
}
