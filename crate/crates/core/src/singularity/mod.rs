//! Invariants of isolated hypersurface germs.
//!
//! A [`Germ`] is a polynomial vanishing at the origin, considered up to
//! local coordinate changes.  This module computes the classical invariant
//! battery: Milnor and Tyurina numbers, the full Tyurina algebra with its
//! multiplication table, Hessian corank, finite-determinacy bounds, the
//! algorithmic splitting lemma and ADE normal-form recognition.

mod ade;
mod splitting;

pub use ade::{ade_recognize, AdeFamily, AdeType};
pub use splitting::{apply_transform, split_squares, SplitOutcome};

use std::sync::Arc;

use crate::error::Error;
use crate::linalg::Matrix;
use crate::ring::{GaussianRational, Monomial, Poly, RingContext};
use crate::stdbasis::{standard_basis, Dim, HilbertFunction, QuotientBasis, StandardBasis};

/// A nonzero polynomial of order at least one: a hypersurface germ at the
/// origin, represented up to finite determinacy.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Germ {
    poly: Poly,
}

impl Germ {
    pub fn new(poly: Poly) -> Result<Self, Error> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if poly.order() == Some(0) {
            return Err(Error::NotAGerm);
        }
        Ok(Germ { poly })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        self.poly.ring()
    }

    pub fn var_count(&self) -> usize {
        self.ring().var_count()
    }

    /// Classification entry points additionally require order >= 2 (no
    /// smooth direction hidden in the equation).
    pub fn require_order_two(&self) -> Result<(), Error> {
        let actual = self.poly.order().unwrap_or(0);
        if actual < 2 {
            return Err(Error::OrderTooLow { required: 2, actual });
        }
        Ok(())
    }
}

fn jacobian_generators(f: &Poly) -> Vec<Poly> {
    f.gradient().into_iter().filter(|p| !p.is_zero()).collect()
}

/// Standard basis of the Jacobian ideal `(d_0 f, ..., d_n f)`.
pub fn milnor_standard_basis(germ: &Germ, degree_cap: u32) -> Result<StandardBasis, Error> {
    standard_basis(&jacobian_generators(&germ.poly), degree_cap)
}

/// Standard basis of the Tyurina ideal `(f, d_0 f, ..., d_n f)`.
pub fn tyurina_standard_basis(germ: &Germ, degree_cap: u32) -> Result<StandardBasis, Error> {
    let mut gens = vec![germ.poly.clone()];
    gens.extend(jacobian_generators(&germ.poly));
    standard_basis(&gens, degree_cap)
}

/// Milnor number: dimension of `P/(d f)`.  `Infinite` certifies a
/// non-isolated critical point; an incomplete basis is an error, distinct
/// from `Infinite`.
pub fn milnor_number(germ: &Germ, degree_cap: u32) -> Result<Dim, Error> {
    milnor_standard_basis(germ, degree_cap)?.quotient_dimension()
}

/// Tyurina number: dimension of `P/(f, d f)`.
pub fn tyurina_number(germ: &Germ, degree_cap: u32) -> Result<Dim, Error> {
    tyurina_standard_basis(germ, degree_cap)?.quotient_dimension()
}

/// The Tyurina algebra `P/(f, d_0 f, ..., d_n f)` of an isolated germ with
/// its isomorphism-invariant battery.
#[derive(Clone, Debug)]
pub struct TyurinaAlgebra {
    sb: StandardBasis,
    basis: QuotientBasis,
    tau: usize,
    hilbert: HilbertFunction,
    /// `mult_table[i][j]` = coordinates of `[b_i * b_j]` in the basis.
    mult_table: Vec<Vec<Vec<GaussianRational>>>,
    socle_dim: usize,
    /// `m_power_dims[k-1] = dim(m^k * T)` for k = 1, 2, ... down to the last
    /// nonzero power.
    m_power_dims: Vec<usize>,
}

impl TyurinaAlgebra {
    pub fn standard_basis(&self) -> &StandardBasis {
        &self.sb
    }

    pub fn basis(&self) -> &QuotientBasis {
        &self.basis
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn hilbert_function(&self) -> &HilbertFunction {
        &self.hilbert
    }

    pub fn mult_table(&self) -> &[Vec<Vec<GaussianRational>>] {
        &self.mult_table
    }

    pub fn socle_dim(&self) -> usize {
        self.socle_dim
    }

    pub fn m_power_dims(&self) -> &[usize] {
        &self.m_power_dims
    }

    /// `dim(m^2 * T)`, one of the invariants compared by [`compare_tyurina`].
    pub fn m_square_dim(&self) -> usize {
        self.m_power_dims.get(1).copied().unwrap_or(0)
    }

    /// Product of two coordinate vectors through the multiplication table.
    pub fn multiply_coords(
        &self,
        x: &[GaussianRational],
        y: &[GaussianRational],
    ) -> Vec<GaussianRational> {
        let mut out = vec![GaussianRational::zero(); self.tau];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let scale = xi * yj;
                for (k, t) in self.mult_table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] = &out[k] + &(t * &scale);
                    }
                }
            }
        }
        out
    }
}

/// Compute the full Tyurina algebra.  Non-isolated germs are refused with
/// the certificate (the variable whose powers stay out of the leading
/// ideal); an exhausted degree cap is a budget error.
pub fn tyurina_algebra(germ: &Germ, degree_cap: u32) -> Result<TyurinaAlgebra, Error> {
    let sb = tyurina_standard_basis(germ, degree_cap)?;
    match sb.quotient_dimension()? {
        Dim::Finite(_) => {}
        Dim::Infinite => {
            let witness = sb
                .infinite_witness()
                .map(|v| germ.ring().var_name(v).to_string())
                .unwrap_or_default();
            return Err(Error::NotIsolated {
                detail: format!("no power of {witness} enters the leading ideal"),
            });
        }
    }
    let basis = sb.monomial_basis()?;
    let tau = basis.dimension();
    let hilbert = basis.hilbert_function();

    let mut mult_table = Vec::with_capacity(tau);
    for i in 0..tau {
        let mut row = Vec::with_capacity(tau);
        for j in 0..tau {
            let prod = Poly::term(
                sb.ring(),
                basis.monomials()[i].mul(&basis.monomials()[j]),
                GaussianRational::one(),
            );
            row.push(sb.coordinates(&prod, &basis)?);
        }
        mult_table.push(row);
    }

    let n = germ.var_count();
    let socle_dim = if tau == 0 {
        0
    } else {
        let mut rows = Vec::with_capacity(n * tau);
        for v in 0..n {
            // columns j: coordinates of [z_v * b_j]
            let mut per_var: Vec<Vec<GaussianRational>> = Vec::with_capacity(tau);
            for j in 0..tau {
                let prod = Poly::term(
                    sb.ring(),
                    Monomial::variable(v, n).mul(&basis.monomials()[j]),
                    GaussianRational::one(),
                );
                per_var.push(sb.coordinates(&prod, &basis)?);
            }
            for coord in 0..tau {
                rows.push((0..tau).map(|j| per_var[j][coord].clone()).collect());
            }
        }
        Matrix::from_rows(rows).nullspace().len()
    };

    let nilpotency = sb.certificate_degree().unwrap_or(0).max(if tau == 0 {
        0
    } else {
        basis.monomials().iter().map(Monomial::degree).max().unwrap_or(0) + 1
    });
    let mut m_power_dims = Vec::new();
    for k in 1..=nilpotency {
        let mut rows = Vec::new();
        for m in crate::oracle::monomials_below(n, nilpotency) {
            if m.degree() >= k {
                let coords =
                    sb.coordinates(&Poly::term(sb.ring(), m, GaussianRational::one()), &basis)?;
                rows.push(coords);
            }
        }
        let dim = crate::linalg::span_rank(&rows);
        if dim == 0 {
            break;
        }
        m_power_dims.push(dim);
    }

    Ok(TyurinaAlgebra { sb, basis, tau, hilbert, mult_table, socle_dim, m_power_dims })
}

/// Hessian corank: variable count minus the rank of the second-order part.
pub fn corank(germ: &Germ) -> usize {
    germ.var_count() - germ.poly.hessian_at_zero().rank()
}

/// Smallest `k <= degree_cap` such that every monomial of degree `k + 1`
/// lies in `m^2 * J(f)`: the classical sufficient criterion for
/// k-determinacy.  `None` when no such `k` exists within the cap.
pub fn determinacy_bound(germ: &Germ, degree_cap: u32) -> Result<Option<u32>, Error> {
    let n = germ.var_count();
    let mut gens = Vec::new();
    for a in 0..n {
        for b in a..n {
            let square = Monomial::variable(a, n).mul(&Monomial::variable(b, n));
            for d in jacobian_generators(&germ.poly) {
                let g = d.mul_term(&square, &GaussianRational::one());
                if !g.is_zero() {
                    gens.push(g);
                }
            }
        }
    }
    let sb = standard_basis(&gens, degree_cap)?;
    if !sb.is_complete() {
        return Err(Error::IncompleteBasis { degree_cap });
    }
    'next_k: for k in 1..=degree_cap {
        for m in monomials_of_degree(n, k + 1) {
            // fast reject via the leading ideal, then the real membership test
            if !sb.leading_monomials().iter().any(|lm| lm.divides(&m)) {
                continue 'next_k;
            }
            let p = Poly::term(germ.ring(), m, GaussianRational::one());
            if !sb.ideal_membership(&p)? {
                continue 'next_k;
            }
        }
        return Ok(Some(k));
    }
    Ok(None)
}

fn monomials_of_degree(var_count: usize, degree: u32) -> Vec<Monomial> {
    crate::oracle::monomials_below(var_count, degree + 1)
        .into_iter()
        .filter(|m| m.degree() == degree)
        .collect()
}

/// The invariant record surfaced by the CLI.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SingularityInvariants {
    pub mu: usize,
    pub tau: usize,
    pub corank: usize,
    pub determinacy: Option<u32>,
    pub ade: Option<AdeType>,
}

/// Compute the whole record; non-isolated germs are refused.
pub fn invariants(germ: &Germ, degree_cap: u32) -> Result<SingularityInvariants, Error> {
    let mu = match milnor_number(germ, degree_cap)? {
        Dim::Finite(m) => m,
        Dim::Infinite => {
            let sb = milnor_standard_basis(germ, degree_cap)?;
            let witness = sb
                .infinite_witness()
                .map(|v| germ.ring().var_name(v).to_string())
                .unwrap_or_default();
            return Err(Error::NotIsolated {
                detail: format!("Milnor number is infinite (witness variable {witness})"),
            });
        }
    };
    let tau = match tyurina_number(germ, degree_cap)? {
        Dim::Finite(t) => t,
        Dim::Infinite => {
            return Err(Error::NotIsolated { detail: "Tyurina number is infinite".into() })
        }
    };
    let determinacy = determinacy_bound(germ, degree_cap)?;
    let ade = ade_recognize(germ, degree_cap)?;
    Ok(SingularityInvariants { mu, tau, corank: corank(germ), determinacy, ade })
}

/// Outcome of comparing two Tyurina algebras through their isomorphism
/// invariants.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TyurinaComparison {
    /// Some invariant differs; isomorphic algebras share all of these, so
    /// this certificate is sound.
    Distinct(InvariantMismatch),
    /// All compared invariants agree.  This is NOT a proof of isomorphism.
    InvariantsMatch,
}

/// The first differing invariant, with both values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum InvariantMismatch {
    Tau { left: usize, right: usize },
    Hilbert { left: Vec<usize>, right: Vec<usize> },
    SocleDim { left: usize, right: usize },
    MSquareDim { left: usize, right: usize },
    MPowerDims { left: Vec<usize>, right: Vec<usize> },
}

impl std::fmt::Display for InvariantMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InvariantMismatch::Tau { left, right } => write!(f, "tau: {left} != {right}"),
            InvariantMismatch::Hilbert { left, right } => {
                write!(f, "hilbert function: {left:?} != {right:?}")
            }
            InvariantMismatch::SocleDim { left, right } => {
                write!(f, "socle dimension: {left} != {right}")
            }
            InvariantMismatch::MSquareDim { left, right } => {
                write!(f, "dim m^2*T: {left} != {right}")
            }
            InvariantMismatch::MPowerDims { left, right } => {
                write!(f, "m-power dimensions: {left:?} != {right:?}")
            }
        }
    }
}

/// Compare the invariant batteries of two Tyurina algebras.
pub fn compare_tyurina(a: &TyurinaAlgebra, b: &TyurinaAlgebra) -> TyurinaComparison {
    if a.tau != b.tau {
        return TyurinaComparison::Distinct(InvariantMismatch::Tau { left: a.tau, right: b.tau });
    }
    if a.hilbert != b.hilbert {
        return TyurinaComparison::Distinct(InvariantMismatch::Hilbert {
            left: a.hilbert.values().to_vec(),
            right: b.hilbert.values().to_vec(),
        });
    }
    if a.socle_dim != b.socle_dim {
        return TyurinaComparison::Distinct(InvariantMismatch::SocleDim {
            left: a.socle_dim,
            right: b.socle_dim,
        });
    }
    if a.m_square_dim() != b.m_square_dim() {
        return TyurinaComparison::Distinct(InvariantMismatch::MSquareDim {
            left: a.m_square_dim(),
            right: b.m_square_dim(),
        });
    }
    if a.m_power_dims != b.m_power_dims {
        return TyurinaComparison::Distinct(InvariantMismatch::MPowerDims {
            left: a.m_power_dims.clone(),
            right: b.m_power_dims.clone(),
        });
    }
    TyurinaComparison::InvariantsMatch
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::ring::testutil::ipoly;

    fn ring1() -> Arc<RingContext> {
        RingContext::new(vec!["z0"]).unwrap()
    }

    fn ring2() -> Arc<RingContext> {
        RingContext::new(vec!["z0", "z1"]).unwrap()
    }

    fn germ(ring: &Arc<RingContext>, terms: &[(i64, &[u32])]) -> Germ {
        Germ::new(ipoly(ring, terms)).unwrap()
    }

    #[test]
    fn germ_validation() {
        let r = ring1();
        assert!(Germ::new(Poly::zero(&r)).is_err());
        assert!(Germ::new(ipoly(&r, &[(1, &[0]), (1, &[1])])).is_err()); // constant term
        let g = germ(&r, &[(1, &[1])]);
        assert!(g.require_order_two().is_err());
    }

    #[test]
    fn milnor_examples() {
        let r1 = ring1();
        let g = germ(&r1, &[(1, &[3])]);
        assert_eq!(milnor_number(&g, 32).unwrap(), Dim::Finite(2));
        assert_eq!(oracle::milnor_via_jets(g.poly(), 10), 2);

        let r2 = ring2();
        let g2 = germ(&r2, &[(1, &[3, 0]), (1, &[0, 3])]);
        assert_eq!(milnor_number(&g2, 32).unwrap(), Dim::Finite(4));
        assert_eq!(oracle::milnor_via_jets(g2.poly(), 10), 4);

        let g3 = germ(&r2, &[(1, &[2, 1])]);
        assert_eq!(milnor_number(&g3, 32).unwrap(), Dim::Infinite);
    }

    #[test]
    fn tyurina_examples() {
        let r1 = ring1();
        assert_eq!(tyurina_number(&germ(&r1, &[(1, &[3])]), 32).unwrap(), Dim::Finite(2));
        assert_eq!(tyurina_number(&germ(&r1, &[(1, &[2])]), 32).unwrap(), Dim::Finite(1));
        let r2 = ring2();
        assert_eq!(tyurina_number(&germ(&r2, &[(1, &[2, 1])]), 32).unwrap(), Dim::Infinite);
    }

    #[test]
    fn tyurina_algebra_cusp() {
        let r = ring1();
        let t = tyurina_algebra(&germ(&r, &[(1, &[3])]), 32).unwrap();
        assert_eq!(t.tau(), 2);
        assert_eq!(t.hilbert_function().values(), &[1, 1]);
        assert_eq!(t.socle_dim(), 1);
        assert_eq!(t.m_power_dims(), &[1]);
        // [z]^2 = 0 in P/(z^2)
        assert!(t.mult_table()[1][1].iter().all(GaussianRational::is_zero));
    }

    #[test]
    fn tyurina_algebra_quartic() {
        let r = ring1();
        let t = tyurina_algebra(&germ(&r, &[(1, &[4])]), 32).unwrap();
        assert_eq!(t.tau(), 3);
        assert_eq!(t.hilbert_function().values(), &[1, 1, 1]);
        assert_eq!(t.socle_dim(), 1);
        assert_eq!(t.m_power_dims(), &[2, 1]);
    }

    #[test]
    fn tyurina_algebra_rejects_non_isolated() {
        let r = ring2();
        let err = tyurina_algebra(&germ(&r, &[(1, &[2, 1])]), 32);
        assert!(matches!(err, Err(Error::NotIsolated { .. })));
    }

    #[test]
    fn quasi_homogeneous_mu_equals_tau() {
        let r = ring2();
        for (a, b) in [(2u32, 2u32), (3, 2), (3, 3), (4, 3), (5, 2)] {
            let g = germ(&r, &[(1, &[a, 0]), (1, &[0, b])]);
            let mu = milnor_number(&g, 32).unwrap();
            let tau = tyurina_number(&g, 32).unwrap();
            assert_eq!(mu, tau, "z0^{a} + z1^{b}");
            assert_eq!(mu, Dim::Finite(((a - 1) * (b - 1)) as usize));
        }
    }

    #[test]
    fn mu_dominates_tau() {
        let r = ring2();
        // a non-quasihomogeneous example: T_{2,5} style deformation
        let g = germ(&r, &[(1, &[3, 0]), (1, &[0, 7]), (1, &[1, 5])]);
        let mu = milnor_number(&g, 32).unwrap().finite().unwrap();
        let tau = tyurina_number(&g, 32).unwrap().finite().unwrap();
        assert!(mu >= tau);
        assert_eq!(mu, oracle::milnor_via_jets(g.poly(), 12));
        assert_eq!(tau, oracle::tyurina_via_jets(g.poly(), 12));
    }

    #[test]
    fn corank_examples() {
        let r = ring2();
        assert_eq!(corank(&germ(&r, &[(1, &[3, 0]), (1, &[0, 2])])), 1);
        assert_eq!(corank(&germ(&r, &[(1, &[2, 0]), (1, &[0, 2])])), 0);
        assert_eq!(corank(&germ(&r, &[(1, &[3, 0]), (1, &[0, 3])])), 2);
    }

    #[test]
    fn determinacy_examples() {
        let r1 = ring1();
        assert_eq!(determinacy_bound(&germ(&r1, &[(1, &[3])]), 32).unwrap(), Some(3));
        assert_eq!(determinacy_bound(&germ(&r1, &[(1, &[2])]), 32).unwrap(), Some(2));
        let r2 = ring2();
        assert_eq!(
            determinacy_bound(&germ(&r2, &[(1, &[3, 0]), (1, &[0, 3])]), 32).unwrap(),
            Some(3)
        );
    }

    #[test]
    fn hilbert_matches_m_power_filtration() {
        // with a degree-compatible local order, h_k = dim m^k T - dim m^(k+1) T
        let r = ring2();
        for terms in [
            vec![(1, vec![3u32, 0u32]), (1, vec![0, 4])],
            vec![(1, vec![2, 1]), (1, vec![0, 3])],
            vec![(1, vec![3, 0]), (1, vec![1, 3])],
        ] {
            let tlist: Vec<(i64, &[u32])> =
                terms.iter().map(|(c, e)| (*c as i64, e.as_slice())).collect();
            let g = germ(&r, &tlist);
            let t = tyurina_algebra(&g, 32).unwrap();
            let h = t.hilbert_function().values();
            let mut dims = vec![t.tau()];
            dims.extend(t.m_power_dims().iter().copied());
            dims.push(0);
            for k in 0..h.len() {
                assert_eq!(h[k], dims[k] - dims[k + 1], "degree {k} of {:?}", g.poly());
            }
        }
    }

    #[test]
    fn mult_table_is_commutative_and_associative() {
        let r = ring2();
        let t = tyurina_algebra(&germ(&r, &[(1, &[2, 1]), (1, &[0, 3])]), 32).unwrap();
        let tau = t.tau();
        assert_eq!(tau, 4);
        for i in 0..tau {
            for j in 0..tau {
                assert_eq!(t.mult_table()[i][j], t.mult_table()[j][i]);
            }
        }
        let unit = |k: usize| {
            let mut v = vec![GaussianRational::zero(); tau];
            v[k] = GaussianRational::one();
            v
        };
        for i in 0..tau {
            for j in 0..tau {
                for k in 0..tau {
                    let left = t.multiply_coords(&t.multiply_coords(&unit(i), &unit(j)), &unit(k));
                    let right = t.multiply_coords(&unit(i), &t.multiply_coords(&unit(j), &unit(k)));
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn compare_distinguishes_and_matches() {
        let r = ring1();
        let t3 = tyurina_algebra(&germ(&r, &[(1, &[3])]), 32).unwrap();
        let t4 = tyurina_algebra(&germ(&r, &[(1, &[4])]), 32).unwrap();
        assert_eq!(
            compare_tyurina(&t3, &t4),
            TyurinaComparison::Distinct(InvariantMismatch::Tau { left: 2, right: 3 })
        );
        assert_eq!(compare_tyurina(&t3, &t3), TyurinaComparison::InvariantsMatch);

        // adding squares of two fresh variables leaves the battery unchanged
        let r3 = RingContext::new(vec!["z0", "u", "v"]).unwrap();
        let stabilized = germ(&r3, &[(1, &[3, 0, 0]), (1, &[0, 2, 0]), (1, &[0, 0, 2])]);
        let ts = tyurina_algebra(&stabilized, 32).unwrap();
        assert_eq!(compare_tyurina(&t3, &ts), TyurinaComparison::InvariantsMatch);
    }

    #[test]
    fn invariants_record() {
        let r = ring2();
        let inv = invariants(&germ(&r, &[(1, &[3, 0]), (1, &[0, 2])]), 32).unwrap();
        assert_eq!(inv.mu, 2);
        assert_eq!(inv.tau, 2);
        assert_eq!(inv.corank, 1);
        assert_eq!(inv.determinacy, Some(3));
        assert_eq!(inv.ade, Some(AdeType::new(AdeFamily::A, 2).unwrap()));
        assert!(matches!(
            invariants(&germ(&r, &[(1, &[2, 1])]), 32),
            Err(Error::NotIsolated { .. })
        ));
    }
}
