//! Truncated stable-Hom computations.
//!
//! Morphism spaces and homotopy-trivial subspaces are finite-dimensional
//! once entries are restricted to polynomials of bounded degree, so both
//! are computed by exact linear algebra: the morphism space is the
//! nullspace of the commuting-square relations, the homotopy-trivial
//! subspace is the image of the boundary map on bounded homotopy pairs.
//! Stabilization is observed by comparing two consecutive degree bounds.

use crate::error::Error;
use crate::linalg::{span_rank, Matrix};
use crate::oracle::monomials_below;
use crate::ring::{GaussianRational, Monomial, Poly};
use crate::singularity::Germ;
use crate::stdbasis::Dim;

use super::{Homotopy, MatrixFactorization, MfMorphism, PolyMat};

/// Coordinates for a pair of `t x s` polynomial matrices with entries
/// supported on a fixed monomial list.
struct PairSpace {
    t: usize,
    s: usize,
    monos: Vec<Monomial>,
}

impl PairSpace {
    fn new(t: usize, s: usize, var_count: usize, max_degree: u32) -> Self {
        PairSpace { t, s, monos: monomials_below(var_count, max_degree + 1) }
    }

    fn dim(&self) -> usize {
        2 * self.t * self.s * self.monos.len()
    }

    fn index(&self, second: bool, i: usize, j: usize, mono: usize) -> usize {
        let block = if second { self.t * self.s * self.monos.len() } else { 0 };
        block + (i * self.s + j) * self.monos.len() + mono
    }

    fn mono_index(&self, m: &Monomial) -> Option<usize> {
        self.monos.binary_search(m).ok()
    }

    fn decode(&self, m: &MatrixFactorization, vector: &[GaussianRational]) -> (PolyMat, PolyMat) {
        let ring = m.ring();
        let mut first = PolyMat::zeros(ring, self.t, self.s);
        let mut second = PolyMat::zeros(ring, self.t, self.s);
        for (out, is_second) in [(&mut first, false), (&mut second, true)] {
            for i in 0..self.t {
                for j in 0..self.s {
                    let mut p = Poly::zero(ring);
                    for (mi, mono) in self.monos.iter().enumerate() {
                        let c = &vector[self.index(is_second, i, j, mi)];
                        if !c.is_zero() {
                            p = &p + &Poly::term(ring, mono.clone(), c.clone());
                        }
                    }
                    out.set(i, j, p);
                }
            }
        }
        (first, second)
    }

    /// Coefficient vector of a pair; `None` if an entry leaves the space.
    fn encode(&self, first: &PolyMat, second: &PolyMat) -> Option<Vec<GaussianRational>> {
        let mut v = vec![GaussianRational::zero(); self.dim()];
        for (mat, is_second) in [(first, false), (second, true)] {
            for i in 0..self.t {
                for j in 0..self.s {
                    for (mono, c) in mat.get(i, j).terms() {
                        let mi = self.mono_index(mono)?;
                        v[self.index(is_second, i, j, mi)] = c.clone();
                    }
                }
            }
        }
        Some(v)
    }
}

fn max_entry_degree(m: &MatrixFactorization, n: &MatrixFactorization) -> u32 {
    [m.matrix_a(), m.matrix_b(), n.matrix_a(), n.matrix_b()]
        .iter()
        .filter_map(|mat| mat.max_entry_degree())
        .max()
        .unwrap_or(0)
}

/// Equation layout: two relations, each a `t x s` matrix of polynomials
/// whose coefficients (over `eq_monos`) must vanish.
struct EqSpace {
    t: usize,
    s: usize,
    eq_monos: Vec<Monomial>,
}

impl EqSpace {
    fn rows(&self) -> usize {
        2 * self.t * self.s * self.eq_monos.len()
    }

    fn row(&self, relation: usize, i: usize, j: usize, mono: usize) -> usize {
        (relation * self.t * self.s + i * self.s + j) * self.eq_monos.len() + mono
    }
}

/// Scatter `multiplier * unknown_poly` into the equation rows of
/// `(relation, i, j)`, where the unknown is entry `(ui, uj)` of the
/// matrix selected by `second`.
#[allow(clippy::too_many_arguments)]
fn scatter(
    matrix: &mut Matrix,
    eq: &EqSpace,
    space: &PairSpace,
    relation: usize,
    i: usize,
    j: usize,
    second: bool,
    ui: usize,
    uj: usize,
    multiplier: &Poly,
    negate: bool,
) {
    for (nu, c) in multiplier.terms() {
        let c = if negate { -c } else { c.clone() };
        for (mi, mu) in space.monos.iter().enumerate() {
            let prod = mu.mul(nu);
            if let Ok(ei) = eq.eq_monos.binary_search(&prod) {
                matrix.add_to(eq.row(relation, i, j, ei), space.index(second, ui, uj, mi), &c);
            }
        }
    }
}

/// Basis of the space of morphisms `m -> n` with entries of degree at most
/// `degree_bound`, satisfying the commuting relations exactly.
fn morphism_space_basis(
    m: &MatrixFactorization,
    n: &MatrixFactorization,
    degree_bound: u32,
) -> Vec<(PolyMat, PolyMat)> {
    let (s, t) = (m.size(), n.size());
    let var_count = m.ring().var_count();
    let space = PairSpace::new(t, s, var_count, degree_bound); // (u, v)
    if space.dim() == 0 {
        return Vec::new();
    }
    let bound = degree_bound + max_entry_degree(m, n);
    let eq = EqSpace { t, s, eq_monos: monomials_below(var_count, bound + 1) };
    let mut sys = Matrix::zeros(eq.rows(), space.dim());
    for i in 0..t {
        for j in 0..s {
            // relation 0: sum_k v[i][k] A[k][j] - sum_k A'[i][k] u[k][j]
            for k in 0..s {
                scatter(&mut sys, &eq, &space, 0, i, j, true, i, k, m.matrix_a().get(k, j), false);
            }
            for k in 0..t {
                scatter(&mut sys, &eq, &space, 0, i, j, false, k, j, n.matrix_a().get(i, k), true);
            }
            // relation 1: sum_k u[i][k] B[k][j] - sum_k B'[i][k] v[k][j]
            for k in 0..s {
                scatter(&mut sys, &eq, &space, 1, i, j, false, i, k, m.matrix_b().get(k, j), false);
            }
            for k in 0..t {
                scatter(&mut sys, &eq, &space, 1, i, j, true, k, j, n.matrix_b().get(i, k), true);
            }
        }
    }
    sys.nullspace().into_iter().map(|vec| space.decode(m, &vec)).collect()
}

/// The boundary of a homotopy pair `(h, k)`:
/// `(k A + B' h, h B + A' k)` — always a morphism.
fn homotopy_boundary(
    m: &MatrixFactorization,
    n: &MatrixFactorization,
    h: &PolyMat,
    k: &PolyMat,
) -> (PolyMat, PolyMat) {
    let u = k
        .mul(m.matrix_a())
        .and_then(|x| x.add(&n.matrix_b().mul(h)?))
        .expect("shapes agree");
    let v = h
        .mul(m.matrix_b())
        .and_then(|x| x.add(&n.matrix_a().mul(k)?))
        .expect("shapes agree");
    (u, v)
}

/// dim of (bounded morphisms) / (boundaries of bounded homotopy pairs).
fn stable_quotient_dim(m: &MatrixFactorization, n: &MatrixFactorization, degree_bound: u32) -> usize {
    let (s, t) = (m.size(), n.size());
    if s * t == 0 {
        return 0;
    }
    let var_count = m.ring().var_count();
    let ring = m.ring();
    let big = PairSpace::new(t, s, var_count, degree_bound + max_entry_degree(m, n));
    let v_basis = morphism_space_basis(m, n, degree_bound);
    let v_vecs: Vec<Vec<GaussianRational>> = v_basis
        .iter()
        .map(|(u, v)| big.encode(u, v).expect("morphism fits the big space"))
        .collect();
    let hk = PairSpace::new(t, s, var_count, degree_bound);
    let mut u_vecs = Vec::new();
    for is_second in [false, true] {
        for i in 0..t {
            for j in 0..s {
                for mono in &hk.monos {
                    let mut h = PolyMat::zeros(ring, t, s);
                    let mut k = PolyMat::zeros(ring, t, s);
                    let single = Poly::term(ring, mono.clone(), GaussianRational::one());
                    if is_second {
                        k.set(i, j, single);
                    } else {
                        h.set(i, j, single);
                    }
                    let (bu, bv) = homotopy_boundary(m, n, &h, &k);
                    u_vecs.push(big.encode(&bu, &bv).expect("boundary fits the big space"));
                }
            }
        }
    }
    let dim_u = span_rank(&u_vecs);
    let mut all = v_vecs.clone();
    all.extend(u_vecs);
    let rank_sum = span_rank(&all);
    // dim V - dim(V meet U) = dim(V + U) - dim U
    rank_sum - dim_u
}

/// Stable Hom dimension at a degree bound, with the two-point stabilization
/// flag.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct StableHomDimension {
    pub dimension: usize,
    pub stabilized: bool,
    pub degree_bound: u32,
}

/// Dimension of `Hom(m, n)` modulo nullhomotopic morphisms, computed on
/// entries truncated at `degree_bound`.  Requires both objects over the
/// same isolated `f`; `degree_cap` bounds the isolatedness check.
pub fn stable_hom_dimension(
    m: &MatrixFactorization,
    n: &MatrixFactorization,
    degree_bound: u32,
    degree_cap: u32,
) -> Result<StableHomDimension, Error> {
    crate::ring::check_same_ring(m.ring(), n.ring())?;
    if m.f() != n.f() {
        return Err(Error::InvalidMorphism {
            detail: format!("different potentials: {} vs {}", m.f(), n.f()),
        });
    }
    let germ = Germ::new(m.f().clone())?;
    match crate::singularity::tyurina_number(&germ, degree_cap)? {
        Dim::Finite(_) => {}
        Dim::Infinite => {
            return Err(Error::NotIsolated {
                detail: "stable Hom spaces are only finite-dimensional for isolated germs".into(),
            })
        }
    }
    let q0 = stable_quotient_dim(m, n, degree_bound);
    let q1 = stable_quotient_dim(m, n, degree_bound + 1);
    Ok(StableHomDimension { dimension: q0, stabilized: q0 == q1, degree_bound })
}

/// Outcome of the nullhomotopy decision.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NullHomotopyAnswer {
    /// An exact, re-verified homotopy witness.
    Nullhomotopic(Homotopy),
    /// No bounded witness exists and the quotient dimensions stabilized, so
    /// the answer is sound.
    NotNullhomotopic,
}

fn try_homotopy_solve(phi: &MfMorphism, degree_bound: u32) -> Option<Homotopy> {
    let m = phi.source();
    let n = phi.target();
    let (s, t) = (m.size(), n.size());
    let var_count = m.ring().var_count();
    let space = PairSpace::new(t, s, var_count, degree_bound); // (h, k)
    let u_deg = phi.matrix_u().max_entry_degree().unwrap_or(0);
    let v_deg = phi.matrix_v().max_entry_degree().unwrap_or(0);
    let bound = (degree_bound + max_entry_degree(m, n)).max(u_deg).max(v_deg);
    let eq = EqSpace { t, s, eq_monos: monomials_below(var_count, bound + 1) };
    let mut sys = Matrix::zeros(eq.rows(), space.dim().max(1));
    let mut rhs = vec![GaussianRational::zero(); eq.rows()];
    for i in 0..t {
        for j in 0..s {
            // equation 0: sum_k k[i][k] A[k][j] + sum_k B'[i][k] h[k][j] = u[i][j]
            for k in 0..s {
                scatter(&mut sys, &eq, &space, 0, i, j, true, i, k, m.matrix_a().get(k, j), false);
            }
            for k in 0..t {
                scatter(&mut sys, &eq, &space, 0, i, j, false, k, j, n.matrix_b().get(i, k), false);
            }
            for (mono, c) in phi.matrix_u().get(i, j).terms() {
                let ei = eq.eq_monos.binary_search(mono).expect("bound covers u");
                rhs[eq.row(0, i, j, ei)] = c.clone();
            }
            // equation 1: sum_k h[i][k] B[k][j] + sum_k A'[i][k] k[k][j] = v[i][j]
            for k in 0..s {
                scatter(&mut sys, &eq, &space, 1, i, j, false, i, k, m.matrix_b().get(k, j), false);
            }
            for k in 0..t {
                scatter(&mut sys, &eq, &space, 1, i, j, true, k, j, n.matrix_a().get(i, k), false);
            }
            for (mono, c) in phi.matrix_v().get(i, j).terms() {
                let ei = eq.eq_monos.binary_search(mono).expect("bound covers v");
                rhs[eq.row(1, i, j, ei)] = c.clone();
            }
        }
    }
    let solution = sys.solve(&rhs)?;
    let (h, k) = space.decode(m, &solution);
    let witness = Homotopy { h, k };
    debug_assert!(witness.verifies(phi), "solver must return an exact witness");
    if witness.verifies(phi) {
        Some(witness)
    } else {
        None
    }
}

/// Decide whether `phi` is nullhomotopic with witnesses of entry degree at
/// most `degree_bound` (trying one degree higher as well).  A negative
/// answer is only certified when `f` is isolated and the stable quotient
/// dimension agrees at two consecutive bounds; otherwise the result is
/// flagged inconclusive.
pub fn is_nullhomotopic(
    phi: &MfMorphism,
    degree_bound: u32,
    degree_cap: u32,
) -> Result<NullHomotopyAnswer, Error> {
    if let Some(w) = try_homotopy_solve(phi, degree_bound) {
        return Ok(NullHomotopyAnswer::Nullhomotopic(w));
    }
    if let Some(w) = try_homotopy_solve(phi, degree_bound + 1) {
        return Ok(NullHomotopyAnswer::Nullhomotopic(w));
    }
    let m = phi.source();
    let isolated = Germ::new(m.f().clone()).and_then(|g| {
        crate::singularity::tyurina_number(&g, degree_cap)
    });
    let stabilized = match isolated {
        Ok(Dim::Finite(_)) => {
            let q0 = stable_quotient_dim(m, phi.target(), degree_bound);
            let q1 = stable_quotient_dim(m, phi.target(), degree_bound + 1);
            q0 == q1
        }
        _ => false,
    };
    if stabilized {
        Ok(NullHomotopyAnswer::NotNullhomotopic)
    } else {
        Err(Error::Inconclusive {
            detail: format!("no homotopy with entries of degree <= {degree_bound}, but the bound has not stabilized"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::testutil::ipoly;
    use crate::ring::RingContext;
    use std::sync::Arc;

    fn mf_zz() -> MatrixFactorization {
        let r: Arc<RingContext> = RingContext::new(vec!["z"]).unwrap();
        let z = ipoly(&r, &[(1, &[1])]);
        MatrixFactorization::validate(
            PolyMat::scalar(&r, 1, &z),
            PolyMat::scalar(&r, 1, &z),
            ipoly(&r, &[(1, &[2])]),
        )
        .unwrap()
    }

    #[test]
    fn endomorphisms_of_the_residue_object() {
        let m = mf_zz();
        let d = stable_hom_dimension(&m, &m, 4, 32).unwrap();
        assert_eq!(d.dimension, 1);
        assert!(d.stabilized);
    }

    #[test]
    fn maps_into_a_trivial_object_vanish() {
        let m = mf_zz();
        let r = m.ring().clone();
        let (t1, _) = MatrixFactorization::trivial_pair(m.f()).unwrap();
        let d = stable_hom_dimension(&m, &t1, 4, 32).unwrap();
        assert_eq!(d.dimension, 0);
        assert!(d.stabilized);
        let zero = MatrixFactorization::zero_object(ipoly(&r, &[(1, &[2])]));
        let dz = stable_hom_dimension(&zero, &zero, 4, 32).unwrap();
        assert_eq!(dz.dimension, 0);
    }

    #[test]
    fn shift_preserves_stable_hom() {
        let m = mf_zz();
        let k = m.knoerrer_squares("u", "v").unwrap();
        let a = stable_hom_dimension(&k, &k, 3, 32).unwrap();
        let b = stable_hom_dimension(&k.shift(), &k.shift(), 3, 32).unwrap();
        assert_eq!(a.dimension, b.dimension);
    }

    #[test]
    fn non_isolated_potential_is_refused() {
        let r: Arc<RingContext> = RingContext::new(vec!["z0", "z1"]).unwrap();
        let f = ipoly(&r, &[(1, &[2, 1])]);
        let m = MatrixFactorization::validate(
            PolyMat::scalar(&r, 1, &ipoly(&r, &[(1, &[1, 1])])),
            PolyMat::scalar(&r, 1, &ipoly(&r, &[(1, &[1, 0])])),
            f,
        )
        .unwrap();
        assert!(matches!(
            stable_hom_dimension(&m, &m, 3, 32),
            Err(Error::NotIsolated { .. })
        ));
    }

    #[test]
    fn zero_morphism_has_zero_witness() {
        let m = mf_zz();
        let phi = MfMorphism::zero(m.clone(), m.clone()).unwrap();
        match is_nullhomotopic(&phi, 2, 32).unwrap() {
            NullHomotopyAnswer::Nullhomotopic(w) => {
                assert!(w.h.is_zero());
                assert!(w.k.is_zero());
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn multiplication_by_z_is_nullhomotopic() {
        let m = mf_zz();
        let r = m.ring().clone();
        let phi = MfMorphism::scalar_endo(&m, &ipoly(&r, &[(1, &[1])])).unwrap();
        match is_nullhomotopic(&phi, 2, 32).unwrap() {
            NullHomotopyAnswer::Nullhomotopic(w) => assert!(w.verifies(&phi)),
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn identity_survives_in_the_stable_category() {
        let m = mf_zz();
        let phi = MfMorphism::identity(&m);
        assert_eq!(is_nullhomotopic(&phi, 4, 32).unwrap(), NullHomotopyAnswer::NotNullhomotopic);
    }
}
