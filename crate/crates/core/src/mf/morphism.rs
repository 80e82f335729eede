use crate::error::Error;
use crate::ring::{check_same_ring, Poly};

use super::{MatrixFactorization, PolyMat};

/// A morphism of matrix factorizations: matrices `(u, v)` with
/// `v * A_src = A_tgt * u` and `u * B_src = B_tgt * v`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MfMorphism {
    source: MatrixFactorization,
    target: MatrixFactorization,
    u: PolyMat,
    v: PolyMat,
}

impl MfMorphism {
    pub fn new(
        source: MatrixFactorization,
        target: MatrixFactorization,
        u: PolyMat,
        v: PolyMat,
    ) -> Result<Self, Error> {
        check_same_ring(source.ring(), target.ring())?;
        if source.f() != target.f() {
            return Err(Error::InvalidMorphism {
                detail: format!("potentials differ: {} vs {}", source.f(), target.f()),
            });
        }
        let (s, t) = (source.size(), target.size());
        for (name, m) in [("u", &u), ("v", &v)] {
            if m.rows() != t || m.cols() != s {
                return Err(Error::ShapeMismatch {
                    detail: format!("{name} must be {t}x{s}, got {}x{}", m.rows(), m.cols()),
                });
            }
        }
        let lhs1 = v.mul(source.matrix_a())?;
        let rhs1 = target.matrix_a().mul(&u)?;
        if lhs1 != rhs1 {
            return Err(Error::InvalidMorphism { detail: "v*A_src != A_tgt*u".into() });
        }
        let lhs2 = u.mul(source.matrix_b())?;
        let rhs2 = target.matrix_b().mul(&v)?;
        if lhs2 != rhs2 {
            return Err(Error::InvalidMorphism { detail: "u*B_src != B_tgt*v".into() });
        }
        Ok(MfMorphism { source, target, u, v })
    }

    pub fn zero(source: MatrixFactorization, target: MatrixFactorization) -> Result<Self, Error> {
        let ring = source.ring().clone();
        let (s, t) = (source.size(), target.size());
        MfMorphism::new(source, target, PolyMat::zeros(&ring, t, s), PolyMat::zeros(&ring, t, s))
    }

    pub fn identity(m: &MatrixFactorization) -> Self {
        let ring = m.ring().clone();
        let n = m.size();
        MfMorphism {
            source: m.clone(),
            target: m.clone(),
            u: PolyMat::identity(&ring, n),
            v: PolyMat::identity(&ring, n),
        }
    }

    /// Multiplication by a polynomial as an endomorphism.
    pub fn scalar_endo(m: &MatrixFactorization, p: &Poly) -> Result<Self, Error> {
        let ring = m.ring().clone();
        let n = m.size();
        MfMorphism::new(
            m.clone(),
            m.clone(),
            PolyMat::scalar(&ring, n, p),
            PolyMat::scalar(&ring, n, p),
        )
    }

    pub fn source(&self) -> &MatrixFactorization {
        &self.source
    }

    pub fn target(&self) -> &MatrixFactorization {
        &self.target
    }

    pub fn matrix_u(&self) -> &PolyMat {
        &self.u
    }

    pub fn matrix_v(&self) -> &PolyMat {
        &self.v
    }

    /// Mapping cone: with source `(A, B)` and target `(A', B')`,
    /// `C_A = [[A', v], [0, -B]]` and `C_B = [[B', u], [0, -A]]`.
    ///
    /// The product identity follows from the morphism relations; a failure
    /// here would be an internal error, so the validation result is simply
    /// propagated.
    pub fn cone(&self) -> Result<MatrixFactorization, Error> {
        let ring = self.source.ring();
        let (s, t) = (self.source.size(), self.target.size());
        let c_a = PolyMat::block2x2(
            self.target.matrix_a(),
            &self.v,
            &PolyMat::zeros(ring, s, t),
            &self.source.matrix_b().neg(),
        )?;
        let c_b = PolyMat::block2x2(
            self.target.matrix_b(),
            &self.u,
            &PolyMat::zeros(ring, s, t),
            &self.source.matrix_a().neg(),
        )?;
        MatrixFactorization::validate(c_a, c_b, self.source.f().clone())
    }
}

/// A homotopy witness: matrices `(h, k)` with `u = k*A_src + B_tgt*h` and
/// `v = h*B_src + A_tgt*k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Homotopy {
    pub h: PolyMat,
    pub k: PolyMat,
}

impl Homotopy {
    /// Check the witness identities exactly.
    pub fn verifies(&self, phi: &MfMorphism) -> bool {
        let u_expected = match (
            self.k.mul(phi.source.matrix_a()),
            phi.target.matrix_b().mul(&self.h),
        ) {
            (Ok(x), Ok(y)) => match x.add(&y) {
                Ok(sum) => sum,
                Err(_) => return false,
            },
            _ => return false,
        };
        let v_expected = match (
            self.h.mul(phi.source.matrix_b()),
            phi.target.matrix_a().mul(&self.k),
        ) {
            (Ok(x), Ok(y)) => match x.add(&y) {
                Ok(sum) => sum,
                Err(_) => return false,
            },
            _ => return false,
        };
        u_expected == phi.u && v_expected == phi.v
    }
}
