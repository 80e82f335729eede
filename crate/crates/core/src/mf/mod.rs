//! Matrix factorizations of a germ and the homotopy-category operations on
//! them.
//!
//! A [`MatrixFactorization`] is a pair of square polynomial matrices with
//! `A*B = B*A = f*I`, validated on construction and after every operation.
//! The size-zero pair is a first-class value (the zero object).  Shift swaps
//! the pair, cones come from validated morphisms, `knoerrer` passes to
//! `f + x*y` in two fresh variables, and `reduce` splits off trivial
//! summands by exact pivoting.

mod hom;
mod morphism;
mod polymat;
mod reduce;

pub use hom::{is_nullhomotopic, stable_hom_dimension, NullHomotopyAnswer, StableHomDimension};
pub use morphism::{Homotopy, MfMorphism};
pub use polymat::PolyMat;
pub use reduce::reduce;

use std::sync::Arc;

use crate::error::Error;
use crate::ring::{check_same_ring, GaussianRational, Poly, RingContext};

/// A pair of square matrices `(A, B)` with `A*B = B*A = f*I`, exactly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixFactorization {
    a: PolyMat,
    b: PolyMat,
    f: Poly,
}

impl MatrixFactorization {
    /// Construct after checking both products entry by entry; reports the
    /// first failing entry.
    pub fn validate(a: PolyMat, b: PolyMat, f: Poly) -> Result<Self, Error> {
        check_same_ring(a.ring(), b.ring())?;
        check_same_ring(a.ring(), f.ring())?;
        if a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows() {
            return Err(Error::ShapeMismatch {
                detail: format!(
                    "need equal square matrices, got {}x{} and {}x{}",
                    a.rows(),
                    a.cols(),
                    b.rows(),
                    b.cols()
                ),
            });
        }
        let n = a.rows();
        for (name, left, right) in [("A*B", &a, &b), ("B*A", &b, &a)] {
            let prod = left.mul(right)?;
            for i in 0..n {
                for j in 0..n {
                    let expected = if i == j { f.clone() } else { Poly::zero(f.ring()) };
                    if prod.get(i, j) != &expected {
                        return Err(Error::InvalidFactorization {
                            row: i,
                            col: j,
                            detail: format!("{name} entry is {}", prod.get(i, j)),
                        });
                    }
                }
            }
        }
        Ok(MatrixFactorization { a, b, f })
    }

    /// The zero object over `f`.
    pub fn zero_object(f: Poly) -> Self {
        let ring = f.ring().clone();
        MatrixFactorization { a: PolyMat::zeros(&ring, 0, 0), b: PolyMat::zeros(&ring, 0, 0), f }
    }

    pub fn matrix_a(&self) -> &PolyMat {
        &self.a
    }

    pub fn matrix_b(&self) -> &PolyMat {
        &self.b
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        self.f.ring()
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }

    /// Every entry of both matrices lies in the maximal ideal.
    pub fn is_reduced(&self) -> bool {
        self.a.all_entries_in_maximal_ideal() && self.b.all_entries_in_maximal_ideal()
    }

    /// `(B, A)`: the shift.  Applying it twice gives back the object on the
    /// nose.
    pub fn shift(&self) -> MatrixFactorization {
        MatrixFactorization { a: self.b.clone(), b: self.a.clone(), f: self.f.clone() }
    }

    /// Block-diagonal sum; requires the same `f`.
    pub fn direct_sum(&self, other: &MatrixFactorization) -> Result<MatrixFactorization, Error> {
        check_same_ring(self.ring(), other.ring())?;
        if self.f != other.f {
            return Err(Error::InvalidMorphism {
                detail: format!("direct sum over different potentials: {} vs {}", self.f, other.f),
            });
        }
        let ring = self.ring();
        let (s, t) = (self.size(), other.size());
        let a = PolyMat::block2x2(
            &self.a,
            &PolyMat::zeros(ring, s, t),
            &PolyMat::zeros(ring, t, s),
            &other.a,
        )?;
        let b = PolyMat::block2x2(
            &self.b,
            &PolyMat::zeros(ring, s, t),
            &PolyMat::zeros(ring, t, s),
            &other.b,
        )?;
        Ok(MatrixFactorization { a, b, f: self.f.clone() })
    }

    /// The pair `(1, f)` and `(f, 1)` of size-one trivial factorizations.
    pub fn trivial_pair(f: &Poly) -> Result<(MatrixFactorization, MatrixFactorization), Error> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let ring = f.ring();
        let one = PolyMat::identity(ring, 1);
        let ff = PolyMat::scalar(ring, 1, f);
        Ok((
            MatrixFactorization { a: one.clone(), b: ff.clone(), f: f.clone() },
            MatrixFactorization { a: ff, b: one, f: f.clone() },
        ))
    }

    /// Pass to `f + x*y` over the ring extended by two fresh variables:
    /// `K_A = [[A, -y*I], [x*I, B]]`, `K_B = [[B, y*I], [-x*I, A]]`.
    /// Doubles the size and preserves reducedness.
    pub fn knoerrer(&self, x_name: &str, y_name: &str) -> Result<MatrixFactorization, Error> {
        if x_name == y_name {
            return Err(Error::NameCollision { name: x_name.to_string() });
        }
        let ext = self.ring().extended(&[x_name.to_string(), y_name.to_string()])?;
        let x = Poly::variable(&ext, ext.var_count() - 2).expect("fresh");
        let y = Poly::variable(&ext, ext.var_count() - 1).expect("fresh");
        let f_ext = self.f.lifted_to(&ext)?;
        let new_f = &f_ext + &(&x * &y);
        self.doubled(&ext, &x, &y, new_f)
    }

    /// Pass to `f + u^2 + v^2`: the two-variable extension in square
    /// coordinates, using `u^2 + v^2 = (u + i*v)(u - i*v)` over Q(i).
    pub fn knoerrer_squares(&self, u_name: &str, v_name: &str) -> Result<MatrixFactorization, Error> {
        if u_name == v_name {
            return Err(Error::NameCollision { name: u_name.to_string() });
        }
        let ext = self.ring().extended(&[u_name.to_string(), v_name.to_string()])?;
        let u = Poly::variable(&ext, ext.var_count() - 2).expect("fresh");
        let v = Poly::variable(&ext, ext.var_count() - 1).expect("fresh");
        let iv = v.scale(&GaussianRational::i());
        let f_ext = self.f.lifted_to(&ext)?;
        let new_f = &(&f_ext + &(&u * &u)) + &(&v * &v);
        self.doubled(&ext, &(&u + &iv), &(&u - &iv), new_f)
    }

    /// Shared block construction for the two-variable extensions:
    /// the off-diagonal scalars `x`, `y` must satisfy `x*y = new_f - f`.
    fn doubled(
        &self,
        ext: &Arc<RingContext>,
        x: &Poly,
        y: &Poly,
        new_f: Poly,
    ) -> Result<MatrixFactorization, Error> {
        let s = self.size();
        let a = self.a.lifted_to(ext)?;
        let b = self.b.lifted_to(ext)?;
        let xi = PolyMat::scalar(ext, s, x);
        let yi = PolyMat::scalar(ext, s, y);
        let k_a = PolyMat::block2x2(&a, &yi.neg(), &xi, &b)?;
        let k_b = PolyMat::block2x2(&b, &yi, &xi.neg(), &a)?;
        MatrixFactorization::validate(k_a, k_b, new_f)
    }

    /// Simultaneous basis permutation: `perm0` reorders the target module
    /// basis (rows of A, columns of B), `perm1` the source module basis.
    pub fn permuted(&self, perm0: &[usize], perm1: &[usize]) -> MatrixFactorization {
        MatrixFactorization {
            a: self.a.permuted(perm0, perm1),
            b: self.b.permuted(perm1, perm0),
            f: self.f.clone(),
        }
    }

    /// Re-check `A*B = B*A = f*I`; used by tests asserting closure of every
    /// operation.
    pub fn revalidate(&self) -> Result<(), Error> {
        MatrixFactorization::validate(self.a.clone(), self.b.clone(), self.f.clone()).map(|_| ())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::testutil::ipoly;

    fn ring1() -> Arc<RingContext> {
        RingContext::new(vec!["z"]).unwrap()
    }

    fn mf_zz() -> MatrixFactorization {
        // (z, z) over z^2
        let r = ring1();
        let z = ipoly(&r, &[(1, &[1])]);
        let f = ipoly(&r, &[(1, &[2])]);
        MatrixFactorization::validate(
            PolyMat::scalar(&r, 1, &z),
            PolyMat::scalar(&r, 1, &z),
            f,
        )
        .unwrap()
    }

    #[test]
    fn validate_accepts_and_rejects() {
        let r = ring1();
        let z = ipoly(&r, &[(1, &[1])]);
        let f2 = ipoly(&r, &[(1, &[2])]);
        let f3 = ipoly(&r, &[(1, &[3])]);
        let m = MatrixFactorization::validate(
            PolyMat::scalar(&r, 1, &z),
            PolyMat::scalar(&r, 1, &z),
            f2.clone(),
        )
        .unwrap();
        assert_eq!(m.size(), 1);
        assert!(m.is_reduced());
        let err = MatrixFactorization::validate(
            PolyMat::scalar(&r, 1, &z),
            PolyMat::scalar(&r, 1, &z),
            f3,
        );
        assert!(matches!(err, Err(Error::InvalidFactorization { row: 0, col: 0, .. })));
        // trivial factorization is valid but not reduced
        let (t1, t2) = MatrixFactorization::trivial_pair(&f2).unwrap();
        assert!(!t1.is_reduced());
        assert!(!t2.is_reduced());
        assert!(MatrixFactorization::trivial_pair(&Poly::zero(&r)).is_err());
    }

    #[test]
    fn shift_is_an_involution() {
        let m = mf_zz();
        assert_eq!(m.shift().shift(), m);
        let r = ring1();
        let z = ipoly(&r, &[(1, &[1])]);
        let z2 = ipoly(&r, &[(1, &[2])]);
        let f3 = ipoly(&r, &[(1, &[3])]);
        let m2 = MatrixFactorization::validate(
            PolyMat::scalar(&r, 1, &z),
            PolyMat::scalar(&r, 1, &z2),
            f3,
        )
        .unwrap();
        let shifted = m2.shift();
        assert_eq!(shifted.matrix_a().get(0, 0), &z2);
        assert_eq!(shifted.matrix_b().get(0, 0), &z);
        shifted.revalidate().unwrap();
    }

    #[test]
    fn direct_sum_and_zero_object() {
        let m = mf_zz();
        let sum = m.direct_sum(&m).unwrap();
        assert_eq!(sum.size(), 2);
        sum.revalidate().unwrap();
        let zero = MatrixFactorization::zero_object(m.f().clone());
        assert_eq!(m.direct_sum(&zero).unwrap().size(), 1);
        assert_eq!(zero.direct_sum(&zero).unwrap().size(), 0);
        zero.revalidate().unwrap();
        // mismatched potentials
        let r = ring1();
        let other = MatrixFactorization::zero_object(ipoly(&r, &[(1, &[3])]));
        assert!(m.direct_sum(&other).is_err());
    }

    #[test]
    fn knoerrer_blocks_validate() {
        let m = mf_zz();
        let k = m.knoerrer("x", "y").unwrap();
        assert_eq!(k.size(), 2);
        assert!(k.is_reduced());
        assert_eq!(k.f().to_string(), "z^2 + x*y");
        // zero object stays zero
        let zk = MatrixFactorization::zero_object(m.f().clone()).knoerrer("x", "y").unwrap();
        assert_eq!(zk.size(), 0);
        assert_eq!(zk.f().to_string(), "z^2 + x*y");
        // name collision
        assert!(m.knoerrer("z", "y").is_err());
        assert!(m.knoerrer("x", "x").is_err());
    }

    #[test]
    fn knoerrer_squares_validates_over_sum_of_squares() {
        let m = mf_zz();
        let k = m.knoerrer_squares("u", "v").unwrap();
        assert_eq!(k.size(), 2);
        assert!(k.is_reduced());
        assert_eq!(k.f().to_string(), "z^2 + u^2 + v^2");
        // double application: the four-square extension
        let kk = k.knoerrer_squares("u2", "v2").unwrap();
        assert_eq!(kk.size(), 4);
        assert_eq!(kk.f().to_string(), "z^2 + u^2 + v^2 + u2^2 + v2^2");
        assert!(kk.is_reduced());
    }

    #[test]
    fn knoerrer_distributes_over_sums_up_to_permutation() {
        let r = ring1();
        let z = ipoly(&r, &[(1, &[1])]);
        let z2 = ipoly(&r, &[(1, &[2])]);
        let f3 = ipoly(&r, &[(1, &[3])]);
        let m = MatrixFactorization::validate(
            PolyMat::scalar(&r, 1, &z),
            PolyMat::scalar(&r, 1, &z2),
            f3.clone(),
        )
        .unwrap();
        let n = m.shift();
        let lhs = m.direct_sum(&n).unwrap().knoerrer("x", "y").unwrap();
        let rhs = m
            .knoerrer("x", "y")
            .unwrap()
            .direct_sum(&n.knoerrer("x", "y").unwrap())
            .unwrap();
        // canonical interleaving permutation for sizes s = t = 1
        let perm = vec![0, 2, 1, 3];
        assert_eq!(lhs.permuted(&perm, &perm), rhs);
    }
}
