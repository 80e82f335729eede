//! Splitting off trivial summands.
//!
//! A unit entry in either matrix lets the factorization split as
//! `(trivial) + (smaller)`.  All pivoting here is exact over the polynomial
//! ring: row/column operations on one matrix are compensated on the other
//! (`A -> S A T`, `B -> T^-1 B S^-1`), and divisions only ever happen by
//! nonzero constants.  A unit pivot with higher-order terms is first
//! "purified" to a plain constant by subtracting an exact polynomial
//! multiple of a parallel row or column when one divides the tail; pivots
//! that cannot be purified are left in place, so the procedure is a
//! best-effort normal form that is deterministic and never invalidates the
//! factorization.

use crate::ring::Poly;

use super::{MatrixFactorization, PolyMat};

/// `row_i(x) += t * row_p(x)` with the compensating `col_p(y) -= t * col_i(y)`.
fn row_op(x: &mut PolyMat, y: &mut PolyMat, i: usize, p: usize, t: &Poly) {
    for c in 0..x.cols() {
        let v = x.get(i, c) + &(t * x.get(p, c));
        x.set(i, c, v);
    }
    for r in 0..y.rows() {
        let v = y.get(r, p) - &(t * y.get(r, i));
        y.set(r, p, v);
    }
}

/// `col_j(x) += t * col_q(x)` with the compensating `row_q(y) -= t * row_j(y)`.
fn col_op(x: &mut PolyMat, y: &mut PolyMat, j: usize, q: usize, t: &Poly) {
    for r in 0..x.rows() {
        let v = x.get(r, j) + &(t * x.get(r, q));
        x.set(r, j, v);
    }
    for c in 0..y.cols() {
        let v = y.get(q, c) - &(t * y.get(j, c));
        y.set(q, c, v);
    }
}

fn is_unit(p: &Poly) -> bool {
    p.order() == Some(0)
}

fn is_constant(p: &Poly) -> bool {
    p.total_degree() == Some(0)
}

/// The tail of a unit entry: everything above the constant term.
fn unit_tail(p: &Poly) -> Poly {
    p - &Poly::constant(p.ring(), p.constant_term())
}

fn row_col_otherwise_zero(x: &PolyMat, p: usize, q: usize) -> bool {
    (0..x.rows()).all(|i| i == p || x.get(i, q).is_zero())
        && (0..x.cols()).all(|j| j == q || x.get(p, j).is_zero())
}

/// Try to turn the unit pivot at `(p, q)` into a plain constant by one
/// exact-division row or column operation.  Returns `true` on success.
fn purify(x: &mut PolyMat, y: &mut PolyMat, p: usize, q: usize) -> bool {
    let tail = unit_tail(x.get(p, q));
    if tail.is_zero() {
        return true;
    }
    for j in 0..x.cols() {
        if j == q || x.get(p, j).is_zero() {
            continue;
        }
        if let Some(h) = tail.checked_div_exact(x.get(p, j)) {
            col_op(x, y, q, j, &-&h);
            return true;
        }
    }
    for i in 0..x.rows() {
        if i == p || x.get(i, q).is_zero() {
            continue;
        }
        if let Some(h) = tail.checked_div_exact(x.get(i, q)) {
            row_op(x, y, p, i, &-&h);
            return true;
        }
    }
    false
}

/// Clear the pivot's column and row by exact operations (divide by the
/// constant pivot only), leaving the pivot alone in its row and column.
fn clear_around_constant_pivot(x: &mut PolyMat, y: &mut PolyMat, p: usize, q: usize) {
    let c_inv = x
        .get(p, q)
        .constant_term()
        .inverse()
        .expect("pivot is a nonzero constant");
    for i in 0..x.rows() {
        if i == p || x.get(i, q).is_zero() {
            continue;
        }
        let t = x.get(i, q).scale(&c_inv);
        row_op(x, y, i, p, &-&t);
    }
    for j in 0..x.cols() {
        if j == q || x.get(p, j).is_zero() {
            continue;
        }
        let t = x.get(p, j).scale(&c_inv);
        col_op(x, y, j, q, &-&t);
    }
}

/// One reduction step on the pair `(x, y)` where a pivot lives in `x`.
/// Returns the deleted pair on success.
fn step(x: &mut PolyMat, y: &mut PolyMat) -> Option<(usize, usize)> {
    let n = x.rows();
    // 1. a unit whose row and column are already clear: delete outright
    for p in 0..n {
        for q in 0..n {
            if is_unit(x.get(p, q)) && row_col_otherwise_zero(x, p, q) {
                return Some((p, q));
            }
        }
    }
    // 2. a plain constant pivot: clear and delete
    for p in 0..n {
        for q in 0..n {
            if is_constant(x.get(p, q)) {
                clear_around_constant_pivot(x, y, p, q);
                return Some((p, q));
            }
        }
    }
    // 3. a unit pivot whose tail divides out against its row or column
    for p in 0..n {
        for q in 0..n {
            if is_unit(x.get(p, q)) && purify(x, y, p, q) {
                clear_around_constant_pivot(x, y, p, q);
                return Some((p, q));
            }
        }
    }
    None
}

/// Homotopy-equivalent factorization with trivial summands split off.
/// Idempotent and never size-increasing; terminates because every
/// successful pivot deletes one row/column pair.
pub fn reduce(m: &MatrixFactorization) -> MatrixFactorization {
    let mut a = m.matrix_a().clone();
    let mut b = m.matrix_b().clone();
    loop {
        if a.rows() == 0 {
            break;
        }
        if let Some((p, q)) = step(&mut a, &mut b) {
            a = a.deleted(p, q);
            b = b.deleted(q, p);
            continue;
        }
        if let Some((p, q)) = step(&mut b, &mut a) {
            b = b.deleted(p, q);
            a = a.deleted(q, p);
            continue;
        }
        break;
    }
    MatrixFactorization::validate(a, b, m.f().clone())
        .expect("exact pivoting preserves the factorization")
}
