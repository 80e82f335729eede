//! Independent reference computations on truncated jet spaces.
//!
//! Everything here recomputes quotient dimensions by dense linear algebra on
//! `P / m^D`: the span of all monomial multiples of the generators,
//! truncated above degree `D - 1`, is subtracted from the full jet space by
//! an exact rank computation.  No standard bases, no normal forms — this is
//! the cross-check for the `stdbasis` engine, so it must not share its code
//! path.
//!
//! The value `dim P/(I + m^D)` equals the local quotient dimension once `D`
//! is past the nilpotency degree of the quotient; callers pick `D` large
//! enough for the ideals they test.

use crate::linalg::Matrix;
use crate::ring::{Monomial, Poly};

/// All monomials of total degree < `bound` in `var_count` variables,
/// in graded-lexicographic order.
pub fn monomials_below(var_count: usize, bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; var_count];
    fn rec(exps: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
        if pos == exps.len() {
            out.push(Monomial::from_exps(exps.clone()));
            return;
        }
        for e in 0..=remaining {
            exps[pos] = e;
            rec(exps, pos + 1, remaining - e, out);
        }
        exps[pos] = 0;
    }
    if bound > 0 {
        rec(&mut exps, 0, bound - 1, &mut out);
    }
    out.sort();
    out
}

/// `dim P/(I + m^D)` for the ideal generated by `gens`.
pub fn jet_quotient_dimension(gens: &[Poly], jet_bound: u32) -> usize {
    let ring = gens.first().expect("at least one generator").ring();
    let columns = monomials_below(ring.var_count(), jet_bound);
    let index_of = |m: &Monomial| columns.binary_search(m).ok();
    let mut rows: Vec<Vec<crate::ring::GaussianRational>> = Vec::new();
    let multipliers = monomials_below(ring.var_count(), jet_bound);
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let g_order = g.order().unwrap_or(0);
        for m in &multipliers {
            if m.degree() + g_order >= jet_bound {
                continue;
            }
            let mut row = vec![crate::ring::GaussianRational::zero(); columns.len()];
            let mut nonzero = false;
            for (gm, gc) in g.terms() {
                let prod = gm.mul(m);
                if let Some(idx) = index_of(&prod) {
                    row[idx] = gc.clone();
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows).rank() };
    columns.len() - rank
}

/// Milnor number by dense jet linear algebra on the Jacobian ideal.
pub fn milnor_via_jets(f: &Poly, jet_bound: u32) -> usize {
    let gens: Vec<Poly> = f.gradient().into_iter().filter(|p| !p.is_zero()).collect();
    jet_quotient_dimension(&gens, jet_bound)
}

/// Tyurina number by dense jet linear algebra on `(f) + Jacobian`.
pub fn tyurina_via_jets(f: &Poly, jet_bound: u32) -> usize {
    let mut gens: Vec<Poly> = vec![f.clone()];
    gens.extend(f.gradient().into_iter().filter(|p| !p.is_zero()));
    jet_quotient_dimension(&gens, jet_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::testutil::ipoly;
    use crate::ring::RingContext;

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_below(2, 3).len(), 6); // 1, z0, z1, z0^2, z0z1, z1^2
        assert_eq!(monomials_below(1, 5).len(), 5);
        assert_eq!(monomials_below(3, 1).len(), 1);
    }

    #[test]
    fn cusp_milnor_number() {
        let r = RingContext::new(vec!["z"]).unwrap();
        // f = z^3: Jacobian (3z^2), local dimension 2
        let f = ipoly(&r, &[(1, &[3])]);
        assert_eq!(milnor_via_jets(&f, 10), 2);
        assert_eq!(tyurina_via_jets(&f, 10), 2);
    }

    #[test]
    fn local_not_global_counting() {
        // (2z + 3z^2) has local codimension 1; a global count would see the
        // second zero at z = -2/3 and report 2.
        let r = RingContext::new(vec!["z"]).unwrap();
        assert_eq!(jet_quotient_dimension(&[ipoly(&r, &[(2, &[1]), (3, &[2])])], 10), 1);
    }
}
