use crate::error::Error;
use crate::ring::{check_same_ring, Poly};

use super::order::{ecart, leading_term};

/// Mora weak normal form of `p` with respect to `basis`.
///
/// Returns `r` with `u * p = sum q_k g_k + r` for some unit `u` of the local
/// ring, where the leading monomial of `r` is not divisible by any basis
/// leading monomial.  When `basis` is a standard basis, `r = 0` iff `p` lies
/// in the ideal generated by `basis` in the local ring.
///
/// Termination comes from Mora's ecart-bounded selection: when every eligible
/// reducer has larger ecart than the current remainder, the remainder itself
/// joins the reducer set before the step is taken.
pub fn mora_normal_form(p: &Poly, basis: &[Poly]) -> Result<Poly, Error> {
    for g in basis {
        check_same_ring(p.ring(), g.ring())?;
        if g.is_zero() {
            return Err(Error::ZeroGenerator);
        }
    }
    // (poly, leading monomial, leading coeff, ecart), extended during the run
    let mut reducers: Vec<(Poly, crate::ring::Monomial, crate::ring::GaussianRational, u32)> =
        basis
            .iter()
            .map(|g| {
                let (m, c) = leading_term(g).expect("nonzero");
                (g.clone(), m, c, ecart(g))
            })
            .collect();
    let mut h = p.clone();
    loop {
        if h.is_zero() {
            return Ok(h);
        }
        let (lm_h, lc_h) = leading_term(&h).expect("nonzero");
        let mut best: Option<usize> = None;
        for (idx, (_, lm_g, _, e_g)) in reducers.iter().enumerate() {
            if lm_g.divides(&lm_h) {
                match best {
                    None => best = Some(idx),
                    Some(b) if *e_g < reducers[b].3 => best = Some(idx),
                    _ => {}
                }
            }
        }
        let Some(idx) = best else {
            return Ok(h);
        };
        if reducers[idx].3 > ecart(&h) {
            let (m, c) = (lm_h.clone(), lc_h.clone());
            let e = ecart(&h);
            reducers.push((h.clone(), m, c, e));
        }
        let (g, lm_g, lc_g, _) = &reducers[idx];
        let cofactor_m = lm_g.quotient_into(&lm_h).expect("divides");
        let cofactor_c = &lc_h * &lc_g.inverse().expect("leading coefficient nonzero");
        h = &h - &g.mul_term(&cofactor_m, &cofactor_c);
    }
}
