use std::cmp::Ordering;

use crate::ring::{GaussianRational, Monomial, Poly};

/// The fixed local monomial order: negative-degree reverse-lexicographic.
///
/// `Greater` means "closer to leading".  Lower total degree always wins, so
/// units dominate and computations happen in the localization at the origin.
/// Ties within a degree are broken reverse-lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct LocalOrder;

pub fn local_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Less => Ordering::Greater,
        Ordering::Greater => Ordering::Less,
        Ordering::Equal => {
            for k in (0..a.var_count()).rev() {
                let (ea, eb) = (a.exp(k), b.exp(k));
                if ea != eb {
                    // last nonzero entry of a - b negative <=> a leads
                    return if ea < eb { Ordering::Greater } else { Ordering::Less };
                }
            }
            Ordering::Equal
        }
    }
}

/// Leading term of `p` under the local order; `None` for zero.
pub fn leading_term(p: &Poly) -> Option<(Monomial, GaussianRational)> {
    let min_degree = p.order()?;
    let mut best: Option<(&Monomial, &GaussianRational)> = None;
    for (m, c) in p.terms() {
        if m.degree() > min_degree {
            break; // terms are stored graded, the minimal-degree block is first
        }
        match best {
            None => best = Some((m, c)),
            Some((bm, _)) if local_cmp(m, bm) == Ordering::Greater => best = Some((m, c)),
            _ => {}
        }
    }
    best.map(|(m, c)| (m.clone(), c.clone()))
}

pub fn leading_monomial(p: &Poly) -> Option<Monomial> {
    leading_term(p).map(|(m, _)| m)
}

/// Mora's ecart: total degree minus the degree of the leading monomial.
pub fn ecart(p: &Poly) -> u32 {
    match (p.total_degree(), p.order()) {
        (Some(d), Some(o)) => d - o,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingContext;

    #[test]
    fn units_dominate() {
        let one = Monomial::unit(2);
        let z0 = Monomial::variable(0, 2);
        assert_eq!(local_cmp(&one, &z0), Ordering::Greater);
    }

    #[test]
    fn revlex_tie_break() {
        // z0 > z1, z0^2 > z0 z1 > z1^2
        let z0 = Monomial::variable(0, 2);
        let z1 = Monomial::variable(1, 2);
        assert_eq!(local_cmp(&z0, &z1), Ordering::Greater);
        let z0z0 = Monomial::from_exps(vec![2, 0]);
        let z0z1 = Monomial::from_exps(vec![1, 1]);
        let z1z1 = Monomial::from_exps(vec![0, 2]);
        assert_eq!(local_cmp(&z0z0, &z0z1), Ordering::Greater);
        assert_eq!(local_cmp(&z0z1, &z1z1), Ordering::Greater);
    }

    #[test]
    fn leading_term_is_lowest_degree() {
        let r = RingContext::new(vec!["z"]).unwrap();
        // 2z + 3z^2 leads with 2z under the local order
        let p = crate::ring::Poly::from_terms(
            &r,
            [
                (Monomial::from_exps(vec![1]), GaussianRational::from_integer(2)),
                (Monomial::from_exps(vec![2]), GaussianRational::from_integer(3)),
            ],
        );
        let (m, c) = leading_term(&p).unwrap();
        assert_eq!(m, Monomial::from_exps(vec![1]));
        assert_eq!(c, GaussianRational::from_integer(2));
        assert_eq!(ecart(&p), 1);
    }
}
