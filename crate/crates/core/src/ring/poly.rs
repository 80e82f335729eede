use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{check_same_ring, GaussianRational, Monomial, RingContext};
use crate::error::Error;
use crate::linalg::Matrix;

/// Finite-support multivariate polynomial over Q(i).
///
/// Invariants: no stored coefficient is zero, every monomial has the ring's
/// variable count, and the term map is kept in graded-lexicographic order by
/// the `BTreeMap`, so equality and serialization are bit-stable.
#[derive(Clone)]
pub struct Poly {
    ring: Arc<RingContext>,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: &Arc<RingContext>) -> Self {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<RingContext>, value: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Monomial::unit(ring.var_count()), value);
        }
        Poly { ring: ring.clone(), terms }
    }

    pub fn one(ring: &Arc<RingContext>) -> Self {
        Poly::constant(ring, GaussianRational::one())
    }

    pub fn variable(ring: &Arc<RingContext>, index: usize) -> Result<Self, Error> {
        if index >= ring.var_count() {
            return Err(Error::VarIndexOutOfRange { index, count: ring.var_count() });
        }
        Ok(Poly::term(ring, Monomial::variable(index, ring.var_count()), GaussianRational::one()))
    }

    pub fn term(ring: &Arc<RingContext>, monomial: Monomial, coeff: GaussianRational) -> Self {
        assert_eq!(monomial.var_count(), ring.var_count(), "monomial width mismatch");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        Poly { ring: ring.clone(), terms }
    }

    pub fn from_terms<I>(ring: &Arc<RingContext>, iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, GaussianRational)>,
    {
        let mut p = Poly::zero(ring);
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, monomial: Monomial, coeff: GaussianRational) {
        assert_eq!(monomial.var_count(), self.ring.var_count(), "monomial width mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> GaussianRational {
        self.terms.get(monomial).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coefficient(&Monomial::unit(self.ring.var_count()))
    }

    /// Minimal total degree over the support; `None` for the zero polynomial
    /// (the order of 0 is +infinity).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    /// Maximal total degree over the support; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, Error> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, Error> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, Error> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut out = Poly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Product with all terms of total degree above `max_degree` dropped.
    /// Jet arithmetic: much cheaper than multiplying and truncating after.
    pub fn checked_mul_truncated(&self, other: &Poly, max_degree: u32) -> Result<Poly, Error> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut out = Poly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            let d1 = m1.degree();
            if d1 > max_degree {
                break; // graded storage: everything after is larger too
            }
            for (m2, c2) in &other.terms {
                if d1 + m2.degree() > max_degree {
                    break;
                }
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &GaussianRational) -> Poly {
        if factor.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    /// Multiply by a single term `coeff * monomial`.
    pub fn mul_term(&self, monomial: &Monomial, coeff: &GaussianRational) -> Poly {
        if coeff.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.mul(monomial), c * coeff)).collect(),
        }
    }

    /// Formal partial derivative with respect to variable `var_index`.
    pub fn partial_derivative(&self, var_index: usize) -> Result<Poly, Error> {
        if var_index >= self.ring.var_count() {
            return Err(Error::VarIndexOutOfRange { index: var_index, count: self.ring.var_count() });
        }
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exp(var_index);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[var_index] -= 1;
            out.add_term(
                Monomial::from_exps(exps),
                c * &GaussianRational::from_integer(e as i64),
            );
        }
        Ok(out)
    }

    /// All formal partial derivatives, in variable order.
    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.ring.var_count())
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    /// Replace each variable by its image.  Images must all live in one
    /// target ring and have zero constant term, so the substitution fixes
    /// the origin.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly, Error> {
        self.substitute_impl(images, None)
    }

    /// Substitution in jet arithmetic: all intermediate products are
    /// truncated above `max_degree`.  Because every image has order at
    /// least one, this agrees with `substitute(..).truncate_above(..)`.
    pub fn substitute_truncated(&self, images: &[Poly], max_degree: u32) -> Result<Poly, Error> {
        self.substitute_impl(images, Some(max_degree))
    }

    fn substitute_impl(&self, images: &[Poly], cap: Option<u32>) -> Result<Poly, Error> {
        if images.len() != self.ring.var_count() {
            return Err(Error::ImageCountMismatch {
                expected: self.ring.var_count(),
                found: images.len(),
            });
        }
        let target = images
            .first()
            .map(|p| p.ring().clone())
            .expect("rings have at least one variable");
        for (k, img) in images.iter().enumerate() {
            check_same_ring(&target, img.ring())?;
            if !img.constant_term().is_zero() {
                return Err(Error::NonGermImage { index: k });
            }
        }
        let mul = |a: &Poly, b: &Poly| -> Result<Poly, Error> {
            match cap {
                Some(d) => a.checked_mul_truncated(b, d),
                None => a.checked_mul(b),
            }
        };
        // Cache image powers up to the largest exponent that occurs; an
        // image to a power beyond the cap is identically zero in the jet.
        let exp_limit = |e: u32| match cap {
            Some(d) => e.min(d + 1),
            None => e,
        };
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|img| {
                let first = match cap {
                    Some(d) => img.truncate_above(d),
                    None => img.clone(),
                };
                vec![Poly::one(&target), first]
            })
            .collect();
        for (i, _) in images.iter().enumerate() {
            let max_e = self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0);
            let max_e = exp_limit(max_e) as usize;
            while powers[i].len() <= max_e {
                let base = powers[i][1].clone();
                let next = mul(powers[i].last().unwrap(), &base)?;
                powers[i].push(next);
            }
        }
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut prod = Poly::constant(&target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if exp_limit(e) < e {
                    // image^e vanishes in the jet (order >= e > cap)
                    prod = Poly::zero(&target);
                    break;
                }
                prod = mul(&prod, &powers[i][e as usize])?;
                if prod.is_zero() {
                    break;
                }
            }
            out = out.checked_add(&prod)?;
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.  Term-by-term division under the graded-lexicographic
    /// order, which is a well-order, so the loop terminates.
    pub fn checked_div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero(&self.ring));
        }
        if self.ring != divisor.ring {
            return None;
        }
        let (dm, dc) = divisor.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))?;
        let dc_inv = dc.inverse()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.ring);
        while let Some((rm, rc)) = rem.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let q_mono = dm.quotient_into(&rm)?;
            let q_coeff = &rc * &dc_inv;
            quot.add_term(q_mono.clone(), q_coeff.clone());
            rem = &rem - &divisor.mul_term(&q_mono, &q_coeff);
        }
        Some(quot)
    }

    /// Drop all terms of total degree greater than `degree`.
    pub fn truncate_above(&self, degree: u32) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The homogeneous part of the given total degree.
    pub fn homogeneous_part(&self, degree: u32) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The symmetric matrix of second partials at the origin:
    /// `H[j][k] = (d_j d_k p)(0)`, read off the degree-2 part.
    pub fn hessian_at_zero(&self) -> Matrix {
        let n = self.ring.var_count();
        let mut h = Matrix::zeros(n, n);
        let two = GaussianRational::from_integer(2);
        for (m, c) in &self.terms {
            if m.degree() != 2 {
                continue;
            }
            let support: Vec<usize> =
                (0..n).filter(|&i| m.exp(i) > 0).collect();
            if support.len() == 1 {
                let j = support[0];
                h.set(j, j, c * &two);
            } else {
                let (j, k) = (support[0], support[1]);
                h.set(j, k, c.clone());
                h.set(k, j, c.clone());
            }
        }
        h
    }

    /// Move the polynomial into `target`, sending variable `k` to variable
    /// `map[k]`.  Used for ring extensions and positional re-indexing.
    pub fn mapped_to(&self, target: &Arc<RingContext>, map: &[usize]) -> Result<Poly, Error> {
        if map.len() != self.ring.var_count() {
            return Err(Error::ImageCountMismatch {
                expected: self.ring.var_count(),
                found: map.len(),
            });
        }
        for &t in map {
            if t >= target.var_count() {
                return Err(Error::VarIndexOutOfRange { index: t, count: target.var_count() });
            }
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            out.add_term(m.mapped(map, target.var_count()), c.clone());
        }
        Ok(out)
    }

    /// Same polynomial in a ring extended by trailing fresh variables.
    pub fn lifted_to(&self, target: &Arc<RingContext>) -> Result<Poly, Error> {
        let map: Vec<usize> = (0..self.ring.var_count()).collect();
        self.mapped_to(target, &map)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn monomial_str(m: &Monomial, ring: &RingContext) -> String {
    let mut parts = Vec::new();
    for i in 0..m.var_count() {
        match m.exp(i) {
            0 => {}
            1 => parts.push(ring.var_name(i).to_string()),
            e => parts.push(format!("{}^{}", ring.var_name(i), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    /// Canonical syntax accepted by the CLI parser.  Terms are printed in
    /// descending graded-lexicographic order; coefficients with both real
    /// and imaginary part are parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        use num_traits::{Signed, Zero};
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            // (negative, magnitude) for real or purely imaginary coefficients;
            // mixed coefficients keep their sign inside parentheses.
            let (negative, mag): (bool, String) = if c.im().is_zero() {
                (c.re().is_negative(), {
                    let a = -c; // cheap way to get |c| for the negative case
                    if c.re().is_negative() { a.to_string() } else { c.to_string() }
                })
            } else if c.re().is_zero() {
                (c.im().is_negative(), {
                    if c.im().is_negative() { (-c).to_string() } else { c.to_string() }
                })
            } else {
                (false, format!("({c})"))
            };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let ms = monomial_str(m, &self.ring);
            if ms.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{ms}")?;
            } else {
                write!(f, "{mag}*{ms}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
