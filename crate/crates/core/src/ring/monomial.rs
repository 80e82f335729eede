use std::cmp::Ordering;

/// Exponent vector of a power product.  The length always matches the
/// variable count of the ambient [`RingContext`](super::RingContext).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn unit(var_count: usize) -> Self {
        Monomial { exps: vec![0; var_count] }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The monomial `x_i` in a ring with `var_count` variables.
    pub fn variable(index: usize, var_count: usize) -> Self {
        let mut exps = vec![0; var_count];
        exps[index] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn var_count(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, or `None` when `self` does not divide `other`.
    pub fn quotient_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
        })
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    /// `Some((var, exp))` when the monomial is `x_var^exp` with `exp >= 1`.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    /// The same monomial in a ring with `extra` fresh trailing variables.
    pub fn extended(&self, extra: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.extend(std::iter::repeat(0).take(extra));
        Monomial { exps }
    }

    /// Re-index exponents into a ring with `target_count` variables, sending
    /// variable `k` to `map[k]`.
    pub fn mapped(&self, map: &[usize], target_count: usize) -> Monomial {
        let mut exps = vec![0; target_count];
        for (k, &e) in self.exps.iter().enumerate() {
            exps[map[k]] += e;
        }
        Monomial { exps }
    }
}

impl Ord for Monomial {
    /// Graded, then lexicographic.  This is the canonical storage order that
    /// keeps term maps and serialization bit-stable; the local order used by
    /// the standard-basis engine lives in `stdbasis`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_ordering() {
        let u = Monomial::from_exps(vec![1, 1]); // z0*z1
        let v = Monomial::from_exps(vec![0, 3]); // z1^3
        let w = Monomial::from_exps(vec![2, 0]); // z0^2
        assert!(u < v); // degree 2 < 3
        assert!(u < w); // same degree, lex
        assert!(Monomial::unit(2) < u);
    }

    #[test]
    fn division_and_lcm() {
        let u = Monomial::from_exps(vec![2, 1]);
        let v = Monomial::from_exps(vec![1, 0]);
        assert!(v.divides(&u));
        assert_eq!(v.quotient_into(&u).unwrap(), Monomial::from_exps(vec![1, 1]));
        assert_eq!(u.quotient_into(&v), None);
        assert_eq!(
            u.lcm(&Monomial::from_exps(vec![0, 3])),
            Monomial::from_exps(vec![2, 3])
        );
    }

    #[test]
    fn pure_power_detection() {
        assert_eq!(Monomial::from_exps(vec![0, 4]).pure_power(), Some((1, 4)));
        assert_eq!(Monomial::from_exps(vec![1, 1]).pure_power(), None);
        assert_eq!(Monomial::unit(2).pure_power(), None);
    }
}
