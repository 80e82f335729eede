//! Multivariate polynomials over the Gaussian rationals.
//!
//! A [`Poly`] is a finite term map from [`Monomial`] to [`GaussianRational`],
//! tied to a shared [`RingContext`] that fixes the variable names.  All
//! values are immutable after construction and freely sendable between
//! threads.

mod coefficient;
mod monomial;
mod poly;

pub use coefficient::GaussianRational;
pub use monomial::Monomial;
pub use poly::Poly;

#[cfg(test)]
pub(crate) use poly::testutil;

use std::sync::Arc;

use crate::error::Error;

/// The ambient polynomial ring: an ordered list of distinct variable names.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingContext {
    vars: Vec<String>,
}

impl RingContext {
    pub fn new<S: Into<String>>(vars: Vec<S>) -> Result<Arc<Self>, Error> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.is_empty() {
            return Err(Error::InvalidRing { detail: "no variables".into() });
        }
        for (k, name) in vars.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidRing { detail: "empty variable name".into() });
            }
            if vars[..k].contains(name) {
                return Err(Error::NameCollision { name: name.clone() });
            }
        }
        Ok(Arc::new(RingContext { vars }))
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    pub fn var_name(&self, index: usize) -> &str {
        &self.vars[index]
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// A new ring with `extra` appended; fails on name collisions.
    pub fn extended(&self, extra: &[String]) -> Result<Arc<RingContext>, Error> {
        let mut vars = self.vars.clone();
        for name in extra {
            vars.push(name.clone());
        }
        RingContext::new(vars)
    }

    /// `count` names of the form `{prefix}1, {prefix}2, ...` that do not
    /// collide with existing variables.
    pub fn fresh_names(&self, prefix: &str, count: usize) -> Vec<String> {
        let mut names = Vec::with_capacity(count);
        let mut k = 1usize;
        while names.len() < count {
            let candidate = format!("{prefix}{k}");
            if self.position(&candidate).is_none() {
                names.push(candidate);
            }
            k += 1;
        }
        names
    }

    pub fn describe(&self) -> String {
        self.vars.join(",")
    }
}

pub(crate) fn check_same_ring(a: &Arc<RingContext>, b: &Arc<RingContext>) -> Result<(), Error> {
    if a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch { expected: a.describe(), found: b.describe() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(RingContext::new(vec!["z0", "z0"]).is_err());
        assert!(RingContext::new(Vec::<String>::new()).is_err());
        let r = RingContext::new(vec!["z0", "z1"]).unwrap();
        assert_eq!(r.var_count(), 2);
        assert_eq!(r.position("z1"), Some(1));
    }

    #[test]
    fn fresh_names_skip_collisions() {
        let r = RingContext::new(vec!["z0", "w1"]).unwrap();
        assert_eq!(r.fresh_names("w", 2), vec!["w2".to_string(), "w3".to_string()]);
    }
}
