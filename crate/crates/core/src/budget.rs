//! Limits on exhaustive enumeration.
//!
//! Every routine that walks all monic polynomials of some degree checks the
//! request against a [`Budget`] first. The defaults cover `q <= 16` and
//! place degrees up to 12; the `DSHEAF_BUDGET` environment variable
//! overrides them (see [`Budget::from_env`]).

use crate::error::{Error, Result};

pub const BUDGET_ENV: &str = "DSHEAF_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest field size accepted by [`FieldSpec`](crate::FieldSpec).
    pub max_q: u32,
    /// Largest polynomial degree that may be enumerated.
    pub max_degree: u32,
    /// Largest number of monic candidates (`q^degree`) examined per degree.
    pub max_candidates: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_q: 16,
            max_degree: 12,
            max_candidates: 1 << 24,
        }
    }
}

impl Budget {
    /// Reads `DSHEAF_BUDGET`, falling back to the defaults when unset.
    ///
    /// Accepted forms: a bare integer (sets `max_candidates`) or a comma
    /// separated list of `key=value` with keys `q`, `degree`, `candidates`.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(s) => Self::parse(&s),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut budget = Self::default();
        let s = s.trim();
        if s.is_empty() {
            return Ok(budget);
        }
        if let Ok(n) = s.parse::<u64>() {
            budget.max_candidates = n;
            return Ok(budget);
        }
        for item in s.split(',') {
            let (key, value) = item.split_once('=').ok_or_else(|| {
                Error::parse(format!("{BUDGET_ENV}: expected key=value, got `{item}`"))
            })?;
            let bad = |_| Error::parse(format!("{BUDGET_ENV}: bad value for `{}`", key.trim()));
            match key.trim() {
                "q" => budget.max_q = value.trim().parse().map_err(bad)?,
                "degree" => budget.max_degree = value.trim().parse().map_err(bad)?,
                "candidates" => budget.max_candidates = value.trim().parse().map_err(bad)?,
                other => return Err(Error::parse(format!("{BUDGET_ENV}: unknown key `{other}`"))),
            }
        }
        if budget.max_q > 256 {
            return Err(Error::parse(format!("{BUDGET_ENV}: q is capped at 256")));
        }
        Ok(budget)
    }

    /// Checks that enumerating all monic polynomials of `degree` over `F_q` is allowed.
    pub fn check_enumeration(&self, q: u32, degree: u32) -> Result<()> {
        if degree > self.max_degree {
            return Err(Error::Budget {
                what: format!("enumerating degree-{degree} polynomials"),
                budget: "degree",
                requested: degree as u128,
                limit: self.max_degree as u128,
            });
        }
        let candidates = (q as u128).checked_pow(degree).unwrap_or(u128::MAX);
        if candidates > self.max_candidates as u128 {
            return Err(Error::Budget {
                what: format!("enumerating {q}^{degree} monic polynomials"),
                budget: "candidates",
                requested: candidates,
                limit: self.max_candidates as u128,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(Budget::parse("").unwrap(), Budget::default());
        assert_eq!(Budget::parse("1000").unwrap().max_candidates, 1000);
        let b = Budget::parse("q=32, degree=20,candidates=5").unwrap();
        assert_eq!((b.max_q, b.max_degree, b.max_candidates), (32, 20, 5));
        assert!(Budget::parse("depth=3").is_err());
        assert!(Budget::parse("q=512").is_err());
    }

    #[test]
    fn enumeration_limits() {
        let b = Budget::default();
        assert!(b.check_enumeration(2, 12).is_ok());
        assert!(matches!(
            b.check_enumeration(2, 13),
            Err(Error::Budget {
                budget: "degree",
                ..
            })
        ));
        assert!(matches!(
            b.check_enumeration(16, 7),
            Err(Error::Budget {
                budget: "candidates",
                ..
            })
        ));
    }
}
