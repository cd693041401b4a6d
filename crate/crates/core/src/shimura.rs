//! Genus of the Shimura curve `X^d` attached to the indefinite quaternion
//! algebra over `Q` of reduced discriminant `d`, for side-by-side comparison
//! with the function field curves.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{is_prime, FieldSpec};
use crate::rat::Rat;

/// Trial division is only attempted up to this size.
pub const MAX_DISCRIMINANT: u64 = 1_000_000_000;

/// A squarefree `d > 1` with an even number of prime factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalDiscriminant {
    d: u64,
    primes: Vec<u64>,
}

impl RationalDiscriminant {
    pub fn new(d: u64) -> Result<Self> {
        if d > MAX_DISCRIMINANT {
            return Err(Error::Budget {
                what: format!("factoring d = {d}"),
                budget: "d",
                requested: d as u128,
                limit: MAX_DISCRIMINANT as u128,
            });
        }
        let mut primes = Vec::new();
        let mut n = d;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                n /= p;
                if n.is_multiple_of(p) {
                    return Err(Error::domain(format!("d = {d} is divisible by {p}^2")));
                }
                primes.push(p);
            }
            p += 1;
        }
        if n > 1 {
            primes.push(n);
        }
        if primes.is_empty() || primes.len() % 2 != 0 {
            return Err(Error::domain(format!(
                "d = {d} has {} prime factors; an indefinite division algebra needs an even positive number",
                primes.len()
            )));
        }
        Ok(RationalDiscriminant { d, primes })
    }

    pub fn value(&self) -> u64 {
        self.d
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::contract(format!("{p} is not prime")))
    }
}

/// Splitting of `p` in `Q(i)`: `0` for 2, `+1` if `p = 1 mod 4`, `-1` otherwise.
pub fn legendre_qi(p: u64) -> Result<i8> {
    require_prime(p)?;
    Ok(match p % 4 {
        _ if p == 2 => 0,
        1 => 1,
        _ => -1,
    })
}

/// Splitting of `p` in `Q(sqrt(-3))`: `0` for 3, `+1` if `p = 1 mod 3`, `-1` otherwise.
pub fn legendre_q3(p: u64) -> Result<i8> {
    require_prime(p)?;
    Ok(match p % 3 {
        0 => 0,
        1 => 1,
        _ => -1,
    })
}

/// `g = 1 + (1/12) prod (p - 1) - (1/2) [ (1/2) prod (1 - (Q(i)/p)) + (2/3) prod (1 - (Q(sqrt -3)/p)) ]`
pub fn shimura_genus(d: &RationalDiscriminant) -> Result<BigInt> {
    let mut volume = BigInt::from(1);
    let mut e2 = BigInt::from(1);
    let mut e3 = BigInt::from(1);
    for &p in d.primes() {
        volume *= p - 1;
        e2 *= 1 - legendre_qi(p)? as i64;
        e3 *= 1 - legendre_q3(p)? as i64;
    }
    let half = Rat::new(1, 2)?;
    let g = Rat::one() + Rat::new(volume, 12)?
        - half.clone() * (half * Rat::from_int(e2) + Rat::new(2, 3)? * Rat::from_int(e3));
    let g = g.to_integer_checked("Shimura genus")?;
    if g < BigInt::from(0) {
        return Err(Error::invariant(format!(
            "negative Shimura genus for d = {}",
            d.value()
        )));
    }
    Ok(g)
}

/// `(-zeta_Z(-1), -zeta_A(-1)) = (1/6, 1/(q^2 - 1))`.
pub fn zeta_constants(field: &FieldSpec) -> (Rat, Rat) {
    let q = BigInt::from(field.q());
    (
        Rat::new(1, 6).expect("nonzero"),
        Rat::new(1, &q * &q - 1).expect("q >= 2"),
    )
}

/// Coefficients of the volume terms `prod (p - 1)` and `prod (q_x - 1)` in
/// the two genus formulas: `(1/12, 1/(q^2 - 1))`, i.e. `-zeta_Z(-1)/2` and
/// `-zeta_A(-1)`.
pub fn volume_coefficients(field: &FieldSpec) -> (Rat, Rat) {
    let (z, a) = zeta_constants(field);
    (z / Rat::from_int(2), a)
}
