//! Places of the projective line over `F_q`.
//!
//! A finite place is a monic irreducible polynomial (it generates the prime
//! ideal `p_x` of `A = F_q[T]`); the place at infinity is kept structural.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::{enumerate_monic_irreducibles, is_irreducible, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Kind {
    // Declared first so that infinity sorts before every finite place.
    Infinity,
    Finite(Poly),
}

/// A closed point of `P^1` over `F_q`.
///
/// Ordered with infinity first, then by degree, then by [`Poly`] order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Place(Kind);

impl Place {
    pub fn infinity() -> Self {
        Place(Kind::Infinity)
    }

    /// A finite place; `poly` must be monic and irreducible.
    pub fn finite(poly: Poly, field: &FieldSpec) -> Result<Self> {
        if poly.degree().unwrap_or(0) == 0 || !poly.is_monic() {
            return Err(Error::domain(format!(
                "`{}` is not a monic polynomial of positive degree",
                poly.format(field)
            )));
        }
        if !is_irreducible(&poly, field)? {
            return Err(Error::domain(format!(
                "`{}` is not irreducible over F_{}",
                poly.format(field),
                field.q()
            )));
        }
        Ok(Place(Kind::Finite(poly)))
    }

    /// Skips the irreducibility check; for polynomials that come out of
    /// [`enumerate_monic_irreducibles`].
    pub(crate) fn finite_unchecked(poly: Poly) -> Self {
        Place(Kind::Finite(poly))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self.0, Kind::Infinity)
    }

    pub fn poly(&self) -> Option<&Poly> {
        match &self.0 {
            Kind::Finite(p) => Some(p),
            Kind::Infinity => None,
        }
    }

    pub fn degree(&self) -> u32 {
        match &self.0 {
            Kind::Infinity => 1,
            Kind::Finite(p) => p.degree().expect("places have positive degree") as u32,
        }
    }

    /// `q_x = q^deg(x)`.
    pub fn residue_size(&self, field: &FieldSpec) -> BigInt {
        BigInt::from(field.q()).pow(self.degree())
    }

    /// `inf`, or the generating polynomial in `T`.
    pub fn format(&self, field: &FieldSpec) -> String {
        match &self.0 {
            Kind::Infinity => "inf".to_string(),
            Kind::Finite(p) => p.format(field),
        }
    }

    pub fn parse(s: &str, field: &FieldSpec) -> Result<Self> {
        match s.trim() {
            "inf" => Ok(Place::infinity()),
            other => Place::finite(Poly::parse(other, field)?, field),
        }
    }

    pub fn display<'a>(&'a self, field: &'a FieldSpec) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Place, &'a FieldSpec);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format(self.1))
            }
        }
        D(self, field)
    }
}

/// A finite set of distinct places in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PlaceSet(Vec<Place>);

impl PlaceSet {
    pub fn new(mut places: Vec<Place>) -> Result<Self> {
        places.sort();
        if places.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain("places in a set must be distinct"));
        }
        Ok(PlaceSet(places))
    }

    pub fn empty() -> Self {
        PlaceSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Place> {
        self.0.iter()
    }

    pub fn contains(&self, x: &Place) -> bool {
        self.0.binary_search(x).is_ok()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.0.iter().map(Place::degree).collect()
    }

    pub fn with(&self, x: Place) -> Result<Self> {
        let mut v = self.0.clone();
        v.push(x);
        PlaceSet::new(v)
    }

    pub fn as_slice(&self) -> &[Place] {
        &self.0
    }
}

impl<'a> IntoIterator for &'a PlaceSet {
    type Item = &'a Place;
    type IntoIter = std::slice::Iter<'a, Place>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

pub(crate) fn mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of finite places of degree `d`: `(1/d) sum_{e | d} mu(e) q^{d/e}`.
pub fn count_places_of_degree(field: &FieldSpec, d: u32) -> Result<BigUint> {
    if d == 0 {
        return Err(Error::contract("place degree must be at least 1"));
    }
    let q = BigInt::from(field.q());
    let mut sum = BigInt::zero();
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        sum += mobius(e) * q.pow(d / e);
    }
    let (quot, rem) = (&sum / d, &sum % d);
    debug_assert!(rem.is_zero());
    Ok(quot.to_biguint().expect("place counts are nonnegative"))
}

/// All places of degree at most `max_degree`, canonical order.
pub fn enumerate_places(
    field: &FieldSpec,
    max_degree: u32,
    include_infinity: bool,
    budget: &Budget,
) -> Result<PlaceSet> {
    let catalog = PlaceCatalog::build(field, max_degree, budget)?;
    let mut places: Vec<Place> = catalog.all().cloned().collect();
    if include_infinity {
        places.insert(0, Place::infinity());
    }
    Ok(PlaceSet(places))
}

/// Splitting behaviour of `x` in the constant field extension `F_{q^2} F`:
/// `+1` for even degree (split), `-1` for odd degree (inert). The extension
/// is unramified everywhere, so `0` never occurs.
pub fn artin_legendre_constant_ext(x: &Place) -> i8 {
    if x.degree().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The finite places of each degree `1..=max_degree`, enumerated once.
#[derive(Clone, Debug)]
pub struct PlaceCatalog {
    field: FieldSpec,
    by_degree: Vec<Vec<Place>>,
}

impl PlaceCatalog {
    pub fn build(field: &FieldSpec, max_degree: u32, budget: &Budget) -> Result<Self> {
        let mut by_degree = Vec::with_capacity(max_degree as usize);
        for d in 1..=max_degree {
            let polys = enumerate_monic_irreducibles(field, d, budget)?;
            by_degree.push(polys.into_iter().map(Place::finite_unchecked).collect());
        }
        Ok(PlaceCatalog {
            field: field.clone(),
            by_degree,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn max_degree(&self) -> u32 {
        self.by_degree.len() as u32
    }

    /// Places of degree `d`; empty when `d` is outside the catalog.
    pub fn of_degree(&self, d: u32) -> &[Place] {
        match d {
            0 => &[],
            _ => self
                .by_degree
                .get(d as usize - 1)
                .map(Vec::as_slice)
                .unwrap_or(&[]),
        }
    }

    pub fn all(&self) -> impl Iterator<Item = &Place> {
        self.by_degree.iter().flatten()
    }
}

/// `sum_{d | n} d N(d)`, which must equal `q^n`.
pub fn necklace_sum(field: &FieldSpec, n: u32) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        total += count_places_of_degree(field, d)? * d;
    }
    Ok(total)
}
