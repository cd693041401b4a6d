//! Closed-form invariants of the curves `X^R` attached to a quaternion
//! algebra over `F_q(T)` ramified at a finite set `R` of finite places.
//!
//! Everything here is exact: intermediate values are [`Rat`](crate::Rat)
//! and each quantity that must be an integer goes through an integrality
//! check that fails with [`Error::Invariant`](crate::Error::Invariant).

mod formulas;
mod report;
mod scan;

pub use formulas::{
    chi_bare, chi_level, class_number, class_number_of_degrees, classify, covering_degree,
    extra_auto_kind, extra_autos, genus, genus_artin_legendre_form, genus_of_degrees, gl2_order,
    mass, mass_of_degrees, riemann_hurwitz_residual, supersingular_count, wp, Classification,
    Hyperelliptic, SheafKind, SupersingularPoints,
};
pub use report::InvariantReport;
pub use scan::{enumerate_discriminants, evaluate, optimality_scan, Cardinality, Execution};

use std::cmp::Ordering;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::places::{Place, PlaceCatalog, PlaceSet};

/// The ramification set `R`: an even number (at least two) of distinct
/// finite places.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discriminant {
    field: FieldSpec,
    places: PlaceSet,
}

impl Discriminant {
    pub fn new(field: &FieldSpec, places: PlaceSet) -> Result<Self> {
        if places.iter().any(Place::is_infinity) {
            return Err(Error::domain(
                "the discriminant may not contain the place at infinity",
            ));
        }
        if places.len() < 2 || !places.len().is_multiple_of(2) {
            return Err(Error::domain(format!(
                "a division algebra needs an even number (at least 2) of ramified places, got {}",
                places.len()
            )));
        }
        Ok(Discriminant {
            field: field.clone(),
            places,
        })
    }

    /// From explicit polynomial strings, e.g. `["T", "T^2+T+1"]`.
    pub fn from_polys<S: AsRef<str>>(field: &FieldSpec, polys: &[S]) -> Result<Self> {
        let places = polys
            .iter()
            .map(|s| Place::parse(s.as_ref(), field))
            .collect::<Result<Vec<_>>>()?;
        if places.iter().any(Place::is_infinity) {
            return Err(Error::domain(
                "the discriminant may not contain the place at infinity",
            ));
        }
        Self::new(field, PlaceSet::new(places)?)
    }

    /// Realizes a degree multiset by the smallest places of each degree,
    /// skipping `avoid`. Fails when there are not enough places.
    pub fn from_degrees(catalog: &PlaceCatalog, degrees: &[u32], avoid: &[Place]) -> Result<Self> {
        let field = catalog.field();
        let mut sorted = degrees.to_vec();
        sorted.sort_unstable();
        let mut places = Vec::with_capacity(sorted.len());
        for chunk in sorted.chunk_by(|a, b| a == b) {
            let d = chunk[0];
            if d == 0 {
                return Err(Error::domain("place degrees must be positive"));
            }
            if d > catalog.max_degree() {
                return Err(Error::contract(format!(
                    "catalog only covers degrees up to {}",
                    catalog.max_degree()
                )));
            }
            let available: Vec<&Place> = catalog
                .of_degree(d)
                .iter()
                .filter(|x| !avoid.contains(x))
                .collect();
            if available.len() < chunk.len() {
                return Err(Error::domain(format!(
                    "F_{} has only {} finite places of degree {d}{}, {} requested",
                    field.q(),
                    available.len(),
                    if avoid.is_empty() {
                        ""
                    } else {
                        " outside the excluded places"
                    },
                    chunk.len()
                )));
            }
            places.extend(available.into_iter().take(chunk.len()).cloned());
        }
        Self::new(field, PlaceSet::new(places)?)
    }

    /// [`Discriminant::from_degrees`] with a catalog built on the spot.
    pub fn from_degrees_in(
        field: &FieldSpec,
        degrees: &[u32],
        avoid: &[Place],
        budget: &Budget,
    ) -> Result<Self> {
        let max = degrees.iter().copied().max().unwrap_or(1).max(1);
        let catalog = PlaceCatalog::build(field, max, budget)?;
        Self::from_degrees(&catalog, degrees, avoid)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn places(&self) -> &PlaceSet {
        &self.places
    }

    pub fn cardinality(&self) -> usize {
        self.places.len()
    }

    /// `deg(r) = sum of deg(x)` over `R`.
    pub fn degree(&self) -> u32 {
        self.places.iter().map(Place::degree).sum()
    }

    /// Degrees of the places, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        self.places.degrees()
    }

    pub fn contains(&self, x: &Place) -> bool {
        self.places.contains(x)
    }

    /// Canonical scan order: `deg(r)`, then the degree multiset, then the places.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.degrees().cmp(&other.degrees()))
            .then_with(|| self.places.cmp(&other.places))
    }

    pub fn poly_strings(&self) -> Vec<String> {
        self.places.iter().map(|x| x.format(&self.field)).collect()
    }
}

/// The place `o` at which the curve is reduced; finite and outside `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicPlace(Place);

impl CharacteristicPlace {
    pub fn new(place: Place) -> Result<Self> {
        if place.is_infinity() {
            return Err(Error::domain("the characteristic place must be finite"));
        }
        Ok(CharacteristicPlace(place))
    }

    pub fn parse(s: &str, field: &FieldSpec) -> Result<Self> {
        Self::new(Place::parse(s, field)?)
    }

    pub fn place(&self) -> &Place {
        &self.0
    }
}

/// A nonzero level ideal of `A`, by its prime-power factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelIdeal {
    factors: Vec<(Place, u32)>,
}

impl LevelIdeal {
    pub fn new(mut factors: Vec<(Place, u32)>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::domain("the level ideal must be nonempty"));
        }
        if factors.iter().any(|(x, _)| x.is_infinity()) {
            return Err(Error::domain(
                "the level ideal is supported on finite places",
            ));
        }
        if factors.iter().any(|&(_, e)| e == 0) {
            return Err(Error::domain("level exponents must be at least 1"));
        }
        factors.sort();
        if factors.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::domain("level places must be distinct"));
        }
        Ok(LevelIdeal { factors })
    }

    /// Parses `poly` or `poly:exp` items separated by commas, e.g. `T:2,T^2+T+1`.
    pub fn parse(s: &str, field: &FieldSpec) -> Result<Self> {
        let factors = s
            .split(',')
            .map(|item| {
                let (poly, exp) = match item.rsplit_once(':') {
                    Some((p, e)) => (
                        p,
                        e.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::parse(format!("bad exponent in `{item}`")))?,
                    ),
                    None => (item, 1),
                };
                Ok((Place::parse(poly, field)?, exp))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(factors)
    }

    pub fn factors(&self) -> &[(Place, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(x, e)| x.degree() * e).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_validation() {
        let f2 = FieldSpec::new(2).unwrap();
        assert!(Discriminant::from_polys(&f2, &["T"]).is_err());
        assert!(Discriminant::from_polys(&f2, &["T", "T+1", "T^2+T+1"]).is_err());
        assert!(Discriminant::from_polys(&f2, &["T", "inf"]).is_err());
        assert!(Discriminant::from_polys(&f2, &["T", "T"]).is_err());
        let r = Discriminant::from_polys(&f2, &["T^2+T+1", "T"]).unwrap();
        assert_eq!(r.degrees(), [1, 2]);
        assert_eq!(r.degree(), 3);
    }

    #[test]
    fn degree_realization_avoids_o() {
        let f2 = FieldSpec::new(2).unwrap();
        let cat = PlaceCatalog::build(&f2, 3, &Budget::default()).unwrap();
        let o = Place::parse("T", &f2).unwrap();
        let r = Discriminant::from_degrees(&cat, &[3, 1], std::slice::from_ref(&o)).unwrap();
        assert_eq!(r.poly_strings(), ["T+1", "T^3+T+1"]);
        // only T+1 remains in degree one
        assert!(matches!(
            Discriminant::from_degrees(&cat, &[1, 1], std::slice::from_ref(&o)),
            Err(Error::Domain(_))
        ));
        assert!(Discriminant::from_degrees(&cat, &[1, 1], &[]).is_ok());
    }

    #[test]
    fn level_ideal_parsing() {
        let f2 = FieldSpec::new(2).unwrap();
        let i = LevelIdeal::parse("T:2,T^2+T+1", &f2).unwrap();
        assert_eq!(i.degree(), 4);
        assert!(LevelIdeal::parse("T:0", &f2).is_err());
        assert!(LevelIdeal::parse("T,T:2", &f2).is_err());
        assert!(LevelIdeal::new(vec![]).is_err());
        assert!(CharacteristicPlace::parse("inf", &f2).is_err());
    }
}
