use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{CharacteristicPlace, Discriminant, LevelIdeal};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::places::{artin_legendre_constant_ext, Place};
use crate::rat::Rat;

/// `0` if some place has even degree, `1` otherwise (so `1` on the empty set).
pub fn wp<'a, I>(places: I) -> u8
where
    I: IntoIterator<Item = &'a Place>,
{
    u8::from(places.into_iter().all(|x| x.degree() % 2 == 1))
}

fn q_of(field: &FieldSpec) -> BigInt {
    BigInt::from(field.q())
}

/// `prod (q_x - 1)` over the given places.
fn norm_product<'a>(places: impl IntoIterator<Item = &'a Place>, field: &FieldSpec) -> BigInt {
    places
        .into_iter()
        .map(|x| x.residue_size(field) - 1)
        .product()
}

fn pow2(n: usize) -> BigInt {
    BigInt::one() << n
}

/// `q / (q + 1)`
fn q_over_q_plus_1(field: &FieldSpec) -> Rat {
    let q = q_of(field);
    Rat::new(q.clone(), q + 1).expect("q + 1 > 0")
}

fn check_o(r: &Discriminant, o: &CharacteristicPlace) -> Result<()> {
    if r.contains(o.place()) {
        return Err(Error::domain(format!(
            "o = {} lies in R; the auxiliary algebra is ramified at R and o separately",
            o.place().format(r.field())
        )));
    }
    Ok(())
}

/// Mass of the definite algebra ramified at `R ∪ {o, ∞}`:
/// `prod_{x in R ∪ o} (q_x - 1) / (q^2 - 1)`.
pub fn mass(r: &Discriminant, o: &CharacteristicPlace) -> Result<Rat> {
    check_o(r, o)?;
    mass_of_degrees(r.field().q(), &r.degrees(), o.place().degree())
}

/// Class number: mass plus `q/(q+1) * 2^{#R} * wp(R ∪ o)`.
pub fn class_number(r: &Discriminant, o: &CharacteristicPlace) -> Result<BigInt> {
    check_o(r, o)?;
    class_number_of_degrees(r.field().q(), &r.degrees(), o.place().degree())
}

fn norms_of_degrees(q: &BigInt, degrees: &[u32]) -> BigInt {
    degrees.iter().map(|&d| q.pow(d) - 1).product()
}

fn wp_of_degrees(degrees: &[u32]) -> u8 {
    u8::from(degrees.iter().all(|d| d % 2 == 1))
}

/// [`mass`] from the degrees of `R` and of `o` alone.
pub fn mass_of_degrees(q: u32, r_degrees: &[u32], o_degree: u32) -> Result<Rat> {
    let q = BigInt::from(q);
    let num = norms_of_degrees(&q, r_degrees) * (q.pow(o_degree) - 1);
    Rat::new(num, &q * &q - 1)
}

/// [`class_number`] from the degrees of `R` and of `o` alone.
pub fn class_number_of_degrees(q: u32, r_degrees: &[u32], o_degree: u32) -> Result<BigInt> {
    let m = mass_of_degrees(q, r_degrees, o_degree)?;
    let parity = wp_of_degrees(r_degrees) * u8::from(o_degree % 2 == 1);
    let qb = BigInt::from(q);
    let correction = Rat::new(qb.clone(), qb + 1)? * Rat::from_int(pow2(r_degrees.len()) * parity);
    (m + correction).to_integer_checked("class number")
}

/// Supersingular points on the fibre at `o` and the size `q_o^2` of the
/// field they are all rational over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupersingularPoints {
    pub count: BigInt,
    pub field_size: BigInt,
}

/// The supersingular points are in bijection with the ideal classes, so the
/// count is the class number.
pub fn supersingular_count(
    r: &Discriminant,
    o: &CharacteristicPlace,
) -> Result<SupersingularPoints> {
    let count = class_number(r, o)?;
    let q_o = o.place().residue_size(r.field());
    Ok(SupersingularPoints {
        count,
        field_size: &q_o * &q_o,
    })
}

/// Points with extra automorphisms: `2^{#R} * wp(R)`.
pub fn extra_autos(r: &Discriminant) -> BigInt {
    pow2(r.cardinality()) * wp(r.places())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SheafKind {
    Ordinary,
    Supersingular,
}

/// Nature of the points with extra automorphisms on the fibre at `o`:
/// ordinary when `deg(o)` is even, supersingular when odd. `None` when there
/// are no such points (`wp(R) = 0`).
pub fn extra_auto_kind(r: &Discriminant, o: &CharacteristicPlace) -> Option<SheafKind> {
    if wp(r.places()) == 0 {
        return None;
    }
    Some(if o.place().degree().is_multiple_of(2) {
        SheafKind::Ordinary
    } else {
        SheafKind::Supersingular
    })
}

/// `#GL_2` of the local ring `A / p^e` with residue field of size `q_x`:
/// `q_x^{4(e-1)} (q_x^2 - 1)(q_x^2 - q_x)`.
pub fn gl2_order(q_x: &BigInt, e: u32) -> Result<BigInt> {
    if *q_x < BigInt::from(2) || e == 0 {
        return Err(Error::contract(format!(
            "gl2_order needs q_x >= 2 and e >= 1, got q_x = {q_x}, e = {e}"
        )));
    }
    let sq = q_x * q_x;
    Ok(q_x.pow(4 * (e - 1)) * (&sq - 1) * (&sq - q_x))
}

fn gl2_of_level(level: &LevelIdeal, field: &FieldSpec) -> Result<BigInt> {
    level
        .factors()
        .iter()
        .map(|(x, e)| gl2_order(&x.residue_size(field), *e))
        .product()
}

/// Degree `#GL_2(O_I) / (q - 1)` of the forgetful map from level `I` to level one.
pub fn covering_degree(level: &LevelIdeal, field: &FieldSpec) -> Result<BigInt> {
    let g = gl2_of_level(level, field)?;
    Rat::new(g, q_of(field) - 1)?.to_integer_checked("covering degree")
}

fn check_level(r: &Discriminant, level: &LevelIdeal) -> Result<()> {
    if let Some((x, _)) = level.factors().iter().find(|(x, _)| r.contains(x)) {
        return Err(Error::domain(format!(
            "level place {} is ramified in the algebra",
            x.format(r.field())
        )));
    }
    Ok(())
}

/// Euler characteristic of the level-`I` curve:
/// `-2 #GL_2(O_I) / ((q - 1)(q^2 - 1)) * prod_{x in R} (q_x - 1)`.
pub fn chi_level(r: &Discriminant, level: &LevelIdeal) -> Result<BigInt> {
    check_level(r, level)?;
    let field = r.field();
    let q = q_of(field);
    let num = -2 * gl2_of_level(level, field)? * norm_product(r.places(), field);
    Rat::new(num, (&q - 1) * (&q * &q - 1))?.to_integer_checked("chi of the level curve")
}

/// Euler characteristic of `X^R`:
/// `-2/(q^2 - 1) prod (q_x - 1) + q/(q+1) 2^{#R} wp(R)`.
pub fn chi_bare(r: &Discriminant) -> Result<BigInt> {
    let field = r.field();
    let q = q_of(field);
    let main = Rat::new(-2 * norm_product(r.places(), field), &q * &q - 1)?;
    let elliptic = q_over_q_plus_1(field) * Rat::from_int(extra_autos(r));
    (main + elliptic).to_integer_checked("chi of X^R")
}

/// `chi_I - (deg(pi) chi_0 - deg(pi) q/(q+1) w)` with `w` the number of
/// points with extra automorphisms. Zero whenever the formulas agree.
pub fn riemann_hurwitz_residual(r: &Discriminant, level: &LevelIdeal) -> Result<BigInt> {
    let field = r.field();
    let chi_i = Rat::from_int(chi_level(r, level)?);
    let chi_0 = Rat::from_int(chi_bare(r)?);
    let deg_pi = Rat::from_int(covering_degree(level, field)?);
    let w = Rat::from_int(extra_autos(r));
    let rhs = &deg_pi * &chi_0 - &(&deg_pi * &q_over_q_plus_1(field)) * &w;
    (chi_i - rhs).to_integer_checked("Riemann-Hurwitz residual")
}

/// Genus of `X^R`:
/// `1 + (prod (q_x - 1) - q (q - 1) 2^{#R-1} wp(R)) / (q^2 - 1)`.
///
/// The result is checked to be a nonnegative integer divisible by `q`.
pub fn genus(r: &Discriminant) -> Result<BigInt> {
    genus_of_degrees(r.field().q(), &r.degrees())
}

/// [`genus`] from the degrees of `R` alone.
pub fn genus_of_degrees(q: u32, degrees: &[u32]) -> Result<BigInt> {
    if degrees.is_empty() || degrees.len() % 2 == 1 {
        return Err(Error::domain(format!(
            "#R must be even and positive, got {}",
            degrees.len()
        )));
    }
    let q = BigInt::from(q);
    let elliptic = &q * (&q - 1) * pow2(degrees.len() - 1) * wp_of_degrees(degrees);
    let g = Rat::one() + Rat::new(norms_of_degrees(&q, degrees) - elliptic, &q * &q - 1)?;
    let g = g.to_integer_checked("genus")?;
    if g.is_negative() {
        return Err(Error::invariant(format!("negative genus {g}")));
    }
    if !g.is_multiple_of(&q) {
        return Err(Error::invariant(format!(
            "genus {g} is not divisible by q = {q}"
        )));
    }
    Ok(g)
}

/// Genus through the splitting symbols of `R` in `F_{q^2} F`:
/// `1 + prod (q_x - 1)/(q^2 - 1) - (1/2) q/(q+1) prod (1 - (F_{q^2}F / x))`.
pub fn genus_artin_legendre_form(r: &Discriminant) -> Result<BigInt> {
    let field = r.field();
    let q = q_of(field);
    let volume = Rat::new(norm_product(r.places(), field), &q * &q - 1)?;
    let symbols: BigInt = r
        .places()
        .iter()
        .map(|x| BigInt::from(1 - artin_legendre_constant_ext(x) as i32))
        .product();
    let elliptic = Rat::new(1, 2)? * q_over_q_plus_1(field) * Rat::from_int(symbols);
    (Rat::one() + volume - elliptic).to_integer_checked("genus (splitting-symbol form)")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hyperelliptic {
    Yes,
    No,
    /// Only finiteness is known for even `q`.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub genus_zero: bool,
    pub hyperelliptic: Hyperelliptic,
}

/// Genus-zero and hyperelliptic classification of `X^R`.
///
/// Genus zero happens exactly when `deg(r) = 2`, or `q = 4` and `R` is the
/// set of all four degree-one places; the computed genus is checked against
/// that. For odd `q` the curve is hyperelliptic iff `deg(r) = 3`; for even
/// `q` and positive genus the answer is `Unknown`. Genus-zero curves are
/// reported as not hyperelliptic.
pub fn classify(r: &Discriminant) -> Result<Classification> {
    let g = genus(r)?;
    let q = r.field().q();
    let genus_zero = g.is_zero();
    let predicted =
        r.degree() == 2 || (q == 4 && r.cardinality() == 4 && r.degrees().iter().all(|&d| d == 1));
    if genus_zero != predicted {
        return Err(Error::invariant(format!(
            "genus {g} disagrees with the genus-zero characterization for R of degrees {:?}",
            r.degrees()
        )));
    }
    let hyperelliptic = if genus_zero {
        Hyperelliptic::No
    } else if q % 2 == 1 {
        if r.degree() == 3 {
            Hyperelliptic::Yes
        } else {
            Hyperelliptic::No
        }
    } else {
        Hyperelliptic::Unknown
    };
    Ok(Classification {
        genus_zero,
        hyperelliptic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;

    fn field(q: u32) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    fn disc(q: u32, degrees: &[u32]) -> Discriminant {
        let f = field(q);
        let o = Place::parse("T", &f).unwrap();
        Discriminant::from_degrees_in(&f, degrees, std::slice::from_ref(&o), &Budget::default())
            .or_else(|_| Discriminant::from_degrees_in(&f, degrees, &[], &Budget::default()))
            .unwrap()
    }

    fn o_t(q: u32) -> CharacteristicPlace {
        CharacteristicPlace::parse("T", &field(q)).unwrap()
    }

    fn deg1_level(q: u32, exp: u32) -> LevelIdeal {
        // the discriminants built by `disc` avoid T
        let f = field(q);
        LevelIdeal::new(vec![(Place::parse("T", &f).unwrap(), exp)]).unwrap()
    }

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn wp_examples() {
        let f2 = field(2);
        let p = |s| Place::parse(s, &f2).unwrap();
        assert_eq!(wp(std::iter::empty()), 1);
        assert_eq!(wp(&[p("T"), p("T^3+T+1")]), 1);
        assert_eq!(wp(&[p("T"), p("T^2+T+1")]), 0);
    }

    #[test]
    fn mass_examples() {
        assert_eq!(
            mass(&disc(2, &[1, 3]), &o_t(2)).unwrap(),
            Rat::new(7, 3).unwrap()
        );
        assert_eq!(mass_of_degrees(2, &[2, 2], 1).unwrap(), Rat::from_int(3));
        assert_eq!(class_number_of_degrees(2, &[2, 2], 1).unwrap(), int(3));
        assert_eq!(mass(&disc(3, &[1, 1]), &o_t(3)).unwrap(), Rat::from_int(1));
        let f2 = field(2);
        let r = Discriminant::from_polys(&f2, &["T", "T^2+T+1"]).unwrap();
        assert!(matches!(mass(&r, &o_t(2)), Err(Error::Domain(_))));
        assert!(matches!(class_number(&r, &o_t(2)), Err(Error::Domain(_))));
    }

    #[test]
    fn class_number_examples() {
        assert_eq!(class_number(&disc(2, &[1, 3]), &o_t(2)).unwrap(), int(5));
        assert_eq!(class_number(&disc(2, &[2, 5]), &o_t(2)).unwrap(), int(31));
        assert_eq!(class_number(&disc(3, &[2, 3]), &o_t(3)).unwrap(), int(52));
    }

    #[test]
    fn supersingular_examples() {
        let ss = supersingular_count(&disc(2, &[1, 7]), &o_t(2)).unwrap();
        assert_eq!(ss.count, int(45));
        assert_eq!(ss.field_size, int(4));
        assert_eq!(
            supersingular_count(&disc(3, &[1, 4]), &o_t(3))
                .unwrap()
                .count,
            int(40)
        );
        assert_eq!(
            supersingular_count(&disc(2, &[3, 3]), &o_t(2))
                .unwrap()
                .count,
            int(19)
        );
    }

    #[test]
    fn extra_automorphism_examples() {
        assert_eq!(extra_autos(&disc(2, &[1, 3])), int(4));
        assert_eq!(extra_autos(&disc(2, &[1, 2])), int(0));
        assert_eq!(extra_autos(&disc(4, &[1, 1, 1, 1])), int(16));
        assert_eq!(
            extra_auto_kind(&disc(2, &[1, 3]), &o_t(2)),
            Some(SheafKind::Supersingular)
        );
        let f2 = field(2);
        let o2 = CharacteristicPlace::parse("T^2+T+1", &f2).unwrap();
        assert_eq!(
            extra_auto_kind(&disc(2, &[1, 3]), &o2),
            Some(SheafKind::Ordinary)
        );
        assert_eq!(extra_auto_kind(&disc(2, &[1, 2]), &o_t(2)), None);
    }

    #[test]
    fn gl2_and_covering_examples() {
        assert_eq!(gl2_order(&int(2), 1).unwrap(), int(6));
        assert_eq!(gl2_order(&int(3), 1).unwrap(), int(48));
        assert_eq!(gl2_order(&int(2), 2).unwrap(), int(96));
        assert!(gl2_order(&int(1), 1).is_err());
        assert!(gl2_order(&int(2), 0).is_err());
        assert_eq!(
            covering_degree(&deg1_level(2, 1), &field(2)).unwrap(),
            int(6)
        );
        assert_eq!(
            covering_degree(&deg1_level(3, 1), &field(3)).unwrap(),
            int(24)
        );
        assert_eq!(
            covering_degree(&deg1_level(2, 2), &field(2)).unwrap(),
            int(96)
        );
    }

    #[test]
    fn chi_examples() {
        assert_eq!(
            chi_level(&disc(2, &[1, 2]), &deg1_level(2, 1)).unwrap(),
            int(-12)
        );
        assert_eq!(
            chi_level(&disc(2, &[1, 3]), &deg1_level(2, 1)).unwrap(),
            int(-28)
        );
        assert_eq!(
            chi_level(&disc(3, &[1, 1]), &deg1_level(3, 1)).unwrap(),
            int(-24)
        );
        assert_eq!(chi_bare(&disc(2, &[1, 2])).unwrap(), int(-2));
        assert_eq!(chi_bare(&disc(3, &[1, 1])).unwrap(), int(2));
        assert_eq!(chi_bare(&disc(2, &[2, 4])).unwrap(), int(-30));
        let f2 = field(2);
        let r = Discriminant::from_polys(&f2, &["T", "T^2+T+1"]).unwrap();
        assert!(matches!(
            chi_level(&r, &deg1_level(2, 1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn riemann_hurwitz_examples() {
        assert_eq!(
            riemann_hurwitz_residual(&disc(2, &[1, 2]), &deg1_level(2, 1)).unwrap(),
            int(0)
        );
        assert_eq!(
            riemann_hurwitz_residual(&disc(2, &[1, 3]), &deg1_level(2, 1)).unwrap(),
            int(0)
        );
        assert_eq!(
            riemann_hurwitz_residual(&disc(3, &[1, 1]), &deg1_level(3, 1)).unwrap(),
            int(0)
        );
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus(&disc(2, &[1, 5])).unwrap(), int(10));
        assert_eq!(genus(&disc(3, &[2, 3])).unwrap(), int(27));
        let f4 = field(4);
        let r = Discriminant::from_polys(&f4, &["T", "T+1", "T+w", "T+w^2"]).unwrap();
        assert_eq!(genus(&r).unwrap(), int(0));
        assert_eq!(
            genus_artin_legendre_form(&disc(2, &[1, 6])).unwrap(),
            int(22)
        );
        assert_eq!(
            genus_artin_legendre_form(&disc(2, &[1, 4])).unwrap(),
            int(6)
        );
        assert_eq!(
            genus_artin_legendre_form(&disc(3, &[1, 2])).unwrap(),
            int(3)
        );
    }

    #[test]
    fn classification_examples() {
        let c = classify(&disc(3, &[1, 1])).unwrap();
        assert!(c.genus_zero);
        assert_eq!(
            classify(&disc(3, &[1, 2])).unwrap().hyperelliptic,
            Hyperelliptic::Yes
        );
        let c = classify(&disc(2, &[2, 5])).unwrap();
        assert!(!c.genus_zero);
        assert_eq!(c.hyperelliptic, Hyperelliptic::Unknown);
        assert_eq!(
            classify(&disc(5, &[1, 3])).unwrap().hyperelliptic,
            Hyperelliptic::No
        );
    }
}
