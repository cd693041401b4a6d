use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::formulas::{
    chi_bare, class_number, extra_auto_kind, extra_autos, genus, mass, supersingular_count,
    SheafKind,
};
use super::{CharacteristicPlace, Discriminant};
use crate::error::{Error, Result};
use crate::json_int;
use crate::rat::Rat;

/// Every invariant of one `(q, R, o)` triple. The `o`-dependent fields are
/// `None` when no characteristic place is given; `ratio` is also `None` for
/// genus zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub q: u32,
    pub r_degrees: Vec<u32>,
    pub r_polys: Vec<String>,
    pub o: Option<String>,
    pub mass: Option<Rat>,
    #[serde(with = "json_int::opt")]
    pub class_number: Option<BigInt>,
    #[serde(with = "json_int::opt")]
    pub supersingular: Option<BigInt>,
    /// Size of the field `F_o^(2)` over which all supersingular points are rational.
    #[serde(with = "json_int::opt")]
    pub ss_field_size: Option<BigInt>,
    #[serde(with = "json_int")]
    pub extra_autos: BigInt,
    pub extra_auto_kind: Option<SheafKind>,
    #[serde(with = "json_int")]
    pub genus: BigInt,
    #[serde(with = "json_int")]
    pub chi0: BigInt,
    /// Supersingular points per unit of genus.
    pub ratio: Option<Rat>,
}

impl InvariantReport {
    pub fn compute(r: &Discriminant, o: Option<&CharacteristicPlace>) -> Result<Self> {
        let field = r.field();
        let g = genus(r)?;
        let chi0 = chi_bare(r)?;
        if chi0 != BigInt::from(2) - 2 * &g {
            return Err(Error::invariant(format!("chi = {chi0} but genus = {g}")));
        }
        let mut report = InvariantReport {
            q: field.q(),
            r_degrees: r.degrees(),
            r_polys: r.poly_strings(),
            o: None,
            mass: None,
            class_number: None,
            supersingular: None,
            ss_field_size: None,
            extra_autos: extra_autos(r),
            extra_auto_kind: None,
            genus: g,
            chi0,
            ratio: None,
        };
        if let Some(o) = o {
            let m = mass(r, o)?;
            let c = class_number(r, o)?;
            let ss = supersingular_count(r, o)?;
            if ss.count != c {
                return Err(Error::invariant(
                    "supersingular count differs from the class number",
                ));
            }
            if Rat::from_int(c.clone()) < m {
                return Err(Error::invariant(format!("class number {c} below mass {m}")));
            }
            report.ratio = if report.genus.is_zero() {
                None
            } else {
                Some(Rat::new(ss.count.clone(), report.genus.clone())?)
            };
            report.o = Some(o.place().format(field));
            report.mass = Some(m);
            report.class_number = Some(c);
            report.supersingular = Some(ss.count);
            report.ss_field_size = Some(ss.field_size);
            report.extra_auto_kind = extra_auto_kind(r, o);
        }
        Ok(report)
    }

    /// `deg(r)`.
    pub fn disc_degree(&self) -> u32 {
        self.r_degrees.iter().sum()
    }
}
