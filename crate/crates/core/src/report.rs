//! Tables and serialized reports.
//!
//! The reference columns (best known point counts and upper bounds for
//! curves of a given genus over `F_{q^2}`) are external data; they are read
//! from a CSV file keyed by `(q, genus)` and joined onto computed rows.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::invariants::{
    class_number_of_degrees, genus_of_degrees, CharacteristicPlace, InvariantReport,
};
use crate::places::count_places_of_degree;

pub const REFERENCE_HEADER: [&str; 4] = ["q", "genus", "max_known", "upper_bound"];

/// Known bounds for the number of `F_{q^2}`-rational points on a curve of
/// the given genus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub q: u32,
    pub genus: u64,
    pub max_known: u64,
    pub upper_bound: u64,
}

/// Reads reference rows from CSV with header `q,genus,max_known,upper_bound`.
pub fn load_reference(path: impl AsRef<Path>) -> Result<Vec<ReferenceRow>> {
    let file = std::fs::File::open(path)?;
    parse_reference(file)
}

pub fn parse_reference<R: Read>(input: R) -> Result<Vec<ReferenceRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let header = reader.headers().map_err(|e| Error::Reference {
        line: 1,
        message: e.to_string(),
    })?;
    if header.iter().ne(REFERENCE_HEADER) {
        return Err(Error::Reference {
            line: 1,
            message: format!(
                "expected header `{}`, got `{}`",
                REFERENCE_HEADER.join(","),
                header.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    let mut rows = Vec::new();
    let mut seen = HashSet::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Reference {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let row: ReferenceRow = record.deserialize(None).map_err(|e| Error::Reference {
            line,
            message: e.to_string(),
        })?;
        if row.max_known > row.upper_bound {
            return Err(Error::Reference {
                line,
                message: format!("max_known exceeds upper_bound in {row:?}"),
            });
        }
        if !seen.insert((row.q, row.genus)) {
            return Err(Error::Reference {
                line,
                message: format!("duplicate key q = {}, genus = {}", row.q, row.genus),
            });
        }
        rows.push(row);
    }
    Ok(rows)
}

/// One row of the comparison table: a pair of degrees for `R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub r_degrees: [u32; 2],
    #[serde(with = "crate::json_int")]
    pub genus: BigInt,
    #[serde(with = "crate::json_int")]
    pub supersingular: BigInt,
    pub realizable: bool,
    pub max_known: Option<u64>,
    pub upper_bound: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub q: u32,
    pub o: String,
    pub max_genus: u64,
    pub with_reference: bool,
    pub rows: Vec<TableRow>,
}

/// All `#R = 2` degree pairs `d1 <= d2` with genus at most `max_genus`,
/// ordered by smaller then larger degree.
///
/// Genus and supersingular count depend only on the degrees, so rows are
/// listed even when `F_q` has too few places to realize the pair with
/// distinct places avoiding `o` (over `F_2` there is a single place of
/// degree 2); such rows have `realizable = false` and can be dropped with
/// [`ComparisonTable::realizable_only`].
pub fn emit_comparison_table(
    field: &FieldSpec,
    o: &CharacteristicPlace,
    reference: Option<&[ReferenceRow]>,
    max_genus: u64,
    budget: &Budget,
) -> Result<ComparisonTable> {
    let q = field.q();
    let max_g = BigInt::from(max_genus);
    let o_degree = o.place().degree();
    let available = |d: u32| -> Result<u64> {
        budget.check_enumeration(q, d)?;
        let n = count_places_of_degree(field, d)?
            .to_u64()
            .unwrap_or(u64::MAX);
        Ok(n - u64::from(o_degree == d))
    };

    let mut rows = Vec::new();
    // the genus grows with each degree, so stop a line at the first overshoot
    for d1 in 1.. {
        if genus_of_degrees(q, &[d1, d1])? > max_g {
            break;
        }
        for d2 in d1.. {
            let g = genus_of_degrees(q, &[d1, d2])?;
            if g > max_g {
                break;
            }
            let realizable = if d1 == d2 {
                available(d1)? >= 2
            } else {
                available(d1)? >= 1 && available(d2)? >= 1
            };
            let supersingular = class_number_of_degrees(q, &[d1, d2], o_degree)?;
            let reference_row = reference.and_then(|rows| {
                rows.iter()
                    .find(|row| row.q == q && BigInt::from(row.genus) == g)
            });
            rows.push(TableRow {
                r_degrees: [d1, d2],
                genus: g,
                supersingular,
                realizable,
                max_known: reference_row.map(|r| r.max_known),
                upper_bound: reference_row.map(|r| r.upper_bound),
            });
        }
    }
    Ok(ComparisonTable {
        q,
        o: o.place().format(field),
        max_genus,
        with_reference: reference.is_some(),
        rows,
    })
}

fn opt_cell(v: Option<u64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

impl ComparisonTable {
    pub fn realizable_only(mut self) -> Self {
        self.rows.retain(|row| row.realizable);
        self
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        if self.with_reference {
            s.push_str("| R | g(X^R) | # supersingular points | max # known | upper bound |\n");
            s.push_str("|---|---|---|---|---|\n");
        } else {
            s.push_str("| R | g(X^R) | # supersingular points |\n");
            s.push_str("|---|---|---|\n");
        }
        for row in &self.rows {
            let [d1, d2] = row.r_degrees;
            write!(s, "| ({d1},{d2}) | {} | {} |", row.genus, row.supersingular).unwrap();
            if self.with_reference {
                write!(
                    s,
                    " {} | {} |",
                    opt_cell(row.max_known),
                    opt_cell(row.upper_bound)
                )
                .unwrap();
            }
            s.push('\n');
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("d1,d2,genus,supersingular,realizable");
        if self.with_reference {
            s.push_str(",max_known,upper_bound");
        }
        s.push('\n');
        for row in &self.rows {
            let [d1, d2] = row.r_degrees;
            write!(
                s,
                "{d1},{d2},{},{},{}",
                row.genus, row.supersingular, row.realizable
            )
            .unwrap();
            if self.with_reference {
                let cell = |v: Option<u64>| v.map(|v| v.to_string()).unwrap_or_default();
                write!(s, ",{},{}", cell(row.max_known), cell(row.upper_bound)).unwrap();
            }
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize")
    }
}

fn opt_str<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn ratio_decimal(r: &InvariantReport) -> String {
    r.ratio
        .as_ref()
        .map(|x| x.to_decimal4())
        .unwrap_or_default()
}

fn join_degrees(r: &InvariantReport) -> String {
    r.r_degrees
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Markdown table of scan or invariant reports.
pub fn reports_markdown(reports: &[InvariantReport]) -> String {
    let mut s = String::from("| R | places | genus | chi0 | mass | # supersingular | extra autos | ratio | ratio (dec) |\n");
    s.push_str("|---|---|---|---|---|---|---|---|---|\n");
    for r in reports {
        writeln!(
            s,
            "| ({}) | {} | {} | {} | {} | {} | {} | {} | {} |",
            join_degrees(r),
            r.r_polys.join(" "),
            r.genus,
            r.chi0,
            opt_str(&r.mass),
            opt_str(&r.supersingular),
            r.extra_autos,
            opt_str(&r.ratio),
            ratio_decimal(r),
        )
        .unwrap();
    }
    s
}

pub const REPORT_CSV_HEADER: &str =
    "q,r_degrees,r_polys,o,mass,class_number,supersingular,extra_autos,genus,chi0,ratio,ratio_decimal";

/// Plot-ready CSV; list-valued columns are space separated.
pub fn reports_csv(reports: &[InvariantReport]) -> String {
    let mut s = String::from(REPORT_CSV_HEADER);
    s.push('\n');
    for r in reports {
        writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.q,
            r.r_degrees
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(" "),
            r.r_polys.join(" "),
            opt_str(&r.o),
            opt_str(&r.mass),
            opt_str(&r.class_number),
            opt_str(&r.supersingular),
            r.extra_autos,
            r.genus,
            r.chi0,
            opt_str(&r.ratio),
            ratio_decimal(r),
        )
        .unwrap();
    }
    s
}
