//! Sweeps over all discriminants up to a degree bound.
//!
//! Candidate sets are enumerated sequentially in canonical order; the
//! per-candidate evaluation runs on the rayon pool when the `parallel`
//! feature is enabled. Output order never depends on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::{CharacteristicPlace, Discriminant, InvariantReport};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::places::{Place, PlaceCatalog};

/// How a batch of independent evaluations is executed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    /// Rayon work-stealing; sequential if built without the `parallel` feature.
    #[default]
    Parallel,
    Sequential,
}

/// Maps `f` over `items`, preserving order. Stops at the first error in
/// sequential mode; in parallel mode some error is returned if any occurs.
pub fn evaluate<T, U, F>(items: &[T], exec: Execution, f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Which sizes of `R` a sweep includes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cardinality {
    Exactly(usize),
    AnyEven,
}

impl Cardinality {
    pub fn exactly(n: usize) -> Result<Self> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::domain(format!(
                "#R must be even and at least 2, got {n}"
            )));
        }
        Ok(Cardinality::Exactly(n))
    }

    /// `all` or an even integer `>= 2`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "all" => Ok(Cardinality::AnyEven),
            n => Self::exactly(
                n.parse()
                    .map_err(|_| Error::parse(format!("bad cardinality `{s}`")))?,
            ),
        }
    }

    fn accepts(self, n: usize) -> bool {
        match self {
            Cardinality::Exactly(k) => n == k,
            Cardinality::AnyEven => n >= 2 && n.is_multiple_of(2),
        }
    }

    fn can_grow(self, n: usize) -> bool {
        match self {
            Cardinality::Exactly(k) => n < k,
            Cardinality::AnyEven => true,
        }
    }
}

/// Every valid `R` built from `catalog` with `deg(r) <= max_disc_degree`,
/// skipping `avoid`, sorted canonically.
pub fn enumerate_discriminants(
    catalog: &PlaceCatalog,
    max_disc_degree: u32,
    cardinality: Cardinality,
    avoid: &[Place],
) -> Result<Vec<Discriminant>> {
    if max_disc_degree >= 2 && catalog.max_degree() + 1 < max_disc_degree {
        return Err(Error::contract(format!(
            "a sweep to deg(r) = {max_disc_degree} needs places up to degree {}, catalog has {}",
            max_disc_degree - 1,
            catalog.max_degree()
        )));
    }
    let candidates: Vec<&Place> = catalog.all().filter(|x| !avoid.contains(x)).collect();
    let mut found = Vec::new();
    let mut chosen = Vec::new();
    collect(
        &candidates,
        0,
        0,
        max_disc_degree,
        cardinality,
        &mut chosen,
        &mut found,
    );

    let field = catalog.field();
    let mut out = found
        .into_iter()
        .map(|places| Discriminant::new(field, crate::places::PlaceSet::new(places)?))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(Discriminant::canonical_cmp);
    Ok(out)
}

fn collect(
    candidates: &[&Place],
    start: usize,
    degree: u32,
    max_degree: u32,
    cardinality: Cardinality,
    chosen: &mut Vec<Place>,
    found: &mut Vec<Vec<Place>>,
) {
    if cardinality.accepts(chosen.len()) {
        found.push(chosen.clone());
    }
    if !cardinality.can_grow(chosen.len()) {
        return;
    }
    for (i, x) in candidates.iter().enumerate().skip(start) {
        let d = degree + x.degree();
        // candidates are sorted by degree
        if d > max_degree {
            break;
        }
        chosen.push((*x).clone());
        collect(candidates, i + 1, d, max_degree, cardinality, chosen, found);
        chosen.pop();
    }
}

/// Reports for every valid `R` avoiding `o` with `deg(r) <= max_disc_degree`,
/// in canonical order. The supersingular-to-genus ratio tends to `q_o - 1`.
pub fn optimality_scan(
    field: &FieldSpec,
    o: &CharacteristicPlace,
    max_disc_degree: u32,
    cardinality: Cardinality,
    exec: Execution,
    budget: &Budget,
) -> Result<Vec<InvariantReport>> {
    if max_disc_degree < 2 {
        return Ok(Vec::new());
    }
    let catalog = PlaceCatalog::build(field, max_disc_degree - 1, budget)?;
    let discs = enumerate_discriminants(
        &catalog,
        max_disc_degree,
        cardinality,
        std::slice::from_ref(o.place()),
    )?;
    evaluate(&discs, exec, |r| InvariantReport::compute(r, Some(o)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;
    use num_bigint::BigInt;

    fn scan(q: u32, max: u32, card: Cardinality, exec: Execution) -> Vec<InvariantReport> {
        let f = FieldSpec::new(q).unwrap();
        let o = CharacteristicPlace::parse("T", &f).unwrap();
        optimality_scan(&f, &o, max, card, exec, &Budget::default()).unwrap()
    }

    #[test]
    fn q2_scan_examples() {
        let reports = scan(2, 5, Cardinality::Exactly(2), Execution::Parallel);
        let r23 = reports.iter().find(|r| r.r_degrees == [2, 3]).unwrap();
        assert_eq!(r23.genus, BigInt::from(8));
        assert_eq!(r23.supersingular, Some(BigInt::from(7)));
        assert_eq!(r23.ratio, Some(Rat::new(7, 8).unwrap()));
        assert!(reports.iter().all(|r| r.r_degrees != [1, 1]));
        assert!(reports
            .windows(2)
            .all(|w| w[0].disc_degree() <= w[1].disc_degree()));

        let reports = scan(2, 7, Cardinality::Exactly(2), Execution::Sequential);
        let r34 = reports.iter().find(|r| r.r_degrees == [3, 4]).unwrap();
        assert_eq!(r34.ratio, Some(Rat::new(35, 36).unwrap()));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        for card in [Cardinality::Exactly(2), Cardinality::AnyEven] {
            assert_eq!(
                scan(3, 6, card, Execution::Parallel),
                scan(3, 6, card, Execution::Sequential)
            );
        }
    }

    #[test]
    fn enumeration_counts() {
        let f2 = FieldSpec::new(2).unwrap();
        let cat = PlaceCatalog::build(&f2, 3, &Budget::default()).unwrap();
        // pairs from {T, T+1, T^2+T+1, T^3+T+1, T^3+T^2+1} with degree sum <= 4:
        // (1,1), (1,2) x2, (1,3) x4
        let all = enumerate_discriminants(&cat, 4, Cardinality::Exactly(2), &[]).unwrap();
        assert_eq!(all.len(), 7);
        assert!(matches!(
            enumerate_discriminants(&cat, 6, Cardinality::AnyEven, &[]),
            Err(Error::Contract(_))
        ));
        assert!(Cardinality::parse("3").is_err());
        assert_eq!(Cardinality::parse("all").unwrap(), Cardinality::AnyEven);
    }
}
