//! Polynomials over `F_q` in the variable `T`.

use std::cmp::Ordering;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Fe, FieldSpec};

/// A polynomial with coefficients low degree first and no trailing zeros.
///
/// Ordering: by degree, then by coefficient codes from the leading term
/// down. For monic polynomials of equal degree this is the order of the
/// integer `sum c_i q^i`, which is also the enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Fe>,
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![Fe::ONE],
        }
    }

    /// The indeterminate `T`.
    pub fn t() -> Self {
        Poly {
            coeffs: vec![Fe::ZERO, Fe::ONE],
        }
    }

    pub fn constant(c: Fe) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds from coefficient codes, low degree first.
    pub fn from_codes(field: &FieldSpec, codes: &[u32]) -> Result<Self> {
        let coeffs = codes
            .iter()
            .map(|&c| field.element(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Fe> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Fe::ONE)
    }

    pub fn add(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let at = |p: &Poly, i: usize| p.coeffs.get(i).copied().unwrap_or(Fe::ZERO);
        Poly::from_coeffs((0..n).map(|i| f.add(at(self, i), at(other, i))).collect())
    }

    pub fn neg(&self, f: &FieldSpec) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly, f: &FieldSpec) -> Poly {
        self.add(&other.neg(f), f)
    }

    pub fn scale(&self, c: Fe, f: &FieldSpec) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &FieldSpec) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Euclidean division: `(s, r)` with `self = s * g + r`, `deg r < deg g`.
    pub fn divmod(&self, g: &Poly, f: &FieldSpec) -> Result<(Poly, Poly)> {
        let dg = g
            .degree()
            .ok_or_else(|| Error::domain("division by the zero polynomial"))?;
        let lead_inv = f.inv(g.leading().unwrap())?;
        let mut r = self.coeffs.clone();
        let mut quot = vec![Fe::ZERO; r.len().saturating_sub(dg)];
        while r.len() > dg {
            let top = *r.last().unwrap();
            let shift = r.len() - 1 - dg;
            if !top.is_zero() {
                let c = f.mul(top, lead_inv);
                quot[shift] = c;
                for (i, &b) in g.coeffs.iter().enumerate() {
                    r[shift + i] = f.sub(r[shift + i], f.mul(c, b));
                }
            }
            r.pop();
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(r)))
    }

    pub fn rem(&self, g: &Poly, f: &FieldSpec) -> Result<Poly> {
        Ok(self.divmod(g, f)?.1)
    }

    /// Scales to leading coefficient one; the zero polynomial is returned as is.
    pub fn make_monic(&self, f: &FieldSpec) -> Poly {
        match self.leading() {
            Some(c) => self.scale(f.inv(c).expect("leading coefficient is nonzero"), f),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor (`gcd(0, 0) = 0`).
    pub fn gcd(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.make_monic(f)
    }

    /// `self^exp mod m`, by repeated squaring.
    pub fn pow_mod(&self, mut exp: u64, m: &Poly, f: &FieldSpec) -> Result<Poly> {
        let mut base = self.rem(m, f)?;
        let mut acc = Poly::one().rem(m, f)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base, f).rem(m, f)?;
            }
            base = base.mul(&base, f).rem(m, f)?;
            exp >>= 1;
        }
        Ok(acc)
    }

    pub fn eval(&self, x: Fe, f: &FieldSpec) -> Fe {
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Renders in the variable `T`, leading term first, e.g. `T^2+2T+1` or `T+w^2`.
    pub fn format(&self, f: &FieldSpec) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (deg, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coef = f.format_elem(c);
            terms.push(match deg {
                0 => coef,
                _ => {
                    let coef = if c == Fe::ONE { String::new() } else { coef };
                    let var = if deg == 1 {
                        "T".to_string()
                    } else {
                        format!("T^{deg}")
                    };
                    format!("{coef}{var}")
                }
            });
        }
        terms.join("+")
    }

    /// Parses the output of [`Poly::format`]. Also accepts `*` between a
    /// coefficient and `T`, `-` for subtraction, and repeated degrees.
    pub fn parse(s: &str, f: &FieldSpec) -> Result<Poly> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::parse("empty polynomial"));
        }
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut negative = false;
        for (i, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !s[..i].ends_with('^') {
                terms.push((negative, &s[start..i]));
                negative = ch == '-';
                start = i + 1;
            } else if ch == '-' && i == 0 {
                negative = true;
                start = 1;
            }
        }
        terms.push((negative, &s[start..]));

        let mut acc = Poly::zero();
        for (negative, term) in terms {
            if term.is_empty() {
                return Err(Error::parse(format!("empty term in `{s}`")));
            }
            let (coef, deg) = match term.split_once('T') {
                None => (f.parse_elem(term)?, 0usize),
                Some((coef, power)) => {
                    let coef = coef.strip_suffix('*').unwrap_or(coef);
                    let coef = if coef.is_empty() {
                        Fe::ONE
                    } else {
                        f.parse_elem(coef)?
                    };
                    let deg = match power.strip_prefix('^') {
                        Some(k) => k
                            .parse()
                            .map_err(|_| Error::parse(format!("bad exponent in `{term}`")))?,
                        None if power.is_empty() => 1,
                        None => return Err(Error::parse(format!("bad term `{term}`"))),
                    };
                    (coef, deg)
                }
            };
            let coef = if negative { f.neg(coef) } else { coef };
            let mut v = vec![Fe::ZERO; deg + 1];
            v[deg] = coef;
            acc = acc.add(&Poly::from_coeffs(v), f);
        }
        Ok(acc)
    }
}

/// The monic polynomial of degree `degree` whose lower coefficients are the
/// base-`q` digits of `index`.
pub fn monic_from_index(field: &FieldSpec, degree: u32, index: u64) -> Poly {
    let q = field.q() as u64;
    let mut rest = index;
    let mut coeffs = Vec::with_capacity(degree as usize + 1);
    for _ in 0..degree {
        coeffs.push(field.element((rest % q) as u32).expect("digit below q"));
        rest /= q;
    }
    coeffs.push(Fe::ONE);
    Poly::from_coeffs(coeffs)
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `f | T^{q^n} - T` and `gcd(f, T^{q^{n/l}} - T) = 1` for
/// every prime `l | n`, where `n = deg f`.
pub fn is_irreducible(f: &Poly, field: &FieldSpec) -> Result<bool> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n as u64,
        _ => {
            return Err(Error::contract(format!(
                "irreducibility test needs deg >= 1, got `{}`",
                f.format(field)
            )))
        }
    };
    if !f.is_monic() {
        return Err(Error::contract(format!(
            "irreducibility test needs a monic input, got `{}`",
            f.format(field)
        )));
    }
    if n == 1 {
        return Ok(true);
    }
    let q = field.q() as u64;
    let t = Poly::t().rem(f, field)?;
    // frob[k] = T^{q^k} mod f
    let mut frob = vec![t.clone()];
    for k in 1..=n as usize {
        let next = frob[k - 1].pow_mod(q, f, field)?;
        frob.push(next);
    }
    if frob[n as usize] != t {
        return Ok(false);
    }
    for l in prime_divisors(n) {
        let h = frob[(n / l) as usize].sub(&t, field);
        if h.gcd(f, field) != Poly::one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All monic irreducible polynomials of `degree`, in ascending [`Poly`] order.
pub fn enumerate_monic_irreducibles(
    field: &FieldSpec,
    degree: u32,
    budget: &Budget,
) -> Result<Vec<Poly>> {
    if degree == 0 {
        return Err(Error::contract("enumeration degree must be at least 1"));
    }
    budget.check_enumeration(field.q(), degree)?;
    let total = (field.q() as u64).pow(degree);
    let mut out = Vec::new();
    for index in 0..total {
        let f = monic_from_index(field, degree, index);
        // Cheap filter: a root means a linear factor.
        if degree > 1 && field.elements().any(|x| f.eval(x, field).is_zero()) {
            continue;
        }
        if is_irreducible(&f, field)? {
            out.push(f);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, f: &FieldSpec) -> Poly {
        Poly::parse(s, f).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        assert_eq!(p("T+1", &f2).mul(&p("T+1", &f2), &f2), p("T^2+1", &f2));
        assert_eq!(p("T^2+T", &f2).gcd(&p("T", &f2), &f2), p("T", &f2));

        let f3 = FieldSpec::new(3).unwrap();
        let (s, r) = p("T^3+1", &f3).divmod(&p("T+1", &f3), &f3).unwrap();
        assert_eq!(s, p("T^2-T+1", &f3));
        assert_eq!(s.format(&f3), "T^2+2T+1");
        assert!(r.is_zero());
        assert!(p("T", &f3).divmod(&Poly::zero(), &f3).is_err());
    }

    #[test]
    fn irreducibility_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        assert!(is_irreducible(&p("T^2+T+1", &f2), &f2).unwrap());
        assert!(!is_irreducible(&p("T^2+1", &f2), &f2).unwrap());
        let f3 = FieldSpec::new(3).unwrap();
        assert!(is_irreducible(&p("T^2+1", &f3), &f3).unwrap());
        assert!(matches!(
            is_irreducible(&p("2T^2+1", &f3), &f3),
            Err(Error::Contract(_))
        ));
        assert!(matches!(
            is_irreducible(&p("1", &f3), &f3),
            Err(Error::Contract(_))
        ));
        // x^4 + x^2 + 1 = (x^2+x+1)^2 has no roots but is reducible
        assert!(!is_irreducible(&p("T^4+T^2+1", &f2), &f2).unwrap());
    }

    #[test]
    fn enumeration_examples() {
        let b = Budget::default();
        let f2 = FieldSpec::new(2).unwrap();
        let names = |v: Vec<Poly>, f: &FieldSpec| v.iter().map(|x| x.format(f)).collect::<Vec<_>>();
        assert_eq!(
            names(enumerate_monic_irreducibles(&f2, 1, &b).unwrap(), &f2),
            ["T", "T+1"]
        );
        assert_eq!(
            names(enumerate_monic_irreducibles(&f2, 3, &b).unwrap(), &f2),
            ["T^3+T+1", "T^3+T^2+1"]
        );
        let f3 = FieldSpec::new(3).unwrap();
        assert_eq!(enumerate_monic_irreducibles(&f3, 2, &b).unwrap().len(), 3);
        assert!(matches!(
            enumerate_monic_irreducibles(&f2, 13, &b),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn format_extension_coefficients() {
        let f4 = FieldSpec::new(4).unwrap();
        let w = f4.generator().unwrap();
        let poly = Poly::from_coeffs(vec![f4.mul(w, w), w, Fe::ONE]);
        assert_eq!(poly.format(&f4), "T^2+wT+w^2");
        assert_eq!(p("T^2+w*T+w^2", &f4), poly);
        assert!(Poly::parse("T+", &f4).is_err());
        assert!(Poly::parse("T^x", &f4).is_err());
    }

    #[test]
    fn ordering_matches_enumeration() {
        let f3 = FieldSpec::new(3).unwrap();
        let all: Vec<Poly> = (0..27).map(|i| monic_from_index(&f3, 3, i)).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(p("T+2", &f3) < p("T^2", &f3));
    }
}
