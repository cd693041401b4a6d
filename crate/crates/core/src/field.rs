//! The finite field `F_q`, `q = p^e`.
//!
//! Elements are stored as a byte code `sum a_i p^i`, where `a_0 + a_1 w + ...`
//! is the representative modulo a fixed monic polynomial of degree `e` over
//! `F_p`, and `w` is the class of the indeterminate. All arithmetic goes
//! through lookup tables built once per [`FieldSpec`]; with `q <= 256` they
//! stay small.

use std::fmt;
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};

/// An element of some `F_q`, by code. Only meaningful together with the
/// [`FieldSpec`] that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(u8);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn code(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug)]
struct Tables {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus over `F_p`, low degree first; `None` when `e == 1`.
    modulus: Option<Vec<u32>>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// `exp[k] = w^k` for `0 <= k < q - 1`; populated only when `e > 1`.
    exp: Vec<u8>,
    /// Inverse of `exp`; `log[0]` is unused.
    log: Vec<u32>,
}

/// The base field `F_q`. Cheap to clone.
#[derive(Clone)]
pub struct FieldSpec {
    t: Arc<Tables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.t.p)
            .field("e", &self.t.e)
            .field("modulus", &self.t.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        // The modulus is a function of (p, e).
        self.t.p == other.t.p && self.t.e == other.t.e
    }
}

impl Eq for FieldSpec {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^e` with `p` prime, if possible.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

// Dense polynomial helpers over F_p, used only while building tables.
mod fp {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    /// Remainder of `a` modulo the monic `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - lead * c) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn decode(code: u32, p: u32, len: u32) -> Vec<u32> {
        let mut c = code;
        let mut out = Vec::with_capacity(len as usize);
        for _ in 0..len {
            out.push(c % p);
            c /= p;
        }
        trim(out)
    }

    pub fn encode(a: &[u32], p: u32) -> u32 {
        a.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    /// Monic polynomial of degree `deg` whose lower coefficients are the
    /// base-`p` digits of `index`.
    pub fn monic(index: u32, p: u32, deg: u32) -> Vec<u32> {
        let mut v = decode(index, p, deg);
        v.resize(deg as usize, 0);
        v.push(1);
        v
    }

    /// Exhaustive check: no monic factor of degree `1..=deg/2`.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let deg = (m.len() - 1) as u32;
        for d in 1..=deg / 2 {
            for idx in 0..p.pow(d) {
                if rem(m, &monic(idx, p, d), p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl FieldSpec {
    /// Builds `F_q` under the default [`Budget`].
    pub fn new(q: u32) -> Result<Self> {
        Self::with_budget(q, &Budget::default())
    }

    pub fn with_budget(q: u32, budget: &Budget) -> Result<Self> {
        let (p, e) =
            prime_power(q).ok_or_else(|| Error::domain(format!("q = {q} is not a prime power")))?;
        if q > budget.max_q {
            return Err(Error::Budget {
                what: format!("field of size {q}"),
                budget: "q",
                requested: q as u128,
                limit: budget.max_q as u128,
            });
        }
        let modulus = (e > 1).then(|| Self::choose_modulus(p, e));
        let n = q as usize;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for a in 0..q {
            let pa = fp::decode(a, p, e);
            for b in 0..q {
                let pb = fp::decode(b, p, e);
                let mut s = vec![0u32; e as usize];
                for (i, c) in pa.iter().enumerate() {
                    s[i] += c;
                }
                for (i, c) in pb.iter().enumerate() {
                    s[i] = (s[i] + c) % p;
                }
                add[(a * q + b) as usize] = fp::encode(&fp::trim(s), p) as u8;
                let prod = fp::mul(&pa, &pb, p);
                let prod = match &modulus {
                    Some(m) => fp::rem(&prod, m, p),
                    None => prod,
                };
                mul[(a * q + b) as usize] = fp::encode(&prod, p) as u8;
            }
        }
        let mut neg = vec![0u8; n];
        let mut inv = vec![0u8; n];
        for a in 0..q {
            for b in 0..q {
                if add[(a * q + b) as usize] == 0 {
                    neg[a as usize] = b as u8;
                }
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b as u8;
                }
            }
        }
        let (mut exp, mut log) = (Vec::new(), vec![0u32; n]);
        if e > 1 {
            // w has code p (the polynomial x).
            let w = p as u8;
            let mut x = 1u8;
            for k in 0..q - 1 {
                exp.push(x);
                log[x as usize] = k;
                x = mul[(x as u32 * q + w as u32) as usize];
            }
        }
        Ok(FieldSpec {
            t: Arc::new(Tables {
                p,
                e,
                q,
                modulus,
                add,
                mul,
                neg,
                inv,
                exp,
                log,
            }),
        })
    }

    /// Least monic polynomial of degree `e` over `F_p` (by coefficient code)
    /// that is irreducible and has the class of `x` as a generator of the
    /// multiplicative group.
    fn choose_modulus(p: u32, e: u32) -> Vec<u32> {
        let q = p.pow(e);
        (0..p.pow(e))
            .map(|idx| fp::monic(idx, p, e))
            .find(|m| {
                if m[0] == 0 || !fp::is_irreducible(m, p) {
                    return false;
                }
                let mut x = vec![1u32];
                for k in 1..q {
                    x = fp::rem(&fp::mul(&x, &[0, 1], p), m, p);
                    if x == [1] {
                        return k == q - 1;
                    }
                }
                false
            })
            .expect("a primitive polynomial exists for every degree")
    }

    pub fn p(&self) -> u32 {
        self.t.p
    }

    pub fn e(&self) -> u32 {
        self.t.e
    }

    pub fn q(&self) -> u32 {
        self.t.q
    }

    /// The defining polynomial over `F_p` (low degree first), when `e > 1`.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.t.modulus.as_deref()
    }

    pub fn element(&self, code: u32) -> Result<Fe> {
        if code < self.t.q {
            Ok(Fe(code as u8))
        } else {
            Err(Error::domain(format!(
                "{code} is not an element code of F_{}",
                self.t.q
            )))
        }
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.t.p as i64) as u8)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.t.q).map(|c| Fe(c as u8))
    }

    /// The generator `w` of `F_q^*` used for printing; `None` for prime fields.
    pub fn generator(&self) -> Option<Fe> {
        (self.t.e > 1).then(|| Fe(self.t.p as u8))
    }

    fn idx(&self, a: Fe, b: Fe) -> usize {
        a.0 as usize * self.t.q as usize + b.0 as usize
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.t.add[self.idx(a, b)])
    }

    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.t.neg[a.0 as usize])
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.t.mul[self.idx(a, b)])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            Err(Error::domain("inversion of zero"))
        } else {
            Ok(Fe(self.t.inv[a.0 as usize]))
        }
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, mut n: u64) -> Fe {
        let (mut base, mut acc) = (a, Fe::ONE);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Renders an element: an integer in `0..p` for prime fields, otherwise
    /// `0`, `1`, `w` or `w^k`.
    pub fn format_elem(&self, a: Fe) -> String {
        if self.t.e == 1 || a.0 <= 1 {
            return a.0.to_string();
        }
        match self.t.log[a.0 as usize] {
            1 => "w".to_string(),
            k => format!("w^{k}"),
        }
    }

    /// Parses `w`, `w^k` or a non-negative integer (reduced mod `p`).
    pub fn parse_elem(&self, s: &str) -> Result<Fe> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('w') {
            if self.t.e == 1 {
                return Err(Error::parse(format!(
                    "`w` is not defined over the prime field F_{}",
                    self.t.p
                )));
            }
            let k: u64 = match rest.strip_prefix('^') {
                Some(k) => k
                    .parse()
                    .map_err(|_| Error::parse(format!("bad exponent in `{s}`")))?,
                None if rest.is_empty() => 1,
                None => return Err(Error::parse(format!("bad field element `{s}`"))),
            };
            return Ok(Fe(self.t.exp[(k % (self.t.q as u64 - 1)) as usize]));
        }
        let n: u64 = s
            .parse()
            .map_err(|_| Error::parse(format!("bad field element `{s}`")))?;
        Ok(self.from_int((n % self.t.p as u64) as i64))
    }
}
