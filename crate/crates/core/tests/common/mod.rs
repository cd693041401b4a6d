//! Brute-force reference computations, written without the library's
//! field and polynomial code.

#![allow(dead_code)]

use std::collections::HashSet;

/// `F_2`, `F_3` or `F_4`, elements coded `a0 + p*a1` (for `F_4`, `w^2 = w + 1`).
#[derive(Clone, Copy, Debug)]
pub struct Small {
    pub q: u8,
}

impl Small {
    pub fn new(q: u8) -> Self {
        assert!(matches!(q, 2..=4));
        Small { q }
    }

    pub fn add(self, a: u8, b: u8) -> u8 {
        if self.q == 3 {
            (a + b) % 3
        } else {
            a ^ b
        }
    }

    pub fn neg(self, a: u8) -> u8 {
        if self.q == 3 {
            (3 - a) % 3
        } else {
            a
        }
    }

    pub fn mul(self, a: u8, b: u8) -> u8 {
        match self.q {
            2 => a & b,
            3 => (a * b) % 3,
            _ => {
                let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
                let c2 = a1 & b1;
                let c1 = (a0 & b1) ^ (a1 & b0) ^ c2;
                let c0 = (a0 & b0) ^ c2;
                c0 | (c1 << 1)
            }
        }
    }
}

/// Product of two coefficient vectors (lowest degree first).
pub fn pmul(f: Small, a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

/// Remainder modulo a monic `m`.
pub fn prem(f: Small, a: &[u8], m: &[u8]) -> Vec<u8> {
    let n = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > n {
        let lead = r.pop().unwrap();
        let shift = r.len() - n;
        for k in 0..n {
            r[shift + k] = f.add(r[shift + k], f.neg(f.mul(lead, m[k])));
        }
    }
    r.resize(n, 0);
    r
}

/// All monic polynomials of degree `d` as coefficient vectors.
pub fn monics(f: Small, d: usize) -> Vec<Vec<u8>> {
    let q = f.q as usize;
    (0..q.pow(d as u32))
        .map(|mut i| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push((i % q) as u8);
                i /= q;
            }
            c.push(1);
            c
        })
        .collect()
}

/// Monic irreducibles of degree `d`: monic polynomials that are not a
/// product of two monic polynomials of positive degree.
pub fn irreducibles_by_sieve(f: Small, d: usize) -> Vec<Vec<u8>> {
    let mut reducible = HashSet::new();
    for i in 1..=d / 2 {
        for a in monics(f, i) {
            for b in monics(f, d - i) {
                reducible.insert(pmul(f, &a, &b));
            }
        }
    }
    monics(f, d)
        .into_iter()
        .filter(|p| !reducible.contains(p))
        .collect()
}

/// `#GL_2(F_p[T] / P^e)` by testing every matrix, where `q_x = q^deg P`.
pub fn gl2_brute(f: Small, p: &[u8], e: u32) -> u64 {
    let mut m = vec![1u8];
    for _ in 0..e {
        m = pmul(f, &m, p);
    }
    let n = m.len() - 1;
    let q = f.q as usize;
    let ring: Vec<Vec<u8>> = (0..q.pow(n as u32))
        .map(|mut i| {
            (0..n)
                .map(|_| {
                    let c = (i % q) as u8;
                    i /= q;
                    c
                })
                .collect()
        })
        .collect();
    // units: elements not divisible by P
    let unit: Vec<bool> = ring
        .iter()
        .map(|x| prem(f, x, p).iter().any(|&c| c != 0))
        .collect();
    let prods: Vec<Vec<usize>> = (0..ring.len())
        .map(|i| {
            (0..ring.len())
                .map(|j| index_of(f, &prem(f, &pmul(f, &ring[i], &ring[j]), &m)))
                .collect()
        })
        .collect();
    let sub = |a: usize, b: usize| -> usize {
        let d: Vec<u8> = ring[a]
            .iter()
            .zip(&ring[b])
            .map(|(&x, &y)| f.add(x, f.neg(y)))
            .collect();
        index_of(f, &d)
    };
    let size = ring.len();
    let mut count = 0;
    for a in 0..size {
        for b in 0..size {
            for c in 0..size {
                for d in 0..size {
                    if unit[sub(prods[a][d], prods[b][c])] {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

fn index_of(f: Small, x: &[u8]) -> usize {
    x.iter()
        .rev()
        .fold(0, |acc, &c| acc * f.q as usize + c as usize)
}

/// Kronecker symbol `(a/p)` for prime `p`: a square-root search for odd
/// `p`, the residue of `a` mod 8 for `p = 2`.
pub fn legendre_brute(a: i64, p: u64) -> i8 {
    if p == 2 {
        return match a.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        0
    } else if (1..p).any(|x| x * x % p == a) {
        1
    } else {
        -1
    }
}

/// Shimura-curve genus over Q from the Riemann-Hurwitz count of elliptic
/// points, with symbols computed by brute force.
pub fn shimura_genus_brute(d: u64) -> Option<i64> {
    let mut primes = Vec::new();
    let mut n = d;
    let mut p = 2;
    while n > 1 {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return None;
            }
            primes.push(p);
        }
        p += 1;
    }
    if primes.len() % 2 == 1 || primes.is_empty() {
        return None;
    }
    let phi: i64 = primes.iter().map(|&p| p as i64 - 1).product();
    let e2: i64 = primes
        .iter()
        .map(|&p| {
            if p == 2 {
                1
            } else {
                1 - legendre_brute(-4, p) as i64
            }
        })
        .product();
    let e3: i64 = primes
        .iter()
        .map(|&p| 1 - legendre_brute(-3, p) as i64)
        .product();
    let twelve_g = 12 + phi - 3 * e2 - 4 * e3;
    assert_eq!(twelve_g % 12, 0, "d = {d}");
    Some(twelve_g / 12)
}
