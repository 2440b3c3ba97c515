//! Random instance generators and brute-force oracles shared by the
//! integration tests. The oracles only use term lists and rational
//! arithmetic, never the library's algorithms.

#![allow(dead_code)]

use bisum_core::rat::int;
use bisum_core::{BPoly, Rat, RatFunc, UPoly};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn b(ts: &[(i64, u32, u32)]) -> BPoly {
    BPoly::from_i64_terms(ts)
}

pub fn rf(n: BPoly, d: BPoly) -> RatFunc {
    RatFunc::new(n, d).unwrap()
}

/// Direct evaluation from the term list.
pub fn eval(p: &BPoly, x: &Rat, y: &Rat) -> Rat {
    p.terms().fold(Rat::zero(), |acc, (m, c)| {
        acc + c * pow(x, m.x) * pow(y, m.y)
    })
}

fn pow(r: &Rat, e: u32) -> Rat {
    (0..e).fold(Rat::one(), |acc, _| acc * r)
}

fn total_degree(p: &BPoly) -> u32 {
    p.terms().map(|(m, _)| m.x + m.y).max().unwrap_or(0)
}

/// Whether `f(x, y) = g(x + m, y + n)`, by evaluation on a grid large enough
/// to decide a polynomial identity of this degree.
pub fn is_shift(f: &BPoly, g: &BPoly, m: i64, n: i64) -> bool {
    let d = total_degree(f).max(total_degree(g)) as i64;
    for i in 0..=d {
        for j in 0..=d {
            let (x, y) = (int(i), int(j));
            if eval(f, &x, &y) != eval(g, &(&x + int(m)), &(&y + int(n))) {
                return false;
            }
        }
    }
    true
}

/// All `(m, n)` with `|m|, |n| <= r` and `f = g(x + m, y + n)`.
pub fn shift_scan(f: &BPoly, g: &BPoly, r: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for m in -r..=r {
        for n in -r..=r {
            if is_shift(f, g, m, n) {
                out.push((m, n));
            }
        }
    }
    out
}

/// Degree of `gcd(a, b)` over Q by the Euclidean algorithm on coefficient
/// vectors (low degree first).
pub fn gcd_degree(a: &[Rat], b: &[Rat]) -> usize {
    let trim = |mut v: Vec<Rat>| {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    };
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        // a mod b
        while a.len() >= b.len() {
            let q = a.last().unwrap() / b.last().unwrap();
            let off = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[off + i] = &a[off + i] - &q * c;
            }
            a = trim(a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Coefficients of `p(x + s)`, low degree first, by expanding binomials.
pub fn shifted_coeffs(p: &UPoly, s: i64) -> Vec<Rat> {
    let c = p.coeffs();
    let mut out = vec![Rat::zero(); c.len()];
    for (k, ck) in c.iter().enumerate() {
        let mut binom = Rat::one();
        for i in 0..=k {
            // binom = C(k, i)
            out[i] = &out[i] + ck * &binom * pow(&int(s), (k - i) as u32);
            binom = binom * int((k - i) as i64) / int(i as i64 + 1);
        }
    }
    out
}

pub fn small(r: &mut ChaCha8Rng, lim: i64) -> i64 {
    r.random_range(-lim..=lim)
}

pub fn nonzero(r: &mut ChaCha8Rng, lim: i64) -> i64 {
    loop {
        let c = small(r, lim);
        if c != 0 {
            return c;
        }
    }
}

/// Random polynomial with total degree at most `deg`.
pub fn random_poly(r: &mut ChaCha8Rng, deg: u32, lim: i64) -> BPoly {
    let mut ts = Vec::new();
    for i in 0..=deg {
        for j in 0..=deg - i {
            if r.random_bool(0.6) {
                ts.push((small(r, lim), i, j));
            }
        }
    }
    b(&ts)
}

pub fn random_upoly(r: &mut ChaCha8Rng, deg: usize, lim: i64) -> UPoly {
    UPoly::from_i64s(&(0..=deg).map(|_| small(r, lim)).collect::<Vec<_>>())
}

pub fn pick<'a, T>(r: &mut ChaCha8Rng, xs: &'a [T]) -> &'a T {
    &xs[r.random_range(0..xs.len())]
}

/// Irreducible polynomials over Q, each with a short reason.
pub fn irreducible_pool() -> Vec<BPoly> {
    vec![
        // degree one in some variable with coprime coefficients
        b(&[(1, 1, 0), (1, 0, 1)]),
        b(&[(1, 0, 1), (-2, 1, 0), (1, 0, 0)]),
        b(&[(1, 1, 0), (2, 0, 1), (1, 0, 0)]),
        b(&[(1, 0, 1), (1, 2, 0), (1, 0, 0)]),
        b(&[(1, 1, 1), (1, 0, 0)]),
        b(&[(1, 1, 0), (1, 0, 2)]),
        b(&[(1, 1, 0), (3, 0, 0)]),
        // nondegenerate conics with a nonzero constant or no real point
        b(&[(1, 2, 0), (1, 0, 2), (1, 0, 0)]),
        b(&[(1, 2, 0), (2, 1, 1), (1, 0, 2), (-2, 0, 0)]),
        b(&[(1, 2, 0), (1, 0, 2)]),
        // discriminant in y is not a square in Q[x]
        b(&[(1, 0, 2), (-1, 3, 0), (-1, 0, 0)]),
        // y-free
        b(&[(1, 2, 0), (1, 0, 0)]),
    ]
}

/// A random member of the pool shifted by `(m, n)` with `|m|, |n| <= s`.
pub fn shifted_member(r: &mut ChaCha8Rng, pool: &[BPoly], s: i64) -> BPoly {
    let p = pick(r, pool).clone();
    p.shift(small(r, s), small(r, s))
}
