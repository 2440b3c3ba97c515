//! Univariate factorization over Z: modular factorization, Hensel lifting,
//! and exhaustive recombination.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{Fp, FpPoly};
use crate::upoly::UPoly;

type ZPoly = Vec<BigInt>;

fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn lift_fp(a: &FpPoly) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn add_scaled(a: &ZPoly, b: &FpPoly, s: &BigInt, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).map_or_else(BigInt::zero, |&c| BigInt::from(c) * s);
            (x + y).mod_floor(m)
        })
        .collect();
    trim(out)
}

/// Lifts `f ≡ g0 * h0 (mod p)` to `f ≡ g * h (mod p^k)` with `g` monic and
/// `lc(h) = lc(f)`.
fn hensel_lift(fp: Fp, f: &ZPoly, g0: &FpPoly, h0: &FpPoly, k: u32) -> (ZPoly, ZPoly) {
    let p = BigInt::from(fp.p);
    let modulus = p.pow(k);
    let (_, _s, t) = fp.ext_gcd(g0, h0);
    let mut g = lift_fp(g0);
    let mut h = lift_fp(h0);
    *h.last_mut().unwrap() = f.last().unwrap().mod_floor(&modulus);
    let mut pj = p.clone();
    for _ in 1..k {
        let err = zmod(&sub(f, &zmul(&g, &h)), &modulus);
        let e: ZPoly = err.iter().map(|c| c / &pj).collect();
        let e = fp.from_ints(&e);
        if !e.is_empty() {
            let b = fp.rem(&fp.mul(&t, &e), g0);
            let (a, r) = fp.div_rem(&fp.sub(&e, &fp.mul(&b, h0)), g0);
            debug_assert!(r.is_empty());
            g = add_scaled(&g, &b, &pj, &modulus);
            h = add_scaled(&h, &a, &pj, &modulus);
        }
        pj *= &p;
    }
    (g, h)
}

fn sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

fn primitive(a: ZPoly) -> ZPoly {
    let mut g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if a.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    a.into_iter().map(|c| c / &g).collect()
}

/// Quotient of integer polynomials when `d` divides `a` over Z.
fn zdiv(a: &ZPoly, d: &ZPoly) -> Option<ZPoly> {
    let (q, r) = UPoly::from_ints(a).div_rem(&UPoly::from_ints(d));
    if !r.is_zero() || !q.is_integral() {
        return None;
    }
    Some(q.coeffs().iter().map(|c| c.to_integer()).collect())
}

fn choose_prime(f: &ZPoly) -> (Fp, FpPoly) {
    let lc = f.last().unwrap();
    let mut p = 5u64;
    loop {
        if is_prime(p) && !(lc % p).is_zero() {
            let fp = Fp::new(p);
            let img = fp.from_ints(f);
            if fp.is_squarefree(&img) {
                return (fp, img);
            }
        }
        p += 2;
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Irreducible factors over Z of a squarefree primitive `f` with positive
/// leading coefficient and degree at least one.
pub(crate) fn factor_squarefree(f: &[BigInt]) -> Vec<ZPoly> {
    let f: ZPoly = f.to_vec();
    let n = f.len() - 1;
    if n == 1 {
        return vec![f];
    }
    let (fp, img) = choose_prime(&f);
    let lc = f.last().unwrap().clone();
    let monic_img = fp.monic(&img);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
    let modular = fp.factor_squarefree(&monic_img, &mut rng);
    if modular.len() == 1 {
        return vec![f];
    }

    // Coefficients of any factor are bounded by 2^n * ||f||_2; the lifted
    // modulus must exceed twice that times lc(f).
    let norm = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = (BigInt::one() << n) * norm * &lc * 2;
    let p = BigInt::from(fp.p);
    let mut k = 1u32;
    while p.pow(k) <= bound {
        k += 1;
    }
    let modulus = p.pow(k);

    let lc_p = fp.reduce(&lc);
    let mut lifted = Vec::new();
    let mut cur = zmod(&f, &modulus);
    for i in 0..modular.len() - 1 {
        let rest = modular[i + 1..]
            .iter()
            .fold(vec![lc_p], |acc, g| fp.mul(&acc, g));
        let (g, h) = hensel_lift(fp, &cur, &modular[i], &rest, k);
        lifted.push(g);
        cur = h;
    }
    let lc_inv = lc.modinv(&modulus).expect("p does not divide lc");
    lifted.push(zmod(&cur.iter().map(|c| c * &lc_inv).collect(), &modulus));

    recombine(f, lifted, &modulus)
}

fn recombine(mut f: ZPoly, lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= remaining.len() {
        for subset in remaining.iter().copied().combinations(s) {
            let lc = f.last().unwrap().clone();
            let prod = subset.iter().fold(vec![lc.clone()], |acc, &i| {
                zmod(&zmul(&acc, &lifted[i]), modulus)
            });
            let cand = primitive(symmetric(&prod, modulus));
            if cand.len() < 2 {
                continue;
            }
            // Cheap divisibility screens before the trial division.
            if !(&lc % cand.last().unwrap()).is_zero() {
                continue;
            }
            if !cand[0].is_zero() && !(&f[0] % &cand[0]).is_zero() {
                continue;
            }
            if let Some(q) = zdiv(&f, &cand) {
                f = q;
                out.push(cand);
                remaining.retain(|i| !subset.contains(i));
                continue 'outer;
            }
        }
        s += 1;
    }
    out.push(f);
    out
}
