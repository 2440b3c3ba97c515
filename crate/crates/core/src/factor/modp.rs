//! Dense polynomials over a small prime field, enough for Cantor–Zassenhaus.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

pub(crate) type FpPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn deg(a: &FpPoly) -> Option<usize> {
    a.len().checked_sub(1)
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    pub fn reduce(&self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    pub fn from_ints(&self, cs: &[BigInt]) -> FpPoly {
        trim(cs.iter().map(|c| self.reduce(c)).collect())
    }

    fn mul_c(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn pow_c(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_c(r, a);
            }
            a = self.mul_c(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv_c(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod p");
        self.pow_c(a, self.p - 2)
    }

    #[cfg(test)]
    pub fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| {
                    (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0))
                        % self.p
                })
                .collect(),
        )
    }

    pub fn scale(&self, a: &FpPoly, c: u64) -> FpPoly {
        trim(a.iter().map(|&x| self.mul_c(x, c)).collect())
    }

    pub fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        trim(out)
    }

    pub fn div_rem(&self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
        let db = deg(b).expect("division by zero polynomial mod p");
        let inv = self.inv_c(b[db]);
        let mut r = a.clone();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![0u64; r.len() - db];
        for k in (db..r.len()).rev() {
            let c = self.mul_c(r[k], inv);
            if c == 0 {
                continue;
            }
            for (i, &bc) in b.iter().enumerate() {
                let s = &mut r[k - db + i];
                *s = (*s + self.p - self.mul_c(c, bc)) % self.p;
            }
            q[k - db] = c;
        }
        r.truncate(db);
        (trim(q), trim(r))
    }

    pub fn rem(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        self.div_rem(a, b).1
    }

    pub fn monic(&self, a: &FpPoly) -> FpPoly {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.scale(a, self.inv_c(l)),
        }
    }

    pub fn gcd(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = std::mem::replace(&mut b, r);
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s*a + t*b = g` monic.
    pub fn ext_gcd(&self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = self.inv_c(*r0.last().expect("ext_gcd of zeros"));
        (
            self.scale(&r0, inv),
            self.scale(&s0, inv),
            self.scale(&t0, inv),
        )
    }

    pub fn derivative(&self, a: &FpPoly) -> FpPoly {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| self.mul_c(c, k as u64 % self.p))
                .collect(),
        )
    }

    pub fn pow_mod(&self, a: &FpPoly, e: &BigUint, f: &FpPoly) -> FpPoly {
        let mut r: FpPoly = vec![1];
        let base = self.rem(a, f);
        for i in (0..e.bits()).rev() {
            r = self.rem(&self.mul(&r, &r), f);
            if e.bit(i) {
                r = self.rem(&self.mul(&r, &base), f);
            }
        }
        self.rem(&r, f)
    }

    pub fn is_squarefree(&self, f: &FpPoly) -> bool {
        let d = self.derivative(f);
        !d.is_empty() && self.gcd(f, &d).len() == 1
    }

    /// Monic irreducible factors of a monic squarefree `f`.
    pub fn factor_squarefree(&self, f: &FpPoly, rng: &mut impl Rng) -> Vec<FpPoly> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            self.equal_degree(&g, d, rng, &mut out);
        }
        out.sort();
        out
    }

    fn distinct_degree(&self, f: &FpPoly) -> Vec<(FpPoly, usize)> {
        let x: FpPoly = vec![0, 1];
        let p = BigUint::from(self.p);
        let mut res = Vec::new();
        let mut f = f.clone();
        let mut h = x.clone();
        let mut d = 1;
        while deg(&f).unwrap_or(0) >= 2 * d {
            h = self.pow_mod(&h, &p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.div_rem(&f, &g).0;
                h = self.rem(&h, &f);
                res.push((g, d));
            }
            d += 1;
        }
        if let Some(n) = deg(&f) {
            if n > 0 {
                res.push((f, n));
            }
        }
        res
    }

    fn equal_degree(&self, g: &FpPoly, d: usize, rng: &mut impl Rng, out: &mut Vec<FpPoly>) {
        let n = deg(g).unwrap();
        if n == d {
            out.push(g.clone());
            return;
        }
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: FpPoly = trim((0..n).map(|_| rng.random_range(0..self.p)).collect());
            if deg(&a).unwrap_or(0) == 0 {
                continue;
            }
            let b = self.sub(&self.pow_mod(&a, &e, g), &vec![1]);
            let c = self.gcd(&b, g);
            let dc = deg(&c).unwrap_or(0);
            if dc > 0 && dc < n {
                let rest = self.div_rem(g, &c).0;
                self.equal_degree(&c, d, rng, out);
                self.equal_degree(&rest, d, rng, out);
                return;
            }
        }
    }
}
