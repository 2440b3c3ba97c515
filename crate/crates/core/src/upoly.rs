//! Univariate polynomials over Q and the rational function field Q(t).

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::factor::modp::Fp;
use crate::poly::Poly;
use crate::rat::{from_bigint, gcd_numers, lcm_denoms, Rat};

pub type UPoly = Poly<Rat>;

impl Poly<Rat> {
    pub fn from_ints(cs: &[BigInt]) -> Self {
        Poly::new(cs.iter().cloned().map(from_bigint).collect())
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    /// Splits `self = scale * prim` with `prim` integral, primitive and with
    /// positive leading coefficient. The zero polynomial gives `(0, [])`.
    pub fn integer_primitive(&self) -> (Rat, Vec<BigInt>) {
        if self.is_zero() {
            return (Rat::zero(), Vec::new());
        }
        let l = lcm_denoms(self.coeffs());
        let ints: Vec<BigInt> = self
            .coeffs()
            .iter()
            .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |a, c| a.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (Rat::new(g, l), prim)
    }

    /// Integral primitive associate with positive leading coefficient.
    pub fn primitive(&self) -> UPoly {
        UPoly::from_ints(&self.integer_primitive().1)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_integer())
    }

    pub fn content_gcd(&self) -> BigInt {
        gcd_numers(self.coeffs())
    }
}

/// Element of Q(t): `num/den` with `den` monic and coprime to `num`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UFrac {
    num: UPoly,
    den: UPoly,
}

impl UFrac {
    /// Panics when `den` is zero.
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "UFrac with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = gcd_q(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let inv = Rat::one() / den.lc();
        UFrac {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: UPoly) -> Self {
        UFrac {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn shift(&self, c: &Rat) -> Self {
        // Shifting preserves coprimality and monic leading coefficient.
        UFrac {
            num: self.num.shift(c),
            den: self.den.shift(c),
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        UFrac::new(self.den.clone(), self.num.clone())
    }
}

impl Zero for UFrac {
    fn zero() -> Self {
        UFrac {
            num: UPoly::zero(),
            den: UPoly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for UFrac {
    fn one() -> Self {
        UFrac {
            num: UPoly::one(),
            den: UPoly::one(),
        }
    }
}

impl Add for UFrac {
    type Output = UFrac;

    fn add(self, rhs: UFrac) -> UFrac {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        if self.den == rhs.den {
            return UFrac::new(&self.num + &rhs.num, self.den);
        }
        UFrac::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for UFrac {
    type Output = UFrac;

    fn sub(self, rhs: UFrac) -> UFrac {
        self + (-rhs)
    }
}

impl Neg for UFrac {
    type Output = UFrac;

    fn neg(self) -> UFrac {
        UFrac {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for UFrac {
    type Output = UFrac;

    fn mul(self, rhs: UFrac) -> UFrac {
        if self.is_zero() || rhs.is_zero() {
            return UFrac::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return UFrac {
                num: &self.num * &rhs.num,
                den: self.den,
            };
        }
        UFrac::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for UFrac {
    type Output = UFrac;

    fn div(self, rhs: UFrac) -> UFrac {
        self * rhs.inv()
    }
}

/// Word-sized primes below 2^31, largest first.
fn gcd_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let is_prime = |n: u64| {
            (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
        };
        (1u64 << 20..1u64 << 31)
            .rev()
            .filter(|&n| n % 2 == 1 && is_prime(n))
            .take(256)
            .collect()
    })
}

/// Monic gcd over Q by images modulo word primes, combined by Chinese
/// remaindering. Each image is scaled by the gcd of the leading coefficients
/// so that the images agree on a fixed integer associate of the gcd; the
/// combination is accepted once it repeats and divides both inputs. Images
/// of too high degree come from primes dividing a resultant and are skipped.
pub fn gcd_q(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_zero() || b.is_zero() {
        return (a + b).monic();
    }
    if a.is_constant() || b.is_constant() {
        return UPoly::one();
    }
    let (ai, bi) = (a.integer_primitive().1, b.integer_primitive().1);
    let gamma = ai.last().unwrap().gcd(bi.last().unwrap());
    let (ap, bp) = (UPoly::from_ints(&ai), UPoly::from_ints(&bi));
    let mut best = ai.len().min(bi.len());
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut prev: Option<Vec<BigInt>> = None;
    for &p in gcd_primes() {
        let fp = Fp::new(p);
        let (fa, fb) = (fp.from_ints(&ai), fp.from_ints(&bi));
        if fa.len() != ai.len() || fb.len() != bi.len() {
            continue;
        }
        let g = fp.gcd(&fa, &fb);
        let d = g.len() - 1;
        if d == 0 {
            return UPoly::one();
        }
        if d > best {
            continue;
        }
        if d < best {
            best = d;
            modulus = BigInt::one();
            acc = vec![BigInt::zero(); d + 1];
            prev = None;
        }
        let g = fp.scale(&g, fp.reduce(&gamma));
        let big_p = BigInt::from(p);
        let inv = BigInt::from(fp.inv_c(fp.reduce(&modulus)));
        for (c, &r) in acc.iter_mut().zip(&g) {
            // c + modulus * t with t = (r - c) / modulus mod p
            let t = ((BigInt::from(r) - &*c) * &inv).mod_floor(&big_p);
            *c += &modulus * t;
        }
        modulus *= &big_p;
        let half = &modulus / 2;
        let cand: Vec<BigInt> = acc
            .iter()
            .map(|c| if *c > half { c - &modulus } else { c.clone() })
            .collect();
        if prev.as_ref() == Some(&cand) {
            let c = UPoly::from_ints(&cand);
            if ap.exact_div(&c).is_some() && bp.exact_div(&c).is_some() {
                return c.monic();
            }
        }
        prev = Some(cand);
    }
    UPoly::gcd(a, b)
}

/// Least common multiple of monic polynomials, monic.
pub fn lcm_monic(a: &UPoly, b: &UPoly) -> UPoly {
    let g = gcd_q(a, b);
    (a * &b.div_rem(&g).0).monic()
}

/// Lagrange interpolation through the points `(xs[i], ys[i])`, which must
/// have distinct abscissae.
pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> UPoly {
    let mut out = UPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = UPoly::constant(yi.clone());
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                let lin = UPoly::new(vec![-xj.clone(), Rat::one()]);
                basis = (&basis * &lin).scale(&(Rat::one() / (xi - xj)));
            }
        }
        out = &out + &basis;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    #[test]
    fn integer_primitive_splits_content() {
        let p = UPoly::new(vec![frac(-1, 2), int(0), frac(3, 4)]);
        let (c, prim) = p.integer_primitive();
        assert_eq!(
            prim,
            vec![BigInt::from(-2), BigInt::from(0), BigInt::from(3)]
        );
        assert_eq!(c, frac(1, 4));
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let p = UPoly::from_i64s(&[3, -1, 0, 2]);
        let xs: Vec<Rat> = (0..4).map(int).collect();
        let ys: Vec<Rat> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), p);
    }

    #[test]
    fn ufrac_normalizes() {
        // (t^2 - 1)/(2t + 2) = (t - 1)/2
        let a = UFrac::new(UPoly::from_i64s(&[-1, 0, 1]), UPoly::from_i64s(&[2, 2]));
        assert_eq!(a.den(), &UPoly::one());
        assert_eq!(a.num(), &UPoly::new(vec![frac(-1, 2), frac(1, 2)]));
        let one_over_t = UFrac::new(UPoly::one(), UPoly::var());
        let sum = one_over_t.clone() - one_over_t;
        assert!(sum.is_zero());
    }

    #[test]
    fn modular_gcd_matches_euclid() {
        let c = UPoly::new(vec![frac(3, 7), int(-12345678901), int(0), frac(5, 2)]);
        let a = &c * &UPoly::from_i64s(&[7, 0, -3, 1]);
        let b = &c.pow(2) * &UPoly::from_i64s(&[-1, 4, 0, 0, 9]);
        assert_eq!(gcd_q(&a, &b), c.monic());
        assert_eq!(gcd_q(&a, &b), UPoly::gcd(&a, &b));
        let p = UPoly::from_i64s(&[1, 1, 1]);
        assert_eq!(gcd_q(&p, &UPoly::from_i64s(&[2, 0, 1])), UPoly::one());
        assert_eq!(gcd_q(&UPoly::zero(), &a), a.monic());
        assert_eq!(gcd_q(&p.pow(5), &p.pow(3)), p.pow(3));
    }
}
