//! Reduced bivariate rational functions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::bpoly::BPoly;
use crate::error::{Error, Result};
use crate::gcd::gcd_bpoly;
use crate::rat::{lcm_denoms, Rat};

/// `num/den` in lowest terms.
///
/// Canonical form: both parts have integer coefficients whose combined
/// content is 1, `den` has positive graded-lex leading coefficient, and zero
/// is `0/1`. Two equal rational functions therefore compare equal
/// structurally.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: BPoly,
    den: BPoly,
}

impl RatFunc {
    pub fn new(num: BPoly, den: BPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = gcd_bpoly(&num, &den)?;
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            let n = num
                .div_exact(&g)
                .ok_or_else(|| Error::Internal("gcd".into()))?;
            let d = den
                .div_exact(&g)
                .ok_or_else(|| Error::Internal("gcd".into()))?;
            (n, d)
        };
        Ok(Self::canonical_scaling(num, den))
    }

    /// Fixes the scaling of an already coprime pair.
    fn canonical_scaling(num: BPoly, den: BPoly) -> Self {
        let l = lcm_denoms(num.terms().chain(den.terms()).map(|(_, c)| c));
        let (num, den) = (
            num.scale(&Rat::from_integer(l.clone())),
            den.scale(&Rat::from_integer(l)),
        );
        let mut g = num
            .terms()
            .chain(den.terms())
            .fold(BigInt::zero(), |a, (_, c)| a.gcd(c.numer()));
        if den.lc().is_negative() {
            g = -g;
        }
        let k = Rat::from_integer(g).recip();
        RatFunc {
            num: num.scale(&k),
            den: den.scale(&k),
        }
    }

    pub fn from_poly(p: BPoly) -> Self {
        Self::canonical_scaling(p, BPoly::one())
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_poly(BPoly::constant(c))
    }

    pub fn zero() -> Self {
        RatFunc {
            num: BPoly::zero(),
            den: BPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: BPoly::one(),
            den: BPoly::one(),
        }
    }

    pub fn num(&self) -> &BPoly {
        &self.num
    }

    pub fn den(&self) -> &BPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// `f(x + m, y + n)`. Shifts preserve coprimality and leading
    /// coefficients, so no renormalization is needed.
    pub fn shift(&self, m: i64, n: i64) -> Self {
        RatFunc {
            num: self.num.shift(m, n),
            den: self.den.shift(m, n),
        }
    }

    /// `Δx f = f(x + 1, y) - f`.
    pub fn delta_x(&self) -> Self {
        &self.shift(1, 0) - self
    }

    /// `Δy f = f(x, y + 1) - f`.
    pub fn delta_y(&self) -> Self {
        &self.shift(0, 1) - self
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc {
            num: self.num.pow(e as usize),
            den: self.den.pow(e as usize),
        }
    }

    pub fn swap_xy(&self) -> Self {
        Self::new(self.num.swap_xy(), self.den.swap_xy()).expect("nonzero denominator")
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::canonical_scaling(self.num.scale(c), self.den.clone())
    }

    pub fn fmt_with(&self, xname: &str, yname: &str) -> String {
        let num = self.num.fmt_with(xname, yname);
        if self.den.is_one() {
            return num;
        }
        let den = self.den.fmt_with(xname, yname);
        let num = if self.num.num_terms() > 1 {
            format!("({num})")
        } else {
            num
        };
        let den = if self.den.num_terms() > 1 || den.contains(['*', '/']) {
            format!("({den})")
        } else {
            den
        };
        format!("{num}/{den}")
    }
}

fn combine(a: &RatFunc, b: &RatFunc, sign: bool) -> RatFunc {
    let sum = |x: &BPoly, y: &BPoly| if sign { x + y } else { x - y };
    if a.den == b.den {
        return RatFunc::new(sum(&a.num, &b.num), a.den.clone()).expect("nonzero denominator");
    }
    if b.den.is_constant() || a.den.is_constant() {
        // Coprime denominators, only the scaling needs fixing.
        let num = sum(&(&a.num * &b.den), &(&b.num * &a.den));
        return RatFunc::new(num, &a.den * &b.den).expect("nonzero denominator");
    }
    let g = gcd_bpoly(&a.den, &b.den).expect("nonzero denominators");
    let ad = a.den.div_exact(&g).expect("gcd divides");
    let bd = b.den.div_exact(&g).expect("gcd divides");
    let num = sum(&(&a.num * &bd), &(&b.num * &ad));
    RatFunc::new(num, &(&ad * &bd) * &g).expect("nonzero denominator")
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;

    fn add(self, rhs: &'a RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        combine(self, rhs, true)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;

    fn sub(self, rhs: &'a RatFunc) -> RatFunc {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return -rhs;
        }
        combine(self, rhs, false)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;

    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;

    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;

    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;

    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        -&self
    }
}

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> RatFunc {
        iter.fold(RatFunc::zero(), |a, b| &a + &b)
    }
}

impl From<BPoly> for RatFunc {
    fn from(p: BPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with("x", "y"))
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
