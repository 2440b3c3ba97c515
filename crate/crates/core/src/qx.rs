//! Polynomials in y over the field Q(x).

use num_traits::{One, Zero};

use crate::bpoly::{BPoly, Var};
use crate::poly::Poly;
use crate::rat::int;
use crate::ratfunc::RatFunc;
use crate::upoly::{lcm_monic, UFrac, UPoly};

pub type QxPoly = Poly<UFrac>;

pub fn from_bpoly(p: &BPoly) -> QxPoly {
    p.y_view().map(|c| UFrac::from_poly(c.clone()))
}

/// `p / b` with `b` free of y.
pub fn from_bpoly_over(p: &BPoly, b: &UPoly) -> QxPoly {
    p.y_view().map(|c| UFrac::new(c.clone(), b.clone()))
}

/// `p = num / b` with `b` monic in x and `num` a polynomial.
pub fn split_denominator(p: &QxPoly) -> (BPoly, UPoly) {
    let b = p
        .coeffs()
        .iter()
        .fold(UPoly::one(), |acc, c| lcm_monic(&acc, c.den()));
    let view = p.map(|c| c.num() * &b.div_rem(c.den()).0);
    (BPoly::from_y_view(&view), b)
}

pub fn to_ratfunc(p: &QxPoly) -> RatFunc {
    let (num, b) = split_denominator(p);
    RatFunc::new(num, BPoly::from_upoly(&b, Var::X)).expect("nonzero denominator")
}

/// `p(x + m, y + n)`.
pub fn shift(p: &QxPoly, m: i64, n: i64) -> QxPoly {
    let p = if m == 0 {
        p.clone()
    } else {
        p.map(|c| c.shift(&int(m)))
    };
    if n == 0 {
        p
    } else {
        p.shift(&UFrac::from_rat(int(n)))
    }
}

pub fn fmt(p: &QxPoly) -> String {
    to_ratfunc(p).to_string()
}

/// Polynomial `H` with `H(y + 1) - H(y) = p`, via the binomial basis:
/// `p = Σ Δ^k p(0) C(y, k)` lifts to `H = Σ Δ^k p(0) C(y, k + 1)`.
pub fn antidifference_y(p: &QxPoly) -> QxPoly {
    let Some(d) = p.degree() else {
        return QxPoly::zero();
    };
    let mut vals: Vec<UFrac> = (0..=d as i64)
        .map(|k| p.eval(&UFrac::from_rat(int(k))))
        .collect();
    let mut h = QxPoly::zero();
    // binom = C(y, k + 1)
    let mut binom = QxPoly::var();
    for k in 0..=d {
        h = &h + &binom.scale(&vals[0]);
        for i in 0..vals.len() - 1 {
            vals[i] = vals[i + 1].clone() - vals[i].clone();
        }
        vals.pop();
        let lin = QxPoly::new(vec![UFrac::from_rat(int(-(k as i64) - 1)), UFrac::one()]);
        binom = (&binom * &lin).scale(&UFrac::from_rat(crate::rat::frac(1, k as i64 + 2)));
    }
    h
}
