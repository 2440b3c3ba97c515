//! Polynomial-in-y solutions of `u = σx^m σy^-n p - p` over Q(x).

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::bpoly::{BPoly, Mono, Var};
use crate::dispersion::{disp_uni, ShiftSet1D};
use crate::error::{Error, Result};
use crate::factor::factor_upoly;
use crate::linalg;
use crate::qx::{self, QxPoly};
use crate::rat::{floor_i64, int, Rat};
use crate::upoly::{gcd_q, UPoly};

/// `b(x)/b(x+m) = (A(x)/B(x)) * (C(x+m)/C(x))` with
/// `gcd(A(x), B(x + h*m)) = 1` for all `h >= 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GosperRep {
    pub a: UPoly,
    pub b: UPoly,
    pub c: UPoly,
}

impl Serialize for GosperRep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GosperRep", 3)?;
        st.serialize_field("A", &crate::bpoly::fmt_upoly(&self.a, Var::X))?;
        st.serialize_field("B", &crate::bpoly::fmt_upoly(&self.b, Var::X))?;
        st.serialize_field("C", &crate::bpoly::fmt_upoly(&self.c, Var::X))?;
        st.end()
    }
}

fn irreducible_factors(p: &UPoly) -> Vec<UPoly> {
    if p.is_constant() {
        return Vec::new();
    }
    factor_upoly(p)
        .expect("nonzero")
        .factors
        .into_iter()
        .map(|(f, _)| f)
        .collect()
}

/// The `h >= 0` with `gcd(a(x), b(x + h*m))` nontrivial, from shift
/// collisions between irreducible factors.
fn collisions(a: &UPoly, b: &UPoly, m: i64) -> Vec<i64> {
    let fa = irreducible_factors(a);
    let fb = irreducible_factors(b);
    let mut hs = Vec::new();
    for p in &fa {
        for q in &fb {
            if p.degree() != q.degree() {
                continue;
            }
            let (pp, qq) = (BPoly::from_upoly(p, Var::X), BPoly::from_upoly(q, Var::X));
            if let ShiftSet1D::Finite(ks) = disp_uni(&pp, &qq, Var::X) {
                hs.extend(
                    ks.into_iter()
                        .filter(|k| *k >= 0 && k % m == 0)
                        .map(|k| k / m),
                );
            }
        }
    }
    hs.sort_unstable();
    hs.dedup();
    hs
}

/// Gosper representation of `b(x)/b(x+m)` with `A`, `B`, `C` monic.
pub fn gosper_rep(b: &UPoly, m: i64) -> Result<GosperRep> {
    if b.is_zero() {
        return Err(Error::ZeroPolynomial("gosper representation"));
    }
    if m <= 0 {
        return Err(Error::Precondition("gosper step must be positive".into()));
    }
    let mr = int(m);
    let b0 = b.monic();
    let b1 = b0.shift(&mr);
    let g = gcd_q(&b0, &b1);
    let mut a = b0.div_rem(&g).0;
    let mut bb = b1.div_rem(&g).0;
    let mut c = UPoly::one();
    for h in collisions(&a, &bb, m) {
        let s = gcd_q(&a, &bb.shift(&int(h * m)));
        if s.is_constant() {
            continue;
        }
        a = a.div_rem(&s).0;
        bb = bb.div_rem(&s.shift(&int(-h * m))).0;
        for i in 1..=h {
            c = &c * &s.shift(&int(-i * m));
        }
    }
    Ok(GosperRep {
        a,
        b: bb,
        c: c.monic(),
    })
}

/// `max{d2 + d3 - d1 + d0, floor((b_{d1-1} - a_{d1-1}) / (m a_{d1})) + d0 - 1}`.
#[allow(clippy::too_many_arguments)]
pub fn degree_bound(
    d0: i64,
    d1: i64,
    d2: i64,
    d3: i64,
    a_d1: &Rat,
    a_d1m1: &Rat,
    b_d1m1: &Rat,
    m: i64,
) -> Result<i64> {
    if a_d1.is_zero() {
        return Err(Error::Precondition(
            "leading coefficient of A is zero".into(),
        ));
    }
    let q = (b_d1m1 - a_d1m1) / (a_d1 * int(m));
    let second =
        floor_i64(&q).ok_or_else(|| Error::Internal("degree bound overflow".into()))? + d0 - 1;
    Ok((d2 + d3 - d1 + d0).max(second))
}

/// The bound for a concrete instance, from the coefficients of `A(x)` and
/// `B(x - m)`.
pub fn degree_bound_for(a: &BPoly, rep: &GosperRep, m: i64, d0: usize) -> Result<i64> {
    let d1 = rep.a.degree().unwrap_or(0);
    let bm = rep.b.shift(&int(-m));
    let below = |p: &UPoly| {
        if d1 == 0 {
            Rat::zero()
        } else {
            p.coeff(d1 - 1)
        }
    };
    degree_bound(
        d0 as i64,
        d1 as i64,
        rep.c.degree().unwrap_or(0) as i64,
        a.deg_x().unwrap_or(0) as i64,
        &rep.a.lc(),
        &below(&rep.a),
        &below(&bm),
        m,
    )
}

/// A polynomial `p1` with `deg_y(p1) < d0` solving
/// `a(x,y) C(x) = A(x) p1(x+m, y-n) - B(x-m) p1(x,y)`, free coefficients set
/// to zero.
pub fn solve_p1(
    a: &BPoly,
    rep: &GosperRep,
    m: i64,
    n: i64,
    d0: usize,
) -> Result<Option<(BPoly, i64)>> {
    if a.deg_y().is_some_and(|d| d >= d0) {
        return Err(Error::Precondition("deg_y(a) must be below d0".into()));
    }
    let bound = degree_bound_for(a, rep, m, d0)?;
    if a.is_zero() {
        return Ok(Some((BPoly::zero(), bound)));
    }
    let d4 = bound.max(d0 as i64 - 1);
    let big_a = BPoly::from_upoly(&rep.a, Var::X);
    let big_b = BPoly::from_upoly(&rep.b.shift(&int(-m)), Var::X);
    let target = a * &BPoly::from_upoly(&rep.c, Var::X);

    let mut unknowns = Vec::new();
    let mut images = Vec::new();
    for i in 0..=d4 as u32 {
        for j in 0..d0 as u32 {
            let mono = BPoly::monomial(Rat::one(), i, j);
            images.push(&(&big_a * &mono.shift(m, -n)) - &(&big_b * &mono));
            unknowns.push(Mono::new(i, j));
        }
    }
    let mut eqs: BTreeMap<Mono, Vec<Rat>> = BTreeMap::new();
    for (k, img) in images.iter().enumerate() {
        for (mono, c) in img.terms() {
            eqs.entry(*mono)
                .or_insert_with(|| vec![Rat::zero(); unknowns.len()])[k] = c.clone();
        }
    }
    for (mono, _) in target.terms() {
        eqs.entry(*mono)
            .or_insert_with(|| vec![Rat::zero(); unknowns.len()]);
    }
    let monos: Vec<Mono> = eqs.keys().copied().collect();
    let rows: Vec<Vec<Rat>> = eqs.into_values().collect();
    let rhs: Vec<Rat> = monos.iter().map(|mo| target.coeff(mo.x, mo.y)).collect();
    let Some(sol) = linalg::solve(&rows, &rhs, unknowns.len()) else {
        return Ok(None);
    };
    let p1 = BPoly::from_terms(unknowns.into_iter().zip(sol));
    Ok(Some((p1, d4)))
}

/// `u = a/b`: find `p` with `deg_y(p) < d0` and `u = σx^m σy^-n p - p`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct KernelProblem {
    pub a: BPoly,
    #[serde(serialize_with = "ser_upoly_x")]
    pub b: UPoly,
    pub m: i64,
    pub n: i64,
    pub d0: usize,
}

fn ser_upoly_x<S: serde::Serializer>(p: &UPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::bpoly::fmt_upoly(p, Var::X))
}

impl KernelProblem {
    pub fn u(&self) -> QxPoly {
        qx::from_bpoly_over(&self.a, &self.b)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KernelSolution {
    pub p: QxPoly,
    pub p1: BPoly,
    pub rep: GosperRep,
    pub d4: i64,
}

impl Serialize for KernelSolution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("KernelSolution", 4)?;
        st.serialize_field("p", &qx::fmt(&self.p))?;
        st.serialize_field("p1", &self.p1)?;
        st.serialize_field("gosper", &self.rep)?;
        st.serialize_field("d4", &self.d4)?;
        st.end()
    }
}

/// `σx^m σy^-n p - p`.
pub fn kernel_image(p: &QxPoly, m: i64, n: i64) -> QxPoly {
    &qx::shift(p, m, -n) - p
}

pub fn solve_kernel(prob: &KernelProblem) -> Result<Option<KernelSolution>> {
    if prob.m <= 0 || prob.d0 == 0 || prob.b.is_zero() {
        return Err(Error::Precondition(
            "kernel problem needs m > 0, d0 > 0, b != 0".into(),
        ));
    }
    let rep = gosper_rep(&prob.b, prob.m)?;
    let Some((p1, d4)) = solve_p1(&prob.a, &rep, prob.m, prob.n, prob.d0)? else {
        return Ok(None);
    };
    let num = &BPoly::from_upoly(&rep.b.shift(&int(-prob.m)), Var::X) * &p1;
    let p = qx::from_bpoly_over(&num, &(&prob.b * &rep.c));
    if kernel_image(&p, prob.m, prob.n) != prob.u() {
        return Err(Error::Internal(
            "kernel solution fails its identity check".into(),
        ));
    }
    Ok(Some(KernelSolution { p, p1, rep, d4 }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(cs: &[i64]) -> UPoly {
        UPoly::from_i64s(cs)
    }

    fn check_rep(b: &UPoly, m: i64, r: &GosperRep) {
        let mr = int(m);
        // b(x) B(x) C(x) = b(x+m) A(x) C(x+m)
        let lhs = &(b * &r.b) * &r.c;
        let rhs = &(&b.shift(&mr) * &r.a) * &r.c.shift(&mr);
        assert_eq!(lhs, rhs);
        for h in 0..=20 {
            assert!(gcd_q(&r.a, &r.b.shift(&int(h * m))).is_constant());
        }
    }

    #[test]
    fn gosper_examples() {
        let r = gosper_rep(&UPoly::one(), 1).unwrap();
        assert_eq!(
            (r.a.clone(), r.b.clone(), r.c.clone()),
            (u(&[1]), u(&[1]), u(&[1]))
        );
        let r = gosper_rep(&u(&[0, 1]), 1).unwrap();
        assert_eq!(
            (r.a.clone(), r.b.clone(), r.c.clone()),
            (u(&[0, 1]), u(&[1, 1]), u(&[1]))
        );
        let b = u(&[0, 1, 1]);
        let r = gosper_rep(&b, 1).unwrap();
        assert_eq!(
            (r.a.clone(), r.b.clone(), r.c.clone()),
            (u(&[0, 1]), u(&[2, 1]), u(&[1]))
        );
        check_rep(&b, 1, &r);
    }

    #[test]
    fn gosper_with_collision() {
        // b = x (x + 5), m = 2: x/(x+7) * (x+5)/(x+2)... after cancellation
        let b = u(&[0, 5, 1]);
        for m in 1..=3 {
            let r = gosper_rep(&b, m).unwrap();
            check_rep(&b, m, &r);
        }
        let b = &(&u(&[1, 0, 1]) * &u(&[5, 0, 1])) * &u(&[3, 1]);
        for m in 1..=3 {
            check_rep(&b, m, &gosper_rep(&b, m).unwrap());
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(
            degree_bound(2, 0, 0, 0, &int(1), &int(0), &int(0), 1).unwrap(),
            2
        );
        assert_eq!(
            degree_bound(2, 1, 0, 1, &int(1), &int(0), &int(3), 1).unwrap(),
            4
        );
        assert_eq!(
            degree_bound(3, 2, 1, 1, &int(1), &int(5), &int(5), 2).unwrap(),
            3
        );
        assert!(degree_bound(1, 0, 0, 0, &int(0), &int(0), &int(0), 1).is_err());
    }

    #[test]
    fn p1_examples() {
        let rep = gosper_rep(&UPoly::one(), 1).unwrap();
        let (p1, _) = solve_p1(&BPoly::one(), &rep, 1, 1, 2).unwrap().unwrap();
        let check = &p1.shift(1, -1) - &p1;
        assert_eq!(check, BPoly::one());
        let (p1, _) = solve_p1(&BPoly::zero(), &rep, 1, 1, 2).unwrap().unwrap();
        assert!(p1.is_zero());
        let (p1, _) = solve_p1(&BPoly::one(), &rep, 1, 0, 1).unwrap().unwrap();
        assert_eq!(p1, BPoly::x());
    }

    #[test]
    fn kernel_example() {
        let prob = KernelProblem {
            a: BPoly::one(),
            b: UPoly::one(),
            m: 1,
            n: 1,
            d0: 2,
        };
        let sol = solve_kernel(&prob).unwrap().unwrap();
        assert_eq!(kernel_image(&sol.p, 1, 1), prob.u());
        let known_p = qx::from_bpoly(&BPoly::from_i64_terms(&[(-1, 0, 1), (-1, 0, 0)]));
        assert_eq!(kernel_image(&known_p, 1, 1), prob.u());
    }

    #[test]
    fn kernel_round_trip_with_denominator() {
        // q = y/(x(x+3)) + 1/(x+1), m = 2, n = 3
        let q = &qx::from_bpoly_over(&BPoly::y(), &u(&[0, 3, 1]))
            + &qx::from_bpoly_over(&BPoly::one(), &u(&[1, 1]));
        let target = kernel_image(&q, 2, 3);
        let (a, b) = qx::split_denominator(&target);
        let prob = KernelProblem {
            a,
            b,
            m: 2,
            n: 3,
            d0: 2,
        };
        let sol = solve_kernel(&prob).unwrap().unwrap();
        assert_eq!(kernel_image(&sol.p, 2, 3), target);
    }
}
