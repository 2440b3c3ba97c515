//! Additive reduction of a rational function to a sum of fractions over
//! pairwise shift-inequivalent irreducible denominators.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bpoly::{BPoly, Var};
use crate::dispersion::disp_bi;
use crate::error::{Error, Result};
use crate::factor::{factor_bpoly, Factorization};
use crate::poly::Poly;
use crate::qx::{self, QxPoly};
use crate::rat::Rat;
use crate::ratfunc::RatFunc;
use crate::upoly::{UFrac, UPoly};

/// `a / d^j` with `deg_y(a) < deg_y(d)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PfdTerm {
    pub d: BPoly,
    pub j: usize,
    pub a: QxPoly,
}

/// `poly_part + Σ a / d^j` over Q(x).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pfd {
    pub poly_part: QxPoly,
    pub terms: Vec<PfdTerm>,
}

impl Pfd {
    pub fn sum(&self) -> RatFunc {
        let mut acc = qx::to_ratfunc(&self.poly_part);
        for t in &self.terms {
            acc = &acc + &term_value(&t.a, &t.d, t.j);
        }
        acc
    }
}

pub fn term_value(a: &QxPoly, d: &BPoly, j: usize) -> RatFunc {
    let den = RatFunc::from_poly(d.pow(j));
    qx::to_ratfunc(a)
        .checked_div(&den)
        .expect("nonzero denominator")
}

/// Partial fractions of `f` in y over Q(x), given the irreducible
/// factorization of its denominator.
pub fn pfd_y(f: &RatFunc, den: &Factorization<BPoly>) -> Result<Pfd> {
    if den.expand() != *f.den() {
        return Err(Error::BadFactorization);
    }
    // y-free factors join the coefficient field.
    let mut content = UPoly::constant(den.unit.clone());
    let mut powers = Vec::new();
    for (d, k) in &den.factors {
        match d.to_upoly(Var::X) {
            Some(u) => content = &content * &u.pow(*k),
            None => powers.push((d.clone(), *k)),
        }
    }
    let num = qx::from_bpoly_over(f.num(), &content);
    let q: QxPoly = powers.iter().fold(QxPoly::one(), |acc, (d, k)| {
        &acc * &qx::from_bpoly(&d.pow(*k))
    });
    let (poly_part, rem) = num.div_rem(&q);

    let mut terms = Vec::new();
    for (d, k) in &powers {
        let dq = qx::from_bpoly(d);
        let qi = dq.pow(*k);
        let cofactor = q.div_rem(&qi).0;
        // rem / q = Σ r_i / q_i with r_i = rem * cofactor^{-1} mod q_i.
        // Reducing first keeps the Q(x) coefficients small.
        let (g, s, _) = Poly::ext_gcd(&cofactor.rem(&qi), &qi);
        if g != QxPoly::one() {
            return Err(Error::BadFactorization);
        }
        let mut r = (&rem.rem(&qi) * &s).rem(&qi);
        // d-adic expansion r = Σ c_e d^e gives c_e / d^(k - e).
        for e in 0..*k {
            let (quo, c) = r.div_rem(&dq);
            if !c.is_zero() {
                terms.push(PfdTerm {
                    d: d.clone(),
                    j: k - e,
                    a: c,
                });
            }
            r = quo;
        }
    }
    terms.sort_by(|a, b| (&a.d, a.j).cmp(&(&b.d, b.j)));
    Ok(Pfd { poly_part, terms })
}

/// Polynomial `H` in y over Q(x) with `Δy H = p`.
pub fn poly_antidifference_y(p: &QxPoly) -> QxPoly {
    qx::antidifference_y(p)
}

/// Moves `a / source^j`, where `source = d(x + m, y + n)`, onto `d`:
/// `a / source^j = Δx g + Δy h + a' / d^j` with `a' = σx^-m σy^-n a`.
pub fn orbit_shift(
    a: &QxPoly,
    source: &BPoly,
    d: &BPoly,
    j: usize,
    m: i64,
    n: i64,
) -> Result<(RatFunc, RatFunc, QxPoly)> {
    if d.shift(m, n).normalized() != source.normalized() {
        return Err(Error::Precondition(format!(
            "{source} is not the shift of {d} by ({m},{n})"
        )));
    }
    // Normalization may differ by a constant; fold it into the numerator.
    let scale = d.shift(m, n).lc() / source.lc();
    let a = a.scale(&UFrac::from_rat(
        (0..j).fold(Rat::one(), |acc, _| acc * &scale),
    ));
    let dj = d.pow(j);
    let frac = |num: QxPoly, den: BPoly| {
        qx::to_ratfunc(&num)
            .checked_div(&RatFunc::from_poly(den))
            .expect("nonzero denominator")
    };
    let mut g = RatFunc::zero();
    if m >= 0 {
        for l in 0..m {
            g = &g + &frac(qx::shift(&a, l - m, 0), dj.shift(l, n));
        }
    } else {
        for l in 0..-m {
            g = &g - &frac(qx::shift(&a, l, 0), dj.shift(m + l, n));
        }
    }
    let mut h = RatFunc::zero();
    if n >= 0 {
        for l in 0..n {
            h = &h + &frac(qx::shift(&a, -m, l - n), dj.shift(0, l));
        }
    } else {
        for l in 0..-n {
            h = &h - &frac(qx::shift(&a, -m, l), dj.shift(0, n + l));
        }
    }
    Ok((g, h, qx::shift(&a, -m, -n)))
}

/// Fractions over one representative denominator, by multiplicity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Group {
    pub d: BPoly,
    pub fractions: Vec<(usize, QxPoly)>,
}

/// `f = Δx g + Δy h + Σ groups`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResidualForm {
    pub g: RatFunc,
    pub h: RatFunc,
    pub groups: Vec<Group>,
}

impl ResidualForm {
    pub fn residual(&self) -> RatFunc {
        let mut acc = RatFunc::zero();
        for grp in &self.groups {
            for (j, a) in &grp.fractions {
                acc = &acc + &term_value(a, &grp.d, *j);
            }
        }
        acc
    }
}

impl Serialize for Group {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let fractions: Vec<_> = self
            .fractions
            .iter()
            .map(|(j, a)| FractionView {
                j: *j,
                a: qx::fmt(a),
            })
            .collect();
        let mut st = s.serialize_struct("Group", 2)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("fractions", &fractions)?;
        st.end()
    }
}

#[derive(Serialize)]
struct FractionView {
    j: usize,
    a: String,
}

impl Serialize for ResidualForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ResidualForm", 3)?;
        st.serialize_field("g", &self.g)?;
        st.serialize_field("h", &self.h)?;
        st.serialize_field("groups", &self.groups)?;
        st.end()
    }
}

/// The element of the dispersion set minimizing `(|n|, |m|)`, preferring
/// pure x-shifts; `None` when the set is empty.
fn some_shift(f: &BPoly, g: &BPoly) -> Result<Option<(i64, i64)>> {
    let s = disp_bi(f, g)?;
    if s.all_plane {
        return Ok(Some((0, 0)));
    }
    let key = |&(m, n): &(i64, i64)| (n.abs(), m.abs(), m < 0, n < 0);
    let candidates = s
        .points
        .iter()
        .copied()
        .chain(s.lines.iter().map(|l| l.nearest_to_x_axis()));
    Ok(candidates.min_by_key(key))
}

/// Reduces `f` to residual form. The identity
/// `f = Δx g + Δy h + Σ groups` is checked before returning.
pub fn reduce(f: &RatFunc) -> Result<ResidualForm> {
    let den = factor_bpoly(f.den())?;
    let pfd = pfd_y(f, &den)?;
    let h0 = qx::to_ratfunc(&poly_antidifference_y(&pfd.poly_part));

    // Shift-equivalence classes of the denominators, representative first.
    let mut ds: Vec<BPoly> = pfd.terms.iter().map(|t| t.d.clone()).collect();
    ds.dedup();
    let mut classes: Vec<Vec<BPoly>> = Vec::new();
    for d in ds {
        let mut placed = false;
        for class in classes.iter_mut() {
            if some_shift(&d, &class[0])?.is_some() {
                class.push(d.clone());
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![d]);
        }
    }

    let mut g = RatFunc::zero();
    let mut h = h0;
    let mut groups = Vec::new();
    for class in classes {
        let rep = class.iter().min().unwrap().clone();
        let mut shifts = BTreeMap::new();
        for d in &class {
            let s = some_shift(d, &rep)?.ok_or_else(|| Error::Internal("lost shift".into()))?;
            shifts.insert(d.clone(), s);
        }
        let mut by_j: BTreeMap<usize, QxPoly> = BTreeMap::new();
        for t in pfd.terms.iter().filter(|t| shifts.contains_key(&t.d)) {
            let (m, n) = shifts[&t.d];
            let (dg, dh, a) = orbit_shift(&t.a, &t.d, &rep, t.j, m, n)?;
            g = &g + &dg;
            h = &h + &dh;
            let slot = by_j.entry(t.j).or_insert_with(QxPoly::zero);
            *slot = &*slot + &a;
        }
        let fractions: Vec<_> = by_j.into_iter().filter(|(_, a)| !a.is_zero()).collect();
        if !fractions.is_empty() {
            groups.push(Group { d: rep, fractions });
        }
    }
    groups.sort_by(|a, b| a.d.cmp(&b.d));

    let out = ResidualForm { g, h, groups };
    let rest = &(&(f - &out.g.delta_x()) - &out.h.delta_y()) - &out.residual();
    if !rest.is_zero() {
        return Err(Error::Internal(format!(
            "reduction identity fails: remainder {rest}"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(ts: &[(i64, u32, u32)]) -> BPoly {
        BPoly::from_i64_terms(ts)
    }

    fn summable_input() -> RatFunc {
        // -(x+y+4) / ((x^2+2x+2xy-1+2y+y^2)(x^2+2xy+y^2-2))
        let num = b(&[(-1, 1, 0), (-1, 0, 1), (-4, 0, 0)]);
        let d0 = b(&[
            (1, 2, 0),
            (2, 1, 0),
            (2, 1, 1),
            (-1, 0, 0),
            (2, 0, 1),
            (1, 0, 2),
        ]);
        let d1 = b(&[(1, 2, 0), (2, 1, 1), (1, 0, 2), (-2, 0, 0)]);
        RatFunc::new(num, &d0 * &d1).unwrap()
    }

    fn dd() -> BPoly {
        b(&[(1, 2, 0), (2, 1, 1), (1, 0, 2), (-2, 0, 0)])
    }

    #[test]
    fn pfd_of_shifted_pair() {
        let f = summable_input();
        let pfd = pfd_y(&f, &factor_bpoly(f.den()).unwrap()).unwrap();
        assert!(pfd.poly_part.is_zero());
        assert_eq!(pfd.terms.len(), 2);
        let by_d: Vec<(String, String)> = pfd
            .terms
            .iter()
            .map(|t| (t.d.to_string(), qx::fmt(&t.a)))
            .collect();
        assert!(by_d.contains(&(dd().to_string(), "-y - x".to_string())));
        assert!(by_d.contains(&(dd().shift(1, 0).to_string(), "y + x + 2".to_string())));
        assert_eq!(pfd.sum(), f);
    }

    #[test]
    fn telescoping_pair_pfd() {
        let den = &BPoly::y() * &b(&[(1, 0, 1), (1, 0, 0)]);
        let f = RatFunc::new(BPoly::one(), den).unwrap();
        let pfd = pfd_y(&f, &factor_bpoly(f.den()).unwrap()).unwrap();
        let parts: Vec<String> = pfd
            .terms
            .iter()
            .map(|t| format!("{}|{}", qx::fmt(&t.a), t.d))
            .collect();
        assert_eq!(parts, vec!["1|y", "-1|y + 1"]);
    }

    #[test]
    fn bad_factorization_rejected() {
        let f = summable_input();
        let wrong = Factorization {
            unit: crate::rat::int(1),
            factors: vec![(dd(), 1)],
        };
        assert_eq!(pfd_y(&f, &wrong), Err(Error::BadFactorization));
    }

    #[test]
    fn orbit_shift_single_step() {
        let a = qx::from_bpoly(&b(&[(1, 1, 0), (1, 0, 1), (2, 0, 0)]));
        let (g, h, a2) = orbit_shift(&a, &dd().shift(1, 0), &dd(), 1, 1, 0).unwrap();
        let expect_g = RatFunc::new(b(&[(1, 1, 0), (1, 0, 1), (1, 0, 0)]), dd()).unwrap();
        assert_eq!(g, expect_g);
        assert!(h.is_zero());
        assert_eq!(qx::fmt(&a2), "y + x + 1");
        let (g, h, a3) = orbit_shift(&a, &dd(), &dd(), 1, 0, 0).unwrap();
        assert!(g.is_zero() && h.is_zero());
        assert_eq!(a3, a);
    }

    #[test]
    fn orbit_shift_negative_branch() {
        let d = b(&[(1, 0, 1), (-2, 1, 0)]);
        let src = d.shift(1, -2);
        let a = qx::from_bpoly(&BPoly::one());
        let (g, h, a2) = orbit_shift(&a, &src, &d, 2, 1, -2).unwrap();
        let lhs = term_value(&a, &src, 2);
        let rhs = &(&g.delta_x() + &h.delta_y()) + &term_value(&a2, &d, 2);
        assert_eq!(lhs, rhs);
        assert!(orbit_shift(&a, &src, &d, 2, 0, 0).is_err());
    }

    #[test]
    fn reduce_example() {
        let f = summable_input();
        let r = reduce(&f).unwrap();
        let g1 = RatFunc::new(b(&[(1, 1, 0), (1, 0, 1), (1, 0, 0)]), dd()).unwrap();
        assert_eq!(r.g, g1);
        assert!(r.h.is_zero());
        assert_eq!(r.groups.len(), 1);
        assert_eq!(r.groups[0].d, dd());
        assert_eq!(r.groups[0].fractions.len(), 1);
        assert_eq!(qx::fmt(&r.groups[0].fractions[0].1), "1");
    }

    #[test]
    fn reduce_polynomial() {
        let f = RatFunc::from_poly(b(&[(1, 1, 2), (3, 0, 0)]));
        let r = reduce(&f).unwrap();
        assert!(r.groups.is_empty() && r.g.is_zero());
        assert_eq!(r.h.delta_y(), f);
    }
}
