//! Bivariate polynomials over Q.
//!
//! Terms are kept in a sparse map ordered by the graded-lexicographic order
//! with `y > x`, so the last entry is always the leading term. The two
//! recursive views (`y_view`, `x_view`) expose the same polynomial as an
//! element of Q[x][y] or Q[y][x].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::poly::Poly;
use crate::rat::{fmt_rat, int, lcm_denoms, Rat};
use crate::upoly::UPoly;

/// Exponent pair of `x^x * y^y`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    pub x: u32,
    pub y: u32,
}

impl Mono {
    pub fn new(x: u32, y: u32) -> Self {
        Mono { x, y }
    }

    pub fn total(&self) -> u32 {
        self.x + self.y
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.x <= other.x && self.y <= other.y
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.total(), self.y).cmp(&(other.total(), other.y))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One of the two variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BPoly {
    terms: BTreeMap<Mono, Rat>,
}

impl BPoly {
    pub fn zero() -> Self {
        BPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rat::one(), 0, 1)
    }

    pub fn monomial(c: Rat, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::new(i, j), c);
        }
        BPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Mono, Rat)>) -> Self {
        let mut terms: BTreeMap<Mono, Rat> = BTreeMap::new();
        for (m, c) in it {
            add_term(&mut terms, m, c);
        }
        BPoly { terms }
    }

    /// Integer coefficients given as `(coeff, deg_x, deg_y)` triples.
    pub fn from_i64_terms(ts: &[(i64, u32, u32)]) -> Self {
        Self::from_terms(ts.iter().map(|&(c, i, j)| (Mono::new(i, j), int(c))))
    }

    /// Ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms
            .get(&Mono::new(i, j))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total() == 0)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0, 0).is_one()
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        self.is_constant().then(|| self.coeff(0, 0))
    }

    pub fn deg(&self, v: Var) -> Option<usize> {
        match v {
            Var::X => self.terms.keys().map(|m| m.x as usize).max(),
            Var::Y => self.terms.keys().map(|m| m.y as usize).max(),
        }
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.deg(Var::X)
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.deg(Var::Y)
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().last().map(|m| m.total() as usize)
    }

    pub fn is_free_of(&self, v: Var) -> bool {
        self.deg(v).unwrap_or(0) == 0
    }

    /// Leading term under graded-lex, `y > x`.
    pub fn leading_term(&self) -> Option<(Mono, Rat)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c.clone()))
    }

    pub fn lc(&self) -> Rat {
        self.leading_term()
            .map(|(_, c)| c)
            .unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn swap_xy(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Mono::new(m.y, m.x), c.clone())),
        )
    }

    /// Polynomial in y with coefficients in Q[x].
    pub fn y_view(&self) -> Poly<UPoly> {
        self.view(Var::Y)
    }

    /// Polynomial in x with coefficients in Q[y].
    pub fn x_view(&self) -> Poly<UPoly> {
        self.view(Var::X)
    }

    /// Polynomial in `main` with coefficients polynomials in the other variable.
    pub fn view(&self, main: Var) -> Poly<UPoly> {
        let n = self.deg(main).map_or(0, |d| d + 1);
        let mut rows: Vec<Vec<Rat>> = vec![Vec::new(); n];
        for (m, c) in &self.terms {
            let (outer, inner) = match main {
                Var::Y => (m.y as usize, m.x as usize),
                Var::X => (m.x as usize, m.y as usize),
            };
            let row = &mut rows[outer];
            if row.len() <= inner {
                row.resize(inner + 1, Rat::zero());
            }
            row[inner] = c.clone();
        }
        Poly::new(rows.into_iter().map(UPoly::new).collect())
    }

    pub fn from_y_view(p: &Poly<UPoly>) -> Self {
        Self::from_view(p, Var::Y)
    }

    pub fn from_x_view(p: &Poly<UPoly>) -> Self {
        Self::from_view(p, Var::X)
    }

    pub fn from_view(p: &Poly<UPoly>, main: Var) -> Self {
        let mut terms = BTreeMap::new();
        for (outer, row) in p.coeffs().iter().enumerate() {
            for (inner, c) in row.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let m = match main {
                    Var::Y => Mono::new(inner as u32, outer as u32),
                    Var::X => Mono::new(outer as u32, inner as u32),
                };
                terms.insert(m, c.clone());
            }
        }
        BPoly { terms }
    }

    /// Embeds a univariate polynomial as a polynomial in `v`.
    pub fn from_upoly(p: &UPoly, v: Var) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| {
            let m = match v {
                Var::X => Mono::new(k as u32, 0),
                Var::Y => Mono::new(0, k as u32),
            };
            (m, c.clone())
        }))
    }

    /// The polynomial as a univariate polynomial in `v`, if it is free of the
    /// other variable.
    pub fn to_upoly(&self, v: Var) -> Option<UPoly> {
        if !self.is_free_of(v.other()) {
            return None;
        }
        let n = self.deg(v).map_or(0, |d| d + 1);
        let mut cs = vec![Rat::zero(); n];
        for (m, c) in &self.terms {
            let k = match v {
                Var::X => m.x,
                Var::Y => m.y,
            };
            cs[k as usize] = c.clone();
        }
        Some(UPoly::new(cs))
    }

    /// `p(x + m, y + n)`.
    pub fn shift(&self, m: i64, n: i64) -> Self {
        self.shift_rat(&int(m), &int(n))
    }

    pub fn shift_rat(&self, m: &Rat, n: &Rat) -> Self {
        if self.is_constant() || (m.is_zero() && n.is_zero()) {
            return self.clone();
        }
        let view = self.y_view();
        let view = if m.is_zero() {
            view
        } else {
            view.map(|c| c.shift(m))
        };
        let view = if n.is_zero() {
            view
        } else {
            view.shift(&UPoly::constant(n.clone()))
        };
        Self::from_y_view(&view)
    }

    /// Substitutes `x = c`, giving a polynomial in y.
    pub fn eval_x(&self, c: &Rat) -> UPoly {
        UPoly::new(self.y_view().coeffs().iter().map(|k| k.eval(c)).collect())
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        self.eval_x(x).eval(y)
    }

    pub fn derivative(&self, v: Var) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(m, c)| match v {
            Var::X if m.x > 0 => Some((Mono::new(m.x - 1, m.y), c * int(m.x as i64))),
            Var::Y if m.y > 0 => Some((Mono::new(m.x, m.y - 1), c * int(m.y as i64))),
            _ => None,
        }))
    }

    /// Exact quotient `self / d` in Q[x, y], or `None` when `d` does not
    /// divide `self`. Panics on a zero divisor.
    pub fn div_exact(&self, d: &BPoly) -> Option<BPoly> {
        let (dm, dc) = d.leading_term().expect("division by the zero polynomial");
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&(Rat::one() / c)));
        }
        let (dx, dy) = (d.deg_x().unwrap(), d.deg_y().unwrap());
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((rm, rc)) = rem.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            if !dm.divides(&rm) {
                return None;
            }
            let qm = Mono::new(rm.x - dm.x, rm.y - dm.y);
            let qc = rc / &dc;
            for (m, c) in &d.terms {
                add_term(&mut rem, Mono::new(m.x + qm.x, m.y + qm.y), -(c * &qc));
            }
            // Every term of the remainder eventually needs a quotient term of
            // bounded degree; bail out early when that bound is exceeded.
            if let Some(sx) = self.deg_x() {
                if (qm.x as usize) + dx > sx || (qm.y as usize) + dy > self.deg_y().unwrap() {
                    return None;
                }
            }
            quot.insert(qm, qc);
        }
        Some(BPoly { terms: quot })
    }

    /// Splits `self = scale * prim` with `prim` integral, primitive and with
    /// positive graded-lex leading coefficient.
    pub fn integer_primitive(&self) -> (Rat, BPoly) {
        if self.is_zero() {
            return (Rat::zero(), BPoly::zero());
        }
        let l = lcm_denoms(self.terms.values());
        let lr = Rat::from_integer(l.clone());
        let ints: Vec<(Mono, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| (*m, (c * &lr).to_integer()))
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |a, (_, c)| a.gcd(c));
        if self.lc().is_negative() {
            g = -g;
        }
        let prim = BPoly {
            terms: ints
                .into_iter()
                .map(|(m, c)| (m, Rat::from_integer(c / &g)))
                .collect(),
        };
        (Rat::new(g, l), prim)
    }

    /// Canonical associate: integral, primitive, positive leading coefficient.
    pub fn normalized(&self) -> BPoly {
        self.integer_primitive().1
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Terms sorted for printing: descending `(deg_y, deg_x)`.
    fn print_order(&self) -> Vec<(&Mono, &Rat)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by_key(|t| std::cmp::Reverse((t.0.y, t.0.x)));
        ts
    }

    /// Renders with the given variable names.
    pub fn fmt_with(&self, xname: &str, yname: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.print_order().into_iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if m.total() == 0 || !a.is_one() {
                factors.push(fmt_rat(&a));
            }
            for (name, e) in [(xname, m.x), (yname, m.y)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

fn add_term(terms: &mut BTreeMap<Mono, Rat>, m: Mono, c: Rat) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&m) {
        Some(slot) => {
            *slot += c;
            if slot.is_zero() {
                terms.remove(&m);
            }
        }
        None => {
            terms.insert(m, c);
        }
    }
}

impl Ord for BPoly {
    /// Graded-lex comparison of the term sequences from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    let o = ma.cmp(mb).then_with(|| ca.cmp(cb));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
    }
}

impl PartialOrd for BPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a BPoly> for &'a BPoly {
    type Output = BPoly;

    fn add(self, rhs: &'a BPoly) -> BPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            add_term(&mut terms, *m, c.clone());
        }
        BPoly { terms }
    }
}

impl<'a> Sub<&'a BPoly> for &'a BPoly {
    type Output = BPoly;

    fn sub(self, rhs: &'a BPoly) -> BPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            add_term(&mut terms, *m, -c.clone());
        }
        BPoly { terms }
    }
}

impl<'a> Mul<&'a BPoly> for &'a BPoly {
    type Output = BPoly;

    fn mul(self, rhs: &'a BPoly) -> BPoly {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                add_term(&mut terms, Mono::new(ma.x + mb.x, ma.y + mb.y), ca * cb);
            }
        }
        BPoly { terms }
    }
}

impl Neg for &BPoly {
    type Output = BPoly;

    fn neg(self) -> BPoly {
        BPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Add for BPoly {
    type Output = BPoly;

    fn add(self, rhs: BPoly) -> BPoly {
        &self + &rhs
    }
}

impl Sub for BPoly {
    type Output = BPoly;

    fn sub(self, rhs: BPoly) -> BPoly {
        &self - &rhs
    }
}

impl Mul for BPoly {
    type Output = BPoly;

    fn mul(self, rhs: BPoly) -> BPoly {
        &self * &rhs
    }
}

impl Neg for BPoly {
    type Output = BPoly;

    fn neg(self) -> BPoly {
        -&self
    }
}

impl fmt::Display for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with("x", "y"))
    }
}

impl Serialize for BPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Renders a univariate polynomial in the named variable.
pub fn fmt_upoly(p: &UPoly, v: Var) -> String {
    BPoly::from_upoly(p, v).to_string()
}
