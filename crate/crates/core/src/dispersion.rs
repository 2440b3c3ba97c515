//! Dispersion sets: the integer shifts carrying one polynomial onto another.

use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::bpoly::{BPoly, Var};
use crate::error::{Error, Result};
use crate::factor::factor_upoly;
use crate::rat::{int, lcm_denoms, to_i64, Rat};
use crate::upoly::{gcd_q, interpolate, UPoly};

/// `{n : f = σ^n g}` for a single shift variable.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", content = "values", rename_all = "snake_case")]
pub enum ShiftSet1D {
    Empty,
    Finite(Vec<i64>),
    AllIntegers,
}

impl ShiftSet1D {
    pub fn contains(&self, n: i64) -> bool {
        match self {
            ShiftSet1D::Empty => false,
            ShiftSet1D::Finite(v) => v.binary_search(&n).is_ok(),
            ShiftSet1D::AllIntegers => true,
        }
    }
}

/// `{base + t * dir : t ∈ Z}`, stored in a canonical form: the first nonzero
/// entry of `dir` is positive and `base` is the representative whose
/// coordinate along that entry lies in `[0, dir)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Line {
    pub base: (i64, i64),
    pub dir: (i64, i64),
}

impl Line {
    pub fn new(base: (i64, i64), dir: (i64, i64)) -> Self {
        assert!(dir != (0, 0), "line with zero direction");
        let dir = if dir.0 < 0 || (dir.0 == 0 && dir.1 < 0) {
            (-dir.0, -dir.1)
        } else {
            dir
        };
        let t = if dir.0 != 0 {
            Integer::div_floor(&base.0, &dir.0)
        } else {
            Integer::div_floor(&base.1, &dir.1)
        };
        Line {
            base: (base.0 - t * dir.0, base.1 - t * dir.1),
            dir,
        }
    }

    pub fn at(&self, t: i64) -> (i64, i64) {
        (self.base.0 + t * self.dir.0, self.base.1 + t * self.dir.1)
    }

    /// The point minimizing `(|n|, |m|)`.
    pub fn nearest_to_x_axis(&self) -> (i64, i64) {
        let (u, v) = self.dir;
        let ts: Vec<i64> = if v == 0 {
            let t = if u == 0 { 0 } else { -self.base.0 / u };
            vec![t - 1, t, t + 1]
        } else {
            let t = Integer::div_floor(&-self.base.1, &v);
            vec![t - 1, t, t + 1, t + 2]
        };
        ts.into_iter()
            .map(|t| self.at(t))
            .min_by_key(|&(m, n)| (n.abs(), m.abs(), m < 0, n < 0))
            .unwrap()
    }

    pub fn contains(&self, (m, n): (i64, i64)) -> bool {
        let (dm, dn) = (m - self.base.0, n - self.base.1);
        let (u, v) = self.dir;
        if dm * v != dn * u {
            return false;
        }
        if u != 0 {
            dm % u == 0
        } else {
            dn % v == 0
        }
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})+t*({},{})",
            self.base.0, self.base.1, self.dir.0, self.dir.1
        )
    }
}

/// `Disp(f, g) = {(m, n) : f = σx^m σy^n g}` as a union of points and lines,
/// or the whole plane.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct DispSet {
    pub all_plane: bool,
    pub points: Vec<(i64, i64)>,
    pub lines: Vec<Line>,
}

impl DispSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn plane() -> Self {
        DispSet {
            all_plane: true,
            ..Self::default()
        }
    }

    fn from_parts(points: Vec<(i64, i64)>, lines: Vec<Line>) -> Self {
        let mut lines = lines;
        lines.sort();
        lines.dedup();
        let mut points: Vec<_> = points
            .into_iter()
            .filter(|p| !lines.iter().any(|l| l.contains(*p)))
            .collect();
        points.sort_unstable();
        points.dedup();
        DispSet {
            all_plane: false,
            points,
            lines,
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.all_plane && self.points.is_empty() && self.lines.is_empty()
    }

    pub fn contains(&self, p: (i64, i64)) -> bool {
        self.all_plane || self.points.contains(&p) || self.lines.iter().any(|l| l.contains(p))
    }
}

impl PartialOrd for Line {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Line {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.dir, self.base).cmp(&(other.dir, other.base))
    }
}

impl fmt::Display for DispSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.all_plane {
            return f.write_str("Z^2");
        }
        let items: Vec<String> = self
            .points
            .iter()
            .map(|(m, n)| format!("({m},{n})"))
            .chain(self.lines.iter().map(|l| l.to_string()))
            .collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

fn shift_in(p: &BPoly, v: Var, n: i64) -> BPoly {
    match v {
        Var::X => p.shift(n, 0),
        Var::Y => p.shift(0, n),
    }
}

/// `{n : f = σ_v^n g}`, the other variable acting as a coefficient.
pub fn disp_uni(f: &BPoly, g: &BPoly, v: Var) -> ShiftSet1D {
    let (df, dg) = (f.deg(v), g.deg(v));
    if df != dg {
        return ShiftSet1D::Empty;
    }
    let d = match df {
        None | Some(0) => {
            return if f == g {
                ShiftSet1D::AllIntegers
            } else {
                ShiftSet1D::Empty
            };
        }
        Some(d) => d,
    };
    let (fv, gv) = (f.view(v), g.view(v));
    if fv.lc() != gv.lc() {
        return ShiftSet1D::Empty;
    }
    // The coefficient of v^(d-1) in g(v + n) is b_{d-1} + d * n * b_d.
    let diff = &fv.coeff(d - 1) - &gv.coeff(d - 1);
    let denom = gv.lc().scale(&int(d as i64));
    let n = match diff.exact_div(&denom) {
        Some(q) if q.is_constant() => q.coeff(0),
        _ => return ShiftSet1D::Empty,
    };
    match to_i64(&n) {
        Some(n) if shift_in(g, v, n) == *f => ShiftSet1D::Finite(vec![n]),
        _ => ShiftSet1D::Empty,
    }
}

/// Integer solutions of `a*m + b*n = c`, or `None` when there are none.
pub fn solve_diophantine(a: i64, b: i64, c: i64) -> Result<Option<Line>> {
    if a == 0 && b == 0 {
        return Err(Error::DegenerateEquation);
    }
    let e = (a as i128).extended_gcd(&(b as i128));
    let g = e.gcd;
    if (c as i128) % g != 0 {
        return Ok(None);
    }
    let k = c as i128 / g;
    let fit = |v: i128| i64::try_from(v).map_err(|_| Error::Internal("shift overflow".into()));
    let (u, w) = (b as i128 / g, -(a as i128) / g);
    // Reduce the particular solution before narrowing to i64.
    let (mut m, mut n) = (e.x * k, e.y * k);
    if u != 0 {
        let t = Integer::div_floor(&m, &u);
        m -= t * u;
        n -= t * w;
    } else {
        let t = Integer::div_floor(&n, &w);
        m -= t * u;
        n -= t * w;
    }
    Ok(Some(Line::new((fit(m)?, fit(n)?), (fit(u)?, fit(w)?))))
}

/// Integer roots of a univariate polynomial over Q.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IntegerRoots {
    All,
    Finite(Vec<i64>),
}

/// Integer roots, read off from the monic linear factors of the irreducible
/// factorization.
pub fn integer_roots(p: &UPoly) -> IntegerRoots {
    if p.is_zero() {
        return IntegerRoots::All;
    }
    if p.is_constant() {
        return IntegerRoots::Finite(Vec::new());
    }
    let mut roots: Vec<i64> = factor_upoly(p)
        .expect("nonzero polynomial")
        .factors
        .iter()
        .filter(|(f, _)| f.degree() == Some(1) && f.lc() == int(1))
        .filter_map(|(f, _)| (-f.coeff(0)).to_integer().to_i64())
        .collect();
    roots.sort_unstable();
    IntegerRoots::Finite(roots)
}

/// The dispersion set of two bivariate polynomials.
pub fn disp_bi(f: &BPoly, g: &BPoly) -> Result<DispSet> {
    if f.deg_x() != g.deg_x() {
        return Ok(DispSet::empty());
    }
    let d = match f.deg_x() {
        None | Some(0) => {
            return Ok(match disp_uni(f, g, Var::Y) {
                ShiftSet1D::Empty => DispSet::empty(),
                ShiftSet1D::AllIntegers => DispSet::plane(),
                ShiftSet1D::Finite(ns) => DispSet::from_parts(
                    Vec::new(),
                    ns.into_iter().map(|n| Line::new((0, n), (1, 0))).collect(),
                ),
            });
        }
        Some(d) => d,
    };
    let (fv, gv) = (f.x_view(), g.x_view());
    let (ad, bd) = (fv.lc(), gv.lc());

    // Nonconstant leading coefficient: n ranges over a finite set.
    if !ad.is_constant() || !bd.is_constant() {
        let ns = disp_uni(
            &BPoly::from_upoly(&ad, Var::Y),
            &BPoly::from_upoly(&bd, Var::Y),
            Var::Y,
        );
        let ShiftSet1D::Finite(ns) = ns else {
            return Ok(DispSet::empty());
        };
        let mut points = Vec::new();
        for n0 in ns {
            if let ShiftSet1D::Finite(ms) = disp_uni(f, &g.shift(0, n0), Var::X) {
                points.extend(ms.into_iter().map(|m| (m, n0)));
            }
        }
        return Ok(DispSet::from_parts(points, Vec::new()));
    }
    if ad != bd {
        return Ok(DispSet::empty());
    }
    let c = ad.coeff(0);
    let dc = &c * int(d as i64);
    let (a1, b1) = (fv.coeff(d - 1), gv.coeff(d - 1));
    let h = a1.degree().unwrap_or(0);

    if h > 1 {
        // Case 1: n is fixed by the coefficient of y^(h-1).
        if b1.degree() != Some(h) || a1.lc() != b1.lc() {
            return Ok(DispSet::empty());
        }
        let n = (a1.coeff(h - 1) - b1.coeff(h - 1)) / (b1.lc() * int(h as i64));
        let Some(n0) = to_i64(&n) else {
            return Ok(DispSet::empty());
        };
        let points = match disp_uni(f, &g.shift(0, n0), Var::X) {
            ShiftSet1D::Finite(ms) => ms.into_iter().map(|m| (m, n0)).collect(),
            _ => Vec::new(),
        };
        return Ok(DispSet::from_parts(points, Vec::new()));
    }
    if h == 1 {
        // Case 2: (m, n) lies on a line; the remaining coefficients cut it.
        if b1.degree() != Some(1) || a1.lc() != b1.lc() {
            return Ok(DispSet::empty());
        }
        let eq = [dc, a1.lc(), a1.coeff(0) - b1.coeff(0)];
        let l = Rat::from_integer(lcm_denoms(eq.iter()));
        let ints: Vec<i64> = eq
            .iter()
            .map(|q| {
                (q * &l)
                    .to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::Internal("shift overflow".into()))
            })
            .collect::<Result<_>>()?;
        let Some(line) = solve_diophantine(ints[0], ints[1], ints[2])? else {
            return Ok(DispSet::empty());
        };
        return Ok(cut_line(f, g, line));
    }
    // Case 3: m is fixed by the constant term.
    if b1.degree().unwrap_or(0) > 0 {
        return Ok(DispSet::empty());
    }
    let m = (a1.coeff(0) - b1.coeff(0)) / dc;
    let Some(m0) = to_i64(&m) else {
        return Ok(DispSet::empty());
    };
    Ok(match disp_uni(f, &g.shift(m0, 0), Var::Y) {
        ShiftSet1D::Empty => DispSet::empty(),
        ShiftSet1D::Finite(ns) => {
            DispSet::from_parts(ns.into_iter().map(|n| (m0, n)).collect(), Vec::new())
        }
        ShiftSet1D::AllIntegers => {
            DispSet::from_parts(Vec::new(), vec![Line::new((m0, 0), (0, 1))])
        }
    })
}

/// Restricts a candidate line to the parameters `t` with
/// `f = g(x + m(t), y + n(t))`. Every coefficient of the difference is a
/// polynomial in `t` of degree at most the total degree of `g`; these are
/// recovered by interpolation and their common integer roots kept.
fn cut_line(f: &BPoly, g: &BPoly, line: Line) -> DispSet {
    let samples = g.total_degree().unwrap_or(0) + 1;
    let diffs: Vec<BPoly> = (0..samples as i64)
        .map(|t| {
            let (m, n) = line.at(t);
            f - &g.shift(m, n)
        })
        .collect();
    let ts: Vec<Rat> = (0..samples as i64).map(int).collect();
    let mut monos: Vec<_> = diffs
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| *m))
        .collect();
    monos.sort();
    monos.dedup();
    let mut common = UPoly::zero();
    for mono in monos {
        let ys: Vec<Rat> = diffs.iter().map(|p| p.coeff(mono.x, mono.y)).collect();
        common = gcd_q(&common, &interpolate(&ts, &ys));
        if common.is_constant() && !common.is_zero() {
            return DispSet::empty();
        }
    }
    match integer_roots(&common) {
        IntegerRoots::All => DispSet::from_parts(Vec::new(), vec![line]),
        IntegerRoots::Finite(roots) => {
            DispSet::from_parts(roots.into_iter().map(|t| line.at(t)).collect(), Vec::new())
        }
    }
}

/// Generator of the shift stabilizer `Disp(d, d)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Stabilizer {
    /// `σx^t d = σy^ℓ d` with `t > 0` minimal, or `None` when the stabilizer
    /// is trivial.
    pub generator: Option<(i64, i64)>,
}

impl Stabilizer {
    pub fn is_trivial(&self) -> bool {
        self.generator.is_none()
    }
}

/// The stabilizer of a nonconstant `d` with positive y-degree.
///
/// `(m, n) ∈ Disp(d, d)` means `σx^m d = σy^(-n) d`, so the generator
/// `(t, ℓ)` is read off as `(m, -n)`.
pub fn stabilizer(d: &BPoly) -> Result<Stabilizer> {
    if d.is_constant() {
        return Err(Error::Precondition("stabilizer of a constant".into()));
    }
    if d.deg_y().unwrap_or(0) == 0 {
        return Err(Error::Precondition(
            "stabilizer needs positive degree in y".into(),
        ));
    }
    let s = disp_bi(d, d)?;
    let bad = || Error::Internal(format!("{d} is invariant under a pure y-shift"));
    if s.all_plane || s.lines.len() > 1 {
        return Err(bad());
    }
    if let Some(line) = s.lines.first() {
        if !s.points.is_empty() || line.dir.0 == 0 {
            return Err(bad());
        }
        return Ok(Stabilizer {
            generator: Some((line.dir.0, -line.dir.1)),
        });
    }
    if s.points != [(0, 0)] {
        return Err(Error::Internal(format!("stabilizer of {d} is not a group")));
    }
    Ok(Stabilizer { generator: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(ts: &[(i64, u32, u32)]) -> BPoly {
        BPoly::from_i64_terms(ts)
    }

    fn quadratic_pair() -> (BPoly, BPoly) {
        (
            b(&[(2, 2, 0), (2, 1, 1), (1, 0, 2), (1, 0, 1), (1, 0, 0)]),
            b(&[
                (2, 2, 0),
                (2, 1, 1),
                (1, 0, 2),
                (2, 1, 0),
                (1, 0, 1),
                (1, 0, 0),
            ]),
        )
    }

    #[test]
    fn univariate_dispersion() {
        let f = b(&[(1, 2, 0), (1, 1, 0)]);
        let g = b(&[(1, 2, 0), (-1, 1, 0)]);
        assert_eq!(disp_uni(&f, &g, Var::X), ShiftSet1D::Finite(vec![1]));
        assert_eq!(disp_uni(&f, &f, Var::X), ShiftSet1D::Finite(vec![0]));
        let (three, five) = (BPoly::constant(int(3)), BPoly::constant(int(5)));
        assert_eq!(disp_uni(&three, &five, Var::X), ShiftSet1D::Empty);
        assert_eq!(disp_uni(&three, &three, Var::X), ShiftSet1D::AllIntegers);
    }

    #[test]
    fn diophantine_lines() {
        assert_eq!(
            solve_diophantine(2, 1, -1).unwrap(),
            Some(Line {
                base: (0, -1),
                dir: (1, -2)
            })
        );
        assert_eq!(solve_diophantine(2, 4, 3).unwrap(), None);
        assert_eq!(
            solve_diophantine(1, 0, 5).unwrap(),
            Some(Line {
                base: (5, 0),
                dir: (0, 1)
            })
        );
        assert_eq!(solve_diophantine(0, 0, 1), Err(Error::DegenerateEquation));
    }

    #[test]
    fn integer_root_extraction() {
        assert_eq!(
            integer_roots(&UPoly::from_i64s(&[-1, 0, 1])),
            IntegerRoots::Finite(vec![-1, 1])
        );
        assert_eq!(integer_roots(&UPoly::zero()), IntegerRoots::All);
        // 2t^2 - t - 1 = (2t + 1)(t - 1)
        assert_eq!(
            integer_roots(&UPoly::from_i64s(&[-1, -1, 2])),
            IntegerRoots::Finite(vec![1])
        );
    }

    #[test]
    fn shift_equivalent_pair() {
        let (f, g) = quadratic_pair();
        let s = disp_bi(&f, &g).unwrap();
        assert_eq!(s.to_string(), "{(-1,1)}");
        assert_eq!(g.shift(-1, 1), f);
    }

    #[test]
    fn diagonal_line() {
        let d = b(&[(1, 2, 0), (2, 1, 1), (1, 0, 2), (-2, 0, 0)]);
        let s = disp_bi(&d, &d).unwrap();
        assert_eq!(
            s.lines,
            vec![Line {
                base: (0, 0),
                dir: (1, -1)
            }]
        );
        assert!(s.points.is_empty());
    }

    #[test]
    fn sum_of_squares_plus_one() {
        let f = b(&[(1, 2, 0), (1, 0, 2)]);
        let g = b(&[(1, 2, 0), (1, 0, 2), (1, 0, 0)]);
        assert!(disp_bi(&f, &g).unwrap().is_empty());
    }

    #[test]
    fn stabilizers() {
        let d = b(&[(1, 2, 0), (2, 1, 1), (1, 0, 2), (-2, 0, 0)]);
        assert_eq!(stabilizer(&d).unwrap().generator, Some((1, 1)));
        let s = b(&[(1, 2, 0), (1, 0, 2)]);
        assert!(stabilizer(&s).unwrap().is_trivial());
        let l = b(&[(1, 0, 1), (-2, 1, 0)]);
        assert_eq!(stabilizer(&l).unwrap().generator, Some((1, -2)));
        assert_eq!(l.shift(1, 0), l.shift(0, -2));
    }

    #[test]
    fn y_free_and_x_free_inputs() {
        let p = b(&[(1, 0, 2), (1, 0, 0)]);
        let s = disp_bi(&p, &p).unwrap();
        assert_eq!(
            s.lines,
            vec![Line {
                base: (0, 0),
                dir: (1, 0)
            }]
        );
        let q = b(&[(1, 2, 0), (3, 0, 0)]);
        let s = disp_bi(&q, &q).unwrap();
        assert_eq!(
            s.lines,
            vec![Line {
                base: (0, 0),
                dir: (0, 1)
            }]
        );
        assert!(disp_bi(&BPoly::zero(), &BPoly::zero()).unwrap().all_plane);
    }
}
