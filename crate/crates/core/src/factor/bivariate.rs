//! Bivariate factorization by specializing x, factoring in y, lifting the
//! factors x-adically, and recombining.

use itertools::Itertools;
use num_traits::Zero;

use super::factor_upoly;
use crate::bpoly::{BPoly, Var};
use crate::error::{Error, Result};
use crate::gcd::{content_y, gcd_bpoly};
use crate::poly::Poly;
use crate::rat::{int, Rat};
use crate::upoly::{gcd_q, UPoly};

/// Power series in x truncated after `len` terms, coefficients in Q[y].
type Series = Vec<UPoly>;

fn div_exact(a: &BPoly, d: &BPoly) -> Result<BPoly> {
    a.div_exact(d)
        .ok_or_else(|| Error::Internal("inexact division in squarefree decomposition".into()))
}

/// Squarefree decomposition with respect to y of a polynomial without
/// content in Q[x]. Parts are normalized and listed by increasing
/// multiplicity.
pub fn squarefree_y(p: &BPoly) -> Result<Vec<(BPoly, usize)>> {
    let mut out = Vec::new();
    if p.deg_y().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let dp = p.derivative(Var::Y);
    let c = gcd_bpoly(p, &dp)?;
    let mut b = div_exact(p, &c)?;
    let mut d = &div_exact(&dp, &c)? - &b.derivative(Var::Y);
    let mut k = 1;
    while !b.is_constant() {
        let a = gcd_bpoly(&b, &d)?;
        b = div_exact(&b, &a)?;
        let c = div_exact(&d, &a)?;
        d = &c - &b.derivative(Var::Y);
        if !a.is_constant() {
            out.push((a.normalized(), k));
        }
        k += 1;
    }
    Ok(out)
}

/// Evaluation points 0, 1, -1, 2, -2, ...
fn points() -> impl Iterator<Item = i64> {
    (0..).map(|k: i64| if k % 2 == 1 { (k + 1) / 2 } else { -k / 2 })
}

/// Irreducible factors of a squarefree `p` with no content in Q[x] and
/// positive degree in y.
pub(super) fn factor_squarefree(p: &BPoly) -> Result<Vec<BPoly>> {
    let dy = p.deg_y().unwrap();
    if dy == 1 || p.deg_x().unwrap_or(0) == 0 {
        return Ok(vec![p.normalized()]);
    }
    let lc_y = p.y_view().lc();

    // Among the first few good specializations, keep the one with the fewest
    // univariate factors.
    let mut best: Option<(i64, Vec<UPoly>)> = None;
    let mut tried = 0;
    for a in points().take(64) {
        let ar = int(a);
        if lc_y.eval(&ar).is_zero() {
            continue;
        }
        let img = p.eval_x(&ar);
        if !gcd_q(&img, &img.derivative()).is_constant() {
            continue;
        }
        let fs: Vec<UPoly> = factor_upoly(&img)?
            .factors
            .into_iter()
            .map(|(f, _)| f.monic())
            .collect();
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((a, fs));
        }
        tried += 1;
        if tried == 3 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (a, univ) = best.ok_or_else(|| Error::Internal("no good specialization point".into()))?;
    if univ.len() == 1 {
        return Ok(vec![p.normalized()]);
    }

    let shifted = p.shift(a, 0);
    let len = shifted.deg_x().unwrap() + 1;
    let series: Series = pad(shifted.x_view().into_coeffs(), len);
    let lifted = lift_all(&series, &univ, len);
    let found = recombine(shifted, &lifted)?;
    Ok(found
        .into_iter()
        .map(|f| f.shift(-a, 0).normalized())
        .collect())
}

fn pad(mut s: Series, len: usize) -> Series {
    s.resize(len, UPoly::zero());
    s
}

/// Leading y-coefficient of each series term.
fn lc_series(f: &Series, dy: usize) -> Vec<Rat> {
    f.iter().map(|c| c.coeff(dy)).collect()
}

fn series_mul(a: &Series, b: &Series, len: usize) -> Series {
    let mut out = vec![UPoly::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Lifts `f ≡ g0 * h0 (mod x)`, `g0` monic in y, to `f ≡ g * h (mod x^len)`
/// with `g` monic in y and the leading y-coefficient of `h` equal to that of
/// `f`.
fn lift(f: &Series, g0: &UPoly, h0: &UPoly, len: usize) -> (Series, Series) {
    let dh = h0.degree().unwrap();
    let df = f[0].degree().unwrap();
    let lcf = lc_series(f, df);
    let mut g = vec![UPoly::zero(); len];
    let mut h = vec![UPoly::zero(); len];
    g[0] = g0.clone();
    h[0] = h0.clone();
    for k in 1..len {
        h[k] = UPoly::monomial(lcf[k].clone(), dh);
    }
    let (_, _, t) = Poly::ext_gcd(g0, h0);
    for k in 1..len {
        let mut e = f[k].clone();
        for i in 0..=k {
            e = &e - &(&g[i] * &h[k - i]);
        }
        if e.is_zero() {
            continue;
        }
        let b = (&t * &e).rem(g0);
        let a = (&e - &(&b * h0)).exact_div(g0).expect("Bezout relation");
        g[k] = &g[k] + &b;
        h[k] = &h[k] + &a;
    }
    (g, h)
}

fn lift_all(f: &Series, univ: &[UPoly], len: usize) -> Vec<Series> {
    let mut out = Vec::new();
    let mut cur = f.clone();
    for (i, g0) in univ.iter().enumerate() {
        let rest = univ[i + 1..]
            .iter()
            .fold(UPoly::constant(cur[0].lc()), |acc, g| &acc * g);
        let (g, h) = lift(&cur, g0, &rest, len);
        out.push(g);
        cur = h;
    }
    out
}

fn from_series(s: &Series, len: usize) -> BPoly {
    BPoly::from_x_view(&Poly::new(s.iter().take(len).cloned().collect()))
}

fn recombine(mut f: BPoly, lifted: &[Series]) -> Result<Vec<BPoly>> {
    let len = lifted[0].len();
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= remaining.len() {
        for subset in remaining.iter().copied().combinations(s) {
            let dx = f.deg_x().unwrap_or(0) + 1;
            let lc = f.y_view().lc();
            let lc_s: Series = pad(
                lc.coeffs()
                    .iter()
                    .map(|c| UPoly::constant(c.clone()))
                    .collect(),
                len,
            );
            let prod = subset
                .iter()
                .fold(lc_s, |acc, &i| series_mul(&acc, &lifted[i], len));
            let cand = from_series(&prod, dx);
            let view = cand.y_view();
            let content = content_y(&view);
            if content.is_zero() {
                continue;
            }
            let cand = BPoly::from_y_view(&view.map(|c| c.div_rem(&content).0));
            if let Some(q) = f.div_exact(&cand) {
                f = q;
                out.push(cand);
                remaining.retain(|i| !subset.contains(i));
                continue 'outer;
            }
        }
        s += 1;
    }
    if !f.is_constant() {
        out.push(f);
    }
    if out.iter().any(|q| q.deg_y().unwrap_or(0) == 0) {
        return Err(Error::Internal(
            "recombination produced a y-free factor".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(ts: &[(i64, u32, u32)]) -> BPoly {
        BPoly::from_i64_terms(ts)
    }

    #[test]
    fn squarefree_parts_in_y() {
        let l = b(&[(1, 1, 0), (1, 0, 1)]);
        let q = b(&[(1, 2, 0), (1, 0, 2), (1, 0, 0)]);
        let p = &l.pow(3) * &q;
        let parts = squarefree_y(&p).unwrap();
        assert_eq!(parts, vec![(q, 1), (l, 3)]);
    }

    #[test]
    fn non_monic_leading_coefficient() {
        // (x*y + 1)(x*y^2 + y + x)
        let a = b(&[(1, 1, 1), (1, 0, 0)]);
        let c = b(&[(1, 1, 2), (1, 0, 1), (1, 1, 0)]);
        let mut fs = factor_squarefree(&(&a * &c)).unwrap();
        fs.sort();
        assert_eq!(fs, vec![a, c]);
    }

    #[test]
    fn three_shifted_copies() {
        let d = b(&[(1, 2, 0), (1, 0, 2), (1, 0, 0)]);
        let p = &(&d * &d.shift(1, 2)) * &d.shift(-3, 1);
        let fs = factor_squarefree(&p).unwrap();
        assert_eq!(fs.len(), 3);
        let prod = fs.iter().fold(BPoly::one(), |acc, f| &acc * f);
        assert_eq!(prod.normalized(), p.normalized());
    }
}
