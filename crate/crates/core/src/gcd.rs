//! Greatest common divisors in Q[x, y]: contents in Q[x], primitive parts
//! by evaluation at integer points in x and interpolation.

use num_traits::{One, Zero};

use crate::bpoly::BPoly;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::upoly::{gcd_q, interpolate, UPoly};

/// Monic gcd in Q[x] of the coefficients of `p` viewed in Q[x][y].
pub fn content_y(p: &Poly<UPoly>) -> UPoly {
    let mut g = UPoly::zero();
    for c in p.coeffs() {
        g = gcd_q(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn div_by_content(p: &Poly<UPoly>, c: &UPoly) -> Poly<UPoly> {
    p.map(|a| a.exact_div(c).expect("content divides every coefficient"))
}

fn primitive_part(p: &Poly<UPoly>) -> Poly<UPoly> {
    let c = content_y(p);
    div_by_content(p, &c)
}

/// Gcd in Q[x, y], normalized to an integral primitive polynomial with
/// positive graded-lex leading coefficient.
pub fn gcd_bpoly(a: &BPoly, b: &BPoly) -> Result<BPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    if a.is_zero() {
        return Ok(b.normalized());
    }
    if b.is_zero() {
        return Ok(a.normalized());
    }
    if a.is_constant() || b.is_constant() {
        return Ok(BPoly::one());
    }
    let (av, bv) = (a.y_view(), b.y_view());
    let (ca, cb) = (content_y(&av), content_y(&bv));
    let content = gcd_q(&ca, &cb);
    let (p, q) = (div_by_content(&av, &ca), div_by_content(&bv, &cb));
    let prim = if p.degree() == Some(0) || q.degree() == Some(0) {
        Poly::one()
    } else {
        gcd_primitive(&p, &q)
    };
    let g = &BPoly::from_y_view(&prim) * &BPoly::from_upoly(&content, crate::bpoly::Var::X);
    Ok(g.normalized())
}

fn max_x_degree(p: &Poly<UPoly>) -> usize {
    p.coeffs()
        .iter()
        .filter_map(|c| c.degree())
        .max()
        .unwrap_or(0)
}

/// Integers 0, 1, -1, 2, -2, ...
fn sample_points() -> impl Iterator<Item = i64> {
    (0i64..).map(|k| if k % 2 == 1 { (k + 1) / 2 } else { -k / 2 })
}

/// Gcd of two primitive polynomials of positive degree in y.
///
/// At a point `x = c` where neither leading coefficient vanishes, the monic
/// gcd of the specializations has degree at least that of the true gcd `G`,
/// with equality outside finitely many points. Scaling by
/// `γ(c) = gcd(lc p, lc q)(c)` makes the images agree with `(γ / lc G) G`,
/// whose x-degree is bounded, so enough images of minimal degree interpolate
/// it. The candidate is accepted after trial division.
fn gcd_primitive(p: &Poly<UPoly>, q: &Poly<UPoly>) -> Poly<UPoly> {
    let gamma = gcd_q(&p.lc(), &q.lc());
    let need = max_x_degree(p).min(max_x_degree(q)) + gamma.degree().unwrap_or(0) + 1;
    let mut best = p.degree().unwrap().min(q.degree().unwrap());
    let mut xs: Vec<Rat> = Vec::new();
    let mut images: Vec<UPoly> = Vec::new();
    let (pb, qb) = (BPoly::from_y_view(p), BPoly::from_y_view(q));
    for c in sample_points() {
        let c = Rat::from_integer(c.into());
        if p.lc().eval(&c).is_zero() || q.lc().eval(&c).is_zero() {
            continue;
        }
        let g = gcd_q(&p.map(|a| a.eval(&c)), &q.map(|a| a.eval(&c)));
        let d = g.degree().unwrap();
        if d == 0 {
            return Poly::one();
        }
        if d > best {
            continue;
        }
        if d < best {
            best = d;
            xs.clear();
            images.clear();
        }
        images.push(g.scale(&gamma.eval(&c)));
        xs.push(c);
        if xs.len() < need {
            continue;
        }
        let coeffs: Vec<UPoly> = (0..=best)
            .map(|j| {
                let ys: Vec<Rat> = images.iter().map(|g| g.coeff(j)).collect();
                interpolate(&xs, &ys)
            })
            .collect();
        let cand = primitive_part(&Poly::new(coeffs));
        let cb = BPoly::from_y_view(&cand);
        if pb.div_exact(&cb).is_some() && qb.div_exact(&cb).is_some() {
            return cand;
        }
    }
    unreachable!("sample points are unbounded")
}

/// Least common multiple, normalized like [`gcd_bpoly`].
pub fn lcm_bpoly(a: &BPoly, b: &BPoly) -> Result<BPoly> {
    let g = gcd_bpoly(a, b)?;
    let q = a
        .div_exact(&g)
        .ok_or_else(|| Error::Internal("gcd does not divide".into()))?;
    Ok((&q * b).normalized())
}
