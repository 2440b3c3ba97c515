//! Factorization over Q: squarefree decomposition and irreducible
//! factorization of univariate and bivariate polynomials.

mod bivariate;
pub(crate) mod modp;
mod zassenhaus;

use num_traits::{One, Zero};

use crate::bpoly::{BPoly, Var};
use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::upoly::{gcd_q, UPoly};

pub use bivariate::squarefree_y;

/// `unit * Π factor^multiplicity`, factors irreducible, integral, primitive,
/// with positive leading coefficient, pairwise non-associate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization<P> {
    pub unit: Rat,
    pub factors: Vec<(P, usize)>,
}

impl Factorization<BPoly> {
    pub fn expand(&self) -> BPoly {
        self.factors
            .iter()
            .fold(BPoly::constant(self.unit.clone()), |acc, (f, k)| {
                &acc * &f.pow(*k)
            })
    }
}

impl std::fmt::Display for Factorization<BPoly> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if !self.unit.is_one() || self.factors.is_empty() {
            parts.push(crate::rat::fmt_rat(&self.unit));
        }
        for (p, k) in &self.factors {
            let base = format!("({p})");
            parts.push(if *k == 1 { base } else { format!("{base}^{k}") });
        }
        f.write_str(&parts.join(" * "))
    }
}

impl serde::Serialize for Factorization<BPoly> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let factors: Vec<(String, usize)> = self
            .factors
            .iter()
            .map(|(p, k)| (p.to_string(), *k))
            .collect();
        let mut st = s.serialize_struct("Factorization", 2)?;
        st.serialize_field("unit", &crate::rat::fmt_rat(&self.unit))?;
        st.serialize_field("factors", &factors)?;
        st.end()
    }
}

impl Factorization<UPoly> {
    pub fn expand(&self) -> UPoly {
        self.factors
            .iter()
            .fold(UPoly::constant(self.unit.clone()), |acc, (f, k)| {
                &acc * &f.pow(*k)
            })
    }
}

/// Yun's squarefree decomposition: monic, pairwise coprime, squarefree parts
/// with increasing multiplicities whose product is `p` up to a unit.
pub fn squarefree_decomp(p: &UPoly) -> Result<Vec<(UPoly, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("squarefree decomposition"));
    }
    let mut out = Vec::new();
    if p.is_constant() {
        return Ok(out);
    }
    let dp = p.derivative();
    let c = gcd_q(p, &dp);
    let mut b = p.div_rem(&c).0;
    let mut d = &dp.div_rem(&c).0 - &b.derivative();
    let mut k = 1;
    while !b.is_constant() {
        let a = gcd_q(&b, &d);
        b = b.div_rem(&a).0;
        let c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        if !a.is_constant() {
            out.push((a, k));
        }
        k += 1;
    }
    Ok(out)
}

fn upoly_key(p: &UPoly) -> BPoly {
    BPoly::from_upoly(p, Var::X)
}

/// Irreducible factorization over Q of a univariate polynomial.
pub fn factor_upoly(p: &UPoly) -> Result<Factorization<UPoly>> {
    let mut factors = Vec::new();
    for (part, k) in squarefree_decomp(p)? {
        let (_, prim) = part.integer_primitive();
        for f in zassenhaus::factor_squarefree(&prim) {
            factors.push((UPoly::from_ints(&f), k));
        }
    }
    factors.sort_by_cached_key(|(f, _)| upoly_key(f));
    let prod = factors
        .iter()
        .fold(UPoly::one(), |acc, (f, k)| &acc * &f.pow(*k));
    let unit = p.lc() / prod.lc();
    Ok(Factorization { unit, factors })
}

/// Irreducible factorization over Q of a bivariate polynomial.
pub fn factor_bpoly(p: &BPoly) -> Result<Factorization<BPoly>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("factorization"));
    }
    let mut factors: Vec<(BPoly, usize)> = Vec::new();
    if let Some(v) = [Var::X, Var::Y]
        .into_iter()
        .find(|&v| p.is_free_of(v.other()))
    {
        let u = p.to_upoly(v).unwrap();
        for (f, k) in factor_upoly(&u)?.factors {
            factors.push((BPoly::from_upoly(&f, v), k));
        }
    } else {
        // Split off the content in Q[x], then the y-primitive part.
        let view = p.y_view();
        let content = crate::gcd::content_y(&view);
        for (f, k) in factor_upoly(&content)?.factors {
            factors.push((BPoly::from_upoly(&f, Var::X), k));
        }
        let prim = BPoly::from_y_view(&view.map(|c| c.div_rem(&content).0));
        for (part, k) in squarefree_y(&prim)? {
            for f in bivariate::factor_squarefree(&part)? {
                factors.push((f, k));
            }
        }
    }
    factors.sort();
    let prod = factors
        .iter()
        .fold(BPoly::one(), |acc, (f, k)| &acc * &f.pow(*k));
    let unit = p.lc() / prod.lc();
    let out = Factorization { unit, factors };
    if out.expand() != *p {
        return Err(Error::Internal(
            "factorization does not reconstruct its input".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn u(cs: &[i64]) -> UPoly {
        UPoly::from_i64s(cs)
    }

    fn b(ts: &[(i64, u32, u32)]) -> BPoly {
        BPoly::from_i64_terms(ts)
    }

    #[test]
    fn squarefree_by_inspection() {
        let parts = squarefree_decomp(&u(&[0, 0, 1, 1])).unwrap();
        assert_eq!(parts, vec![(u(&[1, 1]), 1), (u(&[0, 1]), 2)]);
        assert_eq!(
            squarefree_decomp(&u(&[1, 0, 1])).unwrap(),
            vec![(u(&[1, 0, 1]), 1)]
        );
        assert!(squarefree_decomp(&UPoly::zero()).is_err());
    }

    #[test]
    fn univariate_examples() {
        let f = factor_upoly(&u(&[-1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(u(&[-1, 1]), 1), (u(&[1, 1]), 1)]);
        let f = factor_upoly(&u(&[1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(u(&[1, 0, 1]), 1)]);
        let f = factor_upoly(&u(&[1, 5, 6])).unwrap();
        assert_eq!(f.unit, int(1));
        assert_eq!(f.factors, vec![(u(&[1, 2]), 1), (u(&[1, 3]), 1)]);
    }

    #[test]
    fn difference_of_squares() {
        let f = factor_bpoly(&b(&[(1, 2, 0), (-1, 0, 2)])).unwrap();
        assert_eq!(f.unit, int(-1));
        assert_eq!(
            f.factors,
            vec![
                (b(&[(-1, 1, 0), (1, 0, 1)]), 1),
                (b(&[(1, 1, 0), (1, 0, 1)]), 1)
            ]
        );
        assert_eq!(f.to_string(), "-1 * (y - x) * (y + x)");
    }

    #[test]
    fn irreducible_quadratic_denominator() {
        let d = b(&[(1, 2, 0), (2, 1, 1), (1, 0, 2), (-2, 0, 0)]);
        let f = factor_bpoly(&d).unwrap();
        assert_eq!(f.factors, vec![(d, 1)]);
    }

    #[test]
    fn two_factor_denominator() {
        let s = b(&[(1, 2, 0), (1, 0, 2)]);
        let c = b(&[(1, 3, 0), (2, 1, 1), (1, 1, 2), (1, 0, 3)]);
        let f = factor_bpoly(&(&s * &c)).unwrap();
        assert_eq!(f.factors, vec![(s, 1), (c, 1)]);
        assert_eq!(f.unit, int(1));
    }

    #[test]
    fn content_and_multiplicity() {
        // 3 x^2 (x + y)^2 (y - 1)
        let p =
            &(&b(&[(3, 2, 0)]) * &b(&[(1, 1, 0), (1, 0, 1)]).pow(2)) * &b(&[(1, 0, 1), (-1, 0, 0)]);
        let f = factor_bpoly(&p).unwrap();
        assert_eq!(f.expand(), p);
        assert_eq!(f.unit, int(3));
        assert!(f.factors.contains(&(BPoly::x(), 2)));
        assert!(f.factors.contains(&(b(&[(1, 1, 0), (1, 0, 1)]), 2)));
        assert!(f.factors.contains(&(b(&[(1, 0, 1), (-1, 0, 0)]), 1)));
        assert!(f.to_string().starts_with("3 * "));
        assert!(f.to_string().contains("(y + x)^2"));
    }
}
