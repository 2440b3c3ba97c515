//! Polynomial residues of a rational function in one shift variable, the
//! other variable acting as a coefficient.

use serde::Serialize;

use crate::bpoly::{BPoly, Var};
use crate::dispersion::{disp_uni, ShiftSet1D};
use crate::error::Result;
use crate::factor::factor_bpoly;
use crate::qx::{self, QxPoly};
use crate::ratfunc::RatFunc;
use crate::reduction::pfd_y;

/// Residue of `f` at the orbit of `orbit_rep` with the given multiplicity:
/// `Σ σ^-ℓ(a_ℓ)` over the fractions `a_ℓ / σ^ℓ(orbit_rep)^multiplicity`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbitResidue {
    pub orbit_rep: BPoly,
    pub multiplicity: usize,
    /// A polynomial in the shift variable of degree below that of
    /// `orbit_rep`, with rational-function coefficients.
    pub residue: RatFunc,
}

impl OrbitResidue {
    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }
}

impl Serialize for OrbitResidue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("OrbitResidue", 3)?;
        st.serialize_field("orbit", &self.orbit_rep.to_string())?;
        st.serialize_field("multiplicity", &self.multiplicity)?;
        st.serialize_field("residue", &self.residue.to_string())?;
        st.end()
    }
}

fn residues_y(f: &RatFunc) -> Result<Vec<(BPoly, usize, QxPoly)>> {
    let pfd = pfd_y(f, &factor_bpoly(f.den())?)?;
    let mut denoms: Vec<&BPoly> = pfd.terms.iter().map(|t| &t.d).collect();
    denoms.sort();
    denoms.dedup();
    // (representative, shift) per denominator; ascending order makes the
    // first member of each orbit its representative.
    let mut reps: Vec<BPoly> = Vec::new();
    let mut placed: Vec<(&BPoly, usize, i64)> = Vec::new();
    for d in denoms {
        let hit = reps
            .iter()
            .enumerate()
            .find_map(|(i, r)| match disp_uni(d, r, Var::Y) {
                ShiftSet1D::Finite(ns) => Some((i, ns[0])),
                _ => None,
            });
        match hit {
            Some((i, l)) => placed.push((d, i, l)),
            None => {
                placed.push((d, reps.len(), 0));
                reps.push(d.clone());
            }
        }
    }
    let mut out: Vec<(BPoly, usize, QxPoly)> = Vec::new();
    for t in &pfd.terms {
        let &(_, i, l) = placed.iter().find(|(d, _, _)| **d == t.d).expect("placed");
        let contrib = qx::shift(&t.a, 0, -l);
        match out.iter_mut().find(|(r, j, _)| *r == reps[i] && *j == t.j) {
            Some(slot) => slot.2 = &slot.2 + &contrib,
            None => out.push((reps[i].clone(), t.j, contrib)),
        }
    }
    out.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
    Ok(out)
}

/// Residues of `f` viewed as a rational function in `var`.
pub fn poly_residues(f: &RatFunc, var: Var) -> Result<Vec<OrbitResidue>> {
    let swap = var == Var::X;
    let g = if swap { f.swap_xy() } else { f.clone() };
    Ok(residues_y(&g)?
        .into_iter()
        .map(|(d, j, a)| {
            let r = qx::to_ratfunc(&a);
            if swap {
                OrbitResidue {
                    orbit_rep: d.swap_xy(),
                    multiplicity: j,
                    residue: r.swap_xy(),
                }
            } else {
                OrbitResidue {
                    orbit_rep: d,
                    multiplicity: j,
                    residue: r,
                }
            }
        })
        .collect())
}

/// Whether `f = σ_var g - g` for a rational `g`: all residues vanish.
pub fn is_summable_uni(f: &RatFunc, var: Var) -> Result<bool> {
    Ok(poly_residues(f, var)?.iter().all(OrbitResidue::is_zero))
}
