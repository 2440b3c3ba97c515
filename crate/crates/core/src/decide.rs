//! The summability decision and certificate construction.

use num_traits::Zero;
use serde::Serialize;

use crate::bpoly::BPoly;
use crate::dispersion::stabilizer;
use crate::error::{Error, Result};
use crate::kernel::{solve_kernel, KernelProblem, KernelSolution};
use crate::qx::{self, QxPoly};
use crate::ratfunc::RatFunc;
use crate::reduction::{reduce, term_value, ResidualForm};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Reason {
    /// The stabilizer of the denominator is trivial.
    #[serde(rename = "criterion-1-failed")]
    Criterion1Failed,
    /// The kernel equation has no solution.
    #[serde(rename = "criterion-2-failed")]
    Criterion2Failed,
}

impl std::fmt::Display for Reason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Reason::Criterion1Failed => "criterion-1-failed",
            Reason::Criterion2Failed => "criterion-2-failed",
        })
    }
}

/// Outcome of testing one fraction `a / d^j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FractionTest {
    Failed(Reason),
    /// `a = σx^t σy^-ℓ p - p`.
    Solved {
        p: QxPoly,
        t: i64,
        l: i64,
        kernel: Box<KernelSolution>,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Witness {
    pub d: BPoly,
    pub j: usize,
    pub reason: Reason,
}

/// One step of the decision, for diagnostics.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum TranscriptEntry {
    Reduce {
        residual: ResidualForm,
    },
    Fraction {
        d: BPoly,
        j: usize,
        a: String,
        stabilizer: Option<(i64, i64)>,
        kernel: Option<KernelProblem>,
        p: Option<String>,
        outcome: String,
    },
    Verify {
        ok: bool,
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decision {
    pub summable: bool,
    pub g: Option<RatFunc>,
    pub h: Option<RatFunc>,
    pub witness: Option<Witness>,
    pub transcript: Vec<TranscriptEntry>,
}

impl Serialize for Decision {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Decision", 5)?;
        st.serialize_field("summable", &self.summable)?;
        st.serialize_field("g", &self.g.as_ref().map(|g| g.to_string()))?;
        st.serialize_field("h", &self.h.as_ref().map(|h| h.to_string()))?;
        st.serialize_field("witness", &self.witness)?;
        st.serialize_field("transcript", &self.transcript)?;
        st.end()
    }
}

fn kernel_problem(a: &QxPoly, d: &BPoly, t: i64, l: i64) -> KernelProblem {
    let (num, b) = qx::split_denominator(a);
    KernelProblem {
        a: num,
        b,
        m: t,
        n: l,
        d0: d.deg_y().unwrap_or(0),
    }
}

fn test_fraction(
    a: &QxPoly,
    d: &BPoly,
) -> Result<(FractionTest, Option<(i64, i64)>, Option<KernelProblem>)> {
    if a.is_zero() {
        return Err(Error::Precondition("zero numerator".into()));
    }
    let dy = d.deg_y().unwrap_or(0);
    if dy == 0 || a.degree().unwrap_or(0) >= dy {
        return Err(Error::Precondition("fraction must be proper in y".into()));
    }
    let Some((t, l)) = stabilizer(d)?.generator else {
        return Ok((FractionTest::Failed(Reason::Criterion1Failed), None, None));
    };
    let prob = kernel_problem(a, d, t, l);
    let out = match solve_kernel(&prob)? {
        None => FractionTest::Failed(Reason::Criterion2Failed),
        Some(sol) => FractionTest::Solved {
            p: sol.p.clone(),
            t,
            l,
            kernel: Box::new(sol),
        },
    };
    Ok((out, Some((t, l)), Some(prob)))
}

/// Tests `a / d^j` for `d` irreducible with positive y-degree and
/// `deg_y(a) < deg_y(d)`.
pub fn decide_fraction(a: &QxPoly, d: &BPoly, _j: usize) -> Result<FractionTest> {
    Ok(test_fraction(a, d)?.0)
}

/// `(g, h)` with `Δx g + Δy h = a / d^j`, where `a = σx^t σy^-ℓ p - p` and
/// `σx^t d = σy^ℓ d`.
pub fn certificate_fraction(
    p: &QxPoly,
    d: &BPoly,
    j: usize,
    t: i64,
    l: i64,
) -> Result<(RatFunc, RatFunc)> {
    if t <= 0 || d.shift(t, 0) != d.shift(0, l) {
        return Err(Error::Precondition(format!(
            "({t},{l}) does not stabilize {d}"
        )));
    }
    let base = term_value(p, d, j);
    let g: RatFunc = (0..t).map(|k| base.shift(k, 0)).sum();
    let w = term_value(&qx::shift(p, t, -l), d, j);
    let h: RatFunc = match l {
        0 => RatFunc::zero(),
        l if l > 0 => -(0..l).map(|k| w.shift(0, k)).sum::<RatFunc>(),
        l => (0..-l).map(|k| w.shift(0, l + k)).sum(),
    };
    let a = &qx::shift(p, t, -l) - p;
    if !verify(&term_value(&a, d, j), &g, &h) {
        return Err(Error::Internal(format!(
            "certificate for a fraction over {d} fails"
        )));
    }
    Ok((g, h))
}

/// Whether `f = Δx g + Δy h`.
pub fn verify(f: &RatFunc, g: &RatFunc, h: &RatFunc) -> bool {
    &g.delta_x() + &h.delta_y() == *f
}

pub fn decide(f: &RatFunc) -> Result<Decision> {
    let red = reduce(f)?;
    let mut transcript = vec![TranscriptEntry::Reduce {
        residual: red.clone(),
    }];
    let mut g = red.g.clone();
    let mut h = red.h.clone();
    let mut witness = None;
    for grp in &red.groups {
        for (j, a) in &grp.fractions {
            let (test, stab, kernel) = test_fraction(a, &grp.d)?;
            let (outcome, p) = match &test {
                FractionTest::Failed(r) => {
                    witness.get_or_insert(Witness {
                        d: grp.d.clone(),
                        j: *j,
                        reason: *r,
                    });
                    (r.to_string(), None)
                }
                FractionTest::Solved { p, t, l, .. } => {
                    if witness.is_none() {
                        let (dg, dh) = certificate_fraction(p, &grp.d, *j, *t, *l)?;
                        g = &g + &dg;
                        h = &h + &dh;
                    }
                    ("solved".to_string(), Some(qx::fmt(p)))
                }
            };
            transcript.push(TranscriptEntry::Fraction {
                d: grp.d.clone(),
                j: *j,
                a: qx::fmt(a),
                stabilizer: stab,
                kernel,
                p,
                outcome,
            });
        }
    }
    if witness.is_some() {
        return Ok(Decision {
            summable: false,
            g: None,
            h: None,
            witness,
            transcript,
        });
    }
    let ok = verify(f, &g, &h);
    transcript.push(TranscriptEntry::Verify { ok });
    if !ok {
        return Err(Error::Internal("certificate fails verification".into()));
    }
    Ok(Decision {
        summable: true,
        g: Some(g),
        h: Some(h),
        witness: None,
        transcript,
    })
}
