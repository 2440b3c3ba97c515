use std::io::Write;
use std::process::ExitCode;

use bisum_core::decide::{decide, Decision};
use bisum_core::dispersion::{disp_bi, stabilizer};
use bisum_core::expr::{parse_poly, parse_ratfunc};
use bisum_core::factor::factor_bpoly;
use bisum_core::kernel::{gosper_rep, solve_kernel, KernelProblem};
use bisum_core::reduction::reduce;
use bisum_core::residues::poly_residues;
use bisum_core::{qx, Error, Var};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Decide whether a rational function in x and y is a sum of an x-difference
/// and a y-difference, and produce certificates.
#[derive(Parser)]
#[command(name = "bisum", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include the decision transcript.
    #[arg(long, global = true)]
    transcript: bool,
    /// Read one expression per line from PATH; emits one JSON object per line.
    #[arg(long, global = true, value_name = "PATH")]
    file: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide summability.
    Decide {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// Decide summability and print only the certificate.
    Certify {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// Reduce to a sum over shift-inequivalent denominators.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// Dispersion set of two polynomials.
    Disp {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Shift stabilizer of a polynomial.
    Stab {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// Irreducible factorization over Q.
    Factor {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// Gosper representation of b(x)/b(x+m).
    Gosper {
        #[arg(allow_hyphen_values = true)]
        b: String,
        m: i64,
    },
    /// Polynomial residues in one variable.
    Residues {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
        #[arg(long, value_enum, default_value = "x")]
        var: VarArg,
    },
    /// Solve a/b = p(x+m, y-n) - p(x, y) with deg_y(p) < d0.
    Kernel {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        m: i64,
        #[arg(allow_hyphen_values = true)]
        n: i64,
        d0: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VarArg {
    X,
    Y,
}

/// Result of one command on one input.
struct Output {
    text: String,
    json: Value,
    /// Mathematical "no".
    negative: bool,
}

enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

fn decision_output(d: &Decision, certify: bool, transcript: bool) -> Output {
    let mut text = String::new();
    if d.summable {
        let (g, h) = (d.g.as_ref().unwrap(), d.h.as_ref().unwrap());
        if !certify {
            text.push_str("summable\n");
        }
        text.push_str(&format!("g = {g}\nh = {h}\n"));
    } else {
        let w = d.witness.as_ref().expect("witness");
        text.push_str("not summable\n");
        text.push_str(&format!(
            "witness: d = {}, j = {}, reason = {}\n",
            w.d, w.j, w.reason
        ));
    }
    let mut v = serde_json::to_value(d).expect("serializable");
    if !transcript {
        v["transcript"] = json!([]);
    } else {
        for e in &d.transcript {
            text.push_str(&serde_json::to_string(e).expect("serializable"));
            text.push('\n');
        }
    }
    Output {
        text,
        json: v,
        negative: !d.summable,
    }
}

fn one_expr(cmd: &Cmd, input: &str, transcript: bool) -> Result<Output, Failure> {
    let out = match cmd {
        Cmd::Decide { .. } | Cmd::Certify { .. } => {
            let d = decide(&parse_ratfunc(input)?)?;
            decision_output(&d, matches!(cmd, Cmd::Certify { .. }), transcript)
        }
        Cmd::Reduce { .. } => {
            let r = reduce(&parse_ratfunc(input)?)?;
            let mut text = format!("g = {}\nh = {}\n", r.g, r.h);
            for grp in &r.groups {
                for (j, a) in &grp.fractions {
                    let den = if *j == 1 {
                        format!("({})", grp.d)
                    } else {
                        format!("({})^{j}", grp.d)
                    };
                    text.push_str(&format!("r += ({}) / {den}\n", qx::fmt(a)));
                }
            }
            Output {
                text,
                json: serde_json::to_value(&r).expect("serializable"),
                negative: false,
            }
        }
        Cmd::Stab { .. } => {
            let s = stabilizer(&parse_poly(input)?)?;
            let text = match s.generator {
                Some((t, l)) => format!("({t},{l})\n"),
                None => "trivial\n".into(),
            };
            Output {
                text,
                json: serde_json::to_value(s).expect("serializable"),
                negative: false,
            }
        }
        Cmd::Factor { .. } => {
            let f = factor_bpoly(&parse_poly(input)?)?;
            Output {
                text: format!("{f}\n"),
                json: serde_json::to_value(&f).expect("serializable"),
                negative: false,
            }
        }
        Cmd::Residues { var, .. } => {
            let v = match var {
                VarArg::X => Var::X,
                VarArg::Y => Var::Y,
            };
            let rs = poly_residues(&parse_ratfunc(input)?, v)?;
            let mut text = String::new();
            for r in &rs {
                text.push_str(&format!(
                    "({})^{}: {}\n",
                    r.orbit_rep, r.multiplicity, r.residue
                ));
            }
            let summable = rs.iter().all(|r| r.is_zero());
            text.push_str(if summable {
                "summable\n"
            } else {
                "not summable\n"
            });
            let json = json!({ "residues": rs, "summable": summable });
            Output {
                text,
                json,
                negative: !summable,
            }
        }
        _ => unreachable!("multi-argument commands have no single expression"),
    };
    Ok(out)
}

fn run_single(cli: &Cli) -> Result<Output, Failure> {
    let missing = || Failure::Usage("missing expression argument (or use --file)".into());
    match &cli.cmd {
        Cmd::Decide { expr }
        | Cmd::Certify { expr }
        | Cmd::Reduce { expr }
        | Cmd::Stab { expr }
        | Cmd::Factor { expr }
        | Cmd::Residues { expr, .. } => one_expr(
            &cli.cmd,
            expr.as_deref().ok_or_else(missing)?,
            cli.transcript,
        ),
        Cmd::Disp { f, g } => {
            let s = disp_bi(&parse_poly(f)?, &parse_poly(g)?)?;
            Ok(Output {
                text: format!("{s}\n"),
                json: serde_json::to_value(&s).expect("serializable"),
                negative: false,
            })
        }
        Cmd::Gosper { b, m } => {
            let p = parse_poly(b)?;
            let u = p
                .to_upoly(Var::X)
                .ok_or_else(|| Failure::Usage(format!("{b} must be a polynomial in x")))?;
            let r = gosper_rep(&u, *m)?;
            let show = |p| bisum_core::bpoly::fmt_upoly(p, Var::X);
            let text = format!(
                "A = {}\nB = {}\nC = {}\n",
                show(&r.a),
                show(&r.b),
                show(&r.c)
            );
            Ok(Output {
                text,
                json: serde_json::to_value(&r).expect("serializable"),
                negative: false,
            })
        }
        Cmd::Kernel { a, b, m, n, d0 } => {
            let a = parse_poly(a)?;
            let b = parse_poly(b)?
                .to_upoly(Var::X)
                .ok_or_else(|| Failure::Usage("b must be a polynomial in x".into()))?;
            let prob = KernelProblem {
                a,
                b,
                m: *m,
                n: *n,
                d0: *d0,
            };
            let sol = solve_kernel(&prob)?;
            let text = match &sol {
                Some(s) => format!("p = {}\n", qx::fmt(&s.p)),
                None => "no solution\n".into(),
            };
            let json = json!({ "problem": prob, "solution": sol });
            Ok(Output {
                text,
                json,
                negative: sol.is_none(),
            })
        }
    }
}

fn report(e: &Failure) -> (String, u8) {
    match e {
        Failure::Usage(m) => (m.clone(), 2),
        Failure::Engine(e @ Error::Internal(_)) => (format!("internal error: {e}"), 2),
        Failure::Engine(e) => (e.to_string(), 2),
    }
}

fn run_batch(cli: &Cli, path: &str) -> ExitCode {
    let content = match std::fs::read_to_string(path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("bisum: cannot read {path}: {e}");
            return ExitCode::from(2);
        }
    };
    if matches!(
        cli.cmd,
        Cmd::Disp { .. } | Cmd::Gosper { .. } | Cmd::Kernel { .. }
    ) {
        eprintln!("bisum: --file works with single-expression commands only");
        return ExitCode::from(2);
    }
    let mut stdout = std::io::stdout().lock();
    let mut code = 0u8;
    for (lineno, line) in content.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let v = match one_expr(&cli.cmd, line, cli.transcript) {
            Ok(out) => {
                if out.negative {
                    code = code.max(1);
                }
                out.json
            }
            Err(e) => {
                let (msg, c) = report(&e);
                eprintln!("bisum: line {}: {msg}", lineno + 1);
                code = code.max(c);
                json!({ "input": line, "error": msg })
            }
        };
        writeln!(stdout, "{v}").expect("stdout");
    }
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(path) = &cli.file {
        return run_batch(&cli, path);
    }
    match run_single(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
            }
            let decision_cmd = matches!(cli.cmd, Cmd::Decide { .. } | Cmd::Certify { .. });
            ExitCode::from(if out.negative && decision_cmd { 1 } else { 0 })
        }
        Err(e) => {
            let (msg, c) = report(&e);
            eprintln!("bisum: {msg}");
            ExitCode::from(c)
        }
    }
}
