//! Command dispatch and JSON rendering for the `hpx` binary.

use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use hpx_core::algsolve::{AlgebraicPoint, RationalParametrization};
use hpx_core::hp::{derivative_rows, solve_hp, Candidate, HPInstance, HPOptions, HPSolution, HPStatus, TableRow};
use hpx_core::hyperbolic::hyperbolicity_test;
use hpx_core::instance::{make_instance, Builtin, InstanceError, InstanceFile};
use hpx_core::poly::parse_rat;
use hpx_core::roots::{rat_to_decimal, Interval};
use hpx_core::strata::{max_multiplicity_with, sample_stratum_with, stratum, SolveOptions};
use hpx_core::{HpError, Rat, SolveError, UniPoly};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NO_MINIMIZER: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "hpx", version, about = "Exact solver for hyperbolic programs")]
pub struct Cli {
    /// Significant digits in the "display" sub-objects.
    #[arg(long, global = true, default_value_t = 10)]
    pub digits: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Randomized hyperbolicity test of f in direction e.
    Check {
        file: String,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Roots of the characteristic polynomial t -> f(t e - a).
    Eig {
        file: String,
        #[arg(long)]
        point: String,
    },
    /// Multiplicity of 0 as an eigenvalue at a point.
    Mult {
        file: String,
        #[arg(long)]
        point: String,
    },
    /// Generators of the stratum Gamma_m, optionally with samples.
    Gamma {
        file: String,
        #[arg(short = 'm')]
        m: usize,
        #[arg(long)]
        sample: bool,
        /// Number of random objectives used for sampling.
        #[arg(long, default_value_t = 1)]
        resample: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        width: Option<String>,
    },
    /// Largest multiplicity found on the boundary.
    Maxmult {
        file: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Solves the hyperbolic program.
    Solve {
        file: String,
        #[arg(long)]
        max_m: Option<usize>,
        #[arg(long)]
        width: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-stratum time budget in seconds.
        #[arg(long)]
        budget: Option<f64>,
        /// Solve the strata one after the other.
        #[arg(long)]
        serial: bool,
    },
    /// Solves the derivative relaxations k = 0..=KMAX.
    Derive {
        file: String,
        #[arg(long)]
        table: usize,
        /// Only these orders (comma separated), all below KMAX+1.
        #[arg(long)]
        rows: Option<String>,
        #[arg(long)]
        width: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long)]
        serial: bool,
    },
    /// Writes a built-in instance, e.g. `gen elliptope 3` or `gen ellipse3`.
    Gen {
        name: String,
        params: Vec<String>,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
}

/// Result of one command: the exit code and the document to print.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub json: Value,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Outcome { code: EXIT_OK, json }
    }

    fn input_error(msg: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_INPUT,
            json: json!({ "error": msg.into() }),
        }
    }
}

fn rat_str(x: &Rat) -> String {
    x.to_string()
}

fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_str).collect()
}

fn interval(iv: &Interval) -> Value {
    json!({ "lo": rat_str(&iv.lo), "hi": rat_str(&iv.hi) })
}

fn uni(p: &UniPoly) -> Vec<String> {
    rats(p.coeffs())
}

fn rur_json(rp: &RationalParametrization) -> Value {
    json!({
        "q": uni(&rp.q),
        "q0": uni(&rp.q0),
        "coords": rp.coords.iter().map(uni).collect::<Vec<_>>(),
        "separating": rats(&rp.separating),
        "num_points": rp.num_points,
    })
}

fn point_json(p: &AlgebraicPoint, digits: usize) -> Value {
    json!({
        "coords": p.boxes().iter().map(interval).collect::<Vec<_>>(),
        "exact": p.exact().map(rats),
        "display": {
            "coords": p.boxes().iter().map(|b| rat_to_decimal(&b.midpoint(), digits)).collect::<Vec<_>>(),
        },
    })
}

fn candidate_json(c: &Candidate, digits: usize, with_rur: bool) -> Value {
    let mut v = json!({
        "coords": c.point.boxes().iter().map(interval).collect::<Vec<_>>(),
        "exact": c.point.exact().map(rats),
        "source_m": c.source_m,
        "feasible": c.feasible,
        "mult": c.mult,
        "value": interval(&c.value),
        "display": {
            "coords": c.point.boxes().iter().map(|b| rat_to_decimal(&b.midpoint(), digits)).collect::<Vec<_>>(),
            "value": rat_to_decimal(&c.value.midpoint(), digits),
        },
    });
    if with_rur {
        v["rur"] = rur_json(c.point.rur());
    }
    v
}

fn skipped_json(s: &[(usize, String)]) -> Value {
    Value::Array(s.iter().map(|(m, r)| json!({ "m": m, "reason": r })).collect())
}

/// JSON form of a solution, as printed by `hpx solve`.
pub fn solution_json(sol: &HPSolution, digits: usize) -> Value {
    json!({
        "status": sol.status.as_str(),
        "best": sol.best().map(|b| candidate_json(b, digits, true)),
        "all_candidates": sol.all_candidates.iter().map(|c| candidate_json(c, digits, false)).collect::<Vec<_>>(),
        "skipped_strata": skipped_json(&sol.skipped_strata),
        "strata": sol.strata.iter().map(|s| json!({
            "m": s.m,
            "deg_q": s.deg_q,
            "num_points": s.num_points,
            "num_real": s.num_real,
            "verified": s.verified,
        })).collect::<Vec<_>>(),
    })
}

fn row_json(r: &TableRow, digits: usize) -> Value {
    let best = r.best();
    json!({
        "k": r.k,
        "status": r.solution.as_ref().map(|s| s.status.as_str()),
        "error": r.error,
        "x_star": best.map(|b| b.point.boxes().iter().map(interval).collect::<Vec<_>>()),
        "m_star": best.map(|b| b.mult),
        "value": best.map(|b| interval(&b.value)),
        "deg_q": r.deg_q,
        "alg_deg": r.alg_deg,
        "alg_deg_fallback": r.alg_deg_fallback,
        "skipped_strata": r.solution.as_ref().map(|s| skipped_json(&s.skipped_strata)),
        "display": {
            "x_star": best.map(|b| b.point.boxes().iter().map(|x| rat_to_decimal(&x.midpoint(), digits)).collect::<Vec<_>>()),
            "value": best.map(|b| rat_to_decimal(&b.value.midpoint(), digits)),
        },
    })
}

/// Reads FILE as a path, falling back to a built-in instance name.
pub fn load_file(arg: &str) -> Result<InstanceFile, String> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{arg}: {e}"))?;
        return InstanceFile::from_json(&text).map_err(|e| format!("{arg}: {e}"));
    }
    match Builtin::parse(arg) {
        Ok(b) => make_instance(&b).map_err(|e| e.to_string()),
        Err(InstanceError::UnknownName(_)) => Err(format!("{arg}: no such file or built-in instance")),
        Err(e) => Err(format!("{arg}: {e}")),
    }
}

fn load(arg: &str) -> Result<(InstanceFile, HPInstance), Outcome> {
    let file = load_file(arg).map_err(Outcome::input_error)?;
    match file.to_instance() {
        Ok(inst) => Ok((file, inst)),
        Err(InstanceError::Hp(HpError::DependentObjective)) => Err(Outcome {
            code: EXIT_INPUT,
            json: json!({
                "status": HPStatus::TrivialObjectiveRejected.as_str(),
                "error": HpError::DependentObjective.to_string(),
            }),
        }),
        Err(e) => Err(Outcome::input_error(e.to_string())),
    }
}

fn parse_point(s: &str, n: usize) -> Result<Vec<Rat>, Outcome> {
    let v: Vec<Rat> = s
        .split(',')
        .map(|t| parse_rat(t.trim()))
        .collect::<Result<_, _>>()
        .map_err(|e| Outcome::input_error(e.to_string()))?;
    if v.len() != n {
        return Err(Outcome::input_error(format!("point has {} coordinates, expected {n}", v.len())));
    }
    Ok(v)
}

/// Accepts a rational (`1/1000`) or a power of two (`2^-40`).
pub fn parse_width(s: Option<&str>) -> Result<Rat, Outcome> {
    let Some(s) = s else {
        return Ok(HPOptions::default().width);
    };
    let w = if let Some(exp) = s.strip_prefix("2^") {
        let k: i32 = exp.parse().map_err(|_| Outcome::input_error(format!("bad width {s:?}")))?;
        let p = Rat::from_integer(BigInt::one() << k.unsigned_abs());
        if k < 0 {
            Rat::one() / p
        } else {
            p
        }
    } else {
        parse_rat(s).map_err(|e| Outcome::input_error(e.to_string()))?
    };
    if w <= Rat::zero() {
        return Err(Outcome::input_error("width must be positive"));
    }
    Ok(w)
}

fn budget(sec: Option<f64>) -> Result<Option<Duration>, Outcome> {
    match sec {
        None => Ok(None),
        Some(s) if s.is_finite() && s > 0.0 => Ok(Some(Duration::from_secs_f64(s))),
        Some(s) => Err(Outcome::input_error(format!("budget must be positive, got {s}"))),
    }
}

/// Runs one command.
pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(o) | Err(o) => o,
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Outcome> {
    let digits = cli.digits.max(1);
    match &cli.command {
        Command::Check { file, trials, seed } => {
            let (_, inst) = load(file)?;
            let v = hyperbolicity_test(&inst.h, *trials, *seed);
            Ok(Outcome::ok(json!({
                "status": v.status,
                "witness": v.witness.as_deref().map(rats),
                "trials": v.trials,
                "seed": seed,
            })))
        }
        Command::Eig { file, point } => {
            let (_, inst) = load(file)?;
            let a = parse_point(point, inst.nvars())?;
            let eig = inst.h.eigenvalues_at(&a).map_err(|e| Outcome::input_error(e.to_string()))?;
            Ok(Outcome::ok(json!({
                "point": rats(&a),
                "charpoly": uni(&inst.h.charpoly_at(&a)),
                "real_rooted": inst.h.is_real_rooted_at(&a),
                "eigenvalues": eig.iter().map(|(b, k)| json!({
                    "lo": rat_str(b.lo()),
                    "hi": rat_str(b.hi()),
                    "mult": k,
                })).collect::<Vec<_>>(),
                "display": {
                    "eigenvalues": eig.iter().map(|(b, _)| rat_to_decimal(&b.midpoint(), digits)).collect::<Vec<_>>(),
                },
            })))
        }
        Command::Mult { file, point } => {
            let (_, inst) = load(file)?;
            let a = parse_point(point, inst.nvars())?;
            Ok(Outcome::ok(json!({
                "point": rats(&a),
                "feasible": inst.h.is_feasible(&a),
                "mult": inst.h.multiplicity_at(&a),
            })))
        }
        Command::Gamma {
            file,
            m,
            sample,
            resample,
            seed,
            width,
        } => {
            let (f, inst) = load(file)?;
            let s = stratum(&inst.h, *m, &inst.section).map_err(|e| Outcome::input_error(e.to_string()))?;
            let mut out = json!({
                "m": m,
                "generators": s.generators.iter().map(|g| g.display_with(&f.vars)).collect::<Vec<_>>(),
            });
            if !*sample {
                return Ok(Outcome::ok(out));
            }
            let width = parse_width(width.as_deref())?;
            let mut runs = vec![];
            let mut samples = vec![];
            for run in 0..(*resample).max(1) {
                let opts = SolveOptions {
                    width: width.clone(),
                    seed: seed.wrapping_add(run as u64),
                    deadline: None,
                };
                match sample_stratum_with(&s, &inst.h, &opts) {
                    Ok(r) => {
                        runs.push(json!({
                            "objective": {
                                "lin": rats(&r.objective.coeffs),
                                "const": rat_str(&r.objective.constant),
                            },
                            "deg_q": r.solve.rur.q.degree(),
                            "num_points": r.solve.rur.num_points,
                            "verified": r.solve.verified,
                        }));
                        samples.extend(r.samples.iter().map(|x| {
                            let mut p = point_json(&x.point, digits);
                            p["run"] = json!(run);
                            p["feasible"] = json!(x.feasible);
                            p["mult"] = json!(x.mult);
                            p
                        }));
                    }
                    Err(e) => {
                        out["error"] = json!(e.to_string());
                        let code = match e.source {
                            SolveError::BudgetExceeded => EXIT_BUDGET,
                            _ => EXIT_NO_MINIMIZER,
                        };
                        return Err(Outcome { code, json: out });
                    }
                }
            }
            out["runs"] = Value::Array(runs);
            out["samples"] = Value::Array(samples);
            out["caveat"] = json!("critical points of linear forms; components on which the form has no critical point (e.g. unbounded ones) may be missed");
            Ok(Outcome::ok(out))
        }
        Command::Maxmult { file, seed } => {
            let (_, inst) = load(file)?;
            let opts = SolveOptions {
                seed: *seed,
                ..SolveOptions::default()
            };
            let r = max_multiplicity_with(&inst.h, &inst.section, &opts).map_err(|e| Outcome::input_error(e.to_string()))?;
            Ok(Outcome::ok(json!({
                "m_star": r.m_star,
                "witness": point_json(&r.witness, digits),
                "skipped_strata": skipped_json(&r.skipped),
            })))
        }
        Command::Solve {
            file,
            max_m,
            width,
            seed,
            budget: b,
            serial,
        } => {
            let (_, inst) = load(file)?;
            let opts = HPOptions {
                max_m: *max_m,
                width: parse_width(width.as_deref())?,
                seed: *seed,
                per_stratum_budget: budget(*b)?,
                parallel: !serial,
            };
            let sol = solve_hp(&inst, &opts);
            Ok(Outcome {
                code: solution_code(&sol),
                json: solution_json(&sol, digits),
            })
        }
        Command::Derive {
            file,
            table,
            rows,
            width,
            seed,
            budget: b,
            serial,
        } => {
            let (_, inst) = load(file)?;
            let ks: Vec<usize> = match rows {
                None => (0..=*table).collect(),
                Some(r) => {
                    let ks: Vec<usize> = r
                        .split(',')
                        .map(|t| t.trim().parse::<usize>())
                        .collect::<Result<_, _>>()
                        .map_err(|e| Outcome::input_error(format!("bad --rows: {e}")))?;
                    if let Some(k) = ks.iter().find(|&&k| k > *table) {
                        return Err(Outcome::input_error(format!("row {k} exceeds --table {table}")));
                    }
                    ks
                }
            };
            let opts = HPOptions {
                width: parse_width(width.as_deref())?,
                seed: *seed,
                per_stratum_budget: budget(*b)?,
                parallel: !serial,
                ..HPOptions::default()
            };
            let table = derivative_rows(&inst, &ks, &opts);
            let code = table
                .iter()
                .map(|r| match (&r.error, &r.solution) {
                    (Some(_), _) => EXIT_INPUT,
                    (None, Some(s)) => solution_code(s),
                    (None, None) => EXIT_INPUT,
                })
                .max()
                .unwrap_or(EXIT_OK);
            Ok(Outcome {
                code,
                json: Value::Array(table.iter().map(|r| row_json(r, digits)).collect()),
            })
        }
        Command::Gen { name, params, output } => {
            let full = if params.is_empty() {
                name.clone()
            } else {
                format!("{name}({})", params.join(","))
            };
            let b = Builtin::parse(&full).map_err(|e| Outcome::input_error(e.to_string()))?;
            let file = make_instance(&b).map_err(|e| Outcome::input_error(e.to_string()))?;
            let text = file.to_json();
            match output {
                Some(path) => {
                    std::fs::write(path, format!("{text}\n"))
                        .map_err(|e| Outcome::input_error(format!("{}: {e}", path.display())))?;
                    Ok(Outcome::ok(json!({ "written": path.display().to_string(), "instance": full })))
                }
                None => Ok(Outcome::ok(serde_json::from_str(&text).expect("valid json"))),
            }
        }
    }
}

fn solution_code(sol: &HPSolution) -> i32 {
    let over = sol.skipped_strata.iter().any(|(_, r)| r == "budget_exceeded");
    match sol.status {
        _ if over => EXIT_BUDGET,
        HPStatus::MinimizerFound => EXIT_OK,
        HPStatus::NoAttainedMinimizerFound => EXIT_NO_MINIMIZER,
        HPStatus::TrivialObjectiveRejected => EXIT_INPUT,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hpx_core::rat;

    #[test]
    fn widths() {
        assert_eq!(parse_width(Some("1/1000")).unwrap(), rat(1, 1000));
        assert_eq!(parse_width(Some("2^-10")).unwrap(), rat(1, 1024));
        assert_eq!(parse_width(None).unwrap(), HPOptions::default().width);
        assert!(parse_width(Some("0")).is_err());
        assert!(parse_width(Some("2^x")).is_err());
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("1/2, -3", 2).unwrap(), vec![rat(1, 2), rat(-3, 1)]);
        assert_eq!(parse_point("1", 2).unwrap_err().code, EXIT_INPUT);
        assert_eq!(parse_point("a,b", 2).unwrap_err().code, EXIT_INPUT);
    }

    #[test]
    fn derivative_builtin_solves() {
        let cli = Cli::parse_from(["hpx", "solve", "derivative(elliptope2,0)"]);
        assert!(matches!(cli.command, Command::Solve { .. }));
        let out = run(&cli);
        assert_eq!(out.code, EXIT_OK);
        assert_eq!(out.json["status"], "minimizer_found");
    }

    #[test]
    fn gen_prints_instance_json() {
        let out = run(&Cli::parse_from(["hpx", "gen", "elliptope", "2"]));
        assert_eq!(out.code, EXIT_OK);
        assert_eq!(out.json["vars"][0], "x0");
        let file: InstanceFile = InstanceFile::from_json(&out.json.to_string()).unwrap();
        assert_eq!(file, make_instance(&Builtin::Elliptope(2)).unwrap());
    }
}
