//! Hyperbolic programs `inf l(x)` over the hyperbolicity cone cut by
//! `s(x) = 1`: Lagrange systems per multiplicity stratum, certification of
//! critical points and selection of the minimizer.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::algsolve::{AlgebraicPoint, Ideal};
use crate::error::{HpError, HypError, SolveError};
use crate::factor::{factor_degree_at, irreducible_factors};
use crate::hyperbolic::{HypVerdict, HyperbolicData};
use crate::poly::{LinearForm, Rat, SparsePoly};
use crate::roots::Interval;
use crate::strata::{solve_critical, stratum, SolveOptions};

/// Problem data `(f, e, l, s)`.
#[derive(Clone, Debug)]
pub struct HPInstance {
    pub h: HyperbolicData,
    pub objective: LinearForm,
    pub section: LinearForm,
    pub hyp_verdict: HypVerdict,
    /// Direction of the derivative relaxations; `h.e` when unset.
    pub relax_direction: Option<Vec<Rat>>,
}

impl HPInstance {
    /// Validates arities and the independence of `l` and `s`. The constant
    /// of `section` is ignored: the affine space is `s(x) = 1`.
    pub fn new(h: HyperbolicData, objective: LinearForm, section: LinearForm, hyp_verdict: HypVerdict) -> Result<Self, HpError> {
        let n = h.nvars();
        for lf in [&objective, &section] {
            if lf.nvars() != n {
                return Err(HpError::Arity {
                    expected: n,
                    got: lf.nvars(),
                });
            }
        }
        let section = LinearForm::homogeneous(section.coeffs);
        if section.is_zero_form() {
            return Err(HpError::ZeroSection);
        }
        if objective.linear_part_dependent(&section) {
            return Err(HpError::DependentObjective);
        }
        Ok(HPInstance {
            h,
            objective,
            section,
            hyp_verdict,
            relax_direction: None,
        })
    }

    /// Takes derivative relaxations along `dir` instead of `e`. `f(dir)`
    /// must be nonzero.
    pub fn with_relax_direction(mut self, dir: Vec<Rat>) -> Result<Self, HpError> {
        if dir.len() != self.nvars() {
            return Err(HpError::Arity {
                expected: self.nvars(),
                got: dir.len(),
            });
        }
        crate::hyperbolic::normalize(&self.h.f, &dir)?;
        self.relax_direction = Some(dir);
        Ok(self)
    }

    pub fn relax_direction(&self) -> &[Rat] {
        self.relax_direction.as_deref().unwrap_or(&self.h.e)
    }

    pub fn nvars(&self) -> usize {
        self.h.nvars()
    }

    /// The same program over the `k`-th derivative relaxation.
    pub fn derivative(&self, k: usize) -> Result<HPInstance, HpError> {
        if k >= self.h.d {
            return Err(HpError::DerivativeOrder { k, d: self.h.d });
        }
        let dir = self.relax_direction();
        let g = self.h.f.directional_derivative(dir, k as u32)?;
        Ok(HPInstance {
            h: crate::hyperbolic::normalize(&g, dir)?,
            objective: self.objective.clone(),
            section: self.section.clone(),
            hyp_verdict: self.hyp_verdict.clone(),
            relax_direction: self.relax_direction.clone(),
        })
    }
}

/// The Lagrange system in `(x, z_1..z_{m+1})`:
/// `f_1..f_m`, `s(x) - 1` and
/// `sum_i z_i d f_i/dx_j + z_{m+1} s_j - d l/dx_j` for each `j`.
pub fn build_lagrange(inst: &HPInstance, m: usize) -> Result<Ideal, HpError> {
    if m < 1 || m >= inst.h.d {
        return Err(HypError::StratumOutOfRange { m, d: inst.h.d - 1 }.into());
    }
    let n = inst.nvars();
    let total = n + m + 1;
    let s = stratum(&inst.h, m, &inst.section)?;
    let embed: Vec<usize> = (0..n).collect();
    let lift = |p: &SparsePoly| p.remap(total, &embed);
    let mut gens: Vec<SparsePoly> = s.generators.iter().map(lift).collect();
    gens.push(&lift(&inst.section.to_poly()) - &SparsePoly::constant(total, Rat::one()));
    let grads: Vec<Vec<SparsePoly>> = s.generators.iter().map(SparsePoly::gradient).collect();
    for j in 0..n {
        let mut eq = SparsePoly::zero(total);
        for (i, g) in grads.iter().enumerate() {
            eq = &eq + &(&SparsePoly::var(total, n + i) * &lift(&g[j]));
        }
        eq = &eq + &SparsePoly::var(total, n + m).scale(&inst.section.coeffs[j]);
        eq = &eq - &SparsePoly::constant(total, inst.objective.coeffs[j].clone());
        gens.push(eq);
    }
    Ok(Ideal::new(total, gens, n))
}

/// A certified critical point.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub point: AlgebraicPoint,
    pub source_m: usize,
    pub feasible: bool,
    pub mult: usize,
    pub value: Interval,
}

/// Exact feasibility and multiplicity at `p`, and an enclosure of `l(p)`.
pub fn certify(inst: &HPInstance, p: &AlgebraicPoint, width: &Rat) -> Candidate {
    certify_from(inst, p, width, 0)
}

fn certify_from(inst: &HPInstance, p: &AlgebraicPoint, width: &Rat, source_m: usize) -> Candidate {
    Candidate {
        feasible: inst.h.is_feasible_point(p),
        mult: inst.h.multiplicity_at_point(p),
        value: p.linear_value(&inst.objective, width),
        point: p.clone(),
        source_m,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HPStatus {
    MinimizerFound,
    NoAttainedMinimizerFound,
    TrivialObjectiveRejected,
}

impl HPStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            HPStatus::MinimizerFound => "minimizer_found",
            HPStatus::NoAttainedMinimizerFound => "no_attained_minimizer_found",
            HPStatus::TrivialObjectiveRejected => "trivial_objective_rejected",
        }
    }
}

/// Per-stratum record of the parametrization that produced candidates.
#[derive(Clone, Debug)]
pub struct StratumReport {
    pub m: usize,
    pub deg_q: usize,
    pub num_points: usize,
    pub num_real: usize,
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub struct HPSolution {
    pub status: HPStatus,
    /// Index into `all_candidates`.
    pub best: Option<usize>,
    pub all_candidates: Vec<Candidate>,
    pub skipped_strata: Vec<(usize, String)>,
    pub strata: Vec<StratumReport>,
}

impl HPSolution {
    pub fn rejected() -> Self {
        HPSolution {
            status: HPStatus::TrivialObjectiveRejected,
            best: None,
            all_candidates: vec![],
            skipped_strata: vec![],
            strata: vec![],
        }
    }

    pub fn best(&self) -> Option<&Candidate> {
        self.best.map(|i| &self.all_candidates[i])
    }
}

#[derive(Clone, Debug)]
pub struct HPOptions {
    /// Largest stratum index solved (capped at `d - 1`).
    pub max_m: Option<usize>,
    /// Width of coordinate and value enclosures.
    pub width: Rat,
    pub seed: u64,
    pub per_stratum_budget: Option<Duration>,
    pub parallel: bool,
}

impl Default for HPOptions {
    fn default() -> Self {
        HPOptions {
            max_m: None,
            width: Rat::new(BigInt::one(), BigInt::from(1u64 << 40)),
            seed: 0,
            per_stratum_budget: None,
            parallel: true,
        }
    }
}

/// Builds the instance and solves it, reporting a dependent objective as
/// `TrivialObjectiveRejected` rather than an error.
pub fn solve_program(
    h: HyperbolicData,
    objective: LinearForm,
    section: LinearForm,
    verdict: HypVerdict,
    opts: &HPOptions,
) -> Result<HPSolution, HpError> {
    match HPInstance::new(h, objective, section, verdict) {
        Ok(inst) => Ok(solve_hp(&inst, opts)),
        Err(HpError::DependentObjective) => Ok(HPSolution::rejected()),
        Err(e) => Err(e),
    }
}

type StratumOutcome = Result<(StratumReport, Vec<Candidate>), (usize, String)>;

fn solve_stratum(inst: &HPInstance, m: usize, opts: &HPOptions) -> StratumOutcome {
    let s = stratum(&inst.h, m, &inst.section).map_err(|e| (m, e.to_string()))?;
    let sopts = SolveOptions {
        width: opts.width.clone(),
        seed: opts.seed.wrapping_add(m as u64),
        deadline: opts.per_stratum_budget.map(|b| Instant::now() + b),
    };
    let res = solve_critical(&s.generators, &inst.section, &inst.objective, &sopts).map_err(|e| {
        let reason = match e {
            SolveError::NonZeroDimensional => "non_zero_dimensional".to_string(),
            SolveError::BudgetExceeded => "budget_exceeded".to_string(),
            other => other.to_string(),
        };
        (m, reason)
    })?;
    if !res.verified {
        return Err((m, "parametrization failed verification".into()));
    }
    let cands = res
        .points
        .iter()
        .map(|p| certify_from(inst, p, &opts.width, m))
        .collect();
    let report = StratumReport {
        m,
        deg_q: res.rur.q.degree().unwrap_or(0),
        num_points: res.rur.num_points,
        num_real: res.points.len(),
        verified: res.verified,
    };
    Ok((report, cands))
}

/// Algorithm: for each `m = 1..d-1` solve the critical system on
/// `Gamma_m`, certify every real point, and select the feasible candidate
/// of least value.
pub fn solve_hp(inst: &HPInstance, opts: &HPOptions) -> HPSolution {
    let top = opts.max_m.unwrap_or(usize::MAX).min(inst.h.d.saturating_sub(1));
    let ms: Vec<usize> = (1..=top).collect();
    let outcomes: Vec<StratumOutcome> = if opts.parallel {
        ms.par_iter().map(|&m| solve_stratum(inst, m, opts)).collect()
    } else {
        ms.iter().map(|&m| solve_stratum(inst, m, opts)).collect()
    };
    let mut all = vec![];
    let mut skipped = vec![];
    let mut strata = vec![];
    for o in outcomes {
        match o {
            Ok((rep, cands)) => {
                strata.push(rep);
                all.extend(cands);
            }
            Err(s) => skipped.push(s),
        }
    }
    let best = select_best(&mut all, &inst.objective);
    HPSolution {
        status: if best.is_some() {
            HPStatus::MinimizerFound
        } else {
            HPStatus::NoAttainedMinimizerFound
        },
        best,
        all_candidates: all,
        skipped_strata: skipped,
        strata,
    }
}

/// Enclosures narrower than this are treated as equal values.
fn tie_width() -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << 160)
}

/// Compares values, refining both enclosures until they separate or are
/// narrower than the tie threshold.
fn compare_values(a: &mut Candidate, b: &mut Candidate, objective: &LinearForm) -> Ordering {
    if a.value.is_point() && b.value.is_point() {
        return a.value.lo.cmp(&b.value.lo);
    }
    let tie = tie_width();
    loop {
        if let Some(o) = a.value.separation(&b.value) {
            return o;
        }
        if a.value.width() <= tie && b.value.width() <= tie {
            return Ordering::Equal;
        }
        for c in [&mut *a, &mut *b] {
            if !c.value.is_point() {
                let w = c.value.width() / Rat::from_integer(BigInt::from(1u32 << 16));
                c.value = c.point.linear_value(objective, &w.max(tie.clone() / Rat::from_integer(2.into())));
            }
        }
    }
}

fn midpoints(c: &Candidate) -> Vec<Rat> {
    c.point.boxes().iter().map(Interval::midpoint).collect()
}

fn select_best(all: &mut [Candidate], objective: &LinearForm) -> Option<usize> {
    let mut best: Option<usize> = None;
    for i in 0..all.len() {
        if !all[i].feasible {
            continue;
        }
        let Some(b) = best else {
            best = Some(i);
            continue;
        };
        let (head, tail) = all.split_at_mut(i);
        let ord = compare_values(&mut tail[0], &mut head[b], objective);
        let better = match ord {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => match all[i].mult.cmp(&all[b].mult) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => match midpoints(&all[i]).cmp(&midpoints(&all[b])) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => all[i].source_m > all[b].source_m,
                },
            },
        };
        if better {
            best = Some(i);
        }
    }
    best
}

/// One row of a derivative-relaxation table.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub k: usize,
    pub solution: Option<HPSolution>,
    pub error: Option<String>,
    /// Degree of `q` (before square-free reduction) for the winning stratum.
    pub deg_q: Option<usize>,
    /// Degree over Q of the minimizer's parameter.
    pub alg_deg: Option<usize>,
    /// Set when factorization was abandoned and `alg_deg` is the degree of
    /// the square-free part of `q`.
    pub alg_deg_fallback: bool,
}

impl TableRow {
    pub fn best(&self) -> Option<&Candidate> {
        self.solution.as_ref().and_then(HPSolution::best)
    }
}

/// Subset budget for recombination in the algebraic-degree column.
pub const FACTOR_BUDGET: usize = 200_000;

/// Degree of the minimal polynomial of the parameter of `p`, or the degree
/// of the square-free part of `q` (flagged) when factoring gives up.
pub fn algebraic_degree(p: &AlgebraicPoint) -> (usize, bool) {
    if p.exact().is_some() {
        return (1, false);
    }
    let rp = p.rur();
    match irreducible_factors(&rp.q_sqfree, FACTOR_BUDGET) {
        Some(fs) => match factor_degree_at(&fs, p.root()) {
            Some(d) => (d, false),
            None => (rp.q_sqfree.degree().unwrap_or(0), true),
        },
        None => (rp.q_sqfree.degree().unwrap_or(0), true),
    }
}

/// Solves the program over the derivative relaxations `k = 0..=kmax`.
pub fn derivative_table(inst: &HPInstance, kmax: usize, opts: &HPOptions) -> Vec<TableRow> {
    derivative_rows(inst, &(0..=kmax).collect::<Vec<_>>(), opts)
}

/// Like [`derivative_table`] for an arbitrary set of orders.
pub fn derivative_rows(inst: &HPInstance, ks: &[usize], opts: &HPOptions) -> Vec<TableRow> {
    let row = |k: usize| -> TableRow {
        let sub = match inst.derivative(k) {
            Ok(s) => s,
            Err(e) => {
                return TableRow {
                    k,
                    solution: None,
                    error: Some(e.to_string()),
                    deg_q: None,
                    alg_deg: None,
                    alg_deg_fallback: false,
                }
            }
        };
        let o = HPOptions {
            seed: opts.seed.wrapping_add(k as u64),
            ..opts.clone()
        };
        let sol = solve_hp(&sub, &o);
        let (deg_q, alg) = match sol.best() {
            Some(b) => (
                b.point.rur().q.degree(),
                Some(algebraic_degree(&b.point)),
            ),
            None => (None, None),
        };
        TableRow {
            k,
            solution: Some(sol),
            error: None,
            deg_q,
            alg_deg: alg.map(|a| a.0),
            alg_deg_fallback: alg.is_some_and(|a| a.1),
        }
    };
    if opts.parallel {
        ks.par_iter().map(|&k| row(k)).collect()
    } else {
        ks.iter().map(|&k| row(k)).collect()
    }
}
