//! Multiplicity strata `Gamma_m` cut by the affine section, and their
//! sampling through critical points of linear functions.

use std::sync::Arc;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algsolve::{real_points, rur, verify_rur, AlgebraicPoint, Ideal, RationalParametrization, RurOptions};
use crate::error::{HypError, SolveError, StratumError};
use crate::hyperbolic::HyperbolicData;
use crate::poly::{symbolic_det, LinearForm, Rat, SparsePoly};
use crate::unipoly::UniPoly;

/// `Gamma_m = Z(c_d, c_{d-1}, ..., c_{d-m+1})` with the `c_i` the
/// coefficients of `f(t e + x)`, together with the section form `s` of the
/// affine space `s(x) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub m: usize,
    pub generators: Vec<SparsePoly>,
    pub section: LinearForm,
}

pub fn stratum(h: &HyperbolicData, m: usize, section: &LinearForm) -> Result<Stratum, HypError> {
    if m < 1 || m > h.d {
        return Err(HypError::StratumOutOfRange { m, d: h.d });
    }
    let generators = (0..m).map(|j| h.char_plus[h.d - 1 - j].clone()).collect();
    Ok(Stratum {
        m,
        generators,
        section: section.clone(),
    })
}

/// Ideal of the points of `Z(gens) ∩ {s = 1}` where `grad l`, the
/// gradients of `gens` and `s` are linearly dependent: the smooth critical
/// points of `l` together with the singular points of the section.
///
/// This is the projection to `x` of the Lagrange system with a homogenizing
/// multiplier on `grad l`, expressed through the maximal minors of the
/// matrix with rows `grad l, grad g_1, ..., grad g_m, s`.
pub fn critical_ideal(gens: &[SparsePoly], section: &LinearForm, objective: &LinearForm) -> Ideal {
    let n = section.nvars();
    let mut out: Vec<SparsePoly> = gens.to_vec();
    out.push(&section.to_poly() - &SparsePoly::constant(n, Rat::one()));
    out.extend(rank_minors(gens, section, objective));
    Ideal::new(n, out, n)
}

fn rank_minors(gens: &[SparsePoly], section: &LinearForm, objective: &LinearForm) -> Vec<SparsePoly> {
    let n = section.nvars();
    let k = gens.len() + 2;
    if k > n {
        return vec![];
    }
    let constant_row = |c: &[Rat]| -> Vec<SparsePoly> {
        c.iter().map(|x| SparsePoly::constant(n, x.clone())).collect()
    };
    let mut rows = vec![constant_row(&objective.coeffs)];
    rows.extend(gens.iter().map(SparsePoly::gradient));
    rows.push(constant_row(&section.coeffs));
    let mut out = vec![];
    for cols in combinations(n, k) {
        let sub: Vec<Vec<SparsePoly>> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        let det = symbolic_det(&sub);
        if !det.is_zero() && !out.contains(&det) {
            out.push(det);
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Target width of coordinate boxes.
    pub width: Rat,
    pub seed: u64,
    pub deadline: Option<Instant>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            width: Rat::new(1.into(), (1u64 << 40).into()),
            seed: 0,
            deadline: None,
        }
    }
}

/// Real points of a critical-point system with their parametrization.
#[derive(Clone, Debug)]
pub struct CriticalSolve {
    pub ideal: Ideal,
    pub rur: Arc<RationalParametrization>,
    pub points: Vec<AlgebraicPoint>,
    pub verified: bool,
}

/// Solves [`critical_ideal`] after eliminating one variable with the
/// section equation.
pub fn solve_critical(
    gens: &[SparsePoly],
    section: &LinearForm,
    objective: &LinearForm,
    opts: &SolveOptions,
) -> Result<CriticalSolve, SolveError> {
    let ideal = critical_ideal(gens, section, objective);
    let n = section.nvars();
    let pivot = (0..n)
        .rev()
        .find(|&i| !section.coeffs[i].is_zero())
        .expect("nonzero section");
    let sp = section.coeffs[pivot].clone();
    // x_pivot = (1 - sum_{j != pivot} s_j x_j) / s_pivot
    let images: Vec<SparsePoly> = (0..n)
        .map(|j| {
            if j == pivot {
                let mut p = SparsePoly::constant(n - 1, Rat::one() / &sp);
                for (jj, c) in section.coeffs.iter().enumerate() {
                    if jj != pivot && !c.is_zero() {
                        let r = reduced_index(jj, pivot);
                        p = &p - &SparsePoly::var(n - 1, r).scale(&(c / &sp));
                    }
                }
                p
            } else {
                SparsePoly::var(n - 1, reduced_index(j, pivot))
            }
        })
        .collect();
    let reduced_gens: Vec<SparsePoly> = ideal
        .generators
        .iter()
        .map(|g| g.compose(&images, n - 1))
        .filter(|g| !g.is_zero())
        .collect();
    let reduced = Ideal::new(n - 1, reduced_gens, n - 1);
    let rp = if n == 1 {
        point_parametrization(&reduced.generators, &[])
    } else {
        let ropts = RurOptions {
            seed: opts.seed,
            deadline: opts.deadline,
            ..RurOptions::default()
        };
        rur(&reduced, &ropts)?
    };
    let empty = rp.q.degree() == Some(0);
    let rp_reduced = rp.clone();
    let rp = Arc::new(lift_parametrization(&rp, section, pivot));
    // the substitution identifies the two varieties; with no points the
    // cheaper unit-ideal check on the reduced system suffices
    let verified = if empty && n > 1 {
        verify_rur(&rp_reduced, &reduced)
    } else {
        verify_rur(&rp, &ideal)
    };
    let points = real_points(&rp, &opts.width);
    Ok(CriticalSolve {
        ideal,
        rur: rp,
        points,
        verified,
    })
}

fn reduced_index(j: usize, pivot: usize) -> usize {
    if j < pivot {
        j
    } else {
        j - 1
    }
}

/// Parametrization of the origin of a zero-variable ring if all the
/// (constant) generators vanish, of the empty set otherwise.
fn point_parametrization(gens: &[SparsePoly], coords: &[Rat]) -> RationalParametrization {
    let empty = gens.iter().any(|g| !g.is_zero());
    RationalParametrization {
        q: if empty { UniPoly::one() } else { UniPoly::t() },
        q0: UniPoly::one(),
        coords: coords.iter().map(|c| UniPoly::constant(c.clone())).collect(),
        q_sqfree: if empty { UniPoly::one() } else { UniPoly::t() },
        separating: vec![],
        num_points: usize::from(!empty),
    }
}

/// Reinserts the pivot coordinate `x_p = (q0 - sum s_j q_j) / s_p`.
fn lift_parametrization(rp: &RationalParametrization, section: &LinearForm, pivot: usize) -> RationalParametrization {
    let n = section.nvars();
    let sp = &section.coeffs[pivot];
    let mut pc = rp.q0.scale(&(Rat::one() / sp));
    let mut coords = Vec::with_capacity(n);
    let mut separating = Vec::with_capacity(n);
    for j in 0..n {
        if j == pivot {
            coords.push(UniPoly::zero());
            separating.push(Rat::zero());
        } else {
            let r = reduced_index(j, pivot);
            let c = &section.coeffs[j];
            if !c.is_zero() {
                pc = &pc - &rp.coords[r].scale(&(c / sp));
            }
            coords.push(rp.coords[r].clone());
            separating.push(rp.separating.get(r).cloned().unwrap_or_else(Rat::zero));
        }
    }
    coords[pivot] = pc;
    RationalParametrization {
        q: rp.q.clone(),
        q0: rp.q0.clone(),
        coords,
        q_sqfree: rp.q_sqfree.clone(),
        separating,
        num_points: rp.num_points,
    }
}

/// A sampled point with its exact annotations.
#[derive(Clone, Debug)]
pub struct Sample {
    pub point: AlgebraicPoint,
    pub feasible: bool,
    pub mult: usize,
}

/// Result of sampling one stratum.
#[derive(Clone, Debug)]
pub struct StratumSamples {
    pub objective: LinearForm,
    pub solve: CriticalSolve,
    pub samples: Vec<Sample>,
}

/// Random integer linear form independent of `section`.
pub fn random_objective(section: &LinearForm, rng: &mut ChaCha8Rng) -> LinearForm {
    let n = section.nvars();
    loop {
        let c: Vec<Rat> = (0..n).map(|_| Rat::from_integer(rng.gen_range(-10i64..=10).into())).collect();
        let lf = LinearForm::new(c, Rat::zero());
        if !lf.is_zero_form() && !lf.linear_part_dependent(section) {
            return lf;
        }
    }
}

/// Critical points of a seeded random linear form on `Gamma_m ∩ {s = 1}`
/// (including singular points), annotated with feasibility and
/// multiplicity.
pub fn sample_stratum(s: &Stratum, h: &HyperbolicData, seed: u64) -> Result<Vec<Sample>, StratumError> {
    sample_stratum_with(s, h, &SolveOptions { seed, ..SolveOptions::default() }).map(|r| r.samples)
}

pub fn sample_stratum_with(s: &Stratum, h: &HyperbolicData, opts: &SolveOptions) -> Result<StratumSamples, StratumError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let objective = random_objective(&s.section, &mut rng);
    let solve = solve_critical(&s.generators, &s.section, &objective, opts)
        .map_err(|source| StratumError { m: s.m, source })?;
    let samples = solve
        .points
        .iter()
        .map(|p| Sample {
            feasible: h.is_feasible_point(p),
            mult: h.multiplicity_at_point(p),
            point: p.clone(),
        })
        .collect();
    Ok(StratumSamples {
        objective,
        solve,
        samples,
    })
}

/// Outcome of the maximal-multiplicity search.
#[derive(Clone, Debug)]
pub struct MaxMult {
    pub m_star: usize,
    pub witness: AlgebraicPoint,
    pub skipped: Vec<(usize, String)>,
}

/// Largest `m` whose stratum sample contains a feasible point, scanning
/// `m = d-1, ..., 1`; `m* = 0` with the scaled direction `e` otherwise.
pub fn max_multiplicity(h: &HyperbolicData, section: &LinearForm, seed: u64) -> Result<MaxMult, HypError> {
    max_multiplicity_with(h, section, &SolveOptions { seed, ..SolveOptions::default() })
}

pub fn max_multiplicity_with(h: &HyperbolicData, section: &LinearForm, opts: &SolveOptions) -> Result<MaxMult, HypError> {
    let mut skipped = vec![];
    for m in (1..h.d).rev() {
        let s = stratum(h, m, section)?;
        let o = SolveOptions {
            seed: opts.seed.wrapping_add(m as u64),
            ..opts.clone()
        };
        match sample_stratum_with(&s, h, &o) {
            Ok(res) => {
                // prefer the highest certified multiplicity among feasible samples
                if let Some(best) = res
                    .samples
                    .into_iter()
                    .filter(|x| x.feasible)
                    .max_by_key(|x| x.mult)
                {
                    return Ok(MaxMult {
                        m_star: best.mult.max(m),
                        witness: best.point,
                        skipped,
                    });
                }
            }
            Err(err) => skipped.push((m, err.source.to_string())),
        }
    }
    let se = section.evaluate(&h.e)?;
    let w: Vec<Rat> = if se.is_zero() {
        h.e.clone()
    } else {
        h.e.iter().map(|x| x / &se).collect()
    };
    Ok(MaxMult {
        m_star: 0,
        witness: AlgebraicPoint::from_rational(&w),
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::normalize;
    use crate::poly::{rat, rat_int};

    fn p(nvars: usize, terms: &[(&[u32], i64)]) -> SparsePoly {
        SparsePoly::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), rat_int(*c))))
    }

    fn elliptope2() -> HyperbolicData {
        normalize(&p(2, &[(&[2, 0], 1), (&[0, 2], -1)]), &[rat_int(1), rat_int(0)]).unwrap()
    }

    #[test]
    fn generators_nest() {
        let h = elliptope2();
        let sec = LinearForm::homogeneous(vec![rat_int(2), rat_int(0)]);
        let s1 = stratum(&h, 1, &sec).unwrap();
        let s2 = stratum(&h, 2, &sec).unwrap();
        assert_eq!(s1.generators, vec![h.f.clone()]);
        assert_eq!(s2.generators, vec![h.f.clone(), p(2, &[(&[1, 0], 2)])]);
        assert!(matches!(stratum(&h, 3, &sec), Err(HypError::StratumOutOfRange { .. })));
    }

    #[test]
    fn elliptope2_samples() {
        let h = elliptope2();
        let sec = LinearForm::homogeneous(vec![rat_int(2), rat_int(0)]);
        let s = stratum(&h, 1, &sec).unwrap();
        let samples = sample_stratum(&s, &h, 3).unwrap();
        let mut pts: Vec<Vec<Rat>> = samples.iter().map(|x| x.point.exact().unwrap().to_vec()).collect();
        pts.sort();
        assert_eq!(pts, vec![vec![rat(1, 2), rat(-1, 2)], vec![rat(1, 2), rat(1, 2)]]);
        assert!(samples.iter().all(|x| x.feasible && x.mult == 1));
    }

    #[test]
    fn combinations_enumerate() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }
}
