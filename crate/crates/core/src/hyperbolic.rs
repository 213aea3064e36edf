//! Pointwise data of a hyperbolic polynomial: characteristic polynomials,
//! eigenvalues, multiplicities and membership in the hyperbolicity cone.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algsolve::AlgebraicPoint;
use crate::error::{HypError, PolyError};
use crate::poly::{char_expansion, CharSign, Rat, SparsePoly};
use crate::roots::{count_real_roots, isolate_real_roots, sign_at_root, square_free, Bound, RootBox};
use crate::unipoly::{rat_sign, UniPoly};

/// Denominator of the sampling grid used by [`hyperbolicity_test`].
pub const GRID_DENOMINATOR: i64 = 64;

/// A homogeneous `f` with `f(e) = 1`, with both characteristic expansions
/// cached.
///
/// `char_minus[i - 1]` is the coefficient of `t^(d-i)` in `f(t e - x)` and
/// `char_plus[i - 1]` the one in `f(t e + x)`, so `char_plus[i - 1]` is the
/// elementary symmetric function `sigma_i` of the eigenvalues and
/// `char_plus[d - 1] = f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicData {
    pub f: SparsePoly,
    pub e: Vec<Rat>,
    pub d: usize,
    pub char_minus: Vec<SparsePoly>,
    pub char_plus: Vec<SparsePoly>,
}

/// Rescales `f` so that `f(e) = 1` and caches the characteristic expansions.
pub fn normalize(f: &SparsePoly, e: &[Rat]) -> Result<HyperbolicData, HypError> {
    if e.len() != f.nvars() {
        return Err(PolyError::LengthMismatch {
            expected: f.nvars(),
            got: e.len(),
        }
        .into());
    }
    let d = match f.degree() {
        Some(d) if d >= 1 => d as usize,
        _ => return Err(HypError::Degenerate),
    };
    if !f.is_homogeneous() {
        return Err(PolyError::NotHomogeneous.into());
    }
    let fe = f.evaluate(e)?;
    if fe.is_zero() {
        return Err(HypError::NotHyperbolicDirection);
    }
    let f = f.scale(&(Rat::one() / fe));
    let char_minus = char_expansion(&f, e, CharSign::Minus)?;
    let char_plus = char_expansion(&f, e, CharSign::Plus)?;
    Ok(HyperbolicData {
        f,
        e: e.to_vec(),
        d,
        char_minus,
        char_plus,
    })
}

impl HyperbolicData {
    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    fn check_arity(&self, a: &[Rat]) {
        assert_eq!(a.len(), self.nvars(), "point has wrong number of coordinates");
    }

    /// `ch_a(t) = f(t e - a)` from the cached symbolic coefficients.
    pub fn charpoly_at(&self, a: &[Rat]) -> UniPoly {
        self.check_arity(a);
        let mut c = vec![Rat::zero(); self.d + 1];
        c[self.d] = Rat::one();
        for (i, g) in self.char_minus.iter().enumerate() {
            c[self.d - 1 - i] = g.evaluate(a).expect("arity checked");
        }
        UniPoly::new(c)
    }

    /// `ch_a(t)` by direct substitution into `f`, independent of the cache.
    pub fn charpoly_direct(&self, a: &[Rat]) -> UniPoly {
        self.check_arity(a);
        // evaluate f(t e - a) at d + 1 integer nodes and interpolate
        let nodes: Vec<Rat> = (0..=self.d as i64).map(|k| Rat::from_integer(k.into())).collect();
        let values: Vec<Rat> = nodes
            .iter()
            .map(|t| {
                let x: Vec<Rat> = self.e.iter().zip(a).map(|(ei, ai)| t * ei - ai).collect();
                self.f.evaluate(&x).expect("arity checked")
            })
            .collect();
        interpolate(&nodes, &values)
    }

    pub fn is_real_rooted_at(&self, a: &[Rat]) -> bool {
        let sf = square_free(&self.charpoly_at(a)).expect("monic");
        let deg = sf.degree().unwrap_or(0);
        count_real_roots(&sf, &Bound::NegInf, &Bound::PosInf).expect("nonzero") == deg
    }

    /// Sorted eigenvalues with multiplicities (summing to `d`).
    pub fn eigenvalues_at(&self, a: &[Rat]) -> Result<Vec<(RootBox, usize)>, HypError> {
        if !self.is_real_rooted_at(a) {
            return Err(HypError::NotHyperbolicAt { witness: a.to_vec() });
        }
        let ch = self.charpoly_at(a);
        let boxes = isolate_real_roots(&ch).expect("nonzero");
        // gcd chain ch, gcd(ch, ch'), ...: a root of multiplicity k divides
        // exactly the first k members
        let mut chain = vec![];
        let mut g = ch.clone();
        while g.degree().unwrap_or(0) > 0 {
            let next = g.gcd(&g.derivative());
            chain.push(g);
            g = next;
        }
        Ok(boxes
            .into_iter()
            .map(|b| {
                let k = chain.iter().filter(|g| sign_at_root(g, &b) == 0).count();
                (b, k)
            })
            .collect())
    }

    /// Multiplicity of the eigenvalue 0 at the rational point `a`.
    pub fn multiplicity_at(&self, a: &[Rat]) -> usize {
        self.check_arity(a);
        self.char_minus
            .iter()
            .rev()
            .take_while(|g| g.evaluate(a).expect("arity checked").is_zero())
            .count()
    }

    /// Membership in the closed hyperbolicity cone: all `sigma_i(a) >= 0`.
    pub fn is_feasible(&self, a: &[Rat]) -> bool {
        self.check_arity(a);
        self.char_plus
            .iter()
            .all(|g| rat_sign(&g.evaluate(a).expect("arity checked")) >= 0)
    }

    /// Multiplicity at an algebraic point, each vanishing decided exactly.
    pub fn multiplicity_at_point(&self, p: &AlgebraicPoint) -> usize {
        if let Some(a) = p.exact() {
            return self.multiplicity_at(a);
        }
        self.char_minus
            .iter()
            .rev()
            .take_while(|g| p.sign_of(g) == 0)
            .count()
    }

    /// Feasibility at an algebraic point from exact signs of the `sigma_i`.
    pub fn is_feasible_point(&self, p: &AlgebraicPoint) -> bool {
        if let Some(a) = p.exact() {
            return self.is_feasible(a);
        }
        self.char_plus.iter().all(|g| p.sign_of(g) >= 0)
    }

    /// The data for the `k`-th directional derivative of `f` along `e`,
    /// renormalized at `e`.
    pub fn derivative(&self, k: usize) -> Result<HyperbolicData, HypError> {
        if k >= self.d {
            return Err(HypError::Degenerate);
        }
        let g = self.f.directional_derivative(&self.e, k as u32)?;
        normalize(&g, &self.e)
    }
}

/// Lagrange interpolation through `(nodes[i], values[i])`.
fn interpolate(nodes: &[Rat], values: &[Rat]) -> UniPoly {
    let mut acc = UniPoly::zero();
    for (i, xi) in nodes.iter().enumerate() {
        let mut basis = UniPoly::one();
        let mut den = Rat::one();
        for (j, xj) in nodes.iter().enumerate() {
            if i != j {
                basis = &basis * &UniPoly::linear(Rat::one(), -xj.clone());
                den *= xi - xj;
            }
        }
        acc = &acc + &basis.scale(&(&values[i] / den));
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HypStatus {
    Counterexample,
    ProbablyHyperbolic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypVerdict {
    pub status: HypStatus,
    pub witness: Option<Vec<Rat>>,
    pub trials: usize,
}

impl HypVerdict {
    /// Verdict for data accepted without testing.
    pub fn assumed() -> Self {
        HypVerdict {
            status: HypStatus::ProbablyHyperbolic,
            witness: None,
            trials: 0,
        }
    }
}

/// Random point on the grid `{k / 64 : -64 <= k <= 64}^n`.
pub fn grid_point(n: usize, rng: &mut ChaCha8Rng) -> Vec<Rat> {
    (0..n)
        .map(|_| {
            Rat::new(
                rng.gen_range(-GRID_DENOMINATOR..=GRID_DENOMINATOR).into(),
                GRID_DENOMINATOR.into(),
            )
        })
        .collect()
}

/// Checks real-rootedness of `ch_a` at `trials` seeded grid points.
pub fn hyperbolicity_test(h: &HyperbolicData, trials: usize, seed: u64) -> HypVerdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let a = grid_point(h.nvars(), &mut rng);
        if !h.is_real_rooted_at(&a) {
            return HypVerdict {
                status: HypStatus::Counterexample,
                witness: Some(a),
                trials,
            };
        }
    }
    HypVerdict {
        status: HypStatus::ProbablyHyperbolic,
        witness: None,
        trials,
    }
}
