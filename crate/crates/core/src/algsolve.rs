//! Zero-dimensional system solving: elimination of auxiliary variables,
//! rational univariate representations and certified real points.
//!
//! The parametrization is built from the multiplication matrices of the
//! quotient ring `Q[x]/(I ∩ Q[x])`. With `tau` the trace functional and `u`
//! a separating linear form, `q` is the characteristic polynomial of
//! multiplication by `u`, and for each function `v` the polynomial
//! `g_v(T) = sum over points a of mu_a v(a) prod_{b != a} (T - u(b))` is
//! recovered from the generalized power sums `tau(v u^j)`. Coordinates are
//! `x_i = g_{x_i}(t) / g_1(t)` at the roots `t` of `q`, and `g_1` is coprime
//! to the square-free part of `q`.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::SolveError;
use crate::factor::rational_roots;
use crate::groebner::{groebner_int, Exp, IPoly, MonomialOrder, Reducers};
use crate::poly::{LinearForm, Rat, SparsePoly};
use crate::roots::{eval_interval, isolate_square_free, sign_at_root, Interval, RootBox};
use crate::unipoly::{rat_sign, UniPoly};

/// Polynomial ideal whose variables `0..block_split` are primary and
/// `block_split..nvars` are auxiliary (multipliers).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    pub nvars: usize,
    pub generators: Vec<SparsePoly>,
    pub block_split: usize,
}

impl Ideal {
    pub fn new(nvars: usize, generators: Vec<SparsePoly>, block_split: usize) -> Self {
        assert!(block_split <= nvars);
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            nvars,
            generators,
            block_split,
        }
    }

    pub fn primary_only(&self) -> bool {
        self.block_split == self.nvars
    }
}

pub use crate::groebner::MonomialOrder as Order;

/// Reduced Gröbner basis of `I` for the given order.
pub fn groebner(
    ideal: &Ideal,
    order: MonomialOrder,
    deadline: Option<Instant>,
) -> Result<Vec<SparsePoly>, SolveError> {
    crate::groebner::groebner(&ideal.generators, order, deadline)
}

/// Elimination ideal `I ∩ Q[primary variables]`, given by a reduced
/// Gröbner basis for degrevlex on the primary variables.
pub fn eliminate(ideal: &Ideal, deadline: Option<Instant>) -> Result<Ideal, SolveError> {
    let gb = eliminate_int(ideal, deadline)?;
    let k = ideal.block_split;
    Ok(Ideal::new(k, gb.iter().map(|p| p.to_sparse(k)).collect(), k))
}

fn eliminate_int(ideal: &Ideal, deadline: Option<Instant>) -> Result<Vec<IPoly>, SolveError> {
    let k = ideal.block_split;
    let order = if ideal.primary_only() {
        MonomialOrder::Degrevlex
    } else {
        MonomialOrder::BlockElim { split: k }
    };
    let gens: Vec<IPoly> = ideal
        .generators
        .iter()
        .map(|g| IPoly::from_sparse(g, order))
        .collect();
    let gb = groebner_int(&gens, order, deadline)?;
    // elements free of auxiliary variables form a degrevlex basis of the
    // elimination ideal
    Ok(gb
        .into_iter()
        .filter(|p| p.terms.iter().all(|(e, _)| e[k..].iter().all(|&x| x == 0)))
        .map(|p| IPoly {
            terms: p.terms.into_iter().map(|(mut e, c)| {
                e.truncate(k);
                (e, c)
            }).collect(),
        })
        .collect())
}

type Matrix = Vec<Vec<Rat>>;

fn mat_vec(m: &Matrix, v: &[Rat]) -> Vec<Rat> {
    let n = v.len();
    let mut out = vec![Rat::zero(); m.len()];
    for j in 0..n {
        if v[j].is_zero() {
            continue;
        }
        for (i, row) in m.iter().enumerate() {
            if !row[j].is_zero() {
                out[i] += &row[j] * &v[j];
            }
        }
    }
    out
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Rank by Gaussian elimination over the rationals.
fn rank(mut m: Matrix) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for j in c..cols {
                let t = &f * &m[r][j];
                m[i][j] -= t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// The finite-dimensional quotient `Q[x]/J` for a zero-dimensional `J`
/// given by a degrevlex Gröbner basis.
pub struct Quotient {
    nvars: usize,
    gb: Vec<IPoly>,
    basis: Vec<Exp>,
    index: HashMap<Exp, usize>,
    /// `mult[i][r][c]`: coefficient of `basis[r]` in `x_i * basis[c]`.
    mult: Vec<Matrix>,
}

impl Quotient {
    fn new(nvars: usize, gb: Vec<IPoly>, deadline: Option<Instant>) -> Result<Self, SolveError> {
        if gb.len() == 1 && gb[0].lm().iter().all(|&e| e == 0) {
            return Ok(Quotient {
                nvars,
                gb,
                basis: vec![],
                index: HashMap::new(),
                mult: vec![vec![]; nvars],
            });
        }
        for i in 0..nvars {
            let pure = gb.iter().any(|p| {
                let lm = p.lm();
                lm[i] > 0 && lm.iter().enumerate().all(|(j, &e)| j == i || e == 0)
            });
            if !pure {
                return Err(SolveError::NonZeroDimensional);
            }
        }
        let lms: Vec<Exp> = gb.iter().map(|p| p.lm().clone()).collect();
        let is_standard = |m: &Exp| !lms.iter().any(|l| l.iter().zip(m).all(|(a, b)| a <= b));
        let mut basis = vec![vec![0u16; nvars]];
        let mut index = HashMap::new();
        index.insert(basis[0].clone(), 0);
        let mut k = 0;
        while k < basis.len() {
            for i in 0..nvars {
                let mut m = basis[k].clone();
                m[i] += 1;
                if !index.contains_key(&m) && is_standard(&m) {
                    index.insert(m.clone(), basis.len());
                    basis.push(m);
                }
            }
            k += 1;
        }
        let mut q = Quotient {
            nvars,
            gb,
            basis,
            index,
            mult: vec![],
        };
        let dim = q.basis.len();
        let mut mult = Vec::with_capacity(nvars);
        for i in 0..nvars {
            let mut m = vec![vec![Rat::zero(); dim]; dim];
            for c in 0..dim {
                let mut e = q.basis[c].clone();
                e[i] += 1;
                let v = q.monomial_coords(&e, deadline)?;
                for (r, x) in v.into_iter().enumerate() {
                    m[r][c] = x;
                }
            }
            mult.push(m);
        }
        q.mult = mult;
        Ok(q)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn monomial_coords(&self, e: &Exp, deadline: Option<Instant>) -> Result<Vec<Rat>, SolveError> {
        let mut v = vec![Rat::zero(); self.basis.len()];
        if let Some(&i) = self.index.get(e) {
            v[i] = Rat::one();
            return Ok(v);
        }
        let p = IPoly {
            terms: vec![(e.clone(), BigInt::one())],
        };
        self.coords_of(&p, deadline)
    }

    fn coords_of(&self, p: &IPoly, deadline: Option<Instant>) -> Result<Vec<Rat>, SolveError> {
        let red = Reducers::new(self.gb.iter().collect());
        let (scale, r) = crate::groebner::reduce_with_scale(p, &red, MonomialOrder::Degrevlex, deadline)?;
        let mut v = vec![Rat::zero(); self.basis.len()];
        for (e, c) in r.terms {
            let i = self.index[&e];
            v[i] = Rat::from_integer(c) / &scale;
        }
        Ok(v)
    }

    /// Multiplication matrix of a linear form.
    fn linear_matrix(&self, coeffs: &[Rat]) -> Matrix {
        let d = self.dim();
        let mut m = vec![vec![Rat::zero(); d]; d];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for r in 0..d {
                for k in 0..d {
                    if !self.mult[i][r][k].is_zero() {
                        m[r][k] += c * &self.mult[i][r][k];
                    }
                }
            }
        }
        m
    }

    /// Trace vector `tau(b_k) = Tr(M_{b_k})` together with the Hermite
    /// matrix `H_{kl} = tau(b_k b_l)`.
    fn trace_data(&self) -> (Vec<Rat>, Matrix) {
        let d = self.dim();
        // column vectors of M_{b_k}: cols[k][l] = coords of b_k * b_l
        let mut cols: Vec<Vec<Vec<Rat>>> = Vec::with_capacity(d);
        let unit = |l: usize| {
            let mut v = vec![Rat::zero(); d];
            v[l] = Rat::one();
            v
        };
        for k in 0..d {
            if k == 0 {
                cols.push((0..d).map(unit).collect());
                continue;
            }
            // b_k = x_i * b_parent with b_parent standard
            let bk = &self.basis[k];
            let i = (0..self.nvars).find(|&i| bk[i] > 0).unwrap();
            let mut parent = bk.clone();
            parent[i] -= 1;
            let pk = self.index[&parent];
            let c: Vec<Vec<Rat>> = (0..d).map(|l| mat_vec(&self.mult[i], &cols[pk][l])).collect();
            cols.push(c);
        }
        let tau: Vec<Rat> = (0..d)
            .map(|k| (0..d).fold(Rat::zero(), |acc, l| acc + &cols[k][l][l]))
            .collect();
        let herm: Matrix = (0..d)
            .map(|k| (0..d).map(|l| dot(&tau, &cols[k][l])).collect())
            .collect();
        (tau, herm)
    }
}

/// Rational univariate representation of a finite set of points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalParametrization {
    /// Characteristic polynomial of the separating form (degree = dimension
    /// of the quotient, multiplicities included).
    pub q: UniPoly,
    pub q0: UniPoly,
    pub coords: Vec<UniPoly>,
    /// Monic square-free part of `q`; the parametrization is exact modulo it.
    pub q_sqfree: UniPoly,
    /// Coefficients of the separating linear form.
    pub separating: Vec<Rat>,
    /// Number of distinct complex solutions.
    pub num_points: usize,
}

impl RationalParametrization {
    pub fn nvars(&self) -> usize {
        self.coords.len()
    }

    /// Numerator of `g(coords / q0)` homogenized with `q0^deg(g)`, reduced
    /// modulo `modulus`; returns it with the degree used.
    fn substitute_mod(&self, g: &SparsePoly, modulus: &UniPoly) -> (UniPoly, u32) {
        let d = g.degree().unwrap_or(0);
        let reduce = |p: UniPoly| if modulus.degree().unwrap_or(0) > 0 { p.rem(modulus) } else { p };
        let mut pow_cache: Vec<Vec<UniPoly>> = self
            .coords
            .iter()
            .map(|c| vec![UniPoly::one(), reduce(c.clone())])
            .collect();
        let mut q0_pows = vec![UniPoly::one(), reduce(self.q0.clone())];
        let mut acc = UniPoly::zero();
        for (m, c) in g.terms() {
            let mut t = UniPoly::constant(c.clone());
            for (i, &k) in m.0.iter().enumerate() {
                let k = k as usize;
                while pow_cache[i].len() <= k {
                    let next = reduce(&pow_cache[i][pow_cache[i].len() - 1] * &pow_cache[i][1]);
                    pow_cache[i].push(next);
                }
                if k > 0 {
                    t = reduce(&t * &pow_cache[i][k]);
                }
            }
            let pad = (d - m.degree()) as usize;
            while q0_pows.len() <= pad {
                let next = reduce(&q0_pows[q0_pows.len() - 1] * &q0_pows[1]);
                q0_pows.push(next);
            }
            if pad > 0 {
                t = reduce(&t * &q0_pows[pad]);
            }
            acc = &acc + &t;
        }
        (reduce(acc), d)
    }

    /// Parametrization of `l(x)` as a rational function `num(t) / q0(t)`.
    pub fn linear_numerator(&self, lf: &LinearForm) -> UniPoly {
        let mut acc = self.q0.scale(&lf.constant);
        for (c, qi) in lf.coeffs.iter().zip(&self.coords) {
            acc = &acc + &qi.scale(c);
        }
        acc
    }
}

/// Separation and parametrization options.
#[derive(Clone, Debug)]
pub struct RurOptions {
    pub seed: u64,
    pub max_attempts: usize,
    pub deadline: Option<Instant>,
}

impl Default for RurOptions {
    fn default() -> Self {
        RurOptions {
            seed: 0,
            max_attempts: 12,
            deadline: None,
        }
    }
}

/// Newton identities: monic polynomial of degree `d` from the power sums
/// `p_1..p_d` of its roots.
fn poly_from_power_sums(p: &[Rat], d: usize) -> UniPoly {
    // e_0 = 1, k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i
    let mut e = vec![Rat::one()];
    for k in 1..=d {
        let mut s = Rat::zero();
        for i in 1..=k {
            let t = &e[k - i] * &p[i];
            if i % 2 == 1 {
                s += t;
            } else {
                s -= t;
            }
        }
        e.push(s / Rat::from_integer(BigInt::from(k)));
    }
    // prod (T - r) = sum_k (-1)^k e_k T^(d-k)
    let mut coeffs = vec![Rat::zero(); d + 1];
    for (k, ek) in e.into_iter().enumerate() {
        coeffs[d - k] = if k % 2 == 0 { ek } else { -ek };
    }
    UniPoly::new(coeffs)
}

/// `g(T) = poly part of qbar(T) * sum_j s_j T^(-j-1)`.
fn trace_parametrization(qbar: &UniPoly, s: &[Rat]) -> UniPoly {
    let r = qbar.degree().unwrap_or(0);
    let mut out = vec![Rat::zero(); r.max(1)];
    for k in 1..=r {
        let a = qbar.coeff(k);
        if a.is_zero() {
            continue;
        }
        for j in 0..k {
            out[k - 1 - j] += &a * &s[j];
        }
    }
    UniPoly::new(out)
}

/// Rational univariate representation of `Z(I ∩ Q[primary variables])`.
pub fn rur(ideal: &Ideal, opts: &RurOptions) -> Result<RationalParametrization, SolveError> {
    let k = ideal.block_split;
    let gb = eliminate_int(ideal, opts.deadline)?;
    rur_from_basis(k, gb, opts)
}

pub(crate) fn rur_from_basis(
    nvars: usize,
    gb: Vec<IPoly>,
    opts: &RurOptions,
) -> Result<RationalParametrization, SolveError> {
    let quot = Quotient::new(nvars, gb, opts.deadline)?;
    let dim = quot.dim();
    if dim == 0 {
        return Ok(RationalParametrization {
            q: UniPoly::one(),
            q0: UniPoly::one(),
            coords: vec![UniPoly::zero(); nvars],
            q_sqfree: UniPoly::one(),
            separating: vec![Rat::zero(); nvars],
            num_points: 0,
        });
    }
    let (tau, herm) = quot.trace_data();
    let npoints = rank(herm);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let e0 = {
        let mut v = vec![Rat::zero(); dim];
        v[0] = Rat::one();
        v
    };
    for attempt in 0..opts.max_attempts {
        if let Some(dl) = opts.deadline {
            if Instant::now() > dl {
                return Err(SolveError::BudgetExceeded);
            }
        }
        let sep: Vec<Rat> = if attempt == 0 && nvars == 1 {
            vec![Rat::one()]
        } else {
            let bound = 1i64 << (attempt + 1).min(40);
            loop {
                let v: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-bound..=bound)).collect();
                if v.iter().any(|&x| x != 0) {
                    break v.into_iter().map(|x| Rat::from_integer(BigInt::from(x))).collect();
                }
            }
        };
        let mu = quot.linear_matrix(&sep);
        // w_j = coords of u^j
        let mut w = vec![e0.clone()];
        for j in 1..=dim {
            let next = mat_vec(&mu, &w[j - 1]);
            w.push(next);
        }
        let psums: Vec<Rat> = w.iter().map(|v| dot(&tau, v)).collect();
        let q = poly_from_power_sums(&psums, dim);
        let qbar = crate::roots::square_free(&q).expect("nonzero").monic();
        let r = qbar.degree().unwrap_or(0);
        if r != npoints {
            continue;
        }
        let q0 = trace_parametrization(&qbar, &psums[..r]);
        let coords: Vec<UniPoly> = (0..nvars)
            .map(|i| {
                let s: Vec<Rat> = w[..r]
                    .iter()
                    .map(|v| dot(&tau, &mat_vec(&quot.mult[i], v)))
                    .collect();
                trace_parametrization(&qbar, &s)
            })
            .collect();
        return Ok(RationalParametrization {
            q,
            q0,
            coords,
            q_sqfree: qbar,
            separating: sep,
            num_points: npoints,
        });
    }
    Err(SolveError::SeparationFailure {
        attempts: opts.max_attempts,
    })
}

/// Checks that every generator of the elimination ideal vanishes on the
/// parametrization modulo the square-free part of `q`.
pub fn verify_rur(rp: &RationalParametrization, ideal: &Ideal) -> bool {
    let elim = if ideal.primary_only() {
        ideal.clone()
    } else {
        match eliminate(ideal, None) {
            Ok(e) => e,
            Err(_) => return false,
        }
    };
    if elim.nvars != rp.nvars() {
        return false;
    }
    let modulus = match crate::roots::square_free(&rp.q) {
        Ok(m) => m,
        Err(_) => return false,
    };
    if modulus.degree() == Some(0) {
        // empty solution set: the ideal must be the unit ideal
        let unit = |gs: &[SparsePoly]| gs.iter().any(|g| g.is_constant() && !g.is_zero());
        if unit(&elim.generators) {
            return true;
        }
        return groebner(&elim, MonomialOrder::Degrevlex, None).is_ok_and(|gb| unit(&gb));
    }
    if !modulus.gcd(&rp.q0).degree().is_some_and(|d| d == 0) {
        return false;
    }
    elim.generators
        .iter()
        .all(|g| rp.substitute_mod(g, &modulus).0.is_zero())
}

/// One real solution of a parametrization.
#[derive(Clone, Debug)]
pub struct AlgebraicPoint {
    rur: Arc<RationalParametrization>,
    root: RootBox,
    boxes: Vec<Interval>,
    exact: Option<Vec<Rat>>,
}

impl AlgebraicPoint {
    /// A rational point presented through the trivial parametrization
    /// `q = t`, `q0 = 1`, `coords = constants`.
    pub fn from_rational(a: &[Rat]) -> Self {
        let rp = RationalParametrization {
            q: UniPoly::t(),
            q0: UniPoly::one(),
            coords: a.iter().map(|x| UniPoly::constant(x.clone())).collect(),
            q_sqfree: UniPoly::t(),
            separating: vec![Rat::zero(); a.len()],
            num_points: 1,
        };
        AlgebraicPoint {
            root: RootBox::exact(&UniPoly::t(), Rat::zero()),
            boxes: a.iter().cloned().map(Interval::point).collect(),
            exact: Some(a.to_vec()),
            rur: Arc::new(rp),
        }
    }

    pub fn rur(&self) -> &Arc<RationalParametrization> {
        &self.rur
    }

    pub fn root(&self) -> &RootBox {
        &self.root
    }

    pub fn boxes(&self) -> &[Interval] {
        &self.boxes
    }

    /// Exact coordinates when the point is rational.
    pub fn exact(&self) -> Option<&[Rat]> {
        self.exact.as_deref()
    }

    pub fn nvars(&self) -> usize {
        self.boxes.len()
    }

    /// Exact sign of `g` at the point.
    pub fn sign_of(&self, g: &SparsePoly) -> i32 {
        if let Some(x) = &self.exact {
            return rat_sign(&g.evaluate(x).expect("arity"));
        }
        let (num, d) = self.rur.substitute_mod(g, &self.rur.q_sqfree);
        let s = sign_at_root(&num, &self.root);
        if s == 0 || d % 2 == 0 {
            return s;
        }
        s * sign_at_root(&self.rur.q0, &self.root)
    }

    /// Enclosure of `num(alpha) / q0(alpha)` of width at most `width`.
    pub fn rational_function_interval(&self, num: &UniPoly, width: &Rat) -> Interval {
        let mut rb = self.root.clone();
        loop {
            let iv = rb.interval();
            let n = eval_interval(num, &iv);
            let d = eval_interval(&self.rur.q0, &iv);
            if let Some(v) = n.div(&d) {
                if v.width() <= *width {
                    return v;
                }
            }
            for _ in 0..4 {
                rb.bisect();
            }
        }
    }

    /// Enclosure of `l(point)`.
    pub fn linear_value(&self, lf: &LinearForm, width: &Rat) -> Interval {
        if let Some(x) = &self.exact {
            return Interval::point(lf.evaluate(x).expect("arity"));
        }
        let num = self.rur.linear_numerator(lf);
        self.rational_function_interval(&num, width)
    }

    /// Shrinks the root box (and the coordinate boxes) to width `width`.
    pub fn refine(&mut self, width: &Rat) {
        if self.exact.is_some() {
            return;
        }
        let boxes = coordinate_boxes(&self.rur, &mut self.root, width);
        self.boxes = boxes;
    }
}

fn coordinate_boxes(rp: &RationalParametrization, root: &mut RootBox, width: &Rat) -> Vec<Interval> {
    loop {
        let iv = root.interval();
        let d = eval_interval(&rp.q0, &iv);
        if !d.contains_zero() {
            let boxes: Vec<Interval> = rp
                .coords
                .iter()
                .map(|c| eval_interval(c, &iv).div(&d).expect("nonzero"))
                .collect();
            if boxes.iter().all(|b| b.width() <= *width) {
                return boxes;
            }
        }
        if root.is_exact() {
            // q0(alpha) != 0 at a rational root, so the exact branch above
            // always succeeds
            unreachable!("exact root with vanishing denominator");
        }
        for _ in 0..4 {
            root.bisect();
        }
    }
}

/// One point per real root of `q`, coordinate boxes of width at most `width`.
pub fn real_points(rp: &Arc<RationalParametrization>, width: &Rat) -> Vec<AlgebraicPoint> {
    if rp.q_sqfree.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let qbar = rp.q_sqfree.primitive_int();
    let rational = rational_roots(&qbar);
    let mut deflated = UniPoly::from_bigints(&qbar);
    for r in &rational {
        let lin = UniPoly::linear(Rat::from_integer(r.denom().clone()), -Rat::from_integer(r.numer().clone()));
        deflated = deflated.exact_div(&lin);
    }
    let mut roots: Vec<RootBox> = rational
        .iter()
        .map(|r| RootBox::exact(&UniPoly::from_bigints(&qbar), r.clone()))
        .collect();
    roots.extend(isolate_square_free(&deflated.primitive_int()));
    roots.sort_by(|a, b| a.lo().cmp(b.lo()).then_with(|| a.hi().cmp(b.hi())));
    roots
        .into_iter()
        .map(|mut root| {
            let exact = if root.is_exact() {
                let t = root.lo().clone();
                let den = rp.q0.eval(&t);
                Some(rp.coords.iter().map(|c| c.eval(&t) / &den).collect::<Vec<_>>())
            } else {
                None
            };
            let boxes = match &exact {
                Some(x) => x.iter().cloned().map(Interval::point).collect(),
                None => coordinate_boxes(rp, &mut root, width),
            };
            AlgebraicPoint {
                rur: rp.clone(),
                root,
                boxes,
                exact,
            }
        })
        .collect()
}

/// Convenience: eliminate, parametrize and extract real points.
pub fn solve_real(
    ideal: &Ideal,
    width: &Rat,
    opts: &RurOptions,
) -> Result<(Arc<RationalParametrization>, Vec<AlgebraicPoint>), SolveError> {
    let rp = Arc::new(rur(ideal, opts)?);
    let pts = real_points(&rp, width);
    Ok((rp, pts))
}

/// Sign of `q0` at each root is nonzero; exposed for diagnostics.
pub fn denominators_nonvanishing(rp: &RationalParametrization) -> bool {
    rp.q_sqfree.gcd(&rp.q0).degree() == Some(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};

    fn p(nvars: usize, terms: &[(&[u32], i64)]) -> SparsePoly {
        SparsePoly::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), rat_int(*c))))
    }

    #[test]
    fn univariate_rur() {
        let i = Ideal::new(1, vec![p(1, &[(&[2], 1), (&[0], -1)])], 1);
        let rp = rur(&i, &RurOptions::default()).unwrap();
        assert_eq!(rp.q, UniPoly::from_ints(&[-1, 0, 1]));
        // q0 = q' = 2t, coords = 2 t^2 mod q... here g_x = sum x_a prod(T - u_b)
        // with u = x: g_x = 2 (as x_a * (T - other)) summed -> 2
        let pts = real_points(&Arc::new(rp.clone()), &rat(1, 1000));
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].exact().unwrap(), &[rat_int(-1)]);
        assert_eq!(pts[1].exact().unwrap(), &[rat_int(1)]);
        assert!(verify_rur(&rp, &i));
        let mut bad = rp.clone();
        bad.q = UniPoly::from_ints(&[-2, 0, 1]);
        assert!(!verify_rur(&bad, &i));
    }

    #[test]
    fn elimination_examples() {
        // <z x - 1, z - 1> with z auxiliary
        let i = Ideal::new(2, vec![p(2, &[(&[1, 1], 1), (&[0, 0], -1)]), p(2, &[(&[0, 1], 1), (&[0, 0], -1)])], 1);
        let e = eliminate(&i, None).unwrap();
        assert_eq!(e.generators, vec![p(1, &[(&[1], 1), (&[0], -1)])]);
        let i2 = Ideal::new(2, vec![p(2, &[(&[2, 0], 1), (&[0, 0], -1)]), p(2, &[(&[0, 1], 1)])], 1);
        assert_eq!(eliminate(&i2, None).unwrap().generators, vec![p(1, &[(&[2], 1), (&[0], -1)])]);
    }

    #[test]
    fn positive_dimensional_is_rejected() {
        let i = Ideal::new(2, vec![p(2, &[(&[1, 0], 1), (&[0, 1], -1)])], 2);
        assert_eq!(rur(&i, &RurOptions::default()), Err(SolveError::NonZeroDimensional));
    }

    #[test]
    fn empty_variety() {
        let i = Ideal::new(1, vec![p(1, &[(&[1], 1)]), p(1, &[(&[0], 1)])], 1);
        let rp = rur(&i, &RurOptions::default()).unwrap();
        assert_eq!(rp.num_points, 0);
        assert!(real_points(&Arc::new(rp), &rat(1, 10)).is_empty());
    }

    #[test]
    fn non_radical_ideal_keeps_point_set() {
        // <x^2, y - 1>: one point (0, 1) of multiplicity 2
        let i = Ideal::new(2, vec![p(2, &[(&[2, 0], 1)]), p(2, &[(&[0, 1], 1), (&[0, 0], -1)])], 2);
        let rp = Arc::new(rur(&i, &RurOptions::default()).unwrap());
        assert_eq!(rp.q.degree(), Some(2));
        assert_eq!(rp.num_points, 1);
        let pts = real_points(&rp, &rat(1, 100));
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].exact().unwrap(), &[rat_int(0), rat_int(1)]);
        assert!(verify_rur(&rp, &i));
    }

    #[test]
    fn irrational_points_and_signs() {
        // x^2 = 2, y = x + 1
        let i = Ideal::new(
            2,
            vec![
                p(2, &[(&[2, 0], 1), (&[0, 0], -2)]),
                p(2, &[(&[0, 1], 1), (&[1, 0], -1), (&[0, 0], -1)]),
            ],
            2,
        );
        let rp = Arc::new(rur(&i, &RurOptions::default()).unwrap());
        let pts = real_points(&rp, &rat(1, 1_000_000));
        assert_eq!(pts.len(), 2);
        let lo = &pts[0];
        assert!(lo.boxes()[0].contains(&rat(-1414214, 1_000_000)) || lo.boxes()[0].hi < rat(-1414213, 1_000_000));
        // y - x - 1 vanishes, x^2 - 3 < 0, x < 0 on the first point
        assert_eq!(lo.sign_of(&p(2, &[(&[0, 1], 1), (&[1, 0], -1), (&[0, 0], -1)])), 0);
        assert_eq!(lo.sign_of(&p(2, &[(&[2, 0], 1), (&[0, 0], -3)])), -1);
        assert_eq!(lo.sign_of(&p(2, &[(&[1, 0], 1)])), -1);
        assert_eq!(pts[1].sign_of(&p(2, &[(&[1, 0], 1)])), 1);
        let v = pts[1].linear_value(&LinearForm::new(vec![rat_int(1), rat_int(1)], rat_int(0)), &rat(1, 1_000_000));
        // x + y = 2 sqrt2 + 1 = 3.828427...
        assert!(v.contains(&rat(38284271, 10_000_000)) || (v.lo > rat(3828427, 1_000_000) && v.hi < rat(3828428, 1_000_000)));
    }
}
