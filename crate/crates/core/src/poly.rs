//! Exact sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded reverse lexicographic. The zero polynomial has no terms and no
//! stored coefficient is ever zero.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::PolyError;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exponent vector ordered by graded reverse lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked binary arithmetic; the operator impls panic on mismatched `nvars`.
pub fn arith(a: &SparsePoly, b: &SparsePoly, op: ArithOp) -> Result<SparsePoly, PolyError> {
    if a.nvars != b.nvars {
        return Err(PolyError::NvarsMismatch {
            left: a.nvars,
            right: b.nvars,
        });
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    })
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), Rat::one());
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rat)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Whether variable `i` occurs in some term.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    pub fn scale(&self, c: &Rat) -> SparsePoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> SparsePoly {
        let mut acc = Self::constant(self.nvars, Rat::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, a: &[Rat]) -> Result<Rat, PolyError> {
        if a.len() != self.nvars {
            return Err(PolyError::LengthMismatch {
                expected: self.nvars,
                got: a.len(),
            });
        }
        // powers[i][k] = a_i^k
        let maxdeg: Vec<u32> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<Rat>> = a
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut v = Vec::with_capacity(d as usize + 1);
                v.push(Rat::one());
                for k in 1..=d as usize {
                    let next = &v[k - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    t *= &powers[i][k as usize];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn partial(&self, i: usize) -> SparsePoly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let k = m.0[i];
            if k == 0 {
                continue;
            }
            let mut e = m.clone();
            e.0[i] -= 1;
            out.add_term(e, c * rat_int(k as i64));
        }
        out
    }

    pub fn gradient(&self) -> Vec<SparsePoly> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// `k`-fold application of `sum_i e_i d/dx_i`.
    pub fn directional_derivative(&self, e: &[Rat], k: u32) -> Result<SparsePoly, PolyError> {
        if e.len() != self.nvars {
            return Err(PolyError::LengthMismatch {
                expected: self.nvars,
                got: e.len(),
            });
        }
        let mut p = self.clone();
        for _ in 0..k {
            let mut next = Self::zero(self.nvars);
            for (i, ei) in e.iter().enumerate() {
                if !ei.is_zero() {
                    next = &next + &p.partial(i).scale(ei);
                }
            }
            p = next;
        }
        Ok(p)
    }

    /// Substitutes `x_i -> images[i]` (each image living in a ring with
    /// `target_nvars` variables).
    pub fn compose(&self, images: &[SparsePoly], target_nvars: usize) -> SparsePoly {
        assert_eq!(images.len(), self.nvars);
        let mut cache: Vec<Vec<SparsePoly>> = images
            .iter()
            .map(|p| vec![SparsePoly::constant(target_nvars, Rat::one()), p.clone()])
            .collect();
        let mut out = SparsePoly::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut t = SparsePoly::constant(target_nvars, c.clone());
            for (i, &k) in m.0.iter().enumerate() {
                let k = k as usize;
                while cache[i].len() <= k {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                if k > 0 {
                    t = &t * &cache[i][k];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Re-embeds into a ring with `nvars` variables, mapping variable `i` to
    /// `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> SparsePoly {
        assert_eq!(map.len(), self.nvars);
        let mut out = SparsePoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Renders with the given variable names (defaults to `x0, x1, ...`).
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let name = names.get(i).cloned().unwrap_or_else(|| format!("x{i}"));
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    s.push_str(&a.to_string());
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

impl<'a> Add for &'a SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &'a SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub for &'a SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &'a SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul for &'a SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &'a SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch");
        let mut out = SparsePoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&-Rat::one())
    }
}

/// Affine linear form `coeffs . x + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub coeffs: Vec<Rat>,
    pub constant: Rat,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rat>, constant: Rat) -> Self {
        LinearForm { coeffs, constant }
    }

    pub fn homogeneous(coeffs: Vec<Rat>) -> Self {
        LinearForm {
            coeffs,
            constant: Rat::zero(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn evaluate(&self, a: &[Rat]) -> Result<Rat, PolyError> {
        if a.len() != self.coeffs.len() {
            return Err(PolyError::LengthMismatch {
                expected: self.coeffs.len(),
                got: a.len(),
            });
        }
        Ok(self
            .coeffs
            .iter()
            .zip(a)
            .fold(self.constant.clone(), |acc, (c, x)| acc + c * x))
    }

    pub fn to_poly(&self) -> SparsePoly {
        let n = self.coeffs.len();
        let mut p = SparsePoly::constant(n, self.constant.clone());
        for (i, c) in self.coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn is_zero_form(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Whether the linear parts are proportional (rank of the 2 x n
    /// coefficient matrix is below 2).
    pub fn linear_part_dependent(&self, other: &LinearForm) -> bool {
        let n = self.coeffs.len().min(other.coeffs.len());
        for i in 0..n {
            for j in i + 1..n {
                let minor = &self.coeffs[i] * &other.coeffs[j] - &self.coeffs[j] * &other.coeffs[i];
                if !minor.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharSign {
    /// Coefficients of `f(t e - x)`.
    Minus,
    /// Coefficients of `f(t e + x)`.
    Plus,
}

/// Coefficients `(c_1, ..., c_d)` of `f(t e -/+ x) = t^d + c_1 t^(d-1) + ... + c_d`.
///
/// Requires `f` homogeneous with `f(e) = 1`. Computed by substituting
/// `x_i -> t e_i -/+ x_i` term by term and collecting powers of `t`.
pub fn char_expansion(
    f: &SparsePoly,
    e: &[Rat],
    sign: CharSign,
) -> Result<Vec<SparsePoly>, PolyError> {
    let n = f.nvars();
    if e.len() != n {
        return Err(PolyError::LengthMismatch {
            expected: n,
            got: e.len(),
        });
    }
    if !f.is_homogeneous() || f.is_zero() {
        return Err(PolyError::NotHomogeneous);
    }
    if !f.evaluate(e)?.is_one() {
        return Err(PolyError::NotNormalized);
    }
    let d = f.degree().unwrap_or(0);
    // ring with variables x_0..x_{n-1}, t
    let t = SparsePoly::var(n + 1, n);
    let images: Vec<SparsePoly> = (0..n)
        .map(|i| {
            let xi = SparsePoly::var(n + 1, i);
            let te = t.scale(&e[i]);
            match sign {
                CharSign::Minus => &te - &xi,
                CharSign::Plus => &te + &xi,
            }
        })
        .collect();
    let sub = f.compose(&images, n + 1);
    let mut coeffs = vec![SparsePoly::zero(n); d as usize + 1];
    for (m, c) in sub.terms() {
        let tk = m.0[n] as usize;
        let mut ex = m.0.clone();
        ex.pop();
        coeffs[d as usize - tk].add_term(Monomial(ex), c.clone());
    }
    debug_assert!(coeffs[0].is_constant() && coeffs[0].coeff(&Monomial::one(n)).is_one());
    Ok(coeffs.into_iter().skip(1).collect())
}

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// the first row, memoized on column subsets.
pub fn symbolic_det(matrix: &[Vec<SparsePoly>]) -> SparsePoly {
    let d = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == d), "square matrix");
    assert!(d > 0 && d <= 16);
    let nvars = matrix[0][0].nvars();
    let mut memo: std::collections::HashMap<u32, SparsePoly> = std::collections::HashMap::new();
    fn minor(
        m: &[Vec<SparsePoly>],
        row: usize,
        cols: u32,
        nvars: usize,
        memo: &mut std::collections::HashMap<u32, SparsePoly>,
    ) -> SparsePoly {
        if row == m.len() {
            return SparsePoly::constant(nvars, Rat::one());
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let mut acc = SparsePoly::zero(nvars);
        let mut sign_pos = true;
        for c in 0..m.len() {
            if cols & (1 << c) == 0 {
                continue;
            }
            if !m[row][c].is_zero() {
                let sub = minor(m, row + 1, cols & !(1 << c), nvars, memo);
                let prod = &m[row][c] * &sub;
                acc = if sign_pos { &acc + &prod } else { &acc - &prod };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    minor(matrix, 0, (1u32 << d) - 1, nvars, &mut memo)
}

/// Parses a rational from `"p"` or `"p/q"`, optionally signed.
pub fn parse_rat(s: &str) -> Result<Rat, PolyError> {
    let s = s.trim();
    let bad = || PolyError::BadRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(nvars: usize, terms: &[(&[u32], i64)]) -> SparsePoly {
        SparsePoly::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), rat_int(*c))))
    }

    fn elliptope2() -> SparsePoly {
        p(2, &[(&[2, 0], 1), (&[0, 2], -1)])
    }

    fn elliptope3() -> SparsePoly {
        // x0^3 - x0 (x12^2 + x13^2 + x23^2) + 2 x12 x13 x23
        p(
            4,
            &[
                (&[3, 0, 0, 0], 1),
                (&[1, 2, 0, 0], -1),
                (&[1, 0, 2, 0], -1),
                (&[1, 0, 0, 2], -1),
                (&[0, 1, 1, 1], 2),
            ],
        )
    }

    #[test]
    fn grevlex_order() {
        // x0 > x1 in grevlex, x1^2 > x0 x1? no: x0 x1 > x1^2 (last variable smaller is larger)
        assert_eq!(grevlex_cmp(&[1, 0], &[0, 1]), Ordering::Greater);
        assert_eq!(grevlex_cmp(&[1, 1], &[0, 2]), Ordering::Greater);
        assert_eq!(grevlex_cmp(&[0, 0, 2], &[1, 0, 0]), Ordering::Greater);
        assert_eq!(grevlex_cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
    }

    #[test]
    fn cancellation_and_difference_of_squares() {
        let f = elliptope2();
        let sq = p(2, &[(&[0, 2], 1)]);
        assert_eq!(&f + &sq, p(2, &[(&[2, 0], 1)]));
        let a = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let b = p(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(&a * &b, f);
        assert!((&f * &SparsePoly::zero(2)).is_zero());
    }

    #[test]
    fn arith_rejects_mismatch() {
        let a = SparsePoly::var(2, 0);
        let b = SparsePoly::var(3, 0);
        assert!(matches!(
            arith(&a, &b, ArithOp::Add),
            Err(PolyError::NvarsMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn evaluation() {
        let f = elliptope2();
        assert_eq!(f.evaluate(&[rat_int(1), rat_int(0)]).unwrap(), rat_int(1));
        assert_eq!(f.evaluate(&[rat(1, 2), rat(1, 2)]).unwrap(), rat_int(0));
        let third = rat(1, 3);
        let g = elliptope3();
        assert_eq!(g.evaluate(&vec![third; 4]).unwrap(), rat_int(0));
        assert!(matches!(
            f.evaluate(&[rat_int(1)]),
            Err(PolyError::LengthMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn gradients() {
        let f = elliptope2();
        let g = f.gradient();
        assert_eq!(g[0], p(2, &[(&[1, 0], 2)]));
        assert_eq!(g[1], p(2, &[(&[0, 1], -2)]));
        let c = SparsePoly::constant(3, rat_int(7));
        assert!(c.gradient().iter().all(SparsePoly::is_zero));
    }

    #[test]
    fn euler_identity_on_elliptope3() {
        let f = elliptope3();
        let mut acc = SparsePoly::zero(4);
        for (i, df) in f.gradient().iter().enumerate() {
            acc = &acc + &(&SparsePoly::var(4, i) * df);
        }
        assert_eq!(acc, f.scale(&rat_int(3)));
    }

    #[test]
    fn directional_derivatives() {
        let f = elliptope2();
        let e = [rat_int(1), rat_int(0)];
        assert_eq!(f.directional_derivative(&e, 1).unwrap(), p(2, &[(&[1, 0], 2)]));
        assert_eq!(f.directional_derivative(&e, 0).unwrap(), f);
        assert!(f.directional_derivative(&e, 3).unwrap().is_zero());
    }

    #[test]
    fn char_expansion_elliptope2() {
        let f = elliptope2();
        let e = [rat_int(1), rat_int(0)];
        let plus = char_expansion(&f, &e, CharSign::Plus).unwrap();
        assert_eq!(plus, vec![p(2, &[(&[1, 0], 2)]), f.clone()]);
        let minus = char_expansion(&f, &e, CharSign::Minus).unwrap();
        assert_eq!(minus, vec![p(2, &[(&[1, 0], -2)]), f.clone()]);
    }

    #[test]
    fn char_expansion_elliptope3() {
        let f = elliptope3();
        let e = [rat_int(1), rat_int(0), rat_int(0), rat_int(0)];
        let plus = char_expansion(&f, &e, CharSign::Plus).unwrap();
        assert_eq!(plus[0], p(4, &[(&[1, 0, 0, 0], 3)]));
        assert_eq!(
            plus[1],
            p(
                4,
                &[
                    (&[2, 0, 0, 0], 3),
                    (&[0, 2, 0, 0], -1),
                    (&[0, 0, 2, 0], -1),
                    (&[0, 0, 0, 2], -1)
                ]
            )
        );
        assert_eq!(plus[2], f);
    }

    #[test]
    fn char_expansion_rejects_bad_input() {
        let f = p(2, &[(&[2, 0], 3), (&[0, 2], -3)]);
        let e = [rat_int(1), rat_int(0)];
        assert_eq!(char_expansion(&f, &e, CharSign::Plus), Err(PolyError::NotNormalized));
        let g = p(2, &[(&[2, 0], 1), (&[1, 0], 1)]);
        assert_eq!(char_expansion(&g, &e, CharSign::Plus), Err(PolyError::NotHomogeneous));
    }

    #[test]
    fn determinant_of_elliptope_matrix() {
        let x0 = SparsePoly::var(4, 0);
        let a = SparsePoly::var(4, 1);
        let b = SparsePoly::var(4, 2);
        let c = SparsePoly::var(4, 3);
        let m = vec![
            vec![x0.clone(), a.clone(), b.clone()],
            vec![a.clone(), x0.clone(), c.clone()],
            vec![b.clone(), c.clone(), x0.clone()],
        ];
        assert_eq!(symbolic_det(&m), elliptope3());
    }

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_rat("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat("+4").unwrap(), rat_int(4));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn linear_form_dependence() {
        let s = LinearForm::homogeneous(vec![rat_int(2), rat_int(0)]);
        let l = LinearForm::new(vec![rat_int(4), rat_int(0)], rat_int(7));
        assert!(s.linear_part_dependent(&l));
        let l2 = LinearForm::homogeneous(vec![rat_int(0), rat_int(1)]);
        assert!(!s.linear_part_dependent(&l2));
        assert_eq!(l.to_poly().evaluate(&[rat_int(1), rat_int(5)]).unwrap(), rat_int(11));
        assert_eq!(l.evaluate(&[rat_int(1), rat_int(5)]).unwrap(), rat_int(11));
    }
}
