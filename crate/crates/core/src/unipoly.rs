//! Dense univariate polynomials over the rationals, with integer-coefficient
//! helpers (primitive parts, pseudo-remainders) used by Sturm sequences and
//! gcd computations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rat;

/// Coefficients lowest degree first; trailing zeros are trimmed so the
/// leading coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::new(vec![Rat::zero(), Rat::one()])
    }

    /// `a t + b`.
    pub fn linear(a: Rat, b: Rat) -> Self {
        Self::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rat::one() / self.lc()))
    }

    pub fn pow(&self, k: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division over the rationals. Panics on a zero divisor.
    pub fn div_rem(&self, b: &UniPoly) -> (UniPoly, UniPoly) {
        let db = b.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return (UniPoly::zero(), self.clone());
        }
        let inv = Rat::one() / b.lc();
        let mut q = vec![Rat::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = &r[k + db] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
            q[k] = c;
        }
        r.truncate(db);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn rem(&self, b: &UniPoly) -> UniPoly {
        self.div_rem(b).1
    }

    /// Exact quotient; panics in debug builds if the division leaves a remainder.
    pub fn exact_div(&self, b: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(b);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let a = self.primitive_int();
        let b = other.primitive_int();
        UniPoly::from_bigints(&int_gcd(a, b))
    }

    /// Primitive integer polynomial with positive leading coefficient,
    /// proportional to `self`.
    pub fn primitive_int(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
            .collect();
        let mut p = make_primitive(ints);
        if p.last().is_some_and(Signed::is_negative) {
            for c in &mut p {
                *c = -&*c;
            }
        }
        p
    }

    /// `self` rescaled to primitive integer coefficients with positive
    /// leading coefficient.
    pub fn primitive(&self) -> UniPoly {
        UniPoly::from_bigints(&self.primitive_int())
    }

    /// `self(other(t))`.
    pub fn compose(&self, other: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &UniPoly::constant(c.clone());
        }
        acc
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            first = false;
            let a = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("t"))
    }
}

impl<'a> Add for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &'a UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &'a UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &'a UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

// ---- integer polynomial helpers (coefficients lowest degree first) ----

pub(crate) fn trim_int(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Divides out the (positive) content; sign is preserved.
pub(crate) fn make_primitive(p: Vec<BigInt>) -> Vec<BigInt> {
    let p = trim_int(p);
    let c = content(&p);
    if c.is_zero() || c.is_one() {
        return p;
    }
    p.into_iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder `|lc(b)|^(deg a - deg b + 1) a mod b`; the multiplier is
/// positive so signs are meaningful (as needed by Sturm sequences).
pub(crate) fn prem_pos(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= db {
        return r;
    }
    let lb = b[db].clone();
    let lb_abs = lb.abs();
    let sgn = if lb.is_negative() { -BigInt::one() } else { BigInt::one() };
    while r.len() > db {
        let k = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        // r <- |lb| r - sgn(lb) lr t^k b
        for c in r.iter_mut() {
            *c *= &lb_abs;
        }
        let f = &lr * &sgn;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &f * bj;
        }
        debug_assert!(r.last().unwrap().is_zero());
        r.pop();
        r = trim_int(r);
        if r.len() > db {
            let c = content(&r);
            if !c.is_zero() && !c.is_one() {
                for x in r.iter_mut() {
                    *x /= &c;
                }
            }
        }
    }
    r
}

pub(crate) fn int_gcd(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    let mut a = make_primitive(a);
    let mut b = make_primitive(b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = make_primitive(prem_pos(&a, &b));
        a = b;
        b = r;
    }
    if a.last().is_some_and(Signed::is_negative) {
        for c in &mut a {
            *c = -&*c;
        }
    }
    a
}

/// Sign of an integer polynomial at the rational `num/den` (`den > 0`),
/// computed without fractions.
pub(crate) fn int_sign_at(p: &[BigInt], num: &BigInt, den: &BigInt) -> i32 {
    if p.is_empty() {
        return 0;
    }
    // sum c_i num^i den^(n-i), Horner in homogeneous form
    let mut acc = p.last().unwrap().clone();
    let mut dpow = BigInt::one();
    for c in p.iter().rev().skip(1) {
        dpow *= den;
        acc = acc * num + c * &dpow;
    }
    sign_of(&acc)
}

pub(crate) fn sign_of(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub(crate) fn rat_sign(x: &Rat) -> i32 {
    sign_of(x.numer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn division_and_gcd() {
        let a = UniPoly::from_ints(&[-1, 0, 1]); // t^2 - 1
        let b = UniPoly::from_ints(&[-1, 1]); // t - 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, UniPoly::from_ints(&[1, 1]));
        assert!(r.is_zero());
        let c = UniPoly::from_ints(&[1, -2, 1]);
        assert_eq!(a.gcd(&c), b);
        assert_eq!(UniPoly::from_ints(&[2, 0, 2]).gcd(&UniPoly::from_ints(&[1])), UniPoly::one());
    }

    #[test]
    fn sign_at_rational() {
        let p = UniPoly::from_ints(&[-1, 0, 4]).primitive_int();
        assert_eq!(int_sign_at(&p, &BigInt::from(1), &BigInt::from(2)), 0);
        assert_eq!(int_sign_at(&p, &BigInt::from(1), &BigInt::from(3)), -1);
        assert_eq!(int_sign_at(&p, &BigInt::from(-1), &BigInt::from(1)), 1);
    }

    #[test]
    fn primitive_normalizes_sign() {
        let p = UniPoly::new(vec![rat(-1, 4), rat(0, 1), rat(-1, 1)]);
        assert_eq!(p.primitive_int(), vec![BigInt::from(1), BigInt::from(0), BigInt::from(4)]);
    }

    #[test]
    fn composition() {
        let p = UniPoly::from_ints(&[0, 0, 1]);
        let q = UniPoly::from_ints(&[1, 1]);
        assert_eq!(p.compose(&q), UniPoly::from_ints(&[1, 2, 1]));
    }
}
