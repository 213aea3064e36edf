//! Real roots of univariate polynomials: Sturm sequences, isolation by
//! bisection, refinement, and exact sign evaluation at isolated roots.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::RootError;
use crate::poly::Rat;
use crate::unipoly::{int_gcd, int_sign_at, make_primitive, prem_pos, rat_sign, UniPoly};

/// An interval endpoint for root counting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    PosInf,
    At(Rat),
}

/// `p / gcd(p, p')` as a primitive integer polynomial with positive leading
/// coefficient.
pub fn square_free(p: &UniPoly) -> Result<UniPoly, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    Ok(UniPoly::from_bigints(&square_free_int(&p.primitive_int())))
}

pub(crate) fn square_free_int(p: &[BigInt]) -> Vec<BigInt> {
    if p.len() <= 2 {
        return make_primitive(p.to_vec());
    }
    let dp: Vec<BigInt> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let g = int_gcd(p.to_vec(), dp);
    if g.len() <= 1 {
        return p.to_vec();
    }
    let q = UniPoly::from_bigints(p).exact_div(&UniPoly::from_bigints(&g));
    q.primitive_int()
}

/// Sturm sequence of a square-free integer polynomial, each member primitive
/// and positively rescaled.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<Vec<BigInt>>,
}

impl SturmSequence {
    pub fn new(p: &[BigInt]) -> Self {
        let mut seq = vec![p.to_vec()];
        if p.len() > 1 {
            let dp = make_primitive(
                p.iter()
                    .enumerate()
                    .skip(1)
                    .map(|(i, c)| c * BigInt::from(i))
                    .collect(),
            );
            seq.push(dp);
            loop {
                let n = seq.len();
                let r = prem_pos(&seq[n - 2], &seq[n - 1]);
                if r.is_empty() {
                    break;
                }
                let r = make_primitive(r.into_iter().map(|c| -c).collect());
                seq.push(r);
            }
        }
        SturmSequence { seq }
    }

    fn variations<I: Iterator<Item = i32>>(signs: I) -> usize {
        let mut last = 0;
        let mut v = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, b: &Bound) -> usize {
        match b {
            Bound::PosInf => {
                Self::variations(self.seq.iter().map(|p| crate::unipoly::sign_of(p.last().unwrap())))
            }
            Bound::NegInf => Self::variations(self.seq.iter().map(|p| {
                let s = crate::unipoly::sign_of(p.last().unwrap());
                if (p.len() - 1) % 2 == 1 {
                    -s
                } else {
                    s
                }
            })),
            Bound::At(x) => Self::variations(
                self.seq
                    .iter()
                    .map(|p| int_sign_at(p, x.numer(), x.denom())),
            ),
        }
    }

    /// Number of distinct roots in `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn count_real_roots(p: &UniPoly, lo: &Bound, hi: &Bound) -> Result<usize, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if let (Bound::At(a), Bound::At(b)) = (lo, hi) {
        if a >= b {
            return Err(RootError::EmptyInterval);
        }
    }
    let sf = square_free_int(&p.primitive_int());
    Ok(SturmSequence::new(&sf).count(lo, hi))
}

/// Cauchy bound `1 + max |c_i / c_d|`.
pub fn cauchy_bound(p: &UniPoly) -> Rat {
    let lc = p.lc().abs();
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rat::zero);
    m + Rat::one()
}

/// An isolating interval for one real root of a square-free polynomial.
///
/// The root lies in `(lo, hi]`, or equals `lo` when `lo == hi`. For
/// non-degenerate boxes `poly(hi) != 0`.
#[derive(Clone, Debug)]
pub struct RootBox {
    poly: Arc<Vec<BigInt>>,
    lo: Rat,
    hi: Rat,
}

impl PartialEq for RootBox {
    fn eq(&self, other: &Self) -> bool {
        self.lo == other.lo && self.hi == other.hi && self.poly == other.poly
    }
}

impl RootBox {
    pub fn exact(poly: &UniPoly, r: Rat) -> Self {
        RootBox {
            poly: Arc::new(poly.primitive_int()),
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn poly(&self) -> UniPoly {
        UniPoly::from_bigints(&self.poly)
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2))
    }

    /// Whether the exact root is `r`, or `r` lies inside the half-open box.
    pub fn contains(&self, r: &Rat) -> bool {
        if self.is_exact() {
            return *r == self.lo;
        }
        *r > self.lo && *r <= self.hi
    }

    fn sign_at(&self, x: &Rat) -> i32 {
        int_sign_at(&self.poly, x.numer(), x.denom())
    }

    /// One bisection step.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let mid = self.midpoint();
        let sm = self.sign_at(&mid);
        if sm == 0 {
            self.lo = mid.clone();
            self.hi = mid;
            return;
        }
        let sh = self.sign_at(&self.hi);
        if sm != sh {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Refines in place until `width <= w`.
    pub fn refine_to(&mut self, w: &Rat) {
        while !self.is_exact() && self.width() > *w {
            self.bisect();
        }
    }

    /// Same root, interval width at most `width`.
    pub fn refine(&self, width: &Rat) -> RootBox {
        let mut b = self.clone();
        b.refine_to(width);
        b
    }

    /// Interval `[lo, hi]` enclosing the root (closed).
    pub fn interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    /// Decimal approximation for display.
    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.midpoint())
    }
}

/// Isolates the distinct real roots of `p`; boxes are sorted ascending and
/// pairwise disjoint.
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<RootBox>, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let sf = square_free_int(&p.primitive_int());
    Ok(isolate_square_free(&sf))
}

pub(crate) fn isolate_square_free(sf: &[BigInt]) -> Vec<RootBox> {
    if sf.len() <= 1 {
        return vec![];
    }
    let poly = Arc::new(sf.to_vec());
    let sturm = SturmSequence::new(sf);
    let b = cauchy_bound(&UniPoly::from_bigints(sf));
    let lo = -b.clone();
    let hi = b;
    let total = sturm.count(&Bound::At(lo.clone()), &Bound::At(hi.clone()));
    let mut out = Vec::with_capacity(total);
    // explicit stack of (lo, hi, count), processed left to right
    let mut stack = vec![(lo, hi, total)];
    let two = Rat::from_integer(BigInt::from(2));
    while let Some((lo, hi, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 {
            let s = int_sign_at(sf, hi.numer(), hi.denom());
            let (lo, hi) = if s == 0 { (hi.clone(), hi) } else { (lo, hi) };
            out.push(RootBox {
                poly: poly.clone(),
                lo,
                hi,
            });
            continue;
        }
        let mid = (&lo + &hi) / &two;
        let left = sturm.count(&Bound::At(lo.clone()), &Bound::At(mid.clone()));
        stack.push((mid.clone(), hi, n - left));
        stack.push((lo, mid, left));
    }
    out
}

/// Closed rational interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2))
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn add_scalar(&self, c: &Rat) -> Interval {
        Interval::new(&self.lo + c, &self.hi + c)
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        if self.is_point() && o.is_point() {
            return Interval::point(&self.lo * &o.lo);
        }
        let p = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = p.iter().min().unwrap().clone();
        let hi = p.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    /// Quotient; `None` when the divisor contains zero.
    pub fn div(&self, o: &Interval) -> Option<Interval> {
        if o.contains_zero() {
            return None;
        }
        let inv = Interval::new(Rat::one() / &o.hi, Rat::one() / &o.lo);
        Some(self.mul(&inv))
    }

    /// Whether the two intervals are disjoint; `Some(Less)` means `self` lies
    /// strictly below `other`.
    pub fn separation(&self, other: &Interval) -> Option<std::cmp::Ordering> {
        if self.hi < other.lo {
            Some(std::cmp::Ordering::Less)
        } else if other.hi < self.lo {
            Some(std::cmp::Ordering::Greater)
        } else {
            None
        }
    }
}

/// Interval Horner evaluation.
pub fn eval_interval(p: &UniPoly, x: &Interval) -> Interval {
    if x.is_point() {
        return Interval::point(p.eval(&x.lo));
    }
    let mut acc = Interval::point(Rat::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add_scalar(c);
    }
    acc
}

/// Exact sign of `p(alpha)`, where `alpha` is the root isolated by `b`.
pub fn sign_at_root(p: &UniPoly, b: &RootBox) -> i32 {
    if p.is_zero() {
        return 0;
    }
    if b.is_exact() {
        return rat_sign(&p.eval(&b.lo));
    }
    let g = int_gcd(b.poly.to_vec(), p.primitive_int());
    if g.len() > 1 {
        let sturm = SturmSequence::new(&g);
        if sturm.count(&Bound::At(b.lo.clone()), &Bound::At(b.hi.clone())) > 0 {
            return 0;
        }
    }
    // p(alpha) != 0: refine until the interval image excludes zero
    let mut bx = b.clone();
    loop {
        if bx.is_exact() {
            return rat_sign(&p.eval(&bx.lo));
        }
        let img = eval_interval(p, &bx.interval());
        if img.lo.is_positive() {
            return 1;
        }
        if img.hi.is_negative() {
            return -1;
        }
        bx.bisect();
    }
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    // scale to keep precision for huge numerators/denominators
    let n = x.numer();
    let d = x.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift = (nb - db - 60).max(-1000);
    let shifted = if shift > 0 {
        (n >> (shift as usize)).to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    } else {
        let num = n << ((-shift) as usize);
        let q = num / d;
        q.to_f64().unwrap_or(f64::NAN)
    };
    shifted * 2f64.powi(shift as i32)
}

/// Decimal rendering of a rational with `digits` significant digits
/// (round half away from zero).
pub fn rat_to_decimal(x: &Rat, digits: usize) -> String {
    if x.is_zero() {
        return format!("0.{}", "0".repeat(digits.saturating_sub(1)));
    }
    let neg = x.is_negative();
    let a = x.abs();
    // exponent e with 10^e <= a < 10^(e+1)
    let ten = Rat::from_integer(BigInt::from(10));
    let mut e: i64 = 0;
    let mut scaled = a.clone();
    while scaled >= ten {
        scaled /= &ten;
        e += 1;
    }
    while scaled < Rat::one() {
        scaled *= &ten;
        e -= 1;
    }
    // integer with `digits` digits
    let shift = digits as i64 - 1 - e;
    let factor = BigInt::from(10).pow(shift.unsigned_abs() as u32);
    let v = if shift >= 0 {
        &a * Rat::from_integer(factor)
    } else {
        &a / Rat::from_integer(factor)
    };
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let mut n = (v + half).floor().to_integer();
    let mut shift = shift;
    if n.to_string().len() > digits {
        // rounding carried to a new digit
        n /= 10;
        shift -= 1;
    }
    let s = n.to_string();
    let body = if shift <= 0 {
        format!("{s}{}", "0".repeat((-shift) as usize))
    } else if (shift as usize) < s.len() {
        let (i, f) = s.split_at(s.len() - shift as usize);
        format!("{i}.{f}")
    } else {
        format!("0.{}{s}", "0".repeat(shift as usize - s.len()))
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn square_free_parts() {
        assert_eq!(square_free(&up(&[1, -2, 1])).unwrap(), up(&[-1, 1]));
        assert_eq!(square_free(&up(&[-1, 0, 1])).unwrap(), up(&[-1, 0, 1]));
        // t^2 (t-1)^3 = t^5 - 3t^4 + 3t^3 - t^2
        assert_eq!(square_free(&up(&[0, 0, -1, 3, -3, 1])).unwrap(), up(&[0, -1, 1]));
        assert_eq!(square_free(&UniPoly::zero()), Err(RootError::ZeroPolynomial));
    }

    #[test]
    fn counting() {
        let all = (Bound::NegInf, Bound::PosInf);
        assert_eq!(count_real_roots(&up(&[-1, 0, 1]), &all.0, &all.1).unwrap(), 2);
        assert_eq!(count_real_roots(&up(&[1, 0, 1]), &all.0, &all.1).unwrap(), 0);
        assert_eq!(count_real_roots(&up(&[0, -1, 1]), &all.0, &all.1).unwrap(), 2);
        // half-open (0, 1] of t^2 - t: only the root 1
        let c = count_real_roots(&up(&[0, -1, 1]), &Bound::At(rat_int(0)), &Bound::At(rat_int(1)));
        assert_eq!(c.unwrap(), 1);
        assert_eq!(
            count_real_roots(&up(&[0, 1]), &Bound::At(rat_int(1)), &Bound::At(rat_int(0))),
            Err(RootError::EmptyInterval)
        );
    }

    #[test]
    fn isolation() {
        let boxes = isolate_real_roots(&up(&[-1, 0, 4])).unwrap();
        assert_eq!(boxes.len(), 2);
        assert!(boxes[0].contains(&rat(-1, 2)));
        assert!(boxes[1].contains(&rat(1, 2)));
        assert!(boxes[0].hi() <= boxes[1].lo());
        let z = isolate_real_roots(&up(&[0, 0, 0, 1])).unwrap();
        assert_eq!(z.len(), 1);
        assert!(z[0].contains(&rat_int(0)));
        assert!(isolate_real_roots(&up(&[1, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn refinement() {
        let boxes = isolate_real_roots(&up(&[-1, 0, 4])).unwrap();
        let w = rat(1, 1000);
        let b = boxes[1].refine(&w);
        assert!(b.width() <= w);
        assert!(b.contains(&rat(1, 2)));
        let b2 = b.refine(&rat(1, 2000));
        assert!(b2.contains(&rat(1, 2)));

        let s = isolate_real_roots(&up(&[-2, 0, 1])).unwrap();
        let r = s[1].refine(&rat(1, 1_000_000));
        assert!(r.lo() <= &rat(1414214, 1_000_000) && r.hi() >= &rat(1414213, 1_000_000));
        assert!(r.hi() - r.lo() <= rat(1, 1_000_000));
    }

    #[test]
    fn signs_at_roots() {
        let boxes = isolate_real_roots(&up(&[-1, 0, 4])).unwrap();
        let half = &boxes[1];
        assert_eq!(sign_at_root(&up(&[0, 1]), half), 1);
        assert_eq!(sign_at_root(&up(&[-1, 2]), half), 0);
        let sqrt2 = &isolate_real_roots(&up(&[-2, 0, 1])).unwrap()[1];
        assert_eq!(sign_at_root(&up(&[-3, 0, 1]), sqrt2), -1);
        assert_eq!(sign_at_root(&up(&[-2, 0, 1]), sqrt2), 0);
        // tiny separation: t - 1414213/1000000 at sqrt 2 is positive
        let p = UniPoly::new(vec![-rat(1414213, 1000000), rat_int(1)]);
        assert_eq!(sign_at_root(&p, sqrt2), 1);
    }

    #[test]
    fn decimals() {
        assert_eq!(rat_to_decimal(&rat(11, 2), 10), "5.500000000");
        assert_eq!(rat_to_decimal(&rat(-1, 3), 4), "-0.3333");
        assert_eq!(rat_to_decimal(&rat(2, 3), 3), "0.667");
        assert_eq!(rat_to_decimal(&rat(9999, 1000), 3), "10.0");
        assert_eq!(rat_to_decimal(&rat(1, 8), 2), "0.13");
        assert!((rat_to_f64(&rat(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
    }
}
