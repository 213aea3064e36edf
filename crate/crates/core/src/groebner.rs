//! Buchberger's algorithm over the rationals.
//!
//! Polynomials are handled internally as primitive integer polynomials
//! (fraction-free reduction with content removal), terms sorted in
//! decreasing monomial order. Pair management follows Gebauer–Möller and
//! pairs are selected by sugar degree, ties broken by the smaller lcm.

use std::cmp::Ordering;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::SolveError;
use crate::poly::{Monomial, Rat, SparsePoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic on all variables.
    Degrevlex,
    /// Block order eliminating the variables with index `>= split`: the
    /// auxiliary block is compared first (degrevlex), then the primary block.
    BlockElim { split: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u16], b: &[u16]) -> Ordering {
        match *self {
            MonomialOrder::Degrevlex => grevlex(a, b),
            MonomialOrder::BlockElim { split } => {
                grevlex(&a[split..], &b[split..]).then_with(|| grevlex(&a[..split], &b[..split]))
            }
        }
    }
}

fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&x| x as u32).sum();
    let db: u32 = b.iter().map(|&x| x as u32).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

pub(crate) type Exp = Vec<u16>;

fn exp_mul(a: &[u16], b: &[u16]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn exp_div(a: &[u16], b: &[u16]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn exp_lcm(a: &[u16], b: &[u16]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn exp_divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn exp_coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn exp_deg(a: &[u16]) -> u32 {
    a.iter().map(|&x| x as u32).sum()
}

fn divmask(a: &[u16]) -> u64 {
    let mut m = 0u64;
    for (i, &x) in a.iter().enumerate() {
        if x > 0 {
            m |= 1 << (i % 64);
        }
    }
    m
}

/// Integer polynomial, terms in strictly decreasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IPoly {
    pub terms: Vec<(Exp, BigInt)>,
}

impl IPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Exp {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub fn from_sparse(p: &SparsePoly, order: MonomialOrder) -> IPoly {
        let (mut q, _) = Self::from_sparse_scaled(p, order);
        q.make_primitive();
        q
    }

    /// Integer polynomial `q` and rational `c` with `p == c * q`.
    pub fn from_sparse_scaled(p: &SparsePoly, order: MonomialOrder) -> (IPoly, Rat) {
        let den = p
            .terms()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut terms: Vec<(Exp, BigInt)> = p
            .terms()
            .map(|(m, c)| {
                (
                    m.0.iter().map(|&e| e as u16).collect(),
                    (c * Rat::from_integer(den.clone())).to_integer(),
                )
            })
            .collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        (IPoly { terms }, Rat::new(BigInt::one(), den))
    }

    pub fn to_sparse(&self, nvars: usize) -> SparsePoly {
        SparsePoly::from_terms(
            nvars,
            self.terms.iter().map(|(e, c)| {
                (
                    e.iter().map(|&x| x as u32).collect(),
                    Rat::from_integer(c.clone()),
                )
            }),
        )
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = self.content();
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c /= &g;
            }
        }
    }

    pub fn sugar_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| exp_deg(e)).max().unwrap_or(0)
    }

    /// `a * self - b * mono * g`.
    fn combine(&self, a: &BigInt, b: &BigInt, mono: &[u16], g: &IPoly, order: MonomialOrder) -> IPoly {
        IPoly {
            terms: combine_terms(&self.terms, a, b, mono, g, order),
        }
    }
}

/// `a * terms - b * mono * g` as a sorted term list.
fn combine_terms(
    terms: &[(Exp, BigInt)],
    a: &BigInt,
    b: &BigInt,
    mono: &[u16],
    g: &IPoly,
    order: MonomialOrder,
) -> Vec<(Exp, BigInt)> {
    let mut out = Vec::with_capacity(terms.len() + g.terms.len());
    let mut i = 0;
    let mut j = 0;
    let a_one = a.is_one();
    let gs: Vec<Exp> = g.terms.iter().map(|(e, _)| exp_mul(e, mono)).collect();
    while i < terms.len() || j < gs.len() {
        let ord = if i == terms.len() {
            Ordering::Less
        } else if j == gs.len() {
            Ordering::Greater
        } else {
            order.cmp(&terms[i].0, &gs[j])
        };
        match ord {
            Ordering::Greater => {
                let c = if a_one { terms[i].1.clone() } else { a * &terms[i].1 };
                out.push((terms[i].0.clone(), c));
                i += 1;
            }
            Ordering::Less => {
                out.push((gs[j].clone(), -(b * &g.terms[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = a * &terms[i].1 - b * &g.terms[j].1;
                if !c.is_zero() {
                    out.push((terms[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Reducer set with leading-monomial divisibility masks.
pub(crate) struct Reducers<'a> {
    polys: Vec<&'a IPoly>,
    masks: Vec<u64>,
}

impl<'a> Reducers<'a> {
    pub fn new(polys: Vec<&'a IPoly>) -> Self {
        let masks = polys.iter().map(|p| divmask(p.lm())).collect();
        Reducers { polys, masks }
    }

    fn find(&self, m: &[u16]) -> Option<&'a IPoly> {
        let mm = divmask(m);
        for (p, &mask) in self.polys.iter().zip(&self.masks) {
            if mask & !mm == 0 && exp_divides(p.lm(), m) {
                return Some(p);
            }
        }
        None
    }
}

/// Fully reduces `p` modulo the reducers; result is primitive (or zero).
pub(crate) fn reduce_full(
    p: &IPoly,
    reducers: &Reducers<'_>,
    order: MonomialOrder,
    deadline: Option<Instant>,
) -> Result<IPoly, SolveError> {
    let (_, mut r) = reduce_core(p, reducers, order, deadline, true)?;
    r.make_primitive();
    Ok(r)
}

/// Returns `(scale, r)` with `r == scale * p` modulo the reducers, `scale` a
/// positive integer.
pub(crate) fn reduce_with_scale(
    p: &IPoly,
    reducers: &Reducers<'_>,
    order: MonomialOrder,
    deadline: Option<Instant>,
) -> Result<(Rat, IPoly), SolveError> {
    reduce_core(p, reducers, order, deadline, false)
}

/// Returns `(scale, r)` with `r == scale * p` modulo the reducers. When
/// `strip_content` is set, contents are divided out along the way and
/// `scale` is not maintained (returned as zero).
fn reduce_core(
    p: &IPoly,
    reducers: &Reducers<'_>,
    order: MonomialOrder,
    deadline: Option<Instant>,
    strip_content: bool,
) -> Result<(Rat, IPoly), SolveError> {
    let mut scale = Rat::one();
    let mut rest: Vec<(Exp, BigInt)> = p.terms.clone();
    let mut head = 0usize;
    let mut done: Vec<(Exp, BigInt)> = Vec::new();
    let mut steps = 0usize;
    while head < rest.len() {
        let g = match reducers.find(&rest[head].0) {
            Some(g) => g,
            None => {
                done.push(std::mem::take(&mut rest[head]));
                head += 1;
                continue;
            }
        };
        let (m, c) = &rest[head];
        let mono = exp_div(m, g.lm());
        let gc = c.gcd(g.lc());
        let a = (g.lc() / &gc).abs();
        let b = c / &gc;
        let b = if g.lc().is_negative() { -b } else { b };
        rest = combine_terms(&rest[head..], &a, &b, &mono, g, order);
        head = 0;
        if !a.is_one() {
            for (_, dc) in &mut done {
                *dc *= &a;
            }
            if !strip_content {
                scale *= Rat::from_integer(a.clone());
            }
        }
        steps += 1;
        if steps.is_multiple_of(16) {
            if strip_content {
                let mut g = BigInt::zero();
                for (_, x) in done.iter().chain(rest.iter()) {
                    g = g.gcd(x);
                    if g.is_one() {
                        break;
                    }
                }
                if !g.is_one() && !g.is_zero() {
                    for (_, x) in done.iter_mut().chain(rest.iter_mut()) {
                        *x /= &g;
                    }
                }
            }
            if let Some(dl) = deadline {
                if Instant::now() > dl {
                    return Err(SolveError::BudgetExceeded);
                }
            }
        }
    }
    Ok((scale, IPoly { terms: done }))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exp,
    sugar: u32,
}

struct Basis {
    order: MonomialOrder,
    polys: Vec<IPoly>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Basis {
    fn pair_sugar(&self, i: usize, j: usize, lcm: &[u16]) -> u32 {
        let l = exp_deg(lcm);
        let si = self.sugar[i] + l - exp_deg(self.polys[i].lm());
        let sj = self.sugar[j] + l - exp_deg(self.polys[j].lm());
        si.max(sj)
    }

    /// Gebauer–Möller update with the new polynomial `h`.
    fn insert(&mut self, h: IPoly, sugar: u32) {
        let hi = self.polys.len();
        let hlm = h.lm().clone();
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(true);

        // candidate new pairs
        let mut cands: Vec<(usize, Exp, bool)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| {
                let glm = self.polys[g].lm();
                (g, exp_lcm(glm, &hlm), exp_coprime(glm, &hlm))
            })
            .collect();

        // chain criterion among new pairs: drop (h,g) if some other lcm
        // properly divides it; keep one representative of equal lcms,
        // preferring a coprime one
        cands.sort_by(|a, b| self.order.cmp(&a.1, &b.1));
        let mut kept: Vec<(usize, Exp, bool)> = Vec::new();
        for c in cands {
            let mut dominated = false;
            for k in kept.iter_mut() {
                if exp_divides(&k.1, &c.1) {
                    if k.1 == c.1 && c.2 {
                        k.2 = true;
                    }
                    dominated = true;
                    break;
                }
            }
            if !dominated {
                kept.push(c);
            }
        }

        // old pairs: drop (i,j) when lm(h) | lcm(i,j) and both new lcms differ
        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !exp_divides(&hlm, &p.lcm) {
                return true;
            }
            let li = exp_lcm(polys[p.i].lm(), &hlm);
            let lj = exp_lcm(polys[p.j].lm(), &hlm);
            li == p.lcm || lj == p.lcm
        });

        for (g, lcm, coprime) in kept {
            if coprime {
                continue;
            }
            let sugar = self.pair_sugar(g, hi, &lcm);
            self.pairs.push(Pair { i: g, j: hi, lcm, sugar });
        }

        for g in 0..hi {
            if self.active[g] && exp_divides(&hlm, self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let a = &self.pairs[k];
            let b = &self.pairs[best];
            let c = a
                .sugar
                .cmp(&b.sugar)
                .then_with(|| order.cmp(&a.lcm, &b.lcm));
            if c == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> IPoly {
        let f = &self.polys[p.i];
        let g = &self.polys[p.j];
        let mf = exp_div(&p.lcm, f.lm());
        let mg = exp_div(&p.lcm, g.lm());
        let gc = f.lc().gcd(g.lc());
        let a = g.lc() / &gc;
        let b = f.lc() / &gc;
        // a * mf * f - b * mg * g
        let ff = IPoly {
            terms: f.terms.iter().map(|(e, c)| (exp_mul(e, &mf), c.clone())).collect(),
        };
        ff.combine(&a, &b, &mg, g, self.order)
    }

    fn active_polys(&self) -> Vec<&IPoly> {
        (0..self.polys.len())
            .filter(|&i| self.active[i])
            .map(|i| &self.polys[i])
            .collect()
    }
}

/// Reduced Gröbner basis (primitive integer representatives, positive
/// leading coefficients, sorted by increasing leading monomial).
pub(crate) fn groebner_int(
    gens: &[IPoly],
    order: MonomialOrder,
    deadline: Option<Instant>,
) -> Result<Vec<IPoly>, SolveError> {
    let mut basis = Basis {
        order,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let mut inputs: Vec<IPoly> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for f in inputs {
        let h = {
            let red = Reducers::new(basis.active_polys());
            reduce_full(&f, &red, order, deadline)?
        };
        if h.is_zero() {
            continue;
        }
        if exp_deg(h.lm()) == 0 {
            return Ok(vec![h]);
        }
        let s = h.sugar_degree();
        basis.insert(h, s);
    }
    while let Some(pair) = basis.select() {
        if let Some(dl) = deadline {
            if Instant::now() > dl {
                return Err(SolveError::BudgetExceeded);
            }
        }
        let s = basis.spoly(&pair);
        if s.is_zero() {
            continue;
        }
        let h = {
            let red = Reducers::new(basis.active_polys());
            reduce_full(&s, &red, order, deadline)?
        };
        if h.is_zero() {
            continue;
        }
        if exp_deg(h.lm()) == 0 {
            let mut one = h;
            one.terms[0].1 = BigInt::one();
            return Ok(vec![one]);
        }
        basis.insert(h, pair.sugar);
    }
    // minimal basis from the active set, then interreduce
    let mut minimal: Vec<IPoly> = basis
        .active_polys()
        .into_iter()
        .cloned()
        .collect();
    minimal.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&IPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p)
            .collect();
        let red = Reducers::new(others);
        // leading term is irreducible by a minimal basis; reduce the tail
        let head = IPoly {
            terms: vec![minimal[i].terms[0].clone()],
        };
        let tail = IPoly {
            terms: minimal[i].terms[1..].to_vec(),
        };
        let (scale, rt) = reduce_core(&tail, &red, order, deadline, false)?;
        // scale is a positive integer: head * scale + reduced tail
        let mut terms = vec![(head.terms[0].0.clone(), &head.terms[0].1 * scale.to_integer())];
        terms.extend(rt.terms);
        let mut p = IPoly { terms };
        p.make_primitive();
        reduced.push(p);
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    Ok(reduced)
}

/// Reduced Gröbner basis of the ideal generated by `gens`, returned as
/// polynomials with integer coprime coefficients and positive leading
/// coefficient, in increasing order of leading monomial.
pub fn groebner(
    gens: &[SparsePoly],
    order: MonomialOrder,
    deadline: Option<Instant>,
) -> Result<Vec<SparsePoly>, SolveError> {
    let nvars = match gens.first() {
        Some(g) => g.nvars(),
        None => return Ok(vec![]),
    };
    let ip: Vec<IPoly> = gens.iter().map(|g| IPoly::from_sparse(g, order)).collect();
    let gb = groebner_int(&ip, order, deadline)?;
    Ok(gb.iter().map(|p| p.to_sparse(nvars)).collect())
}

/// Leading monomial of a polynomial with respect to `order`.
pub fn leading_monomial(p: &SparsePoly, order: MonomialOrder) -> Option<Monomial> {
    p.terms()
        .map(|(m, _)| m)
        .max_by(|a, b| {
            let ea: Vec<u16> = a.0.iter().map(|&x| x as u16).collect();
            let eb: Vec<u16> = b.0.iter().map(|&x| x as u16).collect();
            order.cmp(&ea, &eb)
        })
        .cloned()
}

/// Normal form of `p` modulo the Gröbner basis `gb` (exact, rational
/// coefficients).
pub fn normal_form(p: &SparsePoly, gb: &[SparsePoly], order: MonomialOrder) -> SparsePoly {
    let (ip, factor) = IPoly::from_sparse_scaled(p, order);
    let g: Vec<IPoly> = gb.iter().map(|q| IPoly::from_sparse(q, order)).collect();
    let red = Reducers::new(g.iter().collect());
    let (scale, r) = reduce_core(&ip, &red, order, None, false).expect("no deadline");
    r.to_sparse(p.nvars()).scale(&(factor / scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_int;

    fn p(nvars: usize, terms: &[(&[u32], i64)]) -> SparsePoly {
        SparsePoly::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), rat_int(*c))))
    }

    #[test]
    fn basis_of_simple_ideal() {
        // <x^2 - 1, y - x>
        let f = p(2, &[(&[2, 0], 1), (&[0, 0], -1)]);
        let g = p(2, &[(&[0, 1], 1), (&[1, 0], -1)]);
        let gb = groebner(&[f, g], MonomialOrder::Degrevlex, None).unwrap();
        // grevlex with x > y: lm(y - x) = x; basis {x - y, y^2 - 1}
        assert_eq!(gb.len(), 2);
        assert_eq!(gb[0], p(2, &[(&[1, 0], 1), (&[0, 1], -1)]));
        assert_eq!(gb[1], p(2, &[(&[0, 2], 1), (&[0, 0], -1)]));
    }

    #[test]
    fn inconsistent_system_gives_one() {
        let f = p(1, &[(&[1], 1), (&[0], -1)]);
        let g = p(1, &[(&[1], 1), (&[0], -2)]);
        let gb = groebner(&[f, g], MonomialOrder::Degrevlex, None).unwrap();
        assert_eq!(gb, vec![p(1, &[(&[0], 1)])]);
    }

    #[test]
    fn idempotent() {
        let f = p(3, &[(&[2, 0, 0], 1), (&[0, 1, 1], -3), (&[0, 0, 0], 1)]);
        let g = p(3, &[(&[1, 1, 0], 2), (&[0, 0, 2], 1)]);
        let h = p(3, &[(&[0, 1, 0], 1), (&[0, 0, 1], -1), (&[1, 0, 0], 1)]);
        for order in [MonomialOrder::Degrevlex, MonomialOrder::BlockElim { split: 2 }] {
            let gb = groebner(&[f.clone(), g.clone(), h.clone()], order, None).unwrap();
            let gb2 = groebner(&gb, order, None).unwrap();
            assert_eq!(gb, gb2);
        }
    }

    #[test]
    fn elimination_block() {
        // <z x - 1, z - 1>, z = var 1 auxiliary -> <x - 1>
        let f = p(2, &[(&[1, 1], 1), (&[0, 0], -1)]);
        let g = p(2, &[(&[0, 1], 1), (&[0, 0], -1)]);
        let gb = groebner(&[f, g], MonomialOrder::BlockElim { split: 1 }, None).unwrap();
        let elim: Vec<_> = gb.into_iter().filter(|q| !q.involves(1)).collect();
        assert_eq!(elim, vec![p(2, &[(&[1, 0], 1), (&[0, 0], -1)])]);
    }

    #[test]
    fn normal_forms() {
        let gb = vec![
            p(2, &[(&[1, 0], 1), (&[0, 1], -1)]),
            p(2, &[(&[0, 2], 1), (&[0, 0], -1)]),
        ];
        // x^3 -> y^3 -> y
        let x3 = p(2, &[(&[3, 0], 2)]);
        assert_eq!(normal_form(&x3, &gb, MonomialOrder::Degrevlex), p(2, &[(&[0, 1], 2)]));
    }
}
