//! Factorization of univariate integer polynomials: square-free reduction,
//! Cantor–Zassenhaus modulo a small prime, Hensel lifting and factor
//! recombination.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::Rat;
use crate::roots::square_free_int;
use crate::unipoly::{make_primitive, trim_int, UniPoly};

// ---- polynomials over Z/p, p < 2^31, lowest degree first ----

type Fp = Vec<u64>;

fn fp_trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow(a, p - 2, p)
}

fn fp_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn fp_from_int(f: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    fp_trim(
        f.iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let mut r = vec![0; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        r[i] = (x + p - y) % p;
    }
    fp_trim(r)
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    fp_trim(r)
}

fn fp_divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let db = b.len() - 1;
    let inv = fp_inv(b[db], p);
    let mut r = a.clone();
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r[r.len() - 1] * inv % p;
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * bj % p) % p;
        }
        r = fp_trim(r);
    }
    (fp_trim(q), r)
}

fn fp_rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    fp_divrem(a, b, p).1
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    let inv = fp_inv(*a.last().unwrap(), p);
    a.iter().map(|&x| x * inv % p).collect()
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        fp_monic(&a, p)
    }
}

/// Extended Euclid: `(g, s, t)` with `s a + t b = g` monic.
fn fp_xgcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = fp_inv(*r0.last().unwrap(), p);
    let sc = |v: &Fp| fp_trim(v.iter().map(|&x| x * inv % p).collect());
    (sc(&r0), sc(&s0), sc(&t0))
}

fn fp_powmod(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut r: Fp = vec![1];
    let b = fp_rem(base, m, p);
    for i in (0..e.bits()).rev() {
        r = fp_rem(&fp_mul(&r, &r, p), m, p);
        if e.bit(i) {
            r = fp_rem(&fp_mul(&r, &b, p), m, p);
        }
    }
    r
}

fn fp_derivative(a: &Fp, p: u64) -> Fp {
    fp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

/// Distinct-degree factorization of a monic square-free polynomial.
fn fp_ddf(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = vec![];
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut d = 0;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            let deg = f.len() - 1;
            out.push((f, deg));
            break;
        }
        h = fp_powmod(&h, &pe, &f, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = fp_divrem(&f, &g, p).0;
            h = fp_rem(&h, &f, p);
            out.push((g, d));
        }
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus, odd p).
fn fp_edf(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Fp = fp_trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() <= 1 {
            continue;
        }
        let mut g = fp_gcd(&a, f, p);
        if g.len() == 1 {
            let b = fp_powmod(&a, &e, f, p);
            g = fp_gcd(&fp_sub(&b, &vec![1], p), f, p);
        }
        if g.len() > 1 && g.len() < f.len() {
            let h = fp_monic(&fp_divrem(f, &g, p).0, p);
            let mut out = fp_edf(&g, d, p, rng);
            out.extend(fp_edf(&h, d, p, rng));
            return out;
        }
    }
}

// ---- polynomials modulo m (BigInt), lowest degree first ----

type Zm = Vec<BigInt>;

fn zm_norm(a: &[BigInt], m: &BigInt) -> Zm {
    trim_int(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zm_add(a: &Zm, b: &Zm, m: &BigInt) -> Zm {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm_norm(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect::<Vec<_>>(),
        m,
    )
}

fn zm_sub(a: &Zm, b: &Zm, m: &BigInt) -> Zm {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm_norm(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect::<Vec<_>>(),
        m,
    )
}

fn zm_mul(a: &Zm, b: &Zm, m: &BigInt) -> Zm {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    zm_norm(&r, m)
}

/// Division by a monic polynomial modulo m.
fn zm_divrem(a: &Zm, b: &Zm, m: &BigInt) -> (Zm, Zm) {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut r = a.clone();
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r[r.len() - 1].clone();
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * bj).mod_floor(m);
        }
        q[k] = c;
        r = trim_int(r);
    }
    (trim_int(q), r)
}

fn to_zm(a: &Fp) -> Zm {
    a.iter().map(|&x| BigInt::from(x)).collect()
}

/// One quadratic Hensel step from modulus `m` to `m2 = m^2`.
#[allow(clippy::too_many_arguments)]
fn hensel_step(f: &Zm, g: &Zm, h: &Zm, s: &Zm, t: &Zm, m2: &BigInt) -> (Zm, Zm, Zm, Zm) {
    let e = zm_sub(f, &zm_mul(g, h, m2), m2);
    let (q, r) = zm_divrem(&zm_mul(s, &e, m2), h, m2);
    let g2 = zm_add(g, &zm_add(&zm_mul(t, &e, m2), &zm_mul(&q, g, m2), m2), m2);
    let h2 = zm_add(h, &r, m2);
    let b = zm_sub(
        &zm_add(&zm_mul(s, &g2, m2), &zm_mul(t, &h2, m2), m2),
        &vec![BigInt::one()],
        m2,
    );
    let (c, d) = zm_divrem(&zm_mul(s, &b, m2), &h2, m2);
    let s2 = zm_sub(s, &d, m2);
    let t2 = zm_sub(t, &zm_add(&zm_mul(t, &b, m2), &zm_mul(&c, &g2, m2), m2), m2);
    (g2, h2, s2, t2)
}

/// Lifts the monic modular factorization `f = prod factors (mod p)` of the
/// monic `f` (given modulo `p^(2^levels)`) to that modulus.
fn multifactor_lift(f: &Zm, factors: &[Fp], p: u64, levels: u32) -> Vec<Zm> {
    if factors.len() == 1 {
        return vec![f.clone()];
    }
    let k = factors.len() / 2;
    let prod = |fs: &[Fp]| fs.iter().fold(vec![1u64], |acc, g| fp_mul(&acc, g, p));
    let g0 = prod(&factors[..k]);
    let h0 = prod(&factors[k..]);
    let (_, s0, t0) = fp_xgcd(&g0, &h0, p);
    let (mut g, mut h, mut s, mut t) = (to_zm(&g0), to_zm(&h0), to_zm(&s0), to_zm(&t0));
    let mut m = BigInt::from(p);
    for _ in 0..levels {
        let m2 = &m * &m;
        let fm = zm_norm(f, &m2);
        (g, h, s, t) = hensel_step(&fm, &g, &h, &s, &t, &m2);
        m = m2;
    }
    let mut out = multifactor_lift(&g, &factors[..k], p, levels);
    out.extend(multifactor_lift(&h, &factors[k..], p, levels));
    out
}

fn symmetric(a: &Zm, m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    a.iter()
        .map(|c| if *c > half { c - m } else { c.clone() })
        .collect()
}

/// Exact quotient `a / b` over Z, if `b` divides `a`.
fn int_divides(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let (c, rem) = r[r.len() - 1].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
        r = trim_int(r);
    }
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

const PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

struct Modular {
    p: u64,
    factors: Vec<Fp>,
}

/// Factors a primitive square-free `f` (degree >= 1) modulo a few good
/// primes and keeps the one with fewest factors.
fn modular_factorization(f: &[BigInt], rng: &mut ChaCha8Rng) -> Option<Modular> {
    let n = f.len() - 1;
    let mut best: Option<Modular> = None;
    let mut tried = 0;
    let primes = PRIMES.iter().copied().chain((181u64..10_000).filter(|&q| is_prime(q)));
    for p in primes {
        let fp = fp_from_int(f, p);
        if fp.len() != n + 1 {
            continue;
        }
        let fm = fp_monic(&fp, p);
        if fp_gcd(&fm, &fp_derivative(&fm, p), p).len() != 1 {
            continue;
        }
        let mut factors = vec![];
        for (g, d) in fp_ddf(&fm, p) {
            factors.extend(fp_edf(&g, d, p, rng));
        }
        if best.as_ref().is_none_or(|b| factors.len() < b.factors.len()) {
            best = Some(Modular { p, factors });
        }
        tried += 1;
        if tried >= 5 || best.as_ref().is_some_and(|b| b.factors.len() == 1) {
            break;
        }
    }
    best
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Mignotte-type bound on coefficients of any factor of `f`.
fn factor_coeff_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let norm2: BigUint = f.iter().map(|c| c.magnitude() * c.magnitude()).sum();
    let norm = norm2.sqrt() + 1u32;
    BigInt::from(norm) << n
}

fn lift_modular(f: &[BigInt], md: &Modular) -> (Vec<Zm>, BigInt) {
    let lc = f.last().unwrap();
    let bound = factor_coeff_bound(f) * lc.abs() * 2;
    let p = BigInt::from(md.p);
    let mut levels = 0u32;
    let mut modulus = p.clone();
    while modulus <= bound {
        modulus = &modulus * &modulus;
        levels += 1;
    }
    let lc_inv = lc
        .extended_gcd(&modulus)
        .x
        .mod_floor(&modulus);
    let monic: Zm = zm_norm(&f.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), &modulus);
    (multifactor_lift(&monic, &md.factors, md.p, levels), modulus)
}

/// Irreducible factors over Z of a primitive square-free polynomial with
/// positive leading coefficient; `None` when the recombination budget (in
/// tested subsets) is exhausted.
fn factor_square_free(f: &[BigInt], budget: usize, rng: &mut ChaCha8Rng) -> Option<Vec<Vec<BigInt>>> {
    let n = f.len() - 1;
    if n <= 1 {
        return Some(vec![f.to_vec()]);
    }
    let md = modular_factorization(f, rng)?;
    if md.factors.len() == 1 {
        return Some(vec![f.to_vec()]);
    }
    let (lifted, modulus) = lift_modular(f, &md);
    let mut rest = f.to_vec();
    let mut pool: Vec<Zm> = lifted;
    let mut out = vec![];
    let mut used = 0usize;
    let mut size = 1;
    'outer: while 2 * size <= pool.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            used += 1;
            if used > budget {
                return None;
            }
            let lc = rest.last().unwrap().clone();
            let mut g: Zm = vec![lc.mod_floor(&modulus)];
            for &i in &idx {
                g = zm_mul(&g, &pool[i], &modulus);
            }
            let cand = make_primitive(symmetric(&g, &modulus));
            if let Some(q) = int_divides(&rest, &cand) {
                out.push(cand);
                rest = q;
                for &i in idx.iter().rev() {
                    pool.remove(i);
                }
                continue 'outer;
            }
            // next combination
            let k = idx.len();
            let mut i = k;
            while i > 0 && idx[i - 1] == pool.len() - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
        size += 1;
    }
    out.push(rest);
    for g in &mut out {
        if g.last().unwrap().is_negative() {
            for c in g.iter_mut() {
                *c = -&*c;
            }
        }
    }
    Some(out)
}

/// Irreducible factors over Q of the square-free part of `p`, as primitive
/// integer polynomials with positive leading coefficient. `None` when the
/// budget is exhausted.
pub fn irreducible_factors(p: &UniPoly, budget: usize) -> Option<Vec<UniPoly>> {
    if p.degree().unwrap_or(0) == 0 {
        return Some(vec![]);
    }
    let sf = square_free_int(&p.primitive_int());
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    // split off the factor t^k first so modular images keep full degree
    let mut sf = sf;
    let mut out = vec![];
    if sf[0].is_zero() {
        out.push(UniPoly::t());
        sf.remove(0);
    }
    let facs = factor_square_free(&sf, budget, &mut rng)?;
    out.extend(facs.iter().filter(|g| g.len() > 1).map(|g| UniPoly::from_bigints(g)));
    Some(out)
}

/// All rational roots of an integer polynomial, ascending.
pub fn rational_roots(p: &[BigInt]) -> Vec<Rat> {
    let p = trim_int(p.to_vec());
    if p.len() <= 1 {
        return vec![];
    }
    let mut sf = square_free_int(&p);
    let mut roots = vec![];
    if sf[0].is_zero() {
        roots.push(Rat::zero());
        let k = sf.iter().take_while(|c| c.is_zero()).count();
        sf.drain(..k);
    }
    if sf.len() > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        if sf.len() == 2 {
            roots.push(Rat::new(-sf[0].clone(), sf[1].clone()));
        } else if let Some(md) = modular_factorization(&sf, &mut rng) {
            let linear: Vec<Fp> = md.factors.iter().filter(|g| g.len() == 2).cloned().collect();
            if !linear.is_empty() {
                let (lifted, modulus) = lift_modular(&sf, &md);
                let lc = sf.last().unwrap();
                for g in lifted.into_iter().filter(|g| g.len() == 2) {
                    let cand = make_primitive(symmetric(&zm_mul(&vec![lc.mod_floor(&modulus)], &g, &modulus), &modulus));
                    if cand.len() == 2 && int_divides(&sf, &cand).is_some() {
                        roots.push(Rat::new(-cand[0].clone(), cand[1].clone()));
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Degree of the irreducible factor of `p` vanishing at the root isolated by
/// `root`.
pub fn factor_degree_at(factors: &[UniPoly], root: &crate::roots::RootBox) -> Option<usize> {
    factors
        .iter()
        .find(|g| crate::roots::sign_at_root(g, root) == 0)
        .and_then(UniPoly::degree)
}
