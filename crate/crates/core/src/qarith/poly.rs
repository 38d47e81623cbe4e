//! Dense univariate polynomial helpers over Q, indexed from degree 0.
//!
//! These back the Laurent, rational-function and cyclotomic types. The gcd
//! uses a single-prime modular image with an exact divisibility check, and
//! falls back to the Euclidean algorithm over Q when no prime certifies.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) type Poly = Vec<BigRational>;

pub(crate) fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero and trimmed.
pub(crate) fn divrem(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let db = b.len() - 1;
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b[db].recip();
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn monic(p: &mut Poly) {
    if let Some(l) = p.last().cloned() {
        for c in p.iter_mut() {
            *c = &*c / &l;
        }
    }
}

/// Scale to a primitive integer polynomial with positive leading coefficient.
pub(crate) fn primitive_int(p: &[BigRational]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in p {
        den = den.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if !content.is_zero() {
        if ints.last().is_some_and(|l| l.is_negative()) {
            content = -content;
        }
        for c in ints.iter_mut() {
            *c = &*c / &content;
        }
    }
    ints
}

const PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 4_611_686_018_427_387_847, 9_223_372_036_854_775_783];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    let pb = BigInt::from(p);
    x.mod_floor(&pb).to_u64().unwrap_or(0)
}

fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let strip = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    strip(&mut r0);
    strip(&mut r1);
    while !r1.is_empty() {
        let inv = powmod(*r1.last().unwrap(), p - 2, p);
        let d1 = r1.len() - 1;
        while r0.len() > d1 && !r0.is_empty() {
            let k = r0.len() - 1 - d1;
            let c = mulmod(*r0.last().unwrap(), inv, p);
            for (j, &bj) in r1.iter().enumerate() {
                let t = mulmod(c, bj, p);
                r0[k + j] = (r0[k + j] + p - t) % p;
            }
            r0.pop();
            strip(&mut r0);
        }
        std::mem::swap(&mut r0, &mut r1);
    }
    if let Some(&l) = r0.last() {
        let inv = powmod(l, p - 2, p);
        for c in r0.iter_mut() {
            *c = mulmod(*c, inv, p);
        }
    }
    r0
}

fn divides(g: &[BigRational], a: &[BigRational]) -> bool {
    divrem(a, g).1.is_empty()
}

/// Monic gcd over Q of two nonzero polynomials.
pub(crate) fn gcd(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.len() == 1 || b.len() == 1 {
        return vec![BigRational::one()];
    }
    let ai = primitive_int(a);
    let bi = primitive_int(b);
    let lc = ai.last().unwrap().gcd(bi.last().unwrap());
    for &p in PRIMES.iter() {
        let la = reduce(ai.last().unwrap(), p);
        let lb = reduce(bi.last().unwrap(), p);
        if la == 0 || lb == 0 {
            continue;
        }
        let am: Vec<u64> = ai.iter().map(|c| reduce(c, p)).collect();
        let bm: Vec<u64> = bi.iter().map(|c| reduce(c, p)).collect();
        let g = gcd_mod(&am, &bm, p);
        if g.len() <= 1 {
            return vec![BigRational::one()];
        }
        let lcm_ = reduce(&lc, p);
        let half = p / 2;
        let cand: Poly = g
            .iter()
            .map(|&c| {
                let v = mulmod(c, lcm_, p);
                let s = if v > half { BigInt::from(v) - BigInt::from(p) } else { BigInt::from(v) };
                BigRational::from_integer(s)
            })
            .collect();
        let mut cand = cand;
        trim(&mut cand);
        monic(&mut cand);
        if divides(&cand, a) && divides(&cand, b) {
            return cand;
        }
    }
    euclid(a, b)
}

fn euclid(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let (_, r) = divrem(&r0, &r1);
        r0 = r1;
        r1 = r;
        monic(&mut r1);
    }
    monic(&mut r0);
    r0
}

/// Returns `s` with `s*a = 1 mod m`, or `None` when `a` and `m` share a factor.
pub(crate) fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Poly> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    if r1.is_empty() {
        return None;
    }
    let mut s0: Poly = Vec::new();
    let mut s1: Poly = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    let s: Poly = s0.iter().map(|x| x * &c).collect();
    Some(divrem(&s, m).1)
}
