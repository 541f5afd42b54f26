//! Test-side high-precision oracle: fixed-point BigInt arithmetic with
//! 100 decimal digits, independent of the crate's float backend.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub const DIGITS: u32 = 100;

pub fn scale() -> BigInt {
    num_traits::pow(BigInt::from(10), DIGITS as usize)
}

fn atan_inv(n: i64) -> BigInt {
    // atan(1/n) = Σ (−1)^j / ((2j+1) n^(2j+1))
    let s = scale();
    let n2 = BigInt::from(n * n);
    let mut term = &s / BigInt::from(n);
    let mut sum = BigInt::zero();
    let mut j = 0i64;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * j + 1);
        if j % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &n2;
        j += 1;
    }
    sum
}

/// π·10^DIGITS via Machin's formula.
pub fn pi() -> BigInt {
    BigInt::from(16) * atan_inv(5) - BigInt::from(4) * atan_inv(239)
}

fn mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) / scale()
}

pub fn div(a: &BigInt, b: &BigInt) -> BigInt {
    (a * scale()) / b
}

/// (sin x, cos x) for fixed-point x.
pub fn sin_cos(x: &BigInt) -> (BigInt, BigInt) {
    let s = scale();
    let mut sin = BigInt::zero();
    let mut cos = BigInt::zero();
    let mut term = s.clone(); // x^n / n!
    let mut n = 0i64;
    while !term.is_zero() || n < 4 {
        match n % 4 {
            0 => cos += &term,
            1 => sin += &term,
            2 => cos -= &term,
            _ => sin -= &term,
        }
        n += 1;
        term = mul(&term, x) / BigInt::from(n);
        if n > 400 {
            break;
        }
    }
    (sin, cos)
}

/// cot(p/q · π) in fixed point.
pub fn cot_pi_frac(p: i64, q: i64) -> BigInt {
    let x = pi() * BigInt::from(p) / BigInt::from(q);
    let (s, c) = sin_cos(&x);
    div(&c, &s)
}

/// Parses an astro-float decimal rendering such as "-1.2345e-3" into fixed point.
pub fn parse_fixed(s: &str) -> BigInt {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (mant, exp) = match body.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().unwrap()),
        None => (body, 0),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: BigInt = format!("{}{}", int, frac).parse().unwrap();
    let shift = DIGITS as i64 + exp - frac.len() as i64;
    let v = if shift >= 0 {
        digits * num_traits::pow(BigInt::from(10), shift as usize)
    } else {
        digits / num_traits::pow(BigInt::from(10), (-shift) as usize)
    };
    if neg {
        -v
    } else {
        v
    }
}

/// |a − b| < 10^(−digits) in fixed point.
pub fn close(a: &BigInt, b: &BigInt, digits: u32) -> bool {
    let tol = num_traits::pow(BigInt::from(10), (DIGITS - digits) as usize);
    (a - b).abs() < tol
}
