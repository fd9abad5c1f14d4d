//! Arbitrary-precision integer helpers.

use dashu_int::ops::UnsignedAbs;
pub use dashu_int::IBig as Int;

#[inline]
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub fn xgcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Int::ONE, Int::ZERO);
    let (mut t0, mut t1) = (Int::ZERO, Int::ONE);
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0 < Int::ZERO {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn gcd(a: &Int, b: &Int) -> Int {
    xgcd(a, b).0
}

/// `|a|`, saturating at `u64::MAX`.
pub fn abs_saturating(a: &Int) -> u64 {
    u64::try_from(a.unsigned_abs()).unwrap_or(u64::MAX)
}

pub fn to_i64(a: &Int) -> Option<i64> {
    i64::try_from(a).ok()
}

pub fn to_u64(a: &Int) -> Option<u64> {
    u64::try_from(a).ok()
}

/// Nonnegative residue of `a` modulo `m > 0`.
pub fn rem_u64(a: &Int, m: u64) -> u64 {
    let r = a % Int::from(m);
    let r = if r < Int::ZERO { r + Int::from(m) } else { r };
    u64::try_from(&r).expect("residue fits")
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(g, s, t)` with `s*a + t*b = g = gcd(a, b)` over `i128`.
pub(crate) fn xgcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, s, _) = xgcd_i128(a as i128, m as i128);
    (g == 1).then(|| s.rem_euclid(m as i128) as u64)
}
