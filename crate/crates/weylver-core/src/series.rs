//! Exact univariate power-series helpers (dense, rational coefficients).
//!
//! Used for the sinh-ratio series behind the A-roof genus and the generating
//! function cross-checks. Series are truncated vectors `c[0..=order]` with
//! `c[k]` the coefficient of `t^k`.

use num::{One, Zero};

use crate::eps::Rational;
use crate::weyl::factorial;

pub fn series_mul(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Multiplicative inverse of a series with nonzero constant term.
pub fn series_invert(a: &[Rational], order: usize) -> Vec<Rational> {
    assert!(!a[0].is_zero(), "series has no inverse");
    let mut out = vec![Rational::zero(); order + 1];
    out[0] = a[0].recip();
    for n in 1..=order {
        let mut acc = Rational::zero();
        for k in 1..=n {
            if k < a.len() {
                acc += &a[k] * &out[n - k];
            }
        }
        out[n] = -acc / &a[0];
    }
    out
}

/// log of a series with constant term 1.
pub fn series_log(a: &[Rational], order: usize) -> Vec<Rational> {
    assert!(a[0].is_one(), "series_log needs constant term 1");
    let mut out = vec![Rational::zero(); order + 1];
    for n in 1..=order {
        let mut acc = Rational::zero();
        for k in 1..n {
            if n - k < a.len() {
                acc += Rational::from_integer(k.into()) * &out[k] * &a[n - k];
            }
        }
        let an = if n < a.len() {
            a[n].clone()
        } else {
            Rational::zero()
        };
        out[n] = (Rational::from_integer(n.into()) * an - acc)
            / Rational::from_integer(n.into());
    }
    out
}

/// exp of a series with constant term 0.
pub fn series_exp(a: &[Rational], order: usize) -> Vec<Rational> {
    assert!(a.is_empty() || a[0].is_zero(), "series_exp needs constant term 0");
    let mut out = vec![Rational::zero(); order + 1];
    out[0] = Rational::one();
    for n in 1..=order {
        let mut acc = Rational::zero();
        for k in 1..=n {
            if k < a.len() {
                acc += Rational::from_integer(k.into()) * &a[k] * &out[n - k];
            }
        }
        out[n] = acc / Rational::from_integer(n.into());
    }
    out
}

/// The series s(t) = sinh(t/2)/(t/2) = sum_k (t/2)^{2k} / (2k+1)!.
pub fn sinh_ratio(order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    let quarter = crate::eps::rat(1, 4);
    let mut pow = Rational::one();
    let mut k = 0usize;
    while 2 * k <= order {
        out[2 * k] = &pow / factorial(2 * k as u32 + 1);
        pow *= &quarter;
        k += 1;
    }
    out
}

/// Coefficients of (t/2)/sinh(t/2) = 1/s(t).
pub fn sinh_ratio_inverse(order: usize) -> Vec<Rational> {
    series_invert(&sinh_ratio(order), order)
}

/// Coefficients g_k of -log(sinh(t/2)/(t/2)) = log((t/2)/sinh(t/2)).
pub fn log_sinh_ratio_inverse(order: usize) -> Vec<Rational> {
    series_log(&sinh_ratio(order), order)
        .into_iter()
        .map(|c| -c)
        .collect()
}
