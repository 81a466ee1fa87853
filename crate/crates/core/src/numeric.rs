//! Floating-point helpers for log-scale rendering.

use core::f64::consts::{LN_10, LOG10_2};

use num_bigint::{BigInt, Sign};
use num_traits::ToPrimitive;

/// `log10 |x|`, or negative infinity for zero.
pub fn log10_big(x: &BigInt) -> f64 {
    if x.sign() == Sign::NoSign {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return libm::log10(x.to_f64().expect("fits").abs());
    }
    let shift = bits - 64;
    let top: BigInt = x.magnitude().clone().into();
    let top = (top >> shift).to_f64().expect("64 bits");
    libm::log10(top) + shift as f64 * LOG10_2
}

pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `log10 Γ(x)` for `x > 0`.
pub fn log10_gamma(x: f64) -> f64 {
    libm::lgamma(x) / LN_10
}

/// `log10 C(n, k)` through log-Gamma; negative infinity outside `0..=n`.
pub fn log10_binomial(n: f64, k: f64) -> f64 {
    if k < 0.0 || k > n {
        return f64::NEG_INFINITY;
    }
    log10_gamma(n + 1.0) - log10_gamma(k + 1.0) - log10_gamma(n - k + 1.0)
}

/// `log10 Σ 10^x` for a sequence of log values, stable against overflow.
pub fn log10_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let v: alloc::vec::Vec<f64> = values.into_iter().filter(|x| x.is_finite()).collect();
    let Some(max) = v.iter().copied().reduce(f64::max) else {
        return f64::NEG_INFINITY;
    };
    let s: f64 = v.iter().map(|x| libm::pow(10.0, x - max)).sum();
    max + libm::log10(s)
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = libm::sqrt(n as f64) as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;

    #[test]
    fn log_of_big() {
        let x = BigInt::from(10).pow(400u32);
        assert!((log10_big(&x) - 400.0).abs() < 1e-9);
        assert!((log10_big(&BigInt::from(1000)) - 3.0).abs() < 1e-12);
        assert_eq!(log10_big(&BigInt::from(0)), f64::NEG_INFINITY);
    }

    #[test]
    fn binomial_logs() {
        assert!((log10_binomial(5.0, 2.0) - 1.0).abs() < 1e-12);
        let exact = crate::combinat::binomial(1000, 400);
        assert!((log10_binomial(1000.0, 400.0) - log10_big(&exact)).abs() < 1e-9);
    }

    #[test]
    fn square_roots() {
        for n in 0..2000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
    }

    #[test]
    fn sums_in_log_space() {
        assert!((log10_sum([2.0, 2.0]) - (200f64).log10()).abs() < 1e-12);
        assert_eq!(log10_sum([f64::NEG_INFINITY]), f64::NEG_INFINITY);
    }
}
