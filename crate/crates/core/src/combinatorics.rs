//! Monomial counts and the exponents driving the determinant method.
//!
//! `L_m(k)` counts monomials of degree exactly `k` in `m` variables and
//! `D_m(k)` those of degree at most `k`. From `(m, n, d)` we derive
//! `μ = D_n(d)`, the order `r` with `D_m(r−1) ≤ μ < D_m(r)`, the determinant
//! exponent `e`, the height exponent `V`, and `ε = mV/e`.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::arith::{pow_big, val_factorial, val_u64};
use crate::error::{Error, Result};

fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    u64::try_from(acc).ok()
}

fn overflow(what: &'static str) -> Error {
    Error::CapExceeded { what, needed: u128::MAX, cap: u64::MAX as u128 }
}

/// `L_m(k) = C(k+m−1, m−1)`, the number of monomials of degree `k` in `m` variables.
pub fn lambda_count(m: u32, k: u32) -> u64 {
    assert!(m >= 1, "m must be positive");
    binomial(k as u64 + m as u64 - 1, m as u64 - 1).expect("L_m(k) overflows u64")
}

/// `D_m(k) = C(k+m, m)`, the number of monomials of degree at most `k` in `m` variables.
pub fn delta_count(m: u32, k: u32) -> u64 {
    binomial(k as u64 + m as u64, m as u64).expect("D_m(k) overflows u64")
}

/// The unique `r ≥ 1` with `D_m(r−1) ≤ μ < D_m(r)`, where `μ = D_n(d)`.
pub fn r_of(m: u32, n: u32, d: u32) -> u32 {
    let mu = delta_count(n, d);
    let mut r = 1;
    while delta_count(m, r) <= mu {
        r += 1;
    }
    r
}

/// `e = Σ_{k<r} k·L_m(k) + r(μ − D_m(r−1))`.
pub fn e_of(m: u32, n: u32, d: u32) -> u64 {
    let mu = delta_count(n, d);
    let r = r_of(m, n, d);
    let head: u64 = (0..r).map(|k| k as u64 * lambda_count(m, k)).sum();
    head + r as u64 * (mu - delta_count(m, r - 1))
}

/// `V = Σ_{k≤d} k·L_n(k)`.
#[allow(non_snake_case)]
pub fn V_of(n: u32, d: u32) -> u64 {
    (0..=d).map(|k| k as u64 * lambda_count(n, k)).sum()
}

/// `ε = mV/e`.
pub fn epsilon_of(m: u32, n: u32, d: u32) -> BigRational {
    BigRational::new((m as u64 * V_of(n, d)).into(), e_of(m, n, d).into())
}

/// All constants of one `(m, n, d)` configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetSetup {
    pub m: u32,
    pub n: u32,
    pub d: u32,
    pub mu: u64,
    pub r: u32,
    pub e: u64,
    pub v: u64,
    pub epsilon: BigRational,
}

impl DetSetup {
    pub fn new(m: u32, n: u32, d: u32) -> Result<Self> {
        if m == 0 || n == 0 || d == 0 {
            return Err(Error::InvalidInput("m, n and d must be positive".into()));
        }
        // Guard against overflow before calling the panicking helpers.
        let mu = binomial(d as u64 + n as u64, n as u64).ok_or_else(|| overflow("mu"))?;
        if mu > 1 << 40 {
            return Err(Error::CapExceeded { what: "mu", needed: mu as u128, cap: 1 << 40 });
        }
        Ok(DetSetup {
            m,
            n,
            d,
            mu,
            r: r_of(m, n, d),
            e: e_of(m, n, d),
            v: V_of(n, d),
            epsilon: epsilon_of(m, n, d),
        })
    }

    /// `μ!·T^V` as an exact integer.
    pub fn rho_rhs(&self, t: u64) -> BigUint {
        let mut fact = BigUint::one();
        for i in 2..=self.mu {
            fact *= BigUint::from(i);
        }
        fact * BigUint::from(t).pow(self.v as u32)
    }
}

/// The least `α ≥ 0` with `p^{αe} > μ!·T^V`.
///
/// Heights below 2 are treated as `T = 2`.
pub fn alpha_bound(setup: &DetSetup, t: u64, p: u64) -> u32 {
    // μ ≥ 2 forces r ≥ 2 and so e ≥ 1; the loop below terminates.
    let rhs = setup.rho_rhs(t.max(2));
    let step = pow_big(p, setup.e as u32);
    let mut lhs = BigUint::one();
    let mut alpha = 0;
    while lhs <= rhs {
        lhs *= &step;
        alpha += 1;
    }
    alpha
}

/// Whether `r·v_p(n) ≥ v_p(i!)` for every `1 ≤ i ≤ i_max`.
pub fn legendre_check(p: u64, n: u64, r: u32, i_max: u64) -> Result<bool> {
    let vn = match val_u64(p, n) {
        Some(v) if v >= 1 => v as u64,
        _ => return Err(Error::InvalidInput("legendre_check needs p | n".into())),
    };
    // v_p(i!) is non-decreasing in i, so the last index decides.
    Ok(r as u64 * vn >= val_factorial(p, i_max))
}

/// Smallest `v_p(n) ≥ 1` making [`legendre_check`] pass: `⌈v_p(i_max!)/r⌉`.
pub fn divisibility_for(p: u64, r: u32, i_max: u64) -> u32 {
    let need = val_factorial(p, i_max);
    (need.div_ceil(r as u64)).max(1) as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn counts() {
        assert_eq!(lambda_count(2, 3), 4);
        assert_eq!(delta_count(2, 2), 6);
        for k in 0..10 {
            assert_eq!(delta_count(1, k), k as u64 + 1);
        }
    }

    #[test]
    fn derived_exponents() {
        assert_eq!(r_of(1, 2, 2), 6);
        assert_eq!(r_of(1, 2, 1), 3);
        assert_eq!(r_of(1, 1, 5), 6);
        assert_eq!(e_of(1, 2, 2), 15);
        assert_eq!(e_of(1, 2, 1), 3);
        assert_eq!(e_of(1, 1, 1), 1);
        assert_eq!(V_of(2, 1), 2);
        assert_eq!(V_of(2, 2), 8);
        assert_eq!(epsilon_of(1, 2, 1), BigRational::new(2.into(), 3.into()));
    }

    #[test]
    fn alpha_examples() {
        let s = DetSetup::new(1, 2, 1).unwrap();
        assert_eq!(alpha_bound(&s, 10, 3), 2);
        // T = 1 is read as T = 2: 3^{3α} > 3!·2^2 = 24.
        assert_eq!(alpha_bound(&s, 1, 3), 1);
        assert_eq!(alpha_bound(&s, 2, 3), 1);
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_check(2, 2, 1, 3), Ok(true));
        assert_eq!(legendre_check(2, 2, 1, 4), Ok(false));
        assert_eq!(legendre_check(3, 9, 2, 8), Ok(true));
        assert!(legendre_check(3, 2, 1, 2).is_err());
        assert_eq!(divisibility_for(2, 2, 2), 1);
        assert_eq!(divisibility_for(2, 1, 4), 3);
    }

    #[test]
    fn pascal_identities() {
        for m in 1..=6 {
            for k in 0..=30 {
                let sum: u64 = (0..=k).map(|j| lambda_count(m, j)).sum();
                assert_eq!(delta_count(m, k), sum);
                assert_eq!(lambda_count(m, k), delta_count(m - 1, k));
            }
        }
    }

    #[test]
    fn curve_case_e() {
        for n in 1..=4 {
            for d in 1..=6 {
                let mu = delta_count(n, d);
                assert_eq!(e_of(1, n, d), mu * (mu - 1) / 2, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn epsilon_decays() {
        for n in 2..=4 {
            for m in 1..n {
                let eps: alloc::vec::Vec<_> = (1..=12).map(|d| epsilon_of(m, n, d)).collect();
                let strict = eps.windows(2).all(|w| w[1] < w[0]);
                // (m, n) = (2, 3) and (3, 4) wobble at small d.
                assert_eq!(strict, m + 1 != n || m == 1, "m={m} n={n}");
                assert!(eps[11] < eps[0], "m={m} n={n}");
            }
        }
    }

    proptest! {
        #[test]
        fn r_brackets_mu(m in 1u32..5, n in 1u32..5, d in 1u32..8) {
            let mu = delta_count(n, d);
            let r = r_of(m, n, d);
            prop_assert!(delta_count(m, r - 1) <= mu && mu < delta_count(m, r));
        }

        #[test]
        fn alpha_is_minimal(m in 1u32..3, n in 1u32..3, d in 1u32..3, t in 2u64..500, pi in 0usize..3) {
            let p = [2u64, 3, 5][pi];
            let s = DetSetup::new(m, n, d).unwrap();
            let a = alpha_bound(&s, t, p);
            let rhs = s.rho_rhs(t);
            prop_assert!(pow_big(p, a * s.e as u32) > rhs);
            if a >= 1 {
                prop_assert!(pow_big(p, (a - 1) * s.e as u32) <= rhs);
            }
        }
    }
}
