//! Exact arithmetic: p-adic numbers, balls, monomials and polynomials.

mod ball;
mod modular;
mod monomial;
mod mpoly;
mod padic;
mod truncated;

pub use ball::Ball;
pub use modular::{reduce_int, reduce_rat, small_modulus, ModPoly};
pub use monomial::Monomial;
pub use mpoly::{Integers, MPoly, PrimeField, QPoly, Rationals, Ring, ZPoly};
pub use padic::{PadicNumber, ResidueValue};
pub use truncated::{CoeffRing, TruncatedPoly};

use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An integer valuation extended by `+∞` (the valuation of zero).
///
/// `Finite(_) < Infinite`, so `min` over valuations is the norm of a sum bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinite
    }

    /// `self ≥ bound` with `+∞` above everything.
    pub fn at_least(self, bound: i64) -> bool {
        self >= Valuation::Finite(bound)
    }

    /// Compares the norms `p^{-self}` and `p^{-other}`.
    pub fn norm_cmp(self, other: Valuation) -> Ordering {
        other.cmp(&self)
    }
}

impl core::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// `v_p(n)` for a machine integer; `None` for zero.
pub fn val_u64(p: u64, mut n: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Some(v)
}

/// Splits a nonzero integer as `p^v · rest` with `p ∤ rest`.
pub fn split_int(p: u64, n: &BigInt) -> Option<(u32, BigInt)> {
    if n.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut rest = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = rest.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        rest = q;
        v += 1;
    }
    Some((v, rest))
}

pub fn val_int(p: u64, n: &BigInt) -> Valuation {
    match split_int(p, n) {
        Some((v, _)) => Valuation::Finite(v as i64),
        None => Valuation::Infinite,
    }
}

pub fn val_rat(p: u64, x: &BigRational) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let vn = split_int(p, x.numer()).map(|s| s.0).unwrap_or(0) as i64;
    let vd = split_int(p, x.denom()).map(|s| s.0).unwrap_or(0) as i64;
    Valuation::Finite(vn - vd)
}

/// `v_p(i!)` by Legendre's formula.
pub fn val_factorial(p: u64, i: u64) -> u64 {
    let mut total = 0;
    let mut pk = p;
    while pk <= i {
        total += i / pk;
        match pk.checked_mul(p) {
            Some(next) => pk = next,
            None => break,
        }
    }
    total
}

pub fn pow_big(p: u64, k: u32) -> BigUint {
    num_traits::pow(BigUint::from(p), k as usize)
}

pub fn pow_int(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

/// `p^k` as a rational, for any sign of `k`.
pub fn pow_rat(p: u64, k: i64) -> BigRational {
    let base = pow_int(p, k.unsigned_abs() as u32);
    if k >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::one(), base)
    }
}

/// Reduces a p-integral rational modulo `p^k`, returning the residue in `[0, p^k)`.
///
/// Returns `None` when `x` has negative valuation.
pub fn rat_mod_pk(p: u64, x: &BigRational, k: u32) -> Option<BigUint> {
    if val_rat(p, x) < Valuation::Finite(0) {
        return None;
    }
    let modulus = pow_int(p, k);
    if modulus.is_one() {
        return Some(BigUint::zero());
    }
    let num = x.numer().mod_floor(&modulus);
    let den = x.denom().mod_floor(&modulus);
    let inv = mod_inverse(&den, &modulus)?;
    let r = (num * inv).mod_floor(&modulus);
    r.to_biguint()
}

/// Inverse of `a` modulo `m` when `gcd(a, m) = 1`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let eg = a.extended_gcd(m);
    if !eg.gcd.is_one() && !(-eg.gcd.clone()).is_one() {
        return None;
    }
    let x = if eg.gcd.is_negative() { -eg.x } else { eg.x };
    Some(x.mod_floor(m))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
