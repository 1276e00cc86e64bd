//! Heights of rationals and brute-force enumeration of points of bounded height.

use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{rat_mod_pk, val_rat, QPoly, Rationals};
use crate::error::{Error, Result};

/// `H_0(a/b) = max(|a|, |b|)` in lowest terms, with `H_0(0) = 1`.
pub fn h0(x: &BigRational) -> BigInt {
    if x.is_zero() {
        return BigInt::one();
    }
    x.numer().abs().max(x.denom().abs())
}

/// Maximum of [`h0`] over the coordinates (1 for the empty tuple).
pub fn h0_tuple(x: &[BigRational]) -> BigInt {
    x.iter().map(h0).max().unwrap_or_else(BigInt::one)
}

/// `H_k^poly(x)`: the least `H_0(a)` over nonzero integer tuples `a_0..a_k` with
/// `Σ a_i x^i = 0`, searched up to `t_max`.
///
/// Returns `Ok(None)` when no relation of height `≤ t_max` exists. Heights are
/// tried in increasing order, so the first hit is minimal. `cap` bounds the
/// number of coefficient tuples inspected.
pub fn hk_poly(x: &BigRational, k: u32, t_max: u64, cap: u64) -> Result<Option<u64>> {
    if k == 0 || t_max == 0 {
        return Err(Error::InvalidInput("k and T_max must be positive".into()));
    }
    let k = k as usize;
    let powers: Vec<BigRational> = {
        let mut v = Vec::with_capacity(k + 1);
        let mut acc = BigRational::one();
        for _ in 0..=k {
            v.push(acc.clone());
            acc *= x;
        }
        v
    };
    let mut seen: u64 = 0;
    for h in 1..=t_max {
        let hi = h as i64;
        // a_1..a_k range over [-h, h]; a_0 is forced.
        let mut a = alloc::vec![-hi; k];
        loop {
            seen += 1;
            if seen > cap {
                return Err(Error::CapExceeded { what: "height relations", needed: seen as u128, cap: cap as u128 });
            }
            let mut s = BigRational::zero();
            for (ai, pw) in a.iter().zip(&powers[1..]) {
                if *ai != 0 {
                    s += pw * BigInt::from(*ai);
                }
            }
            let a0 = -s;
            if a0.is_integer() {
                let a0 = a0.to_integer();
                let top = a.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
                let nonzero = !a0.is_zero() || a.iter().any(|v| *v != 0);
                let height = a0.abs().max(BigInt::from(top));
                if nonzero && height == BigInt::from(h) {
                    return Ok(Some(h));
                }
            }
            let mut i = 0;
            while i < k {
                a[i] += 1;
                if a[i] <= hi {
                    break;
                }
                a[i] = -hi;
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
    Ok(None)
}

/// Rationals of height exactly `h`, ordered by `|numerator|`, then denominator, positive first.
pub fn rationals_of_height(h: u64) -> impl Iterator<Item = BigRational> {
    (0..=h).flat_map(move |a| {
        let dens: Range<u64> = if a == h { 1..h + 1 } else { h..h + 1 };
        dens.filter(move |b| a.gcd(b) == 1).flat_map(move |b| {
            let x = BigRational::new(BigInt::from(a), BigInt::from(b));
            let signs: &[i8] = if a == 0 { &[1] } else { &[1, -1] };
            signs.iter().map(move |s| if *s > 0 { x.clone() } else { -x.clone() })
        })
    })
}

/// Every rational of height `≤ t` exactly once, by height first (see [`rationals_of_height`]).
pub fn enumerate_heights(t: u64) -> impl Iterator<Item = BigRational> {
    (1..=t).flat_map(rationals_of_height)
}

/// A valuation constraint attached to a [`SemialgSpec`].
#[derive(Clone, Debug, PartialEq)]
pub enum PadicConstraint {
    /// `ord_p(g(x)) ≥ min`.
    OrdAtLeast { g: QPoly, min: i64 },
    /// The depth-`depth` angular component of `g(x)` equals `value` (with `ac(0) = 0`).
    AcEquals { g: QPoly, depth: u32, value: u64 },
}

/// Polynomial equations, inequations and optional p-adic conditions in `n` variables over `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct SemialgSpec {
    pub nvars: usize,
    pub equations: Vec<QPoly>,
    pub inequations: Vec<QPoly>,
    pub prime: Option<u64>,
    pub constraints: Vec<PadicConstraint>,
}

impl SemialgSpec {
    pub fn new(nvars: usize, equations: Vec<QPoly>) -> Self {
        SemialgSpec { nvars, equations, inequations: Vec::new(), prime: None, constraints: Vec::new() }
    }

    pub fn validate(&self) -> Result<()> {
        let all = self.equations.iter().chain(&self.inequations).chain(self.constraints.iter().map(|c| match c {
            PadicConstraint::OrdAtLeast { g, .. } | PadicConstraint::AcEquals { g, .. } => g,
        }));
        for f in all {
            if f.nvars() != self.nvars {
                return Err(Error::InvalidInput("polynomial arity differs from the declared variable count".into()));
            }
        }
        if !self.constraints.is_empty() && self.prime.is_none() {
            return Err(Error::InvalidInput("p-adic constraints need a prime".into()));
        }
        Ok(())
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        if self.equations.iter().any(|f| !f.eval(x, &Rationals).is_zero()) {
            return false;
        }
        if self.inequations.iter().any(|f| f.eval(x, &Rationals).is_zero()) {
            return false;
        }
        let Some(p) = self.prime else {
            return true;
        };
        self.constraints.iter().all(|c| match c {
            PadicConstraint::OrdAtLeast { g, min } => val_rat(p, &g.eval(x, &Rationals)).at_least(*min),
            PadicConstraint::AcEquals { g, depth, value } => {
                let v = g.eval(x, &Rationals);
                let got = match val_rat(p, &v).finite() {
                    None => 0u64.into(),
                    Some(o) => {
                        let unit = v * crate::arith::pow_rat(p, -o);
                        rat_mod_pk(p, &unit, *depth).expect("unit is p-integral")
                    }
                };
                got == (*value).into()
            }
        })
    }
}

/// The Cartesian grid `axis^n`, indexed with the first coordinate most significant.
#[derive(Clone, Debug)]
pub struct CandidateGrid {
    axis: Vec<BigRational>,
    nvars: usize,
    len: u64,
}

impl CandidateGrid {
    pub fn new(axis: Vec<BigRational>, nvars: usize, cap: u64) -> Result<Self> {
        let needed = (axis.len() as u128).checked_pow(nvars as u32).unwrap_or(u128::MAX);
        if needed > cap as u128 {
            return Err(Error::CapExceeded { what: "candidate points", needed, cap: cap as u128 });
        }
        Ok(CandidateGrid { axis, nvars, len: needed as u64 })
    }

    /// Rationals of height `≤ t` on every axis.
    pub fn rational(nvars: usize, t: u64, cap: u64) -> Result<Self> {
        // Each coordinate has at most (2t+1)^2 choices; check before materializing the axis.
        let rough = (2 * t as u128 + 1).pow(2).checked_pow(nvars as u32).unwrap_or(u128::MAX);
        if rough > cap as u128 {
            let axis_len = enumerate_heights(t).count() as u128;
            let needed = axis_len.checked_pow(nvars as u32).unwrap_or(u128::MAX);
            if needed > cap as u128 {
                return Err(Error::CapExceeded { what: "candidate points", needed, cap: cap as u128 });
            }
        }
        Self::new(enumerate_heights(t).collect(), nvars, cap)
    }

    /// Integers `−t..=t` on every axis, in increasing order.
    pub fn integer(nvars: usize, t: u64, cap: u64) -> Result<Self> {
        let needed = (2 * t as u128 + 1).checked_pow(nvars as u32).unwrap_or(u128::MAX);
        if needed > cap as u128 {
            return Err(Error::CapExceeded { what: "candidate points", needed, cap: cap as u128 });
        }
        let ti = t as i64;
        let axis = (-ti..=ti).map(|a| BigRational::from_integer(a.into())).collect();
        Self::new(axis, nvars, cap)
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn point(&self, mut index: u64) -> Vec<BigRational> {
        let base = self.axis.len() as u64;
        let mut out = alloc::vec![BigRational::zero(); self.nvars];
        for slot in out.iter_mut().rev() {
            *slot = self.axis[(index % base) as usize].clone();
            index /= base;
        }
        out
    }

    /// Members of `spec` among grid points with index in `range`, in index order.
    pub fn filter_range(&self, spec: &SemialgSpec, range: Range<u64>) -> Vec<Vec<BigRational>> {
        range.map(|i| self.point(i)).filter(|x| spec.contains(x)).collect()
    }
}

/// `X(Q, T)`: points with every coordinate of height `≤ t`.
pub fn points_q(spec: &SemialgSpec, t: u64, cap: u64) -> Result<Vec<Vec<BigRational>>> {
    spec.validate()?;
    let grid = CandidateGrid::rational(spec.nvars, t, cap)?;
    Ok(grid.filter_range(spec, 0..grid.len()))
}

/// `X(Z, T)`: integer points with `|x_i| ≤ t`.
pub fn points_z(spec: &SemialgSpec, t: u64, cap: u64) -> Result<Vec<Vec<BigRational>>> {
    spec.validate()?;
    let grid = CandidateGrid::integer(spec.nvars, t, cap)?;
    Ok(grid.filter_range(spec, 0..grid.len()))
}

/// `X(k, T) ∩ Q^n`: rational points whose coordinates satisfy `H_k^poly ≤ t`.
///
/// A rational `a/b` satisfies an integer relation only through the factor
/// `bX − a`, so `H_k^poly = H_0` on rationals and the candidates are those of
/// [`points_q`]. The relation search still runs per coordinate value.
pub fn points_k(spec: &SemialgSpec, t: u64, k: u32, cap: u64) -> Result<Vec<Vec<BigRational>>> {
    spec.validate()?;
    let mut axis = Vec::new();
    for x in enumerate_heights(t) {
        if hk_poly(&x, k, t, cap)?.is_some() {
            axis.push(x);
        }
    }
    let grid = CandidateGrid::new(axis, spec.nvars, cap)?;
    Ok(grid.filter_range(spec, 0..grid.len()))
}
