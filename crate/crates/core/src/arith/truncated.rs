use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{PrimeField, Ring, Valuation, ZPoly};
use crate::error::{Error, Result};

/// Coefficient ring of a [`TruncatedPoly`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffRing {
    Fp(u64),
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Coeffs {
    Fp(u64, Vec<u64>),
    Q(Vec<BigRational>),
}

/// A polynomial in `t` over `F_p` or `Q` with a declared degree bound.
///
/// Coefficients past the true degree are trimmed; `bound` only grows under
/// multiplication (`b1 + b2`) and addition (`max`), so nothing is ever cut off.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedPoly {
    coeffs: Coeffs,
    bound: usize,
}

impl TruncatedPoly {
    pub fn zero(ring: CoeffRing, bound: usize) -> Self {
        let coeffs = match ring {
            CoeffRing::Fp(p) => Coeffs::Fp(p, Vec::new()),
            CoeffRing::Q => Coeffs::Q(Vec::new()),
        };
        TruncatedPoly { coeffs, bound }
    }

    /// Polynomial over `F_p` from residues `c_0, c_1, …` (reduced mod `p`).
    pub fn over_fp(p: u64, coeffs: &[u64]) -> Self {
        let mut c: Vec<u64> = coeffs.iter().map(|a| a % p).collect();
        let bound = c.len().saturating_sub(1);
        trim_fp(&mut c);
        TruncatedPoly { coeffs: Coeffs::Fp(p, c), bound }
    }

    pub fn over_q(coeffs: &[BigRational]) -> Self {
        let mut c = coeffs.to_vec();
        let bound = c.len().saturating_sub(1);
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        TruncatedPoly { coeffs: Coeffs::Q(c), bound }
    }

    pub fn ring(&self) -> CoeffRing {
        match &self.coeffs {
            Coeffs::Fp(p, _) => CoeffRing::Fp(*p),
            Coeffs::Q(_) => CoeffRing::Q,
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn is_zero(&self) -> bool {
        match &self.coeffs {
            Coeffs::Fp(_, c) => c.is_empty(),
            Coeffs::Q(c) => c.is_empty(),
        }
    }

    /// `deg_t`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        let len = match &self.coeffs {
            Coeffs::Fp(_, c) => c.len(),
            Coeffs::Q(c) => c.len(),
        };
        len.checked_sub(1)
    }

    /// `ord_t`: index of the first nonzero coefficient.
    pub fn ord_t(&self) -> Valuation {
        let first = match &self.coeffs {
            Coeffs::Fp(_, c) => c.iter().position(|a| *a != 0),
            Coeffs::Q(c) => c.iter().position(|a| !a.is_zero()),
        };
        match first {
            Some(i) => Valuation::Finite(i as i64),
            None => Valuation::Infinite,
        }
    }

    pub fn fp_coeffs(&self) -> Option<&[u64]> {
        match &self.coeffs {
            Coeffs::Fp(_, c) => Some(c),
            Coeffs::Q(_) => None,
        }
    }

    pub fn q_coeffs(&self) -> Option<&[BigRational]> {
        match &self.coeffs {
            Coeffs::Q(c) => Some(c),
            Coeffs::Fp(..) => None,
        }
    }

    fn constant_of(ring: CoeffRing, n: &BigInt) -> Self {
        match ring {
            CoeffRing::Fp(p) => TruncatedPoly::over_fp(p, &[PrimeField { p }.reduce(n)]),
            CoeffRing::Q => TruncatedPoly::over_q(&[BigRational::from_integer(n.clone())]),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let bound = self.bound.max(other.bound);
        match (&self.coeffs, &other.coeffs) {
            (Coeffs::Fp(p, a), Coeffs::Fp(q, b)) if p == q => {
                let f = PrimeField { p: *p };
                let mut c = alloc::vec![0u64; a.len().max(b.len())];
                for (i, x) in a.iter().enumerate() {
                    c[i] = *x;
                }
                for (i, x) in b.iter().enumerate() {
                    c[i] = f.add(&c[i], x);
                }
                trim_fp(&mut c);
                Ok(TruncatedPoly { coeffs: Coeffs::Fp(*p, c), bound })
            }
            (Coeffs::Q(a), Coeffs::Q(b)) => {
                let mut c = alloc::vec![BigRational::zero(); a.len().max(b.len())];
                for (i, x) in a.iter().enumerate() {
                    c[i] += x;
                }
                for (i, x) in b.iter().enumerate() {
                    c[i] += x;
                }
                while c.last().is_some_and(Zero::is_zero) {
                    c.pop();
                }
                Ok(TruncatedPoly { coeffs: Coeffs::Q(c), bound })
            }
            _ => Err(Error::RingMismatch),
        }
    }

    pub fn neg(&self) -> Self {
        let coeffs = match &self.coeffs {
            Coeffs::Fp(p, c) => Coeffs::Fp(*p, c.iter().map(|a| (p - a) % p).collect()),
            Coeffs::Q(c) => Coeffs::Q(c.iter().map(|a| -a).collect()),
        };
        TruncatedPoly { coeffs, bound: self.bound }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let bound = self.bound + other.bound;
        match (&self.coeffs, &other.coeffs) {
            (Coeffs::Fp(p, a), Coeffs::Fp(q, b)) if p == q => {
                let mut c = alloc::vec![0u64; (a.len() + b.len()).saturating_sub(1)];
                fp_mul_into(*p, a, b, &mut c);
                trim_fp(&mut c);
                Ok(TruncatedPoly { coeffs: Coeffs::Fp(*p, c), bound })
            }
            (Coeffs::Q(a), Coeffs::Q(b)) => {
                let mut c = alloc::vec![BigRational::zero(); (a.len() + b.len()).saturating_sub(1)];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        c[i + j] += x * y;
                    }
                }
                while c.last().is_some_and(Zero::is_zero) {
                    c.pop();
                }
                Ok(TruncatedPoly { coeffs: Coeffs::Q(c), bound })
            }
            _ => Err(Error::RingMismatch),
        }
    }

    /// Evaluates `f ∈ Z[x_1..x_n, t]` (the last variable is `t`) at `x_i = args[i]`.
    pub fn eval_mpoly(f: &ZPoly, args: &[TruncatedPoly]) -> Result<TruncatedPoly> {
        if f.nvars() != args.len() + 1 {
            return Err(Error::InvalidInput("expected n arguments for a polynomial in n+1 variables".into()));
        }
        let ring = match args.first() {
            Some(a) => a.ring(),
            None => return Err(Error::InvalidInput("no arguments".into())),
        };
        if args.iter().any(|a| a.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        let one = Self::constant_of(ring, &BigInt::one());
        let t = match ring {
            CoeffRing::Fp(p) => TruncatedPoly::over_fp(p, &[0, 1]),
            CoeffRing::Q => TruncatedPoly::over_q(&[BigRational::zero(), BigRational::one()]),
        };
        let mut total = TruncatedPoly::zero(ring, 0);
        for (m, c) in f.terms() {
            let mut term = Self::constant_of(ring, c);
            for (i, e) in m.exps().iter().enumerate() {
                let base = if i < args.len() { &args[i] } else { &t };
                let mut pw = one.clone();
                for _ in 0..*e {
                    pw = pw.mul(base)?;
                }
                term = term.mul(&pw)?;
            }
            total = total.add(&term)?;
        }
        Ok(total)
    }
}

pub(crate) fn trim_fp(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

/// `out += a·b` over `F_p`; `out` must have room for `a.len() + b.len() - 1` entries.
pub(crate) fn fp_mul_into(p: u64, a: &[u64], b: &[u64], out: &mut [u64]) {
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + *x as u128 * *y as u128) % p as u128) as u64;
        }
    }
}

impl fmt::Display for TruncatedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, alloc::string::String)> = match &self.coeffs {
            Coeffs::Fp(_, c) => c
                .iter()
                .enumerate()
                .filter(|(_, a)| **a != 0)
                .map(|(i, a)| (i, alloc::format!("{a}")))
                .collect(),
            Coeffs::Q(c) => c
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(i, a)| (i, alloc::format!("{a}")))
                .collect(),
        };
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (i, a)) in terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}*t")?,
                _ => write!(f, "{a}*t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Integers, Monomial};
    use alloc::vec;

    #[test]
    fn ord_t_examples() {
        let f = TruncatedPoly::over_fp(2, &[0, 0, 1, 1]);
        assert_eq!(f.ord_t(), Valuation::Finite(2));
        assert_eq!(TruncatedPoly::zero(CoeffRing::Fp(2), 3).ord_t(), Valuation::Infinite);
    }

    #[test]
    fn frobenius_square() {
        let f = TruncatedPoly::over_fp(2, &[1, 1]);
        let sq = f.mul(&f).unwrap();
        assert_eq!(sq.fp_coeffs().unwrap(), &[1, 0, 1]);
        assert_eq!(sq.bound(), 2);
    }

    #[test]
    fn ring_mismatch() {
        let a = TruncatedPoly::over_fp(2, &[1]);
        let b = TruncatedPoly::over_fp(3, &[1]);
        assert_eq!(a.mul(&b), Err(Error::RingMismatch));
        let c = TruncatedPoly::over_q(&[BigRational::one()]);
        assert_eq!(a.add(&c), Err(Error::RingMismatch));
    }

    #[test]
    fn evaluate_parabola_char_two() {
        // y - x^2 at x = 1 + t, y = 1: 1 - (1 + t^2) = t^2 (char 2)
        let f = ZPoly::from_terms(
            3,
            [(Monomial(vec![0, 1, 0]), BigInt::from(1)), (Monomial(vec![2, 0, 0]), BigInt::from(-1))],
            &Integers,
        );
        let x = TruncatedPoly::over_fp(2, &[1, 1]);
        let y = TruncatedPoly::over_fp(2, &[1]);
        let v = TruncatedPoly::eval_mpoly(&f, &[x, y]).unwrap();
        assert_eq!(v.fp_coeffs().unwrap(), &[0, 0, 1]);
    }
}
