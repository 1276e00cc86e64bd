use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{pow_rat, rat_mod_pk, QPoly, ZPoly};

/// A polynomial with coefficients reduced modulo `p^k < 2^63`, for fast evaluation.
#[derive(Clone, Debug)]
pub struct ModPoly {
    modulus: u64,
    terms: Vec<(Vec<u32>, u64)>,
    max_deg: Vec<u32>,
}

/// `p^k` when it stays below `2^63`.
pub fn small_modulus(p: u64, k: u32) -> Option<u64> {
    let mut m: u64 = 1;
    for _ in 0..k {
        m = m.checked_mul(p)?;
    }
    (m < 1 << 63).then_some(m)
}

impl ModPoly {
    /// Reduces `p^shift · f` modulo `p^k`; `None` if some scaled coefficient is not p-integral
    /// or `p^k` is too large.
    pub fn from_qpoly(p: u64, k: u32, shift: i64, f: &QPoly) -> Option<Self> {
        let modulus = small_modulus(p, k)?;
        let scale = pow_rat(p, shift);
        let mut terms = Vec::with_capacity(f.len());
        for (m, c) in f.terms() {
            let r = rat_mod_pk(p, &(c * &scale), k)?.to_u64()?;
            if r != 0 {
                terms.push((m.exps().to_vec(), r));
            }
        }
        Some(Self::assemble(modulus, f.nvars(), terms))
    }

    /// Reduces an integer polynomial modulo `modulus`.
    pub fn from_zpoly(modulus: u64, f: &ZPoly) -> Self {
        let md = BigInt::from(modulus);
        let terms = f
            .terms()
            .filter_map(|(m, c)| {
                let r = num_integer::Integer::mod_floor(c, &md).to_u64().unwrap();
                (r != 0).then(|| (m.exps().to_vec(), r))
            })
            .collect();
        Self::assemble(modulus, f.nvars(), terms)
    }

    fn assemble(modulus: u64, nvars: usize, terms: Vec<(Vec<u32>, u64)>) -> Self {
        let mut max_deg = alloc::vec![0; nvars];
        for (e, _) in &terms {
            for (d, k) in max_deg.iter_mut().zip(e) {
                *d = (*d).max(*k);
            }
        }
        ModPoly { modulus, terms, max_deg }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at a point given by residues (any `u64`, reduced on entry).
    pub fn eval(&self, point: &[u64]) -> u64 {
        let m = self.modulus as u128;
        let powers: Vec<Vec<u64>> = point
            .iter()
            .zip(&self.max_deg)
            .map(|(x, d)| {
                let x = (*x as u128 % m) as u64;
                let mut v = Vec::with_capacity(*d as usize + 1);
                let mut acc: u128 = 1 % m;
                v.push(acc as u64);
                for _ in 0..*d {
                    acc = acc * x as u128 % m;
                    v.push(acc as u64);
                }
                v
            })
            .collect();
        self.eval_with_powers(&powers)
    }

    /// Value given precomputed powers `powers[i][e] = x_i^e mod modulus`.
    pub fn eval_with_powers(&self, powers: &[Vec<u64>]) -> u64 {
        let m = self.modulus as u128;
        let mut total: u128 = 0;
        for (e, c) in &self.terms {
            let mut t = *c as u128;
            for (i, k) in e.iter().enumerate() {
                if *k != 0 {
                    t = t * powers[i][*k as usize] as u128 % m;
                }
            }
            total += t;
            if total >= m {
                total -= m;
            }
        }
        total as u64
    }

    pub fn max_degrees(&self) -> &[u32] {
        &self.max_deg
    }
}

/// Residue of an integer modulo `modulus` in `[0, modulus)`.
pub fn reduce_int(x: &BigInt, modulus: u64) -> u64 {
    num_integer::Integer::mod_floor(x, &BigInt::from(modulus)).to_u64().unwrap()
}

/// Residue of a p-integral rational modulo `p^k`.
pub fn reduce_rat(p: u64, x: &BigRational, k: u32) -> Option<u64> {
    rat_mod_pk(p, x, k)?.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Monomial, Rationals};
    use alloc::vec;

    #[test]
    fn half_of_binomial() {
        // x(x-1)/2 scaled by 2 is x^2 - x; mod 4.
        let f = QPoly::from_terms(
            1,
            [
                (Monomial(vec![2]), BigRational::new(1.into(), 2.into())),
                (Monomial(vec![1]), BigRational::new((-1).into(), 2.into())),
            ],
            &Rationals,
        );
        assert!(ModPoly::from_qpoly(2, 2, 0, &f).is_none());
        let g = ModPoly::from_qpoly(2, 2, 1, &f).unwrap();
        assert_eq!(g.eval(&[2]), 2);
        assert_eq!(g.eval(&[3]), 2);
        assert_eq!(g.eval(&[1]), 0);
    }

    #[test]
    fn modulus_limits() {
        assert_eq!(small_modulus(2, 62), Some(1 << 62));
        assert_eq!(small_modulus(2, 63), None);
        assert_eq!(small_modulus(3, 0), Some(1));
    }
}
