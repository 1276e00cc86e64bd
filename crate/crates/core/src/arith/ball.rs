use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::{pow_big, pow_int, val_rat, PadicNumber, Valuation};
use crate::error::{Error, Result};

/// A closed polydisc `{x ∈ Z_p^m : ord(x_i − c_i) ≥ radius}`.
///
/// Centers are stored as canonical residues in `[0, p^radius)`, so two balls
/// of equal radius compare equal exactly when they coincide as sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ball {
    prime: u64,
    radius: u32,
    center: Vec<BigUint>,
}

impl Ball {
    /// `Z_p^m`.
    pub fn whole(prime: u64, dim: usize) -> Self {
        Ball { prime, radius: 0, center: alloc::vec![BigUint::zero(); dim] }
    }

    pub fn from_integers(prime: u64, center: &[BigInt], radius: u32) -> Self {
        let m = pow_int(prime, radius);
        let center = center
            .iter()
            .map(|c| c.mod_floor(&m).to_biguint().expect("non-negative"))
            .collect();
        Ball { prime, radius, center }
    }

    /// Ball around p-adic centers; each center needs `ord ≥ 0` and `radius` known digits.
    pub fn new(prime: u64, center: &[PadicNumber], radius: u32) -> Result<Self> {
        let mut residues = Vec::with_capacity(center.len());
        for c in center {
            if c.prime() != prime {
                return Err(Error::RingMismatch);
            }
            if c.ord() < Valuation::Finite(0) {
                return Err(Error::InvalidInput("ball centers must be p-adic integers".into()));
            }
            residues.push(c.residue(radius)?);
        }
        Ok(Ball { prime, radius, center: residues })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// Valuative radius.
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn center_residues(&self) -> &[BigUint] {
        &self.center
    }

    pub fn center_integers(&self) -> Vec<BigInt> {
        self.center.iter().map(|c| BigInt::from_biguint(Sign::Plus, c.clone())).collect()
    }

    pub fn center_rationals(&self) -> Vec<BigRational> {
        self.center_integers().into_iter().map(BigRational::from_integer).collect()
    }

    pub fn center(&self, prec: u32) -> Vec<PadicNumber> {
        self.center_integers()
            .iter()
            .map(|c| PadicNumber::from_integer(self.prime, c, prec))
            .collect()
    }

    pub fn contains(&self, x: &[PadicNumber]) -> Result<bool> {
        if x.len() != self.dim() {
            return Err(Error::InvalidInput("dimension mismatch".into()));
        }
        for (xi, ci) in x.iter().zip(&self.center) {
            if xi.ord() < Valuation::Finite(0) {
                return Ok(false);
            }
            if xi.residue(self.radius)? != *ci {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains_rational(&self, x: &[BigRational]) -> bool {
        x.len() == self.dim()
            && x.iter().zip(self.center_rationals()).all(|(xi, ci)| {
                val_rat(self.prime, &(xi - ci)).at_least(self.radius as i64)
            })
    }

    pub fn contains_integers(&self, x: &[BigInt]) -> bool {
        let m = pow_int(self.prime, self.radius);
        x.len() == self.dim()
            && x.iter().zip(&self.center).all(|(xi, ci)| {
                xi.mod_floor(&m) == BigInt::from_biguint(Sign::Plus, ci.clone())
            })
    }

    pub fn contains_ball(&self, other: &Ball) -> bool {
        other.prime == self.prime
            && other.radius >= self.radius
            && self.contains_integers(&other.center_integers())
    }

    pub fn is_disjoint(&self, other: &Ball) -> bool {
        !(self.contains_ball(other) || other.contains_ball(self))
    }

    /// The `p^m` sub-balls of radius `radius + 1`, last coordinate varying fastest.
    pub fn subdivide(&self) -> Vec<Ball> {
        let p = self.prime;
        let step = pow_big(p, self.radius);
        let m = self.dim();
        let count = (p as usize).pow(m as u32);
        let mut out = Vec::with_capacity(count);
        let mut digits = alloc::vec![0u64; m];
        for _ in 0..count {
            let center =
                (0..m).map(|i| &self.center[i] + &step * BigUint::from(digits[i])).collect();
            out.push(Ball { prime: p, radius: self.radius + 1, center });
            for i in (0..m).rev() {
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
            }
        }
        out
    }

    /// All sub-balls at valuative radius `radius` (which must not be smaller than ours).
    pub fn refine_to(&self, radius: u32) -> Vec<Ball> {
        let mut layer = alloc::vec![self.clone()];
        for _ in self.radius..radius {
            layer = layer.iter().flat_map(Ball::subdivide).collect();
        }
        layer
    }

    /// The sub-ball of radius `radius` containing the p-integral point `x`.
    pub fn ball_of(&self, x: &[BigInt], radius: u32) -> Ball {
        Ball::from_integers(self.prime, x, radius)
    }

    /// Same center, smaller radius.
    pub fn with_radius(&self, radius: u32) -> Ball {
        Ball::from_integers(self.prime, &self.center_integers(), radius)
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("B(")?;
        for (i, c) in self.center.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "; {}^{})", self.prime, self.radius)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subdivide_z3() {
        let parts = Ball::whole(3, 1).subdivide();
        let expected: Vec<Ball> = (0..3)
            .map(|c| Ball::from_integers(3, &[BigInt::from(c)], 1))
            .collect();
        assert_eq!(parts, expected);
    }

    #[test]
    fn subdivide_counts() {
        assert_eq!(Ball::whole(2, 2).subdivide().len(), 4);
        let twice: Vec<Ball> = Ball::whole(3, 1).subdivide().iter().flat_map(Ball::subdivide).collect();
        assert_eq!(twice.len(), 9);
        assert!(twice.iter().all(|b| b.radius() == 2));
        assert_eq!(Ball::whole(3, 1).refine_to(2), twice);
    }

    #[test]
    fn membership_uses_radius() {
        let b = Ball::from_integers(3, &[BigInt::from(1)], 2);
        assert!(b.contains_integers(&[BigInt::from(10)]));
        assert!(!b.contains_integers(&[BigInt::from(4)]));
        assert!(b.contains_integers(&[BigInt::from(-8)]));
        let x = [PadicNumber::from_i64(3, 19, 5)];
        assert!(b.contains(&x).unwrap());
        let vague = [PadicNumber::from_i64(3, 1, 1)];
        assert!(b.contains(&vague).is_err());
        let third = BigRational::new(1.into(), 3.into());
        assert!(!b.contains_rational(&[third]));
    }
}
