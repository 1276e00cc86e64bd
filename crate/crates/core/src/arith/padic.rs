use alloc::format;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{mod_inverse, pow_big, pow_int, split_int, val_u64, Valuation};
use crate::error::{Error, Result};

/// An element of `Q_p` known to finitely many digits.
///
/// A nonzero value is `p^val · unit` with `unit` known modulo `p^prec`
/// (`prec` is the count of known digits). A zero value is either exact or
/// "zero at precision": known to vanish modulo `p^abs` and nothing more.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicNumber {
    prime: u64,
    repr: Repr,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Zero { abs: Option<i64> },
    Unit { val: i64, unit: BigUint, prec: u32 },
}

/// A residue `value mod p^depth`, the codomain of angular components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueValue {
    pub prime: u64,
    pub depth: u32,
    pub value: BigUint,
}

impl ResidueValue {
    pub fn mul(&self, other: &ResidueValue) -> ResidueValue {
        assert_eq!(self.prime, other.prime);
        let depth = self.depth.min(other.depth);
        let m = pow_big(self.prime, depth);
        ResidueValue { prime: self.prime, depth, value: (&self.value * &other.value) % m }
    }
}

impl PadicNumber {
    pub fn zero(prime: u64) -> Self {
        PadicNumber { prime, repr: Repr::Zero { abs: None } }
    }

    /// A value known only to be divisible by `p^abs`.
    pub fn zero_at(prime: u64, abs: i64) -> Self {
        PadicNumber { prime, repr: Repr::Zero { abs: Some(abs) } }
    }

    /// `p^val · unit` with `prec` known digits; `unit` is reduced and must be prime to `p`.
    pub fn from_parts(prime: u64, val: i64, unit: &BigInt, prec: u32) -> Result<Self> {
        if prec == 0 {
            return Err(Error::InvalidInput("precision must be at least 1".into()));
        }
        let m = pow_int(prime, prec);
        let u = unit.mod_floor(&m);
        if (&u % BigInt::from(prime)).is_zero() {
            return Err(Error::InvalidInput(format!("unit {unit} is divisible by {prime}")));
        }
        Ok(PadicNumber {
            prime,
            repr: Repr::Unit { val, unit: u.to_biguint().expect("non-negative"), prec },
        })
    }

    pub fn from_integer(prime: u64, n: &BigInt, prec: u32) -> Self {
        match split_int(prime, n) {
            None => Self::zero(prime),
            Some((v, rest)) => Self::from_parts(prime, v as i64, &rest, prec.max(1))
                .expect("rest is a unit"),
        }
    }

    pub fn from_i64(prime: u64, n: i64, prec: u32) -> Self {
        Self::from_integer(prime, &BigInt::from(n), prec)
    }

    pub fn from_rational(prime: u64, x: &BigRational, prec: u32) -> Self {
        if x.is_zero() {
            return Self::zero(prime);
        }
        let (vn, un) = split_int(prime, x.numer()).expect("nonzero");
        let (vd, ud) = split_int(prime, x.denom()).expect("nonzero");
        let prec = prec.max(1);
        let m = pow_int(prime, prec);
        let inv = mod_inverse(&ud, &m).expect("denominator unit is invertible");
        Self::from_parts(prime, vn as i64 - vd as i64, &(un * inv), prec).expect("unit")
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Valuation; `+∞` iff the value is zero-flagged.
    pub fn ord(&self) -> Valuation {
        match &self.repr {
            Repr::Zero { .. } => Valuation::Infinite,
            Repr::Unit { val, .. } => Valuation::Finite(*val),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { .. })
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { abs: None })
    }

    /// Relative precision (known unit digits); `None` for zero.
    pub fn precision(&self) -> Option<u32> {
        match &self.repr {
            Repr::Unit { prec, .. } => Some(*prec),
            Repr::Zero { .. } => None,
        }
    }

    /// The value is known modulo `p^abs`; `None` means exactly known.
    pub fn abs_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero { abs } => *abs,
            Repr::Unit { val, prec, .. } => Some(val + *prec as i64),
        }
    }

    pub fn unit(&self) -> Option<&BigUint> {
        match &self.repr {
            Repr::Unit { unit, .. } => Some(unit),
            Repr::Zero { .. } => None,
        }
    }

    /// The rational `p^val · unit` represented by the known digits.
    pub fn to_rational(&self) -> BigRational {
        match &self.repr {
            Repr::Zero { .. } => BigRational::zero(),
            Repr::Unit { val, unit, .. } => {
                let u = BigRational::from_integer(BigInt::from_biguint(Sign::Plus, unit.clone()));
                u * super::pow_rat(self.prime, *val)
            }
        }
    }

    /// Residue modulo `p^k`; requires `ord ≥ 0` and `k` known digits.
    pub fn residue(&self, k: u32) -> Result<BigUint> {
        let modulus = pow_big(self.prime, k);
        match &self.repr {
            Repr::Zero { abs } => match abs {
                Some(a) if *a < k as i64 => {
                    Err(Error::InsufficientPrecision { needed: k as i64, available: *a })
                }
                _ => Ok(BigUint::zero()),
            },
            Repr::Unit { val, unit, prec } => {
                if *val < 0 {
                    return Err(Error::InvalidInput("negative valuation has no residue".into()));
                }
                let abs = val + *prec as i64;
                if abs < k as i64 {
                    return Err(Error::InsufficientPrecision { needed: k as i64, available: abs });
                }
                if *val >= k as i64 {
                    return Ok(BigUint::zero());
                }
                Ok((unit * pow_big(self.prime, *val as u32)) % modulus)
            }
        }
    }

    /// Drops digits so that at most `prec` unit digits remain.
    pub fn truncate(&self, prec: u32) -> Self {
        match &self.repr {
            Repr::Unit { val, unit, prec: p0 } if *p0 > prec => PadicNumber {
                prime: self.prime,
                repr: Repr::Unit {
                    val: *val,
                    unit: unit % pow_big(self.prime, prec.max(1)),
                    prec: prec.max(1),
                },
            },
            _ => self.clone(),
        }
    }

    /// Compares `|self|` with `|other|`.
    ///
    /// Fails when the answer depends on digits of a zero-at-precision value
    /// that are not known.
    pub fn norm_cmp(&self, other: &PadicNumber) -> Result<Ordering> {
        if self.prime != other.prime {
            return Err(Error::RingMismatch);
        }
        match (&self.repr, &other.repr) {
            (Repr::Unit { val: a, .. }, Repr::Unit { val: b, .. }) => Ok(b.cmp(a)),
            (Repr::Unit { val, .. }, Repr::Zero { abs }) => match abs {
                None => Ok(Ordering::Greater),
                Some(a) if val < a => Ok(Ordering::Greater),
                Some(_) => Err(Error::Indeterminate("norm of a zero-at-precision value".into())),
            },
            (Repr::Zero { abs }, Repr::Unit { val, .. }) => match abs {
                None => Ok(Ordering::Less),
                Some(a) if val < a => Ok(Ordering::Less),
                Some(_) => Err(Error::Indeterminate("norm of a zero-at-precision value".into())),
            },
            (Repr::Zero { abs: None }, Repr::Zero { abs: None }) => Ok(Ordering::Equal),
            _ => Err(Error::Indeterminate("comparing two zero-at-precision values".into())),
        }
    }

    /// Angular component modulo `n·M`, i.e. the unit reduced mod `p^{v_p(n)+1}`.
    pub fn ac(&self, n: u64) -> Result<ResidueValue> {
        if n == 0 {
            return Err(Error::InvalidInput("ac_n needs n ≥ 1".into()));
        }
        let depth = val_u64(self.prime, n).expect("n > 0") + 1;
        match &self.repr {
            Repr::Zero { abs: None } => {
                Ok(ResidueValue { prime: self.prime, depth, value: BigUint::zero() })
            }
            Repr::Zero { .. } => Err(Error::Indeterminate("ac of a zero-at-precision value".into())),
            Repr::Unit { unit, prec, .. } => {
                if *prec < depth {
                    return Err(Error::InsufficientPrecision {
                        needed: depth as i64,
                        available: *prec as i64,
                    });
                }
                Ok(ResidueValue {
                    prime: self.prime,
                    depth,
                    value: unit % pow_big(self.prime, depth),
                })
            }
        }
    }

    fn check_prime(&self, other: &PadicNumber) {
        assert_eq!(self.prime, other.prime, "p-adic operands over different primes");
    }

    /// Exact sum to the precision both operands justify.
    ///
    /// Panics if the primes differ.
    pub fn add(&self, other: &PadicNumber) -> PadicNumber {
        self.check_prime(other);
        let p = self.prime;
        if self.is_exact_zero() {
            return other.clone();
        }
        if other.is_exact_zero() {
            return self.clone();
        }
        let abs = match (self.abs_precision(), other.abs_precision()) {
            (Some(a), Some(b)) => a.min(b),
            _ => unreachable!("exact zeros handled above"),
        };
        let vmin = match (self.ord(), other.ord()) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.min(b),
            (Valuation::Finite(a), _) | (_, Valuation::Finite(a)) => a,
            _ => return PadicNumber::zero_at(p, abs),
        };
        if abs <= vmin {
            return PadicNumber::zero_at(p, abs);
        }
        let scaled = |x: &PadicNumber| -> BigInt {
            match &x.repr {
                Repr::Unit { val, unit, .. } => {
                    BigInt::from_biguint(Sign::Plus, unit.clone()) * pow_int(p, (val - vmin) as u32)
                }
                Repr::Zero { .. } => BigInt::zero(),
            }
        };
        let width = (abs - vmin) as u32;
        let sum = (scaled(self) + scaled(other)).mod_floor(&pow_int(p, width));
        match split_int(p, &sum) {
            None => PadicNumber::zero_at(p, abs),
            Some((v, rest)) => {
                PadicNumber::from_parts(p, vmin + v as i64, &rest, width - v).expect("unit")
            }
        }
    }

    pub fn neg(&self) -> PadicNumber {
        match &self.repr {
            Repr::Zero { .. } => self.clone(),
            Repr::Unit { val, unit, prec } => {
                let m = pow_big(self.prime, *prec);
                PadicNumber {
                    prime: self.prime,
                    repr: Repr::Unit { val: *val, unit: (&m - unit) % &m, prec: *prec },
                }
            }
        }
    }

    pub fn sub(&self, other: &PadicNumber) -> PadicNumber {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PadicNumber) -> PadicNumber {
        self.check_prime(other);
        let p = self.prime;
        match (&self.repr, &other.repr) {
            (Repr::Zero { abs: None }, _) | (_, Repr::Zero { abs: None }) => PadicNumber::zero(p),
            (Repr::Zero { abs: Some(a) }, Repr::Zero { abs: Some(b) }) => {
                PadicNumber::zero_at(p, a + b)
            }
            (Repr::Zero { abs: Some(a) }, Repr::Unit { val, .. })
            | (Repr::Unit { val, .. }, Repr::Zero { abs: Some(a) }) => {
                PadicNumber::zero_at(p, a + val)
            }
            (Repr::Unit { val: v1, unit: u1, prec: k1 }, Repr::Unit { val: v2, unit: u2, prec: k2 }) => {
                let prec = (*k1).min(*k2);
                PadicNumber {
                    prime: p,
                    repr: Repr::Unit { val: v1 + v2, unit: (u1 * u2) % pow_big(p, prec), prec },
                }
            }
        }
    }

    /// Quotient; fails when the divisor is zero-flagged.
    pub fn div(&self, other: &PadicNumber) -> Result<PadicNumber> {
        self.check_prime(other);
        let p = self.prime;
        let (v2, u2, k2) = match &other.repr {
            Repr::Unit { val, unit, prec } => (*val, unit, *prec),
            Repr::Zero { .. } => return Err(Error::Indeterminate("division by zero".into())),
        };
        Ok(match &self.repr {
            Repr::Zero { abs: None } => PadicNumber::zero(p),
            Repr::Zero { abs: Some(a) } => PadicNumber::zero_at(p, a - v2),
            Repr::Unit { val, unit, prec } => {
                let prec = (*prec).min(k2);
                let m = pow_int(p, prec);
                let inv = mod_inverse(&BigInt::from_biguint(Sign::Plus, u2.clone()), &m)
                    .expect("unit is invertible");
                let u = BigInt::from_biguint(Sign::Plus, unit.clone()) * inv;
                PadicNumber::from_parts(p, val - v2, &u, prec)?
            }
        })
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.repr, Repr::Unit { val: 0, unit, .. } if unit.is_one())
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero { abs: None } => f.write_str("0"),
            Repr::Zero { abs: Some(a) } => write!(f, "O({}^{})", self.prime, a),
            Repr::Unit { val, unit, prec } => {
                write!(f, "{}*{}^{} + O({}^{})", unit, self.prime, val, self.prime, val + *prec as i64)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u64, n: i64) -> PadicNumber {
        PadicNumber::from_i64(p, n, 20)
    }

    #[test]
    fn ord_examples() {
        assert_eq!(z(3, 18).ord(), Valuation::Finite(2));
        assert_eq!(z(3, 0).ord(), Valuation::Infinite);
        assert_eq!(z(5, 75).ord(), Valuation::Finite(2));
    }

    #[test]
    fn norm_cmp_examples() {
        assert_eq!(z(3, 18).norm_cmp(&z(3, 6)).unwrap(), Ordering::Less);
        let x = z(3, 7);
        assert_eq!(x.norm_cmp(&x).unwrap(), Ordering::Equal);
        assert_eq!(z(3, 1).norm_cmp(&z(3, 0)).unwrap(), Ordering::Greater);
    }

    #[test]
    fn norm_cmp_zero_at_precision() {
        let fuzzy = PadicNumber::zero_at(3, 4);
        assert_eq!(z(3, 9).norm_cmp(&fuzzy).unwrap(), Ordering::Greater);
        assert!(matches!(z(3, 81).norm_cmp(&fuzzy), Err(Error::Indeterminate(_))));
        assert!(matches!(fuzzy.norm_cmp(&fuzzy), Err(Error::Indeterminate(_))));
        assert!(z(3, 1).norm_cmp(&z(5, 1)).is_err());
    }

    #[test]
    fn angular_components() {
        let r = z(3, 18).ac(1).unwrap();
        assert_eq!((r.depth, r.value), (1, BigUint::from(2u32)));
        let r = z(5, 75).ac(5).unwrap();
        assert_eq!((r.depth, r.value), (2, BigUint::from(3u32)));
        assert_eq!(z(3, 0).ac(1).unwrap().value, BigUint::zero());
        let low = PadicNumber::from_i64(5, 7, 1);
        assert!(matches!(low.ac(25), Err(Error::InsufficientPrecision { .. })));
    }

    #[test]
    fn cancellation_gives_zero_at_precision() {
        let a = PadicNumber::from_i64(3, 10, 4);
        let diff = a.sub(&a);
        assert!(diff.is_zero());
        assert_eq!(diff.abs_precision(), Some(4));
    }

    #[test]
    fn precision_tracks_through_sum() {
        // 1 + 2 = 3 at 4 digits: valuation rises, relative precision drops.
        let s = z(3, 1).truncate(4).add(&z(3, 2).truncate(4));
        assert_eq!(s.ord(), Valuation::Finite(1));
        assert_eq!(s.precision(), Some(3));
        assert_eq!(s.to_rational(), BigRational::from_integer(3.into()));
    }

    #[test]
    fn rational_round_trip() {
        let x = BigRational::new(BigInt::from(-7), BigInt::from(12));
        let px = PadicNumber::from_rational(3, &x, 10);
        assert_eq!(px.ord(), Valuation::Finite(-1));
        let back = px.mul(&PadicNumber::from_i64(3, 12, 10));
        assert_eq!(back.sub(&z(3, -7)).abs_precision(), Some(10));
        assert!(back.sub(&z(3, -7)).is_zero());
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = z(5, 35);
        let b = z(5, 3);
        let q = a.mul(&b).div(&b).unwrap();
        assert!(q.sub(&a).is_zero());
        assert!(a.div(&PadicNumber::zero(5)).is_err());
    }
}
