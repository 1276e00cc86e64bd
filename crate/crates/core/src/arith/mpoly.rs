use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Monomial;

/// A commutative ring described by a context value.
///
/// The context carries runtime data such as the characteristic, so the same
/// polynomial code serves `Z`, `Q` and `F_p`.
pub trait Ring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

/// `F_p` with elements stored as residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl Ring for Integers {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
}

impl Ring for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
}

impl Ring for PrimeField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
}

impl PrimeField {
    pub fn reduce(&self, n: &BigInt) -> u64 {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }
}

/// A sparse polynomial in `nvars` variables; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly<E> {
    nvars: usize,
    terms: BTreeMap<Monomial, E>,
}

pub type QPoly = MPoly<BigRational>;
pub type ZPoly = MPoly<BigInt>;

impl<E: Clone + PartialEq + Debug> MPoly<E> {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant<R: Ring<Elem = E>>(nvars: usize, c: E, ring: &R) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c, ring);
        p
    }

    pub fn var<R: Ring<Elem = E>>(nvars: usize, i: usize, ring: &R) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), ring.one(), ring);
        p
    }

    pub fn from_terms<R, I>(nvars: usize, terms: I, ring: &R) -> Self
    where
        R: Ring<Elem = E>,
        I: IntoIterator<Item = (Monomial, E)>,
    {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, c, ring);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&E> {
        self.terms.get(m)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term<R: Ring<Elem = E>>(&mut self, m: Monomial, c: E, ring: &R) {
        if ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = ring.add(existing, &c);
                if ring.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone(), ring);
        }
        out
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), ring.neg(c))).collect(),
        }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        self.add(&other.neg(ring), ring)
    }

    pub fn scale<R: Ring<Elem = E>>(&self, c: &E, ring: &R) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), ring.mul(a, c), ring);
        }
        out
    }

    pub fn mul_monomial<R: Ring<Elem = E>>(&self, mono: &Monomial, c: &E, ring: &R) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            out.add_term(m.mul(mono), ring.mul(a, c), ring);
        }
        out
    }

    pub fn mul<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m1, a) in &self.terms {
            for (m2, b) in &other.terms {
                out.add_term(m1.mul(m2), ring.mul(a, b), ring);
            }
        }
        out
    }

    pub fn pow<R: Ring<Elem = E>>(&self, e: u32, ring: &R) -> Self {
        let mut acc = Self::constant(self.nvars, ring.one(), ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ring);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, ring);
            }
        }
        acc
    }

    pub fn eval<R: Ring<Elem = E>>(&self, point: &[E], ring: &R) -> E {
        assert_eq!(point.len(), self.nvars, "evaluation arity");
        let mut total = ring.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, e) in point.iter().zip(&m.0) {
                for _ in 0..*e {
                    t = ring.mul(&t, x);
                }
            }
            total = ring.add(&total, &t);
        }
        total
    }

    /// Substitutes `x_i ↦ images[i]`; all images share one variable count.
    pub fn compose<R: Ring<Elem = E>>(&self, images: &[MPoly<E>], ring: &R) -> MPoly<E> {
        assert_eq!(images.len(), self.nvars, "composition arity");
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut powers: Vec<Vec<MPoly<E>>> = images
            .iter()
            .map(|img| alloc::vec![MPoly::constant(target, ring.one(), ring), img.clone()])
            .collect();
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone(), ring);
            for (i, e) in m.0.iter().enumerate() {
                let e = *e as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&images[i], ring);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e], ring);
            }
            out = out.add(&t, ring);
        }
        out
    }

    pub fn map_coeffs<F, R2>(&self, f: F, ring: &R2) -> MPoly<R2::Elem>
    where
        R2: Ring,
        F: Fn(&E) -> R2::Elem,
    {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c), ring);
        }
        out
    }

    /// Reindexes into `nvars` variables, sending variable `i` to `slot[i]`.
    pub fn embed<R: Ring<Elem = E>>(&self, nvars: usize, slot: &[usize], ring: &R) -> Self {
        let mut out = Self::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = alloc::vec![0; nvars];
            for (i, k) in m.0.iter().enumerate() {
                e[slot[i]] += k;
            }
            out.add_term(Monomial(e), c.clone(), ring);
        }
        out
    }
}

impl QPoly {
    /// Divided derivative `(1/β!) ∂^β f`.
    pub fn divided_derivative(&self, beta: &[u32]) -> QPoly {
        let mut out = QPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0.iter().zip(beta).any(|(a, b)| a < b) {
                continue;
            }
            let mut coeff = c.clone();
            for (a, b) in m.0.iter().zip(beta) {
                coeff *= BigRational::from_integer(binomial_big(*a, *b));
            }
            let e = m.0.iter().zip(beta).map(|(a, b)| a - b).collect();
            out.add_term(Monomial(e), coeff, &Rationals);
        }
        out
    }

    pub fn from_integer_poly(p: &ZPoly) -> QPoly {
        p.map_coeffs(|c| BigRational::from_integer(c.clone()), &Rationals)
    }
}

pub(crate) fn binomial_big(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
