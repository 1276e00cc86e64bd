//! Taylor polynomials, C^r-norms and `T_r` certificates for polynomial maps on balls.
//!
//! A map `f : B → Q_p^n` on a ball `B ⊂ Z_p^m` satisfies `T_r` when every divided
//! derivative `(1/β!)∂^β f_i` with `|β| ≤ r` has norm at most 1 on `B`, and
//! `|f(x) − T^{<r}_y f(x)| ≤ |x − y|^r` for all `x, y ∈ B`.
//!
//! Three strategies decide this:
//!
//! - [`Strategy::Residual`] is a proof. Writing `y = c + p^α u` and
//!   `x = y + p^α p^k w` with `w` primitive, the remainder divided by
//!   `p^{r(α+k)}` is a polynomial `G(u, w, p^k)`. The property holds iff `G` is
//!   p-integral at every such point, and that only depends on residues modulo
//!   `p^s`, where `p^{-s}` bounds the coefficients of `G`.
//! - [`Strategy::Exhaustive`] checks every pair of integer representatives of
//!   `B` modulo `p^K`.
//! - [`Strategy::Sampled`] checks random pairs drawn from a seeded generator.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{
    pow_int, pow_rat, small_modulus, val_rat, Ball, ModPoly, Monomial, QPoly, Rationals, TruncatedPoly,
    Valuation,
};
use crate::combinatorics::divisibility_for;
use crate::error::{Error, Result};

/// Default bound on the number of residue points or pairs one check may visit.
pub const DEFAULT_CAP: u64 = 1 << 27;

/// A polynomial map `Z_p^m ⊃ B → Q_p^n` with rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap {
    pub prime: u64,
    pub domain: Ball,
    pub components: Vec<QPoly>,
    /// Declared valuation floor of a dropped power-series tail, if the map
    /// stands for a truncated series.
    pub tail_floor: Option<i64>,
}

impl PolyMap {
    pub fn new(prime: u64, domain: Ball, components: Vec<QPoly>) -> Result<Self> {
        if domain.prime() != prime {
            return Err(Error::RingMismatch);
        }
        if components.is_empty() {
            return Err(Error::InvalidInput("a map needs at least one component".into()));
        }
        if components.iter().any(|c| c.nvars() != domain.dim()) {
            return Err(Error::InvalidInput("component arity differs from the domain dimension".into()));
        }
        Ok(PolyMap { prime, domain, components, tail_floor: None })
    }

    /// The map on all of `Z_p^m`.
    pub fn on_whole(prime: u64, components: Vec<QPoly>) -> Result<Self> {
        let m = components.first().map_or(0, QPoly::nvars);
        Self::new(prime, Ball::whole(prime, m), components)
    }

    pub fn with_tail_floor(mut self, floor: i64) -> Self {
        self.tail_floor = Some(floor);
        self
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn codim(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().filter_map(QPoly::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.components.iter().map(|c| c.eval(x, &Rationals)).collect()
    }

    /// The same map on a smaller ball.
    pub fn restrict(&self, ball: Ball) -> Result<PolyMap> {
        if !self.domain.contains_ball(&ball) {
            return Err(Error::InvalidInput("restriction must be to a sub-ball".into()));
        }
        Ok(PolyMap { domain: ball, ..self.clone() })
    }

    /// `self ∘ inner`, on the domain of `inner`.
    pub fn compose_after(&self, inner: &PolyMap) -> Result<PolyMap> {
        if self.prime != inner.prime {
            return Err(Error::RingMismatch);
        }
        if inner.codim() != self.dim() {
            return Err(Error::InvalidInput("codomain and domain dimensions differ".into()));
        }
        let components = self.components.iter().map(|g| g.compose(&inner.components, &Rationals)).collect();
        let tail_floor = match (self.tail_floor, inner.tail_floor) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Ok(PolyMap { prime: self.prime, domain: inner.domain.clone(), components, tail_floor })
    }
}

/// Min coefficient valuation (`+∞` for zero).
pub fn gauss_norm(p: u64, f: &QPoly) -> Valuation {
    f.terms().map(|(_, c)| val_rat(p, c)).min().unwrap_or(Valuation::Infinite)
}

/// Gauss norm of a polynomial in `t` with rational coefficients.
pub fn gauss_norm_truncated(p: u64, f: &TruncatedPoly) -> Result<Valuation> {
    let coeffs = f.q_coeffs().ok_or_else(|| Error::InvalidInput("Gauss norm needs Q coefficients".into()))?;
    Ok(coeffs.iter().map(|c| val_rat(p, c)).min().unwrap_or(Valuation::Infinite))
}

/// `f(c + p^α u)` as a polynomial in `u`.
pub fn recenter(p: u64, f: &QPoly, center: &[BigInt], alpha: u32) -> QPoly {
    let m = f.nvars();
    let scale = BigRational::from_integer(pow_int(p, alpha));
    let images: Vec<QPoly> = center
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut v = QPoly::var(m, i, &Rationals).scale(&scale, &Rationals);
            v.add_term(Monomial::one(m), BigRational::from_integer(c.clone()), &Rationals);
            v
        })
        .collect();
    f.compose(&images, &Rationals)
}

/// The degree `< r` Taylor expansion of a map at `y`, in the shifted variables `h = x − y`.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorPolynomial {
    pub base: Vec<BigRational>,
    pub order: u32,
    pub components: Vec<QPoly>,
}

impl TaylorPolynomial {
    pub fn eval(&self, x: &[BigRational]) -> Vec<BigRational> {
        let h: Vec<BigRational> = x.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        self.components.iter().map(|c| c.eval(&h, &Rationals)).collect()
    }

    /// The expansion as polynomials in `x` again.
    pub fn in_original_variables(&self) -> Vec<QPoly> {
        let m = self.base.len();
        let images: Vec<QPoly> = self
            .base
            .iter()
            .enumerate()
            .map(|(i, y)| {
                let mut v = QPoly::var(m, i, &Rationals);
                v.add_term(Monomial::one(m), -y.clone(), &Rationals);
                v
            })
            .collect();
        self.components.iter().map(|c| c.compose(&images, &Rationals)).collect()
    }
}

fn shift(f: &QPoly, y: &[BigRational]) -> QPoly {
    let m = f.nvars();
    let images: Vec<QPoly> = y
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut v = QPoly::var(m, i, &Rationals);
            v.add_term(Monomial::one(m), c.clone(), &Rationals);
            v
        })
        .collect();
    f.compose(&images, &Rationals)
}

fn truncate_below(f: &QPoly, r: u32) -> QPoly {
    QPoly::from_terms(
        f.nvars(),
        f.terms().filter(|(m, _)| m.degree() < r).map(|(m, c)| (m.clone(), c.clone())),
        &Rationals,
    )
}

/// `T^{<r}_y f`: the divided derivatives of `f` at `y` up to order `r − 1`.
pub fn taylor_poly(f: &PolyMap, y: &[BigRational], r: u32) -> Result<TaylorPolynomial> {
    if r == 0 {
        return Err(Error::InvalidInput("Taylor order must be positive".into()));
    }
    if !f.domain.contains_rational(y) {
        return Err(Error::InvalidInput("base point outside the domain".into()));
    }
    let components = f.components.iter().map(|c| truncate_below(&shift(c, y), r)).collect();
    Ok(TaylorPolynomial { base: y.to_vec(), order: r, components })
}

/// Valuation of the C^r-norm of `f` on `ball`, through Gauss norms of the
/// recentered and rescaled divided derivatives.
///
/// This is never larger than the pointwise supremum over `Z_p`-points and
/// agrees with it once every component has degree below `p`.
pub fn cr_norm(f: &PolyMap, r: u32, ball: &Ball) -> Valuation {
    let center = ball.center_integers();
    let mut best = Valuation::Infinite;
    for comp in &f.components {
        for beta in Monomial::all_up_to_degree(f.dim(), r) {
            let d = comp.divided_derivative(beta.exps());
            best = best.min(gauss_norm(f.prime, &recenter(f.prime, &d, &center, ball.radius())));
        }
    }
    best
}

/// Min over integer representatives of `ball` mod `p^digits` of the pointwise
/// valuations `ord((1/β!)∂^β f_i(x))`, `|β| ≤ r`.
pub fn pointwise_cr_valuation(f: &PolyMap, r: u32, ball: &Ball, digits: u32) -> Result<Valuation> {
    let reps = Representatives::new(f.prime, ball, digits, DEFAULT_CAP)?;
    let derivs: Vec<QPoly> = f
        .components
        .iter()
        .flat_map(|c| Monomial::all_up_to_degree(f.dim(), r).into_iter().map(move |b| c.divided_derivative(b.exps())))
        .collect();
    let mut best = Valuation::Infinite;
    for j in 0..reps.count() {
        let x = reps.point(j);
        for d in &derivs {
            best = best.min(val_rat(f.prime, &d.eval(&x, &Rationals)));
        }
    }
    Ok(best)
}

/// Integer representatives `c + p^α j` of a ball modulo `p^digits`.
#[derive(Clone, Debug)]
struct Representatives {
    center: Vec<BigInt>,
    step: BigInt,
    per_axis: u64,
    count: u64,
}

impl Representatives {
    fn new(prime: u64, ball: &Ball, digits: u32, cap: u64) -> Result<Self> {
        if digits < ball.radius() {
            return Err(Error::InvalidInput("digits must be at least the ball radius".into()));
        }
        let per_axis = small_modulus(prime, digits - ball.radius())
            .ok_or(Error::CapExceeded { what: "representatives", needed: u128::MAX, cap: cap as u128 })?;
        let needed = (per_axis as u128).checked_pow(ball.dim() as u32).unwrap_or(u128::MAX);
        if needed > cap as u128 {
            return Err(Error::CapExceeded { what: "representatives", needed, cap: cap as u128 });
        }
        Ok(Representatives {
            center: ball.center_integers(),
            step: pow_int(prime, ball.radius()),
            per_axis,
            count: needed as u64,
        })
    }

    fn count(&self) -> u64 {
        self.count
    }

    fn offsets(&self, mut index: u64) -> Vec<u64> {
        let mut out = alloc::vec![0; self.center.len()];
        for slot in out.iter_mut().rev() {
            *slot = index % self.per_axis;
            index /= self.per_axis;
        }
        out
    }

    fn integers(&self, index: u64) -> Vec<BigInt> {
        self.offsets(index)
            .into_iter()
            .zip(&self.center)
            .map(|(j, c)| c + &self.step * BigInt::from(j))
            .collect()
    }

    fn point(&self, index: u64) -> Vec<BigRational> {
        self.integers(index).into_iter().map(BigRational::from_integer).collect()
    }
}

/// How a `T_r` verdict was reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Exact residue-class proof over all of the ball.
    Residual,
    /// Every pair of representatives modulo `p^digits`.
    Exhaustive { digits: u32 },
    /// `samples` random pairs of representatives modulo `p^digits`.
    Sampled { seed: u64, samples: u64, digits: u32 },
}

/// Evidence that `T_r` fails, re-checkable with [`recheck_witness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `|f_i(x) − T^{<r}_y f_i(x)| > |x − y|^r`.
    Remainder { component: usize, x: Vec<BigRational>, y: Vec<BigRational> },
    /// `|(1/β!)∂^β f_i(x)| > 1`.
    Derivative { component: usize, x: Vec<BigRational>, beta: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Witness),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrCertificate {
    pub subject: PolyMap,
    pub order: u32,
    pub verdict: Verdict,
    pub strategy: Strategy,
    /// Set when the subject stands for a truncated power series.
    pub up_to_tail: bool,
}

impl TrCertificate {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Whether `ord(f(x) − T^{<r}_y f(x)) ≥ r·min_i ord(x_i − y_i)`.
pub fn remainder_ok(p: u64, f: &QPoly, r: u32, x: &[BigRational], y: &[BigRational]) -> bool {
    let h: Vec<BigRational> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    let dist = h.iter().map(|d| val_rat(p, d)).min().unwrap_or(Valuation::Infinite);
    let Some(dist) = dist.finite() else {
        return true;
    };
    let t = truncate_below(&shift(f, y), r).eval(&h, &Rationals);
    let rem = f.eval(x, &Rationals) - t;
    val_rat(p, &rem).at_least(r as i64 * dist)
}

/// Re-derives a failure witness from scratch with exact rational arithmetic.
pub fn recheck_witness(f: &PolyMap, r: u32, w: &Witness) -> bool {
    match w {
        Witness::Remainder { component, x, y } => {
            f.domain.contains_rational(x)
                && f.domain.contains_rational(y)
                && !remainder_ok(f.prime, &f.components[*component], r, x, y)
        }
        Witness::Derivative { component, x, beta } => {
            let d = f.components[*component].divided_derivative(beta);
            f.domain.contains_rational(x)
                && beta.iter().sum::<u32>() <= r
                && val_rat(f.prime, &d.eval(x, &Rationals)) < Valuation::Finite(0)
        }
    }
}

/// Decides `T_r` for `f` on its domain.
pub fn check_tr(f: &PolyMap, r: u32, strategy: Strategy) -> Result<TrCertificate> {
    check_tr_capped(f, r, strategy, DEFAULT_CAP)
}

pub fn check_tr_capped(f: &PolyMap, r: u32, strategy: Strategy, cap: u64) -> Result<TrCertificate> {
    if r == 0 {
        return Err(Error::InvalidInput("r must be positive".into()));
    }
    let verdict = match &strategy {
        Strategy::Residual => residual_verdict(f, r, cap)?,
        Strategy::Exhaustive { digits } => {
            let plan = ExhaustivePlan::new(f, r, *digits, cap)?;
            let scan = plan.scan(0..plan.base_count());
            plan.verdict(&[scan])
        }
        Strategy::Sampled { seed, samples, digits } => sampled_verdict(f, r, *seed, *samples, *digits)?,
    };
    Ok(TrCertificate { subject: f.clone(), order: r, verdict, strategy, up_to_tail: f.tail_floor.is_some() })
}

/// All residue tuples in `[0, modulus)^m`, last coordinate fastest.
fn residue_tuples(modulus: u64, m: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = (modulus as u128).pow(m as u32);
    (0..total).map(move |mut i| {
        let mut out = alloc::vec![0u64; m];
        for slot in out.iter_mut().rev() {
            *slot = (i % modulus as u128) as u64;
            i /= modulus as u128;
        }
        out
    })
}

fn cap_check(what: &'static str, needed: u128, cap: u64) -> Result<()> {
    if needed > cap as u128 {
        Err(Error::CapExceeded { what, needed, cap: cap as u128 })
    } else {
        Ok(())
    }
}

/// `s ≥ 0` such that `p^s·g` has p-integral coefficients, and its reduction mod `p^s`.
fn scaled_reduction(p: u64, g: &QPoly) -> Result<Option<ModPoly>> {
    let s = match gauss_norm(p, g).finite() {
        Some(v) if v < 0 => (-v) as u32,
        _ => return Ok(None),
    };
    ModPoly::from_qpoly(p, s, s as i64, g)
        .map(Some)
        .ok_or_else(|| Error::Unsupported(alloc::format!("denominator p^{s} is too large for residue checks")))
}

fn residual_verdict(f: &PolyMap, r: u32, cap: u64) -> Result<Verdict> {
    let p = f.prime;
    let m = f.dim();
    let center = f.domain.center_integers();
    let alpha = f.domain.radius();
    let step = pow_int(p, alpha);
    let to_point = |ints: Vec<BigInt>| -> Vec<BigRational> { ints.into_iter().map(BigRational::from_integer).collect() };

    // Remainder: G(u, w, t) in 2m+1 variables.
    let inv_scale = pow_rat(p, -(r as i64 * alpha as i64));
    for (ci, comp) in f.components.iter().enumerate() {
        let images: Vec<QPoly> = (0..m)
            .map(|i| {
                let mut v = QPoly::var(2 * m, i, &Rationals).add(&QPoly::var(2 * m, m + i, &Rationals), &Rationals);
                v = v.scale(&BigRational::from_integer(step.clone()), &Rationals);
                v.add_term(Monomial::one(2 * m), BigRational::from_integer(center[i].clone()), &Rationals);
                v
            })
            .collect();
        let expanded = comp.compose(&images, &Rationals);
        let mut g = QPoly::zero(2 * m + 1);
        for (mono, c) in expanded.terms() {
            let j: u32 = mono.exps()[m..].iter().sum();
            if j < r {
                continue;
            }
            let mut e = mono.exps().to_vec();
            e.push(j - r);
            g.add_term(Monomial(e), c * &inv_scale, &Rationals);
        }
        let Some(gm) = scaled_reduction(p, &g)? else {
            continue;
        };
        let modulus = gm.modulus();
        let s = (modulus as f64).log(p as f64).round() as u32;
        let per = (modulus as u128).pow(m as u32);
        let primitive = per - (modulus as u128 / p as u128).pow(m as u32);
        cap_check("residue classes", per * primitive * (s as u128 + 1), cap)?;
        for u in residue_tuples(modulus, m) {
            for k in 0..=s {
                let t = if k < s { p.pow(k) } else { 0 };
                for w in residue_tuples(modulus, m) {
                    if w.iter().all(|x| x % p == 0) {
                        continue;
                    }
                    let mut pt = u.clone();
                    pt.extend_from_slice(&w);
                    pt.push(t);
                    if gm.eval(&pt) != 0 {
                        let pk = pow_int(p, k);
                        let y: Vec<BigInt> = (0..m).map(|i| &center[i] + &step * BigInt::from(u[i])).collect();
                        let x: Vec<BigInt> =
                            (0..m).map(|i| &y[i] + &step * &pk * BigInt::from(w[i])).collect();
                        let witness = Witness::Remainder { component: ci, x: to_point(x), y: to_point(y) };
                        debug_assert!(recheck_witness(f, r, &witness));
                        return Ok(Verdict::Fails(witness));
                    }
                }
            }
        }
    }

    // Divided derivatives: integer-valued on the ball.
    for (ci, comp) in f.components.iter().enumerate() {
        for beta in Monomial::all_up_to_degree(m, r) {
            let d = recenter(p, &comp.divided_derivative(beta.exps()), &center, alpha);
            let Some(dm) = scaled_reduction(p, &d)? else {
                continue;
            };
            let modulus = dm.modulus();
            cap_check("residue classes", (modulus as u128).pow(m as u32), cap)?;
            for u in residue_tuples(modulus, m) {
                if dm.eval(&u) != 0 {
                    let x: Vec<BigInt> = (0..m).map(|i| &center[i] + &step * BigInt::from(u[i])).collect();
                    let witness = Witness::Derivative { component: ci, x: to_point(x), beta: beta.exps().to_vec() };
                    debug_assert!(recheck_witness(f, r, &witness));
                    return Ok(Verdict::Fails(witness));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Tables for the exhaustive strategy, split so that base points `y` can be
/// scanned in independent ranges.
#[derive(Clone, Debug)]
pub struct ExhaustivePlan {
    prime: u64,
    order: u32,
    reps: Representatives,
    alpha: u32,
    shift: u32,
    modulus: u64,
    /// Residues of the representatives modulo `modulus`, per point.
    points: Vec<Vec<u64>>,
    /// Multi-indices `β` with `|β| < r` (for the Taylor part) in table order.
    low: Vec<Vec<u32>>,
    /// Per component: `p^shift·f_i(x)` at every point.
    values: Vec<Vec<u64>>,
    /// Per component: `p^shift·D_β f_i(y)` for `β` in `low`, flattened per point.
    taylor: Vec<Vec<u64>>,
    /// Per component and `|β| ≤ r`: first `β` whose scaled derivative is not
    /// divisible by `p^shift`, per point.
    bad_derivative: Vec<Vec<Option<Vec<u32>>>>,
}

/// First failures found in one range of base points.
#[derive(Clone, Debug, Default)]
pub struct ScanResult {
    pub remainder: Option<(u64, u64, usize)>,
    pub derivative: Option<(u64, usize, Vec<u32>)>,
}

impl ExhaustivePlan {
    pub fn new(f: &PolyMap, r: u32, digits: u32, cap: u64) -> Result<Self> {
        let p = f.prime;
        let reps = Representatives::new(p, &f.domain, digits, cap)?;
        cap_check("representative pairs", (reps.count() as u128).pow(2), cap)?;
        let shift = f
            .components
            .iter()
            .map(|c| gauss_norm(p, c))
            .min()
            .and_then(Valuation::finite)
            .map_or(0, |v| (-v).max(0) as u32);
        let width = shift + r * (digits.max(1) - 1) + 1;
        let modulus = small_modulus(p, width)
            .ok_or_else(|| Error::Unsupported(alloc::format!("modulus {p}^{width} exceeds 63 bits")))?;
        let m = f.dim();
        let points: Vec<Vec<u64>> = (0..reps.count())
            .map(|j| reps.integers(j).iter().map(|x| crate::arith::reduce_int(x, modulus)).collect())
            .collect();
        let low: Vec<Vec<u32>> = Monomial::all_up_to_degree(m, r - 1).into_iter().map(|b| b.0).collect();
        let all: Vec<Vec<u32>> = Monomial::all_up_to_degree(m, r).into_iter().map(|b| b.0).collect();
        let reduce = |g: &QPoly| {
            ModPoly::from_qpoly(p, width, shift as i64, g).expect("shift clears every denominator")
        };
        let mut values = Vec::new();
        let mut taylor = Vec::new();
        let mut bad_derivative = Vec::new();
        let pshift = p.pow(shift);
        for comp in &f.components {
            let fm = reduce(comp);
            values.push(points.iter().map(|x| fm.eval(x)).collect());
            let lows: Vec<ModPoly> = low.iter().map(|b| reduce(&comp.divided_derivative(b))).collect();
            let mut t = Vec::with_capacity(points.len() * low.len());
            for x in &points {
                for d in &lows {
                    t.push(d.eval(x));
                }
            }
            taylor.push(t);
            let alls: Vec<ModPoly> = all.iter().map(|b| reduce(&comp.divided_derivative(b))).collect();
            bad_derivative.push(
                points
                    .iter()
                    .map(|x| alls.iter().zip(&all).find(|(d, _)| d.eval(x) % pshift != 0).map(|(_, b)| b.clone()))
                    .collect(),
            );
        }
        Ok(ExhaustivePlan {
            prime: p,
            order: r,
            reps,
            alpha: f.domain.radius(),
            shift,
            modulus,
            points,
            low,
            values,
            taylor,
            bad_derivative,
        })
    }

    /// Number of base points `y`.
    pub fn base_count(&self) -> u64 {
        self.reps.count()
    }

    fn ord_of_residue(&self, mut v: u64) -> u32 {
        let mut k = 0;
        while v != 0 && v % self.prime == 0 {
            v /= self.prime;
            k += 1;
        }
        k
    }

    /// Scans all pairs `(y, x)` with `y` in `range`; stops at the first failure of each kind.
    pub fn scan(&self, range: Range<u64>) -> ScanResult {
        let md = self.modulus as u128;
        let r = self.order as usize;
        let n = self.reps.count();
        let mut out = ScanResult::default();
        let mut hpow: Vec<Vec<u64>> = alloc::vec![alloc::vec![1; r.max(1)]; self.points[0].len()];
        for yi in range {
            if out.derivative.is_none() {
                for (ci, bad) in self.bad_derivative.iter().enumerate() {
                    if let Some(b) = &bad[yi as usize] {
                        out.derivative = Some((yi, ci, b.clone()));
                        break;
                    }
                }
            }
            if out.remainder.is_some() {
                if out.derivative.is_some() {
                    break;
                }
                continue;
            }
            let y = &self.points[yi as usize];
            let yo = self.reps.offsets(yi);
            'pairs: for xi in 0..n {
                if xi == yi {
                    continue;
                }
                let x = &self.points[xi as usize];
                let xo = self.reps.offsets(xi);
                let mut dist = u32::MAX;
                for (a, b) in xo.iter().zip(&yo) {
                    if a != b {
                        let d = a.abs_diff(*b);
                        dist = dist.min(self.alpha + self.ord_of_residue(d));
                    }
                }
                for (i, (a, b)) in x.iter().zip(y).enumerate() {
                    let h = ((*a as u128 + md - *b as u128) % md) as u64;
                    for e in 1..r {
                        hpow[i][e] = (hpow[i][e - 1] as u128 * h as u128 % md) as u64;
                    }
                }
                let need = self.shift + self.order * dist;
                for ci in 0..self.values.len() {
                    let tay = &self.taylor[ci][yi as usize * self.low.len()..(yi as usize + 1) * self.low.len()];
                    let mut acc = self.values[ci][xi as usize] as u128;
                    for (beta, d) in self.low.iter().zip(tay) {
                        let mut term = *d as u128;
                        for (i, e) in beta.iter().enumerate() {
                            if *e != 0 {
                                term = term * hpow[i][*e as usize] as u128 % md;
                            }
                        }
                        acc = (acc + md - term) % md;
                    }
                    if acc != 0 && self.ord_of_residue(acc as u64) < need {
                        out.remainder = Some((yi, xi, ci));
                        break 'pairs;
                    }
                }
            }
        }
        out
    }

    /// Merges scans of consecutive ranges (given in range order).
    pub fn verdict(&self, scans: &[ScanResult]) -> Verdict {
        let point = |j: u64| self.reps.point(j);
        if let Some((yi, xi, ci)) = scans.iter().find_map(|s| s.remainder) {
            return Verdict::Fails(Witness::Remainder { component: ci, x: point(xi), y: point(yi) });
        }
        if let Some((xi, ci, beta)) = scans.iter().find_map(|s| s.derivative.clone()) {
            return Verdict::Fails(Witness::Derivative { component: ci, x: point(xi), beta });
        }
        Verdict::Holds
    }
}

fn random_rep(rng: &mut ChaCha8Rng, p: u64, center: &[BigInt], step: &BigInt, digits: u32) -> Vec<BigInt> {
    center
        .iter()
        .map(|c| {
            let mut j = BigUint::zero();
            for _ in 0..digits {
                j = j * p + BigUint::from(rng.gen_range(0..p));
            }
            c + step * BigInt::from(j)
        })
        .collect()
}

fn sampled_verdict(f: &PolyMap, r: u32, seed: u64, samples: u64, digits: u32) -> Result<Verdict> {
    let p = f.prime;
    let alpha = f.domain.radius();
    if digits < alpha {
        return Err(Error::InvalidInput("digits must be at least the ball radius".into()));
    }
    let center = f.domain.center_integers();
    let step = pow_int(p, alpha);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let to_point = |v: Vec<BigInt>| -> Vec<BigRational> { v.into_iter().map(BigRational::from_integer).collect() };
    let all: Vec<Vec<u32>> = Monomial::all_up_to_degree(f.dim(), r).into_iter().map(|b| b.0).collect();
    let mut remainder: Option<(Vec<BigInt>, Vec<BigInt>, usize)> = None;
    let mut derivative: Option<(Vec<BigInt>, usize, Vec<u32>)> = None;
    for _ in 0..samples {
        let y = random_rep(&mut rng, p, &center, &step, digits - alpha);
        let x = random_rep(&mut rng, p, &center, &step, digits - alpha);
        let (yq, xq) = (to_point(y.clone()), to_point(x.clone()));
        for (ci, comp) in f.components.iter().enumerate() {
            if !remainder_ok(p, comp, r, &xq, &yq) {
                let cand = (y.clone(), x.clone(), ci);
                if remainder.as_ref().map_or(true, |best| (&cand.0, &cand.1) < (&best.0, &best.1)) {
                    remainder = Some(cand);
                }
            }
            for beta in &all {
                let v = comp.divided_derivative(beta).eval(&yq, &Rationals);
                if val_rat(p, &v) < Valuation::Finite(0) {
                    let cand = (y.clone(), ci, beta.clone());
                    if derivative.as_ref().map_or(true, |best| cand.0 < best.0) {
                        derivative = Some(cand);
                    }
                    break;
                }
            }
        }
    }
    if let Some((y, x, ci)) = remainder {
        return Ok(Verdict::Fails(Witness::Remainder { component: ci, x: to_point(x), y: to_point(y) }));
    }
    if let Some((x, ci, beta)) = derivative {
        return Ok(Verdict::Fails(Witness::Derivative { component: ci, x: to_point(x), beta }));
    }
    Ok(Verdict::Holds)
}

/// `f_{⋆N,b}`: the map `x ↦ f(b·x^N)` together with its domain, a union of balls.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerComposed {
    pub prime: u64,
    pub exponent: u32,
    pub b: Vec<BigInt>,
    pub components: Vec<QPoly>,
    /// Disjoint balls of a common radius per piece whose union is the domain.
    pub pieces: Vec<Ball>,
    pub tail_floor: Option<i64>,
}

impl PowerComposed {
    pub fn maps(&self) -> Vec<PolyMap> {
        self.pieces
            .iter()
            .map(|b| PolyMap {
                prime: self.prime,
                domain: b.clone(),
                components: self.components.clone(),
                tail_floor: self.tail_floor,
            })
            .collect()
    }
}

/// Maximal balls `c + p^k Z_p` on which `b·x^N` stays in `a + p^radius Z_p`.
fn power_preimage(p: u64, b: &BigInt, n: u32, a: &BigInt, radius: u32, cap: u64) -> Result<Vec<(BigInt, u32)>> {
    let target = pow_int(p, radius);
    let a = a.mod_floor(&target);
    let hit = |x: &BigInt| (b * x.pow(n)).mod_floor(&target) == a;
    let mut out = Vec::new();
    let mut stack = alloc::vec![(BigInt::zero(), 0u32)];
    let mut visited: u64 = 0;
    while let Some((c, k)) = stack.pop() {
        visited += 1;
        cap_check("preimage balls", visited as u128, cap)?;
        if k >= radius {
            if hit(&c) {
                out.push((c, k));
            }
            continue;
        }
        let pk = pow_int(p, k);
        let count = p.pow(radius - k);
        let hits = (0..count).filter(|u| hit(&(&c + &pk * BigInt::from(*u)))).count() as u64;
        if hits == count {
            out.push((c, k));
        } else if hits > 0 {
            for d in (0..p).rev() {
                stack.push((&c + &pk * BigInt::from(d), k + 1));
            }
        }
    }
    Ok(out)
}

/// Composes `f` with `x ↦ b·x^N` (coordinatewise); `b` must be p-integral.
pub fn power_compose(f: &PolyMap, n: u32, b: &[BigInt]) -> Result<PowerComposed> {
    power_compose_capped(f, n, b, DEFAULT_CAP)
}

pub fn power_compose_capped(f: &PolyMap, n: u32, b: &[BigInt], cap: u64) -> Result<PowerComposed> {
    let m = f.dim();
    if n == 0 || b.len() != m {
        return Err(Error::InvalidInput("need N ≥ 1 and one b per coordinate".into()));
    }
    let images: Vec<QPoly> = b
        .iter()
        .enumerate()
        .map(|(i, bi)| {
            QPoly::var(m, i, &Rationals).pow(n, &Rationals).scale(&BigRational::from_integer(bi.clone()), &Rationals)
        })
        .collect();
    let components = f.components.iter().map(|c| c.compose(&images, &Rationals)).collect();
    let center = f.domain.center_integers();
    let mut axes = Vec::with_capacity(m);
    for i in 0..m {
        axes.push(power_preimage(f.prime, &b[i], n, &center[i], f.domain.radius(), cap)?);
    }
    // Boxes of unequal radii are split into balls of a common radius.
    let mut pieces = Vec::new();
    if axes.iter().all(|a| !a.is_empty()) {
        let mut idx = alloc::vec![0usize; m];
        loop {
            let chosen: Vec<&(BigInt, u32)> = idx.iter().zip(&axes).map(|(j, a)| &a[*j]).collect();
            let top = chosen.iter().map(|(_, k)| *k).max().unwrap_or(0);
            let per_axis: Vec<Vec<BigInt>> = chosen
                .iter()
                .map(|(c, k)| {
                    let step = pow_int(f.prime, *k);
                    (0..f.prime.pow(top - k)).map(|d| c + &step * BigInt::from(d)).collect()
                })
                .collect();
            let total: usize = per_axis.iter().map(Vec::len).product();
            cap_check("preimage balls", (pieces.len() + total) as u128, cap)?;
            let mut sub = alloc::vec![0usize; m];
            loop {
                let c: Vec<BigInt> = sub.iter().zip(&per_axis).map(|(j, v)| v[*j].clone()).collect();
                pieces.push(Ball::from_integers(f.prime, &c, top));
                if !advance(&mut sub, &per_axis.iter().map(Vec::len).collect::<Vec<_>>()) {
                    break;
                }
            }
            if !advance(&mut idx, &axes.iter().map(Vec::len).collect::<Vec<_>>()) {
                break;
            }
        }
    }
    pieces.sort();
    Ok(PowerComposed {
        prime: f.prime,
        exponent: n,
        b: b.to_vec(),
        components,
        pieces,
        tail_floor: f.tail_floor,
    })
}

fn advance(idx: &mut [usize], lens: &[usize]) -> bool {
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < lens[i] {
            return true;
        }
        idx[i] = 0;
    }
    false
}

/// One row of a [`Gauss0Report`]: `ord(g^{(i)}/i!)` on the ball against its bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gauss0Row {
    pub i: u32,
    pub valuation: Valuation,
    pub bound: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gauss0Report {
    pub prime: u64,
    pub lambda_val: i64,
    pub a_val: i64,
    pub rows: Vec<Gauss0Row>,
    pub holds: bool,
}

/// Checks `|g^{(i)}/i!| ≤ |λ|/|a|^i` on `a·M` from the hypothesis `|g| ≤ |λ|` there,
/// with norms given as valuations.
///
/// Norms on `a·M` are sups over its points in the algebraic closure, which
/// equal the Gauss norm of `x ↦ g(ax)`. Over the `Q_p`-points alone (the
/// closed ball of valuative radius `ord(a) + 1`) the inequality can fail:
/// `g = 15 + x`, `a = 1`, `p = 3`.
pub fn verify_gauss0(p: u64, g: &QPoly, lambda_val: i64, a_val: i64) -> Result<Gauss0Report> {
    if g.nvars() != 1 || a_val < 0 {
        return Err(Error::InvalidInput("g must be univariate and a ∈ O".into()));
    }
    let on_ball = |h: &QPoly| gauss_norm(p, &recenter(p, h, &[BigInt::zero()], a_val as u32));
    if !on_ball(g).at_least(lambda_val) {
        return Err(Error::Hypothesis(alloc::format!("|g| ≤ p^-{lambda_val} fails on the ball")));
    }
    let deg = g.degree().unwrap_or(0);
    let rows: Vec<Gauss0Row> = (1..=deg)
        .map(|i| {
            let valuation = on_ball(&g.divided_derivative(&[i]));
            Gauss0Row { i, valuation, bound: lambda_val - i as i64 * a_val }
        })
        .collect();
    let holds = rows.iter().all(|r| r.valuation.at_least(r.bound));
    Ok(Gauss0Report { prime: p, lambda_val, a_val, rows, holds })
}

/// Parameters and outcome of a power-map `C^1 → T_r` run.
#[derive(Clone, Debug, PartialEq)]
pub struct Gauss1aReport {
    pub prime: u64,
    pub r: u32,
    pub i_max: u64,
    /// `v_p(n)`.
    pub n_valuation: u32,
    pub n: BigInt,
    pub exponent: u32,
    pub legendre_ok: bool,
    /// Balls `B'` with `B'^N ⊂ B`, each with its certificate.
    pub pieces: Vec<TrCertificate>,
    pub holds: bool,
}

/// For `g` of C^1-norm `≤ 1` on `B = b(1 + nM)`, checks `T_r` of `x ↦ g(x^N)` on
/// each maximal ball mapped into `B`, with `v_p(n) = max(1, ⌈v_p(i_max!)/r⌉)` and `N = n^r`.
pub fn verify_gauss1a(
    p: u64,
    g: &QPoly,
    b: &BigInt,
    r: u32,
    i_max: u64,
    strategy: Strategy,
) -> Result<Gauss1aReport> {
    if g.nvars() != 1 || r == 0 || b.is_zero() {
        return Err(Error::InvalidInput("g univariate, r ≥ 1 and b ≠ 0 required".into()));
    }
    let vb = match val_rat(p, &BigRational::from_integer(b.clone())).finite() {
        Some(v) => v as u32,
        None => unreachable!("b is nonzero"),
    };
    let vn = divisibility_for(p, r, i_max);
    let n = pow_int(p, vn);
    let exponent = n.pow(r).to_u32().ok_or_else(|| Error::Unsupported("N does not fit in 32 bits".into()))?;
    let legendre_ok = crate::combinatorics::legendre_check(p, n.to_u64().unwrap_or(0), r, i_max).unwrap_or(false);
    let ball = Ball::from_integers(p, &[b.clone()], vb + vn + 1);
    let map = PolyMap::new(p, ball, alloc::vec![g.clone()])?;
    if let Verdict::Fails(w) = residual_verdict_derivatives(&map, 1)? {
        return Err(Error::Hypothesis(alloc::format!("C^1-norm of g exceeds 1 on the ball: {w:?}")));
    }
    let composed = power_compose(&map, exponent, &[BigInt::one()])?;
    let mut pieces = Vec::new();
    for piece in composed.maps() {
        pieces.push(check_tr(&piece, r, strategy.clone())?);
    }
    let holds = !pieces.is_empty() && pieces.iter().all(TrCertificate::holds);
    Ok(Gauss1aReport { prime: p, r, i_max, n_valuation: vn, n, exponent, legendre_ok, pieces, holds })
}

fn residual_verdict_derivatives(f: &PolyMap, r: u32) -> Result<Verdict> {
    let center = f.domain.center_integers();
    for (ci, comp) in f.components.iter().enumerate() {
        for beta in Monomial::all_up_to_degree(f.dim(), r) {
            let d = recenter(f.prime, &comp.divided_derivative(beta.exps()), &center, f.domain.radius());
            let Some(dm) = scaled_reduction(f.prime, &d)? else {
                continue;
            };
            for u in residue_tuples(dm.modulus(), f.dim()) {
                if dm.eval(&u) != 0 {
                    let step = pow_int(f.prime, f.domain.radius());
                    let x = (0..f.dim())
                        .map(|i| BigRational::from_integer(&center[i] + &step * BigInt::from(u[i])))
                        .collect();
                    return Ok(Verdict::Fails(Witness::Derivative { component: ci, x, beta: beta.0 }));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Short human-readable form of a verdict.
pub fn describe(v: &Verdict) -> String {
    fn tuple(x: &[BigRational]) -> String {
        let parts: Vec<String> = x.iter().map(|c| alloc::format!("{c}")).collect();
        alloc::format!("({})", parts.join(", "))
    }
    match v {
        Verdict::Holds => "holds".into(),
        Verdict::Fails(Witness::Remainder { component, x, y }) => {
            alloc::format!("fails: remainder of component {component} at x={}, y={}", tuple(x), tuple(y))
        }
        Verdict::Fails(Witness::Derivative { component, x, beta }) => {
            alloc::format!("fails: derivative {beta:?} of component {component} at x={}", tuple(x))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::Strategy;
    use proptest::strategy::Strategy as _;
    use alloc::vec;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn upoly(coeffs: &[(u32, BigRational)]) -> QPoly {
        QPoly::from_terms(1, coeffs.iter().map(|(e, c)| (Monomial(vec![*e]), c.clone())), &Rationals)
    }

    fn whole(p: u64, f: QPoly) -> PolyMap {
        PolyMap::on_whole(p, vec![f]).unwrap()
    }

    fn binom2() -> QPoly {
        upoly(&[(2, q(1, 2)), (1, q(-1, 2))])
    }

    #[test]
    fn taylor_examples() {
        let sq = whole(3, upoly(&[(2, q(1, 1))]));
        let t = taylor_poly(&sq, &[q(1, 1)], 2).unwrap();
        assert_eq!(t.in_original_variables()[0], upoly(&[(0, q(-1, 1)), (1, q(2, 1))]));
        let t = taylor_poly(&sq, &[q(0, 1)], 3).unwrap();
        assert_eq!(t.in_original_variables()[0], sq.components[0]);
        let cube = whole(3, upoly(&[(3, q(1, 1))]));
        let t = taylor_poly(&cube, &[q(1, 1)], 2).unwrap();
        assert_eq!(t.components[0], upoly(&[(0, q(1, 1)), (1, q(3, 1))]));
        assert_eq!(t.eval(&[q(1, 1)]), vec![q(1, 1)]);
    }

    #[test]
    fn cr_norm_examples() {
        let z3 = Ball::whole(3, 1);
        assert_eq!(cr_norm(&whole(3, upoly(&[(2, q(1, 1))])), 2, &z3), Valuation::Finite(0));
        assert_eq!(cr_norm(&whole(2, binom2()), 2, &Ball::whole(2, 1)), Valuation::Finite(-1));
        assert_eq!(cr_norm(&whole(3, upoly(&[(2, q(3, 1))])), 1, &z3), Valuation::Finite(1));
    }

    #[test]
    fn gauss_norm_examples() {
        let f = TruncatedPoly::over_q(&[q(3, 1), q(9, 1), q(1, 1)]);
        assert_eq!(gauss_norm_truncated(3, &f), Ok(Valuation::Finite(0)));
        let f = TruncatedPoly::over_q(&[q(3, 1), q(9, 1)]);
        assert_eq!(gauss_norm_truncated(3, &f), Ok(Valuation::Finite(1)));
        assert_eq!(gauss_norm(3, &QPoly::zero(1)), Valuation::Infinite);
    }

    #[test]
    fn square_satisfies_t2() {
        let f = whole(3, upoly(&[(2, q(1, 1))]));
        for s in [Strategy::Residual, Strategy::Exhaustive { digits: 5 }, Strategy::Sampled { seed: 7, samples: 200, digits: 12 }] {
            assert!(check_tr(&f, 2, s).unwrap().holds());
        }
    }

    #[test]
    fn binomial_fails_t1_at_two_zero() {
        let f = whole(2, binom2());
        let want = Witness::Remainder { component: 0, x: vec![q(2, 1)], y: vec![q(0, 1)] };
        for s in [Strategy::Residual, Strategy::Exhaustive { digits: 4 }] {
            let cert = check_tr(&f, 1, s).unwrap();
            assert_eq!(cert.verdict, Verdict::Fails(want.clone()));
        }
        assert!(recheck_witness(&f, 1, &want));
        let sampled = check_tr(&f, 1, Strategy::Sampled { seed: 1, samples: 64, digits: 6 }).unwrap();
        match sampled.verdict {
            Verdict::Fails(w) => assert!(recheck_witness(&f, 1, &w)),
            Verdict::Holds => panic!("sampling should find a failure"),
        }
    }

    #[test]
    fn cube_satisfies_t2() {
        let f = whole(3, upoly(&[(3, q(1, 1))]));
        assert!(check_tr(&f, 2, Strategy::Residual).unwrap().holds());
        assert!(check_tr(&f, 2, Strategy::Exhaustive { digits: 5 }).unwrap().holds());
    }

    #[test]
    fn scaled_square_on_small_ball() {
        // x^2/3 on 3Z_3: T_1 holds, T_2 fails through the second derivative 1/3.
        let f = PolyMap::new(3, Ball::from_integers(3, &[BigInt::zero()], 1), vec![upoly(&[(2, q(1, 3))])]).unwrap();
        assert!(check_tr(&f, 1, Strategy::Residual).unwrap().holds());
        let c = check_tr(&f, 2, Strategy::Residual).unwrap();
        assert!(matches!(&c.verdict, Verdict::Fails(w) if recheck_witness(&f, 2, w)));
        assert_eq!(check_tr(&f, 2, Strategy::Exhaustive { digits: 5 }).unwrap().holds(), c.holds());
    }

    #[test]
    fn two_variable_remainder() {
        // xy/2 over Z_2 fails T_1; the witness must recheck.
        let f = PolyMap::on_whole(
            2,
            vec![QPoly::from_terms(2, [(Monomial(vec![1, 1]), q(1, 2))], &Rationals)],
        )
        .unwrap();
        let c = check_tr(&f, 1, Strategy::Residual).unwrap();
        assert!(matches!(&c.verdict, Verdict::Fails(w) if recheck_witness(&f, 1, w)));
        let g = PolyMap::on_whole(
            3,
            vec![QPoly::from_terms(2, [(Monomial(vec![1, 1]), q(1, 1)), (Monomial(vec![2, 0]), q(2, 1))], &Rationals)],
        )
        .unwrap();
        assert!(check_tr(&g, 2, Strategy::Residual).unwrap().holds());
        assert!(check_tr(&g, 2, Strategy::Exhaustive { digits: 2 }).unwrap().holds());
    }

    #[test]
    fn power_compose_examples() {
        let id = whole(3, upoly(&[(1, q(1, 1))]));
        let sq = power_compose(&id, 2, &[BigInt::one()]).unwrap();
        assert_eq!(sq.components[0], upoly(&[(2, q(1, 1))]));
        assert_eq!(sq.pieces, vec![Ball::whole(3, 1)]);
        let x2 = whole(3, upoly(&[(2, q(1, 1))]));
        assert_eq!(power_compose(&x2, 3, &[BigInt::one()]).unwrap().components[0], upoly(&[(6, q(1, 1))]));
        let lin = power_compose(&id, 1, &[BigInt::from(5)]).unwrap();
        assert_eq!(lin.components[0], upoly(&[(1, q(5, 1))]));
    }

    #[test]
    fn power_preimages() {
        // x^2 ∈ 1 + 8Z_2 exactly for odd x.
        let f = PolyMap::new(2, Ball::from_integers(2, &[BigInt::one()], 3), vec![upoly(&[(1, q(1, 1))])]).unwrap();
        let c = power_compose(&f, 2, &[BigInt::one()]).unwrap();
        assert_eq!(c.pieces, vec![Ball::from_integers(2, &[BigInt::one()], 1)]);
        // x^2 ∈ 1 + 3Z_3 for x ≡ ±1 mod 3.
        let f = PolyMap::new(3, Ball::from_integers(3, &[BigInt::one()], 1), vec![upoly(&[(1, q(1, 1))])]).unwrap();
        let c = power_compose(&f, 2, &[BigInt::one()]).unwrap();
        assert_eq!(
            c.pieces,
            vec![Ball::from_integers(3, &[BigInt::one()], 1), Ball::from_integers(3, &[BigInt::from(2)], 1)]
        );
    }

    #[test]
    fn gauss0_examples() {
        let r = verify_gauss0(3, &upoly(&[(1, q(3, 1))]), 1, 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.rows, vec![Gauss0Row { i: 1, valuation: Valuation::Finite(1), bound: 0 }]);
        let r = verify_gauss0(3, &upoly(&[(2, q(1, 1))]), 2, 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.rows[1], Gauss0Row { i: 2, valuation: Valuation::Finite(0), bound: 0 });
        let r = verify_gauss0(3, &upoly(&[(0, q(5, 1))]), 0, 0).unwrap();
        assert!(r.holds && r.rows.is_empty());
        assert!(matches!(verify_gauss0(3, &upoly(&[(2, q(1, 1))]), 5, 1), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn gauss1a_small() {
        let x = upoly(&[(1, q(1, 1))]);
        let rep = verify_gauss1a(2, &x, &BigInt::one(), 2, 2, Strategy::Exhaustive { digits: 6 }).unwrap();
        assert_eq!((rep.n_valuation, rep.exponent), (1, 4));
        assert!(rep.legendre_ok && rep.holds);
        let rep = verify_gauss1a(2, &x, &BigInt::one(), 2, 2, Strategy::Residual).unwrap();
        assert!(rep.holds);
        let bad = upoly(&[(1, q(1, 2))]);
        assert!(matches!(
            verify_gauss1a(2, &bad, &BigInt::one(), 2, 2, Strategy::Residual),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn tail_provenance() {
        let f = whole(3, upoly(&[(2, q(1, 1))])).with_tail_floor(5);
        assert!(check_tr(&f, 2, Strategy::Residual).unwrap().up_to_tail);
    }

    fn small_poly(p: u64) -> impl proptest::strategy::Strategy<Value = QPoly> {
        let _ = p;
        proptest::collection::vec((-6i64..7, prop_oneof![Just(1i64), Just(3), Just(9)]), 1..5).prop_map(|cs| {
            upoly(&cs.iter().enumerate().map(|(e, (a, d))| (e as u32, q(*a, *d))).collect::<Vec<_>>())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn residual_agrees_with_exhaustive(f in small_poly(3), r in 1u32..3, radius in 0u32..2) {
            let map = PolyMap::new(3, Ball::from_integers(3, &[BigInt::zero()], radius), vec![f]).unwrap();
            let proof = check_tr(&map, r, Strategy::Residual).unwrap();
            let exh = check_tr(&map, r, Strategy::Exhaustive { digits: 5 }).unwrap();
            prop_assert_eq!(proof.holds(), exh.holds());
            if let Verdict::Fails(w) = &proof.verdict {
                prop_assert!(recheck_witness(&map, r, w));
            }
            if let Verdict::Fails(w) = &exh.verdict {
                prop_assert!(recheck_witness(&map, r, w));
            }
        }

        #[test]
        fn taylor_of_full_degree_is_exact(f in small_poly(3), y in -20i64..20) {
            let map = whole(3, f.clone());
            let d = f.degree().unwrap_or(0);
            let t = taylor_poly(&map, &[q(y, 1)], d + 1).unwrap();
            prop_assert_eq!(&t.in_original_variables()[0], &f);
        }

        #[test]
        fn gauss_versus_sup(f in small_poly(5), r in 0u32..3) {
            let map = whole(5, f);
            let gauss = cr_norm(&map, r, &map.domain);
            let sup = pointwise_cr_valuation(&map, r, &map.domain, 3).unwrap();
            // degree ≤ 4 < 5, so the two agree.
            prop_assert_eq!(gauss, sup);
        }

        #[test]
        fn gauss_bounds_sup_in_small_characteristic(f in small_poly(2), r in 0u32..3) {
            let map = whole(2, f);
            let gauss = cr_norm(&map, r, &map.domain);
            let sup = pointwise_cr_valuation(&map, r, &map.domain, 6).unwrap();
            prop_assert!(gauss <= sup);
        }
    }
}
