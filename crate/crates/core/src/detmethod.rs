//! The determinant method over `Q_p`.
//!
//! Points of bounded height whose parameters share a small p-adic ball make
//! the monomial matrix `(ψ^α(P_j))` have a determinant of large valuation;
//! once that valuation beats the archimedean size bound the determinant must
//! vanish, and a nonzero maximal minor yields an auxiliary hypersurface.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    pow_big, rat_mod_pk, val_rat, Ball, CoeffRing, Monomial, PadicNumber, QPoly, Rationals, TruncatedPoly,
    Valuation,
};
use crate::combinatorics::{alpha_bound, DetSetup};
use crate::error::{Error, Result};
use crate::heights::{points_z, SemialgSpec};
use crate::linalg::{det, Echelon};
use crate::taylor::{PolyMap, TrCertificate};

/// `x^α` at a point.
fn monomial_value(alpha: &Monomial, x: &[BigRational]) -> BigRational {
    let mut acc = BigRational::one();
    for (xi, e) in x.iter().zip(alpha.exps()) {
        if *e > 0 {
            acc *= num_traits::pow(xi.clone(), *e as usize);
        }
    }
    acc
}

/// The matrix `(ψ^α(P_j))` with rows `α ∈ Δ_n(d)` and columns the points.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialMatrix {
    pub setup: DetSetup,
    pub points: Vec<Vec<BigRational>>,
    pub rows: Vec<Monomial>,
    pub entries: Vec<Vec<BigRational>>,
}

impl MonomialMatrix {
    /// Builds the matrix for `μ = D_n(d)` parameter points of `ψ : Z_p^m → Q_p^n`.
    pub fn new(psi: &PolyMap, d: u32, points: &[Vec<BigRational>]) -> Result<Self> {
        let setup = DetSetup::new(psi.dim() as u32, psi.codim() as u32, d)?;
        if points.len() as u64 != setup.mu {
            return Err(Error::InvalidInput(format!("need exactly μ = {} points", setup.mu)));
        }
        let rows = Monomial::all_up_to_degree(psi.codim(), d);
        let images: Vec<Vec<BigRational>> = points.iter().map(|x| psi.eval(x)).collect();
        let entries = rows.iter().map(|a| images.iter().map(|y| monomial_value(a, y)).collect()).collect();
        Ok(MonomialMatrix { setup, points: points.to_vec(), rows, entries })
    }

    pub fn determinant(&self) -> BigRational {
        det(&self.entries)
    }
}

/// Outcome of comparing `ord(Δ)` with `e·α`.
#[derive(Clone, Debug, PartialEq)]
pub struct DetBoundReport {
    pub setup: DetSetup,
    /// Valuative radius of the smallest ball holding all the points.
    pub alpha: u32,
    pub delta: BigRational,
    pub ord_delta: Valuation,
    /// `e·α`.
    pub bound: u64,
    pub holds: bool,
}

/// Valuative radius of the smallest ball containing `points` (`None` if they coincide).
fn common_radius(p: u64, points: &[Vec<BigRational>]) -> Option<u32> {
    let mut best: Option<i64> = None;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            for (x, y) in a.iter().zip(b) {
                if let Valuation::Finite(v) = val_rat(p, &(x - y)) {
                    best = Some(best.map_or(v, |c| c.min(v)));
                }
            }
        }
    }
    best.map(|v| v.max(0) as u32)
}

/// Checks `ord(Δ) ≥ e·α` for the monomial matrix of `ψ` (the certificate's
/// subject) at `μ` parameter points inside its domain.
pub fn det_bound_check(cert: &TrCertificate, d: u32, points: &[Vec<BigRational>]) -> Result<DetBoundReport> {
    let psi = &cert.subject;
    let matrix = MonomialMatrix::new(psi, d, points)?;
    let setup = matrix.setup.clone();
    if !cert.holds() || cert.order < setup.r {
        return Err(Error::Hypothesis(format!("ψ needs a holding T_{} certificate", setup.r)));
    }
    if let Some(x) = points.iter().find(|x| !psi.domain.contains_rational(x)) {
        return Err(Error::InvalidInput(format!("point {x:?} is outside the certified domain")));
    }
    let delta = matrix.determinant();
    let ord_delta = val_rat(psi.prime, &delta);
    let Some(alpha) = common_radius(psi.prime, points) else {
        // Repeated points: Δ = 0.
        return Ok(DetBoundReport { setup, alpha: u32::MAX, delta, ord_delta, bound: 0, holds: true });
    };
    let bound = setup.e * alpha as u64;
    let holds = ord_delta.at_least(bound as i64);
    Ok(DetBoundReport { setup, alpha, delta, ord_delta, bound, holds })
}

/// Pivot choices made by [`rank_padic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    /// `(row, column, valuation)` of each pivot, in elimination order.
    pub pivots: Vec<(usize, usize, i64)>,
}

/// Rank by elimination with a minimal-valuation pivot (ties row-major).
///
/// Entries are replaced by their rational representatives. Full pivoting on
/// minimal valuation keeps every entry known modulo `p^K`, so a remaining
/// entry of valuation `≥ K` is zero at precision; if only such entries are
/// left and one of them is not exactly zero, the rank is indeterminate.
pub fn rank_padic(matrix: &[Vec<PadicNumber>], k: u32) -> Result<RankCertificate> {
    let Some(p) = matrix.iter().flatten().next().map(PadicNumber::prime) else {
        return Ok(RankCertificate { rank: 0, pivots: Vec::new() });
    };
    if matrix.iter().flatten().any(|x| x.prime() != p) {
        return Err(Error::RingMismatch);
    }
    let rows = matrix.iter().map(|r| r.iter().map(PadicNumber::to_rational).collect()).collect();
    rank_eliminate(p, k, rows)
}

/// [`rank_padic`] on exact rational entries.
pub fn rank_padic_rational(p: u64, matrix: &[Vec<BigRational>], k: u32) -> Result<RankCertificate> {
    rank_eliminate(p, k, matrix.to_vec())
}

fn rank_eliminate(p: u64, k: u32, mut a: Vec<Vec<BigRational>>) -> Result<RankCertificate> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut row_used = alloc::vec![false; nrows];
    let mut col_used = alloc::vec![false; ncols];
    let mut pivots = Vec::new();
    loop {
        let mut best: Option<(usize, usize, i64)> = None;
        let mut tiny = false;
        for i in (0..nrows).filter(|i| !row_used[*i]) {
            for j in (0..ncols).filter(|j| !col_used[*j]) {
                if let Valuation::Finite(v) = val_rat(p, &a[i][j]) {
                    if v >= k as i64 {
                        tiny = true;
                    } else if best.map_or(true, |(_, _, b)| v < b) {
                        best = Some((i, j, v));
                    }
                }
            }
        }
        let Some((pi, pj, v)) = best else {
            if tiny {
                return Err(Error::Indeterminate(format!(
                    "after {} pivots only entries of valuation ≥ {k} remain",
                    pivots.len()
                )));
            }
            break;
        };
        row_used[pi] = true;
        col_used[pj] = true;
        pivots.push((pi, pj, v));
        let prow = a[pi].clone();
        for i in (0..nrows).filter(|i| !row_used[*i]) {
            if a[i][pj].is_zero() {
                continue;
            }
            let f = &a[i][pj] / &prow[pj];
            for j in 0..ncols {
                if !prow[j].is_zero() {
                    let t = &f * &prow[j];
                    a[i][j] -= t;
                }
            }
        }
    }
    Ok(RankCertificate { rank: pivots.len(), pivots })
}

/// A hypersurface of degree `≤ d` through a set of points, built from a maximal minor.
#[derive(Clone, Debug, PartialEq)]
pub struct AuxiliaryPolynomial {
    pub poly: QPoly,
    /// Monomials `I` of the nonzero maximal minor, in graded order.
    pub support: Vec<Monomial>,
    /// Indices of the points spanning the minor.
    pub rows: Vec<usize>,
    /// The smallest monomial outside `I`.
    pub beta: Monomial,
    /// Coefficient of `x^β`, equal to the minor `det(M)`.
    pub beta_coeff: BigRational,
}

impl AuxiliaryPolynomial {
    pub fn vanishes_at(&self, points: &[Vec<BigRational>]) -> bool {
        points.iter().all(|x| self.poly.eval(x, &Rationals).is_zero())
    }
}

/// A nonzero polynomial of degree `≤ d` vanishing at every point.
///
/// The monomials are scanned in the graded order (degree first, then larger
/// leading exponents first); rows and columns of a maximal-rank minor are
/// picked greedily in point order and monomial order.
pub fn auxiliary_polynomial(points: &[Vec<BigRational>], d: u32) -> Result<AuxiliaryPolynomial> {
    let n = points.first().map_or(0, Vec::len);
    if n == 0 {
        return Err(Error::InvalidInput("need at least one point of positive dimension".into()));
    }
    let monos = Monomial::all_up_to_degree(n, d);
    let values: Vec<Vec<BigRational>> =
        points.iter().map(|x| monos.iter().map(|a| monomial_value(a, x)).collect()).collect();

    let mut rows = Vec::new();
    let mut ech = Echelon::new(monos.len());
    for (i, v) in values.iter().enumerate() {
        if ech.insert(v) {
            rows.push(i);
        }
    }
    let a = rows.len();
    if a == monos.len() {
        return Err(Error::FullRank { rank: a });
    }
    let mut cols = Vec::new();
    let mut col_ech = Echelon::new(a);
    for (j, _) in monos.iter().enumerate() {
        let col: Vec<BigRational> = rows.iter().map(|i| values[*i][j].clone()).collect();
        if col_ech.insert(&col) {
            cols.push(j);
        }
    }
    let beta_idx = (0..monos.len()).find(|j| !cols.contains(j)).expect("a < number of monomials");

    // Expand det [[M | v_β]; [x^I | x^β]] along its last row.
    let mut all_cols = cols.clone();
    all_cols.push(beta_idx);
    let mut poly = QPoly::zero(n);
    let mut beta_coeff = BigRational::zero();
    for (pos, &j) in all_cols.iter().enumerate() {
        let minor: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|i| all_cols.iter().enumerate().filter(|(q, _)| *q != pos).map(|(_, c)| values[*i][*c].clone()).collect())
            .collect();
        let mut c = det(&minor);
        if (a + pos) % 2 == 1 {
            c = -c;
        }
        if j == beta_idx {
            beta_coeff = c.clone();
        }
        poly.add_term(monos[j].clone(), c, &Rationals);
    }
    debug_assert!(!beta_coeff.is_zero());
    Ok(AuxiliaryPolynomial {
        poly,
        support: cols.iter().map(|j| monos[*j].clone()).collect(),
        rows,
        beta: monos[beta_idx].clone(),
        beta_coeff,
    })
}

/// Rational roots of a univariate polynomial, ascending.
pub fn rational_roots(f: &QPoly) -> Result<Vec<BigRational>> {
    if f.nvars() != 1 {
        return Err(Error::InvalidInput("rational_roots needs a univariate polynomial".into()));
    }
    if f.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial has every root".into()));
    }
    let deg = f.degree().unwrap_or(0) as usize;
    let mut coeffs = alloc::vec![BigRational::zero(); deg + 1];
    for (m, c) in f.terms() {
        coeffs[m.exps()[0] as usize] = c.clone();
    }
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(BigRational::zero());
    }
    let ints = &ints[low..];
    if ints.len() > 1 {
        let c0 = ints[0].abs();
        let lead = ints[ints.len() - 1].abs();
        for a in divisors(&c0)? {
            for b in divisors(&lead)? {
                if !a.gcd(&b).is_one() {
                    continue;
                }
                for s in [-1, 1] {
                    let x = BigRational::new(BigInt::from(s) * &a, b.clone());
                    if f.eval(&[x.clone()], &Rationals).is_zero() {
                        roots.push(x);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.to_u64().filter(|n| *n <= 1 << 40).ok_or_else(|| {
        Error::Unsupported("rational root search needs coefficients below 2^40".into())
    })?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            small.push(BigInt::from(i));
            if i * i != n {
                large.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// One parameter ball of a [`HypersurfaceCover`].
#[derive(Clone, Debug, PartialEq)]
pub struct CoverBall {
    pub ball: Ball,
    pub points: Vec<Vec<BigRational>>,
    /// Parameter of each point, and the index of the map that reaches it.
    pub params: Vec<(BigRational, usize)>,
    /// `None` when the points span every monomial of degree `≤ d`.
    pub poly: Option<AuxiliaryPolynomial>,
}

/// Points of bounded height on a curve, grouped by parameter ball, with one
/// auxiliary hypersurface per ball.
#[derive(Clone, Debug, PartialEq)]
pub struct HypersurfaceCover {
    pub prime: u64,
    pub height: u64,
    pub d: u32,
    pub setup: DetSetup,
    pub alpha: u32,
    /// `p^{αm}`, the number of parameter balls.
    pub bound: BigUint,
    pub balls: Vec<CoverBall>,
    pub total_points: usize,
}

impl HypersurfaceCover {
    /// Every ball has a hypersurface vanishing on its points and the cover fits the bound.
    pub fn holds(&self) -> bool {
        BigUint::from(self.balls.len()) <= self.bound
            && self.balls.iter().all(|b| b.poly.as_ref().is_some_and(|f| f.vanishes_at(&b.points)))
    }
}

/// Parameter of `target` under one of the maps, if any: the smallest common
/// rational root of `ψ_i(u) − target_i` lying in that map's domain.
fn find_parameter(psi: &[PolyMap], target: &[BigRational]) -> Result<Option<(BigRational, usize)>> {
    for (k, map) in psi.iter().enumerate() {
        let shifted: Vec<QPoly> = map
            .components
            .iter()
            .zip(target)
            .map(|(c, y)| {
                let mut g = c.clone();
                g.add_term(Monomial::one(1), -y.clone(), &Rationals);
                g
            })
            .collect();
        let Some(pivot) = shifted.iter().find(|g| !g.is_zero()) else {
            return Err(Error::InvalidInput("a constant map reaches its only value at every parameter".into()));
        };
        for u in rational_roots(pivot)? {
            let x = [u.clone()];
            if shifted.iter().all(|g| g.eval(&x, &Rationals).is_zero()) && map.domain.contains_rational(&x) {
                return Ok(Some((u, k)));
            }
        }
    }
    Ok(None)
}

/// Covers the integer points of height `≤ T` on a curve by one degree-`d`
/// hypersurface per parameter ball of valuative radius `α`.
pub fn cover_points(spec: &SemialgSpec, psi: &[PolyMap], t: u64, d: u32, p: u64, cap: u64) -> Result<HypersurfaceCover> {
    if psi.is_empty() {
        return Err(Error::InvalidInput("need at least one parametrizing map".into()));
    }
    if psi.iter().any(|f| f.dim() != 1 || f.codim() != spec.nvars || f.prime != p) {
        return Err(Error::InvalidInput("maps must go from Z_p to the ambient space of the curve".into()));
    }
    let setup = DetSetup::new(1, spec.nvars as u32, d)?;
    let alpha = alpha_bound(&setup, t, p);
    let mut groups: BTreeMap<BigUint, CoverBall> = BTreeMap::new();
    let points = points_z(spec, t, cap)?;
    let total_points = points.len();
    for x in points {
        let Some((u, k)) = find_parameter(psi, &x)? else {
            return Err(Error::NotCovered(format!("{x:?}")));
        };
        let key = rat_mod_pk(p, &u, alpha).expect("parameters in a domain ball are p-integral");
        let entry = groups.entry(key.clone()).or_insert_with(|| CoverBall {
            ball: Ball::from_integers(p, &[BigInt::from(key)], alpha),
            points: Vec::new(),
            params: Vec::new(),
            poly: None,
        });
        entry.points.push(x);
        entry.params.push((u, k));
    }
    let mut balls = Vec::with_capacity(groups.len());
    for (_, mut b) in groups {
        b.poly = match auxiliary_polynomial(&b.points, d) {
            Ok(f) => Some(f),
            Err(Error::FullRank { .. }) => None,
            Err(e) => return Err(e),
        };
        balls.push(b);
    }
    Ok(HypersurfaceCover {
        prime: p,
        height: t,
        d,
        setup,
        alpha,
        bound: pow_big(p, alpha),
        balls,
        total_points,
    })
}

/// `det` of a square matrix over `F_q[t]` by expansion over column subsets.
pub fn det_fq_t(q: u64, matrix: &[Vec<TruncatedPoly>]) -> Result<TruncatedPoly> {
    let n = matrix.len();
    if n > 20 {
        return Err(Error::CapExceeded { what: "matrix size", needed: n as u128, cap: 20 });
    }
    let zero = TruncatedPoly::zero(CoeffRing::Fp(q), 0);
    if n == 0 {
        return Ok(TruncatedPoly::over_fp(q, &[1]));
    }
    let mut dp: Vec<Option<TruncatedPoly>> = alloc::vec![None; 1 << n];
    dp[0] = Some(TruncatedPoly::over_fp(q, &[1]));
    for mask in 0usize..(1 << n) {
        let Some(cur) = dp[mask].take() else { continue };
        let row = mask.count_ones() as usize;
        if row == n {
            dp[mask] = Some(cur);
            continue;
        }
        for c in (0..n).filter(|c| mask & (1 << c) == 0) {
            let mut term = cur.mul(&matrix[row][c])?;
            if (mask >> (c + 1)).count_ones() % 2 == 1 {
                term = term.neg();
            }
            let slot = &mut dp[mask | (1 << c)];
            *slot = Some(match slot.take() {
                Some(s) => s.add(&term)?,
                None => term,
            });
        }
    }
    Ok(dp[(1 << n) - 1].take().unwrap_or(zero))
}

/// Outcome of `ord_t(Δ) ≥ α·μ(μ−1)/2` on a graph curve over `F_q[t]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FfDetReport {
    pub mu: usize,
    pub alpha: u32,
    pub ord_delta: Valuation,
    pub bound: u64,
    pub holds: bool,
}

/// For points `(x_j, g(x_j))` on the graph of `g ∈ F_q[t][x]` and monomials
/// `x^a y^b`, checks that the monomial determinant is divisible by
/// `t^{α·μ(μ−1)/2}`, where `α` is the least `ord_t(x_i − x_j)`.
pub fn det_bound_check_ff(
    q: u64,
    g: &crate::arith::ZPoly,
    monomials: &[Monomial],
    xs: &[TruncatedPoly],
) -> Result<FfDetReport> {
    let mu = monomials.len();
    if xs.len() != mu || monomials.iter().any(|m| m.nvars() != 2) || g.nvars() != 2 {
        return Err(Error::InvalidInput("need μ points and monomials in (x, y); g in (x, t)".into()));
    }
    let mut alpha: Option<u32> = None;
    for (i, a) in xs.iter().enumerate() {
        for b in &xs[i + 1..] {
            if let Valuation::Finite(v) = a.sub(b)?.ord_t() {
                alpha = Some(alpha.map_or(v as u32, |c| c.min(v as u32)));
            }
        }
    }
    let mut rows = Vec::with_capacity(mu);
    for x in xs {
        let y = TruncatedPoly::eval_mpoly(g, core::slice::from_ref(x))?;
        let mut row = Vec::with_capacity(mu);
        for m in monomials {
            let mut v = TruncatedPoly::over_fp(q, &[1]);
            for _ in 0..m.exps()[0] {
                v = v.mul(x)?;
            }
            for _ in 0..m.exps()[1] {
                v = v.mul(&y)?;
            }
            row.push(v);
        }
        rows.push(row);
    }
    let delta = det_fq_t(q, &rows)?;
    let ord_delta = delta.ord_t();
    let alpha = alpha.unwrap_or(0);
    let bound = alpha as u64 * (mu as u64 * (mu as u64).saturating_sub(1) / 2);
    Ok(FfDetReport { mu, alpha, ord_delta, bound, holds: ord_delta.at_least(bound as i64) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ZPoly;
    use crate::taylor::{check_tr, Strategy};
    use alloc::vec;
    use proptest::prelude::*;

    fn q(a: i64) -> BigRational {
        BigRational::from_integer(a.into())
    }

    fn upoly(coeffs: &[i64]) -> QPoly {
        QPoly::from_terms(1, coeffs.iter().enumerate().map(|(e, c)| (Monomial(vec![e as u32]), q(*c))), &Rationals)
    }

    fn parabola_map(p: u64) -> PolyMap {
        PolyMap::on_whole(p, vec![upoly(&[0, 1]), upoly(&[0, 0, 1])]).unwrap()
    }

    fn parabola() -> SemialgSpec {
        let f = QPoly::from_terms(2, [(Monomial(vec![0, 1]), q(1)), (Monomial(vec![2, 0]), q(-1))], &Rationals);
        SemialgSpec::new(2, vec![f])
    }

    #[test]
    fn det_examples() {
        let id = PolyMap::new(3, Ball::from_integers(3, &[BigInt::zero()], 0), vec![upoly(&[0, 1])]).unwrap();
        let cert = check_tr(&id, 2, Strategy::Residual).unwrap();
        let rep = det_bound_check(&cert, 1, &[vec![q(4)], vec![q(13)]]).unwrap();
        assert_eq!((rep.setup.e, rep.alpha, rep.delta.clone()), (1, 2, q(9)));
        assert!(rep.holds);

        let pair = parabola_map(3);
        let cert = check_tr(&pair, 3, Strategy::Residual).unwrap();
        let rep = det_bound_check(&cert, 1, &[vec![q(1)], vec![q(10)], vec![q(28)]]).unwrap();
        assert_eq!((rep.setup.r, rep.setup.e, rep.alpha), (3, 3, 2));
        assert_eq!(rep.ord_delta, Valuation::Finite(7));
        assert!(rep.holds);
    }

    #[test]
    fn det_requires_certificate() {
        let f = PolyMap::on_whole(2, vec![QPoly::from_terms(1, [(Monomial(vec![2]), BigRational::new(1.into(), 2.into()))], &Rationals)]).unwrap();
        let cert = check_tr(&f, 2, Strategy::Residual).unwrap();
        assert!(!cert.holds());
        assert!(matches!(det_bound_check(&cert, 1, &[vec![q(0)], vec![q(2)]]), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn rank_examples() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<PadicNumber>> {
            rows.iter().map(|r| r.iter().map(|x| PadicNumber::from_i64(3, *x, 20)).collect()).collect()
        };
        assert_eq!(rank_padic(&m(&[&[1, 1], &[3, 6]]), 20).unwrap().rank, 2);
        assert_eq!(rank_padic(&m(&[&[1, 2], &[2, 4]]), 20).unwrap().rank, 1);
        assert_eq!(rank_padic(&m(&[&[0, 0], &[0, 0]]), 20).unwrap().rank, 0);
        let cert = rank_padic(&m(&[&[3, 1], &[9, 2]]), 20).unwrap();
        assert_eq!(cert.pivots[0], (0, 1, 0));
        // The second pivot has valuation 5, beyond K = 4.
        let close = vec![vec![q(1), q(1)], vec![q(1), q(1 + 243)]];
        assert!(matches!(rank_padic_rational(3, &close, 4), Err(Error::Indeterminate(_))));
        assert_eq!(rank_padic_rational(3, &close, 6).unwrap().rank, 2);
    }

    #[test]
    fn auxiliary_on_parabola() {
        let pts: Vec<Vec<BigRational>> = [(0, 0), (1, 1), (2, 4), (-1, 1)].iter().map(|(x, y)| vec![q(*x), q(*y)]).collect();
        let aux = auxiliary_polynomial(&pts, 2).unwrap();
        assert!(aux.vanishes_at(&pts));
        assert!(!aux.beta_coeff.is_zero());
        assert_eq!(aux.poly.coeff(&aux.beta), Some(&aux.beta_coeff));
        assert!(aux.poly.degree().unwrap() <= 2);

        let one = auxiliary_polynomial(&[vec![q(3), q(-2)]], 1).unwrap();
        assert!(one.vanishes_at(&[vec![q(3), q(-2)]]));
        assert_eq!(one.poly.degree(), Some(1));
    }

    #[test]
    fn auxiliary_full_rank() {
        // Six points in general position for conics.
        let pts: Vec<Vec<BigRational>> =
            [(0, 0), (1, 0), (0, 1), (1, 1), (2, 3), (5, 7)].iter().map(|(x, y)| vec![q(*x), q(*y)]).collect();
        assert_eq!(auxiliary_polynomial(&pts, 2), Err(Error::FullRank { rank: 6 }));
    }

    #[test]
    fn roots() {
        let f = upoly(&[-6, 1, 1]);
        assert_eq!(rational_roots(&f).unwrap(), vec![q(-3), q(2)]);
        let g = QPoly::from_terms(1, [(Monomial(vec![2]), q(2)), (Monomial(vec![1]), q(-1))], &Rationals);
        assert_eq!(rational_roots(&g).unwrap(), vec![q(0), BigRational::new(1.into(), 2.into())]);
        assert!(rational_roots(&upoly(&[1, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn parabola_cover() {
        let psi = vec![parabola_map(3)];
        let c = cover_points(&parabola(), &psi, 10, 2, 3, 1 << 20).unwrap();
        assert_eq!((c.alpha, c.total_points, c.balls.len()), (2, 7, 7));
        assert!(c.holds());
        let c = cover_points(&parabola(), &psi, 100, 2, 3, 1 << 20).unwrap();
        assert_eq!((c.alpha, c.total_points), (3, 21));
        assert!(c.holds());
        let all: usize = c.balls.iter().map(|b| b.points.len()).sum();
        assert_eq!(all, 21);
    }

    #[test]
    fn empty_cover() {
        // x^2 + y^2 = -1 has no real points.
        let f = QPoly::from_terms(
            2,
            [(Monomial(vec![2, 0]), q(1)), (Monomial(vec![0, 2]), q(1)), (Monomial(vec![0, 0]), q(1))],
            &Rationals,
        );
        let c = cover_points(&SemialgSpec::new(2, vec![f]), &[parabola_map(3)], 10, 2, 3, 1 << 20).unwrap();
        assert!(c.balls.is_empty() && c.holds());
    }

    #[test]
    fn uncovered_point() {
        // On 3Z_3 the parametrization misses x = 1.
        let psi = parabola_map(3).restrict(Ball::from_integers(3, &[BigInt::zero()], 1)).unwrap();
        assert!(matches!(cover_points(&parabola(), &[psi], 10, 2, 3, 1 << 20), Err(Error::NotCovered(_))));
    }

    #[test]
    fn ff_vandermonde() {
        // y = x^2 over F_3[t] at x_j = 1 + j·t^2, pairwise t-adically within 2.
        let g = ZPoly::from_terms(2, [(Monomial(vec![2, 0]), BigInt::one())], &crate::arith::Integers);
        let xs: Vec<TruncatedPoly> = (0..3u64).map(|j| TruncatedPoly::over_fp(3, &[1, 0, j])).collect();
        let monos = vec![Monomial(vec![0, 0]), Monomial(vec![1, 0]), Monomial(vec![0, 1])];
        let rep = det_bound_check_ff(3, &g, &monos, &xs).unwrap();
        assert_eq!((rep.alpha, rep.bound), (2, 6));
        assert!(rep.holds);
    }

    #[test]
    fn fq_t_determinant() {
        let a = |c: &[u64]| TruncatedPoly::over_fp(5, c);
        let m = vec![vec![a(&[1, 1]), a(&[2])], vec![a(&[0, 1]), a(&[1])]];
        // (1+t) - 2t = 1 - t
        assert_eq!(det_fq_t(5, &m).unwrap(), a(&[1, 4]));
    }

    proptest! {
        #[test]
        fn rank_matches_exact(entries in proptest::collection::vec(-20i64..21, 12), rows in 1usize..4, den in 1i64..4) {
            let m: Vec<Vec<BigRational>> = (0..rows)
                .map(|i| (0..4).map(|j| BigRational::new(entries[i * 4 + j].into(), den.into())).collect())
                .collect();
            let cert = rank_padic_rational(3, &m, 64).unwrap();
            prop_assert_eq!(cert.rank, crate::linalg::rank(&m));
        }

        #[test]
        fn auxiliary_vanishes(pts in proptest::collection::vec((-9i64..10, -9i64..10), 1..6), d in 1u32..3) {
            let mut pts: Vec<Vec<BigRational>> = pts.iter().map(|(x, y)| vec![q(*x), q(*y)]).collect();
            pts.sort();
            pts.dedup();
            match auxiliary_polynomial(&pts, d) {
                Ok(aux) => {
                    prop_assert!(aux.vanishes_at(&pts));
                    prop_assert!(!aux.beta_coeff.is_zero());
                    prop_assert!(aux.poly.degree().unwrap() <= d);
                }
                Err(Error::FullRank { rank }) => prop_assert_eq!(rank as u64, crate::combinatorics::delta_count(2, d)),
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }
}
