//! Points of affine varieties over `F_q[t]` with coordinates of bounded degree.
//!
//! `X_r` is the set of `n`-tuples of polynomials of degree `< r` on which every
//! defining polynomial vanishes identically in `F_q[t]`. The same set is the
//! `F_q`-points of the expanded scheme in the `rn` coefficient variables.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{is_prime, reduce_int, Integers, ModPoly, Monomial, ZPoly};
use crate::error::{Error, Result};

/// Default cap on enumerated points.
pub const DEFAULT_CAP: u64 = 1 << 28;

/// An affine variety over `F_q[t]`, given by integer polynomials in
/// `X_1..X_n, t` (the last variable is `t`) reduced modulo `q` on use.
#[derive(Clone, Debug, PartialEq)]
pub struct VarietySpec {
    pub name: String,
    pub n: usize,
    pub polys: Vec<ZPoly>,
    /// Declared dimension.
    pub m: u32,
    /// Declared degree.
    pub d: u32,
    pub irreducible: bool,
}

impl VarietySpec {
    pub fn new(name: &str, n: usize, polys: Vec<ZPoly>, m: u32, d: u32, irreducible: bool) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidInput("need n ≥ 1 and d ≥ 1".into()));
        }
        if polys.iter().any(|f| f.nvars() != n + 1) {
            return Err(Error::InvalidInput(alloc::format!("polynomials must be in {} variables (X_1..X_n, t)", n + 1)));
        }
        Ok(VarietySpec { name: name.into(), n, polys, m, d, irreducible })
    }

    /// Whether no defining polynomial involves `t`.
    pub fn defined_over_fq(&self) -> bool {
        self.polys.iter().all(|f| f.degree_in(self.n) == 0)
    }
}

fn check_field(q: u64) -> Result<()> {
    if is_prime(q) {
        Ok(())
    } else {
        Err(Error::Unsupported(alloc::format!("q = {q}: only prime fields are supported")))
    }
}

fn space_size(q: u64, vars: usize, cap: u64) -> Result<u64> {
    let needed = (q as u128).checked_pow(vars as u32).unwrap_or(u128::MAX);
    if needed > cap as u128 {
        return Err(Error::CapExceeded { what: "points", needed, cap: cap as u128 });
    }
    Ok(needed as u64)
}

struct Term {
    exps: Vec<u32>,
    t_exp: usize,
    coeff: u64,
}

/// Evaluates the defining polynomials at tuples of `F_q[t]` elements with
/// preallocated buffers.
struct FqtEvaluator {
    q: u64,
    r: usize,
    n: usize,
    polys: Vec<Vec<Term>>,
    max_exp: Vec<u32>,
    /// `powers[i][e]` is `x_i^e`, coefficients `0..=e(r−1)`.
    powers: Vec<Vec<Vec<u64>>>,
    acc: Vec<u64>,
    term: Vec<u64>,
    scratch: Vec<u64>,
}

impl FqtEvaluator {
    fn new(x: &VarietySpec, q: u64, r: usize) -> Self {
        let n = x.n;
        let mut max_exp = alloc::vec![0u32; n];
        let mut width = 1;
        let polys: Vec<Vec<Term>> = x
            .polys
            .iter()
            .map(|f| {
                f.terms()
                    .filter_map(|(m, c)| {
                        let coeff = reduce_int(c, q);
                        let e = m.exps();
                        for i in 0..n {
                            max_exp[i] = max_exp[i].max(e[i]);
                        }
                        let deg: usize = e[..n].iter().map(|k| *k as usize).sum::<usize>() * r.saturating_sub(1) + e[n] as usize;
                        width = width.max(deg + 1);
                        (coeff != 0).then(|| Term { exps: e[..n].to_vec(), t_exp: e[n] as usize, coeff })
                    })
                    .collect()
            })
            .collect();
        let powers = max_exp
            .iter()
            .map(|m| (0..=*m).map(|e| alloc::vec![0u64; e as usize * r.saturating_sub(1) + 1]).collect())
            .collect();
        FqtEvaluator {
            q,
            r,
            n,
            polys,
            max_exp,
            powers,
            acc: alloc::vec![0; width],
            term: alloc::vec![0; width],
            scratch: alloc::vec![0; width],
        }
    }

    fn load(&mut self, coeffs: &[u64]) {
        let (q, r) = (self.q, self.r);
        for i in 0..self.n {
            let x = &coeffs[i * r..(i + 1) * r];
            let pw = &mut self.powers[i];
            pw[0][0] = 1;
            for e in 1..=self.max_exp[i] as usize {
                let (lo, hi) = pw.split_at_mut(e);
                let prev = &lo[e - 1];
                let cur = &mut hi[0];
                cur.iter_mut().for_each(|c| *c = 0);
                for (a, pa) in prev.iter().enumerate() {
                    if *pa == 0 {
                        continue;
                    }
                    for (b, xb) in x.iter().enumerate() {
                        cur[a + b] = (cur[a + b] + pa * xb) % q;
                    }
                }
            }
        }
    }

    /// Whether every polynomial vanishes at the loaded point.
    fn vanishes(&mut self) -> bool {
        let q = self.q;
        for f in &self.polys {
            self.acc.iter_mut().for_each(|c| *c = 0);
            for term in f {
                self.term.iter_mut().for_each(|c| *c = 0);
                self.term[term.t_exp] = term.coeff;
                let mut len = term.t_exp + 1;
                for (i, e) in term.exps.iter().enumerate() {
                    if *e == 0 {
                        continue;
                    }
                    let pw = &self.powers[i][*e as usize];
                    self.scratch[..len + pw.len() - 1].iter_mut().for_each(|c| *c = 0);
                    for (a, ta) in self.term[..len].iter().enumerate() {
                        if *ta == 0 {
                            continue;
                        }
                        for (b, pb) in pw.iter().enumerate() {
                            self.scratch[a + b] = (self.scratch[a + b] + ta * pb) % q;
                        }
                    }
                    len += pw.len() - 1;
                    core::mem::swap(&mut self.term, &mut self.scratch);
                }
                for (a, t) in self.acc.iter_mut().zip(&self.term[..len]) {
                    *a = (*a + t) % q;
                }
            }
            if self.acc.iter().any(|c| *c != 0) {
                return false;
            }
        }
        true
    }
}

fn unrank(mut index: u64, q: u64, out: &mut [u64]) {
    for slot in out.iter_mut().rev() {
        *slot = index % q;
        index /= q;
    }
}

/// Size `q^{rn}` of the search space. Index `k` encodes the coefficients
/// `x_{i,γ}` (variable-major, `γ` ascending) as base-`q` digits, most
/// significant first, so contiguous index ranges split by the first variable.
pub fn xr_space(x: &VarietySpec, q: u64, r: u32, cap: u64) -> Result<u64> {
    check_field(q)?;
    space_size(q, x.n * r as usize, cap)
}

/// Counts points of `X_r` whose index lies in `range`.
pub fn count_xr_range(x: &VarietySpec, q: u64, r: u32, range: Range<u64>) -> u64 {
    let mut ev = FqtEvaluator::new(x, q, r as usize);
    let mut coeffs = alloc::vec![0u64; x.n * r as usize];
    let mut count = 0;
    for idx in range {
        unrank(idx, q, &mut coeffs);
        ev.load(&coeffs);
        if ev.vanishes() {
            count += 1;
        }
    }
    count
}

/// `#X_r` over `F_q`.
pub fn enumerate_xr(x: &VarietySpec, q: u64, r: u32, cap: u64) -> Result<u64> {
    let total = xr_space(x, q, r, cap)?;
    Ok(count_xr_range(x, q, r, 0..total))
}

/// The points of `X_r`, each as `n` coefficient lists `[c_0, …, c_{r−1}]`.
pub fn points_xr(x: &VarietySpec, q: u64, r: u32, cap: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let total = xr_space(x, q, r, cap)?;
    let mut ev = FqtEvaluator::new(x, q, r as usize);
    let mut coeffs = alloc::vec![0u64; x.n * r as usize];
    let mut out = Vec::new();
    for idx in 0..total {
        unrank(idx, q, &mut coeffs);
        ev.load(&coeffs);
        if ev.vanishes() {
            out.push(coeffs.chunks(r as usize).map(<[u64]>::to_vec).collect());
        }
    }
    Ok(out)
}

/// One coefficient equation of the expanded scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpandedEquation {
    /// Index of the defining polynomial.
    pub source: usize,
    /// Power of `t` whose coefficient this is.
    pub t_power: u32,
    /// Polynomial over `F_q` in the `rn` variables, coefficients in `[0, q)`.
    pub poly: ZPoly,
}

/// The polynomial system in the coefficients `x_{i,γ}` (variable `i·r + γ`)
/// whose `F_q`-points are `X_r`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpandedSystem {
    pub q: u64,
    pub r: u32,
    pub n: usize,
    pub equations: Vec<ExpandedEquation>,
}

impl ExpandedSystem {
    pub fn nvars(&self) -> usize {
        self.n * self.r as usize
    }

    /// Name of variable `k`: `a_γ, b_γ, …` for up to three coordinates, else `x{i}_γ`.
    pub fn var_name(&self, k: usize) -> String {
        let (i, g) = (k / self.r as usize, k % self.r as usize);
        match i {
            0..=2 => alloc::format!("{}{g}", ["a", "b", "c"][i]),
            _ => alloc::format!("x{i}_{g}"),
        }
    }
}

/// Substitutes `x_i = Σ_{γ<r} x_{i,γ} t^γ` and splits by powers of `t`,
/// including powers `≥ r`. Equations that vanish modulo `q` are dropped.
pub fn expand_scheme(x: &VarietySpec, q: u64, r: u32) -> Result<ExpandedSystem> {
    check_field(q)?;
    if r == 0 {
        return Err(Error::InvalidInput("r must be positive".into()));
    }
    let nv = x.n * r as usize;
    let big = nv + 1;
    let t = ZPoly::var(big, nv, &Integers);
    let mut images: Vec<ZPoly> = (0..x.n)
        .map(|i| {
            let mut v = ZPoly::zero(big);
            for g in 0..r {
                let mut e = alloc::vec![0u32; big];
                e[i * r as usize + g as usize] = 1;
                e[nv] = g;
                v.add_term(Monomial(e), BigInt::from(1), &Integers);
            }
            v
        })
        .collect();
    images.push(t);
    let qb = BigInt::from(q);
    let mut equations = Vec::new();
    for (source, f) in x.polys.iter().enumerate() {
        let expanded = f.compose(&images, &Integers);
        let top = expanded.degree_in(nv);
        for tp in 0..=top {
            let terms = expanded.terms().filter(|(m, _)| m.exps()[nv] == tp).filter_map(|(m, c)| {
                let c = c.mod_floor(&qb);
                (!c.is_zero()).then(|| (Monomial(m.exps()[..nv].to_vec()), c))
            });
            let poly = ZPoly::from_terms(nv, terms, &Integers);
            if !poly.is_zero() {
                equations.push(ExpandedEquation { source, t_power: tp, poly });
            }
        }
    }
    Ok(ExpandedSystem { q, r, n: x.n, equations })
}

/// Number of `F_q`-points of an expanded system.
pub fn count_expanded(system: &ExpandedSystem, cap: u64) -> Result<u64> {
    let total = space_size(system.q, system.nvars(), cap)?;
    let polys: Vec<ModPoly> = system.equations.iter().map(|e| ModPoly::from_zpoly(system.q, &e.poly)).collect();
    let mut point = alloc::vec![0u64; system.nvars()];
    let mut count = 0;
    for idx in 0..total {
        unrank(idx, system.q, &mut point);
        if polys.iter().all(|f| f.eval(&point) == 0) {
            count += 1;
        }
    }
    Ok(count)
}

/// `#X_r` for one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRecord {
    pub q: u64,
    pub r: u32,
    pub count: u64,
}

/// Integer `δ` and `μ` fitted to counts `#X_r ≈ μ q^δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaFit {
    pub r: u32,
    pub delta: u32,
    pub mu: u64,
    /// `C²` for the least `C` with `|count − μq^δ| ≤ C q^{δ−1/2}` at every `q`.
    pub slack_squared: BigRational,
}

impl DeltaFit {
    /// Whether the slack constant is at most `c`.
    pub fn slack_at_most(&self, c: u64) -> bool {
        self.slack_squared <= BigRational::from_integer(BigInt::from(c) * BigInt::from(c))
    }
}

/// Default largest `μ` tried by [`estimate_delta`].
pub const MU_CAP: u64 = 8;

/// `(count − μq^δ)² / q^{2δ−1}`.
fn slack_sq(q: u64, count: u64, delta: u32, mu: u64) -> BigRational {
    let qb = BigInt::from(q);
    let diff = BigInt::from(count) - BigInt::from(mu) * qb.pow(delta);
    let num = &diff * &diff;
    if delta == 0 {
        BigRational::from_integer(num * qb)
    } else {
        BigRational::new(num, qb.pow(2 * delta - 1))
    }
}

/// Least-slack integers `δ ∈ [0, max_delta]`, `μ ∈ [1, mu_cap]`; ties go to
/// smaller `δ`, then smaller `μ`.
pub fn estimate_delta(records: &[CountRecord], max_delta: u32, mu_cap: u64) -> Result<DeltaFit> {
    let r = records.first().map(|c| c.r).unwrap_or(0);
    if records.iter().any(|c| c.r != r) {
        return Err(Error::InvalidInput("records must share r".into()));
    }
    let mut qs: Vec<u64> = records.iter().map(|c| c.q).collect();
    qs.sort_unstable();
    qs.dedup();
    if qs.len() < 2 {
        return Err(Error::InvalidInput("need counts for at least two values of q".into()));
    }
    if records.iter().all(|c| c.count == 0) {
        return Err(Error::InvalidInput("all counts are zero".into()));
    }
    let mut best: Option<DeltaFit> = None;
    for delta in 0..=max_delta {
        for mu in 1..=mu_cap.max(1) {
            let s = records.iter().map(|c| slack_sq(c.q, c.count, delta, mu)).max().expect("nonempty");
            if best.as_ref().map_or(true, |b| s < b.slack_squared) {
                best = Some(DeltaFit { r, delta, mu, slack_squared: s });
            }
        }
    }
    Ok(best.expect("at least one candidate"))
}

/// Fitted `δ` against the dimension bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub r: u32,
    pub delta: u32,
    /// `rm`.
    pub trivial_bound: u64,
    pub trivial_ok: bool,
    /// `r(m−1) + ⌈r/d⌉`, checked only for irreducible `X`.
    pub curve_bound: Option<i64>,
    pub curve_ok: Option<bool>,
    /// Per `q`: `(#X_r / (r q^{r(m−1/2)}))²`.
    pub cohen_ratio_squared: Vec<(u64, BigRational)>,
}

impl BoundsReport {
    pub fn holds(&self) -> bool {
        self.trivial_ok && self.curve_ok.unwrap_or(true)
    }
}

pub fn verify_bounds(fit: &DeltaFit, records: &[CountRecord], x: &VarietySpec) -> BoundsReport {
    let r = fit.r;
    let trivial_bound = r as u64 * x.m as u64;
    let curve_bound = x
        .irreducible
        .then(|| r as i64 * (x.m as i64 - 1) + r.div_ceil(x.d) as i64);
    let cohen_ratio_squared = records
        .iter()
        .map(|c| {
            let qb = BigInt::from(c.q);
            // q^{r(2m−1)} may have a negative exponent when m = 0.
            let e = r as i64 * (2 * x.m as i64 - 1);
            let qpow = if e >= 0 {
                BigRational::from_integer(qb.pow(e as u32))
            } else {
                BigRational::new(BigInt::from(1), qb.pow((-e) as u32))
            };
            let num = BigRational::from_integer(BigInt::from(c.count).pow(2u32));
            let den = qpow * BigRational::from_integer(BigInt::from(r as u64 * r as u64));
            (c.q, num / den)
        })
        .collect();
    BoundsReport {
        r,
        delta: fit.delta,
        trivial_bound,
        trivial_ok: fit.delta as u64 <= trivial_bound,
        curve_bound,
        curve_ok: curve_bound.map(|b| fit.delta as i64 <= b),
        cohen_ratio_squared,
    }
}

/// `⌈r/d⌉` as `u32`.
pub fn ceil_div(r: u32, d: u32) -> u32 {
    r.div_ceil(d)
}

/// Builds `X_1^a X_2^b …` monomials with `t` last, for concise test fixtures.
pub fn zpoly(nvars: usize, terms: &[(&[u32], i64)]) -> ZPoly {
    ZPoly::from_terms(nvars, terms.iter().map(|(e, c)| (Monomial(e.to_vec()), BigInt::from(*c))), &Integers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    /// y = x^d, i.e. y − x^d in (x, y, t).
    fn graph(d: u32) -> VarietySpec {
        VarietySpec::new("graph", 2, vec![zpoly(3, &[(&[0, 1, 0], 1), (&[d, 0, 0], -1)])], 1, d, true).unwrap()
    }

    fn line() -> VarietySpec {
        VarietySpec::new("line", 2, vec![zpoly(3, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1)])], 1, 1, true).unwrap()
    }

    fn elliptic() -> VarietySpec {
        let f = zpoly(3, &[(&[0, 2, 0], 1), (&[3, 0, 0], -1), (&[1, 0, 0], 1)]);
        VarietySpec::new("y2=x3-x", 2, vec![f], 1, 3, true).unwrap()
    }

    fn fixtures() -> Vec<VarietySpec> {
        vec![
            graph(2),
            line(),
            // y = x^2 + t x
            VarietySpec::new("y=x2+tx", 2, vec![zpoly(3, &[(&[0, 1, 0], 1), (&[2, 0, 0], -1), (&[1, 0, 1], -1)])], 1, 2, true)
                .unwrap(),
            // xy = 1 + t
            VarietySpec::new("xy=1+t", 2, vec![zpoly(3, &[(&[1, 1, 0], 1), (&[0, 0, 0], -1), (&[0, 0, 1], -1)])], 1, 2, true)
                .unwrap(),
            // x^2 + y^2 = 1
            VarietySpec::new("circle", 2, vec![zpoly(3, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 0], -1)])], 1, 2, true)
                .unwrap(),
        ]
    }

    #[test]
    fn count_examples() {
        assert_eq!(enumerate_xr(&graph(2), 2, 2, DEFAULT_CAP), Ok(2));
        assert_eq!(enumerate_xr(&line(), 3, 2, DEFAULT_CAP), Ok(9));
        assert_eq!(enumerate_xr(&graph(3), 2, 4, DEFAULT_CAP), Ok(4));
        assert!(matches!(enumerate_xr(&line(), 4, 1, DEFAULT_CAP), Err(Error::Unsupported(_))));
        assert!(matches!(enumerate_xr(&line(), 5, 9, 1000), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn xy_equals_one_plus_t() {
        // x is a unit c or c(1 + t), so 2(q − 1) solutions once r ≥ 2.
        assert_eq!(enumerate_xr(&fixtures()[3], 3, 1, DEFAULT_CAP), Ok(0));
        assert_eq!(enumerate_xr(&fixtures()[3], 3, 3, DEFAULT_CAP), Ok(4));
        assert_eq!(enumerate_xr(&fixtures()[3], 5, 2, DEFAULT_CAP), Ok(8));
    }

    #[test]
    fn expansions() {
        let show = |s: &ExpandedSystem| -> Vec<(u32, Vec<(Vec<u32>, i64)>)> {
            s.equations
                .iter()
                .map(|e| {
                    let mut t: Vec<(Vec<u32>, i64)> =
                        e.poly.terms().map(|(m, c)| (m.exps().to_vec(), c.to_i64().unwrap())).collect();
                    t.sort();
                    (e.t_power, t)
                })
                .collect()
        };
        // Variables (a0, a1, b0, b1); in characteristic 2: b0 = a0^2, b1 = 0, a1^2 = 0.
        let s = expand_scheme(&graph(2), 2, 2).unwrap();
        assert_eq!(
            show(&s),
            vec![
                (0, vec![(vec![0, 0, 1, 0], 1), (vec![2, 0, 0, 0], 1)]),
                (1, vec![(vec![0, 0, 0, 1], 1)]),
                (2, vec![(vec![0, 2, 0, 0], 1)]),
            ]
        );
        let s = expand_scheme(&graph(2), 3, 2).unwrap();
        assert_eq!(
            show(&s),
            vec![
                (0, vec![(vec![0, 0, 1, 0], 1), (vec![2, 0, 0, 0], 2)]),
                (1, vec![(vec![0, 0, 0, 1], 1), (vec![1, 1, 0, 0], 1)]),
                (2, vec![(vec![0, 2, 0, 0], 2)]),
            ]
        );
        let s = expand_scheme(&line(), 5, 2).unwrap();
        assert_eq!(
            show(&s),
            vec![(0, vec![(vec![0, 0, 1, 0], 1), (vec![1, 0, 0, 0], 1)]), (1, vec![(vec![0, 0, 0, 1], 1), (vec![0, 1, 0, 0], 1)])]
        );
        assert_eq!(s.var_name(3), "b1");
    }

    #[test]
    fn expanded_counts() {
        assert_eq!(count_expanded(&expand_scheme(&graph(2), 2, 2).unwrap(), DEFAULT_CAP), Ok(2));
        assert_eq!(count_expanded(&expand_scheme(&line(), 3, 2).unwrap(), DEFAULT_CAP), Ok(9));
        let empty = ExpandedSystem { q: 2, r: 1, n: 2, equations: vec![] };
        assert_eq!(count_expanded(&empty, DEFAULT_CAP), Ok(4));
    }

    #[test]
    fn identification_on_fixtures() {
        for x in fixtures() {
            for q in [2, 3, 5] {
                for r in 1..=2 {
                    let direct = enumerate_xr(&x, q, r, DEFAULT_CAP).unwrap();
                    let expanded = count_expanded(&expand_scheme(&x, q, r).unwrap(), DEFAULT_CAP).unwrap();
                    assert_eq!(direct, expanded, "{} q={q} r={r}", x.name);
                }
            }
        }
    }

    #[test]
    fn graph_law() {
        for d in 1..=3 {
            for q in [2, 3] {
                for r in 1..=4 {
                    let c = enumerate_xr(&graph(d), q, r, DEFAULT_CAP).unwrap();
                    assert_eq!(c, q.pow(r.div_ceil(d)), "d={d} q={q} r={r}");
                }
            }
        }
    }

    #[test]
    fn monotone_in_r() {
        for x in [graph(2), line(), fixtures()[4].clone()] {
            let counts: Vec<u64> = (1..=3).map(|r| enumerate_xr(&x, 3, r, DEFAULT_CAP).unwrap()).collect();
            assert!(counts.windows(2).all(|w| w[0] <= w[1]), "{}: {counts:?}", x.name);
        }
    }

    #[test]
    fn fits() {
        let recs = |f: &dyn Fn(u64) -> u64, r: u32| -> Vec<CountRecord> {
            [2u64, 3, 5].iter().map(|q| CountRecord { q: *q, r, count: f(*q) }).collect()
        };
        let fit = estimate_delta(&recs(&|q| q.pow(2), 3), 6, MU_CAP).unwrap();
        assert_eq!((fit.delta, fit.mu), (2, 1));
        assert!(fit.slack_squared.is_zero());
        let fit = estimate_delta(&recs(&|q| 3 * q.pow(4), 4), 8, MU_CAP).unwrap();
        assert_eq!((fit.delta, fit.mu, fit.slack_squared.is_zero()), (4, 3, true));
        assert!(estimate_delta(&recs(&|_| 0, 1), 2, MU_CAP).is_err());
        assert!(estimate_delta(&recs(&|q| q, 1)[..1], 2, MU_CAP).is_err());
    }

    #[test]
    fn elliptic_r1_counts() {
        // Affine points of y^2 = x^3 − x: q for q ≡ 3 mod 4.
        assert_eq!(enumerate_xr(&elliptic(), 7, 1, DEFAULT_CAP), Ok(7));
        assert_eq!(enumerate_xr(&elliptic(), 5, 1, DEFAULT_CAP), Ok(7));
        let recs: Vec<CountRecord> = [5u64, 7, 11, 13]
            .iter()
            .map(|q| CountRecord { q: *q, r: 1, count: enumerate_xr(&elliptic(), *q, 1, DEFAULT_CAP).unwrap() })
            .collect();
        let fit = estimate_delta(&recs, 2, MU_CAP).unwrap();
        assert_eq!(fit.delta, 1);
        let rep = verify_bounds(&fit, &recs, &elliptic());
        assert!(rep.holds());
        assert_eq!(rep.curve_bound, Some(1));
    }

    #[test]
    fn bounds_line() {
        let recs: Vec<CountRecord> =
            [2u64, 3].iter().map(|q| CountRecord { q: *q, r: 3, count: enumerate_xr(&line(), *q, 3, DEFAULT_CAP).unwrap() }).collect();
        let fit = estimate_delta(&recs, 6, MU_CAP).unwrap();
        let rep = verify_bounds(&fit, &recs, &line());
        assert_eq!((rep.delta, rep.trivial_bound, rep.curve_bound), (3, 3, Some(3)));
        assert!(rep.holds());
    }

    #[test]
    fn partitioned_count() {
        let x = fixtures()[4].clone();
        let total = xr_space(&x, 3, 2, DEFAULT_CAP).unwrap();
        let split = count_xr_range(&x, 3, 2, 0..total / 3) + count_xr_range(&x, 3, 2, total / 3..total);
        assert_eq!(split, enumerate_xr(&x, 3, 2, DEFAULT_CAP).unwrap());
        assert_eq!(points_xr(&x, 3, 2, DEFAULT_CAP).unwrap().len() as u64, split);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn power_law_recovered(delta in 0u32..4, mu in 1u64..6) {
            let recs: Vec<CountRecord> = [2u64, 3, 5, 7].iter().map(|q| CountRecord { q: *q, r: 2, count: mu * q.pow(delta) }).collect();
            let fit = estimate_delta(&recs, 4, MU_CAP).unwrap();
            prop_assert_eq!((fit.delta, fit.mu), (delta, mu));
            prop_assert!(fit.slack_squared.is_zero());
        }

        #[test]
        fn univariate_graphs(coeffs in proptest::collection::vec(0i64..5, 1..4), q in prop_oneof![Just(2u64), Just(3)], r in 1u32..4) {
            // y = c_0 + c_1 x + … + x^d with a monic top term.
            let d = coeffs.len() as u32;
            let mut terms: Vec<(Vec<u32>, i64)> = vec![(vec![0, 1, 0], 1), (vec![d, 0, 0], -1)];
            for (k, c) in coeffs.iter().enumerate() {
                terms.push((vec![k as u32, 0, 0], -c));
            }
            let refs: Vec<(&[u32], i64)> = terms.iter().map(|(e, c)| (e.as_slice(), *c)).collect();
            let x = VarietySpec::new("g", 2, vec![zpoly(3, &refs)], 1, d, true).unwrap();
            prop_assert_eq!(enumerate_xr(&x, q, r, DEFAULT_CAP).unwrap(), q.pow(r.div_ceil(d)));
        }
    }
}
