//! JSON shapes for inputs and reports.
//!
//! Polynomials are lists of `{"exp": [..], "coeff": "a/b"}` terms; every
//! number that could overflow a float travels as a string.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use nonarch_core::arith::{is_prime, Ball, Integers, Monomial, QPoly, Rationals, Valuation, ZPoly};
use nonarch_core::ffcount::VarietySpec;
use nonarch_core::heights::{PadicConstraint, SemialgSpec};
use nonarch_core::hilbert::HomIdeal;
use nonarch_core::taylor::{PolyMap, Witness};

use crate::error::{LabError, LabResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDto {
    pub exp: Vec<u32>,
    pub coeff: String,
}

pub type PolyDto = Vec<TermDto>;

/// Reads `base/path`; errors name `path` as given and keep serde's line/column diagnostic.
pub fn load_json<T: DeserializeOwned>(base: &Path, path: &Path) -> LabResult<(T, Value)> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(base.join(path)).map_err(|source| LabError::Io { path: shown.clone(), source })?;
    let raw: Value = serde_json::from_str(&text).map_err(|source| LabError::Parse { path: shown.clone(), source })?;
    let typed = serde_json::from_str(&text).map_err(|source| LabError::Parse { path: shown, source })?;
    Ok((typed, raw))
}

pub fn parse_rational(s: &str) -> LabResult<BigRational> {
    let bad = || LabError::config(format!("not a rational number: {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(LabError::config(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

pub fn parse_integer(s: &str) -> LabResult<BigInt> {
    let x = parse_rational(s)?;
    if !x.is_integer() {
        return Err(LabError::config(format!("expected an integer, got {s:?}")));
    }
    Ok(x.to_integer())
}

pub fn rat(x: &BigRational) -> String {
    x.to_string()
}

fn terms_of(nvars: usize, dto: &[TermDto]) -> LabResult<Vec<(Monomial, BigRational)>> {
    dto.iter()
        .map(|t| {
            if t.exp.len() != nvars {
                return Err(LabError::config(format!(
                    "term with {} exponents in a polynomial of {nvars} variables",
                    t.exp.len()
                )));
            }
            Ok((Monomial(t.exp.clone()), parse_rational(&t.coeff)?))
        })
        .collect()
}

pub fn qpoly_from_dto(nvars: usize, dto: &[TermDto]) -> LabResult<QPoly> {
    Ok(QPoly::from_terms(nvars, terms_of(nvars, dto)?, &Rationals))
}

pub fn zpoly_from_dto(nvars: usize, dto: &[TermDto]) -> LabResult<ZPoly> {
    let terms = terms_of(nvars, dto)?
        .into_iter()
        .map(|(m, c)| {
            if c.is_integer() {
                Ok((m, c.to_integer()))
            } else {
                Err(LabError::config(format!("coefficient {c} must be an integer here")))
            }
        })
        .collect::<LabResult<Vec<_>>>()?;
    Ok(ZPoly::from_terms(nvars, terms, &Integers))
}

pub fn qpoly_to_dto(f: &QPoly) -> PolyDto {
    f.terms().map(|(m, c)| TermDto { exp: m.0.clone(), coeff: rat(c) }).collect()
}

pub fn zpoly_to_dto(f: &ZPoly) -> PolyDto {
    f.terms().map(|(m, c)| TermDto { exp: m.0.clone(), coeff: c.to_string() }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallDto {
    /// Integer center coordinates.
    pub center: Vec<String>,
    pub radius: u32,
}

impl BallDto {
    pub fn build(&self, prime: u64) -> LabResult<Ball> {
        let center = self.center.iter().map(|c| parse_integer(c)).collect::<LabResult<Vec<_>>>()?;
        Ok(Ball::from_integers(prime, &center, self.radius))
    }

    pub fn of(ball: &Ball) -> Self {
        BallDto { center: ball.center_integers().iter().map(|c| c.to_string()).collect(), radius: ball.radius() }
    }
}

/// A polynomial map `Z_p^dim ⊇ domain → Q_p^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyMapDto {
    pub prime: u64,
    pub dim: usize,
    /// Defaults to all of `Z_p^dim`.
    #[serde(default)]
    pub domain: Option<BallDto>,
    pub components: Vec<PolyDto>,
    #[serde(default)]
    pub tail_floor: Option<i64>,
}

fn check_prime(p: u64, what: &str) -> LabResult<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(LabError::config(format!("{what} = {p} is not prime")))
    }
}

impl PolyMapDto {
    pub fn build(&self) -> LabResult<PolyMap> {
        check_prime(self.prime, "prime")?;
        let domain = match &self.domain {
            Some(b) => {
                if b.center.len() != self.dim {
                    return Err(LabError::config("domain center has the wrong dimension"));
                }
                b.build(self.prime)?
            }
            None => Ball::whole(self.prime, self.dim),
        };
        let components =
            self.components.iter().map(|c| qpoly_from_dto(self.dim, c)).collect::<LabResult<Vec<_>>>()?;
        let map = PolyMap::new(self.prime, domain, components)?;
        Ok(match self.tail_floor {
            Some(f) => map.with_tail_floor(f),
            None => map,
        })
    }

    pub fn of(map: &PolyMap) -> Self {
        PolyMapDto {
            prime: map.prime,
            dim: map.dim(),
            domain: Some(BallDto::of(&map.domain)),
            components: map.components.iter().map(qpoly_to_dto).collect(),
            tail_floor: map.tail_floor,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConstraintDto {
    OrdAtLeast { g: PolyDto, min: i64 },
    AcEquals { g: PolyDto, depth: u32, value: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PadicDto {
    pub p: u64,
    #[serde(default)]
    pub constraints: Vec<ConstraintDto>,
}

/// Equations, inequations and optional p-adic conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemialgDto {
    pub vars: usize,
    pub equations: Vec<PolyDto>,
    #[serde(default)]
    pub inequations: Vec<PolyDto>,
    #[serde(default)]
    pub padic: Option<PadicDto>,
}

impl SemialgDto {
    pub fn build(&self) -> LabResult<SemialgSpec> {
        let n = self.vars;
        let polys = |list: &[PolyDto]| list.iter().map(|f| qpoly_from_dto(n, f)).collect::<LabResult<Vec<_>>>();
        let mut spec = SemialgSpec::new(n, polys(&self.equations)?);
        spec.inequations = polys(&self.inequations)?;
        if let Some(padic) = &self.padic {
            check_prime(padic.p, "padic.p")?;
            spec.prime = Some(padic.p);
            for c in &padic.constraints {
                spec.constraints.push(match c {
                    ConstraintDto::OrdAtLeast { g, min } => PadicConstraint::OrdAtLeast { g: qpoly_from_dto(n, g)?, min: *min },
                    ConstraintDto::AcEquals { g, depth, value } => {
                        PadicConstraint::AcEquals { g: qpoly_from_dto(n, g)?, depth: *depth, value: *value }
                    }
                });
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn default_true() -> bool {
    true
}

/// A variety over `F_q[t]`: polynomials in `n` variables plus `t` (last).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyDto {
    pub name: String,
    pub n: usize,
    pub polys: Vec<PolyDto>,
    pub m: u32,
    pub d: u32,
    #[serde(default = "default_true")]
    pub irreducible: bool,
}

impl VarietyDto {
    pub fn build(&self) -> LabResult<VarietySpec> {
        let polys = self.polys.iter().map(|f| zpoly_from_dto(self.n + 1, f)).collect::<LabResult<Vec<_>>>()?;
        Ok(VarietySpec::new(&self.name, self.n, polys, self.m, self.d, self.irreducible)?)
    }
}

/// A homogeneous ideal in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDto {
    pub nvars: usize,
    pub generators: Vec<PolyDto>,
}

impl IdealDto {
    pub fn build(&self) -> LabResult<HomIdeal> {
        let gens = self.generators.iter().map(|f| qpoly_from_dto(self.nvars, f)).collect::<LabResult<Vec<_>>>()?;
        Ok(HomIdeal::new(self.nvars, gens)?)
    }
}

/// Input of `det-cover`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetCoverDto {
    pub curve: SemialgDto,
    pub psi: Vec<PolyMapDto>,
    #[serde(rename = "T")]
    pub t: u64,
    pub d: u32,
    pub p: u64,
    /// Accepted for compatibility; all arithmetic is exact.
    #[serde(default)]
    pub precision: Option<u32>,
}

pub fn valuation(v: Valuation) -> Value {
    match v {
        Valuation::Finite(k) => json!(k),
        Valuation::Infinite => json!("inf"),
    }
}

pub fn point(x: &[BigRational]) -> Value {
    Value::from(x.iter().map(rat).collect::<Vec<_>>())
}

pub fn witness(w: &Witness) -> Value {
    match w {
        Witness::Remainder { component, x, y } => {
            json!({"kind": "remainder", "component": component, "x": point(x), "y": point(y)})
        }
        Witness::Derivative { component, x, beta } => {
            json!({"kind": "derivative", "component": component, "x": point(x), "beta": beta})
        }
    }
}
