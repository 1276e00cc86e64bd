//! Rayon front ends for the enumerations in `nonarch-core`.
//!
//! Work is split into index ranges and merged in range order, so results do
//! not depend on the number of threads.

use std::ops::Range;

use num_rational::BigRational;
use rayon::prelude::*;

use nonarch_core::ffcount::{count_xr_range, xr_space, VarietySpec};
use nonarch_core::heights::{CandidateGrid, SemialgSpec};
use nonarch_core::taylor::{check_tr_capped, ExhaustivePlan, PolyMap, Strategy, TrCertificate};
use nonarch_core::Result;

use crate::error::{LabError, LabResult};

/// Environment variable that takes precedence over `--threads`.
pub const THREADS_ENV: &str = "NONARCH_LAB_THREADS";

/// Thread count from the environment, then the flag, then rayon's default.
pub fn resolve_threads(flag: Option<usize>) -> LabResult<Option<usize>> {
    let from_env = match std::env::var(THREADS_ENV) {
        Ok(s) if !s.trim().is_empty() => Some(
            s.trim().parse::<usize>().map_err(|_| LabError::config(format!("{THREADS_ENV}={s:?} is not a thread count")))?,
        ),
        _ => None,
    };
    let n = from_env.or(flag);
    if n == Some(0) {
        return Err(LabError::config("thread count must be positive"));
    }
    Ok(n)
}

pub fn build_pool(threads: Option<usize>) -> LabResult<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n);
    }
    b.build().map_err(|e| LabError::config(format!("thread pool: {e}")))
}

/// Splits `0..total` into consecutive ranges of at least `min_len`.
pub fn chunks(total: u64, min_len: u64) -> Vec<Range<u64>> {
    let pieces = (rayon::current_num_threads() as u64 * 8).max(1);
    let len = total.div_ceil(pieces).max(min_len).max(1);
    (0..total.div_ceil(len)).map(|i| i * len..((i + 1) * len).min(total)).collect()
}

/// `#X_r(F_q)` counted across the current pool.
pub fn count_xr(x: &VarietySpec, q: u64, r: u32, cap: u64) -> Result<u64> {
    let total = xr_space(x, q, r, cap)?;
    Ok(chunks(total, 1 << 12).into_par_iter().map(|c| count_xr_range(x, q, r, c)).sum())
}

/// [`check_tr_capped`] with the exhaustive scan split across the pool.
pub fn check_tr(f: &PolyMap, r: u32, strategy: Strategy, cap: u64) -> Result<TrCertificate> {
    let Strategy::Exhaustive { digits } = strategy else {
        return check_tr_capped(f, r, strategy, cap);
    };
    if r == 0 {
        return check_tr_capped(f, r, strategy, cap);
    }
    let plan = ExhaustivePlan::new(f, r, digits, cap)?;
    let scans: Vec<_> = chunks(plan.base_count(), 1).into_par_iter().map(|c| plan.scan(c)).collect();
    Ok(TrCertificate {
        subject: f.clone(),
        order: r,
        verdict: plan.verdict(&scans),
        strategy,
        up_to_tail: f.tail_floor.is_some(),
    })
}

/// Points of `grid` satisfying `spec`, in grid order.
pub fn filter_grid(spec: &SemialgSpec, grid: &CandidateGrid) -> Vec<Vec<BigRational>> {
    let parts: Vec<_> = chunks(grid.len(), 1 << 10).into_par_iter().map(|c| grid.filter_range(spec, c)).collect();
    parts.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunks_cover_exactly() {
        for total in [0u64, 1, 7, 1000, 4097] {
            let cs = chunks(total, 3);
            let mut next = 0;
            for c in &cs {
                assert_eq!(c.start, next);
                assert!(c.end > c.start);
                next = c.end;
            }
            assert_eq!(next, total);
        }
    }
}
