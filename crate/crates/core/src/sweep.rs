//! Data-parallel drivers over independent cells (class pairs, parameter
//! sets). Without the `parallel` feature every strategy runs sequentially.

use crate::fusion::FusionContext;
use crate::majid::Params;
use crate::quiverrep::{decompose_oracle, tensor_rep, Decomposition, IndecompClass};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run work on several threads.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// Order-preserving map over `items`.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Execution::Sequential => items.iter().map(f).collect(),
            Execution::Parallel => parallel_map(items, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// All ordered class pairs, lexicographic in `(i, e, j, f)`.
pub fn class_pairs(params: &Params) -> Vec<(IndecompClass, IndecompClass)> {
    let all = IndecompClass::all(params);
    all.iter()
        .flat_map(|&a| all.iter().map(move |&b| (a, b)))
        .collect()
}

/// The closed-form table over every class pair.
pub fn cg_table(params: &Params, exec: Execution) -> Vec<((IndecompClass, IndecompClass), Decomposition)> {
    let ctx = FusionContext::new(params);
    let pairs = class_pairs(params);
    let decomps = exec.map(&pairs, |&(a, b)| ctx.decompose(a, b));
    pairs.into_iter().zip(decomps).collect()
}

/// One disagreement between the closed form and the rank oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub left: IndecompClass,
    pub right: IndecompClass,
    pub formula: Decomposition,
    pub oracle: Decomposition,
}

/// Outcome of comparing the closed form with the oracle on every pair.
#[derive(Clone, Debug, Default)]
pub struct OracleReport {
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

/// Builds every tensor product for `params`, decomposes it by ranks and
/// compares with the closed form.
pub fn oracle_sweep(params: &Params, exec: Execution) -> Result<OracleReport> {
    let ctx = FusionContext::new(params);
    let pairs = class_pairs(params);
    let results = exec.map(&pairs, |&(a, b)| -> Result<Option<Mismatch>> {
        let rep = tensor_rep(a, b, params)?;
        let oracle = decompose_oracle(&rep, params.d())?;
        let formula = ctx.decompose(a, b);
        Ok((formula != oracle).then_some(Mismatch {
            left: a,
            right: b,
            formula,
            oracle,
        }))
    });
    let mut report = OracleReport::default();
    for r in results {
        report.checked += 1;
        if let Some(m) = r? {
            report.mismatches.push(m);
        }
    }
    Ok(report)
}
