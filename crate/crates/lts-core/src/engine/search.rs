//! Minimal-control search: which subsets of an ambient basis still
//! generate the whole space under the closure.

use crate::engine::{is_lts_subspace, lts_closure, ClosureOptions, Generator, GeneratorSet};
use crate::error::Error;
use crate::exec;
use crate::Result;

/// Cap on the ambient size for the exhaustive mode (2^12 subsets).
pub const EXHAUSTIVE_MAX: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// All subsets of minimum cardinality, found by increasing size;
    /// deterministic (cardinality, then lexicographic position).
    Exhaustive,
    /// One subset built by largest-rank-gain selection; fast but not
    /// guaranteed minimum.
    Greedy,
}

/// Searches for generating subsets of `ambient` whose closure reaches
/// `target_dim`. The ambient family must itself be a linearly
/// independent, double-bracket-closed basis. Returned subsets are
/// lists of generator indices, ascending; an empty result means no
/// subset generates the target dimension.
pub fn minimal_generators(
    ambient: &GeneratorSet,
    target_dim: usize,
    mode: SearchMode,
    tol: f64,
) -> Result<Vec<Vec<usize>>> {
    let matrices = ambient.matrices();
    let check = is_lts_subspace(&matrices, tol)?;
    if !check.closed {
        let w = check.witness.expect("open subspace has a witness");
        return Err(Error::NotLtsClosed(w.indices, w.residual));
    }
    let opts = ClosureOptions::with_tol(tol);
    match mode {
        SearchMode::Exhaustive => exhaustive(ambient, target_dim, &opts),
        SearchMode::Greedy => greedy(ambient, target_dim, &opts),
    }
}

fn closure_dim(items: &[&Generator], target_dim: usize, opts: &ClosureOptions) -> Result<usize> {
    let set =
        GeneratorSet::with_indices(items.iter().map(|g| (g.index, g.matrix.clone())).collect())?;
    match lts_closure(&set, target_dim, opts) {
        Ok(report) => Ok(report.dim),
        Err(Error::DepthExceeded { dim, .. }) => Ok(dim),
        Err(e) => Err(e),
    }
}

fn exhaustive(
    ambient: &GeneratorSet,
    target_dim: usize,
    opts: &ClosureOptions,
) -> Result<Vec<Vec<usize>>> {
    let m = ambient.len();
    if m > EXHAUSTIVE_MAX {
        return Err(Error::AmbientTooLarge {
            got: m,
            max: EXHAUSTIVE_MAX,
        });
    }
    let items: Vec<&Generator> = ambient.iter().collect();
    for k in 1..=m {
        let subsets = combinations(m, k);
        let dims = exec::map_coarse(&subsets, |positions| {
            let chosen: Vec<&Generator> = positions.iter().map(|&p| items[p]).collect();
            closure_dim(&chosen, target_dim, opts)
        });
        let mut winners = Vec::new();
        for (positions, dim) in subsets.iter().zip(dims) {
            if dim? == target_dim {
                winners.push(positions.iter().map(|&p| items[p].index).collect());
            }
        }
        if !winners.is_empty() {
            return Ok(winners);
        }
    }
    Ok(Vec::new())
}

fn greedy(
    ambient: &GeneratorSet,
    target_dim: usize,
    opts: &ClosureOptions,
) -> Result<Vec<Vec<usize>>> {
    let items: Vec<&Generator> = ambient.iter().collect();
    let mut chosen: Vec<usize> = Vec::new();
    let mut current_dim = 0usize;
    while current_dim < target_dim && chosen.len() < items.len() {
        let candidates: Vec<usize> = (0..items.len()).filter(|p| !chosen.contains(p)).collect();
        let gains = exec::map_coarse(&candidates, |&p| {
            let mut trial: Vec<&Generator> = chosen.iter().map(|&q| items[q]).collect();
            trial.push(items[p]);
            closure_dim(&trial, target_dim, opts)
        });
        let mut best: Option<(usize, usize)> = None; // (dim, position)
        for (&p, dim) in candidates.iter().zip(gains) {
            let dim = dim?;
            if best.is_none_or(|(bd, _)| dim > bd) {
                best = Some((dim, p));
            }
        }
        let (dim, p) = best.expect("candidate list is nonempty");
        if dim <= current_dim {
            break; // no candidate makes progress
        }
        chosen.push(p);
        current_dim = dim;
    }
    if current_dim == target_dim {
        chosen.sort_unstable();
        Ok(vec![chosen.into_iter().map(|p| items[p].index).collect()])
    } else {
        Ok(Vec::new())
    }
}

/// k-subsets of 0..m in lexicographic order.
fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..m {
            current.push(i);
            rec(i + 1, m, k, current, out);
            current.pop();
        }
    }
    rec(0, m, k, &mut current, &mut out);
    out
}
