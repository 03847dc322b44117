//! The controllability engine: the double-bracket filtration, the
//! generated Lie-triple-system closure, and the rank test behind the
//! global controllability verdict.
//!
//! Starting from the span of the generators, each sweep adjoins
//! `[[A, B], C]` for `A`, `C` ranging over the original generators and
//! `B` over the elements added so far; trilinearity makes bracketing
//! only against the newest elements equivalent to bracketing against
//! the whole current space. The iteration stops when a sweep adds
//! nothing (the closure stabilized) or when the rank reaches the
//! target dimension, in which case the system is controllable and the
//! recorded bracket words form the certificate.

mod axioms;
mod search;

pub use axioms::{
    is_lts_subspace, verify_lts_axioms, AxiomCheck, AxiomOptions, AxiomReport, LtsCheck,
    TripleWitness,
};
pub use search::{minimal_generators, SearchMode};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exec;
use crate::matrix::{double_bracket, Matrix};
use crate::span::{BasisBuilder, BasisSet, DEFAULT_TOL};
use crate::word::BracketWord;
use crate::Result;

/// A generator with the index its bracket-word leaves refer to.
#[derive(Clone, Debug)]
pub struct Generator {
    pub index: usize,
    pub matrix: Matrix,
}

/// An ordered, index-labelled family of control matrices.
///
/// Indices are 1-based and label word leaves; plain lists get indices
/// `1..=m`, while catalog selections keep their catalog numbering (so
/// the certificate for controls `{e2, e4, e5}` reads `[[2,4],5]`, not
/// `[[1,2],3]`).
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    items: Vec<Generator>,
}

impl GeneratorSet {
    pub fn from_matrices(matrices: Vec<Matrix>) -> Result<Self> {
        let items = matrices
            .into_iter()
            .enumerate()
            .map(|(i, matrix)| Generator {
                index: i + 1,
                matrix,
            })
            .collect();
        Self::validate(items)
    }

    pub fn with_indices(pairs: Vec<(usize, Matrix)>) -> Result<Self> {
        let items = pairs
            .into_iter()
            .map(|(index, matrix)| Generator { index, matrix })
            .collect();
        Self::validate(items)
    }

    fn validate(items: Vec<Generator>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::EmptyInput);
        }
        let dim = items[0].matrix.dim();
        for g in &items {
            if g.matrix.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: g.matrix.dim(),
                });
            }
            if g.index == 0 {
                return Err(Error::IndexOutOfRange { index: 0 });
            }
            if items.iter().filter(|h| h.index == g.index).count() > 1 {
                return Err(Error::DuplicateIndex(g.index));
            }
        }
        Ok(Self { items })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.items[0].matrix.dim()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.items.iter()
    }

    pub fn matrices(&self) -> Vec<Matrix> {
        self.items.iter().map(|g| g.matrix.clone()).collect()
    }

    pub fn by_index(&self, index: usize) -> Result<&Matrix> {
        self.items
            .iter()
            .find(|g| g.index == index)
            .map(|g| &g.matrix)
            .ok_or(Error::IndexOutOfRange { index })
    }

    /// Evaluates a bracket word over these generators.
    pub fn evaluate(&self, word: &BracketWord) -> Result<Matrix> {
        match word {
            BracketWord::Leaf(i) => Ok(self.by_index(*i)?.clone()),
            BracketWord::Node(l, m, r) => {
                double_bracket(&self.evaluate(l)?, &self.evaluate(m)?, &self.evaluate(r)?)
            }
        }
    }
}

/// Options for the closure iteration.
#[derive(Clone, Copy, Debug)]
pub struct ClosureOptions {
    pub tol: f64,
    /// Sweep cap; defaults to `2 * n^2`, far above any stabilization
    /// depth since the rank strictly increases until it stabilizes and
    /// is bounded by `2 n^2`.
    pub max_depth: Option<usize>,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_depth: None,
        }
    }
}

impl ClosureOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            max_depth: None,
        }
    }

    fn resolved_max_depth(&self, n: usize) -> usize {
        self.max_depth.unwrap_or(2 * n * n)
    }
}

/// Result of the closure iteration: the stabilized basis, the sweep
/// depth, the producing bracket words, and the verdict against the
/// target dimension.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClosureReport {
    pub dim: usize,
    pub depth: usize,
    pub controllable: bool,
    pub target_dim: usize,
    pub basis: Vec<Matrix>,
    pub words: Vec<BracketWord>,
}

impl ClosureReport {
    /// Rebuilds the span certificate for the reported basis.
    pub fn basis_set(&self, tol: f64) -> Result<BasisSet> {
        BasisSet::span(&self.basis, tol)
    }
}

/// Iterates the double-bracket filtration until the rank stabilizes or
/// reaches `target_dim`. Errors with the partial report when the sweep
/// cap is hit first.
pub fn lts_closure(
    gens: &GeneratorSet,
    target_dim: usize,
    opts: &ClosureOptions,
) -> Result<ClosureReport> {
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidTolerance(opts.tol));
    }
    let n = gens.dim();
    let max_depth = opts.resolved_max_depth(n).max(1);

    let mut builder = BasisBuilder::new(n, opts.tol);
    let mut basis: Vec<Matrix> = Vec::new();
    let mut words: Vec<BracketWord> = Vec::new();
    for g in gens.iter() {
        if builder.try_add(&g.matrix)? {
            basis.push(g.matrix.clone());
            words.push(BracketWord::Leaf(g.index));
        }
    }

    let mut depth = 1usize;
    let mut frontier: Vec<usize> = (0..basis.len()).collect();
    let mut stabilized = false;

    while builder.rank() != target_dim {
        if depth >= max_depth {
            break;
        }
        // Sweep: [[A, B], C] with A, C original generators and B over
        // the elements new in the previous step. A is the outer loop,
        // so for the worked systems the recorded producer of a new
        // direction is the lexicographically first (A, B, C) triple.
        let jobs: Vec<(usize, usize, usize)> = (0..gens.len())
            .flat_map(|i| {
                frontier
                    .iter()
                    .flat_map(move |&b| (0..gens.len()).map(move |j| (b, i, j)))
            })
            .collect();
        let candidates = exec::map_fine(&jobs, |&(b, i, j)| {
            let a = &gens.items[i];
            let c = &gens.items[j];
            double_bracket(&a.matrix, &basis[b], &c.matrix).map(|value| {
                let word = BracketWord::node(
                    BracketWord::Leaf(a.index),
                    words[b].clone(),
                    BracketWord::Leaf(c.index),
                );
                (value, word)
            })
        });
        let candidates: Vec<(Matrix, BracketWord)> =
            candidates.into_iter().collect::<Result<_>>()?;

        // Thresholds for this sweep see every candidate's norm, so
        // decisions do not depend on evaluation order.
        for (value, _) in &candidates {
            builder.bump_scale(value.frobenius_norm());
        }
        // Most candidates are already dependent; weed them out against
        // the sweep-start span concurrently (dependence is monotone:
        // the span only grows). Survivors get the full in-order pass.
        let dependent = exec::map_fine(&candidates, |(value, _)| {
            builder.is_certainly_dependent(value)
        });

        let mut added = Vec::new();
        for ((value, word), dependent) in candidates.into_iter().zip(dependent) {
            if dependent {
                continue;
            }
            if builder.try_add(&value)? {
                added.push(basis.len());
                basis.push(value);
                words.push(word);
            }
        }

        if added.is_empty() {
            stabilized = true;
            break;
        }
        depth += 1;
        frontier = added;
    }

    let dim = builder.rank();
    let report = ClosureReport {
        dim,
        depth,
        controllable: dim == target_dim,
        target_dim,
        basis,
        words,
    };
    if dim != target_dim && !stabilized {
        return Err(Error::DepthExceeded {
            max_depth,
            dim,
            target_dim,
            report: Box::new(report),
        });
    }
    Ok(report)
}

/// Outcome of the rank condition: the verdict plus, when controllable,
/// `target_dim` bracket words whose evaluations span the closure.
#[derive(Clone, Debug, Serialize)]
pub struct ChowResult {
    pub controllable: bool,
    pub certificate: Vec<BracketWord>,
    pub report: ClosureReport,
}

/// Decides global controllability: the generated closure must span a
/// `target_dim`-dimensional space. The certificate drives the flow
/// layer's rank check.
pub fn chow_check(gens: &GeneratorSet, target_dim: usize, tol: f64) -> Result<ChowResult> {
    let report = lts_closure(gens, target_dim, &ClosureOptions::with_tol(tol))?;
    let certificate = if report.controllable {
        report.words.clone()
    } else {
        Vec::new()
    };
    Ok(ChowResult {
        controllable: report.controllable,
        certificate,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn so3_pair() -> GeneratorSet {
        GeneratorSet::from_matrices(vec![
            Matrix::from_int_rows(&[&[0, 0, 0], &[0, 0, -1], &[0, 1, 0]]),
            Matrix::from_int_rows(&[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]]),
        ])
        .unwrap()
    }

    fn se3_e(k: usize) -> Matrix {
        match k {
            1 => Matrix::unit(4, 0, 3),
            2 => Matrix::unit(4, 1, 3),
            3 => Matrix::unit(4, 2, 3),
            4 => Matrix::unit(4, 2, 1).sub(&Matrix::unit(4, 1, 2)),
            5 => Matrix::unit(4, 0, 2).sub(&Matrix::unit(4, 2, 0)),
            6 => Matrix::unit(4, 1, 0).sub(&Matrix::unit(4, 0, 1)),
            _ => unreachable!(),
        }
    }

    fn sym3_a(k: usize) -> Matrix {
        let e = |i, j| Matrix::unit(3, i, j);
        match k {
            1 => e(0, 0),
            2 => e(1, 1),
            3 => e(2, 2),
            4 => e(0, 1).add(&e(1, 0)),
            5 => e(0, 2).add(&e(2, 0)),
            6 => e(1, 2).add(&e(2, 1)),
            _ => unreachable!(),
        }
    }

    #[test]
    fn sphere_pair_is_controllable_at_depth_one() {
        let report = lts_closure(&so3_pair(), 2, &ClosureOptions::default()).unwrap();
        assert_eq!(report.dim, 2);
        assert!(report.depth <= 2);
        assert!(report.controllable);
    }

    #[test]
    fn single_generator_stabilizes_immediately() {
        let gens =
            GeneratorSet::from_matrices(vec![Matrix::from_int_rows(&[&[0, 1], &[0, 0]])]).unwrap();
        let report = lts_closure(&gens, 4, &ClosureOptions::default()).unwrap();
        assert_eq!(report.dim, 1);
        assert_eq!(report.depth, 1);
        assert!(!report.controllable);
    }

    #[test]
    fn goe_published_controls_fall_short() {
        let gens = GeneratorSet::with_indices(vec![(1, sym3_a(1)), (3, sym3_a(3)), (4, sym3_a(4))])
            .unwrap();
        let report = lts_closure(&gens, 6, &ClosureOptions::default()).unwrap();
        assert_eq!(report.dim, 4);
        assert!(!report.controllable);
    }

    #[test]
    fn goe_alternative_controls_reach_full_dimension() {
        let gens = GeneratorSet::with_indices(vec![(1, sym3_a(1)), (4, sym3_a(4)), (6, sym3_a(6))])
            .unwrap();
        let report = lts_closure(&gens, 6, &ClosureOptions::default()).unwrap();
        assert_eq!(report.dim, 6);
        assert!(report.controllable);
    }

    #[test]
    fn chow_certificate_uses_catalog_indices() {
        let gens =
            GeneratorSet::with_indices(vec![(2, se3_e(2)), (4, se3_e(4)), (5, se3_e(5))]).unwrap();
        let result = chow_check(&gens, 4, DEFAULT_TOL).unwrap();
        assert!(result.controllable);
        assert_eq!(result.certificate.len(), 4);
        let words: Vec<String> = result.certificate.iter().map(|w| w.to_string()).collect();
        assert!(words.contains(&"[[2,4],5]".to_string()), "words: {words:?}");
        // The node word evaluates to e1.
        let node: BracketWord = "[[2,4],5]".parse().unwrap();
        assert_eq!(gens.evaluate(&node).unwrap(), se3_e(1));
    }

    #[test]
    fn chow_single_translation_fails_with_empty_certificate() {
        let gens = GeneratorSet::from_matrices(vec![se3_e(1)]).unwrap();
        let result = chow_check(&gens, 4, DEFAULT_TOL).unwrap();
        assert!(!result.controllable);
        assert!(result.certificate.is_empty());
    }

    #[test]
    fn words_are_sound_and_odd() {
        let gens =
            GeneratorSet::with_indices(vec![(2, se3_e(2)), (4, se3_e(4)), (5, se3_e(5))]).unwrap();
        let report = lts_closure(&gens, 4, &ClosureOptions::default()).unwrap();
        for (word, member) in report.words.iter().zip(&report.basis) {
            assert_eq!(word.len() % 2, 1);
            assert!(word.len() < 2 * report.depth);
            assert_eq!(&gens.evaluate(word).unwrap(), member);
        }
    }

    #[test]
    fn depth_cap_is_reported() {
        let gens = GeneratorSet::with_indices(vec![(1, sym3_a(1)), (4, sym3_a(4)), (6, sym3_a(6))])
            .unwrap();
        let opts = ClosureOptions {
            tol: DEFAULT_TOL,
            max_depth: Some(1),
        };
        match lts_closure(&gens, 6, &opts) {
            Err(Error::DepthExceeded {
                max_depth, report, ..
            }) => {
                assert_eq!(max_depth, 1);
                assert_eq!(report.dim, 3);
            }
            other => panic!("expected DepthExceeded, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_indices_rejected() {
        let err = GeneratorSet::with_indices(vec![(2, se3_e(2)), (2, se3_e(4))]);
        assert!(matches!(err, Err(Error::DuplicateIndex(2))));
    }
}
