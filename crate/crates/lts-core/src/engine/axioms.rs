//! Structural checks on a candidate basis: closure under double
//! brackets, and the three defining identities of a Lie triple system
//! with `[A,B,C] = [[A,B],C]` — alternation `[A,A,B] = 0`, the cyclic
//! sum `[A,B,C] + [B,C,A] + [C,A,B] = 0`, and the derivation identity
//! `[A,B,[D,E,F]] = [[A,B,D],E,F] + [D,[A,B,E],F] + [D,E,[A,B,F]]`.
//!
//! On exact-integer bases all three identities cancel to literal zero
//! matrices, so the reported residuals are exactly 0.0 rather than
//! rounding noise.

use serde::Serialize;

use crate::error::Error;
use crate::exec;
use crate::matrix::{double_bracket, Matrix};
use crate::span::BasisSet;
use crate::Result;

/// A double bracket of basis elements that escaped the span.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TripleWitness {
    pub indices: [usize; 3],
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LtsCheck {
    pub closed: bool,
    pub witness: Option<TripleWitness>,
}

/// Tests whether `basis` spans a subspace closed under double
/// brackets: every `[[A,B],C]` over basis triples must fall back into
/// the span. Requires the basis to be linearly independent at `tol`.
pub fn is_lts_subspace(basis: &[Matrix], tol: f64) -> Result<LtsCheck> {
    let span = BasisSet::span(basis, tol)?;
    if span.rank() < basis.len() {
        return Err(Error::DependentBasis);
    }
    let k = basis.len();
    let mut triples = Vec::with_capacity(k * k * k);
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                triples.push([i, j, l]);
            }
        }
    }
    let residuals = exec::map_fine(&triples, |&[i, j, l]| {
        double_bracket(&basis[i], &basis[j], &basis[l]).and_then(|value| span.in_span(&value))
    });
    for (t, r) in triples.iter().zip(residuals) {
        let (member, residual) = r?;
        if !member {
            return Ok(LtsCheck {
                closed: false,
                witness: Some(TripleWitness {
                    indices: *t,
                    residual,
                }),
            });
        }
    }
    Ok(LtsCheck {
        closed: true,
        witness: None,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct AxiomOptions {
    pub tol: f64,
    /// The derivation identity scans all quintuples (`k^5`
    /// evaluations); bases larger than this skip it unless the cap is
    /// lifted.
    pub quintuple_cap: usize,
}

impl Default for AxiomOptions {
    fn default() -> Self {
        Self {
            tol: crate::span::DEFAULT_TOL,
            quintuple_cap: 8,
        }
    }
}

/// One verified identity: worst residual over all scanned tuples.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub passed: bool,
    pub max_residual: f64,
    /// The tuple of basis positions that produced the worst residual.
    pub worst: Vec<usize>,
}

impl AxiomCheck {
    pub(crate) fn classify(max_residual: f64, worst: Vec<usize>, threshold: f64) -> Self {
        Self {
            passed: max_residual <= threshold,
            max_residual,
            worst,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub alternation: AxiomCheck,
    pub cyclic: AxiomCheck,
    /// `None` when the basis exceeds the quintuple cap.
    pub derivation: Option<AxiomCheck>,
    pub scale: f64,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.alternation.passed
            && self.cyclic.passed
            && self.derivation.as_ref().is_none_or(|c| c.passed)
    }
}

fn worst_of(results: Vec<(f64, Vec<usize>)>) -> (f64, Vec<usize>) {
    let mut max = 0.0;
    let mut worst = Vec::new();
    for (r, t) in results {
        if r > max {
            max = r;
            worst = t;
        }
    }
    (max, worst)
}

/// Verifies the three Lie-triple-system identities on every pair,
/// triple and (up to the cap) quintuple of basis elements, reporting
/// the worst residual per identity.
pub fn verify_lts_axioms(basis: &[Matrix], opts: &AxiomOptions) -> Result<AxiomReport> {
    if basis.is_empty() {
        return Err(Error::EmptyInput);
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidTolerance(opts.tol));
    }
    let k = basis.len();
    let scale = basis
        .iter()
        .map(Matrix::frobenius_norm)
        .fold(0.0, f64::max)
        .max(1.0);

    // (i) [A,A,B] = 0 over ordered pairs.
    let pairs: Vec<[usize; 2]> = (0..k).flat_map(|i| (0..k).map(move |j| [i, j])).collect();
    let alternation = exec::map_fine(&pairs, |&[i, j]| {
        double_bracket(&basis[i], &basis[i], &basis[j]).map(|m| (m.frobenius_norm(), vec![i, j]))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let (max_i, worst_i) = worst_of(alternation);

    // (ii) the cyclic sum over ordered triples.
    let triples: Vec<[usize; 3]> = (0..k)
        .flat_map(|i| (0..k).flat_map(move |j| (0..k).map(move |l| [i, j, l])))
        .collect();
    let cyclic = exec::map_fine(&triples, |&[i, j, l]| {
        let (a, b, c) = (&basis[i], &basis[j], &basis[l]);
        let sum = double_bracket(a, b, c)?
            .add(&double_bracket(b, c, a)?)
            .add(&double_bracket(c, a, b)?);
        Ok((sum.frobenius_norm(), vec![i, j, l]))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let (max_ii, worst_ii) = worst_of(cyclic);

    // (iii) the derivation identity over quintuples.
    let derivation = if k <= opts.quintuple_cap {
        let quintuples: Vec<[usize; 5]> = (0..k)
            .flat_map(|a| {
                (0..k).flat_map(move |b| {
                    (0..k).flat_map(move |d| {
                        (0..k).flat_map(move |e| (0..k).map(move |f| [a, b, d, e, f]))
                    })
                })
            })
            .collect();
        let results = exec::map_fine(&quintuples, |&[a, b, d, e, f]| {
            derivation_residual(basis, a, b, d, e, f).map(|r| (r, vec![a, b, d, e, f]))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        let (max_iii, worst_iii) = worst_of(results);
        Some(AxiomCheck::classify(
            max_iii,
            worst_iii,
            opts.tol * scale.powi(5),
        ))
    } else {
        None
    };

    Ok(AxiomReport {
        alternation: AxiomCheck::classify(max_i, worst_i, opts.tol * scale.powi(3)),
        cyclic: AxiomCheck::classify(max_ii, worst_ii, opts.tol * scale.powi(3)),
        derivation,
        scale,
    })
}

fn derivation_residual(
    basis: &[Matrix],
    a: usize,
    b: usize,
    d: usize,
    e: usize,
    f: usize,
) -> Result<f64> {
    let (ma, mb, md, me, mf) = (&basis[a], &basis[b], &basis[d], &basis[e], &basis[f]);
    let lhs = double_bracket(ma, mb, &double_bracket(md, me, mf)?)?;
    let rhs = double_bracket(&double_bracket(ma, mb, md)?, me, mf)?
        .add(&double_bracket(md, &double_bracket(ma, mb, me)?, mf)?)
        .add(&double_bracket(md, me, &double_bracket(ma, mb, mf)?)?);
    Ok(lhs.sub(&rhs).frobenius_norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::span::DEFAULT_TOL;

    fn se3_e(k: usize) -> Matrix {
        match k {
            1 => Matrix::unit(4, 0, 3),
            2 => Matrix::unit(4, 1, 3),
            3 => Matrix::unit(4, 2, 3),
            4 => Matrix::unit(4, 2, 1).sub(&Matrix::unit(4, 1, 2)),
            5 => Matrix::unit(4, 0, 2).sub(&Matrix::unit(4, 2, 0)),
            _ => unreachable!(),
        }
    }

    #[test]
    fn screw_pair_is_closed() {
        let check = is_lts_subspace(&[se3_e(3), se3_e(4)], DEFAULT_TOL).unwrap();
        assert!(check.closed);
        assert!(check.witness.is_none());
    }

    #[test]
    fn single_translation_is_closed() {
        let check = is_lts_subspace(&[se3_e(1)], DEFAULT_TOL).unwrap();
        assert!(check.closed);
    }

    #[test]
    fn so3_pair_is_closed() {
        let x1 = Matrix::from_int_rows(&[&[0, 0, 0], &[0, 0, -1], &[0, 1, 0]]);
        let x2 = Matrix::from_int_rows(&[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]]);
        assert!(is_lts_subspace(&[x1, x2], DEFAULT_TOL).unwrap().closed);
    }

    #[test]
    fn open_pair_reports_witness() {
        // {a1, a4} in sym(3): [[a1,a4],a4] = 2a1 - 2a2 escapes the span.
        let a1 = Matrix::unit(3, 0, 0);
        let a4 = Matrix::unit(3, 0, 1).add(&Matrix::unit(3, 1, 0));
        let check = is_lts_subspace(&[a1, a4], DEFAULT_TOL).unwrap();
        assert!(!check.closed);
        let witness = check.witness.unwrap();
        assert_eq!(witness.indices, [0, 1, 1]);
        assert_eq!(witness.residual, 2.0);
    }

    #[test]
    fn dependent_basis_rejected() {
        let err = is_lts_subspace(&[se3_e(1), se3_e(1)], DEFAULT_TOL);
        assert!(matches!(err, Err(Error::DependentBasis)));
    }

    #[test]
    fn so3_axioms_exact_zero() {
        let basis = vec![
            Matrix::from_int_rows(&[&[0, 0, 0], &[0, 0, -1], &[0, 1, 0]]),
            Matrix::from_int_rows(&[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]]),
            Matrix::from_int_rows(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]),
        ];
        let report = verify_lts_axioms(&basis, &AxiomOptions::default()).unwrap();
        assert!(report.all_passed());
        assert_eq!(report.alternation.max_residual, 0.0);
        assert_eq!(report.cyclic.max_residual, 0.0);
        assert_eq!(report.derivation.unwrap().max_residual, 0.0);
    }

    #[test]
    fn quintuple_cap_skips_derivation() {
        let basis: Vec<Matrix> = (0..9).map(|k| Matrix::unit(4, k / 4, k % 4)).collect();
        let report = verify_lts_axioms(&basis, &AxiomOptions::default()).unwrap();
        assert!(report.derivation.is_none());
        let lifted = verify_lts_axioms(
            &basis,
            &AxiomOptions {
                quintuple_cap: 9,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(lifted.derivation.is_some());
    }

    #[test]
    fn injected_fault_is_detected() {
        // The classification path must flag a residual of the injected
        // magnitude: perturb one term of the cyclic sum by 1e-3.
        let a = se3_e(1);
        let b = se3_e(4);
        let c = se3_e(5);
        let noise = Matrix::unit(4, 0, 0).scale(1e-3);
        let perturbed = double_bracket(&a, &b, &c)
            .unwrap()
            .add(&noise)
            .add(&double_bracket(&b, &c, &a).unwrap())
            .add(&double_bracket(&c, &a, &b).unwrap());
        let residual = perturbed.frobenius_norm();
        assert!((residual - 1e-3).abs() < 1e-9);
        let check = AxiomCheck::classify(residual, vec![0, 1, 2], DEFAULT_TOL);
        assert!(!check.passed);
        assert!((check.max_residual - 1e-3).abs() < 1e-9);
    }
}
