//! Flow composition and its numerical certificates.
//!
//! Left-invariant flows act by right multiplication,
//! `e^{tU}(X) = X e^{tA}`, so a composition of flows applied to `X` is
//! the ordered product of primitive exponentials. Three constructions
//! are certified here:
//!
//! * the 10-factor commutator curve
//!   `X e^{tA} e^{tB} e^{-tA} e^{-tB} e^{tC} e^{tB} e^{tA} e^{-tB} e^{-tA} e^{-tC}`,
//!   whose deviation from `X` is `t^3 X [[A,B],C]` to leading order;
//! * word flows, the recursive 10-fold composition attached to a
//!   bracket word `I`, tangent to `t^{|I|} X_I`;
//! * the map `phi(t_1..t_n)` chaining normalized word flows, whose
//!   Jacobian rank at 0 certifies that a bracket-word family spans the
//!   tangent space.

use serde::Serialize;

use crate::engine::GeneratorSet;
use crate::error::Error;
use crate::exec;
use crate::matrix::{double_bracket, expm, Matrix};
use crate::word::BracketWord;
use crate::Result;

/// One primitive flow step: follow `generator` for `duration`.
#[derive(Clone, Debug)]
pub struct FlowStep {
    pub generator: Matrix,
    pub duration: f64,
}

/// An ordered list of primitive flow steps applied from a base point:
/// evaluation is `base * prod_i e^{duration_i * generator_i}`. The
/// empty program evaluates to the base.
#[derive(Clone, Debug)]
pub struct FlowProgram {
    pub base: Matrix,
    pub steps: Vec<FlowStep>,
}

impl FlowProgram {
    pub fn evaluate(&self) -> Result<Matrix> {
        let mut state = self.base.clone();
        for step in &self.steps {
            state = state.matmul(&expm(&step.generator, step.duration)?)?;
        }
        Ok(state)
    }

    pub fn step_count(&self) -> usize {
        self.steps.len()
    }
}

/// The flow of a left-invariant field: `X e^{tA}`.
pub fn flow(a: &Matrix, t: f64, x: &Matrix) -> Result<Matrix> {
    x.matmul(&expm(a, t)?)
}

const GAMMA_SIGNS: [(usize, f64); 10] = [
    (0, 1.0),
    (1, 1.0),
    (0, -1.0),
    (1, -1.0),
    (2, 1.0),
    (1, 1.0),
    (0, 1.0),
    (1, -1.0),
    (0, -1.0),
    (2, -1.0),
];

/// The commutator curve as a flat program of ten primitive steps.
pub fn gamma_program(a: &Matrix, b: &Matrix, c: &Matrix, x: &Matrix, t: f64) -> FlowProgram {
    let gens = [a, b, c];
    FlowProgram {
        base: x.clone(),
        steps: GAMMA_SIGNS
            .iter()
            .map(|&(g, sign)| FlowStep {
                generator: gens[g].clone(),
                duration: sign * t,
            })
            .collect(),
    }
}

/// Evaluates the ten-factor commutator curve at `t`.
pub fn gamma_curve(a: &Matrix, b: &Matrix, c: &Matrix, x: &Matrix, t: f64) -> Result<Matrix> {
    gamma_program(a, b, c, x, t).evaluate()
}

/// Third-order finite estimate of the double bracket:
/// `(gamma(t) - X) / t^3`, which converges to `X [[A,B],C]` with error
/// `O(t)`.
pub fn double_bracket_estimate(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    x: &Matrix,
    t: f64,
) -> Result<Matrix> {
    if t == 0.0 {
        return Err(Error::ZeroStep);
    }
    let curve = gamma_curve(a, b, c, x, t)?;
    Ok(curve.sub(x).scale(1.0 / (t * t * t)))
}

/// The word flow `Psi^I_t` applied to `X`: a leaf flows along its
/// generator, a node expands into the 10-fold composition of its
/// children's flows. Contract: `Psi^I_t = id + t^{|I|} X_I + O(t^{|I|+1})`.
pub fn word_flow(word: &BracketWord, t: f64, x: &Matrix, gens: &GeneratorSet) -> Result<Matrix> {
    match word {
        BracketWord::Leaf(i) => flow(gens.by_index(*i)?, t, x),
        BracketWord::Node(l, m, r) => {
            let children: [&BracketWord; 3] = [l, m, r];
            let mut state = x.clone();
            for &(child, sign) in &GAMMA_SIGNS {
                state = word_flow(children[child], sign * t, &state, gens)?;
            }
            Ok(state)
        }
    }
}

/// Flattens a word flow into its primitive steps. Evaluating the
/// program reproduces the recursion exactly, step for step; a node
/// whose children are all leaves contributes ten steps.
pub fn word_program(
    word: &BracketWord,
    t: f64,
    x: &Matrix,
    gens: &GeneratorSet,
) -> Result<FlowProgram> {
    let mut steps = Vec::new();
    flatten(word, t, gens, &mut steps)?;
    Ok(FlowProgram {
        base: x.clone(),
        steps,
    })
}

fn flatten(word: &BracketWord, t: f64, gens: &GeneratorSet, out: &mut Vec<FlowStep>) -> Result<()> {
    match word {
        BracketWord::Leaf(i) => {
            out.push(FlowStep {
                generator: gens.by_index(*i)?.clone(),
                duration: t,
            });
            Ok(())
        }
        BracketWord::Node(l, m, r) => {
            let children: [&BracketWord; 3] = [l, m, r];
            for &(child, sign) in &GAMMA_SIGNS {
                flatten(children[child], sign * t, gens, out)?;
            }
            Ok(())
        }
    }
}

/// The time reparameterization used by the normalized flow: the real
/// odd root `sign(t) |t|^{1/len}`, well defined for negative `t`
/// because word lengths are odd.
fn odd_root(t: f64, len: usize) -> f64 {
    match len {
        1 => t,
        3 => t.cbrt(),
        _ => t.signum() * t.abs().powf(1.0 / len as f64),
    }
}

/// The normalized word flow `psi^I_t = Psi^I_{t^{1/|I|}}`, whose
/// first-order tangent at `t = 0` is `X_I` itself.
pub fn normalized_word_flow(
    word: &BracketWord,
    t: f64,
    x: &Matrix,
    gens: &GeneratorSet,
) -> Result<Matrix> {
    word_flow(word, odd_root(t, word.len()), x, gens)
}

/// Richardson-extrapolated double-bracket estimate: combining steps
/// `t` and `t/2` cancels the estimator's linear error term, leaving
/// `O(t^2)` convergence.
pub fn double_bracket_estimate_richardson(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    x: &Matrix,
    t: f64,
) -> Result<Matrix> {
    let coarse = double_bracket_estimate(a, b, c, x, t)?;
    let fine = double_bracket_estimate(a, b, c, x, t / 2.0)?;
    Ok(fine.scale(2.0).sub(&coarse))
}

/// Central-difference estimate of the tangent of the normalized word
/// flow at `t = 0`, which converges to `X X_I`. The plain estimate
/// carries an `h^(2/3)` error from the odd-root reparameterization;
/// `richardson` combines steps `h` and `h/2` to cancel it.
pub fn normalized_tangent_estimate(
    word: &BracketWord,
    x: &Matrix,
    gens: &GeneratorSet,
    h: f64,
    richardson: bool,
) -> Result<Matrix> {
    if !h.is_finite() || h <= 1e-12 {
        return Err(Error::DegenerateStep(h));
    }
    let central = |h: f64| -> Result<Matrix> {
        let plus = normalized_word_flow(word, h, x, gens)?;
        let minus = normalized_word_flow(word, -h, x, gens)?;
        Ok(plus.sub(&minus).scale(1.0 / (2.0 * h)))
    };
    let coarse = central(h)?;
    if !richardson {
        return Ok(coarse);
    }
    let fine = central(h / 2.0)?;
    // Error model c * h^(2/3): eliminate the leading term.
    let factor = 1.0 / (2f64.powf(2.0 / 3.0) - 1.0);
    Ok(fine.add(&fine.sub(&coarse).scale(factor)))
}

/// Full Jacobian rank report for the chained-flow map.
#[derive(Clone, Debug, Serialize)]
pub struct PhiRank {
    pub rank: usize,
    /// Singular values of the Jacobian, descending.
    pub singular_values: Vec<f64>,
    /// Jacobian columns in tangent coordinates, one per word.
    pub columns: Vec<Vec<f64>>,
}

/// Builds `phi(t_1..t_n) = psi^{I_n}_{t_n} ∘ … ∘ psi^{I_1}_{t_1}(X)`,
/// differentiates it at 0 by central differences with step `h`, and
/// returns the numerical rank of the Jacobian. Columns are expressed
/// in tangent coordinates at the base: left-translated by `X^{-1}`
/// when `X` is invertible, then vectorized.
pub fn phi_jacobian_rank(
    words: &[BracketWord],
    x: &Matrix,
    gens: &GeneratorSet,
    h: f64,
    tol: f64,
) -> Result<PhiRank> {
    if words.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !(h.is_finite() && h > 1e-12) {
        return Err(Error::DegenerateStep(h));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    let translate = x.inverse().ok();

    let phi = |times: &[f64]| -> Result<Matrix> {
        let mut state = x.clone();
        for (word, &t) in words.iter().zip(times) {
            state = normalized_word_flow(word, t, &state, gens)?;
        }
        Ok(state)
    };

    let indices: Vec<usize> = (0..words.len()).collect();
    let columns = exec::map_coarse(&indices, |&j| -> Result<Vec<f64>> {
        let mut plus_t = vec![0.0; words.len()];
        plus_t[j] = h;
        let mut minus_t = vec![0.0; words.len()];
        minus_t[j] = -h;
        let plus = phi(&plus_t)?;
        let minus = phi(&minus_t)?;
        let diff = plus.sub(&minus).scale(1.0 / (2.0 * h));
        let tangent = match &translate {
            Some(inv) => inv.matmul(&diff)?,
            None => diff,
        };
        Ok(tangent.real_vectorize())
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let singular_values = column_singular_values(&columns);
    let sigma_max = singular_values.first().copied().unwrap_or(0.0);
    let rank = singular_values
        .iter()
        .filter(|&&s| sigma_max > 0.0 && s > tol * sigma_max)
        .count();
    Ok(PhiRank {
        rank,
        singular_values,
        columns,
    })
}

/// Singular values of the matrix whose columns are given, via cyclic
/// Jacobi diagonalization of the (small) Gram matrix.
fn column_singular_values(columns: &[Vec<f64>]) -> Vec<f64> {
    let k = columns.len();
    let mut gram = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in 0..k {
            gram[i][j] = columns[i].iter().zip(&columns[j]).map(|(a, b)| a * b).sum();
        }
    }
    let eigenvalues = jacobi_eigenvalues(&mut gram);
    let mut sv: Vec<f64> = eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

#[allow(clippy::needless_range_loop)] // rotation updates index rows and columns symmetrically
fn jacobi_eigenvalues(a: &mut [Vec<f64>]) -> Vec<f64> {
    let k = a.len();
    let scale = (0..k)
        .map(|i| a[i][i].abs())
        .fold(0.0, f64::max)
        .max(1e-300);
    for _sweep in 0..40 {
        let mut off = 0.0;
        for p in 0..k {
            for q in (p + 1)..k {
                off += a[p][q] * a[p][q];
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..k {
            for q in (p + 1)..k {
                if a[p][q].abs() <= 1e-18 * scale {
                    continue;
                }
                let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for i in 0..k {
                    let aip = a[i][p];
                    let aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for i in 0..k {
                    let api = a[p][i];
                    let aqi = a[q][i];
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
            }
        }
    }
    (0..k).map(|i| a[i][i]).collect()
}

/// Least-squares slope of `ln(residual)` against `ln(t)`: the observed
/// convergence order. Residuals are floored at 1e-18 so exact zeros do
/// not poison the fit.
pub fn fit_log_slope(ts: &[f64], residuals: &[f64]) -> f64 {
    assert_eq!(ts.len(), residuals.len());
    let xs: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let ys: Vec<f64> = residuals.iter().map(|r| r.max(1e-18).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Convergence report for one tangency experiment: residuals of the
/// rescaled flow deviation against the bracket value over a grid of
/// times, and the fitted order of the decay.
#[derive(Clone, Debug, Serialize)]
pub struct TangencyReport {
    pub word: String,
    pub t_grid: Vec<f64>,
    pub residuals: Vec<f64>,
    pub fitted_order: f64,
}

/// Residuals of `(Psi^I_t(X) - X)/t^{|I|} - X X_I` over a time grid.
pub fn word_tangency(
    word: &BracketWord,
    x: &Matrix,
    gens: &GeneratorSet,
    t_grid: &[f64],
) -> Result<TangencyReport> {
    if t_grid.is_empty() {
        return Err(Error::EmptyInput);
    }
    let value = gens.evaluate(word)?;
    let target = x.matmul(&value)?;
    let len = word.len() as i32;
    let entries = exec::map_coarse(t_grid, |&t| -> Result<f64> {
        if t == 0.0 {
            return Err(Error::ZeroStep);
        }
        let moved = word_flow(word, t, x, gens)?;
        let estimate = moved.sub(x).scale(1.0 / t.powi(len));
        Ok(estimate.sub(&target).frobenius_norm())
    });
    let residuals = entries.into_iter().collect::<Result<Vec<f64>>>()?;
    let fitted_order = fit_log_slope(t_grid, &residuals);
    Ok(TangencyReport {
        word: word.to_string(),
        t_grid: t_grid.to_vec(),
        residuals,
        fitted_order,
    })
}

/// Residuals of `(gamma(t) - X)/t^3 - X [[A,B],C]` over a time grid,
/// labelled by the word the triple realizes.
pub fn gamma_tangency(
    label: &str,
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    x: &Matrix,
    t_grid: &[f64],
) -> Result<TangencyReport> {
    if t_grid.is_empty() {
        return Err(Error::EmptyInput);
    }
    let target = x.matmul(&double_bracket(a, b, c)?)?;
    let entries = exec::map_coarse(t_grid, |&t| -> Result<f64> {
        let estimate = double_bracket_estimate(a, b, c, x, t)?;
        Ok(estimate.sub(&target).frobenius_norm())
    });
    let residuals = entries.into_iter().collect::<Result<Vec<f64>>>()?;
    let fitted_order = fit_log_slope(t_grid, &residuals);
    Ok(TangencyReport {
        word: label.to_string(),
        t_grid: t_grid.to_vec(),
        residuals,
        fitted_order,
    })
}
