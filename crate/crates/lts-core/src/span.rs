//! Real-linear spans of matrices with a tolerance-aware rank certificate.
//!
//! Controls are real scalars, so spans are taken over the reals even
//! for complex matrices, via the 2n^2-real embedding of
//! [`Matrix::real_vectorize`]. Orthogonalization is modified
//! Gram-Schmidt in input order with one re-orthogonalization pass; a
//! vector is discarded when its post-projection norm is at most
//! `tol * (largest input norm)`. When every input is exact-integer the
//! keep/discard decision is made by fraction-free elimination instead,
//! so the reported rank and membership residuals are exact.

use crate::error::Error;
use crate::matrix::Matrix;
use crate::Result;

/// Default relative rank tolerance, overridable per call and via the
/// CLI `LTS_TOL` environment variable.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Integer row-echelon accumulator. Rows are reduced against stored
/// pivot rows by cross-multiplication, which keeps everything in
/// integers; entries are re-divided by their gcd after each update so
/// i128 never sees real growth at the supported sizes. On overflow the
/// exact path is abandoned for the whole set.
#[derive(Clone, Debug, Default)]
struct Echelon {
    // (pivot column, row) sorted by pivot column
    rows: Vec<(usize, Vec<i128>)>,
}

enum Reduce {
    Zero,
    Independent(usize, Vec<i128>),
    Overflow,
}

impl Echelon {
    fn reduce(&self, vector: &[i128]) -> Reduce {
        let mut v = vector.to_vec();
        for (pivot_col, row) in &self.rows {
            let c = v[*pivot_col];
            if c == 0 {
                continue;
            }
            let p = row[*pivot_col];
            for (vi, ri) in v.iter_mut().zip(row) {
                let Some(a) = vi.checked_mul(p) else {
                    return Reduce::Overflow;
                };
                let Some(b) = ri.checked_mul(c) else {
                    return Reduce::Overflow;
                };
                let Some(d) = a.checked_sub(b) else {
                    return Reduce::Overflow;
                };
                *vi = d;
            }
            debug_assert_eq!(v[*pivot_col], 0);
            let g = gcd_all(&v);
            if g > 1 {
                for vi in &mut v {
                    *vi /= g;
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => Reduce::Zero,
            Some(col) => Reduce::Independent(col, v),
        }
    }

    fn insert(&mut self, pivot_col: usize, row: Vec<i128>) {
        let at = self
            .rows
            .partition_point(|(existing, _)| *existing < pivot_col);
        self.rows.insert(at, (pivot_col, row));
    }
}

fn gcd_all(v: &[i128]) -> i128 {
    let mut g: i128 = 0;
    for &x in v {
        g = gcd(g, x.unsigned_abs() as i128);
        if g == 1 {
            return 1;
        }
    }
    g.max(1)
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn to_int_vector(m: &Matrix) -> Option<Vec<i128>> {
    if !m.is_exact() {
        return None;
    }
    Some(m.real_vectorize().into_iter().map(|x| x as i128).collect())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Incremental span builder shared by `span_rank` and the closure sweep.
#[derive(Clone, Debug)]
pub(crate) struct BasisBuilder {
    dim: usize,
    tol: f64,
    scale: f64,
    ortho: Vec<Vec<f64>>,
    exact: Option<Echelon>,
}

impl BasisBuilder {
    pub(crate) fn new(dim: usize, tol: f64) -> Self {
        Self {
            dim,
            tol,
            scale: 0.0,
            ortho: Vec::new(),
            exact: Some(Echelon::default()),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.ortho.len()
    }

    /// Folds a batch of norms into the reference scale ahead of the
    /// per-candidate decisions, so thresholds do not depend on the
    /// order candidates are examined in.
    pub(crate) fn bump_scale(&mut self, norm: f64) {
        self.scale = self.scale.max(norm);
    }

    /// Read-only dependence pre-check against the current span, safe
    /// to run concurrently. `true` means the matrix is certainly
    /// dependent now (and stays so as the span only grows); `false`
    /// means it must go through [`Self::try_add`].
    pub(crate) fn is_certainly_dependent(&self, m: &Matrix) -> bool {
        match (&self.exact, to_int_vector(m)) {
            (Some(echelon), Some(iv)) => matches!(echelon.reduce(&iv), Reduce::Zero),
            (None, _) => {
                let mut v = m.real_vectorize();
                self.project_out(&mut v);
                norm(&v) <= self.tol * self.scale
            }
            // Exact builder, inexact candidate: no safe shortcut.
            (Some(_), None) => false,
        }
    }

    fn project_out(&self, v: &mut [f64]) {
        // MGS with one re-orthogonalization pass.
        for _ in 0..2 {
            for o in &self.ortho {
                let c = dot(v, o);
                if c != 0.0 {
                    for (vi, oi) in v.iter_mut().zip(o) {
                        *vi -= c * oi;
                    }
                }
            }
        }
    }

    /// Adds a matrix to the span; returns true when it enlarged the rank.
    pub(crate) fn try_add(&mut self, m: &Matrix) -> Result<bool> {
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: m.dim(),
            });
        }
        self.scale = self.scale.max(m.frobenius_norm());

        let exact_verdict = match (&mut self.exact, to_int_vector(m)) {
            (Some(echelon), Some(iv)) => match echelon.reduce(&iv) {
                Reduce::Zero => Some(false),
                Reduce::Independent(col, row) => {
                    echelon.insert(col, row);
                    Some(true)
                }
                Reduce::Overflow => {
                    self.exact = None;
                    None
                }
            },
            _ => {
                self.exact = None;
                None
            }
        };

        let mut v = m.real_vectorize();
        self.project_out(&mut v);
        let residual = norm(&v);
        let keep = match exact_verdict {
            Some(k) => k,
            None => residual > self.tol * self.scale,
        };
        if keep {
            let inv = 1.0 / residual;
            for vi in &mut v {
                *vi *= inv;
            }
            self.ortho.push(v);
        }
        Ok(keep)
    }

    pub(crate) fn finish(self, members: Vec<Matrix>) -> BasisSet {
        BasisSet {
            rank: self.ortho.len(),
            members,
            ortho: self.ortho,
            tol: self.tol,
            scale: self.scale,
            exact: self.exact,
        }
    }
}

/// An ordered list of matrices together with its real-linear rank
/// certificate: orthonormal representatives in vector form, the
/// tolerance used, and (for exact inputs) the integer echelon that
/// decided independence.
#[derive(Clone, Debug)]
pub struct BasisSet {
    members: Vec<Matrix>,
    ortho: Vec<Vec<f64>>,
    rank: usize,
    tol: f64,
    scale: f64,
    exact: Option<Echelon>,
}

impl BasisSet {
    /// Computes the real-linear span of `mats`. Members are processed
    /// in input order; all inputs are retained as members while `rank`
    /// counts the independent ones.
    pub fn span(mats: &[Matrix], tol: f64) -> Result<Self> {
        if mats.is_empty() {
            return Err(Error::EmptyInput);
        }
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::InvalidTolerance(tol));
        }
        let dim = mats[0].dim();
        let mut builder = BasisBuilder::new(dim, tol);
        builder.scale = mats.iter().map(Matrix::frobenius_norm).fold(0.0, f64::max);
        for m in mats {
            builder.try_add(m)?;
        }
        Ok(builder.finish(mats.to_vec()))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn members(&self) -> &[Matrix] {
        &self.members
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Largest member Frobenius norm; the reference scale for residual
    /// thresholds.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn matrix_dim(&self) -> usize {
        self.members[0].dim()
    }

    /// Membership test. Returns whether `m` lies in the span and the
    /// norm of its component orthogonal to it. On the exact path a
    /// dependent matrix reports a literal zero residual.
    pub fn in_span(&self, m: &Matrix) -> Result<(bool, f64)> {
        if m.dim() != self.matrix_dim() {
            return Err(Error::DimensionMismatch {
                left: self.matrix_dim(),
                right: m.dim(),
            });
        }
        if let (Some(echelon), Some(iv)) = (&self.exact, to_int_vector(m)) {
            if matches!(echelon.reduce(&iv), Reduce::Zero) {
                return Ok((true, 0.0));
            }
        }
        let mut v = m.real_vectorize();
        for _ in 0..2 {
            for o in &self.ortho {
                let c = dot(&v, o);
                if c != 0.0 {
                    for (vi, oi) in v.iter_mut().zip(o) {
                        *vi -= c * oi;
                    }
                }
            }
        }
        let residual = norm(&v);
        let member = residual <= self.tol * self.scale.max(m.frobenius_norm());
        Ok((member, residual))
    }
}

/// Rank of the real-linear span of `mats` at relative tolerance `tol`,
/// together with the orthonormalized basis certificate.
pub fn span_rank(mats: &[Matrix], tol: f64) -> Result<(usize, BasisSet)> {
    let basis = BasisSet::span(mats, tol)?;
    Ok((basis.rank(), basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::commutator;

    fn so3() -> Vec<Matrix> {
        vec![
            Matrix::from_int_rows(&[&[0, 0, 0], &[0, 0, -1], &[0, 1, 0]]),
            Matrix::from_int_rows(&[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]]),
            Matrix::from_int_rows(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]),
        ]
    }

    fn sym3() -> Vec<Matrix> {
        let e = |i, j| Matrix::unit(3, i, j);
        vec![
            e(0, 0),
            e(1, 1),
            e(2, 2),
            e(0, 1).add(&e(1, 0)),
            e(0, 2).add(&e(2, 0)),
            e(1, 2).add(&e(2, 1)),
        ]
    }

    #[test]
    fn dependent_combination_detected() {
        let x = so3();
        let mut mats = x.clone();
        mats.push(x[0].add(&x[1]));
        let (rank, basis) = span_rank(&mats, DEFAULT_TOL).unwrap();
        assert_eq!(rank, 3);
        assert_eq!(basis.members().len(), 4);
    }

    #[test]
    fn single_nonzero_matrix_has_rank_one() {
        let x = so3();
        let (rank, _) = span_rank(&x[..1], DEFAULT_TOL).unwrap();
        assert_eq!(rank, 1);
    }

    #[test]
    fn symmetric_basis_has_rank_six() {
        let (rank, _) = span_rank(&sym3(), DEFAULT_TOL).unwrap();
        assert_eq!(rank, 6);
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(
            span_rank(&[], DEFAULT_TOL),
            Err(Error::EmptyInput)
        ));
    }

    #[test]
    fn nonpositive_tolerance_rejected() {
        let x = so3();
        assert!(matches!(
            span_rank(&x, 0.0),
            Err(Error::InvalidTolerance(_))
        ));
    }

    #[test]
    fn membership_exact_zero_residual() {
        let x = so3();
        let (_, basis) = span_rank(&x, DEFAULT_TOL).unwrap();
        let bracket = commutator(&x[0], &x[1]).unwrap();
        let (member, residual) = basis.in_span(&bracket).unwrap();
        assert!(member);
        assert_eq!(residual, 0.0);
    }

    #[test]
    fn membership_zero_matrix() {
        let x = so3();
        let (_, basis) = span_rank(&x, DEFAULT_TOL).unwrap();
        let (member, residual) = basis.in_span(&Matrix::zeros(3)).unwrap();
        assert!(member);
        assert_eq!(residual, 0.0);
    }

    #[test]
    fn orthogonal_member_residual_is_its_norm() {
        // a5 is Frobenius-orthogonal to span{a1,a2,a3,a4}: residual sqrt(2).
        let a = sym3();
        let (_, basis) = span_rank(&a[..4], DEFAULT_TOL).unwrap();
        let (member, residual) = basis.in_span(&a[4]).unwrap();
        assert!(!member);
        assert!((residual - 2.0f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn float_path_matches_exact_on_scaled_inputs() {
        // 0.3 * X_i is inexact, so this exercises the MGS threshold path.
        let mats: Vec<Matrix> = so3().iter().map(|m| m.scale(0.3)).collect();
        let mut with_dep = mats.clone();
        with_dep.push(mats[1].scale(-2.0).add(&mats[2]));
        let (rank, _) = span_rank(&with_dep, DEFAULT_TOL).unwrap();
        assert_eq!(rank, 3);
    }

    #[test]
    fn rank_invariant_under_permutation() {
        let x = sym3();
        let mut perm = x.clone();
        perm.reverse();
        let (r1, _) = span_rank(&x, DEFAULT_TOL).unwrap();
        let (r2, _) = span_rank(&perm, DEFAULT_TOL).unwrap();
        assert_eq!(r1, r2);
    }
}
