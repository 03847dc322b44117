//! Dense square complex matrices and the bracket algebra built on them.
//!
//! Matrices with integer real and imaginary parts are "exact": every
//! product or sum of such matrices at the supported sizes stays well
//! inside the f64 mantissa, so the arithmetic is reproducible bit for
//! bit and identities like the Jacobi identity cancel to a literal
//! zero matrix. The span and closure layers use that to certify
//! results with zero residual instead of a float threshold.

use std::fmt;

use num_complex::Complex64;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Smallest supported matrix dimension.
pub const MIN_DIM: usize = 2;
/// Largest supported matrix dimension.
pub const MAX_DIM: usize = 16;

/// Frobenius-norm cap for `expm`; the documented accuracy holds for
/// ||tA|| <= 10 and the series is refused beyond this bound.
pub const EXPM_MAX_NORM: f64 = 50.0;

/// Entries with integer parts up to this magnitude multiply exactly in f64.
const EXACT_LIMIT: f64 = 9.0e15; // < 2^53

/// A dense n-by-n complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl Matrix {
    /// Builds a matrix from row-major entries, validating shape and finiteness.
    pub fn new(n: usize, entries: Vec<Complex64>) -> Result<Self> {
        if !(MIN_DIM..=MAX_DIM).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: (entries.len() as f64).sqrt() as usize,
            });
        }
        if !entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { n, entries })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// The elementary matrix with a single 1 at row `i`, column `j` (0-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m.entries[i * n + j] = Complex64::new(1.0, 0.0);
        m
    }

    /// Convenience constructor from integer rows (catalog bases, tests).
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "rows must form a square matrix");
            entries.extend(row.iter().map(|&v| Complex64::new(v as f64, 0.0)));
        }
        Self { n, entries }
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "rows must form a square matrix");
            entries.extend(row.iter().map(|&v| Complex64::new(v, 0.0)));
        }
        Self { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.entries[i * self.n + j] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// True iff every entry has integer real and imaginary parts small
    /// enough for exact f64 arithmetic. Exact matrices take the
    /// fraction-free path in rank and membership decisions.
    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(|z| {
            z.re.fract() == 0.0
                && z.im.fract() == 0.0
                && z.re.abs() <= EXACT_LIMIT
                && z.im.abs() <= EXACT_LIMIT
        })
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.re * z.re + z.im * z.im)
            .sum::<f64>()
            .sqrt()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self { n: self.n, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self { n: self.n, entries }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    pub fn scale(&self, s: f64) -> Self {
        let entries = self.entries.iter().map(|a| a * s).collect();
        Self { n: self.n, entries }
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        let entries = self.entries.iter().map(|a| a * s).collect();
        Self { n: self.n, entries }
    }

    /// Plain triple-loop product; deterministic accumulation order.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        Ok(Self { n, entries })
    }

    /// Flattens to 2n^2 reals: all real parts row-major, then all
    /// imaginary parts. Linear and injective, and it preserves the
    /// Frobenius norm, so real-linear spans of matrices and of their
    /// images have the same rank.
    pub fn real_vectorize(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(2 * self.n * self.n);
        v.extend(self.entries.iter().map(|z| z.re));
        v.extend(self.entries.iter().map(|z| z.im));
        v
    }

    /// Inverse of [`Self::real_vectorize`].
    pub fn from_real_vectorized(n: usize, v: &[f64]) -> Result<Self> {
        if v.len() != 2 * n * n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: v.len() / (2 * n).max(1),
            });
        }
        let entries = (0..n * n)
            .map(|k| Complex64::new(v[k], v[n * n + k]))
            .collect();
        Self::new(n, entries)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.n == other.n && self.sub(other).frobenius_norm() <= tol
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(n).entries;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&r, &s| {
                    a[r * n + col]
                        .norm_sqr()
                        .partial_cmp(&a[s * n + col].norm_sqr())
                        .unwrap()
                        .then(s.cmp(&r))
                })
                .unwrap();
            if a[pivot * n + col].norm_sqr() < 1e-28 {
                return Err(Error::Singular);
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let d = a[col * n + col];
            for j in 0..n {
                a[col * n + j] /= d;
                inv[col * n + j] /= d;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col];
                if f.re == 0.0 && f.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let t = a[col * n + j] * f;
                    a[r * n + j] -= t;
                    let t = inv[col * n + j] * f;
                    inv[r * n + j] -= t;
                }
            }
        }
        Ok(Self { n, entries: inv })
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                let z = self.get(i, j);
                if z.im == 0.0 {
                    write!(f, "{:>8.3} ", z.re)?;
                } else {
                    write!(f, "{:>6.2}{:+.2}i ", z.re, z.im)?;
                }
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// The commutator AB - BA. Exact on exact inputs.
pub fn commutator(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let ab = a.matmul(b)?;
    let ba = b.matmul(a)?;
    Ok(ab.sub(&ba))
}

/// The double bracket [[A,B],C]. The primitive of the closure iteration.
pub fn double_bracket(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<Matrix> {
    commutator(&commutator(a, b)?, c)
}

/// Matrix exponential e^{tA} by scaling and squaring with a degree-13
/// truncated series on the scaled matrix. Relative error stays below
/// 1e-12 for ||tA||_F <= 10; inputs beyond [`EXPM_MAX_NORM`] are refused.
pub fn expm(a: &Matrix, t: f64) -> Result<Matrix> {
    if !t.is_finite() {
        return Err(Error::NonFinite);
    }
    let ta = a.scale(t);
    let norm = ta.frobenius_norm();
    if !norm.is_finite() || norm > EXPM_MAX_NORM {
        return Err(Error::ExpRange {
            norm,
            max: EXPM_MAX_NORM,
        });
    }
    let s = if norm <= 1.0 {
        0
    } else {
        norm.log2().ceil() as i32
    };
    let b = ta.scale(0.5f64.powi(s));
    let mut sum = Matrix::identity(a.dim());
    let mut term = Matrix::identity(a.dim());
    for k in 1..=13 {
        term = term.matmul(&b)?.scale(1.0 / k as f64);
        sum = sum.add(&term);
    }
    let mut result = sum;
    for _ in 0..s {
        result = result.matmul(&result)?;
    }
    Ok(result)
}

// JSON form: {"n": 3, "entries": [[re, [re,im], ...], ...]} where an
// all-real matrix abbreviates each entry to a bare number.
impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Row<'a> {
            row: &'a [Complex64],
            real: bool,
        }
        impl Serialize for Row<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.row.len()))?;
                for z in self.row {
                    if self.real {
                        seq.serialize_element(&z.re)?;
                    } else {
                        seq.serialize_element(&[z.re, z.im])?;
                    }
                }
                seq.end()
            }
        }
        struct Rows<'a>(&'a Matrix);
        impl Serialize for Rows<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let n = self.0.n;
                let real = self.0.is_real();
                let mut seq = serializer.serialize_seq(Some(n))?;
                for i in 0..n {
                    seq.serialize_element(&Row {
                        row: &self.0.entries[i * n..(i + 1) * n],
                        real,
                    })?;
                }
                seq.end()
            }
        }
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("entries", &Rows(self))?;
        map.serialize_entry("n", &self.n)?;
        map.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawEntry {
    Real(f64),
    Complex([f64; 2]),
}

#[derive(Deserialize)]
struct RawMatrix {
    n: usize,
    entries: Vec<Vec<RawEntry>>,
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawMatrix::deserialize(deserializer)?;
        if raw.entries.len() != raw.n || raw.entries.iter().any(|r| r.len() != raw.n) {
            return Err(de::Error::custom(format!(
                "field `entries` must be {n} rows of {n} values",
                n = raw.n
            )));
        }
        let entries = raw
            .entries
            .iter()
            .flatten()
            .map(|e| match e {
                RawEntry::Real(re) => Complex64::new(*re, 0.0),
                RawEntry::Complex([re, im]) => Complex64::new(*re, *im),
            })
            .collect();
        Matrix::new(raw.n, entries).map_err(|e| de::Error::custom(format!("field `entries`: {e}")))
    }
}
