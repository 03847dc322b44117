//! Independent oracles for the acceptance and property suites.
//!
//! Everything here is deliberately written against a different
//! representation and different algorithms than the library under
//! test: matrices are plain `(re, im)` grids with naive loops, rank
//! comes from row echelon with partial pivoting (the library uses
//! modified Gram-Schmidt in input order plus fraction-free
//! elimination), and the closure oracle brackets all triples of the
//! current basis with no restriction to the original generators (the
//! library restricts the outer factors).

#![allow(dead_code)]

use lts_core::Matrix;

pub type Grid = Vec<Vec<(f64, f64)>>;

pub fn to_grid(m: &Matrix) -> Grid {
    let n = m.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let z = m.get(i, j);
                    (z.re, z.im)
                })
                .collect()
        })
        .collect()
}

pub fn grid_mul(a: &Grid, b: &Grid) -> Grid {
    let n = a.len();
    let mut out = vec![vec![(0.0, 0.0); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut re = 0.0;
            let mut im = 0.0;
            for k in 0..n {
                let (ar, ai) = a[i][k];
                let (br, bi) = b[k][j];
                re += ar * br - ai * bi;
                im += ar * bi + ai * br;
            }
            out[i][j] = (re, im);
        }
    }
    out
}

pub fn grid_sub(a: &Grid, b: &Grid) -> Grid {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| {
            ra.iter()
                .zip(rb)
                .map(|(&(xr, xi), &(yr, yi))| (xr - yr, xi - yi))
                .collect()
        })
        .collect()
}

pub fn grid_commutator(a: &Grid, b: &Grid) -> Grid {
    grid_sub(&grid_mul(a, b), &grid_mul(b, a))
}

pub fn grid_double_bracket(a: &Grid, b: &Grid, c: &Grid) -> Grid {
    grid_commutator(&grid_commutator(a, b), c)
}

pub fn grid_norm(a: &Grid) -> f64 {
    a.iter()
        .flatten()
        .map(|&(re, im)| re * re + im * im)
        .sum::<f64>()
        .sqrt()
}

fn flatten(a: &Grid) -> Vec<f64> {
    let mut v: Vec<f64> = a.iter().flatten().map(|&(re, _)| re).collect();
    v.extend(a.iter().flatten().map(|&(_, im)| im));
    v
}

/// Rank by row echelon with partial pivoting, a different elimination
/// strategy than the library's in-order Gram-Schmidt.
#[allow(clippy::needless_range_loop)]
pub fn echelon_rank(rows: &[Vec<f64>], tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let scale = m
        .iter()
        .flat_map(|r| r.iter().map(|x| x.abs()))
        .fold(0.0, f64::max)
        .max(1e-300);
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len())
            .filter(|&r| m[r][col].abs() > tol * scale)
            .max_by(|&r, &s| m[r][col].abs().partial_cmp(&m[s][col].abs()).unwrap())
        else {
            continue;
        };
        m.swap(rank, pivot);
        let lead = m[rank][col];
        for r in 0..m.len() {
            if r == rank {
                continue;
            }
            let f = m[r][col] / lead;
            if f != 0.0 {
                for c in col..cols {
                    let sub = f * m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

pub fn grids_rank(mats: &[Grid], tol: f64) -> usize {
    let rows: Vec<Vec<f64>> = mats.iter().map(flatten).collect();
    echelon_rank(&rows, tol)
}

pub fn matrices_rank(mats: &[Matrix], tol: f64) -> usize {
    let grids: Vec<Grid> = mats.iter().map(to_grid).collect();
    grids_rank(&grids, tol)
}

/// Exhaustive double-bracket closure by direct matrix arithmetic:
/// keeps bracketing all triples of the current basis (not just the
/// original generators) until the rank stops growing.
pub fn closure_rank(generators: &[Matrix], tol: f64) -> usize {
    let mut basis: Vec<Grid> = Vec::new();
    for g in generators {
        let grid = to_grid(g);
        let mut trial = basis.clone();
        trial.push(grid.clone());
        if grids_rank(&trial, tol) > basis.len() {
            basis.push(grid);
        }
    }
    loop {
        let current = basis.len();
        let mut additions: Vec<Grid> = Vec::new();
        for a in 0..basis.len() {
            for b in 0..basis.len() {
                for c in 0..basis.len() {
                    let value = grid_double_bracket(&basis[a], &basis[b], &basis[c]);
                    if grid_norm(&value) < 1e-14 {
                        continue;
                    }
                    let mut trial = basis.clone();
                    trial.extend(additions.iter().cloned());
                    trial.push(value.clone());
                    if grids_rank(&trial, tol) > basis.len() + additions.len() {
                        additions.push(value);
                    }
                }
            }
        }
        basis.extend(additions);
        if basis.len() == current {
            return current;
        }
    }
}

/// Gram determinant of integer-entry matrices by fraction-free
/// (Bareiss) elimination; positive iff the family is independent.
pub fn gram_determinant(mats: &[Matrix]) -> i128 {
    let vectors: Vec<Vec<i128>> = mats
        .iter()
        .map(|m| {
            m.real_vectorize()
                .into_iter()
                .map(|x| {
                    assert_eq!(x.fract(), 0.0, "gram_determinant needs integer entries");
                    x as i128
                })
                .collect()
        })
        .collect();
    let k = vectors.len();
    let mut g = vec![vec![0i128; k]; k];
    for i in 0..k {
        for j in 0..k {
            g[i][j] = vectors[i].iter().zip(&vectors[j]).map(|(a, b)| a * b).sum();
        }
    }
    // Bareiss elimination; the determinant lands in g[k-1][k-1]. A
    // Gram matrix is positive semidefinite, so a zero pivot on the
    // diagonal already means the family is dependent.
    let mut prev = 1i128;
    for p in 0..k - 1 {
        if g[p][p] == 0 {
            return 0;
        }
        for i in p + 1..k {
            for j in p + 1..k {
                g[i][j] = (g[i][j] * g[p][p] - g[i][p] * g[p][j]) / prev;
            }
            g[i][p] = 0;
        }
        prev = g[p][p];
    }
    g[k - 1][k - 1]
}
