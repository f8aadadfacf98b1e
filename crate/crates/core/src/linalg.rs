//! Dense symmetric linear algebra for small matrices (N ≤ 64).

use std::ops::{Index, IndexMut};

use serde::Serialize;

use crate::error::{Error, Result};

/// Square row-major matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == n),
            "rows must form a square matrix"
        );
        SquareMatrix {
            n,
            data: rows.concat(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Largest `|a_ij − a_ji|` relative to the largest entry.
    pub fn check_symmetric(&self, rel_tol: f64) -> Result<()> {
        let scale = self.data.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        for i in 0..self.n {
            for j in 0..i {
                let gap = (self[(i, j)] - self[(j, i)]).abs();
                if gap > rel_tol * scale {
                    return Err(Error::NotSymmetric {
                        row: i,
                        col: j,
                        gap,
                    });
                }
            }
        }
        Ok(())
    }

    /// `D A D` for a diagonal `D = diag(d)`.
    pub fn scale_symmetric(&self, d: &[f64]) -> SquareMatrix {
        Self::from_fn(self.n, |i, j| d[i] * self[(i, j)] * d[j])
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for SquareMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// Lower-triangular Cholesky factor `A = L Lᵀ`.
///
/// A nonpositive pivot is reported with its index.
pub fn cholesky(a: &SquareMatrix) -> Result<SquareMatrix> {
    let n = a.dim();
    let mut l = SquareMatrix::zeros(n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !(d > 0.0) || !d.is_finite() {
            return Err(Error::Conditioning { index: j, pivot: d });
        }
        let djj = d.sqrt();
        l[(j, j)] = djj;
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / djj;
        }
    }
    Ok(l)
}

/// Solves `L x = b` for lower-triangular `L`.
pub fn forward_substitute(l: &SquareMatrix, b: &[f64]) -> Vec<f64> {
    let n = l.dim();
    let mut x = vec![0.0; n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[(i, k)] * x[k];
        }
        x[i] = s / l[(i, i)];
    }
    x
}

/// `L^{−1} A L^{−ᵀ}` for symmetric `A`.
pub fn congruence_inverse(l: &SquareMatrix, a: &SquareMatrix) -> SquareMatrix {
    let n = a.dim();
    // X = L^{-1} A, column by column of A (A symmetric so columns are rows)
    let mut x = SquareMatrix::zeros(n);
    for j in 0..n {
        let col: Vec<f64> = (0..n).map(|i| a[(i, j)]).collect();
        let sol = forward_substitute(l, &col);
        for i in 0..n {
            x[(i, j)] = sol[i];
        }
    }
    // C = X L^{-T} = (L^{-1} Xᵀ)ᵀ
    let mut c = SquareMatrix::zeros(n);
    for i in 0..n {
        let row: Vec<f64> = x.row(i).to_vec();
        let sol = forward_substitute(l, &row);
        for j in 0..n {
            c[(i, j)] = sol[j];
        }
    }
    // symmetrise rounding noise
    SquareMatrix::from_fn(n, |i, j| 0.5 * (c[(i, j)] + c[(j, i)]))
}

/// Eigen-decomposition of a symmetric matrix.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    /// Nonincreasing.
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: SquareMatrix,
    pub sweeps: usize,
}

impl SymmetricEigen {
    pub fn reconstruct(&self) -> SquareMatrix {
        let n = self.values.len();
        SquareMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self.vectors[(i, k)] * self.values[k] * self.vectors[(j, k)])
                .sum()
        })
    }
}

pub const DEFAULT_SWEEPS: usize = 50;

/// Cyclic Jacobi rotations.
///
/// Eigenvalues come back sorted nonincreasing with matching eigenvector
/// columns.
pub fn symmetric_eigen(a: &SquareMatrix, max_sweeps: usize) -> Result<SymmetricEigen> {
    a.check_symmetric(1e-12)?;
    let n = a.dim();
    let mut m = a.clone();
    let mut v = SquareMatrix::identity(n);
    let scale = a.frobenius();
    let mut sweeps = 0;
    loop {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)] * m[(i, j)])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale || off == 0.0 {
            break;
        }
        if sweeps == max_sweeps {
            return Err(Error::NoConvergence { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = m[(p, p)];
                let aqq = m[(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].total_cmp(&m[(i, i)]));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let vectors = SquareMatrix::from_fn(n, |i, k| v[(i, order[k])]);
    Ok(SymmetricEigen {
        values,
        vectors,
        sweeps,
    })
}

/// Clamps tiny negative eigenvalues of a PSD matrix to zero.
///
/// Values below `−1e−12 · ‖A‖` are reported as errors.
pub fn clamp_psd(values: &mut [f64], norm: f64) -> Result<()> {
    for v in values.iter_mut() {
        if *v < 0.0 {
            if *v < -1e-12 * norm {
                return Err(Error::NegativeEigenvalue { value: *v });
            }
            *v = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_and_rank_one() {
        let d = SquareMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 1.0]]);
        assert_eq!(symmetric_eigen(&d, 50).unwrap().values, vec![2.0, 1.0]);
        let r = SquareMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        let e = symmetric_eigen(&r, 50).unwrap();
        assert!((e.values[0] - 2.0).abs() < 1e-15 && e.values[1].abs() < 1e-15);
    }

    #[test]
    fn reconstruction_and_orthogonality() {
        let a = SquareMatrix::from_fn(6, |i, j| {
            1.0 / (i + j + 1) as f64 + if i == j { 1.0 } else { 0.0 }
        });
        let e = symmetric_eigen(&a, 50).unwrap();
        let r = e.reconstruct();
        let diff: f64 = (0..6)
            .flat_map(|i| (0..6).map(move |j| (i, j)))
            .map(|(i, j)| (r[(i, j)] - a[(i, j)]).powi(2))
            .sum::<f64>()
            .sqrt();
        assert!(diff <= 1e-10 * a.frobenius());
        let vtv = e.vectors.transpose().matmul(&e.vectors);
        for i in 0..6 {
            for j in 0..6 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((vtv[(i, j)] - want).abs() < 1e-13);
            }
        }
        assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn rejects_asymmetric() {
        let a = SquareMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]);
        assert!(matches!(
            symmetric_eigen(&a, 50),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn sweep_budget_is_enforced() {
        let a = SquareMatrix::from_fn(8, |i, j| ((i * 7 + j * 7) % 5) as f64 + 1.0);
        assert!(matches!(
            symmetric_eigen(&a, 0),
            Err(Error::NoConvergence { .. })
        ));
    }

    #[test]
    fn cholesky_names_failing_pivot() {
        let a = SquareMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        match cholesky(&a) {
            Err(Error::Conditioning { index, .. }) => assert_eq!(index, 1),
            other => panic!("expected conditioning error, got {other:?}"),
        }
    }

    #[test]
    fn congruence_of_self_is_identity() {
        let a = SquareMatrix::from_fn(5, |i, j| {
            1.0 / (2f64.powi(i as i32) + 2f64.powi(j as i32) + 1.0)
        });
        let l = cholesky(&a).unwrap();
        let c = congruence_inverse(&l, &a);
        for i in 0..5 {
            for j in 0..5 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((c[(i, j)] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn clamps_only_tiny_negatives() {
        let mut v = vec![1.0, -1e-14];
        clamp_psd(&mut v, 1.0).unwrap();
        assert_eq!(v[1], 0.0);
        assert!(clamp_psd(&mut [1.0, -1e-6], 1.0).is_err());
    }
}
