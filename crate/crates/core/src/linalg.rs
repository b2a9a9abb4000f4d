//! Dense real-symmetric and complex-Hermitian matrix utilities.
//!
//! One eigensolver serves everything: cyclic threshold Jacobi on real
//! symmetric matrices. Complex Hermitian inputs go through the real
//! embedding [[Re, -Im], [Im, Re]], whose spectrum is that of the original
//! operator with doubled multiplicity.

use num_complex::Complex64;

use crate::{domain, Result};

const SYMMETRY_TOL: f64 = 1e-12;

/// Real symmetric matrix, row-major, exactly symmetric as stored.
#[derive(Debug, Clone)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Builds from row-major entries. Asymmetry beyond 1e-12 is a domain
    /// error; below that, entries are symmetrized so the invariant holds
    /// exactly.
    pub fn new(dim: usize, mut data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return domain("SymMatrix requires dim >= 1");
        }
        if data.len() != dim * dim {
            return domain(format!(
                "SymMatrix expects {} entries, got {}",
                dim * dim,
                data.len()
            ));
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                let a = data[i * dim + j];
                let b = data[j * dim + i];
                if (a - b).abs() > SYMMETRY_TOL {
                    return domain(format!(
                        "matrix is not symmetric: |a[{i}][{j}] - a[{j}][{i}]| = {}",
                        (a - b).abs()
                    ));
                }
                let avg = 0.5 * (a + b);
                data[i * dim + j] = avg;
                data[j * dim + i] = avg;
            }
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                data[i * dim + j] = f(i, j);
            }
        }
        Self::new(dim, data)
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1.0;
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Sets entry (i, j) and its mirror.
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![0.0; self.dim];
        for i in 0..self.dim {
            let row = &self.data[i * self.dim..(i + 1) * self.dim];
            out[i] = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
        out
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }
}

/// Complex Hermitian matrix, row-major, exactly Hermitian as stored.
#[derive(Debug, Clone)]
pub struct HermMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl HermMatrix {
    /// Builds from row-major entries; Hermiticity violations beyond 1e-12
    /// are a domain error, smaller ones are averaged away.
    pub fn new(dim: usize, mut data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return domain("HermMatrix requires dim >= 1");
        }
        if data.len() != dim * dim {
            return domain(format!(
                "HermMatrix expects {} entries, got {}",
                dim * dim,
                data.len()
            ));
        }
        for i in 0..dim {
            let d = data[i * dim + i];
            if d.im.abs() > SYMMETRY_TOL {
                return domain(format!("matrix is not Hermitian: diagonal [{i}] has Im {}", d.im));
            }
            data[i * dim + i] = Complex64::new(d.re, 0.0);
            for j in (i + 1)..dim {
                let a = data[i * dim + j];
                let b = data[j * dim + i];
                if (a - b.conj()).norm() > SYMMETRY_TOL {
                    return domain(format!(
                        "matrix is not Hermitian: |a[{i}][{j}] - conj(a[{j}][{i}])| = {}",
                        (a - b.conj()).norm()
                    ));
                }
                let avg = 0.5 * (a + b.conj());
                data[i * dim + j] = avg;
                data[j * dim + i] = avg.conj();
            }
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                data[i * dim + j] = f(i, j);
            }
        }
        Self::new(dim, data)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }
}

/// Eigendecomposition of a real symmetric matrix: ascending eigenvalues and
/// matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

/// Cyclic threshold Jacobi. Eigenvalues ascending, eigenvectors orthonormal,
/// residual off-diagonal mass below 1e-12 of the input Frobenius norm.
pub fn jacobi_eigen(a: &SymMatrix) -> Result<Eigen> {
    let (values, vectors) = jacobi_inner(a, true);
    Ok(Eigen {
        values,
        vectors: vectors.expect("vectors requested"),
    })
}

/// Eigenvalues only (ascending); same sweeps as [`jacobi_eigen`] without the
/// rotation-product accumulation.
pub fn jacobi_eigenvalues(a: &SymMatrix) -> Vec<f64> {
    jacobi_inner(a, false).0
}

fn jacobi_inner(m: &SymMatrix, want_vectors: bool) -> (Vec<f64>, Option<Vec<Vec<f64>>>) {
    let n = m.dim;
    let mut a = m.data.clone();
    // eigenvector matrix held transposed: row i accumulates eigenvector i
    let mut vt = if want_vectors {
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
        Some(v)
    } else {
        None
    };

    let fro = m.frobenius_norm();
    let tol = 1e-13 * fro;
    const MAX_SWEEPS: usize = 60;

    for sweep in 0..MAX_SWEEPS {
        let mut off2 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off2 += a[i * n + j] * a[i * n + j];
            }
        }
        if (2.0 * off2).sqrt() <= tol || off2 == 0.0 {
            break;
        }
        // rotation threshold keeps early sweeps from chasing negligible entries
        let thresh = if sweep < 3 {
            0.2 * (2.0 * off2).sqrt() / (n as f64)
        } else {
            0.0
        };
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 || apq.abs() <= thresh {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                // tiny relative to its diagonal neighbours: flush to zero
                let g = 100.0 * apq.abs();
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                // rotate rows p and q over their full length (branch-free,
                // vectorizable), then patch the four pivot entries
                let (head, tail) = a.split_at_mut(q * n);
                let row_p = &mut head[p * n..p * n + n];
                let row_q = &mut tail[..n];
                for (gp, gq) in row_p.iter_mut().zip(row_q.iter_mut()) {
                    let (x, y) = (*gp, *gq);
                    *gp = x - s * (y + tau * x);
                    *gq = y + s * (x - tau * y);
                }
                row_p[p] = app - t * apq;
                row_q[q] = aqq + t * apq;
                row_p[q] = 0.0;
                row_q[p] = 0.0;
                // mirror the updated rows into columns p and q
                for i in 0..n {
                    a[i * n + p] = a[p * n + i];
                    a[i * n + q] = a[q * n + i];
                }

                if let Some(vt) = vt.as_mut() {
                    let (head, tail) = vt.split_at_mut(q * n);
                    let vp = &mut head[p * n..p * n + n];
                    let vq = &mut tail[..n];
                    for (gp, gq) in vp.iter_mut().zip(vq.iter_mut()) {
                        let (x, y) = (*gp, *gq);
                        *gp = c * x - s * y;
                        *gq = s * x + c * y;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].partial_cmp(&a[j * n + j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = vt.map(|vt| {
        order
            .iter()
            .map(|&i| vt[i * n..(i + 1) * n].to_vec())
            .collect()
    });
    (values, vectors)
}

/// Largest absolute eigenvalue of a Hermitian matrix, via Jacobi on the
/// real symmetric embedding [[Re, -Im], [Im, Re]].
pub fn spectral_norm(h: &HermMatrix) -> f64 {
    let n = h.dim;
    let mut data = vec![0.0; 4 * n * n];
    let big = 2 * n;
    for i in 0..n {
        for j in 0..n {
            let z = h.get(i, j);
            data[i * big + j] = z.re;
            data[i * big + (n + j)] = -z.im;
            data[(n + i) * big + j] = z.im;
            data[(n + i) * big + (n + j)] = z.re;
        }
    }
    let m = SymMatrix { dim: big, data };
    jacobi_eigenvalues(&m)
        .into_iter()
        .fold(0.0, |acc, v| acc.max(v.abs()))
}
