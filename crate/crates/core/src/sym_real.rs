//! The `S_r(R)` backend: dense symmetric matrices, matrix/coordinate
//! conversion, a self-contained Jacobi eigensolver, the LDL^T factorization
//! used as the triangular-decomposition oracle, and Frobenius matrices.

use crate::descriptor::AlgebraDescriptor;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg;
use crate::peirce::JordanFrame;

/// Relative asymmetry accepted on ingestion before an input is rejected.
const ASYMMETRY_TOL: f64 = 1e-12;

/// Jacobi convergence threshold, relative to the Frobenius norm.
const JACOBI_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 50;

/// A real symmetric matrix. Inputs are symmetrized as `(m + m^T) / 2` and
/// rejected when the asymmetry exceeds `1e-12` relative to the largest entry.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    size: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 || rows.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidInput(
                "matrix must be square and nonempty".into(),
            ));
        }
        let mut entries = Vec::with_capacity(r * r);
        for row in &rows {
            entries.extend_from_slice(row);
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        let scale = linalg::max_abs(&entries).max(1e-300);
        let mut worst = 0.0_f64;
        for i in 0..r {
            for j in i + 1..r {
                worst = worst.max((entries[i * r + j] - entries[j * r + i]).abs());
            }
        }
        if worst > ASYMMETRY_TOL * scale {
            return Err(Error::InvalidInput(format!(
                "matrix asymmetry {worst:.3e} exceeds {ASYMMETRY_TOL:.0e} relative"
            )));
        }
        for i in 0..r {
            for j in i + 1..r {
                let s = 0.5 * (entries[i * r + j] + entries[j * r + i]);
                entries[i * r + j] = s;
                entries[j * r + i] = s;
            }
        }
        Ok(SymMatrix { size: r, entries })
    }

    pub fn identity(r: usize) -> Self {
        SymMatrix {
            size: r,
            entries: linalg::identity(r),
        }
    }

    pub fn diagonal(d: &[f64]) -> Self {
        let r = d.len();
        let mut entries = vec![0.0; r * r];
        for (i, &v) in d.iter().enumerate() {
            entries[i * r + i] = v;
        }
        SymMatrix { size: r, entries }
    }

    /// `mu_ij + mu_ji` for `i != j`, or `mu_ii` on the diagonal; the unit
    /// matrices addressable from the CLI as `unit:i,j` (0-based).
    pub fn unit(r: usize, i: usize, j: usize) -> Result<Self> {
        if i >= r || j >= r {
            return Err(Error::InvalidInput(format!(
                "unit indices ({i},{j}) out of range for size {r}"
            )));
        }
        let mut entries = vec![0.0; r * r];
        entries[i * r + j] = 1.0;
        entries[j * r + i] = 1.0;
        Ok(SymMatrix { size: r, entries })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.size)
            .map(|i| self.entries[i * self.size..(i + 1) * self.size].to_vec())
            .collect()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn to_element(&self) -> Result<Element> {
        let desc = AlgebraDescriptor::sym_real(self.size)?;
        Element::from_coords(desc, dense_to_coords(&self.entries, self.size))
    }

    pub fn from_element(x: &Element) -> Result<Self> {
        let r = x.descriptor().sym_size()?;
        Ok(SymMatrix {
            size: r,
            entries: coords_to_dense(x.coords(), r),
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Orthonormal coordinates -> dense `r x r` matrix. Off-diagonal coordinates
/// carry the `sqrt(2)` basis scaling.
pub(crate) fn coords_to_dense(coords: &[f64], r: usize) -> Vec<f64> {
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut m = vec![0.0; r * r];
    for i in 0..r {
        m[i * r + i] = coords[i];
    }
    let mut k = r;
    for i in 0..r {
        for j in i + 1..r {
            let v = coords[k] / sqrt2;
            m[i * r + j] = v;
            m[j * r + i] = v;
            k += 1;
        }
    }
    m
}

pub(crate) fn dense_to_coords(m: &[f64], r: usize) -> Vec<f64> {
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut coords = Vec::with_capacity(r * (r + 1) / 2);
    for i in 0..r {
        coords.push(m[i * r + i]);
    }
    for i in 0..r {
        for j in i + 1..r {
            coords.push(m[i * r + j] * sqrt2);
        }
    }
    coords
}

/// Cyclic-by-row Jacobi eigensolver with closed-form 2x2 rotations.
///
/// Returns eigenvalues sorted descending and the matching orthonormal
/// eigenvector columns (row-major `r x r`). Fails with [`Error::NoConvergence`]
/// when the off-diagonal norm is still above `1e-13 * ||m||_F` after 50
/// sweeps.
pub fn eig_jacobi(m: &SymMatrix) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = m.size;
    let mut a = m.entries.clone();
    let mut v = linalg::identity(n);
    let fro = m.frobenius_norm().max(1e-300);

    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += 2.0 * a[i * n + j] * a[i * n + j];
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off(&a) > JACOBI_TOL * fro {
        if sweeps >= JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                off: off(&a),
                sweeps,
            });
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-300 * fro {
                    continue;
                }
                // Closed-form rotation annihilating a[p][q].
                let theta = 0.5 * (a[q * n + q] - a[p * n + p]) / apq;
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[j * n + j]
            .partial_cmp(&a[i * n + i])
            .expect("finite eigenvalues")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[row * n + col] = v[row * n + src];
        }
    }
    Ok((eigenvalues, vectors))
}

/// Builds the Jordan frame `c_i = v_i v_i^T` from orthonormal eigenvector
/// columns.
pub fn frame_from_eigenvectors(v: &[f64], r: usize) -> Result<JordanFrame> {
    if v.len() != r * r {
        return Err(Error::DimensionMismatch(format!(
            "expected {r}x{r} eigenvector matrix, got {} entries",
            v.len()
        )));
    }
    let vt = linalg::transpose(v, r);
    let gram = linalg::mat_mul(&vt, v, r);
    let residual = linalg::max_abs_diff(&gram, &linalg::identity(r));
    if residual > 1e-8 {
        return Err(Error::FrameIncomplete(format!(
            "eigenvector columns are not orthonormal (residual {residual:.3e})"
        )));
    }
    let mut idempotents = Vec::with_capacity(r);
    for col in 0..r {
        let mut outer = vec![0.0; r * r];
        for i in 0..r {
            for j in 0..r {
                outer[i * r + j] = v[i * r + col] * v[j * r + col];
            }
        }
        idempotents.push(
            SymMatrix {
                size: r,
                entries: outer,
            }
            .to_element()
            .expect("valid size"),
        );
    }
    JordanFrame::new(idempotents)
}

/// A Frobenius matrix: the identity plus a column below diagonal entry
/// `(pivot, pivot)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusMatrix {
    pivot: usize,
    column: Vec<f64>,
}

impl FrobeniusMatrix {
    /// `pivot` is 0-based; `column` holds the entries of rows
    /// `pivot+1 .. r` of column `pivot`.
    pub fn new(r: usize, pivot: usize, column: Vec<f64>) -> Result<Self> {
        if pivot >= r || column.len() != r - 1 - pivot {
            return Err(Error::InvalidInput(format!(
                "pivot {pivot} with column length {} invalid for size {r}",
                column.len()
            )));
        }
        Ok(FrobeniusMatrix { pivot, column })
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn column(&self) -> &[f64] {
        &self.column
    }

    pub fn to_dense(&self, r: usize) -> Vec<f64> {
        let mut m = linalg::identity(r);
        for (k, &v) in self.column.iter().enumerate() {
            m[(self.pivot + 1 + k) * r + self.pivot] = v;
        }
        m
    }
}

/// Congruence `F x F^T` by a Frobenius matrix; the matrix form of the
/// Frobenius transformation on `S_r(R)`.
pub fn frobenius_matrix_action(f: &FrobeniusMatrix, x: &SymMatrix) -> Result<SymMatrix> {
    let r = x.size;
    if f.pivot >= r || f.pivot + 1 + f.column.len() != r {
        return Err(Error::DimensionMismatch(format!(
            "Frobenius pivot {} / column {} does not fit size {r}",
            f.pivot,
            f.column.len()
        )));
    }
    let fd = f.to_dense(r);
    let fx = linalg::mat_mul(&fd, &x.entries, r);
    let out = linalg::mat_mul(&fx, &linalg::transpose(&fd, r), r);
    Ok(SymMatrix {
        size: r,
        entries: out,
    })
}

/// LDL^T factorization of a positive definite matrix: `m = L D L^T` with `L`
/// unit lower triangular and `D` a positive diagonal. Used as the classical
/// oracle for the abstract triangular decomposition.
pub fn cholesky_ldl(m: &SymMatrix) -> Result<(Vec<f64>, Vec<f64>)> {
    let r = m.size;
    let scale = linalg::max_abs(&m.entries).max(1e-300);
    let mut l = linalg::identity(r);
    let mut d = vec![0.0; r];
    for j in 0..r {
        let mut dj = m.get(j, j);
        for k in 0..j {
            dj -= l[j * r + k] * l[j * r + k] * d[k];
        }
        if dj <= 1e-14 * scale {
            return Err(Error::NotInCone(format!("pivot {dj:.3e} at column {j}")));
        }
        d[j] = dj;
        for i in j + 1..r {
            let mut v = m.get(i, j);
            for k in 0..j {
                v -= l[i * r + k] * l[j * r + k] * d[k];
            }
            l[i * r + j] = v / dj;
        }
    }
    Ok((l, d))
}
