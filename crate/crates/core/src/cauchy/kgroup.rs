//! Automorphisms fixing the identity element (the group `K`), the polar
//! factorization of the triangular multiplication algorithm, and the
//! reduction of identity-invariant solutions to the quadratic-representation
//! case.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::descriptor::{AlgebraDescriptor, AlgebraKind};
use crate::element::Element;
use crate::error::Result;
use crate::operator::Operator;
use crate::peirce::JordanFrame;
use crate::sym_real::SymMatrix;
use crate::tolerance::Tolerance;
use crate::triangular;

use super::{LawKind, ResidualReport};

/// Haar-ish random rotation from QR of a Gaussian matrix (modified
/// Gram-Schmidt, determinant fixed to +1).
#[allow(clippy::needless_range_loop)]
fn random_rotation(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    let mut cols: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| StandardNormal.sample(rng)).collect())
        .collect();
    for j in 0..n {
        for i in 0..j {
            let proj: f64 = (0..n).map(|k| cols[j][k] * cols[i][k]).sum();
            for k in 0..n {
                cols[j][k] -= proj * cols[i][k];
            }
        }
        let norm: f64 = cols[j].iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-12 {
            // Degenerate draw; restart the column from a fixed axis.
            for (k, v) in cols[j].iter_mut().enumerate() {
                *v = if k == j { 1.0 } else { 0.0 };
            }
            for i in 0..j {
                let proj: f64 = (0..n).map(|k| cols[j][k] * cols[i][k]).sum();
                for k in 0..n {
                    cols[j][k] -= proj * cols[i][k];
                }
            }
        }
        let norm: f64 = cols[j].iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in cols[j].iter_mut() {
            *v /= norm;
        }
    }
    let mut q = vec![0.0; n * n];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            q[i * n + j] = col[i];
        }
    }
    if crate::linalg::det(&q, n) < 0.0 {
        for i in 0..n {
            q[i * n] = -q[i * n];
        }
    }
    q
}

/// Random automorphism in `K`: an orthogonal cone automorphism fixing `e`.
/// For `sym_real` this is `x -> Q x Q^T`; for the Lorentz algebra
/// `(x0, x) -> (x0, R x)`.
pub fn random_k_with(desc: AlgebraDescriptor, rng: &mut impl Rng) -> Operator {
    let dim = desc.ambient_dim();
    match desc.kind() {
        AlgebraKind::SymReal => {
            let r = desc.rank();
            let q = random_rotation(r, rng);
            let qt = crate::linalg::transpose(&q, r);
            let mut mat = vec![0.0; dim * dim];
            for j in 0..dim {
                let b = Element::basis(desc, j).expect("basis index");
                let bm = SymMatrix::from_element(&b).expect("sym element");
                let qb = crate::linalg::mat_mul(&q, bm.as_slice(), r);
                let qbqt = crate::linalg::mat_mul(&qb, &qt, r);
                let col = crate::sym_real::dense_to_coords(&qbqt, r);
                for i in 0..dim {
                    mat[i * dim + j] = col[i];
                }
            }
            Operator::from_matrix(desc, mat).expect("finite entries")
        }
        AlgebraKind::Lorentz => {
            let n = dim - 1;
            let rot = random_rotation(n, rng);
            let mut mat = vec![0.0; dim * dim];
            mat[0] = 1.0;
            for i in 0..n {
                for j in 0..n {
                    mat[(i + 1) * dim + (j + 1)] = rot[i * n + j];
                }
            }
            Operator::from_matrix(desc, mat).expect("finite entries")
        }
    }
}

/// Seeded variant of [`random_k_with`].
pub fn random_k_automorphism(desc: AlgebraDescriptor, seed: u64) -> Operator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_k_with(desc, &mut rng)
}

/// The orthogonal factor of the triangular algorithm: `k_x = P(x^{-1/2}) t_x`,
/// so that `t_x = P(x^{1/2}) k_x` is the polar decomposition of `t_x`.
pub fn polar_k_factor(x: &Element, frame: &JordanFrame) -> Result<Operator> {
    let d = triangular::triangular_decompose(x, frame)?;
    let t = d.operator()?;
    let p_inv = Operator::quad_rep(&x.power(-0.5)?);
    p_inv.compose(&t)
}

/// Verifies the computational content of the identity-invariant reduction,
/// using the triangular algorithm as the concrete case whose `w(e)` is the
/// identity:
///
/// * `f = log det` is invariant under `K` and solves the equation for both
///   multiplication algorithms;
/// * `t_x` factors as `P(x^{1/2}) k_x` with `k_x` an isometry fixing `e`;
/// * frame-diagonal `x` gives `k_x = Id`.
pub fn k_invariance_reduction_check(
    desc: AlgebraDescriptor,
    n_samples: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<ResidualReport> {
    let frame = JordanFrame::standard(desc);
    let e = Element::identity(desc);
    let id = Operator::identity(desc);
    let mut max_abs = 0.0_f64;
    for index in 0..n_samples {
        let mut rng = super::sampling::stream(seed, index as u64);
        let x = super::sampling::cone_element(desc, &mut rng);
        let y = super::sampling::cone_element(desc, &mut rng);
        let k = random_k_with(desc, &mut rng);

        let kx = polar_k_factor(&x, &frame)?;
        let fix_e = kx.apply(&e)?.max_abs_diff(&e);
        let isometry = kx.transpose().compose(&kx)?.max_abs_diff(&id);

        let f = |v: &Element| v.det().ln();
        let w2 = super::w2_apply(&x, &y, &frame)?;
        let w2_residual = (f(&x) + f(&y) - f(&w2)).abs();
        let w1 = super::w1_apply(&x, &y)?;
        let w1_residual = (f(&x) + f(&y) - f(&w1)).abs();
        let k_invariance = (f(&k.apply(&y)?) - f(&y)).abs();

        max_abs = max_abs
            .max(fix_e)
            .max(isometry)
            .max(w2_residual)
            .max(w1_residual)
            .max(k_invariance);
    }
    Ok(ResidualReport {
        law: LawKind::KInvariance,
        samples: n_samples,
        max_abs_residual: max_abs,
        max_rel_residual: max_abs,
        seed,
        pass: max_abs <= tol.abs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cauchy::sampling;

    #[test]
    fn k_fixes_identity_and_preserves_structure() {
        for desc in [
            AlgebraDescriptor::sym_real(3).unwrap(),
            AlgebraDescriptor::lorentz(4).unwrap(),
        ] {
            let k = random_k_automorphism(desc, 99);
            let e = Element::identity(desc);
            assert!(k.apply(&e).unwrap().max_abs_diff(&e) < 1e-12);

            let mut rng = sampling::stream(3, 0);
            let x = sampling::element(desc, &mut rng);
            let y = sampling::element(desc, &mut rng);
            // isometry
            let lhs = k.apply(&x).unwrap().inner(&k.apply(&y).unwrap()).unwrap();
            let rhs = x.inner(&y).unwrap();
            assert!((lhs - rhs).abs() < 1e-10 * rhs.abs().max(1.0));
            // determinant preserved
            assert!((k.apply(&x).unwrap().det() - x.det()).abs() < 1e-10 * x.det().abs().max(1.0));
            // automorphism of the product
            let kxy = k.apply(&x.jordan_product(&y).unwrap()).unwrap();
            let kx_ky = k
                .apply(&x)
                .unwrap()
                .jordan_product(&k.apply(&y).unwrap())
                .unwrap();
            assert!(kxy.max_abs_diff(&kx_ky) < 1e-10);
        }
    }

    #[test]
    fn polar_factor_is_identity_at_e() {
        let desc = AlgebraDescriptor::sym_real(3).unwrap();
        let frame = JordanFrame::standard(desc);
        let e = Element::identity(desc);
        let k = polar_k_factor(&e, &frame).unwrap();
        assert!(k.max_abs_diff(&Operator::identity(desc)) < 1e-12);
    }

    #[test]
    fn polar_factor_is_identity_for_frame_diagonal_elements() {
        let desc = AlgebraDescriptor::sym_real(3).unwrap();
        let frame = JordanFrame::standard(desc);
        let x = Element::linear_combination(&[
            (2.0, frame.get(0)),
            (0.5, frame.get(1)),
            (3.0, frame.get(2)),
        ])
        .unwrap();
        let k = polar_k_factor(&x, &frame).unwrap();
        assert!(k.max_abs_diff(&Operator::identity(desc)) < 1e-11);
    }

    #[test]
    fn reduction_check_passes() {
        let desc = AlgebraDescriptor::sym_real(3).unwrap();
        let report =
            k_invariance_reduction_check(desc, 50, 42, &Tolerance::absolute(1e-9)).unwrap();
        assert!(report.pass, "max residual {}", report.max_abs_residual);
    }
}
