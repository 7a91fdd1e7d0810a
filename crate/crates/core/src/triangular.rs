//! Frobenius transformations, the triangular group, the generalized
//! Cholesky decomposition of cone elements, principal minors and power
//! functions.

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::peirce::{half_component, zero_component, JordanFrame};
use crate::tolerance::Tolerance;

/// Frobenius transformation `tau_c(z) = I + 2 z [] c + 2 (z [] c)^2` for an
/// idempotent `c` and `z` in the half eigenspace `E(c, 1/2)`.
///
/// `2 z [] c` is nilpotent of order three, so the quadratic truncation is the
/// full exponential and the inverse is `tau_c(-z)`.
pub fn frobenius(c: &Element, z: &Element, tol: &Tolerance) -> Result<Operator> {
    c.descriptor().check_same(z.descriptor())?;
    let idem_residual = c.square().max_abs_diff(c);
    if idem_residual > tol.abs + tol.rel * c.max_abs() {
        return Err(Error::NotIdempotent(idem_residual));
    }
    let cz = c.jordan_product(z)?;
    let half_residual = cz.max_abs_diff(&z.scale(0.5));
    if half_residual > tol.abs + tol.rel * z.max_abs().max(1.0) {
        return Err(Error::InvalidInput(format!(
            "z is not in E(c, 1/2): residual {half_residual:.3e}"
        )));
    }
    let m = Operator::box_op(z, c)?.scale(2.0);
    let m2 = m.compose(&m)?;
    Operator::identity(*c.descriptor())
        .add(&m)?
        .add(&m2.scale(0.5))
}

/// The generalized Cholesky factorization of a cone element: a Jordan frame,
/// off-diagonal Peirce components `z^(1) .. z^(r-1)` and a positive diagonal
/// `alpha`, with
///
/// `x = tau_{c_1}(z^(1)) ... tau_{c_{r-1}}(z^(r-1)) (sum_k alpha_k c_k)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangularDecomposition {
    pub frame: JordanFrame,
    #[serde(rename = "alphas")]
    pub diag: Vec<f64>,
    /// `z^(j)` lives in the span of the blocks `E_jk`, `k > j`.
    #[serde(rename = "z")]
    pub offdiag: Vec<Element>,
}

impl TriangularDecomposition {
    /// The triangular-group operator `t_x`: the composition of the Frobenius
    /// factors with `P(sum_k sqrt(alpha_k) c_k)`.
    pub fn operator(&self) -> Result<Operator> {
        let frame = &self.frame;
        let terms: Vec<(f64, &Element)> = self
            .diag
            .iter()
            .zip(frame.idempotents())
            .map(|(&a, c)| (a.sqrt(), c))
            .collect();
        let w = Element::linear_combination(&terms)?;
        let mut op = Operator::quad_rep(&w);
        let tol = Tolerance::default();
        for j in (0..self.offdiag.len()).rev() {
            op = frobenius(frame.get(j), &self.offdiag[j], &tol)?.compose(&op)?;
        }
        Ok(op)
    }

    /// Applies `t_x` to `y`; with `y = e` this reconstructs the decomposed
    /// element.
    pub fn apply(&self, y: &Element) -> Result<Element> {
        self.operator()?.apply(y)
    }

    pub fn reconstruct(&self) -> Result<Element> {
        self.apply(&Element::identity(*self.frame.descriptor()))
    }
}

/// Computes the triangular decomposition of a cone element by recursive
/// elimination:
///
/// `alpha_1 = <x, c_1>`, `z^(1) =` (half component of `x` at `c_1`) `/ alpha_1`,
/// then recurse on `P_0(c_1) x - alpha_1 L(e - c_1) (z^(1))^2` inside
/// `E(c_1, 0)`.
pub fn triangular_decompose(x: &Element, frame: &JordanFrame) -> Result<TriangularDecomposition> {
    frame.descriptor().check_same(x.descriptor())?;
    let r = frame.len();
    let pivot_floor = 1e-12 * x.trace().abs();
    let e = Element::identity(*x.descriptor());

    let mut diag = Vec::with_capacity(r);
    let mut offdiag = Vec::with_capacity(r.saturating_sub(1));
    let mut rest = x.clone();
    for j in 0..r {
        let c = frame.get(j);
        let alpha = rest.inner(c)?;
        if alpha <= pivot_floor {
            return Err(Error::NotInCone(format!(
                "triangular pivot {alpha:.3e} at position {j}"
            )));
        }
        diag.push(alpha);
        if j + 1 < r {
            let z = half_component(c, &rest)?.scale(1.0 / alpha);
            let z_sq_zero = e.sub(c)?.jordan_product(&z.square())?;
            rest = zero_component(c, &rest)?.sub(&z_sq_zero.scale(alpha))?;
            offdiag.push(z);
        }
    }
    Ok(TriangularDecomposition {
        frame: frame.clone(),
        offdiag,
        diag,
    })
}

/// Applies the triangular operator of a decomposition to `y`.
pub fn t_apply(d: &TriangularDecomposition, y: &Element) -> Result<Element> {
    d.apply(y)
}

/// Principal minor of order `k` (1-based) with respect to a frame:
/// `det(P(c_1 + ... + c_k) x + e - (c_1 + ... + c_k))`. Padding the
/// complement with the identity leaves exactly the determinant of the
/// rank-`k` leading subalgebra. `Delta_r = det`.
pub fn principal_minor(x: &Element, k: usize, frame: &JordanFrame) -> Result<f64> {
    frame.descriptor().check_same(x.descriptor())?;
    if k == 0 || k > frame.len() {
        return Err(Error::IndexOutOfRange {
            k,
            rank: frame.len(),
        });
    }
    let p = frame.partial_sum(k)?;
    let projected = Operator::quad_rep(&p).apply(x)?;
    let e = Element::identity(*x.descriptor());
    Ok(projected.add(&e)?.sub(&p)?.det())
}

/// Power function `Delta_s(x) = Delta_1(x)^(s1 - s2) ... Delta_r(x)^(sr)`
/// for a cone element.
pub fn delta_s(x: &Element, s: &[f64], frame: &JordanFrame) -> Result<f64> {
    let r = frame.len();
    if s.len() != r {
        return Err(Error::InvalidInput(format!(
            "exponent vector length {} does not match rank {r}",
            s.len()
        )));
    }
    let mut value = 1.0;
    for k in 1..=r {
        let minor = principal_minor(x, k, frame)?;
        if minor <= 0.0 {
            return Err(Error::NotInCone(format!(
                "principal minor {k} is {minor:.3e}"
            )));
        }
        let exponent = if k < r { s[k - 1] - s[k] } else { s[r - 1] };
        value *= minor.powf(exponent);
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::AlgebraDescriptor;
    use crate::lorentz;
    use crate::sym_real::{self, SymMatrix};

    fn sym(rows: &[&[f64]]) -> Element {
        SymMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
            .unwrap()
            .to_element()
            .unwrap()
    }

    #[test]
    fn frobenius_of_zero_is_identity() {
        let desc = AlgebraDescriptor::sym_real(3).unwrap();
        let frame = JordanFrame::standard(desc);
        let z = Element::zero(desc);
        let op = frobenius(frame.get(0), &z, &Tolerance::default()).unwrap();
        assert!(op.approx_eq(&Operator::identity(desc), &Tolerance::default()));
    }

    #[test]
    fn frobenius_matches_matrix_congruence() {
        // tau_{c_2}(z_23) on S_3(R) acts as congruence by the Frobenius
        // matrix with pivot 1 (0-based) and column (1).
        let desc = AlgebraDescriptor::sym_real(3).unwrap();
        let frame = JordanFrame::standard(desc);
        let z = SymMatrix::unit(3, 1, 2).unwrap().to_element().unwrap();
        let op = frobenius(frame.get(1), &z, &Tolerance::default()).unwrap();

        let f = sym_real::FrobeniusMatrix::new(3, 1, vec![1.0]).unwrap();
        let x = sym(&[&[2.0, 1.0, 0.5], &[1.0, 3.0, -1.0], &[0.5, -1.0, 4.0]]);
        let via_operator = op.apply(&x).unwrap();
        let via_matrix =
            sym_real::frobenius_matrix_action(&f, &SymMatrix::from_element(&x).unwrap())
                .unwrap()
                .to_element()
                .unwrap();
        assert!(via_operator.max_abs_diff(&via_matrix) < 1e-12);
    }

    #[test]
    fn frobenius_generator_is_nilpotent() {
        let desc = AlgebraDescriptor::sym_real(3).unwrap();
        let frame = JordanFrame::standard(desc);
        let z = SymMatrix::unit(3, 0, 2).unwrap().to_element().unwrap();
        let m = Operator::box_op(&z, frame.get(0)).unwrap().scale(2.0);
        let m3 = m.compose(&m).unwrap().compose(&m).unwrap();
        assert!(m3.max_abs() < 1e-12);
    }

    #[test]
    fn frobenius_inverse_is_negated_parameter() {
        let desc = AlgebraDescriptor::sym_real(3).unwrap();
        let frame = JordanFrame::standard(desc);
        let z = SymMatrix::unit(3, 0, 1)
            .unwrap()
            .to_element()
            .unwrap()
            .scale(0.75);
        let tol = Tolerance::default();
        let plus = frobenius(frame.get(0), &z, &tol).unwrap();
        let minus = frobenius(frame.get(0), &z.scale(-1.0), &tol).unwrap();
        assert!(plus
            .compose(&minus)
            .unwrap()
            .approx_eq(&Operator::identity(desc), &tol));
    }

    #[test]
    fn frobenius_one_parameter_group_law() {
        // tau_c(z(a)) tau_c(z(b)) = tau_c(z(a + b)) over the generator
        // blocks of a shared pivot.
        let desc = AlgebraDescriptor::sym_real(3).unwrap();
        let frame = JordanFrame::standard(desc);
        let tol = Tolerance::default();
        let z12 = SymMatrix::unit(3, 0, 1).unwrap().to_element().unwrap();
        let z13 = SymMatrix::unit(3, 0, 2).unwrap().to_element().unwrap();
        let z = |a: f64, b: f64| Element::linear_combination(&[(a, &z12), (b, &z13)]).unwrap();
        let c = frame.get(0);
        let lhs = frobenius(c, &z(0.7, -1.2), &tol)
            .unwrap()
            .compose(&frobenius(c, &z(-0.3, 0.5), &tol).unwrap())
            .unwrap();
        let rhs = frobenius(c, &z(0.4, -0.7), &tol).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-10);
    }

    #[test]
    fn frobenius_rejects_bad_half_space_element() {
        let desc = AlgebraDescriptor::sym_real(2).unwrap();
        let frame = JordanFrame::standard(desc);
        let bad = frame.get(1).clone();
        assert!(matches!(
            frobenius(frame.get(0), &bad, &Tolerance::default()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn decompose_diagonal_element() {
        let desc = AlgebraDescriptor::sym_real(3).unwrap();
        let frame = JordanFrame::standard(desc);
        let x = sym(&[&[2.0, 0.0, 0.0], &[0.0, 5.0, 0.0], &[0.0, 0.0, 1.5]]);
        let d = triangular_decompose(&x, &frame).unwrap();
        assert_eq!(d.diag, vec![2.0, 5.0, 1.5]);
        for z in &d.offdiag {
            assert!(z.max_abs() < 1e-14);
        }
    }

    #[test]
    fn decompose_matches_ldl_oracle() {
        let desc = AlgebraDescriptor::sym_real(2).unwrap();
        let frame = JordanFrame::standard(desc);
        let x = sym(&[&[4.0, 2.0], &[2.0, 2.0]]);
        let d = triangular_decompose(&x, &frame).unwrap();
        assert!((d.diag[0] - 4.0).abs() < 1e-14);
        assert!((d.diag[1] - 1.0).abs() < 1e-14);
        // z^(1) = (1/2) offdiag(1,1)
        let expected = SymMatrix::unit(2, 0, 1)
            .unwrap()
            .to_element()
            .unwrap()
            .scale(0.5);
        assert!(d.offdiag[0].max_abs_diff(&expected) < 1e-14);
        // reconstruction
        assert!(d.reconstruct().unwrap().max_abs_diff(&x) < 1e-12);
    }

    #[test]
    fn decompose_matches_lorentz_closed_form() {
        let frame = lorentz::LorentzFrame::new(vec![1.0, 0.0]).unwrap();
        let jframe = frame.to_jordan_frame().unwrap();
        let y = lorentz::from_parts(5.0, &[0.0, 4.0]).unwrap();
        let d = triangular_decompose(&y, &jframe).unwrap();
        let (a1, a2, z) = lorentz::triangular_params(&y, &frame).unwrap();
        assert!((d.diag[0] - a1 * a1).abs() < 1e-12);
        assert!((d.diag[1] - a2 * a2).abs() < 1e-12);
        assert!(d.offdiag[0].max_abs_diff(&z) < 1e-12);
        assert!(d.reconstruct().unwrap().max_abs_diff(&y) < 1e-12);
    }

    #[test]
    fn decompose_rejects_boundary_element() {
        let desc = AlgebraDescriptor::sym_real(2).unwrap();
        let frame = JordanFrame::standard(desc);
        let x = sym(&[&[1.0, 1.0], &[1.0, 1.0]]);
        assert!(matches!(
            triangular_decompose(&x, &frame),
            Err(Error::NotInCone(_))
        ));
    }

    #[test]
    fn apply_matches_classical_cholesky_congruence() {
        let desc = AlgebraDescriptor::sym_real(3).unwrap();
        let frame = JordanFrame::standard(desc);
        let x = sym(&[&[4.0, 1.0, 0.5], &[1.0, 3.0, -1.0], &[0.5, -1.0, 2.0]]);
        let y = sym(&[&[1.0, 0.2, 0.0], &[0.2, 2.0, 0.3], &[0.0, 0.3, 1.5]]);
        let d = triangular_decompose(&x, &frame).unwrap();
        let got = t_apply(&d, &y).unwrap();

        // Oracle: T = L sqrt(D) from the LDL^T factorization, result T y T^T.
        let m = SymMatrix::from_element(&x).unwrap();
        let (l, dd) = sym_real::cholesky_ldl(&m).unwrap();
        let mut t = vec![0.0; 9];
        for i in 0..3 {
            for j in 0..3 {
                t[i * 3 + j] = l[i * 3 + j] * dd[j].sqrt();
            }
        }
        let ym = SymMatrix::from_element(&y).unwrap();
        let ty = crate::linalg::mat_mul(&t, ym.as_slice(), 3);
        let tyt = crate::linalg::mat_mul(&ty, &crate::linalg::transpose(&t, 3), 3);
        let oracle = SymMatrix::from_rows(vec![
            tyt[0..3].to_vec(),
            tyt[3..6].to_vec(),
            tyt[6..9].to_vec(),
        ])
        .unwrap()
        .to_element()
        .unwrap();
        assert!(got.max_abs_diff(&oracle) < 1e-11);
    }

    #[test]
    fn decompose_is_a_fixed_point() {
        let desc = AlgebraDescriptor::sym_real(3).unwrap();
        let frame = JordanFrame::standard(desc);
        let x = sym(&[&[4.0, 1.0, 0.5], &[1.0, 3.0, -1.0], &[0.5, -1.0, 2.0]]);
        let d = triangular_decompose(&x, &frame).unwrap();
        let rec = d.reconstruct().unwrap();
        let d2 = triangular_decompose(&rec, &frame).unwrap();
        for (a, b) in d.diag.iter().zip(&d2.diag) {
            assert!((a - b).abs() < 1e-11);
        }
        for (za, zb) in d.offdiag.iter().zip(&d2.offdiag) {
            assert!(za.max_abs_diff(zb) < 1e-11);
        }
    }

    #[test]
    fn minors_of_diagonal_elements() {
        let desc = AlgebraDescriptor::sym_real(3).unwrap();
        let frame = JordanFrame::standard(desc);
        let x = sym(&[&[2.0, 0.0, 0.0], &[0.0, 3.0, 0.0], &[0.0, 0.0, 5.0]]);
        assert!((principal_minor(&x, 1, &frame).unwrap() - 2.0).abs() < 1e-12);
        assert!((principal_minor(&x, 2, &frame).unwrap() - 6.0).abs() < 1e-12);
        assert!((principal_minor(&x, 3, &frame).unwrap() - 30.0).abs() < 1e-12);
    }

    #[test]
    fn minors_match_leading_blocks() {
        let desc = AlgebraDescriptor::sym_real(2).unwrap();
        let frame = JordanFrame::standard(desc);
        let x = sym(&[&[4.0, 2.0], &[2.0, 2.0]]);
        assert!((principal_minor(&x, 1, &frame).unwrap() - 4.0).abs() < 1e-12);
        assert!((principal_minor(&x, 2, &frame).unwrap() - 4.0).abs() < 1e-12);
        assert!((principal_minor(&x, 2, &frame).unwrap() - x.det()).abs() < 1e-12);
    }

    #[test]
    fn minor_order_bounds() {
        let desc = AlgebraDescriptor::sym_real(2).unwrap();
        let frame = JordanFrame::standard(desc);
        let x = Element::identity(desc);
        assert!(matches!(
            principal_minor(&x, 0, &frame),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            principal_minor(&x, 3, &frame),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn lorentz_first_minor_closed_form() {
        let frame = lorentz::LorentzFrame::new(vec![0.6, 0.8]).unwrap();
        let jframe = frame.to_jordan_frame().unwrap();
        let y = lorentz::from_parts(3.0, &[1.0, -0.5]).unwrap();
        let d1 = principal_minor(&y, 1, &jframe).unwrap();
        let expected = 3.0 + (1.0 * 0.6 + (-0.5) * 0.8);
        assert!((d1 - expected).abs() < 1e-12);
    }

    #[test]
    fn delta_s_values() {
        let desc = AlgebraDescriptor::sym_real(2).unwrap();
        let frame = JordanFrame::standard(desc);
        let x = sym(&[&[2.0, 0.0], &[0.0, 3.0]]);
        // diagonal formula: alpha_1^s1 alpha_2^s2
        assert!((delta_s(&x, &[1.0, 2.0], &frame).unwrap() - 18.0).abs() < 1e-12);
        // s = (1, ..., 1) telescopes to det
        assert!((delta_s(&x, &[1.0, 1.0], &frame).unwrap() - x.det()).abs() < 1e-12);
        assert!((delta_s(&x, &[0.0, 0.0], &frame).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn delta_s_rejects_outside_cone() {
        let desc = AlgebraDescriptor::sym_real(2).unwrap();
        let frame = JordanFrame::standard(desc);
        let x = sym(&[&[1.0, 2.0], &[2.0, 1.0]]);
        assert!(matches!(
            delta_s(&x, &[1.0, 1.0], &frame),
            Err(Error::NotInCone(_))
        ));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn cone_strategy(desc: AlgebraDescriptor) -> impl Strategy<Value = Element> {
            prop::collection::vec(-3.0f64..3.0, desc.ambient_dim()).prop_map(move |coords| {
                let v = Element::from_coords(desc, coords).unwrap();
                let sq = v.square();
                let eps = 0.1 * sq.trace().abs() / desc.rank() as f64 + 0.1;
                sq.add(&Element::identity(desc).scale(eps)).unwrap()
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn decompose_reconstructs_cone_elements(
                x in cone_strategy(AlgebraDescriptor::sym_real(4).unwrap())
            ) {
                let frame = JordanFrame::standard(AlgebraDescriptor::sym_real(4).unwrap());
                let d = triangular_decompose(&x, &frame).unwrap();
                prop_assert!(d.diag.iter().all(|&a| a > 0.0));
                let rec = d.reconstruct().unwrap();
                prop_assert!(rec.max_abs_diff(&x) < 1e-10 * x.max_abs().max(1.0));
                // minors factor through the diagonal
                let mut running = 1.0;
                for (k, &alpha) in d.diag.iter().enumerate() {
                    running *= alpha;
                    let minor = principal_minor(&x, k + 1, &frame).unwrap();
                    prop_assert!((minor - running).abs() < 1e-9 * running.abs().max(1.0));
                }
            }
        }
    }
}
