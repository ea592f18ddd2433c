//! Dense complex matrices (nalgebra storage, column-major) with products
//! routed through the `gemm` kernels.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

/// How an operand enters a product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    None,
    Adjoint,
}

/// `op(a) · op(b)`.
pub fn matmul(a: &CMatrix, op_a: Op, b: &CMatrix, op_b: Op) -> CMatrix {
    let (m, k) = shape(a, op_a);
    let (k2, n) = shape(b, op_b);
    assert_eq!(k, k2, "inner dimensions differ");
    let mut out = CMatrix::zeros(m, n);
    if m == 0 || n == 0 || k == 0 {
        return out;
    }
    let (cs_a, rs_a) = strides(a, op_a);
    let (cs_b, rs_b) = strides(b, op_b);
    // SAFETY: every operand pointer comes from a live nalgebra buffer whose
    // shape matches (m, k), (k, n) and (m, n) under the given strides.
    unsafe {
        gemm::gemm(
            m,
            n,
            k,
            out.as_mut_ptr(),
            m as isize,
            1,
            false,
            a.as_ptr(),
            cs_a,
            rs_a,
            b.as_ptr(),
            cs_b,
            rs_b,
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            false,
            op_a == Op::Adjoint,
            op_b == Op::Adjoint,
            gemm::Parallelism::None,
        );
    }
    out
}

fn shape(a: &CMatrix, op: Op) -> (usize, usize) {
    match op {
        Op::None => (a.nrows(), a.ncols()),
        Op::Adjoint => (a.ncols(), a.nrows()),
    }
}

/// (column stride, row stride) of `op(a)`.
fn strides(a: &CMatrix, op: Op) -> (isize, isize) {
    let ld = a.nrows() as isize;
    match op {
        Op::None => (ld, 1),
        Op::Adjoint => (1, ld),
    }
}

/// `Tr(a)`.
pub fn trace(a: &CMatrix) -> Complex64 {
    a.diagonal().iter().sum()
}

/// `Tr(a* b) = Σ conj(a_ij) b_ij`.
pub fn frobenius_inner(a: &CMatrix, b: &CMatrix) -> Complex64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// `‖a‖²_F`.
pub fn frobenius_sq(a: &CMatrix) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum()
}

/// Largest entry modulus.
pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}
