//! Cyclic Jacobi eigensolver for small Hermitian matrices.

use alloc::vec::Vec;

use super::ComplexMatrix;
use crate::C64;

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition `A = V diag(values) V^dag` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary whose columns are the matching eigenvectors.
    pub vectors: ComplexMatrix,
}

/// Diagonalizes the Hermitian part of `a`.
pub fn hermitian_eigen(a: &ComplexMatrix) -> HermitianEigen {
    let n = a.dim();
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = m.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>();

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum();
        if off <= scale * 1e-34 || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, col)] = v[(r, src)];
        }
    }
    HermitianEigen { values, vectors }
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Vec<f64> {
    hermitian_eigen(a).values
}

// Zeroes m[p][q] with the unitary J = diag-phase * Givens, m <- J^dag m J.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let g = m[(p, q)];
    let g_abs = g.norm();
    if g_abs == 0.0 {
        return;
    }
    let phase = g / g_abs;
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let tau = (aqq - app) / (2.0 * g_abs);
    let t = if tau >= 0.0 {
        1.0 / (tau + libm::sqrt(1.0 + tau * tau))
    } else {
        -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
    };
    let c = 1.0 / libm::sqrt(1.0 + t * t);
    let s = t * c;
    // J columns: J[p][p] = c, J[q][p] = -s e^{-ia}, J[p][q] = s, J[q][q] = c e^{-ia}
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;
    let n = m.dim();

    for r in 0..n {
        let a = m[(r, p)];
        let b = m[(r, q)];
        m[(r, p)] = a * jpp + b * jqp;
        m[(r, q)] = a * jpq + b * jqq;
    }
    for col in 0..n {
        let a = m[(p, col)];
        let b = m[(q, col)];
        m[(p, col)] = jpp.conj() * a + jqp.conj() * b;
        m[(q, col)] = jpq.conj() * a + jqq.conj() * b;
    }
    m[(p, q)] = C64::new(0.0, 0.0);
    m[(q, p)] = C64::new(0.0, 0.0);
    m[(p, p)].im = 0.0;
    m[(q, q)].im = 0.0;

    for r in 0..n {
        let a = v[(r, p)];
        let b = v[(r, q)];
        v[(r, p)] = a * jpp + b * jqp;
        v[(r, q)] = a * jpq + b * jqq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn reconstructs_hermitian_matrix() {
        let mut a = ComplexMatrix::zeros(4);
        let seed = [0.3, -1.2, 0.7, 2.0, 0.05, -0.4, 1.1, 0.9, -0.6, 0.25];
        let mut k = 0;
        for i in 0..4 {
            a[(i, i)] = C64::new(seed[k % 10], 0.0);
            k += 1;
            for j in i + 1..4 {
                let z = C64::new(seed[k % 10], seed[(k + 3) % 10]);
                a[(i, j)] = z;
                a[(j, i)] = z.conj();
                k += 1;
            }
        }
        let e = hermitian_eigen(&a);
        let d = ComplexMatrix::diagonal(&e.values.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>());
        let back = e.vectors.matmul(&d).matmul(&e.vectors.adjoint());
        assert!(back.max_abs_diff(&a) < 1e-13);
        assert!(e.vectors.unitarity_error() < 1e-13);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn diagonal_input_is_untouched() {
        let a = ComplexMatrix::diagonal(&[C64::new(3.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.0, 0.0)]);
        assert_eq!(hermitian_eigenvalues(&a), vec![-1.0, 0.0, 3.0]);
    }
}
