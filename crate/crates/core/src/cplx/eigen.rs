use super::{CMatrix, C64};
use crate::error::{Error, Result};

/// Sweep budget for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with the matching orthonormal
/// eigenvectors as columns of `vectors`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl EigenDecomposition {
    /// V·diag(λ)·V†.
    pub fn reconstruct(&self) -> CMatrix {
        let lambda: Vec<C64> = self.values.iter().map(|&x| C64::new(x, 0.0)).collect();
        self.vectors
            .matmul(&CMatrix::diag(&lambda))
            .and_then(|m| m.matmul(&self.vectors.adjoint()))
            .expect("square factors")
    }
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation first turns the pivot a_pq real with a diagonal phase, then
/// annihilates it with a real Givens rotation. Iterates until the
/// off-diagonal Frobenius mass drops below `tol` (floored at a small
/// multiple of machine precision relative to ‖A‖_F).
pub fn eig_hermitian(a: &CMatrix, tol: f64) -> Result<EigenDecomposition> {
    let dev = a.hermitian_residual()?;
    if dev > tol {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let n = a.rows();
    let mut m = a.clone();
    // symmetrize exactly so rounding in the input cannot stall convergence
    for i in 0..n {
        m[(i, i)] = C64::new(m[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
    }
    let mut v = CMatrix::identity(n);
    let target = tol.max(8.0 * f64::EPSILON * m.frobenius_norm());

    let mut sweeps = 0;
    loop {
        let off = m.off_diagonal_norm();
        if off < target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(EigenDecomposition { values, vectors })
}

fn rotate(m: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let n = m.rows();
    // phase e^{-iφ} with a_pq = |a_pq| e^{iφ}
    let phase = apq.conj() / mag;
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let theta = 0.5 * (2.0 * mag).atan2(aqq - app);
    let (s, c) = theta.sin_cos();

    // G = [[c, s], [-s·phase, c·phase]] on the (p, q) plane; M ← G† M G, V ← V G
    let gpp = C64::new(c, 0.0);
    let gpq = C64::new(s, 0.0);
    let gqp = phase * (-s);
    let gqq = phase * c;

    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * gpp + mkq * gqp;
        m[(k, q)] = mkp * gpq + mkq * gqq;
    }
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = gpp.conj() * mpk + gqp.conj() * mqk;
        m[(q, k)] = gpq.conj() * mpk + gqq.conj() * mqk;
    }
    m[(p, q)] = C64::new(0.0, 0.0);
    m[(q, p)] = C64::new(0.0, 0.0);
    m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = C64::new(m[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * gpp + vkq * gqp;
        v[(k, q)] = vkp * gpq + vkq * gqq;
    }
}
