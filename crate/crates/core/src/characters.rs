//! Additive and multiplicative character matrices of a finite field, and
//! Hadamard / controlled-Hadamard predicates.

use crate::cplx::{root_of_unity, CMatrix, C64};
use crate::error::{Error, Result};
use crate::gf::FiniteField;

/// A square matrix intended to be a (complex) Hadamard: unit-modulus
/// entries and H·H† = d·I. Construction only checks squareness; use
/// [`is_hadamard`] to validate.
#[derive(Debug, Clone, PartialEq)]
pub struct Hadamard {
    matrix: CMatrix,
}

impl Hadamard {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "Hadamard must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Hadamard { matrix })
    }

    pub fn dimension(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn is_valid(&self, tol: f64) -> bool {
        is_hadamard(&self.matrix, tol).unwrap_or(false)
    }
}

/// Indexed family of Hadamards H^0, …, H^{k−1}, all of the same order.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlledHadamard {
    members: Vec<CMatrix>,
}

impl ControlledHadamard {
    pub fn new(members: Vec<CMatrix>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::ShapeMismatch("controlled Hadamard needs at least one member".into()));
        };
        let d = first.rows();
        for (k, m) in members.iter().enumerate() {
            if m.rows() != d || m.cols() != d {
                return Err(Error::ShapeMismatch(format!("member {k} is {}x{}, expected {d}x{d}", m.rows(), m.cols())));
            }
        }
        Ok(ControlledHadamard { members })
    }

    /// `count` copies of the same Hadamard.
    pub fn constant(h: &Hadamard, count: usize) -> Self {
        ControlledHadamard { members: vec![h.matrix.clone(); count] }
    }

    pub fn control_dim(&self) -> usize {
        self.members.len()
    }

    pub fn dimension(&self) -> usize {
        self.members[0].rows()
    }

    pub fn members(&self) -> &[CMatrix] {
        &self.members
    }

    pub fn member(&self, x: usize) -> &CMatrix {
        &self.members[x]
    }
}

/// χ[i][a] = exp(2πi·Tr(i·a)/p).
pub fn additive_character_matrix(f: &FiniteField) -> Hadamard {
    let d = f.order();
    let p = f.characteristic();
    let m = CMatrix::from_fn(d, d, |i, a| root_of_unity(f.trace_of(f.product(i, a)), p));
    Hadamard { matrix: m }
}

/// ψ[j][k] = exp(2πi·j·log_g(k+1)/(d−1)), columns indexed by the nonzero
/// elements in index order (column k is element k+1).
pub fn multiplicative_character_matrix(f: &FiniteField) -> Hadamard {
    let order = f.order() - 1;
    let m = CMatrix::from_fn(order, order, |j, k| {
        let log = f.dlog(k + 1).expect("nonzero element");
        root_of_unity(j * log, order)
    });
    Hadamard { matrix: m }
}

/// Largest violation of |H_ij| = 1, H·H† = d·I and H†·H = d·I.
pub fn hadamard_residual(a: &CMatrix) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!("Hadamard check of a {}x{} matrix", a.rows(), a.cols())));
    }
    let d = a.rows();
    let scaled_id = CMatrix::identity(d).scale(C64::new(d as f64, 0.0));
    let modulus = a.as_slice().iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
    let ad = a.adjoint();
    let left = a.matmul(&ad)?.max_abs_diff(&scaled_id)?;
    let right = ad.matmul(a)?.max_abs_diff(&scaled_id)?;
    Ok(modulus.max(left).max(right))
}

pub fn is_hadamard(a: &CMatrix, tol: f64) -> Result<bool> {
    Ok(hadamard_residual(a)? < tol)
}

/// Largest deviation of row 0 and column 0 from all ones.
pub fn dephasing_residual(a: &CMatrix) -> f64 {
    let one = C64::new(1.0, 0.0);
    let row = (0..a.cols()).map(|j| (a[(0, j)] - one).norm());
    let col = (0..a.rows()).map(|i| (a[(i, 0)] - one).norm());
    row.chain(col).fold(0.0, f64::max)
}

pub fn is_dephased(a: &CMatrix, tol: f64) -> Result<bool> {
    Ok(is_hadamard(a, tol)? && dephasing_residual(a) < tol)
}

pub fn is_controlled_hadamard(h: &ControlledHadamard, tol: f64) -> Result<bool> {
    for m in h.members() {
        if !is_hadamard(m, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis x has states |b^x_j⟩ = column j of H^x, scaled by 1/√d.
pub fn mub_from_controlled_hadamard(h: &ControlledHadamard, tol: f64) -> Result<Vec<CMatrix>> {
    if let Some(bad) = h.members().iter().position(|m| !is_hadamard(m, tol).unwrap_or(false)) {
        return Err(Error::NotControlledHadamard(bad));
    }
    let s = C64::new(1.0 / (h.dimension() as f64).sqrt(), 0.0);
    Ok(h.members().iter().map(|m| m.scale(s)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cplx::fourier;

    fn gf(p: usize, n: usize) -> FiniteField {
        FiniteField::new(p, n, None).unwrap()
    }

    fn dft(d: usize) -> CMatrix {
        fourier(d).scale(C64::new((d as f64).sqrt(), 0.0))
    }

    #[test]
    fn chi_of_gf4_matches_golden_table() {
        let chi = additive_character_matrix(&gf(2, 2));
        let expected = CMatrix::from_real(&[
            &[1.0, 1.0, 1.0, 1.0],
            &[1.0, 1.0, -1.0, -1.0],
            &[1.0, -1.0, -1.0, 1.0],
            &[1.0, -1.0, 1.0, -1.0],
        ])
        .unwrap();
        assert_eq!(chi.matrix(), &expected);
        assert!(is_hadamard(chi.matrix(), 1e-12).unwrap());
        assert!(is_dephased(chi.matrix(), 1e-12).unwrap());
    }

    #[test]
    fn chi_of_gf3() {
        let chi = additive_character_matrix(&gf(3, 1));
        let w = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!((chi.matrix()[(1, 1)] - w).norm() < 1e-15);
        for a in 0..3 {
            assert_eq!(chi.matrix()[(0, a)], C64::new(1.0, 0.0));
        }
    }

    #[test]
    fn psi_small_fields() {
        let psi2 = multiplicative_character_matrix(&gf(2, 1));
        assert_eq!(psi2.matrix(), &CMatrix::identity(1));
        let psi4 = multiplicative_character_matrix(&gf(2, 2));
        // exponents of ω: element 1 = ω^0, 2 = ω^1, 3 = ω^2, so ψ is the 3-point DFT
        assert!(psi4.matrix().max_abs_diff(&dft(3)).unwrap() < 1e-15);
        for k in 0..3 {
            assert_eq!(psi4.matrix()[(0, k)], C64::new(1.0, 0.0));
        }
    }

    #[test]
    fn character_laws_hold() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (7, 1)] {
            let f = gf(p, n);
            let d = f.order();
            let chi = additive_character_matrix(&f);
            let chi = chi.matrix();
            assert!(is_dephased(chi, 1e-10).unwrap());
            for i in 0..d {
                for x in 0..d {
                    for y in 0..d {
                        let lhs = chi[(i, f.sum(x, y))];
                        assert!((lhs - chi[(i, x)] * chi[(i, y)]).norm() < 1e-12);
                    }
                    assert!((chi[(i, x)] - chi[(1, f.product(i, x))]).norm() < 1e-12);
                }
            }
            let psi = multiplicative_character_matrix(&f);
            let gram = psi.matrix().matmul(&psi.matrix().adjoint()).unwrap();
            let target = CMatrix::identity(d - 1).scale(C64::new((d - 1) as f64, 0.0));
            assert!(gram.max_abs_diff(&target).unwrap() < 1e-10);
        }
    }

    #[test]
    fn hadamard_predicates() {
        assert!(!is_hadamard(&CMatrix::identity(2), 1e-9).unwrap());
        let i = C64::new(0.0, 1.0);
        let one = C64::new(1.0, 0.0);
        let h = CMatrix::from_rows(&[vec![one, i], vec![one, -i]]).unwrap();
        assert!(is_hadamard(&h, 1e-12).unwrap());
        assert!(!is_dephased(&h, 1e-12).unwrap());
        assert!(matches!(is_hadamard(&CMatrix::zeros(2, 3), 1e-9), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn controlled_hadamard_predicate() {
        let chi = additive_character_matrix(&gf(2, 2));
        let good = ControlledHadamard::constant(&chi, 4);
        assert!(is_controlled_hadamard(&good, 1e-12).unwrap());
        let mut members = good.members().to_vec();
        members[2] = CMatrix::identity(4);
        let bad = ControlledHadamard::new(members).unwrap();
        assert!(!is_controlled_hadamard(&bad, 1e-12).unwrap());
        let single = ControlledHadamard::new(vec![dft(2)]).unwrap();
        assert!(is_controlled_hadamard(&single, 1e-12).unwrap());
        assert!(ControlledHadamard::new(vec![dft(2), dft(3)]).is_err());
    }

    #[test]
    fn bases_from_controlled_hadamard() {
        let chi2 = additive_character_matrix(&gf(2, 1));
        let bases = mub_from_controlled_hadamard(&ControlledHadamard::constant(&chi2, 1), 1e-12).unwrap();
        let s = 1.0 / 2f64.sqrt();
        let expected = CMatrix::from_real(&[&[s, s], &[s, -s]]).unwrap();
        assert!(bases[0].max_abs_diff(&expected).unwrap() < 1e-15);

        let chi4 = additive_character_matrix(&gf(2, 2));
        let bases = mub_from_controlled_hadamard(&ControlledHadamard::constant(&chi4, 4), 1e-12).unwrap();
        for b in &bases {
            for z in b.as_slice() {
                assert!((z.norm_sqr() - 0.25).abs() < 1e-15);
            }
            // column 0 of a dephased Hadamard gives the uniform vector
            for i in 0..4 {
                assert!((b[(i, 0)] - C64::new(0.5, 0.0)).norm() < 1e-15);
            }
        }

        let bad = ControlledHadamard::new(vec![dft(4), CMatrix::identity(4)]).unwrap();
        assert_eq!(mub_from_controlled_hadamard(&bad, 1e-9), Err(Error::NotControlledHadamard(1)));
    }
}
