use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{commutator_residual, eig_hermitian, CMatrix, C64};
use crate::error::{Error, Result};

/// Number of fresh random combinations tried after the first one.
pub const MAX_REDRAWS: usize = 8;

const JACOBI_TOL: f64 = 1e-12;

/// Common eigenbasis of a commuting family of unitaries.
///
/// A random real combination of the Hermitian and anti-Hermitian parts of
/// the family is diagonalized; its eigenvectors diagonalize every member as
/// long as the combination separates the joint eigenvalues. The result is
/// re-checked member by member and a new combination is drawn when it
/// fails. Columns are phase-normalized (see [`normalize_phase`]) and ordered
/// by ascending eigenvalue of the combination.
pub fn simultaneous_eigenbasis(family: &[CMatrix], tol: f64, seed: u64) -> Result<CMatrix> {
    let Some(first) = family.first() else {
        return Err(Error::ShapeMismatch("empty family".into()));
    };
    let d = first.rows();
    for (k, u) in family.iter().enumerate() {
        if u.rows() != d || u.cols() != d {
            return Err(Error::ShapeMismatch(format!("member {k} is {}x{}, expected {d}x{d}", u.rows(), u.cols())));
        }
        if !u.is_unitary(tol)? {
            return Err(Error::NotUnitary(format!("family member {k}")));
        }
    }
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if commutator_residual(&family[i], &family[j])? >= tol {
                return Err(Error::NotCommuting(i, j));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = C64::new(0.5, 0.0);
    let minus_half_i = C64::new(0.0, -0.5);
    for _ in 0..=MAX_REDRAWS {
        let mut a = CMatrix::zeros(d, d);
        for u in family {
            let c: f64 = rng.gen_range(-1.0..1.0);
            let r: f64 = rng.gen_range(-1.0..1.0);
            let ud = u.adjoint();
            let herm = u.add(&ud)?.scale(half);
            // (U − U†)/(2i)
            let anti = u.sub(&ud)?.scale(minus_half_i);
            a = a.add(&herm.scale(C64::new(c, 0.0)))?.add(&anti.scale(C64::new(r, 0.0)))?;
        }
        let eig = eig_hermitian(&a, JACOBI_TOL.max(tol * 1e-3))?;
        let w = normalize_phase(&eig.vectors, tol);
        let mut ok = true;
        for u in family {
            if u.conjugate_by(&w)?.off_diagonal_norm() >= tol {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(w);
        }
    }
    Err(Error::DegenerateFamily { attempts: MAX_REDRAWS + 1 })
}

/// Rotates each column so that its largest-modulus entry is real and
/// positive. Ties within `tol` go to the lowest index.
pub fn normalize_phase(basis: &CMatrix, tol: f64) -> CMatrix {
    let mut out = basis.clone();
    for j in 0..basis.cols() {
        let col = basis.column(j);
        let max = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if max == 0.0 {
            continue;
        }
        let pivot = col.iter().position(|z| z.norm() > max - tol).expect("max is attained");
        let phase = col[pivot].conj() / col[pivot].norm();
        for i in 0..basis.rows() {
            out[(i, j)] = col[i] * phase;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cplx::fourier;

    fn x() -> CMatrix {
        CMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    fn z() -> CMatrix {
        CMatrix::from_real(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap()
    }

    #[test]
    fn diagonal_family_gives_identity_up_to_order() {
        let w = simultaneous_eigenbasis(&[z()], 1e-9, 0).unwrap();
        // each column is a standard basis vector with phase +1
        for j in 0..2 {
            let col = w.column(j);
            let hits: Vec<_> = col.iter().filter(|c| (c.re - 1.0).abs() < 1e-12 && c.im.abs() < 1e-12).collect();
            assert_eq!(hits.len(), 1);
        }
    }

    #[test]
    fn pauli_x_eigenbasis() {
        let w = simultaneous_eigenbasis(&[x()], 1e-9, 3).unwrap();
        let s = 1.0 / 2f64.sqrt();
        let cols: Vec<Vec<C64>> = (0..2).map(|j| w.column(j)).collect();
        let plus = vec![C64::new(s, 0.0), C64::new(s, 0.0)];
        let minus = vec![C64::new(s, 0.0), C64::new(-s, 0.0)];
        for c in &cols {
            let close = |v: &Vec<C64>| c.iter().zip(v).all(|(a, b)| (a - b).norm() < 1e-10);
            assert!(close(&plus) || close(&minus), "{c:?}");
        }
    }

    #[test]
    fn rejects_non_commuting_and_non_unitary() {
        assert_eq!(simultaneous_eigenbasis(&[x(), z()], 1e-9, 0), Err(Error::NotCommuting(0, 1)));
        let bad = CMatrix::from_real(&[&[1.0, 1.0], &[1.0, -1.0]]).unwrap();
        assert!(matches!(simultaneous_eigenbasis(&[bad], 1e-9, 0), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn shared_eigenspace_is_reported() {
        // identity alone cannot separate the basis, but any basis diagonalizes it
        let w = simultaneous_eigenbasis(&[CMatrix::identity(3)], 1e-9, 0).unwrap();
        assert!(w.is_unitary(1e-10).unwrap());
    }

    #[test]
    fn phase_normalization_is_idempotent() {
        let f = fourier(5).scale(C64::from_polar(1.0, 0.7));
        let once = normalize_phase(&f, 1e-9);
        let twice = normalize_phase(&once, 1e-9);
        assert!(once.max_abs_diff(&twice).unwrap() < 1e-15);
        for j in 0..5 {
            assert!(once[(0, j)].im.abs() < 1e-15 && once[(0, j)].re > 0.0);
        }
    }

    #[test]
    fn shift_family_is_diagonalized() {
        // cyclic shift on C^5 and its powers
        let shift =
            CMatrix::from_fn(5, 5, |i, j| if i == (j + 1) % 5 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) });
        let mut fam = vec![shift.clone()];
        for _ in 0..3 {
            let next = fam.last().unwrap().matmul(&shift).unwrap();
            fam.push(next);
        }
        let w = simultaneous_eigenbasis(&fam, 1e-9, 42).unwrap();
        for u in &fam {
            assert!(u.conjugate_by(&w).unwrap().off_diagonal_norm() < 1e-9);
        }
        assert!(w.is_unitary(1e-10).unwrap());
    }
}
