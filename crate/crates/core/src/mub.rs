//! Families of mutually unbiased bases and the map θ taking a partitioned
//! unitary error basis to the common eigenbases of its classes.

use crate::construct::PartitionedUeb;
use crate::cplx::{simultaneous_eigenbasis, CMatrix};
use crate::error::{Error, Result};

/// d+1 orthonormal bases of C^d, each stored as a unitary whose columns are
/// the basis states. Slot 0 is the reference basis `*` (the computational
/// basis for canonical-form data); slot x+1 holds basis x.
#[derive(Debug, Clone, PartialEq)]
pub struct MubFamily {
    bases: Vec<CMatrix>,
}

impl MubFamily {
    /// `bases[0]` is basis `*`, `bases[x + 1]` basis x. The count must be d+1.
    pub fn new(bases: Vec<CMatrix>) -> Result<Self> {
        let Some(first) = bases.first() else {
            return Err(Error::WrongFamilySize { expected: 0, found: 0 });
        };
        let d = first.rows();
        if bases.len() != d + 1 {
            return Err(Error::WrongFamilySize { expected: d + 1, found: bases.len() });
        }
        for (k, b) in bases.iter().enumerate() {
            if b.rows() != d || b.cols() != d {
                return Err(Error::ShapeMismatch(format!(
                    "basis {} is {}x{}, expected {d}x{d}",
                    label(k),
                    b.rows(),
                    b.cols()
                )));
            }
        }
        Ok(MubFamily { bases })
    }

    pub fn dimension(&self) -> usize {
        self.bases[0].rows()
    }

    pub fn star(&self) -> &CMatrix {
        &self.bases[0]
    }

    /// Basis x for x in 0..d.
    pub fn basis(&self, x: usize) -> &CMatrix {
        &self.bases[x + 1]
    }

    /// All bases, `*` first.
    pub fn bases(&self) -> &[CMatrix] {
        &self.bases
    }

    pub fn into_bases(self) -> Vec<CMatrix> {
        self.bases
    }
}

/// Label of storage slot k: "*" for slot 0, otherwise the basis index.
pub fn label(slot: usize) -> String {
    if slot == 0 {
        "*".to_string()
    } else {
        (slot - 1).to_string()
    }
}

fn check_unitary(b: &CMatrix, what: &str, tol: f64) -> Result<()> {
    if b.is_unitary(tol)? {
        Ok(())
    } else {
        Err(Error::NotUnitary(what.to_string()))
    }
}

/// max |(|⟨a_i|b_j⟩|² − target_ij)|, target 1/d for distinct bases and δ_ij
/// for a basis against itself.
fn overlap_deviation(a: &CMatrix, b: &CMatrix, same: bool) -> Result<f64> {
    let d = a.rows();
    let gram = a.adjoint().matmul(b)?;
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let target = if same {
                if i == j {
                    1.0
                } else {
                    0.0
                }
            } else {
                1.0 / d as f64
            };
            worst = worst.max((gram[(i, j)].norm_sqr() - target).abs());
        }
    }
    Ok(worst)
}

pub fn is_mub_pair(a: &CMatrix, b: &CMatrix, tol: f64) -> Result<bool> {
    check_unitary(a, "first basis", tol)?;
    check_unitary(b, "second basis", tol)?;
    if a.rows() != b.rows() {
        return Err(Error::ShapeMismatch("bases of different dimension".into()));
    }
    Ok(overlap_deviation(a, b, false)? < tol)
}

/// Largest deviation of |⟨b^i_j|b^m_n⟩|² from (1/d)(1−δ_im) + δ_im·δ_jn over
/// all pairs of bases (including each basis with itself) and all states.
pub fn mub_family_residual(family: &MubFamily) -> Result<f64> {
    let bases = family.bases();
    let mut worst: f64 = 0.0;
    for i in 0..bases.len() {
        for m in i..bases.len() {
            worst = worst.max(overlap_deviation(&bases[i], &bases[m], i == m)?);
        }
    }
    Ok(worst)
}

pub fn is_maximal_mub_family(family: &MubFamily, tol: f64) -> Result<bool> {
    for (k, b) in family.bases().iter().enumerate() {
        check_unitary(b, &format!("basis {}", label(k)), tol)?;
    }
    Ok(mub_family_residual(family)? < tol)
}

/// θ: the common eigenbases of the classes of a partitioned UEB.
pub fn theta(u: &PartitionedUeb, tol: f64, seed: u64) -> Result<MubFamily> {
    if !crate::construct::is_partitioned_ueb(u, tol)? {
        return Err(Error::NotPartitionedUeb("input fails the partitioned UEB laws".into()));
    }
    common_eigenbases(u, tol, seed)
}

/// The eigenbasis extraction behind [`theta`] without validating the UEB
/// laws; each class only has to be a commuting family of unitaries.
///
/// Basis `*` is exactly the identity when every member of C_* is diagonal
/// within `tol`; otherwise it is the common eigenbasis of C_* ∪ {I}.
pub fn common_eigenbases(u: &PartitionedUeb, tol: f64, seed: u64) -> Result<MubFamily> {
    let d = u.dimension();
    let star_class: Vec<CMatrix> = u.star_class().into_iter().cloned().collect();
    let star = if star_class.iter().all(|m| m.off_diagonal_norm() < tol) {
        CMatrix::identity(d)
    } else {
        let mut family = vec![CMatrix::identity(d)];
        family.extend(star_class);
        simultaneous_eigenbasis(&family, tol, seed)?
    };
    let mut bases = vec![star];
    for x in 0..d {
        let class: Vec<CMatrix> = u.class(x).into_iter().cloned().collect();
        bases.push(simultaneous_eigenbasis(&class, tol, seed.wrapping_add(x as u64 + 1))?);
    }
    MubFamily::new(bases)
}

/// How far |A†B| is from a permutation matrix: for each row the largest
/// entry should be 1 and the others 0, with the maxima in distinct columns.
/// Returns 1.0 when the row maxima collide.
pub fn permutation_deviation(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    let gram = a.adjoint().matmul(b)?;
    let d = gram.rows();
    let mut used = vec![false; d];
    let mut worst: f64 = 0.0;
    for i in 0..d {
        let row: Vec<f64> = (0..d).map(|j| gram[(i, j)].norm()).collect();
        let (arg, max) =
            row.iter()
                .copied()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |acc, (j, v)| if v > acc.1 { (j, v) } else { acc });
        if used[arg] {
            return Ok(1.0);
        }
        used[arg] = true;
        worst = worst.max((1.0 - max).abs());
        for (j, &v) in row.iter().enumerate() {
            if j != arg {
                worst = worst.max(v);
            }
        }
    }
    Ok(worst)
}

/// True when the bases agree up to per-vector phases and a reordering.
pub fn bases_match(a: &CMatrix, b: &CMatrix, tol: f64) -> Result<bool> {
    check_unitary(a, "first basis", tol)?;
    check_unitary(b, "second basis", tol)?;
    if a.rows() != b.rows() {
        return Err(Error::ShapeMismatch("bases of different dimension".into()));
    }
    Ok(permutation_deviation(a, b)? < tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{conjugate_ueb, ueb_from_field, PartitionedUeb};
    use crate::cplx::{fourier, C64};
    use crate::gf::FiniteField;

    fn y_basis() -> CMatrix {
        let s = 1.0 / 2f64.sqrt();
        CMatrix::from_rows(&[vec![C64::new(s, 0.0), C64::new(s, 0.0)], vec![C64::new(0.0, s), C64::new(0.0, -s)]])
            .unwrap()
    }

    fn pauli_family() -> MubFamily {
        MubFamily::new(vec![CMatrix::identity(2), fourier(2), y_basis()]).unwrap()
    }

    #[test]
    fn mub_pairs() {
        assert!(is_mub_pair(&CMatrix::identity(2), &fourier(2), 1e-12).unwrap());
        assert!(!is_mub_pair(&CMatrix::identity(2), &CMatrix::identity(2), 1e-12).unwrap());
        let bad = CMatrix::from_real(&[&[1.0, 1.0], &[1.0, -1.0]]).unwrap();
        assert!(matches!(is_mub_pair(&bad, &fourier(2), 1e-9), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn pauli_eigenbases_are_maximal() {
        assert!(is_maximal_mub_family(&pauli_family(), 1e-12).unwrap());
    }

    #[test]
    fn duplicated_basis_fails() {
        let f = MubFamily::new(vec![CMatrix::identity(2), fourier(2), fourier(2)]).unwrap();
        assert!(!is_maximal_mub_family(&f, 1e-9).unwrap());
    }

    #[test]
    fn family_size_enforced() {
        assert_eq!(
            MubFamily::new(vec![CMatrix::identity(2), fourier(2)]),
            Err(Error::WrongFamilySize { expected: 3, found: 2 })
        );
    }

    #[test]
    fn theta_of_gf2_construction() {
        let u = ueb_from_field(&FiniteField::new(2, 1, None).unwrap());
        let m = theta(&u, 1e-9, 0).unwrap();
        let s = 1.0 / 2f64.sqrt();
        // C_* = {X}: the ± basis
        assert!(bases_match(m.star(), &CMatrix::from_real(&[&[s, s], &[s, -s]]).unwrap(), 1e-9).unwrap());
        // C_0 = {Z}: computational
        assert!(bases_match(m.basis(0), &CMatrix::identity(2), 1e-9).unwrap());
        // C_1 = {[[0,-1],[1,0]]}: eigenvectors (1, ∓i)/√2
        assert!(bases_match(m.basis(1), &y_basis(), 1e-9).unwrap());
        assert!(is_maximal_mub_family(&m, 1e-9).unwrap());
    }

    #[test]
    fn theta_of_gf4_is_maximal_and_diagonalizes_classes() {
        let u = ueb_from_field(&FiniteField::new(2, 2, None).unwrap());
        let m = theta(&u, 1e-9, 0).unwrap();
        assert_eq!(m.bases().len(), 5);
        assert!(is_maximal_mub_family(&m, 1e-9).unwrap());
        for x in 0..4 {
            for op in u.class(x) {
                assert!(op.conjugate_by(m.basis(x)).unwrap().off_diagonal_norm() < 1e-9);
            }
            assert!(is_mub_pair(&CMatrix::identity(4), m.basis(x), 1e-9).unwrap() || x == 0);
        }
        for op in u.star_class() {
            assert!(op.conjugate_by(m.star()).unwrap().off_diagonal_norm() < 1e-9);
        }
    }

    #[test]
    fn canonical_star_class_gives_exact_identity() {
        let f = FiniteField::new(3, 1, None).unwrap();
        let chi = crate::characters::additive_character_matrix(&f);
        let w = chi.matrix().scale(C64::new(1.0 / 3f64.sqrt(), 0.0));
        let u = conjugate_ueb(&ueb_from_field(&f), &w, 1e-9).unwrap();
        let m = theta(&u, 1e-9, 0).unwrap();
        assert_eq!(m.star(), &CMatrix::identity(3));
    }

    #[test]
    fn all_diagonal_classes_collapse_to_computational() {
        // every class a single diagonal operator: not a UEB, but the
        // extraction still runs and returns the computational basis everywhere
        let z = CMatrix::from_real(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap();
        let ops = vec![CMatrix::identity(2), z.clone(), z.clone(), z.clone()];
        let u = PartitionedUeb::new(2, ops).unwrap();
        assert!(matches!(theta(&u, 1e-9, 0), Err(Error::NotPartitionedUeb(_))));
        let m = common_eigenbases(&u, 1e-9, 0).unwrap();
        for x in 0..2 {
            assert!(bases_match(m.basis(x), &CMatrix::identity(2), 1e-9).unwrap());
        }
        assert!(!is_maximal_mub_family(&m, 1e-9).unwrap());
    }

    #[test]
    fn matching_up_to_phase_and_order() {
        let f = fourier(3);
        let permuted = CMatrix::from_fn(3, 3, |i, j| {
            let src = [2, 0, 1][j];
            f[(i, src)] * C64::from_polar(1.0, 0.3 * j as f64)
        });
        assert!(bases_match(&f, &permuted, 1e-12).unwrap());
        assert!(!bases_match(&CMatrix::identity(2), &fourier(2), 1e-9).unwrap());
        assert_eq!(permutation_deviation(&CMatrix::identity(2), &fourier(2)).unwrap(), 1.0);
    }
}
