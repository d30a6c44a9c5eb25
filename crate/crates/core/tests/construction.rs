mod common;

use common::{golden_gf4_table, SMALL_FIELDS};
use mubueb::characters::{additive_character_matrix, ControlledHadamard};
use mubueb::construct::{
    conjugate_ueb, eigendata, is_partitioned_ueb, is_ueb, partition_residual, phi_h, shift_multiply_ueb,
    ueb_from_field, LatinSquare,
};
use mubueb::gf::FiniteField;
use mubueb::mub::{bases_match, is_maximal_mub_family, mub_family_residual, theta};
use mubueb::{CMatrix, C64};

fn gf(p: usize, n: usize) -> FiniteField {
    FiniteField::new(p, n, None).unwrap()
}

#[test]
fn gf4_table_outside_the_defective_entries_matches_exactly() {
    let u = ueb_from_field(&gf(2, 2));
    for (k, golden) in golden_gf4_table().iter().enumerate() {
        let m = u.op(k / 4, k % 4);
        for r in 0..4 {
            for c in 0..4 {
                if [6, 9, 15].contains(&k) && (r, c) == (2, 3) {
                    continue;
                }
                assert_eq!(m[(r, c)], C64::new(golden[r][c] as f64, 0.0), "M_{}{} at ({r},{c})", k / 4, k % 4);
            }
        }
    }
}

#[test]
fn theta_diagonalizes_each_class() {
    for (p, n) in SMALL_FIELDS {
        let u = ueb_from_field(&gf(p, n));
        let m = theta(&u, 1e-9, 7).unwrap();
        assert_eq!(m.bases().len(), u.dimension() + 1);
        for x in 0..u.dimension() {
            for op in u.class(x) {
                assert!(op.conjugate_by(m.basis(x)).unwrap().off_diagonal_norm() < 1e-9);
            }
        }
        for op in u.star_class() {
            assert!(op.conjugate_by(m.star()).unwrap().off_diagonal_norm() < 1e-9);
        }
        assert!(mub_family_residual(&m).unwrap() < 1e-9, "GF({p}^{n})");
    }
}

#[test]
fn larger_fields_give_maximal_families() {
    for (p, n) in [(11, 1), (2, 4), (13, 1)] {
        let u = ueb_from_field(&gf(p, n));
        assert!(is_partitioned_ueb(&u, 1e-10).unwrap());
        assert!(is_maximal_mub_family(&theta(&u, 1e-9, 0).unwrap(), 1e-9).unwrap());
    }
}

/// Sorts a family of matrices by their bit patterns so two families can be
/// compared as sets.
fn canonical_set(ops: &[CMatrix]) -> Vec<Vec<(u64, u64)>> {
    let mut keys: Vec<Vec<(u64, u64)>> =
        ops.iter().map(|m| m.as_slice().iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect()).collect();
    keys.sort();
    keys
}

#[test]
fn field_construction_is_shift_and_multiply_as_a_set() {
    for (p, n) in SMALL_FIELDS {
        let f = gf(p, n);
        let chi = additive_character_matrix(&f).into_matrix();
        let v = shift_multiply_ueb(&LatinSquare::addition_table(&f), &[chi], 1e-12).unwrap();
        let u = ueb_from_field(&f);
        assert!(is_ueb(&v, 1e-10).unwrap());
        assert_eq!(canonical_set(&v), canonical_set(u.ops()), "GF({p}^{n})");
    }
}

#[test]
fn shift_and_multiply_with_a_hadamard_per_column() {
    // DFT_4 and a rephased copy for alternate columns
    let d = 4;
    let dft = CMatrix::from_fn(d, d, |i, j| mubueb::cplx::root_of_unity(i * j, d));
    let phase = CMatrix::diag(&[C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(1.0, 0.0), C64::new(0.0, -1.0)]);
    let rephased = dft.matmul(&phase).unwrap();
    let family = vec![dft.clone(), rephased.clone(), dft, rephased];
    let v = shift_multiply_ueb(&LatinSquare::cyclic(d), &family, 1e-12).unwrap();
    assert!(is_ueb(&v, 1e-10).unwrap());
}

#[test]
fn theta_then_phi_is_identity_on_bases() {
    for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1)] {
        let f = gf(p, n);
        let d = f.order();
        let m = theta(&ueb_from_field(&f), 1e-9, 3).unwrap();
        let chi = additive_character_matrix(&f);
        let out = phi_h(&m, &ControlledHadamard::constant(&chi, d), &chi, 1e-9).unwrap();
        assert!(out.warnings.is_empty());
        let back = theta(&out.ueb, 1e-9, 11).unwrap();
        for (a, b) in back.bases().iter().zip(m.bases()) {
            assert!(bases_match(a, b, 1e-8).unwrap(), "GF({p}^{n})");
        }
    }
}

#[test]
fn phi_then_theta_on_canonical_form() {
    for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3)] {
        let f = gf(p, n);
        let d = f.order();
        let w = additive_character_matrix(&f).matrix().scale(C64::new(1.0 / (d as f64).sqrt(), 0.0));
        let u = conjugate_ueb(&ueb_from_field(&f), &w, 1e-12).unwrap();
        let data = eigendata(&u, 1e-9, 0).unwrap();
        // G is read off the diagonal and must be the character table's transpose-free form
        assert!(data.g.matrix().max_abs_diff(&CMatrix::from_fn(d, d, |j, x| u.op(x, 0)[(j, j)])).unwrap() == 0.0);
        let rebuilt = phi_h(&data.mub, &data.h, &data.g, 1e-9).unwrap().ueb;
        for (a, b) in rebuilt.ops().iter().zip(u.ops()) {
            assert!(a.max_abs_diff(b).unwrap() < 1e-8, "GF({p}^{n})");
        }
    }
}

#[test]
fn residual_report_names_the_broken_law() {
    let u = ueb_from_field(&gf(3, 1));
    let mut ops = u.ops().to_vec();
    // flip one sign in U_{1,1}
    let mut m = ops[4].clone();
    let (r, c) = (0..3).flat_map(|r| (0..3).map(move |c| (r, c))).find(|&(r, c)| m[(r, c)].norm() > 0.5).unwrap();
    m = CMatrix::from_fn(3, 3, |i, j| if (i, j) == (r, c) { -m[(i, j)] } else { m[(i, j)] });
    ops[4] = m;
    let broken = mubueb::construct::PartitionedUeb::new(3, ops).unwrap();
    let report = partition_residual(&broken).unwrap();
    assert!(report.ueb.unitarity < 1e-12);
    assert!(report.ueb.trace_law > 0.5);
    assert!(!report.passes(1e-9));
}
