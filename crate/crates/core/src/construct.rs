//! Partitioned unitary error bases: the finite-field construction, the
//! shift-and-multiply construction, the map φ_H from MUB data, eigenvalue
//! extraction and change of basis.

use std::fmt;

use crate::characters::{
    additive_character_matrix, dephasing_residual, is_controlled_hadamard, is_hadamard, ControlledHadamard, Hadamard,
};
use crate::cplx::{commutator_residual, CMatrix, C64};
use crate::error::{Error, Result};
use crate::gf::FiniteField;
use crate::mub::{is_maximal_mub_family, theta, MubFamily};

/// d² operators on C^d stored as `ops[x * d + a] = U_{x,a}`.
///
/// The partition is read off the indices: U_{0,0} is the identity,
/// C_* = {U_{x,0} : x ≠ 0} and C_x = {U_{x,a} : a ≠ 0}. The constructor
/// only checks shapes; [`is_partitioned_ueb`] checks the laws.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionedUeb {
    d: usize,
    ops: Vec<CMatrix>,
}

impl PartitionedUeb {
    pub fn new(d: usize, ops: Vec<CMatrix>) -> Result<Self> {
        if d == 0 || ops.len() != d * d {
            return Err(Error::ShapeMismatch(format!("expected {} operators for d = {d}, got {}", d * d, ops.len())));
        }
        check_shapes(&ops, d)?;
        Ok(PartitionedUeb { d, ops })
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn op(&self, x: usize, a: usize) -> &CMatrix {
        &self.ops[x * self.d + a]
    }

    pub fn ops(&self) -> &[CMatrix] {
        &self.ops
    }

    pub fn into_ops(self) -> Vec<CMatrix> {
        self.ops
    }

    /// C_*, ordered by x.
    pub fn star_class(&self) -> Vec<&CMatrix> {
        (1..self.d).map(|x| self.op(x, 0)).collect()
    }

    /// C_x, ordered by a.
    pub fn class(&self, x: usize) -> Vec<&CMatrix> {
        (1..self.d).map(|a| self.op(x, a)).collect()
    }
}

fn check_shapes(ops: &[CMatrix], d: usize) -> Result<()> {
    for (k, m) in ops.iter().enumerate() {
        if m.rows() != d || m.cols() != d {
            return Err(Error::ShapeMismatch(format!("operator {k} is {}x{}, expected {d}x{d}", m.rows(), m.cols())));
        }
    }
    Ok(())
}

/// The finite-field UEB:
/// U_{x,a}|i⟩ = χ[1][i·a] |i + a·x⟩ for a ≠ 0 and U_{x,0}|i⟩ = |i + x⟩.
pub fn ueb_from_field(f: &FiniteField) -> PartitionedUeb {
    let d = f.order();
    let chi = additive_character_matrix(f);
    let chi = chi.matrix();
    let mut ops = Vec::with_capacity(d * d);
    for x in 0..d {
        for a in 0..d {
            let mut u = CMatrix::zeros(d, d);
            for i in 0..d {
                if a == 0 {
                    u[(f.sum(i, x), i)] = C64::new(1.0, 0.0);
                } else {
                    u[(f.sum(i, f.product(a, x)), i)] = chi[(1, f.product(i, a))];
                }
            }
            ops.push(u);
        }
    }
    PartitionedUeb { d, ops }
}

/// A d×d array in which every row and column is a permutation of 0..d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquare {
    d: usize,
    entries: Vec<usize>,
}

impl LatinSquare {
    pub fn new(rows: &[Vec<usize>]) -> Result<Self> {
        let d = rows.len();
        if d == 0 {
            return Err(Error::NotLatinSquare("empty square".into()));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(Error::NotLatinSquare(format!("row {r} has {} entries, expected {d}", row.len())));
            }
            if !is_permutation(row.iter().copied(), d) {
                return Err(Error::NotLatinSquare(format!("row {r} is not a permutation")));
            }
        }
        for c in 0..d {
            if !is_permutation(rows.iter().map(|row| row[c]), d) {
                return Err(Error::NotLatinSquare(format!("column {c} is not a permutation")));
            }
        }
        Ok(LatinSquare { d, entries: rows.concat() })
    }

    /// L[k][j] = k + j in the field.
    pub fn addition_table(f: &FiniteField) -> Self {
        let d = f.order();
        let entries = (0..d * d).map(|i| f.sum(i / d, i % d)).collect();
        LatinSquare { d, entries }
    }

    /// L[k][j] = (k + j) mod d.
    pub fn cyclic(d: usize) -> Self {
        let entries = (0..d * d).map(|i| (i / d + i % d) % d).collect();
        LatinSquare { d, entries }
    }

    pub fn order(&self) -> usize {
        self.d
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.entries[row * self.d + col]
    }
}

fn is_permutation(values: impl Iterator<Item = usize>, d: usize) -> bool {
    let mut seen = vec![false; d];
    for v in values {
        if v >= d || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Shift-and-multiply basis V_{i,j}|k⟩ = H_j[i][k] |L[k][j]⟩, returned as
/// `ops[i * d + j]`. `hadamards` is either a single Hadamard used for every
/// j or one Hadamard per column j.
pub fn shift_multiply_ueb(l: &LatinSquare, hadamards: &[CMatrix], tol: f64) -> Result<Vec<CMatrix>> {
    let d = l.order();
    if hadamards.len() != 1 && hadamards.len() != d {
        return Err(Error::ShapeMismatch(format!("expected 1 or {d} Hadamards, got {}", hadamards.len())));
    }
    for (k, h) in hadamards.iter().enumerate() {
        if h.rows() != d || h.cols() != d {
            return Err(Error::ShapeMismatch(format!("Hadamard {k} is {}x{}, expected {d}x{d}", h.rows(), h.cols())));
        }
        if !is_hadamard(h, tol)? {
            return Err(Error::NotHadamard(format!("H_{k}")));
        }
    }
    let mut ops = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let h = &hadamards[if hadamards.len() == 1 { 0 } else { j }];
            let mut v = CMatrix::zeros(d, d);
            for k in 0..d {
                v[(l.get(k, j), k)] = h[(i, k)];
            }
            ops.push(v);
        }
    }
    Ok(ops)
}

/// Worst violations of the UEB laws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UebResidual {
    /// max ‖U†U − I‖ over the operators.
    pub unitarity: f64,
    /// max |tr(U†U′) − d·δ| over all ordered pairs.
    pub trace_law: f64,
}

/// Worst violations of the partitioned-UEB laws.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionResidual {
    pub ueb: UebResidual,
    /// ‖U_{0,0} − I‖.
    pub identity: f64,
    /// Largest commutator within C_*.
    pub star_commutator: f64,
    /// Largest commutator within any C_x.
    pub class_commutator: f64,
    /// |C_*| followed by |C_0|, …, |C_{d−1}|.
    pub class_sizes: Vec<usize>,
}

impl PartitionResidual {
    pub fn passes(&self, tol: f64) -> bool {
        let d = self.class_sizes.len() - 1;
        self.ueb.unitarity < tol
            && self.ueb.trace_law < tol
            && self.identity < tol
            && self.star_commutator < tol
            && self.class_commutator < tol
            && self.class_sizes.iter().all(|&s| s + 1 == d)
    }
}

fn dimension_of(ops: &[CMatrix]) -> Result<usize> {
    let d = (ops.len() as f64).sqrt().round() as usize;
    if d == 0 || d * d != ops.len() {
        return Err(Error::ShapeMismatch(format!("{} operators is not a perfect square", ops.len())));
    }
    check_shapes(ops, d)?;
    Ok(d)
}

pub fn ueb_residual(ops: &[CMatrix]) -> Result<UebResidual> {
    let d = dimension_of(ops)?;
    let mut unitarity: f64 = 0.0;
    for u in ops {
        unitarity = unitarity.max(u.unitarity_residual()?);
    }
    let mut trace_law: f64 = 0.0;
    for (s, u) in ops.iter().enumerate() {
        for (t, v) in ops.iter().enumerate().skip(s) {
            // tr(U†V) = Σ conj(U_ij) V_ij
            let tr: C64 = u.as_slice().iter().zip(v.as_slice()).map(|(a, b)| a.conj() * b).sum();
            let target = if s == t { d as f64 } else { 0.0 };
            trace_law = trace_law.max((tr - C64::new(target, 0.0)).norm());
        }
    }
    Ok(UebResidual { unitarity, trace_law })
}

pub fn is_ueb(ops: &[CMatrix], tol: f64) -> Result<bool> {
    let r = ueb_residual(ops)?;
    Ok(r.unitarity < tol && r.trace_law < tol)
}

fn max_commutator(family: &[&CMatrix]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            worst = worst.max(commutator_residual(family[i], family[j])?);
        }
    }
    Ok(worst)
}

pub fn partition_residual(u: &PartitionedUeb) -> Result<PartitionResidual> {
    let d = u.dimension();
    let ueb = ueb_residual(u.ops())?;
    let identity = u.op(0, 0).max_abs_diff(&CMatrix::identity(d))?;
    // the identity commutes with everything, so C ∪ {I} reduces to C
    let star = u.star_class();
    let star_commutator = max_commutator(&star)?;
    let mut class_commutator: f64 = 0.0;
    let mut class_sizes = vec![star.len()];
    for x in 0..d {
        let class = u.class(x);
        class_commutator = class_commutator.max(max_commutator(&class)?);
        class_sizes.push(class.len());
    }
    Ok(PartitionResidual { ueb, identity, star_commutator, class_commutator, class_sizes })
}

pub fn is_partitioned_ueb(u: &PartitionedUeb, tol: f64) -> Result<bool> {
    Ok(partition_residual(u)?.passes(tol))
}

/// W†·U·W applied to every operator.
pub fn conjugate_ueb(u: &PartitionedUeb, w: &CMatrix, tol: f64) -> Result<PartitionedUeb> {
    if !w.is_square() || w.rows() != u.dimension() {
        return Err(Error::ShapeMismatch(format!(
            "change of basis is {}x{}, expected {d}x{d}",
            w.rows(),
            w.cols(),
            d = u.dimension()
        )));
    }
    if !w.is_unitary(tol)? {
        return Err(Error::NotUnitary("change of basis".into()));
    }
    let ops = u.ops().iter().map(|m| m.conjugate_by(w)).collect::<Result<Vec<_>>>()?;
    Ok(PartitionedUeb { d: u.d, ops })
}

/// Raised by [`phi_h`] when a Hadamard is not dephased but still satisfies
/// the weaker column conditions the construction needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DephasingWarning {
    pub subject: String,
}

impl fmt::Display for DephasingWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} is not dephased; relaxed column conditions hold", self.subject)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhiOutput {
    pub ueb: PartitionedUeb,
    pub warnings: Vec<DephasingWarning>,
}

/// Column 0 all ones and every other column summing to zero.
fn relaxed_dephasing_residual(h: &CMatrix) -> f64 {
    let one = C64::new(1.0, 0.0);
    let mut worst: f64 = 0.0;
    for j in 0..h.rows() {
        worst = worst.max((h[(j, 0)] - one).norm());
    }
    for a in 1..h.cols() {
        let sum: C64 = (0..h.rows()).map(|j| h[(j, a)]).sum();
        worst = worst.max(sum.norm());
    }
    worst
}

fn dephasing_status(h: &CMatrix, subject: &str, tol: f64) -> Result<Option<DephasingWarning>> {
    if dephasing_residual(h) < tol {
        return Ok(None);
    }
    if relaxed_dephasing_residual(h) < tol {
        return Ok(Some(DephasingWarning { subject: subject.to_string() }));
    }
    Err(Error::PreconditionFailed(format!(
        "{subject}: dephasing failed (column 0 must be all ones and other columns must sum to zero)"
    )))
}

fn spectral_sum(basis: &CMatrix, eigenvalues: impl Fn(usize) -> C64) -> CMatrix {
    let d = basis.rows();
    CMatrix::from_fn(d, d, |r, c| (0..d).map(|j| eigenvalues(j) * basis[(r, j)] * basis[(c, j)].conj()).sum())
}

/// φ_H: the partitioned UEB whose classes have the bases of `m` as common
/// eigenbases,
///
///   U_{x,a} = Σ_j H^x[j][a] |b^x_j⟩⟨b^x_j|   for a ≠ 0,
///   U_{x,0} = Σ_j G[j][x]   |b^*_j⟩⟨b^*_j|.
///
/// When basis `*` is the computational basis the second family is diagonal
/// and the output is in canonical form.
pub fn phi_h(m: &MubFamily, h: &ControlledHadamard, g: &Hadamard, tol: f64) -> Result<PhiOutput> {
    let d = m.dimension();
    if !is_maximal_mub_family(m, tol)? {
        return Err(Error::PreconditionFailed("M: is_maximal_mub_family failed".into()));
    }
    if h.control_dim() != d || h.dimension() != d {
        return Err(Error::PreconditionFailed(format!(
            "H: expected {d} members of order {d}, got {} of order {}",
            h.control_dim(),
            h.dimension()
        )));
    }
    if !is_controlled_hadamard(h, tol)? {
        return Err(Error::PreconditionFailed("H: is_controlled_hadamard failed".into()));
    }
    if g.dimension() != d {
        return Err(Error::PreconditionFailed(format!("G: expected order {d}, got {}", g.dimension())));
    }
    if !is_hadamard(g.matrix(), tol)? {
        return Err(Error::PreconditionFailed("G: is_hadamard failed".into()));
    }
    let mut warnings = Vec::new();
    for x in 0..d {
        warnings.extend(dephasing_status(h.member(x), &format!("H^{x}"), tol)?);
    }
    warnings.extend(dephasing_status(g.matrix(), "G", tol)?);

    let g = g.matrix();
    let mut ops = Vec::with_capacity(d * d);
    for x in 0..d {
        let hx = h.member(x);
        for a in 0..d {
            let op =
                if a == 0 { spectral_sum(m.star(), |j| g[(j, x)]) } else { spectral_sum(m.basis(x), |j| hx[(j, a)]) };
            ops.push(op);
        }
    }
    Ok(PhiOutput { ueb: PartitionedUeb { d, ops }, warnings })
}

/// MUB family and eigenvalue tables of a canonical-form partitioned UEB.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenData {
    pub mub: MubFamily,
    pub h: ControlledHadamard,
    pub g: Hadamard,
}

/// Inverse direction of [`phi_h`]: M = θ(U), G[j][x] = ⟨j|U_{x,0}|j⟩ and
/// H^x[j][a] = ⟨b^x_j|U_{x,a}|b^x_j⟩ for a ≠ 0, with H^x[j][0] = 1.
pub fn eigendata(u: &PartitionedUeb, tol: f64, seed: u64) -> Result<EigenData> {
    if !is_partitioned_ueb(u, tol)? {
        return Err(Error::NotPartitionedUeb("input fails the partitioned UEB laws".into()));
    }
    let d = u.dimension();
    if let Some(x) = (1..d).find(|&x| u.op(x, 0).off_diagonal_norm() >= tol) {
        return Err(Error::NotCanonicalForm(format!("U_{{{x},0}} is not diagonal")));
    }
    let mub = theta(u, tol, seed)?;
    let g = CMatrix::from_fn(d, d, |j, x| u.op(x, 0)[(j, j)]);
    let mut members = Vec::with_capacity(d);
    for x in 0..d {
        let basis = mub.basis(x);
        let mut hx = CMatrix::zeros(d, d);
        for j in 0..d {
            hx[(j, 0)] = C64::new(1.0, 0.0);
            let b = basis.column(j);
            for a in 1..d {
                let ub = u.op(x, a).apply(&b)?;
                hx[(j, a)] = crate::cplx::inner(&b, &ub);
            }
        }
        members.push(hx);
    }
    Ok(EigenData { mub, h: ControlledHadamard::new(members)?, g: Hadamard::new(g)? })
}
