use super::tensor::{Network, Tensor};
use crate::characters::{additive_character_matrix, multiplicative_character_matrix};
use crate::cplx::{root_of_unity, CMatrix};
use crate::gf::FiniteField;

/// Concrete tensors for the dots of the field calculus.
///
/// Black wires carry C^d (one basis state per field element), green wires
/// carry C^{d−1} with green label k standing for the nonzero element k+1.
/// Multiplications have legs [out, in, in], units a single leg, and the
/// one-wire maps `p`, `iota`, `proj`, `chi`, `psi` legs [out, in].
#[derive(Debug, Clone)]
pub struct StructureTensors {
    pub d: usize,
    /// Copy spider δ_{c,a}δ_{c,b}.
    pub black_mult: Tensor,
    /// Σ_i |i⟩.
    pub black_unit: Tensor,
    /// δ_{c, a+b}.
    pub red_mult: Tensor,
    pub red_unit: Tensor,
    /// Full-space multiplication assembled from the green-wire product and
    /// three red-unit correction terms.
    pub yellow_mult: Tensor,
    pub yellow_unit: Tensor,
    /// Copy spider on the green wire.
    pub green_mult: Tensor,
    pub green_unit: Tensor,
    /// The multiplicative group on green labels.
    pub yellow_green_mult: Tensor,
    pub yellow_green_unit: Tensor,
    pub p: Tensor,
    pub iota: Tensor,
    pub proj: Tensor,
    pub chi: Tensor,
    pub psi: Tensor,
    /// δ_{c, a·b} read straight from the multiplication table.
    pub yellow_table: Tensor,
}

pub fn build_structure_tensors(f: &FiniteField) -> StructureTensors {
    let chi = additive_character_matrix(f).into_matrix();
    let psi = multiplicative_character_matrix(f).into_matrix();
    StructureTensors::from_tables(f.order(), |a, b| f.sum(a, b), |a, b| f.product(a, b), &chi, &psi)
}

impl StructureTensors {
    /// Builds the tensors from arbitrary addition and multiplication tables
    /// on 0..d, with 0 the additive and 1 the multiplicative identity.
    /// `psi` is indexed by green labels.
    pub fn from_tables(
        d: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
        chi: &CMatrix,
        psi: &CMatrix,
    ) -> Self {
        let g = d - 1;
        let basis = |n: usize, k: usize| Tensor::indicator(&[n], |i| i[0] == k);
        let copy = |n: usize| Tensor::indicator(&[n, n, n], |i| i[0] == i[1] && i[1] == i[2]);
        let ones = |n: usize| Tensor::indicator(&[n], |_| true);

        let black_mult = copy(d);
        let red_mult = Tensor::indicator(&[d, d, d], |i| i[0] == add(i[1], i[2]));
        // a product landing on 0 has no green image and drops out
        let yellow_green_mult = Tensor::indicator(&[g, g, g], |i| i[0] + 1 == mul(i[1] + 1, i[2] + 1));
        let p = Tensor::indicator(&[g, d], |i| i[1] == i[0] + 1);
        let iota = p.permute(&[1, 0]);
        let proj = Tensor::indicator(&[d, d], |i| i[0] == i[1] && i[0] != 0);
        let green_counit = ones(g);
        let zero_state = basis(d, 0);

        // ι∘m_g∘(p⊗p)
        let mut n = Network::new();
        n.add(&iota, &["c", "s"]).add(&yellow_green_mult, &["s", "u", "v"]).add(&p, &["u", "a"]).add(&p, &["v", "b"]);
        let on_units = n.contract(&["c", "a", "b"]);
        // |0⟩⟨0| ⊗ ε_g∘p and its mirror image
        let mut n = Network::new();
        n.add(&zero_state, &["c"]).add(&zero_state, &["a"]).add(&green_counit, &["u"]).add(&p, &["u", "b"]);
        let left_zero = n.contract(&["c", "a", "b"]);
        let right_zero = left_zero.permute(&[0, 2, 1]);
        // |0⟩⟨0,0|
        let mut n = Network::new();
        n.add(&zero_state, &["c"]).add(&zero_state, &["a"]).add(&zero_state, &["b"]);
        let both_zero = n.contract(&["c", "a", "b"]);
        let yellow_mult = on_units.add(&left_zero).add(&right_zero).add(&both_zero);

        StructureTensors {
            d,
            black_unit: ones(d),
            black_mult,
            red_unit: basis(d, 0),
            red_mult,
            yellow_unit: basis(d, 1),
            yellow_mult,
            green_mult: copy(g),
            green_unit: ones(g),
            yellow_green_unit: basis(g, 0),
            yellow_green_mult,
            p,
            iota,
            proj,
            chi: Tensor::from_matrix(chi),
            psi: Tensor::from_matrix(psi),
            yellow_table: Tensor::indicator(&[d, d, d], |i| i[0] == mul(i[1], i[2])),
        }
    }

    /// The ring Z_d with χ the d-point DFT and ψ the (d−1)-point DFT. For
    /// composite d this is not a field and the multiplicative laws break.
    pub fn integers_mod(d: usize) -> Self {
        let dft = |n: usize| CMatrix::from_fn(n, n, |i, j| root_of_unity(i * j, n));
        Self::from_tables(d, |a, b| (a + b) % d, |a, b| (a * b) % d, &dft(d), &dft(d - 1))
    }

    pub fn green_dim(&self) -> usize {
        self.d - 1
    }

    /// Identity on a black wire.
    pub fn black_id(&self) -> Tensor {
        Tensor::identity(self.d)
    }

    pub fn green_id(&self) -> Tensor {
        Tensor::identity(self.d - 1)
    }
}
