//! Numerical check of the diagrammatic field calculus: every generator is a
//! concrete tensor and every equation is contracted on both sides to an
//! explicit array and compared entrywise.

mod structure;
mod tensor;

pub use structure::{build_structure_tensors, StructureTensors};
pub use tensor::{Network, Tensor};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::characters::{is_hadamard, ControlledHadamard};
use crate::cplx::{CMatrix, C64};
use crate::error::{Error, Result};

macro_rules! eval {
    ([$($out:expr),*] $(; $t:expr => [$($l:expr),*])+ $(;)?) => {{
        let mut n = Network::new();
        $( n.add($t, &[$($l),*]); )+
        n.contract(&[$($out),*])
    }};
}

/// One checked equation, named "category/equation".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub equation: String,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub entries: Vec<Check>,
}

impl Report {
    pub fn record(&mut self, equation: impl Into<String>, residual: f64, tol: f64) {
        self.entries.push(Check { equation: equation.into(), residual, pass: residual < tol });
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.entries.iter().filter(|c| !c.pass)
    }

    /// Failed checks whose name starts with `category/`.
    pub fn failures_in<'a>(&'a self, category: &'a str) -> impl Iterator<Item = &'a Check> + 'a {
        self.failures().filter(move |c| c.equation.split('/').next() == Some(category))
    }

    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// The commutative Frobenius algebras of the calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algebra {
    /// Copy spider on black wires.
    Black,
    /// Field addition.
    Red,
    /// Copy spider on green wires.
    Green,
    /// Field multiplication restricted to the nonzero elements.
    YellowGreen,
}

impl Algebra {
    pub const ALL: [Algebra; 4] = [Algebra::Black, Algebra::Red, Algebra::Green, Algebra::YellowGreen];

    pub fn name(self) -> &'static str {
        match self {
            Algebra::Black => "black",
            Algebra::Red => "red",
            Algebra::Green => "green",
            Algebra::YellowGreen => "yellow-green",
        }
    }

    /// (multiplication, unit, wire dimension, m∘m† scale)
    fn parts(self, t: &StructureTensors) -> (&Tensor, &Tensor, usize, f64) {
        let g = t.green_dim();
        match self {
            Algebra::Black => (&t.black_mult, &t.black_unit, t.d, 1.0),
            Algebra::Red => (&t.red_mult, &t.red_unit, t.d, t.d as f64),
            Algebra::Green => (&t.green_mult, &t.green_unit, g, 1.0),
            Algebra::YellowGreen => (&t.yellow_green_mult, &t.yellow_green_unit, g, g as f64),
        }
    }
}

/// Algebra pairs checked for the bialgebra laws against the black copy spider.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pair {
    RedBlack,
    YellowBlack,
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

const SPIDER_TRIALS: usize = 4;
const SPIDER_SEED: u64 = 0x5eed;

pub fn verify_frobenius(t: &StructureTensors, which: Algebra, tol: f64) -> Report {
    let cat = which.name();
    let (m, u, n, scale) = which.parts(t);
    let cm = m.conj();
    let id = Tensor::identity(n);
    let mut r = Report::default();

    let lhs = eval!(["o", "a", "b", "c"]; m => ["t", "a", "b"]; m => ["o", "t", "c"]);
    let rhs = eval!(["o", "a", "b", "c"]; m => ["t", "b", "c"]; m => ["o", "a", "t"]);
    r.record(format!("{cat}/associativity"), lhs.max_abs_diff(&rhs), tol);

    let left = eval!(["o", "a"]; u => ["e"]; m => ["o", "e", "a"]);
    let right = eval!(["o", "a"]; u => ["e"]; m => ["o", "a", "e"]);
    r.record(format!("{cat}/unit"), left.max_abs_diff(&id).max(right.max_abs_diff(&id)), tol);

    let swapped = eval!(["o", "a", "b"]; m => ["o", "b", "a"]);
    r.record(format!("{cat}/commutativity"), m.max_abs_diff(&swapped), tol);

    // (1⊗m)(m†⊗1) = m†∘m = (m⊗1)(1⊗m†), legs [o0, o1, i0, i1]
    let zig = eval!(["o0", "o1", "i0", "i1"]; &cm => ["i0", "o0", "t"]; m => ["o1", "t", "i1"]);
    let mid = eval!(["o0", "o1", "i0", "i1"]; m => ["t", "i0", "i1"]; &cm => ["t", "o0", "o1"]);
    let zag = eval!(["o0", "o1", "i0", "i1"]; &cm => ["i1", "t", "o1"]; m => ["o0", "i0", "t"]);
    r.record(format!("{cat}/frobenius"), zig.max_abs_diff(&mid).max(zag.max_abs_diff(&mid)), tol);

    let loop_ = eval!(["o", "i"]; &cm => ["i", "a", "b"]; m => ["o", "a", "b"]);
    let name = if scale == 1.0 { "special" } else { "quasi-special" };
    r.record(format!("{cat}/{name}"), loop_.max_abs_diff(&id.scale(real(scale))), tol);

    let mut rng = ChaCha8Rng::seed_from_u64(SPIDER_SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..SPIDER_TRIALS {
        let a = random_tree(m, &cm, n, &mut rng);
        let b = random_tree(m, &cm, n, &mut rng);
        worst = worst.max(a.max_abs_diff(&b));
    }
    r.record(format!("{cat}/spider-fusion"), worst, tol);
    r
}

/// A random connected, loop-free diagram from inputs i0, i1, i2 to outputs
/// o0, o1 built from two multiplications and one comultiplication.
fn random_tree(m: &Tensor, cm: &Tensor, n: usize, rng: &mut ChaCha8Rng) -> Tensor {
    let id = Tensor::identity(n);
    let mut nodes: Vec<(&Tensor, Vec<String>)> = Vec::new();
    // (label, connected component)
    let mut wires: Vec<(String, usize)> = (0..3).map(|k| (format!("i{k}"), k)).collect();
    let split_at = rng.gen_range(0..3);
    let mut fresh = 0;
    let mut label = || {
        fresh += 1;
        format!("w{fresh}")
    };
    for step in 0..3 {
        if step == split_at {
            let k = rng.gen_range(0..wires.len());
            let (w, comp) = wires.remove(k);
            let (x, y) = (label(), label());
            nodes.push((cm, vec![w, x.clone(), y.clone()]));
            wires.insert(k, (y, comp));
            wires.insert(k, (x, comp));
        } else {
            // joining wires of one component would close a loop
            let pairs: Vec<(usize, usize)> = (0..wires.len())
                .flat_map(|i| (i + 1..wires.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| wires[i].1 != wires[j].1)
                .collect();
            let (i, j) = pairs[rng.gen_range(0..pairs.len())];
            let (wj, cj) = wires.remove(j);
            let (wi, ci) = wires.remove(i);
            let out = label();
            let (first, second) = if rng.gen_bool(0.5) { (wi, wj) } else { (wj, wi) };
            nodes.push((m, vec![out.clone(), first, second]));
            for w in wires.iter_mut().filter(|w| w.1 == cj) {
                w.1 = ci;
            }
            wires.insert(i, (out, ci));
        }
    }
    if rng.gen_bool(0.5) {
        wires.swap(0, 1);
    }
    let mut net = Network::new();
    for (t, labels) in &nodes {
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        net.add(t, &refs);
    }
    for (k, (w, _)) in wires.iter().enumerate() {
        net.add(&id, &[&format!("o{k}"), w.as_str()]);
    }
    net.contract(&["o0", "o1", "i0", "i1", "i2"])
}

pub fn verify_bialgebra_and_complementarity(t: &StructureTensors, pair: Pair, tol: f64) -> Report {
    let (cat, m, u) = match pair {
        Pair::RedBlack => ("red-black", &t.red_mult, &t.red_unit),
        Pair::YellowBlack => ("yellow-black", &t.yellow_mult, &t.yellow_unit),
    };
    let bc = t.black_mult.conj();
    let ec = t.black_unit.conj();
    let mut r = Report::default();

    let lhs = eval!(["o0", "o1", "i0", "i1"]; m => ["t", "i0", "i1"]; &bc => ["t", "o0", "o1"]);
    let rhs = eval!(["o0", "o1", "i0", "i1"];
        &bc => ["i0", "a1", "a2"]; &bc => ["i1", "b1", "b2"];
        m => ["o0", "a1", "b1"]; m => ["o1", "a2", "b2"]);
    r.record(format!("{cat}/bialgebra-copy-product"), lhs.max_abs_diff(&rhs), tol);

    let lhs = eval!(["i0", "i1"]; m => ["t", "i0", "i1"]; &ec => ["t"]);
    let rhs = eval!(["i0", "i1"]; &ec => ["i0"]; &ec => ["i1"]);
    r.record(format!("{cat}/bialgebra-discard-product"), lhs.max_abs_diff(&rhs), tol);

    let lhs = eval!(["o0", "o1"]; u => ["t"]; &bc => ["t", "o0", "o1"]);
    let rhs = eval!(["o0", "o1"]; u => ["o0"]; u => ["o1"]);
    r.record(format!("{cat}/bialgebra-copy-unit"), lhs.max_abs_diff(&rhs), tol);

    let scalar = eval!([]; u => ["t"]; &ec => ["t"]);
    r.record(format!("{cat}/bialgebra-discard-unit"), scalar.max_abs_diff(&Tensor::scalar(real(1.0))), tol);

    match pair {
        Pair::RedBlack => complementarity(t, tol, &mut r),
        Pair::YellowBlack => {
            let yc = t.yellow_mult.conj();
            let lhs = eval!(["go", "o", "gi", "i"];
                &t.iota => ["s", "gi"]; &bc => ["s", "s1", "s2"];
                &t.yellow_mult => ["y", "s2", "i"]; &yc => ["y", "s3", "o"];
                &t.black_mult => ["s4", "s1", "s3"]; &t.p => ["go", "s4"]);
            let (gid, bid) = (t.green_id(), t.black_id());
            let rhs = eval!(["go", "o", "gi", "i"]; &gid => ["go", "gi"]; &bid => ["o", "i"]);
            r.record(format!("{cat}/division"), lhs.max_abs_diff(&rhs), tol);
            multiplicative_complementarity(t, tol, &mut r);
        }
    }
    r
}

/// Strong complementarity of red and black, and the character identities
/// behind it.
fn complementarity(t: &StructureTensors, tol: f64, r: &mut Report) {
    let d = t.d;
    let rc = t.red_mult.conj();
    let bc = t.black_mult.conj();
    let c1 = eval!(["o0", "o1", "i0", "i1"]; &rc => ["i1", "t", "o1"]; &t.black_mult => ["o0", "i0", "t"]);
    let c2 = eval!(["o0", "o1", "i0", "i1"]; &bc => ["i1", "t", "o1"]; &t.red_mult => ["o0", "i0", "t"]);
    r.record("red-black/complementarity-first", unitarity(&c1, 2), tol);
    r.record("red-black/complementarity-second", unitarity(&c2, 2), tol);

    let chi = t.chi.to_matrix(1);
    let unbiased = chi
        .as_slice()
        .iter()
        .map(|z| (z.norm_sqr() / d as f64 - 1.0 / d as f64).abs())
        .fold(0.0, f64::max)
        .max(unitarity(&t.chi.scale(real(1.0 / (d as f64).sqrt())), 1));
    r.record("red-black/unbiased", unbiased, tol);

    let imag = t.red_mult.data().iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    r.record("red-black/black-real", imag, tol);

    let chi_dag = t.chi.conj();
    let fourier = eval!(["o", "i0", "i1"];
        &t.chi => ["a", "i0"]; &t.chi => ["b", "i1"];
        &t.black_mult => ["c", "a", "b"]; &chi_dag => ["c", "o"]);
    r.record("red-black/fourier-product", fourier.scale(real(1.0 / d as f64)).max_abs_diff(&t.red_mult), tol);

    let lhs = eval!(["o", "i0", "i1"]; &t.red_mult => ["s", "i0", "i1"]; &t.chi => ["o", "s"]);
    let rhs = eval!(["o", "i0", "i1"]; &t.chi => ["a", "i0"]; &t.chi => ["b", "i1"]; &t.black_mult => ["o", "a", "b"]);
    r.record("red-black/character-homomorphism", lhs.max_abs_diff(&rhs), tol);

    let unit = eval!(["o"]; &t.red_unit => ["s"]; &t.chi => ["o", "s"]);
    r.record("red-black/character-unit", unit.max_abs_diff(&t.black_unit), tol);
}

/// The green-wire counterpart: the multiplicative group against the green
/// copy spider, with ψ in the role of χ.
fn multiplicative_complementarity(t: &StructureTensors, tol: f64, r: &mut Report) {
    let g = t.green_dim();
    let ym = &t.yellow_green_mult;
    let yc = ym.conj();
    let gm = &t.green_mult;
    let gc = gm.conj();
    let c1 = eval!(["o0", "o1", "i0", "i1"]; &yc => ["i1", "t", "o1"]; gm => ["o0", "i0", "t"]);
    let c2 = eval!(["o0", "o1", "i0", "i1"]; &gc => ["i1", "t", "o1"]; ym => ["o0", "i0", "t"]);
    r.record("yellow-green/complementarity-first", unitarity(&c1, 2), tol);
    r.record("yellow-green/complementarity-second", unitarity(&c2, 2), tol);

    let psi_dag = t.psi.conj();
    let fourier = eval!(["o", "i0", "i1"];
        &t.psi => ["a", "i0"]; &t.psi => ["b", "i1"];
        gm => ["c", "a", "b"]; &psi_dag => ["c", "o"]);
    r.record("yellow-green/fourier-product", fourier.scale(real(1.0 / g as f64)).max_abs_diff(ym), tol);

    let lhs = eval!(["o", "i0", "i1"]; ym => ["s", "i0", "i1"]; &t.psi => ["o", "s"]);
    let rhs = eval!(["o", "i0", "i1"]; &t.psi => ["a", "i0"]; &t.psi => ["b", "i1"]; gm => ["o", "a", "b"]);
    r.record("yellow-green/character-homomorphism", lhs.max_abs_diff(&rhs), tol);

    let unit = eval!(["o"]; &t.yellow_green_unit => ["s"]; &t.psi => ["o", "s"]);
    r.record("yellow-green/character-unit", unit.max_abs_diff(&t.green_unit), tol);
}

fn unitarity(t: &Tensor, row_legs: usize) -> f64 {
    t.to_matrix(row_legs).unitarity_residual().unwrap_or(f64::INFINITY)
}

pub fn verify_field_equations(t: &StructureTensors, tol: f64) -> Report {
    let (y, red, black) = (&t.yellow_mult, &t.red_mult, &t.black_mult);
    let bc = black.conj();
    let mut r = Report::default();

    // a(b + c) = ab + ac with a copied
    let lhs = eval!(["o", "a", "b", "c"]; red => ["s", "b", "c"]; y => ["o", "a", "s"]);
    let rhs = eval!(["o", "a", "b", "c"];
        &bc => ["a", "a1", "a2"]; y => ["u", "a1", "b"]; y => ["v", "a2", "c"]; red => ["o", "u", "v"]);
    r.record("field/left-distributivity", lhs.max_abs_diff(&rhs), tol);

    // (b + c)a = ba + ca
    let lhs = eval!(["o", "b", "c", "a"]; red => ["s", "b", "c"]; y => ["o", "s", "a"]);
    let rhs = eval!(["o", "b", "c", "a"];
        &bc => ["a", "a1", "a2"]; y => ["u", "b", "a1"]; y => ["v", "c", "a2"]; red => ["o", "u", "v"]);
    r.record("field/right-distributivity", lhs.max_abs_diff(&rhs), tol);

    // ⟨1|χ(i·k) with k bent round by a black cup gives χ_o(i)
    let e1 = t.yellow_unit.conj();
    let lhs = eval!(["o", "i"];
        &t.black_unit => ["u"]; &bc => ["u", "k", "o"];
        y => ["s", "i", "k"]; &t.chi => ["c", "s"]; &e1 => ["c"]);
    r.record("field/character-product", lhs.max_abs_diff(&t.chi), tol);

    let p_iota = eval!(["o", "i"]; &t.iota => ["s", "i"]; &t.p => ["o", "s"]);
    r.record("field/p-iota", p_iota.max_abs_diff(&t.green_id()), tol);

    let p_unit = eval!(["o"]; &t.black_unit => ["s"]; &t.p => ["o", "s"]);
    r.record("field/p-black-unit", p_unit.max_abs_diff(&t.green_unit), tol);

    let restricted = eval!(["o", "a", "b"];
        &t.iota => ["x", "a"]; &t.iota => ["y", "b"]; black => ["s", "x", "y"]; &t.p => ["o", "s"]);
    r.record("field/p-black-product", restricted.max_abs_diff(&t.green_mult), tol);

    let lifted = eval!(["o", "a", "b"];
        &t.p => ["x", "a"]; &t.p => ["y", "b"]; &t.green_mult => ["s", "x", "y"]; &t.iota => ["o", "s"]);
    let e0 = &t.red_unit;
    let corner = eval!(["o", "a", "b"]; e0 => ["o"]; e0 => ["a"]; e0 => ["b"]);
    r.record("field/iota-green-product", lifted.max_abs_diff(&black.sub(&corner)), tol);

    let iota_p = eval!(["o", "i"]; &t.p => ["s", "i"]; &t.iota => ["o", "s"]);
    let explicit = t.black_id().sub(&eval!(["o", "i"]; e0 => ["o"]; e0 => ["i"]));
    r.record("field/iota-p-projector", iota_p.max_abs_diff(&t.proj).max(iota_p.max_abs_diff(&explicit)), tol);

    let killed = eval!(["o"]; e0 => ["s"]; &t.proj => ["o", "s"]);
    r.record("field/projector-zero", killed.max_abs(), tol);

    let mut fixed: f64 = 0.0;
    for n in 1..t.d {
        let en = Tensor::indicator(&[t.d], |i| i[0] == n);
        let image = eval!(["o"]; &en => ["s"]; &t.proj => ["o", "s"]);
        fixed = fixed.max(image.max_abs_diff(&en));
    }
    r.record("field/projector-nonzero", fixed, tol);

    r.record("field/yellow-assembly", t.yellow_mult.max_abs_diff(&t.yellow_table), tol);
    r
}

/// Lemmas about controlled Hadamards and nested sums and products. Every
/// member of `h` must be a Hadamard of order d and there must be d of them.
pub fn verify_hadamard_sum_lemmas(t: &StructureTensors, h: &ControlledHadamard, tol: f64) -> Result<Report> {
    let d = t.d;
    if h.control_dim() != d || h.dimension() != d {
        return Err(Error::ShapeMismatch(format!(
            "controlled Hadamard with {} members of order {}, expected {d} of order {d}",
            h.control_dim(),
            h.dimension()
        )));
    }
    for (x, m) in h.members().iter().enumerate() {
        if !is_hadamard(m, tol)? {
            return Err(Error::NotControlledHadamard(x));
        }
    }
    let (y, red) = (&t.yellow_mult, &t.red_mult);
    let bc = t.black_mult.conj();
    let mut r = Report::default();

    // Σ_x |x⟩⟨x| ⊗ proj∘H^x∘(Σ_a |a⟩)
    let controlled =
        Tensor::from_fn(&[d, d, d, d], |i| if i[0] == i[2] { h.member(i[0])[(i[1], i[3])] } else { real(0.0) });
    let zero = eval!(["xo", "j", "xi"];
        &controlled => ["xo", "s", "xi", "a"]; &t.black_unit => ["a"]; &t.proj => ["j", "s"]);
    r.record("hadamard-sums/controlled-hadamard-sum", zero.max_abs(), tol);

    // (i0 + i2·i3) + i1·i3 = (i0 + i1·i3) + i2·i3
    let lhs = eval!(["o", "i0", "i1", "i2", "i3"];
        &bc => ["i3", "e1", "e2"];
        y => ["y1", "i2", "e1"]; red => ["r", "i0", "y1"];
        y => ["y2", "i1", "e2"]; red => ["o", "r", "y2"]);
    let rhs = eval!(["o", "i0", "i1", "i2", "i3"];
        &bc => ["i3", "e1", "e2"];
        y => ["y1", "i1", "e1"]; red => ["r", "i0", "y1"];
        y => ["y2", "i2", "e2"]; red => ["o", "r", "y2"]);
    r.record("hadamard-sums/sum-reordering", lhs.max_abs_diff(&rhs), tol);

    // a·c + b·(a + c·e) = a·b + (a + b·e)·c
    let lhs = eval!(["o", "a", "b", "c", "e"];
        &bc => ["a", "a1", "a2"]; &bc => ["c", "c1", "c2"];
        y => ["ac", "a1", "c1"];
        y => ["ce", "c2", "e"]; red => ["s", "a2", "ce"]; y => ["bs", "b", "s"];
        red => ["o", "ac", "bs"]);
    let rhs = eval!(["o", "a", "b", "c", "e"];
        &bc => ["a", "a1", "a2"]; &bc => ["b", "b1", "b2"];
        y => ["ab", "a1", "b1"];
        y => ["be", "b2", "e"]; red => ["s", "a2", "be"]; y => ["sc", "s", "c"];
        red => ["o", "ab", "sc"]);
    r.record("hadamard-sums/product-exchange", lhs.max_abs_diff(&rhs), tol);

    let vanishing = eval!(["o"]; &t.red_unit => ["s"]; &t.p => ["o", "s"]);
    r.record("hadamard-sums/p-red-unit", vanishing.max_abs(), tol);

    let lhs = eval!(["o0", "o1", "i"]; &bc => ["i", "a", "b"]; &t.proj => ["o0", "a"]; &t.proj => ["o1", "b"]);
    let rhs = eval!(["o0", "o1", "i"]; &t.proj => ["s", "i"]; &bc => ["s", "o0", "o1"]);
    r.record("hadamard-sums/projector-copy", lhs.max_abs_diff(&rhs), tol);
    Ok(r)
}

/// Every check above, with H^x = χ for the Hadamard-sum lemmas.
pub fn verify_all(t: &StructureTensors, tol: f64) -> Result<Report> {
    let mut r = Report::default();
    for alg in Algebra::ALL {
        r.extend(verify_frobenius(t, alg, tol));
    }
    r.extend(verify_bialgebra_and_complementarity(t, Pair::RedBlack, tol));
    r.extend(verify_bialgebra_and_complementarity(t, Pair::YellowBlack, tol));
    r.extend(verify_field_equations(t, tol));
    let chi = t.chi.to_matrix(1);
    let h = ControlledHadamard::new(vec![chi; t.d])?;
    r.extend(verify_hadamard_sum_lemmas(t, &h, tol)?);
    Ok(r)
}

/// χ as a plain matrix, for callers that need it outside the tensor view.
pub fn character_matrix(t: &StructureTensors) -> CMatrix {
    t.chi.to_matrix(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FiniteField;

    fn tensors(p: usize, n: usize) -> StructureTensors {
        build_structure_tensors(&FiniteField::new(p, n, None).unwrap())
    }

    #[test]
    fn gf4_black_is_exact() {
        let r = verify_frobenius(&tensors(2, 2), Algebra::Black, 1e-12);
        assert!(r.passed());
        assert_eq!(r.max_residual(), 0.0);
    }

    #[test]
    fn gf4_red_quasi_special() {
        let t = tensors(2, 2);
        let rc = t.red_mult.conj();
        let loop_ = eval!(["o", "i"]; &rc => ["i", "a", "b"]; &t.red_mult => ["o", "a", "b"]);
        assert_eq!(loop_, Tensor::identity(4).scale(real(4.0)));
    }

    #[test]
    fn small_fields_pass_everything() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let r = verify_all(&tensors(p, n), 1e-10).unwrap();
            let failed: Vec<_> = r.failures().collect();
            assert!(failed.is_empty(), "GF({p}^{n}): {failed:?}");
        }
    }

    #[test]
    fn ring_control_breaks_multiplicative_laws_only() {
        let r = verify_all(&StructureTensors::integers_mod(4), 1e-10).unwrap();
        assert!(r.failures_in("yellow-green").count() > 0);
        for cat in ["black", "red", "red-black"] {
            assert_eq!(r.failures_in(cat).count(), 0, "{cat}");
        }
    }

    #[test]
    fn prime_modulus_tables_with_field_characters_pass() {
        let f = FiniteField::new(5, 1, None).unwrap();
        let chi = crate::characters::additive_character_matrix(&f).into_matrix();
        let psi = crate::characters::multiplicative_character_matrix(&f).into_matrix();
        let t = StructureTensors::from_tables(5, |a, b| (a + b) % 5, |a, b| (a * b) % 5, &chi, &psi);
        let r = verify_all(&t, 1e-10).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn hadamard_sums_reject_non_hadamard() {
        let t = tensors(3, 1);
        let h = ControlledHadamard::new(vec![CMatrix::identity(3); 3]).unwrap();
        assert_eq!(verify_hadamard_sum_lemmas(&t, &h, 1e-9), Err(Error::NotControlledHadamard(0)));
    }

    #[test]
    fn character_product_on_gf4_by_hand() {
        let f = FiniteField::new(2, 2, None).unwrap();
        let t = build_structure_tensors(&f);
        let chi = character_matrix(&t);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(chi[(a, b)], chi[(1, f.product(a, b))]);
            }
        }
    }
}
