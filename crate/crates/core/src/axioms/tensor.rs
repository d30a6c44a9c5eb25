use std::borrow::Cow;
use std::collections::HashMap;

use crate::cplx::{CMatrix, C64};

/// Dense complex array in row-major order. A linear map from k wires to m
/// wires is stored with its m output legs first, then its k input legs.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<C64>,
}

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

impl Tensor {
    pub fn zeros(shape: &[usize]) -> Self {
        let len = shape.iter().product();
        Tensor { shape: shape.to_vec(), data: vec![zero(); len] }
    }

    pub fn scalar(z: C64) -> Self {
        Tensor { shape: Vec::new(), data: vec![z] }
    }

    pub fn from_fn(shape: &[usize], f: impl Fn(&[usize]) -> C64) -> Self {
        let mut t = Tensor::zeros(shape);
        let mut idx = vec![0; shape.len()];
        for k in 0..t.data.len() {
            t.data[k] = f(&idx);
            increment(&mut idx, shape);
        }
        t
    }

    /// 0/1 tensor from a predicate on multi-indices.
    pub fn indicator(shape: &[usize], f: impl Fn(&[usize]) -> bool) -> Self {
        Tensor::from_fn(shape, |i| if f(i) { C64::new(1.0, 0.0) } else { zero() })
    }

    /// Legs [row, col].
    pub fn from_matrix(m: &CMatrix) -> Self {
        Tensor { shape: vec![m.rows(), m.cols()], data: m.as_slice().to_vec() }
    }

    /// Groups the first `row_legs` legs into the row index.
    pub fn to_matrix(&self, row_legs: usize) -> CMatrix {
        let rows: usize = self.shape[..row_legs].iter().product();
        let cols: usize = self.shape[row_legs..].iter().product();
        CMatrix::from_fn(rows, cols, |r, c| self.data[r * cols + c])
    }

    /// δ on two legs of dimension `dim`.
    pub fn identity(dim: usize) -> Self {
        Tensor::indicator(&[dim, dim], |i| i[0] == i[1])
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn get(&self, idx: &[usize]) -> C64 {
        self.data[self.offset(idx)]
    }

    fn offset(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.shape).fold(0, |acc, (&i, &n)| acc * n + i)
    }

    pub fn conj(&self) -> Self {
        Tensor { shape: self.shape.clone(), data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, z: C64) -> Self {
        Tensor { shape: self.shape.clone(), data: self.data.iter().map(|w| w * z).collect() }
    }

    pub fn add(&self, other: &Tensor) -> Self {
        assert_eq!(self.shape, other.shape, "tensor shapes differ");
        Tensor { shape: self.shape.clone(), data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Tensor) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    /// Largest entrywise distance; infinite when the shapes differ.
    pub fn max_abs_diff(&self, other: &Tensor) -> f64 {
        if self.shape != other.shape {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Reorders legs so that leg k of the result is leg `perm[k]` of self.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.shape.len());
        let shape: Vec<usize> = perm.iter().map(|&k| self.shape[k]).collect();
        let strides = strides(&self.shape);
        let src_strides: Vec<usize> = perm.iter().map(|&k| strides[k]).collect();
        let mut out = Tensor::zeros(&shape);
        let mut idx = vec![0; shape.len()];
        for k in 0..out.data.len() {
            let off: usize = idx.iter().zip(&src_strides).map(|(i, s)| i * s).sum();
            out.data[k] = self.data[off];
            increment(&mut idx, &shape);
        }
        out
    }
}

fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for k in (0..shape.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * shape[k + 1];
    }
    s
}

fn increment(idx: &mut [usize], shape: &[usize]) {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < shape[k] {
            return;
        }
        idx[k] = 0;
    }
}

/// Tensors with named legs. A label used twice is a wire to be summed over;
/// a label used once is a free leg of the result.
#[derive(Debug, Default)]
pub struct Network<'a> {
    nodes: Vec<(Cow<'a, Tensor>, Vec<String>)>,
}

impl<'a> Network<'a> {
    pub fn new() -> Self {
        Network { nodes: Vec::new() }
    }

    pub fn add(&mut self, t: &'a Tensor, labels: &[&str]) -> &mut Self {
        self.push(Cow::Borrowed(t), labels)
    }

    pub fn add_owned(&mut self, t: Tensor, labels: &[&str]) -> &mut Self {
        self.push(Cow::Owned(t), labels)
    }

    fn push(&mut self, t: Cow<'a, Tensor>, labels: &[&str]) -> &mut Self {
        assert_eq!(t.shape().len(), labels.len(), "rank {} tensor given labels {labels:?}", t.shape().len());
        self.nodes.push((t, labels.iter().map(|s| s.to_string()).collect()));
        self
    }

    /// Sums over every internal wire and returns the free legs in the order
    /// given by `outputs`. Panics on an ill-formed diagram.
    pub fn contract(&self, outputs: &[&str]) -> Tensor {
        let mut dims: HashMap<&str, (usize, usize)> = HashMap::new();
        for (t, labels) in &self.nodes {
            for (l, &n) in labels.iter().zip(t.shape()) {
                let e = dims.entry(l.as_str()).or_insert((n, 0));
                assert_eq!(e.0, n, "label {l} has inconsistent dimensions");
                e.1 += 1;
            }
        }
        let mut free: Vec<&str> = dims.iter().filter(|(_, v)| v.1 == 1).map(|(k, _)| *k).collect();
        free.sort_unstable();
        let mut wanted = outputs.to_vec();
        wanted.sort_unstable();
        assert_eq!(free, wanted, "free legs do not match the requested outputs");
        assert!(dims.values().all(|v| v.1 <= 2), "a label is used more than twice");

        let mut work: Vec<(Tensor, Vec<String>)> =
            self.nodes.iter().map(|(t, l)| (t.as_ref().clone(), l.clone())).collect();
        if work.is_empty() {
            return Tensor::scalar(C64::new(1.0, 0.0));
        }
        while work.len() > 1 {
            let (i, j) = cheapest_pair(&work);
            let (b, lb) = work.swap_remove(j.max(i));
            let (a, la) = work.swap_remove(j.min(i));
            work.push(pairwise(&a, &la, &b, &lb));
        }
        let (t, labels) = work.pop().expect("one tensor left");
        let perm: Vec<usize> =
            outputs.iter().map(|o| labels.iter().position(|l| l == o).expect("output present")).collect();
        t.permute(&perm)
    }
}

fn union_cost(a: &(Tensor, Vec<String>), b: &(Tensor, Vec<String>)) -> (bool, usize) {
    let mut cost: usize = a.0.data().len();
    let mut shared = false;
    for (l, &n) in b.1.iter().zip(b.0.shape()) {
        if a.1.contains(l) {
            shared = true;
        } else {
            cost = cost.saturating_mul(n);
        }
    }
    (shared, cost)
}

/// Connected pair with the smallest iteration space, or the smallest
/// outer product when nothing is connected.
fn cheapest_pair(work: &[(Tensor, Vec<String>)]) -> (usize, usize) {
    let mut best: Option<((bool, usize), (usize, usize))> = None;
    for i in 0..work.len() {
        for j in i + 1..work.len() {
            let (shared, cost) = union_cost(&work[i], &work[j]);
            let key = (!shared, cost);
            if best.is_none_or(|(k, _)| key < k) {
                best = Some((key, (i, j)));
            }
        }
    }
    best.expect("at least two tensors").1
}

fn pairwise(a: &Tensor, la: &[String], b: &Tensor, lb: &[String]) -> (Tensor, Vec<String>) {
    let sa = strides(a.shape());
    let sb = strides(b.shape());
    // iteration space: free legs of a, free legs of b, then shared legs
    let mut out_labels = Vec::new();
    let mut space = Vec::new();
    for (k, l) in la.iter().enumerate() {
        if !lb.contains(l) {
            out_labels.push(l.clone());
            space.push((a.shape()[k], sa[k], 0usize));
        }
    }
    for (k, l) in lb.iter().enumerate() {
        if !la.contains(l) {
            out_labels.push(l.clone());
            space.push((b.shape()[k], 0, sb[k]));
        }
    }
    let n_free = space.len();
    for (k, l) in la.iter().enumerate() {
        if let Some(m) = lb.iter().position(|x| x == l) {
            space.push((a.shape()[k], sa[k], sb[m]));
        }
    }
    let out_shape: Vec<usize> = space[..n_free].iter().map(|s| s.0).collect();
    let mut out = Tensor::zeros(&out_shape);
    let inner: usize = space[n_free..].iter().map(|s| s.0).product();
    let dims: Vec<usize> = space.iter().map(|s| s.0).collect();
    let mut idx = vec![0; space.len()];
    for slot in out.data.iter_mut() {
        let mut acc = zero();
        for _ in 0..inner {
            let (mut oa, mut ob) = (0, 0);
            for (i, s) in idx.iter().zip(&space) {
                oa += i * s.1;
                ob += i * s.2;
            }
            let x = a.data[oa];
            if x != zero() {
                acc += x * b.data[ob];
            }
            increment(&mut idx, &dims);
        }
        *slot = acc;
    }
    (out, out_labels)
}
