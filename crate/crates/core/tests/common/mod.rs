//! Reference implementations used as oracles by the integration tests.
//! Nothing here calls into the library's arithmetic.

#![allow(dead_code)]

use mubueb::{CMatrix, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// GF(p^n) by schoolbook polynomial arithmetic on coefficient vectors.
pub struct NaiveField {
    pub p: usize,
    pub n: usize,
    /// Monic modulus, constant term first, length n+1.
    pub modulus: Vec<usize>,
}

impl NaiveField {
    pub fn new(p: usize, n: usize, modulus: Vec<usize>) -> Self {
        assert_eq!(modulus.len(), n + 1);
        NaiveField { p, n, modulus }
    }

    pub fn order(&self) -> usize {
        self.p.pow(self.n as u32)
    }

    pub fn to_poly(&self, mut a: usize) -> Vec<usize> {
        let mut v = vec![0; self.n];
        for c in v.iter_mut() {
            *c = a % self.p;
            a /= self.p;
        }
        v
    }

    pub fn poly_to_index(&self, v: &[usize]) -> usize {
        v.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.to_poly(a), self.to_poly(b));
        let s: Vec<usize> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.poly_to_index(&s)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.to_poly(a), self.to_poly(b));
        let mut prod = vec![0; 2 * self.n];
        for (i, u) in x.iter().enumerate() {
            for (j, v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        // reduce from the top: x^n = −(m_0 + … + m_{n−1} x^{n−1})
        for k in (self.n..2 * self.n).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (t, &m) in self.modulus[..self.n].iter().enumerate() {
                let idx = k - self.n + t;
                prod[idx] = (prod[idx] + self.p * self.p - c * m % self.p) % self.p;
            }
        }
        self.poly_to_index(&prod[..self.n])
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, _| self.mul(acc, a))
    }

    /// a + a^p + … + a^{p^{n−1}}, which lands in the prime field.
    pub fn trace(&self, a: usize) -> usize {
        let mut total = 0;
        let mut term = a;
        for _ in 0..self.n {
            total = self.add(total, term);
            term = self.pow(term, self.p);
        }
        assert!(total < self.p, "trace left the prime field");
        total
    }

    pub fn chi(&self) -> CMatrix {
        let d = self.order();
        CMatrix::from_fn(d, d, |i, a| {
            let t = self.trace(self.mul(i, a)) as f64;
            C64::from_polar(1.0, 2.0 * std::f64::consts::PI * t / self.p as f64)
        })
    }
}

/// Polynomial remainder over F_p, coefficients constant-first.
fn poly_rem(mut a: Vec<usize>, b: &[usize], p: usize) -> Vec<usize> {
    let db = b.len() - 1;
    let lead_inv = (1..p).find(|&x| x * b[db] % p == 1).unwrap();
    while a.len() > db {
        let top = *a.last().unwrap();
        if top != 0 {
            let f = top * lead_inv % p;
            let shift = a.len() - 1 - db;
            for (i, &c) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p * p - f * c % p) % p;
            }
        }
        a.pop();
    }
    a
}

/// Irreducibility by trial division against every monic polynomial of
/// degree 1..=n/2.
pub fn naive_irreducible(m: &[usize], p: usize) -> bool {
    let n = m.len() - 1;
    for deg in 1..=n / 2 {
        for low in 0..p.pow(deg as u32) {
            let mut f: Vec<usize> = (0..deg).map(|k| low / p.pow(k as u32) % p).collect();
            f.push(1);
            if poly_rem(m.to_vec(), &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree n, lower coefficients read as a
/// base-p number with the constant term least significant.
pub fn smallest_irreducible(p: usize, n: usize) -> Vec<usize> {
    for low in 0..p.pow(n as u32) {
        let mut m: Vec<usize> = (0..n).map(|k| low / p.pow(k as u32) % p).collect();
        m.push(1);
        if naive_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("an irreducible of every degree exists")
}

pub fn random_unitary(n: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<Vec<C64>> = Vec::new();
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        for u in &cols {
            let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= proj * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    CMatrix::from_columns(&cols).unwrap()
}

/// Fields used throughout the tests, as (p, n).
pub const SMALL_FIELDS: [(usize, usize); 7] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)];

/// Reference d = 4 operator table, M_{ij} = U_{x=i, a=j}. Three entries
/// (M_12, M_21, M_33) carry a spurious 1 at (2,3) and are not unitary.
pub fn golden_gf4_table() -> Vec<[[i32; 4]; 4]> {
    vec![
        // M_00 .. M_03
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
        [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]],
        [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]],
        // M_10 .. M_13
        [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
        [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]],
        [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 1], [0, -1, 0, 0]],
        [[0, 0, 0, -1], [0, 0, 1, 0], [0, -1, 0, 0], [1, 0, 0, 0]],
        // M_20 .. M_23
        [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
        [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 1], [0, 1, 0, 0]],
        [[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]],
        [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
        // M_30 .. M_33
        [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
        [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
        [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]],
        [[0, 0, 1, 0], [0, 0, 0, -1], [1, 0, 0, 1], [0, -1, 0, 0]],
    ]
}

/// Reference χ for d = 4.
pub const GOLDEN_GF4_CHI: [[i32; 4]; 4] = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, -1, 1], [1, -1, 1, -1]];

/// Converts a matrix with entries in {0, ±1} to integers, or None if any
/// entry is elsewhere.
pub fn to_integer_matrix(m: &CMatrix) -> Option<Vec<Vec<i32>>> {
    let mut out = Vec::new();
    for row in m.to_rows() {
        let mut r = Vec::new();
        for z in row {
            if z.im != 0.0 || !(z.re == 0.0 || z.re == 1.0 || z.re == -1.0) {
                return None;
            }
            r.push(z.re as i32);
        }
        out.push(r);
    }
    Some(out)
}

/// Whether an integer matrix is unitary: exactly one ±1 per row and column.
pub fn integer_unitary(m: &[[i32; 4]; 4]) -> bool {
    let rows_ok = m.iter().all(|r| r.iter().map(|x| x * x).sum::<i32>() == 1);
    let cols_ok = (0..4).all(|c| m.iter().map(|r| r[c] * r[c]).sum::<i32>() == 1);
    rows_ok && cols_ok
}
