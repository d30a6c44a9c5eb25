//! Arithmetic in GF(p^n).
//!
//! Elements are addressed by an index in `0..d`: the base-p digits of the
//! index, least significant first, are the coefficients of the element as a
//! polynomial in `x` modulo the field's irreducible modulus. Index 0 is the
//! additive identity and index 1 the multiplicative identity. Every other
//! module in the crate relies on this indexing.

mod poly;

use crate::error::{Error, Result};

pub(crate) use poly::distinct_prime_factors;

/// Largest supported field order.
pub const MAX_ORDER: usize = 1 << 16;

/// Immutable arithmetic context for one finite field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: usize,
    n: usize,
    d: usize,
    modulus: Vec<usize>,
    generator: usize,
    // exp[k] = g^k for k in 0..d-1
    exp: Vec<usize>,
    // log[a] = k with g^k = a; log[0] is unused
    log: Vec<usize>,
}

pub fn is_prime(p: usize) -> bool {
    if p < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= p {
        if p.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    if modulus.len() - 1 <= 4 {
        poly::is_irreducible_exhaustive(modulus, p)
    } else {
        poly::is_irreducible_rabin(modulus, p)
    }
}

impl FiniteField {
    /// Builds GF(p^n). Without an explicit modulus the lexicographically
    /// smallest monic irreducible polynomial is chosen, comparing the lower
    /// coefficients as a base-p integer with the constant term least
    /// significant.
    pub fn new(p: usize, n: usize, modulus: Option<&[usize]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidModulus("extension degree must be at least 1".into()));
        }
        let d = p.checked_pow(n as u32).filter(|&d| d <= MAX_ORDER).ok_or(Error::TooLarge { p, n })?;

        let modulus: Vec<u64> = match modulus {
            Some(m) => {
                if m.len() != n + 1 {
                    return Err(Error::InvalidModulus(format!("expected {} coefficients, got {}", n + 1, m.len())));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus(format!("coefficients must lie in 0..{p}")));
                }
                if m[n] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                let m: Vec<u64> = m.iter().map(|&c| c as u64).collect();
                if !is_irreducible(&m, p as u64) {
                    return Err(Error::ReduciblePolynomial { p });
                }
                m
            }
            None => (0..d)
                .map(|low| {
                    let mut m: Vec<u64> = digits_of(low, p, n).into_iter().map(|c| c as u64).collect();
                    m.push(1);
                    m
                })
                .find(|m| is_irreducible(m, p as u64))
                .expect("an irreducible polynomial of every degree exists"),
        };

        let mut field = FiniteField {
            p,
            n,
            d,
            modulus: modulus.iter().map(|&c| c as usize).collect(),
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    fn build_tables(&mut self) {
        let d = self.d;
        let order = d - 1;
        let factors = distinct_prime_factors(order);
        let generator = if d == 2 {
            1
        } else {
            (2..d)
                .find(|&g| factors.iter().all(|&q| self.slow_pow(g, order / q) != 1))
                .expect("the multiplicative group of a finite field is cyclic")
        };
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![0usize; d];
        let mut acc = 1usize;
        for k in 0..order {
            exp.push(acc);
            log[acc] = k;
            acc = self.slow_mul(acc, generator);
        }
        self.generator = generator;
        self.exp = exp;
        self.log = log;
    }

    fn to_poly(&self, a: usize) -> Vec<u64> {
        digits_of(a, self.p, self.n).into_iter().map(|c| c as u64).collect()
    }

    fn poly_to_index(&self, c: &[u64]) -> usize {
        c.iter().rev().fold(0, |acc, &x| acc * self.p + x as usize)
    }

    fn slow_mul(&self, a: usize, b: usize) -> usize {
        let m: Vec<u64> = self.modulus.iter().map(|&c| c as u64).collect();
        let prod = poly::mulmod(&self.to_poly(a), &self.to_poly(b), &m, self.p as u64);
        self.poly_to_index(&prod)
    }

    fn slow_pow(&self, a: usize, e: usize) -> usize {
        let m: Vec<u64> = self.modulus.iter().map(|&c| c as u64).collect();
        let r = poly::powmod(&self.to_poly(a), e as u64, &m, self.p as u64);
        self.poly_to_index(&r)
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Number of elements, p^n.
    pub fn order(&self) -> usize {
        self.d
    }

    /// Monic modulus, low-degree coefficient first.
    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    fn check(&self, a: usize) -> Result<()> {
        if a < self.d {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: a, order: self.d })
        }
    }

    /// Base-p digits of an element index, constant term first.
    pub fn digits(&self, a: usize) -> Result<Vec<usize>> {
        self.check(a)?;
        Ok(digits_of(a, self.p, self.n))
    }

    /// Element index of a coefficient vector (constant term first).
    pub fn index_of(&self, coeffs: &[usize]) -> Result<usize> {
        if coeffs.len() != self.n || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::ShapeMismatch(format!("expected {} coefficients in 0..{}", self.n, self.p)));
        }
        Ok(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c))
    }

    pub fn add(&self, a: usize, b: usize) -> Result<usize> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sum(a, b))
    }

    pub fn neg(&self, a: usize) -> Result<usize> {
        self.check(a)?;
        Ok(self.negate(a))
    }

    pub fn mul(&self, a: usize, b: usize) -> Result<usize> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.product(a, b))
    }

    pub fn inv(&self, a: usize) -> Result<usize> {
        self.check(a)?;
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.inverse(a))
    }

    /// `a^k` by square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, a: usize, k: u64) -> Result<usize> {
        self.check(a)?;
        Ok(self.power(a, k))
    }

    /// Absolute trace Tr(a) = a + a^p + ... + a^(p^(n-1)), returned as its
    /// digit in the prime subfield.
    pub fn trace(&self, a: usize) -> Result<usize> {
        self.check(a)?;
        Ok(self.trace_of(a))
    }

    /// Smallest generator of the multiplicative group (1 for GF(2)).
    pub fn primitive_element(&self) -> usize {
        self.generator
    }

    /// Discrete logarithm to the base of [`primitive_element`](Self::primitive_element).
    pub fn dlog(&self, a: usize) -> Result<usize> {
        self.check(a)?;
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.log[a])
    }

    /// `g^k` for the primitive element `g`.
    pub fn exp(&self, k: usize) -> usize {
        self.exp[k % (self.d - 1)]
    }

    // Unchecked arithmetic for callers that iterate over 0..d.

    pub(crate) fn sum(&self, mut a: usize, mut b: usize) -> usize {
        if self.p == 2 {
            return a ^ b;
        }
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub(crate) fn negate(&self, mut a: usize) -> usize {
        if self.p == 2 {
            return a;
        }
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub(crate) fn product(&self, a: usize, b: usize) -> usize {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (self.log[a] + self.log[b]) % (self.d - 1);
        self.exp[k]
    }

    pub(crate) fn inverse(&self, a: usize) -> usize {
        let order = self.d - 1;
        self.exp[(order - self.log[a]) % order]
    }

    pub(crate) fn power(&self, a: usize, k: u64) -> usize {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.d - 1) as u64;
        self.exp[((self.log[a] as u64 % order) * (k % order) % order) as usize]
    }

    pub(crate) fn trace_of(&self, a: usize) -> usize {
        let mut acc = 0;
        let mut term = a;
        for _ in 0..self.n {
            acc = self.sum(acc, term);
            term = self.power(term, self.p as u64);
        }
        debug_assert!(acc < self.p, "trace must lie in the prime subfield");
        acc
    }
}

fn digits_of(mut a: usize, p: usize, n: usize) -> Vec<usize> {
    (0..n)
        .map(|_| {
            let c = a % p;
            a /= p;
            c
        })
        .collect()
}

/// All prime powers p^n with p^n <= limit, in increasing order of order.
pub fn prime_powers_up_to(limit: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for p in 2..=limit {
        if !is_prime(p) {
            continue;
        }
        let mut q = p;
        let mut n = 1;
        while q <= limit {
            out.push((p, n));
            q *= p;
            n += 1;
        }
    }
    out.sort_by_key(|&(p, n)| p.pow(n as u32));
    out
}
