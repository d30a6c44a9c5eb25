//! Dense polynomials over the prime field F_p, coefficients stored low-degree-first.
//!
//! Only what irreducibility testing and table construction need: reduction,
//! modular multiplication and exponentiation, and gcd.

pub(crate) type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) is the inverse
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Remainder of `a` modulo `m`; `m` must be nonzero.
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let dm = degree(m).expect("division by zero polynomial");
    let lead_inv = inv_mod(m[dm], p);
    let mut r: Poly = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = r[dr] * lead_inv % p;
        let shift = dr - dm;
        for (k, &c) in m.iter().enumerate().take(dm + 1) {
            let sub = factor * c % p;
            r[shift + k] = (r[shift + k] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub(crate) fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|k| {
            let x = a.get(k).copied().unwrap_or(0);
            let y = b.get(k).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while degree(&y).is_some() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// `x^(p^k) mod m` by repeated p-th powering.
pub(crate) fn frobenius_power_of_x(k: usize, m: &[u64], p: u64) -> Poly {
    let mut acc = rem(&[0, 1], m, p);
    for _ in 0..k {
        acc = powmod(&acc, p, m, p);
    }
    acc
}

pub(crate) fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Poly {
    let mut result = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn distinct_prime_factors(n: usize) -> Vec<usize> {
    prime_factors(n)
}

/// Trial division by every monic polynomial of degree 1..=n/2.
pub(crate) fn is_irreducible_exhaustive(f: &[u64], p: u64) -> bool {
    let n = match degree(f) {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    for deg in 1..=n / 2 {
        let count = (p as usize).pow(deg as u32);
        for low in 0..count {
            let mut g = Vec::with_capacity(deg + 1);
            let mut rest = low;
            for _ in 0..deg {
                g.push((rest % p as usize) as u64);
                rest /= p as usize;
            }
            g.push(1);
            if degree(&rem(f, &g, p)).is_none() {
                return false;
            }
        }
    }
    true
}

/// Rabin's test: f of degree n is irreducible iff x^(p^n) = x mod f and
/// gcd(x^(p^(n/q)) - x, f) = 1 for every prime q dividing n.
pub(crate) fn is_irreducible_rabin(f: &[u64], p: u64) -> bool {
    let n = match degree(f) {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    let x = rem(&[0, 1], f, p);
    for q in prime_factors(n) {
        let h = sub(&frobenius_power_of_x(n / q, f, p), &x, p);
        let g = gcd(f, &h, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    let full = sub(&frobenius_power_of_x(n, f, p), &x, p);
    degree(&full).is_none()
}
