//! Finite fields `F_q`, `q = p^m`, for odd primes `p`.
//!
//! Elements are stored as a packed base-`p` integer: the coefficient vector
//! `[c_0, ..., c_{m-1}]` of `c_0 + c_1 t + ... + c_{m-1} t^{m-1}` in the
//! polynomial basis is the number `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`.
//! This keeps elements `Copy`, ordered and hashable; all arithmetic goes
//! through the owning [`Fq`].

use std::fmt;

use crate::error::{Error, Result};

/// Largest field for which log/antilog tables are built.
const TABLE_LIMIT: u64 = 1 << 20;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqElem(u64);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Packed base-`p` index in `[0, q)`.
    pub fn index(self) -> u64 {
        self.0
    }
}

struct Tables {
    /// `exp[i] = g^i` for `0 <= i < q - 1`.
    exp: Vec<u64>,
    /// `log[x]` for `x != 0`.
    log: Vec<u32>,
}

/// The field `F_p[t]/(modulus)`.
pub struct Fq {
    p: u64,
    m: u32,
    q: u64,
    /// Monic modulus, little-endian, length `m + 1`.
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fq")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Fq {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---- dense polynomials over F_p (little-endian, trimmed) ----

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm], p - 2, p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mc) in m.iter().enumerate() {
            let t = c * mc % p;
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
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
    trim(&mut out);
    out
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    poly_rem(&poly_mul(a, b, p), m, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Ben-Or irreducibility test for a monic polynomial over `F_p`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    // h = t^(p^i) mod f, iterated
    let mut h = vec![0, 1];
    for _ in 1..=deg / 2 {
        // h <- h^p mod f
        let mut acc = vec![1u64];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, f, p);
            }
            base = poly_mulmod(&base, &base, f, p);
            e >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        let g = poly_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl Fq {
    /// Builds `F_{p^m}` with the smallest monic irreducible modulus of degree
    /// `m`, where monic polynomials are ordered by their packed base-`p`
    /// index of the lower coefficients `c_0 + c_1 p + ...`.
    pub fn new(p: u64, m: u32) -> Result<Fq> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidDegree);
        }
        if p >= 1 << 31 {
            return Err(Error::FieldTooLarge { p, m });
        }
        let q = (0..m)
            .try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|v| *v < 1 << 62))
            .ok_or(Error::FieldTooLarge { p, m })?;
        let modulus = Self::smallest_irreducible(p, m as usize);
        let mut fq = Fq { p, m, q, modulus, tables: None };
        if q <= TABLE_LIMIT {
            fq.tables = Some(fq.build_tables());
        }
        Ok(fq)
    }

    fn smallest_irreducible(p: u64, m: usize) -> Vec<u64> {
        let mut lower = vec![0u64; m];
        loop {
            let mut f = lower.clone();
            f.push(1);
            if is_irreducible(&f, p) {
                return f;
            }
            // increment little-endian base-p counter
            for c in lower.iter_mut() {
                *c += 1;
                if *c < p {
                    break;
                }
                *c = 0;
            }
        }
    }

    fn build_tables(&self) -> Tables {
        let order = self.q - 1;
        let factors = prime_factors(order);
        let g = (1..self.q)
            .map(FqElem)
            .find(|&g| factors.iter().all(|&r| self.pow_slow(g, order / r) != FqElem::ONE))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut x = FqElem::ONE;
        for i in 0..order {
            exp.push(x.0);
            log[x.0 as usize] = i as u32;
            x = self.mul_slow(x, g);
        }
        Tables { exp, log }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn coeffs(&self, x: FqElem) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.m as usize);
        let mut n = x.0;
        for _ in 0..self.m {
            v.push(n % self.p);
            n /= self.p;
        }
        v
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FqElem> {
        if coeffs.len() > self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::BadCoefficients(coeffs.to_vec()));
        }
        Ok(FqElem(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)))
    }

    /// Element by packed index; `None` outside `[0, q)`.
    pub fn element(&self, index: u64) -> Option<FqElem> {
        (index < self.q).then_some(FqElem(index))
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p as i64) as u64)
    }

    /// Returns the integer value if `x` lies in the prime subfield.
    pub fn as_prime_subfield(&self, x: FqElem) -> Option<u64> {
        (x.0 < self.p).then_some(x.0)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem)
    }

    pub fn add(&self, x: FqElem, y: FqElem) -> FqElem {
        if self.m == 1 {
            return FqElem((x.0 + y.0) % self.p);
        }
        let (mut a, mut b, mut out, mut place) = (x.0, y.0, 0u64, 1u64);
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        FqElem(out)
    }

    pub fn neg(&self, x: FqElem) -> FqElem {
        if self.m == 1 {
            return FqElem((self.p - x.0) % self.p);
        }
        let (mut a, mut out, mut place) = (x.0, 0u64, 1u64);
        for _ in 0..self.m {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        FqElem(out)
    }

    pub fn sub(&self, x: FqElem, y: FqElem) -> FqElem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FqElem, y: FqElem) -> FqElem {
        if x.is_zero() || y.is_zero() {
            return FqElem::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let k = (t.log[x.0 as usize] as u64 + t.log[y.0 as usize] as u64) % (self.q - 1);
                FqElem(t.exp[k as usize])
            }
            None => self.mul_slow(x, y),
        }
    }

    fn mul_slow(&self, x: FqElem, y: FqElem) -> FqElem {
        if self.m == 1 {
            return FqElem(x.0 * y.0 % self.p);
        }
        let r = poly_mulmod(&self.coeffs(x), &self.coeffs(y), &self.modulus, self.p);
        FqElem(r.iter().rev().fold(0, |acc, &c| acc * self.p + c))
    }

    fn pow_slow(&self, x: FqElem, mut e: u64) -> FqElem {
        let mut r = FqElem::ONE;
        let mut b = x;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_slow(r, b);
            }
            b = self.mul_slow(b, b);
            e >>= 1;
        }
        r
    }

    /// `x^e` with the convention `0^0 = 1`.
    pub fn pow(&self, x: FqElem, e: u64) -> FqElem {
        if e == 0 {
            return FqElem::ONE;
        }
        if x.is_zero() {
            return FqElem::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let order = (self.q - 1) as u128;
                let k = (t.log[x.0 as usize] as u128 * (e as u128 % order)) % order;
                FqElem(t.exp[k as usize])
            }
            None => self.pow_slow(x, e),
        }
    }

    /// `x^n` for a signed exponent; `None` for `0^(negative)`.
    pub fn pow_signed(&self, x: FqElem, n: i64) -> Option<FqElem> {
        if n >= 0 {
            Some(self.pow(x, n as u64))
        } else {
            self.inv(x).ok().map(|i| self.pow(i, n.unsigned_abs()))
        }
    }

    pub fn inv(&self, x: FqElem) -> Result<FqElem> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(x, self.q - 2))
    }

    pub fn div(&self, x: FqElem, y: FqElem) -> Result<FqElem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^(p^n)`.
    pub fn frobenius(&self, x: FqElem, n: u32) -> FqElem {
        let n = n % self.m;
        let mut r = x;
        for _ in 0..n {
            r = self.pow(r, self.p);
        }
        r
    }

    /// The unique `y` with `y^p = x`, namely `x^(p^(m-1))`.
    pub fn pth_root(&self, x: FqElem) -> FqElem {
        self.frobenius(x, self.m - 1)
    }

    /// `y` with `y^(p^n) = x`.
    pub fn pth_root_iter(&self, x: FqElem, n: u32) -> FqElem {
        let back = (self.m - n % self.m) % self.m;
        self.frobenius(x, back)
    }

    /// `x + x^p + ... + x^(p^(m-1))`, an element of `F_p`.
    pub fn absolute_trace(&self, x: FqElem) -> u64 {
        let mut acc = FqElem::ZERO;
        let mut y = x;
        for _ in 0..self.m {
            acc = self.add(acc, y);
            y = self.pow(y, self.p);
        }
        debug_assert!(acc.0 < self.p);
        acc.0
    }

    /// Serialized form: little-endian coefficient list, e.g. `[1,2]`.
    pub fn to_json_string(&self, x: FqElem) -> String {
        let cs: Vec<String> = self.coeffs(x).iter().map(|c| c.to_string()).collect();
        format!("[{}]", cs.join(","))
    }
}
