//! Small finite fields `F_{p^k}` with at most 4096 elements.
//!
//! Elements are `u16` indices: the base-`p` digits of an index are the
//! coefficients of a polynomial in a primitive element `α`, lowest degree
//! first. `0` and `1` are the field's zero and one. Multiplication goes through
//! discrete-log tables built from a primitive polynomial found by search.

use crate::error::{Error, Result};

pub type Fe = u16;

pub const MAX_FIELD_SIZE: usize = 4096;

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u16,
    k: u32,
    size: usize,
    /// `exp[i] = α^i` for `i < size - 1`.
    exp: Vec<Fe>,
    /// `log[x]` for `x != 0`.
    log: Vec<u16>,
    /// Coefficients `c_0..c_{k-1}` of the primitive polynomial
    /// `x^k + c_{k-1} x^{k-1} + ... + c_0`.
    modulus: Vec<u16>,
    add_table: Option<Vec<Fe>>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

fn is_prime(p: u16) -> bool {
    p >= 2
        && (2..p)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

impl FiniteField {
    pub fn new(p: u16, k: u32) -> Result<FiniteField> {
        if !is_prime(p) || k == 0 {
            return Err(Error::Flag(format!("no field of order {p}^{k}")));
        }
        let size = (p as usize)
            .checked_pow(k)
            .filter(|&s| s <= MAX_FIELD_SIZE)
            .ok_or_else(|| {
                Error::Flag(format!("field {p}^{k} exceeds {MAX_FIELD_SIZE} elements"))
            })?;
        let (modulus, exp) = find_primitive(p, k as usize, size)
            .ok_or_else(|| Error::Defect(format!("no primitive polynomial for {p}^{k}")))?;
        let mut log = vec![0u16; size];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u16;
        }
        let mut field = FiniteField {
            p,
            k,
            size,
            exp,
            log,
            modulus,
            add_table: None,
        };
        if size <= 256 {
            let mut table = vec![0; size * size];
            for a in 0..size {
                for b in 0..size {
                    table[a * size + b] = field.add_digits(a as Fe, b as Fe);
                }
            }
            field.add_table = Some(table);
        }
        Ok(field)
    }

    /// Field of order `q`, which must be a prime power.
    pub fn with_order(q: usize) -> Result<FiniteField> {
        let (p, k) =
            prime_power(q).ok_or_else(|| Error::Flag(format!("{q} is not a prime power")))?;
        FiniteField::new(p, k)
    }

    pub fn characteristic(&self) -> u16 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.size as Fe
    }

    fn add_digits(&self, mut a: Fe, mut b: Fe) -> Fe {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        match &self.add_table {
            Some(t) => t[a as usize * self.size + b as usize],
            None => self.add_digits(a, b),
        }
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let (mut a, mut out, mut place) = (a, 0, 1);
        for _ in 0..self.k {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.size - 1;
        self.exp[(self.log[a as usize] as usize + self.log[b as usize] as usize) % n]
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a == 0 {
            return None;
        }
        let n = self.size - 1;
        Some(self.exp[(n - self.log[a as usize] as usize) % n])
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.size - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p as u64)
    }

    /// The primitive element `α`.
    pub fn generator(&self) -> Fe {
        self.exp[1 % (self.size - 1)]
    }

    /// Elements fixed by `x ↦ x^q`, i.e. the subfield of order `q`.
    pub fn subfield(&self, q: usize) -> Vec<Fe> {
        self.elements()
            .filter(|&x| self.pow(x, q as u64) == x)
            .collect()
    }
}

pub fn prime_power(q: usize) -> Option<(u16, u32)> {
    if q < 2 || q > u16::MAX as usize {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p as u16, k))
}

/// Searches monic degree-`k` polynomials for one whose root generates the
/// multiplicative group; returns its low coefficients and the power table.
fn find_primitive(p: u16, k: usize, size: usize) -> Option<(Vec<u16>, Vec<Fe>)> {
    let p_us = p as usize;
    for code in 0..p_us.pow(k as u32) {
        let mut coeffs = vec![0u16; k];
        let mut c = code;
        for slot in coeffs.iter_mut() {
            *slot = (c % p_us) as u16;
            c /= p_us;
        }
        if coeffs[0] == 0 {
            continue;
        }
        // multiply by x modulo the polynomial, starting from 1
        let mut digits = vec![0u16; k];
        digits[0] = 1;
        let mut exp = Vec::with_capacity(size - 1);
        let mut seen = vec![false; size];
        let ok = loop {
            let idx = digits
                .iter()
                .rev()
                .fold(0usize, |acc, &d| acc * p_us + d as usize);
            if seen[idx] {
                break exp.len() == size - 1 && idx == 1;
            }
            seen[idx] = true;
            exp.push(idx as Fe);
            let top = digits[k - 1];
            for i in (1..k).rev() {
                digits[i] = digits[i - 1];
            }
            digits[0] = 0;
            // x^k ≡ -(c_{k-1} x^{k-1} + ... + c_0)
            for i in 0..k {
                let sub = (top as usize * coeffs[i] as usize) % p_us;
                digits[i] = ((digits[i] as usize + p_us - sub) % p_us) as u16;
            }
        };
        if ok {
            return Some((coeffs, exp));
        }
    }
    None
}
