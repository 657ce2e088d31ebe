//! Field-generic helpers: polynomials, dense elimination and small integer
//! number theory.

use core::fmt::Debug;

use crate::{Error, Result};

pub mod linalg;
pub mod poly;

/// Arithmetic of a finite field whose elements are small `Copy` values.
pub trait FieldOps {
    type Elem: Copy + Eq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem;
    fn neg(&self, x: Self::Elem) -> Self::Elem;
    fn mul(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem;
    fn inv(&self, x: Self::Elem) -> Result<Self::Elem>;

    fn sub(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem {
        self.add(x, self.neg(y))
    }

    fn is_zero(&self, x: Self::Elem) -> bool {
        x == self.zero()
    }
}

/// `Z/pZ` with elements stored as reduced `u32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidParameters(alloc::format!(
                "{} is not prime",
                p
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn pow(&self, x: u32, mut e: u64) -> u32 {
        let p = self.p as u64;
        let mut base = x as u64 % p;
        let mut acc = 1u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u32
    }
}

impl FieldOps for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1 % self.p
    }

    fn add(&self, x: u32, y: u32) -> u32 {
        ((x as u64 + y as u64) % self.p as u64) as u32
    }

    fn neg(&self, x: u32) -> u32 {
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }

    fn mul(&self, x: u32, y: u32) -> u32 {
        ((x as u64 * y as u64) % self.p as u64) as u32
    }

    fn inv(&self, x: u32) -> Result<u32> {
        if x.is_multiple_of(self.p) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(x, self.p as u64 - 2))
    }
}

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

/// Distinct prime factors in increasing order, by trial division.
pub fn prime_factors(mut n: u64) -> alloc::vec::Vec<u64> {
    let mut out = alloc::vec::Vec::new();
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

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `base^exp` if it fits in a `u128`.
pub fn checked_pow(base: u64, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}
