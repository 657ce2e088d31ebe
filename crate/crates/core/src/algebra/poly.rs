//! Dense univariate polynomials over a [`FieldOps`] field.
//!
//! Coefficients are stored constant term first. Every function returns a
//! trimmed vector (no trailing zeros); the zero polynomial is the empty vector.

use alloc::vec;
use alloc::vec::Vec;

use super::{prime_factors, FieldOps};

pub fn trim<F: FieldOps>(field: &F, f: &mut Vec<F::Elem>) {
    while let Some(&last) = f.last() {
        if field.is_zero(last) {
            f.pop();
        } else {
            break;
        }
    }
}

pub fn degree<F: FieldOps>(field: &F, f: &[F::Elem]) -> Option<usize> {
    f.iter().rposition(|&c| !field.is_zero(c))
}

pub fn eval<F: FieldOps>(field: &F, f: &[F::Elem], x: F::Elem) -> F::Elem {
    f.iter()
        .rev()
        .fold(field.zero(), |acc, &c| field.add(field.mul(acc, x), c))
}

pub fn sub<F: FieldOps>(field: &F, f: &[F::Elem], g: &[F::Elem]) -> Vec<F::Elem> {
    let len = f.len().max(g.len());
    let mut out: Vec<F::Elem> = (0..len)
        .map(|i| {
            let a = f.get(i).copied().unwrap_or(field.zero());
            let b = g.get(i).copied().unwrap_or(field.zero());
            field.sub(a, b)
        })
        .collect();
    trim(field, &mut out);
    out
}

pub fn mul<F: FieldOps>(field: &F, f: &[F::Elem], g: &[F::Elem]) -> Vec<F::Elem> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if field.is_zero(a) {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(a, b));
        }
    }
    trim(field, &mut out);
    out
}

/// Remainder of `f` modulo the nonzero polynomial `m`.
pub fn rem<F: FieldOps>(field: &F, f: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    let dm = degree(field, m).expect("division by the zero polynomial");
    let lead_inv = field
        .inv(m[dm])
        .expect("leading coefficient of a trimmed polynomial is nonzero");
    let mut r = f.to_vec();
    trim(field, &mut r);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = field.mul(r[top], lead_inv);
        let shift = top - dm;
        for (i, &mc) in m[..=dm].iter().enumerate() {
            r[shift + i] = field.sub(r[shift + i], field.mul(c, mc));
        }
        trim(field, &mut r);
    }
    r
}

pub fn mul_mod<F: FieldOps>(
    field: &F,
    f: &[F::Elem],
    g: &[F::Elem],
    m: &[F::Elem],
) -> Vec<F::Elem> {
    rem(field, &mul(field, f, g), m)
}

/// `base^exp mod m` by square-and-multiply.
pub fn pow_mod<F: FieldOps>(
    field: &F,
    base: &[F::Elem],
    mut exp: u64,
    m: &[F::Elem],
) -> Vec<F::Elem> {
    let mut acc = rem(field, &[field.one()], m);
    let mut b = rem(field, base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(field, &acc, &b, m);
        }
        exp >>= 1;
        if exp > 0 {
            b = mul_mod(field, &b, &b, m);
        }
    }
    acc
}

/// Monic greatest common divisor.
pub fn gcd<F: FieldOps>(field: &F, f: &[F::Elem], g: &[F::Elem]) -> Vec<F::Elem> {
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    trim(field, &mut a);
    trim(field, &mut b);
    while !b.is_empty() {
        let r = rem(field, &a, &b);
        a = b;
        b = r;
    }
    make_monic(field, &mut a);
    a
}

pub fn make_monic<F: FieldOps>(field: &F, f: &mut [F::Elem]) {
    if let Some(&lead) = f.last() {
        let inv = field.inv(lead).expect("trimmed leading coefficient");
        for c in f.iter_mut() {
            *c = field.mul(*c, inv);
        }
    }
}

/// `X^(s^i) mod f` for `i = 1..=count`, where `s` is the size of the
/// coefficient field. Each step raises the previous residue to the `s`-th
/// power by binary exponentiation.
pub fn frobenius_chain<F: FieldOps>(
    field: &F,
    f: &[F::Elem],
    field_size: u64,
    count: usize,
) -> Vec<Vec<F::Elem>> {
    let x = [field.zero(), field.one()];
    let mut h = rem(field, &x, f);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        h = pow_mod(field, &h, field_size, f);
        out.push(h.clone());
    }
    out
}

/// Rabin's irreducibility test for a monic `f` of degree `d >= 1` over a
/// field of `field_size` elements: `X^(s^d) = X mod f` and
/// `gcd(X^(s^(d/l)) - X, f) = 1` for each prime `l | d`.
pub fn is_irreducible<F: FieldOps>(field: &F, f: &[F::Elem], field_size: u64) -> bool {
    let d = match degree(field, f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if d == 1 {
        return true;
    }
    let chain = frobenius_chain(field, f, field_size, d);
    let x = rem(field, &[field.zero(), field.one()], f);
    if chain[d - 1] != x {
        return false;
    }
    for l in prime_factors(d as u64) {
        let i = d / l as usize;
        let g = gcd(field, &sub(field, &chain[i - 1], &x), f);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;

    fn has_root(field: &PrimeField, f: &[u32]) -> bool {
        (0..field.modulus()).any(|x| eval(field, f, x) == 0)
    }

    #[test]
    fn quadratics_and_cubics_match_root_test() {
        // degree <= 3: irreducible iff no root
        for p in [2u32, 3, 5, 7] {
            let field = PrimeField::new(p).unwrap();
            for d in [2usize, 3] {
                let total = (p as usize).pow(d as u32);
                for idx in 0..total {
                    let mut f: Vec<u32> = (0..d)
                        .map(|i| (idx / (p as usize).pow(i as u32)) as u32 % p)
                        .collect();
                    f.push(1);
                    assert_eq!(
                        is_irreducible(&field, &f, p as u64),
                        !has_root(&field, &f),
                        "{:?} over F_{}",
                        f,
                        p
                    );
                }
            }
        }
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree 4 over F_2 is 3, degree 6 is 9
        let field = PrimeField::new(2).unwrap();
        for (d, expected) in [(4usize, 3usize), (6, 9)] {
            let count = (0..1usize << d)
                .filter(|&idx| {
                    let mut f: Vec<u32> = (0..d).map(|i| ((idx >> i) & 1) as u32).collect();
                    f.push(1);
                    is_irreducible(&field, &f, 2)
                })
                .count();
            assert_eq!(count, expected);
        }
    }

    #[test]
    fn gcd_is_monic() {
        let field = PrimeField::new(5).unwrap();
        // (X+1)(X+2) and (X+1)(X+3)
        let f = mul(&field, &[1, 1], &[2, 1]);
        let g = mul(&field, &[1, 1], &[3, 1]);
        assert_eq!(gcd(&field, &f, &g), [1, 1]);
        assert_eq!(gcd(&field, &[2, 2], &[]), [1, 1]);
    }
}
