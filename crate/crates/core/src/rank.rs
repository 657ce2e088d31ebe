//! `(a,b)_{q-1} = k - rank C^(a,b)` over `F_{q^r}`.
//!
//! `C^(a,b)` is the matrix of multiplication by `(X+1)^k - ω^{bk}` on
//! `F_{q^r}[X]/(X^k - ω^{ak})`: its kernel dimension is the number of common
//! roots of `X^k - ω^{ak}` and `(X+1)^k - ω^{bk}`.

use alloc::vec::Vec;

use crate::algebra::{linalg, FieldOps, PrimeField};
use crate::{CycloParams, Error, ExtensionContext, FieldElement, Result};

/// `binom(k, m) mod p` by Lucas' theorem: the product of digit binomials in
/// base `p`.
pub fn binom_mod_p(k: u128, m: u128, p: u32) -> Result<u32> {
    if m > k {
        return Err(Error::OutOfRange);
    }
    let field = PrimeField::new(p)?;
    let base = p as u128;
    let (mut k, mut m) = (k, m);
    let mut acc = 1u32;
    while m > 0 {
        let dk = (k % base) as u32;
        let dm = (m % base) as u32;
        if dm > dk {
            return Ok(0);
        }
        acc = field.mul(acc, small_binom(&field, dk, dm));
        k /= base;
        m /= base;
    }
    Ok(acc)
}

// binom(a, b) mod p for 0 <= b <= a < p
fn small_binom(field: &PrimeField, a: u32, b: u32) -> u32 {
    let b = b.min(a - b);
    let mut num = 1u32;
    let mut den = 1u32;
    for i in 0..b {
        num = field.mul(num, a - i);
        den = field.mul(den, i + 1);
    }
    field.mul(num, field.inv(den).expect("b < p"))
}

/// Dense `k x k` matrix over `F_{q^r}`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicMatrix {
    size: usize,
    entries: Vec<FieldElement>,
}

impl CyclotomicMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> FieldElement {
        self.entries[i * self.size + j]
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FieldElement]> {
        self.entries.chunks_exact(self.size)
    }

    /// Copy with rows permuted: row `i` of the result is row `perm[i]`.
    pub fn permute_rows(&self, perm: &[usize]) -> CyclotomicMatrix {
        assert_eq!(perm.len(), self.size);
        let mut entries = Vec::with_capacity(self.entries.len());
        for &src in perm {
            entries.extend_from_slice(&self.entries[src * self.size..(src + 1) * self.size]);
        }
        CyclotomicMatrix {
            size: self.size,
            entries,
        }
    }
}

/// Builds `C^(a,b)`: diagonal `1 + ω^{ak} - ω^{bk}`, `binom(k, j-i)` above and
/// `ω^{ak} binom(k, i-j)` below.
pub fn build_matrix(
    ctx: &ExtensionContext,
    params: CycloParams,
    rank_cap: u64,
) -> Result<CyclotomicMatrix> {
    let k = ctx.k();
    if k > rank_cap {
        return Err(Error::SizeCapExceeded {
            what: "matrix size k",
            size: k as u128,
            cap: rank_cap as u128,
        });
    }
    let size = k as usize;
    let u = ctx.omega_pow(params.a * k);
    let v = ctx.omega_pow(params.b * k);
    let diagonal = ctx.sub(ctx.add(ctx.one(), u), v);
    let binoms: Vec<FieldElement> = (0..k)
        .map(|m| binom_mod_p(k as u128, m as u128, ctx.p()).map(|c| ctx.from_int(c as u64)))
        .collect::<Result<_>>()?;
    let lower: Vec<FieldElement> = binoms.iter().map(|&c| ctx.mul(u, c)).collect();
    let mut entries = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            let entry = match i.cmp(&j) {
                core::cmp::Ordering::Equal => diagonal,
                core::cmp::Ordering::Less => binoms[j - i],
                core::cmp::Ordering::Greater => lower[i - j],
            };
            entries.push(entry);
        }
    }
    Ok(CyclotomicMatrix { size, entries })
}

/// Rank over `F_{q^r}` by Gaussian elimination.
pub fn rank_ffield(ctx: &ExtensionContext, matrix: &CyclotomicMatrix) -> usize {
    linalg::rank(ctx, &matrix.entries, matrix.size)
}

pub fn cyclotomic_by_rank(
    ctx: &ExtensionContext,
    params: CycloParams,
    rank_cap: u64,
) -> Result<u64> {
    let matrix = build_matrix(ctx, params, rank_cap)?;
    let rank = rank_ffield(ctx, &matrix) as u64;
    debug_assert!(rank <= ctx.k());
    Ok(ctx.k() - rank)
}
