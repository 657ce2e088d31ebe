//! Brute-force ground truth for `(a,b)_{q-1}`.
//!
//! Two characterisations of the coset `C_a = ω^a <ω^e>` are counted
//! independently: by walking the coset explicitly and testing `x + 1` with
//! the discrete logarithm, and by testing the norm condition
//! `N(x) = ω^{ak}` on every unit of `F_{q^r}`.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, ExtensionContext, Result};

/// A cell `(a, b)` with `0 <= a, b <= q - 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycloParams {
    pub a: u64,
    pub b: u64,
}

impl CycloParams {
    pub fn new(ctx: &ExtensionContext, a: u64, b: u64) -> Result<Self> {
        let e = ctx.e();
        if a >= e || b >= e {
            return Err(Error::CellOutOfRange { a, b, e });
        }
        Ok(CycloParams { a, b })
    }

    /// Every cell of the context in row-major order.
    pub fn all(ctx: &ExtensionContext) -> impl Iterator<Item = CycloParams> {
        let e = ctx.e();
        (0..e).flat_map(move |a| (0..e).map(move |b| CycloParams { a, b }))
    }
}

/// Which brute-force characterisation produced a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableMethod {
    Coset,
    Norm,
}

/// All `(q-1)^2` values for one context; `values[a][b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloTable {
    pub p: u32,
    pub n: u32,
    pub r: u32,
    pub omega: Vec<u32>,
    pub method: TableMethod,
    pub values: Vec<Vec<u64>>,
}

impl CycloTable {
    pub fn get(&self, params: CycloParams) -> u64 {
        self.values[params.a as usize][params.b as usize]
    }

    pub fn total(&self) -> u64 {
        self.values.iter().flatten().sum()
    }
}

/// Counts `x ∈ C_a` with `x + 1 ∈ C_b` by enumerating the `k` elements of
/// `C_a` and reading the coset of `x + 1` from its discrete logarithm.
pub fn count_by_coset(ctx: &ExtensionContext, params: CycloParams) -> u64 {
    let e = ctx.e();
    let one = ctx.one();
    (0..ctx.k())
        .filter(|&j| {
            let x = ctx.omega_pow(params.a + j * e);
            let y = ctx.add(x, one);
            match ctx.dlog(y) {
                Ok(l) => l % e == params.b,
                // x = -1
                Err(_) => false,
            }
        })
        .count() as u64
}

/// Counts units `x` with `x^k = ω^{ak}` and `(x+1)^k = ω^{bk}`.
pub fn count_by_norm(ctx: &ExtensionContext, params: CycloParams) -> u64 {
    let k = ctx.k();
    let target_a = ctx.omega_pow(params.a * k);
    let target_b = ctx.omega_pow(params.b * k);
    let one = ctx.one();
    ctx.nonzero_elements()
        .filter(|&x| {
            let y = ctx.add(x, one);
            !y.is_zero() && ctx.norm(x) == target_a && ctx.norm(y) == target_b
        })
        .count() as u64
}

/// Every cell in one pass over `F_{q^r}^x`, bucketing each `x ∉ {0, -1}` by
/// the cosets of `x` and `x + 1`.
pub fn full_table(ctx: &ExtensionContext, method: TableMethod) -> Result<CycloTable> {
    if ctx.size() > ctx.enumeration_cap() {
        return Err(Error::SizeCapExceeded {
            what: "field size q^r",
            size: ctx.size() as u128,
            cap: ctx.enumeration_cap() as u128,
        });
    }
    let e = ctx.e() as usize;
    let mut values = vec![vec![0u64; e]; e];
    let one = ctx.one();
    let sub = ctx.subfield();
    for x in ctx.nonzero_elements() {
        let y = ctx.add(x, one);
        if y.is_zero() {
            continue;
        }
        let (a, b) = match method {
            TableMethod::Coset => (ctx.dlog(x)? % e as u64, ctx.dlog(y)? % e as u64),
            TableMethod::Norm => (
                sub.small_dlog(ctx.norm(x)).expect("norm lies in F_q^x"),
                sub.small_dlog(ctx.norm(y)).expect("norm lies in F_q^x"),
            ),
        };
        values[a as usize][b as usize] += 1;
    }
    Ok(CycloTable {
        p: ctx.p(),
        n: ctx.n(),
        r: ctx.r(),
        omega: ctx.coeffs(ctx.omega()),
        method,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{build_context, Limits};

    fn ctx(p: u32, n: u32, r: u32) -> ExtensionContext {
        build_context(p, n, r, None, &Limits::default()).unwrap()
    }

    #[test]
    fn q2_single_cell() {
        for r in 2..=8 {
            let c = ctx(2, 1, r);
            let cell = CycloParams::new(&c, 0, 0).unwrap();
            let expected = (1u64 << r) - 2;
            assert_eq!(count_by_coset(&c, cell), expected);
            assert_eq!(count_by_norm(&c, cell), expected);
            assert_eq!(
                full_table(&c, TableMethod::Coset).unwrap().values,
                [[expected]]
            );
        }
    }

    #[test]
    fn frozen_tables() {
        type Triple = (u32, u32, u32);
        type FrozenTable = &'static [&'static [u64]];
        // frozen from an independent brute-force enumeration with the same
        // deterministic modulus and generator
        let cases: [(Triple, FrozenTable); 5] = [
            ((3, 1, 2), &[&[1, 2], &[2, 2]]),
            ((3, 1, 3), &[&[6, 7], &[6, 6]]),
            ((2, 2, 2), &[&[0, 2, 2], &[2, 2, 1], &[2, 1, 2]]),
            (
                (5, 1, 2),
                &[&[2, 2, 1, 0], &[2, 0, 2, 2], &[1, 2, 1, 2], &[0, 2, 2, 2]],
            ),
            (
                (5, 1, 3),
                &[&[6, 6, 12, 7], &[9, 9, 7, 6], &[6, 9, 6, 9], &[9, 7, 6, 9]],
            ),
        ];
        for ((p, n, r), expected) in cases {
            let c = ctx(p, n, r);
            for method in [TableMethod::Coset, TableMethod::Norm] {
                let table = full_table(&c, method).unwrap();
                assert_eq!(table.values, expected, "({}, {}, {}) {:?}", p, n, r, method);
            }
            for cell in CycloParams::all(&c) {
                let v = expected[cell.a as usize][cell.b as usize];
                assert_eq!(count_by_coset(&c, cell), v);
                assert_eq!(count_by_norm(&c, cell), v);
            }
        }
    }

    #[test]
    fn table_sum_and_single_pass() {
        for (p, n, r) in [(2, 2, 3), (3, 2, 2), (7, 1, 2), (2, 3, 2), (3, 1, 4)] {
            let c = ctx(p, n, r);
            let table = full_table(&c, TableMethod::Coset).unwrap();
            assert_eq!(table.total(), c.size() - 2);
            for cell in CycloParams::all(&c) {
                assert_eq!(table.get(cell), count_by_coset(&c, cell));
                assert_eq!(table.get(cell), count_by_norm(&c, cell));
            }
        }
    }

    #[test]
    fn q4_r2_values_are_small() {
        let c = ctx(2, 2, 2);
        for cell in CycloParams::all(&c) {
            assert!(count_by_coset(&c, cell) <= 2);
        }
    }

    #[test]
    fn cell_range() {
        let c = ctx(3, 1, 2);
        assert_eq!(
            CycloParams::new(&c, 2, 0),
            Err(Error::CellOutOfRange { a: 2, b: 0, e: 2 })
        );
        assert_eq!(CycloParams::all(&c).count(), 4);
    }
}
