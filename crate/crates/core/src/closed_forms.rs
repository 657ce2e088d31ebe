//! Closed-form values and the `ceil(k/2)` classification.

use alloc::format;
use alloc::vec::Vec;
use num_traits::Float;

use crate::oracle::{full_table, TableMethod};
use crate::{CycloParams, Error, ExtensionContext, Result};

/// `ceil(k/2)` for `k = (q^r - 1)/(q - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfKBound {
    pub q: u64,
    pub r: u32,
    pub k: u128,
    pub value: u128,
}

/// Evaluates `ceil(k/2)` by parity branch:
/// `(q^r + q - 2)/(2(q-1))` unless `q` is odd and `r` even, where it is
/// `(q^r - 1)/(2(q-1))`.
pub fn half_k(q: u64, r: u32) -> Result<HalfKBound> {
    if q < 2 || r == 0 {
        return Err(Error::InvalidParameters(format!("q = {}, r = {}", q, r)));
    }
    let qr = (q as u128).checked_pow(r).ok_or(Error::SizeCapExceeded {
        what: "q^r",
        size: u128::MAX,
        cap: u128::MAX,
    })?;
    let q128 = q as u128;
    let k = (qr - 1) / (q128 - 1);
    let value = if q % 2 == 1 && r.is_multiple_of(2) {
        (qr - 1) / (2 * (q128 - 1))
    } else {
        (qr + q128 - 2) / (2 * (q128 - 1))
    };
    debug_assert_eq!(value, k.div_ceil(2));
    Ok(HalfKBound { q, r, k, value })
}

/// `(0,0)_1 = 2^r - 2` over `F_{2^r}`.
pub fn q2_value(r: u32) -> u64 {
    (1u64 << r) - 2
}

/// The four-case table for `q = 3`.
pub fn q3_value(r: u32, a: u64, b: u64) -> u64 {
    let t = 3u64.pow(r);
    match (r % 2 == 1, a, b) {
        (true, 0, 1) => (t + 1) / 4,
        (true, _, _) => (t - 3) / 4,
        (false, 0, 0) => (t - 5) / 4,
        (false, _, _) => (t - 1) / 4,
    }
}

/// `(a,b)_{q-1}` for `r = 2`.
///
/// Odd characteristic: with `Δ = (1 + u - v)^2 - 4u`, the value is 1 if
/// `Δ = 0`, 0 if `Δ` is a nonzero square and 2 otherwise (Euler's
/// criterion). Characteristic 2: with `c = 1 + u + v`, 1 if `c = 0`,
/// otherwise 0 or 2 as the absolute trace of `u/c^2` is 0 or 1.
pub fn r2_value(ctx: &ExtensionContext, params: CycloParams) -> Result<u64> {
    if ctx.r() != 2 {
        return Err(Error::MethodInapplicable {
            method: "closed",
            reason: "the quadratic closed form needs r = 2",
        });
    }
    let u = ctx.omega_pow(params.a * ctx.k());
    let v = ctx.omega_pow(params.b * ctx.k());
    let one = ctx.one();
    if ctx.p() == 2 {
        let c = ctx.add(ctx.add(one, u), v);
        if c.is_zero() {
            return Ok(1);
        }
        let t = ctx.div(u, ctx.mul(c, c))?;
        return Ok(if ctx.trace_to_prime(t, ctx.n())? == 0 {
            0
        } else {
            2
        });
    }
    let s = ctx.sub(ctx.add(one, u), v);
    let delta = ctx.sub(ctx.mul(s, s), ctx.mul(ctx.from_int(4), u));
    if delta.is_zero() {
        return Ok(1);
    }
    Ok(if ctx.pow(delta, (ctx.q() - 1) / 2) == one {
        0
    } else {
        2
    })
}

/// Whichever closed form covers the context, if any.
pub fn closed_value(ctx: &ExtensionContext, params: CycloParams) -> Result<u64> {
    match (ctx.q(), ctx.r()) {
        (2, r) => Ok(q2_value(r)),
        (3, r) => Ok(q3_value(r, params.a, params.b)),
        (_, 2) => r2_value(ctx, params),
        _ => Err(Error::MethodInapplicable {
            method: "closed",
            reason: "no closed form for q >= 4 and r >= 3",
        }),
    }
}

pub fn closed_form_applies(ctx: &ExtensionContext) -> bool {
    ctx.q() <= 3 || ctx.r() == 2
}

/// `ℓ q^(ℓ-2) + 1` if `p = ℓ`, else `ℓ q^(ℓ-2) + ℓ - 1`.
pub fn ell_total_bound(q: u64, p: u32, ell: u32) -> u128 {
    let head = ell as u128 * (q as u128).pow(ell - 2);
    head + if p == ell { 1 } else { ell as u128 - 1 }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Below,
    Equal,
    Above,
}

/// Which part of the classification a cell falls under.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremClause {
    /// `q = 2`: equality at `r = 2`, above for `r >= 3`.
    BinaryField,
    /// `q = 3`: equality on the listed patterns, strictly below elsewhere.
    Ternary,
    /// `q >= 4`: strictly below.
    Strict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub params: CycloParams,
    pub value: u64,
    pub bound: u64,
    pub relation: Relation,
    pub clause: TheoremClause,
}

fn expected_relation(q: u64, r: u32, params: CycloParams) -> (TheoremClause, Relation) {
    match q {
        2 => (
            TheoremClause::BinaryField,
            if r == 2 {
                Relation::Equal
            } else {
                Relation::Above
            },
        ),
        3 => {
            let equal = if r % 2 == 1 {
                params.a == 0 && params.b == 1
            } else {
                params.a != 0 || params.b != 0
            };
            (
                TheoremClause::Ternary,
                if equal {
                    Relation::Equal
                } else {
                    Relation::Below
                },
            )
        }
        _ => (TheoremClause::Strict, Relation::Below),
    }
}

fn check_ranges(
    ctx: &ExtensionContext,
    value: u64,
) -> core::result::Result<(), alloc::string::String> {
    let q = ctx.q();
    let r = ctx.r();
    if r == 2 && value > 2 {
        return Err(format!("r = 2 value {} outside {{0, 1, 2}}", value));
    }
    if r == 3 && !(6..=2 * q + 4).contains(&value) {
        return Err(format!("r = 3 value {} outside [6, {}]", value, 2 * q + 4));
    }
    if r >= 3 && r % 2 == 1 && crate::algebra::is_prime(r as u64) {
        let bound = ell_total_bound(q, ctx.p(), r);
        if value as u128 > bound {
            return Err(format!("value {} above {} for prime r", value, bound));
        }
    }
    Ok(())
}

/// Classifies every cell against `ceil(k/2)` using the oracle table and
/// asserts the expected relation and the range statements.
pub fn verify_main_theorem(ctx: &ExtensionContext) -> Result<Vec<TheoremVerdict>> {
    let table = full_table(ctx, TableMethod::Coset)?;
    let bound = half_k(ctx.q(), ctx.r())?.value as u64;
    let mut out = Vec::new();
    for params in CycloParams::all(ctx) {
        let value = table.get(params);
        let relation = match value.cmp(&bound) {
            core::cmp::Ordering::Less => Relation::Below,
            core::cmp::Ordering::Equal => Relation::Equal,
            core::cmp::Ordering::Greater => Relation::Above,
        };
        let (clause, expected) = expected_relation(ctx.q(), ctx.r(), params);
        if relation != expected {
            return Err(Error::TheoremViolation {
                a: params.a,
                b: params.b,
                detail: format!(
                    "value {} vs bound {}: {:?}, expected {:?}",
                    value, bound, relation, expected
                ),
            });
        }
        check_ranges(ctx, value).map_err(|detail| Error::TheoremViolation {
            a: params.a,
            b: params.b,
            detail,
        })?;
        out.push(TheoremVerdict {
            params,
            value,
            bound,
            relation,
            clause,
        });
    }
    Ok(out)
}

/// For `q >= 4, r >= 3`: `M + (q-2)(q-3)q^(r/2)/(q-1)^2 < ceil(k/2)` with `M`
/// the largest main term, which forces strictness from the error bound.
pub fn strictness_margin(q: u64, r: u32) -> Result<f64> {
    let bound = half_k(q, r)?.value as f64;
    let qf = q as f64;
    let e = qf - 1.0;
    let qr = Float::powi(qf, r as i32);
    // every correction term is at most 1
    let main = (qr - 2.0 + 3.0) / (e * e);
    let err = (qf - 2.0) * (qf - 3.0) * Float::powi(Float::sqrt(qf), r as i32) / (e * e);
    Ok(bound - main - err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::count_by_norm;
    use crate::{build_context, Limits};

    fn ctx(p: u32, n: u32, r: u32) -> ExtensionContext {
        build_context(p, n, r, None, &Limits::default()).unwrap()
    }

    #[test]
    fn half_k_examples() {
        assert_eq!(half_k(2, 3).unwrap().value, 4);
        assert_eq!(half_k(3, 2).unwrap().value, 2);
        assert_eq!(half_k(4, 2).unwrap().value, 3);
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27] {
            for r in 1..=9 {
                let h = half_k(q, r).unwrap();
                assert_eq!(h.value, h.k.div_ceil(2), "q = {}, r = {}", q, r);
            }
        }
    }

    #[test]
    fn q2_and_q3_tables() {
        assert_eq!(q2_value(2), 2);
        assert_eq!(q2_value(3), 6);
        assert_eq!(q2_value(5), 30);
        assert_eq!(q3_value(3, 0, 1), 7);
        assert_eq!(q3_value(3, 1, 1), 6);
        assert_eq!(q3_value(2, 1, 0), 2);
        for r in 2..=7 {
            let c = ctx(3, 1, r);
            for cell in CycloParams::all(&c) {
                assert_eq!(
                    q3_value(r, cell.a, cell.b),
                    count_by_norm(&c, cell),
                    "r = {} {:?}",
                    r,
                    cell
                );
            }
            let c = ctx(2, 1, r);
            assert_eq!(
                q2_value(r),
                count_by_norm(&c, CycloParams::new(&c, 0, 0).unwrap())
            );
        }
    }

    #[test]
    fn r2_matches_oracle() {
        for (p, n) in [
            (3, 1),
            (2, 2),
            (5, 1),
            (7, 1),
            (2, 3),
            (3, 2),
            (11, 1),
            (2, 4),
            (5, 2),
        ] {
            let c = ctx(p, n, 2);
            let mut sum = 0;
            for cell in CycloParams::all(&c) {
                let v = r2_value(&c, cell).unwrap();
                assert_eq!(v, count_by_norm(&c, cell), "q = {}^{} {:?}", p, n, cell);
                sum += v;
            }
            assert_eq!(sum, c.size() - 2);
        }
        let c = ctx(3, 1, 2);
        assert_eq!(
            r2_value(&c, CycloParams::new(&c, 0, 0).unwrap()).unwrap(),
            1
        );
        assert!(r2_value(&ctx(3, 1, 3), CycloParams { a: 0, b: 0 }).is_err());
    }

    #[test]
    fn verdicts() {
        let v = verify_main_theorem(&ctx(2, 1, 4)).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(
            (v[0].value, v[0].bound, v[0].relation),
            (14, 8, Relation::Above)
        );

        let v = verify_main_theorem(&ctx(3, 1, 2)).unwrap();
        let equal: Vec<(u64, u64)> = v
            .iter()
            .filter(|x| x.relation == Relation::Equal)
            .map(|x| (x.params.a, x.params.b))
            .collect();
        assert_eq!(equal, [(0, 1), (1, 0), (1, 1)]);

        let v = verify_main_theorem(&ctx(5, 1, 3)).unwrap();
        assert_eq!(v.len(), 16);
        assert!(v
            .iter()
            .all(|x| x.relation == Relation::Below && x.bound == 16));
        assert!(v.iter().all(|x| (6..=14).contains(&x.value)));

        for (p, n, r) in [
            (2, 2, 2),
            (2, 2, 3),
            (2, 2, 4),
            (7, 1, 3),
            (3, 2, 2),
            (3, 1, 5),
            (2, 3, 3),
            (2, 1, 2),
        ] {
            verify_main_theorem(&ctx(p, n, r)).unwrap();
        }
    }

    #[test]
    fn strictness_margin_positive() {
        for q in [4u64, 5, 7, 8, 9, 11, 13] {
            for r in 3..=8 {
                assert!(
                    strictness_margin(q, r).unwrap() > 0.0,
                    "q = {}, r = {}",
                    q,
                    r
                );
            }
        }
    }
}
