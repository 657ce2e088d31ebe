//! Character-sum evaluation of `(a,b)_{q-1}`.
//!
//! With characters of `F_q^x` lifted through the norm,
//!
//! ```text
//! (a,b)_{q-1} = 1/(q-1)^2 * sum_{χ,ψ} χ(ω^{-ak}) ψ(ω^{-bk}) J_{F_{q^r}}(χ∘N, ψ∘N)
//! ```
//!
//! and every lifted Jacobi sum is `(-1)^{r-1} J_{F_q}(χ,ψ)^r` except the
//! trivial pair, which contributes `q^r - 2`. The sum is accumulated in
//! double precision and rounded; the residual is checked.
//!
//! Characters of `F_q^x` are indexed by `s ∈ [0, q-2]` with
//! `χ_s(g^j) = ζ^{sj}`, `g = ω^k`, `ζ = exp(2πi/(q-1))`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use crate::{CycloParams, Error, ExtensionContext, FieldElement, PropertyCheck, Result};

pub type ComplexValue = Complex64;

/// Largest residual `|value - round(value)|` accepted when rounding.
pub const ROUNDING_RESIDUAL: f64 = 1e-3;
/// Tolerance for identities among sums over `F_q`.
pub const EXACT_TOLERANCE: f64 = 1e-9;
/// Relative tolerance for Gauss sums and sums over `F_{q^r}`.
pub const LIFT_TOLERANCE: f64 = 1e-6;

/// A multiplicative character `x = ω_F^j ↦ exp(2πi index j / order)` of a
/// field with `order + 1` elements, extended by `χ(0) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiplicativeCharacter {
    index: u64,
    order: u64,
}

impl MultiplicativeCharacter {
    pub fn new(index: u64, order: u64) -> Self {
        MultiplicativeCharacter {
            index: index % order,
            order,
        }
    }

    /// Character `χ_s` of `F_q^x` for the context.
    pub fn of_base(ctx: &ExtensionContext, index: u64) -> Self {
        Self::new(index, ctx.e())
    }

    pub fn index(self) -> u64 {
        self.index
    }

    pub fn order(self) -> u64 {
        self.order
    }

    pub fn is_trivial(self) -> bool {
        self.index == 0
    }

    pub fn product(self, other: Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        Self::new(self.index + other.index, self.order)
    }

    /// Value at the element whose discrete logarithm is `j`.
    pub fn at_exponent(self, j: u64) -> Complex64 {
        let t = (self.index as u128 * j as u128 % self.order as u128) as f64;
        Complex64::cis(2.0 * PI * t / self.order as f64)
    }

    /// `χ∘N` as a character of `F_{q^r}^x`.
    pub fn lift(self, ctx: &ExtensionContext) -> Self {
        debug_assert_eq!(self.order, ctx.e());
        Self::new(self.index * ctx.k(), ctx.size() - 1)
    }
}

/// Which field a Gauss sum is taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSelector {
    /// `F_q`
    Base,
    /// `F_{q^r}`
    Extension,
}

/// `χ(z)` for `z ∈ F_q`.
pub fn base_character_value(
    ctx: &ExtensionContext,
    chi: MultiplicativeCharacter,
    z: FieldElement,
) -> Complex64 {
    if z.is_zero() {
        return Complex64::new(0.0, 0.0);
    }
    let j = ctx.subfield().small_dlog(z).expect("argument lies in F_q");
    chi.at_exponent(j)
}

/// `J_{F_q}(χ, ψ) = sum_x χ(x) ψ(x + 1)`.
pub fn jacobi_sum_q(
    ctx: &ExtensionContext,
    chi: MultiplicativeCharacter,
    psi: MultiplicativeCharacter,
) -> Complex64 {
    jacobi_generic(ctx, chi, psi, false)
}

/// `J'_{F_q}(χ, ψ) = sum_x χ(x) ψ(1 - x)`.
pub fn jacobi_prime_q(
    ctx: &ExtensionContext,
    chi: MultiplicativeCharacter,
    psi: MultiplicativeCharacter,
) -> Complex64 {
    jacobi_generic(ctx, chi, psi, true)
}

fn jacobi_generic(
    ctx: &ExtensionContext,
    chi: MultiplicativeCharacter,
    psi: MultiplicativeCharacter,
    reflected: bool,
) -> Complex64 {
    let sub = ctx.subfield();
    let one = ctx.one();
    let mut acc = Complex64::new(0.0, 0.0);
    for x in sub.elements() {
        let y = if reflected {
            ctx.sub(one, x)
        } else {
            ctx.add(x, one)
        };
        let (Some(jx), Some(jy)) = (sub.small_dlog(x), sub.small_dlog(y)) else {
            continue;
        };
        acc += chi.at_exponent(jx) * psi.at_exponent(jy);
    }
    acc
}

/// `J_{F_{q^r}}(χ∘N, ψ∘N)` via the lift identity.
pub fn lifted_jacobi(
    ctx: &ExtensionContext,
    chi: MultiplicativeCharacter,
    psi: MultiplicativeCharacter,
) -> Complex64 {
    lift_value(
        ctx,
        chi.is_trivial() && psi.is_trivial(),
        jacobi_sum_q(ctx, chi, psi),
    )
}

fn lift_value(ctx: &ExtensionContext, trivial_pair: bool, base: Complex64) -> Complex64 {
    if trivial_pair {
        return Complex64::new((ctx.size() - 2) as f64, 0.0);
    }
    let sign = if ctx.r() % 2 == 1 { 1.0 } else { -1.0 };
    base.powi(ctx.r() as i32) * sign
}

/// `J_{F_{q^r}}(χ∘N, ψ∘N)` summed directly over `F_{q^r}`.
pub fn jacobi_sum_extension(
    ctx: &ExtensionContext,
    chi: MultiplicativeCharacter,
    psi: MultiplicativeCharacter,
) -> Complex64 {
    let e = ctx.e();
    let one = ctx.one();
    let mut acc = Complex64::new(0.0, 0.0);
    for x in ctx.nonzero_elements() {
        let y = ctx.add(x, one);
        let Ok(jy) = ctx.dlog(y) else { continue };
        let jx = ctx.dlog(x).expect("nonzero");
        // N(ω^j) = g^(j mod (q-1))
        acc += chi.at_exponent(jx % e) * psi.at_exponent(jy % e);
    }
    acc
}

/// `G_F(ρ) = sum_{x ∈ F^x} ρ(x) exp(2πi Tr_{F/F_p}(x) / p)`.
///
/// `rho` must be a character of the selected field's unit group.
pub fn gauss_sum(
    ctx: &ExtensionContext,
    field: FieldSelector,
    rho: MultiplicativeCharacter,
) -> Result<Complex64> {
    let p = ctx.p() as f64;
    let additive = |tr: u32| Complex64::cis(2.0 * PI * tr as f64 / p);
    let mut acc = Complex64::new(0.0, 0.0);
    match field {
        FieldSelector::Base => {
            if rho.order() != ctx.e() {
                return Err(Error::InvalidParameters(format!(
                    "character of order {} is not a character of F_q^x",
                    rho.order()
                )));
            }
            let sub = ctx.subfield();
            for (j, &x) in sub.units().iter().enumerate() {
                acc += rho.at_exponent(j as u64) * additive(ctx.trace_to_prime(x, ctx.n())?);
            }
        }
        FieldSelector::Extension => {
            if rho.order() != ctx.size() - 1 {
                return Err(Error::InvalidParameters(format!(
                    "character of order {} is not a character of F_(q^r)^x",
                    rho.order()
                )));
            }
            for x in ctx.nonzero_elements() {
                let j = ctx.dlog(x)?;
                acc += rho.at_exponent(j) * additive(ctx.trace_to_prime(x, ctx.degree())?);
            }
        }
    }
    Ok(acc)
}

/// `(q-1)^2 q^(r/2)`, the scale of the largest accumulated term.
pub fn precision_requirement(ctx: &ExtensionContext) -> f64 {
    let e = ctx.e() as f64;
    e * e * Float::powf(ctx.q() as f64, ctx.r() as f64 / 2.0)
}

/// Exact main term `M = (q^r - 2 + A_r(a) + B(b) + C(a,b)) / (q-1)^2` and the
/// remaining error term `E` from the pairs with `χ, ψ, χψ` all nontrivial.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MainErrorSplit {
    pub main_numerator: i128,
    pub main_denominator: i128,
    pub error: f64,
}

impl MainErrorSplit {
    pub fn main(&self) -> f64 {
        self.main_numerator as f64 / self.main_denominator as f64
    }

    /// `(q-2)(q-3) q^(r/2) / (q-1)^2`.
    pub fn error_bound(ctx: &ExtensionContext) -> f64 {
        let q = ctx.q() as f64;
        let e = ctx.e() as f64;
        if ctx.q() <= 3 {
            return 0.0;
        }
        (q - 2.0) * (q - 3.0) * Float::powf(q, ctx.r() as f64 / 2.0) / (e * e)
    }
}

/// Evaluates cells from the character formula with the `F_q` Jacobi sums
/// computed once per context.
#[derive(Clone, Debug)]
pub struct CharacterMethod<'a> {
    ctx: &'a ExtensionContext,
    e: u64,
    // lifted[s * e + t] = J_{F_{q^r}}(χ_s∘N, χ_t∘N)
    lifted: Vec<Complex64>,
    roots: Vec<Complex64>,
}

impl<'a> CharacterMethod<'a> {
    pub fn new(ctx: &'a ExtensionContext, budget: f64) -> Result<Self> {
        let required = precision_requirement(ctx);
        if required > budget {
            return Err(Error::PrecisionBudgetExceeded { required, budget });
        }
        let e = ctx.e();
        let sub = ctx.subfield();
        let one = ctx.one();
        let roots: Vec<Complex64> = (0..e)
            .map(|j| Complex64::cis(2.0 * PI * j as f64 / e as f64))
            .collect();
        // pairs (dlog x, dlog(x+1)) over F_q, shared by every character pair
        let pairs: Vec<(u64, u64)> = sub
            .elements()
            .filter_map(|x| Some((sub.small_dlog(x)?, sub.small_dlog(ctx.add(x, one))?)))
            .collect();
        let mut lifted = Vec::with_capacity((e * e) as usize);
        for s in 0..e {
            for t in 0..e {
                let base: Complex64 = pairs
                    .iter()
                    .map(|&(jx, jy)| roots[((s * jx + t * jy) % e) as usize])
                    .sum();
                lifted.push(lift_value(ctx, s == 0 && t == 0, base));
            }
        }
        Ok(CharacterMethod {
            ctx,
            e,
            lifted,
            roots,
        })
    }

    pub fn lifted(&self, s: u64, t: u64) -> Complex64 {
        self.lifted[(s * self.e + t) as usize]
    }

    // χ_s(ω^{-ak}) ψ_t(ω^{-bk}) = ζ^{-(sa + tb)}
    fn twist(&self, params: CycloParams, s: u64, t: u64) -> Complex64 {
        let e = self.e;
        let exp = (s * params.a + t * params.b) % e;
        self.roots[((e - exp) % e) as usize]
    }

    /// The unrounded character sum divided by `(q-1)^2`.
    pub fn raw_value(&self, params: CycloParams) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for s in 0..self.e {
            for t in 0..self.e {
                acc += self.twist(params, s, t) * self.lifted(s, t);
            }
        }
        acc / (self.e * self.e) as f64
    }

    pub fn value(&self, params: CycloParams) -> Result<u64> {
        round_checked(self.raw_value(params))
    }

    pub fn decompose(&self, params: CycloParams) -> MainErrorSplit {
        let ctx = self.ctx;
        let e = self.e;
        let q = ctx.q() as i128;
        let r = ctx.r();
        let low = -(q - 2);
        let a_term = {
            let hit = if r.is_multiple_of(2) || q % 2 == 0 {
                params.a == 0
            } else {
                params.a == (ctx.q() - 1) / 2
            };
            if hit {
                low
            } else {
                1
            }
        };
        let b_term = if params.b == 0 { low } else { 1 };
        let c_term = if params.a == params.b { low } else { 1 };
        let main_numerator = ctx.size() as i128 - 2 + a_term + b_term + c_term;
        let mut err = Complex64::new(0.0, 0.0);
        for s in 1..e {
            for t in 1..e {
                if (s + t) % e == 0 {
                    continue;
                }
                err += self.twist(params, s, t) * self.lifted(s, t);
            }
        }
        MainErrorSplit {
            main_numerator,
            main_denominator: (e * e) as i128,
            error: err.re / (e * e) as f64,
        }
    }
}

fn round_checked(value: Complex64) -> Result<u64> {
    let rounded = Float::round(value.re);
    let residual = (value.re - rounded).abs().max(value.im.abs());
    if residual > ROUNDING_RESIDUAL || rounded < 0.0 {
        return Err(Error::RoundingResidualTooLarge {
            value: value.re,
            residual,
        });
    }
    Ok(rounded as u64)
}

/// One-shot evaluation of a single cell.
pub fn cyclotomic_by_characters(
    ctx: &ExtensionContext,
    params: CycloParams,
    budget: f64,
) -> Result<u64> {
    CharacterMethod::new(ctx, budget)?.value(params)
}

pub fn decompose_main_error(
    ctx: &ExtensionContext,
    params: CycloParams,
    budget: f64,
) -> Result<MainErrorSplit> {
    Ok(CharacterMethod::new(ctx, budget)?.decompose(params))
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

fn check_all<I, F>(items: I, mut f: F) -> core::result::Result<(), String>
where
    I: IntoIterator,
    F: FnMut(I::Item) -> core::result::Result<(), String>,
{
    for item in items {
        f(item)?;
    }
    Ok(())
}

/// Numeric checks of the character-sum identities on one context.
pub fn property_suite(ctx: &ExtensionContext, budget: f64) -> Vec<PropertyCheck> {
    let e = ctx.e();
    let q = ctx.q() as f64;
    let chars: Vec<MultiplicativeCharacter> = (0..e)
        .map(|s| MultiplicativeCharacter::of_base(ctx, s))
        .collect();
    let sub = ctx.subfield();
    let minus_one = ctx.minus_one();
    let mut out = Vec::new();

    out.push(PropertyCheck::from_result(
        "character orthogonality",
        check_all(sub.units().iter().copied(), |u| {
            let s: Complex64 = chars
                .iter()
                .map(|&c| base_character_value(ctx, c, u))
                .sum::<Complex64>()
                / e as f64;
            let expected = if u == ctx.one() { 1.0 } else { 0.0 };
            if close(s, Complex64::new(expected, 0.0), EXACT_TOLERANCE) {
                Ok(())
            } else {
                Err(format!("u = {:?}: average {}", ctx.coeffs(u), s))
            }
        }),
    ));

    out.push(PropertyCheck::from_result(
        "nontrivial character sums vanish",
        check_all(chars.iter().skip(1), |&eta| {
            let s: Complex64 = sub
                .elements()
                .map(|y| base_character_value(ctx, eta, y))
                .sum();
            if s.norm() <= EXACT_TOLERANCE {
                Ok(())
            } else {
                Err(format!("η_{}: sum {}", eta.index(), s))
            }
        }),
    ));

    let pairs: Vec<(MultiplicativeCharacter, MultiplicativeCharacter)> = chars
        .iter()
        .flat_map(|&c| chars.iter().map(move |&d| (c, d)))
        .collect();
    let jac: Vec<Complex64> = pairs
        .iter()
        .map(|&(c, d)| jacobi_sum_q(ctx, c, d))
        .collect();
    let jac_prime: Vec<Complex64> = pairs
        .iter()
        .map(|&(c, d)| jacobi_prime_q(ctx, c, d))
        .collect();

    out.push(PropertyCheck::from_result(
        "J = χ(-1) J'",
        check_all(pairs.iter().enumerate(), |(i, &(c, d))| {
            let rhs = base_character_value(ctx, c, minus_one) * jac_prime[i];
            if close(jac[i], rhs, EXACT_TOLERANCE) {
                Ok(())
            } else {
                Err(format!(
                    "(χ_{}, ψ_{}): {} vs {}",
                    c.index(),
                    d.index(),
                    jac[i],
                    rhs
                ))
            }
        }),
    ));

    out.push(PropertyCheck::from_result(
        "|J| = sqrt(q) for nontrivial triples",
        check_all(pairs.iter().enumerate(), |(i, &(c, d))| {
            if c.is_trivial() || d.is_trivial() || c.product(d).is_trivial() {
                return Ok(());
            }
            if (jac[i].norm() - Float::sqrt(q)).abs() <= EXACT_TOLERANCE {
                Ok(())
            } else {
                Err(format!(
                    "(χ_{}, ψ_{}): |J| = {}",
                    c.index(),
                    d.index(),
                    jac[i].norm()
                ))
            }
        }),
    ));

    out.push(PropertyCheck::from_result(
        "Jacobi special values",
        check_all(pairs.iter().enumerate(), |(i, &(c, d))| {
            let chi_m1 = base_character_value(ctx, c, minus_one);
            let one = Complex64::new(1.0, 0.0);
            let expect: Option<(Complex64, Complex64)> = match (c.is_trivial(), d.is_trivial()) {
                (true, true) => Some((one * (q - 2.0), one * (q - 2.0))),
                (true, false) => Some((-one, -one)),
                (false, true) => Some((-one, -chi_m1)),
                (false, false) if c.product(d).is_trivial() => Some((-chi_m1, -one)),
                _ => None,
            };
            match expect {
                Some((jp, j))
                    if !(close(jac_prime[i], jp, EXACT_TOLERANCE)
                        && close(jac[i], j, EXACT_TOLERANCE)) =>
                {
                    Err(format!(
                        "(χ_{}, ψ_{}): J' = {}, J = {}",
                        c.index(),
                        d.index(),
                        jac_prime[i],
                        jac[i]
                    ))
                }
                _ => Ok(()),
            }
        }),
    ));

    out.push(PropertyCheck::from_result(
        "lifted Jacobi sums match direct sums over F_(q^r)",
        check_all(pairs.iter(), |&(c, d)| {
            let lifted = lifted_jacobi(ctx, c, d);
            let direct = jacobi_sum_extension(ctx, c, d);
            let tol = LIFT_TOLERANCE * direct.norm().max(1.0);
            if close(lifted, direct, tol) {
                Ok(())
            } else {
                Err(format!(
                    "(χ_{}, ψ_{}): {} vs {}",
                    c.index(),
                    d.index(),
                    lifted,
                    direct
                ))
            }
        }),
    ));

    out.push(PropertyCheck::from_result(
        "Gauss sums: modulus, trivial value, Davenport-Hasse",
        check_all(chars.iter(), |&rho| {
            let g = gauss_sum(ctx, FieldSelector::Base, rho).map_err(|err| format!("{}", err))?;
            let lifted = gauss_sum(ctx, FieldSelector::Extension, rho.lift(ctx))
                .map_err(|err| format!("{}", err))?;
            if rho.is_trivial() {
                let minus = Complex64::new(-1.0, 0.0);
                if !close(g, minus, LIFT_TOLERANCE)
                    || !close(lifted, minus, LIFT_TOLERANCE * ctx.size() as f64)
                {
                    return Err(format!(
                        "trivial character: G_q = {}, G_(q^r) = {}",
                        g, lifted
                    ));
                }
                return Ok(());
            }
            if (g.norm() - Float::sqrt(q)).abs() > LIFT_TOLERANCE * Float::sqrt(q) {
                return Err(format!("ρ_{}: |G_q| = {}", rho.index(), g.norm()));
            }
            let big = Float::sqrt(ctx.size() as f64);
            if (lifted.norm() - big).abs() > LIFT_TOLERANCE * big {
                return Err(format!("ρ_{}: |G_(q^r)| = {}", rho.index(), lifted.norm()));
            }
            let sign = if ctx.r() % 2 == 1 { 1.0 } else { -1.0 };
            let dh = g.powi(ctx.r() as i32) * sign;
            if !close(lifted, dh, LIFT_TOLERANCE * big) {
                return Err(format!(
                    "ρ_{}: G_(q^r) = {} but (-1)^(r-1) G_q^r = {}",
                    rho.index(),
                    lifted,
                    dh
                ));
            }
            Ok(())
        }),
    ));

    out.push(PropertyCheck::from_result(
        "J' = G(χ)G(ψ)/G(χψ) for nontrivial triples",
        {
            let gauss: Vec<Complex64> = chars
                .iter()
                .map(|&c| gauss_sum(ctx, FieldSelector::Base, c).unwrap_or_default())
                .collect();
            check_all(pairs.iter().enumerate(), |(i, &(c, d))| {
                let cd = c.product(d);
                if c.is_trivial() || d.is_trivial() || cd.is_trivial() {
                    return Ok(());
                }
                let rhs = gauss[c.index() as usize] * gauss[d.index() as usize]
                    / gauss[cd.index() as usize];
                if close(jac_prime[i], rhs, LIFT_TOLERANCE * Float::sqrt(q)) {
                    Ok(())
                } else {
                    Err(format!(
                        "(χ_{}, ψ_{}): {} vs {}",
                        c.index(),
                        d.index(),
                        jac_prime[i],
                        rhs
                    ))
                }
            })
        },
    ));

    match CharacterMethod::new(ctx, budget) {
        Ok(method) => {
            let bound = MainErrorSplit::error_bound(ctx);
            out.push(PropertyCheck::from_result(
                "main term plus error term",
                check_all(CycloParams::all(ctx), |cell| {
                    let split = method.decompose(cell);
                    let value = method
                        .value(cell)
                        .map_err(|err| format!("{:?}: {}", cell, err))?;
                    if (split.main() + split.error - value as f64).abs() > ROUNDING_RESIDUAL {
                        return Err(format!(
                            "{:?}: M + E = {} but value {}",
                            cell,
                            split.main() + split.error,
                            value
                        ));
                    }
                    if split.error.abs() > bound + 1e-6 {
                        return Err(format!(
                            "{:?}: |E| = {} above bound {}",
                            cell,
                            split.error.abs(),
                            bound
                        ));
                    }
                    if ctx.q() == 3 && split.error.abs() >= EXACT_TOLERANCE {
                        return Err(format!("{:?}: E = {} for q = 3", cell, split.error));
                    }
                    Ok(())
                }),
            ));
        }
        Err(err) => out.push(PropertyCheck {
            name: "main term plus error term",
            counterexample: Some(format!("{}", err)),
        }),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::count_by_norm;
    use crate::{build_context, Limits};

    const BUDGET: f64 = Limits::DEFAULT_PRECISION_BUDGET;

    fn ctx(p: u32, n: u32, r: u32) -> ExtensionContext {
        build_context(p, n, r, None, &Limits::default()).unwrap()
    }

    fn cell(c: &ExtensionContext, a: u64, b: u64) -> CycloParams {
        CycloParams::new(c, a, b).unwrap()
    }

    #[test]
    fn jacobi_special_values() {
        let c = ctx(7, 1, 2);
        let triv = MultiplicativeCharacter::of_base(&c, 0);
        assert!((jacobi_sum_q(&c, triv, triv) - Complex64::new(5.0, 0.0)).norm() < 1e-12);
        for s in 1..6 {
            let chi = MultiplicativeCharacter::of_base(&c, s);
            let chi_m1 = base_character_value(&c, chi, c.minus_one());
            assert!((jacobi_sum_q(&c, chi, triv) + chi_m1).norm() < 1e-9);
            for t in 1..6 {
                let psi = MultiplicativeCharacter::of_base(&c, t);
                if (s + t) % 6 != 0 {
                    assert!((jacobi_sum_q(&c, chi, psi).norm() - 7f64.sqrt()).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn lifted_trivial_pairs() {
        let c = ctx(5, 1, 3);
        let triv = MultiplicativeCharacter::of_base(&c, 0);
        assert_eq!(lifted_jacobi(&c, triv, triv), Complex64::new(123.0, 0.0));
        let chi = MultiplicativeCharacter::of_base(&c, 2);
        // -χ((-1)^r) with r = 3 and χ_2(-1) = 1
        assert!((lifted_jacobi(&c, chi, triv) + Complex64::new(1.0, 0.0)).norm() < 1e-9);
        let chi = MultiplicativeCharacter::of_base(&c, 1);
        assert!((lifted_jacobi(&c, chi, triv) - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        let psi = MultiplicativeCharacter::of_base(&c, 2);
        assert!((lifted_jacobi(&c, chi, psi).norm() - 125f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn known_values() {
        let c = ctx(3, 1, 2);
        assert_eq!(
            cyclotomic_by_characters(&c, cell(&c, 0, 0), BUDGET).unwrap(),
            1
        );
        let c = ctx(3, 1, 3);
        assert_eq!(
            cyclotomic_by_characters(&c, cell(&c, 0, 1), BUDGET).unwrap(),
            7
        );
    }

    #[test]
    fn matches_oracle() {
        for (p, n, r) in [
            (5, 1, 2),
            (2, 2, 2),
            (2, 2, 3),
            (3, 2, 2),
            (7, 1, 2),
            (5, 1, 3),
        ] {
            let c = ctx(p, n, r);
            let method = CharacterMethod::new(&c, BUDGET).unwrap();
            for cell in CycloParams::all(&c) {
                assert_eq!(method.value(cell).unwrap(), count_by_norm(&c, cell));
            }
        }
    }

    #[test]
    fn error_term_vanishes_for_q3() {
        for r in 2..=5 {
            let c = ctx(3, 1, r);
            for cell in CycloParams::all(&c) {
                let split = decompose_main_error(&c, cell, BUDGET).unwrap();
                assert!(split.error.abs() < 1e-9);
                assert_eq!(split.main_numerator % split.main_denominator, 0);
            }
        }
    }

    #[test]
    fn q2_main_term() {
        let c = ctx(2, 1, 4);
        let split = decompose_main_error(&c, cell(&c, 0, 0), BUDGET).unwrap();
        // 16 - 2 + 0 + 0 + 0 over 1
        assert_eq!((split.main_numerator, split.main_denominator), (14, 1));
        assert_eq!(split.error, 0.0);
    }

    #[test]
    fn budget() {
        let c = ctx(3, 1, 4);
        assert!(matches!(
            cyclotomic_by_characters(&c, cell(&c, 0, 0), 10.0),
            Err(Error::PrecisionBudgetExceeded { .. })
        ));
    }

    #[test]
    fn gauss_sums() {
        let c = ctx(2, 2, 2);
        let triv = MultiplicativeCharacter::of_base(&c, 0);
        assert!(
            (gauss_sum(&c, FieldSelector::Base, triv).unwrap() + Complex64::new(1.0, 0.0)).norm()
                < 1e-9
        );
        let rho = MultiplicativeCharacter::of_base(&c, 1);
        assert!((gauss_sum(&c, FieldSelector::Base, rho).unwrap().norm() - 2.0).abs() < 1e-9);
        assert!(gauss_sum(&c, FieldSelector::Extension, rho).is_err());
        let lifted = gauss_sum(&c, FieldSelector::Extension, rho.lift(&c)).unwrap();
        assert!((lifted.norm() - 4.0).abs() < 1e-9);
    }

    #[test]
    fn suite_passes_on_small_fields() {
        for (p, n, r) in [(3, 1, 2), (5, 1, 2), (2, 2, 3), (7, 1, 2), (3, 2, 2)] {
            let c = ctx(p, n, r);
            for check in property_suite(&c, BUDGET) {
                assert!(
                    check.passed(),
                    "({}, {}, {}) {}: {:?}",
                    p,
                    n,
                    r,
                    check.name,
                    check.counterexample
                );
            }
        }
    }
}
