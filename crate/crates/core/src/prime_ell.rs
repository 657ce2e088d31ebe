//! Decomposition for odd prime `r = ℓ`:
//! `(a,b)_{q-1} = #T_ℓ(a,b) + ℓ #I_ℓ(a,b)`.
//!
//! `T_ℓ` collects the `x ∈ F_q` with `x^ℓ = u` and `(x+1)^ℓ = v`
//! (`u = ω^{ak}`, `v = ω^{bk}`); `I_ℓ` collects the irreducible monic
//! degree-`ℓ` polynomials `f` over `F_q` with `f(0) = -u` and `f(-1) = -v`,
//! i.e. minimal polynomials of the remaining solutions.
//!
//! For `ℓ = 3` the module also carries the resultant of `X^3 - u` and
//! `(X+1)^3 - v`, the six-way classification of `#T_3` and the image count
//! of `x ↦ x - 1 - u/x + v/(x+1)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{is_prime, linalg, poly};
use crate::closed_forms::ell_total_bound;
use crate::oracle::count_by_norm;
use crate::{CycloParams, Error, ExtensionContext, FieldElement, Limits, PropertyCheck, Result};

/// Polynomial over `F_q`, coefficients constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialOverFq {
    coeffs: Vec<FieldElement>,
}

impl PolynomialOverFq {
    pub fn new(ctx: &ExtensionContext, coeffs: Vec<FieldElement>) -> Result<Self> {
        let sub = ctx.subfield();
        if let Some(&c) = coeffs.iter().find(|&&c| !sub.contains(c)) {
            return Err(Error::InvalidParameters(format!(
                "coefficient {:?} is not in F_q",
                ctx.coeffs(c)
            )));
        }
        let mut coeffs = coeffs;
        poly::trim(ctx, &mut coeffs);
        Ok(PolynomialOverFq { coeffs })
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self, ctx: &ExtensionContext) -> bool {
        self.coeffs.last() == Some(&ctx.one())
    }

    pub fn eval(&self, ctx: &ExtensionContext, x: FieldElement) -> FieldElement {
        poly::eval(ctx, &self.coeffs, x)
    }

    pub fn is_irreducible(&self, ctx: &ExtensionContext) -> bool {
        poly::is_irreducible(ctx, &self.coeffs, ctx.q())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EllDecomposition {
    pub ell: u32,
    pub t_count: u64,
    pub i_count: u64,
    pub total: u64,
}

fn check_ell(ell: u32) -> Result<()> {
    if ell < 3 || !is_prime(ell as u64) {
        return Err(Error::InvalidParameters(format!(
            "ℓ = {} is not an odd prime",
            ell
        )));
    }
    Ok(())
}

fn targets(ctx: &ExtensionContext, params: CycloParams) -> (FieldElement, FieldElement) {
    (
        ctx.omega_pow(params.a * ctx.k()),
        ctx.omega_pow(params.b * ctx.k()),
    )
}

/// `#T_ℓ(a,b)` by enumerating `F_q`.
pub fn count_t(ctx: &ExtensionContext, ell: u32, params: CycloParams) -> Result<u64> {
    check_ell(ell)?;
    let (u, v) = targets(ctx, params);
    let one = ctx.one();
    Ok(ctx
        .subfield()
        .elements()
        .filter(|&x| ctx.pow(x, ell as u64) == u && ctx.pow(ctx.add(x, one), ell as u64) == v)
        .count() as u64)
}

/// Calls `visit` on every member of `P_ℓ(a,b)`: monic of degree `ℓ` with
/// `f(0) = -u`, `f(-1) = -v`. The coefficients `c_2..c_{ℓ-1}` are free and
/// `c_1 = sum_{μ>=2} (-1)^μ c_μ - (1 + u - v)`.
pub fn for_each_member<V>(
    ctx: &ExtensionContext,
    ell: u32,
    params: CycloParams,
    cap: u64,
    mut visit: V,
) -> Result<()>
where
    V: FnMut(&PolynomialOverFq),
{
    check_ell(ell)?;
    let members = (ctx.q() as u128).pow(ell - 2);
    if members > cap as u128 {
        return Err(Error::SizeCapExceeded {
            what: "polynomial count q^(ℓ-2)",
            size: members,
            cap: cap as u128,
        });
    }
    let (u, v) = targets(ctx, params);
    let one = ctx.one();
    let shift = ctx.sub(ctx.add(one, u), v);
    let field: Vec<FieldElement> = ctx.subfield().elements().collect();
    let free = (ell - 2) as usize;
    let mut digits = vec![0usize; free];
    let mut coeffs = vec![ctx.zero(); ell as usize + 1];
    coeffs[0] = ctx.neg(u);
    coeffs[ell as usize] = one;
    loop {
        let mut c1 = ctx.neg(shift);
        for (i, &d) in digits.iter().enumerate() {
            let mu = i + 2;
            let c = field[d];
            coeffs[mu] = c;
            c1 = if mu % 2 == 0 {
                ctx.add(c1, c)
            } else {
                ctx.sub(c1, c)
            };
        }
        coeffs[1] = c1;
        visit(&PolynomialOverFq {
            coeffs: coeffs.clone(),
        });
        let mut i = 0;
        loop {
            if i == free {
                return Ok(());
            }
            digits[i] += 1;
            if digits[i] < field.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// `#I_ℓ(a,b)`: irreducible members of `P_ℓ(a,b)`.
pub fn count_i(
    ctx: &ExtensionContext,
    ell: u32,
    params: CycloParams,
    limits: &Limits,
) -> Result<u64> {
    let mut count = 0;
    for_each_member(ctx, ell, params, limits.ell, |f| {
        if f.is_irreducible(ctx) {
            count += 1;
        }
    })?;
    Ok(count)
}

pub fn cyclotomic_by_ell(
    ctx: &ExtensionContext,
    params: CycloParams,
    limits: &Limits,
) -> Result<EllDecomposition> {
    let ell = ctx.r();
    if ell < 3 || !is_prime(ell as u64) {
        return Err(Error::MethodInapplicable {
            method: "ell",
            reason: "the decomposition needs r to be an odd prime",
        });
    }
    let t_count = count_t(ctx, ell, params)?;
    let i_count = count_i(ctx, ell, params, limits)?;
    let total = t_count + ell as u64 * i_count;
    let bound = ell_total_bound(ctx.q(), ctx.p(), ell);
    if total as u128 > bound {
        return Err(Error::TheoremViolation {
            a: params.a,
            b: params.b,
            detail: format!("decomposition total {} above {}", total, bound),
        });
    }
    Ok(EllDecomposition {
        ell,
        t_count,
        i_count,
        total,
    })
}

/// Sylvester matrix of `f` (degree `m`) and `g` (degree `n`), row-major,
/// `n` shifted rows of `f` over `m` shifted rows of `g`, leading
/// coefficients first.
pub fn sylvester_matrix(
    ctx: &ExtensionContext,
    f: &[FieldElement],
    g: &[FieldElement],
) -> Vec<FieldElement> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut out = vec![ctx.zero(); size * size];
    for i in 0..n {
        for d in 0..=m {
            out[i * size + i + (m - d)] = f[d];
        }
    }
    for i in 0..m {
        for d in 0..=n {
            out[(n + i) * size + i + (n - d)] = g[d];
        }
    }
    out
}

pub fn resultant_sylvester(
    ctx: &ExtensionContext,
    f: &[FieldElement],
    g: &[FieldElement],
) -> FieldElement {
    let size = f.len() + g.len() - 2;
    linalg::determinant(ctx, &sylvester_matrix(ctx, f, g), size)
}

/// `A(X) = X^3 - u` and `B(X) = (X+1)^3 - v`.
pub fn r3_pair(
    ctx: &ExtensionContext,
    params: CycloParams,
) -> (Vec<FieldElement>, Vec<FieldElement>) {
    let (u, v) = targets(ctx, params);
    let one = ctx.one();
    let three = ctx.from_int(3);
    (
        vec![ctx.neg(u), ctx.zero(), ctx.zero(), one],
        vec![ctx.sub(one, v), three, three, one],
    )
}

/// `Res(A, B) = (1 + u - v)^3 + 27uv`.
pub fn resultant_r3(ctx: &ExtensionContext, params: CycloParams) -> FieldElement {
    let (u, v) = targets(ctx, params);
    let c = ctx.sub(ctx.add(ctx.one(), u), v);
    ctx.add(ctx.pow(c, 3), ctx.mul(ctx.from_int(27), ctx.mul(u, v)))
}

/// The six cases for `#T_3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum T3Case {
    /// `p = 3`, `1 + u - v = 0`: one point.
    CharThreeCollapsed,
    /// `p = 3`, `1 + u - v ≠ 0`: none.
    CharThreeGeneric,
    /// `p ≠ 3`, `(a,b) = (0,λ)`, `3 | q - 1`: two points.
    CubeRootsSplit,
    /// `p ≠ 3`, `(a,b) = (0,λ)`, `3 ∤ q - 1`: none.
    CubeRootsInert,
    /// `p ≠ 3`, `(a,b) ≠ (0,λ)`, vanishing resultant: one point.
    ResultantZero,
    /// `p ≠ 3`, `(a,b) ≠ (0,λ)`, nonzero resultant: none.
    ResultantNonzero,
}

impl T3Case {
    pub fn count(self) -> u64 {
        match self {
            T3Case::CubeRootsSplit => 2,
            T3Case::CharThreeCollapsed | T3Case::ResultantZero => 1,
            _ => 0,
        }
    }
}

/// `λ = 0` for `p = 2`, `(q-1)/2` for odd `p`.
pub fn lambda(ctx: &ExtensionContext) -> u64 {
    if ctx.p() == 2 {
        0
    } else {
        (ctx.q() - 1) / 2
    }
}

pub fn classify_t3(ctx: &ExtensionContext, params: CycloParams) -> (T3Case, u64) {
    let (u, v) = targets(ctx, params);
    let case = if ctx.p() == 3 {
        if ctx.sub(ctx.add(ctx.one(), u), v).is_zero() {
            T3Case::CharThreeCollapsed
        } else {
            T3Case::CharThreeGeneric
        }
    } else if params.a == 0 && params.b == lambda(ctx) {
        if (ctx.q() - 1).is_multiple_of(3) {
            T3Case::CubeRootsSplit
        } else {
            T3Case::CubeRootsInert
        }
    } else if resultant_r3(ctx, params).is_zero() {
        T3Case::ResultantZero
    } else {
        T3Case::ResultantNonzero
    };
    (case, case.count())
}

/// `#Im φ` for `φ(x) = x - 1 - u/x + v/(x+1)` on `F_q \ {0, -1}`.
pub fn image_count_phi(ctx: &ExtensionContext, params: CycloParams) -> u64 {
    let (u, v) = targets(ctx, params);
    let one = ctx.one();
    let mut images: Vec<FieldElement> = ctx
        .subfield()
        .elements()
        .filter_map(|x| {
            let y = ctx.add(x, one);
            if x.is_zero() || y.is_zero() {
                return None;
            }
            let t = ctx.sub(ctx.sub(x, one), ctx.div(u, x).ok()?);
            Some(ctx.add(t, ctx.div(v, y).ok()?))
        })
        .collect();
    images.sort_unstable();
    images.dedup();
    images.len() as u64
}

fn first_failure<F>(ctx: &ExtensionContext, mut check: F) -> Option<alloc::string::String>
where
    F: FnMut(CycloParams) -> core::result::Result<(), alloc::string::String>,
{
    CycloParams::all(ctx)
        .find_map(|cell| check(cell).err().map(|msg| format!("{:?}: {}", cell, msg)))
}

/// Checks of the decomposition on a context with odd prime `r`; the `r = 3`
/// structure checks are added when they apply.
pub fn property_suite(ctx: &ExtensionContext, limits: &Limits) -> Vec<PropertyCheck> {
    let ell = ctx.r();
    let q = ctx.q();
    let mut out = Vec::new();
    let mut decompositions = Vec::new();
    let mut failure = None;
    for cell in CycloParams::all(ctx) {
        match cyclotomic_by_ell(ctx, cell, limits) {
            Ok(d) => decompositions.push((cell, d)),
            Err(err) => {
                failure = Some(format!("{:?}: {}", cell, err));
                break;
            }
        }
    }
    if let Some(msg) = failure {
        out.push(PropertyCheck {
            name: "decomposition evaluates",
            counterexample: Some(msg),
        });
        return out;
    }
    let find = |f: &dyn Fn(CycloParams, &EllDecomposition) -> Option<alloc::string::String>| {
        decompositions
            .iter()
            .find_map(|(cell, d)| f(*cell, d).map(|msg| format!("{:?}: {}", cell, msg)))
    };

    out.push(PropertyCheck {
        name: "T + ℓ I equals the brute-force count",
        counterexample: find(&|cell, d| {
            let truth = count_by_norm(ctx, cell);
            (d.total != truth).then(|| format!("total {} vs {}", d.total, truth))
        }),
    });
    out.push(PropertyCheck {
        name: "T and I within their bounds",
        counterexample: find(&|_, d| {
            let t_max = if ctx.p() == ell { 1 } else { ell as u64 - 1 };
            if d.t_count > t_max {
                return Some(format!("#T = {}", d.t_count));
            }
            ((d.i_count as u128) > (q as u128).pow(ell - 2)).then(|| format!("#I = {}", d.i_count))
        }),
    });
    if ctx.p() == ell {
        out.push(PropertyCheck {
            name: "T is a single point exactly when 1 + u - v = 0",
            counterexample: find(&|cell, d| {
                let (u, v) = targets(ctx, cell);
                let collapsed = ctx.sub(ctx.add(ctx.one(), u), v).is_zero();
                (d.t_count != collapsed as u64).then(|| format!("#T = {}", d.t_count))
            }),
        });
    }
    if ell != 3 {
        return out;
    }

    let i_max = (2 * q).div_ceil(3);
    out.push(PropertyCheck {
        name: "T_3 classification matches enumeration",
        counterexample: find(&|cell, d| {
            let (case, count) = classify_t3(ctx, cell);
            (count != d.t_count)
                .then(|| format!("{:?} predicts {}, counted {}", case, count, d.t_count))
        }),
    });
    out.push(PropertyCheck {
        name: "resultant closed form equals Sylvester determinant",
        counterexample: first_failure(ctx, |cell| {
            let (a, b) = r3_pair(ctx, cell);
            let closed = resultant_r3(ctx, cell);
            let det = resultant_sylvester(ctx, &a, &b);
            if closed != det {
                return Err(format!("{:?} vs {:?}", ctx.coeffs(closed), ctx.coeffs(det)));
            }
            let common = poly::degree(ctx, &poly::gcd(ctx, &a, &b)).unwrap_or(0) > 0;
            if common != closed.is_zero() {
                return Err(format!(
                    "common factor {} but resultant {:?}",
                    common,
                    ctx.coeffs(closed)
                ));
            }
            Ok(())
        }),
    });
    out.push(PropertyCheck {
        name: "q - #Im φ equals #I_3",
        counterexample: find(&|cell, d| {
            let image = image_count_phi(ctx, cell);
            if image > q - 2 || image < (q - 2).div_ceil(3) {
                return Some(format!("image size {}", image));
            }
            (q - image != d.i_count).then(|| format!("q - {} vs #I = {}", image, d.i_count))
        }),
    });
    out.push(PropertyCheck {
        name: "r = 3 sandwich bounds",
        counterexample: find(&|_, d| {
            let ok = (2..=i_max).contains(&d.i_count)
                && d.t_count + 6 <= d.total
                && d.total <= d.t_count + 3 * i_max
                && (6..=2 * q + 4).contains(&d.total);
            (!ok).then(|| format!("{:?}", d))
        }),
    });
    out
}
