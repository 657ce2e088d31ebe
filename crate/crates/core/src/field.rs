//! The tower `F_p ⊂ F_q ⊂ F_{q^r}` realised as `F_p[X]/(f)`.
//!
//! Elements are stored as the base-`p` integer `sum c_i p^i` of their
//! coefficient vector, so the derived ordering on [`FieldElement`] is the
//! "smallest coefficient vector" order used for every deterministic choice
//! (modulus, generator). Multiplication goes through exponent/logarithm
//! tables relative to the fixed generator `ω`, addition through a Zech
//! logarithm table. The schoolbook polynomial route is kept alongside as an
//! independent reference.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::algebra::{self, gcd, poly, FieldOps, PrimeField};
use crate::{Error, Limits, Result};

const NONE: u32 = u32::MAX;

/// An element of `F_{q^r}`, identified with its coefficient vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    /// `sum c_i p^i` over the coefficient vector.
    pub fn encoding(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Lexicographically smallest monic irreducible polynomial of degree `d`
/// over `F_p`, where candidates are ordered by the base-`p` integer of their
/// non-leading coefficients (constant term least significant).
pub fn find_irreducible(p: u32, d: u32) -> Result<Vec<u32>> {
    let field = PrimeField::new(p)?;
    if d == 0 {
        return Err(Error::InvalidParameters("degree must be at least 1".into()));
    }
    let mut low = vec![0u32; d as usize];
    loop {
        let mut f = low.clone();
        f.push(1);
        if poly::is_irreducible(&field, &f, p as u64) {
            return Ok(f);
        }
        // odometer increment, constant term first
        let mut i = 0;
        loop {
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
            i += 1;
            if i == low.len() {
                unreachable!("an irreducible polynomial of every degree exists");
            }
        }
    }
}

/// The arithmetic environment for `F_{q^r}` with a fixed generator `ω`.
///
/// Immutable after [`build_context`] returns.
#[derive(Clone, Debug)]
pub struct ExtensionContext {
    p: u32,
    n: u32,
    r: u32,
    degree: u32,
    q: u64,
    size: u64,
    k: u64,
    modulus: Vec<u32>,
    omega: FieldElement,
    canonical_omega: FieldElement,
    norm_target: u64,
    prime_field: PrimeField,
    p_powers: Vec<u32>,
    // exp[j] = ω^j for j in [0, 2(q^r - 1))
    exp: Vec<u32>,
    // log[x] = dlog of x, NONE for zero
    log: Vec<u32>,
    // zech[m] = log(1 + ω^m), NONE when 1 + ω^m = 0
    zech: Vec<u32>,
    enumeration_cap: u64,
}

/// Builds `F_{q^r} = F_p[X]/(f)` with `q = p^n`.
///
/// Without `target_norm` the generator `ω` is the smallest element of order
/// `q^r - 1`. With `target_norm = t` it is the smallest generator whose norm
/// `ω^k` equals `g_t`: the integer `t` when `q` is prime, otherwise
/// `(ω̂^k)^t` for the default generator `ω̂`.
pub fn build_context(
    p: u32,
    n: u32,
    r: u32,
    target_norm: Option<u64>,
    limits: &Limits,
) -> Result<ExtensionContext> {
    let prime_field = PrimeField::new(p)?;
    if n == 0 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    if r < 2 {
        return Err(Error::InvalidParameters("r must be at least 2".into()));
    }
    let degree = n
        .checked_mul(r)
        .ok_or_else(|| Error::InvalidParameters("degree overflow".into()))?;
    let size = algebra::checked_pow(p as u64, degree).unwrap_or(u128::MAX);
    let cap = (limits.enumeration as u128).min(u32::MAX as u128);
    if size > cap {
        return Err(Error::SizeCapExceeded {
            what: "field size q^r",
            size,
            cap,
        });
    }
    let size = size as u64;
    let q = (p as u64).pow(n);
    let n_units = size - 1;
    let k = n_units / (q - 1);

    let modulus = find_irreducible(p, degree)?;
    let mut p_powers = Vec::with_capacity(degree as usize + 1);
    let mut acc = 1u64;
    for _ in 0..=degree {
        p_powers.push(acc as u32);
        acc = acc.saturating_mul(p as u64).min(u32::MAX as u64);
    }

    let mut ctx = ExtensionContext {
        p,
        n,
        r,
        degree,
        q,
        size,
        k,
        modulus,
        omega: FieldElement(0),
        canonical_omega: FieldElement(0),
        norm_target: 1,
        prime_field,
        p_powers,
        exp: Vec::new(),
        log: Vec::new(),
        zech: Vec::new(),
        enumeration_cap: limits.enumeration,
    };

    let factors = algebra::prime_factors(n_units);
    let one = ctx.one();
    let canonical = (1..size as u32)
        .map(FieldElement)
        .find(|&x| {
            factors
                .iter()
                .all(|&l| ctx.pow_schoolbook(x, n_units / l) != one)
        })
        .expect("the multiplicative group is cyclic");
    ctx.canonical_omega = canonical;
    ctx.omega = canonical;
    ctx.build_tables();
    ctx.norm_target = ctx.norm_index_of_canonical(ctx.norm(canonical));

    if let Some(t) = target_norm {
        ctx.rebase_to_norm_target(t)?;
    }
    Ok(ctx)
}

impl ExtensionContext {
    fn build_tables(&mut self) {
        let n_units = (self.size - 1) as usize;
        let mut exp = vec![0u32; 2 * n_units];
        let mut log = vec![NONE; self.size as usize];
        let mut x = self.one();
        for j in 0..n_units {
            exp[j] = x.0;
            exp[j + n_units] = x.0;
            debug_assert_eq!(log[x.0 as usize], NONE, "generator order too small");
            log[x.0 as usize] = j as u32;
            x = self.mul_schoolbook(x, self.omega);
        }
        self.exp = exp;
        self.log = log;
        self.build_zech();
    }

    fn build_zech(&mut self) {
        let n_units = (self.size - 1) as usize;
        let one = self.one();
        self.zech = (0..n_units)
            .map(|m| {
                let s = self.add_digits(one, FieldElement(self.exp[m]));
                self.log[s.0 as usize]
            })
            .collect();
    }

    fn rebase_to_norm_target(&mut self, t: u64) -> Result<()> {
        let e = self.q - 1;
        let g_t = if self.n == 1 {
            if t == 0 || t >= self.p as u64 {
                return Err(Error::InvalidNormTarget(t));
            }
            self.from_int(t)
        } else {
            self.omega_pow(self.k.wrapping_mul(t % e))
        };
        // g_t = ĝ^s must generate F_q^x
        let s = self.log[g_t.0 as usize] as u64 / self.k;
        if gcd(s, e) != 1 {
            return Err(Error::InvalidNormTarget(t));
        }
        let n_units = self.size - 1;
        let k = self.k;
        let chosen = (1..self.size as u32)
            .map(FieldElement)
            .find(|&x| {
                let l = self.log[x.0 as usize] as u64;
                gcd(l, n_units) == 1 && self.exp[((l * k) % n_units) as usize] == g_t.0
            })
            .ok_or(Error::InvalidNormTarget(t))?;
        let l = self.log[chosen.0 as usize] as u64;
        let old_exp = core::mem::take(&mut self.exp);
        let nu = n_units as usize;
        let mut exp = vec![0u32; 2 * nu];
        let mut log = vec![NONE; self.size as usize];
        for j in 0..nu {
            let v = old_exp[((j as u64 * l) % n_units) as usize];
            exp[j] = v;
            exp[j + nu] = v;
            log[v as usize] = j as u32;
        }
        self.exp = exp;
        self.log = log;
        self.omega = chosen;
        self.norm_target = if self.n == 1 { t } else { t % e };
        self.build_zech();
        Ok(())
    }

    /// Index `t` such that `g_t = z` for a generator `z` of `F_q^x`, in the
    /// naming used by `target_norm`.
    fn norm_index_of_canonical(&self, z: FieldElement) -> u64 {
        if self.n == 1 {
            z.0 as u64
        } else {
            // tables are relative to the canonical generator at this point
            self.log[z.0 as usize] as u64 / self.k
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `n * r`, the degree of the modulus over `F_p`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q^r`.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// `(q^r - 1) / (q - 1)`.
    pub fn k(&self) -> u64 {
        self.k
    }

    /// `q - 1`.
    pub fn e(&self) -> u64 {
        self.q - 1
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn omega(&self) -> FieldElement {
        self.omega
    }

    /// The default generator (smallest element of full order).
    pub fn canonical_omega(&self) -> FieldElement {
        self.canonical_omega
    }

    /// The `t` with `ω^k = g_t`; feeding it back as `target_norm`
    /// reproduces the same cosets.
    pub fn norm_target(&self) -> u64 {
        self.norm_target
    }

    pub fn enumeration_cap(&self) -> u64 {
        self.enumeration_cap
    }

    pub fn prime_field(&self) -> PrimeField {
        self.prime_field
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// `-1`.
    pub fn minus_one(&self) -> FieldElement {
        FieldElement(self.p - 1)
    }

    /// The image of the integer `c` in `F_p ⊂ F_{q^r}`.
    pub fn from_int(&self, c: u64) -> FieldElement {
        FieldElement((c % self.p as u64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.degree as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidParameters(format!(
                "coefficient vector {:?} is not reduced for degree {} over F_{}",
                coeffs, self.degree, self.p
            )));
        }
        Ok(FieldElement(
            coeffs
                .iter()
                .zip(&self.p_powers)
                .map(|(&c, &w)| c * w)
                .sum(),
        ))
    }

    pub fn from_encoding(&self, encoding: u32) -> Result<FieldElement> {
        if encoding as u64 >= self.size {
            return Err(Error::InvalidParameters(format!(
                "encoding {} outside a field of size {}",
                encoding, self.size
            )));
        }
        Ok(FieldElement(encoding))
    }

    /// Coefficient vector of length `n * r`, constant term first.
    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        let mut v = x.0;
        (0..self.degree)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    /// All `q^r` elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size as u32).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.size as u32).map(FieldElement)
    }

    /// `ω^j` for any `j` (reduced mod `q^r - 1`).
    pub fn omega_pow(&self, j: u64) -> FieldElement {
        FieldElement(self.exp[(j % (self.size - 1)) as usize])
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.0 == 0 {
            return y;
        }
        if y.0 == 0 {
            return x;
        }
        let n_units = self.zech.len() as u32;
        let i = self.log[x.0 as usize];
        let j = self.log[y.0 as usize];
        let m = if j >= i { j - i } else { j + n_units - i };
        match self.zech[m as usize] {
            NONE => FieldElement(0),
            z => FieldElement(self.exp[(i + z) as usize]),
        }
    }

    /// Coefficient-wise addition; the reference route behind the Zech table.
    pub fn add_digits(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(x.0 ^ y.0);
        }
        let (mut a, mut b) = (x.0, y.0);
        let mut out = 0u32;
        for &w in &self.p_powers[..self.degree as usize] {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * w;
            a /= self.p;
            b /= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        if self.p == 2 || x.0 == 0 {
            return x;
        }
        let mut a = x.0;
        let mut out = 0u32;
        for &w in &self.p_powers[..self.degree as usize] {
            let c = a % self.p;
            out += ((self.p - c) % self.p) * w;
            a /= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.0 == 0 || y.0 == 0 {
            return FieldElement(0);
        }
        let i = self.log[x.0 as usize] as usize;
        let j = self.log[y.0 as usize] as usize;
        FieldElement(self.exp[i + j])
    }

    /// `x^e` by square-and-multiply.
    pub fn pow(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// `x^e` for an arbitrary-precision exponent.
    pub fn pow_big(&self, x: FieldElement, e: &BigUint) -> FieldElement {
        if x.0 == 0 {
            return if e.bits() == 0 { self.one() } else { x };
        }
        // x^(q^r - 1) = 1 for x != 0
        let reduced = (e % (self.size - 1)).to_u64().expect("reduced below q^r");
        if reduced == 0 && e.bits() > 0 {
            return self.one();
        }
        self.pow(x, reduced)
    }

    /// `x^(-1)`, computed as `x^(q^r - 2)`.
    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(x, self.size - 2))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// Product reduced modulo `f` by polynomial long division.
    pub fn mul_schoolbook(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let field = &self.prime_field;
        let prod = poly::mul_mod(field, &self.coeffs(x), &self.coeffs(y), &self.modulus);
        self.from_coeffs(&prod).expect("reduced product")
    }

    pub fn pow_schoolbook(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_schoolbook(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_schoolbook(base, base);
            }
        }
        acc
    }

    /// Relative norm to `F_q`: `x^k`.
    pub fn norm(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.k)
    }

    /// `x ↦ x^q`.
    pub fn frobenius(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.q)
    }

    /// Absolute trace of `x ∈ F_{p^m}` down to `F_p`, as an integer in `[0, p)`.
    pub fn trace_to_prime(&self, x: FieldElement, m: u32) -> Result<u32> {
        let mut conj = x;
        let mut sum = self.zero();
        for _ in 0..m {
            sum = self.add(sum, conj);
            conj = self.pow(conj, self.p as u64);
        }
        if conj != x {
            return Err(Error::NotInSubfield { degree: m });
        }
        debug_assert!(sum.0 < self.p, "trace lies in the prime field");
        Ok(sum.0)
    }

    /// The unique `j ∈ [0, q^r - 2]` with `ω^j = x`.
    pub fn dlog(&self, x: FieldElement) -> Result<u64> {
        match self.log.get(x.0 as usize) {
            Some(&l) if l != NONE => Ok(l as u64),
            Some(_) => Err(Error::ZeroArgument),
            None => Err(Error::InvalidParameters(format!(
                "encoding {} outside the field",
                x.0
            ))),
        }
    }

    pub fn subfield(&self) -> SubfieldView<'_> {
        SubfieldView::new(self)
    }
}

impl FieldOps for ExtensionContext {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        ExtensionContext::add(self, x, y)
    }

    fn neg(&self, x: FieldElement) -> FieldElement {
        ExtensionContext::neg(self, x)
    }

    fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        ExtensionContext::sub(self, x, y)
    }

    fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        ExtensionContext::mul(self, x, y)
    }

    fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        ExtensionContext::inv(self, x)
    }
}

/// The copy of `F_q` inside `F_{q^r}`, generated by `g = ω^k`.
#[derive(Clone, Debug)]
pub struct SubfieldView<'a> {
    ctx: &'a ExtensionContext,
    // powers[j] = g^j for j in [0, q-2]
    powers: Vec<FieldElement>,
}

impl<'a> SubfieldView<'a> {
    fn new(ctx: &'a ExtensionContext) -> Self {
        let powers = (0..ctx.e()).map(|j| ctx.omega_pow(j * ctx.k())).collect();
        SubfieldView { ctx, powers }
    }

    pub fn context(&self) -> &'a ExtensionContext {
        self.ctx
    }

    pub fn generator(&self) -> FieldElement {
        self.powers[if self.powers.len() > 1 { 1 } else { 0 }]
    }

    /// `g^j`, reduced mod `q - 1`.
    pub fn power(&self, j: u64) -> FieldElement {
        self.powers[(j % self.ctx.e()) as usize]
    }

    /// Nonzero elements, indexed by their exponent with respect to `g`.
    pub fn units(&self) -> &[FieldElement] {
        &self.powers
    }

    /// All `q` elements: zero first, then `g^0, g^1, ...`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        core::iter::once(FieldElement(0)).chain(self.powers.iter().copied())
    }

    /// Exponent of `z` with respect to `g`, or `None` if `z` is zero or lies
    /// outside `F_q`.
    pub fn small_dlog(&self, z: FieldElement) -> Option<u64> {
        let l = self.ctx.dlog(z).ok()?;
        if l % self.ctx.k() == 0 {
            Some(l / self.ctx.k())
        } else {
            None
        }
    }

    pub fn contains(&self, z: FieldElement) -> bool {
        z.is_zero() || self.small_dlog(z).is_some()
    }

    pub fn len(&self) -> usize {
        self.powers.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}
