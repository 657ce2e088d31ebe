//! Walk counting in the Cayley digraph on `F_q^x × F_q^x`.
//!
//! From `(u, v)` there is an edge to `(ux, v(1-x))` for each
//! `x ∈ F_q \ {0, 1}`. The number of `r`-step walks from `(1, 1)` to `(u, v)`
//! is `W_{u,v}(q, r)`, and
//!
//! ```text
//! (a,b)_{q-1} = (q^r + (-1)^r (q-2)^r - 2)/(q-1)^2 + (-1)^{r-1} W_{(-1)^r ω^{ak}, ω^{bk}}(q, r)
//! ```
//!
//! where `(-1)^r ω^{ak}` is formed inside the field.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::is_prime;
use crate::{
    closed_forms, CycloParams, Error, ExtensionContext, FieldElement, PropertyCheck, Result,
};

/// How vertices are numbered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexOrdering {
    /// `ν(u, v) = (q-1) dlog(u) + dlog(v)` with logarithms to base `ω^k`.
    Canonical,
    /// Prime `q` only: `ν(s, t) = (q-1)(s-1) + t - 1` for integers `1 <= s, t <= q-1`.
    Natural,
}

impl VertexOrdering {
    pub fn name(self) -> &'static str {
        match self {
            VertexOrdering::Canonical => "canonical",
            VertexOrdering::Natural => "natural",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CayleyGraph {
    q: u64,
    ordering: VertexOrdering,
    vertices: Vec<(FieldElement, FieldElement)>,
    // position[(q-1) * dlog(u) + dlog(v)] = ν(u, v)
    position: Vec<usize>,
    connection: Vec<(FieldElement, FieldElement)>,
    successors: Vec<Vec<usize>>,
}

impl CayleyGraph {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn ordering(&self) -> VertexOrdering {
        self.ordering
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Vertex `(u, v)` at position `ν`.
    pub fn vertex(&self, index: usize) -> (FieldElement, FieldElement) {
        self.vertices[index]
    }

    /// The pairs `(x, 1 - x)` for `x ∈ F_q \ {0, 1}`.
    pub fn connection_set(&self) -> &[(FieldElement, FieldElement)] {
        &self.connection
    }

    pub fn successors(&self, index: usize) -> &[usize] {
        &self.successors[index]
    }

    /// `ν(u, v)`; `None` unless both lie in `F_q^x`.
    pub fn index_of(
        &self,
        ctx: &ExtensionContext,
        u: FieldElement,
        v: FieldElement,
    ) -> Option<usize> {
        let sub = ctx.subfield();
        let (du, dv) = (sub.small_dlog(u)?, sub.small_dlog(v)?);
        Some(self.position[(du * (self.q - 1) + dv) as usize])
    }

    /// 0/1 adjacency as text: a header line naming the ordering, then one
    /// space-separated row per line.
    pub fn adjacency_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# adjacency q={} vertices={} ordering={}",
            self.q,
            self.vertex_count(),
            self.ordering.name()
        );
        let n = self.vertex_count();
        for i in 0..n {
            let mut row = vec!['0'; n];
            for &j in &self.successors[i] {
                row[j] = '1';
            }
            let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

pub fn build_graph(ctx: &ExtensionContext, ordering: VertexOrdering) -> Result<CayleyGraph> {
    let q = ctx.q();
    let e = q - 1;
    let sub = ctx.subfield();
    let units: Vec<FieldElement> = match ordering {
        VertexOrdering::Canonical => sub.units().to_vec(),
        VertexOrdering::Natural => {
            if ctx.n() != 1 || !is_prime(q) {
                return Err(Error::NaturalOrderingUnavailable { q });
            }
            (1..q).map(|s| ctx.from_int(s)).collect()
        }
    };
    let mut vertices = Vec::with_capacity((e * e) as usize);
    let mut position = vec![0usize; (e * e) as usize];
    for &u in &units {
        for &v in &units {
            let key = sub.small_dlog(u).expect("unit") * e + sub.small_dlog(v).expect("unit");
            position[key as usize] = vertices.len();
            vertices.push((u, v));
        }
    }
    let one = ctx.one();
    let connection: Vec<(FieldElement, FieldElement)> = sub
        .elements()
        .filter(|&x| !x.is_zero() && x != one)
        .map(|x| (x, ctx.sub(one, x)))
        .collect();
    let successors = vertices
        .iter()
        .map(|&(u, v)| {
            connection
                .iter()
                .map(|&(x, y)| {
                    let key = sub.small_dlog(ctx.mul(u, x)).expect("unit") * e
                        + sub.small_dlog(ctx.mul(v, y)).expect("unit");
                    position[key as usize]
                })
                .collect()
        })
        .collect();
    Ok(CayleyGraph {
        q,
        ordering,
        vertices,
        position,
        connection,
        successors,
    })
}

/// Square matrix of nonnegative big integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkMatrix {
    dim: usize,
    entries: Vec<BigUint>,
}

impl WalkMatrix {
    pub fn adjacency(graph: &CayleyGraph) -> WalkMatrix {
        let dim = graph.vertex_count();
        let mut entries = vec![BigUint::zero(); dim * dim];
        for i in 0..dim {
            for &j in graph.successors(i) {
                entries[i * dim + j] += 1u32;
            }
        }
        WalkMatrix { dim, entries }
    }

    pub fn identity(dim: usize) -> WalkMatrix {
        let mut entries = vec![BigUint::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = BigUint::one();
        }
        WalkMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[BigUint] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn row_sums(&self) -> Vec<BigUint> {
        (0..self.dim).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<BigUint> {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self.entry(i, j)).sum())
            .collect()
    }

    pub fn multiply(&self, other: &WalkMatrix) -> WalkMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut entries = vec![BigUint::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let a = self.entry(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.entry(l, j);
                    if !b.is_zero() {
                        entries[i * n + j] += a * b;
                    }
                }
            }
        }
        WalkMatrix { dim: n, entries }
    }

    /// `self^exp` by repeated squaring.
    pub fn power(&self, exp: u32) -> WalkMatrix {
        let mut result = WalkMatrix::identity(self.dim);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.multiply(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base);
            }
        }
        result
    }
}

/// Number of `r`-step walks from `source` to every vertex, by `r` successive
/// vector-matrix products.
pub fn walk_row(graph: &CayleyGraph, r: u32, source: usize) -> Vec<BigUint> {
    let n = graph.vertex_count();
    let mut current = vec![BigUint::zero(); n];
    current[source] = BigUint::one();
    for _ in 0..r {
        let mut next = vec![BigUint::zero(); n];
        for (i, count) in current.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            for &j in graph.successors(i) {
                next[j] += count;
            }
        }
        current = next;
    }
    current
}

pub fn walk_count(graph: &CayleyGraph, r: u32, source: usize, target: usize) -> BigUint {
    walk_row(graph, r, source).swap_remove(target)
}

fn unit_pair_index(
    ctx: &ExtensionContext,
    graph: &CayleyGraph,
    u: FieldElement,
    v: FieldElement,
) -> Result<usize> {
    graph.index_of(ctx, u, v).ok_or_else(|| {
        Error::InvalidParameters(format!(
            "walk endpoint ({:?}, {:?}) is not in F_q^x x F_q^x",
            ctx.coeffs(u),
            ctx.coeffs(v)
        ))
    })
}

/// `W_{u,v}(q, r)`: walks from `(1, 1)` to `(u, v)`.
pub fn walk_number(
    ctx: &ExtensionContext,
    graph: &CayleyGraph,
    u: FieldElement,
    v: FieldElement,
    r: u32,
) -> Result<BigUint> {
    let source = unit_pair_index(ctx, graph, ctx.one(), ctx.one())?;
    let target = unit_pair_index(ctx, graph, u, v)?;
    Ok(walk_count(graph, r, source, target))
}

/// `W_{u,v}(q, r)` by enumerating all `(q-2)^r` tuples `(x_1, ..., x_r)`.
pub fn walk_number_by_enumeration(
    ctx: &ExtensionContext,
    u: FieldElement,
    v: FieldElement,
    r: u32,
) -> Result<u64> {
    let one = ctx.one();
    let choices: Vec<FieldElement> = ctx
        .subfield()
        .elements()
        .filter(|&x| !x.is_zero() && x != one)
        .collect();
    let total = (choices.len() as u128).checked_pow(r).unwrap_or(u128::MAX);
    if total > ctx.enumeration_cap() as u128 {
        return Err(Error::SizeCapExceeded {
            what: "tuple count (q-2)^r",
            size: total,
            cap: ctx.enumeration_cap() as u128,
        });
    }
    if choices.is_empty() {
        return Ok(0);
    }
    let mut digits = vec![0usize; r as usize];
    let mut count = 0;
    loop {
        let (mut pu, mut pv) = (one, one);
        for &d in &digits {
            pu = ctx.mul(pu, choices[d]);
            pv = ctx.mul(pv, ctx.sub(one, choices[d]));
        }
        if pu == u && pv == v {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(count);
            }
            digits[i] += 1;
            if digits[i] < choices.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Numerator `q^r + (-1)^r (q-2)^r - 2` of the leading term.
pub fn leading_numerator(q: u64, r: u32) -> BigInt {
    let qr = BigInt::from(q).pow(r);
    let tail = BigInt::from(q - 2).pow(r);
    let signed = if r.is_multiple_of(2) { tail } else { -tail };
    qr + signed - 2
}

/// Leading term divided exactly by `(q-1)^2`.
pub fn leading_term(q: u64, r: u32) -> Result<BigInt> {
    let num = leading_numerator(q, r);
    let den = BigInt::from(q - 1).pow(2);
    if !(&num % &den).is_zero() {
        return Err(Error::NonIntegerLeadingTerm);
    }
    Ok(num / den)
}

/// Evaluates every cell of a context from a single walk row out of `(1, 1)`.
#[derive(Clone, Debug)]
pub struct DigraphEvaluator<'a> {
    ctx: &'a ExtensionContext,
    graph: &'a CayleyGraph,
    row: Vec<BigUint>,
    lead: BigInt,
}

impl<'a> DigraphEvaluator<'a> {
    pub fn new(ctx: &'a ExtensionContext, graph: &'a CayleyGraph) -> Result<Self> {
        if graph.q() != ctx.q() {
            return Err(Error::InvalidParameters(format!(
                "graph for q = {} used with q = {}",
                graph.q(),
                ctx.q()
            )));
        }
        let lead = leading_term(ctx.q(), ctx.r())?;
        let source = unit_pair_index(ctx, graph, ctx.one(), ctx.one())?;
        let row = walk_row(graph, ctx.r(), source);
        Ok(DigraphEvaluator {
            ctx,
            graph,
            row,
            lead,
        })
    }

    pub fn leading_term(&self) -> &BigInt {
        &self.lead
    }

    /// Walk endpoint `((-1)^r ω^{ak}, ω^{bk})` for a cell.
    pub fn endpoint(&self, params: CycloParams) -> (FieldElement, FieldElement) {
        let ctx = self.ctx;
        let u = ctx.omega_pow(params.a * ctx.k());
        let u = if ctx.r() % 2 == 1 { ctx.neg(u) } else { u };
        (u, ctx.omega_pow(params.b * ctx.k()))
    }

    /// `W` at the endpoint of the cell.
    pub fn walks(&self, params: CycloParams) -> &BigUint {
        let (u, v) = self.endpoint(params);
        let idx = self
            .graph
            .index_of(self.ctx, u, v)
            .expect("endpoint is a unit pair");
        &self.row[idx]
    }

    pub fn value(&self, params: CycloParams) -> Result<u64> {
        let w = BigInt::from(self.walks(params).clone());
        let total = if self.ctx.r() % 2 == 1 {
            &self.lead + w
        } else {
            &self.lead - w
        };
        if total.is_negative() {
            return Err(Error::TheoremViolation {
                a: params.a,
                b: params.b,
                detail: format!("digraph formula gave negative value {}", total),
            });
        }
        total.to_u64().ok_or(Error::SizeCapExceeded {
            what: "cyclotomic number",
            size: u128::MAX,
            cap: u64::MAX as u128,
        })
    }
}

/// `(a,b)_{q-1}` from the walk formula. For `q = 2` the graph has no edges
/// and the closed form is used.
pub fn cyclotomic_by_digraph(
    ctx: &ExtensionContext,
    graph: &CayleyGraph,
    params: CycloParams,
) -> Result<u64> {
    if ctx.q() == 2 {
        return Ok(closed_forms::q2_value(ctx.r()));
    }
    DigraphEvaluator::new(ctx, graph)?.value(params)
}

/// Which of the three walk inequalities applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalfKCriterion {
    /// `2(q-1)^2 W <= (q-3)q^r + 2(q-2)^r + q^2 - 3q + 6`
    OddR,
    /// `2(q-1)^2 W >= -(q-3)q^r + 2(q-2)^r + q - 5`
    EvenROddQ,
    /// `2(q-1)^2 W >= -(q-3)q^r + 2(q-2)^r - q^2 + 3q - 6`
    EvenREvenQ,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfKReport {
    pub params: CycloParams,
    pub criterion: HalfKCriterion,
    /// `2(q-1)^2 W`
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub criterion_holds: bool,
    pub value: u64,
    pub half_k: u64,
    pub direct_holds: bool,
}

impl HalfKReport {
    /// The inequality is a `>=` with a nonpositive right-hand side.
    pub fn automatic(&self) -> bool {
        self.criterion != HalfKCriterion::OddR && !self.rhs.is_positive()
    }

    pub fn agrees(&self) -> bool {
        self.criterion_holds == self.direct_holds
    }
}

pub fn check_halfk_criteria(
    ctx: &ExtensionContext,
    graph: &CayleyGraph,
    params: CycloParams,
) -> Result<HalfKReport> {
    let evaluator = DigraphEvaluator::new(ctx, graph)?;
    check_with(&evaluator, params)
}

fn check_with(evaluator: &DigraphEvaluator<'_>, params: CycloParams) -> Result<HalfKReport> {
    let ctx = evaluator.ctx;
    let q = BigInt::from(ctx.q());
    let r = ctx.r();
    let qr = q.pow(r);
    let tail = BigInt::from(ctx.q() - 2).pow(r) * 2;
    let lhs = BigInt::from(ctx.e() * ctx.e() * 2) * BigInt::from(evaluator.walks(params).clone());
    let q3 = &q - BigInt::from(3);
    // q^2 - 3q + 6
    let quad = &q * &q3 + BigInt::from(6);
    let (criterion, rhs) = if r % 2 == 1 {
        (HalfKCriterion::OddR, &q3 * &qr + tail + quad)
    } else if ctx.q() % 2 == 1 {
        (
            HalfKCriterion::EvenROddQ,
            -(&q3 * &qr) + tail + &q - BigInt::from(5),
        )
    } else {
        (HalfKCriterion::EvenREvenQ, -(&q3 * &qr) + tail - quad)
    };
    let criterion_holds = match criterion {
        HalfKCriterion::OddR => lhs <= rhs,
        _ => lhs >= rhs,
    };
    let value = evaluator.value(params)?;
    let half_k = ctx.k().div_ceil(2);
    Ok(HalfKReport {
        params,
        criterion,
        lhs,
        rhs,
        criterion_holds,
        value,
        half_k,
        direct_holds: value <= half_k,
    })
}

/// Half-k reports for every cell.
pub fn halfk_reports(ctx: &ExtensionContext, graph: &CayleyGraph) -> Result<Vec<HalfKReport>> {
    let evaluator = DigraphEvaluator::new(ctx, graph)?;
    CycloParams::all(ctx)
        .map(|cell| check_with(&evaluator, cell))
        .collect()
}

/// Structural checks of the digraph and its walk counts on one context.
pub fn property_suite(ctx: &ExtensionContext) -> Vec<PropertyCheck> {
    let mut out = Vec::new();
    let graph = match build_graph(ctx, VertexOrdering::Canonical) {
        Ok(g) => g,
        Err(err) => {
            out.push(PropertyCheck {
                name: "digraph construction",
                counterexample: Some(format!("{}", err)),
            });
            return out;
        }
    };
    let q = ctx.q();
    let degree = BigUint::from(q - 2);
    let adjacency = WalkMatrix::adjacency(&graph);
    let regular = adjacency.row_sums().iter().all(|s| *s == degree)
        && adjacency.column_sums().iter().all(|s| *s == degree);
    out.push(PropertyCheck {
        name: "adjacency is (q-2)-regular in and out",
        counterexample: (!regular).then(|| format!("q = {}", q)),
    });

    let source = graph
        .index_of(ctx, ctx.one(), ctx.one())
        .expect("(1, 1) is a vertex");
    let row = walk_row(&graph, ctx.r(), source);
    let total: BigUint = row.iter().sum();
    out.push(PropertyCheck {
        name: "walk counts sum to (q-2)^r",
        counterexample: (total != degree.pow(ctx.r())).then(|| format!("sum {}", total)),
    });

    out.push(PropertyCheck {
        name: "(q-1)^2 divides the leading numerator",
        counterexample: leading_term(q, ctx.r())
            .err()
            .map(|_| format!("numerator {}", leading_numerator(q, ctx.r()))),
    });

    if let Ok(natural) = build_graph(ctx, VertexOrdering::Natural) {
        let nsource = natural
            .index_of(ctx, ctx.one(), ctx.one())
            .expect("(1, 1) is a vertex");
        let nrow = walk_row(&natural, ctx.r(), nsource);
        let bad = (0..graph.vertex_count()).find(|&i| {
            let (u, v) = graph.vertex(i);
            nrow[natural.index_of(ctx, u, v).expect("unit pair")] != row[i]
        });
        out.push(PropertyCheck {
            name: "walk counts independent of vertex ordering",
            counterexample: bad.map(|i| format!("vertex {:?}", graph.vertex(i))),
        });
    }

    if q >= 3 {
        let checks = halfk_reports(ctx, &graph);
        out.push(PropertyCheck {
            name: "half-k walk criterion matches direct comparison",
            counterexample: match checks {
                Ok(reports) => reports.iter().find(|rep| !rep.agrees()).map(|rep| {
                    format!(
                        "{:?}: criterion {} direct {}",
                        rep.params, rep.criterion_holds, rep.direct_holds
                    )
                }),
                Err(err) => Some(format!("{}", err)),
            },
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::count_by_norm;
    use crate::{build_context, Limits};

    fn ctx(p: u32, n: u32, r: u32) -> ExtensionContext {
        build_context(p, n, r, None, &Limits::default()).unwrap()
    }

    const PRINTED_A5: [&str; 16] = [
        "0000000100100100",
        "0000001010000001",
        "0000010000011000",
        "0000100001000010",
        "0010000001000001",
        "1000000000010010",
        "0001000010000100",
        "0100000000101000",
        "0001010000000010",
        "0010000100001000",
        "0100100000000001",
        "1000001000000100",
        "0100001000010000",
        "0001100000100000",
        "1000000101000000",
        "0010010010000000",
    ];

    #[test]
    fn natural_a5_matches_printed_matrix() {
        let c = build_context(5, 1, 6, Some(2), &Limits::default()).unwrap();
        let g = build_graph(&c, VertexOrdering::Natural).unwrap();
        let a = WalkMatrix::adjacency(&g);
        for (i, line) in PRINTED_A5.iter().enumerate() {
            for (j, ch) in line.chars().enumerate() {
                assert_eq!(
                    a.entry(i, j).to_u32().unwrap(),
                    ch.to_digit(2).unwrap(),
                    "({}, {})",
                    i,
                    j
                );
            }
        }
        let text = g.adjacency_text();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().contains("ordering=natural"));
        for (line, printed) in lines.zip(PRINTED_A5) {
            assert_eq!(line.replace(' ', ""), printed);
        }
    }

    #[test]
    fn q5_r6_example() {
        let c = build_context(5, 1, 6, Some(2), &Limits::default()).unwrap();
        let g = build_graph(&c, VertexOrdering::Natural).unwrap();
        let a6 = WalkMatrix::adjacency(&g).power(6);
        assert_eq!(*a6.entry(0, 0), BigUint::from(90u32));
        assert_eq!(*a6.entry(0, 1), BigUint::from(42u32));
        assert_eq!(walk_count(&g, 6, 0, 1), BigUint::from(42u32));
        assert_eq!(leading_term(5, 6).unwrap(), BigInt::from(1022));
        let cell = |a, b| CycloParams::new(&c, a, b).unwrap();
        assert_eq!(cyclotomic_by_digraph(&c, &g, cell(0, 0)).unwrap(), 932);
        assert_eq!(cyclotomic_by_digraph(&c, &g, cell(0, 1)).unwrap(), 980);
        let canonical = build_graph(&c, VertexOrdering::Canonical).unwrap();
        assert_eq!(
            cyclotomic_by_digraph(&c, &canonical, cell(0, 0)).unwrap(),
            932
        );
    }

    #[test]
    fn small_graphs() {
        let c = ctx(3, 1, 2);
        let g = build_graph(&c, VertexOrdering::Canonical).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert!((0..4).all(|i| g.successors(i).len() == 1));
        assert_eq!(
            walk_number(&c, &g, c.one(), c.one(), 2).unwrap(),
            BigUint::one()
        );
        assert_eq!(
            walk_number_by_enumeration(&c, c.one(), c.one(), 2).unwrap(),
            1
        );
        assert_eq!(
            cyclotomic_by_digraph(&c, &g, CycloParams::new(&c, 0, 0).unwrap()).unwrap(),
            1
        );

        let c = ctx(2, 1, 5);
        let g = build_graph(&c, VertexOrdering::Natural).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert!(g.successors(0).is_empty());
        let cell = CycloParams::new(&c, 0, 0).unwrap();
        assert_eq!(cyclotomic_by_digraph(&c, &g, cell).unwrap(), 30);
        // the degenerate formula agrees with the delegated value
        assert_eq!(
            DigraphEvaluator::new(&c, &g).unwrap().value(cell).unwrap(),
            30
        );
    }

    #[test]
    fn natural_ordering_needs_prime_q() {
        let c = ctx(2, 2, 2);
        assert_eq!(
            build_graph(&c, VertexOrdering::Natural).unwrap_err(),
            Error::NaturalOrderingUnavailable { q: 4 }
        );
    }

    #[test]
    fn walks_match_enumeration() {
        for (p, n, r) in [(5, 1, 3), (2, 2, 4), (7, 1, 2), (3, 2, 3)] {
            let c = ctx(p, n, r);
            let g = build_graph(&c, VertexOrdering::Canonical).unwrap();
            for i in 0..g.vertex_count() {
                let (u, v) = g.vertex(i);
                let walks = walk_number(&c, &g, u, v, r).unwrap();
                assert_eq!(
                    walks,
                    BigUint::from(walk_number_by_enumeration(&c, u, v, r).unwrap())
                );
            }
            let a = WalkMatrix::adjacency(&g).power(r);
            let src = g.index_of(&c, c.one(), c.one()).unwrap();
            assert_eq!(a.row(src), walk_row(&g, r, src).as_slice());
        }
    }

    #[test]
    fn matches_oracle() {
        for (p, n, r) in [
            (3, 1, 3),
            (5, 1, 2),
            (2, 2, 3),
            (7, 1, 3),
            (3, 2, 2),
            (2, 3, 2),
        ] {
            let c = ctx(p, n, r);
            let g = build_graph(&c, VertexOrdering::Canonical).unwrap();
            for cell in CycloParams::all(&c) {
                assert_eq!(
                    cyclotomic_by_digraph(&c, &g, cell).unwrap(),
                    count_by_norm(&c, cell)
                );
            }
        }
    }

    #[test]
    fn halfk_criteria_agree() {
        for (p, n, r) in [
            (5, 1, 3),
            (2, 2, 3),
            (3, 1, 4),
            (5, 1, 2),
            (2, 2, 4),
            (7, 1, 3),
        ] {
            let c = ctx(p, n, r);
            let g = build_graph(&c, VertexOrdering::Canonical).unwrap();
            for rep in halfk_reports(&c, &g).unwrap() {
                assert!(rep.agrees(), "({}, {}, {}) {:?}", p, n, r, rep);
                if r % 2 == 0 {
                    assert!(rep.automatic());
                }
            }
        }
        // q = 3 with r even: the right-hand side is exactly zero
        let c = ctx(3, 1, 2);
        let g = build_graph(&c, VertexOrdering::Canonical).unwrap();
        let rep = check_halfk_criteria(&c, &g, CycloParams::new(&c, 0, 0).unwrap()).unwrap();
        assert_eq!(rep.rhs, BigInt::zero());
    }

    #[test]
    fn divisibility_of_leading_numerator() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            for r in 1..=12 {
                assert!(leading_term(q, r).is_ok(), "q = {}, r = {}", q, r);
            }
        }
    }

    #[test]
    fn suite_passes() {
        for (p, n, r) in [(3, 1, 2), (5, 1, 4), (2, 2, 3), (3, 2, 2)] {
            for check in property_suite(&ctx(p, n, r)) {
                assert!(check.passed(), "{}: {:?}", check.name, check.counterexample);
            }
        }
    }
}
