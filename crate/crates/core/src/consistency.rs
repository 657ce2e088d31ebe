//! Cross-method sweep over a grid of fields.
//!
//! Every applicable method is run on every cell of every configured context
//! and the results are compared. Applicability is derived from the context
//! and the limits, never configured.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::is_prime;
use crate::characters::{self, CharacterMethod};
use crate::closed_forms::{self, TheoremVerdict};
use crate::digraph::{self, DigraphEvaluator, VertexOrdering};
use crate::oracle::{full_table, TableMethod};
use crate::{
    build_context, prime_ell, rank, CycloParams, Error, ExtensionContext, Limits, PropertyCheck,
};

/// A family of evaluation methods as selected in a sweep configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MethodFamily {
    Oracle,
    Rank,
    Chars,
    Digraph,
    Ell,
    Closed,
}

impl MethodFamily {
    pub const ALL: [MethodFamily; 6] = [
        MethodFamily::Oracle,
        MethodFamily::Rank,
        MethodFamily::Chars,
        MethodFamily::Digraph,
        MethodFamily::Ell,
        MethodFamily::Closed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MethodFamily::Oracle => "oracle",
            MethodFamily::Rank => "rank",
            MethodFamily::Chars => "chars",
            MethodFamily::Digraph => "digraph",
            MethodFamily::Ell => "ell",
            MethodFamily::Closed => "closed",
        }
    }

    pub fn parse(name: &str) -> Option<MethodFamily> {
        MethodFamily::ALL.into_iter().find(|m| m.name() == name)
    }
}

/// A single evaluation route; the oracle contributes two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MethodName {
    OracleCoset,
    OracleNorm,
    Rank,
    Chars,
    Digraph,
    Ell,
    Closed,
}

impl MethodName {
    pub fn name(self) -> &'static str {
        match self {
            MethodName::OracleCoset => "oracle-coset",
            MethodName::OracleNorm => "oracle-norm",
            MethodName::Rank => "rank",
            MethodName::Chars => "chars",
            MethodName::Digraph => "digraph",
            MethodName::Ell => "ell",
            MethodName::Closed => "closed",
        }
    }
}

/// Rebase `ω` so that `ω^k` equals `target` on one `(p, n, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormPin {
    pub p: u32,
    pub n: u32,
    pub r: u32,
    pub target: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub triples: Vec<(u32, u32, u32)>,
    pub limits: Limits,
    pub pins: Vec<NormPin>,
    pub methods: Vec<MethodFamily>,
}

impl SweepConfig {
    /// `q ∈ {2,3,4,5,7,8,9}`, `r ∈ {2,3,4}`, plus `(3,5)` and `(5,5)`, every
    /// method family.
    pub fn default_grid() -> Self {
        let fields = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)];
        let mut triples = Vec::new();
        for (p, n) in fields {
            for r in 2..=4 {
                triples.push((p, n, r));
            }
        }
        triples.push((3, 1, 5));
        triples.push((5, 1, 5));
        SweepConfig {
            triples,
            limits: Limits::default(),
            pins: Vec::new(),
            methods: MethodFamily::ALL.to_vec(),
        }
    }

    pub fn validate(&self) -> crate::Result<()> {
        let l = &self.limits;
        if l.enumeration == 0
            || l.rank == 0
            || l.ell == 0
            || l.precision_budget.is_nan()
            || l.precision_budget <= 0.0
        {
            return Err(Error::InvalidParameters("caps must be positive".into()));
        }
        for &(p, n, r) in &self.triples {
            if !is_prime(p as u64) || n == 0 || r < 2 {
                return Err(Error::InvalidParameters(format!(
                    "invalid triple ({}, {}, {})",
                    p, n, r
                )));
            }
        }
        Ok(())
    }

    pub fn pin_for(&self, p: u32, n: u32, r: u32) -> Option<u64> {
        self.pins
            .iter()
            .find(|pin| (pin.p, pin.n, pin.r) == (p, n, r))
            .map(|pin| pin.target)
    }

    fn includes(&self, family: MethodFamily) -> bool {
        self.methods.contains(&family)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MethodValue {
    pub method: MethodName,
    pub outcome: Result<u64, Error>,
}

/// Per-cell results of one context.
#[derive(Clone, Debug, PartialEq)]
pub struct MethodReport {
    pub params: CycloParams,
    pub values: Vec<MethodValue>,
    /// All successfully computed values are identical.
    pub agreement: bool,
    pub verdict: Option<TheoremVerdict>,
}

impl MethodReport {
    pub fn errors(&self) -> impl Iterator<Item = &MethodValue> {
        self.values.iter().filter(|v| v.outcome.is_err())
    }

    pub fn value(&self) -> Option<u64> {
        self.values
            .iter()
            .find_map(|v| v.outcome.as_ref().ok().copied())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContextId {
    pub p: u32,
    pub n: u32,
    pub r: u32,
    pub q: u64,
    pub norm_target: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContextReport {
    pub context: ContextId,
    /// Methods that ran on this context.
    pub ran: Vec<MethodName>,
    /// Selected families that did not apply, with the reason.
    pub skipped: Vec<(MethodFamily, String)>,
    pub cells: Vec<MethodReport>,
    pub theorem: Option<Result<(), Error>>,
    pub properties: Vec<PropertyCheck>,
    /// Set when the context itself could not be built.
    pub error: Option<Error>,
}

impl ContextReport {
    pub fn all_agree(&self) -> bool {
        self.cells.iter().all(|c| c.agreement)
    }

    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self
                .cells
                .iter()
                .all(|c| c.agreement && c.errors().next().is_none())
            && !matches!(self.theorem, Some(Err(_)))
            && self.properties.iter().all(PropertyCheck::passed)
    }
}

/// Why a family cannot run on the context, if it cannot.
pub fn inapplicability(
    ctx: &ExtensionContext,
    limits: &Limits,
    family: MethodFamily,
) -> Option<String> {
    match family {
        MethodFamily::Oracle => (ctx.size() > limits.enumeration).then(|| {
            format!(
                "q^r = {} above enumeration cap {}",
                ctx.size(),
                limits.enumeration
            )
        }),
        MethodFamily::Rank => (ctx.k() > limits.rank)
            .then(|| format!("k = {} above rank cap {}", ctx.k(), limits.rank)),
        MethodFamily::Chars => {
            let need = characters::precision_requirement(ctx);
            (need > limits.precision_budget).then(|| {
                format!(
                    "(q-1)^2 q^(r/2) = {} above budget {}",
                    need, limits.precision_budget
                )
            })
        }
        MethodFamily::Digraph => {
            (ctx.q() < 3).then(|| String::from("q = 2 has an edgeless digraph"))
        }
        MethodFamily::Ell => {
            let r = ctx.r();
            if r < 3 || !is_prime(r as u64) {
                Some(format!("r = {} is not an odd prime", r))
            } else {
                let members = (ctx.q() as u128).pow(r - 2);
                (members > limits.ell as u128)
                    .then(|| format!("q^(r-2) = {} above cap {}", members, limits.ell))
            }
        }
        MethodFamily::Closed => (!closed_forms::closed_form_applies(ctx))
            .then(|| String::from("no closed form for q >= 4, r >= 3")),
    }
}

/// Runs the configured methods on one triple.
pub fn sweep_context(config: &SweepConfig, p: u32, n: u32, r: u32) -> ContextReport {
    let limits = &config.limits;
    let pin = config.pin_for(p, n, r);
    let ctx = match build_context(p, n, r, pin, limits) {
        Ok(ctx) => ctx,
        Err(err) => {
            return ContextReport {
                context: ContextId {
                    p,
                    n,
                    r,
                    q: (p as u64).saturating_pow(n),
                    norm_target: pin.unwrap_or(0),
                },
                ran: Vec::new(),
                skipped: Vec::new(),
                cells: Vec::new(),
                theorem: None,
                properties: Vec::new(),
                error: Some(err),
            }
        }
    };
    let mut skipped = Vec::new();
    let mut active = Vec::new();
    for family in MethodFamily::ALL {
        if !config.includes(family) {
            continue;
        }
        match inapplicability(&ctx, limits, family) {
            Some(reason) => skipped.push((family, reason)),
            None => active.push(family),
        }
    }
    let on = |f: MethodFamily| active.contains(&f);

    let tables = on(MethodFamily::Oracle).then(|| {
        (
            full_table(&ctx, TableMethod::Coset),
            full_table(&ctx, TableMethod::Norm),
        )
    });
    let chars =
        on(MethodFamily::Chars).then(|| CharacterMethod::new(&ctx, limits.precision_budget));
    let graph =
        on(MethodFamily::Digraph).then(|| digraph::build_graph(&ctx, VertexOrdering::Canonical));
    let walker = graph.as_ref().map(|g| match g {
        Ok(g) => DigraphEvaluator::new(&ctx, g),
        Err(err) => Err(err.clone()),
    });
    let theorem_verdicts =
        on(MethodFamily::Oracle).then(|| closed_forms::verify_main_theorem(&ctx));

    let mut ran = Vec::new();
    for family in &active {
        match family {
            MethodFamily::Oracle => ran.extend([MethodName::OracleCoset, MethodName::OracleNorm]),
            MethodFamily::Rank => ran.push(MethodName::Rank),
            MethodFamily::Chars => ran.push(MethodName::Chars),
            MethodFamily::Digraph => ran.push(MethodName::Digraph),
            MethodFamily::Ell => ran.push(MethodName::Ell),
            MethodFamily::Closed => ran.push(MethodName::Closed),
        }
    }

    let mut cells = Vec::new();
    if !ran.is_empty() {
        for params in CycloParams::all(&ctx) {
            let mut values = Vec::new();
            for &method in &ran {
                let outcome = match method {
                    MethodName::OracleCoset => match &tables {
                        Some((Ok(t), _)) => Ok(t.get(params)),
                        Some((Err(e), _)) => Err(e.clone()),
                        None => unreachable!(),
                    },
                    MethodName::OracleNorm => match &tables {
                        Some((_, Ok(t))) => Ok(t.get(params)),
                        Some((_, Err(e))) => Err(e.clone()),
                        None => unreachable!(),
                    },
                    MethodName::Rank => rank::cyclotomic_by_rank(&ctx, params, limits.rank),
                    MethodName::Chars => match chars.as_ref().expect("active") {
                        Ok(m) => m.value(params),
                        Err(e) => Err(e.clone()),
                    },
                    MethodName::Digraph => match walker.as_ref().expect("active") {
                        Ok(w) => w.value(params),
                        Err(e) => Err(e.clone()),
                    },
                    MethodName::Ell => {
                        prime_ell::cyclotomic_by_ell(&ctx, params, limits).map(|d| d.total)
                    }
                    MethodName::Closed => closed_forms::closed_value(&ctx, params),
                };
                values.push(MethodValue { method, outcome });
            }
            let mut computed = values.iter().filter_map(|v| v.outcome.as_ref().ok());
            let agreement = match computed.next() {
                Some(first) => computed.all(|v| v == first),
                None => true,
            };
            let verdict = match &theorem_verdicts {
                Some(Ok(vs)) => vs.iter().find(|v| v.params == params).copied(),
                _ => None,
            };
            cells.push(MethodReport {
                params,
                values,
                agreement,
                verdict,
            });
        }
    }

    let mut properties = Vec::new();
    if on(MethodFamily::Oracle) {
        let bound = closed_forms::half_k(ctx.q(), ctx.r());
        properties.push(PropertyCheck {
            name: "ceil(k/2) branch formula equals integer ceiling",
            counterexample: match bound {
                Ok(b) if b.value == b.k.div_ceil(2) && b.k == ctx.k() as u128 => None,
                Ok(b) => Some(format!("{:?}", b)),
                Err(e) => Some(format!("{}", e)),
            },
        });
        if let Some((Ok(t), _)) = &tables {
            properties.push(PropertyCheck {
                name: "table sums to q^r - 2",
                counterexample: (t.total() != ctx.size() - 2).then(|| format!("sum {}", t.total())),
            });
        }
    }
    if on(MethodFamily::Chars) {
        properties.extend(characters::property_suite(&ctx, limits.precision_budget));
    }
    if on(MethodFamily::Digraph) {
        properties.extend(digraph::property_suite(&ctx));
    }
    if on(MethodFamily::Ell) {
        properties.extend(prime_ell::property_suite(&ctx, limits));
    }
    if on(MethodFamily::Chars) && ctx.q() >= 4 && ctx.r() >= 3 {
        properties.push(PropertyCheck {
            name: "error bound forces strict inequality",
            counterexample: match closed_forms::strictness_margin(ctx.q(), ctx.r()) {
                Ok(m) if m > 0.0 => None,
                Ok(m) => Some(format!("margin {}", m)),
                Err(e) => Some(format!("{}", e)),
            },
        });
    }

    ContextReport {
        context: ContextId {
            p,
            n,
            r,
            q: ctx.q(),
            norm_target: ctx.norm_target(),
        },
        ran,
        skipped,
        cells,
        theorem: theorem_verdicts.map(|v| v.map(|_| ())),
        properties,
        error: None,
    }
}

/// Runs every triple in configuration order. An empty method list yields no
/// reports.
pub fn run_sweep(config: &SweepConfig) -> Vec<ContextReport> {
    if config.methods.is_empty() {
        return Vec::new();
    }
    config
        .triples
        .iter()
        .map(|&(p, n, r)| sweep_context(config, p, n, r))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn empty_methods() {
        let mut config = SweepConfig::default_grid();
        config.methods.clear();
        assert!(run_sweep(&config).is_empty());
    }

    #[test]
    fn pinned_example() {
        let config = SweepConfig {
            triples: vec![(5, 1, 6)],
            limits: Limits::default(),
            pins: vec![NormPin {
                p: 5,
                n: 1,
                r: 6,
                target: 2,
            }],
            methods: vec![MethodFamily::Oracle, MethodFamily::Digraph],
        };
        let reports = run_sweep(&config);
        assert_eq!(reports.len(), 1);
        let rep = &reports[0];
        assert_eq!(rep.context.norm_target, 2);
        assert_eq!(
            rep.ran,
            [
                MethodName::OracleCoset,
                MethodName::OracleNorm,
                MethodName::Digraph
            ]
        );
        let first = &rep.cells[0];
        assert_eq!(first.params, CycloParams { a: 0, b: 0 });
        assert!(first.values.iter().all(|v| v.outcome == Ok(932)));
        assert!(rep.passed(), "{:?}", rep.properties);
    }

    #[test]
    fn applicability_is_computed() {
        let config = SweepConfig {
            triples: vec![(2, 1, 3), (3, 1, 4)],
            limits: Limits::default(),
            pins: Vec::new(),
            methods: MethodFamily::ALL.to_vec(),
        };
        let reports = run_sweep(&config);
        let skipped: Vec<MethodFamily> = reports[0].skipped.iter().map(|s| s.0).collect();
        assert_eq!(skipped, [MethodFamily::Digraph]);
        let skipped: Vec<MethodFamily> = reports[1].skipped.iter().map(|s| s.0).collect();
        assert_eq!(skipped, [MethodFamily::Ell]);
        assert!(reports.iter().all(ContextReport::passed));
    }

    #[test]
    fn small_grid_agrees_and_is_deterministic() {
        let config = SweepConfig {
            triples: vec![(3, 1, 2), (2, 2, 3), (5, 1, 3), (3, 1, 5)],
            limits: Limits::default(),
            pins: Vec::new(),
            methods: MethodFamily::ALL.to_vec(),
        };
        let a = run_sweep(&config);
        for rep in &a {
            assert!(rep.passed(), "{:?}", rep);
        }
        assert_eq!(a, run_sweep(&config));
    }

    #[test]
    fn invalid_context_is_captured() {
        let config = SweepConfig {
            triples: vec![(5, 1, 6)],
            limits: Limits::default(),
            pins: vec![NormPin {
                p: 5,
                n: 1,
                r: 6,
                target: 4,
            }],
            methods: vec![MethodFamily::Oracle],
        };
        let rep = &run_sweep(&config)[0];
        assert_eq!(rep.error, Some(Error::InvalidNormTarget(4)));
        assert!(!rep.passed());
    }
}
