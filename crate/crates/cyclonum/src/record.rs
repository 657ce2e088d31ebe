//! JSON output shapes.

use serde::{Deserialize, Serialize};

use cyclonum_core::closed_forms::{Relation, TheoremClause};
use cyclonum_core::consistency::ContextReport;
use cyclonum_core::ExtensionContext;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextInfo {
    pub p: u32,
    pub n: u32,
    pub r: u32,
    pub q: u64,
    pub k: u64,
    /// Defining polynomial of `F_{q^r}` over `F_p`, constant term first.
    pub modulus: Vec<u32>,
    /// Coefficients of `ω`, constant term first.
    pub omega: Vec<u32>,
    /// Coefficients of `ω^k`.
    pub omega_k: Vec<u32>,
    /// `ω^k` as an integer when `n = 1`, else its logarithm to the base of
    /// the canonical subfield generator.
    pub norm_target: u64,
}

impl ContextInfo {
    pub fn of(ctx: &ExtensionContext) -> Self {
        ContextInfo {
            p: ctx.p(),
            n: ctx.n(),
            r: ctx.r(),
            q: ctx.q(),
            k: ctx.k(),
            modulus: ctx.modulus().to_vec(),
            omega: ctx.coeffs(ctx.omega()),
            omega_k: ctx.coeffs(ctx.omega_pow(ctx.k())),
            norm_target: ctx.norm_target(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Request {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<u64>,
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm_target: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodResult {
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<u64>,
    /// Full table, rows indexed by `a`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Vec<u64>>>,
    /// Main term as an exact fraction `num/den`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub main_term: Option<String>,
    /// Error term, 12 significant digits.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error_term: Option<String>,
}

impl MethodResult {
    pub fn value(method: &str, value: u64) -> Self {
        MethodResult {
            method: method.to_string(),
            value: Some(value),
            values: None,
            main_term: None,
            error_term: None,
        }
    }

    pub fn table(method: &str, values: Vec<Vec<u64>>) -> Self {
        MethodResult {
            method: method.to_string(),
            value: None,
            values: Some(values),
            main_term: None,
            error_term: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub method: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: u32,
    pub context: ContextInfo,
    pub request: Request,
    pub results: Vec<MethodResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<Skipped>,
    pub timing_ms: u64,
}

/// `x` with 12 significant digits in scientific notation.
pub fn twelve_digits(x: f64) -> String {
    format!("{:.11e}", x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellValue {
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub value: u64,
    pub bound: u64,
    pub relation: String,
    pub clause: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub a: u64,
    pub b: u64,
    pub agreement: bool,
    pub values: Vec<CellValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyRecord {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextRecord {
    pub p: u32,
    pub n: u32,
    pub r: u32,
    pub q: u64,
    pub norm_target: u64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub methods: Vec<String>,
    pub skipped: Vec<Skipped>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem: Option<String>,
    pub properties: Vec<PropertyRecord>,
    pub cells: Vec<CellRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub contexts: usize,
    pub cells: usize,
    pub disagreements: usize,
    pub failed_contexts: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub schema_version: u32,
    pub summary: SweepSummary,
    pub contexts: Vec<ContextRecord>,
}

fn relation_name(r: Relation) -> &'static str {
    match r {
        Relation::Below => "below",
        Relation::Equal => "equal",
        Relation::Above => "above",
    }
}

fn clause_name(c: TheoremClause) -> &'static str {
    match c {
        TheoremClause::BinaryField => "q=2",
        TheoremClause::Ternary => "q=3",
        TheoremClause::Strict => "q>=4",
    }
}

impl ContextRecord {
    pub fn of(report: &ContextReport) -> Self {
        let id = &report.context;
        ContextRecord {
            p: id.p,
            n: id.n,
            r: id.r,
            q: id.q,
            norm_target: id.norm_target,
            passed: report.passed(),
            error: report.error.as_ref().map(|e| e.to_string()),
            methods: report.ran.iter().map(|m| m.name().to_string()).collect(),
            skipped: report
                .skipped
                .iter()
                .map(|(m, reason)| Skipped {
                    method: m.name().to_string(),
                    reason: reason.clone(),
                })
                .collect(),
            theorem: report.theorem.as_ref().map(|t| match t {
                Ok(()) => "consistent".to_string(),
                Err(e) => format!("violation: {}", e),
            }),
            properties: report
                .properties
                .iter()
                .map(|p| PropertyRecord {
                    name: p.name.to_string(),
                    passed: p.passed(),
                    counterexample: p.counterexample.clone(),
                })
                .collect(),
            cells: report
                .cells
                .iter()
                .map(|c| CellRecord {
                    a: c.params.a,
                    b: c.params.b,
                    agreement: c.agreement,
                    values: c
                        .values
                        .iter()
                        .map(|v| CellValue {
                            method: v.method.name().to_string(),
                            value: v.outcome.as_ref().ok().copied(),
                            error: v.outcome.as_ref().err().map(|e| e.to_string()),
                        })
                        .collect(),
                    verdict: c.verdict.map(|v| VerdictRecord {
                        value: v.value,
                        bound: v.bound,
                        relation: relation_name(v.relation).to_string(),
                        clause: clause_name(v.clause).to_string(),
                    }),
                })
                .collect(),
        }
    }
}

impl SweepRecord {
    pub fn of(reports: &[ContextReport]) -> Self {
        let contexts: Vec<ContextRecord> = reports.iter().map(ContextRecord::of).collect();
        let summary = SweepSummary {
            contexts: contexts.len(),
            cells: contexts.iter().map(|c| c.cells.len()).sum(),
            disagreements: contexts
                .iter()
                .flat_map(|c| &c.cells)
                .filter(|c| !c.agreement)
                .count(),
            failed_contexts: contexts.iter().filter(|c| !c.passed).count(),
        };
        SweepRecord {
            schema_version: SCHEMA_VERSION,
            summary,
            contexts,
        }
    }
}
