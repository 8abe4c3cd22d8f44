//! JSON envelopes and table rendering.
//!
//! JSON field order is fixed by struct declaration order and every value is
//! an integer, a string, or a list of those, so a fixed configuration
//! produces byte-identical output across runs and execution modes. Table
//! output is for humans and carries no stability promise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use fatpoints_core::baselocus::{ProbeVerdict, SectionMap, SectionProbeReport};
use fatpoints_core::cremona::{ReductionOutcome, ReductionTrace};
use fatpoints_core::curves::SpecialityPrediction;
use fatpoints_core::divisor::{CurveFamily, DivisorClass, SecantDimension};
use fatpoints_core::interpolation::{CertStatus, SystemReport};

pub const SCHEMA: &str = "fatpoints/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
pub struct Envelope<C: Serialize, R: Serialize> {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: C,
    pub result: R,
}

pub fn print_json<C: Serialize, R: Serialize>(envelope: &Envelope<C, R>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(envelope).map_err(|e| e.to_string())?;
    println!("{text}");
    Ok(())
}

pub fn big_to_i128(v: &BigInt) -> Result<i128, String> {
    v.to_i128()
        .ok_or_else(|| format!("exact value {v} exceeds the JSON integer range; use table output"))
}

#[derive(Serialize)]
pub struct ClassDto {
    pub n: u32,
    pub d: i64,
    pub mults: Vec<i64>,
    pub display: String,
}

impl ClassDto {
    pub fn from_class(class: &DivisorClass) -> Self {
        ClassDto {
            n: class.n(),
            d: class.degree(),
            mults: class.mults().to_vec(),
            display: class.to_string(),
        }
    }
}

pub fn status_str(status: CertStatus) -> &'static str {
    match status {
        CertStatus::CertifiedNonspecial => "certified-nonspecial",
        CertStatus::SpecialEvidence => "special-evidence",
        CertStatus::Inconclusive => "inconclusive",
    }
}

pub fn family_str(family: CurveFamily) -> &'static str {
    match family {
        CurveFamily::Line => "line",
        CurveFamily::Conic => "conic",
        CurveFamily::RationalNormalCurve => "rational-normal-curve",
    }
}

#[derive(Serialize)]
pub struct ReportDto {
    pub monomial_count: usize,
    pub rank: usize,
    pub h0: usize,
    pub v: i64,
    pub e: i64,
    pub dim: i64,
    pub speciality: i64,
    pub status: &'static str,
    pub p: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub trials: u32,
    pub semantics: &'static str,
}

impl ReportDto {
    pub fn from_report(r: &SystemReport) -> Self {
        ReportDto {
            monomial_count: r.monomial_count,
            rank: r.rank,
            h0: r.h0,
            v: r.v,
            e: r.e,
            dim: r.dim,
            speciality: r.speciality,
            status: status_str(r.status),
            p: r.p,
            seed: r.seed,
            trials: r.trials,
            semantics: r.semantics,
        }
    }
}

#[derive(Serialize)]
pub struct SecantDto {
    /// Dimension `N` of the ambient space of the embedding.
    pub ambient: i128,
    pub dimension: i128,
    pub expected: i128,
    pub defect: i128,
}

impl SecantDto {
    pub fn new(n_amb: &BigInt, s: &SecantDimension) -> Result<Self, String> {
        Ok(SecantDto {
            ambient: big_to_i128(n_amb)?,
            dimension: big_to_i128(&s.dimension)?,
            expected: big_to_i128(&s.expected)?,
            defect: big_to_i128(&s.defect)?,
        })
    }
}

#[derive(Serialize)]
pub struct StepDto {
    pub base_indices: Vec<usize>,
    pub k: i64,
    pub before: ClassDto,
    pub after: ClassDto,
    pub clamped: Vec<usize>,
}

#[derive(Serialize)]
pub struct ReduceResult {
    pub input: ClassDto,
    pub steps: Vec<StepDto>,
    pub final_class: ClassDto,
    pub outcome: &'static str,
}

impl ReduceResult {
    pub fn from_trace(input: &DivisorClass, trace: &ReductionTrace) -> Self {
        ReduceResult {
            input: ClassDto::from_class(input),
            steps: trace
                .steps
                .iter()
                .map(|s| StepDto {
                    base_indices: s.base_indices.clone(),
                    k: s.k,
                    before: ClassDto::from_class(&s.before),
                    after: ClassDto::from_class(&s.after),
                    clamped: s.clamped.clone(),
                })
                .collect(),
            final_class: ClassDto::from_class(&trace.final_class),
            outcome: match trace.outcome {
                ReductionOutcome::Reduced => "reduced",
                ReductionOutcome::Empty => "empty",
            },
        }
    }
}

#[derive(Serialize)]
pub struct ContributionDto {
    pub family: &'static str,
    /// 0-based indices of the points the curve passes through.
    pub points: Vec<usize>,
    pub delta: i64,
    pub t: i64,
    pub correction: i128,
}

#[derive(Serialize)]
pub struct CurvesResult {
    pub class: ClassDto,
    pub contributions: Vec<ContributionDto>,
    pub total: i128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<i128>,
}

impl CurvesResult {
    pub fn from_prediction(
        class: &DivisorClass,
        pred: &SpecialityPrediction,
    ) -> Result<Self, String> {
        Ok(CurvesResult {
            class: ClassDto::from_class(class),
            contributions: pred
                .contributions
                .iter()
                .map(|c| {
                    Ok(ContributionDto {
                        family: family_str(c.curve.family()),
                        points: c.curve.support(),
                        delta: c.curve.delta(),
                        t: c.t,
                        correction: big_to_i128(&c.correction)?,
                    })
                })
                .collect::<Result<_, String>>()?,
            total: big_to_i128(&pred.total)?,
            residual: pred.residual.as_ref().map(big_to_i128).transpose()?,
        })
    }
}

#[derive(Serialize)]
pub struct VerdictDto {
    pub kind: &'static str,
    pub bound: i64,
}

impl VerdictDto {
    pub fn from_verdict(v: ProbeVerdict) -> Self {
        match v {
            ProbeVerdict::ConsistentWithDimAtMost(b) => VerdictDto {
                kind: "consistent-with-dim-at-most",
                bound: b,
            },
            ProbeVerdict::EvidenceOfDimAtLeast(b) => VerdictDto {
                kind: "evidence-of-dim-at-least",
                bound: b,
            },
        }
    }
}

#[derive(Serialize)]
pub struct ProbeDto {
    pub section_dim: u32,
    pub trials: u32,
    pub zero_counts: Vec<u64>,
    pub verdict: VerdictDto,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sections: Option<Vec<Vec<Vec<u64>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeros: Option<Vec<Vec<Vec<u64>>>>,
}

impl ProbeDto {
    pub fn from_report(r: &SectionProbeReport, audit: bool) -> Self {
        ProbeDto {
            section_dim: r.section_dim,
            trials: r.trials,
            zero_counts: r.zero_counts.clone(),
            verdict: VerdictDto::from_verdict(r.verdict),
            sections: audit.then(|| {
                r.sections
                    .iter()
                    .map(|s: &SectionMap| s.rows().to_vec())
                    .collect()
            }),
            zeros: r.zeros.clone(),
        }
    }
}

pub fn verdict_text(v: ProbeVerdict) -> String {
    match v {
        ProbeVerdict::ConsistentWithDimAtMost(b) => {
            format!("consistent with dim <= {b}")
        }
        ProbeVerdict::EvidenceOfDimAtLeast(b) => format!("evidence of dim >= {b}"),
    }
}

pub fn print_report_table(rep: &ReportDto) {
    println!("monomials   : {}", rep.monomial_count);
    println!("rank        : {}", rep.rank);
    println!("h0          : {}", rep.h0);
    println!("v / e       : {} / {}", rep.v, rep.e);
    println!("dim         : {}", rep.dim);
    println!("speciality  : {}", rep.speciality);
    println!("status      : {}", rep.status);
    match rep.seed {
        Some(seed) => println!("p / seed    : {} / {}", rep.p, seed),
        None => println!("p           : {} (user-supplied points)", rep.p),
    }
    println!("trials      : {}", rep.trials);
    println!("semantics   : {}", rep.semantics);
}
