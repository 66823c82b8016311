//! JSON documents crossing the CLI boundary.
//!
//! Every big integer is serialized as a decimal string and every fraction
//! as "num/den" in lowest terms; nothing is ever converted to floating
//! point. Documents carry a schema_version from day one and unknown fields
//! are rejected rather than ignored, so stored trace files cannot drift
//! silently.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use padic_cf::schemes::{ExpansionStatus, TraceStep};
use padic_cf::{
    format_rational, parse_rational, valuation, ExpansionTrace, PQSequence, QuadIrr, Scheme,
};

pub const SCHEMA_VERSION: &str = "1";

/// Exact value descriptor: a reduced fraction or a quadratic element.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ValueDescriptor {
    Rational {
        num: String,
        den: String,
    },
    Quadratic {
        #[serde(rename = "P")]
        p_coeff: String,
        #[serde(rename = "Q")]
        q_coeff: String,
        #[serde(rename = "D")]
        discriminant: String,
        #[serde(rename = "R")]
        denom: String,
    },
}

impl ValueDescriptor {
    pub fn from_quad(alpha: &QuadIrr) -> Self {
        if alpha.is_rational() {
            ValueDescriptor::Rational {
                num: alpha.const_coeff().to_string(),
                den: alpha.denom().to_string(),
            }
        } else {
            ValueDescriptor::Quadratic {
                p_coeff: alpha.const_coeff().to_string(),
                q_coeff: alpha.surd_coeff().to_string(),
                discriminant: alpha.discriminant().to_string(),
                denom: alpha.denom().to_string(),
            }
        }
    }

    pub fn to_quad(&self, p: u64) -> Result<QuadIrr, String> {
        let int = |s: &str| s.parse::<BigInt>().map_err(|_| format!("bad integer `{s}`"));
        match self {
            ValueDescriptor::Rational { num, den } => {
                let den = int(den)?;
                if den.is_zero() {
                    return Err("zero denominator".into());
                }
                QuadIrr::from_rational(&padic_cf::Rational::new(int(num)?, den), p)
                    .map_err(|e| e.to_string())
            }
            ValueDescriptor::Quadratic {
                p_coeff,
                q_coeff,
                discriminant,
                denom,
            } => QuadIrr::new(int(p_coeff)?, int(q_coeff)?, int(discriminant)?, int(denom)?, p)
                .map_err(|e| e.to_string()),
        }
    }
}

/// One expansion step: quotient, convergents, valuations, complete quotient.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepRecord {
    pub n: usize,
    pub b: String,
    pub vp_b: Option<i64>,
    #[serde(rename = "A")]
    pub conv_num: String,
    #[serde(rename = "B")]
    pub conv_den: String,
    #[serde(rename = "vp_B")]
    pub vp_den: Option<i64>,
    /// Present on expansion traces; absent on bare quotient documents
    /// (the counterexample generator has no complete quotients).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<ValueDescriptor>,
}

/// Certification summary attached to counterexample documents.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certification {
    pub bound: i64,
    pub certified: bool,
    pub min_vp_den: i64,
    pub pattern_holds: bool,
    pub side_condition_holds: bool,
    pub pair_condition_holds: bool,
}

/// Trace document: an expansion run, or a generated quotient sequence with
/// convergents (algorithm "counterexample", no alphas, no status).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceDocument {
    pub schema_version: String,
    pub p: u64,
    pub algorithm: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub input: Option<ValueDescriptor>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub status: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub preperiod: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub period: Option<usize>,
    pub steps: Vec<StepRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certification: Option<Certification>,
}

pub fn status_name(status: ExpansionStatus) -> &'static str {
    match status {
        ExpansionStatus::Finite => "finite",
        ExpansionStatus::Periodic { .. } => "periodic",
        ExpansionStatus::Truncated => "truncated",
    }
}

impl TraceDocument {
    pub fn from_trace(trace: &ExpansionTrace) -> Self {
        let (preperiod, period) = match trace.status {
            ExpansionStatus::Periodic { preperiod, period } => (Some(preperiod), Some(period)),
            _ => (None, None),
        };
        TraceDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            p: trace.p,
            algorithm: trace.scheme.name().to_string(),
            input: Some(ValueDescriptor::from_quad(&trace.input)),
            status: Some(status_name(trace.status).to_string()),
            preperiod,
            period,
            steps: trace
                .steps
                .iter()
                .map(|s| StepRecord {
                    n: s.index,
                    b: format_rational(&s.quotient),
                    vp_b: s.quotient_valuation,
                    conv_num: format_rational(&s.convergent_num),
                    conv_den: format_rational(&s.convergent_den),
                    vp_den: s.den_valuation,
                    alpha: Some(ValueDescriptor::from_quad(&s.complete)),
                })
                .collect(),
            certification: None,
        }
    }

    /// Rebuilds the exact expansion trace; requires per-step alphas.
    pub fn to_trace(&self) -> Result<ExpansionTrace, String> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(format!("unsupported schema_version {}", self.schema_version));
        }
        let scheme: Scheme = self
            .algorithm
            .parse()
            .map_err(|e: padic_cf::Error| e.to_string())?;
        let input = self
            .input
            .as_ref()
            .ok_or("trace document has no input")?
            .to_quad(self.p)?;
        let status = match self.status.as_deref() {
            Some("finite") => ExpansionStatus::Finite,
            Some("periodic") => ExpansionStatus::Periodic {
                preperiod: self.preperiod.ok_or("periodic status without preperiod")?,
                period: self.period.ok_or("periodic status without period")?,
            },
            Some("truncated") => ExpansionStatus::Truncated,
            other => return Err(format!("bad status {other:?}")),
        };
        let steps = self
            .steps
            .iter()
            .map(|s| {
                Ok(TraceStep {
                    index: s.n,
                    quotient: parse_rational(&s.b).map_err(|e| e.to_string())?,
                    quotient_valuation: s.vp_b,
                    complete: s
                        .alpha
                        .as_ref()
                        .ok_or("step without complete quotient")?
                        .to_quad(self.p)?,
                    convergent_num: parse_rational(&s.conv_num).map_err(|e| e.to_string())?,
                    convergent_den: parse_rational(&s.conv_den).map_err(|e| e.to_string())?,
                    den_valuation: s.vp_den,
                })
            })
            .collect::<Result<Vec<_>, String>>()?;
        Ok(ExpansionTrace {
            p: self.p,
            scheme,
            input,
            steps,
            status,
        })
    }

    /// The quotient sequence of any trace document (alphas not needed).
    pub fn to_sequence(&self) -> Result<PQSequence, String> {
        let terms = self
            .steps
            .iter()
            .map(|s| parse_rational(&s.b).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, String>>()?;
        PQSequence::new(self.p, terms).map_err(|e| e.to_string())
    }
}

/// Builds the counterexample document: quotients, convergents, valuation
/// trace and the certified bound.
pub fn counterexample_document(p: u64, blocks: usize, seq: &PQSequence) -> TraceDocument {
    let convs = padic_cf::convergents(seq);
    let three_step = padic_cf::check_3step_hypotheses(seq);
    let pair = padic_cf::check_pair_condition(seq);
    let min_vp = padic_cf::min_denominator_valuation(seq).expect("denominators nonzero");
    let steps = seq
        .terms()
        .iter()
        .zip(&convs)
        .enumerate()
        .map(|(n, (b, (num, den)))| StepRecord {
            n,
            b: format_rational(b),
            vp_b: padic_cf::rational::valuation_opt(b, p),
            conv_num: format_rational(num),
            conv_den: format_rational(den),
            vp_den: Some(valuation(den, p).expect("nonzero denominator")),
            alpha: None,
        })
        .collect();
    TraceDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        p,
        algorithm: "counterexample".to_string(),
        input: None,
        status: None,
        preperiod: None,
        period: Some(blocks),
        steps,
        certification: Some(Certification {
            bound: -1,
            certified: min_vp >= -1,
            min_vp_den: min_vp,
            pattern_holds: three_step.pattern_holds,
            side_condition_holds: three_step.side_condition_holds,
            pair_condition_holds: pair.holds,
        }),
    }
}

/// Report document for `check`.
#[derive(Debug, Clone, Serialize)]
pub struct CheckDocument {
    pub schema_version: &'static str,
    pub condition: String,
    pub p: u64,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<usize>,
    #[serde(flatten)]
    pub details: serde_json::Value,
}

/// Digit listing for `sqrt`.
#[derive(Debug, Clone, Serialize)]
pub struct SqrtDocument {
    pub schema_version: &'static str,
    pub p: u64,
    pub d: String,
    pub precision: usize,
    pub start: i64,
    pub digits: Vec<i64>,
    /// Canonical integer root mod p^precision when D is a unit.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root: Option<String>,
}

/// Compact fraction display for tables: "2" instead of "2/1".
pub fn table_fraction(s: &str) -> String {
    match s.split_once('/') {
        Some((n, "1")) => n.to_string(),
        _ => s.to_string(),
    }
}

/// "inf" marker for +∞ valuations in tables.
pub fn table_valuation(v: Option<i64>) -> String {
    v.map_or_else(|| "inf".to_string(), |x| x.to_string())
}

/// Parses "P,Q,D,R" into a quadratic descriptor.
pub fn parse_quad_spec(s: &str) -> Result<(BigInt, BigInt, BigInt, BigInt), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("expected P,Q,D,R, got `{s}`"));
    }
    let int = |t: &str| t.parse::<BigInt>().map_err(|_| format!("bad integer `{t}`"));
    Ok((int(parts[0])?, int(parts[1])?, int(parts[2])?, int(parts[3])?))
}

/// Parses a comma-separated quotient list "b0,b1,...".
pub fn parse_quotient_list(s: &str) -> Result<Vec<padic_cf::Rational>, String> {
    s.split(',')
        .map(|t| parse_rational(t).map_err(|e| e.to_string()))
        .collect()
}
