//! Single-point JSON reports.
//!
//! The layout is described by `schema/run_report.schema.json` in this crate.

use cluster_rsp::noise::{closed_form_fidelity, FidelityConvention, NoiseKind, NoisyResource};
use cluster_rsp::protocol::{sample_outcome, Outcome, ProtocolParams};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const TOOL_NAME: &str = "cluster-rsp";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunInputs {
    pub alpha2: f64,
    pub gamma2: f64,
    pub noise: String,
    pub rate: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Amplitudes {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeReport {
    pub outcome: usize,
    pub probability: f64,
    pub fidelity_paper: f64,
    pub fidelity_normalized: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fidelity_closed: Option<f64>,
    /// `|fidelity_paper − fidelity_closed|`, present with `fidelity_closed`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub deviation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: Tool,
    pub inputs: RunInputs,
    pub params: Amplitudes,
    pub outcomes: Vec<OutcomeReport>,
    /// Sum over outcomes of the unnormalized fidelity, for a unit-trace resource.
    pub average_fidelity: f64,
    pub max_oracle_deviation: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sampled_outcome: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generated_at_unix: Option<u64>,
}

/// Builds the report for one parameter point. With a seed, one outcome is also
/// drawn from the computed probabilities.
pub fn run_report(inputs: RunInputs) -> Result<RunReport, CliError> {
    let kind: NoiseKind = inputs.noise.parse()?;
    let p = ProtocolParams::from_probabilities(inputs.alpha2, inputs.gamma2)?;
    let resource = NoisyResource::new(kind, inputs.rate)?;

    let outcomes = Outcome::ALL
        .iter()
        .map(|&o| {
            let paper = resource.fidelity(&p, o, FidelityConvention::PaperUnnormalized)?;
            let closed = match o.index() {
                2 => Some(closed_form_fidelity(kind, &p, inputs.rate)?),
                _ => None,
            };
            Ok(OutcomeReport {
                outcome: o.index(),
                probability: resource.outcome_probability(&p, o)?,
                fidelity_paper: paper,
                fidelity_normalized: resource.fidelity(&p, o, FidelityConvention::TraceNormalized)?,
                fidelity_closed: closed,
                deviation: closed.map(|c| (paper - c).abs()),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let max_oracle_deviation = outcomes
        .iter()
        .filter_map(|o| o.deviation)
        .fold(0.0, f64::max);
    let sampled_outcome = match inputs.seed {
        Some(seed) => {
            let probs: [f64; 4] = std::array::from_fn(|i| outcomes[i].probability);
            Some(sample_outcome(&probs, seed)?.index())
        }
        None => None,
    };

    Ok(RunReport {
        tool: Tool {
            name: TOOL_NAME.into(),
            version: env!("CARGO_PKG_VERSION").into(),
        },
        params: Amplitudes {
            alpha: p.alpha(),
            beta: p.beta(),
            gamma: p.gamma(),
            delta: p.delta(),
        },
        average_fidelity: resource.average_fidelity(&p)?,
        inputs: RunInputs {
            noise: kind.short_name().into(),
            ..inputs
        },
        outcomes,
        max_oracle_deviation,
        sampled_outcome,
        generated_at_unix: None,
    })
}
