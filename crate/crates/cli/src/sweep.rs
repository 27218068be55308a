//! Fidelity sweeps over squared coefficients and noise rate.
//!
//! A sweep varies one or two of `alpha2`, `gamma2` and `rate` over a uniform
//! grid and pins the rest. Each grid point reports the closed-form fidelity
//! (outcome 2 only) next to the brute-force value in both conventions.
//!
//! The twelve `figNx` presets mirror the settings of the published surface
//! and line plots: figure 3 is amplitude damping, 4 phase flip, 5 bit flip.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use cluster_rsp::noise::{closed_form_fidelity, FidelityConvention, NoiseKind, NoisyResource};
use cluster_rsp::protocol::{Outcome, ProtocolParams};
use rayon::prelude::*;

use crate::format::sig12;
use crate::CliError;

/// Grid points per axis for the figure presets.
pub const PRESET_STEPS: usize = 51;

pub const PRESET_NAMES: [&str; 12] = [
    "fig3a", "fig3b", "fig3c", "fig3d", "fig4a", "fig4b", "fig4c", "fig4d", "fig5a", "fig5b",
    "fig5c", "fig5d",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    Alpha2,
    Gamma2,
    Rate,
}

impl Param {
    pub const ALL: [Param; 3] = [Param::Alpha2, Param::Gamma2, Param::Rate];

    pub fn name(self) -> &'static str {
        match self {
            Param::Alpha2 => "alpha2",
            Param::Gamma2 => "gamma2",
            Param::Rate => "rate",
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Param::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| CliError::Invalid(format!("unknown sweep parameter `{s}` (expected alpha2, gamma2 or rate)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub param: Param,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(param: Param, min: f64, max: f64, steps: usize) -> Result<Self, CliError> {
        for v in [min, max] {
            if !(0.0..=1.0).contains(&v) {
                return Err(CliError::Invalid(format!("{param} bound {v} is outside [0, 1]")));
            }
        }
        if min > max {
            return Err(CliError::Invalid(format!("{param} axis has min {min} > max {max}")));
        }
        if steps < 2 {
            return Err(CliError::Invalid(format!("{param} axis needs at least 2 steps, got {steps}")));
        }
        Ok(Axis { param, min, max, steps })
    }

    pub fn unit(param: Param, steps: usize) -> Self {
        Axis::new(param, 0.0, 1.0, steps).expect("unit interval")
    }

    /// `steps` evenly spaced values from `min` to `max` inclusive.
    pub fn values(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| match i {
                0 => self.min,
                _ if i == self.steps - 1 => self.max,
                _ => self.min + (self.max - self.min) * i as f64 / last,
            })
            .collect()
    }
}

/// Parses `name:min:max:steps`, e.g. `rate:0:1:51`.
impl FromStr for Axis {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Invalid(format!("axis `{s}` is not of the form name:min:max:steps"));
        let parts: Vec<&str> = s.split(':').collect();
        let [name, min, max, steps] = parts[..] else {
            return Err(bad());
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        let steps = steps.trim().parse::<usize>().map_err(|_| bad())?;
        Axis::new(name.trim().parse()?, num(min)?, num(max)?, steps)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    kind: NoiseKind,
    axes: Vec<Axis>,
    fixed: Vec<(Param, f64)>,
    outcome: Outcome,
}

impl SweepSpec {
    /// One or two varied axes; together with `fixed` they must name each of
    /// `alpha2`, `gamma2` and `rate` exactly once.
    pub fn new(
        kind: NoiseKind,
        axes: Vec<Axis>,
        fixed: Vec<(Param, f64)>,
        outcome: Outcome,
    ) -> Result<Self, CliError> {
        if !(1..=2).contains(&axes.len()) {
            return Err(CliError::Invalid(format!("a sweep varies 1 or 2 parameters, got {}", axes.len())));
        }
        for param in Param::ALL {
            let count = axes.iter().filter(|a| a.param == param).count()
                + fixed.iter().filter(|(p, _)| *p == param).count();
            match count {
                1 => {}
                0 => return Err(CliError::Invalid(format!("{param} is neither varied nor fixed"))),
                _ => return Err(CliError::Invalid(format!("{param} is given more than once"))),
            }
        }
        if let Some((p, v)) = fixed.iter().find(|(_, v)| !(0.0..=1.0).contains(v)) {
            return Err(CliError::Invalid(format!("{p} = {v} is outside [0, 1]")));
        }
        Ok(SweepSpec { kind, axes, fixed, outcome })
    }

    pub fn kind(&self) -> NoiseKind {
        self.kind
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn fixed(&self) -> &[(Param, f64)] {
        &self.fixed
    }

    pub fn outcome(&self) -> Outcome {
        self.outcome
    }

    fn fixed_value(&self, param: Param) -> Option<f64> {
        self.fixed.iter().find(|(p, _)| *p == param).map(|&(_, v)| v)
    }

    /// Grid points in row-major order: the first axis varies slowest.
    fn points(&self) -> Vec<Vec<f64>> {
        self.axes.iter().fold(vec![vec![]], |acc, axis| {
            let values = axis.values();
            acc.iter()
                .flat_map(|prefix| {
                    values.iter().map(move |&v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect()
        })
    }

    fn lookup(&self, coords: &[f64], param: Param) -> f64 {
        self.axes
            .iter()
            .position(|a| a.param == param)
            .map(|i| coords[i])
            .or_else(|| self.fixed_value(param))
            .expect("spec covers every parameter")
    }

    pub fn metadata(&self) -> Vec<String> {
        let mut lines = vec![
            format!("noise: {} ({})", self.kind, self.kind.rate_symbol()),
            format!("outcome: {}", self.outcome),
        ];
        for (p, v) in &self.fixed {
            lines.push(format!("fixed: {p}={}", sig12(*v)));
        }
        for (i, a) in self.axes.iter().enumerate() {
            lines.push(format!(
                "axis{}: {} from {} to {} in {} steps",
                i + 1,
                a.param,
                sig12(a.min),
                sig12(a.max),
                a.steps
            ));
        }
        lines
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub coords: Vec<f64>,
    /// Closed-form value, present only for outcome 2.
    pub closed: Option<f64>,
    pub paper: f64,
    pub normalized: f64,
}

/// Evaluates every grid point. Points run in parallel; the result is in grid
/// order regardless.
pub fn evaluate(spec: &SweepSpec) -> Result<Vec<SweepRow>, CliError> {
    let rates: Vec<f64> = match spec.axes.iter().find(|a| a.param == Param::Rate) {
        Some(axis) => axis.values(),
        None => vec![spec.fixed_value(Param::Rate).expect("rate fixed")],
    };
    let resources = rates
        .par_iter()
        .map(|&r| NoisyResource::new(spec.kind, r))
        .collect::<Result<Vec<_>, _>>()?;
    let rate_slot = spec.axes.iter().position(|a| a.param == Param::Rate);
    let rate_len = rates.len();
    let inner = spec.axes.get(1).map_or(1, |a| a.steps);

    let points = spec.points();
    points
        .into_par_iter()
        .enumerate()
        .map(|(i, coords)| {
            let resource = &resources[match rate_slot {
                None => 0,
                Some(0) => i / inner,
                Some(_) => i % rate_len,
            }];
            let rate = spec.lookup(&coords, Param::Rate);
            let p = ProtocolParams::from_probabilities(
                spec.lookup(&coords, Param::Alpha2),
                spec.lookup(&coords, Param::Gamma2),
            )?;
            let closed = match spec.outcome.index() {
                2 => Some(closed_form_fidelity(spec.kind, &p, rate)?),
                _ => None,
            };
            Ok(SweepRow {
                closed,
                paper: resource.fidelity(&p, spec.outcome, FidelityConvention::PaperUnnormalized)?,
                normalized: resource.fidelity(&p, spec.outcome, FidelityConvention::TraceNormalized)?,
                coords,
            })
        })
        .collect()
}

/// Writes `#` comment lines, the header and one line per row.
pub fn write_csv<W: Write>(
    out: &mut W,
    spec: &SweepSpec,
    metadata: &[String],
    rows: &[SweepRow],
) -> io::Result<()> {
    for line in metadata {
        writeln!(out, "# {line}")?;
    }
    let header = match spec.axes.len() {
        1 => "axis1,F_closed,F_numeric_paper,F_numeric_normalized",
        _ => "axis1,axis2,F_closed,F_numeric_paper,F_numeric_normalized",
    };
    writeln!(out, "{header}")?;
    for row in rows {
        let mut fields: Vec<String> = row.coords.iter().map(|&c| sig12(c)).collect();
        fields.push(row.closed.map(sig12).unwrap_or_default());
        fields.push(sig12(row.paper));
        fields.push(sig12(row.normalized));
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub spec: SweepSpec,
    /// Caption settings and reading notes, written as CSV metadata.
    pub notes: Vec<String>,
}

impl Preset {
    pub fn metadata(&self) -> Vec<String> {
        let mut lines = vec![format!("preset: {}", self.name)];
        lines.extend(self.notes.iter().cloned());
        lines.extend(self.spec.metadata());
        lines
    }
}

pub fn preset(name: &str) -> Option<Preset> {
    let name = *PRESET_NAMES.iter().find(|n| **n == name)?;
    let (kind, label) = match &name[..4] {
        "fig3" => (NoiseKind::AmplitudeDamping, "F1"),
        "fig4" => (NoiseKind::PhaseFlip, "F2"),
        _ => (NoiseKind::BitFlip, "F3"),
    };
    let n = PRESET_STEPS;
    let symbol = kind.rate_symbol();
    let (axes, fixed, notes) = match name.as_bytes()[4] {
        b'a' => (
            vec![Axis::unit(Param::Gamma2, n), Axis::unit(Param::Rate, n)],
            vec![(Param::Alpha2, 0.3)],
            vec![
                format!("caption: {label} against gamma and {symbol}"),
                "caption: |S1> = sqrt(0.3)|0> + sqrt(0.7)|1>".into(),
            ],
        ),
        b'b' => (
            vec![Axis::unit(Param::Alpha2, n), Axis::unit(Param::Rate, n)],
            vec![(Param::Gamma2, 0.3)],
            vec![
                format!("caption: {label} against alpha and {symbol}"),
                "caption: |S2> = sqrt(0.3)|00> + sqrt(0.7)|11>".into(),
            ],
        ),
        b'c' => (
            vec![Axis::unit(Param::Alpha2, n), Axis::unit(Param::Gamma2, n)],
            vec![(Param::Rate, 0.5)],
            vec![
                format!("caption: {label} against alpha and gamma"),
                "caption: nu=0.5".into(),
                format!("note: the caption names the rate nu for every noise kind; read here as {symbol}=0.5"),
            ],
        ),
        _ => (
            vec![Axis::unit(Param::Rate, n)],
            vec![(Param::Alpha2, 0.4), (Param::Gamma2, 0.3)],
            vec![
                format!("caption: {label} against {symbol}"),
                "caption: |S1> = sqrt(0.4)|0> + sqrt(0.6)|1>".into(),
                "caption: |S2> = sqrt(0.3)|00> + sqrt(0.7)|01>".into(),
                "note: |01> in the caption does not fit the target form gamma|00> + delta|11>; |S2> = sqrt(0.3)|00> + sqrt(0.7)|11> is used".into(),
            ],
        ),
    };
    let mut notes = notes;
    notes.push("note: alpha2 and gamma2 axes are squared coefficients; amplitudes are their positive roots".into());
    let spec = SweepSpec::new(kind, axes, fixed, Outcome::new(2).expect("valid outcome"))
        .expect("preset specs are valid");
    Some(Preset { name, spec, notes })
}
