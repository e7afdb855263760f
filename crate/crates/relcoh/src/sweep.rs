//! Parameter sweeps and their CSV form.

use std::cmp::Ordering;
use std::io::Write;

use rayon::prelude::*;
use relcoh_core::{
    closed_form_concurrence, closed_form_state, coherence_concurrence_with, is_x_shaped, l1_coherence,
    point_options, simulate, AccelerationParameter, ChannelKind, CoherenceBounds, NoisePolicy, Scenario,
    Subsystem,
};

use crate::error::{CliError, Result};

pub const CSV_HEADER: [&str; 11] =
    ["subsystem", "channel", "policy", "alpha", "r_b", "r_c", "p_b", "p_c", "method", "concurrence", "l1"];

/// A sweep grid. `r` and `P` are pair lists so that tied (`r_b = r_c`) and
/// Cartesian axes share one representation.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub subsystems: Vec<Subsystem>,
    pub channel: Option<ChannelKind>,
    pub policy: NoisePolicy,
    pub alphas: Vec<f64>,
    pub r_pairs: Vec<(f64, f64)>,
    pub p_pairs: Vec<(f64, f64)>,
    pub seed: u64,
}

pub fn tied(values: &[f64]) -> Vec<(f64, f64)> {
    values.iter().map(|&v| (v, v)).collect()
}

pub fn cartesian(b: &[f64], c: &[f64]) -> Vec<(f64, f64)> {
    b.iter().flat_map(|&x| c.iter().map(move |&y| (x, y))).collect()
}

impl SweepSpec {
    pub fn scenarios(&self) -> Result<Vec<Scenario>> {
        if self.subsystems.is_empty() || self.alphas.is_empty() || self.r_pairs.is_empty() || self.p_pairs.is_empty() {
            return Err(CliError::usage("sweep lists must be nonempty"));
        }
        if self.channel.is_none() && self.p_pairs.iter().any(|&(b, c)| b != 0.0 || c != 0.0) {
            return Err(CliError::usage("decay probabilities need a channel"));
        }
        let mut out = Vec::with_capacity(self.subsystems.len() * self.alphas.len() * self.r_pairs.len() * self.p_pairs.len());
        for &subsystem in &self.subsystems {
            for &alpha in &self.alphas {
                for &(rb, rc) in &self.r_pairs {
                    for &(pb, pc) in &self.p_pairs {
                        let s = Scenario {
                            subsystem,
                            alpha,
                            rb: AccelerationParameter::new(rb)?,
                            rc: AccelerationParameter::new(rc)?,
                            channel: self.channel,
                            pb,
                            pc,
                            policy: self.policy,
                        };
                        s.validate()?;
                        out.push(s);
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Source {
    Paper,
    Sim,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Paper => "paper",
            Source::Sim => "sim",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub scenario: Scenario,
    pub method: Source,
    pub concurrence: f64,
    pub l1: f64,
}

/// Both readings of one scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointResult {
    pub scenario: Scenario,
    pub sim: CoherenceBounds,
    pub sim_l1: f64,
    pub sim_x_shaped: bool,
    pub paper: f64,
    pub paper_l1: f64,
}

impl PointResult {
    pub fn rows(&self) -> [SweepRow; 2] {
        [
            SweepRow { scenario: self.scenario, method: Source::Paper, concurrence: self.paper, l1: self.paper_l1 },
            SweepRow { scenario: self.scenario, method: Source::Sim, concurrence: self.sim.upper, l1: self.sim_l1 },
        ]
    }
}

pub fn evaluate(s: &Scenario, seed: u64, index: usize) -> Result<PointResult> {
    let sim = simulate(s)?;
    let bounds = coherence_concurrence_with(&sim, &point_options(seed, index))?;
    let paper_state = closed_form_state(s)?;
    Ok(PointResult {
        scenario: *s,
        sim: bounds,
        sim_l1: l1_coherence(&sim),
        sim_x_shaped: is_x_shaped(&sim, relcoh_core::measures::X_SHAPE_TOLERANCE),
        paper: closed_form_concurrence(s)?,
        paper_l1: l1_coherence(&paper_state),
    })
}

fn key_cmp(a: &SweepRow, b: &SweepRow) -> Ordering {
    let (x, y) = (&a.scenario, &b.scenario);
    x.subsystem
        .name()
        .cmp(y.subsystem.name())
        .then_with(|| channel_name(x.channel).cmp(channel_name(y.channel)))
        .then_with(|| x.policy.name().cmp(y.policy.name()))
        .then_with(|| x.alpha.total_cmp(&y.alpha))
        .then_with(|| x.rb.value().total_cmp(&y.rb.value()))
        .then_with(|| x.rc.value().total_cmp(&y.rc.value()))
        .then_with(|| x.pb.total_cmp(&y.pb))
        .then_with(|| x.pc.total_cmp(&y.pc))
        .then_with(|| a.method.name().cmp(b.method.name()))
}

/// Evaluates every point in parallel and returns rows in sorted key order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let scenarios = spec.scenarios()?;
    let points = scenarios
        .par_iter()
        .enumerate()
        .map(|(i, s)| evaluate(s, spec.seed, i))
        .collect::<Result<Vec<_>>>()?;
    let mut rows: Vec<SweepRow> = points.iter().flat_map(PointResult::rows).collect();
    rows.sort_by(key_cmp);
    Ok(rows)
}

pub fn channel_name(c: Option<ChannelKind>) -> &'static str {
    c.map_or("none", ChannelKind::name)
}

/// Seventeen significant digits; negative zero is printed as zero.
pub fn fmt_float(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let s = &r.scenario;
        w.write_record([
            s.subsystem.name(),
            channel_name(s.channel),
            s.policy.name(),
            &fmt_float(s.alpha),
            &fmt_float(s.rb.value()),
            &fmt_float(s.rc.value()),
            &fmt_float(s.pb),
            &fmt_float(s.pc),
            r.method.name(),
            &fmt_float(r.concurrence),
            &fmt_float(r.l1),
        ])?;
    }
    w.flush()?;
    Ok(())
}
