//! The six canonical figure datasets.
//!
//! Each dataset covers a superset of the panels it feeds, with `r_b = r_c = r`
//! on 51 points of `[0, π/4]` and `P_b = P_c = P`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use relcoh_core::{ChannelKind, NoisePolicy, Subsystem};

use crate::error::{CliError, Result};
use crate::sweep::{run_sweep, tied, write_csv, SweepSpec};
use crate::values::linspace;

pub const GRID_POINTS: usize = 51;

pub struct Figure {
    pub name: &'static str,
    pub spec: SweepSpec,
}

fn figure(name: &'static str, subsystems: &[Subsystem], channel: ChannelKind, alphas: Vec<f64>, ps: Vec<f64>) -> Figure {
    Figure {
        name,
        spec: SweepSpec {
            subsystems: subsystems.to_vec(),
            channel: Some(channel),
            policy: NoisePolicy::ReducedQubit,
            alphas,
            r_pairs: tied(&linspace(0.0, FRAC_PI_4, GRID_POINTS)),
            p_pairs: tied(&ps),
            seed: 0,
        },
    }
}

pub fn canonical_figures() -> Vec<Figure> {
    use ChannelKind::*;
    use Subsystem::*;
    let alpha_fan = vec![0.25, 0.5, FRAC_1_SQRT_2, 0.75, 1.0];
    let alpha_axis = linspace(0.0, 1.0, 21);
    let p_fan = linspace(0.0, 1.0, 6);
    let p_axis = linspace(0.0, 1.0, GRID_POINTS);
    vec![
        figure("fig1_damping_r", &[AB1C1, AB2C2], PhaseDamping, alpha_fan, p_fan.clone()),
        figure("fig2_damping_r_p", &[AB1C1, AB2C2, AB2C1], PhaseDamping, vec![FRAC_1_SQRT_2], p_axis.clone()),
        figure("fig3_phase_flip_r_alpha", &[AB1C1, AB2C2], PhaseFlip, alpha_axis.clone(), p_fan.clone()),
        figure("fig4_phase_flip_r_p", &[AB1C1, AB2C2, AB1C2], PhaseFlip, vec![FRAC_1_SQRT_2], p_axis),
        figure("fig5_bit_flip_r_alpha", &[AB1C1, AB2C2], BitFlip, alpha_axis.clone(), p_fan),
        figure("fig6_bit_flip_third", &[AB1C1, AB2C2], BitFlip, alpha_axis, vec![1.0 / 3.0]),
    ]
}

/// Writes `<name>.csv` for every canonical figure into `dir`.
pub fn write_figures(dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut written = Vec::new();
    for fig in canonical_figures() {
        let rows = run_sweep(&fig.spec)?;
        let path = dir.join(format!("{}.csv", fig.name));
        let file = File::create(&path).map_err(|e| CliError::io(&path, e))?;
        write_csv(&rows, BufWriter::new(file)).map_err(|source| CliError::Csv { path: path.clone(), source })?;
        written.push(path);
    }
    Ok(written)
}
