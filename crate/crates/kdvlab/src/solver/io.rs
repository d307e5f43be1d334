//! Self-describing JSON container for trajectories.
//!
//! Layout (version 1): grid metadata, run parameters, the snapshot times,
//! and per-snapshot value arrays split into real and imaginary parts. The
//! `format`/`version` pair is checked on load, so future layout changes can
//! coexist with stored runs.

use super::{SolverConfig, Trajectory};
use crate::error::{Error, Result};
use crate::spectral::{Field, Grid, Space};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const TRAJECTORY_FORMAT: &str = "kdvlab-trajectory";
pub const TRAJECTORY_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct TrajectoryRecord {
    format: String,
    version: u32,
    grid: GridRecord,
    k: u32,
    dt: f64,
    dealias: f64,
    snapshot_stride: usize,
    nonlinearity_enabled: bool,
    times: Vec<f64>,
    states_re: Vec<Vec<f64>>,
    states_im: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct GridRecord {
    num_points: usize,
    half_length: f64,
}

pub fn trajectory_to_json(traj: &Trajectory) -> String {
    let record = TrajectoryRecord {
        format: TRAJECTORY_FORMAT.into(),
        version: TRAJECTORY_FORMAT_VERSION,
        grid: GridRecord {
            num_points: traj.grid().num_points(),
            half_length: traj.grid().half_length(),
        },
        k: traj.k(),
        dt: traj.dt(),
        dealias: traj.dealias(),
        snapshot_stride: traj.snapshot_stride(),
        nonlinearity_enabled: traj.nonlinearity_enabled(),
        times: traj.times().to_vec(),
        states_re: traj
            .states()
            .iter()
            .map(|s| s.values().iter().map(|v| v.re).collect())
            .collect(),
        states_im: traj
            .states()
            .iter()
            .map(|s| s.values().iter().map(|v| v.im).collect())
            .collect(),
    };
    serde_json::to_string(&record).expect("trajectory record serializes")
}

pub fn trajectory_from_json(text: &str) -> Result<Trajectory> {
    let record: TrajectoryRecord = serde_json::from_str(text).map_err(|e| {
        Error::structural("solver", "trajectory_from_json", format!("parse failure: {e}"))
    })?;
    let bad = |message: String| Error::structural("solver", "trajectory_from_json", message);
    if record.format != TRAJECTORY_FORMAT {
        return Err(bad(format!("unknown container format '{}'", record.format)));
    }
    if record.version != TRAJECTORY_FORMAT_VERSION {
        return Err(bad(format!(
            "unsupported version {} (expected {TRAJECTORY_FORMAT_VERSION})",
            record.version
        )));
    }
    let grid = Grid::new(record.grid.num_points, record.grid.half_length)?;
    if record.times.is_empty()
        || record.states_re.len() != record.times.len()
        || record.states_im.len() != record.times.len()
    {
        return Err(bad("times and state arrays must be equal-length and nonempty".into()));
    }
    // The config's end time is metadata reconstructed from the last snapshot;
    // a bare initial-state record gets one nominal tick.
    let t_end = record
        .times
        .last()
        .copied()
        .filter(|&t| t > 0.0)
        .unwrap_or(record.dt * record.snapshot_stride as f64);
    let config = SolverConfig::new(record.k, record.dt, t_end, record.snapshot_stride, grid)?
        .with_dealias(record.dealias)?;
    let config = if record.nonlinearity_enabled {
        config
    } else {
        config.without_nonlinearity()
    };
    let mut states = Vec::with_capacity(record.times.len());
    for (re, im) in record.states_re.iter().zip(&record.states_im) {
        if re.len() != grid.num_points() || im.len() != grid.num_points() {
            return Err(bad(format!(
                "snapshot length {} does not match the grid ({})",
                re.len(),
                grid.num_points()
            )));
        }
        let values: Vec<Complex64> = re
            .iter()
            .zip(im)
            .map(|(&a, &b)| Complex64::new(a, b))
            .collect();
        states.push(Field::new(grid, Space::Physical, values)?);
    }
    Ok(Trajectory {
        config,
        times: record.times,
        states,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::solve;

    #[test]
    fn round_trip_preserves_everything() {
        let g = Grid::new(128, 15.0).unwrap();
        let cfg = SolverConfig::new(2, 1e-2, 0.1, 5, g).unwrap();
        let u0 = Field::from_fn(g, |x| 0.3 * (-x * x).exp());
        let traj = solve(&u0, &cfg).unwrap();
        let text = trajectory_to_json(&traj);
        let back = trajectory_from_json(&text).unwrap();
        assert_eq!(back.times(), traj.times());
        assert_eq!(back.k(), traj.k());
        assert_eq!(back.dealias(), traj.dealias());
        assert_eq!(back.len(), traj.len());
        for (a, b) in back.states().iter().zip(traj.states()) {
            assert_eq!(a.values(), b.values());
        }
        // Determinism: serializing the reloaded trajectory is byte-identical.
        assert_eq!(trajectory_to_json(&back), text);
    }

    #[test]
    fn rejects_foreign_containers() {
        assert!(trajectory_from_json("{}").is_err());
        let g = Grid::new(128, 15.0).unwrap();
        let cfg = SolverConfig::new(2, 1e-2, 0.1, 5, g).unwrap();
        let u0 = Field::from_fn(g, |x| 0.3 * (-x * x).exp());
        let traj = solve(&u0, &cfg).unwrap();
        let text = trajectory_to_json(&traj).replace("kdvlab-trajectory", "other");
        assert!(trajectory_from_json(&text).is_err());
        let text = trajectory_to_json(&traj).replace("\"version\":1", "\"version\":99");
        assert!(trajectory_from_json(&text).is_err());
    }
}
