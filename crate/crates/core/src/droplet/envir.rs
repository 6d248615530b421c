//! Environment events on the torus: a box is *good* when every row and
//! every column of it contains an infection; the global event asks all
//! boxes of a droplet-sized partition to be good and at least one to be
//! super-good.

use crate::error::DropletError;
use crate::lattice::boundary::BoundaryCondition;
use crate::lattice::config::Config;

use super::field::{Field, Rect};
use super::scales::ScaleSequence;
use super::supergood::is_supergood;

/// Every row and every column of `boxr` contains an infected site.
pub fn env_good_box(config: &Config, boxr: Rect) -> Result<bool, DropletError> {
    let field = Field::new(config)?;
    if !field.bounds().contains_rect(&boxr) {
        return Err(DropletError::RectOutsideRegion);
    }
    if boxr.is_degenerate() {
        return Ok(false);
    }
    for x in boxr.x0..boxr.x0 + boxr.w {
        if !field.col_infected(x, boxr.y0, boxr.y0 + boxr.h) {
            return Ok(false);
        }
    }
    for y in boxr.y0..boxr.y0 + boxr.h {
        if !field.row_infected(y, boxr.x0, boxr.x0 + boxr.w) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvReport {
    pub boxes: usize,
    pub good_boxes: usize,
    pub supergood_boxes: usize,
}

impl EnvReport {
    /// The environment event: all boxes good and at least one super-good.
    pub fn holds(&self) -> bool {
        self.good_boxes == self.boxes && self.supergood_boxes >= 1
    }
}

/// Partition a 2-d torus into boxes of the final droplet shape
/// Lambda^(2N) and evaluate the environment event.
pub fn env_report(config: &Config, scales: &ScaleSequence) -> Result<EnvReport, DropletError> {
    let region = config.region();
    if !region.is_torus() || region.ndim() != 2 {
        return Err(DropletError::NotATorus);
    }
    let n = scales.max_level();
    let (side, side_h) = scales.level_dims(n)?;
    debug_assert_eq!(side, side_h);
    let (w, h) = (region.dims()[0] as i64, region.dims()[1] as i64);
    if side <= 0 || w % side != 0 || h % side != 0 {
        return Err(DropletError::PartitionMismatch { side: side as u64 });
    }
    let mut report = EnvReport {
        boxes: 0,
        good_boxes: 0,
        supergood_boxes: 0,
    };
    for by in 0..h / side {
        for bx in 0..w / side {
            let boxr = Rect::new(bx * side, by * side, side, side);
            report.boxes += 1;
            if env_good_box(config, boxr)? {
                report.good_boxes += 1;
            }
            if is_supergood(config, &BoundaryCondition::AllHealthy, boxr, n, scales)?.is_some() {
                report.supergood_boxes += 1;
            }
        }
    }
    Ok(report)
}

/// Convenience wrapper for the boolean event.
pub fn env_event(config: &Config, scales: &ScaleSequence) -> Result<bool, DropletError> {
    Ok(env_report(config, scales)?.holds())
}
