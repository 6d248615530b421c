//! The recursive super-good events and their witnesses.
//!
//! A class-n rectangle is omega-super-good when it holds a 1-super-good
//! core of the next shape down at some offset, flanked by two slabs that
//! are omega-traversable away from the core. Cores are always judged with
//! all-healthy surroundings, so their events are self-contained; this makes
//! the (level, position) pairs memoizable across the offset search.
//!
//! The search scans offsets in increasing order and descends
//! depth-first, so the returned witness is the lexicographically smallest
//! (top level first).

use std::collections::HashMap;

use crate::error::DropletError;
use crate::lattice::boundary::BoundaryCondition;
use crate::lattice::config::Config;

use super::field::{Clip, ClipOutside, Field, Rect};
use super::scales::ScaleSequence;
use super::traverse::{traversable_in_clip, Direction};

/// Per-level core offsets, top level first. Level 0 contributes none, so a
/// class-n event carries exactly n offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SgWitness {
    pub offsets: Vec<i64>,
}

pub(crate) struct SgSearcher<'a> {
    pub field: &'a Field,
    pub scales: &'a ScaleSequence,
    /// 1-super-good results for exact Lambda^(k) translates, keyed by
    /// (level, x0, y0); the value is the smallest witness below that core.
    memo: HashMap<(u32, i64, i64), Option<Vec<i64>>>,
}

/// Geometry of the level-n event on `rect`: the core rectangle for offset s
/// and the two flanks with their traversal directions.
struct Split {
    core: Rect,
    before: (Rect, Direction),
    after: (Rect, Direction),
}

fn split_at(rect: Rect, n: u32, s: i64, scales: &ScaleSequence) -> Result<Split, DropletError> {
    if n % 2 == 0 {
        // even: full-width core of height ell_{m-1} at vertical offset s,
        // below-slab down-traversable, above-slab up-traversable
        let m = (n / 2) as usize;
        let core_h = scales.ell_i64(m - 1)?;
        Ok(Split {
            core: Rect::new(rect.x0, rect.y0 + s, rect.w, core_h),
            before: (Rect::new(rect.x0, rect.y0, rect.w, s), Direction::Down),
            after: (
                Rect::new(
                    rect.x0,
                    rect.y0 + s + core_h,
                    rect.w,
                    rect.h - s - core_h,
                ),
                Direction::Up,
            ),
        })
    } else {
        // odd: full-height square core of side ell_m at horizontal offset s
        let m = ((n - 1) / 2) as usize;
        let core_w = scales.ell_i64(m)?;
        Ok(Split {
            core: Rect::new(rect.x0 + s, rect.y0, core_w, rect.h),
            before: (Rect::new(rect.x0, rect.y0, s, rect.h), Direction::Left),
            after: (
                Rect::new(
                    rect.x0 + s + core_w,
                    rect.y0,
                    rect.w - s - core_w,
                    rect.h,
                ),
                Direction::Right,
            ),
        })
    }
}

/// Admissible core offsets adapt to the rectangle's actual side: class-n
/// rectangles that are not exact Lambda^(n) translates range over
/// [0, side - core side].
fn offset_range(rect: Rect, n: u32, scales: &ScaleSequence) -> Result<i64, DropletError> {
    if n % 2 == 0 {
        let m = (n / 2) as usize;
        Ok(rect.h - scales.ell_i64(m - 1)?)
    } else {
        let m = ((n - 1) / 2) as usize;
        Ok(rect.w - scales.ell_i64(m)?)
    }
}

impl<'a> SgSearcher<'a> {
    pub fn new(field: &'a Field, scales: &'a ScaleSequence) -> SgSearcher<'a> {
        SgSearcher {
            field,
            scales,
            memo: HashMap::new(),
        }
    }

    /// Smallest witness of the level-n event on `rect` under `clip`, or
    /// None. `rect` must be of class n (validated by the public entry).
    pub fn search(&mut self, rect: Rect, n: u32, clip: &Clip) -> Result<Option<Vec<i64>>, DropletError> {
        if n == 0 {
            return Ok(if clip.site_infected(self.field, rect.x0, rect.y0) {
                Some(Vec::new())
            } else {
                None
            });
        }
        let max_s = offset_range(rect, n, self.scales)?;
        for s in 0..=max_s {
            let split = split_at(rect, n, s, self.scales)?;
            if !traversable_in_clip(self.field, clip, split.before.0, split.before.1) {
                continue;
            }
            if !traversable_in_clip(self.field, clip, split.after.0, split.after.1) {
                continue;
            }
            if let Some(mut below) = self.search_core(split.core, n - 1)? {
                let mut offsets = Vec::with_capacity(below.len() + 1);
                offsets.push(s);
                offsets.append(&mut below);
                return Ok(Some(offsets));
            }
        }
        Ok(None)
    }

    /// 1-super-good search on an exact Lambda^(k) translate, memoized.
    fn search_core(&mut self, core: Rect, k: u32) -> Result<Option<Vec<i64>>, DropletError> {
        let key = (k, core.x0, core.y0);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let clip = Clip::new(core, ClipOutside::Healthy);
        let result = self.search(core, k, &clip)?;
        self.memo.insert(key, result.clone());
        Ok(result)
    }

    /// Witness replay: holds iff the event realizes with exactly these
    /// offsets (flanks traversable at each level, final core infected).
    pub fn verify(
        &mut self,
        rect: Rect,
        n: u32,
        clip: &Clip,
        offsets: &[i64],
    ) -> Result<bool, DropletError> {
        if n == 0 {
            return Ok(offsets.is_empty() && clip.site_infected(self.field, rect.x0, rect.y0));
        }
        let Some((&s, rest)) = offsets.split_first() else {
            return Ok(false);
        };
        if s < 0 || s > offset_range(rect, n, self.scales)? {
            return Ok(false);
        }
        let split = split_at(rect, n, s, self.scales)?;
        if !traversable_in_clip(self.field, clip, split.before.0, split.before.1)
            || !traversable_in_clip(self.field, clip, split.after.0, split.after.1)
        {
            return Ok(false);
        }
        let core_clip = Clip::new(split.core, ClipOutside::Healthy);
        self.verify(split.core, n - 1, &core_clip, rest)
    }
}

fn validate_class(
    config: &Config,
    rect: Rect,
    n: u32,
    scales: &ScaleSequence,
) -> Result<Field, DropletError> {
    if !scales.is_class(rect.w, rect.h, n)? {
        return Err(DropletError::NotOfClass { n });
    }
    let field = Field::new(config)?;
    if !field.bounds().contains_rect(&rect) {
        return Err(DropletError::RectOutsideRegion);
    }
    Ok(field)
}

/// The omega-super-good event for a class-n rectangle: returns the
/// lexicographically smallest witness (top-down, smallest offsets first)
/// or None. Sites beyond `rect` are read from `bc` only.
pub fn is_supergood(
    config: &Config,
    bc: &BoundaryCondition,
    rect: Rect,
    n: u32,
    scales: &ScaleSequence,
) -> Result<Option<SgWitness>, DropletError> {
    let field = validate_class(config, rect, n, scales)?;
    let mut searcher = SgSearcher::new(&field, scales);
    let clip = Clip::new(rect, ClipOutside::Bc(bc));
    Ok(searcher
        .search(rect, n, &clip)?
        .map(|offsets| SgWitness { offsets }))
}

/// Replay a witness against the configuration.
pub fn verify_witness(
    config: &Config,
    bc: &BoundaryCondition,
    rect: Rect,
    n: u32,
    scales: &ScaleSequence,
    witness: &SgWitness,
) -> Result<bool, DropletError> {
    let field = validate_class(config, rect, n, scales)?;
    let mut searcher = SgSearcher::new(&field, scales);
    let clip = Clip::new(rect, ClipOutside::Bc(bc));
    searcher.verify(rect, n, &clip, &witness.offsets)
}

/// A mobile droplet is a super-good square of the final shape
/// Lambda^(2N): the top-level boundary plays no role (1-super-good).
pub fn is_mobile_droplet(
    config: &Config,
    rect: Rect,
    scales: &ScaleSequence,
) -> Result<bool, DropletError> {
    let n = scales.max_level();
    let (w, h) = scales.level_dims(n)?;
    if (rect.w, rect.h) != (w, h) {
        return Err(DropletError::GeometryMismatch(format!(
            "mobile droplet must be {w}x{h}, got {}x{}",
            rect.w, rect.h
        )));
    }
    Ok(is_supergood(config, &BoundaryCondition::AllHealthy, rect, n, scales)?.is_some())
}
