//! The shrunken super-good event: a one-column-narrower variant whose core
//! of two shapes down floats in both directions, sandwiched by four
//! 1-traversable slabs. An infection in the adjacent column segment I_1
//! (I_3) then upgrades it to a full super-good rectangle on the left
//! (right) copy.

use crate::error::DropletError;
use crate::lattice::config::Config;

use super::field::{Clip, ClipOutside, Field, Rect};
use super::scales::ScaleSequence;
use super::supergood::SgSearcher;
use super::traverse::{traversable_in_clip, Direction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShrunkenWitness {
    pub s1: i64,
    pub s2: i64,
}

/// Admissible shapes are translates of R(ell_m - 1, ell_m); recover m from
/// the dims.
fn match_m(rect: Rect, scales: &ScaleSequence) -> Result<usize, DropletError> {
    for m in 1..=scales.max_index() {
        let l = scales.ell_i64(m)?;
        if rect.w == l - 1 && rect.h == l {
            return Ok(m);
        }
    }
    Err(DropletError::GeometryMismatch(format!(
        "shrunken super-good needs dims (ell_m - 1, ell_m); got {}x{}",
        rect.w, rect.h
    )))
}

/// The five sub-events at offsets (s1, s2), all judged with all-healthy
/// surroundings beyond `rect`.
fn holds_at(
    searcher: &mut SgSearcher,
    rect: Rect,
    m: usize,
    scales: &ScaleSequence,
    s1: i64,
    s2: i64,
) -> Result<bool, DropletError> {
    let lm = scales.ell_i64(m)?;
    let lm1 = scales.ell_i64(m - 1)?;
    let clip = Clip::new(rect, ClipOutside::Healthy);
    let field = searcher.field;

    let bottom = Rect::new(rect.x0, rect.y0, lm - 1, s2);
    if !traversable_in_clip(field, &clip, bottom, Direction::Down) {
        return Ok(false);
    }
    let top = Rect::new(rect.x0, rect.y0 + s2 + lm1, lm - 1, lm - lm1 - s2);
    if !traversable_in_clip(field, &clip, top, Direction::Up) {
        return Ok(false);
    }
    let left = Rect::new(rect.x0, rect.y0 + s2, s1, lm1);
    if !traversable_in_clip(field, &clip, left, Direction::Left) {
        return Ok(false);
    }
    let right = Rect::new(
        rect.x0 + s1 + lm1,
        rect.y0 + s2,
        lm - lm1 - 1 - s1,
        lm1,
    );
    if !traversable_in_clip(field, &clip, right, Direction::Right) {
        return Ok(false);
    }
    let core = Rect::new(rect.x0 + s1, rect.y0 + s2, lm1, lm1);
    let core_level = 2 * (m as u32 - 1);
    Ok(searcher.search(core, core_level, &Clip::new(core, ClipOutside::Healthy))?.is_some())
}

/// Search the (s1, s2) ranges (lexicographically) for the five-event
/// intersection; the first hit is returned.
pub fn is_shrunken_supergood(
    config: &Config,
    rect: Rect,
    scales: &ScaleSequence,
) -> Result<Option<ShrunkenWitness>, DropletError> {
    let m = match_m(rect, scales)?;
    let field = Field::new(config)?;
    if !field.bounds().contains_rect(&rect) {
        return Err(DropletError::RectOutsideRegion);
    }
    let lm = scales.ell_i64(m)?;
    let lm1 = scales.ell_i64(m - 1)?;
    let mut searcher = SgSearcher::new(&field, scales);
    for s1 in 0..=(lm - lm1 - 1) {
        for s2 in 0..=(lm - lm1) {
            if holds_at(&mut searcher, rect, m, scales, s1, s2)? {
                return Ok(Some(ShrunkenWitness { s1, s2 }));
            }
        }
    }
    Ok(None)
}

/// The column segment immediately left of `rect` at the witness height: an
/// infection there makes the one-wider rectangle on the left super-good.
pub fn i1_segment(rect: Rect, w: ShrunkenWitness, scales: &ScaleSequence) -> Result<Rect, DropletError> {
    let m = match_m(rect, scales)?;
    let lm1 = scales.ell_i64(m - 1)?;
    Ok(Rect::new(rect.x0 - 1, rect.y0 + w.s2, 1, lm1))
}

/// Likewise immediately right of `rect`.
pub fn i3_segment(rect: Rect, w: ShrunkenWitness, scales: &ScaleSequence) -> Result<Rect, DropletError> {
    let m = match_m(rect, scales)?;
    let lm1 = scales.ell_i64(m - 1)?;
    Ok(Rect::new(rect.x0 + rect.w, rect.y0 + w.s2, 1, lm1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::droplet::supergood::is_supergood;
    use crate::lattice::boundary::BoundaryCondition;
    use crate::lattice::region::Region;

    #[test]
    fn toy_smallest_rect_matches_enumeration() {
        // scales (1,2): admissible shape R(1,2); by hand the event requires
        // both sites infected.
        let scales = ScaleSequence::custom(&[1, 2]).unwrap();
        let region = Region::rect2(1, 2).unwrap();
        let rect = Rect::new(0, 0, 1, 2);
        for bits in 0..4u32 {
            let mut cfg = Config::all_healthy(region.clone());
            for i in 0..2 {
                if bits & (1 << i) != 0 {
                    cfg.set_state(i, 0);
                }
            }
            let got = is_shrunken_supergood(&cfg, rect, &scales).unwrap();
            assert_eq!(got.is_some(), bits == 0b11, "bits = {bits:#b}");
        }
    }

    #[test]
    fn fully_infected_has_zero_witness() {
        let scales = ScaleSequence::custom(&[1, 2, 4]).unwrap();
        let region = Region::rect2(3, 4).unwrap();
        let cfg = Config::all_infected(region);
        let w = is_shrunken_supergood(&cfg, Rect::new(0, 0, 3, 4), &scales)
            .unwrap()
            .unwrap();
        assert_eq!((w.s1, w.s2), (0, 0));
    }

    #[test]
    fn all_healthy_is_none() {
        let scales = ScaleSequence::custom(&[1, 2, 4]).unwrap();
        let region = Region::rect2(3, 4).unwrap();
        let cfg = Config::all_healthy(region);
        assert!(is_shrunken_supergood(&cfg, Rect::new(0, 0, 3, 4), &scales)
            .unwrap()
            .is_none());
    }

    #[test]
    fn geometry_mismatch_rejected() {
        let scales = ScaleSequence::custom(&[1, 2, 4]).unwrap();
        let region = Region::rect2(4, 4).unwrap();
        let cfg = Config::all_infected(region);
        assert!(matches!(
            is_shrunken_supergood(&cfg, Rect::new(0, 0, 4, 4), &scales),
            Err(DropletError::GeometryMismatch(_))
        ));
    }

    #[test]
    fn infection_in_i1_upgrades_to_supergood() {
        // shrunken SG on the 3x4 sub-rectangle plus an infection in I_1
        // makes the 4x4 rectangle on the left super-good
        let scales = ScaleSequence::custom(&[1, 2, 4]).unwrap();
        let region = Region::rect2(4, 4).unwrap();
        let rect = Rect::new(1, 0, 3, 4);
        let mut found = 0;
        for seed in 0..400u64 {
            let cfg = crate::lattice::sample::sample_config(
                &region,
                crate::lattice::density::Density::new(0.55).unwrap(),
                &crate::rng::SeededRng::new(seed),
            );
            let Some(w) = is_shrunken_supergood(&cfg, rect, &scales).unwrap() else {
                continue;
            };
            let i1 = i1_segment(rect, w, &scales).unwrap();
            let infected_in_i1 = (i1.y0..i1.y0 + i1.h)
                .any(|y| cfg.state_at(&[i1.x0, y]).unwrap() == 0);
            if !infected_in_i1 {
                continue;
            }
            found += 1;
            let sg = is_supergood(
                &cfg,
                &BoundaryCondition::AllHealthy,
                Rect::new(0, 0, 4, 4),
                4,
                &scales,
            )
            .unwrap();
            assert!(sg.is_some(), "seed {seed}: I_1 infection must upgrade");
        }
        assert!(found > 5, "sweep found only {found} usable instances");
    }
}
