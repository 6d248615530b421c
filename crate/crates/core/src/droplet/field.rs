//! 2-d occupancy view of a configuration with O(1) column/row segment
//! queries, plus the clip abstraction that realises the boundary
//! conventions of the droplet events: a super-good core is always judged
//! with all-healthy surroundings, while a top-level event reads the given
//! boundary configuration beyond its rectangle.

use crate::error::DropletError;
use crate::lattice::boundary::BoundaryCondition;
use crate::lattice::config::Config;

/// Axis-aligned rectangle in absolute coordinates; possibly degenerate
/// (zero width or height), which every event treats as vacuously good.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect {
    pub x0: i64,
    pub y0: i64,
    pub w: i64,
    pub h: i64,
}

impl Rect {
    pub fn new(x0: i64, y0: i64, w: i64, h: i64) -> Rect {
        debug_assert!(w >= 0 && h >= 0);
        Rect { x0, y0, w, h }
    }

    pub fn is_degenerate(&self) -> bool {
        self.w == 0 || self.h == 0
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        x >= self.x0 && x < self.x0 + self.w && y >= self.y0 && y < self.y0 + self.h
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        other.is_degenerate()
            || (other.x0 >= self.x0
                && other.y0 >= self.y0
                && other.x0 + other.w <= self.x0 + self.w
                && other.y0 + other.h <= self.y0 + self.h)
    }

    pub fn area(&self) -> i64 {
        self.w * self.h
    }
}

/// Column/row prefix sums of the infected set of a 2-d configuration.
pub struct Field {
    x0: i64,
    y0: i64,
    w: usize,
    h: usize,
    /// col_prefix[x * (h+1) + y] = infected count in column x, rows [0, y)
    col_prefix: Vec<u32>,
    /// row_prefix[y * (w+1) + x] = infected count in row y, cols [0, x)
    row_prefix: Vec<u32>,
}

impl Field {
    pub fn new(config: &Config) -> Result<Field, DropletError> {
        let region = config.region();
        if region.ndim() != 2 {
            return Err(DropletError::GeometryMismatch(format!(
                "droplet calculus is 2-d; region has {} axes",
                region.ndim()
            )));
        }
        let (w, h) = (region.dims()[0], region.dims()[1]);
        let (x0, y0) = (region.offset()[0], region.offset()[1]);
        let mut col_prefix = vec![0u32; w * (h + 1)];
        let mut row_prefix = vec![0u32; h * (w + 1)];
        for y in 0..h {
            for x in 0..w {
                let infected = config.is_infected(x + w * y) as u32;
                col_prefix[x * (h + 1) + y + 1] = col_prefix[x * (h + 1) + y] + infected;
                row_prefix[y * (w + 1) + x + 1] = row_prefix[y * (w + 1) + x] + infected;
            }
        }
        Ok(Field {
            x0,
            y0,
            w,
            h,
            col_prefix,
            row_prefix,
        })
    }

    /// The region footprint as a rectangle.
    pub fn bounds(&self) -> Rect {
        Rect::new(self.x0, self.y0, self.w as i64, self.h as i64)
    }

    #[inline]
    pub fn site_infected(&self, x: i64, y: i64) -> bool {
        let cx = (x - self.x0) as usize;
        let cy = (y - self.y0) as usize;
        debug_assert!(cx < self.w && cy < self.h);
        self.col_prefix[cx * (self.h + 1) + cy + 1] > self.col_prefix[cx * (self.h + 1) + cy]
    }

    /// Any infection in column x, rows [y_lo, y_hi)? Caller keeps the
    /// segment inside the region.
    #[inline]
    pub fn col_infected(&self, x: i64, y_lo: i64, y_hi: i64) -> bool {
        if y_hi <= y_lo {
            return false;
        }
        let cx = (x - self.x0) as usize;
        let lo = (y_lo - self.y0) as usize;
        let hi = (y_hi - self.y0) as usize;
        debug_assert!(cx < self.w && hi <= self.h);
        self.col_prefix[cx * (self.h + 1) + hi] > self.col_prefix[cx * (self.h + 1) + lo]
    }

    /// Any infection in row y, cols [x_lo, x_hi)?
    #[inline]
    pub fn row_infected(&self, y: i64, x_lo: i64, x_hi: i64) -> bool {
        if x_hi <= x_lo {
            return false;
        }
        let cy = (y - self.y0) as usize;
        let lo = (x_lo - self.x0) as usize;
        let hi = (x_hi - self.x0) as usize;
        debug_assert!(cy < self.h && hi <= self.w);
        self.row_prefix[cy * (self.w + 1) + hi] > self.row_prefix[cy * (self.w + 1) + lo]
    }
}

/// What a line beyond the clip rectangle reads as.
#[derive(Clone, Copy)]
pub enum ClipOutside<'a> {
    /// All-healthy surroundings: the convention for super-good cores.
    Healthy,
    /// The event's own boundary configuration on the clip edge.
    Bc(&'a BoundaryCondition),
    /// Read through: configuration while inside the region, `bc` beyond it.
    Region(&'a BoundaryCondition),
}

/// The evaluation universe of one event: sites inside `rect` come from the
/// configuration; lines beyond it resolve per `outside`.
#[derive(Clone, Copy)]
pub struct Clip<'a> {
    pub rect: Rect,
    pub outside: ClipOutside<'a>,
}

impl<'a> Clip<'a> {
    pub fn new(rect: Rect, outside: ClipOutside<'a>) -> Clip<'a> {
        Clip { rect, outside }
    }

    /// Occupancy of the vertical segment (x, [y_lo, y_hi)). The segment is
    /// either fully inside the clip or fully outside it, by construction of
    /// the droplet events.
    pub fn col_occupied(&self, field: &Field, x: i64, y_lo: i64, y_hi: i64) -> bool {
        if y_hi <= y_lo {
            return false;
        }
        if self.rect.contains(x, y_lo) && self.rect.contains(x, y_hi - 1) {
            return field.col_infected(x, y_lo, y_hi);
        }
        match self.outside {
            ClipOutside::Healthy => false,
            ClipOutside::Bc(bc) => match bc {
                BoundaryCondition::AllHealthy => false,
                BoundaryCondition::AllInfected => true,
                BoundaryCondition::Explicit(e) => {
                    (y_lo..y_hi).any(|y| e.state_at(&[x, y]) == 0)
                }
            },
            ClipOutside::Region(bc) => {
                let b = field.bounds();
                if b.contains(x, y_lo) && b.contains(x, y_hi - 1) {
                    field.col_infected(x, y_lo, y_hi)
                } else {
                    match bc {
                        BoundaryCondition::AllHealthy => false,
                        BoundaryCondition::AllInfected => true,
                        BoundaryCondition::Explicit(e) => {
                            (y_lo..y_hi).any(|y| e.state_at(&[x, y]) == 0)
                        }
                    }
                }
            }
        }
    }

    /// Occupancy of the horizontal segment ([x_lo, x_hi), y).
    pub fn row_occupied(&self, field: &Field, y: i64, x_lo: i64, x_hi: i64) -> bool {
        if x_hi <= x_lo {
            return false;
        }
        if self.rect.contains(x_lo, y) && self.rect.contains(x_hi - 1, y) {
            return field.row_infected(y, x_lo, x_hi);
        }
        match self.outside {
            ClipOutside::Healthy => false,
            ClipOutside::Bc(bc) => match bc {
                BoundaryCondition::AllHealthy => false,
                BoundaryCondition::AllInfected => true,
                BoundaryCondition::Explicit(e) => {
                    (x_lo..x_hi).any(|x| e.state_at(&[x, y]) == 0)
                }
            },
            ClipOutside::Region(bc) => {
                let b = field.bounds();
                if b.contains(x_lo, y) && b.contains(x_hi - 1, y) {
                    field.row_infected(y, x_lo, x_hi)
                } else {
                    match bc {
                        BoundaryCondition::AllHealthy => false,
                        BoundaryCondition::AllInfected => true,
                        BoundaryCondition::Explicit(e) => {
                            (x_lo..x_hi).any(|x| e.state_at(&[x, y]) == 0)
                        }
                    }
                }
            }
        }
    }

    /// Single-site read through the clip.
    pub fn site_infected(&self, field: &Field, x: i64, y: i64) -> bool {
        self.col_occupied(field, x, y, y + 1)
    }
}
