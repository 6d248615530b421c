//! Finite regions of Z^d: axis-aligned boxes (with an integer offset, so
//! translates are first-class) and periodic tori.

use crate::error::LatticeError;

/// Hard cap on the number of sites of one region (2^27 sites = 16 MB of
/// bit-packed configuration). Exhaustive tools fail loudly past it.
pub const SITE_CAP: usize = 1 << 27;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionKind {
    Rectangle,
    Torus,
}

/// A finite region of Z^d. Axis 0 varies fastest in the linear site order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    kind: RegionKind,
    dims: Vec<usize>,
    offset: Vec<i64>,
    len: usize,
}

impl Region {
    fn validate(kind: RegionKind, dims: &[usize], offset: &[i64]) -> Result<usize, LatticeError> {
        if dims.is_empty() {
            return Err(LatticeError::EmptyDims);
        }
        if dims.iter().any(|&d| d == 0) {
            return Err(LatticeError::ZeroDim);
        }
        if offset.len() != dims.len() {
            return Err(LatticeError::DimensionMismatch {
                expected: dims.len(),
                got: offset.len(),
            });
        }
        let mut total: u128 = 1;
        for &d in dims {
            total = total.saturating_mul(d as u128);
        }
        if total > SITE_CAP as u128 {
            return Err(LatticeError::SiteCapExceeded {
                sites: total,
                cap: SITE_CAP,
            });
        }
        let _ = kind;
        Ok(total as usize)
    }

    pub fn rectangle(dims: &[usize]) -> Result<Region, LatticeError> {
        Self::rectangle_at(dims, &vec![0; dims.len()])
    }

    pub fn rectangle_at(dims: &[usize], offset: &[i64]) -> Result<Region, LatticeError> {
        let len = Self::validate(RegionKind::Rectangle, dims, offset)?;
        Ok(Region {
            kind: RegionKind::Rectangle,
            dims: dims.to_vec(),
            offset: offset.to_vec(),
            len,
        })
    }

    pub fn torus(dims: &[usize]) -> Result<Region, LatticeError> {
        let offset = vec![0; dims.len()];
        let len = Self::validate(RegionKind::Torus, dims, &offset)?;
        Ok(Region {
            kind: RegionKind::Torus,
            dims: dims.to_vec(),
            offset,
            len,
        })
    }

    /// 2-d rectangle `[0,w) x [0,h)`.
    pub fn rect2(w: usize, h: usize) -> Result<Region, LatticeError> {
        Self::rectangle(&[w, h])
    }

    /// Square 2-d torus of side `l`.
    pub fn torus2(l: usize) -> Result<Region, LatticeError> {
        Self::torus(&[l, l])
    }

    /// The same box shifted by `delta` (rectangles only).
    pub fn translated(&self, delta: &[i64]) -> Result<Region, LatticeError> {
        if self.kind != RegionKind::Rectangle {
            return Err(LatticeError::NotARectangle);
        }
        if delta.len() != self.ndim() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.ndim(),
                got: delta.len(),
            });
        }
        let offset: Vec<i64> = self
            .offset
            .iter()
            .zip(delta)
            .map(|(o, d)| o + d)
            .collect();
        Self::rectangle_at(&self.dims, &offset)
    }

    pub fn kind(&self) -> RegionKind {
        self.kind
    }

    pub fn is_torus(&self) -> bool {
        self.kind == RegionKind::Torus
    }

    pub fn ndim(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn offset(&self) -> &[i64] {
        &self.offset
    }

    /// Number of sites.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false // dims are positive by construction
    }

    pub fn contains(&self, coord: &[i64]) -> bool {
        if coord.len() != self.ndim() {
            return false;
        }
        match self.kind {
            RegionKind::Rectangle => coord.iter().zip(&self.dims).zip(&self.offset).all(
                |((&c, &d), &o)| c >= o && c < o + d as i64,
            ),
            // Tori wrap, so every coordinate vector of the right arity names a site.
            RegionKind::Torus => true,
        }
    }

    /// Linear index of a coordinate, or None when outside a rectangle.
    pub fn index_of(&self, coord: &[i64]) -> Option<usize> {
        if coord.len() != self.ndim() {
            return None;
        }
        let mut idx = 0usize;
        let mut stride = 1usize;
        for axis in 0..self.ndim() {
            let d = self.dims[axis] as i64;
            let c = match self.kind {
                RegionKind::Rectangle => {
                    let c = coord[axis] - self.offset[axis];
                    if c < 0 || c >= d {
                        return None;
                    }
                    c
                }
                RegionKind::Torus => coord[axis].rem_euclid(d),
            };
            idx += c as usize * stride;
            stride *= self.dims[axis];
        }
        Some(idx)
    }

    /// Coordinate of a linear index, written into `out`.
    pub fn coord_into(&self, mut idx: usize, out: &mut [i64]) {
        debug_assert!(idx < self.len && out.len() == self.ndim());
        for axis in 0..self.ndim() {
            let d = self.dims[axis];
            out[axis] = (idx % d) as i64 + self.offset[axis];
            idx /= d;
        }
    }

    pub fn coord_of(&self, idx: usize) -> Vec<i64> {
        let mut out = vec![0; self.ndim()];
        self.coord_into(idx, &mut out);
        out
    }

    /// The outer boundary: sites of Z^d at distance one from the region.
    /// Each boundary site has exactly one axis out of range by one.
    pub fn boundary_sites(&self) -> Result<Vec<Vec<i64>>, LatticeError> {
        if self.kind != RegionKind::Rectangle {
            return Err(LatticeError::NotARectangle);
        }
        let nd = self.ndim();
        let mut out = Vec::new();
        for axis in 0..nd {
            let inner: Vec<usize> = (0..nd).filter(|&a| a != axis).collect();
            let face_count: usize = inner.iter().map(|&a| self.dims[a]).product();
            for side in 0..2 {
                let coord_axis = if side == 0 {
                    self.offset[axis] - 1
                } else {
                    self.offset[axis] + self.dims[axis] as i64
                };
                for mut k in 0..face_count {
                    let mut coord = vec![0i64; nd];
                    coord[axis] = coord_axis;
                    for &a in &inner {
                        coord[a] = (k % self.dims[a]) as i64 + self.offset[a];
                        k /= self.dims[a];
                    }
                    out.push(coord);
                }
            }
        }
        Ok(out)
    }

    /// Precompute per-site neighbour indices. Sentinel `u32::MAX` marks a
    /// neighbour outside the region (rectangles only). Neighbours are
    /// deduplicated, so on a torus of side 2 each site lists 2 distinct
    /// neighbours rather than 4 wrapped clock directions.
    pub fn neighbor_table(&self) -> NeighborTable {
        let nd = self.ndim();
        let ndirs = 2 * nd;
        let mut data = vec![u32::MAX; self.len * ndirs];
        let mut coord = vec![0i64; nd];
        for idx in 0..self.len {
            self.coord_into(idx, &mut coord);
            let row = &mut data[idx * ndirs..(idx + 1) * ndirs];
            let mut count = 0;
            for axis in 0..nd {
                for delta in [-1i64, 1] {
                    coord[axis] += delta;
                    let entry = self.index_of(&coord).map(|i| i as u32);
                    coord[axis] -= delta;
                    match entry {
                        Some(i) => {
                            if !row[..count].contains(&i) {
                                row[count] = i;
                                count += 1;
                            }
                        }
                        None => {
                            // keep a per-direction outside marker; distinct
                            // outside neighbours are never equal sites
                            row[count] = u32::MAX;
                            count += 1;
                        }
                    }
                }
            }
            row[count..].fill(PAD);
        }
        NeighborTable {
            ndirs,
            data,
            len: self.len,
        }
    }

    /// Visit the (deduplicated) neighbours of `idx`: inside neighbours give
    /// `Some(linear index)`, outside ones `None` together with the coordinate.
    pub fn for_each_neighbor<F: FnMut(Option<usize>, &[i64])>(&self, idx: usize, mut f: F) {
        let nd = self.ndim();
        let mut coord = vec![0i64; nd];
        self.coord_into(idx, &mut coord);
        let mut seen: Vec<usize> = Vec::with_capacity(2 * nd);
        for axis in 0..nd {
            for delta in [-1i64, 1] {
                coord[axis] += delta;
                match self.index_of(&coord) {
                    Some(i) => {
                        if !seen.contains(&i) {
                            seen.push(i);
                            f(Some(i), &coord);
                        }
                    }
                    None => f(None, &coord),
                }
                coord[axis] -= delta;
            }
        }
    }
}

/// Sentinel for an out-of-region neighbour slot.
pub const OUTSIDE: u32 = u32::MAX;
/// Sentinel for an unused (deduplicated) slot.
pub const PAD: u32 = u32::MAX - 1;

/// Flat per-site neighbour lists with `OUTSIDE` / `PAD` sentinels.
pub struct NeighborTable {
    ndirs: usize,
    len: usize,
    data: Vec<u32>,
}

impl NeighborTable {
    #[inline]
    pub fn neighbors(&self, idx: usize) -> &[u32] {
        &self.data[idx * self.ndirs..(idx + 1) * self.ndirs]
    }

    pub fn ndirs(&self) -> usize {
        self.ndirs
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}
