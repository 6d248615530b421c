//! Independently written brute-force reference recognizers for the
//! acceptance checks. Everything here works on plain `Vec<Vec<u8>>` grids
//! (grid[y][x], 0 = infected) with a closure giving the states beyond the
//! grid, uses naive full scans, no prefix structures, no memoization, and
//! is deliberately decoupled from the production droplet code.

/// State of (x, y): inside the grid from the grid, outside from `beyond`.
fn state_at(grid: &[Vec<u8>], beyond: &dyn Fn(i64, i64) -> u8, x: i64, y: i64) -> u8 {
    let h = grid.len() as i64;
    let w = if h > 0 { grid[0].len() as i64 } else { 0 };
    if x >= 0 && x < w && y >= 0 && y < h {
        grid[y as usize][x as usize]
    } else {
        beyond(x, y)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum RefDir {
    Right,
    Left,
    Up,
    Down,
}

/// Definition-level traversability of the rectangle [x0, x0+w) x [y0, y0+h):
/// every pair of adjacent columns (rows) of the rectangle together with the
/// one boundary line in the walk direction holds an infection. Empty
/// rectangles pass vacuously.
pub fn ref_traversable(
    grid: &[Vec<u8>],
    beyond: &dyn Fn(i64, i64) -> u8,
    x0: i64,
    y0: i64,
    w: i64,
    h: i64,
    dir: RefDir,
) -> bool {
    if w == 0 || h == 0 {
        return true;
    }
    let col_occupied = |x: i64| (y0..y0 + h).any(|y| state_at(grid, beyond, x, y) == 0);
    let row_occupied = |y: i64| (x0..x0 + w).any(|x| state_at(grid, beyond, x, y) == 0);
    let line: Vec<bool> = match dir {
        RefDir::Right => (x0..=x0 + w).map(col_occupied).collect(),
        RefDir::Left => (x0 - 1..x0 + w).map(col_occupied).collect(),
        RefDir::Up => (y0..=y0 + h).map(row_occupied).collect(),
        RefDir::Down => (y0 - 1..y0 + h).map(row_occupied).collect(),
    };
    line.windows(2).all(|pair| pair[0] || pair[1])
}

/// Definition-level super-good recognizer. `scales` lists ell_0..ell_max;
/// level-n rectangles split around a next-shape-down core whose
/// surroundings read all-healthy regardless of the true neighbourhood.
pub fn ref_supergood(
    grid: &[Vec<u8>],
    beyond: &dyn Fn(i64, i64) -> u8,
    x0: i64,
    y0: i64,
    w: i64,
    h: i64,
    n: u32,
    scales: &[i64],
) -> bool {
    if n == 0 {
        return w == 1 && h == 1 && state_at(grid, beyond, x0, y0) == 0;
    }
    if n as usize % 2 == 0 {
        let m = n as usize / 2;
        let core_h = scales[m - 1];
        for s in 0..=(h - core_h) {
            // below slab down-traversable, above slab up-traversable, the
            // full-width core 1-super-good
            if !ref_traversable(grid, beyond, x0, y0, w, s, RefDir::Down) {
                continue;
            }
            if !ref_traversable(
                grid,
                beyond,
                x0,
                y0 + s + core_h,
                w,
                h - s - core_h,
                RefDir::Up,
            ) {
                continue;
            }
            if ref_supergood_healthy_outside(grid, x0, y0 + s, w, core_h, n - 1, scales) {
                return true;
            }
        }
        false
    } else {
        let m = (n as usize - 1) / 2;
        let core_w = scales[m];
        for s in 0..=(w - core_w) {
            if !ref_traversable(grid, beyond, x0, y0, s, h, RefDir::Left) {
                continue;
            }
            if !ref_traversable(
                grid,
                beyond,
                x0 + s + core_w,
                y0,
                w - s - core_w,
                h,
                RefDir::Right,
            ) {
                continue;
            }
            if ref_supergood_healthy_outside(grid, x0 + s, y0, core_w, h, n - 1, scales) {
                return true;
            }
        }
        false
    }
}

/// A core event: the same recursion with everything beyond the core's own
/// rectangle reading healthy.
fn ref_supergood_healthy_outside(
    grid: &[Vec<u8>],
    x0: i64,
    y0: i64,
    w: i64,
    h: i64,
    n: u32,
    scales: &[i64],
) -> bool {
    let inside = move |x: i64, y: i64| x >= x0 && x < x0 + w && y >= y0 && y < y0 + h;
    // rebuild a view where out-of-core sites are healthy: simplest honest
    // construction is a masked copy of the grid
    let masked: Vec<Vec<u8>> = grid
        .iter()
        .enumerate()
        .map(|(y, row)| {
            row.iter()
                .enumerate()
                .map(|(x, &v)| {
                    if inside(x as i64, y as i64) {
                        v
                    } else {
                        1
                    }
                })
                .collect()
        })
        .collect();
    let healthy = |_: i64, _: i64| 1u8;
    ref_supergood(&masked, &healthy, x0, y0, w, h, n, scales)
}

/// Exact traversability probability by enumerating all 2^(w*h) grids.
pub fn ref_traversable_probability(
    w: usize,
    h: usize,
    q: f64,
    boundary_state: u8,
    dir: RefDir,
) -> f64 {
    let n = w * h;
    let beyond = move |_: i64, _: i64| boundary_state;
    let mut total = 0.0;
    if n == 0 {
        return 1.0;
    }
    for bits in 0u32..1 << n {
        let grid: Vec<Vec<u8>> = (0..h)
            .map(|y| {
                (0..w)
                    .map(|x| if bits & (1 << (y * w + x)) != 0 { 0 } else { 1 })
                    .collect()
            })
            .collect();
        if ref_traversable(&grid, &beyond, 0, 0, w as i64, h as i64, dir) {
            let infected = bits.count_ones() as i32;
            total += q.powi(infected) * (1.0 - q).powi(n as i32 - infected);
        }
    }
    total
}
