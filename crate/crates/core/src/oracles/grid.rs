// SPDX-License-Identifier: Apache-2.0

//! Exact socket-pair counts on a finite square grid.

use crate::error::{Error, Result};

/// Number of unordered socket pairs at Manhattan distance `l` on a
/// `side` x `side` grid.
///
/// Enumerates every displacement `(dx, dy)` with `|dx| + |dy| = l` and counts
/// the placements `(side - |dx|) * (side - |dy|)` of each one.
pub fn grid_pair_count(l: u64, side: u64) -> Result<u64> {
    if side < 2 {
        return Err(Error::domain(
            "side",
            side as f64,
            "grid side must be at least 2",
        ));
    }
    if l < 1 || l > 2 * (side - 1) {
        return Err(Error::domain(
            "l",
            l as f64,
            "distance must lie in [1, 2(side-1)]",
        ));
    }
    let mut count = 0;
    for dx in 0..=l.min(side - 1) {
        let dy = l - dx;
        if dy >= side {
            continue;
        }
        let placements = (side - dx) * (side - dy);
        // (dx, dy) and (dx, -dy) are distinct unordered pairs unless one leg is zero
        count += if dx > 0 && dy > 0 {
            2 * placements
        } else {
            placements
        };
    }
    Ok(count)
}

/// Pair counts for every distance, by brute force over all socket pairs.
///
/// Index `d` holds the number of unordered pairs at distance `d`. Quartic in
/// `side`; meant for cross-checking small grids.
pub fn distance_histogram(side: u64) -> Vec<u64> {
    let cells: Vec<(i64, i64)> = (0..side as i64)
        .flat_map(|x| (0..side as i64).map(move |y| (x, y)))
        .collect();
    let mut hist = vec![0u64; (2 * side.saturating_sub(1) + 1) as usize];
    for (i, &(x0, y0)) in cells.iter().enumerate() {
        for &(x1, y1) in &cells[i + 1..] {
            hist[((x0 - x1).abs() + (y0 - y1).abs()) as usize] += 1;
        }
    }
    hist
}
