// SPDX-License-Identifier: Apache-2.0

//! Independent numerical checks of the closed-form model.

mod grid;
mod occupancy;
mod quadrature;
pub mod verify;

pub use grid::{distance_histogram, grid_pair_count};
pub use occupancy::{occupancy_monte_carlo, OccupancyEstimate};
pub use quadrature::{
    adaptive_simpson, density_moments, lavg_by_quadrature, DensityMoments, QuadratureSettings,
};
