//! Metric primitives: windows, Poisson sampling, distances, simplex volumes
//! and smallest enclosing balls.

mod miniball;
mod sampling;
mod small;
mod volume;
mod window;

pub use miniball::{min_enclosing_ball, min_enclosing_ball_radius, Ball};
pub use sampling::{sample_poisson, sample_poisson_with, PointCloud, Provenance};
pub use volume::{diameter, diameter_le, dist2, simplex_volume, simplex_volume_of, within};
pub use window::{unit_ball_volume, Window, WindowKind};

