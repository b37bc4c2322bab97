//! Stochastic plotter graphics. Generators draw from an explicit
//! [`RngState`](crate::rng::RngState) and produce a [`VectorScene`].

pub mod density;
pub mod hommage;
pub mod nees;
pub mod raster;
pub mod scene;
pub mod svg;

pub use density::{gen_density_field, DensityMap, DensityParams, Orientation};
pub use hommage::{gen_hommage_klee, gen_iid_segments, CellState, Hommage, HommageParams};
pub use nees::{gen_motif_grid, gen_ncorner, CellRule};
pub use raster::rasterize;
pub use scene::{Point, Polyline, Rect, VectorScene, DEFAULT_STROKE_WIDTH};
pub use svg::to_svg;
