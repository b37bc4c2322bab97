//! Sea-surface reconstruction from directional wave spectra.

pub mod spectrum;
pub mod synth;

pub use spectrum::{load_spectrum, significant_wave_height, spectrum_heatmap_pgm, DirectionalSpectrum};
pub use synth::{
    draw_components, field_mean, field_variance, synthesize_field, GridSpec, WaveComponent, WaveField, STANDARD_GRAVITY,
};
