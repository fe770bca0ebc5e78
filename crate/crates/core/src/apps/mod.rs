//! Applications: double random phase encryption, optimal multiplicative
//! filtering with a genetic parameter search, and chirp band filtering.

pub mod drped;
pub mod filter;
pub mod ga;

pub use drped::{drped_decrypt, drped_encrypt, key_sensitivity_sweep, KeyMaterial, SweepRow};
pub use filter::{
    band_filter, band_mask, multiplicative_filter, optimal_filter, optimal_mask, BandKind, FilterMask,
    MaskKind,
};
pub use ga::{ga_search, GaConfig, GaResult, SearchSpace};
