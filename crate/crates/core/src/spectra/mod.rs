//! Solvable potentials: pole data, quantization relations, energy levels and
//! an independent shooting oracle.

pub mod levels;
pub mod potential;
pub mod quantization;
pub mod shooting;

pub use levels::{
    bound_state_count, exact_levels, first_level, level, level_table, qlm_levels, wkb_levels, BoundCount, LevelResult,
    LevelRow, LevelStatus, Method, Provenance,
};
pub use potential::{Domain, PotentialKind, PotentialSpec};
pub use quantization::{
    assemble_quantization, pole_data, relation_at, Mode, PoleDatum, PoleLocation, QuantizationRelation,
};
pub use shooting::shooting_oracle;
