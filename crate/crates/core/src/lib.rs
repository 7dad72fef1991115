//! Combinatorial modules over polynomial rings and the dimension question
//! for commuting matrix triples: lattice shapes, gluing data, floor plans,
//! bottom-slice reductions, right-free configurations, an exact prime-field
//! oracle, and exhaustive verification campaigns over small instances.

pub mod campaign;
pub mod enumerate;
pub mod error;
pub mod floorplan;
pub mod gluing;
pub mod heights;
pub mod oracle;
pub mod point;
pub mod reduction;
pub mod rightfree;
pub mod shape;

pub use campaign::{run_campaign, CampaignReport, SearchBounds, CAMPAIGNS};
pub use error::{Error, Result};
pub use floorplan::{FloorPlan, Realization, Side};
pub use gluing::{
    enumerate_monomial_isos, gluings_from_ideals, indecomposable_decomposition, GluingData,
    IsoMatching,
};
pub use oracle::{
    algebra_dimension, module_to_matrices, verify_gq, GqVerdict, ModuleAction, ModuleBasis,
    PrimeFieldMatrix, CHECK_PRIME, DEFAULT_PRIME,
};
pub use point::Point;
pub use reduction::{
    bottom_slice, bottom_slice_reduction, prop_main_condition, reduce_to_fixpoint,
    verify_height_drop, SliceReduction,
};
pub use rightfree::{
    bottom_config, check_minimal_config_lemmas, config_leq, search_small_intersection,
    RightFreeConfig, SearchOutcome,
};
pub use shape::{
    find_unidirectional_path, ideal_to_shape, is_skew_shape, HeightPair, SkewShape, StandardShape,
};
