//! Realisers: nested-interval Baire category, trisection avoidance, the
//! finiteness realiser on enumerated sets, strong Cantor realisers and the
//! enumerator of finite closed sets.

mod avoid;
mod bct;
mod closed_enum;
mod omega;
mod strong_cantor;

pub use avoid::{cantor_avoid, stage_precision, AvoidancePoint, RealSequence, TrisectionStage};
pub use bct::{bct_realiser, BairePoint, Stage};
pub use closed_enum::{closed_components, enumerate_finite_closed, ClosedEnumeration};
pub use omega::{omega_fin, EnumeratedOmegaFin, FiniteSetInput, FinitenessRealiser};
pub use strong_cantor::{
    enumeration_slots, strong_cantor_realiser, CantorRoute, ExplicitSlices, HeightCountableSet, HeightDenominator, StrongCantorPoint,
};
