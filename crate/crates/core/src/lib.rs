pub mod enumerate;
pub mod error;
pub mod interval;
pub mod rational;
pub mod real;
pub mod open_sets;
pub mod gallery;
pub mod certificate;
pub mod realisers;
pub mod reductions;
