//! Holant problems on planar graphs: exact arithmetic, signatures, gadgets,
//! interpolation and tractable evaluators.

pub mod exactnum;
pub mod signatures;
pub mod coloring;
pub mod gadgets;
pub mod holant;
pub mod interpolation;
pub mod linalg;
pub mod tractable;
pub mod classifier;
pub mod certificates;
