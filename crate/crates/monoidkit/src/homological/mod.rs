//! Double-arrow complexes, resolutions, and the Moore / inverse Dold-Kan pair.

pub mod adjunction;
pub mod complex;
pub mod resolution;
pub mod simplicial;

pub use adjunction::{adjunction_check, counit_is_simplicial, unit_is_injective, AdjunctionReport};
pub use complex::{induced_homology_map, is_admissible, is_quasi_isomorphism, multiplication_complex, DaComplex, DaMorphism, Homology};
pub use resolution::{resolve, resolve_monogenic, verify_monogenic, Flavor, MonogenicResolution, ResolveOpts, Resolution};
pub use simplicial::{dold_kan_k, moore, DoldKan, MooreComplex, TruncSimplicialASet};
