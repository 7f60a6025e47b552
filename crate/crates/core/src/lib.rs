//! Finite orthomodular lattices, the relation-based topologies on them, and
//! numerical checks of the underlying R³ geometry.

pub mod geom;
pub mod lattice;
pub mod order_sets;
pub mod topology;

pub use num_rational::Ratio;

pub use lattice::{ElementId, FiniteOml, LatticeError, RawLatticeSpec};
pub use order_sets::{FinitePoset, LowerSet, Poset, SmashedPoset};
pub use topology::{Family, Topology, TopologyError};

pub type Vec3f = geom::Vec3<f64>;
pub type UnitVec3f = geom::UnitVec3<f64>;
pub type Line3f = geom::Line3<f64>;
pub type Subspace3f = geom::Subspace3<f64>;
pub type Anglef = geom::Angle<f64>;
pub type Line3f32 = geom::Line3<f32>;
pub type Subspace3f32 = geom::Subspace3<f32>;
/// Exact rationals for the θ ladder.
pub type Rational = Ratio<i64>;
