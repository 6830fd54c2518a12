//! Affine geometry of a torsion-free connection: curvature, Ricci,
//! the affine Szabó operator, characteristic-polynomial certificates and
//! the decision procedures built on them.

mod charpoly;
mod connection;
mod curvature;
mod szabo;

pub use charpoly::{charpoly, CharPolyCertificate};
pub use connection::{AffineConnection, ConnectionError};
pub use curvature::{curvature, cyclic_parallel_ricci, is_flat, is_l3_space, ricci, ricci_from_curvature};
pub use szabo::{
    is_affine_szabo, nabla_curvature, szabo_from_nabla_r, szabo_operator, SymbolicVector, SzaboError,
};
