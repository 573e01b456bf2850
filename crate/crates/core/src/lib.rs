//! Finite rings, rngs over a ring, and their ideal extensions.
//!
//! Everything is table driven: a rng of order `n` is a pair of `n x n`
//! tables over element indices `0..n`, with `0` the additive identity.
//! On top of that the crate builds the extension ring `E(R, I)` on `R x I`
//! with product `(r, i)(p, j) = (rp, ip + rj + ij)` and provides brute-force
//! and structural computations of its ideals, radicals and prime ideals.

pub mod builders;
pub mod classify;
pub mod decomposition;
pub mod dorroh;
pub mod error;
pub mod homs;
pub mod ideals;
pub mod iso;
pub mod limits;
pub mod prime;
pub mod radicals;
pub mod rng;
pub mod rrng;
pub mod subset;

pub use builders::{cyclic_ring, direct_product, matrix_ring, quotient_rng, trivial_mult_rng, upper_triangular_ring};
pub use classify::{ClassifiedPrime, PrimeForm};
pub use decomposition::{IdealDecomposition, Sidedness};
pub use homs::{HomTarget, RHomomorphism};
pub use ideals::IdealKind;
pub use prime::{PrimenessVerdict, PrimenessWitness};
pub use radicals::{RadicalReport, Side};
pub use dorroh::{dorroh_extend, DorrohRing};
pub use error::{Axiom, Error, Result, Violation};
pub use limits::Limits;
pub use rng::{validate_rng, Elem, FiniteRng, RngMorphism, Shape};
pub use rrng::{validate_rrng, RRngStructure};
pub use subset::{Ambient, IdealSubset, SubsetFlags};
