//! Exact integral symplectic basis manipulation, the embedding invariant
//! `l(Σ)`, blow-up bookkeeping and chamber-aware adjunction genus bounds for
//! surfaces in smooth 4-manifolds.
//!
//! The math is generic over an exact integer [`Scalar`]; the aliases below fix
//! it to arbitrary-precision [`BigInt`], which is what the CLI uses.

pub mod adjunction;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod reduction;
pub mod scalar;
pub mod swtopology;
pub mod symplattice;

pub use num_bigint::BigInt;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};

pub type Int = BigInt;
pub type BigRational = scalar::Rational<BigInt>;

pub type Vector = symplattice::SymplecticVector<BigInt>;
pub type Basis = symplattice::SymplecticBasis<BigInt>;
pub type Change = symplattice::BasisChange<BigInt>;

pub type PrimitiveVector = reduction::PrimitiveAVector<BigInt>;
pub type Embedding = reduction::EmbeddingMap<BigInt>;
pub type Trace = reduction::ReductionTrace<BigInt>;

pub type Manifold = swtopology::ManifoldData<BigInt>;
pub type Surface = swtopology::SurfaceData<BigInt>;
pub type SpinC = swtopology::SpinCData<BigInt>;

pub type Case = adjunction::AdjunctionCase<BigInt>;
pub type Verdict = adjunction::TheoremVerdict<BigInt>;
pub type Report = adjunction::BoundReport<BigInt>;
