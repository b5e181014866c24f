//! Double Poisson structures on finite-dimensional semi-simple algebras.
//!
//! `S = M_{d_1} + ... + M_{d_k}` is modelled by matrix units. On top of that
//! sit the double derivation quiver, the necklace Lie algebra with its gluing
//! bracket, the double Schouten bracket on generators, classification of
//! degree-two Poisson tensors, the Poisson-Lichnerowicz complex, and trace
//! brackets on free products `C^p * C^q`.

pub mod algebra;
pub mod cohomology;
pub mod exactmath;
pub mod freeproduct;
pub mod necklace;
pub mod quiver;
pub mod schouten;
pub mod tensors;

pub use algebra::{
    BratteliDiagram, Element, ExplicitDoubleDerivation, MatrixUnit, SemiSimpleAlgebra, Tensor2,
    Tensor3,
};
pub use exactmath::{ExactMatrix, Poly, Rational, Ring};
pub use necklace::{GradedElement, Necklace};
pub use quiver::{Arrow, Quiver};
pub use tensors::DoubleTensor;
