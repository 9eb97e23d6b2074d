//! Certification of the m-lift condition for 2-generator, 1-relator
//! presentations of tunnel-number-one knot manifolds.

pub mod cli;
pub mod cover;
pub mod diagram;
pub mod linalg;
pub mod mlift;
pub mod whitehead;
pub mod words;
