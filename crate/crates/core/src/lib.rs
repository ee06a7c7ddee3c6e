//! Symbolic tensor calculus: component curvature computations over a
//! chart, Petrov classification, abstract index manipulation and
//! abstract tensor algebras.

pub mod atensor;
pub mod catalog;
pub mod cli;
pub mod component;
pub mod indicial;
pub mod metricfile;
pub mod petrov;
pub mod symkernel;
