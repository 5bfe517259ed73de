pub mod qarith;
pub mod bae;
pub mod diagrams;
pub mod lattice;
pub mod tableaux;
pub mod tsystem;
pub mod dvf;
