pub mod cremona;
pub mod exec;
pub mod fibration;
pub mod fingen;
pub mod graph;
pub mod lattice;
pub mod mwl;
pub mod pipeline;
pub mod scalars;
pub mod surface;
