pub mod scalars;
pub mod qalgebra;
pub mod uqsl2;
pub mod autgroup;
pub mod actions;
pub mod verifier;
pub mod search;
