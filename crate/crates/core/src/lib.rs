pub mod cores;
pub mod dyadic;
pub mod error;
pub mod invariants;
pub mod par;
pub mod partition;
pub mod regular;
pub mod relations;
pub mod special;
pub mod sweep;
pub mod symbol;
pub mod uniform;
