pub mod domain;
pub mod eval;
pub mod classify;
pub mod iconproc;
pub mod motifs;
pub mod render;
