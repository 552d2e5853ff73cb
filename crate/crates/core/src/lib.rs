//! Integral point sets over finite planes `F_q²`: field arithmetic, the graph of
//! integral distances, its automorphisms, maximal-set classification, and
//! explicit constructions.

pub mod bitset;
pub mod constructions;
pub mod field;
pub mod igraph;
pub mod plane;
pub mod report;
pub mod search;
pub mod symmetry;
pub mod tables;
