//! Exact combinatorics of (G,m)-multiparking functions on edge-colored
//! multigraphs.
//!
//! The crate is organized bottom-up:
//!
//! * [`graph`]: colored multigraphs, degree statistics, deletion and contraction.
//! * [`parking`]: the subset-based validity predicate, enumeration, complements.
//! * [`bijection`]: the burning map from functions to spanning color forests and
//!   its inverse, with the statistics that relate the two.
//! * [`poly`]: exact Laurent and bivariate polynomials.
//! * [`genfunc`]: generating functions, redundant edges and reciprocity.
//! * [`recursion`]: memoized deletion–contraction for the root-`n` generating
//!   function and the Tutte polynomial.
//! * [`corpus`]: deterministic small-graph corpora for invariant testing.

pub mod bijection;
pub mod corpus;
pub mod error;
pub mod genfunc;
pub mod graph;
pub mod parking;
pub mod poly;
pub mod recursion;

pub use bijection::{
    corollary_stats, enumerate_color_forests, phi, psi, ColorForest, CorollaryStats, ProcessOrder,
    VertexRanking,
};
pub use error::{Error, Result};
pub use genfunc::{
    classify_redundant, i_poly, p_poly, pbar_poly, reciprocity_check, ReciprocityReport,
    RedundancyClass, RedundancyReport,
};
pub use graph::{ColoredMultigraph, EdgeRef, GraphDocument, VertexSet};
pub use parking::{
    alpha, complement_of, enumerate_multiparking, is_complement, is_multiparking,
    is_multiparking_burning, ComplementFunction, MultiparkingFunction,
};
pub use poly::{BivariatePolynomial, LaurentPolynomial};
pub use recursion::{p_recursive, p_rooted, tutte, tutte_check, PivotRule, TutteReport};
