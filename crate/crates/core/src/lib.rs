//! Symbolic dynamics toolkit for pseudo-orbit shadowing by small sets of points.
//!
//! Shifts are presented by forbidden words or labeled graphs and compiled to a
//! follower-set automaton. On top of that sit mixing and quasi-finite-type
//! verifiers, constructions of two-point shadowing sets, exhaustive search for
//! shadowing sets, and a numeric interval-map example.

pub mod alphabet;
pub mod catalog;
pub mod error;
pub mod graph;
pub mod interval;
pub mod io;
pub mod mixing;
pub mod presentation;
pub mod pseudo_orbit;
pub mod repro;
pub mod shadowing;
pub mod window;

pub use alphabet::{Alphabet, LabeledWord, Symbol, Word};
pub use error::{Error, Result};
pub use graph::{Edge, LabeledGraph, VertexSet};
pub use presentation::{ShiftPresentation, Source};
pub use pseudo_orbit::{check_pseudo_orbit, trace, PseudoOrbit};
pub use window::{agree_within, agreement_radius, shift_window, AgreementRadius, Comparison, DyadicScale, Window};
