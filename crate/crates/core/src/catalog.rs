//! Fixed example shifts and the symbolwise factor map from the four-vertex graph to the even shift.
//!
//! Vertex ids and edge order are fixed here; golden tests depend on them.

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::presentation::ShiftPresentation;

/// Bundled shift definitions, addressable as `builtin:NAME`.
pub const BUNDLED: &[(&str, &str)] = &[
    ("two-loop", include_str!("../shifts/two-loop.json")),
    ("four-vertex", include_str!("../shifts/four-vertex.json")),
    ("even", include_str!("../shifts/even.json")),
    ("golden", include_str!("../shifts/golden.json")),
    ("full2", include_str!("../shifts/full2.json")),
    ("full3", include_str!("../shifts/full3.json")),
];

fn sofic(size: usize, names: &[&str], edges: &[(&str, &str, Symbol)]) -> ShiftPresentation {
    let graph = LabeledGraph::from_named(names, edges).expect("fixed graph is well formed");
    ShiftPresentation::sofic_from_graph(Alphabet::numeric(size).expect("small alphabet"), graph)
        .expect("fixed graph presents a nonempty shift")
}

/// Two vertices with loops `{1, 0}` and `{2, 0}`: no word contains both 1 and 2.
pub fn two_loop_graph() -> ShiftPresentation {
    sofic(
        3,
        &["left", "right"],
        &[("left", "left", 1), ("left", "left", 0), ("right", "right", 2), ("right", "right", 0)],
    )
}

/// Reducible graph: a `{0, 1}` component feeding through `2` into a `{3, 4}` component.
pub fn four_vertex_graph() -> ShiftPresentation {
    sofic(
        5,
        &["v1", "v2", "v3", "v4"],
        &[
            ("v2", "v2", 1),
            ("v2", "v1", 0),
            ("v1", "v2", 0),
            ("v2", "v3", 2),
            ("v3", "v3", 4),
            ("v4", "v3", 3),
            ("v3", "v4", 3),
        ],
    )
}

/// Even shift: maximal runs of 0 between two 1s have even length.
pub fn even_shift() -> ShiftPresentation {
    sofic(2, &["even", "odd"], &[("even", "even", 1), ("even", "odd", 0), ("odd", "even", 0)])
}

pub fn full_shift(m: usize) -> Result<ShiftPresentation> {
    ShiftPresentation::sft_from_forbidden(Alphabet::numeric(m)?, vec![])
}

/// Binary sequences without `11`.
pub fn golden_mean() -> ShiftPresentation {
    ShiftPresentation::sft_from_forbidden(Alphabet::numeric(2).expect("binary"), vec![Word::new(vec![1, 1])])
        .expect("golden mean shift is nonempty")
}

/// Forbidden words `1 0^(2j+1) 1` up to total length `max_len`.
pub fn even_shift_forbidden(max_len: usize) -> Vec<Word> {
    (3..=max_len)
        .step_by(2)
        .map(|len| {
            let mut w = vec![0; len];
            w[0] = 1;
            w[len - 1] = 1;
            Word::new(w)
        })
        .collect()
}

/// Symbolwise map `2, 4 -> 1`, `3 -> 0`, fixing `0` and `1`.
pub fn even_projection(word: &[Symbol]) -> Result<Word> {
    word.iter()
        .map(|&s| match s {
            0 | 3 => Ok(0),
            1 | 2 | 4 => Ok(1),
            _ => Err(Error::SymbolOutOfRange { symbol: s as usize, size: 5 }),
        })
        .collect::<Result<Vec<_>>>()
        .map(Word::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn allowed(x: &ShiftPresentation, w: &str) -> bool {
        x.is_allowed(&x.parse(w).unwrap())
    }

    #[test]
    fn two_loop_language() {
        let g = two_loop_graph();
        assert!(allowed(&g, "0101"));
        assert!(allowed(&g, "000"));
        assert!(allowed(&g, "001"));
        assert!(!allowed(&g, "12"));
        assert!(!allowed(&g, "102"));
        assert_eq!(g.words_of_length(1).len(), 3);
    }

    #[test]
    fn four_vertex_language() {
        let h = four_vertex_graph();
        assert!(allowed(&h, "001"));
        assert!(allowed(&h, "0012"));
        assert!(allowed(&h, "244"));
        assert!(allowed(&h, "12"));
        assert!(!allowed(&h, "30"));
        assert!(!allowed(&h, "0102"));
        assert!(!allowed(&h, "0101"));
    }

    #[test]
    fn even_shift_language() {
        let e = even_shift();
        assert!(allowed(&e, "1001"));
        assert!(allowed(&e, "0000"));
        assert!(!allowed(&e, "101"));
        assert!(!allowed(&e, "10001"));
        assert_eq!(even_shift_forbidden(7).len(), 3);
    }

    #[test]
    fn projection() {
        let h = four_vertex_graph();
        assert_eq!(even_projection(&h.parse("244").unwrap()).unwrap(), Word::new(vec![1, 1, 1]));
        assert_eq!(even_projection(&h.parse("030").unwrap()).unwrap(), Word::new(vec![0, 0, 0]));
        assert_eq!(even_projection(&[]).unwrap(), Word::empty());
        assert!(even_projection(&[7]).is_err());
    }

    #[test]
    fn golden_mean_counts_are_fibonacci() {
        let g = golden_mean();
        let (mut a, mut b) = (1usize, 2usize);
        for n in 0..=15 {
            assert_eq!(g.words_of_length(n).len(), a, "length {n}");
            (a, b) = (b, a + b);
        }
    }
}
