//! JSON file formats for shift definitions, pseudo-orbits and shadow sets.
//!
//! Words are written as token lists so multi-character tokens round-trip.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Word};
use crate::catalog::BUNDLED;
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::presentation::{ShiftPresentation, Source};
use crate::pseudo_orbit::{check_pseudo_orbit, PseudoOrbit};
use crate::window::{DyadicScale, Window};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftKind {
    Sft,
    Sofic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftDef {
    pub alphabet: Vec<String>,
    pub kind: ShiftKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forbidden: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<String>>,
    /// `[source, target, label]` triples.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(String, String, String)>>,
}

impl ShiftDef {
    pub fn compile(&self) -> Result<ShiftPresentation> {
        let alphabet = Alphabet::new(&self.alphabet)?;
        match self.kind {
            ShiftKind::Sft => {
                let forbidden = self
                    .forbidden
                    .iter()
                    .flatten()
                    .map(|w| alphabet.word_from_tokens(w))
                    .collect::<Result<Vec<_>>>()?;
                ShiftPresentation::sft_from_forbidden(alphabet, forbidden)
            }
            ShiftKind::Sofic => {
                let names = self
                    .vertices
                    .clone()
                    .ok_or_else(|| Error::Invalid("sofic definition needs \"vertices\"".into()))?;
                let edges = self
                    .edges
                    .iter()
                    .flatten()
                    .map(|(s, d, l)| Ok((s.as_str(), d.as_str(), alphabet.index_of(l)?)))
                    .collect::<Result<Vec<_>>>()?;
                let graph = LabeledGraph::from_named(&names.iter().map(String::as_str).collect::<Vec<_>>(), &edges)?;
                ShiftPresentation::sofic_from_graph(alphabet, graph)
            }
        }
    }

    /// Definition of an already compiled shift (the essential graph for sofic input).
    pub fn of(shift: &ShiftPresentation) -> Self {
        let alphabet = shift.alphabet();
        match shift.source() {
            Source::Forbidden { words, .. } => ShiftDef {
                alphabet: alphabet.tokens().to_vec(),
                kind: ShiftKind::Sft,
                forbidden: Some(words.iter().map(|w| alphabet.tokens_of(w)).collect()),
                vertices: None,
                edges: None,
            },
            Source::Sofic => {
                let g = shift.graph();
                ShiftDef {
                    alphabet: alphabet.tokens().to_vec(),
                    kind: ShiftKind::Sofic,
                    forbidden: None,
                    vertices: Some(g.names().to_vec()),
                    edges: Some(
                        g.edges()
                            .iter()
                            .map(|e| {
                                (
                                    g.names()[e.src].clone(),
                                    g.names()[e.dst].clone(),
                                    alphabet.tokens()[e.label as usize].clone(),
                                )
                            })
                            .collect(),
                    ),
                }
            }
        }
    }
}

pub fn parse_shift(json: &str) -> Result<ShiftPresentation> {
    serde_json::from_str::<ShiftDef>(json)?.compile()
}

/// Bundled definition by name (`two-loop`, `four-vertex`, `even`, `golden`, `full2`, `full3`).
pub fn builtin_shift(name: &str) -> Result<ShiftPresentation> {
    let (_, json) = BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Invalid(format!("unknown builtin shift {name:?}")))?;
    parse_shift(json)
}

/// Loads `builtin:NAME` or a JSON file path.
pub fn load_shift(source: &str) -> Result<ShiftPresentation> {
    match source.strip_prefix("builtin:") {
        Some(name) => builtin_shift(name),
        None => parse_shift(&read(source)?),
    }
}

fn read(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoOrbitDef {
    /// `K` in `delta = 2^-K`.
    pub delta_exponent: u32,
    /// Index of the first entry.
    #[serde(default)]
    pub base_index: i64,
    /// Centered words `x^i_[-R, R]` as token lists.
    pub entries: Vec<Vec<String>>,
}

impl PseudoOrbitDef {
    pub fn load(&self, shift: &ShiftPresentation) -> Result<PseudoOrbit> {
        let entries = self
            .entries
            .iter()
            .map(|e| shift.alphabet().word_from_tokens(e))
            .collect::<Result<Vec<Word>>>()?;
        check_pseudo_orbit(entries, self.base_index, DyadicScale(self.delta_exponent), shift)
    }

    pub fn of(po: &PseudoOrbit, alphabet: &Alphabet) -> Self {
        PseudoOrbitDef {
            delta_exponent: po.delta().0,
            base_index: po.first_index(),
            entries: po.entries().iter().map(|w| alphabet.tokens_of(w)).collect(),
        }
    }
}

pub fn parse_pseudo_orbit(json: &str, shift: &ShiftPresentation) -> Result<PseudoOrbit> {
    serde_json::from_str::<PseudoOrbitDef>(json)?.load(shift)
}

pub fn load_pseudo_orbit(path: impl AsRef<Path>, shift: &ShiftPresentation) -> Result<PseudoOrbit> {
    parse_pseudo_orbit(&read(path)?, shift)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowDef {
    pub base: i64,
    pub word: Vec<String>,
}

impl WindowDef {
    pub fn of(w: &Window, alphabet: &Alphabet) -> Self {
        WindowDef { base: w.base, word: alphabet.tokens_of(&w.word) }
    }

    pub fn load(&self, alphabet: &Alphabet) -> Result<Window> {
        Ok(Window::new(self.base, alphabet.word_from_tokens(&self.word)?))
    }
}

pub fn parse_windows(json: &str, alphabet: &Alphabet) -> Result<Vec<Window>> {
    serde_json::from_str::<Vec<WindowDef>>(json)?.iter().map(|w| w.load(alphabet)).collect()
}

pub fn load_windows(path: impl AsRef<Path>, alphabet: &Alphabet) -> Result<Vec<Window>> {
    parse_windows(&read(path)?, alphabet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn bundled_definitions_match_builders() {
        let pairs = [
            ("two-loop", catalog::two_loop_graph()),
            ("four-vertex", catalog::four_vertex_graph()),
            ("even", catalog::even_shift()),
            ("golden", catalog::golden_mean()),
            ("full2", catalog::full_shift(2).unwrap()),
            ("full3", catalog::full_shift(3).unwrap()),
        ];
        for (name, built) in pairs {
            let loaded = builtin_shift(name).unwrap();
            assert_eq!(ShiftDef::of(&loaded), ShiftDef::of(&built), "{name}");
            assert_eq!(loaded.words_up_to(6), built.words_up_to(6), "{name}");
        }
    }

    #[test]
    fn definition_round_trip() {
        let h = catalog::four_vertex_graph();
        let json = serde_json::to_string(&ShiftDef::of(&h)).unwrap();
        let back = parse_shift(&json).unwrap();
        assert_eq!(back.words_up_to(5), h.words_up_to(5));
    }

    #[test]
    fn sofic_without_vertices_is_rejected() {
        let err = parse_shift(r#"{"alphabet":["a"],"kind":"sofic","edges":[]}"#).unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
        assert!(builtin_shift("nope").is_err());
    }

    #[test]
    fn pseudo_orbit_round_trip() {
        let x = catalog::full_shift(2).unwrap();
        let json = r#"{"delta_exponent":1,"base_index":-1,"entries":[["0","0","1","0","1"],["0","1","0","1","1"],["1","0","1","1","0"]]}"#;
        let po = parse_pseudo_orbit(json, &x).unwrap();
        assert_eq!(po.indices(), -1..=1);
        let def = PseudoOrbitDef::of(&po, x.alphabet());
        assert_eq!(def.load(&x).unwrap(), po);
    }

    #[test]
    fn windows_round_trip() {
        let a = Alphabet::new(["x", "yy"]).unwrap();
        let w = Window::new(-2, a.word_from_tokens(&["yy", "x", "yy"]).unwrap());
        let json = serde_json::to_string(&vec![WindowDef::of(&w, &a)]).unwrap();
        assert_eq!(parse_windows(&json, &a).unwrap(), vec![w]);
        assert!(parse_windows(r#"[{"base":0,"word":["z"]}]"#, &a).is_err());
    }
}
