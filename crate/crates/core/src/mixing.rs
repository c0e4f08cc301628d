//! Mixing numbers and quasi-finite-type numbers.
//!
//! A positive verdict from the brute-force verifiers only means "no failure
//! with `|u|, |v| <= L` and `n <= n_max`", and the certificates record those
//! bounds. The primitivity exponent is a genuine mixing number for the
//! presented graph: once every ordered vertex pair is joined by walks of every
//! length `>= e`, any end vertex of `u` reaches any start vertex of `v`.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::alphabet::{LabeledWord, Symbol, Word};
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::presentation::ShiftPresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MixingMethod {
    Primitivity,
    Brute,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MixingVerdict {
    /// Holds for all words and lengths (graph argument).
    Certified,
    /// No failure within the recorded bounds.
    PassedAtBounds,
    /// `u w v` is outside the language for every `w` of length `n`.
    Failed { u: LabeledWord, v: LabeledWord, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixingCertificate {
    pub mixing_number: usize,
    pub method: MixingMethod,
    /// Largest `|u|`, `|v|` enumerated (brute force only).
    pub word_bound: Option<usize>,
    /// Largest bridge length tried (brute force only).
    pub bridge_bound: Option<usize>,
    /// Lengths `[e, e + |V|]` at which all-pairs connectivity was checked.
    pub persistence: Option<(usize, usize)>,
    pub pairs_checked: u64,
    pub verdict: MixingVerdict,
}

impl MixingCertificate {
    pub fn passed(&self) -> bool {
        !matches!(self.verdict, MixingVerdict::Failed { .. })
    }
}

/// `M + |V| + (max forbidden length)`.
pub fn default_bridge_bound(shift: &ShiftPresentation, m: usize) -> usize {
    m + shift.vertex_count() + shift.forbidden_memory()
}

/// Rows of successive boolean adjacency powers: `powers[e][v]` is the set of
/// vertices reachable from `v` by walks of length exactly `e`.
fn adjacency_powers(shift: &ShiftPresentation, max_power: usize) -> Vec<Vec<VertexSet>> {
    let n = shift.vertex_count();
    let mut powers = vec![(0..n).map(|v| VertexSet::singleton(n, v)).collect::<Vec<_>>()];
    for e in 1..=max_power {
        let row = powers[e - 1].iter().map(|r| shift.step_any(r)).collect();
        powers.push(row);
    }
    powers
}

/// Least `e <= (|V|-1)^2 + 1` such that every ordered vertex pair is joined by
/// walks of every length in `[e, e + |V|]`; `None` if the graph is not primitive.
pub fn primitivity_exponent(shift: &ShiftPresentation) -> Option<usize> {
    let n = shift.vertex_count();
    let wielandt = (n - 1) * (n - 1) + 1;
    let powers = adjacency_powers(shift, wielandt + n);
    let positive: Vec<bool> = powers.iter().map(|rows| rows.iter().all(|r| r.len() == n)).collect();
    (1..=wielandt).find(|&e| positive[e..=e + n].iter().all(|&p| p))
}

/// Mixing certificate derived from the primitivity exponent, if any.
pub fn primitivity_certificate(shift: &ShiftPresentation) -> Option<MixingCertificate> {
    let e = primitivity_exponent(shift)?;
    Some(MixingCertificate {
        mixing_number: e,
        method: MixingMethod::Primitivity,
        word_bound: None,
        bridge_bound: None,
        persistence: Some((e, e + shift.vertex_count())),
        pairs_checked: 0,
        verdict: MixingVerdict::Certified,
    })
}

/// Assigns small ids to the end and start vertex sets of a word list.
struct SetIndex {
    ends: Vec<usize>,
    starts: Vec<usize>,
    end_sets: Vec<VertexSet>,
    start_sets: Vec<VertexSet>,
}

impl SetIndex {
    fn new(shift: &ShiftPresentation, words: &[Word]) -> Result<Self> {
        fn intern(map: &mut HashMap<VertexSet, usize>, sets: &mut Vec<VertexSet>, s: VertexSet) -> usize {
            *map.entry(s.clone()).or_insert_with(|| {
                sets.push(s);
                sets.len() - 1
            })
        }
        let (mut end_map, mut start_map) = (HashMap::new(), HashMap::new());
        let (mut end_sets, mut start_sets) = (Vec::new(), Vec::new());
        let mut ends = Vec::with_capacity(words.len());
        let mut starts = Vec::with_capacity(words.len());
        for w in words {
            ends.push(intern(&mut end_map, &mut end_sets, shift.end_states(w)?));
            starts.push(intern(&mut start_map, &mut start_sets, shift.start_states(w)?));
        }
        Ok(Self { ends, starts, end_sets, start_sets })
    }
}

/// Brute-force check of `M` as a mixing number: for all allowed `u`, `v` with
/// `|u|, |v| <= L` and all `n` in `[M, n_max]`, some `w` of length `n` makes
/// `u w v` allowed. The first failure in (u, v, n) order is reported.
pub fn verify_mixing_number(
    shift: &ShiftPresentation,
    m: usize,
    word_bound: usize,
    bridge_bound: usize,
) -> Result<MixingCertificate> {
    if m == 0 || word_bound == 0 || bridge_bound < m {
        return Err(Error::Precondition(format!(
            "need M >= 1, L >= 1, n_max >= M (got M={m}, L={word_bound}, n_max={bridge_bound})"
        )));
    }
    let words = shift.words_up_to(word_bound);
    let index = SetIndex::new(shift, &words)?;
    let mut first_gap: HashMap<(usize, usize), Option<usize>> = HashMap::new();
    let alphabet = shift.alphabet();
    let mut verdict = MixingVerdict::PassedAtBounds;
    'outer: for (ui, u) in words.iter().enumerate() {
        for (vi, v) in words.iter().enumerate() {
            let key = (index.ends[ui], index.starts[vi]);
            let gap = match first_gap.get(&key) {
                Some(&g) => g,
                None => {
                    let mut g = None;
                    for n in m..=bridge_bound {
                        if shift.find_bridge(u, n, v)?.is_none() {
                            g = Some(n);
                            break;
                        }
                    }
                    first_gap.insert(key, g);
                    g
                }
            };
            if let Some(n) = gap {
                verdict = MixingVerdict::Failed {
                    u: LabeledWord::new(alphabet, u),
                    v: LabeledWord::new(alphabet, v),
                    n,
                };
                break 'outer;
            }
        }
    }
    Ok(MixingCertificate {
        mixing_number: m,
        method: MixingMethod::Brute,
        word_bound: Some(word_bound),
        bridge_bound: Some(bridge_bound),
        persistence: None,
        pairs_checked: (words.len() as u64).pow(2),
        verdict,
    })
}

/// A pair `(u, v)` such that no allowed word starts with `u` and ends with `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonmixingWitness {
    pub u: LabeledWord,
    pub v: LabeledWord,
    /// Vertices reachable (in zero or more steps) from the end vertices of `u`.
    pub reachable_after_u: Vec<String>,
    /// Vertices at which a walk labeled `v` can start.
    pub starts_of_v: Vec<String>,
}

fn forward_closure(shift: &ShiftPresentation, set: &VertexSet) -> VertexSet {
    let mut reach = set.clone();
    loop {
        let mut next = reach.clone();
        next.union_with(&shift.step_any(&reach));
        if next == reach {
            return reach;
        }
        reach = next;
    }
}

fn names(shift: &ShiftPresentation, set: &VertexSet) -> Vec<String> {
    set.iter().map(|v| shift.graph().names()[v].clone()).collect()
}

/// Reachability proof that `u` can never be followed by `v`, if that holds.
pub fn certify_nonmixing_pair(
    shift: &ShiftPresentation,
    u: &[Symbol],
    v: &[Symbol],
) -> Result<Option<NonmixingWitness>> {
    let reach = forward_closure(shift, &shift.end_states(u)?);
    let starts = shift.start_states(v)?;
    if reach.intersects(&starts) {
        return Ok(None);
    }
    Ok(Some(NonmixingWitness {
        u: LabeledWord::new(shift.alphabet(), u),
        v: LabeledWord::new(shift.alphabet(), v),
        reachable_after_u: names(shift, &reach),
        starts_of_v: names(shift, &starts),
    }))
}

/// First `(u, v)` with `|u|, |v| <= L` (length-then-lexicographic order) that
/// defeats every bridge length at once.
pub fn find_nonmixing_witness(shift: &ShiftPresentation, word_bound: usize) -> Result<Option<NonmixingWitness>> {
    let words = shift.words_up_to(word_bound);
    let index = SetIndex::new(shift, &words)?;
    let closures: Vec<VertexSet> = index.end_sets.iter().map(|s| forward_closure(shift, s)).collect();
    for (ui, u) in words.iter().enumerate() {
        for (vi, v) in words.iter().enumerate() {
            if !closures[index.ends[ui]].intersects(&index.start_sets[index.starts[vi]]) {
                return certify_nonmixing_pair(shift, u, v);
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum QftVerdict {
    PassedAtBounds,
    /// `u w` and `w v` are allowed but no `z` with `|z| = |w|` makes `u z v` allowed.
    Failed { u: LabeledWord, w: LabeledWord, v: LabeledWord },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QftCertificate {
    pub qft_number: usize,
    pub word_bound: usize,
    /// Lengths of `w` checked: `[qft_number, bridge_bound]`.
    pub bridge_bound: usize,
    pub pairs_checked: u64,
    pub verdict: QftVerdict,
}

impl QftCertificate {
    pub fn passed(&self) -> bool {
        matches!(self.verdict, QftVerdict::PassedAtBounds)
    }
}

/// Lexicographically least `w` of length `n` such that some walk labeled `w`
/// starts in `from` and some walk labeled `w` ends in `to`.
fn split_witness(shift: &ShiftPresentation, from: &VertexSet, n: usize, to: &VertexSet) -> Option<Word> {
    fn dfs(
        shift: &ShiftPresentation,
        after_u: VertexSet,
        anywhere: VertexSet,
        remaining: usize,
        to: &VertexSet,
        word: &mut Vec<Symbol>,
        dead: &mut HashSet<(VertexSet, VertexSet, usize)>,
    ) -> bool {
        if remaining == 0 {
            return anywhere.intersects(to);
        }
        let key = (after_u, anywhere, remaining);
        if dead.contains(&key) {
            return false;
        }
        for s in shift.alphabet().symbols() {
            let p = shift.step_forward(&key.0, s);
            if p.is_empty() {
                continue;
            }
            let d = shift.step_forward(&key.1, s);
            word.push(s);
            if dfs(shift, p, d, remaining - 1, to, word, dead) {
                return true;
            }
            word.pop();
        }
        dead.insert(key);
        false
    }
    let mut word = Vec::with_capacity(n);
    let mut dead = HashSet::new();
    dfs(shift, from.clone(), shift.full_set(), n, to, &mut word, &mut dead).then(|| Word::new(word))
}

/// Brute-force check of `M` as a quasi-finite-type number: for all allowed
/// `u`, `v` with `|u|, |v| <= L`, every `n` in `[M, n_max]` and every `w` of
/// length `n` with `u w`, `w v` allowed, some `z` of length `n` makes `u z v`
/// allowed. Only `w` extendable after `u` and before `v` are explored.
pub fn verify_qft_number(
    shift: &ShiftPresentation,
    m: usize,
    word_bound: usize,
    bridge_bound: usize,
) -> Result<QftCertificate> {
    if m == 0 || word_bound == 0 {
        return Err(Error::Precondition(format!("need M >= 1 and L >= 1 (got M={m}, L={word_bound})")));
    }
    let words = shift.words_up_to(word_bound);
    let index = SetIndex::new(shift, &words)?;
    let mut memo: HashMap<(usize, usize), Option<Word>> = HashMap::new();
    let alphabet = shift.alphabet();
    let mut verdict = QftVerdict::PassedAtBounds;
    'outer: for (ui, u) in words.iter().enumerate() {
        for (vi, v) in words.iter().enumerate() {
            let key = (index.ends[ui], index.starts[vi]);
            let failure = memo.entry(key).or_insert_with(|| {
                let from = &index.end_sets[key.0];
                let to = &index.start_sets[key.1];
                (m..=bridge_bound).find_map(|n| match shift.bridge_between(from, n, to) {
                    Some(_) => None,
                    None => split_witness(shift, from, n, to),
                })
            });
            if let Some(w) = failure {
                verdict = QftVerdict::Failed {
                    u: LabeledWord::new(alphabet, u),
                    w: LabeledWord::new(alphabet, w),
                    v: LabeledWord::new(alphabet, v),
                };
                break 'outer;
            }
        }
    }
    Ok(QftCertificate {
        qft_number: m,
        word_bound,
        bridge_bound,
        pairs_checked: (words.len() as u64).pow(2),
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QftSearch {
    /// Least passing `M`, if any up to `max_number`.
    pub qft_number: Option<usize>,
    pub word_bound: usize,
    pub bridge_bound: usize,
    pub max_number: usize,
    /// Always true: the estimate only reflects the bounded checks.
    pub bounded: bool,
    /// Certificate of the last rejected candidate, if any.
    pub last_rejection: Option<QftCertificate>,
}

/// Linear scan for the least `M <= min(max_number, n_max)` passing [`verify_qft_number`].
pub fn qft_number_search(
    shift: &ShiftPresentation,
    word_bound: usize,
    bridge_bound: usize,
    max_number: usize,
) -> Result<QftSearch> {
    let mut last_rejection = None;
    let mut found = None;
    for m in 1..=max_number.min(bridge_bound) {
        let cert = verify_qft_number(shift, m, word_bound, bridge_bound)?;
        if cert.passed() {
            found = Some(m);
            break;
        }
        last_rejection = Some(cert);
    }
    Ok(QftSearch {
        qft_number: found,
        word_bound,
        bridge_bound,
        max_number,
        bounded: true,
        last_rejection,
    })
}
