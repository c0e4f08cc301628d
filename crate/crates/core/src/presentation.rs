//! Shift spaces presented by forbidden words or labeled graphs.
//!
//! Both kinds compile to an essential labeled graph and a deterministic
//! follower-set automaton whose states are the nonempty vertex sets reachable
//! from the full vertex set. A word is in the language iff running the
//! automaton on it never hits the dead state; the state reached is exactly the
//! set of vertices at which some walk labeled by the word can end.

use std::collections::HashMap;

use rand::Rng;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph, VertexSet};

const MAX_AUTOMATON_STATES: usize = 1 << 16;
const MAX_SFT_VERTICES: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Forbidden { words: Vec<Word>, max_len: usize },
    Sofic,
}

#[derive(Debug, Clone)]
struct FollowerAutomaton {
    states: Vec<VertexSet>,
    /// `next[state * alphabet + symbol]`, `None` is the dead state.
    next: Vec<Option<u32>>,
}

#[derive(Debug, Clone)]
pub struct ShiftPresentation {
    alphabet: Alphabet,
    source: Source,
    graph: LabeledGraph,
    /// `succ[v * alphabet + s]`: targets of `s`-labeled edges out of `v`.
    succ: Vec<VertexSet>,
    /// `pred[v * alphabet + s]`: sources of `s`-labeled edges into `v`.
    pred: Vec<VertexSet>,
    automaton: FollowerAutomaton,
}

fn contains_factor(word: &[Symbol], factor: &[Symbol]) -> bool {
    factor.len() <= word.len() && word.windows(factor.len()).any(|w| w == factor)
}

impl ShiftPresentation {
    /// Subshift of finite type avoiding every word in `forbidden`.
    ///
    /// With maximal forbidden length `m >= 2` the graph has one vertex per
    /// allowed `(m-1)`-block and an edge `b -> b[1..]s` labeled `s` whenever
    /// the `m`-block `bs` avoids all forbidden words.
    pub fn sft_from_forbidden(alphabet: Alphabet, forbidden: Vec<Word>) -> Result<Self> {
        for w in &forbidden {
            if w.is_empty() {
                return Err(Error::EmptyForbiddenWord);
            }
            alphabet.check(w)?;
        }
        let m = forbidden.iter().map(|w| w.len()).max().unwrap_or(0);
        let avoids = |block: &[Symbol]| forbidden.iter().all(|f| !contains_factor(block, f));
        let a = alphabet.size();

        let graph = if m <= 1 {
            let edges = alphabet
                .symbols()
                .filter(|&s| avoids(&[s]))
                .map(|s| Edge { src: 0, dst: 0, label: s })
                .collect();
            LabeledGraph::new(vec!["*".to_string()], edges)?
        } else {
            let width = m - 1;
            let total = a
                .checked_pow(width as u32)
                .filter(|&t| t <= MAX_SFT_VERTICES)
                .ok_or_else(|| Error::TooLarge(format!("{a}^{width} blocks")))?;
            let decode = |mut code: usize| {
                let mut block = vec![0 as Symbol; width];
                for slot in block.iter_mut().rev() {
                    *slot = (code % a) as Symbol;
                    code /= a;
                }
                block
            };
            let mut index = vec![usize::MAX; total];
            let mut blocks = Vec::new();
            for (code, slot) in index.iter_mut().enumerate() {
                let block = decode(code);
                if avoids(&block) {
                    *slot = blocks.len();
                    blocks.push((code, block));
                }
            }
            let mut edges = Vec::new();
            for (code, block) in &blocks {
                for s in alphabet.symbols() {
                    let mut long = block.clone();
                    long.push(s);
                    if !avoids(&long) {
                        continue;
                    }
                    let next = (code * a + s as usize) % total;
                    edges.push(Edge { src: index[*code], dst: index[next], label: s });
                }
            }
            let names = blocks.iter().map(|(_, b)| alphabet.render(b)).collect();
            LabeledGraph::new(names, edges)?
        };
        Self::compile(alphabet, Source::Forbidden { words: forbidden, max_len: m }, graph)
    }

    /// Sofic shift: label sequences of bi-infinite walks in `graph`.
    pub fn sofic_from_graph(alphabet: Alphabet, graph: LabeledGraph) -> Result<Self> {
        for e in graph.edges() {
            alphabet.check(&[e.label])?;
        }
        Self::compile(alphabet, Source::Sofic, graph)
    }

    fn compile(alphabet: Alphabet, source: Source, graph: LabeledGraph) -> Result<Self> {
        let graph = graph.essentialize();
        if graph.is_empty() {
            return Err(Error::EmptyShift);
        }
        let n = graph.vertex_count();
        let a = alphabet.size();
        let mut succ = vec![VertexSet::empty(n); n * a];
        let mut pred = vec![VertexSet::empty(n); n * a];
        for e in graph.edges() {
            succ[e.src * a + e.label as usize].insert(e.dst);
            pred[e.dst * a + e.label as usize].insert(e.src);
        }
        let mut this = Self {
            alphabet,
            source,
            graph,
            succ,
            pred,
            automaton: FollowerAutomaton { states: Vec::new(), next: Vec::new() },
        };
        this.automaton = this.build_automaton()?;
        Ok(this)
    }

    fn build_automaton(&self) -> Result<FollowerAutomaton> {
        let a = self.alphabet.size();
        let start = VertexSet::full(self.vertex_count());
        let mut ids = HashMap::from([(start.clone(), 0u32)]);
        let mut states = vec![start];
        let mut next = Vec::new();
        let mut cursor = 0;
        while cursor < states.len() {
            for s in 0..a {
                let target = self.step_forward(&states[cursor], s as Symbol);
                if target.is_empty() {
                    next.push(None);
                    continue;
                }
                let id = match ids.get(&target) {
                    Some(&id) => id,
                    None => {
                        if states.len() >= MAX_AUTOMATON_STATES {
                            return Err(Error::TooLarge(format!(
                                "follower-set automaton exceeds {MAX_AUTOMATON_STATES} states"
                            )));
                        }
                        let id = states.len() as u32;
                        ids.insert(target.clone(), id);
                        states.push(target);
                        id
                    }
                };
                next.push(Some(id));
            }
            cursor += 1;
        }
        Ok(FollowerAutomaton { states, next })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    /// The essential graph behind the presentation.
    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn automaton_states(&self) -> usize {
        self.automaton.states.len()
    }

    /// Maximal forbidden-word length, 0 for sofic sources.
    pub fn forbidden_memory(&self) -> usize {
        match &self.source {
            Source::Forbidden { max_len, .. } => *max_len,
            Source::Sofic => 0,
        }
    }

    pub fn render(&self, word: &[Symbol]) -> String {
        self.alphabet.render(word)
    }

    pub fn parse(&self, text: &str) -> Result<Word> {
        self.alphabet.parse_word(text)
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    /// Vertices reached from `set` along one edge labeled `s`.
    pub fn step_forward(&self, set: &VertexSet, s: Symbol) -> VertexSet {
        let a = self.alphabet.size();
        let mut out = VertexSet::empty(self.vertex_count());
        for v in set.iter() {
            out.union_with(&self.succ[v * a + s as usize]);
        }
        out
    }

    /// Vertices with an edge labeled `s` into `set`.
    pub fn step_backward(&self, set: &VertexSet, s: Symbol) -> VertexSet {
        let a = self.alphabet.size();
        let mut out = VertexSet::empty(self.vertex_count());
        for v in set.iter() {
            out.union_with(&self.pred[v * a + s as usize]);
        }
        out
    }

    /// Vertices reached from `set` along one edge with any label.
    pub fn step_any(&self, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.vertex_count());
        for e in self.graph.edges() {
            if set.contains(e.src) {
                out.insert(e.dst);
            }
        }
        out
    }

    fn run(&self, word: &[Symbol]) -> Option<u32> {
        let a = self.alphabet.size();
        let mut state = 0u32;
        for &s in word {
            if s as usize >= a {
                return None;
            }
            state = self.automaton.next[state as usize * a + s as usize]?;
        }
        Some(state)
    }

    /// Membership in the language `B(X)`. The empty word is allowed.
    pub fn is_allowed(&self, word: &[Symbol]) -> bool {
        self.run(word).is_some()
    }

    fn require_allowed(&self, word: &[Symbol]) -> Result<()> {
        if self.is_allowed(word) {
            Ok(())
        } else {
            Err(Error::WordNotAllowed(self.safe_render(word)))
        }
    }

    fn safe_render(&self, word: &[Symbol]) -> String {
        if self.alphabet.check(word).is_ok() {
            self.render(word)
        } else {
            format!("{word:?}")
        }
    }

    /// `|B_n(X)|`, saturating at `u128::MAX`.
    pub fn count_words(&self, n: usize) -> u128 {
        let mut layer: HashMap<VertexSet, u128> = HashMap::from([(self.full_set(), 1)]);
        for _ in 0..n {
            let mut next: HashMap<VertexSet, u128> = HashMap::new();
            for (set, count) in &layer {
                for s in self.alphabet.symbols() {
                    let to = self.step_forward(set, s);
                    if !to.is_empty() {
                        let slot = next.entry(to).or_insert(0);
                        *slot = slot.saturating_add(*count);
                    }
                }
            }
            layer = next;
        }
        layer.values().fold(0u128, |acc, c| acc.saturating_add(*c))
    }

    /// `B_n(X)` in lexicographic order of symbol indices.
    pub fn words_of_length(&self, n: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(n);
        self.collect_words(0, n, &mut prefix, &mut out);
        out
    }

    fn collect_words(&self, state: u32, remaining: usize, prefix: &mut Vec<Symbol>, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(Word::from(prefix.as_slice()));
            return;
        }
        let a = self.alphabet.size();
        for s in 0..a {
            if let Some(next) = self.automaton.next[state as usize * a + s] {
                prefix.push(s as Symbol);
                self.collect_words(next, remaining - 1, prefix, out);
                prefix.pop();
            }
        }
    }

    /// All allowed words with `1 <= len <= max_len`, ordered by length then lexicographically.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        (1..=max_len).flat_map(|n| self.words_of_length(n)).collect()
    }

    /// Vertices at which some walk labeled `word` ends.
    pub fn end_states(&self, word: &[Symbol]) -> Result<VertexSet> {
        let state = self
            .run(word)
            .ok_or_else(|| Error::WordNotAllowed(self.safe_render(word)))?;
        Ok(self.automaton.states[state as usize].clone())
    }

    /// Vertices at which some walk labeled `word` begins.
    pub fn start_states(&self, word: &[Symbol]) -> Result<VertexSet> {
        self.alphabet.check(word)?;
        let mut set = self.full_set();
        for &s in word.iter().rev() {
            set = self.step_backward(&set, s);
            if set.is_empty() {
                return Err(Error::WordNotAllowed(self.render(word)));
            }
        }
        Ok(set)
    }

    /// Lexicographically least word of length `n` labeling a walk from some
    /// vertex of `from` to some vertex of `to`.
    pub fn bridge_between(&self, from: &VertexSet, n: usize, to: &VertexSet) -> Option<Word> {
        // layers[m]: vertices with a walk of length m into `to`.
        let mut layers = Vec::with_capacity(n + 1);
        layers.push(to.clone());
        for m in 1..=n {
            let mut layer = VertexSet::empty(self.vertex_count());
            for e in self.graph.edges() {
                if layers[m - 1].contains(e.dst) {
                    layer.insert(e.src);
                }
            }
            layers.push(layer);
        }
        let mut current = from.intersection(&layers[n]);
        if current.is_empty() {
            return None;
        }
        let mut word = Vec::with_capacity(n);
        for step in 0..n {
            let target = &layers[n - step - 1];
            let (s, next) = self
                .alphabet
                .symbols()
                .map(|s| (s, self.step_forward(&current, s).intersection(target)))
                .find(|(_, next)| !next.is_empty())?;
            word.push(s);
            current = next;
        }
        Some(Word::new(word))
    }

    /// Lexicographically least `w` of length `n` with `u w v` allowed.
    pub fn find_bridge(&self, u: &[Symbol], n: usize, v: &[Symbol]) -> Result<Option<Word>> {
        self.require_allowed(u)?;
        self.require_allowed(v)?;
        let from = self.end_states(u)?;
        let to = self.start_states(v)?;
        Ok(self.bridge_between(&from, n, &to))
    }

    /// Lexicographically least `z` with `|z| = |w|` and `u z v` allowed, given
    /// that `u w` and `w v` are allowed.
    pub fn qft_bridge(&self, u: &[Symbol], w: &[Symbol], v: &[Symbol]) -> Result<Option<Word>> {
        let uw = Word::concat(&[u, w]);
        let wv = Word::concat(&[w, v]);
        self.require_allowed(&uw)?;
        self.require_allowed(&wv)?;
        self.find_bridge(u, w.len(), v)
    }

    /// `word` followed by the lexicographically least allowed continuation of length `n`.
    pub fn extend_right(&self, word: &[Symbol], n: usize) -> Result<Word> {
        let tail = self
            .find_bridge(word, n, &[])?
            .expect("essential graphs extend every allowed word");
        Ok(Word::concat(&[word, &tail]))
    }

    /// Lexicographically least allowed prefix of length `n`, followed by `word`.
    pub fn extend_left(&self, word: &[Symbol], n: usize) -> Result<Word> {
        let head = self
            .find_bridge(&[], n, word)?
            .expect("essential graphs extend every allowed word");
        Ok(Word::concat(&[&head, word]))
    }

    /// Appends `n` symbols chosen uniformly among those keeping the word allowed.
    pub fn random_extend_right<R: Rng + ?Sized>(&self, rng: &mut R, word: &[Symbol], n: usize) -> Result<Word> {
        let mut set = self.end_states(word)?;
        let mut out = word.to_vec();
        for _ in 0..n {
            let options: Vec<(Symbol, VertexSet)> = self
                .alphabet
                .symbols()
                .map(|s| (s, self.step_forward(&set, s)))
                .filter(|(_, next)| !next.is_empty())
                .collect();
            let (s, next) = options[rng.random_range(0..options.len())].clone();
            out.push(s);
            set = next;
        }
        Ok(Word::new(out))
    }

    /// Prepends `n` symbols chosen uniformly among those keeping the word allowed.
    pub fn random_extend_left<R: Rng + ?Sized>(&self, rng: &mut R, word: &[Symbol], n: usize) -> Result<Word> {
        let mut set = self.start_states(word)?;
        let mut head = Vec::with_capacity(n);
        for _ in 0..n {
            let options: Vec<(Symbol, VertexSet)> = self
                .alphabet
                .symbols()
                .map(|s| (s, self.step_backward(&set, s)))
                .filter(|(_, prev)| !prev.is_empty())
                .collect();
            let (s, prev) = options[rng.random_range(0..options.len())].clone();
            head.push(s);
            set = prev;
        }
        head.reverse();
        Ok(Word::concat(&[&head, word]))
    }
}
