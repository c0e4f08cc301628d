//! Exhaustive search for small shadowing sets among centered words.

use serde::{Deserialize, Serialize};

use crate::alphabet::Word;
use crate::error::{Error, Result};
use crate::presentation::ShiftPresentation;
use crate::pseudo_orbit::PseudoOrbit;
use crate::shadowing::verify::{follows, verify_shadow_set, ShadowCertificate, VerifyOptions};
use crate::window::Window;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Largest set size `N`.
    pub max_members: usize,
    /// Precision `2^-k`.
    pub k: u32,
    /// Candidates are the allowed words on `[-h, h]`.
    pub halfwidth: usize,
    /// Require pairwise agreement on `[-k, k]`.
    pub diameter: bool,
    /// Refuse when candidates or subsets to examine exceed this.
    pub budget: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// `|B_{2h+1}(X)|`.
    pub candidates: usize,
    /// Candidates left after merging interchangeable ones and dropping useless ones.
    pub classes: usize,
    pub subsets_checked: u128,
    /// Pseudo-orbit indices `i` with `|i| + k <= h`.
    pub indices: (i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found { members: Vec<Window>, certificate: ShadowCertificate, stats: SearchStats },
    /// No qualifying set shadows the pseudo-orbit on the examined indices.
    Exhausted { stats: SearchStats },
}

impl SearchOutcome {
    pub fn stats(&self) -> &SearchStats {
        match self {
            SearchOutcome::Found { stats, .. } | SearchOutcome::Exhausted { stats } => stats,
        }
    }

    pub fn found(&self) -> Option<&[Window]> {
        match self {
            SearchOutcome::Found { members, .. } => Some(members),
            SearchOutcome::Exhausted { .. } => None,
        }
    }
}

fn binomial_sum(n: usize, max: usize) -> u128 {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for s in 1..=max.min(n) {
        c = c.saturating_mul((n + 1 - s) as u128) / s as u128;
        total = total.saturating_add(c);
    }
    total
}

struct Class {
    word: Word,
    center: Vec<u8>,
    mask: Vec<u64>,
}

/// Searches all sets of at most `N` allowed centered words of half-width `h`
/// for one that shadows `po` at every index `i` with `|i| + k <= h`.
///
/// Candidates with the same cover pattern (and, with the diameter
/// constraint, the same central word on `[-k, k]`) are interchangeable, so
/// only the lexicographically least of each class is tried; candidates that
/// follow no index are dropped. Sets are tried in lexicographic order.
pub fn search_shadow_sets(shift: &ShiftPresentation, po: &PseudoOrbit, opts: SearchOptions) -> Result<SearchOutcome> {
    let h = opts.halfwidth as i64;
    let k = opts.k as i64;
    if opts.max_members == 0 {
        return Err(Error::Precondition("set size must be positive".into()));
    }
    if po.radius() < opts.k as usize {
        return Err(Error::Precondition(format!("pseudo-orbit radius {} is below k = {k}", po.radius())));
    }
    let lo = po.first_index().max(k - h);
    let hi = po.last_index().min(h - k);
    if lo > hi {
        return Err(Error::Precondition(format!("half-width {h} leaves no index to check")));
    }
    let needed = shift.count_words(2 * opts.halfwidth + 1);
    if needed > opts.budget {
        return Err(Error::BudgetExceeded { needed, budget: opts.budget });
    }
    let entries: Vec<Window> = (lo..=hi).map(|i| po.entry(i).expect("index in range")).collect();
    let blocks = (entries.len()).div_ceil(64);
    let full: Vec<u64> = (0..blocks)
        .map(|b| {
            let bits = (entries.len() - 64 * b).min(64);
            if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 }
        })
        .collect();

    let words = shift.words_of_length(2 * opts.halfwidth + 1);
    let candidates = words.len();
    let mut classes: Vec<Class> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for word in words {
        let w = Window::new(-h, word);
        let mut mask = vec![0u64; blocks];
        for (n, entry) in entries.iter().enumerate() {
            if follows(&w, entry, lo + n as i64, opts.k) == Some(true) {
                mask[n / 64] |= 1 << (n % 64);
            }
        }
        if mask.iter().all(|&b| b == 0) {
            continue;
        }
        let center = if opts.diameter { w.slice(-k, k)?.to_vec() } else { Vec::new() };
        if seen.insert((mask.clone(), center.clone())) {
            classes.push(Class { word: w.word, center, mask });
        }
    }
    let needed = binomial_sum(classes.len(), opts.max_members);
    if needed > opts.budget {
        return Err(Error::BudgetExceeded { needed, budget: opts.budget });
    }

    let mut stats = SearchStats { candidates, classes: classes.len(), subsets_checked: 0, indices: (lo, hi) };
    let mut chosen = Vec::with_capacity(opts.max_members);
    let union = vec![0u64; blocks];
    if let Some(set) = pick(&classes, &full, opts, 0, &mut chosen, &union, &mut stats.subsets_checked) {
        let members: Vec<Window> = set.iter().map(|&c| Window::new(-h, classes[c].word.clone())).collect();
        let certificate = verify_shadow_set(
            shift,
            po,
            &members,
            opts.k,
            VerifyOptions { diameter: opts.diameter, max_members: Some(opts.max_members) },
        )?;
        return Ok(SearchOutcome::Found { members, certificate, stats });
    }
    Ok(SearchOutcome::Exhausted { stats })
}

/// Depth-first over index sets in lexicographic order.
fn pick(
    classes: &[Class],
    full: &[u64],
    opts: SearchOptions,
    from: usize,
    chosen: &mut Vec<usize>,
    union: &[u64],
    checked: &mut u128,
) -> Option<Vec<usize>> {
    for c in from..classes.len() {
        if opts.diameter && chosen.first().is_some_and(|&f| classes[f].center != classes[c].center) {
            continue;
        }
        *checked += 1;
        let next: Vec<u64> = union.iter().zip(&classes[c].mask).map(|(a, b)| a | b).collect();
        chosen.push(c);
        if next == full {
            return Some(chosen.clone());
        }
        if chosen.len() < opts.max_members {
            if let Some(found) = pick(classes, full, opts, c + 1, chosen, &next, checked) {
                return Some(found);
            }
        }
        chosen.pop();
    }
    None
}
