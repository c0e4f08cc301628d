//! Anchored finite views of points of `A^Z` and the dyadic metric on them.
//!
//! A point is never materialized. A [`Window`] records the symbols on
//! `[base, base + len)`, and every statement `d(x, y) < 2^-k` is decided as
//! "x and y agree on `[-k, k]`".

use serde::{Deserialize, Serialize};

use crate::alphabet::{Symbol, Word};
use crate::error::{Error, Result};

/// Radius `2^-exponent` of a metric ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DyadicScale(pub u32);

impl DyadicScale {
    pub fn exponent(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        (-(self.0 as f64)).exp2()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub base: i64,
    pub word: Word,
}

impl Window {
    pub fn new(base: i64, word: impl Into<Word>) -> Self {
        Self { base, word: word.into() }
    }

    /// Window of odd length centered on index 0.
    pub fn centered(word: impl Into<Word>) -> Result<Self> {
        let word = word.into();
        if word.len() % 2 == 0 {
            return Err(Error::Invalid(format!("centered window needs odd length, got {}", word.len())));
        }
        let base = -((word.len() as i64 - 1) / 2);
        Ok(Self { base, word })
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// First covered index.
    pub fn start(&self) -> i64 {
        self.base
    }

    /// One past the last covered index.
    pub fn end(&self) -> i64 {
        self.base + self.word.len() as i64
    }

    pub fn covers(&self, i: i64) -> bool {
        self.base <= i && i < self.end()
    }

    pub fn covers_range(&self, lo: i64, hi: i64) -> bool {
        lo > hi || (self.covers(lo) && self.covers(hi))
    }

    pub fn get(&self, i: i64) -> Option<Symbol> {
        self.covers(i).then(|| self.word[(i - self.base) as usize])
    }

    /// Symbols on the closed range `[lo, hi]`; empty when `lo > hi`.
    pub fn slice(&self, lo: i64, hi: i64) -> Result<&[Symbol]> {
        if lo > hi {
            return Ok(&[]);
        }
        if !self.covers(lo) {
            return Err(Error::NotCovered(lo));
        }
        if !self.covers(hi) {
            return Err(Error::NotCovered(hi));
        }
        Ok(&self.word[(lo - self.base) as usize..=(hi - self.base) as usize])
    }

    /// Restriction to the closed range `[lo, hi]` as a window.
    pub fn restrict(&self, lo: i64, hi: i64) -> Result<Window> {
        Ok(Window::new(lo, self.slice(lo, hi)?.to_vec()))
    }

    /// Largest `r` such that `[-r, r]` is covered, or `None` if 0 is not covered.
    pub fn symmetric_reach(&self) -> Option<u64> {
        if !self.covers(0) {
            return None;
        }
        Some((-self.start()).min(self.end() - 1) as u64)
    }
}

/// `(sigma^n x)_i = x_{i+n}`: the returned window is based at `base - n`.
pub fn shift_window(x: &Window, n: i64) -> Window {
    Window { base: x.base - n, word: x.word.clone() }
}

/// How comparisons treat the end of the common coverage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Comparison {
    /// Report the largest fully covered agreeing radius, flagged as clamped.
    #[default]
    Clamped,
    /// Report agreement on the whole common coverage as unbounded.
    Optimistic,
}

/// Result of [`agreement_radius`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "radius", rename_all = "snake_case")]
pub enum AgreementRadius {
    /// Windows disagree at radius `r + 1`; `-1` means they differ at index 0.
    Exact(i64),
    /// Agreement holds on `[-r, r]`, the largest range both windows cover.
    Clamped(u64),
    /// Agreement on the entire common coverage (optimistic comparison only).
    Unbounded,
}

impl AgreementRadius {
    /// Whether `d(x, y) < 2^-k` is established.
    pub fn at_least(self, k: u32) -> bool {
        match self {
            AgreementRadius::Exact(r) => r >= k as i64,
            AgreementRadius::Clamped(r) => r >= k as u64,
            AgreementRadius::Unbounded => true,
        }
    }

    pub fn radius(self) -> Option<i64> {
        match self {
            AgreementRadius::Exact(r) => Some(r),
            AgreementRadius::Clamped(r) => Some(r as i64),
            AgreementRadius::Unbounded => None,
        }
    }

    pub fn is_clamped(self) -> bool {
        matches!(self, AgreementRadius::Clamped(_))
    }
}

/// Largest `r >= 0` with `x` and `y` equal on `[-r, r]`.
pub fn agreement_radius(x: &Window, y: &Window, mode: Comparison) -> Result<AgreementRadius> {
    let rx = x.symmetric_reach().ok_or(Error::NotCovered(0))?;
    let ry = y.symmetric_reach().ok_or(Error::NotCovered(0))?;
    let reach = rx.min(ry) as i64;
    for r in 0..=reach {
        let differs = if r == 0 {
            x.get(0) != y.get(0)
        } else {
            x.get(-r) != y.get(-r) || x.get(r) != y.get(r)
        };
        if differs {
            return Ok(AgreementRadius::Exact(r - 1));
        }
    }
    Ok(match mode {
        Comparison::Clamped => AgreementRadius::Clamped(reach as u64),
        Comparison::Optimistic => AgreementRadius::Unbounded,
    })
}

/// `Some(true)` if `x` and `y` agree on `[-k, k]`, `Some(false)` if they
/// differ there, `None` if either window fails to cover `[-k, k]`.
pub fn agree_within(x: &Window, y: &Window, k: u32) -> Option<bool> {
    let k = k as i64;
    if !x.covers_range(-k, k) || !y.covers_range(-k, k) {
        return None;
    }
    Some((-k..=k).all(|i| x.get(i) == y.get(i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, base: i64) -> Window {
        Window::new(base, s.bytes().map(|b| b - b'0').collect::<Vec<_>>())
    }

    #[test]
    fn identical_windows_clamp_to_coverage() {
        let x = w("010", -1);
        assert_eq!(agreement_radius(&x, &x, Comparison::Clamped).unwrap(), AgreementRadius::Clamped(1));
        assert_eq!(agreement_radius(&x, &x, Comparison::Optimistic).unwrap(), AgreementRadius::Unbounded);
    }

    #[test]
    fn mismatch_at_right_end() {
        let r = agreement_radius(&w("010", -1), &w("011", -1), Comparison::Clamped).unwrap();
        assert_eq!(r, AgreementRadius::Exact(0));
        assert!(r.at_least(0));
        assert!(!r.at_least(1));
    }

    #[test]
    fn mismatch_at_origin() {
        let r = agreement_radius(&w("000", -1), &w("010", -1), Comparison::Clamped).unwrap();
        assert_eq!(r, AgreementRadius::Exact(-1));
        assert!(!r.at_least(0));
    }

    #[test]
    fn asymmetric_coverage_uses_common_symmetric_range() {
        // x covers [-1, 5], y covers [-3, 1]: common symmetric reach is 1.
        let x = w("0012345", -1);
        let y = w("0000123", -3);
        assert_eq!(agreement_radius(&x, &y, Comparison::Clamped).unwrap(), AgreementRadius::Clamped(1));
    }

    #[test]
    fn window_must_cover_origin() {
        assert_eq!(agreement_radius(&w("01", 1), &w("01", 0), Comparison::Clamped), Err(Error::NotCovered(0)));
    }

    #[test]
    fn shift_moves_base() {
        let x = w("12", 0);
        let y = shift_window(&x, 1);
        assert_eq!(y.base, -1);
        assert_eq!(y.get(0), Some(2));
        assert_eq!(shift_window(&y, -1), x);
        assert_eq!(shift_window(&x, 0), x);
    }

    #[test]
    fn slices_and_restrictions() {
        let x = w("01234", -2);
        assert_eq!(x.slice(-1, 1).unwrap(), &[1, 2, 3]);
        assert_eq!(x.slice(1, 0).unwrap(), &[] as &[u8]);
        assert_eq!(x.slice(-3, 0), Err(Error::NotCovered(-3)));
        assert_eq!(x.restrict(0, 2).unwrap(), w("234", 0));
        assert_eq!(Window::centered(Word::new(vec![0; 5])).unwrap().base, -2);
    }
}
