//! Finite pseudo-orbits of the shift map.
//!
//! Entry `x^i` is stored as the centered word `x^i_{[-R, R]}`. At dyadic
//! scale `delta = 2^-K` the condition `d(sigma(x^i), x^{i+1}) < delta` reads
//! `x^i_{j+1} = x^{i+1}_j` for all `|j| <= K`, which needs `R >= K + 1`.

use crate::alphabet::Word;
use crate::error::{Error, Result};
use crate::presentation::ShiftPresentation;
use crate::window::{DyadicScale, Window};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoOrbit {
    first: i64,
    delta: DyadicScale,
    radius: usize,
    entries: Vec<Word>,
}

impl PseudoOrbit {
    pub fn first_index(&self) -> i64 {
        self.first
    }

    pub fn last_index(&self) -> i64 {
        self.first + self.entries.len() as i64 - 1
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        self.first_index()..=self.last_index()
    }

    pub fn delta(&self) -> DyadicScale {
        self.delta
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Word] {
        &self.entries
    }

    /// `x^i` as a window centered on 0, or `None` outside the index range.
    pub fn entry(&self, i: i64) -> Option<Window> {
        let offset = i.checked_sub(self.first)?;
        let word = self.entries.get(usize::try_from(offset).ok()?)?;
        Some(Window::new(-(self.radius as i64), word.clone()))
    }

    /// Whether the index set is a forward orbit starting at 0.
    pub fn is_forward(&self) -> bool {
        self.first == 0
    }
}

/// Validates `entries` (indexed from `first`) as a `2^-K` pseudo-orbit in `shift`.
pub fn check_pseudo_orbit(
    entries: Vec<Word>,
    first: i64,
    delta: DyadicScale,
    shift: &ShiftPresentation,
) -> Result<PseudoOrbit> {
    let len = entries.first().ok_or(Error::EmptyPseudoOrbit)?.len();
    if len % 2 == 0 {
        return Err(Error::BadEntryLength { index: first, len, expected: len + 1 });
    }
    let radius = (len - 1) / 2;
    if radius <= delta.0 as usize {
        return Err(Error::RadiusTooSmall { radius, delta: delta.0 });
    }
    for (n, word) in entries.iter().enumerate() {
        let index = first + n as i64;
        if word.len() != len {
            return Err(Error::BadEntryLength { index, len: word.len(), expected: len });
        }
        shift.alphabet().check(word)?;
        if !shift.is_allowed(word) {
            return Err(Error::EntryNotAllowed { index });
        }
    }
    let k = delta.0 as i64;
    let r = radius as i64;
    for (n, pair) in entries.windows(2).enumerate() {
        for j in -k..=k {
            if pair[0][(r + j + 1) as usize] != pair[1][(r + j) as usize] {
                return Err(Error::PseudoOrbitMismatch { index: first + n as i64, offset: j });
            }
        }
    }
    Ok(PseudoOrbit { first, delta, radius, entries })
}

/// The sequence `c_i = x^i_0`, extended to the left by the first entry and
/// to the right by the last, so it covers `[first - R, last + R]`.
pub fn trace(po: &PseudoOrbit) -> Window {
    let r = po.radius;
    let mut symbols = Vec::with_capacity(po.len() + 2 * r);
    symbols.extend_from_slice(&po.entries[0][..r]);
    symbols.extend(po.entries.iter().map(|e| e[r]));
    symbols.extend_from_slice(&po.entries[po.len() - 1][r + 1..]);
    Window::new(po.first - r as i64, symbols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::window::shift_window;

    fn full() -> ShiftPresentation {
        ShiftPresentation::sft_from_forbidden(Alphabet::numeric(3).unwrap(), vec![]).unwrap()
    }

    /// Centered radius-`r` views of `point` at indices `first..=last`.
    fn orbit(point: &Window, first: i64, last: i64, r: i64) -> Vec<Word> {
        (first..=last)
            .map(|i| shift_window(point, i).restrict(-r, r).unwrap().word)
            .collect()
    }

    #[test]
    fn true_orbit_is_valid_and_traces_to_itself() {
        let point = Window::new(-20, (0..41).map(|i| (i * 7 % 3) as u8).collect::<Vec<_>>());
        let entries = orbit(&point, -5, 5, 4);
        for k in 0..4 {
            assert!(check_pseudo_orbit(entries.clone(), -5, DyadicScale(k), &full()).is_ok());
        }
        let po = check_pseudo_orbit(entries, -5, DyadicScale(3), &full()).unwrap();
        assert_eq!(trace(&po), point.restrict(-9, 9).unwrap());
    }

    #[test]
    fn zero_orbit_traces_to_zeros() {
        let entries = vec![Word::repeat(0, 5); 6];
        let po = check_pseudo_orbit(entries, 0, DyadicScale(1), &full()).unwrap();
        assert_eq!(trace(&po), Window::new(-2, Word::repeat(0, 10)));
    }

    #[test]
    fn mismatch_is_reported_with_offset() {
        let mut entries = vec![Word::repeat(0, 5); 3];
        entries[2].0[2] = 1;
        assert_eq!(
            check_pseudo_orbit(entries, 10, DyadicScale(1), &full()),
            Err(Error::PseudoOrbitMismatch { index: 11, offset: 0 })
        );
    }

    #[test]
    fn insufficient_radius() {
        let entries = vec![Word::repeat(0, 5); 3];
        assert_eq!(
            check_pseudo_orbit(entries, 0, DyadicScale(2), &full()),
            Err(Error::RadiusTooSmall { radius: 2, delta: 2 })
        );
    }

    #[test]
    fn disallowed_entry() {
        let a = Alphabet::numeric(2).unwrap();
        let golden = ShiftPresentation::sft_from_forbidden(a.clone(), vec![a.parse_word("11").unwrap()]).unwrap();
        let entries = vec![a.parse_word("00000").unwrap(), a.parse_word("00110").unwrap()];
        assert_eq!(
            check_pseudo_orbit(entries, 0, DyadicScale(0), &golden),
            Err(Error::EntryNotAllowed { index: 1 })
        );
    }
}
