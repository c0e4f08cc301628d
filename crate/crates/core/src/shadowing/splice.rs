//! Pseudo-orbits made by switching between true orbits.

use rand::Rng;

use crate::alphabet::Word;
use crate::catalog;
use crate::error::{Error, Result};
use crate::io::ShiftDef;
use crate::presentation::ShiftPresentation;
use crate::pseudo_orbit::{check_pseudo_orbit, trace, PseudoOrbit};
use crate::window::{shift_window, DyadicScale, Window};

/// Entry `x^i` is the radius-`R` view of `sigma^i` of the current anchor,
/// where the anchor index increases by one after each switch time `t`
/// (so `x^t` comes from one anchor and `x^{t+1}` from the next).
pub fn make_spliced_pseudo_orbit(
    shift: &ShiftPresentation,
    anchors: &[Window],
    switch_times: &[i64],
    delta: DyadicScale,
    radius: usize,
    first: i64,
    last: i64,
) -> Result<PseudoOrbit> {
    if anchors.len() != switch_times.len() + 1 {
        return Err(Error::Invalid(format!(
            "{} anchors need {} switch times, got {}",
            anchors.len(),
            anchors.len().saturating_sub(1),
            switch_times.len()
        )));
    }
    if first > last {
        return Err(Error::EmptyPseudoOrbit);
    }
    if switch_times.windows(2).any(|w| w[0] >= w[1]) || switch_times.iter().any(|&t| t < first || t >= last) {
        return Err(Error::Invalid("switch times must increase strictly within [first, last)".into()));
    }
    let r = radius as i64;
    let entries = (first..=last)
        .map(|i| {
            let anchor = &anchors[switch_times.iter().filter(|&&t| t < i).count()];
            Ok(shift_window(anchor, i).restrict(-r, r)?.word)
        })
        .collect::<Result<Vec<Word>>>()?;
    check_pseudo_orbit(entries, first, delta, shift)
}

/// A spliced pseudo-orbit with the data that generated it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splice {
    pub po: PseudoOrbit,
    pub anchors: Vec<Window>,
    pub switch_times: Vec<i64>,
}

/// A random allowed word on `[lo, hi]`, each symbol uniform among those that keep it allowed.
pub fn random_point<R: Rng + ?Sized>(shift: &ShiftPresentation, rng: &mut R, lo: i64, hi: i64) -> Result<Window> {
    let word = shift.random_extend_right(rng, &[], (hi - lo + 1) as usize)?;
    Ok(Window::new(lo, word))
}

/// Random splice of `switches + 1` random points. At each switch time `t` the
/// next anchor copies the previous one on `[t + 1 - K, t + 1 + K]` and is
/// extended randomly on both sides.
pub fn random_splice<R: Rng + ?Sized>(
    shift: &ShiftPresentation,
    rng: &mut R,
    switches: usize,
    delta: DyadicScale,
    radius: usize,
    first: i64,
    last: i64,
) -> Result<Splice> {
    if (switches as i64) > last - first {
        return Err(Error::Invalid(format!("{switches} switches do not fit in [{first}, {last})")));
    }
    let (lo, hi) = (first - radius as i64 - 1, last + radius as i64 + 1);
    let mut times = rand::seq::index::sample(rng, (last - first) as usize, switches)
        .into_iter()
        .map(|t| first + t as i64)
        .collect::<Vec<_>>();
    times.sort_unstable();
    let k = delta.0 as i64;
    let mut anchors = vec![random_point(shift, rng, lo, hi)?];
    for &t in &times {
        let (a, b) = ((t + 1 - k).max(lo), (t + 1 + k).min(hi));
        let shared = anchors.last().expect("nonempty").slice(a, b)?.to_vec();
        let right = shift.random_extend_right(rng, &shared, (hi - b) as usize)?;
        let both = shift.random_extend_left(rng, &right, (a - lo) as usize)?;
        anchors.push(Window::new(lo, both));
    }
    let po = make_spliced_pseudo_orbit(shift, &anchors, &times, delta, radius, first, last)?;
    Ok(Splice { po, anchors, switch_times: times })
}

fn require_two_loop(shift: &ShiftPresentation) -> Result<()> {
    if ShiftDef::of(shift) != ShiftDef::of(&catalog::two_loop_graph()) {
        return Err(Error::Precondition("expected the two-loop shift on {0, 1, 2}".into()));
    }
    Ok(())
}

/// Pseudo-orbit on the two-loop shift that follows `...0 1 0...` (a 1 at
/// position 0) up to time `K` and then `...0 2 0...` (a 2 at position
/// `n + 1`). Requires `n >= 2K + 1` so both agree where they are glued.
pub fn two_loop_splice(shift: &ShiftPresentation, n: usize, delta: u32, first: i64, last: i64) -> Result<PseudoOrbit> {
    require_two_loop(shift)?;
    let k = delta as usize;
    if n < 2 * k + 1 {
        return Err(Error::Precondition(format!("need n >= 2K + 1 = {}, got {n}", 2 * k + 1)));
    }
    let t = delta as i64;
    if t < first || t >= last {
        return Err(Error::Precondition(format!("switch time {t} must lie in [{first}, {last})")));
    }
    let radius = k + 1;
    let lo = first.min(0) - radius as i64 - 1;
    let hi = last.max(n as i64 + 1) + radius as i64 + 1;
    let len = (hi - lo + 1) as usize;
    let mut a = vec![0u8; len];
    a[(0 - lo) as usize] = 1;
    let mut b = vec![0u8; len];
    b[(n as i64 + 1 - lo) as usize] = 2;
    make_spliced_pseudo_orbit(
        shift,
        &[Window::new(lo, a), Window::new(lo, b)],
        &[t],
        DyadicScale(delta),
        radius,
        first,
        last,
    )
}

/// The pair `{a, b}` obtained from the trace by sending every nonzero symbol
/// to 1 (for `a`) or to 2 (for `b`).
pub fn two_loop_recolorings(shift: &ShiftPresentation, po: &PseudoOrbit) -> Result<[Window; 2]> {
    require_two_loop(shift)?;
    let c = trace(po);
    let recolor = |to: u8| Window::new(c.base, c.word.iter().map(|&s| if s == 0 { 0 } else { to }).collect::<Vec<_>>());
    Ok([recolor(1), recolor(2)])
}

fn require_four_vertex(shift: &ShiftPresentation) -> Result<()> {
    if ShiftDef::of(shift) != ShiftDef::of(&catalog::four_vertex_graph()) {
        return Err(Error::Precondition("expected the four-vertex graph on {0, 1, 2, 3, 4}".into()));
    }
    Ok(())
}

/// Random splice on the four-vertex graph whose trace reads
/// `... 2 3^L 4 ...` with `L` odd. Both anchors are allowed (the first is
/// `... 2 3 3 3 ...`, the second `... 3 3 3 4 ...`), and they are glued inside
/// the run of 3s, so the parity defect is wider than any single entry.
pub fn four_vertex_crossing_splice<R: Rng + ?Sized>(
    shift: &ShiftPresentation,
    rng: &mut R,
    delta: DyadicScale,
    radius: usize,
    first: i64,
    last: i64,
) -> Result<Splice> {
    require_four_vertex(shift)?;
    if first >= last {
        return Err(Error::Invalid("crossing splice needs at least two entries".into()));
    }
    let k = delta.0 as i64;
    let (lo, hi) = (first - radius as i64 - 1, last + radius as i64 + 1);
    // Keep the 2 and the 4 inside the trace `[first - R, last + R]` when possible.
    let r = radius as i64;
    let (t_lo, t_hi) = ((first - r + k + 11).max(first), (last + r - k - 13).min(last - 1));
    let t = if t_lo <= t_hi { rng.random_range(t_lo..=t_hi) } else { rng.random_range(first..last) };
    let two = t - k - 1 - rng.random_range(0..=10i64);
    let mut four = t + k + 2 + rng.random_range(0..=10i64);
    if (four - two - 1) % 2 == 0 {
        four += 1;
    }
    let (a_lo, b_hi) = (lo.min(two - 1), hi.max(four + 1));
    let mut a = vec![2u8];
    a.extend(std::iter::repeat_n(3u8, (hi - two) as usize));
    let a = shift.random_extend_left(rng, &a, (two - a_lo) as usize)?;
    let mut b = vec![3u8; (four - lo) as usize];
    b.push(4);
    let b = shift.random_extend_right(rng, &b, (b_hi - four) as usize)?;
    let anchors = vec![
        Window::new(a_lo, a).restrict(lo, hi)?,
        Window::new(lo, b).restrict(lo, hi)?,
    ];
    let po = make_spliced_pseudo_orbit(shift, &anchors, &[t], delta, radius, first, last)?;
    Ok(Splice { po, anchors, switch_times: vec![t] })
}
