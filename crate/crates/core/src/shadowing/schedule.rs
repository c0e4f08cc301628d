//! Two-point shadowing of forward pseudo-orbits from an alternating index schedule.
//!
//! Point `z` copies `x^{j_s}` on the index blocks `[j_s, k_s]`, point `w`
//! copies `x^{p_s}` on `[p_s, q_s]`, and consecutive copies are joined by
//! bridges of length `m`. With step `m + 2k + 1` each gap between copied
//! windows `[j_s - k, k_s + k]` is exactly `m` symbols long.

use crate::alphabet::{Symbol, Word};
use crate::error::{Error, Result};
use crate::presentation::ShiftPresentation;
use crate::pseudo_orbit::{trace, PseudoOrbit};
use crate::shadowing::construct::{Bridge, ShadowPair};
use crate::shadowing::params::{BlockParams, BlockSchedule, IndexSchedule, PointTrack, ScheduleVariant};
use crate::window::Window;

/// Schedule step for mixing number `m` at precision `2^-k`.
pub fn schedule_step(m: usize, k: u32) -> usize {
    m + 2 * k as usize + 1
}

/// Least pseudo-orbit precision exponent the construction accepts.
pub fn required_delta(m: usize, k: u32) -> u32 {
    (2 * schedule_step(m, k) + k as usize + 1) as u32
}

/// Copies `x^{start}` on positions `[start - k, end + k]` for each interval and bridges the gaps.
fn build_point(
    shift: &ShiftPresentation,
    po: &PseudoOrbit,
    point: usize,
    intervals: &[(i64, i64)],
    m: usize,
    k: i64,
    bridges: &mut Vec<Bridge>,
) -> Result<(Vec<Symbol>, PointTrack)> {
    let mut word: Vec<Symbol> = Vec::new();
    let mut track = PointTrack::default();
    for &(start, end) in intervals {
        let entry = po.entry(start).expect("interval starts inside the pseudo-orbit");
        let block = entry.slice(-k, end - start + k)?;
        if !word.is_empty() {
            let bridge = shift.find_bridge(&word, m, block)?.ok_or_else(|| Error::BridgeFailure {
                u: shift.render(&word),
                n: m,
                v: shift.render(block),
            })?;
            bridges.push(Bridge { point, position: start - k - m as i64, word: bridge.clone(), replaced: None });
            word.extend_from_slice(&bridge);
        }
        word.extend_from_slice(block);
        track.agreement.push((start - k, end + k));
        track.blocks.push((start, end));
    }
    Ok((word, track))
}

/// Two-point shadowing of a forward pseudo-orbit for a shift with mixing number `m`.
///
/// Requires precision `2^-K` with `K >= 2(m + 2k + 1) + k + 1`, so every copied
/// window is seen by a single pseudo-orbit entry and equals the trace there.
pub fn construct_pair_schedule(shift: &ShiftPresentation, m: usize, po: &PseudoOrbit, k: u32) -> Result<ShadowPair> {
    if m == 0 {
        return Err(Error::Precondition("mixing number must be positive".into()));
    }
    if !po.is_forward() {
        return Err(Error::Precondition("schedule construction needs a pseudo-orbit indexed from 0".into()));
    }
    let needed = required_delta(m, k);
    if po.delta().0 < needed {
        return Err(Error::Precondition(format!(
            "pseudo-orbit precision 2^-{} is coarser than the required 2^-{needed}",
            po.delta().0
        )));
    }
    let step = schedule_step(m, k);
    let last = po.last_index();
    let count = (last as usize) / (2 * step) + 2;
    let sched = IndexSchedule::new(step, count);
    let z_intervals: Vec<(i64, i64)> =
        sched.j.iter().zip(&sched.k).map(|(&a, &b)| (a, b)).filter(|&(a, _)| a <= last).collect();
    let w_intervals: Vec<(i64, i64)> =
        sched.p.iter().zip(&sched.q).map(|(&a, &b)| (a, b)).filter(|&(a, _)| a <= last).collect();

    let c = trace(po);
    let (lo, hi) = (c.start(), c.end() - 1);
    let ki = k as i64;
    let mut bridges = Vec::new();
    let mut points = Vec::with_capacity(2);
    let mut tracks = Vec::with_capacity(2);
    for (point, intervals) in [z_intervals, w_intervals].iter().enumerate() {
        let (word, track) = build_point(shift, po, point, intervals, m, ki, &mut bridges)?;
        let mut base = -ki;
        let mut word = Word::new(word);
        let end = base + word.len() as i64;
        if end <= hi {
            word = shift.extend_right(&word, (hi + 1 - end) as usize)?;
        }
        if base > lo {
            word = shift.extend_left(&word, (base - lo) as usize)?;
            base = lo;
        }
        points.push(Window::new(base, word));
        tracks.push(track);
    }
    Ok(ShadowPair {
        points,
        params: BlockParams { k, m, n: step, delta: needed },
        schedule: BlockSchedule { variant: ScheduleVariant::Alternating, tracks, step: Some(step) },
        bridges,
        horizon: (lo, hi),
    })
}
