//! Two-point shadowing sets built block by block from the trace of a pseudo-orbit.
//!
//! Each point starts as the trace on a central block and grows outward in
//! steps of `6N`, alternating glue words with fresh stretches of the trace.
//! Mixing glue is a bridge of length `N`; quasi-finite-type glue replaces the
//! overlap word `c[hi, hi + N]` by a word of the same length. Growth stops
//! once the trace range is exhausted, and anything still uncovered is filled
//! with lexicographically least extensions.

use serde::{Deserialize, Serialize};

use crate::alphabet::{Symbol, Word};
use crate::error::{Error, Result};
use crate::presentation::ShiftPresentation;
use crate::pseudo_orbit::{trace, PseudoOrbit};
use crate::shadowing::params::{BlockParams, BlockSchedule, PointTrack, ScheduleVariant};
use crate::window::Window;

/// A word inserted into a constructed point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bridge {
    /// Index of the point in [`ShadowPair::points`].
    pub point: usize,
    /// Position of the first symbol.
    pub position: i64,
    pub word: Word,
    /// The trace word it replaces (quasi-finite-type glue only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replaced: Option<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadowPair {
    pub points: Vec<Window>,
    pub params: BlockParams,
    pub schedule: BlockSchedule,
    pub bridges: Vec<Bridge>,
    /// Positions `[lo, hi]` covered by the trace of the pseudo-orbit.
    pub horizon: (i64, i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Mixing,
    MixingForward,
    Qft,
    Schedule,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mixing" => Ok(Method::Mixing),
            "mixing-forward" => Ok(Method::MixingForward),
            "qft" => Ok(Method::Qft),
            "schedule" => Ok(Method::Schedule),
            other => Err(Error::Invalid(format!("unknown construction method {other:?}"))),
        }
    }
}

/// Runs the construction selected by `method`.
pub fn construct_pair(
    shift: &ShiftPresentation,
    method: Method,
    m: usize,
    po: &PseudoOrbit,
    k: u32,
) -> Result<ShadowPair> {
    match method {
        Method::Mixing => construct_pair_mixing(shift, m, po, k),
        Method::MixingForward => construct_pair_mixing_forward(shift, m, po, k),
        Method::Qft => construct_pair_qft(shift, m, po, k),
        Method::Schedule => crate::shadowing::schedule::construct_pair_schedule(shift, m, po, k),
    }
}

/// Trace plus the checks shared by the block constructions.
struct Setup {
    params: BlockParams,
    c: Window,
    lo: i64,
    hi: i64,
}

impl Setup {
    fn new(po: &PseudoOrbit, m: usize, k: u32, forward: bool) -> Result<Self> {
        let params = BlockParams::new(k, m)?;
        if po.delta().0 < params.delta {
            return Err(Error::Precondition(format!(
                "pseudo-orbit precision 2^-{} is coarser than the required 2^-{}",
                po.delta().0,
                params.delta
            )));
        }
        if forward && !po.is_forward() {
            return Err(Error::Precondition("forward construction needs a pseudo-orbit indexed from 0".into()));
        }
        if !po.indices().contains(&0) {
            return Err(Error::Precondition("pseudo-orbit must contain index 0".into()));
        }
        let c = trace(po);
        let (lo, hi) = (c.start(), c.end() - 1);
        Ok(Self { params, c, lo, hi })
    }

    /// Trace on `[lo, hi]` clipped to the horizon; empty if nothing is left.
    fn c(&self, lo: i64, hi: i64) -> &[Symbol] {
        let (lo, hi) = (lo.max(self.lo), hi.min(self.hi));
        self.c.slice(lo, hi).expect("clipped range lies in the trace")
    }

    fn step(&self) -> i64 {
        6 * self.params.n as i64
    }
}

/// A point under construction: `word` sits at positions `[base, base + len)`.
struct Growing {
    base: i64,
    word: Vec<Symbol>,
    track: PointTrack,
}

impl Growing {
    fn new(s: &Setup, lo: i64, hi: i64) -> Self {
        let word = s.c(lo, hi).to_vec();
        Growing { base: lo.max(s.lo), word, track: PointTrack::default() }
    }

    fn agree(&mut self, lo: i64, hi: i64) {
        if lo <= hi {
            self.track.agreement.push((lo, hi));
        }
    }

    /// Completes lexicographically to cover `[lo, hi]`.
    fn finish(mut self, shift: &ShiftPresentation, lo: i64, hi: i64) -> Result<(Window, PointTrack)> {
        let end = self.base + self.word.len() as i64;
        if end <= hi {
            self.word = shift.extend_right(&self.word, (hi + 1 - end) as usize)?.into_inner();
        }
        if self.base > lo {
            self.word = shift.extend_left(&self.word, (self.base - lo) as usize)?.into_inner();
            self.base = lo;
        }
        self.track.agreement.sort_unstable();
        Ok((Window::new(self.base, self.word), self.track))
    }
}

fn bridge_failure(shift: &ShiftPresentation, u: &[Symbol], n: usize, v: &[Symbol]) -> Error {
    Error::BridgeFailure { u: shift.render(u), n, v: shift.render(v) }
}

/// Mixing glue around the open block `(lo1, hi1)`. With `two_sided = false`
/// the point starts at the left end of the trace and only grows rightward.
fn grow_mixing(
    shift: &ShiftPresentation,
    s: &Setup,
    point: usize,
    (lo1, hi1): (i64, i64),
    two_sided: bool,
    bridges: &mut Vec<Bridge>,
) -> Result<(Window, PointTrack)> {
    let n = s.params.n;
    let ni = n as i64;
    let step = s.step();
    let lo1 = if two_sided { lo1 } else { s.lo - 1 };
    let mut g = Growing::new(s, lo1 + 1, hi1 - 1);
    g.agree(lo1 + 1, hi1 - 1);
    let (mut lo_j, mut hi_j) = (lo1, hi1);
    g.track.blocks.push((lo_j, hi_j));
    let mut right_done = hi_j > s.hi;
    let mut left_done = lo_j < s.lo;
    while !(right_done && left_done) {
        if !right_done {
            let v = s.c(hi_j + ni, hi_j + step - 1);
            let w = shift.find_bridge(&g.word, n, v)?.ok_or_else(|| bridge_failure(shift, &g.word, n, v))?;
            bridges.push(Bridge { point, position: hi_j, word: w.clone(), replaced: None });
            g.word.extend_from_slice(&w);
            g.word.extend_from_slice(v);
            g.agree(hi_j + ni, (hi_j + step - 1).min(s.hi));
            right_done = hi_j + step > s.hi;
        }
        if !left_done {
            let from = (lo_j - step + 1).max(s.lo);
            let v = s.c(from, lo_j - ni);
            let u = shift.find_bridge(v, n, &g.word)?.ok_or_else(|| bridge_failure(shift, v, n, &g.word))?;
            bridges.push(Bridge { point, position: lo_j - ni + 1, word: u.clone(), replaced: None });
            g.word = Word::concat(&[v, &u, &g.word]).into_inner();
            g.base = lo_j - ni + 1 - v.len() as i64;
            g.agree(from, lo_j - ni);
            left_done = lo_j - step < s.lo;
        }
        lo_j -= step;
        hi_j += step;
        g.track.blocks.push((lo_j, hi_j));
    }
    g.finish(shift, s.lo, s.hi)
}

fn qft_failure(shift: &ShiftPresentation, u: &[Symbol], w: &[Symbol], v: &[Symbol]) -> Error {
    Error::QftBridgeFailure { u: shift.render(u), w: shift.render(w), v: shift.render(v) }
}

/// `w` itself when `u w v` is allowed, else the least replacement from [`ShiftPresentation::qft_bridge`].
fn overlap_glue(shift: &ShiftPresentation, u: &[Symbol], w: &[Symbol], v: &[Symbol]) -> Result<Word> {
    if shift.is_allowed(&Word::concat(&[u, w, v])) {
        return Ok(Word::from(w));
    }
    shift.qft_bridge(u, w, v)?.ok_or_else(|| qft_failure(shift, u, w, v))
}

/// Quasi-finite-type glue around the open block `(lo1, hi1)`.
///
/// Invariant: `left_ctx · a · right_ctx` is allowed, where the contexts are
/// the trace on `[lo_j - N, lo_j]` and `[hi_j, hi_j + N]` (clipped to the
/// horizon, empty once that side is finished).
fn grow_qft(
    shift: &ShiftPresentation,
    s: &Setup,
    point: usize,
    (lo1, hi1): (i64, i64),
    bridges: &mut Vec<Bridge>,
) -> Result<(Window, PointTrack)> {
    let ni = s.params.n as i64;
    let step = s.step();
    let mut g = Growing::new(s, lo1 + 1, hi1 - 1);
    g.agree(lo1 + 1, hi1 - 1);
    let (mut lo_j, mut hi_j) = (lo1, hi1);
    g.track.blocks.push((lo_j, hi_j));
    let mut left_ctx = s.c(lo_j - ni, lo_j).to_vec();
    let mut right_ctx = s.c(hi_j, hi_j + ni).to_vec();
    let mut right_done = hi_j > s.hi;
    let mut left_done = lo_j < s.lo;
    while !(right_done && left_done) {
        if !right_done {
            if hi_j + ni > s.hi {
                g.word.append(&mut right_ctx);
                g.agree(hi_j, s.hi);
                right_done = true;
            } else {
                let u = Word::concat(&[&left_ctx, &g.word]);
                let w = s.c(hi_j, hi_j + ni);
                let v = s.c(hi_j + ni + 1, hi_j + step + ni);
                let z = overlap_glue(shift, &u, w, v)?;
                bridges.push(Bridge { point, position: hi_j, word: z.clone(), replaced: Some(Word::from(w)) });
                g.word.extend_from_slice(&z);
                g.word.extend_from_slice(s.c(hi_j + ni + 1, hi_j + step - 1));
                g.agree(hi_j + ni + 1, (hi_j + step - 1).min(s.hi));
                right_ctx = s.c(hi_j + step, hi_j + step + ni).to_vec();
                right_done = hi_j + step > s.hi;
            }
        }
        if !left_done {
            if lo_j - ni < s.lo {
                g.base -= left_ctx.len() as i64;
                g.word = Word::concat(&[&left_ctx, &g.word]).into_inner();
                left_ctx.clear();
                g.agree(s.lo, lo_j);
                left_done = true;
            } else {
                let u = s.c(lo_j - step - ni, lo_j - ni - 1);
                let w = s.c(lo_j - ni, lo_j);
                let v = Word::concat(&[&g.word, &right_ctx]);
                let z = overlap_glue(shift, u, w, &v)?;
                bridges.push(Bridge { point, position: lo_j - ni, word: z.clone(), replaced: Some(Word::from(w)) });
                let fresh = s.c(lo_j - step + 1, lo_j - ni - 1);
                g.base = lo_j - ni - fresh.len() as i64;
                g.word = Word::concat(&[fresh, &z, &g.word]).into_inner();
                g.agree((lo_j - step + 1).max(s.lo), lo_j - ni - 1);
                left_ctx = s.c(lo_j - step - ni, lo_j - step).to_vec();
                left_done = lo_j - step < s.lo;
            }
        }
        lo_j -= step;
        hi_j += step;
        g.track.blocks.push((lo_j, hi_j));
    }
    g.finish(shift, s.lo, s.hi)
}

fn pair(
    s: &Setup,
    variant: ScheduleVariant,
    grown: [(Window, PointTrack); 2],
    bridges: Vec<Bridge>,
) -> ShadowPair {
    let [(a, ta), (b, tb)] = grown;
    ShadowPair {
        points: vec![a, b],
        params: s.params,
        schedule: BlockSchedule { variant, tracks: vec![ta, tb], step: None },
        bridges,
        horizon: (s.lo, s.hi),
    }
}

/// Two-sided construction for a shift with mixing number `m`.
///
/// Point `a` grows from `(L_1, R_1) = (-N, 4N)`, point `b` from
/// `(S_1, T_1) = (-4N, N)`; both equal the trace on `(-N, N)`.
pub fn construct_pair_mixing(shift: &ShiftPresentation, m: usize, po: &PseudoOrbit, k: u32) -> Result<ShadowPair> {
    let s = Setup::new(po, m, k, false)?;
    let p = s.params;
    let mut bridges = Vec::new();
    let a = grow_mixing(shift, &s, 0, (p.l(1), p.r(1)), true, &mut bridges)?;
    let b = grow_mixing(shift, &s, 1, (p.s(1), p.t(1)), true, &mut bridges)?;
    Ok(pair(&s, ScheduleVariant::MixingTwoSided, [a, b], bridges))
}

/// One-sided analogue for pseudo-orbits indexed from 0.
pub fn construct_pair_mixing_forward(
    shift: &ShiftPresentation,
    m: usize,
    po: &PseudoOrbit,
    k: u32,
) -> Result<ShadowPair> {
    let s = Setup::new(po, m, k, true)?;
    let p = s.params;
    let mut bridges = Vec::new();
    let a = grow_mixing(shift, &s, 0, (p.l(1), p.r(1)), false, &mut bridges)?;
    let b = grow_mixing(shift, &s, 1, (p.s(1), p.t(1)), false, &mut bridges)?;
    Ok(pair(&s, ScheduleVariant::Forward, [a, b], bridges))
}

/// Two-sided construction for a shift with quasi-finite-type number `m`.
pub fn construct_pair_qft(shift: &ShiftPresentation, m: usize, po: &PseudoOrbit, k: u32) -> Result<ShadowPair> {
    let s = Setup::new(po, m, k, false)?;
    let p = s.params;
    let mut bridges = Vec::new();
    let a = grow_qft(shift, &s, 0, (p.l(1), p.r(1)), &mut bridges)?;
    let b = grow_qft(shift, &s, 1, (p.s(1), p.t(1)), &mut bridges)?;
    Ok(pair(&s, ScheduleVariant::QftTwoSided, [a, b], bridges))
}
