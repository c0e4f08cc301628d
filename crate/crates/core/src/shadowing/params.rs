use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of the block constructions at precision `epsilon = 2^-k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockParams {
    /// `epsilon = 2^-k`.
    pub k: u32,
    /// Mixing or quasi-finite-type number.
    pub m: usize,
    /// Block unit `max(m + 1, k + 1)`; the step `m + 2k + 1` for the index schedule.
    pub n: usize,
    /// Required precision exponent: `4n`, or `2n + k + 1` for the index schedule.
    pub delta: u32,
}

impl BlockParams {
    pub fn new(k: u32, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Precondition("mixing number must be positive".into()));
        }
        let n = (m + 1).max(k as usize + 1);
        let delta = u32::try_from(4 * n).map_err(|_| Error::TooLarge(format!("block unit {n}")))?;
        Ok(Self { k, m, n, delta })
    }

    fn unit(&self) -> i64 {
        self.n as i64
    }

    /// `L_j = (5 - 6j) N`.
    pub fn l(&self, j: i64) -> i64 {
        (5 - 6 * j) * self.unit()
    }

    /// `R_j = (6j - 2) N`.
    pub fn r(&self, j: i64) -> i64 {
        (6 * j - 2) * self.unit()
    }

    /// `S_j = (2 - 6j) N`.
    pub fn s(&self, j: i64) -> i64 {
        (2 - 6 * j) * self.unit()
    }

    /// `T_j = (6j - 5) N`.
    pub fn t(&self, j: i64) -> i64 {
        (6 * j - 5) * self.unit()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScheduleVariant {
    MixingTwoSided,
    QftTwoSided,
    Forward,
    Alternating,
}

/// Where one constructed point was built to equal the trace.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointTrack {
    /// Closed intervals of positions on which the point equals the trace.
    pub agreement: Vec<(i64, i64)>,
    /// Realized open blocks `(lo_j, hi_j)`, when the construction has them.
    pub blocks: Vec<(i64, i64)>,
}

impl PointTrack {
    /// Pseudo-orbit indices `i` whose whole window `[i - k, i + k]` lies in an agreement interval.
    pub fn covered(&self, k: u32) -> Vec<(i64, i64)> {
        let k = k as i64;
        self.agreement
            .iter()
            .filter_map(|&(lo, hi)| (lo + k <= hi - k).then_some((lo + k, hi - k)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSchedule {
    pub variant: ScheduleVariant,
    /// One track per constructed point.
    pub tracks: Vec<PointTrack>,
    /// Step of the `j_s`, `k_s` sequences (alternating schedule only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<usize>,
}

impl BlockSchedule {
    /// Whether every index in `[lo, hi]` is covered by some track.
    pub fn covers(&self, k: u32, lo: i64, hi: i64) -> bool {
        let mut intervals: Vec<(i64, i64)> = self.tracks.iter().flat_map(|t| t.covered(k)).collect();
        intervals.sort_unstable();
        let mut next = lo;
        for (a, b) in intervals {
            if a > next {
                break;
            }
            next = next.max(b + 1);
        }
        next > hi
    }
}

/// The alternating index schedule for step `m`: `j_s = 2sm`, `k_s = j_s + m`,
/// `p_0 = 0`, `p_s = k_s`, `q_s = j_{s+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSchedule {
    pub step: usize,
    pub j: Vec<i64>,
    pub k: Vec<i64>,
    pub p: Vec<i64>,
    pub q: Vec<i64>,
}

impl IndexSchedule {
    /// First `count` terms of each sequence.
    pub fn new(step: usize, count: usize) -> Self {
        let m = step as i64;
        let j: Vec<i64> = (0..count as i64).map(|s| 2 * s * m).collect();
        let k: Vec<i64> = j.iter().map(|&js| js + m).collect();
        let p = (0..count).map(|s| if s == 0 { 0 } else { k[s] }).collect();
        let q = (0..count as i64).map(|s| 2 * (s + 1) * m).collect();
        Self { step, j, k, p, q }
    }
}
