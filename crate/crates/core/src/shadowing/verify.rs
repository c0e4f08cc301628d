//! Checks that a finite set of points shadows a pseudo-orbit.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::presentation::ShiftPresentation;
use crate::pseudo_orbit::PseudoOrbit;
use crate::window::{agree_within, agreement_radius, shift_window, Comparison, Window};

/// Options for [`verify_shadow_set`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Require pairwise agreement on `[-k, k]` (diameter below `2^-k`).
    pub diameter: bool,
    /// Largest allowed number of members.
    pub max_members: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { diameter: true, max_members: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DiameterCheck {
    Skipped,
    Passed,
    /// Members `first` and `second` differ on `[-k, k]`.
    Failed { first: usize, second: usize },
    /// Some member does not cover `[-k, k]`.
    Unverifiable { member: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexMatch {
    pub index: i64,
    /// First member matching `x^index` on `[-k, k]` after shifting.
    pub member: Option<usize>,
    /// Agreement radius of that member with `x^index`.
    pub radius: Option<i64>,
    /// No member matched and at least one could not be compared.
    pub unverifiable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ShadowVerdict {
    /// Every check passed.
    Certified,
    /// Nothing failed, but some indices could not be compared.
    ClampedPass { unverifiable: Vec<i64> },
    NotAllowed { member: usize },
    TooManyMembers { members: usize, bound: usize },
    Diameter,
    /// No member follows `x^index` within `2^-k`.
    Unshadowed { index: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadowCertificate {
    pub k: u32,
    pub members: usize,
    pub diameter: DiameterCheck,
    /// Per-index table, up to and including the first failing index.
    pub table: Vec<IndexMatch>,
    /// Pseudo-orbit indices examined.
    pub horizon: (i64, i64),
    pub verdict: ShadowVerdict,
}

impl ShadowCertificate {
    pub fn passed(&self) -> bool {
        matches!(self.verdict, ShadowVerdict::Certified | ShadowVerdict::ClampedPass { .. })
    }

    pub fn certified(&self) -> bool {
        matches!(self.verdict, ShadowVerdict::Certified)
    }
}

/// Whether `x^i` is followed within `2^-k` by `member` at time `i`:
/// `Some(true)`/`Some(false)`, or `None` when the member is too short to tell.
pub fn follows(member: &Window, entry: &Window, i: i64, k: u32) -> Option<bool> {
    agree_within(&shift_window(member, i), entry, k)
}

/// Checks that `members` shadow `po` at precision `2^-k`: each member is
/// allowed, the set is small enough, its diameter is below `2^-k` (unless
/// disabled), and at every index `i` some member agrees with `x^i` on `[-k, k]`
/// after shifting by `i`.
pub fn verify_shadow_set(
    shift: &ShiftPresentation,
    po: &PseudoOrbit,
    members: &[Window],
    k: u32,
    options: VerifyOptions,
) -> Result<ShadowCertificate> {
    for m in members {
        shift.alphabet().check(&m.word)?;
    }
    let mut cert = ShadowCertificate {
        k,
        members: members.len(),
        diameter: DiameterCheck::Skipped,
        table: Vec::new(),
        horizon: (po.first_index(), po.last_index()),
        verdict: ShadowVerdict::Certified,
    };
    if let Some(member) = members.iter().position(|m| !shift.is_allowed(&m.word)) {
        cert.verdict = ShadowVerdict::NotAllowed { member };
        return Ok(cert);
    }
    if let Some(bound) = options.max_members {
        if members.len() > bound {
            cert.verdict = ShadowVerdict::TooManyMembers { members: members.len(), bound };
            return Ok(cert);
        }
    }
    if options.diameter {
        cert.diameter = diameter_check(members, k);
        match cert.diameter {
            DiameterCheck::Failed { .. } => {
                cert.verdict = ShadowVerdict::Diameter;
                return Ok(cert);
            }
            DiameterCheck::Unverifiable { .. } => {
                cert.verdict = ShadowVerdict::ClampedPass { unverifiable: Vec::new() };
            }
            _ => {}
        }
    }
    let mut unverifiable = Vec::new();
    for i in po.indices() {
        let entry = po.entry(i).expect("index in range");
        let mut row = IndexMatch { index: i, member: None, radius: None, unverifiable: false };
        let mut unknown = false;
        for (idx, m) in members.iter().enumerate() {
            match follows(m, &entry, i, k) {
                Some(true) => {
                    let r = agreement_radius(&shift_window(m, i), &entry, Comparison::Clamped)?;
                    row.member = Some(idx);
                    row.radius = r.radius();
                    break;
                }
                Some(false) => {}
                None => unknown = true,
            }
        }
        if row.member.is_none() {
            if !unknown {
                cert.table.push(row);
                cert.verdict = ShadowVerdict::Unshadowed { index: i };
                return Ok(cert);
            }
            row.unverifiable = true;
            unverifiable.push(i);
        }
        cert.table.push(row);
    }
    if !unverifiable.is_empty() || matches!(cert.verdict, ShadowVerdict::ClampedPass { .. }) {
        cert.verdict = ShadowVerdict::ClampedPass { unverifiable };
    }
    Ok(cert)
}

fn diameter_check(members: &[Window], k: u32) -> DiameterCheck {
    for (a, x) in members.iter().enumerate() {
        for (b, y) in members.iter().enumerate().skip(a + 1) {
            match agree_within(x, y, k) {
                Some(true) => {}
                Some(false) => return DiameterCheck::Failed { first: a, second: b },
                None => {
                    let member = if x.covers_range(-(k as i64), k as i64) { b } else { a };
                    return DiameterCheck::Unverifiable { member };
                }
            }
        }
    }
    DiameterCheck::Passed
}
