//! End-to-end scenarios with seeded randomness and byte-stable JSON reports.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog;
use crate::error::{Error, Result};
use crate::interval;
use crate::mixing;
use crate::presentation::ShiftPresentation;
use crate::pseudo_orbit::PseudoOrbit;
use crate::shadowing::{self, Method, SearchOptions, ShadowPair, VerifyOptions};
use crate::window::DyadicScale;

pub const SCENARIOS: &[&str] =
    &["interval", "two-loop", "four-vertex", "mixing-pair", "forward-pair", "qft-pair", "schedule-pair"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReproOptions {
    pub seed: u64,
    /// Random pseudo-orbits per construction scenario.
    pub trials: usize,
}

impl Default for ReproOptions {
    fn default() -> Self {
        Self { seed: 0, trials: 100 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub scenario: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(scenario: &str, seed: u64) -> Self {
        Report { scenario: scenario.to_string(), seed, passed: true, checks: Vec::new() }
    }

    fn check(&mut self, name: &str, passed: bool, detail: Value) {
        self.passed &= passed;
        self.checks.push(Check { name: name.to_string(), passed, detail });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check.
    pub fn to_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = format!(
            "scenario {} (seed {}): {}\n",
            self.scenario,
            self.seed,
            if self.passed { "PASS" } else { "FAIL" }
        );
        for c in &self.checks {
            let detail = match &c.detail {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!(
                "  {:<width$}  {}  {}\n",
                c.name,
                if c.passed { "pass" } else { "FAIL" },
                detail
            ));
        }
        out
    }
}

pub fn run(scenario: &str, opts: ReproOptions) -> Result<Report> {
    let mut report = Report::new(scenario, opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    match scenario {
        "interval" => interval_scenario(&mut report)?,
        "two-loop" => two_loop(&mut report)?,
        "four-vertex" => four_vertex(&mut report, &mut rng)?,
        "mixing-pair" => {
            let x = catalog::even_shift();
            trials(&mut report, &x, Method::Mixing, 2, opts.trials, |rng| {
                let switches = rng_switches(rng);
                shadowing::random_splice(&x, rng, switches, DyadicScale(16), 17, -200, 200)
            }, &mut rng)?
        }
        "forward-pair" => {
            let x = catalog::even_shift();
            trials(&mut report, &x, Method::MixingForward, 2, opts.trials, |rng| {
                let switches = rng_switches(rng);
                shadowing::random_splice(&x, rng, switches, DyadicScale(16), 17, 0, 200)
            }, &mut rng)?
        }
        "qft-pair" => {
            let h = catalog::four_vertex_graph();
            let mut n = 0usize;
            trials(&mut report, &h, Method::Qft, 5, opts.trials, |rng| {
                n += 1;
                if n.is_multiple_of(2) {
                    shadowing::four_vertex_crossing_splice(&h, rng, DyadicScale(24), 25, -200, 200)
                } else {
                    let switches = rng_switches(rng);
                    shadowing::random_splice(&h, rng, switches, DyadicScale(24), 25, -200, 200)
                }
            }, &mut rng)?
        }
        "schedule-pair" => {
            let x = catalog::even_shift();
            let delta = shadowing::required_delta(2, 3);
            trials(&mut report, &x, Method::Schedule, 2, opts.trials, |rng| {
                let switches = rng_switches(rng);
                shadowing::random_splice(&x, rng, switches, DyadicScale(delta), delta as usize + 1, 0, 200)
            }, &mut rng)?
        }
        other => return Err(Error::UnknownScenario(other.to_string())),
    }
    Ok(report)
}

/// Between one and four switches per pseudo-orbit.
fn rng_switches(rng: &mut ChaCha8Rng) -> usize {
    use rand::Rng;
    rng.random_range(1..=4)
}

fn interval_scenario(report: &mut Report) -> Result<()> {
    for delta in [0.5, 0.1, 0.01] {
        let xs = interval::ascending_pseudo_orbit(delta)?;
        let ok = xs.last() == Some(&1.0) && interval::is_interval_pseudo_orbit(&xs, delta);
        report.check(&format!("pseudo-orbit reaches 1 (delta {delta})"), ok, json!({ "steps": xs.len() - 1 }));
    }
    let cert = interval::neighborhood_failure_certificate(0.25, 1e-4)?;
    let ok = cert.margin > 1e-6 && cert.monotone;
    report.check("small sets near 0 stay below 1/2", ok, serde_json::to_value(&cert)?);
    let po = interval::ascending_pseudo_orbit(0.01)?;
    let pair = interval::numeric_shadow_search(&po, 0.25, 1e-3, 2, 1 << 32)?;
    report.check("two points shadow (epsilon 1/4)", pair.is_some(), json!({ "points": pair }));
    let single = interval::numeric_shadow_search(&po, 0.25, 1e-3, 1, 1 << 32)?;
    report.check("no single point shadows (epsilon 1/4)", single.is_none(), json!({ "point": single }));
    Ok(())
}

fn two_loop(report: &mut Report) -> Result<()> {
    let g = catalog::two_loop_graph();
    let witness = mixing::find_nonmixing_witness(&g, 3)?;
    let ok = witness.as_ref().is_some_and(|w| w.u.text == "1" && w.v.text == "2");
    report.check("no mixing number", ok, serde_json::to_value(&witness)?);

    let po = shadowing::two_loop_splice(&g, 4, 1, -6, 6)?;
    let opts = SearchOptions { max_members: 2, k: 1, halfwidth: 7, diameter: true, budget: 1 << 40 };
    let strict = shadowing::search_shadow_sets(&g, &po, opts)?;
    report.check("no 2-set of small diameter shadows", strict.found().is_none(), serde_json::to_value(&strict)?);
    let plain = shadowing::search_shadow_sets(&g, &po, SearchOptions { diameter: false, ..opts })?;
    report.check("some 2-set shadows", plain.found().is_some(), serde_json::to_value(&plain)?);

    let [a, b] = shadowing::two_loop_recolorings(&g, &po)?;
    let members = [a, b];
    let cert = shadowing::verify_shadow_set(
        &g,
        &po,
        &members,
        1,
        VerifyOptions { diameter: false, max_members: Some(2) },
    )?;
    report.check("recolored traces shadow", cert.certified(), serde_json::to_value(&cert)?);
    Ok(())
}

fn four_vertex(report: &mut Report, rng: &mut ChaCha8Rng) -> Result<()> {
    let h = catalog::four_vertex_graph();
    let pair = mixing::certify_nonmixing_pair(&h, &h.parse("3")?, &h.parse("0")?)?;
    report.check("3 is never followed by 0", pair.is_some(), serde_json::to_value(&pair)?);
    let qft = mixing::verify_qft_number(&h, 5, 6, 9)?;
    report.check("quasi-finite-type number 5 at bounds", qft.passed(), serde_json::to_value(&qft)?);

    let even = catalog::even_shift();
    let words = h.words_up_to(10);
    let mut bad = Vec::new();
    for w in &words {
        if !even.is_allowed(&catalog::even_projection(w)?) {
            bad.push(h.render(w));
        }
    }
    report.check(
        "symbolwise image lies in the even shift",
        bad.is_empty(),
        json!({ "words": words.len(), "max_len": 10, "bad": bad }),
    );

    let splice = shadowing::four_vertex_crossing_splice(&h, rng, DyadicScale(24), 25, -60, 60)?;
    let outcome = construct_and_verify(&h, Method::Qft, 5, &splice.po, 3);
    report.check("crossing pseudo-orbit shadowed", outcome.is_ok(), outcome_detail(&outcome));
    Ok(())
}

type Outcome = std::result::Result<ShadowPair, String>;

fn construct_and_verify(shift: &ShiftPresentation, method: Method, m: usize, po: &PseudoOrbit, k: u32) -> Outcome {
    let pair = shadowing::construct_pair(shift, method, m, po, k).map_err(|e| e.to_string())?;
    let cert = shadowing::verify_shadow_set(
        shift,
        po,
        &pair.points,
        k,
        VerifyOptions { diameter: true, max_members: Some(2) },
    )
    .map_err(|e| e.to_string())?;
    if !cert.certified() {
        return Err(format!("verification failed: {}", serde_json::to_string(&cert.verdict).unwrap_or_default()));
    }
    if method != Method::Schedule {
        let n = pair.params.n as i64;
        let x0 = po.entry(0).expect("index 0 present");
        let center = x0.slice(-n + 1, n - 1).map_err(|e| e.to_string())?;
        if pair.points.iter().any(|p| p.slice(-n + 1, n - 1).ok() != Some(center)) {
            return Err("points differ from x^0 on (-N, N)".into());
        }
    }
    Ok(pair)
}

fn outcome_detail(outcome: &Outcome) -> Value {
    match outcome {
        Ok(pair) => json!({
            "bridges": pair.bridges.len(),
            "replaced": pair.bridges.iter().filter(|b| b.replaced.as_ref().is_some_and(|w| w != &b.word)).count(),
            "horizon": pair.horizon,
        }),
        Err(e) => json!({ "error": e }),
    }
}

fn trials(
    report: &mut Report,
    shift: &ShiftPresentation,
    method: Method,
    m: usize,
    count: usize,
    mut generate: impl FnMut(&mut ChaCha8Rng) -> Result<shadowing::Splice>,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    let k = 3;
    let (mut verified, mut bridges, mut replaced, mut unallowed_traces) = (0, 0, 0, 0);
    let mut failures = Vec::new();
    for trial in 0..count {
        let splice = generate(rng)?;
        if !shift.is_allowed(&crate::pseudo_orbit::trace(&splice.po).word) {
            unallowed_traces += 1;
        }
        match construct_and_verify(shift, method, m, &splice.po, k) {
            Ok(pair) => {
                verified += 1;
                bridges += pair.bridges.len();
                replaced += pair.bridges.iter().filter(|b| b.replaced.as_ref().is_some_and(|w| w != &b.word)).count();
            }
            Err(e) => failures.push(json!({ "trial": trial, "error": e })),
        }
    }
    report.check(
        "constructed pairs shadow random pseudo-orbits",
        verified == count,
        json!({
            "trials": count,
            "verified": verified,
            "k": k,
            "m": m,
            "bridges": bridges,
            "replaced_overlaps": replaced,
            "traces_outside_language": unallowed_traces,
            "failures": failures,
        }),
    );
    Ok(())
}
