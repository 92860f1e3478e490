//! Diagram registry, seeded randomized checking, JSON reports and replay.
//!
//! Every registered check compares two composites exactly on random instances. A trial
//! is seeded from `(seed, id, trial)` alone, so a report is a function of its inputs and
//! any failure can be re-evaluated from the instance it serializes.

pub mod complexes;

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::duality::sheaves::{dp_diagram, dp_random_instance, DP_DIAGRAMS};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monoidal::StructuralContext;
use crate::signs::{default_assignment, EquationTable, SignAssignment, SignExpr, Symbol, WINDOW};
use crate::sites::diagrams::{random_instance, sites_diagram, SitesInstance, SitesInstanceJson, SitesSize, SITES_DIAGRAMS};
use crate::sites::Sites;
use complexes::{complex_diagram, ComplexInstance, ComplexInstanceJson, COMPLEX_DIAGRAMS};

/// Version of the report and summary JSON layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable giving the number of worker threads.
pub const WORKERS_ENV: &str = "DUALITIES_WORKERS";

/// Prefix of the ids of sign-table rows.
pub const TABLE_PREFIX: &str = "Table2.";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub p: u32,
    pub max_dim: usize,
    pub max_len: usize,
    pub max_set: usize,
    pub trials: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params { p: 3, max_dim: 3, max_len: 3, max_set: 3, trials: 25 }
    }
}

/// Where a registered check lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Complex,
    Sites,
    Duality,
    SignTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramSpec {
    pub id: String,
    pub family: Family,
    pub anchor: String,
}

/// All registered checks, in report order.
pub fn registry() -> Vec<DiagramSpec> {
    let spec = |id: &str, family, anchor: String| DiagramSpec { id: id.to_string(), family, anchor };
    let mut out: Vec<DiagramSpec> = COMPLEX_DIAGRAMS.iter().map(|d| spec(d.id, Family::Complex, d.about.to_string())).collect();
    out.extend(SITES_DIAGRAMS.iter().map(|d| spec(d.id, Family::Sites, format!("{} on {:?}-shaped maps", d.id, d.shape))));
    out.extend(DP_DIAGRAMS.iter().map(|d| spec(d.id, Family::Duality, format!("{} on {:?}-shaped maps", d.id, d.shape))));
    for eq in EquationTable::standard().rows {
        out.push(spec(&format!("{TABLE_PREFIX}{}", eq.id), Family::SignTable, format!("{eq} ({})", eq.reason)));
    }
    out
}

pub fn lookup(id: &str) -> Result<DiagramSpec> {
    registry().into_iter().find(|s| s.id == id).ok_or_else(|| Error::UnknownDiagram(id.to_string()))
}

/// The documented coverage map: every id the registry is required to contain.
pub const COVERAGE: &[&str] = &[
    "EQ1", "EQ1.suspended", "D4", "D5", "D6", "D7", "D8", "D9", "D10", "D11", "tp.anticommute", "pentagon", "hexagon1",
    "hexagon2", "symmetry", "square.s", "assoc.tp1", "assoc.tp2", "assoc.tp3", "adj.tensor", "ath.roundtrip", "closure",
    "P.DTK", "P.induced", "P.tensor", "I.compose", "inv.bid", "Happ0", "H'app0", "D12", "Happ1", "H'app1", "Rapp1", "R'app1",
    "G1app1", "G2app1", "F1app1", "F2app1", "F1app2", "F2app2", "Rapp2", "R'app2", "G1app2", "G2app2", "Happ4", "H'app4",
    "D18", "D19", "D20", "compAdj1", "compAdj2", "D22", "D23", "D24", "D25", "D26", "Happ3", "H'app3", "D27", "D28", "D29",
    "D30", "D31", "D32", "cocycle", "mate.fh", "mate.fg", "alt.q", "alt.qh", "alt.rr", "alt.sp", "adj.star", "adj.shriek",
    "adj.duality", "inv.q", "inv.eps", "P.pullback", "P.pushforward", "P.product", "M.ea", "M.eb", "M.eps", "M.fp", "M.q",
    "Table2.row1", "Table2.row2", "Table2.row3", "Table2.row4", "Table2.row5", "Table2.row6", "Table2.row7", "Table2.row8",
    "Table2.row9", "Table2.row10", "Table2.row11", "Table2.row12", "Table2.row13", "Table2.row14", "Table2.row15",
    "Table2.row16", "Table2.row17", "Table2.row18", "Table2.row19", "Table2.row20", "Table2.row21", "Table2.bid",
];

/// Registry ids compared with [`COVERAGE`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Audit {
    pub missing: Vec<String>,
    pub unlisted: Vec<String>,
    pub duplicates: Vec<String>,
}

impl Audit {
    pub fn is_clean(&self) -> bool {
        self.missing.is_empty() && self.unlisted.is_empty() && self.duplicates.is_empty()
    }
}

pub fn audit() -> Audit {
    let ids: Vec<String> = registry().into_iter().map(|s| s.id).collect();
    let mut duplicates: Vec<String> = ids.iter().enumerate().filter(|(n, id)| ids[..*n].contains(id)).map(|(_, id)| id.clone()).collect();
    duplicates.dedup();
    Audit {
        missing: COVERAGE.iter().filter(|c| !ids.iter().any(|i| i == *c)).map(|c| c.to_string()).collect(),
        unlisted: ids.iter().filter(|i| !COVERAGE.contains(&i.as_str())).cloned().collect(),
        duplicates,
    }
}

/// Upper bounds `(max_len, max_dim)` for checks whose composites grow too fast at the
/// default sizes: nested internal Homs and four-fold tensor products.
const SIZE_CAPS: &[(&str, usize, usize)] = &[
    ("Happ4", 2, 3),
    ("H'app4", 2, 2),
    ("D30", 2, 2),
    ("D31", 2, 2),
    ("D32", 2, 2),
    ("P.pullback", 3, 2),
    ("P.pushforward", 3, 2),
];

/// The instance size used for `id` under `params`.
pub fn effective_size(id: &str, params: &Params) -> SitesSize {
    let (len, dim) = SIZE_CAPS.iter().find(|c| c.0 == id).map_or((usize::MAX, usize::MAX), |c| (c.1, c.2));
    SitesSize { max_set: params.max_set, max_len: params.max_len.min(len), max_dim: params.max_dim.min(dim) }
}

/// Sign symbols overridden relative to the standard assignment.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corruption {
    /// Symbols whose global sign is negated.
    pub flips: Vec<Symbol>,
    /// Symbols replaced by a constant sign.
    pub constants: Vec<(Symbol, i8)>,
}

impl Corruption {
    pub fn none() -> Corruption {
        Corruption::default()
    }

    pub fn flip(s: Symbol) -> Corruption {
        Corruption { flips: vec![s], constants: vec![] }
    }

    pub fn is_empty(&self) -> bool {
        self.flips.is_empty() && self.constants.is_empty()
    }

    /// The standard assignment with this corruption applied.
    pub fn signs(&self) -> SignAssignment {
        self.apply(default_assignment(1, 1))
    }

    pub fn apply(&self, base: SignAssignment) -> SignAssignment {
        let mut s = base;
        for &(sym, v) in &self.constants {
            s = s.with(sym, SignExpr::constant(sym.arity(), v));
        }
        for &sym in &self.flips {
            s = s.flipped(sym);
        }
        s
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.flips.iter().map(|s| format!("-{s}")).collect();
        parts.extend(self.constants.iter().map(|(s, v)| format!("{s}={v:+}")));
        if parts.is_empty() {
            "standard".to_string()
        } else {
            parts.join(" ")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

/// A serialized failing instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Counterexample {
    Complexes(ComplexInstanceJson),
    Sites(SitesInstanceJson),
    Indices(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub trial: usize,
    /// Set when a construction failed instead of the two composites differing.
    pub error: Option<String>,
    pub counterexample: Counterexample,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema: u32,
    pub id: String,
    pub family: Family,
    pub seed: u64,
    pub params: Params,
    pub size: SitesSize,
    pub corruption: Corruption,
    pub verdict: Verdict,
    pub trials_run: usize,
    pub note: Option<String>,
    /// Summary of the failing instance, or of the last one checked.
    pub instance: String,
    pub failure: Option<Failure>,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub schema: u32,
    pub seed: u64,
    pub params: Params,
    pub corruption: Corruption,
    pub passed: usize,
    pub failed: usize,
    pub elapsed_ms: f64,
    pub reports: Vec<CheckReport>,
}

impl Summary {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn failing(&self) -> Vec<&str> {
        self.reports.iter().filter(|r| r.verdict == Verdict::Fail).map(|r| r.id.as_str()).collect()
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// The RNG seed of one trial.
pub fn trial_seed(seed: u64, id: &str, trial: usize) -> u64 {
    splitmix64(splitmix64(seed ^ fnv1a(id)) ^ trial as u64)
}

/// The structures every check needs, under one sign assignment.
struct Checker {
    ctx: StructuralContext,
    sites: Sites,
    signs: SignAssignment,
}

impl Checker {
    fn new(corruption: &Corruption, p: u32) -> Result<Checker> {
        let signs = corruption.signs();
        let ctx = StructuralContext::unchecked(signs.clone(), PrimeField::new(p)?);
        Ok(Checker { sites: Sites::new(ctx.clone()), ctx, signs })
    }

    /// Generates the instance for `trial` and checks it.
    fn trial(&self, spec: &DiagramSpec, seed: u64, size: SitesSize, trial: usize) -> Result<Trial> {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, &spec.id, trial));
        let (summary, instance) = match spec.family {
            Family::Complex => {
                let d = complex_diagram(&spec.id).ok_or_else(|| Error::UnknownDiagram(spec.id.clone()))?;
                let inst = self.ctx.random_complex_instance(&mut rng, d, size.max_len, size.max_dim)?;
                (inst.summary(), Counterexample::Complexes(inst.to_json()))
            }
            Family::Sites => {
                let d = sites_diagram(&spec.id).ok_or_else(|| Error::UnknownDiagram(spec.id.clone()))?;
                let inst = random_instance(&mut rng, d, self.ctx.p(), size)?;
                (inst.summary(), Counterexample::Sites(inst.to_json()))
            }
            Family::Duality => {
                let d = dp_diagram(&spec.id).ok_or_else(|| Error::UnknownDiagram(spec.id.clone()))?;
                let inst = dp_random_instance(&mut rng, d, self.ctx.p(), size)?;
                (inst.summary(), Counterexample::Sites(inst.to_json()))
            }
            Family::SignTable => {
                let eq = table_row(&spec.id)?;
                let bad = eq.first_failure(&self.signs, WINDOW);
                let summary = format!("indices in {}..={}", WINDOW.start(), WINDOW.end());
                let pass = bad.is_none();
                let instance = Counterexample::Indices(bad.unwrap_or_default());
                return Ok(Trial { pass, error: None, summary, instance });
            }
        };
        let (pass, error) = scored(self.evaluate(&spec.id, &instance))?;
        Ok(Trial { pass, error, summary, instance })
    }

    /// Re-checks `id` on a serialized instance.
    fn evaluate(&self, id: &str, instance: &Counterexample) -> Result<bool> {
        match instance {
            Counterexample::Complexes(j) => self.ctx.check_complex_diagram(id, &ComplexInstance::from_json(j)?),
            Counterexample::Sites(j) => {
                let inst = SitesInstance::from_json(j)?;
                if dp_diagram(id).is_some() {
                    self.sites.check_dp_diagram(id, &inst)
                } else {
                    self.sites.check_diagram(id, &inst)
                }
            }
            Counterexample::Indices(x) => {
                let eq = table_row(id)?;
                if x.is_empty() {
                    return Ok(eq.first_failure(&self.signs, WINDOW).is_none());
                }
                let mut padded = [0i64; 4];
                for (slot, v) in padded.iter_mut().zip(x) {
                    *slot = *v;
                }
                Ok(eq.residual(&self.signs, &padded) == 1)
            }
        }
    }
}

struct Trial {
    pass: bool,
    error: Option<String>,
    summary: String,
    instance: Counterexample,
}

/// Unknown ids stay errors; any other construction failure counts as a failed check.
fn scored(r: Result<bool>) -> Result<(bool, Option<String>)> {
    match r {
        Ok(b) => Ok((b, None)),
        Err(e @ Error::UnknownDiagram(_)) => Err(e),
        Err(e) => Ok((false, Some(e.to_string()))),
    }
}

fn table_row(id: &str) -> Result<crate::signs::Equation> {
    let row = id.strip_prefix(TABLE_PREFIX).ok_or_else(|| Error::UnknownDiagram(id.to_string()))?;
    EquationTable::standard().row(row).cloned().ok_or_else(|| Error::UnknownDiagram(id.to_string()))
}

fn validate(params: &Params) -> Result<()> {
    PrimeField::new(params.p)?;
    if params.max_dim == 0 || params.max_len == 0 || params.max_set == 0 {
        return Err(Error::Shape("instance sizes must be positive".into()));
    }
    Ok(())
}

/// A thread pool sized by [`WORKERS_ENV`] when set, else by rayon's default.
fn pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var(WORKERS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|&n| n > 0) {
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Error::Shape(format!("worker pool: {e}")))
}

fn trials_for(spec: &DiagramSpec, params: &Params) -> usize {
    match spec.family {
        Family::SignTable => params.trials.min(1),
        _ => params.trials,
    }
}

type TrialResult = (usize, usize, Result<Trial>, f64);

fn run_specs(specs: &[DiagramSpec], seed: u64, params: &Params, corruption: &Corruption) -> Result<Vec<CheckReport>> {
    validate(params)?;
    let jobs: Vec<(usize, usize)> =
        specs.iter().enumerate().flat_map(|(n, s)| (0..trials_for(s, params)).map(move |t| (n, t))).collect();
    let results: Vec<TrialResult> = pool()?.install(|| {
        jobs.par_iter()
            .map_init(
                || Checker::new(corruption, params.p),
                |checker, &(n, t)| {
                    let start = Instant::now();
                    let spec = &specs[n];
                    let r = match checker {
                        Ok(c) => c.trial(spec, seed, effective_size(&spec.id, params), t),
                        Err(e) => Err(e.clone()),
                    };
                    (n, t, r, start.elapsed().as_secs_f64() * 1e3)
                },
            )
            .collect()
    });
    let mut reports: Vec<CheckReport> = specs
        .iter()
        .map(|s| CheckReport {
            schema: SCHEMA_VERSION,
            id: s.id.clone(),
            family: s.family,
            seed,
            params: *params,
            size: effective_size(&s.id, params),
            corruption: corruption.clone(),
            verdict: Verdict::Pass,
            trials_run: 0,
            note: None,
            instance: String::new(),
            failure: None,
            elapsed_ms: 0.0,
        })
        .collect();
    for (n, t, r, ms) in results {
        let rep = &mut reports[n];
        let trial = r?;
        rep.trials_run += 1;
        rep.elapsed_ms += ms;
        if rep.failure.is_some() {
            continue;
        }
        rep.instance = trial.summary;
        if !trial.pass {
            rep.verdict = Verdict::Fail;
            rep.failure = Some(Failure { trial: t, error: trial.error, counterexample: trial.instance });
        }
    }
    for rep in &mut reports {
        if rep.trials_run == 0 {
            rep.note = Some("no trials".to_string());
        }
    }
    Ok(reports)
}

/// Checks `id` on `params.trials` seeded instances under the standard signs.
pub fn run_diagram(id: &str, seed: u64, params: &Params) -> Result<CheckReport> {
    run_diagram_with(id, seed, params, &Corruption::none())
}

pub fn run_diagram_with(id: &str, seed: u64, params: &Params, corruption: &Corruption) -> Result<CheckReport> {
    let spec = lookup(id)?;
    Ok(run_specs(&[spec], seed, params, corruption)?.remove(0))
}

/// Runs every registered check.
pub fn run_all(seed: u64, params: &Params) -> Result<Summary> {
    run_all_with(seed, params, &Corruption::none())
}

pub fn run_all_with(seed: u64, params: &Params, corruption: &Corruption) -> Result<Summary> {
    run_selected(&registry(), seed, params, corruption)
}

/// Runs the given registry entries and summarizes them in the given order.
pub fn run_selected(specs: &[DiagramSpec], seed: u64, params: &Params, corruption: &Corruption) -> Result<Summary> {
    let start = Instant::now();
    let reports = run_specs(specs, seed, params, corruption)?;
    let failed = reports.iter().filter(|r| r.verdict == Verdict::Fail).count();
    Ok(Summary {
        schema: SCHEMA_VERSION,
        seed,
        params: *params,
        corruption: corruption.clone(),
        passed: reports.len() - failed,
        failed,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        reports,
    })
}

/// Outcome of replaying a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Replay {
    pub id: String,
    pub verdict: Verdict,
    pub reproduced: bool,
    pub error: Option<String>,
}

/// Re-evaluates a report: a failure on its serialized instance, a pass by re-running its seed.
pub fn replay(report: &CheckReport) -> Result<Replay> {
    if report.schema != SCHEMA_VERSION {
        return Err(Error::Parse(format!("report schema {} (expected {SCHEMA_VERSION})", report.schema)));
    }
    match &report.failure {
        Some(f) => {
            lookup(&report.id)?;
            let checker = Checker::new(&report.corruption, report.params.p)?;
            let (pass, error) = scored(checker.evaluate(&report.id, &f.counterexample))?;
            let verdict = if pass { Verdict::Pass } else { Verdict::Fail };
            Ok(Replay { id: report.id.clone(), verdict, reproduced: verdict == report.verdict, error })
        }
        None => {
            let again = run_diagram_with(&report.id, report.seed, &report.params, &report.corruption)?;
            Ok(Replay { id: report.id.clone(), verdict: again.verdict, reproduced: again.verdict == report.verdict, error: None })
        }
    }
}

#[cfg(test)]
mod tests;
