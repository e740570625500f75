use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::axioms::{audit_km8, axiom_holds, AxiomId, AxiomVerdict};
use crate::error::{Error, Result};
use crate::event::{nonempty_events, Event};
use crate::frames::Model;
use crate::logic::{cn_member, is_satisfiable, Formula};
use crate::properties::{check_class, CheckConfig, ClassReport, FrameClass};

use super::audit::{audit_function, AuditJson, Suite};
use super::canonical::{build_canonical_model, random_formula};
use super::order::{random_family, random_ranks, PreOrder};
use super::table::{gen_revision, gen_update, ChangeFunctionTable};
use super::world::WorldContext;

/// Which generator feeds the round trip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RoundtripKind {
    /// Partial per-world orders.
    Update,
    /// Total per-world orders.
    StrongUpdate,
    /// One faithful total order.
    Revision,
}

impl RoundtripKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RoundtripKind::Update => "update",
            RoundtripKind::StrongUpdate => "strong-update",
            RoundtripKind::Revision => "revision",
        }
    }

    pub fn class(self) -> FrameClass {
        match self {
            RoundtripKind::Update => FrameClass::Update,
            RoundtripKind::StrongUpdate => FrameClass::StrongUpdate,
            RoundtripKind::Revision => FrameClass::RevisionStrict,
        }
    }

    pub fn suite(self) -> Suite {
        match self {
            RoundtripKind::Update => Suite::Km,
            RoundtripKind::StrongUpdate => Suite::KmStrong,
            RoundtripKind::Revision => Suite::Agm,
        }
    }
}

impl fmt::Display for RoundtripKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RoundtripKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "update" => Ok(RoundtripKind::Update),
            "strong-update" => Ok(RoundtripKind::StrongUpdate),
            "revision" => Ok(RoundtripKind::Revision),
            _ => Err(Error::UnknownSelector(s.to_string())),
        }
    }
}

impl Serialize for RoundtripKind {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(self.as_str())
    }
}

pub const DEFAULT_PROBES: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoundtripConfig {
    /// Random probe formulas per extension check.
    pub probes: usize,
    pub seed: u64,
    pub check: CheckConfig,
}

impl Default for RoundtripConfig {
    fn default() -> Self {
        RoundtripConfig {
            probes: DEFAULT_PROBES,
            seed: 0,
            check: CheckConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub state: String,
    pub event: Vec<String>,
    pub expected: Vec<String>,
    pub got: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecoveryLeg {
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeFailure {
    pub phi: String,
    pub psi: String,
    pub expected: bool,
    pub got: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtensionLeg {
    /// Probes against a contradictory input.
    pub contradiction_checks: usize,
    /// Probes against a consistent input true nowhere in the model.
    pub consistent_checks: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<ProbeFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RoundtripReport {
    pub passed: bool,
    pub class: ClassReport,
    pub recovery: RecoveryLeg,
    pub extension: ExtensionLeg,
    pub audit: AuditJson,
    /// Postulates where the table audit and the model check disagree.
    pub audit_disagreements: Vec<AxiomId>,
    pub km8_holds: bool,
}

fn fresh_atom(atoms: &[String]) -> String {
    (0..)
        .map(|i| if i == 0 { "z".to_string() } else { format!("z{i}") })
        .find(|a| !atoms.contains(a))
        .expect("some name is free")
}

fn recovery(model: &Model, table: &ChangeFunctionTable) -> Result<RecoveryLeg> {
    let ctx = table.context();
    let mut leg = RecoveryLeg {
        checked: 0,
        mismatch: None,
    };
    for e in nonempty_events(ctx.worlds()) {
        let expected = table.value(e)?;
        for s in 0..model.frame().len() {
            leg.checked += 1;
            let got = model.ri_support(s, e)?.support;
            if got != expected {
                leg.mismatch = Some(Mismatch {
                    state: model.frame().name(s).to_string(),
                    event: ctx.labels(e),
                    expected: ctx.labels(expected),
                    got: ctx.labels(got),
                });
                return Ok(leg);
            }
        }
    }
    Ok(leg)
}

fn extension(model: &Model, table: &ChangeFunctionTable, cfg: &RoundtripConfig) -> Result<ExtensionLeg> {
    let atoms = table.context().atoms().to_vec();
    let z = fresh_atom(&atoms);
    let model = model.with_atom(&z, Event::EMPTY)?;
    let mut probe_atoms = atoms.clone();
    probe_atoms.push(z.clone());
    let bound = probe_atoms.len();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut leg = ExtensionLeg {
        contradiction_checks: 0,
        consistent_checks: 0,
        failures: 0,
        first_failure: None,
    };
    let record = |leg: &mut ExtensionLeg, phi: &Formula, psi: &Formula, expected: bool, got: bool| {
        if expected != got {
            leg.failures += 1;
            leg.first_failure.get_or_insert(ProbeFailure {
                phi: phi.to_string(),
                psi: psi.to_string(),
                expected,
                got,
            });
        }
    };
    let a = Formula::atom(atoms.first().unwrap_or(&z).clone());
    let contradiction = Formula::and(a.clone(), Formula::not(a));
    for _ in 0..cfg.probes {
        let psi = random_formula(&probe_atoms, 3, &mut rng);
        for s in 0..model.frame().len() {
            leg.contradiction_checks += 1;
            let got = model.extended_member(s, &contradiction, &psi)?;
            record(&mut leg, &contradiction, &psi, true, got);
        }
        let phi = Formula::and(Formula::atom(z.clone()), random_formula(&atoms, 2, &mut rng));
        if is_satisfiable(&phi, bound)? {
            let expected = cn_member(std::slice::from_ref(&phi), &psi, bound)?;
            for s in 0..model.frame().len() {
                leg.consistent_checks += 1;
                let got = model.extended_member(s, &phi, &psi)?;
                record(&mut leg, &phi, &psi, expected, got);
            }
        }
    }
    Ok(leg)
}

/// Checks a canonical model against the table it was built from: frame
/// class, recovery of every table entry at every state, the extension to
/// inputs with empty truth sets, the postulate audit and its agreement
/// with the model-level check, and the world-wise intersection rule.
pub fn roundtrip_verify(
    model: &Model,
    table: &ChangeFunctionTable,
    kind: RoundtripKind,
    cfg: &RoundtripConfig,
) -> Result<RoundtripReport> {
    let class = check_class(model.frame(), kind.class(), &cfg.check)?.report(model.frame());
    let recovery = recovery(model, table)?;
    let extension = extension(model, table, cfg)?;
    let audit = audit_function(table, kind.suite())?;
    let s = table.k().min_index().expect("K is nonempty");
    let mut audit_disagreements = Vec::new();
    for &(axiom, v) in &audit.results {
        let m = axiom_holds(model, s, axiom, &cfg.check)?;
        if v == AxiomVerdict::NotApplicable || m == AxiomVerdict::NotApplicable {
            continue;
        }
        if v.is_violation() != m.is_violation() {
            audit_disagreements.push(axiom);
        }
    }
    let km8_holds = audit_km8(model, s, &cfg.check)?.holds();
    let audit = audit.report(table);
    let passed = class.holds
        && recovery.mismatch.is_none()
        && extension.failures == 0
        && audit.holds
        && audit_disagreements.is_empty()
        && km8_holds;
    Ok(RoundtripReport {
        passed,
        class,
        recovery,
        extension,
        audit,
        audit_disagreements,
        km8_holds,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoundtripSpec {
    pub atoms: usize,
    pub kind: RoundtripKind,
    pub seed: u64,
    pub trials: usize,
    pub config: RoundtripConfig,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialFailure {
    pub trial: usize,
    #[serde(rename = "K")]
    pub k: Vec<String>,
    pub report: RoundtripReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundtripSummary {
    pub atoms: usize,
    pub kind: RoundtripKind,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failures: Vec<TrialFailure>,
}

impl RoundtripSummary {
    pub fn all_passed(&self) -> bool {
        self.passed == self.trials
    }
}

/// One seeded trial: a random `K`, a generated table, and its canonical model.
pub fn generate_trial(ctx: &WorldContext, kind: RoundtripKind, seed: u64, trial: usize) -> Result<ChangeFunctionTable> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let n = ctx.worlds();
    let k = loop {
        let k = Event::from_bits(rng.gen_range(0..=ctx.all().bits()));
        if !k.is_empty() {
            break k;
        }
    };
    match kind {
        RoundtripKind::Update => gen_update(ctx, &random_family(n, false, &mut rng), k),
        RoundtripKind::StrongUpdate => gen_update(ctx, &random_family(n, true, &mut rng), k),
        RoundtripKind::Revision => gen_revision(ctx, &PreOrder::from_ranks(&random_ranks(n, k, &mut rng)), k),
    }
}

pub fn run_roundtrips(spec: &RoundtripSpec) -> Result<RoundtripSummary> {
    let ctx = WorldContext::standard(spec.atoms)?;
    spec.config.check.ensure_count(ctx.worlds())?;
    let results = (0..spec.trials)
        .into_par_iter()
        .map(|trial| -> Result<(usize, ChangeFunctionTable, RoundtripReport)> {
            let table = generate_trial(&ctx, spec.kind, spec.seed, trial)?;
            let model = build_canonical_model(&table)?;
            let cfg = RoundtripConfig {
                seed: spec.seed ^ (trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15),
                ..spec.config
            };
            let report = roundtrip_verify(&model, &table, spec.kind, &cfg)?;
            Ok((trial, table, report))
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = results.iter().filter(|(_, _, r)| r.passed).count();
    let failures = results
        .into_iter()
        .filter(|(_, _, r)| !r.passed)
        .map(|(trial, table, report)| TrialFailure {
            trial,
            k: ctx.labels(table.k()),
            report,
        })
        .collect();
    Ok(RoundtripSummary {
        atoms: spec.atoms,
        kind: spec.kind,
        seed: spec.seed,
        trials: spec.trials,
        passed,
        failures,
    })
}
