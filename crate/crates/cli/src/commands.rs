use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use doxatest::axioms::{axiom_holds, AxiomId};
use doxatest::changegen::{run_roundtrips, RoundtripConfig, RoundtripKind, RoundtripSpec};
use doxatest::correspondence::{
    census, enumerate_frames, parse_pairs, CorrespondConfig, FrameGenSpec, GenMode, MAX_EXHAUSTIVE_STATES,
};
use doxatest::frames::{CompletionRule, FrameFile, Loaded, Model};
use doxatest::logic::{is_satisfiable, parse_formula};
use doxatest::properties::{
    check_class, check_property, probe_def12_gap, CheckConfig, FrameClass, PropertyId, DEFAULT_MAX_STATES,
    DEFAULT_STEP_BUDGET,
};

use crate::{
    CheckArgs, Cli, Command, CorrespondArgs, InputError, RiArgs, RoundtripArgs, EXIT_PASS, EXIT_VIOLATION,
};

type Outcome = Result<(Value, u8), InputError>;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn status(pass: bool) -> u8 {
    if pass {
        EXIT_PASS
    } else {
        EXIT_VIOLATION
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Loads a frame or model file, filling missing selections when asked.
fn load(path: &Path, complete: Option<&str>) -> Result<Loaded, InputError> {
    let file = FrameFile::from_json(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let loaded = file.load()?;
    let Some(rule) = complete else {
        return Ok(loaded);
    };
    let rule: CompletionRule = rule.parse()?;
    Ok(match loaded {
        Loaded::Frame(f) => Loaded::Frame(f.complete(rule)),
        Loaded::Model(m) => Loaded::Model(m.with_frame(m.frame().complete(rule))?),
    })
}

fn as_model(loaded: Loaded) -> Result<Model, InputError> {
    Ok(match loaded {
        Loaded::Model(m) => m,
        Loaded::Frame(f) => Model::new(f, BTreeMap::new())?,
    })
}

fn check_config(cli: &Cli, default: usize) -> CheckConfig {
    CheckConfig {
        max_states: cli.global.max_states.map_or(default, |m| m as usize),
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { path } => validate(path),
        Command::Check(args) => check(cli, args),
        Command::Correspond(args) => correspond(cli, args),
        Command::Roundtrip(args) => roundtrip(cli, args),
        Command::Ri(args) => ri(args),
    }
}

fn validate(path: &Path) -> Outcome {
    let loaded = load(path, None)?;
    let frame = loaded.frame();
    let report = frame.validate();
    let mut out = json!({
        "file": path.display().to_string(),
        "states": frame.len(),
        "clean": report.is_clean(),
    });
    if let Loaded::Model(m) = &loaded {
        out["atoms"] = to_value(&m.atoms().collect::<Vec<_>>());
    }
    out["violations"] = to_value(&report.violations);
    Ok((out, status(report.is_clean())))
}

fn check(cli: &Cli, args: &CheckArgs) -> Outcome {
    let classes = args
        .classes
        .iter()
        .map(|c| c.parse::<FrameClass>())
        .collect::<Result<Vec<_>, _>>()?;
    let mut properties = args
        .properties
        .iter()
        .map(|p| p.parse::<PropertyId>())
        .collect::<Result<Vec<_>, _>>()?;
    let axioms = args
        .axioms
        .iter()
        .map(|a| a.parse::<AxiomId>())
        .collect::<Result<Vec<_>, _>>()?;
    if classes.is_empty() && properties.is_empty() && axioms.is_empty() {
        properties = PropertyId::ALL.to_vec();
    }
    let cfg = check_config(cli, DEFAULT_MAX_STATES);
    let model = as_model(load(&args.path, args.complete.as_deref())?)?;
    let frame = model.frame();
    let states = match &args.state {
        Some(name) => vec![frame.index_of(name)?],
        None => (0..frame.len()).collect(),
    };
    let mut pass = true;
    let mut out = serde_json::Map::new();
    if !classes.is_empty() {
        let mut reports = Vec::new();
        for c in classes {
            let v = check_class(frame, c, &cfg)?;
            pass &= v.holds();
            reports.push(v.report(frame));
        }
        out.insert("classes".into(), to_value(&reports));
    }
    if !properties.is_empty() {
        let mut reports = Vec::new();
        for p in properties {
            let v = check_property(frame, p, &cfg)?;
            pass &= v.holds();
            reports.push(v.report(frame));
        }
        out.insert("properties".into(), to_value(&reports));
    }
    if !axioms.is_empty() {
        let mut reports = Vec::new();
        for a in axioms {
            for &s in &states {
                let v = axiom_holds(&model, s, a, &cfg)?;
                pass &= !v.is_violation();
                reports.push(v.report(frame, a, s));
            }
        }
        out.insert("axioms".into(), to_value(&reports));
    }
    out.insert("holds".into(), Value::Bool(pass));
    Ok((Value::Object(out), status(pass)))
}

fn correspond(cli: &Cli, args: &CorrespondArgs) -> Outcome {
    let pairs = parse_pairs(&args.pairs)?;
    let cfg = CorrespondConfig {
        atom_budget: args.atoms,
        seed: args.seed,
        samples: args.samples,
        check: check_config(cli, MAX_EXHAUSTIVE_STATES),
    };
    let frames = match (&args.path, args.enumerate) {
        (Some(path), _) => vec![load(path, args.complete.as_deref())?.frame().clone()],
        (None, Some(n)) => {
            let spec = FrameGenSpec {
                states: n,
                seed: args.seed,
                mode: match args.random {
                    Some(count) => GenMode::Random { count },
                    None => GenMode::Exhaustive,
                },
                enforce_base: true,
                canonicalize: args.canonical,
            };
            enumerate_frames(&spec)?.collect()
        }
        (None, None) => return Err(InputError("give a frame file or --enumerate <states>".into())),
    };
    let mut report = census(frames, &pairs, &cfg, false)?;
    if let Some(max) = args.gap {
        report.gap = Some(probe_def12_gap(max, DEFAULT_STEP_BUDGET)?);
    }
    let pass = report.agrees();
    Ok((to_value(&report), status(pass)))
}

fn roundtrip(cli: &Cli, args: &RoundtripArgs) -> Outcome {
    let kind: RoundtripKind = args.kind.parse()?;
    let spec = RoundtripSpec {
        atoms: args.atoms,
        kind,
        seed: args.seed,
        trials: args.trials,
        config: RoundtripConfig {
            probes: args.probes,
            seed: args.seed,
            check: check_config(cli, DEFAULT_MAX_STATES),
        },
    };
    let summary = run_roundtrips(&spec)?;
    Ok((to_value(&summary), status(summary.all_passed())))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ProbeReport {
    formula: String,
    member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    separating_state: Option<String>,
}

fn ri(args: &RiArgs) -> Outcome {
    let model = as_model(load(&args.path, args.complete.as_deref())?)?;
    let frame = model.frame();
    let s = frame.index_of(&args.state)?;
    let phi = parse_formula(&args.formula)?;
    let probes = args
        .probes
        .iter()
        .map(|p| parse_formula(p))
        .collect::<Result<Vec<_>, _>>()?;
    let e = model.truth_set(&phi)?;
    let mut out = json!({
        "state": frame.name(s),
        "formula": phi.to_string(),
        "truthSet": frame.event_names(e),
        "belief": frame.event_names(frame.belief(s)),
    });
    let mut reports = Vec::new();
    if !e.is_empty() {
        let changed = model.ri_support(s, e)?;
        out["branch"] = json!("ramsey");
        out["changed"] = to_value(&frame.event_names(changed.support));
        for psi in &probes {
            let member = changed.contains(&model, psi)?;
            let sep = changed.separating_state(&model, psi)?;
            reports.push(ProbeReport {
                formula: psi.to_string(),
                member,
                separating_state: sep.map(|x| frame.name(x).to_string()),
            });
        }
    } else {
        let consistent = is_satisfiable(&phi, doxatest::logic::DEFAULT_MAX_ATOMS)?;
        if consistent {
            out["branch"] = json!("consistent-empty");
            out["note"] = json!("formula is true at no state; the change is Cn of the formula, so a probe is a member iff the formula entails it");
        } else {
            out["branch"] = json!("contradiction");
            out["note"] = json!("formula is a contradiction; the change is the set of all formulas");
        }
        for psi in &probes {
            reports.push(ProbeReport {
                formula: psi.to_string(),
                member: model.extended_member(s, &phi, psi)?,
                separating_state: None,
            });
        }
    }
    out["probes"] = to_value(&reports);
    Ok((out, EXIT_PASS))
}
