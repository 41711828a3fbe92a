use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use povm_order::construct::{
    binary_epsilon_mix, build_n_lambda, paper_example, postprocess, separation_parameters,
};
use povm_order::order::StochasticMap;
use povm_order::povm::io::{PovmFile, StateFile};
use povm_order::{
    classify_pair, observational_entropy, relative_entropy, validate as validate_povm,
    DensityMatrix, ExampleName, ExtendedReal, HermitianOperator, Povm,
};
use serde::Serialize;
use serde_json::json;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::render;
use crate::ConstructKind;

pub struct Outcome {
    pub output: String,
    pub success: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            output,
            success: true,
        }
    }
}

fn to_json<S: Serialize>(value: &S) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serialization cannot fail");
    s.push('\n');
    s
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_povm(path: &Path, config: &RunConfig) -> CliResult<Povm> {
    Povm::from_json(&read(path)?, &config.tolerances).map_err(|source| CliError::Load {
        path: path.to_path_buf(),
        source,
    })
}

fn load_valid_povm(path: &Path, config: &RunConfig) -> CliResult<Povm> {
    let povm = load_povm(path, config)?;
    let report = validate_povm(&povm, &config.tolerances);
    if !report.is_valid() {
        return Err(CliError::Load {
            path: path.to_path_buf(),
            source: povm_order::Error::InvalidPovm(report.to_string()),
        });
    }
    Ok(povm)
}

fn load_state(path: &Path, config: &RunConfig) -> CliResult<DensityMatrix> {
    DensityMatrix::from_json(&read(path)?, &config.tolerances).map_err(|source| CliError::Load {
        path: path.to_path_buf(),
        source,
    })
}

pub fn validate(file: &Path, config: &RunConfig) -> CliResult<Outcome> {
    let povm = load_povm(file, config)?;
    let report = validate_povm(&povm, &config.tolerances);
    let output = if config.json {
        to_json(&json!({
            "config": config,
            "file": file,
            "dim": povm.dim(),
            "outcomes": povm.len(),
            "valid": report.is_valid(),
            "violations": report.violations,
        }))
    } else if report.is_valid() {
        format!("valid: {} outcomes, d = {}\n", povm.len(), povm.dim())
    } else {
        let mut s = format!("invalid: {} violation(s)\n", report.violations.len());
        for v in &report.violations {
            let _ = writeln!(s, "  - {v}");
        }
        s
    };
    Ok(Outcome {
        output,
        success: report.is_valid(),
    })
}

pub fn entropy(
    povm: &Path,
    state: &Path,
    sigma: Option<&Path>,
    config: &RunConfig,
) -> CliResult<Outcome> {
    let m = load_valid_povm(povm, config)?;
    let rho = load_state(state, config)?;
    let cfg = config.entropy();
    let (quantity, value) = match sigma {
        None => (
            "observational-entropy",
            ExtendedReal::Finite(observational_entropy(&m, &rho, &cfg, &config.tolerances)?),
        ),
        Some(path) => {
            let sigma = load_state(path, config)?;
            (
                "relative-entropy",
                relative_entropy(&m, &rho, &sigma, &cfg, &config.tolerances)?,
            )
        }
    };
    let output = if config.json {
        to_json(&json!({
            "config": config,
            "quantity": quantity,
            "value": value,
            "unit": config.unit(),
        }))
    } else {
        format!("{}\n", render::value(value, config.unit()))
    };
    Ok(Outcome::ok(output))
}

pub fn classify(n: &Path, m: &Path, config: &RunConfig) -> CliResult<Outcome> {
    let n = load_valid_povm(n, config)?;
    let m = load_valid_povm(m, config)?;
    let c = classify_pair(
        &n,
        &m,
        &config.budget,
        &config.entropy(),
        &config.tolerances,
    )?;
    let output = if config.json {
        to_json(&json!({ "config": config, "classification": c }))
    } else {
        render::classification(&c, config.unit())
    };
    Ok(Outcome::ok(output))
}

/// Writes a POVM to `out`, or returns it as the command output.
fn emit_povm(povm: &Povm, out: Option<&Path>, config: &RunConfig) -> CliResult<String> {
    match out {
        Some(path) => {
            write(path, &povm.to_json())?;
            Ok(if config.json {
                to_json(&json!({ "config": config, "written": [path] }))
            } else {
                format!(
                    "wrote {} ({} outcomes, d = {})\n",
                    path.display(),
                    povm.len(),
                    povm.dim()
                )
            })
        }
        None if config.json => Ok(to_json(
            &json!({ "config": config, "povm": povm.to_file() }),
        )),
        None => Ok(format!("{}\n", povm.to_json())),
    }
}

fn create_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })
}

#[derive(Serialize)]
struct NamedPovm<'a> {
    name: &'a str,
    povm: PovmFile,
}

#[derive(Serialize)]
struct NamedState<'a> {
    name: &'a str,
    state: StateFile,
}

pub fn construct(kind: ConstructKind, config: &RunConfig) -> CliResult<Outcome> {
    let tol = &config.tolerances;
    let output = match kind {
        ConstructKind::Postprocess { povm, map, out } => {
            let m = load_valid_povm(&povm, config)?;
            let rows: Vec<Vec<f64>> =
                serde_json::from_str(&read(&map)?).map_err(|e| CliError::Load {
                    path: map.clone(),
                    source: e.into(),
                })?;
            let lam = StochasticMap::from_rows(&rows, tol)?;
            emit_povm(&postprocess(&m, &lam)?, out.as_deref(), config)?
        }
        ConstructKind::NLambda { povm, lambda, out } => {
            let n = load_valid_povm(&povm, config)?;
            emit_povm(&build_n_lambda(&n, lambda)?, out.as_deref(), config)?
        }
        ConstructKind::EpsMix { eps, povm, out_dir } => {
            let (a, b) = match povm {
                Some(path) => {
                    let p = load_valid_povm(&path, config)?;
                    if p.len() != 2 {
                        return Err(povm_order::Error::OutOfRange(format!(
                            "eps-mix needs a two-outcome POVM, {} has {}",
                            path.display(),
                            p.len()
                        ))
                        .into());
                    }
                    (p.elements()[0].clone(), p.elements()[1].clone())
                }
                None => (
                    HermitianOperator::basis_projector(2, 0),
                    HermitianOperator::basis_projector(2, 1),
                ),
            };
            let pair = binary_epsilon_mix(&a, &b, eps, tol)?;
            let params = separation_parameters(&pair.n, &pair.m, tol)?;
            create_dir(&out_dir)?;
            let written = [out_dir.join("N.json"), out_dir.join("M.json")];
            write(&written[0], &pair.n.to_json())?;
            write(&written[1], &pair.m.to_json())?;
            if config.json {
                to_json(&json!({
                    "config": config,
                    "written": written,
                    "pair": pair,
                    "separation": params,
                }))
            } else {
                let mut s = String::new();
                for w in &written {
                    let _ = writeln!(s, "wrote {}", w.display());
                }
                s.push_str(&render::construction(&pair, &params));
                s
            }
        }
        ConstructKind::Example { name, out_dir } => {
            let name: ExampleName = name.parse()?;
            let bundle = paper_example::<f64>(name);
            match out_dir {
                Some(dir) => {
                    create_dir(&dir)?;
                    let mut written: Vec<PathBuf> = Vec::new();
                    for (label, p) in &bundle.povms {
                        let path = dir.join(format!("{name}_{label}.json"));
                        write(&path, &p.to_json())?;
                        written.push(path);
                    }
                    for (label, s) in &bundle.states {
                        let path = dir.join(format!("{name}_{label}.json"));
                        write(&path, &s.to_json())?;
                        written.push(path);
                    }
                    if config.json {
                        to_json(&json!({ "config": config, "written": written }))
                    } else {
                        written
                            .iter()
                            .map(|p| format!("wrote {}\n", p.display()))
                            .collect()
                    }
                }
                None => {
                    let povms: Vec<NamedPovm> = bundle
                        .povms
                        .iter()
                        .map(|(n, p)| NamedPovm {
                            name: n,
                            povm: p.to_file(),
                        })
                        .collect();
                    let states: Vec<NamedState> = bundle
                        .states
                        .iter()
                        .map(|(n, s)| NamedState {
                            name: n,
                            state: s.to_file(),
                        })
                        .collect();
                    let dump = json!({
                        "name": name,
                        "povms": povms,
                        "states": states,
                        "values": bundle.values,
                        "relations": bundle.relations,
                    });
                    if config.json {
                        to_json(&json!({ "config": config, "fixture": dump }))
                    } else {
                        to_json(&dump)
                    }
                }
            }
        }
    };
    Ok(Outcome::ok(output))
}

pub fn reproduce(value_tol: f64, config: &RunConfig) -> CliResult<Outcome> {
    let report = povm_order::reproduce(value_tol, &config.budget, &config.tolerances)?;
    let output = if config.json {
        to_json(&json!({ "config": config, "report": report }))
    } else {
        report.to_markdown()
    };
    Ok(Outcome {
        output,
        success: report.passed,
    })
}
