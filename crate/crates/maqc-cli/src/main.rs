//! `maqc` — multigraded cohomology of partition quotients of
//! moment-angle complexes.
//!
//! ```text
//! maqc <command> [--model real|torus|spheres] [--dims d1,d2,...]
//!      [--coeff z2|q|z] [--format json|md] [--seed N] [--trials T]
//!      [--max-vertices V] <input.json>
//! ```
//!
//! Commands: `betti`, `subcomplexes`, `ring`, `tor`, `verify`, `stretch`.
//! Exit codes: 0 success, 1 validation error, 2 internal invariant
//! failure.

mod input;
mod report;
mod verify;

use std::process::ExitCode;
use std::time::Instant;

use maqc_core::cellular::{CellComplex, CellModel};
use maqc_core::dga::{build_r, cohomology_ring, tor_dimensions};
use maqc_core::hochster::{Decomposition, Model};
use maqc_core::homology::{cohomology, CoefficientRing};
use maqc_core::poset::stretch;
use maqc_core::{ColoredComplex, Error, SphereDims};

use input::{complex_to_json, parse_input, Input};
use report::{
    Report, RingClassJson, RingJson, RingProductJson, StretchJson, SubcomplexJson, TableJson,
};

#[derive(Debug, Clone, PartialEq, Eq)]
enum OutputFormat {
    Json,
    Markdown,
}

#[derive(Debug)]
struct JobSpec {
    command: String,
    model: Model,
    coeff: CoefficientRing,
    format: OutputFormat,
    seed: u64,
    trials: usize,
    max_vertices: usize,
    input: Option<String>,
}

fn usage() -> String {
    "usage: maqc <betti|subcomplexes|ring|tor|verify|stretch> \
     [--model real|torus|spheres] [--dims d1,d2,...] [--coeff z2|q|z] \
     [--format json|md] [--seed N] [--trials T] [--max-vertices V] \
     [input.json]"
        .to_string()
}

fn parse_args(args: &[String]) -> Result<JobSpec, String> {
    let mut command = None;
    let mut model_name: Option<String> = None;
    let mut dims: Option<Vec<u32>> = None;
    let mut coeff = CoefficientRing::Z2;
    let mut format = OutputFormat::Json;
    let mut seed = 0u64;
    let mut trials = 20usize;
    let mut max_vertices = 6usize;
    let mut input = None;

    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let mut take = |name: &str| -> Result<String, String> {
            it.next()
                .cloned()
                .ok_or_else(|| format!("missing value for {name}"))
        };
        match arg.as_str() {
            "--model" => model_name = Some(take("--model")?),
            "--dims" => {
                let raw = take("--dims")?;
                let parsed: Result<Vec<u32>, _> =
                    raw.split(',').map(|s| s.trim().parse::<u32>()).collect();
                dims = Some(parsed.map_err(|_| format!("bad --dims value `{raw}`"))?);
            }
            "--coeff" => {
                coeff = match take("--coeff")?.as_str() {
                    "z2" => CoefficientRing::Z2,
                    "q" => CoefficientRing::Q,
                    "z" => CoefficientRing::Z,
                    other => return Err(format!("unknown coefficient ring `{other}`")),
                }
            }
            "--format" => {
                format = match take("--format")?.as_str() {
                    "json" => OutputFormat::Json,
                    "md" => OutputFormat::Markdown,
                    other => return Err(format!("unknown format `{other}`")),
                }
            }
            "--seed" => {
                seed = take("--seed")?
                    .parse()
                    .map_err(|_| "bad --seed value".to_string())?
            }
            "--trials" => {
                trials = take("--trials")?
                    .parse()
                    .map_err(|_| "bad --trials value".to_string())?
            }
            "--max-vertices" => {
                max_vertices = take("--max-vertices")?
                    .parse()
                    .map_err(|_| "bad --max-vertices value".to_string())?
            }
            "--help" | "-h" => return Err(usage()),
            other if other.starts_with("--") => {
                return Err(format!("unknown option `{other}`"));
            }
            other if command.is_none() => command = Some(other.to_string()),
            other if input.is_none() => input = Some(other.to_string()),
            other => return Err(format!("unexpected argument `{other}`")),
        }
    }

    let command = command.ok_or_else(usage)?;
    let model = match model_name.as_deref() {
        None | Some("torus") => Model::Torus,
        Some("real") => Model::Real,
        Some("spheres") => Model::Spheres(SphereDims(
            dims.clone()
                .ok_or_else(|| "--model spheres requires --dims".to_string())?,
        )),
        Some(other) => return Err(format!("unknown model `{other}`")),
    };
    if matches!(model, Model::Real | Model::Torus) && dims.is_some() {
        return Err("--dims is only meaningful with --model spheres".to_string());
    }
    Ok(JobSpec {
        command,
        model,
        coeff,
        format,
        seed,
        trials,
        max_vertices,
        input,
    })
}

fn load_complex(job: &JobSpec) -> Result<ColoredComplex, String> {
    let path = job
        .input
        .as_ref()
        .ok_or_else(|| format!("{} requires an input file", job.command))?;
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    match parse_input(&text)? {
        Input::Complex(cc) => Ok(cc),
        Input::Poset(_) => Err(format!(
            "{} expects a simplicial complex input",
            job.command
        )),
    }
}

fn run(job: &JobSpec) -> Result<Report, String> {
    let start = Instant::now();
    let mut report = Report::new(&job.command, job.input.clone());
    match job.command.as_str() {
        "betti" => {
            let cc = load_complex(job)?;
            let dec = Decomposition::new(&cc);
            let table = dec
                .table(&job.model, job.coeff)
                .map_err(|e| e.to_string())?;
            // Cross-check against the matching cellular model (or the
            // finite algebra model over Z2 for sphere dimensions).
            let cross = match &job.model {
                Model::Real | Model::Torus => {
                    let cell_model = if job.model == Model::Real {
                        CellModel::Real
                    } else {
                        CellModel::Torus
                    };
                    let cell = CellComplex::build(&cc, cell_model).to_cochain_complex();
                    let h = cohomology(&cell, job.coeff).map_err(|e| e.to_string())?;
                    let totals = table.totals();
                    let agree = totals.iter().all(|(&q, g)| h.group(q).isomorphic(g))
                        && h.by_degree.iter().all(|(&q, g)| {
                            totals.get(&q).map_or(g.is_zero(), |t| t.isomorphic(g))
                        });
                    if !agree {
                        return Err("cellular cross-check failed".to_string());
                    }
                    "cellular model agrees".to_string()
                }
                Model::Spheres(dims) => {
                    if job.coeff == CoefficientRing::Z2 {
                        let rc = build_r(&cc, Some(dims)).map_err(|e| e.to_string())?;
                        if rc.betti_vector_mod2() != table.betti_vector() {
                            return Err("sphere-model cross-check failed".to_string());
                        }
                        "finite algebra model agrees".to_string()
                    } else {
                        "skipped (sphere model cross-checks run over Z2)".to_string()
                    }
                }
            };
            report.table = Some(TableJson::from_table(&table));
            report.cross_check = Some(cross);
        }
        "subcomplexes" => {
            let cc = load_complex(job)?;
            let dec = Decomposition::new(&cc);
            report.subcomplexes = Some(
                dec.pieces
                    .iter()
                    .map(|(l, sub)| SubcomplexJson {
                        colors: l.display_indices(),
                        faces: sub
                            .faces()
                            .iter()
                            .map(|f| {
                                f.vertices()
                                    .iter()
                                    .map(|&v| sub.vertex_name(v).to_string())
                                    .collect()
                            })
                            .collect(),
                    })
                    .collect(),
            );
        }
        "ring" => {
            if job.coeff != CoefficientRing::Z2 {
                return Err(Error::RequiresZ2.to_string());
            }
            let cc = load_complex(job)?;
            let dims = match &job.model {
                Model::Torus => None,
                Model::Spheres(d) => Some(d.clone()),
                Model::Real => {
                    return Err(
                        "ring structure is computed for the torus or sphere models".to_string(),
                    )
                }
            };
            let rc = build_r(&cc, dims.as_ref()).map_err(|e| e.to_string())?;
            let ring = cohomology_ring(&rc).map_err(|e| e.to_string())?;
            report.ring = Some(RingJson {
                classes: ring
                    .classes
                    .iter()
                    .enumerate()
                    .map(|(id, c)| RingClassJson {
                        id,
                        dim: c.dim,
                        colors: c.colors.display_indices(),
                        representative: c
                            .representative
                            .iter()
                            .map(|m| render_monomial(&cc, m))
                            .collect(),
                    })
                    .collect(),
                unit: ring.unit,
                products: ring
                    .products
                    .iter()
                    .map(|(&(a, b), ids)| RingProductJson {
                        left: a,
                        right: b,
                        result: ids.clone(),
                    })
                    .collect(),
            });
        }
        "tor" => {
            if job.coeff != CoefficientRing::Z2 {
                return Err(Error::RequiresZ2.to_string());
            }
            let cc = load_complex(job)?;
            let dims = match &job.model {
                Model::Torus => None,
                Model::Spheres(d) => Some(d.clone()),
                Model::Real => return Err("tor uses the torus or sphere grading".to_string()),
            };
            let table = tor_dimensions(&cc, dims.as_ref()).map_err(|e| e.to_string())?;
            report.table = Some(TableJson::from_tor_table(
                &table,
                dims.as_ref().map(|d| d.0.as_slice()),
            ));
        }
        "verify" => {
            let outcome = verify::sweep(job.seed, job.trials, job.max_vertices);
            let ok = outcome.failures.is_empty();
            report.verify = Some(outcome.into_json(job.seed, job.trials, job.max_vertices));
            if !ok {
                // Emit the report (with reproducers) before failing.
                report.timing_ms = start.elapsed().as_millis();
                let rendered = match job.format {
                    OutputFormat::Json => report.to_json(),
                    OutputFormat::Markdown => report.to_markdown(),
                };
                println!("{rendered}");
                return Err("verification sweep found route disagreements".to_string());
            }
        }
        "stretch" => {
            let path = job
                .input
                .as_ref()
                .ok_or_else(|| "stretch requires a poset input file".to_string())?;
            let text =
                std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
            let poset = match parse_input(&text)? {
                Input::Poset(p) => p,
                Input::Complex(_) => {
                    return Err("stretch expects a poset input (an `elements` array)".to_string())
                }
            };
            let result = stretch(&poset);
            let table = Decomposition::new(&result.complex)
                .table(&Model::Torus, job.coeff)
                .map_err(|e| e.to_string())?;
            report.stretch = Some(StretchJson {
                complex: complex_to_json(&result.complex),
                levels: result.levels.clone(),
                top_level: result.top_level,
                table: TableJson::from_table(&table),
            });
        }
        other => return Err(format!("unknown command `{other}`\n{}", usage())),
    }
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

fn render_monomial(cc: &ColoredComplex, m: &maqc_core::dga::RMonomial) -> String {
    let t_part: Vec<String> = m.colors.iter().map(|i| format!("t{}", i + 1)).collect();
    let v_part = if m.simplex.is_empty() {
        if t_part.is_empty() {
            "1".to_string()
        } else {
            String::new()
        }
    } else {
        format!(
            "v{{{}}}",
            m.simplex
                .vertices()
                .iter()
                .map(|&v| cc.vertex_name(v).to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    };
    let mut s = t_part.join("");
    s.push_str(&v_part);
    s
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let job = match parse_args(&args) {
        Ok(job) => job,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    match run(&job) {
        Ok(report) => {
            let rendered = match job.format {
                OutputFormat::Json => report.to_json(),
                OutputFormat::Markdown => report.to_markdown(),
            };
            println!("{rendered}");
            ExitCode::SUCCESS
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            // Route disagreements and broken differentials are internal
            // invariant failures (exit 2); everything else is validation.
            if msg.contains("differential sanity failure")
                || msg.contains("route disagreements")
                || msg.contains("cross-check failed")
            {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
