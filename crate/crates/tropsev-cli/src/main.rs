//! Command-line front end: exact membership tests, witnesses, minors,
//! cone enumeration, tropical kernel tests and diagram rendering, all
//! with machine-readable JSON output (`"schema": "tropsev/1"`).
//!
//! Exit codes: 0 success, 1 domain refusal (non-member, failed
//! verification), 2 input error.

mod json;
mod svg;

use clap::{Parser, Subcommand};
use num::rational::BigRational;
use std::io::Read;
use tropsev::classifier::{classify, dimension_check, enumerate_cones};
use tropsev::minors::{is_exceptional_affine, minor_poly, IndexSet4};
use tropsev::newton::WeightVector;
use tropsev::puiseux::PuiseuxTrunc;
use tropsev::ring::CoeffRing;
use tropsev::textio;
use tropsev::trop_kernel::{in_trop_kernel, in_trop_kernel_via_circuits, ValMatrix};
use tropsev::witness::{construct, verify_witness, Strictness};

#[derive(Parser)]
#[command(name = "tropsev", version, about = "Exact tropical membership tests and witnesses for univariate polynomials with two double roots")]
struct Cli {
    /// Worker threads for the embarrassingly parallel subcommands.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide membership of a weight vector and print its certificates.
    Classify {
        #[arg(long)]
        n: usize,
        /// Comma-separated rationals, e.g. "2,0,1,0,1,0" or "1/2,0,..."
        #[arg(long)]
        w: String,
    },
    /// Construct an explicit witness polynomial for a member weight.
    Witness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: String,
        /// Truncation order for the printed series.
        #[arg(long)]
        trunc: Option<String>,
        /// Restrict to certificates of one type (I, II or III).
        #[arg(long = "cert-type")]
        cert_type: Option<String>,
    },
    /// Re-verify a witness JSON document (from --file or stdin).
    Verify {
        #[arg(long)]
        file: Option<String>,
        /// "interior" (default) or "closure".
        #[arg(long, default_value = "interior")]
        strictness: String,
    },
    /// Print the closed-form minor of a 4-element column set.
    Minors {
        /// Comma-separated indices, e.g. "0,1,2,3".
        #[arg(long = "J")]
        j: String,
    },
    /// Enumerate the maximal cones for a small degree.
    Cones {
        #[arg(long)]
        n: usize,
        /// Restrict to one type (I, II or III).
        #[arg(long = "type")]
        cone_type: Option<String>,
    },
    /// Tropical membership for the kernel of a matrix of series.
    Tropkernel {
        /// Matrix file: one row per line, comma-separated series
        /// literals like "1 - 2*t^1/2 + O(t^7)"; '#' starts a comment.
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        w: String,
        /// Use the circuit route instead of the direct minor route.
        #[arg(long)]
        circuits: bool,
    },
    /// Render the Newton diagram (marked points as stars, hidden ties
    /// dashed) as SVG.
    Diagram {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: String,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<String>,
    },
}

fn parse_weights(n: usize, raw: &str) -> Result<WeightVector, String> {
    let entries: Result<Vec<BigRational>, _> = raw
        .split(',')
        .map(|p| textio::parse_rational(p).map_err(|e| e.to_string()))
        .collect();
    let entries = entries?;
    if entries.len() != n + 1 {
        return Err(format!(
            "expected {} weights for n = {}, got {}",
            n + 1,
            n,
            entries.len()
        ));
    }
    WeightVector::new(entries).map_err(|e| e.to_string())
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            2
        }
    });
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Classify { n, w } => {
            let w = parse_weights(n, &w)?;
            let result = classify(&w);
            let mut doc = json::obj("classify");
            doc.insert("n".into(), serde_json::json!(n));
            doc.insert("w".into(), json::weights(&w));
            doc.insert("member".into(), serde_json::json!(result.member));
            doc.insert(
                "certificates".into(),
                serde_json::Value::Array(
                    result
                        .certificates
                        .iter()
                        .map(|c| {
                            let mut j = json::certificate(c);
                            j.as_object_mut().unwrap().insert(
                                "dimension".into(),
                                serde_json::json!(dimension_check(c, n)),
                            );
                            j
                        })
                        .collect(),
                ),
            );
            doc.insert(
                "refusal_reason".into(),
                match &result.refusal_reason {
                    Some(r) => serde_json::json!(r),
                    None => serde_json::Value::Null,
                },
            );
            println!("{}", serde_json::Value::Object(doc));
            Ok(if result.member { 0 } else { 1 })
        }
        Command::Witness {
            n,
            w,
            trunc,
            cert_type,
        } => {
            let w = parse_weights(n, &w)?;
            let trunc = trunc
                .map(|t| textio::parse_rational(&t).map_err(|e| e.to_string()))
                .transpose()?;
            let result = classify(&w);
            if !result.member {
                let mut doc = json::obj("witness");
                doc.insert("member".into(), serde_json::json!(false));
                doc.insert(
                    "refusal_reason".into(),
                    serde_json::json!(result.refusal_reason),
                );
                println!("{}", serde_json::Value::Object(doc));
                return Ok(1);
            }
            let mut errors = vec![];
            for cert in &result.certificates {
                if let Some(t) = &cert_type {
                    if !cert.type_name().eq_ignore_ascii_case(t) {
                        continue;
                    }
                }
                match construct(&w, cert) {
                    Ok(witness) => {
                        let report = verify_witness(&w, &witness, Strictness::Interior);
                        let doc = json::witness(n, &w, &witness, &report, trunc.as_ref());
                        println!("{}", serde_json::Value::Object(doc));
                        return Ok(if report.all_passed() { 0 } else { 1 });
                    }
                    Err(e) => errors.push(format!("{:?}: {}", cert.data(), e)),
                }
            }
            Err(format!(
                "no certificate admits a witness construction: {}",
                errors.join("; ")
            ))
        }
        Command::Verify { file, strictness } => {
            let raw = match file {
                Some(path) => std::fs::read_to_string(&path)
                    .map_err(|e| format!("cannot read {}: {}", path, e))?,
                None => {
                    let mut buf = String::new();
                    std::io::stdin()
                        .read_to_string(&mut buf)
                        .map_err(|e| e.to_string())?;
                    buf
                }
            };
            let strictness = match strictness.as_str() {
                "interior" => Strictness::Interior,
                "closure" => Strictness::Closure,
                other => return Err(format!("unknown strictness {:?}", other)),
            };
            let (w, witness) = json::parse_witness(&raw)?;
            let report = verify_witness(&w, &witness, strictness);
            let mut doc = json::obj("verify");
            doc.insert("all_passed".into(), serde_json::json!(report.all_passed()));
            doc.insert("checks".into(), json::report_checks(&report));
            println!("{}", serde_json::Value::Object(doc));
            Ok(if report.all_passed() { 0 } else { 1 })
        }
        Command::Minors { j } => {
            let indices: Result<Vec<usize>, _> = j
                .split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|e| e.to_string()))
                .collect();
            let j = IndexSet4::from_slice(&indices?).map_err(|e| e.to_string())?;
            let m = minor_poly(&j);
            let mut doc = json::obj("minors");
            doc.insert("J".into(), serde_json::json!(j.indices().to_vec()));
            doc.insert("poly".into(), serde_json::json!(m.poly.to_string()));
            doc.insert("degree".into(), serde_json::json!(m.poly.degree().unwrap()));
            doc.insert("order".into(), serde_json::json!(m.poly.order().unwrap()));
            doc.insert(
                "leading".into(),
                serde_json::json!(m.poly.leading().unwrap().to_string()),
            );
            doc.insert(
                "exceptional".into(),
                match is_exceptional_affine(&j) {
                    Some(d) => serde_json::json!({
                        "base": d.base.to_vec(),
                        "scale": d.scale,
                        "shift": d.shift,
                    }),
                    None => serde_json::Value::Null,
                },
            );
            println!("{}", serde_json::Value::Object(doc));
            Ok(0)
        }
        Command::Cones { n, cone_type } => {
            let cones = enumerate_cones(n).map_err(|e| e.to_string())?;
            let threads = cli.threads.max(1);
            let filtered: Vec<_> = cones
                .into_iter()
                .filter(|c| match &cone_type {
                    Some(t) => c.data.type_name().eq_ignore_ascii_case(t),
                    None => true,
                })
                .collect();
            // dimensions, chunked across worker threads
            let dims: Vec<usize> = if threads <= 1 || filtered.len() < 2 {
                filtered.iter().map(tropsev::classifier::dimension_of).collect()
            } else {
                let chunk = filtered.len().div_ceil(threads);
                let mut dims = vec![0usize; filtered.len()];
                std::thread::scope(|scope| {
                    for (slot, work) in dims.chunks_mut(chunk).zip(filtered.chunks(chunk)) {
                        scope.spawn(move || {
                            for (d, c) in slot.iter_mut().zip(work) {
                                *d = tropsev::classifier::dimension_of(c);
                            }
                        });
                    }
                });
                dims
            };
            let mut doc = json::obj("cones");
            doc.insert("n".into(), serde_json::json!(n));
            doc.insert("count".into(), serde_json::json!(filtered.len()));
            doc.insert(
                "cones".into(),
                serde_json::Value::Array(
                    filtered
                        .iter()
                        .zip(dims)
                        .map(|(c, d)| json::cone_descriptor(c, d))
                        .collect(),
                ),
            );
            println!("{}", serde_json::Value::Object(doc));
            Ok(0)
        }
        Command::Tropkernel { matrix, w, circuits } => {
            let raw = std::fs::read_to_string(&matrix)
                .map_err(|e| format!("cannot read {}: {}", matrix, e))?;
            let ring = CoeffRing::rationals();
            let mut rows: Vec<Vec<PuiseuxTrunc>> = vec![];
            for line in raw.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let row: Result<Vec<PuiseuxTrunc>, _> = line
                    .split(',')
                    .map(|e| textio::parse_series(e, &ring).map_err(|e| e.to_string()))
                    .collect();
                rows.push(row?);
            }
            let m = ValMatrix::new(rows).map_err(|e| e.to_string())?;
            let weights: Result<Vec<BigRational>, _> = w
                .split(',')
                .map(|p| textio::parse_rational(p).map_err(|e| e.to_string()))
                .collect();
            let weights = weights?;
            let decision = if circuits {
                in_trop_kernel_via_circuits(&m, &weights)
            } else {
                in_trop_kernel(&m, &weights)
            }
            .map_err(|e| e.to_string())?;
            let mut doc = json::obj("tropkernel");
            doc.insert("rows".into(), serde_json::json!(m.nrows()));
            doc.insert("cols".into(), serde_json::json!(m.ncols()));
            doc.insert(
                "method".into(),
                serde_json::json!(if circuits { "circuits" } else { "minors" }),
            );
            let member = decision.is_member();
            doc.insert("member".into(), serde_json::json!(member));
            doc.insert(
                "refutation".into(),
                match &decision {
                    tropsev::trop_kernel::KernelDecision::Member => serde_json::Value::Null,
                    tropsev::trop_kernel::KernelDecision::NotMember { subset, minimizer } => {
                        serde_json::json!({"subset": subset, "minimizer": minimizer})
                    }
                },
            );
            println!("{}", serde_json::Value::Object(doc));
            Ok(if member { 0 } else { 1 })
        }
        Command::Diagram { n, w, out } => {
            let w = parse_weights(n, &w)?;
            let svg = svg::render(&w);
            match out {
                Some(path) => std::fs::write(&path, svg)
                    .map_err(|e| format!("cannot write {}: {}", path, e))?,
                None => println!("{}", svg),
            }
            Ok(0)
        }
    }
}
