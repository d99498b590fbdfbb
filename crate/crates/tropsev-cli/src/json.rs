//! JSON encoding/decoding for the CLI. Rationals and series are strings
//! (the canonical text forms), so no precision is lost.

use num::rational::BigRational;
use serde_json::{json, Map, Value};
use tropsev::classifier::ConeCertificate;
use tropsev::newton::{AffineTransform, WeightVector};
use tropsev::ring::{CoeffRing, RingKind, RingRef};
use tropsev::textio;
use tropsev::witness::{VerifyReport, Witness};

pub fn obj(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!("tropsev/1"));
    m.insert("command".into(), json!(command));
    m
}

pub fn weights(w: &WeightVector) -> Value {
    Value::Array(
        w.entries()
            .iter()
            .map(|q| json!(textio::format_rational(q)))
            .collect(),
    )
}

pub fn certificate(c: &ConeCertificate) -> Value {
    match c {
        ConeCertificate::TypeI { cell_a, cell_b, interior } => json!({
            "type": "I",
            "cells": [cell_a.support().to_vec(), cell_b.support().to_vec()],
            "interior": interior,
        }),
        ConeCertificate::TypeII { cell, interior } => json!({
            "type": "II",
            "cell": cell.to_vec(),
            "interior": interior,
        }),
        ConeCertificate::TypeIII { sigma, d, tie, interior } => json!({
            "type": "III",
            "sigma": sigma.to_vec(),
            "d": d,
            "tie": tie.to_vec(),
            "interior": interior,
        }),
    }
}

fn certificate_from_json(v: &Value) -> Result<ConeCertificate, String> {
    let kind = v["type"].as_str().ok_or("certificate missing type")?;
    let interior = v["interior"].as_bool().unwrap_or(false);
    let idx = |value: &Value| -> Result<Vec<usize>, String> {
        value
            .as_array()
            .ok_or("expected an index array")?
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|u| u as usize)
                    .ok_or_else(|| "bad index".to_string())
            })
            .collect()
    };
    match kind {
        "I" => {
            let cells = v["cells"].as_array().ok_or("type I needs cells")?;
            if cells.len() != 2 {
                return Err("type I needs two cells".into());
            }
            let a = idx(&cells[0])?;
            let b = idx(&cells[1])?;
            if a.len() != 3 || b.len() != 3 {
                return Err("type I cells need three indices".into());
            }
            Ok(ConeCertificate::TypeI {
                cell_a: tropsev::classifier::MarkedTriple {
                    left: a[0],
                    mark: a[1],
                    right: a[2],
                },
                cell_b: tropsev::classifier::MarkedTriple {
                    left: b[0],
                    mark: b[1],
                    right: b[2],
                },
                interior,
            })
        }
        "II" => {
            let cell = idx(&v["cell"])?;
            if cell.len() != 4 {
                return Err("type II needs four indices".into());
            }
            Ok(ConeCertificate::TypeII {
                cell: [cell[0], cell[1], cell[2], cell[3]],
                interior,
            })
        }
        "III" => {
            let sigma = idx(&v["sigma"])?;
            let tie = idx(&v["tie"])?;
            let d = v["d"].as_u64().ok_or("type III needs d")?;
            if sigma.len() != 3 || tie.len() != 2 {
                return Err("type III needs three segment indices and two tie indices".into());
            }
            Ok(ConeCertificate::TypeIII {
                sigma: [sigma[0], sigma[1], sigma[2]],
                d,
                tie: [tie[0], tie[1]],
                interior,
            })
        }
        other => Err(format!("unknown certificate type {:?}", other)),
    }
}

fn ring_json(ring: &RingRef) -> Value {
    let kind = match ring.kind() {
        RingKind::Rational => "rationals",
        RingKind::Cyclotomic(_) => "cyclotomic",
        RingKind::Dynamic => "dynamic",
    };
    json!({
        "kind": kind,
        "order": ring.cyclotomic_order(),
        "modulus": textio::format_ratpoly(ring.modulus()),
    })
}

fn ring_from_json(v: &Value) -> Result<RingRef, String> {
    match v["kind"].as_str() {
        Some("rationals") => Ok(CoeffRing::rationals()),
        Some("cyclotomic") => {
            let d = v["order"].as_u64().ok_or("cyclotomic ring needs an order")?;
            Ok(CoeffRing::cyclotomic(d))
        }
        Some("dynamic") => {
            let m = v["modulus"].as_str().ok_or("dynamic ring needs a modulus")?;
            let poly = textio::parse_ratpoly(m).map_err(|e| e.to_string())?;
            CoeffRing::dynamic(poly).map_err(|e| e.to_string())
        }
        other => Err(format!("unknown ring kind {:?}", other)),
    }
}

pub fn cone_descriptor(desc: &tropsev::classifier::ConeDescriptor, dimension: usize) -> Value {
    let form = |f: &tropsev::classifier::LinearForm| -> Value {
        Value::Array(
            f.iter()
                .map(|q| json!(textio::format_rational(q)))
                .collect(),
        )
    };
    let data = match &desc.data {
        tropsev::classifier::ConeData::TypeI { cell_a, cell_b } => json!({
            "type": "I", "cells": [cell_a.to_vec(), cell_b.to_vec()],
        }),
        tropsev::classifier::ConeData::TypeII { cell } => json!({
            "type": "II", "cell": cell.to_vec(),
        }),
        tropsev::classifier::ConeData::TypeIII { sigma, d, tie } => json!({
            "type": "III", "sigma": sigma.to_vec(), "d": d, "tie": tie.to_vec(),
        }),
    };
    json!({
        "data": data,
        "dimension": dimension,
        "equalities": Value::Array(desc.equalities.iter().map(form).collect()),
        "inequalities": Value::Array(desc.inequalities.iter().map(form).collect()),
    })
}

pub fn report_checks(report: &VerifyReport) -> Value {
    Value::Array(
        report
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect(),
    )
}

pub fn witness(
    n: usize,
    w: &WeightVector,
    witness: &Witness,
    report: &VerifyReport,
    trunc: Option<&BigRational>,
) -> Map<String, Value> {
    let clip = |p: &tropsev::puiseux::PuiseuxTrunc| -> String {
        match trunc {
            Some(t) => textio::format_series(&p.truncate_to(t)),
            None => textio::format_series(p),
        }
    };
    let mut doc = obj("witness");
    doc.insert("n".into(), json!(n));
    doc.insert("w".into(), weights(w));
    doc.insert("member".into(), json!(true));
    doc.insert("certificate".into(), certificate(&witness.certificate));
    doc.insert("ring".into(), ring_json(&witness.ring));
    doc.insert(
        "transform".into(),
        json!({
            "alpha": textio::format_rational(&witness.transform.alpha),
            "shift": textio::format_rational(&witness.transform.shift),
        }),
    );
    doc.insert("b".into(), json!(clip(&witness.b)));
    doc.insert("normalized_weight".into(), weights(&witness.normalized_weight));
    doc.insert(
        "coefficients".into(),
        Value::Array(witness.coefficients.iter().map(|c| json!(clip(c))).collect()),
    );
    doc.insert(
        "coefficients_original".into(),
        Value::Array(
            witness
                .original_coefficients()
                .iter()
                .map(|c| json!(clip(c)))
                .collect(),
        ),
    );
    doc.insert(
        "verification".into(),
        json!({"all_passed": report.all_passed(), "checks": report_checks(report)}),
    );
    doc
}

/// Parse a witness document (the `witness` subcommand's output) back
/// into the weight vector and witness it describes.
pub fn parse_witness(raw: &str) -> Result<(WeightVector, Witness), String> {
    let v: Value = serde_json::from_str(raw).map_err(|e| format!("bad JSON: {}", e))?;
    if v["schema"].as_str() != Some("tropsev/1") {
        return Err("unsupported schema".into());
    }
    let rationals = |value: &Value| -> Result<Vec<BigRational>, String> {
        value
            .as_array()
            .ok_or("expected an array of rationals")?
            .iter()
            .map(|x| {
                let s = x.as_str().ok_or("rationals must be strings")?;
                textio::parse_rational(s).map_err(|e| e.to_string())
            })
            .collect()
    };
    let w = WeightVector::new(rationals(&v["w"])?).map_err(|e| e.to_string())?;
    let normalized =
        WeightVector::new(rationals(&v["normalized_weight"])?).map_err(|e| e.to_string())?;
    let ring = ring_from_json(&v["ring"])?;
    let alpha = textio::parse_rational(
        v["transform"]["alpha"].as_str().ok_or("missing transform.alpha")?,
    )
    .map_err(|e| e.to_string())?;
    let shift = textio::parse_rational(
        v["transform"]["shift"].as_str().ok_or("missing transform.shift")?,
    )
    .map_err(|e| e.to_string())?;
    let b = textio::parse_series(v["b"].as_str().ok_or("missing b")?, &ring)
        .map_err(|e| e.to_string())?;
    let coefficients: Result<Vec<_>, String> = v["coefficients"]
        .as_array()
        .ok_or("missing coefficients")?
        .iter()
        .map(|x| {
            let s = x.as_str().ok_or("series must be strings")?;
            textio::parse_series(s, &ring).map_err(|e| e.to_string())
        })
        .collect();
    let certificate = certificate_from_json(&v["certificate"])?;
    Ok((
        w,
        Witness {
            certificate,
            ring,
            b,
            coefficients: coefficients?,
            normalized_weight: normalized,
            transform: AffineTransform { alpha, shift },
        },
    ))
}
