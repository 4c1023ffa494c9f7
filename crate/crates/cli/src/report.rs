//! The machine-readable classification report and its plain-text twin.
//!
//! Serialization is byte-stable: struct fields serialize in declaration
//! order, big integers become decimal strings, and numeric shadows carry
//! the precision they were computed at in the provenance block.

use num_bigint::BigInt;
use serde::Serialize;
use toralclass_core::{
    ClassificationReport, Decomposition, IntMatrix, IntPolynomial, SymplecticForm,
};

use crate::io::MatrixDocument;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub input: InputEcho,
    pub symplectic_form: Option<FormJson>,
    pub char_poly: Vec<String>,
    pub factorization: Vec<FactorJson>,
    pub spectral_type: Option<String>,
    pub ergodic: bool,
    pub certificate: CertificateJson,
    pub entropy: EntropyJson,
    pub transitive: bool,
    pub resonance: Option<ResonanceJson>,
    pub decomposition: Option<DecompositionJson>,
    pub provenance: Provenance,
}

#[derive(Serialize)]
pub struct InputEcho {
    pub matrix: Vec<Vec<String>>,
    pub label: Option<String>,
    pub source: String,
}

#[derive(Serialize)]
pub struct FormJson {
    pub matrix: Vec<Vec<String>>,
    pub pfaffian: String,
}

#[derive(Serialize)]
pub struct FactorJson {
    pub coefficients: Vec<String>,
    pub multiplicity: u32,
}

#[derive(Serialize)]
pub struct CertificateJson {
    pub cyclotomic_factors: Vec<CyclotomicJson>,
}

#[derive(Serialize)]
pub struct CyclotomicJson {
    pub order: u32,
    pub coefficients: Vec<String>,
}

#[derive(Serialize)]
pub struct EntropyJson {
    pub value: String,
    pub precision: u32,
}

#[derive(Serialize)]
pub struct ResonanceJson {
    pub rank: usize,
    pub basis: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct DecompositionJson {
    pub k: u32,
    #[serde(rename = "H")]
    pub h: Vec<Vec<String>>,
    #[serde(rename = "R")]
    pub r: Vec<Vec<String>>,
    #[serde(rename = "S")]
    pub s: Option<Vec<Vec<String>>>,
    pub index: String,
}

#[derive(Serialize, Clone, Copy)]
pub struct Provenance {
    pub bound_k: i64,
    pub precision: u32,
    pub sim_n: u64,
    pub resonant_floor: f64,
    pub nonresonant_ceiling: f64,
}

pub fn matrix_strings(m: &IntMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(BigInt::to_string).collect())
        .collect()
}

pub fn poly_strings(p: &IntPolynomial) -> Vec<String> {
    p.coeffs().iter().map(BigInt::to_string).collect()
}

fn form_json(j: &SymplecticForm) -> FormJson {
    FormJson {
        matrix: matrix_strings(j.matrix()),
        pfaffian: j.pfaffian().to_string(),
    }
}

pub fn decomposition_json(d: &Decomposition) -> DecompositionJson {
    DecompositionJson {
        k: d.elliptic_order,
        h: matrix_strings(&d.hyperbolic_action),
        r: matrix_strings(&d.elliptic_action),
        s: d.splitting.as_ref().map(|w| matrix_strings(&w.w)),
        index: d.index.to_string(),
    }
}

pub fn build_report(
    doc: &MatrixDocument,
    r: &ClassificationReport,
    decomposition: Option<&Decomposition>,
    prov: Provenance,
) -> ReportDocument {
    ReportDocument {
        schema_version: SCHEMA_VERSION,
        input: InputEcho {
            matrix: matrix_strings(&doc.matrix),
            label: doc.label.clone(),
            source: doc.source.clone(),
        },
        symplectic_form: r.invariant_form.canonical.as_ref().map(form_json),
        char_poly: poly_strings(&r.char_poly),
        factorization: r
            .factorization
            .factors
            .iter()
            .map(|(f, m)| FactorJson {
                coefficients: poly_strings(f),
                multiplicity: *m,
            })
            .collect(),
        spectral_type: r.spectral_type.map(|t| t.as_str().replace('-', "_")),
        ergodic: r.ergodicity.ergodic,
        certificate: CertificateJson {
            cyclotomic_factors: r
                .ergodicity
                .cyclotomic_factors
                .iter()
                .map(|(k, f)| CyclotomicJson {
                    order: *k,
                    coefficients: poly_strings(f),
                })
                .collect(),
        },
        entropy: EntropyJson {
            value: r.entropy.value.to_decimal_string(prov.precision),
            precision: prov.precision,
        },
        transitive: r.transitive(),
        resonance: r.eigen.as_ref().map(|e| ResonanceJson {
            rank: e.resonance.rank,
            basis: e
                .resonance
                .lattice
                .rows()
                .iter()
                .map(|row| row.iter().map(BigInt::to_string).collect())
                .collect(),
        }),
        decomposition: decomposition.map(decomposition_json),
        provenance: prov,
    }
}

pub fn render_text(r: &ClassificationReport, decomposition: Option<&Decomposition>, prov: Provenance) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(out, "{k:<18} {v}");
    };
    kv("char poly", r.char_poly.to_string());
    kv("factorization", r.factorization.to_string());
    kv(
        "spectral type",
        r.spectral_type
            .map(|t| t.as_str().to_string())
            .unwrap_or_else(|| "none (characteristic polynomial is not reciprocal)".into()),
    );
    kv("ergodic", r.ergodicity.ergodic.to_string());
    if !r.ergodicity.cyclotomic_factors.is_empty() {
        for (k, f) in &r.ergodicity.cyclotomic_factors {
            kv("  root of unity", format!("order {k} from factor {f}"));
        }
    }
    kv("transitive", r.transitive().to_string());
    kv(
        "entropy",
        format!(
            "{} ({} digits{})",
            r.entropy.value.to_decimal_string(prov.precision),
            prov.precision,
            if r.entropy.exact_zero { ", exactly zero" } else { "" }
        ),
    );
    match &r.invariant_form.canonical {
        Some(j) => {
            kv("symplectic form", format!("pfaffian {}", j.pfaffian()));
            for row in j.matrix().to_rows() {
                let cells: Vec<String> = row.iter().map(BigInt::to_string).collect();
                kv("", format!("[{}]", cells.join(", ")));
            }
        }
        None => kv(
            "symplectic form",
            "none found (combination box [-3, 3])".into(),
        ),
    }
    match r.eigen.as_ref() {
        Some(e) => {
            kv("resonance rank", e.resonance.rank.to_string());
            for row in e.resonance.lattice.rows() {
                let cells: Vec<String> = row.iter().map(BigInt::to_string).collect();
                kv("", format!("({})", cells.join(", ")));
            }
            kv("lambda", e.lambda.to_decimal_string(prov.precision));
            if let Some(alpha) = &e.rotation_angle {
                kv("rotation angle", alpha.to_decimal_string(prov.precision));
            }
        }
        None => kv("resonance rank", "not applicable (no real expanding line)".into()),
    }
    match decomposition {
        Some(d) => {
            kv("decomposition", format!("order-{} rotation block, index {}", d.elliptic_order, d.index));
            kv("  hyperbolic H", one_line(&d.hyperbolic_action));
            kv("  rotation R", one_line(&d.elliptic_action));
            match &d.splitting {
                Some(w) => kv("  witness S", one_line(&w.w)),
                None => kv("  witness S", "none within the scan bound".into()),
            }
        }
        None => kv("decomposition", "none".into()),
    }
    out
}

pub fn one_line(m: &IntMatrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(BigInt::to_string).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    rows.join(" ")
}
