//! JSON certificate files. Terms are stored rendered; traces as JSON lines
//! which are replayed on load.

use super::{CertificateMap, Component, EndpieceCertificate, PremiseRef, ProofcheckError};
use crate::ordinals::ProofSkeleton;
use crate::reduction::{Strategy, Trace};
use crate::term::{parse_term, render_term, RenderStyle, Term};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentFile {
    pub confluence: String,
    pub context: String,
    pub premise_left: String,
    pub premise_right: String,
    pub left_trace: String,
    pub right_trace: String,
    pub premise: PremiseRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub schema_version: u32,
    pub initial: String,
    pub initial_trace: String,
    pub components: Vec<ComponentFile>,
    pub confluence: String,
    #[serde(rename = "final")]
    pub final_term: String,
    pub final_trace: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleEntry {
    pub path: Vec<usize>,
    pub certificate: CertificateFile,
}

/// A skeleton with one certificate per conversion leaf and endpiece node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleFile {
    pub schema_version: u32,
    pub skeleton: ProofSkeleton,
    pub certificates: Vec<BundleEntry>,
}

fn render(t: &Term) -> String {
    render_term(t, RenderStyle::Named)
}

fn term(field: &str, s: &str) -> Result<Term, ProofcheckError> {
    parse_term(s).map_err(|e| ProofcheckError::Field { field: field.into(), msg: e.to_string() })
}

fn trace(field: &str, start: Term, s: &str) -> Result<Trace, ProofcheckError> {
    Trace::from_jsonl(start, Strategy::Free, s)
        .map_err(|e| ProofcheckError::Field { field: field.into(), msg: e.to_string() })
}

fn check_version(found: u32) -> Result<(), ProofcheckError> {
    if found == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(ProofcheckError::Schema { found, expected: SCHEMA_VERSION })
    }
}

impl From<&EndpieceCertificate> for CertificateFile {
    fn from(c: &EndpieceCertificate) -> Self {
        CertificateFile {
            schema_version: SCHEMA_VERSION,
            initial: render(&c.initial),
            initial_trace: c.initial_trace.to_jsonl(),
            components: c
                .components
                .iter()
                .map(|k| ComponentFile {
                    confluence: render(&k.confluence),
                    context: render(&k.context),
                    premise_left: render(&k.premise_left),
                    premise_right: render(&k.premise_right),
                    left_trace: k.left_trace.to_jsonl(),
                    right_trace: k.right_trace.to_jsonl(),
                    premise: k.premise,
                })
                .collect(),
            confluence: render(&c.confluence),
            final_term: render(&c.final_term),
            final_trace: c.final_trace.to_jsonl(),
        }
    }
}

impl TryFrom<&CertificateFile> for EndpieceCertificate {
    type Error = ProofcheckError;

    fn try_from(f: &CertificateFile) -> Result<Self, Self::Error> {
        check_version(f.schema_version)?;
        let initial = term("initial", &f.initial)?;
        let final_term = term("final", &f.final_term)?;
        let mut components = Vec::with_capacity(f.components.len());
        for (i, k) in f.components.iter().enumerate() {
            let at = |name: &str| format!("components[{i}].{name}");
            let context = term(&at("context"), &k.context)?;
            let premise_left = term(&at("premise_left"), &k.premise_left)?;
            let premise_right = term(&at("premise_right"), &k.premise_right)?;
            let gm = Term::app(context.clone(), premise_left.clone());
            let gn = Term::app(context.clone(), premise_right.clone());
            components.push(Component {
                confluence: term(&at("confluence"), &k.confluence)?,
                left_trace: trace(&at("left_trace"), gm, &k.left_trace)?,
                right_trace: trace(&at("right_trace"), gn, &k.right_trace)?,
                context,
                premise_left,
                premise_right,
                premise: k.premise,
            });
        }
        Ok(EndpieceCertificate {
            initial_trace: trace("initial_trace", initial.clone(), &f.initial_trace)?,
            initial,
            components,
            confluence: term("confluence", &f.confluence)?,
            final_trace: trace("final_trace", final_term.clone(), &f.final_trace)?,
            final_term,
        })
    }
}

impl EndpieceCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CertificateFile::from(self)).expect("certificate serializes")
    }
}

pub fn load_certificate(json: &str) -> Result<EndpieceCertificate, ProofcheckError> {
    let f: CertificateFile = serde_json::from_str(json)?;
    EndpieceCertificate::try_from(&f)
}

impl BundleFile {
    pub fn new(skeleton: &ProofSkeleton, certs: &CertificateMap) -> Self {
        BundleFile {
            schema_version: SCHEMA_VERSION,
            skeleton: skeleton.clone(),
            certificates: certs
                .iter()
                .map(|(p, c)| BundleEntry { path: p.clone(), certificate: c.into() })
                .collect(),
        }
    }
}

pub fn load_bundle(json: &str) -> Result<(ProofSkeleton, CertificateMap), ProofcheckError> {
    let f: BundleFile = serde_json::from_str(json)?;
    check_version(f.schema_version)?;
    let mut map = CertificateMap::new();
    for e in &f.certificates {
        map.insert(e.path.clone(), EndpieceCertificate::try_from(&e.certificate)?);
    }
    Ok((f.skeleton, map))
}
