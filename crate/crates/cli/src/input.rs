//! Loading colourings, hypergraphs and certificates from files, standard
//! input, or earlier run reports.

use std::io::Read;

use serde_json::Value;
use setram_core::format::parse_any;
use setram_core::ryser::Hypergraph;
use setram_core::{CoverCertificate, PartitionCertificate, SetColouring};

use crate::CliError;

pub fn read(path: &str, stdin: &mut dyn Read) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
    }
}

fn json(text: &str) -> Option<Value> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).ok()
    } else {
        None
    }
}

/// The first of `pointers` present in a run report, if `text` is one.
fn embedded(text: &str, pointers: &[&str]) -> Option<Value> {
    let v = json(text)?;
    v.get("command")?;
    pointers.iter().find_map(|p| v.pointer(p).filter(|x| !x.is_null()).cloned())
}

pub fn colouring(text: &str) -> Result<SetColouring, CliError> {
    let ptrs = ["/outcome/colouring", "/outcome/witness", "/outcome/outcome/witness"];
    if let Some(v) = embedded(text, &ptrs) {
        return serde_json::from_value(v).map_err(|e| CliError::Input(e.to_string()));
    }
    if json(text).is_some_and(|v| v.get("command").is_some()) {
        return Err(CliError::Input("report carries no colouring".into()));
    }
    parse_any(text).map_err(|e| CliError::Input(e.to_string()))
}

pub fn hypergraph(text: &str) -> Result<Hypergraph, CliError> {
    if let Some(v) = embedded(text, &["/outcome/hypergraph"]) {
        return serde_json::from_value(v).map_err(|e| CliError::Input(e.to_string()));
    }
    Ok(Hypergraph::parse_any(text)?)
}

pub enum Certificate {
    Cover(CoverCertificate),
    Partition(PartitionCertificate),
}

pub fn certificate(text: &str) -> Result<Certificate, CliError> {
    let bad = |m: String| CliError::Input(format!("certificate: {m}"));
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let v = if v.get("command").is_some() {
        v.pointer("/outcome/certificate")
            .cloned()
            .ok_or_else(|| bad("report carries no certificate".into()))?
    } else {
        v
    };
    if v.get("trees").is_some() {
        Ok(Certificate::Cover(serde_json::from_value(v).map_err(|e| bad(e.to_string()))?))
    } else if v.get("pieces").is_some() {
        Ok(Certificate::Partition(serde_json::from_value(v).map_err(|e| bad(e.to_string()))?))
    } else {
        Err(bad("expected `trees` or `pieces`".into()))
    }
}
