//! JSON documents exchanged by the CLI.
//!
//! Components are row-major. Numbers are written in the shortest decimal form
//! that parses back to the same `f64`, so files round-trip bit for bit.

use std::collections::BTreeMap;

use harmonic2d::{Basis, Formulation, HarmonicComponent, Tensor};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    T2,
    T3,
    Ela4,
    Ela5,
    Ela6,
}

impl Space {
    pub fn order(self) -> usize {
        match self {
            Space::T2 => 2,
            Space::T3 => 3,
            Space::Ela4 => 4,
            Space::Ela5 => 5,
            Space::Ela6 => 6,
        }
    }

    pub fn has_formulation(self) -> bool {
        matches!(self, Space::T3 | Space::Ela5 | Space::Ela6)
    }

    pub fn has_basis(self) -> bool {
        self.has_formulation()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormulationName {
    #[serde(rename = "typeII")]
    TypeII,
    #[serde(rename = "typeI")]
    TypeI,
}

impl From<FormulationName> for Formulation {
    fn from(f: FormulationName) -> Self {
        match f {
            FormulationName::TypeII => Formulation::TypeII,
            FormulationName::TypeI => Formulation::TypeI,
        }
    }
}

impl From<Formulation> for FormulationName {
    fn from(f: Formulation) -> Self {
        match f {
            Formulation::TypeII => FormulationName::TypeII,
            Formulation::TypeI => FormulationName::TypeI,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisName {
    Sr,
    Dh,
}

impl From<BasisName> for Basis {
    fn from(b: BasisName) -> Self {
        match b {
            BasisName::Sr => Basis::StretchRotation,
            BasisName::Dh => Basis::DeviatoricHydrostatic,
        }
    }
}

impl From<Basis> for BasisName {
    fn from(b: Basis) -> Self {
        match b {
            Basis::StretchRotation => BasisName::Sr,
            Basis::DeviatoricHydrostatic => BasisName::Dh,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorDocument {
    pub schema_version: String,
    pub space: Space,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formulation: Option<FormulationName>,
    /// Flat row-major list, or nested lists of depth equal to the order.
    pub components: Value,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub label: String,
    pub k: i32,
    pub coords: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarmonicsDocument {
    pub schema_version: String,
    pub space: Space,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<BasisName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formulation: Option<FormulationName>,
    pub entries: Vec<Entry>,
    /// Relative reconstruction error of the decomposition.
    pub residual: f64,
}

/// Either kind of document, told apart by its fields.
#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Tensor(TensorDocument),
    Harmonics(HarmonicsDocument),
}

fn check_version(v: &str) -> Result<(), CliError> {
    if v.split('.').next() != Some("1") {
        return Err(CliError::parse(format!("unsupported schema_version {v:?}")));
    }
    Ok(())
}

pub fn parse_document(text: &str) -> Result<Document, CliError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| CliError::parse(format!("invalid JSON: {e}")))?;
    let doc = if value.get("entries").is_some() {
        Document::Harmonics(
            serde_json::from_value(value)
                .map_err(|e| CliError::parse(format!("harmonics document: {e}")))?,
        )
    } else {
        Document::Tensor(
            serde_json::from_value(value)
                .map_err(|e| CliError::parse(format!("tensor document: {e}")))?,
        )
    };
    match &doc {
        Document::Tensor(d) => check_version(&d.schema_version)?,
        Document::Harmonics(d) => check_version(&d.schema_version)?,
    }
    Ok(doc)
}

fn flatten(v: &Value, depth: usize, out: &mut Vec<f64>) -> Result<(), CliError> {
    match v {
        Value::Array(items) => {
            if depth == 0 {
                return Err(CliError::parse("components nested deeper than the order"));
            }
            if items.iter().any(Value::is_array) && items.len() != 2 {
                return Err(CliError::parse("nested component lists must have length 2"));
            }
            items.iter().try_for_each(|x| flatten(x, depth - 1, out))
        }
        Value::Number(n) => {
            out.push(
                n.as_f64()
                    .ok_or_else(|| CliError::parse("component out of range"))?,
            );
            Ok(())
        }
        other => Err(CliError::parse(format!(
            "component {other} is not a number"
        ))),
    }
}

impl TensorDocument {
    pub fn new(space: Space, formulation: Option<Formulation>, t: &Tensor<f64>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            space,
            formulation: formulation.map(Into::into),
            components: t.as_slice().iter().copied().collect(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn tensor(&self) -> Result<Tensor<f64>, CliError> {
        let order = self.space.order();
        let mut flat = Vec::new();
        flatten(&self.components, order + 1, &mut flat)?;
        if flat.len() != 1 << order {
            return Err(CliError::parse(format!(
                "{:?} needs {} components, got {}",
                self.space,
                1 << order,
                flat.len()
            )));
        }
        Tensor::new(order, flat).map_err(CliError::from)
    }

    pub fn formulation(&self) -> Formulation {
        self.formulation.map(Into::into).unwrap_or_default()
    }
}

impl HarmonicsDocument {
    pub fn components(&self) -> Result<Vec<(String, HarmonicComponent<f64>)>, CliError> {
        self.entries
            .iter()
            .map(|e| {
                let c = HarmonicComponent::new(e.k, &e.coords)
                    .map_err(|err| CliError::parse(format!("entry {}: {err}", e.label)))?;
                Ok((e.label.clone(), c))
            })
            .collect()
    }

    pub fn basis(&self) -> Basis {
        self.basis.map(Into::into).unwrap_or_default()
    }

    pub fn formulation(&self) -> Formulation {
        self.formulation.map(Into::into).unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_and_flat_agree() {
        let flat: TensorDocument =
            serde_json::from_str(r#"{"schema_version":"1.0","space":"t2","components":[1,2,2,4]}"#)
                .unwrap();
        let nested: TensorDocument = serde_json::from_str(
            r#"{"schema_version":"1.0","space":"t2","components":[[1,2],[2,4]]}"#,
        )
        .unwrap();
        assert_eq!(flat.tensor().unwrap(), nested.tensor().unwrap());
    }

    #[test]
    fn wrong_count_is_a_parse_error() {
        let d: TensorDocument =
            serde_json::from_str(r#"{"schema_version":"1.0","space":"t2","components":[1,2,3]}"#)
                .unwrap();
        assert_eq!(d.tensor().unwrap_err().code, crate::error::EXIT_PARSE);
    }

    #[test]
    fn floats_round_trip_exactly() {
        let xs = [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE];
        let text = serde_json::to_string(&xs.to_vec()).unwrap();
        let back: Vec<f64> = serde_json::from_str(&text).unwrap();
        for (a, b) in xs.iter().zip(back) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn version_is_checked() {
        assert!(
            parse_document(r#"{"schema_version":"2.0","space":"t2","components":[1,0,0,1]}"#)
                .is_err()
        );
    }
}
