//! The JSON bundle format: an order with named forms, lattices, characters,
//! decomposition data and expected verdicts.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::builders::Fixture;
use crate::character::{CharacterTable, DecompositionMatrix};
use crate::error::{Error, Result};
use crate::forms::LinearForm;
use crate::lattice::Lattice;
use crate::matrix::Matrix;
use crate::order::Order;
use crate::scalar::{Prime, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderSpec {
    pub dim: usize,
    pub structure: Vec<Vec<Vec<Scalar>>>,
    pub one: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormValues {
    Values { values: Vec<Scalar> },
    /// Coefficients of named characters.
    Combination { combination: BTreeMap<String, Scalar> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormSpec {
    pub name: String,
    #[serde(flatten)]
    pub values: FormValues,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub name: String,
    pub action: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterSpec {
    pub name: String,
    pub values: Vec<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<Scalar>,
}

/// The on-disk document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleSpec {
    #[serde(default)]
    pub name: String,
    pub prime: u64,
    pub order: OrderSpec,
    #[serde(default)]
    pub forms: Vec<FormSpec>,
    #[serde(default)]
    pub lattices: Vec<LatticeSpec>,
    #[serde(default)]
    pub characters: Vec<CharacterSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionMatrix>,
    #[serde(default)]
    pub expectations: BTreeMap<String, String>,
    #[serde(default)]
    pub notes: Vec<String>,
}

/// A validated bundle.
#[derive(Clone, Debug)]
pub struct Bundle {
    pub name: String,
    pub order: Order,
    pub forms: Vec<(String, LinearForm)>,
    pub lattices: Vec<(String, Lattice)>,
    pub characters: Option<CharacterTable>,
    pub decomposition: Option<DecompositionMatrix>,
    pub expectations: BTreeMap<String, String>,
    pub notes: Vec<String>,
}

impl Bundle {
    pub fn prime(&self) -> Prime {
        self.order.prime()
    }

    pub fn form(&self, name: Option<&str>) -> Result<&(String, LinearForm)> {
        match name {
            None => self.forms.first().ok_or_else(|| Error::Resolution("bundle has no forms".into())),
            Some(n) => self.forms.iter().find(|(m, _)| m == n).ok_or_else(|| Error::Resolution(format!("no form named {n}"))),
        }
    }

    pub fn from_json(text: &str) -> Result<Bundle> {
        let spec: BundleSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        spec.validate()
    }

    pub fn load(path: &Path) -> Result<Bundle> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Bundle::from_json(&text)
    }

    pub fn from_fixture(f: &Fixture) -> Bundle {
        Bundle {
            name: f.name.clone(),
            order: f.order.clone(),
            forms: vec![("default".into(), f.form.clone())],
            lattices: f.lattices.clone(),
            characters: f.characters.clone().filter(CharacterTable::has_values),
            decomposition: f.decomposition.clone(),
            expectations: BTreeMap::new(),
            notes: f.notes.clone(),
        }
    }

    pub fn to_spec(&self) -> BundleSpec {
        let d = self.order.dim();
        BundleSpec {
            name: self.name.clone(),
            prime: self.prime().get(),
            order: OrderSpec { dim: d, structure: self.order.structure_nested(), one: self.order.one().coords.clone() },
            forms: self
                .forms
                .iter()
                .map(|(n, f)| FormSpec { name: n.clone(), values: FormValues::Values { values: f.values.clone() } })
                .collect(),
            lattices: self.lattices.iter().map(|(n, l)| LatticeSpec { name: n.clone(), action: l.action().to_vec() }).collect(),
            characters: self
                .characters
                .iter()
                .flat_map(|t| {
                    t.names.iter().zip(&t.characters).zip(&t.degrees).map(|((n, c), deg)| CharacterSpec {
                        name: n.clone(),
                        values: c.values.clone(),
                        degree: Some(deg.clone()),
                    })
                })
                .collect(),
            decomposition: self.decomposition.clone(),
            expectations: self.expectations.clone(),
            notes: self.notes.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("bundle serializes")
    }
}

impl BundleSpec {
    pub fn validate(self) -> Result<Bundle> {
        let p = Prime::new(self.prime)?;
        let d = self.order.dim;
        if self.order.structure.len() != d {
            return Err(Error::Shape(format!("order.structure has {} slices for dim {d}", self.order.structure.len())));
        }
        let order = Order::new(p, d, self.order.structure, self.order.one)?;
        let characters = if self.characters.is_empty() {
            None
        } else {
            let names: Vec<String> = self.characters.iter().map(|c| c.name.clone()).collect();
            let forms: Vec<LinearForm> = self.characters.iter().map(|c| LinearForm::new(c.values.clone())).collect();
            let table = CharacterTable::new(&order, names, forms)?;
            for (c, deg) in self.characters.iter().zip(&table.degrees) {
                if c.degree.as_ref().is_some_and(|x| x != deg) {
                    return Err(Error::InvalidCharacters(format!("declared degree of {} is not its value at 1", c.name)));
                }
            }
            Some(table)
        };
        if let Some(dm) = &self.decomposition {
            let table = characters
                .as_ref()
                .ok_or_else(|| Error::Resolution("decomposition matrix given without characters".into()))?;
            dm.validate(&table.degrees)?;
        }
        let mut forms = Vec::with_capacity(self.forms.len());
        for f in self.forms {
            let values = match f.values {
                FormValues::Values { values } => {
                    if values.len() != d {
                        return Err(Error::Shape(format!("form {} has {} values for dim {d}", f.name, values.len())));
                    }
                    LinearForm::new(values)
                }
                FormValues::Combination { combination } => {
                    let table = characters
                        .as_ref()
                        .ok_or_else(|| Error::Resolution(format!("form {} combines characters but none are given", f.name)))?;
                    let mut coeffs = vec![Scalar::zero(); table.len()];
                    for (name, c) in combination {
                        let i = table
                            .index_of(&name)
                            .ok_or_else(|| Error::Resolution(format!("form {} references missing character {name}", f.name)))?;
                        coeffs[i] = c;
                    }
                    table.combination(&coeffs, d)
                }
            };
            forms.push((f.name, values));
        }
        let mut lattices = Vec::with_capacity(self.lattices.len());
        for l in self.lattices {
            let lattice = Lattice::new(&order, l.action).map_err(|e| match e {
                Error::ModuleAxiom { i, j } => Error::Violation(format!("lattice {}: module axiom fails for ({i}, {j})", l.name)),
                other => other,
            })?;
            lattices.push((l.name, lattice));
        }
        Ok(Bundle {
            name: self.name,
            order,
            forms,
            lattices,
            characters,
            decomposition: self.decomposition,
            expectations: self.expectations,
            notes: self.notes,
        })
    }
}
