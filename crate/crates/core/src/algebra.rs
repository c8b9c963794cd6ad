//! A named container for a finite-dimensional space with products, maps
//! and forms over a shared basis.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::linalg::{LinearForm, LinearMap};
use crate::tensor::StructureTensor;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    pub name: String,
    basis: Vec<String>,
    products: BTreeMap<String, StructureTensor>,
    maps: BTreeMap<String, LinearMap>,
    forms: BTreeMap<String, LinearForm>,
    /// Claimed properties per product, e.g. `"3lie"`. Claims are never trusted.
    claims: BTreeMap<String, BTreeSet<String>>,
}

impl Algebra {
    pub fn new(name: impl Into<String>, basis: Vec<String>) -> Self {
        Algebra {
            name: name.into(),
            basis,
            products: BTreeMap::new(),
            maps: BTreeMap::new(),
            forms: BTreeMap::new(),
            claims: BTreeMap::new(),
        }
    }

    /// Basis named `prefix1, prefix2, ...`.
    pub fn with_numbered_basis(name: impl Into<String>, prefix: &str, dim: usize) -> Self {
        Self::new(name, (1..=dim).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    fn check_dim(&self, what: &str, name: &str, dim: usize) -> Result<()> {
        if dim != self.dim() {
            return Err(Error::argument(format!(
                "{what} {name:?} has dimension {dim}, algebra {:?} has dimension {}",
                self.name,
                self.dim()
            )));
        }
        Ok(())
    }

    pub fn add_product(&mut self, name: impl Into<String>, t: StructureTensor) -> Result<()> {
        let name = name.into();
        self.check_dim("product", &name, t.dim())?;
        self.products.insert(name, t);
        Ok(())
    }

    pub fn add_map(&mut self, name: impl Into<String>, m: LinearMap) -> Result<()> {
        let name = name.into();
        self.check_dim("map", &name, m.dim())?;
        self.maps.insert(name, m);
        Ok(())
    }

    pub fn add_form(&mut self, name: impl Into<String>, f: LinearForm) -> Result<()> {
        let name = name.into();
        self.check_dim("form", &name, f.dim())?;
        self.forms.insert(name, f);
        Ok(())
    }

    pub fn add_claim(&mut self, product: &str, property: impl Into<String>) -> Result<()> {
        if !self.products.contains_key(product) {
            return Err(Error::argument(format!("claim on unknown product {product:?}")));
        }
        self.claims.entry(product.to_string()).or_default().insert(property.into());
        Ok(())
    }

    pub fn product(&self, name: &str) -> Result<&StructureTensor> {
        self.products
            .get(name)
            .ok_or_else(|| Error::argument(format!("algebra {:?} has no product {name:?}", self.name)))
    }

    pub fn map(&self, name: &str) -> Result<&LinearMap> {
        self.maps
            .get(name)
            .ok_or_else(|| Error::argument(format!("algebra {:?} has no map {name:?}", self.name)))
    }

    pub fn form(&self, name: &str) -> Result<&LinearForm> {
        self.forms
            .get(name)
            .ok_or_else(|| Error::argument(format!("algebra {:?} has no form {name:?}", self.name)))
    }

    pub fn products(&self) -> &BTreeMap<String, StructureTensor> {
        &self.products
    }

    pub fn maps(&self) -> &BTreeMap<String, LinearMap> {
        &self.maps
    }

    pub fn forms(&self) -> &BTreeMap<String, LinearForm> {
        &self.forms
    }

    pub fn claims(&self, product: &str) -> impl Iterator<Item = &str> {
        self.claims.get(product).into_iter().flatten().map(String::as_str)
    }

    pub fn all_claims(&self) -> &BTreeMap<String, BTreeSet<String>> {
        &self.claims
    }

    /// The only product, when there is exactly one.
    pub fn sole_product(&self) -> Result<(&str, &StructureTensor)> {
        let mut it = self.products.iter();
        match (it.next(), it.next()) {
            (Some((n, t)), None) => Ok((n.as_str(), t)),
            _ => Err(Error::argument(format!(
                "algebra {:?} has {} products; name one explicitly",
                self.name,
                self.products.len()
            ))),
        }
    }
}
