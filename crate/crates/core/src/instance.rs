use std::collections::BTreeMap;

use serde::Serialize;

use crate::matroid::Matroid;

/// Which fields the instance is known (or declared) to be representable over.
///
/// Checks whose theorems need a representability hypothesis only run when
/// the matching flag is set; the toolkit never decides representability.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Representability {
    pub real: bool,
    pub complex: bool,
    /// Flags come from the user rather than from a construction.
    pub declared_only: bool,
}

impl Representability {
    pub const REAL: Representability = Representability { real: true, complex: true, declared_only: false };
    pub const COMPLEX: Representability = Representability { real: false, complex: true, declared_only: false };
    pub const NONE: Representability = Representability { real: false, complex: false, declared_only: false };

    /// Flags of a construction combining several representable pieces.
    pub fn meet(self, other: Representability) -> Representability {
        Representability {
            real: self.real && other.real,
            complex: self.complex && other.complex,
            declared_only: self.declared_only || other.declared_only,
        }
    }

    /// Parses `real,complex` style lists; `none` and the empty string give no flags.
    pub fn parse_list(s: &str) -> Result<Representability, String> {
        let mut out = Representability { declared_only: true, ..Representability::NONE };
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok {
                // real-representable matroids are complex-representable
                "real" => {
                    out.real = true;
                    out.complex = true;
                }
                "complex" => out.complex = true,
                "none" => {}
                other => return Err(format!("unknown representability flag `{other}`")),
            }
        }
        Ok(out)
    }

    pub fn to_list(self) -> String {
        match (self.real, self.complex) {
            (true, _) => "real,complex".into(),
            (false, true) => "complex".into(),
            _ => "none".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceMeta {
    pub name: String,
    pub representability: Representability,
    pub params: BTreeMap<String, String>,
}

impl InstanceMeta {
    pub fn new(name: impl Into<String>, representability: Representability) -> Self {
        InstanceMeta { name: name.into(), representability, params: BTreeMap::new() }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_owned(), value.to_string());
        self
    }
}

/// A matroid plus the metadata the checks and reports need.
#[derive(Clone, Debug)]
pub struct Instance {
    pub meta: InstanceMeta,
    pub matroid: Matroid,
}

impl Instance {
    pub fn new(meta: InstanceMeta, matroid: Matroid) -> Self {
        Instance { meta, matroid }
    }

    pub fn name(&self) -> &str {
        &self.meta.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.meta.name = name.into();
        self
    }
}
