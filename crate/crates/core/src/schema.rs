//! JSON instance files.
//!
//! ```json
//! {"base": {"type": "projective_product", "dims": [1]},
//!  "bundle": {"roots": [[0], [0]]},
//!  "twist": [0], "n": 2}
//! ```

use serde::{Deserialize, Serialize};

use crate::quot2::{Quot2Family, Quot2Instance};
use crate::varieties::{Divisor, Space, SplitBundle};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum BaseSpec {
    ProjectiveProduct {
        dims: Vec<u32>,
    },
    ProjectiveBundle {
        base: Box<BaseSpec>,
        bundle: BundleSpec,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleSpec {
    pub roots: Vec<Vec<i64>>,
}

/// A parsed instance file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub base: BaseSpec,
    pub bundle: BundleSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarization: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisors: Option<Vec<Vec<i64>>>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let inst: InstanceFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn dims(&self) -> Result<&[u32]> {
        match &self.base {
            BaseSpec::ProjectiveProduct { dims } => Ok(dims),
            BaseSpec::ProjectiveBundle { .. } => Err(Error::Unsupported(
                "the base must be a product of projective spaces".into(),
            )),
        }
    }

    fn check_len(&self, what: &str, v: &[i64]) -> Result<()> {
        let k = self.dims()?.len();
        if v.len() != k {
            return Err(Error::Parse(format!(
                "{what} has {} coefficients, base has {k} factors",
                v.len()
            )));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let dims = self.dims()?;
        if dims.is_empty() {
            return Err(Error::Parse("base needs at least one factor".into()));
        }
        if self.bundle.roots.is_empty() {
            return Err(Error::Parse("bundle needs at least one root".into()));
        }
        for root in &self.bundle.roots {
            self.check_len("bundle root", root)?;
        }
        for (what, v) in [("twist", &self.twist), ("polarization", &self.polarization)] {
            if let Some(v) = v {
                self.check_len(what, v)?;
            }
        }
        for d in self.divisors.iter().flatten() {
            self.check_len("divisor", d)?;
        }
        Ok(())
    }

    pub fn space(&self) -> Result<Space> {
        Space::projective_product(self.dims()?)
    }

    pub fn bundle(&self) -> Result<SplitBundle> {
        SplitBundle::from_int_roots(&self.bundle.roots)
    }

    pub fn twist(&self) -> Result<Divisor> {
        let k = self.dims()?.len();
        Ok(self
            .twist
            .as_deref()
            .map(Divisor::from_ints)
            .unwrap_or_else(|| Divisor::zero(k)))
    }

    pub fn polarization(&self) -> Option<Divisor> {
        self.polarization.as_deref().map(Divisor::from_ints)
    }

    pub fn divisors(&self) -> Option<Vec<Divisor>> {
        self.divisors
            .as_ref()
            .map(|ds| ds.iter().map(|d| Divisor::from_ints(d)).collect())
    }

    pub fn family(&self) -> Result<Quot2Family> {
        Ok(Quot2Family::new(
            self.dims()?,
            self.bundle()?,
            self.twist()?,
            self.polarization(),
        ))
    }

    /// The instance at `n` (the file's `n` if `None`, else `0`).
    pub fn instance(&self, n: Option<i64>) -> Result<Quot2Instance> {
        self.family()?.at(n.or(self.n).unwrap_or(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_file() {
        let f = InstanceFile::parse(
            r#"{"base":{"type":"projective_product","dims":[1]},"bundle":{"roots":[[0],[0]]},"twist":[0]}"#,
        )
        .unwrap();
        assert_eq!(f.dims().unwrap(), &[1]);
        assert_eq!(f.bundle().unwrap().rank(), 2);
        let inst = f.instance(Some(2)).unwrap();
        assert_eq!(inst.lc1, Divisor::from_ints(&[2]));
    }

    #[test]
    fn rejects_bad_files() {
        for bad in [
            r#"{"base":{"type":"projective_product","dims":[1]},"bundle":{"roots":[[0,1]]}}"#,
            r#"{"base":{"type":"projective_product","dims":[1]},"bundle":{"roots":[]}}"#,
            r#"{"base":{"type":"grassmannian","dims":[1]},"bundle":{"roots":[[0]]}}"#,
            r#"{"base":{"type":"projective_product","dims":[1]},"bundle":{"roots":[[0]]},"extra":1}"#,
            r#"{"base":{"type":"projective_bundle","base":{"type":"projective_product","dims":[1]},"bundle":{"roots":[[0]]}},"bundle":{"roots":[[0]]}}"#,
            "not json",
        ] {
            assert!(InstanceFile::parse(bad).is_err(), "{bad}");
        }
    }
}
