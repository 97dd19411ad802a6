//! The 1-form document: ordered variable names and one polynomial string
//! per variable.
//!
//! ```toml
//! vars = ["x0", "x1", "x2"]
//! coeffs = ["x1", "-x0", "0"]
//! ```

use serde::{Deserialize, Serialize};

use super::DiffForm;
use crate::error::{Error, Result};
use crate::poly::{parse_poly, VarNames};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneFormFile {
    pub vars: Vec<String>,
    pub coeffs: Vec<String>,
}

impl OneFormFile {
    pub fn from_form(form: &DiffForm, names: &VarNames) -> Result<Self> {
        if form.degree() != 1 {
            return Err(Error::Precondition(
                "only 1-forms have a file format".into(),
            ));
        }
        if names.len() != form.arity() {
            return Err(Error::DimensionMismatch(format!(
                "{} names for arity {}",
                names.len(),
                form.arity()
            )));
        }
        Ok(OneFormFile {
            vars: names.names().to_vec(),
            coeffs: form
                .one_form_coefficients()
                .iter()
                .map(|c| c.to_text(names))
                .collect(),
        })
    }

    pub fn names(&self) -> VarNames {
        VarNames::new(self.vars.clone())
    }

    pub fn to_form(&self) -> Result<DiffForm> {
        if self.vars.is_empty() || self.coeffs.len() != self.vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} variables",
                self.coeffs.len(),
                self.vars.len()
            )));
        }
        let names = self.names();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| parse_poly(c, &names))
            .collect::<Result<Vec<_>>>()?;
        DiffForm::one_form(coeffs)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("plain strings serialize")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse {
            pos: e.span().map_or(0, |s| s.start),
            msg: e.message().to_string(),
        })
    }
}
