//! Optional TOML configuration presetting conventions and vanishing flags.
//!
//! ```toml
//! cone_shift = "paper"          # or "derived"
//! cone_square = [1, 2]
//! negative_weight_vanishing = true
//! mw_subdiagonal_vanishing = true
//! format = "json"               # plain | json | csv | latex
//! ```
//!
//! Every key is optional; command-line flags override whatever is set here.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::motive::{ConeShift, ConeSquare};

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub cone_shift: Option<ConeShift>,
    pub cone_square: Option<ConeSquare>,
    pub negative_weight_vanishing: Option<bool>,
    pub mw_subdiagonal_vanishing: Option<bool>,
    pub format: Option<String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}
