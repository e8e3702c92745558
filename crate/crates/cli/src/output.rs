use serde::{Deserialize, Serialize};

use regset::cayley::RegularityReport;
use regset::oracle::Pair;
use regset::sweep::render_pairs;

pub fn json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable output");
    out.push('\n');
    out
}

pub fn pair_text(pairs: Option<&[Pair]>) -> String {
    match pairs {
        Some(p) => render_pairs(p),
        None => "-".to_string(),
    }
}

/// Document written by `export --format json` and read back by `verify --from-file`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportDoc {
    pub group: String,
    pub subgroup: Vec<usize>,
    pub connection: Vec<usize>,
    pub connection_names: Vec<String>,
    pub regularity: RegularityReport,
    pub perfect_code: bool,
}

impl ExportDoc {
    /// The parts of the document that a re-check must reproduce.
    pub fn verdict(&self) -> (&str, Option<usize>, Option<usize>, bool) {
        (
            &self.regularity.verdict,
            self.regularity.alpha,
            self.regularity.beta,
            self.perfect_code,
        )
    }
}
