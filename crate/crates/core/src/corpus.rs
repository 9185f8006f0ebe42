//! Built-in graphs shipped as edge-list files.

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::recognizer::SplitDecompWitness;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("no corpus entry named `{0}`")]
    Unknown(String),
    #[error("corpus entry `{name}`: {source}")]
    Parse {
        name: String,
        #[source]
        source: GraphError,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cone,
    Fan,
    Join,
    Lex,
    WeightedComplete,
    SixVertex,
    SplitDecomposable,
    Small,
}

#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub family: Family,
    pub text: &'static str,
}

impl CorpusEntry {
    /// First comment line of the file.
    pub fn description(&self) -> &'static str {
        self.text
            .lines()
            .find_map(|l| l.strip_prefix('#'))
            .map(str::trim)
            .unwrap_or("")
    }

    pub fn graph(&self) -> Result<Graph, CorpusError> {
        Graph::parse_edge_list(self.text).map_err(|source| CorpusError::Parse {
            name: self.name.to_string(),
            source,
        })
    }
}

macro_rules! entry {
    ($name:literal, $family:ident) => {
        CorpusEntry {
            name: $name,
            family: Family::$family,
            text: include_str!(concat!("../corpus/", $name, ".g")),
        }
    };
}

pub const ENTRIES: &[CorpusEntry] = &[
    entry!("cone_c4_k5", Cone),
    entry!("cone_c5_k5", Cone),
    entry!("cone_c6_k6", Cone),
    entry!("fan_p3_k4", Fan),
    entry!("fan_p4_k6", Fan),
    entry!("c4_join_c4bar", Join),
    entry!("k4_join_c6", Join),
    entry!("c4_join_k112", Join),
    entry!("pc3_join_k134", Join),
    entry!("p2_join_p3", Join),
    entry!("k4_join_p3", Join),
    entry!("c4_join_p3", Join),
    entry!("k3_lex_p3", Lex),
    entry!("k1234_lex_k2", Lex),
    entry!("wk4_5344", WeightedComplete),
    entry!("wk4_2244", WeightedComplete),
    entry!("six_exact_multi", SixVertex),
    entry!("six_exact_unique", SixVertex),
    entry!("six_gap", SixVertex),
    entry!("weighted13", SplitDecomposable),
    entry!("weighted13_extra", SplitDecomposable),
    entry!("c5", Small),
    entry!("k3", Small),
];

const WEIGHTED13_WITNESS: &str = include_str!("../corpus/weighted13_witness.json");

pub fn entry(name: &str) -> Result<&'static CorpusEntry, CorpusError> {
    let name = name.strip_suffix(".g").unwrap_or(name);
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CorpusError::Unknown(name.to_string()))
}

pub fn load(name: &str) -> Result<Graph, CorpusError> {
    entry(name)?.graph()
}

pub fn family(f: Family) -> impl Iterator<Item = &'static CorpusEntry> {
    ENTRIES.iter().filter(move |e| e.family == f)
}

pub fn weighted13_witness_json() -> &'static str {
    WEIGHTED13_WITNESS
}

pub fn weighted13_witness() -> SplitDecompWitness {
    serde_json::from_str(WEIGHTED13_WITNESS).expect("shipped witness parses")
}
