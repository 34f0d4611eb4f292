//! Reference programs bundled with the library, each with its scripted
//! answers and the transcript it must produce.

use crate::interp::{run, SessionResult, DEFAULT_STEP_BUDGET};
use crate::project::{parse_project, Project};

/// Seed every corpus run uses.
pub const CORPUS_SEED: u64 = 0;

#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub file: &'static str,
    pub document: &'static str,
    pub inputs: &'static str,
    pub golden: &'static str,
}

macro_rules! entry {
    ($name:literal, $project:literal) => {
        CorpusEntry {
            name: $name,
            file: concat!($project, ".blockdsa.json"),
            document: include_str!(concat!("../corpus/", $project, ".blockdsa.json")),
            inputs: include_str!(concat!("../corpus/", $name, ".inputs")),
            golden: include_str!(concat!("../corpus/", $name, ".golden.txt")),
        }
    };
}

static CORPUS: &[CorpusEntry] = &[
    entry!("lab1", "lab1"),
    entry!("lab1-missing", "lab1"),
    entry!("lab2", "lab2"),
    entry!("lab3", "lab3"),
    entry!("max-element", "max-element"),
    entry!("frequency", "frequency"),
    entry!("set-chain", "set-chain"),
    entry!("error-messages", "error-messages"),
    entry!("contains-misuse", "contains-misuse"),
    entry!("quiz2-groceries", "quiz2-groceries"),
];

pub fn corpus() -> &'static [CorpusEntry] {
    CORPUS
}

pub fn corpus_entry(name: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.name == name)
}

/// One answer per line.
pub fn parse_inputs(text: &str) -> Vec<String> {
    text.lines().map(str::to_owned).collect()
}

impl CorpusEntry {
    pub fn project(&self) -> Project {
        parse_project(self.document.as_bytes())
            .unwrap_or_else(|d| panic!("bundled program {} does not parse: {d:?}", self.name))
    }

    pub fn inputs(&self) -> Vec<String> {
        parse_inputs(self.inputs)
    }

    pub fn run(&self) -> SessionResult {
        run(&self.project(), &self.inputs(), CORPUS_SEED, DEFAULT_STEP_BUDGET)
    }

    /// Runs the program and compares the text transcript with the golden one.
    pub fn check(&self) -> Result<SessionResult, String> {
        let result = self.run();
        let actual = result.render_text();
        if actual == self.golden {
            Ok(result)
        } else {
            Err(actual)
        }
    }
}
