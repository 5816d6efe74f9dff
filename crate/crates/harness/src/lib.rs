//! File formats, instance generators, experiment runs and verification
//! suites behind the `tdkernel` binary.

pub mod error;
pub mod experiment;
pub mod generate;
pub mod io;
pub mod verify;

pub use error::HarnessError;
pub use experiment::{
    run_all, run_instance, Capacity, ExperimentRecord, InstanceInput, RunOutcome, RunSpec,
};
pub use generate::Family;
pub use verify::{verify, Lemma, LemmaReport, VerifyConfig};

use std::path::Path;

pub fn read_file(path: &Path) -> Result<String, HarnessError> {
    std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_file(path: &Path, text: &str) -> Result<(), HarnessError> {
    std::fs::write(path, text).map_err(|source| HarnessError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_graph(path: &Path) -> Result<tdkernel::Graph, HarnessError> {
    io::parse_gr(&read_file(path)?).map_err(|source| HarnessError::Parse {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_td(
    path: &Path,
    g: &tdkernel::Graph,
) -> Result<tdkernel::TreeDecomposition, HarnessError> {
    io::parse_td(&read_file(path)?, g).map_err(|source| HarnessError::Parse {
        path: path.display().to_string(),
        source,
    })
}
