//! Problem instances and their JSON form.
//!
//! ```json
//! {"matroids": [{"type": "uniform", "elements": ["a", "b", "c"], "rank": 1}, ...],
//!  "source": [["a"], ...],
//!  "target": [["b"], ...]}
//! ```

use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Infeasibility, Result};
use crate::matroid::{Matroid, MatroidSpec};
use crate::sequence::BasisSequence;

/// Matroids with validated source and target sequences.
#[derive(Clone, Debug)]
pub struct ProblemInstance {
    pub matroids: Vec<Matroid>,
    pub source: BasisSequence,
    pub target: BasisSequence,
}

impl PartialEq for ProblemInstance {
    fn eq(&self, other: &Self) -> bool {
        self.matroids.len() == other.matroids.len()
            && self.matroids.iter().zip(&other.matroids).all(|(a, b)| a.spec() == b.spec())
            && self.source == other.source
            && self.target == other.target
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    matroids: Vec<MatroidSpec>,
    source: Vec<Vec<ElementId>>,
    target: Vec<Vec<ElementId>>,
}

fn to_sequence(which: &'static str, raw: Vec<Vec<ElementId>>) -> Result<BasisSequence> {
    let mut bases = Vec::with_capacity(raw.len());
    for (index, labels) in raw.into_iter().enumerate() {
        let mut set = ElementSet::new();
        for e in labels {
            if let Some(element) = set.replace(e) {
                return Err(Infeasibility::Duplicate { index, element }.of(which));
            }
        }
        bases.push(set);
    }
    Ok(BasisSequence::new(bases))
}

impl ProblemInstance {
    /// Validates `source` and `target` against `matroids`.
    pub fn new(matroids: Vec<Matroid>, source: BasisSequence, target: BasisSequence) -> Result<Self> {
        source.check_feasible(&matroids).map_err(|e| e.of("source"))?;
        target.check_feasible(&matroids).map_err(|e| e.of("target"))?;
        Ok(ProblemInstance { matroids, source, target })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawInstance = serde_json::from_str(text)?;
        let matroids = raw
            .matroids
            .into_iter()
            .enumerate()
            .map(|(i, spec)| {
                Matroid::new(spec).map_err(|e| Error::Instance(format!("matroid {i}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let source = to_sequence("source", raw.source)?;
        let target = to_sequence("target", raw.target)?;
        ProblemInstance::new(matroids, source, target)
    }

    pub fn to_json(&self) -> Result<String> {
        let raw = RawInstance {
            matroids: self.matroids.iter().map(|m| m.spec().clone()).collect(),
            source: self.source.bases().iter().map(|b| b.iter().cloned().collect()).collect(),
            target: self.target.bases().iter().map(|b| b.iter().cloned().collect()).collect(),
        };
        let mut s = serde_json::to_string_pretty(&raw)?;
        s.push('\n');
        Ok(s)
    }

    /// Number of elements in the union of the ground sets.
    pub fn ground_size(&self) -> usize {
        crate::matroid::union_ground(&self.matroids).len()
    }
}

/// Reads and validates an instance.
pub fn load_instance(mut reader: impl Read) -> Result<ProblemInstance> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    ProblemInstance::from_json(&text)
}

pub fn save_instance(inst: &ProblemInstance) -> Result<String> {
    inst.to_json()
}
