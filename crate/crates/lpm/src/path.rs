use std::fmt;

use crate::error::{Error, Result};

/// A single step of a monotone lattice path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    East,
    North,
}

impl Step {
    pub fn letter(self) -> char {
        match self {
            Step::East => 'E',
            Step::North => 'N',
        }
    }
}

/// A monotone lattice path from the origin, encoded as a word over {N, E}.
///
/// The endpoint is `(east_count, north_count)` and is derived from the word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn from_steps(steps: Vec<Step>) -> Self {
        LatticePath { steps }
    }

    /// Parses a step word such as `"EENN"`. Case-insensitive; rejects empty
    /// input and foreign characters, naming the offending 1-based position.
    pub fn parse(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::Parse { position: 1, message: "empty step word".into() });
        }
        let mut steps = Vec::with_capacity(text.len());
        for (i, c) in text.chars().enumerate() {
            match c.to_ascii_uppercase() {
                'E' => steps.push(Step::East),
                'N' => steps.push(Step::North),
                other => {
                    return Err(Error::Parse {
                        position: i + 1,
                        message: format!("unexpected character '{other}', expected 'N' or 'E'"),
                    })
                }
            }
        }
        Ok(LatticePath { steps })
    }

    /// Reconstructs a path of `len` steps from the 1-based positions of its
    /// North steps.
    pub fn from_north_positions(len: u32, positions: &[u32]) -> Result<Self> {
        let mut steps = vec![Step::East; len as usize];
        for &p in positions {
            if p == 0 || p > len {
                return Err(Error::UnknownElement { element: p });
            }
            steps[p as usize - 1] = Step::North;
        }
        Ok(LatticePath { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> u32 {
        self.steps.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Number of East steps (the endpoint's x coordinate, `m`).
    pub fn east_count(&self) -> u32 {
        self.steps.iter().filter(|s| **s == Step::East).count() as u32
    }

    /// Number of North steps (the endpoint's y coordinate, `r`).
    pub fn north_count(&self) -> u32 {
        self.steps.iter().filter(|s| **s == Step::North).count() as u32
    }

    /// 1-based positions of the North steps, ascending.
    pub fn north_positions(&self) -> Vec<u32> {
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Step::North)
            .map(|(i, _)| i as u32 + 1)
            .collect()
    }

    /// `prefix_norths()[k]` is the number of North steps among the first `k`
    /// steps; the vector has length `len() + 1`.
    pub fn prefix_norths(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut n = 0;
        out.push(0);
        for s in &self.steps {
            if *s == Step::North {
                n += 1;
            }
            out.push(n);
        }
        out
    }

    /// Swaps N and E in every step (reflection along the diagonal x = y).
    pub fn reflect(&self) -> LatticePath {
        LatticePath {
            steps: self
                .steps
                .iter()
                .map(|s| match s {
                    Step::East => Step::North,
                    Step::North => Step::East,
                })
                .collect(),
        }
    }

    pub fn word(&self) -> String {
        self.steps.iter().map(|s| s.letter()).collect()
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}
