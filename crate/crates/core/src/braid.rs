//! Braid words and the knot catalog format.

use std::fmt;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word in the Artin generators. Letter `i` is `σ_i`, `-i` is `σ_i^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CatalogEntry", into = "CatalogEntry")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
    name: Option<String>,
}

/// One line of a catalog file: `{"name": "4_1", "strands": 3, "word": [1,-2,1,-2]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub strands: usize,
    pub word: Vec<i32>,
}

impl TryFrom<CatalogEntry> for BraidWord {
    type Error = Error;
    fn try_from(e: CatalogEntry) -> Result<Self> {
        let b = BraidWord::new(e.strands, e.word)?;
        Ok(match e.name {
            Some(n) => b.with_name(n),
            None => b,
        })
    }
}

impl From<BraidWord> for CatalogEntry {
    fn from(b: BraidWord) -> Self {
        CatalogEntry {
            name: b.name,
            strands: b.strands,
            word: b.letters,
        }
    }
}

impl BraidWord {
    /// Validates the letters and requires the closure to be a knot.
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        let b = Self::new_unchecked_closure(strands, letters)?;
        let components = b.components();
        if components != 1 {
            return Err(Error::NotAKnot { components });
        }
        Ok(b)
    }

    /// Validates letters only; the closure may be a link.
    pub fn new_unchecked_closure(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::InvalidBraid(format!("need at least 2 strands, got {strands}")));
        }
        if strands > 8 {
            return Err(Error::InvalidBraid(format!("at most 8 strands supported, got {strands}")));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidBraid(format!(
                    "letter {l} out of range for {strands} strands"
                )));
            }
        }
        Ok(Self {
            strands,
            letters,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Sum of the letter signs.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// Number of cycles of the underlying permutation.
    pub fn components(&self) -> usize {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
            }
        }
        cycles
    }

    /// Reverses every letter sign; the closure is the mirror image.
    pub fn mirror(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().map(|l| -l).collect(),
            name: self.name.as_ref().map(|n| format!("{n}*")),
        }
    }

    pub fn unknot() -> Self {
        Self::new(2, vec![1]).expect("valid").with_name("0_1")
    }

    pub fn trefoil() -> Self {
        Self::new(2, vec![1, 1, 1]).expect("valid").with_name("3_1")
    }

    pub fn figure_eight() -> Self {
        Self::new(3, vec![1, -2, 1, -2]).expect("valid").with_name("4_1")
    }

    pub fn three_twist() -> Self {
        Self::new(3, vec![1, 1, 1, 2, -1, 2]).expect("valid").with_name("5_2")
    }

    pub fn stevedore() -> Self {
        Self::new(4, vec![1, 1, 2, -1, -3, 2, -3]).expect("valid").with_name("6_1")
    }

    /// The shipped catalog: unknot, 3_1, 4_1, 5_2, 6_1.
    pub fn standard_catalog() -> Vec<Self> {
        vec![
            Self::unknot(),
            Self::trefoil(),
            Self::figure_eight(),
            Self::three_twist(),
            Self::stevedore(),
        ]
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = &self.name {
            write!(f, "{n} ")?;
        }
        write!(f, "{:?} on {} strands", self.letters, self.strands)
    }
}

/// Reads a JSON-lines catalog; blank lines and `#` comments are skipped.
pub fn read_catalog(reader: impl BufRead) -> Result<Vec<BraidWord>> {
    let mut out = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let entry: CatalogEntry = serde_json::from_str(t)
            .map_err(|e| Error::Parse(format!("catalog line {}: {e}", lineno + 1)))?;
        out.push(BraidWord::try_from(entry)?);
    }
    Ok(out)
}

pub fn write_catalog(knots: &[BraidWord]) -> String {
    knots
        .iter()
        .map(|k| serde_json::to_string(k).expect("catalog entries serialize") + "\n")
        .collect()
}
