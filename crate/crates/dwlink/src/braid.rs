//! Braid words and the Gittings-notation parser.
//!
//! Letters: `a`, `b`, ... are the generators `σ_1, σ_2, ...` (right-handed
//! crossings) and `A`, `B`, ... their inverses. Words are read in letter
//! order, braid diagrams from the bottom up.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BraidError {
    #[error("unknown braid letter {0:?}")]
    UnknownLetter(char),
    #[error("generator σ_{0} requires at least {1} strands, word has {2}")]
    GeneratorOutOfRange(usize, usize, usize),
    #[error("strand count must be at least 1")]
    NoStrands,
}

/// One crossing: `index` is the 1-based generator subscript.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BraidLetter {
    pub index: usize,
    pub positive: bool,
}

impl BraidLetter {
    pub fn sign(&self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for l in &letters {
            if l.index == 0 || l.index >= strands {
                return Err(BraidError::GeneratorOutOfRange(l.index, l.index + 1, strands));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// The identity braid on `strands` strands.
    pub fn empty(strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, Vec::new())
    }

    /// Parses Gittings notation: `a ↦ σ_1`, `A ↦ σ_1^{-1}`, `b ↦ σ_2`, ...
    pub fn parse_gittings(word: &str, strands: usize) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        let mut letters = Vec::with_capacity(word.len());
        for ch in word.chars() {
            let (base, positive) = match ch {
                'a'..='z' => (ch as u8 - b'a', true),
                'A'..='Z' => (ch as u8 - b'A', false),
                _ => return Err(BraidError::UnknownLetter(ch)),
            };
            let index = base as usize + 1;
            if index >= strands {
                return Err(BraidError::GeneratorOutOfRange(index, index + 1, strands));
            }
            letters.push(BraidLetter { index, positive });
        }
        Ok(BraidWord { strands, letters })
    }

    /// Renders back to Gittings notation.
    pub fn to_gittings(&self) -> String {
        self.letters
            .iter()
            .map(|l| {
                let base = if l.positive { b'a' } else { b'A' };
                (base + (l.index - 1) as u8) as char
            })
            .collect()
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Exponent sum of the word.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(BraidLetter::sign).sum()
    }

    /// The underlying permutation: `perm[s]` is the top position reached by
    /// the strand entering at bottom position `s`.
    pub fn permutation(&self) -> Vec<usize> {
        // track which strand occupies each position while crossing upwards
        let mut at = (0..self.strands).collect::<Vec<_>>();
        for l in &self.letters {
            at.swap(l.index - 1, l.index);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    /// Cycles of the closure: each component as a sorted list of strand
    /// indices, components ordered by least strand.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut out = Vec::new();
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut s = start;
            while !seen[s] {
                seen[s] = true;
                cycle.push(s);
                s = perm[s];
            }
            cycle.sort_unstable();
            out.push(cycle);
        }
        out
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| BraidLetter {
                    index: l.index,
                    positive: !l.positive,
                })
                .collect(),
        }
    }

    /// `c⁻¹ · self · c` (Markov-conjugation of the word).
    pub fn conjugated_by(&self, c: &BraidWord) -> Self {
        debug_assert_eq!(self.strands, c.strands);
        let mut letters = c.inverse().letters;
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&c.letters);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }
}
