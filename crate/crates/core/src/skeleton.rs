//! Skeleton codes: the binary codes whose words become identifying vectors
//! in the multilevel construction. Constant-weight lexicodes, weight classes
//! of two fixture Hamming codes, and user-supplied word lists.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::BitWord;

/// Scan order for the greedy lexicode. The constructions enumerate
/// candidates in descending lexicographic order (1^k 0^(n-k) first), which
/// reproduces the published skeletons; ascending order is available for
/// experimentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ScanOrder {
    #[default]
    DescendingLex,
    AscendingLex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Lexicode,
    HammingFixture(String),
    User,
}

/// A binary code with verified minimum Hamming distance, used as the first
/// level of the multilevel construction.
#[derive(Clone, PartialEq, Eq)]
pub struct SkeletonCode {
    n: usize,
    declared_distance: usize,
    words: Vec<BitWord>,
    constant_weight: Option<usize>,
    provenance: Provenance,
}

impl SkeletonCode {
    /// Wrap a word list; the declared distance is verified exhaustively and
    /// a violating pair is reported.
    pub fn new(
        n: usize,
        declared_distance: usize,
        words: Vec<BitWord>,
        provenance: Provenance,
    ) -> Result<SkeletonCode> {
        if words.iter().any(|w| w.len() != n) {
            return Err(Error::InvalidParameter(format!(
                "all skeleton words must have length {n}"
            )));
        }
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                let d = words[i].hamming(&words[j]);
                if d < declared_distance {
                    return Err(Error::InvalidParameter(format!(
                        "words {} and {} are at distance {d} < {declared_distance}",
                        words[i], words[j]
                    )));
                }
            }
        }
        let constant_weight = match words.first() {
            Some(first) if words.iter().all(|w| w.weight() == first.weight()) => {
                Some(first.weight())
            }
            _ => None,
        };
        Ok(SkeletonCode { n, declared_distance, words, constant_weight, provenance })
    }

    /// Greedy constant-weight lexicode: scan all weight-k words in the given
    /// order and keep each word compatible with everything kept so far.
    /// Deterministic; distinct equal-weight words are always at even
    /// distance, so the odd-d result coincides with d+1.
    pub fn lexicode_with_order(n: usize, k: usize, d: usize, order: ScanOrder) -> SkeletonCode {
        let mut candidates = BitWord::all_of_weight(n, k);
        if order == ScanOrder::AscendingLex {
            candidates.reverse();
        }
        let mut words: Vec<BitWord> = Vec::new();
        for cand in candidates {
            if words.iter().all(|w| w.hamming(&cand) >= d) {
                words.push(cand);
            }
        }
        SkeletonCode {
            n,
            declared_distance: d,
            words,
            constant_weight: Some(k),
            provenance: Provenance::Lexicode,
        }
    }

    pub fn lexicode(n: usize, k: usize, d: usize) -> SkeletonCode {
        Self::lexicode_with_order(n, k, d, ScanOrder::DescendingLex)
    }

    /// Weight class (or the whole word list) of a fixture Hamming code; the
    /// parity-check matrices are shipped as data files.
    pub fn hamming_weight_class(fixture: &str, weight: Option<usize>) -> Result<SkeletonCode> {
        let raw = match fixture {
            "extended_hamming_8_4_4" => include_str!("../data/extended_hamming_8_4_4.txt"),
            "hamming_7_4_3" => include_str!("../data/hamming_7_4_3.txt"),
            _ => return Err(Error::UnknownFixture(fixture.to_string())),
        };
        let checks: Vec<BitWord> =
            raw.lines().map(BitWord::parse).collect::<Result<Vec<_>>>()?;
        let n = checks[0].len();
        // enumerate the kernel of the parity-check matrix
        let mut all: Vec<BitWord> = Vec::new();
        for bits in 0u64..(1 << n) {
            let w = BitWord::new(n, bits);
            let in_code = checks.iter().all(|h| {
                (0..n).filter(|&i| h.get(i) && w.get(i)).count() % 2 == 0
            });
            if in_code {
                all.push(w);
            }
        }
        let mut words: Vec<BitWord> = match weight {
            Some(k) => all.into_iter().filter(|w| w.weight() == k).collect(),
            None => all,
        };
        // descending lexicographic order, as the published tables list them
        words.sort_by(|a, b| b.cmp(a));
        let declared = min_pairwise_distance(&words).unwrap_or(usize::MAX);
        Ok(SkeletonCode {
            n,
            declared_distance: declared,
            words,
            constant_weight: weight,
            provenance: Provenance::HammingFixture(fixture.to_string()),
        })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word_length(&self) -> usize {
        self.n
    }

    pub fn min_distance(&self) -> usize {
        self.declared_distance
    }

    pub fn words(&self) -> &[BitWord] {
        &self.words
    }

    pub fn constant_weight(&self) -> Option<usize> {
        self.constant_weight
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Exhaustive pairwise minimum distance; `None` for codes with fewer
    /// than two words (conventionally infinite).
    pub fn verify_min_distance(&self) -> Option<usize> {
        min_pairwise_distance(&self.words)
    }

    /// Nearest codeword by Hamming distance. Ties are broken by list order
    /// and flagged.
    pub fn decode(&self, received: &BitWord) -> Result<SkeletonDecode> {
        if received.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "received word length {}, code length {}",
                received.len(),
                self.n
            )));
        }
        let mut best: Option<usize> = None;
        let mut best_dist = usize::MAX;
        let mut tie = false;
        for (i, w) in self.words.iter().enumerate() {
            let d = w.hamming(received);
            if d < best_dist {
                best_dist = d;
                best = Some(i);
                tie = false;
            } else if d == best_dist {
                tie = true;
            }
        }
        let index = best.ok_or_else(|| Error::InvalidParameter("empty skeleton code".into()))?;
        Ok(SkeletonDecode { codeword: self.words[index], distance: best_dist, tie })
    }
}

impl fmt::Debug for SkeletonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SkeletonCode(n={}, d={}, {} words, {:?})",
            self.n,
            self.declared_distance,
            self.words.len(),
            self.provenance
        )
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SkeletonDecode {
    pub codeword: BitWord,
    pub distance: usize,
    /// Another codeword sits at the same distance.
    pub tie: bool,
}

fn min_pairwise_distance(words: &[BitWord]) -> Option<usize> {
    if words.len() < 2 {
        return None;
    }
    let mut min = usize::MAX;
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            min = min.min(words[i].hamming(&words[j]));
        }
    }
    Some(min)
}
