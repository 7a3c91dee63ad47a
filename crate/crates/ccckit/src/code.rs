//! Sequences, codes, code sets, and families of code sets.
//!
//! Geometry is enforced at construction: a [`Code`] holds equal-length
//! rows, a [`CodeSet`] holds same-shaped codes over one declared
//! alphabet, and a [`CodeFamily`] holds same-shaped sets. Downstream
//! operations rely on these invariants and skip re-validation.

use crate::alphabet::{Alphabet, Entry};
use crate::error::{Error, Result};
use crate::partition::GapPartition;
use crate::recipe::Recipe;

/// A finite, non-empty symbol sequence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sequence(Vec<Entry>);

impl Sequence {
    pub fn new(entries: Vec<Entry>) -> Result<Sequence> {
        if entries.is_empty() {
            return Err(Error::Empty { what: "sequence" });
        }
        Ok(Sequence(entries))
    }

    /// Parses sign notation: `+` is 1, `-` is -1, `0` is zero.
    pub fn from_signs(s: &str) -> Result<Sequence> {
        let entries = s
            .chars()
            .map(|c| match c {
                '+' => Ok(Entry::ONE),
                '-' => Ok(Entry::MINUS_ONE),
                '0' => Ok(Entry::Zero),
                other => Err(Error::parse(
                    format!("sign string {s:?}"),
                    format!("unexpected character {other:?}"),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        Sequence::new(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; emptiness is rejected at construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[Entry] {
        &self.0
    }

    pub fn zero_count(&self) -> usize {
        self.0.iter().filter(|e| e.is_zero()).count()
    }

    /// Whether every entry embeds into the Gaussian integers.
    pub fn is_gaussian(&self) -> bool {
        self.0.iter().all(|e| e.as_gaussian().is_some())
    }

    /// Entrywise product with a scalar.
    pub fn scaled(&self, by: Entry) -> Sequence {
        Sequence(self.0.iter().map(|&e| by * e).collect())
    }
}

impl std::ops::Index<usize> for Sequence {
    type Output = Entry;

    fn index(&self, i: usize) -> &Entry {
        &self.0[i]
    }
}

/// A complementary code: a stack of equal-length rows whose row-wise
/// correlations are always summed together.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Code {
    rows: Vec<Sequence>,
}

impl Code {
    pub fn new(rows: Vec<Sequence>) -> Result<Code> {
        let Some(first) = rows.first() else {
            return Err(Error::Empty { what: "code" });
        };
        let len = first.len();
        for (m, row) in rows.iter().enumerate() {
            if row.len() != len {
                return Err(Error::shape(format!(
                    "row {m} has length {}, expected {len}",
                    row.len()
                )));
            }
        }
        Ok(Code { rows })
    }

    /// Parses one sign string per row.
    pub fn from_signs(rows: &[&str]) -> Result<Code> {
        Code::new(
            rows.iter()
                .map(|r| Sequence::from_signs(r))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn rows(&self) -> &[Sequence] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn seq_len(&self) -> usize {
        self.rows[0].len()
    }

    /// Zeros summed over all rows.
    pub fn zero_count(&self) -> usize {
        self.rows.iter().map(Sequence::zero_count).sum()
    }

    pub fn is_gaussian(&self) -> bool {
        self.rows.iter().all(Sequence::is_gaussian)
    }

    /// Rowwise product with a scalar.
    pub fn scaled(&self, by: Entry) -> Code {
        Code {
            rows: self.rows.iter().map(|r| r.scaled(by)).collect(),
        }
    }
}

/// A set of same-shaped codes over a declared alphabet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CodeSet {
    codes: Vec<Code>,
    alphabet: Alphabet,
}

impl CodeSet {
    pub fn new(codes: Vec<Code>, alphabet: Alphabet) -> Result<CodeSet> {
        let Some(first) = codes.first() else {
            return Err(Error::Empty { what: "code set" });
        };
        let (rows, len) = (first.num_rows(), first.seq_len());
        for (k, code) in codes.iter().enumerate() {
            if code.num_rows() != rows || code.seq_len() != len {
                return Err(Error::shape(format!(
                    "code {k} is {}x{}, expected {rows}x{len}",
                    code.num_rows(),
                    code.seq_len()
                )));
            }
            for (m, row) in code.rows().iter().enumerate() {
                for (i, &e) in row.entries().iter().enumerate() {
                    if !alphabet.contains(e) {
                        return Err(Error::AlphabetViolation {
                            locus: format!("code {k}, row {m}, position {i}"),
                            detail: format!("{e} is not in the {alphabet} alphabet"),
                        });
                    }
                }
            }
        }
        Ok(CodeSet { codes, alphabet })
    }

    pub fn codes(&self) -> &[Code] {
        &self.codes
    }

    pub fn code(&self, k: usize) -> &Code {
        &self.codes[k]
    }

    pub fn num_codes(&self) -> usize {
        self.codes.len()
    }

    pub fn code_rows(&self) -> usize {
        self.codes[0].num_rows()
    }

    pub fn seq_len(&self) -> usize {
        self.codes[0].seq_len()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_gaussian(&self) -> bool {
        self.codes.iter().all(Code::is_gaussian)
    }

    /// The shared per-code zero count, if uniform across the set.
    pub fn uniform_zero_count(&self) -> Option<usize> {
        let eps = self.codes[0].zero_count();
        self.codes
            .iter()
            .all(|c| c.zero_count() == eps)
            .then_some(eps)
    }

    /// Tolerance for comparing this set's code-level correlation values.
    /// Zero for exact alphabets; otherwise scaled to the largest sum a
    /// code pair can produce.
    pub fn tolerance(&self) -> f64 {
        self.alphabet
            .tolerance((self.code_rows() * self.seq_len()) as f64)
    }
}

/// How a generated family came to be: the recipe that produced it plus
/// the resolved choices, enough to reproduce it or predict its
/// zero-correlation zone.
#[derive(Clone, PartialEq, Debug, serde::Serialize, serde::Deserialize)]
pub struct FamilyProvenance {
    pub recipe: Recipe,
    /// Row length of the seed the recipe resolved to.
    pub seed_len: usize,
    pub partition: GapPartition,
    /// One image vector per constructed set.
    pub perms: Vec<Vec<usize>>,
}

/// An ordered family of same-shaped code sets, typically one per
/// permutation of a shared seed.
#[derive(Clone, PartialEq, Debug)]
pub struct CodeFamily {
    sets: Vec<CodeSet>,
    provenance: Option<FamilyProvenance>,
}

impl CodeFamily {
    pub fn new(sets: Vec<CodeSet>) -> Result<CodeFamily> {
        let Some(first) = sets.first() else {
            return Err(Error::Empty { what: "code family" });
        };
        let shape = (
            first.num_codes(),
            first.code_rows(),
            first.seq_len(),
            first.alphabet(),
        );
        for (j, set) in sets.iter().enumerate() {
            let got = (
                set.num_codes(),
                set.code_rows(),
                set.seq_len(),
                set.alphabet(),
            );
            if got != shape {
                return Err(Error::shape(format!(
                    "set {j} has shape {}x{}x{} over {}, expected {}x{}x{} over {}",
                    got.0, got.1, got.2, got.3, shape.0, shape.1, shape.2, shape.3,
                )));
            }
        }
        Ok(CodeFamily {
            sets,
            provenance: None,
        })
    }

    pub fn with_provenance(mut self, provenance: FamilyProvenance) -> CodeFamily {
        self.provenance = Some(provenance);
        self
    }

    pub fn sets(&self) -> &[CodeSet] {
        &self.sets
    }

    pub fn set(&self, j: usize) -> &CodeSet {
        &self.sets[j]
    }

    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn provenance(&self) -> Option<&FamilyProvenance> {
        self.provenance.as_ref()
    }

    /// All codes of all sets pooled into one set, in family order.
    pub fn flatten(&self) -> CodeSet {
        let codes = self
            .sets
            .iter()
            .flat_map(|s| s.codes().iter().cloned())
            .collect();
        // Geometry was checked set-by-set; pooling cannot break it.
        CodeSet {
            codes,
            alphabet: self.sets[0].alphabet(),
        }
    }
}
