//! Document formats: JSON for code sets, families, and recipes, CSV
//! for correlation profiles.
//!
//! Documents are pretty-printed JSON with a `kind` discriminator and a
//! `format_version`. Ternary entries are written as the integers -1, 0,
//! 1; other alphabets write `[re, im]` pairs, which load back by
//! snapping to the nearest admitted root of unity within 1e-9. Loading
//! a document written by this module reproduces the in-memory value
//! bit for bit.

use std::path::Path;

use crate::alphabet::{Alphabet, Entry};
use crate::code::{Code, CodeFamily, CodeSet, FamilyProvenance, Sequence};
use crate::corr::{CorrelationProfile, CorrelationValue};
use crate::error::{Error, Result};
use crate::recipe::Recipe;

pub const FORMAT_VERSION: u32 = 1;

#[derive(serde::Serialize, serde::Deserialize)]
struct AlphabetDoc {
    kind: String,
    q: u32,
}

impl From<Alphabet> for AlphabetDoc {
    fn from(a: Alphabet) -> AlphabetDoc {
        match a {
            Alphabet::Ternary => AlphabetDoc {
                kind: "ternary".into(),
                q: 2,
            },
            Alphabet::QaryWithZero { q } => AlphabetDoc {
                kind: "qary-with-zero".into(),
                q,
            },
        }
    }
}

impl AlphabetDoc {
    fn decode(&self) -> Result<Alphabet> {
        match self.kind.as_str() {
            "ternary" => {
                if self.q != 2 {
                    return Err(Error::parse(
                        "params.alphabet",
                        format!("ternary alphabets have q = 2, not {}", self.q),
                    ));
                }
                Ok(Alphabet::Ternary)
            }
            "qary-with-zero" => {
                if self.q == 0 {
                    return Err(Error::parse("params.alphabet", "q must be positive"));
                }
                Ok(Alphabet::QaryWithZero { q: self.q })
            }
            other => Err(Error::parse(
                "params.alphabet",
                format!("unknown alphabet kind {other:?}"),
            )),
        }
    }
}

/// One stored symbol: an integer for ternary documents, an `[re, im]`
/// pair otherwise.
#[derive(serde::Serialize, serde::Deserialize)]
#[serde(untagged)]
enum EntryRepr {
    Int(i64),
    Pair(f64, f64),
}

impl EntryRepr {
    fn encode(e: Entry, alphabet: Alphabet) -> EntryRepr {
        match (alphabet, e.as_int()) {
            (Alphabet::Ternary, Some(v)) => EntryRepr::Int(v),
            _ => {
                let c = e.value();
                EntryRepr::Pair(c.re, c.im)
            }
        }
    }

    fn decode(&self, alphabet: Alphabet, locus: &str) -> Result<Entry> {
        match (self, alphabet) {
            (EntryRepr::Int(v), _) => Entry::from_int(*v).ok_or_else(|| {
                Error::parse(locus, format!("integer entry {v} is not -1, 0, or 1"))
            }),
            (EntryRepr::Pair(..), Alphabet::Ternary) => Err(Error::parse(
                locus,
                "ternary documents store entries as integers",
            )),
            (EntryRepr::Pair(re, im), Alphabet::QaryWithZero { q }) => {
                snap_to_root(*re, *im, q, locus)
            }
        }
    }
}

/// Maps `(re, im)` to zero or the nearest q-th root of unity, rejecting
/// anything farther than 1e-9 away.
fn snap_to_root(re: f64, im: f64, q: u32, locus: &str) -> Result<Entry> {
    const SNAP: f64 = 1e-9;
    let norm = re.hypot(im);
    if norm <= SNAP {
        return Ok(Entry::Zero);
    }
    let angle = im.atan2(re);
    let turns = angle / std::f64::consts::TAU;
    let num = (turns * f64::from(q)).round().rem_euclid(f64::from(q)) as u32;
    let root = Entry::root(num, q);
    let rv = root.value();
    if (rv.re - re).hypot(rv.im - im) > SNAP {
        return Err(Error::parse(
            locus,
            format!("({re}, {im}) is not a {q}th root of unity or zero"),
        ));
    }
    Ok(root)
}

#[derive(serde::Serialize, serde::Deserialize)]
struct SetParams {
    codes: usize,
    rows: usize,
    length: usize,
    alphabet: AlphabetDoc,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct CodeSetDocument {
    format_version: u32,
    kind: String,
    params: SetParams,
    codes: Vec<Vec<Vec<EntryRepr>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<FamilyProvenance>,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct FamilyParams {
    sets: usize,
    codes: usize,
    rows: usize,
    length: usize,
    alphabet: AlphabetDoc,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct FamilyDocument {
    format_version: u32,
    kind: String,
    params: FamilyParams,
    sets: Vec<Vec<Vec<Vec<EntryRepr>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<FamilyProvenance>,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct RecipeDocument {
    format_version: u32,
    kind: String,
    #[serde(flatten)]
    recipe: Recipe,
}

fn encode_code(code: &Code, alphabet: Alphabet) -> Vec<Vec<EntryRepr>> {
    code.rows()
        .iter()
        .map(|row| {
            row.entries()
                .iter()
                .map(|&e| EntryRepr::encode(e, alphabet))
                .collect()
        })
        .collect()
}

fn decode_code(
    rows: &[Vec<EntryRepr>],
    alphabet: Alphabet,
    expect_rows: usize,
    expect_len: usize,
    locus: &str,
) -> Result<Code> {
    if rows.len() != expect_rows {
        return Err(Error::parse(
            locus,
            format!("{} rows, params say {expect_rows}", rows.len()),
        ));
    }
    let decoded = rows
        .iter()
        .enumerate()
        .map(|(m, row)| {
            if row.len() != expect_len {
                return Err(Error::parse(
                    format!("{locus}[{m}]"),
                    format!("{} entries, params say {expect_len}", row.len()),
                ));
            }
            let entries = row
                .iter()
                .enumerate()
                .map(|(i, r)| r.decode(alphabet, &format!("{locus}[{m}][{i}]")))
                .collect::<Result<Vec<_>>>()?;
            Sequence::new(entries)
        })
        .collect::<Result<Vec<_>>>()?;
    Code::new(decoded)
}

fn read_json(path: &Path) -> Result<serde_json::Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| {
        Error::parse(
            format!("{}:{}:{}", path.display(), e.line(), e.column()),
            e.to_string(),
        )
    })
}

fn from_value<T: serde::de::DeserializeOwned>(value: serde_json::Value, path: &Path) -> Result<T> {
    serde_json::from_value(value)
        .map_err(|e| Error::parse(path.display().to_string(), e.to_string()))
}

fn check_version(version: u32, path: &Path) -> Result<()> {
    if version != FORMAT_VERSION {
        return Err(Error::parse(
            format!("{}: format_version", path.display()),
            format!("version {version} is not the supported {FORMAT_VERSION}"),
        ));
    }
    Ok(())
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn to_pretty(doc: &impl serde::Serialize) -> String {
    // Serialization of these documents cannot fail.
    let mut text = serde_json::to_string_pretty(doc).unwrap();
    text.push('\n');
    text
}

/// Anything a document file can hold.
pub enum Document {
    Set(CodeSet),
    Family(CodeFamily),
    Recipe(Recipe),
}

/// Loads any document, dispatching on its `kind` field.
pub fn load_document(path: &Path) -> Result<Document> {
    let value = read_json(path)?;
    let kind = value
        .get("kind")
        .and_then(|k| k.as_str())
        .ok_or_else(|| Error::parse(path.display().to_string(), "missing kind field"))?;
    match kind {
        "code-set" => Ok(Document::Set(decode_codeset_document(
            from_value(value, path)?,
            path,
        )?)),
        "code-family" => Ok(Document::Family(decode_family_document(
            from_value(value, path)?,
            path,
        )?)),
        "recipe" => {
            let doc: RecipeDocument = from_value(value, path)?;
            check_version(doc.format_version, path)?;
            Ok(Document::Recipe(doc.recipe))
        }
        other => Err(Error::parse(
            format!("{}: kind", path.display()),
            format!("unknown document kind {other:?}"),
        )),
    }
}

fn decode_codeset_document(doc: CodeSetDocument, path: &Path) -> Result<CodeSet> {
    check_version(doc.format_version, path)?;
    let alphabet = doc.params.alphabet.decode()?;
    if doc.codes.len() != doc.params.codes {
        return Err(Error::parse(
            format!("{}: codes", path.display()),
            format!("{} codes, params say {}", doc.codes.len(), doc.params.codes),
        ));
    }
    let codes = doc
        .codes
        .iter()
        .enumerate()
        .map(|(k, rows)| {
            decode_code(
                rows,
                alphabet,
                doc.params.rows,
                doc.params.length,
                &format!("codes[{k}]"),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    CodeSet::new(codes, alphabet)
}

fn decode_family_document(doc: FamilyDocument, path: &Path) -> Result<CodeFamily> {
    check_version(doc.format_version, path)?;
    let alphabet = doc.params.alphabet.decode()?;
    if doc.sets.len() != doc.params.sets {
        return Err(Error::parse(
            format!("{}: sets", path.display()),
            format!("{} sets, params say {}", doc.sets.len(), doc.params.sets),
        ));
    }
    let sets = doc
        .sets
        .iter()
        .enumerate()
        .map(|(j, codes)| {
            if codes.len() != doc.params.codes {
                return Err(Error::parse(
                    format!("sets[{j}]"),
                    format!("{} codes, params say {}", codes.len(), doc.params.codes),
                ));
            }
            let decoded = codes
                .iter()
                .enumerate()
                .map(|(k, rows)| {
                    decode_code(
                        rows,
                        alphabet,
                        doc.params.rows,
                        doc.params.length,
                        &format!("sets[{j}][{k}]"),
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            CodeSet::new(decoded, alphabet)
        })
        .collect::<Result<Vec<_>>>()?;
    let family = CodeFamily::new(sets)?;
    Ok(match doc.provenance {
        Some(p) => family.with_provenance(p),
        None => family,
    })
}

/// Loads a document that must be a code set.
pub fn load_codeset(path: &Path) -> Result<CodeSet> {
    match load_document(path)? {
        Document::Set(set) => Ok(set),
        _ => Err(Error::parse(
            path.display().to_string(),
            "expected a code-set document",
        )),
    }
}

/// Loads a document that must be a code family.
pub fn load_family(path: &Path) -> Result<CodeFamily> {
    match load_document(path)? {
        Document::Family(family) => Ok(family),
        _ => Err(Error::parse(
            path.display().to_string(),
            "expected a code-family document",
        )),
    }
}

/// Loads a document that must be a recipe.
pub fn load_recipe(path: &Path) -> Result<Recipe> {
    match load_document(path)? {
        Document::Recipe(recipe) => Ok(recipe),
        _ => Err(Error::parse(
            path.display().to_string(),
            "expected a recipe document",
        )),
    }
}

/// Renders a code set document, optionally with provenance.
pub fn codeset_to_string(set: &CodeSet, provenance: Option<&FamilyProvenance>) -> String {
    let alphabet = set.alphabet();
    let doc = CodeSetDocument {
        format_version: FORMAT_VERSION,
        kind: "code-set".into(),
        params: SetParams {
            codes: set.num_codes(),
            rows: set.code_rows(),
            length: set.seq_len(),
            alphabet: alphabet.into(),
        },
        codes: set
            .codes()
            .iter()
            .map(|c| encode_code(c, alphabet))
            .collect(),
        provenance: provenance.cloned(),
    };
    to_pretty(&doc)
}

/// Renders a family document; provenance travels with the family.
pub fn family_to_string(family: &CodeFamily) -> String {
    let alphabet = family.set(0).alphabet();
    let doc = FamilyDocument {
        format_version: FORMAT_VERSION,
        kind: "code-family".into(),
        params: FamilyParams {
            sets: family.num_sets(),
            codes: family.set(0).num_codes(),
            rows: family.set(0).code_rows(),
            length: family.set(0).seq_len(),
            alphabet: alphabet.into(),
        },
        sets: family
            .sets()
            .iter()
            .map(|s| s.codes().iter().map(|c| encode_code(c, alphabet)).collect())
            .collect(),
        provenance: family.provenance().cloned(),
    };
    to_pretty(&doc)
}

/// Renders a recipe document.
pub fn recipe_to_string(recipe: &Recipe) -> String {
    to_pretty(&RecipeDocument {
        format_version: FORMAT_VERSION,
        kind: "recipe".into(),
        recipe: recipe.clone(),
    })
}

pub fn save_codeset(set: &CodeSet, path: &Path) -> Result<()> {
    write_text(path, &codeset_to_string(set, None))
}

pub fn save_family(family: &CodeFamily, path: &Path) -> Result<()> {
    write_text(path, &family_to_string(family))
}

pub fn save_recipe(recipe: &Recipe, path: &Path) -> Result<()> {
    write_text(path, &recipe_to_string(recipe))
}

/// Writes a profile as CSV with header `tau,re,im,magnitude`. Exact
/// values print as integers; floats print shortest-round-trip.
pub fn write_profile_csv<W: std::io::Write>(
    profile: &CorrelationProfile,
    mut out: W,
) -> std::io::Result<()> {
    writeln!(out, "tau,re,im,magnitude")?;
    for (shift, value) in profile.points() {
        match value {
            CorrelationValue::Exact(v) => {
                writeln!(out, "{shift},{},{},{}", v.re, v.im, value.magnitude())?
            }
            CorrelationValue::Approx(v) => {
                writeln!(out, "{shift},{},{},{}", v.re, v.im, value.magnitude())?
            }
        }
    }
    Ok(())
}

/// [`write_profile_csv`] to a file.
pub fn save_profile_csv(profile: &CorrelationProfile, path: &Path) -> Result<()> {
    let mut buf = Vec::new();
    write_profile_csv(profile, &mut buf).expect("writing to a buffer cannot fail");
    let text = String::from_utf8(buf).expect("csv output is ascii");
    write_text(path, &text)
}
