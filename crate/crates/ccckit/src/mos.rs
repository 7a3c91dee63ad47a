//! Mutually orthogonal scalar families used to weight code blocks.
//!
//! A family of order P is a set of P length-P vectors of roots of
//! unity, pairwise orthogonal under the zero-shift inner product. Each
//! vector supplies the per-block scalars for one constructed code, and
//! orthogonality is what cancels the cross terms between codes built
//! from the same seed group.

use std::sync::LazyLock;

use crate::alphabet::{Alphabet, Entry};
use crate::code::Sequence;
use crate::corr::acf_aperiodic;
use crate::error::{Error, Result};
use crate::registry::{Registry, Strategy};

/// P mutually orthogonal unimodular vectors of length P.
#[derive(Clone, PartialEq, Debug)]
pub struct MosFamily {
    vectors: Vec<Sequence>,
    alphabet: Alphabet,
}

impl MosFamily {
    /// Validates squareness, unimodularity, and pairwise orthogonality.
    /// Orthogonality is checked exactly for Gaussian alphabets and to
    /// 1e-9 per unit of order otherwise.
    pub fn new(vectors: Vec<Sequence>) -> Result<MosFamily> {
        if vectors.is_empty() {
            return Err(Error::Empty {
                what: "orthogonal scalar family",
            });
        }
        let order = vectors.len();
        let mut q: u32 = 1;
        for (j, v) in vectors.iter().enumerate() {
            if v.len() != order {
                return Err(Error::shape(format!(
                    "vector {j} has length {}, expected the family order {order}",
                    v.len()
                )));
            }
            for (k, &e) in v.entries().iter().enumerate() {
                match e.order() {
                    Some(o) => q = num_integer::lcm(q, o),
                    None => return Err(Error::NonUnimodularScalar { index: j * order + k }),
                }
            }
        }
        let alphabet = if q <= 2 {
            Alphabet::Ternary
        } else {
            Alphabet::QaryWithZero { q }
        };
        let tol = alphabet.tolerance(order as f64);
        for i in 0..order {
            for j in i + 1..order {
                let dot = acf_aperiodic(&vectors[i], &vectors[j], 0)?;
                if !dot.is_zero(tol) {
                    return Err(Error::shape(format!(
                        "vectors {i} and {j} are not orthogonal: inner product {dot}"
                    )));
                }
            }
        }
        Ok(MosFamily { vectors, alphabet })
    }

    pub fn order(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Sequence] {
        &self.vectors
    }

    pub fn vector(&self, mu: usize) -> &Sequence {
        &self.vectors[mu]
    }

    /// The smallest alphabet containing every scalar.
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }
}

/// Produces an orthogonal scalar family of a requested order.
pub trait MosGenerator: Strategy {
    fn generate(&self, order: usize) -> Result<MosFamily>;
}

/// Rows of the Sylvester Hadamard matrix. Orders must be powers of two.
struct HadamardMos;

impl Strategy for HadamardMos {
    fn name(&self) -> &'static str {
        "hadamard"
    }
}

impl MosGenerator for HadamardMos {
    fn generate(&self, order: usize) -> Result<MosFamily> {
        if order == 0 || !order.is_power_of_two() {
            return Err(Error::Unsupported {
                detail: format!(
                    "hadamard scalar families exist only for powers of two, not {order}; \
                     use the dft generator for other orders"
                ),
            });
        }
        let vectors = (0..order)
            .map(|j| {
                let entries = (0..order)
                    .map(|k| {
                        // Sylvester closed form: sign (-1)^popcount(j & k).
                        if (j & k).count_ones().is_multiple_of(2) {
                            Entry::ONE
                        } else {
                            Entry::MINUS_ONE
                        }
                    })
                    .collect();
                Sequence::new(entries)
            })
            .collect::<Result<Vec<_>>>()?;
        MosFamily::new(vectors)
    }
}

/// Rows of the discrete Fourier matrix, `exp(2*pi*i * jk/P)`. Works at
/// every order, at the cost of an order-P alphabet.
struct DftMos;

impl Strategy for DftMos {
    fn name(&self) -> &'static str {
        "dft"
    }
}

impl MosGenerator for DftMos {
    fn generate(&self, order: usize) -> Result<MosFamily> {
        if order == 0 {
            return Err(Error::Unsupported {
                detail: "scalar family order must be at least 1".into(),
            });
        }
        let p = u32::try_from(order).map_err(|_| Error::Unsupported {
            detail: format!("scalar family order {order} is out of range"),
        })?;
        let vectors = (0..p)
            .map(|j| {
                let entries = (0..p).map(|k| Entry::root(j * k % p, p)).collect();
                Sequence::new(entries)
            })
            .collect::<Result<Vec<_>>>()?;
        MosFamily::new(vectors)
    }
}

static GENERATORS: LazyLock<Registry<dyn MosGenerator + Send + Sync>> = LazyLock::new(|| {
    let mut r: Registry<dyn MosGenerator + Send + Sync> = Registry::new();
    r.register(Box::new(HadamardMos));
    r.register(Box::new(DftMos));
    r
});

/// The registry of built-in scalar family generators.
pub fn mos_generators() -> &'static Registry<dyn MosGenerator + Send + Sync> {
    &GENERATORS
}

/// Generates an order-`order` family with the named generator.
pub fn mos_generate(order: usize, generator: &str) -> Result<MosFamily> {
    let Some(found) = GENERATORS.resolve(generator) else {
        return Err(Error::Unsupported {
            detail: format!(
                "unknown scalar family generator {generator:?}; known: {}",
                GENERATORS.names().join(", ")
            ),
        });
    };
    found.generate(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_small_orders() {
        let h1 = mos_generate(1, "hadamard").unwrap();
        assert_eq!(h1.order(), 1);
        assert_eq!(h1.vector(0).entries(), &[Entry::ONE]);

        let h2 = mos_generate(2, "hadamard").unwrap();
        assert_eq!(h2.vector(0), &Sequence::from_signs("++").unwrap());
        assert_eq!(h2.vector(1), &Sequence::from_signs("+-").unwrap());
        assert_eq!(h2.alphabet(), Alphabet::Ternary);

        let h4 = mos_generate(4, "hadamard").unwrap();
        let rows: Vec<_> = ["++++", "+-+-", "++--", "+--+"]
            .iter()
            .map(|s| Sequence::from_signs(s).unwrap())
            .collect();
        assert_eq!(h4.vectors(), &rows[..]);
    }

    #[test]
    fn hadamard_rejects_non_powers_of_two() {
        let err = mos_generate(3, "hadamard").unwrap_err();
        assert!(err.to_string().contains("dft"));
        assert!(mos_generate(0, "hadamard").is_err());
        assert!(mos_generate(8, "hadamard").is_ok());
    }

    #[test]
    fn dft_families_are_orthogonal_at_any_order() {
        for order in 1..=6 {
            let fam = mos_generate(order, "dft").unwrap();
            assert_eq!(fam.order(), order);
        }
        assert_eq!(mos_generate(2, "dft").unwrap().alphabet(), Alphabet::Ternary);
        assert_eq!(
            mos_generate(3, "dft").unwrap().alphabet(),
            Alphabet::QaryWithZero { q: 3 }
        );
        assert_eq!(
            mos_generate(4, "dft").unwrap().alphabet(),
            Alphabet::QaryWithZero { q: 4 }
        );
    }

    #[test]
    fn families_reject_zero_and_skew_vectors() {
        let z = Sequence::from_signs("+0").unwrap();
        let p = Sequence::from_signs("++").unwrap();
        assert!(matches!(
            MosFamily::new(vec![p.clone(), z]),
            Err(Error::NonUnimodularScalar { .. })
        ));
        assert!(MosFamily::new(vec![p.clone()]).is_err());
        assert!(MosFamily::new(vec![p.clone(), p]).is_err());
    }

    #[test]
    fn unknown_generator_lists_the_known_ones() {
        let err = mos_generate(2, "walsh").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("hadamard") && msg.contains("dft"), "message was: {msg}");
    }
}
