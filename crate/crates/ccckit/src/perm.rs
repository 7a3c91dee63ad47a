//! Permutations of seed codes and the conditions a family of them must
//! meet before it can drive a multi-set construction.
//!
//! Positions and values are 1-based throughout, matching the usual
//! statement of the conditions. A permutation of degree M reorders M
//! seed codes; with P blocks per constructed code, position `i*P + mu`
//! sits in residue class `mu` of block group `i`.
//!
//! Two conditions matter. Disjoint classes: for each checked residue
//! `mu`, the value sets `{pi_j(i*P + mu)}` of the family are pairwise
//! disjoint, which is what clears a zero zone around the aligned shift.
//! Aligned-collision freedom: whenever two permutations send positions
//! `p1`, `p2` to the same value, they disagree at every common offset
//! `p1 + a`, `p2 + a` within the block, which stops several seed
//! collisions from piling onto one correlation shift.

use crate::error::{Error, Result};

/// A bijection on `1..=degree`, stored as its image vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Permutation> {
        let degree = image.len();
        if degree == 0 {
            return Err(Error::Empty { what: "permutation" });
        }
        let mut seen = vec![false; degree + 1];
        for &v in &image {
            if v == 0 || v > degree {
                return Err(Error::NotABijection {
                    degree,
                    detail: format!("image value {v} out of range"),
                });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotABijection {
                    degree,
                    detail: format!("image value {v} repeats"),
                });
            }
        }
        Ok(Permutation { image })
    }

    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            image: (1..=degree).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// The image of 1-based position `pos`.
    pub fn apply(&self, pos: usize) -> usize {
        self.image[pos - 1]
    }

    /// The 1-based image vector.
    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// 1-based position mapped to each value; inverse of the image.
    fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.degree() + 1];
        for (i, &v) in self.image.iter().enumerate() {
            pos[v] = i + 1;
        }
        pos
    }
}

/// The residue classes the disjointness condition quantifies over:
/// `1..=P-1` under the strict reading, `1..=P` under the extended one.
fn checked_classes(blocks: usize, strict_mu: bool) -> std::ops::RangeInclusive<usize> {
    if strict_mu { 1..=blocks - 1 } else { 1..=blocks }
}

/// First disagreement with the aligned-collision condition between two
/// permutations, as `(value, offset)`, or None if the pair is clean.
fn aligned_conflict(a: &Permutation, b: &Permutation, blocks: usize) -> Option<(usize, i64)> {
    let (pos_a, pos_b) = (a.positions(), b.positions());
    let p = blocks as i64;
    for v in 1..=a.degree() {
        let (p1, p2) = (pos_a[v] as i64, pos_b[v] as i64);
        let (mu1, mu2) = ((p1 - 1).rem_euclid(p) + 1, (p2 - 1).rem_euclid(p) + 1);
        let lo = (1 - mu1).max(1 - mu2);
        let hi = (p - mu1).min(p - mu2);
        for alpha in lo..=hi {
            if alpha == 0 {
                continue;
            }
            if a.apply((p1 + alpha) as usize) == b.apply((p2 + alpha) as usize) {
                return Some((v, alpha));
            }
        }
    }
    None
}

struct FamilyCheck {
    /// First violation of class disjointness, if any.
    disjoint: Option<String>,
    /// First violation of aligned-collision freedom, if any.
    aligned: Option<String>,
}

fn validate_family_shape(perms: &[Permutation], degree: usize, blocks: usize) -> Result<()> {
    if perms.is_empty() {
        return Err(Error::Empty {
            what: "permutation family",
        });
    }
    for (j, perm) in perms.iter().enumerate() {
        if perm.degree() != degree {
            return Err(Error::shape(format!(
                "permutation {j} has degree {}, expected {degree}",
                perm.degree()
            )));
        }
    }
    if blocks == 0 || !degree.is_multiple_of(blocks) {
        return Err(Error::IndivisibleGroup {
            codes: degree,
            blocks,
        });
    }
    Ok(())
}

fn family_check(
    perms: &[Permutation],
    degree: usize,
    blocks: usize,
    strict_mu: bool,
) -> Result<FamilyCheck> {
    validate_family_shape(perms, degree, blocks)?;

    let mut disjoint = None;
    'classes: for mu in checked_classes(blocks, strict_mu) {
        // owner[v] = index of the first permutation whose class mu hit v.
        let mut owner = vec![usize::MAX; degree + 1];
        for (j, perm) in perms.iter().enumerate() {
            for i in 0..degree / blocks {
                let v = perm.apply(i * blocks + mu);
                if owner[v] != usize::MAX && owner[v] != j {
                    disjoint = Some(format!(
                        "residue class {mu} of permutations {} and {j} both contain {v}",
                        owner[v]
                    ));
                    break 'classes;
                }
                owner[v] = j;
            }
        }
    }

    let mut aligned = None;
    'pairs: for j1 in 0..perms.len() {
        for j2 in j1 + 1..perms.len() {
            if let Some((v, alpha)) = aligned_conflict(&perms[j1], &perms[j2], blocks) {
                aligned = Some(format!(
                    "permutations {j1} and {j2} collide at value {v} and \
                     again at offset {alpha}"
                ));
                break 'pairs;
            }
        }
    }

    Ok(FamilyCheck { disjoint, aligned })
}

/// Checks a permutation family against both admission conditions,
/// returning `(disjoint_classes, aligned_collision_free)`.
pub fn check_perm_family(
    perms: &[Permutation],
    degree: usize,
    blocks: usize,
    strict_mu: bool,
) -> Result<(bool, bool)> {
    let check = family_check(perms, degree, blocks, strict_mu)?;
    Ok((check.disjoint.is_none(), check.aligned.is_none()))
}

/// Explains why a family is inadmissible for multi-set construction,
/// or None if it qualifies. Aligned-collision freedom is only demanded
/// when `require_14` asks for it.
pub(crate) fn admission_failure(
    perms: &[Permutation],
    degree: usize,
    blocks: usize,
    strict_mu: bool,
    require_14: bool,
) -> Result<Option<String>> {
    let check = family_check(perms, degree, blocks, strict_mu)?;
    Ok(check.disjoint.or(if require_14 { check.aligned } else { None }))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Search {
    degree: usize,
    blocks: usize,
    require_14: bool,
    strict_mu: bool,
    /// Value try-order for each slot beyond the pinned identity.
    orders: Vec<Vec<usize>>,
}

impl Search {
    /// Fills family slots `slot..blocks`; `accepted` holds the earlier
    /// slots. True means a complete family is in `accepted`.
    fn fill_slot(&self, accepted: &mut Vec<Permutation>, slot: usize) -> bool {
        if slot == self.blocks {
            return true;
        }
        // taken[mu][v]: value v already owned by class mu of an
        // accepted permutation.
        let mut taken = vec![vec![false; self.degree + 1]; self.blocks + 1];
        for perm in accepted.iter() {
            for mu in checked_classes(self.blocks, self.strict_mu) {
                for i in 0..self.degree / self.blocks {
                    taken[mu][perm.apply(i * self.blocks + mu)] = true;
                }
            }
        }
        let mut image = Vec::with_capacity(self.degree);
        let mut used = vec![false; self.degree + 1];
        self.fill_pos(accepted, slot, &taken, &mut image, &mut used)
    }

    fn fill_pos(
        &self,
        accepted: &mut Vec<Permutation>,
        slot: usize,
        taken: &[Vec<bool>],
        image: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        if image.len() == self.degree {
            let candidate = Permutation {
                image: image.clone(),
            };
            if self.require_14
                && accepted
                    .iter()
                    .any(|a| aligned_conflict(a, &candidate, self.blocks).is_some())
            {
                return false;
            }
            accepted.push(candidate);
            if self.fill_slot(accepted, slot + 1) {
                return true;
            }
            accepted.pop();
            return false;
        }
        let pos = image.len() + 1;
        let mu = (pos - 1) % self.blocks + 1;
        let class_checked = checked_classes(self.blocks, self.strict_mu).contains(&mu);
        for &v in &self.orders[slot] {
            if used[v] || (class_checked && taken[mu][v]) {
                continue;
            }
            image.push(v);
            used[v] = true;
            if self.fill_pos(accepted, slot, taken, image, used) {
                return true;
            }
            image.pop();
            used[v] = false;
        }
        false
    }
}

/// Searches for an admissible family of P permutations of degree M,
/// the first found in a deterministic order. The first permutation is
/// pinned to the identity; any admissible family can be relabeled into
/// that form, so exhaustion here proves there is none at all.
///
/// Seed 0 explores values in ascending order, making the result the
/// lexicographically least admissible family. A non-zero seed reorders
/// the exploration deterministically, surfacing different witnesses.
pub fn search_perm_family(
    degree: usize,
    blocks: usize,
    require_14: bool,
    seed: u64,
    strict_mu: bool,
) -> Result<Vec<Permutation>> {
    if blocks == 0 || degree == 0 || !degree.is_multiple_of(blocks) {
        return Err(Error::IndivisibleGroup {
            codes: degree,
            blocks,
        });
    }
    let orders = (0..blocks)
        .map(|slot| {
            let mut values: Vec<usize> = (1..=degree).collect();
            if seed != 0 {
                values.sort_by_key(|&v| {
                    (
                        splitmix64(seed ^ ((slot as u64) << 32) ^ (v as u64)),
                        v,
                    )
                });
            }
            values
        })
        .collect();
    let search = Search {
        degree,
        blocks,
        require_14,
        strict_mu,
        orders,
    };
    let mut accepted = vec![Permutation::identity(degree)];
    if search.fill_slot(&mut accepted, 1) {
        Ok(accepted)
    } else {
        Err(Error::SearchExhausted {
            degree,
            blocks,
            count: blocks,
        })
    }
}
