//! Zero-gap partitions and the strategies that pick them.
//!
//! A partition of the zero budget `n` around `P` blocks is a vector of
//! `P + 1` gaps `(n_1, ..., n_{P+1})` summing to `n`: gap `i` precedes
//! block `i`, and the last gap trails the final block. The gaps between
//! consecutive blocks, `n_2..n_P`, are the interior gaps; the smallest
//! of them governs how far the inter-set zero-correlation zone extends
//! beyond the seed length.

use std::sync::LazyLock;

use crate::error::{Error, Result};
use crate::registry::{Registry, Strategy};

/// Gap vector for some number of blocks P, always P + 1 long.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct GapPartition {
    gaps: Vec<usize>,
}

impl GapPartition {
    pub fn new(gaps: Vec<usize>) -> Result<GapPartition> {
        if gaps.len() < 2 {
            return Err(Error::WrongGapCount {
                expected: 2,
                blocks: 1,
                got: gaps.len(),
            });
        }
        Ok(GapPartition { gaps })
    }

    pub fn gaps(&self) -> &[usize] {
        &self.gaps
    }

    /// P, the number of blocks the gaps interleave.
    pub fn blocks(&self) -> usize {
        self.gaps.len() - 1
    }

    /// n, the total zero budget.
    pub fn total(&self) -> usize {
        self.gaps.iter().sum()
    }

    /// The gaps between consecutive blocks. Empty for a single block.
    pub fn interior(&self) -> &[usize] {
        &self.gaps[1..self.gaps.len() - 1]
    }

    /// The smallest interior gap, where one exists.
    pub fn interior_min(&self) -> Option<usize> {
        self.interior().iter().copied().min()
    }
}

impl TryFrom<Vec<usize>> for GapPartition {
    type Error = Error;

    fn try_from(gaps: Vec<usize>) -> Result<GapPartition> {
        GapPartition::new(gaps)
    }
}

impl From<GapPartition> for Vec<usize> {
    fn from(p: GapPartition) -> Vec<usize> {
        p.gaps
    }
}

impl std::fmt::Display for GapPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.gaps.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Deterministic recipe turning a zero budget into a gap vector.
pub trait PartitionStrategy: Strategy {
    /// Builds a partition of `total` zeros around `blocks` blocks whose
    /// rows have length `seq_len`.
    fn build(&self, total: usize, blocks: usize, seq_len: usize) -> Result<GapPartition>;
}

/// The whole budget in the first gap slot after the leading block
/// boundary: `(0, n, 0, ..., 0)`.
struct Front;

impl Strategy for Front {
    fn name(&self) -> &'static str {
        "front"
    }
}

impl PartitionStrategy for Front {
    fn build(&self, total: usize, blocks: usize, _seq_len: usize) -> Result<GapPartition> {
        let mut gaps = vec![0; blocks + 1];
        gaps[1] = total;
        GapPartition::new(gaps)
    }
}

/// The budget spread over the interior gaps as evenly as possible,
/// earlier gaps taking the remainder. A single block has no interior,
/// so the budget trails it.
struct Even;

impl Strategy for Even {
    fn name(&self) -> &'static str {
        "even"
    }
}

impl PartitionStrategy for Even {
    fn build(&self, total: usize, blocks: usize, _seq_len: usize) -> Result<GapPartition> {
        let mut gaps = vec![0; blocks + 1];
        let interior = blocks - 1;
        match total.checked_div(interior) {
            None => gaps[1] = total,
            Some(q) => {
                let r = total % interior;
                for (i, gap) in gaps[1..blocks].iter_mut().enumerate() {
                    *gap = q + usize::from(i < r);
                }
            }
        }
        GapPartition::new(gaps)
    }
}

/// Minimum budget for `blocks` pairwise-distinct interior gaps,
/// P(P-1)/2.
fn distinct_floor(blocks: usize) -> usize {
    blocks * (blocks - 1) / 2
}

/// Base gap vector `(0, 1, ..., P-1, 0)` with the leftover budget added
/// to the last of the first P slots, keeping the interior distinct.
fn distinct_base(total: usize, blocks: usize) -> Result<(Vec<usize>, usize)> {
    let floor = distinct_floor(blocks);
    if total < floor {
        return Err(Error::Infeasible {
            detail: format!(
                "total gap budget {total} is below P(P-1)/2 = {floor}, the minimum \
                 for {blocks} pairwise-distinct gaps"
            ),
        });
    }
    let remainder = total - floor;
    let mut gaps: Vec<usize> = (0..blocks).collect();
    gaps.push(0);
    gaps[blocks - 1] += remainder;
    Ok((gaps, remainder))
}

/// Pairwise-distinct interior gaps: `(0, 1, 2, ..., P-1+r, 0)` where
/// `r` is the budget beyond the P(P-1)/2 floor.
struct Distinct;

impl Strategy for Distinct {
    fn name(&self) -> &'static str {
        "distinct"
    }
}

impl PartitionStrategy for Distinct {
    fn build(&self, total: usize, blocks: usize, _seq_len: usize) -> Result<GapPartition> {
        let (gaps, _) = distinct_base(total, blocks)?;
        GapPartition::new(gaps)
    }
}

/// Interior gaps pairwise distinct modulo the seed row length. Starts
/// from the `distinct` recipe and moves zeros from the largest interior
/// gap to the trailing gap until the residues separate.
struct DistinctModL;

impl Strategy for DistinctModL {
    fn name(&self) -> &'static str {
        "distinct-mod-L"
    }
}

impl PartitionStrategy for DistinctModL {
    fn build(&self, total: usize, blocks: usize, seq_len: usize) -> Result<GapPartition> {
        let (mut gaps, remainder) = distinct_base(total, blocks)?;
        let last = blocks - 1;
        // Residues repeat with period seq_len, so a longer scan cannot
        // find anything new.
        let scan = remainder.min(seq_len.saturating_sub(1));
        for delta in 0..=scan {
            let interior = &gaps[1..blocks];
            let mut seen = vec![false; seq_len];
            let distinct = interior.iter().all(|&g| {
                let r = g % seq_len;
                !std::mem::replace(&mut seen[r], true)
            });
            if distinct {
                return GapPartition::new(gaps);
            }
            if delta < scan {
                gaps[last] -= 1;
                gaps[blocks] += 1;
            }
        }
        Err(Error::Infeasible {
            detail: format!(
                "no gap vector with budget {total} makes {} interior gaps pairwise \
                 distinct modulo the row length {seq_len}",
                blocks.saturating_sub(1)
            ),
        })
    }
}

static STRATEGIES: LazyLock<Registry<dyn PartitionStrategy + Send + Sync>> = LazyLock::new(|| {
    let mut r: Registry<dyn PartitionStrategy + Send + Sync> = Registry::new();
    r.register(Box::new(Front));
    r.register(Box::new(Even));
    r.register(Box::new(Distinct));
    r.register(Box::new(DistinctModL));
    r
});

/// The registry of built-in partition strategies.
pub fn partition_strategies() -> &'static Registry<dyn PartitionStrategy + Send + Sync> {
    &STRATEGIES
}

/// Builds a partition of `total` zeros around `blocks` blocks using the
/// named strategy. `seq_len` is the seed row length, which only the
/// residue-aware strategies consult.
pub fn make_partition(
    total: usize,
    blocks: usize,
    strategy: &str,
    seq_len: usize,
) -> Result<GapPartition> {
    if blocks == 0 {
        return Err(Error::Unsupported {
            detail: "block count must be at least 1".into(),
        });
    }
    let Some(found) = STRATEGIES.resolve(strategy) else {
        return Err(Error::Unsupported {
            detail: format!(
                "unknown partition strategy {strategy:?}; known: {}",
                STRATEGIES.names().join(", ")
            ),
        });
    };
    found.build(total, blocks, seq_len)
}
