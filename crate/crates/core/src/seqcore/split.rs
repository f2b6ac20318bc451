use alloc::format;
use alloc::vec::Vec;

use super::bijection::IntBijection;

/// Consecutive splitting blocks `[cuts[i] + 1, cuts[i + 1]]`.
///
/// For identity-tail sequences every block outside `coverage` is a singleton.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SplitDecomposition {
    pub cuts: Vec<i64>,
    pub bound_c: i64,
    pub coverage: (i64, i64),
}

impl SplitDecomposition {
    /// Builds a decomposition from strictly increasing cuts.
    pub fn from_cuts(cuts: Vec<i64>) -> Self {
        debug_assert!(cuts.windows(2).all(|w| w[0] < w[1]));
        let bound_c = cuts.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(1);
        let coverage = match (cuts.first(), cuts.last()) {
            (Some(&f), Some(&l)) if cuts.len() > 1 => (f + 1, l),
            _ => (0, -1),
        };
        SplitDecomposition { cuts, bound_c, coverage }
    }

    /// Blocks as inclusive index ranges.
    pub fn blocks(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.cuts.windows(2).map(|w| (w[0] + 1, w[1]))
    }
}

/// Why no decomposition was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitFailure {
    NotBijective,
    /// No interval near the horizon splits the sequence.
    NoSplittingInterval,
    /// A splitting block is longer than allowed.
    BlockTooLarge { lo: i64, hi: i64 },
    /// A block image failed to be an integer interval of the block's size.
    ImageNotInterval { lo: i64, hi: i64 },
}

impl core::fmt::Display for SplitFailure {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SplitFailure::NotBijective => f.write_str("sequence is not bijective"),
            SplitFailure::NoSplittingInterval => f.write_str("no splitting interval"),
            SplitFailure::BlockTooLarge { lo, hi } => {
                write!(f, "splitting block [{lo}, {hi}] exceeds the size bound")
            }
            SplitFailure::ImageNotInterval { lo, hi } => {
                write!(f, "image of block [{lo}, {hi}] is not an integer interval")
            }
        }
    }
}

/// True iff `max_{n ≤ k} aₙ < min_{n > k} aₙ`, i.e. `k` can end a block.
///
/// With `D = sup |aₙ − n|` only `n ∈ [k − 2D, k + 1 + 2D]` can violate this.
pub fn is_cut(seq: &IntBijection, k: i64) -> bool {
    let d = match seq.base() {
        (false, b) => b.max_displacement().unwrap_or(0),
        // tails run the wrong way
        (true, _) => return false,
    };
    let left = (k - 2 * d..=k).map(|n| seq.value(n)).max().unwrap();
    let right = (k + 1..=k + 1 + 2 * d).map(|n| seq.value(n)).min().unwrap();
    left < right
}

/// Whether `[k, l]` splits the sequence: every later value exceeds the block
/// maximum and every earlier value is below the block minimum. Equivalent to
/// both `k − 1` and `l` being cuts.
pub fn splits_interval(seq: &IntBijection, k: i64, l: i64) -> bool {
    k <= l && is_cut(seq, k - 1) && is_cut(seq, l)
}

/// Image of a block when it is an integer interval of the same length.
pub fn block_image(seq: &IntBijection, lo: i64, hi: i64) -> Option<(i64, i64)> {
    let (mn, mx) = (lo..=hi)
        .map(|n| seq.value(n))
        .fold((i64::MAX, i64::MIN), |(a, b), v| (a.min(v), b.max(v)));
    (mx - mn == hi - lo).then_some((mn, mx))
}

/// Greedy decomposition of `[−horizon, horizon]` into splitting blocks of
/// length at most `c_max`.
///
/// Every cut is found, so consecutive cuts give the finest decomposition and
/// the smallest possible bound. Blocks are searched no further than
/// `min(c_max, 2·horizon + 1)` beyond the horizon.
pub fn split_decomposition(
    seq: &IntBijection,
    c_max: i64,
    horizon: i64,
) -> Result<SplitDecomposition, SplitFailure> {
    if !seq.is_bijective() {
        return Err(SplitFailure::NotBijective);
    }
    let c_max = c_max.max(1);
    let reach = c_max.min(2 * horizon + 1);
    let lo = -horizon - reach;
    let hi = horizon + reach - 1;
    let all: Vec<i64> = (lo..=hi).filter(|&k| is_cut(seq, k)).collect();
    if all.is_empty() {
        return Err(SplitFailure::NoSplittingInterval);
    }
    let first = all.iter().rposition(|&k| k < -horizon);
    let last = all.iter().position(|&k| k >= horizon);
    let (first, last) = match (first, last) {
        (Some(f), Some(l)) => (f, l),
        (None, _) => {
            return Err(SplitFailure::BlockTooLarge { lo: lo + 1, hi: all[0] });
        }
        (_, None) => {
            return Err(SplitFailure::BlockTooLarge { lo: all[all.len() - 1] + 1, hi });
        }
    };
    let cuts = all[first..=last].to_vec();
    for w in cuts.windows(2) {
        let (s, e) = (w[0] + 1, w[1]);
        if e - s + 1 > c_max {
            return Err(SplitFailure::BlockTooLarge { lo: s, hi: e });
        }
        if block_image(seq, s, e).is_none() {
            return Err(SplitFailure::ImageNotInterval { lo: s, hi: e });
        }
    }
    Ok(SplitDecomposition::from_cuts(cuts))
}

/// [`split_decomposition`] without the failure reason.
pub fn find_split_decomposition(
    seq: &IntBijection,
    c_max: i64,
    horizon: i64,
) -> Option<SplitDecomposition> {
    split_decomposition(seq, c_max, horizon).ok()
}

impl SplitFailure {
    pub fn reason(&self) -> alloc::string::String {
        format!("{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn six_periodic() -> IntBijection {
        IntBijection::periodic(vec![0, 1, -4, 0, 1, -4]).unwrap()
    }

    // literal definition over a bounded range
    fn splits_by_definition(seq: &IntBijection, k: i64, l: i64, reach: i64) -> bool {
        let mx = (k..=l).map(|n| seq.value(n)).max().unwrap();
        let mn = (k..=l).map(|n| seq.value(n)).min().unwrap();
        (l + 1..=l + reach).all(|n| seq.value(n) > mx)
            && (k - reach..k).all(|n| seq.value(n) < mn)
    }

    #[test]
    fn identity_singletons_split() {
        let id = IntBijection::identity();
        assert!(splits_interval(&id, 0, 0));
        let d = find_split_decomposition(&id, 1, 5).unwrap();
        assert_eq!(d.bound_c, 1);
        assert_eq!(d.cuts, (-6..=5).collect::<Vec<_>>());
    }

    #[test]
    fn swap_blocks() {
        let s = IntBijection::swap(0, 1);
        assert!(splits_interval(&s, 0, 1));
        assert!(!splits_interval(&s, 0, 0));
        let d = find_split_decomposition(&s, 2, 3).unwrap();
        assert_eq!(d.bound_c, 2);
        let blocks: Vec<_> = d.blocks().collect();
        assert!(blocks.contains(&(-1, -1)));
        assert!(blocks.contains(&(0, 1)));
        assert!(blocks.contains(&(2, 2)));
        assert_eq!(find_split_decomposition(&s, 1, 3), None);
    }

    #[test]
    fn periodic_example_never_splits() {
        let a = six_periodic();
        for k in -12..12 {
            for l in k..k + 6 {
                assert!(!splits_interval(&a, k, l), "[{k}, {l}]");
                assert!(!splits_by_definition(&a, k, l, 40));
            }
        }
        for c in [1, 6, 50, 1000] {
            assert_eq!(split_decomposition(&a, c, 20), Err(SplitFailure::NoSplittingInterval));
        }
    }

    #[test]
    fn bounded_check_matches_definition() {
        let seqs = [
            IntBijection::identity_tail(-3, vec![-1, -3, -2, 1, 0, 2]).unwrap(),
            IntBijection::periodic(vec![1, -1, 2, 0, -2]).unwrap(),
            IntBijection::swap(-2, 4),
        ];
        for s in &seqs {
            for k in -10..10 {
                for l in k..k + 5 {
                    assert_eq!(splits_interval(s, k, l), splits_by_definition(s, k, l, 60));
                }
            }
        }
    }

    #[test]
    fn mirrored_never_splits() {
        let s = IntBijection::identity().negated();
        assert!(!splits_interval(&s, 0, 0));
    }
}
