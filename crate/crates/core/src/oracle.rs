//! Brute-force ground truth.
//!
//! Everything here counts by walking actual paths (or actual states of the
//! drawing process) rather than by formula, so it can arbitrate between the
//! formula routes.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::closedform::WalkSpec;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::numeric::{binomial, Count, Fraction};

/// Largest `n` accepted by [`enumerate_heights`].
pub const HEIGHT_ENUMERATION_MAX_N: u32 = 15;
/// Largest `n` accepted by the walk and drawing-weight oracles.
pub const WALK_ORACLE_MAX_N: u32 = 10;

/// Unmatched-sock counts `a_1..a_{2n}` after each draw.
///
/// Invariants: `a_1 = 1`, `a_{2n} = 0`, consecutive values differ by one,
/// all values nonnegative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Trajectory {
    values: Vec<u32>,
}

impl Trajectory {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let len = values.len();
        if len == 0 || !len.is_multiple_of(2) {
            return Err(Error::Argument(format!(
                "trajectory length must be positive and even, got {len}"
            )));
        }
        if values[0] != 1 {
            return Err(Error::Argument("trajectory must start at 1".into()));
        }
        if values[len - 1] != 0 {
            return Err(Error::Argument("trajectory must end at 0".into()));
        }
        if let Some(i) = values.windows(2).position(|w| w[0].abs_diff(w[1]) != 1) {
            return Err(Error::Argument(format!(
                "steps {} and {} differ by {}",
                i + 1,
                i + 2,
                values[i].abs_diff(values[i + 1])
            )));
        }
        Ok(Self { values })
    }

    /// Builds from a vector already known to satisfy the invariants.
    pub(crate) fn from_valid(values: Vec<u32>) -> Self {
        debug_assert!(Self::new(values.clone()).is_ok(), "{values:?}");
        Self { values }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Number of sock pairs.
    pub fn pairs(&self) -> u32 {
        (self.values.len() / 2) as u32
    }

    /// Largest number of unmatched socks seen at once.
    pub fn height(&self) -> u32 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    /// `+1` for a new sock, `-1` for a match.
    pub fn steps(&self) -> impl Iterator<Item = i8> + '_ {
        std::iter::once(0)
            .chain(self.values.iter().copied())
            .zip(self.values.iter().copied())
            .map(|(prev, next)| if next > prev { 1 } else { -1 })
    }
}

/// Number of Dyck paths of semilength `n` for each exact height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightDistribution {
    pub n: u32,
    pub exact_counts: BTreeMap<u32, Count>,
}

impl HeightDistribution {
    /// Paths of height at least `k`.
    pub fn tail_sum(&self, k: u32) -> Count {
        self.exact_counts.range(k..).map(|(_, c)| c).sum()
    }

    pub fn total(&self) -> Count {
        self.exact_counts.values().sum()
    }
}

/// Visits every Dyck path of semilength `n` extending `prefix`, in
/// lexicographic order with up-steps first.
///
/// `prefix` holds the heights after the first few steps and must itself be
/// extendable. The walk keeps an explicit stack of choices, so depth is
/// bounded by `2n` and nothing recurses.
fn walk_dyck_paths(n: u32, prefix: &[u32], mut visit: impl FnMut(&[u32])) {
    let len = 2 * n as usize;
    let mut path = prefix.to_vec();
    // For each step past the prefix: whether it was a down-step.
    let mut went_down: Vec<bool> = Vec::with_capacity(len);
    loop {
        while path.len() < len {
            let h = path.last().copied().unwrap_or(0);
            let remaining = (len - path.len()) as u32;
            if h + 2 <= remaining {
                path.push(h + 1);
                went_down.push(false);
            } else {
                // Parity forces h == remaining here, so h >= 1.
                path.push(h - 1);
                went_down.push(true);
            }
        }
        visit(&path);
        loop {
            match went_down.pop() {
                None => return,
                Some(true) => {
                    path.pop();
                }
                Some(false) => {
                    path.pop();
                    let h = path.last().copied().unwrap_or(0);
                    if h >= 1 {
                        path.push(h - 1);
                        went_down.push(true);
                        break;
                    }
                }
            }
        }
    }
}

/// All extendable height prefixes of length `depth` (lexicographic).
fn dyck_prefixes(n: u32, depth: usize) -> Vec<Vec<u32>> {
    let len = 2 * n as usize;
    let mut out = vec![Vec::new()];
    for _ in 0..depth.min(len) {
        let mut next = Vec::with_capacity(out.len() * 2);
        for p in out {
            let h = p.last().copied().unwrap_or(0);
            let remaining = (len - p.len()) as u32;
            if h + 2 <= remaining {
                let mut up = p.clone();
                up.push(h + 1);
                next.push(up);
            }
            if h >= 1 {
                let mut down = p;
                down.push(h - 1);
                next.push(down);
            }
        }
        out = next;
    }
    out
}

/// Depth at which parallel enumeration splits the path tree.
const SPLIT_DEPTH: usize = 12;

/// Every Dyck path of semilength `n`, in lexicographic order. Small `n` only.
pub fn all_trajectories(n: u32) -> Result<Vec<Trajectory>> {
    if n == 0 || n > WALK_ORACLE_MAX_N {
        return Err(Error::Budget {
            n,
            limit: WALK_ORACLE_MAX_N,
        });
    }
    let mut out = Vec::new();
    walk_dyck_paths(n, &[], |p| out.push(Trajectory::from_valid(p.to_vec())));
    Ok(out)
}

/// Exact height distribution by exhaustive enumeration.
pub fn enumerate_heights(n: u32) -> Result<HeightDistribution> {
    enumerate_heights_with(n, Execution::default())
}

pub fn enumerate_heights_with(n: u32, exec: Execution) -> Result<HeightDistribution> {
    if n == 0 || n > HEIGHT_ENUMERATION_MAX_N {
        return Err(Error::Budget {
            n,
            limit: HEIGHT_ENUMERATION_MAX_N,
        });
    }
    let prefixes = dyck_prefixes(n, SPLIT_DEPTH);
    let partials = exec.map_slice(&prefixes, |prefix| {
        let mut tally = vec![0u64; n as usize + 1];
        walk_dyck_paths(n, prefix, |p| {
            let h = p.iter().copied().max().unwrap_or(0);
            tally[h as usize] += 1;
        });
        tally
    });
    let mut tally = vec![0u64; n as usize + 1];
    for part in partials {
        for (acc, v) in tally.iter_mut().zip(part) {
            *acc += v;
        }
    }
    let exact_counts = tally
        .into_iter()
        .enumerate()
        .filter(|&(h, c)| h >= 1 && c > 0)
        .map(|(h, c)| (h as u32, Count::from(c)))
        .collect();
    Ok(HeightDistribution { n, exact_counts })
}

/// Counts band-confined walks by testing every one of the `2^{2n}` step
/// sequences.
pub fn count_bounded_walks_oracle(spec: WalkSpec) -> Result<Count> {
    count_bounded_walks_oracle_with(spec, Execution::default())
}

pub fn count_bounded_walks_oracle_with(spec: WalkSpec, exec: Execution) -> Result<Count> {
    if spec.n > WALK_ORACLE_MAX_N {
        return Err(Error::Budget {
            n: spec.n,
            limit: WALK_ORACLE_MAX_N,
        });
    }
    let len = 2 * spec.n;
    let (lo, hi) = (-i64::from(spec.lower), i64::from(spec.upper));
    let fits = |mask: u64| {
        let mut y = 0i64;
        for bit in 0..len {
            y += if mask >> bit & 1 == 1 { 1 } else { -1 };
            if y < lo || y > hi {
                return false;
            }
        }
        y == 0
    };
    // Split the mask space on its top bits so each chunk is a contiguous range.
    let chunk_bits = len.saturating_sub(8);
    let chunks = 1usize << (len - chunk_bits);
    let counts = exec.map(0..chunks, |c| {
        let start = (c as u64) << chunk_bits;
        (start..start + (1u64 << chunk_bits))
            .filter(|&m| fits(m))
            .count() as u64
    });
    Ok(Count::from(counts.iter().sum::<u64>()))
}

/// Walks of `steps` unit steps from height `height` down to 0 that never go
/// below 0, by the reflection principle.
pub fn suffix_completions(steps: u32, height: u32) -> Count {
    if steps < height || !(steps - height).is_multiple_of(2) {
        return Count::zero();
    }
    // Walks touching -1 reflect to walks from -height-2, which have one
    // fewer up-step.
    let m = u64::from(steps);
    let ups = i64::from((steps - height) / 2);
    binomial(m, ups) - binomial(m, ups - 1)
}

/// Exact probability that `k` unmatched socks are ever on the table when
/// `n` distinguishable pairs are drawn in uniformly random order.
///
/// Forward pass over states (socks drawn, unmatched). Mass that reaches `k`
/// is moved to a single absorbing total and not tracked further.
pub fn physical_hit_probability(n: u32, k: u32) -> Fraction {
    assert!(
        n >= 1 && k >= 1,
        "physical_hit_probability requires n, k >= 1"
    );
    let total = 2 * u64::from(n);
    let width = k as usize;
    // live[u] for u < k
    let mut live = vec![Fraction::zero(); width];
    live[0] = Fraction::one();
    let mut absorbed = Fraction::zero();
    for drawn in 0..total {
        let left = total - drawn;
        let mut next = vec![Fraction::zero(); width];
        for (u, mass) in live.iter().enumerate() {
            if mass.is_zero() {
                continue;
            }
            let unmatched = u as u64;
            let fresh = left - unmatched;
            if fresh > 0 {
                let moved = mass * Fraction::new(Count::from(fresh), Count::from(left));
                if u + 1 >= width {
                    absorbed += moved;
                } else {
                    next[u + 1] += moved;
                }
            }
            if unmatched > 0 {
                next[u - 1] += mass * Fraction::new(Count::from(unmatched), Count::from(left));
            }
        }
        live = next;
    }
    absorbed
}

/// Probability of observing `trajectory` in the random drawing process: the
/// product of its per-step transition probabilities.
pub fn physical_path_weight(trajectory: &Trajectory) -> Fraction {
    let total = 2 * u64::from(trajectory.pairs());
    let mut numer = Count::one();
    let mut denom = Count::one();
    let mut unmatched = 0u64;
    for (drawn, step) in trajectory.steps().enumerate() {
        let left = total - drawn as u64;
        if step > 0 {
            numer *= left - unmatched;
            unmatched += 1;
        } else {
            numer *= unmatched;
            unmatched -= 1;
        }
        denom *= left;
    }
    Fraction::new(numer, denom)
}

/// Total drawing-process weight of paths with height at least `k`, plus the
/// total weight of all paths (which must be exactly one).
pub fn physical_weights_oracle(n: u32, k: u32) -> Result<(Fraction, Fraction)> {
    let paths = all_trajectories(n)?;
    let mut hit = Fraction::zero();
    let mut total = Fraction::zero();
    for path in &paths {
        let w = physical_path_weight(path);
        if path.height() >= k {
            hit += &w;
        }
        total += w;
    }
    Ok((hit, total))
}

/// [`physical_hit_probability`] recomputed by summing path weights.
pub fn physical_hit_probability_oracle(n: u32, k: u32) -> Result<Fraction> {
    let (hit, total) = physical_weights_oracle(n, k)?;
    assert!(total.is_one(), "path weights sum to {total}, not 1");
    Ok(hit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::{b_explicit, bounded_walk_count};
    use crate::numeric::catalan;

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    fn frac(a: u64, b: u64) -> Fraction {
        Fraction::new(c(a), c(b))
    }

    fn dist(pairs: &[(u32, u64)]) -> BTreeMap<u32, Count> {
        pairs.iter().map(|&(h, v)| (h, c(v))).collect()
    }

    #[test]
    fn trajectory_validation() {
        assert!(Trajectory::new(vec![1, 0]).is_ok());
        assert!(Trajectory::new(vec![1, 0, 1, 0, 1, 2, 1, 2, 1, 2, 1, 0]).is_ok());
        assert!(Trajectory::new(vec![]).is_err());
        assert!(Trajectory::new(vec![1, 2, 1]).is_err());
        assert!(Trajectory::new(vec![0, 1]).is_err());
        assert!(Trajectory::new(vec![1, 2]).is_err());
        assert!(Trajectory::new(vec![1, 1, 1, 0]).is_err());
        assert!(Trajectory::new(vec![1, 3, 2, 1, 0, 0]).is_err());
        let t = Trajectory::new(vec![1, 2, 1, 0]).unwrap();
        assert_eq!(t.height(), 2);
        assert_eq!(t.pairs(), 2);
        assert_eq!(t.steps().collect::<Vec<_>>(), vec![1, 1, -1, -1]);
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let paths = all_trajectories(3).unwrap();
        let values: Vec<Vec<u32>> = paths.iter().map(|p| p.values().to_vec()).collect();
        assert_eq!(
            values,
            vec![
                vec![1, 2, 3, 2, 1, 0],
                vec![1, 2, 1, 2, 1, 0],
                vec![1, 2, 1, 0, 1, 0],
                vec![1, 0, 1, 2, 1, 0],
                vec![1, 0, 1, 0, 1, 0],
            ]
        );
        for n in 1..=10 {
            assert_eq!(
                Count::from(all_trajectories(n).unwrap().len()),
                catalan(n as usize)
            );
        }
    }

    #[test]
    fn height_distribution_examples() {
        assert_eq!(enumerate_heights(1).unwrap().exact_counts, dist(&[(1, 1)]));
        assert_eq!(
            enumerate_heights(3).unwrap().exact_counts,
            dist(&[(1, 1), (2, 3), (3, 1)])
        );
        assert_eq!(
            enumerate_heights(4).unwrap().exact_counts,
            dist(&[(1, 1), (2, 7), (3, 5), (4, 1)])
        );
        assert!(matches!(enumerate_heights(16), Err(Error::Budget { .. })));
        assert!(matches!(enumerate_heights(0), Err(Error::Budget { .. })));
    }

    #[test]
    fn tail_sums_match_explicit_formula() {
        for n in 1..=11 {
            let d = enumerate_heights(n).unwrap();
            assert_eq!(d.total(), catalan(n as usize));
            for k in 1..=n + 1 {
                assert_eq!(d.tail_sum(k), b_explicit(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn parallel_and_sequential_enumeration_agree() {
        for n in [1, 6, 11] {
            assert_eq!(
                enumerate_heights_with(n, Execution::Sequential).unwrap(),
                enumerate_heights_with(n, Execution::Parallel).unwrap()
            );
        }
    }

    #[test]
    fn walk_oracle_examples() {
        assert_eq!(
            count_bounded_walks_oracle(WalkSpec::new(1, 0, 0)).unwrap(),
            c(0)
        );
        assert_eq!(
            count_bounded_walks_oracle(WalkSpec::new(1, 1, 0)).unwrap(),
            c(1)
        );
        assert_eq!(
            count_bounded_walks_oracle(WalkSpec::new(2, 2, 2)).unwrap(),
            c(6)
        );
        assert_eq!(
            count_bounded_walks_oracle(WalkSpec::new(0, 0, 0)).unwrap(),
            c(1)
        );
        assert!(count_bounded_walks_oracle(WalkSpec::new(11, 0, 0)).is_err());
    }

    #[test]
    fn walk_oracle_matches_reflection_sum() {
        for n in 1..=6 {
            for h in 0..=4 {
                for t in 0..=4 {
                    let spec = WalkSpec::new(n, h, t);
                    assert_eq!(
                        count_bounded_walks_oracle_with(spec, Execution::Sequential).unwrap(),
                        bounded_walk_count(spec),
                        "{spec:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn suffix_completion_examples() {
        assert_eq!(suffix_completions(2, 0), c(1));
        assert_eq!(suffix_completions(3, 1), c(2));
        assert_eq!(suffix_completions(3, 0), c(0));
        assert_eq!(suffix_completions(0, 0), c(1));
        assert_eq!(suffix_completions(2, 4), c(0));
        for n in 1..=12u32 {
            assert_eq!(suffix_completions(2 * n - 1, 1), catalan(n as usize));
            assert_eq!(suffix_completions(2 * n, 0), catalan(n as usize));
        }
    }

    #[test]
    fn physical_examples() {
        assert_eq!(physical_hit_probability(1, 1), frac(1, 1));
        assert_eq!(physical_hit_probability(2, 2), frac(2, 3));
        assert_eq!(physical_hit_probability(2, 3), frac(0, 1));
        assert_eq!(physical_hit_probability_oracle(2, 2).unwrap(), frac(2, 3));
        assert_eq!(physical_hit_probability_oracle(3, 1).unwrap(), frac(1, 1));
        let (_, total) = physical_weights_oracle(5, 1).unwrap();
        assert!(total.is_one());
        for n in 1..=12 {
            assert_eq!(physical_hit_probability(n, 1), frac(1, 1));
        }
    }

    /// Runs the drawing process on every ordering of `2n` labelled socks.
    fn hit_fraction_over_orderings(n: u32, k: u32) -> Fraction {
        fn permute(items: &mut Vec<u32>, start: usize, visit: &mut dyn FnMut(&[u32])) {
            if start == items.len() {
                visit(items);
                return;
            }
            for i in start..items.len() {
                items.swap(start, i);
                permute(items, start + 1, visit);
                items.swap(start, i);
            }
        }
        let mut socks: Vec<u32> = (0..2 * n).collect();
        let (mut hits, mut orders) = (0u64, 0u64);
        permute(&mut socks, 0, &mut |order| {
            let mut seen = vec![false; n as usize];
            let (mut unmatched, mut peak) = (0u32, 0u32);
            for &sock in order {
                let pair = (sock / 2) as usize;
                if seen[pair] {
                    unmatched -= 1;
                } else {
                    seen[pair] = true;
                    unmatched += 1;
                    peak = peak.max(unmatched);
                }
            }
            orders += 1;
            hits += u64::from(peak >= k);
        });
        frac(hits, orders)
    }

    #[test]
    fn physical_matches_labelled_orderings() {
        assert_eq!(hit_fraction_over_orderings(2, 2), frac(2, 3));
        for n in 1..=4 {
            for k in 1..=n {
                assert_eq!(
                    physical_hit_probability(n, k),
                    hit_fraction_over_orderings(n, k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn physical_dp_matches_path_weights() {
        for n in 1..=7 {
            for k in 1..=n + 1 {
                assert_eq!(
                    physical_hit_probability(n, k),
                    physical_hit_probability_oracle(n, k).unwrap(),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn models_differ() {
        let uniform = Fraction::new(b_explicit(2, 2), catalan(2));
        assert_eq!(uniform, frac(1, 2));
        assert_ne!(physical_hit_probability(2, 2), uniform);
    }
}
