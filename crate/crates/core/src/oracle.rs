//! Brute-force ground truth for Max-Cut and the Exact Sum problem.

use std::collections::{BTreeMap, BinaryHeap};
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, VertexPartition};
use crate::rational::{common_denominator, scaled_integer, Rational};

/// Largest graph accepted by [`brute_force_maxcut`].
pub const MAX_ORACLE_N: usize = 28;
/// Optimal cuts kept in a [`MaxCutResult`]; `count` is always exact.
pub const STORED_CUT_CAP: usize = 4096;
/// Largest half-sum the dense Exact Sum table will allocate.
pub const EXACT_SUM_TARGET_CAP: u64 = 1 << 28;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the oracle cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("partition covers {found} vertices, graph has {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("instance is empty")]
    EmptyInstance,
    #[error("entry {index} is not positive")]
    NonPositive { index: usize },
    #[error("half-sum {target} exceeds the table cap of {cap}")]
    TargetTooLarge { target: u64, cap: u64 },
}

/// Maximum cut with every maximizing partition (vertex 0 on side A).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxCutResult {
    #[serde(with = "crate::rational::serde_str")]
    pub value: Rational,
    /// Sorted by mask; truncated to [`STORED_CUT_CAP`] entries.
    pub optimal_cuts: Vec<VertexPartition>,
    /// Number of optimal partitions up to a global flip.
    pub count: u64,
}

impl MaxCutResult {
    pub fn is_unique(&self) -> bool {
        self.count == 1
    }
}

/// Combinatorial cut weight.
pub fn cut_value(g: &Graph, p: &VertexPartition) -> Result<Rational, OracleError> {
    if p.len() != g.n() {
        return Err(OracleError::SizeMismatch {
            expected: g.n(),
            found: p.len(),
        });
    }
    Ok(g.edges()
        .filter(|((u, v), _)| p.side(*u) != p.side(*v))
        .fold(Rational::zero(), |acc, (_, w)| acc + w))
}

/// Exhaustive Max-Cut over the `2^(n-1)` partitions with vertex 0 pinned.
pub fn brute_force_maxcut(g: &Graph) -> Result<MaxCutResult, OracleError> {
    let n = g.n();
    if n > MAX_ORACLE_N {
        return Err(OracleError::TooLarge { n, cap: MAX_ORACLE_N });
    }
    if n <= 1 {
        return Ok(MaxCutResult {
            value: Rational::zero(),
            optimal_cuts: vec![VertexPartition::from_mask(n, 0)],
            count: 1,
        });
    }
    let scale = common_denominator(g.edges().map(|(_, w)| w));
    let ints: Vec<((usize, usize), BigInt)> = g
        .edges()
        .map(|(k, w)| (k, scaled_integer(w, &scale)))
        .collect();
    let abs_total = ints.iter().fold(BigInt::zero(), |acc, (_, w)| acc + w.abs());
    let fits = abs_total.to_i64().is_some_and(|t| t < i64::MAX / 4);

    let (best_scaled, count, masks) = if fits {
        let w = dense_weights(n, ints.iter().map(|(k, w)| (*k, w.to_i64().unwrap())));
        let (b, c, m) = enumerate(n, &w);
        (BigInt::from(b), c, m)
    } else {
        let w = dense_weights(n, ints.iter().map(|(k, w)| (*k, w.clone())));
        enumerate(n, &w)
    };
    let value = Rational::new(best_scaled, scale);
    let optimal_cuts = masks
        .into_iter()
        .map(|m| VertexPartition::from_mask(n, m << 1))
        .collect();
    Ok(MaxCutResult {
        value,
        optimal_cuts,
        count,
    })
}

fn dense_weights<T: Clone + Zero>(n: usize, entries: impl Iterator<Item = ((usize, usize), T)>) -> Vec<Vec<T>> {
    let mut w = vec![vec![T::zero(); n]; n];
    for ((u, v), x) in entries {
        w[u][v] = x.clone();
        w[v][u] = x;
    }
    w
}

trait Weight: Clone + Ord + Zero + Send + Sync + for<'a> Add<&'a Self, Output = Self> + for<'a> Sub<&'a Self, Output = Self> {}
impl<T> Weight for T where T: Clone + Ord + Zero + Send + Sync + for<'a> Add<&'a T, Output = T> + for<'a> Sub<&'a T, Output = T> {}

struct Shard<T> {
    best: T,
    count: u64,
    /// Max-heap of the smallest optimal masks seen.
    masks: BinaryHeap<u64>,
}

impl<T: Weight> Shard<T> {
    fn offer(&mut self, value: &T, mask: u64) {
        match value.cmp(&self.best) {
            std::cmp::Ordering::Greater => {
                self.best = value.clone();
                self.count = 1;
                self.masks.clear();
                self.masks.push(mask);
            }
            std::cmp::Ordering::Equal => {
                self.count += 1;
                self.masks.push(mask);
                if self.masks.len() > STORED_CUT_CAP {
                    self.masks.pop();
                }
            }
            std::cmp::Ordering::Less => {}
        }
    }
}

/// Gray-code sweep over the free vertices `1..n`, sharded on the top bits.
/// Returns the best value, the optimum count and the smallest optimal masks
/// (bit `i` = vertex `i + 1` on side B).
fn enumerate<T: Weight>(n: usize, w: &[Vec<T>]) -> (T, u64, Vec<u64>) {
    let free = n - 1;
    let shard_bits = free.min(6);
    let low_bits = free - shard_bits;
    let shards: Vec<Shard<T>> = (0..1u64 << shard_bits)
        .into_par_iter()
        .map(|hi| {
            let base = hi << low_bits;
            // side[v] true means v on side B.
            let mut side: Vec<bool> = (0..n)
                .map(|v| v > 0 && (base >> (v - 1)) & 1 == 1)
                .collect();
            let mut value = T::zero();
            for u in 0..n {
                for v in u + 1..n {
                    if side[u] != side[v] {
                        value = value + &w[u][v];
                    }
                }
            }
            let mut shard = Shard {
                best: value.clone(),
                count: 1,
                masks: BinaryHeap::from([base]),
            };
            let mut mask = base;
            for step in 1u64..(1u64 << low_bits) {
                let bit = step.trailing_zeros() as usize;
                let v = bit + 1;
                // Flipping v toggles every edge at v between cut and uncut.
                let (mut gain, mut loss) = (T::zero(), T::zero());
                for (u, wu) in w[v].iter().enumerate() {
                    if u == v || wu.is_zero() {
                        continue;
                    }
                    if side[u] == side[v] {
                        gain = gain + wu;
                    } else {
                        loss = loss + wu;
                    }
                }
                value = value + &gain - &loss;
                side[v] = !side[v];
                mask ^= 1 << bit;
                shard.offer(&value, mask);
            }
            shard
        })
        .collect();

    let best = shards
        .iter()
        .map(|s| s.best.clone())
        .max()
        .expect("at least one shard");
    let mut count = 0u64;
    let mut masks = Vec::new();
    for s in shards.into_iter().filter(|s| s.best == best) {
        count += s.count;
        masks.extend(s.masks);
    }
    masks.sort_unstable();
    masks.truncate(STORED_CUT_CAP);
    (best, count, masks)
}

/// Subset of indices summing to half the total, by a subset-sum table.
/// Returns `None` when the total is odd or no such subset exists.
pub fn exact_sum_decision(a: &[u64]) -> Result<Option<Vec<usize>>, OracleError> {
    if a.is_empty() {
        return Err(OracleError::EmptyInstance);
    }
    if let Some(index) = a.iter().position(|&x| x == 0) {
        return Err(OracleError::NonPositive { index });
    }
    let total: u128 = a.iter().map(|&x| x as u128).sum();
    if total % 2 == 1 {
        return Ok(None);
    }
    let target = total / 2;
    if target > EXACT_SUM_TARGET_CAP as u128 {
        return Err(OracleError::TargetTooLarge {
            target: u64::try_from(target).unwrap_or(u64::MAX),
            cap: EXACT_SUM_TARGET_CAP,
        });
    }
    let target = target as usize;
    const UNREACHED: u32 = u32::MAX;
    const ROOT: u32 = u32::MAX - 1;
    // first[s] is the item whose addition first reached sum s.
    let mut first = vec![UNREACHED; target + 1];
    first[0] = ROOT;
    for (i, &x) in a.iter().enumerate() {
        let x = x as usize;
        if x > target {
            continue;
        }
        for s in (x..=target).rev() {
            if first[s] == UNREACHED && first[s - x] != UNREACHED {
                first[s] = i as u32;
            }
        }
        if first[target] != UNREACHED {
            break;
        }
    }
    if first[target] == UNREACHED {
        return Ok(None);
    }
    let mut subset = Vec::new();
    let mut s = target;
    while s > 0 {
        let i = first[s] as usize;
        subset.push(i);
        s -= a[i] as usize;
    }
    subset.sort_unstable();
    Ok(Some(subset))
}

/// Exact Sum on positive rationals, scaled to integers by the common denominator.
pub fn balanced_subset(m: &[Rational]) -> Result<Option<Vec<usize>>, OracleError> {
    if let Some(index) = m.iter().position(|x| !x.is_positive()) {
        return Err(OracleError::NonPositive { index });
    }
    let scale = common_denominator(m);
    let ints: Option<Vec<u64>> = m.iter().map(|x| scaled_integer(x, &scale).to_u64()).collect();
    match ints {
        Some(v) => exact_sum_decision(&v),
        None => Err(OracleError::TargetTooLarge {
            target: u64::MAX,
            cap: EXACT_SUM_TARGET_CAP,
        }),
    }
}

/// Number of partitions `{S, Sᶜ}` with equal mass on both sides, counted up
/// to complement and saturating at `cap`.
pub fn count_balanced_partitions(m: &[Rational], cap: u64) -> u64 {
    if m.is_empty() {
        return 0;
    }
    let total = m.iter().fold(Rational::zero(), |acc, x| acc + x);
    let all_positive = m.iter().all(|x| x.is_positive());
    let scale = common_denominator(m.iter().chain(std::iter::once(&total)));
    let ints: Vec<BigInt> = m.iter().map(|x| scaled_integer(x, &scale)).collect();
    let total_int = scaled_integer(&total, &scale);
    if total_int.is_odd() {
        return 0;
    }
    let target = &total_int / 2;
    // Sparse table of reachable sums and their subset counts.
    let mut ways: BTreeMap<BigInt, u128> = BTreeMap::new();
    ways.insert(BigInt::zero(), 1);
    for x in &ints {
        let mut next = ways.clone();
        for (s, c) in &ways {
            let t = s + x;
            if all_positive && t > target {
                continue;
            }
            let e = next.entry(t).or_insert(0);
            *e = e.saturating_add(*c);
        }
        ways = next;
    }
    let subsets = ways.get(&target).copied().unwrap_or(0);
    // Each partition is counted once as S and once as its complement.
    let partitions = if subsets == u128::MAX { u128::MAX } else { subsets / 2 };
    partitions.min(cap as u128) as u64
}
