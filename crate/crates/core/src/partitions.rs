//! Direct enumeration and counting of partitions, chain partitions and
//! solutions of `δ = x₁ + 2x₂ + ⋯ + mxₘ`.
//!
//! Nothing here goes through formal power sums except
//! [`count_weighted_solutions`], which is the generating-function side of the
//! chain-partition identity and is checked against the brute-force counts.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::class::{MultBound, PartitionClass};
use crate::enumeration::{trace_u64, TraceWindow};
use crate::error::{Error, Result};
use crate::field::{AlgInt, QuadField};
use crate::qsum::{product_over, QSum};

/// A multiset of totally positive parts, stored in descending canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<AlgInt>,
}

impl Partition {
    /// Sorts the parts; fails if any part is not totally positive.
    pub fn new(mut parts: Vec<AlgInt>) -> Result<Self> {
        if let Some(bad) = parts.iter().find(|p| !p.is_totally_positive()) {
            return Err(Error::NotTotallyPositive(bad.to_string()));
        }
        parts.sort_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Parts in descending canonical order.
    pub fn parts(&self) -> &[AlgInt] {
        &self.parts
    }

    /// Parts in ascending canonical order, the arrangement tested by [`is_chain`].
    pub fn ascending(&self) -> Vec<AlgInt> {
        self.parts.iter().rev().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts; `None` for the empty partition.
    pub fn total(&self) -> Option<AlgInt> {
        let mut it = self.parts.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, p| &acc + p))
    }

    pub fn has_distinct_parts(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] != w[1])
    }

    /// The multiset is a chain partition when its ascending arrangement is.
    pub fn is_chain(&self) -> bool {
        is_chain(&self.ascending())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

// Admissible parts for δ, in descending canonical order.
fn admissible_parts(delta: &AlgInt, class: &PartitionClass) -> Vec<AlgInt> {
    let mut parts: Vec<AlgInt> = TraceWindow::new(delta.field(), trace_u64(delta))
        .elements()
        .into_iter()
        .filter(|p| class.admits(p) && delta.dominates(p))
        .collect();
    parts.reverse();
    parts
}

/// Every partition of `δ` in the class, each multiset once, in canonical order
/// (descending parts, compared lexicographically).
pub fn enumerate_partitions(delta: &AlgInt, class: &PartitionClass) -> Vec<Partition> {
    if delta.is_zero() {
        return vec![Partition { parts: Vec::new() }];
    }
    if !delta.is_totally_positive() {
        return Vec::new();
    }
    let parts = admissible_parts(delta, class);
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend_partitions(delta, &parts, 0, class.mult_bound(), &mut current, &mut out);
    out.sort();
    out
}

fn extend_partitions(
    rem: &AlgInt,
    parts: &[AlgInt],
    start: usize,
    mult: MultBound,
    current: &mut Vec<AlgInt>,
    out: &mut Vec<Partition>,
) {
    for (i, p) in parts.iter().enumerate().skip(start) {
        let mut left = rem.clone();
        let mut k = 0u32;
        loop {
            k += 1;
            if !mult.allows(k) {
                break;
            }
            left = &left - p;
            if !left.is_totally_nonneg() {
                break;
            }
            current.push(p.clone());
            if left.is_zero() {
                out.push(Partition { parts: current.clone() });
            } else {
                extend_partitions(&left, parts, i + 1, mult, current, out);
            }
        }
        current.truncate(current.len() + 1 - k as usize);
    }
}

/// `p(H, δ)` by memoized recursion over (remainder, next part index).
pub fn count_partitions(delta: &AlgInt, class: &PartitionClass) -> BigInt {
    if delta.is_zero() {
        return BigInt::one();
    }
    if !delta.is_totally_positive() {
        return BigInt::zero();
    }
    let parts = admissible_parts(delta, class);
    let mut memo = HashMap::new();
    count_from(delta, &parts, 0, class.mult_bound(), &mut memo)
}

fn count_from(
    rem: &AlgInt,
    parts: &[AlgInt],
    start: usize,
    mult: MultBound,
    memo: &mut HashMap<(AlgInt, usize), BigInt>,
) -> BigInt {
    if rem.is_zero() {
        return BigInt::one();
    }
    if start == parts.len() {
        return BigInt::zero();
    }
    let key = (rem.clone(), start);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    // skip parts[start] entirely, or use it k ≥ 1 times
    let mut total = count_from(rem, parts, start + 1, mult, memo);
    let p = &parts[start];
    let mut left = rem.clone();
    let mut k = 1u32;
    while mult.allows(k) {
        left = &left - p;
        if !left.is_totally_nonneg() {
            break;
        }
        total += count_from(&left, parts, start + 1, mult, memo);
        k += 1;
    }
    memo.insert(key, total.clone());
    total
}

/// `λ_{i+1} − λ_i ⪰ 0` for every consecutive pair of the given arrangement.
pub fn is_chain(seq: &[AlgInt]) -> bool {
    seq.windows(2).all(|w| w[1].dominates(&w[0]))
}

/// Largest possible number of parts of a partition of `δ`.
pub fn max_parts(delta: &AlgInt) -> usize {
    (trace_u64(delta) / delta.field().min_positive_trace()) as usize
}

/// Chain partitions of `δ` in the class with at most `max_parts` parts
/// (`None` = no limit), as ascending sequences in lexicographic canonical order.
///
/// Built directly: each new part must dominate the previous one.
pub fn enumerate_chains(
    delta: &AlgInt,
    class: &PartitionClass,
    max_parts: Option<usize>,
) -> Vec<Vec<AlgInt>> {
    let mut out = Vec::new();
    if !delta.is_totally_positive() {
        return out;
    }
    let limit = max_parts.unwrap_or_else(|| self::max_parts(delta));
    let mut parts = admissible_parts(delta, class);
    parts.reverse();
    let mut current = Vec::new();
    extend_chain(delta, &parts, limit, class.mult_bound(), 0, &mut current, &mut out);
    out
}

fn extend_chain(
    rem: &AlgInt,
    parts: &[AlgInt],
    limit: usize,
    mult: MultBound,
    run: u32,
    current: &mut Vec<AlgInt>,
    out: &mut Vec<Vec<AlgInt>>,
) {
    if rem.is_zero() {
        out.push(current.clone());
        return;
    }
    if current.len() == limit {
        return;
    }
    for p in parts {
        let run = match current.last() {
            Some(last) if last == p => run + 1,
            Some(last) if !p.dominates(last) => continue,
            _ => 1,
        };
        if !mult.allows(run) || !rem.dominates(p) {
            continue;
        }
        current.push(p.clone());
        extend_chain(&(rem - p), parts, limit, mult, run, current, out);
        current.pop();
    }
}

/// `p(⪰, m, δ)`: chain partitions of `δ` with at most `m` parts; `None`
/// counts all chain partitions `p(⪰, δ)`.
pub fn count_chain(delta: &AlgInt, max_parts: Option<usize>) -> usize {
    enumerate_chains(delta, &PartitionClass::all(), max_parts).len()
}

/// Chain partitions of `δ` with exactly `r` parts.
pub fn count_chain_exact(delta: &AlgInt, r: usize) -> usize {
    enumerate_chains(delta, &PartitionClass::all(), Some(r))
        .iter()
        .filter(|c| c.len() == r)
        .count()
}

/// A tuple `(x₁, …, xₘ)` with every `xᵢ ⪰ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainSolution {
    xs: Vec<AlgInt>,
}

impl ChainSolution {
    pub fn new(xs: Vec<AlgInt>) -> Result<Self> {
        if let Some(bad) = xs.iter().find(|x| !x.is_totally_nonneg()) {
            return Err(Error::NotTotallyPositive(bad.to_string()));
        }
        Ok(ChainSolution { xs })
    }

    pub fn xs(&self) -> &[AlgInt] {
        &self.xs
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Largest index `r` (1-based) with `x_r ≠ 0`.
    pub fn top(&self) -> Option<usize> {
        self.xs.iter().rposition(|x| !x.is_zero()).map(|i| i + 1)
    }

    /// `x₁ + 2x₂ + ⋯ + mxₘ`.
    pub fn weighted_sum(&self, field: QuadField) -> AlgInt {
        self.xs
            .iter()
            .enumerate()
            .fold(field.zero(), |acc, (i, x)| &acc + &x.scale(i as u64 + 1))
    }
}

impl fmt::Display for ChainSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.xs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// `φ(λ₁, …, λ_r) = (λ_r − λ_{r−1}, …, λ₂ − λ₁, λ₁, 0, …, 0)` padded to length `m`.
///
/// `chain` is the ascending arrangement.
pub fn phi(chain: &[AlgInt], m: usize) -> Result<ChainSolution> {
    if chain.len() > m {
        return Err(Error::TooManyParts { parts: chain.len(), max: m });
    }
    let first = chain.first().ok_or_else(|| Error::NotAChain("empty".into()))?;
    if !chain.iter().all(AlgInt::is_totally_positive) || !is_chain(chain) {
        let shown: Vec<String> = chain.iter().map(|p| p.to_string()).collect();
        return Err(Error::NotAChain(shown.join(", ")));
    }
    let mut xs: Vec<AlgInt> = chain.windows(2).rev().map(|w| &w[1] - &w[0]).collect();
    xs.push(first.clone());
    xs.resize(m, first.field().zero());
    Ok(ChainSolution { xs })
}

/// `ψ(μ₁, …, μₘ) = (μ_r, μ_{r−1} + μ_r, …, μ₁ + ⋯ + μ_r)` with `r` the top
/// nonzero index; the inverse of [`phi`]. Returns the ascending arrangement.
pub fn psi(sol: &ChainSolution) -> Result<Vec<AlgInt>> {
    let r = sol.top().ok_or(Error::ZeroSolution)?;
    let mut out = Vec::with_capacity(r);
    let mut suffix = sol.xs[r - 1].clone();
    out.push(suffix.clone());
    for x in sol.xs[..r - 1].iter().rev() {
        suffix = &suffix + x;
        out.push(suffix.clone());
    }
    Ok(out)
}

/// Every `(x₁, …, xₘ)` with `xᵢ ⪰ 0` and `∑ i·xᵢ = δ`, by direct search.
pub fn enumerate_weighted_solutions(delta: &AlgInt, m: usize) -> Vec<ChainSolution> {
    let mut out = Vec::new();
    if m == 0 || !delta.is_totally_nonneg() {
        return out;
    }
    let field = delta.field();
    let mut xs = vec![field.zero(); m];
    fill_solutions(delta, m, &mut xs, &mut out);
    out.sort();
    out
}

// Chooses x_i for i = idx, idx-1, ..., 1.
fn fill_solutions(rem: &AlgInt, idx: usize, xs: &mut Vec<AlgInt>, out: &mut Vec<ChainSolution>) {
    if idx == 1 {
        xs[0] = rem.clone();
        out.push(ChainSolution { xs: xs.clone() });
        return;
    }
    let field = rem.field();
    let w = idx as u64;
    xs[idx - 1] = field.zero();
    fill_solutions(rem, idx - 1, xs, out);
    for a in TraceWindow::new(field, trace_u64(rem) / w).elements() {
        let left = rem - &a.scale(w);
        if left.is_totally_nonneg() {
            xs[idx - 1] = a;
            fill_solutions(&left, idx - 1, xs, out);
        }
    }
    xs[idx - 1] = field.zero();
}

/// `∑_{α ⪰ 0} q^{iα}` truncated to the window.
pub fn multiples_series(field: QuadField, i: u64, max_trace: u64) -> QSum {
    let mut terms = vec![field.zero()];
    terms.extend(TraceWindow::new(field, max_trace / i).elements());
    terms.into_iter().fold(QSum::zero(field, max_trace), |acc, a| {
        acc.add(&QSum::monomial(&a.scale(i), 1, max_trace).expect("nonnegative"))
            .expect("shared window")
    })
}

/// `∏_{i=1}^{m} ∑_{α ⪰ 0} q^{iα}` in the window; its coefficient at `δ` counts
/// solutions of `δ = x₁ + 2x₂ + ⋯ + mxₘ`.
pub fn weighted_solutions_series(field: QuadField, m: usize, max_trace: u64) -> QSum {
    product_over(field, max_trace, (1..=m as u64).map(|i| multiples_series(field, i, max_trace)))
        .expect("shared window")
}

/// Number of solutions of `δ = x₁ + 2x₂ + ⋯ + mxₘ` with `xᵢ ⪰ 0`, read off the
/// generating function.
pub fn count_weighted_solutions(delta: &AlgInt, m: usize) -> BigInt {
    let t = trace_u64(delta);
    weighted_solutions_series(delta.field(), m, t).coefficient(delta)
}

/// Solutions whose top nonzero index is exactly `r`: the difference of the
/// `r`- and `(r−1)`-fold products.
pub fn count_weighted_solutions_exact(delta: &AlgInt, r: usize) -> BigInt {
    if r == 0 {
        return BigInt::from(u8::from(delta.is_zero()));
    }
    count_weighted_solutions(delta, r) - count_weighted_solutions(delta, r - 1)
}
