//! Base-independent counting: Φ_k(N), multiplicity μ_k(n) with witness
//! lists, μ_{≥k}(n), the multi-base counting function Φ_{k,ℓ}(N), and the
//! frontier search for record multiplicities.
//!
//! Deduplication across bases runs on one of two strategies: a 1-bit-per-
//! integer presence table (fast at desk scale) or a k-way merge of the
//! per-base ascending streams (unbounded in N). Both are deterministic and
//! must agree bit for bit.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::palgen::{self, PalindromeWitness, Palindromes};
use crate::radix::{self, Base, Natural};

/// Dedup strategy actually used by a counting call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Bitset,
    SortedMerge,
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Strategy::Bitset => write!(f, "bitset"),
            Strategy::SortedMerge => write!(f, "sorted-merge"),
        }
    }
}

/// Strategy selection for [`phi`] / [`phi_multi`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StrategyChoice {
    /// Bitset when the presence table fits the memory budget, merge beyond.
    #[default]
    Auto,
    Bitset,
    SortedMerge,
}

/// Default presence-table budget: 2^33 bits = 1 GiB.
pub const DEFAULT_MEMORY_BUDGET_BYTES: u64 = 1 << 30;

#[derive(Debug, Clone)]
pub struct PhiConfig {
    pub strategy: StrategyChoice,
    pub memory_budget_bytes: u64,
}

impl Default for PhiConfig {
    fn default() -> Self {
        PhiConfig {
            strategy: StrategyChoice::Auto,
            memory_budget_bytes: DEFAULT_MEMORY_BUDGET_BYTES,
        }
    }
}

/// Output record of a counting query.
#[derive(Debug, Clone)]
pub struct CountResult {
    pub k: u32,
    pub n: Natural,
    /// Multiplicity threshold; 1 for plain Φ_k.
    pub ell: u32,
    pub count: Natural,
    pub elapsed: Duration,
    pub strategy: Strategy,
}

/// μ_k(n), either a finite base count or the symbolic infinity of k = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn is_at_least(self, ell: u64) -> bool {
        match self {
            Multiplicity::Infinite => true,
            Multiplicity::Finite(m) => m >= ell,
        }
    }
}

impl std::fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Multiplicity::Finite(m) => write!(f, "{m}"),
            Multiplicity::Infinite => write!(f, "infinite"),
        }
    }
}

/// Full multiplicity record for one value: every base witness and μ.
#[derive(Debug, Clone)]
pub struct MultiplicityProfile {
    pub value: Natural,
    pub k: u32,
    /// Sorted by base ascending; for k = 1 truncated to bases <= n+1.
    pub witnesses: Vec<PalindromeWitness>,
    pub mu: Multiplicity,
}

/// The closed interval of bases that can host a length-k representation of
/// `n`: those b with `b^(k-1) + 1 <= n <= b^k - 1`. May be empty
/// (`lo > hi`). For a counting bound take the upper end with `n = N`; every
/// base from 2 up to it can contribute to Φ_k(N).
pub fn base_range(k: u32, n: Natural) -> Result<(u64, u64)> {
    if k < 2 {
        return Err(Error::LengthTooSmall { min: 2, got: k });
    }
    if n < 3 {
        // no b >= 2 has b^(k-1) + 1 <= n
        return Ok((2, 1));
    }
    let lo = radix::integer_root(n, k) + 1; // smallest b with b^k > n
    let hi = radix::integer_root(n - 1, k - 1); // largest b with b^(k-1) <= n-1
    Ok((lo.max(2), hi))
}

/// True iff n is k-palindromic in at least one base.
pub fn is_intrinsically_k_palindromic(k: u32, n: Natural) -> bool {
    if n == 0 {
        return false;
    }
    if k == 1 {
        return true; // n = (n)_b for any b > n
    }
    let Ok((lo, hi)) = base_range(k, n) else {
        return false;
    };
    (lo..=hi).any(|b| radix::is_k_palindromic(n, k, Base::new(b).unwrap()))
}

/// μ_k(n) with its full witness list.
pub fn mu(k: u32, n: Natural) -> MultiplicityProfile {
    assert!(n >= 1 && k >= 1);
    if k == 1 {
        // Infinite: n = (n)_b for every b > n. The witness list is
        // truncated to bases <= n+1, leaving the single smallest one.
        let b = n + 1;
        debug_assert!(radix::is_k_palindromic(n, 1, Base::new(b).unwrap()));
        return MultiplicityProfile {
            value: n,
            k,
            witnesses: vec![PalindromeWitness {
                value: n,
                base: b,
                length: 1,
            }],
            mu: Multiplicity::Infinite,
        };
    }
    let (lo, hi) = base_range(k, n).expect("k >= 2");
    let witnesses: Vec<PalindromeWitness> = (lo..=hi)
        .filter(|&b| radix::is_k_palindromic(n, k, Base::new(b).unwrap()))
        .map(|base| PalindromeWitness {
            value: n,
            base,
            length: k,
        })
        .collect();
    MultiplicityProfile {
        value: n,
        k,
        mu: Multiplicity::Finite(witnesses.len() as u64),
        witnesses,
    }
}

/// μ_{≥k}(n): bases in which n's expansion has length at least k and is
/// palindromic. Witnesses carry each base's actual length. k = 1 is
/// rejected (the count is infinite).
pub fn mu_ge(k: u32, n: Natural) -> Result<MultiplicityProfile> {
    if k < 2 {
        return Err(Error::InfiniteMultiplicity);
    }
    if n == 0 {
        return Err(Error::ZeroValue);
    }
    let mut witnesses = Vec::new();
    if n >= 3 {
        // length >= k forces b^(k-1) <= n - 1
        let hi = radix::integer_root(n - 1, k - 1);
        let mut buf = [0u64; radix::MAX_DIGITS];
        for b in 2..=hi {
            let len = radix::digits_lsd_first(n, b, &mut buf);
            if len >= k as usize && (0..len / 2).all(|j| buf[j] == buf[len - 1 - j]) {
                witnesses.push(PalindromeWitness {
                    value: n,
                    base: b,
                    length: len as u32,
                });
            }
        }
    }
    Ok(MultiplicityProfile {
        value: n,
        k,
        mu: Multiplicity::Finite(witnesses.len() as u64),
        witnesses,
    })
}

fn bitset_bytes(n: Natural) -> u64 {
    (n / 64 + 1) * 8
}

/// One ascending stream per contributing base for (k, N).
fn per_base_streams(k: u32, n_limit: Natural) -> Vec<Palindromes> {
    debug_assert!(k >= 2);
    let (_, b_max) = base_range(k, n_limit).expect("k >= 2");
    (2..=b_max)
        .map(|b| palgen::enumerate(k, Base::new(b).unwrap(), n_limit))
        .collect()
}

fn phi_bitset(k: u32, n_limit: Natural) -> u64 {
    let (_, b_max) = base_range(k, n_limit).expect("k >= 2");
    if b_max < 2 {
        return 0;
    }
    let words = (n_limit / 64 + 1) as usize;
    let bits: Vec<AtomicU64> = (0..words).map(|_| AtomicU64::new(0)).collect();
    // OR is commutative and idempotent: the table is identical for any
    // scheduling of the base chunks.
    (2..=b_max).into_par_iter().for_each(|b| {
        for v in palgen::enumerate(k, Base::new(b).unwrap(), n_limit) {
            bits[(v / 64) as usize].fetch_or(1 << (v % 64), AtomicOrdering::Relaxed);
        }
    });
    bits.par_iter()
        .map(|w| w.load(AtomicOrdering::Relaxed).count_ones() as u64)
        .sum()
}

/// Merges the per-base ascending streams, invoking `visit(value, run)` for
/// each distinct value with the number of bases that produced it. Returns
/// early when `visit` yields `false`.
fn merge_runs(k: u32, n_limit: Natural, mut visit: impl FnMut(u64, u64) -> bool) {
    let mut streams = per_base_streams(k, n_limit);
    let mut heap: BinaryHeap<Reverse<(u64, usize)>> = BinaryHeap::new();
    for (idx, s) in streams.iter_mut().enumerate() {
        if let Some(v) = s.next() {
            heap.push(Reverse((v, idx)));
        }
    }
    let mut current: Option<(u64, u64)> = None;
    while let Some(Reverse((v, idx))) = heap.pop() {
        if let Some(next) = streams[idx].next() {
            heap.push(Reverse((next, idx)));
        }
        current = match current {
            Some((cv, run)) if cv == v => Some((cv, run + 1)),
            Some((cv, run)) => {
                if !visit(cv, run) {
                    return;
                }
                Some((v, 1))
            }
            None => Some((v, 1)),
        };
    }
    if let Some((cv, run)) = current {
        visit(cv, run);
    }
}

fn resolve_strategy(n_limit: Natural, cfg: &PhiConfig) -> Result<Strategy> {
    match cfg.strategy {
        StrategyChoice::Bitset => {
            let needed = bitset_bytes(n_limit);
            if needed > cfg.memory_budget_bytes {
                return Err(Error::MemoryBudget {
                    needed,
                    budget: cfg.memory_budget_bytes,
                });
            }
            Ok(Strategy::Bitset)
        }
        StrategyChoice::SortedMerge => Ok(Strategy::SortedMerge),
        StrategyChoice::Auto => {
            if bitset_bytes(n_limit) <= cfg.memory_budget_bytes {
                Ok(Strategy::Bitset)
            } else {
                Ok(Strategy::SortedMerge)
            }
        }
    }
}

/// Φ_k(N): distinct n <= N that are k-palindromic in at least one base.
pub fn phi(k: u32, n_limit: Natural, cfg: &PhiConfig) -> Result<CountResult> {
    assert!(k >= 1 && n_limit >= 1);
    let start = Instant::now();
    let strategy = resolve_strategy(n_limit, cfg)?;
    let count = if k == 1 {
        n_limit // every number is 1-palindromic
    } else {
        match strategy {
            Strategy::Bitset => phi_bitset(k, n_limit),
            Strategy::SortedMerge => {
                let mut count = 0u64;
                merge_runs(k, n_limit, |_, _| {
                    count += 1;
                    true
                });
                count
            }
        }
    };
    Ok(CountResult {
        k,
        n: n_limit,
        ell: 1,
        count,
        elapsed: start.elapsed(),
        strategy,
    })
}

/// Φ_k(start + width) − Φ_k(start), computed as a per-n membership test
/// over the window rather than two full counts.
pub fn phi_window(k: u32, start: Natural, width: Natural) -> Natural {
    assert!(width >= 1);
    (start + 1..=start + width)
        .filter(|&n| is_intrinsically_k_palindromic(k, n))
        .count() as u64
}

/// Φ_{k,ℓ}(N): n <= N with at least ℓ distinct base witnesses of length k.
pub fn phi_multi(k: u32, ell: u32, n_limit: Natural, cfg: &PhiConfig) -> Result<CountResult> {
    assert!(k >= 1 && ell >= 1 && n_limit >= 1);
    if ell == 1 {
        // Φ_{k,1} = Φ_k
        return phi(k, n_limit, cfg);
    }
    let start = Instant::now();
    if k == 1 {
        // μ_1 = ∞ >= ell for every n
        return Ok(CountResult {
            k,
            n: n_limit,
            ell,
            count: n_limit,
            elapsed: start.elapsed(),
            strategy: Strategy::SortedMerge,
        });
    }
    let mut count = 0u64;
    merge_runs(k, n_limit, |_, run| {
        if run >= ell as u64 {
            count += 1;
        }
        true
    });
    Ok(CountResult {
        k,
        n: n_limit,
        ell,
        count,
        elapsed: start.elapsed(),
        strategy: Strategy::SortedMerge,
    })
}

/// Every n <= N with μ_k(n) >= ℓ, with full witnesses, ascending.
/// An empty result is the conjecture-consistent outcome for k >= 4,
/// k + ℓ >= 8.
pub fn frontier_search(k: u32, ell: u32, n_limit: Natural) -> Result<Vec<MultiplicityProfile>> {
    if k < 2 {
        return Err(Error::Unsupported(
            "frontier search requires k >= 2 (every n has infinite mu_1)".into(),
        ));
    }
    let mut hits = Vec::new();
    merge_runs(k, n_limit, |v, run| {
        if run >= ell as u64 {
            hits.push(v);
        }
        true
    });
    Ok(hits.into_iter().map(|v| mu(k, v)).collect())
}

/// Smallest n <= N with μ_k(n) >= ℓ, if any. Streams in ascending order and
/// stops at the first hit.
pub fn first_with_multiplicity(k: u32, ell: u32, n_limit: Natural) -> Option<MultiplicityProfile> {
    assert!(k >= 2 && ell >= 1);
    let mut hit: Option<u64> = None;
    merge_runs(k, n_limit, |v, run| {
        if run >= ell as u64 {
            hit = Some(v);
            false
        } else {
            true
        }
    });
    hit.map(|v| mu(k, v))
}
