//! Per-base k-palindrome generation in ascending order and the per-base
//! counting function Φ_k(N,b).
//!
//! A k-palindrome in base b is determined by its first ⌈k/2⌉ digits (the
//! prefix); mirroring fills in the rest. Palindrome value is strictly
//! monotone in the integer encoding of the prefix, so counting reduces to a
//! binary search over the prefix interval and enumeration to an odometer
//! walk over prefix digit strings.

use crate::error::{Error, Result};
use crate::radix::{self, Base, Natural};

/// The split `k = 2i + r` with `r ∈ {0,1}`; a prefix has `i + r` digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PalindromeShape {
    pub k: u32,
    pub i: u32,
    pub r: u32,
}

impl PalindromeShape {
    pub fn new(k: u32) -> Self {
        assert!(k >= 1, "palindrome length must be at least 1");
        PalindromeShape {
            k,
            i: k / 2,
            r: k % 2,
        }
    }

    /// Number of free digits: i + r.
    #[inline]
    pub fn prefix_len(self) -> u32 {
        self.i + self.r
    }
}

/// A triple certifying one palindromic representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PalindromeWitness {
    pub value: Natural,
    pub base: u64,
    pub length: u32,
}

/// Value of the k-palindrome whose prefix digits (most-significant first)
/// are `prefix`. `None` on 64-bit overflow.
#[inline]
fn mirror_value(prefix: &[u64], base: u64, shape: PalindromeShape) -> Option<u64> {
    let half = shape.prefix_len() as usize;
    debug_assert_eq!(prefix.len(), half);
    let k = shape.k as usize;
    let mut acc: u64 = 0;
    for j in 0..k {
        let d = if j < half {
            prefix[j]
        } else {
            prefix[k - 1 - j]
        };
        acc = acc.checked_mul(base)?.checked_add(d)?;
    }
    Some(acc)
}

/// The unique k-palindrome in base b whose high digits equal `prefix`.
pub fn prefix_to_palindrome(prefix: &[u64], b: Base, shape: PalindromeShape) -> Result<Natural> {
    if prefix.len() != shape.prefix_len() as usize {
        return Err(Error::Unsupported(format!(
            "prefix must have {} digits for length {}, got {}",
            shape.prefix_len(),
            shape.k,
            prefix.len()
        )));
    }
    if prefix[0] == 0 {
        return Err(Error::LeadingZero);
    }
    for &d in prefix {
        if d >= b.get() {
            return Err(Error::DigitOutOfRange {
                digit: d,
                base: b.get(),
            });
        }
    }
    mirror_value(prefix, b.get(), shape).ok_or(Error::Overflow)
}

/// Ascending stream of all k-palindromes in base b that are `<= limit`.
/// Exhaustive and duplicate-free; empty when the smallest one exceeds
/// the limit.
pub fn enumerate(k: u32, b: Base, limit: Natural) -> Palindromes {
    Palindromes::new(k, b, limit)
}

/// Iterator behind [`enumerate`]; yields raw values. Use
/// [`Palindromes::witnesses`] for certified triples.
#[derive(Debug, Clone)]
pub struct Palindromes {
    base: u64,
    shape: PalindromeShape,
    /// Current prefix digits, most-significant first; odometer state.
    prefix: Vec<u64>,
    limit: u64,
    done: bool,
}

impl Palindromes {
    fn new(k: u32, b: Base, limit: u64) -> Self {
        let shape = PalindromeShape::new(k);
        let half = shape.prefix_len() as usize;
        let mut prefix = vec![0u64; half];
        prefix[0] = 1; // smallest prefix: 1 0 ... 0
        Palindromes {
            base: b.get(),
            shape,
            prefix,
            limit,
            done: false,
        }
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn witnesses(self) -> impl Iterator<Item = PalindromeWitness> {
        let base = self.base;
        let length = self.shape.k;
        self.map(move |value| PalindromeWitness {
            value,
            base,
            length,
        })
    }

    /// Odometer step over prefix digit strings; flags `done` past the last.
    fn advance(&mut self) {
        let base = self.base;
        for j in (0..self.prefix.len()).rev() {
            if self.prefix[j] + 1 < base {
                self.prefix[j] += 1;
                return;
            }
            self.prefix[j] = 0;
        }
        self.done = true;
    }
}

impl Iterator for Palindromes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        // Value is monotone in the prefix: first overflow or limit breach
        // exhausts the stream.
        match mirror_value(&self.prefix, self.base, self.shape) {
            Some(v) if v <= self.limit => {
                self.advance();
                Some(v)
            }
            _ => {
                self.done = true;
                None
            }
        }
    }
}

/// Value of the palindrome with integer-encoded prefix `p` (the prefix read
/// as a base-b number). `None` on overflow.
fn palindrome_of_prefix_int(p: u64, b: u64, shape: PalindromeShape) -> Option<u64> {
    let half = shape.prefix_len() as usize;
    let mut digits = [0u64; radix::MAX_DIGITS];
    let len = radix::digits_lsd_first(p, b, &mut digits);
    debug_assert_eq!(len, half);
    let k = shape.k as usize;
    let mut acc: u64 = 0;
    for j in 0..k {
        // msd-first digit j of the palindrome
        let idx = if j < half { half - 1 - j } else { j - (k - half) };
        acc = acc.checked_mul(b)?.checked_add(digits[idx])?;
    }
    Some(acc)
}

/// Φ_k(N,b): the number of k-palindromes in base b that are `<= n_max`.
///
/// Binary search over integer-encoded prefixes; O(k log b) instead of
/// enumerating.
pub fn count_upto(k: u32, b: Base, n_max: Natural) -> Natural {
    let shape = PalindromeShape::new(k);
    let base = b.get();
    let half = shape.prefix_len();
    let Ok(p_lo) = radix::checked_pow(base, half - 1) else {
        return 0; // even the smallest prefix overflows 64 bits
    };
    match palindrome_of_prefix_int(p_lo, base, shape) {
        Some(v) if v <= n_max => {}
        _ => return 0,
    }
    // Largest prefix: base^half - 1, capped by n_max (palindrome >= prefix).
    let p_hi = radix::checked_pow(base, half)
        .map(|v| v - 1)
        .unwrap_or(u64::MAX)
        .min(n_max);
    // Invariant: pal(lo) <= n_max, pal(hi+1) > n_max (conceptually).
    let mut lo = p_lo;
    let mut hi = p_hi;
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        let fits = matches!(palindrome_of_prefix_int(mid, base, shape), Some(v) if v <= n_max);
        if fits {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo - p_lo + 1
}

/// Φ_k(∞,b): the total number of k-palindromes in base b.
/// `(b-1)·b^(i+r-1)` for every k ≥ 1 (which is `b-1` when k = 1).
pub fn count_all(k: u32, b: Base) -> Result<Natural> {
    let shape = PalindromeShape::new(k);
    let base = b.get();
    radix::checked_pow(base, shape.prefix_len() - 1)?
        .checked_mul(base - 1)
        .ok_or(Error::Overflow)
}

/// The largest k-palindrome in base b: all digits b-1, i.e. `b^k - 1`.
pub fn max_palindrome(k: u32, b: Base) -> Result<Natural> {
    Ok(radix::checked_pow(b.get(), k)? - 1)
}
