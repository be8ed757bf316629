//! Exact base-b digit expansion, reconstruction, palindrome predicates and
//! integer k-th roots. Everything else in the crate is built on these.

use std::fmt;

use crate::error::{Error, Result};

/// Nonnegative integer as used by the core modules. The constructions
/// module switches to arbitrary precision where values outgrow 64 bits.
pub type Natural = u64;

/// Digit expansions never exceed 64 digits for a 64-bit value in base 2.
pub const MAX_DIGITS: usize = 64;

/// A radix base, `b >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Base(u64);

impl Base {
    pub fn new(b: u64) -> Result<Self> {
        if b < 2 {
            return Err(Error::BadBase(b));
        }
        Ok(Base(b))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for Base {
    type Error = Error;
    fn try_from(b: u64) -> Result<Self> {
        Base::new(b)
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A value's digit string in a given base, most-significant digit first.
///
/// Invariants: every digit is below the base, the leading digit is nonzero,
/// and there is at least one digit. Digits are full integers, not characters;
/// bases above 10 produce digits of 10 and up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadixExpansion {
    base: Base,
    digits: Vec<u64>,
}

impl RadixExpansion {
    pub fn new(base: Base, digits: Vec<u64>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::EmptyDigits);
        }
        if digits[0] == 0 {
            return Err(Error::LeadingZero);
        }
        for &d in &digits {
            if d >= base.get() {
                return Err(Error::DigitOutOfRange {
                    digit: d,
                    base: base.get(),
                });
            }
        }
        Ok(RadixExpansion { base, digits })
    }

    #[inline]
    pub fn base(&self) -> Base {
        self.base
    }

    /// Most-significant digit first.
    #[inline]
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    #[inline]
    pub fn len(&self) -> u32 {
        self.digits.len() as u32
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false // invariant: at least one digit
    }

    /// True iff the digit string reads the same in both directions.
    pub fn is_palindromic(&self) -> bool {
        let d = &self.digits;
        let k = d.len();
        (0..k / 2).all(|j| d[j] == d[k - 1 - j])
    }
}

impl fmt::Display for RadixExpansion {
    /// Renders like the usual tuple notation, e.g. `(2,14,14,2)_19`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, d) in self.digits.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")_{}", self.base)
    }
}

/// The base-b expansion of `n >= 1`, most-significant digit first.
pub fn to_digits(n: Natural, b: Base) -> Result<RadixExpansion> {
    if n == 0 {
        return Err(Error::ZeroValue);
    }
    let base = b.get();
    let mut digits = Vec::new();
    let mut x = n;
    while x > 0 {
        digits.push(x % base);
        x /= base;
    }
    digits.reverse();
    Ok(RadixExpansion { base: b, digits })
}

/// Reconstructs the value of an expansion; overflow is reported, not wrapped.
pub fn from_digits(e: &RadixExpansion) -> Result<Natural> {
    let base = e.base.get();
    let mut acc: u64 = 0;
    for &d in e.digits() {
        acc = acc
            .checked_mul(base)
            .and_then(|v| v.checked_add(d))
            .ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

/// Fills `buf` with the base-b digits of `n`, least-significant first.
/// Returns the digit count. Internal: avoids allocation in hot loops.
#[inline]
pub(crate) fn digits_lsd_first(n: u64, base: u64, buf: &mut [u64; MAX_DIGITS]) -> usize {
    debug_assert!(n >= 1 && base >= 2);
    let mut x = n;
    let mut len = 0;
    while x > 0 {
        buf[len] = x % base;
        x /= base;
        len += 1;
    }
    len
}

/// True iff the base-b expansion of `n` has length exactly `k` and is
/// palindromic. Out-of-range lengths return false rather than an error.
pub fn is_k_palindromic(n: Natural, k: u32, b: Base) -> bool {
    if n == 0 || k == 0 {
        return false;
    }
    let base = b.get();
    let mut buf = [0u64; MAX_DIGITS];
    let len = digits_lsd_first(n, base, &mut buf);
    len == k as usize && (0..len / 2).all(|j| buf[j] == buf[len - 1 - j])
}

/// `r^k <= n`, with overflow treated as "exceeds n".
#[inline]
fn pow_leq(r: u64, k: u32, n: u64) -> bool {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = match acc.checked_mul(r) {
            Some(v) if v <= n => v,
            _ => return false,
        };
    }
    true
}

/// Floor of the k-th root of `n >= 1`, integer arithmetic only:
/// returns `r` with `r^k <= n < (r+1)^k`.
pub fn integer_root(n: Natural, k: u32) -> Natural {
    assert!(n >= 1 && k >= 1, "integer_root requires n >= 1, k >= 1");
    if k == 1 {
        return n;
    }
    if k >= 64 {
        // n < 2^64 <= 2^k, so the root is 1.
        return 1;
    }
    // Monotone bisection on r; hi^k > u64::MAX >= n by choice of exponent.
    let mut lo: u64 = 1;
    let mut hi: u64 = 1u64 << (64 / k as u64 + 1);
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if pow_leq(mid, k, n) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `b^e` with overflow reported.
pub(crate) fn checked_pow(b: u64, e: u32) -> Result<u64> {
    b.checked_pow(e).ok_or(Error::Overflow)
}
