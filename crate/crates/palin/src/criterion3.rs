//! The fractional-part criterion for 3-palindromicity, in exact modular
//! arithmetic.
//!
//! For n with a length-3 expansion in base b, put m = b² + 1 and
//! ρ = ((n+1)·b) mod m. The published strict inequality
//! { (n+1)·b/m } < b/m translates to ρ < b; digit-level palindromicity is
//! actually equivalent to 1 <= ρ <= b. The two disagree exactly on the two
//! divisibility families m | n+1 (ρ = 0) and m | n (ρ = b, middle digit 0).
//! Both verdicts are exposed; everything else in the crate uses the
//! corrected one, and [`discrepancy_scan`] documents the difference set.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::radix::{Base, Natural};

/// Both readings of the criterion for one (n, b) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Criterion3Verdict {
    pub n: Natural,
    pub base: u64,
    /// ((n+1)·b) mod (b²+1), in [0, b²].
    pub residue: u64,
    /// The strict inequality as printed: residue < b.
    pub literal_verdict: bool,
    /// Equivalent to digit-level 3-palindromicity: 1 <= residue <= b.
    pub corrected_verdict: bool,
}

#[inline]
fn modulus(b: u64) -> u128 {
    (b as u128) * (b as u128) + 1
}

fn check_length3(n: Natural, b: u64) -> Result<()> {
    let m = modulus(b); // b^2 + 1
    let cube = (b as u128) * (b as u128) * (b as u128);
    if (n as u128) < m || (n as u128) > cube - 1 {
        return Err(Error::NotLength3 { n, base: b });
    }
    Ok(())
}

/// Evaluates both verdicts for n with a length-3 expansion in base b.
pub fn verdict(n: Natural, b: Base) -> Result<Criterion3Verdict> {
    let base = b.get();
    check_length3(n, base)?;
    let residue = ((n as u128 + 1) * base as u128 % modulus(base)) as u64;
    Ok(Criterion3Verdict {
        n,
        base,
        residue,
        literal_verdict: residue < base,
        corrected_verdict: 1 <= residue && residue <= base,
    })
}

/// The digit pair (e, f) with n = e·(b²+1) + f·b, 0 < e < b, 0 <= f < b —
/// the outer and middle digits of a 3-palindrome — or `None` when n is not
/// 3-palindromic in base b. Recovered through ℓ = ⌊(n+1)·b/(b²+1)⌋ = e·b + f.
pub fn half_digits(n: Natural, b: Base) -> Result<Option<(u64, u64)>> {
    let base = b.get();
    let v = verdict(n, b)?;
    if !v.corrected_verdict {
        return Ok(None);
    }
    let ell = ((n as u128 + 1) * base as u128 / modulus(base)) as u64;
    let (e, f) = (ell / base, ell % base);
    debug_assert_eq!(
        e as u128 * modulus(base) + (f as u128) * base as u128,
        n as u128
    );
    Ok(Some((e, f)))
}

/// All (n, b) with b <= b_max, n in [b²+1, b³−1], where the literal and
/// corrected verdicts differ. Ordered by base, then by value.
pub fn discrepancy_scan(b_max: u64) -> Vec<(Natural, u64)> {
    assert!(b_max <= 2_642_245, "b^3 must stay within 64 bits");
    (2..=b_max)
        .into_par_iter()
        .map(|b| {
            let m = (b * b + 1) as u128;
            let lo = b * b + 1;
            let hi = (b as u128 * b as u128 * b as u128 - 1) as u64;
            let mut out = Vec::new();
            for n in lo..=hi {
                let residue = ((n as u128 + 1) * b as u128 % m) as u64;
                let literal = residue < b;
                let corrected = 1 <= residue && residue <= b;
                if literal != corrected {
                    out.push((n, b));
                }
            }
            out
        })
        .flatten()
        .collect()
}
