//! Explicit witness constructions and bound verifiers: two-digit
//! witnesses for odd powers of two, the repunit family 2^(2^L) − 1, the
//! ζ(b)/θ(b) bound machinery, and the exact-integer forms of the counting
//! bound and the μ_3 growth statement.
//!
//! This is the one module that uses arbitrary-precision integers; the core
//! stays on checked 64-bit arithmetic.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::palgen::PalindromeWitness;
use crate::radix::{self, Base, Natural};

/// Arbitrary-precision nonnegative integer for values like 2^(2^L) − 1.
pub type BigNatural = BigUint;

/// Two-digit witnesses for n = 2^(2u+1): one per decomposition
/// v + w = 2u+1 with 0 <= v < w, namely n = (2^v, 2^v) in base 2^w − 1.
/// Every witness is re-verified through the digit primitives. The list has
/// u + 1 entries, so μ_2(n) >= u.
pub fn mu2_power_witnesses(u: u32) -> Result<Vec<PalindromeWitness>> {
    if u < 1 {
        return Err(Error::Unsupported("u must be at least 1".into()));
    }
    if 2 * u + 1 > 63 {
        return Err(Error::Overflow); // 2^(2u+1) outside the 64-bit core
    }
    let n = 1u64 << (2 * u + 1);
    let mut witnesses = Vec::new();
    for v in 0..=u {
        let w = 2 * u + 1 - v;
        let b = (1u64 << w) - 1;
        debug_assert_eq!((1u64 << v) * b + (1u64 << v), n);
        let base = Base::new(b)?;
        if !radix::is_k_palindromic(n, 2, base) {
            return Err(Error::Unsupported(format!(
                "construction failed digit verification at v={v}, w={w}"
            )));
        }
        witnesses.push(PalindromeWitness {
            value: n,
            base: b,
            length: 2,
        });
    }
    witnesses.sort();
    Ok(witnesses)
}

/// Arbitrary-precision variant of [`mu2_power_witnesses`] for u beyond the
/// 64-bit core: returns (base, repeated digit) pairs with
/// 2^(2u+1) = digit·base + digit, each verified in exact big arithmetic.
pub fn mu2_power_witnesses_big(u: u32) -> Result<Vec<(BigNatural, BigNatural)>> {
    if u < 1 {
        return Err(Error::Unsupported("u must be at least 1".into()));
    }
    let one = BigUint::one();
    let n = &one << (2 * u + 1) as usize;
    let mut out = Vec::new();
    for v in 0..=u {
        let w = 2 * u + 1 - v;
        let base = (&one << w as usize) - &one;
        let digit = &one << v as usize;
        if &digit * &base + &digit != n {
            return Err(Error::Unsupported(format!(
                "construction failed verification at v={v}, w={w}"
            )));
        }
        out.push((base, digit));
    }
    out.sort();
    Ok(out)
}

/// One repdigit representation of n_L = 2^(2^L) − 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepunitRepresentation {
    pub base: BigNatural,
    pub length: u64,
    pub digit: BigNatural,
}

/// All L+1 repdigit representations of n_L = 2^(2^L) − 1: for each
/// ℓ in [0, L], base 2^(2^ℓ), length 2^(L−ℓ), repeated digit 2^(2^ℓ) − 1.
/// Each is verified by exact reconstruction of the value.
pub fn repunit_family(big_l: u32) -> Result<Vec<RepunitRepresentation>> {
    if big_l > 24 {
        return Err(Error::Unsupported(
            "2^(2^L) - 1 is impractically large beyond L = 24".into(),
        ));
    }
    let one = BigUint::one();
    let n = (&one << (1usize << big_l)) - &one;
    let mut out = Vec::new();
    for ell in 0..=big_l {
        let base = &one << (1usize << ell);
        let length = 1u64 << (big_l - ell);
        let digit = &base - &one;
        // digit · (base^length − 1)/(base − 1) must reconstruct n exactly
        let repunit = (base.pow(length as u32) - &one) / (&base - &one);
        let value = &digit * &repunit;
        if value != n {
            return Err(Error::Unsupported(format!(
                "repunit reconstruction failed at ell={ell}"
            )));
        }
        out.push(RepunitRepresentation {
            base,
            length,
            digit,
        });
    }
    Ok(out)
}

/// ζ(b): the largest z with z·(b²+1) + (b−1)·b <= N, clamped to [0, b−1].
/// Guarantees Φ_3(N,b) >= ζ(b)·b — every 3-palindrome with outer digit
/// e <= ζ(b) stays below N.
pub fn zeta(b: Base, n_limit: Natural) -> Natural {
    let b = b.get() as u128;
    let n = n_limit as u128;
    let tail = (b - 1) * b;
    if n < tail {
        return 0;
    }
    let z = (n - tail) / (b * b + 1);
    z.min(b - 1) as u64
}

/// θ(b) = ⌊N / (b^(k−1) + 1)⌋: every k-palindrome in base b below N has
/// leading digit at most θ(b), so Φ_k(N,b) <= θ(b)·b^(i+r−1).
pub fn theta(b: Base, k: u32, n_limit: Natural) -> Result<Natural> {
    if k < 2 {
        return Err(Error::LengthTooSmall { min: 2, got: k });
    }
    let base = b.get() as u128;
    let Some(p) = base.checked_pow(k - 1) else {
        return Ok(0); // b^(k-1) + 1 > N for any 64-bit N
    };
    Ok((n_limit as u128 / (p + 1)) as u64)
}

/// The counting bound in exact integers: Φ^k <= 4^k · (N+1)^(i+r+1),
/// evaluated in arbitrary precision. Requires k >= 4.
pub fn thm1_bound_holds(k: u32, n_limit: Natural, phi_value: Natural) -> Result<bool> {
    if k < 4 {
        return Err(Error::LengthTooSmall { min: 4, got: k });
    }
    let (i, r) = (k / 2, k % 2);
    let lhs = BigUint::from(phi_value).pow(k);
    let rhs = BigUint::from(4u32).pow(k) * BigUint::from(n_limit + 1).pow(i + r + 1);
    Ok(lhs <= rhs)
}

/// Rational enclosure of e from the Taylor partial sum: with q = J!,
/// e lies strictly between (Σ_{j<=J} J!/j!)/q and that plus 1/q.
fn e_enclosure(terms: u32) -> (BigUint, BigUint, BigUint) {
    let mut q = BigUint::one();
    let mut sum = BigUint::one(); // j = 0 term, scaled progressively
    for j in 1..=terms {
        q *= BigUint::from(j);
        sum = sum * BigUint::from(j) + BigUint::one();
    }
    let hi = &sum + BigUint::one();
    (sum, hi, q)
}

/// Smallest integer m >= 0 with m >= ln(x)/7, i.e. with e^(7m) >= x,
/// decided by exact integer comparison against a rational enclosure of e.
/// ln(x)/7 is irrational for integer x >= 2, so this is the strict ceiling.
pub fn min_mu_for_threshold(x: u64) -> u64 {
    assert!(x >= 1);
    if x == 1 {
        return 0;
    }
    for terms in [25u32, 50, 100] {
        let (elo, ehi, q) = e_enclosure(terms);
        let mut m = 1u64;
        loop {
            let exp = (7 * m) as u32;
            let scale = BigUint::from(x) * q.pow(exp);
            if elo.pow(exp) >= scale {
                return m; // certainly e^(7m) >= x
            }
            if ehi.pow(exp) < scale {
                m += 1; // certainly not; try the next integer
                continue;
            }
            break; // enclosure too loose to decide, tighten
        }
    }
    unreachable!("e enclosure failed to separate ln({x})/7 from an integer");
}

/// One decade entry of the μ_3 growth scan.
#[derive(Debug, Clone)]
pub struct GrowthWitness {
    /// The decade bound N.
    pub n_limit: Natural,
    /// Threshold (1/7)·ln(N+1), for display; the pass/fail decision is
    /// integer-exact via [`min_mu_for_threshold`].
    pub threshold: f64,
    /// Required integer multiplicity: ceil of the threshold.
    pub required_mu: u64,
    /// Smallest n <= N with μ_3(n) >= required_mu, when one exists.
    pub witness: Option<crate::intrinsic::MultiplicityProfile>,
}

/// For each decade N = 10^2 … N_max, the smallest n <= N with
/// μ_3(n) >= (1/7)·ln(N+1). A decade with no witness is reported rather
/// than asserted — it would falsify the growth statement and indicates an
/// implementation bug.
pub fn thm3_sequence(n_max: Natural) -> Result<Vec<GrowthWitness>> {
    if n_max < 100 {
        return Err(Error::Unsupported("N_max must be at least 100".into()));
    }
    let mut out = Vec::new();
    let mut n_limit: u64 = 100;
    loop {
        let required_mu = min_mu_for_threshold(n_limit + 1);
        let witness =
            crate::intrinsic::first_with_multiplicity(3, required_mu.max(1) as u32, n_limit);
        out.push(GrowthWitness {
            n_limit,
            threshold: ((n_limit + 1) as f64).ln() / 7.0,
            required_mu,
            witness,
        });
        match n_limit.checked_mul(10) {
            Some(next) if next <= n_max => n_limit = next,
            _ => break,
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intrinsic;
    use crate::palgen;

    fn base(b: u64) -> Base {
        Base::new(b).unwrap()
    }

    #[test]
    fn mu2_witnesses_u3() {
        let ws = mu2_power_witnesses(3).unwrap();
        assert_eq!(
            ws.iter().map(|w| w.base).collect::<Vec<_>>(),
            vec![15, 31, 63, 127]
        );
        assert!(ws.iter().all(|w| w.value == 128 && w.length == 2));
    }

    #[test]
    fn mu2_witnesses_u1_includes_base7() {
        let ws = mu2_power_witnesses(1).unwrap();
        assert!(ws.iter().any(|w| w.base == 7));
        assert!(ws.iter().all(|w| w.value == 8));
    }

    #[test]
    fn mu2_count_lower_bound() {
        for u in 1..=20u32 {
            assert!(mu2_power_witnesses(u).unwrap().len() as u32 >= u);
        }
    }

    #[test]
    fn mu2_big_agrees_with_core() {
        let big = mu2_power_witnesses_big(5).unwrap();
        let small = mu2_power_witnesses(5).unwrap();
        assert_eq!(big.len(), small.len());
        for ((b, _), w) in big.iter().zip(&small) {
            assert_eq!(b, &BigUint::from(w.base));
        }
        // and it scales past the 64-bit core
        assert_eq!(mu2_power_witnesses_big(40).unwrap().len(), 41);
        assert!(mu2_power_witnesses(40).is_err());
    }

    #[test]
    fn repunit_family_l2() {
        let reps = repunit_family(2).unwrap();
        let expected: Vec<(u64, u64, u64)> = vec![(2, 4, 1), (4, 2, 3), (16, 1, 15)];
        assert_eq!(reps.len(), 3);
        for (rep, (b, len, d)) in reps.iter().zip(expected) {
            assert_eq!(rep.base, BigUint::from(b));
            assert_eq!(rep.length, len);
            assert_eq!(rep.digit, BigUint::from(d));
        }
    }

    #[test]
    fn repunit_family_l0_and_l6() {
        let reps = repunit_family(0).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].length, 1);

        // L = 6: n = 2^64 - 1, seven representations
        assert_eq!(repunit_family(6).unwrap().len(), 7);
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(zeta(base(10), 10_000), 9);
        assert_eq!(zeta(base(100), 10_000), 0);
        assert_eq!(zeta(base(32), 10_000), 8);
    }

    #[test]
    fn zeta_count_lower_bound() {
        for n in [10_000u64, 1_000_000] {
            let lo = radix::integer_root(n, 3);
            let hi = radix::integer_root(n, 2);
            for b in lo..=hi {
                let z = zeta(base(b), n);
                assert!(
                    palgen::count_upto(3, base(b), n) >= z * b,
                    "b={b} N={n} zeta={z}"
                );
            }
        }
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(base(10), 3, 10_000).unwrap(), 99);
        assert_eq!(theta(base(2), 4, 100).unwrap(), 11);
        assert_eq!(theta(base(50), 4, 100).unwrap(), 0);
    }

    #[test]
    fn theta_count_upper_bound() {
        for k in [3u32, 4, 5] {
            let (i, r) = (k / 2, k % 2);
            for n in [1_000u64, 100_000] {
                for b in 2..=radix::integer_root(n, (k - 1).max(2)) + 2 {
                    let t = theta(base(b), k, n).unwrap();
                    let cap = t.saturating_mul(b.saturating_pow(i + r - 1));
                    assert!(
                        palgen::count_upto(k, base(b), n) <= cap,
                        "k={k} b={b} N={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn thm1_examples() {
        let phi4 = intrinsic::phi(4, 10_000, &Default::default()).unwrap().count;
        assert!(thm1_bound_holds(4, 10_000, phi4).unwrap());
        assert!(thm1_bound_holds(9, 999_999_999, 400_000).unwrap());
        assert!(!thm1_bound_holds(4, 10_000, 10_000).unwrap());
        assert!(thm1_bound_holds(3, 100, 1).is_err());
    }

    #[test]
    fn threshold_ceilings() {
        // (1/7)ln(101) ≈ 0.659 → 1; (1/7)ln(10^7+1) ≈ 2.303 → 3
        assert_eq!(min_mu_for_threshold(101), 1);
        assert_eq!(min_mu_for_threshold(10_000_001), 3);
        // e^7 ≈ 1096.6: x at or below needs m = 1, above needs m = 2
        assert_eq!(min_mu_for_threshold(1096), 1);
        assert_eq!(min_mu_for_threshold(1097), 2);
        assert_eq!(min_mu_for_threshold(1), 0);
        assert_eq!(min_mu_for_threshold(2), 1);
    }

    #[test]
    fn thm3_sequence_desk_scale() {
        let rows = thm3_sequence(100_000).unwrap();
        assert_eq!(rows.len(), 4); // 10^2 .. 10^5
        for row in &rows {
            let w = row.witness.as_ref().expect("decade witness exists");
            assert!(w.mu.is_at_least(row.required_mu));
            assert!(w.value <= row.n_limit);
        }
    }

    #[test]
    fn squared_repunit_identity() {
        assert_eq!(111_111u64 * 111_111, 12_345_654_321);
        assert!(radix::is_k_palindromic(12_345_654_321, 11, base(10)));
    }
}
