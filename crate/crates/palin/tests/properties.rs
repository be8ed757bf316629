//! Property tests for the radix primitives and the counting invariants.

use proptest::prelude::*;

use palin::intrinsic::{self, PhiConfig, StrategyChoice};
use palin::palgen;
use palin::radix::{self, Base};

fn base(b: u64) -> Base {
    Base::new(b).unwrap()
}

proptest! {
    #[test]
    fn round_trip(n in 1u64..1_000_000, b in 2u64..=64) {
        let e = radix::to_digits(n, base(b)).unwrap();
        prop_assert_eq!(radix::from_digits(&e).unwrap(), n);
    }

    #[test]
    fn length_law(n in 1u64..1_000_000, b in 2u64..=64) {
        let k = radix::to_digits(n, base(b)).unwrap().len();
        prop_assert!(b.pow(k - 1) <= n);
        if let Some(hi) = b.checked_pow(k) {
            prop_assert!(n <= hi - 1);
        }
    }

    #[test]
    fn reversal_involution(n in 1u64..1_000_000, b in 2u64..=64) {
        let e = radix::to_digits(n, base(b)).unwrap();
        let mut rev: Vec<u64> = e.digits().to_vec();
        rev.reverse();
        let mut back = rev.clone();
        back.reverse();
        prop_assert_eq!(back.as_slice(), e.digits());
        prop_assert_eq!(e.is_palindromic(), rev.as_slice() == e.digits());
    }

    #[test]
    fn integer_root_bracket(n in 1u64..1_000_000, k in 1u32..=10) {
        let r = radix::integer_root(n, k);
        let pow = |x: u64| x.checked_pow(k);
        prop_assert!(pow(r).is_some_and(|v| v <= n));
        prop_assert!(pow(r + 1).is_none_or(|v| v > n));
    }

    #[test]
    fn neighbor_bases(n in 3u64..1_000_000) {
        let above = radix::to_digits(n, base(n + 1)).unwrap();
        prop_assert_eq!(above.digits(), &[n]);
        let below = radix::to_digits(n, base(n - 1)).unwrap();
        prop_assert_eq!(below.digits(), &[1, 1]);
    }

    #[test]
    fn count_matches_enumeration(k in 1u32..=6, b in 2u64..=20, exp in 1u32..=3) {
        let n_max = 100u64.pow(exp); // 10^2, 10^4, 10^6
        prop_assert_eq!(
            palgen::count_upto(k, base(b), n_max),
            palgen::enumerate(k, base(b), n_max).count() as u64
        );
    }

    #[test]
    fn enumerated_witnesses_verify(k in 1u32..=6, b in 2u64..=16) {
        for w in palgen::enumerate(k, base(b), 50_000).witnesses() {
            prop_assert!(radix::is_k_palindromic(w.value, w.length, base(w.base)));
        }
    }

    #[test]
    fn enumerate_strictly_ascending(k in 1u32..=6, b in 2u64..=16) {
        let vals: Vec<u64> = palgen::enumerate(k, base(b), 100_000).collect();
        prop_assert!(vals.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn window_consistency(k in 2u32..=5, a in 1u64..5_000, w in 1u64..500) {
        let cfg = PhiConfig::default();
        let hi = intrinsic::phi(k, a + w, &cfg).unwrap().count;
        let lo = intrinsic::phi(k, a, &cfg).unwrap().count;
        prop_assert_eq!(hi - lo, intrinsic::phi_window(k, a, w));
    }

    #[test]
    fn mu_witnesses_verify(k in 2u32..=6, n in 1u64..50_000) {
        let p = intrinsic::mu(k, n);
        prop_assert_eq!(p.mu, palin::Multiplicity::Finite(p.witnesses.len() as u64));
        let mut bases: Vec<u64> = p.witnesses.iter().map(|w| w.base).collect();
        let orig = bases.clone();
        bases.sort();
        bases.dedup();
        prop_assert_eq!(&bases, &orig); // sorted, distinct
        for w in &p.witnesses {
            prop_assert!(radix::is_k_palindromic(w.value, k, base(w.base)));
        }
    }
}

#[test]
fn strategies_bit_identical() {
    let bitset = PhiConfig {
        strategy: StrategyChoice::Bitset,
        ..Default::default()
    };
    let merge = PhiConfig {
        strategy: StrategyChoice::SortedMerge,
        ..Default::default()
    };
    for k in 2..=6u32 {
        for n in [100u64, 10_000, 100_000] {
            assert_eq!(
                intrinsic::phi(k, n, &bitset).unwrap().count,
                intrinsic::phi(k, n, &merge).unwrap().count,
                "k={k} N={n}"
            );
        }
    }
}
