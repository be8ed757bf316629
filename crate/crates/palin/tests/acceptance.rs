//! Acceptance suite: every pinned claim checked end to end, one test and
//! one PASS line per criterion. Run with `--nocapture` to see the lines.

use std::time::Instant;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use palin::constructions;
use palin::criterion3;
use palin::intrinsic::{self, Multiplicity, PhiConfig, StrategyChoice};
use palin::oracle;
use palin::palgen;
use palin::radix::{self, Base};

fn base(b: u64) -> Base {
    Base::new(b).unwrap()
}

fn pass(id: u32, what: &str, started: Instant) {
    println!(
        "criterion {id:02} ({what}): PASS [{:.2}s]",
        started.elapsed().as_secs_f64()
    );
}

/// Six window counts of length-3 intrinsic palindromes, width 100,
/// starts 10^2 .. 10^7.
#[test]
fn criterion_01_phi3_window_table() {
    let t = Instant::now();
    let rows: [(u64, u64); 6] = [
        (100, 61),
        (1_000, 70),
        (10_000, 83),
        (100_000, 86),
        (1_000_000, 89),
        (10_000_000, 94),
    ];
    for (start, expected) in rows {
        assert_eq!(
            intrinsic::phi_window(3, start, 100),
            expected,
            "window start {start}"
        );
    }
    pass(1, "phi_3 window table", t);
}

/// Six multi-base multiplicity counts; on any mismatch with the published
/// value the brute oracle adjudicates, and the fast path must agree with
/// the oracle regardless.
#[test]
fn criterion_02_phi_k_ell_table() {
    let t = Instant::now();
    let cfg = PhiConfig::default();
    let rows: [(u32, u32, u64, u64); 6] = [
        (4, 2, 10_000, 13),
        (4, 3, 100_000, 2),
        (4, 4, 100_000, 0),
        (5, 2, 10_000, 10),
        (5, 3, 100_000, 0),
        (6, 2, 100_000, 0),
    ];
    for (k, ell, n, expected) in rows {
        let got = intrinsic::phi_multi(k, ell, n, &cfg).unwrap().count;
        if got != expected {
            let brute = oracle::brute_phi_multi(k, ell, n, oracle::DEFAULT_CAP).unwrap();
            assert_eq!(
                got, brute,
                "fast path and oracle disagree at k={k} ell={ell} N={n}"
            );
            panic!("published value {expected} differs from verified count {got} (k={k}, ell={ell}, N={n})");
        }
    }
    pass(2, "phi_k_ell table", t);
}

/// Sample multiplicities, with the full base list pinned for 19040 and the
/// 3074 witnesses required to include bases 5 and 6.
#[test]
fn criterion_03_multiplicity_samples() {
    let t = Instant::now();
    assert_eq!(intrinsic::mu(4, 624).mu, Multiplicity::Finite(2));
    assert_eq!(intrinsic::mu(4, 910).mu, Multiplicity::Finite(2));
    let p = intrinsic::mu(4, 19040);
    assert_eq!(p.mu, Multiplicity::Finite(3));
    let bases: Vec<u64> = p.witnesses.iter().map(|w| w.base).collect();
    assert_eq!(bases, vec![13, 15, 19]);
    assert_eq!(intrinsic::mu(5, 2293).mu, Multiplicity::Finite(2));
    let p = intrinsic::mu(5, 3074);
    assert!(p.mu.is_at_least(2));
    let bases: Vec<u64> = p.witnesses.iter().map(|w| w.base).collect();
    assert!(bases.contains(&5) && bases.contains(&6), "bases: {bases:?}");
    pass(3, "multiplicity samples", t);
}

/// Worked identities: a 9-digit base-10 palindrome that is not palindromic
/// in base 13, the square 111111^2, and the trivial (1,1)_{n-1} form.
#[test]
fn criterion_04_worked_identities() {
    let t = Instant::now();
    let e10 = radix::to_digits(894_111_498, base(10)).unwrap();
    assert!(e10.is_palindromic());
    let e13 = radix::to_digits(894_111_498, base(13)).unwrap();
    assert_eq!(e13.digits(), &[1, 1, 3, 3, 1, 4, 3, 7, 7]);
    assert!(!e13.is_palindromic());

    assert_eq!(111_111u64 * 111_111, 12_345_654_321);
    let sq = radix::to_digits(12_345_654_321, base(10)).unwrap();
    assert!(sq.is_palindromic());

    for n in [3u64, 10, 100, 12_345, 1_000_000_007] {
        let e = radix::to_digits(n, base(n - 1)).unwrap();
        assert_eq!(e.digits(), &[1, 1]);
    }
    pass(4, "worked identities", t);
}

/// Density below 10^9: exactly 90000 nine-digit base-10 palindromes
/// (ratio 0.00009), while the any-base count stays strictly under 0.004·10^9.
#[test]
fn criterion_05_density() {
    let t = Instant::now();
    let n = 1_000_000_000u64 - 1;
    assert_eq!(palgen::count_upto(9, base(10), n), 90_000);
    let intrinsic_count = intrinsic::phi(9, n, &PhiConfig::default()).unwrap().count;
    assert!(
        intrinsic_count < 4_000_000,
        "intrinsic count {intrinsic_count}"
    );
    pass(5, "9-palindrome density", t);
}

/// The corrected length-3 residue verdict is equivalent to the digit-level
/// check for every base up to 40 (exhaustive), and the literal verdict
/// disagrees exactly on the two divisibility families.
#[test]
fn criterion_06_length3_criterion_exhaustive() {
    let t = Instant::now();
    let mut predicted = Vec::new();
    for b in 2..=40u64 {
        let m = b * b + 1;
        for n in m..=(b * b * b - 1) {
            let v = criterion3::verdict(n, base(b)).unwrap();
            let e = radix::to_digits(n, base(b)).unwrap();
            let digit_level = e.len() == 3 && e.is_palindromic();
            assert_eq!(
                v.corrected_verdict, digit_level,
                "corrected verdict vs digits at n={n}, b={b}"
            );
            if n % m == 0 || (n + 1) % m == 0 {
                predicted.push((n, b));
            }
        }
    }
    assert_eq!(criterion3::discrepancy_scan(40), predicted);
    pass(6, "length-3 criterion, bases 2..=40", t);
}

/// The counting bound phi^k <= 4^k (N+1)^(i+r+1) in exact integers for
/// k in 4..=9 and N up to 10^6.
#[test]
fn criterion_07_counting_bound() {
    let t = Instant::now();
    let cfg = PhiConfig::default();
    for k in 4..=9u32 {
        for n in [1_000u64, 10_000, 100_000, 1_000_000] {
            let phi = intrinsic::phi(k, n, &cfg).unwrap().count;
            assert!(
                constructions::thm1_bound_holds(k, n, phi).unwrap(),
                "bound fails at k={k}, N={n}, phi={phi}"
            );
        }
    }
    pass(7, "counting bound k=4..9", t);
}

/// Logarithmic growth of mu_3: for each decade N = 10^2 .. 10^7 some
/// n <= N reaches multiplicity (1/7)·ln(N+1).
#[test]
fn criterion_08_growth_witnesses() {
    let t = Instant::now();
    let rows = constructions::thm3_sequence(10_000_000).unwrap();
    assert_eq!(rows.len(), 6);
    let mut expected_limit = 100u64;
    for row in &rows {
        assert_eq!(row.n_limit, expected_limit);
        expected_limit *= 10;
        // the integer requirement brackets the real threshold
        assert!(row.required_mu as f64 >= row.threshold - 1e-9);
        assert!((row.required_mu as f64) - 1.0 < row.threshold + 1e-9);
        let w = row
            .witness
            .as_ref()
            .unwrap_or_else(|| panic!("no witness below {}", row.n_limit));
        assert!(w.value <= row.n_limit);
        assert!(w.mu.is_at_least(row.required_mu));
        for wit in &w.witnesses {
            assert!(radix::is_k_palindromic(wit.value, 3, base(wit.base)));
        }
    }
    pass(8, "mu_3 growth witnesses", t);
}

/// Explicit constructions: two-digit witnesses for 2^(2u+1) up to u = 30
/// (and beyond on big integers), the repdigit family of 2^(2^L) - 1, and
/// the implied lower bounds on long-palindrome multiplicity.
#[test]
fn criterion_09_constructions() {
    let t = Instant::now();
    for u in 1..=30u32 {
        let ws = constructions::mu2_power_witnesses(u).unwrap();
        assert!(ws.len() as u64 >= u as u64, "u={u}: {} witnesses", ws.len());
        let n = 1u64 << (2 * u + 1);
        for w in &ws {
            assert_eq!(w.value, n);
            assert!(radix::is_k_palindromic(w.value, 2, base(w.base)));
        }
    }
    let big = constructions::mu2_power_witnesses_big(40).unwrap();
    assert_eq!(big.len(), 41);
    for (b, d) in &big {
        assert!(d < b, "digit must be a valid base digit");
    }

    for l in 1..=10u32 {
        let reps = constructions::repunit_family(l).unwrap();
        assert_eq!(reps.len(), l as usize + 1);
        if l > 6 {
            continue; // self-verified in big arithmetic only
        }
        let n = if l == 6 {
            u64::MAX
        } else {
            (1u64 << (1u32 << l)) - 1
        };
        for rep in &reps {
            let (Some(b), Some(d)) = (rep.base.to_u64(), rep.digit.to_u64()) else {
                continue; // single-digit representation in a base beyond 2^63
            };
            if b > n {
                continue;
            }
            let e = radix::to_digits(n, base(b)).unwrap();
            assert_eq!(e.len() as u64, rep.length);
            assert!(e.digits().iter().all(|&x| x == d));
        }
    }

    // long-palindrome multiplicity: mu_{>=k}(2^(2^L) - 1) >= L - log2(k)
    for l in 2..=4u32 {
        let n = (1u64 << (1u32 << l)) - 1;
        let mu = intrinsic::mu_ge(2, n).unwrap().mu;
        assert!(mu.is_at_least(l as u64 - 1), "L={l}, k=2: {mu}");
    }
    for l in 3..=5u32 {
        let n = (1u64 << (1u32 << l)) - 1;
        let mu = intrinsic::mu_ge(4, n).unwrap().mu;
        assert!(mu.is_at_least(l as u64 - 2), "L={l}, k=4: {mu}");
    }
    pass(9, "explicit constructions", t);
}

/// Fast counting equals the brute oracle: exhaustively for k <= 6 at
/// N = 10^4, and for k in {3,4} at N = 10^5.
#[test]
fn criterion_10_oracle_equivalence() {
    let t = Instant::now();
    let cfg = PhiConfig::default();
    const N4: u64 = 10_000;
    for k in 1..=6u32 {
        assert_eq!(
            intrinsic::phi(k, N4, &cfg).unwrap().count,
            oracle::brute_phi(k, N4, oracle::DEFAULT_CAP).unwrap(),
            "phi k={k}"
        );
    }
    for k in 2..=6u32 {
        let mismatch = (1..=N4).into_par_iter().find_any(|&n| {
            intrinsic::mu(k, n).mu != Multiplicity::Finite(oracle::brute_mu(k, n))
        });
        assert_eq!(mismatch, None, "mu k={k}");
        for ell in 1..=3u32 {
            assert_eq!(
                intrinsic::phi_multi(k, ell, N4, &cfg).unwrap().count,
                oracle::brute_phi_multi(k, ell, N4, oracle::DEFAULT_CAP).unwrap(),
                "phi_multi k={k} ell={ell}"
            );
        }
    }

    const N5: u64 = 100_000;
    for k in [3u32, 4] {
        // one brute multiplicity pass feeds both comparisons
        let (ge1, ge2) = (1..=N5)
            .into_par_iter()
            .map(|n| {
                let mu = oracle::brute_mu(k, n);
                ((mu >= 1) as u64, (mu >= 2) as u64)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        assert_eq!(intrinsic::phi(k, N5, &cfg).unwrap().count, ge1, "phi k={k}");
        assert_eq!(
            intrinsic::phi_multi(k, 2, N5, &cfg).unwrap().count,
            ge2,
            "phi_multi k={k} ell=2"
        );
    }
    pass(10, "oracle equivalence", t);
}

/// Engineering target: the bitset path counts length-3 palindromes below
/// 10^8 within a minute, and counts are bit-identical across thread counts
/// and both dedup strategies.
#[test]
fn criterion_11_performance_determinism() {
    let t = Instant::now();
    let bitset = PhiConfig {
        strategy: StrategyChoice::Bitset,
        ..Default::default()
    };
    let big = intrinsic::phi(3, 100_000_000, &bitset).unwrap();
    assert!(
        big.elapsed.as_secs_f64() < 60.0,
        "phi(3, 10^8) took {:?}",
        big.elapsed
    );

    let merge = PhiConfig {
        strategy: StrategyChoice::SortedMerge,
        ..Default::default()
    };
    let mut counts = Vec::new();
    for jobs in [1usize, 4, 8] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .unwrap();
        for cfg in [&bitset, &merge] {
            counts.push(pool.install(|| intrinsic::phi(3, 1_000_000, cfg).unwrap().count));
        }
    }
    assert!(
        counts.windows(2).all(|w| w[0] == w[1]),
        "counts diverge: {counts:?}"
    );
    pass(11, "performance and determinism", t);
}
