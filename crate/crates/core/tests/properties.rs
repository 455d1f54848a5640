use dhtrand::experiments::PAPER_PRIMES;
use dhtrand::sequences::MAX_BITSTRING_LEN;
use dhtrand::{
    apply_switches, base_switch_sequence, dht, dht_matrix, dsequence, format_bitstring, measure,
    measure_fast_r, parse_bitstring, period, uniform_index, BitSequence, DhtKernel, PrngState,
    RealSequence, SwitchSpec,
};
use proptest::prelude::*;

fn reals(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, 1..max_len)
}

fn bits(max_len: usize) -> impl Strategy<Value = BitSequence> {
    prop::collection::vec(0u8..=1, 1..max_len).prop_map(|b| BitSequence::external(b).unwrap())
}

fn max_abs_diff(a: &RealSequence, b: &RealSequence) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn kernels_agree(x in reals(300)) {
        let f = RealSequence::new(x).unwrap();
        let m = dht(&f, DhtKernel::Matrix).unwrap();
        for kernel in [DhtKernel::DirectSum, DhtKernel::FastConvolution] {
            prop_assert!(max_abs_diff(&m, &dht(&f, kernel).unwrap()) < 1e-9);
        }
    }

    #[test]
    fn transform_is_linear(
        pair in (1usize..200).prop_flat_map(|n| (
            prop::collection::vec(-10.0f64..10.0, n),
            prop::collection::vec(-10.0f64..10.0, n),
        )),
        a in -10.0f64..10.0,
        b in -10.0f64..10.0,
    ) {
        let (x, y) = pair;
        let combo: Vec<f64> = x.iter().zip(&y).map(|(u, v)| a * u + b * v).collect();
        for kernel in DhtKernel::ALL {
            let gx = dht(&RealSequence::new(x.clone()).unwrap(), kernel).unwrap();
            let gy = dht(&RealSequence::new(y.clone()).unwrap(), kernel).unwrap();
            let gc = dht(&RealSequence::new(combo.clone()).unwrap(), kernel).unwrap();
            for k in 0..x.len() {
                prop_assert!((gc[k] - (a * gx[k] + b * gy[k])).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn matrix_structure(n in 1usize..80) {
        let m = dht_matrix(n).unwrap();
        for k in 0..n {
            for j in 0..n {
                prop_assert_eq!(m.get(k, j), -m.get(j, k));
                if (k as i64 - j as i64) % 2 == 0 {
                    prop_assert_eq!(m.get(k, j), 0.0);
                } else {
                    prop_assert!(m.get(k, j) != 0.0);
                }
            }
        }
    }

    #[test]
    fn r_dominates_r_prime(f in bits(512)) {
        let rep = measure(&f, DhtKernel::FastConvolution).unwrap();
        prop_assert!(rep.big_r >= rep.big_r_prime);
        prop_assert!(rep.r_prime >= 0.0);
        prop_assert_eq!(rep.big_r, 1.0 - rep.r.abs());
        prop_assert_eq!(rep.big_r_prime, 1.0 - rep.r_prime);
    }

    #[test]
    fn complement_adds_to_all_ones(f in bits(256)) {
        let n = f.len();
        let complement = BitSequence::external(f.bits().iter().map(|b| 1 - b).collect()).unwrap();
        let ones = BitSequence::external(vec![1; n]).unwrap();
        let r = |s: &BitSequence| measure(s, DhtKernel::Matrix).unwrap().r;
        prop_assert!((r(&f) + r(&complement) - r(&ones)).abs() < 1e-9);
    }

    #[test]
    fn measure_independent_of_kernel(f in bits(200)) {
        let base = measure(&f, DhtKernel::Matrix).unwrap();
        for kernel in [DhtKernel::DirectSum, DhtKernel::FastConvolution] {
            let other = measure(&f, kernel).unwrap();
            prop_assert!((base.r - other.r).abs() < 1e-9);
            prop_assert!((base.big_r - other.big_r).abs() < 1e-9);
            prop_assert!((base.r_prime - other.r_prime).abs() < 1e-9);
            prop_assert!((base.big_r_prime - other.big_r_prime).abs() < 1e-9);
        }
        prop_assert!((measure_fast_r(&f).unwrap() - base.r).abs() < 1e-9);
    }

    #[test]
    fn switches_conserve_ones(half in 1usize..150, frac in 0.0f64..=1.0, seed: u64) {
        let length = 2 * half;
        let switches = (frac * half as f64) as usize;
        let base = base_switch_sequence(length).unwrap();
        let s = apply_switches(&base, &SwitchSpec::Random { switches, seed }).unwrap();
        prop_assert_eq!(s.count_ones(), half);
        prop_assert_eq!(s.bits()[..half].iter().filter(|&&b| b == 1).count(), switches);
        let again = apply_switches(&base, &SwitchSpec::Random { switches, seed }).unwrap();
        prop_assert_eq!(s, again);
    }

    #[test]
    fn bitstring_round_trip(f in bits(2000)) {
        let back = parse_bitstring(&format_bitstring(&f)).unwrap();
        prop_assert_eq!(back.bits(), f.bits());
    }

    #[test]
    fn uniform_index_in_range(seed: u64, bound in 1u64..=u64::MAX) {
        let mut rng = PrngState::new(seed);
        for _ in 0..8 {
            prop_assert!(uniform_index(&mut rng, bound) < bound);
        }
    }
}

#[test]
fn uniform_index_large_bound_takes_rejection_path() {
    // 2^64 mod (2^63 + 1) = 2^63 - 1, so roughly half of all draws are rejected.
    let bound = (1u64 << 63) + 1;
    let threshold = bound.wrapping_neg() % bound;
    let mut rng = PrngState::new(2024);
    let mut raw = rng;
    let mut rejected = 0;
    for _ in 0..1000 {
        let v = uniform_index(&mut rng, bound);
        loop {
            let x = raw.next_u64();
            if x >= threshold {
                assert_eq!(v, x % bound);
                break;
            }
            rejected += 1;
        }
        assert_eq!(rng, raw);
    }
    assert!(rejected > 300, "only {rejected} rejections");
}

#[test]
fn dsequence_periodicity() {
    for p in [3, 5, 7, 11, 13, 19, 67, 127, 151] {
        let t = period(p).unwrap();
        let s = dsequence(p, Some(3 * t + 5)).unwrap();
        let b = s.bits();
        for i in 0..b.len() - t {
            assert_eq!(b[i], b[i + t], "p={p} i={i}");
        }
    }
}

#[test]
fn dsequence_balance_over_even_periods() {
    // With an even period, 2^(t/2) ≡ -1 (mod p): the second half-period holds
    // residues p - x, which have the opposite parity, so 0s and 1s balance.
    let mut odd_periods = Vec::new();
    for p in PAPER_PRIMES {
        let s = dsequence(p, None).unwrap();
        let ones = s.count_ones();
        if s.len().is_multiple_of(2) {
            assert_eq!(2 * ones, s.len(), "p={p}");
        } else {
            odd_periods.push(p);
        }
    }
    assert_eq!(odd_periods, vec![127, 151, 223, 463, 631, 991]);
}

#[test]
fn bitstring_length_limit() {
    let long = "0".repeat(MAX_BITSTRING_LEN + 1);
    assert!(parse_bitstring(&long).is_err());
}
