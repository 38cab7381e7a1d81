use fano_wps::arith::{gcd_u64, sylvester, sylvester_product, Nat, Rat};
use fano_wps::report::{analyze, VerifyMode, WpsReport};
use fano_wps::search::{enumerate_weight_tuples, run_search, ClassFilter, Objective, SearchConfig};
use fano_wps::singularity::{CyclicQuotientSingularity, SingularityClass, SubsetCertificate};
use fano_wps::wps::Weights;
use proptest::prelude::*;

fn cap() -> Nat {
    Nat::from(1_000_000u64)
}

/// Independent Reid-Tai oracle on plain integers.
fn oracle(r: u64, b: &[u64]) -> SingularityClass {
    if r == 1 {
        return SingularityClass::Smooth;
    }
    let mut min = u64::MAX;
    for t in 1..r {
        min = min.min(b.iter().map(|x| t * x % r).sum());
    }
    if min > r {
        SingularityClass::Terminal
    } else if min == r {
        SingularityClass::CanonicalNotTerminal
    } else {
        SingularityClass::NonCanonical
    }
}

fn singularity() -> impl Strategy<Value = (u64, Vec<u64>)> {
    (2u64..=200).prop_flat_map(|r| (Just(r), prop::collection::vec(0..r, 2..=4)))
}

fn weights(max_len: usize, max_w: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1..=max_w, 2..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn brute_matches_oracle((r, b) in singularity()) {
        if let Ok(s) = CyclicQuotientSingularity::from_u64s(r, &b) {
            prop_assert_eq!(s.classify_brute(&cap()).unwrap(), oracle(r, &b));
        }
    }

    #[test]
    fn reid_tai_permutation_invariant((r, b) in singularity(), rot in 0usize..4) {
        if let Ok(s) = CyclicQuotientSingularity::from_u64s(r, &b) {
            let mut p = b.clone();
            p.rotate_left(rot % b.len());
            p.reverse();
            let t = CyclicQuotientSingularity::from_u64s(r, &p).unwrap();
            prop_assert_eq!(s.classify_brute(&cap()).unwrap(), t.classify_brute(&cap()).unwrap());
        }
    }

    #[test]
    fn reid_tai_residue_invariant((r, b) in singularity(), k in prop::collection::vec(0u64..1000, 4)) {
        if let Ok(s) = CyclicQuotientSingularity::from_u64s(r, &b) {
            let lifted: Vec<u64> = b.iter().zip(&k).map(|(x, m)| x + m * r).collect();
            let t = CyclicQuotientSingularity::from_u64s(r, &lifted).unwrap();
            prop_assert_eq!(&s, &t);
            prop_assert_eq!(s.classify_brute(&cap()).unwrap(), t.classify_brute(&cap()).unwrap());
        }
    }

    #[test]
    fn accepted_certificates_are_sound((r, b) in singularity(), mask in 1u32..16, wit in 0usize..4) {
        if let Ok(s) = CyclicQuotientSingularity::from_u64s(r, &b) {
            let subset: Vec<usize> = (0..b.len()).filter(|k| mask >> k & 1 == 1).collect();
            let truth = oracle(r, &b);
            for cert in [SubsetCertificate::canonical(subset.clone()), SubsetCertificate::terminal(subset.clone(), wit)] {
                if let Ok(Some(c)) = s.certified_class(&cert) {
                    prop_assert!(truth >= c, "{} {:?} proved {} but truth is {}", s, cert, c, truth);
                }
            }
        }
    }

    #[test]
    fn volume_times_product_is_h_to_the_n(ws in weights(8, 10_000)) {
        let w = Weights::from_u64s(&ws).unwrap();
        let prod: Nat = w.entries().iter().cloned().product();
        let lhs = &w.anticanonical_volume() * &Rat::from_nat(prod);
        prop_assert_eq!(lhs, Rat::from_nat(w.weight_sum().pow(w.dim() as u32)));
    }

    #[test]
    fn gorenstein_volume_is_integral(ws in weights(6, 12)) {
        let w = Weights::from_u64s(&ws).unwrap();
        if w.is_well_formed() && w.is_gorenstein() {
            prop_assert!(w.anticanonical_volume().is_integer());
        }
    }

    #[test]
    fn wps_classification_order_insensitive(ws in weights(5, 60)) {
        let w = Weights::from_u64s(&ws).unwrap();
        prop_assume!(w.is_well_formed());
        let none = Default::default();
        let a = analyze(&w, &none, &cap(), VerifyMode::Brute).unwrap();
        let b = analyze(&w.canonical_form(), &none, &cap(), VerifyMode::Brute).unwrap();
        prop_assert_eq!(a.overall_class, b.overall_class);
        prop_assert_eq!(a.volume, b.volume);
        prop_assert_eq!(a.fano_index, b.fano_index);
    }

    #[test]
    fn report_json_round_trip(ws in weights(5, 200)) {
        let w = Weights::from_u64s(&ws).unwrap();
        prop_assume!(w.is_well_formed());
        let r = analyze(&w, &Default::default(), &cap(), VerifyMode::Auto).unwrap();
        let json = r.to_json();
        let back: WpsReport = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, r);
    }
}

#[test]
fn report_json_uses_decimal_strings() {
    let w = Weights::from_u64s(&[16328, 12246, 8164, 6123, 3768, 1884, 312, 156, 1, 1, 1]).unwrap();
    let r = analyze(&w, &Default::default(), &cap(), VerifyMode::Auto).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["h"], "48984");
    assert_eq!(v["volume"]["num"], "23029100604532998144");
    assert_eq!(v["volume"]["den"], "1");
    assert!(v["weights"].as_array().unwrap().iter().all(|x| x.is_string()));
}

#[test]
fn sylvester_identities() {
    for k in 0..=15usize {
        assert_eq!(sylvester(k), sylvester_product(k) + 1u64);
        let mut sum = Rat::zero();
        for i in 0..=k {
            sum = sum + Rat::recip_of(&sylvester(i)).unwrap();
        }
        // 1 - 1/(s_{k+1} - 1)
        let d = sylvester(k + 1).minus(1).unwrap();
        assert_eq!(sum, Rat::new(d.minus(1).unwrap(), d).unwrap());
        for i in 0..k {
            assert!(sylvester(i).gcd(&sylvester(k)).is_one());
        }
        if k >= 1 {
            assert!(sylvester(k) > Nat::from(2u64).pow(1u32 << (k - 1)));
        }
    }
}

fn naive_dim2(sum_max: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for h in 3..=sum_max {
        for a in 1..=h {
            for b in a..=h {
                if a + b >= h {
                    break;
                }
                let c = h - a - b;
                if c < b {
                    continue;
                }
                if gcd_u64(a, b) == 1 && gcd_u64(a, c) == 1 && gcd_u64(b, c) == 1 {
                    out.push(vec![a, b, c]);
                }
            }
        }
    }
    out
}

#[test]
fn enumeration_matches_naive_loop() {
    let got: Vec<Vec<u64>> = enumerate_weight_tuples(2, 20).unwrap().collect();
    assert_eq!(got, naive_dim2(20));
}

#[test]
fn enumeration_is_sorted_and_unique() {
    let got: Vec<Vec<u64>> = enumerate_weight_tuples(3, 25).unwrap().collect();
    for pair in got.windows(2) {
        let key = |t: &Vec<u64>| (t.iter().sum::<u64>(), t.clone());
        assert!(key(&pair[0]) < key(&pair[1]));
    }
    assert!(got.iter().all(|t| t.windows(2).all(|p| p[0] <= p[1])));
}

#[test]
fn search_deterministic_across_workers() {
    for workers in [2, 3, 4, 7] {
        let mut c = SearchConfig::new(3, ClassFilter::Canonical, Objective::Volume, 22);
        let one = run_search(&c, None).unwrap();
        c.worker_count = workers;
        let many = run_search(&c, None).unwrap();
        assert_eq!(one.rows, many.rows);
        assert_eq!(one.record.best_value, many.record.best_value);
        assert_eq!(one.record.achievers, many.record.achievers);
        assert_eq!(one.record.tuples_enumerated, many.record.tuples_enumerated);
    }
}

#[test]
fn best_value_monotone_in_sum_max() {
    let mut prev: Option<Rat> = None;
    for h in [8, 12, 16, 20, 24] {
        let c = SearchConfig::new(3, ClassFilter::Terminal, Objective::Volume, h);
        let best = run_search(&c, None).unwrap().record.best_value;
        assert!(best >= prev, "h={}", h);
        prev = best;
    }
}

#[test]
fn gorenstein_terminal_rows_are_terminal() {
    let c = SearchConfig::new(3, ClassFilter::GorensteinTerminal, Objective::Volume, 24);
    let out = run_search(&c, None).unwrap();
    let pool: Vec<&Vec<u64>> = out.rows.iter().filter(|r| r.class.is_terminal()).map(|r| &r.weights).collect();
    assert!(!out.record.achievers.is_empty());
    for a in &out.record.achievers {
        assert!(pool.contains(&a));
        assert!(Weights::from_u64s(a).unwrap().is_gorenstein());
    }
}
