use fano_wps::arith::Nat;
use fano_wps::families::{generate, predicted_volume, sporadic, sporadic_names, FamilyId};
use fano_wps::report::VerifyMode;
use fano_wps::singularity::SingularityClass;

const CAP: u64 = 1_000_000;

#[test]
fn brute_force_agrees_with_claims_below_cap() {
    let cap = Nat::from(CAP);
    let mut checked = 0;
    for id in FamilyId::GENERATORS.iter() {
        for n in id.min_dim()..=12 {
            if !id.in_domain(n) {
                continue;
            }
            let f = generate(id, n).unwrap();
            if f.weights.entries().iter().any(|a| *a > cap) {
                continue;
            }
            let v = f.verify(VerifyMode::Brute, &cap).unwrap();
            let c = v.classification.as_ref().unwrap();
            match f.claimed_class {
                Some(SingularityClass::Terminal) => assert!(c.overall_class.is_terminal(), "{} n={}", id, n),
                Some(_) => assert!(c.overall_class.is_canonical(), "{} n={}", id, n),
                None => {}
            }
            if f.claimed_gorenstein {
                assert!(f.weights.is_gorenstein(), "{} n={}", id, n);
            }
            assert_eq!(v.passed(), v.class_matches != Some(false) && v.certificates_pass, "{} n={}", id, n);
            checked += 1;
        }
    }
    assert!(checked >= 15, "{}", checked);
}

#[test]
fn certificate_and_brute_modes_agree() {
    let cap = Nat::from(CAP);
    for id in FamilyId::GENERATORS.iter().filter(|id| **id != FamilyId::BknCanonicalMaxVolume) {
        for n in id.min_dim()..=6 {
            if !id.in_domain(n) {
                continue;
            }
            let f = generate(id, n).unwrap();
            if f.weights.entries().iter().any(|a| *a > cap) {
                continue;
            }
            let cert = f.verify(VerifyMode::Certificate, &cap).unwrap();
            let brute = f.verify(VerifyMode::Brute, &cap).unwrap();
            assert!(cert.passed() && brute.passed(), "{} n={}", id, n);
            let (cc, bc) = (cert.classification.unwrap(), brute.classification.unwrap());
            for (p, q) in cc.points.iter().zip(&bc.points) {
                assert!(q.class >= p.class, "{} n={} point {}", id, n, p.point);
            }
        }
    }
}

#[test]
fn kasprzyk_dim3_example() {
    let f = generate(&FamilyId::KasprzykTerminalMaxVolume, 3).unwrap();
    assert_eq!(f.weights.to_string(), "(3,2,1,1)");
    assert_eq!(f.predicted_volume.unwrap().to_string(), "343/6");
    assert_eq!(predicted_volume(&FamilyId::NillGorensteinMaxVolume, 4).unwrap().unwrap().to_string(), "3528");
}

#[test]
fn bkn_volume_is_computed_not_asserted() {
    let f = generate(&FamilyId::BknCanonicalMaxVolume, 4).unwrap();
    assert_eq!(f.weights.to_string(), "(1204,516,84,1,1)");
    assert!(f.predicted_volume.is_none());
    assert_eq!(f.weights.anticanonical_volume().to_string(), "815409/4");
    assert!(!f.notes.is_empty());
}

#[test]
fn sporadic_table_verifies() {
    let cap = Nat::from(CAP);
    for name in sporadic_names() {
        let f = sporadic(name).unwrap();
        let v = f.verify(VerifyMode::Brute, &cap).unwrap();
        assert!(v.passed(), "{}: {:?}", name, v);
    }
}

#[test]
fn out_of_domain_is_invalid() {
    assert!(generate(&FamilyId::TerminalMaxIndex, 2).is_err());
    assert!(generate(&FamilyId::GorensteinTerminalMaxVolume, 8).is_err());
    assert!(generate(&FamilyId::Sporadic("P3-index-19".into()), 4).is_err());
}
