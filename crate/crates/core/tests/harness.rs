use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skwlab::cache;
use skwlab::experiment::{run_experiment, ExperimentSpec, Suite};
use skwlab::field::{make_field, Field, FieldElement as Fe};
use skwlab::linalg::Matrix;
use skwlab::meataxe::{is_irreducible, replay, GradedRep, Verdict};
use skwlab::pchar::PChar;
use skwlab::superalg::{build_algebra, Family};
use skwlab::verma::kac_module_p2;

fn small_fields() -> Vec<Field> {
    [(3, 1), (3, 2), (5, 1), (5, 2), (3, 3), (7, 1)]
        .iter()
        .map(|&(p, k)| make_field(p, k).unwrap())
        .collect()
}

#[test]
fn same_seed_gives_identical_reports() {
    let spec = ExperimentSpec::new(Suite::AC5);
    let a = run_experiment(&spec).unwrap();
    let b = run_experiment(&spec).unwrap();
    assert_eq!(a.canonical_json(), b.canonical_json());
}

#[test]
fn negative_control_fails_and_names_cases() {
    let mut spec = ExperimentSpec::new(Suite::AC6);
    spec.p = Some(3);
    let honest = run_experiment(&spec).unwrap();
    assert!(honest.passed);
    spec.negative_control = true;
    let inverted = run_experiment(&spec).unwrap();
    assert!(!inverted.passed);
    assert_eq!(inverted.failures.len(), inverted.cases.len());
    for key in &inverted.failures {
        assert!(inverted.cases.iter().any(|c| &c.key == key));
    }
}

fn kac_rep(lambda_h: i64) -> GradedRep {
    let g = build_algebra(Family::Ptilde, 2, Arc::new(make_field(3, 1).unwrap())).unwrap();
    let lam = [g.field().from_int(lambda_h), Fe::ZERO];
    let k = kac_module_p2(&g, &PChar::zero(4), &lam).unwrap();
    GradedRep::from_module(&k.module, "kac")
}

#[test]
fn cache_round_trip_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let rep = kac_rep(2);
    let path = dir.path().join(cache::file_name("kac-2"));
    cache::save(&path, &rep).unwrap();
    let back = cache::load(&path).unwrap();
    assert_eq!(cache::encode(&back), cache::encode(&rep));

    let cert = is_irreducible(&back, 9);
    assert_eq!(cert.verdict, Verdict::Irreducible);
    replay(&rep, &cert).unwrap();

    let listed = cache::list(dir.path()).unwrap();
    assert_eq!(listed.len(), 1);
    assert!(cache::verify(dir.path()).unwrap().iter().all(|r| r.ok));
}

#[test]
fn corrupted_cache_files_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let mut bytes = cache::encode(&kac_rep(0));
    bytes[0] ^= 0xff;
    let path = dir.path().join(cache::file_name("bad"));
    std::fs::write(&path, &bytes).unwrap();
    assert!(matches!(
        cache::load(&path),
        Err(cache::CacheError::BadMagic)
    ));

    let good = cache::encode(&kac_rep(0));
    assert!(matches!(
        cache::decode(&good[..good.len() / 2]),
        Err(cache::CacheError::Truncated | cache::CacheError::Corrupt(_))
    ));
    let report = cache::verify(dir.path()).unwrap();
    assert!(!report[0].ok);
}

#[test]
fn reducible_certificate_replays() {
    let rep = kac_rep(0);
    let cert = is_irreducible(&rep, 1);
    assert_eq!(cert.verdict, Verdict::Reducible);
    replay(&rep, &cert).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(fi in 0usize..6, seed in any::<u64>()) {
        let f = &small_fields()[fi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
        prop_assert_eq!(f.frobenius_inverse(f.frobenius(a)), a);
    }

    #[test]
    fn parse_inverts_format(i in 0usize..729) {
        let f = make_field(3, 6).unwrap();
        let x = f.element(i);
        prop_assert_eq!(f.parse(&f.format(x)).unwrap(), x);
    }

    #[test]
    fn cayley_hamilton(fi in 0usize..6, n in 1usize..7, seed in any::<u64>()) {
        let f = &small_fields()[fi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Matrix::from_rows(
            (0..n).map(|_| (0..n).map(|_| f.random(&mut rng)).collect()).collect(),
        );
        let cp = m.charpoly(f);
        prop_assert_eq!(cp.len(), n + 1);
        prop_assert_eq!(cp[n], f.one());
        let mut acc = Matrix::zeros(n, n);
        for c in cp.iter().rev() {
            acc = acc.mul(f, &m).add(f, &Matrix::identity(n).scale(f, *c));
        }
        prop_assert!(acc.is_zero());
    }
}
