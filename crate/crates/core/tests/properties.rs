use std::collections::BTreeMap;

use catalan_core::numbers::c_witness;
use catalan_core::{
    a_number, b_number, binomial, c_number, catalan, evaluate_sides, find_identity, gen_catalan,
    generate, list_identities, load_checkpoint, run_scan, save_checkpoint, BigInt, Conjecture,
    Error, IntRange, Rational, ScanDomain, ScanOptions, ScanState, SequenceKind, SequenceSpec,
};
use proptest::prelude::*;

fn ratio(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn c_matches_witness(m in 1i64..300, k in 0i64..300) {
        prop_assume!(k <= m);
        prop_assert_eq!(c_number(m, k).unwrap(), c_witness(m, k));
    }

    #[test]
    fn c_antisymmetric(m in 1i64..300, k in 0i64..300) {
        prop_assume!(k <= m);
        prop_assert_eq!(c_number(m, m - k).unwrap(), -c_number(m, k).unwrap());
    }

    #[test]
    fn b_and_a_are_slices_of_c(n in 1i64..150, k in 1i64..152) {
        if k <= n {
            prop_assert_eq!(b_number(n, k).unwrap(), c_number(2 * n, n - k).unwrap());
        }
        if k <= n + 1 {
            prop_assert_eq!(a_number(n, k).unwrap(), c_number(2 * n + 1, n + 1 - k).unwrap());
        }
    }

    #[test]
    fn first_column_is_catalan(n in 1i64..200) {
        let c = catalan(n).unwrap();
        prop_assert_eq!(&b_number(n, 1).unwrap(), &c);
        prop_assert_eq!(&a_number(n, 1).unwrap(), &c);
        prop_assert_eq!(&gen_catalan(2, n).unwrap(), &c);
    }

    #[test]
    fn c_bridges_generalized_catalan(k in 1i64..8, n in 1i64..40) {
        let lhs = c_number(k * n + 1, n).unwrap();
        prop_assert_eq!(lhs, ((k - 2) * n + 1) * gen_catalan(k, n).unwrap());
    }

    #[test]
    fn registry_points_hold(pick in 0usize..1000, seed in proptest::collection::vec(0i64..60, 3)) {
        let ids = list_identities();
        let desc = &ids[pick % ids.len()];
        let cap = desc.sweep_cap.min(25);
        let mut values = Vec::new();
        for (p, s) in desc.params.iter().zip(&seed) {
            let lo = p.min.eval(&values);
            let hi = p.max.map_or(cap, |b| b.eval(&values).min(cap.max(lo)));
            prop_assume!(lo <= hi);
            values.push(lo + s % (hi - lo + 1));
        }
        let at: BTreeMap<String, i64> =
            desc.params.iter().zip(&values).map(|(p, &v)| (p.name.to_string(), v)).collect();
        let (l, r) = evaluate_sides(desc.id, &at).unwrap();
        prop_assert_eq!(l, r, "{} at {:?}", desc.id, at);
    }

    #[test]
    fn scan_state_json_round_trip(m_hi in 3i64..20, cut in 1u64..50, offset in 0i64..2) {
        let dom = ScanDomain { m: Some(IntRange::new(2, m_hi)), n: None };
        let s = ScanState::new(Conjecture::CPowers, Some(3), dom).unwrap().with_divisor_offset(offset);
        let s = run_scan(s, &ScanOptions { max_cells: Some(cut), ..Default::default() }).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        let back: ScanState = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, s);
    }
}

#[test]
fn linear_sum_matches_binomial() {
    // sum_{k=0}^{n} C(m,k) = binom(m-1,n)
    for m in 2..60 {
        for n in 1..m {
            let at = BTreeMap::from([("m".to_string(), m), ("n".to_string(), n)]);
            let (l, _) = evaluate_sides("thm-linear-sum", &at).unwrap();
            assert_eq!(l, ratio(binomial(m - 1, n).unwrap()));
        }
    }
}

#[test]
fn every_descriptor_is_documented() {
    for d in list_identities() {
        assert!(!d.statement.is_empty(), "{}", d.id);
        assert!(!d.anchor.is_empty(), "{}", d.id);
        assert!(d.sweep_cap >= 10, "{}", d.id);
        assert_eq!(find_identity(d.id).unwrap().id, d.id);
    }
}

#[test]
fn generate_windows_agree_with_terms() {
    let whole = generate(&SequenceSpec::new(SequenceKind::Catalan, 0, 30)).unwrap();
    let tail = generate(&SequenceSpec::new(SequenceKind::Catalan, 12, 18)).unwrap();
    assert_eq!(&whole[12..], &tail[..]);
    let row = generate(&SequenceSpec::new(SequenceKind::ARow(4), 1, 5)).unwrap();
    let want: Vec<BigInt> = [14, 28, 20, 7, 1].into_iter().map(BigInt::from).collect();
    assert_eq!(row, want);
}

#[test]
fn corrupt_and_foreign_checkpoints_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cp.json");

    std::fs::write(&path, "{ not json").unwrap();
    assert!(matches!(load_checkpoint(&path), Err(Error::Integrity(_))));

    let dom = ScanDomain { m: None, n: Some(IntRange::new(1, 10)) };
    let s = ScanState::new(Conjecture::BPowers, Some(3), dom).unwrap();
    save_checkpoint(&s, &path).unwrap();
    let mut v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    v["version"] = 99.into();
    std::fs::write(&path, v.to_string()).unwrap();
    assert!(matches!(load_checkpoint(&path), Err(Error::Integrity(_))));

    v["version"] = 1.into();
    v["processed"] = 5.into();
    std::fs::write(&path, v.to_string()).unwrap();
    assert!(matches!(load_checkpoint(&path), Err(Error::Integrity(_))));

    assert!(!dir.path().join("cp.json.tmp").exists());
}
