use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use qcrit_core::crit::{
    bounds_and_family, check_critical_inequalities, count_structures, count_tuples_brute, count_tuples_formula, crit,
    crit_oracle, crit_via_hyperplanes, tuple_support_distribution, verify_witness, CritValue, StructureKind,
    StructureSpec, Witness,
};
use qcrit_core::fixtures::{self, TABLE1};
use qcrit_core::gf::{ExtField, Field, Mat, Subspace};
use qcrit_core::lattice::{Lattice, SubspaceLattice};
use qcrit_core::qpm::QPolymatroid;
use qcrit_core::rcode::{Code, MatrixCode, VectorCode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f2() -> Field {
    Field::new(2).unwrap()
}

fn crit_of(c: &Code) -> CritValue {
    crit(&QPolymatroid::from_code(c)).unwrap().value
}

fn all_subspaces(n: usize) -> Vec<Subspace> {
    SubspaceLattice::new(f2(), n).full().enumerate(None).unwrap()
}

#[test]
fn ex4_3_exponent_and_count() {
    let c = Code::Matrix(fixtures::ex4_3());
    let m = QPolymatroid::from_code(&c);
    assert_eq!(
        m.char_poly().unwrap().to_string(),
        "z^6 - 4*z^4 - 25*z^3 + 44*z^2 + 40*z - 56"
    );
    assert_eq!(crit(&m).unwrap().value, CritValue::Finite(2));
    let full = Subspace::full(&f2(), 5);
    assert_eq!(count_tuples_formula(&m, 2, &full).unwrap(), BigUint::from(2280u32));
    assert_eq!(count_tuples_brute(&c, 2, &full).unwrap(), BigUint::from(2280u32));
    let o = crit_oracle(&c, None).unwrap();
    assert_eq!(o.value, CritValue::Finite(2));
    let Some(Witness::Words(w)) = o.witnesses else {
        panic!("no witness")
    };
    assert!(verify_witness(&c, 2, &w));
}

#[test]
fn table1_exponents_and_bounds() {
    for row in TABLE1 {
        let c = row.code().unwrap();
        let b = bounds_and_family(&c).unwrap();
        assert_eq!(b.crit, CritValue::Finite(row.crit), "{}", row.name);
        assert_eq!(b.lower, row.bound, "{}", row.name);
        assert!(b.report.passed(), "{}\n{}", row.name, b.report);
        assert_eq!(crit_oracle(&c, None).unwrap().value, b.crit, "{}", row.name);
    }
}

#[test]
fn table1_first_row_has_no_family_prediction() {
    let b = bounds_and_family(&TABLE1[0].code().unwrap()).unwrap();
    assert_eq!((b.lower, b.upper, b.prediction), (2, 5, None));
}

#[test]
fn ex5_8_one_weight_code() {
    let c = Code::Matrix(fixtures::ex5_8());
    assert_eq!(c.weight_distribution().unwrap(), vec![1, 0, 15, 0]);
    assert_eq!(crit_of(&c), CritValue::Finite(2));
    assert_eq!(crit_oracle(&c, None).unwrap().value, CritValue::Finite(2));
}

#[test]
fn ex5_9_published_witnesses() {
    let c = Code::Matrix(fixtures::ex5_9());
    assert_eq!(crit_oracle(&c, None).unwrap().value, CritValue::Finite(2));
    let x1 = Mat::from_rows(&[vec![1, 0], vec![0, 0], vec![0, 1], vec![0, 1]]);
    let x2 = Mat::from_rows(&[vec![0, 1], vec![1, 0], vec![1, 0], vec![0, 1]]);
    assert!(verify_witness(&c, 2, &[x1.clone(), x2]));
    assert!(!verify_witness(&c, 2, &[x1.clone(), x1]));
    assert_eq!(bounds_and_family(&c).unwrap().prediction, None);
}

#[test]
fn oracle_depth_cap() {
    let c = Code::Matrix(fixtures::ex5_8());
    assert!(matches!(
        crit_oracle(&c, Some(1)),
        Err(qcrit_core::Error::ResourceLimit { .. })
    ));
}

#[test]
fn degenerate_code_is_infinite() {
    let g = Mat::from_rows(&[vec![1, 0], vec![0, 1], vec![0, 0]]);
    let c = Code::Matrix(MatrixCode::new(f2(), 3, 2, vec![g]).unwrap());
    assert_eq!(crit_of(&c), CritValue::Infinity);
    assert_eq!(crit_oracle(&c, None).unwrap().value, CritValue::Infinity);
    assert_eq!(CritValue::Infinity.to_string(), "infinity");
}

#[test]
fn rank_n_word_gives_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let mut c = MatrixCode::random(f2(), 3, 3, 3, &mut rng).unwrap();
        c = MatrixCode::new(f2(), 3, 3, [c.generators().to_vec(), vec![Mat::identity(3)]].concat()).unwrap();
        assert_eq!(crit_of(&Code::Matrix(c)), CritValue::Finite(1));
    }
}

#[test]
fn gabidulin_codes_have_exponent_one() {
    for (m, n, k) in [(3, 3, 1), (3, 3, 2), (3, 2, 1), (4, 4, 2), (4, 3, 2)] {
        let v = VectorCode::gabidulin(2, m, n, k).unwrap();
        let c = Code::Vector(v.clone());
        assert_eq!(crit_of(&c), CritValue::Finite(1), "m={m} n={n} k={k}");
        assert_eq!(crit_via_hyperplanes(&v).unwrap().value, CritValue::Finite(1));
        assert_eq!(crit_oracle(&c, None).unwrap().value, CritValue::Finite(1));
    }
}

#[test]
fn simplex_exponent_is_k() {
    let v = VectorCode::simplex(2, 2, 2).unwrap();
    let c = Code::Vector(v.clone());
    assert_eq!(crit_of(&c), CritValue::Finite(2));
    let h = crit_via_hyperplanes(&v).unwrap();
    assert_eq!(h.value, CritValue::Finite(2));
    let Some(Witness::Hyperplanes(hs)) = h.witnesses else {
        panic!("no witness")
    };
    assert_ne!(hs[0], hs[1]);
    let b = bounds_and_family(&c).unwrap();
    assert!(b.report.passed(), "{}", b.report);
    assert!(b.report.checks.iter().any(|x| x.name.contains("simplex")));
}

#[test]
fn random_nondegenerate_vector_codes_meet_the_lower_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (m, n) in [(2usize, 3usize), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6)] {
        let ext = ExtField::new(f2(), m).unwrap();
        for k in [n.div_ceil(m), n.div_ceil(m) + 1] {
            if k > n {
                continue;
            }
            let v = VectorCode::random_nondegenerate(ext.clone(), n, k, &mut rng).unwrap();
            let c = Code::Vector(v.clone());
            let want = CritValue::Finite(n.div_ceil(m) as u64);
            assert_eq!(crit_of(&c), want, "m={m} n={n} k={k}");
            assert_eq!(crit_via_hyperplanes(&v).unwrap().value, want, "m={m} n={n} k={k}");
        }
    }
}

#[test]
fn hyperplanes_reject_degenerate_codes() {
    let ext = ExtField::new(f2(), 2).unwrap();
    let v = VectorCode::new(ext, Mat::from_rows(&[vec![1, 1, 0]])).unwrap();
    assert!(matches!(
        crit_via_hyperplanes(&v),
        Err(qcrit_core::Error::DegenerateCode)
    ));
}

#[test]
fn hyperplanes_on_one_dimensional_code() {
    let ext = ExtField::new(f2(), 3).unwrap();
    let v = VectorCode::new(ext, Mat::from_rows(&[vec![1, 2]])).unwrap();
    assert_eq!(crit_via_hyperplanes(&v).unwrap().value, CritValue::Finite(1));
}

/// `{x a^T : x ∈ F_2^3}`: every word has rank one, so three words are
/// needed although `⌈n/m⌉ = 2`.
#[test]
fn rank_one_tensor_code_breaks_the_m_eq_n_minus_1_rule() {
    let gens = (0..3)
        .map(|i| {
            let mut g = Mat::zeros(3, 2);
            g.set(i, 0, 1);
            g
        })
        .collect();
    let c = Code::Matrix(MatrixCode::new(f2(), 3, 2, gens).unwrap());
    assert!(c.is_nondegenerate());
    assert_eq!(crit_of(&c), CritValue::Finite(3));
    let b = bounds_and_family(&c).unwrap();
    let line = b.report.checks.iter().find(|x| x.name.contains("m = n-1")).unwrap();
    assert!(line.to_string().starts_with("FAIL"), "{line}");
}

#[test]
fn mrd_codes_with_m_eq_n_minus_1_and_k_eq_n_have_exponent_two() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut seen = 0;
    for _ in 0..400 {
        let c = MatrixCode::random(f2(), 3, 2, 3, &mut rng).unwrap();
        let cl = qcrit_core::rcode::classify_matrix_code(&c).unwrap();
        if !cl.mrd {
            continue;
        }
        seen += 1;
        assert_eq!(crit_of(&Code::Matrix(c)), CritValue::Finite(2));
    }
    assert!(seen > 0);
}

#[test]
fn tuple_counts_agree_on_random_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (n, m, k) in [(3, 2, 3), (4, 2, 4), (4, 3, 5), (3, 3, 2)] {
        let c = Code::Matrix(MatrixCode::random(f2(), n, m, k, &mut rng).unwrap());
        let pm = QPolymatroid::from_code(&c);
        for t in 1..=2u32 {
            let dist = tuple_support_distribution(&c, t).unwrap();
            let mut total = BigUint::from(0u8);
            for u in all_subspaces(n) {
                let f = count_tuples_formula(&pm, t, &u).unwrap();
                assert_eq!(
                    &f,
                    dist.get(&u).unwrap_or(&BigUint::from(0u8)),
                    "n={n} m={m} k={k} t={t}"
                );
                total += f;
            }
            assert_eq!(total, BigUint::from(2u8).pow((k as u32) * t));
        }
        assert_eq!(
            count_tuples_formula(&pm, 3, &Subspace::zero(n)).unwrap(),
            BigUint::from(1u8)
        );
    }
}

#[test]
fn oracle_agrees_with_formula_on_random_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for (n, m, k) in [(3, 2, 2), (4, 2, 3), (4, 3, 2), (5, 2, 4), (5, 3, 3)] {
        for _ in 0..4 {
            let c = Code::Matrix(MatrixCode::random(f2(), n, m, k, &mut rng).unwrap());
            let o = crit_oracle(&c, None).unwrap();
            assert_eq!(o.value, crit_of(&c));
            if let (CritValue::Finite(t), Some(Witness::Words(w))) = (o.value, o.witnesses) {
                assert!(verify_witness(&c, t, &w));
            }
        }
    }
}

#[test]
fn inequalities_hold_on_ex4_3() {
    let m = QPolymatroid::from_matrix_code(&fixtures::ex4_3());
    let rep = check_critical_inequalities(&m).unwrap();
    assert!(rep.passed(), "{rep}");
}

fn status(rep: &qcrit_core::report::Report, name: &str) -> Vec<bool> {
    rep.checks
        .iter()
        .filter(|c| c.name == name)
        .map(|c| c.outcome == qcrit_core::report::Outcome::Pass)
        .collect()
}

fn matrix_code(n: usize, m: usize, gens: &[&[&[u32]]]) -> MatrixCode {
    let gens = gens
        .iter()
        .map(|g| Mat::from_rows(&g.iter().map(|r| r.to_vec()).collect::<Vec<_>>()))
        .collect();
    MatrixCode::new(f2(), n, m, gens).unwrap()
}

#[test]
fn complement_inequalities_hold_on_random_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let mut checked = 0;
    while checked < 8 {
        let c = MatrixCode::random(f2(), 4, 2, 3, &mut rng).unwrap();
        if !c.is_nondegenerate() {
            continue;
        }
        checked += 1;
        let rep = check_critical_inequalities(&QPolymatroid::from_matrix_code(&c)).unwrap();
        for name in [
            "restriction is at most the whole",
            "whole is at most the sum over contractions to a direct sum",
            "some contraction off U is at most the restriction to U",
            "restriction to a complement is at most the contraction",
        ] {
            assert_eq!(status(&rep, name), vec![true], "{name}\n{rep}");
        }
    }
}

/// Every rank-2 support contains `1100`, so three words are needed, yet
/// one word covers each half of `⟨0100,0001⟩ ⊕ ⟨1000,0010⟩`.
#[test]
fn restrictions_to_a_direct_sum_can_undershoot() {
    let c = matrix_code(
        4,
        2,
        &[
            &[&[1, 1], &[1, 1], &[0, 0], &[0, 0]],
            &[&[1, 1], &[0, 1], &[0, 0], &[0, 0]],
            &[&[0, 0], &[0, 0], &[0, 0], &[1, 0]],
            &[&[0, 0], &[0, 0], &[1, 0], &[1, 0]],
        ],
    );
    let m = QPolymatroid::from_matrix_code(&c);
    assert_eq!(crit(&m).unwrap().value, CritValue::Finite(3));
    let lat = m.lattice().clone();
    let t = lat.span(&[vec![0, 1, 0, 0], vec![0, 0, 0, 1]]);
    let t2 = lat.span(&[vec![1, 0, 0, 0], vec![0, 0, 1, 0]]);
    for x in [&t, &t2] {
        assert_eq!(crit(&m.restriction(x).unwrap()).unwrap().value, CritValue::Finite(1));
    }
    let rep = check_critical_inequalities(&m).unwrap();
    assert_eq!(status(&rep, "whole is at most the sum over a direct sum"), vec![false]);
    assert_eq!(
        status(&rep, "whole is at most the sum over contractions to a direct sum"),
        vec![true]
    );
}

/// Supports `⟨110⟩, ⟨010,001⟩, ⟨100,011⟩`: `⟨111⟩` is minimal for
/// complements but no word has support `⟨111⟩^⊥`, and `⟨110,001⟩` is
/// minimal for contractions but contains `⟨111⟩`.
#[test]
fn minimal_set_equivalence_fails_on_a_small_code() {
    let c = matrix_code(3, 2, &[&[&[1, 0], &[1, 0], &[0, 0]], &[&[0, 0], &[0, 1], &[1, 1]]]);
    let rep = check_critical_inequalities(&QPolymatroid::from_matrix_code(&c)).unwrap();
    assert_eq!(
        status(&rep, "minimal for complements are minimal for contractions"),
        vec![false, true]
    );
    assert_eq!(
        status(&rep, "minimal for contractions are minimal for complements"),
        vec![false, true]
    );
    let text = rep.to_string();
    assert!(text.contains("[l=1]: {111}"), "{text}");
    assert!(text.contains("[l=1]: {110;001}"), "{text}");
}

fn spec(kind: StructureKind, codes: Vec<MatrixCode>) -> StructureSpec {
    StructureSpec { kind, codes }
}

#[test]
fn word_tuple_structures_match_tuple_counts() {
    let c = fixtures::ex5_9();
    let pm = QPolymatroid::from_matrix_code(&c);
    let lat = pm.lattice().clone();
    for u in all_subspaces(4) {
        for t in 1..=2 {
            let s = count_structures(&spec(StructureKind::WordTuples(t), vec![c.clone()]), &u).unwrap();
            assert_eq!(s.formula, count_tuples_formula(&pm, t, &lat.perp(&u)).unwrap());
            assert_eq!(s.brute.as_ref(), Some(&s.formula));
        }
        let one = count_structures(&spec(StructureKind::WordTuples(1), vec![c.clone()]), &u).unwrap();
        let cross = count_structures(&spec(StructureKind::CrossCode, vec![c.clone()]), &u).unwrap();
        assert_eq!(one.formula, cross.formula);
    }
}

#[test]
fn subcode_structures_on_ex5_8() {
    let c = fixtures::ex5_8();
    for d in 1..=2 {
        let mut total = BigUint::from(0u8);
        for u in all_subspaces(3) {
            let s = count_structures(&spec(StructureKind::Subcodes(vec![d]), vec![c.clone()]), &u).unwrap();
            assert_eq!(s.brute.as_ref(), Some(&s.formula), "d={d} U={}", u.compact());
            total += s.formula;
        }
        assert_eq!(total, qcrit_core::lattice::gaussian_binomial(4, d as u64, 2));
    }
    let full = count_structures(&spec(StructureKind::Subcodes(vec![4]), vec![c]), &Subspace::zero(3)).unwrap();
    assert_eq!(full.formula, BigUint::from(1u8));
}

/// `{[X | Y] : X, Y ∈ C}` has twice the rank function of `C`.
fn doubled(c: &MatrixCode) -> MatrixCode {
    let (n, m) = (c.n(), c.m());
    let mut gens = Vec::new();
    for g in c.generators() {
        for side in 0..2 {
            let mut x = Mat::zeros(n, 2 * m);
            for i in 0..n {
                for j in 0..m {
                    x.set(i, side * m + j, g.get(i, j));
                }
            }
            gens.push(x);
        }
    }
    MatrixCode::new(c.field().clone(), n, 2 * m, gens).unwrap()
}

#[test]
fn cross_code_structures_with_a_rescaled_code() {
    let c = fixtures::ex5_9();
    let d = doubled(&c);
    assert_eq!(d.k(), 2 * c.k());
    for u in all_subspaces(4) {
        let s = count_structures(&spec(StructureKind::CrossCode, vec![c.clone(), d.clone()]), &u).unwrap();
        assert_eq!(s.scalings[1], BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(s.brute.as_ref(), Some(&s.formula), "U={}", u.compact());
    }
}

#[test]
fn structures_reject_unrelated_codes() {
    let s = spec(
        StructureKind::CrossCode,
        vec![fixtures::ex5_9(), fixtures::TABLE1[2].code().unwrap().to_matrix_code()],
    );
    assert!(count_structures(&s, &Subspace::zero(4)).is_err());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let other = MatrixCode::random(f2(), 4, 2, 3, &mut rng).unwrap();
    let s = spec(StructureKind::CrossCode, vec![fixtures::ex5_9(), other]);
    assert!(matches!(
        count_structures(&s, &Subspace::zero(4)),
        Err(qcrit_core::Error::ScalingMismatch(_))
    ));
}
