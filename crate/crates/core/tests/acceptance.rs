//! End-to-end reproduction run. Prints one PASS/FAIL line per criterion with
//! its runtime and limit, and exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qcrit_core::crit::{
    bounds_and_family, count_structures, count_tuples_formula, crit, crit_oracle, crit_via_hyperplanes,
    tuple_support_distribution, verify_witness, CritValue, StructureKind, StructureSpec, Witness,
};
use qcrit_core::fixtures::{self, TABLE1};
use qcrit_core::gf::{ExtField, Field, Mat, Subspace};
use qcrit_core::lattice::{BooleanLattice, Lattice, SubspaceLattice};
use qcrit_core::poly::IntPoly;
use qcrit_core::qpm::{compare_ranks, AxiomLevel, QPolymatroid};
use qcrit_core::rcode::{Code, MatrixCode, VectorCode};
use qcrit_core::report::Report;
use qcrit_core::wlat::{check_identities, decomposition_terms, IdentityOptions, WeightedLattice};
use qcrit_core::Result;

const THREADS: usize = 4;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Result<Report>,
}

const CRITERIA: [Criterion; 9] = [
    Criterion {
        id: 1,
        name: "[5x3,6,1] code: polynomial, evaluations, exponent 2",
        limit: Duration::from_secs(1),
        run: ex4_3,
    },
    Criterion {
        id: 2,
        name: "critical exponent table, five rows",
        limit: Duration::from_secs(30),
        run: table1,
    },
    Criterion {
        id: 3,
        name: "(2,3)-polymatroid table: polynomial and coatom decomposition",
        limit: Duration::from_secs(1),
        run: ex3_7,
    },
    Criterion {
        id: 4,
        name: "[3x3,4,2] code: weights, exponent, enumerator",
        limit: Duration::from_secs(5),
        run: ex5_8,
    },
    Criterion {
        id: 5,
        name: "[4x2,3] code: subcode search and published certificate",
        limit: Duration::from_secs(5),
        run: ex5_9,
    },
    Criterion {
        id: 6,
        name: "identity suite on random weightings",
        limit: Duration::from_secs(60),
        run: identities,
    },
    Criterion {
        id: 7,
        name: "representability suite on random F_2 matrix codes",
        limit: Duration::from_secs(300),
        run: representability,
    },
    Criterion {
        id: 8,
        name: "vector codes: Gabidulin, random, simplex",
        limit: Duration::from_secs(60),
        run: vector_codes,
    },
    Criterion {
        id: 9,
        name: "structure counting",
        limit: Duration::from_secs(60),
        run: structures,
    },
];

fn f2() -> Field {
    Field::new(2).unwrap()
}

fn ex4_3() -> Result<Report> {
    let mut rep = Report::new("criterion 1");
    let c = Code::Matrix(fixtures::ex4_3());
    let m = QPolymatroid::from_code(&c);
    let p = m.char_poly()?;
    rep.compare(
        "characteristic polynomial",
        "",
        &p,
        &IntPoly::from_i64(&[-56, 40, 44, -25, -4, 0, 1]),
    );
    for (z, want) in [(1, 0), (2, 0), (4, 2280)] {
        rep.compare("evaluation", format!("z={z}"), &p.eval_i64(z), &BigInt::from(want));
    }
    let formula = crit(&m)?;
    rep.compare("exponent by formula", "", &formula.value, &CritValue::Finite(2));
    let oracle = crit_oracle(&c, None)?;
    rep.compare("exponent by subcode search", "", &oracle.value, &CritValue::Finite(2));
    let ok = match &oracle.witnesses {
        Some(Witness::Words(w)) => verify_witness(&c, 2, w),
        _ => false,
    };
    rep.check("witness pair spans F_2^5", "", ok, || {
        ("witness".into(), "rejected".into())
    });
    let top = m.lattice().top();
    rep.compare(
        "pairs with full support",
        "t=2",
        &count_tuples_formula(&m, 2, &top)?,
        &BigUint::from(2280u32),
    );
    Ok(rep)
}

fn table1() -> Result<Report> {
    let mut rep = Report::new("criterion 2");
    for row in &TABLE1 {
        let c = row.code()?;
        let b = bounds_and_family(&c)?;
        rep.compare("exponent", row.name, &b.crit, &CritValue::Finite(row.crit));
        rep.compare("lower bound", row.name, &b.lower, &row.bound);
    }
    let row = &TABLE1[3];
    rep.check("built as a dual", row.name, row.text.contains("dual-of:"), || {
        ("fixture".into(), "no dual-of construction".into())
    });
    rep.compare("dimension of the dual", row.name, &row.code()?.k(), &15);
    Ok(rep)
}

fn ex3_7() -> Result<Report> {
    let mut rep = Report::new("criterion 3");
    let (w, _) = fixtures::ex3_7();
    let lat = w.lattice();
    let sp = |v: &[&[u32]]| lat.span(&v.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    let p = w.char_poly_direct()?;
    rep.compare(
        "characteristic polynomial",
        "",
        &p,
        &IntPoly::from_i64(&[0, 6, -5, -2, 0, 1]),
    );
    let h = sp(&[&[1, 0, 0], &[0, 1, 0]]);
    let t = decomposition_terms(&w, &h)?;
    rep.compare("coatom gap", "H=<100,010>", &t.gap, &0);
    rep.compare(
        "restriction",
        "H=<100,010>",
        &t.restriction,
        &IntPoly::from_i64(&[2, 0, -2, -1, 0, 1]),
    );
    let expected: [(&[u32], &[i64]); 4] = [
        (&[0, 0, 1], &[1, -2, 1]),
        (&[1, 0, 1], &[0, -1, 1]),
        (&[1, 1, 1], &[1, -2, 0, 1]),
        (&[0, 1, 1], &[0, -1, 1]),
    ];
    rep.compare("atoms outside H", "", &t.contractions.len(), &expected.len());
    for (v, c) in expected {
        let y = sp(&[v]);
        let got = t.contractions.iter().find(|(a, _)| *a == y).map(|(_, p)| p.clone());
        let label = format!("y={}", y.compact());
        match got {
            Some(got) => rep.compare("contraction", label, &got, &IntPoly::from_i64(c)),
            None => rep.check("contraction", label, false, || ("atom".into(), "missing".into())),
        }
    }
    rep.compare("decomposition total", "H=<100,010>", &t.total, &p);
    rep.extend(check_identities(
        &w,
        &IdentityOptions {
            r: Some(3),
            ..Default::default()
        },
    )?);
    Ok(rep)
}

fn ex5_8() -> Result<Report> {
    let mut rep = Report::new("criterion 4");
    let c = Code::Matrix(fixtures::ex5_8());
    let w = c.weight_distribution()?;
    rep.compare(
        "weight distribution",
        "",
        &format!("{w:?}"),
        &"[1, 0, 15, 0]".to_string(),
    );
    let m = QPolymatroid::from_code(&c);
    rep.compare("exponent", "", &crit(&m)?.value, &CritValue::Finite(2));
    rep.compare(
        "exponent by subcode search",
        "",
        &crit_oracle(&c, None)?.value,
        &CritValue::Finite(2),
    );
    for (i, a) in m.weight_enumerator()?.iter().enumerate() {
        rep.compare("enumerator at q", format!("i={i}"), &a.eval_i64(2), &BigInt::from(w[i]));
    }
    Ok(rep)
}

fn ex5_9() -> Result<Report> {
    let mut rep = Report::new("criterion 5");
    let c = Code::Matrix(fixtures::ex5_9());
    rep.compare(
        "exponent by subcode search",
        "",
        &crit_oracle(&c, None)?.value,
        &CritValue::Finite(2),
    );
    rep.compare(
        "exponent by formula",
        "",
        &crit(&QPolymatroid::from_code(&c))?.value,
        &CritValue::Finite(2),
    );
    let x1 = Mat::from_rows(&[vec![1, 0], vec![0, 0], vec![0, 1], vec![0, 1]]);
    let x2 = Mat::from_rows(&[vec![0, 1], vec![1, 0], vec![1, 0], vec![0, 1]]);
    rep.check(
        "published certificate",
        "X1,X2",
        verify_witness(&c, 2, &[x1, x2]),
        || ("certificate".into(), "rejected".into()),
    );
    Ok(rep)
}

fn identities() -> Result<Report> {
    let mut rep = Report::new("criterion 6");
    let mut rng = ChaCha8Rng::seed_from_u64(0x6);
    for i in 0..20 {
        let n = 2 + i % 3;
        let lat = SubspaceLattice::new(f2(), n);
        let w = if i % 2 == 0 {
            WeightedLattice::random_monotone(lat, &mut rng, 2)?
        } else {
            WeightedLattice::random_subspace_polymatroid(f2(), n, &mut rng)
        };
        let sub = check_identities(&w, &IdentityOptions::default())?;
        summarise(&mut rep, &format!("subspace #{i} n={n}"), sub);
    }
    for i in 0..20 {
        let n = 3 + i % 3;
        let w = if i % 2 == 0 {
            WeightedLattice::random_monotone(BooleanLattice::new(n), &mut rng, 2)?
        } else {
            WeightedLattice::random_boolean_polymatroid(n, &mut rng)
        };
        let sub = check_identities(&w, &IdentityOptions::default())?;
        summarise(&mut rep, &format!("boolean #{i} n={n}"), sub);
    }
    Ok(rep)
}

/// Folds a sub-report into one line, keeping every failure.
fn summarise(rep: &mut Report, params: &str, sub: Report) {
    let total = sub.checks.len();
    let fails: Vec<String> = sub.failures().map(|c| format!("{} [{}]", c.name, c.params)).collect();
    rep.check("identities", params, fails.is_empty(), || {
        (format!("{} of {total} failed", fails.len()), fails.join("; "))
    });
}

fn representability() -> Result<Report> {
    let mut rep = Report::new("criterion 7");
    let mut rng = ChaCha8Rng::seed_from_u64(0x7);
    for i in 0..10 {
        let n = rng.random_range(2..=5);
        let m = rng.random_range(1..=3);
        let k = rng.random_range(1..=(n * m).min(6));
        let c = MatrixCode::random(f2(), n, m, k, &mut rng)?;
        let params = format!("#{i} n={n} m={m} k={k}");
        let mq = QPolymatroid::from_matrix_code(&c);
        summarise(&mut rep, &params, mq.validate_axioms(AxiomLevel::Exhaustive)?);

        let lat = mq.lattice();
        let all = lat.full().enumerate(None)?;
        let dist = c.support_distribution()?;
        let bad = all
            .iter()
            .map(|v| {
                let p = mq.contraction(v)?.char_poly()?.eval_i64(2);
                let want = dist.get(&lat.perp(v)).copied().unwrap_or(0);
                Ok((p != BigInt::from(want)).then(|| v.compact()))
            })
            .collect::<Result<Vec<_>>>()?;
        first_bad(&mut rep, "exact support counts", &params, bad);

        let d = c.dual();
        summarise(
            &mut rep,
            &params,
            compare_ranks("dual", &mq.dual()?, &QPolymatroid::from_matrix_code(&d))?,
        );

        let bad = all.iter().map(|u| {
            let lhs = c.shortened_dim(u) as i64;
            let rhs = k as i64 - (m * u.dim()) as i64 + d.shortened_dim(&lat.perp(u)) as i64;
            (lhs != rhs).then(|| u.compact())
        });
        first_bad(&mut rep, "shortened sizes across duality", &params, bad.collect());

        let code = Code::Matrix(c);
        for t in 1..=2 {
            let brute = tuple_support_distribution(&code, t)?;
            let bad = all
                .iter()
                .map(|u| {
                    let f = count_tuples_formula(&mq, t, u)?;
                    Ok((f != brute.get(u).cloned().unwrap_or_default()).then(|| u.compact()))
                })
                .collect::<Result<Vec<_>>>()?;
            first_bad(&mut rep, "tuple counts", &format!("{params} t={t}"), bad);
        }
    }
    Ok(rep)
}

fn first_bad(rep: &mut Report, name: &str, params: &str, bad: Vec<Option<String>>) {
    let bad: Vec<String> = bad.into_iter().flatten().collect();
    rep.check(name, params, bad.is_empty(), || {
        (format!("{} subspaces disagree", bad.len()), format!("first {}", bad[0]))
    });
}

fn vector_codes() -> Result<Report> {
    let mut rep = Report::new("criterion 8");
    for (m, n, k) in [(2, 2, 1), (3, 3, 1), (3, 3, 2), (4, 3, 2), (4, 4, 3)] {
        let g = VectorCode::gabidulin(2, m, n, k)?;
        let params = format!("Gabidulin m={m} n={n} k={k}");
        rep.compare(
            "exponent",
            params.clone(),
            &crit(&QPolymatroid::from_vector_code(&g))?.value,
            &CritValue::Finite(1),
        );
        rep.compare(
            "exponent by hyperplanes",
            params,
            &crit_via_hyperplanes(&g)?.value,
            &CritValue::Finite(1),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x8);
    for (m, ns) in [(2usize, 3..=6usize), (3, 4..=6)] {
        let ext = ExtField::new(f2(), m)?;
        for n in ns {
            let lower = n.div_ceil(m);
            for k in lower..=(lower + 1).min(n) {
                let c = VectorCode::random_nondegenerate(ext.clone(), n, k, &mut rng)?;
                let params = format!("random m={m} n={n} k={k}");
                let want = CritValue::Finite(lower as u64);
                rep.compare(
                    "exponent",
                    params.clone(),
                    &crit(&QPolymatroid::from_vector_code(&c))?.value,
                    &want,
                );
                rep.compare(
                    "exponent by hyperplanes",
                    params,
                    &crit_via_hyperplanes(&c)?.value,
                    &want,
                );
            }
        }
    }
    let s = VectorCode::simplex(2, 2, 2)?;
    rep.compare(
        "exponent",
        "simplex(2,2,2)",
        &crit(&QPolymatroid::from_vector_code(&s))?.value,
        &CritValue::Finite(2),
    );
    rep.compare(
        "exponent by hyperplanes",
        "simplex(2,2,2)",
        &crit_via_hyperplanes(&s)?.value,
        &CritValue::Finite(2),
    );
    let b = bounds_and_family(&Code::Vector(s))?;
    let simplex_rule = b.report.checks.iter().any(|c| c.name.contains("simplex"));
    rep.check("simplex rule applies", "simplex(2,2,2)", simplex_rule, || {
        ("rules".into(), "no simplex rule".into())
    });
    summarise(&mut rep, "simplex(2,2,2) bounds and rules", b.report);
    Ok(rep)
}

fn structures() -> Result<Report> {
    let mut rep = Report::new("criterion 9");
    for (name, c) in [("ex4_3", fixtures::ex4_3()), ("ex5_8", fixtures::ex5_8())] {
        let m = QPolymatroid::from_matrix_code(&c);
        let lat = m.lattice().clone();
        let all = lat.full().enumerate(None)?;
        for t in 1..=2u32 {
            let spec = StructureSpec {
                kind: StructureKind::WordTuples(t),
                codes: vec![c.clone()],
            };
            let mut bad = Vec::new();
            for u in &all {
                let s = count_structures(&spec, u)?;
                let want = count_tuples_formula(&m, t, &lat.perp(u))?;
                if s.formula != want || s.brute.as_ref().is_some_and(|b| *b != want) {
                    bad.push(Some(u.compact()));
                }
            }
            first_bad(
                &mut rep,
                "word tuples match tuple counts",
                &format!("{name} t={t}"),
                bad,
            );
        }
        let cross = StructureSpec {
            kind: StructureKind::CrossCode,
            codes: vec![c.clone()],
        };
        let single = StructureSpec {
            kind: StructureKind::WordTuples(1),
            codes: vec![c.clone()],
        };
        let bad = all
            .iter()
            .map(|u| Ok((count_structures(&cross, u)? != count_structures(&single, u)?).then(|| u.compact())))
            .collect::<Result<Vec<_>>>()?;
        first_bad(&mut rep, "one-code cross tuples are single words", name, bad);
    }
    let c = fixtures::ex5_8();
    let all: Vec<Subspace> = SubspaceLattice::new(f2(), c.n()).full().enumerate(None)?;
    for d in 1..=2 {
        let spec = StructureSpec {
            kind: StructureKind::Subcodes(vec![d]),
            codes: vec![c.clone()],
        };
        let bad = all
            .iter()
            .map(|u| {
                let s = count_structures(&spec, u)?;
                Ok((s.brute.as_ref() != Some(&s.formula)).then(|| u.compact()))
            })
            .collect::<Result<Vec<_>>>()?;
        first_bad(
            &mut rep,
            "subcodes: formula equals enumeration",
            &format!("ex5_8 d={d}"),
            bad,
        );
    }
    Ok(rep)
}

fn render(c: &Criterion) -> String {
    match (c.run)() {
        Ok(rep) => rep.to_string(),
        Err(e) => format!("error: {e}\n"),
    }
}

fn passed(text: &str) -> bool {
    !text.starts_with("error:") && text.lines().all(|l| !l.starts_with("FAIL"))
}

fn in_pool(threads: usize, c: &Criterion) -> String {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(|| render(c))
}

fn main() -> ExitCode {
    let mut ok = true;
    let mut outputs = Vec::new();
    let mut total = Duration::ZERO;
    for c in &CRITERIA {
        let start = Instant::now();
        let text = render(c);
        let took = start.elapsed();
        total += took;
        let pass = passed(&text) && took <= c.limit;
        if !pass {
            eprint!("{text}");
            if took > c.limit {
                eprintln!("runtime {:.2} s exceeds {} s", took.as_secs_f64(), c.limit.as_secs());
            }
        }
        ok &= pass;
        println!(
            "{} criterion {:>2}: {} ({:.2} s, limit {} s)",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            took.as_secs_f64(),
            c.limit.as_secs()
        );
        outputs.push(text);
    }

    let start = Instant::now();
    let mut diverged = Vec::new();
    for (c, first) in CRITERIA.iter().zip(&outputs) {
        for threads in [1, THREADS] {
            if in_pool(threads, c) != *first {
                diverged.push(format!("criterion {} at {threads} threads", c.id));
            }
        }
    }
    let pass = diverged.is_empty();
    for d in &diverged {
        eprintln!("output differs: {d}");
    }
    ok &= pass;
    println!(
        "{} criterion 10: byte-identical output at 1 and {THREADS} threads ({:.2} s, no limit)",
        if pass { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    println!("criteria 1-9 ran in {:.2} s", total.as_secs_f64());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
