use serde_json::{json, Value};

use qcrit_core::crit::{bounds_and_family, crit, crit_oracle, verify_witness, CritValue};
use qcrit_core::fixtures::{self, TABLE1};
use qcrit_core::gf::Mat;
use qcrit_core::qpm::QPolymatroid;
use qcrit_core::rcode::Code;

use crate::{CliError, Output, Section};

struct Rows {
    text: String,
    json: Vec<Value>,
    failed: bool,
}

impl Rows {
    fn push(&mut self, section: &str, item: &str, expected: &str, computed: &str) {
        let ok = expected == computed;
        self.failed |= !ok;
        self.text.push_str(&format!(
            "{} {item}: expected {expected}, computed {computed}\n",
            if ok { "PASS" } else { "FAIL" }
        ));
        self.json.push(json!({
            "section": section,
            "item": item,
            "expected": expected,
            "computed": computed,
            "pass": ok,
        }));
    }
}

fn appendix(rows: &mut Rows) -> Result<(), CliError> {
    for row in &TABLE1 {
        let b = bounds_and_family(&row.code()?)?;
        let item = format!("{} {}", row.name, row.params);
        rows.push(
            "appendix",
            &format!("{item} ceil(n/m)"),
            &row.bound.to_string(),
            &b.lower.to_string(),
        );
        rows.push(
            "appendix",
            &format!("{item} crit"),
            &row.crit.to_string(),
            &b.crit.to_string(),
        );
    }
    Ok(())
}

fn examples(rows: &mut Rows) -> Result<(), CliError> {
    let (w, _) = fixtures::ex3_7();
    let lat = w.lattice().clone();
    let sp = |v: &[&[u32]]| lat.span(&v.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    rows.push(
        "examples",
        "ex3_7 P(M)",
        "z^5 - 2*z^3 - 5*z^2 + 6*z",
        &w.char_poly_direct()?.to_string(),
    );
    let h = sp(&[&[1, 0, 0], &[0, 1, 0]]);
    rows.push(
        "examples",
        "ex3_7 P(M|<100,010>)",
        "z^5 - z^3 - 2*z^2 + 2",
        &w.restriction(&h)?.char_poly_direct()?.to_string(),
    );
    let contractions: [(&[u32], &str); 4] = [
        (&[1, 1, 1], "z^3 - 2*z + 1"),
        (&[0, 1, 1], "z^2 - z"),
        (&[1, 0, 1], "z^2 - z"),
        (&[0, 0, 1], "z^2 - 2*z + 1"),
    ];
    for (v, want) in contractions {
        let y = sp(&[v]);
        let got = w.contraction(&y)?.char_poly_direct()?.to_string();
        rows.push("examples", &format!("ex3_7 P(M/<{}>)", y.compact()), want, &got);
    }

    let c = Code::Matrix(fixtures::ex4_3());
    let m = QPolymatroid::from_code(&c);
    let p = m.char_poly()?;
    rows.push(
        "examples",
        "ex4_3 P(M)",
        "z^6 - 4*z^4 - 25*z^3 + 44*z^2 + 40*z - 56",
        &p.to_string(),
    );
    for (z, want) in [(1, "0"), (2, "0"), (4, "2280")] {
        rows.push("examples", &format!("ex4_3 P(M;{z})"), want, &p.eval_i64(z).to_string());
    }
    rows.push("examples", "ex4_3 crit", "2", &crit(&m)?.value.to_string());

    let c = Code::Matrix(fixtures::ex5_8());
    let weights: Vec<String> = c.weight_distribution()?.iter().map(u64::to_string).collect();
    rows.push("examples", "ex5_8 weights", "1 0 15 0", &weights.join(" "));
    rows.push(
        "examples",
        "ex5_8 crit",
        "2",
        &crit(&QPolymatroid::from_code(&c))?.value.to_string(),
    );

    let c = Code::Matrix(fixtures::ex5_9());
    rows.push(
        "examples",
        "ex5_9 crit by subcode search",
        "2",
        &crit_oracle(&c, None)?.value.to_string(),
    );
    let x1 = Mat::from_rows(&[vec![1, 0], vec![0, 0], vec![0, 1], vec![0, 1]]);
    let x2 = Mat::from_rows(&[vec![0, 1], vec![1, 0], vec![1, 0], vec![0, 1]]);
    let ok = verify_witness(&c, 2, &[x1, x2]);
    rows.push(
        "examples",
        "ex5_9 witnesses X1, X2",
        "valid",
        if ok { "valid" } else { "invalid" },
    );
    let value = crit(&QPolymatroid::from_code(&c))?.value;
    rows.push(
        "examples",
        "ex5_9 crit",
        &CritValue::Finite(2).to_string(),
        &value.to_string(),
    );
    Ok(())
}

pub fn table(section: Section) -> Result<Output, CliError> {
    let mut rows = Rows {
        text: String::new(),
        json: Vec::new(),
        failed: false,
    };
    if matches!(section, Section::Appendix | Section::All) {
        appendix(&mut rows)?;
    }
    if matches!(section, Section::Examples | Section::All) {
        examples(&mut rows)?;
    }
    Ok(Output {
        text: rows.text,
        json: Value::Array(rows.json),
        failed: rows.failed,
    })
}
