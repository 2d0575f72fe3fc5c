use std::fs;

use serde_json::{json, Value};

use qcrit_core::crit::{
    self, bounds_and_family, check_critical_inequalities, count_tuples_brute, count_tuples_formula, crit_oracle,
    crit_via_hyperplanes, crit_weighted, CritValue, Witness,
};
use qcrit_core::gf::Mat;
use qcrit_core::lattice::{BooleanLattice, Lattice};
use qcrit_core::poly::IntPoly;
use qcrit_core::qpm::{compare_ranks, QPolymatroid};
use qcrit_core::rcode::{write_code, Code};
use qcrit_core::report::{Outcome, Report};
use qcrit_core::wlat::{check_identities, IdentityOptions, LoadedWlat, WeightedLattice};
use qcrit_core::Error;

use crate::input::{self, Input};
use crate::{CliError, Ctx, Output, Suite};

/// What a verb works on.
enum Subject {
    /// A subspace-lattice polymatroid, with its code when it came from one.
    Poly(QPolymatroid, Option<Code>),
    Boolean(WeightedLattice<BooleanLattice>, u64),
}

fn subject(ctx: &Ctx, src: &str) -> Result<Subject, CliError> {
    let capped = |m: QPolymatroid| match ctx.cap {
        Some(c) => m.with_cap(c),
        None => m,
    };
    Ok(match input::load(src, ctx.cap)? {
        Input::Code(c) => Subject::Poly(capped(QPolymatroid::from_code(&c)), Some(c)),
        Input::Wlat(LoadedWlat::Subspace(w, r)) => Subject::Poly(capped(QPolymatroid::from_weighted(&w, r)), None),
        Input::Wlat(LoadedWlat::Boolean(w, r)) => {
            let w = match ctx.cap {
                Some(c) => w.with_lattice(w.lattice().clone().with_cap(c)),
                None => w,
            };
            Subject::Boolean(w, r)
        }
    })
}

fn boolean_unsupported(what: &str) -> CliError {
    CliError::Usage(format!("{what} needs a subspace lattice, got a Boolean one"))
}

pub fn poly_json(p: &IntPoly) -> Value {
    json!({
        "text": p.to_string(),
        "coefficients": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

pub fn crit_json(v: CritValue) -> Value {
    match v {
        CritValue::Finite(t) => json!(t),
        CritValue::Infinity => json!("infinity"),
    }
}

pub fn report_json(rep: &Report) -> Value {
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|c| match &c.outcome {
            Outcome::Pass => json!({"name": c.name, "params": c.params, "status": "pass"}),
            Outcome::Fail { lhs, rhs } => {
                json!({"name": c.name, "params": c.params, "status": "fail", "lhs": lhs, "rhs": rhs})
            }
            Outcome::Skip(why) => json!({"name": c.name, "params": c.params, "status": "skip", "reason": why}),
        })
        .collect();
    json!({
        "title": rep.title,
        "checks": checks,
        "passed": rep.passed(),
    })
}

fn rank_rows<L: Lattice>(w: &WeightedLattice<L>) -> Result<Vec<(usize, String, u64)>, CliError> {
    let l = w.lattice();
    Ok(w.interval()
        .enumerate(None)?
        .iter()
        .map(|x| (l.height(x), l.render(x), w.f(x)))
        .collect())
}

pub fn charpoly(ctx: &Ctx, src: &str, ranks: bool) -> Result<Output, CliError> {
    let (p, rows) = match subject(ctx, src)? {
        Subject::Poly(m, _) => (m.char_poly()?, if ranks { rank_rows(m.weighted())? } else { vec![] }),
        Subject::Boolean(w, _) => (w.char_poly_direct()?, if ranks { rank_rows(&w)? } else { vec![] }),
    };
    let mut text = String::new();
    for (d, b, r) in &rows {
        text.push_str(&format!("{d}\t{b}\t{r}\n"));
    }
    text.push_str(&format!("{p}\n"));
    let mut j = json!({ "polynomial": poly_json(&p) });
    if ranks {
        j["ranks"] = rows
            .iter()
            .map(|(d, b, r)| json!({"dim": d, "basis": b, "rank": r}))
            .collect();
    }
    Ok(Output {
        text,
        json: j,
        failed: false,
    })
}

fn word_rows(w: &Mat) -> String {
    w.row_vecs()
        .iter()
        .map(|r| r.iter().map(u32::to_string).collect::<String>())
        .collect::<Vec<_>>()
        .join(";")
}

pub fn crit(ctx: &Ctx, src: &str, witness: bool) -> Result<Output, CliError> {
    let (m, code) = match subject(ctx, src)? {
        Subject::Poly(m, code) => (m, code),
        Subject::Boolean(..) => return Err(boolean_unsupported("the critical exponent")),
    };
    let value = match &code {
        Some(_) => crit::crit(&m)?.value,
        None => crit_weighted(m.weighted(), m.base())?,
    };
    let mut text = format!("{value}\n");
    let mut j = json!({ "crit": crit_json(value), "method": "formula" });
    if witness {
        let code = code.ok_or_else(|| CliError::Usage("witnesses need a code".into()))?;
        let o = crit_oracle(&code, None)?;
        if o.value != value {
            return Err(
                Error::Internal(format!("subcode search gave {} but the formula gave {value}", o.value)).into(),
            );
        }
        let mut words = Vec::new();
        if let Some(Witness::Words(ws)) = &o.witnesses {
            let f = code.base_field();
            for (i, w) in ws.iter().enumerate() {
                let supp = w.colspace(f).compact();
                text.push_str(&format!("witness {}: support {supp} word {}\n", i + 1, word_rows(w)));
                words.push(json!({"support": supp, "word": word_rows(w)}));
            }
        } else {
            text.push_str("no witness: the code is degenerate\n");
        }
        j["witnesses"] = Value::Array(words);
        if let (Code::Vector(v), CritValue::Finite(_)) = (&code, value) {
            let h = crit_via_hyperplanes(v)?;
            if h.value != value {
                return Err(Error::Internal(format!(
                    "hyperplane search gave {} but the formula gave {value}",
                    h.value
                ))
                .into());
            }
            let mut normals = Vec::new();
            if let Some(Witness::Hyperplanes(hs)) = &h.witnesses {
                for (i, n) in hs.iter().enumerate() {
                    let s = n.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
                    text.push_str(&format!("hyperplane {}: normal {s}\n", i + 1));
                    normals.push(json!(n));
                }
            }
            j["hyperplanes"] = Value::Array(normals);
        }
    }
    Ok(Output {
        text,
        json: j,
        failed: false,
    })
}

pub fn weights(ctx: &Ctx, src: &str) -> Result<Output, CliError> {
    let code = input::load_code(src, ctx.cap)?;
    let w = code.weight_distribution()?;
    let mut m = QPolymatroid::from_code(&code);
    if let Some(c) = ctx.cap {
        m = m.with_cap(c);
    }
    let a = m.weight_enumerator()?;
    let base = m.base() as i64;
    let mut text = format!("i\tW_i\tA_i({base})\tA_i(z)\n");
    let mut rows = Vec::new();
    let mut failed = false;
    for (i, wi) in w.iter().enumerate() {
        let ai = a.get(i).cloned().unwrap_or_else(IntPoly::zero);
        let v = ai.eval_i64(base);
        let ok = v == (*wi).into();
        failed |= !ok;
        text.push_str(&format!("{i}\t{wi}\t{v}{}\t{ai}\n", if ok { "" } else { " MISMATCH" }));
        rows.push(
            json!({"i": i, "count": wi, "enumerator": poly_json(&ai), "enumerator_value": v.to_string(), "match": ok}),
        );
    }
    Ok(Output {
        text,
        json: json!({ "base": base, "weights": rows }),
        failed,
    })
}

pub fn classify(ctx: &Ctx, src: &str) -> Result<Output, CliError> {
    let cl = input::load_code(src, ctx.cap)?.classify()?;
    Ok(Output {
        text: cl.to_string(),
        json: json!({
            "n": cl.n, "m": cl.m, "k": cl.k, "d": cl.d, "dual_d": cl.dual_d,
            "singleton_defect": cl.singleton_defect,
            "mrd": cl.mrd, "qmrd": cl.qmrd, "dqmrd": cl.dqmrd, "one_bmd": cl.one_bmd,
        }),
        failed: false,
    })
}

fn emit_code(code: &Code, output: Option<&str>) -> Result<Output, CliError> {
    let text = write_code(code);
    if let Some(path) = output {
        fs::write(path, &text).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
        return Ok(Output {
            text: String::new(),
            json: json!({ "written": path }),
            failed: false,
        });
    }
    Ok(Output {
        json: json!({ "code": text }),
        text,
        failed: false,
    })
}

pub fn dual(ctx: &Ctx, src: &str, output: Option<&str>) -> Result<Output, CliError> {
    emit_code(&input::load_code(src, ctx.cap)?.dual(), output)
}

pub fn puncture(
    ctx: &Ctx,
    src: &str,
    drop: &[usize],
    matrix: Option<&str>,
    output: Option<&str>,
) -> Result<Output, CliError> {
    let code = input::load_code(src, ctx.cap)?;
    let n = code.n();
    let a = match matrix {
        Some(path) => {
            let rows = input::read_rows(path, n, code.q())?;
            if rows.len() != n {
                return Err(Error::DimensionMismatch(format!("matrix has {} rows, expected {n}", rows.len())).into());
            }
            Mat::from_rows(&rows)
        }
        None => Mat::identity(n),
    };
    emit_code(&code.puncture(&a, drop)?, output)
}

pub fn count(ctx: &Ctx, src: &str, t: u32, support: &str) -> Result<Output, CliError> {
    let code = input::load_code(src, ctx.cap)?;
    let mut m = QPolymatroid::from_code(&code);
    if let Some(c) = ctx.cap {
        m = m.with_cap(c);
    }
    let lat = m.lattice().clone();
    let u = match support {
        "full" => lat.top(),
        path => input::read_subspace(path, &lat)?,
    };
    let formula = count_tuples_formula(&m, t, &u)?;
    let brute = match count_tuples_brute(&code, t, &u) {
        Ok(b) => Some(b),
        Err(Error::ResourceLimit { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let failed = brute.as_ref().is_some_and(|b| *b != formula);
    let mut text = format!("support: {}\nt: {t}\nformula: {formula}\n", u.compact());
    match &brute {
        Some(b) => text.push_str(&format!("brute: {b}\n")),
        None => text.push_str("brute: skipped (over the enumeration cap)\n"),
    }
    Ok(Output {
        text,
        json: json!({
            "support": u.compact(),
            "t": t,
            "formula": formula.to_string(),
            "brute": brute.map(|b| b.to_string()),
        }),
        failed,
    })
}

fn canonical(code: &Code) -> String {
    let mc = code.to_matrix_code();
    mc.flattened().rowspace(mc.field()).compact()
}

pub fn verify(ctx: &Ctx, src: &str, suite: Suite) -> Result<Output, CliError> {
    let rep = match (subject(ctx, src)?, suite) {
        (Subject::Poly(m, _), Suite::Section3) => {
            let opts = IdentityOptions {
                r: Some(m.r()),
                ..Default::default()
            };
            check_identities(m.weighted(), &opts)?
        }
        (Subject::Boolean(w, r), Suite::Section3) => {
            let opts = IdentityOptions {
                r: Some(r),
                ..Default::default()
            };
            check_identities(&w, &opts)?
        }
        (Subject::Poly(m, code), Suite::Critical) => {
            let mut rep = match &code {
                Some(c) => bounds_and_family(c)?.report,
                None => Report::new("bounds and families"),
            };
            rep.extend(check_critical_inequalities(&m)?);
            rep
        }
        (Subject::Poly(m, code), Suite::Duality) => {
            let d = m.dual()?;
            let mut rep = Report::new("duality");
            if let Some(c) = &code {
                let dc = c.dual();
                rep.extend(compare_ranks(
                    "dual polymatroid is the dual code's",
                    &d,
                    &QPolymatroid::from_code(&dc),
                )?);
                rep.compare(
                    "dual of dual has the same canonical basis",
                    "",
                    &canonical(&dc.dual()),
                    &canonical(c),
                );
            }
            rep.extend(compare_ranks("dual is an involution", &d.dual()?, &m)?);
            rep
        }
        (Subject::Poly(m, _), Suite::Axioms) => m.validate_axioms(ctx.validation)?,
        (Subject::Boolean(..), _) => return Err(boolean_unsupported("this suite")),
    };
    Ok(Output {
        text: rep.to_string(),
        json: report_json(&rep),
        failed: !rep.passed(),
    })
}
