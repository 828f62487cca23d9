use std::fmt::Write as _;
use std::path::Path;

use itertools::Itertools;
use serde_json::json;
use srkit_core::actions::{canonical_form, orbit as orbit_of, Generators};
use srkit_core::bounds::{field_size_bound, parse_range};
use srkit_core::code::{
    column_distance, column_distance_dual, column_distance_parity, extract_mdp, mdp_certify, CodeParams,
    DistanceMethod,
};
use srkit_core::io::{self, MatrixJson};
use srkit_core::pascal::{pascal_min_prime, pascal_mod_p};
use srkit_core::search::{
    self, min_field_size, test_conjecture, verify_hit, ConjectureOutcome, FieldFamily, Normalization, SearchConfig,
    SearchMode,
};
use srkit_core::toeplitz::{certificate, is_superregular};
use srkit_core::{Error, Gf, LtToeplitz};

use crate::report::{Outcome, OutputFile, Status};
use crate::{
    BoundArgs, CertifyArgs, CheckArgs, ColdistArgs, ConjectureArgs, ConstructArgs, FamilyArg, MethodArg,
    MinfieldArgs, NormArg, OrbitArgs, PascalArgs, SearchArgs,
};

type Result<T> = std::result::Result<T, Error>;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))
}

fn matrix_file(path: &Option<std::path::PathBuf>, a: &LtToeplitz) -> Option<OutputFile> {
    path.as_ref().map(|p| OutputFile::matrix(p.clone(), io::write_srm(a)))
}

fn certificate_text(a: &LtToeplitz) -> String {
    let gf = a.field();
    certificate(a)
        .into_iter()
        .map(|(idx, d)| {
            format!("# s={} I={} J={} det={}\n", idx.size(), idx.rows.iter().join(","), idx.cols.iter().join(","), gf.format(d))
        })
        .collect()
}

pub fn check(a: &CheckArgs) -> Result<Outcome> {
    let m = io::read_srm(&read(&a.input)?)?;
    let res = is_superregular(&m);
    let mut text = String::new();
    if a.certificate {
        text.push_str(&certificate_text(&m));
    }
    let fail = res.witness.as_ref().map(|w| w.fail_line());
    match &fail {
        None => text.push_str("superregular\n"),
        Some(line) => writeln!(text, "not superregular\n{line}").unwrap(),
    }
    let result = json!({
        "superregular": res.superregular,
        "witness": fail,
        "dimension": m.dim(),
        "field": m.field().header(),
    });
    let (status, label) =
        if res.superregular { (Status::Ok, "superregular") } else { (Status::VerifiedFalse, "not-superregular") };
    Ok(Outcome::new(status, label, text, result))
}

pub fn search(a: &SearchArgs, threads: usize) -> Result<Outcome> {
    let gf = Gf::shared(a.q)?;
    let mode = if a.count {
        SearchMode::CountAll
    } else if a.enumerate {
        SearchMode::EnumerateAll
    } else {
        SearchMode::FindFirst
    };
    let norm = match (a.normalize, mode) {
        (Some(NormArg::None), _) => Normalization::None,
        (Some(NormArg::A0), _) => Normalization::A0,
        (Some(NormArg::A0a1), _) => Normalization::A0A1,
        (None, SearchMode::FindFirst) => Normalization::A0A1,
        (None, _) => Normalization::None,
    };
    let cfg = SearchConfig::new(gf.clone(), a.gamma)
        .mode(mode)
        .normalization(norm)
        .budget(a.budget.duration()?)
        .threads(threads);
    let out = search::run(&cfg)?;
    let base = json!({ "gamma": a.gamma, "q": a.q, "nodes_visited": out.nodes_visited });
    let mut result = base.as_object().cloned().expect("object literal");
    let outcome = match mode {
        SearchMode::FindFirst => {
            result.insert("found".into(), json!(out.found.is_some()));
            result.insert("witness".into(), json!(out.found.as_ref().map(MatrixJson::of)));
            match &out.found {
                Some(w) => {
                    assert!(verify_hit(w), "search hit failed the full check");
                    let text = format!("{}# found; nodes visited: {}\n", io::write_srm(w), out.nodes_visited);
                    Outcome::new(Status::Ok, "found", text, result.into()).file(matrix_file(&a.out, w))
                }
                None => {
                    let text = format!("not found (exhaustive; nodes visited: {})\n", out.nodes_visited);
                    Outcome::new(Status::VerifiedFalse, "not-found", text, result.into())
                }
            }
        }
        SearchMode::CountAll => {
            let count = out.count.unwrap_or(0);
            result.insert("count".into(), json!(count.to_string()));
            Outcome::new(Status::Ok, "counted", format!("count={count}\n"), result.into())
        }
        SearchMode::EnumerateAll => {
            let mut text = format!("{}\n", gf.header());
            for m in &out.all {
                writeln!(text, "col: {}", m.format_col()).unwrap();
            }
            writeln!(text, "# {} matrices", out.all.len()).unwrap();
            result.insert("count".into(), json!(out.all.len().to_string()));
            result.insert("matrices".into(), json!(out.all.iter().map(|m| m.format_col()).collect::<Vec<_>>()));
            Outcome::new(Status::Ok, "enumerated", text, result.into())
        }
    };
    Ok(outcome.nodes(out.nodes_visited))
}

pub fn minfield(a: &MinfieldArgs, threads: usize) -> Result<Outcome> {
    let family = match a.family {
        FamilyArg::Primes => FieldFamily::Primes,
        FamilyArg::PrimePowers => FieldFamily::PrimePowers,
    };
    let r = min_field_size(a.gamma, family, a.cap, a.budget.duration()?, threads)?;
    assert!(verify_hit(&r.witness), "search hit failed the full check");
    let empty = r.proven_empty.iter().map(|(q, n)| format!("{q} ({n} nodes)")).join(", ");
    let text = format!("q={}\n# proven empty: {}\n{}", r.q, empty, io::write_srm(&r.witness));
    let result = json!({
        "gamma": a.gamma,
        "q": r.q,
        "found": true,
        "witness": MatrixJson::of(&r.witness),
        "proven_empty": r.proven_empty.iter().map(|(q, n)| json!({ "q": q, "nodes_visited": n })).collect::<Vec<_>>(),
        "nodes_visited": r.nodes_visited,
    });
    Ok(Outcome::new(Status::Ok, "found", text, result)
        .nodes(r.nodes_visited)
        .file(matrix_file(&a.out, &r.witness)))
}

pub fn conjecture(a: &ConjectureArgs, threads: usize) -> Result<Outcome> {
    let r = test_conjecture(a.gamma, a.budget.duration()?, threads)?;
    let head = json!({ "gamma": a.gamma, "q": r.q, "nodes_visited": r.nodes_visited });
    let mut result = head.as_object().cloned().expect("object literal");
    let out = match &r.outcome {
        ConjectureOutcome::Witness(w) => {
            assert!(verify_hit(w), "search hit failed the full check");
            result.insert("found".into(), json!(true));
            result.insert("witness".into(), json!(MatrixJson::of(w)));
            let text = format!("witness over GF({})\n{}", r.q, io::write_srm(w));
            Outcome::new(Status::Ok, "witness", text, result.into()).file(matrix_file(&a.out, w))
        }
        ConjectureOutcome::RefutedByExhaustion => {
            result.insert("found".into(), json!(false));
            let text = format!("refuted by exhaustion over GF({}) ({} nodes)\n", r.q, r.nodes_visited);
            Outcome::new(Status::VerifiedFalse, "refuted-by-exhaustion", text, result.into())
        }
        ConjectureOutcome::BudgetExceeded { deepest_level } => {
            result.insert("deepest_level".into(), json!(deepest_level));
            let text = format!("budget exceeded over GF({}) (deepest level {deepest_level})\n", r.q);
            Outcome::new(Status::Error, "budget-exceeded", text, result.into())
        }
    };
    Ok(out.nodes(r.nodes_visited))
}

pub fn orbit(a: &OrbitArgs) -> Result<Outcome> {
    let m = io::read_srm(&read(&a.input)?)?;
    let gens = Generators::parse(&a.gens)?;
    if a.canonical {
        let c = canonical_form(&m, gens);
        let result = json!({ "canonical": MatrixJson::of(&c) });
        return Ok(Outcome::new(Status::Ok, "canonical", io::write_srm(&c), result).file(matrix_file(&a.out, &c)));
    }
    let elems = orbit_of(&m, gens);
    let mut text = format!("{}\n", m.field().header());
    for e in &elems {
        writeln!(text, "# {}\ncol: {}", e.format_word(), e.matrix.format_col()).unwrap();
    }
    writeln!(text, "# orbit size {}", elems.len()).unwrap();
    let result = json!({
        "size": elems.len(),
        "elements": elems.iter().map(|e| json!({ "col": e.matrix.format_col(), "word": e.format_word() })).collect::<Vec<_>>(),
    });
    Ok(Outcome::new(Status::Ok, "orbit", text, result))
}

pub fn bound(a: &BoundArgs) -> Result<Outcome> {
    match (&a.gamma, &a.table) {
        (Some(g), _) => {
            let r = field_size_bound(*g)?;
            let text = format!(
                "gamma={}\n|L|={}\n|L'|={}\nN={}\nbound={}\n",
                r.gamma, r.l_count, r.lprime_count, r.n, r.bound
            );
            Ok(Outcome::new(Status::Ok, "bound", text, serde_json::to_value(&r).expect("report serializes")))
        }
        (None, Some(range)) => {
            let reports = parse_range(range)?.map(field_size_bound).collect::<Result<Vec<_>>>()?;
            let mut text = String::from("gamma bound\n");
            for r in &reports {
                writeln!(text, "{} {}", r.gamma, r.bound).unwrap();
            }
            let rows = serde_json::to_value(&reports).expect("report serializes");
            Ok(Outcome::new(Status::Ok, "table", text, json!({ "rows": rows })))
        }
        (None, None) => Err(Error::InvalidConfig("give --gamma or --table".into())),
    }
}

pub fn construct_mdp(a: &ConstructArgs) -> Result<Outcome> {
    let t = io::read_srm(&read(&a.input)?)?;
    let params = CodeParams::new(a.n, a.k, a.delta)?;
    let j = a.j.unwrap_or_else(|| params.l());
    let c = extract_mdp(&t, params, j, !a.unchecked)?;
    let gf = t.field();
    let dense = io::write_dense(gf, &c.assembled);
    let verdict = if c.max_span.holds { "holds" } else { "fails" };
    let text = format!("{dense}# maximum span property: {verdict}\n");
    let result = json!({
        "j": j,
        "rows": c.assembled.rows(),
        "cols": c.assembled.cols(),
        "row_indices": c.row_indices,
        "col_indices": c.col_indices,
        "assembled": c.assembled.format(gf).lines().collect::<Vec<_>>(),
        "max_span": c.max_span,
    });
    let (status, label) = if c.max_span.holds { (Status::Ok, "constructed") } else { (Status::VerifiedFalse, "max-span-fails") };
    let file = a.out.as_ref().map(|p| OutputFile::dense(p.clone(), dense));
    Ok(Outcome::new(status, label, text, result).file(file))
}

pub fn coldist(a: &ColdistArgs) -> Result<Outcome> {
    let (gf, p) = io::read_pm(&read(&a.input)?)?;
    let (d, method) = if a.parity {
        (column_distance_parity(&gf, &p, a.j), "parity")
    } else {
        match a.method {
            MethodArg::Generator => (column_distance(&gf, &p, a.j, a.enum_budget)?, "generator"),
            MethodArg::Dual => (column_distance_dual(&gf, &p, a.j)?, "dual"),
            MethodArg::Auto => match column_distance(&gf, &p, a.j, a.enum_budget) {
                Ok(d) => (d, "generator"),
                Err(Error::BudgetExceeded { .. }) => (column_distance_dual(&gf, &p, a.j)?, "dual"),
                Err(e) => return Err(e),
            },
        }
    };
    let text = format!("d_{}={d} ({method})\n", a.j);
    Ok(Outcome::new(Status::Ok, "distance", text, json!({ "j": a.j, "distance": d, "method": method })))
}

pub fn certify(a: &CertifyArgs) -> Result<Outcome> {
    let (gf, g) = io::read_pm(&read(&a.input)?)?;
    let params = CodeParams::new(a.n, a.k, a.delta)?;
    let r = mdp_certify(&gf, &g, params, a.enum_budget)?;
    let degrees = r.column_degrees.iter().map(|d| d.map_or("-".into(), |d| d.to_string())).join(",");
    let complexity = r.actual_complexity.map_or("-".into(), |c| c.to_string());
    let mut text = format!(
        "profile: {}\nbounds: {}\nL={} method={} complexity={} column-degrees={}\n",
        r.profile.iter().join(" "),
        r.bounds.iter().join(" "),
        r.l,
        match r.method {
            DistanceMethod::Generator => "generator",
            DistanceMethod::Dual => "dual",
        },
        complexity,
        degrees,
    );
    if r.actual_complexity != Some(params.delta) {
        writeln!(text, "# warning: generator complexity {complexity} differs from delta={}", params.delta).unwrap();
    }
    text.push_str(if r.mdp { "MDP\n" } else { "not MDP\n" });
    let mut result = serde_json::to_value(&r).expect("report serializes");
    result["complexity_matches_delta"] = json!(r.actual_complexity == Some(params.delta));
    let (status, label) = if r.mdp { (Status::Ok, "mdp") } else { (Status::VerifiedFalse, "not-mdp") };
    Ok(Outcome::new(status, label, text, result))
}

pub fn pascal(a: &PascalArgs) -> Result<Outcome> {
    let (m, p, failed) = match a.prime {
        Some(p) => (pascal_mod_p(a.gamma, p)?, p, None),
        None => {
            let r = pascal_min_prime(a.gamma, a.cap)?;
            (r.matrix, r.p, Some(r.failed))
        }
    };
    let check = is_superregular(&m);
    let mut text = String::new();
    if let Some(f) = &failed {
        writeln!(text, "p={p}\n# failed: {}", f.iter().join(" ")).unwrap();
    }
    text.push_str(&io::write_srm(&m));
    if a.certificate {
        text.push_str(&certificate_text(&m));
    }
    match &check.witness {
        None => text.push_str("# superregular\n"),
        Some(w) => writeln!(text, "# not superregular\n# {}", w.fail_line()).unwrap(),
    }
    let result = json!({
        "gamma": a.gamma,
        "p": p,
        "failed": failed,
        "matrix": MatrixJson::of(&m),
        "superregular": check.superregular,
        "witness": check.witness.map(|w| w.fail_line()),
    });
    let (status, label) =
        if check.superregular { (Status::Ok, "superregular") } else { (Status::VerifiedFalse, "not-superregular") };
    Ok(Outcome::new(status, label, text, result).file(matrix_file(&a.out, &m)))
}
