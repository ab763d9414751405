use std::fmt::{Display, Write as _};
use std::str::FromStr;

use nccr_core::acceptance;
use nccr_core::bwb::cohomology;
use nccr_core::cohengine::{nccr_rank, tilting_check, Family, FamilyName};
use nccr_core::kfunctor::{
    flop_flop_check, kn0_image_table, kn_matrix, ptwist_ledger_check, Direction, ShiftedObject,
};
use nccr_core::linalg::bigint_to_field;
use nccr_core::mutation::{endpoint_algebra_check, hilbert_of_label, orbit_check};
use nccr_core::quiveralg::{compare_with_nccr, dimension_table, Quiver};
use nccr_core::repmoduli::{
    check_relations, generated_by, is_simple, rep_from_triple, sample_triples, to_point, RelationCheck, RepTriple,
};
use nccr_core::{Field, Gf, ZMatrix, Q};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::config::Config;
use crate::error::CliError;
use crate::output::{int_row, obj, Report};
use crate::spec::{parse_bundle, parse_module};

pub fn coh(cfg: &Config, bundle: &str) -> Result<Report, CliError> {
    let n = cfg.n()?;
    let spec = parse_bundle(bundle)?;
    let table = cohomology(&spec.build(n)?);
    let degrees: serde_json::Map<String, Value> =
        table.entries().iter().map(|(q, d)| (q.to_string(), Value::from(*d))).collect();
    let mut pretty = format!("H^*(P^{}, {spec})\n", n - 1);
    if table.is_zero() {
        pretty.push_str("  acyclic\n");
    }
    for (q, d) in table.entries() {
        let _ = writeln!(pretty, "  H^{q} = {d}");
    }
    let rows = table.entries().iter().map(|(q, d)| vec![q.to_string(), d.to_string()]).collect();
    Ok(Report::new(
        "coh",
        "H^q(P^{n-1}, E) by Borel-Weil-Bott on GL(n)/P",
        obj(vec![
            ("n", json!(n)),
            ("bundle", json!(spec.to_string())),
            ("cohomology", Value::Object(degrees)),
            ("euler_characteristic", json!(table.euler_characteristic())),
        ]),
    )
    .table(vec!["degree", "dim"], rows)
    .pretty(pretty))
}

pub fn parse_family(s: &str) -> Result<FamilyName, CliError> {
    Ok(match s.to_ascii_lowercase().as_str() {
        "tk" => FamilyName::Tk,
        "tplus" | "tkplus" => FamilyName::TkPlus,
        "tprime" => FamilyName::TPrime,
        "sk" => FamilyName::Sk,
        "skdual" => FamilyName::SkDual,
        _ => {
            return Err(CliError::Usage(format!(
                "unknown family '{s}' (expected Tk, TPlus, TPrime, Sk or SkDual)"
            )))
        }
    })
}

pub fn tilting(cfg: &Config, family: &str, k: i64) -> Result<Report, CliError> {
    let n = cfg.n()?;
    let family = Family::new(parse_family(family)?, n, k)?;
    let r = tilting_check(&family);
    let summands: Vec<String> = family.summands().into_iter().map(|(s, _)| s).collect();
    let witness = r
        .witness
        .as_ref()
        .map(|w| format!("H^{}({}^* ⊗ {} ⊗ O({})) = {}", w.degree, w.source, w.target, w.twist, w.dim));
    let pretty = format!(
        "{:?} n={n} k={k}: {}\n  summands: {}\n  pairs checked: {}, twists up to {}\n{}",
        family.name,
        if r.pass { "tilting" } else { "NOT tilting" },
        summands.join(" + "),
        r.pairs_checked,
        r.stabilization_bound,
        witness.as_deref().map(|w| format!("  witness: {w}\n")).unwrap_or_default(),
    );
    let row = vec![
        format!("{:?}", family.name),
        n.to_string(),
        k.to_string(),
        r.pass.to_string(),
        r.stabilization_bound.to_string(),
        r.pairs_checked.to_string(),
        witness.clone().unwrap_or_default(),
    ];
    Ok(Report::new(
        "tilting",
        "Ext^{>0}(T, T) = 0 on the resolution, via H^{>0}(P, A^* ⊗ B ⊗ Sym T)",
        obj(vec![
            ("family", json!(format!("{:?}", family.name))),
            ("n", json!(n)),
            ("k", json!(k)),
            ("summands", json!(summands)),
            ("rank", json!(nccr_rank(&family))),
            ("stabilization_bound", json!(r.stabilization_bound)),
            ("pairs_checked", json!(r.pairs_checked)),
            ("witness", json!(witness)),
        ]),
    )
    .with_pass(r.pass)
    .table(
        vec!["family", "n", "k", "pass", "stabilization_bound", "pairs_checked", "witness"],
        vec![row],
    )
    .pretty(pretty))
}

pub fn hilbert(cfg: &Config, module: &str) -> Result<Report, CliError> {
    let n = cfg.n()?;
    let label = parse_module(module)?;
    let dims = hilbert_of_label(label, n, cfg.cap)?;
    let normalized = dims.normalized();
    let rows = dims
        .dims
        .iter()
        .enumerate()
        .map(|(k, d)| vec![k.to_string(), d.to_string()])
        .collect();
    let pretty = format!("{label:?} n={n}: {:?}\n", dims.dims);
    Ok(Report::new(
        "hilbert",
        "dim of the degree-k piece of the module over the trace ring",
        obj(vec![
            ("module", json!(format!("{label:?}"))),
            ("n", json!(n)),
            ("cap", json!(cfg.cap)),
            ("dims", json!(dims.dims)),
            ("normalized", json!(normalized.dims)),
        ]),
    )
    .table(vec!["degree", "dim"], rows)
    .pretty(pretty))
}

pub fn quiver_dims(cfg: &Config) -> Result<Report, CliError> {
    let n = cfg.n()?;
    let q = Quiver::new(n)?;
    let cells = dimension_table(&q, cfg.max_len);
    let rows: Vec<Vec<String>> = cells
        .iter()
        .map(|c| {
            [c.a, c.b, c.len, c.paths, c.relation_rank, c.dim]
                .iter()
                .map(ToString::to_string)
                .collect()
        })
        .collect();
    let mut pretty = format!("e_b (path algebra / relations) e_a, n={n}\n");
    for a in 0..n {
        for b in 0..n {
            let dims: Vec<usize> = cells.iter().filter(|c| c.a == a && c.b == b).map(|c| c.dim).collect();
            let _ = writeln!(pretty, "  {a} -> {b}: {dims:?}");
        }
    }
    Ok(Report::new(
        "quiver",
        "graded pieces of the path algebra of the doubled quiver modulo its relations",
        obj(vec![
            ("n", json!(n)),
            ("max_len", json!(cfg.max_len)),
            ("cells", serde_json::to_value(&cells).expect("serializable")),
        ]),
    )
    .table(vec!["a", "b", "len", "paths", "relation_rank", "dim"], rows)
    .pretty(pretty))
}

pub fn quiver_compare(cfg: &Config) -> Result<Report, CliError> {
    let n = cfg.n()?;
    let r = compare_with_nccr(n, cfg.max_len)?;
    let rows = r
        .cells
        .iter()
        .map(|c| {
            vec![
                c.a.to_string(),
                c.b.to_string(),
                c.len.to_string(),
                c.quiver_dim.to_string(),
                c.nccr_dim.to_string(),
            ]
        })
        .collect();
    let pretty = format!(
        "n={n}, lengths <= {}: {} cells, {} mismatches{}\n",
        cfg.max_len,
        r.cells.len(),
        r.mismatches.len(),
        r.mismatches.first().map(|c| format!(", first {c:?}")).unwrap_or_default()
    );
    Ok(Report::new(
        "quiver",
        "path algebra with relations vs Hom_Y(O(a), O(b)) graded by trace degree",
        obj(vec![
            ("n", json!(n)),
            ("max_len", json!(cfg.max_len)),
            ("cells", serde_json::to_value(&r.cells).expect("serializable")),
            ("mismatches", serde_json::to_value(&r.mismatches).expect("serializable")),
        ]),
    )
    .with_pass(r.pass())
    .table(vec!["a", "b", "len", "quiver_dim", "nccr_dim"], rows)
    .pretty(pretty))
}

fn parse_vector<F: Field>(s: &str, what: &str) -> Result<Vec<F>, CliError> {
    s.split(',')
        .map(|x| {
            let q = Q::from_str(x.trim()).map_err(|_| CliError::Usage(format!("{what}: cannot parse '{x}'")))?;
            let den: F = bigint_to_field(q.denom());
            if den.is_zero() {
                return Err(CliError::Usage(format!("{what}: denominator of {q} vanishes in the field")));
            }
            Ok(bigint_to_field::<F>(q.numer()) / den)
        })
        .collect()
}

fn triple_json<F: Field + Display>(t: &RepTriple<F>) -> (Value, Vec<String>, String) {
    let r = rep_from_triple(t);
    let p = to_point(t);
    let show = |v: &[F]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    let relations = match check_relations(&r) {
        RelationCheck::Pass => json!("pass"),
        RelationCheck::Fail { relation, vertex } => json!({ "relation": relation, "vertex": vertex }),
    };
    let x: Vec<Vec<String>> = (0..p.x.rows()).map(|i| show(p.x.row(i))).collect();
    let simple = is_simple(&r);
    let value = json!({
        "alpha": show(&t.alpha),
        "beta": show(&t.beta),
        "relations": relations,
        "simple": simple,
        "generated_by_0": generated_by(&r, 0),
        "line": show(&p.line),
        "x": x,
        "rank_x": p.rank_x(),
        "x_squared_zero": p.x_squared_is_zero(),
        "image_in_line": p.image_in_line(),
    });
    let row = vec![
        show(&t.alpha).join(" "),
        show(&t.beta).join(" "),
        (check_relations(&r) == RelationCheck::Pass).to_string(),
        simple.to_string(),
        p.rank_x().to_string(),
        p.x_squared_is_zero().to_string(),
    ];
    let pretty = format!(
        "alpha = [{}], beta = [{}]: relations {}, {}, rank X = {}\n",
        row[0],
        row[1],
        if row[2] == "true" { "hold" } else { "FAIL" },
        if simple { "simple" } else { "not simple" },
        row[4]
    );
    (value, row, pretty)
}

const REP_HEADER: [&str; 6] = ["alpha", "beta", "relations_hold", "simple", "rank_x", "x_squared_zero"];

fn rep_with<F: Field + Display>(cfg: &Config, alpha: Option<&str>, beta: Option<&str>, sample: Option<usize>) -> Result<Report, CliError> {
    let triples: Vec<RepTriple<F>> = match (alpha, beta, sample) {
        (Some(a), Some(b), None) => vec![RepTriple::new(parse_vector(a, "alpha")?, parse_vector(b, "beta")?)?],
        (None, None, Some(count)) => sample_triples(cfg.n()?, count, 3, cfg.seed)?,
        _ => return Err(CliError::Usage("give either --alpha and --beta, or --sample".into())),
    };
    let mut values = Vec::new();
    let mut rows = Vec::new();
    let mut pretty = String::new();
    for t in &triples {
        let (v, r, p) = triple_json(t);
        values.push(v);
        rows.push(r);
        pretty.push_str(&p);
    }
    let pass = values.iter().all(|v| v["relations"] == json!("pass"));
    Ok(Report::new(
        "rep",
        "([alpha], X = alpha beta^T) with <beta, alpha> = 0, X^2 = 0, rank X <= 1",
        obj(vec![("seed", json!(cfg.seed)), ("representations", Value::Array(values))]),
    )
    .with_pass(pass)
    .table(REP_HEADER.to_vec(), rows)
    .pretty(pretty))
}

pub fn rep(cfg: &Config, alpha: Option<&str>, beta: Option<&str>, sample: Option<usize>, prime: bool) -> Result<Report, CliError> {
    if prime {
        rep_with::<Gf>(cfg, alpha, beta, sample)
    } else {
        rep_with::<Q>(cfg, alpha, beta, sample)
    }
}

fn matrix_rows(m: &ZMatrix) -> Vec<Vec<BigInt>> {
    m.to_rows()
}

fn matrix_pretty(m: &ZMatrix) -> String {
    matrix_rows(m)
        .iter()
        .map(|r| format!("  [{}]\n", r.iter().map(|x| format!("{x:>4}")).collect::<Vec<_>>().join(" ")))
        .collect()
}

fn matrix_csv(m: &ZMatrix) -> Vec<Vec<String>> {
    matrix_rows(m)
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, x)| vec![i.to_string(), j.to_string(), x.to_string()]))
        .collect()
}

pub fn kflop_matrix(cfg: &Config, k: i64, prime: bool) -> Result<Report, CliError> {
    let n = cfg.n()?;
    let dir = if prime { Direction::KnPrime } else { Direction::Kn };
    let m = kn_matrix(k, n, dir)?;
    let name = if prime { "KN'" } else { "KN" };
    Ok(Report::new(
        "kflop",
        "K_0 action of the flop functor in the window bases [O(0)], ..., [O(n-1)]",
        obj(vec![
            ("n", json!(n)),
            ("k", json!(k)),
            ("functor", json!(name)),
            ("matrix", Value::Array(matrix_rows(&m).iter().map(|r| int_row(r)).collect())),
        ]),
    )
    .table(vec!["row", "col", "entry"], matrix_csv(&m))
    .pretty(format!("{name}_{k} on K_0, n={n}\n{}", matrix_pretty(&m))))
}

pub fn kflop_flopflop(cfg: &Config, k: i64) -> Result<Report, CliError> {
    let n = cfg.n()?;
    let r = flop_flop_check(k, n)?;
    Ok(Report::new(
        "kflop",
        "KN'_{-k} KN_{n+k} = id on K_0(Y)",
        obj(vec![
            ("n", json!(n)),
            ("k", json!(k)),
            ("product", Value::Array(matrix_rows(&r.product).iter().map(|r| int_row(r)).collect())),
            ("is_identity", json!(r.is_identity)),
        ]),
    )
    .with_pass(r.is_identity)
    .table(vec!["row", "col", "entry"], matrix_csv(&r.product))
    .pretty(format!(
        "KN'_{} KN_{} on K_0, n={n}: {}\n{}",
        -k,
        n as i64 + k,
        if r.is_identity { "identity" } else { "NOT identity" },
        matrix_pretty(&r.product)
    )))
}

pub fn kflop_ledger(cfg: &Config) -> Result<Report, CliError> {
    let n = cfg.n()?;
    let r = ptwist_ledger_check(n)?;
    let rows = r
        .steps
        .iter()
        .map(|s| vec![s.name.clone(), s.expected.clone(), s.computed.clone(), s.pass.to_string()])
        .collect();
    let mut pretty = format!("P-twist ledger, n={n}\n");
    for s in &r.steps {
        let _ = writeln!(
            pretty,
            "  [{}] {}: {}",
            if s.pass { "ok" } else { "FAIL" },
            s.name,
            s.computed
        );
    }
    Ok(Report::new(
        "kflop",
        "P_{-1}(F) = O_Y(-1) for F the image of O_{Y+}(1); RHom dimensions and K_0 classes",
        obj(vec![
            ("n", json!(n)),
            ("steps", serde_json::to_value(&r.steps).expect("serializable")),
        ]),
    )
    .with_pass(r.pass)
    .table(vec!["step", "expected", "computed", "pass"], rows)
    .pretty(pretty))
}

fn shifted(xs: &[ShiftedObject]) -> String {
    if xs.is_empty() {
        return "0".into();
    }
    xs.iter()
        .map(|s| {
            let m = if s.mult == 1 { String::new() } else { format!("{}*", s.mult) };
            format!("{m}{:?}[{}]", s.object, s.shift)
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn kflop_table(cfg: &Config) -> Result<Report, CliError> {
    let n = cfg.n()?;
    let table = kn0_image_table(n);
    let pass = table.iter().all(|r| r.matches);
    let mut pretty = format!("KN_0(O_Y(a)), n={n}\n");
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for r in &table {
        let cols = [
            shifted(&r.phi_product),
            shifted(&r.phi_twisted),
            shifted(&r.phi_e),
            shifted(&r.phi_ytilde),
        ];
        let _ = writeln!(
            pretty,
            "  a={:>3}: product {} | twisted {} | E {} | Ytilde {} | class {:?} [{}]",
            r.a,
            cols[0],
            cols[1],
            cols[2],
            cols[3],
            r.kclass,
            if r.matches { "ok" } else { "FAIL" }
        );
        rows.push(
            std::iter::once(r.a.to_string())
                .chain(cols.iter().cloned())
                .chain([format!("{:?}", r.kclass), r.matches.to_string()])
                .collect(),
        );
        values.push(json!({
            "a": r.a,
            "phi_product": cols[0],
            "phi_twisted": cols[1],
            "phi_e": cols[2],
            "phi_ytilde": cols[3],
            "kclass": int_row(&r.kclass.coords),
            "expected": int_row(&r.expected.coords),
            "matches": r.matches,
        }));
    }
    Ok(Report::new(
        "kflop",
        "KN_0(O_Y(a)) = O_{Y+}(-a) for -n+1 <= a <= 0",
        obj(vec![("n", json!(n)), ("rows", Value::Array(values))]),
    )
    .with_pass(pass)
    .table(vec!["a", "phi_product", "phi_twisted", "phi_e", "phi_ytilde", "kclass", "matches"], rows)
    .pretty(pretty))
}

pub fn mutate_orbit(cfg: &Config) -> Result<Report, CliError> {
    let n = cfg.n()?;
    let r = orbit_check(n, cfg.cap)?;
    let e = endpoint_algebra_check(n)?;
    let pass = r.pass && e.pass;
    let steps: Vec<Value> = r
        .steps
        .iter()
        .map(|s| {
            json!({
                "k": s.k,
                "from": format!("{:?}", s.from),
                "to": format!("{:?}", s.to),
                "summands": s.summands.iter().map(|(l, m)| json!({"module": format!("{l:?}"), "multiplicity": m})).collect::<Vec<_>>(),
                "approximation_term": {
                    "wedge": s.approximation_term.wedge,
                    "multiplicity": s.approximation_term.multiplicity,
                    "module": format!("{:?}", s.approximation_term.label),
                },
                "hilbert_checks": {
                    "exact": s.exact,
                    "degrees": s.degrees.iter().map(|&(m, a, b, c)| json!([m, a, b, c])).collect::<Vec<_>>(),
                },
            })
        })
        .collect();
    let rows = r
        .steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            vec![
                (i + 1).to_string(),
                s.k.to_string(),
                format!("{:?}", s.from),
                format!("{:?}", s.to),
                format!("{}*{:?}", s.approximation_term.multiplicity, s.approximation_term.label),
                s.exact.to_string(),
            ]
        })
        .collect();
    let mut pretty = format!("mutation orbit, n={n}, degrees <= {}\n", cfg.cap);
    for (i, s) in r.steps.iter().enumerate() {
        let _ = writeln!(
            pretty,
            "  {:>2}. {:?} -> {:?} via Λ^{} V ⊗ {:?} ({})",
            i + 1,
            s.from,
            s.to,
            s.approximation_term.wedge,
            s.approximation_term.label,
            if s.exact { "exact" } else { "NOT exact" }
        );
    }
    let _ = writeln!(
        pretty,
        "  returns: summands {}, Hilbert data {}; endpoint ranks {:?}",
        r.summands_return, r.hilbert_return, e.endpoint_ranks
    );
    Ok(Report::new(
        "mutate",
        "E_k = W + L_k; n-1 mutations give the flop, 2n-2 return to the start",
        obj(vec![
            ("n", json!(n)),
            ("cap", json!(cfg.cap)),
            ("steps", Value::Array(steps)),
            ("half_orbit_is_nu", json!(r.half_orbit_is_nu)),
            ("summands_return", json!(r.summands_return)),
            ("hilbert_return", json!(r.hilbert_return)),
            ("hilbert_consistent", json!(r.hilbert_consistent)),
            ("endpoint_ranks", json!([e.endpoint_ranks.0, e.endpoint_ranks.1])),
            (
                "intermediate_tilting",
                json!(e.intermediate.iter().map(|&(k, p, rank)| json!({"k": k, "tilting": p, "rank": rank})).collect::<Vec<_>>()),
            ),
        ]),
    )
    .with_pass(pass)
    .table(vec!["step", "k", "from", "to", "approximation", "exact"], rows)
    .pretty(pretty))
}

pub fn accept(only: &[usize]) -> Result<Report, CliError> {
    if let Some(bad) = only.iter().find(|&&i| i == 0 || i > acceptance::CRITERIA) {
        return Err(CliError::Usage(format!(
            "criterion {bad} does not exist (valid range 1..={})",
            acceptance::CRITERIA
        )));
    }
    let mut results = if only.is_empty() {
        acceptance::run_all()
    } else {
        only.iter().filter_map(|&i| acceptance::run(i)).collect()
    };
    results.sort_by_key(|c| c.id);
    let pass = results.iter().all(|c| c.pass);
    let mut pretty = String::new();
    for c in &results {
        let _ = writeln!(
            pretty,
            "criterion {:>2} {} {}: {}",
            c.id,
            if c.pass { "PASS" } else { "FAIL" },
            c.title,
            c.detail
        );
    }
    let rows = results
        .iter()
        .map(|c| vec![c.id.to_string(), c.title.to_string(), c.pass.to_string(), c.detail.clone()])
        .collect();
    Ok(Report::new(
        "accept",
        "acceptance criteria 1-10",
        obj(vec![("criteria", serde_json::to_value(&results).expect("serializable"))]),
    )
    .with_pass(pass)
    .table(vec!["id", "title", "pass", "detail"], rows)
    .pretty(pretty))
}
