use std::time::Instant;

use serde_json::json;

use super::model::{read_file, resolve_pair, Model};
use super::report::{Report, Table};
use super::InputError;
use crate::algebra::{check_bogomolov, check_fujiki, BBSpace, ClassVector, GradedAlgebra};
use crate::fibration::{leray_numbers_surface, perverse_numbers_surface, SurfaceFibrationData};
use crate::gv::{diamond_as_table, goettsche_hodge, kkv_oracle, refined_gv, GVTable};
use crate::lefschetz::{
    cartan_bigrading, direction_span, lie_closure, sample_d_circle, sample_d_circle_spanning,
    GradedOperator,
};
use crate::linalg::{GaussianRational, Rational};
use crate::perverse::{
    check_base_fiber_pattern, check_duality, check_filtration_shifts, check_multiplicativity,
    compare_hodge, perverse_bigrading, perverse_numbers, Bigrading, HodgeDiamond, PerverseError,
    PerverseTable,
};

/// Runs `f` and prints its wall time to stderr, keeping reports reproducible.
pub fn timed<T>(label: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    eprintln!("timing {label}: {:.3}s", start.elapsed().as_secs_f64());
    out
}

pub fn model_build(model: &Model, report: &mut Report) -> Result<(), InputError> {
    let alg = model.algebra();
    let frob = timed("frobenius", || alg.validate_frobenius());
    report.check(
        "frobenius",
        frob.passed(),
        (!frob.passed()).then(|| format!("{} violations", frob.violations.len())),
    );
    report.set("n", alg.n());
    report.set("graded_dims", alg.graded_dims());
    report.set("total_dim", alg.total_dim());
    report.set("frobenius", &frob);
    if let Some(sym) = model.sym() {
        let fujiki = check_fujiki(sym, 50, 0).map_err(|e| InputError(e.to_string()))?;
        let bogomolov = check_bogomolov(sym, 8, 0).map_err(|e| InputError(e.to_string()))?;
        report.check("fujiki", fujiki.passed(), None);
        report.check("bogomolov", bogomolov.passed(), None);
        report.set("fujiki", fujiki);
        report.set("bogomolov", bogomolov);
    }
    report.tables.push(Table {
        name: "graded_dims".into(),
        corner: "".into(),
        rows: vec![alg.graded_dims().iter().map(usize::to_string).collect()],
        columns: Vec::new(),
    });
    Ok(())
}

/// Everything the perverse subcommands derive from one `(η, β)` pair.
pub struct PerverseRun {
    pub eta: ClassVector,
    pub beta: ClassVector,
    pub bigrading: Bigrading<Rational>,
    pub table: PerverseTable,
}

/// `Ok(None)` when the construction itself fails a check; the failure is
/// recorded on the report.
pub fn perverse_run(
    model: &Model,
    eta: Option<&str>,
    beta: Option<&str>,
    report: &mut Report,
) -> Result<Option<PerverseRun>, InputError> {
    let (eta, beta) = resolve_pair(model, eta, beta)?;
    let alg = model.algebra();
    let result = timed("bigrading", || perverse_bigrading(alg, &eta, &beta))
        .and_then(|bg| Ok((perverse_numbers(&bg)?, bg)));
    match result {
        Ok((table, bigrading)) => {
            report.check("bigrading", true, None);
            Ok(Some(PerverseRun {
                eta,
                beta,
                bigrading,
                table,
            }))
        }
        Err(PerverseError::Precondition(msg)) => Err(InputError(format!("--eta/--beta: {msg}"))),
        Err(e) => {
            report.check("bigrading", false, Some(e.to_string()));
            Ok(None)
        }
    }
}

pub fn perverse_checks(
    alg: &GradedAlgebra,
    run: &PerverseRun,
    is_sym: bool,
    report: &mut Report,
) -> Vec<serde_json::Value> {
    let pt = &run.table;
    let mut violations = Vec::new();
    let sym = pt.symmetry_violations();
    report.check("symmetry", sym.is_empty(), None);
    for (i, j) in &sym {
        violations.push(json!({"check": "symmetry", "at": [i, j]}));
    }
    if is_sym {
        let t = pt.is_transpose_symmetric();
        report.check("transpose_symmetry", t, None);
        if !t {
            violations.push(json!({"check": "transpose_symmetry"}));
        }
    }
    let pattern = check_base_fiber_pattern(pt);
    report.check("base_fiber_pattern", pattern.pass, None);
    for (i, j) in &pattern.violations {
        violations.push(json!({"check": "base_fiber_pattern", "at": [i, j]}));
    }
    let mult = timed("multiplicativity", || {
        check_multiplicativity(alg, &run.bigrading)
    });
    report.check(
        "multiplicativity",
        mult.pass,
        Some(format!("{} piece pairs", mult.pairs_checked)),
    );
    for (a, b) in &mult.violations {
        violations.push(json!({"check": "multiplicativity", "pieces": [a, b]}));
    }
    let dual = timed("duality", || check_duality(alg, &run.bigrading));
    report.check(
        "duality",
        dual.pass,
        Some(format!("{} blocks", dual.blocks_checked)),
    );
    for v in &dual.violations {
        violations.push(json!({"check": "duality", "violation": v}));
    }
    let shifts = timed("filtration", || {
        check_filtration_shifts(alg, &run.bigrading, &run.eta, &run.beta)
    });
    report.check("filtration_shifts", shifts.pass, None);
    for (class, k, d) in &shifts.violations {
        violations.push(json!({"check": "filtration_shifts", "class": class, "k": k, "degree": d}));
    }
    violations
}

/// The Hodge diamond a builtin model is known to have.
pub fn builtin_diamond(model: &Model) -> Option<HodgeDiamond> {
    match model.builtin_name()? {
        "k3" => Some(goettsche_hodge(1)),
        "k3hilb2" => Some(goettsche_hodge(2)),
        _ => None,
    }
}

pub fn perverse(
    model: &Model,
    eta: Option<&str>,
    beta: Option<&str>,
    report: &mut Report,
) -> Result<(), InputError> {
    let alg = model.algebra();
    report.set("n", alg.n());
    let Some(run) = perverse_run(model, eta, beta, report)? else {
        return Ok(());
    };
    let violations = perverse_checks(alg, &run, model.sym().is_some(), report);
    report.set("ph", &run.table.entries);
    report.set("symmetric", run.table.is_symmetric());
    let hodge_match = builtin_diamond(model)
        .map(|hd| compare_hodge(&run.table, &hd).map(|c| c.pass))
        .transpose();
    report.set(
        "hodge_match",
        hodge_match.map_err(|e| InputError(e.to_string()))?,
    );
    report.set("violations", violations);
    report.tables.push(Table::grid(
        "perverse numbers",
        "i \\ j",
        &run.table.entries,
    ));
    Ok(())
}

fn parse_diamond(path: &str) -> Result<HodgeDiamond, InputError> {
    #[derive(serde::Deserialize)]
    struct File {
        n: usize,
        entries: Vec<Vec<u64>>,
    }
    let f: File = serde_json::from_str(&read_file(path)?)
        .map_err(|e| InputError(format!("--hodge-file: {e}")))?;
    HodgeDiamond::new(f.n, f.entries).map_err(|e| InputError(format!("--hodge-file: {e}")))
}

fn record_comparison(
    pt: &PerverseTable,
    hd: &HodgeDiamond,
    report: &mut Report,
) -> Result<(), InputError> {
    let cmp = compare_hodge(pt, hd).map_err(|e| InputError(format!("--hodge-file: {e}")))?;
    report.check(
        "perverse_equals_hodge",
        cmp.pass,
        (!cmp.pass).then(|| format!("{} mismatches", cmp.mismatches.len())),
    );
    report.set("hodge", &hd.entries);
    report.set("hodge_match", cmp.pass);
    report.set("mismatches", &cmp.mismatches);
    report
        .tables
        .push(Table::grid("hodge numbers", "p \\ q", &hd.entries));
    Ok(())
}

pub fn compare(
    model: &Model,
    eta: Option<&str>,
    beta: Option<&str>,
    hodge_file: Option<&str>,
    report: &mut Report,
) -> Result<(), InputError> {
    let hd = match hodge_file {
        Some(path) => parse_diamond(path)?,
        None => goettsche_hodge(model.algebra().n()),
    };
    report.set("n", model.algebra().n());
    let Some(run) = perverse_run(model, eta, beta, report)? else {
        return Ok(());
    };
    report.set("ph", &run.table.entries);
    report.tables.push(Table::grid(
        "perverse numbers",
        "i \\ j",
        &run.table.entries,
    ));
    record_comparison(&run.table, &hd, report)
}

/// Built-in fibration data.
pub fn builtin_surface(name: &str) -> Option<SurfaceFibrationData> {
    let data = match name {
        "elliptic-k3" => SurfaceFibrationData::new(0, [1, 0, 22, 0, 1], vec![1; 24], 0),
        "rational-elliptic" => SurfaceFibrationData::new(0, [1, 0, 10, 0, 1], vec![1; 12], 0),
        "product-ee" => SurfaceFibrationData::new(1, [1, 4, 6, 4, 1], Vec::new(), 2),
        _ => return None,
    };
    Some(data.expect("builtin fibration data is valid"))
}

pub fn surface(
    data: &SurfaceFibrationData,
    hodge_file: Option<&str>,
    report: &mut Report,
) -> Result<(), InputError> {
    let perverse = perverse_numbers_surface(data).map_err(|e| InputError(e.to_string()))?;
    let leray = leray_numbers_surface(data).map_err(|e| InputError(e.to_string()))?;
    let pt = &perverse.table;
    report.check("symmetry", pt.is_symmetric(), None);
    let betti: Vec<u64> = data.betti.to_vec();
    report.check(
        "sum_rule",
        pt.betti() == betti && leray.betti() == betti,
        None,
    );
    report.check(
        "middle_decomposition",
        perverse.middle.contradictions.is_empty(),
        (!perverse.middle.contradictions.is_empty())
            .then(|| perverse.middle.contradictions.join("; ")),
    );
    report.set("n", 1);
    report.set("ph", &pt.entries);
    report.set("symmetric", pt.is_symmetric());
    report.set("middle", &perverse.middle);
    report.set("leray", &leray.entries);
    report.set("leray_differs_at", leray.differences(pt));
    report
        .tables
        .push(Table::grid("perverse numbers", "i \\ j", &pt.entries));
    report
        .tables
        .push(Table::grid("leray numbers", "i \\ j", &leray.entries));
    if let Some(path) = hodge_file {
        record_comparison(pt, &parse_diamond(path)?, report)?;
    }
    Ok(())
}

fn gv_rows(tables: &[GVTable], h_max: usize) -> Vec<Vec<String>> {
    tables
        .iter()
        .map(|t| {
            (0..=h_max)
                .map(|g| t.n.get(g).map_or(String::new(), i64::to_string))
                .collect()
        })
        .collect()
}

/// GV invariants from Göttsche diamonds (and, with `deep`, from the
/// perverse tables of the built-in sym models) against the KKV oracle.
pub fn gv(h_max: usize, deep: bool, report: &mut Report) -> Result<(), InputError> {
    if h_max == 0 || h_max > 8 {
        return Err(InputError("--hmax must be between 1 and 8".into()));
    }
    let oracle = timed("kkv", || kkv_oracle(h_max));
    let mut tables = Vec::new();
    for h in 1..=h_max {
        let t = refined_gv(&diamond_as_table(&goettsche_hodge(h)))
            .map_err(|e| InputError(e.to_string()))?;
        report.check(&format!("h={h} matches kkv"), t == oracle[h], None);
        tables.push(t);
    }
    if deep {
        for (h, name) in [(1, "k3"), (2, "k3hilb2")]
            .into_iter()
            .filter(|&(h, _)| h <= h_max)
        {
            let bb = BBSpace::builtin(name).expect("builtin");
            let model = Model::Sym {
                name: Some(name.into()),
                model: Box::new(
                    crate::algebra::build_sym_model(&bb).map_err(|e| InputError(e.to_string()))?,
                ),
            };
            let mut scratch = Report::new("gv", String::new());
            let ok = match perverse_run(&model, None, None, &mut scratch)? {
                Some(run) => refined_gv(&run.table).is_ok_and(|t| t == oracle[h]),
                None => false,
            };
            report.check(
                &format!("h={h} from {name} perverse table matches kkv"),
                ok,
                None,
            );
        }
    }
    report.set("classes", &tables);
    report.set("kkv", &oracle[1..]);
    let mut table = Table {
        name: "n_{g,h}".into(),
        corner: "h \\ g".into(),
        rows: gv_rows(&tables, h_max),
        columns: Vec::new(),
    };
    // Rows start at h = 1.
    table.rows.insert(0, gv_rows(&oracle[..1], h_max).remove(0));
    report.tables.push(table);
    Ok(())
}

/// Dimension of the Lie algebra generated by the sl2 triples of `x, y, z`
/// at each point, the Cartan tables at each point, and with `structure`
/// the closure over points whose directions span `H²`.
pub fn lie(
    model: &Model,
    seed: u64,
    structure: bool,
    report: &mut Report,
) -> Result<(), InputError> {
    let sym = model
        .sym()
        .ok_or_else(|| InputError("lie needs a model given by a quadratic space".into()))?;
    let bb = sym.bb();
    let alg = sym.algebra();
    let points = sample_d_circle(bb, 3, seed).map_err(|e| InputError(e.to_string()))?;
    let mut so5 = Vec::new();
    let mut cartan = Vec::new();
    for (k, p) in points.iter().enumerate() {
        let dim = timed(
            &format!("so5 point {k}"),
            || -> Result<usize, InputError> {
                let mut ops: Vec<GradedOperator<GaussianRational>> = Vec::new();
                for t in p.triples(alg).map_err(|e| InputError(e.to_string()))? {
                    ops.extend(t.operators().into_iter().cloned());
                }
                Ok(lie_closure(&ops)
                    .map_err(|e| InputError(e.to_string()))?
                    .dim)
            },
        )?;
        so5.push(dim);
        let bg = cartan_bigrading(alg, p).map_err(|e| InputError(e.to_string()))?;
        cartan.push(bg.dim_table());
    }
    report.check(
        "so5",
        so5.iter().all(|&d| d == 10),
        Some(format!("{so5:?}")),
    );
    let consistent = cartan.windows(2).all(|w| w[0] == w[1]);
    report.check("cartan_conservation", consistent, None);
    report.set("points", points.len());
    report.set("so5_dims", &so5);
    report.set("cartan_tables", &cartan);
    report.set("cartan_consistent", consistent);
    if let Some(first) = cartan.first() {
        report
            .tables
            .push(Table::grid("cartan bigrading", "i \\ j", first));
    }
    if structure {
        let b2 = bb.b2();
        let target = (b2 + 2) * (b2 + 1) / 2;
        let (dim, directions) = timed(
            "structure closure",
            || -> Result<(usize, usize), InputError> {
                let pts =
                    sample_d_circle_spanning(bb, 5, seed).map_err(|e| InputError(e.to_string()))?;
                let mut ops: Vec<GradedOperator<GaussianRational>> = Vec::new();
                for p in &pts {
                    for t in p.triples(alg).map_err(|e| InputError(e.to_string()))? {
                        ops.extend(t.operators().into_iter().cloned());
                    }
                }
                Ok((
                    lie_closure(&ops)
                        .map_err(|e| InputError(e.to_string()))?
                        .dim,
                    direction_span(&pts),
                ))
            },
        )?;
        report.check(
            "structure_lie_algebra",
            dim == target,
            Some(format!("{dim} of {target}")),
        );
        report.set(
            "structure",
            json!({"dim": dim, "target": target, "direction_span": directions}),
        );
    }
    Ok(())
}
