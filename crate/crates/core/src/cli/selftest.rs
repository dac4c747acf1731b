use std::time::Instant;

use super::commands::{builtin_surface, perverse_checks, perverse_run, PerverseRun};
use super::model::Model;
use super::report::Report;
use super::InputError;
use crate::algebra::{build_sym_model, check_bogomolov, check_fujiki, BBSpace};
use crate::fibration::{leray_numbers_surface, perverse_numbers_surface, SurfaceFibrationData};
use crate::gv::{diamond_as_table, goettsche_hodge, kkv_oracle, refined_gv};
use crate::lefschetz::{
    cartan_bigrading, lie_closure, sample_d_circle, sample_d_circle_spanning, GradedOperator,
};
use crate::linalg::GaussianRational;
use crate::perverse::{
    check_base_fiber_pattern, compare_hodge, perverse_numbers, primitive_pieces, weight_bigrading,
    HodgeDiamond, PerverseTable,
};

const K3_TABLE: [[u64; 3]; 3] = [[1, 0, 1], [0, 20, 0], [1, 0, 1]];

struct Built {
    model: Model,
    run: Option<PerverseRun>,
}

fn build(name: &str) -> Result<Built, InputError> {
    let bb = BBSpace::builtin(name).expect("builtin");
    let model = Model::Sym {
        name: Some(name.into()),
        model: Box::new(build_sym_model(&bb).map_err(|e| InputError(e.to_string()))?),
    };
    let mut scratch = Report::new("selftest", String::new());
    let run = perverse_run(&model, None, None, &mut scratch)?;
    Ok(Built { model, run })
}

fn record(
    report: &mut Report,
    k: usize,
    title: &str,
    start: Instant,
    limit: f64,
    pass: bool,
    detail: String,
) {
    let secs = start.elapsed().as_secs_f64();
    eprintln!("timing criterion {k}: {secs:.3}s");
    let within = secs < limit;
    let detail = if within {
        detail
    } else {
        format!("{detail}; took {secs:.1}s, limit {limit}s")
    };
    report.check(
        &format!("criterion {k}: {title}"),
        pass && within,
        Some(detail),
    );
}

fn table_is(pt: &PerverseTable, expected: &[[u64; 3]; 3]) -> bool {
    pt.entries
        .iter()
        .zip(expected)
        .all(|(r, e)| r.as_slice() == e)
}

fn so5_and_cartan(b: &Built, seed: u64) -> Result<(Vec<usize>, bool), InputError> {
    let sym = b.model.sym().expect("sym model");
    let points = sample_d_circle(sym.bb(), 3, seed).map_err(|e| InputError(e.to_string()))?;
    let mut dims = Vec::new();
    let mut tables = Vec::new();
    for p in &points {
        let mut ops: Vec<GradedOperator<GaussianRational>> = Vec::new();
        for t in p.triples(sym).map_err(|e| InputError(e.to_string()))? {
            ops.extend(t.operators().into_iter().cloned());
        }
        dims.push(
            lie_closure(&ops)
                .map_err(|e| InputError(e.to_string()))?
                .dim,
        );
        tables.push(
            cartan_bigrading(sym, p)
                .map_err(|e| InputError(e.to_string()))?
                .dim_table(),
        );
    }
    Ok((dims, tables.windows(2).all(|w| w[0] == w[1])))
}

fn structure_dim(b: &Built, seed: u64) -> Result<(usize, usize), InputError> {
    let sym = b.model.sym().expect("sym model");
    let b2 = sym.bb().b2();
    let points =
        sample_d_circle_spanning(sym.bb(), 5, seed).map_err(|e| InputError(e.to_string()))?;
    let mut ops: Vec<GradedOperator<GaussianRational>> = Vec::new();
    for p in &points {
        for t in p.triples(sym).map_err(|e| InputError(e.to_string()))? {
            ops.extend(t.operators().into_iter().cloned());
        }
    }
    Ok((
        lie_closure(&ops)
            .map_err(|e| InputError(e.to_string()))?
            .dim,
        (b2 + 2) * (b2 + 1) / 2,
    ))
}

/// Every acceptance criterion as one check each. `deep` adds the structure
/// closure on `k3hilb2`.
pub fn selftest(seed: u64, deep: bool, report: &mut Report) -> Result<(), InputError> {
    let total = Instant::now();

    let t = Instant::now();
    let k3 = build("k3")?;
    let ok = k3
        .run
        .as_ref()
        .is_some_and(|r| table_is(&r.table, &K3_TABLE));
    record(
        report,
        1,
        "elliptic K3 perverse table",
        t,
        5.0,
        ok,
        "corners 1, center 20".into(),
    );

    let t = Instant::now();
    let ok = (|| -> Result<bool, InputError> {
        let run = k3
            .run
            .as_ref()
            .ok_or_else(|| InputError("K3 bigrading failed".into()))?;
        let alg = k3.model.algebra();
        let prim =
            primitive_pieces(alg, &run.eta, &run.beta).map_err(|e| InputError(e.to_string()))?;
        let a = perverse_numbers(&prim.generated).map_err(|e| InputError(e.to_string()))?;
        let w =
            weight_bigrading(alg, &run.eta, &run.beta).map_err(|e| InputError(e.to_string()))?;
        let b = perverse_numbers(&w).map_err(|e| InputError(e.to_string()))?;
        let data = SurfaceFibrationData::new(0, [1, 0, 22, 0, 1], vec![1; 24], 0)
            .map_err(|e| InputError(e.to_string()))?;
        let c = perverse_numbers_surface(&data)
            .map_err(|e| InputError(e.to_string()))?
            .table;
        Ok(a == b && b == c && table_is(&a, &K3_TABLE))
    })()?;
    record(
        report,
        2,
        "cross-route agreement",
        t,
        60.0,
        ok,
        "primitive, weight and fibration routes".into(),
    );

    let t = Instant::now();
    let res = builtin_surface("rational-elliptic").expect("builtin");
    let pt = perverse_numbers_surface(&res)
        .map_err(|e| InputError(e.to_string()))?
        .table;
    let hd =
        HodgeDiamond::new(1, vec![vec![1, 0, 0], vec![0, 10, 0], vec![0, 0, 1]]).expect("diamond");
    let cmp = compare_hodge(&pt, &hd).map_err(|e| InputError(e.to_string()))?;
    let at_center: Vec<_> = cmp
        .mismatches
        .iter()
        .filter(|m| (m.i, m.j) == (1, 1))
        .collect();
    let ok = pt.get(1, 1) == 8
        && at_center.len() == 1
        && at_center[0].perverse == 8
        && at_center[0].hodge == 10;
    record(
        report,
        3,
        "rational elliptic surface",
        t,
        5.0,
        ok,
        format!(
            "mismatches {:?}",
            cmp.mismatches
                .iter()
                .map(|m| (m.i, m.j))
                .collect::<Vec<_>>()
        ),
    );

    let t = Instant::now();
    let mut fibers = vec![1; 18];
    fibers.extend([3, 3, 2, 2]);
    let reducible = SurfaceFibrationData::new(0, [1, 0, 22, 0, 1], fibers, 0)
        .map_err(|e| InputError(e.to_string()))?;
    let irreducible = builtin_surface("elliptic-k3").expect("builtin");
    let l1 = leray_numbers_surface(&reducible).map_err(|e| InputError(e.to_string()))?;
    let l2 = leray_numbers_surface(&irreducible).map_err(|e| InputError(e.to_string()))?;
    let p2 = perverse_numbers_surface(&irreducible)
        .map_err(|e| InputError(e.to_string()))?
        .table;
    let ok = l1.get(2, 0) == 7 && l2.entries == p2.entries;
    record(
        report,
        4,
        "Leray formula",
        t,
        5.0,
        ok,
        format!("lh^(2,0) = {}", l1.get(2, 0)),
    );

    let t = Instant::now();
    let hilb = build("k3hilb2")?;
    let ok = hilb
        .run
        .as_ref()
        .is_some_and(|r| compare_hodge(&r.table, &goettsche_hodge(2)).is_ok_and(|c| c.pass));
    record(
        report,
        5,
        "perverse = hodge on k3hilb2",
        t,
        60.0,
        ok,
        "against the Göttsche diamond".into(),
    );

    let t = Instant::now();
    let (d1, c1) = so5_and_cartan(&k3, seed)?;
    let (d2, c2) = so5_and_cartan(&hilb, seed)?;
    let ok = d1.len() >= 3 && d2.len() >= 3 && d1.iter().chain(&d2).all(|&d| d == 10);
    record(
        report,
        6,
        "so(5) generation",
        t,
        120.0,
        ok,
        format!("k3 {d1:?}, k3hilb2 {d2:?}"),
    );
    record(
        report,
        8,
        "weight-space conservation",
        t,
        120.0,
        c1 && c2,
        "cartan tables agree across points".into(),
    );

    let t = Instant::now();
    let (dim, target) = structure_dim(&k3, seed)?;
    let mut detail = format!("k3 {dim} of {target}");
    let mut ok = dim == target;
    if deep {
        let (dim, target) = structure_dim(&hilb, seed)?;
        detail.push_str(&format!(", k3hilb2 {dim} of {target}"));
        ok &= dim == target;
    }
    record(
        report,
        7,
        "structure Lie algebra",
        t,
        600.0 * if deep { 2.0 } else { 1.0 },
        ok,
        detail,
    );

    let t = Instant::now();
    let mut mult_ok = true;
    let mut dual_ok = true;
    for b in [&k3, &hilb] {
        let Some(run) = &b.run else {
            mult_ok = false;
            dual_ok = false;
            continue;
        };
        let mut scratch = Report::new("selftest", String::new());
        perverse_checks(b.model.algebra(), run, true, &mut scratch);
        let passed = |name: &str| scratch.checks.iter().any(|c| c.name == name && c.pass);
        mult_ok &= passed("multiplicativity");
        dual_ok &= passed("duality");
    }
    record(
        report,
        9,
        "multiplicativity",
        t,
        120.0,
        mult_ok,
        "k3 and k3hilb2".into(),
    );
    record(
        report,
        10,
        "duality orthogonality",
        t,
        120.0,
        dual_ok,
        "k3 and k3hilb2".into(),
    );

    let t = Instant::now();
    let oracle = kkv_oracle(2);
    let g1 = refined_gv(&diamond_as_table(&goettsche_hodge(1)))
        .map_err(|e| InputError(e.to_string()))?;
    let g2 = refined_gv(&diamond_as_table(&goettsche_hodge(2)))
        .map_err(|e| InputError(e.to_string()))?;
    let ok = g1 == oracle[1] && g2 == oracle[2] && g1.n == [24, -2] && g2.n == [324, -54, 3];
    record(
        report,
        11,
        "refined GV",
        t,
        5.0,
        ok,
        format!("{:?}, {:?}", g1.n, g2.n),
    );

    let t = Instant::now();
    let toy = build("toy-b3")?;
    let mut failures = Vec::new();
    for (name, b) in [("k3", &k3), ("k3hilb2", &hilb), ("toy-b3", &toy)] {
        let sym = b.model.sym().expect("sym model");
        if !check_fujiki(sym, 50, seed).is_ok_and(|r| r.passed()) {
            failures.push(format!("{name} fujiki"));
        }
        if !check_bogomolov(sym, 8, seed).is_ok_and(|r| r.passed()) {
            failures.push(format!("{name} bogomolov"));
        }
        match &b.run {
            Some(run) => {
                let pt = &run.table;
                let dims: Vec<u64> = sym.graded_dims().iter().map(|&d| d as u64).collect();
                if !pt.is_symmetric() || !pt.is_transpose_symmetric() {
                    failures.push(format!("{name} symmetry"));
                }
                if pt.betti() != dims {
                    failures.push(format!("{name} sum rule"));
                }
                if !check_base_fiber_pattern(pt).pass {
                    failures.push(format!("{name} base/fiber pattern"));
                }
            }
            None => failures.push(format!("{name} bigrading")),
        }
    }
    record(
        report,
        12,
        "property suite",
        t,
        180.0,
        failures.is_empty(),
        if failures.is_empty() {
            "all builtin models".into()
        } else {
            failures.join(", ")
        },
    );

    let secs = total.elapsed().as_secs_f64();
    eprintln!("timing selftest: {secs:.3}s");
    if !deep {
        report.check("selftest runtime", secs < 180.0, None);
    }
    report.checks.sort_by_key(|c| {
        c.name
            .strip_prefix("criterion ")
            .and_then(|s| s.split(':').next())
            .and_then(|k| k.parse::<usize>().ok())
            .unwrap_or(usize::MAX)
    });
    Ok(())
}
