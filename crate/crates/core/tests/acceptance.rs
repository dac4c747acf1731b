//! Acceptance criteria, one PASS/FAIL line each. Runs without the default
//! harness so the lines always reach the output. The deep tier runs with
//! `--include-ignored`, `--ignored`, or `PH_DEEP=1`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use perverse_hodge::algebra::ClassVector;
use perverse_hodge::algebra::{build_sym_model, check_bogomolov, check_fujiki, BBSpace, SymModel};
use perverse_hodge::cli::{self, Command, Options};
use perverse_hodge::fibration::{
    leray_numbers_surface, perverse_numbers_surface, SurfaceFibrationData,
};
use perverse_hodge::gv::{diamond_as_table, goettsche_hodge, kkv_oracle, refined_gv};
use perverse_hodge::lefschetz::{
    cartan_bigrading, direction_span, lie_closure, sample_d_circle, sample_d_circle_spanning,
    GradedOperator,
};
use perverse_hodge::linalg::GaussianRational;
use perverse_hodge::linalg::Rational;
use perverse_hodge::perverse::{
    check_base_fiber_pattern, check_duality, check_multiplicativity, compare_hodge, default_pair,
    isotropic_relative_ample, perverse_bigrading, perverse_numbers, primitive_pieces,
    weight_bigrading, Bigrading, HodgeDiamond, PerverseTable,
};

const K3_TABLE: [[u64; 3]; 3] = [[1, 0, 1], [0, 20, 0], [1, 0, 1]];

struct Setup {
    model: SymModel,
    eta: ClassVector,
    beta: ClassVector,
    bigrading: Bigrading<Rational>,
    table: PerverseTable,
}

fn setup(bb: BBSpace) -> Setup {
    let model = build_sym_model(&bb).expect("model builds");
    let (eta_prime, beta) = default_pair(&bb).expect("default pair");
    let eta = isotropic_relative_ample(&bb, &eta_prime, &beta).expect("isotropic η");
    let (eta, beta) = (model.class(&eta), model.class(&beta));
    let bigrading = perverse_bigrading(&model, &eta, &beta).expect("bigrading");
    let table = perverse_numbers(&bigrading).expect("table");
    Setup {
        model,
        eta,
        beta,
        bigrading,
        table,
    }
}

fn rows(t: &PerverseTable) -> Vec<Vec<u64>> {
    t.entries.clone()
}

fn fixed(t: &[[u64; 3]; 3]) -> Vec<Vec<u64>> {
    t.iter().map(|r| r.to_vec()).collect()
}

/// `H*(S^[2]) = Sym² H*(S) ⊕ H*(S)(-1)` for a K3 surface `S`, as Hodge
/// numbers. All classes of `S` are even, so `Sym²` is the plain symmetric
/// square.
fn k3_hilb2_diamond() -> Vec<Vec<u64>> {
    let s = fixed(&K3_TABLE);
    let mut classes = Vec::new();
    for (p, row) in s.iter().enumerate() {
        for (q, &h) in row.iter().enumerate() {
            classes.extend(std::iter::repeat_n((p, q), h as usize));
        }
    }
    let mut d = vec![vec![0u64; 5]; 5];
    for a in 0..classes.len() {
        for b in a..classes.len() {
            let (p1, q1) = classes[a];
            let (p2, q2) = classes[b];
            d[p1 + p2][q1 + q2] += 1;
        }
    }
    for (p, row) in s.iter().enumerate() {
        for (q, &h) in row.iter().enumerate() {
            d[p + 1][q + 1] += h;
        }
    }
    d
}

fn structure_closure(setup: &Setup, seed: u64) -> (usize, usize) {
    let bb = setup.model.bb();
    let points = sample_d_circle_spanning(bb, 5, seed).expect("D° points");
    let mut ops: Vec<GradedOperator<GaussianRational>> = Vec::new();
    for p in &points {
        for t in p.triples(&setup.model).expect("triples") {
            ops.extend(t.operators().into_iter().cloned());
        }
    }
    (
        lie_closure(&ops).expect("closure").dim,
        direction_span(&points),
    )
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.iter().any(|a| a == "--list") {
        return;
    }
    let deep = args
        .iter()
        .any(|a| a == "--include-ignored" || a == "--ignored")
        || std::env::var("PH_DEEP").is_ok_and(|v| v == "1");

    let k3 = setup(BBSpace::k3());
    let hilb_start = Instant::now();
    let hilb = setup(BBSpace::k3_hilb2());
    let hilb_build = hilb_start.elapsed();

    type Criterion<'a> = (usize, &'a str, Duration, Box<dyn FnOnce() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        (
            1,
            "elliptic K3 perverse table",
            Duration::from_secs(5),
            Box::new(|| {
                let s = setup(BBSpace::k3());
                outcome(
                    rows(&s.table) == fixed(&K3_TABLE),
                    format!("{:?}", s.table.entries),
                )
            }),
        ),
        (
            2,
            "cross-route agreement",
            Duration::from_secs(60),
            Box::new(|| {
                let prim = primitive_pieces(&k3.model, &k3.eta, &k3.beta).expect("primitive route");
                let a = perverse_numbers(&prim.generated).expect("table");
                let b = perverse_numbers(
                    &weight_bigrading(&k3.model, &k3.eta, &k3.beta).expect("weight route"),
                )
                .expect("table");
                let data =
                    SurfaceFibrationData::new(0, [1, 0, 22, 0, 1], vec![1; 24], 0).expect("data");
                let c = perverse_numbers_surface(&data)
                    .expect("fibration route")
                    .table;
                let ok = rows(&a) == fixed(&K3_TABLE)
                    && rows(&b) == fixed(&K3_TABLE)
                    && rows(&c) == fixed(&K3_TABLE);
                outcome(ok, "primitive, weight and fibration tables")
            }),
        ),
        (
            3,
            "rational elliptic surface",
            Duration::from_secs(5),
            Box::new(|| {
                let data =
                    SurfaceFibrationData::new(0, [1, 0, 10, 0, 1], vec![1; 12], 0).expect("data");
                let pt = perverse_numbers_surface(&data).expect("table").table;
                let hd = HodgeDiamond::new(1, vec![vec![1, 0, 0], vec![0, 10, 0], vec![0, 0, 1]])
                    .expect("diamond");
                let cmp = compare_hodge(&pt, &hd).expect("compare");
                let center: Vec<_> = cmp
                    .mismatches
                    .iter()
                    .filter(|m| (m.i, m.j) == (1, 1))
                    .collect();
                let at: Vec<(usize, usize)> = cmp.mismatches.iter().map(|m| (m.i, m.j)).collect();
                // h^{2,0} = 0 on a rational surface, so the corners differ too.
                let ok = pt.get(1, 1) == 8
                    && !cmp.pass
                    && center.len() == 1
                    && (center[0].perverse, center[0].hodge) == (8, 10)
                    && at == [(0, 2), (1, 1), (2, 0)];
                outcome(
                    ok,
                    format!("ph^(1,1) = {}, mismatches at {at:?}", pt.get(1, 1)),
                )
            }),
        ),
        (
            4,
            "Leray formula",
            Duration::from_secs(5),
            Box::new(|| {
                let mut fibers = vec![1; 18];
                fibers.extend([4, 2, 2, 2]);
                let data = SurfaceFibrationData::new(0, [1, 0, 22, 0, 1], fibers, 0).expect("data");
                let l = leray_numbers_surface(&data).expect("leray");
                let plain =
                    SurfaceFibrationData::new(0, [1, 0, 22, 0, 1], vec![1; 24], 0).expect("data");
                let same = leray_numbers_surface(&plain).expect("leray").entries
                    == perverse_numbers_surface(&plain)
                        .expect("perverse")
                        .table
                        .entries;
                outcome(
                    l.get(2, 0) == 7 && l.get(1, 1) == 14 && same,
                    format!("lh^(2,0) = {}", l.get(2, 0)),
                )
            }),
        ),
        (
            5,
            "perverse = hodge on k3hilb2",
            Duration::from_secs(60),
            Box::new(|| {
                let oracle = k3_hilb2_diamond();
                let goettsche = goettsche_hodge(2);
                let hd = HodgeDiamond::new(2, oracle.clone()).expect("diamond");
                let cmp = compare_hodge(&hilb.table, &hd).expect("compare");
                // The model build counts against this criterion's limit.
                let ok = cmp.pass
                    && goettsche.entries == oracle
                    && oracle[1][1] == 21
                    && oracle[2][2] == 232
                    && hilb_build < Duration::from_secs(60);
                outcome(
                    ok,
                    format!(
                        "{} mismatches; model built in {:.1}s",
                        cmp.mismatches.len(),
                        hilb_build.as_secs_f64()
                    ),
                )
            }),
        ),
        (
            6,
            "so(5) generation",
            Duration::from_secs(120),
            Box::new(|| {
                let mut dims = Vec::new();
                for s in [&k3, &hilb] {
                    for p in sample_d_circle(s.model.bb(), 3, 0).expect("points") {
                        let mut ops: Vec<GradedOperator<GaussianRational>> = Vec::new();
                        for t in p.triples(&s.model).expect("triples") {
                            ops.extend(t.operators().into_iter().cloned());
                        }
                        dims.push(lie_closure(&ops).expect("closure").dim);
                    }
                }
                outcome(
                    dims.len() == 6 && dims.iter().all(|&d| d == 10),
                    format!("{dims:?}"),
                )
            }),
        ),
        (
            7,
            "structure Lie algebra on k3",
            Duration::from_secs(600),
            Box::new(|| {
                let (dim, span) = structure_closure(&k3, 0);
                outcome(
                    dim == 276 && span >= 5,
                    format!("dim {dim}, target 276, direction span {span}"),
                )
            }),
        ),
        (
            8,
            "weight-space conservation",
            Duration::from_secs(120),
            Box::new(|| {
                let mut ok = true;
                let mut detail = Vec::new();
                for (name, s) in [("k3", &k3), ("k3hilb2", &hilb)] {
                    let tables: Vec<Vec<Vec<usize>>> = sample_d_circle(s.model.bb(), 3, 0)
                        .expect("points")
                        .iter()
                        .map(|p| cartan_bigrading(&s.model, p).expect("cartan").dim_table())
                        .collect();
                    ok &= tables.len() >= 3 && tables.windows(2).all(|w| w[0] == w[1]);
                    detail.push(format!("{name} {} points", tables.len()));
                }
                outcome(ok, detail.join(", "))
            }),
        ),
        (
            9,
            "multiplicativity",
            Duration::from_secs(120),
            Box::new(|| {
                let a = check_multiplicativity(&k3.model, &k3.bigrading);
                let b = check_multiplicativity(&hilb.model, &hilb.bigrading);
                outcome(
                    a.pass && b.pass,
                    format!("violations {} + {}", a.violations.len(), b.violations.len()),
                )
            }),
        ),
        (
            10,
            "duality orthogonality",
            Duration::from_secs(120),
            Box::new(|| {
                let a = check_duality(&k3.model, &k3.bigrading);
                let b = check_duality(&hilb.model, &hilb.bigrading);
                outcome(
                    a.pass && b.pass,
                    format!("violations {} + {}", a.violations.len(), b.violations.len()),
                )
            }),
        ),
        (
            11,
            "refined GV",
            Duration::from_secs(5),
            Box::new(|| {
                let oracle = kkv_oracle(2);
                let g1 = refined_gv(&diamond_as_table(&goettsche_hodge(1))).expect("h = 1");
                let g2 = refined_gv(&diamond_as_table(&goettsche_hodge(2))).expect("h = 2");
                let from_tables = refined_gv(&k3.table).expect("k3") == oracle[1]
                    && refined_gv(&hilb.table).expect("k3hilb2") == oracle[2];
                let ok = g1.n == [24, -2]
                    && g2.n == [324, -54, 3]
                    && g1 == oracle[1]
                    && g2 == oracle[2]
                    && from_tables;
                outcome(ok, format!("{:?} {:?}", g1.n, g2.n))
            }),
        ),
        (
            12,
            "property suite and selftest",
            Duration::from_secs(180),
            Box::new(|| {
                let mut failures = Vec::new();
                for (name, bb) in [
                    ("k3", BBSpace::k3()),
                    ("k3hilb2", BBSpace::k3_hilb2()),
                    ("toy-b3", BBSpace::toy_b3()),
                ] {
                    let s = setup(bb);
                    if !check_fujiki(&s.model, 50, 7).expect("fujiki").passed() {
                        failures.push(format!("{name} fujiki"));
                    }
                    if !check_bogomolov(&s.model, 8, 7).expect("bogomolov").passed() {
                        failures.push(format!("{name} bogomolov"));
                    }
                    let pt = &s.table;
                    let m = 2 * pt.n;
                    let symmetric = (0..=m).all(|i| {
                        (0..=m).all(|j| {
                            pt.get(i, j) == pt.get(m - i, j)
                                && pt.get(i, j) == pt.get(i, m - j)
                                && pt.get(i, j) == pt.get(j, i)
                        })
                    });
                    if !symmetric {
                        failures.push(format!("{name} symmetry"));
                    }
                    let betti: Vec<u64> = s.model.graded_dims().iter().map(|&d| d as u64).collect();
                    if pt.betti() != betti {
                        failures.push(format!("{name} sum rule"));
                    }
                    if !check_base_fiber_pattern(pt).pass {
                        failures.push(format!("{name} base/fiber"));
                    }
                }
                let start = Instant::now();
                let report =
                    cli::run(&Command::Selftest, &Options::default()).expect("selftest runs");
                let secs = start.elapsed().as_secs_f64();
                if !report.pass() {
                    failures.push("selftest".into());
                }
                if secs >= 180.0 {
                    failures.push(format!("selftest took {secs:.1}s"));
                }
                outcome(
                    failures.is_empty(),
                    if failures.is_empty() {
                        format!("selftest {secs:.1}s")
                    } else {
                        failures.join(", ")
                    },
                )
            }),
        ),
    ];

    let mut failed = 0;
    for (k, name, limit, f) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f));
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(o) => (o.pass && elapsed < limit, o.detail),
            Err(_) => (false, "panicked".into()),
        };
        let over = if elapsed < limit {
            String::new()
        } else {
            format!(" (over the {}s limit)", limit.as_secs())
        };
        println!(
            "{} criterion {k}: {name}: {detail} [{:.2}s]{over}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        failed += usize::from(!pass);
    }

    if deep {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(|| structure_closure(&hilb, 0)));
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok((dim, span)) => (
                dim == 300 && elapsed < Duration::from_secs(600),
                format!("dim {dim}, target 300, direction span {span}"),
            ),
            Err(_) => (false, "panicked".into()),
        };
        println!(
            "{} criterion 7 (deep): structure Lie algebra on k3hilb2: {detail} [{:.2}s]",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        failed += usize::from(!pass);
    } else {
        println!(
            "SKIP criterion 7 (deep): structure Lie algebra on k3hilb2: run with --include-ignored"
        );
    }

    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
