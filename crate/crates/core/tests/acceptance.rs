//! End-to-end acceptance criteria, one PASS/FAIL line each.

use std::panic::{catch_unwind, AssertUnwindSafe};

use bounded_paths::cli::{run, Cli, Outcome, RunConfig};
use bounded_paths::meander::{fkl_by_cofactor, MeanderSystem};
use bounded_paths::oracle::{dp_count, iperm_sums, verify_series, SeriesTarget};
use bounded_paths::ring::univariate_gcd_in;
use bounded_paths::symmetric::{sym_f, sym_meander_identities, sym_meander_sum, sym_numerators};
use bounded_paths::transfer::TransferMatrix;
use bounded_paths::{binomial, MPoly, StepModel, VarName};
use clap::Parser;

const FAMILY: [&str; 6] = [
    "1:t,-1:t",
    "0:w0,1:t,-1:t",
    "0:0,1:t1,-1:t1,2:t2,-2:t2",
    "1:x,-2:y",
    "2:p,1:q,-1:q,-2:p",
    "3:r,-1:s",
];
const DYCK: &str = "1:t,-1:t";
const BASKETBALL: &str = "0:0,1:t1,-1:t1,2:t2,-2:t2";

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn p(s: &str) -> MPoly {
    s.parse().unwrap()
}

fn model(s: &str) -> StepModel {
    s.parse().unwrap()
}

fn var(name: &str) -> VarName {
    VarName::new(name).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> Outcome {
    let argv = std::iter::once("bounded-paths").chain(args.iter().copied());
    run(&RunConfig::from_cli(Cli::try_parse_from(argv).unwrap()))
}

fn json_polys(out: &Outcome) -> serde_json::Map<String, serde_json::Value> {
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    v["polynomials"].as_object().unwrap().clone()
}

fn det_route(m: &StepModel, k: usize) -> MPoly {
    if k == 0 {
        MPoly::one()
    } else {
        m.one_minus_a(k - 1).det()
    }
}

fn fibonacci() -> Check {
    let out = cli(&["fk", "--steps", DYCK, "--kmax", "10", "--output", "json"]);
    ensure(out.code == 0, || format!("exit {}", out.code))?;
    let polys = json_polys(&out);
    let f: Vec<MPoly> = (0..=10)
        .map(|k| p(polys[&format!("F_{k}")].as_str().unwrap()))
        .collect();
    ensure(f[0].is_one() && f[1].is_one(), || "F_0 = F_1 = 1".into())?;
    let t2 = p("t^2");
    for k in 2..=10 {
        ensure(f[k] == &f[k - 1] - &(&t2 * &f[k - 2]), || {
            format!("recurrence at k = {k}")
        })?;
    }
    Ok(())
}

fn basketball_golden() -> Check {
    let out = cli(&["recurrence", "--steps", BASKETBALL, "--output", "json"]);
    ensure(out.code == 0, || format!("recurrence exit {}", out.code))?;
    let polys = json_polys(&out);
    let common = p("1 + t2*z");
    let d = common.pow(2)
        * p("1 - z - 2*t2*z + t1^2*z^2 + 2*t2*z^2 + 2*t2^2*z^2 - t2^2*z^3 - 2*t2^3*z^3 + t2^4*z^4");
    let n = &common * &p("1 - t2*z");
    ensure(polys["D"] == d.to_string(), || {
        format!("D = {}", polys["D"])
    })?;
    ensure(polys["N"] == n.to_string(), || {
        format!("N = {}", polys["N"])
    })?;

    let out = cli(&[
        "meander", "--steps", BASKETBALL, "--kmax", "2", "--output", "json",
    ]);
    ensure(out.code == 0, || format!("meander exit {}", out.code))?;
    let polys = json_polys(&out);
    let d_tilde = p("1 - t1*z - t2*z^2 - t1*t2^2*z^3 + t2^4*z^4");
    let n_tilde = &common * &p("1 - t2*z + t1*t2*u*z^2 - t2^3*u^2*z^3 + t2^4*u^2*z^4");
    ensure(polys["D_tilde"] == d_tilde.to_string(), || {
        format!("D~ = {}", polys["D_tilde"])
    })?;
    ensure(polys["N_tilde"] == n_tilde.to_string(), || {
        format!("N~ = {}", polys["N_tilde"])
    })?;

    let z = var("z");
    let g = univariate_gcd_in(&n, &d, &z);
    ensure(g == common || g == -&common, || format!("gcd(N, D) = {g}"))?;
    let g = univariate_gcd_in(&n_tilde, &d, &z);
    ensure(g == common || g == -&common, || format!("gcd(N~, D) = {g}"))?;
    Ok(())
}

fn degree_theorems() -> Check {
    let z = var("z");
    let u = var("u");
    for s in FAMILY {
        let m = model(s);
        let (a, b) = m.require_two_sided().unwrap();
        let t = TransferMatrix::from_model(&m).unwrap();
        let d = t.d_of_z().map_err(|e| format!("{s}: {e}"))?;
        let n = t.n_of_z().map_err(|e| format!("{s}: {e}"))?;
        let sys = MeanderSystem::from_model(&m).unwrap();
        let (dt, nt) = sys.d_tilde_and_n_tilde().map_err(|e| format!("{s}: {e}"))?;
        let dim = binomial(a + b, a);
        ensure(d.degree_in(&z) as usize == dim, || format!("{s}: deg D"))?;
        ensure(n.degree_in(&z) as usize == dim - a - b, || {
            format!("{s}: deg N")
        })?;
        ensure(dt.degree_in(&z) as usize == binomial(a + b, a - 1), || {
            format!("{s}: deg D~")
        })?;
        let top = nt.degree_in(&z);
        ensure(top as usize == binomial(a + b + 1, a) - a - b - 1, || {
            format!("{s}: deg_z N~")
        })?;
        let lead = nt.coeff_of(&z, top);
        ensure(
            lead.degree_in(&u) as usize == binomial(a + b, a - 1) - a,
            || format!("{s}: deg_u of the dominant term of N~"),
        )?;
    }
    Ok(())
}

fn det_closed_form() -> Check {
    for s in FAMILY {
        let t = TransferMatrix::from_model(&model(s)).unwrap();
        let (det, closed) = (t.det_t(), t.det_closed_form());
        ensure(det == closed || det == -&closed, || {
            format!("{s}: det T = {det}, closed form {closed}")
        })?;
    }
    Ok(())
}

fn excursion_oracle() -> Check {
    for s in FAMILY {
        let m = model(s);
        for k in 0..=6 {
            let r = verify_series(&m, k, SeriesTarget::Excursions, 10).unwrap();
            ensure(r.agrees(), || {
                format!("{s}, k = {k}: degree {:?}", r.first_disagreement)
            })?;
        }
    }
    Ok(())
}

fn meander_oracle() -> Check {
    for s in FAMILY {
        let m = model(s);
        for k in 0..=6 {
            for l in 0..=k {
                let r = verify_series(&m, k, SeriesTarget::FinalHeight(l), 10).unwrap();
                ensure(r.agrees(), || {
                    format!("{s}, k = {k}, l = {l}: {:?}", r.first_disagreement)
                })?;
            }
            let r = verify_series(&m, k, SeriesTarget::AllMeanders, 10).unwrap();
            ensure(r.agrees(), || {
                format!("{s}, k = {k}, all: {:?}", r.first_disagreement)
            })?;
        }
    }
    Ok(())
}

fn catalan() -> Check {
    let catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430];
    let m = model(DYCK);
    let t = p("t");
    let unbounded = dp_count(&m, None, 16);
    for (n, c) in catalan.iter().enumerate() {
        let expected = MPoly::constant(*c) * t.pow(2 * n as u32);
        ensure(unbounded.excursions(2 * n) == &expected, || {
            format!("DP at n = {n}")
        })?;
        let r = verify_series(&m, n, SeriesTarget::Excursions, 2 * n).unwrap();
        ensure(r.series[2 * n] == expected, || {
            format!("E_{n} at t^{}", 2 * n)
        })?;
    }
    Ok(())
}

fn route_agreement() -> Check {
    for s in FAMILY {
        let m = model(s);
        let t = TransferMatrix::from_model(&m).unwrap();
        let f = t.f_sequence(12);
        for (k, fk) in f.iter().enumerate() {
            ensure(*fk == det_route(&m, k), || format!("{s}: F_{k}"))?;
        }
        let table = MeanderSystem::from_model(&m).unwrap().iterate_fkl(8);
        for k in 0..=8 {
            for l in 0..=k {
                ensure(
                    *table.get(k, l) == fkl_by_cofactor(&m, k, l).unwrap(),
                    || format!("{s}: F_{{{k},{l}}}"),
                )?;
            }
        }
        for fv in t.iterate_f(7) {
            let brute = iperm_sums(&m, fv.k).unwrap();
            for (pos, mask) in t.index().masks().iter().enumerate() {
                let key = t.index().elements(*mask);
                ensure(brute.sums[&key] == fv.entries[pos], || {
                    format!("{s}: k = {}, I = {key:?}", fv.k)
                })?;
            }
        }
    }
    Ok(())
}

fn graph_structure() -> Check {
    for s in FAMILY {
        let m = model(s);
        let t = TransferMatrix::from_model(&m).unwrap();
        t.check_single_arcs().map_err(|e| format!("{s}: {e}"))?;
        t.check_forced_cycle().map_err(|e| format!("{s}: {e}"))?;
        MeanderSystem::from_model(&m)
            .unwrap()
            .check_structure()
            .map_err(|e| format!("{s}: {e}"))?;
    }
    Ok(())
}

fn symmetric_theorems() -> Check {
    for s in FAMILY.iter().filter(|s| model(s).is_symmetric()) {
        let m = model(s);
        let (plus, minus) = sym_f(&m, 12).map_err(|e| e.to_string())?;
        for k in 0..=12 {
            ensure(&plus[k] * &minus[k] == det_route(&m, k), || {
                format!("{s}: F_{k} = F+ F-")
            })?;
        }
        let report = sym_meander_identities(&m, 8).map_err(|e| e.to_string())?;
        ensure(report.all_hold(), || {
            format!("{s}: {:?}", report.clone().into_result().err())
        })?;
        let folded = sym_meander_sum(&m, 8).map_err(|e| e.to_string())?;
        let sums = MeanderSystem::from_model(&m)
            .unwrap()
            .meander_sums(8)
            .map_err(|e| e.to_string())?;
        for (k, ((num, f_plus), full)) in folded.iter().zip(&sums).enumerate() {
            ensure(&full.g * f_plus == num * &full.f_next, || {
                format!("{s}: folded M_{k}")
            })?;
        }
        sym_numerators(&m).map_err(|e| format!("{s}: {e}"))?;
    }

    let m = model(DYCK);
    let f = TransferMatrix::from_model(&m).unwrap().f_sequence(6);
    let (plus, minus) = sym_f(&m, 11).map_err(|e| e.to_string())?;
    let (t, t2) = (p("t"), p("t^2"));
    for k in 1..=5 {
        ensure(plus[2 * k] == &f[k] - &(&t * &f[k - 1]), || {
            format!("F+_{}", 2 * k)
        })?;
        ensure(plus[2 * k + 1] == &f[k + 1] - &(&t2 * &f[k - 1]), || {
            format!("F+_{}", 2 * k + 1)
        })?;
        ensure(minus[2 * k] == &f[k] + &(&t * &f[k - 1]), || {
            format!("F-_{}", 2 * k)
        })?;
        ensure(minus[2 * k + 1] == f[k], || format!("F-_{}", 2 * k + 1))?;
    }
    Ok(())
}

fn determinism() -> Check {
    let runs: [&[&str]; 5] = [
        &[
            "fk", "--steps", BASKETBALL, "--kmax", "8", "--output", "json", "--verify",
        ],
        &[
            "recurrence",
            "--steps",
            "2:p,1:q,-1:q,-2:p",
            "--output",
            "json",
            "--reduce",
        ],
        &[
            "meander", "--steps", "1:x,-2:y", "--kmax", "5", "--output", "json", "--verify",
        ],
        &[
            "symmetric",
            "--steps",
            "0:w0,1:t,-1:t",
            "--kmax",
            "6",
            "--output",
            "json",
        ],
        &[
            "graph", "--steps", "3:r,-1:s", "--kind", "meander", "--output", "json",
        ],
    ];
    for args in runs {
        let first = cli(args);
        ensure(first.code == 0, || format!("{args:?}: exit {}", first.code))?;
        for _ in 0..2 {
            let again = cli(args);
            ensure(again.stdout == first.stdout, || {
                format!("{args:?}: output differs")
            })?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("Fibonacci recurrence of F_k", fibonacci),
        ("basketball generating functions", basketball_golden),
        ("degree theorems", degree_theorems),
        ("closed form of det T", det_closed_form),
        ("excursion series against path counts", excursion_oracle),
        ("meander series against path counts", meander_oracle),
        ("Catalan numbers", catalan),
        (
            "transfer, cofactor and permutation routes agree",
            route_agreement,
        ),
        ("transfer graph structure", graph_structure),
        ("symmetric factorisation", symmetric_theorems),
        ("deterministic output", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match result {
            Ok(()) => println!("criterion {:>2} PASS  {name}", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
