//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if
//! any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use sundial_core::castelnuovo::{
    bidegree_dimension, check_inequality, random_points_system, replay_p3_case, replay_pn_case,
    BidegreeComponent, Hyperplane, Hypersurface,
};
use sundial_core::expectations::{
    build_w_t, forms_dimension, verify_appendix_a1, verify_appendix_a2,
};
use sundial_core::geometry::{
    degeneration_fiber, make_generic_sundial, random_line, random_p1_point, Line,
};
use sundial_core::scheme::{condition_matrix, hilbert_function};
use sundial_core::{ideal_dimension, Error, Fp, Prime, Scheme, SchemeComponent};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Median wall time of `reps` runs of `f`, with the last result.
fn timed<T>(reps: usize, mut f: impl FnMut() -> T) -> (T, Duration) {
    let mut times = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps {
        let start = Instant::now();
        last = Some(f());
        times.push(start.elapsed());
    }
    times.sort();
    (last.unwrap(), times[reps / 2])
}

fn binary(args: &[&str]) -> (Option<i32>, Vec<Value>) {
    let out = Command::new(env!("CARGO_BIN_EXE_hilbert-sundial"))
        .args(args)
        .output()
        .expect("binary runs");
    let rows = String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("JSON line"))
        .collect();
    (out.status.code(), rows)
}

fn main_theorem_sweep() -> Outcome {
    let start = Instant::now();
    let (code, rows) = binary(&[
        "sweep", "--n", "3..5", "--d", "1..6", "--trials", "5", "--prime", "32003",
    ]);
    let elapsed = start.elapsed();
    let mut instances = 0;
    let mut failed = 0;
    let mut retried = 0;
    for (i, r) in rows.iter().enumerate() {
        let last_trial = rows.get(i + 1).is_none_or(|next| next["trial"] == 0);
        if r["trial"] != 0 {
            retried += 1;
        }
        if last_trial {
            instances += 1;
            if r["match"] != true {
                failed += 1;
            }
        }
    }
    outcome(
        code == Some(0) && failed == 0 && instances > 0 && elapsed <= Duration::from_secs(60),
        format!(
            "{instances} instances, {failed} unmatched, {retried} retries, {:.2} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn critical_instance(d: u32, seed: u64, sundials: usize, limit: Duration) -> Outcome {
    let p = Prime::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = build_w_t(3, d, p, &mut rng).unwrap().w;
    let shape = w.count("sundial") == sundials && w.count("line") == 1 && w.len() == sundials + 1;
    let m = condition_matrix(&w, d, p).unwrap();
    let conditions = hilbert_function(&w, d, p).unwrap();
    let (dim, t) = timed(5, || ideal_dimension(&w, d, p).unwrap());
    outcome(
        shape && dim == 0 && conditions == m.matrix.cols() && t <= limit,
        format!(
            "{} sundials + 1 line, {conditions} independent conditions ({} rows) on {} coefficients, dim = {dim}, {:.3} ms",
            w.count("sundial"),
            m.matrix.rows(),
            m.matrix.cols(),
            ms(t)
        ),
    )
}

fn proof_replays() -> Outcome {
    let p = Prime::default();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut mismatches = 0;
    let mut claims = 0;
    let mut cases = Vec::new();
    for (h, case) in [(1, 1), (2, 1), (1, 2), (2, 2), (2, 3), (3, 3)] {
        let r = replay_p3_case(h, case, p, &mut rng).unwrap();
        mismatches += r.mismatches();
        claims += r.claims.len() + r.inequalities.len();
    }
    for d in 2..=8 {
        let r = replay_pn_case(4, d, p, &mut rng).unwrap();
        mismatches += r.mismatches();
        claims += r.claims.len() + r.inequalities.len();
        cases.push(r.case.clone());
    }
    let elapsed = start.elapsed();
    let covers = ["a", "b", "c"].iter().all(|c| cases.iter().any(|x| x == c));
    outcome(
        mismatches == 0 && covers && elapsed <= Duration::from_secs(300),
        format!(
            "{claims} checks, {mismatches} mismatches, P^4 cases {}, {:.2} s",
            cases.join(""),
            elapsed.as_secs_f64()
        ),
    )
}

fn appendix() -> Outcome {
    let start = Instant::now();
    let mut failures = 0;
    let mut checked = 0;
    for n in 4..=12 {
        for d in 2..=50 {
            checked += 1;
            if !verify_appendix_a1(n, d).unwrap().all_hold() {
                failures += 1;
            }
            if d >= 6 && !verify_appendix_a2(n, d).unwrap().holds {
                failures += 1;
            }
        }
    }
    let table: [(u32, u64, u64, u64, i64); 8] = [
        (2, 5, 2, 1, 0),
        (3, 8, 5, 0, 1),
        (4, 14, 8, 3, 0),
        (5, 21, 14, 0, 3),
        (6, 30, 21, 0, 4),
        (7, 41, 30, 0, 5),
        (8, 55, 41, 2, 5),
        (9, 71, 55, 0, 8),
    ];
    let table_ok = table.iter().all(|&(d, t, tp, rp, slack)| {
        let r = verify_appendix_a1(4, d).unwrap();
        (r.t, r.t_p, r.r_p, r.a_value) == (t, tp, rp, slack)
    });
    let elapsed = start.elapsed();
    outcome(
        failures == 0 && table_ok && elapsed <= Duration::from_secs(1),
        format!(
            "{checked} grid points, {failures} failures, n=4 table {}, {:.2} ms",
            if table_ok { "matched" } else { "differs" },
            ms(elapsed)
        ),
    )
}

fn bidegree_instances() -> Outcome {
    let p = Prime::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let small = random_points_system(1, 6, 14, 0, p, &mut rng);
    let large = random_points_system(3, 10, 26, 6, p, &mut rng);
    let (d1, t1) = timed(5, || bidegree_dimension(&small, p).unwrap());
    let (d2, t2) = timed(5, || bidegree_dimension(&large, p).unwrap());
    let limit = Duration::from_millis(10);
    outcome(
        d1 == 0 && d2 == 0 && t1 <= limit && t2 <= limit,
        format!(
            "(1,6)+14 points: {d1} in {:.3} ms; (3,10)+6 double+26 points: {d2} in {:.3} ms",
            ms(t1),
            ms(t2)
        ),
    )
}

fn generic_scheme(
    n: usize,
    sundials: usize,
    lines: usize,
    p: Prime,
    rng: &mut ChaCha8Rng,
) -> Scheme {
    let mut x = Scheme::new(n);
    for _ in 0..sundials {
        x.push(SchemeComponent::Sundial(
            make_generic_sundial(n, p, rng).unwrap(),
        ))
        .unwrap();
    }
    for _ in 0..lines {
        x.push(SchemeComponent::Line(random_line(n, p, rng)))
            .unwrap();
    }
    x
}

fn sundial_rank(p: Prime) -> (usize, usize) {
    let mut bad = 0;
    let mut total = 0;
    for n in 3..=5usize {
        for d in 1..=8u32 {
            let expected = (forms_dimension(n, d).unwrap() as usize).min(2 * (d as usize + 1));
            for seed in 0..20 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                total += 1;
                if hilbert_function(&generic_scheme(n, 1, 0, p, &mut rng), d, p).unwrap()
                    != expected
                {
                    bad += 1;
                }
            }
        }
    }
    (bad, total)
}

fn castelnuovo_random(p: Prime) -> (usize, usize) {
    let mut bad = 0;
    for i in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + i);
        let n = rng.gen_range(3..=4usize);
        let d = rng.gen_range(2..=5u32);
        let (s, l) = (rng.gen_range(0..=3usize), rng.gen_range(0..=4usize));
        let x = generic_scheme(n, s, l, p, &mut rng);
        let report = loop {
            match check_inequality(
                &x,
                &Hypersurface::Hyperplane(Hyperplane::random(n, p, &mut rng)),
                d,
                p,
            ) {
                Err(Error::UnrecognizedPosition(_)) => continue,
                r => break r.unwrap(),
            }
        };
        if !report.inequality_holds {
            bad += 1;
        }
    }
    (bad, 100)
}

fn skew_pair(n: usize, p: Prime, rng: &mut ChaCha8Rng) -> (Line, Line) {
    loop {
        let (a, b) = (random_line(n, p, rng), random_line(n, p, rng));
        if a.subspace(p)
            .join(&b.subspace(p), p)
            .unwrap()
            .projective_dim()
            == 3
        {
            return (a, b);
        }
    }
}

fn degeneration(p: Prime) -> (usize, usize) {
    let mut bad = 0;
    let mut total = 0;
    for n in 3..=4usize {
        for d in 1..=6u32 {
            let mut rng = ChaCha8Rng::seed_from_u64(77 * n as u64 + d as u64);
            let (l1, m) = skew_pair(n, p, &mut rng);
            let special =
                ideal_dimension(&degeneration_fiber(&l1, &m, Fp::ZERO, p).unwrap(), d, p).unwrap();
            for _ in 0..4 {
                let lambda = p.random_nonzero(&mut rng);
                let general =
                    ideal_dimension(&degeneration_fiber(&l1, &m, lambda, p).unwrap(), d, p)
                        .unwrap();
                total += 1;
                if special < general || special != general {
                    bad += 1;
                }
            }
        }
    }
    (bad, total)
}

fn fixed_components(p: Prime) -> (usize, usize) {
    let mut bad = 0;
    for i in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(500 + i);
        let k = rng.gen_range(1..=3u32);
        let a = k + rng.gen_range(0..=4u32);
        let b = rng.gen_range(1..=8u32);
        let base = random_points_system(
            a - k,
            b,
            rng.gen_range(0..20),
            rng.gen_range(0..4),
            p,
            &mut rng,
        );
        let mut with_lines = base.in_bidegree(a, b);
        for _ in 0..k {
            with_lines
                .push(BidegreeComponent::RulingLineA {
                    u: random_p1_point(p, &mut rng),
                })
                .unwrap();
        }
        if bidegree_dimension(&with_lines, p).unwrap() != bidegree_dimension(&base, p).unwrap() {
            bad += 1;
        }
    }
    (bad, 50)
}

/// `X` with `0 < dim (I_X)_d <= d + 1`, `Y` a further generic line so that
/// `dim (I_{X+Y})_d = 0`; then `dim (I_X)_d` generic points of `Y` kill
/// `(I_X)_d`.
fn adding_points(p: Prime) -> (usize, usize) {
    let mut bad = 0;
    let mut built = 0;
    let mut seed = 0u64;
    while built < 25 {
        seed += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(3..=4usize);
        let d = rng.gen_range(2..=6u32);
        let c = forms_dimension(n, d).unwrap() as usize;
        let per = d as usize + 1;
        let s = rng.gen_range(0..=c / (2 * per));
        let rest = c - 2 * s * per;
        if rest == 0 {
            continue;
        }
        let x = generic_scheme(n, s, (rest - 1) / per, p, &mut rng);
        let y = random_line(n, p, &mut rng);
        let dim = ideal_dimension(&x, d, p).unwrap();
        let xy = x
            .union(&Scheme::from_components(n, [SchemeComponent::Line(y.clone())]).unwrap())
            .unwrap();
        if dim == 0 || ideal_dimension(&xy, d, p).unwrap() != 0 {
            continue;
        }
        built += 1;
        let mut with_points = x;
        for _ in 0..dim {
            with_points
                .push(SchemeComponent::SimplePoint(
                    y.point_at(p.random(&mut rng), p),
                ))
                .unwrap();
        }
        if ideal_dimension(&with_points, d, p).unwrap() != 0 {
            bad += 1;
        }
    }
    (bad, built)
}

fn property_suites() -> Outcome {
    let p = Prime::default();
    let start = Instant::now();
    let parts = [
        ("sundial rank", sundial_rank(p)),
        ("castelnuovo", castelnuovo_random(p)),
        ("degeneration", degeneration(p)),
        ("fixed components", fixed_components(p)),
        ("adding points", adding_points(p)),
    ];
    let ok = parts
        .iter()
        .all(|(_, (bad, total))| *bad == 0 && *total > 0);
    let detail: Vec<String> = parts
        .iter()
        .map(|(name, (bad, total))| format!("{name} {bad}/{total}"))
        .collect();
    outcome(
        ok,
        format!(
            "violations: {}; {:.2} s",
            detail.join(", "),
            start.elapsed().as_secs_f64()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 7] = [
        (
            "1 main theorem sweep, 3<=n<=5, 1<=d<=6, k=5, <= 60 s",
            main_theorem_sweep,
        ),
        ("2 P^3, d=4: 3 sundials + 1 line, dim 0, <= 1 ms", || {
            critical_instance(4, 4, 3, Duration::from_millis(1))
        }),
        ("3 P^3, d=7: 7 sundials + M, dim 0, <= 1 s", || {
            critical_instance(7, 7, 7, Duration::from_secs(1))
        }),
        ("4 proof replays, zero mismatches, <= 5 min", proof_replays),
        ("5 appendix grid and n=4 table, <= 1 s", appendix),
        (
            "6 bidegree instances, dim 0, <= 10 ms each",
            bidegree_instances,
        ),
        ("7 property suites, zero violations", property_suites),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let r = check();
        println!(
            "{} criterion {name}: {}",
            if r.ok { "PASS" } else { "FAIL" },
            r.detail
        );
        if !r.ok {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
