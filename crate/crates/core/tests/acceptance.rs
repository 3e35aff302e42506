//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Run with `cargo test -p quatswarm --test acceptance -- --nocapture` to see
//! the lines and the comparison tables.

use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;

use quatswarm::algorithms::{
    run_seeded, AlgoConfig, AlgorithmId, BatParams, BatSwarm, Evaluator, QuaternionCoding,
    RealCoding, RunRecord,
};
use quatswarm::encoding::{self, BoundsBox, EncodingMode, Genotype};
use quatswarm::harness::report;
use quatswarm::problems::{suite, Function, Problem};
use quatswarm::rng::{seeded, RecordedStream, UnitStream, ZeroStream, NOISE_STREAM, SEARCH_STREAM};
use quatswarm::stats;
use quatswarm::{ComponentMask, Quaternion};

fn verdict(n: u32, name: &str, ok: bool, detail: String) {
    println!(
        "criterion {n} [{}] {name}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} ({name}) failed: {detail}");
}

fn q(c: [f64; 4]) -> Quaternion {
    Quaternion::new(c[0], c[1], c[2], c[3]).unwrap()
}

fn close_rel(a: [f64; 4], b: [f64; 4], scale: f64, tol: f64) -> bool {
    a.iter()
        .zip(&b)
        .all(|(x, y)| (x - y).abs() <= tol * scale.max(1.0))
}

#[test]
fn criterion_1_quaternion_algebra() {
    let started = Instant::now();
    let mut failures = Vec::new();

    let (one, i, j, k) = (Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K);
    let neg = |x: Quaternion| x.try_scale(-1.0).unwrap();
    let table = [
        (i, j, k),
        (j, k, i),
        (k, i, j),
        (j, i, neg(k)),
        (k, j, neg(i)),
        (i, k, neg(j)),
        (i, i, neg(one)),
        (j, j, neg(one)),
        (k, k, neg(one)),
    ];
    for (a, b, expected) in table {
        if a.try_mul(&b).unwrap() != expected {
            failures.push(format!("basis {a} * {b} != {expected}"));
        }
    }
    let ijk = i.try_mul(&j).unwrap().try_mul(&k).unwrap();
    if ijk != neg(one) {
        failures.push(format!("ijk = {ijk}"));
    }

    let mut rng = seeded(2024, SEARCH_STREAM);
    for _ in 0..10_000 {
        let a = Quaternion::random(&mut rng, 10.0).unwrap();
        let b = Quaternion::random(&mut rng, 10.0).unwrap();
        let c = Quaternion::random(&mut rng, 10.0).unwrap();
        let scale = a.norm() * b.norm() * c.norm();

        let left = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let right = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        if !close_rel(left.to_array(), right.to_array(), scale, 1e-9) {
            failures.push(format!("associativity for {a}, {b}, {c}"));
        }

        let nab = a.try_mul(&b).unwrap().norm();
        if (nab - a.norm() * b.norm()).abs() > 1e-9 * (a.norm() * b.norm()).max(1.0) {
            failures.push(format!("norm multiplicativity for {a}, {b}"));
        }

        let n2 = a.norm() * a.norm();
        let prod = a.try_mul(&a.conj()).unwrap().to_array();
        if !close_rel(prod, [n2, 0.0, 0.0, 0.0], n2, 1e-9) {
            failures.push(format!("q * conj(q) for {a}"));
        }
    }

    let elapsed = started.elapsed();
    let ok = failures.is_empty() && elapsed < Duration::from_secs(1);
    verdict(
        1,
        "quaternion algebra",
        ok,
        format!(
            "basis table + 10^4 random triples, {} failures, {:.3}s {:?}",
            failures.len(),
            elapsed.as_secs_f64(),
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_2_encodings() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut rng = seeded(7, SEARCH_STREAM);

    let extremes = [
        0.0,
        1e-300,
        -1e-300,
        1e300,
        -1e300,
        1e154,
        f64::MAX / 4.0,
        5.0,
        -5.0,
    ];
    for problem in suite(10).unwrap() {
        let bounds = problem.bounds();
        for mode in [EncodingMode::QuatNorm, EncodingMode::QuatShiftedNorm] {
            for combo in extremes
                .iter()
                .copied()
                .combinations_with_replacement(4)
                .take(400)
            {
                let g = Genotype::Quat(vec![q([combo[0], combo[1], combo[2], combo[3]]); 10]);
                let x = encoding::decode(&g, bounds, mode).unwrap();
                if !bounds.contains(&x) {
                    failures.push(format!("{} {mode} {combo:?} -> {x:?}", problem.name()));
                }
            }
        }
        for v in extremes {
            let x =
                encoding::decode(&Genotype::Real(vec![v; 10]), bounds, EncodingMode::Real).unwrap();
            if !bounds.contains(&x) {
                failures.push(format!("{} real {v}", problem.name()));
            }
        }
    }

    let bounds = BoundsBox::uniform(1, -5.12, 5.12).unwrap();
    let mut worst_shifted: f64 = 0.0;
    let mut worst_norm: f64 = 0.0;
    for _ in 0..10_000 {
        let x = rng.uniform(-5.12, 5.12);
        let g = encoding::encode(&[x], &bounds, EncodingMode::QuatShiftedNorm).unwrap();
        let back = encoding::decode(&g, &bounds, EncodingMode::QuatShiftedNorm).unwrap()[0];
        worst_shifted = worst_shifted.max((back - x).abs());

        let x = rng.uniform(0.0, 5.12);
        let g = encoding::encode(&[x], &bounds, EncodingMode::QuatNorm).unwrap();
        let back = encoding::decode(&g, &bounds, EncodingMode::QuatNorm).unwrap()[0];
        worst_norm = worst_norm.max((back - x).abs());
    }
    if worst_shifted > 1e-12 || worst_norm > 1e-12 {
        failures.push(format!(
            "round trip errors {worst_shifted:e} / {worst_norm:e}"
        ));
    }

    let elapsed = started.elapsed();
    verdict(
        2,
        "encodings",
        failures.is_empty() && elapsed < Duration::from_secs(1),
        format!(
            "adversarial decodes in-box, round-trip max err shifted {worst_shifted:e} norm {worst_norm:e}, {:.3}s {:?}",
            elapsed.as_secs_f64(),
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_3_problem_oracles() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut rng = seeded(11, SEARCH_STREAM);
    let mut noise = seeded(11, NOISE_STREAM);
    for dim in [2, 10, 30] {
        for problem in suite(dim).unwrap() {
            let tol = if problem.function() == Function::Schwefel226 {
                1e-3
            } else {
                1e-9
            };
            let at_star = problem.evaluate_clean(problem.x_star()).unwrap();
            if (at_star - problem.f_star()).abs() > tol {
                failures.push(format!("{} D={dim}: f(x*) = {at_star}", problem.name()));
            }
            let bounds = problem.bounds();
            for _ in 0..1000 {
                let x: Vec<f64> = bounds
                    .lower()
                    .iter()
                    .zip(bounds.upper())
                    .map(|(&lo, &hi)| rng.uniform(lo, hi))
                    .collect();
                let f = problem.evaluate(&x, &mut noise).unwrap();
                if f < problem.f_star() - tol {
                    failures.push(format!("{} D={dim}: probe {f} beats f*", problem.name()));
                }
            }
        }
    }
    let elapsed = started.elapsed();
    verdict(
        3,
        "problem oracles",
        failures.is_empty() && elapsed < Duration::from_secs(1),
        format!(
            "30 problem instances, 3*10^4 probes, {:.3}s {:?}",
            elapsed.as_secs_f64(),
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    );
}

/// One generation of the bat update on scalar genes, written out by hand.
/// Genes are `[f64; 4]`; the real algorithm uses only the first slot and a
/// single walk draw per coordinate.
struct OracleBat {
    x: Vec<[f64; 4]>,
    v: Vec<[f64; 4]>,
    fitness: f64,
    loudness: f64,
    pulse: f64,
}

fn oracle_generation(
    bats: &mut [OracleBat],
    best: &mut Vec<[f64; 4]>,
    best_fitness: &mut f64,
    draws: &[f64],
    walk_components: usize,
    phenotype: impl Fn(&[[f64; 4]]) -> Vec<f64>,
    params: &BatParams,
    t: f64,
) {
    let sphere = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>();
    let mut d = draws.iter().copied();
    for i in 0..bats.len() {
        let freq = params.f_min + (params.f_max - params.f_min) * d.next().unwrap();
        let mut cand = Vec::new();
        for j in 0..best.len() {
            for c in 0..4 {
                bats[i].v[j][c] += freq * (bats[i].x[j][c] - best[j][c]);
            }
            let mut y = [0.0; 4];
            for c in 0..4 {
                y[c] = bats[i].x[j][c] + bats[i].v[j][c];
            }
            cand.push(y);
        }
        if d.next().unwrap() > bats[i].pulse {
            let mean_a = bats.iter().map(|b| b.loudness).sum::<f64>() / bats.len() as f64;
            for j in 0..best.len() {
                let mut y = best[j];
                for slot in y.iter_mut().take(walk_components) {
                    let eps = -1.0 + 2.0 * d.next().unwrap();
                    *slot += mean_a * eps;
                }
                cand[j] = y;
            }
        }
        let f = sphere(&phenotype(&cand));
        if d.next().unwrap() < bats[i].loudness && f <= bats[i].fitness {
            bats[i].x = cand.clone();
            bats[i].fitness = f;
            bats[i].loudness *= params.alpha;
            bats[i].pulse = params.pulse_rate0 * (1.0 - (-params.gamma * t).exp());
        }
        if f <= *best_fitness {
            *best = cand;
            *best_fitness = f;
        }
    }
    assert!(d.next().is_none(), "oracle left draws unused");
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12
}

#[test]
fn criterion_4_hand_oracle_generations() {
    let params = BatParams::default();
    let mut failures = Vec::new();
    let sphere = Problem::new(Function::Sphere, 1).unwrap();

    // Canonical bat: bat 0 takes the walk and is accepted, bat 1 flies
    // without walking and is rejected.
    let draws = [0.25, 0.7, 0.8, 0.3, 0.5, 0.0, 0.1];
    let mut noise = ZeroStream;
    let mut ev = Evaluator::new(&sphere, &mut noise, 100, 100);
    let mut swarm =
        BatSwarm::from_positions(RealCoding, params, vec![vec![3.0], vec![-1.0]], &mut ev).unwrap();
    let mut rng = RecordedStream::new(draws.to_vec());
    swarm.step(&mut rng, &mut ev).unwrap();

    let start = |x: f64| OracleBat {
        x: vec![[x, 0.0, 0.0, 0.0]],
        v: vec![[0.0; 4]],
        fitness: x * x,
        loudness: params.loudness0,
        pulse: 0.0,
    };
    let mut oracle = vec![start(3.0), start(-1.0)];
    let mut best = vec![[-1.0, 0.0, 0.0, 0.0]];
    let mut best_f = 1.0;
    let clamp = |g: &[[f64; 4]]| {
        g.iter()
            .map(|c| c[0].clamp(-100.0, 100.0))
            .collect::<Vec<_>>()
    };
    oracle_generation(
        &mut oracle,
        &mut best,
        &mut best_f,
        &draws,
        1,
        clamp,
        &params,
        1.0,
    );

    for (b, o) in swarm.bats().iter().zip(&oracle) {
        let same = close(b.position[0], o.x[0][0])
            && close(b.velocity[0], o.v[0][0])
            && close(b.fitness, o.fitness)
            && close(b.loudness, o.loudness)
            && close(b.pulse_rate, o.pulse);
        if !same {
            failures.push(format!("ba bat {:?} vs oracle x={:?} v={:?}", b, o.x, o.v));
        }
    }
    if !close(swarm.best()[0], best[0][0]) || !close(swarm.best_fitness(), best_f) {
        failures.push(format!("ba best {:?} vs {:?}", swarm.best(), best));
    }
    if rng.remaining() != 0 {
        failures.push(format!("ba left {} draws", rng.remaining()));
    }
    // The walk landed at -1 + 0.6 = -0.4 and was accepted.
    if !close(swarm.bats()[0].position[0], -0.4) {
        failures.push("ba walk target".into());
    }

    // Quaternion bat, norm decode: bat 1 walks (four draws) and is accepted,
    // bat 0 flies and is rejected.
    let x0 = [1.0, 2.0, 0.0, -1.0];
    let x1 = [0.5, 0.0, 0.5, 0.0];
    let draws = [0.6, 0.0, 0.9, 0.75, 0.2, 0.4, 0.6, 0.55, 0.5, 0.5];
    let coding = QuaternionCoding::new(EncodingMode::QuatNorm).unwrap();
    let mut ev = Evaluator::new(&sphere, &mut noise, 100, 100);
    let mut swarm =
        BatSwarm::from_positions(coding, params, vec![vec![q(x0)], vec![q(x1)]], &mut ev).unwrap();
    let mut rng = RecordedStream::new(draws.to_vec());
    swarm.step(&mut rng, &mut ev).unwrap();

    let norm = |c: &[f64; 4]| c.iter().map(|v| v * v).sum::<f64>().sqrt();
    let qstart = |x: [f64; 4]| OracleBat {
        x: vec![x],
        v: vec![[0.0; 4]],
        fitness: norm(&x).powi(2),
        loudness: params.loudness0,
        pulse: 0.0,
    };
    let mut oracle = vec![qstart(x0), qstart(x1)];
    let mut best = vec![x1];
    let mut best_f = norm(&x1).powi(2);
    let decode = |g: &[[f64; 4]]| {
        g.iter()
            .map(|c| norm(c).clamp(-100.0, 100.0))
            .collect::<Vec<_>>()
    };
    oracle_generation(
        &mut oracle,
        &mut best,
        &mut best_f,
        &draws,
        4,
        decode,
        &params,
        1.0,
    );

    for (b, o) in swarm.bats().iter().zip(&oracle) {
        let pos = b.position[0].to_array();
        let vel = b.velocity[0].to_array();
        let same = pos.iter().zip(&o.x[0]).all(|(a, b)| close(*a, *b))
            && vel.iter().zip(&o.v[0]).all(|(a, b)| close(*a, *b))
            && close(b.fitness, o.fitness)
            && close(b.loudness, o.loudness)
            && close(b.pulse_rate, o.pulse);
        if !same {
            failures.push(format!("qba bat {:?} vs oracle x={:?} v={:?}", b, o.x, o.v));
        }
    }
    let best_q = swarm.best()[0].to_array();
    if !best_q.iter().zip(&best[0]).all(|(a, b)| close(*a, *b))
        || !close(swarm.best_fitness(), best_f)
    {
        failures.push(format!("qba best {:?} vs {:?}", best_q, best));
    }
    if rng.remaining() != 0 {
        failures.push(format!("qba left {} draws", rng.remaining()));
    }
    if swarm.bats()[1].loudness != params.alpha * params.loudness0 {
        failures.push("qba walk was not accepted".into());
    }

    verdict(
        4,
        "hand-oracle generations",
        failures.is_empty(),
        format!("BA and QBA, NP=2 D=1, recorded draws, tol 1e-12 {failures:?}"),
    );
}

fn json(r: &RunRecord) -> String {
    serde_json::to_string(&r.without_wall_time()).unwrap()
}

#[test]
fn criterion_5_determinism() {
    let mut failures = Vec::new();
    let mut runs = 0;
    for algorithm in AlgorithmId::ALL {
        for function in [
            Function::Sphere,
            Function::Schwefel226,
            Function::QuarticNoise,
            Function::Zakharov,
        ] {
            let problem = Problem::new(function, 5).unwrap();
            let mut cfg = AlgoConfig::for_dimension(5);
            if algorithm == AlgorithmId::Qba {
                cfg = cfg.with_encoding(EncodingMode::quaternion_for(
                    problem.bounds(),
                    problem.x_star(),
                ));
            }
            for seed in [1, 99] {
                let a = run_seeded(algorithm, &problem, &cfg, seed).unwrap();
                let b = run_seeded(algorithm, &problem, &cfg, seed).unwrap();
                runs += 1;
                if json(&a) != json(&b) {
                    failures.push(format!("{algorithm} {function} seed {seed}"));
                }
            }
        }
    }
    verdict(
        5,
        "determinism",
        failures.is_empty(),
        format!("{runs} repeated runs compared bit-for-bit {failures:?}"),
    );
}

#[test]
fn criterion_6_de_sanity() {
    let started = Instant::now();
    let problem = Problem::new(Function::Sphere, 10).unwrap();
    let mut cfg = AlgoConfig::for_dimension(10);
    cfg.population_size = 50;
    cfg.max_evaluations = 100_000;
    cfg.de.f = 0.5;
    cfg.de.cr = 0.9;
    let finals: Vec<f64> = (1..=25u64)
        .map(|seed| {
            run_seeded(AlgorithmId::De, &problem, &cfg, seed)
                .unwrap()
                .final_best_fitness
        })
        .collect();
    let hits = finals.iter().filter(|&&f| f < 1e-8).count();
    let elapsed = started.elapsed();
    verdict(
        6,
        "DE sanity convergence",
        hits >= 24 && elapsed < Duration::from_secs(30),
        format!(
            "{hits}/25 runs below 1e-8, worst {:e}, {:.2}s",
            finals.iter().cloned().fold(f64::MIN, f64::max),
            elapsed.as_secs_f64()
        ),
    );
}

fn cell(algorithm: AlgorithmId, problem: &Problem, mode: EncodingMode) -> Vec<RunRecord> {
    let cfg = AlgoConfig::for_dimension(problem.dim()).with_encoding(mode);
    (1..=25u64)
        .into_par_iter()
        .map(|seed| run_seeded(algorithm, problem, &cfg, seed).unwrap())
        .collect()
}

fn mean(records: &[RunRecord]) -> f64 {
    records.iter().map(|r| r.final_best_fitness).sum::<f64>() / records.len() as f64
}

#[test]
fn criterion_7_quaternion_bat_improves_on_bat() {
    let started = Instant::now();
    let problems = suite(10).unwrap();

    let mut a_priori = Vec::new();
    let mut chosen = Vec::new();
    let mut choices = Vec::new();
    for problem in &problems {
        let ba = cell(AlgorithmId::Ba, problem, EncodingMode::Real);
        let rule = EncodingMode::quaternion_for(problem.bounds(), problem.x_star());
        // Both modes are admissible only where the norm decode covers the
        // whole neighbourhood of the optimum; otherwise the rule fixes the
        // shifted mode.
        let admissible: Vec<EncodingMode> = match rule {
            EncodingMode::QuatNorm => vec![EncodingMode::QuatNorm, EncodingMode::QuatShiftedNorm],
            other => vec![other],
        };
        let mut runs: Vec<(EncodingMode, Vec<RunRecord>)> = admissible
            .iter()
            .map(|&m| (m, cell(AlgorithmId::Qba, problem, m)))
            .collect();
        let rule_runs = runs.iter().find(|(m, _)| *m == rule).unwrap().1.clone();
        runs.sort_by(|a, b| mean(&a.1).total_cmp(&mean(&b.1)));
        let (best_mode, best_runs) = runs.swap_remove(0);
        choices.push(format!("{}={best_mode}", problem.name()));

        a_priori.extend(ba.iter().cloned());
        a_priori.extend(rule_runs);
        chosen.extend(ba);
        chosen.extend(best_runs);
    }

    let rule_report = report(&a_priori).unwrap();
    println!(
        "QBA with the a-priori encoding rule alone:\n{}",
        rule_report.to_text()
    );
    let best_report = report(&chosen).unwrap();
    println!(
        "QBA with the better admissible encoding per problem ({}):",
        choices.join(", ")
    );
    println!("{}", best_report.to_text());

    let tally = best_report.tallies[&AlgorithmId::Ba].clone();
    let elapsed = started.elapsed();
    verdict(
        7,
        "QBA improves on BA",
        tally.mean_not_worse >= 6 && tally.wins >= 3 && elapsed < Duration::from_secs(600),
        format!(
            "mean <= BA on {}/10, significant wins {} (ties {}, losses {}), {:.1}s",
            tally.mean_not_worse,
            tally.wins,
            tally.ties,
            tally.losses,
            elapsed.as_secs_f64()
        ),
    );
}

/// Two-sided exact p-value by listing every assignment of ranks to the
/// first sample.
fn brute_force_p(a: &[f64], b: &[f64]) -> f64 {
    let mut pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    pooled.sort_by(f64::total_cmp);
    let rank = |v: f64| pooled.iter().position(|&p| p == v).unwrap() + 1;
    let n = pooled.len();
    let observed: usize = a.iter().map(|&v| rank(v)).sum();
    let centre = a.len() * (n + 1);
    let dev = |s: usize| (2 * s).abs_diff(centre);
    let (mut extreme, mut total) = (0u64, 0u64);
    for subset in (1..=n).combinations(a.len()) {
        total += 1;
        if dev(subset.iter().sum()) >= dev(observed) {
            extreme += 1;
        }
    }
    extreme as f64 / total as f64
}

#[test]
fn criterion_8_rank_sum_statistics() {
    let mut failures = Vec::new();
    let p1 = stats::ranksum(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0])
        .unwrap()
        .p_value;
    let p2 = stats::ranksum(&[1.0, 2.0, 3.0, 4.0, 5.0], &[6.0, 7.0, 8.0, 9.0, 10.0])
        .unwrap()
        .p_value;
    if (p1 - 0.1).abs() > 1e-9 {
        failures.push(format!("p1 = {p1}"));
    }
    if (p2 - 2.0 / 252.0).abs() > 1e-9 {
        failures.push(format!("p2 = {p2}"));
    }

    let mut rng = seeded(31, SEARCH_STREAM);
    let mut worst_gap: f64 = 0.0;
    for _ in 0..200 {
        let a: Vec<f64> = (0..6).map(|_| rng.next_unit()).collect();
        let b: Vec<f64> = (0..6).map(|_| rng.next_unit() + 0.3).collect();
        let exact = stats::ranksum_exact(&a, &b).unwrap().p_value;
        let normal = stats::ranksum_normal(&a, &b).unwrap().p_value;
        let brute = brute_force_p(&a, &b);
        if (exact - brute).abs() > 1e-12 {
            failures.push(format!("exact {exact} vs enumeration {brute}"));
        }
        worst_gap = worst_gap.max((exact - normal).abs());
    }
    if worst_gap > 0.03 {
        failures.push(format!("normal approximation off by {worst_gap}"));
    }
    verdict(
        8,
        "rank-sum statistics",
        failures.is_empty(),
        format!(
            "p = {p1}, {p2:.6}; 200 random 6v6: max |exact - normal| = {worst_gap:.4} {:?}",
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_9_structural_reduction() {
    let problem = Problem::new(Function::Sphere, 10).unwrap();
    let params = BatParams::default();
    let budget = 10_000;
    let cadence = 30;

    let mut init = seeded(5, SEARCH_STREAM);
    let start: Vec<Vec<f64>> = (0..30)
        .map(|_| (0..10).map(|_| init.uniform(0.0, 50.0)).collect())
        .collect();

    let mut noise = ZeroStream;
    let mut ev_ba = Evaluator::new(&problem, &mut noise, budget, cadence);
    let mut ba = BatSwarm::from_positions(RealCoding, params, start.clone(), &mut ev_ba).unwrap();
    ba.run_to_budget(&mut seeded(6, SEARCH_STREAM), &mut ev_ba)
        .unwrap();

    let coding =
        QuaternionCoding::with_mask(EncodingMode::QuatNorm, ComponentMask::SCALAR).unwrap();
    let lifted = start
        .iter()
        .map(|x| {
            x.iter()
                .map(|&v| Quaternion::from_scalar(v).unwrap())
                .collect()
        })
        .collect();
    let mut noise = ZeroStream;
    let mut ev_qba = Evaluator::new(&problem, &mut noise, budget, cadence);
    let mut qba = BatSwarm::from_positions(coding, params, lifted, &mut ev_qba).unwrap();
    qba.run_to_budget(&mut seeded(6, SEARCH_STREAM), &mut ev_qba)
        .unwrap();

    let (ta, tb) = (ev_ba.trace(), ev_qba.trace());
    let worst = ta
        .iter()
        .zip(tb)
        .map(|(a, b)| {
            if a.evaluations == b.evaluations {
                (a.best_fitness - b.best_fitness).abs()
            } else {
                f64::INFINITY
            }
        })
        .fold(0.0, f64::max);
    let imaginary_zero = qba.bats().iter().all(|b| {
        b.position
            .iter()
            .chain(&b.velocity)
            .all(|g| g.x() == 0.0 && g.y() == 0.0 && g.z() == 0.0)
    });
    let ok = ta.len() == tb.len() && worst <= 1e-12 && imaginary_zero;
    verdict(
        9,
        "structural reduction",
        ok,
        format!(
            "{} checkpoints each, max trace gap {worst:e}, final {:e} vs {:e}",
            ta.len(),
            ba.best_fitness(),
            qba.best_fitness()
        ),
    );
}
