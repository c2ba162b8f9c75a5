//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::Rng;

use glauber::certify::{certified_bound, smallest_spatial_radius, verify_conditions, VerifyOptions};
use glauber::cutwidth::{
    calibrate_gw_shift, cutwidth_exact, gw_cutwidth_stats, mixing_bound_cutwidth, poisson_domination, relaxation_bound,
    tree_cutwidth_ordering_graph,
};
use glauber::dynamics::{
    censoring_dominance_check, disagreement_decay, grand_coupling_run_with, CouplingOptions, DominanceMode, TimeMode,
    UpdateSchedule,
};
use glauber::exact::{conditional_marginal, transition_matrix, MIXING_THRESHOLD};
use glauber::graph::{path, star, Field, Graph, IsingInstance, Spin};
use glauber::rng::{derive_seed, stream, StreamRng};
use glauber::saw::{saw_marginal, DEFAULT_NODE_CAP};
use glauber::stats::linear_fit;
use glauber_cli::args::Family;
use glauber_cli::scan::{run_scan, ScanConfig};

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn random_connected(n: usize, p: f64, rng: &mut StreamRng) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn random_graph(n: usize, p: f64, rng: &mut StreamRng) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.random::<f64>() < p).collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn random_instance(g: &Graph, beta_max: f64, h_max: f64, clamp_p: f64, rng: &mut StreamRng) -> IsingInstance<f64> {
    let edges: Vec<(usize, usize, f64)> = g.edges().map(|(u, v)| (u, v, rng.random::<f64>() * beta_max)).collect();
    let fields: Vec<(usize, Field<f64>)> = (0..g.n())
        .map(|v| {
            let f = if rng.random::<f64>() < clamp_p {
                if rng.random::<bool>() {
                    Field::PlusInfinity
                } else {
                    Field::MinusInfinity
                }
            } else {
                Field::Finite((2.0 * rng.random::<f64>() - 1.0) * h_max)
            };
            (v, f)
        })
        .collect();
    IsingInstance::build(g.n(), &edges, &fields).unwrap()
}

fn spin(rng: &mut StreamRng) -> Spin {
    Spin::from_bool(rng.random())
}

fn saw_identity() -> Outcome {
    let start = Instant::now();
    let mut rng = stream(SEED, "acc-saw", 0);
    let (mut worst, mut checks) = (0.0f64, 0usize);
    for _ in 0..300 {
        let n = rng.random_range(1..=8);
        let p = rng.random::<f64>() * 0.6;
        let g = random_connected(n, p, &mut rng);
        let inst = random_instance(&g, 1.5, 2.0, 0.15, &mut rng);
        let free = inst.free_vertices();
        for &v in &free {
            let mut pins = Vec::new();
            for &u in &free {
                if u != v && rng.random::<f64>() < 0.25 {
                    pins.push((u, spin(&mut rng)));
                }
            }
            let a = saw_marginal(&inst, v, &pins).unwrap();
            let b = conditional_marginal(&inst, v, &pins).unwrap();
            worst = worst.max((a - b).abs());
            checks += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(worst <= 1e-9 && secs < 120.0, format!("{checks} marginals on 300 instances, max error {worst:.2e}, {secs:.1}s"))
}

fn path_decay() -> Outcome {
    let mut worst = 0.0f64;
    for k in 1..=10 {
        for beta in [0.05, 0.3, 0.7, 1.0, 1.5, 2.5] {
            let inst = IsingInstance::<f64>::uniform(&path(k + 1), beta).unwrap();
            let plus = conditional_marginal(&inst, 0, &[(k, Spin::Plus)]).unwrap();
            let minus = conditional_marginal(&inst, 0, &[(k, Spin::Minus)]).unwrap();
            worst = worst.max((plus - minus - beta.tanh().powi(k as i32)).abs());
        }
    }
    outcome(worst <= 1e-12, format!("paths with 1..=10 edges, 6 betas, max error {worst:.2e}"))
}

/// Replays recorded updates with an independent heat-bath rule and counts
/// order violations between the top and bottom chains.
fn replay_violations(inst: &IsingInstance<f64>, trace: &glauber::dynamics::CouplingTrace) -> u64 {
    let n = inst.n();
    let init = |s: i8| -> Vec<i8> { (0..n).map(|v| inst.clamp(v).map_or(s, |c| c.sign())).collect() };
    let (mut top, mut bottom) = (init(1), init(-1));
    let prob = |spins: &[i8], v: usize| -> f64 {
        match inst.field(v) {
            Field::PlusInfinity => 1.0,
            Field::MinusInfinity => 0.0,
            Field::Finite(h) => {
                let local = h + inst.couplings(v).map(|(u, b)| b * spins[u] as f64).sum::<f64>();
                1.0 / (1.0 + (-2.0 * local).exp())
            }
        }
    };
    let mut violations = 0;
    for u in &trace.stream {
        if !u.applied {
            continue;
        }
        let pt = prob(&top, u.vertex);
        let pb = prob(&bottom, u.vertex);
        top[u.vertex] = if u.uniform <= pt { 1 } else { -1 };
        bottom[u.vertex] = if u.uniform <= pb { 1 } else { -1 };
        if top.iter().zip(&bottom).any(|(a, b)| a < b) {
            violations += 1;
        }
    }
    violations
}

fn monotone_sandwich() -> Outcome {
    let mut rng = stream(SEED, "acc-sandwich", 0);
    let (mut updates, mut reported, mut replayed) = (0u64, 0u64, 0u64);
    for i in 0..50u64 {
        let n = rng.random_range(4..=14);
        let g = random_connected(n, rng.random::<f64>() * 0.4, &mut rng);
        let inst = random_instance(&g, 1.5, 1.0, 0.1, &mut rng);
        let schedule = UpdateSchedule::new(TimeMode::Discrete, 20_000.0);
        let opts = CouplingOptions { stop_at_coupling: false, record_updates: true, random_start: Some(derive_seed(SEED, "start", i)) };
        let t = grand_coupling_run_with(&inst, &schedule, &opts, &mut stream(SEED, "acc-sandwich-run", i)).unwrap();
        updates += t.updates;
        reported += t.order_violations;
        replayed += replay_violations(&inst, &t);
    }
    outcome(
        updates >= 1_000_000 && reported == 0 && replayed == 0,
        format!("{updates} coupled updates on 50 instances, {reported} reported and {replayed} replayed violations"),
    )
}

/// All labelled graphs on 1..=4 vertices, with random couplings and fields;
/// every other graph also gets a clamped pendant vertex.
fn small_free_instances(rng: &mut StreamRng) -> Vec<IsingInstance<f64>> {
    let mut out = Vec::new();
    for k in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (0..k).tuple_combinations().collect();
        for mask in 0..1u32 << pairs.len() {
            let chosen: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let pendant = out.len() % 2 == 1;
            let n = k + usize::from(pendant);
            let mut edges: Vec<(usize, usize, f64)> = chosen.iter().map(|&(u, v)| (u, v, rng.random::<f64>() * 1.5)).collect();
            let mut fields: Vec<(usize, Field<f64>)> =
                (0..k).map(|v| (v, Field::Finite((2.0 * rng.random::<f64>() - 1.0) * 1.0))).collect();
            if pendant {
                edges.push((rng.random_range(0..k), k, rng.random::<f64>()));
                fields.push((k, if rng.random() { Field::PlusInfinity } else { Field::MinusInfinity }));
            }
            out.push(IsingInstance::build(n, &edges, &fields).unwrap());
        }
    }
    out
}

fn censoring_dominance() -> Outcome {
    let mut rng = stream(SEED, "acc-censor", 0);
    let instances = small_free_instances(&mut rng);
    let (mut checked, mut failures, mut up_sets) = (0usize, 0usize, 0usize);
    for inst in &instances {
        let sites: Vec<usize> = inst.free_vertices();
        for _ in 0..100 {
            let len = rng.random_range(1..=8);
            let full: Vec<usize> = (0..len).map(|_| sites[rng.random_range(0..sites.len())]).collect();
            let censored: Vec<usize> = full.iter().copied().filter(|_| rng.random::<f64>() < 0.5).collect();
            let r = censoring_dominance_check(inst, &full, &censored, DominanceMode::ExactRational).unwrap();
            checked += 1;
            up_sets += r.up_sets_checked;
            failures += usize::from(!r.holds);
        }
    }
    outcome(
        failures == 0,
        format!("{} instances x 100 pairs, {checked} checks over {up_sets} up-sets, exact rationals, {failures} failures", instances.len()),
    )
}

fn width_of(g: &Graph, order: &[usize]) -> usize {
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    (0..g.n().saturating_sub(1)).map(|cut| g.edges().filter(|&(u, v)| (pos[u] <= cut) != (pos[v] <= cut)).count()).max().unwrap_or(0)
}

fn cutwidth_exactness() -> Outcome {
    let mut rng = stream(SEED, "acc-cutwidth", 0);
    let mut discrepancies = 0;
    for _ in 0..500 {
        let n = rng.random_range(1..=8);
        let g = random_graph(n, rng.random::<f64>(), &mut rng);
        let brute = (0..n).permutations(n).map(|p| width_of(&g, &p)).min().unwrap_or(0);
        let r = cutwidth_exact(&g).unwrap();
        if r.value != brute || width_of(&g, &r.ordering) != r.value {
            discrepancies += 1;
        }
    }
    let mut below = 0;
    for _ in 0..200 {
        let n = rng.random_range(1..=12);
        let t = random_connected(n, 0.0, &mut rng);
        let b = tree_cutwidth_ordering_graph(&t).unwrap();
        if b.value < cutwidth_exact(&t).unwrap().value || width_of(&t, &b.ordering) > b.value {
            below += 1;
        }
    }
    outcome(
        discrepancies == 0 && below == 0,
        format!("500 graphs: {discrepancies} discrepancies; 200 trees: {below} with bound below exact"),
    )
}

fn bound_soundness() -> Outcome {
    let mut rng = stream(SEED, "acc-bounds", 0);
    let (mut bad, mut min_slack) = (0, f64::INFINITY);
    let total = 200;
    for i in 0..total {
        let n = rng.random_range(1..=8);
        let g = random_connected(n, rng.random::<f64>() * 0.5, &mut rng);
        let h_max = if i % 2 == 0 { 1e3 } else { 2.0 };
        let inst = random_instance(&g, 1.5, h_max, 0.15, &mut rng);
        let s = transition_matrix(&inst).unwrap();
        let e = cutwidth_exact(&g).unwrap().value;
        let (d, beta) = (g.max_degree(), inst.beta_max());
        let mix = mixing_bound_cutwidth(n, beta, e, d);
        let relax = relaxation_bound(n, beta, e, d);
        let t_mix = s.continuous_mixing_time().unwrap();
        if mix < t_mix || relax < s.relaxation_time {
            bad += 1;
        }
        min_slack = min_slack.min((mix / t_mix).min(relax / s.relaxation_time));
    }
    outcome(bad == 0, format!("{total} instances (half with |h| up to 1e3, clamps), {bad} violations, min bound/exact {min_slack:.3}"))
}

fn certificate_soundness() -> Outcome {
    let mut rng = stream(SEED, "acc-certify", 0);
    let (mut issued, mut bad, mut tried) = (0, 0, 0);
    let (mut worst_tv, mut worst_gap_ratio) = (0.0f64, f64::INFINITY);
    while issued < 60 && tried < 600 {
        tried += 1;
        let n = rng.random_range(2..=10);
        let g = random_connected(n, 0.12, &mut rng);
        let inst = random_instance(&g, 0.5, 1.0, 0.1, &mut rng);
        if inst.free_vertices().len() > 10 {
            continue;
        }
        let Some(r) = smallest_spatial_radius(&inst, n + 1, DEFAULT_NODE_CAP).unwrap() else {
            continue;
        };
        let rep = match verify_conditions(&inst, r, &VerifyOptions::default()) {
            Ok(rep) => rep,
            Err(e) if e.is_size_cap() => continue,
            Err(e) => panic!("{e}"),
        };
        let Ok(cert) = certified_bound(&rep, n) else {
            continue;
        };
        issued += 1;
        let s = transition_matrix(&inst).unwrap();
        let tv = s.continuous_tv(cert.continuous);
        let gap_ratio = s.continuous_gap() / cert.gap;
        worst_tv = worst_tv.max(tv);
        worst_gap_ratio = worst_gap_ratio.min(gap_ratio);
        if tv > MIXING_THRESHOLD || gap_ratio < 1.0 {
            bad += 1;
        }
    }
    outcome(
        issued >= 50 && bad == 0,
        format!(
            "{issued} certificates from {tried} instances, {bad} unsound; max TV at bound {worst_tv:.2e}, min exact/certified gap {worst_gap_ratio:.2}"
        ),
    )
}

fn below_config() -> ScanConfig {
    ScanConfig {
        family: Family::Regular,
        ns: vec![64, 128, 256, 512, 1024],
        d: Some(3.0),
        betas: Vec::new(),
        ratios: vec![0.8],
        field: 0.0,
        replicas: 200,
        horizon: 1e9,
        mode: TimeMode::Discrete,
        seed: SEED,
    }
}

fn below_threshold(median_1024: &mut Option<f64>) -> Outcome {
    let start = Instant::now();
    let out = run_scan(&below_config()).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let ratios: Vec<String> = out
        .summary
        .points
        .iter()
        .map(|p| p.median_over_n_ln_n.map_or("censored".to_string(), |r| format!("{}:{r:.3}", p.n)))
        .collect();
    *median_1024 = out.summary.points.last().and_then(|p| p.median);
    let variation = out.summary.fits[0].ratio_variation;
    let censored: usize = out.summary.points.iter().map(|p| p.censored).sum();
    outcome(
        variation.is_some_and(|v| v <= 0.25) && secs < 600.0,
        format!(
            "median/(n ln n) = [{}], variation {}, {censored} censored, {secs:.1}s",
            ratios.join(" "),
            variation.map_or("n/a".into(), |v| format!("{:.1}%", 100.0 * v))
        ),
    )
}

fn above_threshold(median_1024: Option<f64>) -> Outcome {
    let cfg = ScanConfig {
        family: Family::Regular,
        ns: vec![32, 48, 64],
        d: Some(4.0),
        betas: Vec::new(),
        ratios: vec![1.5],
        field: 0.0,
        replicas: 25,
        horizon: 1e8,
        mode: TimeMode::Discrete,
        seed: SEED,
    };
    let out = run_scan(&cfg).unwrap();
    let pts = &out.summary.points;
    let fit = out.summary.fits[0].log_time_vs_n.clone().unwrap();
    // a censored median is at least the horizon
    let med = |i: usize| pts[i].median.unwrap_or(cfg.horizon);
    let superlinear = (1..pts.len()).all(|i| med(i) / pts[i].n as f64 > med(i - 1) / pts[i - 1].n as f64);
    let beats = median_1024.is_some_and(|m| med(pts.len() - 1) > m);
    outcome(
        superlinear && fit.slope_lo > 0.0 && beats,
        format!(
            "medians {:.3e} {:.3e} {:.3e} (censored {} {} {}), ln-time slope {:.4} CI [{:.4}, {:.4}], below-threshold n=1024 median {}",
            med(0),
            med(1),
            med(2),
            pts[0].censored,
            pts[1].censored,
            pts[2].censored,
            fit.slope,
            fit.slope_lo,
            fit.slope_hi,
            median_1024.map_or("n/a".into(), |m| format!("{m:.3e}"))
        ),
    )
}

/// Decay rate of the mean disagreement count, fitted where it has fallen
/// below a fifth of its start and is still well above sampling noise.
fn decay_rate(inst: &IsingInstance<f64>, k: usize) -> Option<f64> {
    let n = inst.n() as f64;
    let replicas = 20_000u64;
    let floor = 50.0 / replicas as f64;
    // horizon from a pilot run, doubled until the mean count is near the floor
    let mut horizon = 4.0;
    loop {
        let pilot = disagreement_decay(inst, &[horizon], 2_000, derive_seed(SEED, "star-pilot", k as u64)).ok()?;
        if pilot.mean_disagreements[0] < 2.0 * floor || horizon > 1e4 {
            break;
        }
        horizon *= 2.0;
    }
    let times: Vec<f64> = (1..=80).map(|i| horizon * i as f64 / 80.0).collect();
    let curve = disagreement_decay(inst, &times, replicas, derive_seed(SEED, "star-decay", k as u64)).ok()?;
    let (xs, ys): (Vec<f64>, Vec<f64>) = curve
        .times
        .iter()
        .zip(&curve.mean_disagreements)
        .filter(|(_, &m)| m <= 0.2 * n && m >= floor)
        .map(|(&t, &m)| (t, m.ln()))
        .unzip();
    linear_fit(&xs, &ys).map(|f| -f.slope)
}

fn star_bottleneck() -> Outcome {
    let mut gaps = Vec::new();
    let mut worst_rel = 0.0f64;
    let mut cells = Vec::new();
    let mut fitted = true;
    for k in 2..=10 {
        let inst = IsingInstance::<f64>::uniform(&star(k), 1.0).unwrap();
        let gap = transition_matrix(&inst).unwrap().continuous_gap();
        gaps.push(gap);
        match decay_rate(&inst, k) {
            Some(est) => {
                let rel = (est - gap).abs() / gap;
                worst_rel = worst_rel.max(rel);
                cells.push(format!("k={k}:{gap:.4}/{est:.4}"));
            }
            None => {
                fitted = false;
                cells.push(format!("k={k}:{gap:.4}/none"));
            }
        }
    }
    let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
    outcome(
        decreasing && fitted && worst_rel <= 0.2,
        format!(
            "exact/estimated continuous gap [{}], strictly decreasing {decreasing}, max relative error {:.1}%",
            cells.join(" "),
            100.0 * worst_rel
        ),
    )
}

fn gw_domination() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for d in [2.0, 3.0] {
        let mut per_depth = Vec::new();
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        for l in 1..=8usize {
            let s = gw_cutwidth_stats(d, l, 10_000, derive_seed(SEED, "acc-gw", (d as u64) << 8 | l as u64), 0).unwrap();
            xs.push(l as f64);
            ys.push(s.mean);
            per_depth.push((l, s.bounds));
        }
        let shift = calibrate_gw_shift(d, &per_depth, 64);
        let fit = linear_fit(&xs, &ys).unwrap();
        let holds = shift.is_some_and(|c| per_depth.iter().all(|(l, s)| poisson_domination(s, c * *l as u32, d).holds));
        pass &= holds && fit.slope > 0.0 && fit.r_squared >= 0.95;
        parts.push(format!(
            "d={d}: C'={} slope {:.3} R^2 {:.4}",
            shift.map_or("none".into(), |c| c.to_string()),
            fit.slope,
            fit.r_squared
        ));
    }
    outcome(pass, parts.join("; "))
}

fn reproducibility() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let csv = dir.path().join(format!("scan-{threads}.csv"));
        let argv: Vec<String> = [
            "glauber", "scan", "--family", "regular", "--d", "3", "--n", "64,128", "--ratio", "0.8,1.2", "--replicas", "24",
            "--horizon", "1e7", "--seed", "99", "--format", "csv", "--threads", threads, "--out",
        ]
        .iter()
        .map(|s| s.to_string())
        .chain([csv.to_str().unwrap().to_string()])
        .collect();
        glauber_cli::run(argv, &mut std::io::sink()).unwrap();
        let json = dir.path().join(format!("scan-{threads}.csv.summary.json"));
        outputs.push((std::fs::read(&csv).unwrap(), std::fs::read(&json).unwrap()));
    }
    let same = outputs[0] == outputs[1];
    outcome(same, format!("scan CSV ({} bytes) and JSON summary identical for --threads 1 and 4: {same}", outputs[0].0.len()))
}

fn main() {
    let mut median_1024 = None;
    let mut results: Vec<(usize, &str, Outcome, Duration)> = Vec::new();
    let mut record = |i: usize, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        let el = start.elapsed();
        println!("criterion {i:>2} {name}: {} ({}) [{:.1}s]", if o.pass { "PASS" } else { "FAIL" }, o.detail, el.as_secs_f64());
        results.push((i, name, o, el));
    };
    record(1, "SAW identity", &mut saw_identity);
    record(2, "path decay", &mut path_decay);
    record(3, "monotone sandwich", &mut monotone_sandwich);
    record(4, "censoring dominance", &mut censoring_dominance);
    record(5, "cut-width exactness", &mut cutwidth_exactness);
    record(6, "bound soundness", &mut bound_soundness);
    record(7, "certificate soundness", &mut certificate_soundness);
    record(8, "below-threshold scaling", &mut || below_threshold(&mut median_1024));
    record(9, "above-threshold slowdown", &mut || above_threshold(median_1024));
    record(10, "star bottleneck", &mut star_bottleneck);
    record(11, "GW cut-width domination", &mut gw_domination);
    record(12, "reproducibility", &mut reproducibility);
    let failed: Vec<usize> = results.iter().filter(|r| !r.2.pass).map(|r| r.0).collect();
    println!("acceptance: {} of {} criteria passed", results.len() - failed.len(), results.len());
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
