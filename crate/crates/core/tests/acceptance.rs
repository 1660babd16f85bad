//! Acceptance checks. Each criterion prints one PASS or FAIL line; the
//! process exits non-zero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use dpcolor::cycles::ForbiddenVariant;
use dpcolor::discharging::{apply_rules, initial_charges, lemma5_bound, Charge, PathCounts, RuleVariant};
use dpcolor::families::{self, random_plane};
use dpcolor::graph6::parse_graph6;
use dpcolor::reducibility::{extend_coloring, min_degree_extend};
use dpcolor::solver::{chi_dp, chi_list, is_dp_k_colorable, SearchOptions};
use dpcolor::verify::{is_planar_small, verify_stream, VerifyOptions};
use dpcolor::{Graph, PlaneEmbedding};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || format!("took {:?}, limit {:?}", start.elapsed(), limit))
}

/// 250 random connected plane embeddings, 1 to 12 vertices.
fn corpus() -> Vec<PlaneEmbedding> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..250)
        .map(|_| {
            let n = rng.gen_range(1..=12);
            let chords = rng.gen_range(0..=2 * n);
            random_plane(&mut rng, n, chords)
        })
        .collect()
}

fn small_connected(max_n: usize) -> Vec<Graph> {
    common::fixture_lines().iter().map(|l| parse_graph6(l).unwrap()).filter(|g| g.n() <= max_n).collect()
}

fn charge_identity() -> Result<String, String> {
    let start = Instant::now();
    let corpus = corpus();
    for (i, emb) in corpus.iter().enumerate() {
        ensure(emb.graph().is_connected(), || format!("embedding {i} is disconnected"))?;
        let g = emb.graph();
        let by_hand: i64 = (0..g.n()).map(|v| g.degree(v) as i64 - 4).sum::<i64>()
            + emb.faces().iter().map(|f| f.len() as i64 - 4).sum::<i64>();
        ensure(by_hand == -8, || format!("embedding {i}: sum {by_hand}"))?;
        ensure(emb.charge_sum() == -8, || format!("embedding {i}: charge_sum {}", emb.charge_sum()))?;
        let init = initial_charges(emb).map_err(|e| e.to_string())?;
        ensure(init.total() == Charge::from_integer(-8), || format!("embedding {i}: {}", init.total()))?;
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("{} embeddings, all sum to -8 ({:?})", corpus.len(), start.elapsed()))
}

fn conservation() -> Result<String, String> {
    let corpus = corpus();
    let mut transfers = 0;
    for (i, emb) in corpus.iter().enumerate() {
        for v in [RuleVariant::A, RuleVariant::B67, RuleVariant::B68] {
            let s = apply_rules(emb, v).map_err(|e| format!("embedding {i}, {v}: {e}"))?;
            ensure(s.phase_totals.len() == 8, || format!("embedding {i}: {} phase totals", s.phase_totals.len()))?;
            ensure(s.phase_totals.iter().all(|&t| t == Charge::from_integer(-8)), || {
                format!("embedding {i}, {v}: {:?}", s.phase_totals)
            })?;
            transfers += s.log.len();
        }
    }
    Ok(format!("{} embeddings x 3 rule sets, 7 phases each, {transfers} transfers", corpus.len()))
}

fn long_form_budget() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let third = |n: usize| Charge::new(n as i64, 3);
    for _ in 0..10_000 {
        let d = rng.gen_range(10..=20);
        let mut t = PathCounts::new();
        let mut left = d;
        while left > 0 {
            let i = if rng.gen_bool(0.3) { 1 } else { rng.gen_range(2..=left.max(2)) }.min(left);
            *t.entry(i).or_default() += 1;
            left -= i;
        }
        let x = match d {
            10 => 2,
            11 => 1,
            _ => 0,
        };
        let count = |i: usize| t.get(&i).copied().unwrap_or(0);
        let mut long = -third(x) + third(count(1));
        for i in 1..=d {
            long += third(i * count(i));
            if i >= 2 {
                long += third(2 * count(i));
            }
            if i >= 3 {
                long += third((i - 2) * count(i));
            }
        }
        let closed = Charge::new(2 * d as i64, 3) - third(x);
        ensure(long == closed, || format!("{t:?}, d = {d}: {long} != {closed}"))?;
        let lib = catch_unwind(|| lemma5_bound(&t, d)).map_err(|_| format!("library rejected {t:?}, d = {d}"))?;
        ensure(lib == closed, || format!("{t:?}: library {lib}"))?;
    }
    Ok("10000 run-count vectors, lengths 10 to 20, exact".into())
}

fn even_cycles() -> Result<String, String> {
    let start = Instant::now();
    let opts = SearchOptions::default();
    for m in [4, 6, 8] {
        let c = families::cycle(m);
        let l = chi_list(&c, &opts).map_err(|e| e.to_string())?.value;
        let dp = chi_dp(&c, &opts).map_err(|e| e.to_string())?.value;
        ensure(l == 2 && dp == 3, || format!("C{m}: list {l}, DP {dp}"))?;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("C4, C6, C8: list 2, DP 3 ({:?})", start.elapsed()))
}

fn chain() -> Result<String, String> {
    let start = Instant::now();
    let opts = SearchOptions::default();
    let graphs = small_connected(5);
    let mut strict = 0;
    for g in &graphs {
        let chi = common::brute_chromatic(g);
        let l = chi_list(g, &opts).map_err(|e| e.to_string())?.value;
        let dp = chi_dp(g, &opts).map_err(|e| e.to_string())?.value;
        ensure(chi <= l && l <= dp, || format!("{:?}: {chi} {l} {dp}", g.edges()))?;
        strict += usize::from(l < dp);
    }
    within(start, Duration::from_secs(600))?;
    Ok(format!("{} graphs, list < DP on {strict} ({:?})", graphs.len(), start.elapsed()))
}

fn normalization() -> Result<String, String> {
    let start = Instant::now();
    let opts = SearchOptions::default();
    let graphs = small_connected(5);
    let mut refuted = 0;
    for g in &graphs {
        let fast = is_dp_k_colorable(g, 2, &opts).map_err(|e| e.to_string())?.is_colorable();
        let full = common::brute_dp_colorable(g, 2);
        ensure(fast == full, || format!("{:?}: normalized {fast}, all matchings {full}", g.edges()))?;
        refuted += usize::from(!full);
    }
    within(start, Duration::from_secs(600))?;
    Ok(format!("{} graphs at k = 2, {refuted} not colorable, verdicts agree ({:?})", graphs.len(), start.elapsed()))
}

fn extension() -> Result<String, String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..1000 {
        let inst = common::low_degree_instance(&mut rng);
        let c = min_degree_extend(&inst.g, inst.h[0], &inst.lists, &inst.m, &inst.partial)
            .map_err(|e| format!("low-degree instance {i}: {e}"))?;
        ensure(common::valid_dp(&inst.g, &inst.lists, &inst.m, &c.0), || format!("low-degree instance {i}: invalid"))?;
    }
    let mut rejected = 0;
    for i in 0..1000 {
        let (inst, r) = common::ordered_instance(&mut rng);
        rejected += r;
        let c = extend_coloring(&inst.g, &inst.h, &inst.lists, &inst.m, &inst.partial)
            .map_err(|e| format!("ordered instance {i}: {e}"))?;
        ensure(common::valid_dp(&inst.g, &inst.lists, &inst.m, &c.0), || format!("ordered instance {i}: invalid"))?;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "1000 low-degree and 1000 ordered instances extend, all valid ({rejected} draws rejected, {:?})",
        start.elapsed()
    ))
}

fn desk_scale() -> Result<String, String> {
    let start = Instant::now();
    let lines = common::fixture_lines();
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let summary = verify_stream(&lines, &VerifyOptions { jobs, ..VerifyOptions::default() });
    // Independent counts: planarity from the library, cycle lengths by
    // plain path enumeration.
    let mut planar = 0;
    let mut expect: BTreeMap<ForbiddenVariant, usize> = BTreeMap::new();
    for l in &lines {
        let g = parse_graph6(l).unwrap();
        if !is_planar_small(&g).map_err(|e| format!("{l}: {e:?}"))? {
            continue;
        }
        planar += 1;
        let lens = common::naive_cycle_lengths(&g);
        for v in ForbiddenVariant::ALL {
            if v.lengths().iter().all(|x| !lens.contains(x)) {
                *expect.entry(v).or_default() += 1;
            }
        }
    }
    // Connected planar graphs on 1..=7 vertices.
    ensure(planar == 1 + 1 + 2 + 6 + 20 + 99 + 646, || format!("{planar} planar graphs"))?;
    let mut parts = Vec::new();
    for (v, t) in &summary.per_variant {
        ensure(t.checked == expect[v], || format!("{}: {} checked, expected {}", v.label(), t.checked, expect[v]))?;
        ensure(t.refuted == 0, || format!("{}: {} certificates", v.label(), t.refuted))?;
        ensure(t.colorable + t.budget == t.checked, || format!("{}: {t:?}", v.label()))?;
        parts.push(format!("{} {}/{}", v.label(), t.colorable, t.checked));
    }
    let budget = summary.budget_count();
    ensure(budget == 0, || format!("{budget} graphs over budget"))?;
    within(start, Duration::from_secs(1800))?;
    Ok(format!(
        "{} graphs read, DP-3-colorable: {}; 0 certificates, {budget} over budget ({:?})",
        summary.total,
        parts.join(", "),
        start.elapsed()
    ))
}

fn known_values() -> Result<String, String> {
    let opts = SearchOptions::default();
    for n in 1..=4 {
        let v = chi_dp(&families::complete(n), &opts).map_err(|e| e.to_string())?.value;
        ensure(v == n, || format!("K{n}: {v}"))?;
    }
    for m in 3..=8 {
        let v = chi_dp(&families::cycle(m), &opts).map_err(|e| e.to_string())?.value;
        ensure(v == 3, || format!("C{m}: {v}"))?;
    }
    Ok("K1..K4 give 1..4, C3..C8 give 3".into())
}

fn main() {
    let checks: [(&str, Check); 9] = [
        ("charge identity", charge_identity),
        ("conservation per phase", conservation),
        ("long-form face budget identity", long_form_budget),
        ("even cycles: list 2, DP 3", even_cycles),
        ("chain chi <= list <= DP", chain),
        ("normalized adversary vs all matchings", normalization),
        ("extension on random instances", extension),
        ("DP-3 on small planar graphs", desk_scale),
        ("known DP values", known_values),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", 9 - failed, 9);
    if failed > 0 {
        std::process::exit(1);
    }
}
