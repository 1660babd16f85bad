use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use dpcolor::cycles::{satisfied_variants, DEFAULT_MAX_LEN};
use dpcolor::discharging::{fraction, AuditOptions, Element};
use dpcolor::dp::{is_valid_coloring, Matching, MAX_COLORS};
use dpcolor::reducibility::{certify_reducible_any_order, extend_reducible, Certification};
use dpcolor::solver::proper_coloring;
use dpcolor::verify::Outcome;
use dpcolor::{
    audit, certify_reducible, chi, chi_dp, chi_list, cycle_spectrum, find_coloring, find_pattern, from_list_assignment,
    is_dp_k_colorable, is_k_choosable, min_degree_extend, verify_stream, Color, ForbiddenVariant, Graph,
    ListAssignment, MatchingAssignment, RuleVariant, SearchOptions, SolverError, Verdict, VerifyOptions,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::input::{self, Loaded};
use crate::{Cli, Command, Decide, Global, EXIT_BUDGET, EXIT_CERTIFICATE, EXIT_OK};

pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

pub fn run(cli: &Cli) -> Result<u8> {
    let g = &cli.global;
    let report = match &cli.command {
        Command::Cycles(i) => cycles(&input::load(&i.input, g.format)?.into_graph()),
        Command::Chi(i) => chi_cmd(&input::load(&i.input, g.format)?.into_graph()),
        Command::ChiList(d) => chi_list_cmd(d, g)?,
        Command::ChiDp(d) => chi_dp_cmd(d, g)?,
        Command::Color { input: i, k, lists, matchings } => {
            let graph = input::load(&i.input, g.format)?.into_graph();
            color(&graph, *k, lists.as_deref(), matchings.as_deref())?
        }
        Command::Extend { input: i, pattern, k, search_order, trials } => {
            let graph = input::load(&i.input, g.format)?.into_graph();
            extend(&graph, pattern, *k, *search_order, *trials, g)?
        }
        Command::FindConfig { input: i, pattern } => {
            let graph = input::load(&i.input, g.format)?.into_graph();
            find_config(&graph, pattern)?
        }
        Command::Discharge { input: i, variant, strict, log, pattern } => {
            discharge(input::load(&i.input, g.format)?, *variant, *strict, log.as_deref(), pattern)?
        }
        Command::VerifyTheorem2 { input: i, variant, k, n_max, certificate } => {
            verify(i, variant, *k, *n_max, certificate.as_deref(), g)?
        }
    };
    if let Some(path) = &g.sidecar {
        write(path, &format!("{:#}\n", report.json))?;
    }
    if g.json {
        println!("{:#}", report.json);
    } else {
        print!("{}", report.text);
    }
    Ok(report.code)
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn parse_forbidden(s: &str) -> Result<ForbiddenVariant, String> {
    match s.parse::<RuleVariant>() {
        Ok(v) => Ok(v.forbidden()),
        Err(_) => s.parse::<ForbiddenVariant>(),
    }
}

fn search_options(g: &Global) -> SearchOptions {
    SearchOptions { budget: g.budget, jobs: g.jobs.max(1), ..SearchOptions::default() }
}

fn check_k(k: usize) -> Result<()> {
    if !(1..=MAX_COLORS).contains(&k) {
        bail!("k = {k} is outside 1..={MAX_COLORS}");
    }
    Ok(())
}

/// Budget and size limits become exit code 2; anything else is an error.
fn limit_report(e: SolverError) -> Result<Report> {
    match e {
        SolverError::BudgetExceeded { required, budget, scanned } => Ok(Report {
            text: format!("budget exceeded: {required} cases needed, budget {budget}, {scanned} scanned\n"),
            json: json!({"outcome": "budget", "required": required, "budget": budget, "scanned": scanned}),
            code: EXIT_BUDGET,
        }),
        SolverError::TooLarge { n, max } => Ok(Report {
            text: format!("too large: {n} vertices, limit {max}\n"),
            json: json!({"outcome": "too_large", "n": n, "max": max}),
            code: EXIT_BUDGET,
        }),
        other => Err(other.into()),
    }
}

fn variants_text(vs: &std::collections::BTreeSet<ForbiddenVariant>) -> String {
    match vs.len() {
        0 => "none".to_string(),
        n if n == ForbiddenVariant::ALL.len() => "all".to_string(),
        _ => vs.iter().map(|v| v.label()).collect::<Vec<_>>().join(" "),
    }
}

fn cycles(g: &Graph) -> Report {
    let spectrum = cycle_spectrum(g, DEFAULT_MAX_LEN);
    let vs = satisfied_variants(&spectrum);
    Report {
        text: format!("spectrum {spectrum}; variants: {}\n", variants_text(&vs)),
        json: json!({
            "spectrum": spectrum.present,
            "search_bound": spectrum.search_bound,
            "variants": vs.iter().map(|v| v.label()).collect::<Vec<_>>(),
        }),
        code: EXIT_OK,
    }
}

fn chi_cmd(g: &Graph) -> Report {
    let value = chi(g);
    let coloring = proper_coloring(g, value).unwrap_or_default();
    let cs: Vec<String> = coloring.iter().map(usize::to_string).collect();
    Report {
        text: format!("chi = {value}\ncoloring: {}\n", cs.join(" ")),
        json: json!({"chi": value, "coloring": coloring}),
        code: EXIT_OK,
    }
}

fn save_certificate(path: Option<&Path>, body: &str, text: &mut String) -> Result<()> {
    match path {
        Some(p) => {
            write(p, body)?;
            let _ = writeln!(text, "certificate written to {}", p.display());
        }
        None => text.push_str(body),
    }
    Ok(())
}

fn chi_list_cmd(d: &Decide, g: &Global) -> Result<Report> {
    let graph = input::load(&d.input.input, g.format)?.into_graph();
    let opts = search_options(g);
    if let Some(k) = d.k {
        check_k(k)?;
        return match is_k_choosable(&graph, k, &opts) {
            Ok(Verdict::Colorable { cases }) => Ok(Report {
                text: format!("{k}-choosable: yes ({cases} list systems)\n"),
                json: json!({"k": k, "choosable": true, "cases": cases}),
                code: EXIT_OK,
            }),
            Ok(Verdict::Certificate(c)) => {
                let mut text = format!("{k}-choosable: no\n");
                let body = c.to_text();
                save_certificate(d.certificate.as_deref(), &body, &mut text)?;
                Ok(Report {
                    text,
                    json: json!({"k": k, "choosable": false, "certificate": body}),
                    code: EXIT_CERTIFICATE,
                })
            }
            Err(e) => limit_report(e),
        };
    }
    match chi_list(&graph, &opts) {
        Ok(r) => {
            let mut text = format!("chi_list = {}{}\n", r.value, if r.by_degeneracy { " (degeneracy bound)" } else { "" });
            let body = r.lower_witness.as_ref().map(|c| c.to_text());
            if let Some(b) = &body {
                let _ = writeln!(text, "lists with no coloring from {} colors each:", r.value - 1);
                save_certificate(d.certificate.as_deref(), b, &mut text)?;
            }
            Ok(Report {
                text,
                json: json!({"chi_list": r.value, "by_degeneracy": r.by_degeneracy, "certificate": body}),
                code: EXIT_OK,
            })
        }
        Err(e) => limit_report(e),
    }
}

fn chi_dp_cmd(d: &Decide, g: &Global) -> Result<Report> {
    let graph = input::load(&d.input.input, g.format)?.into_graph();
    let opts = search_options(g);
    if let Some(k) = d.k {
        check_k(k)?;
        return match is_dp_k_colorable(&graph, k, &opts) {
            Ok(Verdict::Colorable { cases }) => Ok(Report {
                text: format!("DP-{k}-colorable: yes ({cases} matching assignments)\n"),
                json: json!({"k": k, "colorable": true, "cases": cases}),
                code: EXIT_OK,
            }),
            Ok(Verdict::Certificate(c)) => {
                let mut text = format!("DP-{k}-colorable: no\n");
                let body = c.to_matching_file(&graph);
                save_certificate(d.certificate.as_deref(), &body, &mut text)?;
                Ok(Report {
                    text,
                    json: json!({"k": k, "colorable": false, "certificate": body}),
                    code: EXIT_CERTIFICATE,
                })
            }
            Err(e) => limit_report(e),
        };
    }
    match chi_dp(&graph, &opts) {
        Ok(r) => {
            let mut text = format!("chi_DP = {}{}\n", r.value, if r.by_degeneracy { " (degeneracy bound)" } else { "" });
            let body = r.lower_witness.as_ref().map(|c| c.to_matching_file(&graph));
            if let Some(b) = &body {
                save_certificate(d.certificate.as_deref(), b, &mut text)?;
            }
            Ok(Report {
                text,
                json: json!({"chi_dp": r.value, "by_degeneracy": r.by_degeneracy, "certificate": body}),
                code: EXIT_OK,
            })
        }
        Err(e) => limit_report(e),
    }
}

fn color(g: &Graph, k: usize, lists: Option<&Path>, matchings: Option<&Path>) -> Result<Report> {
    let lists = match lists {
        Some(p) => input::load_lists(p, g.n())?,
        None => {
            check_k(k)?;
            ListAssignment::uniform(g.n(), k)
        }
    };
    let found = match matchings {
        Some(p) => {
            let m = input::load_matchings(p, g)?;
            find_coloring(g, &lists, &m)?.map(|c| c.0)
        }
        None => {
            let r = from_list_assignment(g, &lists)?;
            find_coloring(g, &r.lists, &r.matching)?.map(|c| r.pull_back(&c))
        }
    };
    Ok(match found {
        Some(c) => {
            let cs: Vec<String> = c.iter().map(Color::to_string).collect();
            Report {
                text: format!("coloring: {}\n", cs.join(" ")),
                json: json!({"colorable": true, "coloring": c}),
                code: EXIT_OK,
            }
        }
        None => Report {
            text: "no coloring\n".into(),
            json: json!({"colorable": false}),
            code: EXIT_CERTIFICATE,
        },
    })
}

fn certification_text(c: &Certification, text: &mut String) {
    let order: Vec<String> = c.order.iter().map(usize::to_string).collect();
    let _ = writeln!(text, "order: {}", order.join(" "));
    let _ = writeln!(text, "occurrences: {}", c.embeddings.len());
    for (emb, failures) in &c.failures {
        let at: Vec<String> = emb.iter().map(usize::to_string).collect();
        for f in failures {
            let _ = writeln!(text, "fails at [{}]: {f}", at.join(" "));
        }
    }
}

/// Random matchings of size `k` lists: a random permutation per edge, each
/// pair kept with probability 3/4.
fn random_matchings(rng: &mut ChaCha8Rng, g: &Graph, k: usize) -> MatchingAssignment {
    let ms = (0..g.edge_count())
        .map(|_| {
            let mut perm: Vec<Color> = (0..k as Color).collect();
            perm.shuffle(rng);
            let pairs: Vec<(Color, Color)> =
                perm.iter().enumerate().filter(|_| rng.gen_bool(0.75)).map(|(a, &b)| (a as Color, b)).collect();
            Matching::from_pairs(&pairs).expect("permutation pairs")
        })
        .collect();
    MatchingAssignment::from_matchings(ms)
}

/// A random valid coloring of every vertex outside `h`, or `None` after
/// repeated dead ends.
fn random_outside_coloring(
    rng: &mut ChaCha8Rng,
    g: &Graph,
    h: &[usize],
    k: usize,
    m: &MatchingAssignment,
) -> Option<Vec<Option<Color>>> {
    let mut rest: Vec<usize> = (0..g.n()).filter(|v| !h.contains(v)).collect();
    'attempt: for _ in 0..50 {
        rest.shuffle(rng);
        let mut partial = vec![None; g.n()];
        for &v in &rest {
            let free: Vec<Color> = (0..k as Color)
                .filter(|&c| {
                    g.neighbors(v)
                        .iter()
                        .all(|&w| partial[w].is_none_or(|cw| m.partner(g, v, w, c) != Some(cw)))
                })
                .collect();
            match free.choose(rng) {
                Some(&c) => partial[v] = Some(c),
                None => continue 'attempt,
            }
        }
        return Some(partial);
    }
    None
}

enum Trial {
    Extended,
    Skipped,
    Failed(String),
}

fn extend(g: &Graph, pattern: &Path, k: usize, search_order: bool, trials: usize, opts: &Global) -> Result<Report> {
    check_k(k)?;
    let p = input::load_pattern(pattern)?;
    let cert = if search_order { certify_reducible_any_order(g, &p, k)? } else { certify_reducible(g, &p, k) };
    let mut text = String::new();
    let _ = writeln!(text, "reducible for k = {k}: {}", if cert.reducible { "yes" } else { "no" });
    certification_text(&cert, &mut text);
    if !cert.reducible || cert.embeddings.is_empty() {
        return Ok(Report {
            text,
            json: json!({"k": k, "certification": cert}),
            code: if cert.reducible { EXIT_OK } else { EXIT_CERTIFICATE },
        });
    }
    let lists = ListAssignment::uniform(g.n(), k);
    let one_trial = |t: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(t as u64));
        let emb = &cert.embeddings[t % cert.embeddings.len()];
        let order: Vec<usize> = cert.order.iter().map(|&i| emb[i]).collect();
        let m = random_matchings(&mut rng, g, k);
        let Some(partial) = random_outside_coloring(&mut rng, g, &order, k, &m) else {
            return Trial::Skipped;
        };
        let out = if order.len() == 1 {
            min_degree_extend(g, order[0], &lists, &m, &partial)
        } else {
            extend_reducible(g, &order, &lists, &m, &partial)
        };
        match out {
            Ok(c) if is_valid_coloring(g, &lists, &m, &c.0) => Trial::Extended,
            Ok(_) => Trial::Failed(format!("trial {t}: extension is not a valid coloring")),
            Err(e) => Trial::Failed(format!("trial {t}: {e}")),
        }
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs.max(1)).build()?;
    let results: Vec<Trial> = pool.install(|| (0..trials).into_par_iter().map(one_trial).collect());
    let extended = results.iter().filter(|r| matches!(r, Trial::Extended)).count();
    let skipped = results.iter().filter(|r| matches!(r, Trial::Skipped)).count();
    let failures: Vec<&String> = results
        .iter()
        .filter_map(|r| match r {
            Trial::Failed(s) => Some(s),
            _ => None,
        })
        .collect();
    let _ = writeln!(
        text,
        "trials: {trials}, extended {extended}, failed {}, skipped {skipped} (no coloring of the rest found)",
        failures.len()
    );
    for f in &failures {
        let _ = writeln!(text, "{f}");
    }
    Ok(Report {
        text,
        json: json!({
            "k": k,
            "certification": cert,
            "trials": trials,
            "extended": extended,
            "skipped": skipped,
            "failures": failures,
        }),
        code: if failures.is_empty() { EXIT_OK } else { EXIT_CERTIFICATE },
    })
}

fn find_config(g: &Graph, pattern: &Path) -> Result<Report> {
    let p = input::load_pattern(pattern)?;
    let found = find_pattern(g, &p);
    let mut text = format!("occurrences: {}\n", found.len());
    for emb in &found {
        let vs: Vec<String> = emb.iter().map(usize::to_string).collect();
        let _ = writeln!(text, "{}", vs.join(" "));
    }
    Ok(Report { text, json: json!({"occurrences": found}), code: EXIT_OK })
}

fn discharge(
    loaded: Loaded,
    variant: RuleVariant,
    strict: bool,
    log: Option<&Path>,
    patterns: &[std::path::PathBuf],
) -> Result<Report> {
    let emb = loaded.into_embedding()?;
    let patterns = patterns.iter().map(|p| input::load_pattern(p)).collect::<Result<Vec<_>>>()?;
    let report = audit(&emb, &AuditOptions { variant, strict, patterns })?;
    let state = &report.state;
    if let Some(path) = log {
        write(path, &state.log_tsv())?;
    }
    let g = emb.graph();
    let negative = state.negative().len();
    let transfers = match state.log.len() {
        0 => "no transfers".to_string(),
        1 => "1 transfer".to_string(),
        n => format!("{n} transfers"),
    };
    let mut text = format!("total {}; {transfers}; {negative} negative elements\n", state.total());
    let totals: Vec<String> = state.phase_totals.iter().map(ToString::to_string).collect();
    let _ = writeln!(text, "phase totals: {}", totals.join(" "));
    text.push_str(&report.render());
    let roles = &report.roles;
    for v in 0..g.n() {
        let mut tags = Vec::new();
        if roles.triangular[v] {
            tags.push("triangular".to_string());
        }
        if roles.special[v] {
            tags.push("special".to_string());
        }
        for (f, r) in &roles.richness[v] {
            tags.push(format!("{r:?} to f{f}").to_lowercase());
        }
        let _ = writeln!(
            text,
            "v{v} degree {} charge {} -> {}{}{}",
            g.degree(v),
            g.degree(v) as i64 - 4,
            fraction(&state.get(Element::Vertex(v))),
            if tags.is_empty() { "" } else { "; " },
            tags.join(", ")
        );
    }
    for (f, face) in emb.faces().iter().enumerate() {
        let vs: Vec<String> = face.vertices.iter().map(usize::to_string).collect();
        let _ = writeln!(
            text,
            "f{f} length {} [{}] charge {} -> {}{}",
            face.len(),
            vs.join(" "),
            face.len() as i64 - 4,
            fraction(&state.get(Element::Face(f))),
            if roles.bad_five[f] { "; bad" } else { "" }
        );
    }
    Ok(Report { text, json: serde_json::to_value(&report)?, code: EXIT_OK })
}

fn verify(
    path: &Path,
    variants: &[ForbiddenVariant],
    k: usize,
    n_max: usize,
    certificate: Option<&Path>,
    g: &Global,
) -> Result<Report> {
    check_k(k)?;
    let lines = input::graph6_stream(path)?;
    let mut variants = variants.to_vec();
    if variants.is_empty() {
        variants = ForbiddenVariant::ALL.to_vec();
    }
    variants.sort();
    variants.dedup();
    let opts = VerifyOptions { variants, k, n_max, search: SearchOptions { jobs: 1, ..search_options(g) }, jobs: g.jobs.max(1) };
    let summary = verify_stream(&lines, &opts);
    let mut certs = String::new();
    let mut refutations = Vec::new();
    for r in summary.refutations() {
        if let (Outcome::Refuted(c), Ok(graph)) = (&r.outcome, dpcolor::parse_graph6(&r.graph6)) {
            let body = c.to_matching_file(&graph);
            let _ = write!(certs, "# graph {} {}\n{body}", r.index, r.graph6);
            refutations.push(json!({"index": r.index, "graph6": r.graph6, "certificate": body}));
        }
    }
    if let Some(p) = certificate {
        write(p, &certs)?;
    }
    let over_budget: Vec<Value> = summary
        .results
        .iter()
        .filter_map(|r| match r.outcome {
            Outcome::BudgetExceeded { required, .. } => {
                Some(json!({"index": r.index, "graph6": r.graph6, "required": required}))
            }
            _ => None,
        })
        .collect();
    let json = json!({
        "k": summary.k,
        "total": summary.total,
        "per_variant": summary.per_variant.iter().map(|(v, t)| json!({
            "variant": v.label(),
            "checked": t.checked,
            "colorable": t.colorable,
            "refuted": t.refuted,
            "budget": t.budget,
        })).collect::<Vec<_>>(),
        "skipped": summary.skipped.iter().map(|(why, n)| json!({"reason": why, "count": n})).collect::<Vec<_>>(),
        "refutations": refutations,
        "over_budget": over_budget,
    });
    let code = if !refutations.is_empty() {
        EXIT_CERTIFICATE
    } else if summary.budget_count() > 0 {
        EXIT_BUDGET
    } else {
        EXIT_OK
    };
    Ok(Report { text: summary.render(), json, code })
}
