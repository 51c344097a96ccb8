//! Routes a parsed command to the library and wraps results as records.

use crate::cache::{fingerprint, Cache, ResultRecord};
use crate::config::*;
use crate::error::{CliError, ErrorKind};
use crate::output::Emitted;
use num_bigint::BigUint;
use num_rational::BigRational;
use rayon::prelude::*;
use rtl_core::container::{
    build_rainbow_hypergraph, container_hypothesis_check, min_n_for_container, BuildOptions, CodegreeWeights,
};
use rtl_core::counting::{
    bounds_compare, brute_force_count_with_cap, count_colorings, partition_polynomial_with, rho_max_search,
    EngineOptions, SearchOptions,
};
use rtl_core::exact::Interval;
use rtl_core::graph::{closeness_to_kpartite, parse_graph6, parse_graph6_stream, vertices_of};
use rtl_core::stability::{clean, critical_sets, default_xi, list_histogram, supersaturation_bound, CleaningConfig, CleaningState};
use rtl_core::{Graph, Template};
use serde::Serialize;
use serde_json::{json, Value};
use std::io::Read;
use std::path::Path;

pub struct Context {
    pub cache: Option<Cache>,
    pub oracle_cap: u64,
    pub partition_cap: usize,
    pub materialize_cap: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub operation: String,
    pub params: Value,
    pub error: CliError,
}

#[derive(Debug, Default)]
pub struct Report {
    pub records: Vec<Emitted>,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.failures.first().map(|f| f.error.kind.exit_code()).unwrap_or(0)
    }
}

type Computed = Result<Value, CliError>;

fn run_cached(ctx: &Context, op: &str, params: Value, compute: impl FnOnce() -> Computed) -> Result<Emitted, Failure> {
    let fp = fingerprint(op, &params);
    if let Some(hit) = ctx.cache.as_ref().and_then(|c| c.get(&fp)) {
        return Ok(Emitted {
            operation: op.to_string(),
            fingerprint: fp,
            cached: true,
            params,
            result: hit.clone(),
        });
    }
    match compute() {
        Ok(result) => {
            if let Some(cache) = &ctx.cache {
                let record = ResultRecord::new(op, params.clone(), result.clone());
                if let Err(e) = cache.store(&record) {
                    eprintln!("warning: could not write cache {}: {e}", cache.path().display());
                }
            }
            Ok(Emitted {
                operation: op.to_string(),
                fingerprint: fp,
                cached: false,
                params,
                result,
            })
        }
        Err(error) => Err(Failure {
            operation: op.to_string(),
            params,
            error,
        }),
    }
}

fn collect(items: Vec<Result<Emitted, Failure>>) -> Report {
    let mut report = Report::default();
    for item in items {
        match item {
            Ok(r) => report.records.push(r),
            Err(f) => report.failures.push(f),
        }
    }
    report
}

fn single(ctx: &Context, op: &str, params: Value, compute: impl FnOnce() -> Computed) -> Report {
    collect(vec![run_cached(ctx, op, params, compute)])
}

/// Maps every graph through `op` in parallel, keeping input order.
fn batch(
    ctx: &Context,
    op: &str,
    graphs: &[Graph],
    params: impl Fn(&Graph) -> Value + Sync,
    compute: impl Fn(&Graph) -> Computed + Sync,
) -> Report {
    collect(graphs.par_iter().map(|g| run_cached(ctx, op, params(g), || compute(g))).collect())
}

fn to_value<T: Serialize>(x: &T) -> Computed {
    serde_json::to_value(x).map_err(|e| CliError::new(ErrorKind::Internal, e.to_string()))
}

/// Text of `-` (stdin) or of an existing file; `None` for inline input.
fn read_source(src: &str) -> Result<Option<String>, CliError> {
    if src == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return Ok(Some(text));
    }
    let path = Path::new(src);
    if path.is_file() {
        return Ok(Some(std::fs::read_to_string(path)?));
    }
    Ok(None)
}

pub fn read_graphs(src: &str) -> Result<Vec<Graph>, CliError> {
    let graphs = match read_source(src)? {
        Some(text) => parse_graph6_stream(&text)?,
        None => vec![parse_graph6(src.trim())?],
    };
    if graphs.is_empty() {
        return Err(CliError::parse(format!("no graphs in {src}")));
    }
    Ok(graphs)
}

pub fn read_template(src: &str) -> Result<Template, CliError> {
    let text = if src.trim_start().starts_with('{') {
        src.to_string()
    } else {
        read_source(src)?.ok_or_else(|| CliError::new(ErrorKind::Io, format!("no such template file: {src}")))?
    };
    Ok(Template::from_json(&text)?)
}

/// `p/q`, an integer, or a decimal such as `0.01`, exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::parse(format!("not a rational number: {s:?}"));
    let int = |t: &str| -> Result<num_bigint::BigInt, CliError> { t.trim().parse().map_err(|_| bad()) };
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let q = int(q)?;
        if q == 0.into() {
            return Err(bad());
        }
        return Ok(BigRational::new(int(p)?, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{whole}{frac}");
        let den = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(BigRational::new(int(&digits)?, den));
    }
    Ok(BigRational::from_integer(int(s)?))
}

pub fn rational_json(q: &BigRational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

fn interval_json(i: &Interval) -> Value {
    use num_traits::ToPrimitive;
    json!({
        "lo": rational_json(&i.lo),
        "hi": rational_json(&i.hi),
        "approx": i.lo.to_f64(),
    })
}

fn template_json(t: &Template) -> Computed {
    to_value(&t.to_file())
}

pub fn dispatch(cfg: &RunConfig, ctx: &Context) -> Result<Report, CliError> {
    Ok(match &cfg.command {
        Command::Count(a) => {
            let graphs = read_graphs(&a.input.graph)?;
            let method = if a.brute { "brute" } else { "engine" };
            batch(
                ctx,
                "count",
                &graphs,
                |g| json!({ "graph6": g.graph6(), "r": a.r, "k": a.k, "method": method }),
                |g| {
                    let count = if a.brute {
                        brute_force_count_with_cap(g, a.r, a.k, ctx.oracle_cap)?
                    } else {
                        count_colorings(g, a.r, a.k)?
                    };
                    Ok(json!({ "count": count.to_string(), "vertices": g.n(), "edges": g.edge_count() }))
                },
            )
        }
        Command::Poly(a) => {
            let graphs = read_graphs(&a.input.graph)?;
            batch(
                ctx,
                "poly",
                &graphs,
                |g| json!({ "graph6": g.graph6(), "k": a.k, "eval": a.eval }),
                |g| {
                    let p = partition_polynomial_with(g, a.k, ctx.partition_cap, &EngineOptions::default())?;
                    let mut v = to_value(&p)?;
                    if let Some(r) = a.eval {
                        v["value"] = json!(p.eval(r).to_string());
                    }
                    Ok(v)
                },
            )
        }
        Command::Search(a) => {
            let input = a.input.as_deref().map(read_graphs).transpose()?;
            let params = json!({
                "n": a.n, "r": a.r, "k": a.k, "summary": a.summary,
                "input": input.as_ref().map(|gs| gs.iter().map(Graph::graph6).collect::<Vec<_>>()),
            });
            single(ctx, "search", params, || {
                let opts = SearchOptions {
                    work_budget: a.work_budget,
                    engine: EngineOptions::default(),
                    keep_table: !a.summary,
                };
                to_value(&rho_max_search(a.n, a.r, a.k, input.as_deref(), &opts)?)
            })
        }
        Command::TemplateStats(a) => {
            let t = read_template(&a.template)?;
            single(ctx, "template-stats", json!({ "template": template_json(&t)? }), || {
                let h = list_histogram(&t);
                Ok(json!({
                    "r": t.r(),
                    "vertices": t.host().n(),
                    "edges": t.host().edge_count(),
                    "complete": t.is_complete(),
                    "rainbow_copies": t.count_rainbow_copies().to_string(),
                    "histogram": h.counts,
                    "m": h.m,
                }))
            })
        }
        Command::ContainerStats(a) => {
            let opts = BuildOptions {
                materialize: a.materialize,
                stats_only: a.stats_only,
                cap: ctx.materialize_cap,
            };
            let stats = |t: &Template| -> Computed {
                let built = build_rainbow_hypergraph(t, &opts)?;
                let mut v = to_value(&built.stats)?;
                v["materialized"] = json!(built.hypergraph.is_some());
                Ok(v)
            };
            let flags = json!({ "materialize": a.materialize, "stats_only": a.stats_only });
            if let Some(src) = &a.template {
                let t = read_template(src)?;
                let params = json!({ "template": template_json(&t)?, "flags": flags });
                single(ctx, "container-stats", params, || stats(&t))
            } else {
                let r = a.r.ok_or_else(|| CliError::usage("container-stats --graph needs -r"))?;
                let graphs = read_graphs(a.graph.as_deref().unwrap_or_default())?;
                batch(
                    ctx,
                    "container-stats",
                    &graphs,
                    |g| json!({ "graph6": g.graph6(), "r": r, "flags": flags }),
                    |g| stats(&Template::complete(g, r)?),
                )
            }
        }
        Command::ContainerThreshold(a) => {
            let weights = CodegreeWeights::from(a.weights);
            let n = a
                .n
                .as_deref()
                .map(|s| s.trim().parse::<BigUint>().map_err(|_| CliError::parse(format!("not a decimal integer: {s:?}"))))
                .transpose()?;
            let params = json!({ "r": a.r, "n": n.as_ref().map(|n| n.to_string()), "weights": weights });
            single(ctx, "container-threshold", params, || match &n {
                Some(n) => to_value(&container_hypothesis_check(n, a.r, weights)?),
                None => {
                    let n0 = min_n_for_container(a.r, weights)?;
                    let at = container_hypothesis_check(&n0, a.r, weights)?;
                    let below = container_hypothesis_check(&(&n0 - 1u32), a.r, weights)?;
                    Ok(json!({ "min_n": n0.to_string(), "at": to_value(&at)?, "below": to_value(&below)? }))
                }
            })
        }
        Command::Clean(a) => {
            let t = read_template(&a.template.template)?;
            let xi = match (&a.xi, &a.delta) {
                (Some(x), _) => parse_rational(x)?,
                (None, Some(d)) => default_xi(&parse_rational(d)?)?,
                (None, None) => return Err(CliError::usage("clean needs --xi or --delta")),
            };
            let n = a.n.unwrap_or(t.host().n());
            let config = CleaningConfig::new(t.r(), xi.clone(), n)?
                .with_order(a.priority)
                .with_reading(a.reading.into());
            let params = json!({
                "template": template_json(&t)?,
                "xi": rational_json(&xi),
                "n": n,
                "priority": a.priority,
                "reading": rtl_core::CopyReading::from(a.reading),
            });
            single(ctx, "clean", params, || to_value(&clean(&t, &config)?))
        }
        Command::Critical(a) => {
            let t = read_template(&a.template.template)?;
            let n = a.n.unwrap_or(t.host().n());
            let reading = rtl_core::CopyReading::from(a.reading);
            let params = json!({ "template": template_json(&t)?, "n": n, "reading": reading });
            single(ctx, "critical", params, || {
                to_value(&critical_sets(&CleaningState::initial(&t), &t, n, reading)?)
            })
        }
        Command::Closeness(a) => {
            let graphs = read_graphs(&a.input.graph)?;
            batch(
                ctx,
                "closeness",
                &graphs,
                |g| json!({ "graph6": g.graph6(), "k": a.k }),
                |g| {
                    let c = closeness_to_kpartite(g, a.k)?;
                    Ok(json!({
                        "internal_edges": c.internal_edges,
                        "exact": c.exact,
                        "classes": c.partition.assignment(),
                    }))
                },
            )
        }
        Command::Cliques(a) => {
            let graphs = read_graphs(&a.input.graph)?;
            batch(
                ctx,
                "cliques",
                &graphs,
                |g| json!({ "graph6": g.graph6(), "k": a.k, "list": a.list }),
                |g| {
                    if a.k == 0 {
                        return Err(CliError::usage("k must be positive"));
                    }
                    let mut v = json!({ "count": g.count_cliques(a.k) });
                    if a.list {
                        let members: Vec<Vec<usize>> =
                            g.enumerate_cliques(a.k).members.into_iter().map(|m| vertices_of(m).collect()).collect();
                        v["cliques"] = json!(members);
                    }
                    Ok(v)
                },
            )
        }
        Command::Supersat(a) => {
            let params = json!({ "n": a.n, "t": a.t, "k": a.k, "edges": a.edges });
            single(ctx, "supersat", params, || {
                Ok(json!({ "bound": interval_json(&supersaturation_bound(a.n, a.t, a.k, a.edges)?) }))
            })
        }
        Command::BoundsCompare(a) => single(ctx, "bounds-compare", json!({ "r": a.r, "k": a.k }), || {
            to_value(&bounds_compare(a.r, a.k)?)
        }),
    })
}
