use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context as _, Result};
use serde_json::{json, Value};

use lgmirror::critical::{critical_values, stationary_points, CriticalPoint, SearchConfig, StationaryReport, ValueClusters};
use lgmirror::cycles::{default_arcs, del_pezzo_arcs, vanishing_cycles, CycleRun, FiberSpec, StepConfig};
use lgmirror::dsing::{dsing_hom_rank, floer_match_table, NcConfig, SheafOnNc};
use lgmirror::laurent::{LaurentPoly, RationalPotential};
use lgmirror::mirror::{builtin_model, parse_model_file, write_model_file, Elimination, LGModel};
use lgmirror::su2::{solve_relation, surface_loop_intersections, Generator, HolonomyProblem, SolutionStatus, Su2, Su2Search};
use lgmirror::C64;

use crate::report::{RunReport, Writer};
use crate::svg;
use crate::{ArcChoice, CycleArgs, ModelArgs};

const TOLERANCES: &[&str] = &[
    "residual",
    "dedup_rel",
    "dedup_abs",
    "exclusion",
    "cluster_rel",
    "cluster_abs",
    "max_step",
    "end_cutoff",
    "degenerate_cutoff",
    "collision_ratio",
    "su2_residual",
    "su2_cluster",
];

#[derive(Clone, Debug)]
pub struct Context {
    pub seed: u64,
    pub tol: BTreeMap<String, f64>,
    pub svg: bool,
    pub out: PathBuf,
}

impl Context {
    pub fn new(seed: u64, tol: &[String], svg: bool, out: PathBuf) -> Result<Self> {
        let mut map = BTreeMap::new();
        for t in tol {
            let (name, value) = t.split_once('=').ok_or_else(|| anyhow!("--tol expects NAME=VALUE, got `{t}`"))?;
            let name = name.trim();
            if !TOLERANCES.contains(&name) {
                bail!("unknown tolerance `{name}`; known: {}", TOLERANCES.join(", "));
            }
            let v: f64 = value.trim().parse().with_context(|| format!("tolerance `{name}`"))?;
            if !(v > 0.0 && v.is_finite()) {
                bail!("tolerance `{name}` must be positive, got {v}");
            }
            map.insert(name.to_string(), v);
        }
        Ok(Context { seed, tol: map, svg, out })
    }

    fn sub(&self, dir: &str) -> Context {
        Context { out: self.out.join(dir), ..self.clone() }
    }

    fn get(&self, name: &str, default: f64) -> f64 {
        self.tol.get(name).copied().unwrap_or(default)
    }

    fn search(&self) -> SearchConfig {
        let d = SearchConfig::default();
        SearchConfig {
            seed: self.seed,
            residual_tol: self.get("residual", d.residual_tol),
            dedup_rel: self.get("dedup_rel", d.dedup_rel),
            dedup_abs: self.get("dedup_abs", d.dedup_abs),
            exclusion_tol: self.get("exclusion", d.exclusion_tol),
            ..d
        }
    }

    fn clusters(&self, points: &[CriticalPoint]) -> ValueClusters {
        critical_values(points, self.get("cluster_rel", 1e-8), self.get("cluster_abs", 1e-12))
    }

    fn steps(&self) -> StepConfig {
        let d = StepConfig::default();
        StepConfig {
            max_step: self.get("max_step", d.max_step),
            end_cutoff: self.get("end_cutoff", d.end_cutoff),
            degenerate_cutoff: self.get("degenerate_cutoff", d.degenerate_cutoff),
            collision_ratio: self.get("collision_ratio", d.collision_ratio),
            ..d
        }
    }

    fn su2(&self, starts: usize) -> Su2Search {
        let d = Su2Search::default();
        Su2Search {
            starts,
            seed: self.seed,
            residual_tol: self.get("su2_residual", d.residual_tol),
            cluster_tol: self.get("su2_cluster", d.cluster_tol),
            ..d
        }
    }
}

struct Loaded {
    model: LGModel,
    preset: Option<String>,
    params: BTreeMap<String, C64>,
    inputs: Value,
}

fn parse_value(name: &str, s: &str) -> Result<C64> {
    let p = LaurentPoly::parse(s, &[], &BTreeMap::new()).map_err(|e| anyhow!("parameter `{name}`: {}", e.message))?;
    p.as_constant().ok_or_else(|| anyhow!("parameter `{name}` is not a number: `{s}`"))
}

fn complex_json(z: C64) -> Value {
    json!([z.re, z.im])
}

fn load(args: &ModelArgs) -> Result<Loaded> {
    let mut params = BTreeMap::new();
    for kv in &args.params {
        let (k, v) = kv.split_once('=').ok_or_else(|| anyhow!("--param expects name=value, got `{kv}`"))?;
        params.insert(k.trim().to_string(), parse_value(k.trim(), v.trim())?);
    }
    let (model, preset, source) = match (&args.preset, &args.model) {
        (Some(name), None) => (builtin_model(name, &params)?, Some(name.clone()), json!({ "preset": name })),
        (None, Some(path)) => {
            if !params.is_empty() {
                bail!("--param applies to presets; set parameters in the model file");
            }
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let model = parse_model_file(&text).with_context(|| format!("in {}", path.display()))?;
            (model, None, json!({ "model": path.display().to_string() }))
        }
        _ => bail!("give exactly one of --preset and --model"),
    };
    let mut inputs = source;
    inputs["parameters"] = params.iter().map(|(k, v)| (k.clone(), complex_json(*v))).collect::<serde_json::Map<_, _>>().into();
    Ok(Loaded { model, preset, params, inputs })
}

fn inputs_with(ctx: &Context, mut inputs: Value) -> Value {
    inputs["tolerances"] = json!(ctx.tol);
    inputs
}

fn potential_string(f: &RationalPotential) -> String {
    let d = f.denominator();
    if d.as_constant() == Some(C64::new(1.0, 0.0)) {
        f.numerator().to_string()
    } else {
        format!("({}) / ({})", f.numerator(), d)
    }
}

pub fn build_mirror(ctx: &Context, args: &ModelArgs) -> Result<RunReport> {
    let l = load(args)?;
    let el = l.model.eliminate()?;
    let mut w = Writer::new(&ctx.out)?;
    w.file("model.toml", &write_model_file(&l.model))?;
    let results = json!({
        "variables": l.model.variables,
        "potential": potential_string(&el.potential),
        "free": el.free,
        "solved": el.solved.iter().map(|s| json!({
            "var": s.var,
            "numerator": s.numerator.to_string(),
            "denominator": s.denominator.to_string(),
        })).collect::<Vec<_>>(),
        "excluded": el.potential.excluded_factors().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    });
    w.finish(RunReport::new("build-mirror", inputs_with(ctx, l.inputs), results, Vec::new(), ctx.seed))
}

struct CriticalRun {
    el: Elimination,
    report: StationaryReport,
    clusters: ValueClusters,
    diagnostics: Vec<String>,
}

fn run_critical(ctx: &Context, model: &LGModel) -> Result<CriticalRun> {
    let el = model.eliminate()?;
    let report = stationary_points(&el.potential, &ctx.search())?;
    let clusters = ctx.clusters(&report.points);
    let mut diagnostics = report.diagnostics.warnings.clone();
    if let Some(c) = &report.completeness {
        if c.shortfall > 0 {
            diagnostics.push(format!(
                "completeness: found {} of {} isolated points predicted by the resultant",
                c.found,
                c.oracle_count.unwrap_or(c.bkk_bound)
            ));
        }
    }
    for (i, j) in &clusters.ambiguous {
        diagnostics.push(format!(
            "critical values {} and {} are within ten times the clustering tolerance",
            clusters.clusters[*i].value, clusters.clusters[*j].value
        ));
    }
    Ok(CriticalRun { el, report, clusters, diagnostics })
}

fn rel_err(found: C64, expected: C64) -> f64 {
    (found - expected).norm() / found.norm().max(expected.norm()).max(f64::MIN_POSITIVE)
}

/// Exponent `k` of the hyperelliptic family the model belongs to, if any.
fn family_k(preset: Option<&str>, params: &BTreeMap<String, C64>) -> Option<u32> {
    match preset? {
        "genus2" => Some(3),
        "hyperelliptic" => params.get("k").map(|k| k.re as u32),
        _ => None,
    }
}

/// Comparisons with the closed forms available for the built-in examples.
fn known_values(l: &Loaded, run: &CriticalRun, diagnostics: &mut Vec<String>) -> Value {
    let nonzero: Vec<C64> =
        run.clusters.clusters.iter().map(|c| c.value).filter(|v| v.norm() > 1e-12).collect();
    let mut out = serde_json::Map::new();
    if l.preset.as_deref() == Some("delpezzo4_deformed") {
        if let Some(e) = l.params.get("e") {
            let expected = [("e^4/16", e.powi(4) / 16.0), ("e^2", e * e), ("16", C64::new(16.0, 0.0))];
            let rows: Vec<Value> = expected
                .iter()
                .map(|(name, x)| {
                    let best = nonzero.iter().copied().min_by(|a, b| rel_err(*a, *x).total_cmp(&rel_err(*b, *x)));
                    json!({
                        "asymptotic": name,
                        "expected": complex_json(*x),
                        "found": best.map(complex_json),
                        "relative_error": best.map(|b| rel_err(b, *x)),
                    })
                })
                .collect();
            out.insert("asymptotics".into(), rows.into());
        }
    }
    if let Some(k) = family_k(l.preset.as_deref(), &l.params) {
        let points = run.report.points.len();
        let values = nonzero.len() + 1;
        let agrees = points as u32 == k - 1 && values as u32 == k;
        if !agrees {
            diagnostics.push(format!(
                "hyperelliptic k = {k}: found {points} isolated points and {values} critical values counting 0; \
                 the stated counts are {} and {k}",
                k - 1
            ));
        }
        out.insert(
            "counts".into(),
            json!({
                "k": k,
                "isolated_points": points,
                "critical_values_with_zero": values,
                "stated_isolated_points": k - 1,
                "stated_critical_values": k,
                "agrees": agrees,
            }),
        );
        if k == 3 {
            if let (Some(a1), Some(a2)) = (l.params.get("a1"), l.params.get("a2")) {
                out.insert("labeling".into(), genus_two_labeling(*a1, *a2, &nonzero, diagnostics));
            }
        }
    }
    Value::Object(out)
}

/// `(1 ± 2√s)³ / (27 r)` for `(r, s)`.
pub fn genus_two_values(r: C64, s: C64) -> [C64; 2] {
    let q = s.sqrt();
    let f = |sign: f64| (1.0 + 2.0 * sign * q).powi(3) / (27.0 * r);
    [f(1.0), f(-1.0)]
}

fn matches_set(found: &[C64], expected: &[C64; 2]) -> bool {
    found.len() == 2
        && expected.iter().all(|x| found.iter().any(|v| (v - x).norm() <= 1e-8 * x.norm().max(1.0)))
}

fn genus_two_labeling(a1: C64, a2: C64, found: &[C64], diagnostics: &mut Vec<String>) -> Value {
    let candidates = [("(a1, a2)", a1, a2), ("(a2, a1)", a2, a1)];
    let hits: Vec<&str> =
        candidates.iter().filter(|(_, r, s)| matches_set(found, &genus_two_values(*r, *s))).map(|c| c.0).collect();
    if hits.len() != 1 {
        diagnostics.push(format!("genus two: {} labelings of (r, s) match the critical values", hits.len()));
    }
    let disc = (1.0 - 4.0 * a2).sqrt();
    let cross_ratio = (-1.0 + disc) / (-1.0 - disc);
    json!({
        "matching": hits,
        "cross_ratio": complex_json(cross_ratio),
    })
}

fn points_csv(el: &Elimination, points: &[CriticalPoint]) -> String {
    let mut s = String::from("index");
    for v in el.all_variables() {
        let _ = write!(s, ",{v}_re,{v}_im");
    }
    s.push_str(",value_re,value_im,hessian_det_re,hessian_det_im,classification,residual\n");
    for (i, p) in points.iter().enumerate() {
        let _ = write!(s, "{i}");
        for z in el.lift(&p.location) {
            let _ = write!(s, ",{:e},{:e}", z.re, z.im);
        }
        let class = serde_json::to_value(p.classification).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        let _ = writeln!(
            s,
            ",{:e},{:e},{:e},{:e},{class},{:e}",
            p.value.re, p.value.im, p.hessian_det.re, p.hessian_det.im, p.residual
        );
    }
    s
}

pub fn critical(ctx: &Context, args: &ModelArgs) -> Result<RunReport> {
    let l = load(args)?;
    let run = run_critical(ctx, &l.model)?;
    let mut diagnostics = run.diagnostics.clone();
    let known = known_values(&l, &run, &mut diagnostics);
    let mut w = Writer::new(&ctx.out)?;
    w.file("critical_points.csv", &points_csv(&run.el, &run.report.points))?;
    if ctx.svg {
        let v: Vec<(C64, usize)> = run.clusters.clusters.iter().map(|c| (c.value, c.multiplicity)).collect();
        w.file("critical_values.svg", &svg::critical_values(&v))?;
    }
    let points: Vec<Value> = run
        .report
        .points
        .iter()
        .map(|p| {
            json!({
                "location": p.location,
                "coordinates": run.el.lift(&p.location),
                "value": p.value,
                "hessian_det": p.hessian_det,
                "classification": p.classification,
                "residual": p.residual,
            })
        })
        .collect();
    let results = json!({
        "potential": potential_string(&run.el.potential),
        "free": run.el.free,
        "variables": run.el.all_variables(),
        "points": points,
        "clusters": run.clusters.clusters,
        "ambiguous": run.clusters.ambiguous,
        "completeness": run.report.completeness,
        "solver": {
            "paths_tracked": run.report.diagnostics.paths_tracked,
            "starts_used": run.report.diagnostics.starts_used,
            "converged": run.report.diagnostics.converged,
            "diverged": run.report.diagnostics.diverged,
            "discarded_excluded": run.report.diagnostics.discarded_excluded,
            "discarded_residual": run.report.diagnostics.discarded_residual,
        },
        "known_values": known,
    });
    w.finish(RunReport::new("critical", inputs_with(ctx, l.inputs), results, diagnostics, ctx.seed))
}

fn fiber_spec(f: &RationalPotential, cover: Option<&str>, base: Option<&str>) -> Result<FiberSpec> {
    let vars = f.vars();
    if vars.len() != 2 {
        bail!("cycles need a potential in two free variables, got {}", vars.len());
    }
    let other = |v: &str| vars.iter().find(|x| *x != v).cloned().unwrap_or_default();
    match (cover, base) {
        (Some(c), Some(b)) => Ok(FiberSpec::new(f.clone(), c, b)?),
        (Some(c), None) => Ok(FiberSpec::new(f.clone(), c, &other(c))?),
        (None, Some(b)) => Ok(FiberSpec::new(f.clone(), &other(b), b)?),
        (None, None) => FiberSpec::new(f.clone(), &vars[1], &vars[0])
            .or_else(|_| FiberSpec::new(f.clone(), &vars[0], &vars[1]))
            .map_err(|e| anyhow!("neither variable gives a double cover: {e}")),
    }
}

fn cycle_run(ctx: &Context, l: &Loaded, a: &CycleArgs, crit: &CriticalRun) -> Result<CycleRun> {
    let spec = fiber_spec(&crit.el.potential, a.cover.as_deref(), a.base.as_deref())?;
    let values: Vec<C64> = crit.clusters.clusters.iter().map(|c| c.value).collect();
    let (lambda0, arcs) = match a.arcs {
        ArcChoice::Paper => {
            if l.preset.as_deref() != Some("delpezzo4_deformed") {
                bail!("--arcs paper is defined for the delpezzo4_deformed preset only");
            }
            let e = l.params.get("e").ok_or_else(|| anyhow!("missing parameter e"))?;
            if e.im != 0.0 {
                bail!("--arcs paper needs a real e");
            }
            del_pezzo_arcs(e.re, &values)
        }
        ArcChoice::Auto => {
            let lambda0 = match &a.lambda0 {
                Some(s) => parse_value("lambda0", s)?,
                None => {
                    let centroid = values.iter().sum::<C64>() / values.len().max(1) as f64;
                    let spread = values.iter().map(|v| (v - centroid).norm()).fold(0.0, f64::max);
                    centroid - C64::new(0.0, if spread > 0.0 { spread } else { 1.0 })
                }
            };
            (lambda0, default_arcs(lambda0, &values))
        }
    };
    Ok(vanishing_cycles(&spec, lambda0, &arcs, &crit.report.points, &ctx.steps())?)
}

fn braids_csv(run: &CycleRun) -> String {
    let mut s = String::from("arc,s,lambda_re,lambda_im,branch,re,im\n");
    for (i, b) in run.braids.iter().enumerate() {
        for smp in &b.samples {
            for (k, z) in smp.points.iter().enumerate() {
                let _ = writeln!(s, "{i},{:e},{:e},{:e},{k},{:e},{:e}", smp.s, smp.lambda.re, smp.lambda.im, z.re, z.im);
            }
        }
    }
    s
}

pub fn cycles(ctx: &Context, a: &CycleArgs, quiver_only: bool) -> Result<RunReport> {
    let l = load(&a.model)?;
    let crit = run_critical(ctx, &l.model)?;
    let run = cycle_run(ctx, &l, a, &crit)?;
    let quiver = run.quiver()?;
    let mut w = Writer::new(&ctx.out)?;
    w.file("quiver.csv", &quiver.to_csv())?;
    if !quiver_only {
        w.file("braids.csv", &braids_csv(&run))?;
    }
    if ctx.svg {
        w.file("braids.svg", &svg::braids(&run))?;
    }
    let cycles: Vec<Value> = run
        .cycles
        .iter()
        .map(|c| {
            json!({
                "label": c.label,
                "arc": c.arc_index,
                "pair": c.matched_pair,
                "sheet": c.sheet,
                "period": c.period,
                "critical_value": c.source_critical_value,
                "critical_point": c.critical_point,
            })
        })
        .collect();
    let mut results = json!({
        "cover": fiber_spec(&crit.el.potential, a.cover.as_deref(), a.base.as_deref())?.cover_variable(),
        "lambda0": run.lambda0,
        "arcs": run.arcs,
        "cycles": cycles,
        "quiver": quiver.entries,
    });
    if !quiver_only {
        results["reference_points"] = json!(run.reference_points);
        results["collisions"] = json!(run.braids.iter().map(|b| &b.collisions).collect::<Vec<_>>());
        results["lattice_basis"] = json!(run.lattice_basis);
        results["covolume"] = json!(run.covolume);
    }
    let mut inputs = inputs_with(ctx, l.inputs);
    inputs["arcs"] = json!(match a.arcs {
        ArcChoice::Paper => "paper",
        ArcChoice::Auto => "auto",
    });
    if let Some(s) = &a.lambda0 {
        inputs["lambda0"] = json!(s);
    }
    let name = if quiver_only { "quiver" } else { "cycles" };
    w.finish(RunReport::new(name, inputs, results, crit.diagnostics, ctx.seed))
}

fn parse_target(s: &str) -> Result<Su2> {
    match s.trim() {
        "I" | "+I" | "1" => Ok(Su2::IDENTITY),
        "-I" | "-1" => Ok(Su2::MINUS_IDENTITY),
        other => bail!("target must be I or -I, got `{other}`"),
    }
}

pub fn floer_su2(ctx: &Context, fix: &[String], target: &str, starts: usize) -> Result<RunReport> {
    let gens: Vec<Generator> = fix.iter().map(|g| g.parse()).collect::<Result<_, _>>()?;
    let problem = HolonomyProblem::identity_on(&gens, parse_target(target)?)?;
    let cfg = ctx.su2(starts);
    let set = solve_relation(&problem, &cfg)?;
    let mut results = serde_json::to_value(&set)?;
    if let [x, y] = gens.as_slice() {
        let k = surface_loop_intersections(&x.to_string(), &y.to_string())?;
        let count = match set.status {
            SolutionStatus::Empty => Some(0),
            SolutionStatus::Finite => set.count,
            SolutionStatus::PositiveDimensional => None,
        };
        results["loop_intersection"] = json!(k);
        results["matches_loop_intersection"] = json!(count == Some(k as usize));
    }
    let inputs = json!({
        "fix": gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "target": target,
        "starts": starts,
        "tolerances": ctx.tol,
    });
    let w = Writer::new(&ctx.out)?;
    w.finish(RunReport::new("floer-su2", inputs, results, Vec::new(), ctx.seed))
}

fn rank_csv(ranks: &[Vec<(u64, u64)>], shift: usize) -> String {
    let mut s = String::new();
    for row in ranks {
        let cells: Vec<String> = row.iter().map(|r| if shift == 0 { r.0 } else { r.1 }.to_string()).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

pub fn dsing_ext(ctx: &Context, objects: &[String]) -> Result<RunReport> {
    let cfg = NcConfig::standard();
    let mut w = Writer::new(&ctx.out)?;
    let mut diagnostics = Vec::new();
    let (ranks, results) = if objects.is_empty() {
        let t = floer_match_table(&cfg)?;
        if !t.agrees {
            diagnostics.push("Hom ranks differ from the loop intersection table".to_string());
        }
        (t.ranks.clone(), serde_json::to_value(&t)?)
    } else {
        let sheaves: Vec<SheafOnNc> = objects.iter().map(|n| SheafOnNc::preset(n)).collect::<Result<_, _>>()?;
        let mut ranks = Vec::new();
        for a in &sheaves {
            let mut row = Vec::new();
            for b in &sheaves {
                row.push((dsing_hom_rank(&cfg, a, b, 0)?, dsing_hom_rank(&cfg, a, b, 1)?));
            }
            ranks.push(row);
        }
        (ranks.clone(), json!({ "objects": objects, "ranks": ranks }))
    };
    w.file("hom_shift0.csv", &rank_csv(&ranks, 0))?;
    w.file("hom_shift1.csv", &rank_csv(&ranks, 1))?;
    let gluing: Vec<[String; 2]> = cfg.gluing.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect();
    let inputs = json!({ "objects": objects, "gluing": gluing });
    w.finish(RunReport::new("dsing-ext", inputs, results, diagnostics, ctx.seed))
}

fn model_args(preset: &str, params: &[&str]) -> ModelArgs {
    ModelArgs { preset: Some(preset.into()), model: None, params: params.iter().map(|s| s.to_string()).collect() }
}

pub fn report_all(ctx: &Context) -> Result<RunReport> {
    let del_pezzo = model_args("delpezzo4_deformed", &["e=0.1"]);
    let arcs = CycleArgs { model: del_pezzo.clone(), arcs: ArcChoice::Paper, cover: None, base: None, lambda0: None };
    let genus2 = model_args("genus2", &["a1=0.01", "a2=0.02"]);
    let mut runs: Vec<(String, RunReport)> = vec![
        ("critical-delpezzo4_deformed".into(), critical(&ctx.sub("critical-delpezzo4_deformed"), &del_pezzo)?),
        ("quiver-delpezzo4_deformed".into(), cycles(&ctx.sub("quiver-delpezzo4_deformed"), &arcs, true)?),
        ("critical-genus2".into(), critical(&ctx.sub("critical-genus2"), &genus2)?),
        ("critical-quadrics_x4".into(), critical(&ctx.sub("critical-quadrics_x4"), &model_args("quadrics_x4", &[]))?),
    ];
    for fix in [["a1", "a2"], ["a1", "b1"]] {
        let dir = format!("floer-su2-{}{}", fix[0], fix[1]);
        let fix: Vec<String> = fix.iter().map(|s| s.to_string()).collect();
        let r = floer_su2(&ctx.sub(&dir), &fix, "-I", 10_000)?;
        runs.push((dir, r));
    }
    runs.push(("dsing-ext".into(), dsing_ext(&ctx.sub("dsing-ext"), &[])?));

    let mut diagnostics = Vec::new();
    let mut summary = serde_json::Map::new();
    for (name, r) in &runs {
        diagnostics.extend(r.diagnostics.iter().map(|d| format!("{name}: {d}")));
        summary.insert(
            name.clone(),
            json!({ "command": r.command, "artifacts": r.artifacts, "diagnostics": r.diagnostics }),
        );
    }
    let w = Writer::new(&ctx.out)?;
    let inputs = json!({ "tolerances": ctx.tol });
    w.finish(RunReport::new("report-all", inputs, Value::Object(summary), diagnostics, ctx.seed))
}
