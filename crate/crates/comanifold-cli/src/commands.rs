//! Execution of the `comanifold` subcommands.
//!
//! Every handler returns the process exit code: 0 for success, 1 when a
//! check fails or input data is invalid. Usage problems exit with 2 before
//! reaching this module. Output depends only on the inputs and flags, so
//! repeated runs are byte-identical.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use comanifold::classify::{are_equivalent, automorphism_orbits};
use comanifold::diffgeo::{
    exterior_derivative, levi_civita, metric_compatibility_residual, minkowski_check, torsion,
    DifferentialForm, NormCheckConfig,
};
use comanifold::graph::{
    build_graph, derive_next, edge_drop_set, export_dot, realize_model, GraphError, LabelledGraph,
};
use comanifold::invariants::InvariantError;
use comanifold::invariants::{euler_characteristic, fundamental_group_rank, is_simply_d_connected};
use comanifold::model::{validate_model, CombinatorialModel, ValidationReport, Violation};
use comanifold::sample::seeded_random_model;
use comanifold::series::{model_enufunction, SpecialForm};

use crate::cli::{Command, Format, GeomCommand};
use crate::schema::{
    ChartDoc, ChristoffelDoc, ClassDoc, DepthDoc, DimDoc, EnuFunctionDoc, EquivDoc, EulerDoc,
    FormDoc, GraphDoc, MetricDoc, ModelDoc, NormDoc, NormReportDoc, OrbitsDoc, RankBodyDoc,
    RankDoc, RecursionDoc, SeriesTableDoc, ValidationDoc, ViolationDoc,
};

/// Picks the output format: flag first, then COMANIFOLD_FORMAT, then text.
pub fn resolve_format(flag: Option<Format>) -> Result<Format, String> {
    if let Some(format) = flag {
        return Ok(format);
    }
    match std::env::var("COMANIFOLD_FORMAT") {
        Ok(value) => match value.as_str() {
            "text" => Ok(Format::Text),
            "structured" => Ok(Format::Structured),
            other => Err(format!(
                "COMANIFOLD_FORMAT must be `text` or `structured`, not `{other}`"
            )),
        },
        Err(std::env::VarError::NotPresent) => Ok(Format::Text),
        Err(std::env::VarError::NotUnicode(_)) => {
            Err("COMANIFOLD_FORMAT is not valid unicode".to_string())
        }
    }
}

pub fn run(command: Command, format: Format) -> Result<i32> {
    match command {
        Command::Validate { model } => cmd_validate(&model, format),
        Command::Graph { model, d, dot } => cmd_graph(&model, d, dot, format),
        Command::RecursionCheck { model } => cmd_recursion_check(&model, format),
        Command::Euler { model } => cmd_euler(&model, format),
        Command::Pi { model, d } => cmd_pi(&model, d, format),
        Command::Equiv { g1, g2 } => cmd_equiv(&g1, &g2, format),
        Command::Orbits { graph } => cmd_orbits(&graph, format),
        Command::Enum {
            graph,
            series,
            truncate,
        } => cmd_enum(&graph, &series, truncate, format),
        Command::Realize { graph, d, output } => cmd_realize(&graph, d, &output, format),
        Command::Geom(geom) => match geom {
            GeomCommand::Dim { chart } => cmd_dim(&chart, format),
            GeomCommand::Dform { form } => cmd_dform(&form, format),
            GeomCommand::Christoffel { metric, at } => cmd_christoffel(&metric, &at, format),
            GeomCommand::NormCheck {
                norm,
                samples,
                seed,
                tol,
                step,
            } => cmd_norm_check(&norm, samples, seed, tol, step, format),
        },
        Command::Gen {
            seed,
            atoms,
            min_dim,
            max_dim,
            output,
        } => cmd_gen(seed, atoms, min_dim, max_dim, output.as_deref(), format),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_model(path: &Path) -> Result<CombinatorialModel> {
    read_json::<ModelDoc>(path)?.into_model()
}

fn read_graph(path: &Path) -> Result<LabelledGraph> {
    read_json::<GraphDoc>(path)?.into_graph()
}

fn emit<T: Serialize>(format: Format, doc: &T, text: impl FnOnce() -> String) -> Result<()> {
    match format {
        Format::Structured => println!("{}", serde_json::to_string_pretty(doc)?),
        Format::Text => println!("{}", text()),
    }
    Ok(())
}

fn violation_doc(v: &Violation) -> ViolationDoc {
    ViolationDoc {
        code: v.code.to_string(),
        subject: v.subject.clone(),
        message: v.message.clone(),
    }
}

fn validation_text(report: &ValidationReport) -> String {
    let mut lines = Vec::new();
    for v in &report.violations {
        lines.push(format!("violation {v}"));
    }
    for a in &report.advisories {
        lines.push(format!("advisory {a}"));
    }
    if report.is_clean() {
        lines.push("ok".to_string());
    }
    lines.join("\n")
}

fn cmd_validate(path: &Path, format: Format) -> Result<i32> {
    let model = read_model(path)?;
    let report = validate_model(&model);
    let doc = ValidationDoc {
        clean: report.is_clean(),
        violations: report.violations.iter().map(violation_doc).collect(),
        advisories: report.advisories.iter().map(violation_doc).collect(),
    };
    emit(format, &doc, || validation_text(&report))?;
    Ok(if report.is_clean() { 0 } else { 1 })
}

fn graph_text(g: &LabelledGraph) -> String {
    let mut lines = Vec::new();
    for v in g.vertices() {
        lines.push(format!("vertex {} {}", v.id, v.label));
    }
    for (a, b) in g.edges() {
        lines.push(format!("edge {a} {b}"));
    }
    lines.join("\n")
}

fn cmd_graph(path: &Path, d: u32, dot: bool, format: Format) -> Result<i32> {
    let model = read_model(path)?;
    let g = build_graph(&model, d)?;
    if dot {
        print!("{}", export_dot(&g));
        return Ok(0);
    }
    emit(format, &GraphDoc::from_graph(&g), || graph_text(&g))?;
    Ok(0)
}

fn cmd_recursion_check(path: &Path, format: Format) -> Result<i32> {
    let model = read_model(path)?;
    let mut current = build_graph(&model, 1)?;
    let min_dim = model.min_dim().expect("a buildable model has atoms");
    let mut depths = Vec::new();
    let mut ok = true;
    for d in 1..min_dim {
        let drop = edge_drop_set(&model, d)?;
        let derived = derive_next(&current, &drop)?;
        let direct = build_graph(&model, d + 1)?;
        let matches = derived == direct;
        ok &= matches;
        depths.push(DepthDoc {
            d: d + 1,
            dropped: drop.len(),
            matches,
        });
        current = direct;
    }
    let doc = RecursionDoc { depths, ok };
    emit(format, &doc, || {
        let mut lines: Vec<String> = doc
            .depths
            .iter()
            .map(|s| format!("depth {} dropped {} matches {}", s.d, s.dropped, s.matches))
            .collect();
        lines.push(if doc.ok { "ok".into() } else { "failed".into() });
        lines.join("\n")
    })?;
    Ok(if ok { 0 } else { 1 })
}

fn cmd_euler(path: &Path, format: Format) -> Result<i32> {
    let model = read_model(path)?;
    let euler = euler_characteristic(&model)?;
    emit(format, &EulerDoc { euler }, || euler.to_string())?;
    Ok(0)
}

fn cmd_pi(path: &Path, d: u32, format: Format) -> Result<i32> {
    let model = read_model(path)?;
    let rank = fundamental_group_rank(&model, d)?;
    let simply_connected = match is_simply_d_connected(&model, d) {
        Ok(flag) => flag,
        Err(InvariantError::NotDConnected(_)) => false,
        Err(e) => return Err(e.into()),
    };
    let doc = RankDoc {
        d,
        rank: RankBodyDoc {
            total: rank.total,
            atom_part: rank.atom_part.clone(),
            graph_part: rank.graph_part,
        },
        simply_connected,
    };
    emit(format, &doc, || {
        let mut text = format!("total {}\ngraph_part {}\n", rank.total, rank.graph_part);
        for (id, r) in &rank.atom_part {
            let _ = writeln!(text, "atom {id} {r}");
        }
        let _ = write!(text, "simply_connected {simply_connected}");
        text
    })?;
    Ok(0)
}

fn cmd_equiv(g1: &Path, g2: &Path, format: Format) -> Result<i32> {
    let a = read_graph(g1)?;
    let b = read_graph(g2)?;
    let equivalent = are_equivalent(&a, &b);
    emit(format, &EquivDoc { equivalent }, || equivalent.to_string())?;
    Ok(if equivalent { 0 } else { 1 })
}

fn cmd_orbits(path: &Path, format: Format) -> Result<i32> {
    let g = read_graph(path)?;
    let report = automorphism_orbits(&g)?;
    let doc = OrbitsDoc {
        pi0: report.pi0,
        class_transitive: report.class_transitive,
        classes: report
            .classes
            .iter()
            .map(|c| ClassDoc {
                label: c.label,
                vertices: c.vertices.clone(),
            })
            .collect(),
        orbits: report.orbits.clone(),
    };
    emit(format, &doc, || {
        let mut lines = vec![
            format!("pi0 {}", report.pi0),
            format!("class_transitive {}", report.class_transitive),
        ];
        for class in &report.classes {
            lines.push(format!(
                "class {}: {}",
                class.label,
                class.vertices.join(" ")
            ));
        }
        for orbit in &report.orbits {
            let labels: Vec<String> = orbit.iter().map(u32::to_string).collect();
            lines.push(format!("orbit: {}", labels.join(" ")));
        }
        lines.join("\n")
    })?;
    Ok(0)
}

fn cmd_enum(graph: &Path, series: &Path, truncate: u32, format: Format) -> Result<i32> {
    let g = read_graph(graph)?;
    let table = read_json::<SeriesTableDoc>(series)?.into_table()?;
    let function = model_enufunction(&g, &table, truncate)?;
    let doc = EnuFunctionDoc::from_function(&function);
    emit(format, &doc, || {
        let mut lines = vec![
            format!("pi0 {}", function.pi0),
            format!("factor {}", function.factor),
            format!("series {}", function.series),
        ];
        if let Some(literal) = &function.literal {
            let shape = match literal.form {
                SpecialForm::CompleteGraph { order } => format!("complete_graph order {order}"),
                SpecialForm::CompleteMultipartite { distinct_labels } => {
                    format!("complete_multipartite distinct_labels {distinct_labels}")
                }
            };
            lines.push(format!("literal {shape} factor {}", literal.factor));
            lines.push(format!("literal_series {}", literal.series));
        }
        lines.join("\n")
    })?;
    Ok(0)
}

fn cmd_realize(graph: &Path, d: u32, output: &Path, format: Format) -> Result<i32> {
    let g = read_graph(graph)?;
    let model = match realize_model(&g, d) {
        Ok(model) => model,
        Err(GraphError::NotMember(report)) => {
            for v in &report.violations {
                eprintln!("violation {v}");
            }
            bail!("the graph is not realizable as a model");
        }
        Err(e) => return Err(e.into()),
    };
    let doc = ModelDoc::from_model(&model);
    let json = serde_json::to_string_pretty(&doc)?;
    std::fs::write(output, format!("{json}\n"))
        .with_context(|| format!("writing {}", output.display()))?;
    emit(format, &doc, || {
        format!(
            "wrote {} atoms and {} intersections to {}",
            model.atoms.len(),
            model.intersections.len(),
            output.display()
        )
    })?;
    Ok(0)
}

fn cmd_dim(path: &Path, format: Format) -> Result<i32> {
    let chart = read_json::<ChartDoc>(path)?.into_chart()?;
    let tangent_dimension = chart.tangent_dimension();
    let doc = DimDoc {
        chart: ChartDoc::from_chart(&chart),
        tangent_dimension,
    };
    emit(format, &doc, || tangent_dimension.to_string())?;
    Ok(0)
}

fn form_text(form: &DifferentialForm) -> String {
    let mut lines = vec![format!("degree {}", form.degree())];
    if form.is_zero() {
        lines.push("0".to_string());
    }
    for (indices, poly) in form.terms() {
        let basis = if indices.is_empty() {
            "1".to_string()
        } else {
            let factors: Vec<String> = indices.iter().map(|i| format!("dx{i}")).collect();
            factors.join("^")
        };
        lines.push(format!("{basis}: {poly}"));
    }
    lines.join("\n")
}

fn cmd_dform(path: &Path, format: Format) -> Result<i32> {
    let form = read_json::<FormDoc>(path)?.into_form()?;
    let derivative = exterior_derivative(&form);
    emit(format, &FormDoc::from_form(&derivative), || {
        form_text(&derivative)
    })?;
    Ok(0)
}

fn cmd_christoffel(path: &Path, at: &[f64], format: Format) -> Result<i32> {
    let metric = read_json::<MetricDoc>(path)?.into_metric()?;
    let dim = metric.chart().tangent_dimension();
    if at.len() != dim {
        bail!(
            "the point has {} coordinates but the chart flattens to {}",
            at.len(),
            dim
        );
    }
    let connection = levi_civita(&metric);
    let coeffs = connection.evaluate(at)?;
    let residual = metric_compatibility_residual(&metric, &connection, at)?;
    let torsion_max = torsion(&connection, at)?.max_abs();
    let mut gamma = vec![vec![vec![0.0; dim]; dim]; dim];
    for (c, plane) in gamma.iter_mut().enumerate() {
        for (a, row) in plane.iter_mut().enumerate() {
            for (b, entry) in row.iter_mut().enumerate() {
                *entry = coeffs.get(c, a, b);
            }
        }
    }
    let doc = ChristoffelDoc {
        point: at.to_vec(),
        gamma,
        compatibility_residual: residual,
        torsion_max,
    };
    emit(format, &doc, || {
        let mut lines = Vec::new();
        for c in 0..dim {
            for a in 0..dim {
                for b in 0..dim {
                    let value = coeffs.get(c, a, b);
                    if value != 0.0 {
                        lines.push(format!("gamma[{c}][{a}][{b}] = {value}"));
                    }
                }
            }
        }
        if lines.is_empty() {
            lines.push("all coefficients vanish".to_string());
        }
        lines.push(format!("compatibility_residual {residual}"));
        lines.push(format!("torsion_max {torsion_max}"));
        lines.join("\n")
    })?;
    Ok(0)
}

fn cmd_norm_check(
    path: &Path,
    samples: usize,
    seed: u64,
    tol: Option<f64>,
    step: Option<f64>,
    format: Format,
) -> Result<i32> {
    let doc: NormDoc = read_json(path)?;
    if samples == 0 {
        bail!("need at least one sample");
    }
    let dim = doc.dim();
    let norm = doc.build()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample_vecs: Vec<Vec<f64>> = Vec::with_capacity(samples);
    while sample_vecs.len() < samples {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect();
        // Near-zero vectors make the relative homogeneity bound meaningless.
        if v.iter().map(|x| x * x).sum::<f64>() > 0.01 {
            sample_vecs.push(v);
        }
    }
    let mut config = NormCheckConfig::default();
    if let Some(tol) = tol {
        config.homogeneity_tol = tol;
    }
    if let Some(step) = step {
        config.hessian_step = step;
    }
    let report = minkowski_check(&norm, &sample_vecs, &[0.5, 1.0, 2.0, 10.0], &config)?;
    let doc = NormReportDoc {
        samples,
        non_negative: report.non_negative,
        min_value: report.min_value,
        homogeneous: report.homogeneous,
        worst_homogeneity: report.worst_homogeneity,
        positive_definite: report.positive_definite,
        min_eigenvalue: report.min_eigenvalue,
        passed: report.passed(),
    };
    emit(format, &doc, || {
        [
            format!("samples {}", doc.samples),
            format!("non_negative {}", doc.non_negative),
            format!("min_value {}", doc.min_value),
            format!("homogeneous {}", doc.homogeneous),
            format!("worst_homogeneity {}", doc.worst_homogeneity),
            format!("positive_definite {}", doc.positive_definite),
            format!("min_eigenvalue {}", doc.min_eigenvalue),
            format!("passed {}", doc.passed),
        ]
        .join("\n")
    })?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_gen(
    seed: u64,
    atoms: u64,
    min_dim: u32,
    max_dim: u32,
    output: Option<&Path>,
    _format: Format,
) -> Result<i32> {
    if min_dim > max_dim {
        eprintln!("error: --min-dim must not exceed --max-dim");
        return Ok(2);
    }
    let model = seeded_random_model(seed, atoms as usize, min_dim..=max_dim);
    let doc = ModelDoc::from_model(&model);
    let json = serde_json::to_string_pretty(&doc)?;
    match output {
        Some(path) => std::fs::write(path, format!("{json}\n"))
            .with_context(|| format!("writing {}", path.display()))?,
        None => println!("{json}"),
    }
    Ok(0)
}
