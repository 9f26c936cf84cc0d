//! The `analyze`, `check` and `gfd` commands.

use std::path::Path;

use stratakit_core::borel::{duality_check, find_dualities, run_borel_checks, Duality, Embedding};
use stratakit_core::homological::{inj_dim, proj_dim, HomDim};
use stratakit_core::module::{dual_regular, find_isomorphism, injective, projective, regular, simple};
use stratakit_core::strat::{costandard, proper_costandard, proper_standard, standard, Stratified};
use stratakit_core::tilting::{characteristic_tilting, gfd_delta_bar, gfd_nabla_bar, t_codim};
use stratakit_core::verify::{analyze, error_status, overall, run_checks, Analysis, Check, Status};
use stratakit_core::{build_algebra, Error as CoreError, PathAlgebra, Rep};

use crate::corpus::fixture;
use crate::format::{element, module_from_literal, parse, AlgebraFile, ParseError};
use crate::report::Report;

/// Failures that are the input's fault (exit code 2).
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Algebra { path: String, source: CoreError },
    #[error("{0}")]
    Usage(String),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Pass => EXIT_OK,
        Status::Fail => EXIT_CHECK_FAILED,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

/// A parsed input with the label used in messages.
#[derive(Debug, Clone)]
pub struct Input {
    pub label: String,
    pub file: AlgebraFile,
}

/// Reads `arg` as a path, falling back to a bundled fixture of that name.
pub fn load(arg: &str) -> Result<Input, InputError> {
    let path = Path::new(arg);
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg).to_string();
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => match fixture(arg) {
            Some(t) => t.to_string(),
            None => return Err(InputError::Io { path: arg.to_string(), source: e }),
        },
    };
    let file = parse(&text, &stem).map_err(|source| InputError::Parse { path: arg.to_string(), source })?;
    Ok(Input { label: arg.to_string(), file })
}

pub fn algebra(input: &Input) -> Result<PathAlgebra, InputError> {
    if input.file.spec.vertices.is_empty() {
        return Err(InputError::Usage(format!("{}: no vertices declared", input.label)));
    }
    build_algebra(input.file.spec.clone()).map_err(|source| InputError::Algebra { path: input.label.clone(), source })
}

fn dims(m: &Rep) -> String {
    let parts: Vec<String> = m.dims().iter().map(|d| d.to_string()).collect();
    format!("({})", parts.join(","))
}

fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn error_key(what: &str) -> String {
    format!("errors.{what}")
}

/// Classification and the table of homological dimensions.
pub fn analysis_report(an: &Analysis) -> Report {
    let a = &an.algebra;
    let mut r = Report::default();
    r.push("algebra.name", a.name());
    r.push("algebra.field", a.field());
    r.push("algebra.vertices", a.spec().vertices.join(" "));
    r.push("algebra.arrows", a.num_arrows());
    r.push("algebra.dim", a.dim());
    for i in 0..a.num_vertices() {
        r.push(format!("algebra.projective.{}", a.vertex_name(i)), dims(&projective(a, i).unwrap()));
    }
    r.push("class.standardly_stratified", flag(an.class.standardly_stratified));
    r.push("class.properly_stratified", flag(an.class.properly_stratified));
    r.push("class.quasi_hereditary", flag(an.class.quasi_hereditary));
    if let Some(v) = an.class.failing_vertex {
        r.push("class.failing_vertex", a.vertex_name(v));
    }
    r.push("dims.global_dim", an.global_dim);
    if let Some(s) = &an.stratified {
        for (fam, mods) in [("standard", &s.deltas), ("proper_standard", &s.delta_bars), ("costandard", &s.nablas), ("proper_costandard", &s.nabla_bars)] {
            for (i, m) in mods.iter().enumerate() {
                r.push(format!("{fam}.{}", a.vertex_name(i)), dims(m));
            }
        }
    }
    if let Some(t) = &an.tilting {
        for (i, m) in t.summands.iter().enumerate() {
            r.push(format!("tilting.summand.{}", a.vertex_name(i)), dims(m));
        }
        r.push("tilting.pd", an.pd_tilting.unwrap());
        r.push("tilting.id", an.id_tilting.unwrap());
        r.push("tilting.is_regular", flag(find_isomorphism(&t.module, &regular(a)).is_some()));
    }
    if let Some(c) = &an.cotilting {
        for (i, m) in c.summands.iter().enumerate() {
            r.push(format!("cotilting.summand.{}", a.vertex_name(i)), dims(m));
        }
        r.push("cotilting.id", an.id_cotilting.unwrap());
        if let Some(t) = &an.tilting {
            r.push("cotilting.matches_tilting", flag(find_isomorphism(&t.module, &c.module).is_some()));
        }
    }
    if let Some(g) = &an.gfd {
        r.push("gfd.nabla_bar_regular", g.gfd_regular);
        r.push("gfd.t_codim_regular", g.t_codim_regular);
        r.push("gfd.probe_sup", g.probe_sup);
        r.push("gfd.probe_count", g.probe_count);
    }
    if let Some(g) = an.gfd_delta_bar_dual_regular {
        r.push("gfd.delta_bar_dual_regular", g);
    }
    if an.class.quasi_hereditary {
        if let (Some(HomDim::Finite(p)), Some(HomDim::Finite(i))) = (an.pd_tilting, an.id_tilting) {
            r.push("bounds.lower", p.max(i));
            r.push("bounds.upper", p + i);
            if let HomDim::Finite(g) = an.global_dim {
                r.push("bounds.global_dim_vs_upper", if g == p + i { "attained" } else { "strict" });
            }
        }
    }
    if let Some(rd) = &an.ringel {
        r.push("ringel.vertices", rd.algebra.spec().vertices.join(" "));
        r.push("ringel.dim", rd.algebra.dim());
        r.push("ringel.global_dim", rd.global_dim);
    }
    for (what, e) in &an.errors {
        r.push(error_key(what), e);
    }
    r
}

fn analysis_status(an: &Analysis) -> Status {
    an.errors.iter().map(|(_, e)| error_status(e)).max().unwrap_or(Status::Pass)
}

fn core_error(label: &str, e: CoreError) -> InputError {
    InputError::Algebra { path: label.to_string(), source: e }
}

pub fn run_analyze(input: &Input, cap: usize) -> Result<(Report, Status), InputError> {
    let a = algebra(input)?;
    let an = analyze(&a, cap).map_err(|e| core_error(&input.label, e))?;
    let status = analysis_status(&an);
    let mut r = analysis_report(&an);
    r.push("summary.status", status.as_str());
    Ok((r, status))
}

fn push_checks(r: &mut Report, checks: &[Check]) {
    for c in checks {
        r.push(format!("check.{}.status", c.name), c.status.as_str());
        r.push(format!("check.{}.witness", c.name), &c.witness);
    }
}

/// `σ` from a `duality` block: listed pairs are swapped, other arrows fixed.
fn sigma_from_block(a: &PathAlgebra, pairs: &[(String, String)]) -> Result<Vec<usize>, CoreError> {
    let mut sigma: Vec<usize> = (0..a.num_arrows()).collect();
    for (x, y) in pairs {
        let (i, j) = (a.spec().arrow_index(x)?, a.spec().arrow_index(y)?);
        sigma[i] = j;
        sigma[j] = i;
    }
    Ok(sigma)
}

fn embedding_for(ambient: &PathAlgebra, sub: &PathAlgebra, blocks: &[&Input]) -> Result<Embedding, InputError> {
    let (input, block) = blocks
        .iter()
        .find_map(|i| i.file.embedding.as_ref().map(|b| (*i, b)))
        .ok_or_else(|| InputError::Usage("no embedding block found for --borel".into()))?;
    let mut images = Vec::new();
    for arrow in sub.arrows() {
        let terms = block
            .iter()
            .find(|(n, _)| *n == arrow.name)
            .ok_or_else(|| InputError::Usage(format!("{}: no image given for arrow {}", input.label, arrow.name)))?;
        images.push(element(ambient, &terms.1).map_err(|e| core_error(&input.label, e))?);
    }
    Embedding::from_arrow_images(sub, ambient, images).map_err(|e| core_error(&input.label, e))
}

pub fn run_check(
    input: &Input,
    borel: Option<&Input>,
    embedding: Option<&Input>,
    cap: usize,
) -> Result<(Report, Status), InputError> {
    let a = algebra(input)?;
    let an = analyze(&a, cap).map_err(|e| core_error(&input.label, e))?;
    let mut r = analysis_report(&an);
    let mut checks = run_checks(&an);
    if let Some(b_in) = borel {
        let b = algebra(b_in)?;
        let sources: Vec<&Input> = embedding.into_iter().chain([b_in, input]).collect();
        let e = embedding_for(&a, &b, &sources)?;
        let mut duality: Option<Duality> = None;
        match &input.file.duality {
            Some(pairs) => {
                let sigma = sigma_from_block(&a, pairs).map_err(|e| core_error(&input.label, e))?;
                r.push("duality.source", "supplied");
                let d = duality_check(&a, &sigma);
                checks.push(Check::run("duality_is_anti_automorphism", || {
                    Ok(match &d {
                        Ok(_) => (true, "relations preserved and σ is an involution".to_string()),
                        Err(e) => (false, e.to_string()),
                    })
                }));
                duality = d.ok();
            }
            None => match find_dualities(&a, 6).into_iter().next() {
                Some(d) => {
                    r.push("duality.source", "search");
                    duality = Some(d);
                }
                None => r.push("duality.source", "none"),
            },
        }
        if let Some(d) = &duality {
            let pairs: Vec<String> = d
                .sigma
                .iter()
                .enumerate()
                .filter(|(i, s)| i <= s)
                .map(|(i, &s)| format!("{}={}", a.arrow(i).name, a.arrow(s).name))
                .collect();
            r.push("duality.sigma", pairs.join(" "));
        }
        r.push("borel.sub", b.name());
        r.push("borel.sub_dim", b.dim());
        checks.extend(run_borel_checks(&e, duality.as_ref(), cap));
    }
    push_checks(&mut r, &checks);
    let status = overall(&checks).max(analysis_status(&an));
    r.push("summary.checks", checks.len());
    r.push("summary.status", status.as_str());
    Ok((r, status))
}

/// Resolves a module literal of the file or one of `simple:v`,
/// `projective:v`, `injective:v`, `standard:v`, `proper_standard:v`,
/// `costandard:v`, `proper_costandard:v`, `tilting:v`, `regular`,
/// `dual_regular`.
pub fn resolve_module(input: &Input, a: &PathAlgebra, name: &str) -> Result<Rep, InputError> {
    if let Some(m) = input.file.modules.iter().find(|m| m.name == name) {
        return module_from_literal(a, m).map_err(|e| core_error(&input.label, e));
    }
    let wrap = |e| core_error(&input.label, e);
    match name {
        "regular" => return Ok(regular(a)),
        "dual_regular" => return Ok(dual_regular(a)),
        _ => {}
    }
    let (kind, v) = name.split_once(':').ok_or_else(|| InputError::Usage(format!("unknown module `{name}`")))?;
    let v = a.vertex(v).map_err(wrap)?;
    match kind {
        "simple" => simple(a, v),
        "projective" => projective(a, v),
        "injective" => injective(a, v),
        "standard" => standard(a, v),
        "proper_standard" => proper_standard(a, v),
        "costandard" => costandard(a, v),
        "proper_costandard" => proper_costandard(a, v),
        "tilting" => Stratified::new(a).and_then(|s| characteristic_tilting(&s)).map(|t| t.summands[v].clone()),
        _ => return Err(InputError::Usage(format!("unknown module kind `{kind}`"))),
    }
    .map_err(wrap)
}

pub fn run_gfd(input: &Input, module: &str, cap: usize) -> Result<(Report, Status), InputError> {
    let a = algebra(input)?;
    let m = resolve_module(input, &a, module)?;
    let mut r = Report::default();
    let mut status = Status::Pass;
    r.push("module.name", module);
    r.push("module.dims", dims(&m));
    r.push("module.pd", proj_dim(&m, cap));
    r.push("module.id", inj_dim(&m, cap));
    let mut record = |r: &mut Report, key: &str, v: Result<String, CoreError>| match v {
        Ok(v) => r.push(key, v),
        Err(e) => {
            status = status.max(error_status(&e));
            r.push(key, format!("error: {e}"));
        }
    };
    match Stratified::new(&a) {
        Ok(mut s) => {
            s.cap = cap;
            record(&mut r, "module.in_f_delta", s.in_f_delta_by_ext(&m).map(|b| flag(b).to_string()));
            record(&mut r, "module.in_f_nabla_bar", s.in_f_nabla_bar_by_ext(&m).map(|b| flag(b).to_string()));
            record(&mut r, "module.gfd_nabla_bar", gfd_nabla_bar(&s, &m).map(|g| g.to_string()));
            match characteristic_tilting(&s) {
                Ok(t) => match t_codim(&m, &t, cap) {
                    Err(CoreError::NoEmbedding) => r.push("module.t_codim", "none"),
                    v => record(&mut r, "module.t_codim", v.map(|g| g.to_string())),
                },
                Err(e) => record(&mut r, "module.t_codim", Err(e)),
            }
        }
        Err(CoreError::NotStratified) => r.push("module.gfd_nabla_bar", "not standardly stratified"),
        Err(e) => record(&mut r, "module.gfd_nabla_bar", Err(e)),
    }
    match Stratified::new(&a.opposite()) {
        Ok(mut op) => {
            op.cap = cap;
            record(&mut r, "module.gfd_delta_bar", gfd_delta_bar(&op, &m).map(|g| g.to_string()));
        }
        Err(CoreError::NotStratified) => r.push("module.gfd_delta_bar", "opposite not standardly stratified"),
        Err(e) => record(&mut r, "module.gfd_delta_bar", Err(e)),
    }
    r.push("summary.status", status.as_str());
    Ok((r, status))
}
