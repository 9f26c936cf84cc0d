//! Whole-algebra analysis and the checks run against it.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::algebra::PathAlgebra;
use crate::decompose::is_indecomposable;
use crate::error::{Error, Result};
use crate::homological::{ext_dim, ext_dim_dual, global_dim, inj_dim, proj_dim, HomDim};
use crate::module::{dual_regular, find_isomorphism, projective, regular, Rep};
use crate::strat::{classify, filtration_certificate, filtration_certificate_bottom, StratClass, Stratified};
use crate::tilting::{
    add_dim, characteristic_cotilting, characteristic_tilting, gfd_algebra, gfd_delta_bar, gfd_nabla_bar,
    gfd_nabla_bar_by_coresolution, in_add, probe_modules, ringel_dual, CharCotilting, CharTilting, GfdReport,
};

/// Probe modules up to this total dimension enter the filtration
/// cross-checks.
pub const CERTIFICATE_PROBE_DIM: usize = 8;
/// Highest degree compared by the Ext balance check.
pub const BALANCE_DEGREE: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Inconclusive => "inconclusive",
            Status::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub witness: String,
}

impl Check {
    /// Runs `f`; budget and cap exhaustion become `Inconclusive`.
    pub fn run(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
        match f() {
            Ok((true, witness)) => Check { name, status: Status::Pass, witness },
            Ok((false, witness)) => Check { name, status: Status::Fail, witness },
            Err(e) => Check { name, status: error_status(&e), witness: e.to_string() },
        }
    }
}

/// How an error raised during a check is reported.
pub fn error_status(e: &Error) -> Status {
    match e {
        Error::Truncated(_) | Error::SearchBudgetExceeded(_) | Error::DecompositionFailed => Status::Inconclusive,
        _ => Status::Fail,
    }
}

/// Worst status in a list; `Pass` when empty.
pub fn overall(checks: &[Check]) -> Status {
    checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass)
}

#[derive(Debug, Clone)]
pub struct RingelSummary {
    pub algebra: PathAlgebra,
    pub global_dim: HomDim,
}

/// Everything computed about one algebra.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub algebra: PathAlgebra,
    pub cap: usize,
    pub class: StratClass,
    pub global_dim: HomDim,
    pub stratified: Option<Stratified>,
    pub tilting: Option<CharTilting>,
    pub cotilting: Option<CharCotilting>,
    pub pd_tilting: Option<HomDim>,
    pub id_tilting: Option<HomDim>,
    pub id_cotilting: Option<HomDim>,
    pub gfd: Option<GfdReport>,
    /// `Δ̄-gfd(D(A_A))`, when the opposite algebra is standardly stratified.
    pub gfd_delta_bar_dual_regular: Option<usize>,
    pub ringel: Option<RingelSummary>,
    /// Failures met while building the optional parts.
    pub errors: Vec<(&'static str, Error)>,
}

pub fn analyze(a: &PathAlgebra, cap: usize) -> Result<Analysis> {
    let class = classify(a)?;
    let gl = global_dim(a, cap);
    let mut out = Analysis {
        algebra: a.clone(),
        cap,
        class: class.clone(),
        global_dim: gl,
        stratified: None,
        tilting: None,
        cotilting: None,
        pd_tilting: None,
        id_tilting: None,
        id_cotilting: None,
        gfd: None,
        gfd_delta_bar_dual_regular: None,
        ringel: None,
        errors: Vec::new(),
    };
    if !class.standardly_stratified {
        return Ok(out);
    }
    let mut s = Stratified::with_class(a, class.clone())?;
    s.cap = cap;
    match characteristic_tilting(&s) {
        Ok(t) => {
            out.pd_tilting = Some(proj_dim(&t.module, cap));
            out.id_tilting = Some(inj_dim(&t.module, cap));
            match gfd_algebra(&s, &t) {
                Ok(r) => out.gfd = Some(r),
                Err(e) => out.errors.push(("gfd", e)),
            }
            match ringel_dual(&t) {
                Ok(b) => {
                    let g = global_dim(&b, cap);
                    out.ringel = Some(RingelSummary { algebra: b, global_dim: g });
                }
                Err(e) => out.errors.push(("ringel_dual", e)),
            }
            out.tilting = Some(t);
        }
        Err(e) => out.errors.push(("tilting", e)),
    }
    if class.properly_stratified {
        match characteristic_cotilting(&s) {
            Ok(c) => {
                out.id_cotilting = Some(inj_dim(&c.module, cap));
                out.cotilting = Some(c);
            }
            Err(e) => out.errors.push(("cotilting", e)),
        }
        match opposite_stratified(a, cap).and_then(|op| gfd_delta_bar(&op, &dual_regular(a))) {
            Ok(g) => out.gfd_delta_bar_dual_regular = Some(g),
            Err(e) => out.errors.push(("gfd_delta_bar", e)),
        }
    }
    out.stratified = Some(s);
    Ok(out)
}

fn opposite_stratified(a: &PathAlgebra, cap: usize) -> Result<Stratified> {
    let mut op = Stratified::new(&a.opposite())?;
    op.cap = cap;
    Ok(op)
}

fn finite(d: HomDim, cap: usize) -> Result<usize> {
    d.finite().ok_or(Error::Truncated(cap))
}

fn dims_label(m: &Rep) -> String {
    let parts: Vec<String> = m.dims().iter().map(|d| d.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Highest `i ≤ bound` with `Ext^i(t, x) ≠ 0`, or 0.
fn top_ext_degree(t: &Rep, x: &Rep, bound: usize, cap: usize) -> Result<usize> {
    for i in (1..=bound).rev() {
        if ext_dim(i, t, x, cap)? != 0 {
            return Ok(i);
        }
    }
    Ok(0)
}

/// Runs every check whose hypotheses hold for the analysed algebra.
pub fn run_checks(an: &Analysis) -> Vec<Check> {
    let mut checks = Vec::new();
    let a = &an.algebra;
    let cap = an.cap;
    for (what, e) in &an.errors {
        let name = match *what {
            "tilting" => "tilting_construction",
            "cotilting" => "cotilting_construction",
            "gfd" => "gfd_computation",
            "ringel_dual" => "ringel_dual_presentation",
            _ => "gfd_delta_bar_computation",
        };
        checks.push(Check { name, status: error_status(e), witness: e.to_string() });
    }
    if let Some(s) = &an.stratified {
        if s.deltas.iter().all(|d| d.total_dim() == 1) {
            checks.push(Check::run("simple_standards_gldim_equals_inj_dim_regular", || {
                let pd_dual = proj_dim(&dual_regular(a), cap);
                let id_reg = inj_dim(&regular(a), cap);
                let ok = an.global_dim == pd_dual && pd_dual == id_reg;
                Ok((ok, format!("gl.dim {} pd D(A) {} id A {}", an.global_dim, pd_dual, id_reg)))
            }));
        }
    }
    let (s, t) = match (&an.stratified, &an.tilting) {
        (Some(s), Some(t)) => (s, t),
        _ => return checks,
    };
    let probes = probe_modules(s);
    checks.push(Check::run("tilting_summands_certified", || {
        for (l, ts) in t.summands.iter().enumerate() {
            if !t.delta_certificates[l].verify(&s.deltas) {
                return Ok((false, format!("Δ-certificate of T({}) does not verify", a.vertex_name(l))));
            }
            let seq = &t.sequences[l];
            if !seq.embedding.is_injective() || !seq.cokernel_certificate.verify(&s.deltas[..l]) {
                return Ok((false, format!("defining sequence of T({}) does not verify", a.vertex_name(l))));
            }
            if !s.in_f_nabla_bar_by_ext(ts)? {
                return Ok((false, format!("T({}) has Ext^1 against a standard module", a.vertex_name(l))));
            }
            for (m, other) in t.summands.iter().enumerate().skip(l + 1) {
                if find_isomorphism(ts, other).is_some() {
                    return Ok((false, format!("T({}) ≅ T({})", a.vertex_name(l), a.vertex_name(m))));
                }
            }
        }
        let dims: Vec<String> = t.summands.iter().map(dims_label).collect();
        Ok((true, format!("summands {}", dims.join(" "))))
    }));
    checks.push(Check::run("tilting_is_rigid", || {
        let pd = finite(proj_dim(&t.module, cap), cap)?;
        for i in 1..=pd {
            let e = ext_dim(i, &t.module, &t.module, cap)?;
            if e != 0 {
                return Ok((false, format!("dim Ext^{i}(T,T) = {e}")));
            }
        }
        Ok((true, format!("Ext^i(T,T) = 0 for 1 <= i <= {pd}")))
    }));
    checks.push(Check::run("tilting_ext_bound_on_regular", || {
        let pd = finite(proj_dim(&t.module, cap), cap)?;
        let reg = regular(a);
        let top = top_ext_degree(&t.module, &reg, pd + 2, cap)?;
        let attained = pd == 0 || ext_dim(pd, &t.module, &reg, cap)? != 0;
        Ok((top <= pd && attained, format!("top Ext degree against A {top}, pd T {pd}")))
    }));
    checks.push(Check::run("ext_vanishing_matches_gfd", || {
        let pd = finite(proj_dim(&t.module, cap), cap)?;
        for x in &probes {
            let top = top_ext_degree(&t.module, x, pd + 1, cap)?;
            let g = gfd_nabla_bar(s, x)?;
            if top != g {
                return Ok((false, format!("module {}: top Ext(T,-) degree {top}, gfd {g}", dims_label(x))));
            }
        }
        Ok((true, format!("{} probe modules", probes.len())))
    }));
    checks.push(Check::run("gfd_matches_coresolution_length", || {
        for x in &probes {
            let g = gfd_nabla_bar(s, x)?;
            let c = gfd_nabla_bar_by_coresolution(s, x)?;
            if g != c {
                return Ok((false, format!("module {}: Ext scan {g}, coresolution {c}", dims_label(x))));
            }
        }
        Ok((true, format!("{} probe modules", probes.len())))
    }));
    if let Some(r) = &an.gfd {
        checks.push(Check::run("gfd_four_way_equality", || {
            let w = format!(
                "pd T {}, gfd(A) {}, T-codim(A) {}, probe sup {} over {} probes",
                r.pd_tilting, r.gfd_regular, r.t_codim_regular, r.probe_sup, r.probe_count
            );
            Ok((r.consistent(), w))
        }));
    }
    checks.push(Check::run("add_tilting_bidirectional", || {
        for ts in &t.summands {
            if !s.in_f_delta_by_ext(ts)? || !s.in_f_nabla_bar_by_ext(ts)? {
                return Ok((false, format!("summand {} fails an Ext criterion", dims_label(ts))));
            }
        }
        let mut inside = 0;
        for x in &probes {
            if s.in_f_delta_by_ext(x)? && s.in_f_nabla_bar_by_ext(x)? {
                inside += 1;
                if !in_add(x, &t.summands)? {
                    return Ok((false, format!("module {} is Ext-orthogonal but not in add T", dims_label(x))));
                }
            }
        }
        Ok((true, format!("{inside} probe modules in F(Δ) ∩ F(∇̄)")))
    }));
    checks.push(Check::run("delta_certificate_matches_ext_criterion", || {
        let mut n = 0;
        for x in probes.iter().filter(|x| x.total_dim() <= CERTIFICATE_PROBE_DIM) {
            n += 1;
            let by_cert = filtration_certificate(x, &s.deltas)?.is_some();
            let by_ext = s.in_f_delta_by_ext(x)?;
            if by_cert != by_ext {
                return Ok((false, format!("module {}: certificate {by_cert}, Ext {by_ext}", dims_label(x))));
            }
        }
        Ok((true, format!("{n} probe modules")))
    }));
    checks.push(Check::run("nabla_bar_certificate_matches_ext_criterion", || {
        let mut n = 0;
        for x in probes.iter().filter(|x| x.total_dim() <= CERTIFICATE_PROBE_DIM) {
            n += 1;
            let by_cert = filtration_certificate_bottom(x, &s.nabla_bars)?.is_some();
            let by_ext = s.in_f_nabla_bar_by_ext(x)?;
            if by_cert != by_ext {
                return Ok((false, format!("module {}: certificate {by_cert}, Ext {by_ext}", dims_label(x))));
            }
        }
        Ok((true, format!("{n} probe modules")))
    }));
    checks.push(Check::run("ext_balance", || {
        let mut indec = Vec::new();
        for x in &probes {
            if is_indecomposable(x)? {
                indec.push(x);
            }
        }
        for m in &indec {
            for n in &indec {
                for i in 0..=BALANCE_DEGREE {
                    let l = ext_dim(i, m, n, cap)?;
                    let r = ext_dim_dual(i, m, n, cap)?;
                    if l != r {
                        return Ok((false, format!("Ext^{i}({}, {}): {l} vs {r}", dims_label(m), dims_label(n))));
                    }
                }
            }
        }
        Ok((true, format!("{} indecomposable modules, degrees 0..={BALANCE_DEGREE}", indec.len())))
    }));
    if an.class.properly_stratified {
        checks.push(Check::run("opposite_standardly_stratified", || {
            let c = classify(&a.opposite())?;
            Ok((c.standardly_stratified, format!("opposite algebra standardly stratified: {}", c.standardly_stratified)))
        }));
    }
    if let Some(c) = &an.cotilting {
        checks.push(Check::run("cotilting_gfd_equalities", || {
            let id_s = finite(inj_dim(&c.module, cap), cap)?;
            let dual_reg = dual_regular(a);
            let s_dim = add_dim(&dual_reg, &c.summands, cap)?;
            let g = an.gfd_delta_bar_dual_regular.ok_or(Error::NotStratified)?;
            let op = opposite_stratified(a, cap)?;
            let mut sup = 0;
            for x in &probes {
                sup = sup.max(gfd_delta_bar(&op, x)?);
            }
            let ok = g == id_s && id_s == s_dim && sup <= id_s;
            Ok((ok, format!("id S {id_s}, S-dim(D A) {s_dim}, Δ̄-gfd(D A) {g}, probe sup {sup}")))
        }));
        checks.push(Check::run("cotilting_summands_certified", || {
            for k in 0..c.summands.len() {
                if !c.nabla_certificates[k].verify(&s.nablas) || !c.delta_bar_certificates[k].verify(&s.delta_bars) {
                    return Ok((false, format!("certificate of S({}) does not verify", a.vertex_name(k))));
                }
            }
            Ok((true, format!("{} summands", c.summands.len())))
        }));
        let same = find_isomorphism(&t.module, &c.module).is_some();
        if an.class.quasi_hereditary {
            checks.push(Check::run("cotilting_matches_tilting_when_qh", || Ok((same, format!("S ≅ T: {same}")))));
        }
        if same {
            checks.push(Check::run("finitistic_bound_on_probes", || {
                let bound = finite(proj_dim(&t.module, cap), cap)? + finite(inj_dim(&t.module, cap), cap)?;
                let mut n = 0;
                for x in &probes {
                    if let HomDim::Finite(p) = proj_dim(x, cap) {
                        n += 1;
                        if p > bound {
                            return Ok((false, format!("module {} has pd {p} > {bound}", dims_label(x))));
                        }
                    }
                }
                Ok((true, format!("{n} probe modules of finite pd, all with pd <= {bound}")))
            }));
        }
    }
    if an.class.quasi_hereditary {
        let bounds = || -> Result<(usize, usize)> {
            let pd = finite(an.pd_tilting.ok_or(Error::NotStratified)?, cap)?;
            let id = finite(an.id_tilting.ok_or(Error::NotStratified)?, cap)?;
            Ok((pd.max(id), pd + id))
        };
        checks.push(Check::run("gldim_bounded_by_tilting_dims", || {
            let (lo, hi) = bounds()?;
            let g = finite(an.global_dim, cap)?;
            let shape = if g == hi { "upper bound attained" } else { "upper bound strict" };
            Ok((lo <= g && g <= hi, format!("{lo} <= gl.dim {g} <= {hi}, {shape}")))
        }));
        if let Some(r) = &an.ringel {
            checks.push(Check::run("ringel_dual_gldim_bounds", || {
                let (lo, hi) = bounds()?;
                let g = finite(r.global_dim, cap)?;
                Ok((lo <= g && g <= hi, format!("{lo} <= gl.dim of Ringel dual {g} <= {hi}")))
            }));
            checks.push(Check::run("ringel_double_dual_matches", || {
                let b = &r.algebra;
                let mut sb = Stratified::new(b)?;
                sb.cap = cap;
                if !sb.class.quasi_hereditary {
                    return Ok((false, "Ringel dual is not quasi-hereditary".into()));
                }
                let tb = characteristic_tilting(&sb)?;
                let bb = ringel_dual(&tb)?;
                let profile = |x: &PathAlgebra| -> Result<Vec<Vec<usize>>> {
                    let mut v: Vec<Vec<usize>> =
                        (0..x.num_vertices()).map(|i| projective(x, i).map(|p| p.dims().to_vec())).collect::<Result<_>>()?;
                    v.sort();
                    Ok(v)
                };
                let ok = bb.num_vertices() == a.num_vertices() && profile(&bb)? == profile(a)?;
                Ok((ok, format!("double dual has {} vertices and dimension {}", bb.num_vertices(), bb.dim())))
            }));
        }
    }
    checks
}
