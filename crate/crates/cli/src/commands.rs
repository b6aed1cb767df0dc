use std::fmt::Write as _;
use std::io::Write as _;

use clap::ValueEnum;
use qmod_core::ktheory::{
    index_even, index_even_operator, index_odd, modular_index_kernel, podles_projection_p,
    spectral_projection, suq2_unitary_v, CharacterWeight, KernelOptions, Sign,
};
use qmod_core::modular::{
    chern_vs_free_product, cocycle_suite, pair_with_chain, round_sig, twisted_trace_residual,
    ChernFunctional, Normalization, ReportParams, TwistedChain,
};
use qmod_core::ncalg::{normal_monomials, q_map, verify_q_identity};
use qmod_core::rep::{max_residual, relations_residual};
use qmod_core::{
    build_module, Generator, ModularModule, ModuleKind, NCPolynomial, PairingReport, C64,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{CliError, CliResult, Format, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    /// Even index of the Podleś projection.
    #[value(name = "ch2-P")]
    Ch2P,
    /// Raw Chern character against the twisted 2-chain.
    #[value(name = "omega2")]
    Omega2,
    /// Odd index of the SU_q(2) unitary.
    #[value(name = "ch3-V")]
    Ch3V,
    /// Even index of a spectral projection of A.
    #[value(name = "p_k")]
    Pk,
    /// Kernel-based modular index of the unitary on the DLSSV module.
    #[value(name = "index-dlssv-V")]
    IndexDlssvV,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Ch2P => "ch2-P",
            Quantity::Omega2 => "omega2",
            Quantity::Ch3V => "ch3-V",
            Quantity::Pk => "p_k",
            Quantity::IndexDlssvV => "index-dlssv-V",
        }
    }

    pub fn default_kind(self) -> ModuleKind {
        match self {
            Quantity::Ch2P | Quantity::Omega2 | Quantity::Pk => ModuleKind::Podles,
            Quantity::Ch3V => ModuleKind::Suq2Basic,
            Quantity::IndexDlssvV => ModuleKind::Suq2Dlssv,
        }
    }

    fn accepts(self, kind: ModuleKind) -> bool {
        match self {
            Quantity::Ch2P | Quantity::Omega2 | Quantity::Pk => kind == ModuleKind::Podles,
            Quantity::Ch3V => kind != ModuleKind::Podles,
            Quantity::IndexDlssvV => kind == ModuleKind::Suq2Dlssv,
        }
    }
}

/// Extra arguments of the `p_k` quantity.
#[derive(Clone, Copy, Debug)]
pub struct Projection {
    pub k: usize,
    pub sign: Sign,
}

fn report_params(cfg: &RunConfig) -> ReportParams {
    ReportParams {
        q: cfg.params.q,
        s: (cfg.kind == ModuleKind::Podles).then_some(cfg.params.s),
    }
}

fn build(cfg: &RunConfig) -> CliResult<ModularModule> {
    Ok(build_module(cfg.kind, cfg.params, cfg.window)?)
}

pub fn pair_report(
    quantity: Quantity,
    cfg: &RunConfig,
    proj: Option<Projection>,
) -> CliResult<PairingReport> {
    if !quantity.accepts(cfg.kind) {
        return Err(CliError::Config(format!(
            "{} is not defined for {}",
            quantity.name(),
            cfg.kind
        )));
    }
    let m = build(cfg)?;
    let (q, s) = (cfg.params.q, cfg.params.s);
    let window = cfg.window.to_string();
    let report = |value: C64, tail: f64, reference: f64, scale: f64| {
        PairingReport::new(
            quantity.name(),
            report_params(cfg),
            window.clone(),
            value,
            tail,
            reference,
            cfg.tol,
            scale,
        )
    };
    Ok(match quantity {
        Quantity::Ch2P => {
            let (p, delta) = podles_projection_p()?;
            let e = index_even(&m, &p, &delta)?;
            report(e.value, e.tail, q, 1.0)
        }
        Quantity::Omega2 => {
            let phi = ChernFunctional::new(&m, Normalization::Raw);
            let e = pair_with_chain(&phi, &TwistedChain::omega2())?;
            report(e.value, e.tail, (1.0 + s * s).powi(3), 1.0)
        }
        Quantity::Ch3V => {
            let (v, delta) = suq2_unitary_v()?;
            let e = index_odd(&m, &v, &delta)?;
            let reference = if cfg.kind == ModuleKind::Suq2Basic {
                q
            } else {
                1.0
            };
            report(e.value, e.tail, reference, 1.0)
        }
        Quantity::Pk => {
            let proj = proj.ok_or_else(|| CliError::Config("p_k needs --k and --sign".into()))?;
            let p = spectral_projection(proj.k, proj.sign, cfg.window)?;
            let e = index_even_operator(&m, &p, &CharacterWeight::trivial(1))?;
            let reference = proj.sign.value() * q.powi(-2 * proj.k as i32);
            let mut r = report(e.value, e.tail, reference, reference.abs().max(1.0));
            r.quantity = format!(
                "p_{}^{}",
                proj.k,
                if proj.sign == Sign::Plus { "+" } else { "-" }
            );
            r
        }
        Quantity::IndexDlssvV => {
            let (v, delta) = suq2_unitary_v()?;
            let k = modular_index_kernel(&m, &v, &delta, KernelOptions::default())?;
            report(C64::new(k.index, 0.0), 0.0, 1.0, 1.0).with_kernel(k)
        }
    })
}

fn num(v: f64) -> String {
    let r = round_sig(v);
    if r != 0.0 && r.abs() < 1e-4 {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

pub fn pair_table(r: &PairingReport) -> String {
    let mut out = String::new();
    let s = r
        .params
        .s
        .map_or(String::new(), |s| format!(" s={}", num(s)));
    let _ = writeln!(
        out,
        "{} at q={}{} ({})",
        r.quantity,
        num(r.params.q),
        s,
        r.window
    );
    let _ = writeln!(
        out,
        "  value      {} {:+}i",
        num(r.value.re),
        round_sig(r.value.im)
    );
    let _ = writeln!(out, "  reference  {}", num(r.reference));
    let _ = writeln!(out, "  tail       {:e}", r.tail);
    if let Some(k) = &r.kernel {
        let _ = writeln!(
            out,
            "  kernel     dim {} coker {} gap ratio {:e}",
            k.kernel_dim, k.cokernel_dim, k.gap_ratio
        );
        if let Some(o) = k.expected_overlap {
            let _ = writeln!(out, "  overlap    {}", num(o));
        }
    }
    let _ = writeln!(out, "  {}", if r.pass { "PASS" } else { "FAIL" });
    out
}

pub const CSV_HEADER: [&str; 8] = [
    "q",
    "s",
    "quantity",
    "value_re",
    "value_im",
    "tail",
    "reference",
    "pass",
];

pub fn csv_rows(reports: &[PairingReport]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Io(std::io::Error::other(e.to_string()));
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in reports {
        w.write_record([
            num(r.params.q),
            r.params.s.map_or(String::new(), num),
            r.quantity.clone(),
            num(r.value.re),
            num(r.value.im),
            num(r.tail),
            num(r.reference),
            r.pass.to_string(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("report serializes");
    s.push('\n');
    s
}

pub fn emit(cfg_output: &Option<std::path::PathBuf>, text: &str) -> CliResult<()> {
    match cfg_output {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

pub fn render_pairs(format: Format, reports: &[PairingReport]) -> CliResult<String> {
    Ok(match format {
        Format::Json if reports.len() == 1 => json(&reports[0]),
        Format::Json => json(&reports),
        Format::Csv => csv_rows(reports)?,
        Format::Table => reports.iter().map(pair_table).collect(),
    })
}

/// One row of the `verify` and `relations` reports.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    fn below(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            value: round_sig(value),
            threshold,
            pass: value < threshold,
        }
    }
}

#[derive(Serialize)]
struct CheckReport<'a> {
    kind: &'static str,
    params: ReportParams,
    window: String,
    checks: &'a [Check],
    pass: bool,
}

pub fn render_checks(cfg: &RunConfig, checks: &[Check]) -> CliResult<String> {
    let pass = checks.iter().all(|c| c.pass);
    Ok(match cfg.format {
        Format::Json => json(&CheckReport {
            kind: cfg.kind.name(),
            params: report_params(cfg),
            window: cfg.window.to_string(),
            checks,
            pass,
        }),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let err = |e: csv::Error| CliError::Io(std::io::Error::other(e.to_string()));
            w.write_record(["check", "value", "threshold", "pass"])
                .map_err(err)?;
            for c in checks {
                w.write_record([
                    c.name.clone(),
                    num(c.value),
                    num(c.threshold),
                    c.pass.to_string(),
                ])
                .map_err(err)?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?;
            String::from_utf8(bytes).expect("csv output is utf-8")
        }
        Format::Table => {
            let width = checks
                .iter()
                .map(|c| c.name.chars().count())
                .max()
                .unwrap_or(0);
            let mut out = String::new();
            let p = report_params(cfg);
            let s = p.s.map_or(String::new(), |s| format!(" s={}", num(s)));
            let _ = writeln!(out, "{} at q={}{} ({})", cfg.kind, num(p.q), s, cfg.window);
            for c in checks {
                let pad = width - c.name.chars().count();
                let _ = writeln!(
                    out,
                    "  {}{}  {:<9.2e} < {:.0e}  {}",
                    c.name,
                    " ".repeat(pad),
                    c.value,
                    c.threshold,
                    if c.pass { "ok" } else { "FAIL" }
                );
            }
            let _ = writeln!(out, "{}", if pass { "PASS" } else { "FAIL" });
            out
        }
    })
}

pub fn relation_threshold(kind: ModuleKind) -> f64 {
    match kind {
        ModuleKind::Suq2Dlssv => 1e-10,
        _ => 1e-12,
    }
}

pub fn relation_checks(cfg: &RunConfig) -> CliResult<Vec<Check>> {
    let m = build(cfg)?;
    let t = relation_threshold(cfg.kind);
    Ok(relations_residual(&m)?
        .into_iter()
        .map(|r| Check::below(r.name, r.residual, t))
        .collect())
}

pub fn verify_checks(cfg: &RunConfig) -> CliResult<Vec<Check>> {
    let m = build(cfg)?;
    let tol = cfg.tol;
    let algebra = cfg.kind.algebra();
    let mut checks = Vec::new();
    checks.push(Check::below(
        "relations",
        max_residual(&relations_residual(&m)?),
        relation_threshold(cfg.kind),
    ));

    let monos = normal_monomials(algebra, 2);
    let failures = monos
        .iter()
        .flat_map(|a| monos.iter().map(move |b| (a, b)))
        .filter(|(a, b)| verify_q_identity(a, b).is_err())
        .count();
    checks.push(Check::below("q-identity failures", failures as f64, 0.5));

    let degree = if cfg.kind == ModuleKind::Suq2Dlssv {
        1
    } else {
        2
    };
    let suite = cocycle_suite(&ChernFunctional::new(&m, Normalization::Raw), degree)?;
    checks.push(Check::below(
        "sigma-invariance",
        suite.invariance.max_residual,
        tol,
    ));
    checks.push(Check::below(
        "sigma-cyclicity",
        suite.cyclicity.max_residual,
        tol,
    ));
    checks.push(Check::below(
        "twisted Hochschild",
        suite.hochschild.max_residual,
        tol,
    ));

    let gens: Vec<Generator> = algebra.presentation().generators().to_vec();
    let mut trace = 0.0f64;
    for g in &gens {
        for h in &gens {
            let x = q_map(&NCPolynomial::generator(*g));
            let y = q_map(&NCPolynomial::generator(*h))
                .free_multiply(&q_map(&NCPolynomial::generator(g.star())))?;
            trace = trace.max(twisted_trace_residual(&m, &x, &y)?);
        }
    }
    checks.push(Check::below("twisted trace", trace, tol));

    if cfg.kind == ModuleKind::Podles {
        let monos = normal_monomials(algebra, 1);
        let mut worst = 0.0f64;
        for a in &monos {
            for b in &monos {
                for c in &monos {
                    let (l, r) = chern_vs_free_product(&m, &[a.clone(), b.clone(), c.clone()])?;
                    worst = worst.max((l - r).norm());
                }
            }
        }
        checks.push(Check::below("doubled representation", worst, tol));
    }
    Ok(checks)
}

/// Sweep over a `(q, s)` grid in the current thread pool; rows keep the grid
/// order.
pub fn sweep_reports(
    quantity: Quantity,
    base: &crate::config::Common,
    kind: ModuleKind,
    qs: &[f64],
    ss: &[f64],
    proj: Option<Projection>,
) -> CliResult<Vec<PairingReport>> {
    let points: Vec<(f64, Option<f64>)> = if kind == ModuleKind::Podles {
        qs.iter()
            .flat_map(|&q| ss.iter().map(move |&s| (q, Some(s))))
            .collect()
    } else {
        qs.iter().map(|&q| (q, None)).collect()
    };
    if points.is_empty() {
        return Err(CliError::Config("empty parameter grid".into()));
    }
    let configs: Vec<RunConfig> = points
        .iter()
        .map(|&(q, s)| {
            let mut c = base.clone();
            c.q = Some(q);
            c.s = s;
            c.resolve(kind)
        })
        .collect::<CliResult<_>>()?;
    configs
        .par_iter()
        .map(|c| pair_report(quantity, c, proj))
        .collect()
}

pub fn dump_symbolic(kind: ModuleKind) -> CliResult<String> {
    let algebra = kind.algebra();
    let pres = algebra.presentation();
    let mut out = String::new();
    let _ = writeln!(out, "# relations of {}", algebra.name());
    for (name, terms) in pres.relations() {
        let _ = writeln!(
            out,
            "{name}: {} = 0",
            qmod_core::ncalg::format_terms(&terms)
        );
    }
    let _ = writeln!(out, "# sigma");
    for g in pres.generators() {
        let p = NCPolynomial::generator(*g);
        let _ = writeln!(out, "sigma({}) = {}", g.name(), p.apply_sigma());
    }
    match kind {
        ModuleKind::Podles => {
            let (p, _) = podles_projection_p()?;
            let _ = writeln!(out, "# projection, weight diag(q^-1, q)\nP = {p}");
        }
        _ => {
            let (v, _) = suq2_unitary_v()?;
            let _ = writeln!(out, "# unitary, weight diag(q^-1, q)\nV = {v}");
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct DenseDump {
    generator: String,
    rows: usize,
    cols: usize,
    labels: Vec<String>,
    /// Row-major `[re, im]` pairs.
    data: Vec<[f64; 2]>,
}

pub fn dump_operator(cfg: &RunConfig, generator: &str) -> CliResult<String> {
    let g = Generator::parse(generator)
        .filter(|g| g.algebra() == cfg.kind.algebra())
        .ok_or_else(|| {
            CliError::Config(format!("unknown generator '{generator}' for {}", cfg.kind))
        })?;
    let m = build(cfg)?;
    let x = m.generator(g)?.to_dense();
    let mut data = Vec::with_capacity(x.nrows() * x.ncols());
    for i in 0..x.nrows() {
        for j in 0..x.ncols() {
            let v = x[(i, j)];
            data.push([round_sig(v.re), round_sig(v.im)]);
        }
    }
    Ok(json(&DenseDump {
        generator: g.name().to_string(),
        rows: x.nrows(),
        cols: x.ncols(),
        labels: m.basis().labels().iter().map(|b| b.to_string()).collect(),
        data,
    }))
}
