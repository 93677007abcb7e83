//! Run configuration and the study drivers behind the command-line tool.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{EldgError, Result};
use crate::field::DGField;
use crate::harness::csv::{Cell, CsvTable};
use crate::harness::norms::{
    convergence_order, error_norms, error_norms_2d, filtered_error_norms, l1_norms, relative_mass_drift, ErrorNorms,
};
use crate::harness::problems::{problem_1d, problem_2d, ProblemId, SchemeName};
use crate::mesh::build_uniform_mesh;
use crate::siac::siac_filter;
use crate::splitting::{Field2D, Mesh2D, Splitting2D};
use crate::stepper::{ElStepper, NodeVelocity, SchemeVariant, Weighting};
use crate::tableau::{ButcherTableau, TableauTag};

/// Blow-up threshold relative to the initial maximum.
pub const BLOWUP_FACTOR: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitOrder {
    Strang,
    Fourth,
}

impl SplitOrder {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Strang => "strang",
            Self::Fourth => "fourth",
        }
    }
}

impl fmt::Display for SplitOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SplitOrder {
    type Err = EldgError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strang" => Ok(Self::Strang),
            "fourth" => Ok(Self::Fourth),
            _ => Err(EldgError::InvalidArgument(format!("unknown splitting '{s}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub problem: ProblemId,
    pub scheme: SchemeName,
    pub degree: usize,
    pub meshes: Vec<usize>,
    pub cfls: Vec<f64>,
    pub t_final: f64,
    pub rk: TableauTag,
    /// TVB constant of the minmod limiter; `None` disables limiting.
    pub limiter_m: Option<f64>,
    pub postprocess: bool,
    pub split: SplitOrder,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(problem: ProblemId) -> Self {
        Self {
            problem,
            scheme: SchemeName::Eldg,
            degree: 1,
            meshes: vec![20, 40, 80, 160],
            cfls: vec![0.3],
            t_final: problem.default_t_final(),
            rk: TableauTag::Rk4,
            limiter_m: None,
            postprocess: false,
            split: SplitOrder::Strang,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(EldgError::InvalidArgument(m));
        if self.meshes.is_empty() || self.meshes.contains(&0) {
            return bad("mesh sizes must be positive".into());
        }
        if self.cfls.is_empty() || self.cfls.iter().any(|c| !(c.is_finite() && *c > 0.0)) {
            return bad("CFL numbers must be positive".into());
        }
        if !(self.t_final.is_finite() && self.t_final >= 0.0) {
            return bad(format!("final time {} must be non-negative", self.t_final));
        }
        if self.degree > 8 {
            return bad(format!("degree {} is not supported", self.degree));
        }
        if let Some(m) = self.limiter_m {
            if !(m.is_finite() && m >= 0.0) {
                return bad(format!("limiter constant {m} must be non-negative"));
            }
        }
        if self.problem.is_2d() {
            if !matches!(self.scheme, SchemeName::Eldg | SchemeName::Eldg1 | SchemeName::Rkdg) {
                return bad(format!("scheme {} is only available in 1D", self.scheme));
            }
            if self.limiter_m.is_some() || self.postprocess {
                return bad("limiting and post-processing are only available in 1D".into());
            }
        }
        Ok(())
    }

    /// `key=value` pairs echoing the whole configuration.
    pub fn manifest(&self, command: &str) -> String {
        let join_usize = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";");
        let join_f64 = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";");
        format!(
            "command={} problem={} scheme={} degree={} nx={} cfl={} tfinal={} rk={} limiter_m={} postprocess={} split={} out={}",
            command,
            self.problem,
            self.scheme,
            self.degree,
            join_usize(&self.meshes),
            join_f64(&self.cfls),
            self.t_final,
            self.rk,
            self.limiter_m.map_or("off".to_string(), |m| m.to_string()),
            if self.postprocess { "on" } else { "off" },
            self.split,
            self.out.as_ref().map_or("-".to_string(), |p| p.display().to_string()),
        )
    }

    fn variant(&self, dx: f64) -> SchemeVariant {
        let weighting = if self.scheme.is_nmc() {
            Weighting::Cellwise
        } else {
            Weighting::Consistent
        };
        let velocity = if self.scheme == SchemeName::Rkdg {
            NodeVelocity::Eulerian
        } else if self.scheme.perturbs_velocity() {
            NodeVelocity::Perturbed { amplitude: dx }
        } else {
            NodeVelocity::Characteristic
        };
        SchemeVariant { weighting, velocity }
    }
}

#[derive(Debug, Clone)]
pub enum State {
    One(DGField),
    Two(Field2D),
}

impl State {
    pub fn total_mass(&self) -> Vec<f64> {
        match self {
            State::One(f) => f.total_mass(),
            State::Two(f) => f.total_mass(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        match self {
            State::One(f) => f.max_abs(),
            State::Two(f) => f.max_abs(),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            State::One(f) => f.is_finite(),
            State::Two(f) => f.is_finite(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimOutcome {
    pub state: State,
    pub initial_mass: Vec<f64>,
    /// `∫ |u0_c|` per component, the fallback scale for relative mass drift.
    pub initial_l1: Vec<f64>,
    pub dt: f64,
    pub steps: usize,
    pub time: f64,
    pub blew_up: bool,
}

impl SimOutcome {
    pub fn relative_mass_drift(&self) -> f64 {
        relative_mass_drift(&self.state.total_mass(), &self.initial_mass, &self.initial_l1)
    }
}

fn step_count(t_final: f64, dt_max: f64) -> (usize, f64) {
    if t_final == 0.0 {
        return (0, 0.0);
    }
    let n = (t_final / dt_max - 1e-9).ceil().max(1.0) as usize;
    (n, t_final / n as f64)
}

/// Run one configuration on an `n`-cell (or `n²`) mesh at CFL `cfl`.
/// `observe(state, t)` is called after every step.
pub fn simulate(cfg: &RunConfig, n: usize, cfl: f64, mut observe: impl FnMut(&State, f64)) -> Result<SimOutcome> {
    cfg.validate()?;
    let tableau = ButcherTableau::from_tag(cfg.rk);
    if cfg.problem.is_2d() {
        let p = problem_2d(cfg.problem)?;
        let mx = Arc::new(build_uniform_mesh(p.domain_x.0, p.domain_x.1, n)?);
        let my = Arc::new(build_uniform_mesh(p.domain_y.0, p.domain_y.1, n)?);
        let (dx, dy) = (mx.width(0), my.width(0));
        let mesh = Mesh2D::new(mx, my, cfg.degree);
        let split = Splitting2D::new(p.system.clone(), tableau, cfg.variant(dx.min(dy)));
        let mut u = p.initial_field(mesh);
        let initial_mass = u.total_mass();
        let initial_l1 = {
            let abs = Field2D {
                data: u.data.iter().map(|v| v.abs()).collect(),
                ..u.clone()
            };
            abs.total_mass()
        };
        let limit = BLOWUP_FACTOR * u.max_abs().max(f64::MIN_POSITIVE);
        let (a, b) = p.max_speeds;
        let (steps, dt) = step_count(cfg.t_final, cfl / (a / dx + b / dy));
        let mut blew_up = false;
        let mut done = 0;
        for _ in 0..steps {
            u = match cfg.split {
                SplitOrder::Strang => split.strang_step(&u, dt)?,
                SplitOrder::Fourth => split.fourth_order_step(&u, dt)?,
            };
            done += 1;
            let st = State::Two(u);
            observe(&st, done as f64 * dt);
            let State::Two(v) = st else { unreachable!() };
            u = v;
            if !u.is_finite() || u.max_abs() > limit {
                blew_up = true;
                break;
            }
        }
        return Ok(SimOutcome {
            time: done as f64 * dt,
            state: State::Two(u),
            initial_mass,
            initial_l1,
            dt,
            steps: done,
            blew_up,
        });
    }

    let p = problem_1d(cfg.problem)?;
    let mesh = Arc::new(build_uniform_mesh(p.domain.0, p.domain.1, n)?);
    let dx = mesh.width(0);
    let sys = p.system(cfg.scheme, dx)?;
    let stepper = ElStepper::new(sys, cfg.degree, cfg.variant(dx)).with_limiter(cfg.limiter_m);
    let init = Arc::clone(&p.initial);
    let mut u = DGField::project(mesh, cfg.degree, p.n_components, &p.breakpoints, move |x, v| init(x, v));
    let initial_mass = u.total_mass();
    let initial_l1 = l1_norms(&u);
    let limit = BLOWUP_FACTOR * u.max_abs().max(f64::MIN_POSITIVE);
    let (steps, dt) = step_count(cfg.t_final, cfl * dx / p.max_speed);
    let mut blew_up = false;
    let mut done = 0;
    for _ in 0..steps {
        u = stepper.step(&u, dt, &tableau)?;
        done += 1;
        let st = State::One(u);
        observe(&st, done as f64 * dt);
        let State::One(v) = st else { unreachable!() };
        u = v;
        if !u.is_finite() || u.max_abs() > limit {
            blew_up = true;
            break;
        }
    }
    Ok(SimOutcome {
        time: done as f64 * dt,
        state: State::One(u),
        initial_mass,
        initial_l1,
        dt,
        steps: done,
        blew_up,
    })
}

/// Error norms of every component at the outcome's final time, if an exact solution exists.
pub fn outcome_errors(cfg: &RunConfig, out: &SimOutcome) -> Result<Option<Vec<ErrorNorms>>> {
    if out.blew_up {
        return Ok(None);
    }
    match &out.state {
        State::One(f) => {
            let p = problem_1d(cfg.problem)?;
            Ok(p.exact.map(|e| error_norms(f, &*e, out.time)))
        }
        State::Two(f) => {
            let p = problem_2d(cfg.problem)?;
            Ok(p.exact.map(|e| error_norms_2d(f, &*e, out.time)))
        }
    }
}

fn outcome_filtered_errors(cfg: &RunConfig, out: &SimOutcome) -> Result<Option<Vec<ErrorNorms>>> {
    if out.blew_up || !cfg.postprocess {
        return Ok(None);
    }
    match &out.state {
        State::One(f) => {
            let p = problem_1d(cfg.problem)?;
            match p.exact {
                Some(e) => Ok(Some(filtered_error_norms(f, &*e, out.time)?)),
                None => Ok(None),
            }
        }
        State::Two(_) => Err(EldgError::Unsupported("post-processing is only available in 1D".into())),
    }
}

#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub n: usize,
    pub dt: f64,
    pub steps: usize,
    /// Norms of the first component (the quantity reported in the tables).
    pub errors: Option<ErrorNorms>,
    pub orders: Option<(Option<f64>, Option<f64>, Option<f64>)>,
    pub filtered: Option<ErrorNorms>,
    pub filtered_order: Option<f64>,
    pub mass_drift: f64,
    pub blew_up: bool,
}

/// Error table over `cfg.meshes` at CFL `cfg.cfls[0]`.
pub fn run_convergence(cfg: &RunConfig) -> Result<Vec<ConvergenceRow>> {
    cfg.validate()?;
    let cfl = cfg.cfls[0];
    let mut rows: Vec<ConvergenceRow> = Vec::new();
    for &n in &cfg.meshes {
        let out = simulate(cfg, n, cfl, |_, _| {})?;
        let errors = outcome_errors(cfg, &out)?.map(|e| e[0]);
        let filtered = outcome_filtered_errors(cfg, &out)?.map(|e| e[0]);
        let prev = rows.last();
        let orders = match (prev.and_then(|r| r.errors), errors) {
            (Some(a), Some(b)) => {
                let pn = prev.map(|r| r.n).unwrap_or(n);
                Some((
                    convergence_order(a.l1, b.l1, pn, n),
                    convergence_order(a.l2, b.l2, pn, n),
                    convergence_order(a.linf, b.linf, pn, n),
                ))
            }
            _ => None,
        };
        let filtered_order = match (prev.and_then(|r| r.filtered), filtered) {
            (Some(a), Some(b)) => convergence_order(a.l1, b.l1, prev.map(|r| r.n).unwrap_or(n), n),
            _ => None,
        };
        rows.push(ConvergenceRow {
            n,
            dt: out.dt,
            steps: out.steps,
            errors,
            orders,
            filtered,
            filtered_order,
            mass_drift: out.relative_mass_drift(),
            blew_up: out.blew_up,
        });
    }
    Ok(rows)
}

pub fn convergence_table(cfg: &RunConfig, rows: &[ConvergenceRow]) -> CsvTable {
    let mut header = vec!["n", "dt", "steps", "l1", "l1_order", "l2", "l2_order", "linf", "linf_order"];
    if cfg.postprocess {
        header.extend(["pp_l1", "pp_l1_order", "pp_linf"]);
    }
    header.extend(["mass_drift", "blowup"]);
    let mut t = CsvTable::new(cfg.manifest("converge"), &header);
    for r in rows {
        let e = r.errors;
        let o = r.orders.unwrap_or((None, None, None));
        let mut row: Vec<Cell> = vec![
            r.n.into(),
            r.dt.into(),
            r.steps.into(),
            e.map(|e| e.l1).into(),
            o.0.into(),
            e.map(|e| e.l2).into(),
            o.1.into(),
            e.map(|e| e.linf).into(),
            o.2.into(),
        ];
        if cfg.postprocess {
            row.push(r.filtered.map(|e| e.l1).into());
            row.push(r.filtered_order.into());
            row.push(r.filtered.map(|e| e.linf).into());
        }
        row.push(r.mass_drift.into());
        row.push(r.blew_up.into());
        t.push(row);
    }
    t
}

#[derive(Debug, Clone)]
pub struct CflRow {
    pub cfl: f64,
    pub dt: f64,
    pub steps: usize,
    pub errors: Option<ErrorNorms>,
    pub filtered: Option<ErrorNorms>,
    pub blew_up: bool,
}

/// Errors versus CFL on the mesh `cfg.meshes[0]`; blow-ups are reported, not raised.
pub fn run_cfl_sweep(cfg: &RunConfig) -> Result<Vec<CflRow>> {
    cfg.validate()?;
    let n = cfg.meshes[0];
    cfg.cfls
        .iter()
        .map(|&cfl| {
            let out = simulate(cfg, n, cfl, |_, _| {})?;
            Ok(CflRow {
                cfl,
                dt: out.dt,
                steps: out.steps,
                errors: outcome_errors(cfg, &out)?.map(|e| e[0]),
                filtered: outcome_filtered_errors(cfg, &out)?.map(|e| e[0]),
                blew_up: out.blew_up,
            })
        })
        .collect()
}

pub fn cfl_table(cfg: &RunConfig, rows: &[CflRow]) -> CsvTable {
    let mut header = vec!["cfl", "dt", "steps", "l1", "linf"];
    if cfg.postprocess {
        header.extend(["pp_l1", "pp_linf"]);
    }
    header.push("blowup");
    let mut t = CsvTable::new(cfg.manifest("cfl-sweep"), &header);
    for r in rows {
        let mut row: Vec<Cell> = vec![
            r.cfl.into(),
            r.dt.into(),
            r.steps.into(),
            r.errors.map(|e| e.l1).into(),
            r.errors.map(|e| e.linf).into(),
        ];
        if cfg.postprocess {
            row.push(r.filtered.map(|e| e.l1).into());
            row.push(r.filtered.map(|e| e.linf).into());
        }
        row.push(r.blew_up.into());
        t.push(row);
    }
    t
}

#[derive(Debug, Clone)]
pub struct MassRow {
    pub step: usize,
    pub t: f64,
    /// `|mass_c(t) − mass_c(0)|` per component.
    pub drift: Vec<f64>,
    pub relative: f64,
}

/// Mass error after every step on mesh `cfg.meshes[0]` at CFL `cfg.cfls[0]`.
pub fn run_mass_tracking(cfg: &RunConfig) -> Result<(Vec<MassRow>, SimOutcome)> {
    cfg.validate()?;
    let mut rows = Vec::new();
    let out = simulate(cfg, cfg.meshes[0], cfg.cfls[0], |st, t| {
        rows.push((t, st.total_mass()));
    })?;
    let (mass0, l1) = (&out.initial_mass, &out.initial_l1);
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(i, (t, m))| MassRow {
            step: i + 1,
            t,
            drift: m.iter().zip(mass0).map(|(a, b)| (a - b).abs()).collect(),
            relative: relative_mass_drift(&m, mass0, l1),
        })
        .collect();
    Ok((rows, out))
}

pub fn mass_table(cfg: &RunConfig, rows: &[MassRow], n_components: usize) -> CsvTable {
    let names: Vec<String> = (1..=n_components).map(|c| format!("mass_err_u{c}")).collect();
    let mut header: Vec<&str> = vec!["step", "t"];
    header.extend(names.iter().map(|s| s.as_str()));
    header.push("relative");
    let mut t = CsvTable::new(cfg.manifest("mass-track"), &header);
    for r in rows {
        let mut row: Vec<Cell> = vec![r.step.into(), r.t.into()];
        row.extend(r.drift.iter().map(|d| Cell::Num(*d)));
        row.push(r.relative.into());
        t.push(row);
    }
    t
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub outcome: SimOutcome,
    pub errors: Option<Vec<ErrorNorms>>,
    pub table: CsvTable,
}

/// Single run on `cfg.meshes[0]` at `cfg.cfls[0]`; the table lists cell
/// means (and exact / filtered values at cell centres when available).
pub fn solve(cfg: &RunConfig) -> Result<SolveOutcome> {
    cfg.validate()?;
    let out = simulate(cfg, cfg.meshes[0], cfg.cfls[0], |_, _| {})?;
    let errors = outcome_errors(cfg, &out)?;
    let manifest = cfg.manifest("solve");
    let table = match &out.state {
        State::One(f) => {
            let p = problem_1d(cfg.problem)?;
            let nc = f.n_components;
            let mut header: Vec<String> = vec!["cell".into(), "x".into()];
            header.extend((1..=nc).map(|c| format!("u{c}_mean")));
            if p.exact.is_some() {
                header.extend((1..=nc).map(|c| format!("u{c}_exact")));
            }
            if cfg.postprocess {
                header.extend((1..=nc).map(|c| format!("u{c}_filtered")));
            }
            let hdr: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
            let mut t = CsvTable::new(manifest, &hdr);
            let filt = if cfg.postprocess && !out.blew_up {
                Some(siac_filter(f)?)
            } else {
                None
            };
            let mut ex = vec![0.0; nc];
            for j in 0..f.n_cells() {
                let x = f.mesh.center(j);
                let mut row: Vec<Cell> = vec![j.into(), x.into()];
                row.extend((0..nc).map(|c| Cell::Num(f.cell_mean(j, c))));
                if let Some(e) = &p.exact {
                    e(x, out.time, &mut ex);
                    row.extend(ex.iter().map(|v| Cell::Num(*v)));
                }
                if cfg.postprocess {
                    row.extend((0..nc).map(|c| filt.as_ref().map(|g| g.eval(c, x)).into()));
                }
                t.push(row);
            }
            t
        }
        State::Two(f) => {
            let nc = f.n_components;
            let np = f.mesh.degree + 1;
            let mut header: Vec<String> = vec!["i".into(), "j".into(), "x".into(), "y".into()];
            header.extend((1..=nc).map(|c| format!("u{c}_mean")));
            let hdr: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
            let mut t = CsvTable::new(manifest, &hdr);
            for cy in 0..f.mesh.y.n_cells() {
                for cx in 0..f.mesh.x.n_cells() {
                    let modes = f.cell_modes(cx, cy);
                    let mut row: Vec<Cell> = vec![
                        cx.into(),
                        cy.into(),
                        f.mesh.x.center(cx).into(),
                        f.mesh.y.center(cy).into(),
                    ];
                    row.extend((0..nc).map(|c| Cell::Num(modes[c * np * np])));
                    t.push(row);
                }
            }
            t
        }
    };
    Ok(SolveOutcome {
        outcome: out,
        errors,
        table,
    })
}
