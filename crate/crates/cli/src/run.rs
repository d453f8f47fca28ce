use std::io::Write;

use anyhow::{Context, Result};
use specqm_core::quad::{w_minus, w_plus, weights};
use specqm_core::singular::{cauchy_weights, log_weights};
use specqm_core::study::{
    bound_table, convergence, default_momenta, default_strengths, hydrogen_table, length_sweep,
    linspace, phase_sweep, with_jobs, Quantity, Route, Setup,
};
use specqm_core::{PotentialKind, PotentialModel};

use crate::args::{parse_sweep, Cli, Potential, QuantityArg, Task};
use crate::csv::{num, opt, Table};
use crate::UsageError;

const DEUTERON_D_OVER_A: f64 = 0.8668 / 0.3408;
const MAX_WEIGHTS_N: usize = 256;

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn model(cli: &Cli) -> Result<PotentialModel> {
    let o = &cli.opts;
    let m = match o.potential {
        Potential::Exp => PotentialModel::exponential(o.s, o.a)?,
        Potential::Hulthen => PotentialModel::hulthen(o.s, o.a)?,
        Potential::Morse => {
            PotentialModel::morse(o.s, o.a, o.d.unwrap_or(DEUTERON_D_OVER_A * o.a))?
        }
        Potential::Coulomb => PotentialModel::coulomb(o.z as f64, o.a)?,
    };
    Ok(m)
}

fn routes(cli: &Cli) -> Result<Vec<Route>> {
    let r = Route::parse_list(&cli.opts.method)?;
    if r.is_empty() {
        return Err(usage("method list is empty"));
    }
    Ok(r)
}

fn ns(cli: &Cli, default: &[usize]) -> Result<Vec<usize>> {
    let ns = if cli.opts.n.is_empty() {
        default.to_vec()
    } else {
        cli.opts.n.clone()
    };
    if ns.iter().any(|&n| n < 2) {
        return Err(usage("every N must be at least 2"));
    }
    if ns.windows(2).any(|w| w[1] <= w[0]) {
        return Err(usage("the N list must be ascending"));
    }
    Ok(ns)
}

fn single_n(cli: &Cli) -> Result<usize> {
    match ns(cli, &[64])?.as_slice() {
        [n] => Ok(*n),
        _ => Err(usage("this task takes a single N")),
    }
}

fn sweep(cli: &Cli, default: impl FnOnce() -> Vec<f64>) -> Result<Vec<f64>> {
    match &cli.opts.sweep {
        Some(s) => {
            let (min, max, count) = parse_sweep(s)?;
            Ok(linspace(min, max, count))
        }
        None => Ok(default()),
    }
}

fn setup(cli: &Cli, m: &PotentialModel) -> Setup {
    let mut s = Setup::for_model(m);
    s.l = cli.opts.l;
    if let Some(r) = cli.opts.r {
        s.r_max = r;
    }
    s.sigma = cli.opts.sigma;
    s
}

fn route_header(first: &[&str], routes: &[Route], suffix: &str) -> Vec<String> {
    first
        .iter()
        .map(|s| s.to_string())
        .chain(routes.iter().map(|r| format!("{}{suffix}", r.name())))
        .collect()
}

pub fn run(cli: &Cli) -> Result<()> {
    let text = with_jobs(cli.opts.jobs, || table(cli))??;
    match &cli.opts.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn table(cli: &Cli) -> Result<String> {
    match cli.task {
        Task::Phase => phase(cli),
        Task::Alen => alen(cli),
        Task::Bound => bound(cli),
        Task::Converge => converge(cli),
        Task::Hydrogen => hydrogen(cli),
        Task::Weights => weights_csv(cli),
    }
}

fn phase(cli: &Cli) -> Result<String> {
    let m = model(cli)?;
    let routes = routes(cli)?;
    let xis = sweep(cli, || linspace(0.05, 5.0, 100))?;
    let rows = phase_sweep(&m, &routes, single_n(cli)?, &xis, &setup(cli, &m))?;
    let mut t = Table::new(&route_header(&["xi", "exact"], &routes, ""));
    for r in rows {
        t.row(
            [num(r.x), opt(r.exact)]
                .into_iter()
                .chain(r.values.into_iter().map(num)),
        );
    }
    Ok(t.into_string())
}

fn alen(cli: &Cli) -> Result<String> {
    let m = model(cli)?;
    if m.kind == PotentialKind::CoulombPoint {
        return Err(usage("scattering lengths need a short-range potential"));
    }
    let routes = routes(cli)?;
    let strengths = sweep(cli, || default_strengths(m.kind))?;
    let rows = length_sweep(&m, &routes, single_n(cli)?, &strengths, &setup(cli, &m))?;
    let mut t = Table::new(&route_header(&["s", "exact"], &routes, ""));
    for r in rows {
        t.row(
            [num(r.x), opt(r.exact)]
                .into_iter()
                .chain(r.values.into_iter().map(num)),
        );
    }
    Ok(t.into_string())
}

fn bound(cli: &Cli) -> Result<String> {
    let m = model(cli)?;
    if m.kind == PotentialKind::CoulombPoint {
        return Err(usage("use the hydrogen task for the point charge"));
    }
    let rows = bound_table(&m, &routes(cli)?, single_n(cli)?, &setup(cli, &m))?;
    let mut t = Table::new(&["method", "state", "x", "exact", "relative_error"]);
    for r in rows {
        t.row([
            r.route.name().to_string(),
            r.index.to_string(),
            num(r.x),
            opt(r.exact),
            opt(r.relative_error),
        ]);
    }
    Ok(t.into_string())
}

fn converge(cli: &Cli) -> Result<String> {
    let m = model(cli)?;
    let routes = routes(cli)?;
    let ns = ns(cli, &(2..=12).map(|k| 8 * k).collect::<Vec<_>>())?;
    let quantity = match cli.opts.quantity {
        QuantityArg::Phase => Quantity::Phase,
        QuantityArg::Length => Quantity::Length,
    };
    let points = match quantity {
        Quantity::Phase => sweep(cli, default_momenta)?,
        Quantity::Length => sweep(cli, || default_strengths(m.kind))?,
    };
    let rows = convergence(&m, &routes, &ns, quantity, &points, &setup(cli, &m))?;
    let mut t = Table::new(&route_header(&["N"], &routes, "_E"));
    for r in rows {
        t.row(std::iter::once(r.n.to_string()).chain(r.errors.into_iter().map(num)));
    }
    Ok(t.into_string())
}

fn hydrogen(cli: &Cli) -> Result<String> {
    let z = cli.opts.z as f64;
    if z <= 0.0 {
        return Err(usage("Z must be positive"));
    }
    // states down to x = Z/4
    let rows = hydrogen_table(
        z,
        3,
        0.22 * z,
        single_n(cli)?,
        cli.opts.sigma.unwrap_or(1.0),
    )?;
    let mut t = Table::new(&["n", "l", "x", "exact", "relative_error"]);
    for r in rows {
        t.row([
            r.n.to_string(),
            r.l.to_string(),
            num(r.x),
            num(r.exact),
            num(r.relative_error),
        ]);
    }
    Ok(t.into_string())
}

fn weights_csv(cli: &Cli) -> Result<String> {
    let n = single_n(cli)?;
    if n > MAX_WEIGHTS_N {
        return Err(usage(format!(
            "weights are emitted for N <= {MAX_WEIGHTS_N}"
        )));
    }
    let z = cli.opts.point;
    let ops = specqm_core::quad::operators(n)?;
    let w = weights(n);
    let (omega, _) = cauchy_weights(n, z)?;
    let big_omega = log_weights(n, z)?;
    let (wm, wp) = (w_minus(n), w_plus(n));
    let mut header: Vec<String> = ["j", "t", "w", "omega", "Omega"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend((0..n).map(|k| format!("Wminus_{k}")));
    header.extend((0..n).map(|k| format!("Wplus_{k}")));
    let mut t = Table::new(&header);
    for j in 0..n {
        let head = [
            j.to_string(),
            num(ops.t[j]),
            num(w[j]),
            num(omega[j]),
            num(big_omega[j]),
        ];
        let minus = (0..n).map(|k| num(wm[(j, k)]));
        let plus = (0..n).map(|k| num(wp[(j, k)]));
        t.row(head.into_iter().chain(minus).chain(plus));
    }
    Ok(t.into_string())
}
