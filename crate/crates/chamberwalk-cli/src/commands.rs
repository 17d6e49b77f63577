use std::fmt;

use chamberwalk::field::{ComplexField, Field, QuadraticField};
use chamberwalk::hecke::HeckeAlgebra;
use chamberwalk::io::{element_from_json, ParsedElement};
use chamberwalk::limit::{self, DenseSimpleWalk, RadialWalkSpec};
use chamberwalk::plancherel::{plancherel_trace, series_trace, Evaluable};
use chamberwalk::reps::{
    hermitian_defect, is_principal_irreducible, max_abs, parse_character, CMatrix, Rep,
};
use chamberwalk::walks::enumerate;
use chamberwalk::{Affine, Exec, Word, W0};
use num_complex::Complex64;

use crate::output::{emit, float, Cell, Format, Report};
use crate::{Builtin, Cli, Command, Mode, RepsCmd, TraceArgs, TraceMethod, WalkCmd, WalksArgs};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(chamberwalk::Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use chamberwalk::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Lib(
                E::Parse(_)
                | E::Invalid(_)
                | E::NotReduced(_)
                | E::Basis(_)
                | E::NotSymmetric
                | E::Divergent(_),
            ) => 2,
            CliError::Lib(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<chamberwalk::Error> for CliError {
    fn from(e: chamberwalk::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type Res<T> = std::result::Result<T, CliError>;

const EXEC: Exec = Exec::Parallel;

/// Parsed `--q`, defaulting to 2.
fn field(cli: &Cli) -> Res<QuadraticField> {
    let f = QuadraticField::parse(cli.global.q.as_deref().unwrap_or("2"))?;
    if !(f.q_f64() > 1.0) {
        return Err(CliError::Usage(format!(
            "q must exceed 1, got {}",
            f.q_string()
        )));
    }
    Ok(f)
}

fn element(word: &str) -> Res<Affine> {
    Ok(word.parse::<Word>()?.eval())
}

fn word_of(w: Affine) -> String {
    w.reduced_word().to_string()
}

fn format(cli: &Cli) -> Option<Format> {
    if cli.global.json {
        Some(Format::Json)
    } else {
        cli.global.format
    }
}

pub fn run(cli: &Cli) -> Res<u8> {
    if cli.global.grid < 16 {
        return Err(CliError::Usage(format!(
            "--grid must be at least 16, got {}",
            cli.global.grid
        )));
    }
    let (report, code) = match &cli.command {
        Command::Walk(cmd) => walk(cli, cmd)?,
        Command::Trace(args) => trace(cli, args)?,
        Command::Walks(args) => walks(args)?,
        Command::Reps(RepsCmd::Check { t }) => reps_check(cli, t)?,
        Command::Spectrum => spectrum(cli)?,
    };
    emit(&report.render(format(cli)), cli.global.out.as_deref())?;
    Ok(code)
}

fn dense(q: f64, n: usize) -> DenseSimpleWalk {
    let mut d = DenseSimpleWalk::new(q, n);
    for _ in 0..n {
        d.step(EXEC);
    }
    d
}

fn walk(cli: &Cli, cmd: &WalkCmd) -> Res<(Report, u8)> {
    let f = field(cli)?;
    let q = f.q_f64();
    match cmd {
        WalkCmd::Exact { n, word } => {
            let only = word.as_deref().map(element).transpose()?;
            let keep = |w: &Affine| only.is_none_or(|o| o == *w);
            let mut masses: Vec<(Affine, f64, Option<String>)> = match cli.global.mode {
                Mode::Numeric => {
                    let d = dense(q, *n);
                    match only {
                        Some(w) => vec![(w, d.mass(w), None)],
                        None => d
                            .to_distribution()
                            .masses
                            .into_iter()
                            .map(|(w, a)| (w, a, None))
                            .collect(),
                    }
                }
                Mode::Exact => {
                    let d = limit::exact_distribution_rational(
                        &RadialWalkSpec::simple_exact(),
                        f.q_rational(),
                        *n,
                    );
                    d.masses
                        .iter()
                        .filter(|(w, _)| keep(w))
                        .map(|(w, a)| (*w, d.mass_f64(w), Some(a.to_string())))
                        .collect()
                }
            };
            if let (Some(w), true) = (only, masses.is_empty()) {
                masses.push((w, 0.0, Some("0".into())));
            }
            masses.sort_by_key(|(w, _, _)| (w.length(), *w));
            let exact = cli.global.mode == Mode::Exact;
            let mut header = vec!["word", "mu_m", "mu_n", "theta", "mass", "p_n"];
            if exact {
                header.push("mass_exact");
            }
            let mut r = Report::table(header);
            for (w, a, ex) in masses {
                let mut row: Vec<Cell> = vec![
                    word_of(w).into(),
                    w.mu.m.into(),
                    w.mu.n.into(),
                    w.u.to_string().into(),
                    a.into(),
                    (a / w.q_weight(q)).into(),
                ];
                if exact {
                    row.push(ex.unwrap_or_default().into());
                }
                r.push(row);
            }
            Ok((r, 0))
        }
        WalkCmd::Mc { n, trials, word } => {
            if *trials == 0 {
                return Err(CliError::Usage("--trials must be at least 1".into()));
            }
            let res = limit::mc_simulate(q, *n, *trials, cli.global.seed, EXEC);
            let only = word.as_deref().map(element).transpose()?;
            let mut rows: Vec<(Affine, u64)> = match only {
                Some(w) => vec![(w, res.counts.get(&w).copied().unwrap_or(0))],
                None => res.counts.iter().map(|(w, k)| (*w, *k)).collect(),
            };
            rows.sort_by_key(|(w, _)| (w.length(), *w));
            let mut r = Report::table(vec![
                "word", "mu_m", "mu_n", "theta", "count", "freq", "p_n",
            ]);
            for (w, k) in rows {
                let fr = k as f64 / *trials as f64;
                r.push(vec![
                    word_of(w).into(),
                    w.mu.m.into(),
                    w.mu.n.into(),
                    w.u.to_string().into(),
                    k.into(),
                    fr.into(),
                    (fr / w.q_weight(q)).into(),
                ]);
            }
            Ok((r, 0))
        }
        WalkCmd::Llt { n, word } => {
            let w = element(word)?;
            if n.contains(&0) {
                return Err(CliError::Usage("--n values must be at least 1".into()));
            }
            let max = *n.iter().max().expect("clap requires a value");
            let mut d = DenseSimpleWalk::new(q, max);
            let mut exact = std::collections::BTreeMap::new();
            for k in 1..=max {
                d.step(EXEC);
                if n.contains(&k) {
                    exact.insert(k, d.mass(w) / w.q_weight(q));
                }
            }
            let mut r = Report::table(vec![
                "n",
                "exact_p",
                "llt",
                "ratio",
                "llt_corrected",
                "ratio_corrected",
            ]);
            for &k in n {
                let p = exact[&k];
                let e = limit::llt_estimate(w, k, q);
                let c = limit::llt_estimate_corrected(w, k, q);
                r.push(vec![
                    k.into(),
                    p.into(),
                    e.into(),
                    (p / e).into(),
                    c.into(),
                    (p / c).into(),
                ]);
            }
            Ok((r, 0))
        }
        WalkCmd::Compare {
            n,
            word,
            trials,
            sigmas,
        } => {
            if *trials == 0 {
                return Err(CliError::Usage("--trials must be at least 1".into()));
            }
            let w = element(word)?;
            let qw = w.q_weight(q);
            let a = dense(q, *n).mass(w);
            let mc = limit::mc_simulate(q, *n, *trials, cli.global.seed, EXEC);
            let fr = mc.frequency(&w);
            let sigma = (a * (1.0 - a) / *trials as f64).sqrt();
            let z = if sigma > 0.0 {
                (fr - a) / sigma
            } else if fr == a {
                0.0
            } else {
                f64::INFINITY
            };
            let ok = z.abs() <= *sigmas;
            let mut r = Report::table(vec![
                "method",
                "p_n",
                "reference",
                "deviation",
                "sigma_units",
                "within_tolerance",
            ]);
            r.push(vec![
                "exact".into(),
                (a / qw).into(),
                (a / qw).into(),
                0.0.into(),
                0.0.into(),
                true.into(),
            ]);
            r.push(vec![
                "mc".into(),
                (fr / qw).into(),
                (a / qw).into(),
                ((fr - a) / qw).into(),
                z.into(),
                ok.into(),
            ]);
            if *n >= 1 {
                let e = limit::llt_estimate_corrected(w, *n, q);
                r.push(vec![
                    "llt".into(),
                    e.into(),
                    (a / qw).into(),
                    (e - a / qw).into(),
                    f64::NAN.into(),
                    true.into(),
                ]);
            }
            Ok((r, if ok { 0 } else { 1 }))
        }
    }
}

fn trace(cli: &Cli, args: &TraceArgs) -> Res<(Report, u8)> {
    let parsed = match (&args.element, args.builtin) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            let p = element_from_json(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            if let Some(qs) = &cli.global.q {
                let f = field(cli)?;
                if (f.q_f64() - p.q()).abs() > 1e-15 * p.q() {
                    return Err(CliError::Usage(format!(
                        "--q {qs} disagrees with q = {} in the element file",
                        p.q()
                    )));
                }
            }
            p
        }
        (None, Some(b)) => {
            let alg = HeckeAlgebra::new(field(cli)?);
            let h = match b {
                Builtin::One => alg.one(),
                Builtin::SimpleWalk => alg.simple_walk(),
            };
            ParsedElement::Exact(alg, h)
        }
        (None, None) => return Err(CliError::Usage("give --element FILE or --builtin".into())),
    };
    let parsed = match (cli.global.mode, parsed) {
        (Mode::Numeric, ParsedElement::Exact(a, h)) => {
            let num = HeckeAlgebra::new(ComplexField::new(a.field.q_f64()));
            ParsedElement::Numeric(num, a.to_numeric(&h))
        }
        (_, p) => p,
    };
    let q = parsed.q();
    let (nalg, nh) = parsed.numeric();
    let ev = Evaluable::power(&nalg, &nh, args.power);
    let grid = cli.global.grid;

    let mut results: Vec<(&'static str, Complex64, f64, usize, Option<String>)> = Vec::new();
    let want = |m: TraceMethod| args.method == TraceMethod::All || args.method == m;
    if want(TraceMethod::Exact) {
        let (v, exact) = match &parsed {
            ParsedElement::Exact(a, h) => {
                let t = a.trace(&a.pow(h, args.power)?);
                let s = a.field.elem_to_json(&t);
                (
                    a.field.to_complex(&t),
                    Some(format!(
                        "{} + {} sqrt(q)",
                        s["a"].as_str().unwrap_or("?"),
                        s["b"].as_str().unwrap_or("?")
                    )),
                )
            }
            ParsedElement::Numeric(a, h) => (a.trace(&a.pow(h, args.power)?), None),
        };
        results.push(("exact", v, 0.0, 0, exact));
    }
    if want(TraceMethod::Plancherel) {
        let v = plancherel_trace(q, &ev, grid, EXEC).value;
        let half = plancherel_trace(q, &ev, grid / 2, EXEC).value;
        results.push(("plancherel", v, (v - half).norm(), grid, None));
    }
    if want(TraceMethod::Series) {
        let (v, err) = series_trace(q, &ev, args.series_grid, EXEC)?;
        results.push(("series", v, err, args.series_grid, None));
    }

    let mut r = Report::Record(Vec::new());
    r.set("q", q);
    r.set("power", args.power as u64);
    let mut worst: f64 = 0.0;
    for (name, v, err, n, exact) in &results {
        r.set(format!("{name}.re"), v.re);
        r.set(format!("{name}.im"), v.im);
        r.set(format!("{name}.abs_err_estimate"), *err);
        r.set(format!("{name}.N"), *n);
        if let Some(s) = exact {
            r.set(format!("{name}.value_exact"), s.clone());
        }
    }
    for i in 0..results.len() {
        for j in i + 1..results.len() {
            let d = (results[i].1 - results[j].1).norm();
            worst = worst.max(d);
            r.set(format!("discrepancy.{}-{}", results[i].0, results[j].0), d);
        }
    }
    if results.len() > 1 {
        r.set("tolerance", args.tol);
    }
    let ok = worst <= args.tol;
    r.set("ok", ok);
    Ok((r, if ok { 0 } else { 1 }))
}

fn walks(args: &WalksArgs) -> Res<(Report, u8)> {
    let word: Word = args.word.parse()?;
    let start: Word = args.start.parse()?;
    if start.0.contains(&0) {
        return Err(CliError::Usage("--start must be a word over 1,2".into()));
    }
    let start = Affine::finite(W0::from_word(&start.0));
    let mut r = Report::table(vec![
        "index", "steps", "end", "mu_m", "mu_n", "theta", "folds", "wt_m", "wt_n",
    ]);
    for (k, p) in enumerate(&word, start)?.iter().enumerate() {
        let wt = p.wt();
        r.push(vec![
            k.into(),
            p.tags().into(),
            word_of(p.end).into(),
            p.end.mu.m.into(),
            p.end.mu.n.into(),
            p.theta().to_string().into(),
            (p.fold_count() as u64).into(),
            wt.m.into(),
            wt.n.into(),
        ]);
    }
    Ok((r, 0))
}

const REP_TOL: f64 = 1e-12;

fn reps_check(cli: &Cli, t: &str) -> Res<(Report, u8)> {
    let q = field(cli)?.q_f64();
    let t = parse_character(t)?;
    let rep = Rep::principal(q, t);
    let residual = rep.relation_residual();
    let on_torus = t.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12);
    let mut r = Report::Record(Vec::new());
    r.set("q", q);
    r.set("t1", format!("{},{}", float(t[0].re), float(t[0].im)));
    r.set("t2", format!("{},{}", float(t[1].re), float(t[1].im)));
    r.set("relation_residual", residual);
    r.set("irreducible", is_principal_irreducible(q, t, 1e-12));
    let mut ok = residual < REP_TOL;
    r.set("on_torus", on_torus);
    if on_torus {
        let h = hermitian_defect(&rep.simple_walk());
        r.set("hermitian_defect", h);
        ok &= h < REP_TOL;
    }
    let sym = central_residual(&rep, t);
    r.set("central_character_residual", sym);
    ok &= sym < 1e-10;
    r.set("ok", ok);
    Ok((r, if ok { 0 } else { 1 }))
}

/// `pi_t(sum_{w} x^{w a1}) - (sum_w t^{w a1}) I`, largest entry.
fn central_residual(rep: &Rep, t: [Complex64; 2]) -> f64 {
    let mu = chamberwalk::Lattice::A1;
    let orbit: std::collections::BTreeSet<_> = W0::all().iter().map(|w| w.act(mu)).collect();
    let mut m = CMatrix::zeros(6, 6);
    let mut s = Complex64::new(0.0, 0.0);
    for l in orbit {
        m += rep.x_monomial(l);
        s += chamberwalk::hecke::char_pow(t, l);
    }
    max_abs(&(m - CMatrix::identity(6, 6) * s))
}

fn spectrum(cli: &Cli) -> Res<(Report, u8)> {
    let q = field(cli)?.q_f64();
    let s = limit::spectral_data(q)?;
    let mut worst: f64 = 0.0;
    let mut r = Report::Record(Vec::new());
    r.set("q", q);
    for i in 0..6 {
        r.set(format!("lambda{}", i + 1), s.lambda[i]);
        r.set(format!("lambda{}_numeric", i + 1), s.numeric[i]);
        worst = worst.max((s.lambda[i] - s.numeric[i]).abs());
    }
    for i in 0..3 {
        r.set(format!("mu{}", i + 1), s.induced[i]);
        r.set(format!("mu{}_numeric", i + 1), s.numeric_induced[i]);
        worst = worst.max((s.induced[i] - s.numeric_induced[i]).abs());
    }
    r.set("one_dim", s.one_dim);
    r.set("a", s.a);
    r.set("b", s.b);
    r.set("beta", s.beta);
    for (i, v) in s.v1.iter().enumerate() {
        r.set(format!("v1_{}", i + 1), *v);
    }
    r.set("max_abs_diff", worst);
    let ok = worst < 1e-12;
    r.set("ok", ok);
    Ok((r, if ok { 0 } else { 1 }))
}
