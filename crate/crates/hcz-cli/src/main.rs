use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hcz::arith::{parse_rational, rational_to_f64, Rational};
use hcz::error::HczError;
use hcz::factor::{balanced_datum, default_datum, prefactor_product};
use hcz::gl2;
use hcz::numeric;
use hcz::spectral;
use hcz::verify;
use hcz::weyl::{dot_action, kostant_set, wp_factorization, Parabolic, Perm, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(name = "hcz", version, about = "Harish-Chandra modules, Gamma-factor intertwiners and Kostant combinatorics")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Kostant representatives of the maximal parabolic with blocks [n, N-n]
    Kostant {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        balanced: bool,
        /// "a1,…,a_{N-1}[;d]"
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Greedy reduced word of w_P with its β-sequence
    Betaseq {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        n: usize,
    },
    /// Dot action w·λ
    Dot {
        /// one-line, 1-based, e.g. "[3,1,2]"
        #[arg(long)]
        w: String,
        #[arg(long)]
        lambda: String,
    },
    /// GL(2) computations
    Gl2 {
        #[command(subcommand)]
        action: Gl2Cmd,
    },
    /// GL(n) spectral parameters
    Spectral {
        #[command(subcommand)]
        action: SpectralCmd,
    },
    /// Factorized intertwining operator and its value at z = 0
    Factorize {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        w: Option<String>,
        /// shorthand for --format json
        #[arg(long)]
        json: bool,
    },
    /// Run an invariant suite
    Verify {
        #[arg(long)]
        suite: String,
    },
}

#[derive(Subcommand)]
enum Gl2Cmd {
    /// T^st on a range of K-types
    Intertwine {
        #[arg(long)]
        eps: u8,
        /// single K-type; default all parity-admissible |ν| ≤ window
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<i64>,
        #[arg(long, default_value_t = 6)]
        window: i64,
        /// apply z -> 2 - z
        #[arg(long)]
        dagger: bool,
        /// divide by Γ((z+ε-1)/2)
        #[arg(long)]
        norm: bool,
    },
    /// H¹ basis and η-signs
    Cohomology {
        #[arg(long)]
        l: i64,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
    },
    /// Integer poles of T^st
    Poles {
        #[arg(long)]
        eps: u8,
        #[arg(long, default_value_t = 7)]
        window: i64,
    },
    /// The scalar Λ(χ)
    Lambda {
        #[arg(long)]
        eps: u8,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Standard versus algebraic intertwiners
    Compare {
        #[arg(long)]
        l: i64,
    },
}

#[derive(Subcommand)]
enum SpectralCmd {
    Params {
        #[arg(long)]
        n: usize,
        /// "a1,…,a_{n-1}[;d]"
        #[arg(long)]
        lambda: String,
    },
    Minktype {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        eps: i8,
    },
    Ucohom {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: String,
    },
}

/// Rows plus free-form lines shown under the table.
struct Output {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
    notes: Vec<String>,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(headers: &[&str]) -> Self {
        Output { headers: headers.iter().map(|s| s.to_string()).collect(), rows: Vec::new(), notes: Vec::new(), json: Value::Null, ok: true }
    }

    fn row(&mut self, r: Vec<String>) {
        self.rows.push(r);
    }

    fn rows_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| Value::Object(self.headers.iter().cloned().zip(r.iter().map(|c| json!(c))).collect()))
                .collect(),
        )
    }

    fn print(&self, f: Format) -> Result<(), HczError> {
        match f {
            Format::Json => {
                let v = if self.json.is_null() { self.rows_json() } else { self.json.clone() };
                println!("{}", serde_json::to_string_pretty(&v).map_err(|e| HczError::Invalid(e.to_string()))?);
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(std::io::stdout());
                let io = |e: csv::Error| HczError::Invalid(e.to_string());
                if !self.headers.is_empty() {
                    w.write_record(&self.headers).map_err(io)?;
                }
                for r in &self.rows {
                    w.write_record(r).map_err(io)?;
                }
                w.flush().map_err(|e| HczError::Invalid(e.to_string()))?;
            }
            Format::Table => {
                if !self.headers.is_empty() && !self.rows.is_empty() {
                    let mut width: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
                    for r in &self.rows {
                        for (i, c) in r.iter().enumerate() {
                            width[i] = width[i].max(c.chars().count());
                        }
                    }
                    let line = |cells: &[String]| {
                        cells
                            .iter()
                            .enumerate()
                            .map(|(i, c)| format!("{c}{}", " ".repeat(width[i] - c.chars().count())))
                            .collect::<Vec<_>>()
                            .join("  ")
                            .trim_end()
                            .to_string()
                    };
                    println!("{}", line(&self.headers));
                    println!("{}", width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
                    for r in &self.rows {
                        println!("{}", line(r));
                    }
                }
                for n in &self.notes {
                    println!("{n}");
                }
            }
        }
        Ok(())
    }
}

/// "a1,…,ak[;d]" as integer coefficients and a rational d.
fn parse_coeffs(s: &str) -> Result<(Vec<i64>, Rational), HczError> {
    let (a_txt, d_txt) = s.split_once(';').unwrap_or((s, "0"));
    let a = if a_txt.trim().is_empty() {
        Vec::new()
    } else {
        a_txt
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| HczError::Parse(format!("bad coefficient '{t}' in '{s}'"))))
            .collect::<Result<Vec<_>, _>>()?
    };
    Ok((a, parse_rational(d_txt)?))
}

fn parse_weight(s: &str, rank: usize) -> Result<Weight, HczError> {
    let w = Weight::parse(s)?;
    if w.rank() != rank {
        return Err(HczError::Parse(format!("λ = '{s}' has rank {}, expected {rank}", w.rank())));
    }
    Ok(w)
}

fn check_eps(eps: u8) -> Result<u8, HczError> {
    if eps > 1 {
        return Err(HczError::Invalid(format!("eps must be 0 or 1, got {eps}")));
    }
    Ok(eps)
}

fn record_json(e: &hcz::arith::GammaExpr) -> Value {
    serde_json::to_value(e.to_record()).unwrap_or(Value::Null)
}

fn cmd_kostant(big_n: usize, n: usize, balanced: bool, lambda: Option<String>) -> Result<Output, HczError> {
    let p = Parabolic::maximal(big_n, n)?;
    let lam = lambda.map(|s| parse_weight(&s, big_n)).transpose()?;
    let mut headers = vec!["w", "length", "balanced"];
    if lam.is_some() {
        headers.push("w·λ");
    }
    let mut out = Output::new(&headers);
    let d_u = p.d_u();
    for w in kostant_set(&p)? {
        let bal = w.length() * 2 == d_u;
        if balanced && !bal {
            continue;
        }
        let mut r = vec![w.to_string(), w.length().to_string(), bal.to_string()];
        if let Some(l) = &lam {
            r.push(dot_action(&w, l).gamma_string());
        }
        out.row(r);
    }
    out.notes.push(format!("{} elements, d_U = {d_u}", out.rows.len()));
    Ok(out)
}

fn cmd_betaseq(big_n: usize, n: usize) -> Result<Output, HczError> {
    let p = Parabolic::maximal(big_n, n)?;
    let wf = wp_factorization(&p)?;
    let mut out = Output::new(&["k", "s_r", "beta", "h", "x_k"]);
    for k in 0..wf.word.len() {
        let b = wf.betas[k];
        out.row(vec![
            (k + 1).to_string(),
            format!("s{}", wf.word[k]),
            b.to_string(),
            hcz::weyl::h_of_root(b).to_string(),
            wf.prefixes[k + 1].to_string(),
        ]);
    }
    let ok = wf.check(&p);
    out.notes.push(format!("word: {}", wf.word_string()));
    out.notes.push(format!("invariants: {}", ok.as_ref().map(|_| "ok".to_string()).unwrap_or_else(|e| e.clone())));
    out.ok = ok.is_ok();
    Ok(out)
}

fn cmd_dot(w: &str, lambda: &str) -> Result<Output, HczError> {
    let w = Perm::parse(w)?;
    let lam = parse_weight(lambda, w.rank())?;
    let m = dot_action(&w, &lam);
    let mut out = Output::new(&["w", "lambda", "w·λ (γ)", "w·λ (e)"]);
    out.row(vec![w.to_string(), lam.gamma_string(), m.gamma_string(), m.coords_string()]);
    Ok(out)
}

fn cmd_gl2(action: Gl2Cmd) -> Result<Output, HczError> {
    match action {
        Gl2Cmd::Intertwine { eps, nu, window, dagger, norm } => {
            let eps = check_eps(eps)?;
            let nus: Vec<i64> = match nu {
                Some(v) => vec![v],
                None => (-window..=window).filter(|v| v.rem_euclid(2) as u8 == eps).collect(),
            };
            let mut out = Output::new(&["nu", "value"]);
            let mut recs = Vec::new();
            for v in nus {
                let mut t = if norm { gl2::t_norm(eps, v)? } else { gl2::t_st(eps, v)? };
                if dagger {
                    t = t.substitute(-1, &hcz::arith::qi(2)).canonicalize();
                }
                out.row(vec![v.to_string(), t.to_string()]);
                recs.push(json!({"nu": v, "gamma": record_json(&t)}));
            }
            out.json = json!({"eps": eps, "dagger": dagger, "norm": norm, "values": recs});
            Ok(out)
        }
        Gl2Cmd::Cohomology { l, d } => {
            let d = parse_rational(&d)?;
            let r = gl2::h1_cohomology(l, &d)?;
            let mut out = Output::new(&["class", "terms"]);
            for c in r.basis.iter().chain(&r.omegas) {
                out.row(vec![c.label.clone(), c.to_string().split_once(" = ").map(|(_, t)| t.to_string()).unwrap_or_default()]);
            }
            let sg = |s: i8| if s > 0 { "+" } else { "-" };
            out.notes.push(format!("eta signs (ω(1), ω(2)): {},{}", sg(r.eta_signs.0), sg(r.eta_signs.1)));
            out.notes.push(format!("degree 0: {} classes, degree 2: {} classes", r.degree0, r.degree2));
            out.json = json!({
                "l": l,
                "d": d.to_string(),
                "basis": r.basis.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "omegas": r.omegas.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "eta_signs": [r.eta_signs.0, r.eta_signs.1],
                "degree0": r.degree0,
                "degree2": r.degree2,
            });
            Ok(out)
        }
        Gl2Cmd::Poles { eps, window } => {
            let eps = check_eps(eps)?;
            let e = eps as i64;
            let r = gl2::poles_of_tst(eps, window, &[e, e + 2, e - 2, e + 6, e - 6])?;
            let list = r.poles.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
            let mut out = Output::new(&["z"]);
            for p in &r.poles {
                out.row(vec![p.to_string()]);
            }
            out.headers.clear();
            out.notes.push(list);
            out.ok = r.simple && r.consistent;
            out.json = json!({"eps": eps, "window": window, "poles": r.poles, "simple": r.simple, "consistent": r.consistent});
            Ok(out)
        }
        Gl2Cmd::Lambda { eps, at } => {
            let eps = check_eps(eps)?;
            let lam = gl2::lambda(eps);
            let mut out = Output::new(&[]);
            match at {
                None => {
                    out.notes.push(lam.to_string());
                    out.json = json!({"eps": eps, "lambda": record_json(&lam)});
                }
                Some(s) => {
                    let z = parse_rational(&s)?;
                    let text = match lam.eval_at(&z) {
                        Ok((k, r)) => gl2::PiValue::new(k, r).to_string(),
                        Err(HczError::Zero { .. }) => "0".to_string(),
                        Err(HczError::IrrationalGamma { .. }) => format!("{:.12}", numeric::ge_eval_numeric(&lam, rational_to_f64(&z))?),
                        Err(e) => return Err(e),
                    };
                    out.notes.push(text.clone());
                    out.json = json!({"eps": eps, "at": z.to_string(), "value": text});
                }
            }
            Ok(out)
        }
        Gl2Cmd::Compare { l } => {
            let r = gl2::compare_constants(l)?;
            let mut out = Output::new(&["ratio", "computed", "displayed", "agrees", "constant"]);
            out.row(vec!["T_st/T_alg(λ+2ρ)".into(), r.first.to_string(), r.displayed_first.to_string(), r.first_agrees.to_string(), r.first_constant.to_string()]);
            out.row(vec!["T_st/T_alg(λ⁻)".into(), r.second.to_string(), r.displayed_second.to_string(), r.second_agrees.to_string(), r.second_constant.to_string()]);
            out.json = serde_json::to_value(&r).map_err(|e| HczError::Invalid(e.to_string()))?;
            Ok(out)
        }
    }
}

fn cmd_spectral(action: SpectralCmd) -> Result<Output, HczError> {
    match action {
        SpectralCmd::Params { n, lambda } => {
            let (a, d) = parse_coeffs(&lambda)?;
            let p = spectral::cuspidal_params(&a, &d, n)?;
            let mut out = Output::new(&["i", "b_i", "c(i,n)", "twist"]);
            for (j, b) in p.b.iter().enumerate() {
                out.row(vec![(2 * j + 1).to_string(), b.to_string(), p.c[j].to_string(), p.cent_twist[j].to_string()]);
            }
            out.notes.push(format!("w_un = {}, l(w_un) = {}, b_n = {}", p.w_un, p.l_wun, p.b_n));
            out.notes.push(format!("w_un·λ = {}", p.mu.coords_string()));
            if p.non_regular {
                out.notes.push("non-regular".into());
            }
            out.json = p.to_json();
            Ok(out)
        }
        SpectralCmd::Minktype { n, lambda, eps } => {
            let (a, d) = parse_coeffs(&lambda)?;
            let p = spectral::cuspidal_params(&a, &d, n)?;
            let m = spectral::minimal_k_type(&p, eps)?;
            let mut out = Output::new(&[]);
            out.notes.push(format!("({})", m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")));
            out.json = json!({"n": n, "eps": eps, "minimal_k_type": m});
            Ok(out)
        }
        SpectralCmd::Ucohom { n, lambda } => {
            let (a, d) = parse_coeffs(&lambda)?;
            let r = spectral::u_cohomology_degrees(&a, &d, n)?;
            let mut out = Output::new(&["degree", "central matches", "exact matches"]);
            let degrees: std::collections::BTreeSet<usize> = r.central.keys().chain(r.exact.keys()).cloned().collect();
            for k in degrees {
                out.row(vec![k.to_string(), r.central.get(&k).unwrap_or(&0).to_string(), r.exact.get(&k).unwrap_or(&0).to_string()]);
            }
            out.notes.push(format!("l(w_un) = {}, concentrated: {}", r.l_wun, r.concentrated()));
            out.ok = r.concentrated();
            out.json = json!({"l_wun": r.l_wun, "central": r.central, "exact": r.exact});
            Ok(out)
        }
    }
}

fn cmd_factorize(big_n: usize, n: usize, lambda: &str, w: Option<String>) -> Result<Output, HczError> {
    let p = Parabolic::maximal(big_n, n)?;
    if p.d_u() % 2 == 1 {
        return Err(HczError::OddDU { d_u: p.d_u() });
    }
    let lam = parse_weight(lambda, big_n)?;
    let datum = match w {
        Some(s) => balanced_datum(big_n, n, &Perm::parse(&s)?, &lam)?,
        None => default_datum(big_n, n, &lam)?,
    };
    let r = prefactor_product(&datum)?;
    let mut out = Output::new(&["k", "beta", "c", "h", "eps", "m", "gamma"]);
    for f in &r.factors {
        let g = hcz::arith::GammaExpr::from_record(&f.gamma)?;
        out.row(vec![f.k.to_string(), f.beta.clone(), f.c.to_string(), f.h.to_string(), f.eps.to_string(), f.m.to_string(), g.to_string()]);
    }
    out.notes.push(format!("w = {}, w' = {}, d_U = {}", r.w, r.w_prime, r.d_u));
    out.notes.push(format!("value at z=0: π^({}/2) · {}", r.pi_half, r.rational));
    out.notes.push(format!("pi_half {}, rational {}, even_h_count {}", r.pi_half, r.rational, r.even_h_count));
    if r.parity_warning {
        out.notes.push("warning: n and N-n have the same parity, so the π-power count is not guaranteed".into());
    }
    out.ok = r.pi_power_ok();
    out.json = serde_json::to_value(&r).map_err(|e| HczError::Invalid(e.to_string()))?;
    Ok(out)
}

fn cmd_verify(suite: &str) -> Result<Output, HczError> {
    let reports = verify::run_suite(suite)?;
    let mut out = Output::new(&["suite", "check", "result", "detail"]);
    let mut js = Vec::new();
    for r in &reports {
        for c in &r.checks {
            out.row(vec![r.suite.clone(), c.name.clone(), if c.passed { "pass" } else { "FAIL" }.into(), c.detail.clone()]);
        }
        let err = r.max_rel_err.map(|e| format!("{e:.3e}")).unwrap_or_else(|| "-".into());
        out.notes.push(format!("{}: {} ({:.2}s, max rel err {err})", r.suite, if r.passed() { "ok" } else { "FAILED" }, r.seconds));
        js.push(json!({
            "suite": r.suite,
            "passed": r.passed(),
            "seconds": r.seconds,
            "max_rel_err": r.max_rel_err,
            "checks": r.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
        }));
    }
    out.ok = reports.iter().all(|r| r.passed());
    out.json = Value::Array(js);
    Ok(out)
}

fn exit_code_for(e: &HczError) -> u8 {
    if e.assumption().is_some() {
        return 3;
    }
    match e {
        HczError::Parse(_)
        | HczError::Invalid(_)
        | HczError::RankTooLarge { .. }
        | HczError::ParityMismatch { .. }
        | HczError::ParityViolation { .. }
        | HczError::ParityError(_)
        | HczError::NotNegative(_)
        | HczError::NotKostant(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut format = cli.format;
    let result = match cli.cmd {
        Cmd::Kostant { big_n, n, balanced, lambda } => cmd_kostant(big_n, n, balanced, lambda),
        Cmd::Betaseq { big_n, n } => cmd_betaseq(big_n, n),
        Cmd::Dot { w, lambda } => cmd_dot(&w, &lambda),
        Cmd::Gl2 { action } => cmd_gl2(action),
        Cmd::Spectral { action } => cmd_spectral(action),
        Cmd::Factorize { big_n, n, lambda, w, json } => {
            if json {
                format = Format::Json;
            }
            cmd_factorize(big_n, n, &lambda, w)
        }
        Cmd::Verify { suite } => cmd_verify(&suite),
    };
    match result.and_then(|out| out.print(format).map(|_| out.ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
