//! Seeded invariant suites behind `hcz verify`.

use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{q, qi, GammaExpr, GammaFactor, GaussianRational, Orientation, Poly, RatFunc, Rational};
use crate::error::{HczError, Result};
use crate::factor::{admissible_data, cross_check_gl2_chain, default_datum, prefactor_product};
use crate::gl2::{self, ALL_OPS};
use crate::numeric::{self, NumericConfig};
use crate::spectral;
use crate::weyl::{
    dot_action, gaussian_binomial, kostant_set_with_limit, wp_factorization, Parabolic, Perm, Weight,
};

pub const SUITES: [&str; 6] = ["arith", "weyl", "gl2", "spectral", "factor", "numeric"];
pub const SEED: u64 = 0x5eed_0002;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    /// largest relative error seen by a floating-point comparison
    pub max_rel_err: Option<f64>,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Collector {
    checks: Vec<Check>,
    max_err: Option<f64>,
}

impl Collector {
    fn new() -> Self {
        Collector { checks: Vec::new(), max_err: None }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.to_string(), passed, detail: detail.into() });
    }

    /// Records a Result-valued check; an Err is a failure with its message.
    fn run(&mut self, name: &str, r: Result<(bool, String)>) {
        match r {
            Ok((p, d)) => self.check(name, p, d),
            Err(e) => self.check(name, false, e.to_string()),
        }
    }

    fn err(&mut self, e: f64) {
        self.max_err = Some(self.max_err.map_or(e, |m: f64| m.max(e)));
    }
}

pub fn run_suite(name: &str) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        return SUITES.iter().map(|s| run_one(s)).collect();
    }
    if !SUITES.contains(&name) {
        return Err(HczError::Invalid(format!("unknown suite '{name}' (expected one of {}, all)", SUITES.join(", "))));
    }
    Ok(vec![run_one(name)?])
}

fn run_one(name: &str) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut c = Collector::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    match name {
        "arith" => arith_suite(&mut c, &mut rng),
        "weyl" => weyl_suite(&mut c),
        "gl2" => gl2_suite(&mut c),
        "spectral" => spectral_suite(&mut c, &mut rng),
        "factor" => factor_suite(&mut c, &mut rng),
        "numeric" => numeric_suite(&mut c, &mut rng),
        _ => unreachable!("suite name validated"),
    }
    Ok(SuiteReport { suite: name.to_string(), checks: c.checks, max_rel_err: c.max_err, seconds: start.elapsed().as_secs_f64() })
}

/// Random expression with shifts in ±{0, 1/2, …, 9/2}, exponents in -2..=2.
pub fn random_gamma_expr(rng: &mut ChaCha8Rng) -> GammaExpr {
    let k = rng.gen_range(1..=4);
    let factors: Vec<GammaFactor> = (0..k)
        .map(|_| GammaFactor {
            orientation: if rng.gen_bool(0.5) { Orientation::Plus } else { Orientation::Minus },
            shift: q(rng.gen_range(-9..=9), 2),
            exp: rng.gen_range(-2..=2),
        })
        .collect();
    let c = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
    GammaExpr::from_parts(RatFunc::constant(qi(c)), rng.gen_range(-2..=2), &factors)
}

/// A real z away from every Γ pole of `e` and its canonical form.
fn safe_z(rng: &mut ChaCha8Rng) -> f64 {
    // irrational-looking offsets keep σz/2 + s off the integers
    rng.gen_range(0.05..3.95) + 0.013_7
}

fn arith_suite(c: &mut Collector, rng: &mut ChaCha8Rng) {
    let mut ok = true;
    let mut idem = true;
    for _ in 0..50 {
        let e = random_gamma_expr(rng);
        let canon = e.canonicalize();
        idem &= canon.canonicalize() == canon && canon.is_canonical();
        for _ in 0..5 {
            let z = safe_z(rng);
            match (numeric::ge_eval_numeric(&e, z), numeric::ge_eval_numeric(&canon, z)) {
                (Ok(a), Ok(b)) => {
                    let r = numeric::rel_err(b, a);
                    c.err(r);
                    ok &= r < 1e-9;
                }
                _ => ok = false,
            }
        }
    }
    c.check("canonicalization preserves value (50×5)", ok, "");
    c.check("canonicalization idempotent", idem, "");

    // gcd divides both and the cofactors are coprime
    let mut gcd_ok = true;
    for _ in 0..30 {
        let rp = |rng: &mut ChaCha8Rng| Poly::new((0..rng.gen_range(1..4)).map(|_| qi(rng.gen_range(-4..=4))).collect::<Vec<Rational>>());
        let (a, b, g) = (rp(rng), rp(rng), rp(rng));
        if g.is_zero() || a.is_zero() || b.is_zero() {
            continue;
        }
        let (x, y) = (&a * &g, &b * &g);
        let d = Poly::gcd(&x, &y);
        gcd_ok &= x.div_rem(&d).1.is_zero() && y.div_rem(&d).1.is_zero() && g.div_rem(&d).1.is_zero();
    }
    c.check("polynomial gcd", gcd_ok, "");

    let mut field_ok = true;
    for _ in 0..30 {
        let rg = |rng: &mut ChaCha8Rng| GaussianRational::new(q(rng.gen_range(-6..=6), rng.gen_range(1..=4)), q(rng.gen_range(-6..=6), rng.gen_range(1..=4)));
        let (a, b) = (rg(rng), rg(rng));
        if let Some(ib) = b.inv() {
            field_ok &= (a.clone() / b.clone()) * b.clone() == a && ib * b == GaussianRational::one();
        }
        let f = RatFunc::linear(a.clone(), GaussianRational::one());
        field_ok &= (f.clone() / f.clone()).is_one() || a.is_zero();
    }
    c.check("ℚ(i) and ℚ(i)(z) field identities", field_ok, "");
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn weyl_suite(c: &mut Collector) {
    let mut count_ok = true;
    let mut gen_ok = true;
    for big_n in 2..=8 {
        for n in 1..big_n {
            let p = Parabolic::maximal(big_n, n).expect("valid");
            let set = kostant_set_with_limit(&p, 8).expect("within limit");
            count_ok &= set.len() == binom(big_n, n);
            let mut hist = vec![0u64; p.d_u() + 1];
            for w in &set {
                hist[w.length()] += 1;
            }
            gen_ok &= hist == gaussian_binomial(big_n, n);
        }
    }
    c.check("|W^P| = binom(N, n), N ≤ 8", count_ok, "");
    c.check("length generating function = Gaussian binomial, N ≤ 8", gen_ok, "");

    let mut word_ok = true;
    let mut detail = String::new();
    let mut compl_ok = true;
    for big_n in 2..=6 {
        for n in 1..big_n {
            let p = Parabolic::maximal(big_n, n).expect("valid");
            match wp_factorization(&p).map(|w| w.check(&p)) {
                Ok(Ok(())) => {}
                Ok(Err(e)) => {
                    word_ok = false;
                    detail = format!("N={big_n} n={n}: {e}");
                }
                Err(e) => {
                    word_ok = false;
                    detail = e.to_string();
                }
            }
            let q = p.reversed();
            for w in kostant_set_with_limit(&p, 6).expect("within limit") {
                let wc = p.complement(&w).expect("Kostant");
                compl_ok &= w.length() + wc.length() == p.d_u() && q.is_kostant(&wc) && q.complement(&wc).ok() == Some(w.clone());
            }
        }
    }
    c.check("β-sequence invariants, N ≤ 6", word_ok, detail);
    c.check("l(w) + l(w') = d_U, N ≤ 6", compl_ok, "");
}

fn gl2_suite(c: &mut Collector) {
    for eps in 0..2u8 {
        c.run(&format!("composite T†·T = π·Λ, ε={eps}, |ν| ≤ 10"), gl2::composite_check(eps, 10).map(|b| (b, String::new())));
    }
    c.run(
        "Λ(1/2) = -4, ε=0",
        gl2::lambda(0).eval_at(&q(1, 2)).map(|v| (v == (0, qi(-4)), format!("{v:?}"))),
    );
    for eps in 0..2u8 {
        let e = eps as i64;
        let nus = [e, e + 2, e - 2, e + 6, e - 6];
        c.run(
            &format!("poles in [-7, 7], ε={eps}"),
            gl2::poles_of_tst(eps, 7, &nus)
                .map(|r| (r.simple && r.consistent && r.poles == gl2::expected_poles(eps, 7), format!("{:?}", r.poles))),
        );
    }
    for l in [0, -2, -4, -6] {
        c.run(
            &format!("finite-dimensional submodule l={l}"),
            gl2::invariant_submodule(l, &qi(0))
                .map(|r| (r.closed && r.quotient_splits && r.dimension as i64 == -l + 1, format!("dim {}", r.dimension))),
        );
    }
    for l in [0, 2, 4] {
        c.run(&format!("D+ ⊕ D- closed, l={l}"), gl2::exact2_check(l, 8).map(|b| (b, String::new())));
    }
    for (l, d) in [(0, qi(0)), (2, qi(1)), (2, qi(2)), (1, q(1, 2)), (3, q(-1, 2)), (4, qi(0))] {
        let s: i8 = {
            let x = crate::arith::to_i64(&(&d * qi(2))).unwrap() - l;
            if (x / 2).rem_euclid(2) == 0 {
                1
            } else {
                -1
            }
        };
        c.run(
            &format!("H¹ l={l} d={d}"),
            gl2::h1_cohomology(l, &d).map(|r| {
                let shape = r.basis.len() == 2 && r.basis.iter().all(|b| b.terms.len() == 1);
                let ok = shape && r.eta_signs == (s, -s) && r.degree0 == 0 && r.degree2 == 0;
                (ok, format!("signs {:?}", r.eta_signs))
            }),
        );
    }
    // brackets on a spanning window with symbolic z
    type RG = RatFunc<GaussianRational>;
    let z = RG::z();
    let mut br_ok = true;
    for par in 0..2i64 {
        for nu in (-8..=8).filter(|n: &i64| n.rem_euclid(2) == par) {
            let v = gl2::KVec::<RG>::basis(nu);
            for a in ALL_OPS {
                for b in ALL_OPS {
                    br_ok &= gl2::bracket_check(a, b, &v, &z);
                }
            }
        }
    }
    c.check("bracket relations, symbolic z, |ν| ≤ 8", br_ok, "");
    let mut norm_ok = true;
    let mut nonzero = true;
    for eps in 0..2u8 {
        for nu in (-10..=10).filter(|n: &i64| n.rem_euclid(2) as u8 == eps) {
            let t = gl2::t_norm(eps, nu).expect("parity");
            norm_ok &= (-10..=10).all(|z0| t.order_at(&qi(z0)).is_some_and(|o| o >= 0));
            nonzero &= !gl2::t_st(eps, nu).expect("parity").is_zero();
        }
    }
    c.check("T_norm holomorphic at integers in [-10, 10]", norm_ok, "");
    c.check("T_st nonzero", nonzero, "");
    c.run(
        "compare constants l=0 first ratio π",
        gl2::compare_constants(0).map(|r| (r.first_agrees && r.first_constant && r.second_constant, format!("{} / {}", r.first, r.second))),
    );
}

/// Self-dual γ-coefficients in 0..=4 with the parity-fixing d.
pub fn random_self_dual(rng: &mut ChaCha8Rng, n: usize) -> (Vec<i64>, Rational) {
    let mut a = vec![0i64; n - 1];
    for i in 0..n / 2 {
        let x = rng.gen_range(0..=4);
        a[i] = x;
        a[n - 2 - i] = x;
    }
    let d = if n % 2 == 0 && a[n / 2 - 1] % 2 == 1 { q(1, 2) } else { Rational::zero() };
    (a, d)
}

fn spectral_suite(c: &mut Collector, rng: &mut ChaCha8Rng) {
    let ok = (2..=12).all(|n| {
        let w = spectral::w_un(n);
        spectral::b_lowest(n) == n / 2 + w.length() && w.length() == spectral::l_wun_formula(n)
    });
    c.check("b_n = ⌊n²/4⌋ = ⌊n/2⌋ + l(w_un), n ≤ 12", ok, "");

    let mut closed_ok = true;
    let mut detail = String::new();
    for t in 0..50 {
        let n = 2 + t % 7;
        let (a, d) = random_self_dual(rng, n);
        match spectral::cuspidal_params(&a, &d, n) {
            Ok(p) => {
                // direct dot action, independent of the stored fields
                let ar: Vec<Rational> = a.iter().map(|x| qi(*x)).collect();
                let mu = dot_action(&spectral::w_un(n), &Weight::from_gamma(&ar, &d));
                for j in 1..=n / 2 {
                    let b = &mu.coords[2 * j - 2] - &mu.coords[2 * j - 1];
                    let tw = (&mu.coords[2 * j - 2] + &mu.coords[2 * j - 1]) / qi(2) - &d;
                    if b != qi(spectral::b_closed_form(&a, n, j)) || tw != spectral::twist_closed_form(2 * j - 1, n) || p.b[j - 1] != spectral::b_closed_form(&a, n, j) {
                        closed_ok = false;
                        detail = format!("n={n} a={a:?} j={j}");
                    }
                }
                if n % 2 == 1 && &mu.coords[n - 1] - &d != q(n as i64 - 1, 2) {
                    closed_ok = false;
                    detail = format!("n={n} a={a:?} trailing twist");
                }
            }
            Err(e) => {
                closed_ok = false;
                detail = e.to_string();
            }
        }
    }
    c.check("cuspidal closed forms vs dot action (50 random λ, n ≤ 8)", closed_ok, detail);

    let mut uc_ok = true;
    for n in 2..=6 {
        for t in 0..3 {
            let (a, d) = if t == 0 { (vec![0; n - 1], qi(0)) } else { random_self_dual(rng, n) };
            match spectral::u_cohomology_degrees(&a, &d, n) {
                Ok(r) => uc_ok &= r.concentrated(),
                Err(_) => uc_ok = false,
            }
        }
    }
    c.check("u-cohomology match concentrated at l(w_un), n ≤ 6", uc_ok, "");

    let flips = [(2, qi(1)), (4, qi(0)), (1, q(1, 2))].iter().all(|(m, d)| {
        let a = vec![0, *m, 0];
        let s1 = spectral::eta_sign(&a, d, 4);
        let s2 = spectral::eta_sign(&a, &(d + qi(1)), 4);
        matches!((s1, s2), (Ok(x), Ok(y)) if x == -y)
    });
    c.check("η-sign flips under d -> d+1", flips, "");
}

fn factor_suite(c: &mut Collector, rng: &mut ChaCha8Rng) {
    let mut ok = true;
    let mut cases = 0;
    let mut detail = String::new();
    for big_n in 2..=8 {
        for n in 1..big_n {
            if n * (big_n - n) % 2 == 1 {
                continue;
            }
            for t in 0..11 {
                let (a, d) = if t == 0 { (vec![0; big_n - 1], qi(0)) } else { random_self_dual(rng, big_n) };
                let ar: Vec<Rational> = a.iter().map(|x| qi(*x)).collect();
                let lam = Weight::from_gamma(&ar, &d);
                match admissible_data(big_n, n, &lam) {
                    Ok(data) => {
                        for datum in data {
                            cases += 1;
                            match prefactor_product(&datum) {
                                Ok(r) if r.pi_power_ok() => {}
                                Ok(r) => {
                                    ok = false;
                                    detail = format!("N={big_n} n={n} w={}: pi_half {} rational {}", r.w, r.pi_half, r.rational);
                                }
                                Err(e) => {
                                    ok = false;
                                    detail = format!("N={big_n} n={n} w={}: {e}", datum.w);
                                }
                            }
                        }
                    }
                    Err(e) => {
                        ok = false;
                        detail = e.to_string();
                    }
                }
            }
        }
    }
    c.check("π^{d_U/2} and nonzero rational at z=0, N ≤ 8", ok && cases > 0, format!("{cases} data {detail}"));

    let mut chain_ok = true;
    for n in 1..=2 {
        for a in ["0,0", "1,1", "2,2"] {
            match default_datum(3, n, &Weight::parse(a).expect("literal")).and_then(|d| cross_check_gl2_chain(&d)) {
                Ok(b) => chain_ok &= b,
                Err(_) => chain_ok = false,
            }
        }
    }
    c.check("N=3 factor product = GL(2) T_st chain", chain_ok, "");
    c.run(
        "w = e rejected as unbalanced",
        Ok((matches!(crate::factor::balanced_datum(3, 2, &Perm::identity(3), &Weight::zero(3)), Err(HczError::NotBalanced(_))), String::new())),
    );
}

fn numeric_suite(c: &mut Collector, rng: &mut ChaCha8Rng) {
    let mut rec_ok = true;
    for _ in 0..100 {
        let x: f64 = rng.gen_range(0.1..20.0);
        let r = numeric::rel_err(numeric::gamma_num(x + 1.0).unwrap(), x * numeric::gamma_num(x).unwrap());
        c.err(r);
        rec_ok &= r < 1e-11;
    }
    c.check("Γ(x+1) = xΓ(x), 100 random x", rec_ok, "");
    let mut refl_ok = true;
    for _ in 0..100 {
        let mut x: f64 = rng.gen_range(-5.0..5.0);
        if (x - x.round()).abs() < 1e-3 {
            x += 0.01;
        }
        let v = numeric::gamma_num(x).unwrap() * numeric::gamma_num(1.0 - x).unwrap() * (std::f64::consts::PI * x).sin() / std::f64::consts::PI;
        c.err((v - 1.0).abs());
        refl_ok &= (v - 1.0).abs() < 1e-9;
    }
    c.check("reflection formula, 100 random x", refl_ok, "");
    let mut lam_ok = true;
    for _ in 0..20 {
        let mut z: f64 = rng.gen_range(0.1..5.9);
        if (z - z.round()).abs() < 1e-3 {
            z += 0.01;
        }
        for eps in 0..2u8 {
            let r = numeric::rel_err(numeric::ge_eval_numeric(&gl2::lambda(eps), z).unwrap(), numeric::lambda_closed_form(eps, z));
            c.err(r);
            lam_ok &= r < 1e-8;
        }
    }
    c.check("Λ vs (2a/(z-1))·tan^a(πz/2), 20 random z", lam_ok, "");
    let cfg = NumericConfig::default();
    let mut quad_ok = true;
    for z in [2.5, 3.0, 4.0, 5.5] {
        for nu in -4i64..=4 {
            let eps = nu.rem_euclid(2) as u8;
            match (numeric::intertwine_quadrature(z, nu, &cfg), numeric::tst_reference(eps, nu, z)) {
                (Ok(got), Ok(want)) => {
                    let e = numeric::quad_err(got, want);
                    c.err(e);
                    quad_ok &= e < 1e-6;
                }
                _ => quad_ok = false,
            }
        }
    }
    c.check("quadrature vs i^ε·T_st, z ∈ {2.5,3,4,5.5}, |ν| ≤ 4", quad_ok, "");
    let a1 = numeric::intertwine_quadrature(4.0, 0, &cfg).map(|v| numeric::rel_err(v.re, std::f64::consts::FRAC_PI_2));
    let a2 = numeric::intertwine_quadrature(3.0, 0, &cfg).map(|v| numeric::rel_err(v.re, 2.0));
    let anchors = matches!((a1, a2), (Ok(x), Ok(y)) if x < 1e-8 && y < 1e-8);
    c.check("anchor integrals π/2 (z=4), 2 (z=3)", anchors, "");
}
