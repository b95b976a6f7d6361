//! Acceptance suite. Runs as a plain binary (harness = false) so that every
//! criterion prints one line; exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wbasis::diffmatrix::{
    d2_entry_kernel, dense_diff_matrix, dense_diff_matrix_closed, dense_diff_matrix_quadrature, e_o_closed,
    e_o_recursion, generalized_hermite_iota, iota, iota_check, konoplev_iota_check_30, neumaier_sum, power_section,
    separability_scan, separable_factors, ultraspherical_s, DenseMatrix,
};
use wbasis::expansion::{error_report, Basis, Grid, TestFunction};
use wbasis::fastops::FastProductPlan;
use wbasis::orthopoly::gauss_rule;
use wbasis::special::pochhammer;
use wbasis::{Result, WeightFamily};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

fn lag(a: f64) -> WeightFamily {
    WeightFamily::laguerre(a).unwrap()
}

fn us(a: f64) -> WeightFamily {
    WeightFamily::ultraspherical(a).unwrap()
}

fn gh(mu: f64) -> WeightFamily {
    WeightFamily::generalized_hermite(mu).unwrap()
}

fn kon(a: f64, g: f64) -> WeightFamily {
    WeightFamily::konoplev(a, g).unwrap()
}

fn skew_symmetry() -> Result<Outcome> {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for fam in [lag(2.0), us(1.5), gh(0.5), kon(1.0, 0.0)] {
        worst = worst.max(dense_diff_matrix(fam, 63, 63)?.entries().skew_residual());
    }
    let t = start.elapsed();
    outcome(worst <= 1e-12 && t < Duration::from_secs(1), format!("max|D+Dᵀ| = {worst:.2e}, {t:.2?}"))
}

fn closed_vs_quadrature() -> Result<Outcome> {
    let start = Instant::now();
    let settings = [lag(0.5), lag(1.0), lag(3.0), us(0.5), us(2.0), us(3.5), gh(0.0), gh(0.5)];
    let mut worst: f64 = 0.0;
    for fam in settings {
        let c = dense_diff_matrix_closed(fam, 23, 23)?;
        let q = dense_diff_matrix_quadrature(fam, 23, 23)?;
        worst = worst.max(c.entries().max_abs_diff(q.entries()));
    }
    let t = start.elapsed();
    outcome(worst <= 1e-10 && t < Duration::from_secs(10), format!("max diff {worst:.2e} over 8 settings, {t:.2?}"))
}

fn separability_identities() -> Result<Outcome> {
    let lag_f = separable_factors(lag(1.5), 1000)?;
    let lag_err = lag_f.a().iter().zip(lag_f.b()).map(|(a, b)| (a * b - 0.5).abs()).fold(0.0, f64::max);
    let alpha = 2.5;
    let us_f = separable_factors(us(alpha), 1000)?;
    let us_err = us_f
        .a()
        .iter()
        .zip(us_f.b())
        .enumerate()
        .map(|(m, (a, b))| {
            let want = m as f64 + alpha + 0.5;
            (a * b - want).abs() / want
        })
        .fold(0.0, f64::max);
    let mut fact_err: f64 = 0.0;
    for (fam, factors) in [(lag(1.5), &lag_f), (us(alpha), &us_f)] {
        let q = dense_diff_matrix_quadrature(fam, 39, 39)?;
        let diff = factors.to_dense(40, 40).max_abs_diff(q.entries());
        fact_err = fact_err.max(diff / q.max_abs());
    }
    outcome(
        lag_err <= 1e-14 && us_err <= 1e-11 && fact_err <= 1e-12,
        format!("|𝔞𝔟−½| = {lag_err:.1e}, rel |𝔞𝔟−(m+α+½)| = {us_err:.1e}, factorization rel {fact_err:.1e}"),
    )
}

fn iota_verdicts() -> Result<Outcome> {
    let l = separability_scan(&dense_diff_matrix_quadrature(lag(2.0), 39, 39)?)?;
    let u = separability_scan(&dense_diff_matrix_quadrature(us(2.0), 39, 39)?)?;
    let lag_res = l.max_iota / (l.max_abs * l.max_abs);
    let us_res = (u.max_iota_check / (u.max_abs * u.max_abs)).max(u.max_even_entry / u.max_abs);
    let mut gh_err: f64 = 0.0;
    for mu in [0.25, 0.5, 1.0, 2.0] {
        let d = dense_diff_matrix_quadrature(gh(mu), 5, 5)?;
        gh_err = gh_err.max((iota(&d, 2, 1)? - 1.5 * (1.0 / (1.5 + mu)).sqrt()).abs());
        gh_err = gh_err.max((iota(&d, 2, 1)? - generalized_hermite_iota(mu, 1)).abs());
    }
    let mut kon_err: f64 = 0.0;
    for (a, g) in [(1.0, 0.0), (2.0, 0.5), (0.5, 1.5), (3.0, -0.25)] {
        let d = dense_diff_matrix_quadrature(kon(a, g), 6, 6)?;
        kon_err = kon_err.max((iota_check(&d, 3, 0)? - konoplev_iota_check_30(a, g)).abs());
    }
    let d_half = dense_diff_matrix_quadrature(kon(1.0, -0.5), 6, 6)?;
    let vanish = iota_check(&d_half, 3, 0)?.abs();
    let pass = l.separable
        && u.symmetric_separable
        && lag_res <= 1e-10
        && us_res <= 1e-10
        && gh_err <= 1e-10
        && kon_err <= 1e-10
        && vanish <= 1e-10
        && !separability_scan(&dense_diff_matrix_quadrature(gh(0.5), 19, 19)?)?.separable;
    outcome(
        pass,
        format!(
            "Laguerre res {lag_res:.1e}, ultraspherical res {us_res:.1e}, ι₂,₁ err {gh_err:.1e}, \
             ι̌₃,₀ err {kon_err:.1e}, ι̌₃,₀(γ=−½) = {vanish:.1e}, ι̌₃,₀(1,0) = {:.5}",
            konoplev_iota_check_30(1.0, 0.0)
        ),
    )
}

fn d2_corner() -> Result<Outcome> {
    let start = Instant::now();
    let expected = |a: f64| -a * (2.0 * a + 1.0) / (4.0 * (a - 1.0));
    let mut kernel_err: f64 = 0.0;
    for a in [1.5, 2.0, 3.0] {
        kernel_err = kernel_err.max((d2_entry_kernel(us(a), 0, 0)? - expected(a)).abs());
    }
    // (D_T²)_{0,0} = ∑_{k<T} D_{0,k} D_{k,0} for the T×T truncation.
    let column = dense_diff_matrix_closed(us(2.0), 1999, 0)?;
    let truncated = neumaier_sum((0..2000).map(|k| -column.get(k, 0).powi(2)));
    let trunc_err = (truncated - expected(2.0)).abs();
    let t = start.elapsed();
    outcome(
        kernel_err <= 1e-12 && trunc_err <= 1e-5 && t < Duration::from_secs(30),
        format!("kernel err {kernel_err:.1e}, truncated(2000) = {truncated:.8} vs {:.8}, {t:.2?}", expected(2.0)),
    )
}

fn jacobi_integrals() -> Result<Outcome> {
    let mut rec_err: f64 = 0.0;
    for a in [0.5, 1.0, 2.0, 4.0] {
        let (es, os) = e_o_recursion(a, 100)?;
        for m in 0..=100 {
            let (e, o) = e_o_closed(a, m)?;
            rec_err = rec_err.max(((es[m] - e) / e).abs()).max(((os[m] - o) / o).abs());
        }
    }
    let direct = gauss_rule(us(0.0), 4)?.integrate(|_| 1.0);
    let s_err = (ultraspherical_s(1.0, 0, 0)? - 2.0).abs().max((direct - 2.0).abs());
    let mut prop_err: f64 = 0.0;
    for a in [0.5, 1.0, 2.5] {
        let mut acc = 0.0;
        let mut k_fact = 1.0;
        for j in 0..=50usize {
            if j > 0 {
                k_fact *= j as f64;
            }
            acc += pochhammer(a, j) / k_fact;
            let rhs = pochhammer(1.0 + a, j) / k_fact;
            prop_err = prop_err.max(((acc - rhs) / rhs).abs());
        }
    }
    outcome(
        rec_err <= 1e-12 && s_err <= 1e-12 && prop_err <= 1e-12,
        format!("recursion rel {rec_err:.1e}, S¹₀,₀ err {s_err:.1e}, partial-sum identity rel {prop_err:.1e}"),
    )
}

fn block_matvec(d: &DenseMatrix, rows: usize, f: &[f64]) -> Vec<f64> {
    (0..rows).map(|i| neumaier_sum(d.row(i)[..f.len()].iter().zip(f).map(|(a, b)| a * b))).collect()
}

fn median_time(plan: &mut FastProductPlan, f: &[f64], reps: usize) -> Result<Duration> {
    let mut times = Vec::with_capacity(reps);
    for _ in 0..reps {
        let start = Instant::now();
        std::hint::black_box(plan.matvec(std::hint::black_box(f))?);
        times.push(start.elapsed());
    }
    times.sort();
    Ok(times[reps / 2])
}

fn fast_matvec() -> Result<Outcome> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let families = [lag(1.0), lag(3.5), us(0.5), us(2.0)];
    let dense: Vec<DenseMatrix> =
        families.iter().map(|&f| dense_diff_matrix_closed(f, 2048, 2048).map(|s| s.into_entries())).collect::<Result<_>>()?;
    let mut worst: f64 = 0.0;
    let mut flops_ok = true;
    for case in 0..200 {
        let k = case % families.len();
        let n = 2 * rng.gen_range(0..=1024usize);
        let m = 2 * rng.gen_range(0..=n / 2);
        let f: Vec<f64> = (0..=n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut plan = FastProductPlan::for_family(families[k], m, n)?;
        let fast = plan.matvec(&f)?;
        let reference = block_matvec(&dense[k], m + 1, &f);
        let scale = reference.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if scale > 0.0 {
            let err = fast.iter().zip(&reference).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            worst = worst.max(err / scale);
        }
        let bound = (n + 4 * m) as u64 + if k < 2 { 8 } else { 16 };
        flops_ok &= plan.flops() <= bound;
    }
    let mut ratios = Vec::new();
    for fam in [lag(1.0), us(2.0)] {
        let n1 = 1 << 20;
        let f1: Vec<f64> = (0..=2 * n1).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut p1 = FastProductPlan::for_family(fam, n1 / 4, n1)?;
        let mut p2 = FastProductPlan::for_family(fam, n1 / 2, 2 * n1)?;
        median_time(&mut p1, &f1[..=n1], 2)?;
        let t1 = median_time(&mut p1, &f1[..=n1], 9)?;
        let t2 = median_time(&mut p2, &f1, 9)?;
        ratios.push(t2.as_secs_f64() / t1.as_secs_f64());
    }
    let ratio = ratios.iter().copied().fold(0.0, f64::max);
    let t = start.elapsed();
    outcome(
        worst <= 1e-13 && flops_ok && ratio <= 2.6 && t < Duration::from_secs(60),
        format!("max rel err {worst:.1e}, flop bounds held: {flops_ok}, time ratio 2N/N = {ratio:.2}, {t:.2?}"),
    )
}

fn growth(fam: WeightFamily, s: u32) -> Result<f64> {
    let a = power_section(fam, s, 100, 300)?.max_abs();
    let b = power_section(fam, s, 100, 600)?.max_abs();
    Ok((b - a).abs() / a)
}

fn power_growth() -> Result<Outcome> {
    let start = Instant::now();
    let lag_grow = growth(lag(1.0), 2)?;
    let lag_flat = growth(lag(4.0), 3)?;
    let us_grow = growth(us(1.0), 2)?;
    let us_flat = growth(us(4.0), 3)?;
    let t = start.elapsed();
    outcome(
        lag_grow >= 0.02 && us_grow >= 0.02 && lag_flat <= 0.005 && us_flat <= 0.005 && t < Duration::from_secs(120),
        format!(
            "Laguerre α=1,s=2 {:.2}% / α=4,s=3 {:.3}%; ultraspherical α=1,s=2 {:.2}% / α=4,s=3 {:.3}%, {t:.2?}",
            100.0 * lag_grow,
            100.0 * lag_flat,
            100.0 * us_grow,
            100.0 * us_flat
        ),
    )
}

fn slope(rows: &[(usize, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = rows.iter().map(|&(n, e)| ((n as f64).ln(), e.ln())).collect();
    let k = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (mx, my) = (sx / k, sy / k);
    let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    num / den
}

fn convergence_dichotomy() -> Result<Outcome> {
    let grid: Vec<f64> = Grid::new(-1.0, 1.0, 2001)?.points().collect();
    let spectral = error_report(TestFunction::Us1, us(2.0), Basis::Phi, &[20, 30, 40], &grid, 0)?;
    let best = spectral.iter().map(|r| r.sup_err).fold(f64::INFINITY, f64::min);
    let mut detail = format!("α=2 best sup {best:.1e}");
    let mut pass = best <= 1e-12;
    for a in [1.0, 3.0, 4.0] {
        let rows = error_report(TestFunction::Us1, us(a), Basis::Phi, &[10, 15, 20, 30, 40], &grid, 0)?;
        let at30 = rows.iter().find(|r| r.n == 30).map(|r| r.sup_err).unwrap_or(0.0);
        let k = slope(&rows.iter().map(|r| (r.n, r.sup_err)).collect::<Vec<_>>());
        pass &= at30 >= 1e-6 && (-6.0..=-1.0).contains(&k);
        detail.push_str(&format!("; α={a} sup(30) {at30:.1e} slope {k:.2}"));
    }
    outcome(pass, detail)
}

fn laguerre_uniform() -> Result<Outcome> {
    let grid: Vec<f64> = Grid::new(0.0, 30.0, 3001)?.points().collect();
    let phi = error_report(TestFunction::Lag1, lag(2.0), Basis::Phi, &[40], &grid, 0)?[0].sup_err;
    let at = |x: f64| -> Result<f64> { Ok(error_report(TestFunction::Lag1, lag(2.0), Basis::P, &[40], &[x], 0)?[0].sup_err) };
    let (e5, e30) = (at(5.0)?, at(30.0)?);
    outcome(
        phi <= 1e-8 && e30 >= 1e3 * e5,
        format!("Φ sup on [0,30] {phi:.1e}; P error at 30 / at 5 = {e30:.1e} / {e5:.1e}"),
    )
}

fn eta_table() -> Result<Outcome> {
    let start = Instant::now();
    let err = |a: f64, d: usize| -> Result<f64> {
        Ok(error_report(TestFunction::Lag2, lag(a), Basis::Phi, &[60], &[0.0], d)?[0].sup_err)
    };
    let (e1, e4, e2) = (err(1.0, 2)?, err(4.0, 2)?, err(2.0, 0)?);
    let t = start.elapsed();
    outcome(
        e1 >= 1e6 && e4 <= 1e-1 && e2 <= 1e-10 && t < Duration::from_secs(120),
        format!("α=1 d²: {e1:.3e}; α=4 d²: {e4:.3e}; α=2 d⁰: {e2:.3e}, {t:.2?}"),
    )
}

fn hermite_reduction() -> Result<Outcome> {
    let d = dense_diff_matrix_closed(gh(0.0), 101, 101)?;
    let mut band: f64 = 0.0;
    let mut sub: f64 = 0.0;
    for m in 0..=101usize {
        for n in 0..=101 {
            if m.abs_diff(n) > 1 {
                band = band.max(d.get(m, n).abs());
            }
        }
    }
    for n in 0..=100 {
        sub = sub.max((d.get(n + 1, n) - ((n + 1) as f64 / 2.0).sqrt()).abs());
    }
    let q = dense_diff_matrix_quadrature(gh(0.0), 30, 30)?;
    let oracle = d.entries().block(31, 31).max_abs_diff(q.entries());
    outcome(
        band <= 1e-12 && sub <= 1e-12 && oracle <= 1e-12,
        format!("off-band {band:.1e}, |D_{{n+1,n}} − √((n+1)/2)| {sub:.1e}, quadrature diff {oracle:.1e}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome>); 12] = [
        ("skew symmetry", skew_symmetry),
        ("closed form vs quadrature", closed_vs_quadrature),
        ("separability identities", separability_identities),
        ("iota verdicts", iota_verdicts),
        ("(D^2)_00 corner", d2_corner),
        ("Jacobi integrals", jacobi_integrals),
        ("fast matvec", fast_matvec),
        ("power growth dichotomy", power_growth),
        ("convergence dichotomy", convergence_dichotomy),
        ("Laguerre uniform accuracy", laguerre_uniform),
        ("eta table signature", eta_table),
        ("Hermite reduction", hermite_reduction),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run().unwrap_or_else(|e| Outcome { pass: false, detail: format!("error: {e}") });
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {:>2}. {name}: {}", i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
