//! Acceptance checks, one PASS/FAIL line per criterion.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Float, Integer, Rational};

use cyclodcr::compiler::compile_sixj;
use cyclodcr::diag::reference::{TABLE1, TABLE3, TABLE3_LEVEL, TABLE4};
use cyclodcr::diag::{diagnostics_sixj, identity_checks, lse_eval_sixj, IdentityKind, Precision};
use cyclodcr::field::{
    CycloField, DoubleField, Field, MpComplex, MpField, NumericField, RationalField, ScaledComplex, ScaledField,
};
use cyclodcr::projection::{
    classical_project, evaluate, evaluate_amplitude, evaluate_double, evaluate_double_at_level, evaluate_full_range,
    term_values, vanishes_at, ProjectionContext,
};
use cyclodcr::qfactor::{qfact_monomial, qint_monomial};
use cyclodcr::{CycloMonomial, SixJLabels};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn rel(x: f64, reference: f64) -> f64 {
    (x - reference).abs() / reference.abs()
}

fn criterion1() -> Outcome {
    let h = TABLE3_LEVEL + 2;
    let mut worst = 0.0f64;
    for r in TABLE3 {
        let dcr = compile_sixj(SixJLabels::symmetric(2 * r.j)).map_err(|e| e.to_string())?;
        let ctx = ProjectionContext::at_level(MpField::new(2048).unwrap(), h, dcr.d_max()).unwrap();
        let v = evaluate_amplitude(&dcr, &ctx).map_err(|e| e.to_string())?.re.to_f64();
        let d = rel(v, r.truth);
        if d > 5e-5 {
            return Err(format!("j={} gives {v:.5e}, reference {:.4e}", r.j, r.truth));
        }
        worst = worst.max(d);
    }
    Ok(format!("5 rows at 2048 bits, worst relative deviation {worst:.1e}"))
}

fn criterion2() -> Outcome {
    let h = TABLE3_LEVEL + 2;
    let labels = SixJLabels::symmetric(180);
    let lse = lse_eval_sixj(labels, h, Precision::Double).map_err(|e| e.to_string())?;
    let dcr = compile_sixj(labels).map_err(|e| e.to_string())?;
    let dbl = evaluate_double_at_level(&dcr, h).map_err(|e| e.to_string())?.re;
    check(
        lse > 0.0 && dbl < 0.0,
        format!("j=90: eager LSE {lse:+.3e}, dcr-f64 {dbl:+.3e}, truth -6.4428e-4"),
    )
}

fn criterion3() -> Outcome {
    let mut parts = Vec::new();
    for &(j, k, max_t, abs_s, loss) in &TABLE1[..2] {
        let d = diagnostics_sixj(SixJLabels::symmetric(2 * j), k + 2, 512).map_err(|e| e.to_string())?;
        let ok =
            (d.delta_loss - loss).abs() <= 0.1 && rel(d.max_term, max_t) <= 0.01 && rel(d.value.abs(), abs_s) <= 0.01;
        let s = format!(
            "({j},{k}) max|T| {:.3e} |S| {:.3e} loss {:.2}",
            d.max_term,
            d.value.abs(),
            d.delta_loss
        );
        if !ok {
            return Err(s);
        }
        parts.push(s);
    }
    Ok(parts.join("; "))
}

fn criterion4() -> Outcome {
    let mut prev = f64::NEG_INFINITY;
    let mut parts = Vec::new();
    for r in TABLE4 {
        let d = diagnostics_sixj(SixJLabels::symmetric(2 * r.j), r.k + 2, 512).map_err(|e| e.to_string())?;
        let dg = d.gamma_eager - d.gamma_dcr;
        let mut ok = rel(d.gamma_eager, r.gamma_eager) <= 0.05 && rel(d.gamma_dcr, r.gamma_dcr) <= 0.05 && dg > prev;
        if matches!(r.j, 10 | 50 | 100) {
            ok &= (d.log10_kappa - r.log10_kappa).abs() <= 0.05;
        }
        let s = format!("j={} log10k {:.2} dg {:.1}", r.j, d.log10_kappa, dg);
        if !ok {
            return Err(format!("{s} (gamma {:.1}/{:.1})", d.gamma_eager, d.gamma_dcr));
        }
        prev = dg;
        parts.push(s);
    }
    Ok(parts.join("; "))
}

/// `([n], [n]!)` from `(q^m - q^-m) / (q - q^-1)` at 1024 bits.
fn trig_refs(q: &MpComplex, n: i64) -> [MpComplex; 2] {
    let f = MpField::new(1024).unwrap();
    let q = MpComplex {
        re: Float::with_val(1024, &q.re),
        im: Float::with_val(1024, &q.im),
    };
    let q_inv = f.inv(&q).unwrap();
    let den = f.inv(&f.sub(&q, &q_inv)).unwrap();
    let qint = |m: i64| f.mul(&f.sub(&f.pow(&q, m as u64), &f.pow(&q_inv, m as u64)), &den);
    let fact = (1..=n).fold(f.one(), |acc, m| f.mul(&acc, &qint(m)));
    [qint(n), fact]
}

fn criterion5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mp = MpField::new(512).unwrap();
    let wide = MpField::new(1024).unwrap();
    let (mut worst_d, mut worst_m) = (0.0f64, 0.0f64);
    let mut scaled = 0;
    for _ in 0..200 {
        let n: i64 = rng.gen_range(1..=300);
        let theta = rng.gen_range(1e-3..std::f64::consts::PI - 1e-3);
        let mons = [qint_monomial(n).unwrap(), qfact_monomial(n).unwrap()];
        let d_max = n.max(2) as u32;

        let qd = Complex64::from_polar(1.0, theta);
        let cd = ProjectionContext::numeric(DoubleField, qd, d_max).unwrap();
        let cs = ProjectionContext::numeric(ScaledField, ScaledField.from_c64(qd), d_max).unwrap();
        let refs = trig_refs(&wide.from_c64(qd), n);
        for (m, r) in mons.iter().zip(&refs) {
            let vd = cd.project(m).map_err(|e| e.to_string())?;
            let e = if DoubleField.is_finite(&vd) {
                wide.rel_diff(&wide.from_c64(vd), r)
            } else {
                scaled += 1;
                let vs = cs.project(m).map_err(|e| e.to_string())?;
                ScaledField.rel_diff(&vs, &scaled_from(r))
            };
            worst_d = worst_d.max(e);
        }

        let qm = mp.exp_i_pi(rng.gen_range(1..1 << 20), 1 << 20);
        let cm = ProjectionContext::numeric(mp, qm.clone(), d_max).unwrap();
        let refs = trig_refs(&qm, n);
        for (m, r) in mons.iter().zip(&refs) {
            let vm = cm.project(m).map_err(|e| e.to_string())?;
            let vm = MpComplex {
                re: Float::with_val(1024, &vm.re),
                im: Float::with_val(1024, &vm.im),
            };
            worst_m = worst_m.max(wide.rel_diff(&vm, r));
        }
    }
    check(
        worst_d <= 1e-10 && worst_m <= 1e-100,
        format!(
            "200 draws, worst relative error {worst_d:.1e} in double ({scaled} values beyond double range in extended-exponent doubles), {worst_m:.1e} at 512 bits"
        ),
    )
}

/// A `Float` complex as a double mantissa pair with a shared binary exponent.
fn scaled_from(x: &MpComplex) -> ScaledComplex {
    let (re, e) = x.re.to_f64_exp();
    let im = Float::with_val(64, &x.im >> e).to_f64();
    let f = ScaledField;
    let two = f.pow(&f.from_i64(2), e.unsigned_abs() as u64);
    let m = ScaledComplex::new(Complex64::new(re, im));
    if e >= 0 {
        m.mul(&two)
    } else {
        m.div(&two)
    }
}

fn fact(n: i64) -> Integer {
    Integer::from(Integer::factorial(n as u32))
}

/// Classical 6j from the Racah sum in exact rationals: `(S, R)` with value
/// `S sqrt(R)`. Labels are twice-spins.
fn racah(t: [i64; 6]) -> (Rational, Rational) {
    let j = |i: usize| t[i];
    let triads = [
        (j(0), j(1), j(2)),
        (j(0), j(4), j(5)),
        (j(3), j(1), j(5)),
        (j(3), j(4), j(2)),
    ];
    let mut r = Rational::from(1);
    for &(a, b, c) in &triads {
        let num = fact((a + b - c) / 2) * fact((a - b + c) / 2) * fact((-a + b + c) / 2);
        r *= Rational::from((num, fact((a + b + c) / 2 + 1)));
    }
    let alphas: Vec<i64> = triads.iter().map(|&(a, b, c)| (a + b + c) / 2).collect();
    let betas = [
        (j(0) + j(1) + j(3) + j(4)) / 2,
        (j(0) + j(2) + j(3) + j(5)) / 2,
        (j(1) + j(2) + j(4) + j(5)) / 2,
    ];
    let zmin = *alphas.iter().max().unwrap();
    let zmax = *betas.iter().min().unwrap();
    let mut s = Rational::new();
    for z in zmin..=zmax {
        let mut den = Integer::from(1);
        for a in &alphas {
            den *= fact(z - a);
        }
        for b in &betas {
            den *= fact(b - z);
        }
        let term = Rational::from((fact(z + 1), den));
        if z % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
    }
    (s, r)
}

fn criterion6() -> Outcome {
    let mut count = 0;
    for code in 0..7i64.pow(6) {
        let mut t = [0i64; 6];
        let mut c = code;
        for x in t.iter_mut() {
            *x = c % 7;
            c /= 7;
        }
        let labels = SixJLabels::new(t);
        if !labels.is_admissible(None) {
            continue;
        }
        let dcr = compile_sixj(labels).map_err(|e| e.to_string())?;
        let v = classical_project(&dcr).map_err(|e| e.to_string())?;
        let (s, r) = racah(t);
        let ours = Rational::from(&v.a * &v.a) * &v.r;
        let theirs = Rational::from(&s * &s) * &r;
        if ours != theirs || v.a.cmp0() != s.cmp0() || v.r < 0 {
            return Err(format!("{t:?}: a^2 r = {ours}, oracle {theirs}"));
        }
        count += 1;
    }
    Ok(format!(
        "{count} admissible symbols with twice-spins <= 6 match exactly"
    ))
}

fn random_monomial(rng: &mut ChaCha8Rng, skip: u32) -> CycloMonomial {
    let mut pairs = Vec::new();
    for d in 2..=30u32 {
        if d != skip && rng.gen_bool(0.25) {
            let e: i64 = rng.gen_range(-4..=4);
            if e != 0 {
                pairs.push((d, e));
            }
        }
    }
    let sigma = if rng.gen_bool(0.5) { 1 } else { -1 };
    CycloMonomial::from_parts(sigma, rng.gen_range(-40..=40), &pairs).unwrap()
}

/// Homomorphism and square-split checks on one random pair, exact.
fn exact_pair<F: Field>(ctx: &ProjectionContext<F>, a: &CycloMonomial, b: &CycloMonomial) -> Result<bool, String>
where
    F::Elem: PartialEq,
{
    let f = ctx.field();
    let p = |m: &CycloMonomial| ctx.project(m).map_err(|e| e.to_string());
    let ab = a.mul(b).map_err(|e| e.to_string())?;
    let split = ab.sqrt_split();
    let hom = p(&ab)? == f.mul(&p(a)?, &p(b)?);
    let sq = p(&ab)? == f.mul(&f.pow(&p(&split.root)?, 2), &p(&split.rad)?);
    Ok(hom && sq)
}

fn numeric_pair<F: NumericField>(
    ctx: &ProjectionContext<F>,
    a: &CycloMonomial,
    b: &CycloMonomial,
) -> Result<f64, String> {
    let f = ctx.field();
    let p = |m: &CycloMonomial| ctx.project(m).map_err(|e| e.to_string());
    let ab = a.mul(b).map_err(|e| e.to_string())?;
    let split = ab.sqrt_split();
    let lhs = p(&ab)?;
    let hom = f.rel_diff(&f.mul(&p(a)?, &p(b)?), &lhs);
    let sq = f.rel_diff(&f.mul(&f.pow(&p(&split.root)?, 2), &p(&split.rad)?), &lhs);
    Ok(hom.max(sq))
}

fn criterion7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let classical = ProjectionContext::classical(30).unwrap();
    let cyclo = ProjectionContext::cyclotomic(7, 30).unwrap();
    let mp = MpField::new(256).unwrap();
    let mut worst = 0.0f64;
    let mut exact = 0;
    for i in 0..10_000 {
        let skip = if i % 4 == 1 { 7 } else { 0 };
        let a = random_monomial(&mut rng, skip);
        let b = random_monomial(&mut rng, skip);
        match i % 4 {
            0 => {
                if !exact_pair::<RationalField>(&classical, &a, &b)? {
                    return Err(format!("q = 1 mismatch for {a:?} * {b:?}"));
                }
                exact += 1;
            }
            1 => {
                if !exact_pair::<CycloField>(&cyclo, &a, &b)? {
                    return Err(format!("Q(zeta_14) mismatch for {a:?} * {b:?}"));
                }
                exact += 1;
            }
            2 => {
                let q = Complex64::from_polar(1.0, rng.gen_range(0.01..3.13));
                let ctx = ProjectionContext::numeric(DoubleField, q, 30).unwrap();
                worst = worst.max(numeric_pair(&ctx, &a, &b)?);
            }
            _ => {
                let q = mp.exp_i_pi(rng.gen_range(1..1000), 1000);
                let ctx = ProjectionContext::numeric(mp, q, 30).unwrap();
                worst = worst.max(numeric_pair(&ctx, &a, &b)?);
            }
        }
    }
    check(
        worst <= 1e-12,
        format!("10000 pairs, {exact} exact and equal, worst numeric relative error {worst:.1e}"),
    )
}

fn criterion8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let f = MpField::new(512).unwrap();
    let (mut symbols, mut zeros) = (0, 0);
    let mut worst = f64::NEG_INFINITY;
    for h in 3..=24u32 {
        let k = h as i64 - 2;
        let top = k.min(16);
        let mut set: Vec<SixJLabels> = (0..=top)
            .map(SixJLabels::symmetric)
            .filter(|l| l.is_admissible(Some(k)))
            .collect();
        let mut tries = 0;
        while set.len() < 40 + top as usize && tries < 20_000 {
            tries += 1;
            let l = SixJLabels::new(std::array::from_fn(|_| rng.gen_range(0..=top)));
            if l.is_admissible(Some(k)) {
                set.push(l);
            }
        }
        for labels in set {
            let dcr = compile_sixj(labels).map_err(|e| e.to_string())?;
            let ctx = ProjectionContext::root_of_unity(f, h, dcr.d_max()).map_err(|e| e.to_string())?;
            for m in dcr.cumulative_terms().map_err(|e| e.to_string())? {
                if vanishes_at(&m, h) {
                    let v = ctx.project(&m).map_err(|e| e.to_string())?;
                    if !f.is_zero(&v) {
                        return Err(format!("{labels:?} at h={h}: term with e_h > 0 projects to {v:?}"));
                    }
                    zeros += 1;
                }
            }
            let early = evaluate(&dcr, &ctx).map_err(|e| e.to_string())?;
            let full = evaluate_full_range(&dcr, &ctx).map_err(|e| e.to_string())?;
            if early.r != full.r {
                return Err(format!("{labels:?} at h={h}: radicands differ"));
            }
            let root = f.abs_log2(&ctx.project(dcr.root()).map_err(|e| e.to_string())?);
            let terms = term_values(&dcr, &ctx).map_err(|e| e.to_string())?;
            let mass = terms.iter().fold(f.zero(), |acc, t| f.add(&acc, &f.real(t.norm())));
            let diff = f.abs_log2(&f.sub(&early.a, &full.a));
            if diff.is_finite() {
                let e = (diff - root - f.abs_log2(&mass)) * std::f64::consts::LOG10_2;
                if e.is_nan() || e > -100.0 {
                    return Err(format!("{labels:?} at h={h}: difference 1e{e:.0} of the term mass"));
                }
                worst = worst.max(e);
            }
            symbols += 1;
        }
    }
    Ok(format!(
        "{symbols} symbols at h=3..24, worst difference 1e{worst:.0} of |root| sum|T_z|, {zeros} vanishing terms exactly zero"
    ))
}

fn criterion9() -> Outcome {
    let o = identity_checks(IdentityKind::Orthogonality, 5, 7, 256).map_err(|e| e.to_string())?;
    let p = identity_checks(IdentityKind::Pentagon, 5, 7, 256).map_err(|e| e.to_string())?;
    check(
        o <= 1e-50 && p <= 1e-50,
        format!("h=7 at 256 bits: orthogonality {o:.1e}, Biedenharn-Elliott {p:.1e}"),
    )
}

fn criterion10() -> Outcome {
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for j in (20..=120).step_by(10) {
        let dcr = compile_sixj(SixJLabels::symmetric(2 * j)).map_err(|e| e.to_string())?;
        xs.push((j as f64).ln());
        ys.push((dcr.to_json().len() as f64).ln());
    }
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let exponent = sxy / sxx;

    let labels = SixJLabels::symmetric(100);
    let reps = 200;
    let t0 = Instant::now();
    for _ in 0..reps {
        std::hint::black_box(compile_sixj(labels).unwrap());
    }
    let compile_s = t0.elapsed().as_secs_f64() / reps as f64;
    let dcr = compile_sixj(labels).unwrap();
    let points = 2000;
    let t0 = Instant::now();
    for i in 0..points {
        let q = Complex64::from_polar(1.0, 0.001 + 3.0 * i as f64 / points as f64);
        std::hint::black_box(evaluate_double(&dcr, q, dcr.d_max()).unwrap());
    }
    let point_s = t0.elapsed().as_secs_f64() / points as f64;
    let ratio = compile_s / point_s;
    let soft = if ratio >= 100.0 { "PASS" } else { "FAIL" };
    check(
        exponent <= 1.3,
        format!(
            "size ~ j^{exponent:.2} over j=20..120; soft speed check {soft}: compile {:.1} us vs {:.1} us per point ({ratio:.1}x, target 100x)",
            compile_s * 1e6,
            point_s * 1e6
        ),
    )
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion1),
        (2, criterion2),
        (3, criterion3),
        (4, criterion4),
        (5, criterion5),
        (6, criterion6),
        (7, criterion7),
        (8, criterion8),
        (9, criterion9),
        (10, criterion10),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        let t0 = Instant::now();
        let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t0.elapsed().as_secs_f64();
        match out {
            Ok(s) => println!("criterion {n}: PASS {s} [{secs:.1}s]"),
            Err(s) => {
                failed += 1;
                println!("criterion {n}: FAIL {s} [{secs:.1}s]");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
