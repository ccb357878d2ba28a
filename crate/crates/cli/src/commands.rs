use std::collections::BTreeSet;
use std::time::Instant;

use num_complex::Complex64;
use rug::Float;
use serde_json::json;

use cyclodcr::compiler::{compile_count, compile_sixj, Dcr};
use cyclodcr::diag::{diagnostics_sixj, lse_eval_sixj, Precision};
use cyclodcr::field::{CycloField, DoubleField, Field, MpComplex, MpField, ScaledField};
use cyclodcr::projection::{
    amplitude, classical_project, cyclotomic_coeffs, evaluate, evaluate_amplitude, evaluate_double,
    evaluate_double_at_level, exact_field_eval, AmplitudeValue, ProjectionContext,
};
use cyclodcr::statesum::{tv_partition, DcrCache, Triangulation, TvOptions, TvPrecision};

use crate::output::{csv_line, pretty, sci};
use crate::{CliError, CliResult, CompileArgs, DiagnoseArgs, Engine, EvalArgs, Format, SweepArgs, TvArgs};

const DEFAULT_BITS: u32 = 512;

fn digits_for(bits: u32) -> usize {
    ((bits as f64 * std::f64::consts::LOG10_2) as usize)
        .saturating_sub(2)
        .max(17)
}

fn check_bits(engine: Engine, bits: Option<u32>) -> CliResult<u32> {
    match (engine.uses_bits(), bits) {
        (false, Some(_)) => Err(CliError::Input(format!("--bits does not apply to engine {engine}"))),
        (_, Some(b)) if b < 53 => Err(CliError::Input(format!("--bits {b} is below 53"))),
        (_, b) => Ok(b.unwrap_or(DEFAULT_BITS)),
    }
}

fn level_h(level: Option<u32>, engine: Engine) -> CliResult<u32> {
    let k = level.ok_or_else(|| CliError::Input(format!("engine {engine} needs --level")))?;
    Ok(k + 2)
}

pub fn compile(a: &CompileArgs) -> CliResult<String> {
    let dcr = compile_sixj(a.spins.labels()?)?;
    Ok(match a.format {
        Format::Json => format!("{}\n", dcr.to_json_pretty()),
        Format::Text | Format::Csv => format!(
            "z = {}..{}\nratios = {}\nd_max = {}\nstored exponent entries = {}\nbase = {:?}\nroot = {:?}\nrad = {:?}\n",
            dcr.z_min(),
            dcr.z_max(),
            dcr.ratios().len(),
            dcr.d_max(),
            dcr.stored_entries(),
            dcr.base(),
            dcr.root(),
            dcr.rad()
        ),
    })
}

/// A computed value with optional `(a, r)` parts, all as decimal strings.
struct Value {
    re: String,
    im: String,
    parts: Option<[String; 4]>,
}

fn mp_value(v: &MpComplex, digits: usize) -> (String, String) {
    (
        v.re.to_string_radix(10, Some(digits)),
        v.im.to_string_radix(10, Some(digits)),
    )
}

/// `(a, r)` in double precision, through the extended-exponent field when
/// plain doubles leave their range.
fn double_parts(dcr: &Dcr, h: u32) -> CliResult<[String; 4]> {
    let fmt = |z: Complex64| [format!("{:.16e}", z.re), format!("{:.16e}", z.im)];
    let plain = ProjectionContext::at_level(DoubleField, h, dcr.d_max()).and_then(|ctx| evaluate(dcr, &ctx));
    let (a, r) = match plain {
        Ok(v) if DoubleField.is_finite(&v.a) && DoubleField.is_finite(&v.r) => (v.a, v.r),
        _ => {
            let ctx = ProjectionContext::at_level(ScaledField, h, dcr.d_max())?;
            let v = evaluate(dcr, &ctx)?;
            (v.a.to_c64(), v.r.to_c64())
        }
    };
    let [ar, ai] = fmt(a);
    let [rr, ri] = fmt(r);
    Ok([ar, ai, rr, ri])
}

fn eval_value(a: &EvalArgs) -> CliResult<Value> {
    let labels = a.spins.labels()?;
    let bits = check_bits(a.engine, a.bits)?;
    if a.parts && matches!(a.engine, Engine::LseF64 | Engine::LseMp) {
        return Err(CliError::Input(format!("--parts does not apply to engine {}", a.engine)));
    }
    if a.engine != Engine::Classical {
        let h = level_h(a.level, a.engine)?;
        labels.check(Some(h as i64 - 2))?;
    }
    match a.engine {
        Engine::DcrF64 => {
            let dcr = compile_sixj(labels)?;
            let h = level_h(a.level, a.engine)?;
            let v = evaluate_double_at_level(&dcr, h)?;
            let parts = if a.parts { Some(double_parts(&dcr, h)?) } else { None };
            Ok(Value {
                re: format!("{:.16e}", v.re),
                im: format!("{:.16e}", v.im),
                parts,
            })
        }
        Engine::DcrMp => {
            let dcr = compile_sixj(labels)?;
            let f = MpField::new(bits)?;
            let ctx = ProjectionContext::at_level(f, level_h(a.level, a.engine)?, dcr.d_max())?;
            let v = evaluate(&dcr, &ctx)?;
            Ok(with_parts(&dcr, &ctx, &v, digits_for(bits)))
        }
        Engine::LseF64 | Engine::LseMp => {
            let p = if a.engine == Engine::LseF64 {
                Precision::Double
            } else {
                Precision::Extended(bits)
            };
            let v = lse_eval_sixj(labels, level_h(a.level, a.engine)?, p)?;
            Ok(Value {
                re: format!("{v:.16e}"),
                im: "0".into(),
                parts: None,
            })
        }
        Engine::Exact => {
            let h = level_h(a.level, a.engine)?;
            let dcr = compile_sixj(labels)?;
            let exact = exact_field_eval(&dcr, h)?;
            let cf = CycloField::new(h)?;
            let f = MpField::new(bits)?;
            let ctx = ProjectionContext::at_level(f, h, 1)?;
            let v = AmplitudeValue {
                a: cf.embed(&exact.a, &f),
                r: cf.embed(&exact.r, &f),
            };
            Ok(with_parts(&dcr, &ctx, &v, digits_for(bits)))
        }
        Engine::Classical => {
            let dcr = compile_sixj(labels)?;
            let v = classical_project(&dcr)?;
            let f = MpField::new(bits)?;
            let val = Float::with_val(bits, f.from_rational(&v.r).re.sqrt_ref()) * f.from_rational(&v.a).re;
            Ok(Value {
                re: val.to_string_radix(10, Some(digits_for(bits).min(40))),
                im: "0".into(),
                parts: Some([v.a.to_string(), "0".into(), v.r.to_string(), "0".into()]),
            })
        }
    }
}

fn with_parts(dcr: &Dcr, ctx: &ProjectionContext<MpField>, v: &AmplitudeValue<MpComplex>, digits: usize) -> Value {
    let (re, im) = mp_value(&amplitude(dcr, ctx, v), digits);
    let (ar, ai) = mp_value(&v.a, digits);
    let (rr, ri) = mp_value(&v.r, digits);
    Value {
        re,
        im,
        parts: Some([ar, ai, rr, ri]),
    }
}

pub fn eval(a: &EvalArgs) -> CliResult<String> {
    let v = eval_value(a)?;
    let engine = a.engine.to_string();
    let parts = if a.parts { v.parts.clone() } else { None };
    Ok(match a.format {
        Format::Text => {
            let mut s = format!("{} + {}i\n", v.re, v.im);
            if let Some([ar, ai, rr, ri]) = &parts {
                s += &format!("a = {ar} + {ai}i\nr = {rr} + {ri}i\n");
            }
            s
        }
        Format::Csv => {
            let mut s = csv_line(["engine", "spins", "level", "re", "im", "a_re", "a_im", "r_re", "r_im"]);
            let p = parts.unwrap_or_default();
            s += &csv_line([
                engine,
                a.spins.labels()?.to_string().replace(',', " "),
                a.level.map_or(String::new(), |k| k.to_string()),
                v.re,
                v.im,
                p[0].clone(),
                p[1].clone(),
                p[2].clone(),
                p[3].clone(),
            ]);
            s
        }
        Format::Json => {
            let mut j = json!({
                "engine": engine,
                "spins": a.spins.labels()?.twice_spins(),
                "level": a.level,
                "re": v.re,
                "im": v.im,
            });
            if let Some([ar, ai, rr, ri]) = parts {
                j["a"] = json!({"re": ar, "im": ai});
                j["r"] = json!({"re": rr, "im": ri});
            }
            pretty(&j)
        }
    })
}

/// Cyclotomic indices that occur with a negative exponent in a monomial
/// the evaluation projects.
fn pole_candidates(dcr: &Dcr) -> CliResult<BTreeSet<u32>> {
    let mut out = BTreeSet::new();
    let mut add = |m: &cyclodcr::CycloMonomial| {
        out.extend(m.exps.iter().filter(|&(_, e)| e < 0).map(|(d, _)| d));
    };
    for m in dcr.cumulative_terms()? {
        add(&m);
    }
    add(dcr.root());
    add(dcr.rad());
    Ok(out)
}

fn phi_abs(d: u32, q2: Complex64) -> f64 {
    let c = cyclotomic_coeffs(d);
    c.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &x| acc * q2 + x as f64)
        .norm()
}

pub fn sweep(a: &SweepArgs) -> CliResult<String> {
    if !matches!(a.engine, Engine::DcrF64 | Engine::DcrMp) {
        return Err(CliError::Input("sweep supports the dcr-f64 and dcr-mp engines".into()));
    }
    if a.count == 0 {
        return Err(CliError::Input("--count must be positive".into()));
    }
    let bits = check_bits(a.engine, a.bits)?;
    let labels = a.spins.labels()?;
    labels.check(None)?;

    let compiles_before = compile_count();
    let t0 = Instant::now();
    let dcr = compile_sixj(labels)?;
    let compile_time = t0.elapsed();
    let poles = pole_candidates(&dcr)?;

    let step = if a.count > 1 {
        (a.stop - a.start) / (a.count - 1) as f64
    } else {
        0.0
    };
    let mp = MpField::new(bits)?;
    let mut rows = Vec::with_capacity(a.count);
    let t1 = Instant::now();
    for i in 0..a.count {
        let t = a.start + step * i as f64;
        let q = if a.unit_circle {
            Complex64::from_polar(1.0, std::f64::consts::PI * t)
        } else {
            Complex64::new(t, 0.0)
        };
        let pole = poles.iter().copied().find(|&d| phi_abs(d, q * q) < 1e-10);
        let res: CliResult<(String, String)> = match pole {
            Some(d) => Err(CliError::Input(format!("pole at Phi_{d}"))),
            None => match a.engine {
                Engine::DcrF64 => evaluate_double(&dcr, q, dcr.d_max())
                    .map(|v| (format!("{:.16e}", v.re), format!("{:.16e}", v.im)))
                    .map_err(Into::into),
                _ => {
                    let qm = if a.unit_circle {
                        let th = Float::with_val(bits, rug::float::Constant::Pi) * mp.float(t);
                        MpComplex {
                            re: Float::with_val(bits, th.cos_ref()),
                            im: th.sin(),
                        }
                    } else {
                        mp.real(mp.float(t))
                    };
                    ProjectionContext::numeric(mp, qm, dcr.d_max())
                        .and_then(|ctx| evaluate_amplitude(&dcr, &ctx))
                        .map(|v| mp_value(&v, digits_for(bits)))
                        .map_err(Into::into)
                }
            },
        };
        rows.push((t, q, res));
    }
    let per_point = t1.elapsed().as_secs_f64() / a.count as f64;
    let compiles = compile_count() - compiles_before;

    Ok(match a.format {
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(t, q, r)| match r {
                    Ok((re, im)) => json!({"t": t, "q_re": q.re, "q_im": q.im, "re": re, "im": im}),
                    Err(CliError::Input(m) | CliError::Internal(m)) => {
                        json!({"t": t, "q_re": q.re, "q_im": q.im, "error": m})
                    }
                })
                .collect();
            pretty(&json!({
                "rows": rows,
                "compiles": compiles,
                "compile_seconds": compile_time.as_secs_f64(),
                "seconds_per_point": per_point,
            }))
        }
        Format::Csv | Format::Text => {
            let mut s = csv_line(["t", "q_re", "q_im", "re", "im", "status"]);
            for (t, q, r) in &rows {
                s += &match r {
                    Ok((re, im)) => {
                        csv_line([t.to_string(), sci(q.re), sci(q.im), re.clone(), im.clone(), "OK".into()])
                    }
                    Err(CliError::Input(m) | CliError::Internal(m)) => csv_line([
                        t.to_string(),
                        sci(q.re),
                        sci(q.im),
                        String::new(),
                        String::new(),
                        format!("ERROR {m}"),
                    ]),
                };
            }
            s += &format!(
                "# compiles={compiles} points={} compile_us={:.3} per_point_us={:.3}\n",
                a.count,
                compile_time.as_secs_f64() * 1e6,
                per_point * 1e6
            );
            s
        }
    })
}

pub fn diagnose(a: &DiagnoseArgs) -> CliResult<String> {
    let d = diagnostics_sixj(a.spins.labels()?, a.level + 2, a.bits)?;
    Ok(match a.format {
        Format::Json => pretty(&serde_json::to_value(&d).expect("diagnostics serialize")),
        Format::Csv => {
            let mut s = csv_line([
                "kappa",
                "log10_kappa",
                "delta_loss",
                "gamma_eager",
                "gamma_dcr",
                "max_term",
                "abs_sum",
                "value",
                "terms",
                "unit_roundoff",
            ]);
            s += &csv_line([
                sci(d.kappa),
                sci(d.log10_kappa),
                sci(d.delta_loss),
                sci(d.gamma_eager),
                sci(d.gamma_dcr),
                sci(d.max_term),
                sci(d.abs_sum),
                sci(d.value),
                d.terms.to_string(),
                sci(d.unit_roundoff),
            ]);
            s
        }
        Format::Text => format!(
            "value        {:.10e}\nterms        {}\nmax |T_z|    {:.6e}\nsum |T_z|    {:.6e}\nkappa        {:.6e}\nlog10 kappa  {:.4}\ndelta_loss   {:.4}\ngamma_eager  {:.2}\ngamma_dcr    {:.2}\nunit roundoff {:.3e}\n",
            d.value,
            d.terms,
            d.max_term,
            d.abs_sum,
            d.kappa,
            d.log10_kappa,
            d.delta_loss,
            d.gamma_eager,
            d.gamma_dcr,
            d.unit_roundoff
        ),
    })
}

pub fn tv(a: &TvArgs) -> CliResult<String> {
    let tri = Triangulation::from_path(&a.file).map_err(|e| CliError::Internal(e.to_string()))?;
    let precision = match a.bits {
        Some(b) => TvPrecision::Extended(b),
        None => TvPrecision::Double,
    };
    let options = if a.literal {
        TvOptions::literal()
    } else {
        TvOptions::default()
    };
    let cache = DcrCache::new();
    let r = tv_partition(&tri, a.level, precision, options, &cache)?;
    Ok(match a.format {
        Format::Json => pretty(&json!({
            "re": r.decimal.0,
            "im": r.decimal.1,
            "colorings": r.colorings,
            "normalization": r.normalization,
            "cache": r.stats,
        })),
        Format::Csv => {
            let mut s = csv_line(["re", "im", "colorings", "normalization", "hits", "misses", "compiles"]);
            s += &csv_line([
                r.decimal.0,
                r.decimal.1,
                r.colorings.to_string(),
                sci(r.normalization),
                r.stats.hits.to_string(),
                r.stats.misses.to_string(),
                r.stats.compiles.to_string(),
            ]);
            s
        }
        Format::Text => format!(
            "{} + {}i\ncolorings {}\nnormalization {:.10e}\ncache hits {} misses {} compiles {} entries {}\n",
            r.decimal.0,
            r.decimal.1,
            r.colorings,
            r.normalization,
            r.stats.hits,
            r.stats.misses,
            r.stats.compiles,
            r.stats.entries
        ),
    })
}
