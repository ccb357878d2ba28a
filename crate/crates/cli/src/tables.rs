use rayon::prelude::*;
use serde_json::{json, Value};

use cyclodcr::compiler::compile_sixj;
use cyclodcr::diag::reference::{TABLE1, TABLE3, TABLE3_LEVEL, TABLE4};
use cyclodcr::diag::{diagnostics_sixj, lse_eval_sixj, Precision};
use cyclodcr::field::MpField;
use cyclodcr::projection::{evaluate_amplitude, evaluate_double_at_level, ProjectionContext};
use cyclodcr::SixJLabels;

use crate::output::{csv_line, pretty, rel_dev, sci};
use crate::{CliResult, Format, TableArgs, Which};

const TRUTH_BITS: u32 = 2048;
const DIAG_BITS: u32 = 512;

fn render(format: Format, header: &[&str], rows: Vec<Vec<Value>>) -> String {
    match format {
        Format::Json => {
            let objs: Vec<Value> = rows
                .into_iter()
                .map(|r| Value::Object(header.iter().map(|h| h.to_string()).zip(r).collect()))
                .collect();
            pretty(&Value::Array(objs))
        }
        Format::Csv | Format::Text => {
            let mut s = csv_line(header.iter());
            for r in rows {
                s += &csv_line(r.iter().map(|v| match v {
                    Value::Number(n) => n.as_f64().map_or(n.to_string(), |x| {
                        if x.fract() == 0.0 && x.abs() < 1e9 {
                            format!("{x}")
                        } else {
                            sci(x)
                        }
                    }),
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                }));
            }
            s
        }
    }
}

fn num(x: f64) -> Value {
    json!(x)
}

pub fn table(a: &TableArgs) -> CliResult<String> {
    match a.which {
        Which::T1 => {
            let rows: Vec<_> = TABLE1.iter().filter(|r| a.full || r.0 <= 100).collect();
            let out: Vec<CliResult<Vec<Value>>> = rows
                .par_iter()
                .map(|&&(j, k, max_t, abs_s, loss)| {
                    let d = diagnostics_sixj(SixJLabels::symmetric(2 * j), k + 2, DIAG_BITS)?;
                    Ok(vec![
                        json!(j),
                        json!(k),
                        num(d.max_term),
                        num(d.value.abs()),
                        num(d.delta_loss),
                        num(max_t),
                        num(abs_s),
                        num(loss),
                        num(rel_dev(d.max_term, max_t)),
                        num(rel_dev(d.value.abs(), abs_s)),
                        num(d.delta_loss - loss),
                    ])
                })
                .collect();
            let header = [
                "j",
                "k",
                "max_term",
                "abs_sum",
                "delta_loss",
                "table1_max_term",
                "table1_abs_sum",
                "table1_delta_loss",
                "rel_dev_max_term",
                "rel_dev_abs_sum",
                "diff_delta_loss",
            ];
            Ok(render(a.format, &header, out.into_iter().collect::<CliResult<_>>()?))
        }
        Which::T3 => {
            let h = TABLE3_LEVEL + 2;
            let out: Vec<CliResult<Vec<Value>>> = TABLE3
                .par_iter()
                .map(|r| {
                    let labels = SixJLabels::symmetric(2 * r.j);
                    let dcr = compile_sixj(labels)?;
                    let lse = lse_eval_sixj(labels, h, Precision::Double)?;
                    let dbl = evaluate_double_at_level(&dcr, h)?.re;
                    let ctx = ProjectionContext::at_level(MpField::new(TRUTH_BITS)?, h, dcr.d_max())?;
                    let truth = evaluate_amplitude(&dcr, &ctx)?.re.to_f64();
                    Ok(vec![
                        json!(r.j),
                        json!(TABLE3_LEVEL),
                        num(lse),
                        num(dbl),
                        num(truth),
                        num(r.eager_lse),
                        num(r.dcr_f64),
                        num(r.truth),
                        num(rel_dev(truth, r.truth)),
                        num(rel_dev(dbl, truth)),
                        num(rel_dev(lse, truth)),
                    ])
                })
                .collect();
            let header = [
                "j",
                "k",
                "lse_f64",
                "dcr_f64",
                "dcr_mp_2048",
                "table3_lse",
                "table3_dcr_f64",
                "table3_truth",
                "rel_dev_truth",
                "rel_err_dcr_f64",
                "rel_err_lse_f64",
            ];
            Ok(render(a.format, &header, out.into_iter().collect::<CliResult<_>>()?))
        }
        Which::T4 => {
            let rows: Vec<_> = TABLE4.iter().filter(|r| a.full || r.j <= 200).collect();
            let out: Vec<CliResult<Vec<Value>>> = rows
                .par_iter()
                .map(|r| {
                    let d = diagnostics_sixj(SixJLabels::symmetric(2 * r.j), r.k + 2, DIAG_BITS)?;
                    Ok(vec![
                        json!(r.j),
                        json!(r.k),
                        num(d.log10_kappa),
                        num(d.gamma_eager),
                        num(d.gamma_dcr),
                        num(d.gamma_eager - d.gamma_dcr),
                        num(r.log10_kappa),
                        num(r.gamma_eager),
                        num(r.gamma_dcr),
                        num(r.delta_gamma),
                        num(d.log10_kappa - r.log10_kappa),
                        num(rel_dev(d.gamma_eager, r.gamma_eager)),
                        num(rel_dev(d.gamma_dcr, r.gamma_dcr)),
                    ])
                })
                .collect();
            let header = [
                "j",
                "k",
                "log10_kappa",
                "gamma_eager",
                "gamma_dcr",
                "delta_gamma",
                "table4_log10_kappa",
                "table4_gamma_eager",
                "table4_gamma_dcr",
                "table4_delta_gamma",
                "diff_log10_kappa",
                "rel_dev_gamma_eager",
                "rel_dev_gamma_dcr",
            ];
            Ok(render(a.format, &header, out.into_iter().collect::<CliResult<_>>()?))
        }
    }
}
