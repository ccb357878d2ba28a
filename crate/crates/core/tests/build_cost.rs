use cyclodcr::compiler::compile_sixj;
use cyclodcr::exponent::{op_counter, reset_op_counter};
use cyclodcr::SixJLabels;

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn compile_ops_grow_near_linearly() {
    // warm the q-factorial memo so every count covers compilation only
    compile_sixj(SixJLabels::symmetric(400)).unwrap();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for j in (20..=200).step_by(20) {
        reset_op_counter();
        compile_sixj(SixJLabels::symmetric(2 * j)).unwrap();
        xs.push((j as f64).ln());
        ys.push((op_counter() as f64).ln());
    }
    let s = slope(&xs, &ys);
    assert!((0.9..=1.4).contains(&s), "slope {s}");
}

#[test]
fn serialized_size_is_subquadratic() {
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for j in (20..=120).step_by(10) {
        let dcr = compile_sixj(SixJLabels::symmetric(2 * j)).unwrap();
        xs.push((j as f64).ln());
        ys.push((dcr.to_json().len() as f64).ln());
    }
    let s = slope(&xs, &ys);
    assert!(s <= 1.3, "exponent {s}");
}
