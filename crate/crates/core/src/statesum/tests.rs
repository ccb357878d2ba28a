use super::*;
use crate::compiler::triangle_admissible;
use crate::projection::evaluate_double_at_level;

fn tri(text: &str) -> Triangulation {
    Triangulation::from_json(text).unwrap()
}

#[test]
fn one_tet_is_one_scaled_amplitude() {
    let t = tri(bundled::ONE_TET);
    let k = 3;
    let cache = DcrCache::new();
    let r = tv_partition(&t, k, TvPrecision::Double, TvOptions::default(), &cache).unwrap();
    assert_eq!(r.colorings, 1);
    let h = k + 2;
    let qi = |n: f64| (n * std::f64::consts::PI / h as f64).sin() / (std::f64::consts::PI / h as f64).sin();
    let a: f64 = (0..=k).map(|t| qi(t as f64 + 1.0).powi(2)).sum();
    let colors = [1, 1, 2, 1, 1, 2];
    let w: f64 = colors.iter().map(|&t| qi(t as f64 + 1.0)).product();
    let six = evaluate_double_at_level(&compile_sixj(SixJLabels::new(colors)).unwrap(), h).unwrap();
    // i^(1+1+2+1+1+2) = 1
    let expect = a.powi(-4) * w * six.re;
    assert!((r.value.re - expect).abs() < 1e-14 * expect.abs());
    assert!((r.normalization - a).abs() < 1e-12 * a);
}

#[test]
fn inadmissible_boundary_gives_no_colorings() {
    let mut t = tri(bundled::ONE_TET);
    t.set_boundary("23", 3).unwrap();
    assert_eq!(admissible_colorings(&t, 4).unwrap().count(), 0);
    let r = tv_partition_direct(&t, 4, TvPrecision::Double, TvOptions::default()).unwrap();
    assert_eq!(r.value, Complex64::new(0.0, 0.0));
}

#[test]
fn enumeration_matches_brute_force() {
    let t = tri(bundled::FOUR_TET);
    let interior = t.interior_edges();
    assert_eq!(interior.len(), 4);
    for k in 0..=4u32 {
        let got: Vec<Vec<i64>> = admissible_colorings(&t, k).unwrap().collect();
        let mut want = Vec::new();
        let n = (k + 1) as usize;
        for code in 0..n.pow(4) {
            let mut c: Vec<i64> = vec![0; t.edges.len()];
            let base = tri(bundled::ONE_TET);
            for (i, e) in base.edges.iter().enumerate() {
                let j = t.edges.iter().position(|x| x == e).unwrap();
                c[j] = [1, 1, 2, 1, 1, 2][i];
            }
            let mut m = code;
            for &e in &interior {
                c[e] = (m % n) as i64;
                m /= n;
            }
            let ok = t.tetrahedra_indices().all(|tet| {
                crate::compiler::TRIADS
                    .iter()
                    .all(|tr| triangle_admissible(c[tet[tr[0]]], c[tet[tr[1]]], c[tet[tr[2]]], Some(k as i64)))
            });
            if ok {
                want.push(c);
            }
        }
        let mut got_sorted = got.clone();
        got_sorted.sort();
        want.sort();
        assert_eq!(got_sorted, want, "k = {k}");
    }
}

#[test]
fn level_zero_allows_only_zero_interior() {
    let mut t = tri(bundled::FOUR_TET);
    for e in ["12", "13", "23", "34", "24", "14"] {
        t.set_boundary(e, 0).unwrap();
    }
    let all: Vec<Vec<i64>> = admissible_colorings(&t, 0).unwrap().collect();
    assert_eq!(all, vec![vec![0; 10]]);
}

#[test]
fn cache_is_transparent() {
    let t = tri(bundled::TWO_TET);
    for prec in [TvPrecision::Double, TvPrecision::Extended(256)] {
        let cache = DcrCache::new();
        let cold = tv_partition(&t, 4, prec, TvOptions::default(), &cache).unwrap();
        let warm = tv_partition(&t, 4, prec, TvOptions::default(), &cache).unwrap();
        let direct = tv_partition_direct(&t, 4, prec, TvOptions::default()).unwrap();
        assert_eq!(cold.value, warm.value);
        assert!(warm.stats.hits > cold.stats.hits);
        assert_eq!(warm.stats.compiles, cold.stats.compiles);
        assert!((cold.value - direct.value).norm() <= 1e-12 * direct.value.norm());
        assert!(cold.colorings > 1);
    }
}

#[test]
fn congruent_tetrahedra_compile_once() {
    // four copies of the same tetrahedron with permuted labels
    let text = r#"{
        "num_vertices": 4,
        "edges": ["a","b","c","d","e","f"],
        "tetrahedra": [["a","b","c","d","e","f"], ["b","a","c","e","d","f"],
                       ["c","b","a","f","e","d"], ["d","e","c","a","b","f"]],
        "boundary": {"a": 2, "b": 2, "c": 2, "d": 2, "e": 2, "f": 2}
    }"#;
    let t = tri(text);
    let cache = DcrCache::new();
    tv_partition(&t, 4, TvPrecision::Double, TvOptions::default(), &cache).unwrap();
    let s = cache.stats();
    assert_eq!(s.compiles, 1);
    assert_eq!(s.hits, 3);
}

#[test]
fn unweighted_sum_drops_edge_factors() {
    let t = tri(bundled::ONE_TET);
    let a = tv_partition_direct(&t, 3, TvPrecision::Double, TvOptions::default()).unwrap();
    let b = tv_partition_direct(
        &t,
        3,
        TvPrecision::Double,
        TvOptions {
            edge_weights: false,
            tetra_phase: true,
        },
    )
    .unwrap();
    let qi = |n: f64| (n * std::f64::consts::PI / 5.0).sin() / (std::f64::consts::PI / 5.0).sin();
    let w: f64 = [1, 1, 2, 1, 1, 2].iter().map(|&t| qi(t as f64 + 1.0)).product();
    assert!((a.value.re / b.value.re - w).abs() < 1e-12 * w);
}

#[test]
fn malformed_files_are_rejected() {
    let dup = r#"{"num_vertices": 1, "edges": ["a","a"], "tetrahedra": []}"#;
    assert!(Triangulation::from_json(dup).is_err());
    let unknown = r#"{"num_vertices": 1, "edges": ["a"], "tetrahedra": [["a","a","a","a","a","x"]]}"#;
    assert!(Triangulation::from_json(unknown).is_err());
    let repeat = r#"{"num_vertices": 1, "edges": ["a","b","c","d","e","f"],
                     "tetrahedra": [["a","a","c","d","e","f"]]}"#;
    assert!(Triangulation::from_json(repeat).is_err());
    assert!(Triangulation::from_json("{").is_err());
}

/// Experimental: the 1-4 move under the weighted normalization.
#[test]
fn pachner_one_four_invariance() {
    let one = tri(bundled::ONE_TET);
    let four = tri(bundled::FOUR_TET);
    for k in 1..=4 {
        let p = TvPrecision::Extended(256);
        let a = tv_partition_direct(&one, k, p, TvOptions::default()).unwrap();
        let b = tv_partition_direct(&four, k, p, TvOptions::default()).unwrap();
        assert!(
            (a.value - b.value).norm() <= 1e-8 * a.value.norm(),
            "k = {k}: {} vs {}",
            a.value,
            b.value
        );
    }
}

#[test]
fn literal_sum_differs_under_the_move() {
    let one = tri(bundled::ONE_TET);
    let four = tri(bundled::FOUR_TET);
    let p = TvPrecision::Extended(128);
    let a = tv_partition_direct(&one, 3, p, TvOptions::literal()).unwrap();
    let b = tv_partition_direct(&four, 3, p, TvOptions::literal()).unwrap();
    assert!((a.value - b.value).norm() > 1e-6 * a.value.norm());
}
