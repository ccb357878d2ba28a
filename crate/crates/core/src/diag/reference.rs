//! Published reference numbers used by the table commands and acceptance
//! tests. Spins are given as `j`; the twice-spin label is `2 j`.

/// Table 1: `(j, k, max |T_z|, |S|, delta_loss)`.
pub const TABLE1: [(i64, u32, f64, f64, f64); 5] = [
    (50, 200, 6.03e3, 2.19e-3, 6.4),
    (100, 400, 2.96e10, 7.80e-4, 13.6),
    (200, 800, 2.82e24, 2.77e-4, 28.0),
    (300, 1200, 4.74e38, 1.51e-4, 42.5),
    (400, 1600, 1.01e53, 9.80e-5, 57.0),
];

/// Table 3 row: symmetric 6j at level 500.
#[derive(Clone, Copy, Debug)]
pub struct Table3Row {
    pub j: i64,
    pub eager_lse: f64,
    pub dcr_f64: f64,
    pub truth: f64,
}

/// Level of every Table 3 row.
pub const TABLE3_LEVEL: u32 = 500;

/// Table 3.
pub const TABLE3: [Table3Row; 5] = [
    Table3Row {
        j: 30,
        eager_lse: -1.0930e-3,
        dcr_f64: -1.0930e-3,
        truth: -1.0930e-3,
    },
    Table3Row {
        j: 50,
        eager_lse: 9.1082e-4,
        dcr_f64: 9.1082e-4,
        truth: 9.1082e-4,
    },
    Table3Row {
        j: 70,
        eager_lse: -7.6406e-4,
        dcr_f64: -7.6286e-4,
        truth: -7.6283e-4,
    },
    Table3Row {
        j: 90,
        eager_lse: 3.5642e-4,
        dcr_f64: -6.6327e-4,
        truth: -6.4428e-4,
    },
    Table3Row {
        j: 110,
        eager_lse: -9.6881e-1,
        dcr_f64: 1.5083e-3,
        truth: 2.8290e-4,
    },
];

/// Table 4 row: `k = 4 j`.
#[derive(Clone, Copy, Debug)]
pub struct Table4Row {
    pub j: i64,
    pub k: u32,
    pub log10_kappa: f64,
    pub gamma_eager: f64,
    pub gamma_dcr: f64,
    pub delta_gamma: f64,
}

/// Table 4.
pub const TABLE4: [Table4Row; 6] = [
    Table4Row {
        j: 10,
        k: 40,
        log10_kappa: 1.27,
        gamma_eager: 61.1,
        gamma_dcr: 19.0,
        delta_gamma: 42.1,
    },
    Table4Row {
        j: 50,
        k: 200,
        log10_kappa: 7.10,
        gamma_eager: 560.1,
        gamma_dcr: 104.5,
        delta_gamma: 455.6,
    },
    Table4Row {
        j: 100,
        k: 400,
        log10_kappa: 14.39,
        gamma_eager: 1352.7,
        gamma_dcr: 212.5,
        delta_gamma: 1140.2,
    },
    Table4Row {
        j: 200,
        k: 800,
        log10_kappa: 28.97,
        gamma_eager: 3177.3,
        gamma_dcr: 429.1,
        delta_gamma: 2748.2,
    },
    Table4Row {
        j: 400,
        k: 1600,
        log10_kappa: 58.12,
        gamma_eager: 7307.1,
        gamma_dcr: 862.8,
        delta_gamma: 6444.3,
    },
    Table4Row {
        j: 500,
        k: 2000,
        log10_kappa: 72.70,
        gamma_eager: 9518.5,
        gamma_dcr: 1079.8,
        delta_gamma: 8438.8,
    },
];

/// Table 5, milliseconds at `j = 50`: `(build, projection)`.
pub const TABLE5_J50_MS: (f64, f64) = (0.0209, 0.0007);
