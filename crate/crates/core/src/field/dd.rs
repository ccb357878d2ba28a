//! Complex double-double arithmetic for `x^n - 1` near cancellation.

use num_complex::Complex64;

#[derive(Clone, Copy, Debug)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = two_sum(s, e);
        Dd { hi, lo }
    }

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = two_sum(p, e);
        Dd { hi, lo }
    }
}

#[derive(Clone, Copy, Debug)]
struct Cdd {
    re: Dd,
    im: Dd,
}

impl Cdd {
    fn mul(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re.mul(o.re).add(self.im.mul(o.im).neg()),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }
}

/// `(q^2)^n - 1` for `n = 0..=n_max`, with `q^2` and its powers carried
/// in double-double so each entry keeps full double accuracy when `q^(2n)`
/// is close to 1.
pub(crate) fn q2_powers_minus_one(q: Complex64, n_max: usize) -> Vec<Complex64> {
    let q = Cdd {
        re: Dd::new(q.re),
        im: Dd::new(q.im),
    };
    let x = q.mul(q);
    let mut xn = Cdd {
        re: Dd::new(1.0),
        im: Dd::new(0.0),
    };
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n > 0 {
            xn = xn.mul(x);
        }
        let re = xn.re.add(Dd::new(-1.0));
        out.push(Complex64::new(re.hi + re.lo, xn.im.hi + xn.im.lo));
    }
    out
}
