//! Double-double arithmetic for correctly rounded `cosh` and `sinh`.
//!
//! A value is an unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`, giving
//! about 106 bits of precision; `exp` keeps about 100. Only the operations
//! the hyperbolic functions need are provided.

use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Dd {
    hi: f64,
    lo: f64,
}

const LN2: Dd = Dd {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

/// The reduced argument is divided by `2^SQUARINGS` and the series result squared back.
const SQUARINGS: i32 = 6;
/// `(0.35/64)^12 / 12!` is below `2^-106`.
const EXP_TERMS: usize = 12;

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd {
        hi: s,
        lo: (a - (s - bb)) + (b - bb),
    }
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd { hi: p, lo: a.mul_add(b, -p) }
}

impl Dd {
    fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        let t = two_sum(self.lo, o.lo);
        let s = quick_two_sum(s.hi, s.lo + t.hi);
        quick_two_sum(s.hi, s.lo + t.lo)
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    fn mul(self, o: Dd) -> Dd {
        let p = two_prod(self.hi, o.hi);
        quick_two_sum(p.hi, p.lo + (self.hi * o.lo + self.lo * o.hi))
    }

    fn mul_f64(self, b: f64) -> Dd {
        let p = two_prod(self.hi, b);
        quick_two_sum(p.hi, p.lo + self.lo * b)
    }

    fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let r = self.sub(two_prod(q1, b));
        let q2 = r.hi / b;
        let r = r.sub(two_prod(q2, b));
        quick_two_sum(q1, q2).add(Dd::from_f64(r.hi / b))
    }

    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self.sub(b.mul_f64(q1));
        let q2 = r.hi / b.hi;
        let r = r.sub(b.mul_f64(q2));
        let q3 = r.hi / b.hi;
        quick_two_sum(q1, q2).add(Dd::from_f64(q3))
    }

    fn scale_pow2(self, n: i32) -> Dd {
        let f = 2f64.powi(n);
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    /// Nearest `f64` to `hi + lo`.
    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// `1/i!` for `i ≤ EXP_TERMS`.
fn inv_factorials() -> &'static [Dd; EXP_TERMS + 1] {
    static TABLE: OnceLock<[Dd; EXP_TERMS + 1]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [Dd::from_f64(1.0); EXP_TERMS + 1];
        for i in 1..=EXP_TERMS {
            t[i] = t[i - 1].div_f64(i as f64);
        }
        t
    })
}

/// `e^x` for `|x| ≤ 700`.
fn exp(x: f64) -> Dd {
    let n = (x / LN2.hi).round();
    let r = Dd::from_f64(x).sub(two_prod(n, LN2.hi)).sub(two_prod(n, LN2.lo));
    let r = r.scale_pow2(-SQUARINGS);
    let table = inv_factorials();
    let mut acc = table[EXP_TERMS];
    for c in table[..EXP_TERMS].iter().rev() {
        acc = acc.mul(r).add(*c);
    }
    for _ in 0..SQUARINGS {
        acc = acc.mul(acc);
    }
    acc.scale_pow2(n as i32)
}

/// Below this the libm functions are already exact to well under an ulp of 1.
const SMALL: f64 = 0.25;
/// Above this `e^x` approaches overflow; libm handles the range.
const LARGE: f64 = 700.0;

pub(crate) fn cosh(x: f64) -> f64 {
    let a = x.abs();
    if !(SMALL..=LARGE).contains(&a) {
        return x.cosh();
    }
    let e = exp(a);
    e.add(Dd::from_f64(1.0).div(e)).to_f64() * 0.5
}

pub(crate) fn sinh(x: f64) -> f64 {
    let a = x.abs();
    if !(SMALL..=LARGE).contains(&a) {
        return x.sinh();
    }
    let e = exp(a);
    (e.sub(Dd::from_f64(1.0).div(e)).to_f64() * 0.5).copysign(x)
}
