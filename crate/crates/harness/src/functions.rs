//! Closed-form test functions with derivatives up to order 3.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use split_spline::{Error, FunctionOracle};

pub const MAX_DERIVATIVE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TestFunction {
    F1,
    F2,
    F3,
    G1,
    G2,
    G3,
}

impl TestFunction {
    pub const ALL: [TestFunction; 6] =
        [TestFunction::F1, TestFunction::F2, TestFunction::F3, TestFunction::G1, TestFunction::G2, TestFunction::G3];

    pub fn id(&self) -> &'static str {
        match self {
            TestFunction::F1 => "f1",
            TestFunction::F2 => "f2",
            TestFunction::F3 => "f3",
            TestFunction::G1 => "g1",
            TestFunction::G2 => "g2",
            TestFunction::G3 => "g3",
        }
    }

    /// `j`-th derivative at `x`.
    pub fn eval(&self, x: f64, j: usize) -> Result<f64, Error> {
        if j > MAX_DERIVATIVE {
            return Err(Error::Capability(format!("{} provides derivatives up to order {MAX_DERIVATIVE}", self.id())));
        }
        Ok(match self {
            TestFunction::F1 => f1(x, j),
            TestFunction::F2 => f2(x, j),
            TestFunction::F3 => f3(x, j),
            TestFunction::G1 => g1(x, j),
            TestFunction::G2 => g2(x, j),
            TestFunction::G3 => g3(x, j),
        })
    }

    pub fn value(&self, x: f64) -> f64 {
        self.eval(x, 0).expect("order 0 always available")
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        TestFunction::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown test function '{s}'")))
    }
}

impl FunctionOracle<f64> for TestFunction {
    fn eval(&self, x: f64) -> f64 {
        self.value(x)
    }

    fn deriv(&self, x: f64, j: usize) -> Option<f64> {
        TestFunction::eval(self, x, j).ok()
    }
}

/// `j`-th derivative of `exp(q(x))` for a quadratic `q = q2 x^2 + q1 x + q0`.
fn exp_quadratic(x: f64, q2: f64, q1: f64, q0: f64, j: usize) -> f64 {
    let e = (q2 * x * x + q1 * x + q0).exp();
    let d1 = 2.0 * q2 * x + q1;
    let d2 = 2.0 * q2;
    e * match j {
        0 => 1.0,
        1 => d1,
        2 => d2 + d1 * d1,
        _ => 3.0 * d1 * d2 + d1 * d1 * d1,
    }
}

fn f1(x: f64, j: usize) -> f64 {
    // 3/4 e^{-2(9x-2)^2} - 1/5 e^{-(9x-7)^2-(9x-4)^2}
    //   + 1/2 e^{-(9x-7)^2 - (9x-3)^2/4} + 3/4 e^{(-9x-1)/10 - (9x+1)^2/49}
    0.75 * exp_quadratic(x, -162.0, 72.0, -8.0, j) - 0.2 * exp_quadratic(x, -162.0, 198.0, -65.0, j)
        + 0.5 * exp_quadratic(x, -101.25, 139.5, -51.25, j)
        + 0.75 * exp_quadratic(x, -81.0 / 49.0, -0.9 - 18.0 / 49.0, -0.1 - 1.0 / 49.0, j)
}

fn f2(x: f64, j: usize) -> f64 {
    // 1/2 x cos^4(u), u = 4(x^2 + x - 1)
    let u = 4.0 * (x * x + x - 1.0);
    let (du, ddu) = (8.0 * x + 4.0, 8.0);
    let (s, c) = u.sin_cos();
    let h0 = c.powi(4);
    let h1 = -4.0 * c.powi(3) * s;
    let h2 = 12.0 * c * c * s * s - 4.0 * c.powi(4);
    let h3 = -24.0 * c * s.powi(3) + 40.0 * c.powi(3) * s;
    let g0 = h0;
    let g1 = h1 * du;
    let g2 = h2 * du * du + h1 * ddu;
    let g3 = h3 * du.powi(3) + 3.0 * h2 * du * ddu;
    0.5 * match j {
        0 => x * g0,
        1 => g0 + x * g1,
        2 => 2.0 * g1 + x * g2,
        _ => 3.0 * g2 + x * g3,
    }
}

fn f3(x: f64, j: usize) -> f64 {
    // x^4 e^{-3x^2} + 1/(x^6 + 1)
    let a = [x.powi(4), 4.0 * x.powi(3), 12.0 * x * x, 24.0 * x];
    let e = (-3.0 * x * x).exp();
    let b = [e, -6.0 * x * e, (36.0 * x * x - 6.0) * e, (108.0 * x - 216.0 * x.powi(3)) * e];
    let w = 1.0 + x.powi(6);
    let (w1, w2, w3) = (6.0 * x.powi(5), 30.0 * x.powi(4), 120.0 * x.powi(3));
    match j {
        0 => a[0] * b[0] + 1.0 / w,
        1 => a[1] * b[0] + a[0] * b[1] - w1 / (w * w),
        2 => a[2] * b[0] + 2.0 * a[1] * b[1] + a[0] * b[2] + 2.0 * w1 * w1 / w.powi(3) - w2 / (w * w),
        _ => {
            a[3] * b[0] + 3.0 * a[2] * b[1] + 3.0 * a[1] * b[2] + a[0] * b[3] - 6.0 * w1.powi(3) / w.powi(4)
                + 6.0 * w1 * w2 / w.powi(3)
                - w3 / (w * w)
        }
    }
}

fn g1(x: f64, j: usize) -> f64 {
    match j % 4 {
        0 => x.sin(),
        1 => x.cos(),
        2 => -x.sin(),
        _ => -x.cos(),
    }
}

fn g2(x: f64, j: usize) -> f64 {
    // -1/2 (e^{x^3/2} - 1) cos(3 pi x)
    let e = (0.5 * x.powi(3)).exp();
    let big_e = [
        e - 1.0,
        1.5 * x * x * e,
        (3.0 * x + 2.25 * x.powi(4)) * e,
        (3.0 + 13.5 * x.powi(3) + 3.375 * x.powi(6)) * e,
    ];
    let k = 3.0 * PI;
    let (s, c) = (k * x).sin_cos();
    let cc = [c, -k * s, -k * k * c, k.powi(3) * s];
    let binom = [1.0, 3.0, 3.0, 1.0];
    let sum: f64 = match j {
        0 => big_e[0] * cc[0],
        1 => big_e[1] * cc[0] + big_e[0] * cc[1],
        2 => big_e[2] * cc[0] + 2.0 * big_e[1] * cc[1] + big_e[0] * cc[2],
        _ => (0..=3).map(|m| binom[m] * big_e[3 - m] * cc[m]).sum(),
    };
    -0.5 * sum
}

fn g3(x: f64, j: usize) -> f64 {
    // e^{-3x} sin(pi x / 2)
    let w = PI / 2.0;
    let a = (-3.0 * x).exp();
    let binom = [[1.0, 0.0, 0.0, 0.0], [1.0, 1.0, 0.0, 0.0], [1.0, 2.0, 1.0, 0.0], [1.0, 3.0, 3.0, 1.0]];
    (0..=j)
        .map(|m| {
            let da = (-3.0f64).powi((j - m) as i32) * a;
            let ds = w.powi(m as i32) * (w * x + m as f64 * PI / 2.0).sin();
            binom[j][m] * da * ds
        })
        .sum()
}
