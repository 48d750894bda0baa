//! Built-in test functions.

use padecheb::{Interval, Rect};
use serde::Serialize;

#[derive(Debug, Clone, Copy)]
pub enum Func {
    One(fn(f64) -> f64),
    Two(fn(f64, f64) -> f64),
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct FunctionSpec {
    pub name: &'static str,
    pub arity: usize,
    pub description: &'static str,
    #[serde(skip)]
    pub func: Func,
}

impl FunctionSpec {
    /// `[-1, 1]` or `[-1, 1]^2`.
    pub fn default_domain(&self) -> Vec<f64> {
        match self.arity {
            1 => vec![-1.0, 1.0],
            _ => vec![-1.0, 1.0, -1.0, 1.0],
        }
    }
}

/// Cubic, quadratic and square-root pieces with a jump at -0.4 and a
/// derivative singularity at 0.4.
pub fn jump_root_1d(t: f64) -> f64 {
    if t < -0.4 {
        t * t * t
    } else if t < 0.4 {
        t * t + 1.0
    } else {
        1.16 - (t - 0.4).sqrt()
    }
}

pub fn sign4xy(x: f64, y: f64) -> f64 {
    let v = 4.0 * x * y;
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Shock-tube-like profile in x, constant in y.
pub fn sod_like_2d(x: f64, _y: f64) -> f64 {
    if x < -0.4 {
        1.0
    } else if x < 0.0 {
        x * x - 0.85 * x + 0.5
    } else if x < 0.4 {
        0.5
    } else {
        0.0
    }
}

fn exp1d(t: f64) -> f64 {
    t.exp()
}

fn runge1d(t: f64) -> f64 {
    1.0 / (1.0 + 25.0 * t * t)
}

fn const1d(_t: f64) -> f64 {
    1.0
}

fn const2d(_x: f64, _y: f64) -> f64 {
    1.0
}

pub fn registry() -> Vec<FunctionSpec> {
    vec![
        FunctionSpec {
            name: "jump-root-1d",
            arity: 1,
            description: "t^3 on [-1,-0.4), t^2+1 on [-0.4,0.4), 1.16-sqrt(t-0.4) on [0.4,1]",
            func: Func::One(jump_root_1d),
        },
        FunctionSpec {
            name: "exp1d",
            arity: 1,
            description: "exp(t)",
            func: Func::One(exp1d),
        },
        FunctionSpec {
            name: "runge1d",
            arity: 1,
            description: "1/(1+25t^2)",
            func: Func::One(runge1d),
        },
        FunctionSpec {
            name: "const1d",
            arity: 1,
            description: "1",
            func: Func::One(const1d),
        },
        FunctionSpec {
            name: "sign4xy",
            arity: 2,
            description: "sign(4xy)",
            func: Func::Two(sign4xy),
        },
        FunctionSpec {
            name: "sod-like-2d",
            arity: 2,
            description: "1 | x^2-17x/20+1/2 | 1/2 | 0 over x in [-1,-0.4), [-0.4,0), [0,0.4), [0.4,1]; constant in y",
            func: Func::Two(sod_like_2d),
        },
        FunctionSpec {
            name: "const2d",
            arity: 2,
            description: "1",
            func: Func::Two(const2d),
        },
    ]
}

pub fn lookup(name: &str) -> Option<FunctionSpec> {
    registry().into_iter().find(|f| f.name == name)
}

/// `[a, b]` as an interval.
pub fn interval_from(v: &[f64]) -> Option<Interval> {
    match v {
        [a, b] => Interval::new(*a, *b).ok(),
        _ => None,
    }
}

/// `[ax, bx, ay, by]` as a rectangle.
pub fn rect_from(v: &[f64]) -> Option<Rect> {
    match v {
        [ax, bx, ay, by] => Some(Rect::new(Interval::new(*ax, *bx).ok()?, Interval::new(*ay, *by).ok()?)),
        _ => None,
    }
}
