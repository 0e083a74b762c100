//! WFG1–WFG9 built from the toolkit's transformation and shape primitives.
//!
//! Variable `i` (1-based) ranges over `[0, 2i]`. The first `k` variables are
//! position parameters, the remaining `l` are distance parameters. Every
//! intermediate value is clamped to `[0, 1]` after each transformation.

use std::f64::consts::{FRAC_PI_2, PI};

const EPS: f64 = 1e-12;

/// Clamps floating-point drift back into `[0, 1]`.
fn to_unit(v: f64) -> f64 {
    debug_assert!(
        v > -EPS - 1e-9 && v < 1.0 + EPS + 1e-9,
        "WFG intermediate {v} far outside [0, 1]"
    );
    v.clamp(0.0, 1.0)
}

// --- transformations -------------------------------------------------------

fn s_linear(y: f64, a: f64) -> f64 {
    to_unit((y - a).abs() / ((a - y).floor() + a).abs())
}

fn s_decept(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let t1 = (y - a + b).floor() * (1.0 - c + (a - b) / b) / (a - b);
    let t2 = (a + b - y).floor() * (1.0 - c + (1.0 - a - b) / b) / (1.0 - a - b);
    to_unit(1.0 + ((y - a).abs() - b) * (t1 + t2 + 1.0 / b))
}

fn s_multi(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let t1 = (y - c).abs() / (2.0 * ((c - y).floor() + c));
    let t2 = (4.0 * a + 2.0) * PI * (0.5 - t1);
    to_unit((1.0 + t2.cos() + 4.0 * b * t1 * t1) / (b + 2.0))
}

fn b_flat(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let t1 = (y - b).floor().min(0.0) * a * (b - y) / b;
    let t2 = (c - y).floor().min(0.0) * (1.0 - a) * (y - c) / (1.0 - c);
    to_unit(a + t1 - t2)
}

fn b_poly(y: f64, alpha: f64) -> f64 {
    to_unit(y.powf(alpha))
}

fn b_param(y: f64, u: f64, a: f64, b: f64, c: f64) -> f64 {
    let v = a - (1.0 - 2.0 * u) * ((0.5 - u).floor() + a).abs();
    to_unit(y.powf(b + (c - b) * v))
}

fn r_sum(y: &[f64], w: &[f64]) -> f64 {
    let num: f64 = y.iter().zip(w).map(|(a, b)| a * b).sum();
    let den: f64 = w.iter().sum();
    to_unit(num / den)
}

fn r_sum_unit(y: &[f64]) -> f64 {
    to_unit(y.iter().sum::<f64>() / y.len() as f64)
}

fn r_nonsep(y: &[f64], a: usize) -> f64 {
    let n = y.len();
    let mut num = 0.0;
    for j in 0..n {
        num += y[j];
        for k in 0..a.saturating_sub(1) {
            num += (y[j] - y[(j + k + 1) % n]).abs();
        }
    }
    let half = a.div_ceil(2) as f64;
    let af = a as f64;
    let den = n as f64 * half * (1.0 + 2.0 * af - 2.0 * half) / af;
    to_unit(num / den)
}

// --- shapes ----------------------------------------------------------------

#[derive(Clone, Copy)]
enum Shape {
    Convex,
    Concave,
    Linear,
}

/// Shape value of objective `m` (1-based) for position vector `x` of length M−1.
fn shape(kind: Shape, x: &[f64], m: usize, big_m: usize) -> f64 {
    let mut r = 1.0;
    let upto = big_m - m;
    match kind {
        Shape::Linear => {
            for v in &x[..upto] {
                r *= v;
            }
            if m > 1 {
                r *= 1.0 - x[upto];
            }
        }
        Shape::Convex => {
            for v in &x[..upto] {
                r *= 1.0 - (v * FRAC_PI_2).cos();
            }
            if m > 1 {
                r *= 1.0 - (x[upto] * FRAC_PI_2).sin();
            }
        }
        Shape::Concave => {
            for v in &x[..upto] {
                r *= (v * FRAC_PI_2).sin();
            }
            if m > 1 {
                r *= (x[upto] * FRAC_PI_2).cos();
            }
        }
    }
    to_unit(r)
}

fn mixed(x1: f64, a: f64, alpha: f64) -> f64 {
    let t = 2.0 * a * PI;
    to_unit((1.0 - x1 - (t * x1 + FRAC_PI_2).cos() / t).powf(alpha))
}

fn disc(x1: f64, a: f64, alpha: f64, beta: f64) -> f64 {
    let c = (a * x1.powf(beta) * PI).cos();
    to_unit(1.0 - x1.powf(alpha) * c * c)
}

// --- problem assembly ------------------------------------------------------

/// Evaluates WFG`index` with `k` position parameters and `m` objectives.
pub fn evaluate(index: u8, z: &[f64], k: usize, m: usize) -> Vec<f64> {
    let n = z.len();
    let mut y: Vec<f64> = z
        .iter()
        .enumerate()
        .map(|(i, v)| to_unit(v / (2.0 * (i + 1) as f64)))
        .collect();

    let t = match index {
        1 => wfg1(&mut y, k, m),
        2 | 3 => wfg2_3(&mut y, k, m),
        4 => {
            for v in y.iter_mut() {
                *v = s_multi(*v, 30.0, 10.0, 0.35);
            }
            reduce_sum(&y, k, m)
        }
        5 => {
            for v in y.iter_mut() {
                *v = s_decept(*v, 0.35, 0.001, 0.05);
            }
            reduce_sum(&y, k, m)
        }
        6 => {
            shift_distance(&mut y, k);
            reduce_nonsep(&y, k, m)
        }
        7 => {
            let orig = y.clone();
            for i in 0..k {
                let u = r_sum_unit(&orig[i + 1..]);
                y[i] = b_param(orig[i], u, 0.98 / 49.98, 0.02, 50.0);
            }
            shift_distance(&mut y, k);
            reduce_sum(&y, k, m)
        }
        8 => {
            let orig = y.clone();
            for i in k..n {
                let u = r_sum_unit(&orig[..i]);
                y[i] = b_param(orig[i], u, 0.98 / 49.98, 0.02, 50.0);
            }
            shift_distance(&mut y, k);
            reduce_sum(&y, k, m)
        }
        9 => {
            let orig = y.clone();
            for i in 0..n - 1 {
                let u = r_sum_unit(&orig[i + 1..]);
                y[i] = b_param(orig[i], u, 0.98 / 49.98, 0.02, 50.0);
            }
            for (i, v) in y.iter_mut().enumerate() {
                *v = if i < k {
                    s_decept(*v, 0.35, 0.001, 0.05)
                } else {
                    s_multi(*v, 30.0, 95.0, 0.35)
                };
            }
            reduce_nonsep(&y, k, m)
        }
        _ => unreachable!("validated by BenchmarkSpec"),
    };

    // Underlying position vector x and distance scalar x_M.
    let x_m = t[m - 1];
    let degenerate = index == 3;
    let x: Vec<f64> = t[..m - 1]
        .iter()
        .enumerate()
        .map(|(i, ti)| {
            let a = if degenerate && i > 0 { 0.0 } else { 1.0 };
            x_m.max(a) * (ti - 0.5) + 0.5
        })
        .collect();

    (1..=m)
        .map(|obj| {
            let h = match index {
                1 if obj == m => mixed(x[0], 5.0, 1.0),
                1 | 2 if obj < m => shape(Shape::Convex, &x, obj, m),
                2 => disc(x[0], 5.0, 1.0, 1.0),
                3 => shape(Shape::Linear, &x, obj, m),
                _ => shape(Shape::Concave, &x, obj, m),
            };
            x_m + 2.0 * obj as f64 * h
        })
        .collect()
}

fn shift_distance(y: &mut [f64], k: usize) {
    for v in y[k..].iter_mut() {
        *v = s_linear(*v, 0.35);
    }
}

fn group_len(k: usize, m: usize) -> usize {
    k / (m - 1)
}

fn reduce_sum(y: &[f64], k: usize, m: usize) -> Vec<f64> {
    let g = group_len(k, m);
    let mut t: Vec<f64> = (0..m - 1).map(|i| r_sum_unit(&y[i * g..(i + 1) * g])).collect();
    t.push(r_sum_unit(&y[k..]));
    t
}

fn reduce_nonsep(y: &[f64], k: usize, m: usize) -> Vec<f64> {
    let g = group_len(k, m);
    let mut t: Vec<f64> = (0..m - 1)
        .map(|i| r_nonsep(&y[i * g..(i + 1) * g], g))
        .collect();
    t.push(r_nonsep(&y[k..], y.len() - k));
    t
}

fn wfg1(y: &mut [f64], k: usize, m: usize) -> Vec<f64> {
    let n = y.len();
    shift_distance(y, k);
    for v in y[k..].iter_mut() {
        *v = b_flat(*v, 0.8, 0.75, 0.85);
    }
    for v in y.iter_mut() {
        *v = b_poly(*v, 0.02);
    }
    let w: Vec<f64> = (1..=n).map(|i| 2.0 * i as f64).collect();
    let g = group_len(k, m);
    let mut t: Vec<f64> = (0..m - 1)
        .map(|i| r_sum(&y[i * g..(i + 1) * g], &w[i * g..(i + 1) * g]))
        .collect();
    t.push(r_sum(&y[k..], &w[k..]));
    t
}

fn wfg2_3(y: &mut [f64], k: usize, m: usize) -> Vec<f64> {
    shift_distance(y, k);
    let l = y.len() - k;
    let mut reduced: Vec<f64> = y[..k].to_vec();
    for i in 0..l / 2 {
        let a = k + 2 * i;
        reduced.push(r_nonsep(&y[a..a + 2], 2));
    }
    reduce_sum(&reduced, k, m)
}
