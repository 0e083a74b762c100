//! DTLZ1–DTLZ7. Decision vectors are `m − 1` position variables followed by
//! `k` distance variables, all in `[0, 1]`.

use std::f64::consts::{FRAC_PI_2, PI};

/// Number of distance variables per problem.
pub fn distance_count(index: u8) -> usize {
    match index {
        1 => 5,
        7 => 20,
        _ => 10,
    }
}

pub fn evaluate(index: u8, x: &[f64], m: usize) -> Vec<f64> {
    let (pos, dist) = x.split_at(m - 1);
    match index {
        1 => {
            let g = g_rastrigin(dist);
            linear_front(pos, m, 0.5 * (1.0 + g))
        }
        2 => {
            let g = g_sphere(dist);
            spherical_front(&angles(pos), m, 1.0 + g)
        }
        3 => {
            let g = g_rastrigin(dist);
            spherical_front(&angles(pos), m, 1.0 + g)
        }
        4 => {
            let g = g_sphere(dist);
            let theta: Vec<f64> = pos.iter().map(|v| v.powi(100) * FRAC_PI_2).collect();
            spherical_front(&theta, m, 1.0 + g)
        }
        5 | 6 => {
            let g = if index == 5 {
                g_sphere(dist)
            } else {
                dist.iter().map(|v| v.powf(0.1)).sum()
            };
            let theta = degenerate_angles(pos, g);
            spherical_front(&theta, m, 1.0 + g)
        }
        7 => dtlz7(pos, dist, m),
        _ => unreachable!("validated by BenchmarkSpec"),
    }
}

fn g_sphere(dist: &[f64]) -> f64 {
    dist.iter().map(|v| (v - 0.5).powi(2)).sum()
}

fn g_rastrigin(dist: &[f64]) -> f64 {
    let s: f64 = dist
        .iter()
        .map(|v| (v - 0.5).powi(2) - (20.0 * PI * (v - 0.5)).cos())
        .sum();
    100.0 * (dist.len() as f64 + s)
}

fn angles(pos: &[f64]) -> Vec<f64> {
    pos.iter().map(|v| v * FRAC_PI_2).collect()
}

fn degenerate_angles(pos: &[f64], g: f64) -> Vec<f64> {
    let mut theta = Vec::with_capacity(pos.len());
    for (j, v) in pos.iter().enumerate() {
        if j == 0 {
            theta.push(v * FRAC_PI_2);
        } else {
            theta.push(PI / (4.0 * (1.0 + g)) * (1.0 + 2.0 * g * v));
        }
    }
    theta
}

fn linear_front(pos: &[f64], m: usize, scale: f64) -> Vec<f64> {
    (0..m)
        .map(|i| {
            let mut f = scale;
            for v in &pos[..m - 1 - i] {
                f *= v;
            }
            if i > 0 {
                f *= 1.0 - pos[m - 1 - i];
            }
            f
        })
        .collect()
}

fn spherical_front(theta: &[f64], m: usize, scale: f64) -> Vec<f64> {
    (0..m)
        .map(|i| {
            let mut f = scale;
            for t in &theta[..m - 1 - i] {
                f *= t.cos();
            }
            if i > 0 {
                f *= theta[m - 1 - i].sin();
            }
            f
        })
        .collect()
}

fn dtlz7(pos: &[f64], dist: &[f64], m: usize) -> Vec<f64> {
    let g = 1.0 + 9.0 / dist.len() as f64 * dist.iter().sum::<f64>();
    let mut f: Vec<f64> = pos.to_vec();
    let h = m as f64
        - pos
            .iter()
            .map(|fi| fi / (1.0 + g) * (1.0 + (3.0 * PI * fi).sin()))
            .sum::<f64>();
    f.push((1.0 + g) * h);
    f
}
