use core::f64::consts::PI;

use num_complex::Complex64;

/// `(z, erf z)` pairs computed with 60-digit arithmetic.
pub fn erf_table() -> Vec<(Complex64, Complex64)> {
    let text = include_str!("../data/erf_reference.csv");
    text.lines()
        .skip(1)
        .map(|line| {
            let v: Vec<f64> = line.split(',').map(|s| s.trim().parse().unwrap()).collect();
            (Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3]))
        })
        .collect()
}

/// `J_n(x) = (1/2π) ∫ cos(nθ − x sin θ) dθ`; the trapezoid rule over a full
/// period converges geometrically.
pub fn j_oracle(n: u32, x: f64) -> f64 {
    let m = 256 + 4 * x.ceil() as usize;
    let h = 2.0 * PI / m as f64;
    (0..m)
        .map(|i| {
            let t = i as f64 * h;
            (n as f64 * t - x * t.sin()).cos()
        })
        .sum::<f64>()
        / m as f64
}

/// `K_n(x) = ∫_0^∞ exp(−x cosh t) cosh(nt) dt`, trapezoid rule.
pub fn k_oracle(n: u32, x: f64) -> f64 {
    let h = 0.01;
    let mut sum = 0.5 * (-x).exp();
    let mut i = 1;
    loop {
        let t = i as f64 * h;
        let term = (-x * t.cosh() + n as f64 * t).exp() * 0.5 * (1.0 + (-2.0 * n as f64 * t).exp());
        sum += term;
        if term < 1e-300 || term < 1e-18 * sum {
            break;
        }
        i += 1;
    }
    sum * h
}
