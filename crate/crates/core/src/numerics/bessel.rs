//! Integer-order Bessel functions `J_n` and `K_n` on the positive axis.

use crate::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const BIG: f64 = 1e250;

fn check_arg(function: &'static str, x: f64) -> Result<()> {
    if x.is_finite() && x >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain { function, re: x, im: 0.0 })
    }
}

/// Power series, accurate for small `x`.
fn j_series(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = 1.0;
    for k in 1..=n {
        term *= half / k as f64;
    }
    let t = -half * half;
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= t / (k * (k + n as f64));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            return sum;
        }
    }
}

/// `(J_{n-1}(x), J_n(x))` by Miller's backward recurrence, `n ≥ 1`, `x ≥ 1`.
fn j_miller_pair(n: u32, x: f64) -> (f64, f64) {
    let top = libm::fmax(n as f64, libm::ceil(x));
    let mut m = (top + 25.0 + libm::ceil(libm::sqrt(160.0 * top))) as u32;
    m += m & 1;
    let two_over_x = 2.0 / x;
    let (mut bjp, mut bj) = (0.0, 1.0);
    let (mut even_sum, mut jn, mut jnm1) = (0.0, 0.0, 0.0);
    for j in (1..=m).rev() {
        let bjm = j as f64 * two_over_x * bj - bjp;
        bjp = bj;
        bj = bjm;
        if bj.abs() > BIG {
            bj /= BIG;
            bjp /= BIG;
            even_sum /= BIG;
            jn /= BIG;
            jnm1 /= BIG;
        }
        let order = j - 1;
        if order > 0 && order % 2 == 0 {
            even_sum += bj;
        }
        if order == n {
            jn = bj;
        } else if order + 1 == n {
            jnm1 = bj;
        }
    }
    let norm = 2.0 * even_sum + bj;
    (jnm1 / norm, jn / norm)
}

/// Bessel function of the first kind `J_n(x)`, `x ≥ 0`.
pub fn bessel_j(n: u32, x: f64) -> Result<f64> {
    check_arg("bessel_j", x)?;
    if x < 1.0 {
        return Ok(j_series(n, x));
    }
    Ok(if n == 0 {
        j_miller_pair(1, x).0
    } else {
        j_miller_pair(n, x).1
    })
}

/// `(J_{n-1}(x), J_n(x))` for `n ≥ 1`.
pub fn bessel_j_pair(n: u32, x: f64) -> Result<(f64, f64)> {
    check_arg("bessel_j", x)?;
    if n == 0 {
        return Err(Error::invalid("n", "pair helper needs n ≥ 1"));
    }
    if x < 1.0 {
        return Ok((j_series(n - 1, x), j_series(n, x)));
    }
    Ok(j_miller_pair(n, x))
}

/// `(K_0(x), K_1(x))` for `x > 0`.
fn k01(x: f64) -> (f64, f64) {
    if x <= 2.0 {
        let t = 0.25 * x * x;
        let ln_half = libm::log(0.5 * x);
        // running pieces: t^k/(k!)², harmonic number H_k
        let mut p = 1.0;
        let mut harmonic = 0.0;
        let mut i0 = 1.0;
        let mut s0 = 0.0;
        let mut i1 = 0.5 * x;
        // k = 0 term of the K1 sum: ψ(1)+ψ(2) = 1 - 2γ
        let mut s1 = 1.0 - 2.0 * EULER_GAMMA;
        let mut k = 0.0;
        loop {
            k += 1.0;
            p *= t / (k * k);
            harmonic += 1.0 / k;
            let q = p / (k + 1.0); // t^k / (k! (k+1)!)
            let psi_sum = 2.0 * harmonic + 1.0 / (k + 1.0) - 2.0 * EULER_GAMMA;
            i0 += p;
            s0 += harmonic * p;
            i1 += 0.5 * x * q;
            s1 += psi_sum * q;
            if p <= 1e-18 * i0 {
                break;
            }
        }
        let k0 = -(ln_half + EULER_GAMMA) * i0 + s0;
        let k1 = 1.0 / x + ln_half * i1 - 0.25 * x * s1;
        (k0, k1)
    } else {
        // Steed's continued fraction for K_0 and its ratio to K_1
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let (mut q1, mut q2) = (0.0, 1.0);
        let a1 = 0.25;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        for i in 2..10_000 {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < 1e-17 {
                break;
            }
        }
        h *= a1;
        let k0 = libm::sqrt(core::f64::consts::PI / (2.0 * x)) * libm::exp(-x) / s;
        let k1 = k0 * (x + 0.5 - h) / x;
        (k0, k1)
    }
}

fn check_k(x: f64) -> Result<()> {
    if x == 0.0 {
        return Err(Error::Singularity { function: "bessel_k", x });
    }
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::Domain { function: "bessel_k", re: x, im: 0.0 });
    }
    Ok(())
}

/// `(K_{n-1}(x), K_n(x))` for `n ≥ 1`, `x > 0`, by upward recurrence.
pub fn bessel_k_pair(n: u32, x: f64) -> Result<(f64, f64)> {
    check_k(x)?;
    if n == 0 {
        return Err(Error::invalid("n", "pair helper needs n ≥ 1"));
    }
    let (mut km, mut k) = k01(x);
    for j in 1..n {
        let kp = km + 2.0 * j as f64 / x * k;
        km = k;
        k = kp;
    }
    Ok((km, k))
}

/// Modified Bessel function of the second kind `K_n(x)`, `x > 0`.
pub fn bessel_k(n: u32, x: f64) -> Result<f64> {
    check_k(x)?;
    if n == 0 {
        return Ok(k01(x).0);
    }
    Ok(bessel_k_pair(n, x)?.1)
}
