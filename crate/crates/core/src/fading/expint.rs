use crate::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Exponential integral `E1(x) = ∫_x^∞ e^(-q)/q dq` for `x > 0`.
///
/// Power series about zero for `x <= 1`, modified-Lentz continued fraction
/// for `x > 1`; relative error is well below 1e-10 across the positive axis.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "E1 is evaluated for positive finite x only, got {x}"
        )));
    }
    if x <= 1.0 {
        // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^(k+1) x^k / (k * k!)
        let mut sum = 0.0f64;
        let mut term = 1.0f64; // x^k / k! at k=0
        for k in 1..=60 {
            term *= -x / k as f64;
            let contrib = -term / k as f64;
            sum += contrib;
            if contrib.abs() < 1e-18 * sum.abs().max(1e-30) {
                break;
            }
        }
        Ok(-EULER_GAMMA - x.ln() + sum)
    } else {
        // Continued fraction e^(-x) / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
        // evaluated by the modified Lentz algorithm.
        const FPMIN: f64 = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / FPMIN;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..=200u32 {
            let a = -((i as f64) * (i as f64));
            b += 2.0;
            d = a.mul_add(d, b);
            if d.abs() < FPMIN {
                d = FPMIN;
            }
            c = b + a / c;
            if c.abs() < FPMIN {
                c = FPMIN;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        Ok(h * (-x).exp())
    }
}
