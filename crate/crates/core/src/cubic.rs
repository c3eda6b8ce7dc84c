//! Largest real root of a monic cubic, by the trigonometric/Cardano closed
//! form followed by Newton polish against a caller-supplied evaluation. The
//! polish step lets callers phrase the polynomial in whatever factored form
//! is numerically stable for their coefficients.

/// Largest real root of x^3 + a2 x^2 + a1 x + a0.
pub(crate) fn largest_real_root(a2: f64, a1: f64, a0: f64) -> f64 {
    // depress: x = y - a2/3
    let shift = a2 / 3.0;
    let p = a1 - a2 * a2 / 3.0;
    let q = 2.0 * a2.powi(3) / 27.0 - a2 * a1 / 3.0 + a0;

    let half_q = q / 2.0;
    let third_p = p / 3.0;
    let disc = half_q * half_q + third_p * third_p * third_p;

    let y = if disc > 0.0 {
        // one real root
        let s = -half_q + disc.sqrt();
        let t = -half_q - disc.sqrt();
        s.cbrt() + t.cbrt()
    } else {
        // three real roots; the k = 0 branch is the largest
        let r = (-third_p).sqrt();
        if r == 0.0 {
            0.0
        } else {
            let cos_arg = (-half_q / (r * r * r)).clamp(-1.0, 1.0);
            2.0 * r * (cos_arg.acos() / 3.0).cos()
        }
    };
    y - shift
}

/// A few Newton steps of `f`/`df` from `x0`; stops once the update stalls.
pub(crate) fn newton_polish(
    x0: f64,
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    steps: usize,
) -> f64 {
    let mut x = x0;
    for _ in 0..steps {
        let d = df(x);
        if d == 0.0 {
            break;
        }
        let next = x - f(x) / d;
        if !next.is_finite() || (next - x).abs() <= f64::EPSILON * x.abs() {
            x = if next.is_finite() { next } else { x };
            break;
        }
        x = next;
    }
    x
}
