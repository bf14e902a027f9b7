//! Real roots of barycentric numerators/denominators on the negative half-line.
//!
//! The roots of interest spread over many decades, so they are bracketed on a
//! logarithmic grid and then bisected geometrically, which keeps full relative
//! accuracy for roots of tiny magnitude (an eigenvalue solver would only resolve
//! them to absolute accuracy).

/// Finds exactly `count` sign changes of `g` on `[-hi, -lo]`, returned in
/// decreasing order (closest to zero first). Returns `None` if a different
/// number of roots is found even after grid refinement.
pub(crate) fn negative_roots(
    g: impl Fn(f64) -> f64,
    dg: impl Fn(f64) -> f64,
    count: usize,
    lo: f64,
    hi: f64,
) -> Option<Vec<f64>> {
    debug_assert!(lo > 0.0 && hi > lo);
    let decades = (hi / lo).log10();
    for per_decade in [64usize, 512, 4096] {
        let steps = (decades * per_decade as f64).ceil() as usize;
        let ratio = (hi / lo).powf(1.0 / steps as f64);
        let mut roots = Vec::with_capacity(count);
        let mut a = lo;
        let mut ga = g(-a);
        for i in 1..=steps {
            let b = if i == steps { hi } else { lo * ratio.powi(i as i32) };
            let gb = g(-b);
            if ga == 0.0 {
                roots.push(-a);
            } else if ga.signum() != gb.signum() && gb != 0.0 {
                roots.push(polish(&g, &dg, a, b));
            }
            a = b;
            ga = gb;
        }
        if roots.len() == count {
            return Some(roots);
        }
    }
    None
}

/// Root of `g(-t)` bracketed by `t ∈ [a, b]`, `0 < a < b`.
fn polish(g: &impl Fn(f64) -> f64, dg: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let ga = g(-a);
    for _ in 0..200 {
        let m = (a * b).sqrt();
        if m <= a || m >= b || (b - a) <= 4.0 * f64::EPSILON * b {
            break;
        }
        let gm = g(-m);
        if gm == 0.0 {
            return -m;
        }
        if gm.signum() == ga.signum() {
            a = m;
        } else {
            b = m;
        }
    }
    // one Newton step from the midpoint, kept only if it stays in the bracket
    let x = -0.5 * (a + b);
    let d = dg(x);
    if d != 0.0 && d.is_finite() {
        let y = x - g(x) / d;
        if y <= -a && y >= -b {
            return y;
        }
    }
    x
}
