//! Bessel function of the first kind, order zero.

/// `J₀(x)` by Miller's backward recurrence normalised with
/// `1 = J₀ + 2·Σ J₂ₖ`. Accurate to a few ulp of `max(|J₀|, 1e-16)` on the
/// ranges this crate uses (`|x| ≲ 100`).
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 1e-8 {
        return 1.0 - 0.25 * x * x;
    }
    // Start far enough above x that the recurrence has settled onto the
    // minimal (J) solution by the time it reaches low orders.
    let mut start = (x + 25.0 + 12.0 * x.sqrt()) as usize;
    start += start % 2;

    let two_over_x = 2.0 / x;
    let mut next = 0.0; // J_{n+1}
    let mut cur = 1e-300; // J_n, arbitrary scale
    let mut even_sum = 0.0;
    for n in (1..=start).rev() {
        let prev = n as f64 * two_over_x * cur - next;
        next = cur;
        cur = prev;
        // cur now holds J_{n-1}
        if (n - 1) % 2 == 0 && n - 1 > 0 {
            even_sum += cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            even_sum *= 1e-250;
        }
    }
    cur / (cur + 2.0 * even_sum)
}

/// First positive zero of `J₀`.
pub const J0_FIRST_ZERO: f64 = 2.404_825_557_695_773;
