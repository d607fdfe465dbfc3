//! Quadrature helpers on uniform node grids.
//!
//! Cumulative profiles use the composite trapezoid rule (second order, the
//! same order as the difference schemes). One-shot definite integrals that
//! feed tight identity checks use composite Simpson with a 3/8 block when
//! the interval count is odd, which keeps the rule O(h^4) throughout.

/// Cumulative trapezoid integral of `values` over `grid`.
///
/// Returns `out` with `out[0] = 0` and `out[i] = ∫_{grid[0]}^{grid[i]}`.
pub fn cumulative_trapezoid(grid: &[f64], values: &[f64]) -> Vec<f64> {
    assert_eq!(grid.len(), values.len());
    let mut out = Vec::with_capacity(grid.len());
    let mut acc = 0.0;
    out.push(0.0);
    for i in 1..grid.len() {
        let h = grid[i] - grid[i - 1];
        acc += 0.5 * h * (values[i] + values[i - 1]);
        out.push(acc);
    }
    out
}

/// Definite integral of nodal `values` over the uniform `grid` segment
/// `[grid[i0], grid[i1]]` by composite Simpson (Simpson 3/8 on the last
/// three intervals when the count is odd).
pub fn simpson_nodes(grid: &[f64], values: &[f64], i0: usize, i1: usize) -> f64 {
    assert!(i1 >= i0 && i1 < grid.len());
    let n = i1 - i0;
    if n == 0 {
        return 0.0;
    }
    let h = grid[i0 + 1] - grid[i0];
    if n == 1 {
        return 0.5 * h * (values[i0] + values[i1]);
    }
    let mut acc = 0.0;
    // Even prefix handled by 1/3 rule, odd remainder by one 3/8 block.
    let simpson_end = if n % 2 == 0 { i1 } else { i1 - 3 };
    let mut i = i0;
    while i + 2 <= simpson_end {
        acc += h / 3.0 * (values[i] + 4.0 * values[i + 1] + values[i + 2]);
        i += 2;
    }
    if n % 2 != 0 {
        if n == 3 {
            acc = 0.0; // whole range is the 3/8 block
        }
        let j = i1 - 3;
        acc += 3.0 * h / 8.0 * (values[j] + 3.0 * values[j + 1] + 3.0 * values[j + 2] + values[i1]);
    }
    acc
}

/// Second-order first derivative on a uniform grid: centered in the
/// interior, one-sided three-point stencils at both ends.
pub fn derivative(grid: &[f64], values: &[f64]) -> Vec<f64> {
    let n = grid.len();
    assert!(n >= 3, "derivative needs at least 3 nodes");
    assert_eq!(values.len(), n);
    let h = grid[1] - grid[0];
    let mut out = vec![0.0; n];
    out[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h);
    for i in 1..n - 1 {
        out[i] = (values[i + 1] - values[i - 1]) / (2.0 * h);
    }
    out[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * h);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize, a: f64, b: f64) -> Vec<f64> {
        (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
    }

    #[test]
    fn trapezoid_linear_exact() {
        let g = grid(7, 0.0, 2.0);
        let v: Vec<f64> = g.iter().map(|r| 3.0 * r + 1.0).collect();
        let c = cumulative_trapezoid(&g, &v);
        // ∫(3r+1) = 1.5 r^2 + r, exact for the trapezoid rule
        for (i, r) in g.iter().enumerate() {
            assert!((c[i] - (1.5 * r * r + r)).abs() < 1e-13);
        }
    }

    #[test]
    fn simpson_cubic_exact_even_and_odd() {
        for n in [10usize, 11, 13] {
            let g = grid(n, 0.0, 1.0);
            let v: Vec<f64> = g.iter().map(|r| r.powi(3) - 2.0 * r).collect();
            let got = simpson_nodes(&g, &v, 0, n);
            assert!((got - (0.25 - 1.0)).abs() < 1e-14, "n = {n}: {got}");
        }
    }

    #[test]
    fn simpson_partial_range() {
        let g = grid(100, 0.0, 10.0);
        let v: Vec<f64> = g.iter().map(|r| r.exp() * 0.0 + r * r).collect();
        // ∫_2^7 r^2 dr = (343 - 8)/3
        let got = simpson_nodes(&g, &v, 20, 70);
        assert!((got - 335.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn derivative_second_order() {
        let g = grid(200, 0.0, 3.0);
        let v: Vec<f64> = g.iter().map(|r| (-r * r).exp()).collect();
        let d = derivative(&g, &v);
        let mut worst: f64 = 0.0;
        for (i, r) in g.iter().enumerate() {
            let exact = -2.0 * r * (-r * r).exp();
            worst = worst.max((d[i] - exact).abs());
        }
        assert!(worst < 5e-4, "worst = {worst}");
    }
}
