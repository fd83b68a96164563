//! Gauss-Legendre panel quadrature.
//!
//! Nodes and weights come from Newton iteration on the Legendre polynomial;
//! panel subdivision and summation order are fixed so results are
//! reproducible bit for bit.

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "need at least two nodes per panel");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-15 {
                let (p2, d2) = legendre_with_derivative(n, x);
                dp = d2;
                x -= p2 / d2;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let (_, d) = legendre_with_derivative(n, 0.0);
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite panel nodes over `[a, b]`: `panels` equal panels with the
/// `nodes_per_panel`-point rule on each, listed left to right.
pub fn panel_nodes(a: f64, b: f64, panels: usize, nodes_per_panel: usize) -> Vec<(f64, f64)> {
    assert!(panels >= 1 && b > a, "bad panel layout");
    let (xs, ws) = gauss_legendre(nodes_per_panel);
    let width = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * nodes_per_panel);
    for p in 0..panels {
        let lo = a + width * p as f64;
        let mid = lo + 0.5 * width;
        let half = 0.5 * width;
        for (x, w) in xs.iter().zip(ws.iter()) {
            out.push((mid + half * x, half * w));
        }
    }
    out
}

/// Panel count needed so that no panel is wider than `max_width`, with a
/// floor of `at_least`.
pub fn panels_for_span(span: f64, max_width: f64, at_least: usize) -> usize {
    assert!(span > 0.0 && max_width > 0.0);
    at_least.max((span / max_width).ceil() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_integrate_polynomials_exactly() {
        // 20-node rule is exact through degree 39.
        let (xs, ws) = gauss_legendre(20);
        let integral: f64 = xs
            .iter()
            .zip(ws.iter())
            .map(|(x, w)| w * x.powi(38))
            .sum();
        let exact = 2.0 / 39.0;
        assert!((integral - exact).abs() <= 1e-14);
        let total: f64 = ws.iter().sum();
        assert!((total - 2.0).abs() <= 1e-13);
    }

    #[test]
    fn composite_panels_integrate_smooth_function() {
        let pts = panel_nodes(0.0, 3.0, 6, 12);
        let integral: f64 = pts.iter().map(|(x, w)| w * x.exp()).sum();
        assert!((integral - (3.0f64.exp() - 1.0)).abs() <= 1e-12);
    }

    #[test]
    fn panel_sizing_respects_width_cap() {
        assert_eq!(panels_for_span(80.0, 3.0, 20), 27);
        assert_eq!(panels_for_span(10.0, 3.0, 20), 20);
    }
}
