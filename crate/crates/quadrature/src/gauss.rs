//! Gauss-Legendre and trapezoidal rules.

use std::f64::consts::PI;

/// Nodes and weights of the n-point Gauss-Legendre rule on [−1, 1],
/// by Newton iteration on P_n from Chebyshev initial guesses.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A one-dimensional rule as (node, weight) pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    /// n-point Gauss-Legendre on [a, b].
    pub fn gauss(n: usize, a: f64, b: f64) -> Self {
        let (x, w) = gauss_legendre(n);
        let h = 0.5 * (b - a);
        let m = 0.5 * (b + a);
        Self {
            nodes: x.iter().map(|t| m + h * t).collect(),
            weights: w.iter().map(|v| v * h).collect(),
        }
    }

    /// Gauss-Legendre with `per_panel` nodes on each [e_i, e_{i+1}].
    pub fn composite(edges: &[f64], per_panel: usize) -> Self {
        let mut out = Self {
            nodes: Vec::new(),
            weights: Vec::new(),
        };
        for w in edges.windows(2) {
            let r = Self::gauss(per_panel, w[0], w[1]);
            out.nodes.extend(r.nodes);
            out.weights.extend(r.weights);
        }
        out
    }

    /// Equal-weight rule for a periodic integrand on [a, a + period).
    pub fn periodic(n: usize, a: f64, period: f64) -> Self {
        let h = period / n as f64;
        Self {
            nodes: (0..n).map(|i| a + h * i as f64).collect(),
            weights: vec![h; n],
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}
