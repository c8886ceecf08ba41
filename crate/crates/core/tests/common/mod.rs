//! Test-only oracles that do not share code with the library's solvers.
#![allow(dead_code)]

/// Stationary vector of a row-stochastic matrix: solves πP = π, Σπ = 1 by
/// Gaussian elimination with partial pivoting.
pub fn stationary(p: &[Vec<f64>]) -> Vec<f64> {
    let n = p.len();
    // A = (P^T − I) with the last row replaced by the normalisation.
    let mut a = vec![vec![0.0; n + 1]; n];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = p[j][i] - if i == j { 1.0 } else { 0.0 };
        }
    }
    a[n - 1].fill(1.0);

    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        let diag = a[col][col];
        a[col][col..].iter_mut().for_each(|x| *x /= diag);
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            let factor = row[col];
            if r != col && factor != 0.0 {
                for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= factor * y;
                }
            }
        }
    }
    (0..n).map(|i| a[i][n]).collect()
}

/// Explicit backoff chain over states (stage, counter) at a pinned collision
/// probability, saturated source. A frame that collides at the last stage
/// is dropped and the next one starts at stage 0.
pub struct BackoffChain {
    pub states: Vec<(usize, usize)>,
    pub matrix: Vec<Vec<f64>>,
}

impl BackoffChain {
    pub fn new(p: f64, w0: usize, m: usize) -> Self {
        let windows: Vec<usize> = (0..=m).map(|i| w0 << i).collect();
        let mut states = Vec::new();
        for (i, &w) in windows.iter().enumerate() {
            for k in 0..w {
                states.push((i, k));
            }
        }
        let index = |i: usize, k: usize| states.iter().position(|&s| s == (i, k)).unwrap();
        let n = states.len();
        let mut matrix = vec![vec![0.0; n]; n];
        for (from, &(i, k)) in states.iter().enumerate() {
            if k > 0 {
                matrix[from][index(i, k - 1)] += 1.0;
                continue;
            }
            let restart = if i == m { 1.0 } else { 1.0 - p };
            for k0 in 0..windows[0] {
                matrix[from][index(0, k0)] += restart / windows[0] as f64;
            }
            if i < m {
                for k1 in 0..windows[i + 1] {
                    matrix[from][index(i + 1, k1)] += p / windows[i + 1] as f64;
                }
            }
        }
        BackoffChain { states, matrix }
    }

    /// Stationary probabilities of (i, 0) for i = 0..=m.
    pub fn transmit_states(&self) -> Vec<f64> {
        let pi = stationary(&self.matrix);
        let mut out = Vec::new();
        for (idx, &(_, k)) in self.states.iter().enumerate() {
            if k == 0 {
                out.push(pi[idx]);
            }
        }
        out
    }

    /// Probability a station transmits in a slot.
    pub fn tau(&self) -> f64 {
        self.transmit_states().iter().sum()
    }
}

/// Brute-force saturated operating point: bisection on p − (1 − (1 − τ(p))^(N−1)).
pub fn saturated_point(w0: usize, m: usize, n: i32) -> (f64, f64) {
    let h = |p: f64| p - (1.0 - (1.0 - BackoffChain::new(p, w0, m).tau()).powi(n - 1));
    let (mut lo, mut hi) = (1e-12, 1.0 - 1e-12);
    assert!(h(lo) < 0.0 && h(hi) > 0.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p = 0.5 * (lo + hi);
    (BackoffChain::new(p, w0, m).tau(), p)
}

/// 1 / Σ_{n=0}^{K} ρⁿ by direct summation.
pub fn empty_probability_by_sum(rho: f64, k: u32) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    for _ in 0..=k {
        sum += term;
        term *= rho;
    }
    1.0 / sum
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Exact collision fraction of two saturated stations, from the joint chain
/// over both stations' (stage, counter) pairs.
pub fn two_station_collision_fraction(w0: usize, m: usize, discard: bool) -> f64 {
    let windows: Vec<usize> = (0..=m).map(|i| w0 << i).collect();
    let single: Vec<(usize, usize)> = (0..=m)
        .flat_map(|i| (0..windows[i]).map(move |k| (i, k)))
        .collect();
    let states: Vec<((usize, usize), (usize, usize))> = single
        .iter()
        .flat_map(|&a| single.iter().map(move |&b| (a, b)))
        .collect();
    let index = |s: ((usize, usize), (usize, usize))| states.iter().position(|&x| x == s).unwrap();
    let redraw = |stage: usize| -> Vec<((usize, usize), f64)> {
        (0..windows[stage])
            .map(|k| ((stage, k), 1.0 / windows[stage] as f64))
            .collect()
    };
    let after_collision = |stage: usize| {
        if discard && stage == m {
            redraw(0)
        } else {
            redraw((stage + 1).min(m))
        }
    };
    let n = states.len();
    let mut matrix = vec![vec![0.0; n]; n];
    for (from, &((ia, ka), (ib, kb))) in states.iter().enumerate() {
        let (next_a, next_b) = match (ka == 0, kb == 0) {
            (true, true) => (after_collision(ia), after_collision(ib)),
            (true, false) => (redraw(0), vec![((ib, kb - 1), 1.0)]),
            (false, true) => (vec![((ia, ka - 1), 1.0)], redraw(0)),
            (false, false) => (vec![((ia, ka - 1), 1.0)], vec![((ib, kb - 1), 1.0)]),
        };
        for &(a, pa) in &next_a {
            for &(b, pb) in &next_b {
                matrix[from][index((a, b))] += pa * pb;
            }
        }
    }
    let pi = stationary(&matrix);
    let (mut both, mut one) = (0.0, 0.0);
    for (idx, &((_, ka), (_, kb))) in states.iter().enumerate() {
        match (ka == 0, kb == 0) {
            (true, true) => both += pi[idx],
            (true, false) | (false, true) => one += pi[idx],
            _ => {}
        }
    }
    2.0 * both / (2.0 * both + one)
}
