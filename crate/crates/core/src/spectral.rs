//! Spectral radius and Perron vector computation, plus every closed-form
//! bound the extremal analysis needs.
//!
//! Numeric path: power iteration on A + I (the shift removes the period-2
//! stall on bipartite graphs) with a Rayleigh-quotient stopping rule and a
//! deterministic all-ones start. If the iteration hits its cap on a graph
//! with at most [`DENSE_FALLBACK_MAX`] vertices, a dense route takes over:
//! Householder tridiagonalization, characteristic-polynomial (Sturm)
//! bisection for the top eigenvalue, and inverse iteration for the vector.
//!
//! Exact path: for the extremal family the vertex partition
//! {hub} ∪ {K_t blocks} ∪ {K_s block} is equitable, so the spectral radius
//! is the largest root of a cubic in closed form; see [`ft_mu_exact`].

use crate::cubic::{largest_real_root, newton_polish};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default accuracy target for the iterative eigensolver.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Iteration cap before the dense fallback (or an explicit failure).
pub const MAX_ITERATIONS: usize = 1_000_000;

/// Largest order the dense stall fallback will handle.
pub const DENSE_FALLBACK_MAX: usize = 64;

/// Outcome of a spectral-radius computation.
#[derive(Debug, Clone)]
pub struct SpectralResult {
    /// Spectral radius estimate, within the requested tolerance.
    pub mu: f64,
    /// Nonnegative unit eigenvector; present exactly when the input is
    /// connected.
    pub vector: Option<Vec<f64>>,
    /// Matrix-vector products spent (summed over components).
    pub iterations: usize,
    /// ‖Ax − μx‖∞ of the accepted eigenpair.
    pub residual: f64,
}

/// The closed-form bounds attached to a parameter pair (t, n).
#[derive(Debug, Clone, Copy)]
pub struct BoundSet {
    /// (t-1)/2 + sqrt(n + (t^2-2t-3)/4).
    pub upper: f64,
    /// upper - t(t+1)/(8n).
    pub lower: f64,
    /// 3/2 + sqrt(n - 7/4); the K_{2,3} bound, defined only for t = 3.
    pub ysh: Option<f64>,
    /// Whether (t, n) lies in the regime t >= 4, n >= 400 t^6 for which the
    /// lower bound is stated.
    pub lower_in_stated_range: bool,
}

/// Spectral radius of `g` to within `tol`. For disconnected graphs the
/// maximum over components is returned and the vector is omitted.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralResult> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    check_tol(tol)?;
    let comps = g.components();
    if comps.len() == 1 {
        let (mu, vector, iterations, residual) = solve_connected(g, tol)?;
        return Ok(SpectralResult {
            mu,
            vector: Some(vector),
            iterations,
            residual,
        });
    }
    let mut best = 0.0f64;
    let mut iterations = 0;
    let mut residual = 0.0f64;
    for comp in &comps {
        if comp.len() == 1 {
            continue; // isolated vertex contributes mu = 0
        }
        let sub = g.induced(comp);
        let (mu, _, iters, res) = solve_connected(&sub, tol)?;
        iterations += iters;
        residual = residual.max(res);
        best = best.max(mu);
    }
    Ok(SpectralResult {
        mu: best,
        vector: None,
        iterations,
        residual,
    })
}

/// The unique nonnegative unit eigenvector of a connected graph, with its
/// eigenvalue. Disconnected input is a precondition error.
pub fn perron_vector(g: &Graph, tol: f64) -> Result<SpectralResult> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    check_tol(tol)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (mu, vector, iterations, residual) = solve_connected(g, tol)?;
    Ok(SpectralResult {
        mu,
        vector: Some(vector),
        iterations,
        residual,
    })
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive and finite, got {tol}"
        )));
    }
    Ok(())
}

type EigenPair = (f64, Vec<f64>, usize, f64);

fn solve_connected(g: &Graph, tol: f64) -> Result<EigenPair> {
    let n = g.n();
    if n == 1 {
        return Ok((0.0, vec![1.0], 0, 0.0));
    }
    match power_iterate(g, tol, MAX_ITERATIONS) {
        Some(pair) => Ok(pair),
        None if n <= DENSE_FALLBACK_MAX => dense_solve(g, tol),
        None => Err(Error::NoConvergence(MAX_ITERATIONS)),
    }
}

fn power_iterate(g: &Graph, tol: f64, cap: usize) -> Option<EigenPair> {
    let n = g.n();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut y = vec![0.0; n];
    for iter in 1..=cap {
        matvec(g, &x, &mut y);
        let mu: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let mut r2 = 0.0;
        let mut rinf = 0.0f64;
        for i in 0..n {
            let r = y[i] - mu * x[i];
            r2 += r * r;
            rinf = rinf.max(r.abs());
        }
        if r2.sqrt() <= tol {
            return Some((mu, x, iter, rinf));
        }
        // advance by A + I and renormalize
        let mut norm = 0.0;
        for i in 0..n {
            y[i] += x[i];
            norm += y[i] * y[i];
        }
        let norm = norm.sqrt();
        for i in 0..n {
            x[i] = y[i] / norm;
        }
    }
    None
}

fn matvec(g: &Graph, x: &[f64], y: &mut [f64]) {
    for (u, out) in y.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (k, &word) in g.row(u).iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                acc += x[k * 64 + b];
                w &= w - 1;
            }
        }
        *out = acc;
    }
}

// ---------------------------------------------------------------------------
// dense stall fallback

fn dense_solve(g: &Graph, tol: f64) -> Result<EigenPair> {
    let n = g.n();
    let mut a = vec![0.0f64; n * n];
    for u in 0..n {
        for v in g.neighbors(u) {
            a[u * n + v] = 1.0;
        }
    }
    let (d, e) = householder_tridiag(a.clone(), n);
    let mu0 = top_eigenvalue_bisect(&d, &e);

    // inverse iteration with a shift just above the located eigenvalue
    let sigma = mu0 + 1e-8 * mu0.abs().max(1.0);
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    for _ in 0..6 {
        let rhs = v.clone();
        v = solve_shifted(&a, n, sigma, rhs);
        let norm: f64 = v.iter().map(|z| z * z).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NoConvergence(MAX_ITERATIONS));
        }
        for z in v.iter_mut() {
            *z /= norm;
        }
    }
    if v.iter().sum::<f64>() < 0.0 {
        for z in v.iter_mut() {
            *z = -*z;
        }
    }
    for z in v.iter_mut() {
        if *z < 0.0 {
            *z = 0.0;
        }
    }
    let norm: f64 = v.iter().map(|z| z * z).sum::<f64>().sqrt();
    for z in v.iter_mut() {
        *z /= norm;
    }

    let mut av = vec![0.0; n];
    matvec(g, &v, &mut av);
    let mu: f64 = v.iter().zip(&av).map(|(a, b)| a * b).sum();
    let mut r2 = 0.0;
    let mut rinf = 0.0f64;
    for i in 0..n {
        let r = av[i] - mu * v[i];
        r2 += r * r;
        rinf = rinf.max(r.abs());
    }
    if r2.sqrt() > tol {
        return Err(Error::NoConvergence(MAX_ITERATIONS));
    }
    Ok((mu, v, MAX_ITERATIONS, rinf))
}

/// Reduce a symmetric matrix to tridiagonal form; returns (diagonal,
/// subdiagonal). Plain Householder reflectors, no eigenvector accumulation.
fn householder_tridiag(mut a: Vec<f64>, n: usize) -> (Vec<f64>, Vec<f64>) {
    for k in 0..n.saturating_sub(2) {
        let mut norm2 = 0.0;
        for i in k + 1..n {
            norm2 += a[i * n + k] * a[i * n + k];
        }
        let norm = norm2.sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if a[(k + 1) * n + k] >= 0.0 { -norm } else { norm };
        // u = (x - alpha e1) normalized
        let mut u = vec![0.0; n];
        u[k + 1] = a[(k + 1) * n + k] - alpha;
        for i in k + 2..n {
            u[i] = a[i * n + k];
        }
        let unorm: f64 = u.iter().map(|z| z * z).sum::<f64>().sqrt();
        if unorm == 0.0 {
            continue;
        }
        for z in u.iter_mut() {
            *z /= unorm;
        }
        // p = A u restricted to the trailing block, kappa = u' p,
        // w = 2 (p - kappa u); A <- A - u w' - w u'
        let mut p = vec![0.0; n];
        for i in k + 1..n {
            let mut acc = 0.0;
            for j in k + 1..n {
                acc += a[i * n + j] * u[j];
            }
            p[i] = acc;
        }
        let kappa: f64 = u.iter().zip(&p).map(|(x, y)| x * y).sum();
        let w: Vec<f64> = p
            .iter()
            .zip(&u)
            .map(|(pi, ui)| 2.0 * (pi - kappa * ui))
            .collect();
        for i in k + 1..n {
            for j in k + 1..n {
                a[i * n + j] -= u[i] * w[j] + w[i] * u[j];
            }
        }
        a[(k + 1) * n + k] = alpha;
        a[k * n + k + 1] = alpha;
        for i in k + 2..n {
            a[i * n + k] = 0.0;
            a[k * n + i] = 0.0;
        }
    }
    let d: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    let e: Vec<f64> = (0..n.saturating_sub(1))
        .map(|i| a[(i + 1) * n + i])
        .collect();
    (d, e)
}

/// Eigenvalues of the tridiagonal matrix strictly below `x`, by the Sturm
/// sequence of leading principal characteristic polynomials.
fn sturm_count_below(d: &[f64], e: &[f64], x: f64) -> usize {
    let scale = d
        .iter()
        .chain(e.iter())
        .fold(1.0f64, |m, &z| m.max(z.abs()));
    let tiny = f64::EPSILON * scale * d.len() as f64;
    let mut count = 0;
    let mut q = d[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..d.len() {
        let denom = if q.abs() < tiny {
            if q < 0.0 {
                -tiny
            } else {
                tiny
            }
        } else {
            q
        };
        q = d[i] - x - e[i - 1] * e[i - 1] / denom;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn top_eigenvalue_bisect(d: &[f64], e: &[f64]) -> f64 {
    let n = d.len();
    let radius = |i: usize| {
        let left = if i > 0 { e[i - 1].abs() } else { 0.0 };
        let right = if i < n - 1 { e[i].abs() } else { 0.0 };
        left + right
    };
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (i, &di) in d.iter().enumerate() {
        lo = lo.min(di - radius(i));
        hi = hi.max(di + radius(i));
    }
    hi += 1.0;
    lo -= 1.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if sturm_count_below(d, e, mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-14 * hi.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Solve (A - sigma I) z = b by Gaussian elimination with partial pivoting.
fn solve_shifted(a: &[f64], n: usize, sigma: f64, mut b: Vec<f64>) -> Vec<f64> {
    let mut m = a.to_vec();
    for i in 0..n {
        m[i * n + i] -= sigma;
    }
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if m[r * n + col].abs() > m[piv * n + col].abs() {
                piv = r;
            }
        }
        if piv != col {
            for c in 0..n {
                m.swap(col * n + c, piv * n + c);
            }
            b.swap(col, piv);
        }
        let pval = m[col * n + col];
        let pval = if pval == 0.0 { f64::MIN_POSITIVE.sqrt() } else { pval };
        for r in col + 1..n {
            let factor = m[r * n + col] / pval;
            if factor == 0.0 {
                continue;
            }
            for c in col..n {
                m[r * n + c] -= factor * m[col * n + c];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut z = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for c in row + 1..n {
            acc -= m[row * n + c] * z[c];
        }
        let pval = m[row * n + row];
        let pval = if pval == 0.0 { f64::MIN_POSITIVE.sqrt() } else { pval };
        z[row] = acc / pval;
    }
    z
}

// ---------------------------------------------------------------------------
// closed forms

/// Spectral radius of the extremal graph on n vertices for forbidden
/// K_{2,t}: the largest root of
/// (x - s + 1)(x^2 - (t-1)x - n + 1) + s(t - s) = 0 with s = (n-1) mod t.
/// For s = 0 the cubic degenerates and the quadratic root
/// (t-1)/2 + sqrt(n + (t^2-2t-3)/4) is returned directly (bitwise equal to
/// [`bound_upper`], which keeps the equality case exact).
pub fn ft_mu_exact(t: usize, n: usize) -> Result<f64> {
    check_ft_params(t, n)?;
    let s = (n - 1) % t;
    if s == 0 {
        return Ok(bound_upper(t, n));
    }
    let (tf, nf, sf) = (t as f64, n as f64, s as f64);
    let a2 = -(tf + sf - 2.0);
    let a1 = (sf - 1.0) * (tf - 1.0) - (nf - 1.0);
    let a0 = (sf - 1.0) * (nf - 1.0) + sf * (tf - sf);
    let seed = largest_real_root(a2, a1, a0);
    // polish against the factored form: the quadratic factor is evaluated
    // with a fused multiply-add, which keeps the cancellation near the root
    // benign even at n ~ 10^7
    let quad = |x: f64| x.mul_add(x - (tf - 1.0), -(nf - 1.0));
    let f = move |x: f64| (x - sf + 1.0) * quad(x) + sf * (tf - sf);
    let df = move |x: f64| quad(x) + (x - sf + 1.0) * (2.0 * x - (tf - 1.0));
    Ok(newton_polish(seed, f, df, 8))
}

fn check_ft_params(t: usize, n: usize) -> Result<()> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("t must be >= 2, got {t}")));
    }
    if n < t + 1 {
        return Err(Error::InvalidParameter(format!(
            "n must be >= t + 1 = {}, got {n}",
            t + 1
        )));
    }
    Ok(())
}

/// (t-1)/2 + sqrt(n + (t^2 - 2t - 3)/4), the spectral-radius upper bound
/// for K_{2,t}-minor-free graphs of large order.
pub fn bound_upper(t: usize, n: usize) -> f64 {
    let (tf, nf) = (t as f64, n as f64);
    (tf - 1.0) / 2.0 + (nf + (tf * tf - 2.0 * tf - 3.0) / 4.0).sqrt()
}

/// bound_upper(t, n) - t(t+1)/(8n). Stated for t >= 4 and n >= 400 t^6;
/// evaluation elsewhere is permitted, see [`bound_lower_in_stated_range`].
pub fn bound_lower(t: usize, n: usize) -> f64 {
    let (tf, nf) = (t as f64, n as f64);
    bound_upper(t, n) - tf * (tf + 1.0) / (8.0 * nf)
}

/// Whether (t, n) lies in the regime for which the lower bound is stated.
pub fn bound_lower_in_stated_range(t: usize, n: usize) -> bool {
    t >= 4 && (n as u128) >= 400 * (t as u128).pow(6)
}

/// 3/2 + sqrt(n - 7/4), the Yu–Shu–Hong bound for K_{2,3}-minor-free
/// graphs. Defined for n >= 2 (NaN below that).
pub fn bound_ysh(n: usize) -> f64 {
    1.5 + (n as f64 - 1.75).sqrt()
}

/// All bound values for (t, n) in one struct.
pub fn bounds(t: usize, n: usize) -> BoundSet {
    BoundSet {
        upper: bound_upper(t, n),
        lower: bound_lower(t, n),
        ysh: (t == 3).then(|| bound_ysh(n)),
        lower_in_stated_range: bound_lower_in_stated_range(t, n),
    }
}

/// Σ over edges {i,j} of w_i w_j, compensated (Neumaier) so that move
/// identities hold to near machine precision.
pub fn edge_weight_sum(g: &Graph, w: &[f64]) -> Result<f64> {
    if w.len() != g.n() {
        return Err(Error::WeightLength {
            got: w.len(),
            expected: g.n(),
        });
    }
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for u in 0..g.n() {
        for v in g.neighbors(u) {
            if v <= u {
                continue;
            }
            let term = w[u] * w[v];
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
        }
    }
    Ok(sum + comp)
}
