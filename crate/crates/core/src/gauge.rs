//! Numeric check that ℳ is the ground-state conjugate of the potential-form
//! operator 𝒮ℒ: 𝒮ℒ(δ·P_λ) = (e_λ + (ρ,ρ)_k)·δ·P_λ at sampled points.
//!
//! Functions are evaluated in logarithmic coordinates t_i = log x_i,
//! t̄_j = log y_j with forward-mode second-order jets, so no step sizes are
//! involved.

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cmsop::rho_norm;
use crate::coeffs::{rational_to_f64, CoeffError};
use crate::partitions::Partition;
use crate::superjack::{eigenvalue, super_jack};
use crate::sympoly::SparsePoly;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GaugeError {
    #[error("singular configuration: coordinates {0} and {1} too close")]
    Singular(usize, usize),
    #[error("point must be strictly decreasing with the x-block above the y-block")]
    Unordered,
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("P_{0:?} vanishes for (n, m) = ({1}, {2})")]
    ZeroPolynomial(Partition, usize, usize),
    #[error("could not sample an admissible point after {0} draws")]
    SamplingExhausted(usize),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Value, gradient and Hessian of a scalar function at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub grad: Vec<f64>,
    /// Row-major `dim × dim`.
    pub hess: Vec<f64>,
}

impl Jet2 {
    pub fn constant(dim: usize, value: f64) -> Self {
        Jet2 {
            value,
            grad: vec![0.0; dim],
            hess: vec![0.0; dim * dim],
        }
    }

    /// The linear form Σ c_i t_i.
    pub fn linear(coeffs: &[f64], point: &[f64]) -> Self {
        let dim = coeffs.len();
        Jet2 {
            value: coeffs.iter().zip(point).map(|(c, t)| c * t).sum(),
            grad: coeffs.to_vec(),
            hess: vec![0.0; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.grad.len()
    }

    pub fn hess_at(&self, i: usize, j: usize) -> f64 {
        self.hess[i * self.dim() + j]
    }

    /// Chain rule for φ∘self given φ, φ', φ'' at `self.value`.
    pub fn compose(&self, f0: f64, f1: f64, f2: f64) -> Jet2 {
        let dim = self.dim();
        let mut hess = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                hess[i * dim + j] = f1 * self.hess[i * dim + j] + f2 * self.grad[i] * self.grad[j];
            }
        }
        Jet2 {
            value: f0,
            grad: self.grad.iter().map(|g| f1 * g).collect(),
            hess,
        }
    }

    pub fn exp(&self) -> Jet2 {
        let e = self.value.exp();
        self.compose(e, e, e)
    }

    pub fn add(&self, other: &Jet2) -> Jet2 {
        Jet2 {
            value: self.value + other.value,
            grad: self
                .grad
                .iter()
                .zip(&other.grad)
                .map(|(a, b)| a + b)
                .collect(),
            hess: self
                .hess
                .iter()
                .zip(&other.hess)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Jet2 {
        Jet2 {
            value: self.value * s,
            grad: self.grad.iter().map(|a| a * s).collect(),
            hess: self.hess.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, other: &Jet2) -> Jet2 {
        let dim = self.dim();
        let (u, v) = (self.value, other.value);
        let mut hess = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                hess[i * dim + j] = u * other.hess[i * dim + j]
                    + v * self.hess[i * dim + j]
                    + self.grad[i] * other.grad[j]
                    + self.grad[j] * other.grad[i];
            }
        }
        Jet2 {
            value: u * v,
            grad: self
                .grad
                .iter()
                .zip(&other.grad)
                .map(|(a, b)| u * b + v * a)
                .collect(),
            hess,
        }
    }
}

/// A point of the ordered chamber t₁ > … > t_n > t̄₁ > … > t̄_m.
#[derive(Clone, Debug, PartialEq)]
pub struct ChamberPoint {
    pub n: usize,
    pub m: usize,
    pub t: Vec<f64>,
}

const WALL_EPS: f64 = 1e-9;

impl ChamberPoint {
    pub fn new(n: usize, m: usize, t: Vec<f64>) -> Result<Self, GaugeError> {
        if t.len() != n + m {
            return Err(GaugeError::PointLength {
                expected: n + m,
                got: t.len(),
            });
        }
        if t.windows(2).any(|w| w[0] <= w[1]) {
            for (a, w) in t.windows(2).enumerate() {
                if (w[0] - w[1]).exp_m1().abs() < WALL_EPS {
                    return Err(GaugeError::Singular(a, a + 1));
                }
            }
            return Err(GaugeError::Unordered);
        }
        for a in 0..t.len() {
            for b in a + 1..t.len() {
                if (t[a] - t[b]).exp_m1().abs() < WALL_EPS {
                    return Err(GaugeError::Singular(a, b));
                }
            }
        }
        Ok(ChamberPoint { n, m, t })
    }

    fn dim(&self) -> usize {
        self.n + self.m
    }

    /// Coefficient vector of t_a − t_b.
    fn difference(&self, a: usize, b: usize) -> Vec<f64> {
        let mut c = vec![0.0; self.dim()];
        c[a] = 1.0;
        c[b] = -1.0;
        c
    }

    fn x_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| (i, j)))
    }

    fn y_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..self.m).flat_map(move |i| (i + 1..self.m).map(move |j| (n + i, n + j)))
    }

    fn mixed_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..self.n).flat_map(move |i| (0..self.m).map(move |j| (i, n + j)))
    }
}

/// Deterministic admissible points: coordinates uniform in [0.3, 2.5], sorted
/// into the chamber, consecutive gaps at least 0.15.
pub fn sample_points(
    n: usize,
    m: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<ChamberPoint>, GaugeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let max_draws = 10_000 * count.max(1);
    let mut draws = 0;
    while out.len() < count {
        if draws >= max_draws {
            return Err(GaugeError::SamplingExhausted(draws));
        }
        draws += 1;
        if let Some(p) = draw_point(&mut rng, n, m) {
            out.push(p);
        }
    }
    Ok(out)
}

fn draw_point(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Option<ChamberPoint> {
    let mut t: Vec<f64> = (0..n + m).map(|_| rng.gen_range(0.3..2.5)).collect();
    t.sort_by(|a, b| b.total_cmp(a));
    if t.windows(2).any(|w| w[0] - w[1] < 0.15) {
        return None;
    }
    ChamberPoint::new(n, m, t).ok()
}

/// log(e^{L/2} − e^{−L/2}) for the linear form L, as a jet.
fn log_sinh_factor(coeffs: &[f64], point: &[f64]) -> Jet2 {
    let l = Jet2::linear(coeffs, point);
    let h = 0.5 * l.value;
    let (s, c) = (h.sinh(), h.cosh());
    l.compose((2.0 * s).ln(), 0.5 * c / s, -0.25 / (s * s))
}

/// 2·sinh(L/2) = e^{L/2} − e^{−L/2}.
fn wall_factor(l: f64) -> f64 {
    2.0 * (0.5 * l).sinh()
}

/// Jet of δ^{(k)} = Π_α (2 sinh α/2)^k Π_β (2 sinh β/2)^{1/k} Π_γ (2 sinh γ/2)^{−1}.
pub fn delta_k_jet(point: &ChamberPoint, k0: f64) -> Jet2 {
    let dim = point.dim();
    let mut log = Jet2::constant(dim, 0.0);
    for (a, b) in point.x_pairs() {
        log = log.add(&log_sinh_factor(&point.difference(a, b), &point.t).scale(k0));
    }
    for (a, b) in point.y_pairs() {
        log = log.add(&log_sinh_factor(&point.difference(a, b), &point.t).scale(1.0 / k0));
    }
    for (a, b) in point.mixed_pairs() {
        log = log.add(&log_sinh_factor(&point.difference(a, b), &point.t).scale(-1.0));
    }
    log.exp()
}

pub fn delta_k(point: &ChamberPoint, k0: f64) -> f64 {
    delta_k_jet(point, k0).value
}

/// Coefficient pattern for the even odd-block (R22) potential term.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialConvention {
    /// +(1/k)(1/k − 1)(β,β)_k, with (β,β)_k = −2k.
    AsPrinted,
    /// −(1/k)(1/k − 1)(β,β)_k = 2(1/k − 1): the sign for which δ^{(k)} is a
    /// ground state of 𝒮ℒ for every m.
    #[default]
    GroundState,
}

/// Multiplicative potential of 𝒮ℒ at a point.
pub fn potential(point: &ChamberPoint, k0: f64, convention: PotentialConvention) -> f64 {
    let t = &point.t;
    let inv_sq = |a: usize, b: usize| wall_factor(t[a] - t[b]).powi(-2);
    let alpha_norm = 2.0;
    let beta_norm = -2.0 * k0;
    let gamma_norm = 1.0 - k0;
    let beta_sign = match convention {
        PotentialConvention::AsPrinted => 1.0,
        PotentialConvention::GroundState => -1.0,
    };
    let mut v = 0.0;
    for (a, b) in point.x_pairs() {
        v -= k0 * (k0 - 1.0) * alpha_norm * inv_sq(a, b);
    }
    for (a, b) in point.y_pairs() {
        v += beta_sign * (1.0 / k0) * (1.0 / k0 - 1.0) * beta_norm * inv_sq(a, b);
    }
    for (a, b) in point.mixed_pairs() {
        v -= 2.0 * gamma_norm * inv_sq(a, b);
    }
    v
}

/// Σ_i ∂²_{t_i} f − k Σ_j ∂²_{t̄_j} f.
pub fn laplacian_k(f: &Jet2, n: usize, k0: f64) -> f64 {
    let dim = f.dim();
    let even: f64 = (0..n).map(|i| f.hess_at(i, i)).sum();
    let odd: f64 = (n..dim).map(|j| f.hess_at(j, j)).sum();
    even - k0 * odd
}

/// (𝒮ℒ f)(point) for f given by its jet at the point.
pub fn apply_sl(f: &Jet2, point: &ChamberPoint, k0: f64, convention: PotentialConvention) -> f64 {
    laplacian_k(f, point.n, k0) + potential(point, k0, convention) * f.value
}

/// First-order part of ℳ applied to f, in t-coordinates (x∂_x = ∂_t).
pub fn m_first_order(f: &Jet2, point: &ChamberPoint, k0: f64) -> f64 {
    let t = &point.t;
    let coth = |a: usize, b: usize| 1.0 / (0.5 * (t[a] - t[b])).tanh();
    let g = &f.grad;
    let mut acc = 0.0;
    for (a, b) in point.x_pairs() {
        acc += k0 * coth(a, b) * (g[a] - g[b]);
    }
    for (a, b) in point.y_pairs() {
        acc -= coth(a, b) * (g[a] - g[b]);
    }
    for (a, b) in point.mixed_pairs() {
        acc -= coth(a, b) * (g[a] + k0 * g[b]);
    }
    acc
}

/// Jet of f(e^t) with coefficients specialized exactly at k0, and the sum of
/// absolute term values (a cancellation gauge).
pub fn poly_jet(
    f: &SparsePoly,
    k0: &BigRational,
    point: &ChamberPoint,
) -> Result<(Jet2, f64), GaugeError> {
    if f.n() + f.m() != point.dim() {
        return Err(GaugeError::PointLength {
            expected: f.n() + f.m(),
            got: point.dim(),
        });
    }
    let mut jet = Jet2::constant(point.dim(), 0.0);
    let mut abs_sum = 0.0;
    for (e, c) in f.terms() {
        let c = rational_to_f64(&c.specialize(k0)?);
        let exps: Vec<f64> = e.iter().map(|&p| p as f64).collect();
        let term = Jet2::linear(&exps, &point.t).exp().scale(c);
        abs_sum += term.value.abs();
        jet = jet.add(&term);
    }
    Ok((jet, abs_sum))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// How the printed R22 potential coefficient differs from the one used.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConventionDelta {
    pub term: &'static str,
    pub printed: &'static str,
    pub used: &'static str,
    #[serde(serialize_with = "ser_sig15")]
    pub max_residual_as_printed: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaugeReport {
    pub lambda: Partition,
    pub n: usize,
    pub m: usize,
    #[serde(serialize_with = "ser_display")]
    pub k0: BigRational,
    pub eigenvalue: String,
    pub rho_norm: String,
    #[serde(serialize_with = "ser_sig15_vec2")]
    pub points: Vec<Vec<f64>>,
    #[serde(serialize_with = "ser_sig15_vec")]
    pub residuals: Vec<f64>,
    #[serde(serialize_with = "ser_sig15")]
    pub max_residual: f64,
    #[serde(serialize_with = "ser_sig15")]
    pub tolerance: f64,
    pub verdict: Verdict,
    pub convention_delta: Option<ConventionDelta>,
}

/// Rounds to 15 significant decimal digits.
pub fn sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn ser_sig15<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(sig15(*x))
}

fn ser_sig15_vec<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|&x| sig15(x)))
}

fn ser_sig15_vec2<S: Serializer>(v: &[Vec<f64>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(
        v.iter()
            .map(|p| p.iter().map(|&x| sig15(x)).collect::<Vec<_>>()),
    )
}

fn ser_display<S: Serializer, T: std::fmt::Display>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// |𝒮ℒ(δP) − (e + (ρ,ρ))·δP| / (|δP| + 1e−300) at one point.
fn conjugation_residual(
    p: &SparsePoly,
    k0q: &BigRational,
    shift: f64,
    point: &ChamberPoint,
    convention: PotentialConvention,
) -> Result<(f64, f64), GaugeError> {
    let k0 = rational_to_f64(k0q);
    let (pj, abs_sum) = poly_jet(p, k0q, point)?;
    let dp = delta_k_jet(point, k0).mul(&pj);
    let lhs = apply_sl(&dp, point, k0, convention);
    let r = (lhs - shift * dp.value).abs() / (dp.value.abs() + 1e-300);
    let cancellation = pj.value.abs() / abs_sum.max(f64::MIN_POSITIVE);
    Ok((r, cancellation))
}

/// Samples admissible points (deterministic in `seed`) and checks
/// 𝒮ℒ(δ·P_λ) = (e_λ + (ρ,ρ)_k)·δ·P_λ at each one.
pub fn conjugation_check(
    lambda: &Partition,
    n: usize,
    m: usize,
    k0: &BigRational,
    num_points: usize,
    seed: u64,
    tol: f64,
) -> Result<GaugeReport, GaugeError> {
    if k0.is_zero() {
        return Err(CoeffError::ZeroK.into());
    }
    let p = super_jack(lambda, n, m).poly;
    if p.is_zero() {
        return Err(GaugeError::ZeroPolynomial(lambda.clone(), n, m));
    }
    let e = eigenvalue(lambda, n, m).specialize(k0)?;
    let rho = rho_norm(n, m).specialize(k0)?;
    let shift = rational_to_f64(&(&e + &rho));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(num_points);
    let mut residuals = Vec::with_capacity(num_points);
    let mut printed = Vec::with_capacity(num_points);
    let mut draws = 0;
    let max_draws = 10_000 * num_points.max(1);
    while points.len() < num_points {
        if draws >= max_draws {
            return Err(GaugeError::SamplingExhausted(draws));
        }
        draws += 1;
        let Some(point) = draw_point(&mut rng, n, m) else {
            continue;
        };
        let (r, cancellation) =
            conjugation_residual(&p, k0, shift, &point, PotentialConvention::GroundState)?;
        // P nearly vanishing by cancellation makes the relative residual meaningless
        if cancellation < 1e-6 {
            continue;
        }
        let (r_printed, _) =
            conjugation_residual(&p, k0, shift, &point, PotentialConvention::AsPrinted)?;
        points.push(point.t);
        residuals.push(r);
        printed.push(r_printed);
    }
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    let verdict = if max_residual <= tol {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let convention_delta = (m >= 2).then(|| ConventionDelta {
        term: "R22",
        printed: "+(1/k)(1/k-1)(beta,beta)_k",
        used: "-(1/k)(1/k-1)(beta,beta)_k",
        max_residual_as_printed: printed.iter().copied().fold(0.0, f64::max),
    });
    Ok(GaugeReport {
        lambda: lambda.clone(),
        n,
        m,
        k0: k0.clone(),
        eigenvalue: e.to_string(),
        rho_norm: rho.to_string(),
        points,
        residuals,
        max_residual,
        tolerance: tol,
        verdict,
        convention_delta,
    })
}

/// For each test function f, the value of
/// [δ⁻¹𝒮ℒ(δf) − Δ_k f − (first-order part of ℳ) f] / f at the point.
/// The conjugation leaves a pure multiplication operator exactly when these
/// agree (and then they equal (ρ,ρ)_k).
pub fn residual_potentials(
    tests: &[SparsePoly],
    point: &ChamberPoint,
    k0q: &BigRational,
) -> Result<Vec<f64>, GaugeError> {
    let k0 = rational_to_f64(k0q);
    let delta = delta_k_jet(point, k0);
    tests
        .iter()
        .map(|f| {
            let (fj, _) = poly_jet(f, k0q, point)?;
            let conj = apply_sl(&delta.mul(&fj), point, k0, PotentialConvention::GroundState)
                / delta.value;
            let rest = conj - laplacian_k(&fj, point.n, k0) - m_first_order(&fj, point, k0);
            Ok(rest / fj.value)
        })
        .collect()
}

/// Three linearly independent, positive-on-the-chamber test polynomials.
pub fn default_test_functions(n: usize, m: usize) -> Vec<SparsePoly> {
    use crate::coeffs::RatK;
    (0..3u32)
        .map(|a| {
            let exp: Vec<u32> = (0..(n + m) as u32).map(|v| (a + v) % 3).collect();
            let mut f = SparsePoly::constant(n, m, RatK::from_int(1 + a as i64));
            f.add_term(exp, RatK::from_int(2));
            if n + m > 0 {
                let mut lin = vec![0; n + m];
                lin[(a as usize) % (n + m)] = a + 1;
                f.add_term(lin, RatK::ratio(1, 3));
            }
            f
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pt(n: usize, m: usize, t: &[f64]) -> ChamberPoint {
        ChamberPoint::new(n, m, t.to_vec()).unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_k(&pt(1, 0, &[0.7]), 2.0), 1.0);
        let d = delta_k(&pt(1, 1, &[1.0, 0.0]), 2.0);
        assert!((d - 1.0 / (2.0 * 0.5f64.sinh())).abs() < 1e-12);
        assert!((d - 0.959517).abs() < 1e-6);
        let d = delta_k(&pt(2, 0, &[1.0, 0.0]), 1.0);
        assert!((d - 1.042190).abs() < 1e-6);
    }

    #[test]
    fn points_are_validated() {
        assert_eq!(
            ChamberPoint::new(1, 1, vec![0.0, 1.0]),
            Err(GaugeError::Unordered)
        );
        assert!(matches!(
            ChamberPoint::new(2, 0, vec![1.0, 1.0]),
            Err(GaugeError::Singular(0, 1))
        ));
        assert!(matches!(
            ChamberPoint::new(2, 0, vec![1.0]),
            Err(GaugeError::PointLength { .. })
        ));
    }

    #[test]
    fn jets_match_finite_differences() {
        let point = pt(2, 1, &[2.0, 1.3, 0.5]);
        let jet = delta_k_jet(&point, 1.5);
        let h = 1e-4;
        for a in 0..3 {
            let mut up = point.t.clone();
            let mut dn = point.t.clone();
            up[a] += h;
            dn[a] -= h;
            let fu = delta_k(&pt(2, 1, &up), 1.5);
            let fd = delta_k(&pt(2, 1, &dn), 1.5);
            assert!(((fu - fd) / (2.0 * h) - jet.grad[a]).abs() < 1e-6);
            let second = (fu - 2.0 * jet.value + fd) / (h * h);
            assert!((second - jet.hess_at(a, a)).abs() < 1e-5);
        }
        for i in 0..3 {
            for j in 0..3 {
                assert!((jet.hess_at(i, j) - jet.hess_at(j, i)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sl_of_constant_without_roots() {
        let one = Jet2::constant(1, 1.0);
        assert_eq!(
            apply_sl(
                &one,
                &pt(1, 0, &[0.4]),
                1.5,
                PotentialConvention::GroundState
            ),
            0.0
        );
    }

    #[test]
    fn ground_state_identity() {
        for (n, m) in [(1, 1), (2, 0), (2, 1), (1, 2), (2, 2), (3, 2)] {
            for k0 in [q(1, 2), q(1, 1), q(3, 2), q(7, 3)] {
                let kf = rational_to_f64(&k0);
                let rho = rational_to_f64(&rho_norm(n, m).specialize(&k0).unwrap());
                for point in sample_points(n, m, 4, 11).unwrap() {
                    let d = delta_k_jet(&point, kf);
                    let sl = apply_sl(&d, &point, kf, PotentialConvention::GroundState);
                    assert!(
                        (sl - rho * d.value).abs() <= 1e-8 * d.value.abs(),
                        "({n},{m}) k={k0}"
                    );
                }
            }
        }
    }

    #[test]
    fn printed_r22_sign_breaks_ground_state() {
        let k0 = 1.5;
        let point = sample_points(1, 2, 1, 3).unwrap().remove(0);
        let rho = rational_to_f64(&rho_norm(1, 2).specialize(&q(3, 2)).unwrap());
        let d = delta_k_jet(&point, k0);
        let sl = apply_sl(&d, &point, k0, PotentialConvention::AsPrinted);
        assert!((sl - rho * d.value).abs() > 1e-3 * d.value.abs());
    }

    #[test]
    fn first_eigenfunction_at_one_one() {
        let k0 = q(3, 2);
        let report = conjugation_check(&"1".parse().unwrap(), 1, 1, &k0, 10, 5, 1e-8).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{report:?}");
        assert_eq!(report.residuals.len(), 10);
        assert!(report.convention_delta.is_none());
    }

    #[test]
    fn check_examples() {
        let empty = Partition::empty();
        for (n, m) in [(1, 1), (2, 2)] {
            let r = conjugation_check(&empty, n, m, &q(7, 3), 5, 1, 1e-8).unwrap();
            assert_eq!(r.verdict, Verdict::Pass);
        }
        let r = conjugation_check(&"2".parse().unwrap(), 2, 0, &q(1, 1), 10, 2, 1e-8).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        let r = conjugation_check(&"2,1".parse().unwrap(), 2, 2, &q(3, 2), 5, 2, 1e-8).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        let delta = r.convention_delta.unwrap();
        assert!(delta.max_residual_as_printed > 1e-3);
    }

    #[test]
    fn check_errors() {
        assert!(matches!(
            conjugation_check(&"2,2".parse().unwrap(), 1, 1, &q(1, 1), 3, 0, 1e-8),
            Err(GaugeError::ZeroPolynomial(..))
        ));
        assert!(matches!(
            conjugation_check(&"1".parse().unwrap(), 1, 1, &q(0, 1), 3, 0, 1e-8),
            Err(GaugeError::Coeff(CoeffError::ZeroK))
        ));
        // pole of the Jack coefficients at k = -1
        assert!(matches!(
            conjugation_check(&"2".parse().unwrap(), 1, 1, &q(-1, 1), 3, 0, 1e-8),
            Err(GaugeError::Coeff(CoeffError::Pole(_)))
        ));
    }

    #[test]
    fn conjugation_is_first_order_free() {
        let k0 = q(7, 3);
        for (n, m) in [(2, 0), (1, 1), (2, 2)] {
            let tests = default_test_functions(n, m);
            let rho = rational_to_f64(&rho_norm(n, m).specialize(&k0).unwrap());
            for point in sample_points(n, m, 3, 9).unwrap() {
                let vals = residual_potentials(&tests, &point, &k0).unwrap();
                for v in &vals {
                    assert!(
                        (v - rho).abs() <= 1e-7 * rho.abs().max(1.0),
                        "{vals:?} vs {rho}"
                    );
                }
            }
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_points(2, 2, 5, 42).unwrap();
        let b = sample_points(2, 2, 5, 42).unwrap();
        assert_eq!(a, b);
        for p in &a {
            assert!(p.t.iter().all(|&x| (0.3..2.5).contains(&x)));
            assert!(p.t.windows(2).all(|w| w[0] - w[1] >= 0.15));
        }
    }

    #[test]
    fn sig15_rounding() {
        assert_eq!(sig15(0.1 + 0.2), 0.3);
        assert_eq!(sig15(0.0), 0.0);
    }
}
