//! Root data of gl(n|m), the k-deformed bilinear form, ρ_(k), and exact
//! application of the deformed Calogero–Moser–Sutherland operator ℳ in the
//! multiplicative coordinates x_i, y_j.

use std::ops::{Add, Sub};

use thiserror::Error;

use crate::coeffs::RatK;
use crate::partitions::Partition;
use crate::superjack::super_jack;
use crate::sympoly::{PolyError, SparsePoly, Var};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CmsError {
    #[error("weights live in different spaces: ({0}|{1}) vs ({2}|{3})")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("input not in the deformed symmetric algebra: {pair} leaves a nonzero remainder")]
    NotDivisible { pair: String },
    #[error("P_{0:?} vanishes for (n, m) = ({1}, {2})")]
    ZeroPolynomial(Partition, usize, usize),
    #[error("Theorem 1 violation for {lambda:?} at (n, m) = ({n}, {m}); residual {residual}")]
    NotEigenfunction {
        lambda: Partition,
        n: usize,
        m: usize,
        residual: Box<SparsePoly>,
    },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootSystemData {
    pub n: usize,
    pub m: usize,
}

impl RootSystemData {
    pub fn new(n: usize, m: usize) -> Self {
        RootSystemData { n, m }
    }

    /// ε_i − ε_{i'} for i < i'.
    pub fn even_x_roots(&self) -> Vec<Weight> {
        pairs(self.n)
            .map(|(i, j)| Weight::epsilon(self.n, self.m, i) - Weight::epsilon(self.n, self.m, j))
            .collect()
    }

    /// ε̄_j − ε̄_{j'} for j < j'.
    pub fn even_y_roots(&self) -> Vec<Weight> {
        pairs(self.m)
            .map(|(i, j)| {
                Weight::epsilon_bar(self.n, self.m, i) - Weight::epsilon_bar(self.n, self.m, j)
            })
            .collect()
    }

    /// ε_i − ε̄_j.
    pub fn odd_roots(&self) -> Vec<Weight> {
        let mut out = Vec::with_capacity(self.n * self.m);
        for i in 0..self.n {
            for j in 0..self.m {
                out.push(
                    Weight::epsilon(self.n, self.m, i) - Weight::epsilon_bar(self.n, self.m, j),
                );
            }
        }
        out
    }
}

fn pairs(len: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..len).flat_map(move |i| (i + 1..len).map(move |j| (i, j)))
}

/// Coordinates over ε₁..ε_n, ε̄₁..ε̄_m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    pub n: usize,
    pub m: usize,
    pub coords: Vec<RatK>,
}

impl Weight {
    pub fn zero(n: usize, m: usize) -> Self {
        Weight {
            n,
            m,
            coords: vec![RatK::zero(); n + m],
        }
    }

    pub fn epsilon(n: usize, m: usize, i: usize) -> Self {
        let mut w = Self::zero(n, m);
        w.coords[i] = RatK::one();
        w
    }

    pub fn epsilon_bar(n: usize, m: usize, j: usize) -> Self {
        let mut w = Self::zero(n, m);
        w.coords[n + j] = RatK::one();
        w
    }

    pub fn scale(&self, s: &RatK) -> Weight {
        Weight {
            n: self.n,
            m: self.m,
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }
}

impl Add for Weight {
    type Output = Weight;

    fn add(self, other: Weight) -> Weight {
        assert_eq!((self.n, self.m), (other.n, other.m), "weight spaces differ");
        Weight {
            n: self.n,
            m: self.m,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for Weight {
    type Output = Weight;

    fn sub(self, other: Weight) -> Weight {
        self + other.scale(&RatK::from_int(-1))
    }
}

/// (v, w)_k = Σ_i v_i w_i − k Σ_j v̄_j w̄_j.
pub fn bilinear_k(v: &Weight, w: &Weight) -> Result<RatK, CmsError> {
    if (v.n, v.m) != (w.n, w.m) {
        return Err(CmsError::DimensionMismatch(v.n, v.m, w.n, w.m));
    }
    let even: RatK = (0..v.n).map(|i| &v.coords[i] * &w.coords[i]).sum();
    let odd: RatK = (v.n..v.n + v.m).map(|j| &v.coords[j] * &w.coords[j]).sum();
    Ok(even - RatK::k() * odd)
}

fn half_sum(roots: Vec<Weight>, n: usize, m: usize) -> Weight {
    roots
        .into_iter()
        .fold(Weight::zero(n, m), |a, b| a + b)
        .scale(&RatK::ratio(1, 2))
}

/// ρ_(k) = kρ₁ + (1/k)ρ₂ − ρ₁₂.
pub fn rho_k(n: usize, m: usize) -> Weight {
    let roots = RootSystemData::new(n, m);
    let rho1 = half_sum(roots.even_x_roots(), n, m);
    let rho2 = half_sum(roots.even_y_roots(), n, m);
    let rho12 = half_sum(roots.odd_roots(), n, m);
    rho1.scale(&RatK::k()) + rho2.scale(&(RatK::one() / RatK::k())) - rho12
}

pub fn rho_norm(n: usize, m: usize) -> RatK {
    let rho = rho_k(n, m);
    bilinear_k(&rho, &rho).expect("same space")
}

/// Realization of the odd-root (x_i, y_j) terms of ℳ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MixedTerm {
    /// −(x_i+y_j)/(x_i−y_j)·(x_i∂_{x_i} + k·y_j∂_{y_j}).
    #[default]
    Deformed,
    /// −(x_i+y_j)/(x_i−y_j)·(x_i∂_{x_i} − y_j∂_{y_j}), which does not preserve
    /// the deformed symmetric algebra; kept for diagnostics.
    Undeformed,
}

/// Applies ℳ with the deformed mixed term.
pub fn apply_m(f: &SparsePoly, n: usize, m: usize) -> Result<SparsePoly, CmsError> {
    apply_m_with(f, n, m, MixedTerm::Deformed)
}

/// ℳf = Σ(x_i∂_i)²f − kΣ(y_j∂_j)²f
///      + kΣ_{i<i'} (x_i+x_{i'})/(x_i−x_{i'})·(x_i∂_i − x_{i'}∂_{i'})f
///      − Σ_{j<j'} (y_j+y_{j'})/(y_j−y_{j'})·(y_j∂_j − y_{j'}∂_{j'})f
///      − Σ_{i,j} (x_i+y_j)/(x_i−y_j)·(x_i∂_i + k·y_j∂_j)f,
/// every quotient being an exact polynomial division.
pub fn apply_m_with(
    f: &SparsePoly,
    n: usize,
    m: usize,
    mixed: MixedTerm,
) -> Result<SparsePoly, CmsError> {
    if (f.n(), f.m()) != (n, m) {
        return Err(CmsError::DimensionMismatch(f.n(), f.m(), n, m));
    }
    let k = RatK::k();
    let xs: Vec<SparsePoly> = (0..n).map(|i| f.euler(Var::X(i))).collect();
    let ys: Vec<SparsePoly> = (0..m).map(|j| f.euler(Var::Y(j))).collect();

    let mut out = SparsePoly::zero(n, m);
    for (i, dx) in xs.iter().enumerate() {
        out = out.try_add(&dx.euler(Var::X(i)))?;
    }
    for (j, dy) in ys.iter().enumerate() {
        out = out.try_sub(&dy.euler(Var::Y(j)).scale(&k))?;
    }
    for (i, i2) in pairs(n) {
        let t = pair_term(&xs[i].try_sub(&xs[i2])?, Var::X(i), Var::X(i2))?;
        out = out.try_add(&t.scale(&k))?;
    }
    for (j, j2) in pairs(m) {
        let t = pair_term(&ys[j].try_sub(&ys[j2])?, Var::Y(j), Var::Y(j2))?;
        out = out.try_sub(&t)?;
    }
    for (i, dx) in xs.iter().enumerate() {
        for (j, dy) in ys.iter().enumerate() {
            let first_order = match mixed {
                MixedTerm::Deformed => dx.try_add(&dy.scale(&k))?,
                MixedTerm::Undeformed => dx.try_sub(dy)?,
            };
            let t = pair_term(&first_order, Var::X(i), Var::Y(j))?;
            out = out.try_sub(&t)?;
        }
    }
    Ok(out)
}

/// (a + b)·g / (a − b), with the division required to be exact.
fn pair_term(g: &SparsePoly, a: Var, b: Var) -> Result<SparsePoly, CmsError> {
    let quotient = g
        .div_by_difference(a, b)
        .ok_or_else(|| CmsError::NotDivisible {
            pair: format!("{} - {}", var_label(a), var_label(b)),
        })?;
    let sum = SparsePoly::var(g.n(), g.m(), a).try_add(&SparsePoly::var(g.n(), g.m(), b))?;
    Ok(quotient.try_mul(&sum)?)
}

fn var_label(v: Var) -> String {
    match v {
        Var::X(i) => format!("x{}", i + 1),
        Var::Y(j) => format!("y{}", j + 1),
    }
}

/// Scalar c with g = c·f, if one exists.
pub fn proportionality(g: &SparsePoly, f: &SparsePoly) -> Option<RatK> {
    let (lead_exp, lead) = f.terms().next()?;
    let c = &g.coeff(lead_exp) / lead;
    g.try_sub(&f.scale(&c)).ok()?.is_zero().then_some(c)
}

/// Applies ℳ to P_λ and returns the eigenvalue, failing loudly if ℳP_λ is
/// not proportional to P_λ.
pub fn extract_eigenvalue(lambda: &Partition, n: usize, m: usize) -> Result<RatK, CmsError> {
    let p = super_jack(lambda, n, m).poly;
    eigenvalue_of(lambda, &p, n, m)
}

/// Like [`extract_eigenvalue`] for an already computed P_λ.
pub fn eigenvalue_of(
    lambda: &Partition,
    p: &SparsePoly,
    n: usize,
    m: usize,
) -> Result<RatK, CmsError> {
    if p.is_zero() {
        return Err(CmsError::ZeroPolynomial(lambda.clone(), n, m));
    }
    let mp = apply_m(p, n, m)?;
    match proportionality(&mp, p) {
        Some(c) => Ok(c),
        None => {
            let (e, lead) = p.terms().next().expect("nonzero");
            let c = &mp.coeff(e) / lead;
            Err(CmsError::NotEigenfunction {
                lambda: lambda.clone(),
                n,
                m,
                residual: Box::new(mp.try_sub(&p.scale(&c))?),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_up_to;
    use crate::superjack::{eigenvalue, super_power_sum};
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn root_counts() {
        for (n, m) in [(0, 0), (1, 1), (2, 3), (3, 2), (4, 0)] {
            let r = RootSystemData::new(n, m);
            assert_eq!(r.even_x_roots().len(), n * n.saturating_sub(1) / 2);
            assert_eq!(r.even_y_roots().len(), m * m.saturating_sub(1) / 2);
            assert_eq!(r.odd_roots().len(), n * m);
        }
    }

    #[test]
    fn bilinear_examples() {
        let e1 = Weight::epsilon(1, 1, 0);
        let eb1 = Weight::epsilon_bar(1, 1, 0);
        assert!(bilinear_k(&e1, &e1).unwrap().is_one());
        assert_eq!(bilinear_k(&eb1, &eb1).unwrap(), RatK::poly(&[0, -1]));
        assert!(bilinear_k(&e1, &eb1).unwrap().is_zero());
        assert!(bilinear_k(&e1, &Weight::epsilon(2, 0, 0)).is_err());
    }

    #[test]
    fn root_norms() {
        let r = RootSystemData::new(2, 2);
        let a = &r.even_x_roots()[0];
        let b = &r.even_y_roots()[0];
        let g = &r.odd_roots()[0];
        assert_eq!(bilinear_k(a, a).unwrap(), RatK::from_int(2));
        assert_eq!(bilinear_k(b, b).unwrap(), RatK::poly(&[0, -2]));
        assert_eq!(bilinear_k(g, g).unwrap(), RatK::poly(&[1, -1]));
    }

    #[test]
    fn rho_examples() {
        let r = rho_k(1, 1);
        assert_eq!(r.coords, vec![RatK::ratio(-1, 2), RatK::ratio(1, 2)]);
        assert_eq!(rho_norm(1, 1), RatK::poly(&[1, -1]) * RatK::ratio(1, 4));
        let r = rho_k(2, 0);
        let half_k = RatK::k() * RatK::ratio(1, 2);
        assert_eq!(r.coords, vec![half_k.clone(), -half_k]);
        assert_eq!(rho_norm(2, 0), RatK::poly(&[0, 0, 1]) * RatK::ratio(1, 2));
        assert_eq!(rho_norm(0, 0), RatK::zero());
    }

    #[test]
    fn apply_examples() {
        let s1 = super_power_sum(1, 1, 1).unwrap();
        assert!(apply_m(&s1, 1, 1).unwrap().is_zero());

        let s2 = super_power_sum(2, 1, 1).unwrap();
        let expect = s1
            .try_mul(&s1)
            .unwrap()
            .scale(&RatK::poly(&[0, 2]))
            .try_add(&s2.scale(&RatK::poly(&[2, -2])))
            .unwrap();
        assert_eq!(apply_m(&s2, 1, 1).unwrap(), expect);

        let x = SparsePoly::var(1, 0, Var::X(0));
        assert_eq!(apply_m(&x, 1, 0).unwrap(), x);
        assert!(apply_m(&SparsePoly::one(2, 2), 2, 2).unwrap().is_zero());
    }

    #[test]
    fn undeformed_mixed_term_fails_division() {
        let s1 = super_power_sum(1, 1, 1).unwrap();
        let err = apply_m_with(&s1, 1, 1, MixedTerm::Undeformed).unwrap_err();
        assert!(matches!(err, CmsError::NotDivisible { .. }), "{err}");
        // a block-symmetric polynomial outside the deformed algebra is rejected too
        let plain = SparsePoly::var(1, 1, Var::X(0))
            .try_add(&SparsePoly::var(1, 1, Var::Y(0)))
            .unwrap();
        assert!(matches!(
            apply_m(&plain, 1, 1),
            Err(CmsError::NotDivisible { .. })
        ));
    }

    #[test]
    fn shape_is_checked() {
        assert!(matches!(
            apply_m(&SparsePoly::one(1, 1), 2, 1),
            Err(CmsError::DimensionMismatch(1, 1, 2, 1))
        ));
    }

    #[test]
    fn extracted_eigenvalues() {
        assert_eq!(extract_eigenvalue(&p("1"), 1, 1).unwrap(), RatK::zero());
        assert_eq!(
            extract_eigenvalue(&p("2"), 1, 1).unwrap(),
            RatK::from_int(2)
        );
        assert_eq!(
            extract_eigenvalue(&p("1,1"), 1, 1).unwrap(),
            RatK::poly(&[0, -2])
        );
        assert!(matches!(
            extract_eigenvalue(&p("2,2"), 1, 1),
            Err(CmsError::ZeroPolynomial(..))
        ));
    }

    #[test]
    fn non_eigenfunction_reports_residual() {
        // S^{1,k}·S^{1,k} + S^{2,k} is in the algebra but not an eigenfunction
        let s1 = super_power_sum(1, 1, 1).unwrap();
        let f = s1
            .try_mul(&s1)
            .unwrap()
            .try_add(&super_power_sum(2, 1, 1).unwrap())
            .unwrap();
        let err = eigenvalue_of(&p("2"), &f, 1, 1).unwrap_err();
        match err {
            CmsError::NotEigenfunction { residual, .. } => assert!(!residual.is_zero()),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn classical_spectrum() {
        for n in 1..=3usize {
            for lambda in partitions_up_to(6) {
                if lambda.len() > n {
                    continue;
                }
                let mut expect = RatK::zero();
                for (i, &l) in lambda.parts().iter().enumerate() {
                    let l = l as i64;
                    expect += &RatK::poly(&[l * l, l * (n as i64 - 1 - 2 * i as i64)]);
                }
                assert_eq!(
                    extract_eigenvalue(&lambda, n, 0).unwrap(),
                    expect,
                    "{lambda:?} n={n}"
                );
            }
        }
    }

    #[test]
    fn formula_matches_extraction_small() {
        for (n, m) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            for lambda in partitions_up_to(5) {
                if !lambda.in_hook(n, m) {
                    continue;
                }
                assert_eq!(
                    extract_eigenvalue(&lambda, n, m).unwrap(),
                    eigenvalue(&lambda, n, m),
                    "{lambda:?} ({n},{m})"
                );
            }
        }
    }

    fn algebra_element() -> impl Strategy<Value = SparsePoly> {
        prop::collection::vec((-3i64..=3, 0usize..5), 1..4).prop_map(|terms| {
            let gens = [Partition::empty(), p("1"), p("2"), p("1,1"), p("3")];
            let mut f = SparsePoly::zero(2, 1);
            for (c, g) in terms {
                let mut prod = SparsePoly::one(2, 1);
                for &r in gens[g].parts() {
                    prod = prod.try_mul(&super_power_sum(r, 2, 1).unwrap()).unwrap();
                }
                f = f.try_add(&prod.scale(&RatK::from_int(c))).unwrap();
            }
            f
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn linear_and_structure_preserving(f in algebra_element(), g in algebra_element(), a in -3i64..=3) {
            let a = RatK::from_int(a) + RatK::k();
            let lhs = apply_m(&f.scale(&a).try_add(&g).unwrap(), 2, 1).unwrap();
            let mf = apply_m(&f, 2, 1).unwrap();
            let rhs = mf.scale(&a).try_add(&apply_m(&g, 2, 1).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert!(mf.is_block_symmetric());
            prop_assert!(crate::superjack::quasi_invariant(&mf));
            // degree-preserving: every term of Mf has a degree present in f
            let degs: std::collections::BTreeSet<u32> = f.terms().map(|(e, _)| e.iter().sum()).collect();
            prop_assert!(mf.terms().all(|(e, _)| degs.contains(&e.iter().sum())));
        }
    }
}
