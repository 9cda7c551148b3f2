//! Sparse polynomials in two variable blocks x₁..x_n, y₁..y_m over ℚ(k), and
//! basis-level symmetric functions in the monomial and power-sum bases.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::coeffs::{CoeffError, RatK};
use crate::partitions::{partitions_of, Partition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("block sizes differ: ({0},{1}) vs ({2},{3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("exponent vector has length {got}, expected {expected}")]
    ExponentLength { expected: usize, got: usize },
    #[error("symmetric functions of different weights: {0} vs {1}")]
    WeightMismatch(u32, u32),
    #[error("singular transition matrix in weight {0}")]
    SingularTransition(u32),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// A variable of the two-block polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X(usize),
    Y(usize),
}

pub type Exponent = Vec<u32>;

#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly {
    n: usize,
    m: usize,
    terms: BTreeMap<Exponent, RatK>,
}

impl SparsePoly {
    pub fn zero(n: usize, m: usize) -> Self {
        SparsePoly {
            n,
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, m: usize, c: RatK) -> Self {
        let mut p = Self::zero(n, m);
        p.add_term(vec![0; n + m], c);
        p
    }

    pub fn one(n: usize, m: usize) -> Self {
        Self::constant(n, m, RatK::one())
    }

    pub fn var(n: usize, m: usize, v: Var) -> Self {
        let mut exp = vec![0; n + m];
        exp[Self::index_in(n, m, v)] = 1;
        let mut p = Self::zero(n, m);
        p.add_term(exp, RatK::one());
        p
    }

    pub fn from_terms(
        n: usize,
        m: usize,
        terms: impl IntoIterator<Item = (Exponent, RatK)>,
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero(n, m);
        for (exp, c) in terms {
            if exp.len() != n + m {
                return Err(PolyError::ExponentLength {
                    expected: n + m,
                    got: exp.len(),
                });
            }
            p.add_term(exp, c);
        }
        Ok(p)
    }

    fn index_in(n: usize, m: usize, v: Var) -> usize {
        match v {
            Var::X(i) => {
                assert!(i < n, "x-variable {i} out of range");
                i
            }
            Var::Y(j) => {
                assert!(j < m, "y-variable {j} out of range");
                n + j
            }
        }
    }

    pub fn index(&self, v: Var) -> usize {
        Self::index_in(self.n, self.m, v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &RatK)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u32]) -> RatK {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// Terms in canonical order: total degree descending, then lexicographically
    /// descending exponent.
    pub fn sorted_terms(&self) -> Vec<(&Exponent, &RatK)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, exp: Exponent, c: RatK) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_shape(&self, other: &SparsePoly) -> Result<(), PolyError> {
        if self.n != other.n || self.m != other.m {
            return Err(PolyError::ShapeMismatch(self.n, self.m, other.n, other.m));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.check_shape(other)?;
        let mut out = SparsePoly::zero(self.n, self.m);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> SparsePoly {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &RatK) -> SparsePoly {
        if s.is_zero() {
            return SparsePoly::zero(self.n, self.m);
        }
        self.map_coeffs(|c| c * s)
    }

    fn map_coeffs(&self, f: impl Fn(&RatK) -> RatK) -> SparsePoly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let c = f(c);
                (!c.is_zero()).then(|| (e.clone(), c))
            })
            .collect();
        SparsePoly {
            n: self.n,
            m: self.m,
            terms,
        }
    }

    /// v·∂/∂v, the Euler operator in one variable.
    pub fn euler(&self, v: Var) -> SparsePoly {
        let idx = self.index(v);
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[idx] > 0)
            .map(|(e, c)| (e.clone(), c * &RatK::from_int(e[idx] as i64)))
            .collect();
        SparsePoly {
            n: self.n,
            m: self.m,
            terms,
        }
    }

    /// ∂/∂v.
    pub fn partial(&self, v: Var) -> SparsePoly {
        let idx = self.index(v);
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[idx] > 0)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[idx] -= 1;
                (e2, c * &RatK::from_int(e[idx] as i64))
            })
            .collect();
        SparsePoly {
            n: self.n,
            m: self.m,
            terms,
        }
    }

    /// Substitutes `from := to` (the variable `from` no longer appears).
    pub fn substitute(&self, from: Var, to: Var) -> SparsePoly {
        let (a, b) = (self.index(from), self.index(to));
        let mut out = SparsePoly::zero(self.n, self.m);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[b] += e2[a];
            e2[a] = 0;
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Swaps two variables.
    pub fn swap(&self, a: Var, b: Var) -> SparsePoly {
        let (a, b) = (self.index(a), self.index(b));
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2.swap(a, b);
                (e2, c.clone())
            })
            .collect();
        SparsePoly {
            n: self.n,
            m: self.m,
            terms,
        }
    }

    /// Exact quotient by `(a − b)`, or `None` when the remainder is nonzero.
    ///
    /// Terms are grouped by the exponents of every other variable and by the
    /// total degree in (a, b); each group Σ_s c_s a^s b^{d−s} is divisible iff
    /// Σ_s c_s = 0, with quotient coefficients q_s = Σ_{r>s} c_r.
    pub fn div_by_difference(&self, a: Var, b: Var) -> Option<SparsePoly> {
        let (ia, ib) = (self.index(a), self.index(b));
        let mut groups: BTreeMap<(Exponent, u32), BTreeMap<u32, RatK>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let d = rest[ia] + rest[ib];
            let s = rest[ia];
            rest[ia] = 0;
            rest[ib] = 0;
            groups.entry((rest, d)).or_default().insert(s, c.clone());
        }
        let mut out = SparsePoly::zero(self.n, self.m);
        for ((rest, d), coeffs) in groups {
            let mut acc = RatK::zero();
            // walk s = d, d−1, ..., 0 accumulating the tail sum
            for s in (0..=d).rev() {
                if s < d && !acc.is_zero() {
                    let mut e = rest.clone();
                    e[ia] = s;
                    e[ib] = d - 1 - s;
                    out.add_term(e, acc.clone());
                }
                if let Some(c) = coeffs.get(&s) {
                    acc += c;
                }
            }
            if !acc.is_zero() {
                return None;
            }
        }
        Some(out)
    }

    /// Coefficientwise specialization k := k0; the result has constant
    /// coefficients.
    pub fn specialize_k(&self, k0: &BigRational) -> Result<SparsePoly, CoeffError> {
        let mut out = SparsePoly::zero(self.n, self.m);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), RatK::from_rational(&c.specialize(k0)?));
        }
        Ok(out)
    }

    /// Exact value at a rational point (x-block then y-block) and k = k0.
    pub fn evaluate(
        &self,
        point: &[BigRational],
        k0: &BigRational,
    ) -> Result<BigRational, PolyError> {
        if point.len() != self.n + self.m {
            return Err(PolyError::PointLength {
                expected: self.n + self.m,
                got: point.len(),
            });
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.specialize(k0)?;
            for (x, &p) in point.iter().zip(e) {
                if p > 0 {
                    t *= num_traits::pow(x.clone(), p as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Symmetric under every permutation of the x-block and of the y-block.
    pub fn is_block_symmetric(&self) -> bool {
        let swaps = (1..self.n)
            .map(|i| (Var::X(i - 1), Var::X(i)))
            .chain((1..self.m).map(|j| (Var::Y(j - 1), Var::Y(j))));
        swaps.into_iter().all(|(a, b)| self.swap(a, b) == *self)
    }

    fn var_name(&self, idx: usize) -> String {
        if idx < self.n {
            format!("x{}", idx + 1)
        } else {
            format!("y{}", idx - self.n + 1)
        }
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(v, &p)| {
                    if p == 1 {
                        self.var_name(v)
                    } else {
                        format!("{}^{p}", self.var_name(v))
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly[n={}, m={}]({self})", self.n, self.m)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Exponent,
    coeff: RatK,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    n: usize,
    m: usize,
    terms: Vec<TermJson>,
}

impl Serialize for SparsePoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            n: self.n,
            m: self.m,
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparsePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        SparsePoly::from_terms(
            raw.n,
            raw.m,
            raw.terms.into_iter().map(|t| (t.exp, t.coeff)),
        )
        .map_err(serde::de::Error::custom)
    }
}

/// Monomial symmetric polynomial m_λ(x₁..x_n); zero when ℓ(λ) > n.
pub fn expand_monomial_sym(lambda: &Partition, n: usize) -> SparsePoly {
    let mut out = SparsePoly::zero(n, 0);
    if lambda.len() > n {
        return out;
    }
    let mut padded: Vec<u32> = lambda.parts().to_vec();
    padded.resize(n, 0);
    // distinct permutations, starting from the ascending arrangement
    padded.sort_unstable();
    loop {
        out.add_term(padded.clone(), RatK::one());
        if !next_permutation(&mut padded) {
            break;
        }
    }
    out
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Power sum p_r(x₁..x_n); p_0 is taken as the constant 1.
fn power_sum_poly(r: u32, n: usize) -> SparsePoly {
    if r == 0 {
        return SparsePoly::one(n, 0);
    }
    let mut out = SparsePoly::zero(n, 0);
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = r;
        out.add_term(e, RatK::one());
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Monomial,
    PowerSum,
}

/// A homogeneous symmetric function as coefficients over one basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymFuncVec {
    basis: Basis,
    weight: u32,
    coeffs: BTreeMap<Partition, RatK>,
}

impl SymFuncVec {
    pub fn zero(basis: Basis, weight: u32) -> Self {
        SymFuncVec {
            basis,
            weight,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis_element(basis: Basis, lambda: &Partition) -> Self {
        let mut v = Self::zero(basis, lambda.weight());
        v.coeffs.insert(lambda.clone(), RatK::one());
        v
    }

    pub fn from_coeffs(
        basis: Basis,
        weight: u32,
        coeffs: impl IntoIterator<Item = (Partition, RatK)>,
    ) -> Result<Self, PolyError> {
        let mut v = Self::zero(basis, weight);
        for (p, c) in coeffs {
            v.add_term(p, c)?;
        }
        Ok(v)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, RatK> {
        &self.coeffs
    }

    pub fn get(&self, p: &Partition) -> RatK {
        self.coeffs.get(p).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, p: Partition, c: RatK) -> Result<(), PolyError> {
        if p.weight() != self.weight {
            return Err(PolyError::WeightMismatch(self.weight, p.weight()));
        }
        if c.is_zero() {
            return Ok(());
        }
        let s = self.get(&p) + c;
        if s.is_zero() {
            self.coeffs.remove(&p);
        } else {
            self.coeffs.insert(p, s);
        }
        Ok(())
    }

    pub fn scale(&self, s: &RatK) -> SymFuncVec {
        let mut out = SymFuncVec::zero(self.basis, self.weight);
        if s.is_zero() {
            return out;
        }
        for (p, c) in &self.coeffs {
            out.coeffs.insert(p.clone(), c * s);
        }
        out
    }

    /// Sum in the basis of `self`.
    pub fn try_add(&self, other: &SymFuncVec) -> Result<SymFuncVec, PolyError> {
        if self.weight != other.weight {
            return Err(PolyError::WeightMismatch(self.weight, other.weight));
        }
        let other = other.in_basis(self.basis);
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            out.add_term(p.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &SymFuncVec) -> Result<SymFuncVec, PolyError> {
        self.try_add(&other.scale(&RatK::from_int(-1)))
    }

    /// Product, returned in the power-sum basis.
    pub fn mul(&self, other: &SymFuncVec) -> SymFuncVec {
        let a = self.in_basis(Basis::PowerSum);
        let b = other.in_basis(Basis::PowerSum);
        let mut out = SymFuncVec::zero(Basis::PowerSum, self.weight + other.weight);
        for (pa, ca) in &a.coeffs {
            for (pb, cb) in &b.coeffs {
                let mut parts = pa.parts().to_vec();
                parts.extend_from_slice(pb.parts());
                out.add_term(Partition::from_multiset(parts), ca * cb)
                    .expect("weights add");
            }
        }
        out
    }

    pub fn in_basis(&self, basis: Basis) -> SymFuncVec {
        if basis == self.basis {
            return self.clone();
        }
        let t = transition(self.weight);
        let matrix = match basis {
            Basis::Monomial => &t.p_to_m,
            Basis::PowerSum => &t.m_to_p,
        };
        let mut out = SymFuncVec::zero(basis, self.weight);
        for (src, c) in &self.coeffs {
            let col = t.index[src];
            for (row, target) in t.class.iter().enumerate() {
                let a = &matrix[row][col];
                if !a.is_zero() {
                    out.add_term(target.clone(), a * c).expect("same weight");
                }
            }
        }
        out
    }

    pub fn to_monomial(&self) -> SymFuncVec {
        self.in_basis(Basis::Monomial)
    }

    pub fn to_powersum(&self) -> SymFuncVec {
        self.in_basis(Basis::PowerSum)
    }
}

/// Expansion of p_μ in monomial symmetric functions.
pub fn powersum_to_monomial(mu: &Partition) -> SymFuncVec {
    SymFuncVec::basis_element(Basis::PowerSum, mu).to_monomial()
}

/// Expansion of m_λ in power sums.
pub fn monomial_to_powersum(lambda: &Partition) -> SymFuncVec {
    SymFuncVec::basis_element(Basis::Monomial, lambda).to_powersum()
}

/// Deformed Hall pairing ⟨p_λ, p_μ⟩ = δ_{λμ} z_λ k^{−ℓ(λ)}, extended bilinearly.
pub fn hall_inner_product(f: &SymFuncVec, g: &SymFuncVec) -> Result<RatK, PolyError> {
    if f.weight != g.weight {
        return Err(PolyError::WeightMismatch(f.weight, g.weight));
    }
    let f = f.to_powersum();
    let g = g.to_powersum();
    let mut acc = RatK::zero();
    for (p, c) in &f.coeffs {
        if let Some(d) = g.coeffs.get(p) {
            acc += &(c * d * hall_norm(p));
        }
    }
    Ok(acc)
}

/// ⟨p_λ, p_λ⟩ = z_λ / k^{ℓ(λ)}.
pub fn hall_norm(p: &Partition) -> RatK {
    let z = RatK::from_bigint(BigInt::from(p.z_factor()));
    let mut kl = RatK::one();
    for _ in 0..p.len() {
        kl *= &RatK::k();
    }
    z / kl
}

/// Substitutes each basis element by its polynomial in x₁..x_n.
pub fn realize(v: &SymFuncVec, n: usize) -> SparsePoly {
    let mut out = SparsePoly::zero(n, 0);
    let mut powers: HashMap<u32, SparsePoly> = HashMap::new();
    for (p, c) in &v.coeffs {
        let poly = match v.basis {
            Basis::Monomial => expand_monomial_sym(p, n),
            Basis::PowerSum => {
                let mut acc = SparsePoly::one(n, 0);
                for &r in p.parts() {
                    let pr = powers.entry(r).or_insert_with(|| power_sum_poly(r, n));
                    acc = acc.try_mul(pr).expect("same shape");
                }
                acc
            }
        };
        out = out.try_add(&poly.scale(c)).expect("same shape");
    }
    out
}

/// Transition matrices for one weight class, indexed in reverse-lex order.
pub struct Transition {
    pub class: Vec<Partition>,
    pub index: HashMap<Partition, usize>,
    /// `p_to_m[λ][μ]` is the coefficient of m_λ in p_μ.
    pub p_to_m: Vec<Vec<RatK>>,
    /// `m_to_p[ν][μ]` is the coefficient of p_ν in m_μ.
    pub m_to_p: Vec<Vec<RatK>>,
}

type TransitionSlot = Arc<OnceLock<Arc<Transition>>>;

fn transition_cache() -> &'static Mutex<HashMap<u32, TransitionSlot>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, TransitionSlot>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Transition data for weight `d`, computed once per process.
pub fn transition(d: u32) -> Arc<Transition> {
    let slot = {
        let mut cache = transition_cache()
            .lock()
            .expect("transition cache poisoned");
        cache.entry(d).or_default().clone()
    };
    slot.get_or_init(|| Arc::new(build_transition(d).expect("transition is invertible")))
        .clone()
}

/// Number of ways to assign the parts of μ to rows so that row i sums to λ_i.
fn count_fillings(mu: &[u32], remaining: &mut [u32]) -> u64 {
    let Some((&first, rest)) = mu.split_first() else {
        return u64::from(remaining.iter().all(|&r| r == 0));
    };
    let mut total = 0;
    for i in 0..remaining.len() {
        if remaining[i] >= first {
            remaining[i] -= first;
            total += count_fillings(rest, remaining);
            remaining[i] += first;
        }
    }
    total
}

fn build_transition(d: u32) -> Result<Transition, PolyError> {
    let class = partitions_of(d);
    let size = class.len();
    let index: HashMap<Partition, usize> = class
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let mut a = vec![vec![BigRational::zero(); size]; size];
    for (row, lambda) in class.iter().enumerate() {
        for (col, mu) in class.iter().enumerate() {
            let mut rem = lambda.parts().to_vec();
            let c = count_fillings(mu.parts(), &mut rem);
            a[row][col] = BigRational::from_integer(c.into());
        }
    }
    let inv = invert(&a).ok_or(PolyError::SingularTransition(d))?;
    let to_ratk = |m: &Vec<Vec<BigRational>>| {
        m.iter()
            .map(|r| r.iter().map(RatK::from_rational).collect())
            .collect()
    };
    Ok(Transition {
        p_to_m: to_ratk(&a),
        m_to_p: to_ratk(&inv),
        class,
        index,
    })
}

/// Gauss–Jordan inverse over ℚ.
fn invert(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn mono(n: usize, m: usize, exp: &[u32], c: RatK) -> SparsePoly {
        SparsePoly::from_terms(n, m, [(exp.to_vec(), c)]).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn monomial_symmetric_examples() {
        assert_eq!(
            expand_monomial_sym(&p("1,1"), 2),
            mono(2, 0, &[1, 1], RatK::one())
        );
        let x2 = mono(2, 0, &[2, 0], RatK::one())
            .try_add(&mono(2, 0, &[0, 2], RatK::one()))
            .unwrap();
        assert_eq!(expand_monomial_sym(&p("2"), 2), x2);
        assert!(expand_monomial_sym(&p("1,1,1"), 2).is_zero());
        assert_eq!(expand_monomial_sym(&p("2,1"), 3).len(), 6);
        assert_eq!(
            expand_monomial_sym(&Partition::empty(), 2),
            SparsePoly::one(2, 0)
        );
    }

    #[test]
    fn powersum_to_monomial_examples() {
        let v = powersum_to_monomial(&p("2"));
        assert_eq!(v, SymFuncVec::basis_element(Basis::Monomial, &p("2")));
        let v = powersum_to_monomial(&p("1,1"));
        assert_eq!(v.get(&p("2")), RatK::one());
        assert_eq!(v.get(&p("1,1")), RatK::from_int(2));
        let v = powersum_to_monomial(&p("2,1"));
        assert_eq!(v.get(&p("3")), RatK::one());
        assert_eq!(v.get(&p("2,1")), RatK::one());
        assert_eq!(v.get(&p("1,1,1")), RatK::zero());
    }

    #[test]
    fn monomial_to_powersum_examples() {
        assert_eq!(
            monomial_to_powersum(&p("2")),
            SymFuncVec::basis_element(Basis::PowerSum, &p("2"))
        );
        let v = monomial_to_powersum(&p("1,1"));
        assert_eq!(v.get(&p("1,1")), RatK::ratio(1, 2));
        assert_eq!(v.get(&p("2")), RatK::ratio(-1, 2));
        assert_eq!(
            monomial_to_powersum(&Partition::empty()),
            SymFuncVec::basis_element(Basis::PowerSum, &Partition::empty())
        );
    }

    #[test]
    fn transitions_compose_to_identity() {
        for d in 0..=8 {
            for lambda in partitions_of(d) {
                let back = monomial_to_powersum(&lambda).to_monomial();
                assert_eq!(back, SymFuncVec::basis_element(Basis::Monomial, &lambda));
                let back = powersum_to_monomial(&lambda).to_powersum();
                assert_eq!(back, SymFuncVec::basis_element(Basis::PowerSum, &lambda));
            }
        }
    }

    #[test]
    fn hall_examples() {
        let p1 = SymFuncVec::basis_element(Basis::PowerSum, &p("1"));
        let p2 = SymFuncVec::basis_element(Basis::PowerSum, &p("2"));
        let p11 = SymFuncVec::basis_element(Basis::PowerSum, &p("1,1"));
        assert_eq!(
            hall_inner_product(&p1, &p1).unwrap(),
            RatK::one() / RatK::k()
        );
        assert_eq!(hall_inner_product(&p2, &p11).unwrap(), RatK::zero());
        assert_eq!(
            hall_inner_product(&p11, &p11).unwrap(),
            RatK::from_int(2) / (RatK::k() * RatK::k())
        );
        assert_eq!(
            hall_inner_product(&p1, &p2),
            Err(PolyError::WeightMismatch(1, 2))
        );
    }

    #[test]
    fn realize_examples() {
        let v = realize(&SymFuncVec::basis_element(Basis::PowerSum, &p("2")), 2);
        assert_eq!(v, expand_monomial_sym(&p("2"), 2));
        let v = realize(&SymFuncVec::basis_element(Basis::Monomial, &p("1,1")), 3);
        assert_eq!(v.len(), 3);
        assert!(v
            .terms()
            .all(|(e, c)| c.is_one() && e.iter().sum::<u32>() == 2 && e.iter().all(|&a| a <= 1)));
        let v = realize(&SymFuncVec::basis_element(Basis::PowerSum, &p("1,1")), 1);
        assert_eq!(v, mono(1, 0, &[2], RatK::one()));
    }

    #[test]
    fn evaluate_examples() {
        let kinv = RatK::one() / RatK::k();
        let f = mono(1, 1, &[1, 0], RatK::one())
            .try_sub(&mono(1, 1, &[0, 1], kinv))
            .unwrap();
        assert_eq!(f.evaluate(&[q(2, 1), q(1, 1)], &q(1, 1)).unwrap(), q(1, 1));
        assert_eq!(
            SparsePoly::zero(1, 1)
                .evaluate(&[q(5, 1), q(3, 1)], &q(2, 1))
                .unwrap(),
            q(0, 1)
        );
        let c = RatK::from_int(2) / RatK::poly(&[1, 1]);
        let g = mono(1, 1, &[2, 0], RatK::one())
            .try_sub(&mono(1, 1, &[1, 1], c))
            .unwrap();
        assert_eq!(g.evaluate(&[q(1, 1), q(1, 1)], &q(1, 1)).unwrap(), q(0, 1));
        let pole = mono(1, 0, &[1], RatK::one() / RatK::poly(&[-1, 1]));
        assert!(matches!(
            pole.evaluate(&[q(1, 1)], &q(1, 1)),
            Err(PolyError::Coeff(CoeffError::Pole(_)))
        ));
    }

    #[test]
    fn exact_division_by_difference() {
        // x1^2 - x2^2 = (x1 - x2)(x1 + x2)
        let f = mono(2, 0, &[2, 0], RatK::one())
            .try_sub(&mono(2, 0, &[0, 2], RatK::one()))
            .unwrap();
        let q = f.div_by_difference(Var::X(0), Var::X(1)).unwrap();
        let expect = mono(2, 0, &[1, 0], RatK::one())
            .try_add(&mono(2, 0, &[0, 1], RatK::one()))
            .unwrap();
        assert_eq!(q, expect);
        assert!(mono(2, 0, &[1, 0], RatK::one())
            .div_by_difference(Var::X(0), Var::X(1))
            .is_none());
        // mixed blocks: x1*y1 - y1^2 = y1 (x1 - y1)
        let g = mono(1, 1, &[1, 1], RatK::k())
            .try_sub(&mono(1, 1, &[0, 2], RatK::k()))
            .unwrap();
        assert_eq!(
            g.div_by_difference(Var::X(0), Var::Y(0)).unwrap(),
            mono(1, 1, &[0, 1], RatK::k())
        );
    }

    #[test]
    fn json_shape() {
        let f = mono(1, 1, &[1, 0], RatK::one())
            .try_add(&mono(1, 1, &[0, 0], RatK::from_int(3)))
            .unwrap()
            .try_add(&mono(1, 1, &[0, 1], RatK::one()))
            .unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"n":1,"m":1,"terms":[{"exp":[1,0],"coeff":{"num":["1"],"den":["1"]}},{"exp":[0,1],"coeff":{"num":["1"],"den":["1"]}},{"exp":[0,0],"coeff":{"num":["3"],"den":["1"]}}]}"#
        );
        assert_eq!(serde_json::from_str::<SparsePoly>(&s).unwrap(), f);
        assert!(serde_json::from_str::<SparsePoly>(
            r#"{"n":1,"m":1,"terms":[{"exp":[1],"coeff":{"num":["1"],"den":["1"]}}]}"#
        )
        .is_err());
    }

    fn small_poly() -> impl Strategy<Value = SparsePoly> {
        prop::collection::vec(
            (prop::collection::vec(0u32..3, 3), -3i64..=3, 0i64..=2),
            0..5,
        )
        .prop_map(|terms| {
            SparsePoly::from_terms(
                2,
                1,
                terms.into_iter().map(|(e, c, kp)| {
                    let mut coeff = RatK::from_int(c);
                    for _ in 0..kp {
                        coeff *= &RatK::k();
                    }
                    (e, coeff)
                }),
            )
            .unwrap()
        })
    }

    fn small_sym(d: u32) -> impl Strategy<Value = SymFuncVec> {
        let class = partitions_of(d);
        prop::collection::vec(-3i64..=3, class.len()).prop_map(move |cs| {
            SymFuncVec::from_coeffs(
                Basis::PowerSum,
                d,
                class
                    .iter()
                    .cloned()
                    .zip(cs.into_iter().map(RatK::from_int)),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            let ab = a.try_mul(&b).unwrap();
            prop_assert_eq!(ab.clone(), b.try_mul(&a).unwrap());
            prop_assert_eq!(ab.try_mul(&c).unwrap(), a.try_mul(&b.try_mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.try_mul(&b.try_add(&c).unwrap()).unwrap(),
                ab.try_add(&a.try_mul(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn division_inverts_multiplication(a in small_poly()) {
            let d = SparsePoly::var(2, 1, Var::X(1)).try_sub(&SparsePoly::var(2, 1, Var::Y(0))).unwrap();
            let prod = a.try_mul(&d).unwrap();
            prop_assert_eq!(prod.div_by_difference(Var::X(1), Var::Y(0)).unwrap(), a);
        }

        #[test]
        fn realize_is_multiplicative(u in small_sym(2), v in small_sym(3)) {
            let n = 5;
            let lhs = realize(&u.mul(&v), n);
            let rhs = realize(&u, n).try_mul(&realize(&v, n)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
