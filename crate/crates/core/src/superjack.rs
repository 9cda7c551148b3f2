//! Deformed power sums S^{p,k} = Σ x_i^p − (1/k) Σ y_j^p and the super-Jack
//! polynomials obtained by substituting them into the power-sum expansion of
//! classical Jack polynomials.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeffs::RatK;
use crate::jack::chi_table;
use crate::partitions::Partition;
use crate::sympoly::{SparsePoly, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuperJackError {
    #[error("deformed power sums are indexed from p = 1, got p = 0")]
    ZeroDegree,
}

/// Σ_{i≤n} x_i^p − (1/k) Σ_{j≤m} y_j^p.
pub fn super_power_sum(p: u32, n: usize, m: usize) -> Result<SparsePoly, SuperJackError> {
    if p == 0 {
        return Err(SuperJackError::ZeroDegree);
    }
    let minus_inv_k = -(RatK::one() / RatK::k());
    let mut out = SparsePoly::zero(n, m);
    for v in 0..n + m {
        let mut e = vec![0; n + m];
        e[v] = p;
        let c = if v < n {
            RatK::one()
        } else {
            minus_inv_k.clone()
        };
        out.add_term(e, c);
    }
    Ok(out)
}

/// Products S^{μ,k} = Π_r S^{μ_r,k}, memoized by partition prefix.
pub struct SuperPowerProducts {
    n: usize,
    m: usize,
    products: HashMap<Partition, SparsePoly>,
}

impl SuperPowerProducts {
    pub fn new(n: usize, m: usize) -> Self {
        let mut products = HashMap::new();
        products.insert(Partition::empty(), SparsePoly::one(n, m));
        SuperPowerProducts { n, m, products }
    }

    pub fn get(&mut self, mu: &Partition) -> &SparsePoly {
        if !self.products.contains_key(mu) {
            let parts = mu.parts();
            let (last, head) = parts.split_last().expect("empty partition is seeded");
            let head = Partition::from_multiset(head.to_vec());
            let prefix = self.get(&head).clone();
            let factor = super_power_sum(*last, self.n, self.m).expect("parts are positive");
            let prod = prefix.try_mul(&factor).expect("same shape");
            self.products.insert(mu.clone(), prod);
        }
        &self.products[mu]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperJack {
    pub lambda: Partition,
    pub n: usize,
    pub m: usize,
    pub poly: SparsePoly,
}

impl SuperJack {
    /// (∂/∂x_i + k ∂/∂y_j) P vanishes on x_i = y_j for every pair (i, j).
    pub fn is_quasi_invariant(&self) -> bool {
        quasi_invariant(&self.poly)
    }

    pub fn is_block_symmetric(&self) -> bool {
        self.poly.is_block_symmetric()
    }
}

pub fn quasi_invariant(f: &SparsePoly) -> bool {
    let k = RatK::k();
    (0..f.n()).all(|i| {
        (0..f.m()).all(|j| {
            let (x, y) = (Var::X(i), Var::Y(j));
            let combo = f
                .partial(x)
                .try_add(&f.partial(y).scale(&k))
                .expect("same shape");
            combo.substitute(x, y).is_zero()
        })
    })
}

/// P_λ(x, y; k) = Σ_μ χ_μ^λ(k) S^{μ,k}.
pub fn super_jack(lambda: &Partition, n: usize, m: usize) -> SuperJack {
    let mut products = SuperPowerProducts::new(n, m);
    super_jack_with(lambda, &mut products)
}

/// Same as [`super_jack`], sharing memoized power-sum products across calls.
pub fn super_jack_with(lambda: &Partition, products: &mut SuperPowerProducts) -> SuperJack {
    let (n, m) = (products.n, products.m);
    let chi = chi_table(lambda);
    let mut poly = SparsePoly::zero(n, m);
    for (mu, c) in &chi.entries {
        let term = products.get(mu).scale(c);
        poly = poly.try_add(&term).expect("same shape");
    }
    SuperJack {
        lambda: lambda.clone(),
        n,
        m,
        poly,
    }
}

/// Closed-form eigenvalue of the deformed operator on P_λ:
/// Σ_i λ_i(λ_i − 1 − 2k(i−1)) + |λ|(1 + k(n−1) − m).
pub fn eigenvalue(lambda: &Partition, n: usize, m: usize) -> RatK {
    let k = RatK::k();
    let mut acc = RatK::zero();
    for (i, &l) in lambda.parts().iter().enumerate() {
        let l = RatK::from_int(l as i64);
        let shift = RatK::from_int(-1) - RatK::from_int(2 * i as i64) * &k;
        acc += &(&l * (&l + &shift));
    }
    let tail = RatK::from_int(1 - m as i64) + RatK::from_int(n as i64 - 1) * &k;
    acc + RatK::from_int(lambda.weight() as i64) * tail
}
