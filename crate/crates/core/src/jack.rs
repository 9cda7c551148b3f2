//! Classical Jack polynomials P_λ(x; k), monic at m_λ and orthogonal for the
//! deformed Hall pairing, together with their power-sum coefficient tables.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeffs::RatK;
use crate::partitions::{partitions_of, Partition};
use crate::sympoly::{hall_norm, Basis, SymFuncVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JackError {
    #[error("chi table for {0:?} has an entry of the wrong weight")]
    WrongWeight(Partition),
    #[error("chi table for {0:?} is not monic and triangular in the monomial basis")]
    NotTriangular(Partition),
}

/// Power-sum expansion P_λ = Σ_μ χ_μ^λ(k) p_μ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiTable {
    pub lambda: Partition,
    #[serde(rename = "chi")]
    pub entries: BTreeMap<Partition, RatK>,
}

impl ChiTable {
    pub fn get(&self, mu: &Partition) -> RatK {
        self.entries.get(mu).cloned().unwrap_or_default()
    }

    pub fn as_powersum(&self) -> SymFuncVec {
        SymFuncVec::from_coeffs(
            Basis::PowerSum,
            self.lambda.weight(),
            self.entries.iter().map(|(p, c)| (p.clone(), c.clone())),
        )
        .expect("entries share the weight of lambda")
    }

    /// Converts to the monomial basis and checks that the result is monic at
    /// m_λ with support below λ in dominance order.
    pub fn validate(&self) -> Result<(), JackError> {
        let d = self.lambda.weight();
        if self.entries.keys().any(|p| p.weight() != d) {
            return Err(JackError::WrongWeight(self.lambda.clone()));
        }
        let mono = self.as_powersum().to_monomial();
        let monic = mono.get(&self.lambda).is_one();
        let triangular = mono
            .coeffs()
            .keys()
            .all(|mu| mu.dominance_leq(&self.lambda).unwrap_or(false));
        if monic && triangular {
            Ok(())
        } else {
            Err(JackError::NotTriangular(self.lambda.clone()))
        }
    }
}

type ClassSlot = Arc<OnceLock<Arc<Vec<SymFuncVec>>>>;

fn class_cache() -> &'static Mutex<HashMap<u32, ClassSlot>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, ClassSlot>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Monomial-basis Jack polynomials of a whole weight class, in the order of
/// `partitions_of(d)`.
pub fn jack_class(d: u32) -> Arc<Vec<SymFuncVec>> {
    let slot = {
        let mut cache = class_cache().lock().expect("jack cache poisoned");
        cache.entry(d).or_default().clone()
    };
    slot.get_or_init(|| Arc::new(gram_schmidt(d))).clone()
}

/// Gram–Schmidt in the monomial basis, lexicographically increasing, which
/// is a linear extension of dominance order.
fn gram_schmidt(d: u32) -> Vec<SymFuncVec> {
    let class = partitions_of(d);
    let mut done: Vec<(SymFuncVec, SymFuncVec, RatK)> = Vec::with_capacity(class.len());
    for lambda in class.iter().rev() {
        let m_lambda = SymFuncVec::basis_element(Basis::Monomial, lambda);
        let m_lambda_p = m_lambda.to_powersum();
        let mut p_mono = m_lambda;
        for (prev_mono, prev_p, prev_norm) in &done {
            let c = pairing(&m_lambda_p, prev_p)
                .checked_div(prev_norm)
                .expect("Gram-Schmidt norm vanished in Q(k)");
            if !c.is_zero() {
                p_mono = p_mono
                    .try_sub(&prev_mono.scale(&c))
                    .expect("same weight class");
            }
        }
        let p_pow = p_mono.to_powersum();
        let norm = pairing(&p_pow, &p_pow);
        done.push((p_mono, p_pow, norm));
    }
    done.into_iter().rev().map(|(m, _, _)| m).collect()
}

/// Hall pairing of two vectors already in the power-sum basis.
fn pairing(f: &SymFuncVec, g: &SymFuncVec) -> RatK {
    let mut acc = RatK::zero();
    for (p, c) in f.coeffs() {
        let d = g.get(p);
        if !d.is_zero() {
            acc += &(c * &d * hall_norm(p));
        }
    }
    acc
}

/// P_λ in the monomial basis.
pub fn jack_in_monomial(lambda: &Partition) -> SymFuncVec {
    let class = partitions_of(lambda.weight());
    let idx = class
        .iter()
        .position(|p| p == lambda)
        .expect("partition belongs to its weight class");
    jack_class(lambda.weight())[idx].clone()
}

fn chi_store() -> &'static Mutex<HashMap<Partition, Arc<ChiTable>>> {
    static STORE: OnceLock<Mutex<HashMap<Partition, Arc<ChiTable>>>> = OnceLock::new();
    STORE.get_or_init(Default::default)
}

/// Power-sum coefficients of P_λ; consults the in-process store first.
pub fn chi_table(lambda: &Partition) -> Arc<ChiTable> {
    if let Some(t) = chi_store().lock().expect("chi store poisoned").get(lambda) {
        return t.clone();
    }
    let table = Arc::new(compute_chi_table(lambda));
    chi_store()
        .lock()
        .expect("chi store poisoned")
        .entry(lambda.clone())
        .or_insert(table)
        .clone()
}

/// Always recomputes from Gram–Schmidt, ignoring the store.
pub fn compute_chi_table(lambda: &Partition) -> ChiTable {
    let pow = jack_in_monomial(lambda).to_powersum();
    ChiTable {
        lambda: lambda.clone(),
        entries: pow.coeffs().clone(),
    }
}

/// Injects a table (e.g. loaded from disk) into the store after validation.
pub fn seed_chi_table(table: ChiTable) -> Result<(), JackError> {
    table.validate()?;
    chi_store()
        .lock()
        .expect("chi store poisoned")
        .insert(table.lambda.clone(), Arc::new(table));
    Ok(())
}

/// Snapshot of every table held in the store.
pub fn stored_chi_tables() -> Vec<Arc<ChiTable>> {
    let mut v: Vec<_> = chi_store()
        .lock()
        .expect("chi store poisoned")
        .values()
        .cloned()
        .collect();
    v.sort_by(|a, b| a.lambda.cmp(&b.lambda));
    v
}

pub fn clear_chi_store() {
    chi_store().lock().expect("chi store poisoned").clear();
}
