use num_rational::BigRational;
use superjack::cmsop::{apply_m, extract_eigenvalue, rho_norm};
use superjack::coeffs::KValue;
use superjack::jack::{chi_table, jack_in_monomial};
use superjack::partitions::{partitions_of, partitions_up_to};
use superjack::superjack::{eigenvalue, super_jack, super_power_sum};
use superjack::sympoly::{Basis, Var};
use superjack::{Partition, RatK, SparsePoly, SymFuncVec};

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn partition_counts() {
    let counts: Vec<usize> = (0..=8).map(|d| partitions_of(d).len()).collect();
    assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22]);
    assert_eq!(partitions_up_to(6).len(), 30);
    assert_eq!(p("3,1").conjugate(), p("2,1,1"));
    assert_eq!(p("").to_string(), "");
}

#[test]
fn k_parsing() {
    assert_eq!("generic".parse::<KValue>().unwrap(), KValue::Generic);
    assert!("0".parse::<KValue>().is_err());
    assert!("0/3".parse::<KValue>().is_err());
    assert_eq!(
        "7/3".parse::<KValue>().unwrap(),
        KValue::Rational(BigRational::new(7.into(), 3.into()))
    );
}

#[test]
fn jack_degree_two() {
    let t = chi_table(&p("2"));
    assert_eq!(t.get(&p("2")), RatK::poly(&[1]) / RatK::poly(&[1, 1]));
    assert_eq!(t.get(&p("1,1")), RatK::k() / RatK::poly(&[1, 1]));
    let m = jack_in_monomial(&p("2"));
    assert_eq!(m.basis(), Basis::Monomial);
    assert_eq!(m.get(&p("1,1")), RatK::poly(&[0, 2]) / RatK::poly(&[1, 1]));
    let back = SymFuncVec::basis_element(Basis::Monomial, &p("2")).to_powersum();
    assert_eq!(back.get(&p("2")), RatK::one());
}

#[test]
fn box_polynomial_is_super_power_sum() {
    let s1 = super_power_sum(1, 2, 1).unwrap();
    assert_eq!(super_jack(&p("1"), 2, 1).poly, s1);
    assert_eq!(s1.coeff(&[0, 0, 1]), -RatK::one() / RatK::k());
}

#[test]
fn operator_on_small_cases() {
    // ℳ(x1 − y1/k) = 0 in one even and one odd variable
    let f = super_jack(&p("1"), 1, 1).poly;
    assert!(apply_m(&f, 1, 1).unwrap().is_zero());
    assert_eq!(
        extract_eigenvalue(&p("2"), 1, 1).unwrap(),
        RatK::from_int(2)
    );
    assert_eq!(eigenvalue(&p("1,1"), 1, 1), RatK::poly(&[0, -2]));
    assert!(super_jack(&p("2,2"), 1, 1).poly.is_zero());
}

#[test]
fn constants_are_eigenfunctions_with_zero() {
    let one = SparsePoly::one(2, 2);
    assert!(apply_m(&one, 2, 2).unwrap().is_zero());
    assert_eq!(eigenvalue(&Partition::empty(), 2, 2), RatK::zero());
}

#[test]
fn rho_norm_classical() {
    // (ρ,ρ) for n = 2, m = 0 is k²/2
    assert_eq!(rho_norm(2, 0), RatK::poly(&[0, 0, 1]) / RatK::from_int(2));
}

#[test]
fn exact_division_by_difference() {
    let x = SparsePoly::var(2, 0, Var::X(0));
    let y = SparsePoly::var(2, 0, Var::X(1));
    let diff = x.try_sub(&y).unwrap();
    let sq = diff.try_mul(&diff).unwrap();
    assert_eq!(sq.div_by_difference(Var::X(0), Var::X(1)).unwrap(), diff);
    assert!(x.div_by_difference(Var::X(0), Var::X(1)).is_none());
}
