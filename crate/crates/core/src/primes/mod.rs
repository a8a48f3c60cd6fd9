//! Primality, integer factorization, prime counting in progressions and
//! the Linnik-type evaluators.

pub mod linnik;
pub mod primality;
pub mod progression;
pub mod sieve;

pub use linnik::{
    evaluate_eta, evaluate_eta_for_modulus, evaluate_l_u, evaluate_nu, LinnikParameters,
};
pub use primality::{factor_bigint, factor_u64, is_prime_u64, is_probable_prime};
pub use progression::{
    check_pi_psi_sandwich, least_prime_in_ap_above, linnik_exponent_scan, prime_in_interval_ap,
    prime_in_interval_residues, psi_qa, APSpec, FoundPrime, Psi, SandwichReport, ScanResult,
    ScanRow,
};
pub use sieve::{pi_qa, pi_qa_direct, pi_qa_sieve, primes_up_to};

/// Euler's totient.
pub fn euler_phi(q: u64) -> u64 {
    assert!(q >= 1, "totient of zero");
    factor_u64(q)
        .iter()
        .fold(q, |acc, &(p, _)| acc / p * (p - 1))
}
