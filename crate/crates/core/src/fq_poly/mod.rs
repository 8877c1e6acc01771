//! Finite fields `F_{p^n}`, the polynomial ring `F_q[T]` and its ideals.

mod field;
mod ideal;
mod irreducible;
mod poly;
mod primefield;

pub use field::{is_prime, prime_factors, prime_power, Embedding, Fe, Field};
pub use ideal::Ideal;
pub use irreducible::{
    distinct_degree_factorization, divisors, irreducible_count, irreducibles, is_irreducible,
    mobius,
};
pub use poly::{substitution_automorphism, Poly};
