use super::{LocalFieldSpec, LocalLevel};
use crate::arith::{euler_phi, is_prime, multiplicative_order, split_prime_power};
use crate::error::{Error, Result};

/// The field factors of `Q_p[Z/n]`, one entry per factor (with repetition),
/// sorted by level. For `d | n` with `d = p^j d'`, the summand `Q_p(zeta_d)`
/// splits into `phi(d') / ord_{d'}(p)` copies of a field of degree
/// `ord_{d'}(p) phi(p^j)`.
pub fn group_ring_components(p: u64, n: u64) -> Result<Vec<LocalFieldSpec>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidInput("group ring of Z/0".into()));
    }
    let mut out = Vec::new();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let (j, prime_to_p) = split_prime_power(d, p);
        let f = multiplicative_order(p % prime_to_p, prime_to_p).unwrap_or(1);
        let copies = euler_phi(prime_to_p) / f;
        let field = LocalFieldSpec::full_level(LocalLevel::new(p, f, j)?)?.minimize()?;
        out.extend(std::iter::repeat_n(field, copies as usize));
    }
    out.sort_by_key(|c| (c.level(), c.degree()));
    Ok(out)
}
