//! Brute-force ground truth that shares nothing with the reconstruction:
//! explicit minimal polynomials, their splitting mod `p`, and discriminants
//! from characters.

mod fp;
mod poly;

pub use poly::{cyclotomic_polynomial, IntegerPolynomial};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::is_prime;
use crate::cyclotomic::AbelianFieldSpec;
use crate::error::{Error, Result};
use crate::oracle::localize;
use poly::{divrem_monic, GroupRing};

pub const DEFAULT_DEGREE_CAP: u64 = 12;

/// The element whose minimal polynomial was taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimitiveElement {
    /// `sum_{h in H} zeta^h`.
    GaussianPeriod,
    /// `prod_{h in H} (t - zeta^h)`, used when the period has repeated
    /// conjugates.
    ShiftedNorm(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPolynomial {
    pub poly: IntegerPolynomial,
    pub element: PrimitiveElement,
}

/// One representative residue per coset of `H` in `(Z/n)^x`.
fn coset_representatives(spec: &AbelianFieldSpec) -> Vec<u64> {
    let n = spec.modulus();
    let h = spec.fixing_elements();
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for s in spec.units().residues() {
        if seen.insert(s) {
            reps.push(s);
            for &x in &h {
                seen.insert(crate::arith::mul_mod(s, x, n.max(1)));
            }
        }
    }
    reps
}

pub fn min_poly(spec: &AbelianFieldSpec) -> Result<IntegerPolynomial> {
    Ok(min_poly_with_cap(spec, DEFAULT_DEGREE_CAP)?.poly)
}

/// `prod_sigma (X - alpha^sigma)` over `Gal(K/Q)`, computed exactly in
/// `Z[zeta_n]`, for the Gaussian period `alpha` when its conjugates are
/// distinct and a shifted norm otherwise.
pub fn min_poly_with_cap(spec: &AbelianFieldSpec, cap: u64) -> Result<MinimalPolynomial> {
    min_poly_from(spec, cap, false)
}

fn min_poly_from(spec: &AbelianFieldSpec, cap: u64, skip_period: bool) -> Result<MinimalPolynomial> {
    if !spec.is_normalized()? {
        return Err(Error::NotNormalized(format!("{spec} is not at its conductor")));
    }
    let degree = spec.degree();
    if degree > cap {
        return Err(Error::DegreeCap { degree, cap });
    }
    let n = spec.modulus();
    let ring = GroupRing { n: n as usize };
    let phi = cyclotomic_polynomial(n);
    let reduce = |v: &[BigInt]| divrem_monic(v, phi.coeffs()).1;
    let reps = coset_representatives(spec);
    let h = spec.fixing_elements();

    let period = h.iter().fold(ring.zero(), |mut acc, &e| {
        acc[e as usize % ring.n] += 1;
        acc
    });
    let shifted_norm = |t: u64| {
        h.iter().fold(ring.one(), |acc, &e| {
            let mut factor = ring.zero();
            factor[0] += BigInt::from(t);
            factor[e as usize % ring.n] -= 1;
            ring.mul(&acc, &factor)
        })
    };
    let candidates = std::iter::once((PrimitiveElement::GaussianPeriod, period))
        .skip(skip_period as usize)
        .chain((1..).map(|t| (PrimitiveElement::ShiftedNorm(t), shifted_norm(t))));
    for (element, alpha) in candidates {
        let conjugates: Vec<Vec<BigInt>> = reps.iter().map(|&s| ring.apply(&alpha, s)).collect();
        let mut reduced: Vec<Vec<BigInt>> = conjugates.iter().map(|c| reduce(c)).collect();
        reduced.sort();
        reduced.dedup();
        if reduced.len() != conjugates.len() {
            continue;
        }
        // coefficients of the product live in Z[x]/(x^n - 1)
        let mut product: Vec<Vec<BigInt>> = vec![ring.one()];
        for c in &conjugates {
            let mut next = vec![ring.zero(); product.len() + 1];
            for (j, coeff) in product.iter().enumerate() {
                for (a, b) in next[j + 1].iter_mut().zip(coeff) {
                    *a += b;
                }
                for (a, b) in next[j].iter_mut().zip(ring.mul(c, coeff)) {
                    *a -= b;
                }
            }
            product = next;
        }
        let coeffs = product
            .iter()
            .map(|c| {
                let r = reduce(c);
                match r.len() {
                    0 => Ok(BigInt::zero()),
                    1 => Ok(r[0].clone()),
                    _ => Err(Error::InvalidInput("conjugate product is not rational".into())),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(MinimalPolynomial { poly: IntegerPolynomial::new(coeffs), element });
    }
    unreachable!("shifted norms are eventually primitive")
}

/// Degrees of the irreducible factors of `poly` over `F_p`.
pub fn factor_degrees_mod_p(poly: &IntegerPolynomial, p: u64) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let f = fp::trim(poly.reduce_mod(p));
    if f.len() != poly.coeffs().len() || f.len() < 2 {
        return Err(Error::RamifiedPrime(p));
    }
    let f = fp::monic(f, p);
    if fp::gcd(&f, &fp::derivative(&f, p), p).len() != 1 {
        return Err(Error::RamifiedPrime(p));
    }
    Ok(fp::distinct_degree_degrees(&f, p))
}

/// `(f, g)` from the Frobenius action on `O_K / p`. The algebra is spanned
/// by the Gaussian periods of all `zeta^a`, and `x -> x^p` fixes a subspace
/// of dimension `g`.
pub fn splitting_by_fixed_space(spec: &AbelianFieldSpec, p: u64) -> Result<(u64, u64)> {
    let n = spec.modulus();
    if n.is_multiple_of(p) {
        return Err(Error::RamifiedInField { p, conductor: n });
    }
    let phi = fp::monic(fp::trim(cyclotomic_polynomial(n).reduce_mod(p)), p);
    let h = spec.fixing_elements();
    let mut basis: Vec<fp::Poly> = Vec::new();
    for a in 0..n {
        let mut eta = vec![0u64; n as usize];
        for &x in &h {
            let i = (a * x % n) as usize;
            eta[i] = (eta[i] + 1) % p;
        }
        let eta = fp::rem(&fp::trim(eta), &phi, p);
        let mut candidate = basis.clone();
        candidate.push(eta.clone());
        if fp::rank(candidate, p) > basis.len() {
            basis.push(eta);
        }
    }
    let d = basis.len() as u64;
    if d != spec.degree() {
        return Err(Error::InvalidInput(format!("periods span dimension {d}, degree is {}", spec.degree())));
    }
    let moved: Vec<fp::Poly> = basis
        .iter()
        .map(|b| fp::sub(&fp::pow_mod(b, p, &phi, p), b, p))
        .collect();
    let g = d - fp::rank(moved, p) as u64;
    Ok((d / g, g))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplittingMethod {
    DistinctDegree,
    FixedSpace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusCheck {
    pub p: u64,
    /// Residue degree and number of primes from the decomposition data.
    pub f: u64,
    pub g: u64,
    /// Factor degrees from the minimal polynomial or the fixed space.
    pub degrees: Vec<u64>,
    pub method: SplittingMethod,
}

impl FrobeniusCheck {
    pub fn ok(&self) -> bool {
        self.degrees.len() as u64 == self.g && self.degrees.iter().all(|&d| d == self.f)
    }
}

/// Splitting of an unramified `p` read off the minimal polynomial, beside
/// the residue degree from `localize`. When `p` divides the index of the
/// polynomial order the Frobenius fixed space is used instead.
pub fn frobenius_check(spec: &AbelianFieldSpec, p: u64) -> Result<FrobeniusCheck> {
    let spec = spec.normalize()?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if spec.modulus() % p == 0 {
        return Err(Error::RamifiedInField { p, conductor: spec.modulus() });
    }
    let loc = localize(&spec, p)?;
    let poly = min_poly(&spec)?;
    let (degrees, method) = match factor_degrees_mod_p(&poly, p) {
        Ok(d) => (d, SplittingMethod::DistinctDegree),
        Err(Error::RamifiedPrime(_)) => {
            let (f, g) = splitting_by_fixed_space(&spec, p)?;
            (vec![f; g as usize], SplittingMethod::FixedSpace)
        }
        Err(e) => return Err(e),
    };
    Ok(FrobeniusCheck { p, f: loc.f, g: loc.g, degrees, method })
}

pub fn frobenius_crosscheck(spec: &AbelianFieldSpec, p: u64) -> Result<bool> {
    Ok(frobenius_check(spec, p)?.ok())
}

/// `|disc K|` as the product of the conductors of the characters of `K`.
pub fn discriminant(spec: &AbelianFieldSpec) -> Result<BigUint> {
    Ok(spec
        .character_group()?
        .conductors()
        .into_iter()
        .fold(BigUint::one(), |acc, c| acc * c))
}
