use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::factorize;

/// Integer polynomial, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        IntegerPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntegerPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Coefficients reduced into `[0, p)`.
    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let m = BigInt::from(p);
        self.coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(&m);
                u64::try_from(r).expect("residue below a u64 modulus")
            })
            .collect()
    }
}

impl std::fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            let coeff = if a.is_one() && i > 0 { String::new() } else { a.to_string() };
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{coeff}x")?,
                _ => write!(f, "{coeff}x^{i}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub(crate) fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// `n`-th cyclotomic polynomial from `prod_{d | n} (x^d - 1)^{mu(n/d)}`.
pub fn cyclotomic_polynomial(n: u64) -> IntegerPolynomial {
    let mut num = vec![BigInt::one()];
    let mut den = vec![BigInt::one()];
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let m = n / d;
        let f = factorize(m);
        if f.iter().any(|&(_, k)| k > 1) {
            continue;
        }
        let mut term = vec![BigInt::zero(); d as usize + 1];
        term[0] = BigInt::from(-1);
        term[d as usize] = BigInt::one();
        if f.len().is_multiple_of(2) {
            num = mul(&num, &term);
        } else {
            den = mul(&den, &term);
        }
    }
    let (q, r) = divrem_monic(&num, &den);
    debug_assert!(r.iter().all(|c| c.is_zero()));
    IntegerPolynomial::new(q)
}

fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Division by a monic polynomial.
pub(crate) fn divrem_monic(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = std::mem::take(&mut r[i]);
        if c.is_zero() {
            continue;
        }
        for j in 0..db {
            r[i - db + j] -= &c * &b[j];
        }
        q[i - db] = c;
    }
    r.truncate(db);
    trim(&mut r);
    (q, r)
}

/// Arithmetic in `Z[x]/(x^n - 1)`, which maps onto `Z[zeta_n]`.
pub(crate) struct GroupRing {
    pub n: usize,
}

impl GroupRing {
    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.n]
    }

    pub fn one(&self) -> Vec<BigInt> {
        let mut v = self.zero();
        v[0] = BigInt::one();
        v
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[(i + j) % self.n] += x * y;
                }
            }
        }
        out
    }

    /// The automorphism `x -> x^s` for a unit `s`.
    pub fn apply(&self, a: &[BigInt], s: u64) -> Vec<BigInt> {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if !x.is_zero() {
                out[(i as u64 * s % self.n as u64) as usize] += x;
            }
        }
        out
    }
}
