//! Finite abelian groups in invariant-factor coordinates.
//!
//! A group is `Z/d_1 x ... x Z/d_k` with `1 < d_1 | d_2 | ... | d_k`, and an
//! element is its coordinate vector reduced into `[0, d_i)`. Groups given by
//! generators and relations are brought into this shape through the Smith
//! normal form, so two isomorphic groups always carry identical factors.

mod hom;
mod lattice;
mod smith;
mod subgroup;

pub use hom::{direct_product, fiber_product, DirectProduct, FiberProduct, GroupHom};
pub use smith::{smith_normal_form, SmithForm};
pub use subgroup::{all_subgroups, sylow, Subgroup};

use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coordinates of a group element with respect to the invariant-factor basis.
pub type Element = Vec<i64>;

#[derive(Clone, Debug)]
pub struct FinAbGroup {
    factors: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl PartialEq for FinAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for FinAbGroup {}

impl Hash for FinAbGroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.factors.hash(state);
    }
}

/// A group defined by generators and relations, together with the change of
/// coordinates to its invariant-factor form.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub group: FinAbGroup,
    /// Element of `group` represented by each original generator.
    pub generator_images: Vec<Element>,
    /// Each basis element of `group` written as an integer combination of the
    /// original generators.
    pub basis_in_generators: Vec<Vec<i64>>,
}

impl FinAbGroup {
    /// Builds a group from its invariant factors. Entries equal to 1 are
    /// dropped; the rest must form a divisibility chain.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        let factors: Vec<u64> = factors.into_iter().filter(|&d| d != 1).collect();
        if factors.contains(&0) {
            return Err(Error::InfiniteGroup { free_rank: factors.iter().filter(|&&d| d == 0).count() });
        }
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::InvalidInput(format!(
                    "invariant factors {factors:?} do not form a divisibility chain"
                )));
            }
        }
        factors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
            .ok_or(Error::Overflow("group order"))?;
        Ok(FinAbGroup { factors, labels: None })
    }

    pub fn trivial() -> Self {
        FinAbGroup { factors: Vec::new(), labels: None }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InfiniteGroup { free_rank: 1 });
        }
        FinAbGroup::new(vec![n])
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        debug_assert_eq!(labels.len(), self.factors.len());
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Normalizes `<g_1, ..., g_m | relations>` through the Smith form.
    /// Each relation is a row of `m` integers.
    pub fn from_relations(num_generators: usize, relations: &[Vec<i64>]) -> Result<Presentation> {
        let m = num_generators;
        let matrix: Vec<Vec<BigInt>> = relations
            .iter()
            .map(|r| {
                if r.len() != m {
                    return Err(Error::InvalidInput(format!(
                        "relation has {} entries, expected {m}",
                        r.len()
                    )));
                }
                Ok(r.iter().map(|&x| BigInt::from(x)).collect())
            })
            .collect::<Result<_>>()?;
        let snf = smith_normal_form(&matrix, m);
        let mut diag: Vec<BigInt> = snf.diagonal.clone();
        diag.resize(m, BigInt::zero());
        let free_rank = diag.iter().filter(|d| d.is_zero()).count();
        if free_rank > 0 {
            return Err(Error::InfiniteGroup { free_rank });
        }
        let diag: Vec<u64> = diag
            .iter()
            .map(|d| d.to_u64().ok_or(Error::Overflow("invariant factor")))
            .collect::<Result<_>>()?;
        let kept: Vec<usize> = (0..m).filter(|&i| diag[i] > 1).collect();
        let group = FinAbGroup::new(kept.iter().map(|&i| diag[i]).collect())?;

        let generator_images = (0..m)
            .map(|j| {
                kept.iter()
                    .map(|&i| {
                        let d = BigInt::from(diag[i]);
                        snf.right[j][i].mod_floor(&d).to_i64().expect("reduced below a u64 factor")
                    })
                    .collect()
            })
            .collect();
        let basis_in_generators = kept
            .iter()
            .map(|&i| {
                snf.right_inverse[i]
                    .iter()
                    .map(|x| x.to_i64().ok_or(Error::Overflow("basis change")))
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<_>>()?;
        Ok(Presentation {
            group,
            generator_images,
            basis_in_generators,
        })
    }

    /// Direct sum of cyclic groups of the given orders, normalized.
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Presentation> {
        let n = orders.len();
        let relations: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut r = vec![0i64; n];
                r[i] = i64::try_from(orders[i]).map_err(|_| Error::Overflow("cyclic order"))?;
                Ok(r)
            })
            .collect::<Result<_>>()?;
        FinAbGroup::from_relations(n, &relations)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn zero(&self) -> Element {
        vec![0; self.rank()]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    /// Reduces arbitrary integer coordinates into canonical range.
    pub fn reduce(&self, coords: &[i64]) -> Element {
        debug_assert_eq!(coords.len(), self.rank());
        coords
            .iter()
            .zip(&self.factors)
            .map(|(&c, &d)| c.rem_euclid(d as i64))
            .collect()
    }

    /// Checks that `coords` is a canonical element of this group.
    pub fn validate(&self, coords: &[i64]) -> Result<()> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidElement(format!(
                "{coords:?} has {} coordinates, group {:?} has rank {}",
                coords.len(),
                self.factors,
                self.rank()
            )));
        }
        for (&c, &d) in coords.iter().zip(&self.factors) {
            if c < 0 || c as u64 >= d {
                return Err(Error::InvalidElement(format!(
                    "coordinate {c} out of range for factor {d}"
                )));
            }
        }
        Ok(())
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Element {
        let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&sum)
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Element {
        let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.reduce(&diff)
    }

    pub fn neg(&self, a: &[i64]) -> Element {
        let n: Vec<i64> = a.iter().map(|x| -x).collect();
        self.reduce(&n)
    }

    pub fn scale(&self, a: &[i64], k: i64) -> Element {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| ((x as i128 * k as i128).rem_euclid(d as i128)) as i64)
            .collect()
    }

    pub fn element_order(&self, a: &[i64]) -> u64 {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| d / (x.unsigned_abs()).gcd(&d))
            .fold(1u64, |acc, o| acc.lcm(&o))
    }

    /// Every element, in lexicographic coordinate order. Intended for small
    /// groups only.
    pub fn elements(&self) -> Vec<Element> {
        let mut out = vec![Vec::with_capacity(self.rank())];
        for &d in &self.factors {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d as i64).map(move |c| {
                        let mut e = prefix.clone();
                        e.push(c);
                        e
                    })
                })
                .collect();
        }
        out
    }
}

impl std::fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}
