use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::cyclotomic::{UnitGroup, MAX_MODULUS};
use crate::error::{Error, Result};
use crate::group::{Element, FinAbGroup, GroupHom, Subgroup};

/// The finite level `Q_p(zeta_{p^F - 1}, zeta_{p^k})`: unramified of degree
/// `F` composed with the `p^k`-th cyclotomic extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalLevel {
    pub p: u64,
    pub unramified_degree: u64,
    pub wild_exponent: u32,
}

impl LocalLevel {
    pub fn new(p: u64, unramified_degree: u64, wild_exponent: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if unramified_degree == 0 {
            return Err(Error::Level("unramified degree must be positive".into()));
        }
        let too_big = p
            .checked_pow(wild_exponent)
            .is_none_or(|q| q > MAX_MODULUS);
        if too_big {
            return Err(Error::Level(format!("p^k too large for p={p}, k={wild_exponent}")));
        }
        if unramified_degree > MAX_MODULUS {
            return Err(Error::Level(format!("unramified degree {unramified_degree} too large")));
        }
        Ok(LocalLevel { p, unramified_degree, wild_exponent })
    }

    pub fn wild_modulus(&self) -> u64 {
        self.p.pow(self.wild_exponent)
    }

    /// `Gal` of the level over `Q_p`, coordinates `(Frobenius power, a)` with
    /// `a` acting as `zeta_{p^k} -> zeta_{p^k}^a`.
    pub fn galois_group(&self) -> Result<LevelGroup> {
        LevelGroup::new(*self)
    }

    /// `Q_p^x / <p^F> (1 + p^k Z_p)`, coordinates `(valuation, unit residue)`.
    pub fn truncated_units(&self) -> Result<TruncatedLocalUnits> {
        LevelGroup::new(*self)
    }

    /// Local reciprocity at this level: `p -> Frobenius`, a unit `u` acts on
    /// `zeta_{p^k}` through `u^{-1}`.
    pub fn reciprocity_map(&self) -> Result<GroupHom> {
        let units = self.truncated_units()?;
        let gal = self.galois_group()?;
        let images = (0..units.group().rank())
            .map(|i| {
                let (v, u) = units.decode(&units.group().basis_element(i));
                gal.encode(v as i64, units.units().inverse_residue(u)?)
            })
            .collect::<Result<_>>()?;
        GroupHom::new(units.group().clone(), gal.group().clone(), images)
    }
}

impl std::fmt::Display for LocalLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(p={}, F={}, k={})", self.p, self.unramified_degree, self.wild_exponent)
    }
}

/// `Z/F x (Z/p^k)^x` in invariant-factor form with explicit coordinates.
/// The same shape carries both the level Galois group and the truncated
/// local units.
#[derive(Clone, Debug)]
pub struct LevelGroup {
    level: LocalLevel,
    units: UnitGroup,
    group: FinAbGroup,
    frobenius: Element,
    unit_embedding: GroupHom,
    /// For each basis element: its `Z/F` coordinate and its unit part.
    split: Vec<(u64, Element)>,
}

pub type TruncatedLocalUnits = LevelGroup;

impl PartialEq for LevelGroup {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level
    }
}

impl Eq for LevelGroup {}

impl LevelGroup {
    fn new(level: LocalLevel) -> Result<Self> {
        let units = UnitGroup::new(level.wild_modulus())?;
        let f = level.unramified_degree;
        let mut orders = vec![f];
        orders.extend_from_slice(units.group().factors());
        let pres = FinAbGroup::from_cyclic_orders(&orders)?;
        let group = pres.group;
        let frobenius = pres.generator_images[0].clone();
        let unit_embedding =
            GroupHom::new(units.group().clone(), group.clone(), pres.generator_images[1..].to_vec())?;
        let split = pres
            .basis_in_generators
            .iter()
            .map(|combo| {
                let j = combo[0].rem_euclid(f as i64) as u64;
                let unit = units.group().reduce(&combo[1..]);
                (j, unit)
            })
            .collect();
        Ok(LevelGroup { level, units, group, frobenius, unit_embedding, split })
    }

    pub fn level(&self) -> LocalLevel {
        self.level
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    /// `(Z/p^k)^x` with its residue encoding.
    pub fn units(&self) -> &UnitGroup {
        &self.units
    }

    /// The element `(1, 1)`: Frobenius, or the uniformizer `p`.
    pub fn frobenius(&self) -> &Element {
        &self.frobenius
    }

    pub fn unit_embedding(&self) -> &GroupHom {
        &self.unit_embedding
    }

    pub fn encode(&self, j: i64, residue: u64) -> Result<Element> {
        let u = self.unit_embedding.apply(&self.units.encode(residue)?);
        Ok(self.group.add(&self.group.scale(&self.frobenius, j), &u))
    }

    /// `(j mod F, residue mod p^k)`.
    pub fn decode(&self, x: &[i64]) -> (u64, u64) {
        let f = self.level.unramified_degree;
        let mut j = 0u64;
        let mut unit = self.units.group().zero();
        for (&c, (sj, su)) in x.iter().zip(&self.split) {
            j = (j + (c.rem_euclid(f as i64) as u64) * sj) % f;
            unit = self.units.group().add(&unit, &self.units.group().scale(su, c));
        }
        (j, self.units.decode(&unit))
    }

    /// `{0} x (Z/p^k)^x`, the inertia part.
    pub fn unit_part(&self) -> Result<Subgroup> {
        self.unit_embedding.image()
    }

    /// `{0} x (units = 1 mod p^i)`; all units for `i = 0`, trivial for `i >= k`.
    pub fn unit_filtration(&self, i: u32) -> Result<Subgroup> {
        if i == 0 {
            return self.unit_part();
        }
        if i >= self.level.wild_exponent {
            return Ok(Subgroup::trivial(&self.group));
        }
        let (_, red) = self.units.reduction_to(self.level.p.pow(i))?;
        self.unit_embedding.image_of(&red.kernel()?)
    }

    /// The projection onto a lower level `(F', k')` with `F' | F`, `k' <= k`.
    pub fn reduction_to(&self, other: &LevelGroup) -> Result<GroupHom> {
        let (a, b) = (self.level, other.level);
        if a.p != b.p
            || a.unramified_degree % b.unramified_degree != 0
            || b.wild_exponent > a.wild_exponent
        {
            return Err(Error::Level(format!("cannot reduce level {a} to {b}")));
        }
        let q = b.wild_modulus();
        let images = (0..self.group.rank())
            .map(|i| {
                let (j, u) = self.decode(&self.group.basis_element(i));
                other.encode(j as i64, u % q)
            })
            .collect::<Result<_>>()?;
        GroupHom::new(self.group.clone(), other.group.clone(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_decode_round_trip() {
        for (p, f, k) in [(2, 1, 0), (2, 3, 3), (3, 2, 2), (5, 4, 1), (7, 1, 2), (2, 6, 4)] {
            let lg = LocalLevel::new(p, f, k).unwrap().galois_group().unwrap();
            let q = p.pow(k);
            assert_eq!(lg.group().order(), f * lg.units().order());
            let mut seen = std::collections::HashSet::new();
            for j in 0..f {
                for u in lg.units().residues() {
                    let x = lg.encode(j as i64, u).unwrap();
                    assert_eq!(lg.decode(&x), (j, u % q.max(1)));
                    seen.insert(x);
                }
            }
            assert_eq!(seen.len() as u64, lg.group().order());
        }
    }

    #[test]
    fn bad_levels() {
        assert!(matches!(LocalLevel::new(4, 1, 1), Err(Error::NotPrime(4))));
        assert!(LocalLevel::new(3, 0, 1).is_err());
        assert!(LocalLevel::new(2, 1, 40).is_err());
    }

    #[test]
    fn reciprocity_is_inverse_on_units() {
        let level = LocalLevel::new(3, 1, 2).unwrap();
        let rec = level.reciprocity_map().unwrap();
        let units = level.truncated_units().unwrap();
        let gal = level.galois_group().unwrap();
        assert!(rec.is_injective().unwrap() && rec.is_surjective().unwrap());
        assert_eq!(gal.group().factors(), &[6]);
        for u in units.units().residues() {
            let img = rec.apply(&units.encode(0, u).unwrap());
            let (j, a) = gal.decode(&img);
            assert_eq!(j, 0);
            assert_eq!(a * u % 9, 1);
        }
    }

    #[test]
    fn reciprocity_unramified() {
        let level = LocalLevel::new(5, 2, 0).unwrap();
        let rec = level.reciprocity_map().unwrap();
        let units = level.truncated_units().unwrap();
        let gal = level.galois_group().unwrap();
        assert_eq!(rec.apply(&units.encode(1, 1).unwrap()), gal.encode(1, 1).unwrap());
        assert_eq!(rec.apply(&units.encode(0, 1).unwrap()), gal.group().zero());
        assert!(rec.kernel().unwrap().is_trivial());
    }

    #[test]
    fn reciprocity_isomorphism_at_many_levels() {
        for p in [2u64, 3, 5, 7] {
            for f in 1..=4 {
                for k in 0..=3 {
                    let rec = LocalLevel::new(p, f, k).unwrap().reciprocity_map().unwrap();
                    assert!(rec.is_injective().unwrap());
                    assert!(rec.is_surjective().unwrap());
                }
            }
        }
    }

    #[test]
    fn unit_filtration_orders() {
        let lg = LocalLevel::new(2, 1, 3).unwrap().galois_group().unwrap();
        let orders: Vec<u64> = (0..4).map(|i| lg.unit_filtration(i).unwrap().order()).collect();
        assert_eq!(orders, vec![4, 4, 2, 1]);
        let lg = LocalLevel::new(3, 2, 2).unwrap().galois_group().unwrap();
        let orders: Vec<u64> = (0..3).map(|i| lg.unit_filtration(i).unwrap().order()).collect();
        assert_eq!(orders, vec![6, 3, 1]);
    }
}
