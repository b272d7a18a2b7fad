//! Characters of `(Z/n)^x / H`, each realized as a map to `Z/order`.

use num_integer::Integer;

use super::AbelianFieldSpec;
use crate::error::Result;
use crate::group::{FinAbGroup, GroupHom};

#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    /// Map `(Z/n)^x -> Z/order`, trivial on `H`, surjective.
    hom: GroupHom,
    order: u64,
    conductor: u64,
}

impl DirichletCharacter {
    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

/// The characters of `Gal(K/Q)` viewed as Dirichlet characters mod `n`.
#[derive(Clone, Debug)]
pub struct DirichletCharacterGroup {
    modulus: u64,
    characters: Vec<DirichletCharacter>,
}

impl DirichletCharacterGroup {
    pub fn new(spec: &AbelianFieldSpec) -> Result<Self> {
        let (quotient, proj) = spec.galois_group()?;
        let exponent = quotient.exponent();
        let mut characters = Vec::with_capacity(quotient.order() as usize);
        // chi_c(x) = sum_i c_i x_i (exponent / d_i) in Z/exponent
        for c in quotient.elements() {
            let weights: Vec<u64> = c
                .iter()
                .zip(quotient.factors())
                .map(|(&ci, &d)| ci as u64 * (exponent / d) % exponent.max(1))
                .collect();
            let order = weights
                .iter()
                .fold(1u64, |acc, &w| acc.lcm(&(exponent / w.gcd(&exponent))));
            let target = FinAbGroup::cyclic(order)?;
            let step = exponent / order;
            let images = proj
                .images()
                .iter()
                .map(|x| {
                    let v: u64 = x
                        .iter()
                        .zip(&weights)
                        .map(|(&xi, &w)| xi as u64 * w % exponent)
                        .sum::<u64>()
                        % exponent.max(1);
                    if target.is_trivial() {
                        Vec::new()
                    } else {
                        vec![(v / step) as i64]
                    }
                })
                .collect();
            let hom = GroupHom::new(spec.units().group().clone(), target, images)?;
            let kernel_field = AbelianFieldSpec::from_subgroup(spec.units().clone(), hom.kernel()?)?;
            characters.push(DirichletCharacter { conductor: kernel_field.conductor()?, hom, order });
        }
        Ok(DirichletCharacterGroup { modulus: spec.modulus(), characters })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn characters(&self) -> &[DirichletCharacter] {
        &self.characters
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    /// Conductors in the order the characters are listed.
    pub fn conductors(&self) -> Vec<u64> {
        self.characters.iter().map(|c| c.conductor).collect()
    }

    pub fn conductor_lcm(&self) -> u64 {
        self.characters.iter().fold(1, |acc, c| acc.lcm(&c.conductor))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::enumerate_abelian_fields;

    fn sorted_conductors(spec: &AbelianFieldSpec) -> Vec<u64> {
        let mut v = spec.character_group().unwrap().conductors();
        v.sort_unstable();
        v
    }

    #[test]
    fn small_character_groups() {
        let gauss = AbelianFieldSpec::new(4, &[1]).unwrap();
        assert_eq!(sorted_conductors(&gauss), vec![1, 4]);
        assert_eq!(sorted_conductors(&AbelianFieldSpec::rationals()), vec![1]);
        let z5 = AbelianFieldSpec::cyclotomic(5).unwrap();
        assert_eq!(sorted_conductors(&z5), vec![1, 5, 5, 5]);
        let orders: Vec<u64> = {
            let mut o: Vec<u64> = z5.character_group().unwrap().characters().iter().map(|c| c.order()).collect();
            o.sort_unstable();
            o
        };
        assert_eq!(orders, vec![1, 2, 4, 4]);
    }

    #[test]
    fn characters_vanish_on_fixing_subgroup() {
        let spec = AbelianFieldSpec::new(63, &[4]).unwrap();
        let chars = spec.character_group().unwrap();
        assert_eq!(chars.len() as u64, spec.degree());
        for chi in chars.characters() {
            for h in spec.fixing_subgroup().elements() {
                assert!(chi.hom().apply(&h).iter().all(|&v| v == 0));
            }
            assert!(chi.hom().is_surjective().unwrap());
        }
    }

    #[test]
    fn conductor_is_lcm_of_character_conductors() {
        for spec in enumerate_abelian_fields(60).unwrap() {
            let chars = spec.character_group().unwrap();
            assert_eq!(chars.len() as u64, spec.degree());
            assert_eq!(chars.conductor_lcm(), spec.conductor().unwrap(), "{spec}");
            assert!(chars.conductors().iter().all(|c| spec.modulus() % c == 0));
        }
    }
}
