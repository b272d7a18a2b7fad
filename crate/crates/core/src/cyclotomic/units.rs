//! `(Z/n)^x` with an explicit residue encoding.

use std::sync::Arc;

use num_integer::Integer;

use crate::arith::{crt_pair, factorize, inv_mod, multiplicative_order, pow_mod};
use crate::error::{Error, Result};
use crate::group::{Element, FinAbGroup, GroupHom};

/// One prime-power factor `q = p^k` of the modulus with its cyclic
/// generators and a discrete-log table indexed by residue mod `q`.
#[derive(Debug)]
struct Component {
    q: u64,
    /// `(residue mod q, order)` for each local generator.
    gens: Vec<(u64, u64)>,
    /// Exponents of the local generators for each unit residue.
    dlog: Vec<Option<[u32; 2]>>,
}

impl Component {
    fn new(p: u64, k: u32) -> Self {
        let q = p.pow(k);
        let mut dlog = vec![None; q as usize];
        let gens = if p == 2 {
            match k {
                1 => Vec::new(),
                2 => vec![(3, 2)],
                _ => vec![(q - 1, 2), (5, q / 4)],
            }
        } else {
            vec![(primitive_root(p, k), q / p * (p - 1))]
        };
        match gens.as_slice() {
            [] => dlog[1 % q as usize] = Some([0, 0]),
            [(g, order)] => {
                let mut x = 1 % q;
                for i in 0..*order {
                    dlog[x as usize] = Some([i as u32, 0]);
                    x = x * g % q;
                }
            }
            [(minus_one, _), (five, order)] => {
                let mut x = 1u64;
                for j in 0..*order {
                    dlog[x as usize] = Some([0, j as u32]);
                    dlog[(x * minus_one % q) as usize] = Some([1, j as u32]);
                    x = x * five % q;
                }
            }
            _ => unreachable!(),
        }
        Component { q, gens, dlog }
    }
}

/// Smallest primitive root modulo `p^k` for odd `p`.
fn primitive_root(p: u64, k: u32) -> u64 {
    let phi_p = p - 1;
    let is_root_mod_p = |g: u64| {
        factorize(phi_p)
            .iter()
            .all(|&(r, _)| pow_mod(g, phi_p / r, p) != 1)
    };
    (2..p.max(3))
        .find(|&g| {
            is_root_mod_p(g) && (k == 1 || pow_mod(g, p - 1, p * p) != 1)
        })
        .unwrap_or(1)
        % p.pow(k)
}

/// Largest modulus accepted; discrete-log tables are stored densely.
pub const MAX_MODULUS: u64 = 1 << 24;

/// The unit group of `Z/n` as a [`FinAbGroup`], with residue encoding.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    modulus: u64,
    group: FinAbGroup,
    generator_residues: Vec<u64>,
    components: Arc<Vec<Component>>,
    /// Image in `group` of each local generator, in component order.
    raw_images: Vec<Element>,
}

impl PartialEq for UnitGroup {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

impl Eq for UnitGroup {}

impl UnitGroup {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModulus("modulus must be positive".into()));
        }
        if n > MAX_MODULUS {
            return Err(Error::InvalidModulus(format!("modulus {n} is too large")));
        }
        let components: Vec<Component> = factorize(n).into_iter().map(|(p, k)| Component::new(p, k)).collect();
        let mut raw_residues = Vec::new();
        let mut raw_orders = Vec::new();
        for c in &components {
            let rest = n / c.q;
            for &(g, order) in &c.gens {
                raw_residues.push(crt_pair(g, c.q, 1 % rest, rest));
                raw_orders.push(order);
            }
        }
        let pres = FinAbGroup::from_cyclic_orders(&raw_orders)?;
        let generator_residues = pres
            .basis_in_generators
            .iter()
            .map(|combo| {
                combo
                    .iter()
                    .zip(raw_residues.iter().zip(&raw_orders))
                    .fold(1 % n, |acc, (&c, (&r, &o))| {
                        let e = c.rem_euclid(o as i64) as u64;
                        crate::arith::mul_mod(acc, pow_mod(r, e, n), n)
                    })
            })
            .collect::<Vec<u64>>();
        let labels = generator_residues.iter().map(|r| r.to_string()).collect();
        Ok(UnitGroup {
            modulus: n,
            group: pres.group.with_labels(labels),
            generator_residues,
            components: Arc::new(components),
            raw_images: pres.generator_images,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    /// Residue of each invariant-factor basis element.
    pub fn generator_residues(&self) -> &[u64] {
        &self.generator_residues
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn encode(&self, residue: u64) -> Result<Element> {
        let n = self.modulus;
        let r = residue % n;
        if r.gcd(&n) != 1 && n > 1 {
            return Err(Error::InvalidElement(format!("{residue} is not a unit mod {n}")));
        }
        let mut acc = self.group.zero();
        let mut offset = 0;
        for c in self.components.iter() {
            let [a, b] = c.dlog[(r % c.q) as usize].expect("units have a logarithm");
            let exps = [a, b];
            for (i, _) in c.gens.iter().enumerate() {
                let img = &self.raw_images[offset + i];
                acc = self.group.add(&acc, &self.group.scale(img, exps[i] as i64));
            }
            offset += c.gens.len();
        }
        Ok(acc)
    }

    pub fn decode(&self, x: &[i64]) -> u64 {
        let n = self.modulus;
        x.iter()
            .zip(&self.generator_residues)
            .zip(self.group.factors())
            .fold(1 % n, |acc, ((&c, &r), &d)| {
                crate::arith::mul_mod(acc, pow_mod(r, c.rem_euclid(d as i64) as u64, n), n)
            })
    }

    /// All unit residues in increasing order.
    pub fn residues(&self) -> Vec<u64> {
        let n = self.modulus;
        (0..n.max(1)).filter(|&r| n == 1 || r.gcd(&n) == 1).collect()
    }

    pub fn inverse_residue(&self, r: u64) -> Result<u64> {
        inv_mod(r % self.modulus, self.modulus)
            .ok_or_else(|| Error::InvalidElement(format!("{r} is not a unit mod {}", self.modulus)))
    }

    pub fn residue_order(&self, r: u64) -> Result<u64> {
        multiplicative_order(r % self.modulus, self.modulus)
            .ok_or_else(|| Error::InvalidElement(format!("{r} is not a unit mod {}", self.modulus)))
    }

    /// The reduction map `(Z/n)^x -> (Z/m)^x` for `m | n`.
    pub fn reduction_to(&self, m: u64) -> Result<(UnitGroup, GroupHom)> {
        if m == 0 || !self.modulus.is_multiple_of(m) {
            return Err(Error::InvalidModulus(format!("{m} does not divide {}", self.modulus)));
        }
        let target = UnitGroup::new(m)?;
        let images = self
            .generator_residues
            .iter()
            .map(|&r| target.encode(r % m))
            .collect::<Result<_>>()?;
        let hom = GroupHom::new(self.group.clone(), target.group.clone(), images)?;
        Ok((target, hom))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::euler_phi;

    #[test]
    fn twelve_is_klein() {
        let u = UnitGroup::new(12).unwrap();
        assert_eq!(u.group().factors(), &[2, 2]);
        assert_eq!(u.residues(), vec![1, 5, 7, 11]);
        // every unit squares to 1
        for r in u.residues() {
            assert_eq!(r * r % 12, 1);
        }
    }

    #[test]
    fn one_is_trivial() {
        let u = UnitGroup::new(1).unwrap();
        assert!(u.group().is_trivial());
        assert_eq!(u.encode(0).unwrap(), Vec::<i64>::new());
        assert!(UnitGroup::new(0).is_err());
    }

    #[test]
    fn eight_generated_by_minus_one_and_five() {
        let u = UnitGroup::new(8).unwrap();
        assert_eq!(u.group().factors(), &[2, 2]);
        let a = u.encode(7).unwrap();
        let b = u.encode(5).unwrap();
        let span = crate::group::Subgroup::from_generators(u.group(), &[a, b]).unwrap();
        assert!(span.is_full());
    }

    #[test]
    fn encode_decode_is_a_group_isomorphism() {
        for n in 1..=200u64 {
            let u = UnitGroup::new(n).unwrap();
            assert_eq!(u.order(), euler_phi(n), "order of U({n})");
            let res = u.residues();
            for &r in &res {
                let x = u.encode(r).unwrap();
                assert_eq!(u.decode(&x), r % n.max(1), "decode(encode({r})) mod {n}");
            }
            if n <= 60 {
                for &a in &res {
                    for &b in &res {
                        let lhs = u.encode(a * b % n).unwrap();
                        let rhs = u.group().add(&u.encode(a).unwrap(), &u.encode(b).unwrap());
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn non_units_rejected() {
        let u = UnitGroup::new(12).unwrap();
        assert!(matches!(u.encode(4), Err(Error::InvalidElement(_))));
    }

    #[test]
    fn reduction_kernel() {
        let u = UnitGroup::new(12).unwrap();
        let (_, red) = u.reduction_to(4).unwrap();
        let ker = red.kernel().unwrap();
        let elems: Vec<u64> = ker.elements().iter().map(|x| u.decode(x)).collect();
        let mut elems = elems;
        elems.sort();
        assert_eq!(elems, vec![1, 5]);
    }
}
