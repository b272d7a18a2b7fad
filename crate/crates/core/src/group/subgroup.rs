use std::collections::BTreeSet;

use super::lattice::Hnf;
use super::{Element, FinAbGroup, GroupHom};
use crate::arith::{is_prime, valuation};
use crate::error::{Error, Result};

/// A subgroup of a [`FinAbGroup`], stored through the reduced Hermite form of
/// its preimage lattice in `Z^k`. Two subgroups are equal iff their stored
/// forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    ambient: FinAbGroup,
    lattice: Vec<Vec<i64>>,
}

fn widen(v: &[i64]) -> Vec<i128> {
    v.iter().map(|&x| x as i128).collect()
}

impl Subgroup {
    pub(crate) fn relation_lattice(g: &FinAbGroup) -> Hnf {
        let diag: Vec<i128> = g.factors().iter().map(|&d| d as i128).collect();
        Hnf::from_diagonal(&diag)
    }

    pub(crate) fn from_hnf(ambient: FinAbGroup, hnf: &Hnf) -> Self {
        let lattice = hnf
            .rows()
            .iter()
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect();
        Subgroup { ambient, lattice }
    }

    pub(crate) fn hnf(&self) -> Hnf {
        Hnf::from_upper(self.lattice.iter().map(|r| widen(r)).collect())
            .expect("stored lattice is already reduced")
    }

    pub(crate) fn lattice_rows(&self) -> &[Vec<i64>] {
        &self.lattice
    }

    /// Subgroup generated by `gens`; every generator must be a canonical
    /// element of `g`.
    pub fn from_generators(g: &FinAbGroup, gens: &[Element]) -> Result<Self> {
        let mut hnf = Self::relation_lattice(g);
        for x in gens {
            g.validate(x)?;
            hnf.insert(&widen(x))?;
        }
        Ok(Self::from_hnf(g.clone(), &hnf))
    }

    pub fn trivial(g: &FinAbGroup) -> Self {
        Self::from_hnf(g.clone(), &Self::relation_lattice(g))
    }

    pub fn full(g: &FinAbGroup) -> Self {
        Self::from_hnf(g.clone(), &Hnf::from_diagonal(&vec![1; g.rank()]))
    }

    pub fn ambient(&self) -> &FinAbGroup {
        &self.ambient
    }

    /// Canonical generators: the nonzero rows of the stored Hermite form.
    pub fn generators(&self) -> Vec<Element> {
        self.lattice
            .iter()
            .map(|r| self.ambient.reduce(r))
            .filter(|e| e.iter().any(|&x| x != 0))
            .collect()
    }

    pub fn index(&self) -> u64 {
        self.lattice.iter().enumerate().map(|(i, r)| r[i] as u64).product()
    }

    pub fn order(&self) -> u64 {
        self.ambient.order() / self.index()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_full(&self) -> bool {
        self.index() == 1
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.ambient.rank() && self.hnf().contains(&widen(x))
    }

    fn check_ambient(&self, other: &Subgroup) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(format!(
                "{} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.generators().iter().all(|g| other.contains(g)))
    }

    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_ambient(other)?;
        let mut hnf = self.hnf();
        for g in other.generators() {
            hnf.insert(&widen(&g))?;
        }
        Ok(Self::from_hnf(self.ambient.clone(), &hnf))
    }

    /// Adds more generators to this subgroup.
    pub fn extend(&self, gens: &[Element]) -> Result<Subgroup> {
        let mut hnf = self.hnf();
        for x in gens {
            self.ambient.validate(x)?;
            hnf.insert(&widen(x))?;
        }
        Ok(Self::from_hnf(self.ambient.clone(), &hnf))
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_ambient(other)?;
        // Lattice spanned by (a + b | a), a in L_self, b in L_other: rows with
        // zero left half carry exactly L_self /\ L_other on the right.
        let k = self.ambient.rank();
        let mut rows = Vec::with_capacity(2 * k);
        for r in &other.lattice {
            let mut row = widen(r);
            row.resize(2 * k, 0);
            rows.push(row);
        }
        for (i, &d) in self.ambient.factors().iter().enumerate() {
            let mut row = vec![0i128; 2 * k];
            row[k + i] = d as i128;
            rows.push(row);
        }
        let mut hnf = Hnf::from_upper(rows)?;
        for r in &self.lattice {
            let mut row = widen(r);
            row.extend(r.iter().map(|&x| x as i128));
            hnf.insert(&row)?;
        }
        let lower: Vec<Vec<i128>> = hnf.rows()[k..].iter().map(|r| r[k..].to_vec()).collect();
        let hnf = Hnf::from_upper(lower)?;
        Ok(Self::from_hnf(self.ambient.clone(), &hnf))
    }

    /// The unique `p`-Sylow subgroup of this subgroup.
    pub fn sylow(&self, p: u64) -> Result<Subgroup> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let order = self.ambient.order();
        let cofactor = order / p.pow(valuation(order, p));
        let gens: Vec<Element> = self
            .generators()
            .iter()
            .map(|g| self.ambient.scale(g, cofactor as i64))
            .collect();
        Subgroup::from_generators(&self.ambient, &gens)
    }

    /// Enumerates the elements. Intended for small subgroups.
    pub fn elements(&self) -> Vec<Element> {
        let g = &self.ambient;
        let mut seen: BTreeSet<Element> = BTreeSet::new();
        seen.insert(g.zero());
        let mut frontier = vec![g.zero()];
        let gens = self.generators();
        while let Some(x) = frontier.pop() {
            for s in &gens {
                let y = g.add(&x, s);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Quotient of the ambient group by this subgroup, with the projection.
    pub fn quotient(&self) -> Result<(FinAbGroup, GroupHom)> {
        let k = self.ambient.rank();
        let pres = FinAbGroup::from_relations(k, &self.lattice)?;
        let proj = GroupHom::new(self.ambient.clone(), pres.group.clone(), pres.generator_images)?;
        Ok((pres.group, proj))
    }
}

/// Every subgroup of `g`, sorted by canonical form. Subgroups are built as
/// joins of cyclic subgroups and deduplicated through their canonical form.
pub fn all_subgroups(g: &FinAbGroup) -> Result<Vec<Subgroup>> {
    let mut cyclic: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    let mut cyclic_subgroups = Vec::new();
    for x in g.elements() {
        let c = Subgroup::from_generators(g, &[x])?;
        if cyclic.insert(c.lattice.clone()) {
            cyclic_subgroups.push(c);
        }
    }
    let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    let trivial = Subgroup::trivial(g);
    seen.insert(trivial.lattice.clone());
    let mut out = vec![trivial.clone()];
    let mut frontier = vec![trivial];
    while let Some(s) = frontier.pop() {
        for c in &cyclic_subgroups {
            let j = s.join(c)?;
            if seen.insert(j.lattice.clone()) {
                out.push(j.clone());
                frontier.push(j);
            }
        }
    }
    out.sort_by(|a, b| a.lattice.cmp(&b.lattice));
    Ok(out)
}

/// The `p`-Sylow subgroup of `g`.
pub fn sylow(g: &FinAbGroup, p: u64) -> Result<Subgroup> {
    Subgroup::full(g).sylow(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn enumerate_span(g: &FinAbGroup, gens: &[Element]) -> BTreeSet<Element> {
        let mut seen = BTreeSet::new();
        seen.insert(g.zero());
        loop {
            let before = seen.len();
            let snapshot: Vec<Element> = seen.iter().cloned().collect();
            for x in &snapshot {
                for s in gens {
                    seen.insert(g.add(x, s));
                }
            }
            if seen.len() == before {
                return seen;
            }
        }
    }

    #[test]
    fn cyclic_twelve() {
        let g = FinAbGroup::cyclic(12).unwrap();
        let h = Subgroup::from_generators(&g, &[vec![4]]).unwrap();
        assert_eq!(h.order(), 3);
        assert_eq!(h.elements(), vec![vec![0], vec![4], vec![8]]);
        assert_eq!(h.index(), 4);
    }

    #[test]
    fn klein_full() {
        let g = FinAbGroup::new(vec![2, 2]).unwrap();
        let h = Subgroup::from_generators(&g, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(h.is_full());
        assert_eq!(h, Subgroup::full(&g));
    }

    #[test]
    fn out_of_range_generator() {
        let g = FinAbGroup::cyclic(5).unwrap();
        assert!(matches!(
            Subgroup::from_generators(&g, &[vec![7]]),
            Err(Error::InvalidElement(_))
        ));
    }

    #[test]
    fn sylow_examples() {
        let g = FinAbGroup::cyclic(12).unwrap();
        assert_eq!(sylow(&g, 2).unwrap().order(), 4);
        assert!(sylow(&g, 5).unwrap().is_trivial());
        assert!(matches!(sylow(&g, 4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn subgroup_counts() {
        let count = |f: Vec<u64>| all_subgroups(&FinAbGroup::new(f).unwrap()).unwrap().len();
        assert_eq!(count(vec![2, 2]), 5);
        assert_eq!(count(vec![12]), 6);
        assert_eq!(count(vec![2, 4]), 8);
        assert_eq!(count(vec![]), 1);
        // Z/p x Z/p has p + 3 subgroups
        assert_eq!(count(vec![3, 3]), 6);
    }

    #[test]
    fn quotient_cyclic_six() {
        let g = FinAbGroup::cyclic(6).unwrap();
        let h = Subgroup::from_generators(&g, &[vec![3]]).unwrap();
        let (q, proj) = h.quotient().unwrap();
        assert_eq!(q.factors(), &[3]);
        assert_eq!(proj.kernel().unwrap(), h);
        let (q, _) = Subgroup::trivial(&g).quotient().unwrap();
        assert_eq!(q, g);
    }

    fn small_group() -> impl Strategy<Value = FinAbGroup> {
        prop_oneof![
            (2u64..40).prop_map(|n| FinAbGroup::new(vec![n]).unwrap()),
            (1u64..6, 1u64..5).prop_map(|(a, b)| FinAbGroup::new(vec![a + 1, (a + 1) * b]).unwrap()),
            (1u64..3, 1u64..3, 1u64..3)
                .prop_map(|(a, b, c)| FinAbGroup::new(vec![2 * a, 2 * a * b, 2 * a * b * c]).unwrap()),
        ]
    }

    fn group_and_gens() -> impl Strategy<Value = (FinAbGroup, Vec<Element>, Vec<Element>)> {
        small_group().prop_flat_map(|g| {
            let factors = g.factors().to_vec();
            let elem = factors
                .iter()
                .map(|&d| 0..d as i64)
                .collect::<Vec<_>>();
            let gens = proptest::collection::vec(elem.clone(), 0..4);
            let gens2 = proptest::collection::vec(elem, 0..4);
            (Just(g), gens, gens2)
        })
    }

    proptest! {
        #[test]
        fn subgroup_agrees_with_enumeration((g, gens, _) in group_and_gens()) {
            let h = Subgroup::from_generators(&g, &gens).unwrap();
            let brute = enumerate_span(&g, &gens);
            prop_assert_eq!(h.order() as usize, brute.len());
            prop_assert_eq!(h.order() * h.index(), g.order());
            for x in g.elements() {
                prop_assert_eq!(h.contains(&x), brute.contains(&x));
            }
            // canonical: regenerating from the canonical generators is a fixed point
            let again = Subgroup::from_generators(&g, &h.generators()).unwrap();
            prop_assert_eq!(&again, &h);
            // and any spanning list of the enumerated set gives the same form
            let all: Vec<Element> = brute.into_iter().collect();
            prop_assert_eq!(Subgroup::from_generators(&g, &all).unwrap(), h);
        }

        #[test]
        fn intersection_and_join((g, a, b) in group_and_gens()) {
            let ha = Subgroup::from_generators(&g, &a).unwrap();
            let hb = Subgroup::from_generators(&g, &b).unwrap();
            let meet = ha.intersection(&hb).unwrap();
            let join = ha.join(&hb).unwrap();
            let ea: BTreeSet<_> = ha.elements().into_iter().collect();
            let eb: BTreeSet<_> = hb.elements().into_iter().collect();
            let brute_meet: Vec<Element> = ea.intersection(&eb).cloned().collect();
            prop_assert_eq!(meet.order() as usize, brute_meet.len());
            for x in &brute_meet {
                prop_assert!(meet.contains(x));
            }
            prop_assert_eq!(join.order() * meet.order(), ha.order() * hb.order());
        }

        #[test]
        fn sylow_is_maximal_p_subgroup((g, gens, _) in group_and_gens(), p in prop_oneof![Just(2u64), Just(3u64), Just(5u64)]) {
            let h = Subgroup::from_generators(&g, &gens).unwrap();
            let s = h.sylow(p).unwrap();
            let brute: Vec<Element> = h
                .elements()
                .into_iter()
                .filter(|x| {
                    let o = g.element_order(x);
                    o == p.pow(valuation(o, p))
                })
                .collect();
            prop_assert_eq!(s.order() as usize, brute.len());
            for x in &brute {
                prop_assert!(s.contains(x));
            }
        }
    }
}
