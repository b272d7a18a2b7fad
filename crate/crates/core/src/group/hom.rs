use super::lattice::Hnf;
use super::{Element, FinAbGroup, Subgroup};
use crate::error::{Error, Result};

/// A homomorphism given by the images of the source basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FinAbGroup,
    target: FinAbGroup,
    images: Vec<Element>,
}

impl GroupHom {
    pub fn new(source: FinAbGroup, target: FinAbGroup, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::InvalidHom(format!(
                "{} images for a source of rank {}",
                images.len(),
                source.rank()
            )));
        }
        let images: Vec<Element> = images
            .into_iter()
            .map(|x| {
                if x.len() != target.rank() {
                    return Err(Error::InvalidHom(format!("image {x:?} has wrong length")));
                }
                Ok(target.reduce(&x))
            })
            .collect::<Result<_>>()?;
        for (img, &d) in images.iter().zip(source.factors()) {
            if d % target.element_order(img) != 0 {
                return Err(Error::InvalidHom(format!(
                    "image {img:?} of an order-{d} generator has order {}",
                    target.element_order(img)
                )));
            }
        }
        Ok(GroupHom { source, target, images })
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        let images = (0..g.rank()).map(|i| g.basis_element(i)).collect();
        GroupHom { source: g.clone(), target: g.clone(), images }
    }

    pub fn zero(source: &FinAbGroup, target: &FinAbGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            images: vec![target.zero(); source.rank()],
        }
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, x: &[i64]) -> Element {
        let mut acc = vec![0i128; self.target.rank()];
        for (&c, img) in x.iter().zip(&self.images) {
            for (a, &y) in acc.iter_mut().zip(img) {
                *a += c as i128 * y as i128;
            }
        }
        acc.iter()
            .zip(self.target.factors())
            .map(|(&a, &d)| a.rem_euclid(d as i128) as i64)
            .collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.target != other.source {
            return Err(Error::AmbientMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        let images = self.images.iter().map(|x| other.apply(x)).collect();
        GroupHom::new(self.source.clone(), other.target.clone(), images)
    }

    pub fn image(&self) -> Result<Subgroup> {
        Subgroup::from_generators(&self.target, &self.images)
    }

    pub fn image_of(&self, s: &Subgroup) -> Result<Subgroup> {
        if s.ambient() != &self.source {
            return Err(Error::AmbientMismatch("subgroup is not in the source".into()));
        }
        let gens: Vec<Element> = s.generators().iter().map(|x| self.apply(x)).collect();
        Subgroup::from_generators(&self.target, &gens)
    }

    pub fn kernel(&self) -> Result<Subgroup> {
        self.preimage(&Subgroup::trivial(&self.target))
    }

    /// `{x : self(x) in s}`.
    pub fn preimage(&self, s: &Subgroup) -> Result<Subgroup> {
        if s.ambient() != &self.target {
            return Err(Error::AmbientMismatch("subgroup is not in the target".into()));
        }
        // Columns: target coordinates, then source coordinates. The lattice is
        // spanned by (L_s | 0), (0 | d_i e_i) and (image_i | e_i); vectors with
        // zero target part are exactly the preimage lattice.
        let l = self.target.rank();
        let k = self.source.rank();
        let mut rows: Vec<Vec<i128>> = Vec::with_capacity(l + k);
        for r in s.lattice_rows() {
            let mut row: Vec<i128> = r.iter().map(|&x| x as i128).collect();
            row.resize(l + k, 0);
            rows.push(row);
        }
        for (i, &d) in self.source.factors().iter().enumerate() {
            let mut row = vec![0i128; l + k];
            row[l + i] = d as i128;
            rows.push(row);
        }
        let mut hnf = Hnf::from_upper(rows)?;
        for (i, img) in self.images.iter().enumerate() {
            let mut row: Vec<i128> = img.iter().map(|&x| x as i128).collect();
            row.resize(l + k, 0);
            row[l + i] = 1;
            hnf.insert(&row)?;
        }
        let lower: Vec<Vec<i128>> = hnf.rows()[l..].iter().map(|r| r[l..].to_vec()).collect();
        Ok(Subgroup::from_hnf(self.source.clone(), &Hnf::from_upper(lower)?))
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.kernel()?.is_trivial())
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.image()?.is_full())
    }
}

/// `A x B` in invariant-factor form with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: FinAbGroup,
    pub inj_a: GroupHom,
    pub inj_b: GroupHom,
    pub proj_a: GroupHom,
    pub proj_b: GroupHom,
}

impl DirectProduct {
    /// The element `(a, b)`.
    pub fn pair(&self, a: &[i64], b: &[i64]) -> Element {
        self.group.add(&self.inj_a.apply(a), &self.inj_b.apply(b))
    }
}

pub fn direct_product(a: &FinAbGroup, b: &FinAbGroup) -> Result<DirectProduct> {
    let orders: Vec<u64> = a.factors().iter().chain(b.factors()).copied().collect();
    let pres = FinAbGroup::from_cyclic_orders(&orders)?;
    let ka = a.rank();
    let group = pres.group.clone();
    let inj_a = GroupHom::new(a.clone(), group.clone(), pres.generator_images[..ka].to_vec())?;
    let inj_b = GroupHom::new(b.clone(), group.clone(), pres.generator_images[ka..].to_vec())?;
    let proj_a = GroupHom::new(
        group.clone(),
        a.clone(),
        pres.basis_in_generators.iter().map(|x| a.reduce(&x[..ka])).collect(),
    )?;
    let proj_b = GroupHom::new(
        group.clone(),
        b.clone(),
        pres.basis_in_generators.iter().map(|x| b.reduce(&x[ka..])).collect(),
    )?;
    Ok(DirectProduct { group, inj_a, inj_b, proj_a, proj_b })
}

/// `{(a, b) : f(a) = g(b)}` inside `A x B`.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub product: DirectProduct,
    pub subgroup: Subgroup,
}

pub fn fiber_product(f: &GroupHom, g: &GroupHom) -> Result<FiberProduct> {
    if f.target() != g.target() {
        return Err(Error::AmbientMismatch(format!(
            "fiber product over different targets {} and {}",
            f.target(),
            g.target()
        )));
    }
    let product = direct_product(f.source(), g.source())?;
    let c = f.target();
    let difference: Vec<Element> = (0..product.group.rank())
        .map(|i| {
            let e = product.group.basis_element(i);
            let fa = f.apply(&product.proj_a.apply(&e));
            let gb = g.apply(&product.proj_b.apply(&e));
            c.sub(&fa, &gb)
        })
        .collect();
    let h = GroupHom::new(product.group.clone(), c.clone(), difference)?;
    let subgroup = h.kernel()?;
    Ok(FiberProduct { product, subgroup })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn kernel_and_image_of_multiplication() {
        let g = FinAbGroup::cyclic(12).unwrap();
        let h = GroupHom::new(g.clone(), g.clone(), vec![vec![3]]).unwrap();
        assert_eq!(h.image().unwrap().order(), 4);
        assert_eq!(h.kernel().unwrap().order(), 3);
        assert!(GroupHom::new(g.clone(), FinAbGroup::cyclic(5).unwrap(), vec![vec![1]]).is_err());
    }

    #[test]
    fn fiber_of_identities_is_diagonal() {
        let z2 = FinAbGroup::cyclic(2).unwrap();
        let id = GroupHom::identity(&z2);
        let fp = fiber_product(&id, &id).unwrap();
        assert_eq!(fp.subgroup.order(), 2);
        assert!(fp.subgroup.contains(&fp.product.pair(&[1], &[1])));
        assert!(!fp.subgroup.contains(&fp.product.pair(&[1], &[0])));
    }

    #[test]
    fn fiber_with_trivial_group_is_kernel() {
        let a = FinAbGroup::cyclic(6).unwrap();
        let c = FinAbGroup::cyclic(3).unwrap();
        let f = GroupHom::new(a.clone(), c.clone(), vec![vec![1]]).unwrap();
        let g = GroupHom::zero(&FinAbGroup::trivial(), &c);
        let fp = fiber_product(&f, &g).unwrap();
        assert_eq!(fp.subgroup.order(), 2);
        assert!(fp.subgroup.contains(&fp.product.pair(&[3], &[])));
        assert!(fiber_product(&f, &GroupHom::identity(&a)).is_err());
    }

    #[test]
    fn product_maps() {
        let a = FinAbGroup::cyclic(4).unwrap();
        let b = FinAbGroup::cyclic(6).unwrap();
        let p = direct_product(&a, &b).unwrap();
        assert_eq!(p.group.factors(), &[2, 12]);
        for x in a.elements() {
            for y in b.elements() {
                let z = p.pair(&x, &y);
                assert_eq!(p.proj_a.apply(&z), x);
                assert_eq!(p.proj_b.apply(&z), y);
            }
        }
    }

    fn group_choices() -> impl Strategy<Value = FinAbGroup> {
        prop_oneof![
            Just(vec![12u64]),
            Just(vec![2, 4]),
            Just(vec![2, 2, 6]),
            Just(vec![30]),
            Just(vec![3, 9]),
        ]
        .prop_map(|f| FinAbGroup::new(f).unwrap())
    }

    fn hom_into(tgt: FinAbGroup) -> impl Strategy<Value = GroupHom> {
        group_choices().prop_flat_map(move |src| {
            let per_gen: Vec<_> = src
                .factors()
                .iter()
                .map(|&d| {
                    let tgt = tgt.clone();
                    proptest::collection::vec(0i64..1000, tgt.rank()).prop_map(move |raw| {
                        // scale a random element so its order divides d
                        let x = tgt.reduce(&raw);
                        let o = tgt.element_order(&x);
                        let g = num_integer::gcd(o, d);
                        tgt.scale(&x, (o / g) as i64)
                    })
                })
                .collect();
            let tgt = tgt.clone();
            (Just(src), per_gen).prop_map(move |(s, imgs)| GroupHom::new(s, tgt.clone(), imgs).unwrap())
        })
    }

    fn hom_strategy() -> impl Strategy<Value = GroupHom> {
        group_choices().prop_flat_map(hom_into)
    }

    fn hom_pair() -> impl Strategy<Value = (GroupHom, GroupHom)> {
        group_choices().prop_flat_map(|c| (hom_into(c.clone()), hom_into(c)))
    }

    proptest! {
        #[test]
        fn kernel_image_orders(h in hom_strategy()) {
            let k = h.kernel().unwrap();
            let im = h.image().unwrap();
            prop_assert_eq!(k.order() * im.order(), h.source().order());
            for x in h.source().elements() {
                let in_kernel = h.apply(&x).iter().all(|&c| c == 0);
                prop_assert_eq!(k.contains(&x), in_kernel);
                prop_assert!(im.contains(&h.apply(&x)));
            }
        }

        #[test]
        fn fiber_product_matches_enumeration((f, g) in hom_pair()) {
            let fp = fiber_product(&f, &g).unwrap();
            let mut count = 0u64;
            for a in f.source().elements() {
                for b in g.source().elements() {
                    let inside = f.apply(&a) == g.apply(&b);
                    count += inside as u64;
                    prop_assert_eq!(fp.subgroup.contains(&fp.product.pair(&a, &b)), inside);
                }
            }
            prop_assert_eq!(fp.subgroup.order(), count);
        }
    }
}
