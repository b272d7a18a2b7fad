//! Finite abelian extensions of `Q_p`, each sitting inside a finite level
//! `Q_p(zeta_{p^F - 1}, zeta_{p^k})` as the fixed field of a subgroup.

mod components;
mod level;

pub use components::group_ring_components;
pub use level::{LevelGroup, LocalLevel, TruncatedLocalUnits};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::group::{FinAbGroup, GroupHom, Subgroup};

/// The fixed field of `fixing` inside the level extension.
#[derive(Clone, Debug)]
pub struct LocalFieldSpec {
    group: LevelGroup,
    fixing: Subgroup,
}

impl PartialEq for LocalFieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.fixing == other.fixing
    }
}

impl Eq for LocalFieldSpec {}

impl LocalFieldSpec {
    pub fn new(group: LevelGroup, fixing: Subgroup) -> Result<Self> {
        if fixing.ambient() != group.group() {
            return Err(Error::AmbientMismatch("fixing subgroup is not in the level group".into()));
        }
        Ok(LocalFieldSpec { group, fixing })
    }

    /// The whole level extension.
    pub fn full_level(level: LocalLevel) -> Result<Self> {
        let group = level.galois_group()?;
        let fixing = Subgroup::trivial(group.group());
        Ok(LocalFieldSpec { group, fixing })
    }

    /// `Q_p` itself.
    pub fn base(p: u64) -> Result<Self> {
        let level = LocalLevel::new(p, 1, 0)?;
        LocalFieldSpec::full_level(level)
    }

    pub fn p(&self) -> u64 {
        self.group.level().p
    }

    pub fn level(&self) -> LocalLevel {
        self.group.level()
    }

    pub fn level_group(&self) -> &LevelGroup {
        &self.group
    }

    pub fn fixing_subgroup(&self) -> &Subgroup {
        &self.fixing
    }

    pub fn degree(&self) -> u64 {
        self.fixing.index()
    }

    pub fn ramification_index(&self) -> Result<u64> {
        let with_inertia = self.fixing.join(&self.group.unit_part()?)?;
        Ok(with_inertia.order() / self.fixing.order())
    }

    pub fn residue_degree(&self) -> Result<u64> {
        Ok(self.degree() / self.ramification_index()?)
    }

    /// `Gal(L/Q_p)` and the projection from the level group.
    pub fn galois_group(&self) -> Result<(FinAbGroup, GroupHom)> {
        self.fixing.quotient()
    }

    pub fn inertia(&self) -> Result<Subgroup> {
        self.ramification_upper(Ratio::from_integer(0))
    }

    /// The `p`-Sylow subgroup of inertia.
    pub fn wild_inertia(&self) -> Result<Subgroup> {
        self.project(&self.group.unit_filtration(1)?)
    }

    fn project(&self, s: &Subgroup) -> Result<Subgroup> {
        let (_, proj) = self.galois_group()?;
        proj.image_of(s)
    }

    /// Upper-numbering ramification group `G^u` of `Gal(L/Q_p)`.
    pub fn ramification_upper(&self, u: Ratio<i64>) -> Result<Subgroup> {
        let minus_one = Ratio::from_integer(-1);
        if u < minus_one {
            return Err(Error::InvalidRamificationIndex(format!("upper index {u} < -1")));
        }
        if u == minus_one {
            let (q, _) = self.galois_group()?;
            return Ok(Subgroup::full(&q));
        }
        let i = u.ceil().to_integer().max(0);
        let i = u32::try_from(i).unwrap_or(u32::MAX);
        self.project(&self.group.unit_filtration(i)?)
    }

    /// Orders of `G^m` for `m = 0, 1, ..., a` where `a` is the conductor
    /// exponent (so the last entry is 1).
    fn upper_orders(&self) -> Result<Vec<u64>> {
        let mut orders = Vec::new();
        for m in 0..=self.level().wild_exponent {
            let o = self.ramification_upper(Ratio::from_integer(m as i64))?.order();
            orders.push(o);
            if o == 1 {
                break;
            }
        }
        Ok(orders)
    }

    /// Herbrand `phi` of `L/Q_p` at a lower index.
    pub fn herbrand_phi(&self, x: Ratio<i64>) -> Result<Ratio<i64>> {
        if x <= Ratio::from_integer(0) {
            return Ok(x);
        }
        let orders = self.upper_orders()?;
        let e = orders[0] as i64;
        let mut rest = x;
        for (m, &o) in orders.iter().enumerate().skip(1) {
            // psi has slope [G^0 : G^m] on (m - 1, m]
            let slope = Ratio::from_integer(e / o as i64);
            if rest <= slope {
                return Ok(Ratio::from_integer(m as i64 - 1) + rest / slope);
            }
            rest -= slope;
        }
        let a = orders.len() as i64 - 1;
        Ok(Ratio::from_integer(a) + rest / e)
    }

    /// Herbrand `psi`, the inverse of `phi`.
    pub fn herbrand_psi(&self, v: Ratio<i64>) -> Result<Ratio<i64>> {
        if v <= Ratio::from_integer(0) {
            return Ok(v);
        }
        let orders = self.upper_orders()?;
        let e = orders[0] as i64;
        let mut acc = Ratio::from_integer(0);
        for (m, &o) in orders.iter().enumerate().skip(1) {
            let lo = Ratio::from_integer(m as i64 - 1);
            let slope = Ratio::from_integer(e / o as i64);
            if v <= lo + 1 {
                return Ok(acc + (v - lo) * slope);
            }
            acc += slope;
        }
        let a = Ratio::from_integer(orders.len() as i64 - 1);
        Ok(acc + (v - a) * e)
    }

    /// Lower-numbering ramification group `G_i = G^{phi(i)}`.
    pub fn ramification_lower(&self, i: i64) -> Result<Subgroup> {
        if i < -1 {
            return Err(Error::InvalidRamificationIndex(format!("lower index {i} < -1")));
        }
        let u = self.herbrand_phi(Ratio::from_integer(i))?;
        self.ramification_upper(u)
    }

    /// Integers `m >= 0` with `G^m != G^{m+1}`.
    pub fn upper_jumps(&self) -> Result<Vec<i64>> {
        let orders = self.upper_orders()?;
        Ok((0..orders.len().saturating_sub(1))
            .filter(|&m| orders[m] != orders[m + 1])
            .map(|m| m as i64)
            .collect())
    }

    /// Integers `i >= 0` with `G_i != G_{i+1}`.
    pub fn lower_jumps(&self) -> Result<Vec<i64>> {
        self.upper_jumps()?
            .into_iter()
            .map(|u| {
                let l = self.herbrand_psi(Ratio::from_integer(u))?;
                debug_assert!(l.is_integer());
                Ok(l.to_integer())
            })
            .collect()
    }

    /// Artin conductor exponent: least `a` with `G^a` trivial.
    pub fn conductor_exponent(&self) -> Result<u32> {
        Ok(self.upper_orders()?.len() as u32 - 1)
    }

    /// `p^a` for the conductor exponent `a`.
    pub fn conductor(&self) -> Result<u64> {
        Ok(self.p().pow(self.conductor_exponent()?))
    }

    /// Preimage of the fixing subgroup under reciprocity.
    pub fn norm_group(&self) -> Result<Subgroup> {
        self.level().reciprocity_map()?.preimage(&self.fixing)
    }

    /// Truncated units modulo the norm group, with the projection.
    pub fn underline_d(&self) -> Result<(FinAbGroup, GroupHom)> {
        self.norm_group()?.quotient()
    }

    /// Whether `norm` has index equal to the degree, as local class field
    /// theory demands of the norm group of an abelian extension.
    pub fn is_abelian_consistent(&self, norm: &Subgroup) -> bool {
        norm.index() == self.degree()
    }

    /// The same field at the smallest level containing it: `k` equal to the
    /// conductor exponent and `F` the order of Frobenius (the image of
    /// `(1, 1)`) in the Galois group.
    pub fn minimize(&self) -> Result<LocalFieldSpec> {
        let (q, proj) = self.galois_group()?;
        let f = q.element_order(&proj.apply(self.group.frobenius()));
        let level = LocalLevel::new(self.p(), f, self.conductor_exponent()?)?;
        if level == self.level() {
            return Ok(self.clone());
        }
        let target = level.galois_group()?;
        let red = self.group.reduction_to(&target)?;
        let fixing = red.image_of(&self.fixing)?;
        let out = LocalFieldSpec { group: target, fixing };
        debug_assert_eq!(out.degree(), self.degree());
        Ok(out)
    }

    /// Re-expresses the field at a higher level `(F', k')` with `F | F'`,
    /// `k <= k'`, as the preimage of the fixing subgroup.
    pub fn lift_to(&self, level: LocalLevel) -> Result<LocalFieldSpec> {
        let target = level.galois_group()?;
        let red = target.reduction_to(&self.group)?;
        Ok(LocalFieldSpec { fixing: red.preimage(&self.fixing)?, group: target })
    }
}

impl std::fmt::Display for LocalFieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} fixed by a subgroup of index {}", self.level(), self.degree())
    }
}
