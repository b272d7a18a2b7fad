//! Abelian number fields as fixed fields `Q(zeta_n)^H`, `H <= (Z/n)^x`.
//!
//! Fields are never embedded; two specs describe the same field exactly when
//! their normalizations (re-expressed at the conductor) coincide.

mod characters;
mod units;

pub use characters::{DirichletCharacter, DirichletCharacterGroup};
pub use units::{UnitGroup, MAX_MODULUS};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::group::{all_subgroups, FinAbGroup, GroupHom, Subgroup};

/// `Q(zeta_n)^H` for a subgroup `H` of `(Z/n)^x`.
#[derive(Clone, Debug)]
pub struct AbelianFieldSpec {
    units: UnitGroup,
    fixing: Subgroup,
}

impl PartialEq for AbelianFieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.units.modulus() == other.units.modulus() && self.fixing == other.fixing
    }
}

impl Eq for AbelianFieldSpec {}

/// On-disk form of a field spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpecFile {
    pub modulus: u64,
    pub subgroup_generators: Vec<i64>,
}

impl AbelianFieldSpec {
    /// The field fixed by the subgroup of `(Z/modulus)^x` generated by the
    /// given residues.
    pub fn new(modulus: u64, generator_residues: &[i64]) -> Result<Self> {
        let units = UnitGroup::new(modulus)?;
        let gens = generator_residues
            .iter()
            .map(|&r| units.encode(r.rem_euclid(modulus as i64) as u64))
            .collect::<Result<Vec<_>>>()?;
        let fixing = Subgroup::from_generators(units.group(), &gens)?;
        Ok(AbelianFieldSpec { units, fixing })
    }

    pub fn from_subgroup(units: UnitGroup, fixing: Subgroup) -> Result<Self> {
        if fixing.ambient() != units.group() {
            return Err(Error::AmbientMismatch("fixing subgroup is not in the unit group".into()));
        }
        Ok(AbelianFieldSpec { units, fixing })
    }

    /// The rationals, `(1, trivial)`.
    pub fn rationals() -> Self {
        AbelianFieldSpec::new(1, &[]).expect("U(1) is valid")
    }

    /// `Q(zeta_n)` itself.
    pub fn cyclotomic(n: u64) -> Result<Self> {
        AbelianFieldSpec::new(n, &[])
    }

    pub fn modulus(&self) -> u64 {
        self.units.modulus()
    }

    pub fn units(&self) -> &UnitGroup {
        &self.units
    }

    pub fn fixing_subgroup(&self) -> &Subgroup {
        &self.fixing
    }

    /// Canonical generators of `H` as residues.
    pub fn fixing_residues(&self) -> Vec<u64> {
        self.fixing
            .generators()
            .iter()
            .map(|x| self.units.decode(x))
            .collect()
    }

    /// Every residue in `H`, sorted.
    pub fn fixing_elements(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.fixing.elements().iter().map(|x| self.units.decode(x)).collect();
        v.sort_unstable();
        v
    }

    pub fn degree(&self) -> u64 {
        self.fixing.index()
    }

    pub fn contains_residue(&self, r: u64) -> Result<bool> {
        Ok(self.fixing.contains(&self.units.encode(r)?))
    }

    /// `Gal(K/Q) = (Z/n)^x / H` with the projection from `(Z/n)^x`.
    pub fn galois_group(&self) -> Result<(FinAbGroup, GroupHom)> {
        self.fixing.quotient()
    }

    /// Kernel of `(Z/n)^x -> (Z/m)^x`, i.e. `Gal(Q(zeta_n)/Q(zeta_m))`.
    fn reduction_kernel(&self, m: u64) -> Result<Subgroup> {
        let (_, red) = self.units.reduction_to(m)?;
        red.kernel()
    }

    /// Smallest `m` with `K` inside `Q(zeta_m)`. Computed one prime at a time:
    /// the exponent of `p` is the least `j` such that `Gal(Q(zeta_n)/Q(zeta_m))`
    /// lies in `H` for `m = n / p^(k-j)`.
    pub fn conductor(&self) -> Result<u64> {
        let n = self.modulus();
        let mut conductor = 1u64;
        for (p, k) in factorize(n) {
            let pk = p.pow(k);
            let mut exponent = k;
            for j in 0..k {
                let m = n / pk * p.pow(j);
                if self.reduction_kernel(m)?.is_subgroup_of(&self.fixing)? {
                    exponent = j;
                    break;
                }
            }
            conductor *= p.pow(exponent);
        }
        Ok(conductor)
    }

    /// Re-expresses the field at modulus equal to its conductor.
    pub fn normalize(&self) -> Result<AbelianFieldSpec> {
        let c = self.conductor()?;
        if c == self.modulus() {
            return Ok(self.clone());
        }
        let (units, red) = self.units.reduction_to(c)?;
        let fixing = red.image_of(&self.fixing)?;
        Ok(AbelianFieldSpec { units, fixing })
    }

    pub fn is_normalized(&self) -> Result<bool> {
        Ok(self.conductor()? == self.modulus())
    }

    pub fn character_group(&self) -> Result<DirichletCharacterGroup> {
        DirichletCharacterGroup::new(self)
    }

    pub fn to_file(&self) -> FieldSpecFile {
        FieldSpecFile {
            modulus: self.modulus(),
            subgroup_generators: self.fixing_residues().into_iter().map(|r| r as i64).collect(),
        }
    }

    pub fn from_file(f: &FieldSpecFile) -> Result<Self> {
        if f.modulus == 0 {
            return Err(Error::InvalidModulus("modulus must be positive".into()));
        }
        AbelianFieldSpec::new(f.modulus, &f.subgroup_generators)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: FieldSpecFile =
            serde_json::from_str(text).map_err(|e| Error::Schema(format!("field spec: {e}")))?;
        AbelianFieldSpec::from_file(&f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("plain data serializes")
    }

    /// Sort key used for deterministic corpus ordering.
    pub fn sort_key(&self) -> (u64, Vec<u64>) {
        (self.modulus(), self.fixing_elements())
    }
}

impl std::fmt::Display for AbelianFieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(n={}, H=<{}>)", self.modulus(), join(&self.fixing_residues()))
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Every abelian field of conductor at most `bound`, each exactly once, in
/// normalized form, sorted by `(conductor, elements of H)`.
pub fn enumerate_abelian_fields(bound: u64) -> Result<Vec<AbelianFieldSpec>> {
    if bound == 0 {
        return Err(Error::InvalidInput("conductor bound must be at least 1".into()));
    }
    let moduli: Vec<u64> = (1..=bound).filter(|n| n % 4 != 2).collect();
    let per_modulus: Vec<Vec<AbelianFieldSpec>> = moduli
        .par_iter()
        .map(|&n| -> Result<Vec<AbelianFieldSpec>> {
            let units = UnitGroup::new(n)?;
            let mut out = Vec::new();
            for h in all_subgroups(units.group())? {
                let spec = AbelianFieldSpec::from_subgroup(units.clone(), h)?;
                if spec.conductor()? == n {
                    out.push(spec);
                }
            }
            out.sort_by_key(|s| s.sort_key());
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_modulus.into_iter().flatten().collect())
}
