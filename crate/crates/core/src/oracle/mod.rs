//! Stand-in for the group-theoretic recovery of decomposition data.
//!
//! Given a global field, produce for every small prime exactly the packet
//! of local invariants that the absolute Galois group determines: degrees,
//! inertia, Frobenius, and the local norm quotient. The packets never carry
//! the modulus or the fixing subgroup of the field they came from.

mod datum;

pub use datum::{LocalDatum, OracleDump, ProjectionEntry, UnderlineD};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{crt_pair, is_prime, multiplicative_order, pow_mod, primes_up_to, split_prime_power};
use crate::cyclotomic::AbelianFieldSpec;
use crate::error::{Error, Result};
use crate::group::{Element, GroupHom, Subgroup};
use crate::local::{LevelGroup, LocalFieldSpec, LocalLevel};

/// A field seen from one prime.
#[derive(Clone, Debug)]
pub struct Localization {
    /// The completion, at its minimal level.
    pub local: LocalFieldSpec,
    pub e: u64,
    pub f: u64,
    pub g: u64,
    /// Inertia inside `Gal(K/Q) = (Z/n)^x / H`.
    pub inertia: Subgroup,
    pub decomposition: Subgroup,
    /// A Frobenius lift in `Gal(K/Q)`; well defined modulo inertia.
    pub frobenius: Element,
    /// The residue mod `n` that is `p` on the prime-to-`p` part and `1` on
    /// the `p`-part.
    pub frobenius_residue: u64,
}

/// Embeds the local level Galois group of `Q_p(zeta_n)` into `(Z/n)^x`:
/// Frobenius goes to `p` mod `n'` and the unit `a` to `a` mod `p^k`.
fn decomposition_embedding(spec: &AbelianFieldSpec, p: u64) -> Result<(LevelGroup, GroupHom, u64)> {
    let n = spec.modulus();
    let (k, n1) = split_prime_power(n, p);
    let pk = p.pow(k);
    let f0 = multiplicative_order(p % n1, n1).expect("p is prime to n'");
    let lg = LocalLevel::new(p, f0, k)?.galois_group()?;
    let units = spec.units();
    let embed = |j: u64, a: u64| crt_pair(pow_mod(p, j, n1), n1, a % pk, pk);
    let images = (0..lg.group().rank())
        .map(|i| {
            let (j, a) = lg.decode(&lg.group().basis_element(i));
            units.encode(embed(j, a))
        })
        .collect::<Result<_>>()?;
    let hom = GroupHom::new(lg.group().clone(), units.group().clone(), images)?;
    Ok((lg, hom, embed(1, 1)))
}

/// Decomposition data of a normalized field at `p`.
pub fn localize(spec: &AbelianFieldSpec, p: u64) -> Result<Localization> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !spec.is_normalized()? {
        return Err(Error::NotNormalized(format!("{spec} is not at its conductor")));
    }
    let (lg, embed, frobenius_residue) = decomposition_embedding(spec, p)?;
    let local_fixing = embed.preimage(spec.fixing_subgroup())?;
    let local = LocalFieldSpec::new(lg.clone(), local_fixing)?.minimize()?;

    let (_, proj) = spec.galois_group()?;
    let to_gal = embed.then(&proj)?;
    let inertia = to_gal.image_of(&lg.unit_part()?)?;
    let decomposition = to_gal.image()?;
    let frobenius = to_gal.apply(lg.frobenius());
    let e = inertia.order();
    let (mod_inertia, q) = inertia.quotient()?;
    let f = mod_inertia.element_order(&q.apply(&frobenius));
    debug_assert_eq!(decomposition.order(), e * f);
    let g = spec.degree() / (e * f);
    Ok(Localization { local, e, f, g, inertia, decomposition, frobenius, frobenius_residue })
}

/// Smallest residue `a` mod `p^k` with `(0, a)` projecting onto each target.
fn inertia_lifts(local: &LocalFieldSpec, targets: &[Element]) -> Result<Vec<u64>> {
    let lg = local.level_group();
    let (_, proj) = local.galois_group()?;
    targets
        .iter()
        .map(|t| {
            lg.units()
                .residues()
                .into_iter()
                .find(|&a| lg.encode(0, a).map(|x| &proj.apply(&x) == t).unwrap_or(false))
                .ok_or_else(|| Error::OracleCorruption("inertia generator has no unit lift".into()))
        })
        .collect()
}

/// The packet at `p` for a normalized field.
pub fn extract(spec: &AbelianFieldSpec, p: u64) -> Result<LocalDatum> {
    let loc = localize(spec, p)?;
    let local = &loc.local;
    let (d, e) = (local.degree(), local.ramification_index()?);
    if (d, e) != (loc.decomposition.order(), loc.e) {
        return Err(Error::OracleCorruption(format!(
            "local degrees ({d}, {e}) at p={p} disagree with the global decomposition"
        )));
    }
    let level = local.level();
    let units = level.truncated_units()?;
    let (ud, ud_proj) = local.underline_d()?;
    let projection = (0..units.group().rank())
        .map(|i| {
            let b = units.group().basis_element(i);
            let (valuation, unit) = units.decode(&b);
            ProjectionEntry { valuation, unit, image: ud_proj.apply(&b) }
        })
        .collect();
    let frobenius = if e == d {
        None
    } else {
        Some(ud_proj.apply(&units.encode(1, 1)?))
    };
    let inertia = inertia_lifts(local, &local.inertia()?.generators())?;
    let wild_inertia = inertia_lifts(local, &local.wild_inertia()?.generators())?;
    Ok(LocalDatum {
        p,
        d,
        e,
        f: d / e,
        frobenius,
        inertia,
        wild_inertia,
        underline_d: UnderlineD { level, invariant_factors: ud.factors().to_vec(), projection },
        mu_levels: mu_levels(level)?,
    })
}

/// Orders of roots of unity that generate the level: `p^F - 1` (omitted when
/// it is 1) and `p^k` (omitted when `k = 0`).
pub fn mu_levels(level: LocalLevel) -> Result<Vec<BigUint>> {
    let mut out = Vec::new();
    let p = BigUint::from(level.p);
    let f = u32::try_from(level.unramified_degree).map_err(|_| Error::Overflow("unramified degree"))?;
    let unramified = p.pow(f) - 1u32;
    if !unramified.is_one() {
        out.push(unramified);
    }
    if level.wild_exponent > 0 {
        out.push(BigUint::from(level.wild_modulus()));
    }
    Ok(out)
}

/// Largest unramified degree accepted when reading `mu` data.
const MAX_MU_DEGREE: u64 = 1 << 12;

/// The level `Q_p(mu[m])`: `k = v_p(m)` and `F` the order of `p` modulo the
/// prime-to-`p` part of `m`.
pub fn level_of_mu(p: u64, m: &BigUint) -> Result<LocalLevel> {
    if m.is_zero() {
        return Err(Error::Level("mu[0] is not a level".into()));
    }
    let big_p = BigUint::from(p);
    let mut rest = m.clone();
    let mut k = 0u32;
    while (&rest % &big_p).is_zero() {
        rest /= &big_p;
        k += 1;
    }
    let mut power = &big_p % &rest;
    let mut f = 1u64;
    while !rest.is_one() && !power.is_one() {
        if f >= MAX_MU_DEGREE {
            return Err(Error::Level(format!("mu[{m}] is beyond the supported unramified degree")));
        }
        power = power * &big_p % &rest;
        f += 1;
    }
    LocalLevel::new(p, f, k)
}

/// The smallest level containing every `Q_p(mu[m])` listed.
pub fn level_of_mu_list(p: u64, levels: &[BigUint]) -> Result<LocalLevel> {
    let mut f = 1u64;
    let mut k = 0u32;
    for m in levels {
        let l = level_of_mu(p, m)?;
        f = num_integer::Integer::lcm(&f, &l.unramified_degree);
        k = k.max(l.wild_exponent);
    }
    LocalLevel::new(p, f, k)
}

/// Packets for every prime up to `bound`. The field is normalized first, so
/// any two specs of the same field produce identical dumps.
pub fn dump(spec: &AbelianFieldSpec, bound: u64) -> Result<OracleDump> {
    if bound < 2 {
        return Err(Error::InvalidInput(format!("prime bound {bound} below 2")));
    }
    let spec = spec.normalize()?;
    let data = primes_up_to(bound)
        .par_iter()
        .map(|&p| extract(&spec, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(OracleDump { bound, data })
}

/// Default prime bound for a field of the given conductor.
pub fn default_bound(conductor: u64) -> u64 {
    conductor.saturating_mul(3).max(100)
}
