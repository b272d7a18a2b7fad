//! Rebuilding the global field from an oracle dump alone.
//!
//! Ramified packets give the local conductors, whose product is the modulus
//! `n_G`. Unramified packets give Frobenius residue norms `p^{f_p}`, which
//! generate the image of the mod-`n_G` cyclotomic character on the field's
//! Galois group, i.e. `Gal(Q(zeta_{n_G}) / F(G))`.

mod report;

pub use report::{CheckKind, LogEntry, ReconstructionReport, ReportFile, Verdict};

use rayon::prelude::*;

use crate::arith::pow_mod;
use crate::cyclotomic::{AbelianFieldSpec, UnitGroup};
use crate::error::{Error, Result};
use crate::group::{fiber_product, FinAbGroup, GroupHom, Subgroup};
use crate::local::LocalFieldSpec;
use crate::oracle::{dump, level_of_mu_list, localize, LocalDatum, OracleDump};

/// `k(D)` from the prime and the norm quotient alone: the fixing subgroup
/// is the reciprocity image of the kernel of the projection onto
/// `underline_d`. Everything else in the datum is only cross-checked.
pub fn reconstruct_local(datum: &LocalDatum) -> Result<LocalFieldSpec> {
    datum.validate()?;
    let p = datum.p;
    let ud = &datum.underline_d;
    let level = ud.level;
    let from_mu = level_of_mu_list(p, &datum.mu_levels)?;
    if from_mu != level {
        return Err(Error::Level(format!(
            "p={p}: roots of unity generate level {from_mu}, underline_d is at {level}"
        )));
    }
    let units = level.truncated_units()?;
    if ud.projection.len() != units.group().rank() {
        return Err(Error::Schema(format!(
            "p={p}: projection has {} entries, truncated units have rank {}",
            ud.projection.len(),
            units.group().rank()
        )));
    }
    for (i, entry) in ud.projection.iter().enumerate() {
        if units.decode(&units.group().basis_element(i)) != (entry.valuation, entry.unit) {
            return Err(Error::Schema(format!(
                "p={p}: projection entry {i} is not the canonical basis element"
            )));
        }
    }
    let corrupt = |msg: String| Error::OracleCorruption(format!("p={p}: {msg}"));
    let target = FinAbGroup::new(ud.invariant_factors.clone()).map_err(|e| corrupt(e.to_string()))?;
    let images = ud.projection.iter().map(|e| e.image.clone()).collect();
    let proj = GroupHom::new(units.group().clone(), target.clone(), images).map_err(|e| corrupt(e.to_string()))?;
    if !proj.is_surjective()? {
        return Err(corrupt("projection onto underline_d is not surjective".into()));
    }
    let fixing = level.reciprocity_map()?.image_of(&proj.kernel()?)?;
    let spec = LocalFieldSpec::new(level.galois_group()?, fixing)?;

    let (d, e) = (spec.degree(), spec.ramification_index()?);
    if (d, e, d / e) != (datum.d, datum.e, datum.f) {
        return Err(corrupt(format!(
            "norm quotient gives (d, e, f) = ({d}, {e}, {}), packet says ({}, {}, {})",
            d / e,
            datum.d,
            datum.e,
            datum.f
        )));
    }
    let (_, gal_proj) = spec.galois_group()?;
    let lg = spec.level_group();
    let span = |residues: &[u64]| -> Result<Subgroup> {
        let gens = residues
            .iter()
            .map(|&a| Ok(gal_proj.apply(&lg.encode(0, a).map_err(|e| corrupt(e.to_string()))?)))
            .collect::<Result<Vec<_>>>()?;
        Subgroup::from_generators(gal_proj.target(), &gens)
    };
    if span(&datum.inertia)? != spec.inertia()? {
        return Err(corrupt("inertia generators disagree with the norm quotient".into()));
    }
    if span(&datum.wild_inertia)? != spec.wild_inertia()? {
        return Err(corrupt("wild inertia generators disagree with the norm quotient".into()));
    }
    if let Some(frob) = &datum.frobenius {
        if &proj.apply(&units.encode(1, 1)?) != frob {
            return Err(corrupt("frobenius is not the uniformizer class".into()));
        }
    }
    let minimal = spec.minimize()?;
    if minimal.level() != level {
        return Err(Error::Level(format!(
            "p={p}: packet level {level} is not the minimal level {} of its field",
            minimal.level()
        )));
    }
    Ok(minimal)
}

/// `p^a` for the Artin conductor exponent `a` of `k`.
pub fn local_conductor_contribution(k: &LocalFieldSpec) -> Result<u64> {
    k.conductor()
}

fn reconstruct_all(dump: &OracleDump) -> Result<Vec<LocalFieldSpec>> {
    dump.data.par_iter().map(reconstruct_local).collect()
}

fn n_g_from(locals: &[LocalFieldSpec]) -> Result<u64> {
    locals.iter().try_fold(1u64, |acc, k| {
        acc.checked_mul(local_conductor_contribution(k)?)
            .ok_or(Error::Overflow("n_G"))
    })
}

/// Product of the local conductors over the ramified packets.
pub fn compute_n_g(dump: &OracleDump) -> Result<u64> {
    n_g_from(&reconstruct_all(dump)?)
}

/// The recovered cyclotomic image with its certification record.
#[derive(Clone, Debug)]
pub struct CyclotomicImage {
    pub units: UnitGroup,
    pub subgroup: Subgroup,
    pub certified: bool,
    pub log: Vec<LogEntry>,
}

/// Subgroup of `(Z/n_g)^x` generated by the residue norms `p^{f_p}` of the
/// unramified packets.
fn norm_span(units: &UnitGroup, data: &[&LocalDatum]) -> Result<Subgroup> {
    let n = units.modulus();
    let gens = data
        .iter()
        .map(|d| units.encode(pow_mod(d.p, d.f, n)))
        .collect::<Result<Vec<_>>>()?;
    Subgroup::from_generators(units.group(), &gens)
}

/// The same image, realized as `A / (A x_{U} 1)` for `A` the free abelian
/// group on the distinct residue norms, truncated at their orders. Returns
/// the order of the quotient.
fn image_order_by_fiber_product(units: &UnitGroup, data: &[&LocalDatum]) -> Result<u64> {
    let n = units.modulus();
    // a greedy generating set keeps A small
    let mut span = Subgroup::trivial(units.group());
    let mut chosen = Vec::new();
    for d in data {
        let x = units.encode(pow_mod(d.p, d.f, n))?;
        if !span.contains(&x) {
            span = span.extend(std::slice::from_ref(&x))?;
            chosen.push(x);
        }
    }
    let orders: Vec<u64> = chosen.iter().map(|x| units.group().element_order(x)).collect();
    let pres = FinAbGroup::from_cyclic_orders(&orders)?;
    let images = pres
        .basis_in_generators
        .iter()
        .map(|combo| {
            combo.iter().zip(&chosen).fold(units.group().zero(), |acc, (&c, x)| {
                units.group().add(&acc, &units.group().scale(x, c))
            })
        })
        .collect();
    let chi = GroupHom::new(pres.group.clone(), units.group().clone(), images)?;
    let trivial = GroupHom::zero(&FinAbGroup::trivial(), units.group());
    let h_cycl = fiber_product(&chi, &trivial)?;
    Ok(pres.group.order() / h_cycl.subgroup.order())
}

/// Generates the image from the unramified packets and certifies it: every
/// unramified `p` must have order exactly `f_p` modulo the image, and the
/// primes up to half the bound must already generate it.
pub fn cyclotomic_image(dump: &OracleDump, n_g: u64) -> Result<CyclotomicImage> {
    let units = UnitGroup::new(n_g)?;
    let unramified: Vec<&LocalDatum> = dump.unramified().collect();
    if let Some(d) = unramified.iter().find(|d| n_g.is_multiple_of(d.p)) {
        return Err(Error::OracleCorruption(format!("unramified prime {} divides n_G = {n_g}", d.p)));
    }
    let subgroup = norm_span(&units, &unramified)?;
    let (quotient, proj) = subgroup.quotient()?;
    let mut log = Vec::new();

    let cross = image_order_by_fiber_product(&units, &unramified)?;
    log.push(LogEntry::new(None, CheckKind::FiberProduct, subgroup.order(), cross));

    for d in &unramified {
        let order = quotient.element_order(&proj.apply(&units.encode(d.p % n_g.max(1))?));
        log.push(LogEntry::new(Some(d.p), CheckKind::FrobeniusOrder, d.f, order));
    }

    let lower: Vec<&LocalDatum> = unramified.iter().copied().filter(|d| 2 * d.p <= dump.bound).collect();
    let stable = if units.group().is_trivial() {
        true
    } else {
        !lower.is_empty() && norm_span(&units, &lower)? == subgroup
    };
    log.push(LogEntry::new(None, CheckKind::Stability, 1, u64::from(stable)));

    let certified = log.iter().all(|e| e.ok);
    Ok(CyclotomicImage { units, subgroup, certified, log })
}

/// `F(G)` from the dump alone.
pub fn reconstruct_global(dump: &OracleDump) -> Result<ReconstructionReport> {
    dump.validate()?;
    let locals = reconstruct_all(dump)?;
    let n_g = n_g_from(&locals)?;
    let image = cyclotomic_image(dump, n_g)?;
    let raw = AbelianFieldSpec::from_subgroup(image.units.clone(), image.subgroup.clone())?;
    let field = raw.normalize()?;
    let mut log = image.log;
    log.push(LogEntry::new(None, CheckKind::Conductor, n_g, field.modulus()));

    // the rebuilt field must reproduce every ramified completion
    for (datum, local) in dump.data.iter().zip(&locals).filter(|(d, _)| d.e > 1) {
        let ok = field.modulus() == n_g && localize(&field, datum.p)?.local == *local;
        log.push(LogEntry::new(Some(datum.p), CheckKind::RamifiedCompletion, 1, u64::from(ok)));
    }
    let certified = log.iter().all(|e| e.ok);
    Ok(ReconstructionReport {
        n_g,
        units: image.units,
        subgroup: image.subgroup,
        field,
        certified,
        log,
        verdict: (!certified).then_some(Verdict::Uncertified),
    })
}

/// Fills in the verdict of a reconstruction against the true field. A
/// reconstruction that failed outright counts as a mismatch.
pub fn judge(result: Result<ReconstructionReport>, truth: &AbelianFieldSpec) -> Result<(Verdict, Option<ReconstructionReport>)> {
    let truth = truth.normalize()?;
    Ok(match result {
        Err(_) => (Verdict::Mismatch, None),
        Ok(mut report) => {
            let v = if !report.certified {
                Verdict::Uncertified
            } else if report.field == truth {
                Verdict::Match
            } else {
                Verdict::Mismatch
            };
            report.verdict = Some(v);
            (v, Some(report))
        }
    })
}

/// Dump, serialize, reload and reconstruct, then compare with `spec`.
pub fn roundtrip_check(spec: &AbelianFieldSpec, bound: u64) -> Result<ReconstructionReport> {
    let bytes = dump(spec, bound)?.to_bytes();
    let loaded = OracleDump::from_bytes(&bytes)?;
    let mut report = reconstruct_global(&loaded)?;
    let (verdict, _) = judge(Ok(report.clone()), spec)?;
    report.verdict = Some(verdict);
    Ok(report)
}
