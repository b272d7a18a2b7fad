use serde::{Deserialize, Serialize};

use crate::cyclotomic::{AbelianFieldSpec, FieldSpecFile, UnitGroup};
use crate::error::{Error, Result};
use crate::group::Subgroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Match,
    Mismatch,
    Uncertified,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::Uncertified => "uncertified",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Order of `p` modulo the image against `f_p`.
    FrobeniusOrder,
    /// Primes up to half the bound generate the whole image.
    Stability,
    /// Image order agrees with the fiber-product construction.
    FiberProduct,
    /// The rebuilt field has conductor `n_G`.
    Conductor,
    /// The rebuilt field localizes to the packet's field.
    RamifiedCompletion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogEntry {
    pub p: Option<u64>,
    pub check: CheckKind,
    pub expected: u64,
    pub observed: u64,
    pub ok: bool,
}

impl LogEntry {
    pub fn new(p: Option<u64>, check: CheckKind, expected: u64, observed: u64) -> Self {
        LogEntry { p, check, expected, observed, ok: expected == observed }
    }
}

#[derive(Clone, Debug)]
pub struct ReconstructionReport {
    pub n_g: u64,
    pub units: UnitGroup,
    /// Image of the mod-`n_G` cyclotomic character, `Gal(Q(zeta_{n_G})/F(G))`.
    pub subgroup: Subgroup,
    /// `F(G)`, normalized.
    pub field: AbelianFieldSpec,
    pub certified: bool,
    pub log: Vec<LogEntry>,
    pub verdict: Option<Verdict>,
}

/// On-disk form of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub n_g: u64,
    pub subgroup_generators: Vec<u64>,
    pub field: FieldSpecFile,
    pub certified: bool,
    pub verdict: Option<Verdict>,
    pub log: Vec<LogEntry>,
}

impl ReconstructionReport {
    pub fn degree(&self) -> u64 {
        self.subgroup.index()
    }

    pub fn subgroup_generators(&self) -> Vec<u64> {
        self.subgroup.generators().iter().map(|x| self.units.decode(x)).collect()
    }

    pub fn failures(&self) -> impl Iterator<Item = &LogEntry> {
        self.log.iter().filter(|e| !e.ok)
    }

    pub fn to_file(&self) -> ReportFile {
        ReportFile {
            n_g: self.n_g,
            subgroup_generators: self.subgroup_generators(),
            field: self.field.to_file(),
            certified: self.certified,
            verdict: self.verdict,
            log: self.log.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: ReportFile = serde_json::from_str(text).map_err(|e| Error::Schema(format!("report: {e}")))?;
        let units = UnitGroup::new(f.n_g)?;
        let gens = f
            .subgroup_generators
            .iter()
            .map(|&r| units.encode(r))
            .collect::<Result<Vec<_>>>()?;
        let subgroup = Subgroup::from_generators(units.group(), &gens)?;
        Ok(ReconstructionReport {
            n_g: f.n_g,
            units,
            subgroup,
            field: AbelianFieldSpec::from_file(&f.field)?,
            certified: f.certified,
            log: f.log,
            verdict: f.verdict,
        })
    }
}
