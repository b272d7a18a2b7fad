use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, primes_up_to};
use crate::error::{Error, Result};
use crate::local::LocalLevel;

/// Image of one basis element of the truncated local units.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectionEntry {
    pub valuation: u64,
    pub unit: u64,
    pub image: Vec<i64>,
}

/// `Q_p^x / Nm` at a finite level, with the projection from the truncated
/// units written on their canonical basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnderlineD {
    pub level: LocalLevel,
    pub invariant_factors: Vec<u64>,
    pub projection: Vec<ProjectionEntry>,
}

impl UnderlineD {
    pub fn order(&self) -> Option<u64> {
        self.invariant_factors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
    }
}

/// What the decomposition data at one prime reveals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalDatum {
    pub p: u64,
    pub d: u64,
    pub e: u64,
    pub f: u64,
    /// Coordinates in `underline_d` of the uniformizer class; omitted when
    /// `e = d`.
    pub frobenius: Option<Vec<i64>>,
    /// Residues mod `p^k` whose automorphisms generate inertia.
    pub inertia: Vec<u64>,
    pub wild_inertia: Vec<u64>,
    pub underline_d: UnderlineD,
    /// Orders `n` of the roots of unity generating the level.
    #[serde(with = "big_numbers")]
    pub mu_levels: Vec<BigUint>,
}

/// Unbounded integers written as bare JSON numbers.
mod big_numbers {
    use num_bigint::BigUint;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Number;

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        let nums: Vec<Number> = v
            .iter()
            .map(|x| x.to_string().parse().expect("decimal digits form a JSON number"))
            .collect();
        nums.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<Number>::deserialize(d)?
            .iter()
            .map(|n| {
                n.to_string()
                    .parse::<BigUint>()
                    .map_err(|_| D::Error::custom(format!("{n} is not a non-negative integer")))
            })
            .collect()
    }
}

impl LocalDatum {
    /// Structural checks that need no reconstruction.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Schema(format!("datum at p={}: {msg}", self.p)));
        if !is_prime(self.p) {
            return bad("p is not prime".into());
        }
        if self.underline_d.level.p != self.p {
            return bad("level prime differs from p".into());
        }
        if self.e == 0 || self.f == 0 || self.e.checked_mul(self.f) != Some(self.d) {
            return bad(format!("d={} is not e*f with e={}, f={}", self.d, self.e, self.f));
        }
        if self.underline_d.order() != Some(self.d) {
            return bad("underline_d order differs from d".into());
        }
        if (self.e == 1) != self.inertia.is_empty() {
            return bad("inertia generators inconsistent with e".into());
        }
        if (self.e == self.d) != self.frobenius.is_none() {
            return bad("frobenius must be given exactly when e < d".into());
        }
        Ok(())
    }
}

/// Decomposition data for every prime up to `bound`, and nothing about the
/// global field it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleDump {
    pub bound: u64,
    pub data: Vec<LocalDatum>,
}

impl OracleDump {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        self.to_json().into_bytes()
    }

    /// Parses and checks that every prime up to the bound appears once, in
    /// increasing order.
    pub fn from_json(text: &str) -> Result<Self> {
        let dump: OracleDump =
            serde_json::from_str(text).map_err(|e| Error::Schema(format!("oracle dump: {e}")))?;
        dump.validate()?;
        Ok(dump)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let text = std::str::from_utf8(bytes).map_err(|e| Error::Schema(format!("oracle dump: {e}")))?;
        OracleDump::from_json(text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.bound < 2 {
            return Err(Error::Schema(format!("bound {} below 2", self.bound)));
        }
        let primes = primes_up_to(self.bound);
        let got: Vec<u64> = self.data.iter().map(|d| d.p).collect();
        if got != primes {
            return Err(Error::Schema(format!(
                "expected one datum for each of the {} primes up to {}",
                primes.len(),
                self.bound
            )));
        }
        self.data.iter().try_for_each(LocalDatum::validate)
    }

    pub fn get(&self, p: u64) -> Option<&LocalDatum> {
        self.data
            .binary_search_by_key(&p, |d| d.p)
            .ok()
            .map(|i| &self.data[i])
    }

    pub fn ramified(&self) -> impl Iterator<Item = &LocalDatum> {
        self.data.iter().filter(|d| d.e > 1)
    }

    pub fn unramified(&self) -> impl Iterator<Item = &LocalDatum> {
        self.data.iter().filter(|d| d.e == 1)
    }
}
