use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Hard cap on materialized feasible sets, independent of the configurable
/// enumeration limits.
const MAX_MATERIALIZED: u128 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FeasibleKind {
    Full,
    HammingWeight { q: u32 },
    Explicit { members: Vec<u64> },
}

#[derive(Serialize, Deserialize)]
struct FeasibleJson {
    n: usize,
    #[serde(flatten)]
    kind: FeasibleKind,
}

/// The feasible bitstrings `F` of a problem. Members are kept sorted, so the
/// index of a string in `F` is its rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FeasibleJson", into = "FeasibleJson")]
pub struct FeasibleSet {
    n: usize,
    kind: FeasibleKind,
    members: Option<Arc<Vec<u64>>>,
}

impl TryFrom<FeasibleJson> for FeasibleSet {
    type Error = Error;
    fn try_from(j: FeasibleJson) -> Result<Self> {
        match j.kind {
            FeasibleKind::Full => FeasibleSet::full(j.n),
            FeasibleKind::HammingWeight { q } => FeasibleSet::hamming_weight(j.n, q),
            FeasibleKind::Explicit { members } => FeasibleSet::explicit(j.n, members),
        }
    }
}

impl From<FeasibleSet> for FeasibleJson {
    fn from(f: FeasibleSet) -> Self {
        FeasibleJson { n: f.n, kind: f.kind }
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        match acc.checked_mul((n - i) as u128) {
            Some(v) => acc = v / (i + 1) as u128,
            None => return u128::MAX,
        }
    }
    acc
}

/// All `n`-bit strings of popcount `q`, ascending.
pub(crate) fn weight_layer(n: usize, q: u32) -> Vec<u64> {
    if q as usize > n {
        return Vec::new();
    }
    if q == 0 {
        return vec![0];
    }
    let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = Vec::with_capacity(binomial(n as u64, q as u64) as usize);
    let mut v: u64 = (1u64 << q) - 1;
    loop {
        out.push(v);
        // Gosper's hack: next integer with the same popcount
        let t = v | (v - 1);
        let next = (t.wrapping_add(1)) | (((!t & t.wrapping_add(1)).wrapping_sub(1)) >> (v.trailing_zeros() + 1));
        if next <= v || next > limit {
            break;
        }
        v = next;
    }
    out
}

impl FeasibleSet {
    pub fn full(n: usize) -> Result<Self> {
        if n > 63 {
            return Err(Error::invalid(format!("at most 63 qubits are supported, got {n}")));
        }
        Ok(FeasibleSet {
            n,
            kind: FeasibleKind::Full,
            members: None,
        })
    }

    pub fn hamming_weight(n: usize, q: u32) -> Result<Self> {
        if n > 63 || q as usize > n {
            return Err(Error::invalid(format!("weight {q} is invalid for {n} qubits")));
        }
        let size = binomial(n as u64, q as u64);
        if size > MAX_MATERIALIZED {
            return Err(Error::Limit {
                what: "feasible set size",
                size: size.min(usize::MAX as u128) as usize,
                limit: MAX_MATERIALIZED as usize,
            });
        }
        Ok(FeasibleSet {
            n,
            kind: FeasibleKind::HammingWeight { q },
            members: Some(Arc::new(weight_layer(n, q))),
        })
    }

    /// Explicit member list; sorted on ingest, duplicates rejected.
    pub fn explicit(n: usize, mut members: Vec<u64>) -> Result<Self> {
        if n > 63 {
            return Err(Error::invalid(format!("at most 63 qubits are supported, got {n}")));
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("duplicate feasible string {}", w[0])));
        }
        if let Some(&last) = members.last() {
            if last >> n != 0 {
                return Err(Error::invalid(format!("string {last} does not fit in {n} bits")));
            }
        }
        Ok(FeasibleSet {
            n,
            kind: FeasibleKind::Explicit {
                members: members.clone(),
            },
            members: Some(Arc::new(members)),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &FeasibleKind {
        &self.kind
    }

    pub fn is_full(&self) -> bool {
        matches!(self.kind, FeasibleKind::Full)
    }

    pub fn len(&self) -> usize {
        match &self.members {
            None => 1usize << self.n,
            Some(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `i`-th feasible string.
    pub fn get(&self, i: usize) -> u64 {
        match &self.members {
            None => i as u64,
            Some(m) => m[i],
        }
    }

    pub fn position(&self, z: u64) -> Option<usize> {
        match &self.members {
            None => (z >> self.n == 0).then_some(z as usize),
            Some(m) => m.binary_search(&z).ok(),
        }
    }

    pub fn contains(&self, z: u64) -> bool {
        self.position(z).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// Short tag used in reports.
    pub fn label(&self) -> String {
        match &self.kind {
            FeasibleKind::Full => format!("full({})", self.n),
            FeasibleKind::HammingWeight { q } => format!("hamming-weight({}, {q})", self.n),
            FeasibleKind::Explicit { members } => format!("explicit({}, {})", self.n, members.len()),
        }
    }
}
