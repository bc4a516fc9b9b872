use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::feasible::{binomial, weight_layer};
use super::klocal::check_enumerable;
use super::{CostSpectrum, CostStats, FeasibleSet};
use crate::{Error, Limits, Result};

/// Structural promise attached to a marked set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchTag {
    Generic,
    /// Pairwise Hamming distance at least 3.
    Dist3,
    /// Every string of the given Hamming weight.
    HammingWeight(u32),
}

/// Marked bitstrings of a search problem, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSet {
    n: usize,
    marked: Vec<u64>,
    tag: SearchTag,
}

fn hamming(a: u64, b: u64) -> u32 {
    (a ^ b).count_ones()
}

/// Smallest pairwise distance, or `None` for fewer than two strings.
pub fn min_pairwise_distance(marked: &[u64]) -> Option<u32> {
    let mut best = None;
    for (i, &a) in marked.iter().enumerate() {
        for &b in &marked[i + 1..] {
            let d = hamming(a, b);
            best = Some(best.map_or(d, |x: u32| x.min(d)));
        }
    }
    best
}

impl SearchSet {
    pub fn new(n: usize, mut marked: Vec<u64>, tag: SearchTag) -> Result<Self> {
        if n == 0 || n > 63 {
            return Err(Error::invalid(format!("search needs 1..=63 qubits, got {n}")));
        }
        if marked.is_empty() {
            return Err(Error::invalid("empty marked set"));
        }
        marked.sort_unstable();
        if marked.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate marked string"));
        }
        if marked.last().is_some_and(|&z| z >> n != 0) {
            return Err(Error::invalid(format!("marked string does not fit in {n} bits")));
        }
        match tag {
            SearchTag::Generic => {}
            SearchTag::Dist3 => {
                if let Some(d) = min_pairwise_distance(&marked) {
                    if d < 3 {
                        return Err(Error::invalid(format!(
                            "dist-3 set has two strings at distance {d}"
                        )));
                    }
                }
            }
            SearchTag::HammingWeight(k) => {
                if marked.iter().any(|z| z.count_ones() != k)
                    || marked.len() as u128 != binomial(n as u64, k as u64)
                {
                    return Err(Error::invalid(format!(
                        "marked set is not the complete weight-{k} layer"
                    )));
                }
            }
        }
        Ok(SearchSet { n, marked, tag })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn marked(&self) -> &[u64] {
        &self.marked
    }

    /// `m = |S|`.
    pub fn m(&self) -> u64 {
        self.marked.len() as u64
    }

    /// `N = 2^n`.
    pub fn space_size(&self) -> u64 {
        1u64 << self.n
    }

    pub fn tag(&self) -> SearchTag {
        self.tag
    }

    pub fn contains(&self, z: u64) -> bool {
        self.marked.binary_search(&z).is_ok()
    }

    /// No marked string is one bit flip away from another.
    pub fn is_flip_disjoint(&self) -> bool {
        match self.tag {
            SearchTag::Dist3 | SearchTag::HammingWeight(_) => true,
            SearchTag::Generic => min_pairwise_distance(&self.marked).is_none_or(|d| d >= 2),
        }
    }

    /// `(1, m/N, sqrt(m(N-m))/N)` in closed form.
    pub fn closed_form_stats(&self) -> CostStats {
        let n = self.space_size() as f64;
        let m = self.m() as f64;
        CostStats {
            c_max: 1.0,
            c_avg: m / n,
            sigma: (m * (n - m)).sqrt() / n,
        }
    }
}

/// The membership indicator as an enumerated spectrum over all `2^n` strings.
pub fn search_cost(s: &SearchSet, limits: &Limits) -> Result<CostSpectrum> {
    let f = FeasibleSet::full(s.n())?;
    check_enumerable(&f, limits)?;
    CostSpectrum::from_fn(f, |z| s.contains(z) as u64)
}

/// The complete weight-`k` layer.
pub fn gen_hamming_k_set(n: usize, k: u32) -> Result<SearchSet> {
    if k as usize > n {
        return Err(Error::invalid(format!("weight {k} exceeds {n}")));
    }
    if binomial(n as u64, k as u64) > 1 << 26 {
        return Err(Error::Limit {
            what: "weight layer size",
            size: binomial(n as u64, k as u64).min(usize::MAX as u128) as usize,
            limit: 1 << 26,
        });
    }
    SearchSet::new(n, weight_layer(n, k), SearchTag::HammingWeight(k))
}

/// Result of the randomized dist-3 construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dist3Outcome {
    pub set: SearchSet,
    pub requested: usize,
    /// Set when fewer than `requested` strings could be placed.
    pub shortfall: Option<String>,
}

/// Greedy randomized dist-3 set: candidates are visited in a seeded random
/// order and kept when they are at distance at least 3 from everything kept
/// so far.
pub fn gen_dist3_set(n: usize, m_target: usize, seed: u64) -> Result<Dist3Outcome> {
    if m_target == 0 {
        return Err(Error::invalid("m_target must be at least 1"));
    }
    if n == 0 || n > 63 {
        return Err(Error::invalid(format!("search needs 1..=63 qubits, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: Vec<u64> = Vec::new();
    if n <= 20 {
        let mut order: Vec<u64> = (0..1u64 << n).collect();
        order.shuffle(&mut rng);
        // blocked[z]: z lies within distance 2 of a chosen string
        let mut blocked = vec![false; 1 << n];
        for z in order {
            if chosen.len() == m_target {
                break;
            }
            if blocked[z as usize] {
                continue;
            }
            chosen.push(z);
            blocked[z as usize] = true;
            for i in 0..n {
                let a = z ^ (1 << i);
                blocked[a as usize] = true;
                for j in i + 1..n {
                    blocked[(a ^ (1 << j)) as usize] = true;
                }
            }
        }
    } else {
        let attempts = 64 * m_target.max(16);
        for _ in 0..attempts {
            if chosen.len() == m_target {
                break;
            }
            let z = rng.random_range(0..1u64 << n);
            if chosen.iter().all(|&c| hamming(c, z) >= 3) {
                chosen.push(z);
            }
        }
    }
    if chosen.is_empty() {
        return Err(Error::invalid("could not place any marked string"));
    }
    let shortfall = (chosen.len() < m_target).then(|| {
        format!(
            "placed {} of {} requested strings at pairwise distance >= 3",
            chosen.len(),
            m_target
        )
    });
    Ok(Dist3Outcome {
        set: SearchSet::new(n, chosen, SearchTag::Dist3)?,
        requested: m_target,
        shortfall,
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SearchJson {
    Marked {
        n: usize,
        marked: Vec<String>,
        #[serde(default)]
        tag: Option<String>,
    },
    Generated {
        n: usize,
        generator: String,
        #[serde(default)]
        k: Option<u32>,
        #[serde(default)]
        m: Option<usize>,
        #[serde(default)]
        seed: Option<u64>,
    },
}

/// Bitstrings are written most-significant qubit first, so `"0101"` is 5.
pub fn parse_bitstring(s: &str, n: usize) -> Result<u64> {
    if s.len() != n || !s.chars().all(|c| c == '0' || c == '1') {
        return Err(Error::invalid(format!("{s:?} is not a {n}-bit string")));
    }
    u64::from_str_radix(s, 2).map_err(|e| Error::invalid(e.to_string()))
}

pub fn format_bitstring(z: u64, n: usize) -> String {
    format!("{z:0n$b}")
}

impl SearchSet {
    /// Accepts `{"n", "marked": [...]}` or a generator form
    /// `{"n", "generator": "hamming-k", "k"}` / `{"n", "generator": "dist3", "m", "seed"}`.
    pub fn from_json(text: &str) -> Result<Self> {
        match serde_json::from_str::<SearchJson>(text)? {
            SearchJson::Marked { n, marked, tag } => {
                let strings = marked
                    .iter()
                    .map(|s| parse_bitstring(s, n))
                    .collect::<Result<Vec<_>>>()?;
                let tag = match tag.as_deref() {
                    None | Some("generic") => SearchTag::Generic,
                    Some("dist3") => SearchTag::Dist3,
                    Some(other) => {
                        return Err(Error::invalid(format!("unknown search tag {other:?}")))
                    }
                };
                SearchSet::new(n, strings, tag)
            }
            SearchJson::Generated {
                n,
                generator,
                k,
                m,
                seed,
            } => match generator.as_str() {
                "hamming-k" => gen_hamming_k_set(n, k.ok_or(Error::MissingIngredient("k"))?),
                "dist3" => {
                    let m = m.ok_or(Error::MissingIngredient("m"))?;
                    let seed = seed.ok_or(Error::MissingIngredient("seed"))?;
                    Ok(gen_dist3_set(n, m, seed)?.set)
                }
                other => Err(Error::invalid(format!("unknown generator {other:?}"))),
            },
        }
    }

    pub fn to_json(&self) -> String {
        let marked: Vec<String> = self.marked.iter().map(|&z| format_bitstring(z, self.n)).collect();
        let mut v = serde_json::json!({ "n": self.n, "marked": marked });
        if self.tag == SearchTag::Dist3 {
            v["tag"] = "dist3".into();
        }
        v.to_string()
    }
}
