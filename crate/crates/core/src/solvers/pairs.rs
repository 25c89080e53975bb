use serde::{Deserialize, Serialize};

use super::{multiset_classes, Outcome};
use crate::algebra::{gcd, ModRing};
use crate::error::{invalid, Error, Result};

/// Which elements of `Z/(n)` must be covered by the pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Universe {
    /// `Z/(n) \ {0}`, with `n = 2m + 1`.
    Nonzero,
    /// All of `Z/(n)`, with `n = 2m`.
    Full,
}

impl Universe {
    /// Odd moduli partition the nonzero elements, even moduli everything.
    pub fn for_modulus(n: u64) -> Self {
        if n % 2 == 1 {
            Universe::Nonzero
        } else {
            Universe::Full
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Universe::Nonzero => "nonzero",
            Universe::Full => "full",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
struct RawPartitionInstance {
    n: u64,
    #[serde(default)]
    universe: Option<Universe>,
    d: Vec<i64>,
}

/// `m` prescribed differences in `Z/(n)` and the set to be split into pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPartitionInstance")]
pub struct PartitionInstance {
    n: u64,
    universe: Universe,
    d: Vec<u64>,
}

impl TryFrom<RawPartitionInstance> for PartitionInstance {
    type Error = Error;
    fn try_from(raw: RawPartitionInstance) -> Result<Self> {
        Self::new(raw.n, &raw.d, raw.universe)
    }
}

impl PartitionInstance {
    /// Differences are reduced mod `n`; the universe defaults from the parity of `n`.
    pub fn new(n: u64, d: &[i64], universe: Option<Universe>) -> Result<Self> {
        let ring = ModRing::try_new(n)?;
        let universe = universe.unwrap_or_else(|| Universe::for_modulus(n));
        let m = d.len() as u64;
        match universe {
            Universe::Nonzero if n != 2 * m + 1 => {
                return Err(invalid(format!(
                    "partitioning Z/({n}) minus zero needs n = 2m + 1, got m = {m}"
                )))
            }
            Universe::Full if n != 2 * m => {
                return Err(invalid(format!(
                    "partitioning all of Z/({n}) needs n = 2m, got m = {m}"
                )))
            }
            _ => {}
        }
        let d: Vec<u64> = d.iter().map(|&x| ring.reduce(x)).collect();
        if let Some(i) = d.iter().position(|&x| x == 0) {
            return Err(invalid(format!("difference d[{i}] is zero mod {n}")));
        }
        Ok(Self { n, universe, d })
    }

    /// An instance of the unit-difference conjectures: every `d_i` coprime to `n`.
    pub fn conjecture(n: u64, d: &[i64]) -> Result<Self> {
        let inst = Self::new(n, d, None)?;
        if let Some(&x) = inst.d.iter().find(|&&x| gcd(x, n) != 1) {
            return Err(invalid(format!("difference {x} is not a unit mod {n}")));
        }
        Ok(inst)
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn differences(&self) -> &[u64] {
        &self.d
    }

    pub fn elements(&self) -> Vec<u64> {
        match self.universe {
            Universe::Nonzero => (1..self.n).collect(),
            Universe::Full => (0..self.n).collect(),
        }
    }
}

/// Pairs `(x_i, y_i)` with `y_i - x_i = d_i`, listed in the order of `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairPartition {
    pub pairs: Vec<(u64, u64)>,
}

struct PairSearch {
    n: u64,
    used: Vec<bool>,
    diffs: Vec<u64>,
    counts: Vec<usize>,
    // (x, y, difference class)
    picks: Vec<(u64, u64, usize)>,
    nodes: u64,
}

impl PairSearch {
    fn take(&mut self, x: u64, y: u64, class: usize, next: u64) -> bool {
        self.used[x as usize] = true;
        self.used[y as usize] = true;
        self.counts[class] -= 1;
        self.picks.push((x, y, class));
        if self.search(next) {
            return true;
        }
        self.picks.pop();
        self.counts[class] += 1;
        self.used[x as usize] = false;
        self.used[y as usize] = false;
        false
    }

    /// Covers the smallest unused element first; `from` is a lower bound for it.
    fn search(&mut self, from: u64) -> bool {
        self.nodes += 1;
        let Some(e) = (from..self.n).find(|&e| !self.used[e as usize]) else {
            return true;
        };
        let n = self.n;
        for class in 0..self.diffs.len() {
            if self.counts[class] == 0 {
                continue;
            }
            let delta = self.diffs[class];
            let up = (e + delta) % n;
            if !self.used[up as usize] && self.take(e, up, class, e + 1) {
                return true;
            }
            let down = (e + n - delta) % n;
            if down != up && !self.used[down as usize] && self.take(down, e, class, e + 1) {
                return true;
            }
        }
        false
    }
}

/// Element-first backtracking over perfect matchings of the universe.
///
/// Equal differences are treated as one class with a multiplicity, so the
/// search never branches on which of several identical `d_i` to use; indices
/// are assigned afterwards in input order. The result is deterministic.
pub fn solve_pair_partition(inst: &PartitionInstance) -> Outcome<PairPartition> {
    let classes = multiset_classes(&inst.d);
    let mut used = vec![false; inst.n as usize];
    if inst.universe == Universe::Nonzero {
        used[0] = true;
    }
    let mut search = PairSearch {
        n: inst.n,
        used,
        diffs: classes.iter().map(|(v, _)| *v).collect(),
        counts: classes.iter().map(|(_, idx)| idx.len()).collect(),
        picks: Vec::with_capacity(inst.d.len()),
        nodes: 0,
    };
    if !search.search(0) {
        return Outcome::Infeasible {
            nodes: search.nodes,
        };
    }
    let mut pairs = vec![(0, 0); inst.d.len()];
    let mut cursor = vec![0usize; classes.len()];
    for &(x, y, class) in &search.picks {
        pairs[classes[class].1[cursor[class]]] = (x, y);
        cursor[class] += 1;
    }
    Outcome::Feasible {
        solution: PairPartition { pairs },
        nodes: search.nodes,
    }
}

/// Checks a claimed partition from scratch: shape, differences, distinctness
/// and exact coverage of the universe.
pub fn verify_pair_partition(inst: &PartitionInstance, sol: &PairPartition) -> bool {
    let n = inst.n;
    if sol.pairs.len() != inst.d.len() {
        return false;
    }
    let mut seen = vec![false; n as usize];
    for (&(x, y), &d) in sol.pairs.iter().zip(&inst.d) {
        if x >= n || y >= n || (y + n - x) % n != d {
            return false;
        }
        for v in [x, y] {
            if seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
    }
    let expected = inst.elements();
    let covered: Vec<u64> = (0..n).filter(|&v| seen[v as usize]).collect();
    covered == expected
}
