use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{Outcome, PairPartition, PartitionInstance, Universe};
use crate::algebra::{factorial_quotient_mod, is_prime, ModRing};
use crate::error::{invalid, Error, Result};

/// Where the sets live: `Z/(n)` or the integers (a characteristic-zero
/// stand-in for an infinite field, with explicitly finite sets).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ambient {
    Modular(u64),
    Integers,
}

impl Ambient {
    fn normalize(&self, v: i64) -> i64 {
        match self {
            Ambient::Modular(n) => v.rem_euclid(*n as i64),
            Ambient::Integers => v,
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            Ambient::Modular(n) => is_prime(*n),
            Ambient::Integers => true,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawPackingInstance {
    #[serde(default)]
    n: Option<u64>,
    #[serde(rename = "X")]
    x: Vec<Vec<i64>>,
    #[serde(rename = "T")]
    t: Vec<Vec<i64>>,
    d: u64,
}

/// Sets `X_1..X_m` to be translated by representatives `t_i ∈ T_i` so that
/// the translates become pairwise disjoint. Sets are stored sorted and
/// deduplicated, reduced mod `n` in modular mode.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPackingInstance", into = "RawPackingInstance")]
pub struct PackingInstance {
    ambient: Ambient,
    x: Vec<Vec<i64>>,
    t: Vec<Vec<i64>>,
    d: u64,
}

impl TryFrom<RawPackingInstance> for PackingInstance {
    type Error = Error;
    fn try_from(raw: RawPackingInstance) -> Result<Self> {
        let ambient = match raw.n {
            Some(n) => Ambient::Modular(n),
            None => Ambient::Integers,
        };
        Self::new(ambient, raw.x, raw.t, raw.d)
    }
}

impl From<PackingInstance> for RawPackingInstance {
    fn from(inst: PackingInstance) -> Self {
        Self {
            n: match inst.ambient {
                Ambient::Modular(n) => Some(n),
                Ambient::Integers => None,
            },
            x: inst.x,
            t: inst.t,
            d: inst.d,
        }
    }
}

fn canonical(ambient: Ambient, set: Vec<i64>) -> Vec<i64> {
    let mut s: Vec<i64> = set.into_iter().map(|v| ambient.normalize(v)).collect();
    s.sort_unstable();
    s.dedup();
    s
}

impl PackingInstance {
    pub fn new(ambient: Ambient, x: Vec<Vec<i64>>, t: Vec<Vec<i64>>, d: u64) -> Result<Self> {
        if let Ambient::Modular(n) = ambient {
            ModRing::try_new(n)?;
        }
        if x.is_empty() {
            return Err(invalid("no sets to pack"));
        }
        if x.len() != t.len() {
            return Err(invalid(format!(
                "{} sets but {} translate sets",
                x.len(),
                t.len()
            )));
        }
        if d == 0 {
            return Err(invalid("packing parameter d must be positive"));
        }
        Ok(Self {
            ambient,
            x: x.into_iter().map(|s| canonical(ambient, s)).collect(),
            t: t.into_iter().map(|s| canonical(ambient, s)).collect(),
            d,
        })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn sets(&self) -> &[Vec<i64>] {
        &self.x
    }

    pub fn translates(&self) -> &[Vec<i64>] {
        &self.t
    }

    pub fn parameter(&self) -> u64 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    fn shift<'a>(&self, set: &'a [i64], t: i64) -> impl Iterator<Item = i64> + 'a {
        let ambient = self.ambient;
        set.iter().map(move |&v| ambient.normalize(v + t))
    }

    /// `X_j - X_i` as an explicit set.
    pub fn difference_set(&self, j: usize, i: usize) -> HashSet<i64> {
        let mut out = HashSet::new();
        for &a in &self.x[j] {
            for &b in &self.x[i] {
                out.insert(self.ambient.normalize(a - b));
            }
        }
        out
    }
}

struct PackSearch<'a> {
    inst: &'a PackingInstance,
    occupied: HashSet<i64>,
    chosen: Vec<i64>,
    nodes: u64,
}

impl PackSearch<'_> {
    fn search(&mut self, i: usize) -> bool {
        self.nodes += 1;
        if i == self.inst.len() {
            return true;
        }
        for &t in &self.inst.t[i] {
            let image: Vec<i64> = self.inst.shift(&self.inst.x[i], t).collect();
            if image.iter().any(|v| self.occupied.contains(v)) {
                continue;
            }
            self.occupied.extend(image.iter().copied());
            self.chosen.push(t);
            if self.search(i + 1) {
                return true;
            }
            self.chosen.pop();
            for v in &image {
                self.occupied.remove(v);
            }
        }
        false
    }
}

/// Chooses `t_1, t_2, …` in turn, each in ascending order, keeping the union of
/// the translates placed so far; returns the lexicographically first feasible
/// vector.
pub fn solve_translate_packing(inst: &PackingInstance) -> Outcome<Vec<i64>> {
    let mut search = PackSearch {
        inst,
        occupied: HashSet::new(),
        chosen: Vec::with_capacity(inst.len()),
        nodes: 0,
    };
    if search.search(0) {
        Outcome::Feasible {
            solution: search.chosen,
            nodes: search.nodes,
        }
    } else {
        Outcome::Infeasible {
            nodes: search.nodes,
        }
    }
}

/// Checks `t_i ∈ T_i` and pairwise disjointness of the translates.
pub fn verify_packing(inst: &PackingInstance, t: &[i64]) -> bool {
    if t.len() != inst.len() {
        return false;
    }
    let mut seen = HashSet::new();
    for ((x, ts), &ti) in inst.x.iter().zip(&inst.t).zip(t) {
        if !ts.contains(&inst.ambient.normalize(ti)) {
            return false;
        }
        for v in x {
            if !seen.insert(inst.ambient.normalize(v + ti)) {
                return false;
            }
        }
    }
    true
}

/// Which sufficient condition certifies that a packing exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Guarantee {
    /// Field, `(md)!/(d!)^m ≠ 0`, `|X_i - X_j| ≤ 2d`, `|T_i| ≥ (m-1)d + 1`.
    DifferenceBound,
    /// `T_i = F_p` and `Σ ⌈|X_i|²/2⌉ < p`.
    SquareBound,
    /// `T_i = F_p` and weights `a_i ≥ 0` with `|X_i - X_j| ≤ a_i + a_j`, `Σ a_i ≤ p - 1`.
    WeightBound,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub field: bool,
    pub factorial_nonzero: bool,
    pub difference_bound: bool,
    pub translate_sizes: bool,
    /// `max_{i<j} |X_i - X_j|`, zero when `m = 1`.
    pub max_difference: usize,
    /// Prime modulus with every `T_i` the whole field.
    pub full_translates: bool,
    pub square_bound: bool,
    pub weight_bound: bool,
    /// Weights of least total realizing the weight bound, when searched.
    pub weights: Option<Vec<u64>>,
    pub guarantee: Guarantee,
}

/// Largest `m` for which least-total weights are searched exhaustively.
const WEIGHT_SEARCH_LIMIT: usize = 8;

/// Minimizes `Σ a_i` subject to `a_i + a_j ≥ w[i][j]`, `a_i ≥ 0`.
fn least_weights(w: &[Vec<u64>]) -> Vec<u64> {
    fn go(w: &[Vec<u64>], a: &mut Vec<u64>, sum: u64, best: &mut (u64, Vec<u64>)) {
        let i = a.len();
        if i == w.len() {
            if sum < best.0 {
                *best = (sum, a.clone());
            }
            return;
        }
        let lower = (0..i)
            .map(|j| w[i][j].saturating_sub(a[j]))
            .max()
            .unwrap_or(0);
        let upper = (0..w.len()).map(|j| w[i][j]).max().unwrap_or(0).max(lower);
        for ai in lower..=upper {
            if sum + ai >= best.0 {
                break;
            }
            a.push(ai);
            go(w, a, sum + ai, best);
            a.pop();
        }
    }
    let start: Vec<u64> = (0..w.len())
        .map(|i| w[i].iter().copied().max().unwrap_or(0))
        .collect();
    let mut best = (start.iter().sum::<u64>() + 1, start);
    go(w, &mut Vec::new(), 0, &mut best);
    best.1
}

/// Evaluates each sufficient condition for the existence of a packing.
pub fn check_packing_hypotheses(inst: &PackingInstance) -> HypothesisReport {
    let m = inst.len();
    let d = inst.d;
    let field = inst.ambient.is_field();
    let factorial_nonzero = match inst.ambient {
        Ambient::Modular(n) => factorial_quotient_mod(m as u64, d, n) != 0,
        Ambient::Integers => true,
    };
    let mut w = vec![vec![0u64; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let size = inst.difference_set(j, i).len() as u64;
            w[i][j] = size;
            w[j][i] = size;
        }
    }
    let max_difference = w.iter().flatten().copied().max().unwrap_or(0) as usize;
    let difference_bound = max_difference as u64 <= 2 * d;
    let translate_sizes = inst.t.iter().all(|t| t.len() as u64 > (m as u64 - 1) * d);

    let full_translates = match inst.ambient {
        Ambient::Modular(p) if is_prime(p) => inst.t.iter().all(|t| t.len() as u64 == p),
        _ => false,
    };
    let (square_bound, weight_bound, weights) = match inst.ambient {
        Ambient::Modular(p) if full_translates => {
            let squares: u64 = inst
                .x
                .iter()
                .map(|x| (x.len() as u64).pow(2).div_ceil(2))
                .sum();
            let weights = if m <= WEIGHT_SEARCH_LIMIT {
                least_weights(&w)
            } else {
                inst.x
                    .iter()
                    .map(|x| (x.len() as u64).pow(2).div_ceil(2))
                    .collect()
            };
            let weight_ok = weights.iter().sum::<u64>() < p;
            (squares < p, weight_ok, Some(weights))
        }
        _ => (false, false, None),
    };
    let guarantee = if field && factorial_nonzero && difference_bound && translate_sizes {
        Guarantee::DifferenceBound
    } else if square_bound {
        Guarantee::SquareBound
    } else if weight_bound {
        Guarantee::WeightBound
    } else {
        Guarantee::None
    };
    HypothesisReport {
        field,
        factorial_nonzero,
        difference_bound,
        translate_sizes,
        max_difference,
        full_translates,
        square_bound,
        weight_bound,
        weights,
        guarantee,
    }
}

/// The pair-partition problem over a prime field as a packing instance:
/// `X_i = {0, d_i}`, `T_i = F_p \ {0, -d_i}`, `d = 2`.
pub fn partition_as_packing(inst: &PartitionInstance) -> Result<PackingInstance> {
    let p = inst.modulus();
    if inst.universe() != Universe::Nonzero || !is_prime(p) {
        return Err(invalid(
            "reduction needs a prime modulus and the nonzero universe",
        ));
    }
    let x = inst
        .differences()
        .iter()
        .map(|&d| vec![0, d as i64])
        .collect();
    let t = inst
        .differences()
        .iter()
        .map(|&d| (1..p as i64).filter(|&v| v != (p - d) as i64).collect())
        .collect();
    PackingInstance::new(Ambient::Modular(p), x, t, 2)
}

/// Reads the pairs `(t_i, t_i + d_i)` off a packing of the reduced instance.
pub fn packing_to_partition(inst: &PartitionInstance, t: &[i64]) -> PairPartition {
    let p = inst.modulus();
    PairPartition {
        pairs: t
            .iter()
            .zip(inst.differences())
            .map(|(&ti, &d)| (ti as u64, (ti as u64 + d) % p))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modular(n: u64, x: Vec<Vec<i64>>, t: Vec<Vec<i64>>, d: u64) -> PackingInstance {
        PackingInstance::new(Ambient::Modular(n), x, t, d).unwrap()
    }

    #[test]
    fn solver_examples() {
        let a = modular(5, vec![vec![0], vec![0]], vec![vec![0, 1], vec![0, 1]], 1);
        assert_eq!(solve_translate_packing(&a).solution(), Some(&vec![0, 1]));

        let single = modular(7, vec![vec![0, 3]], vec![vec![5, 2, 4]], 1);
        assert_eq!(solve_translate_packing(&single).solution(), Some(&vec![2]));

        let b = modular(
            7,
            vec![vec![0], vec![0, 1]],
            vec![vec![0, 1], vec![0, 1]],
            1,
        );
        assert_eq!(solve_translate_packing(&b).solution(), Some(&vec![0, 1]));

        let blocked = modular(5, vec![vec![0, 1], vec![0, 1]], vec![vec![0], vec![1]], 1);
        assert!(!solve_translate_packing(&blocked).is_feasible());
    }

    #[test]
    fn integer_ambient() {
        let inst = PackingInstance::new(
            Ambient::Integers,
            vec![vec![0, 1, 2], vec![0, 2], vec![-1]],
            vec![vec![0], vec![0, 1, 2, 3], vec![0, 1, 2, 3, 4, 5]],
            3,
        )
        .unwrap();
        let out = solve_translate_packing(&inst);
        let t = out.solution().unwrap();
        assert!(verify_packing(&inst, t));
        assert_eq!(t, &vec![0, 3, 0]);
    }

    #[test]
    fn hypothesis_examples() {
        let a = modular(5, vec![vec![0], vec![0]], vec![vec![0, 1], vec![0, 1]], 1);
        let r = check_packing_hypotheses(&a);
        assert!(r.field && r.factorial_nonzero && r.difference_bound && r.translate_sizes);
        assert_eq!(r.guarantee, Guarantee::DifferenceBound);

        let c = modular(3, vec![vec![0]; 3], vec![vec![0, 1, 2]; 3], 1);
        let r = check_packing_hypotheses(&c);
        assert!(!r.factorial_nonzero);

        let single = modular(7, vec![vec![0, 1, 2]], vec![vec![3]], 4);
        let r = check_packing_hypotheses(&single);
        assert!(r.difference_bound && r.translate_sizes && r.factorial_nonzero);
        assert_eq!(r.max_difference, 0);
    }

    #[test]
    fn remark_conditions() {
        // Two 2-sets in F_7 with full translate sets: ⌈4/2⌉ + ⌈4/2⌉ = 4 < 7.
        let full: Vec<i64> = (0..7).collect();
        let inst = modular(
            7,
            vec![vec![0, 1], vec![0, 3]],
            vec![full.clone(), full.clone()],
            1,
        );
        let r = check_packing_hypotheses(&inst);
        assert!(!r.difference_bound);
        assert!(r.square_bound && r.weight_bound);
        assert_eq!(r.guarantee, Guarantee::SquareBound);
        // Least weights cover the single difference set of size 4.
        assert_eq!(r.weights.as_ref().unwrap().iter().sum::<u64>(), 4);

        // Three 3-sets: squares give 15 > 13 but weights can do better.
        let full: Vec<i64> = (0..13).collect();
        let inst = modular(13, vec![vec![0, 1, 2]; 3], vec![full; 3], 1);
        let r = check_packing_hypotheses(&inst);
        assert!(!r.square_bound);
        assert_eq!(r.max_difference, 5);
        assert!(r.weight_bound);
        assert_eq!(r.guarantee, Guarantee::WeightBound);
        assert!(solve_translate_packing(&inst).is_feasible());
    }

    #[test]
    fn least_weights_is_optimal() {
        let w = vec![vec![0, 3, 5], vec![3, 0, 4], vec![5, 4, 0]];
        let a = least_weights(&w);
        assert_eq!(a.iter().sum::<u64>(), 6);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(a[i] + a[j] >= w[i][j]);
                }
            }
        }
    }

    #[test]
    fn verification() {
        let b = modular(
            7,
            vec![vec![0], vec![0, 1]],
            vec![vec![0, 1], vec![0, 1]],
            1,
        );
        assert!(verify_packing(&b, &[0, 1]));
        assert!(!verify_packing(&b, &[0, 0]));
        assert!(!verify_packing(&b, &[2, 1]));
        assert!(!verify_packing(&b, &[0]));
    }

    #[test]
    fn validation_and_json() {
        assert!(PackingInstance::new(Ambient::Modular(7), vec![], vec![], 1).is_err());
        assert!(PackingInstance::new(Ambient::Modular(7), vec![vec![0]], vec![], 1).is_err());
        let json = r#"{"n":7,"X":[[0],[0,1]],"T":[[0,1],[0,1]],"d":1}"#;
        let inst: PackingInstance = serde_json::from_str(json).unwrap();
        assert_eq!(serde_json::to_string(&inst).unwrap(), json);
        let ints: PackingInstance =
            serde_json::from_str(r#"{"X":[[0]],"T":[[-3]],"d":1}"#).unwrap();
        assert_eq!(ints.ambient(), Ambient::Integers);
    }

    #[test]
    fn reduction_from_pair_partitions() {
        let inst = PartitionInstance::new(7, &[1, 1, 3], None).unwrap();
        let pack = partition_as_packing(&inst).unwrap();
        assert_eq!(
            check_packing_hypotheses(&pack).guarantee,
            Guarantee::DifferenceBound
        );
        let t = solve_translate_packing(&pack).solution().unwrap().clone();
        let sol = packing_to_partition(&inst, &t);
        assert!(super::super::verify_pair_partition(&inst, &sol));
    }
}
