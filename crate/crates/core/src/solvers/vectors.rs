use serde::{Deserialize, Serialize};

use super::{multiset_classes, Outcome};
use crate::algebra::{Basis, VectorElem};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Deserialize)]
struct RawVectorInstance {
    p: u64,
    k: usize,
    bases: Vec<Vec<Vec<i64>>>,
}

/// `m = (p^k - 1)/2` bases of `(F_p)^k`, one per pair; pair `i` may use any
/// vector of basis `i` as its difference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawVectorInstance", into = "RawVectorOut")]
pub struct VectorPartitionInstance {
    p: u64,
    k: usize,
    bases: Vec<Basis>,
}

#[derive(Serialize)]
struct RawVectorOut {
    p: u64,
    k: usize,
    bases: Vec<Vec<Vec<u64>>>,
}

impl From<VectorPartitionInstance> for RawVectorOut {
    fn from(inst: VectorPartitionInstance) -> Self {
        Self {
            p: inst.p,
            k: inst.k,
            bases: inst
                .bases
                .iter()
                .map(|b| b.vectors().iter().map(|v| v.coords().to_vec()).collect())
                .collect(),
        }
    }
}

impl TryFrom<RawVectorInstance> for VectorPartitionInstance {
    type Error = Error;
    fn try_from(raw: RawVectorInstance) -> Result<Self> {
        let bases = raw
            .bases
            .into_iter()
            .map(|b| {
                let vectors: Vec<VectorElem> = b
                    .into_iter()
                    .map(|c| {
                        if c.len() != raw.k {
                            return Err(Error::DimensionMismatch {
                                expected: raw.k,
                                found: c.len(),
                            });
                        }
                        Ok(VectorElem::new(raw.p, c))
                    })
                    .collect::<Result<_>>()?;
                Basis::new(raw.p, vectors)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(raw.p, raw.k, bases)
    }
}

fn universe_size(p: u64, k: usize) -> Result<usize> {
    (p as usize)
        .checked_pow(k as u32)
        .filter(|&s| s <= 1 << 24)
        .ok_or_else(|| invalid(format!("(F_{p})^{k} is too large to search")))
}

impl VectorPartitionInstance {
    pub fn new(p: u64, k: usize, bases: Vec<Basis>) -> Result<Self> {
        if p.is_multiple_of(2) || !crate::algebra::is_prime(p) {
            return Err(invalid(format!("{p} is not an odd prime")));
        }
        let size = universe_size(p, k)?;
        if bases.len() != (size - 1) / 2 {
            return Err(invalid(format!(
                "need (p^k - 1)/2 = {} bases, got {}",
                (size - 1) / 2,
                bases.len()
            )));
        }
        for b in &bases {
            if b.p() != p || b.dim() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: b.dim(),
                });
            }
        }
        Ok(Self { p, k, bases })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn bases(&self) -> &[Basis] {
        &self.bases
    }

    fn options(&self) -> Vec<Vec<VectorElem>> {
        self.bases.iter().map(|b| b.vectors().to_vec()).collect()
    }
}

/// Pairs `(x_i, y_i)` of nonzero vectors and the chosen basis position
/// `g[i]` with `y_i - x_i = v_{i, g[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorPartition {
    pub pairs: Vec<(Vec<u64>, Vec<u64>)>,
    pub g: Vec<usize>,
}

struct VectorSearch {
    used: Vec<bool>,
    // add[e][v] / sub[e][v]: index of element e ± option vector v
    add: Vec<Vec<usize>>,
    sub: Vec<Vec<usize>>,
    // option vector ids per class
    class_vectors: Vec<Vec<usize>>,
    counts: Vec<usize>,
    picks: Vec<(usize, usize, usize, usize)>,
    nodes: u64,
}

impl VectorSearch {
    fn take(&mut self, x: usize, y: usize, class: usize, j: usize, next: usize) -> bool {
        self.used[x] = true;
        self.used[y] = true;
        self.counts[class] -= 1;
        self.picks.push((x, y, class, j));
        if self.search(next) {
            return true;
        }
        self.picks.pop();
        self.counts[class] += 1;
        self.used[x] = false;
        self.used[y] = false;
        false
    }

    fn search(&mut self, from: usize) -> bool {
        self.nodes += 1;
        let Some(e) = (from..self.used.len()).find(|&e| !self.used[e]) else {
            return true;
        };
        for class in 0..self.class_vectors.len() {
            if self.counts[class] == 0 {
                continue;
            }
            for j in 0..self.class_vectors[class].len() {
                let v = self.class_vectors[class][j];
                let up = self.add[e][v];
                if !self.used[up] && self.take(e, up, class, j, e + 1) {
                    return true;
                }
                let down = self.sub[e][v];
                if down != up && !self.used[down] && self.take(down, e, class, j, e + 1) {
                    return true;
                }
            }
        }
        false
    }
}

/// Backtracking over `(F_p)^k \ {0}` in lexicographic order, where pair `i`
/// may use any vector in `options[i]` as its difference.
///
/// No basis check is made, which makes this the entry point for degenerate
/// inputs; [`solve_vector_partition`] is the validated front end.
pub fn solve_vector_pairing(
    p: u64,
    k: usize,
    options: &[Vec<VectorElem>],
) -> Result<Outcome<VectorPartition>> {
    let size = universe_size(p, k)?;
    if options.len() * 2 + 1 != size {
        return Err(invalid(format!(
            "need (p^k - 1)/2 = {} pairs, got {}",
            (size - 1) / 2,
            options.len()
        )));
    }
    for v in options.iter().flatten() {
        if v.p() != p || v.dim() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: v.dim(),
            });
        }
        if v.is_zero() {
            return Err(invalid("zero difference vector"));
        }
    }
    let classes = multiset_classes(options);
    let mut vectors: Vec<VectorElem> = Vec::new();
    let class_vectors: Vec<Vec<usize>> = classes
        .iter()
        .map(|(opts, _)| {
            opts.iter()
                .map(|v| match vectors.iter().position(|w| w == v) {
                    Some(i) => i,
                    None => {
                        vectors.push(v.clone());
                        vectors.len() - 1
                    }
                })
                .collect()
        })
        .collect();
    let elems: Vec<VectorElem> = (0..size).map(|i| VectorElem::from_index(p, k, i)).collect();
    let add = elems
        .iter()
        .map(|e| vectors.iter().map(|v| e.add(v).index()).collect())
        .collect();
    let sub = elems
        .iter()
        .map(|e| vectors.iter().map(|v| e.sub(v).index()).collect())
        .collect();
    let mut used = vec![false; size];
    used[0] = true;
    let mut search = VectorSearch {
        used,
        add,
        sub,
        class_vectors,
        counts: classes.iter().map(|(_, idx)| idx.len()).collect(),
        picks: Vec::new(),
        nodes: 0,
    };
    if !search.search(1) {
        return Ok(Outcome::Infeasible {
            nodes: search.nodes,
        });
    }
    let mut pairs = vec![(Vec::new(), Vec::new()); options.len()];
    let mut g = vec![0; options.len()];
    let mut cursor = vec![0usize; classes.len()];
    for &(x, y, class, j) in &search.picks {
        let i = classes[class].1[cursor[class]];
        cursor[class] += 1;
        pairs[i] = (elems[x].coords().to_vec(), elems[y].coords().to_vec());
        g[i] = j;
    }
    Ok(Outcome::Feasible {
        solution: VectorPartition { pairs, g },
        nodes: search.nodes,
    })
}

pub fn solve_vector_partition(inst: &VectorPartitionInstance) -> Outcome<VectorPartition> {
    solve_vector_pairing(inst.p, inst.k, &inst.options())
        .expect("validated instance is well formed")
}

/// Re-checks a vector partition: differences, distinctness, exact coverage of `V^*`.
pub fn verify_vector_partition(inst: &VectorPartitionInstance, sol: &VectorPartition) -> bool {
    let (p, k) = (inst.p, inst.k);
    if sol.pairs.len() != inst.bases.len() || sol.g.len() != inst.bases.len() {
        return false;
    }
    let mut seen = std::collections::BTreeSet::new();
    for ((x, y), (basis, &j)) in sol.pairs.iter().zip(inst.bases.iter().zip(&sol.g)) {
        let Some(v) = basis.vectors().get(j) else {
            return false;
        };
        if x.len() != k || y.len() != k || x.iter().chain(y).any(|&c| c >= p) {
            return false;
        }
        let xv = VectorElem::new(p, x.iter().map(|&c| c as i64));
        let yv = VectorElem::new(p, y.iter().map(|&c| c as i64));
        if &yv.sub(&xv) != v || xv.is_zero() || yv.is_zero() {
            return false;
        }
        if !seen.insert(xv) || !seen.insert(yv) {
            return false;
        }
    }
    seen.len() + 1 == (p as usize).pow(k as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(p: u64, c: &[i64]) -> VectorElem {
        VectorElem::new(p, c.iter().copied())
    }

    #[test]
    fn standard_bases_in_the_plane() {
        let inst = VectorPartitionInstance::new(3, 2, vec![Basis::standard(3, 2); 4]).unwrap();
        let out = solve_vector_partition(&inst);
        let sol = out.solution().expect("feasible");
        assert!(verify_vector_partition(&inst, sol));
    }

    #[test]
    fn dimension_one_is_the_prime_case() {
        for p in [3u64, 5, 7] {
            let m = ((p - 1) / 2) as usize;
            let bases: Vec<Basis> = (0..m)
                .map(|i| Basis::new(p, vec![v(p, &[(i % (p as usize - 1)) as i64 + 1])]).unwrap())
                .collect();
            let inst = VectorPartitionInstance::new(p, 1, bases).unwrap();
            let out = solve_vector_partition(&inst);
            assert!(verify_vector_partition(&inst, out.solution().unwrap()));
        }
    }

    #[test]
    fn single_direction_is_infeasible() {
        let e1 = v(3, &[1, 0]);
        assert!(Basis::new(3, vec![e1.clone()]).is_err());
        let out = solve_vector_pairing(3, 2, &vec![vec![e1]; 4]).unwrap();
        assert!(matches!(out, Outcome::Infeasible { .. }));
    }

    #[test]
    fn validation() {
        assert!(VectorPartitionInstance::new(3, 2, vec![Basis::standard(3, 2); 3]).is_err());
        assert!(VectorPartitionInstance::new(4, 1, vec![]).is_err());
        let json =
            r#"{"p":3,"k":2,"bases":[[[1,0],[0,1]],[[1,1],[1,2]],[[1,0],[0,1]],[[0,1],[1,0]]]}"#;
        let inst: VectorPartitionInstance = serde_json::from_str(json).unwrap();
        assert_eq!(serde_json::to_string(&inst).unwrap(), json);
        let bad =
            r#"{"p":3,"k":2,"bases":[[[1,0],[2,0]],[[1,1],[1,2]],[[1,0],[0,1]],[[0,1],[1,0]]]}"#;
        assert!(serde_json::from_str::<VectorPartitionInstance>(bad).is_err());
    }

    #[test]
    fn verification_rejects_tampering() {
        let inst = VectorPartitionInstance::new(3, 2, vec![Basis::standard(3, 2); 4]).unwrap();
        let mut sol = solve_vector_partition(&inst).solution().unwrap().clone();
        sol.g[0] = 1 - sol.g[0];
        assert!(!verify_vector_partition(&inst, &sol));
    }
}
