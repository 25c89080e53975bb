//! Scans of the unit-difference partition conjectures over `Z/(n)` and the
//! cyclotomic coefficients attached to them.
//!
//! For `n = 2m + 1` the conjecture asks for a partition of `Z/(n) \ {0}` into
//! pairs with differences `d_1, …, d_m ∈ Z/(n)^*`; for `n = 2m`, of all of
//! `Z/(n)`. The Nullstellensatz approach reduces nonvanishing of
//!
//! ```text
//! F = Π_{i<j} (x_i - x_j)(w_i x_i - x_j)(x_i - w_j x_j)(w_i x_i - w_j x_j),   w_i = w^{d_i}
//! ```
//!
//! on the `n`-th roots of unity to its coefficient at `Π x_i^{2m-2}`, a
//! permanent of geometric sums in `Z[w]`.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{double_factorial, factorial, gcd, is_prime, units, CycloInt, UniPoly};
use crate::error::{invalid, Error, Result};
use crate::rng;
use crate::solvers::{solve_pair_partition, PartitionInstance, Universe};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    Exhaustive,
    /// `count` difference vectors drawn uniformly from `(Z/(n)^*)^m`.
    Sample {
        count: u64,
        seed: u64,
    },
}

#[derive(Debug, Clone, Default)]
pub struct ScanOptions {
    /// Worker threads; the global rayon pool when `None`.
    pub threads: Option<usize>,
    /// Newline-delimited JSON of completed shards (exhaustive mode only).
    pub checkpoint: Option<PathBuf>,
    /// Record wall time in the report. Off by default so that reports are
    /// byte-identical across runs.
    pub timing: bool,
}

/// Aggregate of a conjecture scan. `failures` lists the infeasible
/// difference vectors in sorted form, one per multiset; `total` and
/// `feasible` count ordered vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub n: u64,
    pub universe: Universe,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub total: u64,
    pub feasible: u64,
    pub failures: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

impl ScanReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.feasible == self.total
    }

    /// Header plus one row; failures as `;`-separated comma lists.
    pub fn to_tsv(&self) -> String {
        let failures = if self.failures.is_empty() {
            "-".to_string()
        } else {
            self.failures
                .iter()
                .map(|d| d.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join(";")
        };
        let mut header = vec![
            "n", "universe", "mode", "seed", "total", "feasible", "failures",
        ];
        let mut row = vec![
            self.n.to_string(),
            self.universe.as_str().to_string(),
            self.mode.clone(),
            self.seed.map_or("-".to_string(), |s| s.to_string()),
            self.total.to_string(),
            self.feasible.to_string(),
            failures,
        ];
        if let Some(s) = self.seconds {
            header.push("seconds");
            row.push(format!("{s:.3}"));
        }
        format!("{}\n{}\n", header.join("\t"), row.join("\t"))
    }
}

/// One completed shard: every sorted difference vector starting with `prefix`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ShardRecord {
    n: u64,
    prefix: Vec<u64>,
    total: u64,
    feasible: u64,
    failures: Vec<Vec<u64>>,
}

const PREFIX_LEN: usize = 2;

fn is_feasible(n: u64, d: &[u64]) -> bool {
    let d: Vec<i64> = d.iter().map(|&x| x as i64).collect();
    let inst = PartitionInstance::conjecture(n, &d).expect("units form a valid instance");
    solve_pair_partition(&inst).is_feasible()
}

/// Number of orderings of a sorted vector.
fn orderings(sorted: &[u64]) -> u64 {
    let mut count = factorial(sorted.len() as u64);
    for run in sorted.chunk_by(|a, b| a == b) {
        count /= factorial(run.len() as u64);
    }
    count.to_u64().expect("ordering count fits in u64")
}

/// Nondecreasing index sequences of length `len` over `0..k` starting at `from`.
fn for_each_multiset(
    k: usize,
    len: usize,
    from: usize,
    buf: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if len == 0 {
        f(buf);
        return;
    }
    for i in from..k {
        buf.push(i);
        for_each_multiset(k, len - 1, i, buf, f);
        buf.pop();
    }
}

fn scan_shard(n: u64, unit: &[u64], m: usize, prefix: &[usize]) -> ShardRecord {
    let mut record = ShardRecord {
        n,
        prefix: prefix.iter().map(|&i| unit[i]).collect(),
        total: 0,
        feasible: 0,
        failures: Vec::new(),
    };
    let mut buf = prefix.to_vec();
    let from = prefix.last().copied().unwrap_or(0);
    for_each_multiset(unit.len(), m - prefix.len(), from, &mut buf, &mut |idx| {
        let d: Vec<u64> = idx.iter().map(|&i| unit[i]).collect();
        let weight = orderings(&d);
        record.total += weight;
        if is_feasible(n, &d) {
            record.feasible += weight;
        } else {
            record.failures.push(d);
        }
    });
    record
}

/// Completed shards from a checkpoint file. A final line without its newline
/// is a write cut short and is dropped; the file is rewritten without it so
/// that new records start on a fresh line.
fn read_checkpoint(path: &PathBuf, n: u64) -> Result<BTreeMap<Vec<u64>, ShardRecord>> {
    let io_err = |e: std::io::Error| Error::Checkpoint(format!("{}: {e}", path.display()));
    let mut done = BTreeMap::new();
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(done),
        Err(e) => return Err(io_err(e)),
    };
    let lines: Vec<&str> = text.lines().collect();
    let torn = !text.is_empty() && !text.ends_with('\n');
    let mut kept = String::new();
    for (lineno, line) in lines.iter().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: ShardRecord = match serde_json::from_str(line) {
            Ok(r) => r,
            Err(_) if torn && lineno + 1 == lines.len() => break,
            Err(e) => {
                return Err(Error::Checkpoint(format!(
                    "{}:{}: {e}",
                    path.display(),
                    lineno + 1
                )))
            }
        };
        if record.n != n {
            return Err(Error::Checkpoint(format!(
                "{} holds shards for n = {}, not {n}",
                path.display(),
                record.n
            )));
        }
        kept.push_str(line);
        kept.push('\n');
        done.insert(record.prefix.clone(), record);
    }
    if torn {
        std::fs::write(path, kept).map_err(io_err)?;
    }
    Ok(done)
}

fn run_exhaustive(n: u64, opts: &ScanOptions) -> Result<(u64, u64, Vec<Vec<u64>>)> {
    let unit = units(n);
    let m = (n / 2) as usize;
    let mut prefixes = Vec::new();
    for_each_multiset(
        unit.len(),
        m.min(PREFIX_LEN),
        0,
        &mut Vec::new(),
        &mut |p| prefixes.push(p.to_vec()),
    );

    let mut done = match &opts.checkpoint {
        Some(path) => read_checkpoint(path, n)?,
        None => BTreeMap::new(),
    };
    let pending: Vec<&Vec<usize>> = prefixes
        .iter()
        .filter(|p| !done.contains_key(&p.iter().map(|&i| unit[i]).collect::<Vec<_>>()))
        .collect();
    let writer = match &opts.checkpoint {
        Some(path) => Some(Mutex::new(
            OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?,
        )),
        None => None,
    };
    let fresh: Vec<ShardRecord> = pending
        .par_iter()
        .map(|p| {
            let record = scan_shard(n, &unit, m, p);
            if let Some(w) = &writer {
                let line = serde_json::to_string(&record).expect("shard records serialize");
                let mut file = w.lock().expect("checkpoint lock");
                writeln!(file, "{line}")
                    .and_then(|_| file.flush())
                    .map_err(|e| Error::Checkpoint(e.to_string()))?;
            }
            Ok(record)
        })
        .collect::<Result<_>>()?;
    for record in fresh {
        done.insert(record.prefix.clone(), record);
    }

    let (mut total, mut feasible, mut failures) = (0u64, 0u64, Vec::new());
    for record in done.into_values() {
        total += record.total;
        feasible += record.feasible;
        failures.extend(record.failures);
    }
    failures.sort();
    Ok((total, feasible, failures))
}

fn run_sample(n: u64, count: u64, seed: u64) -> (u64, u64, Vec<Vec<u64>>) {
    let unit = units(n);
    let m = (n / 2) as usize;
    let mut rng = rng::seeded(seed);
    let mut draws: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    for _ in 0..count {
        let mut d: Vec<u64> = (0..m)
            .map(|_| unit[rng.random_range(0..unit.len())])
            .collect();
        d.sort_unstable();
        *draws.entry(d).or_default() += 1;
    }
    let results: Vec<(Vec<u64>, u64, bool)> = draws
        .into_par_iter()
        .map(|(d, hits)| {
            let ok = is_feasible(n, &d);
            (d, hits, ok)
        })
        .collect();
    let mut feasible = 0;
    let mut failures = Vec::new();
    for (d, hits, ok) in results {
        if ok {
            feasible += hits;
        } else {
            failures.push(d);
        }
    }
    (count, feasible, failures)
}

/// Runs the pair-partition solver over difference vectors in `(Z/(n)^*)^m`,
/// `m = ⌊n/2⌋`. Exhaustive mode enumerates sorted vectors, solves each once
/// and weights it by its number of orderings, so `total = φ(n)^m`.
pub fn scan_conjecture(n: u64, mode: ScanMode, opts: &ScanOptions) -> Result<ScanReport> {
    if n < 3 {
        return Err(invalid(format!("conjecture scans need n >= 3, got {n}")));
    }
    if opts.checkpoint.is_some() && mode != ScanMode::Exhaustive {
        return Err(invalid("checkpoints apply to exhaustive scans only"));
    }
    let start = Instant::now();
    let run = || match mode {
        ScanMode::Exhaustive => run_exhaustive(n, opts),
        ScanMode::Sample { count, seed } => Ok(run_sample(n, count, seed)),
    };
    let (total, feasible, failures) = match opts.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| invalid(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let (mode_name, seed) = match mode {
        ScanMode::Exhaustive => ("exhaustive", None),
        ScanMode::Sample { seed, .. } => ("sample", Some(seed)),
    };
    Ok(ScanReport {
        n,
        universe: Universe::for_modulus(n),
        mode: mode_name.to_string(),
        seed,
        total,
        feasible,
        failures,
        seconds: opts.timing.then(|| start.elapsed().as_secs_f64()),
    })
}

/// Permanent by expansion over all `m!` bijections.
pub fn permanent_naive(order: usize, matrix: &[Vec<CycloInt>]) -> CycloInt {
    fn go(
        matrix: &[Vec<CycloInt>],
        row: usize,
        used: &mut [bool],
        acc: &CycloInt,
        sum: &mut CycloInt,
    ) {
        if row == matrix.len() {
            *sum = &*sum + acc;
            return;
        }
        for col in 0..matrix.len() {
            if !used[col] {
                used[col] = true;
                go(matrix, row + 1, used, &(acc * &matrix[row][col]), sum);
                used[col] = false;
            }
        }
    }
    let mut sum = CycloInt::zero(order);
    go(
        matrix,
        0,
        &mut vec![false; matrix.len()],
        &CycloInt::one(order),
        &mut sum,
    );
    sum
}

/// Ryser's formula: `perm A = (-1)^m Σ_{S ⊆ cols} (-1)^{|S|} Π_i Σ_{j ∈ S} a_ij`.
pub fn permanent_ryser(order: usize, matrix: &[Vec<CycloInt>]) -> CycloInt {
    let m = matrix.len();
    let mut sum = CycloInt::zero(order);
    for mask in 1u64..(1 << m) {
        let mut prod = CycloInt::one(order);
        for row in matrix {
            let mut s = CycloInt::zero(order);
            for (j, a) in row.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    s = &s + a;
                }
            }
            prod = &prod * &s;
        }
        if (m as u32 - mask.count_ones()).is_multiple_of(2) {
            sum = &sum + &prod;
        } else {
            sum = &sum - &prod;
        }
    }
    sum
}

const NAIVE_PERMANENT_LIMIT: usize = 8;

pub fn permanent(order: usize, matrix: &[Vec<CycloInt>]) -> CycloInt {
    if matrix.len() <= NAIVE_PERMANENT_LIMIT {
        permanent_naive(order, matrix)
    } else {
        permanent_ryser(order, matrix)
    }
}

fn check_units(n: u64, d: &[i64]) -> Result<Vec<i64>> {
    if n < 2 {
        return Err(invalid(format!("root order must be at least 2, got {n}")));
    }
    if d.is_empty() {
        return Err(invalid("empty difference vector"));
    }
    d.iter()
        .map(|&x| {
            let r = x.rem_euclid(n as i64);
            if gcd(r as u64, n) == 1 {
                Ok(r)
            } else {
                Err(invalid(format!("difference {x} is not a unit mod {n}")))
            }
        })
        .collect()
}

/// The `m × m` matrix of geometric sums `Σ_{e=k}^{2m-2-k} w_i^e`.
pub fn permanent2_matrix(n: u64, d: &[i64]) -> Result<Vec<Vec<CycloInt>>> {
    let d = check_units(n, d)?;
    let m = d.len() as i64;
    Ok(d.iter()
        .map(|&di| {
            (0..m)
                .map(|k| CycloInt::geometric_sum(n as usize, di, k, 2 * m - 2 - k))
                .collect()
        })
        .collect())
}

/// The `m × m` matrix of `w_i^k - w_i^{2m-1-k}`.
pub fn permanent_matrix(n: u64, d: &[i64]) -> Result<Vec<Vec<CycloInt>>> {
    let d = check_units(n, d)?;
    let m = d.len() as i64;
    let n = n as usize;
    Ok(d.iter()
        .map(|&di| {
            (0..m)
                .map(|k| {
                    &CycloInt::monomial(n, di * k) - &CycloInt::monomial(n, di * (2 * m - 1 - k))
                })
                .collect()
        })
        .collect())
}

/// `Σ_π Π_i (w_i^{π_i} + … + w_i^{2m-2-π_i})`, the coefficient of
/// `Π x_i^{2m-2}` in `F`, built without division. The result is reduced
/// mod `x^n - 1` only, so its value at 1 is meaningful.
pub fn permanent2_coefficient(n: u64, d: &[i64]) -> Result<CycloInt> {
    Ok(permanent(n as usize, &permanent2_matrix(n, d)?))
}

/// `Σ_π Π_i (w_i^{π_i} - w_i^{2m-1-π_i})`.
pub fn permanent_coefficient(n: u64, d: &[i64]) -> Result<CycloInt> {
    Ok(permanent(n as usize, &permanent_matrix(n, d)?))
}

/// `Π_i (1 - w_i)`.
pub fn unit_factor_product(n: u64, d: &[i64]) -> Result<CycloInt> {
    let d = check_units(n, d)?;
    let n = n as usize;
    Ok(d.iter().fold(CycloInt::one(n), |acc, &di| {
        &acc * &(&CycloInt::one(n) - &CycloInt::monomial(n, di))
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeCertificate {
    pub p: u64,
    pub m: u64,
    /// The permanent-of-geometric-sums coefficient with every `w_i` set to 1.
    pub value_at_one: BigInt,
    /// `m! (2m-1)!!`.
    pub expected: BigInt,
    /// `value_at_one mod p ≠ 0`, which forces the coefficient to be nonzero.
    pub nonzero: bool,
}

impl PrimeCertificate {
    pub fn matches_formula(&self) -> bool {
        self.value_at_one == self.expected
    }
}

/// For `n = p` prime and `m = (p-1)/2`: a value at 1 not divisible by `p`
/// rules out the coefficient vanishing in `Z[ζ_p]`.
pub fn prime_nonzero_certificate(p: u64, d: &[i64]) -> Result<PrimeCertificate> {
    if p < 3 || !is_prime(p) {
        return Err(invalid(format!("{p} is not an odd prime")));
    }
    let m = (p - 1) / 2;
    if d.len() as u64 != m {
        return Err(invalid(format!(
            "expected {m} differences for p = {p}, got {}",
            d.len()
        )));
    }
    let value_at_one = permanent2_coefficient(p, d)?.eval_at_one();
    let expected = BigInt::from(factorial(m) * double_factorial(2 * m - 1));
    let nonzero = !value_at_one.mod_floor(&BigInt::from(p)).is_zero();
    Ok(PrimeCertificate {
        p,
        m,
        value_at_one,
        expected,
        nonzero,
    })
}

/// Whether `f(ζ_p) = 0 ⇒ p | f(1)` holds for this `f`.
pub fn divisibility_lemma_check(f: &UniPoly, p: u64) -> bool {
    if !CycloInt::from_poly(p as usize, f).is_zero() {
        return true;
    }
    f.eval_at_one().mod_floor(&BigInt::from(p)).is_zero()
}

/// Sorted `(Z/(n)^*)^m` vectors, `m = ⌊n/2⌋`, for exhaustive checks of the
/// coefficient identities.
pub fn sorted_unit_vectors(n: u64, m: usize) -> Vec<Vec<i64>> {
    let unit = units(n);
    let mut out = Vec::new();
    for_each_multiset(unit.len(), m, 0, &mut Vec::new(), &mut |idx| {
        out.push(idx.iter().map(|&i| unit[i] as i64).collect())
    });
    out
}

/// All of `(Z/(n)^*)^m` in lexicographic order.
pub fn all_unit_vectors(n: u64, m: usize) -> Vec<Vec<i64>> {
    let unit = units(n);
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v| {
                unit.iter().map(move |&u| {
                    let mut w = v.clone();
                    w.push(u as i64);
                    w
                })
            })
            .collect();
    }
    out
}
