//! Grid sums behind the Combinatorial Nullstellensatz: the interpolation
//! formula for the coefficient of `x_1^{c_1}…x_n^{c_n}`, sums over all of
//! `F_p^m`, and nonzero-point search on a grid.

use rayon::prelude::*;

use crate::algebra::{is_prime, ModRing};
use crate::error::{Error, Result};
use crate::poly::{AffineFactor, CoeffRing, Evaluate, FactoredPoly};

/// Finite sets `A_1, …, A_n` of distinct ring elements; `c_i = |A_i| - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec<R: CoeffRing> {
    sets: Vec<Vec<R::Elem>>,
}

impl<R: CoeffRing> GridSpec<R> {
    pub fn new(sets: Vec<Vec<R::Elem>>) -> Result<Self> {
        for (i, set) in sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::InvalidInstance(format!("grid set {i} is empty")));
            }
            for (a, x) in set.iter().enumerate() {
                if set[..a].contains(x) {
                    return Err(Error::InvalidInstance(format!(
                        "grid set {i} repeats {x:?}"
                    )));
                }
            }
        }
        Ok(Self { sets })
    }

    pub fn sets(&self) -> &[Vec<R::Elem>] {
        &self.sets
    }

    pub fn dim(&self) -> usize {
        self.sets.len()
    }

    /// The exponents `c_i = |A_i| - 1`.
    pub fn degrees(&self) -> Vec<u32> {
        self.sets.iter().map(|s| s.len() as u32 - 1).collect()
    }

    /// Visits every grid point in lexicographic order of the set positions;
    /// stops early when the visitor returns `false`.
    pub fn for_each_point(&self, mut visit: impl FnMut(&[usize], &[R::Elem]) -> bool) {
        let n = self.sets.len();
        let mut idx = vec![0usize; n];
        let mut point: Vec<R::Elem> = self.sets.iter().map(|s| s[0].clone()).collect();
        loop {
            if !visit(&idx, &point) {
                return;
            }
            let mut k = n;
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < self.sets[k].len() {
                    point[k] = self.sets[k][idx[k]].clone();
                    break;
                }
                idx[k] = 0;
                point[k] = self.sets[k][0].clone();
            }
        }
    }

    fn check_arity(&self, arity: usize) -> Result<()> {
        if self.sets.len() != arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: self.sets.len(),
            });
        }
        Ok(())
    }
}

/// `φ_i'(α) = Π_{β ∈ A_i, β ≠ α} (α - β)` for every `α ∈ A_i`.
fn derivative_values<R: CoeffRing>(ring: &R, set: &[R::Elem]) -> Vec<R::Elem> {
    set.iter()
        .enumerate()
        .map(|(a, alpha)| {
            set.iter()
                .enumerate()
                .filter(|&(b, _)| b != a)
                .fold(ring.one(), |acc, (_, beta)| {
                    ring.mul(&acc, &ring.sub(alpha, beta))
                })
        })
        .collect()
}

/// The coefficient of `Π x_i^{c_i}` in `f`, recovered from the values of `f`
/// on the grid as `Σ f(α) / Π φ_i'(α_i)`.
///
/// The sum is taken over the common denominator `D = Π_i Π_{α ∈ A_i} φ_i'(α)`:
/// every value is weighted by the product of the derivative values it does not
/// use, and the total is divided by `D` once at the end. Over the integers or a
/// field this division is exact; over `Z/(n)` it needs `D` to be a unit.
pub fn cn_coefficient<R, F>(f: &F, grid: &GridSpec<R>) -> Result<R::Elem>
where
    R: CoeffRing,
    F: Evaluate<R>,
{
    grid.check_arity(f.arity())?;
    let bound: usize = grid.degrees().iter().map(|&c| c as usize).sum();
    if f.degree_bound() > bound {
        return Err(Error::DegreeTooHigh {
            degree: f.degree_bound(),
            bound,
        });
    }
    let ring = f.ring();
    let derivs: Vec<Vec<R::Elem>> = grid
        .sets()
        .iter()
        .map(|s| derivative_values(ring, s))
        .collect();
    // co[i][a] = Π_{b ≠ a} φ_i'(A_i[b])
    let co: Vec<Vec<R::Elem>> = derivs
        .iter()
        .map(|dv| {
            (0..dv.len())
                .map(|a| {
                    dv.iter()
                        .enumerate()
                        .filter(|&(b, _)| b != a)
                        .fold(ring.one(), |acc, (_, v)| ring.mul(&acc, v))
                })
                .collect()
        })
        .collect();
    let denominator = derivs
        .iter()
        .flatten()
        .fold(ring.one(), |acc, v| ring.mul(&acc, v));

    let mut numerator = ring.zero();
    let mut failure = None;
    grid.for_each_point(|idx, point| {
        let value = match f.eval(point) {
            Ok(v) => v,
            Err(e) => {
                failure = Some(e);
                return false;
            }
        };
        if !ring.is_zero(&value) {
            let weight = idx
                .iter()
                .enumerate()
                .fold(value, |acc, (i, &a)| ring.mul(&acc, &co[i][a]));
            numerator = ring.add(&numerator, &weight);
        }
        true
    });
    if let Some(e) = failure {
        return Err(e);
    }
    ring.exact_div(&numerator, &denominator)
        .ok_or(Error::NonInvertibleDenominator)
}

/// First grid point, in lexicographic order, where `f` does not vanish.
pub fn cn_witness<R, F>(f: &F, grid: &GridSpec<R>) -> Result<Option<Vec<R::Elem>>>
where
    R: CoeffRing,
    F: Evaluate<R>,
{
    grid.check_arity(f.arity())?;
    let ring = f.ring();
    let mut found = None;
    let mut failure = None;
    grid.for_each_point(|_, point| match f.eval(point) {
        Ok(v) if !ring.is_zero(&v) => {
            found = Some(point.to_vec());
            false
        }
        Ok(_) => true,
        Err(e) => {
            failure = Some(e);
            false
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// `Σ_{c ∈ F_p^m} f(c)` for a polynomial over the prime field `F_p`.
pub fn integral_over_field<F>(f: &F) -> Result<u64>
where
    F: Evaluate<ModRing> + Sync,
{
    let ring = *f.ring();
    let p = ring.modulus();
    if !is_prime(p) {
        return Err(Error::InvalidInstance(format!("{p} is not prime")));
    }
    let m = f.arity();
    if m == 0 {
        return f.eval(&[]);
    }
    let rest = GridSpec::<ModRing>::new(vec![(0..p).collect(); m - 1])?;
    (0..p)
        .into_par_iter()
        .map(|first| {
            let mut acc = 0u64;
            let mut point = vec![0u64; m];
            point[0] = first;
            let mut failure = None;
            rest.for_each_point(|_, tail| {
                point[1..].copy_from_slice(tail);
                match f.eval(&point) {
                    Ok(v) => {
                        acc = ring.add(acc, v);
                        true
                    }
                    Err(e) => {
                        failure = Some(e);
                        false
                    }
                }
            });
            failure.map_or(Ok(acc), Err)
        })
        .try_reduce(|| 0, |a, b| Ok(ring.add(a, b)))
}

/// The pairing polynomial over `F_p`:
/// `Π_{i<j} (x_i - x_j)(x_i + d_i - x_j)(x_i - x_j - d_j)(x_i + d_i - x_j - d_j)`,
/// optionally multiplied by `Π_i x_i (x_i + d_i)`.
///
/// It is nonzero at `c` exactly when the pairs `{c_i, c_i + d_i}` are
/// pairwise disjoint (and, with the extra factors, avoid zero).
pub fn pairing_polynomial(
    p: u64,
    d: &[u64],
    with_nonzero_factors: bool,
) -> Result<FactoredPoly<ModRing>> {
    let ring = ModRing::try_new(p)?;
    let m = d.len();
    let mut f = FactoredPoly::new(ring, m);
    if with_nonzero_factors {
        for (i, &di) in d.iter().enumerate() {
            f.push(AffineFactor::var(&ring, i, 0))?;
            f.push(AffineFactor::var(&ring, i, ring.reduce(di as i64)))?;
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            let (di, dj) = (ring.reduce(d[i] as i64), ring.reduce(d[j] as i64));
            f.push(AffineFactor::difference(&ring, i, j, 0))?;
            f.push(AffineFactor::difference(&ring, i, j, di))?;
            f.push(AffineFactor::difference(&ring, i, j, ring.neg(dj)))?;
            f.push(AffineFactor::difference(&ring, i, j, ring.sub(di, dj)))?;
        }
    }
    Ok(f)
}

/// `Π_i (x_i^2 + x_i) · Π_{i<j} (x_i - x_j)^2 ((x_i - x_j)^2 - 1)` over `F_p`,
/// the comparison polynomial sharing the top homogeneous part of the pairing
/// polynomial with all `d_i` present.
pub fn odd_pairs_polynomial(p: u64, m: usize) -> Result<FactoredPoly<ModRing>> {
    let ring = ModRing::try_new(p)?;
    let mut f = FactoredPoly::new(ring, m);
    for i in 0..m {
        f.push(AffineFactor::var(&ring, i, 0))?;
        f.push(AffineFactor::var(&ring, i, 1))?;
    }
    for i in 0..m {
        for j in i + 1..m {
            f.push(AffineFactor::difference(&ring, i, j, 0))?;
            f.push(AffineFactor::difference(&ring, i, j, 0))?;
            f.push(AffineFactor::difference(&ring, i, j, 1))?;
            f.push(AffineFactor::difference(&ring, i, j, ring.neg(1)))?;
        }
    }
    Ok(f)
}

/// `A_i = F_p^* \ {-d_i}`, the grid used with the pairing polynomial.
pub fn pairing_grid(p: u64, d: &[u64]) -> Result<GridSpec<ModRing>> {
    let ring = ModRing::try_new(p)?;
    GridSpec::new(
        d.iter()
            .map(|&di| {
                let forbidden = ring.neg(ring.reduce(di as i64));
                (1..p).filter(|&x| x != forbidden).collect()
            })
            .collect(),
    )
}
