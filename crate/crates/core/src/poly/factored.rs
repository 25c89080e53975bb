use super::{monomial_bound, CoeffRing, MultiPoly};
use crate::error::{Error, Result};

/// Anything that can be evaluated pointwise over its coefficient ring and
/// reports an upper bound on its total degree.
pub trait Evaluate<R: CoeffRing> {
    fn ring(&self) -> &R;
    fn arity(&self) -> usize;
    fn degree_bound(&self) -> usize;
    fn eval(&self, point: &[R::Elem]) -> Result<R::Elem>;
}

impl<R: CoeffRing> Evaluate<R> for MultiPoly<R> {
    fn ring(&self) -> &R {
        MultiPoly::ring(self)
    }
    fn arity(&self) -> usize {
        MultiPoly::arity(self)
    }
    fn degree_bound(&self) -> usize {
        self.total_degree().unwrap_or(0)
    }
    fn eval(&self, point: &[R::Elem]) -> Result<R::Elem> {
        MultiPoly::eval(self, point)
    }
}

/// `Σ c_k x_{v_k} + constant`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineFactor<R: CoeffRing> {
    linear: Vec<(usize, R::Elem)>,
    constant: R::Elem,
}

impl<R: CoeffRing> AffineFactor<R> {
    pub fn new(linear: Vec<(usize, R::Elem)>, constant: R::Elem) -> Self {
        Self { linear, constant }
    }

    /// `x_i + shift`.
    pub fn var(ring: &R, i: usize, shift: R::Elem) -> Self {
        Self::new(vec![(i, ring.one())], shift)
    }

    /// `x_i - x_j + shift`.
    pub fn difference(ring: &R, i: usize, j: usize, shift: R::Elem) -> Self {
        Self::new(vec![(i, ring.one()), (j, ring.neg(&ring.one()))], shift)
    }

    pub fn linear(&self) -> &[(usize, R::Elem)] {
        &self.linear
    }

    pub fn constant(&self) -> &R::Elem {
        &self.constant
    }

    fn is_constant(&self, ring: &R) -> bool {
        self.linear.iter().all(|(_, c)| ring.is_zero(c))
    }

    fn eval(&self, ring: &R, point: &[R::Elem]) -> R::Elem {
        self.linear
            .iter()
            .fold(self.constant.clone(), |acc, (v, c)| {
                ring.add(&acc, &ring.mul(c, &point[*v]))
            })
    }

    fn to_poly(&self, ring: &R, arity: usize) -> Result<MultiPoly<R>> {
        let mut terms = vec![(vec![0; arity], self.constant.clone())];
        for (v, c) in &self.linear {
            let mut e = vec![0; arity];
            e[*v] = 1;
            terms.push((e, c.clone()));
        }
        MultiPoly::from_terms(ring.clone(), arity, terms)
    }
}

/// A scalar times a product of affine factors, kept unexpanded. Evaluation
/// costs one pass over the factors and stops at the first zero.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredPoly<R: CoeffRing> {
    ring: R,
    arity: usize,
    scale: R::Elem,
    factors: Vec<AffineFactor<R>>,
}

impl<R: CoeffRing> FactoredPoly<R> {
    pub fn new(ring: R, arity: usize) -> Self {
        let scale = ring.one();
        Self {
            ring,
            arity,
            scale,
            factors: Vec::new(),
        }
    }

    pub fn push(&mut self, factor: AffineFactor<R>) -> Result<()> {
        if let Some(&(v, _)) = factor.linear.iter().find(|(v, _)| *v >= self.arity) {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: v + 1,
            });
        }
        self.factors.push(factor);
        Ok(())
    }

    pub fn with(mut self, factor: AffineFactor<R>) -> Result<Self> {
        self.push(factor)?;
        Ok(self)
    }

    pub fn scaled(mut self, k: R::Elem) -> Self {
        self.scale = self.ring.mul(&self.scale, &k);
        self
    }

    pub fn factors(&self) -> &[AffineFactor<R>] {
        &self.factors
    }

    /// Number of non-constant factors, an upper bound on the total degree.
    pub fn degree(&self) -> usize {
        self.factors
            .iter()
            .filter(|f| !f.is_constant(&self.ring))
            .count()
    }

    fn degree_in(&self, var: usize) -> usize {
        self.factors
            .iter()
            .filter(|f| {
                f.linear
                    .iter()
                    .any(|(v, c)| *v == var && !self.ring.is_zero(c))
            })
            .count()
    }

    /// Multiplies out every factor; guarded by `budget` on the term count.
    pub fn expand(&self, budget: usize) -> Result<MultiPoly<R>> {
        let per_var: Vec<u64> = (0..self.arity).map(|v| self.degree_in(v) as u64).collect();
        let predicted = monomial_bound(self.degree() as u64, &per_var, false);
        if predicted > budget as u128 {
            return Err(Error::BudgetExceeded { predicted, budget });
        }
        let mut acc = MultiPoly::constant(self.ring.clone(), self.arity, self.scale.clone());
        for f in &self.factors {
            acc = acc.mul(&f.to_poly(&self.ring, self.arity)?)?;
            if acc.num_terms() > budget {
                return Err(Error::BudgetExceeded {
                    predicted: acc.num_terms() as u128,
                    budget,
                });
            }
        }
        Ok(acc)
    }
}

impl<R: CoeffRing> Evaluate<R> for FactoredPoly<R> {
    fn ring(&self) -> &R {
        &self.ring
    }

    fn arity(&self) -> usize {
        self.arity
    }

    fn degree_bound(&self) -> usize {
        self.degree()
    }

    fn eval(&self, point: &[R::Elem]) -> Result<R::Elem> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: point.len(),
            });
        }
        let ring = &self.ring;
        let mut acc = self.scale.clone();
        for f in &self.factors {
            if ring.is_zero(&acc) {
                break;
            }
            acc = ring.mul(&acc, &f.eval(ring, point));
        }
        Ok(acc)
    }
}

/// Expands a product of affine factors.
pub fn product_of_affine_factors<R: CoeffRing>(
    ring: R,
    arity: usize,
    factors: impl IntoIterator<Item = AffineFactor<R>>,
    budget: usize,
) -> Result<MultiPoly<R>> {
    let mut f = FactoredPoly::new(ring, arity);
    for factor in factors {
        f.push(factor)?;
    }
    f.expand(budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ModRing;
    use crate::poly::Integers;
    use num_bigint::BigInt;

    #[test]
    fn expansion_examples() {
        let z = Integers;
        let p = product_of_affine_factors(z, 1, [AffineFactor::var(&z, 0, 1.into())], 100).unwrap();
        assert_eq!(p.coefficient(&[1]).unwrap(), BigInt::from(1));
        assert_eq!(p.coefficient(&[0]).unwrap(), BigInt::from(1));

        let q = product_of_affine_factors(
            z,
            2,
            [
                AffineFactor::difference(&z, 0, 1, (-1).into()),
                AffineFactor::difference(&z, 0, 1, 1.into()),
            ],
            100,
        )
        .unwrap();
        let expect = MultiPoly::from_terms(
            z,
            2,
            [
                (vec![2, 0], BigInt::from(1)),
                (vec![1, 1], BigInt::from(-2)),
                (vec![0, 2], BigInt::from(1)),
                (vec![0, 0], BigInt::from(-1)),
            ],
        )
        .unwrap();
        assert_eq!(q, expect);

        let empty = product_of_affine_factors(z, 2, [], 100).unwrap();
        assert_eq!(empty, MultiPoly::one(z, 2));
    }

    #[test]
    fn factored_evaluation_matches_expansion() {
        let f7 = ModRing::new(7);
        let f = FactoredPoly::new(f7, 3)
            .with(AffineFactor::difference(&f7, 0, 1, 2))
            .unwrap()
            .with(AffineFactor::var(&f7, 2, 5))
            .unwrap()
            .with(AffineFactor::new(vec![(0, 3), (2, 4)], 1))
            .unwrap()
            .scaled(3);
        let e = f.expand(1000).unwrap();
        for x in 0..7 {
            for y in 0..7 {
                for w in 0..7 {
                    let pt = [x, y, w];
                    assert_eq!(Evaluate::eval(&f, &pt).unwrap(), e.eval(&pt).unwrap());
                }
            }
        }
        assert_eq!(f.degree(), 3);
    }

    #[test]
    fn budget_and_arity_guards() {
        let z = Integers;
        let mut f = FactoredPoly::new(z, 4);
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    f.push(AffineFactor::difference(&z, i, j, 0.into()))
                        .unwrap();
                }
            }
        }
        assert!(matches!(f.expand(50), Err(Error::BudgetExceeded { .. })));
        assert!(f.push(AffineFactor::var(&z, 4, 0.into())).is_err());
        assert!(Evaluate::eval(&f, &[1.into()]).is_err());
    }
}
