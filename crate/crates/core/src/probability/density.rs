use crate::eraser::KeepSet;
use crate::scalar::Scalar;

/// A diagonal density operator over token positions.
///
/// A freshly prepared operator has unit trace. Conditioning with
/// [`DensityOperator::sandwich`] yields a subnormalized operator whose trace
/// is the surviving probability mass.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator<T> {
    weights: Vec<T>,
}

impl<T: Scalar> DensityOperator<T> {
    /// `ρ = I/n`: every position equally likely. `None` when `n = 0`.
    pub fn uniform(n: usize) -> Option<Self> {
        if n == 0 {
            return None;
        }
        let w = T::one() / T::from_count(n);
        Some(DensityOperator {
            weights: vec![w; n],
        })
    }

    /// Block-diagonal operator: block `i` spreads `mass_i` uniformly over
    /// `dim_i` positions. Empty blocks contribute no positions.
    pub fn block_diagonal(blocks: impl IntoIterator<Item = (T, usize)>) -> Self {
        let mut weights = Vec::new();
        for (mass, dim) in blocks {
            if dim == 0 {
                continue;
            }
            let w = mass / T::from_count(dim);
            weights.extend(std::iter::repeat_n(w, dim));
        }
        DensityOperator { weights }
    }

    pub fn from_weights(weights: Vec<T>) -> Self {
        DensityOperator { weights }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn trace(&self) -> T {
        self.weights
            .iter()
            .cloned()
            .fold(T::zero(), |acc, w| acc + w)
    }

    /// Nonnegative weights summing to one within `tol`.
    pub fn is_normalized(&self, tol: f64) -> bool {
        self.weights.iter().all(|w| *w >= T::zero()) && (self.trace().to_f64() - 1.0).abs() <= tol
    }

    /// `Π ρ Π`.
    pub fn sandwich(&self, projector: &Projector) -> Self {
        self.assert_dim(projector);
        let weights = self
            .weights
            .iter()
            .enumerate()
            .map(|(i, w)| {
                // diagonal entries: Π_ii · ρ_ii · Π_ii
                let p = projector.entry::<T>(i);
                p.clone() * w.clone() * p
            })
            .collect();
        DensityOperator { weights }
    }

    /// `Trace(Π ρ)`.
    pub fn expectation(&self, projector: &Projector) -> T {
        self.assert_dim(projector);
        self.weights
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (i, w)| {
                acc + projector.entry::<T>(i) * w.clone()
            })
    }

    fn assert_dim(&self, projector: &Projector) {
        assert_eq!(
            self.dim(),
            projector.dim(),
            "projector and density operator dimensions differ"
        );
    }
}

/// A diagonal 0/1 projector: the indicator of a keep-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projector {
    support: KeepSet,
}

impl Projector {
    pub fn new(support: KeepSet) -> Self {
        Projector { support }
    }

    pub fn dim(&self) -> usize {
        self.support.universe()
    }

    pub fn rank(&self) -> usize {
        self.support.count()
    }

    pub fn support(&self) -> &KeepSet {
        &self.support
    }

    /// Diagonal entry `Π_ii` as a scalar.
    pub fn entry<T: Scalar>(&self, i: usize) -> T {
        if self.support.contains(i) {
            T::one()
        } else {
            T::zero()
        }
    }

    /// Matrix product of two diagonal projectors.
    pub fn product(&self, other: &Projector) -> Projector {
        Projector::new(self.support.intersection(&other.support))
    }

    pub fn is_idempotent(&self) -> bool {
        self.product(self) == *self
    }

    /// Diagonal of `Π` as scalars.
    pub fn diagonal<T: Scalar>(&self) -> Vec<T> {
        (0..self.dim()).map(|i| self.entry(i)).collect()
    }
}
