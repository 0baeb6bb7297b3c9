//! Finite-dimensional model of a semifinite trace algebra: a direct sum
//! of complex matrix blocks with strictly positive per-block trace
//! weights. The weighted trace `τ(x) = Σ_k w_k · tr(x_k)` is normal,
//! faithful and tracial on this family; a single block with weight 1
//! recovers the plain matrix trace.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

/// One summand of the algebra: square matrices of size `dim` entering
/// the trace with weight `weight`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Block {
    pub dim: usize,
    pub weight: f64,
}

/// The ambient algebra: an ordered list of blocks plus the tolerance
/// policy shared by every operation on its elements. Immutable after
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceAlgebra {
    blocks: Vec<Block>,
    total_dim: usize,
    tolerances: Tolerances,
}

impl TraceAlgebra {
    /// Builds an algebra with default tolerances. Every dim must be at
    /// least 1 and every weight strictly positive and finite.
    pub fn new(blocks: &[(usize, f64)]) -> Result<Arc<Self>> {
        Self::with_tolerances(blocks, Tolerances::default())
    }

    pub fn with_tolerances(blocks: &[(usize, f64)], tolerances: Tolerances) -> Result<Arc<Self>> {
        if blocks.is_empty() {
            return Err(Error::InvalidAlgebra("no blocks".into()));
        }
        for &(dim, weight) in blocks {
            if dim == 0 {
                return Err(Error::InvalidAlgebra("block dimension must be >= 1".into()));
            }
            if weight <= 0.0 || !weight.is_finite() {
                return Err(Error::InvalidAlgebra(format!(
                    "block weight must be strictly positive, got {weight}"
                )));
            }
        }
        let total_dim = blocks.iter().map(|b| b.0).sum();
        Ok(Arc::new(Self {
            blocks: blocks.iter().map(|&(dim, weight)| Block { dim, weight }).collect(),
            total_dim,
            tolerances,
        }))
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn min_weight(&self) -> f64 {
        self.blocks.iter().map(|b| b.weight).fold(f64::INFINITY, f64::min)
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tolerances
    }

    /// Two algebras carry the same elements iff their block structure
    /// matches; tolerances do not enter.
    pub fn same_blocks(&self, other: &Self) -> bool {
        self.blocks == other.blocks
    }
}

/// An element of a [`TraceAlgebra`]: one dense complex matrix per block.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockOperator {
    algebra: Arc<TraceAlgebra>,
    data: Vec<DMatrix<Complex64>>,
}

impl BlockOperator {
    /// Wraps per-block matrices, checking shapes against the algebra.
    pub fn new(algebra: Arc<TraceAlgebra>, data: Vec<DMatrix<Complex64>>) -> Result<Self> {
        if data.len() != algebra.num_blocks() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} blocks, got {}",
                algebra.num_blocks(),
                data.len()
            )));
        }
        for (k, (m, b)) in data.iter().zip(algebra.blocks()).enumerate() {
            if m.nrows() != b.dim || m.ncols() != b.dim {
                return Err(Error::ShapeMismatch(format!(
                    "block {k} is {}x{}, algebra wants {}x{}",
                    m.nrows(),
                    m.ncols(),
                    b.dim,
                    b.dim
                )));
            }
        }
        Ok(Self { algebra, data })
    }

    pub fn zero(algebra: &Arc<TraceAlgebra>) -> Self {
        let data = algebra
            .blocks()
            .iter()
            .map(|b| DMatrix::zeros(b.dim, b.dim))
            .collect();
        Self { algebra: Arc::clone(algebra), data }
    }

    pub fn identity(algebra: &Arc<TraceAlgebra>) -> Self {
        let data = algebra
            .blocks()
            .iter()
            .map(|b| DMatrix::identity(b.dim, b.dim))
            .collect();
        Self { algebra: Arc::clone(algebra), data }
    }

    /// Diagonal operator from the concatenated diagonal entries, split
    /// across blocks in order.
    pub fn diagonal(algebra: &Arc<TraceAlgebra>, entries: &[f64]) -> Result<Self> {
        if entries.len() != algebra.total_dim() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} diagonal entries, got {}",
                algebra.total_dim(),
                entries.len()
            )));
        }
        let mut data = Vec::with_capacity(algebra.num_blocks());
        let mut offset = 0;
        for b in algebra.blocks() {
            let mut m = DMatrix::zeros(b.dim, b.dim);
            for i in 0..b.dim {
                m[(i, i)] = Complex64::new(entries[offset + i], 0.0);
            }
            offset += b.dim;
            data.push(m);
        }
        Ok(Self { algebra: Arc::clone(algebra), data })
    }

    pub fn algebra(&self) -> &Arc<TraceAlgebra> {
        &self.algebra
    }

    pub fn block(&self, k: usize) -> &DMatrix<Complex64> {
        &self.data[k]
    }

    pub fn data(&self) -> &[DMatrix<Complex64>] {
        &self.data
    }

    /// Weighted trace `Σ_k w_k tr(x_k)`, summed in fixed block and
    /// diagonal order for reproducibility.
    pub fn trace(&self) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for (m, b) in self.data.iter().zip(self.algebra.blocks()) {
            let mut t = Complex64::ZERO;
            for i in 0..b.dim {
                t += m[(i, i)];
            }
            acc += t * b.weight;
        }
        acc
    }

    pub fn adjoint(&self) -> Self {
        Self {
            algebra: Arc::clone(&self.algebra),
            data: self.data.iter().map(|m| m.adjoint()).collect(),
        }
    }

    /// Max entry magnitude of `x - x*`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut defect: f64 = 0.0;
        for m in &self.data {
            for i in 0..m.nrows() {
                for j in 0..m.ncols() {
                    defect = defect.max((m[(i, j)] - m[(j, i)].conj()).norm());
                }
            }
        }
        defect
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_defect() <= self.algebra.tolerances().herm_for(self.max_norm())
    }

    /// `(x + x*)/2`.
    pub fn symmetrized(&self) -> Self {
        let half = Complex64::new(0.5, 0.0);
        let data = self
            .data
            .iter()
            .map(|m| (m + m.adjoint()) * half)
            .collect();
        Self { algebra: Arc::clone(&self.algebra), data }
    }

    /// Max entry magnitude over all blocks.
    pub fn max_norm(&self) -> f64 {
        let mut n: f64 = 0.0;
        for m in &self.data {
            for e in m.iter() {
                n = n.max(e.norm());
            }
        }
        n
    }

    /// `√τ(x* x)`, the norm of the weighted Hilbert-Schmidt inner
    /// product.
    pub fn l2_norm(&self) -> f64 {
        let mut acc = 0.0;
        for (m, b) in self.data.iter().zip(self.algebra.blocks()) {
            let mut s = 0.0;
            for e in m.iter() {
                s += e.norm_sqr();
            }
            acc += s * b.weight;
        }
        acc.sqrt()
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            algebra: Arc::clone(&self.algebra),
            data: self.data.iter().map(|m| m * c).collect(),
        }
    }

    /// `x + c·I`.
    pub fn plus_identity(&self, c: Complex64) -> Self {
        let mut data = self.data.clone();
        for m in &mut data {
            for i in 0..m.nrows() {
                m[(i, i)] += c;
            }
        }
        Self { algebra: Arc::clone(&self.algebra), data }
    }

    fn assert_same_algebra(&self, other: &Self) {
        assert!(
            self.algebra.same_blocks(&other.algebra),
            "operands belong to different algebras"
        );
    }
}

impl Add for &BlockOperator {
    type Output = BlockOperator;
    fn add(self, rhs: &BlockOperator) -> BlockOperator {
        self.assert_same_algebra(rhs);
        BlockOperator {
            algebra: Arc::clone(&self.algebra),
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &BlockOperator {
    type Output = BlockOperator;
    fn sub(self, rhs: &BlockOperator) -> BlockOperator {
        self.assert_same_algebra(rhs);
        BlockOperator {
            algebra: Arc::clone(&self.algebra),
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &BlockOperator {
    type Output = BlockOperator;
    fn mul(self, rhs: &BlockOperator) -> BlockOperator {
        self.assert_same_algebra(rhs);
        BlockOperator {
            algebra: Arc::clone(&self.algebra),
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a * b).collect(),
        }
    }
}

impl Neg for &BlockOperator {
    type Output = BlockOperator;
    fn neg(self) -> BlockOperator {
        self.scaled(Complex64::new(-1.0, 0.0))
    }
}

/// `τ(xy)` without forming the product.
pub fn trace_product(x: &BlockOperator, y: &BlockOperator) -> Complex64 {
    x.assert_same_algebra(y);
    let mut acc = Complex64::ZERO;
    for ((mx, my), b) in x.data().iter().zip(y.data()).zip(x.algebra().blocks()) {
        let mut t = Complex64::ZERO;
        for i in 0..b.dim {
            for j in 0..b.dim {
                t += mx[(i, j)] * my[(j, i)];
            }
        }
        acc += t * b.weight;
    }
    acc
}

/// `xy - yx`.
pub fn commutator(x: &BlockOperator, y: &BlockOperator) -> BlockOperator {
    &(x * y) - &(y * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_bad_blocks() {
        assert!(TraceAlgebra::new(&[]).is_err());
        assert!(TraceAlgebra::new(&[(0, 1.0)]).is_err());
        assert!(TraceAlgebra::new(&[(2, 0.0)]).is_err());
        assert!(TraceAlgebra::new(&[(2, -1.0)]).is_err());
        assert!(TraceAlgebra::new(&[(2, f64::NAN)]).is_err());
    }

    #[test]
    fn trace_of_plain_density() {
        let alg = TraceAlgebra::new(&[(2, 1.0)]).unwrap();
        let x = BlockOperator::diagonal(&alg, &[0.75, 0.25]).unwrap();
        let t = x.trace();
        assert_eq!(t.re, 1.0);
        assert_eq!(t.im, 0.0);
    }

    #[test]
    fn trace_weighs_blocks() {
        // 2 * 0.25 + 1 * 0.5 = 1
        let alg = TraceAlgebra::new(&[(1, 2.0), (1, 1.0)]).unwrap();
        let x = BlockOperator::diagonal(&alg, &[0.25, 0.5]).unwrap();
        assert_eq!(x.trace().re, 1.0);
    }

    #[test]
    fn trace_of_identity_is_weighted_dim() {
        let alg = TraceAlgebra::new(&[(2, 1.0)]).unwrap();
        assert_eq!(BlockOperator::identity(&alg).trace().re, 2.0);
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let alg = TraceAlgebra::new(&[(2, 1.0)]).unwrap();
        let wrong = vec![DMatrix::<Complex64>::zeros(3, 3)];
        assert!(matches!(
            BlockOperator::new(Arc::clone(&alg), wrong),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(BlockOperator::diagonal(&alg, &[1.0]).is_err());
    }

    #[test]
    fn hermiticity_defect_detects_skew_part() {
        let alg = TraceAlgebra::new(&[(2, 1.0)]).unwrap();
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(2.0, 0.0)]);
        let x = BlockOperator::new(alg, vec![m]).unwrap();
        // entry (0,1) = i while conj of (1,0) = -i: defect 2
        assert!((x.hermiticity_defect() - 2.0).abs() < 1e-15);
        assert_eq!(x.symmetrized().hermiticity_defect(), 0.0);
    }

    #[test]
    fn trace_product_matches_product_trace() {
        let alg = TraceAlgebra::new(&[(2, 1.5), (1, 0.5)]).unwrap();
        let x = BlockOperator::new(
            Arc::clone(&alg),
            vec![
                DMatrix::from_row_slice(2, 2, &[c(1.0, 2.0), c(0.5, 0.0), c(-1.0, 0.25), c(0.0, 1.0)]),
                DMatrix::from_row_slice(1, 1, &[c(2.0, -1.0)]),
            ],
        )
        .unwrap();
        let y = BlockOperator::new(
            Arc::clone(&alg),
            vec![
                DMatrix::from_row_slice(2, 2, &[c(0.0, 1.0), c(2.0, 0.0), c(1.0, -1.0), c(3.0, 0.5)]),
                DMatrix::from_row_slice(1, 1, &[c(-1.0, 0.5)]),
            ],
        )
        .unwrap();
        let direct = (&x * &y).trace();
        let paired = trace_product(&x, &y);
        assert!((direct - paired).norm() < 1e-14);
        // traciality
        assert!((trace_product(&x, &y) - trace_product(&y, &x)).norm() < 1e-14);
    }
}
