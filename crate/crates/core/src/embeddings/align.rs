use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::EmbeddingSpace;
use crate::math::sqrt;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlignMode {
    #[default]
    Procrustes,
    /// Treats the spaces as already comparable: `Q = I`.
    Identity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AlignOptions {
    pub mode: AlignMode,
    /// Number of shared frequent tokens used as anchors.
    pub anchors: usize,
    /// Tokens never used as anchors.
    pub exclude: Vec<String>,
}

impl Default for AlignOptions {
    fn default() -> Self {
        AlignOptions { mode: AlignMode::Procrustes, anchors: 1000, exclude: Vec::new() }
    }
}

/// Orthogonal map applied to column vectors: `aligned = Q x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignmentTransform {
    pub dim: usize,
    /// Row-major `dim × dim` entries.
    pub matrix: Vec<f64>,
}

impl AlignmentTransform {
    pub fn identity(dim: usize) -> Self {
        let mut matrix = alloc::vec![0.0; dim * dim];
        for i in 0..dim {
            matrix[i * dim + i] = 1.0;
        }
        AlignmentTransform { dim, matrix }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix[i * self.dim + j]
    }

    pub fn apply_vector(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| self.matrix[i * self.dim..(i + 1) * self.dim].iter().zip(x).map(|(q, &v)| q * v).sum())
            .collect()
    }

    /// Rotates every row of `space`.
    pub fn apply(&self, space: &EmbeddingSpace) -> Result<EmbeddingSpace> {
        if space.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: space.dim() });
        }
        let mut out = Vec::with_capacity(space.vectors().len());
        for i in 0..space.len() {
            out.extend(self.apply_vector(space.row(i))); 
        }
        Ok(space.with_vectors(out))
    }

    /// Largest absolute entry of `QᵀQ − I`.
    pub fn orthogonality_error(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let dot: f64 = (0..d).map(|k| self.get(k, i) * self.get(k, j)).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - expect).abs());
            }
        }
        worst
    }
}

/// Shared tokens ordered by the target's frequency rank, minus exclusions.
pub fn select_anchors(source: &EmbeddingSpace, target: &EmbeddingSpace, k: usize, exclude: &[String]) -> Vec<String> {
    let excluded: BTreeSet<&str> = exclude.iter().map(String::as_str).collect();
    target
        .vocab()
        .iter()
        .filter(|w| source.contains(w) && !excluded.contains(w.as_str()))
        .take(k)
        .cloned()
        .collect()
}

fn anchor_matrix(space: &EmbeddingSpace, anchors: &[String]) -> DMatrix<f64> {
    DMatrix::from_fn(anchors.len(), space.dim(), |r, c| space.vector(&anchors[r]).expect("anchor in vocabulary")[c])
}

/// Finds `Q` mapping `source` onto `target` over shared anchor tokens.
pub fn align(source: &EmbeddingSpace, target: &EmbeddingSpace, options: &AlignOptions) -> Result<AlignmentTransform> {
    if source.dim() != target.dim() {
        return Err(Error::DimensionMismatch { expected: target.dim(), found: source.dim() });
    }
    let dim = source.dim();
    if options.mode == AlignMode::Identity {
        return Ok(AlignmentTransform::identity(dim));
    }
    let anchors = select_anchors(source, target, options.anchors, &options.exclude);
    if anchors.len() < dim {
        return Err(Error::InsufficientAnchors { needed: dim, found: anchors.len() });
    }
    procrustes(&anchor_matrix(source, &anchors), &anchor_matrix(target, &anchors))
}

/// Orthogonal `Q` minimizing `‖X Qᵀ − Y‖_F` for row-stacked anchors.
pub fn procrustes(x: &DMatrix<f64>, y: &DMatrix<f64>) -> Result<AlignmentTransform> {
    if x.shape() != y.shape() {
        return Err(Error::DimensionMismatch { expected: y.nrows(), found: x.nrows() });
    }
    let dim = x.ncols();
    let m = y.transpose() * x;
    let svd = m.svd(true, true);
    let (u, v_t) = match (svd.u, svd.v_t) {
        (Some(u), Some(v_t)) => (u, v_t),
        _ => return Err(Error::InvalidArgument("SVD did not converge".into())),
    };
    let q = u * v_t;
    let matrix = (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).map(|(i, j)| q[(i, j)]).collect();
    Ok(AlignmentTransform { dim, matrix })
}

/// Per-anchor Euclidean distances between aligned source and target rows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnchorResidual {
    pub max: f64,
    /// Root mean square over every anchor coordinate.
    pub rms: f64,
}

pub fn anchor_residual(
    source: &EmbeddingSpace,
    target: &EmbeddingSpace,
    transform: &AlignmentTransform,
    anchors: &[String],
) -> Result<AnchorResidual> {
    if anchors.is_empty() {
        return Err(Error::InsufficientAnchors { needed: 1, found: 0 });
    }
    let mut max: f64 = 0.0;
    let mut sq = 0.0;
    for a in anchors {
        let x = source.vector(a).ok_or_else(|| Error::OutOfVocabulary(a.clone()))?;
        let y = target.vector(a).ok_or_else(|| Error::OutOfVocabulary(a.clone()))?;
        let d: f64 = transform.apply_vector(x).iter().zip(y).map(|(p, &t)| (p - t) * (p - t)).sum();
        sq += d;
        max = max.max(sqrt(d));
    }
    Ok(AnchorResidual { max, rms: sqrt(sq / (anchors.len() * transform.dim) as f64) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_space(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> EmbeddingSpace {
        EmbeddingSpace::from_rows(0, (0..n).map(|i| (format!("w{i}"), (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect()))).unwrap()
    }

    fn random_orthogonal(rng: &mut ChaCha8Rng, dim: usize) -> DMatrix<f64> {
        let a = DMatrix::from_fn(dim, dim, |_, _| rng.random_range(-1.0..1.0));
        a.qr().q()
    }

    fn rotate_rows(space: &EmbeddingSpace, r: &DMatrix<f64>) -> EmbeddingSpace {
        let d = space.dim();
        let rows = (0..space.len()).map(|i| {
            let x = DMatrix::from_row_slice(1, d, space.row(i));
            let y = x * r;
            (space.vocab()[i].clone(), y.iter().copied().collect::<Vec<f64>>())
        });
        EmbeddingSpace::from_rows(1, rows).unwrap()
    }

    #[test]
    fn recovers_known_rotation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for dim in [3, 10] {
            let src = random_space(&mut rng, 60, dim);
            let r = random_orthogonal(&mut rng, dim);
            let tgt = rotate_rows(&src, &r);
            let q = align(&src, &tgt, &AlignOptions::default()).unwrap();
            for i in 0..dim {
                for j in 0..dim {
                    assert!((q.get(i, j) - r[(j, i)]).abs() < 1e-9);
                }
            }
            assert!(q.orthogonality_error() < 1e-8);
            let anchors = select_anchors(&src, &tgt, 1000, &[]);
            assert!(anchor_residual(&src, &tgt, &q, &anchors).unwrap().max < 1e-6);
            let before = anchor_residual(&src, &tgt, &AlignmentTransform::identity(dim), &anchors).unwrap();
            assert!(anchor_residual(&src, &tgt, &q, &anchors).unwrap().rms <= before.rms);
        }
    }

    #[test]
    fn identity_mode_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_space(&mut rng, 5, 8);
        let b = random_space(&mut rng, 5, 8);
        let opts = AlignOptions { mode: AlignMode::Identity, ..AlignOptions::default() };
        assert_eq!(align(&a, &b, &opts).unwrap(), AlignmentTransform::identity(8));
    }

    #[test]
    fn too_few_anchors() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_space(&mut rng, 5, 8);
        let b = random_space(&mut rng, 5, 8);
        assert_eq!(align(&a, &b, &AlignOptions::default()).unwrap_err(), Error::InsufficientAnchors { needed: 8, found: 5 });
    }

    #[test]
    fn anchors_follow_target_rank_and_skip_exclusions() {
        let a = EmbeddingSpace::new(0, 1, vec!["x".into(), "bjp".into(), "y".into()], vec![3, 2, 1], vec![1.0; 3]).unwrap();
        let b = EmbeddingSpace::new(1, 1, vec!["y".into(), "bjp".into(), "z".into(), "x".into()], vec![4, 3, 2, 1], vec![1.0; 4]).unwrap();
        assert_eq!(select_anchors(&a, &b, 10, &["bjp".into()]), ["y", "x"]);
        assert_eq!(select_anchors(&a, &b, 1, &[]), ["y"]);
    }
}
