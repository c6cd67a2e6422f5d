use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::exact::{PolyMatrix, ScalarPoly};

/// Linear map on a graded space truncated at level `dims.len() - 1`, raising
/// the level by `shift`. Blocks are keyed by source level; a missing block
/// whose target is inside the window is undefined. Targets below level 0
/// are the zero space, so those blocks are always known to vanish.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedOperator {
    shift: i64,
    dims: Arc<Vec<usize>>,
    blocks: BTreeMap<usize, PolyMatrix>,
}

impl GradedOperator {
    /// No in-window block known.
    pub fn undefined(shift: i64, dims: Arc<Vec<usize>>) -> Self {
        GradedOperator { shift, dims, blocks: BTreeMap::new() }
    }

    /// Zero on every in-window block.
    pub fn zero(shift: i64, dims: Arc<Vec<usize>>) -> Self {
        let mut op = Self::undefined(shift, dims);
        for level in op.in_window_sources().collect::<Vec<_>>() {
            let target = op.target(level).expect("in window");
            let m = PolyMatrix::zeros(op.dims[target], op.dims[level]);
            op.blocks.insert(level, m);
        }
        op
    }

    pub fn identity(dims: Arc<Vec<usize>>) -> Self {
        let blocks = dims.iter().enumerate().map(|(l, &d)| (l, PolyMatrix::identity(d))).collect();
        GradedOperator { shift: 0, dims, blocks }
    }

    /// Builds the in-window blocks from `f(source_level)`; `None` leaves a
    /// block undefined.
    pub fn from_fn(
        shift: i64,
        dims: Arc<Vec<usize>>,
        mut f: impl FnMut(usize) -> Option<PolyMatrix>,
    ) -> Self {
        let mut op = Self::undefined(shift, dims);
        for level in op.in_window_sources().collect::<Vec<_>>() {
            if let Some(m) = f(level) {
                let target = op.target(level).expect("in window");
                assert_eq!(
                    (m.rows(), m.cols()),
                    (op.dims[target], op.dims[level]),
                    "block shape at level {level}"
                );
                op.blocks.insert(level, m);
            }
        }
        op
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn dims(&self) -> &Arc<Vec<usize>> {
        &self.dims
    }

    pub fn cutoff(&self) -> usize {
        self.dims.len() - 1
    }

    fn target(&self, level: usize) -> Option<usize> {
        let t = level as i64 + self.shift;
        (0..=self.cutoff() as i64).contains(&t).then_some(t as usize)
    }

    /// Source levels whose target lies in `[0, cutoff]`.
    pub fn in_window_sources(&self) -> impl Iterator<Item = usize> + '_ {
        (0..=self.cutoff()).filter(move |&l| self.target(l).is_some())
    }

    /// Source levels with a stored block.
    pub fn defined_sources(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.keys().copied()
    }

    pub fn is_fully_defined(&self) -> bool {
        self.in_window_sources().all(|l| self.blocks.contains_key(&l))
    }

    /// The block on `level`, an empty `0 x dim` matrix when the target is
    /// negative, `None` when unknown.
    pub fn block(&self, level: usize) -> Option<Cow<'_, PolyMatrix>> {
        if level > self.cutoff() {
            return None;
        }
        if (level as i64) + self.shift < 0 {
            return Some(Cow::Owned(PolyMatrix::zeros(0, self.dims[level])));
        }
        self.blocks.get(&level).map(Cow::Borrowed)
    }

    /// `self o rhs`. A block is known when the intermediate level is below
    /// zero (the result is zero) or when both factors are known there.
    pub fn compose(&self, rhs: &GradedOperator) -> GradedOperator {
        GradedOperator::from_fn(self.shift + rhs.shift, self.dims.clone(), |level| {
            let mid = level as i64 + rhs.shift;
            if mid < 0 {
                let target = (level as i64 + self.shift + rhs.shift) as usize;
                return Some(PolyMatrix::zeros(self.dims[target], self.dims[level]));
            }
            let inner = rhs.block(level)?;
            let outer = self.block(mid as usize)?;
            Some(outer.matmul(&inner))
        })
    }

    /// `[self, rhs]`.
    pub fn commutator(&self, rhs: &GradedOperator) -> GradedOperator {
        self.compose(rhs).sub(&rhs.compose(self))
    }

    fn zip(&self, rhs: &GradedOperator, f: impl Fn(&PolyMatrix, &PolyMatrix) -> PolyMatrix) -> Self {
        assert_eq!(self.shift, rhs.shift, "adding operators of different shift");
        let blocks = self
            .blocks
            .iter()
            .filter_map(|(l, a)| rhs.blocks.get(l).map(|b| (*l, f(a, b))))
            .collect();
        GradedOperator { shift: self.shift, dims: self.dims.clone(), blocks }
    }

    pub fn add(&self, rhs: &GradedOperator) -> GradedOperator {
        self.zip(rhs, PolyMatrix::add)
    }

    pub fn sub(&self, rhs: &GradedOperator) -> GradedOperator {
        self.zip(rhs, PolyMatrix::sub)
    }

    pub fn scale(&self, s: &ScalarPoly) -> GradedOperator {
        GradedOperator {
            shift: self.shift,
            dims: self.dims.clone(),
            blocks: self.blocks.iter().map(|(l, m)| (*l, m.scale(s))).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&ScalarPoly) -> ScalarPoly) -> GradedOperator {
        GradedOperator {
            shift: self.shift,
            dims: self.dims.clone(),
            blocks: self.blocks.iter().map(|(l, m)| (*l, m.map(&f))).collect(),
        }
    }

    /// `true` when every known block vanishes.
    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(PolyMatrix::is_zero)
    }

    /// Compares the blocks known on both sides. Returns the number of
    /// blocks compared, or the first level where they differ.
    pub fn compare(&self, rhs: &GradedOperator) -> Result<usize, usize> {
        assert_eq!(self.shift, rhs.shift, "comparing operators of different shift");
        let mut count = 0;
        for (l, a) in &self.blocks {
            if let Some(b) = rhs.blocks.get(l) {
                if a != b {
                    return Err(*l);
                }
                count += 1;
            }
        }
        Ok(count)
    }

    /// Applies the level-`level` block to a coordinate vector.
    pub fn apply(&self, level: usize, coords: &[ScalarPoly]) -> Option<Vec<ScalarPoly>> {
        self.block(level).map(|m| m.apply(coords))
    }
}

impl fmt::Debug for GradedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedOperator")
            .field("shift", &self.shift)
            .field("blocks", &self.blocks)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims() -> Arc<Vec<usize>> {
        Arc::new(vec![1, 1, 2])
    }

    fn raise() -> GradedOperator {
        // 0 -> 1 by 1, 1 -> 2 by (1, 2)^T
        GradedOperator::from_fn(1, dims(), |l| {
            Some(match l {
                0 => PolyMatrix::from_rows(vec![vec![ScalarPoly::one()]]),
                _ => PolyMatrix::from_rows(vec![vec![ScalarPoly::one()], vec![ScalarPoly::from_int(2)]]),
            })
        })
    }

    #[test]
    fn window_semantics() {
        let r = raise();
        assert!(r.is_fully_defined());
        assert!(r.block(2).is_none());
        let lower = GradedOperator::zero(-1, dims());
        assert_eq!(lower.block(0).unwrap().rows(), 0);
        // raising twice from level 1 leaves the window
        let rr = r.compose(&r);
        assert_eq!(rr.defined_sources().collect::<Vec<_>>(), vec![0]);
        // lower then raise: level 0 passes through level -1 and is zero
        let lr = r.compose(&lower);
        assert!(lr.block(0).unwrap().is_zero());
        assert_eq!(lr.defined_sources().collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn undefined_blocks_do_not_compare() {
        let a = raise();
        let b = GradedOperator::undefined(1, dims());
        assert_eq!(a.compare(&b), Ok(0));
        assert_eq!(a.compare(&a), Ok(2));
        assert_eq!(a.compare(&a.scale(&ScalarPoly::from_int(3))), Err(0));
        assert_eq!(a.add(&b).defined_sources().count(), 0);
    }
}
