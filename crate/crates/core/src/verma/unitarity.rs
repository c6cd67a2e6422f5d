use super::module::{VermaModule, VermaVector};
use crate::exact::{Definiteness, Rational, ScalarPoly};

/// Definiteness of the Gram matrix at one level of a specialised module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelVerdict {
    pub level: u32,
    pub dim: usize,
    pub definiteness: Definiteness,
    pub nullity: usize,
}

/// Exact definiteness of `A^N(c0, h0)` for each `N <= n_max`.
pub fn unitarity_classify(c0: &Rational, h0: &Rational, n_max: u32) -> Vec<LevelVerdict> {
    let module = VermaModule::at(c0, h0);
    (0..=n_max)
        .map(|level| {
            let gram = module.gram(level).eval(c0, h0);
            LevelVerdict {
                level,
                dim: gram.rows(),
                definiteness: gram.definiteness().expect("Gram matrices are symmetric"),
                nullity: gram.nullity(),
            }
        })
        .collect()
}

/// Basis of the level-`N` Gram kernel at `(c0, h0)`, each normalised so its
/// first nonzero coordinate (canonical basis order) is 1.
pub fn singular_vectors(c0: &Rational, h0: &Rational, level: u32) -> Vec<VermaVector> {
    let module = VermaModule::at(c0, h0);
    let gram = module.gram(level);
    gram.eval(c0, h0)
        .kernel()
        .into_iter()
        .map(|v| {
            let coords: Vec<ScalarPoly> = v.into_iter().map(ScalarPoly::constant).collect();
            VermaVector::from_coordinates(&gram.basis, &coords)
        })
        .collect()
}

/// `dim L(c0, h0)_N = P(N) - nullity(A^N(c0, h0))` for `N <= n_max`.
pub fn quotient_graded_dims(c0: &Rational, h0: &Rational, n_max: u32) -> Vec<usize> {
    let module = VermaModule::at(c0, h0);
    (0..=n_max)
        .map(|level| module.gram(level).eval(c0, h0).rank())
        .collect()
}
