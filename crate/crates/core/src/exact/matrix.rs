use std::fmt;

use num_traits::{One, Zero};

use super::{sign_of, Rational, ScalarPoly};
use crate::{Error, Result};

/// Dense matrix over `Q[c, h]`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ScalarPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            data: vec![ScalarPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ScalarPoly::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ScalarPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        PolyMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ScalarPoly) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ScalarPoly::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn row(&self, i: usize) -> &[ScalarPoly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<ScalarPoly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn eval(&self, c0: &Rational, h0: &Rational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|p| p.eval(c0, h0)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&ScalarPoly) -> ScalarPoly) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, q: &ScalarPoly) -> Self {
        self.map(|p| p * q)
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn matmul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matmul");
        let mut out = PolyMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[ScalarPoly]) -> Vec<ScalarPoly> {
        assert_eq!(self.cols, v.len(), "shape mismatch in apply");
        (0..self.rows)
            .map(|i| {
                let mut acc = ScalarPoly::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Fraction-free Gaussian elimination (Bareiss). Every division is exact
    /// in `Q[c, h]`, so no rational functions are ever formed.
    pub fn bareiss_det(&self) -> Result<ScalarPoly> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(ScalarPoly::one());
        }
        let mut a = self.to_rows();
        let mut negate = false;
        let mut prev = ScalarPoly::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(ScalarPoly::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num
                        .div_exact(&prev)
                        .expect("Bareiss step divides exactly");
                }
                a[i][k] = ScalarPoly::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }
}

impl std::ops::Index<(usize, usize)> for PolyMatrix {
    type Output = ScalarPoly;
    fn index(&self, (i, j): (usize, usize)) -> &ScalarPoly {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ScalarPoly {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        write!(f, "PolyMatrix{rows:?}")
    }
}

/// Verdict of the exact definiteness test on a symmetric rational matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
}

impl Definiteness {
    pub fn as_str(self) -> &'static str {
        match self {
            Definiteness::PositiveDefinite => "PositiveDefinite",
            Definiteness::PositiveSemidefinite => "PositiveSemidefinite",
            Definiteness::Indefinite => "Indefinite",
        }
    }
}

impl fmt::Display for Definiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Dense matrix over `Q`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// The top-left `k x k` block.
    pub fn leading_block(&self, k: usize) -> QMatrix {
        QMatrix::from_rows(
            (0..k)
                .map(|i| (0..k).map(|j| self[(i, j)].clone()).collect())
                .collect(),
        )
    }

    pub fn det(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut a = self.to_rows();
        let mut det = Rational::one();
        let mut swaps = 0;
        for k in 0..self.rows {
            let Some(p) = (k..self.rows).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != k {
                a.swap(k, p);
                swaps += 1;
            }
            let pivot = a[k][k].clone();
            det *= &pivot;
            for i in k + 1..self.rows {
                let factor = &a[i][k] / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for j in k..self.cols {
                    let t = &factor * &a[k][j];
                    a[i][j] -= t;
                }
            }
        }
        Ok(if swaps % 2 == 1 { -det } else { det })
    }

    /// Row echelon form, the pivot columns, and the number of row swaps.
    fn echelon(&self) -> (Vec<Vec<Rational>>, Vec<usize>, usize) {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                swaps += 1;
            }
            let inv = Rational::one() / &a[r][col];
            for j in col..self.cols {
                a[r][j] *= &inv;
            }
            for i in 0..self.rows {
                if i != r && !a[i][col].is_zero() {
                    let factor = a[i][col].clone();
                    for j in col..self.cols {
                        let t = &factor * &a[r][j];
                        a[i][j] -= t;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        (a, pivots, swaps)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of the right kernel, each vector scaled so its first nonzero
    /// coordinate is 1.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (rref, pivots, _) = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -rref[row][f].clone();
                }
                let lead = v.iter().find(|x| !x.is_zero()).cloned().expect("nonzero kernel vector");
                v.iter().map(|x| x / &lead).collect()
            })
            .collect()
    }

    /// Determinants of the leading principal blocks of size `1..=n`.
    pub fn leading_minors(&self) -> Vec<Rational> {
        (1..=self.rows.min(self.cols))
            .map(|k| self.leading_block(k).det().expect("square block"))
            .collect()
    }

    /// Coefficients `a_0..a_n` of `det(t I - M) = sum a_k t^k`
    /// (Faddeev-LeVerrier, exact over `Q`).
    pub fn char_poly(&self) -> Result<Vec<Rational>> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = QMatrix::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + a_{n-k+1} I
            let mut next = self.matmul(&m);
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            let am = self.matmul(&next);
            let trace: Rational = (0..n).map(|i| am[(i, i)].clone()).sum();
            coeffs[n - k] = -trace / Rational::from_integer((k as i64).into());
            m = next;
        }
        Ok(coeffs)
    }

    pub fn matmul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matmul");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    /// Exact definiteness of a symmetric matrix.
    ///
    /// Positive definite iff every leading principal minor is positive
    /// (Sylvester). Otherwise positive semidefinite iff the characteristic
    /// polynomial `sum a_k t^k` has `(-1)^(n-k) a_k >= 0` for every `k`.
    pub fn definiteness(&self) -> Result<Definiteness> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if !self.is_symmetric() {
            return Err(Error::Asymmetric);
        }
        if self.leading_minors().iter().all(|m| sign_of(m) > 0) {
            return Ok(Definiteness::PositiveDefinite);
        }
        let n = self.rows;
        let coeffs = self.char_poly()?;
        let psd = coeffs.iter().enumerate().all(|(k, a)| {
            let s = sign_of(a);
            if (n - k).is_multiple_of(2) {
                s >= 0
            } else {
                s <= 0
            }
        });
        Ok(if psd {
            Definiteness::PositiveSemidefinite
        } else {
            Definiteness::Indefinite
        })
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(super::fmt_rational).collect())
            .collect();
        write!(f, "QMatrix{rows:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn q(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    fn a2() -> PolyMatrix {
        let c = ScalarPoly::c();
        let h = ScalarPoly::h();
        let k = ScalarPoly::from_int;
        PolyMatrix::from_rows(vec![
            vec![k(4) * &h + c.scale(&rat(1, 2)), k(6) * &h],
            vec![k(6) * &h, k(8) * &h * &h + k(4) * &h],
        ])
    }

    #[test]
    fn bareiss_on_a2() {
        let det = a2().bareiss_det().unwrap();
        assert_eq!(det.to_string(), "32*h^3 + 4*c*h^2 - 20*h^2 + 2*c*h");
        assert_eq!(PolyMatrix::identity(3).bareiss_det().unwrap(), ScalarPoly::one());
        assert_eq!(PolyMatrix::zeros(0, 0).bareiss_det().unwrap(), ScalarPoly::one());
        assert!(matches!(
            PolyMatrix::zeros(2, 3).bareiss_det(),
            Err(Error::NonSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn bareiss_needs_row_swap() {
        let k = ScalarPoly::from_int;
        let m = PolyMatrix::from_rows(vec![
            vec![k(0), k(1), k(2)],
            vec![k(3), k(0), ScalarPoly::c()],
            vec![k(1), k(1), k(1)],
        ]);
        // 0*(0 - c) - 1*(3 - c) + 2*(3 - 0) = c + 3
        assert_eq!(m.bareiss_det().unwrap(), ScalarPoly::c() + k(3));
    }

    #[test]
    fn definiteness_examples() {
        let m = a2().eval(&int(2), &int(1));
        assert_eq!(m, q(&[&[5, 6], &[6, 12]]));
        assert_eq!(m.leading_minors(), vec![int(5), int(24)]);
        assert_eq!(m.definiteness().unwrap(), Definiteness::PositiveDefinite);

        let m = a2().eval(&int(1), &rat(1, 4));
        assert_eq!(m.definiteness().unwrap(), Definiteness::PositiveSemidefinite);
        assert_eq!(m.nullity(), 1);

        assert_eq!(
            QMatrix::zeros(3, 3).definiteness().unwrap(),
            Definiteness::PositiveSemidefinite
        );
        assert_eq!(q(&[&[1, 2], &[2, 1]]).definiteness().unwrap(), Definiteness::Indefinite);
        assert_eq!(q(&[&[-1, 0], &[0, 0]]).definiteness().unwrap(), Definiteness::Indefinite);
        assert_eq!(q(&[&[0, 0], &[0, 1]]).definiteness().unwrap(), Definiteness::PositiveSemidefinite);
        assert_eq!(q(&[&[1, 2], &[0, 1]]).definiteness(), Err(Error::Asymmetric));
    }

    #[test]
    fn char_poly_of_small_matrix() {
        // det(tI - [[2,1],[1,2]]) = t^2 - 4t + 3
        let cp = q(&[&[2, 1], &[1, 2]]).char_poly().unwrap();
        assert_eq!(cp, vec![int(3), int(-4), int(1)]);
    }

    #[test]
    fn kernel_is_normalised() {
        let m = a2().eval(&int(1), &rat(1, 4));
        assert_eq!(m.kernel(), vec![vec![int(1), int(-1)]]);
        assert!(q(&[&[1, 0], &[0, 1]]).kernel().is_empty());
        let k = q(&[&[0, 2, 4]]).kernel();
        assert_eq!(k, vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), rat(-1, 2)]]);
    }
}
