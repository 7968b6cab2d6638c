use num_traits::One;

use super::poly::MultilinearPoly;
use crate::algebra::{inverse_factorial, Rational};
use crate::error::{Error, Result};

/// An upper-triangular square matrix with [`MultilinearPoly`] entries.
///
/// Indices are 0-based: entry `(i, j)` with `i ≤ j`. The matrix is stored by
/// superdiagonal band, `bands[d][i] = (i, i + d)`. Entries of a size-`s`
/// matrix live in `s − 1` variables, and for every matrix built here entry
/// `(i, j)` only involves `τ_{i+1}..τ_j` (the range property).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriMatrix {
    size: usize,
    bands: Vec<Vec<MultilinearPoly>>,
    zero: MultilinearPoly,
}

impl TriMatrix {
    pub fn zero(size: usize) -> Self {
        assert!(size >= 1, "matrix size must be positive");
        let nvars = size - 1;
        TriMatrix {
            size,
            bands: (0..size)
                .map(|d| vec![MultilinearPoly::zero(nvars); size - d])
                .collect(),
            zero: MultilinearPoly::zero(nvars),
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zero(size);
        for p in &mut m.bands[0] {
            *p = MultilinearPoly::one(size - 1);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of tau variables the entries live in.
    pub fn nvars(&self) -> usize {
        self.size - 1
    }

    /// Entry `(i, j)`; strictly lower entries are zero.
    pub fn get(&self, i: usize, j: usize) -> &MultilinearPoly {
        assert!(i < self.size && j < self.size, "index out of range");
        if i > j {
            &self.zero
        } else {
            &self.bands[j - i][i]
        }
    }

    /// Mutable entry `(i, j)`. Panics for strictly lower entries.
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut MultilinearPoly {
        assert!(i <= j && j < self.size, "only upper entries are stored");
        &mut self.bands[j - i][i]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultilinearPoly) {
        let nvars = self.nvars();
        *self.get_mut(i, j) = p
            .with_nvars(nvars)
            .expect("entry lives in the matrix's variables");
    }

    /// Entries `(i, i + d)` for `i = 0..size − d`.
    pub fn band(&self, d: usize) -> &[MultilinearPoly] {
        &self.bands[d]
    }

    pub fn band_is_zero(&self, d: usize) -> bool {
        self.bands[d].iter().all(MultilinearPoly::is_zero)
    }

    /// Offsets of the nonzero superdiagonals, ascending.
    pub fn nonzero_bands(&self) -> Vec<usize> {
        (0..self.size).filter(|&d| !self.band_is_zero(d)).collect()
    }

    /// Lowest nonzero superdiagonal offset, `None` for the zero matrix.
    pub fn lowest_offset(&self) -> Option<usize> {
        (0..self.size).find(|&d| !self.band_is_zero(d))
    }

    pub fn is_zero(&self) -> bool {
        self.lowest_offset().is_none()
    }

    pub fn is_strictly_upper(&self) -> bool {
        self.band_is_zero(0)
    }

    pub fn is_unitriangular(&self) -> bool {
        self.bands[0].iter().all(MultilinearPoly::is_one)
    }

    /// Row `i` as a full-length vector (zeros left of the diagonal).
    pub fn row(&self, i: usize) -> Vec<MultilinearPoly> {
        (0..self.size).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn range_property_holds(&self) -> bool {
        self.bands.iter().enumerate().all(|(d, band)| {
            band.iter()
                .enumerate()
                .all(|(i, p)| p.supported_in(i, i + d))
        })
    }

    pub fn add(&self, other: &TriMatrix) -> Result<TriMatrix> {
        self.check_size(other)?;
        let mut out = self.clone();
        for (band, other_band) in out.bands.iter_mut().zip(&other.bands) {
            for (p, q) in band.iter_mut().zip(other_band) {
                p.add_assign(q);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TriMatrix) -> Result<TriMatrix> {
        self.add(&other.negated())
    }

    pub fn negated(&self) -> TriMatrix {
        self.scaled(&-Rational::one())
    }

    pub fn scaled(&self, factor: &Rational) -> TriMatrix {
        TriMatrix {
            size: self.size,
            bands: self
                .bands
                .iter()
                .map(|band| band.iter().map(|p| p.scaled(factor)).collect())
                .collect(),
            zero: self.zero.clone(),
        }
    }

    fn check_size(&self, other: &TriMatrix) -> Result<()> {
        if self.size != other.size {
            return Err(Error::SizeMismatch {
                left: self.size,
                right: other.size,
            });
        }
        Ok(())
    }
}

/// Matrix product, skipping zero bands.
///
/// Polynomial products inside must combine disjoint supports; an overlap
/// means the inputs were malformed and is reported as an error.
pub fn mat_mul(a: &TriMatrix, b: &TriMatrix) -> Result<TriMatrix> {
    a.check_size(b)?;
    let size = a.size;
    let mut out = TriMatrix::zero(size);
    let a_bands = a.nonzero_bands();
    let b_bands = b.nonzero_bands();
    for &da in &a_bands {
        for &db in &b_bands {
            let d = da + db;
            if d >= size {
                break;
            }
            for i in 0..size - d {
                let (left, right) = (&a.bands[da][i], &b.bands[db][i + da]);
                out.bands[d][i].add_product(left, right)?;
            }
        }
    }
    debug_assert!(
        !(a.range_property_holds() && b.range_property_holds()) || out.range_property_holds()
    );
    Ok(out)
}

/// Row vector times matrix: `out[j] = Σᵢ row[i] · m[i][j]`.
pub fn row_mul(row: &[MultilinearPoly], m: &TriMatrix) -> Result<Vec<MultilinearPoly>> {
    if row.len() != m.size {
        return Err(Error::SizeMismatch {
            left: row.len(),
            right: m.size,
        });
    }
    let mut out = vec![MultilinearPoly::zero(m.nvars()); m.size];
    for d in m.nonzero_bands() {
        for (i, r) in row.iter().enumerate().take(m.size - d) {
            out[i + d].add_product(r, &m.bands[d][i])?;
        }
    }
    Ok(out)
}

/// `exp(N) = Σ Nᵏ/k!` for strictly upper-triangular `N`; the sum is finite.
pub fn nilpotent_exp(n: &TriMatrix) -> Result<TriMatrix> {
    if !n.is_strictly_upper() {
        return Err(Error::NonzeroDiagonal);
    }
    let mut sum = TriMatrix::identity(n.size);
    let mut power = TriMatrix::identity(n.size);
    for k in 1..n.size {
        power = mat_mul(&power, n)?;
        if power.is_zero() {
            break;
        }
        sum = sum.add(&power.scaled(&inverse_factorial(k)))?;
    }
    Ok(sum)
}

/// `log(M) = Σ (−1)^{k+1}(M − I)ᵏ/k` for unitriangular `M`; the sum is finite.
pub fn nilpotent_log(m: &TriMatrix) -> Result<TriMatrix> {
    if !m.is_unitriangular() {
        return Err(Error::NonUnitDiagonal);
    }
    let n = m.sub(&TriMatrix::identity(m.size))?;
    let mut sum = TriMatrix::zero(m.size);
    let mut power = TriMatrix::identity(m.size);
    for k in 1..m.size {
        power = mat_mul(&power, &n)?;
        if power.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let factor = Rational::new(sign.into(), k.into());
        sum = sum.add(&power.scaled(&factor))?;
    }
    Ok(sum)
}
