use std::collections::hash_map::Entry;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use crate::algebra::Rational;
use crate::error::{Error, Result};

/// A square-free product of the commuting variables `τ₁..τₙ`.
///
/// Bit `i − 1` of the mask is set iff `τᵢ` is present, so the monomial shares
/// its encoding with the word it maps to under `U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TauMonomial(u64);

impl TauMonomial {
    pub const ONE: TauMonomial = TauMonomial(0);

    pub fn from_mask(mask: u64) -> Self {
        TauMonomial(mask)
    }

    /// `τ_{i₁}τ_{i₂}…` from 1-based indices.
    pub fn from_indices(indices: &[usize]) -> Self {
        TauMonomial(indices.iter().fold(0, |m, &i| {
            assert!((1..=64).contains(&i), "tau index {i} out of range");
            m | 1 << (i - 1)
        }))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// 1-based indices of the variables present.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |b| self.0 >> b & 1 == 1).map(|b| b + 1)
    }
}

/// A polynomial in `τ₁..τₙ` in which every variable has degree at most one.
#[derive(Clone, Debug)]
pub struct MultilinearPoly {
    nvars: usize,
    terms: FxHashMap<TauMonomial, Rational>,
}

fn var_mask(nvars: usize) -> u64 {
    if nvars >= 64 {
        u64::MAX
    } else {
        (1 << nvars) - 1
    }
}

impl MultilinearPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= 64, "at most 64 tau variables");
        MultilinearPoly {
            nvars,
            terms: FxHashMap::default(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(TauMonomial::ONE, c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn monomial(nvars: usize, m: TauMonomial, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (TauMonomial, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of monomials with a nonzero coefficient.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&TauMonomial::ONE)
                .is_some_and(|c| c.is_one())
    }

    pub fn coefficient(&self, m: TauMonomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Unordered iteration over the stored terms.
    pub fn iter(&self) -> impl Iterator<Item = (TauMonomial, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    /// Terms sorted by monomial mask.
    pub fn sorted_terms(&self) -> Vec<(TauMonomial, &Rational)> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_unstable_by_key(|(m, _)| *m);
        v
    }

    /// Union of the supports of all monomials.
    pub fn support(&self) -> u64 {
        self.terms.keys().fold(0, |acc, m| acc | m.0)
    }

    /// True if every monomial only involves variables with 0-based bit index in `lo..hi`.
    pub fn supported_in(&self, lo: usize, hi: usize) -> bool {
        let allowed = var_mask(hi) & !var_mask(lo);
        self.support() & !allowed == 0
    }

    pub fn add_term(&mut self, m: TauMonomial, c: Rational) {
        debug_assert!(
            m.0 & !var_mask(self.nvars) == 0,
            "monomial {:#b} outside {} variables",
            m.0,
            self.nvars
        );
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &MultilinearPoly) {
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &MultilinearPoly, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(*m, c * factor);
        }
    }

    pub fn scaled(&self, factor: &Rational) -> MultilinearPoly {
        let mut p = Self::zero(self.nvars);
        if !factor.is_zero() {
            p.terms = self.terms.iter().map(|(m, c)| (*m, c * factor)).collect();
        }
        p
    }

    pub fn negated(&self) -> MultilinearPoly {
        MultilinearPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    /// Accumulates `a · b` into `self`.
    ///
    /// Errors with [`Error::OverlappingSupport`] if any pair of monomials shares
    /// a variable, which would produce a square.
    pub fn add_product(&mut self, a: &MultilinearPoly, b: &MultilinearPoly) -> Result<()> {
        if a.is_zero() || b.is_zero() {
            return Ok(());
        }
        let disjoint = a.support() & b.support() == 0;
        self.terms.reserve(a.term_count() * b.term_count());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if !disjoint && ma.0 & mb.0 != 0 {
                    return Err(Error::OverlappingSupport {
                        left: ma.0,
                        right: mb.0,
                    });
                }
                self.add_term(TauMonomial(ma.0 | mb.0), ca * cb);
            }
        }
        Ok(())
    }

    pub fn mul(&self, other: &MultilinearPoly) -> Result<MultilinearPoly> {
        let mut p = Self::zero(self.nvars.max(other.nvars));
        p.add_product(self, other)?;
        Ok(p)
    }

    /// Renames `τᵢ → τ_{i+k}` and re-homes the result in `nvars` variables.
    pub fn shifted(&self, k: usize, nvars: usize) -> MultilinearPoly {
        let mut p = Self::zero(nvars);
        p.terms = self
            .terms
            .iter()
            .map(|(m, c)| (TauMonomial(m.0 << k), c.clone()))
            .collect();
        debug_assert!(p.support() & !var_mask(nvars) == 0);
        p
    }

    /// The same polynomial viewed in `nvars` variables; errors if a present variable would fall outside.
    pub fn with_nvars(&self, nvars: usize) -> Result<MultilinearPoly> {
        if nvars > 64 || self.support() & !var_mask(nvars) != 0 {
            return Err(Error::SizeTooSmall {
                size: nvars,
                needed: 64 - self.support().leading_zeros() as usize,
            });
        }
        Ok(MultilinearPoly {
            nvars,
            terms: self.terms.clone(),
        })
    }
}

impl PartialEq for MultilinearPoly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl Eq for MultilinearPoly {}

impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            write!(f, "{}", c.abs())?;
            for i in m.indices() {
                write!(f, " t{i}")?;
            }
        }
        Ok(())
    }
}
