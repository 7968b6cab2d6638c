use num_traits::One;

use super::{MultilinearPoly, TauMonomial, TriMatrix};
use crate::algebra::{inverse_factorial, Rational};
use crate::error::{Error, Result};

fn range_mask(lo: usize, hi: usize) -> u64 {
    (lo..hi).fold(0, |m, b| m | 1 << b)
}

fn signed_inverse_factorial(k: usize) -> Rational {
    let r = inverse_factorial(k);
    if k % 2 == 1 {
        -r
    } else {
        r
    }
}

fn build(n: usize, entry: impl Fn(usize, usize) -> MultilinearPoly) -> Result<TriMatrix> {
    if n == 0 {
        return Err(Error::NoVariables);
    }
    let mut m = TriMatrix::zero(n + 1);
    for i in 0..=n {
        for j in i..=n {
            *m.get_mut(i, j) = entry(i, j);
        }
    }
    debug_assert!(m.range_property_holds());
    Ok(m)
}

/// `H = exp(P + Q)`: entry `(i, j)` is `∏ₖ (1 + τₖ) / (j − i)!` over the variables of the range.
pub fn build_h(n: usize) -> Result<TriMatrix> {
    build(n, |i, j| {
        let coeff = inverse_factorial(j - i);
        let range = range_mask(i, j);
        // Every submask of the range is one term of the expanded product.
        let mut p = MultilinearPoly::zero(n);
        let mut sub = range;
        loop {
            p.add_term(TauMonomial::from_mask(sub), coeff.clone());
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & range;
        }
        p
    })
}

/// `K = exp(−P)`: constant entries `(−1)^{i+j} / (j − i)!`.
pub fn build_k(n: usize) -> Result<TriMatrix> {
    build(n, |i, j| {
        MultilinearPoly::constant(n, signed_inverse_factorial(j - i))
    })
}

/// `L = exp(−Q)`: entry `(i, j)` is `(−1)^{i+j} / (j − i)!` times the product of the range's variables.
pub fn build_l(n: usize) -> Result<TriMatrix> {
    build(n, |i, j| {
        MultilinearPoly::monomial(
            n,
            TauMonomial::from_mask(range_mask(i, j)),
            signed_inverse_factorial(j - i),
        )
    })
}

/// The shift matrix: ones on the first superdiagonal.
pub fn build_p(n: usize) -> Result<TriMatrix> {
    build(n, |i, j| {
        if j == i + 1 {
            MultilinearPoly::one(n)
        } else {
            MultilinearPoly::zero(n)
        }
    })
}

/// `τ_{i}` at row `i` (1-based) of the first superdiagonal.
pub fn build_q(n: usize) -> Result<TriMatrix> {
    build(n, |i, j| {
        if j == i + 1 {
            MultilinearPoly::monomial(n, TauMonomial::from_mask(1 << i), Rational::one())
        } else {
            MultilinearPoly::zero(n)
        }
    })
}
