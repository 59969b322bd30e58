//! Exact multivariate power series for the complete bipartite and
//! multipartite generating functions.
//!
//! The exponential generating function of `mu` over complete `k`-partite
//! graphs is `H = -sum x_i + log(1 - k + sum e^{x_i})`; for `k = 2` it is
//! also `log(e^{-x} + e^{-y} - e^{-x-y})`. Coefficients are kept as exact
//! rationals and truncated per variable.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest total vertex count accepted by the generating-function routines.
pub const MAX_SERIES_VERTICES: usize = 16;

/// Dense power series in `dims.len()` variables, truncated at degree
/// `dims[i]` in variable `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    dims: Vec<usize>,
    strides: Vec<usize>,
    coeffs: Vec<BigRational>,
}

impl Series {
    pub fn zero(dims: &[usize]) -> Self {
        let mut strides = vec![1; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (dims[i + 1] + 1);
        }
        let size = dims.iter().map(|d| d + 1).product();
        Self {
            dims: dims.to_vec(),
            strides,
            coeffs: vec![BigRational::zero(); size],
        }
    }

    pub fn constant(dims: &[usize], c: BigRational) -> Self {
        let mut s = Self::zero(dims);
        s.coeffs[0] = c;
        s
    }

    /// `e^{sign * x_var}`.
    pub fn exp_var(dims: &[usize], var: usize, sign: i64) -> Self {
        let mut s = Self::zero(dims);
        let mut term = BigRational::one();
        for k in 0..=dims[var] {
            s.coeffs[k * s.strides[var]] = term.clone();
            term = term * BigRational::from_integer(BigInt::from(sign))
                / BigRational::from_integer(BigInt::from(k + 1));
        }
        s
    }

    /// The monomial `c * x_var`.
    pub fn linear(dims: &[usize], var: usize, c: BigRational) -> Self {
        let mut s = Self::zero(dims);
        if dims[var] >= 1 {
            s.coeffs[s.strides[var]] = c;
        }
        s
    }

    fn index(&self, exps: &[usize]) -> usize {
        exps.iter().zip(&self.strides).map(|(e, s)| e * s).sum()
    }

    fn exps(&self, mut idx: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|s| {
                let e = idx / s;
                idx %= s;
                e
            })
            .collect()
    }

    pub fn coefficient(&self, exps: &[usize]) -> &BigRational {
        &self.coeffs[self.index(exps)]
    }

    pub fn add(&self, other: &Series) -> Series {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        let mut out = self.clone();
        for a in &mut out.coeffs {
            *a *= c;
        }
        out
    }

    /// Truncated product: only exponent pairs whose sum stays inside `dims`.
    pub fn mul(&self, other: &Series) -> Series {
        let mut out = Series::zero(&self.dims);
        let k = self.dims.len();
        for (ia, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let a = self.exps(ia);
            let room: Vec<usize> = self.dims.iter().zip(&a).map(|(d, x)| d - x).collect();
            // Odometer over b <= room.
            let mut b = vec![0usize; k];
            'odometer: loop {
                let ib = self.index(&b);
                let cb = &other.coeffs[ib];
                if !cb.is_zero() {
                    out.coeffs[ia + ib] += ca * cb;
                }
                let mut i = k;
                loop {
                    if i == 0 {
                        break 'odometer;
                    }
                    i -= 1;
                    if b[i] < room[i] {
                        b[i] += 1;
                        break;
                    }
                    b[i] = 0;
                }
            }
        }
        out
    }

    /// `log(1 + self)`; requires a zero constant term.
    pub fn log1p(&self) -> Series {
        assert!(
            self.coeffs[0].is_zero(),
            "log1p needs a series without constant term"
        );
        let max_degree: usize = self.dims.iter().sum();
        let mut out = Series::zero(&self.dims);
        let mut power = self.clone();
        for k in 1..=max_degree {
            let c = BigRational::new(
                BigInt::from(if k % 2 == 1 { 1 } else { -1 }),
                BigInt::from(k),
            );
            out = out.add(&power.scale(&c));
            if k < max_degree {
                power = power.mul(self);
            }
        }
        out
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn scaled_abs(coeff: &BigRational, sizes: &[usize]) -> Result<u64> {
    let scale: BigInt = sizes.iter().map(|&s| factorial(s)).product();
    let v = (coeff * BigRational::from_integer(scale)).abs();
    if !v.is_integer() {
        return Err(Error::InvalidInput(format!("non-integral coefficient {v}")));
    }
    v.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Capacity("mu overflows u64".into()))
}

fn check_sizes(sizes: &[usize]) -> Result<()> {
    if sizes.len() < 2 || sizes.contains(&0) {
        return Err(Error::InvalidInput(
            "need at least two non-empty parts".into(),
        ));
    }
    let total: usize = sizes.iter().sum();
    if total > MAX_SERIES_VERTICES {
        return Err(Error::Capacity(format!(
            "{total} vertices exceeds series bound {MAX_SERIES_VERTICES}"
        )));
    }
    Ok(())
}

/// `mu(K_{m,n})` from `H(x, y) = log(e^{-x} + e^{-y} - e^{-x-y})`.
pub fn mu_bipartite(m: usize, n: usize) -> Result<u64> {
    check_sizes(&[m, n])?;
    let dims = [m, n];
    let ex = Series::exp_var(&dims, 0, -1);
    let ey = Series::exp_var(&dims, 1, -1);
    let minus_one = BigRational::from_integer(BigInt::from(-1));
    // e^{-x} + e^{-y} - e^{-x}e^{-y} - 1, which has no constant term.
    let inner = ex
        .add(&ey)
        .add(&ex.mul(&ey).scale(&minus_one))
        .add(&Series::constant(&dims, minus_one));
    let h = inner.log1p();
    scaled_abs(h.coefficient(&dims), &dims)
}

/// `mu` of the complete multipartite graph with the given part sizes.
pub fn mu_kpartite(sizes: &[usize]) -> Result<u64> {
    check_sizes(sizes)?;
    let mut inner = Series::zero(sizes);
    let mut linear = Series::zero(sizes);
    let minus_one = BigRational::from_integer(BigInt::from(-1));
    for var in 0..sizes.len() {
        // e^{x_i} - 1 summed over parts gives 1 - k + sum e^{x_i} - 1.
        inner = inner
            .add(&Series::exp_var(sizes, var, 1))
            .add(&Series::constant(sizes, minus_one.clone()));
        linear = linear.add(&Series::linear(sizes, var, minus_one.clone()));
    }
    let h = linear.add(&inner.log1p());
    scaled_abs(h.coefficient(sizes), sizes)
}
