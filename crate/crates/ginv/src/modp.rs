//! Arithmetic and dense linear algebra over a prime field GF(p), used by the
//! character table algorithm. Primes stay below 2^31 so products fit in u64.

use crate::error::{Error, Result};
use crate::numtheory::{is_prime, isqrt, prime_factors};

#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> PrimeField {
        debug_assert!(is_prime(p) && p < (1 << 31));
        PrimeField { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    pub fn embed(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }
}

/// Smallest prime `p ≡ 1 (mod exponent)` with `p > max(2·√order, exponent)`.
/// Such a prime never divides the group order.
pub fn find_dixon_prime(exponent: u64, order: u64, bound: u64) -> Result<u64> {
    let lower = (2 * isqrt(order)).max(exponent);
    let mut p = exponent + 1;
    while p <= lower || !is_prime(p) {
        p += exponent;
        if p > bound {
            return Err(Error::PrimeSearchFailed {
                exponent,
                lower,
                bound,
            });
        }
    }
    Ok(p)
}

/// A fixed element of multiplicative order `m` in GF(p): the image of the
/// first primitive root under the power map. Deterministic.
pub fn element_of_order(field: PrimeField, m: u64) -> u64 {
    let p = field.p;
    debug_assert_eq!((p - 1) % m, 0);
    let factors = prime_factors(p - 1);
    let root = (2..p)
        .find(|&g| factors.iter().all(|&q| field.pow(g, (p - 1) / q) != 1))
        .expect("every prime has a primitive root");
    field.pow(root, (p - 1) / m)
}

/// Dense row-major matrix over GF(p).
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_columns(columns: &[Vec<u64>]) -> Matrix {
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Matrix::zero(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn mul(&self, other: &Matrix, f: PrimeField) -> Matrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = f.add(out[(i, j)], f.mul(a, other[(k, j)]));
                }
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns pivot column indices.
    pub fn rref(&mut self, f: PrimeField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pivot_row) = (row..self.rows).find(|&r| self[(r, col)] != 0) else {
                continue;
            };
            self.swap_rows(row, pivot_row);
            let inv = f.inv(self[(row, col)]);
            for j in col..self.cols {
                self[(row, j)] = f.mul(self[(row, j)], inv);
            }
            for r in 0..self.rows {
                if r != row && self[(r, col)] != 0 {
                    let factor = self[(r, col)];
                    for j in col..self.cols {
                        let delta = f.mul(factor, self[(row, j)]);
                        self[(r, j)] = f.sub(self[(r, j)], delta);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of the kernel (as column vectors).
    pub fn kernel(&self, f: PrimeField) -> Vec<Vec<u64>> {
        let mut work = self.clone();
        let pivots = work.rref(f);
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![0u64; self.cols];
            vec[free] = 1;
            for (col, pivot) in pivot_of_col.iter().enumerate() {
                if let Some(r) = pivot {
                    vec[col] = f.neg(work[(*r, free)]);
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Solves `self · X = rhs` when a solution exists and the solution is
    /// unique (full column rank).
    pub fn solve(&self, rhs: &Matrix, f: PrimeField) -> Option<Matrix> {
        debug_assert_eq!(self.rows, rhs.rows);
        let mut work = Matrix::zero(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                work[(i, j)] = self[(i, j)];
            }
            for j in 0..rhs.cols {
                work[(i, self.cols + j)] = rhs[(i, j)];
            }
        }
        let pivots = work.rref(f);
        // Any pivot in the rhs block means inconsistency; fewer pivots than
        // columns means the solution is not unique.
        if pivots.iter().any(|&c| c >= self.cols) || pivots.len() != self.cols {
            return None;
        }
        let mut x = Matrix::zero(self.cols, rhs.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(c, j)] = work[(r, self.cols + j)];
            }
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = u64;
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        &mut self.data[i * self.cols + j]
    }
}
