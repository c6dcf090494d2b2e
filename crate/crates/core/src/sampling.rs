//! Deterministic sample generators for randomized identity checks.
//!
//! The property and acceptance suites need reproducible "random" field
//! elements, forms, and automorphisms; a small splitmix64 stream keeps them
//! dependency-free and stable across runs.

use crate::exterior::{basis_masks, KForm, Vector, DIM};
use crate::liealg::{exp_nilpotent, LieAlgebra};
use crate::matrix::Matrix;
use crate::scalar::{Mode, Scalar};

#[derive(Clone, Debug)]
pub struct SampleRng(u64);

impl SampleRng {
    pub fn new(seed: u64) -> SampleRng {
        SampleRng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in 0..n.
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// Small nonzero rational.
    pub fn nonzero_rational(&mut self) -> Scalar {
        loop {
            let num = self.int_in(-4, 4);
            if num == 0 {
                continue;
            }
            let den = self.int_in(1, 4);
            return Scalar::from_ratio(num, den);
        }
    }

    /// Bounded-height element of Q(√2, √3).
    pub fn scalar(&mut self) -> Scalar {
        let mut parts = [0i64; 8];
        for p in parts.iter_mut() {
            *p = self.int_in(-3, 3);
        }
        let den = |v: i64| if v == 0 { 1 } else { v.abs() };
        Scalar::from_ratio(parts[0], den(parts[1]))
            + Scalar::from_ratio(parts[2], den(parts[3])) * Scalar::sqrt2()
            + Scalar::from_ratio(parts[4], den(parts[5])) * Scalar::sqrt3()
            + Scalar::from_ratio(parts[6], den(parts[7])) * Scalar::sqrt6()
    }

    pub fn nonzero_scalar(&mut self) -> Scalar {
        loop {
            let s = self.scalar();
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn kform(&mut self, degree: usize) -> KForm {
        let mut f = KForm::zero(degree, Mode::Exact);
        for &mask in basis_masks(degree) {
            // keep forms sparse-ish so exact arithmetic stays light
            if self.below(3) == 0 {
                f.set_coeff(mask, self.scalar());
            }
        }
        f
    }

    pub fn vector(&mut self) -> Vector {
        Vector::from_fn(|_| self.scalar())
    }

    /// Invertible matrix built from random elementary operations.
    pub fn invertible_matrix(&mut self) -> Matrix {
        let mut m = Matrix::identity(DIM, Mode::Exact);
        for _ in 0..12 {
            match self.below(3) {
                0 => {
                    // row addition
                    let i = self.below(DIM as u64) as usize;
                    let mut j = self.below(DIM as u64) as usize;
                    if i == j {
                        j = (j + 1) % DIM;
                    }
                    let c = self.nonzero_rational();
                    for col in 0..DIM {
                        let v = m.get(i, col) + &(&c * m.get(j, col));
                        m.set(i, col, v);
                    }
                }
                1 => {
                    // row swap
                    let i = self.below(DIM as u64) as usize;
                    let mut j = self.below(DIM as u64) as usize;
                    if i == j {
                        j = (j + 1) % DIM;
                    }
                    for col in 0..DIM {
                        let a = m.get(i, col).clone();
                        let b = m.get(j, col).clone();
                        m.set(i, col, b);
                        m.set(j, col, a);
                    }
                }
                _ => {
                    // row scaling by a nonzero rational
                    let i = self.below(DIM as u64) as usize;
                    let c = self.nonzero_rational();
                    for col in 0..DIM {
                        let v = m.get(i, col) * &c;
                        m.set(i, col, v);
                    }
                }
            }
        }
        m
    }

    /// Invertible matrix with determinant ±1: row additions and swaps only.
    /// Transporting a positive form by one of these keeps the induced
    /// metric inside the field (the volume normalization needs no root).
    pub fn unimodular_matrix(&mut self) -> Matrix {
        let mut m = Matrix::identity(DIM, Mode::Exact);
        for _ in 0..10 {
            if self.below(4) == 0 {
                let i = self.below(DIM as u64) as usize;
                let mut j = self.below(DIM as u64) as usize;
                if i == j {
                    j = (j + 1) % DIM;
                }
                for col in 0..DIM {
                    let a = m.get(i, col).clone();
                    let b = m.get(j, col).clone();
                    m.set(i, col, b);
                    m.set(j, col, a);
                }
            } else {
                let i = self.below(DIM as u64) as usize;
                let mut j = self.below(DIM as u64) as usize;
                if i == j {
                    j = (j + 1) % DIM;
                }
                let c = self.nonzero_rational();
                for col in 0..DIM {
                    let v = m.get(i, col) + &(&c * m.get(j, col));
                    m.set(i, col, v);
                }
            }
        }
        m
    }

    /// Random automorphism of g: exp of a nilpotent combination of
    /// derivations, possibly composed twice. Falls back to the identity when
    /// the derivation space has no nilpotent elements among the samples.
    pub fn automorphism(&mut self, g: &LieAlgebra) -> Matrix {
        let der = g.derivation_space();
        let mut out = Matrix::identity(DIM, Mode::Exact);
        let mut found = 0;
        for _attempt in 0..40 {
            if found >= 2 {
                break;
            }
            let mut n = Matrix::zeros(DIM, DIM, Mode::Exact);
            for b in &der.basis {
                if self.below(2) == 0 {
                    // small integer coefficients keep the heights of every
                    // downstream exact solve manageable
                    let c = match self.below(4) {
                        0 | 1 => Scalar::from_int(1),
                        2 => Scalar::from_int(-1),
                        _ => Scalar::from_int(2),
                    };
                    n = n.add(&b.scale(&c));
                }
            }
            if let Some(h) = exp_nilpotent(&n) {
                out = out.matmul(&h);
                found += 1;
            }
        }
        out
    }
}
