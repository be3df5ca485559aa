use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

/// Square 2D FFT built from row transforms and an in-place transpose.
///
/// [`Fft2::forward`] leaves the spectrum transposed (`[kx][ky]`);
/// [`Fft2::inverse`] expects that layout and restores `[y][x]`. Operators
/// that are symmetric in `kx, ky` can be applied in between without caring.
pub struct Fft2 {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl Fft2 {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            n,
            fwd: planner.plan_fft_forward(n),
            inv: planner.plan_fft_inverse(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn rows(&self, fft: &Arc<dyn Fft<f64>>, data: &mut [Complex64]) {
        let len = fft.get_inplace_scratch_len();
        data.par_chunks_mut(self.n).for_each_init(
            || vec![Complex64::default(); len],
            |scratch, row| fft.process_with_scratch(row, scratch),
        );
    }

    fn transpose(&self, data: &mut [Complex64]) {
        let n = self.n;
        for i in 0..n {
            for j in (i + 1)..n {
                data.swap(i * n + j, j * n + i);
            }
        }
    }

    /// Unnormalized forward transform; output is transposed.
    pub fn forward(&self, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.n * self.n);
        self.rows(&self.fwd, data);
        self.transpose(data);
        self.rows(&self.fwd, data);
    }

    /// Inverse of [`Fft2::forward`], including the `1/n²` factor.
    pub fn inverse(&self, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.n * self.n);
        self.rows(&self.inv, data);
        self.transpose(data);
        self.rows(&self.inv, data);
        let s = 1.0 / (self.n * self.n) as f64;
        data.par_iter_mut().for_each(|z| *z *= s);
    }
}

/// Wavenumbers of an `n`-point periodic axis of length `extent`, FFT order.
pub fn wavenumbers(n: usize, extent: f64) -> Vec<f64> {
    let dk = 2.0 * std::f64::consts::PI / extent;
    (0..n)
        .map(|j| if j < n / 2 { j as f64 } else { j as f64 - n as f64 } * dk)
        .collect()
}
