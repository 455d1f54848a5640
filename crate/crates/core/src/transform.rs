//! Finite discrete Hilbert transform.
//!
//! The transform of a length-`n` sequence `f` is `g(k) = Σ_j M[k][j] f(j)` with
//!
//! ```text
//! M[k][j] = (2/π) / (k − j)   if k − j is odd
//!         = 0                 otherwise
//! ```
//!
//! for `0 <= k, j < n`. The matrix is skew-symmetric and Toeplitz (entries depend
//! only on `k − j`), so besides the direct parity-stepped sum and the dense
//! row-by-row product there is an `O(n log n)` path that embeds the product into
//! a zero-padded circular convolution.
//!
//! The finite inverse multiplies by the transpose. Truncating the kernel to a
//! finite window makes the round trip approximate; the error is smallest away
//! from the edges and shrinks as `n` grows.

use std::f64::consts::FRAC_2_PI;
use std::fmt;
use std::str::FromStr;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// A non-empty sequence of finite reals.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSequence(Vec<f64>);

impl RealSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("sequence is empty".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "value at index {i} is not finite ({})",
                values[i]
            )));
        }
        Ok(Self(values))
    }

    /// All-zero sequence of length `n`.
    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![0.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }
}

impl AsRef<[f64]> for RealSequence {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl std::ops::Index<usize> for RealSequence {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Strategy used to evaluate the transform. All three compute the same
/// mathematical product and agree to within 1e-9 per element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DhtKernel {
    /// Parity-stepped sum `(2/π) Σ f(j) / (k − j)` over `j` of opposite parity.
    DirectSum,
    /// Full row-by-row product with the (checkerboard) matrix.
    Matrix,
    /// Toeplitz embedding into an FFT circular convolution.
    FastConvolution,
}

impl DhtKernel {
    pub const ALL: [DhtKernel; 3] = [
        DhtKernel::DirectSum,
        DhtKernel::Matrix,
        DhtKernel::FastConvolution,
    ];

    /// Dense product for short inputs, FFT path otherwise.
    pub fn auto_for(n: usize) -> DhtKernel {
        if n <= 64 {
            DhtKernel::Matrix
        } else {
            DhtKernel::FastConvolution
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DhtKernel::DirectSum => "direct",
            DhtKernel::Matrix => "matrix",
            DhtKernel::FastConvolution => "fast",
        }
    }
}

impl fmt::Display for DhtKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DhtKernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(DhtKernel::DirectSum),
            "matrix" => Ok(DhtKernel::Matrix),
            "fast" => Ok(DhtKernel::FastConvolution),
            other => Err(Error::InvalidInput(format!(
                "unknown kernel '{other}' (expected direct, matrix or fast)"
            ))),
        }
    }
}

/// Kernel value at index difference `d = k − j`.
///
/// Negative differences are computed as the negation of the positive quotient
/// so that `M[k][j] == -M[j][k]` holds bit-for-bit.
#[inline]
fn kernel_at(d: i64) -> f64 {
    if d % 2 == 0 {
        0.0
    } else if d > 0 {
        FRAC_2_PI / d as f64
    } else {
        -(FRAC_2_PI / (-d) as f64)
    }
}

/// Diagonal generator `u` of length `2n − 1` with `M[k][j] = u[j + n − 1 − k]`,
/// so row `k` is the contiguous slice `u[n − 1 − k .. 2n − 1 − k]`.
fn row_generator(n: usize) -> Vec<f64> {
    let last = n as i64 - 1;
    (0..2 * n - 1).map(|i| kernel_at(last - i as i64)).collect()
}

/// Dense `n × n` transform matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DhtMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl DhtMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        assert!(row < self.n && col < self.n, "index out of bounds");
        self.entries[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    pub fn column(&self, col: usize) -> Vec<f64> {
        (0..self.n).map(|k| self.get(k, col)).collect()
    }

    /// Matrix-vector product, summing each row in increasing column order.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "dimension mismatch");
        (0..self.n).map(|k| dot(self.row(k), x)).collect()
    }
}

/// Builds the `n × n` transform matrix.
pub fn dht_matrix(n: usize) -> Result<DhtMatrix> {
    if n == 0 {
        return Err(Error::InvalidSize(
            "matrix dimension must be at least 1".into(),
        ));
    }
    let u = row_generator(n);
    let mut entries = Vec::with_capacity(n * n);
    for k in 0..n {
        entries.extend_from_slice(&u[n - 1 - k..2 * n - 1 - k]);
    }
    Ok(DhtMatrix { n, entries })
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc + x * y)
}

fn finite_output(values: Vec<f64>) -> Result<RealSequence> {
    RealSequence::new(values).map_err(|e| match e {
        Error::InvalidInput(msg) => Error::InvalidInput(format!("transform overflowed: {msg}")),
        other => other,
    })
}

/// Forward transform of `f` using the chosen kernel.
pub fn dht(f: &RealSequence, kernel: DhtKernel) -> Result<RealSequence> {
    let x = f.as_slice();
    let g = match kernel {
        DhtKernel::DirectSum => direct_sum(x),
        DhtKernel::Matrix => matrix_rows(x),
        DhtKernel::FastConvolution => toeplitz_fft(x),
    };
    finite_output(g)
}

/// Forward transform through the FFT path.
pub fn dht_fast(f: &RealSequence) -> Result<RealSequence> {
    dht(f, DhtKernel::FastConvolution)
}

fn direct_sum(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    (0..n)
        .map(|k| {
            let start = if k % 2 == 0 { 1 } else { 0 };
            let sum: f64 = (start..n)
                .step_by(2)
                .fold(0.0, |acc, j| acc + x[j] / (k as f64 - j as f64));
            FRAC_2_PI * sum
        })
        .collect()
}

fn matrix_rows(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let u = row_generator(n);
    (0..n)
        .map(|k| dot(&u[n - 1 - k..2 * n - 1 - k], x))
        .collect()
}

fn toeplitz_fft(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let m = (2 * n - 1).next_power_of_two();

    // c[d mod m] = kernel(d) for d in -(n-1)..=(n-1)
    let mut c = vec![Complex64::new(0.0, 0.0); m];
    for d in 1..n {
        c[d].re = kernel_at(d as i64);
        c[m - d].re = kernel_at(-(d as i64));
    }
    let mut v = vec![Complex64::new(0.0, 0.0); m];
    for (slot, &xi) in v.iter_mut().zip(x) {
        slot.re = xi;
    }

    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(m);
    let inverse = planner.plan_fft_inverse(m);
    forward.process(&mut c);
    forward.process(&mut v);
    for (vi, ci) in v.iter_mut().zip(&c) {
        *vi *= ci;
    }
    inverse.process(&mut v);

    let scale = 1.0 / m as f64;
    v[..n].iter().map(|z| z.re * scale).collect()
}

/// Finite inverse transform: `f(j) = Σ_k −(2/π) g(k) / (j − k)` over `k` of
/// opposite parity, i.e. multiplication by the transpose of the forward matrix.
pub fn inverse_dht(g: &RealSequence) -> Result<RealSequence> {
    let y = g.as_slice();
    let n = y.len();
    let f = (0..n)
        .map(|j| {
            let start = if j % 2 == 0 { 1 } else { 0 };
            let sum: f64 = (start..n)
                .step_by(2)
                .fold(0.0, |acc, k| acc + y[k] / (j as f64 - k as f64));
            -FRAC_2_PI * sum
        })
        .collect();
    finite_output(f)
}

/// Inverse transform evaluated as the negated forward transform with `kernel`
/// (the transpose of a skew-symmetric matrix is its negation).
pub fn inverse_dht_with(g: &RealSequence, kernel: DhtKernel) -> Result<RealSequence> {
    let fwd = dht(g, kernel)?;
    finite_output(fwd.into_vec().into_iter().map(|v| -v).collect())
}

/// Column sums `w(j) = Σ_k M[k][j]`, so that the mean of the transform output is
/// `(1/n) Σ_j w(j) f(j)`.
pub fn measure_weights(n: usize) -> Result<RealSequence> {
    if n == 0 {
        return Err(Error::InvalidSize(
            "weight length must be at least 1".into(),
        ));
    }
    // prefix[m] = Σ_{d=1..=m} kernel(d)
    let mut prefix = vec![0.0; n];
    for m in 1..n {
        prefix[m] = prefix[m - 1] + kernel_at(m as i64);
    }
    // Column j covers differences d in [-j, n-1-j]; the kernel is odd.
    let w = (0..n).map(|j| prefix[n - 1 - j] - prefix[j]).collect();
    RealSequence::new(w)
}

/// Formats a real with 17 significant digits, in fixed notation for moderate
/// magnitudes and scientific notation otherwise.
pub fn format_sig17(x: f64) -> String {
    let sci = format!("{x:.16e}");
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    if (-5..17).contains(&exp) {
        format!("{x:.prec$}", prec = (16 - exp) as usize)
    } else {
        sci
    }
}

/// One value per line, 17 significant digits, newline-terminated.
pub fn format_real_sequence(seq: &RealSequence) -> String {
    let mut out = String::with_capacity(seq.len() * 24);
    for &v in seq.iter() {
        out.push_str(&format_sig17(v));
        out.push('\n');
    }
    out
}

/// Parses the one-value-per-line format. Blank lines are skipped.
pub fn parse_real_sequence(text: &str) -> Result<RealSequence> {
    let mut values = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let trimmed = line.trim();
        if !trimmed.is_empty() {
            let v: f64 = trimmed.parse().map_err(|_| Error::Parse {
                offset,
                message: format!("'{trimmed}' is not a number"),
            })?;
            values.push(v);
        }
        offset += line.len();
    }
    RealSequence::new(values)
}
