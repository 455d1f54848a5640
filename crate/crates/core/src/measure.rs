//! Randomness measures derived from the transform of a bit sequence.
//!
//! With `g` the transform of the 0/1 sequence `f` of length `n`:
//!
//! ```text
//! r  = (1/n) Σ g(k)        R  = 1 − |r|
//! r' = |(1/n) Σ |g(k)||    R' = 1 − r'
//! ```
//!
//! `|Σ g| <= Σ |g|` forces `R >= R'` for every input.

use std::fmt;

use crate::error::{Error, Result};
use crate::sequences::BitSequence;
use crate::transform::{dht, format_sig17, measure_weights, DhtKernel};

/// Measure values for one sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomnessReport {
    pub n: usize,
    pub r: f64,
    pub big_r: f64,
    pub r_prime: f64,
    pub big_r_prime: f64,
    pub kernel: DhtKernel,
}

impl RandomnessReport {
    /// `key=value` lines with six decimals.
    pub fn to_text(&self) -> String {
        self.render(|v| format!("{v:.6}"))
    }

    /// `key=value` lines with 17 significant digits.
    pub fn to_machine_text(&self) -> String {
        self.render(format_sig17)
    }

    fn render(&self, num: impl Fn(f64) -> String) -> String {
        format!(
            "n={}\nr={}\nR={}\nr_prime={}\nR_prime={}\nkernel={}\n",
            self.n,
            num(self.r),
            num(self.big_r),
            num(self.r_prime),
            num(self.big_r_prime),
            self.kernel
        )
    }
}

impl fmt::Display for RandomnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn non_empty(f: &BitSequence) -> Result<()> {
    if f.is_empty() {
        Err(Error::InvalidInput(
            "cannot measure an empty sequence".into(),
        ))
    } else {
        Ok(())
    }
}

/// Transforms `f` with `kernel` and computes r, R, r' and R'.
pub fn measure(f: &BitSequence, kernel: DhtKernel) -> Result<RandomnessReport> {
    non_empty(f)?;
    let g = dht(&f.to_real()?, kernel)?;
    let n = g.len() as f64;
    let r = g.iter().sum::<f64>() / n;
    // the outer absolute value is a no-op: the inner mean is already non-negative
    let r_prime = (g.iter().map(|v| v.abs()).sum::<f64>() / n).abs();
    Ok(RandomnessReport {
        n: g.len(),
        r,
        big_r: 1.0 - r.abs(),
        r_prime,
        big_r_prime: 1.0 - r_prime,
        kernel,
    })
}

/// `r` in `O(n)` from the column-sum weights, without a full transform.
pub fn measure_fast_r(f: &BitSequence) -> Result<f64> {
    non_empty(f)?;
    let w = measure_weights(f.len())?;
    let sum: f64 = w
        .iter()
        .zip(f.bits())
        .filter(|(_, &b)| b == 1)
        .map(|(w, _)| w)
        .sum();
    Ok(sum / f.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{prng_bits, BitSequence};
    use std::f64::consts::{FRAC_1_PI, FRAC_2_PI};

    fn bits(v: &[u8]) -> BitSequence {
        BitSequence::external(v.to_vec()).unwrap()
    }

    #[test]
    fn zeros_are_perfectly_random() {
        for n in [1, 2, 10, 257] {
            for kernel in DhtKernel::ALL {
                let rep = measure(&bits(&vec![0; n]), kernel).unwrap();
                assert_eq!(rep.r, 0.0);
                assert_eq!(rep.big_r, 1.0);
                assert_eq!(rep.r_prime, 0.0);
                assert_eq!(rep.big_r_prime, 1.0);
            }
        }
    }

    #[test]
    fn two_point_values() {
        let rep = measure(&bits(&[1, 0]), DhtKernel::Matrix).unwrap();
        assert!((rep.r - FRAC_1_PI).abs() < 1e-12);
        assert!((rep.big_r - 0.681690).abs() < 1e-6);
        assert!((rep.r_prime - FRAC_1_PI).abs() < 1e-12);
        assert!((rep.big_r_prime - 0.681690).abs() < 1e-6);

        let rep = measure(&bits(&[1, 1]), DhtKernel::Matrix).unwrap();
        assert!(rep.r.abs() < 1e-12);
        assert!((rep.big_r - 1.0).abs() < 1e-12);
        assert!((rep.r_prime - FRAC_2_PI).abs() < 1e-12);
        assert!((rep.big_r_prime - 0.363380).abs() < 1e-6);
        assert!(rep.big_r > rep.big_r_prime);
    }

    #[test]
    fn empty_rejected() {
        let empty = bits(&[]);
        assert!(matches!(
            measure(&empty, DhtKernel::Matrix),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            measure_fast_r(&empty),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn fast_r_examples() {
        assert!((measure_fast_r(&bits(&[1, 0])).unwrap() - FRAC_1_PI).abs() < 1e-12);
        for n in [1, 2, 9, 100] {
            assert!(measure_fast_r(&bits(&vec![1; n])).unwrap().abs() < 1e-12);
        }
        let f = prng_bits(5, 300);
        let full = measure(&f, DhtKernel::Matrix).unwrap().r;
        assert!((measure_fast_r(&f).unwrap() - full).abs() < 1e-9);
    }

    #[test]
    fn report_text_format() {
        let rep = measure(&bits(&[1, 0]), DhtKernel::Matrix).unwrap();
        assert_eq!(
            rep.to_text(),
            "n=2\nr=0.318310\nR=0.681690\nr_prime=0.318310\nR_prime=0.681690\nkernel=matrix\n"
        );
        let machine = rep.to_machine_text();
        let keys: Vec<&str> = machine
            .lines()
            .map(|l| l.split('=').next().unwrap())
            .collect();
        assert_eq!(keys, ["n", "r", "R", "r_prime", "R_prime", "kernel"]);
        assert!(machine.contains("r=0.31830988618379069\n"));
    }
}
