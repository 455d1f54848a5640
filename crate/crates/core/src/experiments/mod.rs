//! Table and figure reproduction.
//!
//! Stochastic rows report mean ± std over a configurable number of trials.
//! Every row draws its randomness from `derive_seed(master, row_index)` and each
//! trial from `derive_seed(row_seed, trial)`, so output depends only on the
//! master seed and the row layout, never on scheduling.

mod figure;
pub mod reference;
pub mod stats;

use std::fmt;

use rayon::prelude::*;

pub use figure::{figure_series, FigureSeries, FigureSource};

use crate::error::{Error, Result};
use crate::measure::measure;
use crate::sequences::{
    apply_switches, base_switch_sequence, derive_seed, dsequence, prng_bits, SwitchSpec,
};
use crate::transform::DhtKernel;
use stats::{mean, sample_std};

pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Primes of the published d-sequence table.
pub const PAPER_PRIMES: [u64; 11] = [13, 67, 127, 151, 223, 331, 463, 557, 631, 821, 991];
/// Lengths of the published switch table.
pub const SWITCH_LENGTHS: [usize; 3] = [100, 200, 300];
/// Union of the switch counts in the published switch table.
pub const SWITCH_COUNTS: [usize; 9] = [1, 3, 4, 5, 7, 10, 11, 13, 20];
/// Lengths of the published PRNG table.
pub const PRNG_LENGTHS: [usize; 8] = [100, 200, 300, 400, 500, 600, 700, 800];

/// Parameters identifying a table row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowParams {
    Switch { length: usize, switches: usize },
    Prime(u64),
    Length(usize),
}

impl RowParams {
    /// The two leading CSV columns; single-parameter rows leave the second empty.
    fn csv_columns(&self) -> (String, String) {
        match *self {
            RowParams::Switch { length, switches } => (length.to_string(), switches.to_string()),
            RowParams::Prime(p) => (p.to_string(), String::new()),
            RowParams::Length(l) => (l.to_string(), String::new()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub params: RowParams,
    pub trials: usize,
    pub mean_r: f64,
    pub mean_r_prime: f64,
    pub std_r: f64,
}

impl TableRow {
    fn from_samples(params: RowParams, samples: &[(f64, f64)]) -> Self {
        let big_r: Vec<f64> = samples.iter().map(|s| s.0).collect();
        let big_r_prime: Vec<f64> = samples.iter().map(|s| s.1).collect();
        TableRow {
            params,
            trials: samples.len(),
            mean_r: mean(&big_r),
            mean_r_prime: mean(&big_r_prime),
            std_r: sample_std(&big_r),
        }
    }

    /// Standard error of `mean_r`.
    pub fn std_err(&self) -> f64 {
        self.std_r / (self.trials as f64).sqrt()
    }
}

pub const TABLE_HEADER: &str = "param1,param2,trials,mean_R,std_R,mean_R_prime";

/// Table rows as CSV with six-decimal reals.
pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for row in rows {
        let (p1, p2) = row.params.csv_columns();
        out.push_str(&format!(
            "{p1},{p2},{},{:.6},{:.6},{:.6}\n",
            row.trials, row.mean_r, row.std_r, row.mean_r_prime
        ));
    }
    out
}

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        Err(Error::InvalidConfig("trials must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// (R, R') per trial, computed in parallel into fixed slots.
fn run_trials<F>(trials: usize, row_seed: u64, sample: F) -> Result<Vec<(f64, f64)>>
where
    F: Fn(u64) -> Result<(f64, f64)> + Sync,
{
    (0..trials as u64)
        .into_par_iter()
        .map(|t| sample(derive_seed(row_seed, t)))
        .collect()
}

fn switch_sample(length: usize, switches: usize, seed: u64) -> Result<(f64, f64)> {
    let base = base_switch_sequence(length)?;
    let seq = apply_switches(&base, &SwitchSpec::Random { switches, seed })?;
    let rep = measure(&seq, DhtKernel::auto_for(length))?;
    Ok((rep.big_r, rep.big_r_prime))
}

/// One row per `(length, switches)` pair in `lengths × switch_counts`.
pub fn switch_table(
    lengths: &[usize],
    switch_counts: &[usize],
    trials: usize,
    seed: u64,
) -> Result<Vec<TableRow>> {
    check_trials(trials)?;
    let mut params = Vec::with_capacity(lengths.len() * switch_counts.len());
    for &length in lengths {
        if length == 0 || length % 2 != 0 {
            return Err(Error::InvalidConfig(format!(
                "switch length {length} must be positive and even"
            )));
        }
        for &switches in switch_counts {
            if switches > length / 2 {
                return Err(Error::InvalidConfig(format!(
                    "{switches} switches exceed half of length {length}"
                )));
            }
            params.push((length, switches));
        }
    }

    params
        .iter()
        .enumerate()
        .map(|(i, &(length, switches))| {
            let row_seed = derive_seed(seed, i as u64);
            let samples = run_trials(trials, row_seed, |s| switch_sample(length, switches, s))?;
            Ok(TableRow::from_samples(
                RowParams::Switch { length, switches },
                &samples,
            ))
        })
        .collect()
}

/// One deterministic full-period row per prime.
pub fn dseq_table(primes: &[u64], kernel: DhtKernel) -> Result<Vec<TableRow>> {
    primes
        .par_iter()
        .enumerate()
        .map(|(i, &p)| {
            let seq = dsequence(p, None).map_err(|e| {
                Error::InvalidConfig(format!("prime list entry {} ({p}): {e}", i + 1))
            })?;
            let rep = measure(&seq, kernel)?;
            Ok(TableRow::from_samples(
                RowParams::Prime(p),
                &[(rep.big_r, rep.big_r_prime)],
            ))
        })
        .collect()
}

/// Mean/std of R over `trials` fresh PRNG sequences per length.
pub fn prng_table(lengths: &[usize], trials: usize, seed: u64) -> Result<Vec<TableRow>> {
    check_trials(trials)?;
    if let Some(&bad) = lengths.iter().find(|&&l| l == 0) {
        return Err(Error::InvalidConfig(format!(
            "PRNG length {bad} must be positive"
        )));
    }
    lengths
        .iter()
        .enumerate()
        .map(|(i, &length)| {
            let row_seed = derive_seed(seed, i as u64);
            let samples = run_trials(trials, row_seed, |s| {
                let rep = measure(&prng_bits(s, length), DhtKernel::auto_for(length))?;
                Ok((rep.big_r, rep.big_r_prime))
            })?;
            Ok(TableRow::from_samples(RowParams::Length(length), &samples))
        })
        .collect()
}

/// R of the 1/331 d-sequence against switch sequences of comparable length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonReport {
    pub prime: u64,
    pub dseq_r: f64,
    pub length: usize,
    pub trials: usize,
    pub low_switches: TableRow,
    pub high_switches: TableRow,
}

impl ComparisonReport {
    pub fn below_low(&self) -> bool {
        self.low_switches.mean_r < self.dseq_r
    }

    pub fn above_high(&self) -> bool {
        self.dseq_r < self.high_switches.mean_r
    }
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let switches = |row: &TableRow| match row.params {
            RowParams::Switch { switches, .. } => switches,
            _ => 0,
        };
        let (lo, hi) = (switches(&self.low_switches), switches(&self.high_switches));
        writeln!(f, "R(1/{})={:.6}", self.prime, self.dseq_r)?;
        writeln!(
            f,
            "mean_R(length={},s={lo},trials={})={:.6} std_R={:.6}",
            self.length, self.trials, self.low_switches.mean_r, self.low_switches.std_r
        )?;
        writeln!(
            f,
            "mean_R(length={},s={hi},trials={})={:.6} std_R={:.6}",
            self.length, self.trials, self.high_switches.mean_r, self.high_switches.std_r
        )?;
        writeln!(
            f,
            "mean_R(s={lo}) < R(1/{}): {}",
            self.prime,
            self.below_low()
        )?;
        writeln!(
            f,
            "R(1/{}) < mean_R(s={hi}): {}",
            self.prime,
            self.above_high()
        )
    }
}

/// Compares the 1/331 d-sequence with length-300 switch sequences at 13 and 20
/// switches.
pub fn comparison_report(trials: usize, seed: u64) -> Result<ComparisonReport> {
    const PRIME: u64 = 331;
    const LENGTH: usize = 300;
    let seq = dsequence(PRIME, None)?;
    let dseq_r = measure(&seq, DhtKernel::auto_for(seq.len()))?.big_r;
    let rows = switch_table(&[LENGTH], &[13, 20], trials, seed)?;
    Ok(ComparisonReport {
        prime: PRIME,
        dseq_r,
        length: LENGTH,
        trials,
        low_switches: rows[0],
        high_switches: rows[1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unswitched_row_is_base_measure() {
        let rows = switch_table(&[100], &[0], 1, 3).unwrap();
        let direct = measure(&base_switch_sequence(100).unwrap(), DhtKernel::Matrix).unwrap();
        assert!((rows[0].mean_r - direct.big_r).abs() < 1e-9);
        assert_eq!(rows[0].std_r, 0.0);
        assert_eq!(rows[0].trials, 1);
    }

    #[test]
    fn fully_switched_row_is_forced() {
        let forced =
            crate::sequences::BitSequence::external([vec![1u8; 50], vec![0u8; 50]].concat())
                .unwrap();
        let expect = measure(&forced, DhtKernel::Matrix).unwrap();
        for seed in [0, 1, 99] {
            let rows = switch_table(&[100], &[50], 1, seed).unwrap();
            assert!((rows[0].mean_r - expect.big_r).abs() < 1e-9);
            assert!((rows[0].mean_r_prime - expect.big_r_prime).abs() < 1e-9);
        }
    }

    #[test]
    fn config_errors() {
        assert!(matches!(
            switch_table(&[100], &[51], 1, 0),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            switch_table(&[99], &[1], 1, 0),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            switch_table(&[100], &[1], 0, 0),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            prng_table(&[0], 1, 0),
            Err(Error::InvalidConfig(_))
        ));
        let err = dseq_table(&[13, 15], DhtKernel::Matrix).unwrap_err();
        assert!(err.to_string().contains("entry 2 (15)"), "{err}");
    }

    #[test]
    fn prime_three_row() {
        let rows = dseq_table(&[3], DhtKernel::Matrix).unwrap();
        let direct = measure(&dsequence(3, None).unwrap(), DhtKernel::Matrix).unwrap();
        assert_eq!(rows[0].mean_r, direct.big_r);
        assert_eq!(rows[0].params, RowParams::Prime(3));
    }

    #[test]
    fn tables_are_reproducible() {
        let a = prng_table(&[100, 300], 5, 11).unwrap();
        let b = prng_table(&[100, 300], 5, 11).unwrap();
        assert_eq!(a, b);
        let c = switch_table(&[100], &[3, 7], 4, 11).unwrap();
        assert_eq!(c, switch_table(&[100], &[3, 7], 4, 11).unwrap());
        assert_ne!(a, prng_table(&[100, 300], 5, 12).unwrap());
    }

    #[test]
    fn csv_layout() {
        let rows = vec![
            TableRow {
                params: RowParams::Switch {
                    length: 100,
                    switches: 4,
                },
                trials: 3,
                mean_r: 0.8,
                mean_r_prime: 0.75,
                std_r: 0.0125,
            },
            TableRow {
                params: RowParams::Prime(13),
                trials: 1,
                mean_r: 0.84040104,
                mean_r_prime: 0.5,
                std_r: 0.0,
            },
        ];
        assert_eq!(
            table_csv(&rows),
            "param1,param2,trials,mean_R,std_R,mean_R_prime\n\
             100,4,3,0.800000,0.012500,0.750000\n\
             13,,1,0.840401,0.000000,0.500000\n"
        );
    }

    #[test]
    fn comparison_with_single_trial_is_well_formed() {
        let rep = comparison_report(1, 5).unwrap();
        let text = rep.to_string();
        assert_eq!(text.lines().count(), 5);
        assert!(text.starts_with("R(1/331)="));
        assert_eq!(rep.low_switches.trials, 1);
    }
}
