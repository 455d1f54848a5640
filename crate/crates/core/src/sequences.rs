//! Bit-sequence generators: binary expansions of `1/p`, random-switch
//! sequences and seeded pseudo-random bitstreams, plus the bitstring text format.

use std::fmt;

use crate::error::{Error, Result};
use crate::transform::RealSequence;

/// Longest bitstring accepted by [`parse_bitstring`].
pub const MAX_BITSTRING_LEN: usize = 1 << 24;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Where a bit sequence came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    DSequence { prime: u64 },
    Switch { length: usize, spec: SwitchSpec },
    Prng { seed: u64 },
    External,
}

/// A sequence of 0/1 values tagged with its origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSequence {
    bits: Vec<u8>,
    provenance: Provenance,
}

impl BitSequence {
    pub fn new(bits: Vec<u8>, provenance: Provenance) -> Result<Self> {
        if let Some(i) = bits.iter().position(|&b| b > 1) {
            return Err(Error::InvalidInput(format!(
                "bit at index {i} is {}, expected 0 or 1",
                bits[i]
            )));
        }
        Ok(Self { bits, provenance })
    }

    /// Wraps bits of unknown origin.
    pub fn external(bits: Vec<u8>) -> Result<Self> {
        Self::new(bits, Provenance::External)
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// The 0.0/1.0 real view fed to the transform.
    pub fn to_real(&self) -> Result<RealSequence> {
        RealSequence::new(self.bits.iter().map(|&b| f64::from(b)).collect())
    }
}

impl fmt::Display for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(m)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; these witnesses cover every 64-bit integer.
fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p >= 3 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidPrime(p))
    }
}

/// Multiplicative order of 2 modulo the odd prime `p`: the period of the
/// binary expansion of `1/p`.
pub fn period(p: u64) -> Result<usize> {
    check_odd_prime(p)?;
    let p = u128::from(p);
    let mut residue = 2 % p;
    let mut t = 1usize;
    while residue != 1 {
        residue = residue * 2 % p;
        t += 1;
    }
    Ok(t)
}

/// Binary d-sequence of `1/p`: bit `i` (1-indexed) is `(2^i mod p) mod 2`.
///
/// `length` defaults to one full period; longer sequences repeat.
pub fn dsequence(p: u64, length: Option<usize>) -> Result<BitSequence> {
    check_odd_prime(p)?;
    let length = match length {
        Some(l) => l,
        None => period(p)?,
    };
    let modulus = u128::from(p);
    let mut residue = 1u128;
    let bits = (0..length)
        .map(|_| {
            residue = residue * 2 % modulus;
            (residue % 2) as u8
        })
        .collect();
    BitSequence::new(bits, Provenance::DSequence { prime: p })
}

/// `length/2` zeros followed by `length/2` ones.
pub fn base_switch_sequence(length: usize) -> Result<BitSequence> {
    if length == 0 || !length.is_multiple_of(2) {
        return Err(Error::InvalidLength(length));
    }
    let half = length / 2;
    let bits = std::iter::repeat_n(0, half)
        .chain(std::iter::repeat_n(1, half))
        .collect();
    BitSequence::new(
        bits,
        Provenance::Switch {
            length,
            spec: SwitchSpec::Positions(Vec::new()),
        },
    )
}

/// Which bits of a base sequence get flipped.
///
/// One switch flips one 0 in the first half to 1 and one 1 in the second half
/// to 0, so the ones-count is preserved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SwitchSpec {
    /// Explicit 1-indexed positions to flip.
    Positions(Vec<usize>),
    /// `switches` uniformly chosen positions in each half.
    Random { switches: usize, seed: u64 },
}

/// Flips bits of `base` according to `spec`.
///
/// In explicit mode every listed position must be distinct and in range, and
/// must hold 0 if it lies in the first half or 1 if in the second. Random mode
/// requires the canonical base sequence from [`base_switch_sequence`].
pub fn apply_switches(base: &BitSequence, spec: &SwitchSpec) -> Result<BitSequence> {
    let length = base.len();
    if length == 0 || !length.is_multiple_of(2) {
        return Err(Error::InvalidLength(length));
    }
    let half = length / 2;
    let mut bits = base.bits().to_vec();

    match spec {
        SwitchSpec::Positions(positions) => {
            let mut seen = vec![false; length];
            for &pos in positions {
                if pos == 0 || pos > length {
                    return Err(Error::InvalidSpec(format!(
                        "position {pos} outside 1..={length}"
                    )));
                }
                let idx = pos - 1;
                if std::mem::replace(&mut seen[idx], true) {
                    return Err(Error::InvalidSpec(format!("position {pos} listed twice")));
                }
                let expected = if idx < half { 0 } else { 1 };
                if bits[idx] != expected {
                    return Err(Error::InvalidSpec(format!(
                        "position {pos} holds {} but a switch there must flip {expected}",
                        bits[idx]
                    )));
                }
                bits[idx] = 1 - expected;
            }
        }
        SwitchSpec::Random { switches, seed } => {
            let switches = *switches;
            if switches > half {
                return Err(Error::TooManySwitches { switches, half });
            }
            let canonical =
                bits[..half].iter().all(|&b| b == 0) && bits[half..].iter().all(|&b| b == 1);
            if !canonical {
                return Err(Error::InvalidSpec(
                    "random switches need an unmodified base sequence".into(),
                ));
            }
            let mut rng = PrngState::new(*seed);
            for offset in [0, half] {
                for idx in distinct_indices(&mut rng, half, switches) {
                    bits[offset + idx] ^= 1;
                }
            }
        }
    }

    BitSequence::new(
        bits,
        Provenance::Switch {
            length,
            spec: spec.clone(),
        },
    )
}

/// `count` distinct indices in `[0, bound)`, redrawing on collision.
fn distinct_indices(rng: &mut PrngState, bound: usize, count: usize) -> Vec<usize> {
    let mut taken = vec![false; bound];
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let i = uniform_index(rng, bound as u64) as usize;
        if !std::mem::replace(&mut taken[i], true) {
            out.push(i);
        }
    }
    out
}

/// SplitMix64 generator state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrngState(u64);

impl PrngState {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn state(&self) -> u64 {
        self.0
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(GOLDEN_GAMMA);
        mix64(self.0)
    }

    /// Most significant bit of the next output.
    pub fn next_bit(&mut self) -> u8 {
        (self.next_u64() >> 63) as u8
    }
}

/// SplitMix64 output finaliser.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent seed for slot `index` of a run driven by `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    PrngState::new(master.wrapping_add(index.wrapping_mul(GOLDEN_GAMMA))).next_u64()
}

/// Uniform integer in `[0, bound)` without modulo bias.
///
/// Draws below `2^64 mod bound` are rejected so the accepted range is a whole
/// multiple of `bound`.
pub fn uniform_index(state: &mut PrngState, bound: u64) -> u64 {
    assert!(bound >= 1, "bound must be positive");
    let threshold = bound.wrapping_neg() % bound;
    loop {
        let x = state.next_u64();
        if x >= threshold {
            return x % bound;
        }
    }
}

/// `length` pseudo-random bits from `seed`.
pub fn prng_bits(seed: u64, length: usize) -> BitSequence {
    let mut rng = PrngState::new(seed);
    let bits = (0..length).map(|_| rng.next_bit()).collect();
    BitSequence {
        bits,
        provenance: Provenance::Prng { seed },
    }
}

/// Parses a line of ASCII '0'/'1' characters with an optional trailing newline.
pub fn parse_bitstring(text: &str) -> Result<BitSequence> {
    let body = text
        .strip_suffix('\n')
        .map(|s| s.strip_suffix('\r').unwrap_or(s))
        .unwrap_or(text);
    if body.len() > MAX_BITSTRING_LEN {
        return Err(Error::Parse {
            offset: MAX_BITSTRING_LEN,
            message: format!("bitstring longer than {MAX_BITSTRING_LEN} bits"),
        });
    }
    let bits = body
        .bytes()
        .enumerate()
        .map(|(offset, c)| match c {
            b'0' => Ok(0),
            b'1' => Ok(1),
            other => Err(Error::Parse {
                offset,
                message: format!("unexpected character {:?}", other as char),
            }),
        })
        .collect::<Result<Vec<u8>>>()?;
    BitSequence::external(bits)
}

/// Bits as '0'/'1' characters followed by a newline.
pub fn format_bitstring(seq: &BitSequence) -> String {
    let mut s = seq.to_string();
    s.push('\n');
    s
}
