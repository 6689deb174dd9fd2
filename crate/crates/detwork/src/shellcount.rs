//! Exact shell counts: how many n-copy product basis states sit at each
//! total lattice energy, for the full basis (weights d_i) or the occupied
//! support (weights d-bar_i).
//!
//! Counts are coefficients of (sum_i w_i z^{m_i})^n, computed with binary
//! exponentiation over dense big-int coefficient arrays. Schoolbook
//! convolution keeps everything exact; degrees stay small enough at desk
//! scale that FFT is not worth the loss of exactness.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::par::par_chunk_map;
use crate::spectrum::LatticeSpectrum;

/// Which per-copy weights to count with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Full,
    Occupied,
}

/// Dense counts indexed by total lattice energy t in [0, n * m_max].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellCountVector {
    pub n: u64,
    pub counts: Vec<BigUint>,
}

impl ShellCountVector {
    /// Count at total t (zero outside the stored range).
    pub fn get(&self, t: i64) -> BigUint {
        if t < 0 {
            return BigUint::zero();
        }
        self.counts.get(t as usize).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Totals with non-zero count, ascending.
    pub fn support(&self) -> Vec<u64> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, _)| t as u64)
            .collect()
    }
}

/// Default cap on the dense array length (n * m_max + 1).
pub const DEFAULT_MAX_SHELL_LEN: usize = 10_000_000;

fn weights(ls: &LatticeSpectrum, weight: Weight) -> Vec<(u64, u64)> {
    ls.m.iter()
        .zip(match weight {
            Weight::Full => ls.degeneracy.iter(),
            Weight::Occupied => ls.occupied.iter(),
        })
        .filter(|(_, &w)| w > 0)
        .map(|(&m, &w)| (m, w as u64))
        .collect()
}

fn convolve(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let out_len = a.len() + b.len() - 1;
    // each output coefficient is an independent sum; chunk them for rayon
    let chunk = (out_len / 64).max(64);
    let parts = par_chunk_map(out_len, chunk, |range| {
        range
            .map(|k| {
                let lo = k.saturating_sub(b.len() - 1);
                let hi = k.min(a.len() - 1);
                let mut acc = BigUint::zero();
                for i in lo..=hi {
                    if !a[i].is_zero() && !b[k - i].is_zero() {
                        acc += &a[i] * &b[k - i];
                    }
                }
                acc
            })
            .collect::<Vec<_>>()
    });
    parts.into_iter().flatten().collect()
}

/// Exact counts via binary exponentiation of the weighted level polynomial.
pub fn shell_counts(ls: &LatticeSpectrum, n: u64, weight: Weight) -> Result<ShellCountVector> {
    shell_counts_with(ls, n, weight, DEFAULT_MAX_SHELL_LEN)
}

pub fn shell_counts_with(
    ls: &LatticeSpectrum,
    n: u64,
    weight: Weight,
    max_len: usize,
) -> Result<ShellCountVector> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let ws = weights(ls, weight);
    if ws.is_empty() {
        return Err(Error::InvalidSpectrum("no weighted levels".into()));
    }
    let m_max = ws.iter().map(|&(m, _)| m).max().unwrap();
    let final_len = n
        .checked_mul(m_max)
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::ResourceGuard("shell length overflow".into()))? as usize;
    if final_len > max_len {
        return Err(Error::ResourceGuard(format!(
            "shell array length {final_len} exceeds limit {max_len}"
        )));
    }

    let mut base = vec![BigUint::zero(); m_max as usize + 1];
    for &(m, w) in &ws {
        base[m as usize] += BigUint::from(w);
    }

    let mut result = vec![BigUint::one()];
    let mut sq = base;
    let mut e = n;
    loop {
        if e & 1 == 1 {
            result = convolve(&result, &sq);
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        sq = convolve(&sq, &sq);
    }
    debug_assert_eq!(result.len(), final_len);
    Ok(ShellCountVector { n, counts: result })
}

/// Guard for naive enumeration: D^n basis strings.
pub const DEFAULT_NAIVE_LIMIT: u64 = 10_000_000;

/// Test oracle: the same counts by direct enumeration of all weighted index
/// strings. Independent of the polynomial route.
pub fn naive_shell_counts(ls: &LatticeSpectrum, n: u64, weight: Weight) -> Result<ShellCountVector> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let ws = weights(ls, weight);
    if ws.is_empty() {
        return Err(Error::InvalidSpectrum("no weighted levels".into()));
    }
    // expand each level into w copies of its lattice value: one entry per basis state
    let states: Vec<u64> = ws
        .iter()
        .flat_map(|&(m, w)| std::iter::repeat(m).take(w as usize))
        .collect();
    let d = states.len() as u64;
    let strings = d.checked_pow(u32::try_from(n).unwrap_or(u32::MAX));
    match strings {
        Some(c) if c <= DEFAULT_NAIVE_LIMIT => {}
        _ => {
            return Err(Error::ResourceGuard(format!(
                "enumeration of {d}^{n} strings exceeds limit"
            )))
        }
    }
    let m_max = ws.iter().map(|&(m, _)| m).max().unwrap();
    let mut counts = vec![BigUint::zero(); (n * m_max + 1) as usize];
    let mut idx = vec![0usize; n as usize];
    loop {
        let t: u64 = idx.iter().map(|&i| states[i]).sum();
        counts[t as usize] += 1u32;
        // odometer
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(ShellCountVector { n, counts });
            }
            idx[pos] += 1;
            if idx[pos] < states.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{spectrum_from_rationals, to_lattice};
    use proptest::prelude::*;

    fn lat(levels: &[(&str, u32, u32)]) -> LatticeSpectrum {
        to_lattice(&spectrum_from_rationals(levels).unwrap()).unwrap()
    }

    fn counts_map(v: &ShellCountVector) -> Vec<(u64, u64)> {
        v.counts
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| (t as u64, c.try_into().unwrap()))
            .collect()
    }

    #[test]
    fn full_counts_0_2_3_n2() {
        let v = shell_counts(&lat(&[("0", 1, 0), ("2", 1, 1), ("3", 1, 1)]), 2, Weight::Full).unwrap();
        assert_eq!(
            counts_map(&v),
            vec![(0, 1), (2, 2), (3, 2), (4, 1), (5, 2), (6, 1)]
        );
    }

    #[test]
    fn occupied_counts_are_binomial() {
        let v = shell_counts(
            &lat(&[("0", 1, 0), ("2", 1, 1), ("3", 1, 1)]),
            3,
            Weight::Occupied,
        )
        .unwrap();
        assert_eq!(counts_map(&v), vec![(6, 1), (7, 3), (8, 3), (9, 1)]);
    }

    #[test]
    fn n1_is_the_level_table() {
        let ls = lat(&[("0", 2, 1), ("1", 3, 2), ("5/2", 1, 1)]);
        let v = shell_counts(&ls, 1, Weight::Full).unwrap();
        for (i, &m) in ls.m.iter().enumerate() {
            assert_eq!(v.get(m as i64), BigUint::from(ls.degeneracy[i]));
        }
    }

    #[test]
    fn degenerate_occupied_pair() {
        // two occupied states at m=1: all four 2-copy strings sit at t=2
        let v = naive_shell_counts(&lat(&[("0", 1, 0), ("1", 2, 2)]), 2, Weight::Occupied).unwrap();
        assert_eq!(counts_map(&v), vec![(2, 4)]);
        let p = shell_counts(&lat(&[("0", 1, 0), ("1", 2, 2)]), 2, Weight::Occupied).unwrap();
        assert_eq!(p, v);
    }

    #[test]
    fn resource_guard_trips() {
        let ls = lat(&[("0", 1, 0), ("1000000", 1, 1)]);
        assert!(matches!(
            shell_counts(&ls, 100, Weight::Full),
            Err(Error::ResourceGuard(_))
        ));
    }

    #[test]
    fn symmetric_lattice_counts_are_palindromic() {
        // m = (0,1,2) with equal degeneracies is symmetric about its midpoint
        let ls = lat(&[("0", 2, 1), ("1", 2, 1), ("2", 2, 1)]);
        for n in 1..=4u64 {
            let v = shell_counts(&ls, n, Weight::Full).unwrap();
            let len = v.counts.len();
            for t in 0..len {
                assert_eq!(v.counts[t], v.counts[len - 1 - t], "n={n} t={t}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn matches_naive_and_normalizes(
            ms in proptest::collection::btree_set(1u64..=6, 1..=2),
            degs in proptest::collection::vec(1u32..=3, 3),
            n in 1u64..=3,
        ) {
            let mut levels = vec![(0u64, degs[0], degs[0].saturating_sub(1))];
            for (i, m) in ms.iter().enumerate() {
                let d = degs[(i + 1) % degs.len()];
                levels.push((*m, d, d.min(i as u32 + 1)));
            }
            let strs: Vec<(String, u32, u32)> = levels
                .iter()
                .map(|&(m, d, o)| (m.to_string(), d, o))
                .collect();
            let view: Vec<(&str, u32, u32)> = strs.iter().map(|(s, d, o)| (s.as_str(), *d, *o)).collect();
            let ls = lat(&view);

            for weight in [Weight::Full, Weight::Occupied] {
                let fast = shell_counts(&ls, n, weight).unwrap();
                let slow = naive_shell_counts(&ls, n, weight).unwrap();
                prop_assert_eq!(&fast, &slow);
                let dim: u64 = match weight {
                    Weight::Full => ls.degeneracy.iter().map(|&d| d as u64).sum(),
                    Weight::Occupied => ls.occupied.iter().map(|&d| d as u64).sum(),
                };
                prop_assert_eq!(fast.total(), BigUint::from(dim).pow(n as u32));
            }

            // occupied counts never exceed full counts entrywise
            let full = shell_counts(&ls, n, Weight::Full).unwrap();
            let occ = shell_counts(&ls, n, Weight::Occupied).unwrap();
            for (t, c) in occ.counts.iter().enumerate() {
                prop_assert!(c <= &full.counts[t]);
            }
        }
    }
}
