//! Energy spectra: validation, ground normalization, integer-lattice scaling
//! and the domination ordering on occupied supports.
//!
//! A support is represented solely by its occupied-dimension vector
//! (dim[A_0], ..., dim[A_{M-1}]): the deterministic-work value depends on
//! nothing else, so the representation quotients away unitary-equivalent
//! supports from the start.

use num_traits::{Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::rational::{parse_rational, rational_gcd, EnergyRational};

/// One distinct energy level: exact energy, multiplicity of the eigenspace,
/// and how many of its basis states the input support occupies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSpec {
    pub energy: EnergyRational,
    pub degeneracy: u32,
    pub occupied: u32,
}

/// A validated spectrum: strictly increasing energies, non-empty occupied
/// set, occupied <= degeneracy per level. `shift` records the ground-energy
/// offset removed by normalization (work values depend on gaps only).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumSpec {
    levels: Vec<LevelSpec>,
    shift: EnergyRational,
    pub label: Option<String>,
}

impl SpectrumSpec {
    pub fn new(levels: Vec<LevelSpec>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidSpectrum("no levels".into()));
        }
        for w in levels.windows(2) {
            if w[0].energy >= w[1].energy {
                return Err(Error::InvalidSpectrum(
                    "energies must be strictly increasing".into(),
                ));
            }
        }
        let mut any_occupied = false;
        for (i, l) in levels.iter().enumerate() {
            if l.degeneracy == 0 {
                return Err(Error::InvalidSpectrum(format!(
                    "level {i} has zero degeneracy"
                )));
            }
            if l.occupied > l.degeneracy {
                return Err(Error::InvalidSpectrum(format!(
                    "level {i}: occupied {} exceeds degeneracy {}",
                    l.occupied, l.degeneracy
                )));
            }
            any_occupied |= l.occupied > 0;
        }
        if !any_occupied {
            return Err(Error::InvalidSpectrum("occupied set is empty".into()));
        }
        Ok(SpectrumSpec {
            levels,
            shift: EnergyRational::zero(),
            label: None,
        })
    }

    pub fn levels(&self) -> &[LevelSpec] {
        &self.levels
    }

    /// Ground offset removed by `normalize_ground` (zero if never shifted).
    pub fn ground_shift(&self) -> &EnergyRational {
        &self.shift
    }

    pub fn occupied_set(&self) -> Vec<usize> {
        self.levels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.occupied > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn total_dim(&self) -> u64 {
        self.levels.iter().map(|l| l.degeneracy as u64).sum()
    }

    pub fn occupied_dim(&self) -> u64 {
        self.levels.iter().map(|l| l.occupied as u64).sum()
    }

    /// True when every basis state is occupied (passive-support case).
    pub fn is_full_support(&self) -> bool {
        self.levels.iter().all(|l| l.occupied == l.degeneracy)
    }

    /// True when the Hamiltonian restricted to the support has no repeated
    /// basis state per level (every occupied block is rank 0 or 1).
    pub fn nondegenerate_on_support(&self) -> bool {
        self.levels.iter().all(|l| l.occupied <= 1)
    }

    pub fn ground_occupied(&self) -> bool {
        self.levels[0].occupied > 0
    }
}

/// Shift all energies so the ground level sits at exactly zero; idempotent.
pub fn normalize_ground(s: &SpectrumSpec) -> SpectrumSpec {
    let offset = s.levels[0].energy.clone();
    if offset.is_zero() {
        return s.clone();
    }
    let levels = s
        .levels
        .iter()
        .map(|l| LevelSpec {
            energy: &l.energy - &offset,
            degeneracy: l.degeneracy,
            occupied: l.occupied,
        })
        .collect();
    SpectrumSpec {
        levels,
        shift: &s.shift + &offset,
        label: s.label.clone(),
    }
}

/// Parse the spectrum file format: a JSON object with a `levels` array of
/// `{"energy": <decimal or "p/q">, "degeneracy": int, "occupied": int}` and
/// an optional `label`. Energies are parsed exactly; the ground is
/// normalized to zero eagerly (the shift is retained for reporting).
pub fn parse_spectrum(text: &str) -> Result<SpectrumSpec> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad spectrum json: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| Error::Parse("spectrum file must be a json object".into()))?;
    let levels_v = obj
        .get("levels")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::Parse("missing `levels` array".into()))?;

    let mut levels = Vec::with_capacity(levels_v.len());
    for (i, lv) in levels_v.iter().enumerate() {
        let lo = lv
            .as_object()
            .ok_or_else(|| Error::Parse(format!("level {i} is not an object")))?;
        let energy = match lo.get("energy") {
            Some(Value::String(s)) => parse_rational(s)?,
            // arbitrary_precision keeps the literal digits, so this stays exact
            Some(Value::Number(n)) => parse_rational(&n.to_string())?,
            _ => return Err(Error::Parse(format!("level {i}: missing energy"))),
        };
        let degeneracy = get_u32(lo, "degeneracy", i)?;
        let occupied = get_u32(lo, "occupied", i)?;
        levels.push(LevelSpec {
            energy,
            degeneracy,
            occupied,
        });
    }
    let mut spec = SpectrumSpec::new(levels)?;
    spec.label = obj
        .get("label")
        .and_then(|v| v.as_str())
        .map(|s| s.to_string());
    Ok(normalize_ground(&spec))
}

fn get_u32(obj: &serde_json::Map<String, Value>, key: &str, level: usize) -> Result<u32> {
    obj.get(key)
        .and_then(|v| v.as_u64())
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| Error::Parse(format!("level {level}: missing or invalid {key}")))
}

/// Spectrum scaled onto an integer lattice: `energy_i = unit * m[i]` exactly,
/// with unit the rational gcd of the energies (maximal, so the m are minimal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSpectrum {
    pub unit: EnergyRational,
    pub m: Vec<u64>,
    pub degeneracy: Vec<u32>,
    pub occupied: Vec<u32>,
}

impl LatticeSpectrum {
    pub fn occupied_set(&self) -> Vec<usize> {
        self.occupied
            .iter()
            .enumerate()
            .filter(|(_, &o)| o > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn m_max(&self) -> u64 {
        *self.m.last().unwrap_or(&0)
    }

    pub fn min_occupied_m(&self) -> u64 {
        self.m
            .iter()
            .zip(&self.occupied)
            .filter(|(_, &o)| o > 0)
            .map(|(&m, _)| m)
            .min()
            .unwrap_or(0)
    }

    pub fn level_energy(&self, i: usize) -> EnergyRational {
        &self.unit * EnergyRational::from_integer(self.m[i].into())
    }

    pub fn ground_occupied(&self) -> bool {
        self.m.first() == Some(&0) && self.occupied.first().copied().unwrap_or(0) > 0
    }
}

/// Scale a (normalized) spectrum onto the integer lattice with the largest
/// possible unit. A single-level spectrum at zero gets unit 1 by convention.
pub fn to_lattice(s: &SpectrumSpec) -> Result<LatticeSpectrum> {
    let s = normalize_ground(s);
    let mut unit = EnergyRational::zero();
    for l in s.levels() {
        if l.energy.is_negative() {
            return Err(Error::Internal("negative energy after normalize".into()));
        }
        unit = rational_gcd(&unit, &l.energy);
    }
    if unit.is_zero() {
        unit = EnergyRational::from_integer(1.into());
    }
    let mut m = Vec::with_capacity(s.levels().len());
    for l in s.levels() {
        let q = &l.energy / &unit;
        if !q.is_integer() {
            return Err(Error::Internal("lattice scaling not integral".into()));
        }
        let v: u64 = q
            .to_integer()
            .try_into()
            .map_err(|_| Error::ResourceGuard("lattice index exceeds u64".into()))?;
        m.push(v);
    }
    Ok(LatticeSpectrum {
        unit,
        m,
        degeneracy: s.levels().iter().map(|l| l.degeneracy).collect(),
        occupied: s.levels().iter().map(|l| l.occupied).collect(),
    })
}

/// Smallest occupied energy eps_min(A).
pub fn eps_min(s: &SpectrumSpec) -> EnergyRational {
    s.levels()
        .iter()
        .filter(|l| l.occupied > 0)
        .map(|l| l.energy.clone())
        .min()
        .expect("occupied set is non-empty by construction")
}

/// Domination ordering on supports over a common level structure:
/// a >= b (a "not dominated by" b) iff occupied_a[i] <= occupied_b[i] for
/// every level.
pub fn dominates(a: &SpectrumSpec, b: &SpectrumSpec) -> Result<bool> {
    if a.levels().len() != b.levels().len() {
        return Err(Error::MismatchedLevels("different level counts".into()));
    }
    for (la, lb) in a.levels().iter().zip(b.levels()) {
        if la.energy != lb.energy || la.degeneracy != lb.degeneracy {
            return Err(Error::MismatchedLevels(
                "energies/degeneracies differ".into(),
            ));
        }
    }
    Ok(a.levels()
        .iter()
        .zip(b.levels())
        .all(|(la, lb)| la.occupied <= lb.occupied))
}

/// Convenience constructor used across tests and the figure sweeps.
pub fn spectrum_from_rationals(levels: &[(&str, u32, u32)]) -> Result<SpectrumSpec> {
    let parsed = levels
        .iter()
        .map(|(e, d, o)| {
            Ok(LevelSpec {
                energy: parse_rational(e)?,
                degeneracy: *d,
                occupied: *o,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(normalize_ground(&SpectrumSpec::new(parsed)?))
}
