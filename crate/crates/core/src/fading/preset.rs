//! Parameter rows for the classical laws reachable from each family.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::real::Real;

use super::{AlphaMuParams, FadingModel, KappaMuParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresetName {
    Exponential,
    Weibull,
    NakagamiM,
    Rayleigh,
    OneSidedGaussian,
    Rice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    AlphaMu,
    KappaMu,
}

impl PresetName {
    pub const ALL: [PresetName; 6] = [
        PresetName::Exponential,
        PresetName::Weibull,
        PresetName::NakagamiM,
        PresetName::Rayleigh,
        PresetName::OneSidedGaussian,
        PresetName::Rice,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PresetName::Exponential => "exponential",
            PresetName::Weibull => "weibull",
            PresetName::NakagamiM => "nakagami_m",
            PresetName::Rayleigh => "rayleigh",
            PresetName::OneSidedGaussian => "one_sided_gaussian",
            PresetName::Rice => "rice",
        }
    }
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::AlphaMu => "alpha_mu",
            Family::KappaMu => "kappa_mu",
        }
    }
}

impl fmt::Display for PresetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PresetName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PresetName::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown distribution name `{s}`")))
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha_mu" => Ok(Family::AlphaMu),
            "kappa_mu" => Ok(Family::KappaMu),
            _ => Err(Error::InvalidParams(format!("unknown family `{s}`"))),
        }
    }
}

/// A tabulated special case: the family parameters that reproduce a classical law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionPreset<T> {
    pub name: PresetName,
    pub family: Family,
    pub params: FamilyParams<T>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyParams<T> {
    AlphaMu(AlphaMuParams<T>),
    KappaMu(KappaMuParams<T>),
}

impl<T: Real> FamilyParams<T> {
    pub fn model(&self) -> FadingModel<T> {
        match *self {
            FamilyParams::AlphaMu(p) => FadingModel::AlphaMu(p),
            FamilyParams::KappaMu(p) => FadingModel::KappaMu(p),
        }
    }
}

/// (α, μ) rows.
const ALPHA_MU_ROWS: [(PresetName, f64, f64); 5] = [
    (PresetName::Exponential, 1.0, 1.0),
    (PresetName::Weibull, 3.0, 1.0),
    (PresetName::NakagamiM, 2.0, 2.0),
    (PresetName::Rayleigh, 2.0, 1.0),
    (PresetName::OneSidedGaussian, 2.0, 0.5),
];

/// (κ, μ) rows.
const KAPPA_MU_ROWS: [(PresetName, f64, f64); 4] = [
    (PresetName::Rice, 1.0, 1.0),
    (PresetName::NakagamiM, 0.0, 2.0),
    (PresetName::Rayleigh, 0.0, 1.0),
    (PresetName::OneSidedGaussian, 0.0, 0.5),
];

/// Looks up a tabulated row. The scale is unit: `Ω = 1` (so `x̄ = Ω² = 1`)
/// for α-μ and `x̄ = 1` for κ-μ.
pub fn preset<T: Real>(name: PresetName, family: Family) -> Result<DistributionPreset<T>> {
    let unknown = || Error::UnknownPreset {
        name: name.to_string(),
        family: family.to_string(),
    };
    let params = match family {
        Family::AlphaMu => {
            let &(_, a, m) = ALPHA_MU_ROWS.iter().find(|r| r.0 == name).ok_or_else(unknown)?;
            FamilyParams::AlphaMu(AlphaMuParams::new(T::lit(a), T::lit(m), T::one())?)
        }
        Family::KappaMu => {
            let &(_, k, m) = KAPPA_MU_ROWS.iter().find(|r| r.0 == name).ok_or_else(unknown)?;
            FamilyParams::KappaMu(KappaMuParams::new(T::lit(k), T::lit(m), T::one())?)
        }
    };
    Ok(DistributionPreset { name, family, params })
}

/// All nine tabulated rows, α-μ first.
pub fn all_presets<T: Real>() -> Vec<DistributionPreset<T>> {
    ALPHA_MU_ROWS
        .iter()
        .map(|r| (r.0, Family::AlphaMu))
        .chain(KAPPA_MU_ROWS.iter().map(|r| (r.0, Family::KappaMu)))
        .map(|(n, f)| preset(n, f).expect("table rows are valid"))
        .collect()
}
