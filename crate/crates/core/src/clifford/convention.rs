//! Sign and phase choices left open by the five-gamma construction.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::scalar::ExactComplex;
use super::CliffordError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.value() as f64
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    fn parse(c: char) -> Option<Self> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// Phase multiplying `γ⁵` to form the fifth generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Phase {
    PlusI,
    MinusI,
    PlusOne,
    MinusOne,
}

impl Phase {
    pub const ALL: [Phase; 4] = [Phase::PlusI, Phase::MinusI, Phase::PlusOne, Phase::MinusOne];

    pub fn value(self) -> ExactComplex {
        match self {
            Phase::PlusI => ExactComplex::i(),
            Phase::MinusI => -ExactComplex::i(),
            Phase::PlusOne => ExactComplex::one(),
            Phase::MinusOne => -ExactComplex::one(),
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Phase::PlusI => "+i",
            Phase::MinusI => "-i",
            Phase::PlusOne => "+1",
            Phase::MinusOne => "-1",
        }
    }
}

pub type Signature = [Sign; 5];

pub const MOSTLY_MINUS: Signature = [Sign::Plus, Sign::Minus, Sign::Minus, Sign::Minus, Sign::Minus];
pub const MOSTLY_PLUS: Signature = [Sign::Minus, Sign::Plus, Sign::Plus, Sign::Plus, Sign::Minus];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConventionSet {
    pub signature: Signature,
    pub gamma5_phase: Phase,
    pub vector_potential_sign: Sign,
    pub mass_phase_sign: Sign,
}

impl ConventionSet {
    pub fn new(signature: Signature, gamma5_phase: Phase, vector_potential_sign: Sign, mass_phase_sign: Sign) -> Self {
        Self { signature, gamma5_phase, vector_potential_sign, mass_phase_sign }
    }

    /// Signature `(+,−,−,−,−)`, `γ̇⁴ = iγ⁵`, `γ⁴ = γ̇⁴ − A_μγ̇^μ`, and the
    /// exponential factor `e^{−imx⁴}`.
    pub fn standard() -> Self {
        Self::new(MOSTLY_MINUS, Phase::PlusI, Sign::Minus, Sign::Minus)
    }

    /// Every combination over the given signatures, in canonical order.
    pub fn space(signatures: &[Signature]) -> Vec<ConventionSet> {
        let signs = [Sign::Plus, Sign::Minus];
        let mut out = Vec::with_capacity(signatures.len() * 16);
        for sig in signatures {
            for phase in Phase::ALL {
                for vp in signs {
                    for mass in signs {
                        out.push(Self::new(*sig, phase, vp, mass));
                    }
                }
            }
        }
        out
    }

    /// The 32-point space: both Lorentzian 4D signatures with the fifth
    /// entry fixed to `−1`.
    pub fn full_space() -> Vec<ConventionSet> {
        Self::space(&[MOSTLY_MINUS, MOSTLY_PLUS])
    }

    pub fn metric_diag(&self) -> [i64; 5] {
        self.signature.map(Sign::value)
    }

    pub fn id(&self) -> String {
        self.to_string()
    }
}

impl Default for ConventionSet {
    fn default() -> Self {
        Self::standard()
    }
}

/// Compact form `SSSSS:PP:V:M`, e.g. `+----:+i:-:-`.
impl fmt::Display for ConventionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig: String = self.signature.iter().map(|s| s.symbol()).collect();
        write!(
            f,
            "{}:{}:{}:{}",
            sig,
            self.gamma5_phase.symbol(),
            self.vector_potential_sign.symbol(),
            self.mass_phase_sign.symbol()
        )
    }
}

impl FromStr for ConventionSet {
    type Err = CliffordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CliffordError::BadConventionId(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let [sig, phase, vp, mass] = parts.as_slice() else {
            return Err(bad());
        };
        let signs: Vec<Sign> = sig.chars().map(Sign::parse).collect::<Option<_>>().ok_or_else(bad)?;
        let signature: Signature = signs.try_into().map_err(|_| bad())?;
        let gamma5_phase = Phase::ALL.into_iter().find(|p| p.symbol() == *phase).ok_or_else(bad)?;
        let single = |t: &str| {
            let mut cs = t.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) => Sign::parse(c),
                _ => None,
            }
        };
        Ok(Self::new(
            signature,
            gamma5_phase,
            single(vp).ok_or_else(bad)?,
            single(mass).ok_or_else(bad)?,
        ))
    }
}
