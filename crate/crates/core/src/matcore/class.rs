use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::tridiag::hermitian_eigenvalues;
use super::matrix::ComplexMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OperatorClass {
    General,
    SelfAdjoint,
    Positive,
    Normal,
    AccretiveDissipative,
    Unitary,
}

impl OperatorClass {
    pub const ALL: [OperatorClass; 6] = [
        OperatorClass::General,
        OperatorClass::SelfAdjoint,
        OperatorClass::Positive,
        OperatorClass::Normal,
        OperatorClass::AccretiveDissipative,
        OperatorClass::Unitary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OperatorClass::General => "GENERAL",
            OperatorClass::SelfAdjoint => "SELF_ADJOINT",
            OperatorClass::Positive => "POSITIVE",
            OperatorClass::Normal => "NORMAL",
            OperatorClass::AccretiveDissipative => "ACCRETIVE_DISSIPATIVE",
            OperatorClass::Unitary => "UNITARY",
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for OperatorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OperatorClass {
    type Err = Error;

    /// Accepts the canonical tag in any case, with `-` or `_` separators,
    /// plus the short alias `ad`.
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        let class = match norm.as_str() {
            "GENERAL" => OperatorClass::General,
            "SELF_ADJOINT" | "HERMITIAN" => OperatorClass::SelfAdjoint,
            "POSITIVE" => OperatorClass::Positive,
            "NORMAL" => OperatorClass::Normal,
            "ACCRETIVE_DISSIPATIVE" | "AD" => OperatorClass::AccretiveDissipative,
            "UNITARY" => OperatorClass::Unitary,
            _ => return Err(Error::InvalidArgument(format!("unknown operator class `{s}`"))),
        };
        Ok(class)
    }
}

/// Set of [`OperatorClass`] tags, stored as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClassSet(u8);

impl ClassSet {
    pub fn empty() -> Self {
        Self(0)
    }

    pub fn from_bits(bits: u8) -> Self {
        Self(bits & 0b11_1111)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn insert(&mut self, class: OperatorClass) {
        self.0 |= class.bit();
    }

    pub fn contains(self, class: OperatorClass) -> bool {
        self.0 & class.bit() != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = OperatorClass> {
        OperatorClass::ALL.into_iter().filter(move |c| self.contains(*c))
    }
}

impl FromIterator<OperatorClass> for ClassSet {
    fn from_iter<I: IntoIterator<Item = OperatorClass>>(iter: I) -> Self {
        let mut set = ClassSet::empty();
        for c in iter {
            set.insert(c);
        }
        set
    }
}

fn min_eigenvalue(h: &ComplexMatrix) -> Result<f64> {
    let values = hermitian_eigenvalues(h)?;
    Ok(values[values.len() - 1])
}

/// `1e-8 * max(1, ||A||_F)`.
pub fn default_class_tol(a: &ComplexMatrix) -> f64 {
    1e-8 * a.frobenius_norm().max(1.0)
}

/// All class tags whose defining predicate holds for `a` within `tol`.
///
/// Positivity-type predicates are relaxed to `lambda_min >= -tol`.
pub fn classify(a: &ComplexMatrix, tol: f64) -> Result<ClassSet> {
    a.require_square()?;
    let n = a.rows();
    let adj = a.adjoint();
    let mut set = ClassSet::empty();
    set.insert(OperatorClass::General);

    let self_adjoint = (a - &adj).frobenius_norm() <= tol;
    if self_adjoint {
        set.insert(OperatorClass::SelfAdjoint);
        if min_eigenvalue(a)? >= -tol {
            set.insert(OperatorClass::Positive);
        }
    }

    let gram = a.gram();
    let cogram = a.cogram();
    if (&cogram - &gram).frobenius_norm() <= tol {
        set.insert(OperatorClass::Normal);
    }

    let re_min = min_eigenvalue(&a.real_part()?)?;
    if re_min >= -tol {
        let im_min = min_eigenvalue(&a.imag_part()?)?;
        if im_min >= -tol {
            set.insert(OperatorClass::AccretiveDissipative);
        }
    }

    if (&gram - &ComplexMatrix::identity(n)).frobenius_norm() <= tol {
        set.insert(OperatorClass::Unitary);
    }
    Ok(set)
}
