//! Subgroups of O(2), invariance tests and the high symmetry classes of the
//! constitutive tensors, read off from which harmonic components vanish.
//!
//! Dihedral classes are represented by the group generated by `R(2π/m)` and
//! the mirror `p(e₂)`; restriction keeps the part fixed by that representative.

use std::fmt;
use std::str::FromStr;

use crate::ela::{Ela4Harmonics, Ela5Harmonics, Ela6Harmonics, HarmonicBundle};
use crate::error::{Error, Result};
use crate::group::{rayleigh, GroupElement};
use crate::harmonic::HarmonicComponent;
use crate::scalar::{within, Real, Scalar};
use crate::tensor::Tensor;

/// Default relative tolerance below which a component counts as vanishing.
pub const VANISHING_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    Z2,
    D2,
    Z4,
    D4,
    Z6,
    D6,
    Z3,
    D3,
    D5,
    /// The group `{1, p(e₂)}`.
    Z2pi,
    /// Trivial group.
    Triv,
    SO2,
    O2,
}

impl SymmetryClass {
    pub const ALL: [SymmetryClass; 13] = [
        Self::Z2,
        Self::D2,
        Self::Z4,
        Self::D4,
        Self::Z6,
        Self::D6,
        Self::Z3,
        Self::D3,
        Self::D5,
        Self::Z2pi,
        Self::Triv,
        Self::SO2,
        Self::O2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Z2 => "Z2",
            Self::D2 => "D2",
            Self::Z4 => "Z4",
            Self::D4 => "D4",
            Self::Z6 => "Z6",
            Self::D6 => "D6",
            Self::Z3 => "Z3",
            Self::D3 => "D3",
            Self::D5 => "D5",
            Self::Z2pi => "Z2pi",
            Self::Triv => "triv",
            Self::SO2 => "SO2",
            Self::O2 => "O2",
        }
    }

    /// Order of the rotation subgroup, `None` when it is all of SO(2).
    pub fn rotation_order(&self) -> Option<i32> {
        match self {
            Self::Z2 | Self::D2 => Some(2),
            Self::Z4 | Self::D4 => Some(4),
            Self::Z6 | Self::D6 => Some(6),
            Self::Z3 | Self::D3 => Some(3),
            Self::D5 => Some(5),
            Self::Z2pi | Self::Triv => Some(1),
            Self::SO2 | Self::O2 => None,
        }
    }

    pub fn has_reflection(&self) -> bool {
        matches!(
            self,
            Self::D2 | Self::D4 | Self::D6 | Self::D3 | Self::D5 | Self::Z2pi | Self::O2
        )
    }

    /// Generators of the representative group. SO(2) is sampled at a few
    /// incommensurate angles.
    pub fn generators<T: Real>(&self) -> Vec<GroupElement<T>> {
        let mut g = match self.rotation_order() {
            Some(1) => vec![GroupElement::identity()],
            Some(m) => vec![GroupElement::rotation(
                T::from_f64(std::f64::consts::TAU / m as f64).unwrap(),
            )],
            None => [0.3, 1.1, 2.7]
                .iter()
                .map(|&a| GroupElement::rotation(T::from_f64(a).unwrap()))
                .collect(),
        };
        if self.has_reflection() {
            g.push(GroupElement::mirror_e2());
        }
        g
    }

    /// Whether rotations of the class act trivially on `K^k`.
    fn rotations_fix(&self, k: i32) -> bool {
        match (k, self.rotation_order()) {
            (0 | -1, _) => true,
            (_, Some(m)) => k % m == 0,
            (_, None) => false,
        }
    }

    /// Part of `c` fixed by the representative group.
    pub fn fixed_part<T: Scalar>(&self, c: &HarmonicComponent<T>) -> HarmonicComponent<T> {
        let k = c.k();
        if !self.rotations_fix(k) || (k == -1 && self.has_reflection()) {
            return HarmonicComponent::zero(k);
        }
        if self.has_reflection() {
            c.first_only()
        } else {
            *c
        }
    }
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SymmetryClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown symmetry class {s}")))
    }
}

/// `‖g ⋆ T − T‖ ≤ tol ‖T‖`.
pub fn is_invariant<T: Real>(t: &Tensor<T>, g: &GroupElement<T>, tol: f64) -> bool {
    let moved = rayleigh(g, t);
    within((&moved - t).norm_sq(), t.norm_sq(), tol)
}

/// Harmonic bundles whose high symmetry classes can be read off.
pub trait ClassifiedBundle<T: Scalar>: HarmonicBundle<T> {
    const SPACE: &'static str;

    /// Every symmetry class of the space.
    fn classes() -> &'static [SymmetryClass];

    /// Classes determined by vanishing components, most symmetric first.
    fn resolved() -> &'static [SymmetryClass];

    /// Explanation attached when only low classes remain.
    fn unresolved_note() -> &'static str;
}

impl<T: Scalar> ClassifiedBundle<T> for Ela4Harmonics<T> {
    const SPACE: &'static str = "ela4";

    fn classes() -> &'static [SymmetryClass] {
        use SymmetryClass::*;
        &[Z2, D2, D4, O2]
    }

    fn resolved() -> &'static [SymmetryClass] {
        use SymmetryClass::*;
        &[O2, D4, D2, Z2]
    }

    fn unresolved_note() -> &'static str {
        "Z2 and D2 share the full decomposition; D2 is only reported when the given frame is already a mirror frame"
    }
}

impl<T: Scalar> ClassifiedBundle<T> for Ela6Harmonics<T> {
    const SPACE: &'static str = "ela6";

    fn classes() -> &'static [SymmetryClass] {
        use SymmetryClass::*;
        &[Z2, D2, Z4, D4, Z6, D6, SO2, O2]
    }

    fn resolved() -> &'static [SymmetryClass] {
        use SymmetryClass::*;
        &[O2, SO2, D6, Z6]
    }

    fn unresolved_note() -> &'static str {
        "unresolved: Z2, D2, Z4 and D4 are not separated by vanishing components alone"
    }
}

impl<T: Scalar> ClassifiedBundle<T> for Ela5Harmonics<T> {
    const SPACE: &'static str = "ela5";

    fn classes() -> &'static [SymmetryClass] {
        use SymmetryClass::*;
        &[Triv, Z2pi, Z3, D3, D5, O2]
    }

    fn resolved() -> &'static [SymmetryClass] {
        use SymmetryClass::*;
        &[O2, D5]
    }

    fn unresolved_note() -> &'static str {
        "unresolved: triv, Z2pi, Z3 and D3 are not separated by vanishing components alone"
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    /// Resolved classes the components are consistent with, most symmetric first.
    pub classes: Vec<SymmetryClass>,
    /// First entry of `classes`.
    pub maximal: Option<SymmetryClass>,
    pub notes: Vec<String>,
}

/// Resolved symmetry classes consistent with which components vanish.
///
/// A class is reported when every component its rotations cannot fix vanishes
/// and, for classes containing a reflection, either the pseudo-scalars vanish
/// with at most one oriented component left (any frame works) or every
/// component is already fixed by `p(e₂)` in the given frame.
pub fn classify_high<T: Scalar, B: ClassifiedBundle<T>>(h: &B, tol: f64) -> Classification {
    let entries = h.entries();
    let total = h.coords_norm_sq();
    let alive: Vec<&HarmonicComponent<T>> = entries
        .iter()
        .map(|(_, c)| c)
        .filter(|c| !within(c.coords_norm_sq(), total, tol))
        .collect();
    let consistent = |c: SymmetryClass| {
        if alive.iter().any(|h| !c.rotations_fix(h.k())) {
            return false;
        }
        if c.has_reflection() {
            let oriented = alive.iter().filter(|h| h.k() >= 1).count();
            if oriented <= 1 && alive.iter().all(|h| h.k() != -1) {
                return true;
            }
            let off = entries.iter().fold(T::zero(), |acc, (_, x)| {
                let fixed = c.fixed_part(x);
                let d = x.add(&fixed.scale(-T::one()));
                acc + d.coords_norm_sq()
            });
            return within(off, total, tol);
        }
        true
    };
    let classes: Vec<SymmetryClass> = B::resolved()
        .iter()
        .copied()
        .filter(|&c| consistent(c))
        .collect();
    let maximal = classes.first().copied();
    let low = match maximal {
        None => true,
        Some(c) => c == SymmetryClass::Z2,
    };
    let notes = if low {
        vec![B::unresolved_note().to_string()]
    } else {
        Vec::new()
    };
    Classification {
        classes,
        maximal,
        notes,
    }
}

/// Keeps the part of every component fixed by the class representative.
pub fn restrict_to_class<T: Scalar, B: ClassifiedBundle<T>>(h: &B, c: SymmetryClass) -> Result<B> {
    if !B::resolved().contains(&c) {
        if B::classes().contains(&c) {
            return Err(Error::UnresolvedClass {
                class: c.name().into(),
                space: B::SPACE.into(),
            });
        }
        return Err(Error::InvalidArgument(format!(
            "{c} is not a symmetry class of {}",
            B::SPACE
        )));
    }
    Ok(h.map_components(|x| c.fixed_part(x)))
}
