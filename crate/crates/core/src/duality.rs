//! Annihilators between module codes and behaviors, and the module/module
//! and behavior/behavior dualities they induce.

use serde::Serialize;
use thiserror::Error;

use crate::behavior::{Axis, Behavior, Window};
use crate::code::{ConvCode, Framework};
use crate::field::Field;
use crate::polymat::{right_kernel, shift_rows_to_poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairingForm {
    /// `Σ_i <w_i, v_i>`
    Standard,
    /// `Σ_i <w_i, v_{-i}>` with `v` of finite support.
    TimeReversed,
    /// `Σ_i <w_i, v_{-i}>` on Laurent series.
    LaurentTimeReversed,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("behavior duality is defined on the full time axis only")]
    HalfAxis,
}

/// Exact value of a pairing. Symbols outside either window count as zero,
/// so `v` must cover its whole support.
pub fn pairing(field: &Field, w: &Window, v: &Window, form: PairingForm) -> u32 {
    let mut acc = 0;
    for (idx, vs) in v.symbols.iter().enumerate() {
        let t = v.start + idx as i64;
        let wt = match form {
            PairingForm::Standard => t,
            PairingForm::TimeReversed | PairingForm::LaurentTimeReversed => -t,
        };
        if let Some(ws) = w.at(wt) {
            for (a, b) in ws.iter().zip(vs) {
                acc = field.add(acc, field.mul(*a, *b));
            }
        }
    }
    acc
}

/// `C^⊥ = ker G^t(σ)`: the behavior annihilated by a code under the standard
/// pairing. Polynomial-module codes live on the half axis.
pub fn annihilator_of_code(code: &ConvCode) -> Behavior {
    let axis = if code.framework() == Framework::ModulePolyDprime { Axis::ZPlus } else { Axis::Z };
    let g = if code.framework().is_module() { code.generator().clone() } else { code.minimal_basic_encoder() };
    Behavior::from_poly(&g.transpose(), axis)
}

/// `B^⊥`: the module code generated by `P^t`.
pub fn annihilator_of_behavior(b: &Behavior) -> ConvCode {
    let fw = match b.axis() {
        Axis::Z => Framework::ModuleLaurentD,
        Axis::ZPlus => Framework::ModulePolyDprime,
    };
    ConvCode::from_poly(&b.kernel().transpose(), fw).expect("kernel transpose is a valid generator")
}

/// Module dual under the time-reversed form: `{v : G^t v = 0}`.
pub fn module_dual(code: &ConvCode) -> ConvCode {
    let g = if code.framework().is_module() { code.generator().clone() } else { code.minimal_basic_encoder() };
    let fw = code.framework();
    ConvCode::from_poly(&right_kernel(&g.transpose()), fw).expect("kernel basis is a valid generator")
}

/// Finite-support trajectories of `B` as a Laurent module code.
pub fn finite_support_part(b: &Behavior) -> Result<ConvCode, DualityError> {
    if b.axis() != Axis::Z {
        return Err(DualityError::HalfAxis);
    }
    let reversed = shift_rows_to_poly(&b.kernel().to_laurent().time_reversed());
    let n = right_kernel(&reversed);
    Ok(ConvCode::from_poly(&n, Framework::ModuleLaurentD).expect("kernel basis is a valid generator"))
}

/// `B^⊦ = (B ∩ F^n[z,z^-1])^⊥`, always controllable.
pub fn behavior_dual(b: &Behavior) -> Result<Behavior, DualityError> {
    let fin = finite_support_part(b)?;
    Ok(annihilator_of_code(&fin))
}
