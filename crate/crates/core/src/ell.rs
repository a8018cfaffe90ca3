//! The map ℓ: π → H∧H, i.e. the degree-2 part of log θ₀ for the symplectic
//! expansion θ₀ with ℓ(x_j) = ½X_j∧Y_j and ℓ(y_j) = −½X_j∧Y_j.
//!
//! ℓ is determined by those generator values and the cocycle rule
//! `ℓ(gh) = ℓ(g) + ℓ(h) + ½|g|∧|h|`.

use crate::error::{check_genus, Result};
use crate::homology::{abelianize, ratio, HVec};
use crate::wedge::{act2, wedge, Wedge2};
use crate::word::{GenKind, Letter, Word};

/// Name of the only built-in expansion, surfaced in reports.
pub const EXPANSION_NAME: &str = "theta0";

fn ell_letter(genus: u32, l: &Letter) -> Wedge2 {
    let k = 2 * (l.index as usize - 1);
    let sign = match l.kind {
        GenKind::X => l.sign(),
        GenKind::Y => -l.sign(),
    };
    Wedge2::basis(genus, k, k + 1, ratio(sign, 2))
}

/// ℓ evaluated by a left-to-right fold over an arbitrary (possibly
/// unreduced) letter sequence.
pub fn ell_of_letters(genus: u32, letters: &[Letter]) -> Wedge2 {
    let mut acc = Wedge2::zero(genus);
    let mut prefix = HVec::zero(genus);
    let half = ratio(1, 2);
    for l in letters {
        let step = HVec::basis(genus, l.basis_index()).scale(&ratio(l.sign(), 1));
        let cross = wedge(&prefix, &step).expect("same genus").scale(&half);
        acc = acc
            .checked_add(&ell_letter(genus, l))
            .and_then(|a| a.checked_add(&cross))
            .expect("same genus");
        prefix = &prefix + &step;
    }
    acc
}

/// ℓ(w) ∈ H∧H.
pub fn ell(w: &Word) -> Wedge2 {
    ell_of_letters(w.genus(), w.letters())
}

/// `ℓ(a)(|b|) + ℓ(b)(|a|)`.
pub fn obstruction_vector(a: &Word, b: &Word) -> Result<HVec> {
    check_genus(a.genus(), b.genus())?;
    let (abs_a, abs_b) = (abelianize(a), abelianize(b));
    let left = act2(&ell(a), &abs_b)?;
    let right = act2(&ell(b), &abs_a)?;
    left.checked_add(&right)
}
