use crate::error::{Error, Result};
use crate::graded::GradedMap;
use crate::lincomb::Vector;
use crate::scalar::Scalar;

use super::construct::{BarConstruction, CobarConstruction};
use super::Convention;

/// factor·β with β(sā) = −ā on words of length one and zero elsewhere.
pub fn scaled_bar_cochain(bar: &BarConstruction, factor: &Scalar) -> GradedMap {
    let target = bar.input.space().clone();
    let minus = factor.neg();
    GradedMap::from_fn(bar.words.space.clone(), target, -1, |i| match bar.words.word(i).as_slice() {
        [l] => bar.desuspend_letter(*l).scaled(&minus),
        _ => Vector::zero(),
    })
}

/// factor·ω with ω(c) = s^{-1}c̄ and ω(e) = 0.
pub fn scaled_cobar_cochain(cobar: &CobarConstruction, factor: &Scalar) -> GradedMap {
    let source = cobar.input.space().clone();
    GradedMap::from_fn(source, cobar.words.space.clone(), -1, |c| {
        match cobar.letter_for(c).and_then(|l| cobar.words.letter_word(l)) {
            Some(w) => Vector::term(w, factor.clone()),
            None => Vector::zero(),
        }
    })
}

/// β: BA → A. Only the minus convention makes β itself twisting; under plus it is −β.
pub fn universal_bar_cochain(bar: &BarConstruction) -> Result<GradedMap> {
    if bar.convention != Convention::BAR_DEFAULT {
        return Err(Error::ConventionMismatch(format!(
            "bar built with the {} convention; the universal cochain there is −β",
            bar.convention
        )));
    }
    Ok(scaled_bar_cochain(bar, &bar.input.field().one()))
}

/// ω: C → ΩC, twisting for the plus convention.
pub fn universal_cobar_cochain(cobar: &CobarConstruction) -> Result<GradedMap> {
    if cobar.convention != Convention::COBAR_DEFAULT {
        return Err(Error::ConventionMismatch(format!(
            "cobar built with the {} convention; the universal cochain there is −ω",
            cobar.convention
        )));
    }
    Ok(scaled_cobar_cochain(cobar, &cobar.input.field().one()))
}
