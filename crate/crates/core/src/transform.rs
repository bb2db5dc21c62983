//! The comma transform of an arbitrary sequence: the comma-numbers read off
//! the gaps between consecutive terms. Comma sequences are exactly the
//! sequences whose first differences equal their own transform.

use num_bigint::BigUint;

use crate::error::{CommaError, Result};
use crate::numeral::{leading_digit, Natural, Radix};

/// Nonnegative terms in a common base. Zero is allowed as input to the
/// transform but has no leading digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermSequence {
    terms: Vec<BigUint>,
    radix: Radix,
}

impl TermSequence {
    pub fn new(terms: Vec<BigUint>, radix: Radix) -> Result<Self> {
        if terms.len() < 2 {
            return Err(CommaError::TooShort(terms.len()));
        }
        Ok(TermSequence { terms, radix })
    }

    pub fn from_u64s(terms: &[u64], radix: Radix) -> Result<Self> {
        Self::new(terms.iter().map(|&t| BigUint::from(t)).collect(), radix)
    }

    pub fn terms(&self) -> &[BigUint] {
        &self.terms
    }

    pub fn radix(&self) -> Radix {
        self.radix
    }
}

/// `trailing(terms[i])·b + leading(terms[i+1])` for each adjacent pair.
pub fn comma_transform(s: &TermSequence) -> Result<Vec<u64>> {
    let b = s.radix.get();
    s.terms
        .windows(2)
        .enumerate()
        .map(|(i, pair)| {
            if pair[1].is_zero() {
                return Err(CommaError::ZeroLeading { index: i + 1 });
            }
            Ok(pair[0].rem_u64(b) * b + leading_digit(&pair[1], s.radix))
        })
        .collect()
}

/// Whether every first difference equals the corresponding transform entry.
pub fn is_comma_sequence(s: &TermSequence) -> bool {
    if s.terms.iter().any(Natural::is_zero) {
        return false;
    }
    let Ok(transform) = comma_transform(s) else {
        return false;
    };
    s.terms
        .windows(2)
        .zip(transform)
        .all(|(pair, cn)| pair[1] > pair[0] && &pair[1] - &pair[0] == BigUint::from(cn))
}
