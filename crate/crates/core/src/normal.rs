//! PBW normal ordering by adjacent-transposition rewriting.
//!
//! An out-of-order pair `x·y` (with `x` after `y` in the PBW order) rewrites
//! to `y·x + [x,y]`, where the bracket comes from the algebra's commutator
//! table and is itself normal-ordered recursively. The default strategy picks
//! the leftmost descent; a rightmost strategy exists for confluence
//! spot-checks. Termination is enforced by a fuel budget: exceeding it is an
//! error, never a silent truncation.

use std::cell::Cell;
use std::sync::Arc;

use crate::algebra::AlgebraDef;
use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::series::{Coeffs, NCPoly};
use crate::word::Word;

/// Rewrite-step budget for one public operation.
pub struct Fuel {
    left: Cell<u64>,
    limit: u64,
}

impl Fuel {
    pub fn new(limit: u64) -> Self {
        Fuel { left: Cell::new(limit), limit }
    }

    pub fn burn(&self) -> Result<()> {
        let n = self.left.get();
        if n == 0 {
            return Err(Error::FuelExhausted(self.limit));
        }
        self.left.set(n - 1);
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Normal-order a single word at truncation `order`, with memoization on the
/// algebra. Orders in the returned coefficients are absolute (the input word
/// sits at h^0).
pub fn normalize_word(def: &Arc<AlgebraDef>, w: &Word, order: u32, fuel: &Fuel) -> Result<Arc<Coeffs<1>>> {
    if w.is_normal() {
        let mut out = zero_coeffs(order);
        out[0].insert([w.clone()], Rat::from_integer(1.into()));
        return Ok(Arc::new(out));
    }
    if let Some(hit) = def.caches.word(w, order) {
        return Ok(hit);
    }
    let out = reduce(def, w, order, fuel, Strategy::Leftmost)?;
    let out = Arc::new(out);
    def.caches.store_word(w.clone(), order, out.clone());
    Ok(out)
}

/// Strategy-selectable variant used by the confluence spot-checks. The
/// rightmost strategy bypasses the cache so the two reduction orders stay
/// independent.
pub fn normalize_word_with_strategy(
    def: &Arc<AlgebraDef>,
    w: &Word,
    order: u32,
    fuel: &Fuel,
    strategy: Strategy,
) -> Result<Coeffs<1>> {
    if strategy == Strategy::Leftmost {
        return normalize_word(def, w, order, fuel).map(|a| (*a).clone());
    }
    if w.is_normal() {
        let mut out = zero_coeffs(order);
        out[0].insert([w.clone()], Rat::from_integer(1.into()));
        return Ok(out);
    }
    reduce(def, w, order, fuel, strategy)
}

fn reduce(def: &Arc<AlgebraDef>, w: &Word, order: u32, fuel: &Fuel, strategy: Strategy) -> Result<Coeffs<1>> {
    let i = match strategy {
        Strategy::Leftmost => w.first_descent().expect("word has a descent"),
        Strategy::Rightmost => w.last_descent().expect("word has a descent"),
    };
    fuel.burn()?;
    let x = w.letters()[i];
    let y = w.letters()[i + 1];

    let mut swapped = w.clone();
    swapped.0.swap(i, i + 1);
    let mut acc = match strategy {
        Strategy::Leftmost => (*normalize_word(def, &swapped, order, fuel)?).clone(),
        Strategy::Rightmost => normalize_word_with_strategy(def, &swapped, order, fuel, strategy)?,
    };

    // Correction: prefix ++ [x,y]-words ++ suffix, shifted by the bracket's
    // h-order.
    let bracket = def.commutator_coeffs(x, y, order, fuel)?;
    let prefix = &w.letters()[..i];
    let suffix = &w.letters()[i + 2..];
    for (j, poly) in bracket.iter().enumerate() {
        if poly.is_zero() {
            continue;
        }
        for (v, c) in poly.word_iter() {
            let mut glued = Vec::with_capacity(prefix.len() + v.len() + suffix.len());
            glued.extend_from_slice(prefix);
            glued.extend_from_slice(v.letters());
            glued.extend_from_slice(suffix);
            let glued = Word(glued);
            let sub = match strategy {
                Strategy::Leftmost => normalize_word(def, &glued, order, fuel)?,
                Strategy::Rightmost => Arc::new(normalize_word_with_strategy(def, &glued, order, fuel, strategy)?),
            };
            for (l, p) in sub.iter().enumerate() {
                if j + l > order as usize {
                    break;
                }
                acc[j + l].add_scaled(p, c);
            }
        }
    }
    Ok(acc)
}

pub fn zero_coeffs(order: u32) -> Coeffs<1> {
    vec![NCPoly::new(); order as usize + 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gens::sl2, sl2h};
    use crate::rat::{rat_i, ratio};
    use crate::series::{pbw_normal_order, HSeries, NCPoly};
    use crate::word::Word;

    fn word(ids: &[u8]) -> Word {
        Word::from_ids(ids)
    }

    #[test]
    fn swap_with_bracket_correction() {
        // Jm Jp -> Jp Jm - J3 at K = 0.
        let def = sl2h();
        let p = NCPoly::from_word(word(&[sl2::JM, sl2::JP]), rat_i(1));
        let got = pbw_normal_order(&def, &p, 0).unwrap();
        let mut expect = HSeries::zero(&def, 0);
        expect.coeffs[0].insert([word(&[sl2::JP, sl2::JM])], rat_i(1));
        expect.coeffs[0].insert([word(&[sl2::J3])], rat_i(-1));
        assert_eq!(got, expect);
    }

    #[test]
    fn ordered_word_unchanged() {
        let def = sl2h();
        let p = NCPoly::from_word(word(&[sl2::JP, sl2::J3]), rat_i(1));
        let got = pbw_normal_order(&def, &p, 5).unwrap();
        let mut expect = HSeries::zero(&def, 5);
        expect.coeffs[0].insert([word(&[sl2::JP, sl2::J3])], rat_i(1));
        assert_eq!(got, expect);
    }

    #[test]
    fn deformed_correction_series() {
        // J3 Jp -> Jp J3 + 2 Jp + (1/3) h^2 (Jp)^3 at K = 3.
        let def = sl2h();
        let p = NCPoly::from_word(word(&[sl2::J3, sl2::JP]), rat_i(1));
        let got = pbw_normal_order(&def, &p, 3).unwrap();
        let mut expect = HSeries::zero(&def, 3);
        expect.coeffs[0].insert([word(&[sl2::JP, sl2::J3])], rat_i(1));
        expect.coeffs[0].insert([word(&[sl2::JP])], rat_i(2));
        expect.coeffs[2].insert([word(&[sl2::JP, sl2::JP, sl2::JP])], ratio(1, 3));
        assert_eq!(got, expect);
    }

    #[test]
    fn truncation_consistency() {
        // Normal ordering at K then truncating to K' equals ordering at K'.
        let def = sl2h();
        for ids in [&[sl2::JM, sl2::J3, sl2::JP][..], &[sl2::JM, sl2::JM, sl2::JP][..]] {
            let p = NCPoly::from_word(word(ids), rat_i(1));
            let hi = pbw_normal_order(&def, &p, 6).unwrap();
            for k in 0..6 {
                let lo = pbw_normal_order(&def, &p, k).unwrap();
                assert_eq!(hi.truncated(k), lo);
            }
        }
    }

    #[test]
    fn confluence_on_short_words() {
        // Leftmost and rightmost reduction strategies agree on all length-3
        // words, for every registry algebra.
        for def in crate::algebra::registry() {
            let n = def.n_gens() as u8;
            let fuel = Fuel::new(def.fuel_limit);
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let w = word(&[a, b, c]);
                        let left = normalize_word_with_strategy(&def, &w, 4, &fuel, Strategy::Leftmost).unwrap();
                        let right = normalize_word_with_strategy(&def, &w, 4, &fuel, Strategy::Rightmost).unwrap();
                        assert_eq!(left, right, "confluence failure in {} on {:?}", def.name, w);
                    }
                }
            }
        }
    }

    #[test]
    fn fuel_exhaustion_is_an_error() {
        let def = sl2h();
        let fuel = Fuel::new(2);
        let w = word(&[sl2::JM, sl2::JM, sl2::J3, sl2::JP]);
        match normalize_word(&def, &w, 4, &fuel) {
            Err(crate::error::Error::FuelExhausted(2)) => {}
            other => panic!("expected fuel exhaustion, got {other:?}"),
        }
    }
}
