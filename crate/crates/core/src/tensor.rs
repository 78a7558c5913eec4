//! Tensor-square and tensor-cube operations: the flip map, leg embeddings,
//! coproduct extension maps, and the coalgebra maps lifted to whole series.
//!
//! Slots are independent factors of the plain tensor algebra: letters never
//! commute across slots, and the componentwise product is handled by
//! [`TensorSeries::mul`](crate::series::TensorSeries::mul).

use std::sync::Arc;

use crate::algebra::AlgebraDef;
use crate::error::Result;
use crate::expr::outer2;
use crate::normal::Fuel;
use crate::rat::Rat;
use crate::series::{Coeffs, HSeries, TensorSeries2, TensorSeries3};
use crate::word::Word;

/// Legs of a tensor cube receiving a tensor-square element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Legs {
    L12,
    L13,
    L23,
}

/// Which slot of a tensor square the coproduct is applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `sigma(a ⊗ b) = b ⊗ a`, an involution.
pub fn flip(t: &TensorSeries2) -> TensorSeries2 {
    let mut out = TensorSeries2::zero(t.algebra(), t.order());
    for (k, p) in t.coeffs().iter().enumerate() {
        for (ws, c) in p.iter() {
            out.coeffs[k].insert([ws[1].clone(), ws[0].clone()], c.clone());
        }
    }
    out
}

/// Insert the identity in the omitted leg: `a ⊗ b` goes to the cube with its
/// slots at the chosen legs.
pub fn embed(t: &TensorSeries2, legs: Legs) -> TensorSeries3 {
    let mut out = TensorSeries3::zero(t.algebra(), t.order());
    for (k, p) in t.coeffs().iter().enumerate() {
        for (ws, c) in p.iter() {
            let (a, b) = (ws[0].clone(), ws[1].clone());
            let words = match legs {
                Legs::L12 => [a, b, Word::empty()],
                Legs::L13 => [a, Word::empty(), b],
                Legs::L23 => [Word::empty(), a, b],
            };
            out.coeffs[k].insert(words, c.clone());
        }
    }
    out
}

/// Coproduct of a word: the product of its letters' coproducts. Cached per
/// algebra and truncation order.
pub fn delta_word(def: &Arc<AlgebraDef>, w: &Word, order: u32, fuel: &Fuel) -> Result<Arc<Coeffs<2>>> {
    if let Some(hit) = def.caches.deltas.lock().unwrap().get(&(w.clone(), order)).cloned() {
        return Ok(hit);
    }
    let coeffs: Coeffs<2> = if w.is_empty() {
        let one = TensorSeries2::one(def, order);
        one.coeffs
    } else {
        let (rest, last) = (Word(w.letters()[..w.len() - 1].to_vec()), w.letters()[w.len() - 1]);
        let head = delta_word(def, &rest, order, fuel)?;
        let tail = def.coproduct_coeffs(last, order, fuel)?;
        let a = TensorSeries2::from_coeffs(def, order, (*head).clone());
        let b = TensorSeries2::from_coeffs(def, order, (*tail).clone());
        a.mul(&b)?.coeffs
    };
    let arc = Arc::new(coeffs);
    def.caches.deltas.lock().unwrap().insert((w.clone(), order), arc.clone());
    Ok(arc)
}

/// Coproduct of a series: `Delta` extended as an algebra homomorphism.
pub fn delta_series(s: &HSeries) -> Result<TensorSeries2> {
    let def = s.algebra();
    let fuel = Fuel::new(def.fuel_limit);
    let order = s.order();
    let mut out = TensorSeries2::zero(def, order);
    for (k, p) in s.coeffs().iter().enumerate() {
        for (w, c) in p.word_iter() {
            let dw = delta_word(def, w, order, &fuel)?;
            for (j, poly) in dw.iter().enumerate() {
                if k + j > order as usize {
                    break;
                }
                out.coeffs[k + j].add_scaled(poly, c);
            }
        }
    }
    Ok(out)
}

/// Flipped coproduct `Delta' = sigma ∘ Delta`.
pub fn delta_prime_series(s: &HSeries) -> Result<TensorSeries2> {
    Ok(flip(&delta_series(s)?))
}

/// Antipode of a word: anti-homomorphism, images multiplied in reverse.
pub fn gamma_word(def: &Arc<AlgebraDef>, w: &Word, order: u32, fuel: &Fuel) -> Result<Arc<Coeffs<1>>> {
    if let Some(hit) = def.caches.gammas.lock().unwrap().get(&(w.clone(), order)).cloned() {
        return Ok(hit);
    }
    let coeffs: Coeffs<1> = if w.is_empty() {
        HSeries::one(def, order).coeffs
    } else {
        let (rest, last) = (Word(w.letters()[..w.len() - 1].to_vec()), w.letters()[w.len() - 1]);
        let head = gamma_word(def, &rest, order, fuel)?;
        let g_last = def.antipode_coeffs(last, order, fuel)?;
        let a = HSeries::from_coeffs(def, order, (*g_last).clone());
        let b = HSeries::from_coeffs(def, order, (*head).clone());
        a.mul(&b)?.coeffs
    };
    let arc = Arc::new(coeffs);
    def.caches.gammas.lock().unwrap().insert((w.clone(), order), arc.clone());
    Ok(arc)
}

/// Antipode of a series.
pub fn gamma_series(s: &HSeries) -> Result<HSeries> {
    let def = s.algebra();
    let fuel = Fuel::new(def.fuel_limit);
    let order = s.order();
    let mut out = HSeries::zero(def, order);
    for (k, p) in s.coeffs().iter().enumerate() {
        for (w, c) in p.word_iter() {
            let gw = gamma_word(def, w, order, &fuel)?;
            for (j, poly) in gw.iter().enumerate() {
                if k + j > order as usize {
                    break;
                }
                out.coeffs[k + j].add_scaled(poly, c);
            }
        }
    }
    Ok(out)
}

/// Apply the coproduct to one slot of a tensor square, producing a cube:
/// `extend_delta(Left, a ⊗ b) = Delta(a) ⊗ b` and symmetrically.
pub fn extend_delta(side: Side, t: &TensorSeries2) -> Result<TensorSeries3> {
    let def = t.algebra();
    let fuel = Fuel::new(def.fuel_limit);
    let order = t.order();
    let mut out = TensorSeries3::zero(def, order);
    for (k, p) in t.coeffs().iter().enumerate() {
        for (ws, c) in p.iter() {
            let (split, keep) = match side {
                Side::Left => (&ws[0], &ws[1]),
                Side::Right => (&ws[1], &ws[0]),
            };
            let dw = delta_word(def, split, order, &fuel)?;
            for (j, poly) in dw.iter().enumerate() {
                if k + j > order as usize {
                    break;
                }
                for (dws, dc) in poly.iter() {
                    let words = match side {
                        Side::Left => [dws[0].clone(), dws[1].clone(), keep.clone()],
                        Side::Right => [keep.clone(), dws[0].clone(), dws[1].clone()],
                    };
                    out.coeffs[k + j].insert(words, c * dc);
                }
            }
        }
    }
    Ok(out)
}

/// Counit applied to a whole series: an algebra map to scalars, so every
/// nonempty word dies when all generators have counit zero.
pub fn counit_series(s: &HSeries) -> Result<HSeries> {
    let def = s.algebra();
    let order = s.order();
    let mut out = HSeries::zero(def, order);
    for (k, p) in s.coeffs().iter().enumerate() {
        for (w, c) in p.word_iter() {
            let mut factor = Rat::from_integer(1.into());
            for &g in w.letters() {
                factor *= def.counit(g)?;
                if num_traits::Zero::is_zero(&factor) {
                    break;
                }
            }
            if !num_traits::Zero::is_zero(&factor) {
                out.coeffs[k].insert([Word::empty()], c * factor);
            }
        }
    }
    Ok(out)
}

/// `(eps ⊗ id)` or `(id ⊗ eps)` collapsing one slot of a tensor square.
pub fn counit_slot(side: Side, t: &TensorSeries2) -> Result<HSeries> {
    let def = t.algebra();
    let order = t.order();
    let mut out = HSeries::zero(def, order);
    for (k, p) in t.coeffs().iter().enumerate() {
        for (ws, c) in p.iter() {
            let (collapse, keep) = match side {
                Side::Left => (&ws[0], &ws[1]),
                Side::Right => (&ws[1], &ws[0]),
            };
            let mut factor = Rat::from_integer(1.into());
            for &g in collapse.letters() {
                factor *= def.counit(g)?;
                if num_traits::Zero::is_zero(&factor) {
                    break;
                }
            }
            if !num_traits::Zero::is_zero(&factor) {
                out.coeffs[k].insert([keep.clone()], c * factor);
            }
        }
    }
    Ok(out)
}

/// `m ∘ (gamma ⊗ id)` or `m ∘ (id ⊗ gamma)` applied to a tensor square.
pub fn antipode_convolution(side: Side, t: &TensorSeries2) -> Result<HSeries> {
    let def = t.algebra();
    let fuel = Fuel::new(def.fuel_limit);
    let order = t.order();
    let mut out = HSeries::zero(def, order);
    for (k, p) in t.coeffs().iter().enumerate() {
        for (ws, c) in p.iter() {
            let (a, b) = (&ws[0], &ws[1]);
            let (ga_or_a, other) = match side {
                Side::Left => (gamma_word(def, a, order, &fuel)?, HSeries::from_word(def, b.clone(), order)?),
                Side::Right => (gamma_word(def, b, order, &fuel)?, HSeries::from_word(def, a.clone(), order)?),
            };
            let g = HSeries::from_coeffs(def, order, (*ga_or_a).clone());
            let prod = match side {
                Side::Left => g.mul(&other)?,
                Side::Right => other.mul(&g)?,
            };
            out = out.add(&prod.scal(c).extended(order).shift(k as i64)?.truncated(order))?;
        }
    }
    Ok(out)
}

/// Outer product re-export for building explicit tensors in tests and
/// builders.
pub fn tensor(a: &HSeries, b: &HSeries) -> TensorSeries2 {
    outer2(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gens::sl2, sl2h};
    use crate::rat::rat_i;
    use crate::series::TensorSeries2;
    use crate::word::GenId;

    #[test]
    fn flip_examples() {
        let def = sl2h();
        let one = TensorSeries2::one(&def, 2);
        assert_eq!(flip(&one), one);
        let jp = HSeries::gen(&def, GenId(sl2::JP), 2).unwrap();
        let j3 = HSeries::gen(&def, GenId(sl2::J3), 2).unwrap();
        let t = tensor(&jp, &j3);
        assert_eq!(flip(&t), tensor(&j3, &jp));
        assert_eq!(flip(&flip(&t)), t);
        // Delta'(J3) at K=1: the h-term changes sign under the flip.
        let d = def.coproduct(GenId(sl2::J3), 1).unwrap();
        let dp = flip(&d);
        let anti = d.sub(&dp).unwrap();
        let mut expect = TensorSeries2::zero(&def, 1);
        expect.coeffs[1].insert([Word::gen(GenId(sl2::J3)), Word::gen(GenId(sl2::JP))], rat_i(2));
        expect.coeffs[1].insert([Word::gen(GenId(sl2::JP)), Word::gen(GenId(sl2::J3))], rat_i(-2));
        assert_eq!(anti, expect);
    }

    #[test]
    fn flip_is_multiplicative() {
        let def = sl2h();
        let jp = HSeries::gen(&def, GenId(sl2::JP), 3).unwrap();
        let j3 = HSeries::gen(&def, GenId(sl2::J3), 3).unwrap();
        let jm = HSeries::gen(&def, GenId(sl2::JM), 3).unwrap();
        let a = tensor(&jm, &j3);
        let b = tensor(&jp, &jm);
        let lhs = flip(&a.mul(&b).unwrap());
        let rhs = flip(&a).mul(&flip(&b)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn embed_examples() {
        let def = sl2h();
        let jp = HSeries::gen(&def, GenId(sl2::JP), 1).unwrap();
        let j3 = HSeries::gen(&def, GenId(sl2::J3), 1).unwrap();
        let t = tensor(&jp, &j3);
        let e = embed(&t, Legs::L13);
        let mut expect = crate::series::TensorSeries3::zero(&def, 1);
        expect.coeffs[0].insert(
            [Word::gen(GenId(sl2::JP)), Word::empty(), Word::gen(GenId(sl2::J3))],
            rat_i(1),
        );
        assert_eq!(e, expect);
    }

    #[test]
    fn extend_delta_on_primitives() {
        let def = sl2h();
        let jp = HSeries::gen(&def, GenId(sl2::JP), 1).unwrap();
        let one = HSeries::one(&def, 1);
        // extend_delta(left, J+ ⊗ 1) = J+ ⊗ 1 ⊗ 1 + 1 ⊗ J+ ⊗ 1.
        let got = extend_delta(Side::Left, &tensor(&jp, &one)).unwrap();
        let mut expect = crate::series::TensorSeries3::zero(&def, 1);
        expect.coeffs[0].insert([Word::gen(GenId(sl2::JP)), Word::empty(), Word::empty()], rat_i(1));
        expect.coeffs[0].insert([Word::empty(), Word::gen(GenId(sl2::JP)), Word::empty()], rat_i(1));
        assert_eq!(got, expect);
        // extend_delta(right, 1 ⊗ J+) distributes into legs 2 and 3.
        let got = extend_delta(Side::Right, &tensor(&one, &jp)).unwrap();
        let mut expect = crate::series::TensorSeries3::zero(&def, 1);
        expect.coeffs[0].insert([Word::empty(), Word::gen(GenId(sl2::JP)), Word::empty()], rat_i(1));
        expect.coeffs[0].insert([Word::empty(), Word::empty(), Word::gen(GenId(sl2::JP))], rat_i(1));
        assert_eq!(got, expect);
    }

    #[test]
    fn delta_is_an_algebra_map() {
        // Delta(a·b) = Delta(a)·Delta(b) on a noncommuting sample.
        let def = sl2h();
        let j3 = HSeries::gen(&def, GenId(sl2::J3), 3).unwrap();
        let jm = HSeries::gen(&def, GenId(sl2::JM), 3).unwrap();
        let prod = jm.mul(&j3).unwrap();
        let lhs = delta_series(&prod).unwrap();
        let rhs = delta_series(&jm).unwrap().mul(&delta_series(&j3).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tmul_associative_and_unital() {
        let def = sl2h();
        let j3 = HSeries::gen(&def, GenId(sl2::J3), 3).unwrap();
        let jp = HSeries::gen(&def, GenId(sl2::JP), 3).unwrap();
        let jm = HSeries::gen(&def, GenId(sl2::JM), 3).unwrap();
        let a = tensor(&j3, &jp);
        let b = tensor(&jm, &jm);
        let c = tensor(&jp, &j3);
        let one = TensorSeries2::one(&def, 3);
        assert_eq!(a.mul(&one).unwrap(), a);
        assert_eq!(one.mul(&a).unwrap(), a);
        assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
    }
}
