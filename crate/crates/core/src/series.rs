//! Truncated formal power series in the deformation parameter whose
//! coefficients are sums of n-fold tensor words with exact rational scalars.
//!
//! `TensorSeries<1>` (aliased [`HSeries`]) is the algebra itself;
//! `TensorSeries<2>` and `TensorSeries<3>` carry coproducts and R matrices.
//! Every public operation returns fully PBW-normal-ordered results, so
//! equality is coefficient-wise comparison and zero testing is exact.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::AlgebraDef;
use crate::analytic::AnalyticFn;
use crate::error::{Error, Result};
use crate::normal::{normalize_word, Fuel};
use crate::rat::{rat_short, Rat};
use crate::word::{GenId, Word};

/// Sum of n-fold tensor words with nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorPoly<const N: usize> {
    terms: BTreeMap<[Word; N], Rat>,
}

/// Noncommutative polynomial: the single-slot case.
pub type NCPoly = TensorPoly<1>;

pub type Coeffs<const N: usize> = Vec<TensorPoly<N>>;

impl<const N: usize> TensorPoly<N> {
    pub fn new() -> Self {
        TensorPoly { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `c` times the given word tuple, dropping the entry if it cancels.
    pub fn insert(&mut self, words: [Word; N], c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(words) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get_mut();
                *v += c;
                if v.is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[Word; N], &Rat)> {
        self.terms.iter()
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rat) {
        for (w, v) in &other.terms {
            self.insert(w.clone(), v * c);
        }
    }

    pub fn scale(&mut self, c: &Rat) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= c;
        }
    }

    pub fn neg(&mut self) {
        for v in self.terms.values_mut() {
            *v = -v.clone();
        }
    }
}

impl NCPoly {
    pub fn from_word(w: Word, c: Rat) -> Self {
        let mut p = NCPoly::new();
        p.insert([w], c);
        p
    }

    pub fn word_iter(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter().map(|(ws, c)| (&ws[0], c))
    }
}

/// Truncated h-series with `TensorPoly<N>` coefficients.
///
/// Invariants: `coeffs.len() == order + 1`, absent monomials are zero, and
/// all stored words are in PBW normal form after any public operation.
#[derive(Clone)]
pub struct TensorSeries<const N: usize> {
    pub(crate) algebra: Arc<AlgebraDef>,
    pub(crate) order: u32,
    pub(crate) coeffs: Coeffs<N>,
}

pub type HSeries = TensorSeries<1>;
pub type TensorSeries2 = TensorSeries<2>;
pub type TensorSeries3 = TensorSeries<3>;

impl<const N: usize> fmt::Debug for TensorSeries<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorSeries<{N}>[{}; K={}; {}]", self.algebra.name, self.order, self)
    }
}

impl<const N: usize> PartialEq for TensorSeries<N> {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.name == other.algebra.name && self.order == other.order && self.coeffs == other.coeffs
    }
}
impl<const N: usize> Eq for TensorSeries<N> {}

impl<const N: usize> TensorSeries<N> {
    pub fn zero(algebra: &Arc<AlgebraDef>, order: u32) -> Self {
        TensorSeries {
            algebra: algebra.clone(),
            order,
            coeffs: vec![TensorPoly::new(); order as usize + 1],
        }
    }

    pub fn one(algebra: &Arc<AlgebraDef>, order: u32) -> Self {
        Self::scalar(algebra, order, Rat::from_integer(1.into()))
    }

    pub fn scalar(algebra: &Arc<AlgebraDef>, order: u32, c: Rat) -> Self {
        let mut s = Self::zero(algebra, order);
        s.coeffs[0].insert(std::array::from_fn(|_| Word::empty()), c);
        s
    }

    pub fn from_coeffs(algebra: &Arc<AlgebraDef>, order: u32, mut coeffs: Coeffs<N>) -> Self {
        coeffs.resize(order as usize + 1, TensorPoly::new());
        coeffs.truncate(order as usize + 1);
        TensorSeries { algebra: algebra.clone(), order, coeffs }
    }

    pub fn algebra(&self) -> &Arc<AlgebraDef> {
        &self.algebra
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, k: u32) -> &TensorPoly<N> {
        &self.coeffs[k as usize]
    }

    pub fn coeffs(&self) -> &Coeffs<N> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|p| p.is_zero())
    }

    /// Lowest h-order carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.iter().position(|p| !p.is_zero()).map(|i| i as u32)
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().map(|p| p.len()).sum()
    }

    fn compat(&self, other: &Self) -> Result<()> {
        if self.algebra.name != other.algebra.name {
            return Err(Error::AlgebraMismatch(self.algebra.name.clone(), other.algebra.name.clone()));
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compat(other)?;
        let mut out = self.clone();
        for (k, p) in other.coeffs.iter().enumerate() {
            out.coeffs[k].add_scaled(p, &Rat::from_integer(1.into()));
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compat(other)?;
        let mut out = self.clone();
        for (k, p) in other.coeffs.iter().enumerate() {
            out.coeffs[k].add_scaled(p, &Rat::from_integer((-1).into()));
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for p in &mut out.coeffs {
            p.neg();
        }
        out
    }

    pub fn scal(&self, c: &Rat) -> Self {
        let mut out = self.clone();
        for p in &mut out.coeffs {
            p.scale(c);
        }
        out
    }

    /// Multiply by `h^s`. A negative shift fails if a nonzero coefficient
    /// would land below order zero; information above the truncation order is
    /// discarded, so callers that shift down must have evaluated the operand
    /// at a correspondingly higher order.
    pub fn shift(&self, s: i64) -> Result<Self> {
        let mut out = Self::zero(&self.algebra, self.order);
        for (k, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let kk = k as i64 + s;
            if kk < 0 {
                return Err(Error::NegativeHExponent);
            }
            if kk <= self.order as i64 {
                out.coeffs[kk as usize] = p.clone();
            }
        }
        Ok(out)
    }

    pub fn truncated(&self, order: u32) -> Self {
        let order = order.min(self.order);
        TensorSeries {
            algebra: self.algebra.clone(),
            order,
            coeffs: self.coeffs[..=order as usize].to_vec(),
        }
    }

    /// Same data viewed at a higher truncation order (top coefficients zero).
    pub fn extended(&self, order: u32) -> Self {
        assert!(order >= self.order);
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order as usize + 1, TensorPoly::new());
        TensorSeries { algebra: self.algebra.clone(), order, coeffs }
    }

    /// Coefficient data equality, ignoring which algebra the series is tagged
    /// with. Used to compare series over distinct registries that share
    /// generator positions.
    pub fn eq_data(&self, other: &Self) -> bool {
        self.order == other.order && self.coeffs == other.coeffs
    }

    /// Slotwise-normalized product. Both operands must share the algebra and
    /// truncation order; the result is truncated at the same order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compat(other)?;
        let def = &self.algebra;
        let fuel = Fuel::new(def.fuel_limit);
        let k = self.order;
        let mut out = Self::zero(def, k);
        for (ka, pa) in self.coeffs.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for (kb, pb) in other.coeffs.iter().enumerate() {
                if ka + kb > k as usize {
                    break;
                }
                if pb.is_zero() {
                    continue;
                }
                let budget = k as usize - ka - kb;
                for (wa, ca) in pa.iter() {
                    for (wb, cb) in pb.iter() {
                        let c = ca * cb;
                        let mut slots: Vec<SlotNorm> = Vec::with_capacity(N);
                        for s in 0..N {
                            let glued = wa[s].concat(&wb[s]);
                            if glued.is_normal() {
                                slots.push(SlotNorm::Plain(glued));
                            } else {
                                slots.push(SlotNorm::Series(normalize_word(def, &glued, k, &fuel)?));
                            }
                        }
                        distribute_slots(&mut out.coeffs, ka + kb, budget, &slots, &c);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(&self.algebra, self.order);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Truncated Taylor application `sum_k f_k x^k`. The argument must have no
    /// h^0 component so that the sum terminates under truncation.
    pub fn analytic_apply(f: &AnalyticFn, x: &Self) -> Result<Self> {
        if !x.coeffs[0].is_zero() {
            return Err(Error::NonNilpotentArgument);
        }
        let mut acc = Self::scalar(&x.algebra, x.order, f.coeff(0));
        let mut pw = Self::one(&x.algebra, x.order);
        for j in 1..=x.order as usize {
            pw = pw.mul(x)?;
            if pw.is_zero() {
                break;
            }
            let c = f.coeff(j);
            if !c.is_zero() {
                acc = acc.add(&pw.scal(&c))?;
            }
        }
        Ok(acc)
    }

    /// `exp(x)` for `x` with no h^0 component; `exp(x)·exp(-x) = 1` exactly in
    /// the truncated ring.
    pub fn exp(x: &Self) -> Result<Self> {
        Self::analytic_apply(&AnalyticFn::Exp, x)
    }
}

/// One slot of a term product: either an already-normal concatenation or a
/// normalized coefficient vector.
enum SlotNorm {
    Plain(Word),
    Series(Arc<Coeffs<1>>),
}

/// Fold per-slot normalized coefficient vectors into the output accumulator.
fn distribute_slots<const N: usize>(
    out: &mut Coeffs<N>,
    base_order: usize,
    budget: usize,
    slots: &[SlotNorm],
    c: &Rat,
) {
    fn rec<const N: usize>(
        out: &mut Coeffs<N>,
        slots: &[SlotNorm],
        idx: usize,
        order: usize,
        budget: usize,
        picked: &mut Vec<Word>,
        c: &Rat,
    ) {
        if idx == slots.len() {
            let words: [Word; N] = std::array::from_fn(|i| picked[i].clone());
            out[order].insert(words, c.clone());
            return;
        }
        match &slots[idx] {
            SlotNorm::Plain(w) => {
                picked.push(w.clone());
                rec::<N>(out, slots, idx + 1, order, budget, picked, c);
                picked.pop();
            }
            SlotNorm::Series(coeffs) => {
                for (j, poly) in coeffs.iter().enumerate() {
                    if j > budget || poly.is_zero() {
                        continue;
                    }
                    for (w, cw) in poly.word_iter() {
                        picked.push(w.clone());
                        let c2 = c * cw;
                        rec::<N>(out, slots, idx + 1, order + j, budget - j, picked, &c2);
                        picked.pop();
                    }
                }
            }
        }
    }
    let mut picked = Vec::with_capacity(N);
    rec::<N>(out, slots, 0, base_order, budget, &mut picked, c);
}

impl HSeries {
    pub fn gen(algebra: &Arc<AlgebraDef>, g: GenId, order: u32) -> Result<Self> {
        algebra.check_gen(g)?;
        let mut s = Self::zero(algebra, order);
        s.coeffs[0].insert([Word::gen(g)], Rat::from_integer(1.into()));
        Ok(s)
    }

    pub fn from_word(algebra: &Arc<AlgebraDef>, w: Word, order: u32) -> Result<Self> {
        for &g in w.letters() {
            algebra.check_gen(g)?;
        }
        let mut s = Self::zero(algebra, order);
        s.coeffs[0].insert([w], Rat::from_integer(1.into()));
        Ok(s)
    }

    /// True when the series is a pure scalar (all words empty).
    pub fn is_scalar(&self) -> bool {
        self.coeffs.iter().all(|p| p.iter().all(|(w, _)| w[0].is_empty()))
    }

    /// Letters occurring anywhere in the series.
    pub fn support(&self) -> Vec<GenId> {
        let mut seen = std::collections::BTreeSet::new();
        for p in &self.coeffs {
            for (w, _) in p.iter() {
                seen.extend(w[0].letters().iter().copied());
            }
        }
        seen.into_iter().collect()
    }
}

/// Normal-order a raw noncommutative polynomial against the algebra's
/// commutator table, truncating at `h^order`.
pub fn pbw_normal_order(algebra: &Arc<AlgebraDef>, p: &NCPoly, order: u32) -> Result<HSeries> {
    let fuel = Fuel::new(algebra.fuel_limit);
    let mut out = HSeries::zero(algebra, order);
    for (w, c) in p.word_iter() {
        for &g in w.letters() {
            algebra.check_gen(g)?;
        }
        let norm = normalize_word(algebra, w, order, &fuel)?;
        for (j, poly) in norm.iter().enumerate() {
            out.coeffs[j].add_scaled(poly, c);
        }
    }
    Ok(out)
}

/// Normal-order every term of an already-built series (words may be raw).
pub fn normalize_series(s: &HSeries) -> Result<HSeries> {
    let fuel = Fuel::new(s.algebra.fuel_limit);
    let mut out = HSeries::zero(&s.algebra, s.order);
    for (k, p) in s.coeffs.iter().enumerate() {
        for (w, c) in p.word_iter() {
            let norm = normalize_word(&s.algebra, w, s.order, &fuel)?;
            for (j, poly) in norm.iter().enumerate() {
                if k + j > s.order as usize {
                    break;
                }
                out.coeffs[k + j].add_scaled(poly, c);
            }
        }
    }
    Ok(out)
}

/// Exact division in a commutative subring: all letters occurring in `num`
/// and `den` must pairwise commute. The quotient `q` satisfies
/// `q·den = num` exactly in the truncated ring.
pub fn series_div_exact(num: &HSeries, den: &HSeries) -> Result<HSeries> {
    num.compat(den)?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let def = &num.algebra;
    // Commutativity precheck over the union of occurring letters.
    let mut letters = num.support();
    for g in den.support() {
        if !letters.contains(&g) {
            letters.push(g);
        }
    }
    for (i, &x) in letters.iter().enumerate() {
        for &y in &letters[i + 1..] {
            if !def.commutes(x, y, num.order)? {
                return Err(Error::NonCommutativeInput(
                    def.gen_name(x).to_string(),
                    def.gen_name(y).to_string(),
                ));
            }
        }
    }
    if num.is_zero() {
        return Ok(HSeries::zero(def, num.order));
    }
    let v = den.valuation().unwrap();
    let nv = num.valuation().unwrap();
    if nv < v {
        return Err(Error::NotDivisible { order: nv });
    }
    let k = num.order;
    let lead = &den.coeffs[v as usize];
    let mut q = HSeries::zero(def, k);
    for j in 0..=(k - v) as usize {
        // r = num_{j+v} - sum_{i<j} q_i * den_{j+v-i}
        let mut r = num.coeffs[j + v as usize].clone();
        for i in 0..j {
            let dk = j + v as usize - i;
            if dk > k as usize {
                continue;
            }
            let prod = comm_poly_mul(&q.coeffs[i], &den.coeffs[dk]);
            r.add_scaled(&prod, &Rat::from_integer((-1).into()));
        }
        if r.is_zero() {
            continue;
        }
        match comm_poly_div(&r, lead) {
            Some(qj) => q.coeffs[j] = qj,
            None => return Err(Error::NotDivisible { order: j as u32 + v }),
        }
    }
    // Round-trip: the quotient must reproduce the dividend exactly.
    let back = q.mul(den)?;
    if back != *num {
        return Err(Error::NotDivisible { order: back.sub(num)?.valuation().unwrap_or(0) });
    }
    Ok(q)
}

/// Commutative polynomial product: words merge as sorted multisets.
fn comm_poly_mul(a: &NCPoly, b: &NCPoly) -> NCPoly {
    let mut out = NCPoly::new();
    for (wa, ca) in a.word_iter() {
        for (wb, cb) in b.word_iter() {
            out.insert([wa.concat(wb).sorted()], ca * cb);
        }
    }
    out
}

/// Exact commutative polynomial division (graded-lex long division); `None`
/// when the divisor does not divide.
fn comm_poly_div(p: &NCPoly, d: &NCPoly) -> Option<NCPoly> {
    let lead = |poly: &NCPoly| -> Option<(Word, Rat)> {
        poly.word_iter()
            .max_by(|(w1, _), (w2, _)| w1.len().cmp(&w2.len()).then_with(|| w1.cmp(w2)))
            .map(|(w, c)| (w.clone(), c.clone()))
    };
    let (dw, dc) = lead(d)?;
    let mut rem = p.clone();
    let mut q = NCPoly::new();
    let mut steps = 0usize;
    while !rem.is_zero() {
        steps += 1;
        if steps > 100_000 {
            return None;
        }
        let (rw, rc) = lead(&rem)?;
        // Divide leading monomials as multisets.
        let mut avail = rw.letters().to_vec();
        let mut ok = true;
        for g in dw.letters() {
            if let Some(pos) = avail.iter().position(|x| x == g) {
                avail.remove(pos);
            } else {
                ok = false;
                break;
            }
        }
        if !ok {
            return None;
        }
        let qw = Word(avail).sorted();
        let qc = rc / &dc;
        let mut t = NCPoly::new();
        t.insert([qw.clone()], qc.clone());
        q.insert([qw], qc.clone());
        let sub = comm_poly_mul(&t, d);
        rem.add_scaled(&sub, &Rat::from_integer((-1).into()));
    }
    Some(q)
}

impl<const N: usize> fmt::Display for TensorSeries<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, p) in self.coeffs.iter().enumerate() {
            for (ws, c) in p.iter() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{}", format_term(&self.algebra, k as u32, ws, c))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Canonical text for one term: `coeff[*h^k][*letters]`, slots joined by ` ox `.
pub fn format_term<const N: usize>(def: &AlgebraDef, k: u32, ws: &[Word; N], c: &Rat) -> String {
    let mut s = rat_short(c);
    if k > 0 {
        s.push('*');
        s.push_str(&def.param);
        if k > 1 {
            s.push_str(&format!("^{k}"));
        }
    }
    let slots: Vec<String> = ws.iter().map(|w| format_word(def, w)).collect();
    if N == 1 {
        if !ws[0].is_empty() {
            s.push('*');
            s.push_str(&slots[0]);
        }
        s
    } else {
        format!("{} * ({})", s, slots.join(" ox "))
    }
}

/// `Jp^2*J3` style rendering of a word; the empty word prints as `1`.
pub fn format_word(def: &AlgebraDef, w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    let ls = w.letters();
    while i < ls.len() {
        let mut j = i;
        while j < ls.len() && ls[j] == ls[i] {
            j += 1;
        }
        let name = def.gen_name(ls[i]);
        if j - i == 1 {
            parts.push(name.to_string());
        } else {
            parts.push(format!("{}^{}", name, j - i));
        }
        i = j;
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gens::sl2, gens::so4, sl2h, so4h};
    use crate::rat::{rat_i, ratio};

    fn hgen(def: &Arc<AlgebraDef>, g: u8, k: u32) -> HSeries {
        HSeries::gen(def, GenId(g), k).unwrap().extended(k).shift(1).unwrap().truncated(k)
    }

    #[test]
    fn mul_identity_and_order() {
        let def = sl2h();
        let a = HSeries::gen(&def, GenId(sl2::JM), 3).unwrap();
        let one = HSeries::one(&def, 3);
        assert_eq!(a.mul(&one).unwrap(), a);
        assert_eq!(one.mul(&a).unwrap(), a);
        // In-order product needs no correction.
        let jp = HSeries::gen(&def, GenId(sl2::JP), 0).unwrap();
        let jm = HSeries::gen(&def, GenId(sl2::JM), 0).unwrap();
        let mut expect = HSeries::zero(&def, 0);
        expect.coeffs[0].insert([Word::from_ids(&[sl2::JP, sl2::JM])], rat_i(1));
        assert_eq!(jp.mul(&jm).unwrap(), expect);
        // Out-of-order product picks up the bracket.
        let mut expect = HSeries::zero(&def, 0);
        expect.coeffs[0].insert([Word::from_ids(&[sl2::JP, sl2::JM])], rat_i(1));
        expect.coeffs[0].insert([Word::from_ids(&[sl2::J3])], rat_i(-1));
        assert_eq!(jm.mul(&jp).unwrap(), expect);
    }

    #[test]
    fn mismatches_are_errors() {
        let def = sl2h();
        let a = HSeries::one(&def, 3);
        let b = HSeries::one(&def, 4);
        assert!(matches!(a.add(&b), Err(Error::OrderMismatch(3, 4))));
        let c = HSeries::one(&so4h(), 3);
        assert!(matches!(a.mul(&c), Err(Error::AlgebraMismatch(_, _))));
    }

    #[test]
    fn analytic_sinh_of_h_jp() {
        // sinh(h J+) at K=4 -> h J+ + (1/6) h^3 (J+)^3.
        let def = sl2h();
        let x = hgen(&def, sl2::JP, 4);
        let got = HSeries::analytic_apply(&AnalyticFn::Sinh, &x).unwrap();
        let mut expect = HSeries::zero(&def, 4);
        expect.coeffs[1].insert([Word::from_ids(&[sl2::JP])], rat_i(1));
        expect.coeffs[3].insert([Word::from_ids(&[sl2::JP; 3])], ratio(1, 6));
        assert_eq!(got, expect);
    }

    #[test]
    fn analytic_x_over_sinh_x() {
        // (x/sinh x)(h J+) at K=4 -> 1 - (1/6) h^2 (J+)^2 + (7/360) h^4 (J+)^4.
        let def = sl2h();
        let x = hgen(&def, sl2::JP, 4);
        let got = HSeries::analytic_apply(&AnalyticFn::XOverSinhX, &x).unwrap();
        let mut expect = HSeries::zero(&def, 4);
        expect.coeffs[0].insert([Word::empty()], rat_i(1));
        expect.coeffs[2].insert([Word::from_ids(&[sl2::JP; 2])], ratio(-1, 6));
        expect.coeffs[4].insert([Word::from_ids(&[sl2::JP; 4])], ratio(7, 360));
        assert_eq!(got, expect);
    }

    #[test]
    fn analytic_rejects_constant_part() {
        let def = sl2h();
        let x = HSeries::gen(&def, GenId(sl2::JP), 3).unwrap();
        assert!(matches!(
            HSeries::analytic_apply(&AnalyticFn::Exp, &x),
            Err(Error::NonNilpotentArgument)
        ));
    }

    #[test]
    fn exp_of_zero_and_scalar_like() {
        let def = sl2h();
        let zero = HSeries::zero(&def, 4);
        assert_eq!(HSeries::exp(&zero).unwrap(), HSeries::one(&def, 4));
        // exp(h J+) at K=2 -> 1 + h J+ + (1/2) h^2 (J+)^2.
        let x = hgen(&def, sl2::JP, 2);
        let got = HSeries::exp(&x).unwrap();
        let mut expect = HSeries::zero(&def, 2);
        expect.coeffs[0].insert([Word::empty()], rat_i(1));
        expect.coeffs[1].insert([Word::from_ids(&[sl2::JP])], rat_i(1));
        expect.coeffs[2].insert([Word::from_ids(&[sl2::JP; 2])], ratio(1, 2));
        assert_eq!(got, expect);
    }

    #[test]
    fn tensor_exp_inverse() {
        // exp(X) exp(-X) = 1 ⊗ 1 for X = h (J3 ⊗ J+ - J+ ⊗ J3), K = 4.
        let def = sl2h();
        let j3 = HSeries::gen(&def, GenId(sl2::J3), 4).unwrap();
        let jp = HSeries::gen(&def, GenId(sl2::JP), 4).unwrap();
        let x = crate::expr::outer2(&j3, &jp)
            .sub(&crate::expr::outer2(&jp, &j3))
            .unwrap()
            .extended(4)
            .shift(1)
            .unwrap()
            .truncated(4);
        let e = TensorSeries2::exp(&x).unwrap();
        let einv = TensorSeries2::exp(&x.neg()).unwrap();
        assert_eq!(e.mul(&einv).unwrap(), TensorSeries2::one(&def, 4));
    }

    #[test]
    fn div_exact_difference_of_squares() {
        // h^2 ((J+)^2 - (N+)^2) / h (J+ - N+) = h (J+ + N+), K = 3.
        let def = so4h();
        let jp = hgen(&def, so4::JP, 3);
        let np = hgen(&def, so4::NP, 3);
        let num = jp.mul(&jp).unwrap().sub(&np.mul(&np).unwrap()).unwrap();
        let den = jp.sub(&np).unwrap();
        let got = series_div_exact(&num, &den).unwrap();
        assert_eq!(got, jp.add(&np).unwrap());
        // Trivial case: num = den -> 1.
        assert_eq!(series_div_exact(&den, &den).unwrap(), HSeries::one(&def, 3));
    }

    #[test]
    fn div_exact_cosh_difference() {
        // 2(cosh hJ+ - cosh hN+) / h^2((J+)^2 - (N+)^2)
        //   = 1 + (h^2/12)((J+)^2 + (N+)^2) at K = 4.
        let def = so4h();
        let jp = hgen(&def, so4::JP, 4);
        let np = hgen(&def, so4::NP, 4);
        let num = HSeries::analytic_apply(&AnalyticFn::Cosh, &jp)
            .unwrap()
            .sub(&HSeries::analytic_apply(&AnalyticFn::Cosh, &np).unwrap())
            .unwrap()
            .scal(&rat_i(2));
        let den = jp.mul(&jp).unwrap().sub(&np.mul(&np).unwrap()).unwrap();
        let got = series_div_exact(&num, &den).unwrap();
        let mut expect = HSeries::zero(&def, 4);
        expect.coeffs[0].insert([Word::empty()], rat_i(1));
        expect.coeffs[2].insert([Word::from_ids(&[so4::JP, so4::JP])], ratio(1, 12));
        expect.coeffs[2].insert([Word::from_ids(&[so4::NP, so4::NP])], ratio(1, 12));
        assert_eq!(got, expect);
        // Quotient times divisor reproduces the dividend.
        assert_eq!(got.mul(&den).unwrap(), num);
    }

    #[test]
    fn div_exact_rejects_noncommuting_input() {
        let def = sl2h();
        let num = HSeries::gen(&def, GenId(sl2::J3), 2).unwrap();
        let den = HSeries::gen(&def, GenId(sl2::JP), 2).unwrap();
        assert!(matches!(series_div_exact(&num, &den), Err(Error::NonCommutativeInput(_, _))));
    }

    #[test]
    fn div_exact_not_divisible() {
        let def = so4h();
        let jp = hgen(&def, so4::JP, 3);
        let np = hgen(&def, so4::NP, 3);
        let num = jp.mul(&jp).unwrap();
        let den = np.clone();
        assert!(matches!(series_div_exact(&num, &den), Err(Error::NotDivisible { .. })));
    }
}
