//! Finite-dimensional representations with exact polynomial entries.
//!
//! Represented raising generators are nilpotent, so every hyperbolic series
//! in the tables becomes a polynomial and the represented R matrices are
//! exact elements of Q[h] — matrix-level checks are identities, not
//! approximations. Non-terminating evaluations are errors, never
//! truncations.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::AlgebraDef;
use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::rmatrix::{CheckReport, RMatrix};
use crate::series::{HSeries, TensorSeries2};
use crate::word::{GenId, Word};

/// Dense polynomial in the deformation parameter.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPoly(Vec<Rat>);

impl QPoly {
    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = QPoly(vec![c]);
        p.trim();
        p
    }

    pub fn monomial(k: usize, c: Rat) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        let mut p = QPoly(v);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.0.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn at_h0(&self) -> Rat {
        self.coeff(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let mut v = vec![Rat::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in o.0.iter().enumerate() {
            v[i] += c;
        }
        let mut p = QPoly(v);
        p.trim();
        p
    }

    pub fn neg(&self) -> Self {
        QPoly(self.0.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        let mut p = QPoly(v);
        p.trim();
        p
    }

    pub fn scal(&self, c: &Rat) -> Self {
        let mut p = QPoly(self.0.iter().map(|a| a * c).collect());
        p.trim();
        p
    }
}

/// Square matrix over Q[h], row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    pub d: usize,
    entries: Vec<QPoly>,
}

impl PolyMatrix {
    pub fn zero(d: usize) -> Self {
        PolyMatrix { d, entries: vec![QPoly::zero(); d * d] }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zero(d);
        for i in 0..d {
            m.entries[i * d + i] = QPoly::constant(Rat::one());
        }
        m
    }

    pub fn from_fn(d: usize, f: impl Fn(usize, usize) -> QPoly) -> Self {
        let mut m = Self::zero(d);
        for i in 0..d {
            for j in 0..d {
                m.entries[i * d + j] = f(i, j);
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &QPoly {
        &self.entries[i * self.d + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: QPoly) {
        self.entries[i * self.d + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.d, o.d);
        PolyMatrix { d: self.d, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.d, o.d);
        PolyMatrix { d: self.d, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scal(&self, c: &Rat) -> Self {
        PolyMatrix { d: self.d, entries: self.entries.iter().map(|a| a.scal(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.d, o.d);
        let d = self.d;
        let mut m = Self::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = o.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = m.at(i, j).add(&a.mul(b));
                    m.set(i, j, cur);
                }
            }
        }
        m
    }

    pub fn kron(&self, o: &Self) -> Self {
        let d = self.d * o.d;
        let mut m = Self::zero(d);
        for i1 in 0..self.d {
            for j1 in 0..self.d {
                let a = self.at(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..o.d {
                    for j2 in 0..o.d {
                        let b = o.at(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        m.set(i1 * o.d + i2, j1 * o.d + j2, a.mul(b));
                    }
                }
            }
        }
        m
    }

    /// Constant part: the matrix at h = 0.
    pub fn at_h0(&self) -> Self {
        PolyMatrix { d: self.d, entries: self.entries.iter().map(|p| QPoly::constant(p.at_h0())).collect() }
    }

    /// Exact inverse of a unipotent matrix via the finite Neumann sum.
    pub fn inverse_unipotent(&self) -> Result<Self> {
        let n = self.sub(&Self::identity(self.d));
        let mut acc = Self::identity(self.d);
        let mut pw = Self::identity(self.d);
        let mut sign = 1i64;
        for _ in 0..=self.d {
            pw = pw.mul(&n);
            if pw.is_zero() {
                let check = self.mul(&acc);
                if check != Self::identity(self.d) {
                    return Err(Error::SelfCheck("unipotent inverse failed its round trip".into()));
                }
                return Ok(acc);
            }
            sign = -sign;
            acc = if sign < 0 { acc.sub(&pw) } else { acc.add(&pw) };
        }
        Err(Error::NonNilpotentExponent)
    }

    /// Swap operator P(a ⊗ b) = b ⊗ a on a d ⊗ d space.
    pub fn swap(d: usize) -> Self {
        let mut m = Self::zero(d * d);
        for i in 0..d {
            for j in 0..d {
                m.set(i * d + j, j * d + i, QPoly::constant(Rat::one()));
            }
        }
        m
    }

    /// Embed a (d^2 x d^2) two-leg operator into legs (a, b) of a cube.
    pub fn embed3(&self, d: usize, a: usize, b: usize) -> Self {
        assert_eq!(self.d, d * d);
        let dd = d * d * d;
        let idx = |t: [usize; 3]| t[0] * d * d + t[1] * d + t[2];
        let mut m = Self::zero(dd);
        for t0 in 0..d {
            for t1 in 0..d {
                for t2 in 0..d {
                    let t = [t0, t1, t2];
                    for s0 in 0..d {
                        for s1 in 0..d {
                            for s2 in 0..d {
                                let s = [s0, s1, s2];
                                let c = (0..3).find(|&l| l != a && l != b).unwrap();
                                if t[c] != s[c] {
                                    continue;
                                }
                                let e = self.at(t[a] * d + t[b], s[a] * d + s[b]);
                                if !e.is_zero() {
                                    m.set(idx(t), idx(s), e.clone());
                                }
                            }
                        }
                    }
                }
            }
        }
        m
    }
}

/// A matrix representation: one constant matrix per generator, validated
/// against every commutator of the algebra at load time.
#[derive(Debug, Clone)]
pub struct Rep {
    pub algebra: Arc<AlgebraDef>,
    pub d: usize,
    mats: Vec<PolyMatrix>,
}

impl Rep {
    /// Validate and wrap generator matrices. Every table entry is evaluated
    /// at two truncation orders; if the represented series has not become
    /// stationary the representation cannot make it polynomial and the load
    /// fails, as it does when any commutator identity is violated.
    pub fn load(algebra: &Arc<AlgebraDef>, d: usize, mats: Vec<PolyMatrix>) -> Result<Self> {
        assert_eq!(mats.len(), algebra.n_gens());
        let rep = Rep { algebra: algebra.clone(), d, mats };
        let k_probe = 8u32;
        for x in algebra.gen_ids() {
            for y in algebra.gen_ids() {
                if x >= y {
                    continue;
                }
                let lo = rep.eval_series(&algebra.commutator(x, y, k_probe)?)?;
                let hi = rep.eval_series(&algebra.commutator(x, y, k_probe + 2)?)?;
                if lo != hi {
                    return Err(Error::NonNilpotentExponent);
                }
                let mx = &rep.mats[x.0 as usize];
                let my = &rep.mats[y.0 as usize];
                let direct = mx.mul(my).sub(&my.mul(mx));
                if direct != lo {
                    return Err(Error::RelationViolated(
                        algebra.gen_name(x).to_string(),
                        algebra.gen_name(y).to_string(),
                    ));
                }
            }
        }
        Ok(rep)
    }

    pub fn matrix(&self, g: GenId) -> &PolyMatrix {
        &self.mats[g.0 as usize]
    }

    pub fn eval_word(&self, w: &Word) -> PolyMatrix {
        let mut m = PolyMatrix::identity(self.d);
        for &g in w.letters() {
            m = m.mul(&self.mats[g.0 as usize]);
        }
        m
    }

    /// Image of a series: sum over h^k of the represented coefficient, each
    /// order contributing a degree-k monomial factor.
    pub fn eval_series(&self, s: &HSeries) -> Result<PolyMatrix> {
        let mut out = PolyMatrix::zero(self.d);
        for (k, p) in s.coeffs().iter().enumerate() {
            for (w, c) in p.word_iter() {
                let m = self.eval_word(w).scal(c);
                let shifted = PolyMatrix {
                    d: m.d,
                    entries: m.entries.iter().map(|e| e.mul(&QPoly::monomial(k, Rat::one()))).collect(),
                };
                out = out.add(&shifted);
            }
        }
        Ok(out)
    }

    /// Image of a tensor-square series on the d^2-dimensional space.
    pub fn eval_series2(&self, s: &TensorSeries2) -> Result<PolyMatrix> {
        let mut out = PolyMatrix::zero(self.d * self.d);
        for (k, p) in s.coeffs().iter().enumerate() {
            for (ws, c) in p.iter() {
                let m = self.eval_word(&ws[0]).kron(&self.eval_word(&ws[1])).scal(c);
                let shifted = PolyMatrix {
                    d: m.d,
                    entries: m.entries.iter().map(|e| e.mul(&QPoly::monomial(k, Rat::one()))).collect(),
                };
                out = out.add(&shifted);
            }
        }
        Ok(out)
    }
}

/// The 2-dimensional representation of the deformed sl(2). The classical
/// matrices satisfy the deformed relations because (J+)^2 = 0 collapses the
/// hyperbolic series.
pub fn fundamental_sl2() -> Result<Rep> {
    let def = crate::algebra::sl2h();
    let one = Rat::one;
    let jp = PolyMatrix::from_fn(2, |i, j| {
        if (i, j) == (0, 1) {
            QPoly::constant(one())
        } else {
            QPoly::zero()
        }
    });
    let jm = PolyMatrix::from_fn(2, |i, j| {
        if (i, j) == (1, 0) {
            QPoly::constant(one())
        } else {
            QPoly::zero()
        }
    });
    let j3 = PolyMatrix::from_fn(2, |i, j| {
        if i != j {
            QPoly::zero()
        } else if i == 0 {
            QPoly::constant(one())
        } else {
            QPoly::constant(-one())
        }
    });
    Rep::load(&def, 2, vec![jp, j3, jm])
}

/// The 4-dimensional representation of the deformed so(4), built as the
/// tensor product of the two copy representations with J_i = J_i1 + J_i2 and
/// N_i = J_i1 - J_i2.
pub fn rep_so4_from_pair() -> Result<Rep> {
    let def = crate::algebra::so4h();
    let f = fundamental_sl2()?;
    use crate::algebra::gens::sl2;
    let i2 = PolyMatrix::identity(2);
    let lift1 = |g: u8| f.matrix(GenId(g)).kron(&i2);
    let lift2 = |g: u8| i2.kron(f.matrix(GenId(g)));
    let plus = |g: u8| lift1(g).add(&lift2(g));
    let minus = |g: u8| lift1(g).sub(&lift2(g));
    let mats = vec![
        plus(sl2::JP),  // Jp
        minus(sl2::JP), // Np
        plus(sl2::J3),  // J3
        minus(sl2::J3), // N3
        plus(sl2::JM),  // Jm
        minus(sl2::JM), // Nm
    ];
    Rep::load(&def, 4, mats)
}

/// Evaluate a universal R matrix in a representation. The represented
/// exponent must be nilpotent so the exponential is an exact finite sum; the
/// result is exact in Q[h], not truncated, and is cross-checked against the
/// image of the truncated universal series.
pub fn evaluate_r(rm: &RMatrix, rep: &Rep) -> Result<PolyMatrix> {
    let m = rep.eval_series2(&rm.exponent)?;
    // Stationarity: a higher-order build must give the same represented
    // exponent, otherwise the image is not polynomial.
    let higher = crate::rmatrix::build_r(&crate::rmatrix::RSpec {
        algebra: rm.algebra.clone(),
        route: rm.route,
        order: rm.order + 2,
    })?;
    if rep.eval_series2(&higher.exponent)? != m {
        return Err(Error::NonNilpotentExponent);
    }
    // Exact exponential of the nilpotent image.
    let dd = rep.d * rep.d;
    let mut acc = PolyMatrix::identity(dd);
    let mut pw = PolyMatrix::identity(dd);
    let mut k = 0usize;
    loop {
        k += 1;
        pw = pw.mul(&m);
        if pw.is_zero() {
            break;
        }
        if k > dd {
            return Err(Error::NonNilpotentExponent);
        }
        acc = acc.add(&pw.scal(&crate::rat::inv_factorial(k)));
    }
    // The truncated universal series must map onto the same matrix.
    if rep.eval_series2(&higher.r)? != acc {
        return Err(Error::SelfCheck("represented R disagrees with the truncated universal series".into()));
    }
    Ok(acc)
}

/// Matrix quantum Yang-Baxter identity over Q[h].
pub fn matrix_qybe(rm: &PolyMatrix, d: usize) -> CheckReport {
    let r12 = rm.embed3(d, 0, 1);
    let r13 = rm.embed3(d, 0, 2);
    let r23 = rm.embed3(d, 1, 2);
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    let diff = lhs.sub(&rhs);
    report_matrix("matrix_qybe[R12 R13 R23 = R23 R13 R12]", &diff)
}

/// Matrix triangularity `P R^{-1} P = R` with P the swap operator.
pub fn matrix_triangular(rm: &PolyMatrix, d: usize) -> Result<CheckReport> {
    let p = PolyMatrix::swap(d);
    let inv = rm.inverse_unipotent()?;
    let diff = p.mul(&inv).mul(&p).sub(rm);
    Ok(report_matrix("matrix_triangular[P R^-1 P = R]", &diff))
}

fn report_matrix(name: &str, diff: &PolyMatrix) -> CheckReport {
    if diff.is_zero() {
        CheckReport { name: name.into(), pass: true, first_nonzero_order: None, residual_terms: vec![] }
    } else {
        let mut order = None;
        let mut terms = Vec::new();
        for i in 0..diff.d {
            for j in 0..diff.d {
                let p = diff.at(i, j);
                if let Some(k) = p.coeffs().iter().position(|c| !c.is_zero()) {
                    order = Some(order.map_or(k as u32, |o: u32| o.min(k as u32)));
                    if terms.len() < 4 {
                        terms.push(format!("({i},{j}): {}", crate::rat::rat_short(&p.coeff(k))));
                    }
                }
            }
        }
        CheckReport { name: name.into(), pass: false, first_nonzero_order: order, residual_terms: terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_i, ratio};
    use crate::rmatrix::{build_r, RSpec, Route};

    #[test]
    fn fundamental_satisfies_relations() {
        // Loading validates every commutator, with the hyperbolic series
        // collapsed by (J+)^2 = 0.
        let rep = fundamental_sl2().unwrap();
        assert_eq!(rep.d, 2);
        // [J3, J+] = 2 J+ as matrices.
        let j3 = rep.matrix(GenId(1));
        let jp = rep.matrix(GenId(0));
        let comm = j3.mul(jp).sub(&jp.mul(j3));
        assert_eq!(comm, jp.scal(&rat_i(2)));
    }

    #[test]
    fn wrong_matrix_is_rejected() {
        let def = crate::algebra::sl2h();
        let good = fundamental_sl2().unwrap();
        let mats = vec![
            good.matrix(GenId(0)).clone(),
            good.matrix(GenId(1)).scal(&rat_i(3)), // break J3
            good.matrix(GenId(2)).clone(),
        ];
        assert!(matches!(
            Rep::load(&def, 2, mats),
            Err(Error::RelationViolated(_, _))
        ));
    }

    #[test]
    fn so4_rep_satisfies_relations() {
        let rep = rep_so4_from_pair().unwrap();
        assert_eq!(rep.d, 4);
        // [J_i, N_i] = 0 as matrices.
        use crate::algebra::gens::so4::*;
        for (a, b) in [(JP, NP), (J3, N3), (JM, NM)] {
            let ma = rep.matrix(GenId(a));
            let mb = rep.matrix(GenId(b));
            assert!(ma.mul(mb).sub(&mb.mul(ma)).is_zero());
        }
    }

    #[test]
    fn golden_fundamental_r() {
        // Exact 4x4 image of the sl2h R: unipotent upper triangular,
        // I + h(J3 ⊗ J+ - J+ ⊗ J3) + h^2 J+ ⊗ J+.
        let def = crate::algebra::sl2h();
        let rm = build_r(&RSpec { algebra: def, route: Route::DirectExponent, order: 6 }).unwrap();
        let rep = fundamental_sl2().unwrap();
        let m = evaluate_r(&rm, &rep).unwrap();
        let mut expect = PolyMatrix::identity(4);
        expect.set(0, 1, QPoly::monomial(1, rat_i(1)));
        expect.set(0, 2, QPoly::monomial(1, rat_i(-1)));
        expect.set(0, 3, QPoly::monomial(2, rat_i(1)));
        expect.set(1, 3, QPoly::monomial(1, rat_i(1)));
        expect.set(2, 3, QPoly::monomial(1, rat_i(-1)));
        assert_eq!(m, expect);
        // Classical limit.
        assert_eq!(m.at_h0(), PolyMatrix::identity(4));
        // Matrix-level identities.
        assert!(matrix_qybe(&m, 2).pass);
        assert!(matrix_triangular(&m, 2).unwrap().pass);
    }

    #[test]
    fn evaluation_commutes_with_truncation() {
        let def = crate::algebra::sl2h();
        let rep = fundamental_sl2().unwrap();
        let mut images = Vec::new();
        for order in [4u32, 6, 8] {
            let rm = build_r(&RSpec { algebra: def.clone(), route: Route::DirectExponent, order }).unwrap();
            images.push(rep.eval_series2(&rm.r).unwrap());
        }
        assert_eq!(images[0], images[1]);
        assert_eq!(images[1], images[2]);
    }

    #[test]
    fn matrix_intertwiner_in_fundamental() {
        // (rho ⊗ rho)(Delta g) conjugated by the represented R matches the
        // flipped coproduct image, exactly over Q[h].
        let def = crate::algebra::sl2h();
        let rm = build_r(&RSpec { algebra: def.clone(), route: Route::DirectExponent, order: 8 }).unwrap();
        let rep = fundamental_sl2().unwrap();
        let m = evaluate_r(&rm, &rep).unwrap();
        let minv = m.inverse_unipotent().unwrap();
        for g in def.gen_ids() {
            let dg = rep.eval_series2(&def.coproduct(g, 8).unwrap()).unwrap();
            let dpg = rep.eval_series2(&crate::tensor::flip(&def.coproduct(g, 8).unwrap())).unwrap();
            assert_eq!(m.mul(&dg).mul(&minv), dpg, "intertwiner fails for {}", def.gen_name(g));
        }
    }

    #[test]
    fn unipotent_inverse_round_trip() {
        let mut m = PolyMatrix::identity(3);
        m.set(0, 1, QPoly::monomial(1, ratio(3, 2)));
        m.set(1, 2, QPoly::monomial(2, rat_i(-5)));
        m.set(0, 2, QPoly::monomial(1, rat_i(7)));
        let inv = m.inverse_unipotent().unwrap();
        assert_eq!(m.mul(&inv), PolyMatrix::identity(3));
    }
}
