//! Declarative rule language for algebra structure maps.
//!
//! Commutator-table and antipode entries are single-slot [`Expr`] trees;
//! coproduct entries are two-slot [`TExpr`] trees. Rules evaluate to
//! normal-ordered series at any requested truncation order, so the same data
//! drives computation, export, and the transcribed reference tables.

use std::sync::Arc;

use crate::algebra::AlgebraDef;
use crate::analytic::AnalyticFn;
use crate::error::Result;
use crate::normal::Fuel;
use crate::rat::Rat;
use crate::series::{HSeries, TensorSeries2};
use crate::word::GenId;

#[derive(Debug, Clone)]
pub enum Expr {
    Rat(Rat),
    Gen(GenId),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Neg(Box<Expr>),
    Scal(Rat, Box<Expr>),
    /// Multiply by `h^s`; `s` may be negative when the enclosing expression
    /// is exactly divisible (checked at evaluation time).
    HShift(i32, Box<Expr>),
    Apply(AnalyticFn, Box<Expr>),
    /// `{a, b} = ab + ba`.
    AntiComm(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone)]
pub enum TExpr {
    Tensor(Expr, Expr),
    Add(Vec<TExpr>),
    Scal(Rat, Box<TExpr>),
    HShift(i32, Box<TExpr>),
}

impl Expr {
    pub fn gen(id: u8) -> Expr {
        Expr::Gen(GenId(id))
    }

    pub fn scal(c: Rat, e: Expr) -> Expr {
        Expr::Scal(c, Box::new(e))
    }

    pub fn neg(e: Expr) -> Expr {
        Expr::Neg(Box::new(e))
    }

    pub fn hshift(s: i32, e: Expr) -> Expr {
        Expr::HShift(s, Box::new(e))
    }

    pub fn apply(f: AnalyticFn, e: Expr) -> Expr {
        Expr::Apply(f, Box::new(e))
    }

    pub fn anticomm(a: Expr, b: Expr) -> Expr {
        Expr::AntiComm(Box::new(a), Box::new(b))
    }

    /// `f(c * h * g)` — the ubiquitous hyperbolic-of-generator pattern.
    pub fn hyp(f: AnalyticFn, c: Rat, g: u8) -> Expr {
        Expr::apply(f, Expr::hshift(1, Expr::scal(c, Expr::gen(g))))
    }
}

pub fn eval_expr(def: &Arc<AlgebraDef>, e: &Expr, order: u32, fuel: &Fuel) -> Result<HSeries> {
    match e {
        Expr::Rat(c) => Ok(HSeries::scalar(def, order, c.clone())),
        Expr::Gen(g) => HSeries::gen(def, *g, order),
        Expr::Add(es) => {
            let mut acc = HSeries::zero(def, order);
            for e in es {
                acc = acc.add(&eval_expr(def, e, order, fuel)?)?;
            }
            Ok(acc)
        }
        Expr::Mul(es) => {
            let mut acc = HSeries::one(def, order);
            for e in es {
                acc = acc.mul(&eval_expr(def, e, order, fuel)?)?;
            }
            Ok(acc)
        }
        Expr::Neg(e) => Ok(eval_expr(def, e, order, fuel)?.neg()),
        Expr::Scal(c, e) => Ok(eval_expr(def, e, order, fuel)?.scal(c)),
        Expr::HShift(s, e) => {
            let inner_order = (order as i64 - *s as i64).max(0) as u32;
            let inner = eval_expr(def, e, inner_order, fuel)?;
            if *s >= 0 {
                inner.extended(order).shift(*s as i64)
            } else {
                // Evaluated above the target so the downward shift is exact.
                Ok(inner.shift(*s as i64)?.truncated(order))
            }
        }
        Expr::Apply(f, e) => HSeries::analytic_apply(f, &eval_expr(def, e, order, fuel)?),
        Expr::AntiComm(a, b) => {
            let a = eval_expr(def, a, order, fuel)?;
            let b = eval_expr(def, b, order, fuel)?;
            a.mul(&b)?.add(&b.mul(&a)?)
        }
    }
}

pub fn eval_texpr(def: &Arc<AlgebraDef>, e: &TExpr, order: u32, fuel: &Fuel) -> Result<TensorSeries2> {
    match e {
        TExpr::Tensor(a, b) => {
            let a = eval_expr(def, a, order, fuel)?;
            let b = eval_expr(def, b, order, fuel)?;
            Ok(outer2(&a, &b))
        }
        TExpr::Add(es) => {
            let mut acc = TensorSeries2::zero(def, order);
            for e in es {
                acc = acc.add(&eval_texpr(def, e, order, fuel)?)?;
            }
            Ok(acc)
        }
        TExpr::Scal(c, e) => Ok(eval_texpr(def, e, order, fuel)?.scal(c)),
        TExpr::HShift(s, e) => {
            let inner_order = (order as i64 - *s as i64).max(0) as u32;
            let inner = eval_texpr(def, e, inner_order, fuel)?;
            if *s >= 0 {
                inner.extended(order).shift(*s as i64)
            } else {
                Ok(inner.shift(*s as i64)?.truncated(order))
            }
        }
    }
}

/// Outer product `a ⊗ b` of two single-slot series, h-orders adding.
pub fn outer2(a: &HSeries, b: &HSeries) -> TensorSeries2 {
    let order = a.order();
    let mut out = TensorSeries2::zero(a.algebra(), order);
    for (ka, pa) in a.coeffs().iter().enumerate() {
        if pa.is_zero() {
            continue;
        }
        for (kb, pb) in b.coeffs().iter().enumerate() {
            if ka + kb > order as usize {
                break;
            }
            for (wa, ca) in pa.word_iter() {
                for (wb, cb) in pb.word_iter() {
                    out.coeffs[ka + kb].insert([wa.clone(), wb.clone()], ca * cb);
                }
            }
        }
    }
    out
}
