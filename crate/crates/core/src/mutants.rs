//! Deliberately broken fixtures for sensitivity testing: each mutation must
//! make at least one verification check fail with a reported first nonzero
//! order, demonstrating that the checks are not vacuous.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{gens::sl2, gens::so4, AlgebraDef, Gen};
use crate::analytic::AnalyticFn;
use crate::error::Result;
use crate::expr::{Expr, TExpr};
use crate::rat::{rat_i, ratio};
use crate::rmatrix::{antisymmetrized_coproduct, RMatrix};
use crate::series::{HSeries, TensorSeries2};
use crate::word::GenId;

/// sl2h with the sign of the h-linear term in Delta(J3) flipped:
/// Delta(J3) - 2h (J3 ⊗ J+ - J+ ⊗ J3).
pub fn sl2h_flipped_delta_j3() -> Arc<AlgebraDef> {
    let base = crate::algebra::sl2h();
    let mut brackets = BTreeMap::new();
    brackets.insert(
        (sl2::JP, sl2::J3),
        Expr::neg(Expr::hshift(-1, Expr::scal(rat_i(2), Expr::hyp(AnalyticFn::Sinh, rat_i(1), sl2::JP)))),
    );
    brackets.insert((sl2::JP, sl2::JM), Expr::gen(sl2::J3));
    brackets.insert(
        (sl2::J3, sl2::JM),
        Expr::neg(Expr::anticomm(Expr::hyp(AnalyticFn::Cosh, rat_i(1), sl2::JP), Expr::gen(sl2::JM))),
    );
    let twisted = |x: u8| {
        TExpr::Add(vec![
            TExpr::Tensor(Expr::gen(x), Expr::hyp(AnalyticFn::Exp, rat_i(1), sl2::JP)),
            TExpr::Tensor(Expr::hyp(AnalyticFn::Exp, rat_i(-1), sl2::JP), Expr::gen(x)),
        ])
    };
    let primitive = TExpr::Add(vec![
        TExpr::Tensor(Expr::gen(sl2::JP), Expr::Rat(rat_i(1))),
        TExpr::Tensor(Expr::Rat(rat_i(1)), Expr::gen(sl2::JP)),
    ]);
    let flipped_j3 = TExpr::Add(vec![
        twisted(sl2::J3),
        TExpr::HShift(
            1,
            Box::new(TExpr::Scal(
                rat_i(-2),
                Box::new(TExpr::Add(vec![
                    TExpr::Tensor(Expr::gen(sl2::J3), Expr::gen(sl2::JP)),
                    TExpr::Scal(rat_i(-1), Box::new(TExpr::Tensor(Expr::gen(sl2::JP), Expr::gen(sl2::J3)))),
                ])),
            )),
        ),
    ]);
    let antipode = |x: u8| {
        Expr::neg(Expr::Mul(vec![
            Expr::hyp(AnalyticFn::Exp, rat_i(1), sl2::JP),
            Expr::gen(x),
            Expr::hyp(AnalyticFn::Exp, rat_i(-1), sl2::JP),
        ]))
    };
    AlgebraDef::new_explicit(
        "sl2h_mut_dj3",
        "sl2h with the h-term sign of Delta(J3) flipped (validation fixture)",
        ("h", "h"),
        base.gen_ids().map(|g| Gen { name: base.gen_name(g).into(), latex: base.gen_latex(g).into() }).collect(),
        brackets,
        vec![primitive, flipped_j3, twisted(sl2::JM)],
        vec![antipode(sl2::JP), antipode(sl2::J3), antipode(sl2::JM)],
    )
}

/// Zero one h-coefficient of a built R matrix (exponent left untouched).
pub fn with_zeroed_r_coefficient(rm: &RMatrix, k: u32) -> RMatrix {
    let mut coeffs = rm.r.coeffs().clone();
    coeffs[k as usize] = Default::default();
    let r = TensorSeries2::from_coeffs(&rm.algebra, rm.order, coeffs);
    RMatrix { r, ..rm.clone() }
}

/// Case-2 exponent built with the wrong denominator
/// `1 - cosh((h/2) N+)` instead of `1 - cosh(h N+)`. The division still
/// succeeds, so this produces a structurally wrong R rather than an error.
pub fn case2_wrong_denominator(def: &Arc<AlgebraDef>, order: u32) -> Result<RMatrix> {
    let half = ratio(1, 2);
    let xn = HSeries::gen(def, GenId(so4::NP), order)?.scal(&half).extended(order).shift(1)?.truncated(order);
    let sn = HSeries::analytic_apply(&AnalyticFn::Sinh, &xn)?;
    let cn = HSeries::analytic_apply(&AnalyticFn::Cosh, &xn)?;
    let den_wrong = HSeries::one(def, order).sub(&HSeries::analytic_apply(&AnalyticFn::Cosh, &xn)?)?;
    let jp = HSeries::gen(def, GenId(so4::JP), order)?;
    let num_j = xn.mul(&sn)?.neg();
    let num_n = xn.mul(&jp)?.mul(&cn)?.sub(&jp.mul(&sn)?)?.scal(&half).extended(order).shift(1)?.truncated(order);
    let a = crate::series::series_div_exact(&num_j, &den_wrong)?;
    let b = crate::series::series_div_exact(&num_n, &den_wrong)?;
    let x_j = HSeries::gen(def, GenId(so4::J3), order)?.mul(&a)?;
    let x_n = HSeries::gen(def, GenId(so4::N3), order)?.mul(&b)?;
    let exponent = antisymmetrized_coproduct(&x_j.add(&x_n)?)?;
    let r = TensorSeries2::exp(&exponent)?;
    let r_inv = TensorSeries2::exp(&exponent.neg())?;
    Ok(RMatrix {
        algebra: def.clone(),
        route: crate::rmatrix::Route::ContractedClosedForm,
        order,
        exponent,
        r,
        r_inv,
    })
}
