//! Hopf-axiom verification with exact-zero residuals: coassociativity, the
//! counit axiom, the antipode axiom, and compatibility of the coproduct with
//! every commutator.

use std::sync::Arc;

use crate::algebra::AlgebraDef;
use crate::error::Result;
use crate::rmatrix::CheckReport;
use crate::series::HSeries;
use crate::tensor::{antipode_convolution, counit_slot, delta_series, extend_delta, Side};

#[derive(Debug, Clone)]
pub struct HopfReport {
    pub algebra: String,
    pub order: u32,
    pub axioms: Vec<CheckReport>,
}

impl HopfReport {
    pub fn pass(&self) -> bool {
        self.axioms.iter().all(|a| a.pass)
    }

    pub fn failures(&self) -> Vec<&CheckReport> {
        self.axioms.iter().filter(|a| !a.pass).collect()
    }
}

/// Check every Hopf axiom on every generator (and every generator pair for
/// the coproduct-homomorphism law). Failures are report entries, never
/// errors.
pub fn verify_hopf(def: &Arc<AlgebraDef>, order: u32) -> Result<HopfReport> {
    let mut axioms = Vec::new();

    for g in def.gen_ids() {
        let name = def.gen_name(g).to_string();
        let dg = def.coproduct(g, order)?;

        // (Delta x id) Delta = (id x Delta) Delta
        let left = extend_delta(Side::Left, &dg)?;
        let right = extend_delta(Side::Right, &dg)?;
        axioms.push(CheckReport::from_residual(&format!("coassociativity({name})"), &left.sub(&right)?));

        // (eps x id) Delta = id = (id x eps) Delta
        let gs = HSeries::gen(def, g, order)?;
        let lhs = counit_slot(Side::Left, &dg)?.sub(&gs)?;
        let rhs = counit_slot(Side::Right, &dg)?.sub(&gs)?;
        let mut rep = CheckReport::from_residual(&format!("counit({name})"), &lhs);
        if rep.pass {
            rep = CheckReport::from_residual(&format!("counit({name})"), &rhs);
        }
        axioms.push(rep);

        // m (gamma x id) Delta = eps(g) 1 = m (id x gamma) Delta
        let target = HSeries::scalar(def, order, def.counit(g)?);
        let lhs = antipode_convolution(Side::Left, &dg)?.sub(&target)?;
        let rhs = antipode_convolution(Side::Right, &dg)?.sub(&target)?;
        let mut rep = CheckReport::from_residual(&format!("antipode({name})"), &lhs);
        if rep.pass {
            rep = CheckReport::from_residual(&format!("antipode({name})"), &rhs);
        }
        axioms.push(rep);
    }

    // Delta([x, y]) = [Delta x, Delta y] for every generator pair.
    for x in def.gen_ids() {
        for y in def.gen_ids() {
            if x >= y {
                continue;
            }
            let lhs = delta_series(&def.commutator(x, y, order)?)?;
            let dx = def.coproduct(x, order)?;
            let dy = def.coproduct(y, order)?;
            let rhs = dx.mul(&dy)?.sub(&dy.mul(&dx)?)?;
            axioms.push(CheckReport::from_residual(
                &format!("coproduct_hom([{}, {}])", def.gen_name(x), def.gen_name(y)),
                &lhs.sub(&rhs)?,
            ));
        }
    }

    Ok(HopfReport { algebra: def.name.clone(), order, axioms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{sl2h, so4h};

    #[test]
    fn sl2h_hopf_axioms_pass() {
        let report = verify_hopf(&sl2h(), 5).unwrap();
        assert!(report.pass(), "failures: {:?}", report.failures());
    }

    #[test]
    fn so4h_hopf_axioms_pass_low_order() {
        let report = verify_hopf(&so4h(), 3).unwrap();
        assert!(report.pass(), "failures: {:?}", report.failures());
    }

    #[test]
    fn flipped_coproduct_mutation_breaks_homomorphism() {
        let def = crate::mutants::sl2h_flipped_delta_j3();
        let report = verify_hopf(&def, 2).unwrap();
        assert!(!report.pass());
        let failing: Vec<&str> = report.failures().iter().map(|f| f.name.as_str()).collect();
        assert!(
            failing.iter().any(|n| n.contains("coproduct_hom")),
            "expected a coproduct-homomorphism failure, got {failing:?}"
        );
        let hom_fail = report
            .failures()
            .into_iter()
            .find(|f| f.name.contains("coproduct_hom"))
            .unwrap();
        assert_eq!(hom_fail.first_nonzero_order, Some(1));
    }
}
