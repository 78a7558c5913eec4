use hdeform::algebra::sl2h;
use hdeform::rmatrix::{build_r, r_exponent, RSpec, Route};
use std::time::Instant;

fn main() {
    let def = sl2h();
    for k in [6u32, 8, 10] {
        let t = Instant::now();
        let e = r_exponent(&def, k).unwrap();
        println!("exponent K={k}: {:?} ({} terms)", t.elapsed(), e.term_count());
        let t = Instant::now();
        let rm = build_r(&RSpec { algebra: def.clone(), route: Route::DirectExponent, order: k }).unwrap();
        println!("build_r K={k}: {:?} (R has {} terms)", t.elapsed(), rm.r.term_count());
        let t = Instant::now();
        let dg = def.coproduct(hdeform::GenId(2), k).unwrap();
        let prod = rm.r.mul(&dg).unwrap();
        println!("R*dJm K={k}: {:?} ({} terms)", t.elapsed(), prod.term_count());
    }
}
