//! Exact Taylor data for the analytic functions used by the algebra tables
//! and the R-matrix exponents.
//!
//! The coefficients of `x/sinh(x)` are never tabulated by hand: they are
//! obtained by inverting the series of `sinh(x)/x` (whose coefficients
//! `1/(2k+1)!` are forced), and every extension of the table re-checks the
//! product against 1. `d/dx (x/sinh x)` reuses that table.

use std::sync::Mutex;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::rat::{inv_factorial, rat_i, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalyticFn {
    Exp,
    Sinh,
    Cosh,
    /// `sinh(x)/x`, an even invertible series.
    SinhXOverX,
    /// `x/sinh(x)`, computed by series inversion of [`AnalyticFn::SinhXOverX`].
    XOverSinhX,
    /// `d/dx (x/sinh x)`, the odd series `(sinh x - x cosh x)/sinh^2 x`.
    DXOverSinhX,
}

impl AnalyticFn {
    pub fn name(&self) -> &'static str {
        match self {
            AnalyticFn::Exp => "exp",
            AnalyticFn::Sinh => "sinh",
            AnalyticFn::Cosh => "cosh",
            AnalyticFn::SinhXOverX => "sinh(x)/x",
            AnalyticFn::XOverSinhX => "x/sinh(x)",
            AnalyticFn::DXOverSinhX => "d/dx x/sinh(x)",
        }
    }

    /// Exact Taylor coefficient of `x^k`. Requesting a coefficient twice
    /// yields identical values.
    pub fn coeff(&self, k: usize) -> Rat {
        match self {
            AnalyticFn::Exp => inv_factorial(k),
            AnalyticFn::Sinh => {
                if k % 2 == 1 {
                    inv_factorial(k)
                } else {
                    Rat::zero()
                }
            }
            AnalyticFn::Cosh => {
                if k % 2 == 0 {
                    inv_factorial(k)
                } else {
                    Rat::zero()
                }
            }
            AnalyticFn::SinhXOverX => {
                if k % 2 == 0 {
                    inv_factorial(k + 1)
                } else {
                    Rat::zero()
                }
            }
            AnalyticFn::XOverSinhX => x_over_sinh_coeff(k),
            AnalyticFn::DXOverSinhX => x_over_sinh_coeff(k + 1) * rat_i((k + 1) as i64),
        }
    }
}

fn x_over_sinh_table() -> &'static Mutex<Vec<Rat>> {
    static TABLE: OnceLock<Mutex<Vec<Rat>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![rat_i(1)]))
}

/// Coefficient of `x^k` in the inverse of `sinh(x)/x`, extended on demand.
fn x_over_sinh_coeff(k: usize) -> Rat {
    let table = x_over_sinh_table();
    let mut g = table.lock().unwrap();
    while g.len() <= k {
        let n = g.len();
        // g_n = -sum_{j=1..n} s_j g_{n-j}, with s the coefficients of sinh(x)/x.
        let mut acc = Rat::zero();
        for j in 1..=n {
            let s = AnalyticFn::SinhXOverX.coeff(j);
            if !s.is_zero() {
                acc += s * &g[n - j];
            }
        }
        g.push(-acc);
        // Inversion self-check: the convolution with sinh(x)/x must be exactly
        // the delta at order 0 for every order computed so far.
        let n = g.len() - 1;
        let mut conv = Rat::zero();
        for i in 0..=n {
            let s = AnalyticFn::SinhXOverX.coeff(n - i);
            if !s.is_zero() {
                conv += s * &g[i];
            }
        }
        let expect = if n == 0 { rat_i(1) } else { Rat::zero() };
        assert_eq!(conv, expect, "x/sinh(x) inversion failed at order {n}");
    }
    g[k].clone()
}

/// Round-trip check `(x/sinh x) * (sinh x / x) = 1` through order `k_max`.
/// Returns the verified coefficients of `x/sinh x`.
pub fn validate_x_over_sinh(k_max: usize) -> Vec<Rat> {
    let g: Vec<Rat> = (0..=k_max).map(x_over_sinh_coeff).collect();
    for n in 0..=k_max {
        let mut conv = Rat::zero();
        for i in 0..=n {
            conv += AnalyticFn::SinhXOverX.coeff(n - i) * &g[i];
        }
        let expect = if n == 0 { rat_i(1) } else { Rat::zero() };
        assert_eq!(conv, expect);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    #[test]
    fn x_over_sinh_low_orders() {
        // Oracle: invert 1 + x^2/6 + x^4/120 and confirm the product is 1.
        let g = validate_x_over_sinh(10);
        assert_eq!(g[0], rat_i(1));
        assert_eq!(g[1], rat_i(0));
        assert_eq!(g[2], ratio(-1, 6));
        assert_eq!(g[4], ratio(7, 360));
        assert_eq!(g[6], ratio(-31, 15120));
    }

    #[test]
    fn derivative_of_x_over_sinh() {
        // d/dx (x/sinh x) = -x/3 + 7x^3/90 - ...
        assert_eq!(AnalyticFn::DXOverSinhX.coeff(0), rat_i(0));
        assert_eq!(AnalyticFn::DXOverSinhX.coeff(1), ratio(-1, 3));
        assert_eq!(AnalyticFn::DXOverSinhX.coeff(3), ratio(7, 90));
    }

    #[test]
    fn hyperbolic_coeffs() {
        assert_eq!(AnalyticFn::Sinh.coeff(3), ratio(1, 6));
        assert_eq!(AnalyticFn::Sinh.coeff(2), rat_i(0));
        assert_eq!(AnalyticFn::Cosh.coeff(4), ratio(1, 24));
        assert_eq!(AnalyticFn::Exp.coeff(2), ratio(1, 2));
    }
}
