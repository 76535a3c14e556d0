//! The Fay-type identity among k_P, k_Q and k′_{±(P−Q)}(0,0,·), as a bivariate jet.

use num_complex::Complex64;

use crate::error::Result;
use crate::modforms::kronecker::k_at_origin;
use crate::modforms::{kp_jets, BiSeries, LaurentJet, Precision};
use crate::torsion::TorsionPoint;

type C = Complex64;

#[derive(Clone, Copy, Debug)]
pub struct FayResidual {
    /// max |coefficient| of the cleared identity
    pub absolute: f64,
    /// same, each coefficient divided by max(1, largest contributing term)
    pub relative: f64,
}

/// u k(u) + 1 = u (k(u) + 1/u).
fn times_u_plus_one(k: &LaurentJet) -> LaurentJet {
    k.shift(1).add(&LaurentJet::monomial(0, C::new(1.0, 0.0), k.order_max() + 1))
}

/// u² k′(u) − 1 = u² (k′(u) − 1/u²).
fn times_u2_minus_one(kp: &LaurentJet) -> LaurentJet {
    kp.shift(2).sub(&LaurentJet::monomial(0, C::new(1.0, 0.0), kp.order_max() + 2))
}

/// Multiplies the identity by x²y²(x+y) and expands to total degree `deg + 5`;
/// `scramble` flips the sign of one term (negative control).
pub fn fay_check(
    z: C,
    w: C,
    tau: C,
    p: &TorsionPoint,
    q: &TorsionPoint,
    deg: usize,
    scramble: bool,
    prec: &Precision,
) -> Result<FayResidual> {
    let total = deg + 5;
    let kp = kp_jets(z, w, tau, p, total + 1, prec)?.k;
    let kq = kp_jets(z, w, tau, q, total + 1, prec)?.k;
    let e_pq = k_at_origin(&p.sub(q), tau, total + 2, prec)?.derivative();
    let e_qp = k_at_origin(&q.sub(p), tau, total + 2, prec)?.derivative();

    let s1p = times_u_plus_one(&kp);
    let s1q = times_u_plus_one(&kq);
    let s2p = times_u2_minus_one(&kp.derivative());
    let s2q = times_u2_minus_one(&kq.derivative());
    let ep = times_u2_minus_one(&e_pq);
    let eq = times_u2_minus_one(&e_qp);

    let x = BiSeries::in_x(&LaurentJet::new(0, vec![C::new(0.0, 0.0), C::new(1.0, 0.0)]), total);
    let y = BiSeries::in_y(&LaurentJet::new(0, vec![C::new(0.0, 0.0), C::new(1.0, 0.0)]), total);
    let xy = x.add(&y);

    let t1 = BiSeries::in_y(&ep, total).mul(&BiSeries::in_sum(&s1q, total)).shift(2, 0);
    let t2 = BiSeries::in_x(&eq, total).mul(&BiSeries::in_sum(&s1p, total)).shift(0, 2).scale(C::new(-1.0, 0.0));
    let t3 = BiSeries::in_x(&s2q, total).mul(&BiSeries::in_y(&s1p, total)).mul(&xy).shift(0, 1);
    let t4 =
        BiSeries::in_y(&s2p, total).mul(&BiSeries::in_x(&s1q, total)).mul(&xy).shift(1, 0).scale(C::new(-1.0, 0.0));
    let t3 = if scramble { t3.scale(C::new(-1.0, 0.0)) } else { t3 };

    let terms = [t1, t2, t3, t4];
    let mut absolute = 0.0f64;
    let mut relative = 0.0f64;
    for i in 0..=total {
        for j in 0..=total - i {
            let s: C = terms.iter().map(|t| t.coeff(i, j)).sum();
            let scale = terms.iter().map(|t| t.coeff(i, j).norm()).fold(1.0, f64::max);
            absolute = absolute.max(s.norm());
            relative = relative.max(s.norm() / scale);
        }
    }
    Ok(FayResidual { absolute, relative })
}
