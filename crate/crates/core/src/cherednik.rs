//! Cherednik operators D_xi(k) acting on trigonometric polynomials, the
//! spectral (tilde) map, and exact eigenvalue verification.

use num_traits::{Signed, Zero};

use crate::rational::{rat, ratio, Rat};
use crate::rootsys::{dot_ii, dot_ir, Multiplicity, Point, Root, RootSystem, Weight};
use crate::trigpoly::TrigPoly;
use crate::Result;

/// The operator D_xi(k) = d_xi - <rho(k),xi> + sum k_a <a,xi> (1-s_a)/(1-e^{-a})
/// for a fixed direction xi, with rho cached.
pub struct CherednikOp<'a> {
    pub sys: &'a RootSystem,
    pub kappa: &'a Multiplicity,
    pub xi: Point,
    pub rho: Point,
}

impl<'a> CherednikOp<'a> {
    pub fn new(sys: &'a RootSystem, kappa: &'a Multiplicity, xi: Point) -> Self {
        let rho = sys.rho(kappa);
        CherednikOp {
            sys,
            kappa,
            xi,
            rho,
        }
    }

    /// D in the i-th coordinate direction.
    pub fn direction(sys: &'a RootSystem, kappa: &'a Multiplicity, i: usize) -> Self {
        let mut xi = Point::zero(sys.dim());
        xi.0[i] = rat(1);
        Self::new(sys, kappa, xi)
    }

    /// Applies the operator term by term.
    pub fn apply(&self, f: &TrigPoly) -> TrigPoly {
        let mut out = TrigPoly::zero(f.rank());
        let rho_xi = self.rho.dot(&self.xi);
        for (w, c) in f.terms() {
            // Derivative and constant part: (<w,xi> - <rho,xi>) c e^w.
            let scalar = dot_ir(&w.0, &self.xi) - &rho_xi;
            out.add_term(w.clone(), c * scalar);
            for root in self.sys.positive_roots() {
                let k = self.kappa.k(&root.orbit);
                if k.is_zero() {
                    continue;
                }
                let a_xi = dot_ir(&root.vec, &self.xi);
                if a_xi.is_zero() {
                    continue;
                }
                let dd = divided_difference(root, w);
                if dd.is_zero() {
                    continue;
                }
                let factor = k * a_xi * c;
                for (dw, dc) in dd.terms() {
                    out.add_term(dw.clone(), dc * &factor);
                }
            }
        }
        out
    }
}

/// Exact expansion of (1 - s_a)/(1 - e^{-a}) applied to e^w. With
/// m = <a^v, w>: a geometric string of m terms downward for m >= 1, zero for
/// m = 0, and minus a string of -m terms upward for m <= -1.
pub fn divided_difference(root: &Root, w: &Weight) -> TrigPoly {
    let m = dot_ii(&root.coroot, &w.0);
    let mut out = TrigPoly::zero(w.rank());
    if m >= 1 {
        let mut cur = w.clone();
        for _ in 0..m {
            out.add_term(cur.clone(), rat(1));
            cur = Weight(cur.0.iter().zip(&root.vec).map(|(x, a)| x - a).collect());
        }
    } else if m <= -1 {
        let mut cur = Weight(w.0.iter().zip(&root.vec).map(|(x, a)| x + a).collect());
        for _ in 0..(-m) {
            out.add_term(cur.clone(), rat(-1));
            cur = Weight(cur.0.iter().zip(&root.vec).map(|(x, a)| x + a).collect());
        }
    }
    out
}

/// Spectral vector of a weight: lambda plus the epsilon-signed half sum of
/// weighted positive roots, with epsilon(t) = 1 for t > 0 and -1 for t <= 0.
pub fn tilde(sys: &RootSystem, kappa: &Multiplicity, lambda: &Weight) -> Point {
    let mut acc = Point::zero(sys.dim());
    for root in sys.positive_roots() {
        let k = kappa.k(&root.orbit);
        if k.is_zero() {
            continue;
        }
        let sign = if dot_ii(&root.vec, &lambda.0) > 0 {
            1
        } else {
            -1
        };
        for (a, c) in acc.0.iter_mut().zip(&root.vec) {
            *a += k * rat(sign * c);
        }
    }
    lambda.to_point().add(&acc.scale(&ratio(1, 2)))
}

/// Sign convention used throughout: epsilon(t) = 1 for t > 0 and -1 for
/// t <= 0.
pub fn epsilon_i64(t: i64) -> i64 {
    if t > 0 {
        1
    } else {
        -1
    }
}

pub fn epsilon_rat(t: &Rat) -> i64 {
    if t.is_positive() {
        1
    } else {
        -1
    }
}

/// True iff E is a joint eigenfunction of all coordinate Cherednik
/// operators with the spectral vector of lambda, as an exact identity.
pub fn check_eigen(
    sys: &RootSystem,
    kappa: &Multiplicity,
    lambda: &Weight,
    poly: &TrigPoly,
) -> Result<bool> {
    if poly.is_zero() {
        return Ok(false);
    }
    let spectral = tilde(sys, kappa, lambda);
    for i in 0..sys.dim() {
        let op = CherednikOp::direction(sys, kappa, i);
        let lhs = op.apply(poly);
        let rhs = poly.scale(&spectral.0[i]);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;
    use crate::trigpoly::monomial_symmetric;
    use num_traits::One;

    fn w(coords: &[i64]) -> Weight {
        Weight(coords.to_vec())
    }

    #[test]
    fn divided_difference_strings() {
        let sys = RootSystem::new(Family::BC, 2).unwrap();
        let alpha = sys.find_positive_root(&[1, -1]).unwrap();
        // m = 0: fixed weight.
        assert!(divided_difference(alpha, &w(&[2, 2])).is_zero());
        // m = 1: single term e^w.
        let d = divided_difference(alpha, &w(&[1, 0]));
        assert_eq!(d, TrigPoly::monomial(w(&[1, 0]), rat(1)));
        // m = -1: -e^{w+a}.
        let d = divided_difference(alpha, &w(&[0, 1]));
        assert_eq!(d, TrigPoly::monomial(w(&[1, 0]), rat(-1)));
        // m = 2 on the short root e_1: e^w + e^{w-a}.
        let e1 = sys.find_positive_root(&[1, 0]).unwrap();
        let d = divided_difference(e1, &w(&[1, 0]));
        let expect = TrigPoly::monomial(w(&[1, 0]), rat(1))
            .add(&TrigPoly::monomial(w(&[0, 0]), rat(1)))
            .unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn apply_on_constants() {
        let sys = RootSystem::new(Family::BC, 1).unwrap();
        let kappa = Multiplicity::bc(rat(1), rat(0), rat(0));
        let op = CherednikOp::direction(&sys, &kappa, 0);
        // Only -<rho,xi> survives on the constant 1; rho = (k1+2k2)/2 = 1/2.
        assert_eq!(
            op.apply(&TrigPoly::one(1)),
            TrigPoly::monomial(w(&[0]), ratio(-1, 2))
        );
        let zero = Multiplicity::zero_for(&sys);
        let op0 = CherednikOp::direction(&sys, &zero, 0);
        assert!(op0.apply(&TrigPoly::one(1)).is_zero());
    }

    #[test]
    fn tilde_examples() {
        let sys = RootSystem::new(Family::BC, 1).unwrap();
        let kappa = Multiplicity::bc(rat(1), rat(0), rat(0));
        // epsilon(0) = -1 on every positive root, so tilde(0) = -rho.
        assert_eq!(tilde(&sys, &kappa, &w(&[0])), sys.rho(&kappa).neg());
        assert_eq!(tilde(&sys, &kappa, &w(&[-1])), Point(vec![ratio(-3, 2)]));
        // Middle-root-only multiplicity, checked against the operator below.
        let sys2 = RootSystem::new(Family::BC, 2).unwrap();
        let kappa2 = Multiplicity::bc(rat(0), rat(0), rat(1));
        let t = tilde(&sys2, &kappa2, &w(&[1, 0]));
        assert_eq!(t, Point(vec![rat(2), rat(0)]));
        // Cross-check: e^{(1,0)} is the eigenfunction here (k1 = k2 = 0
        // kills the affine recursion constant), so its eigenvalues are the
        // tilde coordinates.
        let e = TrigPoly::monomial(w(&[1, 0]), Rat::one());
        assert!(check_eigen(&sys2, &kappa2, &w(&[1, 0]), &e).unwrap());
    }

    #[test]
    fn eigen_examples() {
        let sys = RootSystem::new(Family::BC, 1).unwrap();
        let kappa = Multiplicity::bc(rat(1), rat(0), rat(0));
        assert!(check_eigen(&sys, &kappa, &w(&[0]), &TrigPoly::one(1)).unwrap());
        // Worked polynomial E_{-1} = e^{-x} + e^x/3 + 2/3 with eigenvalue -3/2.
        let mut e = TrigPoly::zero(1);
        e.add_term(w(&[-1]), rat(1));
        e.add_term(w(&[1]), ratio(1, 3));
        e.add_term(w(&[0]), ratio(2, 3));
        assert!(check_eigen(&sys, &kappa, &w(&[-1]), &e).unwrap());
        let op = CherednikOp::direction(&sys, &kappa, 0);
        assert_eq!(op.apply(&e), e.scale(&ratio(-3, 2)));
        // A bare exponential of a non-minuscule weight is not an
        // eigenfunction once k is nonzero.
        let bare = TrigPoly::monomial(w(&[-1]), Rat::one());
        assert!(!check_eigen(&sys, &kappa, &w(&[-1]), &bare).unwrap());
    }

    #[test]
    fn product_system_operator_decomposition() {
        // Over a product with a trivial coordinate, D_xi splits into the
        // plain derivative along the root-free direction plus the operators
        // in the factor-projected directions.
        let sys = RootSystem::product(&[(Family::BC, 1), (Family::BC, 1)], 1).unwrap();
        let kappa = Multiplicity::new(vec![
            crate::rootsys::BlockKappa::BC {
                k1: rat(1),
                k2: ratio(1, 2),
                k3: rat(0),
            },
            crate::rootsys::BlockKappa::BC {
                k1: rat(2),
                k2: rat(0),
                k3: rat(0),
            },
        ]);
        let xi = Point(vec![ratio(1, 3), rat(-2), ratio(5, 7)]);
        let mut f = TrigPoly::zero(3);
        f.add_term(w(&[1, -1, 2]), ratio(2, 5));
        f.add_term(w(&[0, 2, -1]), rat(3));
        f.add_term(w(&[-2, 0, 0]), rat(-1));
        let full = CherednikOp::new(&sys, &kappa, xi.clone()).apply(&f);
        // Derivative along the complement projection of xi.
        let xi_c = sys.project_complement(&xi);
        let mut rhs = TrigPoly::zero(3);
        for (mu, c) in f.terms() {
            rhs.add_term(mu.clone(), c * dot_ir(&mu.0, &xi_c));
        }
        for block in 0..2 {
            let mut xi_i = Point::zero(3);
            xi_i.0[block] = xi.0[block].clone();
            rhs = rhs
                .add(&CherednikOp::new(&sys, &kappa, xi_i).apply(&f))
                .unwrap();
        }
        assert_eq!(full, rhs);
    }

    #[test]
    fn operators_commute_and_leibniz() {
        let sys = RootSystem::new(Family::BC, 2).unwrap();
        let kappa = Multiplicity::bc(ratio(1, 2), ratio(1, 3), rat(2));
        let d1 = CherednikOp::direction(&sys, &kappa, 0);
        let d2 = CherednikOp::direction(&sys, &kappa, 1);
        let mut f = TrigPoly::zero(2);
        f.add_term(w(&[1, -2]), ratio(3, 5));
        f.add_term(w(&[0, 1]), rat(-2));
        f.add_term(w(&[2, 2]), rat(1));
        assert_eq!(d1.apply(&d2.apply(&f)), d2.apply(&d1.apply(&f)));
        // Leibniz against a W-invariant factor g: D(fg) = (Df)g + f dg.
        let g = monomial_symmetric(&sys, &w(&[1, 0]));
        let lhs = d1.apply(&f.mul(&g).unwrap());
        // d_xi g for g = sum e^mu is sum <mu,xi> e^mu.
        let mut dg = TrigPoly::zero(2);
        for (mu, c) in g.terms() {
            dg.add_term(mu.clone(), c * rat(mu.0[0]));
        }
        let rhs = d1
            .apply(&f)
            .mul(&g)
            .unwrap()
            .add(&f.mul(&dg).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}
