//! Boundedness region of the kernel: membership in the convex hull of the
//! Weyl orbit of rho(k) plus imaginary shifts, and the comparison constants
//! c_lambda along reduced words.

use num_traits::{One, Signed};

use crate::rational::Rat;
use crate::rootsys::{dot_ir, Multiplicity, Point, RootSystem};
use crate::{Error, Result};

/// A complex spectral parameter split into exact real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralParameter {
    pub re: Point,
    pub im: Point,
}

impl SpectralParameter {
    pub fn new(re: Point, im: Point) -> Result<Self> {
        if re.rank() != im.rank() {
            return Err(Error::RankMismatch(re.rank(), im.rank()));
        }
        Ok(SpectralParameter { re, im })
    }

    pub fn real(re: Point) -> Self {
        let n = re.rank();
        SpectralParameter {
            re,
            im: Point::zero(n),
        }
    }
}

/// Membership of x in the convex hull of the Weyl orbit of rho(kappa):
/// the component orthogonal to the root span must vanish and
/// rho - dominant_rep(x) must expand nonnegatively in the simple roots.
pub fn in_convex_hull_of_orbit(sys: &RootSystem, kappa: &Multiplicity, x: &Point) -> Result<bool> {
    if !kappa.is_nonnegative() {
        return Err(Error::NegativeMultiplicity);
    }
    if !sys.project_complement(x).is_zero() {
        return Ok(false);
    }
    let rho = sys.rho(kappa);
    let (dominant, _) = sys.dominant_rep(x);
    match sys.expand_in_simple_roots(&rho.sub(&dominant)) {
        None => Ok(false),
        Some(coeffs) => Ok(coeffs.iter().all(|c| !c.is_negative())),
    }
}

/// The kernel at spectral parameter lambda is bounded iff the real part
/// lies in the hull; the imaginary part is unconstrained.
pub fn is_bounded_spectral(
    sys: &RootSystem,
    kappa: &Multiplicity,
    lambda: &SpectralParameter,
) -> Result<bool> {
    in_convex_hull_of_orbit(sys, kappa, &lambda.re)
}

/// Comparison constant along a reduced word w = s_{i_1} ... s_{i_r} applied
/// to a strictly dominant point: the product of 1 + k_{i_j} / <point on the
/// path, coroot>. Every pairing on the path must be positive, which is
/// exactly reducedness for regular dominant points.
pub fn hf_constant(
    sys: &RootSystem,
    kappa: &Multiplicity,
    lambda: &Point,
    word: &[usize],
) -> Result<Rat> {
    let mut acc = Rat::one();
    let mut cur = lambda.clone();
    for &letter in word.iter().rev() {
        if letter == 0 || letter > sys.rank() {
            return Err(Error::Parse(format!("letter {letter} is not simple")));
        }
        let root = sys.simple_root(letter);
        let pairing = dot_ir(&root.coroot, &cur);
        if !pairing.is_positive() {
            return Err(Error::NotReducedWord);
        }
        let k = kappa.hecke_k(sys, letter)?;
        acc *= Rat::one() + k / &pairing;
        cur = RootSystem::reflect_point_by_root(root, &cur);
    }
    Ok(acc)
}

/// Values of the comparison constant along the dilation t -> t lambda; the
/// product tends to one as t grows.
pub fn scaling_limit_check(
    sys: &RootSystem,
    kappa: &Multiplicity,
    lambda: &Point,
    word: &[usize],
    t_list: &[Rat],
) -> Result<Vec<(Rat, Rat)>> {
    let mut out = Vec::with_capacity(t_list.len());
    for t in t_list {
        if !t.is_positive() {
            return Err(Error::Parse("dilation factors must be positive".into()));
        }
        let c = hf_constant(sys, kappa, &lambda.scale(t), word)?;
        out.push((t.clone(), c));
    }
    Ok(out)
}

/// Longest-word letters for the hull-spanning tests: repeated dominant
/// descent from the antidominant representative of a regular point.
pub fn reduced_word_to_dominant(sys: &RootSystem, x: &Point) -> (Point, Vec<usize>) {
    let mut cur = x.clone();
    let mut letters = Vec::new();
    'outer: loop {
        for i in 1..=sys.rank() {
            let root = sys.simple_root(i);
            if dot_ir(&root.vec, &cur).is_negative() {
                cur = RootSystem::reflect_point_by_root(root, &cur);
                letters.push(i);
                continue 'outer;
            }
        }
        letters.reverse();
        return (cur, letters);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use crate::rootsys::Family;

    fn pt(coords: &[(i64, i64)]) -> Point {
        Point(coords.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    #[test]
    fn hull_rank_one() {
        let sys = RootSystem::new(Family::BC, 1).unwrap();
        let kappa = Multiplicity::bc(rat(1), rat(0), rat(0));
        // rho = 1/2; the hull is [-1/2, 1/2].
        assert!(in_convex_hull_of_orbit(&sys, &kappa, &pt(&[(0, 1)])).unwrap());
        assert!(in_convex_hull_of_orbit(&sys, &kappa, &pt(&[(1, 2)])).unwrap());
        assert!(in_convex_hull_of_orbit(&sys, &kappa, &pt(&[(-1, 2)])).unwrap());
        assert!(!in_convex_hull_of_orbit(&sys, &kappa, &pt(&[(1, 1)])).unwrap());
        assert!(!in_convex_hull_of_orbit(&sys, &kappa, &pt(&[(-2, 3)])).unwrap());
    }

    #[test]
    fn hull_vertices_and_scaling() {
        let sys = RootSystem::new(Family::BC, 2).unwrap();
        let kappa = Multiplicity::bc(rat(1), rat(1), rat(1));
        let rho = sys.rho(&kappa);
        for word in sys.weyl_elements(100).unwrap() {
            let mut v = rho.clone();
            for &i in word.iter().rev() {
                v = RootSystem::reflect_point_by_root(sys.simple_root(i), &v);
            }
            assert!(in_convex_hull_of_orbit(&sys, &kappa, &v).unwrap());
        }
        // Convexity toward the interior point 0.
        let half = rho.scale(&ratio(1, 2));
        assert!(in_convex_hull_of_orbit(&sys, &kappa, &half).unwrap());
        let double = rho.scale(&rat(2));
        assert!(!in_convex_hull_of_orbit(&sys, &kappa, &double).unwrap());
    }

    #[test]
    fn hull_needs_span_component_only() {
        // For A_2 in R^3 the hull lies in the sum-zero plane.
        let sys = RootSystem::new(Family::A, 3).unwrap();
        let kappa = Multiplicity::a(rat(1));
        assert!(in_convex_hull_of_orbit(&sys, &kappa, &Point::zero(3)).unwrap());
        assert!(!in_convex_hull_of_orbit(&sys, &kappa, &pt(&[(1, 3), (1, 3), (1, 3)])).unwrap());
        let rho = sys.rho(&kappa);
        assert!(in_convex_hull_of_orbit(&sys, &kappa, &rho).unwrap());
    }

    #[test]
    fn bounded_spectral_examples() {
        let sys = RootSystem::new(Family::BC, 1).unwrap();
        let kappa = Multiplicity::bc(rat(1), rat(0), rat(0));
        let rho = sys.rho(&kappa);
        let minus_rho = SpectralParameter::real(rho.neg());
        assert!(is_bounded_spectral(&sys, &kappa, &minus_rho).unwrap());
        let two_rho = SpectralParameter::real(rho.scale(&rat(2)));
        assert!(!is_bounded_spectral(&sys, &kappa, &two_rho).unwrap());
        let osc = SpectralParameter::new(Point::zero(1), pt(&[(100, 1)])).unwrap();
        assert!(is_bounded_spectral(&sys, &kappa, &osc).unwrap());
    }

    #[test]
    fn hf_constant_examples() {
        let sys = RootSystem::new(Family::BC, 1).unwrap();
        let kappa = Multiplicity::bc(rat(1), rat(0), rat(0));
        let lam = pt(&[(1, 1)]);
        assert_eq!(hf_constant(&sys, &kappa, &lam, &[]).unwrap(), rat(1));
        assert_eq!(hf_constant(&sys, &kappa, &lam, &[1]).unwrap(), ratio(3, 2));
        let zero = Multiplicity::zero_for(&sys);
        assert_eq!(hf_constant(&sys, &zero, &lam, &[1]).unwrap(), rat(1));
        // Non-reduced word: s_1 s_1 revisits a negative pairing.
        assert!(hf_constant(&sys, &kappa, &lam, &[1, 1]).is_err());
    }

    #[test]
    fn scaling_toward_one() {
        let sys = RootSystem::new(Family::BC, 1).unwrap();
        let kappa = Multiplicity::bc(rat(1), rat(0), rat(0));
        let lam = pt(&[(1, 1)]);
        let table =
            scaling_limit_check(&sys, &kappa, &lam, &[1], &[rat(1), rat(10), rat(100)]).unwrap();
        let values: Vec<Rat> = table.into_iter().map(|(_, c)| c).collect();
        assert_eq!(values, vec![ratio(3, 2), ratio(21, 20), ratio(201, 200)]);
        assert!(values.windows(2).all(|w| w[0] > w[1]));
        assert!(values.iter().all(|v| v > &rat(1)));
    }

    #[test]
    fn long_word_constant_shrinks_under_dilation() {
        // A full-length reduced word in BC_2, read off the wall crossings
        // from the antidominant representative.
        let sys = RootSystem::new(Family::BC, 2).unwrap();
        let kappa = Multiplicity::bc(rat(1), rat(1), rat(1));
        let lam = pt(&[(3, 1), (1, 1)]);
        let (dominant, word) = reduced_word_to_dominant(&sys, &lam.neg());
        assert_eq!(dominant, lam);
        // Longest-element length: four reflection hyperplanes in rank two
        // (the doubled roots share theirs with the short ones).
        assert_eq!(word.len(), 4);
        let table = scaling_limit_check(
            &sys,
            &kappa,
            &lam,
            &word,
            &[rat(1), rat(10), rat(100), rat(1000)],
        )
        .unwrap();
        let values: Vec<Rat> = table.into_iter().map(|(_, c)| c).collect();
        assert!(values.windows(2).all(|w| w[0] > w[1]));
        assert!(values.iter().all(|v| v > &rat(1)));
        // The tail is already within a percent of one.
        assert!(values.last().unwrap() < &ratio(101, 100));
    }

    #[test]
    fn product_constant_multiplies_across_factors() {
        let prod = RootSystem::product(&[(Family::BC, 1), (Family::BC, 1)], 0).unwrap();
        let kappa = Multiplicity::new(vec![
            crate::rootsys::BlockKappa::BC {
                k1: rat(1),
                k2: rat(0),
                k3: rat(0),
            },
            crate::rootsys::BlockKappa::BC {
                k1: rat(2),
                k2: rat(1),
                k3: rat(0),
            },
        ]);
        let lam = pt(&[(1, 1), (2, 1)]);
        // Letters 1 and 2 live in different factors; the constant over the
        // mixed word equals the product of the per-factor constants.
        let both = hf_constant(&prod, &kappa, &lam, &[1, 2]).unwrap();
        let first = hf_constant(&prod, &kappa, &lam, &[1]).unwrap();
        let second = hf_constant(&prod, &kappa, &lam, &[2]).unwrap();
        assert_eq!(both, first * second);
    }
}
