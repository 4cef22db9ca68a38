//! The degenerate family E_lambda(infinity; k3) obtained from type BC when
//! k1 + k2 and k1/k2 blow up, its exact Jack-polynomial identities, and the
//! numeric convergence harness at lattice spectral points.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::cherednik::epsilon_i64;
use crate::hopoly::HoBuilder;
use crate::jack::nonsym_jack;
use crate::rational::{rat, rat_to_f64, Rat};
use crate::rootsys::{Family, Multiplicity, Point, RootSystem, Weight};
use crate::trigpoly::TrigPoly;
use crate::{Error, Result};

/// Limit of the recursion constant c_i(kappa; x) along k1 + k2 -> infinity,
/// k1/k2 -> infinity. The boundary letters degenerate to signs; a middle
/// letter vanishes when the signs of the two coordinates disagree and is
/// otherwise independent of (k1, k2).
pub fn limit_constant(letter: usize, k3: &Rat, x: &Weight) -> Result<Rat> {
    let n = x.rank();
    let eps = |t: i64| epsilon_i64(t);
    if letter == 0 {
        if 2 * x.0[0] == 1 {
            return Err(Error::FixedWeight(0));
        }
        return Ok(rat(-eps(x.0[0])));
    }
    if letter == n {
        if x.0[n - 1] == 0 {
            return Err(Error::FixedWeight(n));
        }
        return Ok(rat(eps(x.0[n - 1])));
    }
    if letter > n {
        return Err(Error::Parse(format!("letter {letter} out of range")));
    }
    let i = letter; // 1-based; compares coordinates i and i+1
    if x.0[i - 1] == x.0[i] {
        return Err(Error::FixedWeight(letter));
    }
    if eps(x.0[i - 1]) != eps(x.0[i]) {
        return Ok(Rat::zero());
    }
    let xi = x.0[i - 1];
    let xn = x.0[i];
    let delta = |a: i64, b: i64| eps(a + b) - eps(a - b);
    let mut s: i64 = 0;
    for j in (i + 1)..=n {
        s += eps(xi + x.0[j - 1]) + eps(xi - x.0[j - 1]);
    }
    for j in 1..i {
        s += delta(x.0[j - 1], xi);
    }
    for j in (i + 2)..=n {
        s -= eps(xn + x.0[j - 1]) + eps(xn - x.0[j - 1]);
    }
    for j in 1..=i {
        s -= delta(x.0[j - 1], xn);
    }
    let denom = rat(xi - xn) + k3 * rat(s) / rat(2);
    if denom.is_zero() {
        return Err(Error::ZeroDenominator(letter));
    }
    Ok(k3 / denom)
}

/// Builder for the limit polynomials over a fixed BC_n system, with the same
/// descent machinery as the finite-kappa recursion but the degenerate
/// constants.
pub struct InfinityBuilder<'a> {
    pub sys: &'a RootSystem,
    pub k3: Rat,
    cache: HashMap<Weight, TrigPoly>,
}

impl<'a> InfinityBuilder<'a> {
    pub fn new(sys: &'a RootSystem, k3: Rat) -> Result<Self> {
        if sys.blocks().len() != 1 || !matches!(sys.blocks()[0].family, Family::B | Family::BC) {
            return Err(Error::UnsupportedFamily(
                "the limit family lives over B/BC".into(),
            ));
        }
        if k3.is_negative() {
            return Err(Error::NegativeMultiplicity);
        }
        Ok(InfinityBuilder {
            sys,
            k3,
            cache: HashMap::new(),
        })
    }

    pub fn e_infinity(&mut self, lambda: &Weight) -> Result<TrigPoly> {
        if let Some(p) = self.cache.get(lambda) {
            return Ok(p.clone());
        }
        if lambda.is_zero() {
            let p = TrigPoly::one(self.sys.dim());
            self.cache.insert(lambda.clone(), p.clone());
            return Ok(p);
        }
        let word = self.sys.descent_word(lambda)?;
        let last = *word.letters.last().expect("nonzero weight has a word");
        let prev = self.sys.apply_letter(last, lambda)?;
        let prev_poly = self.e_infinity(&prev)?;
        let c = limit_constant(last, &self.k3, &prev)?;
        let poly = prev_poly
            .act_letter(self.sys, last)?
            .add(&prev_poly.scale(&c))?;
        self.cache.insert(lambda.clone(), poly.clone());
        Ok(poly)
    }
}

/// Index data of Theorem-style sign splitting: the positions with positive
/// entries, the folded index lambda* (in -N_0^n), the doubly folded
/// lambda**, and the two argument permutations.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaStar {
    /// 1-based positions i_1 < ... < i_l with lambda_{i_j} > 0.
    pub positive: Vec<usize>,
    pub star: Weight,
    pub star_star: Weight,
    /// sigma x = (x_{i_l}, ..., x_{i_1}, x'); stored as source indices, so
    /// position t of sigma x reads coordinate perm\[t\] of x.
    pub sigma: Vec<usize>,
    /// sigma* x = (x', x_{i_l}, ..., x_{i_1}); same encoding.
    pub sigma_star: Vec<usize>,
}

pub fn lambda_star(lambda: &Weight) -> LambdaStar {
    let n = lambda.rank();
    let positive: Vec<usize> = (1..=n).filter(|&i| lambda.0[i - 1] > 0).collect();
    let rest: Vec<usize> = (1..=n).filter(|&i| lambda.0[i - 1] <= 0).collect();
    let mut star = Vec::with_capacity(n);
    for &i in positive.iter().rev() {
        star.push(1 - lambda.0[i - 1]);
    }
    for &i in &rest {
        star.push(lambda.0[i - 1]);
    }
    let mut star_star = Vec::with_capacity(n);
    for &i in &rest {
        star_star.push(lambda.0[i - 1]);
    }
    for &i in positive.iter().rev() {
        star_star.push(-lambda.0[i - 1]);
    }
    let mut sigma: Vec<usize> = positive.iter().rev().copied().collect();
    sigma.extend(&rest);
    let mut sigma_star: Vec<usize> = rest.clone();
    sigma_star.extend(positive.iter().rev());
    LambdaStar {
        positive,
        star: Weight(star),
        star_star: Weight(star_star),
        sigma,
        sigma_star,
    }
}

/// Composes a polynomial with the coordinate permutation given by source
/// indices: returns g with g(x) = f(x_{perm[1]}, ..., x_{perm[n]}).
fn compose_permutation(f: &TrigPoly, perm: &[usize]) -> TrigPoly {
    f.map_exponents(|w| {
        let mut out = vec![0i64; w.rank()];
        for (t, &src) in perm.iter().enumerate() {
            out[src - 1] = w.0[t];
        }
        Weight(out)
    })
}

fn pow4(exp: i64) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp {
        acc *= rat(4);
    }
    acc
}

fn abs_sum(lambda: &Weight) -> i64 {
    lambda.0.iter().map(|c| c.abs()).sum()
}

/// The Jack route for the limit polynomial of an antidominant-free index:
/// 4^{|eta|} E_eta^{Jack}(k3; cosh^2(x/2)).
fn jack_route(eta: &[i64], k3: &Rat) -> Result<TrigPoly> {
    let jack = nonsym_jack(eta, k3)?;
    let total: i64 = eta.iter().sum();
    Ok(jack.poly.substitute_cosh()?.scale(&pow4(total)))
}

/// E_{-eta}(infinity; k3) = 4^{|eta|} E_eta^{Jack}(k3; cosh^2(x/2)), exactly.
pub fn check_bcjack_identity(sys: &RootSystem, eta: &[i64], k3: &Rat) -> Result<bool> {
    if eta.iter().any(|&e| e < 0) {
        return Err(Error::NegativeExponent);
    }
    let mut builder = InfinityBuilder::new(sys, k3.clone())?;
    let lhs = builder.e_infinity(&Weight(eta.iter().map(|&e| -e).collect()))?;
    Ok(lhs == jack_route(eta, k3)?)
}

/// Mixed-sign identities: the product form over the positive positions and
/// the sign-averaged form, both against independent Jack-route expansions.
pub fn check_mixed_sign_identity(sys: &RootSystem, lambda: &Weight, k3: &Rat) -> Result<bool> {
    let n = sys.dim();
    let mut builder = InfinityBuilder::new(sys, k3.clone())?;
    let lhs = builder.e_infinity(lambda)?;
    let data = lambda_star(lambda);
    let ell = data.positive.len() as i64;

    // Product form: prod_j (e^{x_{i_j}} + 1) times the folded polynomial
    // with permuted arguments, the latter expanded through Jack.
    let folded_eta: Vec<i64> = data.star.0.iter().map(|&e| -e).collect();
    let folded = jack_route(&folded_eta, k3)?;
    let mut rhs = compose_permutation(&folded, &data.sigma);
    for &i in &data.positive {
        let mut factor = TrigPoly::one(n);
        let mut up = vec![0i64; n];
        up[i - 1] = 1;
        factor.add_term(Weight(up), Rat::one());
        rhs = rhs.mul(&factor)?;
    }
    if lhs != rhs {
        return Ok(false);
    }

    // Sign-averaged form: 2^{-n} sum over sign flips equals
    // 4^{|lambda| - l/2} E^{Jack}_{-lambda**}(k3; sigma* cosh^2(x/2)).
    let mut averaged = TrigPoly::zero(n);
    for mask in 0..(1u32 << n) {
        averaged = averaged.add(&lhs.map_exponents(|w| {
            Weight(
                w.0.iter()
                    .enumerate()
                    .map(|(t, &c)| if mask & (1 << t) != 0 { -c } else { c })
                    .collect(),
            )
        }))?;
    }
    averaged = averaged.scale(&(Rat::one() / rat(1i64 << n)));
    let eta2: Vec<i64> = data.star_star.0.iter().map(|&e| -e).collect();
    let jack2 = nonsym_jack(&eta2, k3)?;
    let substituted = compose_permutation(&jack2.poly, &data.sigma_star).substitute_cosh()?;
    // 4^{|lambda| - l/2} = 4^{|lambda|} / 2^l.
    let scale = pow4(abs_sum(lambda)) / rat(1i64 << ell);
    Ok(averaged == substituted.scale(&scale))
}

/// Parameter schedule for the degeneration: k1 + k2 strictly increasing and
/// k1/k2 strictly increasing, where k2 = 0 counts as an infinite ratio.
#[derive(Clone, Debug)]
pub struct LimitSchedule {
    pub points: Vec<(Rat, Rat)>,
}

impl LimitSchedule {
    pub fn new(points: Vec<(Rat, Rat)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidSchedule("empty schedule".into()));
        }
        for (k1, k2) in &points {
            if k1.is_negative() || k2.is_negative() || k1.is_zero() {
                return Err(Error::InvalidSchedule(
                    "k1 must be positive and k2 nonnegative".into(),
                ));
            }
        }
        for pair in points.windows(2) {
            let (a1, a2) = &pair[0];
            let (b1, b2) = &pair[1];
            if a1 + a2 >= b1 + b2 {
                return Err(Error::InvalidSchedule("k1 + k2 must increase".into()));
            }
            let increasing = match (a2.is_zero(), b2.is_zero()) {
                (true, true) => true,  // infinity to infinity
                (false, true) => true, // finite to infinity
                (true, false) => false,
                (false, false) => a1 / a2 < b1 / b2,
            };
            if !increasing {
                return Err(Error::InvalidSchedule("k1/k2 must increase".into()));
            }
        }
        Ok(LimitSchedule { points })
    }

    /// Pure k2 = 0 family at k1 = 10, 100, 1000.
    pub fn default_zero_k2() -> Self {
        LimitSchedule {
            points: vec![(rat(10), rat(0)), (rat(100), rat(0)), (rat(1000), rat(0))],
        }
    }

    /// k1 = t, k2 ~ sqrt(t) for t = 100, 1000, 10000.
    pub fn default_sqrt() -> Self {
        LimitSchedule {
            points: vec![
                (rat(100), rat(10)),
                (rat(1000), rat(32)),
                (rat(10000), rat(100)),
            ],
        }
    }

    /// Parses "default", "sqrt", or an explicit "k1,k2;k1,k2;..." list.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "default" => Ok(Self::default_zero_k2()),
            "sqrt" => Ok(Self::default_sqrt()),
            explicit => {
                let mut points = Vec::new();
                for pair in explicit.split(';') {
                    let parts: Vec<&str> = pair.split(',').collect();
                    if parts.len() != 2 {
                        return Err(Error::Parse(format!(
                            "schedule entry '{pair}' is not 'k1,k2'"
                        )));
                    }
                    points.push((
                        crate::rational::parse_rat(parts[0])?,
                        crate::rational::parse_rat(parts[1])?,
                    ));
                }
                Self::new(points)
            }
        }
    }
}

/// One row of the convergence table.
#[derive(Clone, Debug)]
pub struct LimitRow {
    pub k1: Rat,
    pub k2: Rat,
    pub sup_error_poly: f64,
    pub sup_error_kernel: f64,
}

/// Rectangular evaluation grid with rational coordinates.
pub fn grid_points(n: usize, max: &Rat, step: &Rat) -> Result<Vec<Point>> {
    if !max.is_positive() || !step.is_positive() || max > &rat(20) {
        return Err(Error::Parse("grid wants 0 < step, 0 < max <= 20".into()));
    }
    let mut axis = Vec::new();
    let mut v = -max.clone();
    while &v <= max {
        axis.push(v.clone());
        v += step;
    }
    let mut points = vec![Vec::new()];
    for _ in 0..n {
        points = points
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |c| {
                    let mut q = p.clone();
                    q.push(c.clone());
                    q
                })
            })
            .collect();
    }
    Ok(points.into_iter().map(Point).collect())
}

/// Sup errors over the grid between the finite-kappa polynomial (and its
/// normalized kernel) and the limit counterparts, one row per schedule
/// point. Exact arithmetic is kept through construction; doubles appear
/// only at evaluation.
pub fn convergence_table(
    sys: &RootSystem,
    lambda: &Weight,
    k3: &Rat,
    schedule: &LimitSchedule,
    grid: &[Point],
) -> Result<Vec<LimitRow>> {
    let mut inf_builder = InfinityBuilder::new(sys, k3.clone())?;
    let e_inf = inf_builder.e_infinity(lambda)?;
    let inf_at_zero = e_inf.eval_at_zero();
    if inf_at_zero.is_zero() {
        return Err(Error::ZeroNormalizer(lambda.0.clone()));
    }
    let grid_f64: Vec<Vec<f64>> = grid
        .iter()
        .map(|p| p.0.iter().map(rat_to_f64).collect())
        .collect();
    let mut rows = Vec::new();
    for (k1, k2) in &schedule.points {
        let kappa = Multiplicity::bc(k1.clone(), k2.clone(), k3.clone());
        let mut builder = HoBuilder::new(sys, kappa)?;
        let e = builder.nonsym_e(lambda)?;
        let at_zero = e.poly.eval_at_zero();
        let mut sup_poly = 0.0f64;
        let mut sup_kernel = 0.0f64;
        for x in &grid_f64 {
            let v = e.poly.eval_real(x)?;
            let v_inf = e_inf.eval_real(x)?;
            sup_poly = sup_poly.max((v - v_inf).abs());
            let g = v / rat_to_f64(&at_zero);
            let g_inf = v_inf / rat_to_f64(&inf_at_zero);
            sup_kernel = sup_kernel.max((g - g_inf).abs());
        }
        rows.push(LimitRow {
            k1: k1.clone(),
            k2: k2.clone(),
            sup_error_poly: sup_poly,
            sup_error_kernel: sup_kernel,
        });
    }
    Ok(rows)
}

/// CSV rendering: columns k1, k2, sup_error_poly, sup_error_kernel, doubles
/// with 17 significant digits.
pub fn rows_to_csv(rows: &[LimitRow]) -> String {
    let mut out = String::from("k1,k2,sup_error_poly,sup_error_kernel\n");
    for row in rows {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e}\n",
            rat_to_f64(&row.k1),
            rat_to_f64(&row.k2),
            row.sup_error_poly,
            row.sup_error_kernel
        ));
    }
    out
}
