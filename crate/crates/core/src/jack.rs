//! Non-symmetric and symmetric Jack polynomials built from the raising
//! operator and adjacent exchanges, the spectral vector of a composition,
//! and the norm value at the all-ones point.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::gamma::ln_gamma;
use crate::rational::{format_rat, pochhammer, rat, rat_to_f64, Rat};
use crate::rootsys::{Point, Weight};
use crate::trigpoly::{TrigPoly, TrigPolyJson};
use crate::{Error, Result};

/// Monic polynomial indexed by a composition, with parameter k (the Jack
/// index is alpha = 1/k).
#[derive(Clone, Debug)]
pub struct JackPolynomial {
    pub eta: Vec<i64>,
    pub k: Rat,
    pub poly: TrigPoly,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct JackPolynomialJson {
    pub kind: String,
    pub rank: usize,
    pub terms: Vec<crate::trigpoly::TermJson>,
    pub eta: Vec<i64>,
    pub k: String,
    pub spectral: Vec<String>,
}

impl JackPolynomial {
    pub fn to_json(&self) -> JackPolynomialJson {
        let base: TrigPolyJson = self.poly.to_json();
        JackPolynomialJson {
            kind: "jack".into(),
            rank: base.rank,
            terms: base.terms,
            eta: self.eta.clone(),
            k: format_rat(&self.k),
            spectral: eta_bar(&self.eta, &self.k)
                .0
                .iter()
                .map(format_rat)
                .collect(),
        }
    }
}

/// Spectral vector of a composition:
/// eta_bar_i = eta_i - k #(j before i with eta_j >= eta_i)
///                    - k #(j after i with eta_j > eta_i).
pub fn eta_bar(eta: &[i64], k: &Rat) -> Point {
    let n = eta.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let before = (0..i).filter(|&j| eta[j] >= eta[i]).count() as i64;
        let after = (i + 1..n).filter(|&j| eta[j] > eta[i]).count() as i64;
        out.push(rat(eta[i]) - k * rat(before + after));
    }
    Point(out)
}

/// Raising operator: index (eta_2,...,eta_n,eta_1+1), polynomial
/// x_n f(x_n, x_1, ..., x_{n-1}).
pub fn raise_phi(p: &JackPolynomial) -> JackPolynomial {
    let mut eta: Vec<i64> = p.eta[1..].to_vec();
    eta.push(p.eta[0] + 1);
    let poly = p.poly.map_exponents(|w| {
        let mut v: Vec<i64> = w.0[1..].to_vec();
        v.push(w.0[0] + 1);
        Weight(v)
    });
    JackPolynomial {
        eta,
        k: p.k.clone(),
        poly,
    }
}

/// Exchange step E_{s_i eta} = (s_i + k/(bar_{i+1} - bar_i)) E_eta, defined
/// when eta_i < eta_{i+1} (i is 1-based, i < n).
pub fn exchange_si(p: &JackPolynomial, i: usize) -> Result<JackPolynomial> {
    let n = p.eta.len();
    if i == 0 || i >= n {
        return Err(Error::Parse(format!("exchange index {i} out of range")));
    }
    if p.eta[i - 1] >= p.eta[i] {
        return Err(Error::FixedWeight(i));
    }
    let bar = eta_bar(&p.eta, &p.k);
    let denom = &bar.0[i] - &bar.0[i - 1];
    if denom.is_zero() {
        return Err(Error::ZeroDenominator(i));
    }
    let c = &p.k / denom;
    let swapped = p.poly.map_exponents(|w| {
        let mut v = w.0.clone();
        v.swap(i - 1, i);
        Weight(v)
    });
    let mut eta = p.eta.clone();
    eta.swap(i - 1, i);
    Ok(JackPolynomial {
        eta,
        k: p.k.clone(),
        poly: swapped.add(&p.poly.scale(&c))?,
    })
}

/// Builds E_eta from E_0 = 1: strict descents are unwound by exchanges down
/// to the weakly increasing rearrangement, whose last entry is then peeled
/// off by the inverse raising operator. Smallest descent index first.
pub fn nonsym_jack(eta: &[i64], k: &Rat) -> Result<JackPolynomial> {
    if eta.iter().any(|&e| e < 0) {
        return Err(Error::NegativeExponent);
    }
    if k.is_negative() {
        return Err(Error::NegativeMultiplicity);
    }
    let n = eta.len();
    if eta.iter().all(|&e| e == 0) {
        return Ok(JackPolynomial {
            eta: eta.to_vec(),
            k: k.clone(),
            poly: TrigPoly::one(n),
        });
    }
    if let Some(i) = (1..n).find(|&i| eta[i - 1] > eta[i]) {
        let mut swapped = eta.to_vec();
        swapped.swap(i - 1, i);
        return exchange_si(&nonsym_jack(&swapped, k)?, i);
    }
    // Weakly increasing: eta = Phi mu with mu = (eta_n - 1, eta_1, ...).
    let mut mu = Vec::with_capacity(n);
    mu.push(eta[n - 1] - 1);
    mu.extend_from_slice(&eta[..n - 1]);
    Ok(raise_phi(&nonsym_jack(&mu, k)?))
}

/// Symmetric Jack polynomial for a partition: the symmetrization of the
/// non-symmetric polynomial, normalized to be monic at the leading
/// monomial-symmetric term.
pub fn sym_jack(lambda: &[i64], k: &Rat) -> Result<TrigPoly> {
    if lambda.windows(2).any(|p| p[0] < p[1]) {
        return Err(Error::NotDominant);
    }
    let e = nonsym_jack(lambda, k)?;
    let n = lambda.len();
    let mut sum = TrigPoly::zero(n);
    for perm in permutations(n) {
        sum = sum.add(
            &e.poly
                .map_exponents(|w| Weight(perm.iter().map(|&j| w.0[j]).collect())),
        )?;
    }
    let lead = sum.coeff(&Weight(lambda.to_vec()));
    if lead.is_zero() {
        return Err(Error::ZeroNormalizer(lambda.to_vec()));
    }
    Ok(sum.scale(&(Rat::one() / lead)))
}

/// Norm value of the symmetric Jack polynomial at (1,...,1), either exact or
/// through floating Gamma.
#[derive(Clone, Debug, PartialEq)]
pub enum JackNorm {
    Exact(Rat),
    /// Non-integer k has no exact Pochhammer regrouping; flagged as
    /// floating.
    Approx(f64),
}

impl JackNorm {
    pub fn as_f64(&self) -> f64 {
        match self {
            JackNorm::Exact(r) => rat_to_f64(r),
            JackNorm::Approx(v) => *v,
        }
    }
}

/// Product formula for P_lambda(k; 1,...,1): the pairwise Pochhammer product
/// times the Gamma quotients. Exact for integer k >= 1 and for k = 0 (where
/// the polynomial degenerates to the monomial orbit sum); floating Gamma
/// otherwise.
pub fn jack_at_one(lambda: &[i64], k: &Rat) -> Result<JackNorm> {
    if lambda.windows(2).any(|p| p[0] < p[1]) {
        return Err(Error::NotDominant);
    }
    if k.is_negative() {
        return Err(Error::NegativeMultiplicity);
    }
    let n = lambda.len() as i64;
    if k.is_zero() {
        // Orbit count of the monomial orbit sum at the all-ones point:
        // n! / (prod of multiplicities of equal parts).
        let mut count = Rat::one();
        for m in 1..=n {
            count *= rat(m);
        }
        let mut run = 1i64;
        for i in 1..lambda.len() {
            if lambda[i] == lambda[i - 1] {
                run += 1;
                count /= rat(run);
            } else {
                run = 1;
            }
        }
        return Ok(JackNorm::Exact(count));
    }
    if k.is_integer() && !k.is_negative() {
        let ki = k.to_integer();
        let ki: i64 = i64::try_from(&ki).map_err(|_| Error::Parse("k too large".into()))?;
        let mut acc = Rat::one();
        for i in 0..lambda.len() {
            for j in (i + 1)..lambda.len() {
                let base = rat(lambda[i] - lambda[j]) + k * rat(j as i64 - i as i64);
                acc *= pochhammer(&base, ki);
            }
        }
        // prod_j Gamma(k)/Gamma(jk) = prod_j (k-1)! / (jk-1)!.
        for j in 1..=n {
            let mut quot = Rat::one();
            for t in ki..(j * ki) {
                quot *= rat(t);
            }
            acc /= quot;
        }
        return Ok(JackNorm::Exact(acc));
    }
    let kf = rat_to_f64(k);
    let mut log_acc = 0.0f64;
    for i in 0..lambda.len() {
        for j in (i + 1)..lambda.len() {
            let base = (lambda[i] - lambda[j]) as f64 + kf * (j - i) as f64;
            if base <= 0.0 || base + kf <= 0.0 {
                return Err(Error::GammaPole);
            }
            log_acc += ln_gamma(base + kf) - ln_gamma(base);
        }
    }
    for j in 1..=n {
        log_acc += ln_gamma(kf) - ln_gamma(j as f64 * kf);
    }
    Ok(JackNorm::Approx(log_acc.exp()))
}

/// All permutations of 0..n, deterministic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for slot in 0..n {
            let mut perm = Vec::with_capacity(n);
            perm.extend_from_slice(&rest[..slot]);
            perm.push(n - 1);
            perm.extend_from_slice(&rest[slot..]);
            out.push(perm);
        }
    }
    out
}
