//! Non-symmetric Heckman-Opdam polynomials E_lambda through the intertwiner
//! recursion, symmetric polynomials P_lambda, normalized kernel values at
//! lattice spectral points, the exact value at zero through the c-function
//! product, and the kernel recurrence checks.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cherednik::tilde;
use crate::gamma::ln_gamma;
use crate::rational::{format_rat, pochhammer, rat, rat_to_f64, ratio, Rat};
use crate::rootsys::{dot_ii, dot_ir, AffineWord, Multiplicity, Point, RootSystem, Weight};
use crate::trigpoly::{TrigPoly, TrigPolyJson};
use crate::{Error, Result};

/// A constructed polynomial together with its index and spectral vector.
#[derive(Clone, Debug)]
pub struct HoPolynomial {
    pub lambda: Weight,
    pub kappa: Multiplicity,
    pub poly: TrigPoly,
    pub spectral: Point,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct HoPolynomialJson {
    pub rank: usize,
    pub terms: Vec<crate::trigpoly::TermJson>,
    pub lambda: Vec<i64>,
    pub kappa: Vec<String>,
    pub spectral: Vec<String>,
}

impl HoPolynomial {
    pub fn to_json(&self) -> HoPolynomialJson {
        let base: TrigPolyJson = self.poly.to_json();
        HoPolynomialJson {
            rank: base.rank,
            terms: base.terms,
            lambda: self.lambda.0.clone(),
            kappa: self.kappa.values().iter().map(format_rat).collect(),
            spectral: self.spectral.0.iter().map(format_rat).collect(),
        }
    }
}

/// Recursion constant c_i(k;lambda): k_i / <a_i^v, tilde(lambda)> for a
/// simple letter, k_0 / (1 - <beta^v, tilde(lambda)>) for the affine one.
/// A vanishing Hecke constant gives an exact zero without division.
pub fn recursion_constant(
    sys: &RootSystem,
    kappa: &Multiplicity,
    letter: usize,
    lambda: &Weight,
) -> Result<Rat> {
    if sys.apply_letter(letter, lambda)? == *lambda {
        return Err(Error::FixedWeight(letter));
    }
    let k = kappa.hecke_k(sys, letter)?;
    if k.is_zero() {
        return Ok(Rat::zero());
    }
    let spectral = tilde(sys, kappa, lambda);
    let denom = if letter == 0 {
        let beta = sys.highest_short_root()?;
        Rat::one() - dot_ir(&beta.coroot, &spectral)
    } else {
        dot_ir(&sys.simple_root(letter).coroot, &spectral)
    };
    if denom.is_zero() {
        return Err(Error::ZeroDenominator(letter));
    }
    Ok(k / denom)
}

/// Builder with a per-instance memo table. The cache is an optimization
/// only; every entry is produced by the same recursion.
pub struct HoBuilder<'a> {
    pub sys: &'a RootSystem,
    pub kappa: Multiplicity,
    cache: HashMap<Weight, TrigPoly>,
}

impl<'a> HoBuilder<'a> {
    pub fn new(sys: &'a RootSystem, kappa: Multiplicity) -> Result<Self> {
        if !kappa.matches(sys) {
            return Err(Error::UnsupportedFamily(
                "multiplicity does not match the root system".into(),
            ));
        }
        if !kappa.is_nonnegative() {
            return Err(Error::NegativeMultiplicity);
        }
        Ok(HoBuilder {
            sys,
            kappa,
            cache: HashMap::new(),
        })
    }

    /// One intertwiner step: from E_mu to E_{s_i mu}, valid when mu lies on
    /// the positive side of the wall (<a_i, mu> > 0, or <beta^v, mu> < 1 for
    /// the affine letter).
    fn step(&self, letter: usize, mu: &Weight, poly: &TrigPoly) -> Result<TrigPoly> {
        let ok = if letter == 0 {
            let beta = self.sys.highest_short_root()?;
            dot_ii(&beta.coroot, &mu.0) < 1
        } else {
            dot_ii(&self.sys.simple_root(letter).vec, &mu.0) > 0
        };
        if !ok {
            return Err(Error::FixedWeight(letter));
        }
        let c = recursion_constant(self.sys, &self.kappa, letter, mu)?;
        poly.act_letter(self.sys, letter)?.add(&poly.scale(&c))
    }

    /// Builds E_lambda along an explicit word applied to the minuscule
    /// representative of lambda. The word must consist of valid descent
    /// steps read in the reconstruction direction.
    pub fn nonsym_e_along(&mut self, lambda: &Weight, word: &AffineWord) -> Result<HoPolynomial> {
        let bar = self.sys.minuscule_rep(lambda)?;
        let mut mu = bar.clone();
        let mut poly = TrigPoly::monomial(bar, Rat::one());
        for &letter in &word.letters {
            poly = self.step(letter, &mu, &poly)?;
            mu = self.sys.apply_letter(letter, &mu)?;
            self.cache.entry(mu.clone()).or_insert_with(|| poly.clone());
        }
        if mu != *lambda {
            return Err(Error::Parse(format!(
                "word does not carry the minuscule representative to {lambda}"
            )));
        }
        let spectral = tilde(self.sys, &self.kappa, lambda);
        Ok(HoPolynomial {
            lambda: lambda.clone(),
            kappa: self.kappa.clone(),
            poly,
            spectral,
        })
    }

    /// E_lambda by the intertwiner recursion along the canonical descent
    /// word, reusing cached intermediates where possible.
    pub fn nonsym_e(&mut self, lambda: &Weight) -> Result<HoPolynomial> {
        let poly = self.poly_for(lambda)?;
        let spectral = tilde(self.sys, &self.kappa, lambda);
        Ok(HoPolynomial {
            lambda: lambda.clone(),
            kappa: self.kappa.clone(),
            poly,
            spectral,
        })
    }

    fn poly_for(&mut self, lambda: &Weight) -> Result<TrigPoly> {
        if let Some(p) = self.cache.get(lambda) {
            return Ok(p.clone());
        }
        if self.sys.is_minuscule(lambda) {
            let p = TrigPoly::monomial(lambda.clone(), Rat::one());
            self.cache.insert(lambda.clone(), p.clone());
            return Ok(p);
        }
        let word = self.sys.descent_word(lambda)?;
        // The last letter takes the predecessor weight to lambda; recurse on
        // the predecessor so long shared descent paths hit the cache.
        let last = *word
            .letters
            .last()
            .expect("non-minuscule weight has a word");
        let prev = self.sys.apply_letter(last, lambda)?;
        let prev_poly = self.poly_for(&prev)?;
        let poly = self.step(last, &prev, &prev_poly)?;
        self.cache.insert(lambda.clone(), poly.clone());
        Ok(poly)
    }

    /// E_lambda / E_lambda(0), the kernel value at the lattice spectral
    /// point tilde(lambda).
    pub fn kernel_at_spectral(&mut self, lambda: &Weight) -> Result<TrigPoly> {
        let e = self.nonsym_e(lambda)?;
        let norm = e.poly.eval_at_zero();
        if norm.is_zero() {
            return Err(Error::ZeroNormalizer(lambda.0.clone()));
        }
        Ok(e.poly.scale(&(Rat::one() / norm)))
    }

    /// Exact identity (1 + c_i) G(s_i lambda) = (s_i + c_i) G(lambda) at the
    /// lattice spectral point, with the twisted action for the affine letter.
    pub fn check_kernel_recurrence(&mut self, lambda: &Weight, letter: usize) -> Result<bool> {
        let c = recursion_constant(self.sys, &self.kappa, letter, lambda)?;
        let reflected = self.sys.apply_letter(letter, lambda)?;
        let g = self.kernel_at_spectral(lambda)?;
        let g_reflected = self.kernel_at_spectral(&reflected)?;
        let lhs = g_reflected.scale(&(Rat::one() + &c));
        let rhs = g.act_letter(self.sys, letter)?.add(&g.scale(&c))?;
        Ok(lhs == rhs)
    }

    /// Symmetric polynomial P_lambda = (#orbit / #W) sum_w w E_lambda for
    /// dominant lambda; monic at the orbit sum m_lambda.
    pub fn sym_p(&mut self, lambda: &Weight) -> Result<TrigPoly> {
        if !self.sys.is_dominant_weight(lambda) {
            return Err(Error::NotDominant);
        }
        let e = self.nonsym_e(lambda)?;
        let words = self.sys.weyl_elements(1 << 20)?;
        let mut sum = TrigPoly::zero(self.sys.dim());
        for word in &words {
            sum = sum.add(&e.poly.act_weyl(self.sys, word))?;
        }
        let orbit = self.sys.weyl_orbit(lambda).len() as i64;
        Ok(sum.scale(&(rat(orbit) / rat(words.len() as i64))))
    }
}

/// Exact value P_lambda(k;0) as a product of Pochhammer ratios: each
/// positive-root Gamma-quotient factor regroups into (b)_m / (a)_m with the
/// integer shift m = <lambda, a^v>, so rational multiplicities give an exact
/// rational value.
///
/// Degenerate multiplicities (whole orbits at zero) push Gamma arguments
/// onto poles where the factor-wise product is wrong; the value is then the
/// limit of the formula along kappa + eps on every orbit, which replaces
/// each vanishing linear term by its eps-rate. The eps-orders must balance
/// exactly, since the true value is finite and positive.
pub fn p_at_zero(sys: &RootSystem, kappa: &Multiplicity, lambda: &Weight) -> Result<Rat> {
    if !sys.is_dominant_weight(lambda) {
        return Err(Error::NotDominant);
    }
    if !kappa.is_nonnegative() {
        return Err(Error::NegativeMultiplicity);
    }
    let rho = sys.rho(kappa);
    let unit = Multiplicity::unit_for(sys);
    let rho_unit = sys.rho(&unit);
    let mut acc = Rat::one();
    let mut eps_order = 0i64;
    for root in sys.positive_roots() {
        let m = dot_ii(&root.coroot, &lambda.0);
        if m == 0 {
            continue;
        }
        if m < 0 {
            return Err(Error::NotDominant);
        }
        let k_alpha = kappa.k(&root.orbit);
        let has_half = !unit.k_half(sys, root).is_zero();
        let a0 = dot_ir(&root.coroot, &rho) + kappa.k_half(sys, root) / rat(2);
        let a1 = dot_ir(&root.coroot, &rho_unit) + if has_half { ratio(1, 2) } else { Rat::zero() };
        let b0 = &a0 + k_alpha;
        let b1 = &a1 + Rat::one();
        // Only the i = 0 terms of (b0)_m and (a0)_m can vanish for
        // nonnegative kappa; later terms are bounded below by one.
        if b0.is_zero() {
            acc *= &b1;
            eps_order += 1;
        } else {
            acc *= &b0;
        }
        acc *= pochhammer(&(&b0 + Rat::one()), m - 1);
        if a0.is_zero() {
            acc /= &a1;
            eps_order -= 1;
        } else {
            acc /= &a0;
        }
        let tail = pochhammer(&(&a0 + Rat::one()), m - 1);
        if tail.is_zero() {
            return Err(Error::GammaPole);
        }
        acc /= tail;
    }
    if eps_order != 0 {
        return Err(Error::GammaPole);
    }
    Ok(acc)
}

/// Floating Gamma rendition of `p_at_zero`, for diagnostic display only.
pub fn p_at_zero_float(sys: &RootSystem, kappa: &Multiplicity, lambda: &Weight) -> Result<f64> {
    if !sys.is_dominant_weight(lambda) {
        return Err(Error::NotDominant);
    }
    let rho = sys.rho(kappa);
    let mut log_acc = 0.0f64;
    for root in sys.positive_roots() {
        let m = dot_ii(&root.coroot, &lambda.0);
        let k_alpha = kappa.k(&root.orbit);
        if m == 0 || k_alpha.is_zero() {
            continue;
        }
        let half_k_half = kappa.k_half(sys, root) / rat(2);
        let a = rat_to_f64(&(dot_ir(&root.coroot, &rho) + &half_k_half));
        let b = rat_to_f64(&(dot_ir(&root.coroot, &rho) + half_k_half + k_alpha));
        let m = m as f64;
        if a <= 0.0 || b <= 0.0 || a + m <= 0.0 || b + m <= 0.0 {
            return Err(Error::GammaPole);
        }
        log_acc += ln_gamma(b + m) - ln_gamma(b) - (ln_gamma(a + m) - ln_gamma(a));
    }
    Ok(log_acc.exp())
}
