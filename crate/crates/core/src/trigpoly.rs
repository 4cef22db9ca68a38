//! Exact sparse trigonometric polynomials: the group algebra of the weight
//! lattice, with Weyl and dual-affine actions and complex evaluation.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{format_rat, parse_rat, rat, rat_to_f64, ratio, Rat};
use crate::rootsys::{RootSystem, Weight};
use crate::{Error, Result};

/// Sparse map from exponent weights to nonzero rational coefficients.
/// Keys iterate in lexicographic order, which is also the serialization
/// order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TrigPoly {
    rank: usize,
    terms: BTreeMap<Weight, Rat>,
}

impl TrigPoly {
    pub fn zero(rank: usize) -> Self {
        TrigPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(Weight::zero(rank), Rat::one())
    }

    /// c * e^w as a one-term polynomial.
    pub fn monomial(w: Weight, c: Rat) -> Self {
        let rank = w.rank();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        TrigPoly { rank, terms }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Weight) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.terms.keys()
    }

    /// Adds c * e^w in place, pruning a resulting zero.
    pub fn add_term(&mut self, w: Weight, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &TrigPoly) -> Result<TrigPoly> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TrigPoly) -> Result<TrigPoly> {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, s: &Rat) -> TrigPoly {
        if s.is_zero() {
            return TrigPoly::zero(self.rank);
        }
        TrigPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    /// Ring product by convolution of exponents.
    pub fn mul(&self, other: &TrigPoly) -> Result<TrigPoly> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        let mut out = TrigPoly::zero(self.rank);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.add(w2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Relabels every exponent; the map must be injective on the support.
    pub fn map_exponents<F: Fn(&Weight) -> Weight>(&self, f: F) -> TrigPoly {
        let mut out = TrigPoly::zero(self.rank);
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }

    /// Action of one simple reflection on exponents.
    pub fn act_simple(&self, sys: &RootSystem, i: usize) -> TrigPoly {
        let root = sys.simple_root(i);
        self.map_exponents(|w| RootSystem::reflect_weight(root, w))
    }

    /// Action of a Weyl word (letters in 1..=rank), leftmost letter applied
    /// last: acting by [i, j] sends e^w to e^{s_i s_j w}.
    pub fn act_weyl(&self, sys: &RootSystem, word: &[usize]) -> TrigPoly {
        let mut out = self.clone();
        for &i in word.iter().rev() {
            out = out.act_simple(sys, i);
        }
        out
    }

    /// Twisted affine action (s_0 f)(x) = e^{<beta,x>} f(s_beta x).
    pub fn act_s0(&self, sys: &RootSystem) -> Result<TrigPoly> {
        let beta = sys.highest_short_root()?;
        let mut out = TrigPoly::zero(self.rank);
        for (w, c) in &self.terms {
            let refl = RootSystem::reflect_weight(beta, w);
            out.add_term(
                Weight(refl.0.iter().zip(&beta.vec).map(|(a, b)| a + b).collect()),
                c.clone(),
            );
        }
        Ok(out)
    }

    /// Applies a dual-affine letter (0 = twisted affine action).
    pub fn act_letter(&self, sys: &RootSystem, letter: usize) -> Result<TrigPoly> {
        if letter == 0 {
            self.act_s0(sys)
        } else {
            Ok(self.act_simple(sys, letter))
        }
    }

    /// Sum of all coefficients: the exact value at x = 0.
    pub fn eval_at_zero(&self) -> Rat {
        self.terms
            .values()
            .fold(Rat::zero(), |acc, c| acc + c.clone())
    }

    /// Numerical evaluation sum c_w exp(<w, z>) at a complex point.
    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.rank {
            return Err(Error::RankMismatch(z.len(), self.rank));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, c) in &self.terms {
            let mut pairing = Complex64::new(0.0, 0.0);
            for (a, zi) in w.0.iter().zip(z) {
                pairing += Complex64::new(*a as f64, 0.0) * zi;
            }
            if pairing.re.abs() > 700.0 {
                return Err(Error::EvalOverflow);
            }
            acc += pairing.exp() * rat_to_f64(c);
        }
        Ok(acc)
    }

    /// Real-point convenience wrapper around `eval`.
    pub fn eval_real(&self, x: &[f64]) -> Result<f64> {
        let z: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Ok(self.eval(&z)?.re)
    }

    /// Substitutes y_i = (e^{x_i} + 2 + e^{-x_i})/4 = cosh^2(x_i/2) into an
    /// ordinary polynomial in y (nonnegative exponents only).
    pub fn substitute_cosh(&self) -> Result<TrigPoly> {
        let n = self.rank;
        let quarter = ratio(1, 4);
        let mut out = TrigPoly::zero(n);
        for (w, c) in &self.terms {
            if w.0.iter().any(|&e| e < 0) {
                return Err(Error::NegativeExponent);
            }
            let mut factor = TrigPoly::monomial(Weight::zero(n), c.clone());
            for (i, &e) in w.0.iter().enumerate() {
                for _ in 0..e {
                    let mut base = TrigPoly::zero(n);
                    let mut up = vec![0i64; n];
                    up[i] = 1;
                    let mut down = vec![0i64; n];
                    down[i] = -1;
                    base.add_term(Weight(up), quarter.clone());
                    base.add_term(Weight::zero(n), ratio(1, 2));
                    base.add_term(Weight(down), quarter.clone());
                    factor = factor.mul(&base)?;
                }
            }
            out = out.add(&factor)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> TrigPolyJson {
        TrigPolyJson {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| TermJson {
                    w: w.0.clone(),
                    c: format_rat(c),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &TrigPolyJson) -> Result<TrigPoly> {
        let mut out = TrigPoly::zero(json.rank);
        for term in &json.terms {
            if term.w.len() != json.rank {
                return Err(Error::RankMismatch(term.w.len(), json.rank));
            }
            out.add_term(Weight(term.w.clone()), parse_rat(&term.c)?);
        }
        Ok(out)
    }
}

/// Canonical JSON form: terms sorted lexicographically by exponent, with
/// rational coefficients rendered as "p/q" strings.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TrigPolyJson {
    pub rank: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TermJson {
    pub w: Vec<i64>,
    pub c: String,
}

/// Monomial symmetric polynomial m_lambda: the orbit sum of e^lambda.
pub fn monomial_symmetric(sys: &RootSystem, lambda: &Weight) -> TrigPoly {
    let mut out = TrigPoly::zero(lambda.rank());
    for w in sys.weyl_orbit(lambda) {
        out.add_term(w, Rat::one());
    }
    out
}
