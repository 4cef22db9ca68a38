//! Root-system combinatorics for type A, B, BC and products thereof:
//! roots with orbit labels, Weyl and dual-affine Weyl actions, the dominance
//! and extended orderings, rho(k), minuscule weights and descent words.
//!
//! Conventions. `A` of rank flag `n` is A_{n-1} embedded in R^n with positive
//! roots e_i - e_j (i < j). `BC_n` has positive roots {e_i, 2e_i} together
//! with {e_i +- e_j, i < j}; `B_n` drops the doubled roots 2e_i. The inner
//! product is the standard dot product with exact rational coordinates.

use std::collections::VecDeque;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::{rat, Rat};
use crate::{Error, Result};

/// Element of the weight lattice P, as an integer coordinate vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }

    pub fn sup_norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn to_point(&self) -> Point {
        Point(self.0.iter().map(|&c| rat(c)).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Exact rational vector: an element of the ambient space or a spectral
/// parameter.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Point(pub Vec<Rat>);

impl Point {
    pub fn zero(n: usize) -> Self {
        Point(vec![Rat::zero(); n])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Point {
        Point(self.0.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: &Rat) -> Point {
        Point(self.0.iter().map(|c| c * s).collect())
    }

    pub fn dot(&self, other: &Point) -> Rat {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .fold(Rat::zero(), |acc, x| acc + x)
    }
}

pub fn dot_ii(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_ir(a: &[i64], p: &Point) -> Rat {
    a.iter()
        .zip(&p.0)
        .map(|(x, y)| y * rat(*x))
        .fold(Rat::zero(), |acc, v| acc + v)
}

/// Irreducible families supported at construction time.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    /// A_{n-1} inside R^n; one root orbit carrying k3.
    A,
    /// B_n; orbits e_i (k1) and e_i +- e_j (k3).
    B,
    /// BC_n; orbits e_i (k1), 2e_i (k2) and e_i +- e_j (k3).
    BC,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::B => write!(f, "B"),
            Family::BC => write!(f, "BC"),
        }
    }
}

/// Root orbit kinds, named by root length: `Short` = e_i, `Long` = 2e_i,
/// `Medium` = e_i +- e_j (and the single A orbit).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrbitKind {
    Short,
    Long,
    Medium,
}

/// Orbit label of a root: which irreducible component, and which orbit
/// within it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Orbit {
    pub block: usize,
    pub kind: OrbitKind,
}

/// A positive root with cached coroot and orbit label. Roots of the
/// supported families all have integer coordinates, as do their coroots.
#[derive(Clone, Debug)]
pub struct Root {
    pub vec: Vec<i64>,
    pub coroot: Vec<i64>,
    pub orbit: Orbit,
}

#[derive(Clone, Copy, Debug)]
pub struct Block {
    pub family: Family,
    pub start: usize,
    pub dim: usize,
}

/// A root system descriptor: either a single irreducible A/B/BC factor or a
/// product of such factors padded with trivial (root-free) coordinates.
#[derive(Clone, Debug)]
pub struct RootSystem {
    dim: usize,
    blocks: Vec<Block>,
    positive_roots: Vec<Root>,
    /// Simple roots in letter order; `simple_roots[i]` answers letter i+1.
    simple_roots: Vec<Root>,
}

/// Word in the dual affine Weyl group generators; letter 0 is the affine
/// reflection, letters 1..=rank index the simple reflections. Stored in
/// application order for the intertwiner recursion: letter j is applied
/// j-th when rebuilding a polynomial from the minuscule representative.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AffineWord {
    pub letters: Vec<usize>,
}

impl AffineWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Tie-breaking rule when several strictly decreasing descent steps exist.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TieBreak {
    SmallestIndex,
    LargestIndex,
}

fn unit(dim: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = c;
    v
}

fn coroot_of(v: &[i64]) -> Vec<i64> {
    let norm2: i64 = v.iter().map(|c| c * c).sum();
    // 2v/<v,v> stays integral for every A/B/BC root (norm2 in {1,2,4}).
    v.iter().map(|c| 2 * c / norm2).collect()
}

impl RootSystem {
    /// Single irreducible system. For `A` the rank flag is the ambient
    /// dimension n (the system is A_{n-1}), for `B`/`BC` it is the rank n.
    pub fn new(family: Family, n: usize) -> Result<Self> {
        let min = match family {
            Family::A => 2,
            _ => 1,
        };
        if n < min {
            return Err(Error::UnsupportedFamily(format!("{family} of rank {n}")));
        }
        Self::assemble(vec![(family, n)], 0)
    }

    /// Product of irreducible factors laid out on consecutive coordinate
    /// blocks, followed by `trivial` root-free coordinates.
    pub fn product(parts: &[(Family, usize)], trivial: usize) -> Result<Self> {
        if parts.is_empty() && trivial == 0 {
            return Err(Error::UnsupportedFamily("empty product".into()));
        }
        Self::assemble(parts.to_vec(), trivial)
    }

    fn assemble(parts: Vec<(Family, usize)>, trivial: usize) -> Result<Self> {
        let dim: usize = parts.iter().map(|p| p.1).sum::<usize>() + trivial;
        let mut blocks = Vec::new();
        let mut positive_roots = Vec::new();
        let mut simple_roots = Vec::new();
        let mut start = 0;
        for (bi, &(family, n)) in parts.iter().enumerate() {
            let min = match family {
                Family::A => 2,
                _ => 1,
            };
            if n < min {
                return Err(Error::UnsupportedFamily(format!("{family} of rank {n}")));
            }
            blocks.push(Block {
                family,
                start,
                dim: n,
            });
            let orbit = |kind| Orbit { block: bi, kind };
            let mut push = |v: Vec<i64>, kind| {
                positive_roots.push(Root {
                    coroot: coroot_of(&v),
                    vec: v,
                    orbit: orbit(kind),
                });
            };
            match family {
                Family::A => {
                    for i in 0..n {
                        for j in (i + 1)..n {
                            let mut v = vec![0; dim];
                            v[start + i] = 1;
                            v[start + j] = -1;
                            push(v, OrbitKind::Medium);
                        }
                    }
                }
                Family::B | Family::BC => {
                    for i in 0..n {
                        push(unit(dim, start + i, 1), OrbitKind::Short);
                        if family == Family::BC {
                            push(unit(dim, start + i, 2), OrbitKind::Long);
                        }
                    }
                    for i in 0..n {
                        for j in (i + 1)..n {
                            for sign in [-1i64, 1] {
                                let mut v = vec![0; dim];
                                v[start + i] = 1;
                                v[start + j] = sign;
                                push(v, OrbitKind::Medium);
                            }
                        }
                    }
                }
            }
            // Simple roots of the block, in the standard order.
            match family {
                Family::A => {
                    for i in 0..n - 1 {
                        let mut v = vec![0; dim];
                        v[start + i] = 1;
                        v[start + i + 1] = -1;
                        simple_roots.push(Root {
                            coroot: coroot_of(&v),
                            vec: v,
                            orbit: orbit(OrbitKind::Medium),
                        });
                    }
                }
                Family::B | Family::BC => {
                    for i in 0..n - 1 {
                        let mut v = vec![0; dim];
                        v[start + i] = 1;
                        v[start + i + 1] = -1;
                        simple_roots.push(Root {
                            coroot: coroot_of(&v),
                            vec: v,
                            orbit: orbit(OrbitKind::Medium),
                        });
                    }
                    let v = unit(dim, start + n - 1, 1);
                    simple_roots.push(Root {
                        coroot: coroot_of(&v),
                        vec: v,
                        orbit: orbit(OrbitKind::Short),
                    });
                }
            }
            start += n;
        }
        Ok(RootSystem {
            dim,
            blocks,
            positive_roots,
            simple_roots,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// Number of simple roots; affine words use letters 0..=rank().
    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    /// Simple root answering letter `i` (1-based).
    pub fn simple_root(&self, i: usize) -> &Root {
        &self.simple_roots[i - 1]
    }

    pub fn is_irreducible(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Looks a vector up among the positive roots.
    pub fn find_positive_root(&self, v: &[i64]) -> Option<&Root> {
        self.positive_roots.iter().find(|r| r.vec == v)
    }

    /// Highest short root beta of the unique irreducible component.
    pub fn highest_short_root(&self) -> Result<&Root> {
        if !self.is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        let block = &self.blocks[0];
        let v = match block.family {
            // All roots of A share one length; the highest is e_1 - e_n.
            Family::A => {
                let mut v = vec![0; self.dim];
                v[block.start] = 1;
                v[block.start + block.dim - 1] = -1;
                v
            }
            Family::B | Family::BC => unit(self.dim, block.start, 1),
        };
        Ok(self
            .find_positive_root(&v)
            .expect("highest short root is a positive root"))
    }

    /// Exact coroot 2a/<a,a> of an arbitrary nonzero vector.
    pub fn coroot(alpha: &Point) -> Result<Point> {
        let norm2 = alpha.dot(alpha);
        if norm2.is_zero() {
            return Err(Error::ZeroVector);
        }
        let two = rat(2);
        Ok(alpha.scale(&(two / norm2)))
    }

    /// Reflection s_a x = x - <a^v, x> a in the hyperplane a-perp.
    pub fn reflect(alpha: &Point, x: &Point) -> Result<Point> {
        let cv = Self::coroot(alpha)?;
        let c = cv.dot(x);
        Ok(x.sub(&alpha.scale(&c)))
    }

    /// Integer reflection of a weight by a root with integer coroot.
    pub fn reflect_weight(root: &Root, w: &Weight) -> Weight {
        let c = dot_ii(&root.coroot, &w.0);
        Weight(w.0.iter().zip(&root.vec).map(|(x, a)| x - c * a).collect())
    }

    pub fn reflect_point_by_root(root: &Root, p: &Point) -> Point {
        let c = dot_ir(&root.coroot, p);
        Point(
            p.0.iter()
                .zip(&root.vec)
                .map(|(x, a)| x - &c * rat(*a))
                .collect(),
        )
    }

    /// Affine reflection s_0 x = beta + s_beta x on weights.
    pub fn affine_s0_weight(&self, w: &Weight) -> Result<Weight> {
        let beta = self.highest_short_root()?;
        let refl = Self::reflect_weight(beta, w);
        Ok(Weight(
            refl.0.iter().zip(&beta.vec).map(|(x, b)| x + b).collect(),
        ))
    }

    /// Affine reflection s_0 x = beta + s_beta x on points.
    pub fn affine_s0(&self, p: &Point) -> Result<Point> {
        let beta = self.highest_short_root()?;
        let refl = Self::reflect_point_by_root(beta, p);
        Ok(Point(
            refl.0
                .iter()
                .zip(&beta.vec)
                .map(|(x, b)| x + rat(*b))
                .collect(),
        ))
    }

    /// Applies one dual-affine letter to a weight (0 = affine reflection).
    pub fn apply_letter(&self, letter: usize, w: &Weight) -> Result<Weight> {
        if letter == 0 {
            self.affine_s0_weight(w)
        } else {
            Ok(Self::reflect_weight(self.simple_root(letter), w))
        }
    }

    /// Applies one dual-affine letter to a spectral point.
    pub fn apply_letter_point(&self, letter: usize, p: &Point) -> Result<Point> {
        if letter == 0 {
            self.affine_s0(p)
        } else {
            Ok(Self::reflect_point_by_root(self.simple_root(letter), p))
        }
    }

    /// rho(k) = (1/2) sum of k_a a over positive roots, exact.
    pub fn rho(&self, kappa: &Multiplicity) -> Point {
        let mut acc = Point::zero(self.dim);
        for root in &self.positive_roots {
            let k = kappa.k(&root.orbit);
            for (a, c) in acc.0.iter_mut().zip(&root.vec) {
                *a += k * rat(*c);
            }
        }
        acc.scale(&crate::rational::ratio(1, 2))
    }

    /// Dominant representative of a point with the number of simple
    /// reflections applied. Smallest negative simple index first.
    pub fn dominant_rep(&self, x: &Point) -> (Point, usize) {
        let mut cur = x.clone();
        let mut count = 0;
        'outer: loop {
            for i in 1..=self.rank() {
                let root = self.simple_root(i);
                if dot_ir(&root.vec, &cur).is_negative() {
                    cur = Self::reflect_point_by_root(root, &cur);
                    count += 1;
                    continue 'outer;
                }
            }
            return (cur, count);
        }
    }

    pub fn dominant_rep_weight(&self, w: &Weight) -> (Weight, usize) {
        let mut cur = w.clone();
        let mut count = 0;
        'outer: loop {
            for i in 1..=self.rank() {
                let root = self.simple_root(i);
                if dot_ii(&root.vec, &cur.0) < 0 {
                    cur = Self::reflect_weight(root, &cur);
                    count += 1;
                    continue 'outer;
                }
            }
            return (cur, count);
        }
    }

    pub fn is_dominant_weight(&self, w: &Weight) -> bool {
        (1..=self.rank()).all(|i| dot_ii(&self.simple_root(i).vec, &w.0) >= 0)
    }

    /// Expands `v` in the simple-root basis by back-substitution, block by
    /// block. Returns None when `v` does not lie in the span of the roots.
    pub fn expand_in_simple_roots(&self, v: &Point) -> Option<Vec<Rat>> {
        let mut coeffs = Vec::with_capacity(self.rank());
        let mut covered = vec![false; self.dim];
        for block in &self.blocks {
            let local: Vec<&Rat> = (0..block.dim).map(|j| &v.0[block.start + j]).collect();
            for j in 0..block.dim {
                covered[block.start + j] = true;
            }
            // In both layouts the coefficient of the j-th simple root of the
            // block is the j-th partial sum of the local coordinates.
            let mut partial = Rat::zero();
            match block.family {
                Family::A => {
                    for (j, c) in local.iter().enumerate() {
                        partial += *c;
                        if j + 1 < block.dim {
                            coeffs.push(partial.clone());
                        }
                    }
                    if !partial.is_zero() {
                        return None;
                    }
                }
                Family::B | Family::BC => {
                    for c in &local {
                        partial += *c;
                        coeffs.push(partial.clone());
                    }
                }
            }
        }
        for (i, c) in covered.iter().enumerate() {
            if !c && !v.0[i].is_zero() {
                return None;
            }
        }
        Some(coeffs)
    }

    /// Orthogonal projection onto the span of the roots (per block; the mean
    /// is removed on A blocks, trivial coordinates are zeroed).
    pub fn project_span(&self, x: &Point) -> Point {
        let mut out = Point::zero(self.dim);
        for block in &self.blocks {
            match block.family {
                Family::A => {
                    let mut mean = Rat::zero();
                    for j in 0..block.dim {
                        mean += &x.0[block.start + j];
                    }
                    mean /= rat(block.dim as i64);
                    for j in 0..block.dim {
                        out.0[block.start + j] = &x.0[block.start + j] - &mean;
                    }
                }
                Family::B | Family::BC => {
                    for j in 0..block.dim {
                        out.0[block.start + j] = x.0[block.start + j].clone();
                    }
                }
            }
        }
        out
    }

    /// Orthogonal projection onto the orthocomplement of the root span.
    pub fn project_complement(&self, x: &Point) -> Point {
        x.sub(&self.project_span(x))
    }

    /// Dominance order: lambda - mu a nonnegative integer combination of
    /// simple roots.
    pub fn dominance_le(&self, mu: &Weight, lambda: &Weight) -> bool {
        let diff = lambda.sub(mu).to_point();
        match self.expand_in_simple_roots(&diff) {
            None => false,
            Some(coeffs) => coeffs.iter().all(|c| !c.is_negative() && c.is_integer()),
        }
    }

    /// Extended order on all weights: compare dominant representatives, and
    /// within one Weyl orbit reverse the dominance comparison.
    pub fn tri_order(&self, mu: &Weight, lambda: &Weight) -> bool {
        let (mu_plus, _) = self.dominant_rep_weight(mu);
        let (la_plus, _) = self.dominant_rep_weight(lambda);
        if mu_plus == la_plus {
            self.dominance_le(lambda, mu)
        } else {
            self.dominance_le(&mu_plus, &la_plus)
        }
    }

    /// True when lambda pairs to {0,1} with every positive coroot.
    pub fn is_minuscule(&self, lambda: &Weight) -> bool {
        self.positive_roots
            .iter()
            .all(|r| matches!(dot_ii(&r.coroot, &lambda.0), 0 | 1))
    }

    fn valid_descent_letters(&self, w: &Weight) -> Result<Vec<usize>> {
        let beta = self.highest_short_root()?;
        let mut out = Vec::new();
        if dot_ii(&beta.coroot, &w.0) > 1 {
            out.push(0);
        }
        for i in 1..=self.rank() {
            if dot_ii(&self.simple_root(i).vec, &w.0) < 0 {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Shortest dual-affine word carrying `lambda` to a minuscule weight.
    /// The letters are stored in the order the intertwiners are applied when
    /// rebuilding from the minuscule representative; reading them from the
    /// back and acting on `lambda` descends to the representative. Each
    /// descent step crosses one wall toward the fundamental alcove, so the
    /// word is reduced and of minimal length.
    pub fn descent_word(&self, lambda: &Weight) -> Result<AffineWord> {
        self.descent_word_with(lambda, TieBreak::SmallestIndex)
    }

    pub fn descent_word_with(&self, lambda: &Weight, tie: TieBreak) -> Result<AffineWord> {
        let mut cur = lambda.clone();
        let mut letters = Vec::new();
        loop {
            let valid = self.valid_descent_letters(&cur)?;
            let Some(&letter) = (match tie {
                TieBreak::SmallestIndex => valid.first(),
                TieBreak::LargestIndex => valid.last(),
            }) else {
                debug_assert!(self.is_minuscule(&cur));
                letters.reverse();
                return Ok(AffineWord { letters });
            };
            cur = self.apply_letter(letter, &cur)?;
            letters.push(letter);
        }
    }

    /// Minuscule endpoint of the descent from `lambda`.
    pub fn minuscule_rep(&self, lambda: &Weight) -> Result<Weight> {
        let word = self.descent_word(lambda)?;
        let mut cur = lambda.clone();
        for &letter in word.letters.iter().rev() {
            cur = self.apply_letter(letter, &cur)?;
        }
        Ok(cur)
    }

    /// All Weyl group elements as words in the simple reflections, found by
    /// breadth-first closure. Deduplication acts on a regular point, so the
    /// enumeration is exact; `cap` guards against large-rank blowups.
    pub fn weyl_elements(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let generic = Point(
            (0..self.dim)
                .map(|i| Rat::new(1.into(), num_bigint::BigInt::from(2i64.pow(i as u32 + 1))))
                .collect(),
        );
        let mut seen = vec![generic.clone()];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(idx) = queue.pop_front() {
            for i in 1..=self.rank() {
                let img = Self::reflect_point_by_root(self.simple_root(i), &seen[idx]);
                if !seen.contains(&img) {
                    if seen.len() >= cap {
                        return Err(Error::UnsupportedFamily(format!(
                            "Weyl group larger than cap {cap}"
                        )));
                    }
                    let mut word = words[idx].clone();
                    word.push(i);
                    seen.push(img);
                    words.push(word);
                    queue.push_back(seen.len() - 1);
                }
            }
        }
        Ok(words)
    }

    /// Weyl orbit of a weight.
    pub fn weyl_orbit(&self, w: &Weight) -> Vec<Weight> {
        let mut orbit = vec![w.clone()];
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(idx) = queue.pop_front() {
            for i in 1..=self.rank() {
                let img = Self::reflect_weight(self.simple_root(i), &orbit[idx]);
                if !orbit.contains(&img) {
                    orbit.push(img);
                    queue.push_back(orbit.len() - 1);
                }
            }
        }
        orbit
    }
}

/// Per-block multiplicity values, keyed by root orbit.
#[derive(Clone, Debug, PartialEq)]
pub enum BlockKappa {
    /// Single orbit value k3 on e_i - e_j.
    A { k3: Rat },
    /// k1 on e_i, k3 on e_i +- e_j.
    B { k1: Rat, k3: Rat },
    /// k1 on e_i, k2 on 2e_i, k3 on e_i +- e_j.
    BC { k1: Rat, k2: Rat, k3: Rat },
}

/// W-invariant multiplicity function, stored per orbit so invariance is
/// structural.
#[derive(Clone, Debug, PartialEq)]
pub struct Multiplicity {
    blocks: Vec<BlockKappa>,
}

impl Multiplicity {
    pub fn new(blocks: Vec<BlockKappa>) -> Self {
        Multiplicity { blocks }
    }

    pub fn a(k3: Rat) -> Self {
        Multiplicity {
            blocks: vec![BlockKappa::A { k3 }],
        }
    }

    pub fn b(k1: Rat, k3: Rat) -> Self {
        Multiplicity {
            blocks: vec![BlockKappa::B { k1, k3 }],
        }
    }

    pub fn bc(k1: Rat, k2: Rat, k3: Rat) -> Self {
        Multiplicity {
            blocks: vec![BlockKappa::BC { k1, k2, k3 }],
        }
    }

    pub fn zero_for(sys: &RootSystem) -> Self {
        Self::constant_for(sys, Rat::zero())
    }

    /// One on every orbit; the perturbation direction for boundary limits.
    pub fn unit_for(sys: &RootSystem) -> Self {
        Self::constant_for(sys, Rat::one())
    }

    fn constant_for(sys: &RootSystem, value: Rat) -> Self {
        let blocks = sys
            .blocks()
            .iter()
            .map(|b| match b.family {
                Family::A => BlockKappa::A { k3: value.clone() },
                Family::B => BlockKappa::B {
                    k1: value.clone(),
                    k3: value.clone(),
                },
                Family::BC => BlockKappa::BC {
                    k1: value.clone(),
                    k2: value.clone(),
                    k3: value.clone(),
                },
            })
            .collect();
        Multiplicity { blocks }
    }

    pub fn matches(&self, sys: &RootSystem) -> bool {
        self.blocks.len() == sys.blocks().len()
            && self.blocks.iter().zip(sys.blocks()).all(|(k, b)| {
                matches!(
                    (k, b.family),
                    (BlockKappa::A { .. }, Family::A)
                        | (BlockKappa::B { .. }, Family::B)
                        | (BlockKappa::BC { .. }, Family::BC)
                )
            })
    }

    pub fn k(&self, orbit: &Orbit) -> &Rat {
        match (&self.blocks[orbit.block], orbit.kind) {
            (BlockKappa::A { k3 }, OrbitKind::Medium) => k3,
            (BlockKappa::B { k1, .. }, OrbitKind::Short) => k1,
            (BlockKappa::B { k3, .. }, OrbitKind::Medium) => k3,
            (BlockKappa::BC { k1, .. }, OrbitKind::Short) => k1,
            (BlockKappa::BC { k2, .. }, OrbitKind::Long) => k2,
            (BlockKappa::BC { k3, .. }, OrbitKind::Medium) => k3,
            _ => panic!("orbit does not belong to this multiplicity"),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.blocks.iter().all(|b| match b {
            BlockKappa::A { k3 } => !k3.is_negative(),
            BlockKappa::B { k1, k3 } => !k1.is_negative() && !k3.is_negative(),
            BlockKappa::BC { k1, k2, k3 } => {
                !k1.is_negative() && !k2.is_negative() && !k3.is_negative()
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| match b {
            BlockKappa::A { k3 } => k3.is_zero(),
            BlockKappa::B { k1, k3 } => k1.is_zero() && k3.is_zero(),
            BlockKappa::BC { k1, k2, k3 } => k1.is_zero() && k2.is_zero() && k3.is_zero(),
        })
    }

    /// Flat list of the orbit values, block by block.
    pub fn values(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        for b in &self.blocks {
            match b {
                BlockKappa::A { k3 } => out.push(k3.clone()),
                BlockKappa::B { k1, k3 } => out.extend([k1.clone(), k3.clone()]),
                BlockKappa::BC { k1, k2, k3 } => out.extend([k1.clone(), k2.clone(), k3.clone()]),
            }
        }
        out
    }

    /// Multiplicity of the root `2a` (zero when 2a is not a root).
    pub fn k_double(&self, sys: &RootSystem, root: &Root) -> Rat {
        let doubled: Vec<i64> = root.vec.iter().map(|c| 2 * c).collect();
        match sys.find_positive_root(&doubled) {
            Some(r) => self.k(&r.orbit).clone(),
            None => Rat::zero(),
        }
    }

    /// Multiplicity of the root `a/2` (zero when a/2 is not a root).
    pub fn k_half(&self, sys: &RootSystem, root: &Root) -> Rat {
        if root.vec.iter().any(|c| c % 2 != 0) {
            return Rat::zero();
        }
        let halved: Vec<i64> = root.vec.iter().map(|c| c / 2).collect();
        match sys.find_positive_root(&halved) {
            Some(r) => self.k(&r.orbit).clone(),
            None => Rat::zero(),
        }
    }

    /// Graded-Hecke constant for letter j: k_{a_j} + 2 k_{2a_j} for a simple
    /// root (j >= 1), or k_beta for the affine letter 0.
    pub fn hecke_k(&self, sys: &RootSystem, letter: usize) -> Result<Rat> {
        if letter == 0 {
            let beta = sys.highest_short_root()?;
            Ok(self.k(&beta.orbit).clone())
        } else {
            let root = sys.simple_root(letter);
            Ok(self.k(&root.orbit) + rat(2) * self.k_double(sys, root))
        }
    }
}

/// One hundred percent structural sanity checks live here; the deeper
/// order/descent properties are exercised in the integration tests.
#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn w(coords: &[i64]) -> Weight {
        Weight(coords.to_vec())
    }

    fn pt(coords: &[i64]) -> Point {
        Weight(coords.to_vec()).to_point()
    }

    #[test]
    fn bc2_roots_and_closure() {
        let sys = RootSystem::new(Family::BC, 2).unwrap();
        assert_eq!(sys.positive_roots().len(), 6);
        assert_eq!(sys.rank(), 2);
        // s_a R = R for every root: reflect all signed roots by all roots.
        let mut all: Vec<Vec<i64>> = sys.positive_roots().iter().map(|r| r.vec.clone()).collect();
        all.extend(
            sys.positive_roots()
                .iter()
                .map(|r| r.vec.iter().map(|c| -c).collect::<Vec<i64>>()),
        );
        for root in sys.positive_roots() {
            for v in &all {
                let img = RootSystem::reflect_weight(root, &Weight(v.clone()));
                assert!(all.contains(&img.0), "reflection left the root set");
            }
        }
        // Integrality: <a^v, b> in Z is automatic with integer coroots; spot
        // check the pairing values.
        for a in sys.positive_roots() {
            for b in sys.positive_roots() {
                let _ = dot_ii(&a.coroot, &b.vec);
            }
        }
    }

    #[test]
    fn coroot_examples() {
        let a = pt(&[2, 0]);
        assert_eq!(RootSystem::coroot(&a).unwrap(), pt(&[1, 0]));
        let a = pt(&[1, 0]);
        assert_eq!(RootSystem::coroot(&a).unwrap(), pt(&[2, 0]));
        let a = pt(&[1, -1]);
        assert_eq!(RootSystem::coroot(&a).unwrap(), pt(&[1, -1]));
        assert!(RootSystem::coroot(&Point::zero(2)).is_err());
    }

    #[test]
    fn reflect_examples() {
        let x = pt(&[3, 5]);
        assert_eq!(RootSystem::reflect(&pt(&[1, -1]), &x).unwrap(), pt(&[5, 3]));
        assert_eq!(RootSystem::reflect(&pt(&[1, 0]), &x).unwrap(), pt(&[-3, 5]));
        assert_eq!(
            RootSystem::reflect(&pt(&[1, 1]), &x).unwrap(),
            pt(&[-5, -3])
        );
    }

    #[test]
    fn affine_reflection_examples() {
        let sys = RootSystem::new(Family::BC, 2).unwrap();
        assert_eq!(sys.affine_s0_weight(&w(&[0, 0])).unwrap(), w(&[1, 0]));
        assert_eq!(sys.affine_s0_weight(&w(&[1, 0])).unwrap(), w(&[0, 0]));
        assert_eq!(sys.affine_s0_weight(&w(&[-1, 3])).unwrap(), w(&[2, 3]));
        let prod = RootSystem::product(&[(Family::BC, 1), (Family::BC, 1)], 0).unwrap();
        assert!(prod.affine_s0_weight(&w(&[0, 0])).is_err());
    }

    #[test]
    fn rho_examples() {
        let sys = RootSystem::new(Family::BC, 2).unwrap();
        let kappa = Multiplicity::bc(rat(1), rat(1), rat(1));
        assert_eq!(sys.rho(&kappa), Point(vec![ratio(5, 2), ratio(3, 2)]));
        assert!(sys.rho(&Multiplicity::zero_for(&sys)).is_zero());
        let a = RootSystem::new(Family::A, 2).unwrap();
        assert_eq!(
            a.rho(&Multiplicity::a(rat(1))),
            Point(vec![ratio(1, 2), ratio(-1, 2)])
        );
    }

    #[test]
    fn dominant_rep_examples() {
        let sys = RootSystem::new(Family::BC, 2).unwrap();
        let (rep, len) = sys.dominant_rep_weight(&w(&[-1, 3]));
        assert_eq!(rep, w(&[3, 1]));
        assert!(len > 0);
        let (rep, len) = sys.dominant_rep_weight(&w(&[3, 1]));
        assert_eq!(rep, w(&[3, 1]));
        assert_eq!(len, 0);
        let a = RootSystem::new(Family::A, 2).unwrap();
        assert_eq!(a.dominant_rep_weight(&w(&[0, 1])).0, w(&[1, 0]));
    }

    #[test]
    fn dominance_and_tri_order_examples() {
        let sys = RootSystem::new(Family::BC, 2).unwrap();
        assert!(sys.dominance_le(&w(&[1, 0]), &w(&[1, 1])));
        assert!(sys.tri_order(&w(&[1, 0]), &w(&[1, 0])));
        assert!(!sys.tri_order(&w(&[0, 1]), &w(&[1, 0])));
        assert!(sys.tri_order(&w(&[1, 0]), &w(&[0, 1])));
    }

    #[test]
    fn minuscule_examples() {
        let bc = RootSystem::new(Family::BC, 2).unwrap();
        assert!(bc.is_minuscule(&w(&[0, 0])));
        assert!(!bc.is_minuscule(&w(&[1, 0])));
        let a = RootSystem::new(Family::A, 3).unwrap();
        assert!(a.is_minuscule(&w(&[1, 0, 0])));
    }

    #[test]
    fn descent_word_examples() {
        let bc1 = RootSystem::new(Family::BC, 1).unwrap();
        assert!(bc1.descent_word(&w(&[0])).unwrap().is_empty());
        assert_eq!(bc1.descent_word(&w(&[1])).unwrap().letters, vec![0]);
        assert_eq!(bc1.descent_word(&w(&[-1])).unwrap().letters, vec![0, 1]);
        assert_eq!(bc1.minuscule_rep(&w(&[-1])).unwrap(), w(&[0]));
    }

    #[test]
    fn weyl_group_orders() {
        let bc2 = RootSystem::new(Family::BC, 2).unwrap();
        assert_eq!(bc2.weyl_elements(1000).unwrap().len(), 8);
        let a3 = RootSystem::new(Family::A, 3).unwrap();
        assert_eq!(a3.weyl_elements(1000).unwrap().len(), 6);
        let b2 = RootSystem::new(Family::B, 2).unwrap();
        assert_eq!(b2.weyl_elements(1000).unwrap().len(), 8);
        assert_eq!(bc2.weyl_orbit(&w(&[1, 0])).len(), 4);
    }

    #[test]
    fn hecke_constants() {
        let bc1 = RootSystem::new(Family::BC, 1).unwrap();
        let kappa = Multiplicity::bc(rat(1), rat(2), rat(0));
        // Letter 1 reflects by e_1; 2e_1 is also a root, so k = k1 + 2 k2.
        assert_eq!(kappa.hecke_k(&bc1, 1).unwrap(), rat(5));
        // The affine letter uses the highest short root e_1 itself.
        assert_eq!(kappa.hecke_k(&bc1, 0).unwrap(), rat(1));
        let b2 = RootSystem::new(Family::B, 2).unwrap();
        let kb = Multiplicity::b(rat(3), rat(2));
        assert_eq!(kb.hecke_k(&b2, 2).unwrap(), rat(3));
        assert_eq!(kb.hecke_k(&b2, 1).unwrap(), rat(2));
    }
}
