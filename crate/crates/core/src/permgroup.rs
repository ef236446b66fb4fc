//! The permutation group of a separated polynomial: variable permutations
//! `τ` with `F∘τ = F`.
//!
//! A permutation can only send a monomial to a monomial with the same
//! exponent multiset, so the group is a direct product of one symmetric
//! group per pure block and one wreath-type factor `W ≀ S_c` per class of
//! `c` mixed monomials sharing an exponent list, where `W` permutes equal
//! exponents inside one monomial.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use thiserror::Error;

use crate::polyio::{CanonicalForm, Exponent};

/// Largest variable count accepted by [`brute_force_perm_order`].
pub const BRUTE_FORCE_MAX_VARS: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermGroupError {
    #[error("brute-force enumeration needs at most {BRUTE_FORCE_MAX_VARS} variables, got {0}")]
    TooManyVariables(usize),
}

/// A permutation of variable indices; `images[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// Panics unless `images` is a permutation of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(i < images.len() && !seen[i], "not a permutation: {images:?}");
            seen[i] = true;
        }
        Permutation { images }
    }

    /// The cycle `c[0] → c[1] → … → c[last] → c[0]` on `n` points.
    pub fn cycle(n: usize, c: &[usize]) -> Self {
        let mut p = Self::identity(n);
        for (k, &from) in c.iter().enumerate() {
            p.images[from] = c[(k + 1) % c.len()];
        }
        p
    }

    /// Product of disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Self {
        let mut p = Self::identity(n);
        for c in cycles {
            for (k, &from) in c.iter().enumerate() {
                p.images[from] = c[(k + 1) % c.len()];
            }
        }
        Self::from_images(p.images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Exponent vector of the monomial after substituting `x_i ↦ x_{τ(i)}`.
    pub fn act_on_exponents<T: Clone + Default>(&self, v: &[T]) -> Vec<T> {
        let mut out = vec![T::default(); v.len()];
        for (i, x) in v.iter().enumerate() {
            out[self.images[i]] = x.clone();
        }
        out
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                seen[j] = true;
                c.push(j);
                j = self.images[j];
            }
            out.push(c);
        }
        out
    }

    /// Cycle notation over variable names, `()` for the identity.
    pub fn to_cycle_string(&self, names: &[String]) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| format!("({})", c.iter().map(|&i| names[i].as_str()).join(" ")))
            .collect()
    }
}

/// Mixed monomials sharing one exponent list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedClass {
    /// Indices into `CanonicalForm::mixed_blocks`.
    pub blocks: Vec<usize>,
    pub exponents: Vec<Exponent>,
    /// Lengths of runs of equal exponents inside one monomial (only runs > 1).
    pub inner_runs: Vec<usize>,
}

impl MixedClass {
    /// `|W|`, the order of the inner factor.
    pub fn inner_order(&self) -> BigUint {
        self.inner_runs.iter().map(|&r| factorial(r)).product()
    }

    fn structure(&self) -> Vec<String> {
        let inner: Vec<String> = self.inner_runs.iter().map(|r| format!("S{r}")).collect();
        match (self.blocks.len(), inner.len()) {
            (1, _) => inner,
            (c, 0) => vec![format!("S{c}")],
            (c, 1) => vec![format!("{} wr S{c}", inner[0])],
            (c, _) => vec![format!("({}) wr S{c}", inner.join(" × "))],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroupDescription {
    /// `k_i` for each pure block: the factor `S_{k_i}`.
    pub pure_factors: Vec<usize>,
    pub mixed_classes: Vec<MixedClass>,
    pub order: BigUint,
    pub generators: Vec<Permutation>,
}

impl PermGroupDescription {
    /// E.g. `S3`, `S2 wr S2 × S3`, or `1` for the trivial group.
    pub fn structure(&self) -> String {
        let parts: Vec<String> = self
            .mixed_classes
            .iter()
            .flat_map(MixedClass::structure)
            .chain(self.pure_factors.iter().filter(|&&k| k > 1).map(|k| format!("S{k}")))
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" × ")
        }
    }
}

impl fmt::Display for PermGroupDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.structure())
    }
}

pub fn factorial(k: usize) -> BigUint {
    (1..=k).map(BigUint::from).product()
}

/// Transposition of the first two points, plus the full cycle when there
/// are at least three: together they generate the symmetric group.
fn symmetric_generators(n: usize, points: &[usize]) -> Vec<Permutation> {
    let mut gens = Vec::new();
    if points.len() >= 2 {
        gens.push(Permutation::cycle(n, &points[..2]));
    }
    if points.len() >= 3 {
        gens.push(Permutation::cycle(n, points));
    }
    gens
}

/// Start index of each mixed block's variables in `var_order`.
fn block_offsets(cf: &CanonicalForm) -> Vec<usize> {
    cf.mixed_blocks()
        .iter()
        .scan(0, |acc, b| {
            let start = *acc;
            *acc += b.vars.len();
            Some(start)
        })
        .collect()
}

pub fn permutation_group(cf: &CanonicalForm) -> PermGroupDescription {
    let n = cf.num_vars();
    let mixed = cf.mixed_blocks();
    let offsets = block_offsets(cf);
    let mut generators = Vec::new();

    // Blocks are sorted by exponent list, so equal lists are adjacent.
    let mixed_classes: Vec<MixedClass> = (0..mixed.len())
        .chunk_by(|&i| &mixed[i].exponents)
        .into_iter()
        .map(|(exponents, blocks)| {
            let blocks: Vec<usize> = blocks.collect();
            let inner_runs = exponents
                .iter()
                .chunk_by(|&&e| e)
                .into_iter()
                .map(|(_, run)| run.count())
                .filter(|&r| r > 1)
                .collect();
            MixedClass { blocks, exponents: exponents.clone(), inner_runs }
        })
        .collect();

    for class in &mixed_classes {
        let first = offsets[class.blocks[0]];
        let mut pos = 0;
        for (_, run) in &class.exponents.iter().chunk_by(|&&e| e) {
            let len = run.count();
            let pts: Vec<usize> = (first + pos..first + pos + len).collect();
            generators.extend(symmetric_generators(n, &pts));
            pos += len;
        }
        let width = class.exponents.len();
        let c = class.blocks.len();
        if c >= 2 {
            // swap the first two monomials position by position
            let (a, b) = (offsets[class.blocks[0]], offsets[class.blocks[1]]);
            let swaps: Vec<Vec<usize>> = (0..width).map(|j| vec![a + j, b + j]).collect();
            generators.push(Permutation::from_cycles(n, &swaps));
        }
        if c >= 3 {
            let rotate: Vec<Vec<usize>> = (0..width)
                .map(|j| class.blocks.iter().map(|&blk| offsets[blk] + j).collect())
                .collect();
            generators.push(Permutation::from_cycles(n, &rotate));
        }
    }

    let mut start = mixed.iter().map(|b| b.vars.len()).sum::<usize>();
    let mut pure_factors = Vec::new();
    for b in cf.pure_blocks() {
        let k = b.vars.len();
        let pts: Vec<usize> = (start..start + k).collect();
        generators.extend(symmetric_generators(n, &pts));
        pure_factors.push(k);
        start += k;
    }

    let order = pure_factors.iter().map(|&k| factorial(k)).product::<BigUint>()
        * mixed_classes
            .iter()
            .map(|cl| factorial(cl.blocks.len()) * cl.inner_order().pow(cl.blocks.len() as u32))
            .product::<BigUint>();

    PermGroupDescription { pure_factors, mixed_classes, order, generators }
}

fn sorted_monomials(cf: &CanonicalForm) -> Vec<Vec<Exponent>> {
    let mut monos = cf.exponent_vectors();
    monos.sort();
    monos
}

/// Whether `F∘τ = F`: `τ` permutes the monomials of the unit-coefficient form.
pub fn preserves(cf: &CanonicalForm, tau: &Permutation) -> bool {
    let monos = sorted_monomials(cf);
    let mut image: Vec<Vec<Exponent>> = monos.iter().map(|m| tau.act_on_exponents(m)).collect();
    image.sort();
    image == monos
}

/// Counts all `τ ∈ S_n` with `F∘τ = F` by enumeration.
pub fn brute_force_perm_order(cf: &CanonicalForm) -> Result<u64, PermGroupError> {
    let n = cf.num_vars();
    if n > BRUTE_FORCE_MAX_VARS {
        return Err(PermGroupError::TooManyVariables(n));
    }
    let monos = sorted_monomials(cf);
    let count = (0..n)
        .permutations(n)
        .filter(|images| {
            let tau = Permutation { images: images.clone() };
            let mut image: Vec<Vec<Exponent>> = monos.iter().map(|m| tau.act_on_exponents(m)).collect();
            image.sort();
            image == monos
        })
        .count();
    Ok(count as u64)
}

/// Order of the group generated by `gens` on `n` points, by breadth-first
/// closure. Returns `None` once more than `limit` elements are found.
pub fn closure_order(n: usize, gens: &[Permutation], limit: usize) -> Option<usize> {
    let id = Permutation::identity(n);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.compose(&p);
            if seen.insert(q.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(q);
            }
        }
    }
    Some(seen.len())
}
