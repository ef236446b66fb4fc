//! Explicit one-parameter subgroups of the maximal torus and the weight
//! cone of the coordinate functions.
//!
//! `T₀` scales every variable with a positive weight (`P/L_i` on mixed
//! variables, `P/q_i` on pure ones, `P = Π L_i · Π q_i`); for each mixed
//! monomial `i` and `j ≥ 2`, `T_ij` scales `X_i1` by `l_ij` and `X_ij` by
//! `−l_i1`. The positive `T₀` weights are what make the weight cone pointed.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::intlat::{kernel_basis, lattice_coordinates, smith_normal_form, IntMatrix};
use crate::polyio::CanonicalForm;
use crate::quasitorus::{character_matrix, QuasitorusError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusGenerators {
    /// Weight of each variable under `T₀`, in `var_order`.
    pub t0: Vec<BigInt>,
    /// `(i, j, cocharacter)` for mixed block `i` (0-based) and position `j ≥ 1`.
    pub tij: Vec<(usize, usize, Vec<BigInt>)>,
}

impl TorusGenerators {
    pub fn all(&self) -> Vec<Vec<BigInt>> {
        std::iter::once(self.t0.clone()).chain(self.tij.iter().map(|(_, _, v)| v.clone())).collect()
    }
}

pub fn torus_generators(cf: &CanonicalForm) -> Result<TorusGenerators, QuasitorusError> {
    if cf.monomial_count() < 2 {
        return Err(QuasitorusError::SingleMonomial);
    }
    let n = cf.num_vars();
    let mixed = cf.mixed_blocks();
    let product: BigInt = mixed
        .iter()
        .map(|b| BigInt::from(b.degree()))
        .chain(cf.pure_blocks().iter().map(|b| BigInt::from(b.exponent)))
        .product();

    let mut t0 = Vec::with_capacity(n);
    for b in mixed {
        let w = &product / BigInt::from(b.degree());
        t0.extend(std::iter::repeat_n(w, b.vars.len()));
    }
    for b in cf.pure_blocks() {
        let w = &product / BigInt::from(b.exponent);
        t0.extend(std::iter::repeat_n(w, b.vars.len()));
    }

    let mut tij = Vec::new();
    let mut offset = 0;
    for (i, b) in mixed.iter().enumerate() {
        for j in 1..b.vars.len() {
            let mut v = vec![BigInt::zero(); n];
            v[offset] = BigInt::from(b.exponents[j]);
            v[offset + j] = -BigInt::from(b.exponents[0]);
            tij.push((i, j, v));
        }
        offset += b.vars.len();
    }
    Ok(TorusGenerators { t0, tij })
}

/// Index of the sublattice spanned by `gens` inside the lattice with basis
/// `basis`, or `None` if some generator lies outside it or the span has
/// lower rank.
pub fn sublattice_index(basis: &[Vec<BigInt>], gens: &[Vec<BigInt>]) -> Option<BigInt> {
    let coords = gens
        .iter()
        .map(|g| lattice_coordinates(basis, g))
        .collect::<Option<Vec<_>>>()?;
    let snf = smith_normal_form(&IntMatrix::from_big_rows(&coords, basis.len()));
    (snf.rank() == basis.len()).then(|| snf.divisors.iter().product())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeDescription {
    pub basis: Vec<Vec<BigInt>>,
    /// Weight of coordinate function `v`: its entry in each basis cocharacter.
    pub weights: Vec<Vec<BigInt>>,
    pub pointed: bool,
    /// `u` with `⟨u, w_v⟩ > 0` for every `v`.
    pub witness: Option<Vec<BigInt>>,
}

impl ConeDescription {
    /// Checks the witness with one inner product per variable.
    pub fn witness_holds(&self) -> bool {
        self.witness
            .as_ref()
            .is_some_and(|u| self.weights.iter().all(|w| dot(u, w).is_positive()))
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn weight_cone(cf: &CanonicalForm) -> Result<ConeDescription, QuasitorusError> {
    let cd = character_matrix(cf)?;
    weight_cone_in_basis(cf, kernel_basis(&cd.difference))
}

/// Weight cone with respect to a caller-chosen basis of `ker D`.
///
/// The witness is the coordinate vector of `T₀` in that basis; it is absent
/// (and the cone reported not pointed) only if `T₀` is not in the lattice
/// spanned by `basis`.
pub fn weight_cone_in_basis(
    cf: &CanonicalForm,
    basis: Vec<Vec<BigInt>>,
) -> Result<ConeDescription, QuasitorusError> {
    let gens = torus_generators(cf)?;
    let n = cf.num_vars();
    let weights = (0..n).map(|v| basis.iter().map(|b| b[v].clone()).collect()).collect();
    let witness = lattice_coordinates(&basis, &gens.t0);
    let mut cone = ConeDescription { basis, weights, pointed: false, witness };
    cone.pointed = cone.witness_holds();
    Ok(cone)
}

/// Applies a unimodular `d × d` change of basis: new `b'_k = Σ_j g_kj b_j`.
pub fn change_basis(basis: &[Vec<BigInt>], g: &IntMatrix) -> Vec<Vec<BigInt>> {
    assert!(g.det().abs().is_one(), "change of basis must be unimodular");
    let n = basis.first().map_or(0, Vec::len);
    let b = IntMatrix::from_big_rows(basis, n);
    g.mul(&b).row_vecs()
}
