//! Assembly of the automorphism group `P(F) ⋉ ℍ` and certification of
//! monomial automorphisms by congruence arithmetic.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::permgroup::{permutation_group, PermGroupDescription, Permutation};
use crate::polyio::{CanonicalForm, Exponent};
use crate::quasitorus::{
    character_matrix, in_kernel_mod, quasitorus_structure, QuasitorusDescription, QuasitorusError,
    TorsionGenerator,
};
use crate::rigidity::{rigidity_certificate, RigidityCertificate, RigidityVerdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutError {
    #[error(transparent)]
    Quasitorus(#[from] QuasitorusError),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IrreducibilityVerdict {
    Irreducible,
    /// Two or fewer monomials; such hypersurfaces can be reducible (`x² + y²`).
    Undetermined,
}

impl IrreducibilityVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            IrreducibilityVerdict::Irreducible => "irreducible",
            IrreducibilityVerdict::Undetermined => "undetermined",
        }
    }
}

impl fmt::Display for IrreducibilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn irreducibility_verdict(cf: &CanonicalForm) -> IrreducibilityVerdict {
    if cf.monomial_count() >= 3 {
        IrreducibilityVerdict::Irreducible
    } else {
        IrreducibilityVerdict::Undetermined
    }
}

/// `x_v ↦ ζ_N^{e_{τ(v)}} x_{τ(v)}`: a variable permutation followed by a
/// diagonal scaling by powers of a primitive `N`-th root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    pub permutation: Permutation,
    pub order: BigInt,
    pub exponents: Vec<BigInt>,
}

impl MonomialMap {
    pub fn identity(n: usize) -> Self {
        MonomialMap { permutation: Permutation::identity(n), order: BigInt::one(), exponents: vec![BigInt::from(0); n] }
    }

    pub fn permutation(tau: Permutation) -> Self {
        let n = tau.len();
        MonomialMap { permutation: tau, order: BigInt::one(), exponents: vec![BigInt::from(0); n] }
    }

    pub fn diagonal(g: &TorsionGenerator) -> Self {
        MonomialMap {
            permutation: Permutation::identity(g.exponents.len()),
            order: g.order.clone(),
            exponents: g.exponents.clone(),
        }
    }

    /// A one-parameter subgroup evaluated at a primitive `N`-th root of unity.
    pub fn cocharacter_at(a: &[BigInt], modulus: u64) -> Self {
        let n = BigInt::from(modulus);
        MonomialMap {
            permutation: Permutation::identity(a.len()),
            order: n.clone(),
            exponents: a.iter().map(|x| x.mod_floor(&n)).collect(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("map acts on {found} variables, polynomial has {expected}")]
    WrongArity { expected: usize, found: usize },
    #[error("order must be positive")]
    InvalidOrder,
    #[error("not an automorphism: monomial {monomial} is sent to a monomial outside F")]
    MismatchedMonomial { monomial: usize },
    #[error("not an automorphism: monomial {monomial} scales by ζ^{residue}, expected ζ^{expected} (mod {order})")]
    Congruence { monomial: usize, residue: BigInt, expected: BigInt, order: BigInt },
}

/// Checks `F∘g = c·F` and returns `c` as an exponent of `ζ_N`.
///
/// `τ` must send every monomial onto a monomial of `F`, and every monomial
/// `Π x_v^{l_v}` must pick up the same residue `Σ l_v e_{τ(v)} (mod N)`.
pub fn verify_generator(cf: &CanonicalForm, g: &MonomialMap) -> Result<BigInt, VerifyError> {
    let n = cf.num_vars();
    if g.permutation.len() != n || g.exponents.len() != n {
        return Err(VerifyError::WrongArity { expected: n, found: g.permutation.len().max(g.exponents.len()) });
    }
    if !g.order.is_positive() {
        return Err(VerifyError::InvalidOrder);
    }
    let monomials = cf.exponent_vectors();
    let mut common: Option<BigInt> = None;
    for (i, mono) in monomials.iter().enumerate() {
        let image: Vec<Exponent> = g.permutation.act_on_exponents(mono);
        if !monomials.contains(&image) {
            return Err(VerifyError::MismatchedMonomial { monomial: i });
        }
        let residue = mono
            .iter()
            .enumerate()
            .map(|(v, &l)| BigInt::from(l) * &g.exponents[g.permutation.image(v)])
            .sum::<BigInt>()
            .mod_floor(&g.order);
        match &common {
            None => common = Some(residue),
            Some(c) if *c != residue => {
                return Err(VerifyError::Congruence {
                    monomial: i,
                    residue,
                    expected: c.clone(),
                    order: g.order.clone(),
                })
            }
            Some(_) => {}
        }
    }
    Ok(common.unwrap_or_default())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutGroupDescription {
    pub perm: PermGroupDescription,
    pub quasitorus: QuasitorusDescription,
    /// For each generator of `P(F)`, the permutation it induces on the
    /// diagonal coordinates of `ℍ` under conjugation.
    pub action: Vec<Permutation>,
    pub structure: String,
    pub rigidity: RigidityCertificate,
    /// Maximality of `P(F) ⋉ ℍ` is only guaranteed for rigid hypersurfaces.
    pub conditional: bool,
    pub irreducible: IrreducibilityVerdict,
}

impl AutGroupDescription {
    /// Conjugates a diagonal element by the `k`-th permutation generator.
    pub fn conjugate(&self, k: usize, g: &TorsionGenerator) -> TorsionGenerator {
        TorsionGenerator { order: g.order.clone(), exponents: self.action[k].act_on_exponents(&g.exponents) }
    }
}

/// `"<perm> ⋉ ((Z/d)^e × … × T^r)"` with equal divisors merged.
pub fn structure_string(perm: &str, torus_rank: usize, torsion: &[BigInt]) -> String {
    let factors = torsion
        .iter()
        .chunk_by(|d| (*d).clone())
        .into_iter()
        .map(|(d, run)| format!("(Z/{d})^{}", run.count()))
        .chain(std::iter::once(format!("T^{torus_rank}")))
        .join(" × ");
    format!("{perm} ⋉ ({factors})")
}

/// Replaces the non-ASCII group symbols.
pub fn to_ascii(s: &str) -> String {
    s.replace('⋉', "x|").replace('×', "x")
}

pub fn aut_group(cf: &CanonicalForm) -> Result<AutGroupDescription, AutError> {
    let cd = character_matrix(cf)?;
    let quasitorus = quasitorus_structure(&cd);
    let perm = permutation_group(cf);
    let rigidity = rigidity_certificate(cf);
    let structure = structure_string(&perm.structure(), quasitorus.torus_rank, &quasitorus.torsion);
    Ok(AutGroupDescription {
        action: perm.generators.clone(),
        conditional: rigidity.verdict != RigidityVerdict::CertifiedRigid,
        irreducible: irreducibility_verdict(cf),
        perm,
        quasitorus,
        structure,
        rigidity,
    })
}

/// `Aut` of `V(y_1^α + … + y_n^α)`.
pub fn fermat_aut(n: usize, alpha: Exponent) -> Result<AutGroupDescription, AutError> {
    if n < 2 || alpha < 2 {
        return Err(AutError::InvalidParameters(format!("need n >= 2 and alpha >= 2, got n = {n}, alpha = {alpha}")));
    }
    aut_group(&CanonicalForm::fermat(n, alpha))
}

/// Every generator the pipeline emits, as monomial maps: the `P(F)`
/// generators followed by the torsion generators of `ℍ`.
pub fn emitted_generators(aut: &AutGroupDescription) -> Vec<MonomialMap> {
    aut.perm
        .generators
        .iter()
        .cloned()
        .map(MonomialMap::permutation)
        .chain(aut.quasitorus.torsion_generators.iter().map(MonomialMap::diagonal))
        .collect()
}

/// Whether conjugating every torsion generator by every permutation
/// generator stays inside `ℍ`.
pub fn action_is_closed(cf: &CanonicalForm, aut: &AutGroupDescription) -> bool {
    let Ok(cd) = character_matrix(cf) else { return false };
    (0..aut.action.len()).all(|k| {
        aut.quasitorus.torsion_generators.iter().all(|g| {
            let h = aut.conjugate(k, g);
            in_kernel_mod(&cd.difference, &h.exponents, &h.order)
        })
    })
}
