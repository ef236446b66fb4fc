//! The quasitorus of diagonal maps preserving the hypersurface.
//!
//! A diagonal map `λ` preserves `V(F)` iff every monomial character takes
//! the same value on it, i.e. `λ` lies in the common kernel of the
//! differences `χ_i − χ_1`. The Smith form of the difference matrix `D`
//! gives the character group `ℤ^n / rowspace(D) ≅ ℤ^d ⊕ ⊕ ℤ/d_i`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive};
use rayon::prelude::*;
use thiserror::Error;

use crate::intlat::{smith_normal_form, IntMatrix};
use crate::polyio::CanonicalForm;

/// Upper bound on `N^n` for exhaustive torsion enumeration.
pub const ENUMERATION_LIMIT: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuasitorusError {
    #[error("polynomial has a single monomial; the hypersurface is a union of coordinate hyperplanes")]
    SingleMonomial,
    #[error("enumeration of {modulus}^{vars} points exceeds the limit of {ENUMERATION_LIMIT}")]
    EnumerationTooLarge { modulus: u64, vars: usize },
    #[error("modulus must be at least 1")]
    InvalidModulus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterData {
    /// Exponent vector of each monomial, in canonical monomial order.
    pub characters: Vec<Vec<BigInt>>,
    /// Rows `χ_i − χ_base` for every `i ≠ base`.
    pub difference: IntMatrix,
}

impl CharacterData {
    pub fn from_characters(characters: Vec<Vec<BigInt>>, base: usize) -> Self {
        let n = characters[0].len();
        let rows: Vec<Vec<BigInt>> = characters
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != base)
            .map(|(_, c)| c.iter().zip(&characters[base]).map(|(a, b)| a - b).collect())
            .collect();
        let difference = IntMatrix::from_big_rows(&rows, n);
        CharacterData { characters, difference }
    }

    /// Same characters with differences taken against monomial `base`.
    pub fn rebased(&self, base: usize) -> Self {
        Self::from_characters(self.characters.clone(), base)
    }

    pub fn num_vars(&self) -> usize {
        self.difference.cols()
    }
}

/// Monomial characters and their difference matrix against the first monomial.
pub fn character_matrix(cf: &CanonicalForm) -> Result<CharacterData, QuasitorusError> {
    if cf.monomial_count() < 2 {
        return Err(QuasitorusError::SingleMonomial);
    }
    let characters = cf
        .exponent_vectors()
        .into_iter()
        .map(|v| v.into_iter().map(BigInt::from).collect())
        .collect();
    Ok(CharacterData::from_characters(characters, 0))
}

/// The diagonal map `x_v ↦ ζ_N^{e_v} x_v` for a primitive `N`-th root `ζ_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionGenerator {
    pub order: BigInt,
    pub exponents: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasitorusDescription {
    /// Dimension of the identity component.
    pub torus_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
    /// Saturated basis of `ker D`: one-parameter subgroups of the identity component.
    pub cocharacter_basis: Vec<Vec<BigInt>>,
    pub torsion_generators: Vec<TorsionGenerator>,
}

impl QuasitorusDescription {
    /// `N^d · Π gcd(d_i, N)`: number of `e ∈ (ℤ/N)^n` with `D e ≡ 0 (mod N)`.
    pub fn torsion_point_count(&self, modulus: u64) -> BigInt {
        let n = BigInt::from(modulus);
        self.torsion
            .iter()
            .fold(n.clone().pow(self.torus_rank as u32), |acc, d| acc * d.gcd(&n))
    }
}

pub fn quasitorus_structure(cd: &CharacterData) -> QuasitorusDescription {
    let d = &cd.difference;
    let snf = smith_normal_form(d);
    let rank = snf.rank();
    let torsion_generators = snf
        .divisors
        .iter()
        .enumerate()
        .filter(|(_, div)| !div.is_one())
        .map(|(j, div)| TorsionGenerator {
            order: div.clone(),
            exponents: snf.v.column(j).iter().map(|x| x.mod_floor(div)).collect(),
        })
        .collect();
    QuasitorusDescription {
        torus_rank: d.cols() - rank,
        torsion: snf.torsion(),
        cocharacter_basis: (rank..d.cols()).map(|j| snf.v.column(j)).collect(),
        torsion_generators,
    }
}

/// Whether `D e ≡ 0 (mod modulus)`.
pub fn in_kernel_mod(d: &IntMatrix, e: &[BigInt], modulus: &BigInt) -> bool {
    d.mul_vec(e).iter().all(|x| x.is_multiple_of(modulus))
}

/// Exhaustively counts `e ∈ (ℤ/N)^n` with `D e ≡ 0 (mod N)`.
pub fn count_torsion_points_mod(cd: &CharacterData, modulus: u64) -> Result<u64, QuasitorusError> {
    if modulus == 0 {
        return Err(QuasitorusError::InvalidModulus);
    }
    let n = cd.num_vars();
    let too_large = QuasitorusError::EnumerationTooLarge { modulus, vars: n };
    let total = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(modulus).filter(|&t| t <= ENUMERATION_LIMIT));
    if total.is_none() {
        return Err(too_large);
    }

    let big_n = BigInt::from(modulus);
    let d = &cd.difference;
    // columns of D reduced mod N
    let cols: Vec<Vec<u64>> = (0..n)
        .map(|j| d.column(j).iter().map(|x| x.mod_floor(&big_n).to_u64().unwrap()).collect())
        .collect();
    let rows = d.rows();
    if n == 0 {
        return Ok(1);
    }

    // Split on the last coordinate; each chunk runs an odometer over the rest
    // while maintaining the residue vector incrementally.
    let count = (0..modulus)
        .into_par_iter()
        .map(|last| {
            let mut residue: Vec<u64> = cols[n - 1].iter().map(|c| c * last % modulus).collect();
            let mut digits = vec![0u64; n - 1];
            let mut count = 0u64;
            loop {
                if residue.iter().all(|&r| r == 0) {
                    count += 1;
                }
                let mut k = 0;
                loop {
                    if k == n - 1 {
                        return count;
                    }
                    digits[k] += 1;
                    for r in 0..rows {
                        residue[r] = (residue[r] + cols[k][r]) % modulus;
                    }
                    if digits[k] < modulus {
                        break;
                    }
                    // wrapped: N additions of the column bring the residue back
                    digits[k] = 0;
                    k += 1;
                }
            }
        })
        .sum();
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyio::{parse_polynomial, recognize_separated};
    use num_traits::Zero;

    fn cd(s: &str) -> CharacterData {
        character_matrix(&recognize_separated(&parse_polynomial(s).unwrap()).unwrap()).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    const WORKED: &str = "X11^10*X12^11 + Y1^10 + Y2^10 + Y3^10";

    /// Brute force over (ℤ/N)^n, independent of the incremental odometer.
    fn naive_count(cd: &CharacterData, modulus: u64) -> u64 {
        let n = cd.num_vars();
        let big_n = BigInt::from(modulus);
        let mut count = 0;
        for idx in 0..modulus.pow(n as u32) {
            let e: Vec<BigInt> = (0..n).map(|k| BigInt::from(idx / modulus.pow(k as u32) % modulus)).collect();
            if in_kernel_mod(&cd.difference, &e, &big_n) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn worked_characters() {
        let c = cd(WORKED);
        // canonical order puts X12 (exponent 11) first
        assert_eq!(
            c.characters,
            vec![big(&[11, 10, 0, 0, 0]), big(&[0, 0, 10, 0, 0]), big(&[0, 0, 0, 10, 0]), big(&[0, 0, 0, 0, 10])]
        );
        assert_eq!(c.difference.row(0), big(&[-11, -10, 10, 0, 0]).as_slice());
        assert_eq!(c.difference.rows(), 3);
    }

    #[test]
    fn small_difference_matrices() {
        assert_eq!(cd("y1^3+y2^3+y3^3").difference, IntMatrix::from_rows(&[vec![-3, 3, 0], vec![-3, 0, 3]]));
        // y^3 sorts before x^2
        assert_eq!(cd("x^2+y^3").difference, IntMatrix::from_rows(&[vec![-3, 2]]));
    }

    #[test]
    fn single_monomial_rejected() {
        let cf = recognize_separated(&parse_polynomial("x^2*y").unwrap()).unwrap();
        assert_eq!(character_matrix(&cf), Err(QuasitorusError::SingleMonomial));
    }

    #[test]
    fn worked_structure() {
        let q = quasitorus_structure(&cd(WORKED));
        assert_eq!(q.torus_rank, 2);
        assert_eq!(q.torsion, big(&[10, 10]));
        assert_eq!(q.cocharacter_basis.len(), 2);
    }

    #[test]
    fn fermat_and_coprime_structure() {
        let q = quasitorus_structure(&cd("y1^3+y2^3+y3^3"));
        assert_eq!((q.torus_rank, q.torsion.clone()), (1, big(&[3, 3])));
        let q = quasitorus_structure(&cd("x^2+y^3"));
        assert_eq!((q.torus_rank, q.torsion.clone()), (1, vec![]));
    }

    #[test]
    fn generators_satisfy_congruences() {
        for s in [WORKED, "y1^3+y2^3+y3^3", "a^2*b^4 + c^6*d^3 + e^4 + f^4", "x^2+y^3"] {
            let c = cd(s);
            let q = quasitorus_structure(&c);
            for g in &q.torsion_generators {
                assert!(in_kernel_mod(&c.difference, &g.exponents, &g.order));
                // exact order: gcd of order and exponents is one
                let g_all = g.exponents.iter().fold(g.order.clone(), |acc, x| acc.gcd(x));
                assert!(g_all.is_one());
            }
            for a in &q.cocharacter_basis {
                assert!(c.difference.mul_vec(a).iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn base_choice_does_not_matter() {
        let c = cd("a^2*b^4 + c^6*d^3 + e^4 + f^4 + g^2");
        let q0 = quasitorus_structure(&c);
        for base in 1..c.characters.len() {
            let q = quasitorus_structure(&c.rebased(base));
            assert_eq!((q.torus_rank, &q.torsion), (q0.torus_rank, &q0.torsion));
        }
    }

    #[test]
    fn torsion_counts() {
        let c = cd("y1^3+y2^3+y3^3");
        assert_eq!(count_torsion_points_mod(&c, 1), Ok(1));
        assert_eq!(count_torsion_points_mod(&c, 3), Ok(27));
        assert_eq!(naive_count(&c, 3), 27);
        let p = cd(WORKED);
        assert_eq!(count_torsion_points_mod(&p, 10), Ok(10_000));
        assert_eq!(quasitorus_structure(&p).torsion_point_count(10), BigInt::from(10_000));
        assert_eq!(count_torsion_points_mod(&p, 0), Err(QuasitorusError::InvalidModulus));
        assert_eq!(
            count_torsion_points_mod(&p, 40),
            Err(QuasitorusError::EnumerationTooLarge { modulus: 40, vars: 5 })
        );
    }

    #[test]
    fn odometer_agrees_with_naive_enumeration() {
        for s in ["a^2*b^4 + c^6", "x^2+y^3+z^4", "u*v^2 + w^3*t^3 + y^2"] {
            let c = cd(s);
            let q = quasitorus_structure(&c);
            for modulus in 1..=7 {
                let fast = count_torsion_points_mod(&c, modulus).unwrap();
                assert_eq!(fast, naive_count(&c, modulus), "{s} mod {modulus}");
                assert_eq!(BigInt::from(fast), q.torsion_point_count(modulus));
            }
        }
    }

    #[test]
    fn fermat_family() {
        for n in 2..=6 {
            for alpha in 2..=7u64 {
                let c = character_matrix(&CanonicalForm::fermat(n, alpha)).unwrap();
                let q = quasitorus_structure(&c);
                assert_eq!(q.torus_rank, 1);
                assert_eq!(q.torsion, vec![BigInt::from(alpha); n - 1]);
            }
        }
    }
}
