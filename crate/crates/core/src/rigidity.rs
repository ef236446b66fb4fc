//! Sufficient rigidity criterion: `Σ_v 1/e_v ≤ 1/(M − 2)`, summed over every
//! variable `v` with exponent `e_v`, where `M` is the number of monomials.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::polyio::CanonicalForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RigidityVerdict {
    CertifiedRigid,
    Inconclusive,
    /// Fewer than three monomials: the threshold is undefined.
    Inapplicable,
}

impl RigidityVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            RigidityVerdict::CertifiedRigid => "certified_rigid",
            RigidityVerdict::Inconclusive => "inconclusive",
            RigidityVerdict::Inapplicable => "inapplicable",
        }
    }
}

impl fmt::Display for RigidityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The other way to read the criterion's counts: one reciprocal per mixed
/// exponent and per distinct pure exponent, denominator `m + s − 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternativeReading {
    pub reciprocal_sum: BigRational,
    pub denominator: i64,
    pub threshold: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityCertificate {
    pub reciprocal_sum: BigRational,
    /// `1/(M − 2)`, absent when `M ≤ 2`.
    pub threshold: Option<BigRational>,
    pub verdict: RigidityVerdict,
    /// The sum sits exactly on the threshold (certified on the non-strict bound).
    pub on_boundary: bool,
    pub alternative: AlternativeReading,
}

pub const READING_NOTE: &str = "sum runs over every variable and the threshold is 1/(M-2) with M the total \
number of monomials; the alternative reading (one term per distinct pure exponent, denominator m+s-2) is \
reported for comparison";

fn reciprocal(e: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(e))
}

pub fn rigidity_certificate(cf: &CanonicalForm) -> RigidityCertificate {
    let reciprocal_sum: BigRational = cf.variable_exponents().into_iter().map(reciprocal).sum();
    let monomials = cf.monomial_count() as i64;
    let threshold = (monomials > 2).then(|| reciprocal((monomials - 2) as u64));
    let (verdict, on_boundary) = match &threshold {
        None => (RigidityVerdict::Inapplicable, false),
        Some(t) if &reciprocal_sum <= t => (RigidityVerdict::CertifiedRigid, &reciprocal_sum == t),
        Some(_) => (RigidityVerdict::Inconclusive, false),
    };

    let alt_sum = cf
        .mixed_blocks()
        .iter()
        .flat_map(|b| b.exponents.iter().copied())
        .chain(cf.pure_blocks().iter().map(|b| b.exponent))
        .map(reciprocal)
        .fold(BigRational::zero(), |a, b| a + b);
    let denominator = (cf.mixed_count() + cf.pure_block_count()) as i64 - 2;
    let alternative = AlternativeReading {
        reciprocal_sum: alt_sum,
        denominator,
        threshold: (denominator > 0).then(|| reciprocal(denominator as u64)),
    };

    RigidityCertificate { reciprocal_sum, threshold, verdict, on_boundary, alternative }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyio::{parse_polynomial, recognize_separated};

    fn cert(s: &str) -> RigidityCertificate {
        rigidity_certificate(&recognize_separated(&parse_polynomial(s).unwrap()).unwrap())
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn worked_example_is_certified() {
        let c = cert("X1^10*X2^11 + Y1^10 + Y2^10 + Y3^10");
        // 1/10 + 1/11 + 3/10 = 27/55 < 1/2
        assert_eq!(c.reciprocal_sum, q(27, 55));
        assert_eq!(c.threshold, Some(q(1, 2)));
        assert_eq!(c.verdict, RigidityVerdict::CertifiedRigid);
        assert!(!c.on_boundary);
        assert_eq!(c.alternative.reciprocal_sum, q(16, 55));
        assert_eq!(c.alternative.denominator, 0);
        assert_eq!(c.alternative.threshold, None);
    }

    #[test]
    fn fermat_cubic_sits_on_boundary() {
        let c = cert("y1^3 + y2^3 + y3^3");
        assert_eq!(c.reciprocal_sum, q(1, 1));
        assert_eq!(c.threshold, Some(q(1, 1)));
        assert_eq!(c.verdict, RigidityVerdict::CertifiedRigid);
        assert!(c.on_boundary);
    }

    #[test]
    fn inconclusive_and_inapplicable() {
        let c = cert("x1^2*x2^2 + y1^2 + y2^2");
        assert_eq!((c.reciprocal_sum.clone(), c.verdict), (q(2, 1), RigidityVerdict::Inconclusive));
        let c = cert("x^2 + y^3");
        assert_eq!(c.verdict, RigidityVerdict::Inapplicable);
        assert_eq!(c.threshold, None);
        assert_eq!(cert("x^2*y^3").verdict, RigidityVerdict::Inapplicable);
    }

    #[test]
    fn exponent_one_is_never_certified() {
        for s in ["x + y^100 + z^100", "a*b^50 + y^100 + z^100 + w^100", "x + y^2 + z^3 + w^4"] {
            assert_ne!(cert(s).verdict, RigidityVerdict::CertifiedRigid, "{s}");
        }
    }

    #[test]
    fn invariant_under_renaming_and_reordering() {
        let a = cert("p^5*q^7 + r^9 + s^9 + t^4");
        let b = cert("t^4 + S^9 + R^9 + q^7*p^5");
        assert_eq!(a, b);
    }
}
