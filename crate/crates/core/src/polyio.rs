//! Polynomial parsing and the canonical separated form.
//!
//! Input grammar (ASCII, whitespace insignificant):
//!
//! ```text
//! poly   := ['-'] term (('+'|'-') term)*
//! term   := [coef '*'] factor ('*' factor)*  |  coef
//! factor := var ['^' nat]
//! coef   := nat ['/' nat]
//! var    := letter (letter|digit|'_')*
//! ```

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Exponent = u64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coefficient: BigRational,
    /// Variable name to exponent (always >= 1). Empty for a constant term.
    pub monomial: BTreeMap<String, Exponent>,
}

/// A nonzero polynomial with like terms combined, terms in order of first
/// appearance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn degree(term: &Term) -> Exponent {
        term.monomial.values().sum()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {position}: expected {expected}")]
    Syntax { position: usize, expected: &'static str },
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("non-integer exponent at position {position}")]
    NonIntegerExponent { position: usize },
    #[error("exponent must be positive at position {position}")]
    NonPositiveExponent { position: usize },
    #[error("zero denominator at position {position}")]
    ZeroDenominator { position: usize },
    #[error("exponent too large at position {position}")]
    ExponentOverflow { position: usize },
}

impl ParseError {
    pub fn position(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { position, .. }
            | ParseError::NonIntegerExponent { position }
            | ParseError::NonPositiveExponent { position }
            | ParseError::ZeroDenominator { position }
            | ParseError::ExponentOverflow { position } => Some(*position),
            ParseError::ZeroPolynomial => None,
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Option<(usize, &'a str)> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        // digits are ASCII, so the slice is valid UTF-8
        (self.pos > start)
            .then(|| (start, std::str::from_utf8(&self.src[start..self.pos]).unwrap()))
    }

    fn coef(&mut self) -> Result<BigRational, ParseError> {
        self.skip_ws();
        let (_, num) = self.nat().ok_or(ParseError::Syntax { position: self.pos, expected: "number" })?;
        let num: BigInt = num.parse().unwrap();
        if !self.eat(b'/') {
            return Ok(BigRational::from_integer(num));
        }
        self.skip_ws();
        let (at, den) = self
            .nat()
            .ok_or(ParseError::Syntax { position: self.pos, expected: "denominator" })?;
        let den: BigInt = den.parse().unwrap();
        if den.is_zero() {
            return Err(ParseError::ZeroDenominator { position: at });
        }
        Ok(BigRational::new(num, den))
    }

    fn var(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if !self.src.get(start).is_some_and(u8::is_ascii_alphabetic) {
            return Err(ParseError::Syntax { position: start, expected: "variable" });
        }
        self.pos += 1;
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string())
    }

    fn exponent(&mut self) -> Result<Exponent, ParseError> {
        self.skip_ws();
        let at = self.pos;
        if self.src.get(at) == Some(&b'-') {
            return Err(ParseError::NonPositiveExponent { position: at });
        }
        let (_, digits) = self
            .nat()
            .ok_or(ParseError::Syntax { position: at, expected: "exponent" })?;
        if matches!(self.src.get(self.pos), Some(b'.') | Some(b'/')) {
            return Err(ParseError::NonIntegerExponent { position: at });
        }
        let e: Exponent = digits
            .parse()
            .map_err(|_| ParseError::ExponentOverflow { position: at })?;
        if e == 0 {
            return Err(ParseError::NonPositiveExponent { position: at });
        }
        Ok(e)
    }

    fn factor(&mut self, monomial: &mut BTreeMap<String, Exponent>) -> Result<(), ParseError> {
        let name = self.var()?;
        let e = if self.eat(b'^') { self.exponent()? } else { 1 };
        let at = self.pos;
        let slot = monomial.entry(name).or_insert(0);
        *slot = slot
            .checked_add(e)
            .ok_or(ParseError::ExponentOverflow { position: at })?;
        Ok(())
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut monomial = BTreeMap::new();
        let coefficient = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let c = self.coef()?;
            if !self.eat(b'*') {
                return Ok(Term { coefficient: c, monomial });
            }
            c
        } else {
            BigRational::one()
        };
        self.factor(&mut monomial)?;
        while self.eat(b'*') {
            self.factor(&mut monomial)?;
        }
        Ok(Term { coefficient, monomial })
    }
}

/// Parses an expression and combines like terms.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let mut raw = Vec::new();
    let mut negate = p.eat(b'-');
    loop {
        let mut t = p.term()?;
        if negate {
            t.coefficient = -t.coefficient;
        }
        raw.push(t);
        if p.eat(b'+') {
            negate = false;
        } else if p.eat(b'-') {
            negate = true;
        } else {
            break;
        }
    }
    if p.peek().is_some() {
        return Err(ParseError::Syntax { position: p.pos, expected: "'+', '-', '*' or end of input" });
    }

    let mut terms: Vec<Term> = Vec::new();
    for t in raw {
        match terms.iter_mut().find(|u| u.monomial == t.monomial) {
            Some(u) => u.coefficient += t.coefficient,
            None => terms.push(t),
        }
    }
    terms.retain(|t| !t.coefficient.is_zero());
    if terms.is_empty() {
        return Err(ParseError::ZeroPolynomial);
    }
    Ok(Polynomial { terms })
}

/// Orders names so that embedded digit runs compare numerically
/// (`y2 < y10`), falling back to byte order.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        s.as_bytes()
            .chunk_by(|x, y| x.is_ascii_digit() == y.is_ascii_digit())
            .map(|c| (c[0].is_ascii_digit(), std::str::from_utf8(c).unwrap()))
            .collect()
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for (x, y) in ca.iter().zip(&cb) {
        let ord = match (x, y) {
            ((true, dx), (true, dy)) => {
                let tx = dx.trim_start_matches('0');
                let ty = dy.trim_start_matches('0');
                tx.len().cmp(&ty.len()).then_with(|| tx.cmp(ty))
            }
            ((_, sx), (_, sy)) => sx.cmp(sy),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

/// One mixed monomial `X_i1^{l_i1} ... X_in^{l_in}` with `n > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedBlock {
    pub vars: Vec<String>,
    /// Sorted descending, aligned with `vars`.
    pub exponents: Vec<Exponent>,
}

impl MixedBlock {
    /// `L_i`, the total degree of the monomial.
    pub fn degree(&self) -> Exponent {
        self.exponents.iter().sum()
    }
}

/// The pure powers `Y_1^q + ... + Y_k^q` sharing one exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PureBlock {
    pub exponent: Exponent,
    pub vars: Vec<String>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeparationError {
    #[error("variable {0:?} occurs in more than one monomial")]
    NotSeparated(String),
    #[error("constant term is not allowed")]
    ConstantTerm,
    #[error("invalid block structure: {0}")]
    InvalidBlocks(String),
}

/// A polynomial with separated variables in normal form: unit
/// coefficients, mixed monomials first, then pure powers by strictly
/// decreasing exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    mixed: Vec<MixedBlock>,
    pure: Vec<PureBlock>,
    var_order: Vec<String>,
    rescaled: bool,
}

impl CanonicalForm {
    /// Builds a canonical form from blocks, sorting them into normal order.
    ///
    /// Fails if a variable repeats, a mixed block has fewer than two
    /// variables, a pure block is empty, or an exponent is zero.
    pub fn from_blocks(
        mixed: Vec<MixedBlock>,
        pure: Vec<PureBlock>,
    ) -> Result<Self, SeparationError> {
        let invalid = |msg: String| Err(SeparationError::InvalidBlocks(msg));
        let mut seen = HashSet::new();
        for b in &mixed {
            if b.vars.len() < 2 || b.vars.len() != b.exponents.len() {
                return invalid(format!("mixed block {:?} needs at least two variables", b.vars));
            }
        }
        for b in &pure {
            if b.vars.is_empty() {
                return invalid(format!("pure block with exponent {} has no variables", b.exponent));
            }
        }
        let all_exps = mixed.iter().flat_map(|b| b.exponents.iter()).chain(pure.iter().map(|b| &b.exponent));
        if all_exps.clone().any(|&e| e == 0) {
            return invalid("exponent 0".into());
        }
        for v in mixed.iter().flat_map(|b| &b.vars).chain(pure.iter().flat_map(|b| &b.vars)) {
            if !seen.insert(v.clone()) {
                return Err(SeparationError::NotSeparated(v.clone()));
            }
        }

        let mut mixed: Vec<MixedBlock> = mixed
            .into_iter()
            .map(|b| {
                let (vars, exponents) = b
                    .vars
                    .into_iter()
                    .zip(b.exponents)
                    .sorted_by(|(va, ea), (vb, eb)| eb.cmp(ea).then_with(|| natural_cmp(va, vb)))
                    .unzip();
                MixedBlock { vars, exponents }
            })
            .collect();
        mixed.sort_by(|a, b| {
            (b.vars.len(), &b.exponents)
                .cmp(&(a.vars.len(), &a.exponents))
                .then_with(|| natural_cmp(&a.vars[0], &b.vars[0]))
        });

        let mut merged: BTreeMap<std::cmp::Reverse<Exponent>, Vec<String>> = BTreeMap::new();
        for b in pure {
            merged.entry(std::cmp::Reverse(b.exponent)).or_default().extend(b.vars);
        }
        let pure: Vec<PureBlock> = merged
            .into_iter()
            .map(|(q, mut vars)| {
                vars.sort_by(|a, b| natural_cmp(a, b));
                PureBlock { exponent: q.0, vars }
            })
            .collect();

        let var_order = mixed
            .iter()
            .flat_map(|b| b.vars.iter())
            .chain(pure.iter().flat_map(|b| b.vars.iter()))
            .cloned()
            .collect();
        Ok(CanonicalForm { mixed, pure, var_order, rescaled: false })
    }

    /// `y1^alpha + ... + yn^alpha`.
    pub fn fermat(n: usize, alpha: Exponent) -> Self {
        let vars = (1..=n).map(|i| format!("y{i}")).collect();
        CanonicalForm::from_blocks(vec![], vec![PureBlock { exponent: alpha, vars }])
            .expect("fermat blocks are valid")
    }

    pub fn mixed_blocks(&self) -> &[MixedBlock] {
        &self.mixed
    }

    pub fn pure_blocks(&self) -> &[PureBlock] {
        &self.pure
    }

    pub fn var_order(&self) -> &[String] {
        &self.var_order
    }

    /// Whether nonunit coefficients were absorbed by a diagonal rescaling.
    pub fn rescaled(&self) -> bool {
        self.rescaled
    }

    /// `m`, number of mixed monomials.
    pub fn mixed_count(&self) -> usize {
        self.mixed.len()
    }

    /// `s`, number of distinct pure exponents.
    pub fn pure_block_count(&self) -> usize {
        self.pure.len()
    }

    /// `n`, number of variables.
    pub fn num_vars(&self) -> usize {
        self.var_order.len()
    }

    /// `M = m + Σ k_i`, total number of monomials.
    pub fn monomial_count(&self) -> usize {
        self.mixed.len() + self.pure.iter().map(|b| b.vars.len()).sum::<usize>()
    }

    pub fn index_of(&self, var: &str) -> Option<usize> {
        self.var_order.iter().position(|v| v == var)
    }

    /// Exponent of each variable, in `var_order`.
    pub fn variable_exponents(&self) -> Vec<Exponent> {
        self.mixed
            .iter()
            .flat_map(|b| b.exponents.iter().copied())
            .chain(self.pure.iter().flat_map(|b| std::iter::repeat_n(b.exponent, b.vars.len())))
            .collect()
    }

    /// Monomials as sparse `(variable index, exponent)` lists, mixed blocks
    /// first, then one monomial per pure variable.
    pub fn monomials(&self) -> Vec<Vec<(usize, Exponent)>> {
        let mut out = Vec::with_capacity(self.monomial_count());
        let mut idx = 0;
        for b in &self.mixed {
            out.push(b.exponents.iter().enumerate().map(|(j, &e)| (idx + j, e)).collect());
            idx += b.exponents.len();
        }
        for b in &self.pure {
            for _ in &b.vars {
                out.push(vec![(idx, b.exponent)]);
                idx += 1;
            }
        }
        out
    }

    /// Dense exponent vectors of the monomials (the characters `χ_i`).
    pub fn exponent_vectors(&self) -> Vec<Vec<Exponent>> {
        let n = self.num_vars();
        self.monomials()
            .into_iter()
            .map(|mono| {
                let mut v = vec![0; n];
                for (i, e) in mono {
                    v[i] = e;
                }
                v
            })
            .collect()
    }

    /// Unit-coefficient expression text; parses back to the same form.
    pub fn render(&self) -> String {
        let factor = |v: &str, e: Exponent| if e == 1 { v.to_string() } else { format!("{v}^{e}") };
        self.mixed
            .iter()
            .map(|b| b.vars.iter().zip(&b.exponents).map(|(v, &e)| factor(v, e)).join("*"))
            .chain(self.pure.iter().flat_map(|b| b.vars.iter().map(|v| factor(v, b.exponent))))
            .join(" + ")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Checks that every variable occurs in exactly one term and builds the
/// canonical form. Nonunit coefficients are absorbed (flagged by
/// [`CanonicalForm::rescaled`]).
pub fn recognize_separated(p: &Polynomial) -> Result<CanonicalForm, SeparationError> {
    if p.terms.iter().any(|t| t.monomial.is_empty()) {
        return Err(SeparationError::ConstantTerm);
    }
    let mut seen = HashSet::new();
    for t in &p.terms {
        for v in t.monomial.keys() {
            if seen.contains(v) {
                return Err(SeparationError::NotSeparated(v.clone()));
            }
        }
        seen.extend(t.monomial.keys().cloned());
    }

    let mut mixed = Vec::new();
    let mut pure = Vec::new();
    for t in &p.terms {
        if t.monomial.len() == 1 {
            let (v, &e) = t.monomial.iter().next().unwrap();
            pure.push(PureBlock { exponent: e, vars: vec![v.clone()] });
        } else {
            let (vars, exponents) = t.monomial.iter().map(|(v, &e)| (v.clone(), e)).unzip();
            mixed.push(MixedBlock { vars, exponents });
        }
    }
    let mut cf = CanonicalForm::from_blocks(mixed, pure)?;
    cf.rescaled = p.terms.iter().any(|t| !t.coefficient.is_one());
    Ok(cf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canon(s: &str) -> CanonicalForm {
        recognize_separated(&parse_polynomial(s).unwrap()).unwrap()
    }

    #[test]
    fn parses_worked_example() {
        let p = parse_polynomial("X11^10*X12^11 + Y11^10 + Y12^10 + Y13^10").unwrap();
        let degrees: Vec<_> = p.terms().iter().map(Polynomial::degree).collect();
        assert_eq!(degrees, vec![21, 10, 10, 10]);
        assert!(p.terms().iter().all(|t| t.coefficient.is_one()));
    }

    #[test]
    fn parses_single_variable() {
        let p = parse_polynomial("x").unwrap();
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms()[0].monomial, BTreeMap::from([("x".to_string(), 1)]));
        assert!(p.terms()[0].coefficient.is_one());
    }

    #[test]
    fn combines_like_terms() {
        let p = parse_polynomial("2*x^2 + 3*x^2").unwrap();
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms()[0].coefficient, BigRational::from_integer(5.into()));
        let p = parse_polynomial("x*y*x").unwrap();
        assert_eq!(p.terms()[0].monomial["x"], 2);
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_polynomial("3/4*a^2*b+c^3-d").unwrap();
        let b = parse_polynomial("  3 / 4 * a ^ 2 * b  +  c^ 3 - d ").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.terms()[2].coefficient, -BigRational::one());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_polynomial("x - x"), Err(ParseError::ZeroPolynomial));
        assert_eq!(parse_polynomial("x^0"), Err(ParseError::NonPositiveExponent { position: 2 }));
        assert_eq!(parse_polynomial("x^-2"), Err(ParseError::NonPositiveExponent { position: 2 }));
        assert_eq!(parse_polynomial("x^1.5"), Err(ParseError::NonIntegerExponent { position: 2 }));
        assert_eq!(parse_polynomial("x^3/2"), Err(ParseError::NonIntegerExponent { position: 2 }));
        assert_eq!(parse_polynomial("1/0*x"), Err(ParseError::ZeroDenominator { position: 2 }));
        assert!(matches!(parse_polynomial("x + "), Err(ParseError::Syntax { position: 4, .. })));
        assert!(matches!(parse_polynomial("x (y)"), Err(ParseError::Syntax { position: 2, .. })));
        assert!(matches!(parse_polynomial("2x"), Err(ParseError::Syntax { position: 1, .. })));
        assert!(matches!(parse_polynomial(""), Err(ParseError::Syntax { position: 0, .. })));
        assert!(matches!(
            parse_polynomial("x^99999999999999999999999"),
            Err(ParseError::ExponentOverflow { .. })
        ));
    }

    #[test]
    fn canonical_form_of_worked_example() {
        let cf = canon("X11^10*X12^11 + Y11^10 + Y12^10 + Y13^10");
        assert_eq!(cf.mixed_count(), 1);
        assert_eq!(cf.pure_block_count(), 1);
        assert_eq!(cf.mixed_blocks()[0].vars, ["X12", "X11"]);
        assert_eq!(cf.mixed_blocks()[0].exponents, [11, 10]);
        assert_eq!(cf.mixed_blocks()[0].degree(), 21);
        assert_eq!(cf.pure_blocks()[0], PureBlock { exponent: 10, vars: vec!["Y11".into(), "Y12".into(), "Y13".into()] });
        assert_eq!(cf.num_vars(), 5);
        assert_eq!(cf.monomial_count(), 4);
        assert!(!cf.rescaled());
    }

    #[test]
    fn not_separated() {
        let p = parse_polynomial("x^2*y + x").unwrap();
        assert_eq!(recognize_separated(&p), Err(SeparationError::NotSeparated("x".into())));
        let p = parse_polynomial("x^2 + 1").unwrap();
        assert_eq!(recognize_separated(&p), Err(SeparationError::ConstantTerm));
    }

    #[test]
    fn fermat_form() {
        let cf = canon("y1^3 + y2^3 + y3^3");
        assert_eq!(cf.mixed_count(), 0);
        assert_eq!(cf.pure_blocks(), [PureBlock { exponent: 3, vars: vec!["y1".into(), "y2".into(), "y3".into()] }]);
        assert_eq!(cf, CanonicalForm::fermat(3, 3));
    }

    #[test]
    fn ordering_rules() {
        let cf = canon("z^2 + a*b + c^5*d^5*e + y^7 + w^2 + f^3*g");
        // blocks: longest first, then exponent lists descending
        assert_eq!(cf.mixed_blocks()[0].vars, ["c", "d", "e"]);
        assert_eq!(cf.mixed_blocks()[1].exponents, [3, 1]);
        assert_eq!(cf.mixed_blocks()[2].vars, ["a", "b"]);
        let qs: Vec<_> = cf.pure_blocks().iter().map(|b| b.exponent).collect();
        assert_eq!(qs, [7, 2]);
        assert_eq!(cf.pure_blocks()[1].vars, ["w", "z"]);
        assert_eq!(cf.var_order(), ["c", "d", "e", "f", "g", "a", "b", "y", "w", "z"]);
        assert_eq!(cf.variable_exponents(), [5, 5, 1, 3, 1, 1, 1, 7, 2, 2]);
    }

    #[test]
    fn identical_mixed_blocks_order_by_first_variable() {
        let cf = canon("u*v^2 + a*b^2 + y^3");
        assert_eq!(cf.mixed_blocks()[0].vars, ["b", "a"]);
        assert_eq!(cf.mixed_blocks()[1].vars, ["v", "u"]);
    }

    #[test]
    fn coefficients_are_absorbed() {
        let cf = canon("-2*x^2*y + 1/3*z^4");
        assert!(cf.rescaled());
        assert_eq!(cf.render(), "x^2*y + z^4");
    }

    #[test]
    fn natural_order_of_names() {
        assert_eq!(natural_cmp("y2", "y10"), Ordering::Less);
        assert_eq!(natural_cmp("y10", "y2"), Ordering::Greater);
        assert_eq!(natural_cmp("a", "b"), Ordering::Less);
        assert_eq!(natural_cmp("x01", "x1"), Ordering::Less);
        assert_eq!(natural_cmp("x", "x1"), Ordering::Less);
    }

    #[test]
    fn from_blocks_validation() {
        let bad = CanonicalForm::from_blocks(
            vec![MixedBlock { vars: vec!["x".into()], exponents: vec![2] }],
            vec![],
        );
        assert!(matches!(bad, Err(SeparationError::InvalidBlocks(_))));
        let dup = CanonicalForm::from_blocks(
            vec![],
            vec![
                PureBlock { exponent: 2, vars: vec!["x".into()] },
                PureBlock { exponent: 3, vars: vec!["x".into()] },
            ],
        );
        assert_eq!(dup, Err(SeparationError::NotSeparated("x".into())));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// (mixed exponent lists, pure exponents), one variable per entry.
        fn shape() -> impl Strategy<Value = (Vec<Vec<u64>>, Vec<u64>)> {
            (
                proptest::collection::vec(proptest::collection::vec(1u64..=6, 2..=3), 0..=2),
                proptest::collection::vec(1u64..=6, 0..=4),
            )
                .prop_filter("nonempty", |(m, p)| !m.is_empty() || !p.is_empty())
        }

        fn text(mixed: &[Vec<u64>], pure: &[u64], names: &[String], order: &[usize]) -> String {
            let mut k = 0;
            let mut terms = Vec::new();
            for b in mixed {
                terms.push(b.iter().map(|e| { k += 1; format!("{}^{e}", names[k - 1]) }).join("*"));
            }
            for e in pure {
                k += 1;
                terms.push(format!("{}^{e}", names[k - 1]));
            }
            order.iter().map(|&i| terms[i].clone()).join(" + ")
        }

        fn block_shape(cf: &CanonicalForm) -> (Vec<Vec<u64>>, Vec<(u64, usize)>) {
            (
                cf.mixed_blocks().iter().map(|b| b.exponents.clone()).collect(),
                cf.pure_blocks().iter().map(|b| (b.exponent, b.vars.len())).collect(),
            )
        }

        proptest! {
            #[test]
            fn render_round_trips((mixed, pure) in shape()) {
                let n: usize = mixed.iter().map(Vec::len).sum::<usize>() + pure.len();
                let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
                let order: Vec<usize> = (0..mixed.len() + pure.len()).collect();
                let cf = canon(&text(&mixed, &pure, &names, &order));
                prop_assert_eq!(cf.num_vars(), n);
                let again = canon(&cf.render());
                prop_assert_eq!(&again, &cf);
                prop_assert_eq!(canon(&again.render()), again);
            }

            #[test]
            fn shape_ignores_term_order_and_names(
                (mixed, pure) in shape(),
                seed in any::<u64>(),
            ) {
                use rand::{seq::SliceRandom, SeedableRng};
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let n: usize = mixed.iter().map(Vec::len).sum::<usize>() + pure.len();
                let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
                let mut renamed: Vec<String> = (0..n).map(|i| format!("w{}", n - i)).collect();
                renamed.shuffle(&mut rng);
                let mut order: Vec<usize> = (0..mixed.len() + pure.len()).collect();
                let a = canon(&text(&mixed, &pure, &names, &order));
                order.shuffle(&mut rng);
                let b = canon(&text(&mixed, &pure, &renamed, &order));
                prop_assert_eq!(block_shape(&a), block_shape(&b));
            }
        }
    }
}
