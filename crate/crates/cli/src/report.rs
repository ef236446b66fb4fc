//! The analysis report: JSON schema and text rendering.
//!
//! Big integers and rationals are serialized as decimal strings so that
//! consumers never lose precision; rationals always as `"p/q"`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use sepaut_core::autassembly::{aut_group, emitted_generators, to_ascii, verify_generator, AutGroupDescription};
use sepaut_core::permgroup::{brute_force_perm_order, BRUTE_FORCE_MAX_VARS};
use sepaut_core::quasitorus::{character_matrix, count_torsion_points_mod, quasitorus_structure, ENUMERATION_LIMIT};
use sepaut_core::rigidity::{RigidityCertificate, READING_NOTE};
use sepaut_core::torusgeom::{torus_generators, weight_cone, ConeDescription, TorusGenerators};
use sepaut_core::CanonicalForm;

pub fn ratio(r: &num_rational::BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub input: String,
    pub canonical_form: CanonicalFormReport,
    pub rigidity: RigidityReport,
    pub quasitorus: QuasitorusReport,
    pub permutation_group: PermGroupReport,
    pub aut: AutReport,
    pub cone: ConeReport,
    pub irreducible: String,
    pub verification: VerificationReport,
}

#[derive(Serialize)]
pub struct MixedBlockReport {
    pub vars: Vec<String>,
    pub exponents: Vec<u64>,
}

#[derive(Serialize)]
pub struct PureBlockReport {
    pub exponent: u64,
    pub vars: Vec<String>,
}

#[derive(Serialize)]
pub struct CanonicalFormReport {
    pub expression: String,
    pub var_order: Vec<String>,
    pub mixed_blocks: Vec<MixedBlockReport>,
    pub pure_blocks: Vec<PureBlockReport>,
    pub m: usize,
    pub s: usize,
    pub n: usize,
    pub monomial_count: usize,
    pub rescaled: bool,
}

#[derive(Serialize)]
pub struct AlternativeReport {
    pub reciprocal_sum: String,
    pub denominator: i64,
    pub threshold: Option<String>,
}

#[derive(Serialize)]
pub struct RigidityReport {
    pub reciprocal_sum: String,
    pub threshold: Option<String>,
    pub verdict: String,
    pub on_boundary: bool,
    pub reading: String,
    pub alternative: AlternativeReport,
}

#[derive(Serialize)]
pub struct TorsionGeneratorReport {
    pub order: String,
    pub exponents: Vec<String>,
}

#[derive(Serialize)]
pub struct QuasitorusReport {
    pub torus_rank: usize,
    pub torsion: Vec<String>,
    pub difference_matrix: Vec<Vec<String>>,
    pub cocharacter_basis: Vec<Vec<String>>,
    pub torsion_generators: Vec<TorsionGeneratorReport>,
}

#[derive(Serialize)]
pub struct MixedClassReport {
    pub blocks: Vec<usize>,
    pub exponents: Vec<u64>,
    pub inner_runs: Vec<usize>,
}

#[derive(Serialize)]
pub struct PermGroupReport {
    pub structure: String,
    pub order: String,
    pub pure_factors: Vec<usize>,
    pub mixed_classes: Vec<MixedClassReport>,
    pub generators: Vec<String>,
}

#[derive(Serialize)]
pub struct AutReport {
    pub structure: String,
    pub conditional: bool,
    /// Images of the coordinate indices under each permutation generator.
    pub action: Vec<Vec<usize>>,
}

#[derive(Serialize)]
pub struct TorusReport {
    pub t0: Vec<String>,
    pub tij: Vec<TijReport>,
}

#[derive(Serialize)]
pub struct TijReport {
    pub block: usize,
    pub position: usize,
    pub cocharacter: Vec<String>,
}

#[derive(Serialize)]
pub struct ConeReport {
    pub torus_generators: TorusReport,
    pub basis: Vec<Vec<String>>,
    pub weights: Vec<Vec<String>>,
    pub pointed: bool,
    pub witness: Option<Vec<String>>,
}

#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "snake_case")]
pub enum OracleStatus {
    Pass,
    Fail,
    Skipped,
}

impl OracleStatus {
    pub fn label(self) -> &'static str {
        match self {
            OracleStatus::Pass => "pass",
            OracleStatus::Fail => "FAIL",
            OracleStatus::Skipped => "skipped",
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct OracleResult {
    pub name: String,
    pub status: OracleStatus,
    pub detail: String,
}

#[derive(Serialize, Default)]
pub struct VerificationReport {
    pub ran: bool,
    pub oracles: Vec<OracleResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.oracles.iter().all(|o| o.status != OracleStatus::Fail)
    }
}

fn canonical_report(cf: &CanonicalForm) -> CanonicalFormReport {
    CanonicalFormReport {
        expression: cf.render(),
        var_order: cf.var_order().to_vec(),
        mixed_blocks: cf
            .mixed_blocks()
            .iter()
            .map(|b| MixedBlockReport { vars: b.vars.clone(), exponents: b.exponents.clone() })
            .collect(),
        pure_blocks: cf
            .pure_blocks()
            .iter()
            .map(|b| PureBlockReport { exponent: b.exponent, vars: b.vars.clone() })
            .collect(),
        m: cf.mixed_count(),
        s: cf.pure_block_count(),
        n: cf.num_vars(),
        monomial_count: cf.monomial_count(),
        rescaled: cf.rescaled(),
    }
}

fn rigidity_report(r: &RigidityCertificate) -> RigidityReport {
    RigidityReport {
        reciprocal_sum: ratio(&r.reciprocal_sum),
        threshold: r.threshold.as_ref().map(ratio),
        verdict: r.verdict.to_string(),
        on_boundary: r.on_boundary,
        reading: READING_NOTE.to_string(),
        alternative: AlternativeReport {
            reciprocal_sum: ratio(&r.alternative.reciprocal_sum),
            denominator: r.alternative.denominator,
            threshold: r.alternative.threshold.as_ref().map(ratio),
        },
    }
}

fn cone_report(gens: &TorusGenerators, cone: &ConeDescription) -> ConeReport {
    ConeReport {
        torus_generators: TorusReport {
            t0: strings(&gens.t0),
            tij: gens
                .tij
                .iter()
                .map(|(i, j, v)| TijReport { block: i + 1, position: j + 1, cocharacter: strings(v) })
                .collect(),
        },
        basis: cone.basis.iter().map(|b| strings(b)).collect(),
        weights: cone.weights.iter().map(|w| strings(w)).collect(),
        pointed: cone.pointed,
        witness: cone.witness.as_deref().map(strings),
    }
}

pub fn oracle_perms(cf: &CanonicalForm, aut: &AutGroupDescription) -> Result<OracleResult, String> {
    if cf.num_vars() > BRUTE_FORCE_MAX_VARS {
        return Err(format!(
            "perms oracle needs at most {BRUTE_FORCE_MAX_VARS} variables, input has {}",
            cf.num_vars()
        ));
    }
    let brute = brute_force_perm_order(cf).map_err(|e| e.to_string())?;
    let ok = aut.perm.order == brute.into();
    Ok(OracleResult {
        name: "perms".into(),
        status: if ok { OracleStatus::Pass } else { OracleStatus::Fail },
        detail: format!("brute force {brute}, described {}", aut.perm.order),
    })
}

/// Default modulus: the largest torsion divisor, or 2 for a connected ℍ.
pub fn default_modulus(aut: &AutGroupDescription) -> u64 {
    aut.quasitorus.torsion.last().and_then(|d| u64::try_from(d).ok()).unwrap_or(2)
}

pub fn oracle_torsion(cf: &CanonicalForm, aut: &AutGroupDescription, modulus: u64) -> Result<OracleResult, String> {
    let cd = character_matrix(cf).map_err(|e| e.to_string())?;
    let counted = count_torsion_points_mod(&cd, modulus).map_err(|e| {
        format!("torsion oracle: {e} (needs N^n <= {ENUMERATION_LIMIT})")
    })?;
    let expected = aut.quasitorus.torsion_point_count(modulus);
    let ok = BigInt::from(counted) == expected;
    Ok(OracleResult {
        name: "torsion".into(),
        status: if ok { OracleStatus::Pass } else { OracleStatus::Fail },
        detail: format!("mod {modulus}: enumerated {counted}, formula {expected}"),
    })
}

pub fn oracle_generators(cf: &CanonicalForm, aut: &AutGroupDescription) -> OracleResult {
    let gens = emitted_generators(aut);
    let failures: Vec<String> = gens
        .iter()
        .filter_map(|g| verify_generator(cf, g).err().map(|e| e.to_string()))
        .collect();
    OracleResult {
        name: "generators".into(),
        status: if failures.is_empty() { OracleStatus::Pass } else { OracleStatus::Fail },
        detail: if failures.is_empty() {
            format!("{} of {} generators certified", gens.len(), gens.len())
        } else {
            failures.join("; ")
        },
    }
}

/// All three oracles; guard violations become `skipped` entries with the reason.
pub fn run_all_oracles(cf: &CanonicalForm, aut: &AutGroupDescription) -> VerificationReport {
    let skipped = |name: &str, why: String| OracleResult { name: name.into(), status: OracleStatus::Skipped, detail: why };
    let oracles = vec![
        oracle_perms(cf, aut).unwrap_or_else(|why| skipped("perms", why)),
        oracle_torsion(cf, aut, default_modulus(aut)).unwrap_or_else(|why| skipped("torsion", why)),
        oracle_generators(cf, aut),
    ];
    VerificationReport { ran: true, oracles }
}

pub fn build_report(input: &str, cf: &CanonicalForm, verify: bool) -> Result<AnalysisReport, sepaut_core::Error> {
    let aut = aut_group(cf)?;
    let cd = character_matrix(cf).map_err(sepaut_core::autassembly::AutError::from)?;
    let gens = torus_generators(cf).map_err(sepaut_core::autassembly::AutError::from)?;
    let cone = weight_cone(cf).map_err(sepaut_core::autassembly::AutError::from)?;
    debug_assert_eq!(quasitorus_structure(&cd), aut.quasitorus);
    let names = cf.var_order();
    let q = &aut.quasitorus;
    Ok(AnalysisReport {
        input: input.trim().to_string(),
        canonical_form: canonical_report(cf),
        rigidity: rigidity_report(&aut.rigidity),
        quasitorus: QuasitorusReport {
            torus_rank: q.torus_rank,
            torsion: strings(&q.torsion),
            difference_matrix: cd.difference.row_vecs().iter().map(|r| strings(r)).collect(),
            cocharacter_basis: q.cocharacter_basis.iter().map(|b| strings(b)).collect(),
            torsion_generators: q
                .torsion_generators
                .iter()
                .map(|g| TorsionGeneratorReport { order: g.order.to_string(), exponents: strings(&g.exponents) })
                .collect(),
        },
        permutation_group: PermGroupReport {
            structure: aut.perm.structure(),
            order: aut.perm.order.to_string(),
            pure_factors: aut.perm.pure_factors.clone(),
            mixed_classes: aut
                .perm
                .mixed_classes
                .iter()
                .map(|c| MixedClassReport {
                    blocks: c.blocks.clone(),
                    exponents: c.exponents.clone(),
                    inner_runs: c.inner_runs.clone(),
                })
                .collect(),
            generators: aut.perm.generators.iter().map(|t| t.to_cycle_string(names)).collect(),
        },
        aut: AutReport {
            structure: aut.structure.clone(),
            conditional: aut.conditional,
            action: aut.action.iter().map(|t| t.images().to_vec()).collect(),
        },
        cone: cone_report(&gens, &cone),
        irreducible: aut.irreducible.to_string(),
        verification: if verify { run_all_oracles(cf, &aut) } else { VerificationReport::default() },
    })
}

fn vector(names: &[String], v: &[String]) -> String {
    names.iter().zip(v).map(|(n, x)| format!("{n}:{x}")).collect::<Vec<_>>().join(" ")
}

impl AnalysisReport {
    pub fn to_text(&self, ascii: bool) -> String {
        let mut out = String::new();
        let cf = &self.canonical_form;
        let names = &cf.var_order;
        let q = &self.quasitorus;
        let r = &self.rigidity;
        let _ = writeln!(out, "input:        {}", self.input);
        let _ = writeln!(out, "canonical:    {}", cf.expression);
        if cf.rescaled {
            let _ = writeln!(out, "              (nonunit coefficients absorbed by a diagonal rescaling)");
        }
        let _ = writeln!(out, "shape:        n = {}, M = {}, m = {}, s = {}", cf.n, cf.monomial_count, cf.m, cf.s);
        let _ = writeln!(out, "Aut(X):       {}", self.aut.structure);
        if self.aut.conditional {
            let _ = writeln!(out, "              conditional on rigidity (not certified)");
        }
        let _ = writeln!(out, "P(F):         {} (order {})", self.permutation_group.structure, self.permutation_group.order);
        for g in &self.permutation_group.generators {
            let _ = writeln!(out, "  generator   {g}");
        }
        let torsion = if q.torsion.is_empty() { "none".to_string() } else { q.torsion.join(", ") };
        let _ = writeln!(out, "H:            torus rank {}, torsion [{}]", q.torus_rank, torsion);
        for g in &q.torsion_generators {
            let _ = writeln!(out, "  order {:<6}  {}", g.order, vector(names, &g.exponents));
        }
        for b in &q.cocharacter_basis {
            let _ = writeln!(out, "  cocharacter {}", vector(names, b));
        }
        let threshold = r.threshold.as_deref().unwrap_or("undefined (M <= 2)");
        let _ = writeln!(out, "rigidity:     sum 1/e_v = {} vs 1/(M-2) = {} -> {}", r.reciprocal_sum, threshold, r.verdict);
        if r.on_boundary {
            let _ = writeln!(out, "              equality case: certified on the non-strict bound");
        }
        let _ = writeln!(out, "              reading: {}", r.reading);
        let alt = &r.alternative;
        let _ = writeln!(
            out,
            "              alternative: sum {} vs 1/({}) = {}",
            alt.reciprocal_sum,
            alt.denominator,
            alt.threshold.as_deref().unwrap_or("undefined")
        );
        let t = &self.cone.torus_generators;
        let _ = writeln!(out, "T0:           {}", vector(names, &t.t0));
        for tij in &t.tij {
            let _ = writeln!(out, "T{}{}:          {}", tij.block, tij.position, vector(names, &tij.cocharacter));
        }
        let witness = self.cone.witness.as_ref().map_or("none".to_string(), |w| w.join(" "));
        let _ = writeln!(out, "weight cone:  pointed = {}, witness u = ({})", self.cone.pointed, witness);
        let _ = writeln!(out, "irreducible:  {}", self.irreducible);
        if self.verification.ran {
            for o in &self.verification.oracles {
                let _ = writeln!(out, "verify {:<11} {}: {}", o.name, o.status.label(), o.detail);
            }
        }
        if ascii {
            to_ascii(&out)
        } else {
            out
        }
    }
}
