#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sepaut_core::polyio::{MixedBlock, PureBlock};
use sepaut_core::CanonicalForm;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random separated form with 2..=max_vars variables, exponents in
/// 1..=max_exp, and at least two monomials.
pub fn random_form(rng: &mut impl Rng, max_vars: usize, max_exp: u64) -> CanonicalForm {
    loop {
        let n = rng.gen_range(2..=max_vars);
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let mut mixed = Vec::new();
        let mut pure = Vec::new();
        let mut next = 0;
        while next < n {
            let left = n - next;
            if left >= 2 && rng.gen_bool(0.4) {
                let size = rng.gen_range(2..=left.min(3));
                mixed.push(MixedBlock {
                    vars: names[next..next + size].to_vec(),
                    exponents: (0..size).map(|_| rng.gen_range(1..=max_exp)).collect(),
                });
                next += size;
            } else {
                pure.push(PureBlock { exponent: rng.gen_range(1..=max_exp), vars: vec![names[next].clone()] });
                next += 1;
            }
        }
        let cf = CanonicalForm::from_blocks(mixed, pure).expect("generated blocks are valid");
        if cf.monomial_count() >= 2 {
            return cf;
        }
    }
}
