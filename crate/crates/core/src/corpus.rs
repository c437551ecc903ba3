//! Seeded random characters for corpus-wide checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::artin_schreier::{classify, ASCharacter, Classification};
use crate::base_change::ExtensionDesc;
use crate::field::{FieldDesc, FieldElem};
use crate::finite_field::FqElem;

/// One corpus instance: an extension, a character over the smaller field
/// and one over the larger field.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub ext: ExtensionDesc,
    pub base: ASCharacter,
    pub top: ASCharacter,
    /// Frobenius depth used for the invariance check.
    pub frob_n: u32,
}

fn random_unit(rng: &mut ChaCha8Rng, field: &FieldDesc) -> FqElem {
    let q = field.fq().order();
    field.fq().element(rng.gen_range(1..q)).expect("index below q")
}

fn random_alpha(rng: &mut ChaCha8Rng) -> i64 {
    if rng.gen_bool(0.1) {
        rng.gen_range(-2..=-1)
    } else {
        rng.gen_range(0..=6)
    }
}

/// A reduced ramified monomial or binomial character with pole at most
/// `max_pole`.
pub fn random_character(rng: &mut ChaCha8Rng, field: &FieldDesc, max_pole: i64) -> ASCharacter {
    loop {
        let mut f: FieldElem = field.monomial(random_unit(rng, field), random_alpha(rng), -rng.gen_range(1..=max_pole));
        if rng.gen_bool(0.5) {
            let extra = field.monomial(random_unit(rng, field), random_alpha(rng), -rng.gen_range(0..=max_pole));
            f = f.add(&extra).expect("same field");
        }
        let c = ASCharacter::reduced(f);
        if classify(&c) == Classification::Ramified {
            return c;
        }
    }
}

/// `count` entries over `p in {3, 5}`, `a, b <= 1`, `da, db <= 2`.
pub fn theorem_corpus(count: usize, seed: u64) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields: Vec<FieldDesc> = [(3, 1), (3, 2), (5, 1)]
        .iter()
        .map(|&(p, m)| FieldDesc::with_prime(p, m, 0, 0).expect("small field"))
        .collect();
    (0..count)
        .map(|_| {
            let k0 = &fields[rng.gen_range(0..fields.len())];
            let base_field = k0.extend(rng.gen_range(0..=1), rng.gen_range(0..=1));
            let ext = ExtensionDesc::over(&base_field, rng.gen_range(0..=2), rng.gen_range(0..=2));
            let base = random_character(&mut rng, ext.from(), 30);
            let top = random_character(&mut rng, ext.to(), 30);
            CorpusEntry { ext, base, top, frob_n: rng.gen_range(0..=2) }
        })
        .collect()
}

/// `count` reduced ramified characters over `K_{0,0}`, `p = 3`, pole at most
/// 30.
pub fn oracle_corpus(count: usize, seed: u64) -> Vec<ASCharacter> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = FieldDesc::with_prime(3, 1, 0, 0).expect("F_3");
    (0..count).map(|_| random_character(&mut rng, &field, 30)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_ramified() {
        let a = theorem_corpus(20, 5);
        let b = theorem_corpus(20, 5);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.base, y.base);
            assert_eq!(x.top.f(), y.top.f());
            assert_eq!(classify(&x.base), Classification::Ramified);
            assert!(x.base.f().pole_order() <= 30);
        }
        assert_eq!(oracle_corpus(5, 1), oracle_corpus(5, 1));
    }
}
