//! Artin-Schreier characters `t^p - t = f` and reduction of `f` modulo
//! `{g^p - g}`.
//!
//! Reduction strips polar terms one at a time: a term `c u^alpha w^beta` with
//! `beta < 0` and `p` dividing both exponents equals `r^p` for the monomial
//! `r = c^(1/p) u^(alpha/p) w^(beta/p)`, so it may be replaced by `r`. Terms
//! are processed from the deepest pole upwards. The result has no polar term
//! that is a `p`-th power, which makes it the unique such representative of
//! its class (modulo the maximal ideal and the residue ring).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldDesc, FieldElem, FieldJson, Monomial};

/// Output of [`as_reduce`]: `f_in = reduced + witness^p - witness`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub reduced: FieldElem,
    pub witness: FieldElem,
}

fn strippable(t: &Monomial, p: i64) -> bool {
    t.beta < 0 && t.alpha % p == 0 && t.beta % p == 0
}

pub fn as_reduce(f: &FieldElem) -> Reduction {
    let field = f.field();
    let fq = field.fq();
    let p = field.p() as i64;
    let mut cur = f.clone();
    let mut g = field.zero();
    loop {
        let Some(t) = cur.terms().find(|t| strippable(t, p)) else { break };
        cur.remove_term(t.alpha, t.beta);
        let root = fq.pth_root(t.coeff);
        cur.add_term(root, t.alpha / p, t.beta / p);
        g.add_term(root, t.alpha / p, t.beta / p);
    }
    Reduction { reduced: cur, witness: g }
}

pub fn is_reduced(f: &FieldElem) -> bool {
    let p = f.field().p() as i64;
    !f.terms().any(|t| strippable(&t, p))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Trivial,
    UnramifiedNontrivial,
    Ramified,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Trivial => "trivial",
            Classification::UnramifiedNontrivial => "unramified_nontrivial",
            Classification::Ramified => "ramified",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The character `psi_f`. `f` is the reduced representative when `reduced`
/// is set; `witness` then satisfies `original = f + witness^p - witness`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ASCharacter {
    f: FieldElem,
    reduced: bool,
    witness: Option<FieldElem>,
}

impl ASCharacter {
    /// Wraps `f` without reducing it.
    pub fn new(f: FieldElem) -> Self {
        let reduced = is_reduced(&f);
        let witness = reduced.then(|| f.field().zero());
        ASCharacter { f, reduced, witness }
    }

    /// Wraps `f` and replaces it by its reduced representative.
    pub fn reduced(f: FieldElem) -> Self {
        let Reduction { reduced, witness } = as_reduce(&f);
        ASCharacter { f: reduced, reduced: true, witness: Some(witness) }
    }

    pub fn parse(field: &FieldDesc, text: &str) -> Result<Self> {
        Ok(ASCharacter::reduced(field.parse(text)?))
    }

    pub fn field(&self) -> &FieldDesc {
        self.f.field()
    }

    pub fn f(&self) -> &FieldElem {
        &self.f
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn witness(&self) -> Option<&FieldElem> {
        self.witness.as_ref()
    }

    /// The reduced form of this character (a clone when already reduced).
    pub fn to_reduced(&self) -> ASCharacter {
        if self.reduced {
            return self.clone();
        }
        let Reduction { reduced, witness } = as_reduce(&self.f);
        let witness = match &self.witness {
            Some(w) => w.add(&witness).expect("same field"),
            None => witness,
        };
        ASCharacter { f: reduced, reduced: true, witness: Some(witness) }
    }

    /// The element this character was built from, `f + g^p - g`.
    pub fn original(&self) -> FieldElem {
        match &self.witness {
            Some(g) => artin_schreier_image(g).add(&self.f).expect("same field"),
            None => self.f.clone(),
        }
    }

    pub fn to_json(&self) -> CharacterJson {
        CharacterJson {
            field: self.field().to_json(),
            f: self.f.to_surface_string(),
            reduced: self.reduced,
            witness: self.witness.as_ref().map(|g| g.to_surface_string()),
        }
    }
}

impl std::fmt::Display for ASCharacter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]", self.f.to_surface_string())
    }
}

/// `{"field": {p, m, a, b}, "f", "reduced", "witness"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterJson {
    pub field: FieldJson,
    pub f: String,
    pub reduced: bool,
    pub witness: Option<String>,
}

/// `g^p - g`.
pub fn artin_schreier_image(g: &FieldElem) -> FieldElem {
    g.frobenius_power(1).sub(g).expect("same field")
}

/// Group law: the class of `f1 + f2`, reduced.
pub fn char_add(c1: &ASCharacter, c2: &ASCharacter) -> Result<ASCharacter> {
    c1.field().check_same(c2.field())?;
    let sum = c1.f.add(&c2.f)?;
    let Reduction { reduced, witness } = as_reduce(&sum);
    let zero = c1.field().zero();
    let w = witness
        .add(c1.witness.as_ref().unwrap_or(&zero))?
        .add(c2.witness.as_ref().unwrap_or(&zero))?;
    let witness = if c1.witness.is_some() && c2.witness.is_some() { Some(w) } else { None };
    Ok(ASCharacter { f: reduced, reduced: true, witness })
}

/// Scalar multiple `k * c` for `k` in `Z`.
pub fn char_scale(c: &ASCharacter, k: i64) -> ASCharacter {
    let fq = c.field().fq();
    ASCharacter::reduced(c.f.scale(fq.from_int(k), 0, 0))
}

/// Reduces a residue-ring element `r in F_q[u, 1/u]` termwise: `c u^(p j)`
/// becomes `c^(1/p) u^j` until no non-constant exponent is divisible by `p`.
fn reduce_residue(r: &FieldElem) -> FieldElem {
    let field = r.field();
    let fq = field.fq();
    let p = field.p() as i64;
    let mut out = field.zero();
    for t in r.terms() {
        let (mut c, mut a) = (t.coeff, t.alpha);
        while a != 0 && a % p == 0 {
            c = fq.pth_root(c);
            a /= p;
        }
        out.add_term(c, a, 0);
    }
    out
}

pub fn classify(c: &ASCharacter) -> Classification {
    let c = c.to_reduced();
    if c.f.pole_order() > 0 {
        return Classification::Ramified;
    }
    let r = reduce_residue(&c.f.residue_part());
    let fq = c.field().fq();
    let trivial = r.is_zero()
        || (r.len() == 1 && r.coeff(0, 0) != Default::default() && fq.absolute_trace(r.coeff(0, 0)) == 0);
    if trivial {
        Classification::Trivial
    } else {
        Classification::UnramifiedNontrivial
    }
}

/// Whether `f1` and `f2` define the same character.
pub fn same_class(f1: &FieldElem, f2: &FieldElem) -> Result<bool> {
    let diff = f1.sub(f2)?;
    Ok(classify(&ASCharacter::new(diff)) == Classification::Trivial)
}

/// Errors with [`Error::NotRamified`] unless `c` is ramified.
pub(crate) fn require_ramified(c: &ASCharacter) -> Result<()> {
    if classify(c) == Classification::Ramified {
        Ok(())
    } else {
        Err(Error::NotRamified)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FqElem;

    fn k(a: u32, b: u32) -> FieldDesc {
        FieldDesc::with_prime(3, 1, a, b).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let k1 = k(1, 0);
        let r = as_reduce(&k1.monomial(FqElem::ONE, 3, -9));
        assert_eq!(r.reduced, k1.monomial(FqElem::ONE, 1, -3));
        assert_eq!(r.witness, k1.monomial(FqElem::ONE, 1, -3));

        let f = k(0, 0).parse("x/y^9").unwrap();
        let r = as_reduce(&f);
        assert_eq!(r.reduced, f);
        assert!(r.witness.is_zero());

        let f = k(0, 0).parse("y^-3 - y^-1").unwrap();
        let r = as_reduce(&f);
        assert!(r.reduced.is_zero());
        assert_eq!(r.witness, k(0, 0).parse("y^-1").unwrap());
    }

    #[test]
    fn reduction_is_class_invariant_on_a_mixed_level() {
        // u w^-3 + (w^-1)^3 - w^-1: the level-3 part is not a cube as a whole
        let kk = k(0, 0);
        let f = kk.parse("x/y^3").unwrap();
        let g = kk.parse("1/y").unwrap();
        let h = f.add(&artin_schreier_image(&g)).unwrap();
        assert_eq!(as_reduce(&h).reduced.polar_part(), as_reduce(&f).reduced.polar_part());
    }

    #[test]
    fn is_reduced_examples() {
        assert!(is_reduced(&k(0, 0).parse("x/y^9").unwrap()));
        assert!(!is_reduced(&k(1, 0).monomial(FqElem::ONE, 3, -9)));
        assert!(is_reduced(&k(0, 0).zero()));
    }

    #[test]
    fn group_law_examples() {
        let kk = k(0, 0);
        let c = ASCharacter::parse(&kk, "x/y^3").unwrap();
        let s = char_add(&char_add(&c, &c).unwrap(), &c).unwrap();
        assert_eq!(classify(&s), Classification::Trivial);

        let c1 = ASCharacter::parse(&kk, "x/y^9").unwrap();
        let c2 = ASCharacter::parse(&kk, "-x/y^9 + y^-2").unwrap();
        assert_eq!(char_add(&c1, &c2).unwrap().f(), &kk.parse("y^-2").unwrap());

        let c3 = ASCharacter::parse(&kk, "y^-5").unwrap();
        let s = char_add(&c, &c3).unwrap();
        assert_eq!(s.f(), &kk.parse("x/y^3 + y^-5").unwrap());
        assert_eq!(s.f().pole_order(), 5);

        let other = ASCharacter::parse(&k(1, 0), "x").unwrap();
        assert!(matches!(char_add(&c, &other), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn classification_examples() {
        let kk = k(0, 0);
        assert_eq!(classify(&ASCharacter::parse(&kk, "x/y^9").unwrap()), Classification::Ramified);
        assert_eq!(classify(&ASCharacter::new(kk.zero())), Classification::Trivial);
        assert_eq!(classify(&ASCharacter::new(kk.one())), Classification::UnramifiedNontrivial);
        // x^3 - x is a trivial residue class, x is not
        assert_eq!(classify(&ASCharacter::parse(&kk, "x^3 - x").unwrap()), Classification::Trivial);
        assert_eq!(classify(&ASCharacter::parse(&kk, "x").unwrap()), Classification::UnramifiedNontrivial);
        // terms in the maximal ideal are trivial
        assert_eq!(classify(&ASCharacter::parse(&kk, "x*y^2").unwrap()), Classification::Trivial);
    }

    #[test]
    fn original_is_reconstructed() {
        let kk = k(1, 1);
        let f = kk.parse("x/y^3 + 2*y^-3 + x^2").unwrap();
        let c = ASCharacter::reduced(f.clone());
        assert_eq!(c.original(), f);
        assert!(same_class(c.f(), &f).unwrap());
        let j = c.to_json();
        assert!(j.reduced);
        assert_eq!(j.field, FieldJson { p: 3, m: 1, a: 1, b: 1 });
    }
}
