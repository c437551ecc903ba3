//! Swan conductor, total dimension, characteristic form and refined Swan
//! form of an Artin-Schreier character.
//!
//! For the reduced representative `f`: `sw = -v(f)` and `dt = -v(df)` with
//! `df` in the ordinary basis; `char = [-df]` at level `dt` and
//! `rsw = [dlog f]` at level `sw`. Non-ramified characters have
//! `sw = dt = 0` and no forms.

use serde::Serialize;
use serde_json::{json, Value};

use crate::artin_schreier::{classify, require_ramified, ASCharacter, Classification};
use crate::differentials::{d, omega_leading, omega_valuation, Basis, GradedForm};
use crate::error::{Error, Result};

pub fn swan(c: &ASCharacter) -> u64 {
    c.to_reduced().f().pole_order()
}

pub fn total_dim(c: &ASCharacter) -> Result<u64> {
    let c = c.to_reduced();
    if classify(&c) != Classification::Ramified {
        return Ok(0);
    }
    let sw = swan(&c);
    let dt = match omega_valuation(&d(c.f(), Basis::Ordinary)) {
        Some(v) if v < 0 => v.unsigned_abs(),
        _ => 0,
    };
    if dt < sw || dt > sw + 1 {
        return Err(Error::GuardViolation { sw, dt });
    }
    Ok(dt)
}

pub fn char_form(c: &ASCharacter) -> Result<GradedForm> {
    require_ramified(c)?;
    let c = c.to_reduced();
    let dt = total_dim(&c)?;
    Ok(omega_leading(&d(c.f(), Basis::Ordinary).neg(), dt as i64))
}

/// Refined Swan conductor in the logarithmic basis. Exploratory: no
/// functoriality is claimed for it.
pub fn refined_swan(c: &ASCharacter) -> Result<GradedForm> {
    require_ramified(c)?;
    let c = c.to_reduced();
    Ok(omega_leading(&d(c.f(), Basis::Log), swan(&c) as i64))
}

/// Characteristic-cycle coefficients `-[T*_X X] - dt [D . <char>]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CCReport {
    pub zero_section_coeff: i64,
    pub divisor_coeff: i64,
    pub form_direction: GradedForm,
}

impl CCReport {
    /// `"du"`, `"dw"`, or `"A du + B dw"` with coefficients in surface syntax.
    pub fn direction(&self) -> String {
        direction_of(&self.form_direction)
    }
}

pub(crate) fn direction_of(g: &GradedForm) -> String {
    let f = &g.form;
    match (f.du().is_zero(), f.d2().is_zero()) {
        (false, true) => "du".to_string(),
        (true, false) => "dw".to_string(),
        (true, true) => "0".to_string(),
        (false, false) => format!("({}) du + ({}) dw", f.du().to_surface_string(), f.d2().to_surface_string()),
    }
}

pub fn cc_coefficients(c: &ASCharacter) -> Result<CCReport> {
    let form = char_form(c)?;
    Ok(CCReport { zero_section_coeff: -1, divisor_coeff: -(form.level), form_direction: form })
}

/// All conductor data of one character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConductorReport {
    pub character: ASCharacter,
    pub sw: u64,
    pub dt: u64,
    pub classification: Classification,
    pub char_form: Option<GradedForm>,
    pub rsw: Option<GradedForm>,
    pub cc: Option<CCReport>,
}

impl ConductorReport {
    pub fn compute(c: &ASCharacter) -> Result<Self> {
        let c = c.to_reduced();
        let classification = classify(&c);
        let sw = swan(&c);
        let dt = total_dim(&c)?;
        let (char_form, rsw, cc) = if classification == Classification::Ramified {
            (Some(char_form(&c)?), Some(refined_swan(&c)?), Some(cc_coefficients(&c)?))
        } else {
            (None, None, None)
        };
        Ok(ConductorReport { character: c, sw, dt, classification, char_form, rsw, cc })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "reduced": self.character.f().to_surface_string(),
            "swan": self.sw,
            "dimtot": self.dt,
            "classification": self.classification,
            "char_form": self.char_form.as_ref().map(GradedForm::to_json),
            "rsw": self.rsw.as_ref().map(GradedForm::to_json),
            "cc": self.cc.as_ref().map(|cc| CCJson {
                zero_section_coeff: cc.zero_section_coeff,
                divisor_coeff: cc.divisor_coeff,
                direction: cc.direction(),
            }),
        })
    }
}

#[derive(Serialize)]
struct CCJson {
    zero_section_coeff: i64,
    divisor_coeff: i64,
    direction: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{FieldDesc, FqElem};

    fn ch(p: u64, a: u32, b: u32, s: &str) -> ASCharacter {
        ASCharacter::parse(&FieldDesc::with_prime(p, 1, a, b).unwrap(), s).unwrap()
    }

    #[test]
    fn swan_and_total_dimension() {
        let c = ch(3, 0, 0, "x/y^9");
        assert_eq!((swan(&c), total_dim(&c).unwrap()), (9, 9));
        let c = ch(3, 1, 0, "x^(1/3)/y^3");
        assert_eq!((swan(&c), total_dim(&c).unwrap()), (3, 3));
        let c = ch(3, 0, 1, "x/y^3");
        assert_eq!((swan(&c), total_dim(&c).unwrap()), (9, 9));
        let c = ch(3, 0, 0, "y^-2");
        assert_eq!((swan(&c), total_dim(&c).unwrap()), (2, 3));
        let c = ch(3, 0, 0, "0");
        assert_eq!((swan(&c), total_dim(&c).unwrap()), (0, 0));
        let c = ch(3, 0, 0, "2");
        assert_eq!((swan(&c), total_dim(&c).unwrap()), (0, 0));
    }

    #[test]
    fn characteristic_forms() {
        let k = FieldDesc::with_prime(3, 1, 0, 0).unwrap();
        let two = k.fq().from_int(2);

        let cf = char_form(&ch(3, 0, 0, "x/y^9")).unwrap();
        assert_eq!(cf.level, 9);
        assert_eq!(cf.form.du(), &k.monomial(two, 0, -9));
        assert!(cf.form.d2().is_zero());

        let cf = char_form(&ch(3, 0, 0, "x/y")).unwrap();
        assert_eq!(cf.level, 2);
        assert!(cf.form.du().is_zero());
        assert_eq!(cf.form.d2(), &k.monomial(FqElem::ONE, 1, -2));

        let cf = char_form(&ch(3, 0, 0, "y^-2")).unwrap();
        assert_eq!(cf.level, 3);
        assert_eq!(cf.form.d2(), &k.monomial(two, 0, -3));

        assert_eq!(char_form(&ch(3, 0, 0, "1")), Err(Error::NotRamified));
    }

    #[test]
    fn refined_swan_forms() {
        let k = FieldDesc::with_prime(3, 1, 0, 0).unwrap();
        let r = refined_swan(&ch(3, 0, 0, "x/y^9")).unwrap();
        assert_eq!((r.level, r.form.basis()), (9, Basis::Log));
        assert_eq!(r.form.du(), &k.monomial(FqElem::ONE, 0, -9));

        let r = refined_swan(&ch(3, 0, 0, "y^-2")).unwrap();
        assert_eq!(r.level, 2);
        assert!(r.form.du().is_zero());
        assert_eq!(r.form.d2(), &k.monomial(FqElem::ONE, 0, -2));

        let k1 = FieldDesc::with_prime(3, 1, 1, 0).unwrap();
        let r = refined_swan(&ch(3, 1, 0, "x^(1/3)/y^3")).unwrap();
        assert_eq!(r.form.du(), &k1.monomial(FqElem::ONE, 0, -3));
    }

    #[test]
    fn cc_examples() {
        let cc = cc_coefficients(&ch(3, 0, 0, "x/y^9")).unwrap();
        assert_eq!((cc.zero_section_coeff, cc.divisor_coeff, cc.direction().as_str()), (-1, -9, "du"));
        let cc = cc_coefficients(&ch(3, 1, 0, "x^(1/3)/y^3")).unwrap();
        assert_eq!((cc.divisor_coeff, cc.direction().as_str()), (-3, "du"));
        let cc = cc_coefficients(&ch(3, 0, 0, "x/y")).unwrap();
        assert_eq!((cc.divisor_coeff, cc.direction().as_str()), (-2, "dw"));
    }

    #[test]
    fn report_json_schema() {
        let r = ConductorReport::compute(&ch(3, 0, 0, "x/y^9")).unwrap();
        let v = r.to_json();
        assert_eq!(v["swan"], 9);
        assert_eq!(v["dimtot"], 9);
        assert_eq!(v["classification"], "ramified");
        assert_eq!(v["cc"]["divisor_coeff"], -9);
        assert_eq!(v["cc"]["direction"], "du");
        assert_eq!(v["char_form"]["level"], 9);
        let r = ConductorReport::compute(&ch(3, 0, 0, "1")).unwrap();
        assert!(r.to_json()["char_form"].is_null());
    }
}
