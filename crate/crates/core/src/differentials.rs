//! Rank-two differential modules over `K_{a,b}` in the ordinary basis
//! `(du, dw)` and the logarithmic basis `(du, dlog w)`.
//!
//! The order of a term `c u^alpha w^beta du` (or `... dw`, `... dlog w`) is
//! `-beta`: a graded form at level `r` keeps exactly the terms with
//! `beta = -r`.

use serde::Serialize;

use crate::base_change::ExtensionDesc;
use crate::error::{Error, Result};
use crate::field::{FieldDesc, FieldElem};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Ordinary,
    Log,
}

impl Basis {
    fn name(self) -> &'static str {
        match self {
            Basis::Ordinary => "ordinary",
            Basis::Log => "log",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialForm {
    basis: Basis,
    du: FieldElem,
    /// Coefficient of `dw` (ordinary) or `dlog w` (log).
    d2: FieldElem,
}

impl DifferentialForm {
    pub fn new(basis: Basis, du: FieldElem, d2: FieldElem) -> Result<Self> {
        du.field().check_same(d2.field())?;
        Ok(DifferentialForm { basis, du, d2 })
    }

    pub fn zero(field: &FieldDesc, basis: Basis) -> Self {
        DifferentialForm { basis, du: field.zero(), d2: field.zero() }
    }

    pub fn field(&self) -> &FieldDesc {
        self.du.field()
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn du(&self) -> &FieldElem {
        &self.du
    }

    pub fn d2(&self) -> &FieldElem {
        &self.d2
    }

    pub fn is_zero(&self) -> bool {
        self.du.is_zero() && self.d2.is_zero()
    }

    pub fn neg(&self) -> Self {
        DifferentialForm { basis: self.basis, du: self.du.neg(), d2: self.d2.neg() }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.basis != rhs.basis {
            return Err(Error::BasisMismatch { expected: self.basis.name() });
        }
        Ok(DifferentialForm { basis: self.basis, du: self.du.add(&rhs.du)?, d2: self.d2.add(&rhs.d2)? })
    }

    /// Multiplies both coefficients by a field element.
    pub fn mul_elem(&self, g: &FieldElem) -> Result<Self> {
        Ok(DifferentialForm { basis: self.basis, du: self.du.mul(g)?, d2: self.d2.mul(g)? })
    }

    pub fn to_log(&self) -> Self {
        match self.basis {
            Basis::Log => self.clone(),
            Basis::Ordinary => DifferentialForm {
                basis: Basis::Log,
                du: self.du.clone(),
                d2: self.d2.scale(crate::FqElem::ONE, 0, 1),
            },
        }
    }

    pub fn to_ordinary(&self) -> Self {
        match self.basis {
            Basis::Ordinary => self.clone(),
            Basis::Log => DifferentialForm {
                basis: Basis::Ordinary,
                du: self.du.clone(),
                d2: self.d2.scale(crate::FqElem::ONE, 0, -1),
            },
        }
    }

    /// Minimum `beta` over both coefficients; `None` is `+inf`.
    pub fn valuation(&self) -> Option<i64> {
        match (self.du.valuation(), self.d2.valuation()) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }

    /// Pole order `max(0, -valuation)`.
    pub fn pole_order(&self) -> u64 {
        match self.valuation() {
            Some(v) if v < 0 => v.unsigned_abs(),
            _ => 0,
        }
    }

    /// The graded piece of order exactly `level`.
    pub fn leading(&self, level: i64) -> GradedForm {
        GradedForm {
            form: DifferentialForm {
                basis: self.basis,
                du: self.du.leading_part(level),
                d2: self.d2.leading_part(level),
            },
            level,
        }
    }

    fn second_symbol(&self) -> &'static str {
        match self.basis {
            Basis::Ordinary => "dw",
            Basis::Log => "dlog w",
        }
    }

    pub fn to_json(&self, level: Option<i64>) -> FormJson {
        FormJson {
            basis: self.basis,
            du: self.du.to_surface_string(),
            d2: self.d2.to_surface_string(),
            level,
        }
    }
}

impl std::fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if !self.du.is_zero() {
            parts.push(format!("({}) du", self.du));
        }
        if !self.d2.is_zero() {
            parts.push(format!("({}) {}", self.d2, self.second_symbol()));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Serialized form `{"basis", "du", "d2", "level"}`; coefficients in surface
/// syntax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormJson {
    pub basis: Basis,
    pub du: String,
    pub d2: String,
    pub level: Option<i64>,
}

/// A differential form regarded in the graded piece of order `level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedForm {
    pub form: DifferentialForm,
    pub level: i64,
}

impl GradedForm {
    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    pub fn to_json(&self) -> FormJson {
        self.form.to_json(Some(self.level))
    }
}

impl std::fmt::Display for GradedForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}] @ level {}", self.form, self.level)
    }
}

/// Exterior derivative, termwise in the internal coordinates with exponents
/// reduced mod `p`.
pub fn d(f: &FieldElem, basis: Basis) -> DifferentialForm {
    let field = f.field();
    let fq = field.fq();
    let mut du = field.zero();
    let mut d2 = field.zero();
    for t in f.terms() {
        let ca = fq.mul(fq.from_int(t.alpha), t.coeff);
        du.add_term(ca, t.alpha - 1, t.beta);
        let cb = fq.mul(fq.from_int(t.beta), t.coeff);
        match basis {
            Basis::Ordinary => d2.add_term(cb, t.alpha, t.beta - 1),
            Basis::Log => d2.add_term(cb, t.alpha, t.beta),
        }
    }
    DifferentialForm { basis, du, d2 }
}

/// Minimum `beta` over all terms; `None` for the zero form.
pub fn omega_valuation(omega: &DifferentialForm) -> Option<i64> {
    omega.valuation()
}

pub fn omega_leading(omega: &DifferentialForm, level: i64) -> GradedForm {
    omega.leading(level)
}

/// Map of differentials induced by `O_K ⊂ O_K'`: `du ↦ d(u'^(p^da))`, which
/// vanishes when `da > 0`, and likewise for `dw`.
pub fn theta_map(omega: &DifferentialForm, ext: &ExtensionDesc) -> Result<DifferentialForm> {
    if omega.basis != Basis::Ordinary {
        return Err(Error::BasisMismatch { expected: "ordinary" });
    }
    omega.field().check_same(ext.from())?;
    let to = ext.to();
    let du = if ext.da() == 0 { omega.du.embed(to)? } else { to.zero() };
    let d2 = if ext.db() == 0 { omega.d2.embed(to)? } else { to.zero() };
    Ok(DifferentialForm { basis: Basis::Ordinary, du, d2 })
}

/// Result of [`sigma_map`] with a record of which basis vectors it kills.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaImage {
    pub form: DifferentialForm,
    pub du_killed: bool,
    pub dw_killed: bool,
}

impl SigmaImage {
    /// True when the map vanishes on the whole differential module.
    pub fn identically_zero(&self) -> bool {
        self.du_killed && self.dw_killed
    }
}

/// Map of differentials induced by `ι: K' → K, z ↦ z^(p^n)`, `n` the
/// exponent of `K'/K`. Coefficients go through the `p^n`-power map; the
/// basis goes to `d(ι(u')) = d(u^(p^(n-da)))` and `d(ι(w')) =
/// d(w^(p^(n-db)))`, computed in `Ω_K`.
pub fn sigma_map(omega: &DifferentialForm, ext: &ExtensionDesc) -> Result<SigmaImage> {
    if omega.basis != Basis::Ordinary {
        return Err(Error::BasisMismatch { expected: "ordinary" });
    }
    omega.field().check_same(ext.to())?;
    let n = ext.exponent();
    let du_killed = ext.da() < n;
    let dw_killed = ext.db() < n;
    let from = ext.from();
    let du = if du_killed { from.zero() } else { ext.descend_elem(&omega.du)? };
    let d2 = if dw_killed { from.zero() } else { ext.descend_elem(&omega.d2)? };
    Ok(SigmaImage { form: DifferentialForm { basis: Basis::Ordinary, du, d2 }, du_killed, dw_killed })
}
