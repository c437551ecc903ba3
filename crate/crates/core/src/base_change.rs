//! Purely inseparable extensions `K_{a,b} ⊆ K_{a+da, b+db}`, transport and
//! descent of characters, and conductor-level checks of the base-change
//! bounds.

use serde::Serialize;
use serde_json::{json, Value};

use crate::artin_schreier::{require_ramified, ASCharacter};
use crate::conductor::{swan, total_dim};
use crate::differentials::{d, omega_leading, sigma_map, theta_map, Basis, GradedForm};
use crate::error::{Error, Result};
use crate::field::{ipow, scaled_exponent, FieldDesc, FieldElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionDesc {
    from: FieldDesc,
    to: FieldDesc,
}

/// Numerical invariants of an extension.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtInvariants {
    pub degree: u64,
    pub e: u64,
    pub n: u32,
    pub t: u32,
    pub s: u64,
    pub f_dual: u64,
    pub untwisted: bool,
}

impl ExtensionDesc {
    pub fn new(from: FieldDesc, to: FieldDesc) -> Result<Self> {
        if from.fq() != to.fq() || to.a() < from.a() || to.b() < from.b() {
            return Err(Error::NotAnExtension { from: from.to_string(), to: to.to_string() });
        }
        Ok(ExtensionDesc { from, to })
    }

    /// `K_{a,b} ⊆ K_{a+da, b+db}`, checking the depth limits.
    pub fn try_over(from: &FieldDesc, da: u32, db: u32) -> Result<Self> {
        Ok(ExtensionDesc { from: from.clone(), to: from.try_extend(da, db)? })
    }

    /// `K_{a,b} ⊆ K_{a+da, b+db}`.
    pub fn over(from: &FieldDesc, da: u32, db: u32) -> Self {
        ExtensionDesc { from: from.clone(), to: from.extend(da, db) }
    }

    pub fn from(&self) -> &FieldDesc {
        &self.from
    }

    pub fn to(&self) -> &FieldDesc {
        &self.to
    }

    pub fn da(&self) -> u32 {
        self.to.a() - self.from.a()
    }

    pub fn db(&self) -> u32 {
        self.to.b() - self.from.b()
    }

    pub fn exponent(&self) -> u32 {
        self.da().max(self.db())
    }

    fn pw(&self, e: u32) -> u64 {
        ipow(self.from.p(), e) as u64
    }

    pub fn invariants(&self) -> ExtInvariants {
        let (da, db) = (self.da(), self.db());
        let n = da.max(db);
        let t = da.min(db);
        ExtInvariants {
            degree: self.pw(da + db),
            e: self.pw(db),
            n,
            t,
            s: self.pw(db - t),
            f_dual: self.pw(n - db),
            untwisted: t == 0,
        }
    }

    /// The ring map `K' -> K, z -> z^(p^n)`.
    pub fn descend_elem(&self, f: &FieldElem) -> Result<FieldElem> {
        f.field().check_same(&self.to)?;
        let n = self.exponent();
        let fq = self.from.fq();
        let (ka, kb) = (ipow(self.from.p(), n - self.da()), ipow(self.from.p(), n - self.db()));
        let mut out = self.from.zero();
        for t in f.terms() {
            out.add_term(fq.frobenius(t.coeff, n), scaled_exponent(t.alpha, ka)?, scaled_exponent(t.beta, kb)?);
        }
        Ok(out)
    }
}

impl std::fmt::Display for ExtensionDesc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "K_{{{},{}}} ⊆ K_{{{},{}}}", self.from.a(), self.from.b(), self.to.a(), self.to.b())
    }
}

/// Pull-back of a character of `K` to `K'`: embed, then reduce.
pub fn transport(c: &ASCharacter, ext: &ExtensionDesc) -> Result<ASCharacter> {
    c.field().check_same(ext.from())?;
    Ok(ASCharacter::reduced(c.f().embed(ext.to())?))
}

/// Push-down of a character of `K'` to `K` along `z -> z^(p^n)`, reduced.
pub fn descend(c: &ASCharacter, ext: &ExtensionDesc) -> Result<ASCharacter> {
    Ok(ASCharacter::reduced(ext.descend_elem(c.f())?))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conductors {
    pub sw: u64,
    pub dt: u64,
}

impl Conductors {
    pub fn of(c: &ASCharacter) -> Result<Self> {
        Ok(Conductors { sw: swan(c), dt: total_dim(c)? })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Equality,
    Degenerate,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Equality => "equality",
            Status::Degenerate => "degenerate",
            Status::Fail => "fail",
        }
    }

    pub fn is_fail(self) -> bool {
        self == Status::Fail
    }
}

/// Conductor-level comparison `lhs <= bound = factor * rhs` (or `lhs = rhs`
/// for Frobenius invariance).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub theorem: &'static str,
    pub lhs: Conductors,
    pub rhs: Conductors,
    pub bound: Conductors,
    pub slack: Slack,
    pub factor: u64,
    pub status: Status,
    /// The character the left-hand side was computed for, in surface syntax.
    pub image: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Slack {
    pub sw: i64,
    pub dt: i64,
}

impl CheckReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}

fn bound_report(theorem: &'static str, lhs: Conductors, rhs: Conductors, factor: u64, image: String) -> CheckReport {
    let bound = Conductors { sw: factor * rhs.sw, dt: factor * rhs.dt };
    let slack = Slack { sw: bound.sw as i64 - lhs.sw as i64, dt: bound.dt as i64 - lhs.dt as i64 };
    let status = if slack.sw < 0 || slack.dt < 0 {
        Status::Fail
    } else if lhs.sw == 0 && lhs.dt == 0 && bound.sw == 0 && bound.dt == 0 {
        Status::Degenerate
    } else if (slack.sw == 0 && bound.sw > 0) || (slack.dt == 0 && bound.dt > 0) {
        Status::Equality
    } else {
        Status::Pass
    };
    CheckReport { theorem, lhs, rhs, bound, slack, factor, status, image }
}

/// `sw(c|K') <= s sw(c)` and `dt(c|K') <= s dt(c)` for `c` over `K`.
pub fn check_thm_right(c: &ASCharacter, ext: &ExtensionDesc) -> Result<CheckReport> {
    let image = transport(c, ext)?;
    Ok(bound_report(
        "right",
        Conductors::of(&image)?,
        Conductors::of(c)?,
        ext.invariants().s,
        image.f().to_surface_string(),
    ))
}

/// `sw(descend c) <= f_dual sw(c)` and likewise for `dt`, for `c` over `K'`.
pub fn check_thm_left(c: &ASCharacter, ext: &ExtensionDesc) -> Result<CheckReport> {
    let image = descend(c, ext)?;
    Ok(bound_report(
        "left",
        Conductors::of(&image)?,
        Conductors::of(c)?,
        ext.invariants().f_dual,
        image.f().to_surface_string(),
    ))
}

/// Conductors are unchanged by transport to `K^(p^-n) = K_{a+n, b+n}`, each
/// computed in its own field's normalization.
pub fn check_frobenius_invariance(c: &ASCharacter, n: u32) -> Result<CheckReport> {
    let ext = ExtensionDesc::try_over(c.field(), n, n)?;
    let image = transport(c, &ext)?;
    let lhs = Conductors::of(&image)?;
    let rhs = Conductors::of(c)?;
    let slack = Slack { sw: rhs.sw as i64 - lhs.sw as i64, dt: rhs.dt as i64 - lhs.dt as i64 };
    let status = if lhs != rhs {
        Status::Fail
    } else if lhs.sw == 0 && lhs.dt == 0 {
        Status::Degenerate
    } else {
        Status::Pass
    };
    Ok(CheckReport {
        theorem: "frobenius",
        lhs,
        rhs,
        bound: rhs,
        slack,
        factor: 1,
        status,
        image: image.f().to_surface_string(),
    })
}

/// Outcome of comparing the two paths around a functoriality square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramReport {
    pub theorem: &'static str,
    /// Level `r` of the characteristic form being mapped.
    pub source_level: i64,
    /// Level at which both sides are compared.
    pub level: i64,
    pub lhs: GradedForm,
    pub rhs: GradedForm,
    pub status: Status,
    pub untwisted: bool,
    /// Basis vectors sent to zero by the vertical map.
    pub killed: Vec<&'static str>,
}

impl DiagramReport {
    fn new(
        theorem: &'static str,
        source_level: i64,
        lhs: GradedForm,
        rhs: GradedForm,
        untwisted: bool,
        killed: Vec<&'static str>,
    ) -> Self {
        let status = if lhs != rhs {
            Status::Fail
        } else if lhs.is_zero() {
            Status::Degenerate
        } else {
            Status::Pass
        };
        DiagramReport { theorem, source_level, level: lhs.level, lhs, rhs, status, untwisted, killed }
    }

    pub fn outcome(&self) -> &'static str {
        match self.status {
            Status::Fail => "discrepancy",
            Status::Degenerate => "commutes-degenerately",
            _ => "commutes-nonzero",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theorem": self.theorem,
            "source_level": self.source_level,
            "level": self.level,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "status": self.status,
            "outcome": self.outcome(),
            "untwisted": self.untwisted,
            "killed": self.killed,
        })
    }
}

/// First square: `char(c|K')` against `theta(char(c))` at level `e r`.
pub fn check_functoriality_theta(c: &ASCharacter, ext: &ExtensionDesc) -> Result<DiagramReport> {
    require_ramified(c)?;
    let c = c.to_reduced();
    let inv = ext.invariants();
    let r = total_dim(&c)? as i64;
    let level = inv.e as i64 * r;
    let image = transport(&c, ext)?;
    let lhs = omega_leading(&d(image.f(), Basis::Ordinary).neg(), level);
    let cf = crate::conductor::char_form(&c)?;
    let rhs = omega_leading(&theta_map(&cf.form, ext)?, level);
    let mut killed = Vec::new();
    if ext.da() > 0 {
        killed.push("du");
    }
    if ext.db() > 0 {
        killed.push("dw");
    }
    Ok(DiagramReport::new("theta", r, lhs, rhs, inv.untwisted, killed))
}

/// Second square: `char(descend c)` against `sigma(char(c))` at level
/// `f_dual r`, for `c` over `K'`.
pub fn check_functoriality_sigma(c: &ASCharacter, ext: &ExtensionDesc) -> Result<DiagramReport> {
    require_ramified(c)?;
    let c = c.to_reduced();
    let inv = ext.invariants();
    let r = total_dim(&c)? as i64;
    let level = inv.f_dual as i64 * r;
    let image = descend(&c, ext)?;
    let lhs = omega_leading(&d(image.f(), Basis::Ordinary).neg(), level);
    let cf = crate::conductor::char_form(&c)?;
    let sigma = sigma_map(&cf.form, ext)?;
    let rhs = omega_leading(&sigma.form, level);
    let mut killed = Vec::new();
    if sigma.du_killed {
        killed.push("du");
    }
    if sigma.dw_killed {
        killed.push("dw");
    }
    Ok(DiagramReport::new("sigma", r, lhs, rhs, inv.untwisted, killed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FqElem;

    fn k(a: u32, b: u32) -> FieldDesc {
        FieldDesc::with_prime(3, 1, a, b).unwrap()
    }

    #[test]
    fn invariants_examples() {
        let i = ExtensionDesc::new(k(0, 0), k(1, 0)).unwrap().invariants();
        assert_eq!(i, ExtInvariants { degree: 3, e: 1, n: 1, t: 0, s: 1, f_dual: 3, untwisted: true });
        let i = ExtensionDesc::new(k(0, 0), k(0, 1)).unwrap().invariants();
        assert_eq!(i, ExtInvariants { degree: 3, e: 3, n: 1, t: 0, s: 3, f_dual: 1, untwisted: true });
        let i = ExtensionDesc::new(k(0, 0), k(1, 1)).unwrap().invariants();
        assert_eq!(i, ExtInvariants { degree: 9, e: 3, n: 1, t: 1, s: 1, f_dual: 1, untwisted: false });
        assert!(ExtensionDesc::new(k(1, 0), k(0, 1)).is_err());
    }

    #[test]
    fn transport_examples() {
        let ext = ExtensionDesc::over(&k(0, 0), 1, 0);
        let c = ASCharacter::parse(&k(0, 0), "x/y^9").unwrap();
        assert_eq!(transport(&c, &ext).unwrap().f(), &k(1, 0).monomial(FqElem::ONE, 1, -3));

        let ext = ExtensionDesc::over(&k(0, 0), 0, 1);
        let c = ASCharacter::parse(&k(0, 0), "x/y^3").unwrap();
        assert_eq!(transport(&c, &ext).unwrap().f(), &k(0, 1).monomial(FqElem::ONE, 1, -9));

        let c = ASCharacter::parse(&k(0, 0), "0").unwrap();
        assert!(transport(&c, &ext).unwrap().f().is_zero());
    }

    #[test]
    fn descend_examples() {
        let ext = ExtensionDesc::over(&k(0, 0), 1, 0);
        let c = ASCharacter::new(k(1, 0).monomial(FqElem::ONE, 1, -1));
        let down = descend(&c, &ext).unwrap();
        assert_eq!(down.f(), &k(0, 0).parse("x/y^3").unwrap());
        assert_eq!(Conductors::of(&down).unwrap(), Conductors { sw: 3, dt: 3 });

        let c = ASCharacter::parse(&k(0, 0), "x/y^9").unwrap();
        let back = descend(&transport(&c, &ext).unwrap(), &ext).unwrap();
        assert_eq!(back.f(), c.f());
    }

    #[test]
    fn right_theorem_examples() {
        let c = ASCharacter::parse(&k(0, 0), "x/y^9").unwrap();
        let r = check_thm_right(&c, &ExtensionDesc::over(&k(0, 0), 1, 0)).unwrap();
        assert_eq!((r.lhs, r.bound.sw, r.status), (Conductors { sw: 3, dt: 3 }, 9, Status::Pass));

        let c = ASCharacter::parse(&k(0, 0), "x/y^3").unwrap();
        let r = check_thm_right(&c, &ExtensionDesc::over(&k(0, 0), 0, 1)).unwrap();
        assert_eq!((r.lhs, r.bound, r.status), (Conductors { sw: 9, dt: 9 }, Conductors { sw: 9, dt: 9 }, Status::Equality));

        let c = ASCharacter::parse(&k(0, 0), "0").unwrap();
        assert_eq!(check_thm_right(&c, &ExtensionDesc::over(&k(0, 0), 0, 1)).unwrap().status, Status::Degenerate);
    }

    #[test]
    fn left_theorem_examples() {
        let ext = ExtensionDesc::over(&k(0, 0), 1, 0);
        let c = ASCharacter::parse(&k(1, 0), "x^(1/3)/y^3").unwrap();
        let r = check_thm_left(&c, &ext).unwrap();
        assert_eq!((r.lhs.sw, r.bound.sw, r.status), (9, 9, Status::Equality));

        let c = ASCharacter::parse(&k(1, 0), "x^(1/3)/y").unwrap();
        let r = check_thm_left(&c, &ext).unwrap();
        assert_eq!((r.lhs, r.bound), (Conductors { sw: 3, dt: 3 }, Conductors { sw: 3, dt: 6 }));
        assert_eq!(r.status, Status::Equality);
    }

    #[test]
    fn frobenius_examples() {
        let c = ASCharacter::parse(&k(0, 0), "x/y^9").unwrap();
        let r = check_frobenius_invariance(&c, 1).unwrap();
        assert_eq!(r.image, "x^(1/3)/y^3");
        assert_eq!((r.lhs, r.status), (Conductors { sw: 9, dt: 9 }, Status::Pass));
        assert_eq!(check_frobenius_invariance(&c, 0).unwrap().status, Status::Pass);
        let z = ASCharacter::parse(&k(0, 0), "0").unwrap();
        assert_eq!(check_frobenius_invariance(&z, 2).unwrap().status, Status::Degenerate);
    }

    #[test]
    fn theta_square_examples() {
        let c = ASCharacter::parse(&k(0, 0), "x/y").unwrap();
        let r = check_functoriality_theta(&c, &ExtensionDesc::over(&k(0, 0), 1, 0)).unwrap();
        assert_eq!((r.level, r.status), (2, Status::Pass));
        assert_eq!(r.lhs.form.d2(), &k(1, 0).monomial(FqElem::ONE, 3, -2));

        let c = ASCharacter::parse(&k(0, 0), "x/y^9").unwrap();
        let r = check_functoriality_theta(&c, &ExtensionDesc::over(&k(0, 0), 1, 0)).unwrap();
        assert_eq!(r.status, Status::Degenerate);

        let c = ASCharacter::parse(&k(0, 0), "x/y^2").unwrap();
        let r = check_functoriality_theta(&c, &ExtensionDesc::over(&k(0, 0), 0, 1)).unwrap();
        assert_eq!((r.level, r.status), (9, Status::Degenerate));

        let c = ASCharacter::parse(&k(0, 0), "1").unwrap();
        assert_eq!(check_functoriality_theta(&c, &ExtensionDesc::over(&k(0, 0), 0, 1)), Err(Error::NotRamified));
    }

    #[test]
    fn sigma_square_examples() {
        let ext = ExtensionDesc::over(&k(0, 0), 1, 0);
        let c = ASCharacter::parse(&k(1, 0), "x^(1/3)/y").unwrap();
        let r = check_functoriality_sigma(&c, &ext).unwrap();
        assert_eq!((r.level, r.status), (6, Status::Degenerate));

        let c = ASCharacter::parse(&k(1, 0), "x^(1/3)/y^3").unwrap();
        let r = check_functoriality_sigma(&c, &ext).unwrap();
        assert_eq!((r.level, r.status), (9, Status::Pass));
        assert_eq!(r.lhs.form.du(), &k(0, 0).monomial(k(0, 0).fq().from_int(-1), 0, -9));
        assert_eq!(r.killed, vec!["dw"]);

        let same = ExtensionDesc::over(&k(0, 0), 0, 0);
        let c = ASCharacter::parse(&k(0, 0), "x/y^2 + y^-4").unwrap();
        assert_eq!(check_functoriality_sigma(&c, &same).unwrap().status, Status::Pass);
    }
}
