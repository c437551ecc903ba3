//! The fields `K_{a,b} = F_q(x^(1/p^a))((y^(1/p^b)))`, restricted to finite
//! sums of Laurent monomials in `u = x^(1/p^a)` and `w = y^(1/p^b)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::finite_field::{Fq, FqElem};

/// `K_{a,b}` together with its coefficient field. The valuation is
/// normalized by `v(w) = 1`, so `v(y) = p^b`.
#[derive(Clone, Debug)]
pub struct FieldDesc {
    fq: Arc<Fq>,
    a: u32,
    b: u32,
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a
            && self.b == other.b
            && (Arc::ptr_eq(&self.fq, &other.fq) || *self.fq == *other.fq)
    }
}

impl Eq for FieldDesc {}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{{{},{}}} over F_{}", self.a, self.b, self.fq.order())
    }
}

pub(crate) fn ipow(p: u64, e: u32) -> i64 {
    (p as i64).pow(e)
}

/// Largest supported `p^a` and `p^b`.
pub const MAX_ROOT_INDEX: i64 = 1 << 31;

/// Largest supported absolute value of an internal exponent.
pub const MAX_EXPONENT: i64 = 1 << 40;

fn check_depth(p: u64, depth: u32) -> Result<()> {
    match (p as i64).checked_pow(depth) {
        Some(v) if v <= MAX_ROOT_INDEX => Ok(()),
        _ => Err(Error::Invalid(format!("root depth {depth} is too large for p = {p}"))),
    }
}

pub(crate) fn scaled_exponent(e: i64, k: i64) -> Result<i64> {
    e.checked_mul(k)
        .filter(|v| v.abs() <= MAX_EXPONENT)
        .ok_or_else(|| Error::Invalid(format!("exponent {e}*{k} is out of range")))
}

impl FieldDesc {
    pub fn new(fq: Arc<Fq>, a: u32, b: u32) -> FieldDesc {
        FieldDesc { fq, a, b }
    }

    /// Like [`FieldDesc::new`], rejecting root depths with `p^a` or `p^b`
    /// above [`MAX_ROOT_INDEX`].
    pub fn checked(fq: Arc<Fq>, a: u32, b: u32) -> Result<FieldDesc> {
        check_depth(fq.p(), a)?;
        check_depth(fq.p(), b)?;
        Ok(FieldDesc::new(fq, a, b))
    }

    /// Convenience constructor building the coefficient field too.
    pub fn with_prime(p: u64, qdeg: u32, a: u32, b: u32) -> Result<FieldDesc> {
        FieldDesc::checked(Arc::new(Fq::new(p, qdeg)?), a, b)
    }

    pub fn fq(&self) -> &Fq {
        &self.fq
    }

    pub fn fq_arc(&self) -> &Arc<Fq> {
        &self.fq
    }

    pub fn p(&self) -> u64 {
        self.fq.p()
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// The field `K_{a+da, b+db}` over the same coefficients.
    pub fn extend(&self, da: u32, db: u32) -> FieldDesc {
        FieldDesc { fq: self.fq.clone(), a: self.a + da, b: self.b + db }
    }

    /// [`FieldDesc::extend`] with the depth limits of [`FieldDesc::checked`].
    pub fn try_extend(&self, da: u32, db: u32) -> Result<FieldDesc> {
        let (a, b) = (self.a.checked_add(da), self.b.checked_add(db));
        match (a, b) {
            (Some(a), Some(b)) => FieldDesc::checked(self.fq.clone(), a, b),
            _ => Err(Error::Invalid("root depth overflow".into())),
        }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { field: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> FieldElem {
        self.monomial(FqElem::ONE, 0, 0)
    }

    pub fn monomial(&self, coeff: FqElem, alpha: i64, beta: i64) -> FieldElem {
        let mut e = self.zero();
        e.add_term(coeff, alpha, beta);
        e
    }

    pub fn parse(&self, text: &str) -> Result<FieldElem> {
        crate::parse::parse_elem(text, self)
    }

    pub fn to_json(&self) -> FieldJson {
        FieldJson { p: self.p(), m: self.fq.degree(), a: self.a, b: self.b }
    }

    pub(crate) fn check_same(&self, other: &FieldDesc) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.to_string(), other.to_string()))
        }
    }
}

/// Serialized field descriptor `{p, m, a, b}`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FieldJson {
    pub p: u64,
    pub m: u32,
    pub a: u32,
    pub b: u32,
}

/// One term `coeff * u^alpha * w^beta`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: FqElem,
    pub alpha: i64,
    pub beta: i64,
}

/// A finite `F_q`-linear combination of monomials `u^alpha w^beta`, kept in
/// canonical order by `(beta, alpha)` with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElem {
    field: FieldDesc,
    terms: BTreeMap<(i64, i64), FqElem>,
}

impl FieldElem {
    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical `(beta, alpha)` order, deepest pole first.
    pub fn terms(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms
            .iter()
            .map(|(&(beta, alpha), &coeff)| Monomial { coeff, alpha, beta })
    }

    pub fn coeff(&self, alpha: i64, beta: i64) -> FqElem {
        self.terms.get(&(beta, alpha)).copied().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, coeff: FqElem, alpha: i64, beta: i64) {
        if coeff.is_zero() {
            return;
        }
        let fq = self.field.fq.clone();
        match self.terms.entry((beta, alpha)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = fq.add(*o.get(), coeff);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub(crate) fn remove_term(&mut self, alpha: i64, beta: i64) -> Option<FqElem> {
        self.terms.remove(&(beta, alpha))
    }

    pub(crate) fn from_terms(field: &FieldDesc, terms: impl IntoIterator<Item = Monomial>) -> Self {
        let mut e = field.zero();
        for t in terms {
            e.add_term(t.coeff, t.alpha, t.beta);
        }
        e
    }

    /// `v(f)` in the field's own normalization `v(w) = 1`; `None` is `+inf`.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().map(|&(beta, _)| beta)
    }

    /// `v(f)` normalized by `v(y) = 1`, i.e. in `K_{0,0}` units.
    pub fn valuation_in_base(&self) -> Option<Ratio<i64>> {
        self.valuation()
            .map(|v| Ratio::new(v, ipow(self.field.p(), self.field.b)))
    }

    /// Pole order `max(0, -v(f))`.
    pub fn pole_order(&self) -> u64 {
        match self.valuation() {
            Some(v) if v < 0 => v.unsigned_abs(),
            _ => 0,
        }
    }

    pub fn add(&self, rhs: &FieldElem) -> Result<FieldElem> {
        self.field.check_same(&rhs.field)?;
        let mut out = self.clone();
        for t in rhs.terms() {
            out.add_term(t.coeff, t.alpha, t.beta);
        }
        Ok(out)
    }

    pub fn neg(&self) -> FieldElem {
        let fq = self.field.fq();
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = fq.neg(*c);
        }
        out
    }

    pub fn sub(&self, rhs: &FieldElem) -> Result<FieldElem> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &FieldElem) -> Result<FieldElem> {
        self.field.check_same(&rhs.field)?;
        let fq = self.field.fq();
        let mut out = self.field.zero();
        for s in self.terms() {
            for t in rhs.terms() {
                out.add_term(fq.mul(s.coeff, t.coeff), s.alpha + t.alpha, s.beta + t.beta);
            }
        }
        Ok(out)
    }

    /// Multiplies by the scalar `c` and the monomial `u^da w^db`.
    pub fn scale(&self, c: FqElem, da: i64, db: i64) -> FieldElem {
        let fq = self.field.fq();
        FieldElem::from_terms(
            &self.field,
            self.terms().map(|t| Monomial {
                coeff: fq.mul(t.coeff, c),
                alpha: t.alpha + da,
                beta: t.beta + db,
            }),
        )
    }

    /// `f^(p^n)`: coefficients raised to `p^n`, exponents multiplied by `p^n`.
    pub fn frobenius_power(&self, n: u32) -> FieldElem {
        let fq = self.field.fq();
        let k = ipow(fq.p(), n);
        FieldElem::from_terms(
            &self.field,
            self.terms().map(|t| Monomial {
                coeff: fq.frobenius(t.coeff, n),
                alpha: t.alpha * k,
                beta: t.beta * k,
            }),
        )
    }

    /// The `p`-th root inside the same field, if every exponent is divisible
    /// by `p` (coefficients always have roots since `F_q` is perfect).
    pub fn pth_root(&self) -> Option<FieldElem> {
        let fq = self.field.fq();
        let p = fq.p() as i64;
        if self.terms().any(|t| t.alpha % p != 0 || t.beta % p != 0) {
            return None;
        }
        Some(FieldElem::from_terms(
            &self.field,
            self.terms().map(|t| Monomial {
                coeff: fq.pth_root(t.coeff),
                alpha: t.alpha / p,
                beta: t.beta / p,
            }),
        ))
    }

    /// Transport along `K_{a,b} ⊆ K_{a',b'}`: `u = u'^(p^(a'-a))`,
    /// `w = w'^(p^(b'-b))`.
    pub fn embed(&self, to: &FieldDesc) -> Result<FieldElem> {
        let from = &self.field;
        if *from.fq != *to.fq || to.a < from.a || to.b < from.b {
            return Err(Error::NotAnExtension { from: from.to_string(), to: to.to_string() });
        }
        let p = from.p();
        let (ka, kb) = (ipow(p, to.a - from.a), ipow(p, to.b - from.b));
        let mut out = to.zero();
        for t in self.terms() {
            out.add_term(t.coeff, scaled_exponent(t.alpha, ka)?, scaled_exponent(t.beta, kb)?);
        }
        Ok(out)
    }

    /// Terms with `beta = -level`.
    pub fn leading_part(&self, level: i64) -> FieldElem {
        FieldElem::from_terms(&self.field, self.terms().filter(|t| t.beta == -level))
    }

    /// Terms with `beta < 0`.
    pub fn polar_part(&self) -> FieldElem {
        FieldElem::from_terms(&self.field, self.terms().filter(|t| t.beta < 0))
    }

    /// Terms with `beta = 0`: an element of the residue ring `F_q[u, 1/u]`.
    pub fn residue_part(&self) -> FieldElem {
        self.leading_part(0)
    }

    /// Surface syntax in `x`, `y` with fractional exponents; parseable by
    /// [`FieldDesc::parse`].
    pub fn to_surface_string(&self) -> String {
        crate::parse::print_surface(self)
    }
}

/// Internal-coordinate form, e.g. `2*u^3*w^-9 + w^-2`.
impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let fq = self.field.fq();
        let parts: Vec<String> = self
            .terms()
            .map(|t| {
                let mut factors = Vec::new();
                if t.coeff != FqElem::ONE || (t.alpha == 0 && t.beta == 0) {
                    factors.push(crate::parse::coeff_literal(fq, t.coeff));
                }
                for (name, e) in [("u", t.alpha), ("w", t.beta)] {
                    match e {
                        0 => {}
                        1 => factors.push(name.to_string()),
                        _ => factors.push(format!("{name}^{e}")),
                    }
                }
                factors.join("*")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
