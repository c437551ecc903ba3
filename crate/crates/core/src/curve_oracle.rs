//! Brute-force lower bounds for `sw` and `dt` by restriction to curves
//! `u = c(s)`, `w = s^mu` and classical one-dimensional Artin-Schreier
//! theory.
//!
//! For each curve the restricted character `f(c(s), s^mu)` is a Laurent
//! polynomial in `s` whose reduced pole order is `sw_1d`, and
//! `dimtot_1d = sw_1d + 1` when `sw_1d >= 1`. The ratios `sw_1d / mu` and
//! `dimtot_1d / mu` never exceed the two-dimensional invariants; the oracle
//! reports their maxima over a finite search.
//!
//! Curve coefficients live in a constant extension `F_{q^k}`: over a small
//! `F_q` every rational point may be a zero of the leading coefficient.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::finite_field::{Fq, FqElem};

/// Largest constant extension the oracle will build.
const MAX_CURVE_FIELD: u64 = 1 << 16;

/// `F_{q^k}` with a fixed embedding of `F_q`.
#[derive(Clone, Debug)]
pub struct CurveField {
    big: Arc<Fq>,
    k: u32,
    /// Image of each element of `F_q`, indexed by [`FqElem::index`].
    images: Vec<FqElem>,
}

impl CurveField {
    pub fn new(base: &Fq, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidDegree);
        }
        let m = base.degree() * k;
        let order = (base.p() as u128).checked_pow(m).unwrap_or(u128::MAX);
        if order > MAX_CURVE_FIELD as u128 {
            return Err(Error::Invalid(format!("curve coefficient field of order {order} is too large")));
        }
        let big = Arc::new(Fq::new(base.p(), m)?);
        // a root of the base modulus in the big field
        let modulus: Vec<FqElem> = base.modulus().iter().map(|&c| big.from_int(c as i64)).collect();
        let eval = |x: FqElem| modulus.iter().rev().fold(FqElem::ZERO, |acc, &c| big.add(big.mul(acc, x), c));
        let root = if base.degree() == 1 {
            FqElem::ZERO
        } else {
            big.elements().find(|&x| eval(x).is_zero()).expect("F_q embeds in F_{q^k}")
        };
        let images = base
            .elements()
            .map(|x| {
                base.coeffs(x)
                    .iter()
                    .rev()
                    .fold(FqElem::ZERO, |acc, &c| big.add(big.mul(acc, root), big.from_int(c as i64)))
            })
            .collect();
        Ok(CurveField { big, k, images })
    }

    pub fn field(&self) -> &Arc<Fq> {
        &self.big
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn embed(&self, x: FqElem) -> FqElem {
        self.images[x.index() as usize]
    }
}

/// The curve `u = c(s) = series[0] + series[1] s + ...`, `w = s^mu`.
#[derive(Clone, Debug)]
pub struct CurveSpec {
    pub mu: u32,
    pub series: Vec<FqElem>,
    pub truncation: usize,
}

impl CurveSpec {
    pub fn new(mu: u32, series: Vec<FqElem>) -> Self {
        CurveSpec { mu, series, truncation: 4096 }
    }

    /// `c(s)` written as a polynomial in `s`.
    pub fn describe(&self, fq: &Fq) -> String {
        let parts: Vec<String> = self
            .series
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, &c)| {
                let lit = crate::parse::coeff_literal(fq, c);
                match (j, c == FqElem::ONE) {
                    (0, _) => lit,
                    (1, true) => "s".to_string(),
                    (1, false) => format!("{lit}*s"),
                    (_, true) => format!("s^{j}"),
                    (_, false) => format!("{lit}*s^{j}"),
                }
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// A one-variable Artin-Schreier character: a Laurent polynomial in `s`.
/// Only exponents `<= 0` are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneDimChar {
    fq: Arc<Fq>,
    terms: BTreeMap<i64, FqElem>,
}

impl OneDimChar {
    pub fn new(fq: Arc<Fq>) -> Self {
        OneDimChar { fq, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, c: FqElem, e: i64) {
        if c.is_zero() || e > 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(FqElem::ZERO);
        *entry = self.fq.add(*entry, c);
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> FqElem {
        self.terms.get(&e).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, FqElem)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn pole_order(&self) -> u64 {
        match self.terms.keys().next() {
            Some(&e) if e < 0 => e.unsigned_abs(),
            _ => 0,
        }
    }
}

fn series_mul(a: &[FqElem], b: &[FqElem], n: usize, fq: &Fq) -> Vec<FqElem> {
    let mut out = vec![FqElem::ZERO; n];
    for (i, &x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n - i) {
            out[i + j] = fq.add(out[i + j], fq.mul(x, y));
        }
    }
    out
}

fn series_inverse(a: &[FqElem], n: usize, fq: &Fq) -> Vec<FqElem> {
    let inv0 = fq.inv(a[0]).expect("unit constant term");
    let mut out = vec![FqElem::ZERO; n];
    if n == 0 {
        return out;
    }
    out[0] = inv0;
    for k in 1..n {
        let mut acc = FqElem::ZERO;
        for j in 1..=k.min(a.len() - 1) {
            acc = fq.add(acc, fq.mul(a[j], out[k - j]));
        }
        out[k] = fq.neg(fq.mul(acc, inv0));
    }
    out
}

fn series_pow(a: &[FqElem], mut e: u64, n: usize, fq: &Fq) -> Vec<FqElem> {
    let mut result = vec![FqElem::ZERO; n];
    if n == 0 {
        return result;
    }
    result[0] = FqElem::ONE;
    let mut base: Vec<FqElem> = a.iter().copied().take(n).collect();
    while e > 0 {
        if e & 1 == 1 {
            result = series_mul(&result, &base, n, fq);
        }
        e >>= 1;
        if e > 0 {
            base = series_mul(&base, &base, n, fq);
        }
    }
    result
}

/// Substitutes `u = c(s)`, `w = s^mu` and keeps the non-positive part.
pub fn restrict_to_curve(f: &FieldElem, curve: &CurveSpec, coeffs: &CurveField) -> Result<OneDimChar> {
    let fq = coeffs.field();
    let mut out = OneDimChar::new(fq.clone());
    if curve.mu == 0 {
        return Err(Error::Invalid("curve multiplicity must be at least 1".into()));
    }
    let mu = curve.mu as i64;
    let order = curve.series.iter().position(|c| !c.is_zero());
    for t in f.terms() {
        let coeff = coeffs.embed(t.coeff);
        let Some(k) = order else {
            if t.alpha < 0 {
                return Err(Error::Invalid("u = 0 meets a pole in u".into()));
            }
            if t.alpha == 0 {
                out.add_term(coeff, mu * t.beta);
            }
            continue;
        };
        let base = mu * t.beta + k as i64 * t.alpha;
        if base > 0 {
            continue;
        }
        let needed = (1 - base) as usize;
        if needed > curve.truncation {
            return Err(Error::TruncationOverflow { needed, truncation: curve.truncation });
        }
        let unit = &curve.series[k..];
        let pw = if t.alpha >= 0 {
            series_pow(unit, t.alpha as u64, needed, fq)
        } else {
            series_pow(&series_inverse(unit, needed, fq), t.alpha.unsigned_abs(), needed, fq)
        };
        for (j, &c) in pw.iter().enumerate() {
            out.add_term(fq.mul(coeff, c), base + j as i64);
        }
    }
    Ok(out)
}

/// Pole order of the reduced one-dimensional character.
pub fn swan_1d(c: &OneDimChar) -> u64 {
    let p = c.fq.p() as i64;
    let mut cur = c.clone();
    loop {
        let Some((e, g)) = cur.terms().find(|&(e, _)| e < 0 && e % p == 0) else { break };
        cur.terms.remove(&e);
        cur.add_term(cur.fq.pth_root(g), e / p);
    }
    cur.pole_order()
}

pub fn dimtot_1d(c: &OneDimChar) -> u64 {
    match swan_1d(c) {
        0 => 0,
        s => s + 1,
    }
}

/// Search limits for [`oracle_conductor`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct OracleBounds {
    pub mu_max: u32,
    pub deg_max: u32,
    pub trials: u32,
    pub seed: u64,
    /// Degree of the constant extension for curve coefficients; chosen from
    /// `f` when absent.
    pub ext_degree: Option<u32>,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds { mu_max: 3, deg_max: 3, trials: 64, seed: 0, ext_degree: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub mu: u32,
    pub curve: String,
    pub swan_1d: u64,
    pub dimtot_1d: u64,
    pub ratio: String,
}

/// Best ratios among curves of one multiplicity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MuProfile {
    pub mu: u32,
    pub sw_ratio: String,
    pub dt_ratio: String,
    pub sw_value: f64,
    pub dt_value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleEstimate {
    pub sw_est: Ratio<i64>,
    pub dt_est: Ratio<i64>,
    pub sw_witness: Option<Witness>,
    pub dt_witness: Option<Witness>,
    pub per_mu: Vec<MuProfile>,
    pub curves_searched: usize,
    pub ext_degree: u32,
}

fn ceil(r: Ratio<i64>) -> u64 {
    r.ceil().to_integer().max(0) as u64
}

fn ratio_string(r: Ratio<i64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl OracleEstimate {
    pub fn sw_ceiling(&self) -> u64 {
        ceil(self.sw_est)
    }

    pub fn dt_ceiling(&self) -> u64 {
        ceil(self.dt_est)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "sw_est": ratio_string(self.sw_est),
            "sw_ceiling": self.sw_ceiling(),
            "dt_est": ratio_string(self.dt_est),
            "dt_ceiling": self.dt_ceiling(),
            "sw_witness": self.sw_witness,
            "dt_witness": self.dt_witness,
            "per_mu": self.per_mu,
            "curves_searched": self.curves_searched,
            "ext_degree": self.ext_degree,
        })
    }
}

/// Smallest `k` with `q^k - 1` larger than the spread of `u`-exponents in
/// the polar part, so some constant avoids all zeros of each coefficient.
fn default_ext_degree(f: &FieldElem) -> u32 {
    let polar = f.polar_part();
    let (lo, hi) = polar
        .terms()
        .fold((i64::MAX, i64::MIN), |(lo, hi), t| (lo.min(t.alpha), hi.max(t.alpha)));
    let span = if lo > hi { 0 } else { (hi - lo) as u128 };
    let q = f.field().fq().order() as u128;
    let mut k = 1;
    let mut qk = q;
    while qk - 1 <= span {
        k += 1;
        qk *= q;
    }
    k
}

struct Search<'a> {
    f: &'a FieldElem,
    coeffs: &'a CurveField,
    mu_max: u32,
    sw_best: Ratio<i64>,
    dt_best: Ratio<i64>,
    sw_witness: Option<Witness>,
    dt_witness: Option<Witness>,
    per_mu: Vec<(Ratio<i64>, Ratio<i64>)>,
    count: usize,
}

impl Search<'_> {
    fn try_curve(&mut self, curve: CurveSpec) -> Result<()> {
        let r = restrict_to_curve(self.f, &curve, self.coeffs)?;
        self.count += 1;
        let sw = swan_1d(&r);
        let dt = if sw == 0 { 0 } else { sw + 1 };
        let mu = curve.mu as i64;
        let (rs, rd) = (Ratio::new(sw as i64, mu), Ratio::new(dt as i64, mu));
        let witness = |ratio| Witness {
            mu: curve.mu,
            curve: curve.describe(self.coeffs.field()),
            swan_1d: sw,
            dimtot_1d: dt,
            ratio: ratio_string(ratio),
        };
        if rs > self.sw_best {
            self.sw_best = rs;
            self.sw_witness = Some(witness(rs));
        }
        if rd > self.dt_best {
            self.dt_best = rd;
            self.dt_witness = Some(witness(rd));
        }
        let slot = &mut self.per_mu[curve.mu as usize - 1];
        slot.0 = slot.0.max(rs);
        slot.1 = slot.1.max(rd);
        Ok(())
    }
}

/// Maximum of `sw_1d / mu` and `dimtot_1d / mu` over monomial curves
/// `gamma s^j`, binomial curves `gamma0 + gamma1 s^j` and `trials` random
/// curves of degree `<= deg_max`, for `1 <= mu <= mu_max`.
pub fn oracle_conductor(f: &FieldElem, bounds: &OracleBounds) -> Result<OracleEstimate> {
    if bounds.mu_max == 0 {
        return Err(Error::Invalid("mu_max must be at least 1".into()));
    }
    let base = f.field().fq();
    let k = bounds.ext_degree.unwrap_or_else(|| default_ext_degree(f));
    let coeffs = CurveField::new(base, k)?;
    let big = coeffs.field().clone();
    let units: Vec<FqElem> = big.elements().filter(|x| !x.is_zero()).collect();
    let base_units: Vec<FqElem> = base.elements().filter(|x| !x.is_zero()).map(|x| coeffs.embed(x)).collect();
    let through_origin_ok = f.terms().all(|t| t.alpha >= 0);
    let zero = Ratio::from_integer(0);
    let mut search = Search {
        f,
        coeffs: &coeffs,
        mu_max: bounds.mu_max,
        sw_best: zero,
        dt_best: zero,
        sw_witness: None,
        dt_witness: None,
        per_mu: vec![(zero, zero); bounds.mu_max as usize],
        count: 0,
    };
    let mono = |j: usize, g: FqElem| {
        let mut s = vec![FqElem::ZERO; j + 1];
        s[j] = g;
        s
    };
    for mu in 1..=bounds.mu_max {
        for j in 0..=bounds.deg_max as usize {
            if j >= 1 && !through_origin_ok {
                break;
            }
            for &g in &units {
                search.try_curve(CurveSpec::new(mu, mono(j, g)))?;
            }
        }
        for j in 1..=bounds.deg_max as usize {
            for &g0 in &units {
                for &g1 in &base_units {
                    let mut s = mono(j, g1);
                    s[0] = g0;
                    search.try_curve(CurveSpec::new(mu, s))?;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let q = big.order();
    for _ in 0..bounds.trials {
        let mu = rng.gen_range(1..=search.mu_max);
        let deg = rng.gen_range(0..=bounds.deg_max as usize);
        let mut s: Vec<FqElem> = (0..=deg).map(|_| big.element(rng.gen_range(0..q)).expect("in range")).collect();
        s[0] = units[rng.gen_range(0..units.len())];
        search.try_curve(CurveSpec::new(mu, s))?;
    }
    let per_mu = search
        .per_mu
        .iter()
        .enumerate()
        .map(|(i, &(s, d))| MuProfile {
            mu: i as u32 + 1,
            sw_ratio: ratio_string(s),
            dt_ratio: ratio_string(d),
            sw_value: *s.numer() as f64 / *s.denom() as f64,
            dt_value: *d.numer() as f64 / *d.denom() as f64,
        })
        .collect();
    Ok(OracleEstimate {
        sw_est: search.sw_best,
        dt_est: search.dt_best,
        sw_witness: search.sw_witness,
        dt_witness: search.dt_witness,
        per_mu,
        curves_searched: search.count,
        ext_degree: k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FieldDesc;

    fn k00() -> FieldDesc {
        FieldDesc::with_prime(3, 1, 0, 0).unwrap()
    }

    fn cf() -> CurveField {
        CurveField::new(k00().fq(), 1).unwrap()
    }

    #[test]
    fn restriction_examples() {
        let f = k00().parse("x/y^9").unwrap();
        let c = cf();
        let r = restrict_to_curve(&f, &CurveSpec::new(1, vec![FqElem::ZERO, FqElem::ONE]), &c).unwrap();
        assert_eq!(r.terms().collect::<Vec<_>>(), vec![(-8, FqElem::ONE)]);
        let r = restrict_to_curve(&f, &CurveSpec::new(3, vec![FqElem::ZERO, FqElem::ONE]), &c).unwrap();
        assert_eq!(r.terms().collect::<Vec<_>>(), vec![(-26, FqElem::ONE)]);
        let g = k00().parse("y^-2").unwrap();
        let two = k00().fq().from_int(2);
        let r = restrict_to_curve(&g, &CurveSpec::new(1, vec![two, FqElem::ONE]), &c).unwrap();
        assert_eq!(r.terms().collect::<Vec<_>>(), vec![(-2, FqElem::ONE)]);
    }

    #[test]
    fn truncation_overflow() {
        let f = k00().parse("x/y^9").unwrap();
        let mut curve = CurveSpec::new(1, vec![FqElem::ONE, FqElem::ONE]);
        curve.truncation = 4;
        assert_eq!(
            restrict_to_curve(&f, &curve, &cf()),
            Err(Error::TruncationOverflow { needed: 10, truncation: 4 })
        );
    }

    #[test]
    fn negative_powers_expand_as_series() {
        // 1/(1+s) = 1 - s + s^2 - ..., times s^-3
        let f = k00().parse("1/x/y^3").unwrap();
        let r = restrict_to_curve(&f, &CurveSpec::new(1, vec![FqElem::ONE, FqElem::ONE]), &cf()).unwrap();
        let fq = k00();
        let m1 = fq.fq().from_int(-1);
        assert_eq!(
            r.terms().collect::<Vec<_>>(),
            vec![(-3, FqElem::ONE), (-2, m1), (-1, FqElem::ONE), (0, m1)]
        );
    }

    #[test]
    fn one_dimensional_conductors() {
        let fq = Arc::new(Fq::new(3, 1).unwrap());
        let mut c = OneDimChar::new(fq.clone());
        c.add_term(FqElem::ONE, -8);
        assert_eq!((swan_1d(&c), dimtot_1d(&c)), (8, 9));
        let mut c = OneDimChar::new(fq.clone());
        c.add_term(FqElem::ONE, -9);
        assert_eq!((swan_1d(&c), dimtot_1d(&c)), (1, 2));
        let c = OneDimChar::new(fq);
        assert_eq!((swan_1d(&c), dimtot_1d(&c)), (0, 0));
    }

    #[test]
    fn oracle_examples() {
        let f = k00().parse("x/y^9").unwrap();
        let est = oracle_conductor(&f, &OracleBounds { mu_max: 3, deg_max: 2, trials: 0, ..Default::default() }).unwrap();
        assert_eq!(est.dt_est, Ratio::from_integer(9));
        let w = est.dt_witness.clone().unwrap();
        assert_eq!((w.mu, w.curve.as_str(), w.dimtot_1d), (1, "s", 9));
        assert_eq!(est.sw_est, Ratio::new(26, 3));
        assert_eq!(est.sw_ceiling(), 9);

        let g = k00().parse("y^-2").unwrap();
        let est = oracle_conductor(&g, &OracleBounds::default()).unwrap();
        assert_eq!((est.dt_est, est.sw_est), (Ratio::from_integer(3), Ratio::from_integer(2)));
    }

    #[test]
    fn constant_extension_embeds_the_base_field() {
        let base = Fq::new(3, 2).unwrap();
        let cf = CurveField::new(&base, 2).unwrap();
        let big = cf.field();
        for x in base.elements() {
            for y in base.elements() {
                assert_eq!(cf.embed(base.mul(x, y)), big.mul(cf.embed(x), cf.embed(y)));
                assert_eq!(cf.embed(base.add(x, y)), big.add(cf.embed(x), cf.embed(y)));
            }
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let f = k00().parse("x^2/y^5 + x/y^3").unwrap();
        let b = OracleBounds { trials: 40, seed: 7, ..Default::default() };
        assert_eq!(oracle_conductor(&f, &b).unwrap(), oracle_conductor(&f, &b).unwrap());
    }
}
