//! Symbolic results checked against independent computations: curve
//! restriction, brute-force field arithmetic and definition-level
//! recomputation of extension invariants.

use num_rational::Ratio;

use ramcalc::base_change::{transport, Conductors};
use ramcalc::conductor::{swan, total_dim};
use ramcalc::curve_oracle::{dimtot_1d, oracle_conductor, restrict_to_curve, swan_1d, CurveField, CurveSpec, OracleBounds};
use ramcalc::{ASCharacter, ExtensionDesc, FieldDesc, Fq, FqElem};

fn k(p: u64, a: u32, b: u32) -> FieldDesc {
    FieldDesc::with_prime(p, 1, a, b).unwrap()
}

/// Exhaustive small monomials `c u^alpha w^-m`: the total dimension is
/// `m + 1` when `p` does not divide `m`, and `m` when it does (and the
/// monomial is reduced). Both values are also reached by the oracle.
#[test]
fn monomial_law_against_the_oracle() {
    for p in [3u64, 5] {
        let field = k(p, 0, 0);
        for alpha in 0..=(p as i64 + 1) {
            for m in 1..=(2 * p as i64 + 1) {
                let f = field.monomial(FqElem::ONE, alpha, -m);
                let c = ASCharacter::new(f.clone());
                if !c.is_reduced() {
                    continue;
                }
                let expected = if m % p as i64 == 0 { m } else { m + 1 } as u64;
                assert_eq!(total_dim(&c).unwrap(), expected, "p={p} alpha={alpha} m={m}");
                let est = oracle_conductor(&f, &OracleBounds { mu_max: p as u32, ..Default::default() }).unwrap();
                assert_eq!(est.dt_ceiling(), expected, "oracle dt p={p} alpha={alpha} m={m}");
                assert_eq!(est.sw_ceiling(), m as u64, "oracle sw p={p} alpha={alpha} m={m}");
                assert!(est.dt_est <= Ratio::from_integer(expected as i64));
            }
        }
    }
}

/// Without `u`, the character comes from the one-dimensional field
/// `F_q((w))` and every transversal curve sees it exactly.
#[test]
fn perfect_residue_case_matches_one_dimensional_theory() {
    let field = k(3, 0, 0);
    let coeffs = CurveField::new(field.fq(), 1).unwrap();
    for text in ["y^-2", "y^-4 + 2*y^-1", "y^-5 + y^-3", "2*y^-7 + y^-9", "y^-10"] {
        let c = ASCharacter::parse(&field, text).unwrap();
        let curve = CurveSpec::new(1, vec![FqElem::ONE]);
        let r = restrict_to_curve(c.f(), &curve, &coeffs).unwrap();
        assert_eq!(swan_1d(&r), swan(&c), "{text}");
        assert_eq!(dimtot_1d(&r), total_dim(&c).unwrap(), "{text}");
        assert_eq!(total_dim(&c).unwrap(), swan(&c) + 1, "{text}");
    }
}

/// The transported characters of the worked examples, checked through
/// their own curve restrictions.
#[test]
fn transported_conductors_against_the_oracle() {
    for (p, da, db, text) in [(3, 1, 0, "x/y^9"), (3, 0, 1, "x/y^3"), (5, 0, 1, "x/y^5"), (3, 2, 0, "x/y^27"), (3, 1, 1, "x/y^2 + y^-4")] {
        let ext = ExtensionDesc::over(&k(p, 0, 0), da, db);
        let c = ASCharacter::parse(ext.from(), text).unwrap();
        let up = transport(&c, &ext).unwrap();
        let sym = Conductors::of(&up).unwrap();
        let est = oracle_conductor(up.f(), &OracleBounds { mu_max: p as u32, ..Default::default() }).unwrap();
        assert_eq!((est.sw_ceiling(), est.dt_ceiling()), (sym.sw, sym.dt), "{text} over {ext}");
    }
}

/// Ramification index and degree from their definitions: `e` is the value
/// of the old uniformizer in the new field, and the degree is the number
/// of monomials `u'^i w'^j` with `0 <= i < p^da`, `0 <= j < p^db` needed to
/// span `K'` over `K`.
#[test]
fn extension_invariants_from_definitions() {
    for p in [3u64, 5] {
        for (da, db) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 0), (0, 2), (2, 2)] {
            let ext = ExtensionDesc::over(&k(p, 0, 0), da, db);
            let inv = ext.invariants();
            let y = ext.from().parse("y").unwrap().embed(ext.to()).unwrap();
            assert_eq!(inv.e as i64, y.valuation().unwrap());
            let basis = (0..p.pow(da)).flat_map(|i| (0..p.pow(db)).map(move |j| (i, j))).count() as u64;
            assert_eq!(inv.degree, basis);
            // least n with (u')^(p^n), (w')^(p^n) both in K
            let n = (0..).find(|&n| p.pow(n) % p.pow(da) == 0 && p.pow(n) % p.pow(db) == 0).unwrap();
            assert_eq!(inv.n, n);
            assert_eq!(inv.e * inv.f_dual, p.pow(n));
            // K^(p^-t) ⊆ K' for the largest t; s = e(K'/K^(p^-t))
            let t = (0..=n).filter(|&t| t <= da && t <= db).max().unwrap();
            assert_eq!(inv.t, t);
            assert_eq!(inv.s, p.pow(db - t));
            assert_eq!(inv.untwisted, t == 0);
        }
    }
}

/// Artin-Schreier solvability in `F_q` by exhaustive search, against the
/// trace criterion used for unramified classes.
#[test]
fn unramified_classes_against_exhaustive_solutions() {
    for (p, m) in [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)] {
        let field = FieldDesc::with_prime(p, m, 0, 0).unwrap();
        let fq: &Fq = field.fq();
        for c in fq.elements() {
            let solvable = fq.elements().any(|z| fq.sub(fq.pow(z, p), z) == c);
            let cls = ramcalc::classify(&ASCharacter::new(field.monomial(c, 0, 0)));
            assert_eq!(solvable, cls == ramcalc::Classification::Trivial, "p={p} m={m} c={c:?}");
        }
    }
}
