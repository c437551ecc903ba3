//! Surface syntax for field elements.
//!
//! ```text
//! elem     = term { ("+"|"-") term } ;
//! term     = atom { ("*"|"/") atom } ;
//! atom     = coeff | ("x"|"y") [ "^" exponent ] ;
//! exponent = ["-"] integer | "(" ["-"] integer [ "/" integer ] ")" ;
//! coeff    = integer | "[" integer { "," integer } "]" ;
//! ```
//!
//! Exponents on `x` (resp. `y`) must have denominators dividing `p^a`
//! (resp. `p^b`); they are converted to integer exponents on `u`, `w`.

use crate::error::{Error, Result};
use crate::field::{ipow, scaled_exponent, FieldDesc, FieldElem};
use crate::finite_field::{Fq, FqElem};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a FieldDesc,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let v: i64 = match text.parse() {
            Ok(v) => v,
            Err(_) => return self.err("integer out of range"),
        };
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> Result<(i64, i64)> {
        if self.eat(b'(') {
            let num = self.integer()?;
            let den = if self.eat(b'/') { self.integer()? } else { 1 };
            self.expect(b')')?;
            if den <= 0 {
                return self.err("exponent denominator must be positive");
            }
            let g = gcd(num, den).max(1);
            Ok((num / g, den / g))
        } else {
            Ok((self.integer()?, 1))
        }
    }

    /// Converts `num/den` on a variable with root depth `depth` to an
    /// internal integer exponent.
    fn internal_exponent(&self, var: char, num: i64, den: i64, depth: u32) -> Result<i64> {
        let p = self.field.p() as i64;
        let mut d = den;
        let mut j = 0u32;
        while d % p == 0 {
            d /= p;
            j += 1;
        }
        if d != 1 {
            return Err(Error::BadDenominator { den, p: p as u64 });
        }
        if j > depth {
            return Err(Error::RootDepth { var, num, den, depth });
        }
        match scaled_exponent(num, ipow(p as u64, depth - j)) {
            Ok(e) => Ok(e),
            Err(_) => self.err("exponent out of range"),
        }
    }

    fn coeff(&mut self) -> Result<FqElem> {
        let fq = self.field.fq();
        if self.eat(b'[') {
            let mut cs = vec![self.integer()?];
            while self.eat(b',') {
                cs.push(self.integer()?);
            }
            self.expect(b']')?;
            if cs.len() > fq.degree() as usize {
                return self.err(format!("coefficient list longer than {}", fq.degree()));
            }
            let cs: Vec<u64> = cs.iter().map(|&c| c.rem_euclid(fq.p() as i64) as u64).collect();
            fq.from_coeffs(&cs)
        } else {
            Ok(fq.from_int(self.integer()?))
        }
    }

    /// Parses one atom, returning `(coeff, alpha, beta)`.
    fn atom(&mut self) -> Result<(FqElem, i64, i64)> {
        match self.peek() {
            Some(c @ (b'x' | b'y')) => {
                self.pos += 1;
                let (num, den) = if self.eat(b'^') { self.exponent()? } else { (1, 1) };
                if c == b'x' {
                    let e = self.internal_exponent('x', num, den, self.field.a())?;
                    Ok((FqElem::ONE, e, 0))
                } else {
                    let e = self.internal_exponent('y', num, den, self.field.b())?;
                    Ok((FqElem::ONE, 0, e))
                }
            }
            Some(b'0'..=b'9' | b'[') => Ok((self.coeff()?, 0, 0)),
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn term(&mut self) -> Result<(FqElem, i64, i64)> {
        let fq = self.field.fq();
        let (mut c, mut al, mut be) = self.atom()?;
        loop {
            let divide = match self.peek() {
                Some(b'*') => false,
                Some(b'/') => true,
                _ => break,
            };
            self.pos += 1;
            let (c2, a2, b2) = self.atom()?;
            if divide {
                c = match fq.div(c, c2) {
                    Ok(v) => v,
                    Err(_) => return self.err("division by a zero coefficient"),
                };
                al -= a2;
                be -= b2;
            } else {
                c = fq.mul(c, c2);
                al += a2;
                be += b2;
            }
        }
        Ok((c, al, be))
    }

    fn elem(&mut self) -> Result<FieldElem> {
        let fq = self.field.fq();
        let mut out = self.field.zero();
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let (c, al, be) = self.term()?;
            out.add_term(if negate { fq.neg(c) } else { c }, al, be);
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                None => break,
                Some(c) => return self.err(format!("unexpected '{}'", c as char)),
            }
            self.pos += 1;
        }
        Ok(out)
    }
}

pub(crate) fn parse_elem(text: &str, field: &FieldDesc) -> Result<FieldElem> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, field };
    p.elem()
}

/// Integer literal for prime-subfield values, coefficient list otherwise.
pub(crate) fn coeff_literal(fq: &Fq, c: FqElem) -> String {
    match fq.as_prime_subfield(c) {
        Some(v) => v.to_string(),
        None => fq.to_json_string(c),
    }
}

fn power(var: &str, num: i64, den: i64) -> String {
    match (num, den) {
        (1, 1) => var.to_string(),
        (n, 1) => format!("{var}^{n}"),
        (n, d) => format!("{var}^({n}/{d})"),
    }
}

pub(crate) fn print_surface(f: &FieldElem) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let field = f.field();
    let fq = field.fq();
    let (pa, pb) = (ipow(field.p(), field.a()), ipow(field.p(), field.b()));
    let parts: Vec<String> = f
        .terms()
        .map(|t| {
            let mut num = Vec::new();
            let mut den = Vec::new();
            for (var, e, scale) in [("x", t.alpha, pa), ("y", t.beta, pb)] {
                if e == 0 {
                    continue;
                }
                let g = gcd(e, scale);
                let (n, d) = (e / g, scale / g);
                if n > 0 {
                    num.push(power(var, n, d));
                } else {
                    den.push(power(var, -n, d));
                }
            }
            let mut s = if t.coeff == FqElem::ONE && !num.is_empty() {
                String::new()
            } else {
                coeff_literal(fq, t.coeff)
            };
            for (i, factor) in num.iter().enumerate() {
                if i > 0 || !s.is_empty() {
                    s.push('*');
                }
                s.push_str(factor);
            }
            for factor in den {
                s.push('/');
                s.push_str(&factor);
            }
            s
        })
        .collect();
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u64, a: u32, b: u32) -> FieldDesc {
        FieldDesc::with_prime(p, 1, a, b).unwrap()
    }

    #[test]
    fn parses_paper_style_inputs() {
        let f = k(3, 0, 0).parse("x/y^9").unwrap();
        assert_eq!(f, k(3, 0, 0).monomial(FqElem::ONE, 1, -9));
        let g = k(3, 1, 0).parse("x^(1/3)*y^-3").unwrap();
        assert_eq!(g, k(3, 1, 0).monomial(FqElem::ONE, 1, -3));
        let h = k(5, 0, 0).parse("- 2*x^2*y^(-4) + 3 - y^-1").unwrap();
        let kk = k(5, 0, 0);
        let expect = kk
            .monomial(kk.fq().from_int(3), 2, -4)
            .add(&kk.monomial(kk.fq().from_int(3), 0, 0))
            .unwrap()
            .add(&kk.monomial(kk.fq().from_int(4), 0, -1))
            .unwrap();
        assert_eq!(h, expect);
    }

    #[test]
    fn root_depth_and_denominators() {
        assert!(matches!(k(3, 0, 0).parse("x^(1/3)"), Err(Error::RootDepth { .. })));
        assert!(matches!(k(3, 2, 0).parse("x^(1/2)"), Err(Error::BadDenominator { .. })));
        assert_eq!(
            k(3, 0, 0).parse("x^(3/3)").unwrap(),
            k(3, 0, 0).parse("x").unwrap()
        );
        assert_eq!(
            k(3, 1, 1).parse("x^(2/3)/y^(4/3)").unwrap(),
            k(3, 1, 1).monomial(FqElem::ONE, 2, -4)
        );
    }

    #[test]
    fn syntax_errors() {
        for bad in ["", "x^", "x +", "z", "x**y", "[1,2]*x", "(1/3)"] {
            assert!(k(3, 0, 0).parse(bad).is_err(), "{bad:?} should fail");
        }
        assert!(matches!(k(3, 0, 0).parse("x y"), Err(Error::Parse { .. })));
    }

    #[test]
    fn extension_coefficients() {
        let kk = FieldDesc::with_prime(3, 2, 0, 0).unwrap();
        let f = kk.parse("[1,2]*x/y^2 + 2").unwrap();
        assert_eq!(f.to_surface_string(), "[1,2]*x/y^2 + 2");
        assert!(kk.parse("[1,2,0]").is_err());
    }

    #[test]
    fn surface_printing() {
        let f = k(3, 1, 0).monomial(FqElem::ONE, 1, -3);
        assert_eq!(f.to_surface_string(), "x^(1/3)/y^3");
        let g = k(3, 0, 0).parse("2/y^2 + x/y^9 + 1").unwrap();
        assert_eq!(g.to_surface_string(), "x/y^9 + 2/y^2 + 1");
        let h = k(3, 0, 1).monomial(FqElem::ONE, -1, -9);
        assert_eq!(h.to_surface_string(), "1/x/y^3");
        assert_eq!(k(3, 0, 1).parse("1/x/y^3").unwrap(), h);
    }
}
