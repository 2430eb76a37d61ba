//! Expression grammar: rationals, `T^(p/q)`, `var^int`, `+ - * /`, parentheses.

use super::poly::{format_poly, LaurentPoly};
use super::LaurentError;
use crate::coeff::{NovScalar, Rational};
use crate::ring::Ring;

/// Coefficient rings the parser can produce.
pub trait ParseCoeff: Ring {
    fn from_rational(r: &Rational) -> Self;
    /// `T^e`, when the ring contains the Novikov parameter.
    fn t_power(e: &Rational) -> Option<Self>;
}

impl ParseCoeff for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn t_power(e: &Rational) -> Option<Self> {
        e.is_zero().then(Rational::one)
    }
}

impl ParseCoeff for NovScalar {
    fn from_rational(r: &Rational) -> Self {
        NovScalar::constant(r.clone())
    }
    fn t_power(e: &Rational) -> Option<Self> {
        Some(NovScalar::t_pow(e))
    }
}

/// Variable names for a Laurent ring; `T` is reserved for the Novikov parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub vars: Vec<String>,
}

impl PolyRing {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Self {
        PolyRing { vars: vars.into_iter().map(Into::into).collect() }
    }

    /// `prefix1, …, prefixn`
    pub fn numbered(prefix: &str, n: usize) -> Self {
        PolyRing::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn parse<C: ParseCoeff>(&self, text: &str) -> Result<LaurentPoly<C>, LaurentError> {
        parse_expr(text, &self.vars)
    }

    pub fn format<C: Ring>(&self, p: &LaurentPoly<C>) -> String {
        format_poly(p, &self.vars)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, LaurentError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Num(chars[start..i].iter().collect())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(LaurentError::Parse { pos: i, msg: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser<'a, C> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: &'a [String],
    _c: std::marker::PhantomData<C>,
}

impl<C: ParseCoeff> Parser<'_, C> {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, LaurentError> {
        Err(LaurentError::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<LaurentPoly<C>, LaurentError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly<C>, LaurentError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let pos = self.pos();
                let d = self.unary()?;
                if !d.is_constant() {
                    return Err(LaurentError::Parse { pos, msg: "division by a non-constant".into() });
                }
                let inv = d.constant_term().inv();
                match inv {
                    Some(inv) => acc = acc.scale(&inv),
                    None => return Err(LaurentError::Parse { pos, msg: "division by zero".into() }),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPoly<C>, LaurentError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentPoly<C>, LaurentError> {
        let is_t = matches!(self.peek(), Some(Tok::Ident(s)) if s == "T");
        let pos = self.pos();
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self.exponent()?;
        if is_t {
            return match C::t_power(&e) {
                Some(c) => Ok(LaurentPoly::constant(c)),
                None => Err(LaurentError::Parse { pos, msg: "T is not available over this coefficient ring".into() }),
            };
        }
        if !e.is_integer() {
            return Err(LaurentError::Parse { pos, msg: "fractional exponent on a non-T factor".into() });
        }
        let k = i32::try_from(e.numer()).map_err(|_| LaurentError::Parse { pos, msg: "exponent too large".into() })?;
        base.powi(k)
            .ok_or(LaurentError::Parse { pos, msg: "negative power of a non-monomial".into() })
    }

    fn integer(&mut self) -> Result<i64, LaurentError> {
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.at += 1;
                let v: i64 = s.parse().or_else(|_| self.err("integer too large"))?;
                Ok(if neg { -v } else { v })
            }
            _ => self.err("expected an integer exponent"),
        }
    }

    fn exponent(&mut self) -> Result<Rational, LaurentError> {
        if self.eat('(') {
            let p = self.integer()?;
            let q = if self.eat('/') { self.integer()? } else { 1 };
            if q == 0 {
                return self.err("zero denominator in exponent");
            }
            if !self.eat(')') {
                return self.err("expected ')'");
            }
            Ok(Rational::new(p, q))
        } else {
            Ok(Rational::from_int(self.integer()?))
        }
    }

    fn atom(&mut self) -> Result<LaurentPoly<C>, LaurentError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.at += 1;
                let r: Rational = s.parse().map_err(|_| LaurentError::Parse { pos, msg: "bad number".into() })?;
                Ok(LaurentPoly::constant(C::from_rational(&r)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if name == "T" {
                    return match C::t_power(&Rational::one()) {
                        Some(c) => Ok(LaurentPoly::constant(c)),
                        None => Err(LaurentError::Parse { pos, msg: "T is not available over this coefficient ring".into() }),
                    };
                }
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(LaurentPoly::var(i)),
                    None => Err(LaurentError::UnknownVariable { name, pos }),
                }
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse `text` over the variables `vars`.
pub fn parse_expr<C: ParseCoeff>(text: &str, vars: &[String]) -> Result<LaurentPoly<C>, LaurentError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.chars().count(), vars, _c: std::marker::PhantomData };
    let out = p.expr()?;
    if p.at < p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> PolyRing {
        PolyRing::numbered("y", 2)
    }

    #[test]
    fn cp1_potential_round_trips() {
        let r = PolyRing::numbered("y", 1);
        let p: LaurentPoly<NovScalar> = r.parse("T^(1/2)*(y1 + y1^-1)").unwrap();
        let t = NovScalar::t_pow(&Rational::new(1, 2));
        let expected = LaurentPoly::var(0).add(&LaurentPoly::var(0).inv().unwrap()).scale(&t);
        assert_eq!(p, expected);
        assert_eq!(r.format(&p), "T^(1/2)*(y1 + y1^-1)");
    }

    #[test]
    fn zero_and_merge() {
        let z: LaurentPoly<Rational> = ring().parse("0").unwrap();
        assert!(z.is_zero());
        let m: LaurentPoly<Rational> = ring().parse("y1*y2^-1 + y1*y2^-1").unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.coeff(&[1, -1]), Rational::from_int(2));
    }

    #[test]
    fn errors_carry_positions() {
        let e = ring().parse::<Rational>("y1 + z").unwrap_err();
        assert_eq!(e, LaurentError::UnknownVariable { name: "z".into(), pos: 5 });
        assert!(matches!(ring().parse::<Rational>("y1 +"), Err(LaurentError::Parse { pos: 4, .. })));
        assert!(matches!(ring().parse::<Rational>("y1 / y2"), Err(LaurentError::Parse { .. })));
        assert!(matches!(ring().parse::<Rational>("T"), Err(LaurentError::Parse { .. })));
    }

    #[test]
    fn printing_round_trips() {
        for text in [
            "y1 - 2*y2^-1 + 1/3",
            "(1 + T)*y1 - T^(2/3)*y2",
            "-y1*y2",
            "3*T^-1*y1",
            "(T)/(1 - T)*y1",
            "-(y1 + y2)",
        ] {
            let p: LaurentPoly<NovScalar> = ring().parse(text).unwrap_or_else(|e| panic!("{text}: {e}"));
            let printed = ring().format(&p);
            let back: LaurentPoly<NovScalar> = ring().parse(&printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
            assert_eq!(back, p, "{text} printed as {printed}");
        }
    }
}
