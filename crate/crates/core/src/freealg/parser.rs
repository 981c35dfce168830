//! Text grammar for noncommutative polynomials.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor (['*'] factor)*
//! factor  := number | 'i' | param | gen ['^' uint] | '(' complex ')'
//! complex := signed_number [('+'|'-') number '*'? 'i']
//! number  := decimal float, optionally with exponent
//! param   := 'a' | 'b' | 'c'   (must be bound by the caller)
//! gen     := 'x' | 'y' | 'z'
//! ```
//!
//! Juxtaposition and `*` both denote the noncommutative product, left to
//! right; whitespace is insignificant. `x^0` is the empty word.

use super::{Gen, NcPoly, Word};
use crate::error::Error;
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Named scalar parameters available to expressions (`a`, `b`, `c`).
#[derive(Debug, Clone, Default)]
pub struct Bindings<S> {
    map: BTreeMap<char, S>,
}

impl<S: Clone> Bindings<S> {
    pub fn new() -> Self {
        Bindings {
            map: BTreeMap::new(),
        }
    }

    pub fn abc(a: S, b: S, c: S) -> Self {
        let mut map = BTreeMap::new();
        map.insert('a', a);
        map.insert('b', b);
        map.insert('c', c);
        Bindings { map }
    }

    pub fn bind(mut self, name: char, value: S) -> Self {
        self.map.insert(name, value);
        self
    }

    fn get(&self, name: char) -> Option<S> {
        self.map.get(&name).cloned()
    }
}

/// Parse with no parameters bound.
pub fn parse<S: Scalar>(text: &str) -> Result<NcPoly<S>, Error> {
    parse_with(text, &Bindings::new())
}

/// Parse with `a`, `b`, `c` (or a subset) bound to scalar values.
pub fn parse_with<S: Scalar>(text: &str, bindings: &Bindings<S>) -> Result<NcPoly<S>, Error> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        bindings,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a, S> {
    src: &'a [u8],
    pos: usize,
    bindings: &'a Bindings<S>,
}

impl<'a, S: Scalar> Parser<'a, S> {
    fn err(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
        }
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

    fn expr(&mut self) -> Result<NcPoly<S>, Error> {
        let mut acc = NcPoly::zero();
        let mut sign = match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                false
            }
            Some(b'-') => {
                self.pos += 1;
                true
            }
            _ => false,
        };
        loop {
            let term = self.term()?;
            acc = if sign { acc.sub(&term) } else { acc.add(&term) };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = true;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<NcPoly<S>, Error> {
        let mut coeff = S::one();
        let mut word: Vec<u8> = Vec::new();
        let mut saw_factor = false;
        loop {
            match self.peek() {
                Some(b'*') if saw_factor => {
                    self.pos += 1;
                }
                Some(c) if is_factor_start(c) => {}
                _ => break,
            }
            match self.peek() {
                Some(c) if c.is_ascii_digit() || c == b'.' => {
                    let v = self.number()?;
                    coeff = coeff * S::from_re(v);
                }
                Some(b'i') => {
                    self.pos += 1;
                    coeff = coeff * S::i();
                }
                Some(b'(') => {
                    let v = self.complex_literal()?;
                    coeff = coeff * v;
                }
                Some(c @ (b'a' | b'b' | b'c')) => {
                    self.pos += 1;
                    match self.bindings.get(c as char) {
                        Some(v) => coeff = coeff * v,
                        None => return Err(Error::UnboundParameter((c as char).to_string())),
                    }
                }
                Some(c @ (b'x' | b'y' | b'z')) => {
                    self.pos += 1;
                    let g = match c {
                        b'x' => Gen::X,
                        b'y' => Gen::Y,
                        _ => Gen::Z,
                    };
                    let power = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.uint()?
                    } else {
                        1
                    };
                    for _ in 0..power {
                        word.push(g.index() as u8);
                    }
                }
                _ => {
                    if saw_factor {
                        break;
                    }
                    return Err(self.err("expected a factor"));
                }
            }
            saw_factor = true;
        }
        if !saw_factor {
            return Err(self.err("empty term"));
        }
        Ok(NcPoly::monomial(Word::from_indices(&word), coeff))
    }

    fn uint(&mut self) -> Result<usize, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn number(&mut self) -> Result<f64, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
        {
            self.pos += 1;
        }
        // optional exponent
        if self.pos < self.src.len() && (self.src[self.pos] | 0x20) == b'e' {
            let mut probe = self.pos + 1;
            if probe < self.src.len() && (self.src[probe] == b'+' || self.src[probe] == b'-') {
                probe += 1;
            }
            if probe < self.src.len() && self.src[probe].is_ascii_digit() {
                self.pos = probe;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            }
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("malformed number"))
    }

    /// `( re [± im [*] i] )`
    fn complex_literal(&mut self) -> Result<S, Error> {
        debug_assert_eq!(self.peek(), Some(b'('));
        self.pos += 1;
        let re_neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let re = self.number()? * if re_neg { -1.0 } else { 1.0 };
        let mut value = S::from_re(re);
        match self.peek() {
            Some(b')') => {
                self.pos += 1;
            }
            Some(sign @ (b'+' | b'-')) => {
                self.pos += 1;
                let im = self.number()? * if sign == b'-' { -1.0 } else { 1.0 };
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                }
                if self.peek() != Some(b'i') {
                    return Err(self.err("expected `i` in complex literal"));
                }
                self.pos += 1;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                value = value + S::i() * S::from_re(im);
            }
            _ => return Err(self.err("expected `)` or `± imag*i`")),
        }
        Ok(value)
    }
}

fn is_factor_start(c: u8) -> bool {
    c.is_ascii_digit()
        || c == b'.'
        || c == b'('
        || matches!(c, b'i' | b'a' | b'b' | b'c' | b'x' | b'y' | b'z')
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    fn w(s: &str) -> Word {
        Word::from_indices(
            &s.bytes()
                .map(|b| match b {
                    b'x' => 0,
                    b'y' => 1,
                    b'z' => 2,
                    _ => panic!(),
                })
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn parses_commutator() {
        let p: NcPoly<C64> = parse("x*y - y*x").unwrap();
        let expected = NcPoly::from_terms([
            (w("xy"), C64::new(1.0, 0.0)),
            (w("yx"), C64::new(-1.0, 0.0)),
        ]);
        assert_eq!(p, expected);
    }

    #[test]
    fn parses_bound_parameters() {
        let (a, b, c) = (C64::new(0.25, 0.5), C64::new(-1.0, 0.0), C64::new(0.0, 2.0));
        let bindings = Bindings::abc(a, b, c);
        let p: NcPoly<C64> = parse_with("a x y + b y x + c z^2", &bindings).unwrap();
        let expected =
            NcPoly::from_terms([(w("xy"), a), (w("yx"), b), (w("zz"), c)]);
        assert_eq!(p, expected);
    }

    #[test]
    fn power_zero_is_unit() {
        let p: NcPoly<C64> = parse("x^0").unwrap();
        assert_eq!(p, NcPoly::one());
    }

    #[test]
    fn juxtaposition_and_star_agree() {
        let p: NcPoly<C64> = parse("2 x y z").unwrap();
        let q: NcPoly<C64> = parse("2*x*y*z").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn unbound_parameter_is_reported() {
        assert!(matches!(
            parse::<C64>("a x"),
            Err(Error::UnboundParameter(_))
        ));
    }

    #[test]
    fn syntax_error_carries_position() {
        match parse::<C64>("x + %") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn complex_literals() {
        let p: NcPoly<C64> = parse("(1.5-2e0*i)*x").unwrap();
        assert_eq!(p, NcPoly::monomial(w("x"), C64::new(1.5, -2.0)));
    }

    #[test]
    fn print_parse_round_trip() {
        let p = NcPoly::<C64>::from_terms([
            (Word::empty(), C64::new(-0.125, 0.0)),
            (w("x"), C64::new(1.0, 0.0)),
            (w("yz"), C64::new(0.3333333333333333, -2.5)),
            (w("zzz"), C64::new(0.0, 1e-3)),
        ]);
        let q: NcPoly<C64> = parse(&p.print()).unwrap();
        assert_eq!(p, q);
    }
}
