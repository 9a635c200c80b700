//! Class-expression parser and printer.
//!
//! The grammar, with arbitrary whitespace between tokens:
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := rational ('*' atom)? | atom
//! atom     := 'k' ('^' nat)? | '[' label (';' monomial)? ']'
//! label    := 'O' | bitstring of length 2g
//! monomial := '1' | gen ('.' gen)*
//! gen      := ('e'|'f') index          with 1 <= index <= g-1
//! rational := int ('/' nat)?
//! ```
//!
//! `k` is the kappa generator of the untwisted sector (`k` alone means
//! `k^1`), and `[label; monomial]` is a twisted-sector term; `[label]`
//! abbreviates the unit monomial and `[O]` the untwisted unit. Generators
//! may be listed in any order: the parser normalizes to ascending order
//! with the Koszul sign, and a repeated generator makes the term zero.
//!
//! [`print_class`] emits the canonical normalized form: kappa powers by
//! ascending exponent, then sector terms by label and monomial; printing
//! and reparsing is the identity.

use crcoh::rational::Rational;
use crcoh::{CrClass, ExteriorMonomial, TwoTorsionLabel};
use num_traits::{One, Signed, Zero};

/// A syntax or domain error, anchored to a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// Parses a class expression for the given genus.
///
/// ```
/// use crcoh_cli::expr::parse_class;
///
/// let class = parse_class("k^2 + 3*[0101; e1.f1]", 2).unwrap();
/// assert_eq!(class.cr_degrees(), std::collections::BTreeSet::from([4]));
/// ```
pub fn parse_class(text: &str, genus: usize) -> Result<CrClass, ParseError> {
    let mut parser = Parser {
        text: text.as_bytes(),
        pos: 0,
        genus,
    };
    if let Err(e) = CrClass::zero(genus) {
        return Err(ParseError {
            position: 0,
            message: e.to_string(),
        });
    }
    parser.parse_expr()
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    genus: usize,
}

impl Parser<'_> {
    fn error(&self, position: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            position,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_expr(&mut self) -> Result<CrClass, ParseError> {
        let mut acc = self.parse_term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Ok(acc),
                Some(b'+') => {
                    self.pos += 1;
                    let term = self.parse_term()?;
                    acc = acc.add(&term).expect("terms share the parser's genus");
                }
                Some(b'-') => {
                    self.pos += 1;
                    let term = self.parse_term()?;
                    acc = acc.sub(&term).expect("terms share the parser's genus");
                }
                Some(_) => return Err(self.error(self.pos, "expected '+' or '-'")),
            }
        }
    }

    fn parse_term(&mut self) -> Result<CrClass, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'k') | Some(b'[') => self.parse_atom(Rational::one()),
            Some(c) if c == b'-' || c.is_ascii_digit() => {
                let coeff = self.parse_rational()?;
                self.skip_ws();
                if self.eat(b'*') {
                    self.skip_ws();
                    self.parse_atom(coeff)
                } else {
                    let mut class =
                        CrClass::zero(self.genus).expect("genus validated at entry");
                    class.add_kappa_term(0, coeff);
                    Ok(class)
                }
            }
            _ => Err(self.error(self.pos, "expected a term")),
        }
    }

    fn parse_atom(&mut self, coeff: Rational) -> Result<CrClass, ParseError> {
        match self.peek() {
            Some(b'k') => {
                self.pos += 1;
                let power = if self.eat(b'^') { self.parse_nat()? } else { 1 };
                let mut class = CrClass::zero(self.genus).expect("genus validated at entry");
                class.add_kappa_term(power, coeff);
                Ok(class)
            }
            Some(b'[') => self.parse_sector_atom(coeff),
            _ => Err(self.error(self.pos, "expected 'k' or '['")),
        }
    }

    fn parse_sector_atom(&mut self, coeff: Rational) -> Result<CrClass, ParseError> {
        self.pos += 1;
        self.skip_ws();
        let label_pos = self.pos;
        let label = self.parse_label()?;
        self.skip_ws();
        let mut mono_pos = label_pos;
        let monomial = if self.eat(b';') {
            self.skip_ws();
            mono_pos = self.pos;
            self.parse_monomial()?
        } else {
            Some((ExteriorMonomial::UNIT, 1))
        };
        self.skip_ws();
        if !self.eat(b']') {
            return Err(self.error(self.pos, "expected ']'"));
        }
        let zero = CrClass::zero(self.genus).expect("genus validated at entry");
        let Some((monomial, sign)) = monomial else {
            // A repeated generator: the whole term is zero.
            return Ok(zero);
        };
        let signed = if sign < 0 { -coeff } else { coeff };
        if label.is_zero() {
            if monomial != ExteriorMonomial::UNIT {
                return Err(self.error(
                    mono_pos,
                    crcoh::Error::ZeroLabelSector.to_string(),
                ));
            }
            let mut class = zero;
            class.add_kappa_term(0, signed);
            return Ok(class);
        }
        CrClass::sector_term(&label, monomial, signed)
            .map_err(|e| self.error(mono_pos, e.to_string()))
    }

    fn parse_label(&mut self) -> Result<TwoTorsionLabel, ParseError> {
        let start = self.pos;
        if self.eat(b'O') {
            return TwoTorsionLabel::zero(self.genus)
                .map_err(|e| self.error(start, e.to_string()));
        }
        while matches!(self.peek(), Some(b'0') | Some(b'1')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error(start, "expected a label: 'O' or a bitstring"));
        }
        let text = std::str::from_utf8(&self.text[start..self.pos])
            .expect("bitstring bytes are ASCII");
        TwoTorsionLabel::parse(self.genus, text).map_err(|e| self.error(start, e.to_string()))
    }

    /// Parses a monomial and normalizes the generator order, returning the
    /// accumulated Koszul sign; `None` when a generator repeats.
    fn parse_monomial(&mut self) -> Result<Option<(ExteriorMonomial, i8)>, ParseError> {
        if self.eat(b'1') {
            return Ok(Some((ExteriorMonomial::UNIT, 1)));
        }
        let mut acc = ExteriorMonomial::UNIT;
        let mut sign = 1i8;
        let mut dead = false;
        loop {
            let gen = self.parse_generator()?;
            if !dead {
                match acc.wedge(&gen) {
                    Some((merged, s)) => {
                        acc = merged;
                        sign *= s;
                    }
                    None => dead = true,
                }
            }
            if !self.eat(b'.') {
                break;
            }
        }
        if dead {
            Ok(None)
        } else {
            Ok(Some((acc, sign)))
        }
    }

    fn parse_generator(&mut self) -> Result<ExteriorMonomial, ParseError> {
        let start = self.pos;
        let kind = match self.peek() {
            Some(c @ (b'e' | b'f')) => {
                self.pos += 1;
                c
            }
            _ => return Err(self.error(start, "expected a generator 'e<i>' or 'f<i>'")),
        };
        let index = self.parse_nat()?;
        if index == 0 || index > self.genus - 1 {
            return Err(self.error(
                start,
                crcoh::Error::GeneratorIndex {
                    index,
                    max: self.genus - 1,
                }
                .to_string(),
            ));
        }
        let gen = if kind == b'e' {
            ExteriorMonomial::e(index)
        } else {
            ExteriorMonomial::f(index)
        };
        gen.map_err(|e| self.error(start, e.to_string()))
    }

    fn parse_nat(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error(start, "expected digits"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .expect("digit bytes are ASCII")
            .parse()
            .map_err(|_| self.error(start, "number too large"))
    }

    fn parse_rational(&mut self) -> Result<Rational, ParseError> {
        let start = self.pos;
        self.eat(b'-');
        let digits_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.error(self.pos, "expected digits"));
        }
        let numerator: crcoh::Int = std::str::from_utf8(&self.text[start..self.pos])
            .expect("sign and digit bytes are ASCII")
            .parse()
            .expect("a digit run parses as an integer");
        if !self.eat(b'/') {
            return Ok(Rational::from_integer(numerator));
        }
        let den_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == den_start {
            return Err(self.error(den_start, "expected digits"));
        }
        let denominator: crcoh::Int = std::str::from_utf8(&self.text[den_start..self.pos])
            .expect("digit bytes are ASCII")
            .parse()
            .expect("a digit run parses as an integer");
        if denominator.is_zero() {
            return Err(self.error(den_start, "denominator must be nonzero"));
        }
        Ok(Rational::new(numerator, denominator))
    }
}

/// Prints a class in canonical normalized form. Reparsing the output
/// reproduces the class exactly.
pub fn print_class(class: &CrClass) -> String {
    let mut terms: Vec<(bool, String)> = Vec::new();
    for (power, coeff) in class.kappa_coeffs().iter().enumerate() {
        if !coeff.is_zero() {
            let term = render_term(coeff, kappa_atom(power), terms.is_empty());
            terms.push(term);
        }
    }
    for (label, content) in class.sectors() {
        for (monomial, coeff) in content.terms() {
            let atom = Some(sector_atom(label, monomial));
            let term = render_term(coeff, atom, terms.is_empty());
            terms.push(term);
        }
    }
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (negative, body)) in terms.iter().enumerate() {
        if i == 0 {
            if *negative {
                out.push('-');
            }
        } else if *negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(body);
    }
    out
}

fn kappa_atom(power: usize) -> Option<String> {
    match power {
        0 => None,
        1 => Some("k".to_string()),
        m => Some(format!("k^{m}")),
    }
}

fn sector_atom(label: &TwoTorsionLabel, monomial: &ExteriorMonomial) -> String {
    if *monomial == ExteriorMonomial::UNIT {
        format!("[{label}]")
    } else {
        format!("[{label}; {monomial}]")
    }
}

/// Renders one term as (is_negative, body). The sign is pulled out of the
/// coefficient; a unit coefficient on a leading negative term keeps the
/// explicit `1*` because the grammar has no unary minus on atoms.
fn render_term(coeff: &Rational, atom: Option<String>, leading: bool) -> (bool, String) {
    let negative = coeff.is_negative();
    let magnitude = coeff.abs();
    let body = match atom {
        None => magnitude.to_string(),
        Some(atom) => {
            if magnitude.is_one() && negative && leading {
                // A leading "-1*" survives reparsing; "-k" would not, and a
                // later " - " separator already carries the sign.
                format!("1*{atom}")
            } else if magnitude.is_one() {
                atom
            } else {
                format!("{magnitude}*{atom}")
            }
        }
    };
    (negative, body)
}
