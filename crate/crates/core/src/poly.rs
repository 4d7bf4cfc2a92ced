//! Sparse polynomials over a finite field.
//!
//! A polynomial is a list of `(exponent, coefficient-index)` terms kept in
//! canonical form: exponents strictly descending, no zero coefficients.
//! Exponents are stored exactly as given; they are never folded modulo
//! `q - 1`, so `x^{q-1}` and `1` stay distinct as polynomials even though
//! they agree on every unit.

use std::fmt;

use thiserror::Error;

use crate::field::{DlogTable, Field, FieldError};

/// Errors from polynomial construction, parsing, and reversal.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("FieldMismatch: polynomial and argument belong to different fields")]
    FieldMismatch,
    #[error("ParseError at position {pos}: {msg}")]
    ParseError { pos: usize, msg: String },
    #[error("CoefficientOutOfRange at position {pos}: {value} is not an element index below q = {q}")]
    CoefficientOutOfRange { pos: usize, value: u64, q: u64 },
    #[error("ZeroPolynomial: the zero polynomial has no coefficient reversal")]
    ZeroPolynomial,
    #[error("DegreeTooLarge: exponent {exp} exceeds q - 1 = {max}, leaving no reversal slot")]
    DegreeTooLarge { exp: u64, max: u64 },
}

/// A canonical sparse polynomial owned by a field.
#[derive(Clone)]
pub struct SparsePoly {
    field: Field,
    /// `(exponent, coefficient index)`, exponents strictly descending,
    /// coefficients nonzero.
    terms: Vec<(u64, u64)>,
}

impl PartialEq for SparsePoly {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.terms == other.terms
    }
}
impl Eq for SparsePoly {}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly({} over {})", self, self.field)
    }
}

impl SparsePoly {
    /// Merge raw `(exponent, coefficient)` terms into canonical form: equal
    /// exponents are combined by field addition, zero coefficients dropped,
    /// and the result sorted by descending exponent. A formula with several
    /// symbolic terms may legitimately canonicalize to fewer.
    pub fn canonicalize(field: &Field, raw: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut terms: Vec<(u64, u64)> = raw.into_iter().collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut merged: Vec<(u64, u64)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            debug_assert!(c < field.q(), "coefficient index out of range");
            match merged.last_mut() {
                Some((le, lc)) if *le == e => *lc = field.add_idx(*lc, c),
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0);
        SparsePoly { field: field.clone(), terms: merged }
    }

    pub fn zero(field: &Field) -> Self {
        SparsePoly { field: field.clone(), terms: Vec::new() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &[(u64, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest exponent, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.first().map(|&(e, _)| e)
    }

    /// Evaluate at the element with index `x` by per-term square-and-multiply.
    /// `0^0 = 1`, so a constant term contributes at `x = 0`.
    pub fn evaluate(&self, x: u64) -> u64 {
        let f = &self.field;
        let mut acc = 0;
        for &(e, c) in &self.terms {
            acc = f.add_idx(acc, f.mul_idx(c, f.pow_idx(x, e)));
        }
        acc
    }

    /// Evaluate through a discrete-log table: each term `c * x^e` with
    /// nonzero `x` becomes one exponent addition modulo `q - 1` and one
    /// table lookup. Independent of [`SparsePoly::evaluate`] except for the
    /// shared field addition.
    pub fn evaluate_dlog(&self, table: &DlogTable, x: u64) -> u64 {
        let f = &self.field;
        let qm1 = table.unit_count() as u128;
        let mut acc = 0;
        if x == 0 {
            for &(e, c) in &self.terms {
                if e == 0 {
                    acc = f.add_idx(acc, c);
                }
            }
            return acc;
        }
        let jx = table.log(x).expect("nonzero element has a dlog") as u128;
        for &(e, c) in &self.terms {
            if e == 0 {
                acc = f.add_idx(acc, c);
                continue;
            }
            let jc = table.log(c).expect("canonical coefficients are nonzero") as u128;
            let j = (jc + (e as u128 % qm1) * jx) % qm1;
            acc = f.add_idx(acc, table.pow_of(j as u64));
        }
        acc
    }

    /// Reverse the coefficient sequence with respect to the full exponent
    /// window of the field: each term `(e, c)` maps to `(q - 1 - e, c)`.
    /// Anchoring at `q - 1` (rather than at the polynomial's own degree)
    /// makes the reversal an involution on the polynomials it accepts and
    /// pairs `x` with `x^{q-2}`.
    pub fn reverse(&self) -> Result<Self, PolyError> {
        if self.terms.is_empty() {
            return Err(PolyError::ZeroPolynomial);
        }
        let max = self.field.q() - 1;
        if let Some(&(e, _)) = self.terms.iter().find(|&&(e, _)| e > max) {
            return Err(PolyError::DegreeTooLarge { exp: e, max });
        }
        Ok(Self::canonicalize(
            &self.field,
            self.terms.iter().map(|&(e, c)| (max - e, c)),
        ))
    }

    /// Parse polynomial text over `field`.
    ///
    /// Grammar: `poly := ['-'] sterm (('+'|'-') sterm)*` where
    /// `sterm := coeff ['*'] 'x' ['^' exp] | 'x' ['^' exp] | coeff`,
    /// coefficients are element indices in decimal, and whitespace between
    /// tokens is ignored. A minus sign applies field negation to the
    /// coefficient that follows.
    pub fn parse(field: &Field, text: &str) -> Result<Self, PolyError> {
        Parser { field, bytes: text.as_bytes(), pos: 0 }.run()
    }
}

impl fmt::Display for SparsePoly {
    /// Canonical text: descending terms joined by `" + "`; the coefficient
    /// index is omitted when 1 unless the term is constant; `x^1` prints as
    /// `x`; the zero polynomial prints as `0`. `parse` inverts `format`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, &(e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            match (e, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{e}")?,
                _ => write!(f, "{c}x^{e}")?,
            }
        }
        Ok(())
    }
}

/// Hand-rolled scanner so syntax errors carry a 1-based character position.
struct Parser<'a> {
    field: &'a Field,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn run(mut self) -> Result<SparsePoly, PolyError> {
        let mut raw: Vec<(u64, u64)> = Vec::new();
        self.skip_ws();
        if self.bytes.is_empty() || self.pos >= self.bytes.len() {
            return Err(self.err("empty polynomial"));
        }
        let mut negate = false;
        if self.peek() == Some(b'-') {
            negate = true;
            self.pos += 1;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            self.skip_ws();
            let (e, c) = self.sterm()?;
            raw.push((e, if negate { self.field.neg_idx(c) } else { c }));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => {
                    negate = false;
                    self.pos += 1;
                }
                Some(b'-') => {
                    negate = true;
                    self.pos += 1;
                }
                Some(ch) => {
                    return Err(self.err(&format!("expected '+' or '-', found '{}'", ch as char)))
                }
            }
        }
        Ok(SparsePoly::canonicalize(self.field, raw))
    }

    fn sterm(&mut self) -> Result<(u64, u64), PolyError> {
        match self.peek() {
            Some(b'0'..=b'9') => {
                let start = self.pos;
                let value = self.number()?;
                if value >= self.field.q() {
                    return Err(PolyError::CoefficientOutOfRange {
                        pos: start + 1,
                        value,
                        q: self.field.q(),
                    });
                }
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.skip_ws();
                    if self.peek() != Some(b'x') {
                        return Err(self.err("expected 'x' after '*'"));
                    }
                }
                if self.peek() == Some(b'x') {
                    self.pos += 1;
                    Ok((self.exponent()?, value))
                } else {
                    Ok((0, value)) // bare constant
                }
            }
            Some(b'x') => {
                self.pos += 1;
                Ok((self.exponent()?, 1))
            }
            Some(ch) => Err(self.err(&format!("expected a term, found '{}'", ch as char))),
            None => Err(self.err("expected a term, found end of input")),
        }
    }

    /// Exponent suffix after an `x`: `'^' number`, or 1 when absent.
    fn exponent(&mut self) -> Result<u64, PolyError> {
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            if !matches!(self.peek(), Some(b'0'..=b'9')) {
                return Err(self.err("expected an exponent after '^'"));
            }
            self.number()
        } else {
            Ok(1)
        }
    }

    fn number(&mut self) -> Result<u64, PolyError> {
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(d @ b'0'..=b'9') = self.peek() {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((d - b'0') as u64))
                .ok_or_else(|| PolyError::ParseError {
                    pos: start + 1,
                    msg: "number too large".into(),
                })?;
            self.pos += 1;
        }
        Ok(value)
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> PolyError {
        PolyError::ParseError { pos: self.pos + 1, msg: msg.into() }
    }
}

impl From<FieldError> for PolyError {
    fn from(e: FieldError) -> Self {
        debug_assert_eq!(e, FieldError::FieldMismatch);
        PolyError::FieldMismatch
    }
}
