use std::sync::Arc;

use super::error::AlgebraError;
use super::field::Coefficient;
use super::geom::GeomPoly;
use super::rational::ParamRational;
use super::vars::{Var, VarTable};

/// Parses an expression over `+ - * / ^` and parentheses into a geometric
/// polynomial. Identifiers are table variables or base parameter names
/// (`a0` at root depth `k` reads as `b0^(p^k)`). Division is only allowed by
/// expressions free of geometric variables.
pub fn parse_geom(table: &Arc<VarTable>, src: &str) -> Result<GeomPoly, AlgebraError> {
    let mut p = Parser { table, src: src.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

/// Parses an element of the parameter field.
pub fn parse_param(table: &Arc<VarTable>, src: &str) -> Result<ParamRational, AlgebraError> {
    parse_geom(table, src)?
        .to_param()
        .ok_or(AlgebraError::Parse { pos: 0, msg: "geometric variable in a parameter expression".into() })
}

struct Parser<'a> {
    table: &'a Arc<VarTable>,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<GeomPoly, AlgebraError> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { acc.checked_add(&rhs)? } else { acc.checked_sub(&rhs)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<GeomPoly, AlgebraError> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.unary()?;
            if op == b'*' {
                acc = acc.checked_mul(&rhs)?;
            } else {
                let c =
                    rhs.to_param().ok_or(AlgebraError::Parse { pos: at, msg: "division by a non-constant".into() })?;
                let inv = c.inverse().ok_or(AlgebraError::DivisionByZero)?;
                acc = acc.scale(&inv);
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<GeomPoly, AlgebraError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg_ref());
        }
        self.power()
    }

    fn power(&mut self) -> Result<GeomPoly, AlgebraError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64, AlgebraError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| AlgebraError::Parse { pos: start, msg: "integer too large".into() })
    }

    fn atom(&mut self) -> Result<GeomPoly, AlgebraError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let p = self.table.characteristic() as u64;
                Ok(GeomPoly::from_int(self.table, (n % p) as i64))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.table.lookup(name) {
                    Some(Var::Geom(i)) => Ok(GeomPoly::var(self.table, i)),
                    Some(Var::Param(i)) => Ok(GeomPoly::param(self.table, i)),
                    None => match self.table.lookup_base(name) {
                        Some(i) => Ok(GeomPoly::alpha(self.table, i)),
                        None => Err(AlgebraError::UnknownVariable(name.to_string())),
                    },
                }
            }
            _ => Err(self.error("expected a number, variable or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_display() {
        let t = VarTable::new(2, &["a0", "a1"], &["x", "y"]).unwrap();
        let f = parse_geom(&t, "(a0 + a1)*x^2*y + x/(a1) + 1").unwrap();
        assert_eq!(parse_geom(&t, &f.to_string()).unwrap(), f);
    }

    #[test]
    fn base_names_resolve_at_depth() {
        let t = VarTable::new(2, &["a0", "a1"], &["x"]).unwrap().root_extend(3).unwrap();
        assert_eq!(parse_geom(&t, "a0").unwrap(), parse_geom(&t, "b0^8").unwrap());
    }

    #[test]
    fn rejects_garbage() {
        let t = VarTable::new(2, &["a0"], &["x"]).unwrap();
        assert!(matches!(parse_geom(&t, "x +"), Err(AlgebraError::Parse { .. })));
        assert!(matches!(parse_geom(&t, "1/x"), Err(AlgebraError::Parse { .. })));
        assert!(matches!(parse_geom(&t, "zz"), Err(AlgebraError::UnknownVariable(_))));
        assert_eq!(parse_geom(&t, "1/(a0+a0)"), Err(AlgebraError::DivisionByZero));
    }
}
