//! Text syntax for characters built from irreducibles.
//!
//! ```text
//! sum     := product ('+' product)*
//! product := atom (('*' | 'x') atom)*
//! atom    := 'U' integer | 'sym' '(' integer ',' sum ')'
//!          | 'tensor' '(' sum ',' sum ')' | '(' sum ')'
//! ```

use super::{irr_char, sym_power, tensor, Character};
use crate::error::{Error, Result};

/// Evaluates e.g. `sym(2, sym(4, U1))` or `U1 * U1 + U0`.
pub fn parse_character(s: &str) -> Result<Character> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let c = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(c)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
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
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn integer(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .filter(|&n| n <= 64)
            .ok_or_else(|| Error::Parse { pos: start, msg: "expected an integer in 0..=64".into() })
    }

    fn word(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_alphabetic) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn sum(&mut self) -> Result<Character> {
        let mut acc = self.product()?;
        while self.eat(b'+') {
            acc = acc.add(&self.product()?);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Character> {
        let mut acc = self.atom()?;
        loop {
            self.skip_ws();
            let next = self.src.get(self.pos).copied();
            // `x` is a product only when followed by a separator, never as a prefix of a word
            let is_x = next == Some(b'x') && !self.src.get(self.pos + 1).is_some_and(u8::is_ascii_alphanumeric);
            if next == Some(b'*') || is_x {
                self.pos += 1;
                acc = tensor(&acc, &self.atom()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn atom(&mut self) -> Result<Character> {
        if self.eat(b'(') {
            let c = self.sum()?;
            self.expect(b')')?;
            return Ok(c);
        }
        let at = self.pos;
        match self.word() {
            "U" => Ok(irr_char(self.integer()?)),
            "sym" => {
                self.expect(b'(')?;
                let k = self.integer()?;
                self.expect(b',')?;
                let c = self.sum()?;
                self.expect(b')')?;
                Ok(sym_power(&c, k))
            }
            "tensor" => {
                self.expect(b'(')?;
                let a = self.sum()?;
                self.expect(b',')?;
                let b = self.sum()?;
                self.expect(b')')?;
                Ok(tensor(&a, &b))
            }
            _ => Err(Error::Parse { pos: at, msg: "expected `U<n>`, `sym(k, ..)`, `tensor(.., ..)` or `(`".into() }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2rep::decompose;

    #[test]
    fn expressions() {
        let d = |s: &str| decompose(&parse_character(s).unwrap()).unwrap();
        assert_eq!(d("sym(2, sym(4, U1))"), vec![8, 4, 0]);
        assert_eq!(d("U1 * U1"), vec![2, 0]);
        assert_eq!(d("U1 x U2 + U0"), vec![3, 1, 0]);
        assert_eq!(d("tensor(U2, (U1 + U1))"), vec![3, 3, 1, 1]);
        assert_eq!(d(" U3 "), vec![3]);
        for bad in ["", "V1", "sym(2 U1)", "U1 +", "U1)", "sym(2, U1", "U999"] {
            assert!(matches!(parse_character(bad), Err(Error::Parse { .. })), "{bad}");
        }
    }
}
