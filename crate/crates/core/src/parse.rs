//! Text syntax for words.
//!
//! ```text
//! word  := term { term }            (terms separated by whitespace, `*`, or nothing)
//! term  := atom [ "^" int ] | "[" word "," word "]" [ "^" int ] | "(" word ")" [ "^" int ]
//! atom  := ("x"|"y") index | "zeta" | "1"
//! ```

use crate::error::{Error, Result};
use crate::word::{boundary_word, Letter, Word};

/// Parses `text` into a reduced word of the given genus.
pub fn parse_word(text: &str, genus: u32) -> Result<Word> {
    if genus == 0 {
        return Err(Error::InvalidGenus);
    }
    let mut p = Parser {
        src: text,
        pos: 0,
        genus,
    };
    p.skip_separators();
    if p.at_end() {
        return Err(Error::parse(0, "", "empty input (write `1` for the identity)"));
    }
    let w = p.word()?;
    p.skip_separators();
    if !p.at_end() {
        return Err(p.error_here("unexpected input"));
    }
    Ok(w)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    genus: u32,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_separators(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() || c == '*' {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn current_token(&self) -> String {
        let rest = self.rest();
        let end = rest
            .char_indices()
            .find(|&(i, c)| i > 0 && (c.is_whitespace() || "*^[](),".contains(c)))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        let end = if end == 0 { rest.len().min(1) } else { end };
        rest[..end].to_string()
    }

    fn error_here(&self, message: &str) -> Error {
        let token = if self.at_end() {
            "<end of input>".to_string()
        } else {
            self.current_token()
        };
        Error::parse(self.pos, token, message)
    }

    fn genus_one(&self) -> Word {
        Word::identity(self.genus).expect("genus checked at entry")
    }

    /// Parses terms until a closing delimiter or end of input.
    fn word(&mut self) -> Result<Word> {
        let mut acc = self.genus_one();
        let mut terms = 0;
        loop {
            self.skip_separators();
            match self.peek() {
                None | Some(']') | Some(')') | Some(',') => break,
                _ => {
                    let t = self.term()?;
                    acc = acc.multiply(&t)?;
                    terms += 1;
                }
            }
        }
        if terms == 0 {
            return Err(self.error_here("expected a term"));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Word> {
        let start = self.pos;
        let base = match self.peek() {
            Some('[') => {
                self.bump();
                let u = self.word()?;
                self.skip_separators();
                if self.peek() != Some(',') {
                    return Err(self.error_here("expected `,` inside commutator"));
                }
                self.bump();
                let v = self.word()?;
                self.skip_separators();
                if self.peek() != Some(']') {
                    return Err(if self.at_end() {
                        Error::parse(start, "[", "unbalanced `[`")
                    } else {
                        self.error_here("expected `]`")
                    });
                }
                self.bump();
                u.commutator(&v)?
            }
            Some('(') => {
                self.bump();
                let u = self.word()?;
                self.skip_separators();
                if self.peek() != Some(')') {
                    return Err(if self.at_end() {
                        Error::parse(start, "(", "unbalanced `(`")
                    } else {
                        self.error_here("expected `)`")
                    });
                }
                self.bump();
                u
            }
            Some(']') | Some(')') | Some(',') => {
                return Err(self.error_here("unbalanced delimiter"));
            }
            _ => self.atom()?,
        };
        self.skip_ws();
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let k = self.exponent()?;
            Ok(base.pow(k))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Word> {
        let rest = self.rest();
        if rest.starts_with("zeta") {
            self.pos += 4;
            return boundary_word(self.genus);
        }
        match self.peek() {
            Some('1') if !self.rest()[1..].starts_with(|c: char| c.is_ascii_digit()) => {
                self.bump();
                Ok(self.genus_one())
            }
            Some(c @ ('x' | 'y')) => {
                let start = self.pos;
                self.bump();
                let digits = self.digits();
                if digits.is_empty() {
                    return Err(Error::parse(start, c.to_string(), "generator needs an index"));
                }
                let name = format!("{c}{digits}");
                let index: u32 = digits
                    .parse()
                    .map_err(|_| Error::parse(start, name.clone(), "index out of range"))?;
                if index == 0 || index > self.genus {
                    return Err(Error::parse(
                        start,
                        name,
                        format!("generator index must be in 1..={}", self.genus),
                    ));
                }
                let letter = if c == 'x' {
                    Letter::x(index)
                } else {
                    Letter::y(index)
                };
                Word::from_letters(self.genus, [letter])
            }
            _ => Err(self.error_here("unknown token")),
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        s
    }

    fn exponent(&mut self) -> Result<i64> {
        let start = self.pos;
        let mut neg = false;
        match self.peek() {
            Some('-') => {
                neg = true;
                self.bump();
            }
            Some('+') => {
                self.bump();
            }
            _ => {}
        }
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error_here("expected an integer exponent"));
        }
        let text = &self.src[start..self.pos];
        let k: i64 = digits
            .parse()
            .map_err(|_| Error::parse(start, text, "exponent out of range"))?;
        if k == 0 {
            return Err(Error::parse(start, text, "exponent must be nonzero"));
        }
        Ok(if neg { -k } else { k })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letters(text: &str, genus: u32) -> Vec<Letter> {
        parse_word(text, genus).unwrap().letters().to_vec()
    }

    #[test]
    fn worked_example_word() {
        assert_eq!(
            letters("x1 x2 y2 x2^-1", 2),
            vec![Letter::x(1), Letter::x(2), Letter::y(2), Letter::x(2).inv()]
        );
    }

    #[test]
    fn reduction_and_identity() {
        assert!(parse_word("x1 x1^-1", 2).unwrap().is_identity());
        assert!(parse_word("1", 3).unwrap().is_identity());
        assert_eq!(letters("1 x1 1", 1), vec![Letter::x(1)]);
    }

    #[test]
    fn zeta_expands_to_boundary() {
        assert_eq!(
            letters("zeta", 1),
            vec![Letter::x(1), Letter::y(1), Letter::x(1).inv(), Letter::y(1).inv()]
        );
        assert_eq!(parse_word("zeta", 3).unwrap(), boundary_word(3).unwrap());
    }

    #[test]
    fn brackets_parens_and_powers() {
        assert_eq!(parse_word("[x1,y1]", 1).unwrap(), boundary_word(1).unwrap());
        assert_eq!(
            parse_word("(x1 y1)^-2", 1).unwrap().to_string(),
            "y1^-1 x1^-1 y1^-1 x1^-1"
        );
        assert_eq!(parse_word("x2^-3", 2).unwrap().to_string(), "x2^-3");
        assert_eq!(parse_word("x1*y1 * x1^+2", 1).unwrap().to_string(), "x1 y1 x1^2");
        assert_eq!(parse_word("x1x2", 2).unwrap().to_string(), "x1 x2");
        assert_eq!(
            parse_word("x2^-1 [y1,zeta] zeta", 2).unwrap(),
            parse_word("x2^-1 (y1 zeta y1^-1 zeta^-1) zeta", 2).unwrap()
        );
        assert!(!parse_word("[x1, [y1, x2]]^2", 2).unwrap().is_empty());
    }

    fn parse_err(text: &str, genus: u32) -> (String, String) {
        match parse_word(text, genus) {
            Err(Error::Parse { token, message, .. }) => (token, message),
            other => panic!("expected parse error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn errors_name_the_offending_token() {
        assert_eq!(parse_err("x1 z3", 2).0, "z3");
        assert_eq!(parse_err("x0", 2).0, "x0");
        assert_eq!(parse_err("y3", 2).0, "y3");
        assert!(parse_err("x1^0", 2).1.contains("nonzero"));
        assert!(parse_err("[x1, y1", 1).1.contains("unbalanced"));
        assert!(parse_err("(x1", 1).1.contains("unbalanced"));
        assert!(parse_err("x1)", 1).1.contains("unexpected") || parse_err("x1)", 1).1.contains("unbalanced"));
        assert!(parse_err("", 1).1.contains("empty"));
        assert!(parse_err("   ", 1).1.contains("empty"));
        assert!(parse_err("[x1 y1]", 1).1.contains("`,`"));
        assert!(parse_err("x1^", 1).1.contains("exponent"));
        assert!(parse_err("x", 1).1.contains("index"));
        assert_eq!(parse_word("x1", 0), Err(Error::InvalidGenus));
    }
}
