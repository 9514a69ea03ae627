//! Text syntax for terms.
//!
//! ```text
//! term    := factor+
//! factor  := atom ( "'" | "^" int )*
//! atom    := var | "(" term ")" | family
//! var     := "x" int ( "_" int )*
//! family  := "u[" n "," k "," m "]" | "v[" n "," m "," h "]" | "w[" n "," h "]"
//! ```
//!
//! Juxtaposition is multiplication, `'` is the involution and `^k` repeats.
//! Whitespace and `·` between factors are ignored.

use super::{check_length, u_word, v_word, w_word, Letter, Term, TermError, Variable, DEFAULT_LENGTH_BUDGET};

pub fn parse_term(text: &str) -> Result<Term, TermError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let letters = p.term()?;
    p.skip_space();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected {:?}", p.chars[p.pos])));
    }
    Term::new(letters)
}

pub fn format_term(term: &Term) -> String {
    term.to_string()
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> TermError {
        TermError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_space(&mut self) {
        while self.pos < self.chars.len() && (self.chars[self.pos].is_whitespace() || self.chars[self.pos] == '·') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_space();
        self.chars.get(self.pos).copied()
    }

    fn term(&mut self) -> Result<Vec<Letter>, TermError> {
        let mut letters = Vec::new();
        while let Some(c) = self.peek() {
            if c == ')' {
                break;
            }
            letters.extend(self.factor()?);
            check_length(letters.len() as u128, DEFAULT_LENGTH_BUDGET)?;
        }
        if letters.is_empty() {
            return Err(self.error("expected a term"));
        }
        Ok(letters)
    }

    fn factor(&mut self) -> Result<Vec<Letter>, TermError> {
        let mut letters = self.atom()?;
        loop {
            match self.chars.get(self.pos) {
                Some('\'') => {
                    self.pos += 1;
                    letters = letters.iter().rev().map(Letter::flip).collect();
                }
                Some('^') => {
                    self.pos += 1;
                    let k = self.int()?;
                    if k == 0 {
                        return Err(self.error("exponent must be positive"));
                    }
                    check_length(letters.len() as u128 * k as u128, DEFAULT_LENGTH_BUDGET)?;
                    letters = std::iter::repeat_n(letters, k as usize).flatten().collect();
                }
                _ => break,
            }
        }
        Ok(letters)
    }

    fn atom(&mut self) -> Result<Vec<Letter>, TermError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.term()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('x') => {
                self.pos += 1;
                let mut indices = vec![self.index()?];
                while self.chars.get(self.pos) == Some(&'_') {
                    self.pos += 1;
                    indices.push(self.index()?);
                }
                Ok(vec![Letter::plain(Variable(indices))])
            }
            Some(c @ ('u' | 'v' | 'w')) => {
                let start = self.pos;
                self.pos += 1;
                let args = self.macro_args()?;
                let at = |e: TermError| match e {
                    TermError::BadParameter(m) => TermError::Syntax {
                        position: start,
                        message: m,
                    },
                    other => other,
                };
                let term = match (c, args.as_slice()) {
                    ('u', &[n, k, m]) => u_word(n as usize, k as usize, m).map_err(at)?,
                    ('v', &[n, m, h]) => v_word(n as usize, m, h as usize)
                        .and_then(|b| b.flatten())
                        .map_err(at)?,
                    ('w', &[n, h]) => w_word(n as usize, h as usize).map_err(at)?,
                    _ => {
                        return Err(TermError::Syntax {
                            position: start,
                            message: format!("wrong number of arguments for {c}[…]"),
                        })
                    }
                };
                Ok(term.letters().to_vec())
            }
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn macro_args(&mut self) -> Result<Vec<u64>, TermError> {
        if self.chars.get(self.pos) != Some(&'[') {
            return Err(self.error("expected '['"));
        }
        self.pos += 1;
        let mut args = Vec::new();
        loop {
            self.skip_space();
            args.push(self.int()?);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(args);
                }
                _ => return Err(self.error("expected ',' or ']'")),
            }
        }
    }

    fn int(&mut self) -> Result<u64, TermError> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| TermError::Syntax {
            position: start,
            message: "number too large".into(),
        })
    }

    fn index(&mut self) -> Result<u32, TermError> {
        let start = self.pos;
        let i = self.int()?;
        if i == 0 || i > u32::MAX as u64 {
            return Err(TermError::Syntax {
                position: start,
                message: "variable indices start at 1".into(),
            });
        }
        Ok(i as u32)
    }
}
