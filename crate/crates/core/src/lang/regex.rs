use super::Alphabet;
use crate::error::Error;

/// Regular expression AST.
///
/// Grammar: `+` is union, juxtaposition is concatenation, `*` is Kleene
/// star, `(` `)` group, `1` is the empty word and `0` the empty
/// language. Precedence: star > concatenation > union. Whitespace is
/// ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regex {
    Empty,
    Eps,
    Letter(u8),
    Union(Box<Regex>, Box<Regex>),
    Concat(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Regex, Error> {
        let mut p = Parser {
            chars: text.char_indices().collect(),
            pos: 0,
            alphabet: alphabet.clone(),
        };
        p.skip_ws();
        let ast = p.union()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(ast)
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    alphabet: Alphabet,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or_else(
            || self.chars.last().map_or(0, |&(o, c)| o + c.len_utf8()),
            |&(o, _)| o,
        )
    }

    fn err(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn union(&mut self) -> Result<Regex, Error> {
        let mut lhs = self.concat()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('+') {
                self.pos += 1;
                self.skip_ws();
                let rhs = self.concat()?;
                lhs = Regex::Union(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn concat(&mut self) -> Result<Regex, Error> {
        let mut lhs = self.starred()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c == '(' || c == '0' || c == '1' || c.is_ascii_lowercase() => {
                    let rhs = self.starred()?;
                    lhs = Regex::Concat(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn starred(&mut self) -> Result<Regex, Error> {
        let mut e = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            e = Regex::Star(Box::new(e));
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Regex, Error> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                self.skip_ws();
                let e = self.union()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('1') => {
                self.pos += 1;
                Ok(Regex::Eps)
            }
            Some('0') => {
                self.pos += 1;
                Ok(Regex::Empty)
            }
            Some(c) if c.is_ascii_lowercase() => {
                let i = self
                    .alphabet
                    .index(c)
                    .ok_or(Error::UnknownLetter { letter: c })?;
                self.pos += 1;
                Ok(Regex::Letter(i))
            }
            _ => Err(self.err("expected '(', letter, '0' or '1'")),
        }
    }
}
