use std::fmt;

use super::{Formula, Term};

/// A parse failure, pointing at the offending token.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{found} at position {position}: expected {expected}")]
pub struct SyntaxError {
    /// Character offset (0-based) of the offending token.
    pub position: usize,
    /// Description of what was found, e.g. `unexpected ')'` or `unexpected end of input`.
    pub found: String,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Not,
    And,
    Or,
    Xor,
    Implies,
    Iff,
    Forall,
    Exists,
    Top,
    Bottom,
    Equals,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier '{s}'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::Not => f.write_str("'¬'"),
            Tok::And => f.write_str("'∧'"),
            Tok::Or => f.write_str("'∨'"),
            Tok::Xor => f.write_str("'⊕'"),
            Tok::Implies => f.write_str("'→'"),
            Tok::Iff => f.write_str("'↔'"),
            Tok::Forall => f.write_str("'∀'"),
            Tok::Exists => f.write_str("'∃'"),
            Tok::Top => f.write_str("'⊤'"),
            Tok::Bottom => f.write_str("'⊥'"),
            Tok::Equals => f.write_str("'='"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let starts_with = |i: usize, s: &str| {
        s.chars()
            .enumerate()
            .all(|(k, c)| chars.get(i + k) == Some(&c))
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let (tok, len) = match c {
            '(' if starts_with(i, "(+)") => (Tok::Xor, 3),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            '¬' | '~' => (Tok::Not, 1),
            '∧' | '&' => (Tok::And, 1),
            '∨' | '|' => (Tok::Or, 1),
            '⊕' => (Tok::Xor, 1),
            '→' => (Tok::Implies, 1),
            '-' if starts_with(i, "->") => (Tok::Implies, 2),
            '↔' => (Tok::Iff, 1),
            '<' if starts_with(i, "<->") => (Tok::Iff, 3),
            '∀' => (Tok::Forall, 1),
            '∃' => (Tok::Exists, 1),
            '⊤' => (Tok::Top, 1),
            '⊥' => (Tok::Bottom, 1),
            '=' => (Tok::Equals, 1),
            '\\' => {
                let word: String = chars[i + 1..]
                    .iter()
                    .take_while(|c| c.is_ascii_alphabetic())
                    .collect();
                let tok = match word.as_str() {
                    "A" => Tok::Forall,
                    "E" => Tok::Exists,
                    "top" => Tok::Top,
                    "bot" => Tok::Bottom,
                    _ => {
                        return Err(SyntaxError {
                            position: i,
                            found: format!("unknown command '\\{word}'"),
                            expected: "one of \\A, \\E, \\top, \\bot".into(),
                        })
                    }
                };
                (tok, 1 + word.chars().count())
            }
            c if c.is_ascii_alphabetic() => {
                let word: String = chars[i..]
                    .iter()
                    .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                    .collect();
                let len = word.chars().count();
                (Tok::Ident(word), len)
            }
            other => {
                return Err(SyntaxError {
                    position: i,
                    found: format!("unexpected character '{other}'"),
                    expected: "a formula symbol, identifier or parenthesis".into(),
                })
            }
        };
        toks.push((tok, i));
        i += len;
    }
    toks.push((Tok::End, chars.len()));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    bound: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> SyntaxError {
        let (tok, position) = &self.toks[self.pos];
        let found = match tok {
            Tok::End => "unexpected end of input".to_string(),
            t => format!("unexpected {t}"),
        };
        SyntaxError {
            position: *position,
            found,
            expected: expected.to_string(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), SyntaxError> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn iff(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.implies()?;
        while *self.peek() == Tok::Iff {
            self.next();
            let rhs = self.implies()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.xor()?;
        if *self.peek() == Tok::Implies {
            self.next();
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn xor(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.or()?;
        while *self.peek() == Tok::Xor {
            self.next();
            let rhs = self.or()?;
            lhs = Formula::xor(lhs, rhs);
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, SyntaxError> {
        let first = self.and()?;
        if *self.peek() != Tok::Or {
            return Ok(first);
        }
        let mut items = vec![first];
        while *self.peek() == Tok::Or {
            self.next();
            items.push(self.and()?);
        }
        Ok(Formula::Or(items))
    }

    fn and(&mut self) -> Result<Formula, SyntaxError> {
        let first = self.unary()?;
        if *self.peek() != Tok::And {
            return Ok(first);
        }
        let mut items = vec![first];
        while *self.peek() == Tok::And {
            self.next();
            items.push(self.unary()?);
        }
        Ok(Formula::And(items))
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Tok::Not => {
                self.next();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => self.quantified(),
            _ => self.primary(),
        }
    }

    fn quantified(&mut self) -> Result<Formula, SyntaxError> {
        let is_forall = self.next() == Tok::Forall;
        let var = match self.next() {
            Tok::Ident(v) => v,
            _ => {
                self.pos -= 1;
                return Err(self.error("a variable name after the quantifier"));
            }
        };
        self.bound.push(var.clone());
        let body = match self.peek() {
            Tok::LParen => {
                self.next();
                let b = self.iff()?;
                self.expect(Tok::RParen, "')' closing the quantifier body")?;
                b
            }
            Tok::Forall | Tok::Exists => self.quantified()?,
            _ => return Err(self.error("'(' opening the quantifier body")),
        };
        self.bound.pop();
        Ok(if is_forall {
            Formula::forall(var, body)
        } else {
            Formula::exists(var, body)
        })
    }

    fn primary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek().clone() {
            Tok::Top => {
                self.next();
                Ok(Formula::Top)
            }
            Tok::Bottom => {
                self.next();
                Ok(Formula::Bottom)
            }
            Tok::LParen => {
                self.next();
                let f = self.iff()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            Tok::Ident(name) => {
                self.next();
                let args = if *self.peek() == Tok::LParen {
                    Some(self.arguments()?)
                } else {
                    None
                };
                if *self.peek() == Tok::Equals {
                    self.next();
                    let lhs = self.make_term(name, args);
                    let rhs = self.term()?;
                    return Ok(Formula::Eq(lhs, rhs));
                }
                Ok(match args {
                    Some(args) => Formula::Pred(name, args),
                    None => Formula::Atom(name),
                })
            }
            _ => Err(self.error("a formula")),
        }
    }

    fn make_term(&self, name: String, args: Option<Vec<Term>>) -> Term {
        match args {
            Some(args) => Term::App(name, args),
            None if self.bound.contains(&name) => Term::Var(name),
            None => Term::Const(name),
        }
    }

    fn arguments(&mut self) -> Result<Vec<Term>, SyntaxError> {
        self.expect(Tok::LParen, "'('")?;
        let mut args = vec![self.term()?];
        while *self.peek() == Tok::Comma {
            self.next();
            args.push(self.term()?);
        }
        self.expect(Tok::RParen, "',' or ')' in the argument list")?;
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.next();
                let args = if *self.peek() == Tok::LParen {
                    Some(self.arguments()?)
                } else {
                    None
                };
                Ok(self.make_term(name, args))
            }
            _ => Err(self.error("a term (a name or a function application)")),
        }
    }
}

/// Parse a statement in the canonical syntax.
///
/// ```
/// use aris_core::formula::{parse, Formula};
/// assert_eq!(parse("P -> Q").unwrap(), Formula::implies(Formula::atom("P"), Formula::atom("Q")));
/// ```
pub fn parse(text: &str) -> Result<Formula, SyntaxError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        bound: Vec::new(),
    };
    if *p.peek() == Tok::End {
        return Err(p.error("a formula (the statement is empty)"));
    }
    let f = p.iff()?;
    if *p.peek() != Tok::End {
        return Err(p.error("an operator or end of input"));
    }
    Ok(f)
}

/// Parse a standalone term. All bare names are constants.
pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        bound: Vec::new(),
    };
    let t = p.term()?;
    if *p.peek() != Tok::End {
        return Err(p.error("end of input after the term"));
    }
    Ok(t)
}
