//! Description logic syntax parser.
//!
//! Grammar (¬ > ⊓ > ⊔; quantifiers bind tighter than the connectives):
//!
//! ```text
//! expr     := and_expr ("⊔" and_expr)*
//! and_expr := unary ("⊓" unary)*
//! unary    := "¬" unary
//!           | "∃" role "." unary | "∀" role "." unary
//!           | "≥" NUMBER role "." unary | "≤" NUMBER role "." unary
//!           | primary
//! role     := NAME "⁻"?
//! primary  := "(" expr ")" | "{" NAME ("," NAME)* "}" | NAME
//! ```
//!
//! `^-` is accepted as an ASCII spelling of the inverse marker `⁻`.

use crate::ast::{ClassExpression, Role};
use crate::strip_prefix;
use crate::SyntaxError;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Name(String),
    Number(u32),
    Not,
    And,
    Or,
    Exists,
    Forall,
    Geq,
    Leq,
    Dot,
    InverseMark,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Name(n) => format!("name `{n}`"),
            Token::Number(n) => format!("number `{n}`"),
            Token::Not => "`\u{00ac}`".into(),
            Token::And => "`\u{2293}`".into(),
            Token::Or => "`\u{2294}`".into(),
            Token::Exists => "`\u{2203}`".into(),
            Token::Forall => "`\u{2200}`".into(),
            Token::Geq => "`\u{2265}`".into(),
            Token::Leq => "`\u{2264}`".into(),
            Token::Dot => "`.`".into(),
            Token::InverseMark => "`\u{207b}`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::LBrace => "`{`".into(),
            Token::RBrace => "`}`".into(),
            Token::Comma => "`,`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, SyntaxError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let simple = match c {
            '\u{00ac}' | '!' => Some(Token::Not),
            '\u{2293}' => Some(Token::And),
            '\u{2294}' => Some(Token::Or),
            '\u{2203}' => Some(Token::Exists),
            '\u{2200}' => Some(Token::Forall),
            '\u{2265}' => Some(Token::Geq),
            '\u{2264}' => Some(Token::Leq),
            '\u{207b}' => Some(Token::InverseMark),
            '.' => Some(Token::Dot),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            '{' => Some(Token::LBrace),
            '}' => Some(Token::RBrace),
            ',' => Some(Token::Comma),
            _ => None,
        };
        if let Some(token) = simple {
            tokens.push((pos, token));
            i += 1;
            continue;
        }
        match c {
            c if c.is_whitespace() => i += 1,
            '^' if matches!(chars.get(i + 1), Some((_, '-'))) => {
                tokens.push((pos, Token::InverseMark));
                i += 2;
            }
            c if c.is_ascii_digit() => {
                let mut value = String::new();
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    value.push(chars[i].1);
                    i += 1;
                }
                let n = value.parse::<u32>().map_err(|_| SyntaxError {
                    position: pos,
                    expected: vec!["cardinality".into()],
                    found: value.clone(),
                })?;
                tokens.push((pos, Token::Number(n)));
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut word = String::new();
                while i < chars.len() {
                    let ch = chars[i].1;
                    if ch.is_alphanumeric() || ch == '_' || ch == ':' {
                        word.push(ch);
                        i += 1;
                    } else {
                        break;
                    }
                }
                tokens.push((pos, Token::Name(strip_prefix(&word))));
            }
            other => {
                return Err(SyntaxError {
                    position: pos,
                    expected: vec!["DL operator, name or punctuation".into()],
                    found: other.to_string(),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    cursor: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).map(|(_, t)| t.clone());
        self.cursor += 1;
        t
    }

    fn error(&self, expected: &[&str]) -> SyntaxError {
        SyntaxError {
            position: self.position(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self
                .peek()
                .map(Token::describe)
                .unwrap_or_else(|| "end of input".into()),
        }
    }

    fn expect(&mut self, token: Token, expected: &str) -> Result<(), SyntaxError> {
        if self.peek() == Some(&token) {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&[expected]))
        }
    }

    fn expr(&mut self) -> Result<ClassExpression, SyntaxError> {
        let mut left = self.and_expr()?;
        while self.peek() == Some(&Token::Or) {
            self.advance();
            let right = self.and_expr()?;
            left = ClassExpression::disjunction(left, right);
        }
        Ok(left)
    }

    fn and_expr(&mut self) -> Result<ClassExpression, SyntaxError> {
        let mut left = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.advance();
            let right = self.unary()?;
            left = ClassExpression::conjunction(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<ClassExpression, SyntaxError> {
        match self.peek() {
            Some(Token::Not) => {
                self.advance();
                Ok(ClassExpression::negation(self.unary()?))
            }
            Some(Token::Exists) => {
                self.advance();
                let role = self.role()?;
                self.expect(Token::Dot, "`.`")?;
                Ok(ClassExpression::exists(role, self.unary()?))
            }
            Some(Token::Forall) => {
                self.advance();
                let role = self.role()?;
                self.expect(Token::Dot, "`.`")?;
                Ok(ClassExpression::forall(role, self.unary()?))
            }
            Some(Token::Geq) => {
                self.advance();
                let n = self.cardinality()?;
                let role = self.role()?;
                self.expect(Token::Dot, "`.`")?;
                Ok(ClassExpression::at_least(n, role, self.unary()?))
            }
            Some(Token::Leq) => {
                self.advance();
                let n = self.cardinality()?;
                let role = self.role()?;
                self.expect(Token::Dot, "`.`")?;
                Ok(ClassExpression::at_most(n, role, self.unary()?))
            }
            _ => self.primary(),
        }
    }

    fn cardinality(&mut self) -> Result<u32, SyntaxError> {
        match self.peek() {
            Some(Token::Number(n)) => {
                let n = *n;
                self.advance();
                Ok(n)
            }
            _ => Err(self.error(&["cardinality number"])),
        }
    }

    fn role(&mut self) -> Result<Role, SyntaxError> {
        let name = match self.advance() {
            Some(Token::Name(n)) => n,
            _ => {
                self.cursor = self.cursor.saturating_sub(1);
                return Err(self.error(&["role name"]));
            }
        };
        if self.peek() == Some(&Token::InverseMark) {
            self.advance();
            Ok(Role::inverse(name))
        } else {
            Ok(Role::named(name))
        }
    }

    fn primary(&mut self) -> Result<ClassExpression, SyntaxError> {
        match self.peek() {
            Some(Token::LParen) => {
                self.advance();
                let inner = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Token::LBrace) => {
                self.advance();
                let mut names = Vec::new();
                loop {
                    match self.advance() {
                        Some(Token::Name(n)) => names.push(n),
                        _ => {
                            self.cursor = self.cursor.saturating_sub(1);
                            return Err(self.error(&["individual name"]));
                        }
                    }
                    match self.peek() {
                        Some(Token::Comma) => {
                            self.advance();
                        }
                        Some(Token::RBrace) => {
                            self.advance();
                            break;
                        }
                        _ => return Err(self.error(&["`,`", "`}`"])),
                    }
                }
                Ok(ClassExpression::one_of(names))
            }
            Some(Token::Name(_)) => {
                let name = match self.advance() {
                    Some(Token::Name(n)) => n,
                    _ => unreachable!(),
                };
                Ok(ClassExpression::atomic(name))
            }
            _ => Err(self.error(&["`(`", "`{`", "class name"])),
        }
    }
}

pub fn parse(text: &str) -> Result<ClassExpression, SyntaxError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        cursor: 0,
        end: text.len(),
    };
    let expr = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parser.error(&["end of input"]));
    }
    Ok(expr)
}
