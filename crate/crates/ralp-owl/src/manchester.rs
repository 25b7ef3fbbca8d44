//! Manchester syntax parser.
//!
//! Grammar (precedence: `not` > `and` > `or`; restrictions bind tighter
//! than the binary connectives; parentheses override):
//!
//! ```text
//! expr        := and_expr ("or" and_expr)*
//! and_expr    := unary ("and" unary)*
//! unary       := "not" unary | restriction
//! restriction := role "some" unary | role "only" unary
//!              | role "min" NUMBER unary | role "max" NUMBER unary
//!              | primary
//! role        := "inverse" NAME | NAME
//! primary     := "(" expr ")" | "{" NAME ("," NAME)* "}" | NAME
//! ```
//!
//! Namespace prefixes (`ns:hasChild`) are stripped while parsing.

use crate::ast::{ClassExpression, Role};
use crate::strip_prefix;
use crate::SyntaxError;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Name(String),
    Number(u32),
    KwNot,
    KwAnd,
    KwOr,
    KwSome,
    KwOnly,
    KwMin,
    KwMax,
    KwInverse,
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
            Token::KwNot => "`not`".into(),
            Token::KwAnd => "`and`".into(),
            Token::KwOr => "`or`".into(),
            Token::KwSome => "`some`".into(),
            Token::KwOnly => "`only`".into(),
            Token::KwMin => "`min`".into(),
            Token::KwMax => "`max`".into(),
            Token::KwInverse => "`inverse`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::LBrace => "`{`".into(),
            Token::RBrace => "`}`".into(),
            Token::Comma => "`,`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, SyntaxError> {
    let mut tokens = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '(' => {
                tokens.push((pos, Token::LParen));
                i += 1;
            }
            ')' => {
                tokens.push((pos, Token::RParen));
                i += 1;
            }
            '{' => {
                tokens.push((pos, Token::LBrace));
                i += 1;
            }
            '}' => {
                tokens.push((pos, Token::RBrace));
                i += 1;
            }
            ',' => {
                tokens.push((pos, Token::Comma));
                i += 1;
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
                let token = match word.as_str() {
                    "not" => Token::KwNot,
                    "and" => Token::KwAnd,
                    "or" => Token::KwOr,
                    "some" => Token::KwSome,
                    "only" => Token::KwOnly,
                    "min" => Token::KwMin,
                    "max" => Token::KwMax,
                    "inverse" => Token::KwInverse,
                    _ => Token::Name(strip_prefix(&word)),
                };
                tokens.push((pos, token));
            }
            other => {
                return Err(SyntaxError {
                    position: pos,
                    expected: vec!["name, keyword or punctuation".into()],
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

    fn peek2(&self) -> Option<&Token> {
        self.tokens.get(self.cursor + 1).map(|(_, t)| t)
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
        while self.peek() == Some(&Token::KwOr) {
            self.advance();
            let right = self.and_expr()?;
            left = ClassExpression::disjunction(left, right);
        }
        Ok(left)
    }

    fn and_expr(&mut self) -> Result<ClassExpression, SyntaxError> {
        let mut left = self.unary()?;
        while self.peek() == Some(&Token::KwAnd) {
            self.advance();
            let right = self.unary()?;
            left = ClassExpression::conjunction(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<ClassExpression, SyntaxError> {
        match self.peek() {
            Some(Token::KwNot) => {
                self.advance();
                Ok(ClassExpression::negation(self.unary()?))
            }
            Some(Token::KwInverse) => {
                self.advance();
                let name = match self.advance() {
                    Some(Token::Name(n)) => n,
                    _ => return Err(self.error(&["role name after `inverse`"])),
                };
                self.restriction(Role::inverse(name))
            }
            Some(Token::Name(_)) if self.next_is_quantifier() => {
                let name = match self.advance() {
                    Some(Token::Name(n)) => n,
                    _ => unreachable!("peeked a name"),
                };
                self.restriction(Role::named(name))
            }
            _ => self.primary(),
        }
    }

    fn next_is_quantifier(&self) -> bool {
        matches!(
            self.peek2(),
            Some(Token::KwSome) | Some(Token::KwOnly) | Some(Token::KwMin) | Some(Token::KwMax)
        )
    }

    fn restriction(&mut self, role: Role) -> Result<ClassExpression, SyntaxError> {
        match self.advance() {
            Some(Token::KwSome) => Ok(ClassExpression::exists(role, self.unary()?)),
            Some(Token::KwOnly) => Ok(ClassExpression::forall(role, self.unary()?)),
            Some(Token::KwMin) => {
                let n = self.cardinality()?;
                Ok(ClassExpression::at_least(n, role, self.unary()?))
            }
            Some(Token::KwMax) => {
                let n = self.cardinality()?;
                Ok(ClassExpression::at_most(n, role, self.unary()?))
            }
            _ => {
                self.cursor = self.cursor.saturating_sub(1);
                Err(self.error(&["`some`", "`only`", "`min`", "`max`"]))
            }
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::ClassExpression as Ce;

    #[test]
    fn existential_restriction() {
        assert_eq!(
            parse("hasChild some Female").unwrap(),
            Ce::exists(Role::named("hasChild"), Ce::atomic("Female"))
        );
    }

    #[test]
    fn qualified_min_cardinality() {
        assert_eq!(
            parse("hasChild min 5 Female").unwrap(),
            Ce::at_least(5, Role::named("hasChild"), Ce::atomic("Female"))
        );
    }

    #[test]
    fn precedence_not_binds_tighter_than_or() {
        assert_eq!(
            parse("not (A or B)").unwrap(),
            Ce::negation(Ce::disjunction(Ce::atomic("A"), Ce::atomic("B")))
        );
        assert_eq!(
            parse("not A or B").unwrap(),
            Ce::disjunction(Ce::negation(Ce::atomic("A")), Ce::atomic("B"))
        );
    }

    #[test]
    fn quantifier_binds_tighter_than_and() {
        assert_eq!(
            parse("r some A and B").unwrap(),
            Ce::conjunction(
                Ce::exists(Role::named("r"), Ce::atomic("A")),
                Ce::atomic("B")
            )
        );
    }

    #[test]
    fn inverse_marks_the_role() {
        assert_eq!(
            parse("inverse hasChild some Father").unwrap(),
            Ce::exists(Role::inverse("hasChild"), Ce::atomic("Father"))
        );
    }

    #[test]
    fn nominals_and_prefixes() {
        assert_eq!(
            parse("{ns:anna, ns:markus}").unwrap(),
            Ce::one_of(["anna", "markus"])
        );
        assert_eq!(
            parse("ns:hasChild some ns:Female").unwrap(),
            Ce::exists(Role::named("hasChild"), Ce::atomic("Female"))
        );
    }

    #[test]
    fn syntax_errors_carry_position_and_expectations() {
        let err = parse("A and ").unwrap_err();
        assert_eq!(err.position, 6);
        assert!(!err.expected.is_empty());

        let err = parse("A B").unwrap_err();
        assert_eq!(err.position, 2);
        assert!(err.found.contains('B'));
    }
}
