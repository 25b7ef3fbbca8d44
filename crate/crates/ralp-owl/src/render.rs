//! Rendering class expressions back to surface syntax; the inverse of
//! parsing up to whitespace.

use crate::ast::{ClassExpression, Role};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Syntax {
    Manchester,
    Dl,
}

impl std::str::FromStr for Syntax {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "manchester" | "m" => Ok(Syntax::Manchester),
            "dl" => Ok(Syntax::Dl),
            other => Err(format!("unknown syntax `{other}`")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NamespaceMode {
    With,
    Without,
}

pub const DEFAULT_PREFIX: &str = "ns:";

/// Operator strength used to decide parenthesization. Binary operators
/// are left-associative, so a right child at the same level needs
/// parentheses while a left child does not.
fn level(e: &ClassExpression) -> u8 {
    match e {
        ClassExpression::Or(_, _) => 1,
        ClassExpression::And(_, _) => 2,
        ClassExpression::Not(_)
        | ClassExpression::Exists(_, _)
        | ClassExpression::Forall(_, _)
        | ClassExpression::MinCard(_, _, _)
        | ClassExpression::MaxCard(_, _, _) => 3,
        ClassExpression::Atomic(_) | ClassExpression::OneOf(_) => 4,
    }
}

pub fn render(e: &ClassExpression, syntax: Syntax, namespace: NamespaceMode) -> String {
    render_with_prefix(e, syntax, namespace, DEFAULT_PREFIX)
}

pub fn render_with_prefix(
    e: &ClassExpression,
    syntax: Syntax,
    namespace: NamespaceMode,
    prefix: &str,
) -> String {
    let prefix = match namespace {
        NamespaceMode::With => prefix,
        NamespaceMode::Without => "",
    };
    render_at(e, syntax, prefix, 1)
}

fn render_at(e: &ClassExpression, syntax: Syntax, prefix: &str, min_level: u8) -> String {
    let body = match e {
        ClassExpression::Atomic(name) => format!("{prefix}{name}"),
        ClassExpression::OneOf(names) => {
            let listed: Vec<String> = names.iter().map(|n| format!("{prefix}{n}")).collect();
            format!("{{{}}}", listed.join(", "))
        }
        ClassExpression::Not(inner) => {
            let child = render_at(inner, syntax, prefix, 3);
            match syntax {
                Syntax::Manchester => format!("not {child}"),
                Syntax::Dl => format!("\u{00ac}{child}"),
            }
        }
        ClassExpression::And(l, r) => {
            let left = render_at(l, syntax, prefix, 2);
            let right = render_at(r, syntax, prefix, 3);
            match syntax {
                Syntax::Manchester => format!("{left} and {right}"),
                Syntax::Dl => format!("{left} \u{2293} {right}"),
            }
        }
        ClassExpression::Or(l, r) => {
            let left = render_at(l, syntax, prefix, 1);
            let right = render_at(r, syntax, prefix, 2);
            match syntax {
                Syntax::Manchester => format!("{left} or {right}"),
                Syntax::Dl => format!("{left} \u{2294} {right}"),
            }
        }
        ClassExpression::Exists(role, filler) => {
            let filler = render_at(filler, syntax, prefix, 3);
            match syntax {
                Syntax::Manchester => {
                    format!("{} some {filler}", role_manchester(role, prefix))
                }
                Syntax::Dl => format!("\u{2203}{}.{filler}", role_dl(role, prefix)),
            }
        }
        ClassExpression::Forall(role, filler) => {
            let filler = render_at(filler, syntax, prefix, 3);
            match syntax {
                Syntax::Manchester => {
                    format!("{} only {filler}", role_manchester(role, prefix))
                }
                Syntax::Dl => format!("\u{2200}{}.{filler}", role_dl(role, prefix)),
            }
        }
        ClassExpression::MinCard(n, role, filler) => {
            let filler = render_at(filler, syntax, prefix, 3);
            match syntax {
                Syntax::Manchester => {
                    format!("{} min {n} {filler}", role_manchester(role, prefix))
                }
                Syntax::Dl => format!("\u{2265} {n} {}.{filler}", role_dl(role, prefix)),
            }
        }
        ClassExpression::MaxCard(n, role, filler) => {
            let filler = render_at(filler, syntax, prefix, 3);
            match syntax {
                Syntax::Manchester => {
                    format!("{} max {n} {filler}", role_manchester(role, prefix))
                }
                Syntax::Dl => format!("\u{2264} {n} {}.{filler}", role_dl(role, prefix)),
            }
        }
    };
    if level(e) < min_level {
        format!("({body})")
    } else {
        body
    }
}

fn role_manchester(role: &Role, prefix: &str) -> String {
    if role.inverted {
        format!("inverse {prefix}{}", role.name)
    } else {
        format!("{prefix}{}", role.name)
    }
}

fn role_dl(role: &Role, prefix: &str) -> String {
    if role.inverted {
        format!("{prefix}{}\u{207b}", role.name)
    } else {
        format!("{prefix}{}", role.name)
    }
}

/// Parse a class expression in the given syntax.
pub fn parse_class_expression(
    text: &str,
    syntax: Syntax,
) -> Result<ClassExpression, crate::SyntaxError> {
    match syntax {
        Syntax::Manchester => crate::manchester::parse(text),
        Syntax::Dl => crate::dl::parse(text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::ClassExpression as Ce;

    #[test]
    fn atomic_renders_bare() {
        assert_eq!(
            render(&Ce::atomic("Female"), Syntax::Dl, NamespaceMode::Without),
            "Female"
        );
    }

    #[test]
    fn namespace_mode_prefixes_names() {
        let e = Ce::exists(Role::named("hasChild"), Ce::atomic("Female"));
        assert_eq!(
            render(&e, Syntax::Manchester, NamespaceMode::With),
            "ns:hasChild some ns:Female"
        );
        assert_eq!(
            render(&e, Syntax::Dl, NamespaceMode::With),
            "\u{2203}ns:hasChild.ns:Female"
        );
    }

    #[test]
    fn negated_disjunction_keeps_parentheses() {
        let e = Ce::negation(Ce::disjunction(Ce::atomic("A"), Ce::atomic("B")));
        assert_eq!(
            render(&e, Syntax::Manchester, NamespaceMode::Without),
            "not (A or B)"
        );
        assert_eq!(
            render(&e, Syntax::Dl, NamespaceMode::Without),
            "\u{00ac}(A \u{2294} B)"
        );
    }

    #[test]
    fn right_associative_child_is_parenthesized() {
        let e = Ce::conjunction(
            Ce::atomic("A"),
            Ce::conjunction(Ce::atomic("B"), Ce::atomic("C")),
        );
        assert_eq!(
            render(&e, Syntax::Manchester, NamespaceMode::Without),
            "A and (B and C)"
        );
        let flat = Ce::conjunction(
            Ce::conjunction(Ce::atomic("A"), Ce::atomic("B")),
            Ce::atomic("C"),
        );
        assert_eq!(
            render(&flat, Syntax::Manchester, NamespaceMode::Without),
            "A and B and C"
        );
    }
}
