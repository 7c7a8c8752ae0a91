//! Parsing of the surface syntax.
//!
//! Types:  `T ::= o | T -> T | (T)` with `->` right-associative.
//! Terms:  `e ::= \x:T. e | e e | x | (e)` with application by
//! juxtaposition, left-associative; a lambda body extends as far right as
//! possible. `λ` is accepted as a synonym for `\` on input.

use crate::surface::{Span, SurfaceTerm};
use crate::ty::Ty;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at {span}")]
pub struct SyntaxError {
    pub message: String,
    pub span: Span,
}

impl SyntaxError {
    fn new(message: impl Into<String>, span: Span) -> SyntaxError {
        SyntaxError {
            message: message.into(),
            span,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Backslash,
    Ident(String),
    Colon,
    Dot,
    Arrow,
    LParen,
    RParen,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() && c != 'λ' || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() && c != 'λ' || c == '_' || c == '\''
}

fn tokenize(src: &str) -> Result<Vec<(Token, Span)>, SyntaxError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '\\' | 'λ' => {
                chars.next();
                out.push((Token::Backslash, Span::new(start, start + c.len_utf8())));
            }
            ':' => {
                chars.next();
                out.push((Token::Colon, Span::new(start, start + 1)));
            }
            '.' => {
                chars.next();
                out.push((Token::Dot, Span::new(start, start + 1)));
            }
            '(' => {
                chars.next();
                out.push((Token::LParen, Span::new(start, start + 1)));
            }
            ')' => {
                chars.next();
                out.push((Token::RParen, Span::new(start, start + 1)));
            }
            '-' => {
                chars.next();
                match chars.peek() {
                    Some(&(_, '>')) => {
                        chars.next();
                        out.push((Token::Arrow, Span::new(start, start + 2)));
                    }
                    _ => {
                        return Err(SyntaxError::new(
                            "expected `>` after `-`",
                            Span::new(start, start + 1),
                        ))
                    }
                }
            }
            c if is_ident_start(c) => {
                let mut end = start;
                while let Some(&(i, c)) = chars.peek() {
                    if is_ident_continue(c) {
                        end = i + c.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((
                    Token::Ident(src[start..end].to_string()),
                    Span::new(start, end),
                ));
            }
            c => {
                return Err(SyntaxError::new(
                    format!("unexpected character `{c}`"),
                    Span::new(start, start + c.len_utf8()),
                ))
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, Span)>,
    pos: usize,
    eof: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Parser, SyntaxError> {
        Ok(Parser {
            tokens: tokenize(src)?,
            pos: 0,
            eof: src.len(),
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> Span {
        self.tokens
            .get(self.pos)
            .map(|(_, s)| *s)
            .unwrap_or_else(|| Span::new(self.eof, self.eof))
    }

    fn next(&mut self) -> Option<(Token, Span)> {
        let tok = self.tokens.get(self.pos).cloned();
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<Span, SyntaxError> {
        let span = self.here();
        match self.next() {
            Some((tok, span)) if tok == want => Ok(span),
            _ => Err(SyntaxError::new(format!("expected {what}"), span)),
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.tokens.len()
    }

    fn expect_end(&self) -> Result<(), SyntaxError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(SyntaxError::new("unexpected trailing input", self.here()))
        }
    }

    // ty := ty_atom ('->' ty)?
    fn ty(&mut self) -> Result<Ty, SyntaxError> {
        let lhs = self.ty_atom()?;
        if let Some(Token::Arrow) = self.peek() {
            self.next();
            let rhs = self.ty()?;
            Ok(Ty::arrow(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn ty_atom(&mut self) -> Result<Ty, SyntaxError> {
        let span = self.here();
        match self.next() {
            Some((Token::Ident(name), span)) => {
                if name == "o" {
                    Ok(Ty::Base)
                } else {
                    Err(SyntaxError::new(
                        format!("unknown type `{name}` (the only base type is `o`)"),
                        span,
                    ))
                }
            }
            Some((Token::LParen, _)) => {
                let inner = self.ty()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(SyntaxError::new("expected a type", span)),
        }
    }

    // term := lambda | app
    fn term(&mut self) -> Result<SurfaceTerm, SyntaxError> {
        if let Some(Token::Backslash) = self.peek() {
            self.lambda()
        } else {
            self.app()
        }
    }

    fn lambda(&mut self) -> Result<SurfaceTerm, SyntaxError> {
        let open = self.expect(Token::Backslash, "`\\`")?;
        let name_span = self.here();
        let name = match self.next() {
            Some((Token::Ident(name), _)) => name,
            _ => return Err(SyntaxError::new("expected a parameter name", name_span)),
        };
        self.expect(Token::Colon, "`:` after the parameter name")?;
        let ann = self.ty()?;
        self.expect(Token::Dot, "`.` after the parameter type")?;
        let body = self.term()?;
        let span = open.merge(body.span());
        Ok(SurfaceTerm::Lam {
            name,
            ann,
            body: Box::new(body),
            span,
        })
    }

    // app := atom+  (left-associative)
    fn app(&mut self) -> Result<SurfaceTerm, SyntaxError> {
        let mut acc = self.atom()?;
        while matches!(self.peek(), Some(Token::Ident(_)) | Some(Token::LParen)) {
            let arg = self.atom()?;
            let span = acc.span().merge(arg.span());
            acc = SurfaceTerm::App {
                fun: Box::new(acc),
                arg: Box::new(arg),
                span,
            };
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<SurfaceTerm, SyntaxError> {
        let span = self.here();
        match self.next() {
            Some((Token::Ident(name), span)) => Ok(SurfaceTerm::Var { name, span }),
            Some((Token::LParen, _)) => {
                let inner = self.term()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(SyntaxError::new("expected a term", span)),
        }
    }
}

pub fn parse_type(src: &str) -> Result<Ty, SyntaxError> {
    let mut p = Parser::new(src)?;
    let ty = p.ty()?;
    p.expect_end()?;
    Ok(ty)
}

pub fn parse_term(src: &str) -> Result<SurfaceTerm, SyntaxError> {
    let mut p = Parser::new(src)?;
    let term = p.term()?;
    p.expect_end()?;
    Ok(term)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::print::{surface_string, type_string};

    fn var(name: &str) -> SurfaceTerm {
        SurfaceTerm::Var {
            name: name.into(),
            span: Span::dummy(),
        }
    }

    fn lam(name: &str, ann: Ty, body: SurfaceTerm) -> SurfaceTerm {
        SurfaceTerm::Lam {
            name: name.into(),
            ann,
            body: Box::new(body),
            span: Span::dummy(),
        }
    }

    fn app(fun: SurfaceTerm, arg: SurfaceTerm) -> SurfaceTerm {
        SurfaceTerm::App {
            fun: Box::new(fun),
            arg: Box::new(arg),
            span: Span::dummy(),
        }
    }

    #[test]
    fn base_type() {
        assert_eq!(parse_type("o"), Ok(Ty::Base));
        assert_eq!(parse_type("  o  "), Ok(Ty::Base));
    }

    #[test]
    fn arrow_is_right_associative() {
        // Expected tree derived by hand from the right-associativity rule and
        // cross-checked below by a fully parenthesized round trip.
        let expected = Ty::arrow(Ty::Base, Ty::arrow(Ty::Base, Ty::Base));
        assert_eq!(parse_type("o -> o -> o"), Ok(expected.clone()));
        let reprinted = type_string(&expected, true);
        assert_eq!(reprinted, "(o -> (o -> o))");
        assert_eq!(parse_type(&reprinted), Ok(expected));
    }

    #[test]
    fn parenthesized_domain() {
        let expected = Ty::arrow(Ty::arrow(Ty::Base, Ty::Base), Ty::Base);
        assert_eq!(parse_type("(o -> o) -> o"), Ok(expected.clone()));
        let reprinted = type_string(&expected, true);
        assert_eq!(parse_type(&reprinted), Ok(expected));
    }

    #[test]
    fn type_errors_carry_positions() {
        let err = parse_type("o -> x").unwrap_err();
        assert_eq!(err.span, Span::new(5, 6));
        let err = parse_type("o -").unwrap_err();
        assert_eq!(err.span, Span::new(2, 3));
        assert!(parse_type("o o").is_err());
        assert!(parse_type("").is_err());
        assert!(parse_type("(o -> o").is_err());
    }

    #[test]
    fn lambda_term() {
        assert_eq!(parse_term("\\x:o. x"), Ok(lam("x", Ty::Base, var("x"))));
    }

    #[test]
    fn lambda_unicode_alias() {
        assert_eq!(parse_term("λx:o. x"), parse_term("\\x:o. x"));
    }

    #[test]
    fn application_is_left_associative() {
        assert_eq!(
            parse_term("f x y"),
            Ok(app(app(var("f"), var("x")), var("y")))
        );
    }

    #[test]
    fn lambda_body_extends_right() {
        // \f:o->o. \x:o. f x  ==  \f:o->o. (\x:o. (f x))
        let expected = lam(
            "f",
            Ty::arrow(Ty::Base, Ty::Base),
            lam("x", Ty::Base, app(var("f"), var("x"))),
        );
        assert_eq!(parse_term("\\f:o->o. \\x:o. f x"), Ok(expected.clone()));
        // Round trip through the printer, both modes.
        for full in [false, true] {
            let text = surface_string(&expected, full);
            assert_eq!(parse_term(&text), Ok(expected.clone()), "mode full={full}");
        }
    }

    #[test]
    fn parenthesized_lambda_in_application() {
        let expected = app(
            lam("x", Ty::arrow(Ty::Base, Ty::Base), var("x")),
            lam("y", Ty::Base, var("y")),
        );
        assert_eq!(parse_term("(\\x:o->o. x) (\\y:o. y)"), Ok(expected));
    }

    #[test]
    fn term_errors_carry_positions() {
        let err = parse_term("\\x o. x").unwrap_err();
        assert_eq!(err.span.start, 3);
        let err = parse_term("x )").unwrap_err();
        assert_eq!(err.span, Span::new(2, 3));
        assert!(parse_term("").is_err());
        assert!(parse_term("\\x:o.").is_err());
        assert!(parse_term("(x").is_err());
    }

    #[test]
    fn spans_cover_input() {
        let t = parse_term("(\\x:o->o. x) (\\y:o. y)").unwrap();
        assert_eq!(t.span(), Span::new(1, 21));
    }
}
