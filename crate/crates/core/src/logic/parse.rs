//! Recursive-descent parser for sentences.
//!
//! Precedence from loosest to tightest: `=>` (right associative), `or`,
//! `and`, then `not` and the quantifiers. A quantifier body extends as far to
//! the right as possible. `#` starts a comment.

use std::sync::Arc;

use super::{Formula, LogicError, Sentence};
use crate::automata::Alphabet;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Less,
    Equals,
    Percent,
    Arrow,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const KEYWORDS: &[&str] = &["forall", "exists", "and", "or", "not", "true", "false", "len", "div"];

fn syntax(line: usize, col: usize, message: impl Into<String>) -> LogicError {
    LogicError::Syntax {
        line,
        col,
        message: message.into(),
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn tokenize(text: &str, first_line: usize) -> Result<Vec<Token>, LogicError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = first_line + i;
        let code = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = code.chars().collect();
        let mut k = 0;
        while k < chars.len() {
            let c = chars[k];
            let col = k + 1;
            let single = match c {
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                ',' => Some(Tok::Comma),
                '.' => Some(Tok::Dot),
                '<' => Some(Tok::Less),
                '%' => Some(Tok::Percent),
                _ => None,
            };
            if c.is_whitespace() {
                k += 1;
            } else if let Some(tok) = single {
                out.push(Token { tok, line, col });
                k += 1;
            } else if c == '=' {
                let tok = if chars.get(k + 1) == Some(&'>') {
                    k += 1;
                    Tok::Arrow
                } else {
                    Tok::Equals
                };
                out.push(Token { tok, line, col });
                k += 1;
            } else if is_word_char(c) {
                let start = k;
                while k < chars.len() && is_word_char(chars[k]) {
                    k += 1;
                }
                let word = chars[start..k].iter().collect();
                out.push(Token {
                    tok: Tok::Word(word),
                    line,
                    col,
                });
            } else {
                return Err(syntax(line, col, format!("unexpected character `{c}`")));
            }
        }
    }
    let (line, col) = match text.lines().enumerate().last() {
        Some((i, l)) => (first_line + i, l.chars().count() + 1),
        None => (first_line, 1),
    };
    out.push(Token {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    alphabet: Option<&'a Alphabet>,
    bound: Vec<String>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> LogicError {
        let t = self.peek();
        syntax(t.line, t.col, message)
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Word(w) if w == kw)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, LogicError> {
        if self.peek().tok == tok {
            Ok(self.next())
        } else {
            Err(self.error_here(format!("expected {what}")))
        }
    }

    fn variable(&mut self) -> Result<String, LogicError> {
        match &self.peek().tok {
            Tok::Word(w) if !KEYWORDS.contains(&w.as_str()) && !starts_with_digit(w) => {
                let w = w.clone();
                self.next();
                Ok(w)
            }
            _ => Err(self.error_here("expected a variable")),
        }
    }

    fn number(&mut self) -> Result<(u32, Token), LogicError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Word(w) if w.chars().all(|c| c.is_ascii_digit()) => {
                let n = w
                    .parse()
                    .map_err(|_| syntax(t.line, t.col, format!("number `{w}` is too large")))?;
                self.next();
                Ok((n, t))
            }
            _ => Err(self.error_here("expected a number")),
        }
    }

    fn formula(&mut self) -> Result<Formula, LogicError> {
        let left = self.disjunction()?;
        if self.peek().tok == Tok::Arrow {
            self.next();
            let right = self.formula()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, LogicError> {
        let mut f = self.conjunction()?;
        while self.is_keyword("or") {
            self.next();
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, LogicError> {
        let mut f = self.unary()?;
        while self.is_keyword("and") {
            self.next();
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, LogicError> {
        if self.is_keyword("not") {
            self.next();
            return Ok(Formula::not(self.unary()?));
        }
        if self.is_keyword("forall") || self.is_keyword("exists") {
            return self.quantifier();
        }
        self.atom()
    }

    fn quantifier(&mut self) -> Result<Formula, LogicError> {
        let universal = self.is_keyword("forall");
        self.next();
        let mut vars: Vec<String> = Vec::new();
        loop {
            let t = self.peek().clone();
            let v = self.variable()?;
            if self.bound.contains(&v) || vars.contains(&v) {
                return Err(syntax(t.line, t.col, format!("variable `{v}` is already bound")));
            }
            vars.push(v);
            match self.peek().tok {
                Tok::Comma => {
                    self.next();
                }
                Tok::Dot => break,
                _ if matches!(self.peek().tok, Tok::Word(_)) => {}
                _ => return Err(self.error_here("expected `.` after the quantified variables")),
            }
        }
        self.expect(Tok::Dot, "`.`")?;
        let before = self.bound.len();
        self.bound.extend(vars.iter().cloned());
        let body = self.formula();
        self.bound.truncate(before);
        let body = body?;
        Ok(if universal {
            Formula::forall(vars, body)
        } else {
            Formula::exists(vars, body)
        })
    }

    fn modulus(&mut self) -> Result<(u32, u32), LogicError> {
        self.expect(Tok::Percent, "`%`")?;
        let (q, qt) = self.number()?;
        self.expect(Tok::Equals, "`=`")?;
        let (r, _) = self.number()?;
        if q == 0 || r >= q {
            return Err(LogicError::MalformedModulus {
                line: qt.line,
                col: qt.col,
                message: format!("need q >= 1 and 0 <= r < q, got q = {q}, r = {r}"),
            });
        }
        Ok((r, q))
    }

    fn atom(&mut self) -> Result<Formula, LogicError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::LParen => {
                self.next();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Word(w) if w == "true" => {
                self.next();
                Ok(Formula::True)
            }
            Tok::Word(w) if w == "false" => {
                self.next();
                Ok(Formula::False)
            }
            Tok::Word(w) if w == "len" => {
                self.next();
                let (r, q) = self.modulus()?;
                Ok(Formula::ModLen { r, q })
            }
            Tok::Word(w) if w == "div" => {
                self.next();
                self.expect(Tok::LParen, "`(`")?;
                let x = self.variable()?;
                self.expect(Tok::Comma, "`,`")?;
                let y = self.variable()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Formula::Divides(x, y))
            }
            Tok::Word(w) if *self.peek_at(1) == Tok::LParen => {
                let letter = w.clone();
                if let Some(alphabet) = self.alphabet {
                    if alphabet.index_of(&letter).is_none() {
                        return Err(LogicError::UnknownLetter {
                            line: t.line,
                            col: t.col,
                            letter,
                        });
                    }
                }
                self.next();
                self.next();
                let x = self.variable()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Formula::Letter(letter, x))
            }
            Tok::Word(_) => {
                let x = self.variable()?;
                match self.peek().tok {
                    Tok::Less => {
                        self.next();
                        Ok(Formula::Less(x, self.variable()?))
                    }
                    Tok::Equals => {
                        self.next();
                        Ok(Formula::EqVar(x, self.variable()?))
                    }
                    Tok::Percent => {
                        let (r, q) = self.modulus()?;
                        Ok(Formula::ModPos { var: x, r, q })
                    }
                    _ => Err(self.error_here("expected `<`, `=` or `%` after a variable")),
                }
            }
            _ => Err(self.error_here("expected a formula")),
        }
    }
}

fn starts_with_digit(w: &str) -> bool {
    w.starts_with(|c: char| c.is_ascii_digit())
}

fn parse_at(text: &str, first_line: usize, alphabet: Option<&Alphabet>) -> Result<Formula, LogicError> {
    let mut p = Parser {
        tokens: tokenize(text, first_line)?,
        pos: 0,
        alphabet,
        bound: Vec::new(),
    };
    let f = p.formula()?;
    if p.peek().tok != Tok::End {
        return Err(p.error_here("unexpected input after the formula"));
    }
    Ok(f)
}

/// Parses a formula, possibly with free variables. When `alphabet` is given,
/// letters are checked against it.
pub fn parse_formula(text: &str, alphabet: Option<&Alphabet>) -> Result<Formula, LogicError> {
    parse_at(text, 1, alphabet)
}

/// Parses a closed formula over `alphabet`.
pub fn parse_sentence(text: &str, alphabet: Arc<Alphabet>) -> Result<Sentence, LogicError> {
    let f = parse_formula(text, Some(&alphabet))?;
    Sentence::new(alphabet, f)
}

/// Parses a sentence file: an `alphabet: a b c` line, then the formula.
/// Blank and comment lines may precede the alphabet line.
pub fn parse_sentence_file(text: &str) -> Result<Sentence, LogicError> {
    let strip = |l: &str| l.split('#').next().unwrap_or("").trim().to_string();
    let (idx, header) = text
        .lines()
        .enumerate()
        .find(|(_, l)| !strip(l).is_empty())
        .ok_or_else(|| syntax(1, 1, "missing `alphabet:` line"))?;
    let no = idx + 1;
    let symbols = match strip(header).split_once(':') {
        Some((key, rest)) if key.trim() == "alphabet" => rest.to_string(),
        _ => return Err(syntax(no, 1, "expected `alphabet:`")),
    };
    let alphabet = Alphabet::new(symbols.split_whitespace())
        .map_err(|e| syntax(no, 1, e.to_string()))?;
    let body: Vec<&str> = text.lines().skip(no).collect();
    let f = parse_at(&body.join("\n"), no + 1, Some(&alphabet))?;
    Sentence::new(alphabet, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::testgen::arb_formula;
    use proptest::prelude::*;

    fn abc() -> Arc<Alphabet> {
        Alphabet::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn universal_letter_sentence() {
        let s = parse_sentence("forall x. b(x)", abc()).unwrap();
        assert_eq!(*s.formula(), Formula::forall(["x"], Formula::letter("b", "x")));
    }

    #[test]
    fn divisibility_sentence() {
        let s = parse_sentence("forall x. forall y. (a(x) and b(y)) => div(x,y)", abc()).unwrap();
        let expected = Formula::forall(
            ["x"],
            Formula::forall(
                ["y"],
                Formula::implies(
                    Formula::and(Formula::letter("a", "x"), Formula::letter("b", "y")),
                    Formula::Divides("x".into(), "y".into()),
                ),
            ),
        );
        assert_eq!(*s.formula(), expected);
        assert!(!s.formula().is_regular());
    }

    #[test]
    fn quantifier_body_extends_right() {
        let f = parse_formula("exists x. x % 3 = 0 and a(x)", None).unwrap();
        let expected = Formula::exists(
            ["x"],
            Formula::and(Formula::ModPos { var: "x".into(), r: 0, q: 3 }, Formula::letter("a", "x")),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn binder_lists() {
        let a = parse_formula("forall x y. x < y", None).unwrap();
        let b = parse_formula("forall x, y. x < y", None).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, Formula::forall(["x", "y"], Formula::Less("x".into(), "y".into())));
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse_formula("true or false and true => false => true", None).unwrap();
        let expected = Formula::implies(
            Formula::or(Formula::True, Formula::and(Formula::False, Formula::True)),
            Formula::implies(Formula::False, Formula::True),
        );
        assert_eq!(f, expected);
        let g = parse_formula("not true and len % 2 = 1", None).unwrap();
        assert_eq!(
            g,
            Formula::and(Formula::not(Formula::True), Formula::ModLen { r: 1, q: 2 })
        );
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_sentence("forall x.\n  b(x) and", abc()).unwrap_err();
        assert!(matches!(e, LogicError::Syntax { line: 2, col: 11, .. }), "{e:?}");
        let e = parse_sentence("forall x. d(x)", abc()).unwrap_err();
        assert_eq!(
            e,
            LogicError::UnknownLetter { line: 1, col: 11, letter: "d".into() }
        );
        let e = parse_sentence("forall x. x % 0 = 0", abc()).unwrap_err();
        assert!(matches!(e, LogicError::MalformedModulus { line: 1, col: 15, .. }));
        let e = parse_sentence("forall x. len % 3 = 3", abc()).unwrap_err();
        assert!(matches!(e, LogicError::MalformedModulus { .. }));
        let e = parse_sentence("forall x. exists x. a(x)", abc()).unwrap_err();
        assert!(matches!(e, LogicError::Syntax { line: 1, col: 18, .. }));
        let e = parse_sentence("forall x. a(y)", abc()).unwrap_err();
        assert!(matches!(e, LogicError::Invalid(_)));
        let e = parse_sentence("forall x. a(x) $", abc()).unwrap_err();
        assert!(matches!(e, LogicError::Syntax { line: 1, col: 16, .. }));
    }

    #[test]
    fn sentence_files() {
        let text = "# no b\nalphabet: a b c\nforall x.\n  not b(x)  # comment\n";
        let s = parse_sentence_file(text).unwrap();
        assert_eq!(s.alphabet().symbols(), ["a", "b", "c"]);
        assert_eq!(s.to_string(), "forall x. not b(x)");
        assert_eq!(parse_sentence_file(&s.to_file_string()).unwrap(), s);
        let e = parse_sentence_file("alphabet: a\nforall x. b(x)").unwrap_err();
        assert!(matches!(e, LogicError::UnknownLetter { line: 2, col: 11, .. }));
        assert!(parse_sentence_file("forall x. a(x)").is_err());
    }

    #[test]
    fn numeric_letters() {
        let bits = Alphabet::new(["0", "1"]).unwrap();
        let s = parse_sentence("forall x. 0(x) or x % 2 = 1", bits).unwrap();
        assert_eq!(s.to_string(), "forall x. 0(x) or x % 2 = 1");
    }

    proptest! {
        #[test]
        fn display_round_trips(f in arb_formula(3)) {
            let text = f.to_string();
            prop_assert_eq!(parse_formula(&text, None).unwrap(), f);
        }
    }
}
