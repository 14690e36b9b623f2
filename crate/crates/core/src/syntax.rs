//! Concrete syntax: μ-terms, the parser, and the pretty-printer.
//!
//! ```text
//! term  := lam | app
//! lam   := ('\' | 'λ') ident+ '.' term
//! mu    := ('μ' | 'mu') ident '.' term
//! app   := atom+ lam?
//! atom  := ident | '⊥' | '_|_' | '#' ident | '(' term ')' | mu
//! ident := [a-zA-Z][a-zA-Z0-9']*
//! ```
//!
//! `--` starts a comment that runs to the end of the line. μ-labels live in
//! their own namespace; identifiers are mapped to atoms by an [`Interner`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::ParseError;
use crate::nominal::{Atom, AtomSet};
use crate::term::FiniteTerm;

/// Finite terms extended with `μl. t` and back-references `#l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MuTerm {
    Var(Atom),
    Bottom,
    Lam(Atom, Box<MuTerm>),
    App(Box<MuTerm>, Box<MuTerm>),
    Mu(String, Box<MuTerm>),
    Ref(String),
}

impl MuTerm {
    pub fn lam(x: Atom, b: MuTerm) -> Self {
        MuTerm::Lam(x, Box::new(b))
    }

    pub fn app(l: MuTerm, r: MuTerm) -> Self {
        MuTerm::App(Box::new(l), Box::new(r))
    }

    pub fn mu(label: impl Into<String>, b: MuTerm) -> Self {
        MuTerm::Mu(label.into(), Box::new(b))
    }

    /// The finite term, if there are no μ-binders or references.
    pub fn to_finite(&self) -> Option<FiniteTerm> {
        Some(match self {
            MuTerm::Var(a) => FiniteTerm::Var(*a),
            MuTerm::Bottom => FiniteTerm::Bottom,
            MuTerm::Lam(x, b) => FiniteTerm::lam(*x, b.to_finite()?),
            MuTerm::App(l, r) => FiniteTerm::app(l.to_finite()?, r.to_finite()?),
            MuTerm::Mu(..) | MuTerm::Ref(_) => return None,
        })
    }

    /// Checks that every reference is bound and every μ is guarded.
    pub fn check(&self) -> Result<(), ParseError> {
        fn go(t: &MuTerm, env: &mut Vec<(String, usize)>, guards: usize) -> Result<(), ParseError> {
            match t {
                MuTerm::Var(_) | MuTerm::Bottom => Ok(()),
                MuTerm::Lam(_, b) => go(b, env, guards + 1),
                MuTerm::App(l, r) => {
                    go(l, env, guards + 1)?;
                    go(r, env, guards + 1)
                }
                MuTerm::Mu(l, b) => {
                    env.push((l.clone(), guards));
                    let res = go(b, env, guards);
                    env.pop();
                    res
                }
                MuTerm::Ref(l) => match env.iter().rev().find(|(m, _)| m == l) {
                    None => Err(ParseError::UnboundRef(l.clone())),
                    Some(&(_, g)) if g == guards => Err(ParseError::UnguardedMu(l.clone())),
                    Some(_) => Ok(()),
                },
            }
        }
        go(self, &mut Vec::new(), 0)
    }
}

impl From<&FiniteTerm> for MuTerm {
    fn from(t: &FiniteTerm) -> Self {
        match t {
            FiniteTerm::Var(a) => MuTerm::Var(*a),
            FiniteTerm::Bottom => MuTerm::Bottom,
            FiniteTerm::Lam(x, b) => MuTerm::lam(*x, MuTerm::from(b.as_ref())),
            FiniteTerm::App(l, r) => {
                MuTerm::app(MuTerm::from(l.as_ref()), MuTerm::from(r.as_ref()))
            }
        }
    }
}

/// Maps identifiers to atoms and back.
///
/// An identifier of the form `v<n>` always denotes the atom with index `n`. Any
/// other identifier is assigned, in order of first use, the least atom that is
/// neither reserved nor already assigned.
#[derive(Clone, Debug, Default)]
pub struct Interner {
    by_name: BTreeMap<String, Atom>,
    names: BTreeMap<Atom, String>,
    taken: AtomSet,
}

fn numbered_atom(name: &str) -> Option<Atom> {
    let digits = name.strip_prefix('v')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    digits.parse().ok().map(Atom)
}

impl Interner {
    pub fn new() -> Self {
        Interner::default()
    }

    /// An interner that has reserved every `v<n>` identifier occurring in `sources`,
    /// so that named identifiers never collide with numbered ones.
    pub fn for_sources<'a>(sources: impl IntoIterator<Item = &'a str>) -> Self {
        let mut me = Interner::new();
        for src in sources {
            if let Ok(tokens) = lex(src) {
                for tok in tokens {
                    if let Tok::Ident(name) = tok.kind {
                        if let Some(a) = numbered_atom(&name) {
                            me.taken.insert(a);
                        }
                    }
                }
            }
        }
        me
    }

    pub fn intern(&mut self, name: &str) -> Atom {
        if let Some(a) = numbered_atom(name) {
            self.taken.insert(a);
            return a;
        }
        if let Some(&a) = self.by_name.get(name) {
            return a;
        }
        let a = self.taken.least_fresh();
        self.taken.insert(a);
        self.by_name.insert(name.to_string(), a);
        self.names.insert(a, name.to_string());
        a
    }

    pub fn lookup(&self, name: &str) -> Option<Atom> {
        numbered_atom(name).or_else(|| self.by_name.get(name).copied())
    }

    pub fn name(&self, a: Atom) -> String {
        self.names.get(&a).cloned().unwrap_or_else(|| a.to_string())
    }

    /// The named (non-`v<n>`) identifiers and their atoms, by atom index.
    pub fn table(&self) -> Vec<(String, Atom)> {
        self.names.iter().map(|(&a, n)| (n.clone(), a)).collect()
    }

    /// `-- atoms: x=v0 y=v1`, or `None` when no named identifiers were interned.
    pub fn header(&self) -> Option<String> {
        if self.names.is_empty() {
            return None;
        }
        let mut s = String::from("-- atoms:");
        for (n, a) in self.table() {
            let _ = write!(s, " {n}={a}");
        }
        Some(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Lambda,
    Mu,
    Dot,
    LParen,
    RParen,
    Bottom,
    Ref(String),
    Ident(String),
}

#[derive(Clone, Debug)]
struct Token {
    kind: Tok,
    pos: usize,
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let mut single = |kind| {
            out.push(Token { kind, pos });
        };
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '\\' | 'λ' => {
                single(Tok::Lambda);
                chars.next();
            }
            'μ' => {
                single(Tok::Mu);
                chars.next();
            }
            '.' => {
                single(Tok::Dot);
                chars.next();
            }
            '(' => {
                single(Tok::LParen);
                chars.next();
            }
            ')' => {
                single(Tok::RParen);
                chars.next();
            }
            '⊥' => {
                single(Tok::Bottom);
                chars.next();
            }
            '-' if src[pos..].starts_with("--") => {
                while let Some(&(_, c)) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            '_' if src[pos..].starts_with("_|_") => {
                single(Tok::Bottom);
                chars.next();
                chars.next();
                chars.next();
            }
            '#' => {
                chars.next();
                let name = lex_ident(&mut chars)
                    .ok_or_else(|| syntax(pos, "expected a label after `#`"))?;
                out.push(Token {
                    kind: Tok::Ref(name),
                    pos,
                });
            }
            c if c.is_ascii_alphabetic() => {
                let name = lex_ident(&mut chars).expect("starts with a letter");
                let kind = if name == "mu" {
                    Tok::Mu
                } else {
                    Tok::Ident(name)
                };
                out.push(Token { kind, pos });
            }
            other => return Err(syntax(pos, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

fn lex_ident(chars: &mut std::iter::Peekable<std::str::CharIndices<'_>>) -> Option<String> {
    let mut name = String::new();
    match chars.peek() {
        Some(&(_, c)) if c.is_ascii_alphabetic() => {}
        _ => return None,
    }
    while let Some(&(_, c)) = chars.peek() {
        if c.is_ascii_alphanumeric() || c == '\'' {
            name.push(c);
            chars.next();
        } else {
            break;
        }
    }
    Some(name)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    at: usize,
    end: usize,
    interner: &'a mut Interner,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.at).map(|t| &t.kind)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map(|t| t.pos).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.at).map(|t| t.kind.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(syntax(pos, format!("expected {what}"))),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Ident(n)) => Ok(n),
            _ => Err(syntax(pos, "expected an identifier")),
        }
    }

    fn term(&mut self) -> Result<MuTerm, ParseError> {
        match self.peek() {
            Some(Tok::Lambda) => self.lam(),
            _ => self.app(),
        }
    }

    fn lam(&mut self) -> Result<MuTerm, ParseError> {
        self.expect(Tok::Lambda, "`\\`")?;
        let mut binders = vec![self.ident()?];
        while let Some(Tok::Ident(_)) = self.peek() {
            binders.push(self.ident()?);
        }
        self.expect(Tok::Dot, "`.`")?;
        let atoms: Vec<Atom> = binders.iter().map(|b| self.interner.intern(b)).collect();
        let body = self.term()?;
        Ok(atoms
            .into_iter()
            .rev()
            .fold(body, |acc, x| MuTerm::lam(x, acc)))
    }

    fn mu(&mut self) -> Result<MuTerm, ParseError> {
        self.expect(Tok::Mu, "`mu`")?;
        let label = self.ident()?;
        self.expect(Tok::Dot, "`.`")?;
        Ok(MuTerm::mu(label, self.term()?))
    }

    fn app(&mut self) -> Result<MuTerm, ParseError> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::Lambda) => {
                    let arg = self.lam()?;
                    return Ok(MuTerm::app(acc, arg));
                }
                Some(Tok::Ident(_) | Tok::Bottom | Tok::Ref(_) | Tok::LParen | Tok::Mu) => {
                    let arg = self.atom()?;
                    acc = MuTerm::app(acc, arg);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn atom(&mut self) -> Result<MuTerm, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Ident(n)) => {
                self.at += 1;
                Ok(MuTerm::Var(self.interner.intern(&n)))
            }
            Some(Tok::Bottom) => {
                self.at += 1;
                Ok(MuTerm::Bottom)
            }
            Some(Tok::Ref(l)) => {
                self.at += 1;
                Ok(MuTerm::Ref(l))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Some(Tok::Mu) => self.mu(),
            Some(_) => Err(syntax(pos, "expected a term")),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

/// Parses a μ-term, interning identifiers into `interner`.
pub fn parse_term_with(text: &str, interner: &mut Interner) -> Result<MuTerm, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser {
        tokens,
        at: 0,
        end: text.len(),
        interner,
    };
    let t = p.term()?;
    if p.at < p.tokens.len() {
        return Err(syntax(p.pos(), "trailing input"));
    }
    t.check()?;
    Ok(t)
}

/// Parses a μ-term with a fresh interner for its identifiers.
pub fn parse_term(text: &str) -> Result<(MuTerm, Interner), ParseError> {
    let mut interner = Interner::for_sources([text]);
    let t = parse_term_with(text, &mut interner)?;
    Ok((t, interner))
}

/// Parses a term that must not contain μ-binders.
pub fn parse_finite_with(text: &str, interner: &mut Interner) -> Result<FiniteTerm, ParseError> {
    let t = parse_term_with(text, interner)?;
    t.to_finite()
        .ok_or_else(|| syntax(0, "expected a finite term without mu"))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Ctx {
    Top,
    Head,
    Arg,
}

/// Prints a μ-term in the ASCII grammar accepted by [`parse_term`].
pub fn print_term(t: &MuTerm, interner: &Interner) -> String {
    let mut out = String::new();
    print_into(t, interner, Ctx::Top, &mut out);
    out
}

pub fn print_finite(t: &FiniteTerm, interner: &Interner) -> String {
    print_term(&MuTerm::from(t), interner)
}

fn print_into(t: &MuTerm, names: &Interner, ctx: Ctx, out: &mut String) {
    match t {
        MuTerm::Var(a) => out.push_str(&names.name(*a)),
        MuTerm::Bottom => out.push_str("_|_"),
        MuTerm::Ref(l) => {
            out.push('#');
            out.push_str(l);
        }
        MuTerm::Lam(x, b) => {
            let paren = ctx != Ctx::Top;
            if paren {
                out.push('(');
            }
            out.push('\\');
            out.push_str(&names.name(*x));
            out.push_str(". ");
            print_into(b, names, Ctx::Top, out);
            if paren {
                out.push(')');
            }
        }
        MuTerm::Mu(l, b) => {
            let paren = ctx != Ctx::Top;
            if paren {
                out.push('(');
            }
            out.push_str("mu ");
            out.push_str(l);
            out.push_str(". ");
            print_into(b, names, Ctx::Top, out);
            if paren {
                out.push(')');
            }
        }
        MuTerm::App(l, r) => {
            let paren = ctx == Ctx::Arg;
            if paren {
                out.push('(');
            }
            print_into(l, names, Ctx::Head, out);
            out.push(' ');
            print_into(r, names, Ctx::Arg, out);
            if paren {
                out.push(')');
            }
        }
    }
}
