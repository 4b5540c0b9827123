//! Lexer and parser for `.mlf` sources.
//!
//! A file is a sequence of items, each terminated by `.`:
//!
//! ```text
//! nat : type.
//! suc : {x : nat} nat.
//! %check \x. suc x : {x : nat} nat in .
//! %hsub (\y. c y) / x : {y : i} i into x z in z : i.
//! %ctx F^1 : i [x : i], y : i.
//! ```
//!
//! `%` followed directly by a directive keyword starts a directive; any
//! other `%` starts a comment running to the end of the line. A closure's
//! `[` must touch the variable (`x^1[y]`); the local context of a
//! contextual type is separated by whitespace (`i [x : i]`). Bare
//! identifiers resolve to a bound variable when one is in scope and to a
//! constant otherwise.

use std::sync::Arc;

use thiserror::Error;

use crate::syntax::{
    AtomicTerm, AtomicType, BoundBody, Context, CtxType, Decl, Level, NormalTerm, Signature, Sort,
    Subst, SubstEntry, Type, Var,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ItemKind {
    Decl {
        name: String,
        ty: Type,
    },
    Check {
        ctx: Context,
        term: NormalTerm,
        ty: Type,
    },
    Hsub {
        ctx: Context,
        replacement: BoundBody,
        target: Var,
        bound: CtxType,
        subject: NormalTerm,
    },
    Ctx {
        ctx: Context,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Item {
    pub line: usize,
    pub kind: ItemKind,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SourceFile {
    pub items: Vec<Item>,
}

impl SourceFile {
    /// Collects the declarations in order. A repeated name is reported at
    /// its second occurrence.
    pub fn signature(&self) -> P<Signature> {
        let mut sig = Signature::new();
        for it in &self.items {
            if let ItemKind::Decl { name, ty } = &it.kind {
                sig.push(name, ty.clone()).map_err(|e| ParseError {
                    line: it.line,
                    col: 1,
                    message: e.to_string(),
                })?;
            }
        }
        Ok(sig)
    }
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u32),
    Directive(String),
    Caret,
    Backslash,
    Dot,
    Colon,
    Comma,
    Slash,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
    start: usize,
    end: usize,
}

const DIRECTIVES: [&str; 3] = ["check", "hsub", "ctx"];
const RESERVED: [&str; 4] = ["type", "kind", "in", "into"];

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut toks = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize| {
        if chars[*i].1 == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
        *i += 1;
    };
    while i < chars.len() {
        let (off, c) = chars[i];
        let (tl, tc) = (line, col);
        let single = match c {
            '^' => Some(Tok::Caret),
            '\\' => Some(Tok::Backslash),
            '.' => Some(Tok::Dot),
            ':' => Some(Tok::Colon),
            ',' => Some(Tok::Comma),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            _ => None,
        };
        if let Some(tok) = single {
            advance(&mut i, &mut line, &mut col);
            toks.push(Token {
                tok,
                line: tl,
                col: tc,
                start: off,
                end: off + c.len_utf8(),
            });
        } else if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col);
        } else if c == '%' {
            let mut j = i + 1;
            while j < chars.len() && is_ident_char(chars[j].1) {
                j += 1;
            }
            let word: String = chars[i + 1..j].iter().map(|p| p.1).collect();
            if DIRECTIVES.contains(&word.as_str()) {
                while i < j {
                    advance(&mut i, &mut line, &mut col);
                }
                toks.push(Token {
                    tok: Tok::Directive(word),
                    line: tl,
                    col: tc,
                    start: off,
                    end: chars.get(j).map_or(src.len(), |p| p.0),
                });
            } else {
                while i < chars.len() && chars[i].1 != '\n' {
                    advance(&mut i, &mut line, &mut col);
                }
            }
        } else if is_ident_start(c) || c.is_ascii_digit() {
            let digits = c.is_ascii_digit();
            let mut s = String::new();
            while i < chars.len()
                && (if digits {
                    chars[i].1.is_ascii_digit()
                } else {
                    is_ident_char(chars[i].1)
                })
            {
                s.push(chars[i].1);
                advance(&mut i, &mut line, &mut col);
            }
            let end = chars.get(i).map_or(src.len(), |p| p.0);
            let tok = if digits {
                Tok::Num(s.parse().map_err(|_| ParseError {
                    line: tl,
                    col: tc,
                    message: format!("level {s} is out of range"),
                })?)
            } else {
                Tok::Ident(s)
            };
            toks.push(Token {
                tok,
                line: tl,
                col: tc,
                start: off,
                end,
            });
        } else {
            return Err(ParseError {
                line: tl,
                col: tc,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    toks.push(Token {
        tok: Tok::Eof,
        line,
        col,
        start: src.len(),
        end: src.len(),
    });
    Ok(toks)
}

// ---------------------------------------------------------------------------
// Parser

type P<T> = Result<T, ParseError>;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    scope: Vec<Var>,
}

pub fn parse(src: &str) -> P<SourceFile> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        scope: Vec::new(),
    };
    let mut items = Vec::new();
    while p.peek() != &Tok::Eof {
        items.push(p.item()?);
    }
    Ok(SourceFile { items })
}

/// Parses a standalone term in the given scope.
pub fn parse_term(src: &str, scope: &Context) -> P<NormalTerm> {
    standalone(src, scope, |p| p.normal())
}

pub fn parse_type(src: &str, scope: &Context) -> P<Type> {
    standalone(src, scope, |p| p.ty())
}

pub fn parse_context(src: &str) -> P<Context> {
    standalone(src, &Context::empty(), |p| p.context())
}

pub fn parse_subst(src: &str, scope: &Context) -> P<Subst> {
    standalone(src, scope, |p| p.subst_entries(&Tok::Eof))
}

fn standalone<T>(src: &str, scope: &Context, f: impl FnOnce(&mut Parser) -> P<T>) -> P<T> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        scope: scope.vars().cloned().collect(),
    };
    let v = f(&mut p)?;
    p.expect(&Tok::Eof)?;
    Ok(v)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> P<T> {
        let t = &self.toks[self.pos];
        Err(ParseError {
            line: t.line,
            col: t.col,
            message: message.into(),
        })
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Num(n) => format!("number {n}"),
            Tok::Directive(d) => format!("directive %{d}"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", Self::symbol(other)),
        }
    }

    fn symbol(t: &Tok) -> &'static str {
        match t {
            Tok::Caret => "^",
            Tok::Backslash => "\\",
            Tok::Dot => ".",
            Tok::Colon => ":",
            Tok::Comma => ",",
            Tok::Slash => "/",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            _ => "?",
        }
    }

    fn expect(&mut self, t: &Tok) -> P<()> {
        if self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(format!(
                "expected {}, found {}",
                Self::describe(t),
                Self::describe(self.peek())
            ))
        }
    }

    fn is_keyword(&self, k: usize, kw: &str) -> bool {
        matches!(self.peek_at(k), Tok::Ident(s) if s == kw)
    }

    fn expect_keyword(&mut self, kw: &str) -> P<()> {
        if self.is_keyword(0, kw) {
            self.bump();
            Ok(())
        } else {
            self.error(format!(
                "expected `{kw}`, found {}",
                Self::describe(self.peek())
            ))
        }
    }

    /// True when the current token starts right where the previous ended.
    fn adjacent(&self) -> bool {
        self.pos > 0 && self.toks[self.pos - 1].end == self.toks[self.pos].start
    }

    fn item(&mut self) -> P<Item> {
        let line = self.toks[self.pos].line;
        let kind = match self.peek().clone() {
            Tok::Directive(d) => {
                self.bump();
                match d.as_str() {
                    "check" => self.check_directive()?,
                    "hsub" => self.hsub_directive()?,
                    _ => {
                        let ctx = self.context()?;
                        self.expect(&Tok::Dot)?;
                        ItemKind::Ctx { ctx }
                    }
                }
            }
            Tok::Ident(name) if !RESERVED.contains(&name.as_str()) => {
                self.bump();
                self.expect(&Tok::Colon)?;
                let ty = self.ty()?;
                self.expect(&Tok::Dot)?;
                ItemKind::Decl { name, ty }
            }
            other => {
                return self.error(format!(
                    "expected a declaration, found {}",
                    Self::describe(&other)
                ))
            }
        };
        Ok(Item { line, kind })
    }

    /// Finds the `in` that closes the current directive, if any.
    fn find_in(&self) -> Option<usize> {
        let mut depth = 0i64;
        for (k, t) in self.toks[self.pos..].iter().enumerate() {
            match &t.tok {
                Tok::LParen | Tok::LBrace | Tok::LBracket => depth += 1,
                Tok::RParen | Tok::RBrace | Tok::RBracket => depth -= 1,
                Tok::Ident(s) if s == "in" && depth == 0 => return Some(self.pos + k),
                Tok::Directive(_) | Tok::Eof => return None,
                _ => {}
            }
        }
        None
    }

    /// Parses the trailing `in Ψ.` first so that the body sees Ψ in scope.
    /// Returns the context and the position just past the final `.`.
    fn trailing_context(&mut self) -> P<(Context, Option<usize>)> {
        let Some(k) = self.find_in() else {
            return Ok((Context::empty(), None));
        };
        let start = self.pos;
        self.pos = k + 1;
        let ctx = if self.peek() == &Tok::Dot {
            Context::empty()
        } else {
            self.context()?
        };
        self.expect(&Tok::Dot)?;
        let end = self.pos;
        self.pos = start;
        Ok((ctx, Some(end)))
    }

    fn finish(&mut self, end: Option<usize>) -> P<()> {
        match end {
            Some(e) => {
                self.expect_keyword("in")?;
                self.pos = e;
                Ok(())
            }
            None => self.expect(&Tok::Dot),
        }
    }

    fn check_directive(&mut self) -> P<ItemKind> {
        let (ctx, end) = self.trailing_context()?;
        let mark = self.scope.len();
        self.scope.extend(ctx.vars().cloned());
        let term = self.normal()?;
        self.expect(&Tok::Colon)?;
        let ty = self.ty()?;
        self.scope.truncate(mark);
        self.finish(end)?;
        Ok(ItemKind::Check { ctx, term, ty })
    }

    fn hsub_directive(&mut self) -> P<ItemKind> {
        let (ctx, end) = self.trailing_context()?;
        let mark = self.scope.len();
        self.scope.extend(ctx.vars().cloned());
        // the replacement is written before the context it lives in, so
        // resolve it after reading the target's contextual type
        let rep_start = self.pos;
        self.skip_group()?;
        self.expect(&Tok::Slash)?;
        let target = self.var_binder()?;
        self.expect(&Tok::Colon)?;
        let bound = self.ctx_type_annot()?;
        let after_bound = self.pos;

        self.pos = rep_start;
        let inner = self.scope.len();
        self.scope.extend(bound.ctx.vars().cloned());
        let replacement = self.argument()?;
        self.scope.truncate(inner);
        self.pos = after_bound;

        self.expect_keyword("into")?;
        self.scope.push(target.clone());
        let subject = self.normal()?;
        self.scope.truncate(mark);
        self.finish(end)?;
        Ok(ItemKind::Hsub {
            ctx,
            replacement,
            target,
            bound,
            subject,
        })
    }

    /// Skips one parenthesized group or one token.
    fn skip_group(&mut self) -> P<()> {
        if self.peek() != &Tok::LParen {
            self.bump();
            return Ok(());
        }
        let mut depth = 0i64;
        loop {
            match self.peek() {
                Tok::LParen => depth += 1,
                Tok::RParen => depth -= 1,
                Tok::Eof => return self.error("unclosed `(`"),
                _ => {}
            }
            self.bump();
            if depth == 0 {
                return Ok(());
            }
        }
    }

    // -- variables ----------------------------------------------------------

    /// `x` or `x^n` in binding position.
    fn var_binder(&mut self) -> P<Var> {
        let Tok::Ident(name) = self.peek().clone() else {
            return self.error(format!(
                "expected a variable, found {}",
                Self::describe(self.peek())
            ));
        };
        if RESERVED.contains(&name.as_str()) {
            return self.error(format!("`{name}` is reserved"));
        }
        self.bump();
        let level = self.level_suffix()?;
        Ok(Var {
            name: Arc::from(name.as_str()),
            level,
        })
    }

    fn level_suffix(&mut self) -> P<Level> {
        if self.peek() == &Tok::Caret && self.adjacent() {
            self.bump();
            match self.peek().clone() {
                Tok::Num(n) if self.adjacent() => {
                    self.bump();
                    Ok(Level(n))
                }
                _ => self.error("expected a level after `^`"),
            }
        } else {
            Ok(Level::ZERO)
        }
    }

    fn in_scope(&self, v: &Var) -> bool {
        self.scope.iter().rev().any(|s| s == v)
    }

    fn hat(&mut self) -> P<Vec<Var>> {
        let mut vs = vec![self.var_binder()?];
        while self.peek() == &Tok::Comma {
            self.bump();
            vs.push(self.var_binder()?);
        }
        self.expect(&Tok::Dot)?;
        Ok(vs)
    }

    /// Looks ahead for `v, …, v .` starting at the current token.
    fn at_hat(&self) -> bool {
        let mut k = 0;
        loop {
            if !matches!(self.peek_at(k), Tok::Ident(s) if !RESERVED.contains(&s.as_str())) {
                return false;
            }
            k += 1;
            if self.peek_at(k) == &Tok::Caret {
                if !matches!(self.peek_at(k + 1), Tok::Num(_)) {
                    return false;
                }
                k += 2;
            }
            match self.peek_at(k) {
                Tok::Dot => return true,
                Tok::Comma => k += 1,
                _ => return false,
            }
        }
    }

    // -- terms --------------------------------------------------------------

    fn normal(&mut self) -> P<NormalTerm> {
        if self.peek() == &Tok::Backslash {
            self.bump();
            let x = self.var_binder()?;
            self.expect(&Tok::Dot)?;
            self.scope.push(x.clone());
            let body = self.normal();
            self.scope.pop();
            return Ok(NormalTerm::lam(x, body?));
        }
        Ok(NormalTerm::Atomic(self.atomic()?))
    }

    fn atomic(&mut self) -> P<AtomicTerm> {
        let mut head = match self.peek() {
            Tok::LParen => {
                self.bump();
                let r = self.atomic()?;
                self.expect(&Tok::RParen)?;
                r
            }
            Tok::Ident(_) => self.head_token()?,
            other => {
                return self.error(format!("expected a term, found {}", Self::describe(other)))
            }
        };
        while self.starts_argument() {
            let a = self.argument()?;
            head = head.app(a);
        }
        Ok(head)
    }

    fn starts_argument(&self) -> bool {
        match self.peek() {
            Tok::LParen => true,
            Tok::Ident(s) => !RESERVED.contains(&s.as_str()),
            _ => false,
        }
    }

    /// A variable, closure or constant.
    fn head_token(&mut self) -> P<AtomicTerm> {
        let Tok::Ident(name) = self.peek().clone() else {
            return self.error("expected an identifier");
        };
        if RESERVED.contains(&name.as_str()) {
            return self.error(format!("`{name}` is reserved"));
        }
        self.bump();
        let explicit = self.peek() == &Tok::Caret && self.adjacent();
        let level = self.level_suffix()?;
        let v = Var {
            name: Arc::from(name.as_str()),
            level,
        };
        let closure = self.peek() == &Tok::LBracket && self.adjacent();
        if !explicit && !closure && !self.in_scope(&v) {
            return Ok(AtomicTerm::Const(v.name));
        }
        let sigma = if closure {
            self.bump();
            let s = self.subst_entries(&Tok::RBracket)?;
            self.expect(&Tok::RBracket)?;
            s
        } else {
            Subst::empty()
        };
        Ok(AtomicTerm::Var(v, sigma))
    }

    /// `(x, y. M)`, `(M)` or a single token.
    fn argument(&mut self) -> P<BoundBody> {
        if self.peek() != &Tok::LParen {
            let r = self.head_token()?;
            return Ok(BoundBody::closed(NormalTerm::Atomic(r)));
        }
        self.bump();
        let b = self.bound_body()?;
        self.expect(&Tok::RParen)?;
        Ok(b)
    }

    fn bound_body(&mut self) -> P<BoundBody> {
        let hat = if self.at_hat() {
            self.hat()?
        } else {
            Vec::new()
        };
        let mark = self.scope.len();
        self.scope.extend(hat.iter().cloned());
        let body = self.normal();
        self.scope.truncate(mark);
        Ok(BoundBody::new(hat, body?))
    }

    fn subst_entries(&mut self, close: &Tok) -> P<Subst> {
        let mut entries = Vec::new();
        if self.peek() == close {
            return Ok(Subst(entries));
        }
        loop {
            entries.push(self.subst_entry()?);
            if self.peek() == &Tok::Comma {
                self.bump();
            } else {
                return Ok(Subst(entries));
            }
        }
    }

    fn subst_entry(&mut self) -> P<SubstEntry> {
        if self.peek() == &Tok::LParen && !self.paren_is_head() {
            self.bump();
            let b = self.bound_body()?;
            self.expect(&Tok::RParen)?;
            return Ok(SubstEntry::Term(b));
        }
        if self.at_hat() {
            return Ok(SubstEntry::Term(self.bound_body()?));
        }
        // a lone variable is a renaming
        if let Tok::Ident(name) = self.peek().clone() {
            let save = self.pos;
            self.bump();
            let explicit = self.peek() == &Tok::Caret && self.adjacent();
            let level = self.level_suffix()?;
            let v = Var {
                name: Arc::from(name.as_str()),
                level,
            };
            let lone = matches!(self.peek(), Tok::Comma | Tok::RBracket | Tok::Eof)
                && !RESERVED.contains(&name.as_str());
            if lone && (explicit || self.in_scope(&v)) {
                return Ok(SubstEntry::Rename(v));
            }
            self.pos = save;
        }
        Ok(SubstEntry::Term(BoundBody::closed(self.normal()?)))
    }

    /// `(R) a …` inside a substitution: a parenthesized head applied further.
    fn paren_is_head(&self) -> bool {
        let mut depth = 0i64;
        for (k, t) in self.toks[self.pos..].iter().enumerate() {
            match t.tok {
                Tok::LParen => depth += 1,
                Tok::RParen => {
                    depth -= 1;
                    if depth == 0 {
                        return !matches!(
                            self.peek_at(k + 1),
                            Tok::Comma | Tok::RBracket | Tok::Eof
                        );
                    }
                }
                Tok::Eof => return false,
                _ => {}
            }
        }
        false
    }

    // -- types and contexts -------------------------------------------------

    fn ty(&mut self) -> P<Type> {
        if self.peek() == &Tok::LBrace {
            self.bump();
            let x = self.var_binder()?;
            self.expect(&Tok::Colon)?;
            let domain = self.ctx_type_annot()?;
            self.expect(&Tok::RBrace)?;
            self.scope.push(x.clone());
            let body = self.ty();
            self.scope.pop();
            return Ok(Type::pi(x, domain, body?));
        }
        Ok(Type::Atomic(self.atomic_type()?))
    }

    fn atomic_type(&mut self) -> P<AtomicType> {
        let mut head = match self.peek().clone() {
            Tok::Ident(s) if s == "type" => {
                self.bump();
                AtomicType::Sort(Sort::Type)
            }
            Tok::Ident(s) if s == "kind" => {
                self.bump();
                AtomicType::Sort(Sort::Kind)
            }
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                self.bump();
                AtomicType::Const(Arc::from(s.as_str()))
            }
            Tok::LParen => {
                self.bump();
                let p = self.atomic_type()?;
                self.expect(&Tok::RParen)?;
                p
            }
            other => {
                return self.error(format!("expected a type, found {}", Self::describe(&other)))
            }
        };
        while self.starts_argument() {
            let a = self.argument()?;
            head = head.app(a);
        }
        Ok(head)
    }

    /// `A` or `A [Γ]`; the local context scopes over `A`, so it is read
    /// first.
    fn ctx_type_annot(&mut self) -> P<CtxType> {
        let start = self.pos;
        // skip the type to find a following `[`
        let mut depth = 0i64;
        let mut k = self.pos;
        loop {
            match &self.toks[k].tok {
                Tok::LParen | Tok::LBrace => depth += 1,
                Tok::LBracket => {
                    let adjacent = k > 0 && self.toks[k - 1].end == self.toks[k].start;
                    let after_ident =
                        k > 0 && matches!(self.toks[k - 1].tok, Tok::Ident(_) | Tok::Num(_));
                    if depth == 0 && !(adjacent && after_ident) {
                        break;
                    }
                    depth += 1;
                }
                Tok::RParen | Tok::RBrace | Tok::RBracket => {
                    if depth == 0 {
                        break;
                    }
                    depth -= 1;
                }
                Tok::Comma | Tok::Dot | Tok::Colon if depth == 0 => break,
                Tok::Ident(s) if depth == 0 && (s == "in" || s == "into") => break,
                Tok::Directive(_) | Tok::Eof => break,
                _ => {}
            }
            k += 1;
        }
        if self.toks[k].tok != Tok::LBracket {
            return Ok(CtxType::plain(self.ty()?));
        }
        self.pos = k + 1;
        let ctx = if self.peek() == &Tok::RBracket {
            Context::empty()
        } else {
            self.context()?
        };
        self.expect(&Tok::RBracket)?;
        let after = self.pos;
        self.pos = start;
        let mark = self.scope.len();
        self.scope.extend(ctx.vars().cloned());
        let ty = self.ty();
        self.scope.truncate(mark);
        let ty = ty?;
        if self.pos != k {
            return self.error("unexpected tokens before the local context");
        }
        self.pos = after;
        Ok(CtxType::new(ty, ctx))
    }

    fn context(&mut self) -> P<Context> {
        let mark = self.scope.len();
        let r = self.context_inner();
        self.scope.truncate(mark);
        r
    }

    fn context_inner(&mut self) -> P<Context> {
        let mut decls = Vec::new();
        let (line, col) = (self.toks[self.pos].line, self.toks[self.pos].col);
        loop {
            let x = self.var_binder()?;
            self.expect(&Tok::Colon)?;
            let ty = self.ctx_type_annot()?;
            self.scope.push(x.clone());
            decls.push(Decl::new(x, ty));
            if self.peek() == &Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        Context::new(decls).map_err(|e| ParseError {
            line,
            col,
            message: e.to_string(),
        })
    }
}
