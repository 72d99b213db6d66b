//! Recursive-descent parser for MiniTalk.
//!
//! ```text
//! program    := (classDecl | traitDecl)* ;
//! classDecl  := "class" NAME ("extends" NAME)? "{" member* "}" ;
//! traitDecl  := "trait" NAME "{" member* "}" ;
//! member     := "vars" nameList ";" | "classvars" nameList ";"
//!             | "uses" nameList ";" | methodDecl ;
//! methodDecl := ("method" | "classmethod") NAME "(" nameList? ")" "{" stmt* "}" ;
//! stmt       := (NAME "=" expr | expr) ";" ;
//! expr       := primary ("." NAME "(" argList? ")")* ;
//! primary    := "self" | "super" | NAME | NUMBER | STRING | "(" expr ")" ;
//! ```
//!
//! Any syntax error aborts the whole file.

use std::collections::HashSet;

use indexmap::IndexMap;
use thiserror::Error;

use super::ast::{Expr, ExprKind, Stmt};
use super::diag::{DiagCode, Diagnostic, Location, Pos};
use super::lexer::{tokenize, Keyword, Token, TokenKind};
use super::model::{ClassDef, Codebase, MethodDef, MethodKey, OwnerKind, Side, TraitDef};

/// Parsing failed; carries at least one Error diagnostic.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{}", render_first(.diagnostics))]
pub struct ParseError {
    pub diagnostics: Vec<Diagnostic>,
}

fn render_first(diags: &[Diagnostic]) -> String {
    match diags {
        [] => "parse failed".to_string(),
        [one] => one.to_string(),
        [first, rest @ ..] => format!("{first} (and {} more)", rest.len()),
    }
}

impl ParseError {
    fn single(diag: Diagnostic) -> Self {
        ParseError {
            diagnostics: vec![diag],
        }
    }
}

/// One labeled input text.
#[derive(Clone, Debug)]
pub struct SourceFile {
    pub label: String,
    pub text: String,
}

impl SourceFile {
    pub fn new(label: impl Into<String>, text: impl Into<String>) -> Self {
        SourceFile {
            label: label.into(),
            text: text.into(),
        }
    }
}

/// Parse one source text into a validated codebase.
pub fn parse(text: &str, origin: &str) -> Result<Codebase, ParseError> {
    let decls = parse_unit(text, origin)?;
    let (classes, traits) = assemble(std::iter::once(decls))?;
    Ok(Codebase::from_parts(origin, classes, traits))
}

/// Union several independently parsed files. Declaration order is file
/// order, then in-file order.
pub fn merge_sources(files: &[SourceFile]) -> Result<Codebase, ParseError> {
    let mut units = Vec::with_capacity(files.len());
    let mut errors = Vec::new();
    for f in files {
        match parse_unit(&f.text, &f.label) {
            Ok(u) => units.push(u),
            Err(e) => errors.extend(e.diagnostics),
        }
    }
    if !errors.is_empty() {
        return Err(ParseError {
            diagnostics: errors,
        });
    }
    let (classes, traits) = assemble(units)?;
    let label = files
        .iter()
        .map(|f| f.label.as_str())
        .collect::<Vec<_>>()
        .join("+");
    Ok(Codebase::from_parts(label, classes, traits))
}

/// Build a method from a parameter list and a standalone body text.
pub fn parse_method(
    owner: &str,
    owner_kind: OwnerKind,
    side: Side,
    name: &str,
    params: &[String],
    body_source: &str,
    origin: &str,
) -> Result<MethodDef, ParseError> {
    let tokens = lex(body_source, origin)?;
    let mut p = Parser {
        src: body_source,
        origin,
        tokens: &tokens,
        at: 0,
    };
    let mut body = Vec::new();
    while !p.at_eof() {
        body.push(p.stmt()?);
    }
    let body_tokens = render_tokens(&tokens[..tokens.len() - 1]);
    check_params(params, origin, Pos::START)?;
    let kw = match side {
        Side::Instance => "method",
        Side::Class => "classmethod",
    };
    Ok(MethodDef {
        owner: owner.to_string(),
        owner_kind,
        side,
        name: name.to_string(),
        params: params.to_vec(),
        body,
        body_tokens,
        body_source: body_source.to_string(),
        source_text: format!("{kw} {name}({}) {{{body_source}}}", params.join(", ")),
        origin: origin.to_string(),
        pos: Pos::START,
    })
}

pub(crate) enum Decl {
    Class(ClassDef),
    Trait(TraitDef),
}

impl Decl {
    fn name(&self) -> &str {
        match self {
            Decl::Class(c) => &c.name,
            Decl::Trait(t) => &t.name,
        }
    }

    fn location(&self) -> Location {
        match self {
            Decl::Class(c) => Location::new(&c.origin, c.pos),
            Decl::Trait(t) => Location::new(&t.origin, t.pos),
        }
    }
}

type Parts = (IndexMap<String, ClassDef>, IndexMap<String, TraitDef>);

fn assemble(units: impl IntoIterator<Item = Vec<Decl>>) -> Result<Parts, ParseError> {
    let mut classes = IndexMap::new();
    let mut traits = IndexMap::new();
    let mut seen: IndexMap<String, Location> = IndexMap::new();
    let mut errors = Vec::new();
    for decl in units.into_iter().flatten() {
        if let Some(first) = seen.get(decl.name()) {
            let code = match decl {
                Decl::Class(_) => DiagCode::DuplicateClass,
                Decl::Trait(_) => DiagCode::DuplicateTrait,
            };
            errors.push(Diagnostic::error(
                code,
                format!("`{}` is already declared at {first}", decl.name()),
                decl.location(),
            ));
            continue;
        }
        seen.insert(decl.name().to_string(), decl.location());
        match decl {
            Decl::Class(c) => {
                classes.insert(c.name.clone(), c);
            }
            Decl::Trait(t) => {
                traits.insert(t.name.clone(), t);
            }
        }
    }
    if errors.is_empty() {
        Ok((classes, traits))
    } else {
        Err(ParseError {
            diagnostics: errors,
        })
    }
}

fn lex(text: &str, origin: &str) -> Result<Vec<Token>, ParseError> {
    tokenize(text).map_err(|e| {
        ParseError::single(Diagnostic::error(
            DiagCode::SyntaxError,
            e.message,
            Location::new(origin, e.pos),
        ))
    })
}

fn render_tokens(tokens: &[Token]) -> Vec<String> {
    tokens.iter().map(|t| t.kind.to_string()).collect()
}

fn check_params(params: &[String], origin: &str, pos: Pos) -> Result<(), ParseError> {
    let mut seen = HashSet::new();
    for p in params {
        if !seen.insert(p.as_str()) {
            return Err(ParseError::single(Diagnostic::error(
                DiagCode::DuplicateParam,
                format!("duplicate parameter `{p}`"),
                Location::new(origin, pos),
            )));
        }
    }
    Ok(())
}

pub(crate) fn parse_unit(text: &str, origin: &str) -> Result<Vec<Decl>, ParseError> {
    let tokens = lex(text, origin)?;
    let mut p = Parser {
        src: text,
        origin,
        tokens: &tokens,
        at: 0,
    };
    let mut decls = Vec::new();
    let mut errors = Vec::new();
    while !p.at_eof() {
        let decl = p.decl()?;
        errors.extend(member_errors(&decl));
        decls.push(decl);
    }
    if errors.is_empty() {
        Ok(decls)
    } else {
        Err(ParseError {
            diagnostics: errors,
        })
    }
}

/// Uniqueness checks that the grammar alone does not capture.
fn member_errors(decl: &Decl) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let (name, uses, loc) = match decl {
        Decl::Class(c) => (&c.name, &c.uses, decl.location()),
        Decl::Trait(t) => (&t.name, &t.uses, decl.location()),
    };
    let mut seen = HashSet::new();
    for u in uses {
        if !seen.insert(u) {
            out.push(Diagnostic::error(
                DiagCode::DuplicateUse,
                format!("`{name}` uses `{u}` more than once"),
                loc.clone(),
            ));
        }
    }
    if let Decl::Class(c) = decl {
        let mut seen = HashSet::new();
        for v in c.ivars.iter().chain(&c.cvars) {
            if !seen.insert(v) {
                out.push(Diagnostic::error(
                    DiagCode::DuplicateVariable,
                    format!("variable `{v}` is declared more than once in `{name}`"),
                    loc.clone(),
                ));
            }
        }
    }
    out
}

struct Parser<'a> {
    src: &'a str,
    origin: &'a str,
    tokens: &'a [Token],
    at: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> &'a Token {
        &self.tokens[self.at]
    }

    fn peek_kind(&self) -> &'a TokenKind {
        &self.tokens[self.at].kind
    }

    fn peek2_kind(&self) -> &'a TokenKind {
        let i = (self.at + 1).min(self.tokens.len() - 1);
        &self.tokens[i].kind
    }

    fn at_eof(&self) -> bool {
        *self.peek_kind() == TokenKind::Eof
    }

    fn advance(&mut self) -> &'a Token {
        let t = &self.tokens[self.at];
        if t.kind != TokenKind::Eof {
            self.at += 1;
        }
        t
    }

    fn error_at(&self, pos: Pos, message: impl Into<String>) -> ParseError {
        ParseError::single(Diagnostic::error(
            DiagCode::SyntaxError,
            message,
            Location::new(self.origin, pos),
        ))
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let t = self.peek();
        self.error_at(t.pos, format!("expected {expected}, found `{}`", t.kind))
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> PResult<&'a Token> {
        if *self.peek_kind() == kind {
            Ok(self.advance())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn name(&mut self) -> PResult<String> {
        match self.peek_kind() {
            TokenKind::Name(n) => {
                self.advance();
                Ok(n.clone())
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    fn name_list(&mut self) -> PResult<Vec<String>> {
        let mut names = vec![self.name()?];
        while *self.peek_kind() == TokenKind::Comma {
            self.advance();
            names.push(self.name()?);
        }
        Ok(names)
    }

    fn decl(&mut self) -> PResult<Decl> {
        let kw = self.peek();
        match kw.kind {
            TokenKind::Keyword(Keyword::Class) => {
                self.advance();
                let name = self.name()?;
                let super_name = if *self.peek_kind() == TokenKind::Keyword(Keyword::Extends) {
                    self.advance();
                    Some(self.name()?)
                } else {
                    None
                };
                let mut class = ClassDef {
                    name,
                    super_name,
                    uses: Vec::new(),
                    ivars: Vec::new(),
                    cvars: Vec::new(),
                    methods: IndexMap::new(),
                    origin: self.origin.to_string(),
                    pos: kw.pos,
                };
                self.expect(TokenKind::LBrace, "`{`")?;
                while *self.peek_kind() != TokenKind::RBrace {
                    match self.member(OwnerKind::Class, &class.name)? {
                        Member::Vars(v) => class.ivars.extend(v),
                        Member::ClassVars(v) => class.cvars.extend(v),
                        Member::Uses(u) => class.uses.extend(u),
                        Member::Method(m) => insert_method(&mut class.methods, m)?,
                    }
                }
                self.advance();
                Ok(Decl::Class(class))
            }
            TokenKind::Keyword(Keyword::Trait) => {
                self.advance();
                let name = self.name()?;
                let mut tr = TraitDef {
                    name,
                    uses: Vec::new(),
                    methods: IndexMap::new(),
                    origin: self.origin.to_string(),
                    pos: kw.pos,
                };
                self.expect(TokenKind::LBrace, "`{`")?;
                while *self.peek_kind() != TokenKind::RBrace {
                    match self.member(OwnerKind::Trait, &tr.name)? {
                        Member::Uses(u) => tr.uses.extend(u),
                        Member::Method(m) => insert_method(&mut tr.methods, m)?,
                        Member::Vars(_) | Member::ClassVars(_) => {
                            unreachable!("rejected while parsing the member")
                        }
                    }
                }
                self.advance();
                Ok(Decl::Trait(tr))
            }
            _ => Err(self.unexpected("`class` or `trait`")),
        }
    }

    fn member(&mut self, owner_kind: OwnerKind, owner: &str) -> PResult<Member> {
        let t = self.peek();
        let member = match &t.kind {
            TokenKind::Keyword(k @ (Keyword::Vars | Keyword::ClassVars)) => {
                if owner_kind == OwnerKind::Trait {
                    return Err(self.error_at(
                        t.pos,
                        format!(
                            "trait `{owner}` cannot declare variables (`{}`)",
                            k.as_str()
                        ),
                    ));
                }
                self.advance();
                let names = self.name_list()?;
                self.expect(TokenKind::Semi, "`;`")?;
                if *k == Keyword::Vars {
                    Member::Vars(names)
                } else {
                    Member::ClassVars(names)
                }
            }
            TokenKind::Keyword(Keyword::Uses) => {
                self.advance();
                let names = self.name_list()?;
                self.expect(TokenKind::Semi, "`;`")?;
                Member::Uses(names)
            }
            TokenKind::Keyword(k @ (Keyword::Method | Keyword::ClassMethod)) => {
                let side = if *k == Keyword::Method {
                    Side::Instance
                } else {
                    Side::Class
                };
                if side == Side::Class && owner_kind == OwnerKind::Trait {
                    return Err(self.error_at(
                        t.pos,
                        format!("trait `{owner}` cannot declare class-side methods"),
                    ));
                }
                Member::Method(self.method(owner, owner_kind, side)?)
            }
            TokenKind::Eof => return Err(self.unexpected("`}`")),
            _ => return Err(self.unexpected("a member declaration")),
        };
        Ok(member)
    }

    fn method(&mut self, owner: &str, owner_kind: OwnerKind, side: Side) -> PResult<MethodDef> {
        let kw = self.advance();
        let name = self.name()?;
        self.expect(TokenKind::LParen, "`(`")?;
        let params = if *self.peek_kind() == TokenKind::RParen {
            Vec::new()
        } else {
            self.name_list()?
        };
        self.expect(TokenKind::RParen, "`)`")?;
        check_params(&params, self.origin, kw.pos)?;
        let open = self.expect(TokenKind::LBrace, "`{`")?;
        let first = self.at;
        let mut body = Vec::new();
        while *self.peek_kind() != TokenKind::RBrace {
            if self.at_eof() {
                return Err(self.unexpected("`}`"));
            }
            body.push(self.stmt()?);
        }
        let close = self.advance();
        Ok(MethodDef {
            owner: owner.to_string(),
            owner_kind,
            side,
            name,
            params,
            body,
            body_tokens: render_tokens(&self.tokens[first..self.at - 1]),
            body_source: self.src[open.end..close.start].to_string(),
            source_text: self.src[kw.start..close.end].to_string(),
            origin: self.origin.to_string(),
            pos: kw.pos,
        })
    }

    fn stmt(&mut self) -> PResult<Stmt> {
        let t = self.peek();
        let stmt = match (&t.kind, self.peek2_kind()) {
            (TokenKind::Name(target), TokenKind::Eq) => {
                self.advance();
                self.advance();
                Stmt::Assign {
                    target: target.clone(),
                    value: self.expr()?,
                    pos: t.pos,
                }
            }
            _ => Stmt::Expr(self.expr()?),
        };
        self.expect(TokenKind::Semi, "`;`")?;
        Ok(stmt)
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut expr = self.primary()?;
        if expr.kind == ExprKind::SuperRef && *self.peek_kind() != TokenKind::Dot {
            return Err(self.error_at(
                expr.pos,
                "`super` may only be used as the receiver of a message send",
            ));
        }
        while *self.peek_kind() == TokenKind::Dot {
            self.advance();
            let selector = self.name()?;
            self.expect(TokenKind::LParen, "`(`")?;
            let mut args = Vec::new();
            if *self.peek_kind() != TokenKind::RParen {
                args.push(self.expr()?);
                while *self.peek_kind() == TokenKind::Comma {
                    self.advance();
                    args.push(self.expr()?);
                }
            }
            self.expect(TokenKind::RParen, "`)`")?;
            let pos = expr.pos;
            expr = Expr {
                kind: ExprKind::Send {
                    receiver: Box::new(expr),
                    selector,
                    args,
                },
                pos,
            };
        }
        Ok(expr)
    }

    fn primary(&mut self) -> PResult<Expr> {
        let t = self.peek();
        let kind = match &t.kind {
            TokenKind::Keyword(Keyword::SelfKw) => ExprKind::SelfRef,
            TokenKind::Keyword(Keyword::Super) => ExprKind::SuperRef,
            TokenKind::Name(n) => ExprKind::Name(n.clone()),
            TokenKind::Number(n) => ExprKind::Number(n.clone()),
            TokenKind::Str(s) => ExprKind::Str(s.clone()),
            TokenKind::LParen => {
                self.advance();
                let inner = self.expr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                return Ok(Expr {
                    kind: ExprKind::Paren(Box::new(inner)),
                    pos: t.pos,
                });
            }
            _ => return Err(self.unexpected("an expression")),
        };
        self.advance();
        Ok(Expr { kind, pos: t.pos })
    }
}

enum Member {
    Vars(Vec<String>),
    ClassVars(Vec<String>),
    Uses(Vec<String>),
    Method(MethodDef),
}

fn insert_method(
    methods: &mut IndexMap<MethodKey, MethodDef>,
    m: MethodDef,
) -> Result<(), ParseError> {
    let key = m.key();
    if let Some(prev) = methods.get(&key) {
        return Err(ParseError::single(Diagnostic::error(
            DiagCode::DuplicateMethod,
            format!(
                "`{}>>{key}` is already defined at {}",
                m.owner,
                Location::new(&prev.origin, prev.pos)
            ),
            Location::new(&m.origin, m.pos),
        )));
    }
    methods.insert(key, m);
    Ok(())
}
