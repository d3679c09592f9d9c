//! Reader for `.alm` text.
//!
//! The format is line-oriented: one statement per line, `%` comments, an
//! optional trailing period per statement. Two-space indentation is the
//! conventional layout but parsing is driven by statement shape, not
//! indentation. Identifiers starting with a lowercase letter are constant
//! symbols; uppercase-initial identifiers are variables.
//!
//! Statement shapes:
//!
//! ```text
//! system description <name>
//! theory <name>
//! import from <library> module <module>
//! module <name>
//! depends on <m1>, <m2>
//! <s1>, <s2> :: <p1>, <p2>           sort declaration
//! attributes                          opens an attribute block
//! <attr> : <a1> x <a2> -> <range>     attribute (inside the block)
//! fluent|static basic|defined <f> : <a1> x <a2> -> <range>
//! occurs(X) causes <lit> if <body>    dynamic causal law
//! impossible occurs(X) if <body>      executability condition
//! false if <body>                     state constraint
//! <lit> if <body>                     state constraint or definition
//! structure <name>
//! instances
//! <head> in <sort>                    instance or instance schema
//! <attr> = <v>                        attribute assignment (functional)
//! <attr>(<args>) = <v>                attribute assignment (relational)
//! statics
//! <f>(<args>) = <v>                   static value
//! ```
//!
//! Whether a `<lit> if <body>` statement is a state constraint or a
//! definition is resolved by the head symbol's declared kind once the
//! enclosing module has been read (defined functions give definitions).
//! The first error aborts the parse.

use crate::alm::ast::*;
use crate::span::Span;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{span}: syntax error: {message}")]
    Syntax { span: Span, message: String },
    #[error("{span}: unknown keyword `{word}`")]
    UnknownKeyword { span: Span, word: String },
}

impl ParseError {
    pub fn span(&self) -> Span {
        match self {
            ParseError::Syntax { span, .. } | ParseError::UnknownKeyword { span, .. } => *span,
        }
    }

    fn syntax(span: Span, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            span,
            message: message.into(),
        }
    }
}

// ---------------------------------------------------------------------------
// Line scanner
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(&'static str), // one of :: : , ( ) = != -> - .
}

struct Scanner {
    toks: Vec<(Tok, u32)>, // token and 1-based start column
    pos: usize,
    line: u32,
    len: u32,
}

impl Scanner {
    fn new(line_no: u32, text: &str) -> Result<Self, ParseError> {
        let mut toks = Vec::new();
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0usize;
        while i < chars.len() {
            let c = chars[i];
            let col = (i + 1) as u32;
            if c.is_whitespace() {
                i += 1;
            } else if c == '%' {
                break;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s.parse::<i64>().map_err(|_| {
                    ParseError::syntax(Span::line(line_no, col, col), "integer out of range")
                })?;
                toks.push((Tok::Int(n), col));
            } else {
                let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
                let sym = match two.as_str() {
                    "::" => Some(("::", 2)),
                    "!=" => Some(("!=", 2)),
                    "->" => Some(("->", 2)),
                    _ => None,
                };
                let (s, n) = if let Some((s, n)) = sym {
                    (s, n)
                } else {
                    match c {
                        ':' => (":", 1),
                        ',' => (",", 1),
                        '(' => ("(", 1),
                        ')' => (")", 1),
                        '=' => ("=", 1),
                        '-' => ("-", 1),
                        '.' => (".", 1),
                        _ => {
                            return Err(ParseError::syntax(
                                Span::line(line_no, col, col),
                                format!("unexpected character `{c}`"),
                            ))
                        }
                    }
                };
                toks.push((Tok::Sym(s), col));
                i += n;
            }
        }
        // A single trailing period is accepted and ignored.
        if matches!(toks.last(), Some((Tok::Sym("."), _))) {
            toks.pop();
        }
        Ok(Scanner {
            toks,
            pos: 0,
            line: line_no,
            len: text.chars().count() as u32,
        })
    }

    fn span_here(&self) -> Span {
        let col = self
            .toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.len.max(1));
        Span::line(self.line, col, col)
    }

    fn line_span(&self) -> Span {
        Span::line(self.line, 1, self.len.max(1))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(t, _)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(x)) if *x == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(ParseError::syntax(
                self.span_here(),
                format!("expected `{s}`"),
            ))
        }
    }

    fn eat_ident(&mut self, word: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(x)) if x == word) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_ident_word(&mut self, word: &str) -> Result<(), ParseError> {
        if self.eat_ident(word) {
            Ok(())
        } else {
            Err(ParseError::syntax(
                self.span_here(),
                format!("expected `{word}`"),
            ))
        }
    }

    fn expect_name(&mut self) -> Result<String, ParseError> {
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => Err(ParseError::syntax(self.span_here(), "expected identifier")),
        }
    }

    fn expect_lower_name(&mut self) -> Result<String, ParseError> {
        let span = self.span_here();
        let s = self.expect_name()?;
        if is_variable_name(&s) {
            return Err(ParseError::syntax(
                span,
                format!("expected constant symbol, found variable `{s}`"),
            ));
        }
        Ok(s)
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(ParseError::syntax(self.span_here(), "trailing input"))
        }
    }

    /// Comma-separated identifiers.
    fn name_list(&mut self) -> Result<Vec<String>, ParseError> {
        let mut out = vec![self.expect_lower_name()?];
        while self.eat_sym(",") {
            out.push(self.expect_lower_name()?);
        }
        Ok(out)
    }

    /// Sort list separated by `x` (as in `s1 x s2`).
    fn sort_product(&mut self) -> Result<Vec<String>, ParseError> {
        let mut out = vec![self.expect_lower_name()?];
        while self.eat_ident("x") {
            out.push(self.expect_lower_name()?);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(Term::Int(n)),
            Some(Tok::Ident(name)) => {
                if matches!(self.peek(), Some(Tok::Sym("("))) {
                    if is_variable_name(&name) {
                        return Err(ParseError::syntax(
                            self.span_here(),
                            "variable cannot be applied to arguments",
                        ));
                    }
                    self.next();
                    let mut args = vec![self.term()?];
                    while self.eat_sym(",") {
                        args.push(self.term()?);
                    }
                    self.expect_sym(")")?;
                    Ok(Term::App(name, args))
                } else if is_variable_name(&name) {
                    Ok(Term::Var(name))
                } else {
                    Ok(Term::Const(name))
                }
            }
            _ => Err(ParseError::syntax(self.span_here(), "expected term")),
        }
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let positive = !self.eat_sym("-");
        // `instance(t, s)` is a membership literal, not a function.
        if matches!(self.peek(), Some(Tok::Ident(w)) if w == "instance")
            && matches!(self.peek_at(1), Some(Tok::Sym("(")))
        {
            self.next();
            self.next();
            let term = self.term()?;
            self.expect_sym(",")?;
            let sort = self.expect_lower_name()?;
            self.expect_sym(")")?;
            let lit = Literal::pos(AlmAtom::Instance { term, sort });
            return Ok(if positive { lit } else { lit.negated() });
        }
        let left = self.term()?;
        if self.eat_sym("!=") {
            let right = self.term()?;
            let lit = Literal::pos(AlmAtom::Cmp {
                op: CmpOp::Neq,
                left,
                right,
            });
            return Ok(if positive { lit } else { lit.negated() });
        }
        if self.eat_sym("=") {
            let right = self.term()?;
            let lit = match left {
                // `f(args) = v` and `f = v` are function applications with
                // a value; a variable on the left is a plain comparison.
                Term::App(symbol, args) => Literal::pos(AlmAtom::Apply {
                    symbol,
                    args,
                    value: Some(right),
                }),
                Term::Const(symbol) => Literal::pos(AlmAtom::Apply {
                    symbol,
                    args: vec![],
                    value: Some(right),
                }),
                left => Literal::pos(AlmAtom::Cmp {
                    op: CmpOp::Eq,
                    left,
                    right,
                }),
            };
            return Ok(if positive { lit } else { lit.negated() });
        }
        let lit = match left {
            Term::App(symbol, args) => Literal::pos(AlmAtom::Apply {
                symbol,
                args,
                value: None,
            }),
            Term::Const(symbol) => Literal::pos(AlmAtom::Apply {
                symbol,
                args: vec![],
                value: None,
            }),
            _ => {
                return Err(ParseError::syntax(
                    self.span_here(),
                    "expected function application",
                ))
            }
        };
        Ok(if positive { lit } else { lit.negated() })
    }

    fn literal_list(&mut self) -> Result<Vec<Literal>, ParseError> {
        let mut out = vec![self.literal()?];
        while self.eat_sym(",") {
            out.push(self.literal()?);
        }
        Ok(out)
    }

    /// `occurs(X)` — returns the trigger variable name.
    fn occurs_trigger(&mut self) -> Result<String, ParseError> {
        self.expect_ident_word("occurs")?;
        self.expect_sym("(")?;
        let span = self.span_here();
        let v = self.expect_name()?;
        if !is_variable_name(&v) {
            return Err(ParseError::syntax(span, "occurs(...) expects a variable"));
        }
        self.expect_sym(")")?;
        Ok(v)
    }
}

// ---------------------------------------------------------------------------
// Statement classification
// ---------------------------------------------------------------------------

enum Stmt {
    SystemDescription(String),
    Theory(String),
    Import(ImportDecl),
    Module(String),
    DependsOn(Vec<String>),
    SortDecl(SortDecl),
    AttributesHeader,
    FunctionDecl(FunctionDecl),
    Axiom(RawAxiom),
    Structure(String),
    InstancesHeader,
    StaticsHeader,
    /// `heads in sort`
    Instance(Vec<Term>, String, Span),
    /// `name(args) = value` or `name = value`
    Assignment(String, Vec<Term>, Term, bool, Span),
    /// `name : args -> range` (attribute line; only valid in a block)
    AttrLine(Vec<String>, AttributeDecl),
}

enum RawAxiom {
    Causal {
        trigger: String,
        head: Literal,
        body: Vec<Literal>,
        span: Span,
    },
    Impossible {
        trigger: String,
        body: Vec<Literal>,
        span: Span,
    },
    FalseIf {
        body: Vec<Literal>,
        span: Span,
    },
    HeadIf {
        head: Literal,
        body: Vec<Literal>,
        span: Span,
    },
}

fn classify(line_no: u32, text: &str) -> Result<Option<Stmt>, ParseError> {
    let mut s = Scanner::new(line_no, text)?;
    if s.at_end() {
        return Ok(None);
    }
    let span = s.line_span();
    let stmt = match s.peek() {
        Some(Tok::Ident(w)) => match w.as_str() {
            "system" => {
                s.next();
                s.expect_ident_word("description")?;
                let name = s.expect_lower_name()?;
                s.expect_end()?;
                Stmt::SystemDescription(name)
            }
            "theory" => {
                s.next();
                let name = s.expect_lower_name()?;
                s.expect_end()?;
                Stmt::Theory(name)
            }
            "import" => {
                s.next();
                s.expect_ident_word("from")?;
                let library = s.expect_lower_name()?;
                s.expect_ident_word("module")?;
                let module = s.expect_lower_name()?;
                s.expect_end()?;
                Stmt::Import(ImportDecl {
                    library,
                    module,
                    span,
                })
            }
            "module" => {
                s.next();
                let name = s.expect_lower_name()?;
                s.expect_end()?;
                Stmt::Module(name)
            }
            "depends" => {
                s.next();
                s.expect_ident_word("on")?;
                let deps = s.name_list()?;
                s.expect_end()?;
                Stmt::DependsOn(deps)
            }
            "attributes" => {
                s.next();
                s.expect_end()?;
                Stmt::AttributesHeader
            }
            "structure" => {
                s.next();
                let name = s.expect_lower_name()?;
                s.expect_end()?;
                Stmt::Structure(name)
            }
            "instances" => {
                s.next();
                s.expect_end()?;
                Stmt::InstancesHeader
            }
            "statics" => {
                s.next();
                s.expect_end()?;
                Stmt::StaticsHeader
            }
            "fluent" | "static" => {
                let is_fluent = w == "fluent";
                s.next();
                let kind = match s.next() {
                    Some(Tok::Ident(k)) if k == "basic" => {
                        if is_fluent {
                            FunctionKind::BasicFluent
                        } else {
                            FunctionKind::BasicStatic
                        }
                    }
                    Some(Tok::Ident(k)) if k == "defined" => {
                        if is_fluent {
                            FunctionKind::DefinedFluent
                        } else {
                            FunctionKind::DefinedStatic
                        }
                    }
                    _ => {
                        return Err(ParseError::syntax(
                            s.span_here(),
                            "expected `basic` or `defined`",
                        ))
                    }
                };
                let name = s.expect_lower_name()?;
                s.expect_sym(":")?;
                let mut arg_sorts = s.sort_product()?;
                let range = if s.eat_sym("->") {
                    s.expect_lower_name()?
                } else {
                    // `f : range` declares a zero-argument function.
                    if arg_sorts.len() != 1 {
                        return Err(ParseError::syntax(s.span_here(), "expected `->`"));
                    }
                    arg_sorts.remove(0)
                };
                s.expect_end()?;
                Stmt::FunctionDecl(FunctionDecl {
                    name,
                    kind,
                    arg_sorts,
                    range,
                    span,
                })
            }
            "occurs" => {
                let trigger = s.occurs_trigger()?;
                s.expect_ident_word("causes")?;
                let head = s.literal()?;
                let body = if s.eat_ident("if") {
                    s.literal_list()?
                } else {
                    vec![]
                };
                s.expect_end()?;
                Stmt::Axiom(RawAxiom::Causal {
                    trigger,
                    head,
                    body,
                    span,
                })
            }
            "impossible" => {
                s.next();
                let trigger = s.occurs_trigger()?;
                s.expect_ident_word("if")?;
                let body = s.literal_list()?;
                s.expect_end()?;
                Stmt::Axiom(RawAxiom::Impossible {
                    trigger,
                    body,
                    span,
                })
            }
            "false" => {
                s.next();
                s.expect_ident_word("if")?;
                let body = s.literal_list()?;
                s.expect_end()?;
                Stmt::Axiom(RawAxiom::FalseIf { body, span })
            }
            _ => return classify_shaped(s, span),
        },
        _ => return classify_shaped(s, span),
    };
    Ok(Some(stmt))
}

/// Statements recognized by shape rather than a leading keyword: sort
/// declarations, attribute lines, instance declarations, assignments, and
/// `<lit> if <body>` axioms.
fn classify_shaped(mut s: Scanner, span: Span) -> Result<Option<Stmt>, ParseError> {
    let has = |sym: &str| s.toks.iter().any(|(t, _)| matches!(t, Tok::Sym(x) if *x == sym));
    let has_word = |w: &str| s.toks.iter().any(|(t, _)| matches!(t, Tok::Ident(x) if x == w));

    if has("::") {
        let names = s.name_list()?;
        s.expect_sym("::")?;
        let parents = s.name_list()?;
        s.expect_end()?;
        return Ok(Some(Stmt::SortDecl(SortDecl {
            names,
            parents,
            attributes: vec![],
            span,
        })));
    }
    if has_word("in") && !has_word("if") {
        let mut heads = vec![s.term()?];
        while s.eat_sym(",") {
            heads.push(s.term()?);
        }
        s.expect_ident_word("in")?;
        let sort = s.expect_lower_name()?;
        s.expect_end()?;
        return Ok(Some(Stmt::Instance(heads, sort, span)));
    }
    if has_word("if") {
        let head = s.literal()?;
        s.expect_ident_word("if")?;
        let body = s.literal_list()?;
        s.expect_end()?;
        return Ok(Some(Stmt::Axiom(RawAxiom::HeadIf { head, body, span })));
    }
    if has(":") {
        // Attribute line: `a, b : s1 x s2 -> range` or `a : range`.
        let names = s.name_list()?;
        s.expect_sym(":")?;
        let mut arg_sorts = s.sort_product()?;
        let range = if s.eat_sym("->") {
            s.expect_lower_name()?
        } else {
            if arg_sorts.len() != 1 {
                return Err(ParseError::syntax(s.span_here(), "expected `->`"));
            }
            arg_sorts.remove(0)
        };
        s.expect_end()?;
        let decl = AttributeDecl {
            name: String::new(),
            arg_sorts,
            range,
            span,
        };
        return Ok(Some(Stmt::AttrLine(names, decl)));
    }
    if has("=") {
        let (symbol, args) = match s.term()? {
            Term::App(name, args) => (name, args),
            Term::Const(name) => (name, vec![]),
            _ => {
                return Err(ParseError::syntax(
                    span,
                    "expected attribute or static assignment",
                ))
            }
        };
        let functional = args.is_empty();
        s.expect_sym("=")?;
        let value = s.term()?;
        s.expect_end()?;
        return Ok(Some(Stmt::Assignment(symbol, args, value, functional, span)));
    }
    match s.peek() {
        Some(Tok::Ident(w)) => Err(ParseError::UnknownKeyword {
            span,
            word: w.clone(),
        }),
        _ => Err(ParseError::syntax(span, "unrecognized statement")),
    }
}

// ---------------------------------------------------------------------------
// Tree building
// ---------------------------------------------------------------------------

struct ModuleBuilder {
    module: ModuleDecl,
    raw_axioms: Vec<RawAxiom>,
    in_attributes: bool,
}

impl ModuleBuilder {
    fn new(name: String, span: Span) -> Self {
        ModuleBuilder {
            module: ModuleDecl {
                name,
                span,
                ..Default::default()
            },
            raw_axioms: vec![],
            in_attributes: false,
        }
    }

    fn push(&mut self, stmt: Stmt, span: Span) -> Result<(), ParseError> {
        match stmt {
            Stmt::DependsOn(deps) => {
                self.in_attributes = false;
                self.module.depends_on.extend(deps);
            }
            Stmt::SortDecl(d) => {
                self.in_attributes = false;
                self.module.sorts.push(d);
            }
            Stmt::AttributesHeader => {
                if self.module.sorts.is_empty() {
                    return Err(ParseError::syntax(
                        span,
                        "attributes block requires a preceding sort declaration",
                    ));
                }
                self.in_attributes = true;
            }
            Stmt::AttrLine(names, decl) => {
                if !self.in_attributes {
                    return Err(ParseError::syntax(
                        span,
                        "attribute line outside an attributes block",
                    ));
                }
                let owner = self.module.sorts.last_mut().unwrap();
                for name in names {
                    owner.attributes.push(AttributeDecl {
                        name,
                        ..decl.clone()
                    });
                }
            }
            Stmt::FunctionDecl(f) => {
                self.in_attributes = false;
                self.module.functions.push(f);
            }
            Stmt::Axiom(a) => {
                self.in_attributes = false;
                self.raw_axioms.push(a);
            }
            _ => return Err(ParseError::syntax(span, "statement not valid in a module")),
        }
        Ok(())
    }

    /// Resolves `<lit> if <body>` statements: heads over locally declared
    /// defined functions become definitions, everything else a constraint.
    fn finish(mut self) -> ModuleDecl {
        let defined: Vec<String> = self
            .module
            .functions
            .iter()
            .filter(|f| f.kind.is_defined())
            .map(|f| f.name.clone())
            .collect();
        for raw in self.raw_axioms.drain(..) {
            let axiom = match raw {
                RawAxiom::Causal {
                    trigger,
                    head,
                    body,
                    span,
                } => Axiom::DynamicCausal {
                    trigger,
                    head,
                    body,
                    span,
                },
                RawAxiom::Impossible {
                    trigger,
                    body,
                    span,
                } => Axiom::Executability {
                    trigger,
                    body,
                    span,
                },
                RawAxiom::FalseIf { body, span } => Axiom::StateConstraint {
                    head: None,
                    body,
                    span,
                },
                RawAxiom::HeadIf { head, body, span } => {
                    let is_def = head
                        .symbol()
                        .is_some_and(|sym| defined.iter().any(|d| d == sym));
                    if is_def {
                        Axiom::Definition { head, body, span }
                    } else {
                        Axiom::StateConstraint {
                            head: Some(head),
                            body,
                            span,
                        }
                    }
                }
            };
            self.module.axioms.push(axiom);
        }
        self.module
    }
}

struct Parser {
    stmts: Vec<(Stmt, Span)>,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        let mut stmts = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = (idx + 1) as u32;
            if let Some(stmt) = classify(line_no, raw)? {
                let span = Span::line(line_no, 1, raw.chars().count().max(1) as u32);
                stmts.push((stmt, span));
            }
        }
        Ok(Parser { stmts })
    }
}

/// Parses a single module file (starting with `module <name>`).
pub fn parse_module(text: &str) -> Result<ModuleDecl, ParseError> {
    let modules = parse_modules(text)?;
    match modules.len() {
        1 => Ok(modules.into_iter().next().unwrap()),
        0 => Err(ParseError::syntax(Span::line(1, 1, 1), "expected a module")),
        _ => Err(ParseError::syntax(
            modules[1].span,
            "expected a single module",
        )),
    }
}

/// Parses a sequence of module declarations.
pub fn parse_modules(text: &str) -> Result<Vec<ModuleDecl>, ParseError> {
    let parser = Parser::new(text)?;
    let mut modules: Vec<ModuleDecl> = Vec::new();
    let mut current: Option<ModuleBuilder> = None;
    for (stmt, span) in parser.stmts {
        match stmt {
            Stmt::Module(name) => {
                if let Some(b) = current.take() {
                    modules.push(b.finish());
                }
                current = Some(ModuleBuilder::new(name, span));
            }
            other => match current.as_mut() {
                Some(b) => b.push(other, span)?,
                None => {
                    return Err(ParseError::syntax(
                        span,
                        "expected `module <name>` before declarations",
                    ))
                }
            },
        }
    }
    if let Some(b) = current.take() {
        modules.push(b.finish());
    }
    Ok(modules)
}

/// Parses a complete system description.
pub fn parse_system_description(text: &str) -> Result<SystemDescription, ParseError> {
    #[derive(PartialEq)]
    enum Section {
        Start,
        Theory,
        Module,
        Structure,
        Instances,
        Statics,
    }
    let parser = Parser::new(text)?;
    let mut sd = SystemDescription::default();
    let mut section = Section::Start;
    let mut builder: Option<ModuleBuilder> = None;
    let mut saw_header = false;

    for (stmt, span) in parser.stmts {
        match stmt {
            Stmt::SystemDescription(name) => {
                if saw_header {
                    return Err(ParseError::syntax(span, "duplicate system description"));
                }
                saw_header = true;
                sd.name = name;
            }
            Stmt::Theory(name) => {
                if !saw_header {
                    return Err(ParseError::syntax(span, "expected `system description`"));
                }
                sd.theory_name = name;
                section = Section::Theory;
            }
            Stmt::Import(imp) => {
                if section != Section::Theory && section != Section::Module {
                    return Err(ParseError::syntax(span, "import outside a theory"));
                }
                if let Some(b) = builder.take() {
                    sd.modules.push(b.finish());
                }
                section = Section::Theory;
                sd.imports.push(imp);
            }
            Stmt::Module(name) => {
                if section != Section::Theory && section != Section::Module {
                    return Err(ParseError::syntax(span, "module outside a theory"));
                }
                if let Some(b) = builder.take() {
                    sd.modules.push(b.finish());
                }
                section = Section::Module;
                builder = Some(ModuleBuilder::new(name, span));
            }
            Stmt::Structure(name) => {
                if let Some(b) = builder.take() {
                    sd.modules.push(b.finish());
                }
                sd.structure.name = name;
                section = Section::Structure;
            }
            Stmt::InstancesHeader => {
                if section != Section::Structure && section != Section::Statics {
                    return Err(ParseError::syntax(span, "instances outside a structure"));
                }
                section = Section::Instances;
            }
            Stmt::StaticsHeader => {
                if !matches!(section, Section::Structure | Section::Instances) {
                    return Err(ParseError::syntax(span, "statics outside a structure"));
                }
                section = Section::Statics;
            }
            Stmt::Instance(heads, sort, span) => {
                if section != Section::Instances {
                    return Err(ParseError::syntax(
                        span,
                        "instance declaration outside an instances section",
                    ));
                }
                for head in heads {
                    sd.structure.instances.push(InstanceDecl {
                        head,
                        sort: sort.clone(),
                        assigns: vec![],
                        span,
                    });
                }
            }
            Stmt::Assignment(symbol, args, value, functional, span) => match section {
                Section::Instances => {
                    let inst = sd.structure.instances.last_mut().ok_or_else(|| {
                        ParseError::syntax(span, "assignment before any instance")
                    })?;
                    // `attr = v` is sugar for `attr(v) = true`.
                    let (args, value, functional) = if functional {
                        (vec![value], Term::boolean(true), true)
                    } else {
                        (args, value, false)
                    };
                    inst.assigns.push(AttrAssign {
                        attr: symbol,
                        args,
                        value,
                        functional,
                        span,
                    });
                }
                Section::Statics => {
                    sd.structure.statics.push(StaticAssign {
                        symbol,
                        args,
                        value,
                        span,
                    });
                }
                Section::Module | Section::Theory => {
                    return Err(ParseError::syntax(span, "assignment outside a structure"))
                }
                _ => return Err(ParseError::syntax(span, "assignment outside a structure")),
            },
            other => match (&mut builder, &section) {
                (Some(b), Section::Module) => b.push(other, span)?,
                _ => {
                    return Err(ParseError::syntax(
                        span,
                        "statement not valid in this position",
                    ))
                }
            },
        }
    }
    if let Some(b) = builder.take() {
        sd.modules.push(b.finish());
    }
    if !saw_header {
        return Err(ParseError::syntax(
            Span::line(1, 1, 1),
            "expected `system description <name>`",
        ));
    }
    Ok(sd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alm::print;

    const WRESTLER: &str = "\
system description wrestler_and_opponent
  theory wrestler_and_opponent
    import from corealmlib module unrestraining_and_restraining
  structure wrestler_and_opponent
    instances
      wrestler, opponent in living_entity
      r in restrain
        agent(wrestler) = true
        object(opponent) = true
";

    const MOTION: &str = "\
system description motion_example
  theory motion_example
    module motion_example
      points, things :: universe
      agents :: things
      move :: actions
        attributes
          actor : agents
          origin, dest : points
      fluent basic loc_in : things -> points
      occurs(X) causes loc_in(A) = D if instance(X, move), actor(X) = A, dest(X) = D
  structure motion_example
    instances
      john, bob in agents
      a, b in points
      go(X, Y) in move
        actor = X
        dest = Y
";

    #[test]
    fn wrestler_text_parses() {
        let sd = parse_system_description(WRESTLER).unwrap();
        assert_eq!(sd.name, "wrestler_and_opponent");
        assert_eq!(sd.imports.len(), 1);
        assert_eq!(sd.imports[0].module, "unrestraining_and_restraining");
        assert_eq!(sd.structure.instances.len(), 3);
        let r = &sd.structure.instances[2];
        assert_eq!(r.sort, "restrain");
        assert_eq!(r.assigns.len(), 2);
        assert_eq!(r.assigns[0].attr, "agent");
        assert_eq!(r.assigns[0].args, vec![Term::constant("wrestler")]);
        assert_eq!(r.assigns[0].value, Term::boolean(true));
    }

    #[test]
    fn motion_fragment_parses() {
        let sd = parse_system_description(MOTION).unwrap();
        let m = sd.module("motion_example").unwrap();
        let causal: Vec<_> = m
            .axioms
            .iter()
            .filter(|a| matches!(a, Axiom::DynamicCausal { .. }))
            .collect();
        assert_eq!(causal.len(), 1);
        assert_eq!(m.sorts.len(), 3);
        assert_eq!(m.sorts[2].attributes.len(), 3);
        let schemas: Vec<_> = sd.structure.schemas().collect();
        assert_eq!(schemas.len(), 1);
        assert_eq!(
            schemas[0].head,
            Term::App("go".into(), vec![Term::var("X"), Term::var("Y")])
        );
    }

    #[test]
    fn empty_structure_section() {
        let text = "system description d\n  theory d\n  structure d\n";
        let sd = parse_system_description(text).unwrap();
        assert!(sd.structure.instances.is_empty());
    }

    #[test]
    fn module_depends_on() {
        let m = parse_module("module a\n  depends on motion\n").unwrap();
        assert_eq!(m.depends_on, vec!["motion".to_string()]);
    }

    #[test]
    fn malformed_axiom_is_error_with_span() {
        let err = parse_module("module a\n occurs(X) causes\n").unwrap_err();
        assert_eq!(err.span().line, 2);
    }

    #[test]
    fn trailing_period_accepted() {
        let m1 = parse_module("module a\n  p :: universe.\n").unwrap();
        let m2 = parse_module("module a\n  p :: universe\n").unwrap();
        assert_eq!(m1, m2);
    }

    #[test]
    fn trailing_garbage_is_error() {
        assert!(parse_module("module a\n  p :: universe universe\n").is_err());
    }

    #[test]
    fn definition_vs_constraint_resolved_by_kind() {
        let text = "\
module a
  p :: universe
  fluent basic f : p -> booleans
  fluent defined d : p -> booleans
  d(X) if f(X)
  f(X) if f(X)
";
        let m = parse_module(text).unwrap();
        assert!(matches!(m.axioms[0], Axiom::Definition { .. }));
        assert!(matches!(m.axioms[1], Axiom::StateConstraint { .. }));
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "% header\nmodule a\n\n  p :: universe  % trailing\n";
        let m = parse_module(text).unwrap();
        assert_eq!(m.sorts.len(), 1);
    }

    #[test]
    fn roundtrip_wrestler_and_motion() {
        for text in [WRESTLER, MOTION] {
            let sd = parse_system_description(text).unwrap();
            let printed = print::system_description(&sd);
            let reparsed = parse_system_description(&printed).unwrap();
            assert_eq!(sd, reparsed, "printed:\n{printed}");
            // Printing is a fixpoint after one iteration.
            assert_eq!(printed, print::system_description(&reparsed));
        }
    }

    #[test]
    fn roundtrip_module_with_axioms() {
        let text = "\
module unrestraining_and_restraining
  depends on unobstructing_and_obstructing
  restrain, unrestrain :: actions
  fluent basic is_restrained : tangible_entity -> booleans
  occurs(X) causes is_restrained(A) if instance(X, restrain), object(X, A)
  occurs(X) causes -is_restrained(A) if instance(X, unrestrain), object(X, A), is_restrained(A)
  impossible occurs(X) if instance(X, restrain), object(X, A), is_restrained(A)
  false if instance(X, restrain), A != A
";
        let m = parse_module(text).unwrap();
        let printed = print::module(&m);
        let reparsed = parse_module(&printed).unwrap();
        assert_eq!(m, reparsed, "printed:\n{printed}");
    }
}
