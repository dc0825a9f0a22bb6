//! Fixture files: declarations followed by `run` commands.
//!
//! ```text
//! field Q = rationals
//! field L = extend Q a [-2 0 1]
//! subfield F = base L
//! bimodule P = regular F
//! run min-poly P a expect pretty=x^2 - 2
//! ```
//!
//! Every declaration is `KIND NAME = CONSTRUCTOR ARG...`; a command is
//! `run COMMAND ARG... [expect KEY=VALUE]... [expect-error KIND]`. Arguments
//! are checked against a fixed signature, and references must name an
//! earlier declaration of the right kind.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::syntax::{statements, Pos, Sexp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Field,
    Element,
    Subfield,
    Context,
    Group,
    Automorphisms,
    Hopf,
    Coaction,
    Bimodule,
    Matrix,
    MultiBimodule,
    MatrixBimodule,
}

impl Kind {
    const ALL: [Kind; 12] = [
        Kind::Field,
        Kind::Element,
        Kind::Subfield,
        Kind::Context,
        Kind::Group,
        Kind::Automorphisms,
        Kind::Hopf,
        Kind::Coaction,
        Kind::Bimodule,
        Kind::Matrix,
        Kind::MultiBimodule,
        Kind::MatrixBimodule,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Field => "field",
            Kind::Element => "element",
            Kind::Subfield => "subfield",
            Kind::Context => "context",
            Kind::Group => "group",
            Kind::Automorphisms => "automorphisms",
            Kind::Hopf => "hopf",
            Kind::Coaction => "coaction",
            Kind::Bimodule => "bimodule",
            Kind::Matrix => "matrix",
            Kind::MultiBimodule => "multibimodule",
            Kind::MatrixBimodule => "matrixbimodule",
        }
    }

    fn from_keyword(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.keyword() == s)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Shape of one argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arg {
    Ref(Kind),
    /// `[NAME ...]` of one kind.
    Refs(Kind),
    Int,
    /// `[n ...]`
    Ints,
    /// A bare word such as a variable name or a keyword option.
    Word,
    /// A field element, evaluated later against a field.
    Expr,
    /// `[e ...]`
    Exprs,
    /// `[[e ...] ...]`
    Rows,
    /// `[[[e ...] ...] ...]`, a list of matrices.
    Matrices,
}

fn constructor(kind: Kind, ctor: &str) -> Option<&'static [Arg]> {
    use Arg::*;
    use Kind as K;
    Some(match (kind, ctor) {
        (K::Field, "rationals") => &[],
        (K::Field, "prime") => &[Int],
        (K::Field, "cyclotomic") => &[Int],
        (K::Field, "function") => &[Ref(K::Field), Word],
        (K::Field, "extend") => &[Ref(K::Field), Word, Exprs],
        (K::Element, "value") => &[Ref(K::Field), Expr],
        (K::Subfield, "base") => &[Ref(K::Field)],
        (K::Subfield, "layer") => &[Ref(K::Field), Ref(K::Field)],
        (K::Subfield, "invariants") => &[Ref(K::Coaction)],
        (K::Context, "split") => &[Ref(K::Field)],
        (K::Context, "pool") => &[Ref(K::Field), Exprs],
        (K::Group, "cyclic") => &[Int],
        (K::Group, "symmetric") => &[Int],
        (K::Group, "product") => &[Ref(K::Group), Ref(K::Group)],
        (K::Automorphisms, "of") => &[Ref(K::Field), Ref(K::Context)],
        (K::Hopf, "taft") => &[Ref(K::Field), Int, Int, Expr],
        (K::Hopf, "group-algebra") => &[Ref(K::Field), Ref(K::Group)],
        (K::Hopf, "nichols16") => &[Ref(K::Field)],
        (K::Hopf, "dual") => &[Ref(K::Hopf)],
        (K::Coaction, "images") => &[Ref(K::Field), Ref(K::Hopf), Rows],
        (K::Coaction, "trivial") => &[Ref(K::Field), Ref(K::Hopf)],
        (K::Coaction, "galois") => &[Ref(K::Automorphisms)],
        (K::Bimodule, "regular") => &[Ref(K::Subfield)],
        (K::Bimodule, "trivial") => &[Ref(K::Field), Int],
        (K::Bimodule, "pnlg") => &[Ref(K::Automorphisms), Ints],
        (K::Bimodule, "coaction") => &[Ref(K::Coaction)],
        (K::Bimodule, "tensor") => &[Ref(K::Bimodule), Ref(K::Bimodule)],
        (K::Bimodule, "sum") => &[Ref(K::Bimodule), Ref(K::Bimodule)],
        (K::Bimodule, "images") => &[Ref(K::Field), Int, Matrices],
        (K::Bimodule, "base-change") => &[Ref(K::Bimodule), Ref(K::Field)],
        (K::Matrix, "entries") => &[Ref(K::Field), Rows],
        (K::Matrix, "inclo") => &[Ref(K::Field)],
        (K::MultiBimodule, "quasi-galois") => &[Ref(K::Field), Refs(K::Field), Ints, Ints],
        (K::MatrixBimodule, "inflate") => &[Ref(K::MultiBimodule), Ints],
        _ => return None,
    })
}

pub const COMMANDS: &[&str] = &[
    "invariants",
    "divisibility",
    "coaction-group",
    "psi-xi",
    "certificate",
    "is-galois",
    "weakly-galois",
    "classify",
    "center",
    "split-analysis",
    "min-poly",
    "char-poly",
    "phi-semisimple",
    "composition-factors",
    "integral-closure",
    "truncated-invariants",
    "commsem",
    "morita-reduce",
    "matrix-divisibility",
    "hecke-idempotent",
    "hecke-class",
    "hopf-verify",
    "group-order",
    "mat-char-poly",
    "mat-min-poly",
    "mat-semisimple",
];

fn command(name: &str) -> Option<&'static [Arg]> {
    use Arg::*;
    use Kind as K;
    Some(match name {
        "invariants" | "divisibility" | "psi-xi" => &[Ref(K::Coaction)],
        "coaction-group" => &[Ref(K::Coaction), Ref(K::Context)],
        "certificate" => &[Ref(K::Coaction), Expr],
        "is-galois" | "weakly-galois" | "classify" | "split-analysis" | "composition-factors" | "hecke-idempotent"
        | "hecke-class" => &[Ref(K::Bimodule), Ref(K::Context)],
        "center" => &[Ref(K::Bimodule)],
        "min-poly" | "char-poly" | "phi-semisimple" => &[Ref(K::Bimodule), Expr],
        "integral-closure" => &[Ref(K::Matrix), Word],
        "truncated-invariants" => &[Word, Int],
        "commsem" => &[Ref(K::MultiBimodule)],
        "morita-reduce" | "matrix-divisibility" => &[Ref(K::MatrixBimodule)],
        "hopf-verify" => &[Ref(K::Hopf)],
        "group-order" => &[Ref(K::Automorphisms)],
        "mat-char-poly" | "mat-min-poly" | "mat-semisimple" => &[Ref(K::Matrix)],
        _ => return None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Declaration {
    pub pos: Pos,
    pub kind: Kind,
    pub name: String,
    pub ctor: String,
    pub args: Vec<Sexp>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub pos: Pos,
    pub name: String,
    pub args: Vec<Sexp>,
    pub expect: Vec<(String, String)>,
    pub expect_error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Declare(Declaration),
    Run(Command),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureFile {
    pub statements: Vec<Statement>,
}

impl FixtureFile {
    pub fn declarations(&self) -> impl Iterator<Item = &Declaration> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Declare(d) => Some(d),
            _ => None,
        })
    }

    pub fn commands(&self) -> impl Iterator<Item = &Command> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Run(c) => Some(c),
            _ => None,
        })
    }

    pub fn count(&self, kind: Kind) -> usize {
        self.declarations().filter(|d| d.kind == kind).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("parse error at {pos}: {message}")]
    Parse { pos: Pos, message: String },
    #[error("resolution error at {pos}: {message}")]
    Resolution { pos: Pos, message: String },
}

fn parse_err(pos: Pos, message: impl Into<String>) -> FixtureError {
    FixtureError::Parse {
        pos,
        message: message.into(),
    }
}

fn resolve_err(pos: Pos, message: impl Into<String>) -> FixtureError {
    FixtureError::Resolution {
        pos,
        message: message.into(),
    }
}

fn is_ident(s: &str) -> bool {
    let mut c = s.chars();
    c.next().is_some_and(|x| x.is_ascii_alphabetic() || x == '_')
        && c.all(|x| x.is_ascii_alphanumeric() || x == '_' || x == '-')
}

struct Scope<'a> {
    known: BTreeMap<String, Kind>,
    /// Every name declared anywhere, to tell forward references from typos.
    all: &'a BTreeSet<String>,
}

impl Scope<'_> {
    fn check(&self, spec: Arg, e: &Sexp) -> Result<(), FixtureError> {
        let pos = e.pos();
        let reference = |s: &Sexp, k: Kind| -> Result<(), FixtureError> {
            let name = s.atom().ok_or_else(|| parse_err(s.pos(), format!("expected a {k} name")))?;
            match self.known.get(name) {
                Some(&found) if found == k => Ok(()),
                Some(&found) => Err(resolve_err(s.pos(), format!("`{name}` is a {found}, expected a {k}"))),
                None if self.all.contains(name) => Err(resolve_err(s.pos(), format!("forward reference to `{name}`"))),
                None => Err(resolve_err(s.pos(), format!("unknown {k} `{name}`"))),
            }
        };
        let int = |s: &Sexp| -> Result<(), FixtureError> {
            match s.atom().map(|a| a.parse::<i64>()) {
                Some(Ok(_)) => Ok(()),
                _ => Err(parse_err(s.pos(), format!("expected an integer, found `{s}`"))),
            }
        };
        let list = |s: &'_ Sexp| -> Result<Vec<Sexp>, FixtureError> {
            s.items()
                .map(|v| v.to_vec())
                .ok_or_else(|| parse_err(s.pos(), format!("expected a [...] list, found `{s}`")))
        };
        match spec {
            Arg::Ref(k) => reference(e, k),
            Arg::Refs(k) => list(e)?.iter().try_for_each(|x| reference(x, k)),
            Arg::Int => int(e),
            Arg::Ints => list(e)?.iter().try_for_each(int),
            Arg::Word => match e.atom() {
                Some(w) if is_ident(w) => Ok(()),
                _ => Err(parse_err(pos, format!("expected a word, found `{e}`"))),
            },
            Arg::Expr => self.check_expr(e),
            Arg::Exprs => list(e)?.iter().try_for_each(|x| self.check_expr(x)),
            Arg::Rows => list(e)?.iter().try_for_each(|r| self.check(Arg::Exprs, r)),
            Arg::Matrices => list(e)?.iter().try_for_each(|m| self.check(Arg::Rows, m)),
        }
    }

    /// Atoms of an element literal may be numbers, operators, generator names
    /// (checked when evaluated) or earlier `element` declarations.
    fn check_expr(&self, e: &Sexp) -> Result<(), FixtureError> {
        if let Sexp::List(crate::syntax::Bracket::Square, _, p) = e {
            return Err(parse_err(*p, "element literals use (...), not [...]"));
        }
        for (a, p) in e.atoms() {
            if let Some(&k) = self.known.get(a) {
                if k != Kind::Element && k != Kind::Field {
                    return Err(resolve_err(p, format!("`{a}` is a {k}, not an element")));
                }
            } else if self.all.contains(a) {
                return Err(resolve_err(p, format!("forward reference to `{a}`")));
            }
        }
        Ok(())
    }

    fn check_all(&self, specs: &[Arg], args: &[Sexp], what: &str, pos: Pos) -> Result<(), FixtureError> {
        if specs.len() != args.len() {
            return Err(parse_err(
                pos,
                format!("`{what}` takes {} argument(s), found {}", specs.len(), args.len()),
            ));
        }
        specs.iter().zip(args).try_for_each(|(s, a)| self.check(*s, a))
    }
}

fn parse_expectations(rest: &[Sexp]) -> Result<(Vec<(String, String)>, Option<String>), FixtureError> {
    let mut expect = Vec::new();
    let mut expect_error = None;
    let mut i = 0;
    while i < rest.len() {
        let kw = rest[i].atom().unwrap_or("");
        let Some(next) = rest.get(i + 1) else {
            return Err(parse_err(rest[i].pos(), format!("`{kw}` needs a value")));
        };
        match kw {
            "expect" => {
                // values may contain spaces: everything up to the next keyword
                let mut j = i + 1;
                let mut words = Vec::new();
                while j < rest.len() && !matches!(rest[j].atom(), Some("expect" | "expect-error")) {
                    words.push(rest[j].to_string());
                    j += 1;
                }
                let text = words.join(" ");
                let Some((k, v)) = text.split_once('=') else {
                    return Err(parse_err(next.pos(), "expected KEY=VALUE"));
                };
                expect.push((k.trim().to_string(), v.trim().to_string()));
                i = j;
            }
            "expect-error" => {
                let k = next.atom().filter(|a| is_ident(a));
                let k = k.ok_or_else(|| parse_err(next.pos(), "expected an error kind"))?;
                if expect_error.replace(k.to_string()).is_some() {
                    return Err(parse_err(next.pos(), "only one expect-error per command"));
                }
                i += 2;
            }
            _ => return Err(parse_err(rest[i].pos(), format!("unexpected `{}`", rest[i]))),
        }
    }
    Ok((expect, expect_error))
}

pub fn parse(text: &str) -> Result<FixtureFile, FixtureError> {
    let stmts = statements(text).map_err(|e| parse_err(e.pos, e.message))?;
    // first pass: the names, with duplicates rejected
    let mut all = BTreeSet::new();
    for s in &stmts {
        if s[0].atom().and_then(Kind::from_keyword).is_some() {
            if let Some(name) = s.get(1).and_then(|x| x.atom()) {
                if !all.insert(name.to_string()) {
                    return Err(parse_err(s[1].pos(), format!("duplicate name `{name}`")));
                }
            }
        }
    }
    let mut scope = Scope {
        known: BTreeMap::new(),
        all: &all,
    };
    let mut out = Vec::new();
    for s in stmts {
        let head = &s[0];
        let pos = head.pos();
        let word = head.atom().ok_or_else(|| parse_err(pos, "a statement starts with a keyword"))?;
        if word == "run" {
            let name = s
                .get(1)
                .and_then(|x| x.atom())
                .ok_or_else(|| parse_err(pos, "`run` needs a command"))?;
            let specs = command(name).ok_or_else(|| parse_err(s[1].pos(), format!("unknown command `{name}`")))?;
            let split = s
                .iter()
                .position(|x| matches!(x.atom(), Some("expect" | "expect-error")))
                .unwrap_or(s.len());
            let args = s[2..split.max(2)].to_vec();
            scope.check_all(specs, &args, name, pos)?;
            let (expect, expect_error) = parse_expectations(&s[split.max(2)..])?;
            out.push(Statement::Run(Command {
                pos,
                name: name.to_string(),
                args,
                expect,
                expect_error,
            }));
            continue;
        }
        let kind = Kind::from_keyword(word).ok_or_else(|| parse_err(pos, format!("unknown keyword `{word}`")))?;
        let name = s
            .get(1)
            .and_then(|x| x.atom())
            .filter(|n| is_ident(n))
            .ok_or_else(|| parse_err(pos, format!("`{word}` needs a name")))?;
        if s.get(2).and_then(|x| x.atom()) != Some("=") {
            return Err(parse_err(s.get(2).map_or(pos, |x| x.pos()), "expected `=`"));
        }
        let ctor = s
            .get(3)
            .and_then(|x| x.atom())
            .ok_or_else(|| parse_err(pos, format!("`{word} {name}` needs a constructor")))?;
        let specs =
            constructor(kind, ctor).ok_or_else(|| parse_err(s[3].pos(), format!("no {kind} constructor `{ctor}`")))?;
        let args = s[4..].to_vec();
        scope.check_all(specs, &args, ctor, pos)?;
        scope.known.insert(name.to_string(), kind);
        out.push(Statement::Declare(Declaration {
            pos,
            kind,
            name: name.to_string(),
            ctor: ctor.to_string(),
            args,
        }));
    }
    if !out.iter().any(|s| matches!(s, Statement::Run(_))) {
        return Err(resolve_err(Pos { line: 1, col: 1 }, "no analysis command"));
    }
    Ok(FixtureFile { statements: out })
}
