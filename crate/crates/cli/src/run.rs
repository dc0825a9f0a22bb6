//! Executes a parsed fixture and builds its JSON report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

use galbim::bimod::{
    classify, is_galois, is_weakly_galois, split_analysis, Bimodule,
};
use galbim::coact::{
    galois_group_of_coaction, in_q_x2_x3, lemma_inclo_matrix, matrix_certificate, truncated_invariants,
    FieldCoaction, TruncatedAction,
};
use galbim::fields::{automorphisms, extend, AutomorphismGroup, Morphism, SplitContext, Subfield};
use galbim::fixtures::cyclotomic;
use galbim::group::FiniteGroup;
use galbim::hecke::{class_of_bimodule, galois_idempotent, HeckeElement};
use galbim::hopf::{group_algebra, nichols16, taft, HopfAlgebra};
use galbim::kernel::{mat_char_poly, mat_is_semisimple, mat_min_poly, Field, Matrix, Poly, Value};
use galbim::linalg::composition_factors;
use galbim::multibase::{
    commsem_classify, divisibility_check, quasi_galois_construct, MatrixAlgebraBimodule, MultiBimodule,
};
use galbim::Error;

use crate::fixture::{Command, Declaration, FixtureFile, Statement};
use crate::syntax::{Bracket, Sexp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    /// Largest degree accepted by `truncated-invariants`.
    pub max_degree: u32,
    /// Largest automorphism group a declaration or command may produce.
    pub group_bound: usize,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            max_degree: 12,
            group_bound: galbim::fields::DEFAULT_GROUP_BOUND,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub key: String,
    pub expected: String,
    pub actual: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorEntry {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub line: usize,
    pub command: String,
    pub args: Vec<String>,
    pub result: Option<Json>,
    pub error: Option<ErrorEntry>,
    pub expected_error: Option<String>,
    pub expectations: Vec<Expectation>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub fixture: String,
    pub options: Options,
    pub entries: Vec<Entry>,
    pub pass: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[derive(Clone, Debug)]
enum Obj {
    Field(Field),
    Element(Field, Value),
    Subfield(Subfield),
    Context(SplitContext),
    Group(FiniteGroup),
    Automorphisms(AutomorphismGroup),
    Hopf(HopfAlgebra),
    Coaction(FieldCoaction),
    Bimodule(Bimodule),
    Matrix(Matrix),
    Multi(MultiBimodule),
    MatrixBimodule(MatrixAlgebraBimodule),
}

/// Failures inside the runner: either from the engine or from the fixture.
#[derive(Debug)]
enum Fail {
    Engine(Error),
    Fixture(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail::Engine(e)
    }
}

type R<T> = Result<T, Fail>;

fn bad<T>(msg: impl Into<String>) -> R<T> {
    Err(Fail::Fixture(msg.into()))
}

/// Variant name of an engine error, e.g. `CoefficientEscapesZ`.
pub fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(['(', ' ']).next().unwrap_or_default().to_string()
}

struct Env {
    objs: BTreeMap<String, Obj>,
    opts: Options,
}

macro_rules! getter {
    ($name:ident, $variant:ident, $ty:ty) => {
        fn $name(&self, e: &Sexp) -> R<$ty> {
            let n = e.atom().unwrap_or_default();
            match self.objs.get(n) {
                Some(Obj::$variant(x)) => Ok(x.clone()),
                _ => bad(format!("`{n}` is unavailable")),
            }
        }
    };
}

fn int(e: &Sexp) -> i64 {
    e.atom().and_then(|a| a.parse().ok()).expect("checked by the parser")
}

fn ints(e: &Sexp) -> Vec<i64> {
    e.items().expect("checked by the parser").iter().map(int).collect()
}

fn usizes(e: &Sexp) -> R<Vec<usize>> {
    ints(e)
        .into_iter()
        .map(|x| usize::try_from(x).or_else(|_| bad(format!("{x} is negative"))))
        .collect()
}

fn positive(e: &Sexp) -> R<usize> {
    let x = int(e);
    usize::try_from(x).or_else(|_| bad(format!("{x} is negative")))
}

impl Env {
    getter!(field, Field, Field);
    getter!(subfield, Subfield, Subfield);
    getter!(context, Context, SplitContext);
    getter!(group, Group, FiniteGroup);
    getter!(autgroup, Automorphisms, AutomorphismGroup);
    getter!(hopf, Hopf, HopfAlgebra);
    getter!(coaction, Coaction, FieldCoaction);
    getter!(bimodule, Bimodule, Bimodule);
    getter!(matrix, Matrix, Matrix);
    getter!(multi, Multi, MultiBimodule);
    getter!(matrix_bimodule, MatrixBimodule, MatrixAlgebraBimodule);

    /// Evaluates an element literal in `f`: integers, `p/q`, generator names,
    /// earlier elements of a subfield, and `(+ ...)`, `(- ...)`, `(* ...)`,
    /// `(/ a b)`, `(^ a n)`.
    fn eval(&self, f: &Field, e: &Sexp) -> R<Value> {
        match e {
            Sexp::Atom(a, _) => {
                if let Ok(n) = a.parse::<i64>() {
                    return Ok(f.from_i64(n));
                }
                if let Some((n, d)) = a.split_once('/') {
                    if let (Ok(n), Ok(d)) = (n.parse::<i64>(), d.parse::<i64>()) {
                        return Ok(f.div(&f.from_i64(n), &f.from_i64(d))?);
                    }
                }
                if let Some(k) = f.generator_names().iter().position(|g| g == a) {
                    return Ok(f.generators()[k].clone());
                }
                match self.objs.get(a.as_str()) {
                    Some(Obj::Element(sub, v)) if sub == f => Ok(v.clone()),
                    Some(Obj::Element(sub, v)) if f.contains_layer(sub) => Ok(f.embed_from(sub, v)),
                    _ => bad(format!("`{a}` is not an element of {}", f.describe())),
                }
            }
            Sexp::List(Bracket::Paren, items, _) => {
                let op = items.first().and_then(|x| x.atom()).unwrap_or_default();
                let args = &items[1.min(items.len())..];
                let vals = || args.iter().map(|x| self.eval(f, x)).collect::<R<Vec<_>>>();
                match (op, args.len()) {
                    ("+", _) => Ok(vals()?.iter().fold(f.zero(), |acc, x| f.add(&acc, x))),
                    ("*", _) => Ok(vals()?.iter().fold(f.one(), |acc, x| f.mul(&acc, x))),
                    ("-", 1) => Ok(f.neg(&self.eval(f, &args[0])?)),
                    ("-", n) if n > 1 => {
                        let v = vals()?;
                        Ok(v[1..].iter().fold(v[0].clone(), |acc, x| f.sub(&acc, x)))
                    }
                    ("/", 2) => {
                        let v = vals()?;
                        Ok(f.div(&v[0], &v[1])?)
                    }
                    ("^", 2) => {
                        let b = self.eval(f, &args[0])?;
                        match args[1].atom().and_then(|x| x.parse::<i64>().ok()) {
                            Some(k) if k >= 0 => Ok(f.pow(&b, k as u64)),
                            Some(k) => Ok(f.pow(&f.inv(&b)?, k.unsigned_abs())),
                            None => bad("exponent must be an integer"),
                        }
                    }
                    _ => bad(format!("cannot evaluate `{e}`")),
                }
            }
            Sexp::List(Bracket::Square, ..) => bad(format!("`{e}` is a list, not an element")),
        }
    }

    fn eval_list(&self, f: &Field, e: &Sexp) -> R<Vec<Value>> {
        e.items().expect("checked by the parser").iter().map(|x| self.eval(f, x)).collect()
    }

    fn eval_rows(&self, f: &Field, e: &Sexp) -> R<Vec<Vec<Value>>> {
        e.items().expect("checked by the parser").iter().map(|r| self.eval_list(f, r)).collect()
    }

    fn eval_matrix(&self, f: &Field, e: &Sexp) -> R<Matrix> {
        let rows = self.eval_rows(f, e)?;
        let n = rows.first().map_or(0, |r| r.len());
        if rows.is_empty() || rows.iter().any(|r| r.len() != n) {
            return bad("matrix rows must be nonempty and of equal length");
        }
        Ok(Matrix::from_rows(f, rows))
    }

    fn bounded(&self, g: AutomorphismGroup) -> R<AutomorphismGroup> {
        if g.order() > self.opts.group_bound {
            return Err(Error::ClosureBound(self.opts.group_bound).into());
        }
        Ok(g)
    }

    fn declare(&mut self, d: &Declaration) -> R<()> {
        let a = &d.args;
        let obj = match (d.kind, d.ctor.as_str()) {
            (crate::fixture::Kind::Field, c) => Obj::Field(match c {
                "rationals" => Field::rationals(),
                "prime" => Field::prime(positive(&a[0])? as u64)?,
                "cyclotomic" => cyclotomic(positive(&a[0])?)?.0,
                "function" => Field::function_field(&self.field(&a[0])?, a[1].atom().unwrap())?,
                "extend" => {
                    let parent = self.field(&a[0])?;
                    let coeffs = self.eval_list(&parent, &a[2])?;
                    extend(&parent, a[1].atom().unwrap(), &Poly::new(&parent, coeffs))?
                }
                _ => unreachable!(),
            }),
            (crate::fixture::Kind::Element, _) => {
                let f = self.field(&a[0])?;
                let v = self.eval(&f, &a[1])?;
                Obj::Element(f, v)
            }
            (crate::fixture::Kind::Subfield, c) => Obj::Subfield(match c {
                "base" => Subfield::base_of(&self.field(&a[0])?),
                "layer" => {
                    let (l, sub) = (self.field(&a[0])?, self.field(&a[1])?);
                    if !l.contains_layer(&sub) {
                        return bad("the subfield is not a layer of the field");
                    }
                    Subfield::new(Morphism::layer_inclusion(&sub, &l))
                }
                "invariants" => self.coaction(&a[0])?.invariants()?,
                _ => unreachable!(),
            }),
            (crate::fixture::Kind::Context, c) => {
                let f = self.field(&a[0])?;
                Obj::Context(match c {
                    "split" => SplitContext::new(&f),
                    "pool" => SplitContext::with_pool(&f, self.eval_list(&f, &a[1])?),
                    _ => unreachable!(),
                })
            }
            (crate::fixture::Kind::Group, c) => Obj::Group(match c {
                "cyclic" => FiniteGroup::cyclic(positive(&a[0])?.max(1)),
                "symmetric" => FiniteGroup::symmetric(positive(&a[0])?.max(1)),
                "product" => self.group(&a[0])?.product(&self.group(&a[1])?),
                _ => unreachable!(),
            }),
            (crate::fixture::Kind::Automorphisms, _) => {
                let f = self.field(&a[0])?;
                let ctx = self.context(&a[1])?;
                Obj::Automorphisms(self.bounded(automorphisms(&f, None, &ctx)?)?)
            }
            (crate::fixture::Kind::Hopf, c) => Obj::Hopf(match c {
                "taft" => {
                    let f = self.field(&a[0])?;
                    let q = self.eval(&f, &a[3])?;
                    taft(&f, positive(&a[1])?, positive(&a[2])?, &q)?
                }
                "group-algebra" => group_algebra(&self.field(&a[0])?, &self.group(&a[1])?)?,
                "nichols16" => nichols16(&self.field(&a[0])?)?,
                "dual" => self.hopf(&a[0])?.dual()?,
                _ => unreachable!(),
            }),
            (crate::fixture::Kind::Coaction, c) => Obj::Coaction(match c {
                "images" => {
                    let l = self.field(&a[0])?;
                    let k = self.hopf(&a[1])?;
                    FieldCoaction::new(&l, &k, self.eval_rows(&l, &a[2])?)?
                }
                "trivial" => FieldCoaction::trivial(&self.field(&a[0])?, &self.hopf(&a[1])?)?,
                "galois" => FieldCoaction::from_automorphisms(&self.autgroup(&a[0])?)?,
                _ => unreachable!(),
            }),
            (crate::fixture::Kind::Bimodule, c) => Obj::Bimodule(match c {
                "regular" => Bimodule::regular_over(&self.subfield(&a[0])?)?,
                "trivial" => Bimodule::trivial(&self.field(&a[0])?, positive(&a[1])?),
                "pnlg" => Bimodule::p_n_l_g(&usizes(&a[1])?, &self.autgroup(&a[0])?)?,
                "coaction" => self.coaction(&a[0])?.bimodule()?,
                "tensor" => self.bimodule(&a[0])?.tensor(&self.bimodule(&a[1])?)?,
                "sum" => self.bimodule(&a[0])?.direct_sum(&self.bimodule(&a[1])?)?,
                "images" => {
                    let l = self.field(&a[0])?;
                    let d = positive(&a[1])?;
                    let mats = a[2]
                        .items()
                        .unwrap()
                        .iter()
                        .map(|m| self.eval_matrix(&l, m))
                        .collect::<R<Vec<_>>>()?;
                    Bimodule::new(&l, d, mats)?
                }
                "base-change" => self.bimodule(&a[0])?.base_change(&self.field(&a[1])?)?,
                _ => unreachable!(),
            }),
            (crate::fixture::Kind::Matrix, c) => Obj::Matrix(match c {
                "entries" => {
                    let f = self.field(&a[0])?;
                    self.eval_matrix(&f, &a[1])?
                }
                "inclo" => lemma_inclo_matrix(&self.field(&a[0])?)?,
                _ => unreachable!(),
            }),
            (crate::fixture::Kind::MultiBimodule, _) => {
                let z = self.field(&a[0])?;
                let psi = a[1]
                    .items()
                    .unwrap()
                    .iter()
                    .map(|x| {
                        let l = self.field(x)?;
                        if !l.contains_layer(&z) {
                            return bad(format!("{} does not lie over {}", l.describe(), z.describe()));
                        }
                        Ok(Morphism::layer_inclusion(&z, &l))
                    })
                    .collect::<R<Vec<_>>>()?;
                Obj::Multi(quasi_galois_construct(&z, &psi, &usizes(&a[2])?, &usizes(&a[3])?)?)
            }
            (crate::fixture::Kind::MatrixBimodule, _) => {
                Obj::MatrixBimodule(MatrixAlgebraBimodule::inflate(&self.multi(&a[0])?, &usizes(&a[1])?)?)
            }
        };
        self.objs.insert(d.name.clone(), obj);
        Ok(())
    }

    fn command(&self, c: &Command) -> R<Json> {
        let a = &c.args;
        Ok(match c.name.as_str() {
            "invariants" => {
                let inv = self.coaction(&a[0])?.invariants()?;
                let l = self.coaction(&a[0])?.field().clone();
                json!({
                    "degree_over_base": inv.degree_over_base(),
                    "index": inv.index(),
                    "basis": inv.basis_in_ambient().iter().map(|x| element(&l, x)).collect::<Vec<_>>(),
                })
            }
            "divisibility" => {
                let d = self.coaction(&a[0])?.divisibility()?;
                json!({"index": d.index, "dim": d.dim, "quotient": d.quotient})
            }
            "coaction-group" => {
                let g = galois_group_of_coaction(&self.coaction(&a[0])?, &self.context(&a[1])?)?;
                let grp = self.bounded(g.group)?;
                group_json(grp.group(), Some(g.normal))
            }
            "group-order" => group_json(self.autgroup(&a[0])?.group(), None),
            "psi-xi" => {
                let r = self.coaction(&a[0])?.verify_psi_xi_tau()?;
                json!({
                    "dimension": r.dimension,
                    "psi_xi": r.psi_xi,
                    "xi_psi": r.xi_psi,
                    "tau_rank": r.tau_rank,
                    "tau_intertwines": r.tau_intertwines,
                })
            }
            "certificate" => {
                let co = self.coaction(&a[0])?;
                let z = self.eval(co.field(), &a[1])?;
                let cert = co.integrality_certificate(&z)?;
                json!({
                    "poly": poly(&cert.poly),
                    "valid": cert.is_valid(),
                    "monic": cert.monic,
                    "annihilates": cert.annihilates,
                    "coefficients_in_z": cert.coefficients_in_z,
                })
            }
            "is-galois" => {
                let v = is_galois(&self.bimodule(&a[0])?, &self.context(&a[1])?)?;
                json!({"galois": v.galois, "r": v.r})
            }
            "weakly-galois" => {
                let v = is_weakly_galois(&self.bimodule(&a[0])?, &self.context(&a[1])?)?;
                json!({"weakly_galois": v.weakly_galois, "characters": v.table.len()})
            }
            "classify" => {
                let p = self.bimodule(&a[0])?;
                let cl = classify(&p, &self.context(&a[1])?)?;
                json!({
                    "center_degree": cl.center.degree_over_base(),
                    "index": cl.center.index(),
                    "r": cl.r,
                    "rank": p.rank(),
                })
            }
            "center" => {
                let z = self.bimodule(&a[0])?.center()?;
                json!({"degree_over_base": z.degree_over_base(), "index": z.index()})
            }
            "split-analysis" => {
                let sa = split_analysis(&self.bimodule(&a[0])?, &self.context(&a[1])?)?;
                json!({
                    "is_split": sa.is_split,
                    "group_order": sa.group.order(),
                    "gal_over_l": sa.gal_over_l.len(),
                    "normal": sa.group.group().is_normal(&sa.gal_over_l),
                    "abelian": sa.group.group().is_abelian(),
                    "multiplicities": sa.multiplicities.iter().map(|x| x.1).collect::<Vec<_>>(),
                })
            }
            "min-poly" | "char-poly" => {
                let p = self.bimodule(&a[0])?;
                let x = self.eval(p.field(), &a[1])?;
                let f = if c.name == "min-poly" {
                    p.min_poly_right(&x)?
                } else {
                    p.char_poly_right(&x)?
                };
                poly(&f)
            }
            "phi-semisimple" => {
                let p = self.bimodule(&a[0])?;
                let x = self.eval(p.field(), &a[1])?;
                let m = p.phi(&x);
                json!({"semisimple": mat_is_semisimple(&m)?, "min_poly": poly(&mat_min_poly(&m)?)})
            }
            "composition-factors" => {
                let p = self.bimodule(&a[0])?;
                let cf = composition_factors(&p, &self.context(&a[1])?)?;
                let target = self.context(&a[1])?.field().clone();
                json!({
                    "count": cf.iter().map(|x| x.1).sum::<usize>(),
                    "factors": cf.iter().map(|(m, k)| json!({
                        "identity": m.is_identity(),
                        "multiplicity": k,
                        "images": m.images().iter().map(|x| element(&target, x)).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                })
            }
            "integral-closure" => {
                let m = self.matrix(&a[0])?;
                let f = m.field().clone();
                if a[1].atom() != Some("q-x2-x3") {
                    return bad("the only supported ring is q-x2-x3");
                }
                let cert = matrix_certificate(&m, |v| in_q_x2_x3(&f, v))?;
                cert.require_in_z()?;
                json!({"min_poly": poly(&cert.min_poly), "char_poly": poly(&cert.char_poly)})
            }
            "truncated-invariants" => {
                let deg = u32::try_from(int(&a[1])).or_else(|_| bad("negative degree"))?;
                if deg > self.opts.max_degree {
                    return Err(Error::DegreeBound(format!("{deg} > --max-degree {}", self.opts.max_degree)).into());
                }
                let act = match a[0].atom().unwrap() {
                    "condition-two" => TruncatedAction::condition_two(),
                    "condition-four" => TruncatedAction::condition_four(),
                    w => return bad(format!("unknown truncated action `{w}`")),
                };
                let rows = truncated_invariants(&act, deg)?;
                json!({
                    "rows": rows.iter().map(|r| json!({
                        "degree": r.degree,
                        "dim_space": r.dim_space,
                        "dim_invariants": r.dim_invariants,
                        "dim_restricted": r.dim_restricted,
                    })).collect::<Vec<_>>(),
                    "only_constants": rows.iter().all(|r| r.dim_restricted.unwrap_or(r.dim_invariants) == 1),
                })
            }
            "commsem" => {
                let c = commsem_classify(&self.multi(&a[0])?)?;
                json!({
                    "center_degree": c.center.degree_over_base(),
                    "degrees": c.degrees,
                    "a": c.a,
                    "r": c.r,
                    "d": c.d,
                })
            }
            "morita-reduce" => {
                let x = self.matrix_bimodule(&a[0])?;
                let p = x.morita_reduce()?;
                json!({"sizes": x.sizes(), "m_star": x.m_star(), "dims": p.dims()})
            }
            "matrix-divisibility" => {
                let d = divisibility_check(&self.matrix_bimodule(&a[0])?)?;
                json!({"sum": d.sum, "d": d.d, "quotient": d.quotient})
            }
            "hecke-idempotent" => {
                let gi = galois_idempotent(&self.bimodule(&a[0])?, &self.context(&a[1])?)?;
                json!({
                    "d": gi.d,
                    "group_order": gi.group_order,
                    "h_order": gi.h_order,
                    "r": gi.r,
                    "support_is_subgroup": gi.support_is_subgroup,
                    "e": hecke(&gi.e),
                })
            }
            "hecke-class" => {
                let sa = split_analysis(&self.bimodule(&a[0])?, &self.context(&a[1])?)?;
                hecke(&class_of_bimodule(&sa)?)
            }
            "hopf-verify" => {
                let h = self.hopf(&a[0])?;
                h.verify()?;
                json!({"dim": h.dim(), "semisimple": h.is_semisimple()?})
            }
            "mat-char-poly" => poly(&mat_char_poly(&self.matrix(&a[0])?)?),
            "mat-min-poly" => poly(&mat_min_poly(&self.matrix(&a[0])?)?),
            "mat-semisimple" => json!({"semisimple": mat_is_semisimple(&self.matrix(&a[0])?)?}),
            other => return bad(format!("unknown command `{other}`")),
        })
    }
}

fn element(f: &Field, v: &Value) -> Json {
    let base = f.base();
    json!({
        "pretty": f.fmt_value(v),
        "coords": f.to_base_coords(v).iter().map(|c| base.fmt_value(c)).collect::<Vec<_>>(),
    })
}

fn poly(p: &Poly) -> Json {
    let f = p.field();
    json!({
        "degree": p.degree(),
        "coeffs": p.coeffs().iter().map(|c| f.fmt_value(c)).collect::<Vec<_>>(),
        "pretty": p.to_string_var("x"),
    })
}

fn group_json(g: &FiniteGroup, normal: Option<bool>) -> Json {
    json!({
        "order": g.order(),
        "abelian": g.is_abelian(),
        "split_over_klein": g.splits_over_elementary_abelian(4),
        "normal": normal,
        "table": g.table(),
    })
}

/// `{coset representative → value}`, with exact rationals as strings.
fn hecke(e: &HeckeElement) -> Json {
    let a = e.algebra();
    let map: serde_json::Map<String, Json> = a
        .cosets()
        .iter()
        .zip(e.coset_values())
        .map(|(c, v)| (c[0].to_string(), Json::String(v.to_string())))
        .collect();
    json!({"subgroup_order": a.subgroup().len(), "values": map})
}

/// `result[key]` as text, following dots into nested objects and array indices.
fn lookup(result: &Json, key: &str) -> Option<String> {
    let mut cur = result;
    for part in key.split('.') {
        cur = match cur {
            Json::Object(m) => m.get(part)?,
            Json::Array(v) => v.get(part.parse::<usize>().ok()?)?,
            _ => return None,
        };
    }
    Some(match cur {
        Json::String(s) => s.clone(),
        other => other.to_string(),
    })
}

/// Expectations ignore whitespace, so `[1, 2]` matches `[1,2]`.
fn squash(s: &str) -> String {
    s.split_whitespace().collect()
}

fn args_text(args: &[Sexp]) -> Vec<String> {
    args.iter().map(|a| a.to_string()).collect()
}

pub fn run(fixture: &FixtureFile, name: &str, opts: Options) -> Report {
    let mut env = Env {
        objs: BTreeMap::new(),
        opts,
    };
    let mut entries = Vec::new();
    for s in &fixture.statements {
        match s {
            Statement::Declare(d) => {
                if let Err(f) = env.declare(d) {
                    // later statements depend on this one: stop here
                    entries.push(Entry {
                        line: d.pos.line,
                        command: format!("{} {}", d.kind, d.name),
                        args: args_text(&d.args),
                        result: None,
                        error: Some(fail_entry(&f)),
                        expected_error: None,
                        expectations: Vec::new(),
                        pass: false,
                    });
                    break;
                }
            }
            Statement::Run(c) => entries.push(run_command(&env, c)),
        }
    }
    let pass = entries.iter().all(|e| e.pass);
    Report {
        fixture: name.to_string(),
        options: opts,
        entries,
        pass,
    }
}

fn fail_entry(f: &Fail) -> ErrorEntry {
    match f {
        Fail::Engine(e) => ErrorEntry {
            kind: error_kind(e),
            message: e.to_string(),
        },
        Fail::Fixture(m) => ErrorEntry {
            kind: "FixtureError".into(),
            message: m.clone(),
        },
    }
}

fn run_command(env: &Env, c: &Command) -> Entry {
    let outcome = env.command(c);
    let (result, error) = match outcome {
        Ok(j) => (Some(j), None),
        Err(f) => (None, Some(fail_entry(&f))),
    };
    let expectations: Vec<Expectation> = c
        .expect
        .iter()
        .map(|(k, v)| {
            let actual = result.as_ref().and_then(|r| lookup(r, k));
            Expectation {
                key: k.clone(),
                expected: v.clone(),
                pass: actual.as_deref().map(squash) == Some(squash(v)),
                actual,
            }
        })
        .collect();
    let error_ok = match (&c.expect_error, &error) {
        (None, None) => true,
        (Some(want), Some(got)) => *want == got.kind,
        _ => false,
    };
    let pass = error_ok && expectations.iter().all(|e| e.pass);
    Entry {
        line: c.pos.line,
        command: c.name.clone(),
        args: args_text(&c.args),
        result,
        error,
        expected_error: c.expect_error.clone(),
        expectations,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture::parse;

    fn report(text: &str) -> Report {
        run(&parse(text).unwrap(), "test", Options::default())
    }

    const SQRT2: &str = "field Q = rationals\nfield L = extend Q a [-2 0 1]\nsubfield F = base L\n\
                         bimodule P = regular F\ncontext E = split L\n";

    #[test]
    fn evaluates_element_literals() {
        let r = report(&format!(
            "{SQRT2}element h = value Q 1/2\nrun min-poly P (+ (* h a) (^ a 2) -1) expect coeffs.0=1/2 expect coeffs.1=-2 expect degree=2\n"
        ));
        assert!(r.pass, "{}", r.to_json());
    }

    #[test]
    fn expectations_are_compared_as_text() {
        let r = report(&format!("{SQRT2}run classify P E expect r=1 expect index=2\nrun is-galois P E expect r=2\n"));
        assert!(r.entries[0].pass);
        assert!(!r.entries[1].pass);
        assert_eq!(r.entries[1].expectations[0].actual.as_deref(), Some("1"));
        assert!(!r.pass);
    }

    #[test]
    fn engine_errors_become_entries() {
        let r = report(&format!("{SQRT2}run min-poly P (/ a 0)\nrun min-poly P (/ a 0) expect-error Invalid\n"));
        let e = r.entries[0].error.as_ref().unwrap();
        assert!(!r.entries[0].pass);
        assert_eq!(r.entries[1].pass, r.entries[1].error.as_ref().unwrap().kind == "Invalid");
        assert!(!e.kind.is_empty());
    }

    #[test]
    fn failing_declaration_stops_the_run() {
        let r = report("field Q = rationals\nfield L = extend Q a [1 0 0]\nmatrix M = entries L [[a]]\nrun mat-char-poly M\n");
        assert_eq!(r.entries.len(), 1);
        assert!(!r.pass);
    }

    #[test]
    fn degree_bound_is_enforced() {
        let text = "field Q = rationals\nrun truncated-invariants condition-two 9\n";
        let f = parse(text).unwrap();
        let r = run(&f, "t", Options { max_degree: 8, ..Options::default() });
        assert_eq!(r.entries[0].error.as_ref().unwrap().kind, "DegreeBound");
    }

    #[test]
    fn group_bound_is_enforced() {
        let text = "field Q = rationals\nfield L = extend Q a [-2 0 1]\ncontext E = split L\n\
                    automorphisms G = of L E\nrun group-order G expect order=2\n";
        let f = parse(text).unwrap();
        assert!(run(&f, "t", Options::default()).pass);
        let r = run(&f, "t", Options { group_bound: 1, ..Options::default() });
        assert_eq!(r.entries[0].error.as_ref().unwrap().kind, "ClosureBound");
    }

    #[test]
    fn error_kind_is_the_variant_name() {
        assert_eq!(error_kind(&Error::CoefficientEscapesZ("x".into())), "CoefficientEscapesZ");
        assert_eq!(error_kind(&Error::FieldMismatch), "FieldMismatch");
        assert_eq!(error_kind(&Error::ClosureBound(3)), "ClosureBound");
    }
}
