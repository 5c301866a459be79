//! Five worked examples of twisted skew group codes, with their published
//! parameters and the checks that reproduce them.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::action::{Cocycle, ThetaMap};
use crate::code::{dickson_check, idempotent_certify, Code, Form};
use crate::distance::DistanceMethod;
use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::group::{Group, GroupFamily};
use crate::linalg::{mul_transpose, rank};
use crate::ring::{RingCtx, RingElem};
use crate::semilinear::{recognize, xi_embed};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleName {
    Hexacode,
    D6F9,
    C7C3F8,
    D20F9,
    A4F27,
}

impl ExampleName {
    pub const ALL: [ExampleName; 5] =
        [ExampleName::Hexacode, ExampleName::D6F9, ExampleName::C7C3F8, ExampleName::D20F9, ExampleName::A4F27];

    pub fn as_str(self) -> &'static str {
        match self {
            ExampleName::Hexacode => "hexacode",
            ExampleName::D6F9 => "d6f9",
            ExampleName::C7C3F8 => "c7c3f8",
            ExampleName::D20F9 => "d20f9",
            ExampleName::A4F27 => "a4f27",
        }
    }

    pub fn parse(s: &str) -> Result<ExampleName> {
        ExampleName::ALL.into_iter().find(|e| e.as_str() == s).ok_or_else(|| Error::UnknownExample(s.to_string()))
    }
}

/// The conjugation exponent `r` (with `b a b^-1 = a^r`) and the Frobenius
/// power attached to `b` for the C7 ⋊ C3 example. Both are left open in the
/// source; this is the combination that reproduces `[21,14,6]_8`, see
/// [`c7c3f8_variants`].
pub const C7C3F8_VARIANT: (usize, u32) = (4, 1);

const HEXACODE_E: &str = "w*1 + y + xy + w*x2y";
const D6F9_E: &str = "t*1 + t^2*x + t^2*x2 + x2y";

const C7C3F8_C: &str = "t^3*1 + t^6*a + t*a2 + t^4*a3 + t*a4 + a6 + t^4*b + t*ba + t^6*ba2 + t^3*ba3 + t^6*ba4 \
    + t^3*ba5 + t^3*ba6 + t^6*b2 + t^2*b2a + t^2*b2a2 + t^2*b2a4 + t^3*b2a5 + t^3*b2a6";

const D20F9_C: &str = "t^7*1 + a + t*a2 + t^2*a3 + t^5*a5 + t*a6 + 2*a7 + t^3*a8 + 2*a9 \
    + t^6*b + t*ab + t*a2b + t^6*a3b + t^5*a4b + t^2*a5b + t^7*a6b + t^5*a7b + t^5*a8b + t^3*a9b";

/// Rows and columns in the order 1, b, a, ab, a2, a2b, ..., a9b.
const D20F9_ALPHA: [&str; 20] = [
    "1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1",
    "1 1 2 2 1 1 2 2 1 1 2 2 1 1 2 2 1 1 2 2",
    "1 1 2 2 1 1 2 2 1 1 2 2 1 1 2 2 1 1 2 2",
    "1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1",
    "1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1",
    "1 1 2 2 1 1 2 2 1 1 2 2 1 1 2 2 1 1 2 2",
    "1 1 2 2 1 1 2 2 1 1 2 2 1 1 2 2 1 1 2 2",
    "1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1",
    "1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1",
    "1 1 2 2 1 1 2 2 1 1 2 2 1 1 2 2 1 1 2 2",
    "1 1 2 2 1 1 2 2 1 1 2 2 1 1 2 2 1 1 2 2",
    "1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1",
    "1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1",
    "1 1 2 2 1 1 2 2 1 1 2 2 1 1 2 2 1 1 2 2",
    "1 1 2 2 1 1 2 2 1 1 2 2 1 1 2 2 1 1 2 2",
    "1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1",
    "1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1",
    "1 1 2 2 1 1 2 2 1 1 2 2 1 1 2 2 1 1 2 2",
    "1 1 2 2 1 1 2 2 1 1 2 2 1 1 2 2 1 1 2 2",
    "1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1",
];

/// Published generator matrix of the A4 example over GF(27), `t^3 + 2t + 1 = 0`.
pub const A4F27_MATRIX: &str = "\
1 0 0 0 t^2 t^17 t^5 t^19 t^23 t^10 t^12 t^25
0 1 0 0 t^11 t^12 t^15 2 t^24 t^21 t^25 t^7
0 0 1 0 t^14 t^7 t^14 t^10 t^12 t^2 t^18 2
0 0 0 1 t t t^21 2 t^12 t^6 t^16 t^25";

/// Published idempotent of the A4 example, in the group's cycle labels. Its
/// cocycle is not reproduced here, so the element is kept for reference only.
pub const A4F27_IDEMPOTENT: &str = "t^6*1 + t^10*(1,2)(3,4) + t^22*(1,3,2) + t^6*(1,4,3) + t^21*(2,3,4) + t^10*(1,2,4) \
    + t^22*(1,3,4) + t^23*(1,4,2) + t^24*(1,2,3) + t^6*(1,3)(2,4) + t^22*(1,4)(2,3)";

pub const C7C3F8_MATRIX: &str = "\
1 0 0 0 0 0 0 0 0 0 0 0 0 t^5 0 t^3 0 t^2 t t^4 t
0 1 0 0 0 0 0 0 0 0 0 0 0 t^3 0 t^4 t^6 t^2 1 1 t^3
0 0 1 0 0 0 0 0 0 0 0 0 0 t 0 t^3 t 1 t^6 t^2 t^3
0 0 0 1 0 0 0 0 0 0 0 0 0 t^6 0 0 t^4 t^4 t^4 t^4 t^4
0 0 0 0 1 0 0 0 0 0 0 0 0 t^4 0 t^4 1 t^5 0 t^3 t^2
0 0 0 0 0 1 0 0 0 0 0 0 0 t^2 0 1 t^4 1 t^5 0 1
0 0 0 0 0 0 1 0 0 0 0 0 0 1 0 t^5 t t 0 t^2 0
0 0 0 0 0 0 0 1 0 0 0 0 0 t^6 0 t^6 t^6 0 t t^4 1
0 0 0 0 0 0 0 0 1 0 0 0 0 t^5 0 t^2 0 1 1 0 t^4
0 0 0 0 0 0 0 0 0 1 0 0 0 t^4 0 0 t^4 t^2 t^6 t^6 t^4
0 0 0 0 0 0 0 0 0 0 1 0 0 t^3 0 t^4 t t^4 t^3 1 t^5
0 0 0 0 0 0 0 0 0 0 0 1 0 t^2 0 t^6 t^4 1 0 t t^3
0 0 0 0 0 0 0 0 0 0 0 0 1 t 0 t^4 t^4 0 t^4 t^6 t
0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 t^4 t t^5 t^2 t^6 t^3";

pub const D20F9_MATRIX: &str = "\
1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 2 0 t
0 1 0 0 0 0 0 0 0 0 0 0 0 0 0 t^3 0 t t^3 t^2
0 0 1 0 0 0 0 0 0 0 0 0 0 0 0 t^7 0 t^5 t t^7
0 0 0 1 0 0 0 0 0 0 0 0 0 0 0 2 0 1 2 2
0 0 0 0 1 0 0 0 0 0 0 0 0 0 0 2 0 t^6 t^5 0
0 0 0 0 0 1 0 0 0 0 0 0 0 0 0 t^7 0 1 t^3 t^3
0 0 0 0 0 0 1 0 0 0 0 0 0 0 0 1 0 0 t 2
0 0 0 0 0 0 0 1 0 0 0 0 0 0 0 t^5 0 1 0 t^2
0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 t^5 0 2 t 2
0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 1 0 t^7 t^2 t
0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 1 0 2 t^3 t^7
0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 t^3 0 t t t^5
0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 2 0 t^6 1 t^6
0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 t 0 t^2 t^7 t^6
0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 t 0 2 2 t
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 t^3 t^7 2";

/// Parses whitespace-separated rows of field elements.
pub fn parse_matrix(field: &Field, text: &str) -> Result<Vec<Vec<Fe>>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split_whitespace().map(|t| field.parse(t)).collect())
        .collect()
}

pub fn gf4() -> Arc<Field> {
    Arc::new(Field::new(2, 2, &[1, 1, 1]).expect("x^2+x+1 is irreducible"))
}
pub fn gf8() -> Arc<Field> {
    Arc::new(Field::new(2, 3, &[1, 1, 0, 1]).expect("x^3+x+1 is irreducible"))
}
pub fn gf9() -> Arc<Field> {
    Arc::new(Field::new(3, 2, &[2, 2, 1]).expect("x^2+2x+2 is irreducible"))
}
pub fn gf27() -> Arc<Field> {
    Arc::new(Field::new(3, 3, &[1, 2, 0, 1]).expect("x^3+2x+1 is irreducible"))
}

fn d6_ctx(field: Arc<Field>) -> Result<Arc<RingCtx>> {
    let g = Arc::new(Group::dihedral(6)?);
    let th = ThetaMap::involutions_frobenius(&field, &g, 1)?;
    RingCtx::new(field, g, th, Cocycle::trivial(6))
}

pub fn hexacode_ctx() -> Result<Arc<RingCtx>> {
    d6_ctx(gf4())
}

pub fn d6f9_ctx() -> Result<Arc<RingCtx>> {
    d6_ctx(gf9())
}

/// `F8[C7 ⋊ C3, Θ, 1]` with `b a b^-1 = a^r` and `Θ(b) = Frobenius^exp`.
pub fn c7c3f8_ctx(r: usize, exp: u32) -> Result<Arc<RingCtx>> {
    let f = gf8();
    let g = Arc::new(Group::make(GroupFamily::Semidirect { m: 7, k: 3, r })?);
    let a = g.index_of("a")?;
    let th = ThetaMap::kernel_power(&f, &g, &[a], exp)?;
    RingCtx::new(f, g, th, Cocycle::trivial(21))
}

pub fn d20f9_alpha(field: &Field) -> Result<Cocycle> {
    let rows = D20F9_ALPHA
        .iter()
        .map(|r| r.split_whitespace().map(|t| field.parse(t)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Cocycle::from_rows(rows)
}

pub fn d20f9_ctx() -> Result<Arc<RingCtx>> {
    let f = gf9();
    let g = Arc::new(Group::make(GroupFamily::DihedralAb(20))?);
    let a = g.index_of("a")?;
    let th = ThetaMap::kernel_power(&f, &g, &[a], 1)?;
    let alpha = d20f9_alpha(&f)?;
    RingCtx::new(f, g, th, alpha)
}

/// A built example: a ring and generator, or a bare published matrix.
#[derive(Debug, Clone)]
pub struct Example {
    pub name: ExampleName,
    pub ctx: Option<Arc<RingCtx>>,
    pub generator: Option<RingElem>,
    /// The generator matrix printed alongside the example, when there is one.
    pub published: Option<Code>,
}

pub fn build(name: ExampleName) -> Result<Example> {
    let (ctx, gen_text, published) = match name {
        ExampleName::Hexacode => (hexacode_ctx()?, HEXACODE_E, None),
        ExampleName::D6F9 => (d6f9_ctx()?, D6F9_E, None),
        ExampleName::C7C3F8 => {
            let (r, e) = C7C3F8_VARIANT;
            (c7c3f8_ctx(r, e)?, C7C3F8_C, Some((gf8(), 21, C7C3F8_MATRIX)))
        }
        ExampleName::D20F9 => (d20f9_ctx()?, D20F9_C, Some((gf9(), 20, D20F9_MATRIX))),
        ExampleName::A4F27 => {
            let f = gf27();
            let code = Code::from_matrix(f.clone(), 12, parse_matrix(&f, A4F27_MATRIX)?)?;
            return Ok(Example { name, ctx: None, generator: None, published: Some(code) });
        }
    };
    let generator = ctx.parse(gen_text)?;
    let published = match published {
        Some((f, n, text)) => Some(Code::from_matrix(f.clone(), n, parse_matrix(&f, text)?)?),
        None => None,
    };
    Ok(Example { name, ctx: Some(ctx), generator: Some(generator), published })
}

/// Outcome of the cheap checks on one C7 ⋊ C3 variant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantOutcome {
    pub r: usize,
    pub exp: u32,
    pub k: usize,
    pub lcd: bool,
    /// Minimum distance, computed only when `k = 14` and the code is LCD.
    pub d: Option<usize>,
}

/// Tries every `(r, Θ(b))` combination; the ones with `d = Some(6)`,
/// `k = 14` and `lcd` reproduce the published code.
pub fn c7c3f8_variants() -> Result<Vec<VariantOutcome>> {
    let mut out = Vec::new();
    for r in [2, 4] {
        for exp in [1, 2] {
            let ctx = c7c3f8_ctx(r, exp)?;
            let code = Code::ideal_span(&[ctx.parse(C7C3F8_C)?])?;
            let lcd = code.is_lcd(Form::Euclidean)?;
            let d = if code.k() == 14 && lcd { Some(code.min_distance(DistanceMethod::BrouwerZimmermann)?.d) } else { None };
            out.push(VariantOutcome { r, exp, k: code.k(), lcd, d });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckItem {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
    /// Reported but not counted towards the verdict.
    pub informational: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub example: ExampleName,
    pub items: Vec<CheckItem>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.pass || i.informational)
    }

    fn item(&mut self, name: &str, expected: impl ToString, got: impl ToString) {
        let (expected, got) = (expected.to_string(), got.to_string());
        let pass = expected == got;
        self.items.push(CheckItem { name: name.into(), expected, got, pass, informational: false });
    }

    fn info(&mut self, name: &str, expected: impl ToString, got: impl ToString) {
        let (expected, got) = (expected.to_string(), got.to_string());
        let pass = expected == got;
        self.items.push(CheckItem { name: name.into(), expected, got, pass, informational: true });
    }

    /// Records the error of a failed step as a failing item.
    fn attempt<T>(&mut self, name: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.items.push(CheckItem {
                    name: name.into(),
                    expected: "ok".into(),
                    got: format!("error: {e}"),
                    pass: false,
                    informational: false,
                });
                None
            }
        }
    }
}

fn params(code: &Code, d: usize) -> String {
    code.params(Some(d))
}

/// Parameters, dual parameters and Euclidean LCD status of a code.
fn code_items(rep: &mut Report, prefix: &str, code: &Code, expect: &str, expect_dual: Option<&str>) -> Option<usize> {
    let d = rep.attempt(&format!("{prefix}distance"), code.min_distance(DistanceMethod::Auto))?.d;
    rep.item(&format!("{prefix}parameters"), expect, params(code, d));
    let (holds, slack) = code.bound_check(d);
    rep.item(&format!("{prefix}bound n <= d*k"), "true", holds);
    let _ = slack;
    if let Some(ed) = expect_dual {
        if let Some(dual) = rep.attempt(&format!("{prefix}dual"), code.dual(Form::Euclidean)) {
            if let Some(dd) = rep.attempt(&format!("{prefix}dual distance"), dual.min_distance(DistanceMethod::Auto)) {
                rep.item(&format!("{prefix}dual parameters"), ed, params(&dual, dd.d));
            }
        }
    }
    Some(d)
}

fn ring_items(rep: &mut Report, ctx: &Arc<RingCtx>, code: &Code) {
    if let Some(ann) = rep.attempt("annihilator dual", code.dual_via_annihilator(Form::Euclidean)) {
        if let Some(dual) = rep.attempt("nullspace dual", code.dual(Form::Euclidean)) {
            rep.item("adjoint of Ann_r(C) equals C^perp", "true", ann == dual);
        }
    }
    if let Some(gg) = rep.attempt("xi embedding", xi_embed(ctx)) {
        rep.item("xi group order", (ctx.field().order() as usize - 1) * ctx.n(), gg.order());
        rep.item("xi group stabilizes C", "true", gg.stabilizes(code));
        if let Some(rec) = rep.attempt("recognition", recognize(&code.standalone(), &gg)) {
            let same = rec.ctx.theta().exps() == ctx.theta().exps()
                && rec.ctx.alpha() == ctx.alpha()
                && rec.ctx.group().table_rows() == ctx.group().table_rows();
            rep.item("recognition recovers (G, Θ, α)", "true", same);
        }
    }
}

pub fn verify(name: ExampleName) -> Result<Report> {
    let ex = build(name)?;
    let mut rep = Report { example: name, items: Vec::new() };
    match name {
        ExampleName::Hexacode => verify_hexacode(&ex, &mut rep),
        ExampleName::D6F9 => verify_d6f9(&ex, &mut rep),
        ExampleName::C7C3F8 => verify_large(&ex, &mut rep, "[21,14,6]_8", "[21,7,12]_8"),
        ExampleName::D20F9 => verify_large(&ex, &mut rep, "[20,16,4]_9", "[20,4,15]_9"),
        ExampleName::A4F27 => verify_a4f27(&ex, &mut rep),
    }
    Ok(rep)
}

fn verify_hexacode(ex: &Example, rep: &mut Report) {
    let (ctx, e) = (ex.ctx.as_ref().expect("ring example"), ex.generator.as_ref().expect("ring example"));
    rep.item("e^2 = e", "true", e.mul(e).map(|s| s == *e).unwrap_or(false));
    let Some(code) = rep.attempt("span", Code::ideal_span(core::slice::from_ref(e))) else { return };
    code_items(rep, "", &code, "[6,3,4]_4", None);
    if let Some(w) = rep.attempt("weight enumerator", code.weight_enumerator()) {
        rep.item("weight enumerator", "1 + 45x^4 + 18x^6", w.render());
    }
    if let Some(flags) = rep.attempt("idempotent flags", idempotent_certify(e)) {
        rep.item("flags", "idempotent sd_hermitian", flags.names().join(" "));
    }
    if let Some(sd) = rep.attempt("Hermitian dual", code.is_self_dual(Form::Hermitian)) {
        rep.item("C = C^perp_h", "true", sd);
    }
    let lhs = e.power_q(2).map(|x| x.adjoint());
    let rhs = e.add(&ctx.one());
    rep.item("adjoint(e^(2)) = e + 1", "true", matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b));
    if let Some(dk) = rep.attempt("dickson", dickson_check(e)) {
        rep.item("|G|_2 divides dim C", "false", dk);
    }
    if let Some(h) = rep.attempt("Hermitian annihilator dual", code.dual_via_annihilator(Form::Hermitian)) {
        rep.item("adjoint of Ann_r(C^(2)) equals C^perp_h", "true", code.dual(Form::Hermitian).map(|d| d == h).unwrap_or(false));
    }
    ring_items(rep, ctx, &code);
}

fn verify_d6f9(ex: &Example, rep: &mut Report) {
    let (ctx, e) = (ex.ctx.as_ref().expect("ring example"), ex.generator.as_ref().expect("ring example"));
    let Some(code) = rep.attempt("span", Code::ideal_span(core::slice::from_ref(e))) else { return };
    if let Some(d) = code_items(rep, "", &code, "[6,3,4]_9", None) {
        rep.item("MDS", "true", code.is_mds(d));
    }
    if let Some(flags) = rep.attempt("idempotent flags", idempotent_certify(e)) {
        rep.item("flags", "idempotent self_adjoint lcd_euclidean", flags.names().join(" "));
    }
    if let Some(lcd) = rep.attempt("LCD", code.is_lcd(Form::Euclidean)) {
        rep.item("C ∩ C^perp = 0", "true", lcd);
    }
    if let Some(w) = rep.attempt("weight enumerator", code.weight_enumerator()) {
        rep.item("weight enumerator", "1 + 120x^4 + 240x^5 + 368x^6", w.render());
    }
    ring_items(rep, ctx, &code);
}

fn verify_large(ex: &Example, rep: &mut Report, expect: &str, expect_dual: &str) {
    let (ctx, c) = (ex.ctx.as_ref().expect("ring example"), ex.generator.as_ref().expect("ring example"));
    if ex.name == ExampleName::D20F9 {
        let f = ctx.field();
        let alpha = ctx.alpha();
        rep.item("α valid", "true", alpha.validate(f, ctx.group(), ctx.theta()).is_ok());
        rep.item("α involutive", "true", alpha.is_involutive(f));
        if let Some(cb) = rep.attempt("coboundary test", alpha.coboundary_test(f, ctx.group())) {
            rep.item("α is a coboundary", "false", cb.is_some());
        }
    } else {
        let (r, e) = C7C3F8_VARIANT;
        rep.info("variant (r, Θ(b) exponent)", "(4, 1)", format!("({r}, {e})"));
    }
    let Some(code) = rep.attempt("span", Code::ideal_span(core::slice::from_ref(c))) else { return };
    code_items(rep, "", &code, expect, Some(expect_dual));
    if let Some(lcd) = rep.attempt("LCD", code.is_lcd(Form::Euclidean)) {
        rep.item("Euclidean LCD", "true", lcd);
    }
    if let Some(m) = rep.attempt("Maschke idempotent", code.maschke_idempotent()) {
        let flags = idempotent_certify(&m).map(|f| f.names().join(" ")).unwrap_or_else(|e| format!("error: {e}"));
        rep.item("Maschke idempotent flags", "idempotent", flags.split(' ').next().unwrap_or("").to_string());
    }
    ring_items(rep, ctx, &code);
    if let Some(p) = &ex.published {
        code_items(rep, "published matrix ", p, expect, Some(expect_dual));
        if let Some(lcd) = rep.attempt("published LCD", p.is_lcd(Form::Euclidean)) {
            rep.item("published matrix Euclidean LCD", "true", lcd);
        }
        rep.info("published matrix equals ring-built RREF", "true", *p == code.standalone());
    }
}

fn verify_a4f27(ex: &Example, rep: &mut Report) {
    let code = ex.published.as_ref().expect("matrix example");
    if let Some(d) = code_items(rep, "", code, "[12,4,9]_27", Some("[12,8,5]_27")) {
        rep.item("MDS", "true", code.is_mds(d));
    }
    let f = code.field();
    let gram = mul_transpose(f, code.genmat(), code.genmat());
    rep.item("rank G·G^T", 4, rank(f, &gram, 4));
    if let Some(lcd) = rep.attempt("LCD", code.is_lcd(Form::Euclidean)) {
        rep.item("Euclidean LCD", "true", lcd);
    }
}
