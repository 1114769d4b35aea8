//! Parser for the `.lp` presentation format.
//!
//! One statement per line, `#` starts a comment:
//!
//! ```text
//! field Q                       # or GF(p)
//! param a != 0 1                # symbolic parameter with excluded values
//! param a = 2                   # or a bound value
//! objects p q                   # optional, default one object
//! generators x y:p->q z@2       # optional boundary and degree
//! order deglex x < y < z        # weighted-deglex x < y weights x=2 y=1
//!                               # elimination-deglex x y | z
//! measure 3 (x y z) + 1 (y)
//! certificate pattern-measure 3 # order-compatible, user-asserted
//! convergent
//! rule g : x y z -> x^3 + y^3 + (1/a) z z z
//! ```
//!
//! Rules may omit the `rule` keyword. A rule whose target contains its own
//! source `m ⇒ c·m + h` is rescaled to `m ⇒ h/(1 − c)`. Certificates are
//! checked again on load.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{is_prime, FieldSpec, Gen, Generator, Monomial, MonomialOrder, ParamCtx, Polynomial, Quiver, RatFunc, Scalar};
use crate::completion::{certify_termination, check_confluence, PatternMeasure, TerminationHint, TerminationReport};
use crate::error::{Error, Result};
use crate::rewrite::{Polygraph2, Rule};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Sym(&'static str),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
    end: usize,
}

const SYMBOLS: [&str; 15] = ["->", "!=", ":", "+", "-", "*", "/", "(", ")", "^", "<", "|", "=", "@", ","];

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

fn lex(line: usize, text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Num(s.parse().expect("digits")), col, end: i + 1 });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), col, end: i + 1 });
        } else {
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            let sym = SYMBOLS.iter().find(|s| rest.starts_with(**s)).ok_or_else(|| err(line, col, format!("unexpected character '{c}'")))?;
            i += sym.len();
            out.push(Token { tok: Tok::Sym(sym), col, end: i + 1 });
        }
    }
    Ok(out)
}

/// Cursor over one line's tokens.
struct Cur<'a> {
    line: usize,
    toks: &'a [Token],
    pos: usize,
    end_col: usize,
}

impl<'a> Cur<'a> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        err(self.line, self.col(), msg)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn eat(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(x)) if *x == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{s}'")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err("expected a name")),
        }
    }

    /// Keyword such as `weighted-deglex`: names joined by adjacent hyphens.
    fn keyword(&mut self) -> Result<String> {
        let mut s = self.ident()?;
        while let [Token { tok: Tok::Sym("-"), col: h, end: he }, Token { tok: Tok::Ident(next), col: n, .. }, ..] = &self.toks[self.pos..] {
            if *h != self.toks[self.pos - 1].end || *n != *he {
                break;
            }
            s.push('-');
            s.push_str(next);
            self.pos += 2;
        }
        Ok(s)
    }

    fn num(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.err("expected a number")),
        }
    }

    fn small(&mut self) -> Result<u64> {
        let c = self.col();
        let n = self.num()?;
        u64::try_from(n).map_err(|_| err(self.line, c, "number out of range"))
    }

    fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }

    /// Signed rational literal `[-]n[/d]`.
    fn rational(&mut self) -> Result<BigRational> {
        let neg = self.eat("-");
        let n = self.num()?;
        let c = self.col();
        let d = if self.eat("/") { self.num()? } else { BigInt::one() };
        if d.is_zero() {
            return Err(err(self.line, c, "zero denominator"));
        }
        let q = BigRational::new(n, d);
        Ok(if neg { -q } else { q })
    }
}

/// Parameter as declared in the file.
#[derive(Clone, Debug)]
struct ParamDecl {
    name: String,
    line: usize,
    nonvanishing: Vec<BigRational>,
    value: Option<(BigRational, usize, usize)>,
}

/// A parsed file: the validated system and what the file declared.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub system: Polygraph2,
    /// Value bound to the parameter, if any; the system then has rational coefficients.
    pub param_value: Option<(String, BigRational)>,
    /// Source line of each rule.
    pub rule_lines: Vec<usize>,
    /// Rules whose target contained their source and were rescaled.
    pub rescaled: Vec<String>,
}

struct Ctx {
    quiver: Quiver,
    field: FieldSpec,
    param: Option<ParamDecl>,
    ctx: Option<Arc<ParamCtx>>,
}

impl Ctx {
    fn gen(&self, name: &str) -> Option<Gen> {
        self.quiver.gen_by_name(name)
    }

    fn param_scalar(&self) -> Scalar {
        let p = self.param.as_ref().expect("param declared");
        match (&p.value, &self.ctx) {
            (Some((v, _, _)), _) => Scalar::Rat(v.clone()),
            (None, Some(ctx)) => Scalar::Param(RatFunc::param(ctx.clone())),
            (None, None) => unreachable!("symbolic parameter without context"),
        }
    }

    fn is_param(&self, name: &str) -> bool {
        self.param.as_ref().is_some_and(|p| p.name == name) && self.gen(name).is_none()
    }
}

fn lift(c: &Cur<'_>, col: usize, r: std::result::Result<Scalar, crate::error::ScalarError>) -> Result<Scalar> {
    r.map_err(|e| err(c.line, col, e.to_string()))
}

fn pow(c: &Cur<'_>, col: usize, base: &Scalar, e: i64) -> Result<Scalar> {
    let mut acc = Scalar::one();
    for _ in 0..e.unsigned_abs() {
        acc = &acc * base;
    }
    if e < 0 {
        acc = lift(c, col, acc.inv())?;
    }
    Ok(acc)
}

// Scalar expressions: + - * / ^, parentheses, numbers and the parameter.
fn expr(c: &mut Cur<'_>, cx: &Ctx) -> Result<Scalar> {
    let mut acc = term(c, cx)?;
    loop {
        if c.eat("+") {
            acc = &acc + &term(c, cx)?;
        } else if c.eat("-") {
            acc = &acc - &term(c, cx)?;
        } else {
            return Ok(acc);
        }
    }
}

fn term(c: &mut Cur<'_>, cx: &Ctx) -> Result<Scalar> {
    let mut acc = unary(c, cx)?;
    loop {
        if c.eat("*") {
            acc = &acc * &unary(c, cx)?;
        } else if c.eat("/") {
            let col = c.col();
            let d = unary(c, cx)?;
            acc = lift(c, col, acc.div(&d))?;
        } else {
            return Ok(acc);
        }
    }
}

fn unary(c: &mut Cur<'_>, cx: &Ctx) -> Result<Scalar> {
    if c.eat("-") {
        return Ok(-&unary(c, cx)?);
    }
    let col = c.col();
    let base = match c.peek() {
        Some(Tok::Num(n)) => {
            let v = Scalar::Rat(BigRational::from_integer(n.clone()));
            c.pos += 1;
            v
        }
        Some(Tok::Ident(s)) if cx.is_param(s) => {
            c.pos += 1;
            cx.param_scalar()
        }
        Some(Tok::Sym("(")) => {
            c.pos += 1;
            let v = expr(c, cx)?;
            c.expect(")")?;
            v
        }
        _ => return Err(c.err("expected a coefficient")),
    };
    if c.eat("^") {
        let neg = c.eat("-");
        let e = c.small()? as i64;
        return pow(c, col, &base, if neg { -e } else { e });
    }
    Ok(base)
}

/// `g [^k] g ...`; empty when the next token is not a generator.
fn word(c: &mut Cur<'_>, cx: &Ctx) -> Result<Vec<(Gen, usize)>> {
    let mut w = Vec::new();
    while let Some(Tok::Ident(s)) = c.peek() {
        let col = c.col();
        let Some(g) = cx.gen(s) else {
            if cx.is_param(s) {
                break;
            }
            return Err(c.err(format!("unknown generator '{s}'")));
        };
        c.pos += 1;
        let k = if c.eat("^") { c.small()? } else { 1 };
        if k == 0 {
            return Err(err(c.line, col, "exponent must be positive"));
        }
        w.extend(std::iter::repeat_n((g, col), k as usize));
    }
    Ok(w)
}

fn monomial(c: &Cur<'_>, cx: &Ctx, w: &[(Gen, usize)]) -> Result<Monomial> {
    let gens: Vec<Gen> = w.iter().map(|x| x.0).collect();
    cx.quiver.monomial(&gens).map_err(|_| {
        let bad = (1..w.len()).find(|&i| cx.quiver.generators[w[i - 1].0 as usize].tgt != cx.quiver.generators[w[i].0 as usize].src);
        let col = bad.map_or(w.first().map_or(c.col(), |x| x.1), |i| w[i].1);
        err(c.line, col, "word is not composable")
    })
}

/// Polynomial parallel to `src`.
fn polynomial(c: &mut Cur<'_>, cx: &Ctx, src: &Monomial) -> Result<Polynomial> {
    let mut out = Polynomial::zero(src.src, src.tgt);
    let mut first = true;
    loop {
        let neg = if c.eat("-") {
            true
        } else if first || c.eat("+") {
            false
        } else {
            break;
        };
        first = false;
        let col = c.col();
        let starts_coef = match c.peek() {
            Some(Tok::Num(_)) | Some(Tok::Sym("(")) => true,
            Some(Tok::Ident(s)) => cx.is_param(s),
            _ => false,
        };
        let coef = if starts_coef {
            let mut v = unary(c, cx)?;
            while c.eat("/") {
                let dcol = c.col();
                let d = unary(c, cx)?;
                v = lift(c, dcol, v.div(&d))?;
            }
            c.eat("*");
            v
        } else {
            Scalar::one()
        };
        let w = word(c, cx)?;
        if w.is_empty() && !starts_coef {
            return Err(c.err("expected a term"));
        }
        let m = if w.is_empty() {
            if coef.is_zero() {
                continue;
            }
            if src.src != src.tgt {
                return Err(err(c.line, col, "a scalar term needs a loop source"));
            }
            Monomial::identity(src.src)
        } else {
            monomial(c, cx, &w)?
        };
        if m.boundary() != src.boundary() {
            return Err(err(c.line, col, "term is not parallel to the rule source"));
        }
        let coef = lift(c, col, cx.field.coerce(&coef))?;
        out.add_term(&if neg { -&coef } else { coef }, &m);
    }
    Ok(out)
}

fn parse_order(c: &mut Cur<'_>, q: &Quiver) -> Result<MonomialOrder> {
    let kind = c.keyword()?;
    let gen = |c: &mut Cur<'_>| -> Result<Gen> {
        let col = c.col();
        let n = c.ident()?;
        q.gen_by_name(&n).ok_or_else(|| err(c.line, col, format!("unknown generator '{n}'")))
    };
    let col = c.col();
    let wrap = |c: &Cur<'_>, r: Result<MonomialOrder>| r.map_err(|e| err(c.line, col, e.to_string()));
    match kind.as_str() {
        "deglex" | "weighted-deglex" | "weighted" => {
            let mut prec = vec![gen(c)?];
            while c.eat("<") {
                prec.push(gen(c)?);
            }
            if kind == "deglex" {
                c.finish()?;
                return wrap(c, MonomialOrder::deglex(q, prec));
            }
            if c.ident()? != "weights" {
                return Err(c.err("expected 'weights'"));
            }
            let mut w: Vec<Option<u64>> = vec![None; q.len()];
            while !c.at_end() {
                let g = gen(c)?;
                c.expect("=")?;
                w[g as usize] = Some(c.small()?);
            }
            let w: Option<Vec<u64>> = w.into_iter().collect();
            let w = w.ok_or_else(|| c.err("every generator needs a weight"))?;
            wrap(c, MonomialOrder::weighted(q, prec, w))
        }
        "elimination-deglex" | "elimination" => {
            let mut groups = vec![Vec::new()];
            while !c.at_end() {
                if c.eat("|") {
                    groups.push(Vec::new());
                } else if !c.eat("<") {
                    let g = gen(c)?;
                    groups.last_mut().unwrap().push(g);
                }
            }
            wrap(c, MonomialOrder::elimination(q, groups))
        }
        other => Err(err(c.line, col, format!("unknown order kind '{other}'"))),
    }
}

fn parse_measure(c: &mut Cur<'_>, q: &Quiver) -> Result<PatternMeasure> {
    let mut patterns = Vec::new();
    loop {
        let w = c.small()?;
        c.expect("(")?;
        let mut pat = Vec::new();
        while let Some(Tok::Ident(s)) = c.peek() {
            let g = q.gen_by_name(s).ok_or_else(|| c.err(format!("unknown generator '{s}'")))?;
            pat.push(g);
            c.pos += 1;
        }
        if pat.is_empty() {
            return Err(c.err("empty pattern"));
        }
        c.expect(")")?;
        patterns.push((pat, w));
        if !c.eat("+") {
            break;
        }
    }
    c.finish()?;
    Ok(PatternMeasure { patterns })
}

fn parse_generators(c: &mut Cur<'_>, objects: &[String], gens: &mut Vec<Generator>) -> Result<()> {
    let obj = |c: &mut Cur<'_>| -> Result<u32> {
        let col = c.col();
        let n = c.ident()?;
        objects.iter().position(|o| *o == n).map(|i| i as u32).ok_or_else(|| err(c.line, col, format!("unknown object '{n}'")))
    };
    while !c.at_end() {
        let col = c.col();
        let name = c.ident()?;
        if gens.iter().any(|g| g.name == name) {
            return Err(err(c.line, col, format!("duplicate generator '{name}'")));
        }
        let (src, tgt) = if c.eat(":") {
            let s = obj(c)?;
            c.expect("->")?;
            (s, obj(c)?)
        } else if objects.len() == 1 {
            (0, 0)
        } else {
            return Err(err(c.line, col, format!("generator '{name}' needs a boundary 'src->tgt'")));
        };
        let degree = if c.eat("@") { c.small()? as u32 } else { 1 };
        if degree == 0 {
            return Err(err(c.line, col, "degree must be positive"));
        }
        gens.push(Generator { name, src, tgt, degree });
    }
    Ok(())
}

enum CertDecl {
    Order,
    Measure(usize),
    User,
}

/// Parse and validate a presentation.
pub fn parse(text: &str) -> Result<Presentation> {
    let lines: Vec<(usize, Vec<Token>, usize)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| Ok((i + 1, lex(i + 1, l)?, l.chars().count() + 1)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, t, _)| !t.is_empty())
        .collect();

    let mut objects: Option<Vec<String>> = None;
    let mut gens: Vec<Generator> = Vec::new();
    let mut field = FieldSpec::Rational;
    let mut param: Option<ParamDecl> = None;
    let mut order_line = None;
    let mut measure_line = None;
    let mut cert: Option<(CertDecl, usize)> = None;
    let mut convergent_line = None;
    let mut rule_lines = Vec::new();
    let mut gens_seen = false;

    for (ln, toks, end) in &lines {
        let mut c = Cur { line: *ln, toks, pos: 0, end_col: *end };
        let kw_col = c.col();
        let kw = match c.peek() {
            Some(Tok::Ident(s)) => s.clone(),
            _ => return Err(c.err("expected a statement")),
        };
        // `name : ...` without the keyword is a rule.
        if matches!(toks.get(1).map(|t| &t.tok), Some(Tok::Sym(":"))) && kw != "rule" {
            rule_lines.push((*ln, 0usize));
            continue;
        }
        c.pos += 1;
        match kw.as_str() {
            "field" => {
                let col = c.col();
                let f = c.ident()?;
                field = match f.as_str() {
                    "Q" | "QQ" => FieldSpec::Rational,
                    "GF" | "F" => {
                        c.expect("(")?;
                        let pcol = c.col();
                        let p = c.small()?;
                        c.expect(")")?;
                        if !is_prime(p) {
                            return Err(err(*ln, pcol, format!("{p} is not prime")));
                        }
                        FieldSpec::Prime(p)
                    }
                    _ => return Err(err(*ln, col, format!("unknown field '{f}'"))),
                };
                c.finish()?;
            }
            "param" => {
                let col = c.col();
                let name = c.ident()?;
                let d = param.get_or_insert_with(|| ParamDecl { name: name.clone(), line: *ln, nonvanishing: Vec::new(), value: None });
                if d.name != name {
                    return Err(err(*ln, col, format!("only one parameter is supported, '{}' is already declared", d.name)));
                }
                if c.eat("!=") {
                    while !c.at_end() {
                        c.eat(",");
                        d.nonvanishing.push(c.rational()?);
                    }
                } else if c.eat("=") {
                    let vcol = c.col();
                    let v = c.rational()?;
                    d.value = Some((v, *ln, vcol));
                    c.finish()?;
                } else {
                    c.finish()?;
                }
            }
            "objects" => {
                if gens_seen {
                    return Err(err(*ln, kw_col, "objects must be declared before generators"));
                }
                let mut v = Vec::new();
                while !c.at_end() {
                    let col = c.col();
                    let o = c.ident()?;
                    if v.contains(&o) {
                        return Err(err(*ln, col, format!("duplicate object '{o}'")));
                    }
                    v.push(o);
                }
                objects = Some(v);
            }
            "generators" => {
                gens_seen = true;
                let objs = objects.get_or_insert_with(|| vec!["*".to_string()]);
                parse_generators(&mut c, objs, &mut gens)?;
            }
            "order" => order_line = Some(*ln),
            "measure" => measure_line = Some(*ln),
            "certificate" => {
                let col = c.col();
                let k = c.keyword()?;
                let d = match k.as_str() {
                    "order-compatible" => CertDecl::Order,
                    "pattern-measure" => CertDecl::Measure(if c.at_end() { crate::completion::DEFAULT_CONTEXT_BOUND } else { c.small()? as usize }),
                    "user-asserted" => CertDecl::User,
                    _ => return Err(err(*ln, col, format!("unknown certificate kind '{k}'"))),
                };
                c.finish()?;
                cert = Some((d, *ln));
            }
            "convergent" => {
                c.finish()?;
                convergent_line = Some(*ln);
            }
            "rule" => rule_lines.push((*ln, 1)),
            _ => return Err(err(*ln, kw_col, format!("unknown statement '{kw}'"))),
        }
    }

    let objects = objects.unwrap_or_else(|| vec!["*".to_string()]);
    let quiver = Quiver::new(objects, gens).map_err(|e| err(1, 1, e.to_string()))?;
    let find = |ln: usize| lines.iter().find(|l| l.0 == ln).expect("recorded line");

    let mut ctx = None;
    if let Some(p) = &param {
        if quiver.gen_by_name(&p.name).is_some() {
            return Err(err(p.line, 1, format!("parameter '{}' clashes with a generator", p.name)));
        }
        match &p.value {
            Some((v, ln, col)) => {
                if p.nonvanishing.contains(v) {
                    return Err(err(*ln, *col, format!("parameter {} = {v} violates the constraint {} != {v}", p.name, p.name)));
                }
            }
            None => {
                if matches!(field, FieldSpec::Prime(_)) {
                    return Err(err(p.line, 1, "symbolic parameters need field Q"));
                }
                ctx = Some(Arc::new(ParamCtx { name: p.name.clone(), nonvanishing: p.nonvanishing.clone() }));
            }
        }
    }
    let cx = Ctx { quiver, field, param, ctx };

    let order = match order_line {
        Some(ln) => {
            let (_, toks, end) = find(ln);
            let mut c = Cur { line: ln, toks, pos: 1, end_col: *end };
            Some(parse_order(&mut c, &cx.quiver)?)
        }
        None => None,
    };
    let measure = match measure_line {
        Some(ln) => {
            let (_, toks, end) = find(ln);
            let mut c = Cur { line: ln, toks, pos: 1, end_col: *end };
            Some(parse_measure(&mut c, &cx.quiver)?)
        }
        None => None,
    };

    let mut rules: Vec<Rule> = Vec::new();
    let mut rescaled = Vec::new();
    let mut names: HashMap<String, usize> = HashMap::new();
    for &(ln, skip) in &rule_lines {
        let (_, toks, end) = find(ln);
        let mut c = Cur { line: ln, toks, pos: skip, end_col: *end };
        let ncol = c.col();
        let name = c.ident()?;
        if let Some(prev) = names.get(&name) {
            return Err(err(ln, ncol, format!("duplicate rule name '{name}' (first on line {prev})")));
        }
        names.insert(name.clone(), ln);
        c.expect(":")?;
        let scol = c.col();
        let w = word(&mut c, &cx)?;
        if w.is_empty() {
            return Err(err(ln, scol, "rule source must be a nonempty word"));
        }
        let src = monomial(&c, &cx, &w)?;
        c.expect("->")?;
        let tcol = c.col();
        let mut tgt = polynomial(&mut c, &cx, &src)?;
        c.finish()?;
        let self_coef = tgt.coeff(&src);
        if !self_coef.is_zero() {
            let k = &Scalar::one() - &self_coef;
            if k.is_zero() {
                return Err(err(ln, tcol, format!("rule '{name}' has its source in the target with coefficient 1")));
            }
            let kinv = lift(&c, tcol, k.inv())?;
            tgt.add_term(&-&self_coef, &src);
            tgt = tgt.scale(&kinv);
            rescaled.push(name.clone());
        }
        rules.push(Rule::new(name, src, tgt));
    }

    let mut system = Polygraph2::new(cx.quiver.clone(), rules).map_err(|e| err(1, 1, e.to_string()))?;
    system.field = cx.field.clone();
    system.param = cx.ctx.clone();
    system.order = order;
    system.measure = measure;

    if let Some((d, ln)) = cert {
        let hint = match d {
            CertDecl::Order => TerminationHint::Order(system.order.clone().ok_or_else(|| err(ln, 1, "order-compatible certificate without an order"))?),
            CertDecl::Measure(l) => TerminationHint::Measure(system.measure.clone().ok_or_else(|| err(ln, 1, "pattern-measure certificate without a measure"))?, l),
            CertDecl::User => TerminationHint::UserAsserted,
        };
        match certify_termination(&system, hint) {
            TerminationReport::Certified(c) => system.termination = Some(c),
            TerminationReport::Failed { reason, .. } => return Err(err(ln, 1, format!("certificate does not hold: {reason}"))),
        }
    }
    if let Some(ln) = convergent_line {
        if system.termination.is_none() {
            return Err(err(ln, 1, "convergence needs a termination certificate"));
        }
        let rep = check_confluence(&system).map_err(|e| err(ln, 1, e.to_string()))?;
        if !rep.convergent {
            let w = rep.witness().map(|c| c.word.clone()).unwrap_or_default();
            return Err(err(ln, 1, format!("declared convergent, but the critical branching on {w} is not joinable")));
        }
        system.convergent = true;
    }
    let param_value = cx.param.as_ref().and_then(|p| p.value.as_ref().map(|(v, _, _)| (p.name.clone(), v.clone())));
    Ok(Presentation { system, param_value, rule_lines: rule_lines.iter().map(|r| r.0).collect(), rescaled })
}

/// Parse a standalone monomial, as given to `nf --term`.
pub fn parse_monomial(q: &Quiver, text: &str) -> Result<Monomial> {
    let toks = lex(1, text)?;
    let mut c = Cur { line: 1, toks: &toks, pos: 0, end_col: text.chars().count() + 1 };
    let cx = Ctx { quiver: q.clone(), field: FieldSpec::Rational, param: None, ctx: None };
    let w = word(&mut c, &cx)?;
    c.finish()?;
    if w.is_empty() {
        return Err(err(1, 1, "empty word"));
    }
    monomial(&c, &cx, &w)
}

/// Parse a polynomial over the system's field and parameter.
pub fn parse_polynomial(p: &Polygraph2, text: &str) -> Result<Polynomial> {
    let toks = lex(1, text)?;
    let mut c = Cur { line: 1, toks: &toks, pos: 0, end_col: text.chars().count() + 1 };
    let param = p.param.as_ref().map(|ctx| ParamDecl { name: ctx.name.clone(), line: 1, nonvanishing: ctx.nonvanishing.clone(), value: None });
    let cx = Ctx { quiver: p.quiver.clone(), field: p.field.clone(), param, ctx: p.param.clone() };
    // The boundary is taken from the first word that appears.
    let first = c.toks.iter().find_map(|t| match &t.tok {
        Tok::Ident(s) => cx.gen(s),
        _ => None,
    });
    let (s, t) = match first {
        Some(g) => {
            let gen = &cx.quiver.generators[g as usize];
            let start = gen.src;
            // Scan the first word to find its target.
            let mut probe = Cur { line: 1, toks: c.toks, pos: c.toks.iter().position(|t| matches!(&t.tok, Tok::Ident(n) if cx.gen(n) == Some(g))).unwrap(), end_col: c.end_col };
            let w = word(&mut probe, &cx)?;
            (start, monomial(&probe, &cx, &w)?.tgt)
        }
        None => (0, 0),
    };
    let proto = Monomial { word: Vec::new(), src: s, tgt: t };
    let f = polynomial(&mut c, &cx, &proto)?;
    c.finish()?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::print;

    fn pos(e: Error) -> (usize, usize, String) {
        match e {
            Error::Parse { line, col, msg } => (line, col, msg),
            e => panic!("not a parse error: {e}"),
        }
    }

    #[test]
    fn xyz_presentation() {
        let p = parse("field Q\ngenerators x y z\norder deglex x < y < z\nrule g : x y z -> x x x + y y y + z z z\n").unwrap().system;
        assert_eq!(p.show_rule(0), "g : x y z -> x^3 + y^3 + z^3");
    }

    #[test]
    fn bound_parameter_is_substituted() {
        let pres = parse("param a = 2\ngenerators x y z\nrule beta : z y -> (-1/a) x x\n").unwrap();
        assert_eq!(pres.system.show_rule(0), "beta : z y -> -1/2 x^2");
        assert!(pres.system.param.is_none());
        assert_eq!(pres.param_value.unwrap().1, BigRational::from_integer(2.into()));
    }

    #[test]
    fn symbolic_parameter_stays_symbolic() {
        let p = parse("param a != 0\ngenerators x y z\nrule beta : z y -> (-1/a) x^2\nrule g : y x x -> a^2 * x x y\n").unwrap().system;
        assert_eq!(p.show_rule(0), "beta : z y -> (-1/a) x^2");
        assert_eq!(p.show_rule(1), "g : y x^2 -> (a^2) x^2 y");
    }

    #[test]
    fn unknown_generator_has_position() {
        let (line, col, msg) = pos(parse("generators x y\n\nrule r : x w -> y y\n").unwrap_err());
        assert_eq!((line, col), (3, 12));
        assert!(msg.contains("unknown generator 'w'"));
    }

    #[test]
    fn semantic_errors() {
        let dup = "generators x y\nrule r : x y -> x x\nrule r : y y -> x x\n";
        assert!(pos(parse(dup).unwrap_err()).2.contains("duplicate rule name"));
        let multi = "objects p q\ngenerators f:p->q g:p->q\nrule r : f g -> f\n";
        assert_eq!(pos(parse(multi).unwrap_err()).0, 3);
        let nonparallel = "objects p q\ngenerators f:p->q g:q->p h:p->p\nrule r : f g -> h h\nrule s : g f -> f\n";
        assert!(pos(parse(nonparallel).unwrap_err()).2.contains("not parallel"));
        let constraint = "param a != 0 1\nparam a = 1\ngenerators x\nrule r : x x -> a x\n";
        assert!(pos(parse(constraint).unwrap_err()).2.contains("violates"));
        assert!(pos(parse("generators x\nrule r : -> x\n").unwrap_err()).2.contains("nonempty"));
        assert!(parse("field GF(100)\ngenerators x\n").is_err());
        assert!(parse("generators x\nfrobnicate\n").is_err());
        let maybe_zero = "param a\ngenerators x\nrule r : x x -> (1/a) x\n";
        assert!(pos(parse(maybe_zero).unwrap_err()).2.contains("may vanish"));
    }

    #[test]
    fn self_occurrence_is_rescaled() {
        let pres = parse("generators x y\nrule r : x y -> 3 x y + x x\n").unwrap();
        assert_eq!(pres.system.show_rule(0), "r : x y -> -1/2 x^2");
        assert_eq!(pres.rescaled, vec!["r"]);
        assert!(parse("generators x y\nrule r : x y -> x y + x x\n").is_err());
    }

    #[test]
    fn prime_field_reduces_coefficients() {
        let p = parse("field GF(7)\ngenerators x y\nrule r : x y -> 1/2 x x - 3 y y\n").unwrap().system;
        assert_eq!(p.show_rule(0), "r : x y -> 4 x^2 + 4 y^2");
    }

    #[test]
    fn zero_target_and_scalars() {
        let p = parse("generators x y\nrule r : x y -> 0\nrule s : y y -> 2 - x\n").unwrap().system;
        assert!(p.rule(0).tgt.is_zero());
        assert_eq!(p.show_rule(1), "s : y^2 -> 2 - x");
    }

    #[test]
    fn certificates_are_revalidated() {
        let ok = "generators x y z\norder deglex x < y < z\nmeasure 3 (x y z) + 1 (y)\ncertificate pattern-measure 3\nconvergent\nrule g : x y z -> x^3 + y^3 + z^3\n";
        let p = parse(ok).unwrap().system;
        assert!(p.convergent);
        let bad = ok.replace("certificate pattern-measure 3", "certificate order-compatible");
        assert_eq!(pos(parse(&bad).unwrap_err()).0, 4);
        let not_confluent = "generators x y\norder deglex x < y\ncertificate order-compatible\nconvergent\nrule a : x y -> x x\nrule b : y y -> x x\n";
        assert!(pos(parse(not_confluent).unwrap_err()).2.contains("not joinable"));
    }

    #[test]
    fn round_trips() {
        let texts = [
            "field Q\ngenerators x y z\norder deglex x < y < z\nmeasure 3 (x y z) + 1 (y)\nrule gamma : x y z -> x^3 + y^3 + z^3\n",
            "field Q\nparam a != 0 1\ngenerators x y z\norder deglex x < y < z\nrule alpha : y z -> -x^2\nrule beta : z y -> (-1/a) x^2\nrule c : y x -> ((a^2 + 1)/(a - 1)) x y\n",
            "field GF(101)\nobjects p q\ngenerators f:p->q g:q->p h:p->p@2\norder weighted-deglex f < g < h weights f=1 g=1 h=3\nrule r : f g -> h + 100 f g\n",
            "field Q\ngenerators x y z\norder elimination-deglex x y | z\nrule r : z x -> x y - 1/3 y y\n",
            "field Q\ngenerators x y\norder deglex x < y\ncertificate order-compatible\nconvergent\nrule alpha : x y -> x^2\n",
        ];
        for t in texts {
            let p = parse(t).unwrap().system;
            let printed = print(&p);
            let q = parse(&printed).unwrap().system;
            assert_eq!(p, q, "{printed}");
            assert_eq!(print(&q), printed);
            assert_eq!(q.convergent, p.convergent);
        }
    }

    #[test]
    fn standalone_terms() {
        let p = parse("generators x y z\n").unwrap().system;
        assert_eq!(parse_monomial(&p.quiver, "x y^2 z").unwrap().word, vec![0, 1, 1, 2]);
        assert!(parse_monomial(&p.quiver, "x q").is_err());
        let f = parse_polynomial(&p, "x y - 1/2 z z").unwrap();
        assert_eq!(p.show_poly(&f), "x y - 1/2 z^2");
    }
}
