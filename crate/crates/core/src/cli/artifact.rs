//! The artifact file format: a ring header followed by named objects.
//!
//! ```text
//! ring Q[x,y] degrees [1,1]
//!
//! dm D
//!   degree 2
//!   gens [0,0]
//!   matrix [[x*y, -x^2], [y^2, -x*y]]
//! end
//! ```
//!
//! The full grammar is in `docs/FORMAT.md`.

use std::fmt::Write as _;

use num_bigint::BigInt;

use super::lexer::{err, tokenize, Tok, Token};
use crate::diffmod::{fold, DMorphism, DifferentialModule};
use crate::error::{Error, Result};
use crate::graded::{FreeModule, GradedMatrix, PresentedModule};
use crate::resolve::{FlagResolution, FreeFlag, Provenance};
use crate::ring::{Field, GradedRing, MonomialOrder, PolyDegree, Polynomial, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Artifact {
    pub ring: GradedRing,
    pub objects: Vec<Named>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Named {
    pub name: String,
    pub object: Object,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Object {
    Dm(DifferentialModule),
    Complex(Complex),
    Flag(FlagObject),
    Morphism(MorphismObject),
    Matrix(GradedMatrix),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Dm(_) => "dm",
            Object::Complex(_) => "complex",
            Object::Flag(_) => "flag",
            Object::Morphism(_) => "morphism",
            Object::Matrix(_) => "matrix",
        }
    }
}

/// `C_0 <- C_1 <- ...`, folded with degree `degree` on use.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub degree: i64,
    pub modules: Vec<FreeModule>,
    /// `maps[i]: C_{i+1} -> C_i`.
    pub maps: Vec<GradedMatrix>,
}

impl Complex {
    pub fn fold(&self, ring: &GradedRing) -> Result<DifferentialModule> {
        fold(ring, &self.modules, &self.maps, self.degree)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlagObject {
    pub flag: FreeFlag,
    /// Name of the module the augmentation maps to.
    pub target: Option<String>,
    pub augmentation: Option<GradedMatrix>,
    pub provenance: Option<Provenance>,
    pub depth: Option<usize>,
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MorphismObject {
    pub source: String,
    pub target: String,
    pub map: GradedMatrix,
}

impl Artifact {
    pub fn new(ring: GradedRing) -> Self {
        Artifact { ring, objects: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, object: Object) {
        self.objects.push(Named { name: name.into(), object });
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.iter().find(|o| o.name == name).map(|o| &o.object)
    }

    /// The named object, or the first one that defines a differential
    /// module when no name is given.
    pub fn pick(&self, name: Option<&str>) -> Result<&Named> {
        match name {
            Some(n) => self
                .objects
                .iter()
                .find(|o| o.name == n)
                .ok_or_else(|| Error::InvalidArgument(format!("no object named {n}"))),
            None => self
                .objects
                .iter()
                .find(|o| matches!(o.object, Object::Dm(_) | Object::Complex(_) | Object::Flag(_)))
                .ok_or_else(|| Error::InvalidArgument("the file holds no dm, complex or flag".into())),
        }
    }

    /// The differential module an object stands for.
    pub fn dm(&self, name: &str) -> Result<DifferentialModule> {
        let obj = self
            .get(name)
            .ok_or_else(|| Error::InvalidArgument(format!("no object named {name}")))?;
        match obj {
            Object::Dm(d) => Ok(d.clone()),
            Object::Complex(c) => c.fold(&self.ring),
            Object::Flag(f) => f.flag.to_dm(&self.ring),
            other => Err(Error::InvalidArgument(format!("{name} is a {}, not a module", other.kind()))),
        }
    }

    pub fn flag(&self, name: &str) -> Result<&FlagObject> {
        match self.get(name) {
            Some(Object::Flag(f)) => Ok(f),
            Some(o) => Err(Error::InvalidArgument(format!("{name} is a {}, not a flag", o.kind()))),
            None => Err(Error::InvalidArgument(format!("no object named {name}"))),
        }
    }

    /// A flag with a target and augmentation as a resolution.
    pub fn flag_resolution(&self, name: &str) -> Result<FlagResolution> {
        let f = self.flag(name)?;
        let (Some(t), Some(aug)) = (&f.target, &f.augmentation) else {
            return Err(Error::InvalidArgument(format!("flag {name} has no target and augmentation")));
        };
        Ok(FlagResolution {
            flag: f.flag.clone(),
            augmentation: aug.clone(),
            target: self.dm(t)?,
            provenance: f.provenance.unwrap_or(Provenance::MinimalFlag),
            depth: f.depth.unwrap_or(f.flag.len()),
            truncated: f.truncated,
        })
    }

    pub fn morphism(&self, name: &str) -> Result<DMorphism> {
        match self.get(name) {
            Some(Object::Morphism(m)) => Ok(DMorphism::new_unchecked(self.dm(&m.source)?, self.dm(&m.target)?, m.map.clone())),
            Some(o) => Err(Error::InvalidArgument(format!("{name} is a {}, not a morphism", o.kind()))),
            None => Err(Error::InvalidArgument(format!("no object named {name}"))),
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

/// A parsed matrix entry with the position of its first token.
type RawEntry = (Polynomial, usize, usize);

struct RawMatrix {
    rows: Vec<Vec<RawEntry>>,
    line: usize,
    col: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self> {
        let mut toks = tokenize(src)?;
        let (line, col) = toks.last().map_or((1, 1), |t| (t.line + 1, 1));
        toks.push(Token { tok: Tok::Newline, line, col });
        Ok(Parser { toks, pos: 0 })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        let t = self.peek();
        Err(err(t.line, t.col, msg))
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Int(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::Newline => "end of line".into(),
        }
    }

    fn is_sym(&self, c: char) -> bool {
        !self.at_end() && self.peek().tok == Tok::Sym(c)
    }

    fn sym(&mut self, c: char) -> Result<()> {
        if self.is_sym(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected '{c}', found {}", Self::describe(&self.peek().tok)))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match &self.peek().tok {
            Tok::Ident(s) if !self.at_end() => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            t => self.fail(format!("expected a name, found {}", Self::describe(t))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        let at = self.peek().clone();
        let w = self.ident()?;
        if w == kw {
            Ok(())
        } else {
            Err(err(at.line, at.col, format!("expected '{kw}', found '{w}'")))
        }
    }

    fn end_of_line(&mut self) -> Result<()> {
        if self.at_end() {
            return Ok(());
        }
        match self.peek().tok {
            Tok::Newline => {
                self.pos += 1;
                Ok(())
            }
            ref t => self.fail(format!("expected end of line, found {}", Self::describe(t))),
        }
    }

    fn skip_blank(&mut self) {
        while !self.at_end() && self.peek().tok == Tok::Newline {
            self.pos += 1;
        }
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.is_sym('-');
        if neg {
            self.pos += 1;
        }
        match &self.peek().tok {
            Tok::Int(s) => {
                let t = self.peek().clone();
                let v: i64 = s.parse().map_err(|_| err(t.line, t.col, format!("integer {s} out of range")))?;
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            t => self.fail(format!("expected an integer, found {}", Self::describe(t))),
        }
    }

    fn int_list(&mut self) -> Result<Vec<i64>> {
        self.sym('[')?;
        let mut out = Vec::new();
        if self.is_sym(']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if self.is_sym(',') {
                self.pos += 1;
                continue;
            }
            self.sym(']')?;
            return Ok(out);
        }
    }

    fn poly(&mut self, ring: &GradedRing) -> Result<Polynomial> {
        let mut acc = if self.is_sym('-') {
            self.pos += 1;
            ring.neg(&self.product(ring)?)
        } else {
            self.product(ring)?
        };
        loop {
            if self.is_sym('+') {
                self.pos += 1;
                acc = ring.add(&acc, &self.product(ring)?);
            } else if self.is_sym('-') {
                self.pos += 1;
                acc = ring.sub(&acc, &self.product(ring)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self, ring: &GradedRing) -> Result<Polynomial> {
        let mut acc = self.power(ring)?;
        loop {
            if self.is_sym('*') {
                self.pos += 1;
                acc = ring.mul(&acc, &self.power(ring)?);
            } else if self.is_sym('/') {
                self.pos += 1;
                let at = self.peek().clone();
                let d = self.power(ring)?;
                let inv = d
                    .as_constant()
                    .filter(|c| !crate::graded::GradedMatrix::scalar_is_zero(c))
                    .and_then(|c| ring.field().inv(&c))
                    .ok_or_else(|| err(at.line, at.col, "division only by a nonzero constant"))?;
                acc = ring.scalar_mul(&inv, &acc);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self, ring: &GradedRing) -> Result<Polynomial> {
        let base = self.atom(ring)?;
        if self.is_sym('^') {
            self.pos += 1;
            let at = self.peek().clone();
            let e = self.int()?;
            let e = u32::try_from(e).map_err(|_| err(at.line, at.col, format!("bad exponent {e}")))?;
            return Ok(ring.pow(&base, e));
        }
        Ok(base)
    }

    fn atom(&mut self, ring: &GradedRing) -> Result<Polynomial> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(s) => {
                self.pos += 1;
                let v: BigInt = s.parse().expect("lexer yields digits");
                Ok(ring.constant(ring.field().normalize(Scalar::from_integer(v))))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                ring.var_by_name(name)
                    .ok_or_else(|| err(t.line, t.col, format!("unknown variable '{name}'")))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let p = self.poly(ring)?;
                self.sym(')')?;
                Ok(p)
            }
            Tok::Sym('-') => {
                self.pos += 1;
                Ok(ring.neg(&self.atom(ring)?))
            }
            other => self.fail(format!("expected a polynomial, found {}", Self::describe(other))),
        }
    }

    fn matrix(&mut self, ring: &GradedRing) -> Result<RawMatrix> {
        let start = self.peek().clone();
        self.sym('[')?;
        let mut rows = Vec::new();
        if !self.is_sym(']') {
            loop {
                self.sym('[')?;
                let mut row = Vec::new();
                if !self.is_sym(']') {
                    loop {
                        let at = self.peek().clone();
                        row.push((self.poly(ring)?, at.line, at.col));
                        if self.is_sym(',') {
                            self.pos += 1;
                            continue;
                        }
                        break;
                    }
                }
                self.sym(']')?;
                rows.push(row);
                if self.is_sym(',') {
                    self.pos += 1;
                    continue;
                }
                break;
            }
        }
        self.sym(']')?;
        Ok(RawMatrix {
            rows,
            line: start.line,
            col: start.col,
        })
    }

    fn parse_ring(&mut self) -> Result<GradedRing> {
        self.skip_blank();
        self.keyword("ring")?;
        let at = self.peek().clone();
        let field = match self.ident()?.as_str() {
            "Q" | "QQ" => Field::Rational,
            "GF" => {
                self.sym('(')?;
                let pat = self.peek().clone();
                let p = self.int()?;
                self.sym(')')?;
                if p < 2 || !is_prime(p as u64) {
                    return Err(err(pat.line, pat.col, format!("{p} is not a prime")));
                }
                Field::Prime(p as u64)
            }
            f => return Err(err(at.line, at.col, format!("unknown coefficient field '{f}'"))),
        };
        self.sym('[')?;
        let mut names = Vec::new();
        if !self.is_sym(']') {
            loop {
                names.push(self.ident()?);
                if self.is_sym(',') {
                    self.pos += 1;
                    continue;
                }
                break;
            }
        }
        self.sym(']')?;
        let mut degrees = vec![1; names.len()];
        let mut order = MonomialOrder::GRevLex;
        let mut quotient: Option<(Token, GradedRing, Vec<Polynomial>)> = None;
        while !self.at_end() && self.peek().tok != Tok::Newline {
            let kat = self.peek().clone();
            match self.ident()?.as_str() {
                "degrees" => {
                    let dat = self.peek().clone();
                    degrees = self.int_list()?;
                    if degrees.len() != names.len() {
                        return Err(err(dat.line, dat.col, format!("{} degrees for {} variables", degrees.len(), names.len())));
                    }
                }
                "order" => {
                    let oat = self.peek().clone();
                    order = match self.ident()?.as_str() {
                        "grevlex" => MonomialOrder::GRevLex,
                        "lex" => MonomialOrder::Lex,
                        o => return Err(err(oat.line, oat.col, format!("unknown monomial order '{o}'"))),
                    };
                }
                "mod" => {
                    let base = GradedRing::new(names.clone(), degrees.clone(), field.clone(), order)
                        .map_err(|e| err(at.line, at.col, e.to_string()))?;
                    self.sym('[')?;
                    let mut gens = Vec::new();
                    if !self.is_sym(']') {
                        loop {
                            let gat = self.peek().clone();
                            let g = self.poly(&base)?;
                            if base.degree_of(&g) == PolyDegree::Inhomogeneous {
                                return Err(err(gat.line, gat.col, format!("quotient generator {} is not homogeneous", base.format_poly(&g))));
                            }
                            gens.push(g);
                            if self.is_sym(',') {
                                self.pos += 1;
                                continue;
                            }
                            break;
                        }
                    }
                    self.sym(']')?;
                    quotient = Some((kat, base, gens));
                }
                w => return Err(err(kat.line, kat.col, format!("unknown ring option '{w}'"))),
            }
        }
        self.end_of_line()?;
        let base = GradedRing::new(names, degrees, field, order).map_err(|e| err(at.line, at.col, e.to_string()))?;
        match quotient {
            None => Ok(base),
            Some((at, base_for, gens)) => {
                if base_for != base {
                    return Err(err(at.line, at.col, "'mod' must come after 'degrees' and 'order'"));
                }
                base.with_quotient(gens).map_err(|e| err(at.line, at.col, e.to_string()))
            }
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Checks shape and per-entry degrees, reporting the offending entry's
/// position.
fn build_matrix(ring: &GradedRing, raw: RawMatrix, source: &FreeModule, target: &FreeModule, degree: i64, what: &str) -> Result<GradedMatrix> {
    let rows = raw.rows.len();
    if rows != target.rank() && !(target.rank() == 0 && raw.rows.iter().all(|r| r.is_empty())) {
        return Err(err(raw.line, raw.col, format!("{what}: {rows} rows but the target has rank {}", target.rank())));
    }
    let mut entries = Vec::new();
    for (i, row) in raw.rows.into_iter().take(target.rank()).enumerate() {
        if row.len() != source.rank() {
            let (l, c) = row.first().map_or((raw.line, raw.col), |e| (e.1, e.2));
            return Err(err(l, c, format!("{what}: row {i} has {} entries but the source has rank {}", row.len(), source.rank())));
        }
        let mut out = Vec::new();
        for (j, (f, l, c)) in row.into_iter().enumerate() {
            let want = source.twist(j) + degree - target.twist(i);
            let got = ring.degree_of(&f);
            if !got.fits(want) {
                let found = match got {
                    PolyDegree::Degree(d) => format!("has degree {d}"),
                    _ => "is not homogeneous".into(),
                };
                return Err(err(l, c, format!("{what}: entry ({i}, {j}) = {} {found}, expected degree {want}", ring.format_poly(&f))));
            }
            out.push(f);
        }
        entries.push(out);
    }
    GradedMatrix::from_parts(source.clone(), target.clone(), degree, entries).map_err(|e| err(raw.line, raw.col, e.to_string()))
}

/// Reads the `key value` lines of one block up to `end`.
fn block_lines(p: &mut Parser, mut line: impl FnMut(&mut Parser, &str, &Token) -> Result<()>) -> Result<()> {
    loop {
        p.skip_blank();
        if p.at_end() {
            return p.fail("missing 'end'");
        }
        let at = p.peek().clone();
        let key = p.ident()?;
        if key == "end" {
            return p.end_of_line();
        }
        line(p, &key, &at)?;
        p.end_of_line()?;
    }
}

fn required<T>(v: Option<T>, at: &Token, what: &str) -> Result<T> {
    v.ok_or_else(|| err(at.line, at.col, format!("missing '{what}'")))
}

pub fn parse(src: &str) -> Result<Artifact> {
    let mut p = Parser::new(src)?;
    let ring = p.parse_ring()?;
    let mut art = Artifact::new(ring.clone());
    let ring = &ring;
    loop {
        p.skip_blank();
        if p.at_end() {
            break;
        }
        let head = p.peek().clone();
        let kind = p.ident()?;
        let name = p.ident()?;
        if art.get(&name).is_some() {
            return Err(err(head.line, head.col, format!("duplicate object name '{name}'")));
        }
        p.end_of_line()?;
        let obj = match kind.as_str() {
            "dm" => parse_dm(&mut p, ring, &head)?,
            "complex" => parse_complex(&mut p, ring, &head)?,
            "flag" => parse_flag(&mut p, ring, &art, &head)?,
            "morphism" => parse_morphism(&mut p, ring, &art, &head)?,
            "matrix" => parse_named_matrix(&mut p, ring, &head)?,
            k => return Err(err(head.line, head.col, format!("unknown object kind '{k}'"))),
        };
        art.push(name, obj);
    }
    Ok(art)
}

fn parse_dm(p: &mut Parser, ring: &GradedRing, head: &Token) -> Result<Object> {
    let (mut degree, mut gens, mut rel, mut mat) = (None, None, None, None);
    block_lines(p, |p, key, at| {
        match key {
            "degree" => degree = Some(p.int()?),
            "gens" => gens = Some(p.int_list()?),
            "relations" => {
                let t = p.int_list()?;
                rel = Some((t, p.matrix(ring)?));
            }
            "matrix" => mat = Some(p.matrix(ring)?),
            k => return Err(err(at.line, at.col, format!("unknown dm field '{k}'"))),
        }
        Ok(())
    })?;
    let degree = required(degree, head, "degree")?;
    let gens = FreeModule::new(required(gens, head, "gens")?);
    let raw = required(mat, head, "matrix")?;
    let (line, col) = (raw.line, raw.col);
    let d = build_matrix(ring, raw, &gens, &gens, degree, "differential")?;
    let module = match rel {
        None => PresentedModule::free(gens),
        Some((t, raw)) => {
            let (line, col) = (raw.line, raw.col);
            let r = build_matrix(ring, raw, &FreeModule::new(t), &gens, 0, "relations")?;
            PresentedModule::cokernel(ring, r).map_err(|e| err(line, col, e.to_string()))?
        }
    };
    Ok(Object::Dm(DifferentialModule::new(ring, module, d).map_err(|e| err(line, col, e.to_string()))?))
}

fn parse_complex(p: &mut Parser, ring: &GradedRing, head: &Token) -> Result<Object> {
    let mut degree = None;
    let mut modules = Vec::new();
    let mut raw_maps = Vec::new();
    block_lines(p, |p, key, at| {
        match key {
            "degree" => degree = Some(p.int()?),
            "module" => modules.push(FreeModule::new(p.int_list()?)),
            "map" => raw_maps.push(p.matrix(ring)?),
            k => return Err(err(at.line, at.col, format!("unknown complex field '{k}'"))),
        }
        Ok(())
    })?;
    let degree = required(degree, head, "degree")?;
    if raw_maps.len() + 1 != modules.len() && !(modules.is_empty() && raw_maps.is_empty()) {
        return Err(err(head.line, head.col, format!("{} modules need {} maps, found {}", modules.len(), modules.len().saturating_sub(1), raw_maps.len())));
    }
    let mut maps = Vec::new();
    for (i, raw) in raw_maps.into_iter().enumerate() {
        maps.push(build_matrix(ring, raw, &modules[i + 1], &modules[i], 0, &format!("map {}", i + 1))?);
    }
    Ok(Object::Complex(Complex { degree, modules, maps }))
}

fn parse_flag(p: &mut Parser, ring: &GradedRing, art: &Artifact, head: &Token) -> Result<Object> {
    let (mut degree, mut target, mut prov, mut depth, mut truncated) = (None, None, None, None, false);
    let mut blocks = Vec::new();
    let (mut mat, mut aug) = (None, None);
    block_lines(p, |p, key, at| {
        match key {
            "degree" => degree = Some(p.int()?),
            "target" => target = Some((p.ident()?, at.clone())),
            "provenance" => {
                let w = p.ident()?;
                prov = Some(Provenance::parse(&w).ok_or_else(|| err(at.line, at.col, format!("unknown provenance '{w}'")))?);
            }
            "block" => blocks.push(FreeModule::new(p.int_list()?)),
            "matrix" => mat = Some(p.matrix(ring)?),
            "augmentation" => aug = Some((p.matrix(ring)?, at.clone())),
            "depth" => {
                let d = p.int()?;
                depth = Some(usize::try_from(d).map_err(|_| err(at.line, at.col, "negative depth"))?);
            }
            "truncated" => {
                truncated = match p.ident()?.as_str() {
                    "true" => true,
                    "false" => false,
                    w => return Err(err(at.line, at.col, format!("expected true or false, found '{w}'"))),
                }
            }
            k => return Err(err(at.line, at.col, format!("unknown flag field '{k}'"))),
        }
        Ok(())
    })?;
    let degree = required(degree, head, "degree")?;
    let total = FreeModule::direct_sum(&blocks.iter().collect::<Vec<_>>());
    let raw = required(mat, head, "matrix")?;
    let (line, col) = (raw.line, raw.col);
    let d = build_matrix(ring, raw, &total, &total, degree, "differential")?;
    let flag = FreeFlag::new(blocks, d).map_err(|e| err(line, col, e.to_string()))?;
    if !flag.is_strictly_upper() {
        return Err(err(line, col, "the differential does not map each block into the earlier ones"));
    }
    let augmentation = match (&target, aug) {
        (Some((t, tat)), Some((raw, _))) => {
            let tgt = art.dm(t).map_err(|e| err(tat.line, tat.col, e.to_string()))?;
            Some(build_matrix(ring, raw, &total, tgt.generators(), 0, "augmentation")?)
        }
        (None, Some((_, aat))) => return Err(err(aat.line, aat.col, "augmentation without a target")),
        (Some((_, tat)), None) => return Err(err(tat.line, tat.col, "target without an augmentation")),
        (None, None) => None,
    };
    Ok(Object::Flag(FlagObject {
        flag,
        target: target.map(|t| t.0),
        augmentation,
        provenance: prov,
        depth,
        truncated,
    }))
}

fn parse_morphism(p: &mut Parser, ring: &GradedRing, art: &Artifact, head: &Token) -> Result<Object> {
    let (mut source, mut target, mut mat) = (None, None, None);
    block_lines(p, |p, key, at| {
        match key {
            "source" => source = Some((p.ident()?, at.clone())),
            "target" => target = Some((p.ident()?, at.clone())),
            "matrix" => mat = Some(p.matrix(ring)?),
            k => return Err(err(at.line, at.col, format!("unknown morphism field '{k}'"))),
        }
        Ok(())
    })?;
    let (s, sat) = required(source, head, "source")?;
    let (t, tat) = required(target, head, "target")?;
    let sd = art.dm(&s).map_err(|e| err(sat.line, sat.col, e.to_string()))?;
    let td = art.dm(&t).map_err(|e| err(tat.line, tat.col, e.to_string()))?;
    if sd.degree() != td.degree() {
        return Err(err(tat.line, tat.col, format!("source has degree {} and target {}", sd.degree(), td.degree())));
    }
    let map = build_matrix(ring, required(mat, head, "matrix")?, sd.generators(), td.generators(), 0, "morphism")?;
    Ok(Object::Morphism(MorphismObject { source: s, target: t, map }))
}

fn parse_named_matrix(p: &mut Parser, ring: &GradedRing, head: &Token) -> Result<Object> {
    let (mut source, mut target, mut degree, mut mat) = (None, None, None, None);
    block_lines(p, |p, key, at| {
        match key {
            "source" => source = Some(p.int_list()?),
            "target" => target = Some(p.int_list()?),
            "degree" => degree = Some(p.int()?),
            "entries" => mat = Some(p.matrix(ring)?),
            k => return Err(err(at.line, at.col, format!("unknown matrix field '{k}'"))),
        }
        Ok(())
    })?;
    let s = FreeModule::new(required(source, head, "source")?);
    let t = FreeModule::new(required(target, head, "target")?);
    let m = build_matrix(ring, required(mat, head, "entries")?, &s, &t, degree.unwrap_or(0), "matrix")?;
    Ok(Object::Matrix(m))
}

fn list(v: &[i64]) -> String {
    format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// Canonical text form; `parse(&print(a)) == a`.
pub fn print(a: &Artifact) -> String {
    let ring = &a.ring;
    let mut s = format!("ring {}\n", ring.describe());
    for Named { name, object } in &a.objects {
        let _ = writeln!(s, "\n{} {name}", object.kind());
        match object {
            Object::Dm(d) => {
                let _ = writeln!(s, "  degree {}", d.degree());
                let _ = writeln!(s, "  gens {}", list(d.generators().twists()));
                if d.module().has_relations() {
                    let r = d.module().relations();
                    let _ = writeln!(s, "  relations {} {}", list(r.source().twists()), r.format(ring));
                }
                let _ = writeln!(s, "  matrix {}", d.differential().format(ring));
            }
            Object::Complex(c) => {
                let _ = writeln!(s, "  degree {}", c.degree);
                for m in &c.modules {
                    let _ = writeln!(s, "  module {}", list(m.twists()));
                }
                for m in &c.maps {
                    let _ = writeln!(s, "  map {}", m.format(ring));
                }
            }
            Object::Flag(f) => {
                let _ = writeln!(s, "  degree {}", f.flag.degree());
                if let Some(t) = &f.target {
                    let _ = writeln!(s, "  target {t}");
                }
                if let Some(p) = f.provenance {
                    let _ = writeln!(s, "  provenance {}", p.name());
                }
                for b in f.flag.blocks() {
                    let _ = writeln!(s, "  block {}", list(b.twists()));
                }
                let _ = writeln!(s, "  matrix {}", f.flag.differential().format(ring));
                if let Some(m) = &f.augmentation {
                    let _ = writeln!(s, "  augmentation {}", m.format(ring));
                }
                if let Some(d) = f.depth {
                    let _ = writeln!(s, "  depth {d}");
                }
                if f.truncated {
                    s.push_str("  truncated true\n");
                }
            }
            Object::Morphism(m) => {
                let _ = writeln!(s, "  source {}", m.source);
                let _ = writeln!(s, "  target {}", m.target);
                let _ = writeln!(s, "  matrix {}", m.map.format(ring));
            }
            Object::Matrix(m) => {
                let _ = writeln!(s, "  source {}", list(m.source().twists()));
                let _ = writeln!(s, "  target {}", list(m.target().twists()));
                let _ = writeln!(s, "  degree {}", m.degree());
                let _ = writeln!(s, "  entries {}", m.format(ring));
            }
        }
        s.push_str("end\n");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX: &str = "ring Q[x,y] degrees [1,1]\n\ndm D\n  degree 2\n  gens [0,0]\n  matrix [[x*y, -x^2],\n          [y^2, -x*y]]\nend\n";

    #[test]
    fn parses_and_round_trips() {
        let a = parse(EX).unwrap();
        let d = a.dm("D").unwrap();
        assert_eq!(d.degree(), 2);
        assert!(d.is_valid(&a.ring).unwrap());
        let printed = print(&a);
        assert_eq!(parse(&printed).unwrap(), a);
        assert_eq!(print(&parse(&printed).unwrap()), printed);
    }

    #[test]
    fn empty_matrix_is_the_zero_module() {
        let a = parse("ring Q[x]\ndm Z\n degree 0\n gens []\n matrix []\nend\n").unwrap();
        assert_eq!(a.dm("Z").unwrap().rank(), 0);
    }

    #[test]
    fn inhomogeneous_entry_is_located() {
        let src = "ring Q[x]\ndm D\n degree 1\n gens [0]\n matrix [[x+1]]\nend\n";
        match parse(src) {
            Err(Error::Parse { line, col, msg }) => {
                assert_eq!((line, col), (5, 11));
                assert!(msg.contains("not homogeneous"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn quotient_rings_and_rationals() {
        let src = "ring GF(7)[x,y] mod [x^2, x*y]\ndm D\n degree 1\n gens [0]\n matrix [[1/2*y + 3*x]]\nend\n";
        let a = parse(src).unwrap();
        assert!(a.ring.is_quotient());
        assert_eq!(parse(&print(&a)).unwrap(), a);
        let q = parse("ring Q[x]\nmatrix M\n source [1]\n target [0]\n entries [[-3/4*x]]\nend\n").unwrap();
        assert!(print(&q).contains("-3/4*x"));
    }

    #[test]
    fn diagnostics() {
        let bad = [
            ("ring Q[x]\ndm D\n degree 0\n gens [0]\n matrix [[x]]\nend\n", 5),
            ("ring Q[x]\ndm D\n degree 0\n gens [0,0]\n matrix [[0,0]]\nend\n", 5),
            ("ring Q[x]\ndm D\n degree 0\n gens [0]\n matrix [[z]]\nend\n", 5),
            ("ring Q[x]\ndm D\n degree 0\n gens [0]\n matrix [[0]]\n", 6),
            ("ring R[x]\n", 1),
        ];
        for (src, line) in bad {
            match parse(src) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
    }
}
