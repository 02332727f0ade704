//! The Green ring in two models: integer combinations of string-module
//! classes multiplied by the Clebsch-Gordan rule, and the quotient
//! Z[x,y] / (x^n - 1, (y - x - 1) f_d(x,y)) on the basis x^i y^j.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fusion::FusionContext;
use crate::majid::Params;
use crate::quiverrep::IndecompClass;

fn checked_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow("Green ring addition"))
}

fn checked_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow("Green ring multiplication"))
}

/// An integer combination of classes [V(i,l)]; zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GreenElement {
    terms: BTreeMap<IndecompClass, i64>,
}

impl GreenElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// [V(0,0)].
    pub fn one() -> Self {
        Self::basis(IndecompClass { i: 0, e: 0 })
    }

    pub fn basis(c: IndecompClass) -> Self {
        let mut out = Self::zero();
        out.terms.insert(c, 1);
        out
    }

    pub fn terms(&self) -> &BTreeMap<IndecompClass, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, c: &IndecompClass) -> i64 {
        self.terms.get(c).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, c: IndecompClass, mult: i64) -> Result<()> {
        let v = checked_add(self.coeff(&c), mult)?;
        if v == 0 {
            self.terms.remove(&c);
        } else {
            self.terms.insert(c, v);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (c, m) in &other.terms {
            out.add_term(*c, *m)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1)?)
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        let mut out = Self::zero();
        for (c, m) in &self.terms {
            out.add_term(*c, checked_mul(*m, k)?)?;
        }
        Ok(out)
    }

    /// Checks every class against `params`.
    pub fn validate(&self, params: &Params) -> Result<()> {
        for c in self.terms.keys() {
            if c.i >= params.n() || c.e >= params.d() {
                return Err(Error::InvalidClass {
                    i: c.i,
                    e: c.e,
                    n: params.n(),
                    d: params.d(),
                });
            }
        }
        Ok(())
    }

    pub fn from_json(json: &str, params: &Params) -> Result<Self> {
        let out: Self = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        out.validate(params)?;
        Ok(out)
    }
}

impl fmt::Display for GreenElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, m)) in self.terms.iter().enumerate() {
            let sign = if *m < 0 { "-" } else { "+" };
            if k > 0 {
                write!(f, " {sign} ")?;
            } else if *m < 0 {
                write!(f, "-")?;
            }
            match m.unsigned_abs() {
                1 => write!(f, "[{c}]")?,
                a => write!(f, "{a}*[{c}]")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct GreenTermRepr {
    i: usize,
    l: usize,
    mult: i64,
}

#[derive(Serialize, Deserialize)]
struct GreenElementRepr {
    terms: Vec<GreenTermRepr>,
}

impl Serialize for GreenElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GreenElementRepr {
            terms: self
                .terms
                .iter()
                .map(|(c, m)| GreenTermRepr { i: c.i, l: c.e, mult: *m })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GreenElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = GreenElementRepr::deserialize(deserializer)?;
        let mut out = GreenElement::zero();
        for t in repr.terms {
            out.add_term(IndecompClass { i: t.i, e: t.l }, t.mult)
                .map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}

/// A polynomial in Z[x, y], keyed by `(x-degree, y-degree)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly2 {
    terms: BTreeMap<(u32, u32), i64>,
}

impl IntPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, 1)
    }

    /// `c * x^a * y^b`.
    pub fn monomial(a: u32, b: u32, c: i64) -> Self {
        let mut out = Self::zero();
        if c != 0 {
            out.terms.insert((a, b), c);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: u32, b: u32) -> i64 {
        self.terms.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: i64) -> Result<()> {
        let v = checked_add(self.coeff(a, b), c)?;
        if v == 0 {
            self.terms.remove(&(a, b));
        } else {
            self.terms.insert((a, b), v);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (&(a, b), &c) in &other.terms {
            out.add_term(a, b, c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1)?)
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        let mut out = Self::zero();
        for (&(a, b), &c) in &self.terms {
            out.add_term(a, b, checked_mul(c, k)?)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (&(a1, b1), &c1) in &self.terms {
            for (&(a2, b2), &c2) in &other.terms {
                let a = a1.checked_add(a2).ok_or(Error::Overflow("polynomial degree"))?;
                let b = b1.checked_add(b2).ok_or(Error::Overflow("polynomial degree"))?;
                out.add_term(a, b, checked_mul(c1, c2)?)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Parses an expression such as `x^2*y - 3*(y - x - 1)`. Products may be
    /// written by juxtaposition (`2xy^3`); `n` and `d` stand for the
    /// parameters when `params` is given.
    pub fn parse(src: &str, params: Option<&Params>) -> Result<Self> {
        let mut parser = ExprParser {
            chars: src.chars().filter(|c| !c.is_whitespace()).map(normalize_char).collect(),
            pos: 0,
            params,
        };
        let out = parser.expr()?;
        if parser.pos != parser.chars.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(out)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn normalize_char(c: char) -> char {
    match c {
        '\u{2212}' | '\u{2013}' => '-',
        '\u{00b7}' | '\u{00d7}' => '*',
        other => other,
    }
}

struct ExprParser<'a> {
    chars: Vec<char>,
    pos: usize,
    params: Option<&'a Params>,
}

impl ExprParser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<IntPoly2> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                self.term()?.scale(-1)?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t)? } else { acc.sub(&t)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<IntPoly2> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?)?;
                }
                Some(c) if c == '(' || c.is_ascii_alphanumeric() => {
                    acc = acc.mul(&self.power()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<IntPoly2> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.exponent()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let v = self.number()?;
                u32::try_from(v).map_err(|_| self.error("exponent too large"))
            }
            Some(c @ ('n' | 'd')) => {
                self.pos += 1;
                let v = self.parameter(c)?;
                u32::try_from(v).map_err(|_| self.error("exponent too large"))
            }
            Some('(') => {
                self.pos += 1;
                let p = self.expr()?;
                self.expect(')')?;
                match p.terms.len() {
                    0 => Ok(0),
                    1 if p.terms.contains_key(&(0, 0)) => u32::try_from(p.coeff(0, 0))
                        .map_err(|_| self.error("exponent must be a nonnegative integer")),
                    _ => Err(self.error("exponent must be a constant")),
                }
            }
            _ => Err(self.error("expected exponent")),
        }
    }

    fn number(&mut self) -> Result<i64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.error("invalid integer"))
    }

    fn parameter(&self, c: char) -> Result<i64> {
        let p = self
            .params
            .ok_or_else(|| self.error("parameters n and d are not available"))?;
        Ok(if c == 'n' { p.n() } else { p.d() } as i64)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn atom(&mut self) -> Result<IntPoly2> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some('x') => {
                self.pos += 1;
                Ok(IntPoly2::x())
            }
            Some('y') => {
                self.pos += 1;
                Ok(IntPoly2::y())
            }
            Some(c @ ('n' | 'd')) => {
                self.pos += 1;
                Ok(IntPoly2::constant(self.parameter(c)?))
            }
            Some(c) if c.is_ascii_digit() => Ok(IntPoly2::constant(self.number()?)),
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

impl fmt::Display for IntPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|&(&(a, b), _)| std::cmp::Reverse((a + b, b)));
        let mut first = true;
        for (&(a, b), &c) in ordered {
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            let mag = c.unsigned_abs();
            let mut factors = Vec::new();
            if mag != 1 || (a == 0 && b == 0) {
                factors.push(mag.to_string());
            }
            for (var, e) in [('x', a), ('y', b)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyTermRepr {
    x: u32,
    y: u32,
    coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct IntPoly2Repr {
    terms: Vec<PolyTermRepr>,
}

impl Serialize for IntPoly2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        IntPoly2Repr {
            terms: self
                .terms
                .iter()
                .map(|(&(x, y), &coeff)| PolyTermRepr { x, y, coeff })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntPoly2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = IntPoly2Repr::deserialize(deserializer)?;
        let mut out = IntPoly2::zero();
        for t in repr.terms {
            out.add_term(t.x, t.y, t.coeff).map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}

/// Reduced representative modulo the Green ring relations: `coeffs[i][j]`
/// multiplies `x^i y^j`, `0 <= i < n`, `0 <= j < d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalForm {
    n: usize,
    d: usize,
    coeffs: Vec<Vec<i64>>,
}

impl NormalForm {
    pub fn zero(params: &Params) -> Self {
        NormalForm {
            n: params.n(),
            d: params.d(),
            coeffs: vec![vec![0; params.d()]; params.n()],
        }
    }

    /// `x^i y^j` for `i < n`, `j < d`.
    pub fn monomial(i: usize, j: usize, params: &Params) -> Result<Self> {
        if i >= params.n() || j >= params.d() {
            return Err(Error::Shape(format!(
                "monomial x^{i} y^{j} is outside the reduced basis for n = {}, d = {}",
                params.n(),
                params.d()
            )));
        }
        let mut out = Self::zero(params);
        out.coeffs[i][j] = 1;
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &[Vec<i64>] {
        &self.coeffs
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.coeffs[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other.n, other.d)?;
        let mut out = self.clone();
        for (row, orow) in out.coeffs.iter_mut().zip(&other.coeffs) {
            for (c, o) in row.iter_mut().zip(orow) {
                *c = checked_add(*c, *o)?;
            }
        }
        Ok(out)
    }

    pub fn to_poly(&self) -> IntPoly2 {
        let mut out = IntPoly2::zero();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    out.terms.insert((i as u32, j as u32), c);
                }
            }
        }
        out
    }

    fn check_shape(&self, n: usize, d: usize) -> Result<()> {
        let rows_ok = self.coeffs.len() == self.n && self.coeffs.iter().all(|r| r.len() == self.d);
        if !rows_ok || self.n != n || self.d != d {
            return Err(Error::Shape(format!(
                "normal form is {}x{} with {} rows, expected {n}x{d}",
                self.n,
                self.d,
                self.coeffs.len()
            )));
        }
        Ok(())
    }

    pub fn from_json(json: &str, params: &Params) -> Result<Self> {
        let out: Self = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        out.check_shape(params.n(), params.d())?;
        Ok(out)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// `f_i(x, y)` by the recursion `f_i = y f_{i-1} - x f_{i-2}`, `f_1 = 1`,
/// `f_2 = y`.
pub fn fibonacci_poly(i: usize) -> Result<IntPoly2> {
    if i == 0 {
        return Err(Error::ZeroIndex(0));
    }
    let (mut prev, mut cur) = (IntPoly2::zero(), IntPoly2::one());
    for _ in 1..i {
        let next = IntPoly2::y().mul(&cur)?.sub(&IntPoly2::x().mul(&prev)?)?;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// `f_i(x, y) = Σ_k (-1)^k C(i-1-k, k) x^k y^(i-1-2k)`.
pub fn fibonacci_closed_form(i: usize) -> Result<IntPoly2> {
    if i == 0 {
        return Err(Error::ZeroIndex(0));
    }
    let mut out = IntPoly2::zero();
    for k in 0..=(i - 1) / 2 {
        let c = binomial(i - 1 - k, k)?;
        let c = if k % 2 == 1 { -c } else { c };
        out.add_term(k as u32, (i - 1 - 2 * k) as u32, c)?;
    }
    Ok(out)
}

fn binomial(m: usize, k: usize) -> Result<i64> {
    let mut acc: i128 = 1;
    for t in 0..k {
        acc = acc * (m - t) as i128 / (t + 1) as i128;
        if acc > i64::MAX as i128 {
            return Err(Error::Overflow("binomial coefficient"));
        }
    }
    Ok(acc as i64)
}

/// Multiplication and the isomorphism between the two models for one
/// parameter set.
#[derive(Clone, Debug)]
pub struct GreenRing {
    fusion: FusionContext,
    /// `y^d ≡ Σ tail[t][j] x^t y^j`, `t < n`, `j < d`.
    tail: Vec<Vec<i64>>,
    /// Normal form of `x^i f_{l+1}`, indexed `[i][l]`.
    images: Vec<Vec<NormalForm>>,
}

impl GreenRing {
    pub fn new(params: &Params) -> Result<Self> {
        let (n, d) = (params.n(), params.d());
        let relation = IntPoly2::y()
            .sub(&IntPoly2::x())?
            .sub(&IntPoly2::one())?
            .mul(&fibonacci_poly(d)?)?;
        let mut tail = vec![vec![0i64; d]; n];
        for (&(a, b), &c) in relation.terms() {
            match (b as usize).cmp(&d) {
                std::cmp::Ordering::Less => {
                    let slot = &mut tail[a as usize % n][b as usize];
                    *slot = checked_add(*slot, -c)?;
                }
                std::cmp::Ordering::Equal => debug_assert!(a == 0 && c == 1),
                std::cmp::Ordering::Greater => unreachable!("relation has y-degree d"),
            }
        }
        let mut ring = GreenRing {
            fusion: FusionContext::new(params),
            tail,
            images: Vec::new(),
        };
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(d);
            for l in 0..d {
                let p = IntPoly2::monomial(i as u32, 0, 1).mul(&fibonacci_poly(l + 1)?)?;
                row.push(ring.reduce(&p)?);
            }
            images.push(row);
        }
        ring.images = images;
        Ok(ring)
    }

    pub fn params(&self) -> &Params {
        self.fusion.params()
    }

    /// Bilinear extension of the Clebsch-Gordan rule.
    pub fn mul(&self, u: &GreenElement, v: &GreenElement) -> Result<GreenElement> {
        u.validate(self.params())?;
        v.validate(self.params())?;
        let mut out = GreenElement::zero();
        for (a, ca) in u.terms() {
            for (b, cb) in v.terms() {
                let c = checked_mul(*ca, *cb)?;
                for (summand, mult) in self.fusion.decompose(*a, *b).iter() {
                    out.add_term(*summand, checked_mul(c, *mult as i64)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Canonical representative modulo `x^n - 1` and `(y - x - 1) f_d`.
    pub fn reduce(&self, p: &IntPoly2) -> Result<NormalForm> {
        let params = self.params();
        let (n, d) = (params.n(), params.d());
        let top = p.degree_y().map_or(0, |b| b as usize);
        let mut work = vec![vec![0i64; top.max(d - 1) + 1]; n];
        for (&(a, b), &c) in p.terms() {
            let slot = &mut work[a as usize % n][b as usize];
            *slot = checked_add(*slot, c)?;
        }
        for b in (d..=top).rev() {
            for a in 0..n {
                let c = std::mem::take(&mut work[a][b]);
                if c == 0 {
                    continue;
                }
                for (t, row) in self.tail.iter().enumerate() {
                    for (j, &r) in row.iter().enumerate() {
                        if r != 0 {
                            let slot = &mut work[(a + t) % n][b - d + j];
                            *slot = checked_add(*slot, checked_mul(c, r)?)?;
                        }
                    }
                }
            }
        }
        for row in &mut work {
            row.truncate(d);
        }
        Ok(NormalForm { n, d, coeffs: work })
    }

    /// `[V(i,l)] ↦ x^i f_{l+1}(x, y)`, extended linearly.
    pub fn to_poly(&self, u: &GreenElement) -> Result<NormalForm> {
        u.validate(self.params())?;
        let mut out = NormalForm::zero(self.params());
        for (c, m) in u.terms() {
            let image = &self.images[c.i][c.e];
            for (row, irow) in out.coeffs.iter_mut().zip(&image.coeffs) {
                for (slot, &x) in row.iter_mut().zip(irow) {
                    *slot = checked_add(*slot, checked_mul(*m, x)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Inverse of [`GreenRing::to_poly`], solving the triangular change of
    /// basis from the highest y-degree down.
    pub fn from_poly(&self, nf: &NormalForm) -> Result<GreenElement> {
        let params = self.params();
        nf.check_shape(params.n(), params.d())?;
        let mut rest = nf.coeffs.clone();
        let mut out = GreenElement::zero();
        for l in (0..params.d()).rev() {
            for i in 0..params.n() {
                let c = rest[i][l];
                if c == 0 {
                    continue;
                }
                out.add_term(IndecompClass { i, e: l }, c)?;
                for (row, irow) in rest.iter_mut().zip(&self.images[i][l].coeffs) {
                    for (slot, &x) in row.iter_mut().zip(irow) {
                        *slot = checked_add(*slot, checked_mul(-c, x)?)?;
                    }
                }
            }
        }
        debug_assert!(rest.iter().flatten().all(|&c| c == 0));
        Ok(out)
    }

    /// Product in the polynomial model.
    pub fn mul_normal(&self, a: &NormalForm, b: &NormalForm) -> Result<NormalForm> {
        self.reduce(&a.to_poly().mul(&b.to_poly())?)
    }
}

/// See [`GreenRing::mul`].
pub fn green_mul(u: &GreenElement, v: &GreenElement, params: &Params) -> Result<GreenElement> {
    GreenRing::new(params)?.mul(u, v)
}

/// See [`GreenRing::to_poly`].
pub fn to_poly(u: &GreenElement, params: &Params) -> Result<NormalForm> {
    GreenRing::new(params)?.to_poly(u)
}

/// See [`GreenRing::reduce`].
pub fn poly_reduce(p: &IntPoly2, params: &Params) -> Result<NormalForm> {
    GreenRing::new(params)?.reduce(p)
}

/// See [`GreenRing::from_poly`].
pub fn from_poly(nf: &NormalForm, params: &Params) -> Result<GreenElement> {
    GreenRing::new(params)?.from_poly(nf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majid::validate_params;

    fn class(i: usize, e: usize) -> GreenElement {
        GreenElement::basis(IndecompClass { i, e })
    }

    fn poly(s: &str) -> IntPoly2 {
        IntPoly2::parse(s, None).unwrap()
    }

    #[test]
    fn fibonacci_examples() {
        assert_eq!(fibonacci_poly(1).unwrap(), IntPoly2::one());
        assert_eq!(fibonacci_poly(2).unwrap(), IntPoly2::y());
        assert_eq!(fibonacci_poly(3).unwrap(), poly("y^2 - x"));
        assert_eq!(fibonacci_poly(0), Err(Error::ZeroIndex(0)));
        for i in 1..=30 {
            assert_eq!(fibonacci_poly(i).unwrap(), fibonacci_closed_form(i).unwrap(), "f_{i}");
        }
    }

    #[test]
    fn parser_and_display() {
        assert_eq!(poly("2xy^3 - (x+1)^2"), poly("2*x*y^3 - x^2 - 2*x - 1"));
        assert_eq!(poly("−x·y"), poly("-x*y"));
        assert_eq!(poly("x^(2+1)"), poly("x*x*x"));
        assert_eq!(poly("y^2 - x").to_string(), "y^2 - x");
        assert_eq!(poly("3 - 2x^2y").to_string(), "-2*x^2*y + 3");
        let p = validate_params(3, 1, 1).unwrap();
        assert_eq!(IntPoly2::parse("x^n - d", Some(&p)).unwrap(), poly("x^3 - 9"));
        assert!(IntPoly2::parse("x^n", None).is_err());
        assert!(IntPoly2::parse("x + ", None).is_err());
        assert!(IntPoly2::parse("x)", None).is_err());
        let json = serde_json::to_string(&poly("y^2 - x")).unwrap();
        assert_eq!(IntPoly2::from_json(&json).unwrap(), poly("y^2 - x"));
    }

    #[test]
    fn reduction_examples() {
        for p in [validate_params(2, 1, 1).unwrap(), validate_params(3, 0, 3).unwrap()] {
            let ring = GreenRing::new(&p).unwrap();
            let n = p.n() as u32;
            let xn = IntPoly2::monomial(n, 0, 1);
            assert!(ring.reduce(&xn.sub(&IntPoly2::one()).unwrap()).unwrap().is_zero());
            let rel = poly("y - x - 1").mul(&fibonacci_poly(p.d()).unwrap()).unwrap();
            assert!(ring.reduce(&rel).unwrap().is_zero());
            let shifted = ring.reduce(&IntPoly2::monomial(n + 1, 0, 1)).unwrap();
            assert_eq!(shifted, NormalForm::monomial(1, 0, &p).unwrap());
        }
    }

    #[test]
    fn to_poly_and_back() {
        let p = validate_params(2, 1, 1).unwrap();
        let ring = GreenRing::new(&p).unwrap();
        assert_eq!(ring.to_poly(&class(0, 0)).unwrap(), NormalForm::monomial(0, 0, &p).unwrap());
        assert_eq!(ring.to_poly(&class(1, 0)).unwrap(), NormalForm::monomial(1, 0, &p).unwrap());
        assert_eq!(ring.to_poly(&class(0, 2)).unwrap(), ring.reduce(&poly("y^2 - x")).unwrap());
        let y2 = NormalForm::monomial(0, 2, &p).unwrap();
        assert_eq!(ring.from_poly(&y2).unwrap(), class(0, 2).add(&class(1, 0)).unwrap());
        for i in 0..p.n() {
            for l in 0..p.d() {
                let u = class(i, l);
                assert_eq!(ring.from_poly(&ring.to_poly(&u).unwrap()).unwrap(), u);
                let m = NormalForm::monomial(i, l, &p).unwrap();
                assert_eq!(ring.to_poly(&ring.from_poly(&m).unwrap()).unwrap(), m);
            }
        }
    }

    #[test]
    fn relations_hold() {
        for p in crate::majid::Params::all_up_to(4) {
            let ring = GreenRing::new(&p).unwrap();
            let (n, d) = (p.n(), p.d());
            let mut power = GreenElement::one();
            for _ in 0..n {
                power = ring.mul(&power, &class(1, 0)).unwrap();
            }
            assert_eq!(power, GreenElement::one());
            if d >= 2 {
                let lhs = ring.mul(&class(0, 1), &class(0, d - 1)).unwrap();
                let rhs = class(0, d - 1).add(&ring.mul(&class(1, 0), &class(0, d - 1)).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{p}");
            }
            for l in 2..d {
                let lhs = ring.mul(&class(0, 1), &class(0, l - 1)).unwrap();
                let rhs = class(0, l).add(&ring.mul(&class(1, 0), &class(0, l - 2)).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn homomorphism_on_basis_pairs() {
        for p in [validate_params(2, 1, 3).unwrap(), validate_params(3, 2, 5).unwrap()] {
            let ring = GreenRing::new(&p).unwrap();
            let all = IndecompClass::all(&p);
            for a in &all {
                for b in &all {
                    let u = GreenElement::basis(*a);
                    let v = GreenElement::basis(*b);
                    let lhs = ring.to_poly(&ring.mul(&u, &v).unwrap()).unwrap();
                    let rhs = ring
                        .mul_normal(&ring.to_poly(&u).unwrap(), &ring.to_poly(&v).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs, "{p} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn json_formats() {
        let p = validate_params(2, 0, 2).unwrap();
        let u = class(1, 1).add(&class(0, 0).scale(-3).unwrap()).unwrap();
        let json = serde_json::to_string(&u).unwrap();
        assert_eq!(json, r#"{"terms":[{"i":0,"l":0,"mult":-3},{"i":1,"l":1,"mult":1}]}"#);
        assert_eq!(GreenElement::from_json(&json, &p).unwrap(), u);
        assert!(GreenElement::from_json(r#"{"terms":[{"i":0,"l":2,"mult":1}]}"#, &p).is_err());
        let nf = NormalForm::monomial(1, 1, &p).unwrap();
        let json = serde_json::to_string(&nf).unwrap();
        assert_eq!(json, r#"{"n":2,"d":2,"coeffs":[[0,0],[0,1]]}"#);
        assert_eq!(NormalForm::from_json(&json, &p).unwrap(), nf);
        assert!(NormalForm::from_json(r#"{"n":2,"d":2,"coeffs":[[0,0]]}"#, &p).is_err());
        assert_eq!(u.to_string(), "-3*[V(0,0)] + [V(1,1)]");
    }

    #[test]
    fn overflow_is_reported() {
        let big = GreenElement::one().scale(i64::MAX).unwrap();
        let p = validate_params(2, 0, 2).unwrap();
        assert_eq!(GreenRing::new(&p).unwrap().mul(&big, &big), Err(Error::Overflow("Green ring multiplication")));
    }
}
