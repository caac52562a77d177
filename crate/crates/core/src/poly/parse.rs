use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Coeff, Exponent, Monomial, MonomialOrdering, PolyError, Polynomial};

/// Maximum supported number of variables (multiplicative sets are bitmasks).
pub const MAX_VARS: usize = 64;

/// Ordered variable names; position 0 is the largest variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VariableSet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Result<Self, PolyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(names.len()));
        }
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(VariableSet { names, index })
    }

    /// `x1, ..., xn`.
    pub fn standard(n: usize) -> Self {
        Self::new((1..=n).map(|i| format!("x{i}"))).expect("standard names are unique")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Appends a fresh variable (used for homogenization) at the smallest position.
    pub fn with_fresh(&self, base: &str) -> VariableSet {
        let mut name = base.to_string();
        let mut k = 0;
        while self.index.contains_key(&name) {
            k += 1;
            name = format!("{base}{k}");
        }
        let mut names = self.names.clone();
        names.push(name);
        VariableSet::new(names).expect("fresh name is unique")
    }
}

/// A parsed input file: variables, ordering and generators.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem {
    pub vars: VariableSet,
    pub ord: MonomialOrdering,
    pub polys: Vec<Polynomial>,
}

impl PolySystem {
    pub fn parse(text: &str) -> Result<Self, PolyError> {
        parse_system(text)
    }

    /// Canonical text form, accepted back by [`PolySystem::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "vars: {}", self.vars.names().join(" "));
        let _ = writeln!(out, "order: {}", self.ord);
        let _ = writeln!(out, "polys:");
        for p in &self.polys {
            let _ = writeln!(out, "{}", p.display_with(self.vars.names()));
        }
        out
    }

    pub fn format(&self, p: &Polynomial) -> String {
        p.display_with(self.vars.names()).to_string()
    }

    /// Homogenized copy with a fresh smallest variable `h`.
    pub fn homogenized(&self) -> PolySystem {
        PolySystem {
            vars: self.vars.with_fresh("h"),
            ord: self.ord,
            polys: super::homogenize(&self.polys),
        }
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

pub fn parse_system(text: &str) -> Result<PolySystem, PolyError> {
    let mut vars: Option<VariableSet> = None;
    let mut ord = MonomialOrdering::default();
    let mut polys = Vec::new();
    let mut in_polys = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let err = |column: usize, message: String| PolyError::Parse { line: lineno + 1, column, message };
        if !in_polys {
            let (key, value) = trimmed
                .split_once(':')
                .ok_or_else(|| err(1, format!("expected `key: value`, found `{trimmed}`")))?;
            match key.trim() {
                "vars" => {
                    vars = Some(VariableSet::new(value.split_whitespace()).map_err(|e| err(1, e.to_string()))?);
                }
                "order" => {
                    ord = value.trim().parse().map_err(|e: String| err(1, e))?;
                }
                "polys" => {
                    if vars.is_none() {
                        return Err(err(1, "`vars:` must precede `polys:`".into()));
                    }
                    in_polys = true;
                    if !value.trim().is_empty() {
                        return Err(err(1, "polynomials start on the line after `polys:`".into()));
                    }
                }
                other => return Err(err(1, format!("unknown header `{other}`"))),
            }
            continue;
        }
        let v = vars.as_ref().expect("checked above");
        let body = line.trim_end().trim_end_matches([',', ';']);
        let p = Parser { src: body.as_bytes(), pos: 0, vars: v, ord, line: lineno + 1 }.polynomial()?;
        polys.push(p);
    }
    let vars = vars.ok_or(PolyError::Parse { line: 1, column: 1, message: "missing `vars:` header".into() })?;
    if !in_polys {
        return Err(PolyError::Parse { line: 1, column: 1, message: "missing `polys:` section".into() });
    }
    Ok(PolySystem { vars, ord, polys })
}

/// Parses a single polynomial in the given variables.
pub fn parse_polynomial(text: &str, vars: &VariableSet, ord: MonomialOrdering) -> Result<Polynomial, PolyError> {
    Parser { src: text.as_bytes(), pos: 0, vars, ord, line: 1 }.polynomial()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a VariableSet,
    ord: MonomialOrdering,
    line: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> PolyError {
        PolyError::Parse { line: self.line, column: self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn polynomial(mut self) -> Result<Polynomial, PolyError> {
        let n = self.vars.len();
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            None => return Err(self.error("empty polynomial")),
            _ => 1,
        };
        loop {
            let (m, mut c) = self.term()?;
            if sign < 0 {
                c = -c;
            }
            terms.push((m, c));
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(ch) => return Err(self.error(format!("unexpected `{}`", ch as char))),
            }
            self.pos += 1;
        }
        Ok(Polynomial::from_terms(n, self.ord, terms))
    }

    fn term(&mut self) -> Result<(Monomial, Coeff), PolyError> {
        let mut exps = vec![0 as Exponent; self.vars.len()];
        let mut coeff = Coeff::one();
        loop {
            match self.peek() {
                Some(ch) if ch.is_ascii_digit() => coeff *= self.number()?,
                Some(ch) if ch.is_ascii_alphabetic() || ch == b'_' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let idx = self.vars.position(name).ok_or_else(|| {
                        self.pos = start;
                        self.error(format!("unknown variable `{name}`"))
                    })?;
                    let mut e: u32 = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        e = self.integer()?.try_into().map_err(|_| self.error("exponent too large"))?;
                    }
                    let total = exps[idx] as u32 + e;
                    exps[idx] = Exponent::try_from(total).map_err(|_| self.error("exponent too large"))?;
                }
                Some(ch) => return Err(self.error(format!("expected a factor, found `{}`", ch as char))),
                None => return Err(self.error("expected a factor")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn number(&mut self) -> Result<Coeff, PolyError> {
        let num = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let den = self.integer()?;
            if den.is_zero() {
                return Err(self.error("zero denominator"));
            }
            return Ok(Coeff::new(num, den));
        }
        Ok(Coeff::from_integer(num))
    }
}
