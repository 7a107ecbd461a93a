//! Exact multivariate polynomials over the rationals.
//!
//! This is the universal carrier of the crate: Diophantine inputs, the two
//! halves of a sign split, interpretation assignments, and evaluated terms
//! are all `Polynomial` values. Monomials are kept in a canonical order
//! (descending graded lexicographic), so structural equality coincides with
//! mathematical equality and printing is deterministic.
//!
//! Variables are dense 0-based indices ([`VarId`]). What a given index
//! means (an indeterminate `v_i`, a rule variable `y_j`, an argument
//! placeholder `x_k`) is decided by the caller; [`VarNames`] carries the
//! external names used by the text grammar and the printers.

use std::cmp::Ordering;
use std::fmt;

use crate::rat::Rat;

/// Index of an indeterminate. Dense and 0-based within one context.
pub type VarId = usize;

const EXP_OVERFLOW_MSG: &str = "monomial exponent overflowed 32 bits";

/// A single monomial: a nonzero coefficient and a sparse exponent map.
///
/// Exponents are stored sorted by variable index with no zero entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    coeff: Rat,
    exps: Vec<(VarId, u32)>,
}

impl Monomial {
    /// Builds a monomial from a coefficient and (variable, exponent) pairs.
    ///
    /// Duplicate variables are merged, zero exponents dropped. Panics on a
    /// zero coefficient: the zero polynomial is the empty sum, never a
    /// stored monomial.
    pub fn new(coeff: Rat, exps: &[(VarId, u32)]) -> Monomial {
        assert!(!coeff.is_zero(), "zero-coefficient monomial");
        let mut sorted: Vec<(VarId, u32)> = exps.to_vec();
        sorted.sort_unstable_by_key(|&(v, _)| v);
        let mut merged: Vec<(VarId, u32)> = Vec::with_capacity(sorted.len());
        for (v, e) in sorted {
            if e == 0 {
                continue;
            }
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => {
                    *le = le.checked_add(e).expect(EXP_OVERFLOW_MSG);
                }
                _ => merged.push((v, e)),
            }
        }
        Monomial { coeff, exps: merged }
    }

    pub fn constant(coeff: Rat) -> Monomial {
        Monomial::new(coeff, &[])
    }

    pub fn coeff(&self) -> Rat {
        self.coeff
    }

    pub fn exponents(&self) -> &[(VarId, u32)] {
        &self.exps
    }

    pub fn is_constant(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps
            .iter()
            .try_fold(0u32, |d, &(_, e)| d.checked_add(e))
            .expect(EXP_OVERFLOW_MSG)
    }

    /// Graded lexicographic comparison of the exponent parts (coefficients
    /// are ignored): first by total degree, then lexicographically with
    /// earlier variables weighing more.
    pub fn cmp_exponents(&self, other: &Monomial) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => cmp_exps_lex(&self.exps, &other.exps),
            ord => ord,
        }
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let coeff = self.coeff * other.coeff;
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (av, ae) = self.exps[i];
            let (bv, be) = other.exps[j];
            match av.cmp(&bv) {
                Ordering::Less => {
                    exps.push((av, ae));
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push((bv, be));
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((av, ae.checked_add(be).expect(EXP_OVERFLOW_MSG)));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Monomial { coeff, exps }
    }
}

/// Lexicographic exponent comparison with missing entries read as zero.
fn cmp_exps_lex(a: &[(VarId, u32)], b: &[(VarId, u32)]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(&(av, ae)), Some(&(bv, be))) => match av.cmp(&bv) {
                // The side whose next exponent sits on an earlier variable
                // is lexicographically larger (the other side has 0 there).
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match ae.cmp(&be) {
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    ord => return ord,
                },
            },
        }
    }
}

/// Total degree of a polynomial; the zero polynomial sits below every
/// finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInf,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInf => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{}", d),
        }
    }
}

/// Errors from polynomial operations that take external data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// The polynomial mentions a variable the given bindings do not cover.
    UnboundVariable(VarId),
    /// A sign vector's length does not match the polynomial's arity.
    SignVectorLength { expected: usize, got: usize },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::UnboundVariable(v) => {
                write!(f, "unbound variable x{} in substitution", v + 1)
            }
            PolyError::SignVectorLength { expected, got } => {
                write!(f, "sign vector of length {} for {} indeterminates", got, expected)
            }
        }
    }
}

impl std::error::Error for PolyError {}

/// An exact multivariate polynomial in canonical form.
///
/// Invariants: monomials are sorted in descending graded lexicographic
/// order, no two share an exponent map, and none has coefficient zero.
/// The zero polynomial is the empty list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(c: Rat) -> Polynomial {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![Monomial::constant(c)] }
        }
    }

    pub fn from_integer(n: i128) -> Polynomial {
        Polynomial::constant(Rat::from_integer(n))
    }

    /// The single variable `v` with coefficient 1.
    pub fn var(v: VarId) -> Polynomial {
        Polynomial { terms: vec![Monomial::new(Rat::ONE, &[(v, 1)])] }
    }

    pub fn from_monomial(m: Monomial) -> Polynomial {
        Polynomial { terms: vec![m] }
    }

    /// Normalizes an arbitrary monomial list into canonical form.
    pub fn from_monomials(mut ms: Vec<Monomial>) -> Polynomial {
        ms.sort_unstable_by(|a, b| b.cmp_exponents(a));
        let mut terms: Vec<Monomial> = Vec::with_capacity(ms.len());
        for m in ms {
            match terms.last_mut() {
                Some(t) if t.cmp_exponents(&m) == Ordering::Equal => {
                    t.coeff = t.coeff + m.coeff;
                }
                _ => terms.push(m),
            }
        }
        terms.retain(|m| !m.coeff.is_zero());
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The monomials in canonical (descending graded lex) order.
    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    /// Number of indeterminates of the dense 0-based context: one past the
    /// largest variable index that occurs (0 for constants).
    pub fn arity(&self) -> usize {
        self.terms
            .iter()
            .flat_map(|m| m.exps.iter())
            .map(|&(v, _)| v + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .iter()
            .map(|m| m.total_degree())
            .max()
            .map_or(Degree::NegInf, Degree::Finite)
    }

    /// The coefficient of the monomial with exactly the given exponents
    /// (zero if absent). The query may list variables in any order.
    pub fn coefficient_of(&self, exps: &[(VarId, u32)]) -> Rat {
        let mut query: Vec<(VarId, u32)> = exps.iter().copied().filter(|&(_, e)| e > 0).collect();
        query.sort_unstable_by_key(|&(v, _)| v);
        self.terms
            .iter()
            .find(|m| m.exps == query)
            .map_or(Rat::ZERO, |m| m.coeff)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rat {
        self.coefficient_of(&[])
    }

    /// True iff every stored coefficient is strictly positive. The zero
    /// polynomial passes vacuously: it is the empty sum that a sign split
    /// of a square with no negative monomials produces.
    pub fn has_positive_coefficients(&self) -> bool {
        self.terms.iter().all(|m| m.coeff.is_positive())
    }

    /// True iff every coefficient is a (possibly negative) integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.iter().all(|m| m.coeff.is_integer())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let a = &self.terms;
        let b = &other.terms;
        let mut terms = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp_exponents(&b[j]) {
                Ordering::Greater => {
                    terms.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].coeff + b[j].coeff;
                    if !c.is_zero() {
                        terms.push(Monomial { coeff: c, exps: a[i].exps.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&a[i..]);
        terms.extend_from_slice(&b[j..]);
        Polynomial { terms }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|m| Monomial { coeff: -m.coeff, exps: m.exps.clone() })
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|m| Monomial { coeff: m.coeff * c, exps: m.exps.clone() })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut products = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                products.push(a.mul(b));
            }
        }
        Polynomial::from_monomials(products)
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::constant(Rat::ONE);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Replaces every variable `v` by `bindings[v]`, exactly.
    ///
    /// Fails with the offending variable if the polynomial mentions an
    /// index past the end of `bindings`.
    pub fn substitute(&self, bindings: &[Polynomial]) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::zero();
        for m in &self.terms {
            if let [(v, 1)] = m.exps[..] {
                // Degree-one monomial in a single variable: scale and merge
                // without going through the generic product.
                let b = bindings.get(v).ok_or(PolyError::UnboundVariable(v))?;
                acc = acc.add(&b.scale(m.coeff));
                continue;
            }
            let mut prod = Polynomial::constant(m.coeff);
            for &(v, e) in &m.exps {
                let b = bindings.get(v).ok_or(PolyError::UnboundVariable(v))?;
                for _ in 0..e {
                    prod = prod.mul(b);
                }
            }
            acc = acc.add(&prod);
        }
        Ok(acc)
    }

    /// Evaluates at a point, exactly.
    pub fn evaluate(&self, point: &[Rat]) -> Result<Rat, PolyError> {
        let mut acc = Rat::ZERO;
        for m in &self.terms {
            let mut val = m.coeff;
            for &(v, e) in &m.exps {
                let x = point.get(v).ok_or(PolyError::UnboundVariable(v))?;
                val = val * x.pow(e);
            }
            acc = acc + val;
        }
        Ok(acc)
    }

    /// Replaces each variable `x_i` by `a_i * x_i` for a sign vector `a`.
    ///
    /// The vector length must equal [`Polynomial::arity`]. Entries with
    /// sign 0 erase every monomial containing that variable.
    pub fn scale_vars(&self, signs: &SignVector) -> Result<Polynomial, PolyError> {
        let expected = self.arity();
        if signs.len() != expected {
            return Err(PolyError::SignVectorLength { expected, got: signs.len() });
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        'mono: for m in &self.terms {
            let mut coeff = m.coeff;
            for &(v, e) in &m.exps {
                match signs.entries()[v] {
                    0 => continue 'mono,
                    -1 if e % 2 == 1 => coeff = -coeff,
                    _ => {}
                }
            }
            terms.push(Monomial { coeff, exps: m.exps.clone() });
        }
        // Dropping monomials cannot create duplicates, so order survives.
        Ok(Polynomial { terms })
    }

    /// Splits into `(P, Q)` by coefficient sign: `Q` keeps the monomials
    /// with positive coefficient, `P` the negations of the negative ones,
    /// so that `Q - P` equals the input exactly and both halves have only
    /// positive coefficients.
    pub fn sign_split(&self) -> (Polynomial, Polynomial) {
        let mut p = Vec::new();
        let mut q = Vec::new();
        for m in &self.terms {
            if m.coeff.is_positive() {
                q.push(m.clone());
            } else {
                p.push(Monomial { coeff: -m.coeff, exps: m.exps.clone() });
            }
        }
        (Polynomial { terms: p }, Polynomial { terms: q })
    }

    /// Renders with the given variable names; `to_string` uses the
    /// defaults `x1, x2, …`.
    pub fn to_text(&self, names: &VarNames) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, m) in self.terms.iter().enumerate() {
            let c = m.coeff;
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let abs = c.abs();
            if m.is_constant() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                for (idx, &(v, e)) in m.exps.iter().enumerate() {
                    if idx > 0 {
                        out.push('*');
                    }
                    out.push_str(&names.name(v));
                    if e > 1 {
                        out.push('^');
                        out.push_str(&e.to_string());
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&VarNames::new()))
    }
}

/// A vector over {−1, 0, +1}, one entry per indeterminate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignVector {
    entries: Vec<i8>,
}

impl SignVector {
    pub fn new(entries: &[i8]) -> Result<SignVector, PolyError> {
        assert!(
            entries.iter().all(|s| matches!(s, -1 | 0 | 1)),
            "sign vector entries must be -1, 0, or 1"
        );
        Ok(SignVector { entries: entries.to_vec() })
    }

    pub fn all_positive(n: usize) -> SignVector {
        SignVector { entries: vec![1; n] }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    /// All 3^n sign vectors of length `n` in lexicographic order with
    /// −1 < 0 < +1.
    pub fn enumerate(n: usize) -> impl Iterator<Item = SignVector> {
        let total = 3usize.checked_pow(n as u32).expect("too many sign vectors");
        (0..total).map(move |mut code| {
            let mut entries = vec![0i8; n];
            for slot in entries.iter_mut().rev() {
                *slot = (code % 3) as i8 - 1;
                code /= 3;
            }
            SignVector { entries }
        })
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", s)?;
        }
        write!(f, ")")
    }
}

/// External names for variable indices.
///
/// The text grammar admits two spellings: `x<k>` maps to index `k-1`
/// directly, and a bracketed `[name]` is assigned the lowest free index at
/// first sight. One table should be shared across every polynomial of a
/// common context (e.g. a P, Q pair) so that equal names mean equal
/// indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarNames {
    names: Vec<Option<String>>,
}

impl VarNames {
    pub fn new() -> VarNames {
        VarNames::default()
    }

    /// A table presetting indices 0.. to the given names.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> VarNames {
        VarNames { names: names.iter().map(|s| Some(s.as_ref().to_string())).collect() }
    }

    /// The display name of an index (`x<k>` when none was registered).
    pub fn name(&self, v: VarId) -> String {
        match self.names.get(v) {
            Some(Some(n)) => n.clone(),
            _ => format!("x{}", v + 1),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    fn lookup(&self, name: &str) -> Option<VarId> {
        self.names.iter().position(|n| n.as_deref() == Some(name))
    }

    fn register(&mut self, v: VarId, name: &str) -> Result<(), String> {
        if self.names.len() <= v {
            self.names.resize(v + 1, None);
        }
        match &self.names[v] {
            Some(existing) if existing != name => Err(format!(
                "variable index {} already named `{}`, cannot rename to `{}`",
                v + 1,
                existing,
                name
            )),
            _ => {
                self.names[v] = Some(name.to_string());
                Ok(())
            }
        }
    }

    /// Resolves a variable token to an index, allocating if new.
    fn resolve(&mut self, name: &str) -> Result<VarId, String> {
        if let Some(v) = self.lookup(name) {
            return Ok(v);
        }
        if let Some(rest) = name.strip_prefix('x') {
            if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
                let k: usize = rest
                    .parse()
                    .map_err(|_| format!("variable index in `{}` is out of range", name))?;
                if k == 0 {
                    return Err("variable indices start at x1".to_string());
                }
                let v = k - 1;
                self.register(v, name)?;
                return Ok(v);
            }
        }
        let v = self.names.iter().position(|n| n.is_none()).unwrap_or(self.names.len());
        self.register(v, name)?;
        Ok(v)
    }
}

/// Error from [`parse_polynomial`], with a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsePolyError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParsePolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "polynomial parse error at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParsePolyError {}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Number(u128),
    Var(String),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParsePolyError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                tokens.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            '^' => {
                tokens.push((i, Token::Caret));
                i += 1;
            }
            '/' => {
                tokens.push((i, Token::Slash));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: u128 = text[start..i].parse().map_err(|_| ParsePolyError {
                    pos: start,
                    msg: "integer literal too large".to_string(),
                })?;
                tokens.push((start, Token::Number(n)));
            }
            '[' => {
                let start = i;
                let close = text[i..].find(']').ok_or(ParsePolyError {
                    pos: start,
                    msg: "unclosed `[` in variable name".to_string(),
                })?;
                let name = text[i + 1..i + close].trim();
                if name.is_empty() {
                    return Err(ParsePolyError {
                        pos: start,
                        msg: "empty bracketed variable name".to_string(),
                    });
                }
                tokens.push((start, Token::Var(name.to_string())));
                i += close + 1;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push((start, Token::Var(text[start..i].to_string())));
            }
            _ => {
                return Err(ParsePolyError {
                    pos: i,
                    msg: format!("unexpected character `{}`", c),
                })
            }
        }
    }
    Ok(tokens)
}

/// Parses the polynomial text grammar.
///
/// Grammar: a signed sum of terms; each term a `*`-product of factors; a
/// factor is a number (optionally `num/num` for rationals), or a variable
/// optionally raised with `^` to a natural power. Whitespace is free.
/// Examples: `x1^3 + 2*x1 + 2`, `-[X] - 1`, `3/2*x1*x2 + 1/2`.
///
/// Variable tokens resolve through `names`, which is extended in place;
/// see [`VarNames`].
pub fn parse_polynomial(text: &str, names: &mut VarNames) -> Result<Polynomial, ParsePolyError> {
    let tokens = tokenize(text)?;
    let end = text.len();
    let mut pos = 0usize;
    let mut monomials: Vec<Monomial> = Vec::new();

    let peek = |pos: usize| tokens.get(pos).map(|(_, t)| t);
    let at = |pos: usize| tokens.get(pos).map_or(end, |(off, _)| *off);

    if tokens.is_empty() {
        return Err(ParsePolyError { pos: 0, msg: "empty polynomial".to_string() });
    }

    loop {
        // Sign prefix of the term.
        let mut sign = Rat::ONE;
        while let Some(tok) = peek(pos) {
            match tok {
                Token::Plus => pos += 1,
                Token::Minus => {
                    sign = -sign;
                    pos += 1;
                }
                _ => break,
            }
        }

        // One term: factors joined by `*`.
        let mut coeff = sign;
        let mut exps: Vec<(VarId, u32)> = Vec::new();
        loop {
            match peek(pos) {
                Some(Token::Number(n)) => {
                    let mut value = Rat::from_integer(*n as i128);
                    pos += 1;
                    if let Some(Token::Slash) = peek(pos) {
                        pos += 1;
                        match peek(pos) {
                            Some(Token::Number(d)) if *d != 0 => {
                                value = value / Rat::from_integer(*d as i128);
                                pos += 1;
                            }
                            _ => {
                                return Err(ParsePolyError {
                                    pos: at(pos),
                                    msg: "expected nonzero denominator after `/`".to_string(),
                                })
                            }
                        }
                    }
                    coeff = coeff * value;
                }
                Some(Token::Var(name)) => {
                    let name = name.clone();
                    pos += 1;
                    let v = names
                        .resolve(&name)
                        .map_err(|msg| ParsePolyError { pos: at(pos - 1), msg })?;
                    let mut exp = 1u32;
                    if let Some(Token::Caret) = peek(pos) {
                        pos += 1;
                        match peek(pos) {
                            Some(Token::Number(e)) => {
                                exp = u32::try_from(*e).map_err(|_| ParsePolyError {
                                    pos: at(pos),
                                    msg: "exponent too large".to_string(),
                                })?;
                                pos += 1;
                            }
                            _ => {
                                return Err(ParsePolyError {
                                    pos: at(pos),
                                    msg: "expected natural number after `^`".to_string(),
                                })
                            }
                        }
                    }
                    if exp > 0 {
                        exps.push((v, exp));
                    }
                }
                _ => {
                    return Err(ParsePolyError {
                        pos: at(pos),
                        msg: "expected a number or variable".to_string(),
                    })
                }
            }
            match peek(pos) {
                Some(Token::Star) => pos += 1,
                _ => break,
            }
        }

        if !coeff.is_zero() {
            monomials.push(Monomial::new(coeff, &exps));
        }

        match peek(pos) {
            None => break,
            Some(Token::Plus) | Some(Token::Minus) => continue,
            Some(_) => {
                return Err(ParsePolyError {
                    pos: at(pos),
                    msg: "expected `+`, `-`, or end of input".to_string(),
                })
            }
        }
    }

    Ok(Polynomial::from_monomials(monomials))
}

/// Convenience wrapper for contexts that only use `x1..xn` style names.
pub fn parse_poly(text: &str) -> Result<Polynomial, ParsePolyError> {
    parse_polynomial(text, &mut VarNames::new())
}
