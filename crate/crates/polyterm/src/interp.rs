//! Polynomial interpretations, orientation certificates, and witness
//! extraction.
//!
//! An [`Interpretation`] assigns to each function symbol a polynomial in
//! argument placeholders `x1..xk` (variable ids 0..k-1), over either ℕ or
//! the nonnegative rationals with a δ-margin. Evaluating a term
//! substitutes bottom-up, yielding a polynomial in the term's variables.
//!
//! A rule is *oriented* when every coefficient of ⟦lhs⟧ − ⟦rhs⟧ is
//! nonnegative and the constant term is at least δ (δ = 1 over ℕ). This
//! absolute-positiveness check is sufficient for strict decrease on the
//! whole domain and complete for every certificate constructed here.
//!
//! The module also provides the three concrete interpretation families
//! used with the gadget systems, the minimal-h search for the eight-rule
//! system, and the witness extraction that reads a Diophantine solution
//! back out of a linear interpretation.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::poly::{parse_poly, Degree, Polynomial, VarId, VarNames};
use crate::rat::Rat;
use crate::trs::{build_qr_trs, Rule, Signature, Term, Trs};

/// Coefficient domain of an interpretation.
///
/// `Nat` is ℕ with the usual strict order. `NonNegRational` is the
/// nonnegative rationals (standing in for ℚ≥0 and ℝ≥0; every
/// interpretation this crate builds has rational coefficients), where
/// strict decrease means a difference of at least `delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    Nat,
    NonNegRational { delta: Rat },
}

impl Domain {
    pub fn non_neg_rational(delta: Rat) -> Result<Domain, InterpError> {
        if !delta.is_positive() {
            return Err(InterpError::NonPositiveDelta(delta));
        }
        Ok(Domain::NonNegRational { delta })
    }

    /// The margin a rule difference's constant term must reach.
    pub fn delta(&self) -> Rat {
        match self {
            Domain::Nat => Rat::ONE,
            Domain::NonNegRational { delta } => *delta,
        }
    }

    pub fn is_nat(&self) -> bool {
        matches!(self, Domain::Nat)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Nat => write!(f, "nat"),
            Domain::NonNegRational { delta } => write!(f, "rat (delta = {})", delta),
        }
    }
}

/// Errors from building, validating, or evaluating interpretations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InterpError {
    UnassignedSymbol(String),
    PlaceholderOutOfRange { symbol: String, arity: usize, var: VarId },
    NegativeCoefficient { symbol: String, coefficient: Rat },
    NonIntegerCoefficient { symbol: String, coefficient: Rat },
    NonPositiveDelta(Rat),
    DeltaOnNatDomain,
    NonPositivePolynomial,
    HTooSmall(Rat),
    WitnessEntryZero,
    WitnessEntryTooLarge(u64),
    NonLinearAssignment { symbol: String },
    BadWitnessCoefficient { symbol: String, coefficient: Rat },
    NotNatDomain,
}

impl fmt::Display for InterpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterpError::UnassignedSymbol(name) => {
                write!(f, "no polynomial assigned to symbol `{}`", name)
            }
            InterpError::PlaceholderOutOfRange { symbol, arity, var } => write!(
                f,
                "assignment of `{}` uses placeholder x{} but the symbol has arity {}",
                symbol,
                var + 1,
                arity
            ),
            InterpError::NegativeCoefficient { symbol, coefficient } => write!(
                f,
                "assignment of `{}` has negative coefficient {}",
                symbol, coefficient
            ),
            InterpError::NonIntegerCoefficient { symbol, coefficient } => write!(
                f,
                "assignment of `{}` has non-integer coefficient {} over ℕ",
                symbol, coefficient
            ),
            InterpError::NonPositiveDelta(d) => write!(f, "delta must be positive, got {}", d),
            InterpError::DeltaOnNatDomain => {
                write!(f, "delta applies to the rational domain, not ℕ")
            }
            InterpError::NonPositivePolynomial => {
                write!(f, "polynomial must have positive integer coefficients")
            }
            InterpError::HTooSmall(h) => write!(f, "h must exceed 2, got {}", h),
            InterpError::WitnessEntryZero => write!(f, "witness entries must be at least 1"),
            InterpError::WitnessEntryTooLarge(v) => {
                write!(f, "witness entry {} too large to use as an exponent", v)
            }
            InterpError::NonLinearAssignment { symbol } => {
                write!(f, "assignment of `{}` is not linear", symbol)
            }
            InterpError::BadWitnessCoefficient { symbol, coefficient } => write!(
                f,
                "assignment of `{}` has argument coefficient {}, not a positive integer",
                symbol, coefficient
            ),
            InterpError::NotNatDomain => write!(f, "witness extraction requires the ℕ domain"),
        }
    }
}

impl std::error::Error for InterpError {}

/// An assignment v⃗ ∈ ℕ₊ⁿ, optionally tagged with the sign vector that
/// produced it in the reduction pipeline. The empty witness is allowed
/// (it arises for constant polynomials).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    values: Vec<u64>,
    sign_vector: Option<crate::poly::SignVector>,
}

impl Witness {
    pub fn new(values: Vec<u64>) -> Result<Witness, InterpError> {
        if values.iter().any(|&v| v == 0) {
            return Err(InterpError::WitnessEntryZero);
        }
        Ok(Witness { values, sign_vector: None })
    }

    pub fn with_sign_vector(mut self, signs: crate::poly::SignVector) -> Witness {
        self.sign_vector = Some(signs);
        self
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sign_vector(&self) -> Option<&crate::poly::SignVector> {
        self.sign_vector.as_ref()
    }

    /// The values as rationals, padded with 1s up to `n` entries (handy
    /// for evaluating a polynomial of arity ≤ n).
    pub fn as_point(&self, n: usize) -> Vec<Rat> {
        let mut point: Vec<Rat> = self.values.iter().map(|&v| Rat::from(v)).collect();
        while point.len() < n {
            point.push(Rat::ONE);
        }
        point
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, ")")
    }
}

/// Evidence that a rule is oriented: the difference ⟦lhs⟧ − ⟦rhs⟧ together
/// with the margin it was checked against. Every coefficient of
/// `difference` is ≥ 0 and its constant term is ≥ `delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationCert {
    pub rule_index: usize,
    pub difference: Polynomial,
    pub delta: Rat,
}

/// The first violating coefficient of a non-orienting difference, in
/// canonical monomial order (so a negative inner coefficient is reported
/// before a short constant margin).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientFailure {
    pub rule_index: usize,
    pub exponents: Vec<(VarId, u32)>,
    pub coefficient: Rat,
    pub required: Rat,
}

impl fmt::Display for OrientFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = VarNames::new();
        let monomial = if self.exponents.is_empty() {
            "constant term".to_string()
        } else {
            let parts: Vec<String> = self
                .exponents
                .iter()
                .map(|&(v, e)| {
                    if e == 1 {
                        names.name(v)
                    } else {
                        format!("{}^{}", names.name(v), e)
                    }
                })
                .collect();
            format!("coefficient of {}", parts.join("*"))
        };
        write!(
            f,
            "rule {}: {} of the difference is {}, needs at least {}",
            self.rule_index, monomial, self.coefficient, self.required
        )
    }
}

/// Why a rule could not be certified: evaluation failed, or the
/// difference has a violating coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrientError {
    Eval(InterpError),
    NotOriented(OrientFailure),
}

impl fmt::Display for OrientError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrientError::Eval(e) => write!(f, "{}", e),
            OrientError::NotOriented(fail) => write!(f, "{}", fail),
        }
    }
}

impl std::error::Error for OrientError {}

impl From<InterpError> for OrientError {
    fn from(e: InterpError) -> OrientError {
        OrientError::Eval(e)
    }
}

/// A map from function symbols (by name) to polynomials in argument
/// placeholders, over a [`Domain`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    domain: Domain,
    assign: BTreeMap<String, Polynomial>,
}

impl Interpretation {
    pub fn new(domain: Domain) -> Interpretation {
        Interpretation { domain, assign: BTreeMap::new() }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// Replaces the δ margin (rational domain only).
    pub fn with_delta(mut self, delta: Rat) -> Result<Interpretation, InterpError> {
        match self.domain {
            Domain::Nat => Err(InterpError::DeltaOnNatDomain),
            Domain::NonNegRational { .. } => {
                self.domain = Domain::non_neg_rational(delta)?;
                Ok(self)
            }
        }
    }

    pub fn set(&mut self, symbol: &str, poly: Polynomial) {
        self.assign.insert(symbol.to_string(), poly);
    }

    pub fn get(&self, symbol: &str) -> Option<&Polynomial> {
        self.assign.get(symbol)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Polynomial)> {
        self.assign.iter()
    }

    /// Checks that every signature symbol has an assignment using only
    /// placeholders within its arity, with coefficients in the domain
    /// (nonnegative, integer over ℕ).
    pub fn validate(&self, sig: &Signature) -> Result<(), InterpError> {
        for (_, sym) in sig.iter() {
            let poly = self
                .assign
                .get(&sym.name)
                .ok_or_else(|| InterpError::UnassignedSymbol(sym.name.clone()))?;
            if poly.arity() > sym.arity {
                return Err(InterpError::PlaceholderOutOfRange {
                    symbol: sym.name.clone(),
                    arity: sym.arity,
                    var: poly.arity() - 1,
                });
            }
            for m in poly.terms() {
                let c = m.coeff();
                if c.is_negative() {
                    return Err(InterpError::NegativeCoefficient {
                        symbol: sym.name.clone(),
                        coefficient: c,
                    });
                }
                if self.domain.is_nat() && !c.is_integer() {
                    return Err(InterpError::NonIntegerCoefficient {
                        symbol: sym.name.clone(),
                        coefficient: c,
                    });
                }
            }
        }
        Ok(())
    }

    fn assignment_table<'a>(&'a self, sig: &Signature) -> Vec<Option<&'a Polynomial>> {
        (0..sig.len()).map(|id| self.assign.get(sig.name(id))).collect()
    }

    fn eval_with_table(
        &self,
        sig: &Signature,
        table: &[Option<&Polynomial>],
        t: &Term,
    ) -> Result<Polynomial, InterpError> {
        match t {
            Term::Var(v) => Ok(Polynomial::var(*v)),
            Term::App(f, args) => {
                let poly = table[*f].ok_or_else(|| {
                    InterpError::UnassignedSymbol(sig.name(*f).to_string())
                })?;
                let vals = args
                    .iter()
                    .map(|arg| self.eval_with_table(sig, table, arg))
                    .collect::<Result<Vec<Polynomial>, InterpError>>()?;
                poly.substitute(&vals).map_err(|_| InterpError::PlaceholderOutOfRange {
                    symbol: sig.name(*f).to_string(),
                    arity: args.len(),
                    var: poly.arity() - 1,
                })
            }
        }
    }

    /// Bottom-up evaluation: the polynomial over the term's variables
    /// obtained by substituting argument values into each symbol's
    /// assignment.
    pub fn evaluate_term(&self, sig: &Signature, t: &Term) -> Result<Polynomial, InterpError> {
        let table = self.assignment_table(sig);
        self.eval_with_table(sig, &table, t)
    }

    /// Sufficient monotonicity criterion: every argument position of
    /// every signature symbol appears as a plain degree-1 monomial with
    /// coefficient ≥ 1. Not complete, but satisfied by every
    /// interpretation family this crate constructs.
    pub fn is_monotone(&self, sig: &Signature) -> bool {
        sig.iter().all(|(_, sym)| match self.assign.get(&sym.name) {
            None => false,
            Some(poly) => (0..sym.arity)
                .all(|j| poly.coefficient_of(&[(j, 1)]) >= Rat::ONE),
        })
    }

    /// Checks one rule; on success returns the certificate (with
    /// `rule_index` 0; see [`Interpretation::orients_all`] for indexed
    /// checking), on failure the first violating coefficient.
    pub fn orients(&self, sig: &Signature, rule: &Rule) -> Result<OrientationCert, OrientError> {
        let mut tables = EvalTables::new(self, sig);
        self.orient_with(&mut tables, rule, 0)
    }

    /// Checks every rule of a system in order, returning all certificates
    /// or the first failure.
    pub fn orients_all(&self, trs: &Trs) -> Result<Vec<OrientationCert>, OrientError> {
        let mut tables = EvalTables::new(self, trs.signature());
        trs.rules()
            .iter()
            .enumerate()
            .map(|(index, rule)| self.orient_with(&mut tables, rule, index))
            .collect()
    }

    fn orient_with(
        &self,
        tables: &mut EvalTables<'_>,
        rule: &Rule,
        index: usize,
    ) -> Result<OrientationCert, OrientError> {
        let mut lanes = 1;
        rule.lhs().visit_vars(&mut |v| lanes = lanes.max(v + 2));
        rule.rhs().visit_vars(&mut |v| lanes = lanes.max(v + 2));
        if let Some(diff) = tables.affine_rule_difference(rule, lanes) {
            return self.certify(affine_to_poly(&diff), index);
        }
        let lhs = tables.eval_mixed(rule.lhs())?.into_poly();
        let rhs = tables.eval_mixed(rule.rhs())?.into_poly();
        self.certify(lhs.sub(&rhs), index)
    }

    fn certify(&self, diff: Polynomial, index: usize) -> Result<OrientationCert, OrientError> {
        let delta = self.domain.delta();
        for m in diff.terms() {
            if m.is_constant() {
                break;
            }
            if m.coeff().is_negative() {
                return Err(OrientError::NotOriented(OrientFailure {
                    rule_index: index,
                    exponents: m.exponents().to_vec(),
                    coefficient: m.coeff(),
                    required: Rat::ZERO,
                }));
            }
        }
        let constant = diff.constant_term();
        if constant < delta {
            return Err(OrientError::NotOriented(OrientFailure {
                rule_index: index,
                exponents: Vec::new(),
                coefficient: constant,
                required: delta,
            }));
        }
        Ok(OrientationCert { rule_index: index, difference: diff, delta })
    }
}

/// The affine row `[c0, c1, …, ck]` of a linear integer assignment
/// `c0 + c1*x1 + … + ck*xk`, or `None` if the polynomial is nonlinear,
/// non-integer, or uses a placeholder beyond the arity.
fn affine_row(poly: &Polynomial, arity: usize) -> Option<Vec<i128>> {
    let mut row = vec![0i128; arity + 1];
    for m in poly.terms() {
        let c = m.coeff().as_integer()?;
        match m.exponents() {
            [] => row[0] = c,
            [(v, 1)] if *v < arity => row[v + 1] = c,
            _ => return None,
        }
    }
    Some(row)
}

/// An affine value `[const, coeff of y1, coeff of y2, …]` turned back
/// into a polynomial.
fn affine_to_poly(lanes: &[i128]) -> Polynomial {
    let monomials = lanes
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            if i == 0 {
                crate::poly::Monomial::constant(Rat::from_integer(c))
            } else {
                crate::poly::Monomial::new(Rat::from_integer(c), &[(i - 1, 1)])
            }
        })
        .collect();
    Polynomial::from_monomials(monomials)
}

/// A term value during mixed evaluation: an affine vector while the walk
/// stays inside the linear integer fragment, a full polynomial once it
/// leaves it.
enum Val {
    Aff(Vec<i128>),
    Poly(Polynomial),
}

impl Val {
    fn into_poly(self) -> Polynomial {
        match self {
            Val::Aff(lanes) => affine_to_poly(&lanes),
            Val::Poly(p) => p,
        }
    }
}

/// Resolved per-symbol assignment tables for repeated rule checks: the
/// polynomial for each signature symbol plus, where the assignment is
/// linear with integer coefficients, its affine row. The fully affine
/// fast path works on a flat reusable scratch stack and performs no
/// per-node allocation.
struct EvalTables<'a> {
    sig: &'a Signature,
    polys: Vec<Option<&'a Polynomial>>,
    affine: Vec<Option<Vec<i128>>>,
    scratch: Vec<i128>,
}

impl<'a> EvalTables<'a> {
    fn new(interp: &'a Interpretation, sig: &'a Signature) -> EvalTables<'a> {
        let mut polys = Vec::with_capacity(sig.len());
        let mut affine = Vec::with_capacity(sig.len());
        for (_, sym) in sig.iter() {
            let poly = interp.assign.get(&sym.name);
            affine.push(poly.and_then(|p| affine_row(p, sym.arity)));
            polys.push(poly);
        }
        EvalTables { sig, polys, affine, scratch: Vec::new() }
    }

    /// ⟦lhs⟧ − ⟦rhs⟧ as affine lanes, or `None` if either side leaves the
    /// affine fragment, meets an unassigned symbol, or overflows 128-bit
    /// arithmetic (callers fall back to the exact polynomial path).
    fn affine_rule_difference(&mut self, rule: &Rule, lanes: usize) -> Option<Vec<i128>> {
        let mut scratch = std::mem::take(&mut self.scratch);
        let result = (|| {
            affine_eval_into(&self.affine, rule.lhs(), lanes, &mut scratch, 0)?;
            let lhs: Vec<i128> = scratch[0..lanes].to_vec();
            affine_eval_into(&self.affine, rule.rhs(), lanes, &mut scratch, 0)?;
            let mut diff = lhs;
            for (d, &r) in diff.iter_mut().zip(scratch[0..lanes].iter()) {
                *d = d.checked_sub(r)?;
            }
            Some(diff)
        })();
        self.scratch = scratch;
        result
    }

    /// Exact evaluation that rides the affine fast lane until a nonlinear
    /// assignment (or a 128-bit overflow) forces polynomial arithmetic.
    /// Error behaviour matches [`Interpretation::evaluate_term`].
    fn eval_mixed(&self, t: &Term) -> Result<Val, InterpError> {
        match t {
            Term::Var(v) => {
                let mut lanes = vec![0i128; v + 2];
                lanes[v + 1] = 1;
                Ok(Val::Aff(lanes))
            }
            Term::App(f, args) => {
                let poly = self.polys[*f].ok_or_else(|| {
                    InterpError::UnassignedSymbol(self.sig.name(*f).to_string())
                })?;
                let vals = args
                    .iter()
                    .map(|arg| self.eval_mixed(arg))
                    .collect::<Result<Vec<Val>, InterpError>>()?;
                if let Some(row) = &self.affine[*f] {
                    if let Some(lanes) = combine_affine(row, &vals) {
                        return Ok(Val::Aff(lanes));
                    }
                }
                let args: Vec<Polynomial> = vals.into_iter().map(Val::into_poly).collect();
                poly.substitute(&args).map(Val::Poly).map_err(|_| {
                    InterpError::PlaceholderOutOfRange {
                        symbol: self.sig.name(*f).to_string(),
                        arity: args.len(),
                        var: poly.arity() - 1,
                    }
                })
            }
        }
    }
}

/// Accumulates `row[0] + Σ row[j+1]·vals[j]` when every value is affine
/// and nothing overflows.
fn combine_affine(row: &[i128], vals: &[Val]) -> Option<Vec<i128>> {
    let mut width = 1;
    for val in vals {
        match val {
            Val::Aff(lanes) => width = width.max(lanes.len()),
            Val::Poly(_) => return None,
        }
    }
    let mut acc = vec![0i128; width];
    acc[0] = row[0];
    for (j, val) in vals.iter().enumerate() {
        let cj = row[j + 1];
        if cj == 0 {
            continue;
        }
        let Val::Aff(lanes) = val else { unreachable!() };
        for (a, &b) in acc.iter_mut().zip(lanes.iter()) {
            *a = a.checked_add(cj.checked_mul(b)?)?;
        }
    }
    Some(acc)
}

/// Evaluates `t` into `stack[depth·lanes .. (depth+1)·lanes]` as affine
/// lanes `[const, y1, y2, …]`, using the segment above for children.
/// `None` on an unassigned or nonlinear symbol or on overflow.
fn affine_eval_into(
    affine: &[Option<Vec<i128>>],
    t: &Term,
    lanes: usize,
    stack: &mut Vec<i128>,
    depth: usize,
) -> Option<()> {
    let base = depth * lanes;
    if stack.len() < base + 2 * lanes {
        stack.resize(base + 2 * lanes, 0);
    }
    match t {
        Term::Var(v) => {
            stack[base..base + lanes].fill(0);
            stack[base + v + 1] = 1;
            Some(())
        }
        Term::App(f, args) => {
            let row = affine[*f].as_ref()?;
            stack[base..base + lanes].fill(0);
            stack[base] = row[0];
            let child = base + lanes;
            for (j, arg) in args.iter().enumerate() {
                let cj = row[j + 1];
                affine_eval_into(affine, arg, lanes, stack, depth + 1)?;
                if cj == 0 {
                    continue;
                }
                for k in 0..lanes {
                    let add = cj.checked_mul(stack[child + k])?;
                    stack[base + k] = stack[base + k].checked_add(add)?;
                }
            }
            Some(())
        }
    }
}

/// The linear ℕ interpretation derived from a witness v⃗: z ↦ 0, o ↦ 1,
/// a ↦ x1 + x2, f ↦ x1 + x2 + x3 + x4, and each unary indeterminate
/// symbol vi ↦ v_i · x1. It orients the single-rule gadget exactly when
/// P(v⃗) ≥ Q(v⃗), with difference (P(v⃗) − Q(v⃗))·y3 + 1.
pub fn theorem_lin_interpretation(v: &Witness) -> Interpretation {
    let mut interp = Interpretation::new(Domain::Nat);
    interp.set("z", Polynomial::zero());
    interp.set("o", Polynomial::constant(Rat::ONE));
    interp.set("a", sum_of_vars(2));
    interp.set("f", sum_of_vars(4));
    for (i, &vi) in v.values().iter().enumerate() {
        interp.set(&format!("v{}", i + 1), Polynomial::var(0).scale(Rat::from(vi)));
    }
    interp
}

/// x1 + x2 + … + xk.
fn sum_of_vars(k: usize) -> Polynomial {
    let monomials = (0..k).map(|v| crate::poly::Monomial::new(Rat::ONE, &[(v, 1)])).collect();
    Polynomial::from_monomials(monomials)
}

/// The nonlinear ℕ interpretation that orients the single-rule gadget for
/// *every* positive-coefficient pair (p, q): o ↦ Q(1,…,1) + 1,
/// f ↦ x3·x4 + x1 + x2 + x3 + x4, each vi ↦ x1, a ↦ x1 + x2, z ↦ 0.
pub fn always_terminating_interpretation(
    p: &Polynomial,
    q: &Polynomial,
) -> Result<Interpretation, InterpError> {
    for poly in [p, q] {
        if !poly.has_positive_coefficients() || !poly.has_integer_coefficients() {
            return Err(InterpError::NonPositivePolynomial);
        }
    }
    let n = p.arity().max(q.arity());
    let ones = vec![Rat::ONE; q.arity()];
    let o = q.evaluate(&ones).expect("point covers the arity") + Rat::ONE;

    let mut f = sum_of_vars(4);
    f = f.add(&Polynomial::from_monomial(crate::poly::Monomial::new(
        Rat::ONE,
        &[(2, 1), (3, 1)],
    )));

    let mut interp = Interpretation::new(Domain::Nat);
    interp.set("z", Polynomial::zero());
    interp.set("o", Polynomial::constant(o));
    interp.set("a", sum_of_vars(2));
    interp.set("f", f);
    for i in 0..n {
        interp.set(&format!("v{}", i + 1), Polynomial::var(0));
    }
    Ok(interp)
}

/// The rational-domain interpretation for the eight-rule gadget:
/// z ↦ 0, g ↦ x1 + x2, a ↦ x1·x2 + x1 + x2 + 1, q ↦ x1² + 2·x1,
/// h ↦ h·x1 + h, and vi ↦ x1^{v_i}, with δ = 1. Requires h > 2.
pub fn qr_interpretation(v: &Witness, h: Rat) -> Result<Interpretation, InterpError> {
    if h <= Rat::from_integer(2) {
        return Err(InterpError::HTooSmall(h));
    }
    let mut interp = Interpretation::new(Domain::non_neg_rational(Rat::ONE)?);
    interp.set("z", Polynomial::zero());
    interp.set("g", parse_poly("x1 + x2").expect("fixed template"));
    interp.set("a", parse_poly("x1*x2 + x1 + x2 + 1").expect("fixed template"));
    interp.set("q", parse_poly("x1^2 + 2*x1").expect("fixed template"));
    interp.set("h", Polynomial::var(0).scale(h).add(&Polynomial::constant(h)));
    for (i, &vi) in v.values().iter().enumerate() {
        let e = u32::try_from(vi).map_err(|_| InterpError::WitnessEntryTooLarge(vi))?;
        let power = Polynomial::from_monomial(crate::poly::Monomial::new(Rat::ONE, &[(0, e)]));
        interp.set(&format!("v{}", i + 1), power);
    }
    Ok(interp)
}

/// Why [`minimal_h`] did not return a coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimalHError {
    /// The inputs violate a precondition (reported before any search).
    Precondition { reason: String },
    /// Every integer h in 3..=hmax fails to orient all eight rules.
    Exhausted { hmax: u64 },
}

impl fmt::Display for MinimalHError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinimalHError::Precondition { reason } => write!(f, "precondition violated: {}", reason),
            MinimalHError::Exhausted { hmax } => {
                write!(f, "no h up to {} orients all eight rules", hmax)
            }
        }
    }
}

impl std::error::Error for MinimalHError {}

/// Smallest integer h > 2 for which the rational-domain interpretation
/// with witness `v` orients all eight rules of the comparison gadget for
/// `(p, q)` with margin `delta`. Orientation is monotone in h, so the
/// first success of the ascending scan is minimal.
pub fn minimal_h(
    p: &Polynomial,
    q: &Polynomial,
    v: &Witness,
    delta: Rat,
    hmax: u64,
) -> Result<u64, MinimalHError> {
    let pre = |reason: String| MinimalHError::Precondition { reason };
    if !delta.is_positive() {
        return Err(pre(format!("delta must be positive, got {}", delta)));
    }
    let n = p.arity().max(q.arity());
    if v.len() != n {
        return Err(pre(format!("witness has {} entries for {} indeterminates", v.len(), n)));
    }
    let point = v.as_point(n);
    let pv = p.evaluate(&point).expect("point covers the arity");
    let qv = q.evaluate(&point).expect("point covers the arity");
    if pv < qv {
        return Err(pre(format!("P{} = {} < {} = Q{}", v, pv, qv, v)));
    }
    let trs = build_qr_trs(p, q).map_err(|e| pre(e.to_string()))?;

    for h in 3..=hmax {
        let interp = qr_interpretation(v, Rat::from(h))
            .expect("h > 2")
            .with_delta(delta)
            .map_err(|e| pre(e.to_string()))?;
        if interp.orients_all(&trs).is_ok() {
            return Ok(h);
        }
    }
    Err(MinimalHError::Exhausted { hmax })
}

/// Reads the witness back out of a linear ℕ interpretation of the
/// single-rule gadget signature {z, o, a, f, v1..vn}: entry i is the
/// coefficient of x1 in the assignment of vi (the constant part is
/// ignored). Fails on a nonlinear assignment, a missing symbol, or an
/// argument coefficient that is not a positive integer.
pub fn extract_witness(interp: &Interpretation) -> Result<Witness, InterpError> {
    if !interp.domain().is_nat() {
        return Err(InterpError::NotNatDomain);
    }
    for required in ["z", "o", "a", "f"] {
        if interp.get(required).is_none() {
            return Err(InterpError::UnassignedSymbol(required.to_string()));
        }
    }
    let linear = |name: &str, poly: &Polynomial| -> Result<(), InterpError> {
        match poly.degree() {
            Degree::Finite(d) if d > 1 => {
                Err(InterpError::NonLinearAssignment { symbol: name.to_string() })
            }
            _ => Ok(()),
        }
    };
    for (name, poly) in interp.iter() {
        linear(name, poly)?;
    }

    let mut values = Vec::new();
    for i in 1.. {
        let name = format!("v{}", i);
        let poly = match interp.get(&name) {
            Some(p) => p,
            None => break,
        };
        let coeff = poly.coefficient_of(&[(0, 1)]);
        let vi = coeff
            .as_natural()
            .filter(|&v| v >= 1)
            .ok_or(InterpError::BadWitnessCoefficient { symbol: name, coefficient: coeff })?;
        values.push(vi);
    }
    Witness::new(values)
}

#[derive(Serialize, Deserialize)]
struct InterpJson {
    domain: DomainJson,
    assignment: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct DomainJson {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<String>,
}

/// Errors from reading an interpretation out of its JSON form.
#[derive(Debug)]
pub enum InterpJsonError {
    Syntax(serde_json::Error),
    BadDomain(String),
    BadPolynomial { symbol: String, error: crate::poly::ParsePolyError },
}

impl fmt::Display for InterpJsonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterpJsonError::Syntax(e) => write!(f, "invalid interpretation json: {}", e),
            InterpJsonError::BadDomain(msg) => write!(f, "invalid domain: {}", msg),
            InterpJsonError::BadPolynomial { symbol, error } => {
                write!(f, "assignment of `{}`: {}", symbol, error)
            }
        }
    }
}

impl std::error::Error for InterpJsonError {}

impl Interpretation {
    /// Serializes as `{"domain": …, "assignment": {symbol: polynomial
    /// text}}` with placeholders printed `x1..xk`; deterministic (symbols
    /// are sorted).
    pub fn to_json_string(&self) -> String {
        let doc = InterpJson {
            domain: match &self.domain {
                Domain::Nat => DomainJson { kind: "nat".to_string(), delta: None },
                Domain::NonNegRational { delta } => {
                    DomainJson { kind: "rat".to_string(), delta: Some(delta.to_string()) }
                }
            },
            assignment: self.assign.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("serializable structs");
        out.push('\n');
        out
    }

    pub fn from_json_str(text: &str) -> Result<Interpretation, InterpJsonError> {
        let doc: InterpJson = serde_json::from_str(text).map_err(InterpJsonError::Syntax)?;
        let domain = match doc.domain.kind.as_str() {
            "nat" => Domain::Nat,
            "rat" => {
                let delta = match &doc.domain.delta {
                    None => Rat::ONE,
                    Some(text) => text
                        .parse::<Rat>()
                        .map_err(|e| InterpJsonError::BadDomain(e.to_string()))?,
                };
                Domain::non_neg_rational(delta)
                    .map_err(|e| InterpJsonError::BadDomain(e.to_string()))?
            }
            other => {
                return Err(InterpJsonError::BadDomain(format!(
                    "unknown kind `{}` (expected `nat` or `rat`)",
                    other
                )))
            }
        };
        let mut interp = Interpretation::new(domain);
        for (symbol, text) in &doc.assignment {
            let poly = parse_poly(text)
                .map_err(|error| InterpJsonError::BadPolynomial { symbol: symbol.clone(), error })?;
            interp.set(symbol, poly);
        }
        Ok(interp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use crate::trs::build_single_rule_trs;

    fn single_gadget(p: &str, q: &str) -> (Polynomial, Polynomial, Trs) {
        let p = parse_poly(p).unwrap();
        let q = parse_poly(q).unwrap();
        let trs = build_single_rule_trs(&p, &q).unwrap();
        (p, q, trs)
    }

    fn w(values: &[u64]) -> Witness {
        Witness::new(values.to_vec()).unwrap()
    }

    #[test]
    fn evaluating_the_single_rule_lhs_recovers_the_linear_shape() {
        let (_, _, trs) = single_gadget("2*x1", "x1^2 + 1");
        let interp = theorem_lin_interpretation(&w(&[1]));
        let lhs = interp.evaluate_term(trs.signature(), trs.rules()[0].lhs()).unwrap();
        // P(1) = 2, so the left side is y1 + y2 + 3*y3 + 1.
        assert_eq!(lhs, parse_poly("x1 + x2 + 3*x3 + 1").unwrap());

        let rhs = interp.evaluate_term(trs.signature(), trs.rules()[0].rhs()).unwrap();
        assert_eq!(rhs, parse_poly("x1 + x2 + 3*x3").unwrap());
    }

    #[test]
    fn evaluating_a_variable_is_the_identity() {
        let interp = theorem_lin_interpretation(&w(&[1]));
        let sig = Signature::new();
        let value = interp.evaluate_term(&sig, &Term::var(1)).unwrap();
        assert_eq!(value, Polynomial::var(1));
    }

    #[test]
    fn evaluating_h_of_z_gives_the_offset() {
        let (p, q, _) = single_gadget("2*x1", "x1^2 + 1");
        let trs = build_qr_trs(&p, &q).unwrap();
        let interp = qr_interpretation(&w(&[1]), Rat::from_integer(3)).unwrap();
        let z = trs.signature().by_name("z").unwrap();
        let h = trs.signature().by_name("h").unwrap();
        let t = Term::app(h, vec![Term::constant(z)]);
        let value = interp.evaluate_term(trs.signature(), &t).unwrap();
        assert_eq!(value, Polynomial::from_integer(3));
    }

    #[test]
    fn evaluation_reports_unassigned_symbols() {
        let mut sig = Signature::new();
        let c = sig.add("c", 0).unwrap();
        let interp = Interpretation::new(Domain::Nat);
        let err = interp.evaluate_term(&sig, &Term::constant(c)).unwrap_err();
        assert_eq!(err, InterpError::UnassignedSymbol("c".to_string()));
    }

    #[test]
    fn monotonicity_criterion() {
        let mut sig = Signature::new();
        sig.add("a", 2).unwrap();

        let mut additive = Interpretation::new(Domain::Nat);
        additive.set("a", parse_poly("x1 + x2").unwrap());
        assert!(additive.is_monotone(&sig));

        let mut multiplicative = Interpretation::new(Domain::Nat);
        multiplicative.set("a", parse_poly("x1*x2").unwrap());
        assert!(!multiplicative.is_monotone(&sig));

        let mut sig_f = Signature::new();
        sig_f.add("f", 4).unwrap();
        let mut mixed = Interpretation::new(Domain::Nat);
        mixed.set("f", parse_poly("x3*x4 + x1 + x2 + x3 + x4").unwrap());
        assert!(mixed.is_monotone(&sig_f));
    }

    #[test]
    fn witness_interpretation_orients_iff_p_reaches_q() {
        let (_, _, trs) = single_gadget("x1^2", "x1");
        // P(2) = 4 ≥ 2 = Q(2); the difference is (4-2)y3 + 1.
        let interp = theorem_lin_interpretation(&w(&[2]));
        let certs = interp.orients_all(&trs).unwrap();
        assert_eq!(certs.len(), 1);
        assert_eq!(certs[0].difference, parse_poly("2*x3 + 1").unwrap());
        assert_eq!(certs[0].delta, Rat::ONE);

        // P(1) = 1 < 2 = Q(1) under (P=x, Q=2x): the y3 coefficient of
        // the difference goes negative.
        let (_, _, trs) = single_gadget("x1", "2*x1");
        let interp = theorem_lin_interpretation(&w(&[1]));
        let err = interp.orients_all(&trs).unwrap_err();
        match err {
            OrientError::NotOriented(fail) => {
                assert_eq!(fail.exponents, vec![(2, 1)]);
                assert_eq!(fail.coefficient, Rat::from_integer(-1));
            }
            other => panic!("expected orientation failure, got {:?}", other),
        }
    }

    #[test]
    fn missing_margin_is_reported_on_the_constant_term() {
        let mut sig = Signature::new();
        let a = sig.add("a", 2).unwrap();
        let q = sig.add("q", 1).unwrap();
        let lhs = Term::app(a, vec![Term::var(0), Term::var(0)]);
        let rhs = Term::app(q, vec![Term::var(0)]);
        let rule = Rule::new(lhs, rhs).unwrap();

        let mut interp = Interpretation::new(Domain::Nat);
        interp.set("a", parse_poly("x1 + x2").unwrap());
        interp.set("q", parse_poly("x1").unwrap());
        let err = interp.orients(&sig, &rule).unwrap_err();
        match err {
            OrientError::NotOriented(fail) => {
                assert!(fail.exponents.is_empty());
                assert_eq!(fail.coefficient, Rat::ZERO);
                assert_eq!(fail.required, Rat::ONE);
            }
            other => panic!("expected missing margin, got {:?}", other),
        }
    }

    #[test]
    fn eight_rule_gadget_differences_at_h_3() {
        let (p, q, _) = single_gadget("2*x1", "x1^2 + 1");
        let trs = build_qr_trs(&p, &q).unwrap();
        let interp = qr_interpretation(&w(&[1]), Rat::from_integer(3)).unwrap();
        let certs = interp.orients_all(&trs).unwrap();
        let expected = [
            "6*x1 + 3",                      // (1) expands to 2h·x + h
            "x1 + 3",                        // (2) (h-2)·x + h
            "21*x1 + 24",                    // (3) (h^3-2h)·x + h^3 - h
            "2*x1^2 + 4*x1 + 2",             // (4) (h-1)(x^2 + 2x + 1)
            "1",                             // (5) exact margin
            "2*x1 + 2",                      // (6) (h-1)(x + 1)
            "2*x1 + 2",                      // (7) symmetric to (6)
            "2*x1^3 + 6*x1^2 + 9*x1 + 8",    // (8) depends on P, Q, v
        ];
        for (cert, want) in certs.iter().zip(expected.iter()) {
            assert_eq!(cert.difference, parse_poly(want).unwrap(), "rule {}", cert.rule_index + 1);
        }
    }

    #[test]
    fn named_interpretation_templates() {
        let interp = theorem_lin_interpretation(&w(&[1]));
        assert_eq!(interp.get("v1"), Some(&parse_poly("x1").unwrap()));
        assert_eq!(interp.get("o"), Some(&Polynomial::constant(Rat::ONE)));
        let interp = theorem_lin_interpretation(&w(&[2, 3]));
        assert_eq!(interp.get("v2"), Some(&parse_poly("3*x1").unwrap()));

        let (p, q, _) = single_gadget("2*x1", "x1^2 + 1");
        let interp = always_terminating_interpretation(&p, &q).unwrap();
        assert_eq!(interp.get("o"), Some(&Polynomial::from_integer(3)));
        assert_eq!(interp.get("v1"), Some(&parse_poly("x1").unwrap()));

        let interp = qr_interpretation(&w(&[2]), Rat::from_integer(3)).unwrap();
        assert_eq!(interp.get("q"), Some(&parse_poly("x1^2 + 2*x1").unwrap()));
        assert_eq!(interp.get("v1"), Some(&parse_poly("x1^2").unwrap()));
        assert_eq!(
            qr_interpretation(&w(&[1]), Rat::from_integer(2)).unwrap_err(),
            InterpError::HTooSmall(Rat::from_integer(2))
        );
    }

    #[test]
    fn always_terminating_orients_regardless_of_satisfiability() {
        // x < 2x everywhere on ℕ₊, yet the nonlinear interpretation
        // still orients the gadget.
        for (p, q) in [("2*x1", "x1^2 + 1"), ("x1", "2*x1"), ("0", "x1^2*x2^2 + 2")] {
            let (p, q, trs) = single_gadget(p, q);
            let interp = always_terminating_interpretation(&p, &q).unwrap();
            assert!(interp.validate(trs.signature()).is_ok());
            assert!(interp.is_monotone(trs.signature()));
            interp.orients_all(&trs).unwrap_or_else(|e| panic!("{}: {}", trs, e));
        }

        let bad = parse_poly("x1 - 1").unwrap();
        let ok = parse_poly("x1").unwrap();
        assert_eq!(
            always_terminating_interpretation(&bad, &ok).unwrap_err(),
            InterpError::NonPositivePolynomial
        );
    }

    #[test]
    fn minimal_h_for_the_running_example() {
        let p = parse_poly("2*x1").unwrap();
        let q = parse_poly("x1^2 + 1").unwrap();
        // Frozen by hand: at h = 3 rule (8)'s difference is
        // 2x^3 + 6x^2 + 9x + 8, and rules (1)-(7) need h ≥ 3, so the
        // scan stops immediately.
        assert_eq!(minimal_h(&p, &q, &w(&[1]), Rat::ONE, 64), Ok(3));

        assert_eq!(
            minimal_h(&p, &q, &w(&[1]), Rat::ONE, 2),
            Err(MinimalHError::Exhausted { hmax: 2 })
        );

        let p2 = parse_poly("x1").unwrap();
        let q2 = parse_poly("2*x1").unwrap();
        assert!(matches!(
            minimal_h(&p2, &q2, &w(&[1]), Rat::ONE, 64),
            Err(MinimalHError::Precondition { .. })
        ));
    }

    #[test]
    fn witness_extraction_round_trip() {
        let v = w(&[2, 5]);
        let interp = theorem_lin_interpretation(&v);
        assert_eq!(extract_witness(&interp).unwrap(), v);

        let mut shifted = theorem_lin_interpretation(&w(&[1]));
        shifted.set("v1", parse_poly("3*x1 + 7").unwrap());
        assert_eq!(extract_witness(&shifted).unwrap().values(), &[3]);

        let mut quadratic = theorem_lin_interpretation(&w(&[1]));
        quadratic.set("v1", parse_poly("x1^2").unwrap());
        assert_eq!(
            extract_witness(&quadratic).unwrap_err(),
            InterpError::NonLinearAssignment { symbol: "v1".to_string() }
        );

        let mut degenerate = theorem_lin_interpretation(&w(&[1]));
        degenerate.set("v1", parse_poly("7").unwrap());
        assert!(matches!(
            extract_witness(&degenerate).unwrap_err(),
            InterpError::BadWitnessCoefficient { .. }
        ));
    }

    #[test]
    fn extraction_round_trip_up_to_ten() {
        for a in 1..=10u64 {
            for b in [1, 4, 10] {
                let v = w(&[a, b]);
                assert_eq!(extract_witness(&theorem_lin_interpretation(&v)).unwrap(), v);
            }
        }
    }

    #[test]
    fn encoded_numbers_keep_their_value_as_spine_coefficients() {
        let (p, q, trs) = single_gadget("2*x1", "x1^2 + 1");
        let _ = (p, q);
        let interp = theorem_lin_interpretation(&w(&[1]));
        let sig = trs.signature();
        let z = sig.by_name("z").unwrap();
        let a = sig.by_name("a").unwrap();
        let y3 = 2;
        for m in 0..=30u64 {
            let mut t = Term::constant(z);
            for _ in 0..m {
                t = Term::app(a, vec![Term::var(y3), t]);
            }
            let value = interp.evaluate_term(sig, &t).unwrap();
            assert_eq!(value.coefficient_of(&[(y3, 1)]), Rat::from(m));
        }
    }

    #[test]
    fn validation_catches_domain_violations() {
        let mut sig = Signature::new();
        sig.add("c", 0).unwrap();

        let mut negative = Interpretation::new(Domain::Nat);
        negative.set("c", parse_poly("-1").unwrap());
        assert!(matches!(
            negative.validate(&sig),
            Err(InterpError::NegativeCoefficient { .. })
        ));

        let mut fractional = Interpretation::new(Domain::Nat);
        fractional.set("c", parse_poly("1/2").unwrap());
        assert!(matches!(
            fractional.validate(&sig),
            Err(InterpError::NonIntegerCoefficient { .. })
        ));

        let mut rational = Interpretation::new(Domain::non_neg_rational(Rat::new(1, 2)).unwrap());
        rational.set("c", parse_poly("1/2").unwrap());
        assert!(rational.validate(&sig).is_ok());

        let mut wide = Interpretation::new(Domain::Nat);
        let mut sig_u = Signature::new();
        sig_u.add("u", 1).unwrap();
        wide.set("u", parse_poly("x1 + x2").unwrap());
        assert!(matches!(
            wide.validate(&sig_u),
            Err(InterpError::PlaceholderOutOfRange { .. })
        ));

        assert_eq!(
            Domain::non_neg_rational(Rat::ZERO).unwrap_err(),
            InterpError::NonPositiveDelta(Rat::ZERO)
        );
    }

    #[test]
    fn affine_fast_path_agrees_with_the_exact_path() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..100 {
            let p = random_positive_poly(&mut rng, 1);
            let q = random_positive_poly(&mut rng, 1);
            let trs = build_single_rule_trs(&p, &q).unwrap();
            let v = w(&[rng.gen_range(1..4)]);
            let interp = theorem_lin_interpretation(&v);

            let sig = trs.signature();
            let mut tables = EvalTables::new(&interp, sig);
            for rule in trs.rules() {
                let mut lanes = 1;
                rule.lhs().visit_vars(&mut |v| lanes = lanes.max(v + 2));
                rule.rhs().visit_vars(&mut |v| lanes = lanes.max(v + 2));
                let fast = tables
                    .affine_rule_difference(rule, lanes)
                    .expect("linear integer interpretation, no overflow at this scale");
                let lhs = interp.evaluate_term(sig, rule.lhs()).unwrap();
                let rhs = interp.evaluate_term(sig, rule.rhs()).unwrap();
                assert_eq!(affine_to_poly(&fast), lhs.sub(&rhs));
            }
        }
    }

    #[test]
    fn mixed_evaluation_agrees_with_substitution() {
        use rand::rngs::StdRng;
        use rand::SeedableRng;
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..60 {
            let p = random_positive_poly(&mut rng, 2);
            let q = random_positive_poly(&mut rng, 2);
            let trs = build_single_rule_trs(&p, &q).unwrap();
            // The quadratic f-assignment forces the walk out of the affine
            // fragment at the root while the subterms stay inside it.
            let interp = always_terminating_interpretation(&p, &q).unwrap();
            let sig = trs.signature();
            let tables = EvalTables::new(&interp, sig);
            for rule in trs.rules() {
                for side in [rule.lhs(), rule.rhs()] {
                    let mixed = tables.eval_mixed(side).unwrap().into_poly();
                    assert_eq!(mixed, interp.evaluate_term(sig, side).unwrap());
                }
            }
        }
    }

    fn random_positive_poly(rng: &mut impl rand::Rng, nvars: usize) -> Polynomial {
        let mut monomials = Vec::new();
        for _ in 0..rng.gen_range(0..4) {
            let c = rng.gen_range(1..3i128);
            let exps: Vec<(VarId, u32)> =
                (0..nvars).map(|v| (v, rng.gen_range(0..3u32))).collect();
            monomials.push(Monomial::new(Rat::from_integer(c), &exps));
        }
        Polynomial::from_monomials(monomials)
    }

    #[test]
    fn json_round_trip() {
        let interp = qr_interpretation(&w(&[2]), Rat::from_integer(3)).unwrap();
        let text = interp.to_json_string();
        let back = Interpretation::from_json_str(&text).unwrap();
        assert_eq!(back, interp);
        assert_eq!(back.to_json_string(), text);

        let nat = theorem_lin_interpretation(&w(&[1]));
        let back = Interpretation::from_json_str(&nat.to_json_string()).unwrap();
        assert_eq!(back, nat);

        assert!(Interpretation::from_json_str("{}").is_err());
        let bad_kind = r#"{"domain":{"kind":"real"},"assignment":{}}"#;
        assert!(matches!(
            Interpretation::from_json_str(bad_kind),
            Err(InterpJsonError::BadDomain(_))
        ));
        let bad_poly = r#"{"domain":{"kind":"nat"},"assignment":{"z":"1 +"}}"#;
        assert!(matches!(
            Interpretation::from_json_str(bad_poly),
            Err(InterpJsonError::BadPolynomial { .. })
        ));
    }
}
