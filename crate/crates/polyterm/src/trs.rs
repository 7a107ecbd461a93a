//! First-order terms, rewrite rules, and the gadget constructions.
//!
//! Terms are applications of symbols from a [`Signature`] to argument
//! lists, or variables. Argument lists are shared (`Arc`), so cloning a
//! term is cheap and the encoding of a polynomial can be spliced into many
//! rules without copying.
//!
//! The submodules provide the number/monomial/polynomial encodings with
//! the two TRS builders ([`encode`]) and serialization ([`io`]).

pub mod encode;
pub mod io;

use std::fmt;
use std::sync::Arc;

use crate::poly::VarId;

pub use encode::{build_qr_trs, build_single_rule_trs, EncodeError, EncodingSig};
pub use io::{serialize_trs, trs_from_json_str, TrsFormat};

/// Index of a function symbol within its signature.
pub type SymId = usize;

/// A function symbol: a name and a fixed arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunSym {
    pub name: String,
    pub arity: usize,
}

/// An ordered list of function symbols with unique names.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Signature {
    syms: Vec<FunSym>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    /// Adds a symbol and returns its id; rejects duplicate names.
    pub fn add(&mut self, name: &str, arity: usize) -> Result<SymId, TrsError> {
        if self.by_name(name).is_some() {
            return Err(TrsError::DuplicateSymbol(name.to_string()));
        }
        self.syms.push(FunSym { name: name.to_string(), arity });
        Ok(self.syms.len() - 1)
    }

    pub fn get(&self, id: SymId) -> &FunSym {
        &self.syms[id]
    }

    pub fn name(&self, id: SymId) -> &str {
        &self.syms[id].name
    }

    pub fn arity(&self, id: SymId) -> usize {
        self.syms[id].arity
    }

    pub fn by_name(&self, name: &str) -> Option<SymId> {
        self.syms.iter().position(|s| s.name == name)
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (SymId, &FunSym)> {
        self.syms.iter().enumerate()
    }
}

/// A first-order term: a variable or a symbol applied to arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(VarId),
    App(SymId, Arc<[Term]>),
}

impl Term {
    pub fn var(v: VarId) -> Term {
        Term::Var(v)
    }

    pub fn app(f: SymId, args: Vec<Term>) -> Term {
        Term::App(f, args.into())
    }

    /// A nullary application.
    pub fn constant(f: SymId) -> Term {
        Term::App(f, Vec::new().into())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// Calls `visit` on every variable occurrence, left to right.
    pub fn visit_vars(&self, visit: &mut impl FnMut(VarId)) {
        match self {
            Term::Var(v) => visit(*v),
            Term::App(_, args) => {
                for arg in args.iter() {
                    arg.visit_vars(visit);
                }
            }
        }
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        let mut found = false;
        self.visit_vars(&mut |w| found |= w == v);
        found
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Number of occurrences of the symbol `f`.
    pub fn count_symbol(&self, f: SymId) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(g, args) => {
                (*g == f) as usize + args.iter().map(|t| t.count_symbol(f)).sum::<usize>()
            }
        }
    }

    /// Number of occurrences of the variable `v`.
    pub fn count_var(&self, v: VarId) -> usize {
        let mut n = 0;
        self.visit_vars(&mut |w| n += (w == v) as usize);
        n
    }
}

/// A rewrite rule `lhs -> rhs`.
///
/// Enforced on construction: the left-hand side is not a variable, and
/// every variable of the right-hand side occurs on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    lhs: Term,
    rhs: Term,
}

impl Rule {
    pub fn new(lhs: Term, rhs: Term) -> Result<Rule, TrsError> {
        if lhs.is_var() {
            return Err(TrsError::LhsIsVariable);
        }
        let mut unbound = None;
        rhs.visit_vars(&mut |v| {
            if unbound.is_none() && !lhs.contains_var(v) {
                unbound = Some(v);
            }
        });
        if let Some(v) = unbound {
            return Err(TrsError::UnboundRhsVariable(v));
        }
        Ok(Rule { lhs, rhs })
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }
}

/// A term rewrite system: a signature, an ordered rule list, and the
/// external names of the rule variables (dense, 0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trs {
    sig: Signature,
    rules: Vec<Rule>,
    var_names: Vec<String>,
}

impl Trs {
    /// Validates that every rule is well-formed over the signature: known
    /// symbol ids, matching arities, and variable ids covered by
    /// `var_names`.
    pub fn new(sig: Signature, rules: Vec<Rule>, var_names: Vec<String>) -> Result<Trs, TrsError> {
        for rule in &rules {
            for term in [&rule.lhs, &rule.rhs] {
                check_term(&sig, var_names.len(), term)?;
            }
        }
        Ok(Trs { sig, rules, var_names })
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn var_name(&self, v: VarId) -> String {
        self.var_names.get(v).cloned().unwrap_or_else(|| format!("y{}", v + 1))
    }

    /// Renders a term with this system's symbol and variable names.
    pub fn display_term(&self, t: &Term) -> String {
        let mut out = String::new();
        render_term(&self.sig, &self.var_names, t, &mut out);
        out
    }

    /// Renders `lhs -> rhs`.
    pub fn display_rule(&self, r: &Rule) -> String {
        format!("{} -> {}", self.display_term(&r.lhs), self.display_term(&r.rhs))
    }
}

impl fmt::Display for Trs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, rule) in self.rules.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", self.display_rule(rule))?;
        }
        Ok(())
    }
}

fn check_term(sig: &Signature, nvars: usize, t: &Term) -> Result<(), TrsError> {
    match t {
        Term::Var(v) => {
            if *v >= nvars {
                return Err(TrsError::UnknownVariable(*v));
            }
            Ok(())
        }
        Term::App(f, args) => {
            if *f >= sig.len() {
                return Err(TrsError::UnknownSymbol(*f));
            }
            let expected = sig.arity(*f);
            if args.len() != expected {
                return Err(TrsError::ArityMismatch {
                    symbol: sig.name(*f).to_string(),
                    expected,
                    got: args.len(),
                });
            }
            for arg in args.iter() {
                check_term(sig, nvars, arg)?;
            }
            Ok(())
        }
    }
}

/// Canonical term printer.
///
/// Constants print bare (`z`, not `z()`). Within an argument list the
/// separator is `", "` when the first argument's own rendering contains a
/// comma, and a plain `","` otherwise; nesting decides the spacing, so
/// `a(y,z)` stays tight while `a(a(y,z), z)` gets room to breathe.
fn render_term(sig: &Signature, var_names: &[String], t: &Term, out: &mut String) {
    match t {
        Term::Var(v) => match var_names.get(*v) {
            Some(name) => out.push_str(name),
            None => {
                out.push('y');
                out.push_str(&(*v + 1).to_string());
            }
        },
        Term::App(f, args) => {
            out.push_str(sig.name(*f));
            if args.is_empty() {
                return;
            }
            out.push('(');
            let mut first = String::new();
            render_term(sig, var_names, &args[0], &mut first);
            let sep = if first.contains(',') { ", " } else { "," };
            out.push_str(&first);
            for arg in &args[1..] {
                out.push_str(sep);
                render_term(sig, var_names, arg, out);
            }
            out.push(')');
        }
    }
}

/// Structural errors in signatures, terms, rules, or systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrsError {
    DuplicateSymbol(String),
    UnknownSymbol(SymId),
    UnknownVariable(VarId),
    ArityMismatch { symbol: String, expected: usize, got: usize },
    LhsIsVariable,
    UnboundRhsVariable(VarId),
}

impl fmt::Display for TrsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrsError::DuplicateSymbol(name) => {
                write!(f, "duplicate function symbol `{}`", name)
            }
            TrsError::UnknownSymbol(id) => write!(f, "unknown symbol id {}", id),
            TrsError::UnknownVariable(v) => write!(f, "unknown variable id {}", v),
            TrsError::ArityMismatch { symbol, expected, got } => {
                write!(f, "symbol `{}` has arity {}, applied to {} arguments", symbol, expected, got)
            }
            TrsError::LhsIsVariable => write!(f, "left-hand side of a rule is a variable"),
            TrsError::UnboundRhsVariable(v) => {
                write!(f, "right-hand side uses variable id {} not present on the left", v)
            }
        }
    }
}

impl std::error::Error for TrsError {}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_sig() -> (Signature, SymId, SymId) {
        let mut sig = Signature::new();
        let z = sig.add("z", 0).unwrap();
        let a = sig.add("a", 2).unwrap();
        (sig, z, a)
    }

    #[test]
    fn signature_rejects_duplicates() {
        let mut sig = Signature::new();
        sig.add("a", 2).unwrap();
        assert_eq!(sig.add("a", 1), Err(TrsError::DuplicateSymbol("a".to_string())));
        assert_eq!(sig.by_name("a"), Some(0));
        assert_eq!(sig.by_name("b"), None);
    }

    #[test]
    fn rule_invariants_enforced() {
        let (_, z, a) = tiny_sig();
        assert_eq!(Rule::new(Term::var(0), Term::constant(z)), Err(TrsError::LhsIsVariable));
        let lhs = Term::app(a, vec![Term::var(0), Term::constant(z)]);
        assert_eq!(
            Rule::new(lhs.clone(), Term::var(1)),
            Err(TrsError::UnboundRhsVariable(1))
        );
        assert!(Rule::new(lhs, Term::var(0)).is_ok());
    }

    #[test]
    fn trs_validates_arities_and_variables() {
        let (sig, z, a) = tiny_sig();
        let bad_arity = Term::app(a, vec![Term::constant(z)]);
        let rule = Rule::new(bad_arity, Term::constant(z)).unwrap();
        let err = Trs::new(sig.clone(), vec![rule], vec![]).unwrap_err();
        assert_eq!(
            err,
            TrsError::ArityMismatch { symbol: "a".to_string(), expected: 2, got: 1 }
        );

        let loose_var = Term::app(a, vec![Term::var(0), Term::constant(z)]);
        let rule = Rule::new(loose_var, Term::constant(z)).unwrap();
        let err = Trs::new(sig, vec![rule], vec![]).unwrap_err();
        assert_eq!(err, TrsError::UnknownVariable(0));
    }

    #[test]
    fn printer_spaces_track_nesting() {
        let (sig, z, a) = tiny_sig();
        let y = Term::var(0);
        let az = |t| Term::app(a, vec![t, Term::constant(z)]);
        let inner = Term::app(a, vec![y.clone(), az(y.clone())]);
        let outer = Term::app(a, vec![az(inner.clone()), Term::constant(z)]);
        let trs = Trs::new(sig, vec![], vec!["y".to_string()]).unwrap();
        assert_eq!(trs.display_term(&inner), "a(y,a(y,z))");
        assert_eq!(trs.display_term(&outer), "a(a(a(y,a(y,z)), z), z)");
        assert_eq!(trs.display_term(&Term::constant(z)), "z");
    }

    #[test]
    fn term_statistics() {
        let (_, z, a) = tiny_sig();
        let t = Term::app(a, vec![Term::var(0), Term::app(a, vec![Term::var(0), Term::constant(z)])]);
        assert_eq!(t.size(), 5);
        assert_eq!(t.count_symbol(a), 2);
        assert_eq!(t.count_symbol(z), 1);
        assert_eq!(t.count_var(0), 2);
        assert_eq!(t.count_var(1), 0);
        assert!(t.contains_var(0));
        assert!(!t.contains_var(3));
    }
}
