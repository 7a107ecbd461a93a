//! Encoding polynomials as terms, and the two gadget systems.
//!
//! A natural number m is the term a(x, a(x, … a(x, z)…)) with m copies of
//! the spine variable x. A monomial c·v₁^{m₁}⋯vₙ^{mₙ} wraps the encoded
//! coefficient in unary symbols, v̂₁ outermost; a polynomial is a
//! right-nested a-spine over its monomials in canonical order, ending in
//! z. The builders splice these encodings into the fixed rule templates.

use crate::poly::{Monomial, Polynomial, VarId};
use crate::rat::Rat;
use crate::trs::{Rule, Signature, SymId, Term, Trs, TrsError};
use std::fmt;

/// Reasons a polynomial cannot be encoded as a term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EncodeError {
    /// Coefficients must be positive integers.
    BadCoefficient(Rat),
    /// A coefficient exceeds the supported unary range.
    CoefficientTooLarge(Rat),
    /// The polynomial mentions an indeterminate with no unary symbol.
    IndeterminateOutOfRange { var: VarId, count: usize },
}

impl fmt::Display for EncodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EncodeError::BadCoefficient(c) => {
                write!(f, "cannot encode coefficient {}: must be a positive integer", c)
            }
            EncodeError::CoefficientTooLarge(c) => {
                write!(f, "coefficient {} too large for unary encoding", c)
            }
            EncodeError::IndeterminateOutOfRange { var, count } => write!(
                f,
                "indeterminate x{} out of range: encoding covers {} indeterminate(s)",
                var + 1,
                count
            ),
        }
    }
}

impl std::error::Error for EncodeError {}

/// The symbol ids an encoding works with, within some host signature.
#[derive(Clone, Copy)]
struct EncSyms<'a> {
    z: SymId,
    a: SymId,
    vhat: &'a [SymId],
}

fn number_term(syms: EncSyms<'_>, m: u64, x: VarId) -> Term {
    let mut t = Term::constant(syms.z);
    for _ in 0..m {
        t = Term::app(syms.a, vec![Term::var(x), t]);
    }
    t
}

fn monomial_term(syms: EncSyms<'_>, m: &Monomial, x: VarId) -> Result<Term, EncodeError> {
    let coeff = m.coeff();
    if !coeff.is_integer() || !coeff.is_positive() {
        return Err(EncodeError::BadCoefficient(coeff));
    }
    let c = coeff.as_natural().ok_or(EncodeError::CoefficientTooLarge(coeff))?;
    let mut t = number_term(syms, c, x);
    // Later indeterminates sit innermost, so wrap in reverse order.
    for &(v, e) in m.exponents().iter().rev() {
        let sym = *syms
            .vhat
            .get(v)
            .ok_or(EncodeError::IndeterminateOutOfRange { var: v, count: syms.vhat.len() })?;
        for _ in 0..e {
            t = Term::app(sym, vec![t]);
        }
    }
    Ok(t)
}

fn poly_term(syms: EncSyms<'_>, p: &Polynomial, x: VarId) -> Result<Term, EncodeError> {
    let mut t = Term::constant(syms.z);
    for m in p.terms().iter().rev() {
        let enc = monomial_term(syms, m, x)?;
        t = Term::app(syms.a, vec![enc, t]);
    }
    Ok(t)
}

/// A standalone encoding signature {z, a, v̂₁..v̂ₙ} with caller-chosen
/// indeterminate symbol names.
///
/// The builders below use the same encoding over their own larger
/// signatures; this type serves direct uses such as `encode` on the
/// command line.
#[derive(Clone, Debug)]
pub struct EncodingSig {
    sig: Signature,
    vhat: Vec<SymId>,
}

impl EncodingSig {
    pub fn new<S: AsRef<str>>(vhat_names: &[S]) -> Result<EncodingSig, TrsError> {
        let mut sig = Signature::new();
        sig.add("z", 0)?;
        sig.add("a", 2)?;
        let mut vhat = Vec::with_capacity(vhat_names.len());
        for name in vhat_names {
            vhat.push(sig.add(name.as_ref(), 1)?);
        }
        Ok(EncodingSig { sig, vhat })
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    fn syms(&self) -> EncSyms<'_> {
        EncSyms { z: 0, a: 1, vhat: &self.vhat }
    }

    /// ⌈m⌉ with spine variable `x`: m nested a(x, ·) around z.
    pub fn encode_number(&self, m: u64, x: VarId) -> Term {
        number_term(self.syms(), m, x)
    }

    /// Encodes one monomial: unary wrappers around the encoded
    /// coefficient, first indeterminate outermost.
    pub fn encode_monomial(&self, m: &Monomial, x: VarId) -> Result<Term, EncodeError> {
        monomial_term(self.syms(), m, x)
    }

    /// Encodes a positive-coefficient polynomial (zero allowed: it is
    /// plain z) as the right-nested a-spine over its monomials in
    /// canonical order.
    pub fn encode_poly(&self, p: &Polynomial, x: VarId) -> Result<Term, EncodeError> {
        poly_term(self.syms(), p, x)
    }
}

/// Number of indeterminates a `(p, q)` pair spans.
fn joint_arity(p: &Polynomial, q: &Polynomial) -> usize {
    p.arity().max(q.arity())
}

fn check_encodable(p: &Polynomial) -> Result<(), EncodeError> {
    for m in p.terms() {
        let c = m.coeff();
        if !c.is_integer() || !c.is_positive() {
            return Err(EncodeError::BadCoefficient(c));
        }
    }
    Ok(())
}

/// Builds the one-rule system whose termination by a linear interpretation
/// expresses P(v⃗) ≥ Q(v⃗):
///
/// ```text
/// f(y1,y2,a(⌈P⌉,y3),o) -> f(a(y1,z),a(z,y2),a(⌈Q⌉,y3),z)
/// ```
///
/// over the signature {z, o, a, f, v1..vn} with arities 0, 0, 2, 4 and 1
/// for each unary indeterminate symbol; both encodings use spine variable
/// y3. Requires positive integer coefficients in `p` and `q`.
pub fn build_single_rule_trs(p: &Polynomial, q: &Polynomial) -> Result<Trs, EncodeError> {
    check_encodable(p)?;
    check_encodable(q)?;
    let n = joint_arity(p, q);

    let mut sig = Signature::new();
    let z = sig.add("z", 0).expect("fresh signature");
    let o = sig.add("o", 0).expect("fresh signature");
    let a = sig.add("a", 2).expect("fresh signature");
    let f = sig.add("f", 4).expect("fresh signature");
    let mut vhat = Vec::with_capacity(n);
    for i in 0..n {
        vhat.push(sig.add(&format!("v{}", i + 1), 1).expect("fresh signature"));
    }

    let syms = EncSyms { z, a, vhat: &vhat };
    let (y1, y2, y3) = (0, 1, 2);
    let enc_p = poly_term(syms, p, y3)?;
    let enc_q = poly_term(syms, q, y3)?;

    let lhs = Term::app(
        f,
        vec![
            Term::var(y1),
            Term::var(y2),
            Term::app(a, vec![enc_p, Term::var(y3)]),
            Term::constant(o),
        ],
    );
    let rhs = Term::app(
        f,
        vec![
            Term::app(a, vec![Term::var(y1), Term::constant(z)]),
            Term::app(a, vec![Term::constant(z), Term::var(y2)]),
            Term::app(a, vec![enc_q, Term::var(y3)]),
            Term::constant(z),
        ],
    );

    let rule = Rule::new(lhs, rhs).expect("template obeys the rule invariants");
    let vars = vec!["y1".to_string(), "y2".to_string(), "y3".to_string()];
    Ok(Trs::new(sig, vec![rule], vars).expect("template is well-formed"))
}

/// Builds the eight-rule system for interpretations over the nonnegative
/// rationals or reals. Rules (1)–(7) are independent of `p` and `q` and
/// pin down the shape of any compatible interpretation; rule (8) is
/// h(a(⌈P⌉,x)) → a(⌈Q⌉,x) with the fixed variable x doubling as the
/// encoding spine. Signature: {z, a, h, q, g, v1..vn}.
pub fn build_qr_trs(p: &Polynomial, q: &Polynomial) -> Result<Trs, EncodeError> {
    check_encodable(p)?;
    check_encodable(q)?;
    let n = joint_arity(p, q);

    let mut sig = Signature::new();
    let z = sig.add("z", 0).expect("fresh signature");
    let a = sig.add("a", 2).expect("fresh signature");
    let h = sig.add("h", 1).expect("fresh signature");
    let qs = sig.add("q", 1).expect("fresh signature");
    let g = sig.add("g", 2).expect("fresh signature");
    let mut vhat = Vec::with_capacity(n);
    for i in 0..n {
        vhat.push(sig.add(&format!("v{}", i + 1), 1).expect("fresh signature"));
    }

    let x = Term::var(0);
    let syms = EncSyms { z, a, vhat: &vhat };
    let enc_p = poly_term(syms, p, 0)?;
    let enc_q = poly_term(syms, q, 0)?;

    let h1 = |t: Term| Term::app(h, vec![t]);
    let q1 = |t: Term| Term::app(qs, vec![t]);
    let a2 = |s: Term, t: Term| Term::app(a, vec![s, t]);
    let g2 = |s: Term, t: Term| Term::app(g, vec![s, t]);

    let templates = vec![
        // (1) q(h(x)) -> h(h(q(x)))
        (q1(h1(x.clone())), h1(h1(q1(x.clone())))),
        // (2) h(x) -> g(x,x)
        (h1(x.clone()), g2(x.clone(), x.clone())),
        // (3) g(q(x),h(h(h(x)))) -> q(g(x,h(z)))
        (
            g2(q1(x.clone()), h1(h1(h1(x.clone())))),
            q1(g2(x.clone(), h1(Term::constant(z)))),
        ),
        // (4) h(q(x)) -> a(x,x)
        (h1(q1(x.clone())), a2(x.clone(), x.clone())),
        // (5) a(x,x) -> q(x)
        (a2(x.clone(), x.clone()), q1(x.clone())),
        // (6) h(x) -> a(z,x)
        (h1(x.clone()), a2(Term::constant(z), x.clone())),
        // (7) h(x) -> a(x,z)
        (h1(x.clone()), a2(x.clone(), Term::constant(z))),
        // (8) h(a(⌈P⌉,x)) -> a(⌈Q⌉,x)
        (h1(a2(enc_p, x.clone())), a2(enc_q, x.clone())),
    ];

    let rules = templates
        .into_iter()
        .map(|(lhs, rhs)| Rule::new(lhs, rhs).expect("templates obey the rule invariants"))
        .collect();
    Ok(Trs::new(sig, rules, vec!["x".to_string()]).expect("templates are well-formed"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    /// Literal transcription of the defining equations, used as an
    /// independent oracle for the iterative encoders.
    fn oracle_number(es: &EncodingSig, m: u64, x: VarId) -> Term {
        if m == 0 {
            Term::constant(0)
        } else {
            Term::app(1, vec![Term::var(x), oracle_number(es, m - 1, x)])
        }
    }

    fn oracle_monomial(es: &EncodingSig, m: &Monomial, x: VarId) -> Term {
        let c = m.coeff().as_natural().unwrap();
        let mut t = oracle_number(es, c, x);
        for &(v, e) in m.exponents().iter().rev() {
            // In an EncodingSig, z is id 0, a is id 1, and the unary
            // indeterminate symbols follow in order.
            for _ in 0..e {
                t = Term::app(2 + v, vec![t]);
            }
        }
        t
    }

    fn oracle_poly(es: &EncodingSig, p: &Polynomial, x: VarId) -> Term {
        let mut t = Term::constant(0);
        for m in p.terms().iter().rev() {
            t = Term::app(1, vec![oracle_monomial(es, m, x), t]);
        }
        t
    }

    fn display_in(es: &EncodingSig, t: &Term, var: &str) -> String {
        let trs = Trs::new(es.signature().clone(), vec![], vec![var.to_string()]).unwrap();
        trs.display_term(t)
    }

    #[test]
    fn numbers_unfold_unarily() {
        let es = EncodingSig::new(&["X"]).unwrap();
        assert_eq!(display_in(&es, &es.encode_number(0, 0), "x"), "z");
        assert_eq!(display_in(&es, &es.encode_number(1, 0), "x"), "a(x,z)");
        assert_eq!(display_in(&es, &es.encode_number(2, 0), "y"), "a(y,a(y,z))");
    }

    #[test]
    fn number_spine_counts_occurrences() {
        let es = EncodingSig::new(&["X"]).unwrap();
        for m in 0..=50 {
            let t = es.encode_number(m, 0);
            assert_eq!(t.count_var(0) as u64, m);
            assert_eq!(t.count_symbol(0), 1, "one z terminator");
            assert_eq!(t.count_symbol(1) as u64, m, "one a per unit");
            assert_eq!(t, oracle_number(&es, m, 0));
        }
    }

    #[test]
    fn monomials_wrap_first_indeterminate_outermost() {
        let es = EncodingSig::new(&["X"]).unwrap();
        let x3 = Monomial::new(Rat::ONE, &[(0, 3)]);
        assert_eq!(display_in(&es, &es.encode_monomial(&x3, 0).unwrap(), "y"), "X(X(X(a(y,z))))");

        let two_x = Monomial::new(Rat::from_integer(2), &[(0, 1)]);
        assert_eq!(
            display_in(&es, &es.encode_monomial(&two_x, 0).unwrap(), "y"),
            "X(a(y,a(y,z)))"
        );

        let two = Monomial::constant(Rat::from_integer(2));
        assert_eq!(display_in(&es, &es.encode_monomial(&two, 0).unwrap(), "y"), "a(y,a(y,z))");

        // Two indeterminates: v1 wraps outside v2.
        let es2 = EncodingSig::new(&["v1", "v2"]).unwrap();
        let m = Monomial::new(Rat::ONE, &[(0, 1), (1, 2)]);
        assert_eq!(
            display_in(&es2, &es2.encode_monomial(&m, 0).unwrap(), "x"),
            "v1(v2(v2(a(x,z))))"
        );
    }

    #[test]
    fn monomial_rejects_bad_coefficients() {
        let es = EncodingSig::new(&["X"]).unwrap();
        let half = Monomial::constant(Rat::new(1, 2));
        assert_eq!(
            es.encode_monomial(&half, 0),
            Err(EncodeError::BadCoefficient(Rat::new(1, 2)))
        );
        let neg = Monomial::constant(Rat::from_integer(-3));
        assert_eq!(
            es.encode_monomial(&neg, 0),
            Err(EncodeError::BadCoefficient(Rat::from_integer(-3)))
        );
        let far = Monomial::new(Rat::ONE, &[(5, 1)]);
        assert_eq!(
            es.encode_monomial(&far, 0),
            Err(EncodeError::IndeterminateOutOfRange { var: 5, count: 1 })
        );
    }

    #[test]
    fn worked_example_matches_printed_term() {
        let es = EncodingSig::new(&["X"]).unwrap();
        let p = parse_poly("x1^3 + 2*x1 + 2").unwrap();
        let t = es.encode_poly(&p, 0).unwrap();
        assert_eq!(
            display_in(&es, &t, "y"),
            "a(X(X(X(a(y,z)))), a(X(a(y,a(y,z))), a(a(y,a(y,z)), z)))"
        );
    }

    #[test]
    fn zero_and_single_monomial_spines() {
        let es = EncodingSig::new(&["X"]).unwrap();
        assert_eq!(display_in(&es, &es.encode_poly(&Polynomial::zero(), 0).unwrap(), "y"), "z");

        let single = parse_poly("x1").unwrap();
        let t = es.encode_poly(&single, 0).unwrap();
        assert_eq!(display_in(&es, &t, "y"), "a(X(a(y,z)), z)");
        assert_eq!(t, oracle_poly(&es, &single, 0));
    }

    #[test]
    fn encoding_matches_recursive_oracle_on_random_polys() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(0x9e3779b9);
        let es = EncodingSig::new(&["v1", "v2"]).unwrap();
        for _ in 0..200 {
            let mut monomials = Vec::new();
            for _ in 0..rng.gen_range(0..5) {
                let c = rng.gen_range(1..6i128);
                let e1 = rng.gen_range(0..4u32);
                let e2 = rng.gen_range(0..4u32);
                monomials.push(Monomial::new(Rat::from_integer(c), &[(0, e1), (1, e2)]));
            }
            let p = Polynomial::from_monomials(monomials);
            let t = es.encode_poly(&p, 0).unwrap();
            assert_eq!(t, oracle_poly(&es, &p, 0));

            // Symbol counts: one a per monomial for the spine plus one per
            // coefficient unit; per-indeterminate counts sum the exponents.
            let n_monomials = p.terms().len();
            let coeff_sum: u64 = p.terms().iter().map(|m| m.coeff().as_natural().unwrap()).sum();
            assert_eq!(t.count_symbol(1) as u64, n_monomials as u64 + coeff_sum);
            for v in 0..2 {
                let expected: u64 = p
                    .terms()
                    .iter()
                    .flat_map(|m| m.exponents().iter())
                    .filter(|&&(w, _)| w == v)
                    .map(|&(_, e)| e as u64)
                    .sum();
                assert_eq!(t.count_symbol(2 + v) as u64, expected, "v{} count", v + 1);
            }
        }
    }

    #[test]
    fn single_rule_trs_matches_template() {
        let p = parse_poly("2*x1").unwrap();
        let q = parse_poly("x1^2 + 1").unwrap();
        let trs = build_single_rule_trs(&p, &q).unwrap();

        assert_eq!(trs.rules().len(), 1);
        let names: Vec<&str> = trs.signature().iter().map(|(_, s)| s.name.as_str()).collect();
        assert_eq!(names, ["z", "o", "a", "f", "v1"]);
        let arities: Vec<usize> = trs.signature().iter().map(|(_, s)| s.arity).collect();
        assert_eq!(arities, [0, 0, 2, 4, 1]);

        let rule = &trs.rules()[0];
        let f = trs.signature().by_name("f").unwrap();
        assert!(matches!(rule.lhs(), Term::App(g, _) if *g == f));
        assert!(matches!(rule.rhs(), Term::App(g, _) if *g == f));
        assert_eq!(
            trs.display_rule(rule),
            "f(y1,y2,a(a(v1(a(y3,a(y3,z))), z), y3),o) -> \
             f(a(y1,z), a(z,y2), a(a(v1(v1(a(y3,z))), a(a(y3,z), z)), y3), z)"
        );
    }

    #[test]
    fn single_rule_trs_zero_polynomials() {
        let trs = build_single_rule_trs(&Polynomial::zero(), &Polynomial::zero()).unwrap();
        assert_eq!(
            trs.display_rule(&trs.rules()[0]),
            "f(y1,y2,a(z,y3),o) -> f(a(y1,z), a(z,y2), a(z,y3), z)"
        );
    }

    #[test]
    fn single_rule_trs_rejects_bad_input() {
        let bad = parse_poly("x1 - 1").unwrap();
        let ok = parse_poly("x1").unwrap();
        assert!(matches!(
            build_single_rule_trs(&bad, &ok),
            Err(EncodeError::BadCoefficient(_))
        ));
        assert!(matches!(
            build_qr_trs(&ok, &bad),
            Err(EncodeError::BadCoefficient(_))
        ));
    }

    #[test]
    fn qr_trs_rules_match_printed_forms() {
        let p = parse_poly("2*x1").unwrap();
        let q = parse_poly("x1^2 + 1").unwrap();
        let trs = build_qr_trs(&p, &q).unwrap();

        let names: Vec<&str> = trs.signature().iter().map(|(_, s)| s.name.as_str()).collect();
        assert_eq!(names, ["z", "a", "h", "q", "g", "v1"]);

        let printed: Vec<String> = trs.rules().iter().map(|r| trs.display_rule(r)).collect();
        assert_eq!(
            printed,
            [
                "q(h(x)) -> h(h(q(x)))",
                "h(x) -> g(x,x)",
                "g(q(x),h(h(h(x)))) -> q(g(x,h(z)))",
                "h(q(x)) -> a(x,x)",
                "a(x,x) -> q(x)",
                "h(x) -> a(z,x)",
                "h(x) -> a(x,z)",
                "h(a(a(v1(a(x,a(x,z))), z), x)) -> a(a(v1(v1(a(x,z))), a(a(x,z), z)), x)",
            ]
        );
    }

    #[test]
    fn builders_produce_well_formed_rules_on_random_inputs() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..50 {
            let mut monomials = Vec::new();
            for _ in 0..rng.gen_range(0..4) {
                let c = rng.gen_range(1..4i128);
                let e1 = rng.gen_range(0..3u32);
                let e2 = rng.gen_range(0..3u32);
                monomials.push(Monomial::new(Rat::from_integer(c), &[(0, e1), (1, e2)]));
            }
            let p = Polynomial::from_monomials(monomials.clone());
            let q = Polynomial::from_monomials(monomials);
            // Trs::new re-validates every rule, so Ok means well-formed.
            build_single_rule_trs(&p, &q).unwrap();
            build_qr_trs(&p, &q).unwrap();
        }
    }
}
