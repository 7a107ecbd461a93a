//! Bounded searches and the end-to-end reduction pipeline.
//!
//! Three searches live here. [`witness_search`] scans `{1..bound}ⁿ` for
//! the lexicographically smallest point where one positive-coefficient
//! polynomial reaches another. [`linear_interp_search`] enumerates linear
//! monotone ℕ interpretations with bounded coefficients and returns the
//! first one that orients every rule. [`hilbert_pipeline`] ties them to
//! the root-finding problem: it splits a squared, sign-scaled integer
//! polynomial into a positive-coefficient comparison per sign vector and
//! runs the witness search on each branch. [`cross_check`] runs the
//! witness and interpretation searches side by side on the single-rule
//! gadget and reports whether the outcomes are consistent.
//!
//! All bounds are honesty markers: a miss is always reported as "none up
//! to the bound", never as nonexistence, because the unbounded problems
//! are undecidable. Enumeration orders are fixed and lexicographic, so
//! identical inputs give identical outputs regardless of the thread
//! count.

use std::fmt;

use crate::interp::{extract_witness, Interpretation, Witness};
use crate::poly::{Polynomial, SignVector, VarId};
use crate::rat::Rat;
use crate::trs::{build_single_rule_trs, SymId, Term, Trs};
use crate::Domain;

/// Bounds for the searches; see each operation for which fields it reads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest witness entry tried by [`witness_search`].
    pub witness_bound: u64,
    /// Largest interpretation coefficient tried by
    /// [`linear_interp_search`].
    pub coeff_bound: u64,
    /// Largest h tried by [`crate::interp::minimal_h`].
    pub hmax: u64,
    /// Worker threads for [`hilbert_pipeline`]; the result does not
    /// depend on it.
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig { witness_bound: 10, coeff_bound: 2, hmax: 64, threads: 1 }
    }
}

impl SearchConfig {
    /// All bounds must be at least 1.
    pub fn validate(&self) -> Result<(), SearchError> {
        for (name, value) in [
            ("witness_bound", self.witness_bound),
            ("coeff_bound", self.coeff_bound),
            ("hmax", self.hmax),
            ("threads", self.threads as u64),
        ] {
            if value == 0 {
                return Err(SearchError::Precondition {
                    reason: format!("{} must be at least 1", name),
                });
            }
        }
        Ok(())
    }
}

/// Search preconditions that failed before any enumeration began.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    Precondition { reason: String },
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::Precondition { reason } => write!(f, "precondition violated: {}", reason),
        }
    }
}

impl std::error::Error for SearchError {}

fn precondition(reason: String) -> SearchError {
    SearchError::Precondition { reason }
}

/// Lexicographically smallest v⃗ ∈ {1..bound}ⁿ with P(v⃗) ≥ Q(v⃗), where
/// n is the shared indeterminate count max(arity(p), arity(q)); `None`
/// if the whole box fails. Both polynomials must have positive
/// coefficients. For n = 0 the single empty point decides the constant
/// comparison.
pub fn witness_search(
    p: &Polynomial,
    q: &Polynomial,
    bound: u64,
) -> Result<Option<Witness>, SearchError> {
    for (side, poly) in [("P", p), ("Q", q)] {
        if !poly.has_positive_coefficients() {
            return Err(precondition(format!("{} must have positive coefficients", side)));
        }
    }
    let n = p.arity().max(q.arity());
    if n == 0 {
        let reached = p.evaluate(&[]).expect("constant") >= q.evaluate(&[]).expect("constant");
        return Ok(reached.then(|| Witness::new(Vec::new()).expect("no entries")));
    }
    if bound == 0 {
        return Ok(None);
    }

    let pi = IntPoly::new(p);
    let qi = IntPoly::new(q);
    let mut point = vec![1u64; n];
    loop {
        if reaches(&pi, &qi, p, q, &point) {
            return Ok(Some(Witness::new(point).expect("entries start at 1")));
        }
        // Odometer with the last coordinate fastest: lexicographic order.
        let mut slot = n;
        loop {
            if slot == 0 {
                return Ok(None);
            }
            slot -= 1;
            if point[slot] < bound {
                point[slot] += 1;
                break;
            }
            point[slot] = 1;
        }
    }
}

/// Integer monomial form for fast point evaluation; `None` when some
/// coefficient is not an integer.
struct IntPoly {
    monomials: Option<Vec<(i128, Vec<(VarId, u32)>)>>,
}

impl IntPoly {
    fn new(p: &Polynomial) -> IntPoly {
        let monomials = p
            .terms()
            .iter()
            .map(|m| Some((m.coeff().as_integer()?, m.exponents().to_vec())))
            .collect();
        IntPoly { monomials }
    }

    /// Checked evaluation; `None` on non-integer coefficients or 128-bit
    /// overflow (the caller re-evaluates exactly).
    fn eval(&self, point: &[u64]) -> Option<i128> {
        let monomials = self.monomials.as_ref()?;
        let mut total: i128 = 0;
        for (coeff, exps) in monomials {
            let mut value = *coeff;
            for &(v, e) in exps {
                for _ in 0..e {
                    value = value.checked_mul(point[v] as i128)?;
                }
            }
            total = total.checked_add(value)?;
        }
        Some(total)
    }
}

fn reaches(pi: &IntPoly, qi: &IntPoly, p: &Polynomial, q: &Polynomial, point: &[u64]) -> bool {
    if let (Some(pv), Some(qv)) = (pi.eval(point), qi.eval(point)) {
        return pv >= qv;
    }
    let exact: Vec<Rat> = point.iter().map(|&v| Rat::from(v)).collect();
    p.evaluate(&exact).expect("point covers the arity")
        >= q.evaluate(&exact).expect("point covers the arity")
}

/// First linear monotone ℕ interpretation, in a fixed lexicographic
/// enumeration order, that orients every rule of `trs` with all
/// coefficients at most `cfg.coeff_bound`; `None` when the bounded space
/// is exhausted.
///
/// Every symbol is assigned `c0 + c1·x1 + … + ck·xk` with `c0` in
/// `0..=coeff_bound` and each argument coefficient in `1..=coeff_bound`
/// (so monotonicity holds by construction). Symbols occurring in the
/// rules are enumerated deepest-occurrence-first; symbols the rules never
/// mention are pinned to the minimal row `x1 + … + xk`. A system with no
/// rules succeeds vacuously with every symbol mapped to
/// `x1 + … + xk + 1`. The returned interpretation is re-checked against
/// every rule before it is handed back.
pub fn linear_interp_search(trs: &Trs, cfg: &SearchConfig) -> Option<Interpretation> {
    if trs.rules().is_empty() {
        return Some(identity_plus_one(trs));
    }
    let mut engine = Engine::new(trs, cfg.coeff_bound, true);
    let interp = engine.run()?;
    let certified = interp.orients_all(trs).is_ok();
    assert!(certified, "search produced a non-orienting interpretation");
    Some(interp)
}

/// Every symbol mapped to x1 + … + xk + 1: monotone, and it orients the
/// empty rule set vacuously.
fn identity_plus_one(trs: &Trs) -> Interpretation {
    let mut interp = Interpretation::new(Domain::Nat);
    for (_, sym) in trs.signature().iter() {
        let mut monomials: Vec<crate::poly::Monomial> = (0..sym.arity)
            .map(|v| crate::poly::Monomial::new(Rat::ONE, &[(v, 1)]))
            .collect();
        monomials.push(crate::poly::Monomial::constant(Rat::ONE));
        interp.set(&sym.name, Polynomial::from_monomials(monomials));
    }
    interp
}

const VAR_NODE: u32 = u32::MAX;

/// One term node in the flattened per-rule arenas.
#[derive(Clone, Copy)]
struct Node {
    /// Symbol id, or [`VAR_NODE`] for a variable leaf.
    sym: u32,
    var: u32,
    kids_at: u32,
    nkids: u32,
    /// Offset of this node's value lanes in the flat value buffer.
    val_at: u32,
    /// Lane count of the rule this node belongs to (constant lane plus
    /// one lane per rule variable).
    lanes: u32,
    /// Last stage whose coefficients this node's value depends on.
    ready: u32,
}

/// Staged depth-first enumeration of coefficient rows.
///
/// Symbols are ordered into stages (deepest occurrence first, then larger
/// arity, then smaller id). Term nodes are grouped by the last stage they
/// depend on, so fixing one stage's row evaluates only the nodes that
/// just became determined; a rule is checked at the stage where both its
/// sides are complete. Values are affine lanes `[const, y1, y2, …]` in
/// checked 128-bit arithmetic.
///
/// When the single comparison-gadget rule shape is recognized, three
/// necessary-condition cuts are installed (each discards only candidates
/// that provably cannot be completed, so the lexicographic order of
/// survivors is unchanged):
///
/// 1. both argument coefficients of the pairing symbol must be 1,
/// 2. the spine carrying the first polynomial must keep at least the
///    spine variable coefficient of the second (precomputed per
///    combination of unary-symbol coefficients, which the comparison
///    provably depends on alone),
/// 3. the difference's constant term must be reachable for some row of
///    the root symbol.
struct Engine<'a> {
    trs: &'a Trs,
    bound: i128,
    stage_syms: Vec<SymId>,
    stage_of: Vec<Option<usize>>,
    nodes: Vec<Node>,
    kids: Vec<u32>,
    vals: Vec<i128>,
    nodes_by_stage: Vec<Vec<u32>>,
    rules_by_stage: Vec<Vec<u32>>,
    rule_roots: Vec<(u32, u32)>,
    coeffs: Vec<Vec<i128>>,
    prunes: Option<Prunes>,
}

/// The gadget-shape cuts, resolved to arena ids and stages.
struct Prunes {
    /// Stage of the binary pairing symbol (cut 1).
    a_stage: usize,
    /// Node ids of the two spine arguments and the lane of the spine
    /// variable (cut 2, value comparison form).
    lhs_spine: u32,
    rhs_spine: u32,
    spine_lane: usize,
    /// Stage at which both spine values are determined.
    spine_stage: usize,
    /// Root node ids for the constant-feasibility cut (3), checked one
    /// stage before the root symbol's.
    lhs_root: u32,
    rhs_root: u32,
    const_stage: Option<usize>,
    /// Precomputed spine comparison outcomes indexed by the argument
    /// coefficients of the unary stages in the spine block, when that
    /// block consists of arity-≤1 stages only.
    block: Option<SpineBlock>,
}

/// Bitset over combinations of argument coefficients of the unary stages
/// between the pairing stage and the spine stage. Outcome of cut 2 is
/// independent of every constant coefficient (constants never reach the
/// non-constant lanes), so one evaluation per combination settles it for
/// the entire outer enumeration.
struct SpineBlock {
    /// Unary stages inside the block, in stage order.
    stages: Vec<usize>,
    /// `passes[combo]` for combo = Σ (c1 − 1)·bound^position.
    passes: Vec<bool>,
    /// Prefix projections: `feasible[k][prefix]` says some completion of
    /// the first k+1 coefficients passes.
    feasible: Vec<Vec<bool>>,
}

impl<'a> Engine<'a> {
    fn new(trs: &'a Trs, bound: u64, use_prunes: bool) -> Engine<'a> {
        let sig = trs.signature();
        let nsyms = sig.len();

        // Deepest occurrence per symbol across all rule sides.
        let mut depth = vec![None::<u32>; nsyms];
        for rule in trs.rules() {
            for side in [rule.lhs(), rule.rhs()] {
                record_depths(side, 0, &mut depth);
            }
        }
        let mut stage_syms: Vec<SymId> = (0..nsyms).filter(|&s| depth[s].is_some()).collect();
        stage_syms.sort_by(|&x, &y| {
            depth[y]
                .cmp(&depth[x])
                .then(sig.arity(y).cmp(&sig.arity(x)))
                .then(x.cmp(&y))
        });
        let mut stage_of = vec![None; nsyms];
        for (stage, &sym) in stage_syms.iter().enumerate() {
            stage_of[sym] = Some(stage);
        }

        let mut engine = Engine {
            trs,
            bound: bound as i128,
            stage_syms,
            stage_of,
            nodes: Vec::new(),
            kids: Vec::new(),
            vals: Vec::new(),
            nodes_by_stage: Vec::new(),
            rules_by_stage: Vec::new(),
            rule_roots: Vec::new(),
            coeffs: Vec::new(),
            prunes: None,
        };
        engine.nodes_by_stage = vec![Vec::new(); engine.stage_syms.len()];
        engine.rules_by_stage = vec![Vec::new(); engine.stage_syms.len()];
        engine.coeffs = engine
            .stage_syms
            .iter()
            .map(|&sym| vec![0; sig.arity(sym) + 1])
            .collect();

        for (index, rule) in trs.rules().iter().enumerate() {
            let mut lanes = 1;
            rule.lhs().visit_vars(&mut |v| lanes = lanes.max(v + 2));
            rule.rhs().visit_vars(&mut |v| lanes = lanes.max(v + 2));
            let lhs = engine.flatten(rule.lhs(), lanes as u32);
            let rhs = engine.flatten(rule.rhs(), lanes as u32);
            engine.rule_roots.push((lhs, rhs));
            let ready = engine.nodes[lhs as usize].ready.max(engine.nodes[rhs as usize].ready);
            engine.rules_by_stage[ready as usize].push(index as u32);
        }
        for (id, node) in engine.nodes.iter().enumerate() {
            engine.nodes_by_stage[node.ready as usize].push(id as u32);
        }

        if use_prunes {
            engine.install_prunes();
        }
        engine
    }

    fn flatten(&mut self, t: &Term, lanes: u32) -> u32 {
        let node = match t {
            Term::Var(v) => Node {
                sym: VAR_NODE,
                var: *v as u32,
                kids_at: 0,
                nkids: 0,
                val_at: self.vals.len() as u32,
                lanes,
                ready: 0,
            },
            Term::App(f, args) => {
                let ids: Vec<u32> = args.iter().map(|arg| self.flatten(arg, lanes)).collect();
                let mut ready = self.stage_of[*f].expect("rule symbols occur") as u32;
                for &id in &ids {
                    ready = ready.max(self.nodes[id as usize].ready);
                }
                let kids_at = self.kids.len() as u32;
                self.kids.extend(ids);
                Node {
                    sym: *f as u32,
                    var: 0,
                    kids_at,
                    nkids: args.len() as u32,
                    val_at: self.vals.len() as u32,
                    lanes,
                    ready,
                }
            }
        };
        self.vals.extend(std::iter::repeat(0).take(lanes as usize));
        self.nodes.push(node);
        (self.nodes.len() - 1) as u32
    }

    /// Recognizes the single-rule comparison gadget and registers the
    /// three cuts; leaves the engine unchanged on any mismatch.
    fn install_prunes(&mut self) {
        let [rule] = self.trs.rules() else { return };
        let Term::App(_, largs) = rule.lhs() else { return };
        let Term::App(_, rargs) = rule.rhs() else { return };
        if largs.len() != 4 || rargs.len() != 4 {
            return;
        }
        let (Term::Var(y1), Term::Var(y2)) = (&largs[0], &largs[1]) else { return };
        let Term::App(a, spine_l) = &largs[2] else { return };
        let Term::App(o, o_args) = &largs[3] else { return };
        if spine_l.len() != 2 || !o_args.is_empty() {
            return;
        }
        let Term::Var(y3) = &spine_l[1] else { return };
        if y1 == y2 || y1 == y3 || y2 == y3 {
            return;
        }

        let wrap_ok = |t: &Term, var: VarId, var_first: bool| -> Option<SymId> {
            let Term::App(a2, args) = t else { return None };
            if args.len() != 2 {
                return None;
            }
            let (v_slot, z_slot) = if var_first { (&args[0], &args[1]) } else { (&args[1], &args[0]) };
            let Term::Var(got) = v_slot else { return None };
            let Term::App(z, z_args) = z_slot else { return None };
            if *got != var || !z_args.is_empty() {
                return None;
            }
            (*a2 == *a).then_some(*z)
        };
        let Some(z) = wrap_ok(&rargs[0], *y1, true) else { return };
        if wrap_ok(&rargs[1], *y2, false) != Some(z) {
            return;
        }
        let Term::App(a3, spine_r) = &rargs[2] else { return };
        if *a3 != *a || spine_r.len() != 2 {
            return;
        }
        let Term::Var(y3b) = &spine_r[1] else { return };
        let Term::App(z2, z2_args) = &rargs[3] else { return };
        if *y3b != *y3 || *z2 != z || !z2_args.is_empty() {
            return;
        }
        for spine in [&spine_l[0], &spine_r[0]] {
            let mut only_y3 = true;
            spine.visit_vars(&mut |v| only_y3 &= v == *y3);
            if !only_y3 {
                return;
            }
        }
        if *o == z {
            return;
        }

        let (lhs_root, rhs_root) = self.rule_roots[0];
        let lhs_spine = self.kids[(self.nodes[lhs_root as usize].kids_at + 2) as usize];
        let rhs_spine = self.kids[(self.nodes[rhs_root as usize].kids_at + 2) as usize];
        let spine_stage = self.nodes[lhs_spine as usize]
            .ready
            .max(self.nodes[rhs_spine as usize].ready) as usize;
        let a_stage = self.stage_of[*a].expect("occurs");
        let last = self.stage_syms.len() - 1;
        let const_stage = (last > 0
            && self.root_children_ready_by(lhs_root, last - 1)
            && self.root_children_ready_by(rhs_root, last - 1))
        .then_some(last - 1);

        let mut prunes = Prunes {
            a_stage,
            lhs_spine,
            rhs_spine,
            spine_lane: *y3 + 1,
            spine_stage,
            lhs_root,
            rhs_root,
            const_stage,
            block: None,
        };
        prunes.block = self.build_spine_block(&prunes);
        self.prunes = Some(prunes);
    }

    fn root_children_ready_by(&self, root: u32, stage: usize) -> bool {
        let node = &self.nodes[root as usize];
        (0..node.nkids).all(|j| {
            let kid = self.kids[(node.kids_at + j) as usize];
            self.nodes[kid as usize].ready as usize <= stage
        })
    }

    /// Precomputes cut 2 for every combination of argument coefficients
    /// of the unary stages between the pairing stage and the spine stage.
    /// Possible only when every stage up to the spine stage has arity ≤ 1
    /// apart from the pairing symbol itself, whose argument coefficients
    /// cut 1 pins to 1. Constant coefficients provably never influence
    /// the compared lanes, so they are held at 0 here.
    fn build_spine_block(&mut self, prunes: &Prunes) -> Option<SpineBlock> {
        let sig = self.trs.signature();
        let mut stages = Vec::new();
        for stage in 0..=prunes.spine_stage {
            let arity = sig.arity(self.stage_syms[stage]);
            if stage == prunes.a_stage {
                if arity != 2 {
                    return None;
                }
            } else if arity == 1 {
                stages.push(stage);
            } else if arity != 0 {
                return None;
            }
        }
        let bound = self.bound as usize;
        let combos = bound.checked_pow(u32::try_from(stages.len()).ok()?)?;
        if combos > 4096 {
            return None;
        }

        // Canonical rows: constants 0 everywhere, pairing row (0, 1, 1).
        for stage in 0..=prunes.spine_stage {
            for c in self.coeffs[stage].iter_mut() {
                *c = 0;
            }
            if stage == prunes.a_stage {
                self.coeffs[stage][1] = 1;
                self.coeffs[stage][2] = 1;
            }
        }

        let mut passes = vec![false; combos];
        for (combo, slot) in passes.iter_mut().enumerate() {
            let mut rest = combo;
            for &stage in &stages {
                self.coeffs[stage][1] = (rest % bound) as i128 + 1;
                rest /= bound;
            }
            for stage in 0..=prunes.spine_stage {
                self.eval_stage(stage);
            }
            let l = self.node_lane(prunes.lhs_spine, prunes.spine_lane);
            let r = self.node_lane(prunes.rhs_spine, prunes.spine_lane);
            *slot = l >= r;
        }

        // Prefix feasibility: does any completion of the first k+1
        // block coefficients pass?
        let mut feasible = Vec::with_capacity(stages.len());
        for k in 0..stages.len() {
            let width = bound.pow(k as u32 + 1);
            let mut table = vec![false; width];
            for (combo, &pass) in passes.iter().enumerate() {
                if pass {
                    table[combo % width] = true;
                }
            }
            feasible.push(table);
        }
        Some(SpineBlock { stages, passes, feasible })
    }

    fn node_lane(&self, node: u32, lane: usize) -> i128 {
        self.vals[self.nodes[node as usize].val_at as usize + lane]
    }

    /// Runs the enumeration; `Some` holds the first full assignment whose
    /// rules all pass.
    fn run(&mut self) -> Option<Interpretation> {
        if let Some(prunes) = &self.prunes {
            if let Some(block) = &prunes.block {
                if !block.passes.iter().any(|&p| p) {
                    // Cut 2 rejects every combination, and it is a
                    // necessary condition, so the space is empty.
                    return None;
                }
            }
        }
        if !self.dfs(0) {
            return None;
        }
        Some(self.assignment())
    }

    fn dfs(&mut self, stage: usize) -> bool {
        if stage == self.stage_syms.len() {
            return true;
        }
        self.first_candidate(stage);
        loop {
            if self.candidate_admissible(stage) {
                self.eval_stage(stage);
                if self.stage_checks_pass(stage) && self.dfs(stage + 1) {
                    return true;
                }
            }
            if !self.advance_candidate(stage) {
                return false;
            }
        }
    }

    fn first_candidate(&mut self, stage: usize) {
        let row = &mut self.coeffs[stage];
        row[0] = 0;
        for c in row.iter_mut().skip(1) {
            *c = 1;
        }
    }

    /// Odometer step in lexicographic order; false when the stage's row
    /// space is exhausted.
    fn advance_candidate(&mut self, stage: usize) -> bool {
        let row = &mut self.coeffs[stage];
        for slot in (0..row.len()).rev() {
            if row[slot] < self.bound {
                row[slot] += 1;
                return true;
            }
            row[slot] = if slot == 0 { 0 } else { 1 };
        }
        false
    }

    /// Cuts that look only at the stage's own row (cuts 1 and the prefix
    /// form of 2).
    fn candidate_admissible(&self, stage: usize) -> bool {
        let Some(prunes) = &self.prunes else { return true };
        if stage == prunes.a_stage {
            let row = &self.coeffs[stage];
            if row[1] != 1 || row[2] != 1 {
                return false;
            }
        }
        if let Some(block) = &prunes.block {
            if let Some(pos) = block.stages.iter().position(|&s| s == stage) {
                let mut prefix = 0usize;
                for (k, &s) in block.stages[..=pos].iter().enumerate() {
                    prefix += (self.coeffs[s][1] as usize - 1) * (self.bound as usize).pow(k as u32);
                }
                return block.feasible[pos][prefix];
            }
        }
        true
    }

    /// Computes the value lanes of every node that becomes determined at
    /// this stage (children first: node ids ascend in build postorder).
    fn eval_stage(&mut self, stage: usize) {
        for i in 0..self.nodes_by_stage[stage].len() {
            let id = self.nodes_by_stage[stage][i] as usize;
            let node = self.nodes[id];
            let lanes = node.lanes as usize;
            let at = node.val_at as usize;
            if node.sym == VAR_NODE {
                self.vals[at..at + lanes].fill(0);
                self.vals[at + node.var as usize + 1] = 1;
                continue;
            }
            let row_stage = self.stage_of[node.sym as usize].expect("occurs");
            let (below, here) = self.vals.split_at_mut(at);
            let out = &mut here[..lanes];
            out.fill(0);
            out[0] = self.coeffs[row_stage][0];
            for j in 0..node.nkids as usize {
                let cj = self.coeffs[row_stage][j + 1];
                if cj == 0 {
                    continue;
                }
                let kid = self.kids[node.kids_at as usize + j] as usize;
                let kid_at = self.nodes[kid].val_at as usize;
                for (k, slot) in out.iter_mut().enumerate() {
                    let add = cj
                        .checked_mul(below[kid_at + k])
                        .and_then(|add| slot.checked_add(add))
                        .expect("interpretation search overflowed 128-bit arithmetic");
                    *slot = add;
                }
            }
        }
    }

    /// Rule checks that became complete at this stage, plus the value
    /// forms of cuts 2 and 3.
    fn stage_checks_pass(&self, stage: usize) -> bool {
        for &rule in &self.rules_by_stage[stage] {
            let (lhs, rhs) = self.rule_roots[rule as usize];
            let l = self.nodes[lhs as usize];
            let r = self.nodes[rhs as usize];
            let lanes = l.lanes as usize;
            let lat = l.val_at as usize;
            let rat = r.val_at as usize;
            let constant = self.vals[lat] - self.vals[rat];
            if constant < 1 {
                return false;
            }
            for lane in 1..lanes {
                if self.vals[lat + lane] < self.vals[rat + lane] {
                    return false;
                }
            }
        }
        if let Some(prunes) = &self.prunes {
            // Cut 2 (skipped when the precomputed block already filtered
            // the candidate rows).
            if prunes.block.is_none() && stage == prunes.spine_stage {
                let l = self.node_lane(prunes.lhs_spine, prunes.spine_lane);
                let r = self.node_lane(prunes.rhs_spine, prunes.spine_lane);
                if l < r {
                    return false;
                }
            }
            // Cut 3: best reachable constant over the still-free root row.
            if prunes.const_stage == Some(stage) {
                let l = self.nodes[prunes.lhs_root as usize];
                let r = self.nodes[prunes.rhs_root as usize];
                let mut best = 0i128;
                for j in 0..l.nkids as usize {
                    let lk = self.kids[l.kids_at as usize + j] as usize;
                    let rk = self.kids[r.kids_at as usize + j] as usize;
                    let d = self.vals[self.nodes[lk].val_at as usize]
                        - self.vals[self.nodes[rk].val_at as usize];
                    best += if d > 0 { self.bound * d } else { d };
                }
                if best < 1 {
                    return false;
                }
            }
        }
        true
    }

    /// The interpretation for the current rows; non-occurring symbols get
    /// the minimal monotone row x1 + … + xk.
    fn assignment(&self) -> Interpretation {
        let sig = self.trs.signature();
        let mut interp = Interpretation::new(Domain::Nat);
        for (sym, fun) in sig.iter() {
            let mut monomials = Vec::new();
            match self.stage_of[sym] {
                Some(stage) => {
                    let row = &self.coeffs[stage];
                    if row[0] != 0 {
                        monomials
                            .push(crate::poly::Monomial::constant(Rat::from_integer(row[0])));
                    }
                    for (v, &c) in row.iter().skip(1).enumerate() {
                        if c != 0 {
                            monomials
                                .push(crate::poly::Monomial::new(Rat::from_integer(c), &[(v, 1)]));
                        }
                    }
                }
                None => {
                    for v in 0..fun.arity {
                        monomials.push(crate::poly::Monomial::new(Rat::ONE, &[(v, 1)]));
                    }
                }
            }
            interp.set(&fun.name, Polynomial::from_monomials(monomials));
        }
        interp
    }
}

fn record_depths(t: &Term, depth: u32, out: &mut [Option<u32>]) {
    if let Term::App(f, args) = t {
        let slot = &mut out[*f];
        *slot = Some(slot.map_or(depth, |d| d.max(depth)));
        for arg in args.iter() {
            record_depths(arg, depth + 1, out);
        }
    }
}

/// One sign-vector branch of the reduction: the split comparison pair and
/// the witness found for it, if any.
#[derive(Clone, Debug)]
pub struct ReductionBranch {
    pub signs: SignVector,
    pub p: Polynomial,
    pub q: Polynomial,
    pub witness: Option<Witness>,
}

/// Overall outcome of a [`hilbert_pipeline`] run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    WitnessFound,
    NoneUpToBound,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::WitnessFound => write!(f, "witness found"),
            Verdict::NoneUpToBound => write!(f, "none up to bound"),
        }
    }
}

/// Full record of a reduction run: one branch per sign vector, in
/// enumeration order (−1 < 0 < +1, lexicographic).
#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub bound: u64,
    pub branches: Vec<ReductionBranch>,
    pub verdict: Verdict,
}

impl ReductionReport {
    /// The first branch with a witness, in enumeration order.
    pub fn first_witness(&self) -> Option<(&SignVector, &Witness)> {
        self.branches
            .iter()
            .find_map(|b| b.witness.as_ref().map(|w| (&b.signs, w)))
    }
}

/// Reduces root-finding for the integer polynomial `r` to 3ⁿ
/// positive-coefficient comparisons and searches each branch.
///
/// Per sign vector a⃗: scale the variables of `r` by the signs, square,
/// and split the square by coefficient sign into (P, Q) with
/// Q − P = R(a₁x₁,…)². Then R has a root with the given signs in
/// `{1..bound}ⁿ` exactly when P(v⃗) ≥ Q(v⃗) somewhere in the box, which
/// [`witness_search`] decides. Every find is re-verified against both
/// sides of that equivalence before it is reported. Branches are
/// independent and are distributed over `cfg.threads` workers; the report
/// is identical for every thread count.
pub fn hilbert_pipeline(r: &Polynomial, cfg: &SearchConfig) -> Result<ReductionReport, SearchError> {
    if !r.has_integer_coefficients() {
        return Err(precondition("R must have integer coefficients".to_string()));
    }
    let n = r.arity();
    let bound = cfg.witness_bound;

    let run_branch = |signs: SignVector| -> ReductionBranch {
        let scaled = r.scale_vars(&signs).expect("sign vector matches the arity");
        let square = scaled.mul(&scaled);
        let (p, q) = square.sign_split();
        let witness = witness_search(&p, &q, bound)
            .expect("sign split yields positive coefficients")
            .map(|w| {
                let point = w.as_point(n);
                let pv = p.evaluate(&point).expect("point covers the arity");
                let qv = q.evaluate(&point).expect("point covers the arity");
                assert!(pv >= qv, "reported witness fails the comparison it came from");
                let signed: Vec<Rat> = point
                    .iter()
                    .zip(signs.entries())
                    .map(|(&v, &s)| v * Rat::from_integer(s as i128))
                    .collect();
                let rv = r.evaluate(&signed).expect("point covers the arity");
                assert!(rv.is_zero(), "reported witness is not a root of R");
                w.with_sign_vector(signs.clone())
            });
        ReductionBranch { signs, p, q, witness }
    };

    let all_signs: Vec<SignVector> = SignVector::enumerate(n).collect();
    let threads = cfg.threads.max(1).min(all_signs.len().max(1));
    let branches: Vec<ReductionBranch> = if threads <= 1 {
        all_signs.into_iter().map(run_branch).collect()
    } else {
        // Deterministic merge: workers take disjoint contiguous chunks
        // and results are concatenated in enumeration order.
        let chunk = all_signs.len().div_ceil(threads);
        let chunks: Vec<&[SignVector]> = all_signs.chunks(chunk).collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|chunk| scope.spawn(|| chunk.iter().cloned().map(run_branch).collect::<Vec<_>>()))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("branch worker panicked"))
                .collect()
        })
    };

    let verdict = if branches.iter().any(|b| b.witness.is_some()) {
        Verdict::WitnessFound
    } else {
        Verdict::NoneUpToBound
    };
    Ok(ReductionReport { bound, branches, verdict })
}

/// The four possible outcomes of running the witness search and the
/// interpretation search side by side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossOutcome {
    BothFound,
    /// A witness exists in the box but no interpretation within the
    /// coefficient bound; not a contradiction, since no bound relates
    /// witness size to coefficient size.
    WitnessOnly,
    InterpretationOnly,
    NeitherWithinBounds,
}

impl fmt::Display for CrossOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            CrossOutcome::BothFound => "witness and interpretation found",
            CrossOutcome::WitnessOnly => "witness found, no interpretation within the bound",
            CrossOutcome::InterpretationOnly => "interpretation found, no witness within the bound",
            CrossOutcome::NeitherWithinBounds => "neither found within the bounds",
        };
        write!(f, "{}", text)
    }
}

/// Result of [`cross_check`]: both searches' findings, the witness read
/// back out of the interpretation, and the one combination the theory
/// rules out.
#[derive(Clone, Debug)]
pub struct CrossCheckReport {
    pub outcome: CrossOutcome,
    pub witness: Option<Witness>,
    pub interpretation: Option<Interpretation>,
    pub extracted: Option<Witness>,
    /// True only when an interpretation was found and its extracted
    /// witness fails P(v) >= Q(v), a combination that cannot happen if
    /// orientation and extraction are sound.
    pub inconsistent: bool,
}

/// Runs [`witness_search`] and [`linear_interp_search`] on the
/// single-rule gadget for (p, q) and compares the outcomes.
///
/// An interpretation without a witness in the box is fine (the extracted
/// entries may exceed the witness bound), and a witness without an
/// interpretation is fine (no bound relates witness size to coefficient
/// size). The one forbidden combination, an orienting interpretation
/// whose extracted witness fails the comparison, sets `inconsistent`.
pub fn cross_check(
    p: &Polynomial,
    q: &Polynomial,
    cfg: &SearchConfig,
) -> Result<CrossCheckReport, SearchError> {
    let witness = witness_search(p, q, cfg.witness_bound)?;
    let trs = build_single_rule_trs(p, q).map_err(|e| precondition(e.to_string()))?;
    let interpretation = linear_interp_search(&trs, cfg);

    let mut extracted = None;
    let mut inconsistent = false;
    if let Some(interp) = &interpretation {
        let v = extract_witness(interp).expect("search yields linear ℕ interpretations");
        let point = v.as_point(p.arity().max(q.arity()));
        let pv = p.evaluate(&point).expect("point covers the arity");
        let qv = q.evaluate(&point).expect("point covers the arity");
        inconsistent = pv < qv;
        extracted = Some(v);
    }

    let outcome = match (&witness, &interpretation) {
        (Some(_), Some(_)) => CrossOutcome::BothFound,
        (Some(_), None) => CrossOutcome::WitnessOnly,
        (None, Some(_)) => CrossOutcome::InterpretationOnly,
        (None, None) => CrossOutcome::NeitherWithinBounds,
    };
    Ok(CrossCheckReport { outcome, witness, interpretation, extracted, inconsistent })
}
