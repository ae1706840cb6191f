//! A small propositional constraint engine: unit propagation over watched
//! literals with chronological backtracking, incremental clause addition
//! and solving under assumptions.
//!
//! The [`ConstraintOracle`] trait is the seam for swapping in an external
//! satisfiability engine; everything above it only asserts clauses, asks
//! for a model under assumptions, and reads values back.

use crate::budget::Budget;
use crate::error::{Error, Result};

pub type Var = u32;

/// A literal, packed as `var << 1 | negated`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn positive(var: Var) -> Lit {
        Lit(var << 1)
    }

    pub fn negative(var: Var) -> Lit {
        Lit(var << 1 | 1)
    }

    pub fn var(self) -> Var {
        self.0 >> 1
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn negated(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    fn code(self) -> usize {
        self.0 as usize
    }

    /// DIMACS-style signed integer (variables are 1-based).
    pub fn to_dimacs(self) -> i64 {
        let v = (self.var() + 1) as i64;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }
}

impl std::fmt::Debug for Lit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// Incremental satisfiability interface used by the maximal-model search.
pub trait ConstraintOracle {
    fn new(num_vars: usize, budget: Budget) -> Self
    where
        Self: Sized;

    /// Asserts a clause (a disjunction of literals).
    fn add_clause(&mut self, lits: &[Lit]);

    /// Solves under the given assumption literals. `Ok(true)` means a model
    /// was found and can be read through [`ConstraintOracle::value`].
    fn solve(&mut self, assumptions: &[Lit]) -> Result<bool>;

    /// Value of `var` in the most recent model.
    fn value(&self, var: Var) -> bool;

    /// Optional static branching-order hint; engines without one ignore it.
    fn set_branch_hint(&mut self, _order: &[Var]) {}
}

const UNASSIGNED: i8 = 0;
const TRUE: i8 = 1;
const FALSE: i8 = -1;

/// Chronological-backtracking DPLL with two watched literals per clause.
pub struct BacktrackSolver {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<u32>>,
    assign: Vec<i8>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    decisions: Vec<(Lit, bool)>,
    prop_head: usize,
    branch_order: Vec<Var>,
    root_conflict: bool,
    model: Vec<bool>,
    budget: Budget,
    steps: u64,
}

impl BacktrackSolver {
    /// Overrides the default ascending branching order.
    pub fn set_branch_order(&mut self, order: Vec<Var>) {
        debug_assert_eq!(order.len(), self.num_vars);
        self.branch_order = order;
    }

    fn lit_value(&self, lit: Lit) -> i8 {
        let v = self.assign[lit.var() as usize];
        if lit.is_positive() {
            v
        } else {
            -v
        }
    }

    fn enqueue(&mut self, lit: Lit) {
        debug_assert_eq!(self.lit_value(lit), UNASSIGNED);
        self.assign[lit.var() as usize] = if lit.is_positive() { TRUE } else { FALSE };
        self.trail.push(lit);
    }

    fn decide(&mut self, lit: Lit, flipped: bool) {
        self.trail_lim.push(self.trail.len());
        self.decisions.push((lit, flipped));
        self.enqueue(lit);
    }

    fn backtrack_one_level(&mut self) {
        let mark = self.trail_lim.pop().expect("no decision level to pop");
        self.decisions.pop();
        while self.trail.len() > mark {
            let lit = self.trail.pop().unwrap();
            self.assign[lit.var() as usize] = UNASSIGNED;
        }
        self.prop_head = self.trail.len();
    }

    fn backtrack_to_root(&mut self) {
        while !self.trail_lim.is_empty() {
            self.backtrack_one_level();
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps & 0xFFF == 1 {
            self.budget.check()?;
        }
        Ok(())
    }

    /// Propagates until fixpoint; returns false on conflict.
    fn propagate(&mut self) -> Result<bool> {
        while self.prop_head < self.trail.len() {
            self.tick()?;
            let p = self.trail[self.prop_head];
            self.prop_head += 1;
            let falsified = p.negated();
            let mut i = 0;
            'watchers: while i < self.watches[falsified.code()].len() {
                let ci = self.watches[falsified.code()][i] as usize;
                if self.clauses[ci][0] == falsified {
                    self.clauses[ci].swap(0, 1);
                }
                let first = self.clauses[ci][0];
                if self.lit_value(first) == TRUE {
                    i += 1;
                    continue;
                }
                for k in 2..self.clauses[ci].len() {
                    if self.lit_value(self.clauses[ci][k]) != FALSE {
                        self.clauses[ci].swap(1, k);
                        let new_watch = self.clauses[ci][1];
                        self.watches[new_watch.code()].push(ci as u32);
                        self.watches[falsified.code()].swap_remove(i);
                        continue 'watchers;
                    }
                }
                if self.lit_value(first) == FALSE {
                    return Ok(false);
                }
                self.enqueue(first);
                i += 1;
            }
        }
        Ok(true)
    }

    fn next_unassigned(&self) -> Option<Var> {
        self.branch_order
            .iter()
            .copied()
            .find(|&v| self.assign[v as usize] == UNASSIGNED)
    }

    /// On conflict, flips the deepest not-yet-flipped decision above the
    /// assumption levels. Returns false when no decision remains.
    fn resolve_conflict(&mut self, base_level: usize) -> bool {
        loop {
            if self.trail_lim.len() <= base_level {
                return false;
            }
            let (lit, flipped) = *self.decisions.last().expect("decision per level");
            self.backtrack_one_level();
            if !flipped {
                self.decide(lit.negated(), true);
                return true;
            }
        }
    }
}

impl ConstraintOracle for BacktrackSolver {
    fn new(num_vars: usize, budget: Budget) -> Self {
        BacktrackSolver {
            num_vars,
            clauses: Vec::new(),
            watches: vec![Vec::new(); num_vars * 2],
            assign: vec![UNASSIGNED; num_vars],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            decisions: Vec::new(),
            prop_head: 0,
            branch_order: (0..num_vars as Var).collect(),
            root_conflict: false,
            model: Vec::new(),
            budget,
            steps: 0,
        }
    }

    fn add_clause(&mut self, lits: &[Lit]) {
        self.backtrack_to_root();
        if self.root_conflict {
            return;
        }

        // Simplify against the permanent root-level assignment.
        let mut clause: Vec<Lit> = Vec::with_capacity(lits.len());
        for &lit in lits {
            debug_assert!((lit.var() as usize) < self.num_vars);
            match self.lit_value(lit) {
                TRUE => return,
                FALSE => continue,
                _ => {
                    if clause.contains(&lit.negated()) {
                        return;
                    }
                    if !clause.contains(&lit) {
                        clause.push(lit);
                    }
                }
            }
        }

        match clause.len() {
            0 => self.root_conflict = true,
            1 => self.enqueue(clause[0]),
            _ => {
                let ci = self.clauses.len() as u32;
                self.watches[clause[0].code()].push(ci);
                self.watches[clause[1].code()].push(ci);
                self.clauses.push(clause);
            }
        }
    }

    fn solve(&mut self, assumptions: &[Lit]) -> Result<bool> {
        self.backtrack_to_root();
        if self.root_conflict {
            return Ok(false);
        }
        if !self.propagate()? {
            self.root_conflict = true;
            return Ok(false);
        }

        for &a in assumptions {
            match self.lit_value(a) {
                TRUE => continue,
                FALSE => {
                    self.backtrack_to_root();
                    return Ok(false);
                }
                _ => {
                    self.decide(a, true);
                    if !self.propagate()? {
                        self.backtrack_to_root();
                        return Ok(false);
                    }
                }
            }
        }
        let base_level = self.trail_lim.len();

        loop {
            self.tick()?;
            match self.next_unassigned() {
                None => {
                    self.model = self.assign.iter().map(|&v| v == TRUE).collect();
                    self.backtrack_to_root();
                    return Ok(true);
                }
                Some(var) => {
                    self.decide(Lit::positive(var), false);
                    while !self.propagate()? {
                        if !self.resolve_conflict(base_level) {
                            self.backtrack_to_root();
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }

    fn value(&self, var: Var) -> bool {
        self.model[var as usize]
    }

    fn set_branch_hint(&mut self, order: &[Var]) {
        self.set_branch_order(order.to_vec());
    }
}
