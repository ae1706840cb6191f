//! The base function of the component-wise recursion: enumerating the
//! preferred labellings of a framework in a context set.
//!
//! Complete labellings in the context are encoded propositionally (one
//! in/out/undec variable triple per argument) and the preferred ones are
//! found as the models with subset-maximal in-sets: take any model, grow
//! it while a strictly larger in-set exists, record it, then block every
//! model whose in-set is a subset of it and repeat until unsatisfiable.

use std::collections::HashMap;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::framework::{ArgId, ArgSet, ArgumentationFramework};
use crate::labelling::{Label, Labelling, LabellingSet};
use crate::sat::{BacktrackSolver, ConstraintOracle, Lit, Var};

/// Propositional encoding whose models are exactly the complete labellings
/// of a framework in a context.
pub struct CompleteEncoding {
    args: Vec<ArgId>,
    slot_of: HashMap<ArgId, usize>,
    clauses: Vec<Vec<Lit>>,
    branch_order: Vec<Var>,
    context: ArgSet,
}

impl CompleteEncoding {
    fn var_in(slot: usize) -> Var {
        (3 * slot) as Var
    }

    fn var_out(slot: usize) -> Var {
        (3 * slot + 1) as Var
    }

    fn var_undec(slot: usize) -> Var {
        (3 * slot + 2) as Var
    }

    pub fn num_vars(&self) -> usize {
        3 * self.args.len()
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn context(&self) -> &ArgSet {
        &self.context
    }

    /// Positive literal for "this argument is labelled in".
    pub fn in_lit(&self, id: ArgId) -> Lit {
        Lit::positive(Self::var_in(self.slot_of[&id]))
    }

    pub fn branch_order(&self) -> &[Var] {
        &self.branch_order
    }

    /// Reads the labelling out of a satisfied oracle.
    pub fn decode<O: ConstraintOracle>(&self, oracle: &O) -> Result<Labelling> {
        let mut lab = Labelling::new();
        for (slot, &id) in self.args.iter().enumerate() {
            let label = match (
                oracle.value(Self::var_in(slot)),
                oracle.value(Self::var_out(slot)),
                oracle.value(Self::var_undec(slot)),
            ) {
                (true, false, false) => Label::In,
                (false, true, false) => Label::Out,
                (false, false, true) => Label::Undec,
                other => {
                    return Err(Error::Internal(format!(
                        "model violates the one-label-per-argument constraint: {other:?}"
                    )))
                }
            };
            lab.set(id, label);
        }
        Ok(lab)
    }

    /// DIMACS CNF rendering of the clause set, one zero-terminated clause
    /// per line, for cross-checking with external tools.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "p cnf {} {}\n",
            self.num_vars(),
            self.clauses.len()
        ));
        for clause in &self.clauses {
            for lit in clause {
                out.push_str(&lit.to_dimacs().to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Builds the clause set: per argument, exactly one label; `in` iff the
/// argument is in the context and all its attackers are `out`; `out` iff
/// some attacker is `in`.
pub fn encode_complete_in(
    af: &ArgumentationFramework,
    c: &ArgSet,
) -> Result<CompleteEncoding> {
    af.check_subset(c)?;
    let args: Vec<ArgId> = af.arguments().iter().collect();
    let slot_of: HashMap<ArgId, usize> =
        args.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let mut clauses: Vec<Vec<Lit>> = Vec::new();

    for (slot, &a) in args.iter().enumerate() {
        let in_a = Lit::positive(CompleteEncoding::var_in(slot));
        let out_a = Lit::positive(CompleteEncoding::var_out(slot));
        let undec_a = Lit::positive(CompleteEncoding::var_undec(slot));

        clauses.push(vec![in_a, out_a, undec_a]);
        clauses.push(vec![in_a.negated(), out_a.negated()]);
        clauses.push(vec![in_a.negated(), undec_a.negated()]);
        clauses.push(vec![out_a.negated(), undec_a.negated()]);

        let attackers = af.attackers(a);

        if c.contains(a) {
            let mut all_out_implies_in = vec![in_a];
            for &b in attackers {
                let out_b = Lit::positive(CompleteEncoding::var_out(slot_of[&b]));
                clauses.push(vec![in_a.negated(), out_b]);
                all_out_implies_in.push(out_b.negated());
            }
            clauses.push(all_out_implies_in);
        } else {
            clauses.push(vec![in_a.negated()]);
        }

        if attackers.is_empty() {
            clauses.push(vec![out_a.negated()]);
        } else {
            let mut out_implies_attacker_in = vec![out_a.negated()];
            for &b in attackers {
                let in_b = Lit::positive(CompleteEncoding::var_in(slot_of[&b]));
                clauses.push(vec![in_b.negated(), out_a]);
                out_implies_attacker_in.push(in_b);
            }
            clauses.push(out_implies_attacker_in);
        }
    }

    // Branch on heavily attacked arguments first; ties break on id.
    let mut by_indegree: Vec<usize> = (0..args.len()).collect();
    by_indegree.sort_by_key(|&slot| {
        (
            std::cmp::Reverse(af.attackers(args[slot]).len()),
            args[slot],
        )
    });
    let mut branch_order = Vec::with_capacity(3 * args.len());
    for slot in by_indegree {
        branch_order.push(CompleteEncoding::var_in(slot));
        branch_order.push(CompleteEncoding::var_out(slot));
        branch_order.push(CompleteEncoding::var_undec(slot));
    }

    Ok(CompleteEncoding {
        args,
        slot_of,
        clauses,
        branch_order,
        context: c.clone(),
    })
}

/// Enumerates the labellings with subset-maximal in-sets among the complete
/// labellings of `af` in `c`. At least one labelling always exists.
pub fn base_preferred(
    af: &ArgumentationFramework,
    c: &ArgSet,
    budget: &Budget,
) -> Result<LabellingSet> {
    base_preferred_with::<BacktrackSolver>(af, c, budget)
}

/// As [`base_preferred`], with a caller-chosen satisfiability engine.
pub fn base_preferred_with<O: ConstraintOracle>(
    af: &ArgumentationFramework,
    c: &ArgSet,
    budget: &Budget,
) -> Result<LabellingSet> {
    let enc = encode_complete_in(af, c)?;
    let mut oracle = O::new(enc.num_vars(), budget.clone());
    for clause in enc.clauses() {
        oracle.add_clause(clause);
    }
    oracle.set_branch_hint(enc.branch_order());

    let mut results = LabellingSet::new();
    let mut assumptions: Vec<Lit> = Vec::new();
    let mut growing: Option<Labelling> = None;

    loop {
        budget.check()?;
        if oracle.solve(&assumptions)? {
            let lab = enc.decode(&oracle)?;
            let in_set = lab.in_set();
            // Exclude every model whose in-set is a subset of this one;
            // under the keep-the-in-set assumptions the same clause forces
            // strict growth.
            let block: Vec<Lit> = enc
                .args
                .iter()
                .filter(|id| !in_set.contains(**id))
                .map(|&id| enc.in_lit(id))
                .collect();
            oracle.add_clause(&block);
            assumptions = in_set.iter().map(|id| enc.in_lit(id)).collect();
            growing = Some(lab);
        } else if let Some(lab) = growing.take() {
            results.insert(lab);
            assumptions.clear();
        } else {
            break;
        }
    }

    if results.is_empty() {
        return Err(Error::Internal(format!(
            "no complete labelling found, which contradicts existence: {af:?}"
        )));
    }
    Ok(results)
}
