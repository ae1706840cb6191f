//! Grounded labelling in a context, by worklist fixpoint propagation.

use std::collections::{HashMap, VecDeque};

use crate::error::Result;
use crate::framework::{ArgId, ArgSet, ArgumentationFramework};
use crate::labelling::{Label, Labelling};

/// The decided in/out prefix of the grounded labelling plus the residue it
/// leaves undecided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundedOutcome {
    pub decided: Labelling,
    pub undecided: ArgSet,
}

/// Least fixpoint of: label `in` any member of `c` whose attackers are all
/// `out`; label `out` anything attacked by an `in` argument. Arguments
/// outside `c` can become `out` but never `in`.
///
/// Linear-time worklist: each argument keeps a count of attackers not yet
/// labelled `out`; an argument whose count hits zero is ready to go `in`
/// (if permitted by `c`).
pub fn grounded_in(af: &ArgumentationFramework, c: &ArgSet) -> Result<GroundedOutcome> {
    af.check_subset(c)?;

    let mut label: HashMap<ArgId, Label> = HashMap::new();
    let mut pending: HashMap<ArgId, usize> = HashMap::new();
    let mut queue: VecDeque<ArgId> = VecDeque::new();

    for a in af.arguments().iter() {
        let count = af.attackers(a).len();
        pending.insert(a, count);
        if count == 0 && c.contains(a) {
            label.insert(a, Label::In);
            queue.push_back(a);
        }
    }

    while let Some(x) = queue.pop_front() {
        match label[&x] {
            Label::In => {
                for &t in af.targets(x) {
                    if !label.contains_key(&t) {
                        label.insert(t, Label::Out);
                        queue.push_back(t);
                    }
                }
            }
            Label::Out => {
                for &t in af.targets(x) {
                    let count = pending.get_mut(&t).expect("target tracked");
                    *count -= 1;
                    if *count == 0 && c.contains(t) && !label.contains_key(&t) {
                        label.insert(t, Label::In);
                        queue.push_back(t);
                    }
                }
            }
            Label::Undec => unreachable!("worklist only carries decided arguments"),
        }
    }

    let mut decided = Labelling::new();
    let mut undecided = ArgSet::new();
    for a in af.arguments().iter() {
        match label.get(&a) {
            Some(&l) => decided.set(a, l),
            None => {
                undecided.insert(a);
            }
        }
    }
    Ok(GroundedOutcome { decided, undecided })
}
