//! Exhaustive reference enumeration of complete, grounded and preferred
//! extensions in a context set.
//!
//! Everything here is deliberately brute force: candidates are enumerated
//! as bitmasks and checked against the defining conditions one by one,
//! using only the framework predicates. This module is the ground truth
//! the engines are tested against, so it shares no code with them.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::framework::{ArgId, ArgSet, ArgumentationFramework};

/// Largest framework the oracle will accept: 2^16 candidate subsets.
pub const DEFAULT_BOUND: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleSemantics {
    Complete,
    Grounded,
    Preferred,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OracleResult {
    pub extensions: BTreeSet<ArgSet>,
    pub semantics: OracleSemantics,
    pub context: ArgSet,
}

fn check_bound(af: &ArgumentationFramework, bound: usize) -> Result<()> {
    if af.len() > bound {
        return Err(Error::OracleBoundExceeded {
            arguments: af.len(),
            bound,
        });
    }
    Ok(())
}

/// Is `e` a complete extension of `af` in `c`? Per definition: admissible,
/// within `c`, and containing every member of `c` acceptable w.r.t. `e`.
fn is_complete_in(af: &ArgumentationFramework, c: &ArgSet, e: &ArgSet) -> Result<bool> {
    if !af.is_admissible(e)? {
        return Ok(false);
    }
    for a in c.iter() {
        if !e.contains(a) && af.is_acceptable(a, e)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All complete extensions of `af` in `c`, by enumerating every subset of
/// `c` in ascending bitmask order.
pub fn complete_in_bounded(
    af: &ArgumentationFramework,
    c: &ArgSet,
    bound: usize,
) -> Result<OracleResult> {
    check_bound(af, bound)?;
    let members: Vec<ArgId> = c.iter().collect();
    let mut extensions = BTreeSet::new();
    for mask in 0u64..(1u64 << members.len()) {
        let e: ArgSet = members
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask & (1 << bit) != 0)
            .map(|(_, &id)| id)
            .collect();
        if is_complete_in(af, c, &e)? {
            extensions.insert(e);
        }
    }
    Ok(OracleResult {
        extensions,
        semantics: OracleSemantics::Complete,
        context: c.clone(),
    })
}

pub fn complete_in(af: &ArgumentationFramework, c: &ArgSet) -> Result<OracleResult> {
    complete_in_bounded(af, c, DEFAULT_BOUND)
}

/// The unique least complete extension of `af` in `c`.
pub fn grounded_in_bounded(
    af: &ArgumentationFramework,
    c: &ArgSet,
    bound: usize,
) -> Result<OracleResult> {
    let complete = complete_in_bounded(af, c, bound)?;
    let least = complete
        .extensions
        .iter()
        .find(|e| complete.extensions.iter().all(|other| e.is_subset(other)))
        .cloned()
        .ok_or_else(|| Error::Internal("no least complete extension exists".into()))?;
    let mut extensions = BTreeSet::new();
    extensions.insert(least);
    Ok(OracleResult {
        extensions,
        semantics: OracleSemantics::Grounded,
        context: c.clone(),
    })
}

pub fn grounded_in(af: &ArgumentationFramework, c: &ArgSet) -> Result<OracleResult> {
    grounded_in_bounded(af, c, DEFAULT_BOUND)
}

/// The maximal complete extensions of `af` in `c`.
pub fn preferred_in_bounded(
    af: &ArgumentationFramework,
    c: &ArgSet,
    bound: usize,
) -> Result<OracleResult> {
    let complete = complete_in_bounded(af, c, bound)?;
    let extensions: BTreeSet<ArgSet> = complete
        .extensions
        .iter()
        .filter(|e| {
            complete
                .extensions
                .iter()
                .all(|other| !(e.is_subset(other) && *e != other))
        })
        .cloned()
        .collect();
    Ok(OracleResult {
        extensions,
        semantics: OracleSemantics::Preferred,
        context: c.clone(),
    })
}

pub fn preferred_in(af: &ArgumentationFramework, c: &ArgSet) -> Result<OracleResult> {
    preferred_in_bounded(af, c, DEFAULT_BOUND)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(af: &ArgumentationFramework, result: &OracleResult) -> BTreeSet<Vec<String>> {
        result.extensions.iter().map(|e| af.names_of(e)).collect()
    }

    fn set_of(items: &[&[&str]]) -> BTreeSet<Vec<String>> {
        items
            .iter()
            .map(|e| e.iter().map(|s| s.to_string()).collect())
            .collect()
    }

    #[test]
    fn complete_mutual_attack_full_context() {
        let af = ArgumentationFramework::from_parts(&["a", "b"], &[("a", "b"), ("b", "a")])
            .unwrap();
        let r = complete_in(&af, af.arguments()).unwrap();
        assert_eq!(names(&af, &r), set_of(&[&[], &["a"], &["b"]]));
    }

    #[test]
    fn complete_isolated_argument_is_forced_in() {
        let af = ArgumentationFramework::from_parts(&["a"], &[]).unwrap();
        let r = complete_in(&af, af.arguments()).unwrap();
        assert_eq!(names(&af, &r), set_of(&[&["a"]]));
    }

    #[test]
    fn complete_mutual_attack_restricted_context() {
        let af = ArgumentationFramework::from_parts(&["a", "b"], &[("a", "b"), ("b", "a")])
            .unwrap();
        let c = af.set_of_names(&["a"]).unwrap();
        let r = complete_in(&af, &c).unwrap();
        assert_eq!(names(&af, &r), set_of(&[&[], &["a"]]));
    }

    #[test]
    fn grounded_chain() {
        let af =
            ArgumentationFramework::from_parts(&["a", "b", "c"], &[("a", "b"), ("b", "c")])
                .unwrap();
        let r = grounded_in(&af, af.arguments()).unwrap();
        assert_eq!(names(&af, &r), set_of(&[&["a", "c"]]));
    }

    #[test]
    fn grounded_mutual_attack_is_empty() {
        let af = ArgumentationFramework::from_parts(&["a", "b"], &[("a", "b"), ("b", "a")])
            .unwrap();
        let r = grounded_in(&af, af.arguments()).unwrap();
        assert_eq!(names(&af, &r), set_of(&[&[]]));
    }

    #[test]
    fn grounded_empty_framework() {
        let af = ArgumentationFramework::from_parts(&[], &[]).unwrap();
        let r = grounded_in(&af, af.arguments()).unwrap();
        assert_eq!(names(&af, &r), set_of(&[&[]]));
    }

    #[test]
    fn preferred_mutual_attack() {
        let af = ArgumentationFramework::from_parts(&["a", "b"], &[("a", "b"), ("b", "a")])
            .unwrap();
        let r = preferred_in(&af, af.arguments()).unwrap();
        assert_eq!(names(&af, &r), set_of(&[&["a"], &["b"]]));
    }

    #[test]
    fn preferred_three_cycle_is_empty_set_only() {
        let af = ArgumentationFramework::from_parts(
            &["a", "b", "c"],
            &[("a", "b"), ("b", "c"), ("c", "a")],
        )
        .unwrap();
        let r = preferred_in(&af, af.arguments()).unwrap();
        assert_eq!(names(&af, &r), set_of(&[&[]]));
    }

    #[test]
    fn preferred_restricted_context() {
        let af = ArgumentationFramework::from_parts(&["a", "b"], &[("a", "b"), ("b", "a")])
            .unwrap();
        let c = af.set_of_names(&["a"]).unwrap();
        let r = preferred_in(&af, &c).unwrap();
        assert_eq!(names(&af, &r), set_of(&[&["a"]]));
    }

    #[test]
    fn bound_is_enforced() {
        let args: Vec<String> = (0..17).map(|i| format!("x{i}")).collect();
        let af = ArgumentationFramework::new(args.iter(), Vec::<(&str, &str)>::new()).unwrap();
        let err = complete_in(&af, af.arguments()).unwrap_err();
        assert!(matches!(err, Error::OracleBoundExceeded { .. }));
    }

    #[test]
    fn grounded_is_subset_of_every_preferred() {
        let af = ArgumentationFramework::from_parts(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "a"), ("a", "c"), ("b", "c"), ("c", "d")],
        )
        .unwrap();
        let g = grounded_in(&af, af.arguments()).unwrap();
        let p = preferred_in(&af, af.arguments()).unwrap();
        let ground = g.extensions.iter().next().unwrap();
        for e in &p.extensions {
            assert!(ground.is_subset(e));
        }
    }
}
