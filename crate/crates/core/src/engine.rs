//! Component-wise enumeration of preferred labellings over a worker pool.
//!
//! The pipeline per invocation: compute the grounded prefix in the context,
//! restrict to the undecided residue, split the residue into SCCs arranged
//! as dependency levels, then walk the levels. Within a level every
//! (component, previously constructed labelling) pair is an independent
//! task executed on the pool; a barrier separates levels, because later
//! levels read the labels decided earlier. Each component's results are
//! folded into the running labelling set by pairwise union over disjoint
//! domains.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::base::base_preferred;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::framework::{ArgSet, ArgumentationFramework};
use crate::grounded::grounded_in;
use crate::labelling::{Label, Labelling, LabellingSet};
use crate::scc::{build_level_list, compute_sccs, LevelList, SccPartition};

#[derive(Clone, Debug)]
pub struct EngineConfig {
    /// Worker threads in the pool; 1 gives a serial run.
    pub workers: usize,
    /// Eagerly precompute every component's no-influence labellings.
    pub greedy: bool,
    pub budget: Budget,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            workers: 1,
            greedy: false,
            budget: Budget::unlimited(),
        }
    }
}

impl EngineConfig {
    pub fn with_workers(workers: usize) -> Self {
        EngineConfig {
            workers,
            ..Default::default()
        }
    }
}

/// How the labels decided in earlier levels bear on one component:
/// `externally_defeated` members are attacked by an `in` argument;
/// `externally_clean` members see only `out` external attackers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfluencePair {
    pub externally_defeated: ArgSet,
    pub externally_clean: ArgSet,
}

/// Classifies a component's members against a labelling of the previous
/// levels. Attackers inside the component are ignored by both sets.
pub fn external_influence(
    af: &ArgumentationFramework,
    component: &ArgSet,
    prior: &ArgSet,
    lab: &Labelling,
) -> InfluencePair {
    let mut defeated = ArgSet::new();
    let mut clean = ArgSet::new();
    for a in component.iter() {
        let mut any_in = false;
        let mut all_out = true;
        for &b in af.attackers(a) {
            if !prior.contains(b) {
                continue;
            }
            match lab.get(b) {
                Some(Label::In) => {
                    any_in = true;
                    all_out = false;
                    break;
                }
                Some(Label::Out) => {}
                _ => all_out = false,
            }
        }
        if any_in {
            defeated.insert(a);
        } else if all_out {
            clean.insert(a);
        }
    }
    InfluencePair {
        externally_defeated: defeated,
        externally_clean: clean,
    }
}

/// Precomputed no-external-influence labellings, one entry per component.
/// Written once before a level walk starts, then only read.
#[derive(Clone, Debug, Default)]
pub struct MemoTable {
    entries: HashMap<usize, LabellingSet>,
}

impl MemoTable {
    pub fn get(&self, component: usize) -> Option<&LabellingSet> {
        self.entries.get(&component)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Eagerly computes, in parallel, every component's preferred labellings
/// for the case where no external attacker interferes.
pub fn greedy_precompute(
    af: &ArgumentationFramework,
    partition: &SccPartition,
    levels: &LevelList,
    c: &ArgSet,
    budget: &Budget,
) -> Result<MemoTable> {
    let indices: Vec<usize> = levels.iter().flat_map(|l| l.iter().copied()).collect();
    let computed: Vec<(usize, LabellingSet)> = indices
        .into_par_iter()
        .map(|ci| {
            budget.check()?;
            let component = partition.component(ci);
            let sub = af.restrict(component)?;
            let labellings = base_preferred(&sub, &component.intersection(c), budget)?;
            Ok((ci, labellings))
        })
        .collect::<Result<_>>()?;
    Ok(MemoTable {
        entries: computed.into_iter().collect(),
    })
}

/// Per-level task results: one labelling set per (component slot, index of
/// the labelling in the level-entry snapshot).
pub struct LevelTaskTable {
    per_component: Vec<Vec<LabellingSet>>,
}

impl LevelTaskTable {
    pub fn get(&self, slot: usize, lab_index: usize) -> &LabellingSet {
        &self.per_component[slot][lab_index]
    }
}

/// All pairwise unions of two labelling sets over disjoint domains.
pub fn merge(e1: &LabellingSet, e2: &LabellingSet) -> Result<LabellingSet> {
    if let (Some(d1), Some(d2)) = (e1.domain(), e2.domain()) {
        let overlap = d1.intersection(&d2);
        if let Some(id) = overlap.first() {
            return Err(Error::OverlappingDomains(id));
        }
    }
    let mut out = LabellingSet::new();
    for l1 in e1.iter() {
        for l2 in e2.iter() {
            out.insert(l1.disjoint_union(l2)?);
        }
    }
    Ok(out)
}

/// The preferred labellings of `af`; in-sets are its preferred extensions.
pub fn preferred_labellings(
    af: &ArgumentationFramework,
    config: &EngineConfig,
) -> Result<LabellingSet> {
    preferred_in(af, &af.arguments().clone(), config)
}

/// The preferred labellings of `af` in `c`, computed on a worker pool of
/// `config.workers` threads.
pub fn preferred_in(
    af: &ArgumentationFramework,
    c: &ArgSet,
    config: &EngineConfig,
) -> Result<LabellingSet> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("failed to build worker pool: {e}")))?;
    pool.install(|| enumerate_in(af, c, config))
}

/// Recursive body; runs inside the pool installed by [`preferred_in`].
fn enumerate_in(
    af: &ArgumentationFramework,
    c: &ArgSet,
    config: &EngineConfig,
) -> Result<LabellingSet> {
    config.budget.check()?;

    let grounded = grounded_in(af, c)?;
    if grounded.undecided.is_empty() {
        return Ok(LabellingSet::singleton(grounded.decided));
    }

    let residue = af.restrict(&grounded.undecided)?;
    let partition = compute_sccs(&residue);
    let levels = build_level_list(&residue, &partition)?;
    let memo = if config.greedy {
        Some(greedy_precompute(
            &residue,
            &partition,
            &levels,
            c,
            &config.budget,
        )?)
    } else {
        None
    };

    let mut current: Vec<Labelling> = vec![grounded.decided];
    let mut prior = ArgSet::new();

    for level in levels.iter() {
        config.budget.check()?;
        let entry = current;

        // Task bag for the level: the two nested parallel loops collapse
        // into one bag, since the tasks are pairwise independent.
        let tasks: Vec<(usize, usize)> = (0..level.len())
            .flat_map(|slot| (0..entry.len()).map(move |j| (slot, j)))
            .collect();
        let mut computed: Vec<LabellingSet> = tasks
            .par_iter()
            .map(|&(slot, j)| {
                component_task(
                    &residue,
                    &partition,
                    level[slot],
                    &prior,
                    &entry[j],
                    c,
                    memo.as_ref(),
                    config,
                )
            })
            .collect::<Result<_>>()?;

        let mut per_component = Vec::with_capacity(level.len());
        for _ in 0..level.len() {
            let rest = computed.split_off(entry.len());
            per_component.push(computed);
            computed = rest;
        }
        let table = LevelTaskTable { per_component };

        // Fold the level's components into the running set, sequentially in
        // component order; within one component the fold is parallel over
        // labellings. Each labelling keeps the index of its level-entry
        // ancestor, which keys the table lookups.
        let mut fold: Vec<(Labelling, usize)> = entry
            .into_iter()
            .enumerate()
            .map(|(j, lab)| (lab, j))
            .collect();
        for slot in 0..level.len() {
            fold = fold
                .par_iter()
                .map(|(lab, j)| -> Result<Vec<(Labelling, usize)>> {
                    let parts = table.get(slot, *j);
                    debug_assert!(!parts.is_empty());
                    parts
                        .iter()
                        .map(|m| Ok((lab.disjoint_union(m)?, *j)))
                        .collect()
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
        }

        let dedup: BTreeSet<Labelling> = fold.into_iter().map(|(lab, _)| lab).collect();
        current = dedup.into_iter().collect();

        for &ci in level {
            prior.extend_from(partition.component(ci));
        }
    }

    Ok(current.into_iter().collect())
}

#[allow(clippy::too_many_arguments)]
fn component_task(
    residue: &ArgumentationFramework,
    partition: &SccPartition,
    component_index: usize,
    prior: &ArgSet,
    lab: &Labelling,
    c: &ArgSet,
    memo: Option<&MemoTable>,
    config: &EngineConfig,
) -> Result<LabellingSet> {
    config.budget.check()?;
    let component = partition.component(component_index);
    let influence = external_influence(residue, component, prior, lab);
    let defeated = influence.externally_defeated;
    let clean = influence.externally_clean;

    if clean.is_empty() {
        // Every member is attacked by an undefeated external argument:
        // defeated members go out, the rest stay undecided.
        let mut result = Labelling::new();
        for a in defeated.iter() {
            result.set(a, Label::Out);
        }
        for a in component.difference(&defeated).iter() {
            result.set(a, Label::Undec);
        }
        Ok(LabellingSet::singleton(result))
    } else if &clean == component {
        // No external interference: the memoised base case.
        match memo {
            Some(m) => Ok(m
                .get(component_index)
                .expect("memo table covers every component")
                .clone()),
            None => {
                let sub = residue.restrict(component)?;
                base_preferred(&sub, &component.intersection(c), &config.budget)
            }
        }
    } else if defeated.is_empty() {
        let sub = residue.restrict(component)?;
        base_preferred(&sub, &clean.intersection(c), &config.budget)
    } else {
        // Defeated members go out; the rest is an independent sub-problem.
        let mut outs = Labelling::new();
        for a in defeated.iter() {
            outs.set(a, Label::Out);
        }
        let survivors = component.difference(&defeated);
        let sub = residue.restrict(&survivors)?;
        let inner = enumerate_in(&sub, &clean.intersection(c), config)?;
        merge(&LabellingSet::singleton(outs), &inner)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn af(arguments: &[&str], attacks: &[(&str, &str)]) -> ArgumentationFramework {
        ArgumentationFramework::from_parts(arguments, attacks).unwrap()
    }

    fn in_sets_by_name(
        f: &ArgumentationFramework,
        result: &LabellingSet,
    ) -> BTreeSet<Vec<String>> {
        result.iter().map(|lab| f.names_of(&lab.in_set())).collect()
    }

    fn expect_names(items: &[&[&str]]) -> BTreeSet<Vec<String>> {
        items
            .iter()
            .map(|e| e.iter().map(|s| s.to_string()).collect())
            .collect()
    }

    fn run(f: &ArgumentationFramework) -> LabellingSet {
        preferred_labellings(f, &EngineConfig::default()).unwrap()
    }

    #[test]
    fn mutual_attack_has_two_labellings() {
        let f = af(&["a", "b"], &[("a", "b"), ("b", "a")]);
        let result = run(&f);
        assert_eq!(in_sets_by_name(&f, &result), expect_names(&[&["a"], &["b"]]));
    }

    #[test]
    fn chain_short_circuits_through_grounded() {
        let f = af(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let result = run(&f);
        assert_eq!(result.len(), 1);
        let lab = result.iter().next().unwrap();
        assert_eq!(lab.get(f.id_of("a").unwrap()), Some(Label::In));
        assert_eq!(lab.get(f.id_of("b").unwrap()), Some(Label::Out));
        assert_eq!(lab.get(f.id_of("c").unwrap()), Some(Label::In));
    }

    #[test]
    fn downstream_component_defeated_under_both_labellings() {
        let f = af(
            &["a", "b", "c"],
            &[("a", "b"), ("b", "a"), ("a", "c"), ("b", "c")],
        );
        let result = run(&f);
        assert_eq!(in_sets_by_name(&f, &result), expect_names(&[&["a"], &["b"]]));
        for lab in result.iter() {
            assert_eq!(lab.get(f.id_of("c").unwrap()), Some(Label::Out));
        }
    }

    #[test]
    fn four_argument_fixture() {
        let f = af(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "a"), ("a", "c"), ("b", "c"), ("c", "d")],
        );
        let result = run(&f);
        assert_eq!(
            in_sets_by_name(&f, &result),
            expect_names(&[&["a", "d"], &["b", "d"]])
        );
    }

    #[test]
    fn empty_framework_yields_one_empty_labelling() {
        let f = af(&[], &[]);
        let result = run(&f);
        assert_eq!(result.len(), 1);
        assert!(result.iter().next().unwrap().is_empty());
    }

    #[test]
    fn lone_self_attacker_is_undec() {
        let f = af(&["a"], &[("a", "a")]);
        let result = run(&f);
        assert_eq!(result.len(), 1);
        assert_eq!(
            result.iter().next().unwrap().get(f.id_of("a").unwrap()),
            Some(Label::Undec)
        );
    }

    #[test]
    fn labellings_are_total_over_all_arguments() {
        let f = af(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("b", "a"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "c")],
        );
        let result = run(&f);
        for lab in result.iter() {
            assert_eq!(lab.domain(), f.arguments().clone());
        }
    }

    #[test]
    fn external_influence_examples() {
        // No external attackers at all.
        let f = af(&["a", "b"], &[("a", "b"), ("b", "a")]);
        let s = f.arguments().clone();
        let inf = external_influence(&f, &s, &ArgSet::new(), &Labelling::new());
        assert!(inf.externally_defeated.is_empty());
        assert_eq!(inf.externally_clean, s);

        // An in-labelled prior attacker defeats its target.
        let f = af(&["a", "b", "c"], &[("a", "c")]);
        let s = f.set_of_names(&["c"]).unwrap();
        let prior = f.set_of_names(&["a", "b"]).unwrap();
        let mut lab = Labelling::new();
        lab.set(f.id_of("a").unwrap(), Label::In);
        lab.set(f.id_of("b").unwrap(), Label::Out);
        let inf = external_influence(&f, &s, &prior, &lab);
        assert_eq!(inf.externally_defeated, s);
        assert!(inf.externally_clean.is_empty());

        // An undec prior attacker keeps its target out of both sets.
        let f = af(&["b", "u", "c", "d"], &[("b", "c"), ("u", "d")]);
        let s = f.set_of_names(&["c", "d"]).unwrap();
        let prior = f.set_of_names(&["b", "u"]).unwrap();
        let mut lab = Labelling::new();
        lab.set(f.id_of("b").unwrap(), Label::Out);
        lab.set(f.id_of("u").unwrap(), Label::Undec);
        let inf = external_influence(&f, &s, &prior, &lab);
        assert!(inf.externally_defeated.is_empty());
        assert_eq!(inf.externally_clean, f.set_of_names(&["c"]).unwrap());
    }

    #[test]
    fn merge_examples() {
        let mut l = Labelling::new();
        l.set(0, Label::In);
        let mut m1 = Labelling::new();
        m1.set(1, Label::In);
        m1.set(2, Label::Out);
        let mut m2 = Labelling::new();
        m2.set(1, Label::Out);
        m2.set(2, Label::Undec);

        let e1 = LabellingSet::singleton(l.clone());
        let e2: LabellingSet = [m1.clone(), m2.clone()].into_iter().collect();
        let merged = merge(&e1, &e2).unwrap();
        assert_eq!(merged.len(), 2);
        let expected: LabellingSet = [
            l.disjoint_union(&m1).unwrap(),
            l.disjoint_union(&m2).unwrap(),
        ]
        .into_iter()
        .collect();
        assert_eq!(merged, expected);
    }

    #[test]
    fn merge_rejects_overlapping_domains() {
        let mut l = Labelling::new();
        l.set(0, Label::In);
        let e = LabellingSet::singleton(l);
        assert!(matches!(
            merge(&e, &e),
            Err(Error::OverlappingDomains(0))
        ));
    }

    #[test]
    fn merge_cardinality_is_product() {
        let mk = |id, label| {
            let mut l = Labelling::new();
            l.set(id, label);
            l
        };
        let e1: LabellingSet = [mk(0, Label::In), mk(0, Label::Undec)].into_iter().collect();
        let e2: LabellingSet = [mk(1, Label::In), mk(1, Label::Out), mk(1, Label::Undec)]
            .into_iter()
            .collect();
        assert_eq!(merge(&e1, &e2).unwrap().len(), 6);
    }

    #[test]
    fn greedy_precompute_matches_fresh_base_calls() {
        let f = af(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "a"), ("a", "c"), ("c", "d"), ("d", "c")],
        );
        let partition = compute_sccs(&f);
        let levels = build_level_list(&f, &partition).unwrap();
        let budget = Budget::unlimited();
        let memo = greedy_precompute(&f, &partition, &levels, f.arguments(), &budget).unwrap();
        assert_eq!(memo.len(), 2);
        for (idx, component) in partition.components().iter().enumerate() {
            let sub = f.restrict(component).unwrap();
            let fresh =
                base_preferred(&sub, &component.intersection(f.arguments()), &budget).unwrap();
            assert_eq!(memo.get(idx).unwrap(), &fresh);
        }
    }

    #[test]
    fn greedy_precompute_respects_context() {
        let f = af(&["a", "b"], &[("a", "b"), ("b", "a")]);
        let partition = compute_sccs(&f);
        let levels = build_level_list(&f, &partition).unwrap();
        let c = f.set_of_names(&["a"]).unwrap();
        let memo = greedy_precompute(&f, &partition, &levels, &c, &Budget::unlimited()).unwrap();
        let entry = memo.get(0).unwrap();
        assert_eq!(entry.len(), 1);
        let lab = entry.iter().next().unwrap();
        assert_eq!(lab.get(f.id_of("a").unwrap()), Some(Label::In));
        assert_eq!(lab.get(f.id_of("b").unwrap()), Some(Label::Out));
    }

    #[test]
    fn results_identical_across_workers_and_greedy() {
        let fixtures = vec![
            af(
                &["a", "b", "c", "d"],
                &[("a", "b"), ("b", "a"), ("a", "c"), ("b", "c"), ("c", "d")],
            ),
            af(
                &["a", "b", "c", "d", "e", "f"],
                &[
                    ("a", "b"),
                    ("b", "a"),
                    ("c", "d"),
                    ("d", "c"),
                    ("a", "e"),
                    ("d", "e"),
                    ("e", "f"),
                    ("f", "f"),
                ],
            ),
        ];
        for f in &fixtures {
            let baseline = run(f);
            for workers in [1, 2, 4] {
                for greedy in [false, true] {
                    let config = EngineConfig {
                        workers,
                        greedy,
                        budget: Budget::unlimited(),
                    };
                    let result = preferred_labellings(f, &config).unwrap();
                    assert_eq!(result, baseline, "workers={workers} greedy={greedy}");
                }
            }
        }
    }

    #[test]
    fn agrees_with_oracle_on_mixed_fixtures() {
        let fixtures = vec![
            af(&["a"], &[]),
            af(&["a"], &[("a", "a")]),
            af(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]),
            af(
                &["a", "b", "c", "d", "e"],
                &[("a", "b"), ("b", "a"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "c")],
            ),
            // Disconnected parts plus a self-attacker.
            af(
                &["a", "b", "x", "y", "s"],
                &[("a", "b"), ("b", "a"), ("x", "y"), ("s", "s"), ("s", "x")],
            ),
        ];
        for f in &fixtures {
            let result = run(f);
            let expected = oracle::preferred_in(f, f.arguments()).unwrap();
            assert_eq!(result.in_sets(), expected.extensions, "{f:?}");
        }
    }

    #[test]
    fn partially_defeated_component_recurses() {
        // Level-one {a, b} feeds the mutual pair {c, d}: under the labelling
        // with a in, c is defeated but d is untouched, which exercises the
        // out-then-recurse branch.
        let f = af(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "a"), ("a", "c"), ("c", "d"), ("d", "c")],
        );
        let result = run(&f);
        let expected = oracle::preferred_in(&f, f.arguments()).unwrap();
        assert_eq!(result.in_sets(), expected.extensions);
        assert_eq!(
            in_sets_by_name(&f, &result),
            expect_names(&[&["a", "d"], &["b", "c"], &["b", "d"]])
        );
    }

    #[test]
    fn timeout_budget_aborts() {
        let f = af(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "a"), ("c", "d"), ("d", "c")],
        );
        let config = EngineConfig {
            workers: 2,
            greedy: false,
            budget: Budget::with_deadline(std::time::Duration::ZERO),
        };
        assert!(matches!(
            preferred_labellings(&f, &config),
            Err(Error::Timeout)
        ));
    }
}
