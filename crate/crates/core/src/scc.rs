//! Strongly connected components and their arrangement into dependency
//! levels.
//!
//! The level list is a longest-path layering of the condensation: a
//! component's level is one past the deepest level among the components
//! attacking it. That satisfies both constraints the engine relies on —
//! attackers strictly earlier, targets strictly later — so components that
//! share a level never influence each other.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::framework::{ArgId, ArgSet, ArgumentationFramework};

/// A partition of a framework's arguments into maximal strongly connected
/// components. Components are sorted by their smallest argument id, which
/// keeps scheduling deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccPartition {
    components: Vec<ArgSet>,
    component_of: HashMap<ArgId, usize>,
}

impl SccPartition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[ArgSet] {
        &self.components
    }

    pub fn component(&self, idx: usize) -> &ArgSet {
        &self.components[idx]
    }

    pub fn component_of(&self, id: ArgId) -> Option<usize> {
        self.component_of.get(&id).copied()
    }
}

/// Tarjan's algorithm with an explicit frame stack; benchmark graphs are
/// deep enough to overflow the call stack otherwise.
pub fn compute_sccs(af: &ArgumentationFramework) -> SccPartition {
    let order: Vec<ArgId> = af.arguments().iter().collect();
    let n = order.len();
    let pos: HashMap<ArgId, usize> = order.iter().enumerate().map(|(i, &id)| (id, i)).collect();

    const UNSET: usize = usize::MAX;
    let mut index = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut frames: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0usize;
    let mut raw: Vec<Vec<usize>> = Vec::new();

    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        frames.push((root, 0));

        while let Some(top) = frames.last_mut() {
            let v = top.0;
            let targets = af.targets(order[v]);
            if top.1 < targets.len() {
                let w = pos[&targets[top.1]];
                top.1 += 1;
                if index[w] == UNSET {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("scc stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    raw.push(comp);
                }
                if let Some(parent) = frames.last_mut() {
                    let p = parent.0;
                    low[p] = low[p].min(low[v]);
                }
            }
        }
    }

    let mut components: Vec<ArgSet> = raw
        .into_iter()
        .map(|comp| comp.into_iter().map(|p| order[p]).collect())
        .collect();
    components.sort_by_key(|c| c.first().expect("components are nonempty"));
    let mut component_of = HashMap::new();
    for (idx, comp) in components.iter().enumerate() {
        for id in comp.iter() {
            component_of.insert(id, idx);
        }
    }
    SccPartition {
        components,
        component_of,
    }
}

/// Component indices grouped into dependency levels; level `i` components
/// are attacked only from levels before `i` and attack only levels after.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelList {
    levels: Vec<Vec<usize>>,
}

impl LevelList {
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn level(&self, i: usize) -> &[usize] {
        &self.levels[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.levels.iter().map(Vec::as_slice)
    }

    pub fn component_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }
}

pub fn build_level_list(
    af: &ArgumentationFramework,
    partition: &SccPartition,
) -> Result<LevelList> {
    let k = partition.len();
    let mut succs: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut indegree = vec![0usize; k];
    {
        let mut seen: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
        for (src, dst) in af.attacks() {
            let cs = partition
                .component_of(src)
                .ok_or_else(|| Error::Internal("attack source outside partition".into()))?;
            let cd = partition
                .component_of(dst)
                .ok_or_else(|| Error::Internal("attack target outside partition".into()))?;
            if cs != cd && seen.insert((cs, cd)) {
                succs[cs].push(cd);
                indegree[cd] += 1;
            }
        }
    }

    let mut level = vec![1usize; k];
    let mut ready: Vec<usize> = (0..k).filter(|&c| indegree[c] == 0).collect();
    let mut processed = 0usize;
    while let Some(c) = ready.pop() {
        processed += 1;
        for &d in &succs[c] {
            level[d] = level[d].max(level[c] + 1);
            indegree[d] -= 1;
            if indegree[d] == 0 {
                ready.push(d);
            }
        }
    }
    if processed != k {
        return Err(Error::Internal(
            "condensation graph contains a cycle".into(),
        ));
    }

    let depth = level.iter().copied().max().unwrap_or(0);
    let mut levels: Vec<Vec<usize>> = vec![Vec::new(); depth];
    for (c, &l) in level.iter().enumerate() {
        levels[l - 1].push(c);
    }
    // Component indices ascend with smallest member id, so a plain sort
    // gives the deterministic within-level order.
    for bucket in &mut levels {
        bucket.sort_unstable();
    }
    Ok(LevelList { levels })
}
