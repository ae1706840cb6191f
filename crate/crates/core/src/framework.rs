//! Argumentation frameworks and the set-level attack algebra.
//!
//! Argument names are interned to dense integer ids when a framework is
//! built; every derived framework (via [`ArgumentationFramework::restrict`])
//! keeps the same id space, so labellings computed on sub-frameworks can be
//! merged without translation.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::labelling::{Label, Labelling};

pub type ArgId = u32;

const NO_NEIGHBOURS: &[ArgId] = &[];

/// An ordered set of argument ids.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArgSet {
    ids: BTreeSet<ArgId>,
}

impl ArgSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(id: ArgId) -> Self {
        let mut ids = BTreeSet::new();
        ids.insert(id);
        ArgSet { ids }
    }

    pub fn insert(&mut self, id: ArgId) -> bool {
        self.ids.insert(id)
    }

    pub fn remove(&mut self, id: ArgId) -> bool {
        self.ids.remove(&id)
    }

    pub fn contains(&self, id: ArgId) -> bool {
        self.ids.contains(&id)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn first(&self) -> Option<ArgId> {
        self.ids.iter().next().copied()
    }

    /// Ascending iteration, so every consumer sees a deterministic order.
    pub fn iter(&self) -> impl Iterator<Item = ArgId> + '_ {
        self.ids.iter().copied()
    }

    pub fn union(&self, other: &ArgSet) -> ArgSet {
        ArgSet {
            ids: self.ids.union(&other.ids).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &ArgSet) -> ArgSet {
        ArgSet {
            ids: self.ids.intersection(&other.ids).copied().collect(),
        }
    }

    pub fn difference(&self, other: &ArgSet) -> ArgSet {
        ArgSet {
            ids: self.ids.difference(&other.ids).copied().collect(),
        }
    }

    pub fn is_subset(&self, other: &ArgSet) -> bool {
        self.ids.is_subset(&other.ids)
    }

    pub fn is_disjoint(&self, other: &ArgSet) -> bool {
        self.ids.is_disjoint(&other.ids)
    }

    pub fn extend_from(&mut self, other: &ArgSet) {
        self.ids.extend(other.ids.iter().copied());
    }
}

impl FromIterator<ArgId> for ArgSet {
    fn from_iter<T: IntoIterator<Item = ArgId>>(iter: T) -> Self {
        ArgSet {
            ids: iter.into_iter().collect(),
        }
    }
}

impl fmt::Debug for ArgSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.ids.iter()).finish()
    }
}

/// An argumentation framework: a finite set of arguments plus a binary
/// attack relation. Self-attacks are permitted; the argument set may be
/// empty.
///
/// The attack relation is stored as both forward and reverse adjacency so
/// attacker and target queries cost O(degree).
#[derive(Clone)]
pub struct ArgumentationFramework {
    names: Arc<Vec<String>>,
    by_name: Arc<HashMap<String, ArgId>>,
    args: ArgSet,
    attackers_adj: HashMap<ArgId, Vec<ArgId>>,
    targets_adj: HashMap<ArgId, Vec<ArgId>>,
    attack_count: usize,
}

impl ArgumentationFramework {
    /// Builds a framework from argument names (first occurrence wins) and
    /// attacks given as name pairs. Every attack endpoint must be declared.
    pub fn new<N, A, S, T>(arguments: N, attacks: A) -> Result<Self>
    where
        N: IntoIterator<Item = S>,
        A: IntoIterator<Item = (T, T)>,
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let mut names: Vec<String> = Vec::new();
        let mut by_name: HashMap<String, ArgId> = HashMap::new();
        for name in arguments {
            let name = name.as_ref();
            if !by_name.contains_key(name) {
                by_name.insert(name.to_owned(), names.len() as ArgId);
                names.push(name.to_owned());
            }
        }

        let mut pairs: BTreeSet<(ArgId, ArgId)> = BTreeSet::new();
        for (src, dst) in attacks {
            let src_id = *by_name
                .get(src.as_ref())
                .ok_or_else(|| Error::UnknownArgument(src.as_ref().to_owned()))?;
            let dst_id = *by_name
                .get(dst.as_ref())
                .ok_or_else(|| Error::UnknownArgument(dst.as_ref().to_owned()))?;
            pairs.insert((src_id, dst_id));
        }

        let args: ArgSet = (0..names.len() as ArgId).collect();
        let mut attackers_adj: HashMap<ArgId, Vec<ArgId>> = HashMap::new();
        let mut targets_adj: HashMap<ArgId, Vec<ArgId>> = HashMap::new();
        let attack_count = pairs.len();
        for (src, dst) in pairs {
            targets_adj.entry(src).or_default().push(dst);
            attackers_adj.entry(dst).or_default().push(src);
        }
        for list in attackers_adj.values_mut().chain(targets_adj.values_mut()) {
            list.sort_unstable();
        }

        Ok(ArgumentationFramework {
            names: Arc::new(names),
            by_name: Arc::new(by_name),
            args,
            attackers_adj,
            targets_adj,
            attack_count,
        })
    }

    /// Test and fixture convenience constructor.
    pub fn from_parts(arguments: &[&str], attacks: &[(&str, &str)]) -> Result<Self> {
        Self::new(arguments.iter().copied(), attacks.iter().copied())
    }

    pub fn arguments(&self) -> &ArgSet {
        &self.args
    }

    pub fn len(&self) -> usize {
        self.args.len()
    }

    pub fn is_empty(&self) -> bool {
        self.args.is_empty()
    }

    pub fn attack_count(&self) -> usize {
        self.attack_count
    }

    pub fn contains(&self, id: ArgId) -> bool {
        self.args.contains(id)
    }

    pub fn name_of(&self, id: ArgId) -> &str {
        &self.names[id as usize]
    }

    /// Resolves a name to its id, for arguments present in this framework.
    pub fn id_of(&self, name: &str) -> Option<ArgId> {
        self.by_name
            .get(name)
            .copied()
            .filter(|id| self.args.contains(*id))
    }

    pub fn attackers(&self, id: ArgId) -> &[ArgId] {
        self.attackers_adj
            .get(&id)
            .map(Vec::as_slice)
            .unwrap_or(NO_NEIGHBOURS)
    }

    pub fn targets(&self, id: ArgId) -> &[ArgId] {
        self.targets_adj
            .get(&id)
            .map(Vec::as_slice)
            .unwrap_or(NO_NEIGHBOURS)
    }

    pub fn contains_attack(&self, src: ArgId, dst: ArgId) -> bool {
        self.targets(src).binary_search(&dst).is_ok()
    }

    /// Attacks in ascending (source, target) id order.
    pub fn attacks(&self) -> impl Iterator<Item = (ArgId, ArgId)> + '_ {
        self.args
            .iter()
            .flat_map(move |src| self.targets(src).iter().map(move |&dst| (src, dst)))
    }

    pub(crate) fn check_member(&self, id: ArgId) -> Result<()> {
        if self.args.contains(id) {
            Ok(())
        } else {
            let name = self
                .names
                .get(id as usize)
                .map(String::as_str)
                .unwrap_or("<unknown id>");
            Err(Error::UnknownArgument(name.to_owned()))
        }
    }

    pub(crate) fn check_subset(&self, s: &ArgSet) -> Result<()> {
        for id in s.iter() {
            self.check_member(id)?;
        }
        Ok(())
    }

    /// The set of arguments attacking some member of `s`.
    pub fn attackers_of(&self, s: &ArgSet) -> Result<ArgSet> {
        self.check_subset(s)?;
        let mut out = ArgSet::new();
        for a in s.iter() {
            for &b in self.attackers(a) {
                out.insert(b);
            }
        }
        Ok(out)
    }

    /// The set of arguments attacked by some member of `s`.
    pub fn attacked_by(&self, s: &ArgSet) -> Result<ArgSet> {
        self.check_subset(s)?;
        let mut out = ArgSet::new();
        for a in s.iter() {
            for &b in self.targets(a) {
                out.insert(b);
            }
        }
        Ok(out)
    }

    /// The restriction to `keep`: arguments in `keep`, attacks with both
    /// endpoints in `keep`. Ids are preserved.
    pub fn restrict(&self, keep: &ArgSet) -> Result<Self> {
        self.check_subset(keep)?;
        let mut attackers_adj: HashMap<ArgId, Vec<ArgId>> = HashMap::new();
        let mut targets_adj: HashMap<ArgId, Vec<ArgId>> = HashMap::new();
        let mut attack_count = 0;
        for a in keep.iter() {
            let kept_targets: Vec<ArgId> = self
                .targets(a)
                .iter()
                .copied()
                .filter(|t| keep.contains(*t))
                .collect();
            attack_count += kept_targets.len();
            if !kept_targets.is_empty() {
                targets_adj.insert(a, kept_targets);
            }
            let kept_attackers: Vec<ArgId> = self
                .attackers(a)
                .iter()
                .copied()
                .filter(|t| keep.contains(*t))
                .collect();
            if !kept_attackers.is_empty() {
                attackers_adj.insert(a, kept_attackers);
            }
        }
        Ok(ArgumentationFramework {
            names: Arc::clone(&self.names),
            by_name: Arc::clone(&self.by_name),
            args: keep.clone(),
            attackers_adj,
            targets_adj,
            attack_count,
        })
    }

    /// True iff no attack has both endpoints in `t`.
    pub fn is_conflict_free(&self, t: &ArgSet) -> Result<bool> {
        self.check_subset(t)?;
        for a in t.iter() {
            for &b in self.targets(a) {
                if t.contains(b) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True iff every attacker of `a` is attacked by some member of `t`.
    pub fn is_acceptable(&self, a: ArgId, t: &ArgSet) -> Result<bool> {
        self.check_member(a)?;
        self.check_subset(t)?;
        for &b in self.attackers(a) {
            let countered = self.attackers(b).iter().any(|c| t.contains(*c));
            if !countered {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Conflict-free and every member acceptable with respect to `t`.
    pub fn is_admissible(&self, t: &ArgSet) -> Result<bool> {
        if !self.is_conflict_free(t)? {
            return Ok(false);
        }
        for a in t.iter() {
            if !self.is_acceptable(a, t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The labelling corresponding to a conflict-free extension: `in` on
    /// `t`, `out` on everything `t` attacks, `undec` elsewhere. Total over
    /// this framework's arguments.
    pub fn ext_to_labelling(&self, t: &ArgSet) -> Result<Labelling> {
        self.check_subset(t)?;
        for a in t.iter() {
            for &b in self.targets(a) {
                if t.contains(b) {
                    return Err(Error::NotConflictFree {
                        attacker: self.name_of(a).to_owned(),
                        target: self.name_of(b).to_owned(),
                    });
                }
            }
        }
        let attacked = self.attacked_by(t)?;
        let mut lab = Labelling::new();
        for a in self.args.iter() {
            let label = if t.contains(a) {
                Label::In
            } else if attacked.contains(a) {
                Label::Out
            } else {
                Label::Undec
            };
            lab.set(a, label);
        }
        Ok(lab)
    }

    /// Renders a set of ids as sorted argument names, mostly for tests and
    /// diagnostics.
    pub fn names_of(&self, s: &ArgSet) -> Vec<String> {
        let mut v: Vec<String> = s.iter().map(|id| self.name_of(id).to_owned()).collect();
        v.sort();
        v
    }

    /// Looks up several names at once; fails on the first unknown one.
    pub fn set_of_names(&self, names: &[&str]) -> Result<ArgSet> {
        let mut out = ArgSet::new();
        for name in names {
            let id = self
                .id_of(name)
                .ok_or_else(|| Error::UnknownArgument((*name).to_owned()))?;
            out.insert(id);
        }
        Ok(out)
    }
}

/// Structural equality over names, independent of interning order.
impl PartialEq for ArgumentationFramework {
    fn eq(&self, other: &Self) -> bool {
        if self.args.len() != other.args.len() || self.attack_count != other.attack_count {
            return false;
        }
        let self_names: BTreeSet<&str> = self.args.iter().map(|id| self.name_of(id)).collect();
        let other_names: BTreeSet<&str> = other.args.iter().map(|id| other.name_of(id)).collect();
        if self_names != other_names {
            return false;
        }
        let self_attacks: BTreeSet<(&str, &str)> = self
            .attacks()
            .map(|(s, d)| (self.name_of(s), self.name_of(d)))
            .collect();
        let other_attacks: BTreeSet<(&str, &str)> = other
            .attacks()
            .map(|(s, d)| (other.name_of(s), other.name_of(d)))
            .collect();
        self_attacks == other_attacks
    }
}

impl Eq for ArgumentationFramework {}

impl fmt::Debug for ArgumentationFramework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArgumentationFramework")
            .field("arguments", &self.names_of(&self.args))
            .field(
                "attacks",
                &self
                    .attacks()
                    .map(|(s, d)| format!("{}->{}", self.name_of(s), self.name_of(d)))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn af(arguments: &[&str], attacks: &[(&str, &str)]) -> ArgumentationFramework {
        ArgumentationFramework::from_parts(arguments, attacks).unwrap()
    }

    #[test]
    fn attackers_of_single_edge() {
        let f = af(&["a", "b"], &[("a", "b")]);
        let s = f.set_of_names(&["b"]).unwrap();
        assert_eq!(f.names_of(&f.attackers_of(&s).unwrap()), vec!["a"]);
        let s = f.set_of_names(&["a"]).unwrap();
        assert!(f.attackers_of(&s).unwrap().is_empty());
    }

    #[test]
    fn attackers_of_mutual_plus_external() {
        let f = af(&["a", "b", "c"], &[("a", "b"), ("b", "a"), ("c", "a")]);
        let s = f.set_of_names(&["a", "b"]).unwrap();
        assert_eq!(
            f.names_of(&f.attackers_of(&s).unwrap()),
            vec!["a", "b", "c"]
        );
    }

    #[test]
    fn attacked_by_examples() {
        let f = af(&["a", "b"], &[("a", "b")]);
        let s = f.set_of_names(&["a"]).unwrap();
        assert_eq!(f.names_of(&f.attacked_by(&s).unwrap()), vec!["b"]);
        assert!(f.attacked_by(&ArgSet::new()).unwrap().is_empty());

        let f = af(&["a", "b", "c"], &[("a", "b"), ("b", "a"), ("b", "c")]);
        let s = f.set_of_names(&["b"]).unwrap();
        assert_eq!(f.names_of(&f.attacked_by(&s).unwrap()), vec!["a", "c"]);
    }

    #[test]
    fn restrict_identity() {
        let f = af(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let whole = f.restrict(f.arguments()).unwrap();
        assert_eq!(whole, f);
    }

    #[test]
    fn restrict_drops_crossing_attacks() {
        let f = af(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let keep = f.set_of_names(&["a", "c"]).unwrap();
        let sub = f.restrict(&keep).unwrap();
        assert_eq!(sub.len(), 2);
        assert_eq!(sub.attack_count(), 0);
    }

    #[test]
    fn restrict_keeps_internal_attacks() {
        let f = af(&["a", "b", "c"], &[("a", "b"), ("b", "a"), ("b", "c")]);
        let keep = f.set_of_names(&["a", "b"]).unwrap();
        let sub = f.restrict(&keep).unwrap();
        assert_eq!(sub.attack_count(), 2);
        let a = sub.id_of("a").unwrap();
        let b = sub.id_of("b").unwrap();
        assert!(sub.contains_attack(a, b));
        assert!(sub.contains_attack(b, a));
    }

    #[test]
    fn restrict_composes_as_intersection() {
        let f = af(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        );
        let i = f.set_of_names(&["a", "b", "c"]).unwrap();
        let j = f.set_of_names(&["b", "c", "d"]).unwrap();
        let twice = f.restrict(&i).unwrap().restrict(&i.intersection(&j)).unwrap();
        let once = f.restrict(&i.intersection(&j)).unwrap();
        assert_eq!(twice, once);
    }

    #[test]
    fn conflict_free_examples() {
        let f = af(&["a", "b"], &[("a", "b")]);
        let t = f.set_of_names(&["a", "b"]).unwrap();
        assert!(!f.is_conflict_free(&t).unwrap());
        assert!(f.is_conflict_free(&ArgSet::new()).unwrap());

        let f = af(&["a", "b", "c"], &[("a", "b"), ("b", "a")]);
        let t = f.set_of_names(&["a", "c"]).unwrap();
        assert!(f.is_conflict_free(&t).unwrap());
    }

    #[test]
    fn self_attacker_is_not_conflict_free() {
        let f = af(&["a"], &[("a", "a")]);
        let t = f.set_of_names(&["a"]).unwrap();
        assert!(!f.is_conflict_free(&t).unwrap());
    }

    #[test]
    fn acceptable_examples() {
        let f = af(&["a", "b", "c"], &[("b", "a"), ("c", "b")]);
        let a = f.id_of("a").unwrap();
        let t = f.set_of_names(&["c"]).unwrap();
        assert!(f.is_acceptable(a, &t).unwrap());

        let c = f.id_of("c").unwrap();
        assert!(f.is_acceptable(c, &ArgSet::new()).unwrap());

        let f = af(&["a", "b"], &[("b", "a")]);
        let a = f.id_of("a").unwrap();
        assert!(!f.is_acceptable(a, &ArgSet::new()).unwrap());
    }

    #[test]
    fn admissible_examples() {
        let f = af(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert!(f.is_admissible(&ArgSet::new()).unwrap());
        let t = f.set_of_names(&["a"]).unwrap();
        assert!(f.is_admissible(&t).unwrap());

        let f = af(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let just_c = f.set_of_names(&["c"]).unwrap();
        assert!(!f.is_admissible(&just_c).unwrap());
        let a_and_c = f.set_of_names(&["a", "c"]).unwrap();
        assert!(f.is_admissible(&a_and_c).unwrap());
    }

    #[test]
    fn ext_to_labelling_examples() {
        let f = af(&["a", "b"], &[("a", "b")]);
        let t = f.set_of_names(&["a"]).unwrap();
        let lab = f.ext_to_labelling(&t).unwrap();
        assert_eq!(lab.get(f.id_of("a").unwrap()), Some(Label::In));
        assert_eq!(lab.get(f.id_of("b").unwrap()), Some(Label::Out));

        let all_undec = f.ext_to_labelling(&ArgSet::new()).unwrap();
        assert!(all_undec.iter().all(|(_, l)| l == Label::Undec));
        assert_eq!(all_undec.len(), 2);

        let f = af(&["a", "b", "c"], &[("a", "b"), ("b", "a"), ("b", "c")]);
        let t = f.set_of_names(&["a"]).unwrap();
        let lab = f.ext_to_labelling(&t).unwrap();
        assert_eq!(lab.get(f.id_of("a").unwrap()), Some(Label::In));
        assert_eq!(lab.get(f.id_of("b").unwrap()), Some(Label::Out));
        assert_eq!(lab.get(f.id_of("c").unwrap()), Some(Label::Undec));
    }

    #[test]
    fn ext_to_labelling_in_set_round_trips() {
        let f = af(&["a", "b", "c"], &[("a", "b"), ("b", "a"), ("b", "c")]);
        let t = f.set_of_names(&["a"]).unwrap();
        assert_eq!(f.ext_to_labelling(&t).unwrap().in_set(), t);
    }

    #[test]
    fn ext_to_labelling_rejects_conflicting_set() {
        let f = af(&["a", "b"], &[("a", "b")]);
        let t = f.set_of_names(&["a", "b"]).unwrap();
        assert!(matches!(
            f.ext_to_labelling(&t),
            Err(Error::NotConflictFree { .. })
        ));
    }

    #[test]
    fn domain_errors_surface_unknown_members() {
        let f = af(&["a"], &[]);
        let g = af(&["a", "b"], &[]);
        let foreign = g.set_of_names(&["a", "b"]).unwrap();
        assert!(matches!(
            f.attackers_of(&foreign),
            Err(Error::UnknownArgument(_))
        ));
    }

    #[test]
    fn constructor_rejects_undeclared_endpoints() {
        let err = ArgumentationFramework::from_parts(&["a"], &[("a", "b")]).unwrap_err();
        assert!(matches!(err, Error::UnknownArgument(name) if name == "b"));
    }

    #[test]
    fn duplicate_attacks_collapse() {
        let f = ArgumentationFramework::new(
            ["a", "b"],
            [("a", "b"), ("a", "b"), ("b", "a")],
        )
        .unwrap();
        assert_eq!(f.attack_count(), 2);
    }

    #[test]
    fn equality_is_over_names() {
        let f = af(&["a", "b"], &[("a", "b")]);
        let g = af(&["b", "a"], &[("a", "b")]);
        assert_eq!(f, g);
        let h = af(&["a", "b"], &[("b", "a")]);
        assert_ne!(f, h);
    }
}
