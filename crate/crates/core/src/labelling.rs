//! Three-valued labellings and sets of labellings.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::framework::{ArgId, ArgSet};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Label {
    In,
    Out,
    Undec,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::In => "in",
            Label::Out => "out",
            Label::Undec => "undec",
        })
    }
}

/// A total map from its (explicit) domain of arguments to labels. The
/// domain is the key set, so labellings over disjoint domains can be
/// merged by map union.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Labelling {
    map: BTreeMap<ArgId, Label>,
}

impl Labelling {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, id: ArgId, label: Label) {
        self.map.insert(id, label);
    }

    pub fn get(&self, id: ArgId) -> Option<Label> {
        self.map.get(&id).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn domain(&self) -> ArgSet {
        self.map.keys().copied().collect()
    }

    pub fn domain_contains(&self, id: ArgId) -> bool {
        self.map.contains_key(&id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (ArgId, Label)> + '_ {
        self.map.iter().map(|(&id, &label)| (id, label))
    }

    /// Arguments carrying the given label.
    pub fn with_label(&self, label: Label) -> ArgSet {
        self.map
            .iter()
            .filter(|(_, &l)| l == label)
            .map(|(&id, _)| id)
            .collect()
    }

    pub fn in_set(&self) -> ArgSet {
        self.with_label(Label::In)
    }

    /// Union of two labellings over disjoint domains.
    pub fn disjoint_union(&self, other: &Labelling) -> Result<Labelling> {
        let mut map = self.map.clone();
        for (id, label) in other.iter() {
            if map.insert(id, label).is_some() {
                return Err(Error::OverlappingDomains(id));
            }
        }
        Ok(Labelling { map })
    }
}

impl FromIterator<(ArgId, Label)> for Labelling {
    fn from_iter<T: IntoIterator<Item = (ArgId, Label)>>(iter: T) -> Self {
        Labelling {
            map: iter.into_iter().collect(),
        }
    }
}

impl fmt::Debug for Labelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.map.iter()).finish()
    }
}

/// A duplicate-free set of labellings sharing one domain, iterated in a
/// canonical order.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct LabellingSet {
    items: std::collections::BTreeSet<Labelling>,
}

impl LabellingSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(lab: Labelling) -> Self {
        let mut s = Self::new();
        s.insert(lab);
        s
    }

    pub fn insert(&mut self, lab: Labelling) -> bool {
        debug_assert!(
            self.items.is_empty() || self.items.iter().next().unwrap().domain() == lab.domain(),
            "labelling set members must share one domain"
        );
        self.items.insert(lab)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, lab: &Labelling) -> bool {
        self.items.contains(lab)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Labelling> + '_ {
        self.items.iter()
    }

    /// The common domain of the members, if any member exists.
    pub fn domain(&self) -> Option<ArgSet> {
        self.items.iter().next().map(Labelling::domain)
    }

    /// The in-sets of the members, deduplicated.
    pub fn in_sets(&self) -> std::collections::BTreeSet<ArgSet> {
        self.items.iter().map(Labelling::in_set).collect()
    }
}

impl FromIterator<Labelling> for LabellingSet {
    fn from_iter<T: IntoIterator<Item = Labelling>>(iter: T) -> Self {
        let mut s = Self::new();
        for lab in iter {
            s.insert(lab);
        }
        s
    }
}

impl fmt::Debug for LabellingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.items.iter()).finish()
    }
}
