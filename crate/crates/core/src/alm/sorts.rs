//! Sort hierarchy and symbol tables built from a flattened module plus a
//! structure. This is the shared context for validation, schema expansion,
//! and compilation to ASP.

use crate::alm::ast::*;
use std::collections::{BTreeMap, BTreeSet};

/// The sort DAG with its transitive closure, plus per-sort instance tables.
#[derive(Clone, Debug, Default)]
pub struct SortHierarchy {
    /// sort -> direct parents
    parents: BTreeMap<String, BTreeSet<String>>,
    /// sort -> all ancestors including itself
    ancestors: BTreeMap<String, BTreeSet<String>>,
    /// sort -> ground instance terms (closed under subsorts)
    members: BTreeMap<String, BTreeSet<Term>>,
    /// instance -> direct sort
    direct_sort: BTreeMap<Term, String>,
    cyclic: bool,
}

impl SortHierarchy {
    /// Builds the hierarchy from declared sorts. Unknown parents are kept
    /// (validation reports them); cycles mark the hierarchy as cyclic and
    /// leave the closure truncated rather than looping.
    pub fn from_module(module: &ModuleDecl) -> Self {
        let mut h = SortHierarchy::default();
        for predefined in [SORT_UNIVERSE, SORT_ACTIONS, SORT_BOOLEANS] {
            h.parents.entry(predefined.to_string()).or_default();
        }
        h.parents
            .get_mut(SORT_ACTIONS)
            .unwrap()
            .insert(SORT_UNIVERSE.to_string());
        h.parents
            .get_mut(SORT_BOOLEANS)
            .unwrap()
            .insert(SORT_UNIVERSE.to_string());
        for decl in &module.sorts {
            for name in &decl.names {
                let entry = h.parents.entry(name.clone()).or_default();
                for p in &decl.parents {
                    if p != name {
                        entry.insert(p.clone());
                    }
                }
            }
        }
        h.compute_closure();
        h.add_instance(Term::constant(CONST_TRUE), SORT_BOOLEANS);
        h.add_instance(Term::constant(CONST_FALSE), SORT_BOOLEANS);
        h
    }

    fn compute_closure(&mut self) {
        self.ancestors.clear();
        let names: Vec<String> = self.parents.keys().cloned().collect();
        for name in &names {
            let mut seen = BTreeSet::new();
            let mut stack = vec![name.clone()];
            let mut steps = 0usize;
            while let Some(s) = stack.pop() {
                if !seen.insert(s.clone()) {
                    continue;
                }
                steps += 1;
                if steps > self.parents.len() + 8 {
                    self.cyclic = true;
                    break;
                }
                if let Some(ps) = self.parents.get(&s) {
                    stack.extend(ps.iter().cloned());
                }
            }
            self.ancestors.insert(name.clone(), seen);
        }
        // A cycle exists iff some sort is a strict ancestor of itself.
        for (name, ps) in &self.parents {
            for p in ps {
                if self
                    .ancestors
                    .get(p)
                    .is_some_and(|anc| anc.contains(name))
                {
                    self.cyclic = true;
                }
            }
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn is_declared(&self, sort: &str) -> bool {
        self.parents.contains_key(sort)
    }

    pub fn sorts(&self) -> impl Iterator<Item = &String> {
        self.parents.keys()
    }

    pub fn direct_parents(&self, sort: &str) -> impl Iterator<Item = &String> {
        self.parents.get(sort).into_iter().flatten()
    }

    /// Reflexive-transitive subsort test.
    pub fn is_subsort(&self, sub: &str, sup: &str) -> bool {
        sub == sup
            || self
                .ancestors
                .get(sub)
                .is_some_and(|anc| anc.contains(sup))
    }

    /// All ancestors of `sort`, including itself.
    pub fn ancestors_of(&self, sort: &str) -> impl Iterator<Item = &String> {
        self.ancestors.get(sort).into_iter().flatten()
    }

    /// Registers a ground instance under `sort` and all its ancestors.
    pub fn add_instance(&mut self, term: Term, sort: &str) {
        self.direct_sort.insert(term.clone(), sort.to_string());
        let ancestors: Vec<String> = self.ancestors_of(sort).cloned().collect();
        if ancestors.is_empty() {
            // Undeclared sort: keep the instance under it so diagnostics
            // can still see it.
            self.members
                .entry(sort.to_string())
                .or_default()
                .insert(term);
            return;
        }
        for a in ancestors {
            self.members.entry(a).or_default().insert(term.clone());
        }
    }

    /// Ground instances of `sort`, closed under subsorts, in canonical order.
    pub fn instances_of(&self, sort: &str) -> Vec<Term> {
        self.members
            .get(sort)
            .map(|set| set.iter().cloned().collect())
            .unwrap_or_default()
    }

    pub fn has_instances(&self, sort: &str) -> bool {
        self.members.get(sort).is_some_and(|s| !s.is_empty())
    }

    pub fn is_instance_of(&self, term: &Term, sort: &str) -> bool {
        self.members.get(sort).is_some_and(|s| s.contains(term))
    }

    pub fn direct_sort_of(&self, term: &Term) -> Option<&String> {
        self.direct_sort.get(term)
    }

    pub fn all_instances(&self) -> impl Iterator<Item = (&Term, &String)> {
        self.direct_sort.iter()
    }

    /// All strict (sub, sup) pairs of the closure, for hierarchy facts.
    pub fn subsort_pairs(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (s, anc) in &self.ancestors {
            for a in anc {
                if a != s {
                    out.push((s.clone(), a.clone()));
                }
            }
        }
        out.sort();
        out
    }
}

/// Attribute signature with its owner sort.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttributeSig {
    pub owner: String,
    pub decl: AttributeDecl,
}

/// Symbol tables for one flattened module plus an (expanded) structure.
#[derive(Clone, Debug, Default)]
pub struct Symbols {
    pub hierarchy: SortHierarchy,
    pub functions: BTreeMap<String, FunctionDecl>,
    pub attributes: BTreeMap<String, AttributeSig>,
}

impl Symbols {
    pub fn build(module: &ModuleDecl, structure: &Structure) -> Self {
        let mut hierarchy = SortHierarchy::from_module(module);
        for inst in &structure.instances {
            if !inst.is_schema() {
                hierarchy.add_instance(inst.head.clone(), &inst.sort);
            }
        }
        let mut functions = BTreeMap::new();
        for f in &module.functions {
            functions.entry(f.name.clone()).or_insert_with(|| f.clone());
        }
        let mut attributes = BTreeMap::new();
        for sd in &module.sorts {
            for attr in &sd.attributes {
                for owner in &sd.names {
                    attributes
                        .entry(attr.name.clone())
                        .or_insert_with(|| AttributeSig {
                            owner: owner.clone(),
                            decl: attr.clone(),
                        });
                }
            }
        }
        Symbols {
            hierarchy,
            functions,
            attributes,
        }
    }

    /// Looks up the attribute visible on `sort`, i.e. declared on it or on
    /// any ancestor sort.
    pub fn attribute_on(&self, sort: &str, name: &str) -> Option<&AttributeSig> {
        let sig = self.attributes.get(name)?;
        if self.hierarchy.is_subsort(sort, &sig.owner) {
            Some(sig)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::span::Span;

    fn sort(names: &[&str], parents: &[&str]) -> SortDecl {
        SortDecl {
            names: names.iter().map(|s| s.to_string()).collect(),
            parents: parents.iter().map(|s| s.to_string()).collect(),
            attributes: vec![],
            span: Span::default(),
        }
    }

    fn module_with(sorts: Vec<SortDecl>) -> ModuleDecl {
        ModuleDecl {
            name: "m".into(),
            sorts,
            ..Default::default()
        }
    }

    #[test]
    fn predefined_sorts_present() {
        let h = SortHierarchy::from_module(&module_with(vec![]));
        assert!(h.is_declared(SORT_UNIVERSE));
        assert!(h.is_subsort(SORT_ACTIONS, SORT_UNIVERSE));
        assert!(h.is_instance_of(&Term::constant("true"), SORT_BOOLEANS));
    }

    #[test]
    fn membership_is_transitive() {
        let m = module_with(vec![
            sort(&["things"], &["universe"]),
            sort(&["agents"], &["things"]),
        ]);
        let mut h = SortHierarchy::from_module(&m);
        h.add_instance(Term::constant("john"), "agents");
        assert!(h.is_instance_of(&Term::constant("john"), "things"));
        assert!(h.is_instance_of(&Term::constant("john"), "universe"));
        assert!(!h.is_instance_of(&Term::constant("john"), "actions"));
    }

    #[test]
    fn cycle_detected() {
        let m = module_with(vec![sort(&["a"], &["b"]), sort(&["b"], &["a"])]);
        let h = SortHierarchy::from_module(&m);
        assert!(h.is_cyclic());
    }

    #[test]
    fn multiple_inheritance_unions_membership() {
        let m = module_with(vec![
            sort(&["b"], &["universe"]),
            sort(&["c"], &["universe"]),
            sort(&["a"], &["b", "c"]),
        ]);
        let mut h = SortHierarchy::from_module(&m);
        h.add_instance(Term::constant("x"), "a");
        assert!(h.is_instance_of(&Term::constant("x"), "b"));
        assert!(h.is_instance_of(&Term::constant("x"), "c"));
    }

    /// Subsort queries agree with brute-force reachability over the DAG.
    #[test]
    fn subsort_matches_reachability_oracle() {
        let m = module_with(vec![
            sort(&["a", "b"], &["universe"]),
            sort(&["c"], &["a"]),
            sort(&["d"], &["a", "b"]),
            sort(&["e"], &["c", "d"]),
        ]);
        let h = SortHierarchy::from_module(&m);
        let names: Vec<&String> = h.sorts().collect();
        for s in &names {
            for t in &names {
                let mut reach = false;
                let mut stack = vec![(*s).clone()];
                let mut seen = std::collections::BTreeSet::new();
                while let Some(x) = stack.pop() {
                    if x == **t {
                        reach = true;
                        break;
                    }
                    if seen.insert(x.clone()) {
                        stack.extend(h.direct_parents(&x).cloned());
                    }
                }
                assert_eq!(h.is_subsort(s, t), reach, "{s} :: {t}");
            }
        }
    }
}
