//! Theory flattening: merging a module with all of its ancestors.
//!
//! Importing a module is equivalent to copying the contents of the module
//! and of all its transitive dependencies. Declarations are deduplicated
//! by full structural signature and axioms by structural equality, so a
//! diamond dependency contributes each declaration and axiom once.

use crate::alm::ast::*;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FlattenError {
    #[error("unknown module `{0}`")]
    UnknownModule(String),
    #[error("dependency cycle through module `{0}`")]
    DependencyCycle(String),
}

/// Returns the dependency closure of `root` in topological order,
/// ancestors first, root last. Optional modules are skipped unless
/// `include_optional` is set or they are the root itself.
pub fn closure_order<'a>(
    theory: &'a [ModuleDecl],
    root: &str,
    include_optional: bool,
) -> Result<Vec<&'a ModuleDecl>, FlattenError> {
    let find = |name: &str| -> Result<&'a ModuleDecl, FlattenError> {
        theory
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| FlattenError::UnknownModule(name.to_string()))
    };
    let mut order: Vec<&ModuleDecl> = Vec::new();
    let mut visiting: Vec<String> = Vec::new();
    let mut done: Vec<String> = Vec::new();

    fn visit<'a>(
        name: &str,
        is_root: bool,
        include_optional: bool,
        find: &dyn Fn(&str) -> Result<&'a ModuleDecl, FlattenError>,
        order: &mut Vec<&'a ModuleDecl>,
        visiting: &mut Vec<String>,
        done: &mut Vec<String>,
    ) -> Result<(), FlattenError> {
        if done.iter().any(|d| d == name) {
            return Ok(());
        }
        if visiting.iter().any(|v| v == name) {
            return Err(FlattenError::DependencyCycle(name.to_string()));
        }
        let module = find(name)?;
        if module.optional && !include_optional && !is_root {
            return Ok(());
        }
        visiting.push(name.to_string());
        for dep in &module.depends_on {
            visit(dep, false, include_optional, find, order, visiting, done)?;
        }
        visiting.pop();
        done.push(name.to_string());
        order.push(module);
        Ok(())
    }

    visit(
        root,
        true,
        include_optional,
        &find,
        &mut order,
        &mut visiting,
        &mut done,
    )?;
    Ok(order)
}

/// Flattens `root` and its ancestors into a single module named after the
/// root. Flattening a flattened module returns an equal module.
pub fn flatten_theory(
    theory: &[ModuleDecl],
    root: &str,
    include_optional: bool,
) -> Result<ModuleDecl, FlattenError> {
    let order = closure_order(theory, root, include_optional)?;
    let mut merged = merge_modules(order.iter().copied());
    merged.name = root.to_string();
    Ok(merged)
}

/// Merges every (non-optional unless requested) module of a theory.
pub fn merge_all(theory: &[ModuleDecl], include_optional: bool) -> ModuleDecl {
    let name = theory
        .first()
        .map(|m| m.name.clone())
        .unwrap_or_else(|| "empty".to_string());
    let mut merged = merge_modules(
        theory
            .iter()
            .filter(|m| include_optional || !m.optional),
    );
    merged.name = name;
    merged
}

fn merge_modules<'a>(modules: impl Iterator<Item = &'a ModuleDecl>) -> ModuleDecl {
    let mut out = ModuleDecl::default();
    for m in modules {
        for sort in &m.sorts {
            merge_sort_decl(&mut out.sorts, sort);
        }
        for f in &m.functions {
            if !out.functions.contains(f) {
                out.functions.push(f.clone());
            }
        }
        for a in &m.axioms {
            if !out.axioms.contains(a) {
                out.axioms.push(a.clone());
            }
        }
    }
    reclassify(&mut out);
    out
}

/// Merges a sort declaration: identical lines collapse; same sort names
/// with different parents or attributes stay as separate declarations
/// (membership is the union), except that an attribute identical to one
/// already present is dropped.
fn merge_sort_decl(sorts: &mut Vec<SortDecl>, decl: &SortDecl) {
    if sorts.contains(decl) {
        return;
    }
    // Same names + parents: merge attribute lists.
    if let Some(existing) = sorts
        .iter_mut()
        .find(|s| s.names == decl.names && s.parents == decl.parents)
    {
        for attr in &decl.attributes {
            if !existing.attributes.contains(attr) {
                existing.attributes.push(attr.clone());
            }
        }
        return;
    }
    sorts.push(decl.clone());
}

/// `<lit> if <body>` statements parsed in a module that did not itself
/// declare the head symbol default to state constraints; once modules are
/// merged the head's declared kind is known and definitions are recovered.
fn reclassify(module: &mut ModuleDecl) {
    let defined: Vec<String> = module
        .functions
        .iter()
        .filter(|f| f.kind.is_defined())
        .map(|f| f.name.clone())
        .collect();
    for axiom in &mut module.axioms {
        if let Axiom::StateConstraint {
            head: Some(head),
            body,
            span,
        } = axiom
        {
            if head
                .symbol()
                .is_some_and(|s| defined.iter().any(|d| d == s))
            {
                *axiom = Axiom::Definition {
                    head: head.clone(),
                    body: std::mem::take(body),
                    span: *span,
                };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::span::Span;

    fn module(name: &str, deps: &[&str]) -> ModuleDecl {
        ModuleDecl {
            name: name.into(),
            depends_on: deps.iter().map(|s| s.to_string()).collect(),
            span: Span::default(),
            ..Default::default()
        }
    }

    fn axiom(n: i64) -> Axiom {
        Axiom::StateConstraint {
            head: None,
            body: vec![Literal::pos(AlmAtom::Cmp {
                op: CmpOp::Eq,
                left: Term::Int(n),
                right: Term::Int(n),
            })],
            span: Span::default(),
        }
    }

    #[test]
    fn flatten_without_deps_is_identity_module() {
        let mut m = module("solo", &[]);
        m.axioms.push(axiom(1));
        let out = flatten_theory(&[m.clone()], "solo", false).unwrap();
        assert_eq!(out.axioms, m.axioms);
        assert_eq!(out.name, "solo");
    }

    #[test]
    fn diamond_dependency_axioms_appear_once() {
        let mut d = module("d", &[]);
        d.axioms.push(axiom(4));
        let mut b = module("b", &["d"]);
        b.axioms.push(axiom(2));
        let mut c = module("c", &["d"]);
        c.axioms.push(axiom(3));
        let mut a = module("a", &["b", "c"]);
        a.axioms.push(axiom(1));
        let theory = vec![a, b, c, d];
        let out = flatten_theory(&theory, "a", false).unwrap();
        assert_eq!(out.axioms.len(), 4);
    }

    #[test]
    fn flatten_is_idempotent() {
        let mut d = module("d", &[]);
        d.axioms.push(axiom(4));
        let mut a = module("a", &["d"]);
        a.axioms.push(axiom(1));
        let flat = flatten_theory(&[a, d], "a", false).unwrap();
        let again = flatten_theory(std::slice::from_ref(&flat), "a", false).unwrap();
        assert_eq!(flat, again);
    }

    #[test]
    fn unknown_and_cyclic_modules_error() {
        let a = module("a", &["missing"]);
        assert_eq!(
            flatten_theory(std::slice::from_ref(&a), "a", false),
            Err(FlattenError::UnknownModule("missing".into()))
        );
        let x = module("x", &["y"]);
        let y = module("y", &["x"]);
        assert!(matches!(
            flatten_theory(&[x, y], "x", false),
            Err(FlattenError::DependencyCycle(_))
        ));
    }

    #[test]
    fn optional_modules_excluded_unless_requested() {
        let mut base = module("base", &[]);
        base.axioms.push(axiom(1));
        let mut leaf = module("leaf", &["base"]);
        leaf.optional = true;
        leaf.axioms.push(axiom(2));
        let root = module("root", &["base", "leaf"]);
        let theory = vec![root, base, leaf];
        let without = flatten_theory(&theory, "root", false).unwrap();
        assert_eq!(without.axioms.len(), 1);
        let with = flatten_theory(&theory, "root", true).unwrap();
        assert_eq!(with.axioms.len(), 2);
    }
}
