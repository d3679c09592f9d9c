//! Translation of the bundled knowledge base, checked against the
//! displayed axiom schemas for the obstruction declarations.

use corealm_core::alm::print;
use corealm_core::alm::{Axiom, FunctionKind};
use corealm_core::km::{lift_km, parse_sexprs, KmKb};
use corealm_core::translate::{
    translate_kb, Declaration, Groups, KbTranslation, Patch, TranslationConfig,
};
use std::path::PathBuf;

fn library_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../library")
}

fn load_kb() -> KmKb {
    let km_dir = library_dir().join("km");
    let mut names: Vec<_> = std::fs::read_dir(&km_dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "km"))
        .collect();
    names.sort();
    let mut exprs = Vec::new();
    for path in names {
        let text = std::fs::read_to_string(&path).unwrap();
        exprs.extend(parse_sexprs(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display())));
    }
    let outcome = lift_km(&exprs).unwrap();
    assert!(
        outcome.unsupported.is_empty(),
        "unsupported constructs: {:?}",
        outcome.unsupported
    );
    assert_eq!(outcome.lifted_clauses, outcome.total_clauses);
    outcome.kb
}

fn load_config() -> TranslationConfig {
    TranslationConfig::load(&library_dir().join("translation/config.json")).unwrap()
}

fn load_patch() -> Patch {
    Patch::load(&library_dir().join("translation/patch.json")).unwrap()
}

fn translated() -> KbTranslation {
    translate_kb(&load_kb(), &load_config(), &load_patch()).unwrap()
}

fn axiom_strings(t: &KbTranslation, symbol: &str) -> Vec<String> {
    t.output_for(symbol)
        .unwrap()
        .axioms
        .iter()
        .map(print::axiom)
        .collect()
}

fn optional_strings(t: &KbTranslation, symbol: &str) -> Vec<String> {
    t.output_for(symbol)
        .unwrap()
        .optional_axioms
        .iter()
        .map(print::axiom)
        .collect()
}

#[test]
fn is_at_becomes_binary_boolean_fluent() {
    let t = translated();
    let out = t.output_for("is-at").unwrap();
    let Declaration::Function(f) = &out.declarations[0] else {
        panic!("expected a function declaration");
    };
    assert_eq!(f.name, "is_at");
    assert_eq!(f.kind, FunctionKind::BasicFluent);
    assert_eq!(f.arg_sorts, vec!["spatial_entity", "spatial_entity"]);
    assert_eq!(f.range, "booleans");
}

#[test]
fn object_becomes_attribute_of_actions() {
    let t = translated();
    let out = t.output_for("object").unwrap();
    let Declaration::Attribute { owner, decl } = &out.declarations[0] else {
        panic!("expected an attribute declaration");
    };
    assert_eq!(owner, "actions");
    assert_eq!(decl.name, "object");
    assert_eq!(decl.arg_sorts, vec!["entity"]);
    assert_eq!(decl.range, "booleans");
}

#[test]
fn non_fluent_n_to_1_slot_is_basic_static() {
    // Rule-table case not exercised by the bundled slots.
    let text = "\
(made-of has
  (instance-of (Property-Relation))
  (domain (Tangible-Entity))
  (range (Substance))
  (cardinality (N-to-1))
  (fluent-status (*Non-Fluent)))";
    let exprs = parse_sexprs(text).unwrap();
    let outcome = lift_km(&exprs).unwrap();
    let config = TranslationConfig::default();
    let patch = Patch::default();
    let t = translate_kb(&outcome.kb, &config, &patch).unwrap();
    let Declaration::Function(f) = &t.output_for("made-of").unwrap().declarations[0] else {
        panic!("expected function");
    };
    assert_eq!(f.kind, FunctionKind::BasicStatic);
    assert_eq!(f.arg_sorts, vec!["tangible_entity"]);
    assert_eq!(f.range, "substance");
}

#[test]
fn be_obstructed_fluent_and_subclass_constraint() {
    let t = translated();
    let out = t.output_for("Be-Obstructed").unwrap();
    let fluents: Vec<_> = out
        .declarations
        .iter()
        .filter_map(|d| match d {
            Declaration::Function(f) => Some(f),
            _ => None,
        })
        .collect();
    assert_eq!(fluents[0].name, "is_obstructed");
    assert_eq!(fluents[0].arg_sorts, vec!["spatial_entity"]);
    let axioms = axiom_strings(&t, "Be-Obstructed");
    assert!(
        axioms.contains(&"-is_accessible(O) if is_obstructed(O)".to_string()),
        "subclass constraint missing in {axioms:?}"
    );
    // The agent participant associated through the Obstruct add-list.
    assert!(fluents.iter().any(|f| f.name == "obstructed_by"
        && f.arg_sorts == vec!["spatial_entity", "entity"]));
}

#[test]
fn be_blocked_two_fluents_two_connecting_constraints() {
    let t = translated();
    let out = t.output_for("Be-Blocked").unwrap();
    let fluents: Vec<_> = out
        .declarations
        .iter()
        .filter_map(|d| match d {
            Declaration::Function(f) => Some(f),
            _ => None,
        })
        .collect();
    assert_eq!(fluents.len(), 2);
    assert_eq!(fluents[0].name, "is_blocked");
    assert_eq!(fluents[0].arg_sorts, vec!["spatial_entity"]);
    assert_eq!(fluents[1].name, "blocked_with");
    assert_eq!(fluents[1].arg_sorts, vec!["spatial_entity", "entity"]);
    let axioms = axiom_strings(&t, "Be-Blocked");
    assert!(axioms.contains(&"is_blocked(O) if blocked_with(O, I)".to_string()));
    assert!(axioms.contains(&"-blocked_with(O, I) if -is_blocked(O)".to_string()));
    // Subclass of Be-Obstructed.
    assert!(axioms.contains(&"is_obstructed(O) if is_blocked(O)".to_string()));
}

#[test]
fn state_with_only_object_yields_one_fluent_no_axioms() {
    let t = translated();
    let out = t.output_for("Be-Restrained").unwrap();
    let fluents: Vec<_> = out
        .declarations
        .iter()
        .filter_map(|d| match d {
            Declaration::Function(f) => Some(f),
            _ => None,
        })
        .collect();
    assert_eq!(fluents.len(), 1);
    assert_eq!(fluents[0].name, "is_restrained");
    assert_eq!(fluents[0].arg_sorts, vec!["tangible_entity"]);
    assert!(out.axioms.is_empty());
}

#[test]
fn obstruct_translation() {
    let t = translated();
    let out = t.output_for("Obstruct").unwrap();
    let Declaration::Sort(s) = &out.declarations[0] else {
        panic!("expected sort declaration first");
    };
    assert_eq!(s.names, vec!["obstruct"]);
    assert_eq!(s.parents, vec!["make_inaccessible"]);
    let axioms = axiom_strings(&t, "Obstruct");
    assert!(
        axioms.contains(
            &"occurs(X) causes is_obstructed(A) if instance(X, obstruct), object(X, A)"
                .to_string()
        ),
        "got {axioms:?}"
    );
    // Agent-conditional add-list item through the binary fluent.
    assert!(axioms.contains(
        &"occurs(X) causes obstructed_by(A1, A2) if instance(X, obstruct), object(X, A1), agent(X, A2)"
            .to_string()
    ));
    // Narrowing of the inherited object attribute plus totality.
    assert!(axioms.contains(
        &"false if instance(X, obstruct), object(X, A), -instance(A, tangible_entity)"
            .to_string()
    ));
    assert!(axioms.contains(&"false if instance(X, obstruct), -defined_object(X)".to_string()));
    let optional = optional_strings(&t, "Obstruct");
    assert_eq!(
        optional,
        vec![
            "impossible occurs(X) if instance(X, obstruct), agent(X, A1), object(X, A2), -is_at(A1, A2)"
                .to_string()
        ]
    );
}

#[test]
fn unobstruct_del_list() {
    let t = translated();
    let axioms = axiom_strings(&t, "Unobstruct");
    assert!(axioms.contains(
        &"occurs(X) causes -is_obstructed(A) if instance(X, unobstruct), object(X, A), is_obstructed(A)"
            .to_string()
    ));
}

#[test]
fn block_if_then_else_gives_binary_and_fallback_laws() {
    let t = translated();
    let axioms = axiom_strings(&t, "Block");
    assert!(axioms.contains(
        &"occurs(X) causes blocked_with(A1, A2) if instance(X, block), object(X, A1), instrument(X, A2)"
            .to_string()
    ));
    assert!(axioms.contains(
        &"occurs(X) causes is_blocked(A) if instance(X, block), object(X, A), -defined_instrument(X)"
            .to_string()
    ));
}

#[test]
fn unblock_pcs_list() {
    let t = translated();
    let axioms = axiom_strings(&t, "Unblock");
    assert!(axioms.contains(
        &"impossible occurs(X) if instance(X, unblock), object(X, A), -is_blocked(A)".to_string()
    ));
}

#[test]
fn move_ncs_list_flips_polarity() {
    let t = translated();
    let axioms = axiom_strings(&t, "Move");
    assert!(axioms.contains(
        &"impossible occurs(X) if instance(X, move), object(X, A), is_restrained(A)".to_string()
    ));
    // Patch: origin and destination have at most one value.
    assert!(axioms.iter().any(|a| a.starts_with("-origin(X, A1) if")));
    assert!(axioms.iter().any(|a| a.starts_with("-destination(X, A1) if")));
}

#[test]
fn restrain_soft_precondition_is_optional() {
    let t = translated();
    let optional = optional_strings(&t, "Restrain");
    assert_eq!(
        optional,
        vec![
            "impossible occurs(X) if instance(X, restrain), object(X, A), -is_accessible(A)"
                .to_string()
        ]
    );
    let axioms = axiom_strings(&t, "Restrain");
    assert!(axioms.contains(
        &"occurs(X) causes is_restrained(A) if instance(X, restrain), object(X, A)".to_string()
    ));
}

#[test]
fn make_inaccessible_causes_negated_accessibility() {
    let t = translated();
    let axioms = axiom_strings(&t, "Make-Inaccessible");
    assert!(axioms.contains(
        &"occurs(X) causes -is_accessible(A) if instance(X, make_inaccessible), object(X, A)"
            .to_string()
    ));
}

#[test]
fn opposite_action_report_flags_unblock_without_block_counterpart() {
    let t = translated();
    assert!(
        t.opposite_report.iter().any(|r| r.contains("unblock") && r.contains("is_blocked")),
        "report: {:?}",
        t.opposite_report
    );
}

#[test]
fn empty_kb_translates_to_empty_output() {
    let t = translate_kb(
        &KmKb::default(),
        &TranslationConfig::default(),
        &Patch::default(),
    )
    .unwrap();
    assert!(t.outputs.is_empty());
}

#[test]
fn action_referencing_undeclared_state_errors() {
    let text = "\
(Break has
  (superclasses (Action)))
(every Break has
  (object ((a Thing)))
  (resulting-state ((a Be-Broken)))
  (add-list ((:triple (the resulting-state of Self) object (the object of Self)))))";
    let exprs = parse_sexprs(text).unwrap();
    let outcome = lift_km(&exprs).unwrap();
    let err = translate_kb(
        &outcome.kb,
        &TranslationConfig::default(),
        &Patch::default(),
    )
    .unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("Be-Broken"), "{msg}");
}

#[test]
fn determinism_byte_identical_outputs() {
    let a = translated();
    let b = translated();
    assert_eq!(a.outputs, b.outputs);
    assert_eq!(a.opposite_report, b.opposite_report);
}

#[test]
fn rename_patch_applies_to_action_names() {
    let text = "\
(Hold has
  (superclasses (Action)))
(every Hold has
  (object ((a Thing))))";
    let exprs = parse_sexprs(text).unwrap();
    let outcome = lift_km(&exprs).unwrap();
    let patch: Patch = serde_json::from_str(r#"{ "renames": { "Hold": "take_hold" } }"#).unwrap();
    let t = translate_kb(&outcome.kb, &TranslationConfig::default(), &patch).unwrap();
    let out = t.output_for("Hold").unwrap();
    let Declaration::Sort(s) = &out.declarations[0] else {
        panic!()
    };
    assert_eq!(s.names, vec!["take_hold"]);
}

#[test]
fn groups_file_covers_all_symbols() {
    let groups = Groups::load(&library_dir().join("translation/groups.json")).unwrap();
    let t = translated();
    let grouped: Vec<&String> = groups.modules.iter().flat_map(|m| &m.symbols).collect();
    for (symbol, _) in &t.outputs {
        assert!(
            grouped.iter().any(|g| *g == symbol),
            "symbol {symbol} not assigned to a module"
        );
    }
}

#[test]
fn every_a_spec_yields_one_definedness_pair() {
    // Closure property over all translated actions: each A(c) spec has a
    // totality constraint, and defined_<attr> definitions exist once.
    let t = translated();
    let all: Vec<String> = t
        .outputs
        .iter()
        .flat_map(|(_, o)| o.axioms.iter().map(print::axiom))
        .collect();
    let definitions: Vec<&String> = all
        .iter()
        .filter(|a| a.starts_with("defined_object(X) if"))
        .collect();
    assert_eq!(definitions.len(), 1, "{definitions:?}");
    let _ = Axiom::StateConstraint {
        head: None,
        body: vec![],
        span: corealm_core::Span::default(),
    };
}
