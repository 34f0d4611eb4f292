//! `.blockdsa.json` project files: parsing with structured diagnostics,
//! static validation, and canonical serialization.
//!
//! ```json
//! {
//!   "version": 1,
//!   "variables": ["fruits"],
//!   "scripts": [
//!     { "blocks": [ { "opcode": "say", "inputs": { "MESSAGE": { "literal": "hi" } } } ] }
//!   ]
//! }
//! ```

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use serde_json::Value as Json;

use crate::catalog::{catalog_load, slot_typecheck, BlockDef, BlockKind, Catalog, Opcode, Provided, SlotType};
use crate::ds::DsKind;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Project {
    pub version: u64,
    pub variables: Vec<String>,
    pub scripts: Vec<Script>,
}

impl Default for Project {
    fn default() -> Self {
        Project { version: FORMAT_VERSION, variables: Vec::new(), scripts: Vec::new() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub blocks: Vec<BlockInstance>,
}

impl Script {
    pub fn new(blocks: Vec<BlockInstance>) -> Self {
        Script { blocks }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockInstance {
    pub opcode: String,
    pub inputs: BTreeMap<String, Input>,
    pub substack: Option<Script>,
    pub substack2: Option<Script>,
}

impl BlockInstance {
    pub fn new(opcode: impl Into<String>) -> Self {
        BlockInstance { opcode: opcode.into(), inputs: BTreeMap::new(), substack: None, substack2: None }
    }

    pub fn with_input(mut self, slot: &str, input: Input) -> Self {
        self.inputs.insert(slot.to_owned(), input);
        self
    }

    pub fn with_substack(mut self, blocks: Vec<BlockInstance>) -> Self {
        self.substack = Some(Script::new(blocks));
        self
    }

    pub fn with_substack2(mut self, blocks: Vec<BlockInstance>) -> Self {
        self.substack2 = Some(Script::new(blocks));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Literal(String),
    Variable(String),
    Block(Box<BlockInstance>),
}

impl Input {
    pub fn literal(s: impl Into<String>) -> Self {
        Input::Literal(s.into())
    }

    pub fn variable(s: impl Into<String>) -> Self {
        Input::Variable(s.into())
    }

    pub fn block(b: BlockInstance) -> Self {
        Input::Block(Box::new(b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagCode {
    MalformedDocument,
    UnknownOpcode,
    MissingSlot,
    ExtraSlot,
    UndeclaredVariable,
    HatNotFirst,
    SlotMismatch,
    DsKindMismatch,
    UnknownSlot,
}

impl DiagCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagCode::MalformedDocument => "MALFORMED_DOCUMENT",
            DiagCode::UnknownOpcode => "UNKNOWN_OPCODE",
            DiagCode::MissingSlot => "MISSING_SLOT",
            DiagCode::ExtraSlot => "EXTRA_SLOT",
            DiagCode::UndeclaredVariable => "UNDECLARED_VARIABLE",
            DiagCode::HatNotFirst => "HAT_NOT_FIRST",
            DiagCode::SlotMismatch => "SLOT_MISMATCH",
            DiagCode::DsKindMismatch => "DS_KIND_MISMATCH",
            DiagCode::UnknownSlot => "UNKNOWN_SLOT",
        }
    }
}

impl fmt::Display for DiagCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for DiagCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PathSeg {
    Key(String),
    Index(usize),
}

/// Location of a node in the project document, e.g.
/// `scripts[0].blocks[2].inputs.OBJ_ID.block`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NodePath(Vec<PathSeg>);

impl NodePath {
    pub fn root() -> Self {
        NodePath(Vec::new())
    }

    pub fn key(&self, k: &str) -> Self {
        let mut segs = self.0.clone();
        segs.push(PathSeg::Key(k.to_owned()));
        NodePath(segs)
    }

    pub fn index(&self, i: usize) -> Self {
        let mut segs = self.0.clone();
        segs.push(PathSeg::Index(i));
        NodePath(segs)
    }

    pub fn segments(&self) -> &[PathSeg] {
        &self.0
    }

    /// Follows the path through a JSON document.
    pub fn resolve<'a>(&self, doc: &'a Json) -> Option<&'a Json> {
        self.0.iter().try_fold(doc, |node, seg| match seg {
            PathSeg::Key(k) => node.get(k.as_str()),
            PathSeg::Index(i) => node.get(*i),
        })
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("<document>");
        }
        for (n, seg) in self.0.iter().enumerate() {
            match seg {
                PathSeg::Key(k) if n == 0 => f.write_str(k)?,
                PathSeg::Key(k) => write!(f, ".{k}")?,
                PathSeg::Index(i) => write!(f, "[{i}]")?,
            }
        }
        Ok(())
    }
}

impl Serialize for NodePath {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub code: DiagCode,
    pub message: String,
    pub path: NodePath,
}

impl Diagnostic {
    pub fn new(code: DiagCode, message: impl Into<String>, path: NodePath) -> Self {
        Diagnostic { code, message: message.into(), path }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.path, self.code, self.message)
    }
}

/// Line-oriented report, one `path: CODE: message` line per diagnostic.
pub fn render_report(diags: &[Diagnostic]) -> String {
    diags.iter().map(|d| format!("{d}\n")).collect()
}

// ---------------------------------------------------------------------------
// Parsing

pub fn parse_project(document: &[u8]) -> Result<Project, Vec<Diagnostic>> {
    match serde_json::from_slice::<Json>(document) {
        Ok(doc) => parse_project_json(&doc),
        Err(e) => Err(vec![Diagnostic::new(
            DiagCode::MalformedDocument,
            format!("not a JSON document: {e}"),
            NodePath::root(),
        )]),
    }
}

pub fn parse_project_json(doc: &Json) -> Result<Project, Vec<Diagnostic>> {
    let mut p = Parser { catalog: catalog_load(), declared: HashSet::new(), diags: Vec::new() };
    let project = p.project(doc);
    match project {
        Some(project) if p.diags.is_empty() => Ok(project),
        _ => Err(p.diags),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Position {
    ScriptTop,
    Stacked,
    Input,
}

struct Parser<'c> {
    catalog: &'c Catalog,
    declared: HashSet<String>,
    diags: Vec<Diagnostic>,
}

impl Parser<'_> {
    fn malformed(&mut self, path: NodePath, message: impl Into<String>) {
        self.diags.push(Diagnostic::new(DiagCode::MalformedDocument, message, path));
    }

    fn object<'a>(&mut self, v: &'a Json, path: &NodePath, allowed: &[&str], what: &str) -> Option<&'a serde_json::Map<String, Json>> {
        let Some(obj) = v.as_object() else {
            self.malformed(path.clone(), format!("expected {what} object"));
            return None;
        };
        for key in obj.keys() {
            if !allowed.contains(&key.as_str()) {
                self.malformed(path.key(key), format!("unexpected field `{key}` in {what}"));
            }
        }
        Some(obj)
    }

    fn project(&mut self, doc: &Json) -> Option<Project> {
        let root = NodePath::root();
        let obj = self.object(doc, &root, &["version", "variables", "scripts"], "project")?;

        let version = match obj.get("version") {
            None => {
                self.malformed(root.clone(), "missing field `version`");
                None
            }
            Some(v) => match v.as_u64() {
                Some(FORMAT_VERSION) => Some(FORMAT_VERSION),
                _ => {
                    self.malformed(root.key("version"), format!("unsupported version {v}, expected 1"));
                    None
                }
            },
        };

        let mut variables = Vec::new();
        match obj.get("variables") {
            None => self.malformed(root.clone(), "missing field `variables`"),
            Some(Json::Array(items)) => {
                for (i, item) in items.iter().enumerate() {
                    let path = root.key("variables").index(i);
                    match item.as_str() {
                        Some("") => self.malformed(path, "variable names must not be empty"),
                        Some(name) if self.declared.contains(name) => {
                            self.malformed(path, format!("variable `{name}` is declared twice"))
                        }
                        Some(name) => {
                            self.declared.insert(name.to_owned());
                            variables.push(name.to_owned());
                        }
                        None => self.malformed(path, "variable names must be text"),
                    }
                }
            }
            Some(_) => self.malformed(root.key("variables"), "expected a list of variable names"),
        }

        let mut scripts = Vec::new();
        match obj.get("scripts") {
            None => self.malformed(root.clone(), "missing field `scripts`"),
            Some(Json::Array(items)) => {
                for (i, item) in items.iter().enumerate() {
                    let path = root.key("scripts").index(i);
                    let Some(s) = self.object(item, &path, &["blocks"], "script") else { continue };
                    match s.get("blocks") {
                        Some(blocks) => {
                            if let Some(script) = self.stack(blocks, &path.key("blocks"), true) {
                                scripts.push(script);
                            }
                        }
                        None => self.malformed(path, "missing field `blocks`"),
                    }
                }
            }
            Some(_) => self.malformed(root.key("scripts"), "expected a list of scripts"),
        }

        Some(Project { version: version?, variables, scripts })
    }

    fn stack(&mut self, v: &Json, path: &NodePath, top_level: bool) -> Option<Script> {
        let Some(items) = v.as_array() else {
            self.malformed(path.clone(), "expected a list of blocks");
            return None;
        };
        let mut blocks = Vec::with_capacity(items.len());
        for (i, item) in items.iter().enumerate() {
            let pos = if top_level && i == 0 { Position::ScriptTop } else { Position::Stacked };
            if let Some(b) = self.block(item, &path.index(i), pos) {
                blocks.push(b);
            }
        }
        Some(Script { blocks })
    }

    fn block(&mut self, v: &Json, path: &NodePath, pos: Position) -> Option<BlockInstance> {
        let obj = self.object(v, path, &["opcode", "inputs", "substack", "substack2"], "block")?;
        let Some(opcode) = obj.get("opcode").and_then(Json::as_str) else {
            self.malformed(path.clone(), "block needs a text `opcode`");
            return None;
        };
        let Some(def) = self.catalog.lookup(opcode) else {
            self.diags.push(Diagnostic::new(
                DiagCode::UnknownOpcode,
                format!("unknown opcode `{opcode}`"),
                path.clone(),
            ));
            return None;
        };
        if def.kind == BlockKind::Hat && pos != Position::ScriptTop {
            self.diags.push(Diagnostic::new(
                DiagCode::HatNotFirst,
                format!("`{opcode}` can only start a script"),
                path.clone(),
            ));
        }

        let mut inputs = BTreeMap::new();
        match obj.get("inputs") {
            None => {}
            Some(Json::Object(map)) => {
                for (slot, input) in map {
                    let slot_path = path.key("inputs").key(slot);
                    let accepted = def.slot(slot).is_some_and(|s| s.ty != SlotType::Substack);
                    if !accepted {
                        self.diags.push(Diagnostic::new(
                            DiagCode::ExtraSlot,
                            format!("`{opcode}` has no input slot {slot}"),
                            slot_path,
                        ));
                        continue;
                    }
                    if let Some(parsed) = self.input(input, &slot_path) {
                        inputs.insert(slot.clone(), parsed);
                    }
                }
            }
            Some(_) => self.malformed(path.key("inputs"), "expected an object of inputs"),
        }
        for slot in def.input_slots() {
            let provided = obj.get("inputs").and_then(|m| m.get(slot.name)).is_some();
            if !provided {
                self.diags.push(Diagnostic::new(
                    DiagCode::MissingSlot,
                    format!("`{opcode}` is missing input {}", slot.name),
                    path.clone(),
                ));
            }
        }

        let substack = self.substack(obj, def, path, "substack", "SUBSTACK");
        let substack2 = self.substack(obj, def, path, "substack2", "SUBSTACK2");
        Some(BlockInstance { opcode: opcode.to_owned(), inputs, substack, substack2 })
    }

    fn substack(
        &mut self,
        obj: &serde_json::Map<String, Json>,
        def: &BlockDef,
        path: &NodePath,
        field: &str,
        slot: &str,
    ) -> Option<Script> {
        let present = obj.get(field);
        if !def.has_substack(slot) {
            if present.is_some() {
                self.diags.push(Diagnostic::new(
                    DiagCode::ExtraSlot,
                    format!("`{}` does not hold a {field}", def.opcode),
                    path.key(field),
                ));
            }
            return None;
        }
        match present {
            None => Some(Script::default()),
            Some(v) => self.stack(v, &path.key(field), false),
        }
    }

    fn input(&mut self, v: &Json, path: &NodePath) -> Option<Input> {
        let obj = self.object(v, path, &["literal", "variable", "block"], "input")?;
        if obj.len() != 1 {
            self.malformed(path.clone(), "an input holds exactly one of `literal`, `variable`, `block`");
            return None;
        }
        let (form, value) = obj.iter().next().expect("one entry");
        match form.as_str() {
            "literal" => match value.as_str() {
                Some(s) => Some(Input::Literal(s.to_owned())),
                None => {
                    self.malformed(path.key("literal"), "literals are written as text");
                    None
                }
            },
            "variable" => match value.as_str() {
                Some(name) if self.declared.contains(name) => Some(Input::Variable(name.to_owned())),
                Some(name) => {
                    self.diags.push(Diagnostic::new(
                        DiagCode::UndeclaredVariable,
                        format!("variable `{name}` is not declared"),
                        path.key("variable"),
                    ));
                    None
                }
                None => {
                    self.malformed(path.key("variable"), "variable references are written as text");
                    None
                }
            },
            _ => self.block(value, &path.key("block"), Position::Input).map(Input::block),
        }
    }
}

// ---------------------------------------------------------------------------
// Serialization

/// Canonical form: fixed key order, 2-space indentation, trailing newline.
pub fn serialize_project(p: &Project) -> String {
    let mut out = serde_json::to_string_pretty(p).expect("project serializes");
    out.push('\n');
    out
}

impl Serialize for Project {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Project", 3)?;
        st.serialize_field("version", &self.version)?;
        st.serialize_field("variables", &self.variables)?;
        st.serialize_field("scripts", &self.scripts)?;
        st.end()
    }
}

impl Serialize for Script {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Script", 1)?;
        st.serialize_field("blocks", &self.blocks)?;
        st.end()
    }
}

struct OrderedInputs<'a>(&'a BlockInstance);

impl Serialize for OrderedInputs<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let inputs = &self.0.inputs;
        let order: Vec<&str> = catalog_load()
            .lookup(&self.0.opcode)
            .map(|d| d.input_slots().map(|s| s.name).collect())
            .unwrap_or_default();
        let mut map = s.serialize_map(Some(inputs.len()))?;
        for name in &order {
            if let Some(input) = inputs.get(*name) {
                map.serialize_entry(name, input)?;
            }
        }
        for (name, input) in inputs.iter().filter(|(n, _)| !order.contains(&n.as_str())) {
            map.serialize_entry(name, input)?;
        }
        map.end()
    }
}

impl Serialize for BlockInstance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("opcode", &self.opcode)?;
        map.serialize_entry("inputs", &OrderedInputs(self))?;
        if let Some(sub) = &self.substack {
            map.serialize_entry("substack", &sub.blocks)?;
        }
        if let Some(sub) = &self.substack2 {
            map.serialize_entry("substack2", &sub.blocks)?;
        }
        map.end()
    }
}

impl Serialize for Input {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(1))?;
        match self {
            Input::Literal(t) => map.serialize_entry("literal", t)?,
            Input::Variable(n) => map.serialize_entry("variable", n)?,
            Input::Block(b) => map.serialize_entry("block", b)?,
        }
        map.end()
    }
}

// ---------------------------------------------------------------------------
// Validation

/// Static checks on a parsed project. An empty list means the project is
/// well-typed. Data-structure family checks only fire where the family is
/// statically known: a `create new ...` or set-algebra block plugged in
/// directly, or a variable whose every assignment is one of those.
pub fn validate_project(p: &Project) -> Vec<Diagnostic> {
    let catalog = catalog_load();
    let families = infer_variable_families(catalog, p);
    let mut v = Validator { catalog, families, diags: Vec::new() };
    let root = NodePath::root();
    for (i, script) in p.scripts.iter().enumerate() {
        v.stack(&script.blocks, &root.key("scripts").index(i).key("blocks"), true);
    }
    v.diags
}

/// True when no diagnostic blocks execution.
pub fn is_runnable(diags: &[Diagnostic]) -> bool {
    !diags.iter().any(|d| {
        matches!(d.code, DiagCode::SlotMismatch | DiagCode::UnknownOpcode | DiagCode::UnknownSlot)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum VarFamily {
    Known(DsKind),
    Mixed,
}

fn infer_variable_families(catalog: &Catalog, p: &Project) -> HashMap<String, VarFamily> {
    fn merge(map: &mut HashMap<String, VarFamily>, name: &str, fam: Option<DsKind>) {
        let next = match (map.get(name), fam) {
            (_, None) | (Some(VarFamily::Mixed), _) => VarFamily::Mixed,
            (None, Some(k)) => VarFamily::Known(k),
            (Some(VarFamily::Known(a)), Some(b)) if *a == b => VarFamily::Known(b),
            (Some(VarFamily::Known(_)), Some(_)) => VarFamily::Mixed,
        };
        map.insert(name.to_owned(), next);
    }

    fn walk(catalog: &Catalog, blocks: &[BlockInstance], map: &mut HashMap<String, VarFamily>) {
        for b in blocks {
            visit(catalog, b, map);
        }
    }

    fn visit(catalog: &Catalog, b: &BlockInstance, map: &mut HashMap<String, VarFamily>) {
        match catalog.opcode(&b.opcode) {
            Some(Opcode::SetVariable) => {
                if let Some(Input::Variable(name)) = b.inputs.get("VARIABLE") {
                    merge(map, name, b.inputs.get("VALUE").and_then(|i| produced_family(catalog, i)));
                }
            }
            Some(Opcode::ChangeVariable) => {
                if let Some(Input::Variable(name)) = b.inputs.get("VARIABLE") {
                    merge(map, name, None);
                }
            }
            _ => {}
        }
        for input in b.inputs.values() {
            if let Input::Block(inner) = input {
                visit(catalog, inner, map);
            }
        }
        for sub in [&b.substack, &b.substack2].into_iter().flatten() {
            walk(catalog, &sub.blocks, map);
        }
    }

    let mut map = HashMap::new();
    for s in &p.scripts {
        walk(catalog, &s.blocks, &mut map);
    }
    map
}

fn produced_family(catalog: &Catalog, input: &Input) -> Option<DsKind> {
    match input {
        Input::Block(b) => catalog.lookup(&b.opcode).and_then(BlockDef::produced_family),
        _ => None,
    }
}

struct Validator<'c> {
    catalog: &'c Catalog,
    families: HashMap<String, VarFamily>,
    diags: Vec<Diagnostic>,
}

impl Validator<'_> {
    fn push(&mut self, code: DiagCode, message: impl Into<String>, path: NodePath) {
        self.diags.push(Diagnostic::new(code, message, path));
    }

    fn stack(&mut self, blocks: &[BlockInstance], path: &NodePath, top_level: bool) {
        for (i, b) in blocks.iter().enumerate() {
            let bpath = path.index(i);
            let Some(def) = self.catalog.lookup(&b.opcode) else {
                self.push(DiagCode::UnknownOpcode, format!("unknown opcode `{}`", b.opcode), bpath);
                continue;
            };
            let hat_ok = def.kind == BlockKind::Hat && top_level && i == 0;
            if def.kind == BlockKind::Hat && !hat_ok {
                self.push(DiagCode::HatNotFirst, format!("`{}` can only start a script", b.opcode), bpath.clone());
            } else if !def.kind.is_stackable() && !hat_ok {
                self.push(
                    DiagCode::SlotMismatch,
                    format!("a {} block like `{}` cannot be stacked", def.kind, b.opcode),
                    bpath.clone(),
                );
            }
            self.block(b, def, &bpath);
        }
    }

    fn block(&mut self, b: &BlockInstance, def: &BlockDef, path: &NodePath) {
        for (slot, input) in &b.inputs {
            let ipath = path.key("inputs").key(slot);
            let provided = match input {
                Input::Literal(_) => Provided::Literal,
                Input::Variable(_) => Provided::Variable,
                Input::Block(inner) => match self.catalog.lookup(&inner.opcode) {
                    Some(d) => Provided::Block(d.kind),
                    None => {
                        self.push(
                            DiagCode::UnknownOpcode,
                            format!("unknown opcode `{}`", inner.opcode),
                            ipath.key("block"),
                        );
                        continue;
                    }
                },
            };
            if let Err(e) = slot_typecheck(def, slot, provided) {
                let code = match e.code() {
                    "UNKNOWN_SLOT" => DiagCode::UnknownSlot,
                    _ => DiagCode::SlotMismatch,
                };
                self.push(code, e.to_string(), ipath.clone());
            }
            let names_variable = matches!(def.opcode, Opcode::SetVariable | Opcode::ChangeVariable) && slot == "VARIABLE";
            if names_variable && !matches!(input, Input::Variable(_)) {
                self.push(DiagCode::SlotMismatch, format!("slot VARIABLE of {} needs a variable", def.opcode), ipath.clone());
            }
            self.family_check(def, slot, input, &ipath);
            if let Input::Block(inner) = input {
                if let Some(inner_def) = self.catalog.lookup(&inner.opcode) {
                    self.block(inner, inner_def, &ipath.key("block"));
                }
            }
        }
        if let Some(sub) = &b.substack {
            self.stack(&sub.blocks, &path.key("substack"), false);
        }
        if let Some(sub) = &b.substack2 {
            self.stack(&sub.blocks, &path.key("substack2"), false);
        }
    }

    fn family_check(&mut self, def: &BlockDef, slot: &str, input: &Input, path: &NodePath) {
        let direct = produced_family(self.catalog, input);
        if slot.starts_with("OBJ_ID") {
            let Some(expected) = def.ds_family() else { return };
            let actual = direct.or_else(|| match input {
                Input::Variable(name) => match self.families.get(name) {
                    Some(VarFamily::Known(k)) => Some(*k),
                    _ => None,
                },
                _ => None,
            });
            if actual.is_some_and(|k| k != expected) {
                self.push(DiagCode::DsKindMismatch, expected.kind_mismatch_message(), path.clone());
            }
        } else if let Some(made) = direct {
            let stored = def.opcode == Opcode::SetVariable && slot == "VALUE";
            if !stored {
                self.push(DiagCode::DsKindMismatch, made.kind_mismatch_message(), path.key("block"));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_str(s: &str) -> Result<Project, Vec<Diagnostic>> {
        parse_project(s.as_bytes())
    }

    fn codes(d: &[Diagnostic]) -> Vec<&'static str> {
        d.iter().map(|d| d.code.as_str()).collect()
    }

    #[test]
    fn minimal_document() {
        let p = parse_str(r#"{"version":1,"variables":[],"scripts":[]}"#).unwrap();
        assert_eq!(p, Project::default());
        assert_eq!(
            serialize_project(&p),
            "{\n  \"version\": 1,\n  \"variables\": [],\n  \"scripts\": []\n}\n"
        );
    }

    #[test]
    fn unknown_opcode() {
        let e = parse_str(r#"{"version":1,"variables":[],"scripts":[{"blocks":[{"opcode":"xyz"}]}]}"#).unwrap_err();
        assert_eq!(codes(&e), ["UNKNOWN_OPCODE"]);
        assert_eq!(e[0].path.to_string(), "scripts[0].blocks[0]");
    }

    #[test]
    fn malformed_inputs_never_panic() {
        for doc in ["", "{", "[]", "null", "{\"version\":2,\"variables\":[],\"scripts\":[]}", "\u{0}\u{ff}"] {
            let e = parse_str(doc).unwrap_err();
            assert!(e.iter().all(|d| d.code == DiagCode::MalformedDocument), "{doc:?}");
        }
        assert!(parse_project(&[0xff, 0xfe, 0x00]).is_err());
    }

    #[test]
    fn structural_errors() {
        let doc = r#"{"version":1,"variables":["x","x",""],"scripts":[{"blocks":[
            {"opcode":"say"},
            {"opcode":"say","inputs":{"MESSAGE":{"variable":"nope"},"EXTRA":{"literal":"1"}}},
            {"opcode":"whenStarted"},
            {"opcode":"addToSet","inputs":{"OBJ_ID":{"literal":"a","variable":"x"},"ELEMENT":{"literal":3}}},
            {"opcode":"say","inputs":{"MESSAGE":{"literal":"a"}},"substack":[]}
        ]}]}"#;
        let e = parse_str(doc).unwrap_err();
        let got = codes(&e);
        for want in [
            "MALFORMED_DOCUMENT",
            "MISSING_SLOT",
            "UNDECLARED_VARIABLE",
            "EXTRA_SLOT",
            "HAT_NOT_FIRST",
        ] {
            assert!(got.contains(&want), "{want} missing from {got:?}");
        }
        let json: Json = serde_json::from_str(doc).unwrap();
        for d in &e {
            assert!(d.path.resolve(&json).is_some(), "{d}");
        }
    }

    #[test]
    fn hat_only_first_in_top_level_scripts() {
        let ok = r#"{"version":1,"variables":[],"scripts":[{"blocks":[{"opcode":"whenStarted"}]}]}"#;
        assert!(parse_str(ok).is_ok());
        let nested = r#"{"version":1,"variables":[],"scripts":[{"blocks":[
            {"opcode":"forever","substack":[{"opcode":"whenStarted"}]}]}]}"#;
        assert_eq!(codes(&parse_str(nested).unwrap_err()), ["HAT_NOT_FIRST"]);
    }

    #[test]
    fn c_blocks_default_to_empty_substacks() {
        let p = parse_str(r#"{"version":1,"variables":[],"scripts":[{"blocks":[{"opcode":"ifElse","inputs":{"CONDITION":{"block":{"opcode":"equals","inputs":{"OPERAND1":{"literal":"1"},"OPERAND2":{"literal":"1"}}}}}}]}]}"#).unwrap();
        let b = &p.scripts[0].blocks[0];
        assert_eq!(b.substack, Some(Script::default()));
        assert_eq!(b.substack2, Some(Script::default()));
        let text = serialize_project(&p);
        assert!(text.contains("\"substack\": []"));
        assert_eq!(parse_str(&text).unwrap(), p);
    }

    #[test]
    fn nested_foreach_round_trip() {
        let p = Project {
            version: 1,
            variables: vec!["a".into()],
            scripts: vec![Script::new(vec![
                BlockInstance::new("setVariable")
                    .with_input("VARIABLE", Input::variable("a"))
                    .with_input("VALUE", Input::block(BlockInstance::new("createNewArray"))),
                BlockInstance::new("forEachElementIn")
                    .with_input("OBJ_ID", Input::variable("a"))
                    .with_substack(vec![BlockInstance::new("say")
                        .with_input("MESSAGE", Input::block(BlockInstance::new("currentElement")))]),
            ])],
        };
        let text = serialize_project(&p);
        let doc: Json = serde_json::from_str(&text).unwrap();
        assert!(doc["scripts"][0]["blocks"][1]["substack"].is_array());
        let back = parse_str(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(serialize_project(&back), text);
        // Inputs come out in catalog slot order.
        assert!(text.find("\"VARIABLE\"").unwrap() < text.find("\"VALUE\"").unwrap());
    }

    fn project_with(blocks: Vec<BlockInstance>, vars: &[&str]) -> Project {
        Project {
            version: 1,
            variables: vars.iter().map(|s| s.to_string()).collect(),
            scripts: vec![Script::new(blocks)],
        }
    }

    #[test]
    fn dictionary_into_array_block() {
        let p = project_with(
            vec![BlockInstance::new("addToArray")
                .with_input("OBJ_ID", Input::block(BlockInstance::new("createNewDictionary")))
                .with_input("ITEM", Input::literal("x"))],
            &[],
        );
        let d = validate_project(&p);
        assert_eq!(codes(&d), ["DS_KIND_MISMATCH"]);
        assert_eq!(d[0].message, "This block can only be used with Arrays");
    }

    #[test]
    fn variable_family_inference() {
        let p = project_with(
            vec![
                BlockInstance::new("setVariable")
                    .with_input("VARIABLE", Input::variable("s"))
                    .with_input("VALUE", Input::block(BlockInstance::new("createNewSet"))),
                BlockInstance::new("sortArrayAscending").with_input("OBJ_ID", Input::variable("s")),
            ],
            &["s"],
        );
        let d = validate_project(&p);
        assert_eq!(codes(&d), ["DS_KIND_MISMATCH"]);
        assert_eq!(d[0].message, "This block can only be used with Arrays");

        // A variable assigned from two families is not statically known.
        let mut mixed = p.clone();
        mixed.scripts[0].blocks.insert(
            1,
            BlockInstance::new("setVariable")
                .with_input("VARIABLE", Input::variable("s"))
                .with_input("VALUE", Input::block(BlockInstance::new("createNewArray"))),
        );
        assert!(validate_project(&mixed).is_empty());
    }

    #[test]
    fn command_in_operand_slot() {
        let p = project_with(
            vec![BlockInstance::new("ifThen").with_input(
                "CONDITION",
                Input::block(
                    BlockInstance::new("equals")
                        .with_input("OPERAND1", Input::block(BlockInstance::new("say").with_input("MESSAGE", Input::literal("x"))))
                        .with_input("OPERAND2", Input::literal("1")),
                ),
            ).with_substack(vec![])],
            &[],
        );
        let d = validate_project(&p);
        assert_eq!(codes(&d), ["SLOT_MISMATCH"]);
        assert!(!is_runnable(&d));
        let doc: Json = serde_json::from_str(&serialize_project(&p)).unwrap();
        assert!(d[0].path.resolve(&doc).is_some());
    }

    #[test]
    fn reporter_cannot_be_stacked() {
        let p = project_with(vec![BlockInstance::new("answer")], &[]);
        assert_eq!(codes(&validate_project(&p)), ["SLOT_MISMATCH"]);
    }

    #[test]
    fn fresh_object_into_plain_slot() {
        let p = project_with(
            vec![BlockInstance::new("say").with_input("MESSAGE", Input::block(BlockInstance::new("createNewSet")))],
            &[],
        );
        let d = validate_project(&p);
        assert_eq!(codes(&d), ["DS_KIND_MISMATCH"]);
        assert_eq!(d[0].message, "This block can only be used with Sets");
        assert!(is_runnable(&d));
    }

    #[test]
    fn report_format() {
        let d = Diagnostic::new(DiagCode::UnknownOpcode, "unknown opcode `xyz`", NodePath::root().key("scripts").index(0));
        assert_eq!(render_report(&[d]), "scripts[0]: UNKNOWN_OPCODE: unknown opcode `xyz`\n");
    }
}
