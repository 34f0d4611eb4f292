//! The built-in block catalog and slot type checking.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::ds::DsKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BlockKind {
    Command,
    Reporter,
    Boolean,
    C,
    Hat,
}

impl BlockKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BlockKind::Command => "COMMAND",
            BlockKind::Reporter => "REPORTER",
            BlockKind::Boolean => "BOOLEAN",
            BlockKind::C => "C",
            BlockKind::Hat => "HAT",
        }
    }

    pub fn reports_value(self) -> bool {
        matches!(self, BlockKind::Reporter | BlockKind::Boolean)
    }

    pub fn is_stackable(self) -> bool {
        matches!(self, BlockKind::Command | BlockKind::C)
    }
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SlotType {
    /// Literal, variable, or reporter result.
    Any,
    BooleanInput,
    Substack,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Arrays,
    Sets,
    Dictionaries,
    Algorithms,
    Control,
    Io,
    Operators,
    Variables,
}

impl Category {
    pub const ALL: [Category; 8] = [
        Category::Arrays,
        Category::Sets,
        Category::Dictionaries,
        Category::Algorithms,
        Category::Control,
        Category::Io,
        Category::Operators,
        Category::Variables,
    ];

    pub fn title(self) -> &'static str {
        match self {
            Category::Arrays => "Arrays",
            Category::Sets => "Sets",
            Category::Dictionaries => "Dictionaries",
            Category::Algorithms => "Algorithms",
            Category::Control => "Control",
            Category::Io => "Input and output",
            Category::Operators => "Operators",
            Category::Variables => "Variables",
        }
    }
}

/// Whether a block is described by the original extension or was added to
/// round out the block set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Extension,
    Added,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SlotDef {
    pub name: &'static str,
    #[serde(rename = "type")]
    pub ty: SlotType,
}

const fn any(name: &'static str) -> SlotDef {
    SlotDef { name, ty: SlotType::Any }
}

const fn boolean(name: &'static str) -> SlotDef {
    SlotDef { name, ty: SlotType::BooleanInput }
}

const fn substack(name: &'static str) -> SlotDef {
    SlotDef { name, ty: SlotType::Substack }
}

macro_rules! opcodes {
    ($($variant:ident => $name:literal,)*) => {
        /// Every opcode the runtime understands.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Opcode {
            $($variant,)*
        }

        impl Opcode {
            pub const ALL: &'static [Opcode] = &[$(Opcode::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(Opcode::$variant => $name,)*
                }
            }
        }
    };
}

opcodes! {
    CreateNewArray => "createNewArray",
    AddToArray => "addToArray",
    ItemOfArray => "itemOfArray",
    LengthOfArray => "lengthOfArray",
    SortArrayAscending => "sortArrayAscending",
    SortArrayDescending => "sortArrayDescending",
    SearchInArray => "searchInArray",
    CreateNewSet => "createNewSet",
    AddToSet => "addToSet",
    IsSetEmpty => "isSetEmpty",
    CheckContainInSet => "checkContainInSet",
    UnionOfSets => "unionOfSets",
    IntersectionOfSets => "intersectionOfSets",
    DifferenceOfSets => "differenceOfSets",
    SizeOfSet => "sizeOfSet",
    CreateNewDictionary => "createNewDictionary",
    AddKeyValueToDictionary => "addKeyValueToDictionary",
    GetValueForKey => "getValueForKey",
    ContainsKeyInDictionary => "containsKeyInDictionary",
    RemoveKeyFromDictionary => "removeKeyFromDictionary",
    SizeOfDictionary => "sizeOfDictionary",
    ForEachElementIn => "forEachElementIn",
    CurrentElement => "currentElement",
    WhenStarted => "whenStarted",
    Ask => "ask",
    Answer => "answer",
    Say => "say",
    SayForSecs => "sayForSecs",
    SetVariable => "setVariable",
    ChangeVariable => "changeVariable",
    Repeat => "repeat",
    RepeatUntil => "repeatUntil",
    Forever => "forever",
    IfThen => "ifThen",
    IfElse => "ifElse",
    Equals => "equals",
    LessThan => "lessThan",
    GreaterThan => "greaterThan",
    AndOp => "andOp",
    OrOp => "orOp",
    NotOp => "notOp",
    JoinText => "joinText",
    StringContains => "stringContains",
    Add => "add",
    Subtract => "subtract",
    Multiply => "multiply",
    Divide => "divide",
}

impl fmt::Display for Opcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Opcode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockDef {
    pub opcode: Opcode,
    pub kind: BlockKind,
    pub text: &'static str,
    pub slots: Vec<SlotDef>,
    pub category: Category,
    /// Family the block operates on through its `OBJ_ID` slot(s).
    pub ds_kind: Option<&'static str>,
    /// Family of the object id this reporter hands back, if any.
    pub produces: Option<&'static str>,
    pub origin: Origin,
    pub summary: &'static str,
}

impl BlockDef {
    pub fn slot(&self, name: &str) -> Option<&SlotDef> {
        self.slots.iter().find(|s| s.name == name)
    }

    /// Slots filled through `inputs` (everything but substacks), in order.
    pub fn input_slots(&self) -> impl Iterator<Item = &SlotDef> {
        self.slots.iter().filter(|s| s.ty != SlotType::Substack)
    }

    pub fn has_substack(&self, name: &str) -> bool {
        self.slot(name).is_some_and(|s| s.ty == SlotType::Substack)
    }

    pub fn ds_family(&self) -> Option<DsKind> {
        self.ds_kind.and_then(kind_from_tag)
    }

    pub fn produced_family(&self) -> Option<DsKind> {
        self.produces.and_then(kind_from_tag)
    }

    /// Bracketed names in the text template, in order of appearance.
    pub fn template_slots(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut rest = self.text;
        while let Some(open) = rest.find('[') {
            let Some(close) = rest[open..].find(']') else { break };
            out.push(&rest[open + 1..open + close]);
            rest = &rest[open + close + 1..];
        }
        out
    }
}

fn kind_from_tag(tag: &str) -> Option<DsKind> {
    DsKind::ALL.into_iter().find(|k| k.tag() == tag)
}

/// What is being plugged into a slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provided {
    Literal,
    Variable,
    Block(BlockKind),
}

impl fmt::Display for Provided {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provided::Literal => f.write_str("a literal"),
            Provided::Variable => f.write_str("a variable"),
            Provided::Block(k) => write!(f, "a {k} block"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SlotCheckError {
    #[error("slot {slot} of {opcode} does not accept {provided}")]
    Mismatch { opcode: Opcode, slot: String, provided: Provided },
    #[error("{opcode} has no slot named {slot}")]
    UnknownSlot { opcode: Opcode, slot: String },
}

impl SlotCheckError {
    pub fn code(&self) -> &'static str {
        match self {
            SlotCheckError::Mismatch { .. } => "SLOT_MISMATCH",
            SlotCheckError::UnknownSlot { .. } => "UNKNOWN_SLOT",
        }
    }
}

pub fn slot_typecheck(def: &BlockDef, slot: &str, provided: Provided) -> Result<(), SlotCheckError> {
    let Some(slot_def) = def.slot(slot) else {
        return Err(SlotCheckError::UnknownSlot { opcode: def.opcode, slot: slot.to_owned() });
    };
    let ok = match (slot_def.ty, provided) {
        (SlotType::Any, Provided::Literal | Provided::Variable) => true,
        (SlotType::Any, Provided::Block(k)) => k.reports_value(),
        (SlotType::BooleanInput, Provided::Block(BlockKind::Boolean)) => true,
        (SlotType::BooleanInput, _) => false,
        (SlotType::Substack, _) => false,
    };
    if ok {
        Ok(())
    } else {
        Err(SlotCheckError::Mismatch { opcode: def.opcode, slot: slot.to_owned(), provided })
    }
}

pub struct Catalog {
    defs: Vec<BlockDef>,
    by_name: HashMap<&'static str, usize>,
}

impl Catalog {
    pub fn lookup(&self, opcode: &str) -> Option<&BlockDef> {
        self.by_name.get(opcode).map(|&i| &self.defs[i])
    }

    pub fn def(&self, opcode: Opcode) -> &BlockDef {
        &self.defs[opcode as usize]
    }

    pub fn opcode(&self, name: &str) -> Option<Opcode> {
        self.lookup(name).map(|d| d.opcode)
    }

    pub fn blocks(&self) -> &[BlockDef] {
        &self.defs
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }

    /// The JSON export served by `GET /catalog` and `blockdsa catalog`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Export<'a> {
            version: u32,
            blocks: &'a [BlockDef],
        }
        let mut s = serde_json::to_string_pretty(&Export { version: 1, blocks: &self.defs })
            .expect("catalog serializes");
        s.push('\n');
        s
    }

    /// Human block reference grouped by category.
    pub fn to_markdown(&self) -> String {
        use std::fmt::Write;
        let mut out = String::from("# Block reference\n");
        for cat in Category::ALL {
            let _ = write!(out, "\n## {}\n", cat.title());
            for def in self.defs.iter().filter(|d| d.category == cat) {
                let _ = write!(out, "\n### `{}`\n\n", def.opcode);
                let _ = writeln!(out, "> {}\n", def.text);
                let _ = writeln!(out, "- kind: {}", def.kind);
                if let Some(ds) = def.ds_kind {
                    let _ = writeln!(out, "- works with: {ds}");
                }
                if let Some(p) = def.produces {
                    let _ = writeln!(out, "- reports a new: {p}");
                }
                if def.origin == Origin::Added {
                    let _ = writeln!(out, "- origin: added");
                }
                let _ = writeln!(out, "\n{}", def.summary);
            }
        }
        out
    }
}

pub fn catalog_load() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let defs = builtin_defs();
        debug_assert!(defs.iter().enumerate().all(|(i, d)| d.opcode as usize == i));
        let by_name = defs.iter().enumerate().map(|(i, d)| (d.opcode.as_str(), i)).collect();
        Catalog { defs, by_name }
    })
}

pub fn catalog_lookup(opcode: &str) -> Option<&'static BlockDef> {
    catalog_load().lookup(opcode)
}

#[allow(clippy::too_many_arguments)]
fn def(
    opcode: Opcode,
    kind: BlockKind,
    text: &'static str,
    slots: &[SlotDef],
    category: Category,
    ds: Option<DsKind>,
    produces: Option<DsKind>,
    origin: Origin,
    summary: &'static str,
) -> BlockDef {
    BlockDef {
        opcode,
        kind,
        text,
        slots: slots.to_vec(),
        category,
        ds_kind: ds.map(DsKind::tag),
        produces: produces.map(DsKind::tag),
        origin,
        summary,
    }
}

fn builtin_defs() -> Vec<BlockDef> {
    use BlockKind::*;
    use Category::*;
    use Opcode as O;
    use Origin::{Added, Extension};
    const ARR: Option<DsKind> = Some(DsKind::Array);
    const SET: Option<DsKind> = Some(DsKind::Set);
    const DICT: Option<DsKind> = Some(DsKind::Dict);

    vec![
        def(O::CreateNewArray, Reporter, "create new array", &[], Arrays, None, ARR, Extension,
            "Creates an empty array and reports its id. Store it with `set [VARIABLE] to`."),
        def(O::AddToArray, Command, "add [ITEM] to Array [OBJ_ID]", &[any("OBJ_ID"), any("ITEM")], Arrays, ARR, None, Extension,
            "Appends an item to the end of the array. Duplicates are kept."),
        def(O::ItemOfArray, Reporter, "item [INDEX] of Array [OBJ_ID]", &[any("OBJ_ID"), any("INDEX")], Arrays, ARR, None, Added,
            "Reports the item at a 1-based position, or \"Index out of range\"."),
        def(O::LengthOfArray, Reporter, "length of Array [OBJ_ID]", &[any("OBJ_ID")], Arrays, ARR, None, Added,
            "Reports how many items the array holds."),
        def(O::SortArrayAscending, Command, "sort Array [OBJ_ID] in ascending order", &[any("OBJ_ID")], Algorithms, ARR, None, Extension,
            "Sorts the array smallest first (quicksort). Numbers come before words; words ignore case."),
        def(O::SortArrayDescending, Command, "sort Array [OBJ_ID] in descending order", &[any("OBJ_ID")], Algorithms, ARR, None, Extension,
            "Sorts the array largest first (quicksort)."),
        def(O::SearchInArray, Reporter, "where is [ITEM] in Array [OBJ_ID]?", &[any("OBJ_ID"), any("ITEM")], Algorithms, ARR, None, Extension,
            "Binary search. Reports the positions of every matching item, like \"2,4\", or \"not found\"."),
        def(O::CreateNewSet, Reporter, "create new set", &[], Sets, None, SET, Extension,
            "Creates an empty set and reports its id."),
        def(O::AddToSet, Command, "add [ELEMENT] to Set [OBJ_ID]", &[any("OBJ_ID"), any("ELEMENT")], Sets, SET, None, Extension,
            "Adds an element unless an equal one is already in the set."),
        def(O::IsSetEmpty, Boolean, "is set [OBJ_ID] empty?", &[any("OBJ_ID")], Sets, SET, None, Extension,
            "Answers yes or no."),
        def(O::CheckContainInSet, Reporter, "Is [ELEMENT] present in Set [OBJ_ID]?", &[any("OBJ_ID"), any("ELEMENT")], Sets, SET, None, Extension,
            "Answers yes or no."),
        def(O::UnionOfSets, Reporter, "Set [OBJ_ID] UNION Set [OBJ_ID2]", &[any("OBJ_ID"), any("OBJ_ID2")], Sets, SET, SET, Extension,
            "Reports a new set holding every element of either set."),
        def(O::IntersectionOfSets, Reporter, "Set [OBJ_ID] INTERSECTION Set [OBJ_ID2]", &[any("OBJ_ID"), any("OBJ_ID2")], Sets, SET, SET, Extension,
            "Reports a new set holding the elements both sets share."),
        def(O::DifferenceOfSets, Reporter, "Set [OBJ_ID] DIFFERENCE Set [OBJ_ID2]", &[any("OBJ_ID"), any("OBJ_ID2")], Sets, SET, SET, Extension,
            "Reports a new set holding the elements of the first set that are not in the second."),
        def(O::SizeOfSet, Reporter, "how many elements are in Set [OBJ_ID]?", &[any("OBJ_ID")], Sets, SET, None, Added,
            "Reports the number of elements."),
        def(O::CreateNewDictionary, Reporter, "create new dictionary", &[], Dictionaries, None, DICT, Extension,
            "Creates an empty dictionary and reports its id."),
        def(O::AddKeyValueToDictionary, Command, "add key [KEY] and value [VALUE] to Dictionary [OBJ_ID]", &[any("OBJ_ID"), any("KEY"), any("VALUE")], Dictionaries, DICT, None, Extension,
            "Stores a key-value pair. An existing key gets its value replaced."),
        def(O::GetValueForKey, Reporter, "what is the value for key [KEY] in Dictionary [OBJ_ID]?", &[any("OBJ_ID"), any("KEY")], Dictionaries, DICT, None, Extension,
            "Reports the value stored for the key, or \"Key not found\"."),
        def(O::ContainsKeyInDictionary, Boolean, "does Dictionary [OBJ_ID] have key [KEY]?", &[any("OBJ_ID"), any("KEY")], Dictionaries, DICT, None, Extension,
            "Answers yes or no."),
        def(O::RemoveKeyFromDictionary, Command, "remove key [KEY] from Dictionary [OBJ_ID]", &[any("OBJ_ID"), any("KEY")], Dictionaries, DICT, None, Added,
            "Removes the key and its value. Nothing happens if the key is missing."),
        def(O::SizeOfDictionary, Reporter, "how many keys are in Dictionary [OBJ_ID]?", &[any("OBJ_ID")], Dictionaries, DICT, None, Added,
            "Reports the number of key-value pairs."),
        def(O::ForEachElementIn, C, "for each element in [OBJ_ID] [SUBSTACK]", &[any("OBJ_ID"), substack("SUBSTACK")], Control, None, None, Extension,
            "Runs the inner blocks once per array item, set element, or dictionary key."),
        def(O::CurrentElement, Reporter, "current element", &[], Control, None, None, Added,
            "The element of the innermost for-each loop."),
        def(O::WhenStarted, Hat, "when started", &[], Control, None, None, Added,
            "Starts a script."),
        def(O::Ask, Command, "ask [QUESTION] and wait", &[any("QUESTION")], Io, None, None, Extension,
            "Asks a question and waits for the learner's answer."),
        def(O::Answer, Reporter, "answer", &[], Io, None, None, Extension,
            "The most recent answer."),
        def(O::Say, Command, "say [MESSAGE]", &[any("MESSAGE")], Io, None, None, Extension,
            "Shows a message."),
        def(O::SayForSecs, Command, "say [MESSAGE] for [SECS] seconds", &[any("MESSAGE"), any("SECS")], Io, None, None, Extension,
            "Shows a message for a number of seconds."),
        def(O::SetVariable, Command, "set [VARIABLE] to [VALUE]", &[any("VARIABLE"), any("VALUE")], Variables, None, None, Extension,
            "Stores a value in a variable."),
        def(O::ChangeVariable, Command, "change [VARIABLE] by [VALUE]", &[any("VARIABLE"), any("VALUE")], Variables, None, None, Added,
            "Adds a number to a variable. A non-number counts as 0."),
        def(O::Repeat, C, "repeat [TIMES] [SUBSTACK]", &[any("TIMES"), substack("SUBSTACK")], Control, None, None, Extension,
            "Runs the inner blocks a number of times."),
        def(O::RepeatUntil, C, "repeat until [CONDITION] [SUBSTACK]", &[boolean("CONDITION"), substack("SUBSTACK")], Control, None, None, Added,
            "Runs the inner blocks until the condition is true."),
        def(O::Forever, C, "forever [SUBSTACK]", &[substack("SUBSTACK")], Control, None, None, Extension,
            "Runs the inner blocks over and over."),
        def(O::IfThen, C, "if [CONDITION] then [SUBSTACK]", &[boolean("CONDITION"), substack("SUBSTACK")], Control, None, None, Added,
            "Runs the inner blocks when the condition is true."),
        def(O::IfElse, C, "if [CONDITION] then [SUBSTACK] else [SUBSTACK2]", &[boolean("CONDITION"), substack("SUBSTACK"), substack("SUBSTACK2")], Control, None, None, Added,
            "Runs the first inner blocks when the condition is true, otherwise the second."),
        def(O::Equals, Boolean, "[OPERAND1] = [OPERAND2]", &[any("OPERAND1"), any("OPERAND2")], Operators, None, None, Added,
            "Numbers compare by value, words ignore case."),
        def(O::LessThan, Boolean, "[OPERAND1] < [OPERAND2]", &[any("OPERAND1"), any("OPERAND2")], Operators, None, None, Added,
            "Same order the sort blocks use."),
        def(O::GreaterThan, Boolean, "[OPERAND1] > [OPERAND2]", &[any("OPERAND1"), any("OPERAND2")], Operators, None, None, Added,
            "Same order the sort blocks use."),
        def(O::AndOp, Boolean, "[OPERAND1] and [OPERAND2]", &[boolean("OPERAND1"), boolean("OPERAND2")], Operators, None, None, Added,
            "Yes when both are yes."),
        def(O::OrOp, Boolean, "[OPERAND1] or [OPERAND2]", &[boolean("OPERAND1"), boolean("OPERAND2")], Operators, None, None, Added,
            "Yes when either is yes."),
        def(O::NotOp, Boolean, "not [OPERAND]", &[boolean("OPERAND")], Operators, None, None, Added,
            "Flips yes and no."),
        def(O::JoinText, Reporter, "join [STRING1] [STRING2]", &[any("STRING1"), any("STRING2")], Operators, None, None, Added,
            "Glues two pieces of text together."),
        def(O::StringContains, Boolean, "[STRING1] contains [STRING2]?", &[any("STRING1"), any("STRING2")], Operators, None, None, Extension,
            "Text matching, ignoring case. It looks at letters, not inside data structures."),
        def(O::Add, Reporter, "[NUM1] + [NUM2]", &[any("NUM1"), any("NUM2")], Operators, None, None, Added,
            "Adds two numbers."),
        def(O::Subtract, Reporter, "[NUM1] - [NUM2]", &[any("NUM1"), any("NUM2")], Operators, None, None, Added,
            "Subtracts the second number from the first."),
        def(O::Multiply, Reporter, "[NUM1] * [NUM2]", &[any("NUM1"), any("NUM2")], Operators, None, None, Added,
            "Multiplies two numbers."),
        def(O::Divide, Reporter, "[NUM1] / [NUM2]", &[any("NUM1"), any("NUM2")], Operators, None, None, Added,
            "Divides the first number by the second. Dividing by zero reports an error."),
    ]
}
