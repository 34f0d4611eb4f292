//! Random project generation for fuzzing and property tests.
//!
//! Generated projects pass `validate_project` with no diagnostics. Object
//! ids only ever live in variables named after their family (`arr0`,
//! `set1`, ...), so the static family checks never fire; scalar variables
//! hold everything else.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::catalog::{catalog_load, BlockDef, BlockKind, Opcode, SlotType};
use crate::ds::DsKind;
use crate::project::{BlockInstance, Input, Project, Script};

#[derive(Debug, Clone, Copy)]
pub struct GenConfig {
    /// Deepest nesting of C blocks and reporter inputs.
    pub max_depth: usize,
    /// Upper bound on block instances in the whole project.
    pub max_blocks: usize,
    pub max_scripts: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { max_depth: 6, max_blocks: 500, max_scripts: 3 }
    }
}

const SCALARS: [&str; 3] = ["x", "y", "word"];

const WORDS: &[&str] = &[
    "", "0", "1", "2", "3", "-1", "2.5", "1e3", "10", "100", "apple", "Apple", "banana", "yes", "no", "fig",
    "set-00000000", "array-7b1dcdaf", "Key not found", " 7 ", "NaN",
];

fn family_var(kind: DsKind, i: usize) -> String {
    let prefix = match kind {
        DsKind::Array => "arr",
        DsKind::Set => "set",
        DsKind::Dict => "dict",
    };
    format!("{prefix}{i}")
}

pub fn random_project<R: Rng + ?Sized>(rng: &mut R, cfg: GenConfig) -> Project {
    let mut g = Gen { rng, cfg, blocks: 0 };
    let mut variables: Vec<String> = SCALARS.iter().map(|s| s.to_string()).collect();
    for kind in DsKind::ALL {
        variables.extend((0..2).map(|i| family_var(kind, i)));
    }
    let n = g.rng.random_range(1..=cfg.max_scripts);
    let mut scripts = Vec::with_capacity(n);
    for _ in 0..n {
        let mut blocks = Vec::new();
        if g.rng.random_bool(0.3) {
            blocks.push(BlockInstance::new("whenStarted"));
            g.blocks += 1;
        }
        // Give every family variable a live object up front most of the time.
        for kind in DsKind::ALL {
            for i in 0..2 {
                if g.rng.random_bool(0.7) && g.room(2) {
                    blocks.push(g.assign_fresh(kind, i));
                }
            }
        }
        blocks.extend(g.stack(1));
        scripts.push(Script::new(blocks));
    }
    Project { variables, scripts, ..Project::default() }
}

struct Gen<'a, R: ?Sized> {
    rng: &'a mut R,
    cfg: GenConfig,
    blocks: usize,
}

impl<R: Rng + ?Sized> Gen<'_, R> {
    /// Leaves headroom for the boolean leaves a block must still receive
    /// once the budget is spent.
    fn room(&self, n: usize) -> bool {
        self.blocks + n + 8 <= self.cfg.max_blocks
    }

    fn stack(&mut self, depth: usize) -> Vec<BlockInstance> {
        let len = self.rng.random_range(0..=6);
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            match self.statement(depth) {
                Some(b) => out.push(b),
                None => break,
            }
        }
        out
    }

    fn assign_fresh(&mut self, kind: DsKind, i: usize) -> BlockInstance {
        self.blocks += 2;
        let create = match kind {
            DsKind::Array => "createNewArray",
            DsKind::Set => "createNewSet",
            DsKind::Dict => "createNewDictionary",
        };
        BlockInstance::new("setVariable")
            .with_input("VARIABLE", Input::variable(family_var(kind, i)))
            .with_input("VALUE", Input::block(BlockInstance::new(create)))
    }

    fn statement(&mut self, depth: usize) -> Option<BlockInstance> {
        if !self.room(1) {
            return None;
        }
        let cat = catalog_load();
        let stackable: Vec<&BlockDef> =
            cat.blocks().iter().filter(|d| matches!(d.kind, BlockKind::Command | BlockKind::C)).collect();
        let def = *stackable.choose(self.rng)?;
        let nest = depth < self.cfg.max_depth;
        match def.opcode {
            Opcode::SetVariable => {
                if nest && self.rng.random_bool(0.3) && self.room(2) {
                    let kind = *DsKind::ALL.choose(self.rng)?;
                    if kind == DsKind::Set && self.rng.random_bool(0.5) && self.room(6) {
                        self.blocks += 2;
                        let op = ["unionOfSets", "intersectionOfSets", "differenceOfSets"].choose(self.rng)?;
                        let (a, b) = (self.family_ref(DsKind::Set), self.family_ref(DsKind::Set));
                        let call = BlockInstance::new(*op).with_input("OBJ_ID", a).with_input("OBJ_ID2", b);
                        let target = family_var(DsKind::Set, self.rng.random_range(0..2));
                        return Some(
                            BlockInstance::new("setVariable")
                                .with_input("VARIABLE", Input::variable(target))
                                .with_input("VALUE", Input::block(call)),
                        );
                    }
                    let i = self.rng.random_range(0..2);
                    return Some(self.assign_fresh(kind, i));
                }
                self.blocks += 1;
                let value = self.scalar(depth + 1);
                Some(
                    BlockInstance::new("setVariable")
                        .with_input("VARIABLE", Input::variable(*SCALARS.choose(self.rng)?))
                        .with_input("VALUE", value),
                )
            }
            Opcode::ChangeVariable => {
                self.blocks += 1;
                let value = self.scalar(depth + 1);
                Some(
                    BlockInstance::new("changeVariable")
                        .with_input("VARIABLE", Input::variable(*SCALARS.choose(self.rng)?))
                        .with_input("VALUE", value),
                )
            }
            _ if def.kind == BlockKind::C && !nest => None,
            // Forever never finishes; keep it rare so most runs reach the end.
            Opcode::Forever if self.rng.random_bool(0.9) => self.statement(depth),
            _ => {
                self.blocks += 1;
                let mut b = self.fill_inputs(def, depth);
                if def.kind == BlockKind::C {
                    b = b.with_substack(self.stack(depth + 1));
                    if def.has_substack("SUBSTACK2") {
                        b = b.with_substack2(self.stack(depth + 1));
                    }
                }
                Some(b)
            }
        }
    }

    fn fill_inputs(&mut self, def: &BlockDef, depth: usize) -> BlockInstance {
        let mut b = BlockInstance::new(def.opcode.as_str());
        for slot in def.input_slots() {
            let input = match slot.ty {
                SlotType::BooleanInput => self.boolean(depth + 1),
                _ if slot.name.starts_with("OBJ_ID") => match def.ds_family() {
                    Some(kind) => self.family_ref(kind),
                    None => self.any_object_ref(),
                },
                SlotType::Any => self.scalar(depth + 1),
                SlotType::Substack => continue,
            };
            b = b.with_input(slot.name, input);
        }
        b
    }

    fn family_ref(&mut self, kind: DsKind) -> Input {
        match self.rng.random_range(0..10) {
            0 => Input::literal(*WORDS.choose(self.rng).unwrap()),
            1 => Input::variable(*SCALARS.choose(self.rng).unwrap()),
            _ => Input::variable(family_var(kind, self.rng.random_range(0..2))),
        }
    }

    fn any_object_ref(&mut self) -> Input {
        let kind = *DsKind::ALL.choose(self.rng).unwrap();
        self.family_ref(kind)
    }

    fn reporter_pool(&self, boolean: bool) -> Vec<&'static BlockDef> {
        catalog_load()
            .blocks()
            .iter()
            .filter(|d| if boolean { d.kind == BlockKind::Boolean } else { d.kind.reports_value() })
            .filter(|d| d.produced_family().is_none())
            .collect()
    }

    fn scalar(&mut self, depth: usize) -> Input {
        let roll = self.rng.random_range(0..10);
        if roll < 4 || depth >= self.cfg.max_depth || !self.room(1) {
            return Input::literal(*WORDS.choose(self.rng).unwrap());
        }
        if roll < 6 {
            return Input::variable(*SCALARS.choose(self.rng).unwrap());
        }
        let pool = self.reporter_pool(false);
        let def = *pool.choose(self.rng).unwrap();
        self.blocks += 1;
        Input::block(self.fill_inputs(def, depth))
    }

    fn boolean(&mut self, depth: usize) -> Input {
        let pool = self.reporter_pool(true);
        let def = *pool.choose(self.rng).unwrap();
        self.blocks += 1;
        if depth >= self.cfg.max_depth || !self.room(1) {
            // Leaf boolean: a comparison of two literals.
            let w = || Input::literal("1");
            return Input::block(BlockInstance::new("equals").with_input("OPERAND1", w()).with_input("OPERAND2", w()));
        }
        Input::block(self.fill_inputs(def, depth))
    }
}

/// Total block instances, counting nested inputs and substacks.
pub fn count_blocks(p: &Project) -> usize {
    fn block(b: &BlockInstance) -> usize {
        1 + b
            .inputs
            .values()
            .map(|i| match i {
                Input::Block(inner) => block(inner),
                _ => 0,
            })
            .sum::<usize>()
            + b.substack.iter().chain(&b.substack2).map(|s| s.blocks.iter().map(block).sum::<usize>()).sum::<usize>()
    }
    p.scripts.iter().flat_map(|s| &s.blocks).map(block).sum()
}

/// Deepest nesting of C-block bodies and reporter inputs.
pub fn max_depth(p: &Project) -> usize {
    fn block(b: &BlockInstance) -> usize {
        let inputs = b.inputs.values().map(|i| match i {
            Input::Block(inner) => block(inner),
            _ => 0,
        });
        let subs = b.substack.iter().chain(&b.substack2).flat_map(|s| s.blocks.iter().map(block));
        1 + inputs.chain(subs).max().unwrap_or(0)
    }
    p.scripts.iter().flat_map(|s| &s.blocks).map(block).max().unwrap_or(0)
}
