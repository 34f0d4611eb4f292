//! Lowering of a parsed [`Project`] into opcode-resolved statement trees.

use std::sync::Arc;

use crate::catalog::{catalog_load, BlockKind, Catalog, Opcode};
use crate::ds::Value;
use crate::project::{BlockInstance, Input, Project, Script};

#[derive(Debug)]
pub enum Expr {
    Literal(Value),
    Var(String),
    Call(Call),
    /// Block whose opcode is not in the catalog.
    Unknown(String),
}

/// A block with its inputs in catalog slot order.
#[derive(Debug)]
pub struct Call {
    pub op: Opcode,
    pub kind: BlockKind,
    pub args: Vec<Expr>,
}

impl Call {
    pub fn arg(&self, i: usize) -> Option<&Expr> {
        self.args.get(i)
    }
}

#[derive(Debug)]
pub struct Stmt {
    pub call: Call,
    pub body: Body,
    pub else_body: Body,
}

pub type Body = Arc<[Node]>;

#[derive(Debug)]
pub enum Node {
    Stmt(Stmt),
    Unknown(String),
}

#[derive(Debug)]
pub struct Program {
    pub variables: Vec<String>,
    pub scripts: Vec<Body>,
}

impl Program {
    pub fn compile(project: &Project) -> Program {
        let catalog = catalog_load();
        let scripts = project
            .scripts
            .iter()
            .map(|s| s.blocks.iter().map(|b| compile_node(catalog, b)).collect())
            .collect();
        Program { variables: project.variables.clone(), scripts }
    }
}

fn compile_node(catalog: &Catalog, b: &BlockInstance) -> Node {
    match compile_call(catalog, b) {
        Some(call) => Node::Stmt(Stmt {
            call,
            body: compile_body(catalog, b.substack.as_ref()),
            else_body: compile_body(catalog, b.substack2.as_ref()),
        }),
        None => Node::Unknown(b.opcode.clone()),
    }
}

fn compile_body(catalog: &Catalog, script: Option<&Script>) -> Body {
    match script {
        Some(script) => script.blocks.iter().map(|b| compile_node(catalog, b)).collect(),
        None => Arc::from(Vec::new()),
    }
}

fn compile_call(catalog: &Catalog, b: &BlockInstance) -> Option<Call> {
    let def = catalog.lookup(&b.opcode)?;
    let args = def
        .input_slots()
        .map(|slot| match b.inputs.get(slot.name) {
            Some(input) => compile_expr(catalog, input),
            None => Expr::Literal(Value::empty()),
        })
        .collect();
    Some(Call { op: def.opcode, kind: def.kind, args })
}

fn compile_expr(catalog: &Catalog, input: &Input) -> Expr {
    match input {
        Input::Literal(t) => Expr::Literal(Value::new(t.clone())),
        Input::Variable(n) => Expr::Var(n.clone()),
        Input::Block(b) => match compile_call(catalog, b) {
            Some(call) => Expr::Call(call),
            None => Expr::Unknown(b.opcode.clone()),
        },
    }
}
