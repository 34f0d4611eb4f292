//! Deterministic execution of block programs.
//!
//! Scripts run one after another in file order, each to completion. Every
//! block execution costs one step: a command, a reporter evaluation, or a
//! loop's check before each iteration. Literals and variable reads are free.
//! A block evaluates its inputs first and is charged its own step after them.
//!
//! The machine keeps an explicit frame stack instead of recursing through
//! C blocks, so it can stop at an `ask` with no queued answer and resume
//! later. That is the only suspension point.

mod program;
mod session;

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;

use crate::catalog::Opcode;
use crate::ds::{
    compare, format_number, DsError, DsKind, ObjectId, Registry, SetOp, SortDirection, Value,
};
use crate::project::Project;

pub use program::{Body, Call, Expr, Node, Program, Stmt};
pub use session::{Event, EventKind, SessionResult, Status};

pub const DEFAULT_STEP_BUDGET: u64 = 100_000;

/// Runs a project to completion with all answers supplied up front.
pub fn run(project: &Project, inputs: &[String], seed: u64, step_budget: u64) -> SessionResult {
    let mut m = Machine::new(project, seed, step_budget);
    for i in inputs {
        m.push_input(i.clone());
    }
    if m.resume() == Progress::NeedsInput {
        m.halt(Status::InputExhausted);
    }
    m.result()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Progress {
    Finished(Status),
    /// Stopped at an `ask` with no answer queued.
    NeedsInput,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotWaiting;

impl fmt::Display for NotWaiting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("the program is not waiting for an answer")
    }
}

impl std::error::Error for NotWaiting {}

enum Interrupt {
    Halt(Status),
    NeedInput,
}

enum Frame {
    Seq { body: Body, pc: usize },
    Repeat { body: Body, remaining: u64 },
    Until { owner: Body, index: usize },
    Forever { body: Body },
    ForEach { body: Body, elements: Vec<Value>, pos: usize },
}

/// Why a reporter failed, and the value it reports instead.
struct Fault {
    message: String,
    value: Value,
}

impl From<DsError> for Fault {
    fn from(e: DsError) -> Self {
        Fault { value: Value::new(e.message.clone()), message: e.message }
    }
}

pub struct Machine {
    program: Arc<Program>,
    next_script: usize,
    frames: Vec<Frame>,
    variables: IndexMap<String, Value>,
    registry: Registry,
    inputs: VecDeque<String>,
    answer: Value,
    events: Vec<Event>,
    steps_used: u64,
    step_budget: u64,
    waiting: bool,
    finished: Option<Status>,
}

impl Machine {
    pub fn new(project: &Project, seed: u64, step_budget: u64) -> Self {
        Self::from_program(Arc::new(Program::compile(project)), seed, step_budget)
    }

    pub fn from_program(program: Arc<Program>, seed: u64, step_budget: u64) -> Self {
        let variables = program.variables.iter().map(|v| (v.clone(), Value::empty())).collect();
        Machine {
            program,
            next_script: 0,
            frames: Vec::new(),
            variables,
            registry: Registry::new(seed),
            inputs: VecDeque::new(),
            answer: Value::empty(),
            events: Vec::new(),
            steps_used: 0,
            step_budget,
            waiting: false,
            finished: None,
        }
    }

    pub fn push_input(&mut self, answer: impl Into<String>) {
        self.inputs.push_back(answer.into());
    }

    pub fn is_waiting(&self) -> bool {
        self.waiting && self.finished.is_none()
    }

    pub fn status(&self) -> Option<Status> {
        self.finished
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn variables(&self) -> &IndexMap<String, Value> {
        &self.variables
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn steps_used(&self) -> u64 {
        self.steps_used
    }

    /// Delivers the answer to a pending `ask` and keeps running.
    pub fn answer(&mut self, text: impl Into<String>) -> Result<Progress, NotWaiting> {
        if !self.is_waiting() {
            return Err(NotWaiting);
        }
        self.push_input(text);
        Ok(self.resume())
    }

    /// Runs until the program finishes or needs an answer it does not have.
    pub fn resume(&mut self) -> Progress {
        if let Some(status) = self.finished {
            return Progress::Finished(status);
        }
        if self.waiting {
            match self.inputs.pop_front() {
                Some(a) => {
                    self.answer = Value::new(a);
                    self.waiting = false;
                }
                None => return Progress::NeedsInput,
            }
        }
        match self.run_frames() {
            Ok(()) => {
                self.finished = Some(Status::Completed);
                Progress::Finished(Status::Completed)
            }
            Err(Interrupt::NeedInput) => Progress::NeedsInput,
            Err(Interrupt::Halt(status)) => {
                self.halt(status);
                Progress::Finished(status)
            }
        }
    }

    /// Stops the run with `status`, recording a HALT event.
    pub fn halt(&mut self, status: Status) {
        if self.finished.is_some() {
            return;
        }
        let text = match status {
            Status::Completed => return self.finished = Some(status),
            Status::BudgetExceeded => "Step budget exceeded",
            Status::InputExhausted => "No more answers to give",
        };
        self.events.push(Event {
            kind: EventKind::Halt,
            text: text.to_owned(),
            duration: None,
            step_index: self.steps_used + 1,
        });
        self.frames.clear();
        self.finished = Some(status);
    }

    pub fn result(&self) -> SessionResult {
        SessionResult {
            status: self.finished.unwrap_or(Status::Completed),
            steps_used: self.steps_used,
            events: self.events.clone(),
            variables: self.variables.clone(),
            registry: self.registry.snapshot(),
        }
    }

    fn charge(&mut self) -> Result<(), Interrupt> {
        if self.steps_used >= self.step_budget {
            return Err(Interrupt::Halt(Status::BudgetExceeded));
        }
        self.steps_used += 1;
        Ok(())
    }

    fn emit(&mut self, kind: EventKind, text: impl Into<String>, duration: Option<f64>) {
        debug_assert!(self.events.last().is_none_or(|e| e.step_index < self.steps_used));
        self.events.push(Event { kind, text: text.into(), duration, step_index: self.steps_used });
    }

    fn error(&mut self, message: impl Into<String>) {
        self.emit(EventKind::RuntimeError, message, None);
    }

    fn run_frames(&mut self) -> Result<(), Interrupt> {
        loop {
            let Some(top) = self.frames.last_mut() else {
                if self.next_script == self.program.scripts.len() {
                    return Ok(());
                }
                let body = self.program.scripts[self.next_script].clone();
                self.next_script += 1;
                self.frames.push(Frame::Seq { body, pc: 0 });
                continue;
            };
            match top {
                Frame::Seq { body, pc } => {
                    if *pc == body.len() {
                        self.frames.pop();
                        continue;
                    }
                    let (body, index) = (body.clone(), *pc);
                    *pc += 1;
                    self.exec_node(&body, index)?;
                }
                Frame::Repeat { body, remaining } => {
                    let body = body.clone();
                    let left = *remaining;
                    if left > 0 {
                        *remaining -= 1;
                    }
                    self.charge()?;
                    if left == 0 {
                        self.frames.pop();
                    } else {
                        self.frames.push(Frame::Seq { body, pc: 0 });
                    }
                }
                Frame::Until { owner, index } => {
                    let (owner, index) = (owner.clone(), *index);
                    let Node::Stmt(stmt) = &owner[index] else { unreachable!("loops are statements") };
                    let done = self.eval_arg(&stmt.call, 0)?.is_truthy();
                    self.charge()?;
                    if done {
                        self.frames.pop();
                    } else {
                        self.frames.push(Frame::Seq { body: stmt.body.clone(), pc: 0 });
                    }
                }
                Frame::Forever { body } => {
                    let body = body.clone();
                    self.charge()?;
                    self.frames.push(Frame::Seq { body, pc: 0 });
                }
                Frame::ForEach { body, elements, pos } => {
                    let more = *pos < elements.len();
                    if more {
                        *pos += 1;
                    }
                    let body = body.clone();
                    self.charge()?;
                    if more {
                        self.frames.push(Frame::Seq { body, pc: 0 });
                    } else {
                        self.frames.pop();
                    }
                }
            }
        }
    }

    fn exec_node(&mut self, owner: &Body, index: usize) -> Result<(), Interrupt> {
        match &owner[index] {
            Node::Unknown(op) => {
                self.charge()?;
                self.error(format!("Unknown block {op}"));
                Ok(())
            }
            Node::Stmt(stmt) => self.exec_stmt(stmt, owner, index),
        }
    }

    fn exec_stmt(&mut self, stmt: &Stmt, owner: &Body, index: usize) -> Result<(), Interrupt> {
        let call = &stmt.call;
        match call.op {
            Opcode::WhenStarted => self.charge(),
            Opcode::SetVariable | Opcode::ChangeVariable => {
                let name = match call.arg(0) {
                    Some(Expr::Var(n)) => n.clone(),
                    _ => self.eval_arg(call, 0)?.into_string(),
                };
                let value = self.eval_arg(call, 1)?;
                self.charge()?;
                let next = if call.op == Opcode::SetVariable {
                    value
                } else {
                    let current = self.variables.get(&name).map(Value::to_number_or_zero).unwrap_or(0.0);
                    Value::from_number(current + value.to_number_or_zero())
                };
                self.variables.insert(name, next);
                Ok(())
            }
            Opcode::Ask => {
                let question = self.eval_arg(call, 0)?;
                self.charge()?;
                self.emit(EventKind::AskPrompt, question.into_string(), None);
                match self.inputs.pop_front() {
                    Some(a) => {
                        self.answer = Value::new(a);
                        Ok(())
                    }
                    None => {
                        self.waiting = true;
                        Err(Interrupt::NeedInput)
                    }
                }
            }
            Opcode::Say => {
                let msg = self.eval_arg(call, 0)?;
                self.charge()?;
                self.emit(EventKind::Say, msg.into_string(), None);
                Ok(())
            }
            Opcode::SayForSecs => {
                let msg = self.eval_arg(call, 0)?;
                let secs = self.eval_arg(call, 1)?;
                self.charge()?;
                self.emit(EventKind::SayForSecs, msg.into_string(), Some(secs.to_number_or_zero()));
                Ok(())
            }
            Opcode::AddToArray
            | Opcode::SortArrayAscending
            | Opcode::SortArrayDescending
            | Opcode::AddToSet
            | Opcode::AddKeyValueToDictionary
            | Opcode::RemoveKeyFromDictionary => {
                let args = self.eval_args(call)?;
                self.charge()?;
                if let Err(e) = self.ds_command(call.op, &args) {
                    self.error(e.message);
                }
                Ok(())
            }
            Opcode::Repeat => {
                let times = self.eval_arg(call, 0)?;
                self.charge()?;
                let n = times.as_number().map(f64::round).unwrap_or(0.0);
                let remaining = if n >= 1.0 { n.min(u64::MAX as f64) as u64 } else { 0 };
                self.frames.push(Frame::Repeat { body: stmt.body.clone(), remaining });
                Ok(())
            }
            Opcode::RepeatUntil => {
                self.charge()?;
                self.frames.push(Frame::Until { owner: owner.clone(), index });
                Ok(())
            }
            Opcode::Forever => {
                self.charge()?;
                self.frames.push(Frame::Forever { body: stmt.body.clone() });
                Ok(())
            }
            Opcode::IfThen | Opcode::IfElse => {
                let cond = self.eval_arg(call, 0)?.is_truthy();
                self.charge()?;
                let branch = if cond { &stmt.body } else { &stmt.else_body };
                if !branch.is_empty() {
                    self.frames.push(Frame::Seq { body: branch.clone(), pc: 0 });
                }
                Ok(())
            }
            Opcode::ForEachElementIn => {
                let id = self.eval_arg(call, 0)?;
                self.charge()?;
                match self.registry.get(&id) {
                    Some(obj) => {
                        let elements = obj.elements_snapshot();
                        self.frames.push(Frame::ForEach { body: stmt.body.clone(), elements, pos: 0 });
                    }
                    None => {
                        let message = match ObjectId::parse(id.as_str()) {
                            Some((kind, _)) => kind.invalid_object_message(),
                            None => "Invalid data structure".to_owned(),
                        };
                        self.error(message);
                    }
                }
                Ok(())
            }
            // A reporter dropped into a stack is evaluated and its value discarded.
            _ => self.eval_call(call).map(drop),
        }
    }

    fn ds_command(&mut self, op: Opcode, args: &[Value]) -> Result<(), DsError> {
        let id = &args[0];
        match op {
            Opcode::AddToArray => self.registry.array_mut(id)?.add(args[1].clone()),
            Opcode::SortArrayAscending => self.registry.array_mut(id)?.sort(SortDirection::Ascending),
            Opcode::SortArrayDescending => self.registry.array_mut(id)?.sort(SortDirection::Descending),
            Opcode::AddToSet => self.registry.set_mut(id)?.add(args[1].clone()),
            Opcode::AddKeyValueToDictionary => self.registry.dict_mut(id)?.put(args[1].clone(), args[2].clone()),
            Opcode::RemoveKeyFromDictionary => self.registry.dict_mut(id)?.remove(&args[1]),
            _ => unreachable!("not a data-structure command: {op}"),
        }
        Ok(())
    }

    fn eval_arg(&mut self, call: &Call, i: usize) -> Result<Value, Interrupt> {
        match call.arg(i) {
            Some(e) => self.eval(e),
            None => Ok(Value::empty()),
        }
    }

    fn eval_args(&mut self, call: &Call) -> Result<Vec<Value>, Interrupt> {
        call.args.iter().map(|e| self.eval(e)).collect()
    }

    fn eval(&mut self, expr: &Expr) -> Result<Value, Interrupt> {
        match expr {
            Expr::Literal(v) => Ok(v.clone()),
            Expr::Var(name) => match self.variables.get(name) {
                Some(v) => Ok(v.clone()),
                None => {
                    self.charge()?;
                    self.error(format!("Unknown variable {name}"));
                    Ok(Value::empty())
                }
            },
            Expr::Unknown(op) => {
                self.charge()?;
                self.error(format!("Unknown block {op}"));
                Ok(Value::empty())
            }
            Expr::Call(call) => self.eval_call(call),
        }
    }

    fn eval_call(&mut self, call: &Call) -> Result<Value, Interrupt> {
        if !call.kind.reports_value() {
            self.charge()?;
            self.error(format!("The {} block does not report a value", call.op));
            return Ok(Value::empty());
        }
        let args = self.eval_args(call)?;
        self.charge()?;
        match self.report(call.op, &args) {
            Ok(v) => Ok(v),
            Err(fault) => {
                self.error(fault.message);
                Ok(fault.value)
            }
        }
    }

    fn current_element(&self) -> Option<Value> {
        self.frames.iter().rev().find_map(|f| match f {
            Frame::ForEach { elements, pos, .. } if *pos > 0 => elements.get(pos - 1).cloned(),
            _ => None,
        })
    }

    fn report(&mut self, op: Opcode, args: &[Value]) -> Result<Value, Fault> {
        let arg = |i: usize| args.get(i).cloned().unwrap_or_default();
        let reg = &mut self.registry;
        let v = match op {
            Opcode::CreateNewArray => reg.create(DsKind::Array).to_value(),
            Opcode::CreateNewSet => reg.create(DsKind::Set).to_value(),
            Opcode::CreateNewDictionary => reg.create(DsKind::Dict).to_value(),
            Opcode::ItemOfArray => reg.array(&arg(0))?.item_at(&arg(1))?,
            Opcode::LengthOfArray => reg.array(&arg(0))?.length(),
            Opcode::SearchInArray => reg.array(&arg(0))?.search(&arg(1)),
            Opcode::IsSetEmpty => Value::from_bool(reg.set(&arg(0))?.is_empty()),
            Opcode::CheckContainInSet => Value::from_bool(reg.set(&arg(0))?.contains(&arg(1))),
            Opcode::UnionOfSets => reg.set_binary_op(SetOp::Union, &arg(0), &arg(1))?.to_value(),
            Opcode::IntersectionOfSets => reg.set_binary_op(SetOp::Intersection, &arg(0), &arg(1))?.to_value(),
            Opcode::DifferenceOfSets => reg.set_binary_op(SetOp::Difference, &arg(0), &arg(1))?.to_value(),
            Opcode::SizeOfSet => reg.set(&arg(0))?.size(),
            Opcode::GetValueForKey => reg.dict(&arg(0))?.get(&arg(1))?,
            Opcode::ContainsKeyInDictionary => Value::from_bool(reg.dict(&arg(0))?.has_key(&arg(1))),
            Opcode::SizeOfDictionary => reg.dict(&arg(0))?.size(),
            Opcode::CurrentElement => self.current_element().ok_or_else(|| Fault {
                message: "current element can only be used inside for each element in".to_owned(),
                value: Value::empty(),
            })?,
            Opcode::Answer => self.answer.clone(),
            Opcode::Equals => Value::from_bool(compare(&arg(0), &arg(1)).is_eq()),
            Opcode::LessThan => Value::from_bool(compare(&arg(0), &arg(1)).is_lt()),
            Opcode::GreaterThan => Value::from_bool(compare(&arg(0), &arg(1)).is_gt()),
            Opcode::AndOp => Value::from_bool(arg(0).is_truthy() && arg(1).is_truthy()),
            Opcode::OrOp => Value::from_bool(arg(0).is_truthy() || arg(1).is_truthy()),
            Opcode::NotOp => Value::from_bool(!arg(0).is_truthy()),
            Opcode::JoinText => Value::new(format!("{}{}", arg(0), arg(1))),
            Opcode::StringContains => {
                let hay = arg(0).as_str().to_lowercase();
                Value::from_bool(hay.contains(&arg(1).as_str().to_lowercase()))
            }
            Opcode::Add | Opcode::Subtract | Opcode::Multiply | Opcode::Divide => {
                let (a, b) = (arg(0).to_number_or_zero(), arg(1).to_number_or_zero());
                let n = match op {
                    Opcode::Add => a + b,
                    Opcode::Subtract => a - b,
                    Opcode::Multiply => a * b,
                    _ if b == 0.0 => {
                        return Err(Fault { message: "Division by zero".to_owned(), value: Value::new("0") })
                    }
                    _ => a / b,
                };
                Value::new(format_number(n))
            }
            other => unreachable!("{other} is not a reporter"),
        };
        Ok(v)
    }
}

#[cfg(test)]
mod tests;
