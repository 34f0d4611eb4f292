use super::*;
use crate::project::{BlockInstance as B, Input, Project, Script};

fn lit(s: &str) -> Input {
    Input::literal(s)
}

fn var(s: &str) -> Input {
    Input::variable(s)
}

fn blk(b: B) -> Input {
    Input::block(b)
}

fn project(vars: &[&str], blocks: Vec<B>) -> Project {
    Project {
        variables: vars.iter().map(|v| v.to_string()).collect(),
        scripts: vec![Script::new(blocks)],
        ..Project::default()
    }
}

fn say(input: Input) -> B {
    B::new("say").with_input("MESSAGE", input)
}

fn set(name: &str, value: Input) -> B {
    B::new("setVariable").with_input("VARIABLE", var(name)).with_input("VALUE", value)
}

fn go(p: &Project) -> SessionResult {
    run(p, &[], 0, DEFAULT_STEP_BUDGET)
}

fn says(r: &SessionResult) -> Vec<&str> {
    r.says().collect()
}

#[test]
fn empty_project_completes_in_zero_steps() {
    let r = go(&Project::default());
    assert_eq!(r.status, Status::Completed);
    assert_eq!(r.steps_used, 0);
    assert!(r.events.is_empty());
}

#[test]
fn forever_hits_the_budget_exactly() {
    let p = project(&[], vec![B::new("forever").with_substack(vec![])]);
    let r = run(&p, &[], 0, 1000);
    assert_eq!(r.status, Status::BudgetExceeded);
    assert_eq!(r.steps_used, 1000);
    let halt = r.events.last().unwrap();
    assert_eq!(halt.kind, EventKind::Halt);
    assert_eq!(halt.step_index, 1001);
}

#[test]
fn repeat_step_accounting() {
    let p = project(&[], vec![B::new("repeat").with_input("TIMES", lit("3")).with_substack(vec![say(lit("hi"))])]);
    let r = go(&p);
    // repeat itself, four checks, three says
    assert_eq!(r.steps_used, 8);
    assert_eq!(says(&r), ["hi", "hi", "hi"]);
    let idx: Vec<u64> = r.events.iter().map(|e| e.step_index).collect();
    assert_eq!(idx, [3, 5, 7]);
}

#[test]
fn repeat_rounds_and_ignores_text() {
    let body = || vec![say(lit("x"))];
    let p = project(
        &[],
        vec![
            B::new("repeat").with_input("TIMES", lit("2.6")).with_substack(body()),
            B::new("repeat").with_input("TIMES", lit("lots")).with_substack(body()),
            B::new("repeat").with_input("TIMES", lit("-4")).with_substack(body()),
        ],
    );
    assert_eq!(says(&go(&p)).len(), 3);
}

#[test]
fn variables_and_change() {
    let p = project(
        &["x", "y"],
        vec![
            set("x", lit("hello")),
            B::new("changeVariable").with_input("VARIABLE", var("x")).with_input("VALUE", lit("1")),
            set("y", lit("3")),
            B::new("changeVariable").with_input("VARIABLE", var("y")).with_input("VALUE", lit("-0.5")),
            say(var("y")),
        ],
    );
    let r = go(&p);
    assert_eq!(r.variables["x"], Value::new("1"));
    assert_eq!(says(&r), ["2.5"]);
}

#[test]
fn undeclared_read_costs_a_step_and_reports() {
    let p = project(&[], vec![say(var("ghost"))]);
    let r = go(&p);
    assert_eq!(r.status, Status::Completed);
    assert_eq!(r.steps_used, 2);
    assert_eq!(r.events[0].kind, EventKind::RuntimeError);
    assert_eq!(r.events[1].text, "");
}

#[test]
fn invalid_set_is_reported_and_becomes_the_value() {
    let check = B::new("checkContainInSet").with_input("OBJ_ID", var("s")).with_input("ELEMENT", lit("a"));
    let p = project(&["s"], vec![say(blk(check))]);
    let r = go(&p);
    assert_eq!(r.errors().collect::<Vec<_>>(), ["Invalid Set"]);
    assert_eq!(says(&r), ["Invalid Set"]);
}

#[test]
fn string_operators() {
    let contains = |a: &str, b: &str| {
        B::new("stringContains").with_input("STRING1", lit(a)).with_input("STRING2", lit(b))
    };
    let join = B::new("joinText").with_input("STRING1", lit("foot")).with_input("STRING2", lit("ball"));
    let p = project(
        &[],
        vec![say(blk(contains("football", "ball"))), say(blk(contains("Football", "BALL"))), say(blk(contains("ball", "football"))), say(blk(join))],
    );
    assert_eq!(says(&go(&p)), ["yes", "yes", "no", "football"]);
}

#[test]
fn arithmetic_and_division_by_zero() {
    let op = |name: &str, a: &str, b: &str| B::new(name).with_input("NUM1", lit(a)).with_input("NUM2", lit(b));
    let p = project(
        &[],
        vec![
            say(blk(op("add", "0.1", "0.2"))),
            say(blk(op("subtract", "apple", "2"))),
            say(blk(op("multiply", "3", "4"))),
            say(blk(op("divide", "7", "2"))),
            say(blk(op("divide", "7", "0"))),
        ],
    );
    let r = go(&p);
    assert_eq!(says(&r), ["0.30000000000000004", "-2", "12", "3.5", "0"]);
    assert_eq!(r.errors().collect::<Vec<_>>(), ["Division by zero"]);
}

#[test]
fn comparisons_and_logic() {
    let cmp = |name: &str, a: &str, b: &str| B::new(name).with_input("OPERAND1", lit(a)).with_input("OPERAND2", lit(b));
    let p = project(
        &[],
        vec![
            say(blk(cmp("equals", "10", "10.0"))),
            say(blk(cmp("equals", "Apple", "apple"))),
            say(blk(cmp("lessThan", "9", "10"))),
            say(blk(cmp("lessThan", "10", "apple"))),
            say(blk(cmp("greaterThan", "b", "A"))),
        ],
    );
    assert_eq!(says(&go(&p)), ["yes", "yes", "yes", "yes", "yes"]);
}

#[test]
fn for_each_iterates_a_snapshot() {
    let p = project(
        &["a"],
        vec![
            set("a", blk(B::new("createNewArray"))),
            B::new("addToArray").with_input("OBJ_ID", var("a")).with_input("ITEM", lit("a")),
            B::new("addToArray").with_input("OBJ_ID", var("a")).with_input("ITEM", lit("b")),
            B::new("forEachElementIn").with_input("OBJ_ID", var("a")).with_substack(vec![
                say(blk(B::new("currentElement"))),
                B::new("addToArray").with_input("OBJ_ID", var("a")).with_input("ITEM", lit("z")),
            ]),
        ],
    );
    let r = go(&p);
    assert_eq!(says(&r), ["a", "b"]);
    assert_eq!(r.registry[0].elements.as_ref().unwrap().len(), 4);
}

#[test]
fn nested_for_each_binds_innermost() {
    let fill = |v: &str, items: &[&str]| {
        let mut out = vec![set(v, blk(B::new("createNewArray")))];
        for i in items {
            out.push(B::new("addToArray").with_input("OBJ_ID", var(v)).with_input("ITEM", lit(i)));
        }
        out
    };
    let mut blocks = fill("outer", &["1", "2"]);
    blocks.extend(fill("inner", &["x", "y"]));
    blocks.push(B::new("forEachElementIn").with_input("OBJ_ID", var("outer")).with_substack(vec![
        B::new("forEachElementIn")
            .with_input("OBJ_ID", var("inner"))
            .with_substack(vec![say(blk(B::new("currentElement")))]),
        say(blk(B::new("currentElement"))),
    ]));
    let r = go(&project(&["outer", "inner"], blocks));
    assert_eq!(says(&r), ["x", "y", "1", "x", "y", "2"]);
}

#[test]
fn for_each_over_dict_visits_keys() {
    let put = |k: &str, v: &str| {
        B::new("addKeyValueToDictionary").with_input("OBJ_ID", var("d")).with_input("KEY", lit(k)).with_input("VALUE", lit(v))
    };
    let p = project(
        &["d"],
        vec![
            set("d", blk(B::new("createNewDictionary"))),
            put("x", "1"),
            put("y", "2"),
            B::new("forEachElementIn")
                .with_input("OBJ_ID", var("d"))
                .with_substack(vec![say(blk(B::new("currentElement")))]),
        ],
    );
    assert_eq!(says(&go(&p)), ["x", "y"]);
}

#[test]
fn for_each_over_unknown_id_skips_the_body() {
    let p = project(
        &[],
        vec![
            B::new("forEachElementIn").with_input("OBJ_ID", lit("set-00000000")).with_substack(vec![say(lit("no"))]),
            B::new("forEachElementIn").with_input("OBJ_ID", lit("apples")).with_substack(vec![say(lit("no"))]),
        ],
    );
    let r = go(&p);
    assert!(says(&r).is_empty());
    assert_eq!(r.errors().collect::<Vec<_>>(), ["Invalid Set", "Invalid data structure"]);
}

#[test]
fn current_element_outside_a_loop() {
    let r = go(&project(&[], vec![say(blk(B::new("currentElement")))]));
    assert_eq!(r.errors().count(), 1);
    assert_eq!(says(&r), [""]);
}

#[test]
fn if_else_and_repeat_until() {
    let lt = |a: Input, b: Input| B::new("lessThan").with_input("OPERAND1", a).with_input("OPERAND2", b);
    let p = project(
        &["i"],
        vec![
            set("i", lit("0")),
            B::new("repeatUntil").with_input("CONDITION", blk(lt(lit("2"), var("i")))).with_substack(vec![
                B::new("changeVariable").with_input("VARIABLE", var("i")).with_input("VALUE", lit("1")),
                B::new("ifElse")
                    .with_input("CONDITION", blk(lt(var("i"), lit("2"))))
                    .with_substack(vec![say(lit("small"))])
                    .with_substack2(vec![say(lit("big"))]),
            ]),
        ],
    );
    assert_eq!(says(&go(&p)), ["small", "big", "big"]);
}

#[test]
fn ask_without_answers_exhausts_input() {
    let p = project(&[], vec![B::new("ask").with_input("QUESTION", lit("name?")), say(blk(B::new("answer")))]);
    let r = go(&p);
    assert_eq!(r.status, Status::InputExhausted);
    assert_eq!(r.events.iter().map(|e| e.kind).collect::<Vec<_>>(), [EventKind::AskPrompt, EventKind::Halt]);

    let r = run(&p, &["Ada".into()], 0, DEFAULT_STEP_BUDGET);
    assert_eq!(r.status, Status::Completed);
    assert_eq!(says(&r), ["Ada"]);
}

#[test]
fn interactive_answers_match_batch() {
    let ask = |q: &str| B::new("ask").with_input("QUESTION", lit(q));
    let p = project(&[], vec![ask("one?"), say(blk(B::new("answer"))), ask("two?"), say(blk(B::new("answer")))]);
    let mut m = Machine::new(&p, 0, DEFAULT_STEP_BUDGET);
    assert_eq!(m.resume(), Progress::NeedsInput);
    assert!(m.is_waiting());
    assert_eq!(m.answer("a"), Ok(Progress::NeedsInput));
    assert_eq!(m.answer("b"), Ok(Progress::Finished(Status::Completed)));
    assert_eq!(m.answer("c"), Err(NotWaiting));
    let batch = run(&p, &["a".into(), "b".into()], 0, DEFAULT_STEP_BUDGET);
    assert_eq!(m.result().to_json(), batch.to_json());
}

#[test]
fn ds_command_errors_do_not_abort() {
    let p = project(
        &["d"],
        vec![
            set("d", blk(B::new("createNewDictionary"))),
            B::new("addToArray").with_input("OBJ_ID", var("d")).with_input("ITEM", lit("x")),
            say(blk(B::new("getValueForKey").with_input("OBJ_ID", var("d")).with_input("KEY", lit("k")))),
            say(lit("still here")),
        ],
    );
    let r = go(&p);
    assert_eq!(r.status, Status::Completed);
    assert_eq!(r.errors().collect::<Vec<_>>(), ["This block can only be used with Arrays", "Key not found"]);
    assert_eq!(says(&r), ["Key not found", "still here"]);
}

#[test]
fn unknown_blocks_and_misplaced_commands_are_runtime_errors() {
    let p = project(&[], vec![B::new("teleport"), say(blk(B::new("say").with_input("MESSAGE", lit("x")))), say(blk(B::new("warp")))]);
    let r = go(&p);
    assert_eq!(r.status, Status::Completed);
    assert_eq!(r.errors().count(), 3);
}

#[test]
fn scripts_run_in_file_order() {
    let mut p = project(&[], vec![say(lit("first"))]);
    p.scripts.push(Script::new(vec![B::new("whenStarted"), say(lit("second"))]));
    assert_eq!(says(&go(&p)), ["first", "second"]);
}

#[test]
fn say_for_secs_records_duration() {
    let p = project(&[], vec![B::new("sayForSecs").with_input("MESSAGE", lit("hi")).with_input("SECS", lit("2"))]);
    let r = go(&p);
    assert_eq!(r.events[0].duration, Some(2.0));
    assert_eq!(r.events[0].to_string(), "SAY (2s): hi");
}

#[test]
fn result_json_round_trips() {
    let p = project(&["s"], vec![set("s", blk(B::new("createNewSet"))), say(var("s"))]);
    let r = run(&p, &[], 7, 50);
    let text = r.to_json();
    assert_eq!(SessionResult::from_json(&text).unwrap(), r);
    assert!(text.contains("\"status\": \"COMPLETED\""));
}
