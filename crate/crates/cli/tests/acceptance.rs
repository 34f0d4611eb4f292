//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.
//!
//! The oracles here are written independently of the runtime: their own
//! number recognition, ordering, set and counting logic.

use std::cmp::Ordering;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use blockdsa_core::corpus::{corpus, corpus_entry};
use blockdsa_core::ds::{ArrayDs, DictDs, SetDs, SetOp, SortDirection, Value};
use blockdsa_core::testkit::{count_blocks, max_depth, random_project, GenConfig};
use blockdsa_core::{
    parse_project, run, serialize_project, validate_project, BlockInstance as B, Input, Project, Script,
    SessionResult, Status, DEFAULT_STEP_BUDGET,
};
use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

const FUZZ_BUDGET: u64 = 5_000;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: &[Criterion] = &[
        ("lab corpus golden runs", lab_goldens),
        ("max element property", max_element_property),
        ("frequency property", frequency_property),
        ("sort oracle", sort_oracle),
        ("search oracle", search_oracle),
        ("set algebra", set_algebra),
        ("error contract", error_contract),
        ("determinism", determinism),
        ("round trip", round_trip),
        ("dictionary replace keeps order", dictionary_replace),
        ("contains misuse", contains_misuse),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        let started = Instant::now();
        let outcome = catch_unwind(check).unwrap_or_else(|p| Err(format!("panicked: {}", panic_text(&*p))));
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name} ({detail}; {secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    let _ = std::panic::take_hook();
    println!("{} of {} acceptance criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn panic_text(p: &(dyn std::any::Any + Send)) -> String {
    p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default()
}

// ---------------------------------------------------------------------------
// Independent oracles

#[derive(Debug, Clone, PartialEq, PartialOrd)]
enum Key {
    Num(f64),
    Text(String),
}

fn key(s: &str) -> Key {
    let numeric_chars = s.chars().all(|c| c.is_ascii_digit() || "+-.eE".contains(c));
    let has_digit = s.chars().any(|c| c.is_ascii_digit());
    match s.parse::<f64>() {
        Ok(n) if numeric_chars && has_digit && n.is_finite() => Key::Num(n + 0.0),
        _ => Key::Text(s.to_lowercase()),
    }
}

fn key_cmp(a: &str, b: &str) -> Ordering {
    key(a).partial_cmp(&key(b)).expect("no NaN keys")
}

fn oracle_sorted(items: &[String], descending: bool) -> Vec<String> {
    // Top-down merge sort over precomputed keys: stable, and unlike the
    // runtime's quicksort.
    fn merge_sort(xs: Vec<(Key, String)>, descending: bool) -> Vec<(Key, String)> {
        if xs.len() <= 1 {
            return xs;
        }
        let mut left = xs;
        let right = left.split_off(left.len() / 2);
        let (left, right) = (merge_sort(left, descending), merge_sort(right, descending));
        let mut out = Vec::with_capacity(left.len() + right.len());
        let (mut l, mut r) = (left.into_iter().peekable(), right.into_iter().peekable());
        while let (Some(a), Some(b)) = (l.peek(), r.peek()) {
            let ord = a.0.partial_cmp(&b.0).expect("no NaN keys");
            let take_right = if descending { ord == Ordering::Less } else { ord == Ordering::Greater };
            out.push(if take_right { r.next() } else { l.next() }.unwrap());
        }
        out.extend(l);
        out.extend(r);
        out
    }
    let keyed = items.iter().map(|s| (key(s), s.clone())).collect();
    merge_sort(keyed, descending).into_iter().map(|(_, s)| s).collect()
}

fn oracle_search(items: &[String], target: &str) -> String {
    let t = key(target);
    let hits: Vec<String> =
        items.iter().enumerate().filter(|(_, v)| key(v) == t).map(|(i, _)| (i + 1).to_string()).collect();
    if hits.is_empty() {
        "not found".to_owned()
    } else {
        hits.join(",")
    }
}

/// Ordered set as a plain list, first representation wins.
fn oracle_set(items: &[String]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for i in items {
        if !out.iter().any(|o| key(o) == key(i)) {
            out.push(i.clone());
        }
    }
    out
}

fn oracle_has(set: &[String], v: &str) -> bool {
    set.iter().any(|o| key(o) == key(v))
}

fn oracle_union(a: &[String], b: &[String]) -> Vec<String> {
    oracle_set(&[a, b].concat())
}

fn oracle_intersection(a: &[String], b: &[String]) -> Vec<String> {
    a.iter().filter(|v| oracle_has(b, v)).cloned().collect()
}

fn oracle_difference(a: &[String], b: &[String]) -> Vec<String> {
    a.iter().filter(|v| !oracle_has(b, v)).cloned().collect()
}

// ---------------------------------------------------------------------------
// Program builders

fn lit(s: &str) -> Input {
    Input::literal(s)
}

fn var(s: &str) -> Input {
    Input::variable(s)
}

fn blk(b: B) -> Input {
    Input::block(b)
}

fn set_var(name: &str, value: Input) -> B {
    B::new("setVariable").with_input("VARIABLE", var(name)).with_input("VALUE", value)
}

fn say(m: Input) -> B {
    B::new("say").with_input("MESSAGE", m)
}

fn project(vars: &[&str], blocks: Vec<B>) -> Project {
    Project {
        variables: vars.iter().map(|v| v.to_string()).collect(),
        scripts: vec![Script::new(blocks)],
        ..Project::default()
    }
}

fn fill_array(name: &str, items: &[String]) -> Vec<B> {
    let mut out = vec![set_var(name, blk(B::new("createNewArray")))];
    out.extend(items.iter().map(|i| B::new("addToArray").with_input("OBJ_ID", var(name)).with_input("ITEM", lit(i))));
    out
}

fn fill_set(name: &str, items: &[String]) -> Vec<B> {
    let mut out = vec![set_var(name, blk(B::new("createNewSet")))];
    out.extend(items.iter().map(|i| B::new("addToSet").with_input("OBJ_ID", var(name)).with_input("ELEMENT", lit(i))));
    out
}

fn exec(p: &Project) -> SessionResult {
    run(p, &[], 0, DEFAULT_STEP_BUDGET)
}

fn says(r: &SessionResult) -> Vec<String> {
    r.says().map(str::to_owned).collect()
}

fn mixed_value(rng: &mut StdRng) -> String {
    const WORDS: &[&str] = &["apple", "Apple", "APPLE", "banana", "Banana", "kiwi", "fig", "z", "a10", "10a", "", "-"];
    match rng.random_range(0..7) {
        0 => rng.random_range(-50..50).to_string(),
        1 => format!("{:.2}", rng.random_range(-100.0..100.0)),
        2 => format!("{}.0", rng.random_range(-5..5)),
        3 => format!("{}e{}", rng.random_range(1..9), rng.random_range(0..3)),
        4 => rng.random_range(0..6).to_string(),
        _ => WORDS.choose(rng).unwrap().to_string(),
    }
}

fn numeric_value(rng: &mut StdRng) -> String {
    match rng.random_range(0..4) {
        0 => rng.random_range(-1000..1000).to_string(),
        1 => format!("{:.1}", rng.random_range(-1000.0..1000.0)),
        2 => format!("{}.0", rng.random_range(-20..20)),
        _ => rng.random_range(-20..20).to_string(),
    }
}

// ---------------------------------------------------------------------------
// Criteria

fn corpus_path(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(file)
}

fn lab_goldens() -> Outcome {
    let mut slowest = Duration::ZERO;
    let labs = ["lab1", "lab1-missing", "lab2", "lab3"];
    for name in labs {
        let entry = corpus_entry(name).ok_or(format!("{name} missing from corpus"))?;
        let started = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_blockdsa"))
            .arg("run")
            .arg(corpus_path(entry.file))
            .arg("--inputs")
            .arg(corpus_path(&format!("{name}.inputs")))
            .args(["--seed", "0"])
            .output()
            .map_err(|e| e.to_string())?;
        let took = started.elapsed();
        slowest = slowest.max(took);
        ensure!(out.status.code() == Some(0), "{name} exited with {:?}", out.status.code());
        ensure!(out.stdout == entry.golden.as_bytes(), "{name} transcript differs from golden");
        ensure!(took < Duration::from_secs(1), "{name} took {took:?}");
    }
    Ok(format!("{} labs byte-identical, slowest {:.0} ms", labs.len(), slowest.as_secs_f64() * 1000.0))
}

fn max_element_property() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    let trials = 1000;
    for trial in 0..trials {
        let len = rng.random_range(1..=60);
        let items: Vec<String> = (0..len).map(|_| numeric_value(&mut rng)).collect();
        // First maximum scanning left to right, and last maximum.
        let first_max = items.iter().fold(&items[0], |m, x| if key_cmp(x, m) == Ordering::Greater { x } else { m });
        let last_max = items.iter().fold(&items[0], |m, x| if key_cmp(x, m) != Ordering::Less { x } else { m });

        let mut desc = fill_array("numbers", &items);
        desc.push(B::new("sortArrayDescending").with_input("OBJ_ID", var("numbers")));
        desc.push(say(blk(B::new("itemOfArray").with_input("OBJ_ID", var("numbers")).with_input("INDEX", lit("1")))));
        let got = says(&exec(&project(&["numbers"], desc)));
        ensure!(got == [first_max.clone()], "trial {trial}: descending said {got:?}, oracle {first_max}");

        let mut asc = fill_array("numbers", &items);
        asc.push(B::new("sortArrayAscending").with_input("OBJ_ID", var("numbers")));
        let last = blk(B::new("lengthOfArray").with_input("OBJ_ID", var("numbers")));
        asc.push(say(blk(B::new("itemOfArray").with_input("OBJ_ID", var("numbers")).with_input("INDEX", last))));
        let got = says(&exec(&project(&["numbers"], asc)));
        ensure!(got == [last_max.clone()], "trial {trial}: ascending said {got:?}, oracle {last_max}");
    }
    Ok(format!("{trials} trials, both ends, 0 failures"))
}

fn frequency_program(items: &[String]) -> Project {
    let cur = || blk(B::new("currentElement"));
    let get = || blk(B::new("getValueForKey").with_input("OBJ_ID", var("counts")).with_input("KEY", cur()));
    let put = |value: Input| {
        B::new("addKeyValueToDictionary").with_input("OBJ_ID", var("counts")).with_input("KEY", cur()).with_input("VALUE", value)
    };
    let mut blocks = fill_array("items", items);
    blocks.push(set_var("counts", blk(B::new("createNewDictionary"))));
    blocks.push(B::new("forEachElementIn").with_input("OBJ_ID", var("items")).with_substack(vec![B::new("ifElse")
        .with_input(
            "CONDITION",
            blk(B::new("containsKeyInDictionary").with_input("OBJ_ID", var("counts")).with_input("KEY", cur())),
        )
        .with_substack(vec![put(blk(B::new("add").with_input("NUM1", get()).with_input("NUM2", lit("1"))))])
        .with_substack2(vec![put(lit("1"))])]));
    project(&["items", "counts"], blocks)
}

fn frequency_property() -> Outcome {
    const ALPHABET: &[&str] = &["apple", "fig", "kiwi", "pear", "plum", "lime", "date", "yuzu", "7", "3.5"];
    let mut rng = StdRng::seed_from_u64(2);
    let trials = 200;
    for trial in 0..trials {
        let k = rng.random_range(1..=ALPHABET.len());
        let n = rng.random_range(0..=100);
        let items: Vec<String> = (0..n)
            .map(|_| {
                let w = ALPHABET[rng.random_range(0..k)];
                if rng.random_bool(0.3) {
                    w.to_uppercase()
                } else {
                    w.to_owned()
                }
            })
            .collect();
        let mut expected: Vec<(String, usize)> = Vec::new();
        for i in &items {
            match expected.iter_mut().find(|(k, _)| k.to_lowercase() == i.to_lowercase()) {
                Some(slot) => slot.1 += 1,
                None => expected.push((i.clone(), 1)),
            }
        }
        let r = exec(&frequency_program(&items));
        ensure!(r.status == Status::Completed && r.errors().count() == 0, "trial {trial}: {:?}", r.status);
        let counts = r.variables["counts"].as_str();
        let dict = r.registry.iter().find(|o| o.id.as_str() == counts).ok_or("counts dictionary missing")?;
        let got: Vec<(String, usize)> = dict
            .pairs
            .as_ref()
            .ok_or("not a dictionary")?
            .iter()
            .map(|p| (p.key.to_string(), p.value.as_str().parse().unwrap_or(usize::MAX)))
            .collect();
        ensure!(got == expected, "trial {trial}: {got:?} != {expected:?}");
    }
    Ok(format!("{trials} trials match the counting oracle"))
}

fn sort_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    let trials = 1000;
    let mut longest = 0;
    for trial in 0..trials {
        let len = if trial % 10 == 0 { 1000 } else { rng.random_range(0..=1000) };
        longest = longest.max(len);
        let items: Vec<String> = (0..len).map(|_| mixed_value(&mut rng)).collect();
        for (direction, descending) in [(SortDirection::Ascending, false), (SortDirection::Descending, true)] {
            let mut a = ArrayDs::from_items(items.iter().map(Value::new).collect());
            a.sort(direction);
            let got: Vec<&str> = a.items().iter().map(Value::as_str).collect();
            let expected = oracle_sorted(&items, descending);
            ensure!(got == expected, "trial {trial} ({direction:?}) differs");
        }
    }
    Ok(format!("{trials} arrays up to {longest} items, both directions"))
}

fn search_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let trials = 1000;
    let (mut multi, mut missing) = (0, 0);
    for trial in 0..trials {
        let len = rng.random_range(0..=200);
        let items: Vec<String> = (0..len).map(|_| mixed_value(&mut rng)).collect();
        let target = if len > 0 && rng.random_bool(0.6) { items[rng.random_range(0..len)].clone() } else { mixed_value(&mut rng) };
        let a = ArrayDs::from_items(items.iter().map(Value::new).collect());
        let got = a.search(&Value::new(target.as_str())).into_string();
        let expected = oracle_search(&items, &target);
        ensure!(got == expected, "trial {trial}: search {target:?} gave {got}, oracle {expected}");
        multi += usize::from(got.contains(','));
        missing += usize::from(got == "not found");
    }
    Ok(format!("{trials} cases, {multi} multi-index, {missing} not found"))
}

fn set_algebra() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let pairs = 500;
    let random_set = |rng: &mut StdRng| -> Vec<String> {
        let n = rng.random_range(0..30);
        oracle_set(&(0..n).map(|_| mixed_value(rng)).collect::<Vec<_>>())
    };
    let texts = |s: &SetDs| -> Vec<String> { s.items().map(Value::to_string).collect() };
    for trial in 0..pairs {
        let (xa, xb) = (random_set(&mut rng), random_set(&mut rng));
        let a: SetDs = xa.iter().map(Value::new).collect();
        let b: SetDs = xb.iter().map(Value::new).collect();
        let union = a.combine(SetOp::Union, &b);
        let inter = a.combine(SetOp::Intersection, &b);
        let diff = a.combine(SetOp::Difference, &b);
        ensure!(texts(&union) == oracle_union(&xa, &xb), "trial {trial}: union");
        ensure!(texts(&inter) == oracle_intersection(&xa, &xb), "trial {trial}: intersection");
        ensure!(texts(&diff) == oracle_difference(&xa, &xb), "trial {trial}: difference");
        ensure!(union.len() == a.len() + b.len() - inter.len(), "trial {trial}: inclusion-exclusion");
        let mut rebuilt = texts(&inter);
        rebuilt.extend(texts(&diff));
        ensure!(rebuilt.len() == a.len(), "trial {trial}: (A∩B) and (A−B) overlap");
        ensure!(oracle_set(&rebuilt).len() == xa.len() && rebuilt.iter().all(|v| oracle_has(&xa, v)), "trial {trial}: partition");
    }

    // Chained A ∪ B ∩ C, read left to right, through the interpreter.
    let mut chained = 0;
    for trial in 0..100 {
        let (xa, xb, xc) = (random_set(&mut rng), random_set(&mut rng), random_set(&mut rng));
        let mut blocks = fill_set("a", &xa);
        blocks.extend(fill_set("b", &xb));
        blocks.extend(fill_set("c", &xc));
        let u = B::new("unionOfSets").with_input("OBJ_ID", var("a")).with_input("OBJ_ID2", var("b"));
        let i = B::new("intersectionOfSets").with_input("OBJ_ID", blk(u)).with_input("OBJ_ID2", var("c"));
        blocks.push(set_var("r", blk(i)));
        blocks.push(B::new("forEachElementIn").with_input("OBJ_ID", var("r")).with_substack(vec![say(blk(B::new("currentElement")))]));
        let got = says(&exec(&project(&["a", "b", "c", "r"], blocks)));
        let expected = oracle_intersection(&oracle_union(&xa, &xb), &xc);
        ensure!(got == expected, "chain trial {trial}: {got:?} != {expected:?}");
        chained += 1;
    }
    Ok(format!("{pairs} pairs, {chained} chained evaluations"))
}

fn error_contract() -> Outcome {
    let ids = |blocks: &mut Vec<B>| {
        blocks.push(set_var("arr", blk(B::new("createNewArray"))));
        blocks.push(set_var("set", blk(B::new("createNewSet"))));
        blocks.push(set_var("dict", blk(B::new("createNewDictionary"))));
    };
    let mut blocks = Vec::new();
    ids(&mut blocks);
    let probe = |op: &str, obj: Input, extra: Option<(&str, &str)>| {
        let mut b = B::new(op).with_input("OBJ_ID", obj);
        if let Some((slot, v)) = extra {
            b = b.with_input(slot, lit(v));
        }
        say(blk(b))
    };
    let cases: Vec<(B, &str)> = vec![
        (probe("checkContainInSet", lit("set-00000000"), Some(("ELEMENT", "x"))), "Invalid Set"),
        (probe("lengthOfArray", lit("not an id"), None), "Invalid Array"),
        (probe("sizeOfDictionary", lit(""), None), "Invalid Dictionary"),
        (probe("lengthOfArray", var("set"), None), "This block can only be used with Arrays"),
        (probe("sizeOfSet", var("dict"), None), "This block can only be used with Sets"),
        (probe("sizeOfDictionary", var("arr"), None), "This block can only be used with Dictionaries"),
        (probe("getValueForKey", var("dict"), Some(("KEY", "missing"))), "Key not found"),
        (probe("itemOfArray", var("arr"), Some(("INDEX", "1"))), "Index out of range"),
    ];
    let expected: Vec<&str> = cases.iter().map(|(_, m)| *m).collect();
    blocks.extend(cases.into_iter().map(|(b, _)| b));
    let r = exec(&project(&["arr", "set", "dict"], blocks));
    let errors: Vec<&str> = r.errors().collect();
    ensure!(errors == expected, "messages {errors:?}");
    ensure!(says(&r) == expected, "reported values {:?}", says(&r));

    for entry in corpus() {
        let r = catch_unwind(|| entry.run()).map_err(|_| format!("{} panicked", entry.name))?;
        ensure!(r.status == Status::Completed, "{} ended {}", entry.name, r.status);
    }

    let mut rng = StdRng::seed_from_u64(6);
    let projects = 500;
    let (mut blocks_total, mut deepest, mut errors_seen) = (0, 0, 0);
    for i in 0..projects {
        let p = random_project(&mut rng, GenConfig::default());
        let n = count_blocks(&p);
        ensure!(n <= 500 && max_depth(&p) <= 6, "generator exceeded bounds: {n} blocks, depth {}", max_depth(&p));
        let diags = validate_project(&p);
        ensure!(diags.is_empty(), "generated project {i} is invalid: {:?}", diags.first());
        let inputs: Vec<String> = (0..rng.random_range(0..4)).map(|_| mixed_value(&mut rng)).collect();
        let r = catch_unwind(AssertUnwindSafe(|| run(&p, &inputs, i, FUZZ_BUDGET)))
            .map_err(|p| format!("project {i} crashed: {}", panic_text(&*p)))?;
        ensure!(r.steps_used <= FUZZ_BUDGET, "project {i} overran its budget");
        ensure!(r.events.windows(2).all(|w| w[0].step_index < w[1].step_index), "project {i}: event order");
        blocks_total += n;
        deepest = deepest.max(max_depth(&p));
        errors_seen += r.errors().count();
    }
    Ok(format!(
        "8 exact messages; {projects} fuzz projects ({blocks_total} blocks, depth up to {deepest}, {errors_seen} runtime errors), 0 crashes"
    ))
}

fn determinism() -> Outcome {
    let runs = 100;
    for entry in corpus() {
        let p = entry.project();
        let inputs = entry.inputs();
        let first = run(&p, &inputs, 0, DEFAULT_STEP_BUDGET).to_json();
        for i in 1..runs {
            ensure!(run(&p, &inputs, 0, DEFAULT_STEP_BUDGET).to_json() == first, "{} differs on run {i}", entry.name);
        }
    }
    Ok(format!("{} programs x {runs} runs byte-identical", corpus().len()))
}

fn round_trip() -> Outcome {
    let mut files = 0;
    for entry in corpus() {
        let p = parse_project(entry.document.as_bytes()).map_err(|d| format!("{}: {d:?}", entry.file))?;
        let once = serialize_project(&p);
        ensure!(once == entry.document, "{} is not a fixed point", entry.file);
        let again = parse_project(once.as_bytes()).map_err(|d| format!("{d:?}"))?;
        ensure!(again == p, "{} changed after reparse", entry.file);
        files += 1;
    }
    Ok(format!("{files} corpus documents are fixed points"))
}

fn dictionary_replace() -> Outcome {
    let mut d = DictDs::new();
    for (k, v) in [("1", "Potato"), ("2", "Milk"), ("3", "Honey")] {
        d.put(Value::new(k), Value::new(v));
    }
    d.put(Value::new("2"), Value::new("Yogurt"));
    let got: Vec<String> = d.pairs().map(|(k, v)| format!("{k}:{v}")).collect();
    ensure!(got == ["1:Potato", "2:Yogurt", "3:Honey"], "direct {got:?}");

    let r = corpus_entry("quiz2-groceries").ok_or("quiz2-groceries missing")?.run();
    let said = says(&r);
    ensure!(said == ["1: Potato", "2: Yogurt", "3: Honey"], "program said {said:?}");
    Ok("{1:Potato, 2:Yogurt, 3:Honey}".to_owned())
}

fn contains_misuse() -> Outcome {
    let fruits: Vec<String> = ["banana", "apple", "cherry"].map(String::from).to_vec();
    let mut blocks = fill_array("fruits", &fruits);
    let contains = |a: Input, b: &str| blk(B::new("stringContains").with_input("STRING1", a).with_input("STRING2", lit(b)));
    blocks.push(say(contains(var("fruits"), "apple")));
    blocks.push(say(blk(B::new("searchInArray").with_input("OBJ_ID", var("fruits")).with_input("ITEM", lit("apple")))));
    blocks.push(say(contains(lit("football"), "ball")));
    let r = exec(&project(&["fruits"], blocks));
    let said = says(&r);
    ensure!(said == ["no", "2", "yes"], "said {said:?}");

    let golden = corpus_entry("contains-misuse").ok_or("contains-misuse missing")?.run();
    ensure!(says(&golden) == ["not found", "2", "yes"], "corpus program said {:?}", says(&golden));
    Ok("contains on an array id says no, search says 2, football/ball says yes".to_owned())
}
