//! Workloads shared by the benchmarks.

use blockdsa_core::{BlockInstance, Input, Project, Script, Value};
use rand::seq::IndexedRandom;
use rand::Rng;

const WORDS: &[&str] = &["apple", "Banana", "cherry", "fig", "Mango", "kiwi", "lime", "pear"];

/// A mix of integers, decimals and words, roughly half numeric.
pub fn random_values<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Value> {
    (0..n)
        .map(|_| match rng.random_range(0..4) {
            0 => Value::new(rng.random_range(-1000..1000).to_string()),
            1 => Value::new(format!("{:.2}", rng.random_range(-100.0..100.0))),
            _ => Value::new(*WORDS.choose(rng).unwrap()),
        })
        .collect()
}

/// Fills an array with `n` numbers in descending order, sorts it ascending
/// and searches it once.
pub fn fill_sort_search_project(n: usize) -> Project {
    let var = |name: &str| Input::variable(name);
    let lit = |text: &str| Input::literal(text);
    let call = |b: BlockInstance| Input::block(b);
    let item = BlockInstance::new("subtract").with_input("NUM1", lit("0")).with_input(
        "NUM2",
        call(BlockInstance::new("multiply").with_input("NUM1", var("i")).with_input("NUM2", lit("7919"))),
    );
    let blocks = vec![
        BlockInstance::new("setVariable")
            .with_input("VARIABLE", var("arr"))
            .with_input("VALUE", call(BlockInstance::new("createNewArray"))),
        BlockInstance::new("setVariable").with_input("VARIABLE", var("i")).with_input("VALUE", lit("0")),
        BlockInstance::new("repeat").with_input("TIMES", lit(&n.to_string())).with_substack(vec![
            BlockInstance::new("changeVariable").with_input("VARIABLE", var("i")).with_input("VALUE", lit("1")),
            BlockInstance::new("addToArray").with_input("OBJ_ID", var("arr")).with_input("ITEM", call(item)),
        ]),
        BlockInstance::new("sortArrayAscending").with_input("OBJ_ID", var("arr")),
        BlockInstance::new("say").with_input(
            "MESSAGE",
            call(BlockInstance::new("searchInArray").with_input("OBJ_ID", var("arr")).with_input("ITEM", lit("-7919"))),
        ),
    ];
    Project { variables: vec!["arr".into(), "i".into()], scripts: vec![Script::new(blocks)], ..Project::default() }
}
