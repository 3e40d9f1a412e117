//! Benchmark-only crate; fixtures shared by the criterion benches.

use rfg_core::SimplicialGraph;

pub fn fixture(name: &str) -> SimplicialGraph {
    let graph = match name {
        "z" => SimplicialGraph::new(&["a"], &[]),
        "f2" => SimplicialGraph::new(&["a", "b"], &[]),
        "z2" => SimplicialGraph::new(&["a", "b"], &[("a", "b")]),
        "p3" => SimplicialGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]),
        "c5" => SimplicialGraph::new(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")],
        ),
        other => panic!("unknown fixture `{other}`"),
    };
    graph.expect("fixture graphs are valid")
}
