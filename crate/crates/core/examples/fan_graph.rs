// Build the graph of multiple points and decide whether the arrangement
// admits a conjugation-free presentation.

use conjfree::fan_graph::{certify_graph, ComponentKind, FanGraph};
use conjfree::geometry::{pencil, Arrangement, IncidenceLattice};

fn describe(name: &str, arr: &Arrangement) -> (bool, Vec<ComponentKind>) {
    let graph = FanGraph::build(&IncidenceLattice::build(arr));
    let class = graph.classify();
    let cert = certify_graph(&class);
    println!(
        "{name}: {} vertices, {} edges, certified {} ({})",
        graph.vertices.len(),
        graph.edges.len(),
        cert.applicable,
        cert.reason
    );
    (
        cert.applicable,
        class.components.iter().map(|c| c.kind).collect(),
    )
}

pub fn run_example() -> conjfree::Result<Vec<(bool, Vec<ComponentKind>)>> {
    let three_on_a_line = Arrangement::from_integers(&[
        [0, 1, 0],
        [1, 0, 0],
        [1, -1, 0],
        [1, 0, 4],
        [1, 1, 4],
        [1, 0, 8],
        [1, -1, 8],
    ])?;
    let triangle_of_triples = Arrangement::from_integers(&[
        [0, 1, 0],
        [1, 0, 0],
        [1, 1, 4],
        [1, -1, 0],
        [1, 2, 4],
        [3, 1, 4],
    ])?;
    let ceva = Arrangement::from_integers(&[
        [1, 0, 0],
        [0, 1, 0],
        [1, 0, 1],
        [0, 1, 1],
        [1, -1, 0],
        [1, 1, 1],
    ])?;
    Ok(vec![
        describe("pencil of 5", &pencil(5)),
        describe("three triple points on a line", &three_on_a_line),
        describe("triangle of triple points", &triangle_of_triples),
        describe("ceva-type", &ceva),
    ])
}

fn main() -> conjfree::Result<()> {
    run_example().map(|_| ())
}
