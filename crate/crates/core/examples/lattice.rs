// Parse an arrangement and list its intersection points.

use conjfree::geometry::{Arrangement, IncidenceLattice};

const CEVA_TYPE: &str = "\
# x = 0, y = 0, x = 1, y = 1, y = x, x + y = 1
1 0 0
0 1 0
1 0 1
0 1 1
1 -1 0
1 1 1
";

/// Returns (points, multiple points, parallel pairs).
pub fn run_example() -> conjfree::Result<(usize, usize, usize)> {
    let arr = Arrangement::parse(CEVA_TYPE)?;
    let lat = IncidenceLattice::build(&arr);
    for p in lat.points() {
        println!("{:<14} lines {:?}", p.location.to_string(), p.lines);
    }
    for (a, b) in lat.parallel_pairs() {
        println!("lines {a} and {b} are parallel");
    }
    for line in 0..lat.line_count() {
        let order: Vec<String> = lat
            .points_on_line(line)
            .iter()
            .map(|&q| lat.points()[q].location.to_string())
            .collect();
        println!("line {line}: {}", order.join(" -> "));
    }
    Ok((
        lat.points().len(),
        lat.multiple_points().count(),
        lat.parallel_pairs().len(),
    ))
}

fn main() -> conjfree::Result<()> {
    run_example().map(|_| ())
}
