// Decide completeness through the cube condition, then use reversing to
// solve the word problem.

use conjfree::geometry::{pencil, Arrangement, IncidenceLattice};
use conjfree::presentation::Presentation;
use conjfree::reversing::{is_complete, word_problem, Completeness, WordProblem, DEFAULT_BUDGET};

pub fn run_example() -> conjfree::Result<(Completeness, Completeness, WordProblem)> {
    let pencil5 = Presentation::from_lattice(&IncidenceLattice::build(&pencil(5)));
    let complete = is_complete(&pencil5, DEFAULT_BUDGET)?;
    println!("pencil of 5: {:?}", complete.verdict);

    // two triple points on y = 0
    let shared =
        Arrangement::from_integers(&[[0, 1, 0], [1, 0, 0], [1, -1, 0], [1, 0, 4], [1, 1, 4]])?;
    let shared = Presentation::from_lattice(&IncidenceLattice::build(&shared));
    let incomplete = is_complete(&shared, DEFAULT_BUDGET)?;
    if let Completeness::Incomplete { witness } = incomplete.verdict {
        let names: Vec<&str> = witness.iter().map(|&g| shared.name(g)).collect();
        println!("shared line: incomplete, witness {names:?}");
    }

    let w = pencil5.parse_positive_word("x4 x3 x2 x1 x0")?;
    let w2 = pencil5.parse_positive_word("x1 x0 x4 x3 x2")?;
    let answer = word_problem(&pencil5, w.letters(), w2.letters(), DEFAULT_BUDGET);
    println!(
        "{} vs {}: {answer:?}",
        pencil5.format_word(w.letters()),
        pencil5.format_word(w2.letters())
    );
    Ok((complete.verdict, incomplete.verdict, answer))
}

fn main() -> conjfree::Result<()> {
    run_example().map(|_| ())
}
