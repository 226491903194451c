// Reverse signed words step by step and compute complements.

use conjfree::geometry::{pencil, Arrangement, IncidenceLattice};
use conjfree::presentation::Presentation;
use conjfree::reversing::{
    double_complement, reverse, reverse_with, Outcome, SignedWord, Strategy, DEFAULT_BUDGET,
};

fn present(arr: &Arrangement) -> Presentation {
    Presentation::from_lattice(&IncidenceLattice::build(arr))
}

/// Returns the terminal word of `x0⁻¹ x1 x1⁻¹ x2` over the triangle and the
/// double complement `(x0\x1)\(x0\x2)` over the pencil of four lines.
pub fn run_example() -> conjfree::Result<(Vec<String>, usize)> {
    let triangle = present(&Arrangement::from_integers(&[
        [1, 0, 0],
        [0, 1, 0],
        [1, 1, 1],
    ])?);
    let w = SignedWord::parse(&triangle, "x0^-1 x1 x1^-1 x2")?;
    let trace = reverse(&triangle, &w, DEFAULT_BUDGET);
    for step in &trace.steps {
        println!("{}", step.word.display(&triangle));
    }
    let terminal = trace.last().to_names(&triangle);

    let pencil4 = present(&pencil(4));
    let w = SignedWord::parse(&pencil4, "x0^-1 x3 x2^-1 x1")?;
    let leftmost = reverse_with(&pencil4, w.clone(), DEFAULT_BUDGET, Strategy::Leftmost);
    let random = reverse_with(&pencil4, w, DEFAULT_BUDGET, Strategy::Random { seed: 3 });
    if let (Outcome::Terminal(a), Outcome::Terminal(b)) = (&leftmost, &random) {
        println!(
            "leftmost {} / random {}",
            a.display(&pencil4),
            b.display(&pencil4)
        );
    }

    let d = double_complement(&pencil4, &[0], &[1], &[2], DEFAULT_BUDGET)
        .expect("within budget")
        .expect("defined");
    println!("(x0\\x1)\\(x0\\x2) = {}", pencil4.format_word(d.letters()));
    Ok((terminal, d.len()))
}

fn main() -> conjfree::Result<()> {
    run_example().map(|_| ())
}
