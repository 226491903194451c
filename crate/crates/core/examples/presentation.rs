// Read off the conjugation-free presentation of an arrangement, check that
// it is complemented and write it as JSON.

use conjfree::geometry::{pencil, IncidenceLattice};
use conjfree::presentation::Presentation;

pub fn run_example() -> conjfree::Result<Presentation> {
    // a triple point plus a line crossing all three
    let arr = pencil(3).union(&conjfree::geometry::Arrangement::from_integers(&[[
        1, 7, 5,
    ]])?)?;
    let p = Presentation::from_lattice(&IncidenceLattice::build(&arr));
    print!("{p}");
    for (s, t) in [(0, 1), (1, 0), (0, 3)] {
        if let Some((num, den)) = p.pair_relation(s, t) {
            println!(
                "{} {} = {} {}",
                p.name(s),
                p.format_word(num),
                p.name(t),
                p.format_word(den)
            );
        }
    }
    println!("complemented: {}", p.is_complemented().ok);
    let json = p.to_json(Some(true));
    println!("{json}");
    let back = Presentation::from_json(&json)?;
    let sides = |q: &Presentation| -> Vec<_> {
        q.relations()
            .iter()
            .map(|r| (r.lhs.clone(), r.rhs.clone()))
            .collect()
    };
    assert_eq!(sides(&back), sides(&p));
    Ok(p)
}

fn main() -> conjfree::Result<()> {
    run_example().map(|_| ())
}
