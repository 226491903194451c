// Enumerate equivalence classes of positive words and test
// left-cancellativity and generator-pair lcms.

use conjfree::geometry::{pencil, IncidenceLattice};
use conjfree::monoid::{
    check_lcm_existence, check_left_cancellativity, enumerate_classes, DEFAULT_SIZE_CAP,
};
use conjfree::presentation::Presentation;

pub fn run_example() -> conjfree::Result<(Vec<usize>, bool, bool)> {
    let p = Presentation::from_lattice(&IncidenceLattice::build(&pencil(3)));
    let classes = enumerate_classes(&p, 5, DEFAULT_SIZE_CAP)?;
    let counts = classes.class_counts();
    println!("classes per length: {counts:?}");
    let rotation = classes.class_of(&[2, 1, 0])?;
    for w in classes.class_members(3, rotation) {
        println!("  {}", p.format_word(w.letters()));
    }
    let cancel = check_left_cancellativity(&classes);
    let lcm = check_lcm_existence(&classes, &p);
    for pair in &lcm.pairs {
        let m = pair.lcm.as_ref().map(|w| p.format_word(w.letters()));
        println!(
            "lcm({}, {}) = {m:?}: {}",
            p.name(pair.s),
            p.name(pair.t),
            pair.detail
        );
    }
    println!(
        "left-cancellative up to {}: {}",
        cancel.verified_up_to, cancel.ok
    );
    Ok((counts, cancel.ok, lcm.ok))
}

fn main() -> conjfree::Result<()> {
    run_example().map(|_| ())
}
