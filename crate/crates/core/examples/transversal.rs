// Two pencils in transversal position: the union's monoid is the product
// of the two pencils' monoids, visible in the graded class counts.

use conjfree::geometry::{is_transversal, pencil, Arrangement, IncidenceLattice};
use conjfree::monoid::{enumerate_classes, DEFAULT_SIZE_CAP};
use conjfree::presentation::Presentation;
use conjfree::reversing::{is_complete, Completeness, DEFAULT_BUDGET};

fn counts(arr: &Arrangement) -> conjfree::Result<Vec<usize>> {
    let p = Presentation::from_lattice(&IncidenceLattice::build(arr));
    Ok(enumerate_classes(&p, 4, DEFAULT_SIZE_CAP)?.class_counts())
}

/// Returns (transversal, union counts, convolution of the factor counts).
pub fn run_example() -> conjfree::Result<(bool, Vec<usize>, Vec<usize>)> {
    let a = pencil(3);
    let b = Arrangement::from_integers(&[[2, -1, 17], [3, 1, 33]])?;
    let transversal = is_transversal(&a, &b)?;
    let union = a.union(&b)?;
    let p = Presentation::from_lattice(&IncidenceLattice::build(&union));
    let verdict = is_complete(&p, DEFAULT_BUDGET)?.verdict;
    println!(
        "transversal {transversal}, union {}",
        if verdict == Completeness::Complete {
            "complete"
        } else {
            "not complete"
        }
    );

    let (ca, cb, cu) = (counts(&a)?, counts(&b)?, counts(&union)?);
    let product: Vec<usize> = (0..cu.len())
        .map(|l| (0..=l).map(|i| ca[i] * cb[l - i]).sum())
        .collect();
    println!("factors {ca:?} and {cb:?}\nunion   {cu:?}\nproduct {product:?}");
    Ok((transversal, cu, product))
}

fn main() -> conjfree::Result<()> {
    run_example().map(|_| ())
}
