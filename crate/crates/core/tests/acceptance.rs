//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs as part of `cargo test`.

use std::process::ExitCode;
use std::time::Instant;

use conjfree::fan_graph::{certify_conjugation_free, ComponentKind, FanGraph};
use conjfree::geometry::{is_transversal, pencil, Arrangement, IncidenceLattice};
use conjfree::monoid::{
    check_lcm_existence, check_left_cancellativity, enumerate_classes, GradedClasses,
    DEFAULT_SIZE_CAP,
};
use conjfree::presentation::{Gen, Presentation};
use conjfree::reversing::{
    complement, cube_condition_complement_form, cube_condition_direct,
    cube_condition_direct_on_set, double_complement, is_complete, permutations, reverse_with,
    word_problem, Completeness, CubeVerdict, Outcome, SignedLetter, SignedWord, Strategy,
    WordProblem, DEFAULT_BUDGET,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn present(arr: &Arrangement) -> Presentation {
    Presentation::from_lattice(&IncidenceLattice::build(arr))
}

fn arrangement(rows: &[[i64; 3]]) -> Arrangement {
    Arrangement::from_integers(rows).expect("fixture rows are valid")
}

fn triangle() -> Arrangement {
    arrangement(&[[1, 0, 0], [0, 1, 0], [1, 1, 1]])
}

/// Two triple points on `y = 0`, at the origin and at `(4, 0)`.
fn shared_line() -> Arrangement {
    arrangement(&[[0, 1, 0], [1, 0, 0], [1, -1, 0], [1, 0, 4], [1, 1, 4]])
}

fn ceva_type() -> Arrangement {
    arrangement(&[
        [1, 0, 0],
        [0, 1, 0],
        [1, 0, 1],
        [0, 1, 1],
        [1, -1, 0],
        [1, 1, 1],
    ])
}

/// Two lines through `(10, 3)` avoiding the slopes of [`pencil`].
fn second_pencil() -> Arrangement {
    arrangement(&[[2, -1, 17], [3, 1, 33]])
}

fn generic_lines(count: usize) -> Arrangement {
    arrangement(&[[1, 7, 5], [3, 11, -4]][..count])
}

fn word_name(p: &Presentation, w: &[Gen]) -> String {
    p.format_word(w)
}

fn criterion_1() -> Check {
    let p = present(&triangle());
    for [i, j, k] in permutations([0, 1, 2]) {
        let c = complement(&p, &[i], &[j], DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        if c.as_ref().map(|w| w.letters()) != Some(&[j][..]) {
            return Err(format!("x{i}\\x{j} = {c:?}, expected x{j}"));
        }
        for (a, b) in [(i, j), (j, i)] {
            let d = double_complement(&p, &[a], &[b], &[k], DEFAULT_BUDGET)
                .map_err(|e| e.to_string())?;
            if d.as_ref().map(|w| w.letters()) != Some(&[k][..]) {
                return Err(format!("(x{a}\\x{b})\\(x{a}\\x{k}) = {d:?}, expected x{k}"));
            }
        }
    }
    Ok("6 orderings: x_i\\x_j = x_j, both double complements = x_k".into())
}

fn both_double_complements_empty(p: &Presentation, triple: [Gen; 3]) -> Result<(), String> {
    for [i, j, k] in permutations(triple) {
        for (a, b) in [(i, j), (j, i)] {
            let d = double_complement(p, &[a], &[b], &[k], DEFAULT_BUDGET)
                .map_err(|e| e.to_string())?;
            match d {
                Some(w) if w.is_empty() => {}
                other => {
                    return Err(format!(
                        "(x{a}\\x{b})\\(x{a}\\x{k}) = {:?}, expected empty",
                        other.map(|w| word_name(p, w.letters()))
                    ))
                }
            }
        }
    }
    Ok(())
}

fn criterion_2() -> Check {
    let p = present(&pencil(4));
    let mut triples = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            for k in j + 1..4 {
                both_double_complements_empty(&p, [i, j, k])?;
                triples += 1;
            }
        }
    }
    Ok(format!(
        "{triples} triples x 6 orderings, all double complements empty"
    ))
}

fn criterion_3() -> Check {
    let p = present(&pencil(6));
    both_double_complements_empty(&p, [0, 2, 4])?;
    Ok("triple (x0, x2, x4), 6 orderings, all double complements empty".into())
}

/// Presentations whose fan graph has no edges.
fn edgeless_fixtures() -> Vec<(String, Arrangement)> {
    let mut out: Vec<(String, Arrangement)> = (3..=6)
        .map(|m| (format!("pencil({m})"), pencil(m)))
        .collect();
    for (m, extra) in [(3, 1), (3, 2), (4, 1)] {
        let arr = pencil(m)
            .union(&generic_lines(extra))
            .expect("no shared lines");
        out.push((format!("pencil({m})+{extra} generic"), arr));
    }
    let two = pencil(3).union(&second_pencil()).expect("no shared lines");
    out.push(("pencil(3) x pencil(2)".into(), two));
    out
}

struct Explored {
    name: String,
    presentation: Presentation,
    classes: GradedClasses,
}

/// Compares reversing with the class oracle on every ordered pair of
/// equal-length words up to the oracle's maximum length.
fn word_problem_disagreements(p: &Presentation, gc: &GradedClasses) -> (usize, usize) {
    let mut pairs = 0;
    let mut bad = 0;
    for len in 1..=gc.max_length() {
        let words: Vec<Vec<Gen>> = gc.words(len).collect();
        let classes: Vec<usize> = words.iter().map(|w| gc.class_of(w).unwrap()).collect();
        for (w, cw) in words.iter().zip(&classes) {
            for (w2, cw2) in words.iter().zip(&classes) {
                pairs += 1;
                let verdict = word_problem(p, w, w2, DEFAULT_BUDGET);
                let expected = if cw == cw2 {
                    WordProblem::Equal
                } else {
                    WordProblem::Distinct
                };
                if verdict != expected {
                    bad += 1;
                }
            }
        }
    }
    (pairs, bad)
}

fn criterion_4(explored: &mut Vec<Explored>) -> Check {
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for (name, arr) in edgeless_fixtures() {
        let lat = IncidenceLattice::build(&arr);
        let graph = FanGraph::build(&lat);
        if !graph.edges.is_empty() {
            failures.push(format!(
                "{name}: fixture graph has {} edges",
                graph.edges.len()
            ));
            continue;
        }
        let p = Presentation::from_lattice(&lat);
        let report = is_complete(&p, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        if report.verdict != Completeness::Complete {
            failures.push(format!("{name}: {:?}", report.verdict));
        }
        let gc = enumerate_classes(&p, 5, 10_000_000).map_err(|e| e.to_string())?;
        let (pairs, bad) = word_problem_disagreements(&p, &gc);
        if bad > 0 {
            failures.push(format!("{name}: {bad}/{pairs} word-problem disagreements"));
        }
        notes.push(format!("{name} {pairs}"));
        explored.push(Explored {
            name,
            presentation: p,
            classes: gc,
        });
    }
    if failures.is_empty() {
        Ok(format!(
            "all complete, 0 disagreements over ordered pairs up to length 5 [{}]",
            notes.join(", ")
        ))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_5() -> Check {
    let arr = shared_line();
    let graph = FanGraph::build(&IncidenceLattice::build(&arr));
    if graph.edges.len() != 1 {
        return Err(format!(
            "fixture graph has {} edges, expected 1",
            graph.edges.len()
        ));
    }
    let p = present(&arr);
    let report = is_complete(&p, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let Completeness::Incomplete { witness } = report.verdict else {
        return Err(format!("verdict {:?}", report.verdict));
    };
    let [a, b, c] = witness;
    if cube_condition_direct(&p, &[a], &[b], &[c], DEFAULT_BUDGET) != CubeVerdict::Fails {
        return Err("witness does not reproduce".into());
    }
    let n = p.generator_count();
    let failing = (0..n * n * n)
        .filter(|&t| {
            let (a, b, c) = (t / (n * n), t / n % n, t % n);
            cube_condition_direct(&p, &[a], &[b], &[c], DEFAULT_BUDGET) == CubeVerdict::Fails
        })
        .count();
    // An independent confirmation: equivalent words that reversing separates.
    let gc = enumerate_classes(&p, 4, DEFAULT_SIZE_CAP).map_err(|e| e.to_string())?;
    let mut missed = None;
    'search: for len in 1..=4 {
        let words: Vec<Vec<Gen>> = gc.words(len).collect();
        for w in &words {
            for w2 in &words {
                if gc.class_of(w).unwrap() == gc.class_of(w2).unwrap()
                    && word_problem(&p, w, w2, DEFAULT_BUDGET) != WordProblem::Equal
                {
                    missed = Some((w.clone(), w2.clone()));
                    break 'search;
                }
            }
        }
    }
    let Some((w, w2)) = missed else {
        return Err("no equivalent pair separated by reversing up to length 4".into());
    };
    Ok(format!(
        "incomplete, witness ({}, {}, {}); {failing}/{} ordered triples fail; {} = {} not detected by reversing",
        p.name(a),
        p.name(b),
        p.name(c),
        n * n * n,
        word_name(&p, &w),
        word_name(&p, &w2),
    ))
}

fn random_arrangement(rng: &mut ChaCha8Rng) -> Arrangement {
    let size = rng.gen_range(3..=7);
    loop {
        let rows: Vec<[i64; 3]> = (0..size)
            .map(|_| {
                [
                    rng.gen_range(-2..=2),
                    rng.gen_range(-2..=2),
                    rng.gen_range(-3..=3),
                ]
            })
            .collect();
        if let Ok(arr) = Arrangement::from_integers(&rows) {
            return arr;
        }
    }
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut with_multiple = 0;
    let mut with_parallel = 0;
    for trial in 0..100 {
        let arr = random_arrangement(&mut rng);
        let lat = IncidenceLattice::build(&arr);
        with_multiple += usize::from(lat.multiple_points().next().is_some());
        with_parallel += usize::from(!lat.parallel_pairs().is_empty());
        let report = Presentation::from_lattice(&lat).is_complemented();
        if !report.ok {
            return Err(format!(
                "arrangement {trial} ({}): {:?}",
                arr.to_text().replace('\n', "; "),
                report.violations
            ));
        }
    }
    Ok(format!(
        "100/100 complemented ({with_multiple} with multiple points, {with_parallel} with parallel lines)"
    ))
}

fn criterion_7() -> Check {
    let graph = |arr: &Arrangement| FanGraph::build(&IncidenceLattice::build(arr));
    let g = graph(&pencil(4));
    if (g.vertices.len(), g.edges.len()) != (1, 0) {
        return Err(format!(
            "pencil: {} vertices, {} edges",
            g.vertices.len(),
            g.edges.len()
        ));
    }
    let path = arrangement(&[
        [0, 1, 0],
        [1, 0, 0],
        [1, -1, 0],
        [1, 0, 4],
        [1, 1, 4],
        [1, 0, 8],
        [1, -1, 8],
    ]);
    let g = graph(&path);
    let class = g.classify();
    if g.edges.len() != 2
        || class.components.len() != 1
        || class.components[0].kind != ComponentKind::Tree
        || class.components[0].vertex_count != 3
    {
        return Err(format!("three on a line: {class:?}"));
    }
    let ceva = ceva_type();
    let g = graph(&ceva);
    if (g.vertices.len(), g.edges.len()) != (4, 6) {
        return Err(format!(
            "ceva-type: {} vertices, {} edges",
            g.vertices.len(),
            g.edges.len()
        ));
    }
    if certify_conjugation_free(&ceva).applicable {
        return Err("ceva-type certified".into());
    }
    Ok("pencil 1v/0e; three on a line: path 3v/2e; ceva-type 4v/6e, not certified".into())
}

fn criterion_8() -> Check {
    let (a, b) = (pencil(3), second_pencil());
    if !is_transversal(&a, &b).map_err(|e| e.to_string())? {
        return Err("not detected transversal".into());
    }
    let union = a.union(&b).map_err(|e| e.to_string())?;
    let p = present(&union);
    let report = is_complete(&p, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    if report.verdict != Completeness::Complete {
        return Err(format!("union: {:?}", report.verdict));
    }
    let counts = |arr: &Arrangement| {
        enumerate_classes(&present(arr), 4, DEFAULT_SIZE_CAP).map(|gc| gc.class_counts())
    };
    let (ca, cb, cu) = (
        counts(&a).map_err(|e| e.to_string())?,
        counts(&b).map_err(|e| e.to_string())?,
        counts(&union).map_err(|e| e.to_string())?,
    );
    let product: Vec<usize> = (0..=4)
        .map(|l| (0..=l).map(|i| ca[i] * cb[l - i]).sum())
        .collect();
    if cu != product {
        return Err(format!("union counts {cu:?}, product {product:?}"));
    }
    Ok(format!(
        "transversal, union complete, class counts {cu:?} = product of {ca:?} and {cb:?}"
    ))
}

fn criterion_9(explored: &[Explored]) -> Check {
    if explored.is_empty() {
        return Err("no presentations from criterion 4".into());
    }
    for e in explored {
        let cancel = check_left_cancellativity(&e.classes);
        if !cancel.ok {
            return Err(format!("{}: {:?}", e.name, cancel.counterexample));
        }
        let lcm = check_lcm_existence(&e.classes, &e.presentation);
        if let Some(bad) = lcm.pairs.iter().find(|r| !r.ok) {
            return Err(format!(
                "{}: lcm of ({}, {}): {}",
                e.name, bad.s, bad.t, bad.detail
            ));
        }
    }
    Ok(format!(
        "{} presentations left-cancellative with generator-pair lcms up to length 5",
        explored.len()
    ))
}

fn random_signed_word(rng: &mut ChaCha8Rng, n: usize) -> SignedWord {
    let len = rng.gen_range(1..=8);
    SignedWord(
        (0..len)
            .map(|_| SignedLetter {
                generator: rng.gen_range(0..n),
                inverse: rng.gen_bool(0.5),
            })
            .collect(),
    )
}

fn criterion_10(explored: &[Explored]) -> Check {
    if explored.is_empty() {
        return Err("no presentations from criterion 4".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut compared = 0;
    let mut disagreements = Vec::new();
    for e in explored {
        let p = &e.presentation;
        for _ in 0..1000 {
            let w = random_signed_word(&mut rng, p.generator_count());
            let seed = rng.gen();
            let left = reverse_with(p, w.clone(), DEFAULT_BUDGET, Strategy::Leftmost);
            let random = reverse_with(p, w.clone(), DEFAULT_BUDGET, Strategy::Random { seed });
            if let (Outcome::Terminal(x), Outcome::Terminal(y)) = (&left, &random) {
                compared += 1;
                if x != y {
                    disagreements.push(format!("{}: {}", e.name, w.display(p)));
                }
            }
        }
    }
    if disagreements.is_empty() {
        Ok(format!(
            "{} words, {compared} terminated under both strategies, 0 disagreements",
            1000 * explored.len()
        ))
    } else {
        Err(format!(
            "{} disagreements, first {}",
            disagreements.len(),
            disagreements[0]
        ))
    }
}

fn criterion_11(explored: &[Explored]) -> Check {
    let mut fixtures: Vec<(String, Presentation)> = vec![
        ("triangle".into(), present(&triangle())),
        ("shared line".into(), present(&shared_line())),
        ("ceva-type".into(), present(&ceva_type())),
    ];
    fixtures.extend(
        explored
            .iter()
            .map(|e| (e.name.clone(), e.presentation.clone())),
    );
    let mut triples = 0;
    let mut tally = [0usize; 3];
    for (name, p) in &fixtures {
        let n = p.generator_count();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    triples += 1;
                    let direct = cube_condition_direct_on_set(p, &[a], &[b], &[c], DEFAULT_BUDGET);
                    let complement =
                        cube_condition_complement_form(p, &[a], &[b], &[c], DEFAULT_BUDGET);
                    if direct != complement {
                        return Err(format!(
                            "{name} ({a}, {b}, {c}): direct {direct:?}, complement form {complement:?}"
                        ));
                    }
                    tally[direct as usize] += 1;
                }
            }
        }
    }
    Ok(format!(
        "{triples} triples over {} presentations agree (holds {}, fails {}, undetermined {})",
        fixtures.len(),
        tally[0],
        tally[1],
        tally[2]
    ))
}

fn main() -> ExitCode {
    let mut explored = Vec::new();
    let mut failed = 0;
    let mut report = |number: usize, result: Check, started: Instant| {
        let secs = started.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {number:>2} ({secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {number:>2} ({secs:.1}s): {detail}");
            }
        }
    };
    let t = Instant::now();
    report(1, criterion_1(), t);
    let t = Instant::now();
    report(2, criterion_2(), t);
    let t = Instant::now();
    report(3, criterion_3(), t);
    let t = Instant::now();
    let r = criterion_4(&mut explored);
    report(4, r, t);
    let t = Instant::now();
    report(5, criterion_5(), t);
    let t = Instant::now();
    report(6, criterion_6(), t);
    let t = Instant::now();
    report(7, criterion_7(), t);
    let t = Instant::now();
    report(8, criterion_8(), t);
    let t = Instant::now();
    report(9, criterion_9(&explored), t);
    let t = Instant::now();
    report(10, criterion_10(&explored), t);
    let t = Instant::now();
    report(11, criterion_11(&explored), t);
    if failed == 0 {
        println!("acceptance: all 11 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 11 criteria failed");
        ExitCode::FAILURE
    }
}
