//! End-to-end acceptance checks. Each numbered criterion prints one
//! pass/fail line; the test fails if any criterion fails.

use fieldlab::cli;
use fieldlab::codes;
use fieldlab::designs;
use fieldlab::fingeo;
use fieldlab::gfield::{self, FieldOp, FieldOps};
use fieldlab::modarith;
use fieldlab::polyring::{self, PrimePoly};
use fieldlab::tablesearch::{self, SearchOptions};
use std::time::Instant;

struct Tally {
    failures: Vec<String>,
}

impl Tally {
    fn run(&mut self, number: usize, label: &str, f: impl FnOnce() -> Result<(), String>) {
        match f() {
            Ok(()) => println!("criterion {number:2} ({label}): pass"),
            Err(msg) => {
                println!("criterion {number:2} ({label}): FAIL - {msg}");
                self.failures.push(format!("{number}: {msg}"));
            }
        }
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn prime_power(n: u64) -> Option<(u64, usize)> {
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            break;
        }
        p += 1;
    }
    if n % p != 0 {
        p = n;
    }
    let mut rest = n;
    let mut r = 0;
    while rest % p == 0 {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p, r))
}

fn criterion_1() -> Result<(), String> {
    let start = Instant::now();
    let mut raw = Vec::new();
    let mut iso5 = 0;
    for n in 2..=7 {
        let r = tablesearch::enumerate_field_tables(n).map_err(|e| e.to_string())?;
        raw.push(r.raw_count);
        if n == 5 {
            iso5 = r.iso_classes;
        }
    }
    expect("n=3 raw", raw[1], 1)?;
    expect("n=4 raw", raw[2], 1)?;
    expect("n=6 raw", raw[4], 0)?;
    expect("n=5 raw", raw[3], 6)?;
    expect("n=5 iso classes", iso5, 1)?;
    let elapsed = start.elapsed();
    if elapsed.as_secs() >= 60 {
        return Err(format!("search for n in [2,7] took {elapsed:?} (budget 60s)"));
    }
    Ok(())
}

fn criterion_2() -> Result<(), String> {
    // Unique field per order: any two quotient presentations are isomorphic.
    for n in 2..=49u64 {
        let Some((p, r)) = prime_power(n) else {
            continue;
        };
        if r < 2 {
            // Degree-1 moduli all present the same prime field.
            continue;
        }
        let moduli = polyring::monic_irreducibles(p, r).map_err(|e| e.to_string())?;
        if moduli.len() < 2 {
            continue;
        }
        let ta = gfield::build_op_tables(&gfield::make_field(p, &moduli[0]).unwrap())
            .map_err(|e| e.to_string())?;
        let tb = gfield::build_op_tables(&gfield::make_field(p, &moduli[1]).unwrap())
            .map_err(|e| e.to_string())?;
        if tablesearch::tables_isomorphic(&ta, &tb)
            .map_err(|e| e.to_string())?
            .is_none()
        {
            return Err(format!("order {n}: tables from two moduli not isomorphic"));
        }
    }
    // No field on a non-prime-power number of labels.
    for n in [6usize, 10, 12] {
        let r = tablesearch::enumerate_field_tables_with(
            n,
            SearchOptions {
                allow_extended: true,
                ..Default::default()
            },
        )
        .map_err(|e| e.to_string())?;
        expect(&format!("n={n} raw count"), r.raw_count, 0)?;
    }
    Ok(())
}

fn criterion_3() -> Result<(), String> {
    let modulus = PrimePoly::new(2, [1, 1, 1]).unwrap();
    let f4 = gfield::make_field(2, &modulus).unwrap();
    let z1 = f4.elem(&PrimePoly::new(2, [1, 1]).unwrap()).unwrap();
    let sq = gfield::elem_op(&z1, &z1, FieldOp::Mul).map_err(|e| e.to_string())?;
    expect("(z+1)^2 in F_4", sq.rep().clone(), PrimePoly::var(2).unwrap())?;

    let f = PrimePoly::new(2, [1, 0, 1]).unwrap();
    let g = PrimePoly::new(2, [1, 1, 1]).unwrap();
    let (q, rem) = polyring::poly_divmod(&f, &g).map_err(|e| e.to_string())?;
    expect("quotient", q, PrimePoly::one(2))?;
    expect("remainder", rem, PrimePoly::var(2).unwrap())
}

fn criterion_4() -> Result<(), String> {
    for p in [2u64, 3, 5, 7] {
        let field = gfield::prime_field(p).unwrap();
        let subs = fingeo::one_dim_subspaces(&field, 2).map_err(|e| e.to_string())?;
        expect(&format!("1-dim subspaces of F_{p}^2"), subs.len() as u64, p + 1)?;
    }
    let f5 = gfield::prime_field(5).unwrap();
    let planes = fingeo::subspaces_of_dim(&f5, 3, 2).map_err(|e| e.to_string())?;
    expect("2-dim subspaces of F_5^3 (enumeration)", planes.len(), 31)?;
    let lines = fingeo::one_dim_subspaces(&f5, 3).map_err(|e| e.to_string())?;
    expect("duality: 1-dim count equals 2-dim count", lines.len(), planes.len())?;
    for q in [2u64, 3, 5] {
        let field = gfield::prime_field(q).unwrap();
        let bases = fingeo::count_bases(&field).map_err(|e| e.to_string())?;
        expect(
            &format!("ordered bases of F_{q}^2"),
            bases,
            (q * q - 1) * (q * q - q),
        )?;
    }
    Ok(())
}

fn field_of_order(q: u64) -> gfield::Field {
    let (p, r) = prime_power(q).unwrap();
    if r == 1 {
        gfield::prime_field(p).unwrap()
    } else {
        let modulus = polyring::monic_irreducibles(p, r).unwrap().remove(0);
        gfield::make_field(p, &modulus).unwrap()
    }
}

fn criterion_5() -> Result<(), String> {
    for q in [2u64, 3, 4, 5] {
        let plane = fingeo::projective_plane(&field_of_order(q)).map_err(|e| e.to_string())?;
        let expected = (q * q + q + 1) as usize;
        expect(&format!("q={q} points"), plane.points.len(), expected)?;
        expect(&format!("q={q} lines"), plane.lines.len(), expected)?;
        for line in &plane.lines {
            expect(&format!("q={q} points per line"), line.len() as u64, q + 1)?;
        }
        let violations = fingeo::verify_plane_axioms(&plane);
        expect(&format!("q={q} axiom violations"), violations.len(), 0)?;
        let design = designs::design_from_plane(&plane).map_err(|e| e.to_string())?;
        expect(&format!("q={q} strength"), design.t, 2)?;
        expect(&format!("q={q} lambda"), design.lambda, 1)?;
    }
    Ok(())
}

fn criterion_6() -> Result<(), String> {
    let cli::Fixture::Design(d) = cli::load_fixture("nine-point-design").map_err(|e| e.to_string())?
    else {
        return Err("fixture is not a design".into());
    };
    expect("parameters", (d.t, d.v, d.k, d.lambda, d.b()), (2, 9, 3, 1, 12))?;
    let resolution = designs::find_resolution(&d)
        .map_err(|e| e.to_string())?
        .ok_or("no resolution found")?;
    let mut classes: Vec<Vec<usize>> = resolution
        .classes
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c
        })
        .collect();
    classes.sort();
    // The fixture lists the blocks class by class: rows, columns, and the
    // two diagonal directions, three blocks each.
    let grouped = vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8], vec![9, 10, 11]];
    expect("resolution classes", classes, grouped)
}

fn criterion_7() -> Result<(), String> {
    let start = Instant::now();
    for v in 1..=6usize {
        for t in 1..=3.min(v) {
            let found = designs::k_equals_t_designs(v, t).map_err(|e| e.to_string())?;
            expect(&format!("v={v} t={t} design count"), found.len(), 1)?;
            let d = &found[0];
            expect(&format!("v={v} t={t} lambda"), d.lambda, 1)?;
            let complete = (0..t as u64).fold(1u64, |acc, i| acc * (v as u64 - i) / (i + 1));
            expect(
                &format!("v={v} t={t} block count"),
                d.b() as u64,
                complete,
            )?;
        }
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs() >= 30 {
        return Err(format!("k = t search took {elapsed:?} (budget 30s)"));
    }
    Ok(())
}

fn criterion_8() -> Result<(), String> {
    let rep3 = codes::repetition_code(3);
    let decoded =
        codes::decode_transmission(&rep3, "010 111 110 000").map_err(|e| e.to_string())?;
    expect("rep-3 decode", decoded, "0110".to_string())?;

    let cli::Fixture::Plane(fano) = cli::load_fixture("fano").map_err(|e| e.to_string())? else {
        return Err("fano fixture is not a plane".into());
    };
    let design = designs::design_from_plane(&fano).map_err(|e| e.to_string())?;
    let code = codes::code_from_design(&design, true).map_err(|e| e.to_string())?;
    expect("extended code size", code.codewords.len(), 16)?;
    let dist = codes::min_distance(&code).map_err(|e| e.to_string())?;
    expect("extended code distance", dist.min_distance, 3)?;
    expect(
        "extended code perfect",
        codes::is_perfect(&code).map_err(|e| e.to_string())?,
        true,
    )?;
    expect(
        "rep-3 perfect",
        codes::is_perfect(&rep3).map_err(|e| e.to_string())?,
        true,
    )
}

fn criterion_9() -> Result<(), String> {
    let f = PrimePoly::new(5, [4, 0, 1, 0, 1]).unwrap();
    let roots = polyring::poly_roots(&f).map_err(|e| e.to_string())?;
    expect("roots in Z_5", roots, vec![])?;
    expect(
        "irreducible",
        polyring::is_irreducible(&f).map_err(|e| e.to_string())?,
        false,
    )?;
    let fac = polyring::factor_poly(&f).map_err(|e| e.to_string())?;
    expect("unit factor", fac.unit, 1)?;
    expect("factor count", fac.factors.len(), 2)?;
    expect("equal factors", fac.factors[0] == fac.factors[1], true)?;
    expect("factor degree", fac.factors[0].degree(), Some(2))
}

fn criterion_10() -> Result<(), String> {
    for n1 in 2..=12u64 {
        for n2 in 2..=12u64 {
            let product = modarith::product_ring_units(n1, n2).map_err(|e| e.to_string())?;
            let u1 = modarith::unit_group(n1).unwrap();
            let u2 = modarith::unit_group(n2).unwrap();
            let mut expected = Vec::new();
            for a in &u1 {
                for b in &u2 {
                    expected.push((a.value, b.value));
                }
            }
            expected.sort_unstable();
            let mut got: Vec<(u64, u64)> =
                product.iter().map(|(a, b)| (a.value, b.value)).collect();
            got.sort_unstable();
            expect(&format!("units of Z_{n1} x Z_{n2}"), got, expected)?;
        }
    }
    Ok(())
}

fn criterion_11() -> Result<(), String> {
    let start = Instant::now();
    let rep3 = codes::repetition_code(3);
    let (p, trials, seed) = (0.01f64, 100_000u64, 42u64);
    let report = codes::channel_simulate(&rep3, p, trials, seed).map_err(|e| e.to_string())?;
    let expected = 1.0 - 3.0 * p * p + 2.0 * p * p * p;
    let se = (expected * (1.0 - expected) / trials as f64).sqrt();
    let delta = (report.per_letter_success_rate - expected).abs();
    if delta > 3.0 * se {
        return Err(format!(
            "success rate {} off the analytic value {expected} by {delta} (> 3 SE = {})",
            report.per_letter_success_rate,
            3.0 * se
        ));
    }
    let again = codes::channel_simulate(&rep3, p, trials, seed).map_err(|e| e.to_string())?;
    expect(
        "byte-identical rerun",
        cli::to_canonical_json(&again),
        cli::to_canonical_json(&report),
    )?;
    let elapsed = start.elapsed();
    if elapsed.as_secs() >= 5 {
        return Err(format!("simulation took {elapsed:?} (budget 5s)"));
    }
    Ok(())
}

#[test]
fn acceptance() {
    let mut tally = Tally { failures: Vec::new() };
    tally.run(1, "table search counts", criterion_1);
    tally.run(2, "unique field per prime power", criterion_2);
    tally.run(3, "quotient-ring arithmetic", criterion_3);
    tally.run(4, "subspace and basis counting", criterion_4);
    tally.run(5, "projective planes", criterion_5);
    tally.run(6, "nine-point design", criterion_6);
    tally.run(7, "k = t exhaustion", criterion_7);
    tally.run(8, "codes and perfection", criterion_8);
    tally.run(9, "rootless reducible quartic", criterion_9);
    tally.run(10, "product-ring units", criterion_10);
    tally.run(11, "channel simulation", criterion_11);
    assert!(
        tally.failures.is_empty(),
        "failed criteria: {:?}",
        tally.failures
    );
}
