//! Acceptance suite: one PASS/FAIL line per criterion, each with its wall
//! time and time limit. Run with `cargo test -p pe-parabolic --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use pe_parabolic::oracle::{
    default_bound, verify_classification, verify_flag_suite, verify_orders, verify_ringel_suite,
    Report,
};
use pe_parabolic::partitions::{enumerate, Bipartition, BrpClass};
use pe_parabolic::periplectic::{
    borel_odd_dim, borel_odd_roots, decompose, pe_datum, pi_predicates, pi_selfdual, zeta,
};
use pe_parabolic::piclass::{pi_spo_even, pi_spo_even_rho, pi_type_one, spo_even_oracle};
use pe_parabolic::weights::{is_antidominant, q, Root, Shape, Weight, Q};

type Outcome = std::result::Result<String, String>;

/// Name, check and time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn bp(mu: &[u32], nu: &[u32]) -> Bipartition {
    Bipartition::from_parts(mu, nu).expect("valid bipartition")
}

fn report_ok(r: &Report) -> std::result::Result<(), String> {
    if r.passed() {
        Ok(())
    } else {
        Err(r.to_table())
    }
}

/// Integer vectors of length `k` with entries in `[lo, hi]`.
fn box_grid(k: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (lo..=hi).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

fn borel_census() -> Outcome {
    for n in 1..=10 {
        let got = enumerate(n, BrpClass::Borel).len();
        if got != 1 << n {
            return Err(format!("n={n}: {got} Borel labels"));
        }
    }
    Ok("2^n Borel labels for n = 1..10".into())
}

fn brp2_atlas() -> Outcome {
    let mut borel = vec![
        bp(&[2, 1], &[]),
        bp(&[2], &[1]),
        bp(&[1], &[2]),
        bp(&[], &[2, 1]),
    ];
    let mut reduced = borel.clone();
    reduced.extend([bp(&[1, 1], &[]), bp(&[], &[1, 1])]);
    borel.sort();
    reduced.sort();
    let mut got_b = enumerate(2, BrpClass::Borel);
    let mut got_r = enumerate(2, BrpClass::Reduced);
    got_b.sort();
    got_r.sort();
    if got_b != borel {
        return Err(format!("BRP00_2 = {got_b:?}"));
    }
    if got_r != reduced {
        return Err(format!("BRP0_2 = {got_r:?}"));
    }
    Ok("BRP0_2 (6) and BRP00_2 (4) match".into())
}

fn classification_bijection() -> Outcome {
    let mut summary = Vec::new();
    for n in 1..=3 {
        let r = verify_classification(n, default_bound(n)).map_err(|e| e.to_string())?;
        report_ok(&r)?;
        let expected = format!(
            "{} decompositions, {} reduced, {} Borel",
            enumerate(n, BrpClass::All).len(),
            enumerate(n, BrpClass::Reduced).len(),
            1 << n
        );
        let detail = r.checks[0].detail.clone().unwrap_or_default();
        if detail != expected {
            return Err(format!("n={n}: {detail}, expected {expected}"));
        }
        summary.push(format!("n={n}: {detail}"));
    }
    Ok(summary.join("; "))
}

fn example_decompositions() -> Outcome {
    let s = Shape::eps_only(2);
    let e = |i| Weight::eps_unit(s, i);
    let even = |w: Weight| Root::even(w);
    let odd = |w: Weight| Root::odd(w);
    let sorted = |mut v: Vec<Root>| {
        v.sort();
        v
    };
    let uminus = sorted(vec![even(&e(1) - &e(0)), odd(-(&e(0) + &e(1)))]);
    let a = decompose(&zeta(&bp(&[2, 1], &[]), 2).map_err(|e| e.to_string())?, 2)
        .map_err(|e| e.to_string())?;
    let b = decompose(&zeta(&bp(&[1], &[]), 2).map_err(|e| e.to_string())?, 2)
        .map_err(|e| e.to_string())?;
    let a_plus = sorted(vec![
        even(&e(0) - &e(1)),
        odd(e(0).scale(q(2))),
        odd(&e(0) + &e(1)),
        odd(e(1).scale(q(2))),
    ]);
    let b_plus = sorted(vec![
        even(&e(0) - &e(1)),
        odd(e(0).scale(q(2))),
        odd(&e(0) + &e(1)),
    ]);
    let checks = [
        (a.uminus == uminus, "first u-"),
        (a.levi.is_empty(), "first levi"),
        (a.uplus == a_plus, "first u+"),
        (b.uminus == uminus, "second u-"),
        (b.levi == vec![odd(e(1).scale(q(2)))], "second levi"),
        (b.uplus == b_plus, "second u+"),
        (a.parabolic() == b.parabolic(), "shared parabolic"),
        (a != b, "distinct decompositions"),
    ];
    match checks.iter().find(|(ok, _)| !ok) {
        Some((_, what)) => Err(format!("{what} differs: {a:?} / {b:?}")),
        None => Ok("two decompositions, one parabolic".into()),
    }
}

fn borel_roots_and_dims() -> Outcome {
    for n in 1..=6 {
        let s = Shape::eps_only(n);
        let e = |i| Weight::eps_unit(s, i);
        let mut std_roots = Vec::new();
        let mut rev_roots = Vec::new();
        for i in 0..n {
            for j in i..n {
                std_roots.push(Root::odd(&e(i) + &e(j)));
                if i < j {
                    rev_roots.push(Root::odd(-(&e(i) + &e(j))));
                }
            }
        }
        std_roots.sort();
        rev_roots.sort();
        let bs = borel_odd_roots(&Bipartition::standard_borel(n), n).map_err(|e| e.to_string())?;
        let br = borel_odd_roots(&Bipartition::reverse_borel(n), n).map_err(|e| e.to_string())?;
        if bs != std_roots || br != rev_roots {
            return Err(format!("n={n}: standard/reverse odd roots differ"));
        }
        let ds = borel_odd_dim(&Bipartition::standard_borel(n), n).map_err(|e| e.to_string())?;
        let dr = borel_odd_dim(&Bipartition::reverse_borel(n), n).map_err(|e| e.to_string())?;
        if ds != n * (n + 1) / 2 || dr != n * (n - 1) / 2 {
            return Err(format!("n={n}: dims {ds}, {dr}"));
        }
    }
    for n in 1..=5 {
        for x in enumerate(n, BrpClass::Borel) {
            let formula = borel_odd_roots(&x, n).map_err(|e| e.to_string())?;
            let d = decompose(&zeta(&x, n).map_err(|e| e.to_string())?, n)
                .map_err(|e| e.to_string())?;
            if formula != d.parabolic_odd() {
                return Err(format!("n={n}, {x}: formula and sign test differ"));
            }
        }
    }
    Ok("standard/reverse roots and dims for n <= 6, formula = sign test for n <= 5".into())
}

fn order_agreement() -> Outcome {
    for n in 1..=4 {
        report_ok(&verify_orders(n).map_err(|e| e.to_string())?)?;
    }
    Ok("all pairs agree for n <= 4".into())
}

fn ringel_suite() -> Outcome {
    for n in 1..=5 {
        report_ok(&verify_ringel_suite(n, 100, 0xacce97).map_err(|e| e.to_string())?)?;
    }
    Ok("100 weights per n <= 5".into())
}

fn spo_oracle_equivalence() -> Outcome {
    let mut points = 0usize;
    for (n, m) in [(1usize, 1usize), (1, 2), (2, 1), (2, 2)] {
        let b = (n + m + 2) as i64;
        let to_q = |v: &[i64]| v.iter().map(|&x| q(x)).collect::<Vec<Q>>();
        for l in box_grid(n, -b, b) {
            let lq = to_q(&l);
            let basic_l = l.windows(2).all(|w| w[0] < w[1]);
            for u in box_grid(m, -b, b) {
                let uq = to_q(&u);
                let thm = pi_spo_even(n, m, &lq, &uq).map_err(|e| e.to_string())?;
                let rho = pi_spo_even_rho(n, m, &lq, &uq).map_err(|e| e.to_string())?;
                if thm != rho {
                    return Err(format!(
                        "({n},{m}) {l:?} {u:?}: theorem {thm}, rho form {rho}"
                    ));
                }
                let basic_u = m == 1
                    || (u[..m - 1].windows(2).all(|w| w[0] < w[1]) && u[m - 2] < -u[m - 1].abs());
                if basic_l && basic_u {
                    let o = spo_even_oracle(n, m, &lq, &uq).map_err(|e| e.to_string())?;
                    if thm != (o < Q::from_integer(0)) {
                        return Err(format!("({n},{m}) {l:?} {u:?}: theorem {thm}, oracle {o}"));
                    }
                }
                points += 1;
            }
        }
    }
    Ok(format!("{points} weights"))
}

fn flag_identity() -> Outcome {
    for n in 1..=3 {
        report_ok(&verify_flag_suite(n, 6, 2, 0xf1a9).map_err(|e| e.to_string())?)?;
    }
    Ok("all Borels, n <= 3, depth 6, zero and 2 sampled weights".into())
}

fn cross_module() -> Outcome {
    for n in 1..=4 {
        let datum = pe_datum(n).map_err(|e| e.to_string())?;
        let bs = Bipartition::standard_borel(n);
        for l in box_grid(n, -3, 3) {
            let w = Weight::from_ints(&l);
            let a = pi_type_one(&datum, &w).map_err(|e| e.to_string())?;
            let b = pi_predicates(&bs, &w, n)
                .map_err(|e| e.to_string())?
                .injective;
            if a != b {
                return Err(format!("n={n}, {w}: type I {a}, standard Borel {b}"));
            }
        }
    }
    let datum = pe_datum(2).map_err(|e| e.to_string())?;
    let bs = Bipartition::standard_borel(2);
    let mut count = 0;
    for l in box_grid(2, -8, 8) {
        let w = Weight::from_ints(&l);
        let expected = is_antidominant(&datum, &w).map_err(|e| e.to_string())? && l[0] + l[1] == -1;
        let got = pi_selfdual(&bs, &w, 2).map_err(|e| e.to_string())?;
        if got != expected {
            return Err(format!("{w}: self-dual {got}, expected {expected}"));
        }
        count += usize::from(got);
    }
    Ok(format!(
        "type I agreement for n <= 4; {count} self-dual weights in the n = 2 box"
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("1 Borel census", borel_census, 1),
        ("2 BRP_2 atlas", brp2_atlas, 1),
        ("3 classification bijection", classification_bijection, 30),
        ("4 example decompositions", example_decompositions, 1),
        ("5 Borel root sets and dimensions", borel_roots_and_dims, 5),
        ("6 order agreement", order_agreement, 30),
        ("7 Ringel suite", ringel_suite, 5),
        ("8 spo oracle equivalence", spo_oracle_equivalence, 60),
        ("9 character flag identity", flag_identity, 60),
        ("10 cross-module consistency", cross_module, 5),
    ];
    let mut failures = Vec::new();
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(limit);
        let (status, note) = match (&outcome, over) {
            (Ok(msg), false) => ("PASS", msg.clone()),
            (Ok(msg), true) => ("FAIL", format!("{msg}; exceeded {limit} s")),
            (Err(msg), _) => ("FAIL", msg.clone()),
        };
        println!(
            "{status} criterion {name} [{:.2} s / {limit} s]: {note}",
            elapsed.as_secs_f64()
        );
        if status == "FAIL" {
            failures.push(name);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
