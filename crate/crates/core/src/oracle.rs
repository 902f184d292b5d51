//! Brute-force re-derivation of the finite claims about `pe(n)`: grid sweeps
//! over integral `δ`, exhaustive order comparisons, and randomized weight-map
//! and character checks. All sweeps are sequential and seeded, so repeated
//! runs produce identical reports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::characters::verify_flag_identity;
use crate::error::{Error, Result};
use crate::partitions::{enumerate, to_sign_form, Bipartition, BrpClass, SignForm};
use crate::periplectic::{
    borel_included, borel_roots, canonicalize, decompose, duality_weight_map, hat_dual,
    parabolic_included, pi_predicates, reduced_parabolic, rho_even, ringel_weight_map, zeta,
    ParabolicDecomposition, RingelMap,
};
use crate::weights::{q, weyl_apply, Root, Shape, Weight, WeylElement};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Integral grid `{δ ∈ Zⁿ : |δ_i| ≤ bound}`, optionally restricted to
/// weakly decreasing vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub n: usize,
    pub bound: u32,
    pub weakly_decreasing: bool,
}

impl GridSpec {
    /// The weakly decreasing grid with the default bound `n + 2`.
    pub fn standard(n: usize) -> GridSpec {
        GridSpec {
            n,
            bound: default_bound(n),
            weakly_decreasing: true,
        }
    }

    fn points(&self) -> Vec<Vec<i64>> {
        let b = self.bound as i64;
        let mut out: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..self.n {
            let mut next = Vec::new();
            for p in &out {
                let hi = if self.weakly_decreasing {
                    p.last().copied().unwrap_or(b)
                } else {
                    b
                };
                for x in -b..=hi {
                    let mut p = p.clone();
                    p.push(x);
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }
}

pub fn default_bound(n: usize) -> u32 {
    n as u32 + 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The rank lies outside the check's guard.
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub rank: usize,
    pub status: Status,
    /// Free-form summary such as enumeration counts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub counterexamples: Vec<String>,
}

impl Check {
    fn from_counterexamples(name: &str, rank: usize, counterexamples: Vec<String>) -> Check {
        Check {
            name: name.to_string(),
            rank,
            status: if counterexamples.is_empty() {
                Status::Pass
            } else {
                Status::Fail
            },
            detail: None,
            counterexamples,
        }
    }

    fn skipped(name: &str, rank: usize, why: String) -> Check {
        Check {
            name: name.to_string(),
            rank,
            status: Status::Skipped,
            detail: Some(why),
            counterexamples: vec![],
        }
    }

    fn with_detail(mut self, detail: String) -> Check {
        self.detail = Some(detail);
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    /// No check failed (skipped checks do not count as failures).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn to_table(&self) -> String {
        let width = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(4)
            .max(4);
        let mut out = format!("{:<width$}  rank  status   counterexamples\n", "name");
        for c in &self.checks {
            out.push_str(&format!(
                "{:<width$}  {:>4}  {:<7}  {}",
                c.name,
                c.rank,
                c.status.to_string(),
                c.counterexamples.len()
            ));
            if let Some(d) = &c.detail {
                out.push_str(&format!("  ({d})"));
            }
            out.push('\n');
            for ce in &c.counterexamples {
                out.push_str(&format!("    {ce}\n"));
            }
        }
        out
    }
}

fn guard(name: &str, n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        Err(Error::Precondition(format!(
            "{name} is limited to 1 <= n <= {max}, got {n}"
        )))
    } else {
        Ok(())
    }
}

/// Every grid point grouped by the decomposition it induces.
fn sweep(grid: GridSpec) -> Result<BTreeMap<ParabolicDecomposition, Vec<Weight>>> {
    let mut out: BTreeMap<ParabolicDecomposition, Vec<Weight>> = BTreeMap::new();
    for p in grid.points() {
        let delta = Weight::from_ints(&p);
        out.entry(decompose(&delta, grid.n)?)
            .or_default()
            .push(delta);
    }
    Ok(out)
}

/// Distinct decompositions `(u⁻, l, u⁺)` over the grid.
pub fn enumerate_decompositions(grid: GridSpec) -> Result<BTreeSet<ParabolicDecomposition>> {
    Ok(sweep(grid)?.into_keys().collect())
}

fn images(n: usize, class: BrpClass) -> Result<BTreeSet<ParabolicDecomposition>> {
    enumerate(n, class)
        .iter()
        .map(|x| decompose(&zeta(x, n)?, n))
        .collect()
}

fn set_difference(
    label: &str,
    found: &BTreeSet<ParabolicDecomposition>,
    expected: &BTreeSet<ParabolicDecomposition>,
) -> Vec<String> {
    let show = |d: &ParabolicDecomposition| {
        let odd: Vec<String> = d
            .parabolic_odd()
            .iter()
            .map(|r| r.weight.to_string())
            .collect();
        let levi: Vec<String> = d.levi.iter().map(|r| r.to_string()).collect();
        format!("odd part [{}], levi [{}]", odd.join(", "), levi.join(", "))
    };
    let mut out: Vec<String> = found
        .difference(expected)
        .map(|d| format!("{label}: brute force only: {}", show(d)))
        .collect();
    out.extend(
        expected
            .difference(found)
            .map(|d| format!("{label}: labels only: {}", show(d))),
    );
    out
}

/// Checks the bijections between BRP classes and decompositions found by a
/// brute-force sweep, plus stability of the sweep under `bound + 1`.
pub fn verify_classification(n: usize, bound: u32) -> Result<Report> {
    guard("verify_classification", n, 4)?;
    let grid = GridSpec {
        n,
        bound,
        weakly_decreasing: true,
    };
    let found = sweep(grid)?;
    let all: BTreeSet<ParabolicDecomposition> = found.keys().cloned().collect();
    let reduced: BTreeSet<_> = all.iter().filter(|d| d.is_reduced()).cloned().collect();
    let borel: BTreeSet<_> = all.iter().filter(|d| d.is_borel()).cloned().collect();

    let counts = format!(
        "{} decompositions, {} reduced, {} Borel",
        all.len(),
        reduced.len(),
        borel.len()
    );
    let labels = enumerate(n, BrpClass::All).len();
    let mut bijection = set_difference("BRP", &all, &images(n, BrpClass::All)?);
    if all.len() != labels {
        bijection.push(format!("{} decompositions but {labels} labels", all.len()));
    }

    let mut canonical = Vec::new();
    for (d, deltas) in &found {
        for delta in deltas {
            let agrees = canonicalize(delta, n)
                .and_then(|x| decompose(&zeta(&x, n)?, n))
                .map(|c| c == *d);
            match agrees {
                Ok(true) => {}
                Ok(false) => canonical.push(format!("delta {delta}: canonical label differs")),
                Err(e) => canonical.push(format!("delta {delta}: {e}")),
            }
        }
    }

    let stable = enumerate_decompositions(GridSpec {
        bound: bound + 1,
        ..grid
    })?;
    let stability = if stable == all {
        vec![]
    } else {
        vec![format!(
            "bound {bound} gives {} decompositions, bound {} gives {}",
            all.len(),
            bound + 1,
            stable.len()
        )]
    };

    Ok(Report {
        checks: vec![
            Check::from_counterexamples("classification_bijection", n, bijection)
                .with_detail(counts),
            Check::from_counterexamples("classification_canonical_label", n, canonical),
            Check::from_counterexamples(
                "classification_reduced",
                n,
                set_difference("BRP0", &reduced, &images(n, BrpClass::Reduced)?),
            ),
            Check::from_counterexamples(
                "classification_borel",
                n,
                set_difference("BRP00", &borel, &images(n, BrpClass::Borel)?),
            ),
            Check::from_counterexamples("grid_stability", n, stability),
        ],
    })
}

fn is_subset(a: &[Root], b: &[Root]) -> bool {
    a.iter().all(|r| b.binary_search(r).is_ok())
}

/// Compares the combinatorial inclusion criteria with root-set inclusion.
pub fn verify_orders(n: usize) -> Result<Report> {
    guard("verify_orders", n, 4)?;
    let borels = enumerate(n, BrpClass::Borel);
    let sets: Vec<Vec<Root>> = borels
        .iter()
        .map(|x| borel_roots(x, n))
        .collect::<Result<_>>()?;
    let mut borel_bad = Vec::new();
    for (i, a) in borels.iter().enumerate() {
        for (j, b) in borels.iter().enumerate() {
            if i == j {
                continue;
            }
            let subset = is_subset(&sets[i], &sets[j]);
            if borel_included(a, b, n)? != subset {
                borel_bad.push(format!("{a} vs {b}: root sets say {subset}"));
            }
        }
    }

    let forms: Vec<SignForm> = enumerate(n, BrpClass::Reduced)
        .iter()
        .map(|x| to_sign_form(x, n))
        .collect::<Result<_>>()?;
    let psets: Vec<Vec<Root>> = forms
        .iter()
        .map(|s| reduced_parabolic(s).map(|d| d.parabolic()))
        .collect::<Result<_>>()?;
    let mut par_bad = Vec::new();
    for (i, a) in forms.iter().enumerate() {
        for (j, b) in forms.iter().enumerate() {
            let subset = is_subset(&psets[i], &psets[j]);
            if parabolic_included(a, b)? != subset {
                par_bad.push(format!("{a:?} vs {b:?}: root sets say {subset}"));
            }
        }
    }

    Ok(Report {
        checks: vec![
            Check::from_counterexamples("borel_order", n, borel_bad)
                .with_detail(format!("{} Borels", borels.len())),
            Check::from_counterexamples("parabolic_order", n, par_bad)
                .with_detail(format!("{} reduced parabolics", forms.len())),
        ],
    })
}

/// The five root-membership facts relating `δ` to `l(δ)` and `p(δ)`, over
/// every integral `δ` with `|δ_i| ≤ bound`.
pub fn verify_levi_facts(n: usize, bound: u32) -> Result<Report> {
    guard("verify_levi_facts", n, 3)?;
    let grid = GridSpec {
        n,
        bound,
        weakly_decreasing: false,
    };
    let s = Shape::eps_only(n);
    let e = |i: usize| Weight::eps_unit(s, i);
    let mut bad: [Vec<String>; 5] = Default::default();
    for p in grid.points() {
        let delta = Weight::from_ints(&p);
        let d = decompose(&delta, n)?;
        let par = d.parabolic();
        let in_levi = |r: &Root| d.levi.binary_search(r).is_ok();
        let in_par = |r: &Root| par.binary_search(r).is_ok();
        let mut record = |k: usize, holds: bool, what: String| {
            if !holds {
                bad[k].push(format!("delta {delta}: {what}"));
            }
        };
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let minus = Root::even(&e(i) - &e(j));
                let plus = Root::odd(&e(i) + &e(j));
                record(0, in_levi(&minus) == (p[i] == p[j]), format!("{minus}"));
                record(
                    1,
                    in_levi(&plus) == (p[i] == -p[j]),
                    format!("{plus} in levi"),
                );
                record(
                    3,
                    in_par(&plus) == (p[i] >= -p[j]),
                    format!("{plus} in parabolic"),
                );
            }
            let two = Root::odd(e(i).scale(q(2)));
            record(2, in_levi(&two) == (p[i] == 0), format!("{two} in levi"));
            record(
                4,
                in_par(&two) == (p[i] >= 0),
                format!("{two} in parabolic"),
            );
        }
    }
    let names = [
        "levi_fact_a",
        "levi_fact_b",
        "levi_fact_c",
        "levi_fact_d",
        "levi_fact_e",
    ];
    Ok(Report {
        checks: names
            .iter()
            .zip(bad)
            .map(|(name, ces)| Check::from_counterexamples(name, n, ces))
            .collect(),
    })
}

fn random_weight(rng: &mut ChaCha8Rng, n: usize) -> Weight {
    let b = 2 * n as i64 + 2;
    let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-b..=b)).collect();
    Weight::from_ints(&c)
}

/// Involution of the Ringel weight map on every reduced parabolic, its closed
/// form at the standard Borel, and agreement of duality after Ringel with the
/// tilting label there.
pub fn verify_ringel_suite(n: usize, samples: usize, seed: u64) -> Result<Report> {
    guard("verify_ringel_suite", n, 5)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let maps: Vec<(SignForm, RingelMap)> = enumerate(n, BrpClass::Reduced)
        .iter()
        .map(|x| {
            let s = to_sign_form(x, n)?;
            let m = RingelMap::new(&s)?;
            Ok((s, m))
        })
        .collect::<Result<_>>()?;
    let bs = Bipartition::standard_borel(n);
    let bs_form = to_sign_form(&bs, n)?;
    let w0 = WeylElement::blockwise_reversal(&[n]);
    let hat = hat_dual(&bs, n)?;
    let omega_term = Weight::omega(n, n).scale(q(1 - n as i64));
    let shift = &rho_even(n).scale(q(2)) + &omega_term;

    let (mut invol, mut closed, mut tilt) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..samples {
        let l = random_weight(&mut rng, n);
        for (s, map) in &maps {
            let once = map.apply(&l)?;
            let twice = map.apply(&once)?;
            if twice != l {
                invol.push(format!("{s:?} at {l}: twice gives {twice}"));
            }
        }
        let r = ringel_weight_map(&bs_form, &l)?;
        let expected = &(-&l) - &shift;
        if r != expected {
            closed.push(format!("{l}: map {r}, closed form {expected}"));
        }
        let composed = duality_weight_map(&r, n)?;
        let label = pi_predicates(&bs, &l, n)?.tilting_label;
        let triangle = &(&weyl_apply(&w0, &l)? - &rho_even(n).scale(q(2))) + &omega_term;
        if label.0 != hat || label.1 != composed || composed != triangle {
            tilt.push(format!(
                "{l}: duality after Ringel {composed}, tilting label {}",
                label.1
            ));
        }
    }
    Ok(Report {
        checks: vec![
            Check::from_counterexamples("ringel_involution", n, invol)
                .with_detail(format!("{samples} samples x {} parabolics", maps.len())),
            Check::from_counterexamples("ringel_closed_form", n, closed),
            Check::from_counterexamples("ringel_tilting_label", n, tilt),
        ],
    })
}

/// The Δ-flag character identity for every Borel of `pe(n)`, at `λ = 0` and
/// at `samples` random integral weights.
pub fn verify_flag_suite(n: usize, depth: usize, samples: usize, seed: u64) -> Result<Report> {
    guard("verify_flag_suite", n, 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights = vec![Weight::zero(Shape::eps_only(n))];
    weights.extend((0..samples).map(|_| random_weight(&mut rng, n)));
    let borels = enumerate(n, BrpClass::Borel);
    let mut bad = Vec::new();
    for b in &borels {
        for l in &weights {
            let check = verify_flag_identity(b, l, depth, n)?;
            if !check.holds {
                bad.push(format!("{b} at {l}: {}", check.diff.join("; ")));
            }
        }
    }
    Ok(Report {
        checks: vec![
            Check::from_counterexamples("flag_identity", n, bad).with_detail(format!(
                "{} Borels x {} weights, depth {depth}",
                borels.len(),
                weights.len()
            )),
        ],
    })
}

/// Selects which checks [`verify`] runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Classification,
    Orders,
    Levi,
    Ringel,
    Flag,
}

impl Suite {
    fn max_rank(self) -> usize {
        match self {
            Suite::All | Suite::Ringel => 5,
            Suite::Classification | Suite::Orders => 4,
            Suite::Levi | Suite::Flag => 3,
        }
    }
}

/// Tunable parameters of [`verify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Grid bound; defaults to `n + 2`.
    pub bound: Option<u32>,
    pub samples: usize,
    pub flag_samples: usize,
    pub flag_depth: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            bound: None,
            samples: 100,
            flag_samples: 2,
            flag_depth: 4,
            seed: DEFAULT_SEED,
        }
    }
}

/// Runs one suite, or all of them. Under [`Suite::All`] a check whose rank
/// guard excludes `n` is reported as skipped.
pub fn verify(n: usize, suite: Suite, opts: VerifyOptions) -> Result<Report> {
    if suite != Suite::All {
        guard("verify", n, suite.max_rank())?;
    }
    let bound = opts.bound.unwrap_or_else(|| default_bound(n));
    let run = |s: Suite| -> Result<Report> {
        if n == 0 || n > s.max_rank() {
            return Ok(Report {
                checks: vec![Check::skipped(
                    &format!("{s:?}").to_lowercase(),
                    n,
                    format!("limited to n <= {}", s.max_rank()),
                )],
            });
        }
        match s {
            Suite::Classification => verify_classification(n, bound),
            Suite::Orders => verify_orders(n),
            Suite::Levi => verify_levi_facts(n, bound),
            Suite::Ringel => verify_ringel_suite(n, opts.samples, opts.seed),
            Suite::Flag => verify_flag_suite(n, opts.flag_depth, opts.flag_samples, opts.seed),
            Suite::All => unreachable!("expanded by the caller"),
        }
    };
    let suites = match suite {
        Suite::All => vec![
            Suite::Classification,
            Suite::Orders,
            Suite::Levi,
            Suite::Ringel,
            Suite::Flag,
        ],
        s => vec![s],
    };
    let mut report = Report::default();
    for s in suites {
        report.extend(run(s)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(n: usize, bound: u32) -> (usize, usize, usize) {
        let all = enumerate_decompositions(GridSpec {
            n,
            bound,
            weakly_decreasing: true,
        })
        .unwrap();
        let reduced = all.iter().filter(|d| d.is_reduced()).count();
        let borel = all.iter().filter(|d| d.is_borel()).count();
        (all.len(), reduced, borel)
    }

    #[test]
    fn grid_points() {
        let g = GridSpec {
            n: 2,
            bound: 1,
            weakly_decreasing: true,
        };
        assert_eq!(g.points().len(), 6);
        let g = GridSpec {
            weakly_decreasing: false,
            ..g
        };
        assert_eq!(g.points().len(), 9);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(counts(1, 3), (3, 2, 2));
        assert_eq!(counts(2, 4), (10, 6, 4));
        assert_eq!(counts(3, 5).2, 8);
        assert_eq!(
            enumerate_decompositions(GridSpec::standard(2)).unwrap(),
            enumerate_decompositions(GridSpec {
                bound: 5,
                ..GridSpec::standard(2)
            })
            .unwrap()
        );
    }

    #[test]
    fn unrestricted_grid_sees_more_decompositions() {
        let all = enumerate_decompositions(GridSpec {
            n: 2,
            bound: 4,
            weakly_decreasing: false,
        })
        .unwrap();
        assert!(all.len() > 10);
        assert_eq!(
            all.iter()
                .filter(|d| d.contains_standard_even_borel())
                .count(),
            10
        );
    }

    #[test]
    fn classification_passes_small_ranks() {
        for n in 1..=3 {
            let r = verify_classification(n, default_bound(n)).unwrap();
            assert!(r.passed(), "{}", r.to_table());
        }
        assert!(verify_classification(5, 7).is_err());
    }

    #[test]
    fn orders_pass() {
        for n in 1..=3 {
            let r = verify_orders(n).unwrap();
            assert!(r.passed(), "{}", r.to_table());
        }
    }

    #[test]
    fn levi_facts_pass() {
        let r = verify_levi_facts(2, 3).unwrap();
        assert_eq!(r.checks.len(), 5);
        assert!(r.passed(), "{}", r.to_table());
        assert!(verify_levi_facts(4, 3).is_err());
    }

    #[test]
    fn ringel_suite_passes_and_is_deterministic() {
        let a = verify_ringel_suite(2, 100, 7).unwrap();
        assert!(a.passed(), "{}", a.to_table());
        let b = verify_ringel_suite(2, 100, 7).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn flag_suite_small() {
        let r = verify_flag_suite(2, 4, 2, 1).unwrap();
        assert!(r.passed(), "{}", r.to_table());
    }

    #[test]
    fn all_skips_out_of_range_suites() {
        let r = verify(
            4,
            Suite::All,
            VerifyOptions {
                samples: 5,
                ..VerifyOptions::default()
            },
        )
        .unwrap();
        let skipped: Vec<&str> = r
            .checks
            .iter()
            .filter(|c| c.status == Status::Skipped)
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(skipped, vec!["levi", "flag"]);
        assert!(r.passed());
        assert!(verify(4, Suite::Levi, VerifyOptions::default()).is_err());
    }

    #[test]
    fn report_json_shape() {
        let r = verify_orders(1).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["checks"][0]["name"], "borel_order");
        assert_eq!(v["checks"][0]["status"], "pass");
        assert!(v["checks"][0]["counterexamples"]
            .as_array()
            .unwrap()
            .is_empty());
        assert!(r.to_table().contains("borel_order"));
    }
}
