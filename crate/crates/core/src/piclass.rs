//! Coordinate-level criteria for the projective cover `P(λ)` in the full
//! category O to be injective, one per simple classical family.
//!
//! The spo classifiers are paired with an independent odd-reflection
//! computation (`spo_even_oracle`, `spo_odd_oracle`) and with their
//! ρ-shifted reformulations.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::weights::{
    build_root_datum, fmt_q, is_antidominant, odd_reflection, q, qr, rho_signed, Family, Root,
    RootDatum, Weight, Q,
};

/// Outcome of a classifier, naming the first condition that failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub injective: bool,
    pub witness: Option<&'static str>,
}

impl Verdict {
    const YES: Verdict = Verdict {
        injective: true,
        witness: None,
    };

    fn no(witness: &'static str) -> Verdict {
        Verdict {
            injective: false,
            witness: Some(witness),
        }
    }

    /// Runs the named checks in order and stops at the first failure.
    fn first_failure(checks: &[(&'static str, bool)]) -> Verdict {
        checks
            .iter()
            .find(|(_, ok)| !ok)
            .map_or(Verdict::YES, |(name, _)| Verdict::no(name))
    }
}

/// A weight of a given family, split into its δ-block `lambda` and ε-block `mu`.
///
/// Families without a δ-block (pe, q) keep their coordinates in `mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyWeight {
    family: Family,
    weight: Weight,
}

impl FamilyWeight {
    pub fn new(family: Family, lambda: Vec<Q>, mu: Vec<Q>) -> Result<FamilyWeight> {
        let shape = shape_of(&family)?;
        if lambda.len() != shape.0 || mu.len() != shape.1 {
            return Err(Error::DimensionMismatch {
                expected: format!("{} | {}", shape.0, shape.1),
                found: format!("{} | {}", lambda.len(), mu.len()),
            });
        }
        Ok(FamilyWeight {
            family,
            weight: Weight::new(lambda, mu),
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn lambda(&self) -> &[Q] {
        self.weight.delta()
    }

    pub fn mu(&self) -> &[Q] {
        self.weight.eps()
    }
}

/// `(δ-rank, ε-rank)` without building the datum (D(2|1;ζ) accepts ζ = −1 here).
fn shape_of(family: &Family) -> Result<(usize, usize)> {
    let positive = |k: usize| {
        if k == 0 {
            Err(Error::UnsupportedFamily(format!(
                "{family}: rank must be positive"
            )))
        } else {
            Ok(())
        }
    };
    match *family {
        Family::Pe { n } | Family::Q { n } => positive(n).map(|_| (0, n)),
        Family::Gl { m, n } | Family::SpoEven { n, m } | Family::SpoOdd { n, m } => {
            positive(m)?;
            positive(n).map(|_| (n, m))
        }
        Family::D21 { zeta } => {
            if zeta.is_zero() {
                Err(Error::UnsupportedFamily(format!(
                    "{family}: zeta must be nonzero"
                )))
            } else {
                Ok((1, 2))
            }
        }
        Family::G3 => Ok((1, 2)),
        Family::F31 => Ok((1, 3)),
    }
}

/// JSON form of a verdict.
#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub family: String,
    pub weight: Weight,
    pub injective: bool,
    pub witness: Option<&'static str>,
}

/// Dispatches to the classifier of the weight's family.
pub fn classify(fw: &FamilyWeight) -> Result<Verdict> {
    let (l, u) = (fw.lambda(), fw.mu());
    match *fw.family() {
        Family::Pe { .. } | Family::Gl { .. } => {
            type_one_verdict(&build_root_datum(fw.family())?, fw.weight())
        }
        Family::Q { .. } => qn_verdict(u),
        Family::SpoEven { n, m } => spo_even_verdict(n, m, l, u),
        Family::SpoOdd { n, m } => spo_odd_verdict(n, m, l, u),
        Family::D21 { zeta } => d21_verdict(zeta, l[0], u[0], u[1]),
        Family::G3 => g3_verdict(l[0], u[0], u[1]),
        Family::F31 => f31_verdict(l[0], u[0], u[1], u[2]),
    }
}

pub fn report(fw: &FamilyWeight) -> Result<VerdictReport> {
    let v = classify(fw)?;
    Ok(VerdictReport {
        family: fw.family().to_string(),
        weight: fw.weight().clone(),
        injective: v.injective,
        witness: v.witness,
    })
}

fn require_integers(xs: &[Q]) -> Result<()> {
    match xs.iter().find(|x| !x.is_integer()) {
        Some(x) => Err(Error::NonIntegral(fmt_q(x))),
        None => Ok(()),
    }
}

fn strictly_increasing(xs: &[Q]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1])
}

fn check_len(xs: &[Q], k: usize, block: &str) -> Result<()> {
    if xs.len() == k {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: format!("{k} {block} entries"),
            found: xs.len().to_string(),
        })
    }
}

fn type_one_verdict(datum: &RootDatum, lambda: &Weight) -> Result<Verdict> {
    match datum.family() {
        Family::Pe { .. } | Family::Gl { .. } => {}
        other => {
            return Err(Error::UnsupportedFamily(format!(
                "{other} is not of type I"
            )))
        }
    }
    if lambda.shape() != datum.shape() {
        return Err(Error::DimensionMismatch {
            expected: datum.shape().to_string(),
            found: lambda.shape().to_string(),
        });
    }
    Ok(Verdict::first_failure(&[(
        "antidominant",
        is_antidominant(datum, lambda)?,
    )]))
}

/// Type I families (pe, gl): injective iff `λ` is anti-dominant.
pub fn pi_type_one(datum: &RootDatum, lambda: &Weight) -> Result<bool> {
    type_one_verdict(datum, lambda).map(|v| v.injective)
}

fn qn_verdict(lambda: &[Q]) -> Result<Verdict> {
    if lambda.is_empty() {
        return Err(Error::UnsupportedFamily("q(0)".into()));
    }
    require_integers(lambda)?;
    Ok(Verdict::first_failure(&[
        ("weakly_increasing", lambda.windows(2).all(|w| w[0] <= w[1])),
        (
            "equal_entries_nonzero",
            lambda.windows(2).all(|w| w[0] != w[1] || !w[0].is_zero()),
        ),
    ]))
}

/// `q(n)`: weakly increasing, and equal neighbours are nonzero.
pub fn pi_qn(lambda: &[Q]) -> Result<bool> {
    qn_verdict(lambda).map(|v| v.injective)
}

fn spo_inputs(n: usize, m: usize, lambda: &[Q], mu: &[Q]) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::UnsupportedFamily(
            "spo ranks must be positive".into(),
        ));
    }
    check_len(lambda, n, "delta")?;
    check_len(mu, m, "eps")?;
    require_integers(lambda)?;
    require_integers(mu)
}

fn spo_even_verdict(n: usize, m: usize, lambda: &[Q], mu: &[Q]) -> Result<Verdict> {
    spo_inputs(n, m, lambda, mu)?;
    let mm = q(m as i64);
    let mu_m = mu[m - 1];
    // With m = 1 the chain has no left-hand side and holds vacuously.
    let mu_chain = m == 1 || (strictly_increasing(&mu[..m - 1]) && mu[m - 2] < -mu_m.abs());
    Ok(Verdict::first_failure(&[
        ("lambda_chain", strictly_increasing(lambda)),
        ("lambda_bound", lambda[n - 1] < mm),
        ("mu_chain", mu_chain),
        (
            "mu_m_nonzero",
            lambda[n - 1] != mm - Q::one() || !mu_m.is_zero(),
        ),
    ]))
}

/// `spo(2n|2m)` with the distinguished simple system ending in `ε_{m−1} ± ε_m`.
pub fn pi_spo_even(n: usize, m: usize, lambda: &[Q], mu: &[Q]) -> Result<bool> {
    spo_even_verdict(n, m, lambda, mu).map(|v| v.injective)
}

fn spo_odd_verdict(n: usize, m: usize, lambda: &[Q], mu: &[Q]) -> Result<Verdict> {
    spo_inputs(n, m, lambda, mu)?;
    Ok(Verdict::first_failure(&[
        ("lambda_chain", strictly_increasing(lambda)),
        ("lambda_bound", lambda[n - 1] < q(m as i64)),
        ("mu_chain", strictly_increasing(mu)),
        ("mu_negative", mu[m - 1].is_negative()),
    ]))
}

/// `spo(2n|2m+1)` with the distinguished simple system ending in `ε_m`.
pub fn pi_spo_odd(n: usize, m: usize, lambda: &[Q], mu: &[Q]) -> Result<bool> {
    spo_odd_verdict(n, m, lambda, mu).map(|v| v.injective)
}

/// `λ + ρ` for the distinguished positive system, with `ρ = ½(Σ even − Σ odd)`.
fn rho_shifted(datum: &RootDatum, lambda: &[Q], mu: &[Q]) -> Weight {
    let rho = rho_signed(datum.shape(), datum.positive());
    &Weight::new(lambda.to_vec(), mu.to_vec()) + &rho
}

fn rho_antidominant(datum: &RootDatum, shifted: &Weight) -> Result<bool> {
    for a in datum.even_simple() {
        if datum.coroot_pairing(shifted, a)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn spo_even_rho_verdict(n: usize, m: usize, lambda: &[Q], mu: &[Q]) -> Result<Verdict> {
    spo_inputs(n, m, lambda, mu)?;
    let datum = build_root_datum(&Family::SpoEven { n, m })?;
    let shifted = rho_shifted(&datum, lambda, mu);
    let shape = datum.shape();
    let at_wall = datum
        .pair(&shifted, &Weight::delta_unit(shape, n - 1))?
        .is_zero();
    let off_eps_wall = !datum
        .pair(&shifted, &Weight::eps_unit(shape, m - 1))?
        .is_zero();
    Ok(Verdict::first_failure(&[
        ("rho_antidominant", rho_antidominant(&datum, &shifted)?),
        ("rho_extra_clause", !at_wall || off_eps_wall),
    ]))
}

/// ρ-shifted form of [`pi_spo_even`]: `(λ+ρ, α∨) ≤ 0` on the even simple
/// roots, and `(λ+ρ, ε_m) ≠ 0` whenever `(λ+ρ, δ_n) = 0`.
pub fn pi_spo_even_rho(n: usize, m: usize, lambda: &[Q], mu: &[Q]) -> Result<bool> {
    spo_even_rho_verdict(n, m, lambda, mu).map(|v| v.injective)
}

/// ρ-shifted form of [`pi_spo_odd`]: `(λ+ρ, α∨) ≤ 0` on the even simple roots.
pub fn pi_spo_odd_rho(n: usize, m: usize, lambda: &[Q], mu: &[Q]) -> Result<bool> {
    spo_inputs(n, m, lambda, mu)?;
    let datum = build_root_datum(&Family::SpoOdd { n, m })?;
    rho_antidominant(&datum, &rho_shifted(&datum, lambda, mu))
}

/// `(λ^[m], δ_n)` after reflecting through `δ_n − ε_1, …, δ_n − ε_m` in turn.
fn reflect_through_last_delta(datum: &RootDatum, lambda: &[Q], mu: &[Q]) -> Result<Q> {
    let shape = datum.shape();
    let n = shape.delta;
    let mut w = Weight::new(lambda.to_vec(), mu.to_vec());
    for j in 0..shape.eps {
        let gamma = Root::odd(&Weight::delta_unit(shape, n - 1) - &Weight::eps_unit(shape, j));
        w = odd_reflection(&w, &gamma, datum)?;
    }
    Ok(w.delta()[n - 1])
}

fn require_lambda_chain(lambda: &[Q]) -> Result<()> {
    if strictly_increasing(lambda) {
        Ok(())
    } else {
        Err(Error::Precondition(
            "delta coordinates must be strictly increasing".into(),
        ))
    }
}

/// `(λ^[m], δ_n)` for `spo(2n|2m)`; negative exactly when `L(λ)` is free
/// over the root vector of `−2δ_n`.
pub fn spo_even_oracle(n: usize, m: usize, lambda: &[Q], mu: &[Q]) -> Result<Q> {
    spo_inputs(n, m, lambda, mu)?;
    require_lambda_chain(lambda)?;
    reflect_through_last_delta(&build_root_datum(&Family::SpoEven { n, m })?, lambda, mu)
}

/// The same computation for `spo(2n|2m+1)`.
pub fn spo_odd_oracle(n: usize, m: usize, lambda: &[Q], mu: &[Q]) -> Result<Q> {
    spo_inputs(n, m, lambda, mu)?;
    require_lambda_chain(lambda)?;
    reflect_through_last_delta(&build_root_datum(&Family::SpoOdd { n, m })?, lambda, mu)
}

fn d21_verdict(zeta: Q, l1: Q, m1: Q, m2: Q) -> Result<Verdict> {
    if zeta.is_zero() {
        return Err(Error::UnsupportedFamily("D(2|1;0)".into()));
    }
    require_integers(&[l1, m1, m2])?;
    let lhs = Q::one() + m1;
    let rhs = (Q::one() + m2) * zeta;
    Ok(Verdict::first_failure(&[
        ("lambda_bound", l1 <= Q::one()),
        ("mu_negative", m1.is_negative() && m2.is_negative()),
        ("zeta_clause", l1 != Q::one() || (lhs != rhs && lhs != -rhs)),
    ]))
}

/// `D(2|1;ζ)` with simple system `{δ−ε₁−ε₂, 2ε₁, 2ε₂}`.
pub fn pi_d21(zeta: Q, l1: Q, m1: Q, m2: Q) -> Result<bool> {
    d21_verdict(zeta, l1, m1, m2).map(|v| v.injective)
}

fn g3_verdict(l1: Q, m1: Q, m2: Q) -> Result<Verdict> {
    require_integers(&[l1, m1, m2])?;
    Ok(Verdict::first_failure(&[
        ("lambda_bound", l1 <= q(2)),
        ("mu_chain", m1 * q(2) < m2 && m2 < m1),
    ]))
}

/// `G(3)` with simple system `{ε₂−ε₁, ε₁, δ−ε₁−ε₂}`.
pub fn pi_g3(l1: Q, m1: Q, m2: Q) -> Result<bool> {
    g3_verdict(l1, m1, m2).map(|v| v.injective)
}

fn f31_verdict(l1: Q, m1: Q, m2: Q, m3: Q) -> Result<Verdict> {
    let xs = [l1, m1, m2, m3];
    let doubled: Vec<Q> = xs.iter().map(|x| x * q(2)).collect();
    require_integers(&doubled)?;
    let all_int = xs.iter().all(|x| x.is_integer());
    let all_half = xs.iter().all(|x| !x.is_integer());
    if !all_int && !all_half {
        return Err(Error::NonIntegral(format!(
            "F(3|1) entries must be all integers or all half-integers, got {}",
            xs.iter().map(fmt_q).collect::<Vec<_>>().join(", ")
        )));
    }
    let half = qr(1, 2);
    let three_halves = qr(3, 2);
    Ok(Verdict::first_failure(&[
        ("lambda_bound", l1 <= three_halves),
        ("mu_chain", m1 < m2 && m2 < m3 && m3 <= -half),
        (
            "sum_clause",
            l1 != three_halves || !(m1 + half - m2 - m3).is_zero(),
        ),
    ]))
}

/// `F(3|1)` with simple system `{ε₁−ε₂, ε₂−ε₃, ε₃, ½(δ−ε₁−ε₂−ε₃)}`.
pub fn pi_f31(l1: Q, m1: Q, m2: Q, m3: Q) -> Result<bool> {
    f31_verdict(l1, m1, m2, m3).map(|v| v.injective)
}
