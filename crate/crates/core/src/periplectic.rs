//! Parabolic and Borel subalgebras of `pe(n)` and the weight maps attached to them.
//!
//! Every parabolic decomposition here contains the standard even Borel. A
//! decomposition is determined by a weight `δ` through the sign of `(δ, α)`
//! for each root `α`.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{
    brp_leq, classify_bipartition, from_sign_form, require, Bipartition, BrpClass, Partition, Sign,
    SignForm,
};
use crate::weights::{
    build_root_datum, is_antidominant, odd_sum, q, rho_signed, weyl_apply, Family, Root, RootDatum,
    Shape, Weight, WeylElement, Q,
};

/// Root datum of `pe(n)`.
pub fn pe_datum(n: usize) -> Result<RootDatum> {
    build_root_datum(&Family::Pe { n })
}

fn check_rank(w: &Weight, n: usize) -> Result<()> {
    if w.shape() == Shape::eps_only(n) {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: Shape::eps_only(n).to_string(),
            found: w.shape().to_string(),
        })
    }
}

/// `Σ μ_i ε_i − Σ ν_j ε_{n+1−j}`.
pub fn zeta(x: &Bipartition, n: usize) -> Result<Weight> {
    if x.mu.len() + x.nu.len() > n {
        return Err(Error::LengthMismatch(format!(
            "{x} has {} parts, rank is {n}",
            x.mu.len() + x.nu.len()
        )));
    }
    let mut c = vec![Q::zero(); n];
    for (i, p) in x.mu.parts().iter().enumerate() {
        c[i] = q(*p as i64);
    }
    for (j, p) in x.nu.parts().iter().enumerate() {
        c[n - 1 - j] = q(-(*p as i64));
    }
    Ok(Weight::eps_only(c))
}

/// The splitting `Φ = Φ(u⁻) ⊔ Φ(l) ⊔ Φ(u⁺)`; each list is sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ParabolicDecomposition {
    #[serde(skip)]
    pub n: usize,
    pub uminus: Vec<Root>,
    pub levi: Vec<Root>,
    pub uplus: Vec<Root>,
}

impl ParabolicDecomposition {
    /// Roots of the parabolic subalgebra `l ⊕ u⁺`, sorted.
    pub fn parabolic(&self) -> Vec<Root> {
        let mut v: Vec<Root> = self.levi.iter().chain(&self.uplus).cloned().collect();
        v.sort();
        v
    }

    /// Odd roots of `l ⊕ u⁺`, sorted.
    pub fn parabolic_odd(&self) -> Vec<Root> {
        self.parabolic().into_iter().filter(Root::is_odd).collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.levi.iter().all(|r| !r.is_odd())
    }

    pub fn is_borel(&self) -> bool {
        self.levi.is_empty()
    }

    /// True when every `ε_i − ε_j` with `i < j` lies in `l ⊕ u⁺`.
    pub fn contains_standard_even_borel(&self) -> bool {
        let p = self.parabolic();
        let s = Shape::eps_only(self.n);
        (0..self.n).all(|i| {
            ((i + 1)..self.n).all(|j| {
                let r = Root::even(&Weight::eps_unit(s, i) - &Weight::eps_unit(s, j));
                p.binary_search(&r).is_ok()
            })
        })
    }
}

/// Splits the roots of `pe(n)` by the sign of `(δ, α)`.
pub fn decompose(delta: &Weight, n: usize) -> Result<ParabolicDecomposition> {
    check_rank(delta, n)?;
    let d = pe_datum(n)?;
    let mut out = ParabolicDecomposition {
        n,
        uminus: Vec::new(),
        levi: Vec::new(),
        uplus: Vec::new(),
    };
    for r in d.roots() {
        match d.pair(delta, &r.weight)?.cmp(&Q::zero()) {
            Ordering::Less => out.uminus.push(r.clone()),
            Ordering::Equal => out.levi.push(r.clone()),
            Ordering::Greater => out.uplus.push(r.clone()),
        }
    }
    Ok(out)
}

fn check_weakly_decreasing(delta: &Weight) -> Result<()> {
    if delta.eps().windows(2).all(|w| w[0] >= w[1]) {
        Ok(())
    } else {
        Err(Error::NotWeaklyDecreasing(delta.to_string()))
    }
}

/// Positive rescaling followed by outward rounding; keeps every sign of
/// `δ_i ± δ_j` and `δ_i`.
fn integralize(c: &[Q]) -> Vec<i64> {
    let mut min: Option<Q> = None;
    let mut see = |v: Q| {
        let a = v.abs();
        if !a.is_zero() && min.is_none_or(|m| a < m) {
            min = Some(a);
        }
    };
    for i in 0..c.len() {
        see(c[i] * q(2));
        for j in (i + 1)..c.len() {
            see(c[i] + c[j]);
            see(c[i] - c[j]);
        }
    }
    let scale = match min {
        Some(m) if m < q(2) => q(2) / m,
        _ => Q::one(),
    };
    c.iter()
        .map(|x| {
            let y = x * scale;
            if y.is_positive() {
                y.ceil().to_integer()
            } else {
                y.floor().to_integer()
            }
        })
        .collect()
}

/// Extended integers for the boundary conventions of the manipulations.
#[derive(Clone, Copy)]
enum Ext {
    PosInf,
    NegInf,
    Fin(i64),
}

impl Ext {
    fn gt(self, other: Ext) -> bool {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => a > b,
            (Ext::PosInf, Ext::PosInf) | (Ext::NegInf, Ext::NegInf) => false,
            (Ext::PosInf, _) | (_, Ext::NegInf) => true,
            _ => false,
        }
    }

    fn plus(self, k: i64) -> Ext {
        match self {
            Ext::Fin(a) => Ext::Fin(a + k),
            e => e,
        }
    }
}

/// `μ = (μ_1 ≥ … ≥ μ_p ≥ 0)` and `v = (v_1 ≥ … ≥ v_q < 0)` with 1-based
/// access and the boundary conventions `μ_0 = +∞`, `μ_{p+1} = −∞`,
/// `v_0 = 0`, `v_{q+1} = −∞`.
struct Split<'a> {
    mu: &'a [i64],
    v: &'a [i64],
}

impl Split<'_> {
    fn mu(&self, i: usize) -> Ext {
        if i == 0 {
            Ext::PosInf
        } else if i <= self.mu.len() {
            Ext::Fin(self.mu[i - 1])
        } else {
            Ext::NegInf
        }
    }

    fn v(&self, j: usize) -> Ext {
        if j == 0 {
            Ext::Fin(0)
        } else if j <= self.v.len() {
            Ext::Fin(self.v[j - 1])
        } else {
            Ext::NegInf
        }
    }

    /// Maximal run of equal μ starting at `i` with `μ_{i−1} > μ_i` and a gap
    /// of at least two below; returns the last index of the run.
    fn mu_block(&self, i: usize) -> Option<usize> {
        let val = self.mu[i - 1];
        if !self.mu(i - 1).gt(Ext::Fin(val)) {
            return None;
        }
        let mut end = i;
        while end < self.mu.len() && self.mu[end] == val {
            end += 1;
        }
        Ext::Fin(val).gt(self.mu(end + 1).plus(1)).then_some(end)
    }

    /// Maximal run of equal v starting at `j` with `v_{j−1} − 1 > v_j`.
    fn v_block(&self, j: usize) -> Option<usize> {
        let val = self.v[j - 1];
        if !self.v(j - 1).plus(-1).gt(Ext::Fin(val)) {
            return None;
        }
        let mut end = j;
        while end < self.v.len() && self.v[end] == val {
            end += 1;
        }
        Some(end)
    }
}

/// One manipulation step on an integral weakly decreasing vector, or `None`
/// when no manipulation applies.
fn manipulate(c: &[i64]) -> Option<Vec<i64>> {
    let p = c.iter().take_while(|x| **x >= 0).count();
    let (mu, v) = c.split_at(p);
    let s = Split { mu, v };
    let mut out = c.to_vec();

    // (1): lower a μ block sitting strictly between two consecutive −v values.
    for i in 1..=mu.len() {
        let Some(end) = s.mu_block(i) else { continue };
        let m = Ext::Fin(-mu[i - 1]);
        for j in 0..=v.len() {
            if s.v(j).plus(-1).gt(m) && m.gt(s.v(j + 1)) {
                for x in &mut out[i - 1..end] {
                    *x -= 1;
                }
                return Some(out);
            }
        }
    }
    // (2): raise a v block sitting strictly between two consecutive μ values.
    for j in 1..=v.len() {
        let Some(end) = s.v_block(j) else { continue };
        let m = Ext::Fin(-v[j - 1]);
        for i in 0..=mu.len() {
            if s.mu(i).gt(m) && m.gt(s.mu(i + 1).plus(1)) {
                for x in &mut out[p + j - 1..p + end] {
                    *x += 1;
                }
                return Some(out);
            }
        }
    }
    // (3): move a matched pair μ_i = −v_j towards zero together.
    for i in 1..=mu.len() {
        let Some(mu_end) = s.mu_block(i) else {
            continue;
        };
        for j in 1..=v.len() {
            if mu[i - 1] != -v[j - 1] {
                continue;
            }
            let Some(v_end) = s.v_block(j) else { continue };
            for x in &mut out[i - 1..mu_end] {
                *x -= 1;
            }
            for x in &mut out[p + j - 1..p + v_end] {
                *x += 1;
            }
            return Some(out);
        }
    }
    None
}

/// Reads the bipartition off an integral vector in the image of `ζ`.
fn read_bipartition(c: &[i64]) -> Result<Bipartition> {
    let mu: Vec<u32> = c.iter().filter(|x| **x > 0).map(|x| *x as u32).collect();
    let nu: Vec<u32> = c
        .iter()
        .rev()
        .filter(|x| **x < 0)
        .map(|x| (-*x) as u32)
        .collect();
    Ok(Bipartition::new(Partition::new(mu)?, Partition::new(nu)?))
}

/// The unique `x ∈ BRP_n` with `decompose(ζ_x) = decompose(δ)`.
pub fn canonicalize(delta: &Weight, n: usize) -> Result<Bipartition> {
    check_rank(delta, n)?;
    check_weakly_decreasing(delta)?;
    let mut c = integralize(delta.eps());
    while let Some(next) = manipulate(&c) {
        c = next;
    }
    let x = read_bipartition(&c)?;
    let same =
        classify_bipartition(&x, n).brp && decompose(&zeta(&x, n)?, n)? == decompose(delta, n)?;
    if same {
        Ok(x)
    } else {
        Err(Error::Canonicalize(delta.to_string()))
    }
}

/// Odd roots of the Borel subalgebra labelled by `x`, read from the
/// staircase description; sorted.
pub fn borel_odd_roots(x: &Bipartition, n: usize) -> Result<Vec<Root>> {
    require(x, n, BrpClass::Borel)?;
    let s = Shape::eps_only(n);
    let e = |i: usize| Weight::eps_unit(s, i - 1);
    let mut out = Vec::new();
    for (i0, mu_i) in x.mu.parts().iter().enumerate() {
        let i = i0 + 1;
        for j in i..=(*mu_i as usize + i - 1) {
            out.push(Root::odd(&e(i) + &e(j)));
        }
    }
    for (k0, nu_k) in x.nu.parts().iter().enumerate() {
        let k = k0 + 1;
        for l in (k + 1)..=(*nu_k as usize + k - 1) {
            out.push(Root::odd(-(&e(n + 1 - l) + &e(n + 1 - k))));
        }
    }
    out.sort();
    Ok(out)
}

/// `n(n−1)/2 + ℓ(μ)`.
pub fn borel_odd_dim(x: &Bipartition, n: usize) -> Result<usize> {
    require(x, n, BrpClass::Borel)?;
    Ok(n * (n - 1) / 2 + x.mu.len())
}

/// Strict inclusion of Borel subalgebras: `μ' = (μ, 1)` and `ν = (ν', 1)`.
pub fn borel_included(x: &Bipartition, xp: &Bipartition, n: usize) -> Result<bool> {
    require(x, n, BrpClass::Borel)?;
    require(xp, n, BrpClass::Borel)?;
    let extends = |long: &Partition, short: &Partition| {
        long.len() == short.len() + 1
            && long.parts()[..short.len()] == *short.parts()
            && long.parts()[short.len()] == 1
    };
    Ok(extends(&xp.mu, &x.mu) && extends(&x.nu, &xp.nu))
}

/// The decomposition of the reduced parabolic labelled by a sign form.
pub fn reduced_parabolic(s: &SignForm) -> Result<ParabolicDecomposition> {
    let n = s.rank();
    let x = from_sign_form(s);
    require(&x, n, BrpClass::Reduced)?;
    let d = decompose(&zeta(&x, n)?, n)?;
    debug_assert_eq!(
        d.parabolic_odd(),
        borel_of_signs(s.signs()).expect("valid signs")
    );
    Ok(d)
}

/// Odd roots of the Borel `(∂ⁿ, f)`.
fn borel_of_signs(f: &[Sign]) -> Result<Vec<Root>> {
    let n = f.len();
    let kappa = Partition::staircase(n);
    let s = SignForm::parse(
        kappa.parts(),
        &f.iter().map(|s| s.symbol()).collect::<String>(),
    )?;
    borel_odd_roots(&from_sign_form(&s), n)
}

/// Inclusion of reduced parabolic subalgebras.
pub fn parabolic_included(s: &SignForm, sp: &SignForm) -> Result<bool> {
    let n = s.rank();
    require(&from_sign_form(s), n, BrpClass::Reduced)?;
    require(&from_sign_form(sp), sp.rank(), BrpClass::Reduced)?;
    brp_leq(s, sp)
}

/// `(μ, ν) ↦ (ν, μ)` on reduced parabolic labels.
pub fn hat_dual(x: &Bipartition, n: usize) -> Result<Bipartition> {
    require(x, n, BrpClass::Reduced)?;
    Ok(crate::partitions::dual(x))
}

/// Levi factor `pe(k0) ⊕ ⨁ gl(k_i | l_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeviType {
    pub k0: usize,
    /// `(k_i, l_i)` for `i = 1, 2, …` up to the largest part.
    pub blocks: Vec<(usize, usize)>,
}

pub fn levi_type(x: &Bipartition, n: usize) -> Result<LeviType> {
    require(x, n, BrpClass::All)?;
    let top =
        x.mu.parts()
            .iter()
            .chain(x.nu.parts())
            .copied()
            .max()
            .unwrap_or(0);
    let count = |p: &Partition, i: u32| p.parts().iter().filter(|x| **x == i).count();
    let blocks: Vec<(usize, usize)> = (1..=top)
        .map(|i| (count(&x.mu, i), count(&x.nu, i)))
        .collect();
    let used: usize = blocks.iter().map(|(k, l)| k + l).sum();
    Ok(LeviType {
        k0: n - used,
        blocks,
    })
}

/// Sizes of the maximal runs of equal consecutive coordinates.
fn runs(c: &[Q]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for (i, x) in c.iter().enumerate() {
        if i > 0 && *x == c[i - 1] {
            *out.last_mut().expect("nonempty") += 1;
        } else {
            out.push(1);
        }
    }
    out
}

/// Longest element of the Levi Weyl group of a reduced parabolic.
pub fn levi_longest(s: &SignForm) -> Result<WeylElement> {
    let z = zeta(&from_sign_form(s), s.rank())?;
    Ok(WeylElement::blockwise_reversal(&runs(z.eps())))
}

fn longest(n: usize) -> WeylElement {
    WeylElement::blockwise_reversal(&[n])
}

/// `λ ↦ −w₀^p λ + 2ρ(u⁻)` for a fixed reduced parabolic, precomputed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingelMap {
    n: usize,
    levi_longest: WeylElement,
    two_rho: Weight,
}

impl RingelMap {
    pub fn new(s: &SignForm) -> Result<RingelMap> {
        let n = s.rank();
        let d = reduced_parabolic(s)?;
        Ok(RingelMap {
            n,
            levi_longest: levi_longest(s)?,
            two_rho: rho_signed(Shape::eps_only(n), &d.uminus).scale(q(2)),
        })
    }

    pub fn apply(&self, lambda: &Weight) -> Result<Weight> {
        check_rank(lambda, self.n)?;
        Ok(&self.two_rho - &weyl_apply(&self.levi_longest, lambda)?)
    }
}

/// `λ ↦ −w₀^p λ + 2ρ(u⁻)` for the reduced parabolic `s`.
pub fn ringel_weight_map(s: &SignForm, lambda: &Weight) -> Result<Weight> {
    check_rank(lambda, s.rank())?;
    RingelMap::new(s)?.apply(lambda)
}

/// `λ ↦ −w₀λ`.
pub fn duality_weight_map(lambda: &Weight, n: usize) -> Result<Weight> {
    check_rank(lambda, n)?;
    Ok(-weyl_apply(&longest(n), lambda)?)
}

/// Highest weight of the tilting module after crossing the odd root `α`.
pub fn tilting_odd_reflection(lambda: &Weight, alpha: &Root) -> Result<Weight> {
    let n = lambda.eps().len();
    let unsupported = || Error::UnsupportedRoot(alpha.to_string());
    if !alpha.is_odd() || alpha.weight.shape() != lambda.shape() {
        return Err(unsupported());
    }
    let nz: Vec<(usize, Q)> = alpha
        .weight
        .eps()
        .iter()
        .copied()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    match nz.as_slice() {
        [(_, c)] if *c == q(2) => Ok(lambda + &alpha.weight),
        [(i, a), (j, b)] if *a == Q::one() && *b == Q::one() && *j == i + 1 && *j < n => {
            let l = lambda.eps();
            if l[*i] == l[*j] {
                Ok(lambda + &alpha.weight.scale(q(2)))
            } else {
                Ok(lambda + &alpha.weight)
            }
        }
        _ => Err(unsupported()),
    }
}

/// Weight-level data about projective, injective and tilting covers in
/// the category attached to a Borel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiPredicates {
    pub injective: bool,
    pub injective_label: Weight,
    pub tilting_label: (Bipartition, Weight),
    /// Only defined at the standard Borel.
    pub selfdual: Option<bool>,
}

fn require_integral(lambda: &Weight) -> Result<()> {
    if lambda.is_integral() {
        Ok(())
    } else {
        Err(Error::NonIntegral(lambda.to_string()))
    }
}

/// Odd roots of the Borel lying in `g⁻`.
fn borel_minus_part(x: &Bipartition, n: usize) -> Result<Vec<Root>> {
    Ok(borel_odd_roots(x, n)?
        .into_iter()
        .filter(|r| r.weight.eps().iter().all(|c| !c.is_positive()))
        .collect())
}

/// All roots of the Borel labelled by `x`.
pub fn borel_roots(x: &Bipartition, n: usize) -> Result<Vec<Root>> {
    require(x, n, BrpClass::Borel)?;
    Ok(decompose(&zeta(x, n)?, n)?.uplus)
}

pub fn pi_predicates(x: &Bipartition, lambda: &Weight, n: usize) -> Result<PiPredicates> {
    require(x, n, BrpClass::Borel)?;
    check_rank(lambda, n)?;
    require_integral(lambda)?;
    let shape = Shape::eps_only(n);
    let datum = pe_datum(n)?;
    let shift = odd_sum(shape, &borel_minus_part(x, n)?)?;
    let injective = is_antidominant(&datum, &(lambda - &shift))?;
    let injective_label = lambda + &Weight::omega(n, n).scale(q(2));
    let xd = hat_dual(x, n)?;
    let w0l = weyl_apply(&longest(n), lambda)?;
    let tilt = &w0l - &rho_signed(shape, &borel_roots(&xd, n)?).scale(q(2));
    let selfdual = if *x == Bipartition::standard_borel(n) {
        Some(selfdual_at_standard(&datum, lambda, n)?)
    } else {
        None
    };
    Ok(PiPredicates {
        injective,
        injective_label,
        tilting_label: (xd, tilt),
        selfdual,
    })
}

fn selfdual_at_standard(datum: &RootDatum, lambda: &Weight, n: usize) -> Result<bool> {
    let sum = lambda + &weyl_apply(&longest(n), lambda)?;
    let target = Weight::omega(n, n).scale(q(n as i64 - 3));
    Ok(is_antidominant(datum, lambda)? && sum == target)
}

/// Self-duality of the projective cover; only meaningful at the standard Borel.
pub fn pi_selfdual(x: &Bipartition, lambda: &Weight, n: usize) -> Result<bool> {
    if *x != Bipartition::standard_borel(n) {
        return Err(Error::NotApplicable(format!(
            "self-duality is only characterised at the standard Borel, not {x}"
        )));
    }
    check_rank(lambda, n)?;
    require_integral(lambda)?;
    selfdual_at_standard(&pe_datum(n)?, lambda, n)
}

/// `μ + Σ (odd roots of b in g⁻)`.
pub fn verma_socle_label(x: &Bipartition, mu: &Weight, n: usize) -> Result<Weight> {
    check_rank(mu, n)?;
    Ok(mu + &odd_sum(Shape::eps_only(n), &borel_minus_part(x, n)?)?)
}

/// The `(∇-label, L-label)` pair `(m(μ), m(λ))` of the Ringel map `m`.
pub fn ringel_multiplicity_pair(
    s: &SignForm,
    lambda: &Weight,
    mu: &Weight,
) -> Result<(Weight, Weight)> {
    Ok((ringel_weight_map(s, mu)?, ringel_weight_map(s, lambda)?))
}

/// Covering pairs `(i, j)` of the strict Borel inclusion, indices into
/// `enumerate(n, Borel)`.
pub fn borel_hasse_edges(n: usize) -> Result<Vec<(usize, usize)>> {
    let all = crate::partitions::enumerate(n, BrpClass::Borel);
    let mut out = Vec::new();
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate() {
            // each inclusion relates a Borel to one with a single more positive root
            if borel_included(a, b, n)? {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// Covering pairs `(i, j)` of the order on `enumerate(n, Reduced)`.
pub fn parabolic_hasse_edges(n: usize) -> Result<Vec<(usize, usize)>> {
    let all: Vec<SignForm> = crate::partitions::enumerate(n, BrpClass::Reduced)
        .iter()
        .map(|x| crate::partitions::to_sign_form(x, n))
        .collect::<Result<_>>()?;
    let k = all.len();
    let mut lt = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            lt[i][j] = i != j && brp_leq(&all[i], &all[j])?;
        }
    }
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if lt[i][j] && !(0..k).any(|m| lt[i][m] && lt[m][j]) {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// Sum of the odd roots of `pe(n)`, `2ω_n`.
pub fn eta(n: usize) -> Weight {
    Weight::omega(n, n).scale(q(2))
}

/// `ρ₀`, half the sum of the positive even roots.
pub fn rho_even(n: usize) -> Weight {
    let c: Vec<Q> = (0..n)
        .map(|i| Q::new(n as i64 - 1 - 2 * i as i64, 2))
        .collect();
    Weight::eps_only(c)
}
