//! Truncated formal characters over `h* × Z/2`.
//!
//! Every term carries a grade: the number of lowering factors used to reach
//! it from the base. A character of depth `D` keeps exactly the terms of
//! grade at most `D`, so products and sums are exact on what they retain.

use std::collections::BTreeMap;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{require, Bipartition, BrpClass};
use crate::periplectic::{decompose, pe_datum, zeta};
use crate::weights::{Parity, ParityWeight, Root, Weight};

/// One monomial `e^{(weight, parity)}` at a given grade.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub grade: usize,
    pub weight: Weight,
    pub parity: Parity,
}

/// A finitely supported, truncated formal character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalCharacter {
    base: ParityWeight,
    depth: usize,
    borel: Bipartition,
    terms: BTreeMap<Term, u64>,
}

impl FormalCharacter {
    /// The zero character.
    pub fn zero(base: ParityWeight, depth: usize, borel: Bipartition) -> FormalCharacter {
        FormalCharacter {
            base,
            depth,
            borel,
            terms: BTreeMap::new(),
        }
    }

    /// A single monomial `e^{(w, p)}` at `grade`, recorded against `base`.
    pub fn monomial(
        base: ParityWeight,
        term: ParityWeight,
        grade: usize,
        depth: usize,
        borel: Bipartition,
    ) -> FormalCharacter {
        let mut c = FormalCharacter::zero(base, depth, borel);
        if grade <= depth {
            c.terms.insert(
                Term {
                    grade,
                    weight: term.weight,
                    parity: term.parity,
                },
                1,
            );
        }
        c
    }

    /// The unit `e^{(0, 0)}`.
    pub fn one(n: usize, depth: usize, borel: Bipartition) -> FormalCharacter {
        let zero = ParityWeight::even(Weight::from_ints(&vec![0; n]));
        FormalCharacter::monomial(zero.clone(), zero, 0, depth, borel)
    }

    pub fn base(&self) -> &ParityWeight {
        &self.base
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn borel(&self) -> &Bipartition {
        &self.borel
    }

    pub fn terms(&self) -> &BTreeMap<Term, u64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    /// Coefficient of `e^{(w, p)}` summed over grades.
    pub fn coefficient(&self, w: &Weight, p: Parity) -> u64 {
        self.terms
            .iter()
            .filter(|(t, _)| t.weight == *w && t.parity == p)
            .map(|(_, c)| c)
            .sum()
    }

    /// Drops every term above `depth`.
    pub fn truncate(&self, depth: usize) -> FormalCharacter {
        let depth = depth.min(self.depth);
        FormalCharacter {
            base: self.base.clone(),
            depth,
            borel: self.borel.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| t.grade <= depth)
                .map(|(t, c)| (t.clone(), *c))
                .collect(),
        }
    }

    fn insert(&mut self, t: Term, c: u64) {
        if t.grade <= self.depth && c > 0 {
            *self.terms.entry(t).or_insert(0) += c;
        }
    }

    /// Multiplies by `(1 + e^{(γ, 1)})` with the new monomial one grade higher.
    fn times_odd_factor(&self, gamma: &Weight) -> FormalCharacter {
        let mut out = self.clone();
        for (t, c) in &self.terms {
            out.insert(
                Term {
                    grade: t.grade + 1,
                    weight: &t.weight + gamma,
                    parity: t.parity + Parity::Odd,
                },
                *c,
            );
        }
        out
    }

    /// Multiplies by `Σ_{k ≥ 0} e^{(kβ, 0)}` with `e^{kβ}` at grade `k`.
    fn times_geometric(&self, beta: &Weight) -> FormalCharacter {
        let mut out = FormalCharacter::zero(self.base.clone(), self.depth, self.borel.clone());
        for (t, c) in &self.terms {
            let mut w = t.weight.clone();
            for g in t.grade..=self.depth {
                out.insert(
                    Term {
                        grade: g,
                        weight: w.clone(),
                        parity: t.parity,
                    },
                    *c,
                );
                w = &w + beta;
            }
        }
        out
    }
}

pub fn char_add(a: &FormalCharacter, b: &FormalCharacter) -> Result<FormalCharacter> {
    if a.borel != b.borel {
        return Err(Error::PositiveSystemMismatch);
    }
    if a.base != b.base {
        return Err(Error::Precondition(format!(
            "characters with bases {} and {} cannot be added",
            a.base, b.base
        )));
    }
    let mut out = a.truncate(b.depth);
    for (t, c) in &b.terms {
        out.insert(t.clone(), *c);
    }
    Ok(out)
}

pub fn char_mult(a: &FormalCharacter, b: &FormalCharacter) -> Result<FormalCharacter> {
    if a.borel != b.borel {
        return Err(Error::PositiveSystemMismatch);
    }
    let base = ParityWeight::new(
        &a.base.weight + &b.base.weight,
        a.base.parity + b.base.parity,
    );
    let mut out = FormalCharacter::zero(base, a.depth.min(b.depth), a.borel.clone());
    for (s, x) in &a.terms {
        for (t, y) in &b.terms {
            out.insert(
                Term {
                    grade: s.grade + t.grade,
                    weight: &s.weight + &t.weight,
                    parity: s.parity + t.parity,
                },
                x * y,
            );
        }
    }
    Ok(out)
}

/// Roots of `u⁻` for the Borel labelled `b`, split into even and odd.
fn lowering_roots(b: &Bipartition, n: usize) -> Result<(Vec<Root>, Vec<Root>)> {
    require(b, n, BrpClass::Borel)?;
    let d = decompose(&zeta(b, n)?, n)?;
    Ok(d.uminus.into_iter().partition(|r| !r.is_odd()))
}

/// `e^λ · Π (1 − e^β)^{−1} · Π (1 + e^{(γ,1)})` over the even and odd
/// roots of `n⁻` for the Borel `b`.
pub fn verma_character(
    b: &Bipartition,
    lambda: &ParityWeight,
    depth: usize,
    n: usize,
) -> Result<FormalCharacter> {
    let (even, odd) = lowering_roots(b, n)?;
    let mut c = FormalCharacter::monomial(lambda.clone(), lambda.clone(), 0, depth, b.clone());
    for beta in &even {
        c = c.times_geometric(&beta.weight);
    }
    for gamma in &odd {
        c = c.times_odd_factor(&gamma.weight);
    }
    Ok(c)
}

/// Verma character of the even part, `e^λ · Π (1 − e^β)^{−1}`, recorded
/// against the positive system of `b`.
pub fn even_verma_character(
    b: &Bipartition,
    lambda: &ParityWeight,
    depth: usize,
    n: usize,
) -> Result<FormalCharacter> {
    let (even, _) = lowering_roots(b, n)?;
    let mut c = FormalCharacter::monomial(lambda.clone(), lambda.clone(), 0, depth, b.clone());
    for beta in &even {
        c = c.times_geometric(&beta.weight);
    }
    Ok(c)
}

/// `m · Π_{α odd} (1 + e^{(α,1)})`. A positive odd root `α` of the
/// positive system of `m` is written `e^{(α,1)} (1 + e^{(−α,1)})`, so the
/// base moves up by `α` and only `e^{(−α,1)}` costs a grade.
pub fn induced_character(m: &FormalCharacter, n: usize) -> Result<FormalCharacter> {
    let datum = pe_datum(n)?;
    let plus = decompose(&zeta(&m.borel, n)?, n)?.uplus;
    let mut c = m.clone();
    for alpha in datum.odd_roots() {
        if plus.binary_search(alpha).is_ok() {
            let shift = FormalCharacter::monomial(
                ParityWeight::new(alpha.weight.clone(), Parity::Odd),
                ParityWeight::new(alpha.weight.clone(), Parity::Odd),
                0,
                c.depth,
                c.borel.clone(),
            );
            let lower = FormalCharacter::monomial(
                ParityWeight::new(alpha.weight.clone(), Parity::Odd),
                ParityWeight::even(Weight::zero(alpha.weight.shape())),
                1,
                c.depth,
                c.borel.clone(),
            );
            let mut factor = shift;
            for (t, k) in lower.terms {
                factor.insert(t, k);
            }
            c = char_mult(&c, &factor)?;
        } else {
            c = c.times_odd_factor(&alpha.weight);
        }
    }
    Ok(c)
}

/// Δ-flag labels `(λ + ΣS, |S| mod 2)` over subsets `S` of the odd roots of `b`,
/// each with the grade `|Φ(b₁) ∖ S|`.
pub(crate) fn delta_flag_terms(
    b: &Bipartition,
    lambda: &Weight,
    n: usize,
) -> Result<Vec<(ParityWeight, usize)>> {
    let odd = crate::periplectic::borel_odd_roots(b, n)?;
    let k = odd.len();
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0u64..(1 << k) {
        let mut w = lambda.clone();
        let mut size = 0;
        for (i, r) in odd.iter().enumerate() {
            if mask >> i & 1 == 1 {
                w = &w + &r.weight;
                size += 1;
            }
        }
        out.push((ParityWeight::new(w, Parity::of_count(size)), k - size));
    }
    Ok(out)
}

/// Multiset of Δ-flag labels; its largest element is `λ` plus all odd roots of `b`.
pub fn delta_flag_labels(b: &Bipartition, lambda: &Weight, n: usize) -> Result<Vec<ParityWeight>> {
    Ok(delta_flag_terms(b, lambda, n)?
        .into_iter()
        .map(|(l, _)| l)
        .collect())
}

/// Outcome of comparing both sides of the Δ-flag identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagCheck {
    pub holds: bool,
    /// Terms whose coefficients differ, as `(term, lhs, rhs)`.
    pub diff: Vec<String>,
}

/// Compares `Ind(even Verma of λ)` with the sum over Δ-flag labels of the
/// Verma characters for `b`, each lowered by the odd roots of `b` it omits.
pub fn verify_flag_identity(
    b: &Bipartition,
    lambda: &Weight,
    depth: usize,
    n: usize,
) -> Result<FlagCheck> {
    let lam = ParityWeight::even(lambda.clone());
    let lhs = induced_character(&even_verma_character(b, &lam, depth, n)?, n)?;

    let odd = crate::periplectic::borel_odd_roots(b, n)?;
    let top = ParityWeight::new(
        odd.iter().fold(lambda.clone(), |acc, r| &acc + &r.weight),
        Parity::of_count(odd.len()),
    );
    let mut rhs = FormalCharacter::zero(top, depth, b.clone());
    for (label, grade) in delta_flag_terms(b, lambda, n)? {
        let v = verma_character(b, &label, depth, n)?;
        let drop = ParityWeight::new(
            &rhs.base.weight - &label.weight,
            rhs.base.parity + label.parity,
        );
        let zero = ParityWeight::even(Weight::zero(lambda.shape()));
        let lowering = FormalCharacter::monomial(drop, zero, grade, depth, b.clone());
        rhs = char_add(&rhs, &char_mult(&v, &lowering)?)?;
    }

    let mut diff = Vec::new();
    if lhs.base != rhs.base {
        diff.push(format!("bases differ: {} vs {}", lhs.base, rhs.base));
    }
    let keys: std::collections::BTreeSet<&Term> =
        lhs.terms.keys().chain(rhs.terms.keys()).collect();
    for t in keys {
        let l = lhs.terms.get(t).copied().unwrap_or(0);
        let r = rhs.terms.get(t).copied().unwrap_or(0);
        if l != r {
            diff.push(format!(
                "{}@{} grade {}: {l} vs {r}",
                t.weight,
                t.parity.bit(),
                t.grade
            ));
        }
    }
    Ok(FlagCheck {
        holds: diff.is_empty(),
        diff,
    })
}

#[derive(Serialize)]
struct TermJson<'a> {
    weight: &'a Weight,
    parity: Parity,
    coeff: u64,
    height: usize,
}

impl Serialize for FormalCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson<'_>> = self
            .terms
            .iter()
            .map(|(t, c)| TermJson {
                weight: &t.weight,
                parity: t.parity,
                coeff: *c,
                height: t.grade,
            })
            .collect();
        let mut st = s.serialize_struct("FormalCharacter", 4)?;
        st.serialize_field("base", &self.base)?;
        st.serialize_field("depth", &self.depth)?;
        st.serialize_field("borel", &self.borel)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}
