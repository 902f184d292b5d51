//! Partitions, 2-restricted partitions and the bipartition classes that label
//! parabolic and Borel subalgebras of `pe(n)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    /// The staircase `(n, n−1, …, 1)`.
    pub fn staircase(n: usize) -> Partition {
        Partition((1..=n as u32).rev().collect())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Consecutive differences, including the step to a trailing zero, are 0 or 1.
    pub fn is_two_restricted(&self) -> bool {
        self.0
            .iter()
            .zip(self.0.iter().skip(1).chain(std::iter::once(&0)))
            .all(|(a, b)| a - b <= 1)
    }

    pub fn contains(&self, part: u32) -> bool {
        self.0.contains(&part)
    }

    /// Multiplicity of each part.
    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Partition> {
        Partition::new(v)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Partition::new(Vec::<u32>::deserialize(d)?).map_err(de::Error::custom)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// A partition whose consecutive parts (with a trailing zero) differ by at most one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct RestrictedPartition(Partition);

impl RestrictedPartition {
    pub fn new(p: Partition) -> Result<RestrictedPartition> {
        if p.is_two_restricted() {
            Ok(RestrictedPartition(p))
        } else {
            Err(Error::InvalidPartition(format!("{p} is not 2-restricted")))
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn parts(&self) -> &[u32] {
        self.0.parts()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<'de> Deserialize<'de> for RestrictedPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        RestrictedPartition::new(Partition::deserialize(d)?).map_err(de::Error::custom)
    }
}

/// All 2-restricted partitions of length exactly `r`.
pub fn restricted_of_length(r: usize) -> Vec<RestrictedPartition> {
    if r == 0 {
        return vec![RestrictedPartition(Partition::empty())];
    }
    // Built bottom-up: the last part is 1 and each step upwards adds 0 or 1.
    (0u64..1 << (r - 1))
        .map(|bits| {
            let mut parts = vec![1u32; r];
            for i in (0..r - 1).rev() {
                let step = ((bits >> i) & 1) as u32;
                parts[i] = parts[i + 1] + step;
            }
            RestrictedPartition(Partition(parts))
        })
        .collect()
}

/// All 2-restricted partitions of length at most `n`.
pub fn restricted_up_to(n: usize) -> Vec<RestrictedPartition> {
    (0..=n).flat_map(restricted_of_length).collect()
}

/// Multiset union of parts, sorted decreasingly.
pub fn merge(mu: &Partition, nu: &Partition) -> Partition {
    let mut v: Vec<u32> = mu.0.iter().chain(&nu.0).copied().collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    Partition(v)
}

/// A pair of partitions `(μ, ν)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bipartition {
    pub mu: Partition,
    pub nu: Partition,
}

impl Bipartition {
    pub fn new(mu: Partition, nu: Partition) -> Bipartition {
        Bipartition { mu, nu }
    }

    /// Convenience constructor from raw part lists.
    pub fn from_parts(mu: &[u32], nu: &[u32]) -> Result<Bipartition> {
        Ok(Bipartition {
            mu: Partition::new(mu.to_vec())?,
            nu: Partition::new(nu.to_vec())?,
        })
    }

    pub fn merged(&self) -> Partition {
        merge(&self.mu, &self.nu)
    }

    /// The label `(∂ⁿ, ∅)` of the standard Borel.
    pub fn standard_borel(n: usize) -> Bipartition {
        Bipartition::new(Partition::staircase(n), Partition::empty())
    }

    /// The label `(∅, ∂ⁿ)`.
    pub fn reverse_borel(n: usize) -> Bipartition {
        Bipartition::new(Partition::empty(), Partition::staircase(n))
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.mu, self.nu)
    }
}

/// The three nested bipartition classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BrpClass {
    /// All parabolic labels.
    All,
    /// Reduced parabolic labels.
    Reduced,
    /// Borel labels.
    Borel,
}

impl BrpClass {
    pub fn name(self) -> &'static str {
        match self {
            BrpClass::All => "BRP",
            BrpClass::Reduced => "BRP0",
            BrpClass::Borel => "BRP00",
        }
    }
}

/// Membership of a bipartition in the three classes for a fixed rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub brp: bool,
    pub brp0: bool,
    pub brp00: bool,
}

impl Membership {
    pub fn contains(&self, class: BrpClass) -> bool {
        match class {
            BrpClass::All => self.brp,
            BrpClass::Reduced => self.brp0,
            BrpClass::Borel => self.brp00,
        }
    }
}

pub fn classify_bipartition(x: &Bipartition, n: usize) -> Membership {
    let k = x.merged();
    let brp = k.len() <= n && k.is_two_restricted();
    let disjoint = !x.mu.parts().iter().any(|p| x.nu.contains(*p));
    let brp0 = brp && disjoint && k.len() == n;
    let brp00 = brp0 && k == Partition::staircase(n);
    Membership { brp, brp0, brp00 }
}

/// Errors unless `x` lies in the given class at rank `n`.
pub fn require(x: &Bipartition, n: usize, class: BrpClass) -> Result<()> {
    if classify_bipartition(x, n).contains(class) {
        Ok(())
    } else {
        Err(Error::Membership {
            what: format!("{x} at rank {n}"),
            class: class.name(),
        })
    }
}

/// Every bipartition of the class at rank `n`, in canonical order:
/// decreasing in `(μ, ν)` with a longer partition ahead of its prefixes.
pub fn enumerate(n: usize, class: BrpClass) -> Vec<Bipartition> {
    let kappas: Vec<RestrictedPartition> = match class {
        BrpClass::All => restricted_up_to(n),
        BrpClass::Reduced => restricted_of_length(n),
        BrpClass::Borel => vec![RestrictedPartition(Partition::staircase(n))],
    };
    let mut out = Vec::new();
    for kappa in kappas {
        let mult: Vec<(u32, usize)> = kappa.partition().multiplicities().into_iter().collect();
        // For each distinct part, how many copies go to μ.
        let choices: Vec<Vec<usize>> = mult
            .iter()
            .map(|&(_, c)| match class {
                BrpClass::All => (0..=c).collect(),
                _ => vec![0, c],
            })
            .collect();
        let mut idx = vec![0usize; mult.len()];
        loop {
            let mut mu = Vec::new();
            let mut nu = Vec::new();
            for (k, &(part, c)) in mult.iter().enumerate() {
                let a = choices[k][idx[k]];
                mu.extend(std::iter::repeat_n(part, a));
                nu.extend(std::iter::repeat_n(part, c - a));
            }
            mu.sort_unstable_by(|a, b| b.cmp(a));
            nu.sort_unstable_by(|a, b| b.cmp(a));
            out.push(Bipartition::new(Partition(mu), Partition(nu)));
            // odometer
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// One sign of a sign form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_symbol(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' | '−' => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// A reduced parabolic label written as `(κ, f)` with `κ = μ∗ν` and
/// `f(i) = +` iff `κ_i` is a part of `μ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignForm {
    kappa: RestrictedPartition,
    f: Vec<Sign>,
}

impl SignForm {
    pub fn new(kappa: RestrictedPartition, f: Vec<Sign>) -> Result<SignForm> {
        if kappa.len() != f.len() {
            return Err(Error::InvalidSignForm(format!(
                "kappa has {} parts but f has {} signs",
                kappa.len(),
                f.len()
            )));
        }
        let k = kappa.parts();
        for i in 1..k.len() {
            if k[i] == k[i - 1] && f[i] != f[i - 1] {
                return Err(Error::InvalidSignForm(format!(
                    "equal parts at positions {} and {} carry different signs",
                    i,
                    i + 1
                )));
            }
        }
        Ok(SignForm { kappa, f })
    }

    /// Parses `kappa` parts and a sign string such as `"+-"`.
    pub fn parse(kappa: &[u32], signs: &str) -> Result<SignForm> {
        let kappa = RestrictedPartition::new(Partition::new(kappa.to_vec())?)?;
        let f = signs
            .chars()
            .enumerate()
            .map(|(i, c)| {
                Sign::from_symbol(c).ok_or_else(|| Error::Parse {
                    position: i,
                    message: format!("expected + or -, got {c:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SignForm::new(kappa, f)
    }

    /// The rank `n`, which equals the length of `κ`.
    pub fn rank(&self) -> usize {
        self.f.len()
    }

    pub fn kappa(&self) -> &RestrictedPartition {
        &self.kappa
    }

    pub fn signs(&self) -> &[Sign] {
        &self.f
    }

    pub fn sign_string(&self) -> String {
        self.f.iter().map(|s| s.symbol()).collect()
    }
}

impl fmt::Display for SignForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.kappa.partition(), self.sign_string())
    }
}

impl Serialize for SignForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SignForm", 2)?;
        st.serialize_field("kappa", &self.kappa)?;
        st.serialize_field("f", &self.sign_string())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SignForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            kappa: Vec<u32>,
            f: String,
        }
        let raw = Raw::deserialize(d)?;
        SignForm::parse(&raw.kappa, &raw.f).map_err(de::Error::custom)
    }
}

pub fn to_sign_form(x: &Bipartition, n: usize) -> Result<SignForm> {
    require(x, n, BrpClass::Reduced)?;
    let kappa = x.merged();
    let f = kappa
        .parts()
        .iter()
        .map(|p| {
            if x.mu.contains(*p) {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect();
    SignForm::new(RestrictedPartition(kappa), f)
}

pub fn from_sign_form(s: &SignForm) -> Bipartition {
    let mut mu = Vec::new();
    let mut nu = Vec::new();
    for (p, sign) in s.kappa.parts().iter().zip(&s.f) {
        match sign {
            Sign::Plus => mu.push(*p),
            Sign::Minus => nu.push(*p),
        }
    }
    Bipartition::new(Partition(mu), Partition(nu))
}

/// The partial order on reduced parabolic labels.
pub fn brp_leq(a: &SignForm, b: &SignForm) -> Result<bool> {
    let n = a.rank();
    if b.rank() != n {
        return Err(Error::LengthMismatch(format!(
            "{a} has rank {n}, {b} has rank {}",
            b.rank()
        )));
    }
    let ka = a.kappa.parts();
    let kb = b.kappa.parts();
    let diff: Vec<i64> = ka
        .iter()
        .zip(kb)
        .map(|(x, y)| *x as i64 - *y as i64)
        .collect();
    let is_partition = diff.iter().all(|d| *d >= 0) && diff.windows(2).all(|w| w[0] >= w[1]);
    if !is_partition || n == 0 {
        return Ok(is_partition);
    }
    let prefix_equal = a.f[..n - 1] == b.f[..n - 1];
    let last_ok = !(a.f[n - 1] == Sign::Plus && b.f[n - 1] == Sign::Minus);
    Ok(prefix_equal && last_ok)
}

/// `(μ, ν) ↦ (ν, μ)`.
pub fn dual(x: &Bipartition) -> Bipartition {
    Bipartition::new(x.nu.clone(), x.mu.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bp(mu: &[u32], nu: &[u32]) -> Bipartition {
        Bipartition::from_parts(mu, nu).unwrap()
    }

    fn sf(k: &[u32], f: &str) -> SignForm {
        SignForm::parse(k, f).unwrap()
    }

    #[test]
    fn merge_examples() {
        let p = |v: &[u32]| Partition::new(v.to_vec()).unwrap();
        assert_eq!(merge(&p(&[3, 1]), &p(&[2])), p(&[3, 2, 1]));
        assert_eq!(merge(&p(&[2, 1]), &p(&[])), p(&[2, 1]));
        assert_eq!(merge(&p(&[1]), &p(&[1])), p(&[1, 1]));
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(!Partition::new(vec![3, 1]).unwrap().is_two_restricted());
        assert!(!Partition::new(vec![2]).unwrap().is_two_restricted());
        assert!(Partition::new(vec![2, 2, 1]).unwrap().is_two_restricted());
        assert!(Partition::empty().is_two_restricted());
    }

    #[test]
    fn classification_examples() {
        let m = classify_bipartition(&bp(&[2], &[1]), 2);
        assert!(m.brp && m.brp0 && m.brp00);
        let m = classify_bipartition(&bp(&[1], &[1]), 2);
        assert!(m.brp && !m.brp0 && !m.brp00);
        let m = classify_bipartition(&bp(&[1, 1], &[]), 2);
        assert!(m.brp && m.brp0 && !m.brp00);
        let m = classify_bipartition(&bp(&[2], &[]), 2);
        assert!(!m.brp);
    }

    #[test]
    fn enumerate_rank_two() {
        let borels = enumerate(2, BrpClass::Borel);
        assert_eq!(
            borels,
            vec![
                bp(&[2, 1], &[]),
                bp(&[2], &[1]),
                bp(&[1], &[2]),
                bp(&[], &[2, 1])
            ]
        );
        let reduced = enumerate(2, BrpClass::Reduced);
        assert_eq!(reduced.len(), 6);
        assert!(reduced.contains(&bp(&[1, 1], &[])));
        assert!(reduced.contains(&bp(&[], &[1, 1])));
        assert_eq!(enumerate(2, BrpClass::All).len(), 10);
        assert_eq!(enumerate(1, BrpClass::All).len(), 3);
        assert_eq!(enumerate(3, BrpClass::Borel).len(), 8);
    }

    /// Independent count: brute force over all bipartitions with small parts.
    fn brute_force(n: usize, class: BrpClass) -> usize {
        fn parts_upto(max_len: usize, max_part: u32) -> Vec<Vec<u32>> {
            let mut out = vec![vec![]];
            if max_len == 0 {
                return out;
            }
            for first in 1..=max_part {
                for rest in parts_upto(max_len - 1, first) {
                    let mut v = vec![first];
                    v.extend(rest);
                    out.push(v);
                }
            }
            out
        }
        let all = parts_upto(n, n as u32);
        let mut count = 0;
        for mu in &all {
            for nu in &all {
                let x = bp(mu, nu);
                if classify_bipartition(&x, n).contains(class) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 1..=4 {
            for class in [BrpClass::All, BrpClass::Reduced, BrpClass::Borel] {
                let e = enumerate(n, class);
                assert_eq!(e.len(), brute_force(n, class), "n={n} {class:?}");
                let mut d = e.clone();
                d.dedup();
                assert_eq!(d.len(), e.len());
                assert!(e.iter().all(|x| classify_bipartition(x, n).contains(class)));
            }
        }
    }

    #[test]
    fn borel_census() {
        for n in 1..=12 {
            assert_eq!(enumerate(n, BrpClass::Borel).len(), 1 << n);
        }
    }

    #[test]
    fn restricted_census_against_definition() {
        for r in 1..=12usize {
            let rp = restricted_of_length(r);
            assert_eq!(rp.len(), 1 << (r - 1));
            assert!(rp
                .iter()
                .all(|p| p.len() == r && p.partition().is_two_restricted()));
        }
        // exhaustive filter at small r
        for r in 1..=5usize {
            let mut count = 0;
            let mut stack = vec![vec![]];
            while let Some(v) = stack.pop() {
                if v.len() == r {
                    if Partition::new(v.clone()).unwrap().is_two_restricted() {
                        count += 1;
                    }
                    continue;
                }
                let cap = v.last().copied().unwrap_or(r as u32 + 1);
                for p in 1..=cap {
                    let mut w = v.clone();
                    w.push(p);
                    stack.push(w);
                }
            }
            assert_eq!(count, 1 << (r - 1));
        }
    }

    #[test]
    fn sign_form_examples() {
        assert_eq!(to_sign_form(&bp(&[2], &[1]), 2).unwrap(), sf(&[2, 1], "+-"));
        assert_eq!(
            to_sign_form(&Bipartition::standard_borel(3), 3).unwrap(),
            sf(&[3, 2, 1], "+++")
        );
        assert!(to_sign_form(&bp(&[1], &[1]), 2).is_err());
        assert!(SignForm::parse(&[1, 1], "+-").is_err());
        assert!(SignForm::parse(&[2, 1], "+").is_err());
    }

    #[test]
    fn sign_form_round_trip() {
        for n in 1..=6 {
            for x in enumerate(n, BrpClass::Reduced) {
                let s = to_sign_form(&x, n).unwrap();
                assert_eq!(from_sign_form(&s), x);
            }
        }
    }

    #[test]
    fn order_examples() {
        let a = sf(&[2, 1], "--");
        let b = sf(&[1, 1], "--");
        assert!(brp_leq(&a, &a).unwrap());
        assert!(brp_leq(&a, &b).unwrap());
        assert!(!brp_leq(&b, &a).unwrap());
        assert!(!brp_leq(&sf(&[2, 1], "++"), &sf(&[2, 1], "+-")).unwrap());
        assert!(brp_leq(&sf(&[2, 1], "+-"), &sf(&[2, 1], "++")).unwrap());
        assert!(brp_leq(&a, &sf(&[1], "-")).is_err());
    }

    #[test]
    fn order_is_partial_order() {
        for n in 1..=5 {
            let all: Vec<SignForm> = enumerate(n, BrpClass::Reduced)
                .iter()
                .map(|x| to_sign_form(x, n).unwrap())
                .collect();
            let leq: Vec<Vec<bool>> = all
                .iter()
                .map(|a| all.iter().map(|b| brp_leq(a, b).unwrap()).collect())
                .collect();
            let k = all.len();
            for i in 0..k {
                assert!(leq[i][i]);
                for j in 0..k {
                    if i != j {
                        assert!(!(leq[i][j] && leq[j][i]), "n={n}");
                    }
                    for l in 0..k {
                        if leq[i][j] && leq[j][l] {
                            assert!(leq[i][l], "n={n}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dual_on_borels() {
        assert_eq!(
            dual(&Bipartition::standard_borel(2)),
            Bipartition::reverse_borel(2)
        );
        assert_eq!(dual(&bp(&[2], &[1])), bp(&[1], &[2]));
        for n in 1..=6 {
            let b = enumerate(n, BrpClass::Borel);
            let mut d: Vec<Bipartition> = b.iter().map(dual).collect();
            d.sort_by(|x, y| y.cmp(x));
            assert_eq!(d, b);
        }
    }

    #[test]
    fn json_shapes() {
        let x = bp(&[2], &[1]);
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"{"mu":[2],"nu":[1]}"#);
        assert_eq!(
            serde_json::from_str::<Bipartition>(r#"{"mu":[2],"nu":[1]}"#).unwrap(),
            x
        );
        assert!(serde_json::from_str::<Bipartition>(r#"{"mu":[1,2],"nu":[]}"#).is_err());
        let s = sf(&[2, 1], "+-");
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"kappa":[2,1],"f":"+-"}"#
        );
        assert_eq!(
            serde_json::from_str::<SignForm>(r#"{"kappa":[2,1],"f":"+-"}"#).unwrap(),
            s
        );
    }

    proptest! {
        #[test]
        fn dual_is_involution(mu in prop::collection::vec(1u32..6, 0..5), nu in prop::collection::vec(1u32..6, 0..5)) {
            let mut mu = mu; mu.sort_unstable_by(|a, b| b.cmp(a));
            let mut nu = nu; nu.sort_unstable_by(|a, b| b.cmp(a));
            let x = bp(&mu, &nu);
            prop_assert_eq!(dual(&dual(&x)), x);
        }

        #[test]
        fn merge_preserves_multiset(mu in prop::collection::vec(1u32..6, 0..5), nu in prop::collection::vec(1u32..6, 0..5)) {
            let mut mu = mu; mu.sort_unstable_by(|a, b| b.cmp(a));
            let mut nu = nu; nu.sort_unstable_by(|a, b| b.cmp(a));
            let x = bp(&mu, &nu);
            let m = x.merged();
            prop_assert_eq!(m.len(), mu.len() + nu.len());
            prop_assert_eq!(m.parts().iter().map(|p| *p as u64).sum::<u64>(),
                mu.iter().chain(&nu).map(|p| *p as u64).sum::<u64>());
        }
    }
}
