//! Exact weights, roots, invariant forms and Weyl group actions.
//!
//! A weight lives in a two-block coordinate space: a `delta` block and an
//! `eps` block. Families with a single block (`pe`, `q`) leave `delta` empty.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = Ratio<i64>;

/// Integer as an exact rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

/// `p/q` as an exact rational.
pub fn qr(num: i64, den: i64) -> Q {
    Q::new(num, den)
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_q(s: &str) -> Result<Q> {
    parse_q_at(s, 0)
}

fn parse_q_at(s: &str, offset: usize) -> Result<Q> {
    let t = s.trim();
    let lead = s.len() - s.trim_start().len();
    let bad = |message: String| Error::Parse {
        position: offset + lead,
        message,
    };
    if t.is_empty() {
        return Err(bad("empty number".into()));
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: i64 = num
        .parse()
        .map_err(|_| bad(format!("invalid numerator {num:?}")))?;
    let den: i64 = den
        .parse()
        .map_err(|_| bad(format!("invalid denominator {den:?}")))?;
    if den == 0 {
        return Err(bad("zero denominator".into()));
    }
    Ok(Q::new(num, den))
}

/// Parses a comma-separated list of rationals such as `"1/2,-3,0"`.
/// An empty or all-blank string yields an empty list.
pub fn parse_q_list(s: &str) -> Result<Vec<Q>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in s.split(',') {
        out.push(parse_q_at(piece, offset)?);
        offset += piece.len() + 1;
    }
    Ok(out)
}

/// Element of Z/2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn of_count(k: usize) -> Parity {
        if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl TryFrom<u8> for Parity {
    type Error = Error;
    fn try_from(b: u8) -> Result<Parity> {
        match b {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            _ => Err(Error::Parse {
                position: 0,
                message: format!("parity must be 0 or 1, got {b}"),
            }),
        }
    }
}

impl Serialize for Parity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.bit())
    }
}

impl<'de> Deserialize<'de> for Parity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let b = u8::deserialize(d)?;
        Parity::try_from(b).map_err(de::Error::custom)
    }
}

/// Numbers of coordinates in the two blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    pub delta: usize,
    pub eps: usize,
}

impl Shape {
    pub fn eps_only(n: usize) -> Shape {
        Shape { delta: 0, eps: n }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.delta, self.eps)
    }
}

/// Exact weight in the delta/eps coordinate basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    delta: Vec<Q>,
    eps: Vec<Q>,
}

impl Weight {
    pub fn new(delta: Vec<Q>, eps: Vec<Q>) -> Weight {
        Weight { delta, eps }
    }

    pub fn eps_only(eps: Vec<Q>) -> Weight {
        Weight {
            delta: Vec::new(),
            eps,
        }
    }

    /// Eps-only weight with integer coordinates.
    pub fn from_ints(eps: &[i64]) -> Weight {
        Weight::eps_only(eps.iter().copied().map(q).collect())
    }

    pub fn zero(shape: Shape) -> Weight {
        Weight {
            delta: vec![Q::zero(); shape.delta],
            eps: vec![Q::zero(); shape.eps],
        }
    }

    /// The `i`-th eps basis vector (0-based).
    pub fn eps_unit(shape: Shape, i: usize) -> Weight {
        let mut w = Weight::zero(shape);
        w.eps[i] = Q::one();
        w
    }

    /// The `i`-th delta basis vector (0-based).
    pub fn delta_unit(shape: Shape, i: usize) -> Weight {
        let mut w = Weight::zero(shape);
        w.delta[i] = Q::one();
        w
    }

    /// `ε_1 + … + ε_k` in an eps-only space of rank `n`.
    pub fn omega(n: usize, k: usize) -> Weight {
        let mut w = Weight::zero(Shape::eps_only(n));
        for c in w.eps.iter_mut().take(k) {
            *c = Q::one();
        }
        w
    }

    pub fn delta(&self) -> &[Q] {
        &self.delta
    }

    pub fn eps(&self) -> &[Q] {
        &self.eps
    }

    pub fn shape(&self) -> Shape {
        Shape {
            delta: self.delta.len(),
            eps: self.eps.len(),
        }
    }

    /// All coordinates, delta block first.
    pub fn coords(&self) -> impl Iterator<Item = &Q> {
        self.delta.iter().chain(self.eps.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.coords().all(Zero::is_zero)
    }

    pub fn scale(&self, c: Q) -> Weight {
        Weight {
            delta: self.delta.iter().map(|x| x * c).collect(),
            eps: self.eps.iter().map(|x| x * c).collect(),
        }
    }

    /// True when every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.coords().all(Ratio::is_integer)
    }

    fn zip(&self, other: &Weight, f: impl Fn(&Q, &Q) -> Q) -> Weight {
        assert_eq!(
            self.shape(),
            other.shape(),
            "weight arithmetic on mismatched shapes"
        );
        Weight {
            delta: self
                .delta
                .iter()
                .zip(&other.delta)
                .map(|(a, b)| f(a, b))
                .collect(),
            eps: self
                .eps
                .iter()
                .zip(&other.eps)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-Q::one())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

fn fmt_block(xs: &[Q]) -> String {
    xs.iter().map(fmt_q).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.delta.is_empty() {
            write!(f, "({})", fmt_block(&self.eps))
        } else {
            write!(f, "({} | {})", fmt_block(&self.delta), fmt_block(&self.eps))
        }
    }
}

fn q_strings(xs: &[Q]) -> Vec<String> {
    xs.iter().map(fmt_q).collect()
}

/// Serialized as a plain array of `"p/q"` strings when the delta block is
/// empty, otherwise as `{"delta": [...], "eps": [...]}`.
impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.delta.is_empty() {
            q_strings(&self.eps).serialize(s)
        } else {
            let mut m = s.serialize_map(Some(2))?;
            m.serialize_entry("delta", &q_strings(&self.delta))?;
            m.serialize_entry("eps", &q_strings(&self.eps))?;
            m.end()
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum QRepr {
    Int(i64),
    Str(String),
}

impl QRepr {
    fn to_q(&self) -> Result<Q> {
        match self {
            QRepr::Int(n) => Ok(q(*n)),
            QRepr::Str(s) => parse_q(s),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WeightRepr {
    Flat(Vec<QRepr>),
    Blocks { delta: Vec<QRepr>, eps: Vec<QRepr> },
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let conv = |xs: Vec<QRepr>| -> std::result::Result<Vec<Q>, D::Error> {
            xs.iter()
                .map(|x| x.to_q().map_err(de::Error::custom))
                .collect()
        };
        match WeightRepr::deserialize(d)? {
            WeightRepr::Flat(eps) => Ok(Weight::eps_only(conv(eps)?)),
            WeightRepr::Blocks { delta, eps } => Ok(Weight::new(conv(delta)?, conv(eps)?)),
        }
    }
}

/// A weight together with a Z/2 grading.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParityWeight {
    pub weight: Weight,
    pub parity: Parity,
}

impl ParityWeight {
    pub fn new(weight: Weight, parity: Parity) -> ParityWeight {
        ParityWeight { weight, parity }
    }

    pub fn even(weight: Weight) -> ParityWeight {
        ParityWeight::new(weight, Parity::Even)
    }
}

impl fmt::Display for ParityWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.weight, self.parity.bit())
    }
}

/// A root: a weight with the parity of its root space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub weight: Weight,
    pub parity: Parity,
}

impl Root {
    pub fn even(weight: Weight) -> Root {
        Root {
            weight,
            parity: Parity::Even,
        }
    }

    pub fn odd(weight: Weight) -> Root {
        Root {
            weight,
            parity: Parity::Odd,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.parity.is_odd()
    }

    pub fn neg(&self) -> Root {
        Root {
            weight: -&self.weight,
            parity: self.parity,
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.is_odd() { "odd" } else { "even" };
        write!(f, "{} {}", self.weight, tag)
    }
}

/// The algebra families with explicit root data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// pe(n)
    Pe { n: usize },
    /// gl(m|n): eps block of rank m, delta block of rank n
    Gl { m: usize, n: usize },
    /// q(n)
    Q { n: usize },
    /// spo(2n|2m)
    SpoEven { n: usize, m: usize },
    /// spo(2n|2m+1)
    SpoOdd { n: usize, m: usize },
    /// D(2|1; ζ)
    D21 { zeta: Q },
    /// G(3)
    G3,
    /// F(3|1)
    F31,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Pe { n } => write!(f, "pe({n})"),
            Family::Gl { m, n } => write!(f, "gl({m}|{n})"),
            Family::Q { n } => write!(f, "q({n})"),
            Family::SpoEven { n, m } => write!(f, "spo({}|{})", 2 * n, 2 * m),
            Family::SpoOdd { n, m } => write!(f, "spo({}|{})", 2 * n, 2 * m + 1),
            Family::D21 { zeta } => write!(f, "D(2|1;{})", fmt_q(zeta)),
            Family::G3 => write!(f, "G(3)"),
            Family::F31 => write!(f, "F(3|1)"),
        }
    }
}

/// Block-diagonal invariant form given by one Gram matrix per block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    delta: Vec<Vec<Q>>,
    eps: Vec<Vec<Q>>,
}

impl Form {
    fn diagonal(delta: Vec<Q>, eps: Vec<Q>) -> Form {
        let gram = |d: Vec<Q>| -> Vec<Vec<Q>> {
            let k = d.len();
            (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| if i == j { d[i] } else { Q::zero() })
                        .collect()
                })
                .collect()
        };
        Form {
            delta: gram(delta),
            eps: gram(eps),
        }
    }

    fn shape(&self) -> Shape {
        Shape {
            delta: self.delta.len(),
            eps: self.eps.len(),
        }
    }

    /// Evaluates the form; shapes must already agree.
    fn eval(&self, a: &Weight, b: &Weight) -> Q {
        let block = |g: &[Vec<Q>], x: &[Q], y: &[Q]| -> Q {
            let mut s = Q::zero();
            for (i, row) in g.iter().enumerate() {
                for (j, gij) in row.iter().enumerate() {
                    if !gij.is_zero() {
                        s += x[i] * gij * y[j];
                    }
                }
            }
            s
        };
        block(&self.delta, &a.delta, &b.delta) + block(&self.eps, &a.eps, &b.eps)
    }
}

/// Root system of one of the supported families, with a fixed positive system.
#[derive(Clone, Debug)]
pub struct RootDatum {
    family: Family,
    shape: Shape,
    roots: Vec<Root>,
    positive: Vec<Root>,
    even_simple: Vec<Root>,
    form: Form,
}

impl RootDatum {
    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// All roots, sorted.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// The positive roots of the distinguished positive system.
    pub fn positive(&self) -> &[Root] {
        &self.positive
    }

    pub fn even_simple(&self) -> &[Root] {
        &self.even_simple
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.roots.binary_search(r).is_ok()
    }

    pub fn even_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| !r.is_odd())
    }

    pub fn odd_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.is_odd())
    }

    fn check_shape(&self, w: &Weight) -> Result<()> {
        if w.shape() == self.shape {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.shape.to_string(),
                found: w.shape().to_string(),
            })
        }
    }

    /// `(λ, μ)` under the family's invariant form.
    pub fn pair(&self, a: &Weight, b: &Weight) -> Result<Q> {
        self.check_shape(a)?;
        self.check_shape(b)?;
        Ok(self.form.eval(a, b))
    }

    /// `(λ, α∨) = 2(λ, α)/(α, α)`; errors on isotropic `α`.
    pub fn coroot_pairing(&self, lambda: &Weight, alpha: &Root) -> Result<Q> {
        let aa = self.pair(&alpha.weight, &alpha.weight)?;
        if aa.is_zero() {
            return Err(Error::NotIsotropic(alpha.to_string()));
        }
        Ok(q(2) * self.pair(lambda, &alpha.weight)? / aa)
    }
}

/// Free-function form of [`RootDatum::pair`].
pub fn pair(datum: &RootDatum, a: &Weight, b: &Weight) -> Result<Q> {
    datum.pair(a, b)
}

/// Builds the root datum of a family.
pub fn build_root_datum(family: &Family) -> Result<RootDatum> {
    let unsupported = |why: &str| Err(Error::UnsupportedFamily(format!("{family}: {why}")));
    let (shape, form, funct_delta, funct_eps) = match *family {
        Family::Pe { n } | Family::Q { n } => {
            if n == 0 {
                return unsupported("rank must be positive");
            }
            let f: Vec<i64> = (1..=n as i64).rev().collect();
            (
                Shape::eps_only(n),
                Form::diagonal(vec![], vec![Q::one(); n]),
                vec![],
                f,
            )
        }
        Family::Gl { m, n } => {
            if m == 0 || n == 0 {
                return unsupported("ranks must be positive");
            }
            let fe: Vec<i64> = (0..m).map(|i| (m + n - i) as i64).collect();
            let fd: Vec<i64> = (0..n).map(|j| (n - j) as i64).collect();
            (
                Shape { delta: n, eps: m },
                Form::diagonal(vec![-Q::one(); n], vec![Q::one(); m]),
                fd,
                fe,
            )
        }
        Family::SpoEven { n, m } | Family::SpoOdd { n, m } => {
            if n == 0 || m == 0 {
                return unsupported("ranks must be positive");
            }
            let fd: Vec<i64> = (0..n).map(|i| (n + m - i) as i64).collect();
            let fe: Vec<i64> = (0..m).map(|j| (m - j) as i64).collect();
            (
                Shape { delta: n, eps: m },
                Form::diagonal(vec![Q::one(); n], vec![-Q::one(); m]),
                fd,
                fe,
            )
        }
        Family::D21 { zeta } => {
            if zeta.is_zero() {
                return unsupported("zeta must be nonzero");
            }
            if zeta == -Q::one() {
                return unsupported("zeta = -1 makes the form degenerate");
            }
            (
                Shape { delta: 1, eps: 2 },
                Form::diagonal(vec![-(Q::one() + zeta)], vec![Q::one(), zeta]),
                vec![4],
                vec![1, 2],
            )
        }
        Family::G3 => (
            Shape { delta: 1, eps: 2 },
            Form {
                delta: vec![vec![q(2)]],
                eps: vec![vec![q(-2), q(1)], vec![q(1), q(-2)]],
            },
            vec![4],
            vec![1, 2],
        ),
        Family::F31 => (
            Shape { delta: 1, eps: 3 },
            Form::diagonal(vec![q(-3)], vec![Q::one(); 3]),
            vec![8],
            vec![3, 2, 1],
        ),
    };
    debug_assert_eq!(form.shape(), shape);

    let mut roots = root_list(family, shape);
    roots.sort();
    roots.dedup();

    let height = |w: &Weight| -> Q {
        let d: Q = w
            .delta
            .iter()
            .zip(&funct_delta)
            .map(|(x, f)| x * q(*f))
            .sum();
        let e: Q = w.eps.iter().zip(&funct_eps).map(|(x, f)| x * q(*f)).sum();
        d + e
    };
    let positive: Vec<Root> = roots
        .iter()
        .filter(|r| height(&r.weight).is_positive())
        .cloned()
        .collect();
    let pos_even: Vec<&Root> = positive.iter().filter(|r| !r.is_odd()).collect();
    let even_simple: Vec<Root> = pos_even
        .iter()
        .filter(|r| {
            !pos_even.iter().any(|a| {
                let rest = Root::even(&r.weight - &a.weight);
                pos_even.iter().any(|b| **b == rest)
            })
        })
        .map(|r| (*r).clone())
        .collect();

    Ok(RootDatum {
        family: family.clone(),
        shape,
        roots,
        positive,
        even_simple,
        form,
    })
}

fn root_list(family: &Family, shape: Shape) -> Vec<Root> {
    let e = |i: usize| Weight::eps_unit(shape, i);
    let d = |i: usize| Weight::delta_unit(shape, i);
    let mut out = Vec::new();
    let pm = |out: &mut Vec<Root>, w: Weight, odd: bool| {
        let mk = if odd { Root::odd } else { Root::even };
        out.push(mk(-&w));
        out.push(mk(w));
    };
    match *family {
        Family::Pe { n } => {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        out.push(Root::even(&e(i) - &e(j)));
                    }
                    if i <= j {
                        out.push(Root::odd(&e(i) + &e(j)));
                    }
                    if i < j {
                        out.push(Root::odd(-(&e(i) + &e(j))));
                    }
                }
            }
        }
        Family::Q { n } => {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        out.push(Root::even(&e(i) - &e(j)));
                        out.push(Root::odd(&e(i) - &e(j)));
                    }
                }
            }
        }
        Family::Gl { m, n } => {
            for i in 0..m {
                for j in (i + 1)..m {
                    pm(&mut out, &e(i) - &e(j), false);
                }
                for j in 0..n {
                    pm(&mut out, &e(i) - &d(j), true);
                }
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    pm(&mut out, &d(i) - &d(j), false);
                }
            }
        }
        Family::SpoEven { n, m } | Family::SpoOdd { n, m } => {
            let odd_eps = matches!(family, Family::SpoOdd { .. });
            for i in 0..n {
                for j in (i + 1)..n {
                    pm(&mut out, &d(i) - &d(j), false);
                    pm(&mut out, &d(i) + &d(j), false);
                }
                pm(&mut out, d(i).scale(q(2)), false);
                for j in 0..m {
                    pm(&mut out, &d(i) - &e(j), true);
                    pm(&mut out, &d(i) + &e(j), true);
                }
                if odd_eps {
                    pm(&mut out, d(i), true);
                }
            }
            for i in 0..m {
                for j in (i + 1)..m {
                    pm(&mut out, &e(i) - &e(j), false);
                    pm(&mut out, &e(i) + &e(j), false);
                }
                if odd_eps {
                    pm(&mut out, e(i), false);
                }
            }
        }
        Family::D21 { .. } => {
            pm(&mut out, d(0).scale(q(2)), false);
            pm(&mut out, e(0).scale(q(2)), false);
            pm(&mut out, e(1).scale(q(2)), false);
            for s1 in [1, -1] {
                for s2 in [1, -1] {
                    pm(
                        &mut out,
                        &(&d(0) + &e(0).scale(q(s1))) + &e(1).scale(q(s2)),
                        true,
                    );
                }
            }
        }
        Family::G3 => {
            // ε3 = −ε1 − ε2
            let e3 = -(&e(0) + &e(1));
            let es = [e(0), e(1), e3];
            pm(&mut out, d(0).scale(q(2)), false);
            pm(&mut out, d(0), true);
            for (i, ei) in es.iter().enumerate() {
                pm(&mut out, ei.clone(), false);
                pm(&mut out, &d(0) + ei, true);
                pm(&mut out, &d(0) - ei, true);
                for ej in es.iter().skip(i + 1) {
                    pm(&mut out, ei - ej, false);
                }
            }
        }
        Family::F31 => {
            pm(&mut out, d(0), false);
            for i in 0..3 {
                pm(&mut out, e(i), false);
                for j in (i + 1)..3 {
                    pm(&mut out, &e(i) - &e(j), false);
                    pm(&mut out, &e(i) + &e(j), false);
                }
            }
            let half = qr(1, 2);
            for s1 in [1, -1] {
                for s2 in [1, -1] {
                    for s3 in [1, -1] {
                        let w = Weight::new(vec![Q::one()], vec![q(s1), q(s2), q(s3)]);
                        pm(&mut out, w.scale(half), true);
                    }
                }
            }
        }
    }
    out
}

/// `½ (Σ even roots − Σ odd roots)` over the given roots.
pub fn rho_signed(shape: Shape, roots: &[Root]) -> Weight {
    let mut acc = Weight::zero(shape);
    for r in roots {
        acc = if r.is_odd() {
            &acc - &r.weight
        } else {
            &acc + &r.weight
        };
    }
    acc.scale(qr(1, 2))
}

/// Plain sum of a set of odd roots.
pub fn odd_sum(shape: Shape, roots: &[Root]) -> Result<Weight> {
    let mut acc = Weight::zero(shape);
    for r in roots {
        if !r.is_odd() {
            return Err(Error::EvenRoot(r.to_string()));
        }
        acc = &acc + &r.weight;
    }
    Ok(acc)
}

/// Signed permutation of one coordinate block: coordinate `i` is sent to
/// position `image[i]`, negated when `negate[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    image: Vec<usize>,
    negate: Vec<bool>,
}

impl SignedPerm {
    pub fn new(image: Vec<usize>, negate: Vec<bool>) -> Result<SignedPerm> {
        let k = image.len();
        if negate.len() != k {
            return Err(Error::InvalidPermutation(format!(
                "{} images but {} signs",
                k,
                negate.len()
            )));
        }
        let mut seen = vec![false; k];
        for &i in &image {
            if i >= k || seen[i] {
                return Err(Error::InvalidPermutation(format!("{image:?}")));
            }
            seen[i] = true;
        }
        Ok(SignedPerm { image, negate })
    }

    pub fn identity(k: usize) -> SignedPerm {
        SignedPerm {
            image: (0..k).collect(),
            negate: vec![false; k],
        }
    }

    pub fn reversal(k: usize) -> SignedPerm {
        SignedPerm::blockwise_reversal(&[k])
    }

    /// Reverses each consecutive run of the given sizes.
    pub fn blockwise_reversal(sizes: &[usize]) -> SignedPerm {
        let mut image = Vec::new();
        let mut start = 0;
        for &s in sizes {
            image.extend((start..start + s).rev());
            start += s;
        }
        SignedPerm {
            negate: vec![false; image.len()],
            image,
        }
    }

    /// `x ↦ −x` on every coordinate except those listed in `keep`.
    pub fn negation(k: usize, keep: &[usize]) -> SignedPerm {
        SignedPerm {
            image: (0..k).collect(),
            negate: (0..k).map(|i| !keep.contains(&i)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    fn apply(&self, xs: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); xs.len()];
        for (i, x) in xs.iter().enumerate() {
            out[self.image[i]] = if self.negate[i] { -*x } else { *x };
        }
        out
    }
}

/// Weyl group element acting blockwise by signed permutations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub delta: SignedPerm,
    pub eps: SignedPerm,
}

impl WeylElement {
    pub fn identity(shape: Shape) -> WeylElement {
        WeylElement {
            delta: SignedPerm::identity(shape.delta),
            eps: SignedPerm::identity(shape.eps),
        }
    }

    /// Eps-only element reversing each run of the given sizes.
    pub fn blockwise_reversal(sizes: &[usize]) -> WeylElement {
        WeylElement {
            delta: SignedPerm::identity(0),
            eps: SignedPerm::blockwise_reversal(sizes),
        }
    }

    pub fn shape(&self) -> Shape {
        Shape {
            delta: self.delta.len(),
            eps: self.eps.len(),
        }
    }
}

/// Applies a Weyl group element to a weight.
pub fn weyl_apply(w: &WeylElement, lambda: &Weight) -> Result<Weight> {
    if w.shape() != lambda.shape() {
        return Err(Error::DimensionMismatch {
            expected: w.shape().to_string(),
            found: lambda.shape().to_string(),
        });
    }
    Ok(Weight::new(
        w.delta.apply(&lambda.delta),
        w.eps.apply(&lambda.eps),
    ))
}

/// The longest element of the Weyl group of the datum.
pub fn longest_element(datum: &RootDatum) -> WeylElement {
    let s = datum.shape();
    match *datum.family() {
        Family::Pe { n } | Family::Q { n } => WeylElement {
            delta: SignedPerm::identity(0),
            eps: SignedPerm::reversal(n),
        },
        Family::Gl { m, n } => WeylElement {
            delta: SignedPerm::reversal(n),
            eps: SignedPerm::reversal(m),
        },
        Family::SpoEven { n, m } => {
            // type D_m with m odd: w0 = −1 composed with the diagram flip
            let keep: Vec<usize> = if m % 2 == 1 { vec![m - 1] } else { vec![] };
            WeylElement {
                delta: SignedPerm::negation(n, &[]),
                eps: SignedPerm::negation(m, &keep),
            }
        }
        Family::SpoOdd { .. } | Family::D21 { .. } | Family::G3 | Family::F31 => WeylElement {
            delta: SignedPerm::negation(s.delta, &[]),
            eps: SignedPerm::negation(s.eps, &[]),
        },
    }
}

/// True iff `(λ, α∨) ∉ {0, 1, 2, …}` for every even simple root `α`.
///
/// Errors if `(λ, α∨)` is non-integral for some even root.
pub fn is_antidominant(datum: &RootDatum, lambda: &Weight) -> Result<bool> {
    for r in datum.even_roots() {
        let c = datum.coroot_pairing(lambda, r)?;
        if !c.is_integer() {
            return Err(Error::NonIntegral(format!(
                "({lambda}, ({})^v) = {}",
                r.weight,
                fmt_q(&c)
            )));
        }
    }
    for a in datum.even_simple() {
        if !datum.coroot_pairing(lambda, a)?.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Highest weight after the odd reflection through an isotropic odd root `γ`.
pub fn odd_reflection(lambda: &Weight, gamma: &Root, datum: &RootDatum) -> Result<Weight> {
    if let Family::Pe { .. } = datum.family() {
        return Err(Error::NotApplicable(
            "pe(n) uses the tilting reflection rule".into(),
        ));
    }
    if !gamma.is_odd() {
        return Err(Error::EvenRoot(gamma.to_string()));
    }
    if !datum.contains(gamma) {
        return Err(Error::NotARoot(gamma.to_string()));
    }
    if !datum.pair(&gamma.weight, &gamma.weight)?.is_zero() {
        return Err(Error::NotIsotropic(gamma.to_string()));
    }
    if datum.pair(lambda, &gamma.weight)?.is_zero() {
        Ok(lambda.clone())
    } else {
        Ok(lambda - &gamma.weight)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pe(n: usize) -> RootDatum {
        build_root_datum(&Family::Pe { n }).unwrap()
    }

    fn spo(n: usize, m: usize) -> RootDatum {
        build_root_datum(&Family::SpoEven { n, m }).unwrap()
    }

    fn w(xs: &[i64]) -> Weight {
        Weight::from_ints(xs)
    }

    #[test]
    fn pe_root_counts() {
        for n in 1..=6 {
            let d = pe(n);
            assert_eq!(d.roots().len(), 2 * n * n - n);
            assert_eq!(d.even_roots().count(), n * (n - 1));
            assert_eq!(d.odd_roots().count(), n * n);
        }
    }

    #[test]
    fn pe2_exact_roots() {
        let mut expect = [
            Root::even(w(&[1, -1])),
            Root::even(w(&[-1, 1])),
            Root::odd(w(&[2, 0])),
            Root::odd(w(&[0, 2])),
            Root::odd(w(&[1, 1])),
            Root::odd(w(&[-1, -1])),
        ];
        expect.sort();
        assert_eq!(pe(2).roots(), &expect[..]);
        assert_eq!(pe(1).roots(), &[Root::odd(w(&[2]))]);
    }

    #[test]
    fn pe_odd_roots_not_negation_closed() {
        let d = pe(3);
        let r = Root::odd(w(&[0, 2, 0]));
        assert!(d.contains(&r));
        assert!(!d.contains(&r.neg()));
    }

    #[test]
    fn other_families_negation_closed() {
        let fams = [
            Family::Gl { m: 2, n: 3 },
            Family::Q { n: 3 },
            Family::SpoEven { n: 2, m: 3 },
            Family::SpoOdd { n: 2, m: 2 },
            Family::D21 { zeta: qr(2, 3) },
            Family::G3,
            Family::F31,
        ];
        for f in fams {
            let d = build_root_datum(&f).unwrap();
            for r in d.roots() {
                assert!(d.contains(&r.neg()), "{f}: {r}");
            }
            assert_eq!(d.positive().len() * 2, d.roots().len(), "{f}");
        }
    }

    #[test]
    fn family_root_counts() {
        let count = |f: Family| {
            let d = build_root_datum(&f).unwrap();
            (d.even_roots().count(), d.odd_roots().count())
        };
        assert_eq!(count(Family::Gl { m: 2, n: 1 }), (2, 4));
        assert_eq!(count(Family::SpoEven { n: 2, m: 2 }), (8 + 4, 16));
        assert_eq!(count(Family::SpoOdd { n: 1, m: 1 }), (2 + 2, 4 + 2));
        assert_eq!(count(Family::D21 { zeta: q(1) }), (6, 8));
        assert_eq!(count(Family::G3), (14, 14));
        assert_eq!(count(Family::F31), (20, 16));
    }

    #[test]
    fn exceptional_odd_roots_isotropic() {
        for f in [Family::D21 { zeta: qr(-3, 7) }, Family::F31, Family::G3] {
            let d = build_root_datum(&f).unwrap();
            for r in d.odd_roots() {
                let v = d.pair(&r.weight, &r.weight).unwrap();
                let nonisotropic_ok =
                    matches!(f, Family::G3) && r.weight.eps().iter().all(Zero::is_zero);
                assert!(v.is_zero() || nonisotropic_ok, "{f}: {r}");
            }
        }
    }

    #[test]
    fn even_simple_systems() {
        let simple = |f: Family| {
            let mut v: Vec<Weight> = build_root_datum(&f)
                .unwrap()
                .even_simple()
                .iter()
                .map(|r| r.weight.clone())
                .collect();
            v.sort();
            v
        };
        let mut expect = vec![w(&[1, -1, 0]), w(&[0, 1, -1])];
        expect.sort();
        assert_eq!(simple(Family::Pe { n: 3 }), expect);

        let two = |d: &[i64], e: &[i64]| {
            Weight::new(
                d.iter().copied().map(q).collect(),
                e.iter().copied().map(q).collect(),
            )
        };
        let mut expect = vec![
            two(&[1, -1], &[0, 0]),
            two(&[0, 2], &[0, 0]),
            two(&[0, 0], &[1, -1]),
            two(&[0, 0], &[1, 1]),
        ];
        expect.sort();
        assert_eq!(simple(Family::SpoEven { n: 2, m: 2 }), expect);

        let mut expect = vec![two(&[2], &[0, 0]), two(&[0], &[-1, 1]), two(&[0], &[1, 0])];
        expect.sort();
        assert_eq!(simple(Family::G3), expect);
        assert_eq!(simple(Family::F31).len(), 4);
        assert_eq!(simple(Family::D21 { zeta: q(1) }).len(), 3);
        assert!(simple(Family::Gl { m: 1, n: 1 }).is_empty());
    }

    #[test]
    fn rejects_bad_families() {
        assert!(build_root_datum(&Family::Pe { n: 0 }).is_err());
        assert!(build_root_datum(&Family::D21 { zeta: q(0) }).is_err());
        assert!(build_root_datum(&Family::D21 { zeta: q(-1) }).is_err());
        assert!(build_root_datum(&Family::SpoEven { n: 1, m: 0 }).is_err());
    }

    #[test]
    fn pair_examples() {
        let d = pe(2);
        assert_eq!(d.pair(&w(&[1, 0]), &w(&[1, 0])).unwrap(), q(1));
        let s = spo(1, 1);
        let g = Weight::new(vec![q(1)], vec![q(-1)]);
        assert_eq!(s.pair(&g, &g).unwrap(), q(0));
        assert!(d.pair(&w(&[1]), &w(&[1, 0])).is_err());
    }

    #[test]
    fn rho_and_odd_sum_examples() {
        let s = Shape::eps_only(2);
        assert_eq!(
            rho_signed(s, &[Root::even(w(&[1, -1]))]),
            Weight::eps_only(vec![qr(1, 2), qr(-1, 2)])
        );
        assert_eq!(rho_signed(s, &[]), w(&[0, 0]));
        let odd = [
            Root::odd(w(&[2, 0])),
            Root::odd(w(&[1, 1])),
            Root::odd(w(&[0, 2])),
        ];
        assert_eq!(rho_signed(s, &odd), Weight::eps_only(vec![qr(-3, 2); 2]));
        let all: Vec<Root> = pe(2).odd_roots().cloned().collect();
        assert_eq!(odd_sum(s, &all).unwrap(), w(&[2, 2]));
        assert_eq!(
            odd_sum(s, &[Root::odd(w(&[-1, -1]))]).unwrap(),
            w(&[-1, -1])
        );
        assert!(odd_sum(s, &[Root::even(w(&[1, -1]))]).is_err());
    }

    #[test]
    fn weyl_examples() {
        let w0 = longest_element(&pe(3));
        assert_eq!(weyl_apply(&w0, &w(&[1, 2, 3])).unwrap(), w(&[3, 2, 1]));
        let id = WeylElement::identity(Shape::eps_only(3));
        assert_eq!(weyl_apply(&id, &w(&[1, 2, 3])).unwrap(), w(&[1, 2, 3]));
        let blocks = WeylElement::blockwise_reversal(&[2, 1]);
        assert_eq!(weyl_apply(&blocks, &w(&[1, 2, 3])).unwrap(), w(&[2, 1, 3]));
        assert!(SignedPerm::new(vec![0, 0], vec![false, false]).is_err());
        assert!(weyl_apply(&w0, &w(&[1])).is_err());
    }

    #[test]
    fn w0_maps_positive_to_negative() {
        let fams = [
            Family::Pe { n: 3 },
            Family::Gl { m: 2, n: 3 },
            Family::SpoEven { n: 2, m: 3 },
            Family::SpoEven { n: 2, m: 2 },
            Family::SpoEven { n: 1, m: 1 },
            Family::SpoOdd { n: 2, m: 2 },
            Family::G3,
            Family::F31,
        ];
        for f in fams {
            let d = build_root_datum(&f).unwrap();
            let w0 = longest_element(&d);
            for r in d.positive().iter().filter(|r| !r.is_odd()) {
                let img = Root::even(weyl_apply(&w0, &r.weight).unwrap());
                assert!(d.contains(&img), "{f}");
                assert!(!d.positive().contains(&img), "{f}: {r}");
            }
        }
    }

    #[test]
    fn antidominance_examples() {
        let d3 = pe(3);
        assert!(is_antidominant(&d3, &w(&[0, 1, 2])).unwrap());
        assert!(!is_antidominant(&pe(2), &w(&[0, 0])).unwrap());
        assert!(!is_antidominant(&pe(2), &w(&[1, 0])).unwrap());
        let half = Weight::eps_only(vec![qr(1, 2), q(0)]);
        assert!(matches!(
            is_antidominant(&pe(2), &half),
            Err(Error::NonIntegral(_))
        ));
        let gl = build_root_datum(&Family::Gl { m: 1, n: 1 }).unwrap();
        let any = Weight::new(vec![qr(1, 3)], vec![q(5)]);
        assert!(is_antidominant(&gl, &any).unwrap());
    }

    #[test]
    fn odd_reflection_examples() {
        let d = spo(1, 1);
        let gamma = Root::odd(Weight::new(vec![q(1)], vec![q(-1)]));
        let lam = Weight::new(vec![q(-2)], vec![q(5)]);
        assert_eq!(
            odd_reflection(&lam, &gamma, &d).unwrap(),
            Weight::new(vec![q(-3)], vec![q(6)])
        );
        let zero = Weight::zero(d.shape());
        assert_eq!(odd_reflection(&zero, &gamma, &d).unwrap(), zero);
        let even = Root::even(Weight::new(vec![q(2)], vec![q(0)]));
        assert!(matches!(
            odd_reflection(&zero, &even, &d),
            Err(Error::EvenRoot(_))
        ));
        let pe1 = pe(1);
        assert!(odd_reflection(&w(&[0]), &Root::odd(w(&[2])), &pe1).is_err());
        let so = build_root_datum(&Family::SpoOdd { n: 1, m: 1 }).unwrap();
        let nonisotropic = Root::odd(Weight::new(vec![q(1)], vec![q(0)]));
        assert!(matches!(
            odd_reflection(&Weight::zero(so.shape()), &nonisotropic, &so),
            Err(Error::NotIsotropic(_))
        ));
    }

    #[test]
    fn parsing() {
        assert_eq!(
            parse_q_list("1/2, -3,0").unwrap(),
            vec![qr(1, 2), q(-3), q(0)]
        );
        assert_eq!(parse_q_list("").unwrap(), vec![]);
        match parse_q_list("1,x,3") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_q("1/0").is_err());
    }

    #[test]
    fn weight_json() {
        let a = Weight::eps_only(vec![qr(1, 2), q(-3)]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"["1/2","-3"]"#);
        assert_eq!(serde_json::from_str::<Weight>(&s).unwrap(), a);
        let b = Weight::new(vec![q(1)], vec![q(2)]);
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, r#"{"delta":["1"],"eps":["2"]}"#);
        assert_eq!(serde_json::from_str::<Weight>(&s).unwrap(), b);
        assert_eq!(
            serde_json::from_str::<Weight>("[1,-2]").unwrap(),
            w(&[1, -2])
        );
    }

    fn small_q() -> impl Strategy<Value = Q> {
        (-6i64..=6, 1i64..=4).prop_map(|(a, b)| Q::new(a, b))
    }

    fn spo_weight() -> impl Strategy<Value = Weight> {
        (
            prop::collection::vec(small_q(), 2),
            prop::collection::vec(small_q(), 2),
        )
            .prop_map(|(d, e)| Weight::new(d, e))
    }

    proptest! {
        #[test]
        fn form_symmetric_bilinear(a in spo_weight(), b in spo_weight(), c in spo_weight(), t in small_q()) {
            for f in [Family::SpoEven { n: 2, m: 2 }, Family::SpoOdd { n: 2, m: 2 }] {
                let d = build_root_datum(&f).unwrap();
                prop_assert_eq!(d.pair(&a, &b).unwrap(), d.pair(&b, &a).unwrap());
                let lhs = d.pair(&(&a.scale(t) + &b), &c).unwrap();
                let rhs = t * d.pair(&a, &c).unwrap() + d.pair(&b, &c).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn w0_involutive_and_isometric(a in spo_weight(), b in spo_weight()) {
            for f in [Family::SpoEven { n: 2, m: 2 }, Family::SpoOdd { n: 2, m: 2 }, Family::Gl { m: 2, n: 2 }] {
                let d = build_root_datum(&f).unwrap();
                let w0 = longest_element(&d);
                let wa = weyl_apply(&w0, &a).unwrap();
                prop_assert_eq!(&weyl_apply(&w0, &wa).unwrap(), &a);
                let wb = weyl_apply(&w0, &b).unwrap();
                prop_assert_eq!(d.pair(&wa, &wb).unwrap(), d.pair(&a, &b).unwrap());
            }
        }

        #[test]
        fn rho_additive(mask in prop::collection::vec(any::<bool>(), 15)) {
            let d = pe(3);
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (r, m) in d.roots().iter().zip(&mask) {
                if *m { a.push(r.clone()) } else { b.push(r.clone()) }
            }
            let s = d.shape();
            prop_assert_eq!(rho_signed(s, d.roots()), &rho_signed(s, &a) + &rho_signed(s, &b));
        }

        #[test]
        fn odd_reflection_round_trip(a in spo_weight()) {
            let d = spo(2, 2);
            for g in d.odd_roots() {
                let once = odd_reflection(&a, g, &d).unwrap();
                let back = odd_reflection(&once, &g.neg(), &d).unwrap();
                if !d.pair(&a, &g.weight).unwrap().is_zero() {
                    prop_assert_eq!(&back, &a);
                }
            }
        }

        #[test]
        fn pe_antidominance_is_strict_increase(xs in prop::collection::vec(-5i64..=5, 1..=5)) {
            let d = pe(xs.len());
            let inc = xs.windows(2).all(|p| p[0] < p[1]);
            prop_assert_eq!(is_antidominant(&d, &w(&xs)).unwrap(), inc);
        }
    }
}
