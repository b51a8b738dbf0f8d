//! Slopes, lens spaces and negative continued fractions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};

/// A reduced element of `Q ∪ {∞}`, i.e. a vertex of the Farey graph.
///
/// The denominator is never negative and `∞` is stored as `1/0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    num: i64,
    den: i64,
}

impl Slope {
    pub const INFINITY: Slope = Slope { num: 1, den: 0 };
    pub const ZERO: Slope = Slope { num: 0, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if num == 0 && den == 0 {
            return Err(invalid("0/0 is not a slope"));
        }
        if den == 0 {
            return Ok(Self::INFINITY);
        }
        let g = num.gcd(&den);
        let sign = den.signum();
        Ok(Slope {
            num: sign * num / g,
            den: sign * den / g,
        })
    }

    pub const fn integer(n: i64) -> Self {
        Slope { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    /// `-p/q` for a lens space with `p ≥ 2`.
    pub fn lens_endpoint(lens: &LensSpace) -> Self {
        Slope::new(-lens.p(), lens.q()).expect("p >= 1")
    }

    /// Componentwise `self + k·other`, re-normalised to a slope.
    pub(crate) fn fan_step(base: (i64, i64), k: i64, dir: (i64, i64)) -> Self {
        let num = base.0 + k * dir.0;
        let den = base.1 + k * dir.1;
        Slope::new(num, den).expect("fan vectors are primitive")
    }

    /// Order on the real line extended by `∞` as the largest element.
    pub(crate) fn cmp_extended(&self, other: &Slope) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => {
                let lhs = self.num as i128 * other.den as i128;
                let rhs = other.num as i128 * self.den as i128;
                lhs.cmp(&rhs)
            }
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Slope::INFINITY);
        }
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| invalid(format!("malformed slope {s:?}")))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let den = parse(d)?;
                if den == 0 {
                    return Err(invalid(format!("malformed slope {s:?}: write inf for 1/0")));
                }
                Slope::new(parse(n)?, den)
            }
            None => Ok(Slope::integer(parse(s)?)),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Inverse of `a` modulo `m` (`m ≥ 1`), or `None` when `gcd(a, m) ≠ 1`.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    assert!(m >= 1, "modulus must be positive");
    if m == 1 {
        return Some(0);
    }
    let ext = a.rem_euclid(m).extended_gcd(&m);
    (ext.gcd == 1).then(|| ext.x.rem_euclid(m))
}

/// The lens space `L(p, q)` in normalised form `0 ≤ q < p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LensSpace {
    p: i64,
    q: i64,
}

impl LensSpace {
    /// Reduces `q` modulo `p`. Fails unless `p ≥ 1` and `gcd(p, q) = 1`.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 1 {
            return Err(invalid(format!("L({p},{q}): p must be at least 1")));
        }
        let q = q.rem_euclid(p);
        if p == 1 {
            return Ok(LensSpace { p: 1, q: 0 });
        }
        let g = p.gcd(&q);
        if g != 1 {
            return Err(invalid(format!("L({p},{q}): gcd(p,q) = {g}, not a lens space")));
        }
        Ok(LensSpace { p, q })
    }

    pub const fn sphere() -> Self {
        LensSpace { p: 1, q: 0 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_sphere(&self) -> bool {
        self.p == 1
    }

    /// `-L(p,q) = L(p, p-q)`.
    pub fn reverse(&self) -> Self {
        if self.p == 1 {
            return *self;
        }
        LensSpace {
            p: self.p,
            q: self.p - self.q,
        }
    }

    /// `q⁻¹ mod p`; the sphere maps to itself.
    pub fn q_inverse(&self) -> i64 {
        mod_inverse(self.q, self.p).expect("q is a unit mod p")
    }

    /// The orientation-preserving representatives `{q, q⁻¹ mod p}`, ascending
    /// and without duplicates.
    pub fn oriented_representatives(&self) -> Vec<i64> {
        let mut reps = vec![self.q, self.q_inverse()];
        reps.sort_unstable();
        reps.dedup();
        reps
    }

    /// Canonical member `L(p, min{q, q⁻¹})` of the oriented homeomorphism class.
    pub fn canonical(&self) -> Self {
        LensSpace {
            p: self.p,
            q: self.q.min(self.q_inverse()),
        }
    }

    /// Orientation-preserving homeomorphism: `p₁ = p₂` and `q₂ ≡ q₁^{±1}`.
    pub fn oriented_homeo(&self, other: &LensSpace) -> bool {
        self.p == other.p && self.canonical().q == other.canonical().q
    }

    /// `L ≅ -L` preserving orientation, i.e. `q² ≡ -1 (mod p)` or `p ≤ 2`.
    pub fn is_amphichiral(&self) -> bool {
        self.oriented_homeo(&self.reverse())
    }

    pub fn neg_cf(&self) -> Result<NegCF> {
        NegCF::expand(self.p, self.q)
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.p, self.q)
    }
}

impl FromStr for LensSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s
            .trim()
            .split_once(',')
            .ok_or_else(|| invalid(format!("malformed lens token {s:?}, expected p,q")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| invalid(format!("malformed lens token {s:?}, expected p,q")))
        };
        LensSpace::new(parse(p)?, parse(q)?)
    }
}

/// Expansion `-p/q = a₁ - 1/(a₂ - 1/(⋯ - 1/aₙ))` with every `aᵢ ≤ -2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NegCF {
    coeffs: Vec<i64>,
}

impl NegCF {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(invalid("continued fraction must be non-empty"));
        }
        if let Some(bad) = coeffs.iter().find(|&&a| a > -2) {
            return Err(invalid(format!("continued fraction entry {bad} exceeds -2")));
        }
        Ok(NegCF { coeffs })
    }

    /// Expands `-p/q` for coprime `0 < q < p`.
    pub fn expand(p: i64, q: i64) -> Result<Self> {
        if p < 2 || q <= 0 || q >= p {
            return Err(invalid(format!("neg_cf({p},{q}): need 0 < q < p")));
        }
        if p.gcd(&q) != 1 {
            return Err(invalid(format!("neg_cf({p},{q}): p and q are not coprime")));
        }
        let (mut num, mut den) = (p, q);
        let mut coeffs = Vec::new();
        while den > 0 {
            // num/den = c - den'/den with c = ceil(num/den)
            let c = (num + den - 1) / den;
            coeffs.push(-c);
            let rest = c * den - num;
            num = den;
            den = rest;
        }
        Ok(NegCF { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Evaluates to `(p, q)` with `-p/q` the value of the expansion.
    pub fn eval(&self) -> (i64, i64) {
        let mut iter = self.coeffs.iter().rev();
        let last = -iter.next().expect("non-empty");
        let (mut num, mut den) = (last, 1);
        for &a in iter {
            // -a - 1/(num/den) = (-a·num - den)/num
            let next = -a * num - den;
            den = num;
            num = next;
        }
        (num, den)
    }
}

impl fmt::Display for NegCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// A connected sum of lens spaces, kept sorted. `S³` summands are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ConnectedSum {
    summands: Vec<LensSpace>,
}

impl ConnectedSum {
    pub fn new(summands: impl IntoIterator<Item = LensSpace>) -> Self {
        let mut summands: Vec<_> = summands.into_iter().filter(|l| !l.is_sphere()).collect();
        summands.sort_unstable();
        ConnectedSum { summands }
    }

    pub fn summands(&self) -> &[LensSpace] {
        &self.summands
    }

    pub fn is_sphere(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn reverse(&self) -> Self {
        ConnectedSum::new(self.summands.iter().map(LensSpace::reverse))
    }
}

impl fmt::Display for ConnectedSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "{}", LensSpace::sphere());
        }
        for (i, l) in self.summands.iter().enumerate() {
            if i > 0 {
                write!(f, "#")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for ConnectedSum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s.split('#').map(str::parse::<LensSpace>).collect::<Result<Vec<_>>>()?;
        Ok(ConnectedSum::new(parts))
    }
}
