//! Decision procedures: Lisca's rational-homology-ball filling criterion for
//! `(L(p,q), ξ_std)`, non-fillability of `L(p,q) # L(p,p-q)`, and the smooth
//! embedding criteria for lens spaces and their connected sums.
//!
//! Every decision returns a [`Verdict`] carrying its witnesses, the searched
//! bounds and a replayable derivation.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::homology::{h1_of_lens_sum, hantzsche_double_test};
use crate::rational::{ConnectedSum, LensSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
        })
    }
}

/// The cited result a derivation step relies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Lens space normalisation and the oriented classification
    /// `L(p,q) ≅ L(p,q')` iff `q' ≡ q^{±1}`.
    Classification,
    /// `-L(p,q) = L(p,p-q)`.
    OrientationReversal,
    /// Lisca: `(L(p,q), ξ_std)` has a symplectic rational ball filling iff
    /// `(p,q) = (m², mh-1)` with `gcd(m,h) = 1`.
    Lisca,
    /// Menke's splitting reduces a rational ball filling of a sum to fillings
    /// of the universally tight summands.
    SumSplitting,
    /// Fintushel-Stern and Gilmer-Livingston: `L(p,q) # L(p,q')` embeds in
    /// `S⁴` iff `L(p,q') = -L(p,q)` and `p` is odd.
    FintushelSternGilmerLivingston,
    /// Donald: a sum of lens spaces embeds in `R⁴` iff it is `Y # -Y`.
    Donald,
    /// Epstein-Zeeman: `L(p,q) \ B³` embeds in `R⁴` iff `p` is odd.
    EpsteinZeeman,
    /// Hantzsche: torsion of `H₁` of a 3-manifold in `S⁴` is `G ⊕ G`.
    Hantzsche,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: Rule,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    #[serde(with = "string_ints")]
    pub values: Vec<i64>,
}

impl Witness {
    pub fn new(name: &str, values: impl Into<Vec<i64>>) -> Self {
        Witness {
            name: name.to_string(),
            values: values.into(),
        }
    }
}

mod string_ints {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[i64], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<i64>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| t.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// A decision together with how it was reached.
///
/// A `yes` carries at least one witness; a `no` records the bounds of the
/// exhausted search in `bounds`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub answer: Answer,
    pub bounds: Vec<String>,
    pub derivation: Vec<Step>,
    pub witnesses: Vec<Witness>,
}

impl Verdict {
    fn new(answer: Answer) -> Self {
        Verdict {
            answer,
            bounds: Vec::new(),
            derivation: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    fn step(&mut self, rule: Rule, text: impl Into<String>) {
        self.derivation.push(Step {
            rule,
            text: text.into(),
        });
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    /// Yes-verdicts have a witness, no-verdicts an exhaustiveness bound.
    pub fn is_well_formed(&self) -> bool {
        match self.answer {
            Answer::Yes => !self.witnesses.is_empty(),
            Answer::No => !self.bounds.is_empty(),
        }
    }

    pub fn mentions(&self, needle: &str) -> bool {
        self.derivation.iter().any(|s| s.text.contains(needle))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.answer)?;
        for w in &self.witnesses {
            let vals: Vec<String> = w.values.iter().map(ToString::to_string).collect();
            write!(f, " {}=({})", w.name, vals.join(","))?;
        }
        Ok(())
    }
}

/// `(m, h, q')` with `p = m²`, `q' = mh - 1`, `gcd(m, h) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiscaWitness {
    pub m: i64,
    pub h: i64,
    pub q_rep: i64,
}

/// The exact square root of `p` if it is `m²` with `m ≥ 2`.
fn square_root(p: i64) -> Option<i64> {
    let m = p.sqrt();
    (m >= 2 && m * m == p).then_some(m)
}

/// Allocation-free core of [`lisca_qhb_filling`].
pub fn lisca_witness(lens: &LensSpace) -> Option<LiscaWitness> {
    let m = square_root(lens.p())?;
    let (q, q_inv) = (lens.q(), lens.q_inverse());
    [q, q_inv].into_iter().find_map(|q_rep| {
        let (h, r) = (q_rep + 1).div_rem(&m);
        (r == 0 && h >= 1 && m.gcd(&h) == 1).then_some(LiscaWitness { m, h, q_rep })
    })
}

/// Whether `(L(p,q), ξ_std)` admits a symplectic rational homology ball
/// filling. Matching runs over the orientation-preserving representatives
/// `{q, q⁻¹ mod p}` only.
pub fn lisca_qhb_filling(lens: &LensSpace) -> Result<Verdict> {
    if lens.p() < 2 {
        return Err(invalid(format!("L({lens}): need p >= 2")));
    }
    let p = lens.p();
    let reps = lens.oriented_representatives();
    let m_max = p.sqrt();
    let found = lisca_witness(lens);

    let mut v = Verdict::new(Answer::from_bool(found.is_some()));
    v.bounds.push(format!("m in 2..={m_max}"));
    let reps_text: Vec<String> = reps.iter().map(ToString::to_string).collect();
    v.step(
        Rule::Classification,
        format!(
            "orientation-preserving representatives of L({lens}): q' in {{{}}}",
            reps_text.join(",")
        ),
    );

    let Some(m) = square_root(p) else {
        v.step(Rule::Lisca, format!("p = {p} is not m^2 for any m in 2..={m_max}"));
        return Ok(v);
    };
    let h_max = (p + m - 1) / m;
    v.bounds.push(format!("h in 1..={h_max}"));
    v.step(Rule::Lisca, format!("p = {p} = {m}^2, so m = {m}"));
    for &q_rep in &reps {
        let (h, r) = (q_rep + 1).div_rem(&m);
        if r != 0 {
            v.step(
                Rule::Lisca,
                format!(
                    "q' = {q_rep}: q'+1 = {} is not divisible by {m}, so q' != {m}h - 1",
                    q_rep + 1
                ),
            );
        } else if m.gcd(&h) != 1 {
            v.step(
                Rule::Lisca,
                format!(
                    "q' = {q_rep} = {m}k - 1 forces k = {h}, which is not coprime to {m} (gcd = {})",
                    m.gcd(&h)
                ),
            );
        } else {
            v.step(Rule::Lisca, format!("q' = {q_rep} = {m}*{h} - 1 with gcd({m},{h}) = 1"));
        }
    }
    if let Some(w) = found {
        v.witnesses.push(Witness::new("m,h,q'", [w.m, w.h, w.q_rep]));
    }
    Ok(v)
}

fn sum_summands(p: i64, q: i64) -> Result<(LensSpace, LensSpace)> {
    if p < 2 {
        return Err(invalid(format!("sum-qhb {p} {q}: need p >= 2")));
    }
    if p.gcd(&q) != 1 {
        return Err(invalid(format!("sum-qhb {p} {q}: p and q are not coprime")));
    }
    let l = LensSpace::new(p, q)?;
    Ok((l, l.reverse()))
}

/// Allocation-free core of [`sum_qhb_filling`]: whether both summands pass
/// Lisca's criterion.
pub fn sum_qhb_decide(p: i64, q: i64) -> Result<bool> {
    let (l, r) = sum_summands(p, q)?;
    Ok(lisca_witness(&l).is_some() && lisca_witness(&r).is_some())
}

/// Whether some contact structure on `L(p,q) # L(p,p-q)` has a symplectic
/// rational homology ball filling.
pub fn sum_qhb_filling(p: i64, q: i64) -> Result<Verdict> {
    let (l, r) = sum_summands(p, q)?;
    let left = lisca_qhb_filling(&l)?;
    let right = lisca_qhb_filling(&r)?;

    let mut v = Verdict::new(Answer::from_bool(left.is_yes() && right.is_yes()));
    v.step(
        Rule::OrientationReversal,
        format!("summands L({l}) and L({r}) = -L({l})"),
    );
    v.step(
        Rule::SumSplitting,
        format!(
            "a rational ball filling of L({l}) # L({r}) splits into rational ball fillings of both \
             summands with their universally tight structures"
        ),
    );
    if square_root(p).is_some() {
        v.step(
            Rule::Lisca,
            "both summands need q' = mh - 1 and (p - q'') = mk - 1 with m^2 = p; since q'q'' = 1 mod m \
             this forces m | 2, so only m = 2, p = 4 remains",
        );
    }
    for (lens, sub) in [(l, &left), (r, &right)] {
        for s in &sub.derivation {
            v.derivation.push(Step {
                rule: s.rule,
                text: format!("L({lens}): {}", s.text),
            });
        }
        v.step(Rule::Lisca, format!("L({lens}): {}", sub.answer));
        v.bounds.extend(sub.bounds.iter().map(|b| format!("L({lens}): {b}")));
        v.witnesses.extend(
            sub.witnesses
                .iter()
                .map(|w| Witness::new(&format!("L({lens}) {}", w.name), w.values.clone())),
        );
    }
    let failing: Vec<String> = [(l, &left), (r, &right)]
        .iter()
        .filter(|(_, s)| !s.is_yes())
        .map(|(x, _)| format!("L({x})"))
        .collect();
    if !failing.is_empty() {
        v.step(
            Rule::SumSplitting,
            format!("no filling: {} has no rational ball filling", failing.join(" and ")),
        );
    }
    if !v.is_yes() {
        v.witnesses.clear();
    }
    Ok(v)
}

/// Whether `L1 # L2` embeds smoothly in `S⁴`.
pub fn embeds_s4_pair(l1: &LensSpace, l2: &LensSpace) -> Result<Verdict> {
    if l1.p() < 2 || l2.p() < 2 {
        return Err(invalid(format!("embed-s4 {l1} {l2}: need p >= 2 for both summands")));
    }
    let same_p = l1.p() == l2.p();
    let odd = l1.p() % 2 == 1;
    let reversed = l2.oriented_homeo(&l1.reverse());
    let mut v = Verdict::new(Answer::from_bool(same_p && odd && reversed));
    v.bounds.push("closed criterion, no search".into());
    v.step(
        Rule::FintushelSternGilmerLivingston,
        format!("L({l1}) # L({l2}) embeds in S^4 iff L({l2}) = -L({l1}) and p is odd"),
    );
    if !same_p {
        v.step(Rule::Hantzsche, format!("p differ ({} vs {})", l1.p(), l2.p()));
    } else {
        v.step(
            Rule::Classification,
            format!(
                "-L({l1}) = L({}); L({l2}) {} L({})",
                l1.reverse(),
                if reversed { "≅" } else { "≇" },
                l1.reverse()
            ),
        );
        v.step(
            Rule::FintushelSternGilmerLivingston,
            format!("p = {} is {}", l1.p(), if odd { "odd" } else { "even" }),
        );
    }
    if v.is_yes() {
        v.witnesses.push(Witness::new("Y", [l1.p(), l1.q()]));
    }
    Ok(v)
}

/// Whether the sum is `Y # -Y`: oriented classes pair off with their
/// reverses, amphichiral classes occurring an even number of times. With
/// `strict_odd` every `p` must additionally be odd.
pub fn embeds_s4_sum(sum: &ConnectedSum, strict_odd: bool) -> Verdict {
    let mut counts: BTreeMap<LensSpace, usize> = BTreeMap::new();
    for l in sum.summands() {
        *counts.entry(l.canonical()).or_default() += 1;
    }

    let mut half: Vec<LensSpace> = Vec::new();
    let mut unbalanced: Vec<String> = Vec::new();
    for (&class, &count) in &counts {
        let mirror = class.reverse().canonical();
        if mirror == class {
            if count % 2 == 0 {
                half.extend(std::iter::repeat_n(class, count / 2));
            } else {
                unbalanced.push(format!("amphichiral L({class}) occurs {count} times"));
            }
        } else if class < mirror {
            let other = counts.get(&mirror).copied().unwrap_or(0);
            if other == count {
                half.extend(std::iter::repeat_n(class, count));
            } else {
                unbalanced.push(format!(
                    "L({class}) occurs {count} times but -L({class}) = L({mirror}) occurs {other}"
                ));
            }
        } else if !counts.contains_key(&mirror) {
            unbalanced.push(format!(
                "L({class}) occurs {count} times but -L({class}) = L({mirror}) occurs 0"
            ));
        }
    }
    let even: Vec<i64> = sum.summands().iter().map(LensSpace::p).filter(|p| p % 2 == 0).collect();
    let symmetric = unbalanced.is_empty();
    let parity_ok = !strict_odd || even.is_empty();

    let mut v = Verdict::new(Answer::from_bool(symmetric && parity_ok));
    v.bounds.push(format!(
        "{} oriented classes compared with their reverses",
        counts.len()
    ));
    v.step(Rule::Donald, format!("{sum} embeds in R^4 iff it is Y # -Y"));
    let classes: Vec<String> = counts.iter().map(|(c, n)| format!("L({c})x{n}")).collect();
    v.step(Rule::Classification, format!("oriented classes: {}", classes.join(" ")));
    for u in &unbalanced {
        v.step(Rule::Donald, u.clone());
    }
    if strict_odd {
        v.step(
            Rule::FintushelSternGilmerLivingston,
            if even.is_empty() {
                "every p is odd".to_string()
            } else {
                format!("even p present: {even:?}")
            },
        );
    }
    let h1 = h1_of_lens_sum(sum);
    let doubled = hantzsche_double_test(&h1).expect("lens sums are torsion");
    v.step(
        Rule::Hantzsche,
        match &doubled {
            Some(g) => format!("H1 = {h1} = G + G with G = {g}"),
            None => format!("H1 = {h1} is not of the form G + G"),
        },
    );
    if v.is_yes() {
        if half.is_empty() {
            v.witnesses.push(Witness::new("Y", [1, 0]));
        }
        for y in &half {
            v.witnesses.push(Witness::new("Y", [y.p(), y.q()]));
        }
    }
    v
}

/// Whether `L(p,q) \ B³` embeds smoothly in `R⁴`.
pub fn punctured_embeds_r4(lens: &LensSpace) -> bool {
    lens.p() == 1 || lens.p() % 2 == 1
}

pub fn punctured_verdict(lens: &LensSpace) -> Verdict {
    let yes = punctured_embeds_r4(lens);
    let mut v = Verdict::new(Answer::from_bool(yes));
    v.bounds.push("closed criterion, no search".into());
    if lens.is_sphere() {
        v.step(Rule::EpsteinZeeman, "punctured S^3 is B^3");
    } else {
        v.step(
            Rule::EpsteinZeeman,
            format!("p = {} is {}", lens.p(), if yes { "odd" } else { "even" }),
        );
    }
    if yes {
        v.witnesses.push(Witness::new("p", [lens.p()]));
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lens(p: i64, q: i64) -> LensSpace {
        LensSpace::new(p, q).unwrap()
    }

    fn sum(s: &str) -> ConnectedSum {
        s.parse().unwrap()
    }

    #[test]
    fn lisca_examples() {
        let v = lisca_qhb_filling(&lens(4, 1)).unwrap();
        assert!(v.is_yes());
        assert_eq!(v.witnesses[0].values, vec![2, 1, 1]);

        let v = lisca_qhb_filling(&lens(9, 5)).unwrap();
        assert_eq!(v.witnesses[0].values[..2], [3, 2]);

        let v = lisca_qhb_filling(&lens(9, 2)).unwrap();
        assert_eq!(v.witnesses[0].values, vec![3, 1, 2]);

        let v = lisca_qhb_filling(&lens(9, 4)).unwrap();
        assert!(!v.is_yes());
        assert!(v.is_well_formed());

        let v = lisca_qhb_filling(&lens(4, 3)).unwrap();
        assert!(!v.is_yes());
        assert!(v.mentions("forces k = 2, which is not coprime to 2"));

        assert!(!lisca_qhb_filling(&lens(7, 3)).unwrap().is_yes());
        assert!(lisca_qhb_filling(&LensSpace::sphere()).is_err());
    }

    /// Direct search over every `m ≥ 2` and `h ≥ 1` with `mh - 1 < p`.
    fn lisca_brute(l: &LensSpace) -> bool {
        let reps = [l.q(), l.q_inverse()];
        (2..=l.p()).any(|m| m * m == l.p() && (1..=l.p()).any(|h| m.gcd(&h) == 1 && reps.contains(&(m * h - 1))))
    }

    #[test]
    fn lisca_matches_brute_force() {
        for p in 2..=400 {
            for q in 1..p {
                let Ok(l) = LensSpace::new(p, q) else { continue };
                assert_eq!(lisca_witness(&l).is_some(), lisca_brute(&l), "L({l})");
            }
        }
    }

    #[test]
    fn lisca_is_orientation_sensitive() {
        assert!(lisca_qhb_filling(&lens(4, 1)).unwrap().is_yes());
        assert!(!lisca_qhb_filling(&lens(4, 3)).unwrap().is_yes());
    }

    #[test]
    fn sum_examples() {
        let v = sum_qhb_filling(4, 1).unwrap();
        assert!(!v.is_yes());
        assert!(v.mentions("L(4,3): q' = 3 = 2k - 1 forces k = 2, which is not coprime to 2"));
        assert!(v.mentions("only m = 2, p = 4"));
        assert!(v.is_well_formed());

        let v = sum_qhb_filling(9, 2).unwrap();
        assert!(!v.is_yes());
        assert!(v.mentions("no filling: L(9,7)"));

        assert!(sum_qhb_filling(6, 3).is_err());
        assert!(sum_qhb_filling(1, 0).is_err());
    }

    #[test]
    fn sum_never_fills_small() {
        for p in 2..=500 {
            for q in 1..p {
                if p.gcd(&q) == 1 {
                    assert!(!sum_qhb_decide(p, q).unwrap());
                }
            }
        }
    }

    #[test]
    fn pair_examples() {
        assert!(embeds_s4_pair(&lens(3, 1), &lens(3, 2)).unwrap().is_yes());
        assert!(!embeds_s4_pair(&lens(4, 1), &lens(4, 3)).unwrap().is_yes());
        assert!(embeds_s4_pair(&lens(5, 2), &lens(5, 2)).unwrap().is_yes());
        assert!(!embeds_s4_pair(&lens(5, 1), &lens(7, 6)).unwrap().is_yes());
        assert!(!embeds_s4_pair(&lens(7, 2), &lens(7, 2)).unwrap().is_yes());
        assert!(embeds_s4_pair(&lens(7, 2), &lens(7, 3)).unwrap().is_yes());
    }

    #[test]
    fn sum_embedding_examples() {
        let v = embeds_s4_sum(&sum("3,1#3,2"), true);
        assert!(v.is_yes());
        assert_eq!(v.witnesses, vec![Witness::new("Y", [3, 1])]);
        assert!(!embeds_s4_sum(&sum("3,1#3,1"), true).is_yes());
        assert!(!embeds_s4_sum(&sum("5,2"), true).is_yes());
        assert!(embeds_s4_sum(&sum("5,2#5,2"), true).is_yes());
        assert!(!embeds_s4_sum(&sum("4,1#4,3"), true).is_yes());
        assert!(embeds_s4_sum(&sum("4,1#4,3"), false).is_yes());
        assert!(embeds_s4_sum(&ConnectedSum::default(), true).is_yes());
        let v = embeds_s4_sum(&sum("3,1#3,2#7,2#7,3#5,2#5,3"), true);
        assert!(v.is_yes());
        assert_eq!(v.witnesses.len(), 3);
    }

    #[test]
    fn pair_and_sum_agree() {
        for p in 2..=100 {
            for q in 1..p {
                let Ok(l) = LensSpace::new(p, q) else { continue };
                for q2 in 1..p {
                    let Ok(l2) = LensSpace::new(p, q2) else { continue };
                    let pair = embeds_s4_pair(&l, &l2).unwrap().answer;
                    let s = embeds_s4_sum(&ConnectedSum::new([l, l2]), true).answer;
                    assert_eq!(pair, s, "L({l}) # L({l2})");
                }
            }
        }
    }

    #[test]
    fn punctured_examples() {
        assert!(punctured_embeds_r4(&lens(3, 1)));
        assert!(!punctured_embeds_r4(&lens(4, 1)));
        assert!(punctured_embeds_r4(&LensSpace::sphere()));
        assert!(punctured_verdict(&lens(9, 2)).is_yes());
    }

    #[test]
    fn verdict_json_is_exact() {
        let v = lisca_qhb_filling(&lens(9, 5)).unwrap();
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.starts_with(r#"{"answer":"yes","bounds":["#));
        assert!(json.contains(r#""values":["3","2","5"]"#));
        assert_eq!(serde_json::from_str::<Verdict>(&json).unwrap(), v);
    }
}
