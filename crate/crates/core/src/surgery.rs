//! Conditional certificates for surgeries that bound contractible, acyclic
//! or rationally acyclic 4-manifolds.
//!
//! Hypotheses such as sliceness are recorded as caller-asserted flags and are
//! never checked here. What is checked is the homology: the surgery `1/n` on a
//! knot is presented by a `0`-framed knot with a `(-n)`-framed meridian, and
//! that linking matrix must have determinant `±1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::homology::{is_homology_sphere, IntMatrix};
use crate::rational::Slope;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    Contractible,
    Acyclic,
    RationallyAcyclic,
    SteinContractible,
    NotFillable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Theorem,
    Conjecture,
}

/// The class of the ambient manifold a knot or curve is slice in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ambient {
    Acyclic,
    RationallyAcyclic,
}

impl Ambient {
    fn conclusion(self) -> Conclusion {
        match self {
            Ambient::Acyclic => Conclusion::Acyclic,
            Ambient::RationallyAcyclic => Conclusion::RationallyAcyclic,
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Ambient::Acyclic => "acyclic",
            Ambient::RationallyAcyclic => "rationally acyclic",
        }
    }
}

impl std::str::FromStr for Ambient {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "acyclic" => Ok(Ambient::Acyclic),
            "rational" | "rationally_acyclic" | "rationally-acyclic" => Ok(Ambient::RationallyAcyclic),
            _ => Err(invalid(format!("ambient must be acyclic or rational, got {s:?}"))),
        }
    }
}

/// The `±` in `1/(s ± 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlusMinus {
    Plus,
    Minus,
}

impl PlusMinus {
    pub fn value(self) -> i64 {
        match self {
            PlusMinus::Plus => 1,
            PlusMinus::Minus => -1,
        }
    }
}

impl std::str::FromStr for PlusMinus {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+1" | "1" | "+" => Ok(PlusMinus::Plus),
            "-1" | "-" => Ok(PlusMinus::Minus),
            _ => Err(invalid(format!("sign must be +1 or -1, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub assumed: bool,
}

fn assume(names: &[&str]) -> Vec<Hypothesis> {
    names
        .iter()
        .map(|n| Hypothesis {
            name: n.to_string(),
            assumed: true,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub coefficient: Slope,
    pub conclusion: Conclusion,
    pub homology_check: bool,
    pub hypotheses: Vec<Hypothesis>,
    pub notes: Vec<String>,
    /// Which construction the certificate instantiates.
    pub paper_ref: String,
    pub status: Status,
}

impl Certificate {
    /// Surgery coefficient `1/n`; `n = 0` is the empty surgery `1/0`.
    fn integral(n: i64, conclusion: Conclusion, status: Status, construction: &str, hypotheses: &[&str]) -> Self {
        let coefficient = Slope::new(1, n).expect("1/n is a slope");
        let mut cert = Certificate {
            coefficient,
            conclusion,
            homology_check: false,
            hypotheses: assume(hypotheses),
            notes: Vec::new(),
            paper_ref: construction.to_string(),
            status,
        };
        cert.homology_check = is_homology_sphere(&cert.presentation_matrix()).expect("symmetric");
        if n == 0 {
            cert.notes
                .push("coefficient 1/0: no surgery, the boundary already bounds the ambient manifold".into());
        }
        cert
    }

    pub fn is_trivial(&self) -> bool {
        self.coefficient.is_infinite()
    }

    /// `n` for the coefficient `1/n` (`0` for the trivial certificate).
    pub fn inverse_coefficient(&self) -> i64 {
        self.coefficient.num() * self.coefficient.den()
    }

    /// Linking matrix `[[0, 1], [1, -n]]`; empty for the trivial surgery.
    pub fn presentation_matrix(&self) -> IntMatrix {
        if self.is_trivial() {
            return IntMatrix::zeros(0);
        }
        let n = self.inverse_coefficient();
        IntMatrix::from_rows(&[vec![0, 1], vec![1, -n]]).expect("square")
    }

    fn note(mut self, text: &str) -> Self {
        self.notes.push(text.to_string());
        self
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let conclusion = serde_json::to_value(self.conclusion).expect("plain enum");
        let status = serde_json::to_value(self.status).expect("plain enum");
        write!(
            f,
            "coefficient {} -> {} ({}), homology sphere: {}",
            self.coefficient,
            conclusion.as_str().unwrap_or_default(),
            status.as_str().unwrap_or_default(),
            self.homology_check
        )
    }
}

/// `1/m` surgery on a knot that is slice in a contractible `W` bounds a
/// contractible manifold.
pub fn slice_surgery_certificate(m: i64) -> Result<Certificate> {
    if m == 0 {
        return Err(invalid("slice surgery needs m != 0; 0-surgery is not 1/m"));
    }
    let cert = Certificate::integral(
        m,
        Conclusion::Contractible,
        Status::Theorem,
        "slice-knot-surgery",
        &["K slice in contractible W"],
    )
    .note("remove a slice disk from W (0-surgery on K) and add a 2-handle on a meridian with framing -m");
    Ok(if m == 1 {
        cert.note("example: Sigma(2,3,13) is +1 surgery on the stevedore knot 6_1; the Mazur cork boundary is +1 surgery on P(-3,3,-3)")
    } else {
        cert
    })
}

/// `1/(s ± 1)` surgery on a knot with a genus one Seifert surface `F`
/// containing a primitive curve `b` of `F`-framing `s` that is slice in the
/// (rationally) acyclic `W`.
pub fn fickle_certificate(s: i64, sign: PlusMinus, ambient: Ambient) -> Result<Certificate> {
    let n = s + sign.value();
    let hypotheses = [
        "K bounds a genus one Seifert surface F",
        "[b] primitive in H1(F)",
        &*format!("b slice in {} W", ambient.describe()),
        &*format!("b has F-framing {s}"),
    ];
    let cert = Certificate::integral(
        n,
        ambient.conclusion(),
        Status::Theorem,
        "genus-one-slice-curve",
        &hypotheses,
    );
    Ok(if s == -1 && sign == PlusMinus::Minus {
        cert.note("applies to the trefoil with a surface curve of framing -1; compare Sigma(2,3,25)")
    } else if s == 0 && sign == PlusMinus::Plus && ambient == Ambient::RationallyAcyclic {
        cert.note("covers +1 surgery on Whitehead doubles of rationally slice knots")
    } else {
        cert
    })
}

/// `1/(mᵢ ± 1)` surgeries on the plumbing of twisted ribbons
/// `R_{m₁}(K₁)` and `R_{m₂}(K₂)`.
pub fn plumbing_certificate(
    m1: i64,
    m2: i64,
    sign: PlusMinus,
    slice_class: Ambient,
) -> Result<(Certificate, Certificate)> {
    let make = |m: i64, i: usize| {
        let hypotheses = [
            &*format!("K1, K2 slice in {} manifolds", slice_class.describe()),
            &*format!("plumbing of R_{m1}(K1) and R_{m2}(K2)"),
            &*format!("surgery along the core of R_{m}(K{i})"),
        ];
        Certificate::integral(
            m + sign.value(),
            slice_class.conclusion(),
            Status::Theorem,
            "twisted-ribbon-plumbing",
            &hypotheses,
        )
    };
    Ok((make(m1, 1), make(m2, 2)))
}

/// Contact `(1 + 1/m)` surgery (smooth `1/m`) on a Legendrian knot bounding a
/// regular Lagrangian disk is the boundary of a contractible Stein manifold
/// exactly when `m > 0`.
pub fn stein_contractible_verdict(m: i64) -> Result<Certificate> {
    if m == 0 {
        return Err(invalid("contact coefficient 1 + 1/m is undefined for m = 0"));
    }
    let hypotheses = ["L bounds a regular Lagrangian disk in (B^4, omega_std)"];
    let cert = if m > 0 {
        let cert = Certificate::integral(
            m,
            Conclusion::SteinContractible,
            Status::Theorem,
            "regular-lagrangian-slice",
            &hypotheses,
        )
        .note("removing the Lagrangian disk leaves a Stein manifold bounded by +1 contact surgery; a stabilised meridian carries a Stein 2-handle");
        if m == 1 {
            cert.note(
                "m = 1 needs the normal form of the cancelling handle presentation rather than a stabilised meridian",
            )
        } else {
            cert
        }
    } else {
        Certificate::integral(m, Conclusion::NotFillable, Status::Theorem, "regular-lagrangian-slice", &hypotheses)
            .note("contact r-surgery with r in (0,1] is strongly fillable only for Lagrangian slice knots with r = 1; here r = 1 + 1/m < 1")
    };
    Ok(cert.note("open: whether a nontrivial Brieskorn sphere is 1/n surgery on a regular Lagrangian slice knot"))
}

/// The Fintushel-Stern family `1/(k(s ± 1))`, proved for `k = 1` and
/// conjectural for `k ≥ 2`.
pub fn fs_conjecture_coefficient(k: i64, s: i64, sign: PlusMinus) -> Result<Certificate> {
    if k < 1 {
        return Err(invalid(format!(
            "k must be at least 1, got {k}; k = 0 is the trivial surgery"
        )));
    }
    let n = k * (s + sign.value());
    let status = if k >= 2 && n != 0 {
        Status::Conjecture
    } else {
        Status::Theorem
    };
    let hypotheses = [
        "K bounds a genus one Seifert surface F",
        "[b] primitive in H1(F)",
        "b slice in acyclic W",
        &*format!("b has F-framing {s}"),
    ];
    let cert = Certificate::integral(n, Conclusion::Acyclic, status, "fintushel-stern-family", &hypotheses);
    Ok(if status == Status::Conjecture && s == -1 && sign == PlusMinus::Minus {
        cert.note("conjectural application: Sigma(2,3,12k+1) would bound acyclic manifolds")
    } else {
        cert
    })
}
