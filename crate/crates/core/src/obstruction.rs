//! Verdicts on pairs of curves.
//!
//! Only a one-sided certificate is ever produced: either the algebraic
//! intersection is nonzero, or it is zero and the obstruction vector falls
//! outside `ℤ|a| + ℤ|b|`. In both cases the geometric intersection number is
//! positive. Anything else is `inconclusive`; the converse does not hold.

use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::ell::{ell, EXPANSION_NAME};
use crate::error::{check_genus, Error, Result};
use crate::homology::{abelianize, intersection, lattice_member, HVec, LatticeWitness};
use crate::tensor::{johnson_twist, theta0, TruncTensor};
use crate::wedge::{act2, embed2, wedge, Wedge2};
use crate::word::Word;

pub const DISCLAIMER: &str = "inputs are assumed to represent simple closed curves; \
a certificate bounds the geometric intersection number below, inconclusive claims nothing";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// `|a|·|b| ≠ 0`.
    CertifiedPositiveHomological,
    /// `|a|·|b| = 0` and the obstruction vector is outside the lattice.
    CertifiedPositiveTheorem,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::CertifiedPositiveHomological => "certified_positive_homological",
            Verdict::CertifiedPositiveTheorem => "certified_positive_theorem",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    pub fn is_certified(&self) -> bool {
        !matches!(self, Verdict::Inconclusive)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassPair {
    pub a: HVec,
    pub b: HVec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EllPair {
    pub a: Wedge2,
    pub b: Wedge2,
}

/// Full analysis record for a pair of words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub genus: u32,
    pub a: String,
    pub b: String,
    pub abs: ClassPair,
    #[serde(rename = "iA")]
    pub i_a: i64,
    pub ell: EllPair,
    /// `ℓ(a)(|b|)`, present iff `i_a == 0`.
    #[serde(skip)]
    pub ell_a_on_b: Option<HVec>,
    /// `ℓ(b)(|a|)`, present iff `i_a == 0`.
    #[serde(skip)]
    pub ell_b_on_a: Option<HVec>,
    pub obstruction: Option<HVec>,
    pub lattice: Option<LatticeWitness>,
    pub verdict: Verdict,
    pub expansion: &'static str,
    pub disclaimer: &'static str,
}

/// Computes the report for a pair of words of the given genus.
pub fn analyze(genus: u32, a: &Word, b: &Word) -> Result<Report> {
    check_genus(genus, a.genus())?;
    check_genus(genus, b.genus())?;
    let abs_a = abelianize(a);
    let abs_b = abelianize(b);
    let pairing = intersection(&abs_a, &abs_b)?;
    if !pairing.is_integer() {
        return Err(Error::Invariant("intersection of word classes is not an integer".into()));
    }
    let i_a = pairing
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::Invariant("intersection number overflows i64".into()))?;

    let ell_a = ell(a);
    let ell_b = ell(b);
    let mut report = Report {
        genus,
        a: a.to_string(),
        b: b.to_string(),
        abs: ClassPair {
            a: abs_a.clone(),
            b: abs_b.clone(),
        },
        i_a,
        ell: EllPair {
            a: ell_a.clone(),
            b: ell_b.clone(),
        },
        ell_a_on_b: None,
        ell_b_on_a: None,
        obstruction: None,
        lattice: None,
        verdict: Verdict::CertifiedPositiveHomological,
        expansion: EXPANSION_NAME,
        disclaimer: DISCLAIMER,
    };
    if i_a != 0 {
        return Ok(report);
    }

    let left = act2(&ell_a, &abs_b)?;
    let right = act2(&ell_b, &abs_a)?;
    let v = left.checked_add(&right)?;
    let witness = lattice_member(&v, &abs_a, &abs_b)?;
    report.verdict = if witness.member() {
        Verdict::Inconclusive
    } else {
        Verdict::CertifiedPositiveTheorem
    };
    report.ell_a_on_b = Some(left);
    report.ell_b_on_a = Some(right);
    report.obstruction = Some(v);
    report.lattice = Some(witness);
    Ok(report)
}

/// Parses both words and runs [`analyze`].
pub fn analyze_text(genus: u32, a: &str, b: &str) -> Result<Report> {
    let a = crate::parse::parse_word(a, genus)?;
    let b = crate::parse::parse_word(b, genus)?;
    analyze(genus, &a, &b)
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Re-checks the verdict invariants against the stored fields.
    pub fn check_invariants(&self) -> Result<()> {
        let expected = match (&self.lattice, self.i_a) {
            (_, i) if i != 0 => Verdict::CertifiedPositiveHomological,
            (Some(w), _) if w.member() => Verdict::Inconclusive,
            (Some(_), _) => Verdict::CertifiedPositiveTheorem,
            (None, _) => return Err(Error::Invariant("lattice decision missing for i_A = 0".into())),
        };
        if expected != self.verdict {
            return Err(Error::Invariant(format!(
                "verdict {} does not match the report fields (expected {expected})",
                self.verdict
            )));
        }
        if let (Some(v), Some(w)) = (&self.obstruction, &self.lattice) {
            if let Some((m, n)) = &w.coefficients {
                let m = crate::homology::Rational::from_integer(m.clone());
                let n = crate::homology::Rational::from_integer(n.clone());
                if &self.abs.a.scale(&m) + &self.abs.b.scale(&n) != *v {
                    return Err(Error::Invariant("lattice witness does not reproduce v".into()));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "genus      {}  (expansion {})", self.genus, self.expansion)?;
        writeln!(f, "a          {}", self.a)?;
        writeln!(f, "b          {}", self.b)?;
        writeln!(f, "|a|        {}", self.abs.a)?;
        writeln!(f, "|b|        {}", self.abs.b)?;
        writeln!(f, "|a|·|b|    {}", self.i_a)?;
        writeln!(f, "l(a)       {}", self.ell.a)?;
        writeln!(f, "l(b)       {}", self.ell.b)?;
        if let (Some(l), Some(r), Some(v)) = (&self.ell_a_on_b, &self.ell_b_on_a, &self.obstruction) {
            writeln!(f, "l(a)|b|    {l}")?;
            writeln!(f, "l(b)|a|    {r}")?;
            writeln!(f, "v          {v}")?;
        }
        match self.lattice.as_ref().map(|w| &w.coefficients) {
            Some(Some((m, n))) => writeln!(f, "lattice    v = ({m})|a| + ({n})|b|")?,
            Some(None) => writeln!(f, "lattice    v is not in Z|a| + Z|b|")?,
            None => {}
        }
        let gloss = match self.verdict {
            Verdict::CertifiedPositiveHomological => "i_G >= |i_A| > 0",
            Verdict::CertifiedPositiveTheorem => "i_G > 0",
            Verdict::Inconclusive => "no conclusion",
        };
        writeln!(f, "verdict    {} ({gloss})", self.verdict)?;
        write!(f, "note       {}", self.disclaimer)
    }
}

/// Both sides of the degree-2 twist comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistCheck {
    pub consistent: bool,
    /// Degree-2 part of `e^{−L(a)}(θ₀(b)) − θ₀(b)`.
    pub twisted_difference: TruncTensor,
    /// `|a| ∧ v`, embedded as a tensor.
    pub predicted: TruncTensor,
    pub predicted_wedge: Wedge2,
}

impl fmt::Display for TwistCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "twist side     {}", self.twisted_difference)?;
        writeln!(f, "closed form    {}", self.predicted)?;
        writeln!(f, "|a| ∧ v        {}", self.predicted_wedge)?;
        write!(f, "consistent     {}", self.consistent)
    }
}

/// Compares the degree-2 change of θ₀(b) under the twist along `a` with
/// `|a| ∧ (ℓ(a)|b| + ℓ(b)|a|)`. Requires `|a|·|b| = 0`.
pub fn twist_consistency(genus: u32, a: &Word, b: &Word) -> Result<TwistCheck> {
    check_genus(genus, a.genus())?;
    check_genus(genus, b.genus())?;
    let abs_a = abelianize(a);
    let abs_b = abelianize(b);
    let pairing = intersection(&abs_a, &abs_b)?;
    if !num_traits::Zero::is_zero(&pairing) {
        return Err(Error::NonzeroIntersection(pairing.to_string()));
    }
    let bound = 2;
    let theta_b = theta0(b, bound)?;
    let twisted = johnson_twist(a, &theta_b)?;
    let twisted_difference = twisted.degree_part(2)?.sub(&theta_b.degree_part(2)?)?;

    let v = act2(&ell(a), &abs_b)?.checked_add(&act2(&ell(b), &abs_a)?)?;
    let predicted_wedge = wedge(&abs_a, &v)?;
    let predicted = embed2(&predicted_wedge, bound);
    Ok(TwistCheck {
        consistent: twisted_difference == predicted,
        twisted_difference,
        predicted,
        predicted_wedge,
    })
}
