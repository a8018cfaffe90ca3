//! The completed tensor algebra on H, truncated above a degree bound.
//!
//! Elements are sparse maps from basis-index sequences to exact rationals.
//! A tensor may carry an "unknown from degree k" marker: coefficients of
//! degree ≥ k are not determined by the data that produced it (for example
//! the degree-3 part of the θ₀ expansion) and are kept only as placeholders.
//! Operations propagate the marker so no caller can read them as exact.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::ell::ell;
use crate::error::{check_genus, Error, Result};
use crate::homology::{abelianize, basis_name, basis_pairing, rat, ratio, HVec, Rational};
use crate::wedge::{embed2, Wedge2};
use crate::word::Word;

/// Default truncation degree.
pub const DEFAULT_BOUND: usize = 3;

/// Highest degree of `L^θ` determined by the degree-2 data of θ₀.
pub const MAX_L_DEGREE: usize = 3;

pub type Monomial = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncTensor {
    genus: u32,
    bound: usize,
    terms: BTreeMap<Monomial, Rational>,
    unknown_from: Option<usize>,
}

impl TruncTensor {
    pub fn zero(genus: u32, bound: usize) -> Self {
        TruncTensor {
            genus,
            bound,
            terms: BTreeMap::new(),
            unknown_from: None,
        }
    }

    pub fn scalar(genus: u32, bound: usize, c: Rational) -> Self {
        let mut t = Self::zero(genus, bound);
        t.add_term(Vec::new(), c);
        t
    }

    pub fn one(genus: u32, bound: usize) -> Self {
        Self::scalar(genus, bound, Rational::one())
    }

    /// A single monomial `c · e_{i1} e_{i2} ⋯`.
    pub fn monomial(genus: u32, bound: usize, word: &[usize], c: Rational) -> Self {
        let mut t = Self::zero(genus, bound);
        t.add_term(word.to_vec(), c);
        t
    }

    /// Degree-1 tensor of a homology class.
    pub fn from_hvec(v: &HVec, bound: usize) -> Self {
        let mut t = Self::zero(v.genus(), bound);
        for (i, c) in v.terms() {
            t.add_term(vec![i], c.clone());
        }
        t
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn coeff(&self, word: &[usize]) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest degree whose coefficients are not determined, if any.
    pub fn unknown_from(&self) -> Option<usize> {
        self.unknown_from
    }

    /// Marks every degree `≥ degree` as undetermined.
    pub fn with_unknown_from(mut self, degree: usize) -> Self {
        if degree <= self.bound {
            self.unknown_from = Some(self.unknown_from.map_or(degree, |d| d.min(degree)));
        }
        self
    }

    pub fn is_known(&self, degree: usize) -> bool {
        self.unknown_from.is_none_or(|d| degree < d)
    }

    pub fn constant(&self) -> Rational {
        self.coeff(&[])
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).min()
    }

    /// Adds `c` to the coefficient of `word`; drops terms beyond the bound.
    pub fn add_term(&mut self, word: Monomial, c: Rational) {
        if word.len() > self.bound || c.is_zero() {
            return;
        }
        debug_assert!(word.iter().all(|&i| i < 2 * self.genus as usize));
        let entry = self.terms.entry(word);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Homogeneous part of the given degree, refusing undetermined degrees.
    pub fn degree_part(&self, degree: usize) -> Result<TruncTensor> {
        if !self.is_known(degree) {
            return Err(Error::DegreeOutOfRange {
                requested: degree,
                supported: "degree is marked unknown",
            });
        }
        Ok(self.degree_part_unchecked(degree))
    }

    fn degree_part_unchecked(&self, degree: usize) -> TruncTensor {
        let mut t = Self::zero(self.genus, self.bound);
        for (w, c) in self.terms.iter().filter(|(w, _)| w.len() == degree) {
            t.add_term(w.clone(), c.clone());
        }
        t
    }

    /// Drops everything above `degree` (and lowers the bound to it).
    pub fn truncate(&self, degree: usize) -> TruncTensor {
        let bound = degree.min(self.bound);
        let mut t = Self::zero(self.genus, bound);
        for (w, c) in &self.terms {
            t.add_term(w.clone(), c.clone());
        }
        t.unknown_from = self.unknown_from.filter(|&d| d <= bound);
        t
    }

    /// Raises the bound; the new degrees are marked unknown.
    pub fn lift(&self, bound: usize) -> TruncTensor {
        if bound <= self.bound {
            return self.clone();
        }
        let mut t = self.clone();
        t.bound = bound;
        t.with_unknown_from(self.bound + 1)
    }

    fn check_compatible(&self, other: &TruncTensor) -> Result<()> {
        check_genus(self.genus, other.genus)?;
        if self.bound != other.bound {
            return Err(Error::BoundMismatch {
                left: self.bound,
                right: other.bound,
            });
        }
        Ok(())
    }

    fn merged_unknown(a: Option<usize>, b: Option<usize>) -> Option<usize> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn add(&self, other: &TruncTensor) -> Result<TruncTensor> {
        self.check_compatible(other)?;
        let mut t = self.clone();
        for (w, c) in &other.terms {
            t.add_term(w.clone(), c.clone());
        }
        t.unknown_from = Self::merged_unknown(self.unknown_from, other.unknown_from);
        Ok(t)
    }

    pub fn sub(&self, other: &TruncTensor) -> Result<TruncTensor> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> TruncTensor {
        let mut t = Self::zero(self.genus, self.bound);
        for (w, x) in &self.terms {
            t.add_term(w.clone(), x * c);
        }
        t.unknown_from = self.unknown_from;
        t
    }

    /// Concatenation product, truncated at the bound.
    pub fn mul(&self, other: &TruncTensor) -> Result<TruncTensor> {
        self.check_compatible(other)?;
        let mut t = Self::zero(self.genus, self.bound);
        for (wu, cu) in &self.terms {
            for (wv, cv) in &other.terms {
                if wu.len() + wv.len() > self.bound {
                    continue;
                }
                let mut w = wu.clone();
                w.extend_from_slice(wv);
                t.add_term(w, cu * cv);
            }
        }
        // an unknown degree d in one factor contaminates degrees ≥ d + (lowest degree of the other)
        let spread = |unknown: Option<usize>, other: &TruncTensor| {
            unknown.and_then(|d| other.min_degree().map(|m| d + m))
        };
        t.unknown_from = Self::merged_unknown(spread(self.unknown_from, other), spread(other.unknown_from, self))
            .filter(|&d| d <= self.bound);
        Ok(t)
    }

    fn pow(&self, k: usize) -> Result<TruncTensor> {
        let mut acc = Self::one(self.genus, self.bound);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `log(u) = Σ_{k≥1} (−1)^{k−1}/k (u − 1)^k`, for `u` with constant term 1.
    pub fn log(&self) -> Result<TruncTensor> {
        if !self.constant().is_one() {
            return Err(Error::ConstantTerm {
                expected: "1".into(),
                found: self.constant().to_string(),
            });
        }
        let h = self.sub(&Self::one(self.genus, self.bound))?;
        let mut acc = Self::zero(self.genus, self.bound);
        for k in 1..=self.bound {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&h.pow(k)?.scale(&ratio(sign, k as i64)))?;
        }
        acc.unknown_from = self.unknown_from;
        Ok(acc)
    }

    /// `e^u = Σ_{k≥0} u^k / k!`, for `u` with zero constant term.
    pub fn exp(&self) -> Result<TruncTensor> {
        if !self.constant().is_zero() {
            return Err(Error::ConstantTerm {
                expected: "0".into(),
                found: self.constant().to_string(),
            });
        }
        let mut acc = Self::one(self.genus, self.bound);
        let mut term = Self::one(self.genus, self.bound);
        for k in 1..=self.bound {
            term = term.mul(self)?.scale(&ratio(1, k as i64));
            acc = acc.add(&term)?;
        }
        acc.unknown_from = self.unknown_from;
        Ok(acc)
    }

    /// Cyclic permutation `ν(e_1 e_2 ⋯ e_k) = e_2 ⋯ e_k e_1`, degreewise.
    pub fn cyclic_nu(&self) -> TruncTensor {
        let mut t = Self::zero(self.genus, self.bound);
        for (w, c) in &self.terms {
            let mut r = w.clone();
            if !r.is_empty() {
                r.rotate_left(1);
            }
            t.add_term(r, c.clone());
        }
        t.unknown_from = self.unknown_from;
        t
    }

    /// `N = Σ_{j<k} ν^j` on degree `k ≥ 1`, and `N = 0` on constants.
    pub fn cyclic_n(&self) -> TruncTensor {
        let mut t = Self::zero(self.genus, self.bound);
        for (w, c) in self.terms.iter().filter(|(w, _)| !w.is_empty()) {
            let mut r = w.clone();
            for _ in 0..w.len() {
                t.add_term(r.clone(), c.clone());
                r.rotate_left(1);
            }
        }
        t.unknown_from = self.unknown_from;
        t
    }

    /// The derivation `D_h` determined by `h ∈ T̂₁`, applied to `self`.
    ///
    /// `h` acts on `Y ∈ H` by contracting its first tensor factor:
    /// `(e_1 e_2 ⋯ e_k)(Y) = (Y·e_1) e_2 ⋯ e_k`, extended by Leibniz.
    pub fn derive_by(&self, h: &TruncTensor) -> Result<TruncTensor> {
        derive(h, self)
    }
}

/// `D_h(u)`; `h` must have no constant term.
pub fn derive(h: &TruncTensor, u: &TruncTensor) -> Result<TruncTensor> {
    h.check_compatible(u)?;
    if !h.constant().is_zero() {
        return Err(Error::DerivationConstant);
    }
    let mut t = TruncTensor::zero(u.genus, u.bound);
    for (w, c) in &u.terms {
        for pos in 0..w.len() {
            let y = w[pos];
            for (hw, hc) in &h.terms {
                let pairing = basis_pairing(y, hw[0]);
                if pairing == 0 {
                    continue;
                }
                let mut out = Vec::with_capacity(w.len() + hw.len() - 2);
                out.extend_from_slice(&w[..pos]);
                out.extend_from_slice(&hw[1..]);
                out.extend_from_slice(&w[pos + 1..]);
                t.add_term(out, c * hc * rat(pairing));
            }
        }
    }
    // D_h shifts degree by (degree of h) - 2
    let shift = h.min_degree().unwrap_or(2) as isize - 2;
    t.unknown_from = u
        .unknown_from
        .map(|d| (d as isize + shift.min(0)).max(0) as usize)
        .filter(|&d| d <= u.bound);
    Ok(t)
}

impl fmt::Display for TruncTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.terms.iter().map(|(w, c)| {
            let name = if w.is_empty() {
                "1".to_string()
            } else {
                w.iter().map(|&i| basis_name(i)).collect::<Vec<_>>().join("")
            };
            (name, c)
        });
        crate::homology::write_linear_combination(f, names)?;
        if let Some(d) = self.unknown_from {
            write!(f, " + [unknown in degree >= {d}]")?;
        }
        Ok(())
    }
}

/// `{"terms": [{"word": "X1Y2", "coeff": "-1"}, …], "unknown_from": null}`;
/// the empty word is written `1`.
impl serde::Serialize for TruncTensor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(serde::Serialize)]
        struct Term {
            word: String,
            coeff: String,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(w, c)| Term {
                word: if w.is_empty() {
                    "1".into()
                } else {
                    w.iter().map(|&i| basis_name(i)).collect()
                },
                coeff: c.to_string(),
            })
            .collect();
        let mut st = s.serialize_struct("TruncTensor", 2)?;
        st.serialize_field("terms", &terms)?;
        st.serialize_field("unknown_from", &self.unknown_from)?;
        st.end()
    }
}

/// The θ₀ expansion of a word through degree 2:
/// `1 + |w| + (ℓ(w) + ½|w||w|)`. At bounds ≥ 3 the higher degrees are
/// marked unknown.
pub fn theta0(w: &Word, bound: usize) -> Result<TruncTensor> {
    if bound < 2 {
        return Err(Error::DegreeOutOfRange {
            requested: bound,
            supported: "theta0 needs a bound of at least 2",
        });
    }
    let genus = w.genus();
    let h = TruncTensor::from_hvec(&abelianize(w), bound);
    let quad = embed2(&ell(w), bound).add(&h.mul(&h)?.scale(&ratio(1, 2)))?;
    let t = TruncTensor::one(genus, bound).add(&h)?.add(&quad)?;
    Ok(t.with_unknown_from(3))
}

/// `L^θ(a) = ½N(ℓ^θ(a) ℓ^θ(a))` through degree `bound ≤ 3`, built from the
/// degree-1 and degree-2 parts of `ℓ^θ(a)`.
pub fn l_theta(a: &Word, bound: usize) -> Result<TruncTensor> {
    if bound > MAX_L_DEGREE {
        return Err(Error::DegreeOutOfRange {
            requested: bound,
            supported: "L^theta is available through degree 3",
        });
    }
    let h = TruncTensor::from_hvec(&abelianize(a), bound);
    let lie = if bound >= 2 {
        h.add(&embed2(&ell(a), bound))?
    } else {
        h
    };
    Ok(lie.mul(&lie)?.cyclic_n().scale(&ratio(1, 2)))
}

/// Degree-2 part `|a||a|` of `L^θ(a)`.
pub fn l_theta_2(a: &Word, bound: usize) -> Result<TruncTensor> {
    let h = TruncTensor::from_hvec(&abelianize(a), bound);
    h.mul(&h)
}

const MAX_DERIVATION_STEPS: usize = 64;

/// Applies the total Johnson map of the twist along `a`,
/// `e^{−L^θ(a)} = Σ_k (−1)^k/k! D_L^k`, to `u`.
///
/// `L` is built one degree above the output (at most degree 3); its
/// degree-3 part moves degree 1 into degree 2, so the output is exact
/// through degree 2. At
/// bound 3 the degree-3 output is marked unknown when `u` has a degree-1
/// part. Degrees of `u` marked
/// unknown stay unknown; `D_L` never lowers degree since `L` starts in
/// degree 2.
pub fn johnson_twist(a: &Word, u: &TruncTensor) -> Result<TruncTensor> {
    check_genus(a.genus(), u.genus)?;
    let bound = u.bound;
    if bound > MAX_L_DEGREE {
        return Err(Error::DegreeOutOfRange {
            requested: bound,
            supported: "twist output is available through degree 3",
        });
    }
    // degree d + 1 of L is the highest one that reaches output degree d
    let l_bound = (bound + 1).clamp(2, MAX_L_DEGREE);
    let l = l_theta(a, l_bound)?;
    let lifted = u.lift(l_bound);
    let mut acc = lifted.clone();
    let mut term = lifted;
    for k in 1..=MAX_DERIVATION_STEPS {
        term = derive(&l, &term)?.scale(&ratio(-1, k as i64));
        if term.is_zero() {
            let mut out = acc.truncate(bound);
            out.unknown_from = u.unknown_from;
            // the missing degree-4 part of L carries degree 1 into degree 3
            if bound == MAX_L_DEGREE && u.terms.keys().any(|w| w.len() == 1) {
                out = out.with_unknown_from(MAX_L_DEGREE);
            }
            return Ok(out);
        }
        acc = acc.add(&term)?;
    }
    Err(Error::Invariant("derivation exponential did not terminate".into()))
}

/// Image of `X ∈ H` under the degree-1 part of the twist: `X + (|a|·X)|a|`.
pub fn classical_twist_on_h(a: &Word, x: &HVec) -> Result<HVec> {
    let abs_a = abelianize(a);
    let c = crate::homology::intersection(&abs_a, x)?;
    Ok(x + &abs_a.scale(&c))
}

/// Rebuilds a Wedge2 from a degree-2 tensor in the image of `embed2`.
pub fn wedge2_of(t: &TruncTensor) -> Result<Wedge2> {
    let mut w = Wedge2::zero(t.genus);
    for (word, c) in &t.terms {
        match word.as_slice() {
            [i, j] if i < j => {
                let back = t.coeff(&[*j, *i]);
                if back != -c.clone() {
                    return Err(Error::Invariant("degree-2 tensor is not antisymmetric".into()));
                }
                w.add_term(*i, *j, c.clone());
            }
            [i, j] if i > j => {}
            [_, _] => return Err(Error::Invariant("diagonal term in antisymmetric tensor".into())),
            _ => return Err(Error::Invariant("tensor is not homogeneous of degree 2".into())),
        }
    }
    Ok(w)
}
