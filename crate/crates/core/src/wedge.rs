//! Exterior powers H∧H and Λ³H, their actions on H, and their embeddings
//! into the tensor algebra (`X∧Y ↦ XY − YX`, `X∧Y∧Z ↦` the six-term
//! alternating sum).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeSeq, SerializeStruct, Serializer};

use crate::error::{check_genus, Result};
use crate::homology::{basis_name, rat, HVec, Rational};
use crate::tensor::TruncTensor;

fn add_into<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    *map.entry(key).or_insert_with(Rational::zero) += c;
}

fn prune<K: Ord>(map: &mut BTreeMap<K, Rational>) {
    map.retain(|_, c| !c.is_zero());
}

/// Element of H∧H, keyed by basis pairs `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Wedge2 {
    genus: u32,
    terms: BTreeMap<(usize, usize), Rational>,
}

impl Wedge2 {
    pub fn zero(genus: u32) -> Self {
        Wedge2 {
            genus,
            terms: BTreeMap::new(),
        }
    }

    /// `c · e_i ∧ e_j`, normalized so the stored key is increasing.
    pub fn basis(genus: u32, i: usize, j: usize, c: Rational) -> Self {
        let mut w = Self::zero(genus);
        w.add_term(i, j, c);
        w
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), Rational> {
        &self.terms
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero),
            std::cmp::Ordering::Greater => -self.coeff(j, i),
            std::cmp::Ordering::Equal => Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · e_i ∧ e_j`; `e_i ∧ e_i` vanishes.
    pub fn add_term(&mut self, i: usize, j: usize, c: Rational) {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => add_into(&mut self.terms, (i, j), c),
            std::cmp::Ordering::Greater => add_into(&mut self.terms, (j, i), -c),
            std::cmp::Ordering::Equal => {}
        }
        prune(&mut self.terms);
    }

    pub fn checked_add(&self, other: &Wedge2) -> Result<Wedge2> {
        check_genus(self.genus, other.genus)?;
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            add_into(&mut out.terms, (i, j), c.clone());
        }
        prune(&mut out.terms);
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Wedge2 {
        let mut out = Self::zero(self.genus);
        for (&k, x) in &self.terms {
            add_into(&mut out.terms, k, x * c);
        }
        prune(&mut out.terms);
        out
    }

    pub fn neg(&self) -> Wedge2 {
        self.scale(&-Rational::one())
    }

    /// True iff every coefficient lies in `½ℤ`.
    pub fn is_half_integral(&self) -> bool {
        self.terms.values().all(|c| (c * rat(2)).is_integer())
    }
}

impl fmt::Display for Wedge2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .terms
            .iter()
            .map(|(&(i, j), c)| (format!("{}∧{}", basis_name(i), basis_name(j)), c));
        crate::homology::write_linear_combination(f, terms)
    }
}

struct WedgeTerm<'a> {
    basis: String,
    coeff: &'a Rational,
}

impl Serialize for WedgeTerm<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WedgeTerm", 2)?;
        st.serialize_field("basis", &self.basis)?;
        st.serialize_field("coeff", &self.coeff.to_string())?;
        st.end()
    }
}

/// `[{"basis": "X1^Y2", "coeff": "1/2"}, …]` in basis order.
impl Serialize for Wedge2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (&(i, j), c) in &self.terms {
            seq.serialize_element(&WedgeTerm {
                basis: format!("{}^{}", basis_name(i), basis_name(j)),
                coeff: c,
            })?;
        }
        seq.end()
    }
}

/// Element of Λ³H, keyed by increasing basis triples.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Wedge3 {
    genus: u32,
    terms: BTreeMap<(usize, usize, usize), Rational>,
}

/// Sorts a triple, returning the permutation sign (0 if an index repeats).
fn sort_triple(i: usize, j: usize, k: usize) -> ((usize, usize, usize), i64) {
    let mut v = [i, j, k];
    let mut sign = 1;
    for a in 0..3 {
        for b in 0..2 - a {
            if v[b] > v[b + 1] {
                v.swap(b, b + 1);
                sign = -sign;
            }
        }
    }
    if v[0] == v[1] || v[1] == v[2] {
        sign = 0;
    }
    ((v[0], v[1], v[2]), sign)
}

impl Wedge3 {
    pub fn zero(genus: u32) -> Self {
        Wedge3 {
            genus,
            terms: BTreeMap::new(),
        }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize, usize), Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, i: usize, j: usize, k: usize, c: Rational) {
        let (key, sign) = sort_triple(i, j, k);
        if sign != 0 {
            add_into(&mut self.terms, key, c * rat(sign));
            prune(&mut self.terms);
        }
    }

    pub fn basis(genus: u32, i: usize, j: usize, k: usize, c: Rational) -> Self {
        let mut t = Self::zero(genus);
        t.add_term(i, j, k, c);
        t
    }

    pub fn checked_add(&self, other: &Wedge3) -> Result<Wedge3> {
        check_genus(self.genus, other.genus)?;
        let mut out = self.clone();
        for (&key, c) in &other.terms {
            add_into(&mut out.terms, key, c.clone());
        }
        prune(&mut out.terms);
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Wedge3 {
        let mut out = Self::zero(self.genus);
        for (&k, x) in &self.terms {
            add_into(&mut out.terms, k, x * c);
        }
        prune(&mut out.terms);
        out
    }
}

impl fmt::Display for Wedge3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(&(i, j, k), c)| {
            (
                format!("{}∧{}∧{}", basis_name(i), basis_name(j), basis_name(k)),
                c,
            )
        });
        crate::homology::write_linear_combination(f, terms)
    }
}

/// `u ∧ v`.
pub fn wedge(u: &HVec, v: &HVec) -> Result<Wedge2> {
    check_genus(u.genus(), v.genus())?;
    let mut w = Wedge2::zero(u.genus());
    for (i, a) in u.terms() {
        for (j, b) in v.terms() {
            match i.cmp(&j) {
                std::cmp::Ordering::Less => add_into(&mut w.terms, (i, j), a * b),
                std::cmp::Ordering::Greater => add_into(&mut w.terms, (j, i), -(a * b)),
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    prune(&mut w.terms);
    Ok(w)
}

/// `(X∧Y)(Z) = (Z·X)Y − (Z·Y)X`, extended bilinearly.
pub fn act2(w: &Wedge2, z: &HVec) -> Result<HVec> {
    check_genus(w.genus, z.genus())?;
    let mut coords = vec![Rational::zero(); z.dim()];
    for (&(i, j), c) in &w.terms {
        let zi = z.pair_with_basis(i);
        let zj = z.pair_with_basis(j);
        coords[j] += c * zi;
        coords[i] -= c * zj;
    }
    HVec::from_coords(z.genus(), coords)
}

/// `u ∧ w` for `u ∈ H`, `w ∈ H∧H`.
pub fn wedge3(u: &HVec, w: &Wedge2) -> Result<Wedge3> {
    check_genus(u.genus(), w.genus)?;
    let mut t = Wedge3::zero(u.genus());
    for (i, a) in u.terms() {
        for (&(j, k), b) in &w.terms {
            let (key, sign) = sort_triple(i, j, k);
            if sign != 0 {
                add_into(&mut t.terms, key, a * b * rat(sign));
            }
        }
    }
    prune(&mut t.terms);
    Ok(t)
}

/// `(X∧u)(Z) = (Z·X)u − X∧(u(Z))`, extended linearly.
pub fn act3(t: &Wedge3, z: &HVec) -> Result<Wedge2> {
    check_genus(t.genus, z.genus())?;
    let genus = t.genus;
    let mut out = Wedge2::zero(genus);
    for (&(i, j, k), c) in &t.terms {
        let inner = Wedge2::basis(genus, j, k, c.clone());
        let zi = z.pair_with_basis(i);
        if !zi.is_zero() {
            out = out.checked_add(&inner.scale(&zi))?;
        }
        let moved = act2(&inner, z)?;
        let e_i = HVec::basis(genus, i);
        out = out.checked_add(&wedge(&e_i, &moved)?.neg())?;
    }
    Ok(out)
}

/// ω = Σ_j X_j ∧ Y_j.
pub fn omega(genus: u32) -> Wedge2 {
    let mut w = Wedge2::zero(genus);
    for k in 0..genus as usize {
        w.add_term(2 * k, 2 * k + 1, Rational::one());
    }
    w
}

/// `X∧Y ↦ XY − YX`.
pub fn embed2(w: &Wedge2, bound: usize) -> TruncTensor {
    let mut t = TruncTensor::zero(w.genus, bound);
    for (&(i, j), c) in &w.terms {
        t.add_term(vec![i, j], c.clone());
        t.add_term(vec![j, i], -c.clone());
    }
    t
}

/// `X∧Y∧Z ↦ XYZ + YZX + ZXY − XZY − ZYX − YXZ`.
pub fn embed3(w: &Wedge3, bound: usize) -> TruncTensor {
    let mut t = TruncTensor::zero(w.genus, bound);
    for (&(x, y, z), c) in &w.terms {
        for (word, sign) in [
            ([x, y, z], 1),
            ([y, z, x], 1),
            ([z, x, y], 1),
            ([x, z, y], -1),
            ([z, y, x], -1),
            ([y, x, z], -1),
        ] {
            t.add_term(word.to_vec(), c * rat(sign));
        }
    }
    t
}
