//! Rational first homology H = H₁(Σ_{g,1}; ℚ) with its intersection form,
//! and membership tests for the integer lattice spanned by two classes.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeMap, SerializeStruct, Serializer};

use crate::error::{check_genus, Error, Result};
use crate::word::Word;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Name of the `i`-th vector of the ordered basis `X1, Y1, X2, Y2, …`.
pub fn basis_name(i: usize) -> String {
    let kind = if i.is_multiple_of(2) { 'X' } else { 'Y' };
    format!("{kind}{}", i / 2 + 1)
}

/// Intersection number `e_i · e_j` of two basis vectors: `X_k·Y_k = 1`,
/// `Y_k·X_k = -1`, all other pairings zero.
pub fn basis_pairing(i: usize, j: usize) -> i64 {
    if i / 2 != j / 2 || i == j {
        0
    } else if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A homology class, stored as exact coordinates over `X1, Y1, …, Xg, Yg`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HVec {
    genus: u32,
    coords: Vec<Rational>,
}

impl HVec {
    pub fn zero(genus: u32) -> Self {
        HVec {
            genus,
            coords: vec![Rational::zero(); 2 * genus as usize],
        }
    }

    pub fn basis(genus: u32, i: usize) -> Self {
        let mut v = Self::zero(genus);
        v.coords[i] = Rational::one();
        v
    }

    /// `X_k` (1-based `k`).
    pub fn x(genus: u32, k: usize) -> Self {
        Self::basis(genus, 2 * (k - 1))
    }

    /// `Y_k` (1-based `k`).
    pub fn y(genus: u32, k: usize) -> Self {
        Self::basis(genus, 2 * (k - 1) + 1)
    }

    pub fn from_coords(genus: u32, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != 2 * genus as usize {
            return Err(Error::Invariant(format!(
                "expected {} coordinates, got {}",
                2 * genus,
                coords.len()
            )));
        }
        Ok(HVec { genus, coords })
    }

    pub fn from_ints(genus: u32, coords: &[i64]) -> Result<Self> {
        Self::from_coords(genus, coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> HVec {
        HVec {
            genus: self.genus,
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn checked_add(&self, other: &HVec) -> Result<HVec> {
        check_genus(self.genus, other.genus)?;
        Ok(HVec {
            genus: self.genus,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &HVec) -> Result<HVec> {
        self.checked_add(&-other)
    }

    /// `self · e_i` for the `i`-th basis vector.
    pub fn pair_with_basis(&self, i: usize) -> Rational {
        // v·X_k = -v_{Y_k}, v·Y_k = v_{X_k}
        if i.is_multiple_of(2) {
            -self.coords[i + 1].clone()
        } else {
            self.coords[i - 1].clone()
        }
    }

    /// True iff every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(Rational::is_integer)
    }

    /// Nonzero coordinates in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl Add for &HVec {
    type Output = HVec;
    fn add(self, rhs: &HVec) -> HVec {
        self.checked_add(rhs).expect("genus mismatch in HVec addition")
    }
}

impl Sub for &HVec {
    type Output = HVec;
    fn sub(self, rhs: &HVec) -> HVec {
        self.checked_sub(rhs).expect("genus mismatch in HVec subtraction")
    }
}

impl Neg for &HVec {
    type Output = HVec;
    fn neg(self) -> HVec {
        HVec {
            genus: self.genus,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for HVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear_combination(f, self.terms().map(|(i, c)| (basis_name(i), c)))
    }
}

/// Writes `c1 B1 + c2 B2 - …`, or `0` for an empty sum.
pub(crate) fn write_linear_combination<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a Rational)>,
) -> fmt::Result {
    let mut first = true;
    for (name, c) in terms {
        let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
        match (first, sign) {
            (true, "-") => write!(f, "-")?,
            (true, _) => {}
            (false, s) => write!(f, " {s} ")?,
        }
        first = false;
        if mag.is_one() {
            write!(f, "{name}")?;
        } else {
            write!(f, "({mag}){name}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// `{"X1": "1", "Y2": "-1/2"}`, zero entries omitted.
impl Serialize for HVec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<_> = self.terms().collect();
        let mut map = s.serialize_map(Some(terms.len()))?;
        for (i, c) in terms {
            map.serialize_entry(&basis_name(i), &c.to_string())?;
        }
        map.end()
    }
}

/// Homology class of a word: signed generator counts.
pub fn abelianize(w: &Word) -> HVec {
    let mut counts = vec![0i64; 2 * w.genus() as usize];
    for l in w.letters() {
        counts[l.basis_index()] += l.sign();
    }
    HVec::from_ints(w.genus(), &counts).expect("dimension matches genus")
}

/// The intersection form `u · v = Σ_i (u_{X_i} v_{Y_i} − u_{Y_i} v_{X_i})`.
pub fn intersection(u: &HVec, v: &HVec) -> Result<Rational> {
    check_genus(u.genus, v.genus)?;
    let mut acc = Rational::zero();
    for k in 0..u.genus as usize {
        let (xi, yi) = (2 * k, 2 * k + 1);
        acc += &u.coords[xi] * &v.coords[yi] - &u.coords[yi] * &v.coords[xi];
    }
    Ok(acc)
}

pub fn is_integral(v: &HVec) -> bool {
    v.is_integral()
}

/// Outcome of a lattice membership test; `coefficients` is present iff the
/// vector lies in `ℤu1 + ℤu2`, and then `v = m·u1 + n·u2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeWitness {
    pub coefficients: Option<(BigInt, BigInt)>,
}

impl LatticeWitness {
    pub fn member(&self) -> bool {
        self.coefficients.is_some()
    }

    fn yes(m: BigInt, n: BigInt) -> Self {
        LatticeWitness {
            coefficients: Some((m, n)),
        }
    }

    fn no() -> Self {
        LatticeWitness { coefficients: None }
    }
}

impl Serialize for LatticeWitness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LatticeWitness", 3)?;
        st.serialize_field("member", &self.member())?;
        let (m, n) = match &self.coefficients {
            Some((m, n)) => (Some(m.to_string()), Some(n.to_string())),
            None => (None, None),
        };
        st.serialize_field("m", &m)?;
        st.serialize_field("n", &n)?;
        st.end()
    }
}

fn to_int(r: &Rational) -> BigInt {
    debug_assert!(r.is_integer());
    r.to_integer()
}

/// Decides whether `v ∈ ℤu1 + ℤu2` for integral `u1`, `u2`.
pub fn lattice_member(v: &HVec, u1: &HVec, u2: &HVec) -> Result<LatticeWitness> {
    check_genus(v.genus, u1.genus)?;
    check_genus(v.genus, u2.genus)?;
    if !u1.is_integral() || !u2.is_integral() {
        return Err(Error::NonIntegralGenerator);
    }
    let n = v.dim();

    // rank 2: a nonzero 2x2 minor exists
    for i in 0..n {
        for j in (i + 1)..n {
            let det = &u1.coords[i] * &u2.coords[j] - &u1.coords[j] * &u2.coords[i];
            if det.is_zero() {
                continue;
            }
            let m = (&v.coords[i] * &u2.coords[j] - &v.coords[j] * &u2.coords[i]) / &det;
            let k = (&u1.coords[i] * &v.coords[j] - &u1.coords[j] * &v.coords[i]) / &det;
            let fits = (0..n).all(|r| &m * &u1.coords[r] + &k * &u2.coords[r] == v.coords[r]);
            if fits && m.is_integer() && k.is_integer() {
                return Ok(LatticeWitness::yes(m.to_integer(), k.to_integer()));
            }
            return Ok(LatticeWitness::no());
        }
    }

    if u1.is_zero() && u2.is_zero() {
        return Ok(if v.is_zero() {
            LatticeWitness::yes(BigInt::zero(), BigInt::zero())
        } else {
            LatticeWitness::no()
        });
    }

    // rank 1: u1 = p·u0, u2 = q·u0 with u0 primitive
    let seed = if u1.is_zero() { u2 } else { u1 };
    let content = seed
        .coords
        .iter()
        .map(to_int)
        .fold(BigInt::zero(), |g, c| g.gcd(&c));
    let pivot = seed
        .coords
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero generator");
    let mut u0: Vec<BigInt> = seed.coords.iter().map(|c| to_int(c) / &content).collect();
    if u0[pivot].is_negative() {
        u0.iter_mut().for_each(|c| *c = -&*c);
    }
    let along = |u: &HVec| -> BigInt { to_int(&u.coords[pivot]) / &u0[pivot] };
    let (p, q) = (along(u1), along(u2));

    let t = &v.coords[pivot] / Rational::from_integer(u0[pivot].clone());
    let parallel = (0..n).all(|r| &t * Rational::from_integer(u0[r].clone()) == v.coords[r]);
    if !parallel || !t.is_integer() {
        return Ok(LatticeWitness::no());
    }
    let t = t.to_integer();
    let egcd = p.extended_gcd(&q);
    let d = egcd.gcd.abs();
    if !(&t % &d).is_zero() {
        return Ok(LatticeWitness::no());
    }
    // p·x + q·y = ±d
    let scale = &t / &egcd.gcd;
    Ok(LatticeWitness::yes(egcd.x * &scale, egcd.y * &scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_word;

    fn h(coords: &[i64]) -> HVec {
        HVec::from_ints(coords.len() as u32 / 2, coords).unwrap()
    }

    fn check_witness(v: &HVec, u1: &HVec, u2: &HVec, w: &LatticeWitness) {
        if let Some((m, n)) = &w.coefficients {
            let mr = Rational::from_integer(m.clone());
            let nr = Rational::from_integer(n.clone());
            assert_eq!(&u1.scale(&mr) + &u2.scale(&nr), *v);
        }
    }

    #[test]
    fn abelianize_worked_example() {
        let a = parse_word("x1 x2 y2 x2^-1", 2).unwrap();
        let b = parse_word("y2 x1^-1", 2).unwrap();
        assert_eq!(abelianize(&a), h(&[1, 0, 0, 1]));
        assert_eq!(abelianize(&b), h(&[-1, 0, 0, 1]));
        assert!(abelianize(&parse_word("zeta", 4).unwrap()).is_zero());
    }

    #[test]
    fn intersection_form() {
        assert_eq!(intersection(&HVec::x(1, 1), &HVec::y(1, 1)).unwrap(), rat(1));
        assert_eq!(intersection(&HVec::y(2, 2), &HVec::x(2, 2)).unwrap(), rat(-1));
        assert_eq!(intersection(&HVec::x(2, 1), &HVec::y(2, 2)).unwrap(), rat(0));
        assert_eq!(intersection(&h(&[1, 0, 0, 1]), &h(&[-1, 0, 0, 1])).unwrap(), rat(0));
        assert!(intersection(&HVec::x(1, 1), &HVec::x(2, 1)).is_err());
        for i in 0..6 {
            for j in 0..6 {
                let b = intersection(&HVec::basis(3, i), &HVec::basis(3, j)).unwrap();
                assert_eq!(b, rat(basis_pairing(i, j)));
                assert_eq!(HVec::basis(3, i).pair_with_basis(j), b);
            }
        }
    }

    #[test]
    fn integrality() {
        assert!(HVec::x(2, 1).is_integral());
        assert!(!HVec::x(2, 1).scale(&ratio(1, 2)).is_integral());
    }

    #[test]
    fn lattice_worked_example_is_not_member() {
        let w = lattice_member(&HVec::x(2, 1), &h(&[1, 0, 0, 1]), &h(&[-1, 0, 0, 1])).unwrap();
        assert!(!w.member());
    }

    #[test]
    fn lattice_simple_cases() {
        let u1 = h(&[1, 2, 0, 1]);
        let u2 = h(&[0, 1, 3, -1]);
        let w = lattice_member(&HVec::zero(2), &u1, &u2).unwrap();
        assert_eq!(w.coefficients, Some((BigInt::from(0), BigInt::from(0))));
        let v = &u1.scale(&rat(3)) - &u2.scale(&rat(2));
        let w = lattice_member(&v, &u1, &u2).unwrap();
        assert_eq!(w.coefficients, Some((BigInt::from(3), BigInt::from(-2))));
    }

    #[test]
    fn lattice_rank_one_uses_gcd() {
        let u0 = h(&[1, -2, 0, 3]);
        let u1 = u0.scale(&rat(4));
        let u2 = u0.scale(&rat(6));
        // ℤ·4u0 + ℤ·6u0 = 2ℤ·u0
        for t in -7..=7 {
            let v = u0.scale(&rat(t));
            let w = lattice_member(&v, &u1, &u2).unwrap();
            assert_eq!(w.member(), t % 2 == 0, "t = {t}");
            check_witness(&v, &u1, &u2, &w);
        }
        let half = u0.scale(&ratio(1, 2));
        assert!(!lattice_member(&half, &u1, &u2).unwrap().member());
        // one generator zero: gcd(0, q) = |q|
        let z = HVec::zero(2);
        let w = lattice_member(&u0.scale(&rat(-6)), &z, &u2).unwrap();
        assert_eq!(w.coefficients.as_ref().map(|c| c.1.clone()), Some(BigInt::from(-1)));
        check_witness(&u0.scale(&rat(-6)), &z, &u2, &w);
        assert!(!lattice_member(&u0.scale(&rat(3)), &u1, &z).unwrap().member());
        // not parallel
        assert!(!lattice_member(&HVec::x(2, 2), &u1, &u2).unwrap().member());
    }

    #[test]
    fn lattice_rank_zero() {
        let z = HVec::zero(1);
        assert!(lattice_member(&z, &z, &z).unwrap().member());
        assert!(!lattice_member(&HVec::x(1, 1), &z, &z).unwrap().member());
    }

    #[test]
    fn lattice_errors() {
        let half = HVec::x(1, 1).scale(&ratio(1, 2));
        assert_eq!(
            lattice_member(&HVec::x(1, 1), &half, &HVec::y(1, 1)),
            Err(Error::NonIntegralGenerator)
        );
        assert!(lattice_member(&HVec::x(1, 1), &HVec::x(2, 1), &HVec::x(1, 1)).is_err());
    }

    #[test]
    fn serialization() {
        let v = &HVec::x(2, 1) - &HVec::y(2, 2).scale(&ratio(1, 2));
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"X1":"1","Y2":"-1/2"}"#);
        assert_eq!(v.to_string(), "X1 - (1/2)Y2");
        assert_eq!(HVec::zero(1).to_string(), "0");
    }
}
