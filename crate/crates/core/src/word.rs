//! Elements of the free group π₁(Σ_{g,1}, p) written in the symplectic
//! generators `x1, y1, …, xg, yg`.
//!
//! Words are always stored freely reduced and carry their genus; mixing
//! genera is an error rather than an implicit promotion.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_genus, Error, Result};

/// Which half of a symplectic pair a generator belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    X,
    Y,
}

/// A generator or its inverse: `x_i^{±1}` or `y_i^{±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub kind: GenKind,
    /// 1-based handle index.
    pub index: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn x(index: u32) -> Self {
        Letter {
            kind: GenKind::X,
            index,
            inverse: false,
        }
    }

    pub fn y(index: u32) -> Self {
        Letter {
            kind: GenKind::Y,
            index,
            inverse: false,
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }

    /// Position of the letter's homology class in the ordered basis
    /// `X1, Y1, X2, Y2, …`.
    pub fn basis_index(&self) -> usize {
        let base = 2 * (self.index as usize - 1);
        match self.kind {
            GenKind::X => base,
            GenKind::Y => base + 1,
        }
    }

    /// `+1` for a generator, `-1` for an inverse.
    pub fn sign(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.kind == other.kind && self.index == other.index && self.inverse != other.inverse
    }

    fn generator_name(&self) -> String {
        let k = match self.kind {
            GenKind::X => 'x',
            GenKind::Y => 'y',
        };
        format!("{k}{}", self.index)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.generator_name())
        } else {
            write!(f, "{}", self.generator_name())
        }
    }
}

/// A freely reduced word in the symplectic generators of a fixed genus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    genus: u32,
    letters: Vec<Letter>,
}

/// Stack-based free reduction.
pub fn free_reduce(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        match out.last() {
            Some(top) if top.cancels(&l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

impl Word {
    /// The identity element.
    pub fn identity(genus: u32) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidGenus);
        }
        Ok(Word {
            genus,
            letters: Vec::new(),
        })
    }

    /// Builds the reduced word of an arbitrary letter sequence.
    pub fn from_letters(genus: u32, letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidGenus);
        }
        let letters: Vec<Letter> = letters.into_iter().collect();
        if let Some(bad) = letters.iter().find(|l| l.index == 0 || l.index > genus) {
            return Err(Error::parse(
                0,
                bad.generator_name(),
                format!("generator index must be in 1..={genus}"),
            ));
        }
        Ok(Word {
            genus,
            letters: free_reduce(letters),
        })
    }

    /// The single-letter word `x_i`.
    pub fn x(genus: u32, index: u32) -> Result<Self> {
        Self::from_letters(genus, [Letter::x(index)])
    }

    /// The single-letter word `y_i`.
    pub fn y(genus: u32, index: u32) -> Result<Self> {
        Self::from_letters(genus, [Letter::y(index)])
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Result<Word> {
        check_genus(self.genus, other.genus)?;
        Ok(Word {
            genus: self.genus,
            letters: free_reduce(self.letters.iter().chain(other.letters.iter()).copied()),
        })
    }

    pub fn invert(&self) -> Word {
        Word {
            genus: self.genus,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let reps = k.unsigned_abs() as usize;
        let mut letters = Vec::with_capacity(base.letters.len() * reps);
        for _ in 0..reps {
            letters.extend_from_slice(&base.letters);
        }
        Word {
            genus: self.genus,
            letters: free_reduce(letters),
        }
    }

    /// `self · h · self⁻¹`.
    pub fn conjugate(&self, h: &Word) -> Result<Word> {
        self.multiply(h)?.multiply(&self.invert())
    }

    /// `[self, h] = self · h · self⁻¹ · h⁻¹`.
    pub fn commutator(&self, h: &Word) -> Result<Word> {
        self.multiply(h)?
            .multiply(&self.invert())?
            .multiply(&h.invert())
    }

    /// Canonical text: runs of a repeated letter are written `g^k`, the
    /// identity is `1`, terms are separated by single spaces.
    pub fn format(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let exp = run as i64 * l.sign();
            if exp == 1 {
                write!(f, "{}", l.generator_name())?;
            } else {
                write!(f, "{}^{}", l.generator_name(), exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

/// The boundary class ζ = ∏_{j=1}^{g} [x_j, y_j].
pub fn boundary_word(genus: u32) -> Result<Word> {
    if genus == 0 {
        return Err(Error::InvalidGenus);
    }
    let letters = (1..=genus).flat_map(|j| {
        [
            Letter::x(j),
            Letter::y(j),
            Letter::x(j).inv(),
            Letter::y(j).inv(),
        ]
    });
    Word::from_letters(genus, letters)
}

/// Draws `length` letters uniformly from the `4g` signed generators and
/// reduces the result, so the word may come out shorter than `length`.
pub fn random_word_with<R: Rng + ?Sized>(genus: u32, length: usize, rng: &mut R) -> Word {
    let genus = genus.max(1);
    let letters = (0..length).map(|_| {
        let pick = rng.gen_range(0..4 * genus);
        let index = pick / 4 + 1;
        let base = if pick % 2 == 0 {
            Letter::x(index)
        } else {
            Letter::y(index)
        };
        if (pick / 2) % 2 == 1 {
            base.inv()
        } else {
            base
        }
    });
    Word {
        genus,
        letters: free_reduce(letters),
    }
}

/// Deterministic random word for a fixed seed.
pub fn random_word(genus: u32, length: usize, seed: u64) -> Word {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_word_with(genus, length, &mut rng)
}

/// Length of each factor `u`, `v` drawn for a random commutator `[u, v]`.
pub const COMMUTATOR_FACTOR_LEN: usize = 6;

/// Product of `count` commutators `[u_k, v_k]` whose factors are random
/// words of length [`COMMUTATOR_FACTOR_LEN`], drawn in order `u_1, v_1, u_2, …`.
pub fn random_commutator_element_with<R: Rng + ?Sized>(genus: u32, count: usize, rng: &mut R) -> Word {
    let genus = genus.max(1);
    let mut acc = Word {
        genus,
        letters: Vec::new(),
    };
    for _ in 0..count {
        let u = random_word_with(genus, COMMUTATOR_FACTOR_LEN, rng);
        let v = random_word_with(genus, COMMUTATOR_FACTOR_LEN, rng);
        let c = u.commutator(&v).expect("same genus");
        acc = acc.multiply(&c).expect("same genus");
    }
    acc
}

pub fn random_commutator_element(genus: u32, count: usize, seed: u64) -> Word {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_commutator_element_with(genus, count, &mut rng)
}
