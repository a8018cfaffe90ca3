//! Seeded property suites over every module, used by `twistcheck selftest`.
//!
//! Each check draws its instances from its own ChaCha stream derived from
//! the seed, so a run is reproducible check by check.

use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ell::{ell, ell_of_letters, obstruction_vector};
use crate::homology::{abelianize, intersection, lattice_member, rat, HVec, Rational};
use crate::obstruction::{analyze, twist_consistency};
use crate::parse::parse_word;
use crate::tensor::{derive, johnson_twist, l_theta, l_theta_2, theta0, TruncTensor};
use crate::wedge::{act2, act3, embed2, embed3, omega, wedge, wedge3, Wedge2};
use crate::word::{boundary_word, random_word_with, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestSummary {
    pub seed: u64,
    pub iterations: usize,
    pub checks: Vec<CheckResult>,
}

impl SelftestSummary {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }

    pub fn total_passed(&self) -> usize {
        self.checks.iter().map(|c| c.passed).sum()
    }

    pub fn total_failed(&self) -> usize {
        self.checks.iter().map(|c| c.failed).sum()
    }
}

impl fmt::Display for SelftestSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.failed == 0 { "ok  " } else { "FAIL" };
            writeln!(f, "{status} {:<40} {:>6} passed {:>4} failed", c.name, c.passed, c.failed)?;
            if let Some(msg) = &c.first_failure {
                writeln!(f, "     first failure: {msg}")?;
            }
        }
        write!(
            f,
            "seed {} iterations {}: {} passed, {} failed",
            self.seed,
            self.iterations,
            self.total_passed(),
            self.total_failed()
        )
    }
}

type CheckFn = fn(&mut ChaCha8Rng) -> Result<(), String>;

/// Runs every check `iterations` times.
pub fn run(seed: u64, iterations: usize) -> SelftestSummary {
    let checks: Vec<CheckResult> = CHECKS
        .iter()
        .enumerate()
        .map(|(k, &(name, check))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((k as u64 + 1) << 32));
            let mut result = CheckResult {
                name,
                passed: 0,
                failed: 0,
                first_failure: None,
            };
            for _ in 0..iterations {
                match check(&mut rng) {
                    Ok(()) => result.passed += 1,
                    Err(msg) => {
                        result.failed += 1;
                        result.first_failure.get_or_insert(msg);
                    }
                }
            }
            result
        })
        .collect();
    SelftestSummary {
        seed,
        iterations,
        checks,
    }
}

const CHECKS: &[(&str, CheckFn)] = &[
    ("word: associativity and inverses", word_group_laws),
    ("word: parse/format round trip", word_round_trip),
    ("word: free reduction is confluent", word_confluence),
    ("homology: abelianization homomorphism", homology_homomorphism),
    ("homology: intersection antisymmetric", homology_antisymmetry),
    ("homology: lattice vs exhaustive scan", homology_lattice_scan),
    ("wedge: act2 on simple wedges", wedge_act2_formula),
    ("wedge: omega acts as -id", wedge_omega),
    ("wedge: act3 formula", wedge_act3_formula),
    ("wedge: actions match tensor derivations", wedge_vs_tensor),
    ("ell: cocycle and conjugation identities", ell_identities),
    ("ell: invariance under trivial insertions", ell_insertion),
    ("ell: half-integrality", ell_half_integral),
    ("tensor: associativity and log/exp", tensor_algebra),
    ("tensor: cyclic operators", tensor_cyclic),
    ("tensor: theta0 is multiplicative mod deg 3", tensor_theta_hom),
    ("tensor: Leibniz rule", tensor_leibniz),
    ("tensor: L invariance and degree-3 dual path", tensor_l_theta),
    ("tensor: L2 derivation on wedges", tensor_l2_derivation),
    ("tensor: twist degree one classical formula", tensor_twist_degree_one),
    ("obstruction: twist cross-check", obstruction_twist),
    ("obstruction: verdict conjugation invariance", obstruction_conjugation),
    ("obstruction: dependent classes inconclusive", obstruction_dependent),
];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: fmt::Display>(err: E) -> String {
    err.to_string()
}

fn genus(rng: &mut ChaCha8Rng) -> u32 {
    rng.gen_range(1..=3)
}

fn word(rng: &mut ChaCha8Rng, genus: u32) -> Word {
    let len = rng.gen_range(0..=20);
    random_word_with(genus, len, rng)
}

/// A random rational vector with denominators up to 3.
fn qvec(rng: &mut ChaCha8Rng, genus: u32) -> HVec {
    let coords = (0..2 * genus)
        .map(|_| crate::homology::ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
        .collect();
    HVec::from_coords(genus, coords).expect("dimension")
}

fn qwedge(rng: &mut ChaCha8Rng, genus: u32) -> Wedge2 {
    let n = 2 * genus as usize;
    let mut w = Wedge2::zero(genus);
    for _ in 0..rng.gen_range(0..=4) {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        w.add_term(i, j, crate::homology::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2)));
    }
    w
}

/// Random pair with zero algebraic intersection (rejection sampling).
pub fn random_isotropic_pair<R: Rng + ?Sized>(rng: &mut R, genus: u32, max_len: usize) -> (Word, Word) {
    loop {
        let la = rng.gen_range(0..=max_len);
        let a = random_word_with(genus, la, rng);
        let lb = rng.gen_range(0..=max_len);
        let b = random_word_with(genus, lb, rng);
        if intersection(&abelianize(&a), &abelianize(&b)).map(|x| x.is_zero()).unwrap_or(false) {
            return (a, b);
        }
    }
}

/// A generator `x_i^{±1}` or `y_i^{±1}` conjugated by a random word.
pub fn random_conjugated_generator<R: Rng + ?Sized>(rng: &mut R, genus: u32, conj_len: usize) -> Word {
    let index = rng.gen_range(1..=genus);
    let mut letter = if rng.gen_bool(0.5) { Letter::x(index) } else { Letter::y(index) };
    if rng.gen_bool(0.5) {
        letter = letter.inv();
    }
    let g = Word::from_letters(genus, [letter]).expect("index in range");
    let c = random_word_with(genus, conj_len, rng);
    c.conjugate(&g).expect("same genus")
}

fn word_group_laws(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = genus(rng);
    let (u, v, w) = (word(rng, g), word(rng, g), word(rng, g));
    let lhs = u.multiply(&v).and_then(|x| x.multiply(&w)).map_err(e)?;
    let rhs = v.multiply(&w).and_then(|x| u.multiply(&x)).map_err(e)?;
    ensure(lhs == rhs, || format!("associativity fails for {u} | {v} | {w}"))?;
    let one = Word::identity(g).map_err(e)?;
    ensure(u.multiply(&one).map_err(e)? == u && one.multiply(&u).map_err(e)? == u, || {
        format!("identity fails for {u}")
    })?;
    ensure(u.multiply(&u.invert()).map_err(e)?.is_identity(), || format!("right inverse fails for {u}"))?;
    ensure(u.invert().multiply(&u).map_err(e)?.is_identity(), || format!("left inverse fails for {u}"))?;
    ensure(u.invert().invert() == u, || format!("double inverse fails for {u}"))?;
    let c = u.commutator(&v).map_err(e)?;
    ensure(abelianize(&c).is_zero(), || format!("commutator [{u},{v}] not null-homologous"))
}

fn word_round_trip(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = genus(rng);
    let w = word(rng, g);
    let text = w.to_string();
    let back = parse_word(&text, g).map_err(e)?;
    ensure(back == w, || format!("{text} reparsed as {back}"))?;
    ensure(back.to_string() == text, || format!("format not idempotent on {text}"))?;
    ensure(w.letters().iter().all(|l| l.index >= 1 && l.index <= g), || {
        format!("letter out of range in {w}")
    })
}

/// Reduction by repeatedly deleting a random cancelling adjacent pair.
pub fn reduce_by_pair_deletion<R: Rng + ?Sized>(mut letters: Vec<Letter>, rng: &mut R) -> Vec<Letter> {
    loop {
        let spots: Vec<usize> = (0..letters.len().saturating_sub(1))
            .filter(|&i| letters[i] == letters[i + 1].inv())
            .collect();
        if spots.is_empty() {
            return letters;
        }
        let i = spots[rng.gen_range(0..spots.len())];
        letters.drain(i..i + 2);
    }
}

fn word_confluence(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = genus(rng);
    let n = rng.gen_range(0..=30);
    // small alphabet so cancellations are frequent
    let letters: Vec<Letter> = (0..n)
        .map(|_| {
            let l = if rng.gen_bool(0.5) { Letter::x(1) } else { Letter::y(g) };
            if rng.gen_bool(0.5) {
                l.inv()
            } else {
                l
            }
        })
        .collect();
    let scan = Word::from_letters(g, letters.clone()).map_err(e)?;
    let deleted = reduce_by_pair_deletion(letters, rng);
    ensure(scan.letters() == deleted.as_slice(), || format!("reductions disagree on {scan}"))
}

fn homology_homomorphism(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = genus(rng);
    let (u, v) = (word(rng, g), word(rng, g));
    let uv = u.multiply(&v).map_err(e)?;
    ensure(abelianize(&uv) == &abelianize(&u) + &abelianize(&v), || {
        format!("|uv| != |u| + |v| for {u}, {v}")
    })?;
    ensure(abelianize(&u.invert()) == -&abelianize(&u), || format!("|u^-1| != -|u| for {u}"))?;
    ensure(abelianize(&u).is_integral(), || format!("|{u}| not integral"))
}

fn homology_antisymmetry(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = genus(rng);
    let (u, v, w) = (qvec(rng, g), qvec(rng, g), qvec(rng, g));
    let uv = intersection(&u, &v).map_err(e)?;
    let vu = intersection(&v, &u).map_err(e)?;
    ensure(uv == -vu, || format!("u·v != -v·u for {u}, {v}"))?;
    ensure(intersection(&u, &u).map_err(e)?.is_zero(), || format!("u·u != 0 for {u}"))?;
    let lin = intersection(&(&u + &w), &v).map_err(e)?;
    ensure(lin == uv + intersection(&w, &v).map_err(e)?, || "not additive".into())
}

/// Exhaustive search for `v = m·u1 + n·u2` with `|m|, |n| ≤ bound`.
pub fn lattice_scan(v: &HVec, u1: &HVec, u2: &HVec, bound: i64) -> Option<(i64, i64)> {
    for m in -bound..=bound {
        for n in -bound..=bound {
            if &u1.scale(&rat(m)) + &u2.scale(&rat(n)) == *v {
                return Some((m, n));
            }
        }
    }
    None
}

/// Random lattice instance covering ranks 0, 1 and 2.
pub fn random_lattice_instance<R: Rng + ?Sized>(rng: &mut R) -> (HVec, HVec, HVec) {
    let g = rng.gen_range(1..=2);
    let small = |rng: &mut R| -> HVec {
        let coords: Vec<i64> = (0..2 * g).map(|_| rng.gen_range(-3..=3)).collect();
        HVec::from_ints(g, &coords).expect("dimension")
    };
    let (u1, u2) = match rng.gen_range(0..6) {
        0 => (HVec::zero(g), HVec::zero(g)),
        1 => {
            let u = small(rng);
            (u.scale(&rat(rng.gen_range(-3..=3))), u.scale(&rat(rng.gen_range(-3..=3))))
        }
        2 => (small(rng), HVec::zero(g)),
        _ => (small(rng), small(rng)),
    };
    let v = match rng.gen_range(0..3) {
        0 => {
            let (m, n) = (rng.gen_range(-20..=20), rng.gen_range(-20..=20));
            &u1.scale(&rat(m)) + &u2.scale(&rat(n))
        }
        1 => {
            let (m, n) = (rng.gen_range(-6..=6), rng.gen_range(-6..=6));
            let base = &u1.scale(&rat(m)) + &u2.scale(&rat(n));
            &base + &HVec::basis(g, rng.gen_range(0..2 * g as usize)).scale(&crate::homology::ratio(1, rng.gen_range(1..=2)))
        }
        _ => {
            let (m, n) = (rng.gen_range(-6..=6), rng.gen_range(-6..=6));
            (&u1.scale(&rat(m)) + &u2.scale(&rat(n))).scale(&crate::homology::ratio(1, 2))
        }
    };
    (v, u1, u2)
}

/// Compares `lattice_member` with the exhaustive scan; `Ok(false)` marks an
/// instance the scan cannot decide (witness outside the box).
pub fn lattice_agrees_with_scan(v: &HVec, u1: &HVec, u2: &HVec, bound: i64) -> Result<bool, String> {
    let w = lattice_member(v, u1, u2).map_err(e)?;
    let scan = lattice_scan(v, u1, u2, bound);
    if let Some((m, n)) = &w.coefficients {
        let rebuilt = &u1.scale(&Rational::from_integer(m.clone())) + &u2.scale(&Rational::from_integer(n.clone()));
        ensure(rebuilt == *v, || format!("witness ({m},{n}) does not reproduce {v}"))?;
    }
    match (w.member(), scan) {
        (true, Some(_)) | (false, None) => Ok(true),
        (false, Some(mn)) => Err(format!("scan found {mn:?} for {v} in <{u1}, {u2}> but member=false")),
        (true, None) => Ok(false),
    }
}

fn homology_lattice_scan(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (v, u1, u2) = random_lattice_instance(rng);
    lattice_agrees_with_scan(&v, &u1, &u2, 20)?;
    let swapped = lattice_member(&v, &u2, &u1).map_err(e)?;
    ensure(swapped.member() == lattice_member(&v, &u1, &u2).map_err(e)?.member(), || {
        format!("membership not symmetric for {v}")
    })
}

fn wedge_act2_formula(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = genus(rng);
    let (u, v, z) = (qvec(rng, g), qvec(rng, g), qvec(rng, g));
    let lhs = act2(&wedge(&u, &v).map_err(e)?, &z).map_err(e)?;
    let zu = intersection(&z, &u).map_err(e)?;
    let zv = intersection(&z, &v).map_err(e)?;
    let rhs = &v.scale(&zu) - &u.scale(&zv);
    ensure(lhs == rhs, || format!("(u∧v)(z) mismatch for u={u}, v={v}, z={z}"))
}

fn wedge_omega(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = rng.gen_range(1..=5);
    let v = qvec(rng, g);
    ensure(act2(&omega(g), &v).map_err(e)? == -&v, || format!("ω({v}) != -{v}"))?;
    ensure(ell(&boundary_word(g).map_err(e)?) == omega(g), || format!("ℓ(ζ) != ω at genus {g}"))
}

fn wedge_act3_formula(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = genus(rng);
    let (u, z) = (qvec(rng, g), qvec(rng, g));
    let w = qwedge(rng, g);
    let lhs = act3(&wedge3(&u, &w).map_err(e)?, &z).map_err(e)?;
    let zu = intersection(&z, &u).map_err(e)?;
    let rhs = w.scale(&zu).checked_add(&wedge(&u, &act2(&w, &z).map_err(e)?).map_err(e)?.neg()).map_err(e)?;
    ensure(lhs == rhs, || format!("(u∧w)(z) mismatch for u={u}, w={w}, z={z}"))?;
    // alternating under swapping the first two factors
    let (a, b) = (qvec(rng, g), qvec(rng, g));
    let ab = wedge3(&a, &wedge(&b, &u).map_err(e)?).map_err(e)?;
    let ba = wedge3(&b, &wedge(&a, &u).map_err(e)?).map_err(e)?;
    ensure(ab == ba.scale(&rat(-1)), || "wedge3 not alternating".into())
}

fn wedge_vs_tensor(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = genus(rng);
    let w = qwedge(rng, g);
    let z = qvec(rng, g);
    let zt = TruncTensor::from_hvec(&z, 3);
    let via_tensor = derive(&embed2(&w, 3), &zt).map_err(e)?;
    let direct = TruncTensor::from_hvec(&act2(&w, &z).map_err(e)?, 3);
    ensure(via_tensor == direct, || format!("act2 vs tensor mismatch for {w} on {z}"))?;
    let t = wedge3(&qvec(rng, g), &w).map_err(e)?;
    let via_tensor3 = derive(&embed3(&t, 3), &zt).map_err(e)?;
    let direct3 = embed2(&act3(&t, &z).map_err(e)?, 3);
    ensure(via_tensor3 == direct3, || format!("act3 vs tensor mismatch for {t} on {z}"))
}

fn ell_identities(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = genus(rng);
    let (u, v) = (word(rng, g), word(rng, g));
    let (au, av) = (abelianize(&u), abelianize(&v));
    let half = crate::homology::ratio(1, 2);
    let uv = u.multiply(&v).map_err(e)?;
    let cocycle = ell(&u).checked_add(&ell(&v)).and_then(|x| x.checked_add(&wedge(&au, &av)?.scale(&half)));
    ensure(ell(&uv) == cocycle.map_err(e)?, || format!("cocycle fails for {u}, {v}"))?;
    ensure(ell(&u.invert()) == ell(&u).neg(), || format!("ℓ(u^-1) != -ℓ(u) for {u}"))?;
    let conj = ell(&v).checked_add(&wedge(&au, &av).map_err(e)?).map_err(e)?;
    ensure(ell(&u.conjugate(&v).map_err(e)?) == conj, || format!("conjugation rule fails for {u}, {v}"))?;
    ensure(ell(&u.commutator(&v).map_err(e)?) == wedge(&au, &av).map_err(e)?, || {
        format!("commutator rule fails for {u}, {v}")
    })
}

fn ell_insertion(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = genus(rng);
    let w = word(rng, g);
    let mut letters = w.letters().to_vec();
    for _ in 0..rng.gen_range(1..=5) {
        let pos = rng.gen_range(0..=letters.len());
        let s = random_word_with(g, 1, rng).letters()[0];
        letters.splice(pos..pos, [s, s.inv()]);
    }
    ensure(ell_of_letters(g, &letters) == ell(&w), || format!("insertion changes ℓ({w})"))
}

fn ell_half_integral(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = genus(rng);
    let w = word(rng, g);
    ensure(ell(&w).is_half_integral(), || format!("ℓ({w}) not half-integral"))?;
    let c = random_conjugated_generator(rng, g, 6);
    let ac = abelianize(&c);
    let image = act2(&ell(&c), &ac).map_err(e)?;
    ensure(
        wedge(&ac, &image).map_err(e)?.is_zero(),
        || format!("ℓ(c)(|c|) not parallel to |c| for {c}"),
    )
}

fn rand_tensor(rng: &mut ChaCha8Rng, genus: u32, bound: usize, constant: i64) -> TruncTensor {
    let n = 2 * genus as usize;
    let mut t = TruncTensor::scalar(genus, bound, rat(constant));
    for _ in 0..rng.gen_range(0..=5) {
        let deg = rng.gen_range(1..=bound);
        let w: Vec<usize> = (0..deg).map(|_| rng.gen_range(0..n)).collect();
        t.add_term(w, crate::homology::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3)));
    }
    t
}

fn tensor_algebra(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = rng.gen_range(1..=2);
    let (a, b, c) = (rand_tensor(rng, g, 3, 1), rand_tensor(rng, g, 3, 0), rand_tensor(rng, g, 3, 2));
    let l = a.mul(&b).and_then(|x| x.mul(&c)).map_err(e)?;
    let r = b.mul(&c).and_then(|x| a.mul(&x)).map_err(e)?;
    ensure(l == r, || "tensor product not associative".into())?;
    let one = TruncTensor::one(g, 3);
    ensure(a.mul(&one).map_err(e)? == a && one.mul(&a).map_err(e)? == a, || "unit law fails".into())?;
    ensure(a.log().and_then(|x| x.exp()).map_err(e)? == a, || format!("exp(log({a})) != {a}"))?;
    ensure(b.exp().and_then(|x| x.log()).map_err(e)? == b, || format!("log(exp({b})) != {b}"))
}

fn tensor_cyclic(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = rng.gen_range(1..=2);
    let t = rand_tensor(rng, g, 3, 1);
    for k in 1..=3 {
        let part = t.degree_part(k).map_err(e)?;
        let mut r = part.clone();
        for _ in 0..k {
            r = r.cyclic_nu();
        }
        ensure(r == part, || format!("ν^{k} != id on degree {k}"))?;
    }
    let lhs = t.cyclic_nu().sub(&t).map_err(e)?.cyclic_n();
    ensure(lhs.is_zero(), || "N∘(ν - id) != 0".into())
}

fn tensor_theta_hom(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = genus(rng);
    let (u, v) = (word(rng, g), word(rng, g));
    let uv = u.multiply(&v).map_err(e)?;
    let lhs = theta0(&uv, 2).map_err(e)?;
    let rhs = theta0(&u, 2).and_then(|a| a.mul(&theta0(&v, 2)?)).map_err(e)?;
    ensure(lhs == rhs, || format!("θ₀ not multiplicative for {u}, {v}"))?;
    // the logarithm recovers |w| + ℓ(w) through degree 2
    let log = theta0(&u, 2).and_then(|t| t.log()).map_err(e)?;
    let expect = TruncTensor::from_hvec(&abelianize(&u), 2).add(&embed2(&ell(&u), 2)).map_err(e)?;
    ensure(log == expect, || format!("log θ₀({u}) mismatch"))
}

fn tensor_leibniz(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = rng.gen_range(1..=2);
    let mut h = rand_tensor(rng, g, 3, 0);
    let (u, v) = (rand_tensor(rng, g, 3, 1), rand_tensor(rng, g, 3, 0));
    let leibniz = |h: &TruncTensor| -> Result<(TruncTensor, TruncTensor), String> {
        let lhs = derive(h, &u.mul(&v).map_err(e)?).map_err(e)?;
        let rhs = derive(h, &u)
            .and_then(|du| du.mul(&v))
            .and_then(|a| a.add(&u.mul(&derive(h, &v)?)?))
            .map_err(e)?;
        Ok((lhs, rhs))
    };
    // a degree-1 part of h lowers degree, so truncation hides one degree
    let (lhs, rhs) = leibniz(&h)?;
    ensure(lhs.truncate(2) == rhs.truncate(2), || "Leibniz rule fails below the bound".into())?;
    h = h.sub(&h.degree_part(1).map_err(e)?).map_err(e)?;
    let (lhs, rhs) = leibniz(&h)?;
    ensure(lhs == rhs, || "Leibniz rule fails for h of degree >= 2".into())
}

fn tensor_l_theta(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = genus(rng);
    let a = word(rng, g);
    let c = word(rng, g);
    let l = l_theta(&a, 3).map_err(e)?;
    ensure(l.degree_part(2).map_err(e)? == l_theta_2(&a, 3).map_err(e)?, || format!("L₂({a}) != |a||a|"))?;
    let l3 = embed3(&wedge3(&abelianize(&a), &ell(&a)).map_err(e)?, 3);
    ensure(l.degree_part(3).map_err(e)? == l3, || format!("L₃({a}) != |a|∧ℓ(a)"))?;
    ensure(l_theta(&a.invert(), 3).map_err(e)? == l, || format!("L({a}^-1) != L({a})"))?;
    ensure(l_theta(&c.conjugate(&a).map_err(e)?, 3).map_err(e)? == l, || {
        format!("L not conjugation invariant for {a} by {c}")
    })
}

fn tensor_l2_derivation(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = genus(rng);
    let a = word(rng, g);
    let u = qwedge(rng, g);
    let abs_a = abelianize(&a);
    let l2 = l_theta_2(&a, 3).map_err(e)?;
    let once = derive(&l2, &embed2(&u, 3)).map_err(e)?;
    let expect = embed2(&wedge(&abs_a, &act2(&u, &abs_a).map_err(e)?).map_err(e)?.neg(), 3);
    ensure(once == expect, || format!("L₂({a})({u}) mismatch"))?;
    ensure(derive(&l2, &once).map_err(e)?.is_zero(), || format!("L₂({a})² does not kill {u}"))
}

fn tensor_twist_degree_one(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = genus(rng);
    let a = word(rng, g);
    for i in 0..2 * g as usize {
        let x = HVec::basis(g, i);
        let out = johnson_twist(&a, &TruncTensor::from_hvec(&x, 3)).map_err(e)?;
        let classical = crate::tensor::classical_twist_on_h(&a, &x).map_err(e)?;
        ensure(out.degree_part(1).map_err(e)? == TruncTensor::from_hvec(&classical, 3), || {
            format!("twist along {a} on basis {i} differs from the classical formula")
        })?;
    }
    Ok(())
}

fn obstruction_twist(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = genus(rng);
    let (a, b) = random_isotropic_pair(rng, g, 12);
    let check = twist_consistency(g, &a, &b).map_err(e)?;
    ensure(check.consistent, || format!("twist cross-check fails for a={a}, b={b}:\n{check}"))
}

fn obstruction_conjugation(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = genus(rng);
    let (a, b) = (word(rng, g), word(rng, g));
    let (c, d) = (word(rng, g), word(rng, g));
    let base = analyze(g, &a, &b).map_err(e)?;
    let moved = analyze(g, &c.conjugate(&a).map_err(e)?, &d.conjugate(&b).map_err(e)?).map_err(e)?;
    base.check_invariants().map_err(e)?;
    ensure(base.verdict == moved.verdict, || {
        format!("verdict changes under conjugation: a={a}, b={b}, c={c}, d={d}")
    })
}

/// `b = a^ε · [a^{−ε}, h_1] · [b_1^{−1}, h_2] ⋯`, where `b_k` is the running
/// product. Each factor conjugates the running word, so `b` stays a
/// conjugate of `a^{±1}` (a simple-curve class whenever `a` is one).
pub fn random_dependent_partner<R: Rng + ?Sized>(rng: &mut R, a: &Word, count: usize) -> (Word, Word) {
    let genus = a.genus();
    let eps = if rng.gen_bool(0.5) { 1 } else { -1 };
    let head = a.pow(eps);
    let mut b = head.clone();
    let mut tail = Word::identity(genus).expect("genus >= 1");
    for _ in 0..count {
        let len = rng.gen_range(1..=6);
        let h = random_word_with(genus, len, rng);
        let c = b.invert().commutator(&h).expect("same genus");
        tail = tail.multiply(&c).expect("same genus");
        b = b.multiply(&c).expect("same genus");
    }
    (b, tail)
}

fn obstruction_dependent(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = genus(rng);
    let a = random_conjugated_generator(rng, g, 8);
    let count = rng.gen_range(0..=3);
    let (b, d) = random_dependent_partner(rng, &a, count);
    ensure(abelianize(&d).is_zero(), || format!("{d} is not null-homologous"))?;
    let r = analyze(g, &a, &b).map_err(e)?;
    let v = obstruction_vector(&a, &b).map_err(e)?;
    ensure(r.i_a == 0, || format!("dependent pair has i_A = {}", r.i_a))?;
    ensure(r.lattice.as_ref().is_some_and(|w| w.member()), || {
        format!("dependent pair a={a}, b={b} left the lattice (v = {v})")
    })?;
    ensure(v.scale(&rat(2)).is_integral(), || format!("v = {v} not half-integral"))
}
