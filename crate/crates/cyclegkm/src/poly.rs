//! Exact arithmetic for torus characters and sparse multivariate polynomials
//! over ℚ in the variables δ, ε_1, …, ε_d.
//!
//! Exponent slot 0 is δ and slot j is ε_j. The canonical monomial order is
//! graded-lexicographic with δ < ε_1 < … < ε_d: total degree decides first,
//! then exponents are compared from ε_d (most significant) down to δ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Exponent vector of a monomial. See the module docs for the ordering.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(arity: usize) -> Self {
        Mono(vec![0; arity])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn quotient(&self, divisor: &Mono) -> Mono {
        Mono(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect())
    }

    fn product(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.degree().cmp(&other.degree()).then_with(|| {
            for i in (0..self.0.len()).rev() {
                match self.0[i].cmp(&other.0[i]) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over ℚ; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Mono, Rat>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: Rat) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(Mono::one(arity), c);
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rat::one())
    }

    /// The variable in `slot` (0 = δ, j = ε_j).
    pub fn variable(arity: usize, slot: usize) -> Self {
        assert!(slot < arity, "variable slot out of range");
        let mut exp = vec![0; arity];
        exp[slot] = 1;
        let mut p = Self::zero(arity);
        p.add_term(Mono(exp), Rat::one());
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.degree() == 0 && c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        debug_assert_eq!(m.0.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.arity, other.arity);
        let mut out = Self::zero(self.arity);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.product(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Self::one(self.arity);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Total degree of the highest term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// True for the zero polynomial as well (zero is homogeneous of any degree).
    pub fn is_homogeneous_of_degree(&self, k: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == k)
    }

    /// Sum of all monomials of total degree `k`.
    pub fn homogeneous_component(&self, k: u32) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Exact division: `Some(q)` with `self = q * divisor`, or `None` when the
    /// division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.arity, divisor.arity);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let (dm, dc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.arity);
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&rm) {
                return None;
            }
            let mut t = Polynomial::zero(self.arity);
            t.add_term(rm.quotient(&dm), rc / &dc);
            rem = rem.sub(&t.mul(divisor));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    fn render(&self, spaced: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if spaced {
                out.push_str(if neg { " - " } else { " + " });
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (slot, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let var = if slot == 0 { "d".to_string() } else { format!("e{slot}") };
                factors.push(if e == 1 { var } else { format!("{var}^{e}") });
            }
            if factors.is_empty() {
                out.push_str(&render_rat(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&render_rat(&abs));
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// Canonical rendering with no whitespace (used in edge labels and JSON).
    pub fn to_compact_string(&self) -> String {
        self.render(false)
    }
}

fn render_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(true))
    }
}

/// Integral linear form c_0·δ + c_1·ε_1 + … + c_d·ε_d.
///
/// Characters appear as T-weights of basis vectors and as edge labels of the
/// moment graph; both live in the weight lattice, so coefficients stay integral.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Character {
    pub delta: i64,
    pub eps: Vec<i64>,
}

impl Character {
    pub fn zero(d: usize) -> Self {
        Character { delta: 0, eps: vec![0; d] }
    }

    /// ε_j (1-based).
    pub fn eps(d: usize, j: usize) -> Self {
        assert!((1..=d).contains(&j));
        let mut c = Self::zero(d);
        c.eps[j - 1] = 1;
        c
    }

    pub fn delta(d: usize) -> Self {
        Character { delta: 1, eps: vec![0; d] }
    }

    pub fn d(&self) -> usize {
        self.eps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.delta == 0 && self.eps.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Character) -> Character {
        assert_eq!(self.d(), other.d());
        Character {
            delta: self.delta + other.delta,
            eps: self.eps.iter().zip(&other.eps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Character) -> Character {
        assert_eq!(self.d(), other.d());
        Character {
            delta: self.delta - other.delta,
            eps: self.eps.iter().zip(&other.eps).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Character {
        Character { delta: -self.delta, eps: self.eps.iter().map(|&c| -c).collect() }
    }

    /// Coefficient by slot: 0 = δ, j = ε_j.
    pub fn coeff(&self, slot: usize) -> i64 {
        if slot == 0 {
            self.delta
        } else {
            self.eps[slot - 1]
        }
    }

    /// Normalized representative of the line spanned by this character:
    /// coefficient gcd 1 and first nonzero coefficient (in slot order) positive.
    pub fn primitive(&self) -> Character {
        assert!(!self.is_zero());
        let mut g: i64 = 0;
        for slot in 0..=self.d() {
            g = g.gcd(&self.coeff(slot));
        }
        let first = (0..=self.d()).map(|s| self.coeff(s)).find(|&c| c != 0).unwrap();
        let sign = if first < 0 { -1 } else { 1 };
        let div = g * sign;
        Character {
            delta: self.delta / div,
            eps: self.eps.iter().map(|&c| c / div).collect(),
        }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let arity = self.d() + 1;
        let mut p = Polynomial::zero(arity);
        for slot in 0..arity {
            let c = self.coeff(slot);
            if c != 0 {
                let mut exp = vec![0; arity];
                exp[slot] = 1;
                p.add_term(Mono(exp), rat(c));
            }
        }
        p
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_polynomial().render(true))
    }
}

/// Bijection of the segment indices [d]. Composition is function composition,
/// and all induced actions (on ε-variables, fixed points, classes) are left
/// actions: `compose(s, t)` acts as `s` after `t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    map: Vec<usize>, // 0-based images: map[j] = σ(j+1) - 1
}

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation { map: (0..d).collect() }
    }

    /// The transposition (a b), 1-based.
    pub fn transposition(d: usize, a: usize, b: usize) -> Self {
        assert!((1..=d).contains(&a) && (1..=d).contains(&b) && a != b);
        let mut map: Vec<usize> = (0..d).collect();
        map.swap(a - 1, b - 1);
        Permutation { map }
    }

    /// From 1-based images: `images[j-1] = σ(j)`.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &im in images {
            if im == 0 || im > d || seen[im - 1] {
                return None;
            }
            seen[im - 1] = true;
        }
        Some(Permutation { map: images.iter().map(|&im| im - 1).collect() })
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    /// σ(j), 1-based.
    pub fn apply(&self, j: usize) -> usize {
        self.map[j - 1] + 1
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (j, &im) in self.map.iter().enumerate() {
            inv[im] = j;
        }
        Permutation { map: inv }
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation { map: other.map.iter().map(|&j| self.map[j]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(j, &im)| j == im)
    }

    /// True when every interval `[cut_{b-1}+1, cut_b]` is mapped into itself.
    pub fn stabilizes_blocks(&self, cuts: &[usize]) -> bool {
        let mut lo = 1;
        for &hi in cuts {
            for j in lo..=hi {
                let im = self.apply(j);
                if im < lo || im > hi {
                    return false;
                }
            }
            lo = hi + 1;
        }
        lo == self.degree() + 1
    }
}

/// Substitute ε_j ↦ ε_{σ(j)} in every monomial; δ is fixed.
pub fn act_on_polynomial(s: &Permutation, p: &Polynomial) -> Polynomial {
    assert_eq!(s.degree() + 1, p.arity(), "permutation degree must be d");
    let arity = p.arity();
    let mut out = Polynomial::zero(arity);
    for (m, c) in p.terms() {
        let mut exp = vec![0; arity];
        exp[0] = m.0[0];
        for j in 1..arity {
            exp[s.apply(j)] = m.0[j];
        }
        out.add_term(Mono(exp), c.clone());
    }
    out
}

/// Substitute ε_j ↦ ε_{σ(j)} in a character; δ is fixed.
pub fn act_on_character(s: &Permutation, a: &Character) -> Character {
    assert_eq!(s.degree(), a.d());
    let mut eps = vec![0; a.d()];
    for j in 1..=a.d() {
        eps[s.apply(j) - 1] = a.eps[j - 1];
    }
    Character { delta: a.delta, eps }
}

/// Canonical remainder of `p` modulo the ideal (a): the linear form is solved
/// for its pivot variable — the first slot in the order δ, ε_1, …, ε_d with a
/// nonzero coefficient — and the pivot is substituted away.
///
/// # Panics
/// Panics when `a` is the zero character.
pub fn reduce_mod_linear(p: &Polynomial, a: &Character) -> Polynomial {
    assert!(!a.is_zero(), "reduction modulo the zero character");
    let arity = p.arity();
    assert_eq!(a.d() + 1, arity);
    let pivot = (0..arity).find(|&s| a.coeff(s) != 0).unwrap();
    // pivot = -(sum of the other terms) / a_pivot
    let mut subst = Polynomial::zero(arity);
    let ap = rat(a.coeff(pivot));
    for slot in 0..arity {
        if slot != pivot && a.coeff(slot) != 0 {
            let mut exp = vec![0; arity];
            exp[slot] = 1;
            subst.add_term(Mono(exp), -rat(a.coeff(slot)) / &ap);
        }
    }
    let max_pow = p
        .terms()
        .map(|(m, _)| m.0[pivot])
        .max()
        .unwrap_or(0);
    let mut powers = Vec::with_capacity(max_pow as usize + 1);
    powers.push(Polynomial::one(arity));
    for k in 1..=max_pow {
        let next = powers[k as usize - 1].mul(&subst);
        powers.push(next);
    }
    let mut out = Polynomial::zero(arity);
    for (m, c) in p.terms() {
        let k = m.0[pivot];
        let mut rest = m.0.clone();
        rest[pivot] = 0;
        let mut t = Polynomial::zero(arity);
        t.add_term(Mono(rest), c.clone());
        out = out.add(&t.mul(&powers[k as usize]));
    }
    out
}

/// True iff the linear form `a` divides `p`.
///
/// # Panics
/// Panics when `a` is the zero character.
pub fn divides(a: &Character, p: &Polynomial) -> bool {
    reduce_mod_linear(p, a).is_zero()
}

/// Result of [`solve_congruences`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolveOutcome {
    Unique(Polynomial),
    NonUnique,
    NoSolution,
}

/// All monomials of total degree `k` in `arity` variables, in ascending order.
pub fn monomials_of_degree(arity: usize, k: u32) -> Vec<Mono> {
    fn go(arity: usize, k: u32, slot: usize, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
        if slot + 1 == arity {
            cur.push(k);
            out.push(Mono(cur.clone()));
            cur.pop();
            return;
        }
        for e in 0..=k {
            cur.push(e);
            go(arity, k - e, slot + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if arity == 0 {
        return out;
    }
    go(arity, k, 0, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Solve for the homogeneous degree-`k` polynomial `f` (in `d + 1` variables)
/// with `f ≡ r_t mod a_t` for every constraint `(a_t, r_t)`, via an exact
/// rational linear system in the coefficients of the degree-`k` monomial
/// ansatz. `NonUnique` when the solution space is positive-dimensional,
/// `NoSolution` when it is empty.
///
/// # Panics
/// Panics on a zero constraint character, or a residue that is neither zero
/// nor homogeneous of degree `k`.
pub fn solve_congruences(d: usize, k: u32, constraints: &[(Character, Polynomial)]) -> SolveOutcome {
    let arity = d + 1;
    let basis = monomials_of_degree(arity, k);
    let n = basis.len();
    let basis_polys: Vec<Polynomial> = basis
        .iter()
        .map(|m| {
            let mut p = Polynomial::zero(arity);
            p.add_term(m.clone(), Rat::one());
            p
        })
        .collect();

    // Rows of the augmented system [A | b].
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (a, r) in constraints {
        assert!(!a.is_zero(), "zero character in congruence constraint");
        assert!(
            r.is_zero() || r.is_homogeneous_of_degree(k),
            "residue must be zero or homogeneous of degree {k}"
        );
        let reduced: Vec<Polynomial> = basis_polys.iter().map(|p| reduce_mod_linear(p, a)).collect();
        let reduced_r = reduce_mod_linear(r, a);
        let mut monos: Vec<Mono> = reduced
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
            .chain(reduced_r.terms().map(|(m, _)| m.clone()))
            .collect();
        monos.sort();
        monos.dedup();
        for mu in monos {
            let mut row: Vec<Rat> = reduced.iter().map(|p| p.coeff(&mu)).collect();
            row.push(reduced_r.coeff(&mu));
            rows.push(row);
        }
    }

    // Gaussian elimination over ℚ.
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..n {
        let Some(sel) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, sel);
        let inv = rows[rank][col].clone();
        for v in &mut rows[rank][col..=n] {
            *v = v.clone() / &inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, p) in row[col..=n].iter_mut().zip(&pivot_row[col..=n]) {
                    *v = v.clone() - &factor * p;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    for row in rows.iter().skip(rank) {
        if !row[n].is_zero() {
            return SolveOutcome::NoSolution;
        }
    }
    if rank < n {
        return SolveOutcome::NonUnique;
    }
    let mut f = Polynomial::zero(arity);
    for (r, &col) in pivot_cols.iter().enumerate() {
        f.add_term(basis[col].clone(), rows[r][n].clone());
    }
    SolveOutcome::Unique(f)
}

/// Demazure operator on coefficients: ∂_i(a) = (a − σ_i(a)) / (ε_{i+1} − ε_i).
/// Always exact, since a − σ_i(a) vanishes under ε_i = ε_{i+1}.
pub fn partial_delta(i: usize, a: &Polynomial) -> Polynomial {
    let d = a.arity() - 1;
    assert!((1..d).contains(&i), "generator index out of range");
    let si = Permutation::transposition(d, i, i + 1);
    let num = a.sub(&act_on_polynomial(&si, a));
    let den = Character::eps(d, i + 1).sub(&Character::eps(d, i)).to_polynomial();
    num.div_exact(&den)
        .expect("a - σ_i(a) is divisible by ε_{i+1} - ε_i")
}

/// Pseudo-random polynomial with small integer coefficients, total degree ≤
/// `max_deg`; used by the property suites and the nil Hecke verifier.
pub fn random_polynomial<R: rand::Rng>(rng: &mut R, arity: usize, max_deg: u32) -> Polynomial {
    let mut p = Polynomial::zero(arity);
    let terms = rng.gen_range(1..=4);
    for _ in 0..terms {
        let deg = rng.gen_range(0..=max_deg);
        let mut exp = vec![0u32; arity];
        let mut rem = deg;
        while rem > 0 {
            let slot = rng.gen_range(0..arity);
            exp[slot] += 1;
            rem -= 1;
        }
        let c = loop {
            let c = rng.gen_range(-3i64..=3);
            if c != 0 {
                break c;
            }
        };
        p.add_term(Mono(exp), rat(c));
    }
    p
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character `{0}` at byte {1}")]
    Unexpected(char, usize),
    #[error("unexpected end of input")]
    Eof,
    #[error("variable `e{0}` out of range (d = {1})")]
    VarRange(usize, usize),
    #[error("malformed number at byte {0}")]
    Number(usize),
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    d: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError::Number(start));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError::Number(start))
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut neg = false;
        if self.peek() == Some(b'-') {
            self.bump();
            neg = true;
        } else if self.peek() == Some(b'+') {
            self.bump();
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        while let Some(op) = self.peek() {
            if op != b'+' && op != b'-' {
                break;
            }
            self.bump();
            let t = self.term()?;
            acc = if op == b'+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let e = self.uint()?;
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let arity = self.d + 1;
        match self.peek() {
            None => Err(ParseError::Eof),
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                match self.bump() {
                    Some(b')') => Ok(inner),
                    Some(c) => Err(ParseError::Unexpected(c as char, self.pos - 1)),
                    None => Err(ParseError::Eof),
                }
            }
            Some(b'd') => {
                self.bump();
                Ok(Polynomial::variable(arity, 0))
            }
            Some(b'e') => {
                self.bump();
                let j = self.uint()? as usize;
                if j == 0 || j > self.d {
                    return Err(ParseError::VarRange(j, self.d));
                }
                Ok(Polynomial::variable(arity, j))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                if self.peek() == Some(b'/') {
                    self.bump();
                    let den = self.uint()?;
                    if den == 0 {
                        return Err(ParseError::Number(self.pos));
                    }
                    Ok(Polynomial::constant(
                        arity,
                        Rat::new(BigInt::from(num), BigInt::from(den)),
                    ))
                } else {
                    Ok(Polynomial::constant(arity, rat(num as i64)))
                }
            }
            Some(c) => Err(ParseError::Unexpected(c as char, self.pos)),
        }
    }
}

/// Parse a polynomial expression over "d", "e1".."ed" with `+ - * ^ ( )` and
/// rational literals "p/q". Inverse of the canonical rendering, and also
/// accepts factored input such as `(e3-e1)*(e2-e1)`.
pub fn parse_polynomial(input: &str, d: usize) -> Result<Polynomial, ParseError> {
    let mut p = Parser { bytes: input.as_bytes(), pos: 0, d };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(ParseError::Unexpected(p.bytes[p.pos] as char, p.pos));
    }
    Ok(poly)
}
