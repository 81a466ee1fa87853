//! Exact combinatorics: binomials, Catalan and Motzkin numbers, Pochhammer
//! symbols, terminating hypergeometric sums and the closed-form cell and
//! monoid sizes.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::diagram::{Letter, Word};
use crate::family::Family;
use crate::monoids::{self, MonoidError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombinatError {
    #[error("bad parameters: {0}")]
    BadParameters(&'static str),
    #[error("pole at term {index}")]
    Pole { index: u64 },
    #[error("hypothesis violated: m + c - 1 = 0")]
    HypothesisViolated,
    #[error("closed forms disagree for (n, k, j) = ({n}, {k}, {j})")]
    FormMismatch { n: usize, k: usize, j: usize },
    #[error("formula gives {formula}, enumeration gives {brute}")]
    FormulaBruteMismatch { formula: BigInt, brute: BigInt },
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

/// `C(a, b)` for any integers; zero when `b < 0` or `b > a >= 0`, and the
/// usual sign-alternating extension for negative `a`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    if a < 0 {
        let v = binomial(b - a - 1, b);
        return if b % 2 == 0 { v } else { -v };
    }
    if b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Catalan numbers `C(0..=l)` from the step `C(i+1) = C(i)·2(2i+1)/(i+2)`.
pub fn catalan_numbers(l: usize) -> Vec<BigInt> {
    let mut v = Vec::with_capacity(l + 1);
    v.push(BigInt::one());
    for i in 0..l as u64 {
        let next = &v[i as usize] * (2 * (2 * i + 1)) / (i + 2);
        v.push(next);
    }
    v
}

pub fn catalan(l: usize) -> BigInt {
    catalan_numbers(l).pop().unwrap_or_else(BigInt::one)
}

/// Motzkin numbers `M(0..=m)` from `M(i) = M(i-1) + Σ M(r) M(i-2-r)`.
pub fn motzkin_numbers(m: usize) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = Vec::with_capacity(m + 1);
    for i in 0..=m {
        if i < 2 {
            v.push(BigInt::one());
            continue;
        }
        let mut acc = v[i - 1].clone();
        for r in 0..=i - 2 {
            acc += &v[r] * &v[i - 2 - r];
        }
        v.push(acc);
    }
    v
}

pub fn motzkin(m: usize) -> BigInt {
    motzkin_numbers(m).pop().unwrap_or_else(BigInt::one)
}

/// Rising factorial `x (x+1) ... (x+m-1)`.
pub fn pochhammer(x: i64, m: u64) -> BigInt {
    (0..m as i64).fold(BigInt::one(), |acc, i| acc * (x + i))
}

/// Product of the nonzero factors of `(x)_m` and the index of the zero
/// factor, if any. At most one factor can vanish.
fn pochhammer_split(x: i64, m: u64) -> (BigInt, Option<u64>) {
    let mut acc = BigInt::one();
    let mut zero = None;
    for i in 0..m {
        let f = x + i as i64;
        if f == 0 {
            zero = Some(i);
        } else {
            acc *= f;
        }
    }
    (acc, zero)
}

/// `₂F₁(-m, b; c; 1) = Σ_r (-1)^r C(m, r) (b)_r / (c)_r`.
///
/// Negative integer `c` is read as the limit `c + ε → c`: each term is
/// expanded to first order in `ε`, the pole parts must cancel, and the
/// finite parts are summed. A vanishing numerator makes its term zero.
pub fn hyp2f1_terminating(m: u64, b: i64, c: i64) -> Result<BigRational, CombinatError> {
    let mut finite = BigRational::zero();
    let mut residue = BigRational::zero();
    let mut first_pole = None;
    for r in 0..=m {
        let mut num = binomial(m as i64, r as i64) * pochhammer(b, r);
        if num.is_zero() {
            continue;
        }
        if r % 2 == 1 {
            num = -num;
        }
        let (den, zero) = pochhammer_split(c, r);
        match zero {
            None => finite += BigRational::new(num, den),
            Some(_) => {
                // 1/(ε P (1 + ε S)) = 1/(ε P) - S/P + O(ε)
                let s: BigRational = (0..r as i64)
                    .map(|i| c + i)
                    .filter(|&f| f != 0)
                    .map(|f| BigRational::new(BigInt::one(), BigInt::from(f)))
                    .fold(BigRational::zero(), |a, x| a + x);
                let base = BigRational::new(num, den);
                residue += &base;
                finite -= base * s;
                first_pole.get_or_insert(r);
            }
        }
    }
    if !residue.is_zero() {
        return Err(CombinatError::Pole {
            index: first_pole.unwrap_or(0),
        });
    }
    Ok(finite)
}

/// `(c - b)_m / (c)_m`, with the same limit reading as
/// [`hyp2f1_terminating`].
pub fn chu_vandermonde(m: u64, b: i64, c: i64) -> Result<BigRational, CombinatError> {
    if m as i64 + c - 1 == 0 {
        return Err(CombinatError::HypothesisViolated);
    }
    let (num, nz) = pochhammer_split(c - b, m);
    let (den, dz) = pochhammer_split(c, m);
    match (nz, dz) {
        (_, None) => {
            let num = if nz.is_some() { BigInt::zero() } else { num };
            Ok(BigRational::new(num, den))
        }
        (None, Some(i)) => Err(CombinatError::Pole { index: i }),
        (Some(_), Some(_)) => Ok(BigRational::new(num, den)),
    }
}

fn wz_f(m: i64, k: i64, b: i64, c: i64) -> Option<BigRational> {
    let num = pochhammer(-m, k as u64);
    if num.is_zero() {
        return Some(BigRational::zero());
    }
    let den = factorial(k as u64) * pochhammer(c, k as u64) * pochhammer(c - b, m as u64);
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(
        num * pochhammer(b, k as u64) * pochhammer(c, m as u64),
        den,
    ))
}

fn wz_g(m: i64, k: i64, c: i64) -> BigRational {
    BigRational::new(BigInt::from(k * (1 - c - k)), BigInt::from(m * (m + c - 1)))
}

/// Checks the WZ pair identity `F(m,k) - F(m-1,k) = H(m,k+1) - H(m,k)` for
/// `k = 0..=m`, with `H = F G`.
///
/// Returns `Ok(None)` when some `F` value is undefined (a vanishing
/// denominator), `Ok(Some(true))` when every identity holds.
pub fn wz_certificate_check(m: u64, b: i64, c: i64) -> Result<Option<bool>, CombinatError> {
    if m == 0 {
        return Err(CombinatError::BadParameters("m must be positive"));
    }
    let m = m as i64;
    if m + c - 1 == 0 {
        return Err(CombinatError::HypothesisViolated);
    }
    for k in 0..=m {
        let (Some(f), Some(f_prev), Some(f_next)) =
            (wz_f(m, k, b, c), wz_f(m - 1, k, b, c), wz_f(m, k + 1, b, c))
        else {
            return Ok(None);
        };
        let h = &f * wz_g(m, k, c);
        let h_next = f_next * wz_g(m, k + 1, c);
        if f - f_prev != h_next - h {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

/// Sum over weak compositions of `n` into `kfold` parts of products of
/// Catalan numbers, in closed form `kfold/(2n+kfold) · C(2n+kfold, n)`.
pub fn catalan_convolution(kfold: u64, n: u64) -> BigInt {
    assert!(kfold >= 1, "kfold must be positive");
    let top = 2 * n + kfold;
    binomial(top as i64, n as i64) * kfold / top
}

/// Number of occurrences of the factor `1 2` in a sequence.
pub fn count_12(alpha: &[Letter]) -> usize {
    alpha.windows(2).filter(|w| w[0] == 1 && w[1] == 2).count()
}

/// Number of sequences over `{1, 2}` of length `k` with `j` factors `1 2`.
pub fn sequence_count(k: usize, j: usize) -> BigInt {
    binomial(k as i64 + 1, 2 * j as i64 + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellSide {
    /// Fixed top half; size is the number of bottom halves.
    Right,
    /// Fixed bottom half; size is the number of top halves.
    Left,
}

/// Gamma at a positive integer, or `None` (reciprocal zero) at a
/// non-positive one.
fn gamma_int(x: i64) -> Option<BigInt> {
    (x >= 1).then(|| factorial((x - 1) as u64))
}

fn rmo_gamma_form(n: i64, k: i64, j: i64, side: CellSide) -> BigInt {
    let (lead, num_arg, den_a, den_b) = match side {
        CellSide::Right => (1 - j + 2 * k, 1 + j + 2 * n, 1 + j - k + n, 2 + k + n),
        CellSide::Left => (2 - j + 2 * k, 2 + j + 2 * n, 1 + j - k + n, 3 + k + n),
    };
    match (gamma_int(num_arg), gamma_int(den_a), gamma_int(den_b)) {
        (Some(num), Some(a), Some(b)) => num * lead / (a * b),
        _ => BigInt::zero(),
    }
}

fn rmo_alternating_form(n: u64, k: u64, j: u64, side: CellSide) -> BigInt {
    let (terms, big_n) = match side {
        CellSide::Right => (k - j, n),
        CellSide::Left => (k - j + 1, n + 1),
    };
    let mut acc = BigInt::zero();
    for r in 0..=terms {
        if r > k {
            // the leading factor k - r + 1 vanishes
            continue;
        }
        let t = binomial(terms as i64, r as i64) * catalan_convolution(k - r + 1, big_n);
        if r % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc
}

/// Size of a left or right cell with `k` through strands and `j` factors
/// `1 2` in the through sequence.
///
/// For `rTL` the parameter `j` is ignored. For `rMo` both the alternating
/// sum and the Gamma form are evaluated and must agree.
pub fn cell_count(
    family: Family,
    n: usize,
    k: usize,
    j: usize,
    side: CellSide,
) -> Result<BigInt, CombinatError> {
    match family {
        Family::RTl => {
            if !k.is_multiple_of(2) || k < 2 || k > 2 * n {
                return Err(CombinatError::BadParameters("rTL needs even k with 2 <= k <= 2n"));
            }
            let top = match side {
                CellSide::Right => n as i64 - 1,
                CellSide::Left => n as i64,
            };
            Ok(binomial(top, (2 * n - k) as i64 / 2))
        }
        Family::RMo | Family::RpRo => {
            if k > 2 * n || j > k / 2 {
                return Err(CombinatError::BadParameters("need 0 <= k <= 2n and 0 <= j <= k/2"));
            }
            if family == Family::RpRo {
                return Ok(binomial((n + j) as i64, k as i64));
            }
            let alt = rmo_alternating_form(n as u64, k as u64, j as u64, side);
            let gamma = rmo_gamma_form(n as i64, k as i64, j as i64, side);
            if alt != gamma {
                return Err(CombinatError::FormMismatch { n, k, j });
            }
            Ok(gamma)
        }
        _ => Err(CombinatError::BadParameters("closed-form cell sizes exist for rigid families only")),
    }
}

/// Cell size from the Gamma form alone; used where the alternating sum
/// would dominate run time.
pub fn rmo_cell_count_gamma(n: usize, k: usize, j: usize, side: CellSide) -> BigInt {
    rmo_gamma_form(n as i64, k as i64, j as i64, side)
}

/// Number of half diagrams on `m` points of a pivotal family with `k`
/// through strands.
///
/// A half diagram pairs points by non-nested arcs and dots; through
/// strands may not sit under an arc.
pub fn pivotal_half_count(family: Family, m: usize, k: usize) -> BigInt {
    pivotal_half_counts(family, m).swap_remove(k)
}

/// [`pivotal_half_count`] for every `k` in `0..=m` at once.
pub fn pivotal_half_counts(family: Family, m: usize) -> Vec<BigInt> {
    let arcs = family.allows_arcs();
    let dots = family.allows_dots();
    // state: (open arcs, through strands placed)
    let mut cur = vec![vec![BigInt::zero(); m + 1]; m + 1];
    cur[0][0] = BigInt::one();
    for _ in 0..m {
        let mut next = vec![vec![BigInt::zero(); m + 1]; m + 1];
        for d in 0..=m {
            for t in 0..=m {
                let v = &cur[d][t];
                if v.is_zero() {
                    continue;
                }
                if dots {
                    next[d][t] += v;
                }
                if arcs && d < m {
                    next[d + 1][t] += v;
                }
                if arcs && d > 0 {
                    next[d - 1][t] += v;
                }
                if d == 0 && t < m {
                    next[0][t + 1] += v;
                }
            }
        }
        cur = next;
    }
    cur.swap_remove(0)
}

/// Closed-form size of the monoid of `family` at size `n`.
pub fn monoid_size_formula(family: Family, n: usize) -> BigInt {
    match family {
        Family::Tl => catalan(2 * n),
        Family::Mo => motzkin(4 * n),
        Family::PRo => (0..=2 * n as i64)
            .map(|k| {
                let c = binomial(2 * n as i64, k);
                &c * &c
            })
            .sum(),
        Family::RTl => binomial(2 * n as i64 - 1, n as i64),
        Family::RMo | Family::RpRo => {
            let mut acc = BigInt::zero();
            for k in 0..=2 * n {
                for j in 0..=k / 2 {
                    let r = cell_count(family, n, k, j, CellSide::Right).expect("in range");
                    if r.is_zero() {
                        continue;
                    }
                    let l = cell_count(family, n, k, j, CellSide::Left).expect("in range");
                    acc += sequence_count(k, j) * r * l;
                }
            }
            acc
        }
    }
}

/// Closed-form cell sizes of one rigid monoid, sharing a factorial table so
/// that sweeps over all `(k, j)` stay cheap at large `n`.
#[derive(Clone, Debug)]
pub struct RigidCounts {
    family: Family,
    n: usize,
    fact: Vec<BigInt>,
}

impl RigidCounts {
    pub fn new(family: Family, n: usize) -> Result<Self, CombinatError> {
        if !family.is_rigid() {
            return Err(CombinatError::BadParameters(
                "closed-form cell sizes exist for rigid families only",
            ));
        }
        let top = 3 * n + 4;
        let mut fact = Vec::with_capacity(top + 1);
        fact.push(BigInt::one());
        for i in 1..=top {
            let next = &fact[i - 1] * i;
            fact.push(next);
        }
        Ok(RigidCounts { family, n, fact })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn choose(&self, a: usize, b: usize) -> BigInt {
        if b > a {
            return BigInt::zero();
        }
        &self.fact[a] / (&self.fact[b] * &self.fact[a - b])
    }

    fn gamma(&self, x: i64) -> Option<&BigInt> {
        (x >= 1).then(|| &self.fact[(x - 1) as usize])
    }

    /// Whether `(k, j)` labels a layer of cells in this family.
    pub fn in_range(&self, k: usize, j: usize) -> bool {
        match self.family {
            Family::RTl => self.family.k_feasible(self.n, k) && j == k / 2,
            _ => k <= 2 * self.n && j <= k / 2,
        }
    }

    /// Same values as [`cell_count`]; `rMo` uses the Gamma form only.
    pub fn cell(&self, k: usize, j: usize, side: CellSide) -> BigInt {
        assert!(self.in_range(k, j), "cell label out of range");
        let n = self.n;
        match self.family {
            Family::RTl => match side {
                CellSide::Right => self.choose(n - 1, (2 * n - k) / 2),
                CellSide::Left => self.choose(n, (2 * n - k) / 2),
            },
            Family::RpRo => self.choose(n + j, k),
            _ => {
                let (n, k, j) = (n as i64, k as i64, j as i64);
                let (lead, num_arg, den_a, den_b) = match side {
                    CellSide::Right => (1 - j + 2 * k, 1 + j + 2 * n, 1 + j - k + n, 2 + k + n),
                    CellSide::Left => (2 - j + 2 * k, 2 + j + 2 * n, 1 + j - k + n, 3 + k + n),
                };
                match (self.gamma(num_arg), self.gamma(den_a), self.gamma(den_b)) {
                    (Some(num), Some(a), Some(b)) => num * lead / (a * b),
                    _ => BigInt::zero(),
                }
            }
        }
    }

    /// Number of through sequences carrying the label `(k, j)`.
    pub fn sequences(&self, k: usize, j: usize) -> BigInt {
        match self.family {
            Family::RTl => BigInt::one(),
            _ => self.choose(k + 1, 2 * j + 1),
        }
    }

    /// Total size of the J-cells labelled `(k, j)`.
    pub fn layer_size(&self, k: usize, j: usize) -> BigInt {
        let r = self.cell(k, j, CellSide::Right);
        if r.is_zero() {
            return r;
        }
        self.sequences(k, j) * r * self.cell(k, j, CellSide::Left)
    }

    /// All labels `(k, j)`, ordered by `k` then `j`.
    pub fn labels(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..=2 * self.n).flat_map(move |k| {
            (0..=k / 2)
                .map(move |j| (k, j))
                .filter(move |&(k, j)| self.in_range(k, j))
        })
    }

    pub fn monoid_size(&self) -> BigInt {
        self.labels().map(|(k, j)| self.layer_size(k, j)).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SizeMode {
    Formula,
    Brute,
    Both,
}

/// Monoid size by closed form, by enumeration, or both with an equality
/// check.
pub fn monoid_size(family: Family, n: usize, mode: SizeMode) -> Result<BigInt, CombinatError> {
    let formula = || monoid_size_formula(family, n);
    let brute = || -> Result<BigInt, CombinatError> {
        Ok(BigInt::from(monoids::MonoidTable::enumerate(family, n)?.len()))
    };
    match mode {
        SizeMode::Formula => Ok(formula()),
        SizeMode::Brute => brute(),
        SizeMode::Both => {
            let b = brute()?;
            let f = formula();
            if f != b {
                return Err(CombinatError::FormulaBruteMismatch { formula: f, brute: b });
            }
            Ok(f)
        }
    }
}

/// The eight block cases of a rigid Motzkin bottom half, classified by the
/// through-strand letters on either side of the block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockCase {
    /// Left of the first strand, which carries 1.
    First1,
    /// Left of the first strand, which carries 2.
    First2,
    /// Right of the last strand, which carries 2.
    Last2,
    /// Right of the last strand, which carries 1.
    Last1,
    /// Between consecutive strands carrying 1 then 2.
    Mid12,
    Mid21,
    Mid11,
    Mid22,
}

impl BlockCase {
    pub const ALL: [BlockCase; 8] = [
        BlockCase::First1,
        BlockCase::First2,
        BlockCase::Last2,
        BlockCase::Last1,
        BlockCase::Mid12,
        BlockCase::Mid21,
        BlockCase::Mid11,
        BlockCase::Mid22,
    ];

    /// Parity (odd = true) a block of this case must have.
    fn odd(self) -> bool {
        matches!(
            self,
            BlockCase::First2 | BlockCase::Last1 | BlockCase::Mid11 | BlockCase::Mid22
        )
    }

    fn first_letter(self) -> Letter {
        match self {
            BlockCase::Last1 | BlockCase::Mid11 | BlockCase::Mid12 => 2,
            _ => 1,
        }
    }

    /// The block word of length `size`, or `None` if the parity is wrong.
    pub fn shape(self, size: usize) -> Option<Word> {
        if (size % 2 == 1) != self.odd() {
            return None;
        }
        let start = self.first_letter();
        let other = 3 - start;
        Some(Word::new(
            (0..size).map(|i| if i % 2 == 0 { start } else { other }).collect(),
        ))
    }

    /// Number of bottom-half diagrams on the block, from the table.
    pub fn count(self, size: usize) -> Option<BigInt> {
        self.shape(size)?;
        Some(if self.odd() {
            catalan(size.div_ceil(2))
        } else if self == BlockCase::Mid12 {
            catalan(size / 2 + 1)
        } else {
            catalan(size / 2)
        })
    }
}

/// `A_m^0 = C(⌊(m+1)/2⌋)`: half diagrams without through strands on the
/// first `m` letters of `(1 2)^∞`.
pub fn a_m0(m: usize) -> BigInt {
    catalan(m.div_ceil(2))
}

/// Divides exactly, panicking otherwise; a guard for integer formulas.
pub fn exact_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    assert!(r.is_zero(), "inexact division");
    q
}

/// `true` when `r` is an integer.
pub fn is_integral(r: &BigRational) -> bool {
    r.denom().abs().is_one()
}
