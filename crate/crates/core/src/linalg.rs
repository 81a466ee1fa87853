//! Exact matrix rank over the rationals and over prime fields.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown field `{0}` (expected q or a prime such as 2, 3, 5)")]
    UnknownField(alloc::string::String),
}

/// Field of coefficients for rank computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, LinalgError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(LinalgError::NotPrime(p))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => f.write_str("q"),
            Field::Prime(p) => write!(f, "gf{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        if lower == "q" || lower == "rationals" {
            return Ok(Field::Rationals);
        }
        let digits = lower
            .strip_prefix("gf")
            .or_else(|| lower.strip_prefix('p'))
            .unwrap_or(&lower);
        let p: u64 = digits
            .parse()
            .map_err(|_| LinalgError::UnknownField(s.into()))?;
        Field::prime(p)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank of an integer matrix over the given field.
pub fn rank(rows: &[Vec<i64>], field: Field) -> Result<usize, LinalgError> {
    match field {
        Field::Rationals => Ok(rank_rational(rows)),
        Field::Prime(p) => rank_mod_p(rows, p),
    }
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn rank_rational(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank over the prime field with `p` elements.
pub fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> Result<usize, LinalgError> {
    if !is_prime(p) {
        return Err(LinalgError::NotPrime(p));
    }
    let p = p as i128;
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| (x as i128).rem_euclid(p)).collect())
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = mod_pow(m[rank][col], p - 2, p);
        for c in col..ncols {
            m[rank][c] = m[rank][c] * inv % p;
        }
        for r in 0..nrows {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for c in col..ncols {
                    m[r][c] = (m[r][c] - factor * m[rank][c]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

fn mod_pow(mut base: i128, mut exp: i128, p: i128) -> i128 {
    let mut acc = 1i128;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}
