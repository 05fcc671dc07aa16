//! Roots of unity and exact arithmetic in `ℤ[ζ_L]` and `ℚ(ζ_L)`.
//!
//! A [`CycloInt`] at level `L` is a coefficient vector of length `φ(L)` in
//! the power basis `1, ζ, …, ζ^{φ(L)-1}`, reduced modulo `Φ_L`. Binary
//! operations on values of different levels work in the level `lcm`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    level: u64,
    exp: u64,
}

impl RootOfUnity {
    /// `ζ_level^exp`; the exponent may be any integer.
    pub fn new(level: u64, exp: i64) -> Self {
        assert!(level > 0, "level must be positive");
        RootOfUnity {
            level,
            exp: exp.rem_euclid(level as i64) as u64,
        }
    }

    pub fn one(level: u64) -> Self {
        Self::new(level, 0)
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn exp(&self) -> u64 {
        self.exp
    }

    pub fn is_one(&self) -> bool {
        self.exp == 0
    }

    pub fn mul(&self, other: &RootOfUnity) -> Result<RootOfUnity> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        Ok(Self::new(self.level, (self.exp + other.exp) as i64))
    }

    pub fn inv(&self) -> RootOfUnity {
        Self::new(self.level, -(self.exp as i64))
    }

    pub fn pow(&self, k: i64) -> RootOfUnity {
        let l = self.level as i128;
        Self::new(
            self.level,
            ((self.exp as i128 * k as i128).rem_euclid(l)) as i64,
        )
    }

    pub fn raise_level(&self, new_level: u64) -> Result<RootOfUnity> {
        if new_level == 0 || new_level % self.level != 0 {
            return Err(Error::NotAMultiple {
                old: self.level,
                new: new_level,
            });
        }
        Ok(RootOfUnity {
            level: new_level,
            exp: self.exp * (new_level / self.level),
        })
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.level / self.level.gcd(&self.exp)
    }

    pub fn to_cyclo(&self) -> CycloInt {
        CycloInt::root(self.level, self.exp as i64)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.level, self.exp) {
            (_, 0) => write!(f, "1"),
            (2, 1) => write!(f, "-1"),
            (l, k) => write!(f, "ζ{l}^{k}"),
        }
    }
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// `Φ_L` as coefficients from the constant term up; computed by exact division.
pub fn cyclotomic_polynomial(l: u64) -> Vec<i64> {
    assert!(l > 0);
    let mut num = vec![0i64; l as usize + 1];
    num[0] = -1;
    num[l as usize] = 1;
    for d in 1..l {
        if l % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn];
    let mut q = vec![0i64; rem.len() - dn];
    for i in (0..q.len()).rev() {
        let c = rem[i + dn] / lead;
        q[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Reduction data for one level: `x^k mod Φ_L` for `0 ≤ k < L`.
struct Basis {
    dim: usize,
    powers: Vec<Vec<i64>>,
}

fn basis(level: u64) -> Arc<Basis> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Basis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().unwrap().get(&level) {
        return b.clone();
    }
    let phi = cyclotomic_polynomial(level);
    let dim = phi.len() - 1;
    let mut powers = Vec::with_capacity(level as usize);
    let mut cur = vec![0i64; dim];
    if dim > 0 {
        cur[0] = 1;
    }
    for _ in 0..level {
        powers.push(cur.clone());
        // multiply by x, then eliminate x^dim using the monic Φ
        let top = cur[dim - 1];
        for i in (1..dim).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        for i in 0..dim {
            cur[i] -= top * phi[i];
        }
    }
    let b = Arc::new(Basis { dim, powers });
    cache.lock().unwrap().insert(level, b.clone());
    b
}

fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

#[derive(Clone, Debug)]
pub struct CycloInt {
    level: u64,
    coeffs: Vec<BigInt>,
}

impl CycloInt {
    pub fn zero(level: u64) -> Self {
        CycloInt {
            level,
            coeffs: vec![BigInt::zero(); basis(level).dim],
        }
    }

    pub fn from_int(level: u64, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(level);
        z.coeffs[0] = n.into();
        z
    }

    pub fn one(level: u64) -> Self {
        Self::from_int(level, 1)
    }

    /// `ζ_level^k`.
    pub fn root(level: u64, k: i64) -> Self {
        let b = basis(level);
        let k = k.rem_euclid(level as i64) as usize;
        CycloInt {
            level,
            coeffs: b.powers[k].iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    /// Builds an element from power-basis coefficients, reducing if needed.
    pub fn from_coeffs(level: u64, coeffs: &[BigInt]) -> Self {
        let b = basis(level);
        let mut z = Self::zero(level);
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, &p) in b.powers[i % level as usize].iter().enumerate() {
                if p != 0 {
                    z.coeffs[j] += c * p;
                }
            }
        }
        z
    }

    /// Sum of `ζ_level^e` over the given exponents.
    pub fn sum_of_roots(level: u64, exps: impl IntoIterator<Item = i64>) -> Self {
        let b = basis(level);
        let mut acc = vec![0i64; b.dim];
        for e in exps {
            let row = &b.powers[e.rem_euclid(level as i64) as usize];
            for (a, &r) in acc.iter_mut().zip(row) {
                *a += r;
            }
        }
        CycloInt {
            level,
            coeffs: acc.into_iter().map(BigInt::from).collect(),
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational integer this denotes, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Image under the embedding `ℤ[ζ_L] → ℤ[ζ_{L'}]`.
    pub fn raise_level(&self, new_level: u64) -> Result<CycloInt> {
        if new_level == 0 || new_level % self.level != 0 {
            return Err(Error::NotAMultiple {
                old: self.level,
                new: new_level,
            });
        }
        if new_level == self.level {
            return Ok(self.clone());
        }
        let step = (new_level / self.level) as usize;
        let mut spread = vec![BigInt::zero(); step * self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            spread[i * step] = c.clone();
        }
        Ok(Self::from_coeffs(new_level, &spread))
    }

    fn lift_pair(a: &CycloInt, b: &CycloInt) -> (CycloInt, CycloInt) {
        let l = lcm(a.level, b.level);
        (a.raise_level(l).unwrap(), b.raise_level(l).unwrap())
    }

    /// Galois conjugate `ζ ↦ ζ^k`, `k` a unit mod the level.
    pub fn galois(&self, k: u64) -> CycloInt {
        let l = self.level as usize;
        let mut spread = vec![BigInt::zero(); l];
        for (i, c) in self.coeffs.iter().enumerate() {
            spread[(i * k as usize) % l] += c;
        }
        Self::from_coeffs(self.level, &spread)
    }

    /// Field norm down to `ℚ`.
    pub fn norm(&self) -> BigInt {
        let mut acc = self.clone();
        for k in 2..self.level {
            if k.gcd(&self.level) == 1 {
                acc = &acc * &self.galois(k);
            }
        }
        acc.as_integer().expect("norm is rational")
    }

    pub fn to_complex_approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * i as f64 / self.level as f64;
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }

    fn scale(&self, k: &BigInt) -> CycloInt {
        CycloInt {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

impl PartialEq for CycloInt {
    fn eq(&self, other: &Self) -> bool {
        if self.level == other.level {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::lift_pair(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloInt {}

impl Add for &CycloInt {
    type Output = CycloInt;
    fn add(self, rhs: &CycloInt) -> CycloInt {
        if self.level != rhs.level {
            let (a, b) = CycloInt::lift_pair(self, rhs);
            return &a + &b;
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycloInt {
            level: self.level,
            coeffs,
        }
    }
}

impl Sub for &CycloInt {
    type Output = CycloInt;
    fn sub(self, rhs: &CycloInt) -> CycloInt {
        self + &(-rhs)
    }
}

impl Neg for &CycloInt {
    type Output = CycloInt;
    fn neg(self) -> CycloInt {
        CycloInt {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CycloInt {
    type Output = CycloInt;
    fn mul(self, rhs: &CycloInt) -> CycloInt {
        if self.level != rhs.level {
            let (a, b) = CycloInt::lift_pair(self, rhs);
            return &a * &b;
        }
        let n = self.coeffs.len();
        let mut prod = vec![BigInt::zero(); (2 * n).saturating_sub(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CycloInt::from_coeffs(self.level, &prod)
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(CycloInt, Add, add);
forward_owned!(CycloInt, Sub, sub);
forward_owned!(CycloInt, Mul, mul);

impl fmt::Display for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if i == 1 {
                        write!(f, "ζ")?;
                    } else {
                        write!(f, "ζ^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// An element of `ℚ(ζ_L)`: a cyclotomic integer over a positive integer.
#[derive(Clone, Debug)]
pub struct CycloRat {
    num: CycloInt,
    den: BigInt,
}

impl CycloRat {
    pub fn new(num: CycloInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (num, den) = if den.is_negative() {
            (-&num, -den)
        } else {
            (num, den)
        };
        let g = num.content().gcd(&den);
        if g.is_one() || g.is_zero() {
            return Ok(CycloRat { num, den });
        }
        let num = CycloInt {
            level: num.level,
            coeffs: num.coeffs.iter().map(|c| c / &g).collect(),
        };
        Ok(CycloRat { num, den: den / g })
    }

    pub fn zero(level: u64) -> Self {
        CycloRat {
            num: CycloInt::zero(level),
            den: BigInt::one(),
        }
    }

    pub fn one(level: u64) -> Self {
        CycloRat {
            num: CycloInt::one(level),
            den: BigInt::one(),
        }
    }

    pub fn from_int(level: u64, n: impl Into<BigInt>) -> Self {
        CycloRat {
            num: CycloInt::from_int(level, n),
            den: BigInt::one(),
        }
    }

    pub fn from_ratio(level: u64, n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        Self::new(CycloInt::from_int(level, n), d.into())
    }

    pub fn numerator(&self) -> &CycloInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn level(&self) -> u64 {
        self.num.level
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn to_cyclo_int(&self) -> Result<CycloInt> {
        if self.den.is_one() {
            Ok(self.num.clone())
        } else {
            Err(Error::NotIntegral)
        }
    }

    pub fn raise_level(&self, new_level: u64) -> Result<CycloRat> {
        Ok(CycloRat {
            num: self.num.raise_level(new_level)?,
            den: self.den.clone(),
        })
    }

    /// Inverse through the norm: `1/α = (∏_{σ≠1} σα) / N(α)`.
    pub fn inv(&self) -> Result<CycloRat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let l = self.num.level;
        let mut others = CycloInt::one(l);
        for k in 2..l {
            if k.gcd(&l) == 1 {
                others = &others * &self.num.galois(k);
            }
        }
        let norm = (&others * &self.num)
            .as_integer()
            .expect("norm is rational");
        CycloRat::new(others.scale(&self.den), norm)
    }

    pub fn div(&self, rhs: &CycloRat) -> Result<CycloRat> {
        Ok(self * &rhs.inv()?)
    }

    pub fn to_complex_approx(&self) -> (f64, f64) {
        let (re, im) = self.num.to_complex_approx();
        let d = self.den.to_f64().unwrap_or(f64::NAN);
        (re / d, im / d)
    }
}

impl From<CycloInt> for CycloRat {
    fn from(num: CycloInt) -> Self {
        CycloRat {
            num,
            den: BigInt::one(),
        }
    }
}

impl PartialEq for CycloRat {
    fn eq(&self, other: &Self) -> bool {
        self.num.scale(&other.den) == other.num.scale(&self.den)
    }
}

impl Eq for CycloRat {}

impl Add for &CycloRat {
    type Output = CycloRat;
    fn add(self, rhs: &CycloRat) -> CycloRat {
        let num = &self.num.scale(&rhs.den) + &rhs.num.scale(&self.den);
        CycloRat::new(num, &self.den * &rhs.den).unwrap()
    }
}

impl Sub for &CycloRat {
    type Output = CycloRat;
    fn sub(self, rhs: &CycloRat) -> CycloRat {
        self + &(-rhs)
    }
}

impl Neg for &CycloRat {
    type Output = CycloRat;
    fn neg(self) -> CycloRat {
        CycloRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &CycloRat {
    type Output = CycloRat;
    fn mul(self, rhs: &CycloRat) -> CycloRat {
        CycloRat::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

forward_owned!(CycloRat, Add, add);
forward_owned!(CycloRat, Sub, sub);
forward_owned!(CycloRat, Mul, mul);

impl fmt::Display for CycloRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let nonzero = self.num.coeffs.iter().filter(|c| !c.is_zero()).count();
        if nonzero > 1 {
            write!(f, "({})/{}", self.num, self.den)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Determinant over `ℚ(ζ)` by Gaussian elimination.
pub fn determinant(matrix: &[Vec<CycloRat>], level: u64) -> Result<CycloRat> {
    let n = matrix.len();
    let mut a: Vec<Vec<CycloRat>> = matrix.to_vec();
    let mut det = CycloRat::one(level);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(CycloRat::zero(level));
        };
        if piv != col {
            a.swap(piv, col);
            det = -&det;
        }
        det = &det * &a[col][col];
        let inv = a[col][col].inv()?;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let t = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
        }
    }
    Ok(det)
}
