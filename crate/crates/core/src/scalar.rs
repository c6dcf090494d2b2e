//! Exact arithmetic in Q(√2, √3) with a floating-point fallback.
//!
//! An exact scalar is stored as four arbitrary-precision rational coordinates
//! `q0 + q1·√2 + q2·√3 + q3·√6`. The four basis elements are linearly
//! independent over Q, so a scalar is zero iff all coordinates vanish, and
//! signs can be decided exactly. Float scalars carry a plain `f64`; the two
//! modes never mix silently.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arithmetic mode of a scalar and of every value built from scalars.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    /// Mode of a combined computation; float infects exact.
    pub fn join(self, other: Mode) -> Mode {
        if self == Mode::Float || other == Mode::Float {
            Mode::Float
        } else {
            Mode::Exact
        }
    }
}

const SQRT2: f64 = std::f64::consts::SQRT_2;
const SQRT3: f64 = 1.732_050_807_568_877_3;
const SQRT6: f64 = 2.449_489_742_783_178;

/// Element of Q(√2, √3): `c[0] + c[1]·√2 + c[2]·√3 + c[3]·√6`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quartic {
    c: [BigRational; 4],
}

impl Quartic {
    fn zero() -> Self {
        Quartic {
            c: [
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ],
        }
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    fn add(&self, o: &Quartic) -> Quartic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        Quartic {
            c: [
                &self.c[0] + &o.c[0],
                &self.c[1] + &o.c[1],
                &self.c[2] + &o.c[2],
                &self.c[3] + &o.c[3],
            ],
        }
    }

    fn sub(&self, o: &Quartic) -> Quartic {
        if o.is_zero() {
            return self.clone();
        }
        Quartic {
            c: [
                &self.c[0] - &o.c[0],
                &self.c[1] - &o.c[1],
                &self.c[2] - &o.c[2],
                &self.c[3] - &o.c[3],
            ],
        }
    }

    fn neg(&self) -> Quartic {
        Quartic {
            c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]],
        }
    }

    fn is_rational(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    // Multiplication table: √2·√3 = √6, √2·√6 = 2√3, √3·√6 = 3√2, √6·√6 = 6.
    fn mul(&self, o: &Quartic) -> Quartic {
        if self.is_zero() || o.is_zero() {
            return Quartic::zero();
        }
        // rational factors scale coordinatewise
        if self.is_rational() {
            let r = &self.c[0];
            if r.is_one() {
                return o.clone();
            }
            return Quartic {
                c: [&o.c[0] * r, &o.c[1] * r, &o.c[2] * r, &o.c[3] * r],
            };
        }
        if o.is_rational() {
            let r = &o.c[0];
            if r.is_one() {
                return self.clone();
            }
            return Quartic {
                c: [
                    &self.c[0] * r,
                    &self.c[1] * r,
                    &self.c[2] * r,
                    &self.c[3] * r,
                ],
            };
        }
        let a = &self.c;
        let b = &o.c;
        let two = BigRational::from_integer(BigInt::from(2));
        let three = BigRational::from_integer(BigInt::from(3));
        let six = BigRational::from_integer(BigInt::from(6));
        let c0 = &a[0] * &b[0]
            + &two * (&a[1] * &b[1])
            + &three * (&a[2] * &b[2])
            + &six * (&a[3] * &b[3]);
        let c1 = &a[0] * &b[1] + &a[1] * &b[0] + &three * (&a[2] * &b[3] + &a[3] * &b[2]);
        let c2 = &a[0] * &b[2] + &a[2] * &b[0] + &two * (&a[1] * &b[3] + &a[3] * &b[1]);
        let c3 = &a[0] * &b[3] + &a[3] * &b[0] + &a[1] * &b[2] + &a[2] * &b[1];
        Quartic {
            c: [c0, c1, c2, c3],
        }
    }

    /// Galois conjugation √2 ↦ −√2.
    fn conj2(&self) -> Quartic {
        Quartic {
            c: [
                self.c[0].clone(),
                -&self.c[1],
                self.c[2].clone(),
                -&self.c[3],
            ],
        }
    }

    /// Galois conjugation √3 ↦ −√3.
    fn conj3(&self) -> Quartic {
        Quartic {
            c: [
                self.c[0].clone(),
                self.c[1].clone(),
                -&self.c[2],
                -&self.c[3],
            ],
        }
    }

    fn inverse(&self) -> Result<Quartic> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            let mut out = Quartic::zero();
            out.c[0] = self.c[0].recip();
            return Ok(out);
        }
        // x · σ3(x) lies in Q(√2); multiplying by the remaining conjugate of
        // that lands in Q, which can be inverted directly.
        let y = self.mul(&self.conj3());
        let z = y.mul(&y.conj2());
        debug_assert!(z.c[1].is_zero() && z.c[2].is_zero() && z.c[3].is_zero());
        let z0 = z.c[0].recip();
        let mut out = self.conj3().mul(&y.conj2());
        for k in 0..4 {
            out.c[k] = &out.c[k] * &z0;
        }
        Ok(out)
    }

    /// Exact sign: −1, 0 or +1, under the real embedding with √2, √3 > 0.
    fn sign(&self) -> i32 {
        // Write self = u + v√3 with u, v ∈ Q(√2) and recurse.
        let u = (&self.c[0], &self.c[1]);
        let v = (&self.c[2], &self.c[3]);
        sign_quad3(u, v)
    }

    fn to_f64(&self) -> f64 {
        rat_to_f64(&self.c[0])
            + rat_to_f64(&self.c[1]) * SQRT2
            + rat_to_f64(&self.c[2]) * SQRT3
            + rat_to_f64(&self.c[3]) * SQRT6
    }
}

fn sign_rat(r: &BigRational) -> i32 {
    match r.numer().sign() {
        Sign::Plus => 1,
        Sign::NoSign => 0,
        Sign::Minus => -1,
    }
}

/// Sign of p + q√2.
fn sign_quad2(p: &BigRational, q: &BigRational) -> i32 {
    let sp = sign_rat(p);
    let sq = sign_rat(q);
    if sq == 0 {
        return sp;
    }
    if sp == 0 {
        return sq;
    }
    if sp == sq {
        return sp;
    }
    // Opposite signs: compare p² against 2q² and use that p − q√2 has the
    // sign of p in this case.
    let two = BigRational::from_integer(BigInt::from(2));
    let d = p * p - &two * (q * q);
    sp * sign_rat(&d)
}

/// Sign of u + v√3 with u = u0 + u1√2, v = v0 + v1√2.
fn sign_quad3(u: (&BigRational, &BigRational), v: (&BigRational, &BigRational)) -> i32 {
    let su = sign_quad2(u.0, u.1);
    let sv = sign_quad2(v.0, v.1);
    if sv == 0 {
        return su;
    }
    if su == 0 {
        return sv;
    }
    if su == sv {
        return su;
    }
    // d = u² − 3v² ∈ Q(√2); u − v√3 has the sign of u here.
    let three = BigRational::from_integer(BigInt::from(3));
    let d0 = u.0 * u.0 + BigRational::from_integer(BigInt::from(2)) * (u.1 * u.1)
        - &three * (v.0 * v.0 + BigRational::from_integer(BigInt::from(2)) * (v.1 * v.1));
    let d1 = BigRational::from_integer(BigInt::from(2)) * (u.0 * u.1)
        - &three * (BigRational::from_integer(BigInt::from(2)) * (v.0 * v.1));
    su * sign_quad2(&d0, &d1)
}

/// f64 value of a rational, robust against numerator/denominator overflow.
fn rat_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() || r.numer().bits() > 1000 {
            return v;
        }
    }
    let neg = r.is_negative();
    let n = r.numer().abs().to_biguint().unwrap();
    let d = r.denom().abs().to_biguint().unwrap();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    // Scale so the integer quotient carries ~64 significant bits.
    let shift = nb - db - 64;
    let q = if shift >= 0 {
        let qd = d << (shift as u64);
        (n / qd).to_f64().unwrap_or(f64::MAX) * 2f64.powi(shift as i32)
    } else {
        let qn = n << ((-shift) as u64);
        (qn / d).to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
    };
    if neg {
        -q
    } else {
        q
    }
}

/// A number: exact element of Q(√2, √3) or an IEEE double, never silently both.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(Quartic),
    Float(f64),
}

impl Scalar {
    pub fn zero(mode: Mode) -> Scalar {
        match mode {
            Mode::Exact => Scalar::Exact(Quartic::zero()),
            Mode::Float => Scalar::Float(0.0),
        }
    }

    pub fn one(mode: Mode) -> Scalar {
        match mode {
            Mode::Exact => Scalar::from_int(1),
            Mode::Float => Scalar::Float(1.0),
        }
    }

    pub fn from_int(n: i64) -> Scalar {
        let mut q = Quartic::zero();
        q.c[0] = BigRational::from_integer(BigInt::from(n));
        Scalar::Exact(q)
    }

    pub fn from_ratio(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        let mut q = Quartic::zero();
        q.c[0] = BigRational::new(BigInt::from(num), BigInt::from(den));
        Scalar::Exact(q)
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        let mut q = Quartic::zero();
        q.c[0] = r;
        Scalar::Exact(q)
    }

    /// Exact scalar from the four coordinates on (1, √2, √3, √6).
    pub fn from_coords(c: [BigRational; 4]) -> Scalar {
        Scalar::Exact(Quartic { c })
    }

    pub fn sqrt2() -> Scalar {
        let mut q = Quartic::zero();
        q.c[1] = BigRational::one();
        Scalar::Exact(q)
    }

    pub fn sqrt3() -> Scalar {
        let mut q = Quartic::zero();
        q.c[2] = BigRational::one();
        Scalar::Exact(q)
    }

    pub fn sqrt6() -> Scalar {
        let mut q = Quartic::zero();
        q.c[3] = BigRational::one();
        Scalar::Exact(q)
    }

    pub fn float(v: f64) -> Scalar {
        Scalar::Float(v)
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Float(v) => *v == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(q) => {
                q.c[0].is_one() && q.c[1].is_zero() && q.c[2].is_zero() && q.c[3].is_zero()
            }
            Scalar::Float(v) => *v == 1.0,
        }
    }

    /// Rational part accessor; `None` when a radical coordinate is nonzero
    /// or the scalar is a float.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(q) if q.c[1].is_zero() && q.c[2].is_zero() && q.c[3].is_zero() => {
                Some(&q.c[0])
            }
            _ => None,
        }
    }

    /// Coordinates on (1, √2, √3, √6) for exact scalars.
    pub fn coords(&self) -> Option<&[BigRational; 4]> {
        match self {
            Scalar::Exact(q) => Some(&q.c),
            Scalar::Float(_) => None,
        }
    }

    /// Sign under the real embedding: −1, 0, +1. Float zero is sign 0.
    pub fn sign(&self) -> i32 {
        match self {
            Scalar::Exact(q) => q.sign(),
            Scalar::Float(v) => {
                if *v > 0.0 {
                    1
                } else if *v < 0.0 {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => q.to_f64(),
            Scalar::Float(v) => *v,
        }
    }

    /// Explicit cast into float mode.
    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }

    pub fn checked_add(&self, o: &Scalar) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.add(b))),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(a + b)),
            _ => Err(Error::MixedMode),
        }
    }

    pub fn checked_sub(&self, o: &Scalar) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.sub(b))),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(a - b)),
            _ => Err(Error::MixedMode),
        }
    }

    pub fn checked_mul(&self, o: &Scalar) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.mul(b))),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(a * b)),
            _ => Err(Error::MixedMode),
        }
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar> {
        if o.is_one() {
            return Ok(self.clone());
        }
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.mul(&b.inverse()?))),
            (Scalar::Float(a), Scalar::Float(b)) => {
                if *b == 0.0 {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Float(a / b))
                }
            }
            _ => Err(Error::MixedMode),
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        match self {
            Scalar::Exact(q) => Ok(Scalar::Exact(q.inverse()?)),
            Scalar::Float(v) => {
                if *v == 0.0 {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Float(1.0 / v))
                }
            }
        }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one(self.mode());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact odd n-th root inside Q(√2, √3), when one exists.
    ///
    /// For rational input the test is complete: a root in the field must be
    /// rational because the degree of a nontrivial radical extension by an
    /// odd root cannot divide 4. Non-rational inputs are handled by
    /// high-precision reconstruction of the candidate coordinates followed
    /// by exact verification.
    pub fn odd_root_exact(&self, n: u32) -> Option<Scalar> {
        assert!(n % 2 == 1 && n > 0, "root order must be odd");
        let q = match self {
            Scalar::Exact(q) => q,
            Scalar::Float(_) => return None,
        };
        if q.is_zero() {
            return Some(Scalar::zero(Mode::Exact));
        }
        if let Some(r) = self.as_rational() {
            let root = rational_nth_root(r, n)?;
            return Some(Scalar::from_rational(root));
        }
        // Approximate the real n-th root in each of the four embeddings,
        // recombine into coordinate approximations, reconstruct rationals
        // and verify exactly.
        let prec: usize = 120;
        let emb = |s2: i64, s3: i64| -> BigRational {
            let sq2 = sqrt_approx(2, prec);
            let sq3 = sqrt_approx(3, prec);
            let sq6 = sqrt_approx(6, prec);
            &q.c[0]
                + &q.c[1] * &sq2 * BigRational::from_integer(BigInt::from(s2))
                + &q.c[2] * &sq3 * BigRational::from_integer(BigInt::from(s3))
                + &q.c[3] * &sq6 * BigRational::from_integer(BigInt::from(s2 * s3))
        };
        let r_pp = nth_root_approx(&emb(1, 1), n, prec);
        let r_mp = nth_root_approx(&emb(-1, 1), n, prec);
        let r_pm = nth_root_approx(&emb(1, -1), n, prec);
        let r_mm = nth_root_approx(&emb(-1, -1), n, prec);
        let four = BigRational::from_integer(BigInt::from(4));
        let sq2 = sqrt_approx(2, prec);
        let sq3 = sqrt_approx(3, prec);
        let sq6 = sqrt_approx(6, prec);
        let c0 = (&r_pp + &r_mp + &r_pm + &r_mm) / &four;
        let c1 = (&r_pp - &r_mp + &r_pm - &r_mm) / (&four * &sq2);
        let c2 = (&r_pp + &r_mp - &r_pm - &r_mm) / (&four * &sq3);
        let c3 = (&r_pp - &r_mp - &r_pm + &r_mm) / (&four * &sq6);
        let max_den = BigInt::from(10u8).pow(40);
        let cand = Quartic {
            c: [
                reconstruct_rational(&c0, &max_den),
                reconstruct_rational(&c1, &max_den),
                reconstruct_rational(&c2, &max_den),
                reconstruct_rational(&c3, &max_den),
            ],
        };
        let cand = Scalar::Exact(cand);
        if &cand.pow(n) == self {
            Some(cand)
        } else {
            None
        }
    }

    /// Exact ninth root in the field, used by metric normalization.
    pub fn ninth_root_exact(&self) -> Option<Scalar> {
        self.odd_root_exact(9)
    }

    pub fn cube_root_exact(&self) -> Option<Scalar> {
        self.odd_root_exact(3)
    }

    /// Parse per the scalar grammar, producing the requested mode.
    pub fn parse(s: &str, mode: Mode) -> Result<Scalar> {
        match mode {
            Mode::Exact => parse_exact(s).map(Scalar::Exact),
            Mode::Float => {
                if let Ok(q) = parse_exact(s) {
                    return Ok(Scalar::Float(q.to_f64()));
                }
                s.trim()
                    .parse::<f64>()
                    .map(Scalar::Float)
                    .map_err(|_| Error::Parse(format!("cannot parse scalar `{s}`")))
            }
        }
    }
}

/// Exact n-th root of a rational (n odd), or `None`.
fn rational_nth_root(r: &BigRational, n: u32) -> Option<BigRational> {
    let sign = sign_rat(r);
    let num = r.numer().abs();
    let den = r.denom().abs();
    let rn = num.nth_root(n);
    let rd = den.nth_root(n);
    if rn.pow(n) != num || rd.pow(n) != den {
        return None;
    }
    let mut root = BigRational::new(rn, rd);
    if sign < 0 {
        root = -root;
    }
    Some(root)
}

/// Rational approximation of √d with error below 10^(−prec).
fn sqrt_approx(d: u32, prec: usize) -> BigRational {
    let scale = BigInt::from(10u8).pow(prec as u32);
    let scaled = BigInt::from(d) * &scale * &scale;
    BigRational::new(scaled.sqrt(), scale)
}

/// Rational approximation of the real n-th root (n odd) of x.
fn nth_root_approx(x: &BigRational, n: u32, prec: usize) -> BigRational {
    let neg = x.is_negative();
    let ax = x.abs();
    let scale = BigInt::from(10u8).pow(prec as u32);
    let scale_n = scale.pow(n);
    // floor(((num·den^(n−1))·10^(n·prec))^(1/n)) / (den·10^prec)
    let num = ax.numer() * ax.denom().pow(n - 1) * &scale_n;
    let root = num.nth_root(n);
    let out = BigRational::new(root, ax.denom() * &scale);
    if neg {
        -out
    } else {
        out
    }
}

/// Best rational approximation with bounded denominator, by continued fractions.
fn reconstruct_rational(x: &BigRational, max_den: &BigInt) -> BigRational {
    let neg = x.is_negative();
    let mut a = x.abs();
    let mut h_prev = BigInt::one();
    let mut h = a.to_integer();
    let mut k_prev = BigInt::zero();
    let mut k = BigInt::one();
    let mut frac = &a - BigRational::from_integer(h.clone());
    while !frac.is_zero() && &k <= max_den {
        a = frac.recip();
        let ai = a.to_integer();
        frac = &a - BigRational::from_integer(ai.clone());
        let h_next = &ai * &h + &h_prev;
        let k_next = &ai * &k + &k_prev;
        if &k_next > max_den {
            break;
        }
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
    let out = BigRational::new(h, k);
    if neg {
        -out
    } else {
        out
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (Scalar::Float(a), Scalar::Float(b)) => a == b,
            _ => false,
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Float(a), Scalar::Float(b)) => a.partial_cmp(b),
            (Scalar::Exact(_), Scalar::Exact(_)) => {
                let d = self - other;
                Some(0.cmp(&-d.sign()))
            }
            _ => None,
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident, $msg:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect($msg)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$checked(&rhs).expect($msg)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$checked(rhs).expect($msg)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$checked(&rhs).expect($msg)
            }
        }
    };
}

scalar_binop!(Add, add, checked_add, "scalar addition: mixed modes");
scalar_binop!(Sub, sub, checked_sub, "scalar subtraction: mixed modes");
scalar_binop!(Mul, mul, checked_mul, "scalar multiplication: mixed modes");
scalar_binop!(Div, div, checked_div, "scalar division failed");

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = (&*self) + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = (&*self) - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = (&*self) * rhs;
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(q.neg()),
            Scalar::Float(v) => Scalar::Float(-v),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// ---------------------------------------------------------------------------
// Text grammar: `R (+|-) R*sqrt2 (+|-) R*sqrt3 (+|-) R*sqrt6`, terms optional,
// any order, R a rational `p/q`. Bare `sqrt2` means coefficient 1.
// ---------------------------------------------------------------------------

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim())
            .map_err(|_| Error::Parse(format!("bad numerator `{num}`")))?;
        let d = BigInt::from_str(den.trim())
            .map_err(|_| Error::Parse(format!("bad denominator `{den}`")))?;
        if d.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let n =
            BigInt::from_str(&digits).map_err(|_| Error::Parse(format!("bad decimal `{s}`")))?;
        let d = BigInt::from(10u8).pow(frac.len() as u32);
        return Ok(BigRational::new(n, d));
    }
    BigInt::from_str(s)
        .map(BigRational::from_integer)
        .map_err(|_| Error::Parse(format!("bad integer `{s}`")))
}

fn parse_exact(s: &str) -> Result<Quartic> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let mut out = Quartic::zero();
    let bytes = compact.as_bytes();
    let mut start = 0usize;
    let mut pos = 1usize; // a leading sign belongs to the first term
    let mut any = false;
    while start < bytes.len() {
        while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
            pos += 1;
        }
        let term = &compact[start..pos];
        parse_term(term, &mut out)?;
        any = true;
        start = pos;
        pos += 1;
    }
    if !any {
        return Err(Error::Parse("empty scalar".into()));
    }
    Ok(out)
}

fn parse_term(term: &str, out: &mut Quartic) -> Result<()> {
    let (sign, body) = match term.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, term.strip_prefix('+').unwrap_or(term)),
    };
    if body.is_empty() {
        return Err(Error::Parse(format!("dangling sign in `{term}`")));
    }
    let slot_of = |name: &str| match name {
        "sqrt2" => Some(1usize),
        "sqrt3" => Some(2),
        "sqrt6" => Some(3),
        _ => None,
    };
    let (slot, coeff) = if let Some(slot) = slot_of(body) {
        (slot, BigRational::one())
    } else if let Some((r, radical)) = body.split_once('*') {
        let slot =
            slot_of(radical).ok_or_else(|| Error::Parse(format!("unknown radical `{radical}`")))?;
        (slot, parse_rational(r)?)
    } else {
        (0, parse_rational(body)?)
    };
    let signed = if sign < 0 { -coeff } else { coeff };
    out.c[slot] = &out.c[slot] + signed;
    Ok(())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Float(v) => write!(f, "{v}"),
            Scalar::Exact(q) => {
                if q.is_zero() {
                    return write!(f, "0");
                }
                let labels = ["", "sqrt2", "sqrt3", "sqrt6"];
                let mut first = true;
                for (k, label) in labels.iter().enumerate() {
                    let c = &q.c[k];
                    if c.is_zero() {
                        continue;
                    }
                    if first {
                        if c.is_negative() {
                            write!(f, "-")?;
                        }
                        first = false;
                    } else if c.is_negative() {
                        write!(f, "-")?;
                    } else {
                        write!(f, "+")?;
                    }
                    let mag = c.abs();
                    if label.is_empty() {
                        write!(f, "{mag}")?;
                    } else if mag.is_one() {
                        write!(f, "{label}")?;
                    } else {
                        write!(f, "{mag}*{label}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scalar> {
        Scalar::parse(s, Mode::Exact)
    }
}
