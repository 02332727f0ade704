//! Exact arithmetic in the cyclotomic field Q(ζ_N) and q-combinatorics at
//! roots of unity.
//!
//! Elements are stored as residues modulo the N-th cyclotomic polynomial Φ_N,
//! written in the power basis `1, ζ, …, ζ^{φ(N)-1}` with a single shared
//! positive denominator. Two elements are equal iff their stored forms are
//! equal, so equality is decidable and cheap.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The field Q(ζ_N) together with precomputed reduction data.
pub struct CyclotomicField {
    order: u32,
    degree: usize,
    modulus: Vec<i64>,
    /// Canonical coefficients of ζ^t for `0 <= t < order`.
    powers: Vec<Vec<i64>>,
    roots: Vec<Arc<Repr>>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for CyclotomicField {}

fn field_cache() -> &'static Mutex<HashMap<u32, Arc<CyclotomicField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl CyclotomicField {
    /// Returns the (shared) field Q(ζ_order).
    ///
    /// # Panics
    ///
    /// Panics if `order == 0`.
    pub fn get(order: u32) -> Arc<Self> {
        assert!(order > 0, "cyclotomic field order must be positive");
        let mut cache = field_cache().lock().unwrap_or_else(|e| e.into_inner());
        cache
            .entry(order)
            .or_insert_with(|| Arc::new(Self::build(order)))
            .clone()
    }

    fn build(order: u32) -> Self {
        let modulus = cyclotomic_polynomial(order as usize);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x, then fold x^degree back with the monic modulus
            let top = cur[degree - 1];
            for t in (1..degree).rev() {
                cur[t] = cur[t - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for t in 0..degree {
                    cur[t] -= top * modulus[t];
                }
            }
        }
        let roots = powers
            .iter()
            .enumerate()
            .map(|(t, p)| {
                Arc::new(Repr {
                    num: p.iter().map(|&c| BigInt::from(c)).collect(),
                    den: BigInt::one(),
                    unit: Some(UnitTag {
                        neg: false,
                        exp: t as u32,
                    }),
                })
            })
            .collect();
        CyclotomicField {
            order,
            degree,
            modulus,
            powers,
            roots,
        }
    }

    /// N, the order of the distinguished primitive root ζ.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// φ(N), the dimension of the field over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of Φ_N, lowest degree first.
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// Canonical integer coefficients of ζ^t.
    pub fn power_coeffs(&self, t: i64) -> &[i64] {
        &self.powers[t.rem_euclid(self.order as i64) as usize]
    }
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Integer coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    fn build(n: usize, memo: &mut HashMap<usize, Vec<i64>>) -> Vec<i64> {
        if let Some(p) = memo.get(&n) {
            return p.clone();
        }
        let mut num = vec![0i64; n + 1];
        num[0] = -1;
        num[n] = 1;
        for d in divisors(n) {
            if d == n {
                continue;
            }
            let div = build(d, memo);
            num = exact_monic_div(&num, &div);
        }
        memo.insert(n, num.clone());
        num
    }
    build(n, &mut HashMap::new())
}

fn exact_monic_div(num: &[i64], div: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = div.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (t, &dc) in div.iter().enumerate() {
                rem[k + t] -= c * dc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Marks values known to be ±ζ^exp. With even N the sign is always folded
/// into the exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct UnitTag {
    neg: bool,
    exp: u32,
}

struct Repr {
    num: Vec<BigInt>,
    den: BigInt,
    unit: Option<UnitTag>,
}

impl PartialEq for Repr {
    fn eq(&self, other: &Self) -> bool {
        self.den == other.den && self.num == other.num
    }
}

impl Eq for Repr {}

impl Hash for Repr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl Repr {
    fn normalized(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if num.iter().all(Zero::is_zero) {
            return Repr {
                num,
                den: BigInt::one(),
                unit: None,
            };
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                if !c.is_zero() {
                    g = g.gcd(c);
                }
            }
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c = &*c / &g;
                }
                den = den / g;
            }
        }
        Repr {
            num,
            den,
            unit: None,
        }
    }
}

/// An exact element of Q(ζ_N).
#[derive(Clone)]
pub struct CycNumber {
    field: Arc<CyclotomicField>,
    repr: Arc<Repr>,
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order
            && (Arc::ptr_eq(&self.repr, &other.repr) || self.repr == other.repr)
    }
}

impl Eq for CycNumber {}

impl Hash for CycNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.repr.hash(state);
    }
}

/// ζ_N^k in canonical form. Its multiplicative order is `N / gcd(k, N)`.
pub fn root_of_unity(order: u32, k: i64) -> CycNumber {
    CycNumber::root(&CyclotomicField::get(order), k)
}

impl CycNumber {
    fn from_repr(field: &Arc<CyclotomicField>, repr: Repr) -> Self {
        CycNumber {
            field: field.clone(),
            repr: Arc::new(repr),
        }
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Self::from_repr(
            field,
            Repr {
                num: vec![BigInt::zero(); field.degree],
                den: BigInt::one(),
                unit: None,
            },
        )
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_integer(field, 1)
    }

    pub fn from_integer(field: &Arc<CyclotomicField>, value: i64) -> Self {
        match value {
            1 => return Self::root(field, 0),
            -1 => return -Self::root(field, 0),
            _ => {}
        }
        let mut num = vec![BigInt::zero(); field.degree];
        num[0] = BigInt::from(value);
        Self::from_repr(
            field,
            Repr {
                num,
                den: BigInt::one(),
                unit: None,
            },
        )
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, value: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree];
        num[0] = value.numer().clone();
        Self::from_repr(field, Repr::normalized(num, value.denom().clone()))
    }

    /// Builds an element from integer power-basis coefficients. Entries past
    /// φ(N) are folded back using ζ^N = 1 and the cyclotomic relation.
    pub fn from_int_coeffs(field: &Arc<CyclotomicField>, coeffs: &[i64]) -> Self {
        let mut num = vec![BigInt::zero(); field.degree];
        for (t, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (u, &pc) in field.power_coeffs(t as i64).iter().enumerate() {
                if pc != 0 {
                    num[u] += c * pc;
                }
            }
        }
        Self::from_repr(
            field,
            Repr {
                num,
                den: BigInt::one(),
                unit: None,
            },
        )
    }

    /// Builds an element from exactly φ(N) rational power-basis coefficients.
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: &[BigRational]) -> Result<Self> {
        if coeffs.len() != field.degree {
            return Err(Error::Shape(format!(
                "Q(zeta_{}) elements take {} coefficients, got {}",
                field.order,
                field.degree,
                coeffs.len()
            )));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::from_repr(field, Repr::normalized(num, den)))
    }

    /// Parses coefficients in `"p/q"` (or plain integer) string form.
    pub fn from_coeff_strings<S: AsRef<str>>(
        field: &Arc<CyclotomicField>,
        coeffs: &[S],
    ) -> Result<Self> {
        let parsed = coeffs
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(field, &parsed)
    }

    /// ζ^k for the distinguished primitive root ζ = ζ_N.
    pub fn root(field: &Arc<CyclotomicField>, k: i64) -> Self {
        CycNumber {
            field: field.clone(),
            repr: field.roots[k.rem_euclid(field.order as i64) as usize].clone(),
        }
    }

    /// `Some((negated, k))` when the value is known to be ±ζ^k. Values built
    /// from roots, signs and their products are recognised; other equal
    /// values may not be.
    pub fn as_unit(&self) -> Option<(bool, u32)> {
        self.repr.unit.map(|u| (u.neg, u.exp))
    }

    fn signed_root(field: &Arc<CyclotomicField>, neg: bool, exp: i64) -> Self {
        let order = field.order as i64;
        if !neg {
            return Self::root(field, exp);
        }
        if order % 2 == 0 {
            return Self::root(field, exp + order / 2);
        }
        let base = Self::root(field, exp);
        let num = base.repr.num.iter().map(|c| -c).collect();
        Self::from_repr(
            field,
            Repr {
                num,
                den: BigInt::one(),
                unit: Some(UnitTag {
                    neg: true,
                    exp: exp.rem_euclid(order) as u32,
                }),
            },
        )
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order_param(&self) -> u32 {
        self.field.order
    }

    pub fn is_zero(&self) -> bool {
        self.repr.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.repr.den.is_one()
            && self.repr.num[0].is_one()
            && self.repr.num[1..].iter().all(Zero::is_zero)
    }

    /// Power-basis coefficients as exact rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.repr
            .num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.repr.den.clone()))
            .collect()
    }

    /// Coefficients rendered as `"p/q"` strings.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs()
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect()
    }

    /// Integer coefficients when the element lies in Z[ζ] and every
    /// coefficient fits in an `i64`.
    pub fn small_integral_coeffs(&self) -> Option<Vec<i64>> {
        if !self.repr.den.is_one() {
            return None;
        }
        self.repr.num.iter().map(|c| c.to_i64()).collect()
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.repr.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.repr.den
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(
            self.field.order, other.field.order,
            "mixing elements of Q(zeta_{}) and Q(zeta_{})",
            self.field.order, other.field.order
        );
    }

    fn add_impl(&self, other: &Self, sign: i8) -> Self {
        self.check_field(other);
        let (a, b) = (&*self.repr, &*other.repr);
        let num: Vec<BigInt> = if a.den == b.den {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| if sign > 0 { x + y } else { x - y })
                .collect()
        } else {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| {
                    let (l, r) = (x * &b.den, y * &a.den);
                    if sign > 0 {
                        l + r
                    } else {
                        l - r
                    }
                })
                .collect()
        };
        let den = if a.den == b.den {
            a.den.clone()
        } else {
            &a.den * &b.den
        };
        Self::from_repr(&self.field, Repr::normalized(num, den))
    }

    fn mul_impl(&self, other: &Self) -> Self {
        self.check_field(other);
        if let (Some(a), Some(b)) = (self.repr.unit, other.repr.unit) {
            return Self::signed_root(&self.field, a.neg != b.neg, a.exp as i64 + b.exp as i64);
        }
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let phi = self.field.degree;
        let (a, b) = (&*self.repr, &*other.repr);
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let high = prod.split_off(phi);
        let mut out = prod;
        for (off, c) in high.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (u, &pc) in self.field.power_coeffs((phi + off) as i64).iter().enumerate() {
                if pc != 0 {
                    out[u] += &c * pc;
                }
            }
        }
        let den = &a.den * &b.den;
        Self::from_repr(&self.field, Repr::normalized(out, den))
    }

    /// Multiplication by ζ^k.
    pub fn mul_root(&self, k: i64) -> Self {
        if k.rem_euclid(self.field.order as i64) == 0 {
            return self.clone();
        }
        self.mul_impl(&Self::root(&self.field, k))
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        let num = self
            .repr
            .num
            .iter()
            .map(|c| c * factor.numer())
            .collect();
        let den = &self.repr.den * factor.denom();
        Self::from_repr(&self.field, Repr::normalized(num, den))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against Φ_N.
    /// Returns `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let modulus: Vec<BigRational> = self
            .field
            .modulus
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        let a: Vec<BigRational> = self
            .repr
            .num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.repr.den.clone()))
            .collect();
        let (mut r0, mut r1) = (modulus.clone(), trim(a));
        let (mut t0, mut t1) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t2);
        }
        // r0 is a nonzero constant because Φ_N is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].clone();
        let (_, inv) = poly_divrem(&t0, &modulus);
        let mut coeffs: Vec<BigRational> = inv.into_iter().map(|x| x / &c).collect();
        coeffs.resize(self.field.degree, BigRational::zero());
        Some(Self::from_coeffs(&self.field, &coeffs).expect("degree matches"))
    }

    /// Integer power; negative exponents invert. Panics on `0^negative`.
    pub fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 {
            self.inv().expect("zero has no negative powers")
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(&self.field);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// The Galois conjugate σ_j : ζ ↦ ζ^j (meaningful for gcd(j, N) = 1).
    pub fn galois_conjugate(&self, j: i64) -> Self {
        let mut num = vec![BigInt::zero(); self.field.degree];
        for (t, c) in self.repr.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (u, &pc) in self.field.power_coeffs(j * t as i64).iter().enumerate() {
                if pc != 0 {
                    num[u] += c * pc;
                }
            }
        }
        Self::from_repr(&self.field, Repr::normalized(num, self.repr.den.clone()))
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(a.to_vec());
    let b = trim(b.to_vec());
    let lead = b.last().expect("division by zero polynomial").clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (t, y) in b.iter().enumerate() {
            rem[shift + t] -= &c * y;
        }
        quot[shift] = c;
        rem.pop();
        rem = trim(rem);
    }
    (trim(quot), rem)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&CycNumber> for &CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &CycNumber) -> CycNumber {
                $body(self, rhs)
            }
        }
        impl $trait<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: CycNumber) -> CycNumber {
                $body(&self, &rhs)
            }
        }
        impl $trait<&CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &CycNumber) -> CycNumber {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CycNumber, b: &CycNumber| a.add_impl(b, 1));
forward_binop!(Sub, sub, |a: &CycNumber, b: &CycNumber| a.add_impl(b, -1));
forward_binop!(Mul, mul, |a: &CycNumber, b: &CycNumber| a.mul_impl(b));

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        if let Some(u) = self.repr.unit {
            return CycNumber::signed_root(&self.field, !u.neg, u.exp as i64);
        }
        let num = self.repr.num.iter().map(|c| -c).collect();
        CycNumber::from_repr(
            &self.field,
            Repr {
                num,
                den: self.repr.den.clone(),
                unit: None,
            },
        )
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (t, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, abs) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (t, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => write!(f, "z^{t}")?,
                (_, false) => write!(f, "{abs}*z^{t}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNumber[N={}]({})", self.field.order, self)
    }
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self.coeff_strings();
        let mut seq = serializer.serialize_seq(Some(coeffs.len()))?;
        for c in &coeffs {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

/// m_ħ = 1 + ħ + … + ħ^{m-1}.
pub fn q_integer(m: usize, hbar: &CycNumber) -> CycNumber {
    let mut acc = CycNumber::zero(hbar.field());
    let mut power = CycNumber::one(hbar.field());
    for _ in 0..m {
        acc = &acc + &power;
        power = &power * hbar;
    }
    acc
}

/// m!_ħ = 1_ħ 2_ħ ⋯ m_ħ.
pub fn q_factorial(m: usize, hbar: &CycNumber) -> CycNumber {
    (1..=m).fold(CycNumber::one(hbar.field()), |acc, j| {
        &acc * &q_integer(j, hbar)
    })
}

/// Gaussian binomial (m choose k)_ħ by the division-free q-Pascal recursion.
pub fn q_binomial(m: usize, k: usize, hbar: &CycNumber) -> Result<CycNumber> {
    if k > m {
        return Err(Error::BinomialRange { m, k });
    }
    let table = QBinomTable::new(hbar, m);
    Ok(table.get(m, k).expect("in range").clone())
}

/// Triangular table of Gaussian binomials (m choose k)_ħ, `0 <= k <= m <= max_m`.
///
/// Built row by row with
/// `(m choose k) = (m-1 choose k-1) + ħ^k (m-1 choose k)`.
#[derive(Clone, Debug)]
pub struct QBinomTable {
    hbar: CycNumber,
    rows: Vec<Vec<CycNumber>>,
}

impl QBinomTable {
    pub fn new(hbar: &CycNumber, max_m: usize) -> Self {
        let field = hbar.field().clone();
        let one = CycNumber::one(&field);
        let mut hpow = Vec::with_capacity(max_m + 1);
        hpow.push(one.clone());
        for k in 1..=max_m {
            let next = &hpow[k - 1] * hbar;
            hpow.push(next);
        }
        let mut rows: Vec<Vec<CycNumber>> = Vec::with_capacity(max_m + 1);
        for m in 0..=max_m {
            let mut row = Vec::with_capacity(m + 1);
            for k in 0..=m {
                if k == 0 || k == m {
                    row.push(one.clone());
                } else {
                    let prev = &rows[m - 1];
                    row.push(&prev[k - 1] + &(&hpow[k] * &prev[k]));
                }
            }
            rows.push(row);
        }
        QBinomTable {
            hbar: hbar.clone(),
            rows,
        }
    }

    pub fn hbar(&self) -> &CycNumber {
        &self.hbar
    }

    pub fn max_m(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, m: usize, k: usize) -> Option<&CycNumber> {
        self.rows.get(m).and_then(|row| row.get(k))
    }
}
