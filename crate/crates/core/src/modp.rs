//! Word-sized prime fields carrying a primitive N-th root of unity, used to
//! evaluate cyclotomic integers through a ring homomorphism Z[ζ_N] → F_p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::cyclotomic::CycNumber;

/// Largest prime field size used; keeps products of two residues in a `u64`.
const PRIME_LIMIT: u64 = 1 << 31;

fn mulmod_wide(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_wide(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_wide(acc, base, m);
        }
        base = mulmod_wide(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut r) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = powmod_wide(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulmod_wide(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// F_p with p ≡ 1 (mod N) and a fixed element ω of exact order N.
#[derive(Clone, Debug)]
pub struct PrimeField {
    p: u64,
    /// floor(2^64 / p), for Barrett reduction.
    barrett: u64,
    order: u32,
    /// ω^t for `0 <= t < order`.
    powers: Vec<u64>,
}

impl PrimeField {
    /// The largest prime below 2^31 that is ≡ 1 mod `order`, with ω the
    /// `(p-1)/order` power of the least generator giving exact order `order`.
    pub fn for_order(order: u32) -> Self {
        Self::for_order_below(order, PRIME_LIMIT)
    }

    /// As [`PrimeField::for_order`] with the prime strictly below `limit`.
    pub fn for_order_below(order: u32, limit: u64) -> Self {
        let n = order as u64;
        assert!(limit <= PRIME_LIMIT && limit > n);
        let mut p = (limit - 1) / n * n + 1;
        if p >= limit {
            p -= n;
        }
        while !is_prime(p) {
            p -= n;
        }
        let factors = prime_factors(n);
        let omega = (2..p)
            .map(|g| powmod_wide(g, (p - 1) / n, p))
            .find(|&w| factors.iter().all(|&f| powmod_wide(w, n / f, p) != 1))
            .expect("F_p^* is cyclic of order divisible by N");
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = 1u64;
        for _ in 0..order {
            powers.push(cur);
            cur = mulmod_wide(cur, omega, p);
        }
        PrimeField {
            p,
            barrett: u64::MAX / p,
            order,
            powers,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// x mod p for any `x < 2^64`.
    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let r = x - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, base: u64, exp: u64) -> u64 {
        powmod_wide(base, exp, self.p)
    }

    /// Inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    /// ω^t.
    pub fn root(&self, t: i64) -> u64 {
        self.powers[t.rem_euclid(self.order as i64) as usize]
    }

    fn bigint(&self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("residue fits")
    }

    /// Image of an element of Q(ζ_N) under ζ ↦ ω, or `None` when its
    /// denominator vanishes mod p.
    pub fn image(&self, x: &CycNumber) -> Option<u64> {
        debug_assert_eq!(x.order_param(), self.order);
        if let Some((neg, exp)) = x.as_unit() {
            let w = self.root(exp as i64);
            return Some(if neg { self.neg(w) } else { w });
        }
        let den = self.bigint(x.denominator());
        if den == 0 {
            return None;
        }
        let mut acc = 0u64;
        for (t, c) in x.numerators().iter().enumerate() {
            if !c.is_zero() {
                acc = self.add(acc, self.mul(self.bigint(c), self.root(t as i64)));
            }
        }
        Some(self.mul(acc, self.inv(den)))
    }
}

/// Exact zero test for integral elements of Q(ζ_N): evaluates under every
/// embedding ζ ↦ ω^u (u a unit mod N) modulo two primes p1, p2 ≡ 1 mod N.
///
/// If all images of an algebraic integer α vanish then α ∈ p1·p2·Z[ζ], so
/// every complex conjugate of a nonzero α has norm product at least
/// (p1 p2)^φ(N). Hence α = 0 as soon as α has a representative
/// Σ a_t ζ^t with Σ |a_t| < p1·p2; callers supply that bound.
#[derive(Clone, Debug)]
pub struct Fingerprinter {
    fields: Vec<PrimeField>,
    units: Vec<u32>,
}

impl Fingerprinter {
    pub fn new(order: u32) -> Self {
        let first = PrimeField::for_order(order);
        let second = PrimeField::for_order_below(order, first.modulus());
        let units = (1..=order)
            .filter(|u| num_integer::gcd(*u, order) == 1)
            .map(|u| u % order)
            .collect();
        Fingerprinter {
            fields: vec![first, second],
            units,
        }
    }

    /// Number of residues in one fingerprint.
    pub fn width(&self) -> usize {
        self.fields.len() * self.units.len()
    }

    /// Lifts with L1 norm strictly below this value are decided exactly.
    pub fn bound(&self) -> u128 {
        self.fields.iter().map(|f| f.modulus() as u128).product()
    }

    fn slots(&self) -> impl Iterator<Item = (&PrimeField, u32)> {
        self.fields
            .iter()
            .flat_map(move |f| self.units.iter().map(move |&u| (f, u)))
    }

    /// Images of `±ζ^exp`.
    pub fn unit(&self, neg: bool, exp: i64) -> Vec<u64> {
        self.slots()
            .map(|(f, u)| {
                let w = f.root(exp * u as i64);
                if neg {
                    f.neg(w)
                } else {
                    w
                }
            })
            .collect()
    }

    /// Images of an element with integral power-basis coefficients; `None`
    /// for non-integral input.
    pub fn images(&self, x: &CycNumber) -> Option<Vec<u64>> {
        if let Some((neg, exp)) = x.as_unit() {
            return Some(self.unit(neg, exp as i64));
        }
        if !x.denominator().is_one() {
            return None;
        }
        let coeffs: Vec<(usize, &BigInt)> = x
            .numerators()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Some(
            self.slots()
                .map(|(f, u)| {
                    coeffs.iter().fold(0, |acc, (t, c)| {
                        f.add(acc, f.mul(f.bigint(c), f.root(*t as i64 * u as i64)))
                    })
                })
                .collect(),
        )
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.width()]
    }

    /// `acc += a * b` slotwise.
    pub fn mul_add(&self, acc: &mut [u64], a: &[u64], b: &[u64]) {
        let per = self.units.len();
        for (k, f) in self.fields.iter().enumerate() {
            let r = k * per..(k + 1) * per;
            for ((x, &y), &z) in acc[r.clone()].iter_mut().zip(&a[r.clone()]).zip(&b[r]) {
                *x = f.add(*x, f.mul(y, z));
            }
        }
    }

    /// `acc -= a` slotwise.
    pub fn sub_assign(&self, acc: &mut [u64], a: &[u64]) {
        let per = self.units.len();
        for (k, f) in self.fields.iter().enumerate() {
            let r = k * per..(k + 1) * per;
            for (x, &y) in acc[r.clone()].iter_mut().zip(&a[r]) {
                *x = f.sub(*x, y);
            }
        }
    }

    /// Slotwise product.
    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = self.zero();
        self.mul_add(&mut out, a, b);
        out
    }

    pub fn is_zero(v: &[u64]) -> bool {
        v.iter().all(|&x| x == 0)
    }
}

/// Rank of a dense matrix over F_p (rows of residues); destroys its input.
pub fn rank_mod(field: &PrimeField, rows: &mut [Vec<u64>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = field.inv(rows[rank][col]);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let f = field.mul(f, inv);
            for c in col..ncols {
                if pivot_row[c] != 0 {
                    row[c] = field.sub(row[c], field.mul(f, pivot_row[c]));
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{root_of_unity, CyclotomicField};

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        let slow = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(n), slow(n), "{n}");
        }
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
    }

    #[test]
    fn root_has_exact_order() {
        for order in [1u32, 2, 4, 9, 16, 25] {
            let f = PrimeField::for_order(order);
            assert!(f.modulus() < PRIME_LIMIT);
            assert_eq!((f.modulus() - 1) % order as u64, 0);
            let w = f.root(1);
            for t in 1..order as u64 {
                assert_ne!(f.pow(w, t), 1);
            }
            assert_eq!(f.pow(w, order as u64), 1);
        }
    }

    #[test]
    fn barrett_reduction_is_exact() {
        let f = PrimeField::for_order(25);
        let p = f.modulus();
        for x in [0, 1, p - 1, p, p + 1, (p - 1) * (p - 1), u64::MAX] {
            assert_eq!(f.reduce(x), x % p);
        }
    }

    #[test]
    fn image_is_a_ring_homomorphism() {
        let field = CyclotomicField::get(9);
        let f = PrimeField::for_order(9);
        let a = CycNumber::from_int_coeffs(&field, &[3, -1, 0, 2, 0, 5]);
        let b = &root_of_unity(9, 4) + &CycNumber::from_integer(&field, 7);
        let ia = f.image(&a).unwrap();
        let ib = f.image(&b).unwrap();
        assert_eq!(f.image(&(&a * &b)).unwrap(), f.mul(ia, ib));
        assert_eq!(f.image(&(&a + &b)).unwrap(), f.add(ia, ib));
        let inv = a.inv().unwrap();
        assert_eq!(f.mul(f.image(&inv).unwrap(), ia), 1);
        assert_eq!(f.image(&-root_of_unity(9, 2)).unwrap(), f.neg(f.root(2)));
    }

    #[test]
    fn fingerprints_detect_nonzero_elements() {
        let field = CyclotomicField::get(25);
        let fp = Fingerprinter::new(25);
        assert_eq!(fp.width(), 40);
        assert!(fp.bound() > 1u128 << 60);
        let one = CycNumber::from_integer(&field, 1);
        // Φ_25(ζ) = 0 written as an unreduced lift.
        let mut phi = fp.zero();
        for t in 0..5 {
            fp.mul_add(&mut phi, &fp.unit(false, 5 * t), &fp.images(&one).unwrap());
        }
        assert!(Fingerprinter::is_zero(&phi));
        let a = CycNumber::from_int_coeffs(&field, &[3, -1, 0, 2, 0, 5]);
        let b = &root_of_unity(25, 7) - &root_of_unity(25, 3);
        let lhs = fp.images(&(&a * &b)).unwrap();
        assert_eq!(lhs, fp.mul(&fp.images(&a).unwrap(), &fp.images(&b).unwrap()));
        assert!(!Fingerprinter::is_zero(&fp.images(&b).unwrap()));
        let half = CycNumber::from_rational(&field, &num_rational::BigRational::new(1.into(), 2.into()));
        assert!(fp.images(&half).is_none());
    }

    #[test]
    fn modular_rank() {
        let f = PrimeField::for_order(4);
        let mut m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank_mod(&f, &mut m), 2);
        let mut empty: Vec<Vec<u64>> = Vec::new();
        assert_eq!(rank_mod(&f, &mut empty), 0);
    }
}
