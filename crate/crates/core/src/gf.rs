//! Finite fields GF(p^m) given by an explicit defining polynomial.
//!
//! Elements are stored as an integer index `c0 + c1 p + ... + c_{m-1} p^{m-1}`
//! where `c_i` is the coefficient of `t^i` and `t` is the residue class of `x`.
//! Multiplication goes through log/exp tables built from a primitive element.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

const ADD_TABLE_LIMIT: u32 = 256;

/// A field element, encoded as its coefficient vector in base `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Pow(i64),
}

/// GF(p^m) together with its arithmetic tables.
#[derive(Clone)]
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    poly: Vec<u32>,
    primitive_x: bool,
    generator: Fe,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.poly == other.poly
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; poly={:?})", self.p, self.m, self.poly)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomial helpers over GF(p), constant term first, no trailing zeros.
fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let f = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        for i in 0..=db {
            let sub = (f as u64 * b[i] as u64 % p as u64) as u32;
            let idx = dr - db + i;
            r[idx] = (r[idx] + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Trial division by every monic polynomial of degree 1..=m/2.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let m = poly.len() - 1;
    if m <= 1 {
        return true;
    }
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                cand.push((c % p as u64) as u32);
                c /= p as u64;
            }
            cand.push(1);
            if poly_rem(poly, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds GF(p^m) from a monic defining polynomial (constant term first).
    pub fn new(p: u32, m: u32, poly: &[u32]) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 || poly.len() != m as usize + 1 || poly[m as usize] != 1 || poly.iter().any(|&c| c >= p) {
            return Err(Error::DegreeMismatch { expected: m, got: poly.to_vec() });
        }
        let q64 = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q64 > MAX_ORDER {
            return Err(Error::FieldTooLarge(q64));
        }
        if !is_irreducible(poly, p) {
            return Err(Error::NotIrreducible(p));
        }
        let q = q64 as u32;
        let mut field = Field {
            p,
            m,
            q,
            poly: poly.to_vec(),
            primitive_x: false,
            generator: Fe::ONE,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            add_table: None,
        };
        field.neg = (0..q).map(|a| field.neg_digits(Fe(a)).0).collect();
        if q <= ADD_TABLE_LIMIT {
            let mut tab = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    tab[(a * q + b) as usize] = field.add_digits(Fe(a), Fe(b)).0;
                }
            }
            field.add_table = Some(tab);
        }
        let x = field.residue_x();
        let gen = if field.slow_is_primitive(x) {
            field.primitive_x = true;
            x
        } else {
            (2..q).map(Fe).find(|&c| field.slow_is_primitive(c)).unwrap_or(Fe::ONE)
        };
        field.generator = gen;
        let order = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut cur = Fe::ONE;
        for i in 0..order {
            exp[i] = cur.0;
            exp[i + order] = cur.0;
            log[cur.0 as usize] = i as u32;
            cur = field.slow_mul(cur, gen);
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    /// The prime field GF(p), defined by `x`.
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, &[0, 1])
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn order(&self) -> u32 {
        self.q
    }
    pub fn poly(&self) -> &[u32] {
        &self.poly
    }
    /// Whether the residue `t` of `x` generates the multiplicative group.
    pub fn is_x_primitive(&self) -> bool {
        self.primitive_x
    }
    /// Primitive element used for the log tables (`t` itself when primitive).
    pub fn generator(&self) -> Fe {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }
    pub fn nonzero(&self) -> impl Iterator<Item = Fe> {
        (1..self.q).map(Fe)
    }

    /// Residue class of `x`.
    pub fn residue_x(&self) -> Fe {
        if self.m == 1 {
            // x = -c0 in GF(p)
            Fe((self.p - self.poly[0]) % self.p)
        } else {
            Fe(self.p)
        }
    }

    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe> {
        if coeffs.len() > self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::BadElement(format!("{coeffs:?}")));
        }
        let mut v = 0u32;
        for &c in coeffs.iter().rev() {
            v = v * self.p + c;
        }
        Ok(Fe(v))
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m as usize);
        let mut v = a.0;
        for _ in 0..self.m {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    fn add_digits(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut scale) = (a.0, b.0, 0u32, 1u32);
        for _ in 0..self.m {
            out += ((x % self.p + y % self.p) % self.p) * scale;
            x /= self.p;
            y /= self.p;
            scale = scale.wrapping_mul(self.p);
        }
        Fe(out)
    }

    fn neg_digits(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut scale) = (a.0, 0u32, 1u32);
        for _ in 0..self.m {
            out += ((self.p - x % self.p) % self.p) * scale;
            x /= self.p;
            scale = scale.wrapping_mul(self.p);
        }
        Fe(out)
    }

    fn slow_mul(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p as u64;
        let m = self.m as usize;
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0u64; 2 * m];
        for i in 0..m {
            for j in 0..m {
                prod[i + j] = (prod[i + j] + ca[i] as u64 * cb[j] as u64) % p;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        let r = poly_rem(&prod, &self.poly, self.p);
        let mut padded = r;
        padded.resize(m, 0);
        self.from_coeffs(&padded).expect("reduced polynomial fits")
    }

    fn slow_pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut result = Fe::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.slow_mul(result, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        result
    }

    fn slow_is_primitive(&self, a: Fe) -> bool {
        if a.is_zero() {
            return false;
        }
        let order = (self.q - 1) as u64;
        if order == 1 {
            return a == Fe::ONE;
        }
        prime_factors(order).into_iter().all(|l| self.slow_pow(a, order / l) != Fe::ONE)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        match &self.add_table {
            Some(tab) => Fe(tab[(a.0 * self.q + b.0) as usize]),
            None => self.add_digits(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let order = self.q - 1;
        Ok(Fe(self.exp[((order - self.log[a.0 as usize]) % order) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`; negative exponents need a nonzero base.
    pub fn pow(&self, a: Fe, e: i64) -> Result<Fe> {
        if a.is_zero() {
            return match e {
                0 => Ok(Fe::ONE),
                e if e > 0 => Ok(Fe::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let order = (self.q - 1) as i64;
        let l = self.log[a.0 as usize] as i64;
        Ok(Fe(self.exp[(l * e.rem_euclid(order)).rem_euclid(order) as usize]))
    }

    pub fn arith(&self, a: Fe, b: Fe, op: ArithOp) -> Result<Fe> {
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Sub => Ok(self.sub(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Div => self.div(a, b),
            ArithOp::Inv => self.inv(a),
            ArithOp::Pow(e) => self.pow(a, e),
        }
    }

    /// `a^(p^k)`, the k-th power of the Frobenius automorphism; `k` is taken mod m.
    #[inline]
    pub fn frobenius(&self, a: Fe, k: i64) -> Fe {
        if a.is_zero() {
            return a;
        }
        let k = k.rem_euclid(self.m as i64) as u32;
        if k == 0 {
            return a;
        }
        let order = (self.q - 1) as u64;
        let pk = (self.p as u64).pow(k) % order;
        Fe(self.exp[(self.log[a.0 as usize] as u64 * pk % order) as usize])
    }

    /// Discrete logarithm to the base of [`Field::generator`].
    pub fn dlog(&self, a: Fe) -> Option<u32> {
        if a.is_zero() {
            None
        } else {
            Some(self.log[a.0 as usize])
        }
    }

    pub fn gen_pow(&self, k: u64) -> Fe {
        Fe(self.exp[(k % (self.q as u64 - 1)) as usize])
    }

    /// Whether |K| is a square, i.e. the Hermitian form exists.
    pub fn is_square_order(&self) -> bool {
        self.m.is_multiple_of(2)
    }

    /// sqrt(|K|) for the Hermitian conjugation `a -> a^q`.
    pub fn hermitian_q(&self) -> Result<u32> {
        if !self.is_square_order() {
            return Err(Error::NotSquareField);
        }
        Ok(self.p.pow(self.m / 2))
    }

    /// The conjugation `a -> a^sqrt(|K|)`.
    pub fn conj(&self, a: Fe) -> Result<Fe> {
        if !self.is_square_order() {
            return Err(Error::NotSquareField);
        }
        Ok(self.frobenius(a, (self.m / 2) as i64))
    }

    pub fn render(&self, a: Fe) -> String {
        if self.m == 1 {
            return a.0.to_string();
        }
        match a.0 {
            0 => "0".to_string(),
            1 => "1".to_string(),
            _ if self.primitive_x => format!("t^{}", self.log[a.0 as usize]),
            _ => self.render_coeffs(a),
        }
    }

    pub fn render_coeffs(&self, a: Fe) -> String {
        let parts: Vec<String> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// Parses `0`, integers (prime subfield), `t`, `t^k`, `w^k`, `tau^k`, or `[c0,c1,...]`.
    pub fn parse(&self, text: &str) -> Result<Fe> {
        let s = text.trim();
        let bad = || Error::BadElement(text.to_string());
        if s.is_empty() {
            return Err(bad());
        }
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let mut coeffs = Vec::new();
            for part in inner.split(',') {
                let c: i64 = part.trim().parse().map_err(|_| bad())?;
                coeffs.push(c.rem_euclid(self.p as i64) as u32);
            }
            return self.from_coeffs(&coeffs).map_err(|_| bad());
        }
        if let Ok(n) = s.parse::<i64>() {
            return Ok(self.from_int(n));
        }
        let (sign, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, s),
        };
        let (base, exp) = match body.split_once('^') {
            Some((b, e)) => (b.trim(), e.trim().parse::<i64>().map_err(|_| bad())?),
            None => (body, 1),
        };
        if !matches!(base, "t" | "w" | "tau" | "x") {
            return Err(bad());
        }
        let v = self.pow(self.residue_x(), exp).map_err(|_| bad())?;
        Ok(if sign { self.neg(v) } else { v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Field {
        Field::new(2, 2, &[1, 1, 1]).unwrap()
    }
    fn f8() -> Field {
        Field::new(2, 3, &[1, 1, 0, 1]).unwrap()
    }
    fn f9() -> Field {
        Field::new(3, 2, &[2, 2, 1]).unwrap()
    }

    #[test]
    fn make_fields() {
        assert!(f8().is_x_primitive());
        let gf3 = Field::new(3, 1, &[1, 1]).unwrap();
        assert_eq!(gf3.order(), 3);
        let f4 = f4();
        assert!(f4.is_x_primitive());
        let w = f4.residue_x();
        assert_eq!(f4.pow(w, 3).unwrap(), Fe::ONE);
        assert_ne!(w, Fe::ONE);
    }

    #[test]
    fn make_errors() {
        assert_eq!(Field::new(4, 1, &[0, 1]), Err(Error::NotPrime(4)));
        assert!(matches!(Field::new(2, 2, &[1, 0, 1]), Err(Error::NotIrreducible(2))));
        assert!(matches!(Field::new(2, 2, &[1, 1]), Err(Error::DegreeMismatch { .. })));
        // (x^2+x+1)(x^3+x+1) has no linear factor but is reducible.
        assert!(Field::new(2, 5, &[1, 0, 1, 0, 0, 1]).is_ok());
        assert!(matches!(Field::new(2, 5, &[1, 0, 0, 0, 1, 1]), Err(Error::NotIrreducible(2))));
    }

    #[test]
    fn arithmetic_examples() {
        let f = f4();
        let w = f.residue_x();
        let w2 = f.mul(w, w);
        assert_eq!(f.mul(w, w2), Fe::ONE);
        assert_eq!(f.add(w, Fe::ZERO), w);

        let f = f9();
        let tau = f.residue_x();
        assert_eq!(f.pow(tau, 4).unwrap(), f.from_int(2));
        assert_eq!(f.pow(tau, 2).unwrap(), f.add(tau, Fe::ONE));
        assert!(f.is_x_primitive());
        assert_eq!(f.inv(Fe::ZERO), Err(Error::DivisionByZero));
        assert_eq!(f.div(tau, Fe::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn frobenius_examples() {
        let f = f4();
        let w = f.residue_x();
        assert_eq!(f.frobenius(w, 1), f.mul(w, w));
        assert_eq!(f.frobenius(Fe::ONE, 5), Fe::ONE);
        let f = f8();
        let t = f.residue_x();
        let t2 = f.mul(t, t);
        assert_eq!(f.frobenius(t, 2), f.add(t2, t));
    }

    #[test]
    fn field_axioms_small_fields() {
        for f in [f4(), f8(), f9(), Field::new(3, 3, &[1, 2, 0, 1]).unwrap(), Field::prime(5).unwrap()] {
            for a in f.elements() {
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
                }
                assert_eq!(f.frobenius(a, f.m() as i64), a);
                assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
                for b in f.elements() {
                    for k in 0..f.m() as i64 {
                        assert_eq!(f.frobenius(f.add(a, b), k), f.add(f.frobenius(a, k), f.frobenius(b, k)));
                        assert_eq!(f.frobenius(f.mul(a, b), k), f.mul(f.frobenius(a, k), f.frobenius(b, k)));
                    }
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        for f in [f4(), f8(), f9(), Field::new(3, 3, &[1, 2, 0, 1]).unwrap(), Field::prime(3).unwrap()] {
            for a in f.elements() {
                assert_eq!(f.parse(&f.render(a)).unwrap(), a);
                assert_eq!(f.parse(&f.render_coeffs(a)).unwrap(), a);
            }
        }
        let f = f9();
        assert_eq!(f.parse("tau^4").unwrap(), f.from_int(2));
        assert_eq!(f.parse("w^8").unwrap(), Fe::ONE);
        assert!(f.parse("q^2").is_err());
    }

    #[test]
    fn gf27_is_primitive() {
        let f = Field::new(3, 3, &[1, 2, 0, 1]).unwrap();
        assert!(f.is_x_primitive());
    }
}
