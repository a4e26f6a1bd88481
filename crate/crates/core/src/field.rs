//! Arithmetic in GF(2^n) for 2 <= n <= 12.
//!
//! Elements are bit vectors in the polynomial basis (bit i = coefficient of
//! x^i). Multiplication, inversion and powering run on exp/log tables built
//! once per context; Frobenius maps x -> x^(2^e) are precomputed permutation
//! tables. Contexts are immutable after construction and freely shareable
//! across threads.

use std::fmt;
use thiserror::Error;

/// Smallest supported extension degree.
pub const MIN_DEGREE: usize = 2;
/// Largest supported extension degree (rows of GF(2) matrices fit in a u16).
pub const MAX_DEGREE: usize = 12;

/// Smallest primitive polynomial per degree 2..=12 (bit i = coefficient of
/// x^i), so the class of x generates the multiplicative group of every
/// default context. Degree 6 is x^6 + x + 1, the modulus all GF(64)
/// constants in this crate are expressed against.
const DEFAULT_MODULI: [u32; MAX_DEGREE - MIN_DEGREE + 1] = [
    0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053,
];

/// Default modulus for a given degree, if the degree is supported.
pub fn default_modulus(n: usize) -> Option<u32> {
    if (MIN_DEGREE..=MAX_DEGREE).contains(&n) {
        Some(DEFAULT_MODULI[n - MIN_DEGREE])
    } else {
        None
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("extension degree {0} outside supported range {MIN_DEGREE}..={MAX_DEGREE}")]
    DegreeOutOfRange(usize),
    #[error("modulus {0:#x} does not have degree {1}")]
    WrongModulusDegree(u32, usize),
    #[error("modulus {0:#x} is reducible over GF(2)")]
    ReducibleModulus(u32),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("subfield degree {0} does not divide {1}")]
    NoSuchSubfield(usize, usize),
    #[error("cannot parse field element {0:?}: {1}")]
    ParseElement(String, String),
}

/// An element of GF(2^n), valid relative to some [`FieldContext`].
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps raw bits. Range checking against a context happens in
    /// [`FieldContext::element`]; table lookups debug-assert the range.
    pub fn from_bits(bits: u16) -> FieldElement {
        FieldElement(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// Arithmetic tables for one concrete GF(2^n).
pub struct FieldContext {
    n: usize,
    modulus: u32,
    order: usize,
    mult_order: usize,
    /// exp[i] = g^(i+1); the final entry is g^(2^n - 1) = 1.
    exp: Vec<u16>,
    /// log[a.bits] = i with exp[i] = a; log[0] is a sentinel.
    log: Vec<u16>,
    /// frob[e][a.bits] = a^(2^e) for 0 <= e < n.
    frob: Vec<Vec<u16>>,
    generator: FieldElement,
}

const LOG_ZERO: u16 = u16::MAX;

fn poly_degree(p: u64) -> u32 {
    63 - p.leading_zeros()
}

fn poly_rem(mut a: u64, m: u64) -> u64 {
    let dm = poly_degree(m);
    while a != 0 && poly_degree(a) >= dm {
        a ^= m << (poly_degree(a) - dm);
    }
    a
}

/// Irreducibility over GF(2) by trial division: a degree-n polynomial is
/// reducible iff it has a factor of degree <= n/2.
pub fn is_irreducible(modulus: u32, n: usize) -> bool {
    if modulus >> n != 1 {
        return false;
    }
    for d in 1..=n / 2 {
        for divisor in (1u64 << d)..(1u64 << (d + 1)) {
            if poly_rem(modulus as u64, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

fn slow_mul(mut a: u32, mut b: u32, modulus: u32, n: usize) -> u32 {
    let mut r = 0;
    while b != 0 {
        if b & 1 != 0 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & (1 << n) != 0 {
            a ^= modulus;
        }
    }
    r
}

impl FieldContext {
    /// Builds a context for GF(2)[x]/(modulus). Fails on degree or
    /// irreducibility violations.
    pub fn new(n: usize, modulus: u32) -> Result<FieldContext, FieldError> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
            return Err(FieldError::DegreeOutOfRange(n));
        }
        if modulus >> n != 1 {
            return Err(FieldError::WrongModulusDegree(modulus, n));
        }
        if !is_irreducible(modulus, n) {
            return Err(FieldError::ReducibleModulus(modulus));
        }
        let order = 1usize << n;
        let mult_order = order - 1;

        // Smallest element generating the full multiplicative group. For
        // every default modulus this is the class of x (value 2).
        let mut generator = 0u32;
        for cand in 2..order as u32 {
            let mut acc = cand;
            let mut ord = 1usize;
            while acc != 1 {
                acc = slow_mul(acc, cand, modulus, n);
                ord += 1;
                debug_assert!(ord <= mult_order);
            }
            if ord == mult_order {
                generator = cand;
                break;
            }
        }
        assert!(generator != 0, "every finite field has a primitive element");

        let mut exp = vec![0u16; mult_order];
        let mut log = vec![LOG_ZERO; order];
        let mut acc = generator;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = acc as u16;
            debug_assert_eq!(log[acc as usize], LOG_ZERO, "generator order too small");
            log[acc as usize] = i as u16;
            acc = slow_mul(acc, generator, modulus, n);
        }

        let mut frob: Vec<Vec<u16>> = Vec::with_capacity(n);
        frob.push((0..order as u16).collect());
        let square: Vec<u16> = (0..order as u32)
            .map(|a| slow_mul(a, a, modulus, n) as u16)
            .collect();
        for e in 1..n {
            let prev = &frob[e - 1];
            frob.push((0..order).map(|a| square[prev[a] as usize]).collect());
        }

        Ok(FieldContext {
            n,
            modulus,
            order,
            mult_order,
            exp,
            log,
            frob,
            generator: FieldElement(generator as u16),
        })
    }

    /// Context with the shipped default modulus for degree n.
    pub fn with_default_modulus(n: usize) -> Result<FieldContext, FieldError> {
        let modulus = default_modulus(n).ok_or(FieldError::DegreeOutOfRange(n))?;
        FieldContext::new(n, modulus)
    }

    /// The distinguished GF(64) = GF(2)[j]/(j^6 + j + 1) instance.
    pub fn gf64() -> FieldContext {
        FieldContext::new(6, 0x43).expect("x^6 + x + 1 is irreducible")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// 2^n.
    pub fn order(&self) -> usize {
        self.order
    }

    /// 2^n - 1.
    pub fn mult_order(&self) -> usize {
        self.mult_order
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    /// Validated element constructor.
    pub fn element(&self, bits: u16) -> FieldElement {
        assert!(
            (bits as usize) < self.order,
            "element {bits:#x} out of range for GF(2^{})",
            self.n
        );
        FieldElement(bits)
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        (a.0 as usize) < self.order
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let la = self.log[a.0 as usize] as usize;
        let lb = self.log[b.0 as usize] as usize;
        FieldElement(self.exp[(la + lb + 1) % self.mult_order])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::ZeroInverse);
        }
        let la = self.log[a.0 as usize] as usize;
        Ok(FieldElement(
            self.exp[(2 * self.mult_order - la - 2) % self.mult_order],
        ))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if a.0 == 0 {
            return if e == 0 {
                FieldElement::ONE
            } else {
                FieldElement::ZERO
            };
        }
        let la = self.log[a.0 as usize] as u128;
        let t = ((la + 1) * e as u128 % self.mult_order as u128) as usize;
        if t == 0 {
            FieldElement::ONE
        } else {
            FieldElement(self.exp[t - 1])
        }
    }

    /// g^k for any (possibly negative) k.
    pub fn gen_pow(&self, k: i64) -> FieldElement {
        let t = k.rem_euclid(self.mult_order as i64) as usize;
        if t == 0 {
            FieldElement::ONE
        } else {
            FieldElement(self.exp[t - 1])
        }
    }

    /// Discrete log base g in 0..2^n-1; None for zero.
    pub fn discrete_log(&self, a: FieldElement) -> Option<usize> {
        if a.0 == 0 {
            None
        } else {
            Some((self.log[a.0 as usize] as usize + 1) % self.mult_order)
        }
    }

    /// a^(2^e); e is reduced mod n (x^(2^n) = x).
    pub fn frobenius(&self, a: FieldElement, e: usize) -> FieldElement {
        FieldElement(self.frob[e % self.n][a.0 as usize])
    }

    /// Norm from GF(2^n) down to the subfield GF(2^d): a^((2^n-1)/(2^d-1)).
    pub fn relative_norm(&self, a: FieldElement, d: usize) -> Result<FieldElement, FieldError> {
        if d == 0 || self.n % d != 0 {
            return Err(FieldError::NoSuchSubfield(d, self.n));
        }
        let e = (self.mult_order / ((1usize << d) - 1)) as u64;
        Ok(self.pow(a, e))
    }

    /// Elements of the subfield GF(2^d), ascending by bit value.
    pub fn subfield_elements(&self, d: usize) -> Result<Vec<FieldElement>, FieldError> {
        if d == 0 || self.n % d != 0 {
            return Err(FieldError::NoSuchSubfield(d, self.n));
        }
        Ok(self
            .elements()
            .filter(|&a| self.frobenius(a, d % self.n) == a)
            .collect())
    }

    /// All 2^n elements, ascending by bit value.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order as u16).map(FieldElement)
    }

    /// Nonzero elements in exp-table order: g, g^2, ..., g^(2^n-1) = 1.
    pub fn nonzero_elements_exp_order(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.exp.iter().map(|&b| FieldElement(b))
    }

    /// Accepts `g^k`, `g`, `0x..` hex, or decimal bit values.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement, FieldError> {
        let s = s.trim();
        let parse_err = |why: &str| FieldError::ParseElement(s.to_string(), why.to_string());
        if s == "g" {
            return Ok(self.generator);
        }
        if let Some(k) = s.strip_prefix("g^") {
            let k: i64 = k.parse().map_err(|_| parse_err("bad exponent"))?;
            return Ok(self.gen_pow(k));
        }
        let bits = if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            u16::from_str_radix(hex, 16).map_err(|_| parse_err("bad hex"))?
        } else {
            s.parse::<u16>().map_err(|_| parse_err("bad integer"))?
        };
        if (bits as usize) >= self.order {
            return Err(parse_err("value out of range for this field"));
        }
        Ok(FieldElement(bits))
    }

    pub fn format_hex(&self, a: FieldElement) -> String {
        format!("{:#x}", a.0)
    }

    /// `g^k` form, or `0` for zero.
    pub fn format_gk(&self, a: FieldElement) -> String {
        match self.discrete_log(a) {
            None => "0".to_string(),
            Some(k) => format!("g^{k}"),
        }
    }
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldContext(n={}, modulus={:#x})", self.n, self.modulus)
    }
}
