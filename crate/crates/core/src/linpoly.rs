//! Linearized polynomials f(x) = sum f_i x^(2^i) over GF(2^n), their Dickson
//! matrices, ranks, determinants, inverses, and determinant profiles.
//!
//! Every F_2-linear map on GF(2^n) is such a polynomial; the Dickson matrix
//! D_f gives a rank/determinant oracle over GF(2^n) that must agree with the
//! GF(2) matrix view from `binmat` (rank(f) = rank(D_f)), which the tests
//! exercise as the module's core cross-check.

// Moore/Dickson matrix code indexes rows and columns simultaneously;
// iterator rewrites of these loops obscure the elimination.
#![allow(clippy::needless_range_loop)]

use crate::binmat::BinaryMatrix;
use crate::field::{FieldContext, FieldElement};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinPolyError {
    #[error("polynomial has {0} coefficients, context expects {1}")]
    LengthMismatch(usize, usize),
    #[error("map is singular (rank {0} < {1})")]
    Singular(usize, usize),
    #[error("cannot parse linearized polynomial {0:?}: {1}")]
    Parse(String, String),
}

/// Coefficient vector (f_0, ..., f_{n-1}) of f(x) = sum f_i x^(2^i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearizedPoly {
    coeffs: Vec<FieldElement>,
}

impl LinearizedPoly {
    pub fn new(coeffs: Vec<FieldElement>) -> LinearizedPoly {
        assert!(!coeffs.is_empty() && coeffs.len() <= crate::field::MAX_DEGREE);
        LinearizedPoly { coeffs }
    }

    pub fn zero(n: usize) -> LinearizedPoly {
        LinearizedPoly::new(vec![FieldElement::ZERO; n])
    }

    /// c * x^(2^slot).
    pub fn monomial(n: usize, slot: usize, c: FieldElement) -> LinearizedPoly {
        assert!(slot < n);
        let mut coeffs = vec![FieldElement::ZERO; n];
        coeffs[slot] = c;
        LinearizedPoly::new(coeffs)
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Sum (= difference in characteristic 2).
    pub fn add(&self, other: &LinearizedPoly) -> LinearizedPoly {
        assert_eq!(self.n(), other.n());
        LinearizedPoly::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| FieldElement::from_bits(a.bits() ^ b.bits()))
                .collect(),
        )
    }

    pub fn evaluate(&self, ctx: &FieldContext, x: FieldElement) -> FieldElement {
        debug_assert_eq!(self.n(), ctx.n());
        let mut acc = FieldElement::ZERO;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = ctx.add(acc, ctx.mul(c, ctx.frobenius(x, i)));
            }
        }
        acc
    }

    /// The GF(2) matrix view of the map x -> f(x).
    pub fn to_binary_matrix(&self, ctx: &FieldContext) -> BinaryMatrix {
        BinaryMatrix::from_map(ctx, |x| self.evaluate(ctx, x))
    }

    /// Rank of the map computed on the GF(2) side.
    pub fn binary_rank(&self, ctx: &FieldContext) -> usize {
        self.to_binary_matrix(ctx).rank()
    }

    /// The Dickson (autocirculant) matrix: entry (r, c) = f_{(c-r) mod n}^(2^r).
    pub fn dickson(&self, ctx: &FieldContext) -> DicksonMatrix {
        let n = self.n();
        debug_assert_eq!(n, ctx.n());
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let idx = (c + n - r) % n;
                entries.push(ctx.frobenius(self.coeffs[idx], r));
            }
        }
        DicksonMatrix { n, entries }
    }

    /// Rank of the map computed as the GF(2^n) rank of its Dickson matrix.
    pub fn rank_via_dickson(&self, ctx: &FieldContext) -> usize {
        self.dickson(ctx).rank(ctx)
    }

    /// Compositional inverse: the linearized polynomial of the inverse map.
    /// Goes through the GF(2) matrix inverse, then re-reads coefficients by
    /// interpolation on the polynomial basis (a Moore system).
    pub fn invert(&self, ctx: &FieldContext) -> Result<LinearizedPoly, LinPolyError> {
        let n = self.n();
        let m = self.to_binary_matrix(ctx);
        let minv = m
            .invert()
            .ok_or_else(|| LinPolyError::Singular(m.rank(), n))?;
        // Solve sum_i c_i b_j^(2^i) = minv(b_j) over the basis b_j = x^j.
        let mut aug = vec![vec![FieldElement::ZERO; n + 1]; n];
        for j in 0..n {
            let bj = ctx.element(1 << j);
            for i in 0..n {
                aug[j][i] = ctx.frobenius(bj, i);
            }
            aug[j][n] = ctx.element(minv.mul_vec(1 << j));
        }
        let coeffs =
            solve_square_system(ctx, &mut aug).expect("Moore matrix of a basis is nonsingular");
        Ok(LinearizedPoly::new(coeffs))
    }

    /// Comma-separated hex coefficients, lowest index first.
    pub fn to_text(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| format!("{:#x}", c.bits()))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse(ctx: &FieldContext, s: &str) -> Result<LinearizedPoly, LinPolyError> {
        let parts: Vec<&str> = s.trim().split(',').collect();
        if parts.len() != ctx.n() {
            return Err(LinPolyError::Parse(
                s.to_string(),
                format!("expected {} coefficients, got {}", ctx.n(), parts.len()),
            ));
        }
        let mut coeffs = Vec::with_capacity(parts.len());
        for p in parts {
            let c = ctx
                .parse_element(p)
                .map_err(|e| LinPolyError::Parse(s.to_string(), e.to_string()))?;
            coeffs.push(c);
        }
        Ok(LinearizedPoly::new(coeffs))
    }
}

impl fmt::Debug for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearizedPoly({})", self.to_text())
    }
}

impl fmt::Display for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Gaussian elimination on an n x (n+1) augmented system over GF(2^n).
/// Returns the solution column, or None if the left block is singular.
fn solve_square_system(
    ctx: &FieldContext,
    aug: &mut [Vec<FieldElement>],
) -> Option<Vec<FieldElement>> {
    let n = aug.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = ctx.inv(aug[col][col]).ok()?;
        for c in col..=n {
            aug[col][c] = ctx.mul(aug[col][c], inv);
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col];
                for c in col..=n {
                    let sub = ctx.mul(factor, aug[col][c]);
                    aug[r][c] = ctx.add(aug[r][c], sub);
                }
            }
        }
    }
    Some((0..n).map(|r| aug[r][n]).collect())
}

/// n x n matrix over GF(2^n) attached to a linearized polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct DicksonMatrix {
    n: usize,
    entries: Vec<FieldElement>,
}

impl DicksonMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, r: usize, c: usize) -> FieldElement {
        self.entries[r * self.n + c]
    }

    /// Entrywise sum (= difference in characteristic 2); Dickson matrices are
    /// linear in the polynomial, so this is D_{f+g}.
    pub fn xor(&self, other: &DicksonMatrix) -> DicksonMatrix {
        assert_eq!(self.n, other.n);
        DicksonMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| FieldElement::from_bits(a.bits() ^ b.bits()))
                .collect(),
        }
    }

    /// Gaussian-elimination rank over GF(2^n).
    pub fn rank(&self, ctx: &FieldContext) -> usize {
        let mut m = self.entries.clone();
        let n = self.n;
        let mut rank = 0usize;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| !m[r * n + col].is_zero()) else {
                continue;
            };
            for c in 0..n {
                m.swap(rank * n + c, pivot * n + c);
            }
            let inv = ctx.inv(m[rank * n + col]).expect("pivot nonzero");
            for c in col..n {
                m[rank * n + c] = ctx.mul(m[rank * n + c], inv);
            }
            for r in (rank + 1)..n {
                let factor = m[r * n + col];
                if !factor.is_zero() {
                    for c in col..n {
                        let sub = ctx.mul(factor, m[rank * n + c]);
                        m[r * n + c] = ctx.add(m[r * n + c], sub);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Determinant over GF(2^n) by elimination with column pivoting (no signs
    /// in characteristic 2).
    pub fn determinant(&self, ctx: &FieldContext) -> FieldElement {
        let mut m = self.entries.clone();
        let n = self.n;
        let mut det = FieldElement::ONE;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m[r * n + col].is_zero()) else {
                return FieldElement::ZERO;
            };
            if pivot != col {
                for c in 0..n {
                    m.swap(col * n + c, pivot * n + c);
                }
            }
            let p = m[col * n + col];
            det = ctx.mul(det, p);
            let inv = ctx.inv(p).expect("pivot nonzero");
            for r in (col + 1)..n {
                let factor = ctx.mul(m[r * n + col], inv);
                if !factor.is_zero() {
                    for c in col..n {
                        let sub = ctx.mul(factor, m[col * n + c]);
                        m[r * n + c] = ctx.add(m[r * n + c], sub);
                    }
                }
            }
        }
        det
    }
}

impl fmt::Debug for DicksonMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DicksonMatrix(n={})", self.n)?;
        for r in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|c| format!("{:#x}", self.entry(r, c).bits()))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Which code the profile is taken against.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum ProfileSide {
    /// y -> det(D_{R_y} - D_f)
    Direct,
    /// y -> det(D_{R_y}^{-1} - D_g), with the zero map at y = 0
    Inverse,
}

/// Value table of the determinant profile, indexed by the bits of y.
///
/// `maps[y]` are the code maps R_y in index order. On the inverse side each
/// nonzero map is compositionally inverted first (an error surfaces only on
/// codes with singular nonzero maps, which no verified spread set has).
pub fn det_profile(
    ctx: &FieldContext,
    f: &LinearizedPoly,
    maps: &[LinearizedPoly],
    side: ProfileSide,
) -> Result<Vec<FieldElement>, LinPolyError> {
    assert_eq!(maps.len(), ctx.order());
    let mut out = Vec::with_capacity(maps.len());
    for (y, r) in maps.iter().enumerate() {
        let target = match side {
            ProfileSide::Direct => r.clone(),
            ProfileSide::Inverse => {
                if y == 0 {
                    LinearizedPoly::zero(ctx.n())
                } else {
                    r.invert(ctx)?
                }
            }
        };
        let diff = target.add(f);
        out.push(diff.dickson(ctx).determinant(ctx));
    }
    Ok(out)
}

/// Shape classification of a determinant profile.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ProfileShape {
    /// Nonzero at y = 0 and zero at every other y; `strict` when the value at
    /// y = 0 is exactly 1.
    ShearsForm {
        strict: bool,
    },
    /// Zero everywhere except at exactly one nonzero y; `strict` when the
    /// exceptional value is exactly 1.
    NonShearsForm {
        exceptional: FieldElement,
        strict: bool,
    },
    Other,
}

pub fn classify_profile(profile: &[FieldElement]) -> ProfileShape {
    let at_zero = profile[0];
    let nonzero_tail: Vec<(usize, FieldElement)> = profile
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, v)| !v.is_zero())
        .map(|(y, &v)| (y, v))
        .collect();
    if !at_zero.is_zero() && nonzero_tail.is_empty() {
        return ProfileShape::ShearsForm {
            strict: at_zero == FieldElement::ONE,
        };
    }
    if at_zero.is_zero() && nonzero_tail.len() == 1 {
        let (y, v) = nonzero_tail[0];
        return ProfileShape::NonShearsForm {
            exceptional: FieldElement::from_bits(y as u16),
            strict: v == FieldElement::ONE,
        };
    }
    ProfileShape::Other
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gtf64_right_mult(ctx: &FieldContext, y: FieldElement) -> LinearizedPoly {
        // x*y + j*x^4*y^16 as a polynomial in x
        let j = ctx.generator();
        let mut coeffs = vec![FieldElement::ZERO; 6];
        coeffs[0] = y;
        coeffs[2] = ctx.mul(j, ctx.frobenius(y, 4));
        LinearizedPoly::new(coeffs)
    }

    fn random_poly(ctx: &FieldContext, rng: &mut impl Rng) -> LinearizedPoly {
        LinearizedPoly::new(
            (0..ctx.n())
                .map(|_| ctx.element(rng.gen_range(0..ctx.order()) as u16))
                .collect(),
        )
    }

    #[test]
    fn evaluate_monomials_and_zero() {
        let ctx = FieldContext::gf64();
        let j = ctx.generator();
        let x_squared = LinearizedPoly::monomial(6, 1, FieldElement::ONE);
        assert_eq!(x_squared.evaluate(&ctx, j), ctx.mul(j, j));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let f = random_poly(&ctx, &mut rng);
            assert_eq!(f.evaluate(&ctx, FieldElement::ZERO), FieldElement::ZERO);
        }
    }

    #[test]
    fn evaluate_gtf64_right_mult() {
        let ctx = FieldContext::gf64();
        let j = ctx.generator();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..500 {
            let x = ctx.element(rng.gen_range(0..64) as u16);
            let y = ctx.element(rng.gen_range(0..64) as u16);
            let direct = ctx.add(
                ctx.mul(x, y),
                ctx.mul(j, ctx.mul(ctx.frobenius(x, 2), ctx.frobenius(y, 4))),
            );
            assert_eq!(gtf64_right_mult(&ctx, y).evaluate(&ctx, x), direct);
        }
    }

    #[test]
    fn dickson_of_x_is_identity() {
        let ctx = FieldContext::gf64();
        let d = LinearizedPoly::monomial(6, 0, FieldElement::ONE).dickson(&ctx);
        for r in 0..6 {
            for c in 0..6 {
                let expect = if r == c {
                    FieldElement::ONE
                } else {
                    FieldElement::ZERO
                };
                assert_eq!(d.entry(r, c), expect);
            }
        }
        assert_eq!(d.determinant(&ctx), FieldElement::ONE);
        assert_eq!(d.rank(&ctx), 6);
    }

    #[test]
    fn dickson_entry_law() {
        let ctx = FieldContext::gf64();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_poly(&ctx, &mut rng);
        let d = f.dickson(&ctx);
        // first row = coefficients
        for c in 0..6 {
            assert_eq!(d.entry(0, c), f.coeff(c));
        }
        // entry (1,0) = f_{n-1}^2
        assert_eq!(d.entry(1, 0), ctx.frobenius(f.coeff(5), 1));
        for r in 0..6 {
            for c in 0..6 {
                assert_eq!(d.entry(r, c), ctx.frobenius(f.coeff((c + 6 - r) % 6), r));
            }
        }
    }

    #[test]
    fn dickson_is_linear() {
        let ctx = FieldContext::gf64();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let f = random_poly(&ctx, &mut rng);
            let g = random_poly(&ctx, &mut rng);
            let lhs = f.add(&g).dickson(&ctx);
            let rhs = f.dickson(&ctx).xor(&g.dickson(&ctx));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn rank_oracles_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=6 {
            let ctx = FieldContext::with_default_modulus(n).unwrap();
            for _ in 0..2_000 {
                let f = random_poly(&ctx, &mut rng);
                let rd = f.rank_via_dickson(&ctx);
                let rb = f.binary_rank(&ctx);
                assert_eq!(rd, rb, "n={n} f={f}");
                let det = f.dickson(&ctx).determinant(&ctx);
                assert_eq!(det.is_zero(), rd < n);
            }
        }
    }

    #[test]
    fn artin_schreier_rank_one_on_gf4() {
        let ctx = FieldContext::new(2, 0x7).unwrap();
        let f = LinearizedPoly::new(vec![FieldElement::ONE, FieldElement::ONE]);
        assert_eq!(f.rank_via_dickson(&ctx), 1);
        assert_eq!(f.binary_rank(&ctx), 1);
        assert_eq!(f.dickson(&ctx).determinant(&ctx), FieldElement::ZERO);
    }

    #[test]
    fn dickson_determinant_of_gtf64_code_is_one() {
        let ctx = FieldContext::gf64();
        for y in ctx.nonzero_elements_exp_order() {
            let d = gtf64_right_mult(&ctx, y).dickson(&ctx);
            assert_eq!(d.determinant(&ctx), FieldElement::ONE, "y={y}");
        }
    }

    #[test]
    fn invert_identity_and_round_trip() {
        let ctx = FieldContext::gf64();
        let x = LinearizedPoly::monomial(6, 0, FieldElement::ONE);
        assert_eq!(x.invert(&ctx).unwrap(), x);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut seen_invertible = 0;
        while seen_invertible < 200 {
            let f = random_poly(&ctx, &mut rng);
            let Ok(finv) = f.invert(&ctx) else {
                continue;
            };
            seen_invertible += 1;
            for x in ctx.elements() {
                assert_eq!(finv.evaluate(&ctx, f.evaluate(&ctx, x)), x);
            }
            assert_eq!(finv.invert(&ctx).unwrap(), f);
        }
    }

    #[test]
    fn invert_rejects_singular() {
        let ctx = FieldContext::gf64();
        assert!(matches!(
            LinearizedPoly::zero(6).invert(&ctx),
            Err(LinPolyError::Singular(0, 6))
        ));
    }

    #[test]
    fn gtf64_inverse_closed_form() {
        // R_y^{-1}(x) = y^62 j^21 x + y^11 j^22 x^4 + y^59 j^26 x^16
        let ctx = FieldContext::gf64();
        for y in ctx.nonzero_elements_exp_order() {
            let inv = gtf64_right_mult(&ctx, y).invert(&ctx).unwrap();
            let expect = LinearizedPoly::new(vec![
                ctx.mul(ctx.pow(y, 62), ctx.gen_pow(21)),
                FieldElement::ZERO,
                ctx.mul(ctx.pow(y, 11), ctx.gen_pow(22)),
                FieldElement::ZERO,
                ctx.mul(ctx.pow(y, 59), ctx.gen_pow(26)),
                FieldElement::ZERO,
            ]);
            assert_eq!(inv, expect, "y={y}");
        }
    }

    #[test]
    fn det_profile_at_zero_is_det_dickson() {
        let ctx = FieldContext::gf64();
        let maps: Vec<LinearizedPoly> = (0..64)
            .map(|y| gtf64_right_mult(&ctx, ctx.element(y)))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let f = random_poly(&ctx, &mut rng);
            let profile = det_profile(&ctx, &f, &maps, ProfileSide::Direct).unwrap();
            assert_eq!(profile[0], f.dickson(&ctx).determinant(&ctx));
        }
    }

    #[test]
    fn det_profile_vanishes_on_code_members() {
        let ctx = FieldContext::gf64();
        let maps: Vec<LinearizedPoly> = (0..64)
            .map(|y| gtf64_right_mult(&ctx, ctx.element(y)))
            .collect();
        let f = maps[17].clone();
        let profile = det_profile(&ctx, &f, &maps, ProfileSide::Direct).unwrap();
        assert_eq!(profile[17], FieldElement::ZERO);
        assert_eq!(classify_profile(&profile), ProfileShape::Other);
    }

    #[test]
    fn classify_profile_shapes() {
        let one = FieldElement::ONE;
        let zero = FieldElement::ZERO;
        let two = FieldElement::from_bits(2);
        assert_eq!(
            classify_profile(&[one, zero, zero, zero]),
            ProfileShape::ShearsForm { strict: true }
        );
        assert_eq!(
            classify_profile(&[two, zero, zero, zero]),
            ProfileShape::ShearsForm { strict: false }
        );
        assert_eq!(
            classify_profile(&[zero, zero, one, zero]),
            ProfileShape::NonShearsForm {
                exceptional: two,
                strict: true
            }
        );
        assert_eq!(
            classify_profile(&[one, one, zero, zero]),
            ProfileShape::Other
        );
        assert_eq!(
            classify_profile(&[zero, zero, zero, zero]),
            ProfileShape::Other
        );
    }

    #[test]
    fn parse_and_text_round_trip() {
        let ctx = FieldContext::gf64();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let f = random_poly(&ctx, &mut rng);
            let back = LinearizedPoly::parse(&ctx, &f.to_text()).unwrap();
            assert_eq!(back, f);
        }
        assert_eq!(
            LinearizedPoly::parse(&ctx, "g^1,0x0,g^5,0,0,0").unwrap(),
            LinearizedPoly::new(vec![
                ctx.gen_pow(1),
                FieldElement::ZERO,
                ctx.gen_pow(5),
                FieldElement::ZERO,
                FieldElement::ZERO,
                FieldElement::ZERO,
            ])
        );
        assert!(LinearizedPoly::parse(&ctx, "0x1,0x2").is_err());
        assert!(LinearizedPoly::parse(&ctx, "1,2,3,4,5,zzz").is_err());
    }
}
