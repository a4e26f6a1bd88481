//! Bit-packed n x n matrices over GF(2), n <= 12.
//!
//! One machine word per row keeps elimination in-register; `rank_at_least`
//! and the fused `xor_rank_at_least` are the only rank entry points allowed
//! inside search inner loops (they bail out as soon as the answer is known).

// Elimination kernels index rows and columns simultaneously; iterator
// rewrites of these loops obscure the pivoting.
#![allow(clippy::needless_range_loop)]

use crate::field::{FieldContext, FieldElement, MAX_DEGREE};

/// Maximum matrix dimension, matching the largest supported field degree.
pub const MAX_DIM: usize = MAX_DEGREE;

/// Row-major n x n matrix over GF(2). Row i is the bitmask `rows[i]`;
/// bits at positions >= n are zero.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    n: u8,
    rows: [u16; MAX_DIM],
}

impl BinaryMatrix {
    pub fn zero(n: usize) -> BinaryMatrix {
        assert!((1..=MAX_DIM).contains(&n));
        BinaryMatrix {
            n: n as u8,
            rows: [0; MAX_DIM],
        }
    }

    pub fn identity(n: usize) -> BinaryMatrix {
        let mut m = BinaryMatrix::zero(n);
        for i in 0..n {
            m.rows[i] = 1 << i;
        }
        m
    }

    pub fn from_rows(n: usize, rows: &[u16]) -> BinaryMatrix {
        assert_eq!(rows.len(), n);
        let mut m = BinaryMatrix::zero(n);
        let mask = BinaryMatrix::mask(n);
        for (i, &r) in rows.iter().enumerate() {
            assert_eq!(r & !mask, 0, "row bits beyond dimension");
            m.rows[i] = r;
        }
        m
    }

    /// Matrix of an additive map: M.v = bits(evaluate(element(v))).
    /// Column c holds the image of the basis vector x^c.
    pub fn from_map(ctx: &FieldContext, evaluate: impl Fn(FieldElement) -> FieldElement) -> Self {
        let n = ctx.n();
        let mut m = BinaryMatrix::zero(n);
        for c in 0..n {
            let img = evaluate(ctx.element(1 << c)).bits();
            for r in 0..n {
                m.rows[r] |= ((img >> r) & 1) << c;
            }
        }
        m
    }

    fn mask(n: usize) -> u16 {
        ((1u32 << n) - 1) as u16
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn row(&self, i: usize) -> u16 {
        assert!(i < self.n as usize);
        self.rows[i]
    }

    pub fn rows(&self) -> &[u16] {
        &self.rows[..self.n as usize]
    }

    pub(crate) fn raw_rows(&self) -> &[u16; MAX_DIM] {
        &self.rows
    }

    pub fn xor(&self, other: &BinaryMatrix) -> BinaryMatrix {
        debug_assert_eq!(self.n, other.n);
        let mut out = *self;
        for i in 0..MAX_DIM {
            out.rows[i] ^= other.rows[i];
        }
        out
    }

    /// M.v over GF(2): bit r of the result is the parity of row_r & v.
    pub fn mul_vec(&self, v: u16) -> u16 {
        let mut out = 0u16;
        for r in 0..self.n as usize {
            out |= (((self.rows[r] & v).count_ones() & 1) as u16) << r;
        }
        out
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let n = self.n as usize;
        let mut t = BinaryMatrix::zero(n);
        for r in 0..n {
            for c in 0..n {
                t.rows[c] |= ((self.rows[r] >> c) & 1) << r;
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        rank_rows(&self.rows, self.n as usize)
    }

    /// True as soon as t independent rows are found; false once even the
    /// remaining rows cannot reach t.
    pub fn rank_at_least(&self, t: usize) -> bool {
        xor_rank_at_least(&self.rows, &[0u16; MAX_DIM], self.n as usize, t)
    }

    /// rank(self ^ other) >= t without materializing the sum. This is the
    /// search hot path: the candidate matrix stays untouched and each row is
    /// combined with the code matrix on the fly.
    pub fn xor_rank_at_least(&self, other: &BinaryMatrix, t: usize) -> bool {
        debug_assert_eq!(self.n, other.n);
        xor_rank_at_least(&self.rows, &other.rows, self.n as usize, t)
    }

    /// Basis of the null space {v : M.v = 0}; length n - rank.
    pub fn kernel_basis(&self) -> Vec<u16> {
        let n = self.n as usize;
        // Gauss-Jordan, remembering which column each pivot row serves.
        let mut rows: Vec<u16> = self.rows().to_vec();
        let mut pivot_of_col: [Option<usize>; MAX_DIM] = [None; MAX_DIM];
        let mut next = 0usize;
        for c in 0..n {
            if let Some(r) = (next..n).find(|&r| rows[r] >> c & 1 == 1) {
                rows.swap(next, r);
                let p = rows[next];
                for (i, row) in rows.iter_mut().enumerate() {
                    if i != next && *row >> c & 1 == 1 {
                        *row ^= p;
                    }
                }
                pivot_of_col[c] = Some(next);
                next += 1;
            }
        }
        let mut basis = Vec::with_capacity(n - next);
        for c in 0..n {
            if pivot_of_col[c].is_some() {
                continue;
            }
            let mut v = 1u16 << c;
            for p in 0..n {
                if let Some(r) = pivot_of_col[p] {
                    v |= (rows[r] >> c & 1) << p;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse matrix, if nonsingular.
    pub fn invert(&self) -> Option<BinaryMatrix> {
        let n = self.n as usize;
        // Augmented rows: low n bits = matrix, next n bits = identity.
        let mut aug: Vec<u32> = (0..n)
            .map(|i| self.rows[i] as u32 | 1u32 << (n + i))
            .collect();
        // Any failed pivot search exits early, so rows 0..c are already in
        // echelon form when column c is processed.
        for c in 0..n {
            let r = (c..n).find(|&r| aug[r] >> c & 1 == 1)?;
            aug.swap(c, r);
            let p = aug[c];
            for (i, row) in aug.iter_mut().enumerate() {
                if i != c && *row >> c & 1 == 1 {
                    *row ^= p;
                }
            }
        }
        let mut inv = BinaryMatrix::zero(n);
        // After Jordan elimination row i has pivot column i.
        for i in 0..n {
            inv.rows[i] = (aug[i] >> n) as u16;
        }
        Some(inv)
    }
}

impl std::fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.n as usize;
        writeln!(f, "BinaryMatrix(n={n})")?;
        for r in 0..n {
            for c in 0..n {
                write!(f, "{}", self.rows[r] >> c & 1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn rank_rows(rows: &[u16; MAX_DIM], n: usize) -> usize {
    let mut basis = [0u16; 16];
    let mut count = 0usize;
    for &row in rows.iter().take(n) {
        let mut v = row;
        while v != 0 {
            let b = v.trailing_zeros() as usize;
            let w = basis[b];
            if w == 0 {
                basis[b] = v;
                count += 1;
                break;
            }
            v ^= w;
        }
    }
    count
}

/// rank((a ^ b) restricted to the first n rows) >= t, with early exit in both
/// directions: success as soon as t independent rows accumulate, failure as
/// soon as too few rows remain.
#[inline]
pub(crate) fn xor_rank_at_least(
    a: &[u16; MAX_DIM],
    b: &[u16; MAX_DIM],
    n: usize,
    t: usize,
) -> bool {
    if t == 0 {
        return true;
    }
    if t > n {
        return false;
    }
    let mut basis = [0u16; 16];
    let mut count = 0usize;
    for i in 0..n {
        let mut v = a[i] ^ b[i];
        while v != 0 {
            let b0 = v.trailing_zeros() as usize;
            let w = basis[b0];
            if w == 0 {
                basis[b0] = v;
                count += 1;
                if count >= t {
                    return true;
                }
                break;
            }
            v ^= w;
        }
        if count + (n - 1 - i) < t {
            return false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut impl Rng, n: usize) -> BinaryMatrix {
        let rows: Vec<u16> = (0..n).map(|_| rng.gen_range(0..(1u16 << n))).collect();
        BinaryMatrix::from_rows(n, &rows)
    }

    #[test]
    fn identity_and_zero_ranks() {
        for n in 1..=MAX_DIM {
            assert_eq!(BinaryMatrix::identity(n).rank(), n);
            assert_eq!(BinaryMatrix::zero(n).rank(), 0);
            assert_eq!(BinaryMatrix::identity(n).kernel_basis().len(), 0);
            assert_eq!(BinaryMatrix::zero(n).kernel_basis().len(), n);
        }
    }

    #[test]
    fn from_map_identity_and_zero() {
        let ctx = FieldContext::gf64();
        let id = BinaryMatrix::from_map(&ctx, |x| x);
        assert_eq!(id, BinaryMatrix::identity(6));
        let z = BinaryMatrix::from_map(&ctx, |_| crate::field::FieldElement::ZERO);
        assert_eq!(z, BinaryMatrix::zero(6));
    }

    #[test]
    fn from_map_matches_evaluation() {
        let ctx = FieldContext::gf64();
        let j = ctx.generator();
        let m = BinaryMatrix::from_map(&ctx, |x| ctx.mul(j, ctx.frobenius(x, 2)));
        for v in 0..64u16 {
            let expect = ctx.mul(j, ctx.frobenius(ctx.element(v), 2));
            assert_eq!(m.mul_vec(v), expect.bits());
        }
        assert_eq!(m.rank(), 6);
    }

    #[test]
    fn frobenius_on_gf4_is_full_rank() {
        let ctx = FieldContext::new(2, 0x7).unwrap();
        let m = BinaryMatrix::from_map(&ctx, |x| ctx.mul(x, x));
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn artin_schreier_map_on_gf4_has_rank_one() {
        let ctx = FieldContext::new(2, 0x7).unwrap();
        // x -> x^2 + x kills GF(2)
        let m = BinaryMatrix::from_map(&ctx, |x| ctx.add(ctx.mul(x, x), x));
        assert_eq!(m.rank(), 1);
        let kb = m.kernel_basis();
        assert_eq!(kb, vec![1]);
    }

    #[test]
    fn rank_equals_transpose_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10_000 {
            let n = rng.gen_range(1..=MAX_DIM);
            let m = random_matrix(&mut rng, n);
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn rank_plus_kernel_is_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10_000 {
            let n = rng.gen_range(1..=MAX_DIM);
            let m = random_matrix(&mut rng, n);
            let kb = m.kernel_basis();
            assert_eq!(m.rank() + kb.len(), n);
            for v in kb {
                assert_eq!(m.mul_vec(v), 0);
            }
        }
    }

    #[test]
    fn rank_at_least_agrees_with_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10_000 {
            let n = rng.gen_range(1..=MAX_DIM);
            let m = random_matrix(&mut rng, n);
            let t = rng.gen_range(0..=n + 1);
            assert_eq!(m.rank_at_least(t), m.rank() >= t);
        }
    }

    #[test]
    fn xor_rank_matches_materialized_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let n = rng.gen_range(1..=MAX_DIM);
            let a = random_matrix(&mut rng, n);
            let b = random_matrix(&mut rng, n);
            let t = rng.gen_range(0..=n + 1);
            assert_eq!(a.xor_rank_at_least(&b, t), a.xor(&b).rank() >= t);
        }
    }

    #[test]
    fn invert_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut inverted = 0;
        for _ in 0..5_000 {
            let n = rng.gen_range(1..=MAX_DIM);
            let m = random_matrix(&mut rng, n);
            match m.invert() {
                None => assert!(m.rank() < n),
                Some(inv) => {
                    inverted += 1;
                    assert_eq!(m.rank(), n);
                    for v in 0..(1u16 << n) {
                        assert_eq!(inv.mul_vec(m.mul_vec(v)), v);
                    }
                }
            }
        }
        assert!(inverted > 0);
    }

    #[test]
    fn mul_vec_is_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..2_000 {
            let n = rng.gen_range(1..=MAX_DIM);
            let m = random_matrix(&mut rng, n);
            let u = rng.gen_range(0..(1u16 << n));
            let v = rng.gen_range(0..(1u16 << n));
            assert_eq!(m.mul_vec(u ^ v), m.mul_vec(u) ^ m.mul_vec(v));
        }
    }
}
