//! The projective-geometry layer: V(2n, 2), spreads, scattered subspaces, and
//! the coordinate-free certification that a found map really yields a
//! translation hyperoval in the plane.
//!
//! Points of the affine plane A(C) are vectors of V(2n, 2) = GF(2^n)^2,
//! packed into a `u32` as `x | (y << n)`. Lines are cosets of spread
//! components; the projective completion adds one infinite point per
//! component plus the line at infinity. A hyperoval is a set of 2^n + 2
//! points meeting every line in 0 or 2 points.

use crate::field::{FieldContext, FieldElement};
use crate::linpoly::LinearizedPoly;
use crate::semifield::SpreadSet;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("subspace is not scattered: component {label} meets it in dimension {dim}")]
    NotScattered { label: SpreadLabel, dim: usize },
    #[error("expected exactly 2 trivial intersectors, found {0}")]
    TrivialIntersectors(usize),
    #[error("expected a subspace of dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Packs (x, y) in GF(2^n)^2 into the low 2n bits of a u32.
pub fn pack_point(n: usize, x: FieldElement, y: FieldElement) -> u32 {
    (x.bits() as u32) | ((y.bits() as u32) << n)
}

/// Inverse of [`pack_point`].
pub fn unpack_point(n: usize, p: u32) -> (FieldElement, FieldElement) {
    let mask = (1u32 << n) - 1;
    (
        FieldElement::from_bits((p & mask) as u16),
        FieldElement::from_bits(((p >> n) & mask) as u16),
    )
}

/// A subspace of GF(2)^dim in reduced echelon form. The reduced basis is
/// unique per subspace, so derived equality is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    /// Reduced echelon basis, rows in decreasing pivot order. Each row's
    /// leading bit occurs in no other row.
    basis: Vec<u32>,
}

fn high_bit(v: u32) -> u32 {
    31 - v.leading_zeros()
}

impl Subspace {
    pub fn from_generators(ambient: usize, gens: &[u32]) -> Subspace {
        debug_assert!(ambient <= 31);
        let mut basis: Vec<u32> = Vec::new();
        for &g in gens {
            debug_assert!(ambient == 31 || g < (1u32 << ambient));
            let mut v = g;
            for &b in &basis {
                if (v >> high_bit(b)) & 1 == 1 {
                    v ^= b;
                }
            }
            if v != 0 {
                let p = high_bit(v);
                for b in basis.iter_mut() {
                    if (*b >> p) & 1 == 1 {
                        *b ^= v;
                    }
                }
                basis.push(v);
            }
        }
        basis.sort_unstable_by(|a, b| b.cmp(a));
        Subspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    /// Canonical coset representative of v modulo this subspace.
    pub fn coset_rep(&self, v: u32) -> u32 {
        let mut v = v;
        for &b in &self.basis {
            if (v >> high_bit(b)) & 1 == 1 {
                v ^= b;
            }
        }
        v
    }

    pub fn contains(&self, v: u32) -> bool {
        self.coset_rep(v) == 0
    }

    /// All 2^dim vectors, ascending.
    pub fn points(&self) -> Vec<u32> {
        let mut pts = Vec::with_capacity(1 << self.dim());
        pts.push(0u32);
        for &b in &self.basis {
            for i in 0..pts.len() {
                pts.push(pts[i] ^ b);
            }
        }
        pts.sort_unstable();
        pts
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        debug_assert_eq!(self.ambient, other.ambient);
        let gens: Vec<u32> = self
            .basis
            .iter()
            .chain(other.basis.iter())
            .copied()
            .collect();
        Subspace::from_generators(self.ambient, &gens)
    }
}

/// dim(A ∩ B) via dim A + dim B - dim(A + B).
pub fn intersection_dim(a: &Subspace, b: &Subspace) -> usize {
    a.dim() + b.dim() - a.sum(b).dim()
}

/// Which of the two graph embeddings V(n,2) -> V(2n,2) to use.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum GraphKind {
    /// U_f = {(x, f(x))}.
    Graph,
    /// W_g = {(g(y), y)}.
    Cograph,
}

/// The n-dimensional graph or cograph of a linearized polynomial.
pub fn subspace_from_graph(ctx: &FieldContext, f: &LinearizedPoly, kind: GraphKind) -> Subspace {
    let n = ctx.n();
    let gens: Vec<u32> = (0..n)
        .map(|i| {
            let e = FieldElement::from_bits(1 << i);
            let img = f.evaluate(ctx, e);
            match kind {
                GraphKind::Graph => pack_point(n, e, img),
                GraphKind::Cograph => pack_point(n, img, e),
            }
        })
        .collect();
    Subspace::from_generators(2 * n, &gens)
}

/// Name of a spread component: the special component x = 0, or the graph of
/// R_y. `Infinity` sorts first, then ascending y.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum SpreadLabel {
    Infinity,
    Y(FieldElement),
}

impl std::fmt::Display for SpreadLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpreadLabel::Infinity => f.write_str("inf"),
            SpreadLabel::Y(y) => write!(f, "{y}"),
        }
    }
}

/// The spread of A(C): S_inf = {(0, y)} together with S_y = U_{R_y} for every
/// y in GF(2^n). Its 2^n + 1 components partition the nonzero vectors.
pub struct Spread {
    n: usize,
    components: Vec<(SpreadLabel, Subspace)>,
}

impl Spread {
    pub fn from_spread_set(ctx: &FieldContext, sset: &SpreadSet) -> Spread {
        let n = ctx.n();
        let inf_gens: Vec<u32> = (0..n)
            .map(|i| pack_point(n, FieldElement::ZERO, FieldElement::from_bits(1 << i)))
            .collect();
        let mut components = vec![(
            SpreadLabel::Infinity,
            Subspace::from_generators(2 * n, &inf_gens),
        )];
        for y in ctx.elements() {
            components.push((
                SpreadLabel::Y(y),
                subspace_from_graph(ctx, sset.map(y), GraphKind::Graph),
            ));
        }
        Spread { n, components }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[(SpreadLabel, Subspace)] {
        &self.components
    }

    pub fn component(&self, label: SpreadLabel) -> Option<&Subspace> {
        self.components
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, s)| s)
    }
}

/// Outcome of the scatteredness check: every spread component must meet the
/// subspace in dimension <= 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScatterReport {
    pub scattered: bool,
    /// First offending (component, intersection dimension), if any.
    pub witness: Option<(SpreadLabel, usize)>,
}

pub fn is_scattered(spread: &Spread, u: &Subspace) -> ScatterReport {
    for (label, s) in spread.components() {
        let d = intersection_dim(u, s);
        if d > 1 {
            return ScatterReport {
                scattered: false,
                witness: Some((*label, d)),
            };
        }
    }
    ScatterReport {
        scattered: true,
        witness: None,
    }
}

/// Components meeting `u` only in 0. For an n-dimensional scattered subspace
/// there are exactly two; the result is checked and ordered.
pub fn trivial_intersectors(
    spread: &Spread,
    u: &Subspace,
) -> Result<[SpreadLabel; 2], GeometryError> {
    let n = spread.n();
    if u.dim() != n {
        return Err(GeometryError::DimensionMismatch {
            expected: n,
            got: u.dim(),
        });
    }
    let mut trivial = Vec::new();
    for (label, s) in spread.components() {
        let d = intersection_dim(u, s);
        if d > 1 {
            return Err(GeometryError::NotScattered {
                label: *label,
                dim: d,
            });
        }
        if d == 0 {
            trivial.push(*label);
        }
    }
    match trivial[..] {
        [a, b] => Ok([a, b]),
        _ => Err(GeometryError::TrivialIntersectors(trivial.len())),
    }
}

/// A candidate hyperoval: 2^n affine points (the vectors of a scattered
/// subspace) plus two points on the line at infinity (the two spread
/// components the subspace misses).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperoval {
    n: usize,
    /// Sorted packed affine points.
    affine: Vec<u32>,
    /// The two infinite points, in label order.
    infinite: [SpreadLabel; 2],
}

impl Hyperoval {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn affine_points(&self) -> &[u32] {
        &self.affine
    }

    pub fn infinite_points(&self) -> &[SpreadLabel; 2] {
        &self.infinite
    }

    pub fn point_count(&self) -> usize {
        self.affine.len() + 2
    }
}

/// Assembles the hyperoval attached to a scattered n-dimensional subspace,
/// verifying scatteredness and the two-trivial-intersectors property on the
/// way.
pub fn hyperoval_from_scattered(spread: &Spread, u: &Subspace) -> Result<Hyperoval, GeometryError> {
    let mut infinite = trivial_intersectors(spread, u)?;
    infinite.sort();
    Ok(Hyperoval {
        n: spread.n(),
        affine: u.points(),
        infinite,
    })
}

/// Full line-by-line certificate for the hyperoval property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperovalCertificate {
    pub is_hyperoval: bool,
    pub point_count: usize,
    /// Every line of the projective plane: 2^n cosets per spread component
    /// plus the line at infinity.
    pub lines_checked: u64,
    pub failure: Option<LineFailure>,
}

/// A line meeting the point set in a number other than 0 or 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineFailure {
    pub label: SpreadLabel,
    /// Canonical coset representative; the line at infinity reports 0.
    pub coset: u32,
    pub points_on_line: usize,
}

/// Checks that every line of the translation plane meets the point set in 0
/// or 2 points. Exhaustive over all 2^n (2^n + 1) + 1 lines.
pub fn certify_hyperoval(spread: &Spread, hyp: &Hyperoval) -> HyperovalCertificate {
    let n = spread.n();
    let order = 1usize << n;
    let mut lines_checked = 0u64;
    let fail = |label: SpreadLabel, coset: u32, count: usize, lines: u64| HyperovalCertificate {
        is_hyperoval: false,
        point_count: hyp.point_count(),
        lines_checked: lines,
        failure: Some(LineFailure {
            label,
            coset,
            points_on_line: count,
        }),
    };

    // Point-set sanity: 2^n distinct affine points, 2 distinct infinite ones.
    let distinct = hyp.affine.windows(2).all(|w| w[0] < w[1]);
    if hyp.affine.len() != order || !distinct || hyp.infinite[0] == hyp.infinite[1] {
        return HyperovalCertificate {
            is_hyperoval: false,
            point_count: hyp.point_count(),
            lines_checked: 0,
            failure: None,
        };
    }

    // The line at infinity carries exactly the two infinite points.
    lines_checked += 1;

    for (label, s) in spread.components() {
        let on_inf = hyp.infinite.contains(label);
        let mut counts: HashMap<u32, usize> = HashMap::with_capacity(order);
        for &p in &hyp.affine {
            *counts.entry(s.coset_rep(p)).or_insert(0) += 1;
        }
        lines_checked += order as u64;
        if on_inf {
            // Every affine line in this direction carries the infinite point,
            // so each of the 2^n cosets must hold exactly one affine point.
            if counts.len() != order {
                let missing = (0..(1u32 << (2 * n)))
                    .map(|v| s.coset_rep(v))
                    .find(|rep| !counts.contains_key(rep))
                    .unwrap_or(0);
                return fail(*label, missing, 1, lines_checked);
            }
            if let Some((&coset, &c)) = counts.iter().find(|(_, &c)| c != 1) {
                return fail(*label, coset, c + 1, lines_checked);
            }
        } else if let Some((&coset, &c)) = counts.iter().find(|(_, &c)| c != 2) {
            return fail(*label, coset, c, lines_checked);
        }
    }

    HyperovalCertificate {
        is_hyperoval: true,
        point_count: hyp.point_count(),
        lines_checked,
        failure: None,
    }
}

/// Certificate that the hyperoval is a *translation* hyperoval: its affine
/// part is a subspace (so the translation group it generates fixes the oval)
/// and exactly two points lie at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationCertificate {
    pub affine_is_subspace: bool,
    pub infinite_count: usize,
    pub ok: bool,
}

pub fn certify_translation(hyp: &Hyperoval) -> TranslationCertificate {
    let set: std::collections::HashSet<u32> = hyp.affine.iter().copied().collect();
    let closed = set.contains(&0)
        && hyp
            .affine
            .iter()
            .all(|&a| hyp.affine.iter().all(|&b| set.contains(&(a ^ b))));
    let cert = TranslationCertificate {
        affine_is_subspace: closed && set.len() == hyp.affine.len(),
        infinite_count: 2,
        ok: false,
    };
    TranslationCertificate {
        ok: cert.affine_is_subspace,
        ..cert
    }
}
