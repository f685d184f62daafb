//! The skew polynomial ring A[X;θ] with the rule X·a = θ(a)X, right
//! division, skew reciprocals and the searches over monic divisors.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::morphisms::RingMap;
use crate::par::{self, pow_u128, BudgetExceeded, Search};
use crate::ring::{Elem, FiniteRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkewError {
    #[error("polynomials live over different rings")]
    MixedRings,
    #[error("polynomials use different twists")]
    MixedTheta,
    #[error("the twist must be an automorphism")]
    NotAutomorphism,
    #[error("leading coefficient of the divisor is not a unit")]
    LeadingCoeffNotInvertible,
    #[error("reciprocal polynomials need a commutative ring")]
    NoncommutativeRing,
    #[error("θ^m(h_0) is not a unit")]
    ConstantTermNotUnit,
    #[error("degree {degree} is larger than {n}")]
    DegreeTooLarge { degree: usize, n: usize },
    #[error("expected degree {expected}, found {found:?}")]
    WrongDegree { expected: usize, found: Option<usize> },
    #[error("length must be even, got {0}")]
    OddLength(usize),
    #[error("bad coefficient: {0}")]
    Parse(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// A ring A together with a twist θ; the polynomials of A[X;θ] share one.
pub struct SkewRing {
    theta: RingMap,
    // pow[i][a] = θ^i(a) for i < ord(θ)
    pow: Vec<Vec<Elem>>,
}

impl fmt::Debug for SkewRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewRing({}, θ of order {})", self.ring().name(), self.pow.len())
    }
}

impl SkewRing {
    pub fn new(theta: &RingMap) -> Result<Arc<SkewRing>, SkewError> {
        if !theta.is_automorphism() {
            return Err(SkewError::NotAutomorphism);
        }
        let pow = (0..theta.order()).map(|i| theta.power(i).perm().to_vec()).collect();
        Ok(Arc::new(SkewRing { theta: theta.clone(), pow }))
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.theta.ring()
    }

    pub fn theta(&self) -> &RingMap {
        &self.theta
    }

    /// θ^i(a).
    #[inline]
    pub fn twist(&self, i: usize, a: Elem) -> Elem {
        self.pow[i % self.pow.len()][a as usize]
    }

    fn same(&self, other: &SkewRing) -> Result<(), SkewError> {
        if self.ring().fingerprint() != other.ring().fingerprint() {
            Err(SkewError::MixedRings)
        } else if self.theta != other.theta {
            Err(SkewError::MixedTheta)
        } else {
            Ok(())
        }
    }

    pub fn poly(self: &Arc<Self>, coeffs: Vec<Elem>) -> SkewPoly {
        let mut p = SkewPoly { ctx: self.clone(), coeffs };
        p.trim();
        p
    }

    /// Parses ascending coefficient labels.
    pub fn parse(self: &Arc<Self>, labels: &[impl AsRef<str>]) -> Result<SkewPoly, SkewError> {
        let coeffs = labels
            .iter()
            .map(|l| self.ring().parse_element(l.as_ref()).map_err(|e| SkewError::Parse(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.poly(coeffs))
    }

    pub fn zero(self: &Arc<Self>) -> SkewPoly {
        self.poly(Vec::new())
    }

    pub fn constant(self: &Arc<Self>, a: Elem) -> SkewPoly {
        self.poly(vec![a])
    }

    pub fn monomial(self: &Arc<Self>, a: Elem, i: usize) -> SkewPoly {
        let mut c = vec![self.ring().zero(); i + 1];
        c[i] = a;
        self.poly(c)
    }

    /// X^n − a.
    pub fn x_pow_minus(self: &Arc<Self>, n: usize, a: Elem) -> SkewPoly {
        let r = self.ring();
        let mut c = vec![r.zero(); n + 1];
        c[n] = r.one();
        c[0] = r.sub(c[0], a);
        self.poly(c)
    }
}

/// A polynomial of A[X;θ], coefficients ascending with trailing zeros trimmed.
#[derive(Clone)]
pub struct SkewPoly {
    ctx: Arc<SkewRing>,
    coeffs: Vec<Elem>,
}

impl PartialEq for SkewPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.ctx.same(&other.ctx).is_ok()
    }
}

impl Eq for SkewPoly {}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly({self})")
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let r = self.ring();
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == r.zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let l = r.label(c);
            let x = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            if i > 0 && c == r.one() {
                write!(f, "{x}")?;
            } else if i > 0 && l.chars().skip(1).any(|ch| ch == '+' || ch == '-') {
                write!(f, "({l}){x}")?;
            } else {
                write!(f, "{l}{x}")?;
            }
        }
        Ok(())
    }
}

impl SkewPoly {
    fn trim(&mut self) {
        let z = self.ctx.ring().zero();
        while self.coeffs.last() == Some(&z) {
            self.coeffs.pop();
        }
    }

    pub fn context(&self) -> &Arc<SkewRing> {
        &self.ctx
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.ctx.ring()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of X^i, zero past the degree.
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(self.ring().zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Some(self.ring().one())
    }

    pub fn labels(&self) -> Vec<String> {
        self.coeffs.iter().map(|&c| self.ring().label(c).to_string()).collect()
    }

    pub fn add(&self, other: &SkewPoly) -> Result<SkewPoly, SkewError> {
        self.ctx.same(&other.ctx)?;
        let r = self.ring();
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(self.ctx.poly((0..n).map(|i| r.add(self.coeff(i), other.coeff(i))).collect()))
    }

    pub fn sub(&self, other: &SkewPoly) -> Result<SkewPoly, SkewError> {
        self.ctx.same(&other.ctx)?;
        let r = self.ring();
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(self.ctx.poly((0..n).map(|i| r.sub(self.coeff(i), other.coeff(i))).collect()))
    }

    /// a·f.
    pub fn scale_left(&self, a: Elem) -> SkewPoly {
        let r = self.ring();
        self.ctx.poly(self.coeffs.iter().map(|&c| r.mul(a, c)).collect())
    }

    /// Product under (aX^i)(bX^j) = a·θ^i(b)·X^{i+j}.
    pub fn mul(&self, other: &SkewPoly) -> Result<SkewPoly, SkewError> {
        self.ctx.same(&other.ctx)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.ctx.zero());
        }
        let r = self.ring();
        let mut out = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == r.zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = r.add(out[i + j], r.mul(a, self.ctx.twist(i, b)));
            }
        }
        Ok(self.ctx.poly(out))
    }

    /// `(q, r)` with `self = q·g + r` and `r = 0` or `deg r < deg g`.
    pub fn right_divmod(&self, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly), SkewError> {
        self.ctx.same(&g.ctx)?;
        let r = self.ring();
        let dg = g.degree().ok_or(SkewError::LeadingCoeffNotInvertible)?;
        let u = g.lead().unwrap();
        if r.inv(u).is_none() {
            return Err(SkewError::LeadingCoeffNotInvertible);
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![r.zero(); rem.len().saturating_sub(dg)];
        while rem.len() > dg {
            let m = rem.len() - 1 - dg;
            let c = *rem.last().unwrap();
            if c != r.zero() {
                // t·θ^m(u) = c
                let t = r.mul(c, r.inv(self.ctx.twist(m, u)).unwrap());
                q[m] = t;
                for (i, &gi) in g.coeffs.iter().enumerate() {
                    rem[m + i] = r.sub(rem[m + i], r.mul(t, self.ctx.twist(m, gi)));
                }
            }
            rem.pop();
        }
        Ok((self.ctx.poly(q), self.ctx.poly(rem)))
    }

    pub fn right_divides(&self, f: &SkewPoly) -> Result<bool, SkewError> {
        Ok(f.right_divmod(self)?.1.is_zero())
    }

    fn require_commutative(&self) -> Result<(), SkewError> {
        if self.ring().is_commutative() {
            Ok(())
        } else {
            Err(SkewError::NoncommutativeRing)
        }
    }

    /// h* = Σ θ^i(h_{m−i}) X^i.
    pub fn skew_reciprocal(&self) -> Result<SkewPoly, SkewError> {
        self.require_commutative()?;
        let Some(m) = self.degree() else {
            return Ok(self.clone());
        };
        Ok(self.ctx.poly((0..=m).map(|i| self.ctx.twist(i, self.coeffs[m - i])).collect()))
    }

    /// h♮ = θ^m(h_0)^{-1}·h*.
    pub fn left_monic_skew_reciprocal(&self) -> Result<SkewPoly, SkewError> {
        self.require_commutative()?;
        let m = self.degree().ok_or(SkewError::ConstantTermNotUnit)?;
        let c = self.ctx.twist(m, self.coeffs[0]);
        let inv = self.ring().inv(c).ok_or(SkewError::ConstantTermNotUnit)?;
        Ok(self.skew_reciprocal()?.scale_left(inv))
    }
}

/// Whether h♮·h = X^{2k} − ε.
pub fn is_self_dual_generator(h: &SkewPoly, k: usize, epsilon: Elem) -> Result<bool, SkewError> {
    if h.degree() != Some(k) {
        return Err(SkewError::WrongDegree { expected: k, found: h.degree() });
    }
    let g = h.left_monic_skew_reciprocal()?;
    Ok(g.mul(h)? == h.context().x_pow_minus(2 * k, epsilon))
}

/// Mixed-radix decoding of `idx` into `out`, most significant digit first.
#[inline]
fn decode(mut idx: u64, radix: u64, out: &mut [Elem]) {
    for d in out.iter_mut().rev() {
        *d = (idx % radix) as Elem;
        idx /= radix;
    }
}

/// Remainder test of `f` by a monic `g` in a scratch buffer.
#[inline]
fn monic_right_divides(ctx: &SkewRing, f: &[Elem], g: &[Elem], buf: &mut Vec<Elem>) -> bool {
    let r = ctx.ring();
    let dg = g.len() - 1;
    buf.clear();
    buf.extend_from_slice(f);
    let zero = r.zero();
    for m in (0..buf.len() - dg).rev() {
        let c = buf[m + dg];
        if c == zero {
            continue;
        }
        let tw = &ctx.pow[m % ctx.pow.len()];
        for (i, &gi) in g.iter().enumerate() {
            let v = r.mul(c, tw[gi as usize]);
            buf[m + i] = r.sub(buf[m + i], v);
        }
    }
    buf[..dg].iter().all(|&c| c == zero)
}

/// All monic `g` of degree `d` with `g` dividing `X^n − a` on the right, in
/// lexicographic order of the ascending coefficient tuple.
pub fn enumerate_monic_right_divisors(
    ctx: &Arc<SkewRing>,
    n: usize,
    d: usize,
    a: Elem,
    search: &Search,
) -> Result<Vec<SkewPoly>, SkewError> {
    if d > n {
        return Err(SkewError::DegreeTooLarge { degree: d, n });
    }
    let ring = ctx.ring();
    let q = ring.order();
    search.check(pow_u128(q, d))?;
    let f = ctx.x_pow_minus(n, a).coeffs;
    if d == 0 {
        return Ok(vec![ctx.constant(ring.one())]);
    }
    let rest = pow_u128(q, d - 1) as u64;
    let chunks = par::map_chunks(search.strategy, q, |g0| {
        let mut out = Vec::new();
        let mut g = vec![ring.zero(); d + 1];
        g[0] = g0 as Elem;
        g[d] = ring.one();
        let mut buf = Vec::with_capacity(n + 1);
        for idx in 0..rest {
            decode(idx, q as u64, &mut g[1..d]);
            if monic_right_divides(ctx, &f, &g, &mut buf) {
                out.push(g.clone());
            }
        }
        out
    });
    Ok(chunks.into_iter().flatten().map(|c| ctx.poly(c)).collect())
}

/// Self-dual generators found for one value of ε.
#[derive(Clone, Debug)]
pub struct EpsilonGenerators {
    pub epsilon: Elem,
    /// Pairs `(h, h♮)`.
    pub pairs: Vec<(SkewPoly, SkewPoly)>,
}

#[derive(Clone, Debug)]
pub struct SelfDualGenerators {
    pub k: usize,
    pub per_epsilon: Vec<EpsilonGenerators>,
}

impl SelfDualGenerators {
    pub fn count(&self) -> usize {
        self.per_epsilon.iter().map(|e| e.pairs.len()).sum()
    }

    pub fn count_for(&self, epsilon: Elem) -> usize {
        self.per_epsilon
            .iter()
            .find(|e| e.epsilon == epsilon)
            .map_or(0, |e| e.pairs.len())
    }

    pub fn generators(&self) -> impl Iterator<Item = &SkewPoly> {
        self.per_epsilon.iter().flat_map(|e| e.pairs.iter().map(|(_, g)| g))
    }
}

/// Candidate count of [`count_self_dual_generators`] at length `n`.
pub fn self_dual_candidates(ring: &FiniteRing, n: usize) -> u128 {
    let units = ring.units_and_zero_divisors().units.len();
    (units as u128).saturating_mul(pow_u128(ring.order(), (n / 2).saturating_sub(1)))
}

/// Every monic `h` of degree `n/2` with `h♮·h = X^n − ε`, for ε = ±1
/// (one sweep when 1 = −1).
pub fn count_self_dual_generators(ctx: &Arc<SkewRing>, n: usize, search: &Search) -> Result<SelfDualGenerators, SkewError> {
    let ring = ctx.ring();
    if !ring.is_commutative() {
        return Err(SkewError::NoncommutativeRing);
    }
    if n % 2 == 1 || n == 0 {
        return Err(SkewError::OddLength(n));
    }
    let k = n / 2;
    search.check(self_dual_candidates(ring, n))?;
    let mut eps = vec![ring.one()];
    if ring.neg(ring.one()) != ring.one() {
        eps.push(ring.neg(ring.one()));
    }
    let units = ring.units_and_zero_divisors().units;
    let q = ring.order();
    let rest = pow_u128(q, k - 1) as u64;
    let per_epsilon = eps
        .into_iter()
        .map(|e| {
            let chunks = par::map_chunks(search.strategy, units.len(), |ui| {
                let mut out = Vec::new();
                let mut h = vec![ring.zero(); k + 1];
                h[0] = units[ui];
                h[k] = ring.one();
                let mut g = vec![ring.zero(); k + 1];
                for idx in 0..rest {
                    decode(idx, q as u64, &mut h[1..k]);
                    if natural_times_h_is(ctx, &h, &mut g, e) {
                        out.push((h.clone(), g.clone()));
                    }
                }
                out
            });
            let mut pairs: Vec<(SkewPoly, SkewPoly)> = chunks
                .into_iter()
                .flatten()
                .map(|(h, g)| (ctx.poly(h), ctx.poly(g)))
                .collect();
            pairs.sort_by(|a, b| a.0.coeffs.cmp(&b.0.coeffs));
            EpsilonGenerators { epsilon: e, pairs }
        })
        .collect();
    Ok(SelfDualGenerators { k, per_epsilon })
}

/// Fills `g` with h♮ and tests h♮·h = X^{2k} − ε coefficient by coefficient.
#[inline]
fn natural_times_h_is(ctx: &SkewRing, h: &[Elem], g: &mut [Elem], eps: Elem) -> bool {
    let r = ctx.ring();
    let k = h.len() - 1;
    let Some(inv) = r.inv(ctx.twist(k, h[0])) else {
        return false;
    };
    for i in 0..=k {
        g[i] = r.mul(inv, ctx.twist(i, h[k - i]));
    }
    let zero = r.zero();
    for t in 0..2 * k {
        let mut acc = zero;
        let lo = t.saturating_sub(k);
        for i in lo..=t.min(k) {
            acc = r.add(acc, r.mul(g[i], ctx.twist(i, h[t - i])));
        }
        let want = if t == 0 { r.neg(eps) } else { zero };
        if acc != want {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests;
