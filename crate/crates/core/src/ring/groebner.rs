//! Multivariate polynomials over a prime field and Buchberger's algorithm,
//! just enough to find the standard monomials and normal forms of a
//! zero-dimensional quotient `F_p[x_1,…,x_k]/I`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::parse::{longest_name, ExprDomain};

/// Exponent vector ordered by graded reverse lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Mono(pub Vec<u32>);

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        let da: u32 = self.0.iter().sum();
        let db: u32 = other.0.iter().sum();
        da.cmp(&db).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mono {
    fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn lcm(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MPoly {
    terms: BTreeMap<Mono, u32>,
}

impl MPoly {
    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> Option<(&Mono, u32)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    pub(crate) fn terms(&self) -> impl Iterator<Item = (&Mono, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }
}

#[derive(Clone, Debug)]
pub(crate) struct PolyCtx {
    pub p: u32,
    pub vars: Vec<String>,
}

impl PolyCtx {
    fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub(crate) fn constant(&self, c: u32) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_multiple_of(self.p) {
            terms.insert(Mono(vec![0; self.nvars()]), c % self.p);
        }
        MPoly { terms }
    }

    pub(crate) fn monomial(&self, m: Mono, c: u32) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_multiple_of(self.p) {
            terms.insert(m, c % self.p);
        }
        MPoly { terms }
    }

    fn add_term(&self, f: &mut MPoly, m: Mono, c: u32) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let e = f.terms.entry(m.clone()).or_insert(0);
        *e = (*e + c) % self.p;
        if *e == 0 {
            f.terms.remove(&m);
        }
    }

    fn inv(&self, c: u32) -> u32 {
        (1..self.p).find(|&d| (c * d) % self.p == 1).expect("prime modulus")
    }

    /// `f - c·m·g`.
    fn sub_scaled(&self, f: &MPoly, c: u32, m: &Mono, g: &MPoly) -> MPoly {
        let mut out = f.clone();
        for (gm, gc) in g.terms() {
            self.add_term(&mut out, m.mul(gm), (self.p - (c * gc) % self.p) % self.p);
        }
        out
    }

    /// Full reduction of `f` by `basis`.
    pub(crate) fn normal_form(&self, f: &MPoly, basis: &[MPoly]) -> MPoly {
        let mut rem = MPoly {
            terms: BTreeMap::new(),
        };
        let mut f = f.clone();
        while let Some((m, c)) = f.lead().map(|(m, c)| (m.clone(), c)) {
            let divisor = basis.iter().find(|g| g.lead().is_some_and(|(gm, _)| gm.divides(&m)));
            match divisor {
                Some(g) => {
                    let (gm, gc) = g.lead().unwrap();
                    let factor = (c * self.inv(gc)) % self.p;
                    let q = m.div(gm);
                    f = self.sub_scaled(&f, factor, &q, g);
                }
                None => {
                    f.terms.remove(&m);
                    self.add_term(&mut rem, m, c);
                }
            }
        }
        rem
    }

    fn s_poly(&self, f: &MPoly, g: &MPoly) -> MPoly {
        let (fm, fc) = f.lead().unwrap();
        let (gm, gc) = g.lead().unwrap();
        let l = fm.lcm(gm);
        let a = self.monomial(l.div(fm), self.inv(fc));
        let b = self.monomial(l.div(gm), self.inv(gc));
        let af = ExprDomain::mul(self, &a, f);
        let bg = ExprDomain::mul(self, &b, g);
        ExprDomain::add(self, &af, &ExprDomain::neg(self, &bg))
    }

    pub(crate) fn groebner(&self, gens: &[MPoly]) -> Vec<MPoly> {
        let mut basis: Vec<MPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for j in 0..basis.len() {
            for i in 0..j {
                pairs.push((i, j));
            }
        }
        while let Some((i, j)) = pairs.pop() {
            let s = self.s_poly(&basis[i], &basis[j]);
            let r = self.normal_form(&s, &basis);
            if !r.is_zero() {
                let k = basis.len();
                basis.push(r);
                for i in 0..k {
                    pairs.push((i, k));
                }
            }
        }
        basis
    }

    /// Standard monomials of the quotient in ascending order, or `None` if
    /// there are more than `cap` of them.
    pub(crate) fn standard_monomials(&self, basis: &[MPoly], cap: usize) -> Option<Vec<Mono>> {
        let leads: Vec<Mono> = basis.iter().filter_map(|g| g.lead().map(|(m, _)| m.clone())).collect();
        let reducible = |m: &Mono| leads.iter().any(|l| l.divides(m));
        let mut found = vec![Mono(vec![0; self.nvars()])];
        if reducible(&found[0]) {
            return Some(Vec::new());
        }
        let mut frontier = found.clone();
        while let Some(m) = frontier.pop() {
            for v in 0..self.nvars() {
                let mut next = m.clone();
                next.0[v] += 1;
                if !reducible(&next) && !found.contains(&next) {
                    found.push(next.clone());
                    frontier.push(next);
                    if found.len() > cap {
                        return None;
                    }
                }
            }
        }
        found.sort();
        Some(found)
    }

    pub(crate) fn mono_label(&self, m: &Mono) -> String {
        let mut s = String::new();
        for (v, &e) in self.vars.iter().zip(&m.0) {
            match e {
                0 => {}
                1 => s.push_str(v),
                _ => s.push_str(&format!("{v}^{e}")),
            }
        }
        s
    }
}

impl ExprDomain for PolyCtx {
    type Value = MPoly;
    fn zero(&self) -> MPoly {
        self.constant(0)
    }
    fn one(&self) -> MPoly {
        self.constant(1)
    }
    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let mut out = a.clone();
        for (m, c) in b.terms() {
            self.add_term(&mut out, m.clone(), c);
        }
        out
    }
    fn neg(&self, a: &MPoly) -> MPoly {
        let mut out = self.zero();
        for (m, c) in a.terms() {
            self.add_term(&mut out, m.clone(), self.p - c);
        }
        out
    }
    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let mut out = self.zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                self.add_term(&mut out, ma.mul(mb), ca * cb);
            }
        }
        out
    }
    fn name_prefix(&self, rest: &[char]) -> Option<(usize, MPoly)> {
        let vals: Vec<(String, MPoly)> = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut e = vec![0; self.nvars()];
                e[i] = 1;
                (v.clone(), self.monomial(Mono(e), 1))
            })
            .collect();
        longest_name(vals.iter().map(|(n, v)| (n.as_str(), v)), rest)
    }
}
