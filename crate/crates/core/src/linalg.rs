//! Row reduction over finite fields given as Cayley tables.

use crate::ring::{Elem, FiniteRing};

/// Commutative with every nonzero element a unit.
pub fn is_field(ring: &FiniteRing) -> bool {
    ring.order() > 1 && ring.is_commutative() && ring.elements().all(|a| a == ring.zero() || ring.is_unit(a))
}

/// Reduced row echelon form of the row span, zero rows dropped.
pub fn rref(ring: &FiniteRing, rows: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let zero = ring.zero();
    let mut m: Vec<Vec<Elem>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut top = 0;
    for col in 0..ncols {
        let Some(p) = (top..m.len()).find(|&r| m[r][col] != zero) else {
            continue;
        };
        m.swap(top, p);
        let inv = ring.inv(m[top][col]).expect("field element is invertible");
        for x in m[top].iter_mut() {
            *x = ring.mul(inv, *x);
        }
        let pivot = m[top].clone();
        for (r, row) in m.iter_mut().enumerate() {
            let c = row[col];
            if r == top || c == zero {
                continue;
            }
            for (x, &p) in row.iter_mut().zip(&pivot) {
                *x = ring.sub(*x, ring.mul(c, p));
            }
        }
        top += 1;
        if top == m.len() {
            break;
        }
    }
    m.truncate(top);
    m
}

pub fn pivots(ring: &FiniteRing, reduced: &[Vec<Elem>]) -> Vec<usize> {
    reduced
        .iter()
        .map(|row| row.iter().position(|&x| x != ring.zero()).expect("rref rows are nonzero"))
        .collect()
}

/// Basis of `{x : Σ_j rows[i][j] x_j = 0 for every i}`.
pub fn right_kernel(ring: &FiniteRing, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let r = rref(ring, rows);
    let piv = pivots(ring, &r);
    (0..ncols)
        .filter(|c| !piv.contains(c))
        .map(|free| {
            let mut x = vec![ring.zero(); ncols];
            x[free] = ring.one();
            for (row, &p) in r.iter().zip(&piv) {
                x[p] = ring.neg(row[free]);
            }
            x
        })
        .collect()
}

pub fn rank(ring: &FiniteRing, rows: &[Vec<Elem>]) -> usize {
    rref(ring, rows).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::builtin;

    #[test]
    fn kernel_is_orthogonal_and_complementary() {
        let f = builtin("f5").unwrap().ring;
        let e = |k: i64| f.from_int(k);
        let rows = vec![vec![e(1), e(2), e(3), e(4)], vec![e(2), e(4), e(1), e(1)]];
        let k = right_kernel(&f, &rows, 4);
        assert_eq!(k.len() + rank(&f, &rows), 4);
        for x in &k {
            for row in &rows {
                let dot = row.iter().zip(x).fold(f.zero(), |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                assert_eq!(dot, f.zero());
            }
        }
        assert!(is_field(&f));
        assert!(!is_field(&builtin("z4").unwrap().ring));
    }
}
