//! Straight-line programs over a generating set.
//!
//! Closing `{0, 1, gens}` under addition and multiplication records, for each
//! new element, the pair of already-known elements it came from. Replaying
//! the recording with candidate images of the generators yields the unique
//! additive-multiplicative extension, if one exists. Verification of the
//! extension is left to the caller.

use super::{Elem, FiniteRing};

#[derive(Clone, Copy, Debug)]
enum Op {
    Add,
    Mul,
}

#[derive(Clone, Copy, Debug)]
struct Step {
    target: Elem,
    op: Op,
    lhs: Elem,
    rhs: Elem,
}

#[derive(Clone, Debug)]
pub(crate) struct Program {
    size: usize,
    seeds: Vec<Elem>,
    steps: Vec<Step>,
    reached: Vec<Elem>,
}

pub(crate) const UNSET: u16 = u16::MAX;

impl Program {
    /// Ring closure of `{0, 1} ∪ gens`.
    pub(crate) fn ring(ring: &FiniteRing, gens: &[Elem]) -> Program {
        Self::close(ring, gens, true)
    }

    /// Additive closure of `{0} ∪ gens`.
    pub(crate) fn additive(ring: &FiniteRing, gens: &[Elem]) -> Program {
        Self::close(ring, gens, false)
    }

    fn close(ring: &FiniteRing, gens: &[Elem], with_mul: bool) -> Program {
        let n = ring.order();
        let mut seen = vec![false; n];
        let mut order: Vec<Elem> = Vec::with_capacity(n);
        let mut seeds = vec![ring.zero()];
        if with_mul {
            seeds.push(ring.one());
        }
        seeds.extend_from_slice(gens);
        for &s in &seeds {
            if !seen[s as usize] {
                seen[s as usize] = true;
                order.push(s);
            }
        }
        let mut steps = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let a = order[i];
            let mut j = 0;
            while j <= i {
                let b = order[j];
                let mut record = |target: Elem, op: Op, lhs: Elem, rhs: Elem| {
                    if !seen[target as usize] {
                        seen[target as usize] = true;
                        order.push(target);
                        steps.push(Step {
                            target,
                            op,
                            lhs,
                            rhs,
                        });
                    }
                };
                record(ring.add(a, b), Op::Add, a, b);
                if with_mul {
                    record(ring.mul(a, b), Op::Mul, a, b);
                    record(ring.mul(b, a), Op::Mul, b, a);
                }
                j += 1;
            }
            i += 1;
        }
        order.sort_unstable();
        Program {
            size: n,
            seeds,
            steps,
            reached: order,
        }
    }

    /// Sorted list of elements reached by the closure.
    pub(crate) fn reached(&self) -> &[Elem] {
        &self.reached
    }

    /// Replays the program in `target` with the given seed images (one per
    /// seed, in the order zero, [one,] gens...). When `anti` is set products
    /// are reversed. Entries of the result are `UNSET` outside the closure.
    pub(crate) fn replay(&self, target: &FiniteRing, images: &[Elem], anti: bool, out: &mut Vec<u16>) {
        let seeds: Vec<u16> = images.iter().map(|&x| x as u16).collect();
        self.replay_with(
            UNSET,
            &seeds,
            |l, r| target.add(l as Elem, r as Elem) as u16,
            |l, r| {
                if anti {
                    target.mul(r as Elem, l as Elem) as u16
                } else {
                    target.mul(l as Elem, r as Elem) as u16
                }
            },
            out,
        );
    }

    /// Replays the program in an arbitrary value domain.
    pub(crate) fn replay_with<T: Copy>(
        &self,
        unset: T,
        seeds: &[T],
        add: impl Fn(T, T) -> T,
        mul: impl Fn(T, T) -> T,
        out: &mut Vec<T>,
    ) {
        out.clear();
        out.resize(self.size, unset);
        for (s, &img) in self.seeds.iter().zip(seeds) {
            out[*s as usize] = img;
        }
        for st in &self.steps {
            let l = out[st.lhs as usize];
            let r = out[st.rhs as usize];
            out[st.target as usize] = match st.op {
                Op::Add => add(l, r),
                Op::Mul => mul(l, r),
            };
        }
    }

}
