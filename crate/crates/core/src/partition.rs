//! Integer partitions and Young-diagram statistics.
//!
//! Boxes are `(i, j)` with `i` the row and `j` the column, both 1-based,
//! in English convention (row 1 on top, longest).

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::int::Int;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

/// A box of a Young diagram, `[i, j]` in JSON.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Cell {
    pub i: usize,
    pub j: usize,
}

impl Cell {
    pub fn new(i: usize, j: usize) -> Cell {
        Cell { i, j }
    }

    /// `B_s = q^{j-1} t^{1-i}`.
    pub fn weight(self) -> Coeff {
        Coeff::qt(self.j as i64 - 1, 1 - self.i as i64)
    }

    /// Exponents `(j-1, 1-i)` of the box weight.
    pub fn weight_exps(self) -> (i64, i64) {
        (self.j as i64 - 1, 1 - self.i as i64)
    }
}

impl From<[usize; 2]> for Cell {
    fn from(a: [usize; 2]) -> Cell {
        Cell { i: a[0], j: a[1] }
    }
}

impl From<Cell> for [usize; 2] {
    fn from(c: Cell) -> [usize; 2] {
        [c.i, c.j]
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Partition> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

/// Size first, then reverse lexicographic: `(3) < (2,1) < (1,1,1)`.
impl Ord for Partition {
    fn cmp(&self, o: &Partition) -> Ordering {
        self.size()
            .cmp(&o.size())
            .then_with(|| o.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, o: &Partition) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, x) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;
    /// Parses `"3,2,1"`; the empty string and `"0"` give the empty partition.
    fn from_str(s: &str) -> Result<Partition> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() || s == "0" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Invalid(format!("bad partition {s:?}: {e}")))?;
        Partition::new(parts)
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Partition> {
        if parts.iter().any(|&x| x == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Partition {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn row(n: usize) -> Partition {
        if n == 0 {
            Partition::empty()
        } else {
            Partition(vec![n])
        }
    }

    pub fn column(n: usize) -> Partition {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ_i` with 1-based `i`, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, s: Cell) -> bool {
        s.i >= 1 && s.j >= 1 && s.j <= self.part(s.i)
    }

    pub fn contains_partition(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn conjugate(&self) -> Partition {
        let n = self.part(1);
        Partition((1..=n).map(|j| self.0.iter().filter(|&&x| x >= j).count()).collect())
    }

    pub fn arm(&self, s: Cell) -> Result<usize> {
        self.check(s)?;
        Ok(self.part(s.i) - s.j)
    }

    pub fn leg(&self, s: Cell) -> Result<usize> {
        self.check(s)?;
        Ok(self.conjugate().part(s.j) - s.i)
    }

    /// Arm and leg of every box, row-major.
    pub fn arms_legs(&self) -> Vec<(Cell, usize, usize)> {
        let c = self.conjugate();
        self.boxes()
            .into_iter()
            .map(|s| (s, self.part(s.i) - s.j, c.part(s.j) - s.i))
            .collect()
    }

    fn check(&self, s: Cell) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::BoxOutside(s.i, s.j))
        }
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_stat(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &x)| i * x).sum()
    }

    /// `z_λ = Π m_i! i^{m_i}`.
    pub fn z_stat(&self) -> Int {
        let mut z = Int::ONE;
        let mut run = 0i64;
        for (n, &x) in self.0.iter().enumerate() {
            if n > 0 && self.0[n - 1] == x {
                run += 1;
            } else {
                run = 1;
            }
            z = &z * &Int::from(run * x as i64);
        }
        z
    }

    /// Multiplicities `(part, count)` in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &x in &self.0 {
            match out.last_mut() {
                Some((p, m)) if *p == x => *m += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    /// Boxes in row-major order.
    pub fn boxes(&self) -> Vec<Cell> {
        let mut v = Vec::with_capacity(self.size());
        for (i, &x) in self.0.iter().enumerate() {
            for j in 1..=x {
                v.push(Cell::new(i + 1, j));
            }
        }
        v
    }

    pub fn b_alphabet(&self) -> Vec<Coeff> {
        self.boxes().into_iter().map(Cell::weight).collect()
    }

    /// All partitions obtained by adding one box, ordered by the row of the new box.
    pub fn add_boxes(&self) -> Vec<(Partition, Cell)> {
        let mut out = Vec::new();
        for i in 0..=self.len() {
            let cur = self.part(i + 1);
            if i == 0 || self.0[i - 1] > cur {
                let mut v = self.0.clone();
                if i == v.len() {
                    v.push(1);
                } else {
                    v[i] += 1;
                }
                out.push((Partition(v), Cell::new(i + 1, cur + 1)));
            }
        }
        out
    }

    /// All partitions obtained by removing one box, ordered by the row of the removed box.
    pub fn remove_boxes(&self) -> Vec<(Partition, Cell)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            let cur = self.0[i];
            if i + 1 == self.len() || self.0[i + 1] < cur {
                let mut v = self.0.clone();
                v[i] -= 1;
                if v[i] == 0 {
                    v.pop();
                }
                out.push((Partition(v), Cell::new(i + 1, cur)));
            }
        }
        out
    }

    /// Partitions `λ ⊃ μ` with `λ/μ` a vertical strip of `d` boxes, with the strip's boxes.
    pub fn vertical_strips(&self, d: usize) -> Vec<(Partition, Vec<Cell>)> {
        let mut out = Vec::new();
        let n = self.len() + d;
        let mut add = vec![0usize; n];
        fn rec(
            mu: &Partition,
            i: usize,
            left: usize,
            add: &mut Vec<usize>,
            out: &mut Vec<(Partition, Vec<Cell>)>,
        ) {
            if left == 0 {
                let mut parts = Vec::new();
                let mut cells = Vec::new();
                for (r, &a) in add.iter().enumerate() {
                    let p = mu.part(r + 1) + a;
                    if p > 0 {
                        parts.push(p);
                    }
                    if a == 1 {
                        cells.push(Cell::new(r + 1, p));
                    }
                }
                out.push((Partition(parts), cells));
                return;
            }
            if i >= add.len() {
                return;
            }
            for a in [0usize, 1] {
                if a > left {
                    continue;
                }
                let new = mu.part(i + 1) + a;
                if i > 0 && new > mu.part(i) + add[i - 1] {
                    continue;
                }
                add[i] = a;
                rec(mu, i + 1, left - a, add, out);
                add[i] = 0;
            }
        }
        rec(self, 0, d, &mut add, &mut out);
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Boxes that may appear in some `d`-box vertical strip on `self`, labeled
    /// left to right and, within a column, top to bottom in the French drawing
    /// (larger row index first).
    pub fn strip_slots(&self, d: usize) -> Vec<Cell> {
        let c = self.conjugate();
        let mut out = Vec::new();
        for j in 1..=self.part(1) + 1 {
            let lo = c.part(j) + 1;
            let hi = if j == 1 { c.part(1) + d } else { c.part(j - 1).min(c.part(j) + d) };
            for i in (lo..=hi).rev() {
                out.push(Cell::new(i, j));
            }
        }
        out
    }

    /// Garsia–Tesler variables: `X_k` are the weights of the addable boxes
    /// labeled right to left and `Y_k = q^{j(X_k)-1} t^{1-i(X_{k+1})}`.
    pub fn garsia_tesler_vars(&self) -> (Vec<Coeff>, Vec<Coeff>) {
        let cells: Vec<Cell> = self.add_boxes().into_iter().map(|(_, s)| s).collect();
        let xs = cells.iter().map(|s| s.weight()).collect();
        let ys = cells
            .windows(2)
            .map(|w| Coeff::qt(w[0].j as i64 - 1, 1 - w[1].i as i64))
            .collect();
        (xs, ys)
    }

    /// Strict dominance `self < mu`.
    pub fn dominance_less(&self, mu: &Partition) -> Result<bool> {
        if self.size() != mu.size() {
            return Err(Error::SizeMismatch(self.size(), mu.size()));
        }
        Ok(self != mu && mu.dominates(self))
    }

    /// Non-strict dominance `self >= o`, sizes assumed equal.
    pub fn dominates(&self, o: &Partition) -> bool {
        let (mut a, mut b) = (0, 0);
        for i in 1..=self.len().max(o.len()) {
            a += self.part(i);
            b += o.part(i);
            if a < b {
                return false;
            }
        }
        true
    }
}

/// All partitions of `n`, in the crate order (reverse lexicographic).
pub fn partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for x in (1..=left.min(max)).rev() {
            cur.push(x);
            rec(left - x, x, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// All partitions of size at most `n`.
pub fn partitions_upto(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions).collect()
}

/// Number of partitions of `n`.
pub fn count(n: usize) -> usize {
    partitions(n).len()
}

/// `e_r` of the infinite alphabet `s^λ = (t^{-1}q^{λ_1}, t^{-2}q^{λ_2}, ...)`.
pub fn e_r_s_alphabet(lambda: &Partition, r: usize) -> Coeff {
    let l = lambda.len() as i64;
    let x = Coeff::qt(0, -1);
    let one = Coeff::one();
    // head: e_a of the ℓ explicit letters
    let mut head = vec![Coeff::zero(); r + 1];
    head[0] = Coeff::one();
    for (i, &p) in lambda.parts().iter().enumerate() {
        let s = Coeff::qt(p as i64, -(i as i64) - 1);
        for a in (1..=r).rev() {
            let add = &head[a - 1] * &s;
            head[a] = &head[a] + &add;
        }
    }
    let mut total = Coeff::zero();
    let mut qpoch = Coeff::one();
    for m in 0..=r {
        if m > 0 {
            qpoch = &qpoch * &(&one - &x.powu(m as u32));
        }
        if head[r - m].is_zero() {
            continue;
        }
        // e_m of t^{-ℓ-1}{1, x, x^2, ...}
        let shift = Coeff::qt(0, -(l + 1) * m as i64);
        let tail = &(&shift * &x.powu((m * m.saturating_sub(1) / 2) as u32)) / &qpoch;
        total = &total + &(&head[r - m] * &tail);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_of_figure_shape() {
        assert_eq!(p(&[9, 9, 6, 5, 2, 2]).conjugate(), p(&[6, 6, 4, 4, 4, 3, 2, 2, 2]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn arm_and_leg() {
        let l = p(&[9, 9, 6, 5, 2, 2]);
        assert_eq!(l.arm(Cell::new(2, 4)).unwrap(), 5);
        assert_eq!(l.leg(Cell::new(2, 4)).unwrap(), 2);
        assert!(l.arm(Cell::new(7, 1)).is_err());
    }

    #[test]
    fn ordering_and_enumeration() {
        let v = partitions(3);
        assert_eq!(v, vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        let mut w = v.clone();
        w.reverse();
        w.sort();
        assert_eq!(w, v);
        assert_eq!(partitions(6).len(), 11);
    }

    #[test]
    fn box_moves() {
        let a = p(&[1]).add_boxes();
        assert_eq!(a[0], (p(&[2]), Cell::new(1, 2)));
        assert_eq!(a[1], (p(&[1, 1]), Cell::new(2, 1)));
        let r = p(&[2, 1]).remove_boxes();
        assert_eq!(r[0], (p(&[1, 1]), Cell::new(1, 2)));
        assert_eq!(r[1], (p(&[2]), Cell::new(2, 1)));
    }

    #[test]
    fn strip_slots_of_figure_shape() {
        let mu = p(&[6, 6, 4, 3, 3, 1, 1, 1]);
        let s = mu.strip_slots(3);
        assert_eq!(s.len(), 11);
        assert_eq!(s[0], Cell::new(11, 1));
        assert_eq!(s[10], Cell::new(1, 7));
        for (lam, cells) in mu.vertical_strips(3) {
            assert_eq!(lam.size(), mu.size() + 3);
            assert!(cells.iter().all(|c| s.contains(c)));
        }
    }

    #[test]
    fn z_values() {
        assert_eq!(p(&[1, 1]).z_stat(), Int::from(2));
        assert_eq!(p(&[2]).z_stat(), Int::from(2));
        assert_eq!(p(&[2, 2, 1]).z_stat(), Int::from(8));
    }
}
