use super::{Fe, Field, Mat};

/// A subspace of `F_q^n` given by its reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace {
            basis: Mat::zero(0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Subspace {
            basis: Mat::identity(n),
            pivots: (0..n).collect(),
        }
    }

    /// The span of the rows of `m`.
    pub fn span(f: &Field, m: &Mat) -> Self {
        let mut b = m.clone();
        let pivots = b.rref(f);
        let rows: Vec<Fe> = (0..pivots.len()).flat_map(|r| b.row(r).to_vec()).collect();
        Subspace {
            basis: Mat::from_rows(pivots.len(), m.cols(), rows),
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns outside the pivots; their unit vectors span a complement.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ambient()).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// `v` minus its projection along the basis; zero iff `v` lies in the
    /// subspace. Pivot coordinates of the result are zero.
    pub fn reduce(&self, f: &Field, v: &[Fe]) -> Vec<Fe> {
        let mut out = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c != 0 {
                for (o, &b) in out.iter_mut().zip(self.basis.row(r)) {
                    *o = f.sub(*o, f.mul(c, b));
                }
            }
        }
        out
    }

    pub fn contains(&self, f: &Field, v: &[Fe]) -> bool {
        self.reduce(f, v).iter().all(|&x| x == 0)
    }

    /// Coordinates of a vector of the subspace in the echelon basis.
    pub fn coordinates(&self, v: &[Fe]) -> Vec<Fe> {
        self.pivots.iter().map(|&c| v[c]).collect()
    }

    /// Coordinates of the class of `v` in the quotient, indexed by
    /// [`Subspace::free_columns`].
    pub fn quotient_coordinates(&self, f: &Field, v: &[Fe]) -> Vec<Fe> {
        let r = self.reduce(f, v);
        self.free_columns().iter().map(|&c| r[c]).collect()
    }
}

/// `[n choose k]_q`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Every `k`-dimensional subspace of `F_q^n`, enumerated through echelon
/// forms: pivot sets in lexicographic order, then free entries.
pub fn subspaces(f: &Field, n: usize, k: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let q = f.order() as Fe;
    for pivots in combinations(n, k) {
        let mut free = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..n {
                if !pivots.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let mut vals = vec![0 as Fe; free.len()];
        loop {
            let mut m = Mat::zero(k, n);
            for (r, &pc) in pivots.iter().enumerate() {
                m.set(r, pc, 1);
            }
            for (&(r, c), &v) in free.iter().zip(&vals) {
                m.set(r, c, v);
            }
            out.push(Subspace {
                basis: m,
                pivots: pivots.clone(),
            });
            // odometer over free entries
            let mut i = 0;
            while i < vals.len() {
                vals[i] += 1;
                if vals[i] < q {
                    break;
                }
                vals[i] = 0;
                i += 1;
            }
            if i == vals.len() {
                break;
            }
        }
    }
    out
}

/// Every graded subspace `(W_i ⊆ F_q^{d_i})_i` with `dim W_i = a_i`.
pub fn graded_subspaces(f: &Field, dims: &[usize], sub: &[usize]) -> Vec<Vec<Subspace>> {
    let per_vertex: Vec<Vec<Subspace>> = dims.iter().zip(sub).map(|(&n, &k)| subspaces(f, n, k)).collect();
    let mut out = vec![Vec::new()];
    for choices in per_vertex {
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for s in &choices {
                let mut v = prefix.clone();
                v.push(s.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::field;

    #[test]
    fn counts_match_gaussian_binomials() {
        for q in [2u32, 3, 4] {
            let f = field(q).unwrap();
            for n in 0..=4 {
                for k in 0..=n {
                    let subs = subspaces(&f, n, k);
                    assert_eq!(subs.len() as u128, gaussian_binomial(n, k, q as u64), "q={q} n={n} k={k}");
                    let distinct: std::collections::HashSet<_> = subs.iter().collect();
                    assert_eq!(distinct.len(), subs.len());
                }
            }
        }
    }

    #[test]
    fn reduce_and_quotient() {
        let f = field(3).unwrap();
        let s = Subspace::span(&f, &Mat::from_rows(1, 3, vec![1, 1, 0]));
        assert!(s.contains(&f, &[2, 2, 0]));
        assert!(!s.contains(&f, &[1, 0, 0]));
        assert_eq!(s.free_columns(), vec![1, 2]);
        assert_eq!(s.quotient_coordinates(&f, &[1, 0, 0]), vec![2, 0]);
        assert_eq!(s.coordinates(&[2, 2, 0]), vec![2]);
    }

    #[test]
    fn graded_count() {
        let f = field(2).unwrap();
        assert_eq!(graded_subspaces(&f, &[2, 1, 3], &[1, 1, 2]).len(), 3 * 7);
    }
}
