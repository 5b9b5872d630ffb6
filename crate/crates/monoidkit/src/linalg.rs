//! Integer matrices, Smith normal form and finitely generated abelian groups.

use std::fmt;

/// Dense integer matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl serde::Serialize for Matrix {
    /// Row-major list of rows.
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<i64>> = (0..self.rows).map(|i| self.row(i)).collect();
        rows.serialize(ser)
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<i64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.rows, v.len());
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| v[i] * self.get(i, j)).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    // row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: i64) {
        if q == 0 {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(dst, j) + q * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, q: i64) {
        if q == 0 {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, dst) + q * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn neg_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }
}

/// `u * a * v == diag(d, 0...)` with `u`, `v` unimodular and `d[i] | d[i+1]`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: Vec<i64>,
    pub u: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.d.len()
    }
}

pub fn smith(a: &Matrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = Matrix::identity(m);
    let mut v = Matrix::identity(n);
    let mut vi = Matrix::identity(n);
    let mut d = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = s.get(i, j);
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        vi.swap_rows(t, pj);
        loop {
            let p = s.get(t, t);
            let mut dirty = false;
            for i in t + 1..m {
                let q = s.get(i, t) / p;
                s.add_row(i, t, -q);
                u.add_row(i, t, -q);
                if s.get(i, t) != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let q = s.get(t, j) / p;
                s.add_col(j, t, -q);
                v.add_col(j, t, -q);
                vi.add_row(t, j, q);
                if s.get(t, j) != 0 {
                    dirty = true;
                }
            }
            if dirty {
                let mut best = (t, t);
                for i in t..m {
                    let x = s.get(i, t);
                    if x != 0 && x.abs() < s.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t..n {
                    let x = s.get(t, j);
                    if x != 0 && x.abs() < s.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    s.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                } else if best.1 != t {
                    s.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                    vi.swap_rows(t, best.1);
                }
                continue;
            }
            // pivot must divide the rest of the block
            let mut fix = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if s.get(i, j) % p != 0 {
                        fix = Some(i);
                        break 'scan;
                    }
                }
            }
            match fix {
                Some(i) => {
                    s.add_row(t, i, 1);
                    u.add_row(t, i, 1);
                }
                None => break,
            }
        }
        if s.get(t, t) < 0 {
            s.neg_row(t);
            u.neg_row(t);
        }
        d.push(s.get(t, t));
        t += 1;
    }
    Smith { d, u, v, v_inv: vi }
}

pub fn rank(a: &Matrix) -> usize {
    smith(a).rank()
}

/// Integer basis of `{x : a x = 0}`.
pub fn kernel_basis(a: &Matrix) -> Vec<Vec<i64>> {
    let sm = smith(a);
    (sm.rank()..a.cols)
        .map(|j| (0..a.cols).map(|i| sm.v.get(i, j)).collect())
        .collect()
}

/// Finitely generated abelian group `Z^free + Z/t1 + ... `.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: vec![] }
    }

    pub fn free(n: usize) -> Self {
        AbelianGroup { free_rank: n, torsion: vec![] }
    }

    pub fn cyclic(n: i64) -> Self {
        match n {
            0 => AbelianGroup::free(1),
            1 => AbelianGroup::trivial(),
            _ => AbelianGroup { free_rank: 0, torsion: vec![n] },
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Build from invariant factors; zeros count as free summands, units vanish.
    pub fn from_invariants(inv: &[i64], extra_free: usize) -> Self {
        let mut free = extra_free;
        let mut tors = Vec::new();
        for &x in inv {
            match x.abs() {
                0 => free += 1,
                1 => {}
                y => tors.push(y),
            }
        }
        AbelianGroup { free_rank: free, torsion: normalize_torsion(&tors) }
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut t = self.torsion.clone();
        t.extend(&other.torsion);
        AbelianGroup { free_rank: self.free_rank + other.free_rank, torsion: normalize_torsion(&t) }
    }

    /// Order when finite.
    pub fn order(&self) -> Option<i64> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Rewrite a list of cyclic orders as invariant factors `t1 | t2 | ...`.
pub fn normalize_torsion(orders: &[i64]) -> Vec<i64> {
    let k = orders.len();
    let mut m = Matrix::zeros(k, k);
    for (i, &o) in orders.iter().enumerate() {
        m.set(i, i, o);
    }
    smith(&m).d.into_iter().filter(|&x| x > 1).collect()
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Cokernel of `a: Z^cols -> Z^rows`, with a map from `Z^rows` to normal-form coordinates.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub group: AbelianGroup,
    smith: Smith,
    rows: usize,
}

impl Cokernel {
    pub fn new(a: &Matrix) -> Self {
        let sm = smith(a);
        let group = AbelianGroup::from_invariants(&sm.d, a.rows - sm.rank());
        Cokernel { group, smith: sm, rows: a.rows }
    }

    /// Canonical coordinates of the class of `x`: residues for torsion then free parts.
    pub fn class_of(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.rows);
        let y = self.smith.u.mul_vec(x);
        let mut out = Vec::new();
        for (i, &yi) in y.iter().enumerate() {
            if i < self.smith.d.len() {
                let d = self.smith.d[i];
                if d > 1 {
                    out.push(yi.rem_euclid(d));
                }
            } else {
                out.push(yi);
            }
        }
        out
    }

    pub fn is_zero(&self, x: &[i64]) -> bool {
        self.class_of(x).iter().all(|&c| c == 0)
    }
}

pub fn cokernel(a: &Matrix) -> AbelianGroup {
    Cokernel::new(a).group
}

/// Membership of `x` in the row lattice spanned by `basis`.
pub fn in_row_lattice(basis: &[Vec<i64>], x: &[i64]) -> bool {
    let n = x.len();
    if basis.is_empty() {
        return x.iter().all(|&v| v == 0);
    }
    let b = Matrix::from_rows(basis, n);
    let sm = smith(&b);
    let w = sm.v.vec_mul(x);
    w.iter().enumerate().all(|(i, &wi)| {
        if i < sm.rank() {
            wi % sm.d[i] == 0
        } else {
            wi == 0
        }
    })
}

/// A basis of the lattice spanned by some integer vectors.
#[derive(Clone, Debug)]
pub struct LatticeBasis {
    smith: Smith,
    dim: usize,
}

impl LatticeBasis {
    pub fn new(gens: &[Vec<i64>], dim: usize) -> Self {
        let m = if gens.is_empty() { Matrix::zeros(0, dim) } else { Matrix::from_rows(gens, dim) };
        LatticeBasis { smith: smith(&m), dim }
    }

    pub fn rank(&self) -> usize {
        self.smith.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Basis vectors in ambient coordinates.
    pub fn basis(&self) -> Vec<Vec<i64>> {
        (0..self.rank()).map(|i| self.smith.v_inv.row(i).iter().map(|&x| x * self.smith.d[i]).collect()).collect()
    }

    pub fn from_coords(&self, c: &[i64]) -> Vec<i64> {
        let b = self.basis();
        (0..self.dim).map(|j| c.iter().zip(&b).map(|(&ci, bi)| ci * bi[j]).sum()).collect()
    }

    /// Coordinates of `x` in [`LatticeBasis::basis`], if `x` lies in the lattice.
    pub fn coords(&self, x: &[i64]) -> Option<Vec<i64>> {
        assert_eq!(x.len(), self.dim);
        let w = self.smith.v.vec_mul(x);
        let r = self.smith.rank();
        if w[r..].iter().any(|&v| v != 0) {
            return None;
        }
        let mut c = Vec::with_capacity(r);
        for i in 0..r {
            if w[i] % self.smith.d[i] != 0 {
                return None;
            }
            c.push(w[i] / self.smith.d[i]);
        }
        Some(c)
    }
}

/// `<z> / <w>` for sublattices of `Z^dim`; `w` must lie in `<z>`.
pub fn lattice_quotient(z: &[Vec<i64>], w: &[Vec<i64>], dim: usize) -> Option<AbelianGroup> {
    if z.is_empty() {
        return w.iter().all(|v| v.iter().all(|&x| x == 0)).then(AbelianGroup::trivial);
    }
    let lb = LatticeBasis::new(z, dim);
    let r = lb.smith.rank();
    let mut cols = Vec::new();
    for v in w {
        cols.push(lb.coords(v)?);
    }
    let mut m = Matrix::zeros(r, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for i in 0..r {
            m.set(i, j, c[i]);
        }
    }
    Some(cokernel(&m))
}

/// Rank of the lattice spanned by `gens`.
pub fn lattice_rank(gens: &[Vec<i64>], dim: usize) -> usize {
    if gens.is_empty() {
        return 0;
    }
    rank(&Matrix::from_rows(gens, dim))
}

/// Homology at `C_n` for `d_n: C_n -> C_{n-1}` and `d_{n+1}: C_{n+1} -> C_n`.
pub fn smith_homology(d_n: &Matrix, d_next: &Matrix, dim_n: usize) -> AbelianGroup {
    let r_out = if d_n.rows == 0 || d_n.cols == 0 { 0 } else { rank(d_n) };
    let (r_in, tors) = if d_next.rows == 0 || d_next.cols == 0 {
        (0, vec![])
    } else {
        let sm = smith(d_next);
        (sm.rank(), sm.d.clone())
    };
    let free = dim_n - r_out - r_in;
    AbelianGroup::from_invariants(&tors, free)
}

/// Invariant factors of a finite abelian group of order `order`, from `counts[m]` = number of
/// elements killed by `m`.
pub fn abelian_invariants_from_counts(order: usize, count_killed_by: impl Fn(usize) -> usize) -> AbelianGroup {
    let mut n = order;
    let mut cyclic = Vec::new();
    let mut p = 2;
    while n > 1 {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            // r_k = #{cyclic factors of order >= p^k} = log_p(c(p^k)/c(p^(k-1)))
            let mut prev = 1usize;
            let mut ranks = Vec::new();
            let mut pk = 1usize;
            for _ in 0..e {
                pk *= p;
                let c = count_killed_by(pk);
                let mut ratio = c / prev;
                let mut r = 0;
                while ratio > 1 {
                    ratio /= p;
                    r += 1;
                }
                ranks.push(r);
                prev = c;
            }
            for k in 0..e {
                let next = if k + 1 < e { ranks[k + 1] } else { 0 };
                for _ in 0..ranks[k] - next {
                    cyclic.push(p.pow(k as u32 + 1) as i64);
                }
            }
        }
        p += 1;
    }
    AbelianGroup { free_rank: 0, torsion: normalize_torsion(&cyclic) }
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_check(a: &Matrix) {
        let sm = smith(a);
        let p = sm.u.mul(a).mul(&sm.v);
        for i in 0..a.rows {
            for j in 0..a.cols {
                let want = if i == j && i < sm.d.len() { sm.d[i] } else { 0 };
                assert_eq!(p.get(i, j), want);
            }
        }
        for w in sm.d.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        assert_eq!(sm.v.mul(&sm.v_inv), Matrix::identity(a.cols));
    }

    #[test]
    fn smith_small() {
        let a = Matrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        diag_check(&a);
        assert_eq!(smith(&a).d, vec![2, 6, 12]);
    }

    #[test]
    fn cokernel_z2() {
        let a = Matrix::from_rows(&[vec![2]], 1);
        assert_eq!(cokernel(&a).to_string(), "Z/2");
        let z = Matrix::zeros(2, 0);
        assert_eq!(cokernel(&z).to_string(), "Z^2");
    }

    #[test]
    fn invariants_from_counts() {
        // Z/2 x Z/4: killed by 2 -> 4 elements, by 4 -> 8
        let g = abelian_invariants_from_counts(8, |m| if m == 2 { 4 } else { 8 });
        assert_eq!(g.torsion, vec![2, 4]);
        let c6 = abelian_invariants_from_counts(6, |m| m.min(6));
        assert_eq!(c6.torsion, vec![6]);
    }

    #[test]
    fn membership() {
        let b = vec![vec![2, 0], vec![1, 3]];
        assert!(in_row_lattice(&b, &[3, 3]));
        assert!(!in_row_lattice(&b, &[1, 0]));
        assert_eq!(lattice_quotient(&[vec![1, 0], vec![0, 1]], &b, 2).unwrap().to_string(), "Z/6");
    }

    use proptest::prelude::*;
    proptest! {
        #[test]
        fn smith_is_diagonalization(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-6i64..7, 25)) {
            let mut a = Matrix::zeros(rows, cols);
            for i in 0..rows { for j in 0..cols { a.set(i, j, seed[i * 5 + j]); } }
            diag_check(&a);
        }
    }
}
