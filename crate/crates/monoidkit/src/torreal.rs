//! `Tor_0`, `Tor_1` over `F1[t]`, and integer realizations.

use serde::Serialize;

use crate::aset::{ASet, Base};
use crate::error::{Error, Result};
use crate::homological::{dold_kan_k, DaComplex, TruncSimplicialASet};
use crate::linalg::{self, AbelianGroup, Matrix};
use crate::util::UnionFind;

pub fn tor0(x: &ASet, y: &ASet) -> Result<ASet> {
    if x.base != y.base {
        return Err(Error::Invalid("Tor_0 needs both A-sets over the same monoid".into()));
    }
    Ok(x.tensor(y))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tor1Report {
    pub k: usize,
    /// `|X| - |aX|`.
    pub formula_rank: usize,
    pub graph_edges: usize,
    pub graph_vertices: usize,
    pub graph_components: usize,
    /// `E - V + C` of the graph with an edge `{0, ax}` per nonzero `x`.
    pub graph_rank: usize,
    pub agree: bool,
}

fn power_map(x: &ASet, k: usize) -> Vec<usize> {
    (0..x.len()).map(|e| x.act_pow(k, e)).collect()
}

/// Rank of the free group `Tor_1(A/t^k A, X)` over `A = F1[t]`.
pub fn tor1_monogenic(x: &ASet, k: usize) -> Result<Tor1Report> {
    if x.base != Base::Monogenic {
        return Err(Error::Invalid("expected an A-set over F1[t]".into()));
    }
    if k == 0 {
        return Err(Error::HypothesisViolated("a = t^0 is a unit; need k >= 1".into()));
    }
    let ax = power_map(x, k);
    let mut image = vec![false; x.len()];
    for &v in &ax {
        image[v] = true;
    }
    let formula_rank = x.len() - image.iter().filter(|&&b| b).count();

    let mut uf = UnionFind::new(x.len());
    for &v in ax.iter().skip(1) {
        uf.union(0, v);
    }
    let graph_vertices = x.len();
    let graph_edges = x.len() - 1;
    let graph_components = (0..x.len()).filter(|&v| uf.find(v) == v).count();
    let graph_rank = graph_edges + graph_components - graph_vertices;
    Ok(Tor1Report { k, formula_rank, graph_edges, graph_vertices, graph_components, graph_rank, agree: formula_rank == graph_rank })
}

/// `Z[X]`: free on the nonzero points, each generator acting by a 0/1 matrix.
#[derive(Clone, Debug, Serialize)]
pub struct ZModule {
    pub rank: usize,
    pub basis: Vec<String>,
    pub generators: Vec<Matrix>,
}

/// Matrix of a pointed map `f: X -> Y` on `Z[X] -> Z[Y]`, with columns indexed by `X`.
pub fn realize_map(f: &[usize], target: usize) -> Matrix {
    let mut m = Matrix::zeros(target - 1, f.len() - 1);
    for (x, &y) in f.iter().enumerate().skip(1) {
        if y != 0 {
            m.set(y - 1, x - 1, 1);
        }
    }
    m
}

pub fn z_realization(x: &ASet) -> ZModule {
    ZModule {
        rank: x.len() - 1,
        basis: x.names[1..].to_vec(),
        generators: (0..x.base.ngens()).map(|g| realize_map(&x.gen_act[g], x.len())).collect(),
    }
}

/// Matrix of `a·` on `Z[X]` for any element of a finite base.
pub fn action_matrix(x: &ASet, a: usize) -> Matrix {
    let f: Vec<usize> = (0..x.len()).map(|e| x.act(a, e)).collect();
    realize_map(&f, x.len())
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegerChainComplex {
    pub labels: Vec<Vec<String>>,
    /// `d[n] : C_n -> C_{n-1}`; `d[0]` has no rows.
    pub d: Vec<Matrix>,
}

impl IntegerChainComplex {
    pub fn new(labels: Vec<Vec<String>>, d: Vec<Matrix>) -> Result<Self> {
        let c = IntegerChainComplex { labels, d };
        if c.d.len() != c.labels.len() {
            return Err(Error::NotAComplex("one differential per degree".into()));
        }
        for n in 0..c.d.len() {
            let rows = if n == 0 { 0 } else { c.rank(n - 1) };
            if c.d[n].cols != c.rank(n) || c.d[n].rows != rows {
                return Err(Error::NotAComplex(format!("d_{n} has the wrong shape")));
            }
        }
        for n in 2..c.d.len() {
            if !c.d[n - 1].mul(&c.d[n]).is_zero() {
                return Err(Error::NotAComplex(format!("d_{} d_{n} != 0", n - 1)));
            }
        }
        Ok(c)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.labels[n].len()
    }

    pub fn top(&self) -> usize {
        self.labels.len() - 1
    }

    /// `H_n`; only meaningful below the top degree of a truncation.
    pub fn homology(&self, n: usize) -> Result<AbelianGroup> {
        smith_homology(self, n)
    }
}

/// `C_n = Z[S_n]` with `d = Σ (-1)^i ∂_i`.
pub fn chain_of_simplicial(s: &TruncSimplicialASet) -> Result<IntegerChainComplex> {
    let labels: Vec<Vec<String>> = s.levels.iter().map(|x| x.names[1..].to_vec()).collect();
    let mut d = vec![Matrix::zeros(0, labels[0].len())];
    for n in 1..s.levels.len() {
        let mut m = Matrix::zeros(labels[n - 1].len(), labels[n].len());
        for i in 0..=n {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for (x, &y) in s.faces[n][i].iter().enumerate().skip(1) {
                if y != 0 {
                    m.set(y - 1, x - 1, m.get(y - 1, x - 1) + sign);
                }
            }
        }
        d.push(m);
    }
    IntegerChainComplex::new(labels, d)
}

/// `ker d_n / im d_{n+1}`, with `d_{n+1} = 0` at the top.
pub fn smith_homology(c: &IntegerChainComplex, n: usize) -> Result<AbelianGroup> {
    if n > c.top() {
        return Ok(AbelianGroup::trivial());
    }
    if n >= 1 && n < c.d.len() - 1 && !c.d[n].mul(&c.d[n + 1]).is_zero() {
        return Err(Error::NotAComplex(format!("d_{n} d_{} != 0", n + 1)));
    }
    let next = if n < c.top() { c.d[n + 1].clone() } else { Matrix::zeros(c.rank(n), 0) };
    Ok(linalg::smith_homology(&c.d[n], &next, c.rank(n)))
}

/// `0 ⇉ X ⇉(t^k, 0) X` for an A-set over `F1[t]`.
pub fn tor_complex(x: &ASet, k: usize) -> DaComplex {
    let n = x.len();
    DaComplex::trusted(x.base.clone(), 0, vec![x.clone(), x.clone()], vec![vec![0; n], power_map(x, k)], vec![vec![0; n], vec![0; n]])
}

/// `C Z[K(0 ⇉ A ⇉(t^k, 0) A) ⊗ X]` truncated at `top`.
pub fn tor_chain_complex(x: &ASet, k: usize, top: usize) -> Result<IntegerChainComplex> {
    let dk = dold_kan_k(&tor_complex(x, k), top)?;
    chain_of_simplicial(&dk.simplicial)
}

#[derive(Clone, Debug, Serialize)]
pub struct HurewiczReport {
    pub tor1: Tor1Report,
    pub h0: AbelianGroup,
    pub h1: AbelianGroup,
    /// `H_n` for `2 <= n < top`.
    pub higher: Vec<AbelianGroup>,
    /// `|X/aX| - 1`.
    pub h0_expected: usize,
    pub agree: bool,
}

/// Compare `Tor_1` rank against `H_1` of the realized simplicial complex.
pub fn hurewicz_compare(x: &ASet, k: usize, top: usize) -> Result<HurewiczReport> {
    let tor1 = tor1_monogenic(x, k)?;
    let c = tor_chain_complex(x, k, top.max(2))?;
    let h0 = smith_homology(&c, 0)?;
    let h1 = smith_homology(&c, 1)?;
    let higher = (2..top).map(|n| smith_homology(&c, n)).collect::<Result<Vec<_>>>()?;
    let ax = power_map(x, k);
    let image: std::collections::BTreeSet<usize> = ax.iter().copied().collect();
    let h0_expected = x.len() - image.len();
    let agree = tor1.agree
        && h1.torsion.is_empty()
        && h1.free_rank == tor1.formula_rank
        && h0.torsion.is_empty()
        && h0.free_rank == h0_expected
        && higher.iter().all(|h| h.is_trivial());
    Ok(HurewiczReport { tor1, h0, h1, higher, h0_expected, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homological::TruncSimplicialASet;
    use crate::monoid::truncated;
    use std::sync::Arc;

    fn mono(names: &[&str], t: Vec<usize>) -> ASet {
        ASet::new("X", Base::Monogenic, names.iter().map(|s| s.to_string()).collect(), vec![t]).unwrap()
    }

    #[test]
    fn tor1_small_cases() {
        let x = mono(&["0", "1", "t"], vec![0, 2, 0]);
        let r = tor1_monogenic(&x, 1).unwrap();
        assert_eq!((r.formula_rank, r.graph_rank, r.graph_edges, r.graph_vertices, r.graph_components), (1, 1, 2, 3, 2));
        let cyc = mono(&["0", "p", "q"], vec![0, 2, 1]);
        assert_eq!(tor1_monogenic(&cyc, 2).unwrap().formula_rank, 0);
        let dead = mono(&["0", "a", "b", "c"], vec![0, 0, 0, 0]);
        assert_eq!(tor1_monogenic(&dead, 1).unwrap().graph_rank, 3);
        assert!(matches!(tor1_monogenic(&x, 0), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn tor_complex_differentials() {
        let x = mono(&["0", "1", "t"], vec![0, 2, 0]);
        let c = tor_chain_complex(&x, 1, 3).unwrap();
        assert_eq!((c.rank(0), c.rank(1), c.rank(2)), (2, 4, 6));
        let rep = hurewicz_compare(&x, 1, 4).unwrap();
        assert!(rep.agree, "{rep:?}");
        assert_eq!(rep.h1, AbelianGroup::free(1));
    }

    #[test]
    fn two_to_zero() {
        let c = IntegerChainComplex::new(vec![vec!["e".into()], vec!["f".into()]], vec![Matrix::zeros(0, 1), Matrix::from_rows(&[vec![2]], 1)]).unwrap();
        assert_eq!(smith_homology(&c, 0).unwrap(), AbelianGroup::cyclic(2));
        assert_eq!(smith_homology(&c, 1).unwrap(), AbelianGroup::trivial());
    }

    #[test]
    fn realization_of_dual_numbers() {
        let a = Arc::new(truncated(2));
        let z = z_realization(&ASet::regular(a));
        assert_eq!(z.rank, 2);
        let m = &z.generators[0];
        assert!(!m.is_zero() && m.mul(m).is_zero());
    }

    #[test]
    fn constant_simplicial() {
        let a = Arc::new(truncated(3));
        let s = TruncSimplicialASet::constant(&ASet::regular(a), 3);
        let c = chain_of_simplicial(&s).unwrap();
        assert_eq!(smith_homology(&c, 0).unwrap(), AbelianGroup::free(3));
        assert!(smith_homology(&c, 1).unwrap().is_trivial());
        assert!(smith_homology(&c, 2).unwrap().is_trivial());
    }

    #[test]
    fn low_differentials() {
        // cells: level 1 = [x, s0 c], level 2 = [s0 x, s1 x, s1 s0 c]
        let x = mono(&["0", "p", "q"], vec![0, 2, 0]);
        let c = tor_chain_complex(&x, 1, 2).unwrap();
        let d1 = Matrix::from_rows(&[vec![0, 0, 0, 0], vec![-1, 0, 0, 0]], 4);
        assert_eq!(c.d[1], d1);
        let mut d2 = Matrix::zeros(4, 6);
        for (r, col) in [(3, 0), (2, 4), (3, 5)] {
            d2.set(r, col, 1);
        }
        assert_eq!(c.d[2], d2);
    }
}
