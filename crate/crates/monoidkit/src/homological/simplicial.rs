use std::collections::HashMap;

use super::DaComplex;
use crate::aset::{is_hom, wedge_all, ASet, Base};
use crate::error::{Error, Result};

/// Levels `X_0 .. X_N` with faces `faces[n][i] : X_n -> X_{n-1}` (`n >= 1`) and
/// degeneracies `degens[n][i] : X_n -> X_{n+1}` (`n < N`).
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSimplicialASet {
    pub base: Base,
    pub levels: Vec<ASet>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degens: Vec<Vec<Vec<usize>>>,
}

fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

impl TruncSimplicialASet {
    pub fn new(base: Base, levels: Vec<ASet>, faces: Vec<Vec<Vec<usize>>>, degens: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let s = TruncSimplicialASet { base, levels, faces, degens };
        let v = s.violations();
        if v.is_empty() {
            Ok(s)
        } else {
            Err(Error::Invalid(v.join("; ")))
        }
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn face(&self, n: usize, i: usize) -> &[usize] {
        &self.faces[n][i]
    }

    pub fn degen(&self, n: usize, i: usize) -> &[usize] {
        &self.degens[n][i]
    }

    /// The constant simplicial A-set on `x`.
    pub fn constant(x: &ASet, top: usize) -> Self {
        let id: Vec<usize> = (0..x.len()).collect();
        TruncSimplicialASet {
            base: x.base.clone(),
            levels: vec![x.clone(); top + 1],
            faces: (0..=top).map(|n| if n == 0 { vec![] } else { vec![id.clone(); n + 1] }).collect(),
            degens: (0..=top).map(|n| if n == top { vec![] } else { vec![id.clone(); n + 1] }).collect(),
        }
    }

    /// Violated simplicial identities and non-equivariant maps, with witnesses.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let nn = self.levels.len();
        if nn == 0 {
            return vec!["no levels".into()];
        }
        if self.faces.len() != nn || self.degens.len() != nn {
            return vec!["one list of faces and degeneracies per level".into()];
        }
        for n in 0..nn {
            let want_f = if n == 0 { 0 } else { n + 1 };
            let want_d = if n + 1 == nn { 0 } else { n + 1 };
            if self.faces[n].len() != want_f || self.degens[n].len() != want_d {
                out.push(format!("level {n} needs {want_f} faces and {want_d} degeneracies"));
                continue;
            }
            for (i, f) in self.faces[n].iter().enumerate() {
                if !is_hom(&self.levels[n], &self.levels[n - 1], f) {
                    out.push(format!("face d{i} on level {n} is not an A-set map"));
                }
            }
            for (i, d) in self.degens[n].iter().enumerate() {
                if !is_hom(&self.levels[n], &self.levels[n + 1], d) {
                    out.push(format!("degeneracy s{i} on level {n} is not an A-set map"));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        let witness = |a: &[usize], b: &[usize], lvl: &ASet| -> Option<String> { (0..a.len()).find(|&x| a[x] != b[x]).map(|x| lvl.names[x].clone()) };
        // d_i d_j = d_{j-1} d_i for i < j
        for n in 2..nn {
            for j in 0..=n {
                for i in 0..j {
                    let l = compose(&self.faces[n - 1][i], &self.faces[n][j]);
                    let r = compose(&self.faces[n - 1][j - 1], &self.faces[n][i]);
                    if let Some(w) = witness(&l, &r, &self.levels[n]) {
                        out.push(format!("d{i}d{j} != d{}d{i} on level {n} at {w}", j - 1));
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j
        for n in 0..nn.saturating_sub(2) {
            for j in 0..=n {
                for i in 0..=j {
                    let l = compose(&self.degens[n + 1][i], &self.degens[n][j]);
                    let r = compose(&self.degens[n + 1][j + 1], &self.degens[n][i]);
                    if let Some(w) = witness(&l, &r, &self.levels[n]) {
                        out.push(format!("s{i}s{j} != s{}s{i} on level {n} at {w}", j + 1));
                    }
                }
            }
        }
        // d_i s_j on X_n, landing in X_n
        for n in 0..nn.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let l = compose(&self.faces[n + 1][i], &self.degens[n][j]);
                    let r: Vec<usize> = if i == j || i == j + 1 {
                        (0..self.levels[n].len()).collect()
                    } else if n == 0 {
                        continue;
                    } else if i < j {
                        compose(&self.degens[n - 1][j - 1], &self.faces[n][i])
                    } else {
                        compose(&self.degens[n - 1][j], &self.faces[n][i - 1])
                    };
                    if let Some(w) = witness(&l, &r, &self.levels[n]) {
                        out.push(format!("d{i}s{j} fails on level {n} at {w}"));
                    }
                }
            }
        }
        out
    }

    /// Does `f` (levelwise maps) commute with every face and degeneracy?
    pub fn is_morphism_to(&self, other: &TruncSimplicialASet, f: &[Vec<usize>]) -> bool {
        let nn = self.levels.len().min(other.levels.len());
        if f.len() < nn {
            return false;
        }
        for n in 0..nn {
            if !is_hom(&self.levels[n], &other.levels[n], &f[n]) {
                return false;
            }
            if n > 0 {
                for i in 0..=n {
                    if compose(&other.faces[n][i], &f[n]) != compose(&f[n - 1], &self.faces[n][i]) {
                        return false;
                    }
                }
            }
            if n + 1 < nn {
                for i in 0..=n {
                    if compose(&other.degens[n][i], &f[n]) != compose(&f[n + 1], &self.degens[n][i]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Moore complex: `N_n = ∩_{i <= n-2} ker d_i` with boundary pair `(d_n, d_{n-1})`.
pub fn moore(s: &TruncSimplicialASet) -> MooreComplex {
    let mut levels = Vec::new();
    let mut embed: Vec<Vec<usize>> = Vec::new();
    for n in 0..s.levels.len() {
        let x = &s.levels[n];
        let keep: Vec<usize> = if n < 2 { (0..x.len()).collect() } else { (0..x.len()).filter(|&e| (0..=n - 2).all(|i| s.faces[n][i][e] == 0)).collect() };
        let (sub, pos) = x.subset(&keep).expect("kernels are A-subsets");
        levels.push(sub.named(format!("N{n}")));
        embed.push(pos);
    }
    let mut rs = vec![vec![0; levels[0].len()]];
    let mut ss = rs.clone();
    for n in 1..levels.len() {
        let back: HashMap<usize, usize> = embed[n - 1].iter().enumerate().map(|(i, &e)| (e, i)).collect();
        rs.push(embed[n].iter().map(|&e| back[&s.faces[n][n][e]]).collect());
        ss.push(embed[n].iter().map(|&e| back[&s.faces[n][n - 1][e]]).collect());
    }
    MooreComplex { complex: DaComplex::trusted(s.base.clone(), 0, levels, rs, ss), embed }
}

#[derive(Clone, Debug)]
pub struct MooreComplex {
    pub complex: DaComplex,
    /// Position in `S_n` of each point of `N_n`.
    pub embed: Vec<Vec<usize>>,
}

/// Monotone surjection `[n] -> [m]` as its list of values.
pub type Surj = Vec<usize>;

pub fn surjections(n: usize, m: usize) -> Vec<Surj> {
    // choose the m jump positions among 1..=n
    let mut out = Vec::new();
    fn rec(pos: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Surj>) {
        if pos > n {
            if left == 0 {
                let mut v = Vec::with_capacity(n + 1);
                let mut val = 0;
                for i in 0..=n {
                    if i > 0 && cur.contains(&i) {
                        val += 1;
                    }
                    v.push(val);
                }
                out.push(v);
            }
            return;
        }
        if left > 0 {
            cur.push(pos);
            rec(pos + 1, n, left - 1, cur, out);
            cur.pop();
        }
        rec(pos + 1, n, left, cur, out);
    }
    rec(1, n, m, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Largest `p` with `eta(p) = eta(p+1)`.
fn last_repeat(eta: &[usize]) -> Option<usize> {
    (0..eta.len().saturating_sub(1)).rev().find(|&p| eta[p] == eta[p + 1])
}

/// `eta = eta' ∘ η_p` with `p` the largest repeat; returns `(p, eta')`.
pub fn peel(eta: &[usize]) -> Option<(usize, Surj)> {
    let p = last_repeat(eta)?;
    let mut rest = eta.to_vec();
    rest.remove(p + 1);
    Some((p, rest))
}

/// Apply `S(eta)` to a cell of `S_m`, one degeneracy at a time.
pub fn apply_degeneracy(s: &TruncSimplicialASet, eta: &[usize], cell: usize) -> usize {
    match peel(eta) {
        None => cell,
        Some((p, rest)) => {
            let inner = apply_degeneracy(s, &rest, cell);
            let lvl = rest.len() - 1;
            s.degens[lvl][p][inner]
        }
    }
}

fn surj_name(eta: &[usize], cell: &str) -> String {
    let mut name = String::new();
    let mut e = eta.to_vec();
    while let Some((p, rest)) = peel(&e) {
        name.push_str(&format!("s{p}"));
        e = rest;
    }
    format!("{name}({cell})")
}

/// `K C` truncated at `top`, with the index of every `(η, c)` cell.
#[derive(Clone, Debug)]
pub struct DoldKan {
    pub simplicial: TruncSimplicialASet,
    /// `cells[n]` lists `(eta, c)` for each nonzero point of `K_n` in order.
    pub cells: Vec<Vec<(Surj, usize)>>,
}

impl DoldKan {
    pub fn index(&self, n: usize, eta: &[usize], c: usize) -> usize {
        if c == 0 {
            return 0;
        }
        1 + self.cells[n].iter().position(|(e, x)| e == eta && *x == c).expect("cell of K")
    }

    /// Position of the nondegenerate copy of `C_n`.
    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        let id: Surj = (0..=n).collect();
        let size = self.cells[n].iter().filter(|(e, _)| *e == id).count() + 1;
        (0..size).map(|c| self.index(n, &id, c)).collect()
    }
}

/// Apply the face `X(ε')` for the injection with image `img` to a cell of `C_m`; faces
/// for missing vertices are applied largest first.
fn face_of_cell(c: &DaComplex, m: usize, img: &[usize], mut cell: usize) -> (usize, usize) {
    let missing: Vec<usize> = (0..=m).filter(|v| !img.contains(v)).collect();
    let mut lvl = m;
    for &v in missing.iter().rev() {
        if cell == 0 {
            break;
        }
        let (r, s) = c.maps(lvl as i64);
        cell = if v == lvl {
            r[cell]
        } else if v + 1 == lvl {
            s[cell]
        } else {
            0
        };
        lvl -= 1;
    }
    (m - missing.len(), cell)
}

/// Inverse Dold-Kan: split simplicial A-set with nondegenerate `n`-cells `C_n`.
pub fn dold_kan_k(c: &DaComplex, top: usize) -> Result<DoldKan> {
    if c.low < 0 && c.levels.iter().take((-c.low) as usize).any(|x| x.len() > 1) {
        return Err(Error::Invalid("complex must vanish in negative degrees".into()));
    }
    if !c.is_reduced() {
        return Err(Error::NotReduced("sr and ss must vanish".into()));
    }
    if c.high() > top as i64 && (top as i64 + 1..=c.high()).any(|n| c.size(n) > 1) {
        return Err(Error::TruncationTooLow { need: c.high() as usize, got: top });
    }
    let base = c.base.clone();
    let zero = ASet::zero(base.clone());
    let lv = |m: usize| c.level(m as i64).unwrap_or(&zero);
    let mut cells: Vec<Vec<(Surj, usize)>> = Vec::new();
    let mut levels = Vec::new();
    for n in 0..=top {
        let mut parts: Vec<ASet> = Vec::new();
        let mut list = Vec::new();
        for m in (0..=n).rev() {
            let cm = lv(m);
            if cm.len() <= 1 {
                continue;
            }
            for eta in surjections(n, m) {
                let mut part = cm.clone();
                part.names = cm.names.iter().map(|x| if eta.iter().enumerate().all(|(i, &v)| i == v) { x.clone() } else { surj_name(&eta, x) }).collect();
                for x in 1..cm.len() {
                    list.push((eta.clone(), x));
                }
                parts.push(part);
            }
        }
        let lvl = if parts.is_empty() { zero.clone() } else { wedge_all(&parts.iter().collect::<Vec<_>>()) };
        levels.push(lvl.named(format!("K{n}")));
        cells.push(list);
    }
    let mut dk = DoldKan { simplicial: TruncSimplicialASet { base, levels, faces: vec![], degens: vec![] }, cells };
    let mut faces = vec![vec![]];
    for n in 1..=top {
        let mut fs = Vec::new();
        for i in 0..=n {
            let mut map = vec![0; dk.simplicial.levels[n].len()];
            for (k, (eta, x)) in dk.cells[n].iter().enumerate() {
                let m = eta[n];
                // eta ∘ ε_i : [n-1] -> [m]
                let comp: Vec<usize> = (0..n).map(|j| eta[if j < i { j } else { j + 1 }]).collect();
                let mut img = comp.clone();
                img.dedup();
                let (m2, y) = face_of_cell(c, m, &img, *x);
                let eta2: Surj = comp.iter().map(|v| img.iter().position(|w| w == v).unwrap()).collect();
                debug_assert_eq!(*eta2.last().unwrap(), m2);
                map[k + 1] = dk.index(n - 1, &eta2, y);
            }
            fs.push(map);
        }
        faces.push(fs);
    }
    let mut degens = Vec::new();
    for n in 0..=top {
        let mut ds = Vec::new();
        if n < top {
            for i in 0..=n {
                let mut map = vec![0; dk.simplicial.levels[n].len()];
                for (k, (eta, x)) in dk.cells[n].iter().enumerate() {
                    // eta ∘ η_i : [n+1] -> [m]
                    let comp: Surj = (0..=n + 1).map(|j| eta[if j <= i { j } else { j - 1 }]).collect();
                    map[k + 1] = dk.index(n + 1, &comp, *x);
                }
                ds.push(map);
            }
        }
        degens.push(ds);
    }
    dk.simplicial.faces = faces;
    dk.simplicial.degens = degens;
    Ok(dk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homological::complex::multiplication_complex;
    use crate::monoid::truncated;
    use std::sync::Arc;

    #[test]
    fn surjection_counts() {
        assert_eq!(surjections(3, 1).len(), 3);
        assert_eq!(surjections(4, 2).len(), 6);
        assert_eq!(surjections(2, 2), vec![vec![0, 1, 2]]);
        assert_eq!(peel(&[0, 0, 1, 1]), Some((2, vec![0, 0, 1])));
    }

    #[test]
    fn k_of_multiplication_complex() {
        let a = Arc::new(truncated(3));
        let r = ASet::regular(a.clone());
        let xa = a.index_of("x").unwrap();
        let c = multiplication_complex(&r, xa);
        let dk = dold_kan_k(&c, 3).unwrap();
        let s = &dk.simplicial;
        assert!(s.violations().is_empty(), "{:?}", s.violations());
        // nondegenerate 1-cells: d0 = 0, d1 = a.x
        let nd = dk.nondegenerate(1);
        for y in 1..r.len() {
            assert_eq!(s.faces[1][0][nd[y]], 0);
            let ay = r.act(xa, y);
            assert_eq!(s.faces[1][1][nd[y]], dk.index(0, &[0], ay));
        }
        let n = moore(s);
        assert!(n.complex.is_reduced());
        assert!(n.complex.violations().is_empty());
    }

    #[test]
    fn constant_is_simplicial() {
        let a = Arc::new(truncated(2));
        let s = TruncSimplicialASet::constant(&ASet::regular(a), 3);
        assert!(s.violations().is_empty());
        let n = moore(&s).complex;
        assert_eq!(n.homology(0).aset.len(), 3);
    }
}
