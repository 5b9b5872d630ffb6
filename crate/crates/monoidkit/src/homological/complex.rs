use crate::aset::{is_hom, ASet, Base};
use crate::error::{Error, Result};

/// A double-arrow complex `... ⇉ X_n ⇉ X_{n-1} ⇉ ...`, zero outside `low..low+len`.
///
/// `r[k], s[k]` go from `levels[k]` (degree `low + k`) to `levels[k-1]`; `r[0], s[0]` are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct DaComplex {
    pub base: Base,
    pub low: i64,
    pub levels: Vec<ASet>,
    pub r: Vec<Vec<usize>>,
    pub s: Vec<Vec<usize>>,
}

/// Homology at one degree, with the representatives it came from.
#[derive(Clone, Debug)]
pub struct Homology {
    pub aset: ASet,
    /// A representative in `X_n` for each point.
    pub reps: Vec<usize>,
    /// Class in `coeq(r_{n+1}, s_{n+1})` of each point of `X_n`.
    pub class_of: Vec<usize>,
    /// Point of `H_n` for each class, or `None` outside the kernels.
    pub point_of_class: Vec<Option<usize>>,
}

impl DaComplex {
    pub fn new(base: Base, low: i64, levels: Vec<ASet>, r: Vec<Vec<usize>>, s: Vec<Vec<usize>>) -> Result<Self> {
        let c = DaComplex { base, low, levels, r, s };
        let v = c.violations();
        if v.is_empty() {
            Ok(c)
        } else {
            Err(Error::NotAComplex(v.join("; ")))
        }
    }

    pub(crate) fn trusted(base: Base, low: i64, levels: Vec<ASet>, r: Vec<Vec<usize>>, s: Vec<Vec<usize>>) -> Self {
        DaComplex { base, low, levels, r, s }
    }

    pub fn zero(base: Base) -> Self {
        DaComplex { base, low: 0, levels: vec![], r: vec![], s: vec![] }
    }

    pub fn high(&self) -> i64 {
        self.low + self.levels.len() as i64 - 1
    }

    fn slot(&self, n: i64) -> Option<usize> {
        let k = n - self.low;
        (k >= 0 && (k as usize) < self.levels.len()).then_some(k as usize)
    }

    pub fn level(&self, n: i64) -> Option<&ASet> {
        self.slot(n).map(|k| &self.levels[k])
    }

    pub fn size(&self, n: i64) -> usize {
        self.level(n).map_or(1, |x| x.len())
    }

    /// `r_n, s_n : X_n -> X_{n-1}`; all zero where the source is zero.
    pub fn maps(&self, n: i64) -> (Vec<usize>, Vec<usize>) {
        match self.slot(n) {
            Some(k) if k > 0 => (self.r[k].clone(), self.s[k].clone()),
            Some(k) => (vec![0; self.levels[k].len()], vec![0; self.levels[k].len()]),
            None => (vec![0], vec![0]),
        }
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.r.len() != self.levels.len() || self.s.len() != self.levels.len() {
            out.push("one pair of boundary maps per level".into());
            return out;
        }
        for x in &self.levels {
            if x.base != self.base {
                out.push(format!("{} is over a different monoid", x.name));
            }
        }
        for k in 0..self.levels.len() {
            let n = self.low + k as i64;
            let x = &self.levels[k];
            for (nm, m) in [("r", &self.r[k]), ("s", &self.s[k])] {
                if k == 0 {
                    if m.len() != x.len() || m.iter().any(|&v| v != 0) {
                        out.push(format!("{nm}_{n} must be zero below the window"));
                    }
                } else if !is_hom(x, &self.levels[k - 1], m) {
                    out.push(format!("{nm}_{n} is not an A-set map"));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for k in 2..self.levels.len() {
            let n = self.low + k as i64;
            for y in 0..self.levels[k].len() {
                let (r1, s1) = (self.r[k][y], self.s[k][y]);
                if self.r[k - 1][r1] != self.r[k - 1][s1] {
                    out.push(format!("rr != rs at degree {n}, element {}", self.levels[k].names[y]));
                    break;
                }
                if self.s[k - 1][r1] != self.s[k - 1][s1] {
                    out.push(format!("sr != ss at degree {n}, element {}", self.levels[k].names[y]));
                    break;
                }
            }
        }
        out
    }

    /// `sr = ss = 0`.
    pub fn is_reduced(&self) -> bool {
        (2..self.levels.len()).all(|k| (0..self.levels[k].len()).all(|y| self.s[k - 1][self.r[k][y]] == 0 && self.s[k - 1][self.s[k][y]] == 0))
    }

    /// `ker(r̄_n) ∩ ker(s̄_n)` inside `coeq(r_{n+1}, s_{n+1})`.
    pub fn homology(&self, n: i64) -> Homology {
        let Some(x) = self.level(n) else {
            return Homology { aset: ASet::zero(self.base.clone()), reps: vec![0], class_of: vec![0], point_of_class: vec![Some(0)] };
        };
        let mut pairs = Vec::new();
        if let Some(k) = self.slot(n + 1) {
            for y in 0..self.levels[k].len() {
                pairs.push((self.r[k][y], self.s[k][y]));
            }
        }
        let p = x.congruence_closure(&pairs);
        let (r, s) = self.maps(n);
        let mut in_kernel = vec![true; p.count];
        for e in 0..x.len() {
            if r[e] != 0 || s[e] != 0 {
                in_kernel[p.class_of[e]] = false;
            }
        }
        let (q, _) = x.quotient(&p).expect("closure is a congruence");
        let keep: Vec<usize> = (0..p.count).filter(|&c| in_kernel[c]).collect();
        let (h, kept) = q.subset(&keep).expect("kernels are A-subsets");
        let reps_all = p.representatives();
        let mut point_of_class = vec![None; p.count];
        for (i, &c) in kept.iter().enumerate() {
            point_of_class[c] = Some(i);
        }
        Homology {
            aset: h.named(format!("H{n}")),
            reps: kept.iter().map(|&c| reps_all[c]).collect(),
            class_of: p.class_of,
            point_of_class,
        }
    }

    /// `X[p]_n = X_{n+p}`.
    pub fn translate(&self, p: i64) -> DaComplex {
        DaComplex { low: self.low - p, ..self.clone() }
    }

    /// Is every homology in `degrees` zero?
    pub fn exact_in(&self, degrees: impl IntoIterator<Item = i64>) -> bool {
        degrees.into_iter().all(|n| self.homology(n).aset.len() == 1)
    }
}

/// Levelwise maps `f_n : X_n -> Y_n` over the union of both windows.
#[derive(Clone, Debug)]
pub struct DaMorphism {
    pub low: i64,
    pub maps: Vec<Vec<usize>>,
}

impl DaMorphism {
    pub fn map(&self, n: i64) -> Vec<usize> {
        let k = n - self.low;
        if k >= 0 && (k as usize) < self.maps.len() {
            self.maps[k as usize].clone()
        } else {
            vec![0]
        }
    }

    pub fn identity(c: &DaComplex) -> Self {
        DaMorphism { low: c.low, maps: c.levels.iter().map(|x| (0..x.len()).collect()).collect() }
    }

    pub fn violations(&self, x: &DaComplex, y: &DaComplex) -> Vec<String> {
        let mut out = Vec::new();
        let lo = x.low.min(y.low);
        let hi = x.high().max(y.high());
        for n in lo..=hi {
            let f = self.map(n);
            if f.len() != x.size(n) || f.iter().any(|&v| v >= y.size(n)) {
                out.push(format!("f_{n} has the wrong shape"));
                continue;
            }
            if let (Some(a), Some(b)) = (x.level(n), y.level(n)) {
                if !is_hom(a, b, &f) {
                    out.push(format!("f_{n} is not an A-set map"));
                }
            } else if f.iter().any(|&v| v != 0) {
                out.push(format!("f_{n} must be zero"));
            }
            let g = self.map(n - 1);
            if g.len() != x.size(n - 1) {
                continue;
            }
            let (rx, sx) = x.maps(n);
            let (ry, sy) = y.maps(n);
            for e in 0..f.len() {
                let fe = f[e];
                if fe >= ry.len() || g.get(rx[e]).copied() != ry.get(fe).copied() || g.get(sx[e]).copied() != sy.get(fe).copied() {
                    out.push(format!("f does not commute with the boundary at degree {n}"));
                    break;
                }
            }
        }
        out
    }
}

/// `x ≠ x'` and `f(x) = f(x') ≠ 0` never happens.
pub fn is_admissible(f: &[usize]) -> bool {
    let mut seen = std::collections::HashSet::new();
    f.iter().filter(|&&v| v != 0).all(|&v| seen.insert(v))
}

/// The map `H_n(X) -> H_n(Y)` induced by `f`.
pub fn induced_homology_map(f: &DaMorphism, x: &DaComplex, y: &DaComplex, n: i64) -> Result<Vec<usize>> {
    let v = f.violations(x, y);
    if !v.is_empty() {
        return Err(Error::NotAComplex(v.join("; ")));
    }
    let hx = x.homology(n);
    let hy = y.homology(n);
    let fn_ = f.map(n);
    Ok(hx.reps.iter().map(|&e| hy.point_of_class[hy.class_of[fn_[e]]].expect("complex maps preserve cycles")).collect())
}

/// Every induced map is bijective in the given degrees.
pub fn is_quasi_isomorphism(f: &DaMorphism, x: &DaComplex, y: &DaComplex, degrees: impl IntoIterator<Item = i64>) -> Result<bool> {
    for n in degrees {
        let m = induced_homology_map(f, x, y, n)?;
        let mut seen = vec![false; y.homology(n).aset.len()];
        for &v in &m {
            if seen[v] {
                return Ok(false);
            }
            seen[v] = true;
        }
        if seen.iter().any(|&b| !b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `0 ⇉ X ⇉(a, 0) X`, degrees 1 and 0.
pub fn multiplication_complex(x: &ASet, a: usize) -> DaComplex {
    let n = x.len();
    let ax: Vec<usize> = (0..n).map(|e| x.act(a, e)).collect();
    DaComplex::trusted(x.base.clone(), 0, vec![x.clone(), x.clone()], vec![vec![0; n], ax], vec![vec![0; n], vec![0; n]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::truncated;
    use std::sync::Arc;

    #[test]
    fn zero_maps_give_levels() {
        let a = Arc::new(truncated(3));
        let r = ASet::regular(a);
        let n = r.len();
        let c = DaComplex::new(r.base.clone(), 0, vec![r.clone(), r.clone()], vec![vec![0; n]; 2], vec![vec![0; n]; 2]).unwrap();
        assert_eq!(c.homology(0).aset.len(), n);
        assert_eq!(c.homology(1).aset.len(), n);
        assert!(c.homology(2).aset.len() == 1);
        assert_eq!(c.translate(1).homology(0).aset.len(), n);
    }

    #[test]
    fn multiplication_by_x() {
        let a = Arc::new(truncated(3));
        let r = ASet::regular(a.clone());
        let c = multiplication_complex(&r, a.index_of("x").unwrap());
        assert!(c.violations().is_empty() && c.is_reduced());
        // A/xA = {0, 1}; kernel of x is {0, x^2}
        assert_eq!(c.homology(0).aset.len(), 2);
        assert_eq!(c.homology(1).aset.len(), 2);
        let id = DaMorphism::identity(&c);
        assert!(is_quasi_isomorphism(&id, &c, &c, 0..2).unwrap());
    }
}
