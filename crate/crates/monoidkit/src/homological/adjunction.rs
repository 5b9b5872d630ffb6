use serde::Serialize;

use super::simplicial::{apply_degeneracy, dold_kan_k, moore, DoldKan, MooreComplex, TruncSimplicialASet};
use super::DaComplex;
use crate::aset::{hom_search, ASet, SearchOpts};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionReport {
    /// `|Hom(KC, S)|`, enumerated directly.
    pub simplicial_maps: usize,
    /// `|Hom(C, NS)|`, enumerated directly.
    pub complex_maps: usize,
    pub phi_lands: bool,
    pub psi_lands: bool,
    pub psi_phi_is_identity: bool,
    pub phi_psi_is_identity: bool,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.simplicial_maps == self.complex_maps && self.phi_lands && self.psi_lands && self.psi_phi_is_identity && self.phi_psi_is_identity
    }
}

type LevelMaps = Vec<Vec<usize>>;

/// Every levelwise family of A-set maps, level by level, that `ok(n, x, t)` allows.
fn enumerate_levels(src: &[ASet], dst: &[ASet], cap: usize, ok: &dyn Fn(&[Vec<usize>], usize, usize, usize) -> bool) -> Result<Vec<LevelMaps>> {
    let mut out = Vec::new();
    let mut cur: LevelMaps = Vec::new();
    fn rec(n: usize, src: &[ASet], dst: &[ASet], cap: usize, cur: &mut LevelMaps, out: &mut Vec<LevelMaps>, ok: &dyn Fn(&[Vec<usize>], usize, usize, usize) -> bool) -> Result<()> {
        if n == src.len() {
            if out.len() >= cap {
                return Err(Error::CapExceeded(format!("more than {cap} maps")));
            }
            out.push(cur.clone());
            return Ok(());
        }
        let mut found = Vec::new();
        {
            let prev: &[Vec<usize>] = cur;
            let filter = |x: usize, t: usize| ok(prev, n, x, t);
            hom_search(&src[n], &dst[n], &SearchOpts { injective: false, filter: Some(&filter) }, &mut |m| {
                found.push(m.to_vec());
                found.len() <= cap
            });
        }
        for m in found {
            cur.push(m);
            rec(n + 1, src, dst, cap, cur, out, ok)?;
            cur.pop();
        }
        Ok(())
    }
    rec(0, src, dst, cap, &mut cur, &mut out, ok)?;
    Ok(out)
}

/// Simplicial maps `KC -> S`, searched on all cells.
pub fn simplicial_homs(k: &TruncSimplicialASet, s: &TruncSimplicialASet, cap: usize) -> Result<Vec<LevelMaps>> {
    let ok = |prev: &[Vec<usize>], n: usize, x: usize, t: usize| {
        if n == 0 {
            return true;
        }
        let f = &prev[n - 1];
        (0..=n).all(|i| s.faces[n][i][t] == f[k.faces[n][i][x]])
            && (0..n).all(|i| {
                // x = s_i y forces t = s_i f(y)
                (0..k.levels[n - 1].len()).filter(|&y| k.degens[n - 1][i][y] == x).all(|y| s.degens[n - 1][i][f[y]] == t)
            })
    };
    enumerate_levels(&k.levels, &s.levels, cap, &ok)
}

/// Complex maps `C -> NS` on degrees `0..=top`.
pub fn complex_homs(c: &DaComplex, n_s: &DaComplex, top: usize, cap: usize) -> Result<Vec<LevelMaps>> {
    let zero = ASet::zero(c.base.clone());
    let src: Vec<ASet> = (0..=top).map(|n| c.level(n as i64).cloned().unwrap_or_else(|| zero.clone())).collect();
    let dst: Vec<ASet> = (0..=top).map(|n| n_s.level(n as i64).cloned().unwrap_or_else(|| zero.clone())).collect();
    let ok = |prev: &[Vec<usize>], n: usize, x: usize, t: usize| {
        if n == 0 {
            return true;
        }
        let g = &prev[n - 1];
        let (rc, sc) = c.maps(n as i64);
        let (rn, sn) = n_s.maps(n as i64);
        let (rx, sx) = if src[n].len() == 1 { (0, 0) } else { (rc[x], sc[x]) };
        rn[t] == g[rx] && sn[t] == g[sx]
    };
    enumerate_levels(&src, &dst, cap, &ok)
}

/// `Φ(f)`: restrict to the nondegenerate cells, landing in `NS`.
pub fn phi(dk: &DoldKan, ns: &MooreComplex, f: &LevelMaps) -> Option<LevelMaps> {
    let top = dk.simplicial.top();
    (0..=top)
        .map(|n| {
            let nd = dk.nondegenerate(n);
            nd.iter().map(|&k| ns.embed[n].iter().position(|&e| e == f[n][k])).collect::<Option<Vec<usize>>>()
        })
        .collect()
}

/// `Ψ(g)`: `(η, c) ↦ S(η)(g(c))`.
pub fn psi(dk: &DoldKan, s: &TruncSimplicialASet, ns: &MooreComplex, g: &LevelMaps) -> LevelMaps {
    let top = dk.simplicial.top();
    (0..=top)
        .map(|n| {
            let mut m = vec![0; dk.simplicial.levels[n].len()];
            for (k, (eta, c)) in dk.cells[n].iter().enumerate() {
                let lvl = eta[n];
                let cell = ns.embed[lvl][g[lvl][*c]];
                m[k + 1] = apply_degeneracy(s, eta, cell);
            }
            m
        })
        .collect()
}

/// Check that `Φ` and `Ψ` are mutually inverse bijections `Hom(KC, S) ≅ Hom(C, NS)`.
pub fn adjunction_check(c: &DaComplex, s: &TruncSimplicialASet, cap: usize) -> Result<AdjunctionReport> {
    let top = s.top();
    let bound = c.high().max(0) as usize;
    if (0..c.levels.len()).any(|k| c.low + k as i64 > top as i64 && c.levels[k].len() > 1) {
        return Err(Error::TruncationTooLow { need: bound, got: top });
    }
    let v = s.violations();
    if !v.is_empty() {
        return Err(Error::Invalid(v.join("; ")));
    }
    let dk = dold_kan_k(c, top)?;
    let ns = moore(s);
    let left = simplicial_homs(&dk.simplicial, s, cap)?;
    let right = complex_homs(c, &ns.complex, top, cap)?;
    let mut phi_lands = true;
    let mut psi_phi = true;
    for f in &left {
        match phi(&dk, &ns, f) {
            Some(g) => {
                phi_lands &= right.contains(&g);
                psi_phi &= psi(&dk, s, &ns, &g) == *f;
            }
            None => {
                phi_lands = false;
                psi_phi = false;
            }
        }
    }
    let mut psi_lands = true;
    let mut phi_psi = true;
    for g in &right {
        let f = psi(&dk, s, &ns, g);
        psi_lands &= dk.simplicial.is_morphism_to(s, &f) && left.contains(&f);
        phi_psi &= phi(&dk, &ns, &f).as_ref() == Some(g);
    }
    Ok(AdjunctionReport {
        simplicial_maps: left.len(),
        complex_maps: right.len(),
        phi_lands,
        psi_lands,
        psi_phi_is_identity: psi_phi,
        phi_psi_is_identity: phi_psi,
    })
}

/// The counit `KNS -> S` is a simplicial morphism.
pub fn counit_is_simplicial(s: &TruncSimplicialASet) -> Result<bool> {
    let ns = moore(s);
    let dk = dold_kan_k(&ns.complex, s.top())?;
    let id: LevelMaps = ns.complex.levels.iter().map(|x| (0..x.len()).collect()).collect();
    let eps = psi(&dk, s, &ns, &id);
    Ok(dk.simplicial.is_morphism_to(s, &eps))
}

/// The unit `C -> NKC` is a levelwise injection commuting with the boundaries.
pub fn unit_is_injective(c: &DaComplex, top: usize) -> Result<bool> {
    let dk = dold_kan_k(c, top)?;
    let nk = moore(&dk.simplicial);
    for n in 0..=top {
        let nd = dk.nondegenerate(n);
        let Some(pos) = nd.iter().map(|&k| nk.embed[n].iter().position(|&e| e == k)).collect::<Option<Vec<usize>>>() else {
            return Ok(false);
        };
        let mut sorted = pos.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != pos.len() {
            return Ok(false);
        }
        if n > 0 {
            let (rc, sc) = c.maps(n as i64);
            let (rn, sn) = nk.complex.maps(n as i64);
            let prev: Vec<usize> = dk.nondegenerate(n - 1).iter().map(|&k| nk.embed[n - 1].iter().position(|&e| e == k).unwrap()).collect();
            for x in 0..pos.len() {
                let (cr, cs) = if pos.len() == 1 { (0, 0) } else { (rc[x], sc[x]) };
                if rn[pos[x]] != prev[cr] || sn[pos[x]] != prev[cs] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homological::complex::multiplication_complex;
    use crate::monoid::truncated;
    use std::sync::Arc;

    #[test]
    fn k_of_c_against_itself() {
        let a = Arc::new(truncated(2));
        let r = ASet::regular(a.clone());
        let c = multiplication_complex(&r, a.index_of("x").unwrap());
        let s = dold_kan_k(&c, 2).unwrap().simplicial;
        let rep = adjunction_check(&c, &s, 10_000).unwrap();
        assert!(rep.holds(), "{rep:?}");
        assert!(rep.simplicial_maps > 1);
        assert!(counit_is_simplicial(&s).unwrap());
        assert!(unit_is_injective(&c, 2).unwrap());
    }
}
