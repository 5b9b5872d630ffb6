use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::DaComplex;
use crate::aset::{ASet, Base};
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;
use crate::util::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Cover the whole kernel pair by its off-diagonal generators.
    Naive,
    /// Cover a generating set of the kernel-pair congruence.
    Minimized,
    /// `s_n = 0` for `n >= 2`, covering `ker r ∩ ker s`.
    Reduced,
}

#[derive(Clone, Copy, Debug)]
pub struct ResolveOpts {
    pub length: usize,
    /// Largest allowed carrier of a level or kernel pair.
    pub size_cap: usize,
    /// Fail instead of returning an incomplete resolution.
    pub strict: bool,
}

impl Default for ResolveOpts {
    fn default() -> Self {
        ResolveOpts { length: 3, size_cap: 200_000, strict: false }
    }
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub complex: DaComplex,
    /// `P_0 -> X`.
    pub augmentation: Vec<usize>,
    /// The next level would be zero.
    pub complete: bool,
    pub flavor: Flavor,
}

impl Resolution {
    /// Degrees `>= 1` whose homology the construction determines.
    pub fn checked_degrees(&self) -> std::ops::RangeInclusive<i64> {
        let top = self.complex.high();
        1..=if self.complete { top } else { top - 1 }
    }
}

fn finite(x: &ASet) -> Result<Arc<FiniteMonoid>> {
    x.monoid().cloned().ok_or_else(|| Error::UnsupportedBackend("free A-sets over an infinite monoid are not finite; use resolve_monogenic".into()))
}

/// Free A-set on `gens.len()` generators with `r, s` sending generator `i` to `gens[i]`.
fn cover(a: &Arc<FiniteMonoid>, level: usize, lower: &ASet, gens: &[(usize, usize)]) -> (ASet, Vec<usize>, Vec<usize>) {
    let names: Vec<String> = (0..gens.len()).map(|i| format!("e{level}_{i}")).collect();
    let p = ASet::free(a.clone(), &names).named(format!("P{level}"));
    let mut r = vec![0; p.len()];
    let mut s = vec![0; p.len()];
    for (i, &(u, v)) in gens.iter().enumerate() {
        for b in 1..a.len() {
            let e = ASet::free_index(a, b, i);
            r[e] = lower.act(b, u);
            s[e] = lower.act(b, v);
        }
    }
    (p, r, s)
}

/// Off-diagonal generators of the kernel pair `{(u, v) : h(u) = h(v)}`.
fn kernel_pair_generators(p: &ASet, h: &[u64], cap: usize) -> Result<Vec<(usize, usize)>> {
    let mut fibers: HashMap<u64, Vec<usize>> = HashMap::new();
    for (e, &v) in h.iter().enumerate() {
        fibers.entry(v).or_default().push(e);
    }
    let size: usize = fibers.values().map(|f| f.len() * f.len()).sum();
    if size > cap {
        return Err(Error::CapExceeded(format!("kernel pair of {} has {size} points", p.name)));
    }
    let mut pairs = vec![(0usize, 0usize)];
    let mut keys: Vec<&u64> = fibers.keys().collect();
    keys.sort();
    for k in keys {
        for &u in &fibers[k] {
            for &v in &fibers[k] {
                if (u, v) != (0, 0) {
                    pairs.push((u, v));
                }
            }
        }
    }
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &pq)| (pq, i)).collect();
    let gen_act = p.gen_act.iter().map(|m| pairs.iter().map(|&(u, v)| index[&(m[u], m[v])]).collect()).collect();
    let names = (0..pairs.len()).map(|i| i.to_string()).collect();
    let r = ASet::trusted("R", p.base.clone(), names, gen_act);
    Ok(r.generators().into_iter().map(|i| pairs[i]).filter(|&(u, v)| u != v).collect())
}

/// Pairs `(fiber minimum, v)` needed to generate the kernel-pair congruence, smallest first.
fn congruence_generators(p: &ASet, h: &[u64]) -> Vec<(usize, usize)> {
    let mut first: HashMap<u64, usize> = HashMap::new();
    let mut uf = UnionFind::new(p.len());
    let mut out = Vec::new();
    for (v, &hv) in h.iter().enumerate() {
        let m = *first.entry(hv).or_insert(v);
        if m == v || uf.same(m, v) {
            continue;
        }
        out.push((m, v));
        let mut q = vec![(m, v)];
        while let Some((x, y)) = q.pop() {
            if uf.union(x, y) {
                for g in &p.gen_act {
                    q.push((g[x], g[y]));
                }
            }
        }
    }
    out
}

fn key(r: usize, s: usize) -> u64 {
    ((r as u64) << 32) | s as u64
}

pub fn resolve(x: &ASet, flavor: Flavor, opts: ResolveOpts) -> Result<Resolution> {
    let a = finite(x)?;
    let gens = x.generators();
    let gnames: Vec<String> = gens.iter().map(|&g| x.names[g].clone()).collect();
    let p0 = ASet::free(a.clone(), &gnames).named("P0");
    let mut eps = vec![0; p0.len()];
    for (i, &g) in gens.iter().enumerate() {
        for b in 1..a.len() {
            eps[ASet::free_index(&a, b, i)] = x.act(b, g);
        }
    }
    let base = x.base.clone();
    let mut levels = vec![p0];
    let mut rs = vec![vec![0; levels[0].len()]];
    let mut ss = rs.clone();
    let mut complete = false;
    loop {
        let n = levels.len() - 1;
        let top = &levels[n];
        let h: Vec<u64> = if n == 0 { eps.iter().map(|&e| e as u64).collect() } else { (0..top.len()).map(|e| key(rs[n][e], ss[n][e])).collect() };
        if levels.len() > opts.length && flavor != Flavor::Reduced {
            let mut seen = std::collections::HashSet::new();
            complete = h.iter().all(|&v| seen.insert(v));
            break;
        }
        let pairs: Vec<(usize, usize)> = match (flavor, n) {
            (Flavor::Naive, _) => kernel_pair_generators(top, &h, opts.size_cap)?,
            (Flavor::Minimized, _) | (Flavor::Reduced, 0) => congruence_generators(top, &h),
            (Flavor::Reduced, _) => {
                let kernel: Vec<usize> = (0..top.len()).filter(|&e| h[e] == 0).collect();
                let (k, pos) = top.subset(&kernel)?;
                k.generators().into_iter().map(|i| (pos[i], 0)).collect()
            }
        };
        if pairs.is_empty() {
            complete = true;
            break;
        }
        if levels.len() > opts.length {
            break;
        }
        let size = pairs.len() * (a.len() - 1) + 1;
        if size > opts.size_cap {
            return Err(Error::CapExceeded(format!("level {} would have {size} points", n + 1)));
        }
        let (p, r, s) = cover(&a, n + 1, top, &pairs);
        levels.push(p);
        rs.push(r);
        ss.push(s);
    }
    if opts.strict && !complete {
        return Err(Error::CapExceeded(format!("resolution of {} does not terminate within length {}", x.name, opts.length)));
    }
    Ok(Resolution { complex: DaComplex::trusted(base, 0, levels, rs, ss), augmentation: eps, complete, flavor })
}

/// A free resolution over `F1[t]`: generators of `X`, one relation per generator of `P_1`.
#[derive(Clone, Debug, Serialize)]
pub struct MonogenicResolution {
    /// Names of the generators of `P_0`.
    pub generators: Vec<String>,
    /// `(r, s)` images of the generators of `P_1`; `None` is the base point, `(k, i)` is `t^k[g_i]`.
    pub relations: Vec<(Option<(u32, usize)>, Option<(u32, usize)>)>,
    /// `P_1 -> P_0 × P_0` is injective, so `P_2 = 0`.
    pub complete: bool,
    pub window: u32,
}

impl MonogenicResolution {
    pub fn describe(&self) -> Vec<String> {
        let show = |m: &Option<(u32, usize)>| match m {
            None => "0".to_string(),
            Some((0, i)) => format!("[{}]", self.generators[*i]),
            Some((1, i)) => format!("t[{}]", self.generators[*i]),
            Some((k, i)) => format!("t^{k}[{}]", self.generators[*i]),
        };
        self.relations.iter().map(|(u, v)| format!("({}, {})", show(u), show(v))).collect()
    }
}

type Mono = Option<(u32, usize)>;

fn mono_eval(x: &ASet, gens: &[usize], m: Mono) -> usize {
    match m {
        None => 0,
        Some((k, i)) => x.act_pow(k as usize, gens[i]),
    }
}

/// Closure of `rels` on monomials of degree `<= w`; returns whether it matches the fibres of `ε`.
fn window_matches(x: &ASet, gens: &[usize], rels: &[(Mono, Mono)], w: u32) -> bool {
    let per = (w + 1) as usize;
    let idx = |m: Mono| match m {
        None => 0,
        Some((k, i)) => 1 + i * per + k as usize,
    };
    let n = 1 + gens.len() * per;
    let shift = |m: Mono| match m {
        None => None,
        Some((k, i)) => (k < w).then_some(Some((k + 1, i))),
    };
    let mut uf = UnionFind::new(n);
    let mut q: Vec<(Mono, Mono)> = rels.iter().filter(|(u, v)| u.is_none_or(|(k, _)| k <= w) && v.is_none_or(|(k, _)| k <= w)).copied().collect();
    while let Some((u, v)) = q.pop() {
        if uf.union(idx(u), idx(v)) {
            if let (Some(su), Some(sv)) = (shift(u), shift(v)) {
                q.push((su, sv));
            } else if u.is_none() || v.is_none() {
                let (z, m) = if u.is_none() { (u, v) } else { (v, u) };
                if let Some(sm) = shift(m) {
                    q.push((z, sm));
                }
            }
        }
    }
    let monos: Vec<Mono> = std::iter::once(None).chain((0..gens.len()).flat_map(|i| (0..=w).map(move |k| Some((k, i))))).collect();
    for &u in &monos {
        for &v in &monos {
            let same = mono_eval(x, gens, u) == mono_eval(x, gens, v);
            if same != uf.same(idx(u), idx(v)) {
                return false;
            }
        }
    }
    true
}

/// Minimized resolution of a finite `F1[t]`-set.
pub fn resolve_monogenic(x: &ASet) -> Result<MonogenicResolution> {
    if x.base != Base::Monogenic {
        return Err(Error::UnsupportedBackend("resolve_monogenic needs a set over F1[t]".into()));
    }
    let gens = x.generators();
    let w = 2 * x.len() as u32 + 2;
    let mut rels: Vec<(Mono, Mono)> = Vec::new();
    let mut first: HashMap<usize, Mono> = HashMap::new();
    first.insert(0, None);
    let per = (w + 1) as usize;
    let idx = |m: Mono| match m {
        None => 0,
        Some((k, i)) => 1 + i * per + k as usize,
    };
    let mut uf = UnionFind::new(1 + gens.len() * per);
    for k in 0..=w {
        for i in 0..gens.len() {
            let m = Some((k, i));
            let v = mono_eval(x, &gens, m);
            let f = *first.entry(v).or_insert(m);
            if f == m || uf.same(idx(f), idx(m)) {
                continue;
            }
            rels.push((f, m));
            let mut q = vec![(f, m)];
            while let Some((u, v)) = q.pop() {
                if uf.union(idx(u), idx(v)) {
                    let sh = |m: Mono| match m {
                        None => Some(None),
                        Some((k, i)) => (k < w).then_some(Some((k + 1, i))),
                    };
                    if let (Some(su), Some(sv)) = (sh(u), sh(v)) {
                        q.push((su, sv));
                    }
                }
            }
        }
    }
    // injectivity of P_1 -> P_0 × P_0: no relation is a shift of another
    let shifted = |a: &(Mono, Mono), b: &(Mono, Mono)| {
        let d = |u: Mono, v: Mono| match (u, v) {
            (None, None) => Some(None),
            (Some((k, i)), Some((l, j))) if i == j && l >= k => Some(Some(l - k)),
            _ => None,
        };
        match (d(a.0, b.0), d(a.1, b.1)) {
            (Some(x), Some(y)) => x.is_none() || y.is_none() || x == y,
            _ => false,
        }
    };
    let complete = (0..rels.len()).all(|i| (0..rels.len()).all(|j| i == j || !shifted(&rels[i], &rels[j])));
    Ok(MonogenicResolution { generators: gens.iter().map(|&g| x.names[g].clone()).collect(), relations: rels, complete, window: w })
}

/// Oracle for [`resolve_monogenic`]: the relations cut out exactly the fibres of `ε` on a doubled window.
pub fn verify_monogenic(x: &ASet, res: &MonogenicResolution) -> bool {
    let gens = x.generators();
    window_matches(x, &gens, &res.relations, 2 * res.window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aset::is_isomorphic;
    use crate::monoid::truncated;

    #[test]
    fn quotient_by_power_of_x() {
        // A/x^2 A over F1[t]
        let x = ASet::new("A/x^2", Base::Monogenic, vec!["0".into(), "1".into(), "x".into()], vec![vec![0, 2, 0]]).unwrap();
        let r = resolve_monogenic(&x).unwrap();
        assert_eq!(r.describe(), vec!["(0, t^2[1])"]);
        assert!(r.complete && verify_monogenic(&x, &r));
    }

    #[test]
    fn flavors_agree_on_truncated() {
        let a = Arc::new(truncated(3));
        let r = ASet::regular(a.clone());
        let (x, _) = r.collapse(&r.orbit(a.index_of("x^2").unwrap())).unwrap();
        for fl in [Flavor::Naive, Flavor::Minimized, Flavor::Reduced] {
            let res = resolve(&x, fl, ResolveOpts { length: 2, ..Default::default() }).unwrap();
            let c = &res.complex;
            assert!(c.violations().is_empty(), "{fl:?}: {:?}", c.violations());
            assert!(is_isomorphic(&c.homology(0).aset, &x));
            assert!(c.exact_in(res.checked_degrees()), "{fl:?}");
            if fl == Flavor::Reduced {
                assert!(c.is_reduced() || c.levels.len() < 3);
            }
        }
    }

    #[test]
    fn free_is_its_own_resolution() {
        let a = Arc::new(truncated(2));
        let r = ASet::regular(a);
        let res = resolve(&r, Flavor::Minimized, ResolveOpts::default()).unwrap();
        assert!(res.complete);
        assert_eq!(res.complex.levels.len(), 1);
    }
}
