//! Projective A-sets, ranks, and the groups K₀, K₁, G₀.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::aset::{canonical_form, enumerate_asubsets, hom_search, is_isomorphic, wedge_all, ASet, SearchOpts};
use crate::error::{Error, Result};
use crate::linalg::{abelian_invariants_from_counts, AbelianGroup, Cokernel, Matrix};
use crate::monoid::FiniteMonoid;
use crate::spectra::{is_ideal, mspec, Prime};

fn finite(x: &ASet) -> Result<&Arc<FiniteMonoid>> {
    x.monoid().ok_or_else(|| Error::UnsupportedBackend("needs a finite base monoid".into()))
}

/// The cyclic A-set `Ae`.
pub fn principal(a: &Arc<FiniteMonoid>, e: usize) -> ASet {
    let r = ASet::regular(a.clone());
    let (s, _) = r.subset(&r.orbit(e)).expect("orbits are closed");
    s.named(format!("{}{}", a.name, if e == a.one() { String::new() } else { format!("·{}", a.elements[e]) }))
}

/// `{(b, c) : b x = c x}` as a vector of class labels on `A`.
fn annihilator_kernel(a: &FiniteMonoid, act: impl Fn(usize) -> usize) -> Vec<usize> {
    let vals: Vec<usize> = (0..a.len()).map(act).collect();
    let mut first = BTreeMap::new();
    vals.iter().enumerate().map(|(b, &v)| *first.entry(v).or_insert(b)).collect()
}

/// Idempotents `e` with `P = ∨ Ae`, one per wedge summand.
pub fn decompose_projective(x: &ASet) -> Result<Vec<usize>> {
    let a = finite(x)?;
    let gens = x.generators();
    let mut covered = vec![false; x.len()];
    let mut out = Vec::new();
    for &g in &gens {
        for y in x.orbit(g) {
            if y != 0 {
                if covered[y] {
                    return Err(Error::NotProjective(format!("orbits of {} and another generator meet at {}", x.names[g], x.names[y])));
                }
                covered[y] = true;
            }
        }
        let kx = annihilator_kernel(a, |b| x.act(b, g));
        let e = a.idempotents().into_iter().find(|&e| e != 0 && annihilator_kernel(a, |b| a.mul(b, e)) == kx);
        match e {
            Some(e) => out.push(e),
            None => return Err(Error::NotProjective(format!("{}{} is not of the form Ae", a.name, x.names[g]))),
        }
    }
    out.sort();
    Ok(out)
}

/// Oracle: `X` is projective exactly when the counit `A[gens] -> X` has a section.
pub fn projective_by_section(x: &ASet) -> Result<bool> {
    let a = finite(x)?;
    let gens = x.generators();
    let names: Vec<String> = gens.iter().map(|&g| x.names[g].clone()).collect();
    let free = ASet::free(a.clone(), &names);
    let mut counit = vec![0; free.len()];
    for (s, &g) in gens.iter().enumerate() {
        for b in 1..a.len() {
            counit[ASet::free_index(a, b, s)] = x.act(b, g);
        }
    }
    let filter = |s: usize, t: usize| counit[t] == s;
    let mut found = false;
    hom_search(x, &free, &SearchOpts { injective: false, filter: Some(&filter) }, &mut |_| {
        found = true;
        false
    });
    Ok(found)
}

/// `rk_p X`: nonzero orbits of `X ⊗ Quot(A/p)`.
pub fn rank(x: &ASet, p: &[usize]) -> Result<usize> {
    let a = finite(x)?;
    let in_p: Vec<bool> = (0..a.len()).map(|e| p.binary_search(&e).is_ok()).collect();
    let s: Vec<usize> = (1..a.len()).filter(|&e| !in_p[e]).collect();
    // X / pX
    let mut px = vec![false; x.len()];
    px[0] = true;
    for &e in p {
        for y in 0..x.len() {
            px[x.act(e, y)] = true;
        }
    }
    let live: Vec<bool> = (0..x.len()).map(|y| !px[y] && s.iter().all(|&t| !px[x.act(t, y)])).collect();
    let mut uf = crate::util::UnionFind::new(x.len());
    for y in 0..x.len() {
        if live[y] {
            for &t in &s {
                uf.union(y, x.act(t, y));
            }
        }
    }
    let roots: HashSet<usize> = (0..x.len()).filter(|&y| live[y]).map(|y| uf.find(y)).collect();
    Ok(roots.len())
}

/// Ranks at every prime, in `mspec` order.
pub fn rank_vector(x: &ASet) -> Result<Vec<(Prime, usize)>> {
    let a = finite(x)?;
    mspec(a).into_iter().map(|p| rank(x, &p.elements).map(|r| (p, r))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub by_rank: bool,
    pub by_search: bool,
}

pub fn projectives_isomorphic(p: &ASet, q: &ASet) -> Result<IsoReport> {
    decompose_projective(p)?;
    decompose_projective(q)?;
    let rp: Vec<usize> = rank_vector(p)?.into_iter().map(|(_, r)| r).collect();
    let rq: Vec<usize> = rank_vector(q)?.into_iter().map(|(_, r)| r).collect();
    Ok(IsoReport { by_rank: rp == rq, by_search: is_isomorphic(p, q) })
}

/// `K₀(A) = Z[E]` with basis the nonzero idempotents.
#[derive(Clone, Debug, Serialize)]
pub struct K0 {
    pub group: AbelianGroup,
    pub basis: Vec<String>,
    /// `table[i][j]` is the basis index of `e_i e_j`.
    pub table: Vec<Vec<usize>>,
    pub unit: usize,
}

pub fn k0(a: &FiniteMonoid) -> K0 {
    let idem: Vec<usize> = a.idempotents().into_iter().filter(|&e| e != 0).collect();
    let pos = |e: usize| idem.iter().position(|&f| f == e).unwrap();
    let table = idem.iter().map(|&e| idem.iter().map(|&f| pos(a.mul(e, f))).collect()).collect();
    K0 {
        group: AbelianGroup::free(idem.len()),
        basis: idem.iter().map(|&e| a.elements[e].clone()).collect(),
        table,
        unit: pos(a.one()),
    }
}

/// Class of a projective in `K₀`, as multiplicities on the basis.
pub fn k0_class(p: &ASet) -> Result<Vec<i64>> {
    let a = finite(p)?;
    let idem: Vec<usize> = a.idempotents().into_iter().filter(|&e| e != 0).collect();
    let mut v = vec![0; idem.len()];
    for e in decompose_projective(p)? {
        v[idem.iter().position(|&f| f == e).unwrap()] += 1;
    }
    Ok(v)
}

fn cyclic_orders(a: &FiniteMonoid) -> AbelianGroup {
    let units = a.units();
    let one = a.one();
    abelian_invariants_from_counts(units.len(), |m| units.iter().filter(|&&u| a.pow(u, m) == one).count())
}

/// `K₁(A) = A^× × Z/2`.
pub fn k1(a: &FiniteMonoid) -> AbelianGroup {
    cyclic_orders(a).direct_sum(&AbelianGroup::cyclic(2))
}

/// Units of `A` as an abelian group.
pub fn unit_group(a: &FiniteMonoid) -> AbelianGroup {
    cyclic_orders(a)
}

type Perm = Vec<u16>;

fn compose(p: &Perm, q: &Perm) -> Perm {
    q.iter().map(|&i| p[i as usize]).collect()
}

fn inverse(p: &Perm) -> Perm {
    let mut inv = vec![0u16; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j as usize] = i as u16;
    }
    inv
}

fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Abelianization of `Aut(∨ⁿ A)`, by listing every automorphism.
pub fn aut_wedge_abelianization(a: &Arc<FiniteMonoid>, n: usize) -> Result<AbelianGroup> {
    if n == 0 {
        return Ok(AbelianGroup::trivial());
    }
    let r = ASet::regular(a.clone());
    let parts: Vec<&ASet> = (0..n).map(|_| &r).collect();
    let w = wedge_all(&parts);
    let units = a.units();
    let m = a.len() - 1;
    let total = (units.len() as f64).powi(n as i32) * (1..=n).product::<usize>() as f64;
    if total > 200_000.0 {
        return Err(Error::CapExceeded(format!("{total} automorphisms")));
    }
    let pt = |i: usize, e: usize| if e == 0 { 0 } else { 1 + i * m + (e - 1) };
    let mut group = Vec::new();
    for sigma in perms(n) {
        let mut us = vec![0usize; n];
        loop {
            let mut p = vec![0u16; w.len()];
            for i in 0..n {
                for e in 1..a.len() {
                    p[pt(i, e)] = pt(sigma[i], a.mul(units[us[i]], e)) as u16;
                }
            }
            debug_assert!(crate::aset::is_hom(&w, &w, &p.iter().map(|&v| v as usize).collect::<Vec<_>>()));
            group.push(p);
            let mut k = 0;
            while k < n {
                us[k] += 1;
                if us[k] < units.len() {
                    break;
                }
                us[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    let mut h: HashSet<Perm> = HashSet::new();
    for g in &group {
        for k in &group {
            h.insert(compose(&compose(g, k), &compose(&inverse(g), &inverse(k))));
        }
    }
    let mut frontier: Vec<Perm> = h.iter().cloned().collect();
    let gens = frontier.clone();
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = compose(&x, g);
            if h.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let order = group.len() / h.len();
    let id: Perm = (0..w.len() as u16).collect();
    let count = |k: usize| {
        group
            .iter()
            .filter(|g| {
                let mut x = id.clone();
                for _ in 0..k {
                    x = compose(&x, g);
                }
                h.contains(&x)
            })
            .count()
            / h.len()
    };
    Ok(abelian_invariants_from_counts(order, count))
}

/// A presentation of `G₀` restricted to a finite universe of A-sets.
#[derive(Clone, Debug, Serialize)]
pub struct G0 {
    pub group: AbelianGroup,
    pub classes: Vec<String>,
    pub sizes: Vec<usize>,
    /// One row per admissible exact sequence `[X] - [X'] - [X/X']`.
    pub relations: Vec<Vec<i64>>,
    pub universe_hash: String,
    #[serde(skip)]
    pub members: Vec<ASet>,
    #[serde(skip)]
    keys: Vec<Vec<Vec<usize>>>,
    #[serde(skip)]
    coker: Option<Cokernel>,
}

impl G0 {
    pub fn index_of(&self, x: &ASet) -> Option<usize> {
        let k = canonical_form(x);
        (0..self.keys.len()).find(|&i| self.sizes[i] == x.len() && self.keys[i] == k)
    }

    /// Class of an integer combination of universe members.
    pub fn class_of(&self, v: &[i64]) -> Vec<i64> {
        self.coker.as_ref().expect("built by g0").class_of(v)
    }

    pub fn vector(&self, terms: &[(i64, &ASet)]) -> Option<Vec<i64>> {
        let mut v = vec![0; self.members.len()];
        for (c, x) in terms {
            v[self.index_of(x)?] += c;
        }
        Some(v)
    }

    pub fn holds(&self, terms: &[(i64, &ASet)]) -> Option<bool> {
        let v = self.vector(terms)?;
        Some(self.coker.as_ref().unwrap().is_zero(&v))
    }
}

fn key(x: &ASet) -> (usize, Vec<Vec<usize>>) {
    (x.len(), canonical_form(x))
}

/// Close `universe` under A-subsets and quotients, then impose one relation per sequence
/// `0 -> X' -> X -> X/X' -> 0`.
pub fn g0(universe: &[ASet], middle_bound: usize) -> Result<G0> {
    let base = match universe.first() {
        Some(x) => x.base.clone(),
        None => return Err(Error::Invalid("empty universe".into())),
    };
    if universe.iter().any(|x| x.base != base) {
        return Err(Error::Invalid("universe mixes base monoids".into()));
    }
    let mut members: Vec<ASet> = Vec::new();
    let mut index: BTreeMap<(usize, Vec<Vec<usize>>), usize> = BTreeMap::new();
    let mut add = |x: ASet, members: &mut Vec<ASet>| -> Result<usize> {
        if x.len() > middle_bound.max(1) {
            return Err(Error::BoundExceeded(format!("{} has {} > {middle_bound} points", x.name, x.len())));
        }
        let k = key(&x);
        if let Some(&i) = index.get(&k) {
            return Ok(i);
        }
        index.insert(k, members.len());
        members.push(x);
        Ok(members.len() - 1)
    };
    add(ASet::zero(base.clone()), &mut members)?;
    for x in universe {
        add(x.clone(), &mut members)?;
    }
    let mut relations = Vec::new();
    let mut i = 0;
    while i < members.len() {
        let x = members[i].clone();
        for sub in enumerate_asubsets(&x, middle_bound.max(1))? {
            let (xs, _) = x.subset(&sub)?;
            let (xq, _) = x.collapse(&sub)?;
            let a = add(xs, &mut members)?;
            let b = add(xq, &mut members)?;
            relations.push((i, a, b));
        }
        i += 1;
    }
    let n = members.len();
    let mut rows = Vec::new();
    for &(x, a, b) in &relations {
        let mut r = vec![0i64; n];
        r[x] += 1;
        r[a] -= 1;
        r[b] -= 1;
        if r.iter().any(|&c| c != 0) && !rows.contains(&r) {
            rows.push(r);
        }
    }
    let mut m = Matrix::zeros(n, rows.len());
    for (j, r) in rows.iter().enumerate() {
        for (i, &c) in r.iter().enumerate() {
            m.set(i, j, c);
        }
    }
    let coker = Cokernel::new(&m);
    let keys: Vec<(usize, Vec<Vec<usize>>)> = members.iter().map(key).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    let mut h = Sha256::new();
    h.update(base.name().as_bytes());
    for k in &sorted {
        h.update(serde_json::to_vec(k).unwrap());
    }
    let universe_hash = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
    Ok(G0 {
        group: coker.group.clone(),
        classes: members.iter().map(|x| x.name.clone()).collect(),
        sizes: members.iter().map(|x| x.len()).collect(),
        relations: rows,
        universe_hash,
        keys: keys.into_iter().map(|k| k.1).collect(),
        members,
        coker: Some(coker),
    })
}

/// Every A-set with at most `n` points, up to isomorphism.
pub fn universe_up_to(a: &Arc<FiniteMonoid>, n: usize) -> Result<Vec<ASet>> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(crate::aset::enumerate_asets(a, k)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct DevissageReport {
    pub nilpotency: usize,
    /// Sizes of `IⁱX`.
    pub filtration: Vec<usize>,
    /// Each layer is killed by `I`.
    pub layers_over_quotient: bool,
    pub identity_holds: bool,
    #[serde(skip)]
    pub layers: Vec<ASet>,
}

/// `I^k X` as an element list.
fn power_action(x: &ASet, i: &[usize], k: usize) -> Vec<usize> {
    let mut cur: Vec<usize> = (0..x.len()).collect();
    for _ in 0..k {
        let mut next: Vec<usize> = i.iter().flat_map(|&e| cur.iter().map(move |&y| (e, y))).map(|(e, y)| x.act(e, y)).collect();
        next.push(0);
        next.sort();
        next.dedup();
        cur = next;
    }
    cur
}

pub fn nilpotency_index(a: &FiniteMonoid, i: &[usize]) -> Result<usize> {
    let r = ASet::regular(Arc::new(a.clone()));
    for k in 1..=a.len() {
        if power_action(&r, i, k) == [0] {
            return Ok(k);
        }
    }
    Err(Error::NotNilpotent(crate::spectra::ideal_label(a, i)))
}

/// Check `[X] = Σ [IⁱX / Iⁱ⁺¹X]` in `G₀` of the universe generated by `X` and its layers.
pub fn devissage_check(x: &ASet, i: &[usize], extra: &[ASet]) -> Result<DevissageReport> {
    let a = finite(x)?.clone();
    if !is_ideal(&a, i) {
        return Err(Error::NotAnIdeal(format!("{i:?}")));
    }
    let n = nilpotency_index(&a, i)?;
    let mut filtration = Vec::new();
    let mut layers = Vec::new();
    let mut over = true;
    for k in 0..n {
        let big = power_action(x, i, k);
        let small = power_action(x, i, k + 1);
        filtration.push(big.len());
        let (xb, pos) = x.subset(&big)?;
        let inner: Vec<usize> = small.iter().map(|s| pos.binary_search(s).unwrap()).collect();
        let (layer, _) = xb.collapse(&inner)?;
        over &= i.iter().all(|&e| (0..layer.len()).all(|y| layer.act(e, y) == 0));
        layers.push(layer.named(format!("I^{k}X/I^{}X", k + 1)));
    }
    filtration.push(1);
    let mut uni = vec![x.clone()];
    uni.extend(layers.iter().cloned());
    uni.extend(extra.iter().cloned());
    let bound = uni.iter().map(|y| y.len()).max().unwrap_or(1);
    let g = g0(&uni, bound)?;
    let mut terms = vec![(1i64, x)];
    terms.extend(layers.iter().map(|l| (-1i64, l)));
    let identity_holds = g.holds(&terms).unwrap_or(false);
    Ok(DevissageReport { nilpotency: n, filtration, layers_over_quotient: over, identity_holds, layers })
}

/// `Ae ⊗ Af`: decompose and compare with `{ef}`.
pub fn tensor_of_principals(a: &Arc<FiniteMonoid>, e: usize, f: usize) -> Result<Vec<usize>> {
    let t = principal(a, e).tensor(&principal(a, f));
    decompose_projective(&t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{presented, truncated, pointed_cyclic};

    fn idem2() -> Arc<FiniteMonoid> {
        Arc::new(presented("idem2", &["x", "y"], &["x^2=x", "y^2=y"]))
    }

    #[test]
    fn principal_idempotent_summand() {
        let a = idem2();
        let x = a.index_of("x").unwrap();
        let ax = principal(&a, x);
        assert_eq!(decompose_projective(&ax).unwrap(), vec![x]);
        assert!(projective_by_section(&ax).unwrap());
        let r: Vec<usize> = rank_vector(&ax).unwrap().into_iter().map(|(_, r)| r).collect();
        assert_eq!(r, vec![1, 0, 1, 0]);
    }

    #[test]
    fn glued_copies_not_projective() {
        let a = Arc::new(truncated(3));
        let r = ASet::regular(a.clone());
        let w = r.wedge(&r);
        let x2 = a.index_of("x^2").unwrap();
        let p = w.congruence_closure(&[(x2, a.len() - 1 + x2)]);
        let (q, _) = w.quotient(&p).unwrap();
        assert!(decompose_projective(&q).is_err());
        assert!(!projective_by_section(&q).unwrap());
    }

    #[test]
    fn k_groups() {
        let a = idem2();
        let k = k0(&a);
        assert_eq!(k.group, AbelianGroup::free(4));
        assert_eq!(k1(&FiniteMonoid::f1()).to_string(), "Z/2");
        let c3 = Arc::new(pointed_cyclic(3));
        assert_eq!(k1(&c3), AbelianGroup { free_rank: 0, torsion: vec![6] });
        assert_eq!(aut_wedge_abelianization(&c3, 1).unwrap(), unit_group(&c3));
        assert_eq!(aut_wedge_abelianization(&c3, 2).unwrap(), k1(&c3));
    }

    #[test]
    fn g0_of_pointed_sets() {
        let f1 = Arc::new(FiniteMonoid::f1());
        let g = g0(&universe_up_to(&f1, 5).unwrap(), 5).unwrap();
        assert_eq!(g.group, AbelianGroup::free(1));
    }

    #[test]
    fn g0_of_cyclic_group_on_cosets() {
        let c3 = Arc::new(pointed_cyclic(3));
        let point = ASet::new("pt", crate::aset::Base::Finite(c3.clone()), vec!["0".into(), "p".into()], vec![vec![0, 1]]).unwrap();
        let g = g0(&[ASet::regular(c3), point], 5).unwrap();
        assert_eq!(g.group, AbelianGroup::free(2));
    }

    #[test]
    fn devissage_truncated() {
        let a = Arc::new(truncated(3));
        let i = crate::spectra::parse_ideal(&a, "x").unwrap();
        let rep = devissage_check(&ASet::regular(a.clone()), &i, &[]).unwrap();
        assert_eq!(rep.nilpotency, 3);
        assert!(rep.layers_over_quotient && rep.identity_holds);
    }
}
