//! Ideals, prime spectra and primary decomposition of finite monoids.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;

/// An ideal as a sorted list of element indices; always contains 0.
pub type Ideal = Vec<usize>;

pub fn ideal_generated(m: &FiniteMonoid, gens: &[usize]) -> Ideal {
    let mut seen = vec![false; m.len()];
    seen[0] = true;
    for &g in gens {
        for a in 0..m.len() {
            seen[m.mul(a, g)] = true;
        }
    }
    (0..m.len()).filter(|&i| seen[i]).collect()
}

pub fn is_ideal(m: &FiniteMonoid, set: &[usize]) -> bool {
    let mut mem = vec![false; m.len()];
    for &i in set {
        if i >= m.len() {
            return false;
        }
        mem[i] = true;
    }
    mem[0] && set.iter().all(|&i| (0..m.len()).all(|a| mem[m.mul(a, i)]))
}

/// Sort, dedupe, add 0 and check closure.
pub fn check_ideal(m: &FiniteMonoid, set: &[usize]) -> Result<Ideal> {
    let mut s: BTreeSet<usize> = set.iter().copied().collect();
    s.insert(0);
    let s: Ideal = s.into_iter().collect();
    if !is_ideal(m, &s) {
        let names: Vec<&str> = s.iter().filter(|&&i| i < m.len()).map(|&i| m.name_of(i)).collect();
        return Err(Error::NotAnIdeal(format!("{{{}}}", names.join(","))));
    }
    Ok(s)
}

/// Parse a comma separated list of generators or elements into the ideal they generate.
pub fn parse_ideal(m: &FiniteMonoid, spec: &str) -> Result<Ideal> {
    let mut gens = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        gens.push(m.parse_element(part)?);
    }
    Ok(ideal_generated(m, &gens))
}

pub fn is_proper(m: &FiniteMonoid, i: &[usize]) -> bool {
    m.len() > 1 && !i.contains(&m.one())
}

pub fn is_prime(m: &FiniteMonoid, i: &[usize]) -> bool {
    if !is_proper(m, i) {
        return false;
    }
    let mem = membership(m, i);
    (0..m.len()).all(|a| mem[a] || (0..m.len()).all(|b| mem[b] || !mem[m.mul(a, b)]))
}

/// Every zero divisor of `A/I` is nilpotent there.
pub fn is_primary(m: &FiniteMonoid, i: &[usize]) -> bool {
    if !is_proper(m, i) {
        return false;
    }
    let mem = membership(m, i);
    let nil_mod = |a: usize| mem[m.pow(a, m.len())];
    (0..m.len()).all(|a| mem[a] || nil_mod(a) || (0..m.len()).all(|b| mem[b] || !mem[m.mul(a, b)]))
}

fn membership(m: &FiniteMonoid, i: &[usize]) -> Vec<bool> {
    let mut mem = vec![false; m.len()];
    for &x in i {
        mem[x] = true;
    }
    mem
}

pub fn radical(m: &FiniteMonoid, i: &[usize]) -> Ideal {
    let mem = membership(m, i);
    (0..m.len()).filter(|&a| mem[m.pow(a, m.len())]).collect()
}

/// `(J : I) = {a : aI ⊆ J}`.
pub fn ideal_quotient(m: &FiniteMonoid, j: &[usize], i: &[usize]) -> Ideal {
    let mem = membership(m, j);
    (0..m.len()).filter(|&a| i.iter().all(|&b| mem[m.mul(a, b)])).collect()
}

pub fn annihilator(m: &FiniteMonoid, x: usize) -> Ideal {
    ideal_quotient(m, &[0], &[x])
}

pub fn intersect(a: &[usize], b: &[usize]) -> Ideal {
    let bs: HashSet<usize> = b.iter().copied().collect();
    a.iter().copied().filter(|x| bs.contains(x)).collect()
}

/// Greedy minimal generators of an ideal in element order.
pub fn ideal_generators(m: &FiniteMonoid, i: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut cur = vec![0usize];
    for &a in i {
        if a != 0 && !cur.contains(&a) {
            gens.push(a);
            cur = ideal_generated(m, &gens);
        }
    }
    gens
}

/// `(x,y)` style label; `(0)` for the zero ideal.
pub fn ideal_label(m: &FiniteMonoid, i: &[usize]) -> String {
    let g = ideal_generators(m, i);
    if g.is_empty() {
        "(0)".into()
    } else {
        format!("({})", g.iter().map(|&a| m.name_of(a)).collect::<Vec<_>>().join(","))
    }
}

/// A prime ideal together with the generators it contains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime {
    pub generators: Vec<usize>,
    pub elements: Ideal,
}

impl Prime {
    pub fn label(&self, m: &FiniteMonoid) -> String {
        if self.generators.is_empty() {
            "(0)".into()
        } else {
            format!("({})", self.generators.iter().map(|&g| m.name_of(g)).collect::<Vec<_>>().join(","))
        }
    }
}

/// Prime ideals, found among ideals generated by sets of generators.
pub fn mspec(m: &FiniteMonoid) -> Vec<Prime> {
    let k = m.generators.len();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << k) {
        let gens: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| m.generators[i]).collect();
        let id = ideal_generated(m, &gens);
        if is_prime(m, &id) && seen.insert(id.clone()) {
            let pg: Vec<usize> = m.generators.iter().copied().filter(|g| id.contains(g)).collect();
            out.push(Prime { generators: pg, elements: id });
        }
    }
    out.sort_by(|a, b| (a.generators.len(), &a.generators).cmp(&(b.generators.len(), &b.generators)));
    out
}

/// Prime ideals by scanning every ideal.
pub fn mspec_exhaustive(m: &FiniteMonoid) -> Vec<Ideal> {
    let mut v: Vec<Ideal> = all_ideals(m).into_iter().filter(|i| is_prime(m, i)).collect();
    v.sort();
    v
}

/// Every ideal, as unions of principal ideals.
pub fn all_ideals(m: &FiniteMonoid) -> Vec<Ideal> {
    let principal: Vec<Ideal> = (0..m.len()).map(|a| ideal_generated(m, &[a])).collect();
    let mut seen: HashSet<Ideal> = HashSet::new();
    let start: Ideal = vec![0];
    seen.insert(start.clone());
    let mut q = VecDeque::from([start]);
    while let Some(i) = q.pop_front() {
        for p in &principal {
            let mut u: BTreeSet<usize> = i.iter().copied().collect();
            u.extend(p.iter().copied());
            let u: Ideal = u.into_iter().collect();
            if seen.insert(u.clone()) {
                q.push_back(u);
            }
        }
    }
    let mut v: Vec<Ideal> = seen.into_iter().collect();
    v.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    v
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Length of the longest chain of primes.
pub fn dimension(m: &FiniteMonoid) -> usize {
    let ps = mspec(m);
    (0..ps.len()).map(|i| chain_below(&ps, i)).max().unwrap_or(0)
}

/// Length of the longest chain of primes ending at `p`.
pub fn height(m: &FiniteMonoid, p: &[usize]) -> usize {
    let ps = mspec(m);
    ps.iter().position(|q| q.elements == p).map(|i| chain_below(&ps, i)).unwrap_or(0)
}

fn chain_below(ps: &[Prime], i: usize) -> usize {
    ps.iter()
        .enumerate()
        .filter(|(j, q)| *j != i && q.elements.len() < ps[i].elements.len() && subset(&q.elements, &ps[i].elements))
        .map(|(j, _)| 1 + chain_below(ps, j))
        .max()
        .unwrap_or(0)
}

/// Intersection of all primes; equals the set of nilpotents.
pub fn nilradical(m: &FiniteMonoid) -> Ideal {
    let ps = mspec(m);
    let mut cur: Ideal = (0..m.len()).collect();
    for p in ps {
        cur = intersect(&cur, &p.elements);
    }
    cur
}

fn upper_covers(m: &FiniteMonoid, i: &[usize]) -> Vec<Ideal> {
    let mut cands: Vec<Ideal> = Vec::new();
    for a in 0..m.len() {
        if i.binary_search(&a).is_ok() {
            continue;
        }
        let mut u: BTreeSet<usize> = i.iter().copied().collect();
        u.extend(ideal_generated(m, &[a]));
        let u: Ideal = u.into_iter().collect();
        if !cands.contains(&u) {
            cands.push(u);
        }
    }
    let minimal: Vec<Ideal> = cands.iter().filter(|c| !cands.iter().any(|d| d.len() < c.len() && subset(d, c))).cloned().collect();
    minimal
}

pub fn is_irreducible(m: &FiniteMonoid, i: &[usize]) -> bool {
    is_proper(m, i) && upper_covers(m, i).len() <= 1
}

fn canonical_cmp(a: &Ideal, b: &Ideal) -> std::cmp::Ordering {
    (a.len(), a).cmp(&(b.len(), b))
}

/// Irredundant decomposition of `i` into irreducible (hence primary) ideals.
pub fn primary_decomposition(m: &FiniteMonoid, i: &[usize]) -> Result<Vec<Ideal>> {
    let i = check_ideal(m, i)?;
    if !is_proper(m, &i) {
        return Err(Error::ImproperIdeal);
    }
    let mut comps: Vec<Ideal> = Vec::new();
    let mut stack = vec![i.clone()];
    let mut seen = HashSet::new();
    while let Some(j) = stack.pop() {
        if !seen.insert(j.clone()) {
            continue;
        }
        let covers = upper_covers(m, &j);
        if covers.len() <= 1 {
            comps.push(j);
        } else {
            stack.extend(covers);
        }
    }
    comps.sort_by(canonical_cmp);
    comps.dedup();
    // drop redundant components, largest first
    let all: Ideal = (0..m.len()).collect();
    let mut k = comps.len();
    while k > 0 {
        k -= 1;
        if comps.len() == 1 {
            break;
        }
        let rest = comps.iter().enumerate().filter(|(t, _)| *t != k).fold(all.clone(), |acc, (_, c)| intersect(&acc, c));
        if rest == i {
            comps.remove(k);
        }
    }
    Ok(comps)
}

/// Associated primes computed two ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedPrimes {
    /// Radicals of the primary components.
    pub from_decomposition: Vec<Ideal>,
    /// Primes of the form `(I : a)`.
    pub from_quotients: Vec<Ideal>,
}

impl AssociatedPrimes {
    pub fn agree(&self) -> bool {
        self.from_decomposition == self.from_quotients
    }
}

pub fn associated_primes(m: &FiniteMonoid, i: &[usize]) -> Result<AssociatedPrimes> {
    let comps = primary_decomposition(m, i)?;
    let mut from_decomposition: Vec<Ideal> = comps.iter().map(|c| radical(m, c)).collect();
    from_decomposition.sort_by(canonical_cmp);
    from_decomposition.dedup();
    let i = check_ideal(m, i)?;
    let mut from_quotients: Vec<Ideal> = (0..m.len())
        .filter(|a| i.binary_search(a).is_err())
        .map(|a| ideal_quotient(m, &i, &[a]))
        .filter(|q| is_prime(m, q))
        .collect();
    from_quotients.sort_by(canonical_cmp);
    from_quotients.dedup();
    Ok(AssociatedPrimes { from_decomposition, from_quotients })
}

/// Write an ideal `K` of `A ^ B` as a union of products `I ^ J` with distinct `I`.
///
/// Returns pairs `(I, J)` of ideals of `A` and `B`.
pub fn tensor_ideal_decomposition(a: &FiniteMonoid, b: &FiniteMonoid, ab: &FiniteMonoid, k: &[usize]) -> Vec<(Ideal, Ideal)> {
    let idx = |x: usize, y: usize| -> usize {
        if x == 0 || y == 0 {
            0
        } else {
            1 + (x - 1) * (b.len() - 1) + (y - 1)
        }
    };
    debug_assert_eq!(ab.len(), 1 + (a.len() - 1) * (b.len() - 1));
    let mem: HashSet<usize> = k.iter().copied().collect();
    let mut out: Vec<(Ideal, Ideal)> = Vec::new();
    for x in 1..a.len() {
        let j: Ideal = (0..b.len()).filter(|&y| mem.contains(&idx(x, y))).collect();
        if j.len() <= 1 {
            continue;
        }
        let i = ideal_generated(a, &[x]);
        match out.iter_mut().find(|(ii, _)| *ii == i) {
            Some((_, jj)) => {
                let mut u: BTreeSet<usize> = jj.iter().copied().collect();
                u.extend(j);
                *jj = u.into_iter().collect();
            }
            None => out.push((i, j)),
        }
    }
    out
}

/// Elements of `A ^ B` covered by a family of products `I ^ J`.
pub fn union_of_products(a: &FiniteMonoid, b: &FiniteMonoid, parts: &[(Ideal, Ideal)]) -> Ideal {
    let mut s = BTreeSet::from([0usize]);
    for (i, j) in parts {
        for &x in i {
            for &y in j {
                if x != 0 && y != 0 {
                    s.insert(1 + (x - 1) * (b.len() - 1) + (y - 1));
                }
            }
        }
    }
    let _ = a;
    s.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{presented, truncated};

    #[test]
    fn idem2_has_four_primes() {
        let m = presented("idem2", &["x", "y"], &["x^2=x", "y^2=y"]);
        let labels: Vec<String> = mspec(&m).iter().map(|p| p.label(&m)).collect();
        assert_eq!(labels, vec!["(0)", "(x)", "(y)", "(x,y)"]);
        assert_eq!(dimension(&m), 2);
    }

    #[test]
    fn truncated_cube_is_primary_at_zero() {
        let m = truncated(3);
        let d = primary_decomposition(&m, &[0]).unwrap();
        assert_eq!(d, vec![vec![0]]);
        assert_eq!(nilradical(&m), m.nilpotents());
    }

    #[test]
    fn product_ideal_splits() {
        let m = presented("q", &["x", "y"], &["x^3=0", "y^3=0"]);
        let xy = parse_ideal(&m, "xy").unwrap();
        let d = primary_decomposition(&m, &xy).unwrap();
        let labels: Vec<String> = d.iter().map(|c| ideal_label(&m, c)).collect();
        assert_eq!(labels, vec!["(x)", "(y)"]);
        let ap = associated_primes(&m, &xy).unwrap();
        assert!(ap.agree());
    }
}
