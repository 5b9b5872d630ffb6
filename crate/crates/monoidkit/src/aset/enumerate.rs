use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use super::{ASet, Base};
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;
use crate::util::Partition;

/// Every sub-A-set, as sorted element lists containing 0.
pub fn enumerate_asubsets(x: &ASet, bound: usize) -> Result<Vec<Vec<usize>>> {
    if x.len() > bound {
        return Err(Error::BoundExceeded(format!("{} has {} > {bound} points", x.name, x.len())));
    }
    let orbits: Vec<Vec<usize>> = (0..x.len()).map(|e| x.orbit(e)).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let start = vec![0usize];
    seen.insert(start.clone());
    let mut q = VecDeque::from([start]);
    while let Some(s) = q.pop_front() {
        for o in &orbits {
            let u: BTreeSet<usize> = s.iter().chain(o).copied().collect();
            let u: Vec<usize> = u.into_iter().collect();
            if seen.insert(u.clone()) {
                q.push_back(u);
            }
        }
    }
    let mut v: Vec<Vec<usize>> = seen.into_iter().collect();
    v.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(v)
}

/// Every congruence, via restricted growth strings.
pub fn enumerate_congruences(x: &ASet, bound: usize) -> Result<Vec<Partition>> {
    let n = x.len();
    if n > bound {
        return Err(Error::BoundExceeded(format!("{} has {n} > {bound} points", x.name)));
    }
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(i: usize, max: usize, labels: &mut Vec<usize>, x: &ASet, out: &mut Vec<Partition>) {
        if i == labels.len() {
            let p = Partition::from_labels(labels);
            if x.is_congruence(&p) {
                out.push(p);
            }
            return;
        }
        for l in 0..=max + 1 {
            labels[i] = l;
            rec(i + 1, max.max(l), labels, x, out);
        }
    }
    if n == 1 {
        return Ok(vec![Partition::discrete(1)]);
    }
    labels[0] = 0;
    rec(1, 0, &mut labels, x, &mut out);
    Ok(out)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    fn heap(n: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..n {
            heap(n - 1, p, out);
            if n % 2 == 0 {
                p.swap(i, n - 1);
            } else {
                p.swap(0, n - 1);
            }
        }
    }
    heap(k, &mut p, &mut out);
    out
}

/// Lexicographically least relabelling of the generator actions, over all permutations
/// fixing the base point.
pub fn canonical_form(x: &ASet) -> Vec<Vec<usize>> {
    let n = x.len();
    canonical_of(&x.gen_act, n, &permutations(n - 1))
}

fn canonical_of(gen_act: &[Vec<usize>], n: usize, perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut best: Option<Vec<Vec<usize>>> = None;
    for p in perms {
        // element e (>0) becomes p[e-1]+1
        let relabel = |e: usize| if e == 0 { 0 } else { p[e - 1] + 1 };
        let mut inv = vec![0; n];
        for e in 0..n {
            inv[relabel(e)] = e;
        }
        let cand: Vec<Vec<usize>> = gen_act.iter().map(|m| (0..n).map(|new| relabel(m[inv[new]])).collect()).collect();
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.unwrap_or_default()
}

/// All A-sets with `n` points, one per isomorphism class, in canonical order.
pub fn enumerate_asets(a: &Arc<FiniteMonoid>, n: usize) -> Result<Vec<ASet>> {
    if n == 0 {
        return Ok(vec![]);
    }
    if n > 7 {
        return Err(Error::BoundExceeded(format!("A-set enumeration limited to 7 points, asked for {n}")));
    }
    let k = a.generators.len();
    let maps = pointed_maps(n);
    let perms = permutations(n - 1);
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    let mut classes: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    fn rec(a: &FiniteMonoid, i: usize, k: usize, maps: &[Vec<usize>], chosen: &mut Vec<Vec<usize>>, n: usize, perms: &[Vec<usize>], classes: &mut BTreeSet<Vec<Vec<usize>>>) {
        if i == k {
            classes.insert(canonical_of(chosen, n, perms));
            return;
        }
        for m in maps {
            chosen.push(m.clone());
            if consistent(a, chosen, n) {
                rec(a, i + 1, k, maps, chosen, n, perms, classes);
            }
            chosen.pop();
        }
    }
    rec(a, 0, k, &maps, &mut chosen, n, &perms, &mut classes);
    let names: Vec<String> = (0..n).map(|i| if i == 0 { "0".to_string() } else { format!("e{i}") }).collect();
    let mut out = Vec::new();
    for (i, ga) in classes.into_iter().enumerate() {
        if let Ok(x) = ASet::new(format!("X{n}_{i}"), Base::Finite(a.clone()), names.clone(), ga) {
            out.push(x);
        }
    }
    Ok(out)
}

fn pointed_maps(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(i: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            cur[i] = v;
            rec(i + 1, n, cur, out);
        }
    }
    rec(1, n, &mut cur, &mut out);
    out
}

/// The action of the submonoid generated by the chosen generators is well defined.
fn consistent(a: &FiniteMonoid, chosen: &[Vec<usize>], n: usize) -> bool {
    let gens = &a.generators[..chosen.len()];
    let mut act: Vec<Option<Vec<usize>>> = vec![None; a.len()];
    let one = a.one();
    act[one] = Some((0..n).collect());
    let mut q = VecDeque::from([one]);
    while let Some(e) = q.pop_front() {
        let row = act[e].clone().unwrap();
        for (gi, &g) in gens.iter().enumerate() {
            let f = a.mul(e, g);
            let new: Vec<usize> = row.iter().map(|&x| chosen[gi][x]).collect();
            match &act[f] {
                Some(old) => {
                    if *old != new {
                        return false;
                    }
                }
                None => {
                    if f == 0 && new.iter().any(|&x| x != 0) {
                        return false;
                    }
                    act[f] = Some(new);
                    q.push_back(f);
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::truncated;

    #[test]
    fn asets_over_f1_are_pointed_sets() {
        let f1 = Arc::new(FiniteMonoid::f1());
        for n in 1..5 {
            assert_eq!(enumerate_asets(&f1, n).unwrap().len(), 1);
        }
    }

    #[test]
    fn asets_over_dual_numbers() {
        // F1[x]/(x^2) on 3 points: x acts by a nilpotent pointed map of index <= 2
        let a = Arc::new(truncated(2));
        let v = enumerate_asets(&a, 3).unwrap();
        // identity-free classes: x = 0, x swaps one point onto another
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn subsets_and_congruences() {
        let a = Arc::new(truncated(3));
        let r = ASet::regular(a);
        assert_eq!(enumerate_asubsets(&r, 8).unwrap().len(), 4);
        let c = enumerate_congruences(&r, 8).unwrap();
        assert!(c.iter().all(|p| r.is_congruence(p)));
    }
}
