use std::collections::HashMap;

use super::ASet;
use crate::error::{Error, Result};

/// Options for [`hom_search`].
#[derive(Default)]
pub struct SearchOpts<'a> {
    pub injective: bool,
    /// `filter(x, y)` must hold whenever `x` is sent to `y`.
    pub filter: Option<&'a dyn Fn(usize, usize) -> bool>,
}

struct State {
    map: Vec<usize>,
    used: Vec<usize>,
    trail: Vec<usize>,
}

const FREE: usize = usize::MAX;

fn assign(st: &mut State, x: &ASet, y: &ASet, opts: &SearchOpts, a: usize, b: usize) -> bool {
    let mut stack = vec![(a, b)];
    while let Some((s, t)) = stack.pop() {
        if st.map[s] != FREE {
            if st.map[s] != t {
                return false;
            }
            continue;
        }
        if let Some(f) = opts.filter {
            if !f(s, t) {
                return false;
            }
        }
        if opts.injective {
            if st.used[t] != FREE && st.used[t] != s {
                return false;
            }
            st.used[t] = s;
        }
        st.map[s] = t;
        st.trail.push(s);
        for g in 0..x.gen_act.len() {
            stack.push((x.gen_act[g][s], y.gen_act[g][t]));
        }
    }
    true
}

fn undo(st: &mut State, to: usize, injective: bool) {
    while st.trail.len() > to {
        let s = st.trail.pop().unwrap();
        if injective {
            st.used[st.map[s]] = FREE;
        }
        st.map[s] = FREE;
    }
}

/// Visit every equivariant pointed map `x -> y` passing the options; stop when `visit` returns false.
pub fn hom_search(x: &ASet, y: &ASet, opts: &SearchOpts, visit: &mut dyn FnMut(&[usize]) -> bool) {
    assert!(x.base == y.base, "A-sets over different monoids");
    if opts.injective && x.len() > y.len() {
        return;
    }
    let gens = x.generators();
    let mut st = State { map: vec![FREE; x.len()], used: vec![FREE; y.len()], trail: Vec::new() };
    if !assign(&mut st, x, y, opts, 0, 0) {
        return;
    }
    rec(&mut st, x, y, opts, &gens, 0, visit);
}

fn rec(st: &mut State, x: &ASet, y: &ASet, opts: &SearchOpts, gens: &[usize], i: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if i == gens.len() {
        debug_assert!(st.map.iter().all(|&m| m != FREE));
        return visit(&st.map);
    }
    let g = gens[i];
    if st.map[g] != FREE {
        return rec(st, x, y, opts, gens, i + 1, visit);
    }
    let start = if opts.injective { 1 } else { 0 };
    for t in start..y.len() {
        let mark = st.trail.len();
        if assign(st, x, y, opts, g, t) && !rec(st, x, y, opts, gens, i + 1, visit) {
            undo(st, mark, opts.injective);
            return false;
        }
        undo(st, mark, opts.injective);
    }
    true
}

/// `Hom_A(X, Y)` with its A-set structure `(a f)(x) = a f(x)`.
#[derive(Clone, Debug)]
pub struct HomSet {
    pub maps: Vec<Vec<usize>>,
    pub aset: ASet,
}

pub fn hom_enumerate(x: &ASet, y: &ASet, cap: usize) -> Result<HomSet> {
    let mut maps = Vec::new();
    let mut over = false;
    hom_search(x, y, &SearchOpts::default(), &mut |m| {
        if maps.len() >= cap {
            over = true;
            return false;
        }
        maps.push(m.to_vec());
        true
    });
    if over {
        return Err(Error::CapExceeded(format!("more than {cap} maps {} -> {}", x.name, y.name)));
    }
    maps.sort();
    let index: HashMap<Vec<usize>, usize> = maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let gen_act = (0..y.gen_act.len())
        .map(|g| maps.iter().map(|f| index[&f.iter().map(|&v| y.gen_act[g][v]).collect::<Vec<_>>()]).collect())
        .collect();
    let names = maps.iter().map(|f| format!("[{}]", f.iter().map(|&v| y.names[v].as_str()).collect::<Vec<_>>().join(","))).collect();
    let aset = ASet::trusted(format!("Hom({},{})", x.name, y.name), x.base.clone(), names, gen_act);
    Ok(HomSet { maps, aset })
}

pub fn find_isomorphism(x: &ASet, y: &ASet) -> Option<Vec<usize>> {
    if x.len() != y.len() || x.base != y.base {
        return None;
    }
    let sx = x.signatures();
    let sy = y.signatures();
    let mut a = sx.clone();
    let mut b = sy.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let filter = |s: usize, t: usize| sx[s] == sy[t];
    let opts = SearchOpts { injective: true, filter: Some(&filter) };
    let mut found = None;
    hom_search(x, y, &opts, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

pub fn is_isomorphic(x: &ASet, y: &ASet) -> bool {
    find_isomorphism(x, y).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aset::is_hom;
    use crate::monoid::truncated;
    use std::sync::Arc;

    #[test]
    fn homs_from_regular_are_points() {
        let a = Arc::new(truncated(3));
        let r = ASet::regular(a.clone());
        let h = hom_enumerate(&r, &r, 1000).unwrap();
        // Hom(A, X) = X
        assert_eq!(h.maps.len(), r.len());
        for m in &h.maps {
            assert!(is_hom(&r, &r, m));
        }
        assert!(is_isomorphic(&h.aset, &r));
    }
}
