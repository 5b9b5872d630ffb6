//! Pointed sets with a monoid action.

mod enumerate;
mod exact;
mod hom;

pub use enumerate::{canonical_form, enumerate_asets, enumerate_asubsets, enumerate_congruences};
pub use exact::{split_check, ExactSequence, SplitReport};
pub use hom::{find_isomorphism, hom_enumerate, hom_search, is_isomorphic, HomSet, SearchOpts};

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;
use crate::util::{Partition, UnionFind};

/// The monoid an A-set is acted on by.
#[derive(Clone, Debug)]
pub enum Base {
    Finite(Arc<FiniteMonoid>),
    /// `F1[t]`, acting through a single pointed endomorphism.
    Monogenic,
}

impl PartialEq for Base {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Base::Finite(a), Base::Finite(b)) => Arc::ptr_eq(a, b) || a == b,
            (Base::Monogenic, Base::Monogenic) => true,
            _ => false,
        }
    }
}

impl Base {
    pub fn finite(m: FiniteMonoid) -> Self {
        Base::Finite(Arc::new(m))
    }

    pub fn ngens(&self) -> usize {
        match self {
            Base::Finite(m) => m.generators.len(),
            Base::Monogenic => 1,
        }
    }

    pub fn gen_names(&self) -> Vec<String> {
        match self {
            Base::Finite(m) => m.generators.iter().map(|&g| m.elements[g].clone()).collect(),
            Base::Monogenic => vec!["t".into()],
        }
    }

    pub fn name(&self) -> String {
        match self {
            Base::Finite(m) => m.name.clone(),
            Base::Monogenic => "F1[t]".into(),
        }
    }

    pub fn as_finite(&self) -> Option<&Arc<FiniteMonoid>> {
        match self {
            Base::Finite(m) => Some(m),
            Base::Monogenic => None,
        }
    }
}

/// A finite pointed A-set; element 0 is the base point.
#[derive(Clone, Debug)]
pub struct ASet {
    pub name: String,
    pub base: Base,
    pub names: Vec<String>,
    /// Action of each monoid generator.
    pub gen_act: Vec<Vec<usize>>,
    /// Action of every monoid element, for finite bases.
    act: Vec<Vec<usize>>,
}

impl PartialEq for ASet {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.names == other.names && self.gen_act == other.gen_act
    }
}

fn unique_names(names: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(Error::Invalid(format!("duplicate element name '{n}'")));
        }
    }
    Ok(())
}

impl ASet {
    /// Validate and build from generator actions.
    pub fn new(name: impl Into<String>, base: Base, names: Vec<String>, gen_act: Vec<Vec<usize>>) -> Result<ASet> {
        let name = name.into();
        let n = names.len();
        if n == 0 {
            return Err(Error::Invalid(format!("{name}: an A-set needs a base point")));
        }
        unique_names(&names)?;
        if gen_act.len() != base.ngens() {
            return Err(Error::Invalid(format!("{name}: expected {} generator actions, got {}", base.ngens(), gen_act.len())));
        }
        for (g, m) in gen_act.iter().enumerate() {
            if m.len() != n || m.iter().any(|&y| y >= n) {
                return Err(Error::Invalid(format!("{name}: action of generator {g} is not a map on {n} points")));
            }
            if m[0] != 0 {
                return Err(Error::Invalid(format!("{name}: generator {g} moves the base point")));
            }
        }
        let act = match &base {
            Base::Monogenic => vec![],
            Base::Finite(m) => full_action(&name, m, &gen_act, n)?,
        };
        Ok(ASet { name, base, names, gen_act, act })
    }

    /// Build from the action of every monoid element.
    pub fn from_table(name: impl Into<String>, base: Arc<FiniteMonoid>, names: Vec<String>, table: Vec<Vec<usize>>) -> Result<ASet> {
        let name = name.into();
        if table.len() != base.len() {
            return Err(Error::Invalid(format!("{name}: action table needs one row per monoid element")));
        }
        let gen_act: Vec<Vec<usize>> = base.generators.iter().map(|&g| table[g].clone()).collect();
        let x = ASet::new(name.clone(), Base::Finite(base), names, gen_act)?;
        if x.act != table {
            return Err(Error::Invalid(format!("{name}: action table is not compatible with the monoid")));
        }
        Ok(x)
    }

    /// Build over a finite base without re-validating; callers guarantee the axioms.
    pub(crate) fn trusted(name: impl Into<String>, base: Base, names: Vec<String>, gen_act: Vec<Vec<usize>>) -> ASet {
        let name = name.into();
        let act = match &base {
            Base::Monogenic => vec![],
            Base::Finite(m) => derive_action(m, &gen_act, names.len()),
        };
        ASet { name, base, names, gen_act, act }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn monoid(&self) -> Option<&Arc<FiniteMonoid>> {
        self.base.as_finite()
    }

    fn expect_finite(&self) -> &Arc<FiniteMonoid> {
        self.base.as_finite().expect("operation needs a finite base monoid")
    }

    /// `a . x` for an element index `a` of a finite base.
    #[inline]
    pub fn act(&self, a: usize, x: usize) -> usize {
        self.act[a][x]
    }

    /// Full action table, one row per monoid element.
    pub fn action_table(&self) -> &[Vec<usize>] {
        &self.act
    }

    #[inline]
    pub fn gen(&self, g: usize, x: usize) -> usize {
        self.gen_act[g][x]
    }

    /// `t^k . x` over the monogenic base.
    pub fn act_pow(&self, k: usize, mut x: usize) -> usize {
        for _ in 0..k {
            if x == 0 {
                return 0;
            }
            x = self.gen_act[0][x];
        }
        x
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(base: Base) -> ASet {
        let k = base.ngens();
        ASet::trusted("0", base, vec!["0".into()], vec![vec![0]; k])
    }

    /// Free A-set on named generators: `A[S]`, elements `a[s]`.
    pub fn free(base: Arc<FiniteMonoid>, gens: &[String]) -> ASet {
        let m = base.len();
        let mut names = vec!["0".to_string()];
        for s in gens {
            for a in 1..m {
                names.push(format!("{}[{s}]", base.elements[a]));
            }
        }
        let idx = |a: usize, s: usize| if a == 0 { 0 } else { 1 + s * (m - 1) + (a - 1) };
        let mut gen_act = Vec::new();
        for &g in &base.generators {
            let mut map = vec![0; names.len()];
            for s in 0..gens.len() {
                for a in 1..m {
                    map[idx(a, s)] = idx(base.mul(g, a), s);
                }
            }
            gen_act.push(map);
        }
        ASet::trusted(format!("{}[{}]", base.name, gens.join(",")), Base::Finite(base), names, gen_act)
    }

    /// Index of `a[s]` in [`ASet::free`].
    pub fn free_index(base: &FiniteMonoid, a: usize, s: usize) -> usize {
        if a == 0 {
            0
        } else {
            1 + s * (base.len() - 1) + (a - 1)
        }
    }

    /// The monoid acting on itself.
    pub fn regular(base: Arc<FiniteMonoid>) -> ASet {
        let names = base.elements.clone();
        let gen_act = base.generators.iter().map(|&g| (0..base.len()).map(|a| base.mul(g, a)).collect()).collect();
        ASet::trusted(base.name.clone(), Base::Finite(base), names, gen_act)
    }

    /// Sub-A-set on `elements` (0 is added); errors unless closed under the action.
    pub fn subset(&self, elements: &[usize]) -> Result<(ASet, Vec<usize>)> {
        let mut keep: Vec<usize> = elements.to_vec();
        keep.push(0);
        keep.sort();
        keep.dedup();
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &x) in keep.iter().enumerate() {
            if x >= self.len() {
                return Err(Error::NotASubset(format!("index {x} out of range")));
            }
            pos[x] = i;
        }
        let mut gen_act = Vec::new();
        for m in &self.gen_act {
            let mut mm = Vec::with_capacity(keep.len());
            for &x in &keep {
                let y = m[x];
                if pos[y] == usize::MAX {
                    return Err(Error::NotASubset(format!("{} leaves the subset", self.names[x])));
                }
                mm.push(pos[y]);
            }
            gen_act.push(mm);
        }
        let names = keep.iter().map(|&x| self.names[x].clone()).collect();
        Ok((ASet::trusted(format!("{}'", self.name), self.base.clone(), names, gen_act), keep))
    }

    /// Smallest sub-A-set containing `elements`.
    pub fn generated_subset(&self, elements: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut q: VecDeque<usize> = elements.iter().copied().collect();
        for &e in elements {
            seen[e] = true;
        }
        while let Some(x) = q.pop_front() {
            for m in &self.gen_act {
                let y = m[x];
                if !seen[y] {
                    seen[y] = true;
                    q.push_back(y);
                }
            }
        }
        (0..self.len()).filter(|&i| seen[i]).collect()
    }

    pub fn is_subset(&self, elements: &[usize]) -> bool {
        let mut mem = vec![false; self.len()];
        mem[0] = true;
        for &e in elements {
            mem[e] = true;
        }
        elements.iter().all(|&x| self.gen_act.iter().all(|m| mem[m[x]]))
    }

    /// Congruence generated by `pairs`.
    pub fn congruence_closure(&self, pairs: &[(usize, usize)]) -> Partition {
        let mut uf = UnionFind::new(self.len());
        let mut q: VecDeque<(usize, usize)> = pairs.iter().copied().collect();
        while let Some((x, y)) = q.pop_front() {
            if uf.union(x, y) {
                for m in &self.gen_act {
                    q.push_back((m[x], m[y]));
                }
            }
        }
        uf.partition()
    }

    pub fn is_congruence(&self, p: &Partition) -> bool {
        let classes = p.classes();
        classes.iter().all(|c| self.gen_act.iter().all(|m| c.iter().all(|&x| p.class_of[m[x]] == p.class_of[m[c[0]]])))
    }

    /// Quotient by a congruence together with the projection.
    pub fn quotient(&self, p: &Partition) -> Result<(ASet, Vec<usize>)> {
        if p.class_of.len() != self.len() || !self.is_congruence(p) {
            return Err(Error::NotACongruence(format!("on {}", self.name)));
        }
        let reps = p.representatives();
        let gen_act = self.gen_act.iter().map(|m| reps.iter().map(|&r| p.class_of[m[r]]).collect()).collect();
        let names = reps.iter().map(|&r| self.names[r].clone()).collect();
        Ok((ASet::trusted(format!("{}/~", self.name), self.base.clone(), names, gen_act), p.class_of.clone()))
    }

    /// `X / X'`: collapse a sub-A-set to the base point.
    pub fn collapse(&self, sub: &[usize]) -> Result<(ASet, Vec<usize>)> {
        if !self.is_subset(sub) {
            return Err(Error::NotASubset(format!("in {}", self.name)));
        }
        let mut labels: Vec<usize> = (0..self.len()).collect();
        for &s in sub {
            labels[s] = 0;
        }
        let p = Partition::from_labels(&labels);
        let (q, map) = self.quotient(&p)?;
        Ok((ASet { name: format!("{}/{}", self.name, sub.len()), ..q }, map))
    }

    /// `X ∨ Y`.
    pub fn wedge(&self, other: &ASet) -> ASet {
        wedge_all(&[self, other])
    }

    /// `X ∧ Y` with the diagonal action.
    pub fn smash(&self, other: &ASet) -> ASet {
        let (n, m) = (self.len(), other.len());
        let idx = |x: usize, y: usize| if x == 0 || y == 0 { 0 } else { 1 + (x - 1) * (m - 1) + (y - 1) };
        let mut names = vec!["0".to_string()];
        for x in 1..n {
            for y in 1..m {
                names.push(format!("({},{})", self.names[x], other.names[y]));
            }
        }
        let gen_act = (0..self.gen_act.len())
            .map(|g| {
                let mut map = vec![0; names.len()];
                for x in 1..n {
                    for y in 1..m {
                        map[idx(x, y)] = idx(self.gen_act[g][x], other.gen_act[g][y]);
                    }
                }
                map
            })
            .collect();
        ASet::trusted(format!("{}^{}", self.name, other.name), self.base.clone(), names, gen_act)
    }

    /// `X ⊗_A Y`, with A acting on the first factor.
    pub fn tensor(&self, other: &ASet) -> ASet {
        self.tensor_with_map(other).0
    }

    /// Tensor product and the class of each pair, indexed by `1 + (x-1)(|Y|-1) + (y-1)`.
    pub fn tensor_with_map(&self, other: &ASet) -> (ASet, Vec<usize>) {
        let (n, m) = (self.len(), other.len());
        let idx = |x: usize, y: usize| if x == 0 || y == 0 { 0 } else { 1 + (x - 1) * (m - 1) + (y - 1) };
        let size = 1 + (n - 1) * (m - 1);
        let mut names = vec!["0".to_string()];
        for x in 1..n {
            for y in 1..m {
                names.push(format!("{}⊗{}", self.names[x], other.names[y]));
            }
        }
        let first: Vec<Vec<usize>> = (0..self.gen_act.len())
            .map(|g| {
                let mut map = vec![0; size];
                for x in 1..n {
                    for y in 1..m {
                        map[idx(x, y)] = idx(self.gen_act[g][x], y);
                    }
                }
                map
            })
            .collect();
        let pre = ASet::trusted("pre", self.base.clone(), names, first);
        let mut pairs = Vec::new();
        for g in 0..self.gen_act.len() {
            for x in 1..n {
                for y in 1..m {
                    pairs.push((idx(self.gen_act[g][x], y), idx(x, other.gen_act[g][y])));
                }
            }
        }
        let p = pre.congruence_closure(&pairs);
        let (q, map) = pre.quotient(&p).expect("closure is a congruence");
        (ASet { name: format!("{}⊗{}", self.name, other.name), ..q }, map)
    }

    /// Minimal generating set: one element from each source strongly connected component.
    pub fn generators(&self) -> Vec<usize> {
        let n = self.len();
        let comp = self.components();
        let mut entered = vec![false; n];
        for y in 1..n {
            for m in &self.gen_act {
                let z = m[y];
                if comp[z] != comp[y] {
                    entered[comp[z]] = true;
                }
            }
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 1..n {
            let c = comp[x];
            if !entered[c] && !seen[c] {
                seen[c] = true;
                out.push(x);
            }
        }
        out
    }

    /// Strongly connected component labels of the action graph (iterative Tarjan).
    fn components(&self) -> Vec<usize> {
        let n = self.len();
        const UNSEEN: usize = usize::MAX;
        let mut index = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut comp = vec![UNSEEN; n];
        let mut next = 0;
        let k = self.gen_act.len();
        for root in 0..n {
            if index[root] != UNSEEN {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = next;
            low[root] = next;
            next += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut i)) = call.last_mut() {
                if *i < k {
                    let w = self.gen_act[*i][v];
                    *i += 1;
                    if index[w] == UNSEEN {
                        index[w] = next;
                        low[w] = next;
                        next += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(u, _)) = call.last() {
                        low[u] = low[u].min(low[v]);
                    }
                    if low[v] == index[v] {
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp[w] = v;
                            if w == v {
                                break;
                            }
                        }
                    }
                }
            }
        }
        comp
    }

    /// `{a . x}`.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        self.generated_subset(&[x])
    }

    /// `ax = 0` forces `a = 0` or `x = 0`.
    pub fn is_torsion_free(&self) -> bool {
        match &self.base {
            Base::Finite(m) => (1..m.len()).all(|a| (1..self.len()).all(|x| self.act(a, x) != 0)),
            Base::Monogenic => (1..self.len()).all(|x| self.gen_act[0][x] != 0),
        }
    }

    /// Rename for display.
    pub fn named(mut self, name: impl Into<String>) -> ASet {
        self.name = name.into();
        self
    }

    /// Localization `S^-1 X` over `S^-1 A`.
    pub fn localize(&self, s_gens: &[usize]) -> Result<(ASet, Vec<usize>)> {
        let a = self.expect_finite().clone();
        let s = a.multiplicative_closure(s_gens);
        if s.contains(&0) && a.len() > 1 {
            return Err(Error::ZeroInS);
        }
        let (loc, amap) = a.localize(s_gens)?;
        let loc = Arc::new(loc);
        let mut pairs = Vec::new();
        for &t in &s {
            for x in 0..self.len() {
                pairs.push((x, t));
            }
        }
        let rel = |(x, t): (usize, usize), (y, w): (usize, usize)| s.iter().any(|&u| self.act(a.mul(u, w), x) == self.act(a.mul(u, t), y));
        let mut class_of = vec![usize::MAX; pairs.len()];
        let mut reps = Vec::new();
        for i in 0..pairs.len() {
            if let Some(c) = reps.iter().position(|&r| rel(pairs[i], pairs[r])) {
                class_of[i] = c;
            } else {
                class_of[i] = reps.len();
                reps.push(i);
            }
        }
        let lookup: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, class_of[i])).collect();
        let one = a.one();
        let names: Vec<String> = reps
            .iter()
            .map(|&r| {
                let (x, t) = pairs[r];
                if t == one || x == 0 {
                    self.names[x].clone()
                } else {
                    format!("{}/{}", self.names[x], a.elements[t])
                }
            })
            .collect();
        // the class of (x, t) under a/u is (ax, ut); generators of S^-1 A are classes of pairs
        let loc_pairs: Vec<(usize, usize)> = {
            let mut v = vec![(0, one); loc.len()];
            let mut found = vec![false; loc.len()];
            for &t in &s {
                for b in 0..a.len() {
                    // image of b/t in loc: amap[b] times the inverse of amap[t]
                    let bt = loc_product_inverse(&loc, amap[b], amap[t]);
                    if let Some(c) = bt {
                        if !found[c] {
                            found[c] = true;
                            v[c] = (b, t);
                        }
                    }
                }
            }
            v
        };
        let gen_act = loc
            .generators
            .iter()
            .map(|&g| {
                let (b, u) = loc_pairs[g];
                reps.iter().map(|&r| {
                    let (x, t) = pairs[r];
                    lookup[&(self.act(b, x), a.mul(u, t))]
                }).collect()
            })
            .collect();
        let xloc = ASet::new(format!("S^-1 {}", self.name), Base::Finite(loc), names, gen_act)?;
        let map = (0..self.len()).map(|x| lookup[&(x, one)]).collect();
        Ok((xloc, map))
    }

    /// Restriction of scalars along a monoid map `phi: A -> B` where `self` is a B-set.
    pub fn restrict(&self, a: Arc<FiniteMonoid>, phi: &[usize]) -> ASet {
        let gen_act = a.generators.iter().map(|&g| (0..self.len()).map(|x| self.act(phi[g], x)).collect()).collect();
        ASet::trusted(self.name.clone(), Base::Finite(a), self.names.clone(), gen_act)
    }

    /// Multiset-free summary used to prune isomorphism searches.
    pub fn signatures(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut pre = vec![vec![0usize; n]; self.gen_act.len()];
        for (g, m) in self.gen_act.iter().enumerate() {
            for x in 0..n {
                pre[g][m[x]] += 1;
            }
        }
        (0..n)
            .map(|x| {
                let mut s = vec![self.orbit(x).len()];
                for (g, m) in self.gen_act.iter().enumerate() {
                    s.push((m[x] == 0) as usize);
                    s.push((m[x] == x) as usize);
                    s.push(pre[g][x]);
                }
                if let Base::Finite(a) = &self.base {
                    s.push((0..a.len()).filter(|&b| self.act(b, x) == 0).count());
                    s.push((0..a.len()).filter(|&b| self.act(b, x) == x).count());
                }
                s
            })
            .collect()
    }
}

fn loc_product_inverse(loc: &FiniteMonoid, b: usize, t: usize) -> Option<usize> {
    (0..loc.len()).find(|&c| loc.mul(c, t) == b)
}

fn derive_action(m: &FiniteMonoid, gen_act: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let words = m.words();
    let mut act = vec![vec![0usize; n]; m.len()];
    for a in 0..m.len() {
        match &words[a] {
            Some(w) => {
                let mut row: Vec<usize> = (0..n).collect();
                for &g in w {
                    for r in row.iter_mut() {
                        *r = gen_act[g][*r];
                    }
                }
                act[a] = row;
            }
            None => act[a] = vec![0; n],
        }
    }
    if m.len() > 1 && words[0].is_none() {
        act[0] = vec![0; n];
    }
    act
}

fn full_action(name: &str, m: &FiniteMonoid, gen_act: &[Vec<usize>], n: usize) -> Result<Vec<Vec<usize>>> {
    let act = derive_action(m, gen_act, n);
    if act[0].iter().any(|&y| y != 0) {
        return Err(Error::Invalid(format!("{name}: the zero of the monoid does not act as zero")));
    }
    for a in 0..m.len() {
        for (gi, &g) in m.generators.iter().enumerate() {
            let ag = m.mul(a, g);
            for x in 0..n {
                if act[ag][x] != gen_act[gi][act[a][x]] {
                    return Err(Error::Invalid(format!(
                        "{name}: action is not compatible with the monoid at {}*{} on element {x}",
                        m.elements[a], m.elements[g]
                    )));
                }
            }
        }
    }
    if m.len() == 1 && n > 1 {
        return Err(Error::Invalid(format!("{name}: the zero monoid only acts on the one-point set")));
    }
    Ok(act)
}

/// `X_1 ∨ ... ∨ X_k`; clashing names get primes appended.
pub fn wedge_all(parts: &[&ASet]) -> ASet {
    let base = parts.first().map(|p| p.base.clone()).expect("wedge of at least one A-set");
    let mut names = vec!["0".to_string()];
    let mut taken: std::collections::HashSet<String> = names.iter().cloned().collect();
    let mut offsets = Vec::new();
    for p in parts {
        offsets.push(names.len() - 1);
        for x in 1..p.len() {
            let mut nm = p.names[x].clone();
            while taken.contains(&nm) {
                nm.push('\'');
            }
            taken.insert(nm.clone());
            names.push(nm);
        }
    }
    let gen_act = (0..base.ngens())
        .map(|g| {
            let mut map = vec![0; names.len()];
            for (p, &off) in parts.iter().zip(&offsets) {
                for x in 1..p.len() {
                    let y = p.gen_act[g][x];
                    map[off + x] = if y == 0 { 0 } else { off + y };
                }
            }
            map
        })
        .collect();
    let name = parts.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join("∨");
    ASet::trusted(name, base, names, gen_act)
}

/// Index of element `x` of summand `i` inside [`wedge_all`].
pub fn wedge_injection(parts: &[&ASet], i: usize) -> Vec<usize> {
    let off: usize = parts[..i].iter().map(|p| p.len() - 1).sum();
    (0..parts[i].len()).map(|x| if x == 0 { 0 } else { off + x }).collect()
}

/// Equivariant pointed map.
pub fn is_hom(x: &ASet, y: &ASet, map: &[usize]) -> bool {
    map.len() == x.len()
        && map[0] == 0
        && map.iter().all(|&v| v < y.len())
        && (0..x.gen_act.len()).all(|g| (0..x.len()).all(|e| map[x.gen_act[g][e]] == y.gen_act[g][map[e]]))
}

impl fmt::Display for ASet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} over {} ({} points)", self.name, self.base.name(), self.len())?;
        for (g, gname) in self.base.gen_names().iter().enumerate() {
            let imgs: Vec<String> = (0..self.len()).map(|x| format!("{}->{}", self.names[x], self.names[self.gen_act[g][x]])).collect();
            writeln!(f, "  {gname}: {}", imgs.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{presented, truncated};

    fn f1() -> Arc<FiniteMonoid> {
        Arc::new(FiniteMonoid::f1())
    }

    #[test]
    fn free_and_regular() {
        let a = Arc::new(truncated(3));
        let x = ASet::free(a.clone(), &["s".into(), "u".into()]);
        assert_eq!(x.len(), 7);
        assert_eq!(x.generators(), vec![1, 4]);
        let r = ASet::regular(a);
        assert_eq!(r.generators(), vec![1]);
    }

    #[test]
    fn tensor_with_quotient() {
        let a = Arc::new(truncated(3));
        let r = ASet::regular(a.clone());
        let x_idx = a.index_of("x").unwrap();
        let xa = r.generated_subset(&[x_idx]);
        let (q, _) = r.collapse(&xa).unwrap();
        assert_eq!(q.len(), 2);
        let t = q.tensor(&q);
        assert_eq!(t.len(), 2);
        let t2 = r.tensor(&r);
        assert!(is_isomorphic(&t2, &r));
    }

    #[test]
    fn bad_action_rejected() {
        let a = Arc::new(truncated(2));
        // x acts as identity, but x^2 = 0 must kill everything
        let res = ASet::new("bad", Base::Finite(a), vec!["0".into(), "p".into()], vec![vec![0, 1]]);
        assert!(res.is_err());
    }

    #[test]
    fn wedge_of_points() {
        let p = ASet::regular(f1());
        let w = p.wedge(&p);
        assert_eq!(w.names, vec!["0", "1", "1'"]);
        assert_eq!(w.generators().len(), 2);
    }

    #[test]
    fn localization_of_idempotent_pair() {
        let m = Arc::new(presented("idem2", &["x", "y"], &["x^2=x", "y^2=y"]));
        let r = ASet::regular(m.clone());
        let (l, _) = r.localize(&[m.index_of("x").unwrap()]).unwrap();
        assert_eq!(l.len(), 3);
    }
}
