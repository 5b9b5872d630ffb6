//! Admissible extensions of A-sets and square-zero extensions of monoids.

use std::sync::Arc;

use crate::aset::{hom_enumerate, hom_search, is_hom, wedge_all, ASet, ExactSequence, SearchOpts};
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;

/// `Z = {a[x] : ax = 0} ⊆ A[X]` modulo `ab[x] ~ a[bx]` for generators `b` with `bx != 0`.
#[derive(Clone, Debug)]
pub struct ExtPresentation {
    /// The sub-A-set `Z` of the free A-set on the nonzero points of `X`.
    pub z: ASet,
    /// `(a, x)` for each point of `Z`; the base point is `(0, 0)`.
    pub labels: Vec<(usize, usize)>,
    pub quotient: ASet,
    /// Projection `Z -> Z/~`.
    pub proj: Vec<usize>,
}

fn finite(x: &ASet) -> Result<&Arc<FiniteMonoid>> {
    x.monoid().ok_or_else(|| Error::UnsupportedBackend("extensions need a finite base monoid".into()))
}

pub fn ext_presentation(x: &ASet) -> Result<ExtPresentation> {
    let a = finite(x)?.clone();
    let gens: Vec<String> = x.names[1..].to_vec();
    let free = ASet::free(a.clone(), &gens);
    let mut keep = vec![0usize];
    let mut labels = vec![(0usize, 0usize)];
    for s in 1..x.len() {
        for e in 1..a.len() {
            if x.act(e, s) == 0 {
                keep.push(ASet::free_index(&a, e, s - 1));
                labels.push((e, s));
            }
        }
    }
    let (z, kept) = free.subset(&keep)?;
    let pos = |e: usize, s: usize| -> usize {
        if e == 0 {
            return 0;
        }
        let i = ASet::free_index(&a, e, s - 1);
        kept.binary_search(&i).expect("point of Z")
    };
    let mut pairs = Vec::new();
    for &b in &a.generators {
        for s in 1..x.len() {
            let bs = x.act(b, s);
            if bs == 0 {
                continue;
            }
            for e in 1..a.len() {
                if x.act(e, bs) == 0 {
                    pairs.push((pos(a.mul(e, b), s), pos(e, bs)));
                }
            }
        }
    }
    let p = z.congruence_closure(&pairs);
    let (quotient, proj) = z.quotient(&p)?;
    Ok(ExtPresentation { z, labels, quotient, proj })
}

/// An extension `0 -> Y -> E -> X -> 0` with `E = Y ∨ X` as pointed sets.
#[derive(Clone, Debug)]
pub struct Extension {
    pub e: ASet,
    pub inclusion: Vec<usize>,
    pub projection: Vec<usize>,
}

fn build_extension(x: &ASet, y: &ASet, value: impl Fn(usize, usize) -> usize) -> Result<Extension> {
    let w = wedge_all(&[y, x]);
    let ny = y.len();
    let xi = |s: usize| if s == 0 { 0 } else { ny - 1 + s };
    let a = finite(x)?;
    let gen_act: Vec<Vec<usize>> = a
        .generators
        .iter()
        .enumerate()
        .map(|(gi, &g)| {
            let mut m = y.gen_act[gi].clone();
            for s in 1..x.len() {
                let gs = x.gen_act[gi][s];
                m.push(if gs != 0 { xi(gs) } else { value(g, s) });
            }
            m
        })
        .collect();
    let e = ASet::new(format!("E({},{})", y.name, x.name), x.base.clone(), w.names.clone(), gen_act)?;
    let inclusion = (0..ny).collect();
    let mut projection = vec![0; ny];
    projection.extend(1..x.len());
    Ok(Extension { e, inclusion, projection })
}

impl Extension {
    pub fn sequence(&self, x: &ASet, y: &ASet) -> ExactSequence {
        ExactSequence { x: y.clone(), y: self.e.clone(), z: x.clone(), f: self.inclusion.clone(), g: self.projection.clone() }
    }
}

/// `Φ`: the map `Z/~ -> Y` read off from the action on `E`, or `None` if it is not well defined.
pub fn phi_of_extension(pres: &ExtPresentation, ext: &Extension, y: &ASet) -> Option<Vec<usize>> {
    let ny = y.len();
    let mut phi = vec![usize::MAX; pres.quotient.len()];
    for (i, &(e, s)) in pres.labels.iter().enumerate() {
        let v = if e == 0 { 0 } else { ext.e.act(e, ny - 1 + s) };
        if v >= ny {
            return None;
        }
        let c = pres.proj[i];
        if phi[c] != usize::MAX && phi[c] != v {
            return None;
        }
        phi[c] = v;
    }
    is_hom(&pres.quotient, y, &phi).then_some(phi)
}

fn extension_of_phi(pres: &ExtPresentation, x: &ASet, y: &ASet, phi: &[usize]) -> Result<Extension> {
    let value = |g: usize, s: usize| -> usize {
        let i = pres.labels.iter().position(|&(e, t)| e == g && t == s).expect("g[s] lies in Z");
        phi[pres.proj[i]]
    };
    build_extension(x, y, value)
}

/// Round trips between maps `Z/~ -> Y` and extensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtRoundTrip {
    pub maps: usize,
    pub extensions: usize,
    /// `Φ(Ξ(φ)) = φ` for every map.
    pub phi_xi: bool,
    /// `Ξ(Φ(E)) = E` for every brute-force extension.
    pub xi_phi: bool,
    /// Every extension is an A-set and an admissible exact sequence.
    pub valid: bool,
}

pub fn ext_roundtrip(x: &ASet, y: &ASet, cap: usize) -> Result<ExtRoundTrip> {
    let pres = ext_presentation(x)?;
    let homs = hom_enumerate(&pres.quotient, y, cap)?;
    let mut phi_xi = true;
    let mut valid = true;
    for phi in &homs.maps {
        let ext = extension_of_phi(&pres, x, y, phi)?;
        valid &= ext.sequence(x, y).validate().is_ok();
        phi_xi &= phi_of_extension(&pres, &ext, y).as_deref() == Some(phi.as_slice());
    }
    let brute = ext_bruteforce(x, y, cap)?;
    let mut xi_phi = true;
    let ny = y.len();
    for gen_act in &brute {
        let e = ASet::new("E", x.base.clone(), wedge_all(&[y, x]).names, gen_act.clone())?;
        let mut projection = vec![0; ny];
        projection.extend(1..x.len());
        let ext = Extension { e, inclusion: (0..ny).collect(), projection };
        match phi_of_extension(&pres, &ext, y) {
            Some(phi) => xi_phi &= extension_of_phi(&pres, x, y, &phi)?.e.gen_act == *gen_act,
            None => xi_phi = false,
        }
    }
    Ok(ExtRoundTrip { maps: homs.maps.len(), extensions: brute.len(), phi_xi, xi_phi, valid })
}

/// All extensions of `X` by `Y`, one for each map `Z/~ -> Y`.
pub fn ext_enumerate(x: &ASet, y: &ASet, cap: usize) -> Result<Vec<Extension>> {
    let pres = ext_presentation(x)?;
    let homs = hom_enumerate(&pres.quotient, y, cap)?;
    homs.maps.iter().map(|phi| extension_of_phi(&pres, x, y, phi)).collect()
}

pub fn ext_count(x: &ASet, y: &ASet, cap: usize) -> Result<usize> {
    let pres = ext_presentation(x)?;
    Ok(hom_enumerate(&pres.quotient, y, cap)?.maps.len())
}

/// Oracle: try every value of `g . x` in `Y` for `gx = 0`, keep the valid actions.
pub fn ext_bruteforce(x: &ASet, y: &ASet, cap: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    let a = finite(x)?;
    let mut slots = Vec::new();
    for (gi, _) in a.generators.iter().enumerate() {
        for s in 1..x.len() {
            if x.gen_act[gi][s] == 0 {
                slots.push((gi, s));
            }
        }
    }
    let total = (y.len() as f64).powi(slots.len() as i32);
    if total > cap as f64 {
        return Err(Error::CapExceeded(format!("{total} candidate actions")));
    }
    let ny = y.len();
    let xi = |s: usize| if s == 0 { 0 } else { ny - 1 + s };
    let names: Vec<String> = (0..ny + x.len() - 1).map(|i| i.to_string()).collect();
    let mut choice = vec![0usize; slots.len()];
    let mut out = Vec::new();
    loop {
        let gen_act: Vec<Vec<usize>> = (0..a.generators.len())
            .map(|gi| {
                let mut m = y.gen_act[gi].clone();
                for s in 1..x.len() {
                    let gs = x.gen_act[gi][s];
                    m.push(if gs != 0 { xi(gs) } else { choice[slots.iter().position(|&p| p == (gi, s)).unwrap()] });
                }
                m
            })
            .collect();
        if ASet::new("E", x.base.clone(), names.clone(), gen_act.clone()).is_ok() {
            out.push(gen_act);
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                out.sort();
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < ny {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// An isomorphism of middle terms fixing `Y` and compatible with the maps to `X`.
pub fn ext_equivalent(e1: &Extension, e2: &Extension) -> bool {
    if e1.e.len() != e2.e.len() {
        return false;
    }
    let mut in_y = vec![usize::MAX; e1.e.len()];
    for (y, &v) in e1.inclusion.iter().enumerate() {
        in_y[v] = y;
    }
    let filter = |s: usize, t: usize| {
        if in_y[s] != usize::MAX {
            e2.inclusion.get(in_y[s]) == Some(&t)
        } else {
            e2.projection[t] == e1.projection[s] && e1.projection[s] != 0
        }
    };
    let mut found = false;
    hom_search(&e1.e, &e2.e, &SearchOpts { injective: true, filter: Some(&filter) }, &mut |_| {
        found = true;
        false
    });
    found
}

/// Does every extension of `Z` by `X` split?  `None` when there are too many to check.
pub fn all_extensions_split(z: &ASet, x: &ASet, cap: usize) -> Option<bool> {
    let exts = ext_enumerate(z, x, cap).ok()?;
    for ext in exts {
        let mut has_section = false;
        let filter = |s: usize, t: usize| ext.projection[t] == s;
        hom_search(z, &ext.e, &SearchOpts { injective: false, filter: Some(&filter) }, &mut |_| {
            has_section = true;
            false
        });
        if !has_section {
            return Some(false);
        }
    }
    Some(true)
}

/// Square-zero extensions of a monoid `A` by an A-set `X`.
///
/// A candidate is a value `f(a, b)` in `X` for every ordered pair of nonzero `a, b` with `ab = 0`.
#[derive(Clone, Debug)]
pub struct SquareZero {
    pub a: Arc<FiniteMonoid>,
    pub x: ASet,
    pub pairs: Vec<(usize, usize)>,
}

impl SquareZero {
    pub fn new(x: &ASet) -> Result<Self> {
        let a = finite(x)?.clone();
        let mut pairs = Vec::new();
        for p in 1..a.len() {
            for q in 1..a.len() {
                if a.mul(p, q) == 0 {
                    pairs.push((p, q));
                }
            }
        }
        Ok(SquareZero { a, x: x.clone(), pairs })
    }

    /// `f(a, b)`, with `f` given by its values on [`SquareZero::pairs`].
    pub fn f(&self, f: &[usize], p: usize, q: usize) -> usize {
        if p == 0 || q == 0 || self.a.mul(p, q) != 0 {
            return 0;
        }
        f[self.pairs.iter().position(|&pq| pq == (p, q)).unwrap()]
    }

    /// Multiplication table of `E = A ∨ X`.
    pub fn table(&self, f: &[usize]) -> Vec<Vec<usize>> {
        let na = self.a.len();
        let n = na + self.x.len() - 1;
        let xi = |s: usize| if s == 0 { 0 } else { na - 1 + s };
        let mut t = vec![vec![0; n]; n];
        for (u, row) in t.iter_mut().enumerate() {
            for (v, cell) in row.iter_mut().enumerate() {
                *cell = match (u < na, v < na) {
                    (true, true) => {
                        let ab = self.a.mul(u, v);
                        if ab != 0 || u == 0 || v == 0 {
                            ab
                        } else {
                            xi(self.f(f, u, v))
                        }
                    }
                    (true, false) => xi(self.x.act(u, v + 1 - na)),
                    (false, true) => xi(self.x.act(v, u + 1 - na)),
                    (false, false) => 0,
                };
            }
        }
        t
    }

    pub fn is_associative(&self, f: &[usize]) -> bool {
        let t = self.table(f);
        let n = t.len();
        (0..n).all(|p| (0..n).all(|q| (0..n).all(|r| t[t[p][q]][r] == t[p][t[q][r]])))
    }

    pub fn is_symmetric(&self, f: &[usize]) -> bool {
        self.pairs.iter().all(|&(p, q)| self.f(f, p, q) == self.f(f, q, p))
    }

    pub fn is_commutative(&self, f: &[usize]) -> bool {
        let t = self.table(f);
        (0..t.len()).all(|p| (0..p).all(|q| t[p][q] == t[q][p]))
    }

    /// The four coface values `d^i f (a, b, c)`.
    pub fn cofaces(&self, f: &[usize], p: usize, q: usize, r: usize) -> [usize; 4] {
        let a = &self.a;
        [
            self.x.act(p, self.f(f, q, r)),
            self.f(f, a.mul(p, q), r),
            self.f(f, p, a.mul(q, r)),
            self.x.act(r, self.f(f, p, q)),
        ]
    }

    /// Some even and some odd coface vanish at every triple.
    pub fn in_c2(&self, f: &[usize]) -> bool {
        let n = self.a.len();
        (1..n).all(|p| {
            (1..n).all(|q| {
                (1..n).all(|r| {
                    let d = self.cofaces(f, p, q, r);
                    (d[0] == 0 || d[2] == 0) && (d[1] == 0 || d[3] == 0)
                })
            })
        })
    }

    /// Read `f` back off a multiplication table on `A ∨ X`.
    pub fn cochain_of_table(&self, t: &[Vec<usize>]) -> Option<Vec<usize>> {
        let na = self.a.len();
        self.pairs
            .iter()
            .map(|&(p, q)| match t[p][q] {
                0 => Some(0),
                v if v >= na => Some(v + 1 - na),
                _ => None,
            })
            .collect()
    }

    /// The kernel `X ⊆ E` multiplies to zero.
    pub fn kernel_square_zero(&self, f: &[usize]) -> bool {
        let t = self.table(f);
        let na = self.a.len();
        (na..t.len()).all(|u| (na..t.len()).all(|v| t[u][v] == 0))
    }

    /// At most one even and one odd coface is nonzero, and those two agree.
    pub fn is_cocycle(&self, f: &[usize]) -> bool {
        for p in 1..self.a.len() {
            for q in 1..self.a.len() {
                for r in 1..self.a.len() {
                    let d = self.cofaces(f, p, q, r);
                    let even: Vec<usize> = [d[0], d[2]].into_iter().filter(|&v| v != 0).collect();
                    let odd: Vec<usize> = [d[1], d[3]].into_iter().filter(|&v| v != 0).collect();
                    if even.len() > 1 || odd.len() > 1 {
                        return false;
                    }
                    if even.first().copied().unwrap_or(0) != odd.first().copied().unwrap_or(0) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The four case conditions on `f` that together give associativity.
    pub fn case_conditions(&self, f: &[usize]) -> bool {
        let a = &self.a;
        let x = &self.x;
        for p in 1..a.len() {
            for q in 1..a.len() {
                for r in 1..a.len() {
                    let (ab, bc, ac) = (a.mul(p, q), a.mul(q, r), a.mul(p, r));
                    if bc == 0 && ab != 0 && x.act(p, self.f(f, q, r)) != self.f(f, ab, r) {
                        return false;
                    }
                    if ab == 0 && bc != 0 && self.f(f, p, bc) != x.act(r, self.f(f, p, q)) {
                        return false;
                    }
                    if ac == 0 && ab != 0 && bc != 0 && self.f(f, ab, r) != self.f(f, p, bc) {
                        return false;
                    }
                    if ab == 0 && ac == 0 && bc == 0 && x.act(p, self.f(f, q, r)) != x.act(r, self.f(f, p, q)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every `f`, as values on the pairs.
    pub fn candidates(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let total = (self.x.len() as f64).powi(self.pairs.len() as i32);
        if total > cap as f64 {
            return Err(Error::CapExceeded(format!("{total} candidate cochains")));
        }
        let mut out = Vec::new();
        let mut cur = vec![0usize; self.pairs.len()];
        loop {
            out.push(cur.clone());
            let mut i = 0;
            loop {
                if i == cur.len() {
                    return Ok(out);
                }
                cur[i] += 1;
                if cur[i] < self.x.len() {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }
}

/// Counts of square-zero extensions, checked three ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqzReport {
    pub candidates: usize,
    pub extensions: usize,
    pub commutative: usize,
    /// Cocycle condition, case conditions and associativity agree on every candidate.
    pub agree: bool,
    /// Commutativity of the table equals symmetry of `f` on every associative candidate.
    pub symmetric_iff_commutative: bool,
    /// Every candidate lies in `C^2`.
    pub all_in_c2: bool,
    /// `f -> E -> f` is the identity and the kernel squares to zero.
    pub roundtrip: bool,
    pub cocycles: Vec<Vec<usize>>,
}

pub fn sqz_enumerate(x: &ASet, cap: usize) -> Result<SqzReport> {
    let sq = SquareZero::new(x)?;
    let cands = sq.candidates(cap)?;
    let mut agree = true;
    let mut sym = true;
    let mut cocycles = Vec::new();
    let mut commutative = 0;
    let mut all_in_c2 = true;
    let mut roundtrip = true;
    for f in &cands {
        all_in_c2 &= sq.in_c2(f);
        let assoc = sq.is_associative(f);
        let coc = sq.is_cocycle(f);
        let cases = sq.case_conditions(f);
        agree &= assoc == coc && coc == cases;
        if assoc {
            let c = sq.is_commutative(f);
            sym &= c == sq.is_symmetric(f);
            roundtrip &= sq.cochain_of_table(&sq.table(f)).as_ref() == Some(f) && sq.kernel_square_zero(f);
            if c {
                commutative += 1;
            }
            cocycles.push(f.clone());
        }
    }
    Ok(SqzReport { candidates: cands.len(), extensions: cocycles.len(), commutative, agree, symmetric_iff_commutative: sym, all_in_c2, roundtrip, cocycles })
}

/// A triple where a zero predicted by the coface table fails to hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableMismatch {
    pub pattern: [bool; 3],
    pub coface: usize,
    pub triple: (usize, usize, usize),
}

/// Zero pattern of the cofaces for each `(ab, bc, ac)` nonvanishing pattern.
pub const COFACE_TABLE: [([bool; 3], [bool; 4]); 8] = [
    // (ab, bc, ac) nonzero?  -> coface forced to zero?
    ([false, false, false], [false, true, true, false]),
    ([false, false, true], [false, true, true, false]),
    ([false, true, false], [true, true, false, false]),
    ([false, true, true], [true, true, false, false]),
    ([true, false, false], [false, false, true, true]),
    ([true, false, true], [false, false, true, true]),
    ([true, true, false], [true, false, false, true]),
    ([true, true, true], [true, true, true, true]),
];

/// Compare the table against every `f` in `K`.
pub fn coface_table_check(x: &ASet, cap: usize) -> Result<Vec<TableMismatch>> {
    let sq = SquareZero::new(x)?;
    let cands = sq.candidates(cap)?;
    let a = &sq.a;
    let mut out = Vec::new();
    for p in 1..a.len() {
        for q in 1..a.len() {
            for r in 1..a.len() {
                let pat = [a.mul(p, q) != 0, a.mul(q, r) != 0, a.mul(p, r) != 0];
                let row = COFACE_TABLE.iter().find(|(k, _)| *k == pat).unwrap().1;
                for (i, &forced) in row.iter().enumerate() {
                    if forced && cands.iter().any(|f| sq.cofaces(f, p, q, r)[i] != 0) {
                        out.push(TableMismatch { pattern: pat, coface: i, triple: (p, q, r) });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The monoid `E` of a commutative square-zero extension.
pub fn sqz_monoid(x: &ASet, f: &[usize]) -> Result<FiniteMonoid> {
    let sq = SquareZero::new(x)?;
    if !sq.is_associative(f) || !sq.is_commutative(f) {
        return Err(Error::Invalid("cochain does not give a commutative monoid".into()));
    }
    let mut names = sq.a.elements.clone();
    for s in 1..x.len() {
        let mut nm = x.names[s].clone();
        while names.contains(&nm) {
            nm.push('\'');
        }
        names.push(nm);
    }
    FiniteMonoid::from_table(format!("{}+{}", sq.a.name, x.name), names, sq.table(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aset::Base;
    use crate::monoid::truncated;

    fn point_killed(a: Arc<FiniteMonoid>) -> ASet {
        let k = a.generators.len();
        ASet::new("k", Base::Finite(a), vec!["0".into(), "u".into()], vec![vec![0, 0]; k]).unwrap()
    }

    #[test]
    fn dual_numbers_square_zero() {
        let a = Arc::new(truncated(2));
        let x = point_killed(a);
        let r = sqz_enumerate(&x, 1 << 12).unwrap();
        assert_eq!(r.extensions, 2);
        assert!(r.agree && r.symmetric_iff_commutative && r.all_in_c2 && r.roundtrip);
        let e = sqz_monoid(&x, &[1]).unwrap();
        assert_eq!(e.len(), 4);
        assert!(e.is_nilpotent(e.index_of("x").unwrap()));
        assert!(coface_table_check(&x, 1 << 12).unwrap().is_empty());
    }

    #[test]
    fn table_row_fails_when_triple_product_vanishes() {
        let a = Arc::new(truncated(3));
        let x = point_killed(a);
        let bad = coface_table_check(&x, 1 << 12).unwrap();
        assert!(!bad.is_empty());
        assert!(bad.iter().all(|m| m.pattern == [true, true, true]));
    }

    #[test]
    fn extension_counts_match_oracle() {
        let a = Arc::new(truncated(2));
        let k = point_killed(a.clone());
        let r = ASet::regular(a);
        for (x, y) in [(&k, &k), (&r, &k), (&k, &r), (&r, &r)] {
            let n = ext_count(x, y, 1 << 12).unwrap();
            assert_eq!(n, ext_bruteforce(x, y, 1 << 16).unwrap().len());
            let rt = ext_roundtrip(x, y, 1 << 16).unwrap();
            assert!(rt.phi_xi && rt.xi_phi && rt.valid && rt.maps == n, "{rt:?}");
        }
    }
}
