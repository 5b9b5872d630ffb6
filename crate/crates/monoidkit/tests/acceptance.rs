//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact; the only tolerances are the wall-clock budgets below.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, Instant};

use monoidkit::aset::{enumerate_asets, is_hom, is_isomorphic, split_check, ASet, Base, ExactSequence};
use monoidkit::extensions::{ext_bruteforce, ext_count, sqz_enumerate, sqz_monoid};
use monoidkit::geometry::affine::AffineMonoid;
use monoidkit::geometry::scheme::GluedScheme;
use monoidkit::homological::simplicial::dold_kan_k;
use monoidkit::homological::{adjunction_check, is_admissible, multiplication_complex, resolve, DaComplex, Flavor, ResolveOpts, TruncSimplicialASet};
use monoidkit::io::{Object, Workspace};
use monoidkit::linalg::AbelianGroup;
use monoidkit::monoid::{pointed_cyclic, presented, truncated, FiniteMonoid, MonoidValue};
use monoidkit::projk::{aut_wedge_abelianization, devissage_check, g0, k0, k1, rank_vector, universe_up_to};
use monoidkit::spectra::{all_ideals, associated_primes, dimension, ideal_label, mspec, parse_ideal, primary_decomposition};
use monoidkit::torreal::{hurewicz_compare, tor1_monogenic};

/// Wall-clock budget for every criterion.
const BUDGET: Duration = Duration::from_secs(60);
/// `Pic(P^4)` alone.
const P4_BUDGET: Duration = Duration::from_secs(300);
/// Hom caps; hitting one fails the criterion rather than truncating it.
const CAP: usize = 1 << 20;

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Every document in the corpus, loaded into one workspace.
fn corpus() -> Vec<(String, Object)> {
    let mut ws = Workspace::default();
    ws.bounds.carrier = 64;
    let mut paths: Vec<_> = std::fs::read_dir(corpus_dir()).unwrap().map(|e| e.unwrap().path()).filter(|p| p.extension().is_some_and(|x| x == "json") && !p.to_string_lossy().ends_with(".expect.json")).collect();
    paths.sort();
    paths.into_iter().filter_map(|p| ws.load_path(&p).ok().map(|o| (p.file_name().unwrap().to_string_lossy().into_owned(), o))).collect()
}

fn idem(n: usize) -> FiniteMonoid {
    let gens: Vec<String> = (1..=n).map(|i| if n == 2 { ["x", "y"][i - 1].to_string() } else { format!("x{i}") }).collect();
    let rels: Vec<String> = gens.iter().map(|g| format!("{g}^2={g}")).collect();
    let g: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
    let r: Vec<&str> = rels.iter().map(|s| s.as_str()).collect();
    presented(&format!("idem{n}"), &g, &r)
}

// ---- oracles ----

fn oracle_is_ideal(m: &FiniteMonoid, s: &BTreeSet<usize>) -> bool {
    s.contains(&0) && s.iter().all(|&a| (0..m.len()).all(|b| s.contains(&m.mul(a, b))))
}

/// Primes by definition, over every subset of the monoid.
fn oracle_primes(m: &FiniteMonoid) -> Vec<BTreeSet<usize>> {
    let n = m.len();
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        let s: BTreeSet<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if !oracle_is_ideal(m, &s) || s.contains(&m.one()) {
            continue;
        }
        let prime = (0..n).all(|a| (0..n).all(|b| !s.contains(&m.mul(a, b)) || s.contains(&a) || s.contains(&b)));
        if prime {
            out.push(s);
        }
    }
    out
}

fn oracle_chain_length(ps: &[BTreeSet<usize>]) -> usize {
    fn up(ps: &[BTreeSet<usize>], i: usize) -> usize {
        ps.iter().filter(|q| q.len() > ps[i].len() && ps[i].is_subset(q)).map(|q| 1 + up(ps, ps.iter().position(|r| r == q).unwrap())).max().unwrap_or(0)
    }
    (0..ps.len()).map(|i| up(ps, i)).max().unwrap_or(0)
}

fn oracle_radical(m: &FiniteMonoid, i: &BTreeSet<usize>) -> BTreeSet<usize> {
    (0..m.len()).filter(|&a| (1..=m.len()).any(|k| i.contains(&m.pow(a, k)))).collect()
}

fn oracle_is_primary(m: &FiniteMonoid, q: &BTreeSet<usize>) -> bool {
    if q.contains(&m.one()) {
        return false;
    }
    let r = oracle_radical(m, q);
    (0..m.len()).all(|a| (0..m.len()).all(|b| !q.contains(&m.mul(a, b)) || q.contains(&a) || r.contains(&b)))
}

/// Every table-preserving bijection fixing zero and one, tried one by one.
fn oracle_monoids_isomorphic(a: &FiniteMonoid, b: &FiniteMonoid) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    let rest: Vec<usize> = (2..n).collect();
    let mut perm = rest.clone();
    loop {
        let mut p = vec![0, 1];
        p.extend(&perm);
        if (0..n).all(|x| (0..n).all(|y| p[a.mul(x, y)] == b.mul(p[x], p[y]))) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All maps `X -> Y` of A-sets, by exhaustive search over pointed functions.
fn oracle_homs(x: &ASet, y: &ASet) -> Vec<Vec<usize>> {
    let n = x.len();
    let mut out = Vec::new();
    let mut f = vec![0; n];
    loop {
        if is_equivariant(x, y, &f) {
            out.push(f.clone());
        }
        let mut i = 1;
        while i < n {
            f[i] += 1;
            if f[i] < y.len() {
                break;
            }
            f[i] = 0;
            i += 1;
        }
        if i >= n {
            return out;
        }
    }
}

fn is_equivariant(x: &ASet, y: &ASet, f: &[usize]) -> bool {
    (0..x.base.ngens()).all(|g| (0..x.len()).all(|e| f[x.gen(g, e)] == y.gen(g, f[e])))
}

/// Canonical code of a pointed self-map, as a functional graph up to relabelling.
fn functional_graph_key(f: &[usize]) -> String {
    let n = f.len();
    let mut cyclic = vec![false; n];
    for s in 0..n {
        let mut v = s;
        for _ in 0..n {
            v = f[v];
        }
        cyclic[v] = true;
    }
    for s in 0..n {
        if cyclic[s] {
            let mut v = f[s];
            while v != s {
                cyclic[v] = true;
                v = f[v];
            }
        }
    }
    fn code(v: usize, f: &[usize], cyclic: &[bool]) -> String {
        let mut kids: Vec<String> = (0..f.len()).filter(|&c| f[c] == v && !cyclic[c]).map(|c| code(c, f, cyclic)).collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 1..n {
        if !cyclic[s] || seen[s] {
            continue;
        }
        let mut cycle = vec![s];
        seen[s] = true;
        let mut v = f[s];
        while v != s {
            seen[v] = true;
            cycle.push(v);
            v = f[v];
        }
        if cycle.contains(&0) {
            continue;
        }
        let codes: Vec<String> = cycle.iter().map(|&c| code(c, f, &cyclic)).collect();
        let best = (0..codes.len()).map(|r| codes[r..].iter().chain(&codes[..r]).cloned().collect::<Vec<_>>().join("|")).min().unwrap();
        comps.push(format!("[{best}]"));
    }
    comps.sort();
    format!("Z{}{}", code(0, f, &cyclic), comps.concat())
}

/// One pointed self-map of `0..n` per isomorphism class.
fn functional_graphs(n: usize) -> Vec<Vec<usize>> {
    let mut reps = BTreeMap::new();
    let mut f = vec![0; n];
    loop {
        reps.entry(functional_graph_key(&f)).or_insert_with(|| f.clone());
        let mut i = 1;
        while i < n {
            f[i] += 1;
            if f[i] < n {
                break;
            }
            f[i] = 0;
            i += 1;
        }
        if i >= n {
            return reps.into_values().collect();
        }
    }
}

// ---- criteria ----

fn c1_mspec() -> Check {
    let m = idem(2);
    let labels: Vec<String> = mspec(&m).iter().map(|p| p.label(&m)).collect();
    ensure(labels == ["(0)", "(x)", "(y)", "(x,y)"], || format!("idem2 primes {labels:?}"))?;
    for (n, want) in [(2, 4usize), (4, 16)] {
        let m = idem(n);
        let got: BTreeSet<BTreeSet<usize>> = mspec(&m).into_iter().map(|p| p.elements.into_iter().collect()).collect();
        let oracle: BTreeSet<BTreeSet<usize>> = oracle_primes(&m).into_iter().collect();
        ensure(got == oracle, || format!("idem{n}: library and subset oracle disagree"))?;
        ensure(got.len() == want, || format!("idem{n}: {} primes", got.len()))?;
        let d = dimension(&m);
        let od = oracle_chain_length(&oracle_primes(&m));
        ensure(d == n && od == n, || format!("idem{n}: dimension {d}, oracle {od}"))?;
    }
    Ok(())
}

fn c2_rank() -> Check {
    let m = Arc::new(idem(2));
    let x = m.index_of("x").unwrap();
    let r = ASet::regular(m.clone());
    let (ax, _) = r.subset(&r.generated_subset(&[x])).map_err(|e| e.to_string())?;
    let v = rank_vector(&ax).map_err(|e| e.to_string())?;
    let got: Vec<(String, usize)> = v.iter().map(|(p, k)| (p.label(&m), *k)).collect();
    let want: Vec<(String, usize)> = [("(0)", 1), ("(x)", 0), ("(y)", 1), ("(x,y)", 0)].iter().map(|(p, k)| (p.to_string(), *k)).collect();
    ensure(got == want, || format!("rank vector {got:?}"))
}

fn c3_primary() -> Check {
    let mut monoids = 0;
    let mut ideals = 0;
    for (file, o) in corpus() {
        let Object::Monoid(MonoidValue::Finite(m)) = o else { continue };
        if m.len() > 8 {
            continue;
        }
        monoids += 1;
        for i in all_ideals(&m) {
            let iset: BTreeSet<usize> = i.iter().copied().collect();
            if iset.contains(&m.one()) {
                continue;
            }
            ideals += 1;
            let comps = primary_decomposition(&m, &i).map_err(|e| format!("{file}: {e}"))?;
            let meet = comps.iter().map(|c| c.iter().copied().collect::<BTreeSet<usize>>()).reduce(|a, b| a.intersection(&b).copied().collect()).unwrap_or_default();
            ensure(meet == iset, || format!("{file}: components of {} do not meet to it", ideal_label(&m, &i)))?;
            for c in &comps {
                ensure(oracle_is_primary(&m, &c.iter().copied().collect()), || format!("{file}: {} is not primary", ideal_label(&m, c)))?;
            }
            let radicals: BTreeSet<BTreeSet<usize>> = comps.iter().map(|c| oracle_radical(&m, &c.iter().copied().collect())).collect();
            let ap = associated_primes(&m, &i).map_err(|e| e.to_string())?;
            let scan: BTreeSet<BTreeSet<usize>> = ap.from_quotients.iter().map(|p| p.iter().copied().collect()).collect();
            ensure(scan == radicals, || format!("{file}: associated primes of {} differ from radicals", ideal_label(&m, &i)))?;
        }
    }
    ensure(monoids >= 5 && ideals >= 20, || format!("only {monoids} monoids / {ideals} ideals"))
}

fn c4_k_theory() -> Check {
    for m in [truncated(2), truncated(3), pointed_cyclic(2), pointed_cyclic(3), FiniteMonoid::f1()] {
        let k = k0(&m);
        ensure(k.group == AbelianGroup::free(1), || format!("K0({}) = {}", m.name, k.group))?;
    }
    let m = idem(2);
    let k = k0(&m);
    ensure(k.group == AbelianGroup::free(4), || format!("K0(idem2) = {}", k.group))?;
    for (i, a) in k.basis.iter().enumerate() {
        for (j, b) in k.basis.iter().enumerate() {
            let prod = m.mul(m.index_of(a).unwrap(), m.index_of(b).unwrap());
            ensure(k.basis[k.table[i][j]] == m.elements[prod], || format!("K0 table at {a}*{b}"))?;
        }
    }
    for n in 1..=3usize {
        let c = Arc::new(pointed_cyclic(n));
        let want = AbelianGroup::from_invariants(&[n as i64, 2], 0);
        let got = k1(&c);
        ensure(got == want, || format!("K1(C{n}) = {got}"))?;
        for w in 2..=3 {
            let brute = aut_wedge_abelianization(&c, w).map_err(|e| e.to_string())?;
            ensure(brute == want, || format!("Aut of {w} copies over C{n}: {brute}"))?;
        }
    }
    Ok(())
}

fn c5_g0() -> Check {
    let f1 = Arc::new(FiniteMonoid::f1());
    let g = g0(&universe_up_to(&f1, 5).map_err(|e| e.to_string())?, 5).map_err(|e| e.to_string())?;
    ensure(g.group == AbelianGroup::free(1), || format!("G0(F1) = {}", g.group))?;
    let t3 = Arc::new(truncated(3));
    let uni = universe_up_to(&t3, 5).map_err(|e| e.to_string())?;
    let g = g0(&uni, 5).map_err(|e| e.to_string())?;
    ensure(g.group == AbelianGroup::free(1), || format!("G0(F1[x]/(x^3)) = {}", g.group))?;
    let ideal = parse_ideal(&t3, "x").map_err(|e| e.to_string())?;
    for m in &uni {
        let r = devissage_check(m, &ideal, &[]).map_err(|e| e.to_string())?;
        ensure(r.identity_holds && r.layers_over_quotient, || format!("devissage fails on {} ({} points)", m.name, m.len()))?;
    }
    Ok(())
}

fn small_monoids() -> Vec<Arc<FiniteMonoid>> {
    vec![FiniteMonoid::f1(), truncated(2), truncated(3), truncated(4), pointed_cyclic(2), pointed_cyclic(3), idem(2), presented("nil2", &["x", "y"], &["x^2=0", "y^2=0", "x*y=0"])].into_iter().map(Arc::new).collect()
}

fn c6_resolutions() -> Check {
    let mut checked = 0;
    for a in small_monoids() {
        ensure(a.len() <= 5, || format!("{} has {} elements", a.name, a.len()))?;
        for n in 1..=5 {
            for x in enumerate_asets(&a, n).map_err(|e| e.to_string())? {
                let mut h0s = Vec::new();
                // naive kernel pairs square in size per level
                for (fl, length) in [(Flavor::Naive, 2), (Flavor::Minimized, 3)] {
                    let r = resolve(&x, fl, ResolveOpts { length, ..ResolveOpts::default() }).map_err(|e| format!("{} over {}: {e}", x.name, a.name))?;
                    ensure(r.complex.exact_in(r.checked_degrees()), || format!("{fl:?} resolution of {} over {} is not exact", x.name, a.name))?;
                    let h0 = r.complex.homology(0).aset;
                    ensure(is_isomorphic(&h0, &x), || format!("{fl:?}: H0 of {} over {} is not X", x.name, a.name))?;
                    h0s.push(h0);
                }
                ensure(is_isomorphic(&h0s[0], &h0s[1]), || "flavors disagree on H0".into())?;
                checked += 1;
            }
        }
    }
    ensure(checked >= 100, || format!("only {checked} A-sets"))
}

fn two_level(base: &Base, l0: &ASet, l1: &ASet, r: Vec<usize>) -> DaComplex {
    DaComplex::new(base.clone(), 0, vec![l0.clone(), l1.clone()], vec![vec![0; l0.len()], r], vec![vec![0; l0.len()], vec![0; l1.len()]]).expect("valid complex")
}

fn c7_dold_kan() -> Check {
    let mut pairs = 0;
    for a in [Arc::new(truncated(2)), Arc::new(truncated(3))] {
        let base = Base::Finite(a.clone());
        let reg = ASet::regular(a.clone());
        let x = a.index_of("x").unwrap();
        let (k, _) = reg.collapse(&reg.generated_subset(&[x])).map_err(|e| e.to_string())?;
        let single = DaComplex::new(base.clone(), 0, vec![k.clone()], vec![vec![0; k.len()]], vec![vec![0; k.len()]]).unwrap();
        let proj: Vec<usize> = (0..reg.len()).map(|e| if e == reg.index_of("1").unwrap() { 1 } else { 0 }).collect();
        let complexes = vec![multiplication_complex(&reg, x), multiplication_complex(&k, x), single, two_level(&base, &k, &reg, proj)];
        let mut targets: Vec<TruncSimplicialASet> = vec![TruncSimplicialASet::constant(&k, 2), TruncSimplicialASet::constant(&reg, 2)];
        for c in complexes.iter().take(2) {
            targets.push(dold_kan_k(c, 2).map_err(|e| e.to_string())?.simplicial);
        }
        for c in &complexes {
            ensure(c.levels.iter().all(|l| l.len() <= 4), || "carrier above 4".into())?;
            for s in &targets {
                let r = adjunction_check(c, s, CAP).map_err(|e| e.to_string())?;
                ensure(r.holds(), || format!("adjunction fails over {}: {r:?}", a.name))?;
                pairs += 1;
            }
        }
    }
    ensure(pairs >= 20, || format!("only {pairs} pairs"))
}

fn c8_tor1() -> Check {
    let mut cases = 0;
    for n in 1..=7 {
        for f in functional_graphs(n) {
            let names: Vec<String> = (0..n).map(|i| if i == 0 { "*".into() } else { format!("p{i}") }).collect();
            let x = ASet::new("X", Base::Monogenic, names, vec![f.clone()]).map_err(|e| e.to_string())?;
            for k in 1..=3 {
                let image: BTreeSet<usize> = (0..n).map(|e| (0..k).fold(e, |v, _| f[v])).collect();
                let formula = n - image.len();
                let t = tor1_monogenic(&x, k).map_err(|e| e.to_string())?;
                ensure(t.formula_rank == formula && t.graph_rank == formula, || format!("{f:?}, k={k}: {t:?}"))?;
                let h = hurewicz_compare(&x, k, 4).map_err(|e| e.to_string())?;
                ensure(h.h1 == AbelianGroup::free(formula), || format!("{f:?}, k={k}: H1 = {}", h.h1))?;
                ensure(h.higher.iter().all(|g| g.is_trivial()), || format!("{f:?}, k={k}: higher homology {:?}", h.higher))?;
                cases += 1;
            }
        }
    }
    ensure(cases > 1000, || format!("only {cases} cases"))
}

fn c9_extensions() -> Check {
    let mut by_base: BTreeMap<String, Vec<ASet>> = BTreeMap::new();
    for (_, o) in corpus() {
        if let Object::ASet(x) = o {
            if x.base.as_finite().is_some() && x.len() <= 5 {
                by_base.entry(x.base.name()).or_default().push(x);
            }
        }
    }
    for a in [truncated(2), truncated(3)] {
        let a = Arc::new(a);
        for n in 1..=3 {
            by_base.entry(format!("enumerated {}", a.name)).or_default().extend(enumerate_asets(&a, n).map_err(|e| e.to_string())?);
        }
    }
    let mut pairs = 0;
    for xs in by_base.values() {
        for x in xs {
            for y in xs {
                let n = ext_count(x, y, CAP).map_err(|e| e.to_string())?;
                let b = ext_bruteforce(x, y, CAP).map_err(|e| e.to_string())?.len();
                ensure(n == b, || format!("Ext({}, {}): {n} vs brute force {b}", x.name, y.name))?;
                pairs += 1;
            }
        }
    }
    ensure(pairs >= 20, || format!("only {pairs} pairs"))?;
    let a = Arc::new(truncated(2));
    let k = ASet::new("k", Base::Finite(a.clone()), vec!["*".into(), "u".into()], vec![vec![0, 0]]).unwrap();
    let n = ext_count(&k, &k, CAP).map_err(|e| e.to_string())?;
    ensure(n == 2, || format!("{n} extensions of k by k"))?;
    let r = sqz_enumerate(&k, CAP).map_err(|e| e.to_string())?;
    ensure(r.extensions == 2, || format!("{} square-zero extensions", r.extensions))?;
    let cube = truncated(3);
    let iso = r.cocycles.iter().filter(|f| sqz_monoid(&k, f).is_ok_and(|e| oracle_monoids_isomorphic(&e, &cube))).count();
    ensure(iso == 1, || format!("{iso} extensions isomorphic to F1[x]/(x^3)"))
}

fn c10_geometry() -> Check {
    let quadric = GluedScheme::affine(AffineMonoid::simple("xy=z2", vec![vec![1, 0], vec![1, 1], vec![1, 2]])).map_err(|e| e.to_string())?;
    let cl = quadric.class_group().map_err(|e| e.to_string())?;
    ensure(cl == AbelianGroup::cyclic(2), || format!("Cl(xy=z^2) = {cl}"))?;
    for n in 1..=4 {
        let t = Instant::now();
        let p = GluedScheme::projective_space(n).map_err(|e| e.to_string())?;
        let pic = p.pic().map_err(|e| e.to_string())?.pic;
        ensure(pic == AbelianGroup::free(1), || format!("Pic(P{n}) = {pic}"))?;
        ensure(t.elapsed() < P4_BUDGET, || format!("Pic(P{n}) took {:?}", t.elapsed()))?;
    }
    for n in 1..=5 {
        let cl = GluedScheme::glued_lines(n).and_then(|x| x.class_group()).map_err(|e| e.to_string())?;
        ensure(cl == AbelianGroup::free(n), || format!("{} lines: Cl = {cl}", n + 1))?;
    }
    let p1 = GluedScheme::projective_space(1).unwrap();
    let p2 = GluedScheme::projective_space(2).unwrap();
    let plane = GluedScheme::affine(AffineMonoid::simple("A2", vec![vec![1, 0], vec![0, 1]])).unwrap();
    for (a, b) in [(&quadric, &p1), (&p1, &p2), (&quadric, &quadric), (&plane, &p1)] {
        let prod = a.product(b).map_err(|e| e.to_string())?;
        let lhs = prod.class_group().map_err(|e| e.to_string())?;
        let rhs = a.class_group().unwrap().direct_sum(&b.class_group().unwrap());
        ensure(lhs == rhs, || format!("Cl({}) = {lhs}, sum {rhs}", prod.name))?;
    }
    let axes = AffineMonoid::new("axes", 2, vec![vec![1, 0], vec![0, 1]], vec![], Some(vec![vec![1, 1]]), 8).map_err(|e| e.to_string())?;
    let comps = axes.normalize_pc().map_err(|e| e.to_string())?;
    ensure(comps.len() == 2, || format!("{} components", comps.len()))?;
    let bases: BTreeSet<Vec<Vec<i64>>> = comps.iter().map(|(_, b)| b.clone()).collect();
    ensure(bases == BTreeSet::from([vec![vec![1, 0]], vec![vec![0, 1]]]), || format!("components {bases:?}"))
}

fn nonsplitting(n: usize) -> ExactSequence {
    let a = Arc::new(truncated(2 * n));
    let base = Base::Finite(a.clone());
    let reg = ASet::regular(a.clone());
    let len = 2 * n;
    // Y = A ∨ A' with x^n·1' = x^n
    let mut names = reg.names.clone();
    let mut act: Vec<usize> = reg.gen_act[0].clone();
    for i in 0..n {
        names.push(format!("x{i}'"));
        act.push(if i + 1 < n { len + 2 + i } else { a.index_of(&format!("x^{n}")).or_else(|| a.index_of("x")).unwrap() });
    }
    let y = ASet::new("Y", base.clone(), names, vec![act]).unwrap();
    let z_names: Vec<String> = std::iter::once("*".to_string()).chain((0..n).map(|i| format!("z{i}"))).collect();
    let z_act: Vec<usize> = (0..=n).map(|i| if i == 0 || i == n { 0 } else { i + 1 }).collect();
    let z = ASet::new("Z", base, z_names, vec![z_act]).unwrap();
    let f: Vec<usize> = (0..reg.len()).collect();
    let mut g = vec![0; reg.len()];
    g.extend(1..=n);
    ExactSequence { x: reg, y, z, f, g }
}

fn c11_sentinels() -> Check {
    let f1 = Arc::new(FiniteMonoid::f1());
    let p = ASet::regular(f1);
    let w = p.wedge(&p);
    let fold = vec![0, 1, 1];
    ensure(is_hom(&w, &p, &fold), || "fold is not a map".into())?;
    let kernel: Vec<usize> = (0..w.len()).filter(|&e| fold[e] == 0).collect();
    let injective = (0..w.len()).all(|a| (0..w.len()).all(|b| a == b || fold[a] != fold[b]));
    ensure(kernel == [0] && !injective && !is_admissible(&fold), || "fold map sentinel".into())?;
    for n in 1..=2 {
        let seq = nonsplitting(n);
        seq.validate().map_err(|e| format!("n={n}: {e}"))?;
        let r = split_check(&seq).map_err(|e| e.to_string())?;
        let retractions: Vec<Vec<usize>> = oracle_homs(&seq.y, &seq.x).into_iter().filter(|r| seq.f.iter().enumerate().all(|(i, &v)| r[v] == i)).collect();
        let sections: Vec<Vec<usize>> = oracle_homs(&seq.z, &seq.y).into_iter().filter(|s| (0..seq.z.len()).all(|i| seq.g[s[i]] == i)).collect();
        ensure(r.retraction.is_some() && !retractions.is_empty(), || format!("n={n}: no retraction"))?;
        ensure(retractions.iter().all(|r| !is_admissible(r)), || format!("n={n}: an admissible retraction exists"))?;
        ensure(r.section.is_none() && sections.is_empty(), || format!("n={n}: a section exists"))?;
        ensure(!r.middle_is_wedge, || format!("n={n}: Y is a wedge"))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("1 prime spectra", c1_mspec),
        ("2 rank vector", c2_rank),
        ("3 primary decomposition", c3_primary),
        ("4 K0 and K1", c4_k_theory),
        ("5 G0 and devissage", c5_g0),
        ("6 resolutions", c6_resolutions),
        ("7 Dold-Kan adjunction", c7_dold_kan),
        ("8 Tor1", c8_tor1),
        ("9 extensions", c9_extensions),
        ("10 geometry", c10_geometry),
        ("11 sentinels", c11_sentinels),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let t = Instant::now();
        let mut r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let dt = t.elapsed();
        if r.is_ok() && dt > BUDGET && !name.starts_with("10") {
            r = Err(format!("over budget: {dt:?}"));
        }
        match &r {
            Ok(()) => println!("PASS {name} ({:.2}s)", dt.as_secs_f64()),
            Err(e) => {
                println!("FAIL {name} ({:.2}s): {e}", dt.as_secs_f64());
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
