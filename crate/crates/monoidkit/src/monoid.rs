//! Pointed commutative monoids: finite tables, presentations and basic constructions.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::affine::AffineMonoid;
use crate::util::{Partition, UnionFind};

/// A finite pointed commutative monoid given by its multiplication table.
///
/// Index 0 is the zero; index 1 is the identity unless the monoid is `{0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteMonoid {
    pub name: String,
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub generators: Vec<usize>,
}

/// One failed axiom in a candidate table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.detail)
    }
}

fn v(kind: &'static str, detail: String) -> Violation {
    Violation { kind, detail }
}

/// Check every axiom of a pointed commutative monoid on a raw table.
pub fn table_violations(elements: &[String], table: &[Vec<usize>], generators: &[usize]) -> Vec<Violation> {
    let n = elements.len();
    let mut out = Vec::new();
    if n == 0 {
        out.push(v("empty", "a pointed monoid has at least one element".into()));
        return out;
    }
    let mut names = HashSet::new();
    for e in elements {
        if !names.insert(e) {
            out.push(v("duplicate-name", e.clone()));
        }
    }
    if table.len() != n || table.iter().any(|r| r.len() != n) {
        out.push(v("shape", format!("table must be {n}x{n}")));
        return out;
    }
    for (i, r) in table.iter().enumerate() {
        for (j, &x) in r.iter().enumerate() {
            if x >= n {
                out.push(v("range", format!("{}*{} = {x}", elements[i], elements[j])));
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    for &g in generators {
        if g >= n {
            out.push(v("range", format!("generator index {g}")));
            return out;
        }
    }
    let zero = (0..n).find(|&z| (0..n).all(|a| table[z][a] == z && table[a][z] == z));
    let one = (0..n).find(|&u| (0..n).all(|a| table[u][a] == a && table[a][u] == a));
    if zero.is_none() {
        out.push(v("zero", "no absorbing element".into()));
    }
    if one.is_none() {
        out.push(v("identity", "no identity element".into()));
    }
    for a in 0..n {
        for b in 0..a {
            if table[a][b] != table[b][a] {
                out.push(v("commutativity", format!("{}*{} != {}*{}", elements[a], elements[b], elements[b], elements[a])));
            }
        }
    }
    'assoc: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    out.push(v("associativity", format!("({}*{})*{}", elements[a], elements[b], elements[c])));
                    break 'assoc;
                }
            }
        }
    }
    if let (Some(z), Some(u)) = (zero, one) {
        let mut seen = vec![false; n];
        seen[u] = true;
        seen[z] = true;
        let mut q = VecDeque::from([u]);
        while let Some(x) = q.pop_front() {
            for &g in generators {
                let y = table[x][g];
                if !seen[y] {
                    seen[y] = true;
                    q.push_back(y);
                }
            }
        }
        for (i, s) in seen.iter().enumerate() {
            if !s {
                out.push(v("generation", format!("{} is not a product of generators", elements[i])));
            }
        }
    }
    out
}

impl FiniteMonoid {
    /// Validate and reorder so that zero comes first and the identity second.
    pub fn new(name: impl Into<String>, elements: Vec<String>, table: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<Self> {
        let viol = table_violations(&elements, &table, &generators);
        if let Some(first) = viol.first() {
            return Err(Error::Invalid(first.to_string()));
        }
        let n = elements.len();
        let zero = (0..n).find(|&z| (0..n).all(|a| table[z][a] == z)).unwrap();
        let one = (0..n).find(|&u| (0..n).all(|a| table[u][a] == a)).unwrap();
        let mut order = vec![zero];
        if one != zero {
            order.push(one);
        }
        order.extend((0..n).filter(|&i| i != zero && i != one));
        let mut pos = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let elements = order.iter().map(|&o| elements[o].clone()).collect();
        let table = order.iter().map(|&a| order.iter().map(|&b| pos[table[a][b]]).collect()).collect();
        let mut gens = Vec::new();
        for g in generators {
            let g = pos[g];
            if g > 1 && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(FiniteMonoid { name: name.into(), elements, table, generators: gens })
    }

    /// Build from a table with no generators given; a generating set is chosen greedily.
    pub fn from_table(name: impl Into<String>, elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let all: Vec<usize> = (0..elements.len()).collect();
        let mut m = FiniteMonoid::new(name, elements, table, all)?;
        m.generators = greedy_generators(&m.table);
        Ok(m)
    }

    /// The field with one element, `{0, 1}`.
    pub fn f1() -> Self {
        FiniteMonoid { name: "F1".into(), elements: vec!["0".into(), "1".into()], table: vec![vec![0, 0], vec![0, 1]], generators: vec![] }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        if self.len() == 1 {
            0
        } else {
            1
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.one(), |acc, _| self.mul(acc, a))
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn name_of(&self, a: usize) -> &str {
        &self.elements[a]
    }

    /// Resolve an element by name or by a word in the generator names.
    pub fn parse_element(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        if let Some(i) = self.index_of(s) {
            return Ok(i);
        }
        let gen_names: Vec<String> = self.generators.iter().map(|&g| self.elements[g].clone()).collect();
        match parse_term(s, &gen_names)? {
            Term::Zero => Ok(0),
            Term::Mono(exps) => {
                let mut acc = self.one();
                for (i, &e) in exps.iter().enumerate() {
                    acc = self.mul(acc, self.pow(self.generators[i], e as usize));
                }
                Ok(acc)
            }
        }
    }

    /// For each element a shortest word in generator positions, found breadth first from 1.
    pub fn words(&self) -> Vec<Option<Vec<usize>>> {
        let n = self.len();
        let mut w: Vec<Option<Vec<usize>>> = vec![None; n];
        w[self.one()] = Some(vec![]);
        let mut q = VecDeque::from([self.one()]);
        while let Some(x) = q.pop_front() {
            for (gi, &g) in self.generators.iter().enumerate() {
                let y = self.mul(x, g);
                if w[y].is_none() {
                    let mut word = w[x].clone().unwrap();
                    word.push(gi);
                    w[y] = Some(word);
                    q.push_back(y);
                }
            }
        }
        w
    }

    pub fn units(&self) -> Vec<usize> {
        let one = self.one();
        (0..self.len()).filter(|&a| (0..self.len()).any(|b| self.mul(a, b) == one)).collect()
    }

    pub fn is_unit(&self, a: usize) -> bool {
        (0..self.len()).any(|b| self.mul(a, b) == self.one())
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.mul(a, a) == a).collect()
    }

    pub fn is_nilpotent(&self, a: usize) -> bool {
        self.pow(a, self.len()) == 0
    }

    pub fn nilpotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.is_nilpotent(a)).collect()
    }

    /// A pair `a != b` with `a^2 = b^2` and `a^3 = b^3`, if any.
    pub fn reduced_witness(&self) -> Option<(usize, usize)> {
        for b in 0..self.len() {
            for a in 0..b {
                if self.pow(a, 2) == self.pow(b, 2) && self.pow(a, 3) == self.pow(b, 3) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced_witness().is_none()
    }

    /// A triple `(a, b, c)` with `a != 0`, `b != c` and `ab = ac`, if any.
    pub fn cancellative_witness(&self) -> Option<(usize, usize, usize)> {
        for a in 1..self.len() {
            for b in 0..self.len() {
                for c in 0..b {
                    if self.mul(a, b) == self.mul(a, c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_cancellative(&self) -> bool {
        self.cancellative_witness().is_none()
    }

    pub fn has_zero_divisors(&self) -> bool {
        (1..self.len()).any(|a| (1..self.len()).any(|b| self.mul(a, b) == 0))
    }

    /// Submonoid generated by `gens` (always contains 0 and 1).
    pub fn submonoid(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        seen[self.one()] = true;
        let mut q = VecDeque::from([self.one()]);
        while let Some(x) = q.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    q.push_back(y);
                }
            }
        }
        (0..self.len()).filter(|&i| seen[i]).collect()
    }

    /// Multiplicatively closed set generated by `gens`, without 0 unless forced.
    pub fn multiplicative_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[self.one()] = true;
        let mut q = VecDeque::from([self.one()]);
        while let Some(x) = q.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    q.push_back(y);
                }
            }
        }
        (0..self.len()).filter(|&i| seen[i]).collect()
    }

    /// Quotient by an equivalence relation that must be a congruence.
    pub fn quotient(&self, p: &Partition, name: impl Into<String>) -> Result<FiniteMonoid> {
        let reps = p.representatives();
        let table: Vec<Vec<usize>> = reps.iter().map(|&a| reps.iter().map(|&b| p.class_of[self.mul(a, b)]).collect()).collect();
        for a in 0..self.len() {
            for b in 0..self.len() {
                if p.class_of[self.mul(a, b)] != table[p.class_of[a]][p.class_of[b]] {
                    return Err(Error::NotACongruence(format!("product {}*{}", self.elements[a], self.elements[b])));
                }
            }
        }
        let elements: Vec<String> = reps.iter().map(|&r| self.elements[r].clone()).collect();
        let gens = self.generators.iter().map(|&g| p.class_of[g]).collect();
        if p.count == 1 {
            return Ok(FiniteMonoid { name: name.into(), elements: vec!["0".into()], table, generators: vec![] });
        }
        FiniteMonoid::new(name, elements, table, gens)
    }

    /// Congruence generated by `pairs`.
    pub fn congruence_closure(&self, pairs: &[(usize, usize)]) -> Partition {
        let mut uf = UnionFind::new(self.len());
        let mut q: VecDeque<(usize, usize)> = pairs.iter().copied().collect();
        while let Some((a, b)) = q.pop_front() {
            if uf.union(a, b) {
                for &g in &self.generators {
                    q.push_back((self.mul(a, g), self.mul(b, g)));
                }
            }
        }
        uf.partition()
    }

    /// Rees quotient `A/I` collapsing an ideal to zero.
    pub fn rees_quotient(&self, ideal: &[usize]) -> Result<FiniteMonoid> {
        let mut labels: Vec<usize> = (0..self.len()).collect();
        for &i in ideal {
            labels[i] = 0;
        }
        for &i in ideal {
            for a in 0..self.len() {
                if !ideal.contains(&self.mul(a, i)) && self.mul(a, i) != 0 {
                    return Err(Error::NotAnIdeal(self.elements[i].clone()));
                }
            }
        }
        let p = Partition::from_labels(&labels);
        let name = format!("{}/({})", self.name, ideal.iter().filter(|&&i| i != 0).map(|&i| self.elements[i].as_str()).collect::<Vec<_>>().join(","));
        self.quotient(&p, name)
    }

    /// Smash product `A ^ B`, the tensor product over F1.
    pub fn smash(&self, other: &FiniteMonoid) -> FiniteMonoid {
        let mut pairs = vec![(0usize, 0usize)];
        let mut idx = HashMap::new();
        for a in 1..self.len() {
            for b in 1..other.len() {
                idx.insert((a, b), pairs.len());
                pairs.push((a, b));
            }
        }
        let n = pairs.len();
        let mut table = vec![vec![0; n]; n];
        for i in 1..n {
            for j in 1..n {
                let (a, b) = pairs[i];
                let (c, d) = pairs[j];
                let (x, y) = (self.mul(a, c), other.mul(b, d));
                table[i][j] = if x == 0 || y == 0 { 0 } else { idx[&(x, y)] };
            }
        }
        let elements: Vec<String> = pairs
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| if i == 0 { "0".to_string() } else { format!("{}^{}", self.elements[a], other.elements[b]) })
            .collect();
        let mut gens = Vec::new();
        if self.len() > 1 && other.len() > 1 {
            for &g in &self.generators {
                gens.push(idx[&(g, other.one())]);
            }
            for &g in &other.generators {
                gens.push(idx[&(self.one(), g)]);
            }
        }
        let name = format!("{}^{}", self.name, other.name);
        if n == 1 {
            return FiniteMonoid { name, elements, table, generators: vec![] };
        }
        FiniteMonoid::new(name, elements, table, gens).expect("smash product of monoids is a monoid")
    }

    /// Localization `S^-1 A` at the multiplicative closure of `s_gens`.
    ///
    /// Also returns the canonical map `A -> S^-1 A`.
    pub fn localize(&self, s_gens: &[usize]) -> Result<(FiniteMonoid, Vec<usize>)> {
        let s = self.multiplicative_closure(s_gens);
        if s.contains(&0) && self.len() > 1 {
            return Err(Error::ZeroInS);
        }
        let mut pairs = Vec::new();
        for &t in &s {
            for a in 0..self.len() {
                pairs.push((a, t));
            }
        }
        let related = |(a, t): (usize, usize), (b, w): (usize, usize)| s.iter().any(|&u| self.mul(self.mul(u, a), w) == self.mul(self.mul(u, b), t));
        let mut class_of = vec![usize::MAX; pairs.len()];
        let mut reps: Vec<usize> = Vec::new();
        for i in 0..pairs.len() {
            for (c, &r) in reps.iter().enumerate() {
                if related(pairs[i], pairs[r]) {
                    class_of[i] = c;
                    break;
                }
            }
            if class_of[i] == usize::MAX {
                class_of[i] = reps.len();
                reps.push(i);
            }
        }
        // classes hit by A first, then by their representative
        let one = self.one();
        let mut order: Vec<usize> = (0..reps.len()).collect();
        order.sort_by_key(|&c| {
            let (a, t) = pairs[reps[c]];
            let in_image = pairs.iter().enumerate().any(|(i, &(_, tt))| tt == one && class_of[i] == c);
            (!in_image, t, a)
        });
        let mut pos = vec![0; reps.len()];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let lookup: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, pos[class_of[i]])).collect();
        let n = reps.len();
        let mut table = vec![vec![0; n]; n];
        let mut elements = vec![String::new(); n];
        for (c, &r) in reps.iter().enumerate() {
            let (a, t) = pairs[r];
            elements[pos[c]] = if t == one { self.elements[a].clone() } else { format!("{}/{}", self.elements[a], self.elements[t]) };
        }
        for i in 0..n {
            for j in 0..n {
                let (a, t) = pairs[reps[order[i]]];
                let (b, w) = pairs[reps[order[j]]];
                table[i][j] = lookup[&(self.mul(a, b), self.mul(t, w))];
            }
        }
        let name = format!("{}[S^-1]", self.name);
        let map: Vec<usize> = (0..self.len()).map(|a| lookup[&(a, one)]).collect();
        if n == 1 {
            return Ok((FiniteMonoid { name, elements: vec!["0".into()], table, generators: vec![] }, map));
        }
        let mut m = FiniteMonoid::new(name, elements, table, (0..n).collect())?;
        m.generators = greedy_generators(&m.table);
        Ok((m, map))
    }
}

/// Greedy minimal generating set in element order.
pub fn greedy_generators(table: &[Vec<usize>]) -> Vec<usize> {
    let n = table.len();
    if n <= 1 {
        return vec![];
    }
    let mut gens: Vec<usize> = Vec::new();
    let mut reach = vec![false; n];
    let close = |gens: &[usize], reach: &mut Vec<bool>| {
        reach.iter_mut().for_each(|r| *r = false);
        reach[0] = true;
        reach[1] = true;
        let mut q = VecDeque::from([1usize]);
        while let Some(x) = q.pop_front() {
            for &g in gens {
                let y = table[x][g];
                if !reach[y] {
                    reach[y] = true;
                    q.push_back(y);
                }
            }
        }
    };
    close(&gens, &mut reach);
    for a in 2..n {
        if !reach[a] {
            gens.push(a);
            close(&gens, &mut reach);
        }
    }
    gens
}

impl fmt::Display for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({} elements)", self.name, self.len())?;
        let w = self.elements.iter().map(|e| e.len()).max().unwrap_or(1).max(1);
        write!(f, "{:>w$} |", "*")?;
        for e in &self.elements {
            write!(f, " {e:>w$}")?;
        }
        writeln!(f)?;
        for (i, e) in self.elements.iter().enumerate() {
            write!(f, "{e:>w$} |")?;
            for j in 0..self.len() {
                write!(f, " {:>w$}", self.elements[self.table[i][j]])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Any monoid the library can work with.
#[derive(Clone, Debug)]
pub enum MonoidValue {
    Finite(Arc<FiniteMonoid>),
    /// The free monoid `F1[t]` on one generator.
    Monogenic,
    Affine(Arc<AffineMonoid>),
}

impl MonoidValue {
    pub fn name(&self) -> String {
        match self {
            MonoidValue::Finite(m) => m.name.clone(),
            MonoidValue::Monogenic => "F1[t]".into(),
            MonoidValue::Affine(a) => a.name.clone(),
        }
    }

    pub fn as_finite(&self) -> Option<&Arc<FiniteMonoid>> {
        match self {
            MonoidValue::Finite(m) => Some(m),
            _ => None,
        }
    }
}

/// Group completion of an integral monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completion {
    Finite(FiniteMonoid),
    /// Finite torsion units times a free lattice.
    Lattice { torsion: Vec<i64>, rank: usize },
}

pub fn group_completion(m: &MonoidValue) -> Result<Completion> {
    match m {
        MonoidValue::Monogenic => Ok(Completion::Lattice { torsion: vec![], rank: 1 }),
        MonoidValue::Finite(a) => {
            if a.len() == 1 || a.has_zero_divisors() {
                return Err(Error::ZeroNotPrime);
            }
            let s: Vec<usize> = (1..a.len()).collect();
            Ok(Completion::Finite(a.localize(&s)?.0))
        }
        MonoidValue::Affine(a) => {
            if a.monomial_ideal.is_some() {
                return Err(Error::ZeroNotPrime);
            }
            Ok(Completion::Lattice { torsion: a.unit_torsion.clone(), rank: a.rank })
        }
    }
}

/// A side of a relation: zero or a monomial given by exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    Mono(Vec<u32>),
}

impl Term {
    fn degree(&self) -> u32 {
        match self {
            Term::Zero => 0,
            Term::Mono(e) => e.iter().sum(),
        }
    }
}

/// Parse `x^2y`, `x*y^3`, `1` or `0` over the given generator names.
pub fn parse_term(s: &str, gens: &[String]) -> Result<Term> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "0" {
        return Ok(Term::Zero);
    }
    let mut exps = vec![0u32; gens.len()];
    if s == "1" {
        return Ok(Term::Mono(exps));
    }
    if s.is_empty() {
        return Err(Error::BadWord("empty word".into()));
    }
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'*' {
            i += 1;
            continue;
        }
        let rest = &s[i..];
        let best = gens.iter().enumerate().filter(|(_, g)| !g.is_empty() && rest.starts_with(g.as_str())).max_by_key(|(_, g)| g.len());
        let Some((gi, g)) = best else {
            return Err(Error::BadWord(format!("unknown symbol at '{rest}' in '{s}'")));
        };
        i += g.len();
        let mut e = 1u32;
        if i < b.len() && b[i] == b'^' {
            i += 1;
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            e = s[start..i].parse().map_err(|_| Error::BadWord(format!("bad exponent in '{s}'")))?;
        }
        exps[gi] += e;
    }
    Ok(Term::Mono(exps))
}

pub fn parse_relation(s: &str, gens: &[String]) -> Result<(Term, Term)> {
    let parts: Vec<&str> = s.split('=').collect();
    if parts.len() != 2 {
        return Err(Error::BadWord(format!("relation '{s}' needs exactly one '='")));
    }
    Ok((parse_term(parts[0], gens)?, parse_term(parts[1], gens)?))
}

/// Name of a monomial, e.g. `x^2y` or `x1*x2`.
pub fn monomial_name(exps: &[u32], gens: &[String]) -> String {
    let sep = if gens.iter().any(|g| g.chars().count() > 1) { "*" } else { "" };
    let parts: Vec<String> = exps
        .iter()
        .zip(gens)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, g)| if e == 1 { g.clone() } else { format!("{g}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(sep)
    }
}

// degree ascending, then larger exponent on earlier generators first
fn shortlex_key(e: &[u32]) -> (u32, Vec<std::cmp::Reverse<u32>>) {
    (e.iter().sum(), e.iter().map(|&x| std::cmp::Reverse(x)).collect())
}

fn monomials_up_to(ngens: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; ngens];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort_by_key(|e| shortlex_key(e));
    out
}

/// Finite monoid presented by generators and relations, or `BoundExceeded` past `bound` elements.
pub fn build_from_presentation(name: &str, gens: &[String], relations: &[String], bound: usize) -> Result<FiniteMonoid> {
    let rels: Vec<(Term, Term)> = relations.iter().map(|r| parse_relation(r, gens)).collect::<Result<_>>()?;
    let k = gens.len();
    let maxdeg = rels.iter().map(|(l, r)| l.degree().max(r.degree())).max().unwrap_or(0);
    let dmax = bound as u32 + 2 * maxdeg + 2;
    for d in maxdeg.max(1)..=dmax {
        let monos = monomials_up_to(k, d);
        if monos.len() > 2_000_000 {
            break;
        }
        if let Some(m) = try_closure(name, gens, &rels, &monos, d)? {
            if m.len() > bound {
                return Err(Error::BoundExceeded(format!("{name} has {} > {bound} elements", m.len())));
            }
            return Ok(m);
        }
    }
    Err(Error::BoundExceeded(format!("{name}: no finite closure with at most {bound} elements")))
}

fn try_closure(name: &str, gens: &[String], rels: &[(Term, Term)], monos: &[Vec<u32>], d: u32) -> Result<Option<FiniteMonoid>> {
    let k = gens.len();
    let idx: HashMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let zero = monos.len();
    let node = |t: &Term| -> Option<usize> {
        match t {
            Term::Zero => Some(zero),
            Term::Mono(e) => idx.get(e).copied(),
        }
    };
    let times = |n: usize, g: usize| -> Option<usize> {
        if n == zero {
            return Some(zero);
        }
        let mut e = monos[n].clone();
        e[g] += 1;
        idx.get(&e).copied()
    };
    let mut uf = UnionFind::new(zero + 1);
    let mut q = VecDeque::new();
    for (l, r) in rels {
        // both sides live in the window because d >= max relation degree
        q.push_back((node(l).unwrap(), node(r).unwrap()));
    }
    while let Some((a, b)) = q.pop_front() {
        if uf.union(a, b) {
            for g in 0..k {
                if let (Some(x), Some(y)) = (times(a, g), times(b, g)) {
                    q.push_back((x, y));
                }
            }
        }
    }
    // first degree at which every monomial is equivalent to something shorter
    let deg = |n: usize| -> u32 { if n == zero { 0 } else { monos[n].iter().sum() } };
    let mut min_deg_of_root: HashMap<usize, u32> = HashMap::new();
    for n in 0..=zero {
        let r = uf.find(n);
        let e = min_deg_of_root.entry(r).or_insert(u32::MAX);
        *e = (*e).min(if n == zero { 0 } else { deg(n) });
    }
    let mut cut = None;
    for kdeg in 1..=d {
        let all_lower = (0..zero).filter(|&n| deg(n) == kdeg).all(|n| min_deg_of_root[&uf.find(n)] < kdeg);
        if all_lower {
            cut = Some(kdeg);
            break;
        }
    }
    let Some(cut) = cut else { return Ok(None) };
    // classes of monomials below the cut, plus zero
    let zroot = uf.find(zero);
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    class_of_root.insert(zroot, 0);
    let mut reps: Vec<Option<usize>> = vec![None];
    for n in 0..zero {
        if deg(n) >= cut {
            continue;
        }
        let r = uf.find(n);
        if let std::collections::hash_map::Entry::Vacant(e) = class_of_root.entry(r) {
            e.insert(reps.len());
            reps.push(Some(n));
        }
    }
    let count = reps.len();
    let mut act = vec![vec![0usize; count]; k];
    for g in 0..k {
        for c in 1..count {
            let n = reps[c].unwrap();
            let Some(y) = times(n, g) else { return Ok(None) };
            let Some(&cy) = class_of_root.get(&uf.find(y)) else { return Ok(None) };
            act[g][c] = cy;
        }
    }
    let mut table = vec![vec![0usize; count]; count];
    for (a, row) in table.iter_mut().enumerate() {
        for b in 1..count {
            let mut x = a;
            let e = &monos[reps[b].unwrap()];
            for (g, &ex) in e.iter().enumerate() {
                for _ in 0..ex {
                    x = act[g][x];
                }
            }
            row[b] = x;
        }
    }
    let mut elements = vec!["0".to_string()];
    for r in reps.iter().skip(1) {
        elements.push(monomial_name(&monos[r.unwrap()], gens));
    }
    let mut eval = |t: &Term| -> Option<usize> {
        match t {
            Term::Zero => Some(0),
            Term::Mono(e) => {
                let mut x = class_of_root.get(&uf.find(idx[&vec![0u32; k]])).copied()?;
                for (g, &ex) in e.iter().enumerate() {
                    for _ in 0..ex {
                        x = act[g][x];
                    }
                }
                Some(x)
            }
        }
    };
    if rels.iter().any(|(l, r)| eval(l) != eval(r)) {
        return Ok(None);
    }
    let gen_classes: Vec<usize> = (0..k)
        .map(|g| {
            let mut e = vec![0u32; k];
            e[g] = 1;
            class_of_root[&uf.find(idx[&e])]
        })
        .collect();
    if count == 1 {
        return Ok(Some(FiniteMonoid { name: name.into(), elements, table, generators: vec![] }));
    }
    if !table_violations(&elements, &table, &gen_classes).is_empty() {
        return Ok(None);
    }
    Ok(Some(FiniteMonoid::new(name, elements, table, gen_classes)?))
}

/// Convenience for tests and examples.
pub fn presented(name: &str, gens: &[&str], relations: &[&str]) -> FiniteMonoid {
    let g: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
    let r: Vec<String> = relations.iter().map(|s| s.to_string()).collect();
    build_from_presentation(name, &g, &r, 256).expect("presentation closes")
}

/// Truncated polynomial monoid `F1[x]/(x^n)`.
pub fn truncated(n: usize) -> FiniteMonoid {
    presented(&format!("F1[x]/(x^{n})"), &["x"], &[&format!("x^{n}=0")])
}

/// Pointed cyclic group of order `n`.
pub fn pointed_cyclic(n: usize) -> FiniteMonoid {
    presented(&format!("C{n}"), &["g"], &[&format!("g^{n}=1")])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotent_pair() {
        let m = presented("idem2", &["x", "y"], &["x^2=x", "y^2=y"]);
        assert_eq!(m.elements, vec!["0", "1", "x", "y", "xy"]);
        assert!(table_violations(&m.elements, &m.table, &m.generators).is_empty());
    }

    #[test]
    fn zero_monoid_has_one_element() {
        let m = presented("z", &["x"], &["1=0"]);
        assert_eq!(m.len(), 1);
        assert_eq!(m.one(), 0);
    }

    #[test]
    fn cancellation_witness() {
        let m = truncated(3);
        let (a, b, c) = m.cancellative_witness().unwrap();
        assert_eq!((m.name_of(a), m.name_of(b), m.name_of(c)), ("x", "x^2", "0"));
    }

    #[test]
    fn infinite_presentation_is_bounded() {
        let g = vec!["x".to_string(), "y".to_string()];
        let r = vec!["xy=0".to_string()];
        assert!(matches!(build_from_presentation("p", &g, &r, 10), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn not_reduced_with_zero_nilradical() {
        let g = vec!["x".to_string(), "y".to_string()];
        let r = vec!["x^2=y^2".to_string(), "x^3=y^3".to_string()];
        assert!(matches!(build_from_presentation("p", &g, &r, 30), Err(Error::BoundExceeded(_))));
        let m = presented("p", &["x", "y"], &["x^2=y^2", "x^3=y^3", "x^4=x^2"]);
        assert!(!m.is_reduced());
        assert!(m.nilpotents() == vec![m.zero()]);
    }

    #[test]
    fn bad_word() {
        let g = vec!["x".to_string()];
        assert!(matches!(parse_term("xq", &g), Err(Error::BadWord(_))));
    }

    #[test]
    fn localization_of_idempotent_pair() {
        let m = presented("idem2", &["x", "y"], &["x^2=x", "y^2=y"]);
        let x = m.index_of("x").unwrap();
        let (l, map) = m.localize(&[x]).unwrap();
        assert_eq!(map[x], 1);
        // inverting an idempotent makes it 1
        assert_eq!(l.elements, vec!["0", "1", "y"]);
    }
}
