//! Affine monoids: finitely generated submonoids of a lattice, with optional torsion units
//! and an optional monomial ideal collapsed to zero.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{gcd_i64, in_row_lattice, kernel_basis, LatticeBasis, Matrix};

#[derive(Clone, Debug)]
pub struct AffineMonoid {
    pub name: String,
    /// Dimension of the ambient lattice.
    pub rank: usize,
    pub generators: Vec<Vec<i64>>,
    pub unit_torsion: Vec<i64>,
    pub monomial_ideal: Option<Vec<Vec<i64>>>,
    pub degree_bound: usize,
    lattice: LatticeBasis,
    gen_coords: Vec<Vec<i64>>,
    facets: Vec<Vec<i64>>,
}

impl PartialEq for AffineMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.rank == other.rank && self.generators == other.generators && self.unit_torsion == other.unit_torsion && self.monomial_ideal == other.monomial_ideal
    }
}

/// A face of the cone, recorded by the generators it contains and the facets cutting it out.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub generators: Vec<usize>,
    pub facets: Vec<usize>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(v: &mut [i64]) {
    let g = v.iter().fold(0, |acc, &x| gcd_i64(acc, x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

impl AffineMonoid {
    pub fn new(name: impl Into<String>, rank: usize, generators: Vec<Vec<i64>>, unit_torsion: Vec<i64>, monomial_ideal: Option<Vec<Vec<i64>>>, degree_bound: usize) -> Result<Self> {
        let name = name.into();
        for g in generators.iter().chain(monomial_ideal.iter().flatten()) {
            if g.len() != rank {
                return Err(Error::Invalid(format!("{name}: vector {g:?} does not have length {rank}")));
            }
        }
        if unit_torsion.iter().any(|&t| t < 1) {
            return Err(Error::Invalid(format!("{name}: unit group orders must be positive")));
        }
        let lattice = LatticeBasis::new(&generators, rank);
        let gen_coords: Vec<Vec<i64>> = generators.iter().map(|g| lattice.coords(g).expect("generator lies in its own lattice")).collect();
        let facets = compute_facets(&gen_coords, lattice.rank());
        let m = AffineMonoid { name, rank, generators, unit_torsion, monomial_ideal, degree_bound, lattice, gen_coords, facets };
        if let Some(ideal) = &m.monomial_ideal {
            for i in ideal {
                if !m.contains_monoid(i)? {
                    return Err(Error::NotAnIdeal(format!("{i:?} is not in {}", m.name)));
                }
            }
        }
        Ok(m)
    }

    pub fn simple(name: &str, generators: Vec<Vec<i64>>) -> Self {
        let rank = generators.first().map(|g| g.len()).unwrap_or(0);
        AffineMonoid::new(name, rank, generators, vec![], None, crate::util::DEFAULT_DEGREE_BOUND).expect("valid affine monoid")
    }

    pub fn span_rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn lattice(&self) -> &LatticeBasis {
        &self.lattice
    }

    /// True when the generators span the whole ambient lattice as a group.
    pub fn group_is_ambient(&self) -> bool {
        self.span_rank() == self.rank && (0..self.rank).all(|i| {
            let mut e = vec![0; self.rank];
            e[i] = 1;
            self.lattice.coords(&e).is_some()
        })
    }

    pub fn coords(&self, a: &[i64]) -> Option<Vec<i64>> {
        self.lattice.coords(a)
    }

    pub fn in_group(&self, a: &[i64]) -> bool {
        self.coords(a).is_some()
    }

    /// Primitive inner facet normals in lattice coordinates.
    pub fn facets(&self) -> &[Vec<i64>] {
        &self.facets
    }

    /// Facet normals as functionals on the ambient lattice; needs the group to be ambient.
    pub fn ambient_facets(&self) -> Option<Vec<Vec<i64>>> {
        if !self.group_is_ambient() {
            return None;
        }
        // n_amb . b_i = n . e_i for the lattice basis b_i; e_j in basis coordinates gives n_amb_j = n . coords(e_j)
        let cols: Vec<Vec<i64>> = (0..self.rank)
            .map(|j| {
                let mut e = vec![0; self.rank];
                e[j] = 1;
                self.lattice.coords(&e).unwrap()
            })
            .collect();
        Some(self.facets.iter().map(|n| cols.iter().map(|c| dot(n, c)).collect()).collect())
    }

    pub fn facet_value(&self, facet: usize, a_coords: &[i64]) -> i64 {
        dot(&self.facets[facet], a_coords)
    }

    /// Generators lying on every facet.
    pub fn unit_generators(&self) -> Vec<usize> {
        (0..self.generators.len()).filter(|&i| self.facets.iter().all(|n| dot(n, &self.gen_coords[i]) == 0)).collect()
    }

    pub fn is_pointed(&self) -> bool {
        self.unit_generators().iter().all(|&i| self.generators[i].iter().all(|&x| x == 0))
    }

    /// Positive grading on a pointed cone.
    pub fn grading(&self) -> Vec<i64> {
        let mut w = vec![0; self.span_rank()];
        for n in &self.facets {
            for (wi, ni) in w.iter_mut().zip(n) {
                *wi += ni;
            }
        }
        w
    }

    fn in_cone_coords(&self, c: &[i64]) -> bool {
        self.facets.iter().all(|n| dot(n, c) >= 0) && (self.span_rank() > 0 || c.is_empty())
    }

    /// Lattice point of the saturation `cone ∩ gp(A)`.
    pub fn in_normalization(&self, a: &[i64]) -> bool {
        self.coords(a).is_some_and(|c| self.in_cone_coords(&c))
    }

    /// Membership in the monoid itself (ignoring any monomial ideal).
    pub fn contains_monoid(&self, a: &[i64]) -> Result<bool> {
        let Some(c) = self.coords(a) else { return Ok(false) };
        if !self.in_cone_coords(&c) {
            return Ok(false);
        }
        if self.is_pointed() {
            let w = self.grading();
            let mut failed = HashSet::new();
            Ok(self.reach(&c, &w, &mut failed))
        } else {
            self.contains_bounded(&c)
        }
    }

    fn reach(&self, c: &[i64], w: &[i64], failed: &mut HashSet<Vec<i64>>) -> bool {
        if c.iter().all(|&x| x == 0) {
            return true;
        }
        if failed.contains(c) {
            return false;
        }
        for g in &self.gen_coords {
            if dot(w, g) <= 0 {
                continue;
            }
            let r: Vec<i64> = c.iter().zip(g).map(|(a, b)| a - b).collect();
            if self.in_cone_coords(&r) && self.reach(&r, w, failed) {
                return true;
            }
        }
        failed.insert(c.to_vec());
        false
    }

    fn contains_bounded(&self, c: &[i64]) -> Result<bool> {
        let mut frontier: HashSet<Vec<i64>> = HashSet::from([vec![0; self.span_rank()]]);
        let mut seen = frontier.clone();
        for _ in 0..=self.degree_bound {
            if seen.contains(c) {
                return Ok(true);
            }
            let mut next = HashSet::new();
            for p in &frontier {
                for g in &self.gen_coords {
                    let q: Vec<i64> = p.iter().zip(g).map(|(a, b)| a + b).collect();
                    if seen.insert(q.clone()) {
                        next.insert(q);
                    }
                }
            }
            frontier = next;
        }
        if seen.contains(c) {
            return Ok(true);
        }
        Err(Error::BoundExceeded(format!("membership of {:?} in {} undecided within degree {}", self.lattice.from_coords(c), self.name, self.degree_bound)))
    }

    /// Membership in `A / I`: in the monoid and outside the ideal.
    pub fn contains(&self, a: &[i64]) -> Result<bool> {
        if !self.contains_monoid(a)? {
            return Ok(false);
        }
        Ok(!self.in_ideal(a)?)
    }

    pub fn in_ideal(&self, a: &[i64]) -> Result<bool> {
        let Some(ideal) = &self.monomial_ideal else { return Ok(false) };
        for i in ideal {
            let d: Vec<i64> = a.iter().zip(i).map(|(x, y)| x - y).collect();
            if self.contains_monoid(&d)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// All faces, from the smallest up, each given by the generators it contains.
    pub fn faces(&self) -> Vec<Face> {
        let k = self.facets.len();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        let on = |f: usize, g: usize| dot(&self.facets[f], &self.gen_coords[g]) == 0;
        let mut stack: Vec<Vec<usize>> = vec![vec![]];
        let mut visited: HashSet<Vec<usize>> = HashSet::new();
        while let Some(fs) = stack.pop() {
            if !visited.insert(fs.clone()) {
                continue;
            }
            let gens: Vec<usize> = (0..self.generators.len()).filter(|&g| fs.iter().all(|&f| on(f, g))).collect();
            if seen.insert(gens.clone()) {
                let facets: Vec<usize> = (0..k).filter(|&f| gens.iter().all(|&g| on(f, g))).collect();
                out.push(Face { generators: gens, facets: facets.clone() });
                for f in 0..k {
                    if !facets.contains(&f) {
                        let mut nf = facets.clone();
                        nf.push(f);
                        nf.sort();
                        stack.push(nf);
                    }
                }
            }
        }
        out.sort_by(|a, b| (a.generators.len(), &a.generators).cmp(&(b.generators.len(), &b.generators)));
        out
    }

    /// Smallest face containing a point given in lattice coordinates.
    fn face_of(&self, c: &[i64]) -> Vec<usize> {
        let fs: Vec<usize> = (0..self.facets.len()).filter(|&f| dot(&self.facets[f], c) == 0).collect();
        (0..self.generators.len()).filter(|&g| fs.iter().all(|&f| dot(&self.facets[f], &self.gen_coords[g]) == 0)).collect()
    }

    /// Lattice points of the cone with grade at most `max_grade`, sorted by grade.
    fn cone_points(&self, max_grade: i64) -> Result<Vec<Vec<i64>>> {
        let r = self.span_rank();
        let w = self.grading();
        let wmin = self.gen_coords.iter().map(|g| dot(&w, g)).filter(|&x| x > 0).min().unwrap_or(1);
        let lam = max_grade / wmin + 1;
        let bounds: Vec<i64> = (0..r).map(|j| lam * self.gen_coords.iter().map(|g| g[j].abs()).max().unwrap_or(0)).collect();
        let total: f64 = bounds.iter().map(|&b| (2 * b + 1) as f64).product();
        if total > 4e6 {
            return Err(Error::BoundExceeded(format!("cone enumeration for {} needs {total} points", self.name)));
        }
        let mut out = Vec::new();
        let mut cur = vec![0i64; r];
        fn rec(j: usize, cur: &mut Vec<i64>, bounds: &[i64], f: &mut dyn FnMut(&[i64])) {
            if j == cur.len() {
                f(cur);
                return;
            }
            for v in -bounds[j]..=bounds[j] {
                cur[j] = v;
                rec(j + 1, cur, bounds, f);
            }
        }
        rec(0, &mut cur, &bounds, &mut |p: &[i64]| {
            let gr = dot(&w, p);
            if gr > 0 && gr <= max_grade && self.in_cone_coords(p) {
                out.push(p.to_vec());
            }
        });
        out.sort_by_key(|p| (dot(&w, p), p.clone()));
        Ok(out)
    }

    fn zonotope_grade(&self) -> i64 {
        let w = self.grading();
        self.gen_coords.iter().map(|g| dot(&w, g)).sum::<i64>().max(1)
    }

    fn require_pointed(&self, what: &str) -> Result<()> {
        if self.is_pointed() {
            Ok(())
        } else {
            Err(Error::UnsupportedBackend(format!("{what} needs a pointed cone; {} has units", self.name)))
        }
    }

    /// Hilbert basis of the normalization, in ambient coordinates.
    pub fn normalization_basis(&self) -> Result<Vec<Vec<i64>>> {
        self.require_pointed("normalization")?;
        let w = self.grading();
        let pts = self.cone_points(self.zonotope_grade())?;
        let mut irr: Vec<Vec<i64>> = Vec::new();
        for p in pts {
            let reducible = irr.iter().any(|h| {
                let d: Vec<i64> = p.iter().zip(h).map(|(a, b)| a - b).collect();
                dot(&w, &d) > 0 && self.in_cone_coords(&d)
            });
            if !reducible {
                irr.push(p);
            }
        }
        Ok(irr.iter().map(|c| self.lattice.from_coords(c)).collect())
    }

    /// First normalization basis element outside the monoid, if any.
    pub fn normality_witness(&self) -> Result<Option<Vec<i64>>> {
        for b in self.normalization_basis()? {
            if !self.contains_monoid(&b)? {
                return Ok(Some(b));
            }
        }
        Ok(None)
    }

    pub fn is_normal(&self) -> Result<bool> {
        Ok(self.normality_witness()?.is_none())
    }

    fn in_seminormalization_coords(&self, c: &[i64]) -> bool {
        if !self.in_cone_coords(c) {
            return false;
        }
        let face = self.face_of(c);
        let gens: Vec<Vec<i64>> = face.iter().map(|&g| self.gen_coords[g].clone()).collect();
        in_row_lattice(&gens, c)
    }

    pub fn in_seminormalization(&self, a: &[i64]) -> bool {
        self.coords(a).is_some_and(|c| self.in_seminormalization_coords(&c))
    }

    /// Atoms of the seminormalization, in ambient coordinates.
    pub fn seminormalization_basis(&self) -> Result<Vec<Vec<i64>>> {
        self.require_pointed("seminormalization")?;
        let w = self.grading();
        let pts = self.cone_points(2 * self.zonotope_grade())?;
        let mut irr: Vec<Vec<i64>> = Vec::new();
        for p in pts.into_iter().filter(|p| self.in_seminormalization_coords(p)) {
            let reducible = irr.iter().any(|h| {
                let d: Vec<i64> = p.iter().zip(h).map(|(a, b)| a - b).collect();
                dot(&w, &d) > 0 && self.in_seminormalization_coords(&d)
            });
            if !reducible {
                irr.push(p);
            }
        }
        Ok(irr.iter().map(|c| self.lattice.from_coords(c)).collect())
    }

    pub fn seminormality_witness(&self) -> Result<Option<Vec<i64>>> {
        for b in self.seminormalization_basis()? {
            if !self.contains_monoid(&b)? {
                return Ok(Some(b));
            }
        }
        Ok(None)
    }

    pub fn is_seminormal(&self) -> Result<bool> {
        Ok(self.seminormality_witness()?.is_none())
    }

    /// The submonoid on a face.
    pub fn face_monoid(&self, face: &Face) -> AffineMonoid {
        let gens: Vec<Vec<i64>> = face.generators.iter().map(|&g| self.generators[g].clone()).collect();
        let names: Vec<String> = face.generators.iter().map(|g| g.to_string()).collect();
        AffineMonoid::new(format!("{}|{{{}}}", self.name, names.join(",")), self.rank, gens, self.unit_torsion.clone(), None, self.degree_bound).expect("face of a valid monoid")
    }

    /// Normalization of `A/I`: the normalized face monoids of the maximal faces missing `I`.
    pub fn normalize_pc(&self) -> Result<Vec<(Face, Vec<Vec<i64>>)>> {
        let ideal = self.monomial_ideal.clone().unwrap_or_default();
        let faces = self.faces();
        let coords: Vec<Vec<i64>> = ideal.iter().map(|i| self.coords(i).expect("ideal element lies in the group")).collect();
        let misses = |f: &Face| coords.iter().all(|c| f.facets.iter().any(|&fi| self.facet_value(fi, c) > 0));
        let ok: Vec<&Face> = faces.iter().filter(|f| misses(f)).collect();
        let maximal: Vec<&Face> = ok.iter().copied().filter(|f| !ok.iter().any(|g| g.generators.len() > f.generators.len() && f.generators.iter().all(|x| g.generators.contains(x)))).collect();
        let mut out = Vec::new();
        for f in maximal {
            let fm = self.face_monoid(f);
            let nb = if fm.generators.iter().all(|g| g.iter().all(|&x| x == 0)) { vec![] } else { fm.normalization_basis()? };
            out.push((f.clone(), nb));
        }
        Ok(out)
    }

    /// Facet normals, rendered in ambient coordinates when possible.
    pub fn facet_labels(&self) -> Vec<String> {
        match self.ambient_facets() {
            Some(fs) => fs.iter().map(|f| format!("{f:?}")).collect(),
            None => self.facets.iter().map(|f| format!("{f:?}*")).collect(),
        }
    }
}

/// Uniformizer data for one facet prime.
#[derive(Clone, Debug, Serialize)]
pub struct DvReport {
    pub facet: String,
    pub normal: bool,
    /// Element of valuation one, in ambient coordinates.
    pub uniformizer: Vec<i64>,
    pub uniformizer_in_localization: bool,
    pub checked: usize,
    /// Window points where the localization and the valuation ring disagree, or that fail to factor.
    pub failures: Vec<Vec<i64>>,
    pub holds: bool,
}

/// Membership in `A` against membership in every valuation ring `A_p`.
#[derive(Clone, Debug, Serialize)]
pub struct IntersectionReport {
    pub checked: usize,
    pub failures: Vec<Vec<i64>>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitGroup {
    pub lattice_rank: usize,
    pub torsion: Vec<i64>,
}

impl AffineMonoid {
    pub fn normalize_affine(&self) -> Result<AffineMonoid> {
        let basis = self.normalization_basis()?;
        AffineMonoid::new(format!("{}_nor", self.name), self.rank, basis, self.unit_torsion.clone(), None, self.degree_bound)
    }

    pub fn seminormalize(&self) -> Result<AffineMonoid> {
        let basis = self.seminormalization_basis()?;
        AffineMonoid::new(format!("{}_sn", self.name), self.rank, basis, self.unit_torsion.clone(), None, self.degree_bound)
    }

    pub fn units(&self) -> UnitGroup {
        let gens: Vec<Vec<i64>> = self.unit_generators().iter().map(|&g| self.generators[g].clone()).collect();
        UnitGroup { lattice_rank: crate::linalg::lattice_rank(&gens, self.rank), torsion: self.unit_torsion.clone() }
    }

    /// `A ∧ B` inside the product lattice.
    pub fn product(&self, other: &AffineMonoid) -> AffineMonoid {
        let r = self.rank + other.rank;
        let mut gens = Vec::new();
        for g in &self.generators {
            let mut v = g.clone();
            v.resize(r, 0);
            gens.push(v);
        }
        for g in &other.generators {
            let mut v = vec![0; self.rank];
            v.extend(g);
            gens.push(v);
        }
        let mut torsion = self.unit_torsion.clone();
        torsion.extend(&other.unit_torsion);
        AffineMonoid::new(format!("{}x{}", self.name, other.name), r, gens, torsion, None, self.degree_bound.max(other.degree_bound)).expect("product of valid monoids")
    }

    /// Localization at the face of facet `f`: `a + k σ ∈ A` for `σ` the sum of the face generators.
    pub fn in_facet_localization(&self, f: usize, a: &[i64]) -> Result<bool> {
        let Some(c) = self.coords(a) else { return Ok(false) };
        let mut sigma = vec![0; self.span_rank()];
        for g in &self.gen_coords {
            if dot(&self.facets[f], g) == 0 {
                sigma.iter_mut().zip(g).for_each(|(s, x)| *s += x);
            }
        }
        let k = self.degree_bound as i64;
        let shifted: Vec<i64> = c.iter().zip(&sigma).map(|(x, s)| x + k * s).collect();
        self.contains_monoid(&self.lattice.from_coords(&shifted))
    }

    /// Lattice points of the group with ambient coordinates in `[-radius, radius]`.
    pub fn window(&self, radius: i64) -> Result<Vec<Vec<i64>>> {
        let total = ((2 * radius + 1) as f64).powi(self.rank as i32);
        if total > 2e5 {
            return Err(Error::BoundExceeded(format!("window of {total} points")));
        }
        let mut out = Vec::new();
        let mut cur = vec![-radius; self.rank];
        loop {
            if self.in_group(&cur) {
                out.push(cur.clone());
            }
            let mut i = 0;
            loop {
                if i == self.rank {
                    return Ok(out);
                }
                cur[i] += 1;
                if cur[i] <= radius {
                    break;
                }
                cur[i] = -radius;
                i += 1;
            }
        }
    }

    /// `A_p` is a discrete valuation monoid for the facet prime `p`, checked on a window.
    pub fn dv_check(&self, f: usize, radius: i64) -> Result<DvReport> {
        if f >= self.facets.len() {
            return Err(Error::Invalid(format!("{} has {} facets", self.name, self.facets.len())));
        }
        let normal = self.is_normal()?;
        let n = &self.facets[f];
        let sm = crate::linalg::smith(&Matrix::from_rows(&[n.clone()], n.len()));
        let mut pi: Vec<i64> = (0..n.len()).map(|i| sm.v.get(i, 0)).collect();
        if dot(n, &pi) < 0 {
            pi.iter_mut().for_each(|x| *x = -*x);
        }
        debug_assert_eq!(dot(n, &pi), 1);
        let pi_amb = self.lattice.from_coords(&pi);
        let uniformizer_in_localization = self.in_facet_localization(f, &pi_amb)?;
        let mut failures = Vec::new();
        let pts = self.window(radius)?;
        for a in &pts {
            let c = self.coords(a).unwrap();
            let v = dot(n, &c);
            let loc = self.in_facet_localization(f, a)?;
            let ok = if loc != (v >= 0) {
                false
            } else if loc {
                let u: Vec<i64> = a.iter().zip(&pi_amb).map(|(x, p)| x - v * p).collect();
                let neg: Vec<i64> = u.iter().map(|x| -x).collect();
                self.in_facet_localization(f, &u)? && self.in_facet_localization(f, &neg)?
            } else {
                true
            };
            if !ok {
                failures.push(a.clone());
            }
        }
        let holds = uniformizer_in_localization && failures.is_empty();
        Ok(DvReport { facet: self.facet_labels()[f].clone(), normal, uniformizer: pi_amb, uniformizer_in_localization, checked: pts.len(), failures, holds })
    }

    /// `a ∈ A` exactly when `v_p(a) >= 0` for every facet, on a window.
    pub fn intersect_localizations_check(&self, radius: i64) -> Result<IntersectionReport> {
        let pts = self.window(radius)?;
        let mut failures = Vec::new();
        for a in &pts {
            if self.contains_monoid(a)? != self.in_normalization(a) {
                failures.push(a.clone());
            }
        }
        Ok(IntersectionReport { checked: pts.len(), holds: failures.is_empty(), failures })
    }
}

fn compute_facets(gens: &[Vec<i64>], r: usize) -> Vec<Vec<i64>> {
    if r == 0 {
        return vec![];
    }
    let nonzero: Vec<&Vec<i64>> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).collect();
    let mut out: BTreeSet<Vec<i64>> = BTreeSet::new();
    let k = nonzero.len();
    let mut idx: Vec<usize> = (0..r - 1).collect();
    if r - 1 > k {
        return vec![];
    }
    loop {
        let rows: Vec<Vec<i64>> = idx.iter().map(|&i| nonzero[i].clone()).collect();
        let m = if rows.is_empty() { Matrix::zeros(0, r) } else { Matrix::from_rows(&rows, r) };
        let ker = kernel_basis(&m);
        if ker.len() == 1 {
            let mut n = ker[0].clone();
            primitive(&mut n);
            let vals: Vec<i64> = nonzero.iter().map(|g| dot(&n, g)).collect();
            if vals.iter().all(|&v| v >= 0) && vals.iter().any(|&v| v > 0) {
                out.insert(n);
            } else if vals.iter().all(|&v| v <= 0) && vals.iter().any(|&v| v < 0) {
                out.insert(n.iter().map(|x| -x).collect());
            }
        }
        // next combination
        let mut i = idx.len();
        loop {
            if i == 0 {
                return out.into_iter().collect();
            }
            i -= 1;
            if idx[i] < k - (idx.len() - i) {
                idx[i] += 1;
                for j in i + 1..idx.len() {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        if idx.is_empty() {
            return out.into_iter().collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cusp_normalizes_to_naturals() {
        let a = AffineMonoid::simple("cusp", vec![vec![2], vec![3]]);
        assert_eq!(a.normalization_basis().unwrap(), vec![vec![1]]);
        assert_eq!(a.seminormalization_basis().unwrap(), vec![vec![1]]);
        assert_eq!(a.normality_witness().unwrap(), Some(vec![1]));
        assert!(a.contains_monoid(&[5]).unwrap());
        assert!(!a.contains_monoid(&[1]).unwrap());
    }

    #[test]
    fn seminormal_not_normal() {
        let a = AffineMonoid::simple("A+", vec![vec![1, 0], vec![0, 2], vec![1, 1]]);
        assert!(a.is_seminormal().unwrap());
        assert!(!a.is_normal().unwrap());
    }

    #[test]
    fn quadric_cone_facets() {
        let a = AffineMonoid::simple("xy=z2", vec![vec![1, 0], vec![1, 1], vec![1, 2]]);
        let mut f = a.ambient_facets().unwrap();
        f.sort();
        assert_eq!(f, vec![vec![0, 1], vec![2, -1]]);
        assert!(a.is_normal().unwrap());
        assert_eq!(a.faces().len(), 4);
    }

    #[test]
    fn dv_at_facets() {
        let n = AffineMonoid::simple("N", vec![vec![1]]);
        assert!(n.dv_check(0, 5).unwrap().holds);
        let q = AffineMonoid::simple("xy=z2", vec![vec![1, 0], vec![1, 1], vec![1, 2]]);
        for f in 0..2 {
            assert!(q.dv_check(f, 3).unwrap().holds);
        }
        assert!(q.intersect_localizations_check(4).unwrap().holds);
        let cusp = AffineMonoid::simple("cusp", vec![vec![2], vec![3]]);
        let r = cusp.dv_check(0, 5).unwrap();
        assert!(!r.holds && !r.normal);
        assert_eq!(cusp.intersect_localizations_check(5).unwrap().failures, vec![vec![1]]);
    }

    #[test]
    fn normalize_and_units() {
        let cusp = AffineMonoid::simple("cusp", vec![vec![2], vec![3]]);
        let nor = cusp.normalize_affine().unwrap();
        assert!(nor.is_normal().unwrap());
        assert_eq!(nor.normalize_affine().unwrap().generators, nor.generators);
        let a = AffineMonoid::simple("A+", vec![vec![1, 0], vec![0, 2], vec![1, 1]]);
        assert_eq!(a.seminormalize().unwrap().units(), a.units());
        let q = AffineMonoid::simple("xy=z2", vec![vec![1, 0], vec![1, 1], vec![1, 2]]);
        assert!(q.product(&AffineMonoid::simple("N", vec![vec![1]])).is_normal().unwrap());
    }
}
