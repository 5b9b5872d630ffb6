//! Monoid schemes glued from affine charts sharing one generic lattice `U × Z^d`.

use serde::Serialize;

use super::affine::AffineMonoid;
use crate::error::{Error, Result};
use crate::linalg::{cokernel, in_row_lattice, kernel_basis, lattice_quotient, AbelianGroup, Matrix};
use crate::util::{UnionFind, DEFAULT_DEGREE_BOUND};

/// How two charts meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Glue {
    /// Only along the common generic point.
    Generic,
    /// Along the monoid generated by both charts, as for the cones of a fan.
    Fan,
}

#[derive(Clone, Debug)]
pub struct Chart {
    pub monoid: AffineMonoid,
    /// Does the chart contain the torsion units `U`?  Localizations at non-units always do.
    pub torsion_units: bool,
}

#[derive(Clone, Debug)]
pub struct GluedScheme {
    pub name: String,
    pub lattice_rank: usize,
    pub unit_group: Vec<i64>,
    pub charts: Vec<Chart>,
    pub glue: Glue,
}

/// A height-one point: a facet of some chart, shared by every chart it lies in.
#[derive(Clone, Debug, Serialize)]
pub struct HeightOnePoint {
    pub label: String,
    /// Valuation on the generic lattice.
    pub valuation: Vec<i64>,
    pub charts: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PicReport {
    pub pic: AbelianGroup,
    /// Cartier data `(a_U)` generating the cocycles, lattice part only.
    pub cocycles: Vec<Vec<Vec<i64>>>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl GluedScheme {
    pub fn new(name: impl Into<String>, lattice_rank: usize, unit_group: Vec<i64>, charts: Vec<Chart>, glue: Glue) -> Result<Self> {
        let name = name.into();
        if charts.is_empty() {
            return Err(Error::Invalid(format!("{name} has no charts")));
        }
        for c in &charts {
            if c.monoid.rank != lattice_rank {
                return Err(Error::Invalid(format!("chart {} is not in Z^{lattice_rank}", c.monoid.name)));
            }
            if !c.monoid.group_is_ambient() {
                return Err(Error::Invalid(format!("chart {} does not generate the whole lattice", c.monoid.name)));
            }
        }
        if unit_group.iter().any(|&t| t < 1) {
            return Err(Error::Invalid("unit group orders must be positive".into()));
        }
        Ok(GluedScheme { name, lattice_rank, unit_group, charts, glue })
    }

    pub fn affine(m: AffineMonoid) -> Result<Self> {
        let units = m.unit_torsion.clone();
        GluedScheme::new(m.name.clone(), m.rank, units, vec![Chart { monoid: m, torsion_units: true }], Glue::Fan)
    }

    /// `P^n` from the standard charts `<x_j / x_i>` over the lattice with basis `x_j / x_0`.
    pub fn projective_space(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("projective space needs n >= 1".into()));
        }
        let e = |j: usize| -> Vec<i64> {
            let mut v = vec![0; n];
            if j > 0 {
                v[j - 1] = 1;
            }
            v
        };
        let charts = (0..=n)
            .map(|i| {
                let gens = (0..=n).filter(|&j| j != i).map(|j| e(j).iter().zip(e(i)).map(|(a, b)| a - b).collect()).collect();
                Chart { monoid: AffineMonoid::simple(&format!("U{i}"), gens), torsion_units: true }
            })
            .collect();
        GluedScheme::new(format!("P{n}"), n, vec![], charts, Glue::Fan)
    }

    /// `n + 1` affine lines glued along their generic point.
    pub fn glued_lines(n: usize) -> Result<Self> {
        let charts = (0..=n).map(|i| Chart { monoid: AffineMonoid::simple(&format!("L{i}"), vec![vec![1]]), torsion_units: true }).collect();
        GluedScheme::new(format!("lines{}", n + 1), 1, vec![], charts, Glue::Generic)
    }

    pub fn product(&self, other: &GluedScheme) -> Result<GluedScheme> {
        let multi = |s: &GluedScheme| s.charts.len() > 1 && s.glue == Glue::Generic;
        if multi(self) || multi(other) {
            return Err(Error::UnsupportedBackend("products are built for fan gluing only".into()));
        }
        let mut charts = Vec::new();
        for a in &self.charts {
            for b in &other.charts {
                if a.torsion_units != b.torsion_units {
                    return Err(Error::UnsupportedBackend("mixed torsion units in a product chart".into()));
                }
                charts.push(Chart { monoid: a.monoid.product(&b.monoid), torsion_units: a.torsion_units });
            }
        }
        let mut units = self.unit_group.clone();
        units.extend(&other.unit_group);
        GluedScheme::new(format!("{}x{}", self.name, other.name), self.lattice_rank + other.lattice_rank, units, charts, Glue::Fan)
    }

    /// Generators of `U ∩ V`, or `None` for the generic point.
    pub fn overlap(&self, i: usize, j: usize) -> Option<AffineMonoid> {
        if i == j {
            return Some(self.charts[i].monoid.clone());
        }
        match self.glue {
            Glue::Generic => None,
            Glue::Fan => {
                let mut gens = self.charts[i].monoid.generators.clone();
                gens.extend(self.charts[j].monoid.generators.iter().cloned());
                Some(AffineMonoid::new(format!("U{i}{j}"), self.lattice_rank, gens, vec![], None, DEFAULT_DEGREE_BOUND).expect("sum of charts"))
            }
        }
    }

    pub fn height_one_points(&self) -> Vec<HeightOnePoint> {
        let mut local: Vec<(usize, Vec<i64>)> = Vec::new();
        for (i, c) in self.charts.iter().enumerate() {
            for v in c.monoid.ambient_facets().expect("charts generate the lattice") {
                local.push((i, v));
            }
        }
        let mut uf = UnionFind::new(local.len());
        for p in 0..local.len() {
            for q in 0..p {
                let ((i, v), (j, w)) = (&local[p], &local[q]);
                if v != w || i == j {
                    continue;
                }
                if let Some(o) = self.overlap(*i, *j) {
                    if o.ambient_facets().is_some_and(|fs| fs.contains(v)) {
                        uf.union(p, q);
                    }
                }
            }
        }
        let mut out: Vec<HeightOnePoint> = Vec::new();
        let mut root_of = Vec::new();
        for p in 0..local.len() {
            let r = uf.find(p);
            match root_of.iter().position(|&x| x == r) {
                Some(k) => out[k].charts.push(local[p].0),
                None => {
                    root_of.push(r);
                    out.push(HeightOnePoint { label: format!("D{}", out.len()), valuation: local[p].1.clone(), charts: vec![local[p].0] });
                }
            }
        }
        out
    }

    /// `div(a) = Σ v_x(a) x` for `a` in the lattice part of `A_0^×`.
    pub fn divisor_of(&self, a: &[i64]) -> Vec<i64> {
        self.height_one_points().iter().map(|p| dot(&p.valuation, a)).collect()
    }

    /// Columns are `div(e_j)`.
    pub fn div_matrix(&self) -> Matrix {
        let pts = self.height_one_points();
        let mut m = Matrix::zeros(pts.len(), self.lattice_rank);
        for (i, p) in pts.iter().enumerate() {
            for j in 0..self.lattice_rank {
                m.set(i, j, p.valuation[j]);
            }
        }
        m
    }

    pub fn require_normal(&self) -> Result<()> {
        for c in &self.charts {
            if !c.monoid.is_normal()? {
                return Err(Error::NotNormal(c.monoid.name.clone()));
            }
        }
        Ok(())
    }

    pub fn class_group(&self) -> Result<AbelianGroup> {
        self.require_normal()?;
        Ok(cokernel(&self.div_matrix()))
    }

    /// `Cl(X)` with the closure of one height-one point removed.
    pub fn class_group_without(&self, point: usize) -> Result<AbelianGroup> {
        self.require_normal()?;
        let m = self.div_matrix();
        let rows: Vec<Vec<i64>> = (0..m.rows).filter(|&i| i != point).map(|i| m.row(i)).collect();
        if rows.is_empty() {
            return Ok(AbelianGroup::trivial());
        }
        Ok(cokernel(&Matrix::from_rows(&rows, m.cols)))
    }

    /// `Cl(X) / <[z]>`.
    pub fn class_group_mod_point(&self, point: usize) -> Result<AbelianGroup> {
        self.require_normal()?;
        let m = self.div_matrix();
        let mut ext = Matrix::zeros(m.rows, m.cols + 1);
        for i in 0..m.rows {
            for j in 0..m.cols {
                ext.set(i, j, m.get(i, j));
            }
        }
        ext.set(point, m.cols, 1);
        Ok(cokernel(&ext))
    }

    fn dim(&self) -> usize {
        self.lattice_rank + self.unit_group.len()
    }

    fn torsion_rows(&self) -> Vec<Vec<i64>> {
        let d = self.lattice_rank;
        (0..self.unit_group.len())
            .map(|k| {
                let mut v = vec![0; self.dim()];
                v[d + k] = self.unit_group[k];
                v
            })
            .collect()
    }

    fn torsion_axes(&self) -> Vec<Vec<i64>> {
        let d = self.lattice_rank;
        (0..self.unit_group.len())
            .map(|k| {
                let mut v = vec![0; self.dim()];
                v[d + k] = 1;
                v
            })
            .collect()
    }

    fn unit_rows(&self, m: &AffineMonoid, torsion: bool) -> Vec<Vec<i64>> {
        let mut rows: Vec<Vec<i64>> = m
            .unit_generators()
            .iter()
            .map(|&g| {
                let mut v = m.generators[g].clone();
                v.resize(self.dim(), 0);
                v
            })
            .collect();
        if torsion {
            rows.extend(self.torsion_axes());
        }
        rows.extend(self.torsion_rows());
        rows
    }

    /// Units of `U_i ∩ U_j`, lifted to `Z^(d + t)` and including the torsion relations.
    fn overlap_units(&self, i: usize, j: usize) -> Vec<Vec<i64>> {
        match self.overlap(i, j) {
            None => {
                let mut rows: Vec<Vec<i64>> = (0..self.dim())
                    .map(|k| {
                        let mut v = vec![0; self.dim()];
                        v[k] = 1;
                        v
                    })
                    .collect();
                rows.extend(self.torsion_rows());
                rows
            }
            Some(o) => {
                let (a, b) = (&self.charts[i], &self.charts[j]);
                let rank = |m: &AffineMonoid| m.units().lattice_rank;
                let localized = rank(&o) > rank(&a.monoid).max(rank(&b.monoid));
                self.unit_rows(&o, a.torsion_units || b.torsion_units || localized)
            }
        }
    }

    /// Cocycles `(a_U)` with `a_U - a_V` a unit on `U ∩ V`, and the coboundaries: chart units and `A_0^×`.
    fn cartier(&self) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
        let k = self.charts.len();
        let dim = self.dim();
        let total = k * dim;
        let unit = |c: usize| {
            let mut v = vec![0; total];
            v[c] = 1;
            v
        };
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
        let cocycles: Vec<Vec<i64>> = if pairs.is_empty() {
            (0..total).map(unit).collect()
        } else {
            let overlap: Vec<Vec<Vec<i64>>> = pairs.iter().map(|&(i, j)| self.overlap_units(i, j)).collect();
            let extra: usize = overlap.iter().map(|o| o.len()).sum();
            let mut m = Matrix::zeros(pairs.len() * dim, total + extra);
            let mut col = total;
            for (p, &(i, j)) in pairs.iter().enumerate() {
                for r in 0..dim {
                    m.set(p * dim + r, i * dim + r, 1);
                    m.set(p * dim + r, j * dim + r, -1);
                }
                for g in &overlap[p] {
                    for r in 0..dim {
                        m.set(p * dim + r, col, -g[r]);
                    }
                    col += 1;
                }
            }
            kernel_basis(&m).into_iter().map(|v| v[..total].to_vec()).filter(|v| v.iter().any(|&x| x != 0)).collect()
        };
        let mut bounds: Vec<Vec<i64>> = Vec::new();
        for (u, c) in self.charts.iter().enumerate() {
            for g in self.unit_rows(&c.monoid, c.torsion_units) {
                let mut v = vec![0; total];
                v[u * dim..(u + 1) * dim].copy_from_slice(&g);
                bounds.push(v);
            }
        }
        for r in 0..dim {
            bounds.push((0..total).map(|c| i64::from(c % dim == r)).collect());
        }
        (cocycles, bounds)
    }

    /// `Pic(X)`: Cartier divisors modulo principal ones.
    pub fn pic(&self) -> Result<PicReport> {
        let (cocycles, bounds) = self.cartier();
        let total = self.charts.len() * self.dim();
        let pic = lattice_quotient(&cocycles, &bounds, total).ok_or_else(|| Error::Invalid("chart units do not lie in the cocycles".into()))?;
        Ok(PicReport { pic, cocycles: cocycles.iter().map(|v| self.split_cartier(v)).collect() })
    }

    /// Lattice part of `a_U` for each chart.
    fn split_cartier(&self, v: &[i64]) -> Vec<Vec<i64>> {
        let dim = self.dim();
        (0..self.charts.len()).map(|u| v[u * dim..u * dim + self.lattice_rank].to_vec()).collect()
    }

    /// The Weil divisor of Cartier data, read in a chart containing each point.
    pub fn weil_of_cartier(&self, data: &[Vec<i64>]) -> Vec<i64> {
        self.height_one_points().iter().map(|p| dot(&p.valuation, &data[p.charts[0]])).collect()
    }

    /// Is `Pic(X) -> Cl(X)` injective?
    pub fn pic_embeds_in_cl(&self) -> Result<bool> {
        self.require_normal()?;
        let (cocycles, bounds) = self.cartier();
        let images: Vec<Vec<i64>> = cocycles.iter().map(|v| self.weil_of_cartier(&self.split_cartier(v))).collect();
        let div = self.div_matrix();
        let (pts, d) = (div.rows, self.lattice_rank);
        if pts == 0 {
            return Ok(cocycles.iter().all(|z| in_row_lattice(&bounds, z)));
        }
        // (c, y) with Σ c_i φ(z_i) = div(y)
        let mut m = Matrix::zeros(pts, images.len() + d);
        for (i, img) in images.iter().enumerate() {
            for r in 0..pts {
                m.set(r, i, img[r]);
            }
        }
        for j in 0..d {
            for r in 0..pts {
                m.set(r, images.len() + j, -div.get(r, j));
            }
        }
        for sol in kernel_basis(&m) {
            let mut z = vec![0; cocycles.first().map_or(0, |c| c.len())];
            for (c, g) in sol.iter().zip(&cocycles) {
                z.iter_mut().zip(g).for_each(|(zi, gi)| *zi += c * gi);
            }
            if !in_row_lattice(&bounds, &z) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadric() -> GluedScheme {
        GluedScheme::affine(AffineMonoid::simple("xy=z2", vec![vec![1, 0], vec![1, 2], vec![1, 1]])).unwrap()
    }

    #[test]
    fn quadric_cone_class_group() {
        let x = quadric();
        assert_eq!(x.class_group().unwrap(), AbelianGroup::cyclic(2));
        assert!(x.pic().unwrap().pic.is_trivial());
        let pts = x.height_one_points();
        let dx = x.divisor_of(&[1, 0]);
        let dz = x.divisor_of(&[1, 1]);
        // p1 = (x, z) is the facet vanishing on y
        let p1 = pts.iter().position(|p| dot(&p.valuation, &[1, 2]) == 0).unwrap();
        assert_eq!(dx[p1], 2);
        assert_eq!(dx[1 - p1], 0);
        assert_eq!(dz, vec![1, 1]);
        assert!(x.pic_embeds_in_cl().unwrap());
    }

    #[test]
    fn projective_spaces() {
        for n in 1..=4 {
            let p = GluedScheme::projective_space(n).unwrap();
            assert_eq!(p.height_one_points().len(), n + 1);
            assert_eq!(p.class_group().unwrap(), AbelianGroup::free(1));
            assert_eq!(p.pic().unwrap().pic, AbelianGroup::free(1));
        }
    }

    #[test]
    fn lines_glued_at_generic_point() {
        for n in 1..=3 {
            let x = GluedScheme::glued_lines(n).unwrap();
            assert_eq!(x.class_group().unwrap(), AbelianGroup::free(n));
        }
    }

    #[test]
    fn products_add_class_groups() {
        let p1 = GluedScheme::projective_space(1).unwrap();
        let q = quadric();
        let prod = q.product(&p1).unwrap();
        assert_eq!(prod.class_group().unwrap(), q.class_group().unwrap().direct_sum(&p1.class_group().unwrap()));
    }

    #[test]
    fn seminormal_glued_pair() {
        let plus = AffineMonoid::simple("A+", vec![vec![1, 0], vec![0, 2], vec![1, 1]]);
        let minus = AffineMonoid::simple("A-", vec![vec![1, 0], vec![0, -2], vec![1, -1]]);
        let x = GluedScheme::new("X", 2, vec![], vec![Chart { monoid: plus, torsion_units: true }, Chart { monoid: minus, torsion_units: true }], Glue::Fan).unwrap();
        assert_eq!(x.pic().unwrap().pic, AbelianGroup::free(1));
        assert!(matches!(x.class_group(), Err(Error::NotNormal(_))));
    }

    #[test]
    fn torsion_units_reach_pic() {
        let chart = |g: i64, t: bool| Chart { monoid: AffineMonoid::new(format!("A{g}"), 1, vec![vec![g]], vec![3], None, 8).unwrap(), torsion_units: t };
        let x = GluedScheme::new("X", 1, vec![3], vec![chart(1, false), chart(-1, false)], Glue::Generic).unwrap();
        assert_eq!(x.pic().unwrap().pic, AbelianGroup { free_rank: 1, torsion: vec![3] });
        let nor = GluedScheme::new("Xnor", 1, vec![3], vec![chart(1, true), chart(-1, true)], Glue::Generic).unwrap();
        assert_eq!(nor.pic().unwrap().pic, AbelianGroup::free(1));
    }
}
