use super::{find_isomorphism, hom_search, is_hom, wedge_all, ASet, SearchOpts};
use crate::error::{Error, Result};

/// `X --f--> Y --g--> Z`.
#[derive(Clone, Debug)]
pub struct ExactSequence {
    pub x: ASet,
    pub y: ASet,
    pub z: ASet,
    pub f: Vec<usize>,
    pub g: Vec<usize>,
}

impl ExactSequence {
    /// `f` injective, `g` onto, `g f = 0`, and `g` bijective from `Y \ f(X)` onto `Z \ 0`.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::NotAES(m.to_string()));
        if !(self.x.base == self.y.base && self.y.base == self.z.base) {
            return bad("A-sets over different monoids");
        }
        if !is_hom(&self.x, &self.y, &self.f) {
            return bad("f is not a morphism");
        }
        if !is_hom(&self.y, &self.z, &self.g) {
            return bad("g is not a morphism");
        }
        let mut hit = vec![false; self.y.len()];
        for &v in &self.f {
            if hit[v] && v != 0 {
                return bad("f is not injective");
            }
            hit[v] = true;
        }
        if self.f.iter().skip(1).any(|&v| v == 0) {
            return bad("f is not injective");
        }
        if self.f.iter().any(|&v| self.g[v] != 0) {
            return bad("g f is not zero");
        }
        let mut seen = vec![false; self.z.len()];
        for y in 0..self.y.len() {
            if hit[y] {
                continue;
            }
            let z = self.g[y];
            if z == 0 {
                return bad("kernel of g is larger than the image of f");
            }
            if seen[z] {
                return bad("g identifies points outside the image of f");
            }
            seen[z] = true;
        }
        if (1..self.z.len()).any(|z| !seen[z]) {
            return bad("g is not onto");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitReport {
    /// `s: Z -> Y` with `g s = id`.
    pub section: Option<Vec<usize>>,
    /// `r: Y -> X` with `r f = id`.
    pub retraction: Option<Vec<usize>>,
    /// Some isomorphism `Y ≅ X ∨ Z`.
    pub middle_is_wedge: bool,
    /// A section forces `Y ≅ X ∨ Z`.
    pub consistent: bool,
    /// Every admissible extension of `Z` by `X` splits; `None` when too large to decide.
    pub admissibly_projective: Option<bool>,
}

impl SplitReport {
    pub fn splits(&self) -> bool {
        self.section.is_some()
    }
}

pub fn split_check(seq: &ExactSequence) -> Result<SplitReport> {
    seq.validate()?;
    let mut section = None;
    let gfilter = |z: usize, y: usize| seq.g[y] == z;
    hom_search(&seq.z, &seq.y, &SearchOpts { injective: false, filter: Some(&gfilter) }, &mut |m| {
        section = Some(m.to_vec());
        false
    });
    let mut inv = vec![usize::MAX; seq.y.len()];
    for (x, &y) in seq.f.iter().enumerate() {
        inv[y] = x;
    }
    let rfilter = |y: usize, x: usize| inv[y] == usize::MAX || inv[y] == x;
    let mut retraction = None;
    hom_search(&seq.y, &seq.x, &SearchOpts { injective: false, filter: Some(&rfilter) }, &mut |m| {
        retraction = Some(m.to_vec());
        false
    });
    let w = wedge_all(&[&seq.x, &seq.z]);
    let middle_is_wedge = find_isomorphism(&seq.y, &w).is_some();
    let consistent = section.is_none() || middle_is_wedge;
    let admissibly_projective = crate::extensions::all_extensions_split(&seq.z, &seq.x, 1 << 16);
    Ok(SplitReport { section, retraction, middle_is_wedge, consistent, admissibly_projective })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aset::wedge_injection;
    use crate::monoid::FiniteMonoid;
    use std::sync::Arc;

    #[test]
    fn fold_map_is_not_admissible() {
        let f1 = Arc::new(FiniteMonoid::f1());
        let p = ASet::regular(f1.clone());
        let w = p.wedge(&p);
        let seq = ExactSequence { x: ASet::zero(p.base.clone()), y: w, z: p, f: vec![0], g: vec![0, 1, 1] };
        assert!(matches!(seq.validate(), Err(Error::NotAES(_))));
    }

    #[test]
    fn wedge_sequence_splits() {
        let f1 = Arc::new(FiniteMonoid::f1());
        let p = ASet::regular(f1);
        let w = p.wedge(&p);
        let f = wedge_injection(&[&p, &p], 0);
        let seq = ExactSequence { x: p.clone(), y: w, z: p, f, g: vec![0, 0, 1] };
        let r = split_check(&seq).unwrap();
        assert!(r.splits() && r.middle_is_wedge && r.retraction.is_some());
    }
}
