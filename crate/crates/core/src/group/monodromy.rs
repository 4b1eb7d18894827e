use std::collections::BTreeMap;
use std::fmt;

use crate::verdict::Verdict;

use super::{FreeWord, GroupError, TanglePresentation};

/// Permutation of `{1..n}`, stored 0-based: `self.0[i]` is the image of `i+1`, minus one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// From one-line notation with 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(GroupError::Permutation(format!("{images:?} is not a permutation of 1..={n}")));
            }
            seen[x - 1] = true;
            out.push(x - 1);
        }
        Ok(Perm(out))
    }

    /// The transposition `(i j)` on `n` points, 1-based.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Perm::identity(n);
        p.0.swap(i - 1, j - 1);
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// 1-based image.
    pub fn apply(&self, x: usize) -> usize {
        self.0[x - 1] + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_transposition(&self) -> bool {
        self.0.iter().enumerate().filter(|(i, &x)| *i != x).count() == 2
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.images().iter().map(|x| x.to_string()).collect();
        f.write_str(&imgs.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyAssignment {
    pub degree: usize,
    pub images: BTreeMap<String, Perm>,
}

impl MonodromyAssignment {
    pub fn new(degree: usize, images: BTreeMap<String, Perm>) -> Result<Self, GroupError> {
        for (g, p) in &images {
            if p.degree() != degree {
                return Err(GroupError::Permutation(format!("image of {g} acts on {} points, not {degree}", p.degree())));
            }
        }
        Ok(MonodromyAssignment { degree, images })
    }

    /// Image of a word read left to right; generators without an image act trivially
    /// only if `default_identity` names them (the longitude `l`).
    pub fn word_image(&self, w: &FreeWord<String>) -> Result<Perm, GroupError> {
        let mut acc = Perm::identity(self.degree);
        for l in w.letters() {
            let p = match self.images.get(&l.gen) {
                Some(p) => p.clone(),
                None if l.gen == "l" => Perm::identity(self.degree),
                None => return Err(GroupError::MissingImage(l.gen.clone())),
            };
            acc = acc.then(&if l.inv { p.inverse() } else { p });
        }
        Ok(acc)
    }
}

/// Transpositions, relators to the identity, and a transitive image.
pub fn check_monodromy(pres: &TanglePresentation, phi: &MonodromyAssignment) -> Verdict {
    for g in &pres.generators {
        match phi.images.get(g) {
            None => return Verdict::error(format!("missing image for {g}")).at_stage("images"),
            Some(p) if !p.is_transposition() => {
                return Verdict::from_bool(false)
                    .at_stage("transposition")
                    .with_witness("generator", g)
                    .with_witness("image", p);
            }
            _ => {}
        }
    }
    for (k, r) in pres.relators.iter().enumerate() {
        match phi.word_image(r) {
            Ok(p) if p.is_identity() => {}
            Ok(p) => {
                return Verdict::from_bool(false)
                    .at_stage("relators")
                    .with_witness("relator", k + 1)
                    .with_witness("word", r)
                    .with_witness("image", p);
            }
            Err(e) => return Verdict::error(e.to_string()).at_stage("relators"),
        }
    }
    let n = phi.degree;
    let mut reached = vec![false; n];
    reached[0] = n > 0;
    let mut stack = vec![1usize];
    while let Some(s) = stack.pop() {
        for g in &pres.generators {
            let t = phi.images[g].apply(s);
            if !reached[t - 1] {
                reached[t - 1] = true;
                stack.push(t);
            }
        }
    }
    if let Some(miss) = reached.iter().position(|r| !r) {
        return Verdict::from_bool(false)
            .at_stage("transitivity")
            .with_witness("unreached_sheet", miss + 1);
    }
    Verdict::from_bool(true).at_stage("transitivity")
}

/// Sheet reached by lifting `γ` from `start`.
pub fn lift_path(gamma: &FreeWord<String>, phi: &MonodromyAssignment, start: usize) -> Result<usize, GroupError> {
    if start == 0 || start > phi.degree {
        return Err(GroupError::Sheet { sheet: start, degree: phi.degree });
    }
    Ok(phi.word_image(gamma)?.apply(start))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assign(n: usize, pairs: &[(&str, Perm)]) -> MonodromyAssignment {
        MonodromyAssignment::new(n, pairs.iter().map(|(g, p)| (g.to_string(), p.clone())).collect()).unwrap()
    }

    #[test]
    fn examples() {
        let free_x = TanglePresentation::free(vec!["x".into()], vec![]);
        assert!(check_monodromy(&free_x, &assign(2, &[("x", Perm::transposition(2, 1, 2))])).is_holds());
        let v = check_monodromy(&free_x, &assign(2, &[("x", Perm::identity(2))]));
        assert_eq!(v.stage.as_deref(), Some("transposition"));
        let comm = TanglePresentation::free(
            vec!["x".into(), "y".into()],
            vec![FreeWord::parse("x y x^-1 y^-1").unwrap()],
        );
        let phi = assign(3, &[("x", Perm::transposition(3, 1, 2)), ("y", Perm::transposition(3, 2, 3))]);
        let v = check_monodromy(&comm, &phi);
        assert_eq!(v.stage.as_deref(), Some("relators"));
        assert_eq!(lift_path(&FreeWord::identity(), &phi, 1).unwrap(), 1);
        assert_eq!(lift_path(&FreeWord::gen("x"), &phi, 1).unwrap(), 2);
        // 1 -x-> 2 -y-> 3 -x-> 3
        assert_eq!(lift_path(&FreeWord::parse("x y x").unwrap(), &phi, 1).unwrap(), 3);
        assert!(lift_path(&FreeWord::gen("x"), &phi, 4).is_err());
    }

    #[test]
    fn transitivity_failure() {
        let p = TanglePresentation::free(vec!["x".into()], vec![]);
        let v = check_monodromy(&p, &assign(3, &[("x", Perm::transposition(3, 1, 2))]));
        assert_eq!(v.stage.as_deref(), Some("transitivity"));
    }
}
