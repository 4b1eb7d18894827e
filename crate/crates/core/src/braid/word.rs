use std::fmt;

use super::BraidError;

/// A word in the Artin generators of the braid group on `strands` strands.
///
/// Letter `i` stands for `σ_i`, `-i` for its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordMode {
    Compose,
    Invert,
    Reduce,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::TooFewStrands { min: 1, got: 0 });
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(BraidError::LetterOutOfRange { letter: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands: strands.max(1), letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch { left: self.strands, right: other.strands });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn reduced(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }

    pub fn pow(&self, k: u32) -> BraidWord {
        let mut letters = Vec::with_capacity(self.letters.len() * k as usize);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// Underlying permutation: `perm[p]` is the bottom position of the strand
    /// that ends at top position `p`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            at.swap(i - 1, i);
        }
        at
    }

    /// Cycle count of the permutation, i.e. components of the closure.
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0;
        for s in 0..perm.len() {
            if seen[s] {
                continue;
            }
            cycles += 1;
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                p = perm[p];
            }
        }
        cycles
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id[B{}]", self.strands);
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Compose `a·b`, invert `a`, or free-reduce `a`.
pub fn word_algebra(a: &BraidWord, b: &BraidWord, mode: WordMode) -> Result<BraidWord, BraidError> {
    match mode {
        WordMode::Compose => a.compose(b),
        WordMode::Invert => Ok(a.inverse()),
        WordMode::Reduce => Ok(a.reduced()),
    }
}

/// `(σ_1 σ_2 ⋯ σ_{n-1})^n`.
pub fn full_twist(n: usize) -> Result<BraidWord, BraidError> {
    if n < 2 {
        return Err(BraidError::TooFewStrands { min: 2, got: n });
    }
    let row: Vec<i32> = (1..n as i32).collect();
    Ok(BraidWord { strands: n, letters: row }.pow(n as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn algebra_examples() {
        let c = word_algebra(&w(2, &[1]), &w(2, &[-1]), WordMode::Compose).unwrap();
        assert!(c.reduced().is_empty());
        let inv = word_algebra(&w(3, &[1, 2]), &w(3, &[]), WordMode::Invert).unwrap();
        assert_eq!(inv.letters(), &[-2, -1]);
        assert_eq!(w(3, &[1, 2, -2, 1]).reduced().letters(), &[1, 1]);
        assert!(w(2, &[1]).compose(&w(3, &[1])).is_err());
    }

    #[test]
    fn rejects_bad_letters() {
        assert!(BraidWord::new(2, vec![0]).is_err());
        assert!(BraidWord::new(2, vec![2]).is_err());
        assert!(BraidWord::new(3, vec![-2]).is_ok());
    }

    #[test]
    fn full_twist_shapes() {
        assert_eq!(full_twist(2).unwrap().letters(), &[1, 1]);
        let t3 = full_twist(3).unwrap();
        assert_eq!(t3.letters(), &[1, 2, 1, 2, 1, 2]);
        assert_eq!(t3.exponent_sum(), 6);
        assert!(full_twist(1).is_err());
        for n in 2..7 {
            assert_eq!(full_twist(n).unwrap().closure_components(), n);
        }
    }

    #[test]
    fn closure_cycles() {
        assert_eq!(w(2, &[1]).closure_components(), 1);
        assert_eq!(w(2, &[1, 1]).closure_components(), 2);
        assert_eq!(w(3, &[1, 2]).closure_components(), 1);
        assert_eq!(w(4, &[1, 3]).closure_components(), 2);
    }
}
