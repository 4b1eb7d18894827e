use std::fmt;

use super::GroupError;

/// A generator or its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter<G> {
    pub gen: G,
    pub inv: bool,
}

impl<G: Clone> Letter<G> {
    pub fn new(gen: G, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub fn inverse(&self) -> Self {
        Letter { gen: self.gen.clone(), inv: !self.inv }
    }

    pub fn exponent(&self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }
}

/// Word in a free group over generators of type `G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord<G> {
    letters: Vec<Letter<G>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordOp {
    Reduce,
    Multiply,
    Invert,
    /// `v⁻¹ u v`
    Conjugate,
}

impl<G> Default for FreeWord<G> {
    fn default() -> Self {
        FreeWord { letters: Vec::new() }
    }
}

impl<G: Clone + PartialEq> FreeWord<G> {
    pub fn identity() -> Self {
        FreeWord { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<Letter<G>>) -> Self {
        FreeWord { letters }
    }

    pub fn generator(g: G) -> Self {
        FreeWord { letters: vec![Letter::new(g, false)] }
    }

    /// `g^k`.
    pub fn power(g: G, k: i64) -> Self {
        FreeWord {
            letters: (0..k.unsigned_abs()).map(|_| Letter::new(g.clone(), k < 0)).collect(),
        }
    }

    pub fn letters(&self) -> &[Letter<G>] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, l: Letter<G>) {
        self.letters.push(l);
    }

    /// Appends `l`, cancelling against the last letter.
    pub fn push_reduced(&mut self, l: Letter<G>) {
        match self.letters.last() {
            Some(last) if last.gen == l.gen && last.inv != l.inv => {
                self.letters.pop();
            }
            _ => self.letters.push(l),
        }
    }

    pub fn reduced(&self) -> Self {
        let mut out = FreeWord::identity();
        for l in &self.letters {
            out.push_reduced(l.clone());
        }
        out
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !(w[0].gen == w[1].gen && w[0].inv != w[1].inv))
    }

    /// Concatenation, free-reduced.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.reduced();
        for l in &other.letters {
            out.push_reduced(l.clone());
        }
        out
    }

    pub fn inverse(&self) -> Self {
        FreeWord { letters: self.letters.iter().rev().map(Letter::inverse).collect() }
    }

    /// `v⁻¹ u v`, reduced.
    pub fn conjugate(&self, v: &Self) -> Self {
        v.inverse().mul(self).mul(v)
    }

    /// Exponent sum of one generator.
    pub fn exponent_of(&self, g: &G) -> i64 {
        self.letters.iter().filter(|l| &l.gen == g).map(Letter::exponent).sum()
    }

    /// Substitutes every letter through `f`, reducing as it goes.
    pub fn substitute<H: Clone + PartialEq, E>(
        &self,
        mut f: impl FnMut(&G) -> Result<FreeWord<H>, E>,
    ) -> Result<FreeWord<H>, E> {
        let mut out = FreeWord::identity();
        for l in &self.letters {
            let img = f(&l.gen)?;
            let img = if l.inv { img.inverse() } else { img };
            for x in img.letters {
                out.push_reduced(x);
            }
        }
        Ok(out)
    }

    pub fn map_gens<H: Clone + PartialEq>(&self, mut f: impl FnMut(&G) -> H) -> FreeWord<H> {
        FreeWord { letters: self.letters.iter().map(|l| Letter::new(f(&l.gen), l.inv)).collect() }
    }

    pub fn generators(&self) -> impl Iterator<Item = &G> {
        self.letters.iter().map(|l| &l.gen)
    }
}

pub fn word_ops<G: Clone + PartialEq>(u: &FreeWord<G>, v: &FreeWord<G>, mode: WordOp) -> FreeWord<G> {
    match mode {
        WordOp::Reduce => u.reduced(),
        WordOp::Multiply => u.mul(v),
        WordOp::Invert => u.inverse().reduced(),
        WordOp::Conjugate => u.conjugate(v),
    }
}

impl FreeWord<String> {
    /// Parses whitespace-separated letters `x`, `x^-1`, `x^3`; `1` or an empty string is the identity.
    pub fn parse(s: &str) -> Result<Self, GroupError> {
        let mut out = FreeWord::identity();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.parse().map_err(|_| GroupError::Parse(tok.to_string()))?;
                    (n, e)
                }
                None => (tok, 1),
            };
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '@' || c == '-') {
                return Err(GroupError::Parse(tok.to_string()));
            }
            for _ in 0..exp.unsigned_abs() {
                out.push(Letter::new(name.to_string(), exp < 0));
            }
        }
        Ok(out)
    }

    pub fn gen(name: &str) -> Self {
        Self::generator(name.to_string())
    }
}

impl<G: fmt::Display + PartialEq> fmt::Display for FreeWord<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        // group runs of the same letter into powers
        let mut k = 0;
        let mut first = true;
        while k < self.letters.len() {
            let l = &self.letters[k];
            let mut run = 1;
            while k + run < self.letters.len() && self.letters[k + run] == *l {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let e = if l.inv { -(run as i64) } else { run as i64 };
            if e == 1 {
                write!(f, "{}", l.gen)?;
            } else {
                write!(f, "{}^{}", l.gen, e)?;
            }
            k += run;
        }
        Ok(())
    }
}
