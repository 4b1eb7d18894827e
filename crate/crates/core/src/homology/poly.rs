use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_traits::{One, Zero};

/// Laurent polynomial in `q`, stored sparsely by exponent.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly<T = i64> {
    terms: BTreeMap<i32, T>,
}

impl<T> LaurentPoly<T>
where
    T: Clone + Zero + One + PartialEq + Add<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn monomial(coeff: T, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// `q + q⁻¹`, the value of the unknot.
    pub fn circle() -> Self {
        let mut p = Self::monomial(T::one(), 1);
        p.add_term(-1, T::one());
        p
    }

    pub fn add_term(&mut self, exp: i32, coeff: T) {
        let slot = self.terms.entry(exp).or_insert_with(T::zero);
        *slot = slot.clone() + coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i32) -> T {
        self.terms.get(&exp).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &T)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::monomial(T::one(), 0);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn scale(&self, k: T, shift: i32) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(e + shift, c.clone() * k.clone());
        }
        out
    }

    /// Substitutes `q ↦ q⁻¹`.
    pub fn invert_variable(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(-e, c.clone());
        }
        out
    }
}

impl<T: fmt::Display + Zero + One + PartialEq + PartialOrd + Clone + Neg<Output = T>> fmt::Display for LaurentPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let negative = *c < T::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = mag.is_one();
            if !unit || *e == 0 {
                write!(f, "{mag}")?;
            }
            match *e {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}
