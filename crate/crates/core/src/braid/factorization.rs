use crate::verdict::Verdict;

use super::{artin_equal_with_limit, full_twist, BraidError, BraidWord, DEFAULT_WORD_LIMIT};

/// Allowed exponents of `σ_1` in a factor.
pub const ALLOWED_EXPONENTS: [i32; 4] = [-2, 1, 2, 3];

/// One factor `g σ_1^i g⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub conjugator: BraidWord,
    pub exponent: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationRecord {
    pub degree: usize,
    pub factors: Vec<Factor>,
}

impl Factor {
    pub fn new(conjugator: BraidWord, exponent: i32) -> Self {
        Factor { conjugator, exponent }
    }

    pub fn word(&self) -> BraidWord {
        let n = self.conjugator.strands();
        let sigma = if self.exponent >= 0 { 1 } else { -1 };
        let core = BraidWord::new(n, vec![sigma; self.exponent.unsigned_abs() as usize])
            .unwrap_or_else(|_| BraidWord::identity(n));
        let mut letters = self.conjugator.letters().to_vec();
        letters.extend_from_slice(core.letters());
        letters.extend_from_slice(self.conjugator.inverse().letters());
        BraidWord::new(n, letters).unwrap_or_else(|_| BraidWord::identity(n))
    }
}

impl FactorizationRecord {
    pub fn new(degree: usize, factors: Vec<Factor>) -> Result<Self, BraidError> {
        let rec = FactorizationRecord { degree, factors };
        rec.validate()?;
        Ok(rec)
    }

    fn validate(&self) -> Result<(), BraidError> {
        if self.degree < 2 {
            return Err(BraidError::TooFewStrands { min: 2, got: self.degree });
        }
        if self.factors.is_empty() {
            return Err(BraidError::EmptyFactorization);
        }
        for (index, f) in self.factors.iter().enumerate() {
            if f.conjugator.strands() != self.degree {
                return Err(BraidError::ConjugatorStrands {
                    index,
                    expected: self.degree,
                    found: f.conjugator.strands(),
                });
            }
        }
        Ok(())
    }

    /// The assembled product of all factors.
    pub fn product(&self) -> BraidWord {
        let mut letters = Vec::new();
        for f in &self.factors {
            letters.extend_from_slice(f.word().letters());
        }
        BraidWord::new(self.degree, letters).expect("factors share the degree")
    }

    pub fn exponent_sum(&self) -> i64 {
        self.factors.iter().map(|f| f.exponent as i64).sum()
    }
}

pub fn verify_factorization(f: &FactorizationRecord) -> Result<Verdict, BraidError> {
    verify_factorization_with_limit(f, DEFAULT_WORD_LIMIT)
}

/// Staged check that the factors multiply to the full twist.
///
/// Stages run in order and the first failure decides the verdict:
/// `exponents`, `exponent-sum`, `permutation`, `artin`.
pub fn verify_factorization_with_limit(f: &FactorizationRecord, limit: usize) -> Result<Verdict, BraidError> {
    f.validate()?;
    let d = f.degree;
    if let Some((k, bad)) = f
        .factors
        .iter()
        .enumerate()
        .find(|(_, x)| !ALLOWED_EXPONENTS.contains(&x.exponent))
    {
        return Ok(Verdict::from_bool(false)
            .at_stage("exponents")
            .with_witness("factor", k)
            .with_witness("exponent", bad.exponent));
    }
    let target = (d * (d - 1)) as i64;
    let sum = f.exponent_sum();
    if sum != target {
        return Ok(Verdict::eq(sum, target).at_stage("exponent-sum"));
    }
    let product = f.product();
    let perm = product.permutation();
    if let Some(p) = (0..d).find(|&p| perm[p] != p) {
        return Ok(Verdict::from_bool(false)
            .at_stage("permutation")
            .with_witness("position", p + 1)
            .with_witness("image", perm[p] + 1));
    }
    let twist = full_twist(d)?;
    let equal = artin_equal_with_limit(&product, &twist, limit)?;
    Ok(Verdict::from_bool(equal)
        .sides(sum, target)
        .at_stage("artin")
        .with_witness("product_length", product.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Status;

    fn id(n: usize) -> BraidWord {
        BraidWord::identity(n)
    }

    #[test]
    fn degree_two() {
        let ok = FactorizationRecord::new(2, vec![Factor::new(id(2), 2)]).unwrap();
        assert!(verify_factorization(&ok).unwrap().is_holds());
        let short = FactorizationRecord::new(2, vec![Factor::new(id(2), 1)]).unwrap();
        let v = verify_factorization(&short).unwrap();
        assert_eq!(v.status, Status::Violated);
        assert_eq!(v.stage.as_deref(), Some("exponent-sum"));
        let bad = FactorizationRecord::new(2, vec![Factor::new(id(2), 4)]).unwrap();
        assert_eq!(verify_factorization(&bad).unwrap().stage.as_deref(), Some("exponents"));
    }

    #[test]
    fn rejects_empty_and_mismatched() {
        assert_eq!(FactorizationRecord::new(3, vec![]), Err(BraidError::EmptyFactorization));
        assert!(matches!(
            FactorizationRecord::new(3, vec![Factor::new(id(2), 2)]),
            Err(BraidError::ConjugatorStrands { .. })
        ));
    }

    #[test]
    fn degree_three_alternating_conjugates() {
        // σ1σ2 conjugates σ1 to σ2, so this is (σ1σ2)^3.
        let g = BraidWord::new(3, vec![1, 2]).unwrap();
        let factors = (0..6).map(|k| Factor::new(if k % 2 == 0 { id(3) } else { g.clone() }, 1)).collect();
        let rec = FactorizationRecord::new(3, factors).unwrap();
        let v = verify_factorization(&rec).unwrap();
        assert!(v.is_holds(), "{v}");
        assert_eq!(v.stage.as_deref(), Some("artin"));
    }

    #[test]
    fn two_cusps_are_decided_by_the_free_group_oracle() {
        // σ1^6 passes the sum and permutation stages but never touches strand 3.
        let rec = FactorizationRecord::new(3, vec![Factor::new(id(3), 3), Factor::new(id(3), 3)]).unwrap();
        let v = verify_factorization(&rec).unwrap();
        assert_eq!(v.status, Status::Violated);
        assert_eq!(v.stage.as_deref(), Some("artin"));
    }
}
