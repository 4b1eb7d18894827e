//! The faithful action of the braid group on the free group `F_n`.
//!
//! Free generators are encoded as `k` for `x_k` and `-k` for `x_k⁻¹`.
//! Each braid letter acts by substitution on the current images; the
//! resulting map is an anti-homomorphism, which is still injective, so two
//! words are equal in `B_n` exactly when their image tuples agree.

use super::{BraidError, BraidWord};

/// Default cap on the total length of the image words.
pub const DEFAULT_WORD_LIMIT: usize = 1_000_000;

fn push_reduced(out: &mut Vec<i32>, g: i32) {
    if out.last() == Some(&-g) {
        out.pop();
    } else {
        out.push(g);
    }
}

fn push_word(out: &mut Vec<i32>, w: &[i32], inverted: bool) {
    if inverted {
        for &g in w.iter().rev() {
            push_reduced(out, -g);
        }
    } else {
        for &g in w {
            push_reduced(out, g);
        }
    }
}

/// Images of `x_i` and `x_{i+1}` under the letter.
fn letter_images(letter: i32) -> (i32, Vec<i32>, Vec<i32>) {
    let i = letter.abs();
    let j = i + 1;
    if letter > 0 {
        // x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i
        (i, vec![i, j, -i], vec![i])
    } else {
        // x_i -> x_{i+1}, x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}
        (i, vec![j], vec![-j, i, j])
    }
}

fn substitute(word: &[i32], letter: i32) -> Vec<i32> {
    let (i, img_i, img_j) = letter_images(letter);
    let mut out = Vec::with_capacity(word.len() + 2);
    for &g in word {
        let a = g.abs();
        if a == i {
            push_word(&mut out, &img_i, g < 0);
        } else if a == i + 1 {
            push_word(&mut out, &img_j, g < 0);
        } else {
            push_reduced(&mut out, g);
        }
    }
    out
}

/// Reduced images of `x_1..x_n`, failing once their total length passes `limit`.
pub fn artin_image(w: &BraidWord, limit: usize) -> Result<Vec<Vec<i32>>, BraidError> {
    let n = w.strands() as i32;
    let mut images: Vec<Vec<i32>> = (1..=n).map(|k| vec![k]).collect();
    for &letter in w.letters() {
        let mut total = 0usize;
        for img in images.iter_mut() {
            *img = substitute(img, letter);
            total += img.len();
        }
        if total > limit {
            return Err(BraidError::WordLimit { limit });
        }
    }
    Ok(images)
}

pub fn artin_equal(a: &BraidWord, b: &BraidWord) -> Result<bool, BraidError> {
    artin_equal_with_limit(a, b, DEFAULT_WORD_LIMIT)
}

/// Equality in `B_n`, tested as `a·b⁻¹ = 1`.
pub fn artin_equal_with_limit(a: &BraidWord, b: &BraidWord, limit: usize) -> Result<bool, BraidError> {
    let q = a.compose(&b.inverse())?.reduced();
    if q.is_empty() {
        return Ok(true);
    }
    let images = artin_image(&q, limit)?;
    Ok(images.iter().enumerate().all(|(k, img)| img.len() == 1 && img[0] == k as i32 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::full_twist;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn relations_and_distinctions() {
        assert!(artin_equal(&w(3, &[1, 2, 1]), &w(3, &[2, 1, 2])).unwrap());
        assert!(artin_equal(&w(4, &[1, 3]), &w(4, &[3, 1])).unwrap());
        assert!(!artin_equal(&w(2, &[1]), &w(2, &[-1])).unwrap());
        assert!(!artin_equal(&w(3, &[1, 2]), &w(3, &[2, 1])).unwrap());
        assert!(artin_equal(&w(3, &[]), &w(3, &[1, -1])).unwrap());
    }

    #[test]
    fn full_twist_is_central() {
        let t = full_twist(3).unwrap();
        let s = w(3, &[1]);
        assert!(artin_equal(&t.compose(&s).unwrap(), &s.compose(&t).unwrap()).unwrap());
        let half = w(3, &[1, 2, 1]);
        assert!(!artin_equal(&half.compose(&s).unwrap(), &s.compose(&half).unwrap()).unwrap());
    }

    #[test]
    fn images_of_a_single_letter() {
        assert_eq!(artin_image(&w(2, &[1]), 100).unwrap(), vec![vec![1, 2, -1], vec![1]]);
        assert_eq!(artin_image(&w(2, &[-1]), 100).unwrap(), vec![vec![2], vec![-2, 1, 2]]);
    }

    #[test]
    fn limit_is_enforced() {
        let long = w(3, &[1, -2].repeat(30));
        assert_eq!(artin_image(&long, 50), Err(BraidError::WordLimit { limit: 50 }));
    }
}
