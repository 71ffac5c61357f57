//! Permutations of `{0, …, n−1}` in one-line notation.
//!
//! Points are stored as `u16`, which is enough for every group this crate is
//! willing to enumerate. Text input and output use the conventional 1-based
//! cycle notation, e.g. `(1 2 3)(4 5)`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A bijection of `{0, …, n−1}`, the element type of every group here.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from its one-line notation, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(Error::BadPermutation(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n {
                return Err(Error::BadPermutation(format!(
                    "image {v} out of range for degree {n}"
                )));
            }
            if seen[v] {
                return Err(Error::BadPermutation(format!("image {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|v| v as u16).collect(),
        })
    }

    /// Builds the product of the given cycles (rightmost cycle applied
    /// first), on 0-based points.
    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Perm> {
        let mut result = Perm::identity(degree);
        for cycle in cycles.iter().rev() {
            let mut one = Perm::identity(degree);
            for (i, &p) in cycle.iter().enumerate() {
                let q = cycle[(i + 1) % cycle.len()];
                if p >= degree || q >= degree {
                    return Err(Error::BadPermutation(format!(
                        "cycle point out of range for degree {degree}"
                    )));
                }
                if one.images[p] != p as u16 {
                    return Err(Error::BadPermutation(format!(
                        "point {} repeated within a cycle",
                        p + 1
                    )));
                }
                one.images[p] = q as u16;
            }
            result = one.compose(&result);
        }
        Ok(result)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub(crate) fn raw_images(&self) -> &[u16] {
        &self.images
    }

    /// `self ∘ other`: applies `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&p| self.images[p as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u16;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// Least `k ≥ 1` with `self^k = identity` (lcm of the cycle lengths).
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, len| acc.lcm(&(len as u64)))
    }

    /// Cycle lengths including fixed points, sorted non-increasing.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens = self.cycle_lengths();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.apply(p);
            }
            lens.push(len);
        }
        lens
    }

    /// True when the permutation is a product of an even number of
    /// transpositions.
    pub fn is_even(&self) -> bool {
        let lens = self.cycle_lengths();
        let transpositions: usize = lens.iter().map(|l| l - 1).sum();
        transpositions % 2 == 0
    }

    /// Largest point mentioned in a cycle-notation string, 1-based input.
    pub fn max_point(text: &str) -> Result<Option<usize>> {
        let cycles = lex_cycles(text)?;
        Ok(cycles.iter().flatten().copied().max())
    }

    /// Parses 1-based cycle notation such as `(1 2 3)(4 5)`; whitespace and
    /// commas between points are both accepted. The result acts on
    /// `{0, …, degree−1}`.
    pub fn parse(text: &str, degree: usize) -> Result<Perm> {
        let cycles = lex_cycles(text)?;
        let mut zero_based = Vec::with_capacity(cycles.len());
        for cycle in cycles {
            let mut c = Vec::with_capacity(cycle.len());
            for p in cycle {
                if p == 0 {
                    return Err(Error::Parse {
                        what: "permutation",
                        detail: "points are 1-based; 0 is not a point".into(),
                    });
                }
                c.push(p - 1);
            }
            if !c.is_empty() {
                zero_based.push(c);
            }
        }
        Perm::from_cycles(&zero_based, degree)
    }
}

/// Splits `(1 2 3)(4,5)` into `[[1,2,3],[4,5]]` without interpreting points.
fn lex_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut digits = String::new();
    let flush =
        |digits: &mut String, current: &mut Option<Vec<usize>>| -> Result<()> {
            if digits.is_empty() {
                return Ok(());
            }
            let value: usize = digits.parse().map_err(|_| Error::Parse {
                what: "permutation",
                detail: format!("bad point '{digits}'"),
            })?;
            digits.clear();
            match current {
                Some(cycle) => cycle.push(value),
                None => {
                    return Err(Error::Parse {
                        what: "permutation",
                        detail: "point outside of a cycle".into(),
                    })
                }
            }
            Ok(())
        };
    for ch in text.chars() {
        match ch {
            '(' => {
                if current.is_some() {
                    return Err(Error::Parse {
                        what: "permutation",
                        detail: "nested '('".into(),
                    });
                }
                current = Some(Vec::new());
            }
            ')' => {
                flush(&mut digits, &mut current)?;
                match current.take() {
                    Some(cycle) => cycles.push(cycle),
                    None => {
                        return Err(Error::Parse {
                            what: "permutation",
                            detail: "unmatched ')'".into(),
                        })
                    }
                }
            }
            '0'..='9' => digits.push(ch),
            c if c.is_whitespace() || c == ',' => flush(&mut digits, &mut current)?,
            other => {
                return Err(Error::Parse {
                    what: "permutation",
                    detail: format!("unexpected character '{other}'"),
                })
            }
        }
    }
    if current.is_some() {
        return Err(Error::Parse {
            what: "permutation",
            detail: "unterminated cycle".into(),
        });
    }
    if !digits.is_empty() {
        return Err(Error::Parse {
            what: "permutation",
            detail: "trailing digits outside of a cycle".into(),
        });
    }
    Ok(cycles)
}

impl fmt::Display for Perm {
    /// Canonical 1-based cycle form: fixed points omitted, each cycle led by
    /// its least point, cycles ordered by least point. Identity prints `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            write!(f, "({}", start + 1)?;
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                write!(f, " {}", p + 1)?;
                seen[p] = true;
                p = self.apply(p);
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn compose_applies_right_factor_first() {
        let p = Perm::from_images(vec![1, 0, 2]).unwrap(); // (0 1)
        let q = Perm::from_images(vec![1, 2, 0]).unwrap(); // (0 1 2)
        // (p ∘ q)(0) = p(q(0)) = p(1) = 0
        assert_eq!(p.compose(&q).apply(0), 0);
    }

    #[test]
    fn inverse_composes_to_identity() {
        let p = Perm::from_images(vec![0, 2, 1, 4, 7, 8, 3, 5, 6]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(p.inverse().compose(&p).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let p = Perm::parse("(1 2 3)(4 5)", 6).unwrap();
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.apply(2), 0);
        assert_eq!(p.apply(3), 4);
        assert_eq!(p.apply(5), 5);
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(Perm::identity(4).to_string(), "()");
        let q = Perm::parse("(1,2,3) (4,5)", 6).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Perm::parse("(1 2", 3).is_err());
        assert!(Perm::parse("(0 1)", 3).is_err());
        assert!(Perm::parse("(1 x)", 3).is_err());
        assert!(Perm::parse("(1 2)(2 3", 3).is_err());
        assert!(Perm::parse("(1 1)", 3).is_err());
    }

    #[test]
    fn order_and_cycle_type() {
        let p = Perm::parse("(1 2 3)(4 5)", 6).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.cycle_type(), vec![3, 2, 1]);
        assert!(!p.is_even());
        assert!(Perm::parse("(1 2 3)", 5).unwrap().is_even());
    }

    fn arb_perm(max_degree: usize) -> impl Strategy<Value = Perm> {
        (1..=max_degree).prop_flat_map(|n| {
            Just((0..n).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Perm::from_images(v).unwrap())
        })
    }

    proptest! {
        #[test]
        fn prop_inverse_is_two_sided(p in arb_perm(24)) {
            prop_assert!(p.compose(&p.inverse()).is_identity());
            prop_assert!(p.inverse().compose(&p).is_identity());
        }

        #[test]
        fn prop_display_parse_round_trip(p in arb_perm(24)) {
            let text = p.to_string();
            let q = Perm::parse(&text, p.degree()).unwrap();
            prop_assert_eq!(p, q);
        }

        #[test]
        fn prop_order_annihilates(p in arb_perm(16)) {
            let k = p.order();
            let mut acc = Perm::identity(p.degree());
            for _ in 0..k {
                acc = acc.compose(&p);
            }
            prop_assert!(acc.is_identity());
        }
    }
}
