//! Exact cyclotomic integers `Σ cⱼ ζ_m^j`.
//!
//! Values are kept in a canonical normal form: the coefficient vector has
//! length `m` and is reduced modulo the m-th cyclotomic polynomial, so only
//! the first `φ(m)` entries can be nonzero and equality is plain vector
//! equality. No floating point anywhere; character equality downstream
//! depends on it being exact.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;

use crate::numtheory::divisors;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    order: u64,
    coeffs: Vec<i64>,
}

/// Coefficients of the m-th cyclotomic polynomial, low degree first,
/// memoised globally (the reduction runs on every multiplication).
fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&m) {
        return hit.clone();
    }
    // Φ_m = (x^m − 1) / ∏_{d|m, d<m} Φ_d, by ascending divisors.
    let mut numerator = vec![0i64; m as usize + 1];
    numerator[0] = -1;
    numerator[m as usize] = 1;
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        numerator = poly_div_exact(&numerator, &phi_d);
    }
    cache.lock().unwrap().insert(m, numerator.clone());
    numerator
}

/// Exact division of integer polynomials (the divisor is monic and divides).
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; dn - dd + 1];
    for j in (dd..=dn).rev() {
        let c = rem[j];
        if c == 0 {
            continue;
        }
        quot[j - dd] = c;
        for k in 0..=dd {
            rem[j - dd + k] -= c * den[k];
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

impl Cyclo {
    /// The integer `n` viewed in `Z[ζ_m]`.
    pub fn integer(order: u64, n: i64) -> Cyclo {
        debug_assert!(order >= 1);
        let mut coeffs = vec![0i64; order as usize];
        coeffs[0] = n;
        Cyclo { order, coeffs }.normalized()
    }

    pub fn zero(order: u64) -> Cyclo {
        Cyclo::integer(order, 0)
    }

    /// `ζ_m^j`.
    pub fn root_of_unity(order: u64, exponent: u64) -> Cyclo {
        let mut coeffs = vec![0i64; order as usize];
        coeffs[(exponent % order) as usize] = 1;
        Cyclo { order, coeffs }.normalized()
    }

    /// Builds from a raw coefficient vector of length `order` (exponent j
    /// holds the coefficient of `ζ_m^j`), reducing to normal form.
    pub fn from_coeffs(order: u64, coeffs: Vec<i64>) -> Cyclo {
        debug_assert_eq!(coeffs.len(), order as usize);
        Cyclo { order, coeffs }.normalized()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    fn normalized(mut self) -> Cyclo {
        let phi = cyclotomic_polynomial(self.order);
        let deg = phi.len() - 1;
        for j in (deg..self.coeffs.len()).rev() {
            let c = self.coeffs[j];
            if c == 0 {
                continue;
            }
            self.coeffs[j] = 0;
            for k in 0..deg {
                self.coeffs[j - deg + k] -= c * phi[k];
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `Some(n)` when the value is the rational integer `n`.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    /// Reinterprets in `Z[ζ_M]` for a multiple `M` of the current order.
    pub fn lift_to_order(&self, new_order: u64) -> Cyclo {
        debug_assert_eq!(new_order % self.order, 0);
        if new_order == self.order {
            return self.clone();
        }
        let scale = new_order / self.order;
        let mut coeffs = vec![0i64; new_order as usize];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[j * scale as usize] = c;
        }
        Cyclo {
            order: new_order,
            coeffs,
        }
        .normalized()
    }

    fn unified(a: &Cyclo, b: &Cyclo) -> (Cyclo, Cyclo) {
        if a.order == b.order {
            (a.clone(), b.clone())
        } else {
            let m = a.order.lcm(&b.order);
            (a.lift_to_order(m), b.lift_to_order(m))
        }
    }

    pub fn add(&self, other: &Cyclo) -> Cyclo {
        let (mut a, b) = Cyclo::unified(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Cyclo) -> Cyclo {
        let (mut a, b) = Cyclo::unified(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> Cyclo {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = -*c;
        }
        out
    }

    pub fn scale(&self, n: i64) -> Cyclo {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c *= n;
        }
        out
    }

    pub fn mul(&self, other: &Cyclo) -> Cyclo {
        let (a, b) = Cyclo::unified(self, other);
        let m = a.order as usize;
        let mut acc = vec![0i128; m];
        for (i, &ci) in a.coeffs.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            for (j, &cj) in b.coeffs.iter().enumerate() {
                if cj == 0 {
                    continue;
                }
                acc[(i + j) % m] += ci as i128 * cj as i128;
            }
        }
        let coeffs = acc
            .into_iter()
            .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
            .collect();
        Cyclo {
            order: a.order,
            coeffs,
        }
        .normalized()
    }

    /// Complex conjugation: `ζ^j ↦ ζ^{m−j}`.
    pub fn conj(&self) -> Cyclo {
        let m = self.order as usize;
        let mut coeffs = vec![0i64; m];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[(m - j) % m] += c;
        }
        Cyclo {
            order: self.order,
            coeffs,
        }
        .normalized()
    }

    /// Total order on normal forms (for stable sorting of character rows).
    pub fn cmp_canonical(&self, other: &Cyclo) -> std::cmp::Ordering {
        let (a, b) = Cyclo::unified(self, other);
        a.coeffs.cmp(&b.coeffs)
    }

    /// Equality across possibly different declared orders.
    pub fn eq_value(&self, other: &Cyclo) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Cyclo::unified(self, other);
        a.coeffs == b.coeffs
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.unsigned_abs();
            if j == 0 {
                write!(f, "{abs}")?;
            } else {
                if abs != 1 {
                    write!(f, "{abs}")?;
                }
                write!(f, "z{}", self.order)?;
                if j > 1 {
                    write!(f, "^{j}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // First index with a coefficient outside {−1, 0, 1}.
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn sum_of_all_mth_roots_vanishes() {
        for m in 2..=16u64 {
            let mut sum = Cyclo::zero(m);
            for j in 0..m {
                sum = sum.add(&Cyclo::root_of_unity(m, j));
            }
            assert!(sum.is_zero(), "m = {m}");
        }
    }

    #[test]
    fn primitive_cube_roots() {
        let z = Cyclo::root_of_unity(3, 1);
        let z2 = Cyclo::root_of_unity(3, 2);
        assert_eq!(z.add(&z2), Cyclo::integer(3, -1));
        assert_eq!(z.mul(&z2), Cyclo::integer(3, 1));
        assert_eq!(z.conj(), z2);
        assert!(z.as_integer().is_none());
    }

    #[test]
    fn lifting_preserves_values() {
        let z3 = Cyclo::root_of_unity(3, 1);
        let lifted = z3.lift_to_order(12);
        assert_eq!(lifted, Cyclo::root_of_unity(12, 4));
        assert!(z3.eq_value(&lifted));
        // (1 + ζ6)² = 3ζ6, exercising the reduction x² ↦ x − 1 mod Φ6.
        let one_plus = Cyclo::integer(6, 1).add(&Cyclo::root_of_unity(6, 1));
        assert_eq!(
            one_plus.mul(&one_plus),
            Cyclo::root_of_unity(6, 1).scale(3)
        );
    }

    #[test]
    fn golden_ratio_relation_in_z5() {
        // (ζ5 + ζ5⁴)(ζ5² + ζ5³) = −1.
        let a = Cyclo::root_of_unity(5, 1).add(&Cyclo::root_of_unity(5, 4));
        let b = Cyclo::root_of_unity(5, 2).add(&Cyclo::root_of_unity(5, 3));
        assert_eq!(a.mul(&b), Cyclo::integer(5, -1));
    }

    fn arb_cyclo(order: u64) -> impl Strategy<Value = Cyclo> {
        prop::collection::vec(-4i64..=4, order as usize)
            .prop_map(move |coeffs| Cyclo::from_coeffs(order, coeffs))
    }

    proptest! {
        #[test]
        fn prop_ring_axioms(a in arb_cyclo(12), b in arb_cyclo(12), c in arb_cyclo(12)) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b.mul(&c)), a.mul(&b).mul(&c));
            prop_assert_eq!(a.mul(&Cyclo::integer(12, 1)), a.clone());
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn prop_conjugation_is_a_ring_involution(a in arb_cyclo(12), b in arb_cyclo(12)) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!(a.add(&b).conj(), a.conj().add(&b.conj()));
            prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        }

        #[test]
        fn prop_norm_is_nonnegative(a in arb_cyclo(8)) {
            // a · conj(a) at ζ ↦ every embedding is |a|² ≥ 0; in particular
            // its trace-like constant coefficient for a = Σcⱼζ^j is Σ cᵢcⱼ
            // over matching exponents. We only check it vanishes iff a = 0.
            let n = a.mul(&a.conj());
            prop_assert_eq!(n.is_zero(), a.is_zero());
        }
    }
}
