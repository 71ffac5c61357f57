//! Exact irreducible character tables.
//!
//! Characters are found as joint eigenvectors of the class-multiplication
//! matrices over a prime field GF(p) with p ≡ 1 (mod exp(G)) and
//! p > 2·√|G|, then lifted to cyclotomic integers through discrete
//! logarithms of a fixed element of order exp(G). Every step is exact; a
//! failure to stay exact is an error, never an approximation.

use crate::config::EngineConfig;
use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::modp::{element_of_order, find_dixon_prime, Matrix, PrimeField};
use crate::numtheory::isqrt;

/// `a[i][j][k]` counts pairs `(x, y) ∈ Cᵢ × Cⱼ` with `x·y = z₀` for the
/// fixed canonical representative `z₀` of `C_k`.
pub type ClassMultCoeffs = Vec<Vec<Vec<u64>>>;

pub fn class_mult_coefficients(group: &Group) -> ClassMultCoeffs {
    let classes = group.classes();
    let r = classes.num_classes();
    let n = group.order() as u32;
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for k in 0..r {
        let z0 = classes.rep(k as u32);
        for x in 0..n {
            let y = group.mult(group.inverse(x), z0);
            let i = classes.class_of(x) as usize;
            let j = classes.class_of(y) as usize;
            a[i][j][k] += 1;
        }
    }
    a
}

/// An exact character table; rows are ordered by degree, then
/// lexicographically on the value vector in class-index order.
pub struct CharacterTable {
    exponent: u64,
    prime: u64,
    degrees: Vec<u64>,
    /// `values[irrep][class]`.
    values: Vec<Vec<Cyclo>>,
}

impl CharacterTable {
    pub fn num_irreps(&self) -> usize {
        self.values.len()
    }

    pub fn num_classes(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn degree(&self, irrep: usize) -> u64 {
        self.degrees[irrep]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn value(&self, irrep: usize, class: usize) -> &Cyclo {
        &self.values[irrep][class]
    }

    pub fn row(&self, irrep: usize) -> &[Cyclo] {
        &self.values[irrep]
    }

    pub fn is_real_row(&self, irrep: usize) -> bool {
        self.values[irrep].iter().all(|v| &v.conj() == v)
    }

    /// Reassembles a table from stored parts, re-deriving the degrees from
    /// the values at the identity class.
    pub fn from_parts(exponent: u64, prime: u64, values: Vec<Vec<Cyclo>>) -> Result<CharacterTable> {
        let degrees = values
            .iter()
            .map(|row| {
                row.first()
                    .and_then(Cyclo::as_integer)
                    .filter(|&d| d > 0)
                    .map(|d| d as u64)
                    .ok_or_else(|| Error::Internal("bad character degree".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CharacterTable {
            exponent,
            prime,
            degrees,
            values,
        })
    }
}

/// True iff complex conjugation fixes every row of the table.
pub fn all_characters_real(table: &CharacterTable) -> bool {
    (0..table.num_irreps()).all(|i| table.is_real_row(i))
}

pub fn character_table(group: &Group, cfg: &EngineConfig) -> Result<CharacterTable> {
    let classes = group.classes();
    let r = classes.num_classes();
    let n = group.order() as u64;
    let exponent = group.exponent();
    let prime = find_dixon_prime(exponent, n, cfg.prime_search_bound)?;
    let field = PrimeField::new(prime);
    let zeta_mod_p = element_of_order(field, exponent);

    let coeffs = class_mult_coefficients(group);
    let class_matrix = |i: usize| -> Matrix {
        let mut m = Matrix::zero(r, r);
        for j in 0..r {
            for k in 0..r {
                m[(j, k)] = coeffs[i][j][k] % prime;
            }
        }
        m
    };

    // Common eigenvectors of all class matrices by iterated splitting.
    let mut subspaces: Vec<Vec<Vec<u64>>> =
        vec![(0..r).map(|j| unit_vector(r, j)).collect()];

    for i in 1..r {
        if subspaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m_i = class_matrix(i);
        let mut next = Vec::with_capacity(subspaces.len());
        for basis in subspaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            next.extend(split_subspace(&m_i, &basis, field)?);
        }
        subspaces = next;
    }
    if subspaces.len() != r || subspaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Internal(
            "class matrices failed to split into one-dimensional joint eigenspaces".into(),
        ));
    }

    // Normalise so the identity-class component is 1; then
    // ω_k = |C_k| χ(g_k) / χ(1) mod p.
    let mut omegas = Vec::with_capacity(r);
    for s in subspaces {
        let v = &s[0];
        if v[0] == 0 {
            return Err(Error::Internal(
                "eigenvector with zero identity component".into(),
            ));
        }
        let inv0 = field.inv(v[0]);
        omegas.push(v.iter().map(|&x| field.mul(x, inv0)).collect::<Vec<u64>>());
    }

    let sizes: Vec<u64> = classes.sizes().iter().map(|&s| s as u64).collect();
    let size_inv: Vec<u64> = sizes.iter().map(|&s| field.inv(s % prime)).collect();

    // Degrees from Σ_k ω_k ω_{k⁻¹} / |C_k| = |G| / d²; the bound
    // p > 2·√|G| pins d uniquely.
    let mut degrees = Vec::with_capacity(r);
    for omega in &omegas {
        let mut s = 0u64;
        for k in 0..r {
            let inv_k = classes.inverse_class(k as u32) as usize;
            s = field.add(s, field.mul(field.mul(omega[k], omega[inv_k]), size_inv[k]));
        }
        let n_mod = n % prime;
        let d = (1..=isqrt(n))
            .find(|&d| field.mul(field.mul(d % prime, d % prime), s) == n_mod)
            .ok_or_else(|| Error::Internal("no degree matches the eigenvector norm".into()))?;
        degrees.push(d);
    }

    // Character values mod p, then the cyclotomic lift: μ_s, the
    // multiplicity of the eigenvalue ζ_o^s of a representing matrix, is
    // recovered by a discrete Fourier sum and must land in [0, d].
    let mut power_classes: Vec<Vec<usize>> = Vec::with_capacity(r);
    for k in 0..r {
        let g = classes.rep(k as u32);
        let o = group.element_order(g);
        let mut pow = 0u32;
        let mut pc = Vec::with_capacity(o as usize);
        for _ in 0..o {
            pc.push(classes.class_of(pow) as usize);
            pow = group.mult(pow, g);
        }
        power_classes.push(pc);
    }

    let mut rows: Vec<(u64, Vec<Cyclo>)> = Vec::with_capacity(r);
    for (omega, &d) in omegas.iter().zip(&degrees) {
        let t: Vec<u64> = (0..r)
            .map(|k| field.mul(field.mul(d % prime, omega[k]), size_inv[k]))
            .collect();
        let mut values = Vec::with_capacity(r);
        for k in 0..r {
            let o = power_classes[k].len() as u64;
            let z_o = field.pow(zeta_mod_p, exponent / o);
            let z_o_inv = field.inv(z_o);
            let o_inv = field.inv(o % prime);
            let mut coeff_vec = vec![0i64; exponent as usize];
            for s in 0..o {
                let mut acc = 0u64;
                for (l, &pc) in power_classes[k].iter().enumerate() {
                    let phase = field.pow(z_o_inv, s * l as u64 % o);
                    acc = field.add(acc, field.mul(t[pc], phase));
                }
                let mu = field.mul(acc, o_inv);
                if mu > d {
                    return Err(Error::Internal(format!(
                        "eigenvalue multiplicity {mu} exceeds the degree {d}"
                    )));
                }
                coeff_vec[((exponent / o) * s) as usize] += mu as i64;
            }
            values.push(Cyclo::from_coeffs(exponent, coeff_vec));
        }
        rows.push((d, values));
    }

    rows.sort_by(|(da, va), (db, vb)| {
        da.cmp(db).then_with(|| {
            for (x, y) in va.iter().zip(vb) {
                let c = x.cmp_canonical(y);
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
    });

    let degrees: Vec<u64> = rows.iter().map(|(d, _)| *d).collect();
    let values: Vec<Vec<Cyclo>> = rows.into_iter().map(|(_, v)| v).collect();

    if degrees.iter().map(|d| d * d).sum::<u64>() != n {
        return Err(Error::Internal(
            "degrees do not satisfy the sum-of-squares identity".into(),
        ));
    }
    if !values
        .iter()
        .any(|row| row.iter().all(|v| v.as_integer() == Some(1)))
    {
        return Err(Error::Internal("trivial character missing".into()));
    }

    Ok(CharacterTable {
        exponent,
        prime,
        degrees,
        values,
    })
}

fn unit_vector(len: usize, j: usize) -> Vec<u64> {
    let mut v = vec![0u64; len];
    v[j] = 1;
    v
}

/// Splits `span(basis)` into eigenspaces of `m` (which must preserve it).
fn split_subspace(
    m: &Matrix,
    basis: &[Vec<u64>],
    field: PrimeField,
) -> Result<Vec<Vec<Vec<u64>>>> {
    let b = Matrix::from_columns(basis);
    let mb = m.mul(&b, field);
    let x = b
        .solve(&mb, field)
        .ok_or_else(|| Error::Internal("class matrix does not preserve a subspace".into()))?;
    let d = basis.len();
    let mut out = Vec::new();
    let mut found = 0usize;
    for lambda in 0..field.p {
        let mut shifted = x.clone();
        for i in 0..d {
            shifted[(i, i)] = field.sub(shifted[(i, i)], lambda);
        }
        let kernel = shifted.kernel(field);
        if kernel.is_empty() {
            continue;
        }
        found += kernel.len();
        let k = Matrix::from_columns(&kernel);
        let lifted = b.mul(&k, field);
        out.push((0..kernel.len()).map(|j| lifted.column(j)).collect());
        if found == d {
            break;
        }
    }
    if found != d {
        return Err(Error::Internal(
            "class matrix is not diagonalizable over the chosen field".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, GroupSpec};

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    fn table_of(spec: GroupSpec) -> (crate::group::Group, CharacterTable) {
        let g = build(&spec, &cfg()).unwrap();
        let t = character_table(&g, &cfg()).unwrap();
        (g, t)
    }

    #[test]
    fn trivial_group() {
        let (_, t) = table_of(GroupSpec::Cyclic(1));
        assert_eq!(t.num_irreps(), 1);
        assert_eq!(t.degrees(), &[1]);
    }

    #[test]
    fn class_mult_coefficients_of_s3() {
        let g = build(&GroupSpec::Symmetric(3), &cfg()).unwrap();
        let a = class_mult_coefficients(&g);
        let classes = g.classes();
        let transposition_class = classes.class_of(
            g.index_of(&crate::perm::Perm::parse("(1 2)", 3).unwrap())
                .unwrap(),
        ) as usize;
        // Two transpositions multiply to the identity in exactly 3 ways.
        assert_eq!(a[transposition_class][transposition_class][0], 3);
        // Counting identity: Σ_k a_ijk |C_k| = |C_i||C_j|.
        let r = classes.num_classes();
        for i in 0..r {
            for j in 0..r {
                let lhs: u64 = (0..r)
                    .map(|k| a[i][j][k] * classes.size(k as u32) as u64)
                    .sum();
                let rhs =
                    classes.size(i as u32) as u64 * classes.size(j as u32) as u64;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn c2_table() {
        let (_, t) = table_of(GroupSpec::Cyclic(2));
        assert_eq!(t.degrees(), &[1, 1]);
        let values: Vec<Vec<i64>> = (0..2)
            .map(|i| (0..2).map(|k| t.value(i, k).as_integer().unwrap()).collect())
            .collect();
        assert_eq!(values, vec![vec![1, 1], vec![1, -1]]);
    }

    #[test]
    fn s3_degrees() {
        let (_, t) = table_of(GroupSpec::Symmetric(3));
        assert_eq!(t.degrees(), &[1, 1, 2]);
        assert!(all_characters_real(&t));
    }

    #[test]
    fn q8_is_real_with_degrees_1_1_1_1_2() {
        let (_, t) = table_of(GroupSpec::QuaternionQ8);
        assert_eq!(t.degrees(), &[1, 1, 1, 1, 2]);
        assert!(all_characters_real(&t));
    }

    #[test]
    fn c3_has_non_real_characters() {
        let (_, t) = table_of(GroupSpec::Cyclic(3));
        assert_eq!(t.degrees(), &[1, 1, 1]);
        assert!(!all_characters_real(&t));
    }

    fn check_orthogonality(g: &crate::group::Group, t: &CharacterTable) {
        let classes = g.classes();
        let r = t.num_irreps();
        let n = g.order() as i64;
        let m = t.exponent();
        // Rows: Σ_c |C| χᵢ(c) conj(χⱼ(c)) = |G| δᵢⱼ.
        for i in 0..r {
            for j in 0..r {
                let mut sum = Cyclo::zero(m);
                for k in 0..r {
                    let term = t
                        .value(i, k)
                        .mul(&t.value(j, k).conj())
                        .scale(classes.size(k as u32) as i64);
                    sum = sum.add(&term);
                }
                let expected = if i == j { n } else { 0 };
                assert_eq!(sum.as_integer(), Some(expected), "rows {i},{j}");
            }
        }
        // Columns: Σᵢ χᵢ(c) conj(χᵢ(c')) = δ_{cc'} |C_G(c)|.
        for c in 0..r {
            for c2 in 0..r {
                let mut sum = Cyclo::zero(m);
                for i in 0..r {
                    sum = sum.add(&t.value(i, c).mul(&t.value(i, c2).conj()));
                }
                let expected = if c == c2 {
                    n / classes.size(c as u32) as i64
                } else {
                    0
                };
                assert_eq!(sum.as_integer(), Some(expected), "cols {c},{c2}");
            }
        }
    }

    #[test]
    fn orthogonality_for_small_groups() {
        for spec in [
            GroupSpec::Symmetric(4),
            GroupSpec::Alternating(4),
            GroupSpec::Dihedral(4),
            GroupSpec::Frobenius21,
            GroupSpec::Heisenberg(3),
            GroupSpec::AbelianProduct(vec![2, 4, 3]),
        ] {
            let (g, t) = table_of(spec);
            assert_eq!(t.num_irreps(), g.classes().num_classes());
            check_orthogonality(&g, &t);
        }
    }

    #[test]
    fn value_at_inverse_class_is_the_conjugate() {
        let (g, t) = table_of(GroupSpec::Frobenius21);
        let classes = g.classes();
        for i in 0..t.num_irreps() {
            for k in 0..t.num_classes() {
                let inv_k = classes.inverse_class(k as u32) as usize;
                assert_eq!(t.value(i, inv_k), &t.value(i, k).conj());
            }
        }
    }

    #[test]
    fn tables_are_deterministic() {
        let g = build(&GroupSpec::Symmetric(4), &cfg()).unwrap();
        let t1 = character_table(&g, &cfg()).unwrap();
        let t2 = character_table(&g, &cfg()).unwrap();
        assert_eq!(t1.degrees(), t2.degrees());
        for i in 0..t1.num_irreps() {
            assert_eq!(t1.row(i), t2.row(i));
        }
    }

    #[test]
    fn prime_bound_failure_is_reported() {
        let g = build(&GroupSpec::Frobenius21, &cfg()).unwrap();
        let mut small = cfg();
        small.prime_search_bound = 30;
        assert!(matches!(
            character_table(&g, &small),
            Err(Error::PrimeSearchFailed { bound: 30, .. })
        ));
    }
}
