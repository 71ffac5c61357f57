//! Constructors for the groups used throughout: symmetric, alternating,
//! cyclic and abelian products, dihedral, the quaternion group, the Mathieu
//! group M11, Heisenberg groups over odd primes, the Frobenius group of order
//! 21, and explicit user-given generator sets.
//!
//! Each constructor verifies the mathematically expected order rather than
//! trusting the hardcoded generators. Relator lists are attached so the
//! automorphism search can prune; they are checked against the generators at
//! build time.

use std::fmt;

use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::group::{
    evaluate_word, generate_group, word_commutator, word_pow, Group, Word,
};
use crate::numtheory::is_prime;
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    AbelianProduct(Vec<usize>),
    Dihedral(usize),
    QuaternionQ8,
    Mathieu11,
    /// Heisenberg group of upper unitriangular 3x3 matrices over `Z/p`,
    /// acting on its `p³` elements by left translation.
    Heisenberg(usize),
    Frobenius21,
    Explicit(Vec<Perm>),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::AbelianProduct(ns) => {
                let parts: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
                write!(f, "Ab[{}]", parts.join(","))
            }
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::QuaternionQ8 => write!(f, "Q8"),
            GroupSpec::Mathieu11 => write!(f, "M11"),
            GroupSpec::Heisenberg(p) => write!(f, "H{}", p * p * p),
            GroupSpec::Frobenius21 => write!(f, "F21"),
            GroupSpec::Explicit(perms) => {
                let parts: Vec<String> = perms.iter().map(|p| p.to_string()).collect();
                write!(f, "perm: {}", parts.join(", "))
            }
        }
    }
}

/// Parses the textual group-spec grammar used by the CLI:
/// `S5`, `A6`, `C12`, `Ab[2,4,3]`, `D4`, `Q8`, `M11`, `H27`, `F21`,
/// `perm: (1 2 3)(4 5), (1 2)`.
pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let text = text.trim();
    let parse_err = |detail: String| Error::Parse {
        what: "group spec",
        detail,
    };

    if let Some(rest) = text.strip_prefix("perm:") {
        let perms = parse_perm_list(rest)?;
        if perms.is_empty() {
            return Err(parse_err("no permutations given".into()));
        }
        return Ok(GroupSpec::Explicit(perms));
    }
    if text == "Q8" {
        return Ok(GroupSpec::QuaternionQ8);
    }
    if text == "M11" {
        return Ok(GroupSpec::Mathieu11);
    }
    if text == "F21" {
        return Ok(GroupSpec::Frobenius21);
    }
    if let Some(inner) = text.strip_prefix("Ab[").and_then(|r| r.strip_suffix(']')) {
        let mut ns = Vec::new();
        for part in inner.split(',') {
            let n: usize = part
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad factor '{part}'")))?;
            ns.push(n);
        }
        if ns.is_empty() {
            return Err(parse_err("empty factor list".into()));
        }
        return Ok(GroupSpec::AbelianProduct(ns));
    }
    if let Some((head, digits)) = text.split_at_checked(1) {
        if let Ok(n) = digits.parse::<usize>() {
            match head {
                "S" => return Ok(GroupSpec::Symmetric(n)),
                "A" => return Ok(GroupSpec::Alternating(n)),
                "C" => return Ok(GroupSpec::Cyclic(n)),
                "D" => return Ok(GroupSpec::Dihedral(n)),
                "H" => {
                    let p = (1..=n).find(|p| p * p * p == n).ok_or_else(|| {
                        parse_err(format!("H{n}: {n} is not a cube of an odd prime"))
                    })?;
                    return Ok(GroupSpec::Heisenberg(p));
                }
                _ => {}
            }
        }
    }
    Err(parse_err(format!("unrecognised group spec '{text}'")))
}

/// Splits a comma-separated permutation list, ignoring commas inside cycles,
/// and parses everything at the common degree (the largest point mentioned).
fn parse_perm_list(text: &str) -> Result<Vec<Perm>> {
    let mut chunks = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                chunks.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    chunks.push(&text[start..]);
    let chunks: Vec<&str> = chunks
        .into_iter()
        .map(str::trim)
        .filter(|c| !c.is_empty())
        .collect();
    let mut degree = 1;
    for chunk in &chunks {
        if let Some(max) = Perm::max_point(chunk)? {
            degree = degree.max(max);
        }
    }
    chunks.iter().map(|c| Perm::parse(c, degree)).collect()
}

/// Builds the group described by `spec` and verifies its order.
pub fn build(spec: &GroupSpec, cfg: &EngineConfig) -> Result<Group> {
    let (generators, relators, expected_order) = constructors(spec)?;
    let mut group = generate_group(generators, cfg)?;
    if let Some(expected) = expected_order {
        if group.order() != expected {
            return Err(Error::Internal(format!(
                "{spec}: generated order {} but expected {expected}",
                group.order()
            )));
        }
    }
    let relators = match relators {
        RelatorPlan::Fixed(words) => Some(words),
        RelatorPlan::Derived => Some(derived_relators(group.generators())),
        RelatorPlan::None => None,
    };
    if let Some(relators) = relators {
        for w in &relators {
            if !evaluate_word(w, group.generators(), group.degree()).is_identity() {
                return Err(Error::Internal(format!(
                    "{spec}: relator does not hold on the generators"
                )));
            }
        }
        group.attach_presentation(relators);
    }
    Ok(group)
}

enum RelatorPlan {
    Fixed(Vec<Word>),
    /// True relators computed from the actual generator orders; sound for
    /// pruning even though not necessarily a defining presentation.
    Derived,
    None,
}

#[allow(clippy::type_annotations)]
fn constructors(spec: &GroupSpec) -> Result<(Vec<Perm>, RelatorPlan, Option<usize>)> {
    let positive = |n: usize, what: &str| -> Result<()> {
        if n < 1 {
            Err(Error::InvalidParameter(format!("{what} requires n >= 1")))
        } else {
            Ok(())
        }
    };
    match spec {
        GroupSpec::Symmetric(n) => {
            positive(*n, "Symmetric")?;
            let gens = symmetric_generators(*n);
            Ok((gens, RelatorPlan::Derived, Some(factorial(*n))))
        }
        GroupSpec::Alternating(n) => {
            positive(*n, "Alternating")?;
            let gens = alternating_generators(*n);
            let order = if *n < 2 { 1 } else { factorial(*n) / 2 };
            Ok((gens, RelatorPlan::Derived, Some(order)))
        }
        GroupSpec::Cyclic(n) => {
            positive(*n, "Cyclic")?;
            if *n == 1 {
                return Ok((Vec::new(), RelatorPlan::None, Some(1)));
            }
            let gens = vec![full_cycle(*n)];
            Ok((gens, RelatorPlan::Fixed(vec![word_pow(&[1], *n as u32)]), Some(*n)))
        }
        GroupSpec::AbelianProduct(ns) => {
            if ns.iter().any(|&n| n < 1) {
                return Err(Error::InvalidParameter(
                    "AbelianProduct factors must be >= 1".into(),
                ));
            }
            let degree: usize = ns.iter().sum();
            let mut gens = Vec::new();
            let mut offset = 0;
            for &n in ns {
                if n > 1 {
                    let cycle: Vec<usize> = (offset..offset + n).collect();
                    gens.push(Perm::from_cycles(&[cycle], degree)?);
                }
                offset += n;
            }
            let mut relators: Vec<Word> = Vec::new();
            let lens: Vec<usize> = ns.iter().copied().filter(|&n| n > 1).collect();
            for (i, &n) in lens.iter().enumerate() {
                relators.push(word_pow(&[i as i32 + 1], n as u32));
                for j in i + 1..lens.len() {
                    relators.push(word_commutator(i as i32 + 1, j as i32 + 1));
                }
            }
            let order = ns.iter().product();
            Ok((gens, RelatorPlan::Fixed(relators), Some(order)))
        }
        GroupSpec::Dihedral(n) => {
            positive(*n, "Dihedral")?;
            let (gens, relators) = dihedral_generators(*n);
            Ok((gens, RelatorPlan::Fixed(relators), Some(2 * n)))
        }
        GroupSpec::QuaternionQ8 => {
            let a = Perm::parse("(1 2 3 4)(5 6 7 8)", 8)?;
            let b = Perm::parse("(1 5 3 7)(2 8 4 6)", 8)?;
            // a⁴ = e, a² = b², b a b⁻¹ = a⁻¹.
            let relators = vec![
                word_pow(&[1], 4),
                vec![1, 1, -2, -2],
                vec![2, 1, -2, 1],
            ];
            Ok((vec![a, b], RelatorPlan::Fixed(relators), Some(8)))
        }
        GroupSpec::Mathieu11 => {
            let a = full_cycle(11);
            let b = Perm::parse("(3 7 11 8)(4 10 5 6)", 11)?;
            Ok((vec![a, b], RelatorPlan::Derived, Some(7920)))
        }
        GroupSpec::Heisenberg(p) => {
            let p = *p;
            if p < 3 || !is_prime(p as u64) {
                return Err(Error::InvalidParameter(format!(
                    "Heisenberg requires an odd prime, got {p}"
                )));
            }
            let gens = heisenberg_generators(p);
            // x^p = y^p = [x,y]^p = e with [x,y] central.
            let z = word_commutator(1, 2);
            let z_inv: Word = z.iter().rev().map(|&l| -l).collect();
            let comm_with = |letter: i32| -> Word {
                let mut w = z_inv.clone();
                w.push(-letter);
                w.extend_from_slice(&z);
                w.push(letter);
                w
            };
            let relators = vec![
                word_pow(&[1], p as u32),
                word_pow(&[2], p as u32),
                word_pow(&z, p as u32),
                comm_with(1),
                comm_with(2),
            ];
            Ok((gens, RelatorPlan::Fixed(relators), Some(p * p * p)))
        }
        GroupSpec::Frobenius21 => {
            let a = full_cycle(7);
            // Multiplication by 2 on Z/7 conjugates a to a².
            let b = Perm::parse("(2 3 5)(4 7 6)", 7)?;
            // a⁷ = b³ = e, b a b⁻¹ = a².
            let relators = vec![
                word_pow(&[1], 7),
                word_pow(&[2], 3),
                vec![2, 1, -2, -1, -1],
            ];
            Ok((vec![a, b], RelatorPlan::Fixed(relators), Some(21)))
        }
        GroupSpec::Explicit(perms) => Ok((perms.clone(), RelatorPlan::None, None)),
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn full_cycle(n: usize) -> Perm {
    Perm::from_cycles(&[(0..n).collect()], n).expect("full cycle is valid")
}

fn symmetric_generators(n: usize) -> Vec<Perm> {
    match n {
        0 | 1 => Vec::new(),
        2 => vec![Perm::from_cycles(&[vec![0, 1]], 2).unwrap()],
        _ => vec![
            Perm::from_cycles(&[vec![0, 1]], n).unwrap(),
            full_cycle(n),
        ],
    }
}

fn alternating_generators(n: usize) -> Vec<Perm> {
    match n {
        0..=2 => Vec::new(),
        3 => vec![Perm::from_cycles(&[vec![0, 1, 2]], 3).unwrap()],
        _ => {
            let three = Perm::from_cycles(&[vec![0, 1, 2]], n).unwrap();
            let long = if n % 2 == 1 {
                full_cycle(n)
            } else {
                Perm::from_cycles(&[(1..n).collect()], n).unwrap()
            };
            vec![three, long]
        }
    }
}

fn dihedral_generators(n: usize) -> (Vec<Perm>, Vec<Word>) {
    match n {
        1 => (
            vec![Perm::from_cycles(&[vec![0, 1]], 2).unwrap()],
            vec![word_pow(&[1], 2)],
        ),
        2 => {
            let r = Perm::from_cycles(&[vec![0, 1], vec![2, 3]], 4).unwrap();
            let s = Perm::from_cycles(&[vec![0, 1]], 4).unwrap();
            (
                vec![r, s],
                vec![word_pow(&[1], 2), word_pow(&[2], 2), word_pow(&[1, 2], 2)],
            )
        }
        _ => {
            let r = full_cycle(n);
            let s = Perm::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
            (
                vec![r, s],
                vec![
                    word_pow(&[1], n as u32),
                    word_pow(&[2], 2),
                    word_pow(&[1, 2], 2),
                ],
            )
        }
    }
}

fn heisenberg_generators(p: usize) -> Vec<Perm> {
    let idx = |a: usize, b: usize, c: usize| a * p * p + b * p + c;
    // Left translation: g · (a, b, c) with the unitriangular product
    // (a₁,b₁,c₁)·(a₂,b₂,c₂) = (a₁+a₂, b₁+b₂, c₁+c₂+a₁b₂).
    let translate = |ga: usize, gb: usize, gc: usize| -> Perm {
        let mut images = vec![0usize; p * p * p];
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    let na = (ga + a) % p;
                    let nb = (gb + b) % p;
                    let nc = (gc + c + ga * b) % p;
                    images[idx(a, b, c)] = idx(na, nb, nc);
                }
            }
        }
        Perm::from_images(images).expect("translation is a bijection")
    };
    vec![translate(1, 0, 0), translate(0, 1, 0)]
}

/// A fixed family of short words whose true orders become relators. These
/// hold on the generators by construction, so they can only prune impostors,
/// never genuine automorphisms.
fn derived_relators(gens: &[Perm]) -> Vec<Word> {
    if gens.is_empty() {
        return Vec::new();
    }
    let degree = gens[0].degree();
    let mut words: Vec<Word> = Vec::new();
    for i in 0..gens.len() as i32 {
        words.push(vec![i + 1]);
        for j in i + 1..gens.len() as i32 {
            words.push(vec![i + 1, j + 1]);
            words.push(vec![i + 1, -(j + 1)]);
            words.push(vec![i + 1, i + 1, j + 1]);
            words.push(vec![i + 1, j + 1, j + 1]);
            words.push(word_commutator(i + 1, j + 1));
        }
    }
    words
        .into_iter()
        .map(|w| {
            let order = evaluate_word(&w, gens, degree).order() as u32;
            word_pow(&w, order)
        })
        .collect()
}

/// Number of Sylow `p`-subgroups in the cyclic-Sylow case: requires `p`
/// prime with `p` dividing the order exactly once, and counts the subgroups
/// of order `p` as (elements of order p) / (p − 1).
pub fn sylow_count(group: &Group, p: usize) -> Result<usize> {
    let n = group.order();
    if !is_prime(p as u64) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if n % p != 0 {
        return Err(Error::InvalidParameter(format!(
            "{p} does not divide the group order {n}"
        )));
    }
    if (n / p) % p == 0 {
        return Err(Error::InvalidParameter(format!(
            "{p}^2 divides the group order {n}; only cyclic Sylow subgroups are supported"
        )));
    }
    let elements_of_order_p = (0..n as u32)
        .filter(|&g| group.element_order(g) == p as u64)
        .count();
    debug_assert_eq!(elements_of_order_p % (p - 1), 0);
    Ok(elements_of_order_p / (p - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    #[test]
    fn orders_of_the_small_catalog() {
        let cases: Vec<(GroupSpec, usize)> = vec![
            (GroupSpec::Symmetric(1), 1),
            (GroupSpec::Symmetric(4), 24),
            (GroupSpec::Alternating(2), 1),
            (GroupSpec::Alternating(5), 60),
            (GroupSpec::Cyclic(12), 12),
            (GroupSpec::AbelianProduct(vec![2, 4, 3]), 24),
            (GroupSpec::Dihedral(1), 2),
            (GroupSpec::Dihedral(2), 4),
            (GroupSpec::Dihedral(4), 8),
            (GroupSpec::QuaternionQ8, 8),
            (GroupSpec::Heisenberg(3), 27),
            (GroupSpec::Frobenius21, 21),
        ];
        for (spec, expected) in cases {
            let g = build(&spec, &cfg()).unwrap();
            assert_eq!(g.order(), expected, "order of {spec}");
        }
    }

    #[test]
    fn mathieu11_has_order_7920() {
        let g = build(&GroupSpec::Mathieu11, &cfg()).unwrap();
        assert_eq!(g.order(), 7920);
        assert_eq!(g.order(), 16 * 9 * 5 * 11);
    }

    #[test]
    fn heisenberg3_is_nonabelian_of_odd_order() {
        let g = build(&GroupSpec::Heisenberg(3), &cfg()).unwrap();
        assert_eq!(g.order(), 27);
        assert!(!g.is_abelian());
        assert!(g.order() % 2 == 1);
        // Brute-force: some pair fails to commute.
        let some_noncommuting = (0..27u32)
            .any(|i| (0..27u32).any(|j| !g.commute(i, j)));
        assert!(some_noncommuting);
    }

    #[test]
    fn heisenberg_rejects_bad_parameters() {
        assert!(build(&GroupSpec::Heisenberg(2), &cfg()).is_err());
        assert!(build(&GroupSpec::Heisenberg(4), &cfg()).is_err());
        assert!(build(&GroupSpec::Symmetric(0), &cfg()).is_err());
    }

    #[test]
    fn attached_relators_hold_on_the_generators() {
        for spec in [
            GroupSpec::Symmetric(5),
            GroupSpec::Alternating(6),
            GroupSpec::Cyclic(6),
            GroupSpec::AbelianProduct(vec![2, 4, 3]),
            GroupSpec::Dihedral(4),
            GroupSpec::QuaternionQ8,
            GroupSpec::Mathieu11,
            GroupSpec::Heisenberg(3),
            GroupSpec::Frobenius21,
        ] {
            let g = build(&spec, &cfg()).unwrap();
            let relators = g.presentation().unwrap_or_else(|| {
                panic!("{spec} should carry relators")
            });
            assert!(!relators.is_empty(), "{spec}");
            for w in relators {
                assert!(
                    evaluate_word(w, g.generators(), g.degree()).is_identity(),
                    "relator fails on {spec}"
                );
            }
        }
    }

    #[test]
    fn sylow_counts() {
        let s3 = build(&GroupSpec::Symmetric(3), &cfg()).unwrap();
        assert_eq!(sylow_count(&s3, 3).unwrap(), 1);
        let a5 = build(&GroupSpec::Alternating(5), &cfg()).unwrap();
        assert_eq!(sylow_count(&a5, 5).unwrap(), 6);
        // Preconditions: p must divide the order exactly once.
        assert!(sylow_count(&a5, 2).is_err());
        assert!(sylow_count(&a5, 7).is_err());
        assert!(sylow_count(&a5, 4).is_err());
    }

    #[test]
    fn spec_grammar_round_trips() {
        for text in [
            "S5", "A6", "C12", "Ab[2,4,3]", "D4", "Q8", "M11", "H27", "F21",
        ] {
            let spec = parse_spec(text).unwrap();
            assert_eq!(spec.to_string(), text);
        }
        let spec = parse_spec("perm: (1 2 3)(4 5), (1 2)").unwrap();
        match &spec {
            GroupSpec::Explicit(perms) => {
                assert_eq!(perms.len(), 2);
                assert_eq!(perms[0].degree(), 5);
                assert_eq!(perms[1].degree(), 5);
            }
            other => panic!("unexpected spec {other:?}"),
        }
        let g = build(&spec, &cfg()).unwrap();
        assert_eq!(g.order(), 120);
    }

    #[test]
    fn spec_grammar_rejects_garbage() {
        for text in ["", "S", "Sx", "H8", "H28", "Ab[]", "Ab[2,", "X5", "perm:"] {
            assert!(parse_spec(text).is_err(), "{text:?} should not parse");
        }
    }

    #[test]
    fn build_is_deterministic() {
        let a = build(&GroupSpec::Symmetric(4), &cfg()).unwrap();
        let b = build(&GroupSpec::Symmetric(4), &cfg()).unwrap();
        assert_eq!(a.elements(), b.elements());
    }
}
