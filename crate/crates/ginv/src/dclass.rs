//! Commuting pairs and their orbits under simultaneous conjugation, plus the
//! closed-form parametrization of these orbits for symmetric groups by
//! factorized partitions with units.

use std::collections::HashMap;

use num_integer::Integer;

use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Perm;

/// Orbit data of the simultaneous conjugation action
/// `h · (f, g) = (hfh⁻¹, hgh⁻¹)` on commuting pairs.
pub struct DoubleClassData {
    pairs: Vec<(u32, u32)>,
    pair_class: HashMap<(u32, u32), u32>,
    reps: Vec<(u32, u32)>,
    sizes: Vec<u32>,
    inverse_dclass: Vec<u32>,
}

impl DoubleClassData {
    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }

    /// All commuting pairs in ascending lexicographic order.
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// Class of a commuting pair; `None` when the pair does not commute.
    pub fn class_of_pair(&self, f: u32, g: u32) -> Option<u32> {
        self.pair_class.get(&(f, g)).copied()
    }

    /// Canonical representative: the lexicographically least pair.
    pub fn rep(&self, class: u32) -> (u32, u32) {
        self.reps[class as usize]
    }

    pub fn size(&self, class: u32) -> u32 {
        self.sizes[class as usize]
    }

    /// Class of `(f⁻¹, g⁻¹)` for `(f, g)` in `class`; an involution.
    pub fn inverse_dclass(&self, class: u32) -> u32 {
        self.inverse_dclass[class as usize]
    }
}

/// Enumerates commuting pairs and partitions them into simultaneous
/// conjugation orbits.
pub fn double_classes(group: &Group, cfg: &EngineConfig) -> Result<DoubleClassData> {
    let n = group.order();
    if n > cfg.double_class_max_order {
        return Err(Error::CapExceeded {
            what: "double-class",
            order: n,
            cap: cfg.double_class_max_order,
        });
    }

    let mut pairs = Vec::new();
    for f in 0..n as u32 {
        for g in 0..n as u32 {
            if group.commute(f, g) {
                pairs.push((f, g));
            }
        }
    }

    // Conjugation by each generator as an index table, so orbit walks do no
    // permutation arithmetic.
    let gen_conj: Vec<Vec<u32>> = group
        .generator_indices()
        .iter()
        .map(|&s| (0..n as u32).map(|x| group.conjugate(s, x)).collect())
        .collect();

    let mut pair_class: HashMap<(u32, u32), u32> = HashMap::with_capacity(pairs.len());
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for &pair in &pairs {
        if pair_class.contains_key(&pair) {
            continue;
        }
        let class_id = reps.len() as u32;
        reps.push(pair);
        let mut orbit = vec![pair];
        pair_class.insert(pair, class_id);
        let mut head = 0;
        while head < orbit.len() {
            let (f, g) = orbit[head];
            head += 1;
            for table in &gen_conj {
                let next = (table[f as usize], table[g as usize]);
                if !pair_class.contains_key(&next) {
                    pair_class.insert(next, class_id);
                    orbit.push(next);
                }
            }
        }
        sizes.push(orbit.len() as u32);
    }

    let inverse_dclass = reps
        .iter()
        .map(|&(f, g)| pair_class[&(group.inverse(f), group.inverse(g))])
        .collect();

    Ok(DoubleClassData {
        pairs,
        pair_class,
        reps,
        sizes,
        inverse_dclass,
    })
}

/// One orbit of `⟨σ, π⟩` contributes a block `n_σ · n_mid · n_π` together
/// with a unit `a` modulo `n_mid`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Block {
    pub n_sigma: u32,
    pub n_mid: u32,
    pub n_pi: u32,
    /// Unit of `Z/n_mid`, canonicalized to its least positive residue; `1`
    /// when `n_mid = 1`.
    pub unit: u32,
}

impl Block {
    pub fn size(&self) -> u32 {
        self.n_sigma * self.n_mid * self.n_pi
    }
}

/// A multiset of blocks whose sizes sum to `n`; the complete invariant of a
/// double conjugacy class of `S_n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FactorizedPartition {
    blocks: Vec<Block>,
}

impl FactorizedPartition {
    pub fn new(mut blocks: Vec<Block>) -> FactorizedPartition {
        blocks.sort_unstable_by_key(block_key);
        FactorizedPartition { blocks }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn total(&self) -> u32 {
        self.blocks.iter().map(Block::size).sum()
    }
}

impl std::fmt::Display for FactorizedPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·{}·{}", b.n_sigma, b.n_mid, b.n_pi)?;
            if b.n_mid > 1 {
                write!(f, " (a={})", b.unit)?;
            }
        }
        Ok(())
    }
}

/// Blocks sorted by descending size, then componentwise; purely a canonical
/// presentation choice.
fn block_key(b: &Block) -> (std::cmp::Reverse<u32>, u32, u32, u32, u32) {
    (
        std::cmp::Reverse(b.size()),
        b.n_sigma,
        b.n_mid,
        b.n_pi,
        b.unit,
    )
}

/// Computes the factorized-partition invariant of a commuting pair of
/// permutations of `n` points.
///
/// Per `⟨σ, π⟩`-orbit the block records the orders `m_σ, m_π` of the two
/// restrictions split as `n_σ · n_mid` and `n_mid · n_π`, where `n_mid` is
/// the order of `⟨σ⟩ ∩ ⟨π⟩` in the restricted action, and the unit `a` with
/// `π^{n_π} = σ^{n_σ · a}` on the orbit.
pub fn sn_double_class_invariant(n: usize, sigma: &Perm, pi: &Perm) -> Result<FactorizedPartition> {
    if sigma.degree() != n || pi.degree() != n {
        return Err(Error::InvalidParameter(format!(
            "expected two permutations of degree {n}"
        )));
    }
    if !commute_perms(sigma, pi) {
        return Err(Error::NonCommuting);
    }

    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        // Orbit of ⟨σ, π⟩ through `start`.
        let mut orbit = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for q in [sigma.apply(p), pi.apply(p)] {
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        blocks.push(orbit_block(&orbit, sigma, pi));
    }
    Ok(FactorizedPartition::new(blocks))
}

/// Restriction of `p` to `orbit`, as images into orbit-local positions.
fn restrict(p: &Perm, orbit: &[usize]) -> Vec<u16> {
    let pos: HashMap<usize, u16> = orbit
        .iter()
        .enumerate()
        .map(|(i, &pt)| (pt, i as u16))
        .collect();
    orbit.iter().map(|&pt| pos[&p.apply(pt)]).collect()
}

fn local_compose(a: &[u16], b: &[u16]) -> Vec<u16> {
    b.iter().map(|&x| a[x as usize]).collect()
}

fn local_identity(len: usize) -> Vec<u16> {
    (0..len as u16).collect()
}

fn orbit_block(orbit: &[usize], sigma: &Perm, pi: &Perm) -> Block {
    let s = restrict(sigma, orbit);
    let p = restrict(pi, orbit);
    let id = local_identity(orbit.len());

    let powers = |gen: &[u16]| -> Vec<Vec<u16>> {
        let mut out = vec![id.clone()];
        let mut cur = id.clone();
        loop {
            cur = local_compose(gen, &cur);
            if cur == id {
                break;
            }
            out.push(cur.clone());
        }
        out
    };
    let s_powers = powers(&s);
    let p_powers = powers(&p);
    let m_sigma = s_powers.len() as u32;
    let m_pi = p_powers.len() as u32;

    // |⟨σ⟩ ∩ ⟨π⟩| in the restricted action.
    let n_mid = s_powers.iter().filter(|sp| p_powers.contains(sp)).count() as u32;
    debug_assert!(m_sigma % n_mid == 0 && m_pi % n_mid == 0);
    let n_sigma = m_sigma / n_mid;
    let n_pi = m_pi / n_mid;

    // π^{n_π} generates the intersection; find the unique unit a with
    // π^{n_π} = σ^{n_σ a}. Orbit sizes are tiny, so a direct scan is the
    // discrete logarithm.
    let target = &p_powers[(n_pi % m_pi) as usize];
    let mut unit = 1;
    if n_mid > 1 {
        let mut found = None;
        for a in 1..=n_mid {
            if a.gcd(&n_mid) != 1 {
                continue;
            }
            let idx = ((n_sigma as u64 * a as u64) % m_sigma as u64) as usize;
            if &s_powers[idx] == target {
                found = Some(a);
                break;
            }
        }
        unit = found.expect("intersection generators must match for some unit");
    }

    debug_assert_eq!((n_sigma * n_mid * n_pi) as usize, orbit.len());
    Block {
        n_sigma,
        n_mid,
        n_pi,
        unit,
    }
}

fn commute_perms(a: &Perm, b: &Perm) -> bool {
    (0..a.degree()).all(|p| a.apply(b.apply(p)) == b.apply(a.apply(p)))
}

/// All factorized partitions of `n` in a deterministic order: every multiset
/// of blocks `(n_σ, n_mid, n_π, a)` with sizes summing to `n` and `a` ranging
/// over the units mod `n_mid`.
pub fn sn_enumerate_factorized_partitions(n: usize) -> Vec<FactorizedPartition> {
    let mut blocks: Vec<Block> = Vec::new();
    for size in 1..=n as u32 {
        for n_sigma in 1..=size {
            if size % n_sigma != 0 {
                continue;
            }
            let rest = size / n_sigma;
            for n_mid in 1..=rest {
                if rest % n_mid != 0 {
                    continue;
                }
                let n_pi = rest / n_mid;
                for unit in 1..=n_mid {
                    if unit.gcd(&n_mid) == 1 {
                        blocks.push(Block {
                            n_sigma,
                            n_mid,
                            n_pi,
                            unit,
                        });
                    }
                }
            }
        }
    }
    blocks.sort_unstable_by_key(block_key);

    let mut out = Vec::new();
    let mut chosen = Vec::new();
    enumerate_multisets(&blocks, 0, n as u32, &mut chosen, &mut out);
    out
}

fn enumerate_multisets(
    blocks: &[Block],
    from: usize,
    remaining: u32,
    chosen: &mut Vec<Block>,
    out: &mut Vec<FactorizedPartition>,
) {
    if remaining == 0 {
        out.push(FactorizedPartition {
            blocks: chosen.clone(),
        });
        return;
    }
    for i in from..blocks.len() {
        if blocks[i].size() <= remaining {
            chosen.push(blocks[i]);
            enumerate_multisets(blocks, i, remaining - blocks[i].size(), chosen, out);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, GroupSpec};
    use crate::config::EngineConfig;

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    #[test]
    fn c2_has_four_double_classes() {
        let g = build(&GroupSpec::Cyclic(2), &cfg()).unwrap();
        let dd = g.double_classes(&cfg()).unwrap();
        assert_eq!(dd.pairs().len(), 4);
        assert_eq!(dd.num_classes(), 4);
    }

    #[test]
    fn s3_has_eight_double_classes() {
        let g = build(&GroupSpec::Symmetric(3), &cfg()).unwrap();
        let dd = g.double_classes(&cfg()).unwrap();
        assert_eq!(dd.num_classes(), 8);
        for c in 0..dd.num_classes() as u32 {
            assert_eq!(dd.inverse_dclass(dd.inverse_dclass(c)), c);
        }
        let total: u32 = (0..dd.num_classes() as u32).map(|c| dd.size(c)).sum();
        assert_eq!(total as usize, dd.pairs().len());
    }

    #[test]
    fn s4_count_matches_centralizer_class_sum() {
        let g = build(&GroupSpec::Symmetric(4), &cfg()).unwrap();
        let dd = g.double_classes(&cfg()).unwrap();
        let classes = g.classes();
        let by_centralizers: usize = (0..classes.num_classes() as u32)
            .map(|c| g.centralizer(classes.rep(c)).classes().num_classes())
            .sum();
        assert_eq!(dd.num_classes(), by_centralizers);
    }

    #[test]
    fn abelian_groups_have_all_pairs_as_singleton_classes() {
        let g = build(&GroupSpec::Cyclic(5), &cfg()).unwrap();
        let dd = g.double_classes(&cfg()).unwrap();
        assert_eq!(dd.pairs().len(), 25);
        assert_eq!(dd.num_classes(), 25);
        assert!((0..25).all(|c| dd.size(c) == 1));
    }

    #[test]
    fn invariant_examples_from_small_cases() {
        // (e, (1 2)) in S3: blocks 1·1·2 and 1·1·1.
        let e = Perm::identity(3);
        let t = Perm::parse("(1 2)", 3).unwrap();
        let inv = sn_double_class_invariant(3, &e, &t).unwrap();
        assert_eq!(
            inv,
            FactorizedPartition::new(vec![
                Block { n_sigma: 1, n_mid: 1, n_pi: 2, unit: 1 },
                Block { n_sigma: 1, n_mid: 1, n_pi: 1, unit: 1 },
            ])
        );

        // ((1 2 3), (1 2 3)): one block 1·3·1 with a = 1.
        let c = Perm::parse("(1 2 3)", 3).unwrap();
        let inv = sn_double_class_invariant(3, &c, &c).unwrap();
        assert_eq!(
            inv,
            FactorizedPartition::new(vec![Block {
                n_sigma: 1,
                n_mid: 3,
                n_pi: 1,
                unit: 1
            }])
        );
        // ((1 2 3), (1 3 2)): same shape with a = 2.
        let inv = sn_double_class_invariant(3, &c, &c.inverse()).unwrap();
        assert_eq!(inv.blocks()[0].unit, 2);

        // (e, e) in S_n: n trivial blocks.
        let e5 = Perm::identity(5);
        let inv = sn_double_class_invariant(5, &e5, &e5).unwrap();
        assert_eq!(inv.blocks().len(), 5);
        assert!(inv.blocks().iter().all(|b| b.size() == 1));
    }

    #[test]
    fn invariant_rejects_non_commuting_input() {
        let s = Perm::parse("(1 2)", 3).unwrap();
        let c = Perm::parse("(1 2 3)", 3).unwrap();
        assert!(matches!(
            sn_double_class_invariant(3, &s, &c),
            Err(Error::NonCommuting)
        ));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(sn_enumerate_factorized_partitions(1).len(), 1);
        assert_eq!(sn_enumerate_factorized_partitions(3).len(), 8);
        // Totals always add up.
        for n in 1..=6 {
            for fp in sn_enumerate_factorized_partitions(n) {
                assert_eq!(fp.total() as usize, n);
            }
        }
    }

    #[test]
    fn size_cap_is_reported() {
        let g = build(&GroupSpec::Symmetric(5), &cfg()).unwrap();
        let mut small = cfg();
        small.double_class_max_order = 100;
        assert!(matches!(
            double_classes(&g, &small),
            Err(Error::CapExceeded { what: "double-class", .. })
        ));
    }
}
