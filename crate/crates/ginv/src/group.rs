//! Finite permutation groups with full element enumeration.
//!
//! Elements are stored exhaustively in a canonical order: the identity first,
//! then breadth-first discovery order under right multiplication by the
//! generators. Every "canonical representative" downstream is the least
//! element index, so witnesses and reports are reproducible.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_integer::Integer;

use crate::config::EngineConfig;
use crate::dclass::DoubleClassData;
use crate::error::{Error, Result};
use crate::perm::Perm;

/// A relator word over generator symbols: letter `k+1` is generator `k`,
/// `-(k+1)` its inverse, multiplied left to right.
pub type Word = Vec<i32>;

/// Evaluates a word on concrete permutations.
pub fn evaluate_word(word: &[i32], images: &[Perm], degree: usize) -> Perm {
    let mut acc = Perm::identity(degree);
    for &letter in word {
        debug_assert!(letter != 0);
        let idx = letter.unsigned_abs() as usize - 1;
        let factor = if letter > 0 {
            images[idx].clone()
        } else {
            images[idx].inverse()
        };
        acc = acc.compose(&factor);
    }
    acc
}

/// `w^e` as a word.
pub fn word_pow(word: &[i32], e: u32) -> Word {
    let mut out = Vec::with_capacity(word.len() * e as usize);
    for _ in 0..e {
        out.extend_from_slice(word);
    }
    out
}

/// Commutator `[a, b] = a⁻¹ b⁻¹ a b` of two single letters.
pub fn word_commutator(a: i32, b: i32) -> Word {
    vec![-a, -b, a, b]
}

/// A fully enumerated permutation group.
pub struct Group {
    degree: usize,
    generators: Vec<Perm>,
    gen_indices: Vec<u32>,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    inverses: Vec<u32>,
    /// For BFS-generated groups, `decomp[i] = (parent, gen)` with
    /// `elements[i] = elements[parent] · generators[gen]` and `parent < i`.
    decomp: Option<Vec<(u32, u32)>>,
    presentation: Option<Vec<Word>>,
    classes: OnceLock<ClassData>,
    dclasses: OnceLock<DoubleClassData>,
}

/// Conjugacy class data: the partition, canonical representatives, sizes and
/// the class-of-inverse involution.
pub struct ClassData {
    class_of: Vec<u32>,
    reps: Vec<u32>,
    sizes: Vec<u32>,
    inverse_class: Vec<u32>,
    members: Vec<Vec<u32>>,
    /// `transporter[g]` conjugates the class representative onto `g`:
    /// `t · rep · t⁻¹ = g`.
    transporter: Vec<u32>,
}

impl ClassData {
    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }

    pub fn class_of(&self, element: u32) -> u32 {
        self.class_of[element as usize]
    }

    pub fn rep(&self, class: u32) -> u32 {
        self.reps[class as usize]
    }

    pub fn size(&self, class: u32) -> u32 {
        self.sizes[class as usize]
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn inverse_class(&self, class: u32) -> u32 {
        self.inverse_class[class as usize]
    }

    pub fn members(&self, class: u32) -> &[u32] {
        &self.members[class as usize]
    }

    pub fn transporter(&self, element: u32) -> u32 {
        self.transporter[element as usize]
    }
}

/// Generates the group by breadth-first closure. Empty generator lists (and
/// degree 0) normalise to the trivial group of degree 1.
pub fn generate_group(generators: Vec<Perm>, cfg: &EngineConfig) -> Result<Group> {
    let generators: Vec<Perm> = generators.into_iter().filter(|g| g.degree() > 0).collect();
    if generators.is_empty() {
        return Group::from_parts(1, Vec::new(), vec![Perm::identity(1)], None, None);
    }
    let degree = generators[0].degree();
    if generators.iter().any(|g| g.degree() != degree) {
        return Err(Error::InvalidParameter(
            "all generators must share one degree".into(),
        ));
    }

    let mut elements = vec![Perm::identity(degree)];
    let mut index: HashMap<Perm, u32> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut decomp = vec![(0u32, 0u32)];
    let mut head = 0usize;
    while head < elements.len() {
        for (k, gen) in generators.iter().enumerate() {
            let product = elements[head].compose(gen);
            if !index.contains_key(&product) {
                let id = elements.len() as u32;
                if elements.len() >= cfg.max_group_order {
                    return Err(Error::GroupTooLarge {
                        cap: cfg.max_group_order,
                    });
                }
                if (elements.len() + 1) * degree > cfg.max_storage_cells {
                    return Err(Error::StorageTooLarge {
                        cap: cfg.max_storage_cells,
                        degree,
                        order: elements.len() + 1,
                    });
                }
                index.insert(product.clone(), id);
                elements.push(product);
                decomp.push((head as u32, k as u32));
            }
        }
        head += 1;
    }

    Group::from_parts(degree, generators, elements, Some(decomp), Some(index))
}

impl Group {
    fn from_parts(
        degree: usize,
        generators: Vec<Perm>,
        elements: Vec<Perm>,
        decomp: Option<Vec<(u32, u32)>>,
        index: Option<HashMap<Perm, u32>>,
    ) -> Result<Group> {
        let index = index.unwrap_or_else(|| {
            elements
                .iter()
                .enumerate()
                .map(|(i, e)| (e.clone(), i as u32))
                .collect()
        });
        let inverses = elements
            .iter()
            .map(|e| index[&e.inverse()])
            .collect::<Vec<_>>();
        let gen_indices = generators.iter().map(|g| index[g]).collect();
        Ok(Group {
            degree,
            generators,
            gen_indices,
            elements,
            index,
            inverses,
            decomp,
            presentation: None,
            classes: OnceLock::new(),
            dclasses: OnceLock::new(),
        })
    }

    pub(crate) fn attach_presentation(&mut self, relators: Vec<Word>) {
        debug_assert!(relators
            .iter()
            .all(|w| evaluate_word(w, &self.generators, self.degree).is_identity()));
        self.presentation = Some(relators);
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.gen_indices
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn presentation(&self) -> Option<&[Word]> {
        self.presentation.as_deref()
    }

    pub(crate) fn decomposition(&self) -> Option<&[(u32, u32)]> {
        self.decomp.as_deref()
    }

    /// Index of `elements[i] · elements[j]`.
    pub fn mult(&self, i: u32, j: u32) -> u32 {
        let product = self.elements[i as usize].compose(&self.elements[j as usize]);
        self.index[&product]
    }

    pub fn inverse(&self, i: u32) -> u32 {
        self.inverses[i as usize]
    }

    /// `h · g · h⁻¹`.
    pub fn conjugate(&self, h: u32, g: u32) -> u32 {
        let p = self.elements[h as usize]
            .compose(&self.elements[g as usize])
            .compose(&self.elements[self.inverses[h as usize] as usize]);
        self.index[&p]
    }

    pub fn commute(&self, i: u32, j: u32) -> bool {
        let a = &self.elements[i as usize];
        let b = &self.elements[j as usize];
        (0..self.degree).all(|p| a.apply(b.apply(p)) == b.apply(a.apply(p)))
    }

    /// Least `k ≥ 1` with `g^k = e`.
    pub fn element_order(&self, i: u32) -> u64 {
        self.elements[i as usize].order()
    }

    /// lcm of all element orders.
    pub fn exponent(&self) -> u64 {
        let classes = self.classes();
        (0..classes.num_classes())
            .map(|c| self.element_order(classes.rep(c as u32)))
            .fold(1u64, |acc, o| acc.lcm(&o))
    }

    pub fn is_abelian(&self) -> bool {
        let k = self.generators.len();
        (0..k).all(|i| (i + 1..k).all(|j| self.commute(self.gen_indices[i], self.gen_indices[j])))
    }

    /// Elements commuting with everything, ascending.
    pub fn centre_elements(&self) -> Vec<u32> {
        (0..self.order() as u32)
            .filter(|&z| self.gen_indices.iter().all(|&g| self.commute(z, g)))
            .collect()
    }

    /// Conjugacy classes as orbits of the conjugation action, computed once.
    pub fn classes(&self) -> &ClassData {
        self.classes.get_or_init(|| self.compute_classes())
    }

    fn compute_classes(&self) -> ClassData {
        let n = self.order();
        let unassigned = u32::MAX;
        let mut class_of = vec![unassigned; n];
        let mut transporter = vec![0u32; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let mut members = Vec::new();
        let gen_perms: Vec<(Perm, Perm)> = self
            .generators
            .iter()
            .map(|g| (g.clone(), g.inverse()))
            .collect();
        let gen_ids: Vec<u32> = self.gen_indices.clone();

        for start in 0..n as u32 {
            if class_of[start as usize] != unassigned {
                continue;
            }
            let class_id = reps.len() as u32;
            reps.push(start);
            class_of[start as usize] = class_id;
            transporter[start as usize] = 0;
            let mut orbit = vec![start];
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for (k, (g, g_inv)) in gen_perms.iter().enumerate() {
                    let conj = g.compose(&self.elements[x as usize]).compose(g_inv);
                    let y = self.index[&conj];
                    if class_of[y as usize] == unassigned {
                        class_of[y as usize] = class_id;
                        transporter[y as usize] = self.mult(gen_ids[k], transporter[x as usize]);
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            sizes.push(orbit.len() as u32);
            members.push(orbit);
        }

        let inverse_class = reps
            .iter()
            .map(|&r| class_of[self.inverses[r as usize] as usize])
            .collect();

        ClassData {
            class_of,
            reps,
            sizes,
            inverse_class,
            members,
            transporter,
        }
    }

    /// Simultaneous-conjugation orbit data for commuting pairs, computed on
    /// first use. The first caller's config decides the cap.
    pub fn double_classes(&self, cfg: &EngineConfig) -> Result<&DoubleClassData> {
        if let Some(dd) = self.dclasses.get() {
            return Ok(dd);
        }
        let dd = crate::dclass::double_classes(self, cfg)?;
        Ok(self.dclasses.get_or_init(|| dd))
    }

    /// The subgroup `{h : hg = gh}` with elements in the ambient canonical
    /// order.
    pub fn centralizer(&self, g: u32) -> Group {
        let members: Vec<u32> = (0..self.order() as u32)
            .filter(|&h| self.commute(h, g))
            .collect();
        self.subgroup_from_indices(&members)
    }

    /// Builds a subgroup from an ascending list of element indices that is
    /// closed under the group operations. A small generating set is derived
    /// greedily so the result can introspect itself.
    pub fn subgroup_from_indices(&self, indices: &[u32]) -> Group {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(indices.first(), Some(&0));
        let elements: Vec<Perm> = indices
            .iter()
            .map(|&i| self.elements[i as usize].clone())
            .collect();
        let index: HashMap<Perm, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();

        // Greedy generating set: extend by the least element outside the
        // running closure until everything is reached.
        let mut generators: Vec<Perm> = Vec::new();
        let mut reached = vec![false; elements.len()];
        reached[0] = true;
        let mut reached_count = 1;
        while reached_count < elements.len() {
            let next = (0..elements.len()).find(|&i| !reached[i]).unwrap();
            generators.push(elements[next].clone());
            // Re-close from scratch; subgroup orders here are small.
            let mut frontier = vec![next];
            reached[next] = true;
            reached_count += 1;
            let mut head = 0;
            let mut closure: Vec<usize> =
                (0..elements.len()).filter(|&i| reached[i]).collect();
            while head < closure.len() {
                let x = closure[head];
                head += 1;
                for g in &generators {
                    let y = index[&elements[x].compose(g)];
                    if !reached[y as usize] {
                        reached[y as usize] = true;
                        reached_count += 1;
                        closure.push(y as usize);
                    }
                    let y = index[&g.compose(&elements[x])];
                    if !reached[y as usize] {
                        reached[y as usize] = true;
                        reached_count += 1;
                        closure.push(y as usize);
                    }
                }
            }
            frontier.clear();
        }

        Group::from_parts(self.degree, generators, elements, None, Some(index))
            .expect("subgroup construction cannot fail")
    }
}
