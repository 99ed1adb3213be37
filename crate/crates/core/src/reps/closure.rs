use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;

use super::group::FiniteGroup;
use crate::algebra::{Cyclotomic, Matrix};

/// Default cap on the number of enumerated elements.
pub const DEFAULT_CLOSURE_BOUND: usize = 100_000;

/// Multiplication tables are only built for groups up to this order.
const TABLE_LIMIT: usize = 2048;

/// A finite group of exact matrices.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    elements: Vec<Matrix<Cyclotomic>>,
    index: HashMap<Vec<BigInt>, usize>,
    order_n: u32,
}

/// Result of enumerating the group generated by a set of matrices.
#[derive(Clone, Debug)]
pub enum Closure {
    Group(MatrixGroup),
    /// More than `bound` elements were found.
    Overflow { bound: usize },
}

impl Closure {
    pub fn group(&self) -> Option<&MatrixGroup> {
        match self {
            Closure::Group(g) => Some(g),
            Closure::Overflow { .. } => None,
        }
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        self.group().is_some_and(|g| g.is_p_group(p))
    }
}

impl MatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix<Cyclotomic>] {
        &self.elements
    }

    /// Order is a power of `p` (the trivial group counts for every `p`).
    pub fn is_p_group(&self, p: u64) -> bool {
        super::is_prime_power_of(self.order() as u64, p)
    }

    /// The prime `p` with `|G| = p^n`, if any; `None` for the trivial group.
    pub fn p_group_prime(&self) -> Option<u64> {
        let n = self.order() as u64;
        let p = (2..=n).find(|d| n % d == 0)?;
        super::is_prime_power_of(n, p).then_some(p)
    }

    pub fn index_of(&self, m: &Matrix<Cyclotomic>) -> Option<usize> {
        self.index.get(&key(m, self.order_n)).copied()
    }

    /// Multiplication table, for groups of at most a couple thousand elements.
    pub fn table(&self) -> Option<FiniteGroup> {
        if self.order() > TABLE_LIMIT {
            return None;
        }
        let table = self
            .elements
            .iter()
            .map(|a| {
                self.elements
                    .iter()
                    .map(|b| self.index_of(&a.mul(b)).expect("closed under products"))
                    .collect()
            })
            .collect();
        FiniteGroup::new(table).ok()
    }
}

/// Canonical hash key: every entry written over the same cyclotomic order.
fn key(m: &Matrix<Cyclotomic>, order: u32) -> Vec<BigInt> {
    let mut out = Vec::new();
    for z in m.entries() {
        let p = z.promote(order.lcm(&z.order()));
        out.push(p.denominator().clone());
        out.extend(p.numerators().iter().cloned());
    }
    out
}

/// Enumerates the group generated by invertible exact matrices by breadth-first
/// search over right multiplication by generators, stopping past `bound` elements.
pub fn closure(generators: &[Matrix<Cyclotomic>], bound: usize) -> Closure {
    let k = generators.first().map(|g| g.rows()).unwrap_or(0);
    let order_n = generators
        .iter()
        .flat_map(|g| g.entries().iter().map(|z| z.order()))
        .fold(1u32, |a, b| a.lcm(&b));
    let gens: Vec<Matrix<Cyclotomic>> = generators
        .iter()
        .map(|g| g.map(|z| z.promote(order_n.lcm(&z.order()))))
        .collect();
    let id = Matrix::<Cyclotomic>::identity(k);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::new();
    index.insert(key(&id, order_n), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(e) = queue.pop_front() {
        for g in &gens {
            let prod = elements[e].mul(g);
            let kk = key(&prod, order_n);
            if index.contains_key(&kk) {
                continue;
            }
            if elements.len() >= bound {
                return Closure::Overflow { bound };
            }
            index.insert(kk, elements.len());
            queue.push_back(elements.len());
            elements.push(prod);
        }
    }
    Closure::Group(MatrixGroup {
        elements,
        index,
        order_n,
    })
}
