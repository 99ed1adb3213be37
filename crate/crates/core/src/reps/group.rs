use crate::algebra::{Cyclotomic, Matrix};
use crate::error::{Error, Result};

/// A finite group given by its multiplication table: `table[a][b] = a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let s = table.len();
        if s == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.iter().any(|r| r.len() != s || r.iter().any(|&x| x >= s)) {
            return Err(Error::InvalidGroup("table is not an s x s grid of indices below s".into()));
        }
        let identity = (0..s)
            .find(|&e| (0..s).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverses = vec![0; s];
        for a in 0..s {
            inverses[a] = (0..s)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
        }
        for a in 0..s {
            for b in 0..s {
                let ab = table[a][b];
                for c in 0..s {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                    }
                }
            }
        }
        Ok(Self {
            table,
            identity,
            inverses,
        })
    }

    /// Cyclic group of order `n` with element `j` standing for `g^j`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(table).expect("cyclic table is a group")
    }

    /// Direct product; element `(a, b)` has index `a * |H| + b`.
    pub fn product(&self, other: &Self) -> Self {
        let (s, t) = (self.order(), other.order());
        let table = (0..s * t)
            .map(|x| {
                (0..s * t)
                    .map(|y| self.mul(x / t, y / t) * t + other.mul(x % t, y % t))
                    .collect()
            })
            .collect();
        Self::new(table).expect("product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Checks that `elems` is closed under products and inverses and contains the identity.
    pub fn check_subgroup(&self, elems: &[usize]) -> Result<()> {
        let s = self.order();
        let mut member = vec![false; s];
        for &e in elems {
            if e >= s {
                return Err(Error::NotSubgroup(format!("element {e} out of range")));
            }
            if std::mem::replace(&mut member[e], true) {
                return Err(Error::NotSubgroup(format!("element {e} repeated")));
            }
        }
        if !member[self.identity] {
            return Err(Error::NotSubgroup("missing identity".into()));
        }
        for &a in elems {
            if !member[self.inverse(a)] {
                return Err(Error::NotSubgroup(format!("inverse of {a} missing")));
            }
            for &b in elems {
                if !member[self.mul(a, b)] {
                    return Err(Error::NotSubgroup(format!("{a}*{b} not in subset")));
                }
            }
        }
        Ok(())
    }

    /// The subgroup on `elems`, re-indexed so that position `t` is `elems[t]`.
    pub fn subgroup(&self, elems: &[usize]) -> Result<Self> {
        self.check_subgroup(elems)?;
        let mut pos = vec![usize::MAX; self.order()];
        for (t, &e) in elems.iter().enumerate() {
            pos[e] = t;
        }
        let table = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos[self.mul(a, b)]).collect())
            .collect();
        Self::new(table)
    }

    pub fn is_normal(&self, elems: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &e in elems {
            member[e] = true;
        }
        (0..self.order()).all(|g| {
            let gi = self.inverse(g);
            elems.iter().all(|&q| member[self.mul(self.mul(g, q), gi)])
        })
    }
}

/// A matrix representation `rho: G -> GL(dim)`; `images[a]` is the image of element `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteRep {
    pub group: FiniteGroup,
    pub dim: usize,
    pub images: Vec<Matrix<Cyclotomic>>,
}

impl FiniteRep {
    pub fn new(group: FiniteGroup, images: Vec<Matrix<Cyclotomic>>) -> Result<Self> {
        if images.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for a group of order {}",
                images.len(),
                group.order()
            )));
        }
        let dim = images.first().map(|m| m.rows()).unwrap_or(0);
        for m in &images {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch("images differ in size".into()));
            }
        }
        Ok(Self { group, dim, images })
    }

    /// The trivial representation of degree `dim`.
    pub fn trivial(group: FiniteGroup, dim: usize) -> Self {
        let images = vec![Matrix::identity(dim); group.order()];
        Self { group, dim, images }
    }

    /// Checks `rho(ab) = rho(a) rho(b)` on every pair and `rho(e) = id`.
    pub fn check_homomorphism(&self) -> Result<()> {
        let g = &self.group;
        if self.images[g.identity()] != Matrix::identity(self.dim) {
            return Err(Error::NotHomomorphism("identity does not map to id".into()));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if self.images[g.mul(a, b)] != self.images[a].mul(&self.images[b]) {
                    return Err(Error::NotHomomorphism(format!("fails on pair ({a}, {b})")));
                }
            }
        }
        Ok(())
    }
}

/// Left cosets `gQ` with representatives: the identity for `Q` itself, the
/// smallest element index otherwise, and `g^{-1}` for the coset of `g^{-1}`
/// when `Q` is normal and that coset is still unassigned.
fn coset_representatives(p: &FiniteGroup, q: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let s = p.order();
    let mut coset_of = vec![usize::MAX; s];
    let mut reps: Vec<usize> = Vec::new();
    let normal = p.is_normal(q);
    let assign = |rep: usize, coset_of: &mut Vec<usize>, reps: &mut Vec<usize>| {
        let idx = reps.len();
        reps.push(rep);
        for &x in q {
            coset_of[p.mul(rep, x)] = idx;
        }
    };
    assign(p.identity(), &mut coset_of, &mut reps);
    for g in 0..s {
        if coset_of[g] != usize::MAX {
            continue;
        }
        assign(g, &mut coset_of, &mut reps);
        let gi = p.inverse(g);
        if normal && coset_of[gi] == usize::MAX {
            assign(gi, &mut coset_of, &mut reps);
        }
    }
    (reps, coset_of)
}

/// Induces `beta` (a representation of the subgroup on `q`, with `beta`'s
/// element `t` standing for `q[t]`) up to `p`.
///
/// With coset representatives `g_1, ..., g_n`, the image of `a` has the block
/// `beta(g_s^{-1} a g_r)` at block position `(s, r)` where `a g_r Q = g_s Q`,
/// and zero blocks elsewhere.
pub fn induce(p: &FiniteGroup, q: &[usize], beta: &FiniteRep) -> Result<FiniteRep> {
    p.check_subgroup(q)?;
    if beta.group.order() != q.len() {
        return Err(Error::DimensionMismatch(format!(
            "representation of a group of order {} for a subgroup of order {}",
            beta.group.order(),
            q.len()
        )));
    }
    let mut pos = vec![usize::MAX; p.order()];
    for (t, &e) in q.iter().enumerate() {
        pos[e] = t;
    }
    let (reps, coset_of) = coset_representatives(p, q);
    let n = reps.len();
    let k = beta.dim;
    let images = (0..p.order())
        .map(|a| {
            let mut m = Matrix::zeros(n * k, n * k);
            for (r, &gr) in reps.iter().enumerate() {
                let s = coset_of[p.mul(a, gr)];
                let h = p.mul(p.mul(p.inverse(reps[s]), a), gr);
                m.set_block(s * k, r * k, &beta.images[pos[h]]);
            }
            m
        })
        .collect();
    FiniteRep::new(p.clone(), images)
}
