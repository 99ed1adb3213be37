#![allow(dead_code)]

use etalink::algebra::{Cyclotomic, Matrix, RootOfUnity};
use etalink::reps::{FiniteGroup, FiniteRep, UnitaryTuple};
use etalink::seifert::{random_unimodular, SeifertMatrix};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int(n: i64) -> Cyclotomic {
    Cyclotomic::from_integer(n)
}

pub fn to_cyc(m: &Matrix<i64>) -> Matrix<Cyclotomic> {
    m.map(|&x| int(x))
}

/// `n x n` matrix with `[[0,1],[0,0]]` blocks down the diagonal.
fn hyperbolic_seed(n: usize) -> Matrix<i64> {
    Matrix::from_fn(n, n, |r, c| i64::from(r % 2 == 0 && c == r + 1))
}

/// Upper triangle of the E8 Cartan matrix.
pub fn e8_seed() -> Matrix<i64> {
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
    Matrix::from_fn(8, 8, |r, c| {
        if r == c {
            1
        } else if edges.contains(&(r, c)) {
            -1
        } else {
            0
        }
    })
}

/// A diagonal block `P^t N P + S` with `N + eps N^t` unimodular and
/// `S + eps S^t = 0`.
fn diagonal_block<R: Rng>(eps: i8, g: usize, rng: &mut R) -> Matrix<i64> {
    let n = 2 * g;
    if n == 0 {
        return Matrix::zeros(0, 0);
    }
    let seed = if eps == 1 && g == 4 { e8_seed() } else { hyperbolic_seed(n) };
    let p = random_unimodular(n, 1, rng);
    let base = p.transpose().mul(&seed).mul(&p);
    let s = Matrix::from_fn(n, n, |_, _| rng.random_range(-1..=1i64));
    let s = if eps == -1 {
        s.add(&s.transpose())
    } else {
        s.sub(&s.transpose())
    };
    base.add(&s)
}

/// Random genus for a component: any for `eps = -1`, even for `eps = +1`.
fn genus<R: Rng>(eps: i8, max_g: usize, rng: &mut R) -> usize {
    if eps == -1 {
        rng.random_range(0..=max_g)
    } else {
        *[0, 2, 2, 4].choose(rng).unwrap()
    }
}

/// Random matrix satisfying both axioms.
pub fn random_seifert<R: Rng>(eps: i8, m: usize, max_g: usize, rng: &mut R) -> SeifertMatrix {
    let mut sizes: Vec<usize> = (0..m).map(|_| genus(eps, max_g, rng)).collect();
    // keep the total dimension modest
    while sizes.iter().sum::<usize>() > 5 {
        let i = sizes.iter().enumerate().max_by_key(|(_, g)| **g).unwrap().0;
        sizes[i] -= if eps == 1 { 2 } else { 1 };
    }
    let off: Vec<usize> = std::iter::once(0)
        .chain(sizes.iter().scan(0, |acc, g| {
            *acc += 2 * g;
            Some(*acc)
        }))
        .collect();
    let n = off[m];
    let mut a = Matrix::<i64>::zeros(n, n);
    for i in 0..m {
        a.set_block(off[i], off[i], &diagonal_block(eps, sizes[i], rng));
        for j in i + 1..m {
            let b = Matrix::from_fn(2 * sizes[i], 2 * sizes[j], |_, _| rng.random_range(-2..=2i64));
            a.set_block(off[i], off[j], &b);
            a.set_block(off[j], off[i], &b.transpose().scale(&(-(eps as i64))));
        }
    }
    SeifertMatrix::new(eps, sizes, a).expect("generator respects the axioms")
}

pub const ROOT_ORDERS: [u64; 6] = [1, 2, 3, 4, 6, 8];

pub fn random_root<R: Rng>(rng: &mut R) -> RootOfUnity {
    let q = *ROOT_ORDERS.choose(rng).unwrap();
    RootOfUnity::new(rng.random_range(0..q as i64), q)
}

/// Random monomial unitary with root-of-unity entries.
pub fn random_monomial<R: Rng>(k: usize, rng: &mut R) -> Matrix<Cyclotomic> {
    let mut perm: Vec<usize> = (0..k).collect();
    perm.shuffle(rng);
    let mut m = Matrix::zeros(k, k);
    for (j, &p) in perm.iter().enumerate() {
        m[(p, j)] = random_root(rng).to_cyclotomic();
    }
    m
}

pub fn random_tuple<R: Rng>(m: usize, k: usize, rng: &mut R) -> UnitaryTuple {
    UnitaryTuple::exact((0..m).map(|_| random_monomial(k, rng)).collect()).unwrap()
}

/// `(1/sqrt 2) [[1, 1], [1, -1]]` over `Q(zeta_8)`.
pub fn hadamard() -> Matrix<Cyclotomic> {
    let sqrt2 = &Cyclotomic::root_of_unity(1, 8) + &Cyclotomic::root_of_unity(7, 8);
    let h = sqrt2.inv().unwrap();
    Matrix::from_rows(vec![vec![int(1), int(1)], vec![int(1), int(-1)]])
        .unwrap()
        .scale(&h)
}

/// `(A + eps T A^t)(1 - T^{-1})` built from full Kronecker products.
pub fn factored_b(a: &SeifertMatrix, mats: &[Matrix<Cyclotomic>]) -> Matrix<Cyclotomic> {
    let k = mats.first().map(|u| u.rows()).unwrap_or(1);
    let t = Matrix::block_diagonal(
        &a.sizes()
            .iter()
            .zip(mats)
            .map(|(g, u)| Matrix::kron_int(&Matrix::<i64>::identity(2 * g), u))
            .collect::<Vec<_>>(),
    );
    let at = Matrix::kron_int(a.entries(), &Matrix::<Cyclotomic>::identity(k));
    let left = at.add(&t.mul(&at.transpose()).scale(&int(a.epsilon() as i64)));
    let right = Matrix::identity(t.dim()).sub(&t.adjoint());
    left.mul(&right)
}

fn z(j: i64, n: u32) -> Cyclotomic {
    Cyclotomic::root_of_unity(j, n)
}

/// Elements of a fixed Sylow `p`-subgroup of `S_k`, for `k <= 4`.
pub fn sylow_permutations(p: u64, k: usize) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..k).collect();
    let gens: Vec<Vec<usize>> = match (p, k) {
        (2, 2) | (2, 3) => vec![[1, 0].iter().copied().chain(2..k).collect()],
        (2, 4) => vec![vec![1, 2, 3, 0], vec![2, 1, 0, 3]],
        (3, 3) => vec![vec![1, 2, 0]],
        (3, 4) => vec![vec![1, 2, 0, 3]],
        _ => vec![],
    };
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in &gens {
            let x: Vec<usize> = out[i].iter().map(|&a| g[a]).collect();
            if !out.contains(&x) {
                out.push(x);
            }
        }
        i += 1;
    }
    out
}

pub fn swap() -> Matrix<Cyclotomic> {
    Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap()
}

pub fn perm_matrix(p: &[usize]) -> Matrix<Cyclotomic> {
    let mut m = Matrix::zeros(p.len(), p.len());
    for (j, &i) in p.iter().enumerate() {
        m[(i, j)] = int(1);
    }
    m
}

/// Matrix generators for a selection of groups of order at most 16.
pub fn small_groups() -> Vec<(String, Vec<Matrix<Cyclotomic>>)> {
    let mut out = Vec::new();
    for n in 1..=16u32 {
        out.push((format!("C{n}"), vec![Matrix::diagonal(&[z(1, n)])]));
    }
    let d = |a: i64, b: i64, n: u32| Matrix::diagonal(&[z(a, n), z(b, n)]);
    out.push(("C2xC2".into(), vec![d(1, 0, 2), d(0, 1, 2)]));
    out.push(("C2xC4".into(), vec![d(1, 0, 2), d(0, 1, 4)]));
    out.push(("C4xC4".into(), vec![d(1, 0, 4), d(0, 1, 4)]));
    out.push(("C2xC8".into(), vec![d(1, 0, 2), d(0, 1, 8)]));
    out.push(("C3xC3".into(), vec![d(1, 0, 3), d(0, 1, 3)]));
    out.push((
        "C2^3".into(),
        vec![
            Matrix::diagonal(&[int(-1), int(1), int(1)]),
            Matrix::diagonal(&[int(1), int(-1), int(1)]),
            Matrix::diagonal(&[int(1), int(1), int(-1)]),
        ],
    ));
    for n in 3..=8u32 {
        out.push((format!("D{}", 2 * n), vec![d(1, -1, n), swap()]));
    }
    let j = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(-1), int(0)]]).unwrap();
    out.push(("Q8".into(), vec![d(1, -1, 4), j.clone()]));
    out.push(("Dic12".into(), vec![d(1, -1, 6), j.clone()]));
    out.push(("Q16".into(), vec![d(1, -1, 8), j]));
    out.push(("A4".into(), vec![perm_matrix(&[1, 2, 0, 3]), perm_matrix(&[1, 0, 3, 2])]));
    out
}

/// Subgroup generated by `picks` (just the identity when empty).
pub fn generated(g: &FiniteGroup, picks: &[usize]) -> Vec<usize> {
    let mut elems = vec![g.identity()];
    let mut i = 0;
    while i < elems.len() {
        for &p in picks {
            let x = g.mul(elems[i], p);
            if !elems.contains(&x) {
                elems.push(x);
            }
        }
        i += 1;
    }
    elems
}

/// The defining matrices restricted to the subgroup on `q`.
pub fn restriction(elements: &[Matrix<Cyclotomic>], g: &FiniteGroup, q: &[usize]) -> FiniteRep {
    FiniteRep::new(g.subgroup(q).unwrap(), q.iter().map(|&e| elements[e].clone()).collect()).unwrap()
}
