use std::collections::HashMap;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Ratio;

use super::{CoxeterError, CoxeterMatrix, Word};
use crate::cyclo::{cos_of_pi_over, CycloRing, Sign};
use crate::CycloNumber;

pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;
/// Groups up to this order get a dense multiplication table.
pub const DENSE_MULT_LIMIT: usize = 2048;
/// `reduced_expressions` is exponential and refused above this order.
pub const REDUCED_EXPRESSIONS_LIMIT: usize = 10_080;
const ROOT_TABLE_LIMIT: usize = 1 << 26;

/// Element of an enumerated group, identified by its index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    pub id: usize,
    pub word: Word,
    pub length: usize,
}

/// Fully enumerated finite Coxeter group.
///
/// Element ids are ordered by ShortLex: by length, then lexicographically by
/// the canonical reduced word. Id 0 is the identity and id `i + 1` is the
/// generator `s_i`. Roots live on a signed list: index `r < n` is the positive
/// root `r`, index `n + r` is its negative. Positive root `k` belongs to
/// reflection `k`, and reflections are sorted by element id, so roots
/// `0..rank` are the simple roots.
#[derive(Debug, Clone)]
pub struct GroupTable {
    matrix: CoxeterMatrix,
    ring: Arc<CycloRing>,
    form: Vec<Vec<CycloNumber>>,
    roots: Vec<Vec<CycloNumber>>,
    root_gen: Vec<Vec<u32>>,
    words: Vec<Word>,
    lengths: Vec<u32>,
    left: Vec<u32>,
    right: Vec<u32>,
    inv: Vec<u32>,
    mult: Option<Vec<u32>>,
    root_table: Option<Vec<u32>>,
    reflections: Vec<u32>,
    refl_index: HashMap<u32, usize>,
    classes: Vec<Vec<usize>>,
}

struct RootSystem {
    roots: Vec<Vec<CycloNumber>>,
    /// `(parent, j)` with `root = s_j(parent)`; simple roots have no parent.
    parent: Vec<Option<(usize, usize)>>,
    root_gen: Vec<Vec<u32>>,
}

impl GroupTable {
    pub fn build(matrix: &CoxeterMatrix) -> Result<Self, CoxeterError> {
        Self::build_with_cap(matrix, DEFAULT_ELEMENT_CAP)
    }

    pub fn build_with_cap(matrix: &CoxeterMatrix, element_cap: usize) -> Result<Self, CoxeterError> {
        let (ring, form) = bilinear_form(matrix);
        let root_cap = (element_cap / 2).min(finite_root_bound(matrix)).max(matrix.rank());
        let rs = positive_roots(matrix, &ring, &form, root_cap)?;
        let (left, lengths) = enumerate_elements(matrix.rank(), &rs.root_gen, element_cap)?;
        Self::finish(matrix.clone(), ring, form, rs, left, lengths)
    }

    /// Rebuilds from a stored left-multiplication table (`left[w * rank + i]`
    /// is the id of `s_i w`), validating it against the root action.
    pub fn from_left_table(matrix: &CoxeterMatrix, left: Vec<u32>) -> Result<Self, CoxeterError> {
        let l = matrix.rank();
        if left.is_empty() || !left.len().is_multiple_of(l) {
            return Err(CoxeterError::CorruptTable("table size is not a multiple of the rank".into()));
        }
        let order = left.len() / l;
        let (ring, form) = bilinear_form(matrix);
        let rs = positive_roots(matrix, &ring, &form, order.max(l))?;
        // Replay the table from the identity: distances give lengths, and the
        // images of the simple roots must be consistent along every edge.
        let mut keys: Vec<Option<Vec<u32>>> = vec![None; order];
        let mut lengths = vec![u32::MAX; order];
        keys[0] = Some((0..l as u32).collect());
        lengths[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            let key = keys[w].clone().expect("visited");
            for j in 0..l {
                let v = left[w * l + j] as usize;
                if v >= order || left[v * l + j] as usize != w {
                    return Err(CoxeterError::CorruptTable(format!("generator {j} is not an involution at {w}")));
                }
                let img: Vec<u32> = key.iter().map(|&r| rs.root_gen[j][r as usize]).collect();
                match &keys[v] {
                    Some(k) if *k != img => {
                        return Err(CoxeterError::CorruptTable(format!("root action mismatch at {v}")));
                    }
                    Some(_) => {}
                    None => {
                        keys[v] = Some(img);
                        lengths[v] = lengths[w] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        if lengths.contains(&u32::MAX) {
            return Err(CoxeterError::CorruptTable("table is not connected".into()));
        }
        let mut seen: HashMap<Vec<u32>, ()> = HashMap::with_capacity(order);
        for k in keys.into_iter().flatten() {
            if seen.insert(k, ()).is_some() {
                return Err(CoxeterError::CorruptTable("two ids represent the same element".into()));
            }
        }
        Self::finish(matrix.clone(), ring, form, rs, left, lengths)
    }

    fn finish(
        matrix: CoxeterMatrix,
        ring: Arc<CycloRing>,
        form: Vec<Vec<CycloNumber>>,
        rs: RootSystem,
        left_bfs: Vec<u32>,
        lengths_bfs: Vec<u32>,
    ) -> Result<Self, CoxeterError> {
        let l = matrix.rank();
        let order = lengths_bfs.len();

        // Canonical words: prefix the smallest left descent.
        let mut by_len: Vec<usize> = (0..order).collect();
        by_len.sort_by_key(|&w| lengths_bfs[w]);
        let mut words_bfs: Vec<Word> = vec![Vec::new(); order];
        for &u in &by_len {
            if lengths_bfs[u] == 0 {
                continue;
            }
            let j = (0..l)
                .find(|&j| lengths_bfs[left_bfs[u * l + j] as usize] < lengths_bfs[u])
                .expect("non-identity element has a left descent");
            let mut w = vec![j];
            w.extend_from_slice(&words_bfs[left_bfs[u * l + j] as usize]);
            words_bfs[u] = w;
        }
        let mut perm: Vec<usize> = (0..order).collect();
        perm.sort_by(|&a, &b| (lengths_bfs[a], &words_bfs[a]).cmp(&(lengths_bfs[b], &words_bfs[b])));
        let mut new_id = vec![0u32; order];
        for (n, &o) in perm.iter().enumerate() {
            new_id[o] = n as u32;
        }
        let mut left = vec![0u32; order * l];
        let mut lengths = vec![0u32; order];
        let mut words = vec![Vec::new(); order];
        for (n, &o) in perm.iter().enumerate() {
            lengths[n] = lengths_bfs[o];
            for j in 0..l {
                left[n * l + j] = new_id[left_bfs[o * l + j] as usize];
            }
            words[n] = std::mem::take(&mut words_bfs[o]);
        }
        drop(left_bfs);

        let walk = |word: &[usize]| -> usize {
            word.iter().rev().fold(0usize, |acc, &j| left[acc * l + j] as usize)
        };
        let inv: Vec<u32> = words
            .iter()
            .map(|w| {
                let rev: Word = w.iter().rev().copied().collect();
                walk(&rev) as u32
            })
            .collect();
        let mut right = vec![0u32; order * l];
        for w in 0..order {
            for j in 0..l {
                right[w * l + j] = inv[left[inv[w] as usize * l + j] as usize];
            }
        }

        // Reflection of each positive root, through its discovery parent.
        let npos = rs.roots.len();
        let mut refl_old = vec![0u32; npos];
        for r in 0..npos {
            refl_old[r] = match rs.parent[r] {
                None => (r + 1) as u32,
                Some((p, j)) => {
                    let x = refl_old[p] as usize;
                    left[right[x * l + j] as usize * l + j]
                }
            };
        }
        let mut root_order: Vec<usize> = (0..npos).collect();
        root_order.sort_by_key(|&r| refl_old[r]);
        for w in root_order.windows(2) {
            if refl_old[w[0]] == refl_old[w[1]] {
                return Err(CoxeterError::CorruptTable("two positive roots share a reflection".into()));
            }
        }
        let mut root_new = vec![0u32; npos];
        for (n, &o) in root_order.iter().enumerate() {
            root_new[o] = n as u32;
        }
        let remap = |s: u32| -> u32 {
            let s = s as usize;
            if s < npos {
                root_new[s]
            } else {
                root_new[s - npos] + npos as u32
            }
        };
        let mut root_gen = vec![vec![0u32; 2 * npos]; l];
        for j in 0..l {
            for s in 0..2 * npos {
                root_gen[j][remap(s as u32) as usize] = remap(rs.root_gen[j][s]);
            }
        }
        let roots: Vec<Vec<CycloNumber>> = root_order.iter().map(|&o| rs.roots[o].clone()).collect();
        let reflections: Vec<u32> = root_order.iter().map(|&o| refl_old[o]).collect();
        let refl_index: HashMap<u32, usize> = reflections.iter().enumerate().map(|(k, &x)| (x, k)).collect();

        let mult = (order <= DENSE_MULT_LIMIT).then(|| {
            let mut m = vec![0u32; order * order];
            for y in 0..order {
                m[y] = y as u32;
            }
            for x in 1..order {
                let j = words[x][0];
                let rest = left[x * l + j] as usize;
                for y in 0..order {
                    m[x * order + y] = left[m[rest * order + y] as usize * l + j];
                }
            }
            m
        });

        let root_table = (order.saturating_mul(2 * npos) <= ROOT_TABLE_LIMIT).then(|| {
            let width = 2 * npos;
            let mut t = vec![0u32; order * width];
            for s in 0..width {
                t[s] = s as u32;
            }
            for x in 1..order {
                let j = words[x][0];
                let rest = left[x * l + j] as usize;
                for s in 0..width {
                    t[x * width + s] = root_gen[j][t[rest * width + s] as usize];
                }
            }
            t
        });

        let mut g = GroupTable {
            matrix,
            ring,
            form,
            roots,
            root_gen,
            words,
            lengths,
            left,
            right,
            inv,
            mult,
            root_table,
            reflections,
            refl_index,
            classes: Vec::new(),
        };
        g.classes = super::graph::reflection_classes_checked(&g)?;
        Ok(g)
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn order(&self) -> usize {
        self.lengths.len()
    }

    /// Level `N` of the cyclotomic field holding all root coordinates.
    pub fn level(&self) -> u32 {
        self.ring.level()
    }

    pub fn ring(&self) -> &Arc<CycloRing> {
        &self.ring
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generator(&self, i: usize) -> usize {
        i + 1
    }

    pub fn element(&self, id: usize) -> Element {
        Element { id, word: self.words[id].clone(), length: self.lengths[id] as usize }
    }

    pub fn word(&self, w: usize) -> &[usize] {
        &self.words[w]
    }

    pub fn length(&self, w: usize) -> usize {
        self.lengths[w] as usize
    }

    /// `det(w) = (-1)^ℓ(w)` in the geometric representation.
    pub fn det(&self, w: usize) -> i8 {
        if self.lengths[w].is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Id of `s_i w`.
    pub fn left_mul(&self, i: usize, w: usize) -> usize {
        self.left[w * self.rank() + i] as usize
    }

    /// Id of `w s_i`.
    pub fn right_mul(&self, w: usize, i: usize) -> usize {
        self.right[w * self.rank() + i] as usize
    }

    pub fn left_table(&self) -> &[u32] {
        &self.left
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inv[w] as usize
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        match &self.mult {
            Some(m) => m[x * self.order() + y] as usize,
            None => self.words[x].iter().rev().fold(y, |acc, &j| self.left_mul(j, acc)),
        }
    }

    /// `x ▷ y = x y x⁻¹`.
    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.inverse(x))
    }

    /// Id of the product of a word of generators.
    pub fn element_of_word(&self, word: &[usize]) -> usize {
        word.iter().rev().fold(0, |acc, &j| self.left_mul(j, acc))
    }

    pub fn is_reduced(&self, word: &[usize]) -> bool {
        self.length(self.element_of_word(word)) == word.len()
    }

    /// Id of the longest element.
    pub fn longest(&self) -> usize {
        self.order() - 1
    }

    /// Generators `s_i` with `ℓ(s_i w) < ℓ(w)`.
    pub fn left_descents(&self, w: usize) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.lengths[self.left_mul(i, w)] < self.lengths[w]).collect()
    }

    // Roots.

    pub fn num_positive_roots(&self) -> usize {
        self.roots.len()
    }

    /// Coordinates of positive root `k` in the simple-root basis.
    pub fn root(&self, k: usize) -> &[CycloNumber] {
        &self.roots[k]
    }

    /// Coordinates of a signed root index.
    pub fn signed_root(&self, s: usize) -> Vec<CycloNumber> {
        let n = self.roots.len();
        if s < n {
            self.roots[s].clone()
        } else {
            self.roots[s - n].iter().map(|c| -c).collect()
        }
    }

    pub fn is_positive(&self, s: usize) -> bool {
        s < self.roots.len()
    }

    pub fn negate_root(&self, s: usize) -> usize {
        let n = self.roots.len();
        if s < n {
            s + n
        } else {
            s - n
        }
    }

    /// `(α_i, α_j) = -cos(π/m_ij)`.
    pub fn form_simple(&self, i: usize, j: usize) -> &CycloNumber {
        &self.form[i][j]
    }

    /// Bilinear form on coordinate vectors.
    pub fn form(&self, a: &[CycloNumber], b: &[CycloNumber]) -> CycloNumber {
        let l = self.rank();
        let mut acc = CycloNumber::zero_in(&self.ring);
        for i in 0..l {
            if a[i].is_zero() {
                continue;
            }
            let mut row = CycloNumber::zero_in(&self.ring);
            for j in 0..l {
                if !b[j].is_zero() {
                    row = &row + &(&self.form[i][j] * &b[j]);
                }
            }
            acc = &acc + &(&a[i] * &row);
        }
        acc
    }

    /// `s_i(v) = v - 2 (α_i, v) α_i` on coordinate vectors.
    pub fn reflect_simple(&self, i: usize, v: &[CycloNumber]) -> Vec<CycloNumber> {
        reflect(&self.form, &self.ring, i, v)
    }

    /// Signed index of `s_i(root s)`.
    pub fn gen_on_root(&self, i: usize, s: usize) -> usize {
        self.root_gen[i][s] as usize
    }

    /// Signed index of `w(root s)`.
    pub fn act_on_root(&self, w: usize, s: usize) -> usize {
        match &self.root_table {
            Some(t) => t[w * 2 * self.roots.len() + s] as usize,
            None => self.words[w].iter().rev().fold(s, |acc, &j| self.gen_on_root(j, acc)),
        }
    }

    /// Index of the positive root with these coordinates.
    pub fn find_root(&self, v: &[CycloNumber]) -> Option<usize> {
        let n = self.roots.len();
        self.roots.iter().position(|r| r.as_slice() == v).or_else(|| {
            let neg: Vec<CycloNumber> = v.iter().map(|c| -c).collect();
            self.roots.iter().position(|r| *r == neg).map(|k| k + n)
        })
    }

    // Reflections.

    pub fn num_reflections(&self) -> usize {
        self.reflections.len()
    }

    /// Element id of reflection `k`, whose root is positive root `k`.
    pub fn reflection(&self, k: usize) -> usize {
        self.reflections[k] as usize
    }

    pub fn reflections(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.reflections.iter().map(|&x| x as usize)
    }

    /// Reflection index of an element, if it is a reflection.
    pub fn reflection_index(&self, w: usize) -> Option<usize> {
        self.refl_index.get(&(w as u32)).copied()
    }

    /// Reflection index of `x ▷ t_k` for `x ∈ W`.
    pub fn conj_reflection(&self, x: usize, k: usize) -> usize {
        self.reflection_index(self.conj(x, self.reflection(k))).expect("conjugate of a reflection is a reflection")
    }

    /// Conjugacy classes of reflections as sorted lists of reflection indices,
    /// ordered by their smallest simple reflection.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Whether `w(α_y) ∈ Φ⁻` for reflection `y`. Computed from the root
    /// action and from `ℓ(w y) < ℓ(w)`; the two must agree.
    pub fn acts_negatively(&self, w: usize, y: usize) -> bool {
        let by_root = !self.is_positive(self.act_on_root(w, y));
        let by_length = self.length(self.mul(w, self.reflection(y))) < self.length(w);
        assert_eq!(by_root, by_length, "root and length criteria disagree for w={w}, y={y}");
        by_root
    }

    /// Number of positive roots sent to negative roots by `w`.
    pub fn inversion_count(&self, w: usize) -> usize {
        (0..self.roots.len()).filter(|&r| !self.is_positive(self.act_on_root(w, r))).count()
    }
}

fn bilinear_form(matrix: &CoxeterMatrix) -> (Arc<CycloRing>, Vec<Vec<CycloNumber>>) {
    let l = matrix.rank();
    let lcm = matrix.entries().iter().flatten().fold(1u32, |a, &m| a.lcm(&m));
    let ring = CycloRing::new(2 * lcm);
    let form = (0..l)
        .map(|i| (0..l).map(|j| -cos_of_pi_over(matrix.get(i, j)).embed_into(&ring)).collect())
        .collect();
    (ring, form)
}

fn reflect(form: &[Vec<CycloNumber>], ring: &Arc<CycloRing>, i: usize, v: &[CycloNumber]) -> Vec<CycloNumber> {
    let mut ip = CycloNumber::zero_in(ring);
    for (j, c) in v.iter().enumerate() {
        if !c.is_zero() {
            ip = &ip + &(&form[i][j] * c);
        }
    }
    let mut out = v.to_vec();
    let two = CycloNumber::from_rational_in(ring, Ratio::from_integer(2.into()));
    out[i] = &out[i] - &(&two * &ip);
    out
}

fn is_nonnegative(v: &[CycloNumber]) -> Result<bool, CoxeterError> {
    for c in v {
        if c.sign_real()? == Sign::Negative {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Upper bound on `|Φ⁺|` for any finite Coxeter group with this matrix:
/// each irreducible component has at most `max(l_c², 120, m)` positive roots,
/// the last case being the dihedral one.
fn finite_root_bound(matrix: &CoxeterMatrix) -> usize {
    let l = matrix.rank();
    let m = matrix.entries().iter().flatten().copied().max().unwrap_or(1) as usize;
    l * l + 120 + (l / 2) * m
}

fn positive_roots(
    matrix: &CoxeterMatrix,
    ring: &Arc<CycloRing>,
    form: &[Vec<CycloNumber>],
    cap: usize,
) -> Result<RootSystem, CoxeterError> {
    let l = matrix.rank();
    let mut roots: Vec<Vec<CycloNumber>> = Vec::new();
    let mut parent = Vec::new();
    let key = |v: &[CycloNumber]| -> Vec<Vec<Ratio<num_bigint::BigInt>>> { v.iter().map(|c| c.coeffs().to_vec()).collect() };
    let mut index: HashMap<Vec<Vec<Ratio<num_bigint::BigInt>>>, usize> = HashMap::new();
    for i in 0..l {
        let mut v = vec![CycloNumber::zero_in(ring); l];
        v[i] = CycloNumber::from_int_in(ring, 1);
        index.insert(key(&v), i);
        roots.push(v);
        parent.push(None);
    }
    // `images[r][i]` is the positive index of s_i(root r), or None for -α_i.
    let mut images: Vec<Vec<Option<usize>>> = Vec::new();
    let mut r = 0;
    while r < roots.len() {
        let mut row = Vec::with_capacity(l);
        for i in 0..l {
            if r == i {
                row.push(None);
                continue;
            }
            let img = reflect(form, ring, i, &roots[r]);
            if !is_nonnegative(&img)? {
                return Err(CoxeterError::CorruptTable(format!(
                    "s_{i} sends a positive root other than α_{i} to a negative root"
                )));
            }
            let k = match index.get(&key(&img)) {
                Some(&k) => k,
                None => {
                    if roots.len() >= cap {
                        return Err(CoxeterError::NotFinite { cap });
                    }
                    let k = roots.len();
                    index.insert(key(&img), k);
                    roots.push(img);
                    parent.push(Some((r, i)));
                    k
                }
            };
            row.push(Some(k));
        }
        images.push(row);
        r += 1;
    }
    let n = roots.len();
    let mut root_gen = vec![vec![0u32; 2 * n]; l];
    for i in 0..l {
        for r in 0..n {
            let img = images[r][i].unwrap_or(n + i);
            root_gen[i][r] = img as u32;
            root_gen[i][r + n] = if img < n { img + n } else { img - n } as u32;
        }
    }
    Ok(RootSystem { roots, parent, root_gen })
}

/// BFS over left multiplication, keyed by the images of the simple roots.
fn enumerate_elements(l: usize, root_gen: &[Vec<u32>], cap: usize) -> Result<(Vec<u32>, Vec<u32>), CoxeterError> {
    let mut keys: Vec<u32> = (0..l as u32).collect();
    let mut index: HashMap<Box<[u32]>, u32> = HashMap::new();
    index.insert(keys.clone().into_boxed_slice(), 0);
    let mut lengths = vec![0u32];
    let mut left: Vec<u32> = Vec::new();
    let mut w = 0usize;
    while w < lengths.len() {
        for j in 0..l {
            let img: Box<[u32]> = keys[w * l..(w + 1) * l].iter().map(|&r| root_gen[j][r as usize]).collect();
            let id = match index.get(&img) {
                Some(&id) => id,
                None => {
                    let id = lengths.len();
                    if id >= cap {
                        return Err(CoxeterError::NotFinite { cap });
                    }
                    keys.extend_from_slice(&img);
                    index.insert(img, id as u32);
                    lengths.push(lengths[w] + 1);
                    id as u32
                }
            };
            left.push(id);
        }
        w += 1;
    }
    Ok((left, lengths))
}
